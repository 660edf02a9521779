//! Finite permutation groups: closure checks, multiplication tables, element
//! orders, conjugacy classes and generating sets.

use std::collections::{BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use crate::perm::Perm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("empty element list")]
    Empty,
    #[error("elements have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("identity is missing")]
    MissingIdentity,
    #[error("not closed: {left} * {right} = {product} is not in the set")]
    NotClosed {
        left: Perm,
        right: Perm,
        product: Perm,
    },
    #[error("inverse of {0} is missing")]
    MissingInverse(Perm),
}

/// A finite group of permutations with its multiplication table.
///
/// Elements are kept in lexicographic order of their image arrays, so the
/// identity is element 0 and tables are reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryGroup {
    elements: Vec<Perm>,
    /// `table[a][b]` is the index of `elements[a].compose(elements[b])`.
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
}

impl SymmetryGroup {
    /// Checks the group axioms for `elements` (duplicates ignored) and builds
    /// the table, or reports the first violation found.
    pub fn verify_closure(elements: &[Perm]) -> Result<Self, GroupError> {
        let first = elements.first().ok_or(GroupError::Empty)?;
        if let Some(bad) = elements.iter().find(|p| p.len() != first.len()) {
            return Err(GroupError::LengthMismatch(first.len(), bad.len()));
        }
        let set: BTreeSet<Perm> = elements.iter().cloned().collect();
        let elements: Vec<Perm> = set.into_iter().collect();
        if !elements[0].is_identity() {
            return Err(GroupError::MissingIdentity);
        }
        let index: HashMap<&Perm, usize> =
            elements.iter().enumerate().map(|(k, p)| (p, k)).collect();
        let mut table = Vec::with_capacity(elements.len());
        for a in &elements {
            let mut row = Vec::with_capacity(elements.len());
            for b in &elements {
                let product = a.compose(b).expect("equal lengths checked");
                match index.get(&product) {
                    Some(&k) => row.push(k),
                    None => {
                        return Err(GroupError::NotClosed {
                            left: a.clone(),
                            right: b.clone(),
                            product,
                        })
                    }
                }
            }
            table.push(row);
        }
        let inverses = elements
            .iter()
            .map(|p| {
                index
                    .get(&p.inverse())
                    .copied()
                    .ok_or_else(|| GroupError::MissingInverse(p.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SymmetryGroup {
            elements,
            table,
            inverses,
        })
    }

    /// Closure of `gens` under composition, by breadth-first saturation from
    /// the identity. Always contains the identity.
    pub fn generate_from(gens: &[Perm]) -> Result<Self, GroupError> {
        let first = gens.first().ok_or(GroupError::Empty)?;
        if let Some(bad) = gens.iter().find(|p| p.len() != first.len()) {
            return Err(GroupError::LengthMismatch(first.len(), bad.len()));
        }
        let identity = Perm::identity(first.len());
        let mut seen: BTreeSet<Perm> = BTreeSet::from([identity.clone()]);
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = x.compose(g).expect("equal lengths checked");
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let all: Vec<Perm> = seen.into_iter().collect();
        Self::verify_closure(&all)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &Perm {
        &self.elements[idx]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// `(index, order)` for every element, in element order.
    pub fn element_orders(&self) -> Vec<(usize, usize)> {
        (0..self.order())
            .map(|a| {
                let mut power = a;
                let mut k = 1;
                while power != 0 {
                    power = self.table[power][a];
                    k += 1;
                }
                (a, k)
            })
            .collect()
    }

    /// Indices of the elements of order 2.
    pub fn involutions(&self) -> Vec<usize> {
        self.element_orders()
            .into_iter()
            .filter(|&(_, o)| o == 2)
            .map(|(a, _)| a)
            .collect()
    }

    /// Classes of `g ~ x g x^-1`, each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for g in 0..n {
            if class_of[g] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = BTreeSet::new();
            for x in 0..n {
                let h = self.table[self.table[x][g]][self.inverses[x]];
                members.insert(h);
                class_of[h] = id;
            }
            classes.push(members.into_iter().collect());
        }
        classes
    }

    /// Greedy generating set: scan elements in order and keep each one not
    /// already generated by those kept so far. Not guaranteed minimal.
    pub fn generating_set(&self) -> Vec<Perm> {
        let n = self.order();
        let mut gens: Vec<usize> = Vec::new();
        let mut reached = vec![false; n];
        reached[0] = true;
        for candidate in 1..n {
            if reached[candidate] {
                continue;
            }
            gens.push(candidate);
            // re-saturate from the identity with the enlarged generator list
            reached.iter_mut().for_each(|r| *r = false);
            reached[0] = true;
            let mut queue = VecDeque::from([0usize]);
            while let Some(x) = queue.pop_front() {
                for &g in &gens {
                    let y = self.table[x][g];
                    if !reached[y] {
                        reached[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        gens.into_iter().map(|g| self.elements[g].clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Perm {
        Perm::new(v.to_vec()).unwrap()
    }

    fn klein() -> Vec<Perm> {
        vec![
            perm(&[0, 1, 2, 3]),
            perm(&[0, 2, 1, 3]),
            perm(&[3, 1, 2, 0]),
            perm(&[3, 2, 1, 0]),
        ]
    }

    #[test]
    fn klein_four_group() {
        let g = SymmetryGroup::verify_closure(&klein()).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_commutative());
        // every element squares to the identity and the table is V4's
        for a in 0..4 {
            assert_eq!(g.product(a, a), 0);
            for b in 0..4 {
                assert_eq!(g.product(a, b), a ^ b);
            }
        }
        assert_eq!(g.element_orders(), vec![(0, 1), (1, 2), (2, 2), (3, 2)]);
        assert_eq!(
            g.conjugacy_classes(),
            vec![vec![0], vec![1], vec![2], vec![3]]
        );
        assert_eq!(
            g.generating_set(),
            vec![perm(&[0, 2, 1, 3]), perm(&[3, 1, 2, 0])]
        );
    }

    #[test]
    fn closure_failure_reports_witness() {
        let cycle = perm(&[1, 2, 0]);
        let err = SymmetryGroup::verify_closure(&[Perm::identity(3), cycle.clone()]).unwrap_err();
        assert_eq!(
            err,
            GroupError::NotClosed {
                left: cycle.clone(),
                right: cycle.clone(),
                product: cycle.pow(2),
            }
        );
    }

    #[test]
    fn other_verify_errors() {
        assert_eq!(SymmetryGroup::verify_closure(&[]), Err(GroupError::Empty));
        assert_eq!(
            SymmetryGroup::verify_closure(&[perm(&[1, 0])]),
            Err(GroupError::MissingIdentity)
        );
        assert_eq!(
            SymmetryGroup::verify_closure(&[perm(&[0, 1]), perm(&[0, 1, 2])]),
            Err(GroupError::LengthMismatch(2, 3))
        );
    }

    #[test]
    fn trivial_group() {
        let g = SymmetryGroup::verify_closure(&[Perm::identity(3)]).unwrap();
        assert!(g.is_commutative());
        assert_eq!(g.element_orders(), vec![(0, 1)]);
        assert!(g.generating_set().is_empty());
    }

    #[test]
    fn generate_from_involution() {
        let g = SymmetryGroup::generate_from(&[perm(&[1, 0, 3, 2])]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.element(0), &Perm::identity(4));
    }

    #[test]
    fn symmetric_group_s3() {
        let g = SymmetryGroup::generate_from(&[perm(&[1, 0, 2]), perm(&[1, 2, 0])]).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_commutative());
        let mut sizes: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(g.involutions().len(), 3);
        let regenerated = SymmetryGroup::generate_from(&g.generating_set()).unwrap();
        assert_eq!(regenerated, g);
    }
}
