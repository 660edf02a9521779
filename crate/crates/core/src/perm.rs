//! Permutations of basis indices.
//!
//! A [`Perm`] stores its image array: `image[u] = j_u`. Its matrix has a 1 at
//! `(u, image[u])`. Composition is chosen so that the matrix realization is a
//! homomorphism, `to_matrix(p.compose(q)) == to_matrix(p) * to_matrix(q)`,
//! which makes `p.compose(q)` the map `u -> q(p(u))`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::ExactMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("{0:?} is not a bijection on 0..{len}", len = .0.len())]
    NotBijection(Vec<usize>),
    #[error("not a permutation matrix")]
    NotPermutationMatrix,
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("cannot parse permutation '{0}'")]
    Syntax(String),
    #[error("site count {0} is out of range")]
    SiteCount(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Perm {
    image: Vec<usize>,
}

impl Perm {
    pub fn new(image: Vec<usize>) -> Result<Self, PermError> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &j in &image {
            if j >= n || seen[j] {
                return Err(PermError::NotBijection(image));
            }
            seen[j] = true;
        }
        Ok(Perm { image })
    }

    /// Caller guarantees `image` is a bijection.
    pub(crate) fn from_image_unchecked(image: Vec<usize>) -> Self {
        debug_assert!(Perm::new(image.clone()).is_ok());
        Perm { image }
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            image: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, u: usize) -> usize {
        self.image[u]
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(u, &j)| u == j)
    }

    /// `(P)_{uv} = 1` iff `v = image[u]`.
    pub fn to_matrix(&self) -> ExactMatrix {
        let n = self.len();
        let mut m = ExactMatrix::zeros(n, n);
        for (u, &v) in self.image.iter().enumerate() {
            m.set(u, v, crate::scalar::PolyScalar::one());
        }
        m
    }

    pub fn from_matrix(m: &ExactMatrix) -> Result<Self, PermError> {
        if !m.is_permutation_matrix() {
            return Err(PermError::NotPermutationMatrix);
        }
        let image = (0..m.rows())
            .map(|u| {
                (0..m.cols())
                    .find(|&v| m.get(u, v).is_one())
                    .expect("permutation matrix row has a 1")
            })
            .collect();
        Ok(Perm { image })
    }

    /// The product whose matrix is `to_matrix(self) * to_matrix(other)`.
    pub fn compose(&self, other: &Perm) -> Result<Perm, PermError> {
        if self.len() != other.len() {
            return Err(PermError::LengthMismatch(self.len(), other.len()));
        }
        Ok(Perm {
            image: self.image.iter().map(|&v| other.image[v]).collect(),
        })
    }

    pub fn inverse(&self) -> Perm {
        let mut image = vec![0; self.len()];
        for (u, &v) in self.image.iter().enumerate() {
            image[v] = u;
        }
        Perm { image }
    }

    pub fn pow(&self, exp: usize) -> Perm {
        let mut acc = Perm::identity(self.len());
        for _ in 0..exp {
            acc = acc.compose(self).expect("same length");
        }
        acc
    }

    /// Disjoint cycles including fixed points, each starting at its smallest
    /// element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.image[start];
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.image[next];
            }
            out.push(cycle);
        }
        out
    }

    /// Least `m >= 1` with `self^m` the identity.
    pub fn order(&self) -> usize {
        self.cycles().iter().map(Vec::len).fold(1, num_integer::lcm)
    }

    /// Cycle notation with fixed points, e.g. `(0 2)(1)`.
    pub fn cycle_string(&self) -> String {
        self.cycles()
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(ToString::to_string).collect();
                format!("({})", inner.join(" "))
            })
            .collect()
    }

    /// Permutation of the `2^n` spin-basis indices induced by a permutation of
    /// `n` sites.
    ///
    /// Basis index bits are read with site 0 as the most significant bit. The
    /// induced matrix sends basis state `b` to the state whose site `k`
    /// carries `b`'s bit at site `site_map(k)`; equivalently the returned
    /// image moves the bit at site `k` to site `site_map(k)`. The map from
    /// site permutations to induced permutations is a homomorphism.
    pub fn induced_site_perm(site_map: &Perm) -> Result<Perm, PermError> {
        let n = site_map.len();
        if n == 0 || n >= usize::BITS as usize {
            return Err(PermError::SiteCount(n));
        }
        let bit = |state: usize, site: usize| (state >> (n - 1 - site)) & 1;
        let image = (0..1usize << n)
            .map(|b| {
                (0..n).fold(0usize, |acc, k| {
                    acc | (bit(b, k) << (n - 1 - site_map.image[k]))
                })
            })
            .collect();
        Ok(Perm { image })
    }
}

impl TryFrom<Vec<usize>> for Perm {
    type Error = PermError;
    fn try_from(image: Vec<usize>) -> Result<Self, PermError> {
        Perm::new(image)
    }
}

impl From<Perm> for Vec<usize> {
    fn from(p: Perm) -> Vec<usize> {
        p.image
    }
}

/// Comma-separated 0-based image array, `j_0,j_1,...`.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.image.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Perm {
    type Err = PermError;
    fn from_str(s: &str) -> Result<Self, PermError> {
        let image = s
            .split(',')
            .map(|part| part.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PermError::Syntax(s.to_string()))?;
        Perm::new(image)
    }
}
