//! Enumeration of permutation symmetries `P^T H P = H`.
//!
//! Both search modes walk the same backtracking loop over an array of loop
//! variables `j_0..j_{n-1}`, each running `0..n` in order and rejecting values
//! already taken by an earlier variable. In [`SearchMode::LeafCheck`] the
//! symmetry predicate is tested only on complete permutations, so every one of
//! the `n!` permutations is visited in lexicographic order. In
//! [`SearchMode::Pruned`] a partial assignment `u -> j_u` for `u <= i` is kept
//! only if it preserves every entry it already determines:
//! `H[j_k][j_i] == H[k][i]` and `H[j_i][j_k] == H[i][k]` for all `k <= i`.
//! A rejected prefix only extends to non-symmetries, so both modes return the
//! same set.
//!
//! Entries are compared through a [`ColorMatrix`], which replaces each distinct
//! exact scalar by a small integer.

use std::collections::HashMap;
use std::num::{NonZeroU64, NonZeroUsize};
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::ExactMatrix;
use crate::perm::Perm;
use crate::scalar::PolyScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("permutation of length {perm} does not fit a {matrix}x{matrix} matrix")]
    DimensionMismatch { matrix: usize, perm: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// Test the full predicate at complete permutations only.
    LeafCheck,
    /// Reject inconsistent partial assignments as soon as they appear.
    #[default]
    Pruned,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub mode: SearchMode,
    /// Stop once this many symmetries have been found and another one turns up.
    pub max_results: Option<NonZeroUsize>,
    /// Stop after this many loop-variable assignments.
    pub node_budget: Option<NonZeroU64>,
    /// Count symmetries without collecting them.
    pub count_only: bool,
    /// Worker threads; the tree is split on the first loop variable. Runs with
    /// a budget or result cap are always single-threaded.
    pub jobs: NonZeroUsize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            mode: SearchMode::Pruned,
            max_results: None,
            node_budget: None,
            count_only: false,
            jobs: NonZeroUsize::MIN,
        }
    }
}

impl SearchConfig {
    pub fn with_mode(mode: SearchMode) -> Self {
        SearchConfig {
            mode,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    NodeBudget,
    MaxResults,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    /// Symmetries in lexicographic order of their image arrays; empty when
    /// counting only.
    pub perms: Vec<Perm>,
    pub count: usize,
    /// Number of loop-variable assignments made.
    pub nodes_visited: u64,
    /// False when a budget or result cap cut the search short.
    pub exhausted: bool,
    pub stopped_by: Option<StopReason>,
}

/// `H` with each distinct entry replaced by a color index, so that
/// `colors[u][v] == colors[x][y]` iff `H[u][v] == H[x][y]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorMatrix {
    n: usize,
    colors: Vec<u32>,
    palette: usize,
}

impl ColorMatrix {
    pub fn new(h: &ExactMatrix) -> Result<Self, SearchError> {
        if !h.is_square() {
            return Err(SearchError::NotSquare {
                rows: h.rows(),
                cols: h.cols(),
            });
        }
        let mut ids: HashMap<&PolyScalar, u32> = HashMap::new();
        let colors = h
            .entries()
            .iter()
            .map(|e| {
                let next = ids.len() as u32;
                *ids.entry(e).or_insert(next)
            })
            .collect();
        Ok(ColorMatrix {
            n: h.rows(),
            colors,
            palette: ids.len(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Number of distinct entries.
    pub fn palette_size(&self) -> usize {
        self.palette
    }

    #[inline]
    pub fn color(&self, row: usize, col: usize) -> u32 {
        self.colors[row * self.n + col]
    }

    fn preserved_by(&self, image: &[usize]) -> bool {
        (0..self.n).all(|u| (0..self.n).all(|v| self.color(image[u], image[v]) == self.color(u, v)))
    }
}

/// True iff `H[π(u)][π(v)] == H[u][v]` for all `u, v`, which is equivalent to
/// `P^T H P = H` and to `P H = H P`.
pub fn is_symmetry(h: &ExactMatrix, p: &Perm) -> Result<bool, SearchError> {
    if !h.is_square() {
        return Err(SearchError::NotSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    if p.len() != h.rows() {
        return Err(SearchError::DimensionMismatch {
            matrix: h.rows(),
            perm: p.len(),
        });
    }
    let n = h.rows();
    Ok((0..n).all(|u| (0..n).all(|v| h.get(p.apply(u), p.apply(v)) == h.get(u, v))))
}

/// The matrix form of the predicate: `P * H == H * P`, computed with exact
/// matrix products.
pub fn commutes_via_matmul(h: &ExactMatrix, p: &Perm) -> Result<bool, SearchError> {
    if !h.is_square() {
        return Err(SearchError::NotSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    if p.len() != h.rows() {
        return Err(SearchError::DimensionMismatch {
            matrix: h.rows(),
            perm: p.len(),
        });
    }
    let pm = p.to_matrix();
    let lhs = pm.matmul(h).expect("square operands");
    let rhs = h.matmul(&pm).expect("square operands");
    Ok(lhs == rhs)
}

/// Visits every permutation of `0..n` in the nested-loop order: loop variable
/// `j_0` outermost, each running `0..n`, duplicates skipped. Stops early if
/// `visit` breaks.
pub fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize]) -> ControlFlow<()>) {
    let mut walk = Walk::new(n, 0);
    walk.run(
        |_, _| true,
        |image| match visit(image) {
            ControlFlow::Continue(()) => LeafAction::Continue,
            ControlFlow::Break(()) => LeafAction::Stop,
        },
        None,
    );
}

enum LeafAction {
    Continue,
    Stop,
}

/// The loop-variable array and its cursor. `j[k] == -1` marks a variable
/// whose loop has not started.
struct Walk {
    n: usize,
    base: usize,
    j: Vec<isize>,
    image: Vec<usize>,
    nodes: u64,
}

impl Walk {
    fn new(n: usize, base: usize) -> Self {
        Walk {
            n,
            base,
            j: vec![-1; n],
            image: vec![0; n],
            nodes: 0,
        }
    }

    /// Runs the loops for variables `base..n` with `j_0..j_{base-1}` fixed.
    /// `accept(image, i)` is asked whether the fresh, duplicate-free value of
    /// variable `i` may be kept. Returns true if stopped early.
    fn run(
        &mut self,
        mut accept: impl FnMut(&[usize], usize) -> bool,
        mut leaf: impl FnMut(&[usize]) -> LeafAction,
        budget: Option<u64>,
    ) -> bool {
        let n = self.n;
        let base = self.base as isize;
        if self.base == n {
            return matches!(leaf(&self.image), LeafAction::Stop);
        }
        let mut i = base;
        while i >= base {
            let iu = i as usize;
            self.j[iu] += 1;
            if self.j[iu] == n as isize {
                self.j[iu] = -1;
                i -= 1;
                continue;
            }
            if budget.is_some_and(|b| self.nodes >= b) {
                return true;
            }
            self.nodes += 1;
            let value = self.j[iu] as usize;
            if self.j[..iu].iter().any(|&jk| jk as usize == value) {
                continue;
            }
            self.image[iu] = value;
            if !accept(&self.image, iu) {
                continue;
            }
            i += 1;
            if i as usize == n {
                if let LeafAction::Stop = leaf(&self.image) {
                    return true;
                }
                i -= 1;
            }
        }
        false
    }

    fn fix_prefix(&mut self, prefix: &[usize]) {
        for (k, &v) in prefix.iter().enumerate() {
            self.j[k] = v as isize;
            self.image[k] = v;
        }
    }
}

/// Partial edge-consistency of the newly assigned variable `i` against all
/// variables `k <= i`.
fn consistent(colors: &ColorMatrix, image: &[usize], i: usize) -> bool {
    let ji = image[i];
    (0..=i).all(|k| {
        let jk = image[k];
        colors.color(jk, ji) == colors.color(k, i) && colors.color(ji, jk) == colors.color(i, k)
    })
}

struct Outcome {
    perms: Vec<Perm>,
    count: usize,
    nodes: u64,
    stopped_by: Option<StopReason>,
}

fn search_subtree(
    colors: &ColorMatrix,
    cfg: &SearchConfig,
    prefix: &[usize],
    prefix_nodes: u64,
) -> Outcome {
    let mut walk = Walk::new(colors.dim(), prefix.len());
    walk.fix_prefix(prefix);
    walk.nodes = prefix_nodes;
    let mut perms = Vec::new();
    let mut count = 0usize;
    let mut stopped_by = None;
    let pruned = cfg.mode == SearchMode::Pruned;
    let cap = cfg.max_results.map(NonZeroUsize::get);
    let stopped = walk.run(
        |image, i| !pruned || consistent(colors, image, i),
        |image| {
            // pruned prefixes are already fully consistent at the leaf
            if !pruned && !colors.preserved_by(image) {
                return LeafAction::Continue;
            }
            if cap.is_some_and(|c| count >= c) {
                stopped_by = Some(StopReason::MaxResults);
                return LeafAction::Stop;
            }
            count += 1;
            if !cfg.count_only {
                perms.push(Perm::from_image_unchecked(image.to_vec()));
            }
            LeafAction::Continue
        },
        cfg.node_budget.map(NonZeroU64::get),
    );
    if stopped && stopped_by.is_none() {
        stopped_by = Some(StopReason::NodeBudget);
    }
    Outcome {
        perms,
        count,
        nodes: walk.nodes,
        stopped_by,
    }
}

/// Finds every permutation `P` with `P^T H P = H`.
///
/// Budgets never truncate silently: a search cut short returns what it found
/// with `exhausted == false`.
pub fn find_symmetries(h: &ExactMatrix, cfg: &SearchConfig) -> Result<SearchResult, SearchError> {
    let colors = ColorMatrix::new(h)?;
    Ok(find_symmetries_colored(&colors, cfg))
}

pub fn count_symmetries(h: &ExactMatrix, cfg: &SearchConfig) -> Result<usize, SearchError> {
    let cfg = SearchConfig {
        count_only: true,
        ..cfg.clone()
    };
    Ok(find_symmetries(h, &cfg)?.count)
}

pub fn find_symmetries_colored(colors: &ColorMatrix, cfg: &SearchConfig) -> SearchResult {
    let limited = cfg.max_results.is_some() || cfg.node_budget.is_some();
    let jobs = cfg.jobs.get().min(colors.dim());
    let outcome = if jobs <= 1 || limited {
        search_subtree(colors, cfg, &[], 0)
    } else {
        search_parallel(colors, cfg, jobs)
    };
    SearchResult {
        exhausted: outcome.stopped_by.is_none(),
        perms: outcome.perms,
        count: outcome.count,
        nodes_visited: outcome.nodes,
        stopped_by: outcome.stopped_by,
    }
}

/// Splits on the first loop variable; each worker owns its subtrees' buffers
/// and the merge concatenates them by first value, which reproduces the serial
/// order.
fn search_parallel(colors: &ColorMatrix, cfg: &SearchConfig, jobs: usize) -> Outcome {
    let n = colors.dim();
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Outcome>>> = (0..n).map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let first = next.fetch_add(1, Ordering::Relaxed);
                if first >= n {
                    break;
                }
                let outcome = if cfg.mode == SearchMode::Pruned && !consistent(colors, &[first], 0)
                {
                    Outcome {
                        perms: Vec::new(),
                        count: 0,
                        nodes: 1,
                        stopped_by: None,
                    }
                } else {
                    search_subtree(colors, cfg, &[first], 1)
                };
                *slots[first].lock().expect("worker panicked") = Some(outcome);
            });
        }
    });
    let mut merged = Outcome {
        perms: Vec::new(),
        count: 0,
        nodes: 0,
        stopped_by: None,
    };
    for slot in slots {
        let part = slot
            .into_inner()
            .expect("worker panicked")
            .expect("every first value searched");
        merged.perms.extend(part.perms);
        merged.count += part.count;
        merged.nodes += part.nodes;
    }
    merged
}
