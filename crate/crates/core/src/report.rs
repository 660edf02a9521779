//! Commands and their reports: `find`, `group`, `decompose` and `models`.
//!
//! A [`Report`] serializes to a single JSON document whose field order is
//! fixed, so identical invocations give identical output once timing is
//! stripped with [`Report::comparison_form`]. Indices are 0-based throughout.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{GroupError, SymmetryGroup};
use crate::matrix::ExactMatrix;
use crate::matrix_file::{parse_matrix_file, MatrixFileError};
use crate::models::{self, as_substitution, BindingError, Bindings, ModelError};
use crate::perm::Perm;
use crate::search::{find_symmetries, is_symmetry, SearchConfig, SearchMode, StopReason};
use crate::subspace::{self, SubspaceBasis, SubspaceError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Error)]
pub enum CommandError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    MatrixFile {
        path: PathBuf,
        #[source]
        source: MatrixFileError,
    },
    #[error(transparent)]
    Binding(#[from] BindingError),
    #[error("{0}")]
    Syntax(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Io { .. }
            | CommandError::MatrixFile { .. }
            | CommandError::Binding(_)
            | CommandError::Syntax(_) => EXIT_PARSE,
            _ => EXIT_VALIDATION,
        }
    }
}

/// Where the Hamiltonian comes from.
#[derive(Debug, Clone)]
pub enum InputSource {
    Model { name: String },
    File { path: PathBuf },
}

/// A loaded Hamiltonian with the description that goes into reports.
#[derive(Debug, Clone)]
pub struct LoadedInput {
    pub matrix: ExactMatrix,
    pub description: InputDescription,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDescription {
    /// `model` or `file`.
    pub source: String,
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub rows: usize,
    pub cols: usize,
    pub hermitian: Option<bool>,
}

/// Builds a catalog model or reads a matrix file, then applies `params`
/// (for files, as a substitution into the entries).
pub fn load_input(source: &InputSource, params: &Bindings) -> Result<LoadedInput, CommandError> {
    let (matrix, kind, name) = match source {
        InputSource::Model { name } => (models::build(name, params)?, "model", name.clone()),
        InputSource::File { path } => {
            let matrix = read_matrix_file(path)?.map(|e| e.substitute(&as_substitution(params)));
            (matrix, "file", path.display().to_string())
        }
    };
    let hermitian = matrix.is_hermitian().ok();
    Ok(LoadedInput {
        description: InputDescription {
            source: kind.to_string(),
            name,
            params: params
                .iter()
                .map(|(k, v)| (k.clone(), v.to_string()))
                .collect(),
            rows: matrix.rows(),
            cols: matrix.cols(),
            hermitian,
        },
        matrix,
    })
}

pub fn read_matrix_file(path: &Path) -> Result<ExactMatrix, CommandError> {
    let text = std::fs::read_to_string(path).map_err(|source| CommandError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_matrix_file(&text).map_err(|source| CommandError::MatrixFile {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    pub mode: SearchMode,
    pub jobs: usize,
    pub nodes_visited: u64,
    pub exhausted: bool,
    pub stopped_by: Option<StopReason>,
    /// Excluded from [`Report::comparison_form`].
    pub wall_time_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryEntry {
    pub index: usize,
    pub image: Perm,
    pub cycles: String,
    pub order: usize,
}

impl SymmetryEntry {
    fn new(index: usize, p: &Perm) -> Self {
        SymmetryEntry {
            index,
            image: p.clone(),
            cycles: p.cycle_string(),
            order: p.order(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub order: usize,
    pub commutative: bool,
    /// Order of each element, indexed like `symmetries`.
    pub element_orders: Vec<usize>,
    pub involutions: Vec<usize>,
    pub conjugacy_classes: Vec<Vec<usize>>,
    /// Equals the number of inequivalent irreducible representations.
    pub class_count: usize,
    pub generators: Vec<Perm>,
}

impl GroupSummary {
    pub fn of(g: &SymmetryGroup) -> Self {
        let classes = g.conjugacy_classes();
        GroupSummary {
            order: g.order(),
            commutative: g.is_commutative(),
            element_orders: g.element_orders().into_iter().map(|(_, o)| o).collect(),
            involutions: g.involutions(),
            class_count: classes.len(),
            conjugacy_classes: classes,
            generators: g.generating_set(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceSection {
    /// `(I + P)/2` or `(I - P)/2`.
    pub projector: String,
    pub dimension: usize,
    pub basis: Vec<Vec<i64>>,
    pub invariant: bool,
    pub block: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub involution: Perm,
    pub projectors_commute_with_h: bool,
    pub subspaces: Vec<SubspaceSection>,
    /// `S^-1 H S` with the basis vectors as the columns of `S`.
    pub block_form: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub input: InputDescription,
    pub search: Option<SearchStats>,
    pub count: usize,
    pub symmetries: Vec<SymmetryEntry>,
    pub group: Option<GroupSummary>,
    pub decomposition: Option<Decomposition>,
    pub notes: Vec<String>,
}

impl Report {
    fn new(command: &str, input: &LoadedInput) -> Self {
        let mut notes = Vec::new();
        if input.description.hermitian == Some(false) {
            notes.push("warning: input matrix is not hermitian; searching anyway".to_string());
        }
        Report {
            command: command.to_string(),
            input: input.description.clone(),
            search: None,
            count: 0,
            symmetries: Vec::new(),
            group: None,
            decomposition: None,
            notes,
        }
    }

    /// The report with timing removed, for byte-for-byte comparisons.
    pub fn comparison_form(&self) -> Report {
        let mut out = self.clone();
        if let Some(s) = out.search.as_mut() {
            s.wall_time_ms = None;
        }
        out
    }

    pub fn perms(&self) -> Vec<Perm> {
        self.symmetries.iter().map(|s| s.image.clone()).collect()
    }

    pub fn exit_code(&self) -> i32 {
        match &self.search {
            Some(s) if !s.exhausted => EXIT_BUDGET,
            _ => EXIT_OK,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let inp = &self.input;
        let _ = write!(
            out,
            "input: {} {} ({}x{})",
            inp.source, inp.name, inp.rows, inp.cols
        );
        if !inp.params.is_empty() {
            let params: Vec<String> = inp.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = write!(out, " with {}", params.join(", "));
        }
        out.push('\n');
        if let Some(s) = &self.search {
            let _ = write!(
                out,
                "search: mode {}, {} job(s), {} nodes, {}",
                match s.mode {
                    SearchMode::LeafCheck => "leaf",
                    SearchMode::Pruned => "pruned",
                },
                s.jobs,
                s.nodes_visited,
                if s.exhausted {
                    "complete"
                } else {
                    "INCOMPLETE"
                }
            );
            if let Some(ms) = s.wall_time_ms {
                let _ = write!(out, ", {ms:.1} ms");
            }
            out.push('\n');
            let _ = writeln!(out, "symmetries found: {}", self.count);
        }
        for s in &self.symmetries {
            let _ = writeln!(
                out,
                "  P[{}] = [{}]  {}  order {}",
                s.index, s.image, s.cycles, s.order
            );
        }
        if let Some(g) = &self.group {
            let _ = writeln!(out, "group order: {}", g.order);
            let _ = writeln!(
                out,
                "commutative: {}",
                if g.commutative { "yes" } else { "no" }
            );
            let _ = writeln!(
                out,
                "involutions: {} {:?}",
                g.involutions.len(),
                g.involutions
            );
            let _ = writeln!(
                out,
                "conjugacy classes: {} (= number of inequivalent irreducible representations)",
                g.class_count
            );
            for (k, c) in g.conjugacy_classes.iter().enumerate() {
                let _ = writeln!(out, "  C{k}: {c:?}");
            }
            let gens: Vec<String> = g.generators.iter().map(|p| format!("[{p}]")).collect();
            let _ = writeln!(out, "generators: {}", gens.join(" "));
        }
        if let Some(d) = &self.decomposition {
            let _ = writeln!(out, "involution: [{}]", d.involution);
            for s in &d.subspaces {
                let _ = writeln!(
                    out,
                    "subspace {} (dim {}, invariant: {}):",
                    s.projector, s.dimension, s.invariant
                );
                for v in &s.basis {
                    let _ = writeln!(out, "  {v:?}");
                }
                if !s.block.is_empty() {
                    let _ = writeln!(out, "  block:");
                    for row in &s.block {
                        let _ = writeln!(out, "    [{}]", row.join(", "));
                    }
                }
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}

fn require_square(m: &ExactMatrix) -> Result<(), CommandError> {
    if m.is_square() {
        Ok(())
    } else {
        Err(CommandError::Validation(format!(
            "matrix is {}x{}, expected a square matrix",
            m.rows(),
            m.cols()
        )))
    }
}

fn run_search(
    command: &str,
    input: &LoadedInput,
    cfg: &SearchConfig,
) -> Result<(Report, Vec<Perm>), CommandError> {
    require_square(&input.matrix)?;
    let started = Instant::now();
    let result =
        find_symmetries(&input.matrix, cfg).map_err(|e| CommandError::Validation(e.to_string()))?;
    let elapsed = started.elapsed().as_secs_f64() * 1000.0;
    // independent re-check on the exact entries before anything is emitted
    for p in &result.perms {
        if !is_symmetry(&input.matrix, p).expect("dimensions match") {
            return Err(CommandError::Validation(format!(
                "search returned non-symmetry [{p}]"
            )));
        }
    }
    let mut report = Report::new(command, input);
    report.search = Some(SearchStats {
        mode: cfg.mode,
        jobs: cfg.jobs.get(),
        nodes_visited: result.nodes_visited,
        exhausted: result.exhausted,
        stopped_by: result.stopped_by,
        wall_time_ms: Some(elapsed),
    });
    report.count = result.count;
    if !result.exhausted {
        report.notes.push(match result.stopped_by {
            Some(StopReason::MaxResults) => {
                "search stopped at --max-results; the list is partial".to_string()
            }
            _ => "search stopped at --node-budget; the list is partial".to_string(),
        });
    }
    Ok((report, result.perms))
}

/// Enumerates all permutation symmetries.
pub fn cmd_find(input: &LoadedInput, cfg: &SearchConfig) -> Result<Report, CommandError> {
    let (mut report, perms) = run_search("find", input, cfg)?;
    report.symmetries = perms
        .iter()
        .enumerate()
        .map(|(k, p)| SymmetryEntry::new(k, p))
        .collect();
    if report.count == 1 && report.search.as_ref().is_some_and(|s| s.exhausted) {
        report
            .notes
            .push("only the identity: no non-trivial permutation symmetry".to_string());
    }
    Ok(report)
}

/// Enumerates the symmetries and analyzes the group they form.
pub fn cmd_group(input: &LoadedInput, cfg: &SearchConfig) -> Result<Report, CommandError> {
    let cfg = SearchConfig {
        count_only: false,
        ..cfg.clone()
    };
    let (mut report, perms) = run_search("group", input, &cfg)?;
    report.symmetries = perms
        .iter()
        .enumerate()
        .map(|(k, p)| SymmetryEntry::new(k, p))
        .collect();
    if report.search.as_ref().is_some_and(|s| s.exhausted) {
        let group = SymmetryGroup::verify_closure(&perms)?;
        report.group = Some(GroupSummary::of(&group));
    } else {
        report
            .notes
            .push("group analysis skipped: the symmetry list is incomplete".to_string());
    }
    Ok(report)
}

fn small_ints(b: &SubspaceBasis) -> Vec<Vec<i64>> {
    b.vectors()
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| i64::try_from(x).expect("projector basis entries are small"))
                .collect()
        })
        .collect()
}

fn render(m: &ExactMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(ToString::to_string).collect())
        .collect()
}

/// Splits the space with the projectors of an involutive symmetry and shows
/// the block form of `H` in the adapted basis.
pub fn cmd_decompose(input: &LoadedInput, involution: &Perm) -> Result<Report, CommandError> {
    let h = &input.matrix;
    require_square(h)?;
    if involution.len() != h.rows() {
        return Err(CommandError::Validation(format!(
            "permutation has length {}, matrix is {}x{}",
            involution.len(),
            h.rows(),
            h.cols()
        )));
    }
    if !is_symmetry(h, involution).expect("dimensions match") {
        return Err(CommandError::Validation(format!(
            "[{involution}] is not a symmetry of the input"
        )));
    }
    if involution.order() > 2 {
        return Err(CommandError::Validation(format!(
            "[{involution}] has order {}, not an involution",
            involution.order()
        )));
    }
    let pair = subspace::projectors_from_involution(involution)?;
    let commute = pair.pi1.matmul(h).ok() == h.matmul(&pair.pi1).ok();
    let b1 = subspace::column_space_basis(&pair.pi1)?;
    let b2 = subspace::column_space_basis(&pair.pi2)?;
    let block = subspace::block_form(h, &b1, &b2)?;
    let split = b1.len();
    let section = |name: &str,
                   b: &SubspaceBasis,
                   range: std::ops::Range<usize>|
     -> Result<SubspaceSection, CommandError> {
        Ok(SubspaceSection {
            projector: name.to_string(),
            dimension: b.len(),
            basis: small_ints(b),
            invariant: subspace::is_invariant_subspace(h, b)?,
            block: subspace::sub_block(&block, range)
                .as_ref()
                .map(render)
                .unwrap_or_default(),
        })
    };
    let mut report = Report::new("decompose", input);
    report.count = 1;
    report.symmetries = vec![SymmetryEntry::new(0, involution)];
    report.decomposition = Some(Decomposition {
        involution: involution.clone(),
        projectors_commute_with_h: commute,
        subspaces: vec![
            section("(I+P)/2", &b1, 0..split)?,
            section("(I-P)/2", &b2, split..h.rows())?,
        ],
        block_form: render(&block),
    });
    report.notes.push(
        "basis vectors are primitive integer vectors; divide each by its Euclidean norm to normalize"
            .to_string(),
    );
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSummary {
    pub name: String,
    pub dimension: usize,
    pub description: String,
    pub parameters: Vec<(String, String)>,
}

pub fn cmd_models() -> Vec<ModelSummary> {
    models::list_models()
        .iter()
        .map(|m| ModelSummary {
            name: m.name.to_string(),
            dimension: m.dimension,
            description: m.description.to_string(),
            parameters: m
                .parameters
                .iter()
                .map(|(n, d)| (n.to_string(), d.to_string()))
                .collect(),
        })
        .collect()
}

pub fn models_text(models: &[ModelSummary]) -> String {
    let mut out = String::new();
    for m in models {
        let _ = writeln!(
            out,
            "{:<12} dim {:>2}  {}",
            m.name, m.dimension, m.description
        );
        for (p, d) in &m.parameters {
            let _ = writeln!(out, "    {p:<4} {d}");
        }
    }
    out
}
