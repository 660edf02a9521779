//! Parametric Hamiltonians: a Fermi trimer, a two-site Hubbard model, two
//! coupled spins with and without a swapped interaction, a triple spin
//! interaction and a periodic four-site transverse Ising chain.
//!
//! Parameters not bound by the caller stay symbolic.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::matrix::ExactMatrix;
use crate::scalar::PolyScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unknown model '{0}'")]
    UnknownModel(String),
    #[error("model '{model}' has no parameter '{param}' (expected one of: {expected})")]
    UnknownParameter {
        model: String,
        param: String,
        expected: String,
    },
    #[error("Pauli index must be 1, 2 or 3, got {0}")]
    BadPauliIndex(u8),
    #[error("site {site} out of range 1..={sites}")]
    SiteOutOfRange { site: usize, sites: usize },
}

/// Parameter name to value.
pub type Bindings = BTreeMap<String, PolyScalar>;

type Builder = fn(&dyn Fn(&str) -> PolyScalar) -> ExactMatrix;

pub struct ModelSpec {
    pub name: &'static str,
    pub dimension: usize,
    pub parameters: &'static [(&'static str, &'static str)],
    pub description: &'static str,
    builder: Builder,
}

impl ModelSpec {
    /// Builds the matrix, binding the given parameters.
    pub fn build(&self, params: &Bindings) -> Result<ExactMatrix, ModelError> {
        for key in params.keys() {
            if !self.parameters.iter().any(|(p, _)| p == key) {
                return Err(ModelError::UnknownParameter {
                    model: self.name.to_string(),
                    param: key.clone(),
                    expected: self
                        .parameters
                        .iter()
                        .map(|(p, _)| *p)
                        .collect::<Vec<_>>()
                        .join(", "),
                });
            }
        }
        let lookup = |name: &str| {
            params
                .get(name)
                .cloned()
                .unwrap_or_else(|| PolyScalar::var(name))
        };
        Ok((self.builder)(&lookup))
    }
}

impl std::fmt::Debug for ModelSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ModelSpec")
            .field("name", &self.name)
            .field("dimension", &self.dimension)
            .field("parameters", &self.parameters)
            .finish()
    }
}

static CATALOG: [ModelSpec; 6] = [
    ModelSpec {
        name: "fermi3",
        dimension: 3,
        parameters: &[
            ("k1", "on-site energy of mode 1"),
            ("k2", "on-site energy of mode 2"),
            ("k3", "on-site energy of mode 3"),
            ("t", "hopping amplitude"),
        ],
        description: "three fermion modes with all-to-all hopping, two-particle sector",
        builder: build_fermi3,
    },
    ModelSpec {
        name: "hubbard2",
        dimension: 4,
        parameters: &[("U", "on-site interaction"), ("t", "hopping amplitude")],
        description: "two-site Hubbard model, N = 2 and S_z = 0 sector",
        builder: build_hubbard2,
    },
    ModelSpec {
        name: "twospin_H",
        dimension: 4,
        parameters: &[
            ("w1", "field on spin 1 (hbar*omega_1)"),
            ("w2", "field on spin 2 (hbar*omega_2)"),
            ("eps", "coupling of sigma3 x sigma1"),
        ],
        description: "w1 s3(x)I + w2 I(x)s1 + eps s3(x)s1",
        builder: build_twospin_h,
    },
    ModelSpec {
        name: "twospin_K",
        dimension: 4,
        parameters: &[
            ("w1", "field on spin 1 (hbar*omega_1)"),
            ("w2", "field on spin 2 (hbar*omega_2)"),
            ("eps", "coupling of sigma1 x sigma3"),
        ],
        description: "w1 s3(x)I + w2 I(x)s1 + eps s1(x)s3 (interaction swapped)",
        builder: build_twospin_k,
    },
    ModelSpec {
        name: "triple_spin",
        dimension: 8,
        parameters: &[],
        description: "s1 (x) s2 (x) s3",
        builder: build_triple_spin,
    },
    ModelSpec {
        name: "ising4",
        dimension: 16,
        parameters: &[("a", "zz coupling"), ("b", "transverse field")],
        description: "a sum s3(j)s3(j+1) + b sum s1(j), four sites, periodic",
        builder: build_ising4,
    },
];

pub fn list_models() -> &'static [ModelSpec] {
    &CATALOG
}

pub fn model(name: &str) -> Result<&'static ModelSpec, ModelError> {
    CATALOG
        .iter()
        .find(|m| m.name == name)
        .ok_or_else(|| ModelError::UnknownModel(name.to_string()))
}

pub fn build(name: &str, params: &Bindings) -> Result<ExactMatrix, ModelError> {
    model(name)?.build(params)
}

/// The Pauli matrix `sigma_k`.
pub fn sigma(k: u8) -> Result<ExactMatrix, ModelError> {
    let z = PolyScalar::zero;
    let one = PolyScalar::one;
    let rows = match k {
        1 => vec![vec![z(), one()], vec![one(), z()]],
        2 => vec![vec![z(), -PolyScalar::i()], vec![PolyScalar::i(), z()]],
        3 => vec![vec![one(), z()], vec![z(), -one()]],
        _ => return Err(ModelError::BadPauliIndex(k)),
    };
    Ok(ExactMatrix::from_rows(rows).expect("2x2"))
}

/// `sigma_k` acting on site `site` (1-based) of an `sites`-site chain:
/// `I (x) ... (x) sigma_k (x) ... (x) I`.
pub fn sigma_at(k: u8, site: usize, sites: usize) -> Result<ExactMatrix, ModelError> {
    if site == 0 || site > sites {
        return Err(ModelError::SiteOutOfRange { site, sites });
    }
    let s = sigma(k)?;
    let id = ExactMatrix::identity(2);
    let factors: Vec<&ExactMatrix> = (1..=sites)
        .map(|j| if j == site { &s } else { &id })
        .collect();
    Ok(ExactMatrix::kron_all(factors).expect("at least one site"))
}

fn pauli(k: u8) -> ExactMatrix {
    sigma(k).expect("valid Pauli index")
}

fn sum(terms: impl IntoIterator<Item = ExactMatrix>) -> ExactMatrix {
    terms
        .into_iter()
        .reduce(|a, b| a.add(&b).expect("equal shapes"))
        .expect("non-empty sum")
}

fn build_fermi3(p: &dyn Fn(&str) -> PolyScalar) -> ExactMatrix {
    let (k1, k2, k3, t) = (p("k1"), p("k2"), p("k3"), p("t"));
    ExactMatrix::from_rows(vec![
        vec![&k1 + &k2, t.clone(), -&t],
        vec![t.clone(), &k1 + &k3, t.clone()],
        vec![-&t, t.clone(), &k2 + &k3],
    ])
    .expect("3x3")
}

fn build_hubbard2(p: &dyn Fn(&str) -> PolyScalar) -> ExactMatrix {
    let (u, t, z) = (p("U"), p("t"), PolyScalar::zero());
    ExactMatrix::from_rows(vec![
        vec![u.clone(), t.clone(), t.clone(), z.clone()],
        vec![t.clone(), z.clone(), z.clone(), t.clone()],
        vec![t.clone(), z.clone(), z.clone(), t.clone()],
        vec![z, t.clone(), t, u],
    ])
    .expect("4x4")
}

fn two_spin(p: &dyn Fn(&str) -> PolyScalar, coupling: (u8, u8)) -> ExactMatrix {
    let id = ExactMatrix::identity(2);
    sum([
        pauli(3).kron(&id).scale(&p("w1")),
        id.kron(&pauli(1)).scale(&p("w2")),
        pauli(coupling.0).kron(&pauli(coupling.1)).scale(&p("eps")),
    ])
}

fn build_twospin_h(p: &dyn Fn(&str) -> PolyScalar) -> ExactMatrix {
    two_spin(p, (3, 1))
}

fn build_twospin_k(p: &dyn Fn(&str) -> PolyScalar) -> ExactMatrix {
    two_spin(p, (1, 3))
}

fn build_triple_spin(_: &dyn Fn(&str) -> PolyScalar) -> ExactMatrix {
    pauli(1).kron(&pauli(2)).kron(&pauli(3))
}

fn build_ising4(p: &dyn Fn(&str) -> PolyScalar) -> ExactMatrix {
    let at = |k, j| sigma_at(k, j, 4).expect("site in range");
    let zz = sum((1..=4).map(|j| {
        let next = j % 4 + 1;
        at(3, j).matmul(&at(3, next)).expect("16x16")
    }));
    let x = sum((1..=4).map(|j| at(1, j)));
    zz.scale(&p("a")).add(&x.scale(&p("b"))).expect("16x16")
}

/// Parses `name=value` pairs into bindings.
pub fn parse_bindings<'a>(
    pairs: impl IntoIterator<Item = &'a str>,
) -> Result<Bindings, BindingError> {
    let mut out = Bindings::new();
    for pair in pairs {
        let (name, value) = pair
            .split_once('=')
            .ok_or_else(|| BindingError::Syntax(pair.to_string()))?;
        let value = PolyScalar::parse(value).map_err(|e| BindingError::Value {
            name: name.trim().to_string(),
            source: e,
        })?;
        out.insert(name.trim().to_string(), value);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BindingError {
    #[error("expected name=value, got '{0}'")]
    Syntax(String),
    #[error("bad value for '{name}': {source}")]
    Value {
        name: String,
        #[source]
        source: crate::scalar::ParseError,
    },
}

/// Bindings in the form [`PolyScalar::substitute`] takes.
pub fn as_substitution(b: &Bindings) -> HashMap<String, PolyScalar> {
    b.iter().map(|(k, v)| (k.clone(), v.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PolyScalar {
        PolyScalar::parse(s).unwrap()
    }

    #[test]
    fn pauli_matrices() {
        assert_eq!(
            sigma(1).unwrap(),
            ExactMatrix::from_ints(&[&[0, 1], &[1, 0]]).unwrap()
        );
        let s2 = sigma(2).unwrap();
        assert_eq!(*s2.get(0, 1), p("-i"));
        assert_eq!(*s2.get(1, 0), p("i"));
        assert_eq!(
            sigma(3).unwrap(),
            ExactMatrix::from_ints(&[&[1, 0], &[0, -1]]).unwrap()
        );
        assert_eq!(sigma(4).unwrap_err(), ModelError::BadPauliIndex(4));
    }

    #[test]
    fn embedded_pauli() {
        let id = ExactMatrix::identity(2);
        let s3 = sigma(3).unwrap();
        let s1 = sigma(1).unwrap();
        assert_eq!(sigma_at(3, 1, 4).unwrap(), s3.kron(&id).kron(&id).kron(&id));
        assert_eq!(sigma_at(1, 4, 4).unwrap(), id.kron(&id).kron(&id).kron(&s1));
        assert_eq!(sigma_at(1, 1, 1).unwrap(), s1);
        assert!(sigma_at(1, 5, 4).is_err());
        assert!(sigma_at(1, 0, 4).is_err());
    }

    #[test]
    fn catalog_listing() {
        let models = list_models();
        assert_eq!(models.len(), 6);
        assert!(models
            .iter()
            .any(|m| m.name == "fermi3" && m.dimension == 3));
        assert!(models
            .iter()
            .any(|m| m.name == "ising4" && m.dimension == 16));
    }

    #[test]
    fn every_model_is_hermitian_with_declared_dimension() {
        for m in list_models() {
            let h = m.build(&Bindings::new()).unwrap();
            assert_eq!(h.shape(), (m.dimension, m.dimension), "{}", m.name);
            assert!(h.is_hermitian().unwrap(), "{}", m.name);
        }
    }

    #[test]
    fn hubbard_display() {
        let h = build("hubbard2", &Bindings::new()).unwrap();
        let expected = [
            ["U", "t", "t", "0"],
            ["t", "0", "0", "t"],
            ["t", "0", "0", "t"],
            ["0", "t", "t", "U"],
        ];
        for (r, row) in expected.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                assert_eq!(*h.get(r, c), p(e));
            }
        }
    }

    #[test]
    fn bindings() {
        let b = parse_bindings(["w1=0", "w2=0", "eps=0"]).unwrap();
        assert!(build("twospin_H", &b).unwrap().is_zero());
        let b = parse_bindings(["k1=k", "k2=k", "k3=k"]).unwrap();
        let h = build("fermi3", &b).unwrap();
        assert_eq!(*h.get(0, 0), p("2*k"));
        assert!(matches!(
            build("fermi3", &parse_bindings(["q=1"]).unwrap()),
            Err(ModelError::UnknownParameter { .. })
        ));
        assert!(matches!(
            build("nope", &Bindings::new()),
            Err(ModelError::UnknownModel(_))
        ));
        assert!(parse_bindings(["k1"]).is_err());
        assert!(parse_bindings(["k1=1/0"]).is_err());
    }

    #[test]
    fn triple_spin_squares_to_identity() {
        let h = build("triple_spin", &Bindings::new()).unwrap();
        assert_eq!(h.matmul(&h).unwrap(), ExactMatrix::identity(8));
        assert_eq!(h.dagger().matmul(&h).unwrap(), ExactMatrix::identity(8));
    }
}
