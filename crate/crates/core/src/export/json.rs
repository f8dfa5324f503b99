//! Versioned JSON documents for every command.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::atlas::{self, BoundaryPatch, Chamber, ClassificationResult};
use crate::coxeter::CoxeterSystem;
use crate::error::{Error, Result};
use crate::export::serde_helpers::{int_rows, int_vec, quad, quad_vec, rat_matrices, rat_matrix, rat_vec};
use crate::group::{eigen_pair, EigenData};
use crate::matrix::RatMatrix;
use crate::scalar::{format_rational, parse_rational, QuadExt};
use crate::symmetric::{self, PsefPatch, SymCone, TangentLine};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemDoc {
    pub schema_version: u32,
    pub n: u32,
    pub m: usize,
    #[serde(with = "rat_matrix")]
    pub gram: RatMatrix,
    /// `τ_i` on the root basis.
    #[serde(with = "rat_matrices")]
    pub tau: Vec<RatMatrix>,
    /// `t_i = τ_iᵀ` on divisor classes.
    #[serde(with = "rat_matrices")]
    pub t: Vec<RatMatrix>,
    #[serde(with = "rat_matrix")]
    pub quadric: RatMatrix,
    pub lorentzian: bool,
    pub universal: bool,
}

pub fn system_doc(n: u32, m: usize) -> Result<SystemDoc> {
    let sys = CoxeterSystem::new(n, m, true)?;
    let tau = (1..=m).map(|i| sys.reflection_primal(i)).collect::<Result<_>>()?;
    Ok(SystemDoc {
        schema_version: SCHEMA_VERSION,
        n,
        m,
        gram: sys.gram().clone(),
        tau,
        t: sys.generators(),
        quadric: sys.quadric_matrix()?,
        lorentzian: sys.is_lorentzian(),
        universal: sys.is_universal(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChambersDoc {
    pub schema_version: u32,
    pub n: u32,
    pub m: usize,
    pub depth: u32,
    pub fundamental_domain: Vec<Chamber>,
    pub chambers: Vec<Chamber>,
}

pub fn chambers_doc(n: u32, m: usize, depth: u32, budget: u64) -> Result<ChambersDoc> {
    let sys = CoxeterSystem::new(n, m, true)?;
    let chambers = atlas::enumerate_chambers(&sys, depth, budget)?;
    Ok(ChambersDoc {
        schema_version: SCHEMA_VERSION,
        n,
        m,
        depth,
        fundamental_domain: atlas::fundamental_domain(&sys),
        chambers,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyDoc {
    pub schema_version: u32,
    pub n: u32,
    pub m: usize,
    #[serde(with = "rat_vec")]
    pub class: Vec<BigRational>,
    pub result: ClassificationResult,
}

/// Parses a comma-separated list of rationals.
pub fn parse_class(s: &str) -> Result<Vec<BigRational>> {
    s.split(',').map(|t| parse_rational(t.trim())).collect()
}

pub fn classify_doc(n: u32, m: usize, class: &[BigRational], max_steps: usize) -> Result<ClassifyDoc> {
    let sys = CoxeterSystem::new(n, m, true)?;
    let result = atlas::classify(&sys, class, max_steps)?;
    Ok(ClassifyDoc {
        schema_version: SCHEMA_VERSION,
        n,
        m,
        class: class.to_vec(),
        result,
    })
}

/// `λ` and `v_λ` for one pair `(i, j)`; absent for `n = 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenEntry {
    pub pair: (usize, usize),
    #[serde(with = "quad")]
    pub eigenvalue: QuadExt,
    #[serde(with = "quad_vec")]
    pub eigenvector: Vec<QuadExt>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryDoc {
    pub schema_version: u32,
    pub n: u32,
    pub m: usize,
    pub depth: u32,
    #[serde(with = "rat_matrix")]
    pub quadric: RatMatrix,
    pub eigen: Vec<EigenEntry>,
    pub patches: Vec<BoundaryPatch>,
}

pub fn boundary_doc(n: u32, m: usize, depth: u32, budget: u64) -> Result<BoundaryDoc> {
    if n == 1 {
        return Err(Error::Unsupported(
            "n = 1 (the boundary is not a union of orbits of boundary cones)".into(),
        ));
    }
    let sys = CoxeterSystem::new(n, m, true)?;
    let patches = atlas::boundary_patches(&sys, depth, budget)?;
    let mut eigen = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            if let EigenData::Hyperbolic(p) = eigen_pair(&sys, i, j)? {
                eigen.push(EigenEntry {
                    pair: (i, j),
                    eigenvalue: p.eigenvalue,
                    eigenvector: p.eigenvector,
                });
            }
        }
    }
    Ok(BoundaryDoc {
        schema_version: SCHEMA_VERSION,
        n,
        m,
        depth,
        quadric: sys.quadric_matrix()?,
        eigen,
        patches,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SymLayer {
    Movable,
    Psef,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetricDoc {
    pub schema_version: u32,
    pub layer: SymLayer,
    pub depth: u32,
    #[serde(with = "rat_matrix")]
    pub a: RatMatrix,
    #[serde(with = "rat_matrix")]
    pub b: RatMatrix,
    pub relation_holds: bool,
    #[serde(with = "int_rows")]
    pub fundamental_domain: Vec<Vec<BigInt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cones: Option<Vec<SymCone>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psef: Option<PsefData>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsefData {
    #[serde(with = "int_vec")]
    pub d1: Vec<BigInt>,
    #[serde(with = "int_vec")]
    pub d2: Vec<BigInt>,
    pub tangent_lines: Vec<TangentLine>,
    pub patches: Vec<PsefPatch>,
}

pub fn symmetric_doc(depth: u32, layer: SymLayer, budget: u64) -> Result<SymmetricDoc> {
    let (a, b) = symmetric::sym_generators();
    let (cones, psef) = match layer {
        SymLayer::Movable => (Some(symmetric::sym_enumerate(depth, budget)?), None),
        SymLayer::Psef => {
            let (d1, d2) = symmetric::d_classes();
            let tangent_lines = [[0, 0, 1], [-1, 2, 2], [2, -1, 2]]
                .iter()
                .map(|p| symmetric::tangent_line(&p.map(BigInt::from)))
                .collect::<Result<_>>()?;
            let patches = symmetric::psef_patches(depth, budget)?;
            (
                None,
                Some(PsefData {
                    d1,
                    d2,
                    tangent_lines,
                    patches,
                }),
            )
        }
    };
    Ok(SymmetricDoc {
        schema_version: SCHEMA_VERSION,
        layer,
        depth,
        a,
        b,
        relation_holds: symmetric::sym_relation_check(),
        fundamental_domain: symmetric::sym_fundamental_domain(),
        cones,
        psef,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorDoc {
    pub schema_version: u32,
    pub error: String,
    pub message: String,
    pub exit_code: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub last_iterate: Option<Vec<String>>,
}

impl ErrorDoc {
    pub fn from_error(e: &Error) -> Self {
        let last_iterate = match e {
            Error::ReductionExhausted { last, .. } => Some(last.iter().map(format_rational).collect()),
            _ => None,
        };
        ErrorDoc {
            schema_version: SCHEMA_VERSION,
            error: e.kind().into(),
            message: e.to_string(),
            exit_code: e.exit_code(),
            last_iterate,
        }
    }

    /// An error raised before any library call, such as a malformed flag.
    pub fn usage(message: impl Into<String>) -> Self {
        ErrorDoc {
            schema_version: SCHEMA_VERSION,
            error: "usage".into(),
            message: message.into(),
            exit_code: 2,
            last_iterate: None,
        }
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn roundtrip<T: Serialize + for<'de> Deserialize<'de> + PartialEq + std::fmt::Debug>(x: &T) {
        let s = to_json(x);
        let back: T = serde_json::from_str(&s).unwrap();
        assert_eq!(&back, x);
    }

    #[test]
    fn system_document() {
        let doc = system_doc(2, 3).unwrap();
        let v: serde_json::Value = serde_json::from_str(&to_json(&doc)).unwrap();
        assert_eq!(v["t"][0], serde_json::json!([["-1", "0", "0"], ["2", "1", "0"], ["2", "0", "1"]]));
        assert_eq!(v["gram"][0][1], "-1");
        assert_eq!(v["schema_version"], 1);
        roundtrip(&doc);
        assert!(system_doc(3, 3).unwrap().lorentzian);
        assert!(matches!(system_doc(1, 2), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn documents_roundtrip() {
        roundtrip(&chambers_doc(3, 3, 2, 1000).unwrap());
        roundtrip(&classify_doc(2, 3, &[rat(-1), rat(4), rat(5)], 100).unwrap());
        roundtrip(&boundary_doc(3, 3, 1, 1000).unwrap());
        roundtrip(&symmetric_doc(2, SymLayer::Movable, 1000).unwrap());
        roundtrip(&symmetric_doc(1, SymLayer::Psef, 1000).unwrap());
        roundtrip(&ErrorDoc::from_error(&Error::ZeroClass));
    }

    #[test]
    fn quadratic_scalars_are_objects() {
        let doc = boundary_doc(3, 3, 0, 100).unwrap();
        let v: serde_json::Value = serde_json::from_str(&to_json(&doc)).unwrap();
        assert_eq!(v["eigen"][0]["eigenvalue"], serde_json::json!({"a": "7/2", "b": "3/2", "d": 5}));
    }

    #[test]
    fn class_parsing() {
        assert_eq!(parse_class("1, -2/3,0").unwrap(), vec![rat(1), BigRational::new((-2).into(), 3.into()), rat(0)]);
        assert!(parse_class("1,x").is_err());
        assert!(parse_class("").is_err());
    }

    #[test]
    fn boundary_rejects_n_one() {
        assert!(matches!(boundary_doc(1, 5, 0, 10), Err(Error::Unsupported(_))));
    }
}
