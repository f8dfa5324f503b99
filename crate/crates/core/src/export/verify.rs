//! Property suites behind `movcone verify`.

use serde::{Deserialize, Serialize};

use crate::atlas;
use crate::coxeter::{swap_lemma_check, CoxeterSystem, Permutation};
use crate::error::Result;
use crate::export::json::SCHEMA_VERSION;
use crate::group::{self, psi_matrix};
use crate::matrix::{poly_mul, RatMatrix};
use crate::scalar::rat;
use crate::symmetric;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Identities,
    Free,
    Tiling,
    Boundary,
    Symmetric,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub statement: String,
    pub params: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
}

/// Restricts the default grid to one `(n, m)` point.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GridFilter {
    pub n: Option<u32>,
    pub m: Option<usize>,
}

impl GridFilter {
    fn points(&self, ns: &[u32], ms: &[usize]) -> Vec<(u32, usize)> {
        let ns: Vec<u32> = self.n.map_or_else(|| ns.to_vec(), |n| vec![n]);
        let ms: Vec<usize> = self.m.map_or_else(|| ms.to_vec(), |m| vec![m]);
        ns.iter().flat_map(|&n| ms.iter().map(move |&m| (n, m))).collect()
    }
}

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn record(&mut self, name: &str, statement: &str, params: String, outcome: Result<bool>) {
        let (passed, detail) = match outcome {
            Ok(p) => (p, None),
            Err(e) => (false, Some(e.to_string())),
        };
        self.checks.push(Check {
            name: name.into(),
            statement: statement.into(),
            params,
            passed,
            detail,
        });
    }
}

const GRID_N: [u32; 4] = [1, 2, 3, 4];
const GRID_M: [usize; 4] = [2, 3, 4, 5];

pub fn run(suite: Suite, filter: GridFilter, budget: u64) -> VerifyReport {
    let mut rec = Recorder { checks: Vec::new() };
    let all = suite == Suite::All;
    if all || suite == Suite::Identities {
        identities(&mut rec, filter);
    }
    if all || suite == Suite::Free {
        free(&mut rec, filter, budget);
    }
    if all || suite == Suite::Tiling {
        tiling(&mut rec, filter, budget);
    }
    if all || suite == Suite::Boundary {
        boundary(&mut rec, filter, budget);
    }
    if all || suite == Suite::Symmetric {
        symmetric_checks(&mut rec);
    }
    VerifyReport {
        schema_version: SCHEMA_VERSION,
        suite,
        passed: rec.checks.iter().all(|c| c.passed),
        checks: rec.checks,
    }
}

fn family(n: u32, m: usize) -> Result<CoxeterSystem> {
    CoxeterSystem::new(n, m, false)
}

fn identities(rec: &mut Recorder, filter: GridFilter) {
    for (n, m) in filter.points(&GRID_N, &GRID_M) {
        let params = format!("n={n} m={m}");
        let sys = match family(n, m) {
            Ok(s) => s,
            Err(e) => {
                rec.record("system", "system builds", params, Err(e));
                continue;
            }
        };
        rec.record(
            "involutions",
            "t_i² = I",
            params.clone(),
            Ok(sys.generators().iter().all(|t| t.mul(t).map(|p| p.is_identity()).unwrap_or(false))),
        );
        rec.record(
            "swap_lemma",
            "Per_σ·t_i = t_σ(i)·Per_σ for all σ, i",
            params.clone(),
            (|| {
                for sigma in Permutation::all(m) {
                    for i in 1..=m {
                        if !swap_lemma_check(&sys, &sigma, i)? {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            })(),
        );
        rec.record(
            "char_poly",
            "char(t_i t_j) = (x-1)^(m-2)·(x² - (n²-2)x + 1)",
            params.clone(),
            char_poly_check(&sys, n),
        );
        rec.record("gram_eigen", "Gram eigen-data", params.clone(), Ok(sys.gram_eigen_check()));
        if n >= 2 && 2 - (n as i64) * (m as i64 - 1) < 0 {
            rec.record(
                "lorentzian",
                "signature(Q) = (m-1, 1, 0)",
                params.clone(),
                sys.gram().signature().map(|s| s == (m - 1, 1, 0)),
            );
        }
        if let Ok(q) = sys.quadric_matrix() {
            rec.record(
                "quadric_invariance",
                "gᵀ·Q̂·g = Q̂ for t_i, Per_σ, ψ*_{i,j}",
                params.clone(),
                quadric_invariance(&sys, &q),
            );
        }
    }
}

fn char_poly_check(sys: &CoxeterSystem, n: u32) -> Result<bool> {
    let m = sys.rank();
    let n = n as i64;
    let mut expected = vec![rat(1), rat(-(n * n - 2)), rat(1)];
    for _ in 0..m - 2 {
        expected = poly_mul(&expected, &[rat(-1), rat(1)]);
    }
    let gens = sys.generators();
    for i in 0..m {
        for j in 0..m {
            if i != j && gens[i].mul(&gens[j])?.char_poly() != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn preserves(g: &RatMatrix, q: &RatMatrix) -> Result<bool> {
    Ok(&g.transpose().mul(q)?.mul(g)? == q)
}

fn quadric_invariance(sys: &CoxeterSystem, q: &RatMatrix) -> Result<bool> {
    let m = sys.rank();
    for t in sys.generators() {
        if !preserves(&t, q)? {
            return Ok(false);
        }
    }
    for sigma in Permutation::all(m) {
        if !preserves(&sigma.matrix(), q)? {
            return Ok(false);
        }
    }
    for i in 1..=m {
        for j in 1..=m {
            if i != j && !preserves(&psi_matrix(sys, i, j)?, q)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn free(rec: &mut Recorder, filter: GridFilter, budget: u64) {
    let points = if filter.n.is_some() || filter.m.is_some() {
        filter.points(&[2, 3], &[3, 4])
    } else {
        vec![(2, 3), (3, 3), (2, 4), (3, 4)]
    };
    for (n, m) in points {
        let depth = if m == 3 { 4 } else { 3 };
        let params = format!("n={n} m={m} depth={depth}");
        let outcome = family(n, m).and_then(|sys| group::verify_free(&sys, depth, budget));
        let detail = outcome
            .as_ref()
            .ok()
            .map(|r| format!("{} words, {} collisions", r.words_checked, r.collisions));
        rec.record(
            "free_product",
            "distinct reduced ψ-words have distinct normal forms",
            params,
            outcome.map(|r| r.collisions == 0),
        );
        if let Some(d) = detail {
            rec.checks.last_mut().expect("just recorded").detail = Some(d);
        }
    }
}

fn tiling(rec: &mut Recorder, filter: GridFilter, budget: u64) {
    let points = if filter.n.is_some() || filter.m.is_some() {
        filter.points(&[2, 3], &[3])
    } else {
        vec![(2, 3), (3, 3), (2, 4)]
    };
    for (n, m) in points {
        let depth = if m == 3 { 5 } else { 3 };
        let params = format!("n={n} m={m} depth={depth}");
        let chambers = family(n, m).and_then(|sys| Ok((atlas::enumerate_chambers(&sys, depth, budget)?, sys)));
        let (chambers, sys) = match chambers {
            Ok(x) => x,
            Err(e) => {
                rec.record("tiling", "chamber interiors are disjoint", params, Err(e));
                continue;
            }
        };
        rec.record(
            "tiling",
            "an interior point of w·D classifies to w",
            params.clone(),
            (|| {
                for ch in &chambers {
                    let r = atlas::classify(&sys, &ch.interior_point(), atlas::DEFAULT_MAX_STEPS)?;
                    if r.t_word != ch.word {
                        return Ok(false);
                    }
                }
                Ok(true)
            })(),
        );
        let index: std::collections::HashMap<_, _> = chambers.iter().map(|c| (c.word.clone(), c)).collect();
        rec.record(
            "adjacency",
            "w·D and w·t_k·D share m-1 rays",
            params,
            Ok(chambers.iter().filter(|c| !c.word.is_empty()).all(|c| {
                let parent = group::TWord(c.word.0[..c.word.len() - 1].to_vec());
                index[&parent].shared_rays(c) == m - 1
            })),
        );
    }
}

fn boundary(rec: &mut Recorder, filter: GridFilter, budget: u64) {
    let points = filter.points(&[2, 3, 4], &[3, 4]);
    for (n, m) in points {
        let depth = 2;
        let params = format!("n={n} m={m} depth={depth}");
        let outcome = family(n, m).and_then(|sys| {
            let patches = atlas::boundary_patches(&sys, depth, budget)?;
            for p in &patches {
                if p.base_rays.len() != m - 2 {
                    return Ok(false);
                }
                if !num_traits::Zero::is_zero(&atlas::isotropy_value(&sys, &p.apex)?) {
                    return Ok(false);
                }
                if (n == 2) == p.has_apex() {
                    return Ok(false);
                }
            }
            Ok(true)
        });
        rec.record(
            "boundary_isotropy",
            "every apex is isotropic for Q̂; apex vanishes exactly when n = 2",
            params,
            outcome,
        );
    }
}

fn symmetric_checks(rec: &mut Recorder) {
    let params = String::from("n=2 m=3");
    let (a, b) = symmetric::sym_generators();
    rec.record("sym_involution", "a² = I", params.clone(), a.mul(&a).map(|x| x.is_identity()));
    rec.record(
        "sym_relation",
        "a·b·a = ψ*_{2,3}",
        params.clone(),
        Ok(symmetric::sym_relation_check()),
    );
    let q = symmetric::sym_system().quadric_matrix();
    rec.record(
        "sym_quadric",
        "a and b preserve Q̂",
        params.clone(),
        q.and_then(|q| Ok(preserves(&a, &q)? && preserves(&b, &q)?)),
    );
    let (d1, d2) = symmetric::d_classes();
    rec.record(
        "sym_d_classes",
        "D₁ = (-2,2,6), D₂ = (2,-2,6)",
        params.clone(),
        Ok(d1 == [-2, 2, 6].map(Into::into) && d2 == [2, -2, 6].map(Into::into)),
    );
    rec.record(
        "sym_tangency",
        "D₁ on the tangents at e₃, (-1,2,2); D₂ on the tangents at e₃, (2,-1,2)",
        params.clone(),
        (|| {
            let pairs = [([0, 0, 1], &d1), ([-1, 2, 2], &d1), ([0, 0, 1], &d2), ([2, -1, 2], &d2)];
            for (p, d) in pairs {
                if !num_traits::Zero::is_zero(&symmetric::tangent_line(&p.map(Into::into))?.eval(d)) {
                    return Ok(false);
                }
            }
            Ok(true)
        })(),
    );
    rec.record(
        "sym_hexagon",
        "Π ∪ a·Π has the rays of the general fundamental domain",
        params.clone(),
        Ok({
            let pi = symmetric::sym_fundamental_domain();
            let mut union: Vec<_> = pi.iter().cloned().chain(pi.iter().map(|r| symmetric::apply(&a, r))).collect();
            union.sort();
            union.dedup();
            let mut hex: Vec<_> = atlas::fundamental_domain(&symmetric::sym_system())
                .into_iter()
                .flat_map(|c| c.rays)
                .collect();
            hex.sort();
            hex.dedup();
            union == hex
        }),
    );
    rec.record(
        "sym_free",
        "no collisions among reduced words in Z/2 ∗ Z",
        format!("{params} depth=6"),
        symmetric::sym_free_check(6, u64::MAX).map(|r| r.collisions == 0),
    );
    rec.record(
        "sym_disjoint",
        "translates of Π have disjoint interiors",
        format!("{params} depth=4"),
        symmetric::sym_enumerate(4, u64::MAX).map(|c| symmetric::interiors_disjoint(&c)),
    );
}
