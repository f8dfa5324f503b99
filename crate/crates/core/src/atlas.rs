//! Chamber geometry of the movable cone.
//!
//! Divisor classes are coordinate vectors in the basis `H_1, …, H_m`; the
//! nef cone is the positive orthant `D`. Chambers of the Tits cone are the
//! images `w·D` for reduced `t`-words `w`, and the fundamental domain `Π` of
//! `Bir(X)` is `D` together with the `m` chambers `t_i·D`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::coxeter::{is_zero_vec, CoxeterSystem, Permutation};
use crate::error::{Error, Result};
use crate::export::serde_helpers::{int_rows, quad_vec, rat_vec};
use crate::group::{eigen_pair, flop_pullback, psi_from_t, t_normal_form, EigenData, GroupElementNF, PsiWord, TWord};
use crate::matrix::{Matrix, RatMatrix};
use crate::scalar::{primitive_from_rationals, primitive_quad, Field, QuadExt};

/// Default cap on reduction steps in [`classify`].
pub const DEFAULT_MAX_STEPS: usize = 1000;

/// A cone `w·D`: its `m` primitive integer rays (the columns of `w`, in
/// generator order) and the reduced word producing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chamber {
    #[serde(with = "int_rows")]
    pub rays: Vec<Vec<BigInt>>,
    pub word: TWord,
    /// Index `k` of the marked minimal model whose nef cone this chamber is,
    /// up to the `Bir(X)` translation.
    pub model_hint: Option<usize>,
}

impl Chamber {
    fn from_matrix(word: TWord, m: &RatMatrix, model_hint: Option<usize>) -> Self {
        let rays = (0..m.dim())
            .map(|c| primitive_from_rationals(&m.column(c)))
            .collect();
        Chamber {
            rays,
            word,
            model_hint,
        }
    }

    /// Rays in sorted order; identifies the cone independent of the word.
    pub fn canonical_rays(&self) -> Vec<Vec<BigInt>> {
        let mut r = self.rays.clone();
        r.sort();
        r
    }

    /// Rays as rational vectors.
    pub fn ray_matrix(&self) -> RatMatrix {
        let m = self.rays.len();
        RatMatrix::from_fn(m, |r, c| BigRational::from_integer(self.rays[c][r].clone()))
    }

    /// Sum of the rays, an interior point.
    pub fn interior_point(&self) -> Vec<BigRational> {
        let m = self.rays.len();
        (0..m)
            .map(|r| BigRational::from_integer(self.rays.iter().map(|ray| &ray[r]).sum()))
            .collect()
    }

    /// Number of rays shared with another chamber.
    pub fn shared_rays(&self, other: &Chamber) -> usize {
        let mine: HashSet<&Vec<BigInt>> = self.rays.iter().collect();
        other.rays.iter().filter(|r| mine.contains(r)).count()
    }
}

/// One translate `w·C_{i,j}` of a boundary cone
/// `{a·v_λ + Σ_{k≠i,j} a_k·H_k : a ≥ 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryPatch {
    /// `w·v_λ`, or all zeros when `n = 2`.
    #[serde(with = "quad_vec")]
    pub apex: Vec<QuadExt>,
    #[serde(with = "int_rows")]
    pub base_rays: Vec<Vec<BigInt>>,
    pub word: TWord,
    pub pair: (usize, usize),
}

impl BoundaryPatch {
    fn key(&self) -> (Vec<Vec<BigInt>>, Vec<QuadExt>) {
        let mut rays = self.base_rays.clone();
        rays.sort();
        (rays, self.apex.clone())
    }

    pub fn has_apex(&self) -> bool {
        self.apex.iter().any(|x| !Zero::is_zero(x))
    }
}

/// Result of reducing a divisor class into the fundamental domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationResult {
    /// Reduced word `w` with `w⁻¹·d ∈ D`.
    pub t_word: TWord,
    /// `g ∈ Bir(X)` with `d ∈ g·Π`.
    pub psi_word: PsiWord,
    /// The marked minimal model `X_k` whose pulled-back nef cone contains
    /// `g⁻¹·d`.
    pub model_index: usize,
    /// Coordinates on `Nef(X_k)` in the basis `B_k`:
    /// `d = ψ(g) · φ*_{0,k} · nef_coords`.
    #[serde(with = "rat_vec")]
    pub nef_coords: Vec<BigRational>,
    /// Coordinates of `w⁻¹·d` in `D`: `d = w · chamber_coords`.
    #[serde(with = "rat_vec")]
    pub chamber_coords: Vec<BigRational>,
}

impl ClassificationResult {
    /// `ψ(g) · φ*_{0,k} · nef_coords`.
    pub fn reconstruct(&self, sys: &CoxeterSystem) -> Result<Vec<BigRational>> {
        let marking = if self.model_index == 0 {
            RatMatrix::identity(sys.rank())
        } else {
            flop_pullback(sys, 0, self.model_index)?
        };
        self.psi_word
            .matrix(sys)?
            .mul(&marking)?
            .mul_vec(&self.nef_coords)
    }

    /// `w · chamber_coords`.
    pub fn reconstruct_via_t(&self, sys: &CoxeterSystem) -> Result<Vec<BigRational>> {
        self.t_word.matrix(sys)?.mul_vec(&self.chamber_coords)
    }
}

/// `Π`: the nef cone followed by the chambers `t_i·D`, `i = 1..m`.
pub fn fundamental_domain(sys: &CoxeterSystem) -> Vec<Chamber> {
    let m = sys.rank();
    let mut out = vec![Chamber::from_matrix(TWord::empty(), &RatMatrix::identity(m), Some(0))];
    for (i, t) in sys.generators().iter().enumerate() {
        out.push(Chamber::from_matrix(TWord(vec![i + 1]), t, Some(i + 1)));
    }
    out
}

/// Number of reduced words of length `≤ depth` in `m` involutions.
pub fn chamber_count(m: usize, depth: u32) -> u128 {
    1 + crate::group::reduced_word_count(m as u64, depth)
}

/// Reduced `t`-words of length `≤ depth`, by length then lexicographically.
pub fn enumerate_t_words(m: usize, depth: u32, budget: u64) -> Result<Vec<TWord>> {
    let requested = chamber_count(m, depth);
    if requested > budget as u128 {
        return Err(Error::BudgetExceeded { requested, budget });
    }
    let mut out = vec![TWord::empty()];
    let mut level = vec![TWord::empty()];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(level.len() * m.saturating_sub(1).max(1));
        for w in &level {
            for k in 1..=m {
                if w.0.last() != Some(&k) {
                    let mut v = w.0.clone();
                    v.push(k);
                    next.push(TWord(v));
                }
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    Ok(out)
}

fn model_of(sys: &CoxeterSystem, w: &TWord) -> Result<(PsiWord, GroupElementNF)> {
    let g = psi_from_t(sys, w)?;
    let residual = t_normal_form(sys, &g)?
        .inverse()
        .mul(&GroupElementNF::from_t_word(sys.rank(), w));
    Ok((g, residual))
}

/// One chamber per reduced word of length `≤ depth`.
pub fn enumerate_chambers(sys: &CoxeterSystem, depth: u32, budget: u64) -> Result<Vec<Chamber>> {
    sys.require_universal()?;
    let m = sys.rank();
    let words = enumerate_t_words(m, depth, budget)?;
    let gens = sys.generators();
    // matrices are built incrementally: each word extends its parent by one letter
    let mut mats: std::collections::HashMap<TWord, RatMatrix> = std::collections::HashMap::new();
    mats.insert(TWord::empty(), RatMatrix::identity(m));
    let mut out = Vec::with_capacity(words.len());
    for w in words {
        let mat = match w.0.split_last() {
            None => RatMatrix::identity(m),
            Some((&last, prefix)) => {
                let parent = &mats[&TWord(prefix.to_vec())];
                parent.mul(&gens[last - 1])?
            }
        };
        let (_, residual) = model_of(sys, &w)?;
        let model = residual.t_word.0.first().copied().unwrap_or(0);
        out.push(Chamber::from_matrix(w.clone(), &mat, Some(model)));
        mats.insert(w, mat);
    }
    Ok(out)
}

/// Walks `d` into `D` by reflecting in the most negative coordinate (lowest
/// index on ties), then locates the result in the fundamental domain.
pub fn classify(sys: &CoxeterSystem, d: &[BigRational], max_steps: usize) -> Result<ClassificationResult> {
    sys.require_universal()?;
    let m = sys.rank();
    if d.len() != m {
        return Err(Error::DimensionMismatch { left: m, right: d.len() });
    }
    if is_zero_vec(d) {
        return Err(Error::ZeroClass);
    }
    let gens = sys.generators();
    let mut cur = d.to_vec();
    let mut letters = Vec::new();
    loop {
        let pivot = cur
            .iter()
            .enumerate()
            .filter(|(_, x)| x.is_negative())
            .min_by(|(ia, a), (ib, b)| a.cmp(b).then(ia.cmp(ib)))
            .map(|(i, _)| i);
        let Some(i) = pivot else { break };
        if letters.len() == max_steps {
            return Err(Error::ReductionExhausted { steps: max_steps, last: cur });
        }
        cur = gens[i].mul_vec(&cur)?;
        letters.push(i + 1);
    }
    let t_word = TWord(letters).reduced();
    let (psi_word, residual) = model_of(sys, &t_word)?;
    let model_index = residual.t_word.0.first().copied().unwrap_or(0);
    // residual = t_k·Per_σ (or Per_σ) and φ*_{0,k} = t_k·Per_τ, so the
    // coordinates on the marked model are Per_τ⁻¹·Per_σ·chamber_coords
    let tau = if model_index == 0 {
        Permutation::identity(m)
    } else {
        Permutation::cycle(m, &(1..=model_index).collect::<Vec<_>>())?.inverse()
    };
    let nef_coords = tau
        .inverse()
        .compose(&residual.perm)
        .matrix()
        .mul_vec(&cur)?;
    Ok(ClassificationResult {
        t_word,
        psi_word,
        model_index,
        nef_coords,
        chamber_coords: cur,
    })
}

/// Translates of the boundary cones by all reduced words of length
/// `≤ depth`, deduplicated by (sorted base rays, apex); the first (shortest,
/// then lexicographic) word is kept.
pub fn boundary_patches(sys: &CoxeterSystem, depth: u32, budget: u64) -> Result<Vec<BoundaryPatch>> {
    sys.require_universal()?;
    let m = sys.rank();
    let words = enumerate_t_words(m, depth, budget)?;
    let mut apexes = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            let apex = match eigen_pair(sys, i, j)? {
                EigenData::Hyperbolic(p) => p.eigenvector,
                EigenData::Unipotent => vec![QuadExt::zero(); m],
                EigenData::FiniteOrder => {
                    return Err(Error::Unsupported("boundary is not of this form for n = 1".into()))
                }
            };
            apexes.push(((i, j), apex));
        }
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for w in &words {
        let mat = w.matrix(sys)?;
        let lifted: Matrix<QuadExt> = Matrix::from_fn(m, |r, c| QuadExt::from_rational(mat.get(r, c)));
        for ((i, j), apex) in &apexes {
            let moved = primitive_quad(&lifted.mul_vec(apex)?);
            let base_rays = (1..=m)
                .filter(|k| k != i && k != j)
                .map(|k| primitive_from_rationals(&mat.column(k - 1)))
                .collect();
            let patch = BoundaryPatch {
                apex: moved,
                base_rays,
                word: w.clone(),
                pair: (*i, *j),
            };
            if seen.insert(patch.key()) {
                out.push(patch);
            }
        }
    }
    Ok(out)
}

/// Point of the affine chart `{Σ v_i = 1}` on the ray through `v`.
pub fn project_affine<T: Field>(v: &[T]) -> Result<Vec<T>> {
    let sum = v.iter().fold(T::zero(), |acc, x| acc + x.clone());
    let inv = sum.inv().ok_or(Error::AtInfinity)?;
    Ok(v.iter().map(|x| x.clone() * inv.clone()).collect())
}

/// `vᵀ·Q̂·v` for the normalized quadric matrix `Q̂`.
pub fn isotropy_value<T: Field>(sys: &CoxeterSystem, v: &[T]) -> Result<T> {
    let q = sys.quadric_matrix()?;
    let lifted: Matrix<T> = Matrix::from_fn(q.dim(), |r, c| T::from_rational(q.get(r, c)));
    lifted.quadratic_form(v)
}

/// Coordinates as integers, when they all are.
pub fn integral(v: &[BigRational]) -> Option<Vec<BigInt>> {
    v.iter().all(|x| x.is_integer()).then(|| v.iter().map(|x| x.to_integer()).collect())
}
