//! The symmetric `n = 2, m = 3` variety with an extra involution.
//!
//! Here `Bir(X) = ⟨a, b⟩ ≅ Z/2 ∗ Z` with `a = ψ_{1,2}` acting as the
//! coordinate swap `Per_{(1 2)}` and `b = ψ_{1,3}` of infinite order. The
//! fundamental domain `Π` is the quadrilateral cone on `e₃, (-1,2,2), e₂,
//! (2,2,-1)`.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::coxeter::{CoxeterSystem, Permutation};
use crate::error::{Error, Result};
use crate::export::serde_helpers::{int_rows, int_vec};
use crate::group::{psi_matrix, FreeReport};
use crate::matrix::RatMatrix;
use crate::scalar::{primitive_from_rationals, primitive_int};

/// A syllable of a word in `Z/2 ∗ Z`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymLetter {
    A,
    /// `b^k`, `k ≠ 0`.
    B(i64),
}

/// A freely reduced word: no `a·a`, `b`-powers merged and nonzero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SymWord {
    letters: Vec<SymLetter>,
}

impl SymWord {
    pub fn empty() -> Self {
        SymWord::default()
    }

    pub fn from_letters(letters: &[SymLetter]) -> Self {
        let mut w = SymWord::empty();
        for &l in letters {
            w.push(l);
        }
        w
    }

    /// Appends a syllable, cancelling and merging at the end.
    pub fn push(&mut self, letter: SymLetter) {
        match (self.letters.last().copied(), letter) {
            (_, SymLetter::B(0)) => {}
            (Some(SymLetter::A), SymLetter::A) => {
                self.letters.pop();
            }
            (Some(SymLetter::B(k)), SymLetter::B(l)) => {
                self.letters.pop();
                if k + l != 0 {
                    self.letters.push(SymLetter::B(k + l));
                }
            }
            _ => self.letters.push(letter),
        }
    }

    pub fn letters(&self) -> &[SymLetter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of syllables.
    pub fn syllable_length(&self) -> usize {
        self.letters.len()
    }

    /// Length over the letters `a, b, b⁻¹`.
    pub fn word_length(&self) -> u64 {
        self.letters
            .iter()
            .map(|l| match l {
                SymLetter::A => 1,
                SymLetter::B(k) => k.unsigned_abs(),
            })
            .sum()
    }

    pub fn concat(&self, other: &SymWord) -> SymWord {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> SymWord {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|l| match *l {
                SymLetter::A => SymLetter::A,
                SymLetter::B(k) => SymLetter::B(-k),
            })
            .collect();
        SymWord { letters }
    }

    /// Product of the generator matrices, left to right.
    pub fn matrix(&self) -> RatMatrix {
        let (a, b) = sym_generators();
        let b_inv = b.inverse().expect("b is invertible");
        let mut out = RatMatrix::identity(3);
        for l in &self.letters {
            match *l {
                SymLetter::A => out = out.mul(&a).expect("3x3"),
                SymLetter::B(k) => {
                    let base = if k > 0 { &b } else { &b_inv };
                    out = out.mul(&base.pow(k.unsigned_abs() as u32)).expect("3x3");
                }
            }
        }
        out
    }
}

impl fmt::Display for SymWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (idx, l) in self.letters.iter().enumerate() {
            if idx > 0 {
                write!(f, "·")?;
            }
            match l {
                SymLetter::A => write!(f, "a")?,
                SymLetter::B(1) => write!(f, "b")?,
                SymLetter::B(k) => write!(f, "b^{k}")?,
            }
        }
        Ok(())
    }
}

/// The general `n = 2, m = 3` system underlying the symmetric variety.
pub fn sym_system() -> CoxeterSystem {
    CoxeterSystem::new(2, 3, true).expect("(2, 3) is in range")
}

/// `(a, b)`: the swap `Per_{(1 2)}` and `ψ*_{1,3}`.
pub fn sym_generators() -> (RatMatrix, RatMatrix) {
    let a = Permutation::transposition(3, 1, 2).expect("valid").matrix();
    let b = psi_matrix(&sym_system(), 1, 3).expect("valid pair");
    (a, b)
}

/// Whether `a·b·a` equals `ψ*_{2,3}`.
pub fn sym_relation_check() -> bool {
    let (a, b) = sym_generators();
    let aba = a.mul(&b).and_then(|x| x.mul(&a));
    match (aba, psi_matrix(&sym_system(), 2, 3)) {
        (Ok(lhs), Ok(rhs)) => lhs == rhs,
        _ => false,
    }
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn rats(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Rays of `Π` in cyclic order.
pub fn sym_fundamental_domain() -> Vec<Vec<BigInt>> {
    vec![ints(&[0, 0, 1]), ints(&[-1, 2, 2]), ints(&[0, 1, 0]), ints(&[2, 2, -1])]
}

/// Primitive image of an integer vector.
pub fn apply(g: &RatMatrix, v: &[BigInt]) -> Vec<BigInt> {
    primitive_from_rationals(&g.mul_vec(&rats(v)).expect("dimension 3"))
}

fn apply_exact(g: &RatMatrix, v: &[BigInt]) -> Vec<BigInt> {
    g.mul_vec(&rats(v))
        .expect("dimension 3")
        .into_iter()
        .map(|x| x.to_integer())
        .collect()
}

/// The line `{x : pᵀ·Q̂·x = 0}` tangent to the conic at `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangentLine {
    #[serde(with = "int_vec")]
    pub point: Vec<BigInt>,
    #[serde(with = "int_vec")]
    pub coefficients: Vec<BigInt>,
}

impl TangentLine {
    pub fn eval(&self, x: &[BigInt]) -> BigInt {
        self.coefficients.iter().zip(x).map(|(c, v)| c * v).sum()
    }
}

/// Tangent line at a point of the conic `xᵀ·Q̂·x = 0`.
pub fn tangent_line(p: &[BigInt]) -> Result<TangentLine> {
    if p.len() != 3 {
        return Err(Error::DimensionMismatch { left: 3, right: p.len() });
    }
    let q = sym_system().quadric_matrix()?;
    let pr = rats(p);
    if !q.quadratic_form(&pr)?.is_zero() {
        return Err(Error::NotIsotropic);
    }
    let coefficients = primitive_from_rationals(&q.mul_vec(&pr)?);
    Ok(TangentLine {
        point: p.to_vec(),
        coefficients,
    })
}

fn cross(u: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
    vec![
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ]
}

/// `(D₁, D₂)`: the class where the tangent lines at `e₃` and `(-1,2,2)`
/// meet, scaled to the integral class `(-2,2,6)`, and its image under `a`.
pub fn d_classes() -> (Vec<BigInt>, Vec<BigInt>) {
    let l1 = tangent_line(&ints(&[0, 0, 1])).expect("e3 is isotropic");
    let l2 = tangent_line(&ints(&[-1, 2, 2])).expect("(-1,2,2) is isotropic");
    let mut dir = primitive_int(&cross(&l1.coefficients, &l2.coefficients));
    // orient towards the positive e3 side
    if dir[2].is_negative() {
        dir = dir.into_iter().map(|x| -x).collect();
    }
    // the effective integral representative is twice the primitive class
    let d1: Vec<BigInt> = dir.into_iter().map(|x| x * 2).collect();
    let (a, _) = sym_generators();
    let d2 = apply_exact(&a, &d1);
    (d1, d2)
}

/// Freely reduced words of length `≤ depth` over `a, b, b⁻¹`, by length
/// then by letter order `a < b < b⁻¹`.
pub fn sym_words(depth: u32, budget: u64) -> Result<Vec<SymWord>> {
    let requested = sym_word_count(depth);
    if requested > budget as u128 {
        return Err(Error::BudgetExceeded { requested, budget });
    }
    let mut out = vec![SymWord::empty()];
    let mut level = vec![SymWord::empty()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for w in &level {
            let last = w.letters.last().copied();
            for letter in [SymLetter::A, SymLetter::B(1), SymLetter::B(-1)] {
                let blocked = match (last, letter) {
                    (Some(SymLetter::A), SymLetter::A) => true,
                    (Some(SymLetter::B(k)), SymLetter::B(l)) => k.signum() != l.signum(),
                    _ => false,
                };
                if !blocked {
                    let mut v = w.clone();
                    v.push(letter);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    Ok(out)
}

/// `1 + Σ_{l=1..depth} 3·2^{l-1}`.
pub fn sym_word_count(depth: u32) -> u128 {
    (0..depth).fold(1u128, |acc, l| acc.saturating_add(3u128.saturating_mul(1u128 << l.min(120))))
}

/// A translate `g·Π`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymCone {
    #[serde(with = "int_rows")]
    pub rays: Vec<Vec<BigInt>>,
    pub word: SymWord,
}

impl SymCone {
    pub fn canonical_rays(&self) -> Vec<Vec<BigInt>> {
        let mut r = self.rays.clone();
        r.sort();
        r
    }

    pub fn interior_point(&self) -> Vec<BigInt> {
        (0..3).map(|i| self.rays.iter().map(|r| &r[i]).sum()).collect()
    }

    /// Whether `p` is in the open cone, for rays in cyclic order.
    pub fn contains_interior(&self, p: &[BigInt]) -> bool {
        let k = self.rays.len();
        let signs: Vec<i32> = (0..k)
            .map(|i| {
                let c = cross(&self.rays[i], &self.rays[(i + 1) % k]);
                let d: BigInt = c.iter().zip(p).map(|(x, y)| x * y).sum();
                match d.sign() {
                    num_bigint::Sign::Plus => 1,
                    num_bigint::Sign::Minus => -1,
                    num_bigint::Sign::NoSign => 0,
                }
            })
            .collect();
        signs.iter().all(|&s| s == 1) || signs.iter().all(|&s| s == -1)
    }
}

/// Cones `g·Π` for every reduced word of length `≤ depth`, deduplicated by
/// sorted rays.
pub fn sym_enumerate(depth: u32, budget: u64) -> Result<Vec<SymCone>> {
    let pi = sym_fundamental_domain();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for word in sym_words(depth, budget)? {
        let g = word.matrix();
        let cone = SymCone {
            rays: pi.iter().map(|r| apply(&g, r)).collect(),
            word,
        };
        if seen.insert(cone.canonical_rays()) {
            out.push(cone);
        }
    }
    Ok(out)
}

/// Whether no cone contains the interior sample point of another.
pub fn interiors_disjoint(cones: &[SymCone]) -> bool {
    let samples: Vec<Vec<BigInt>> = cones.iter().map(SymCone::interior_point).collect();
    cones.iter().enumerate().all(|(i, c)| {
        samples
            .iter()
            .enumerate()
            .all(|(j, p)| i == j || !c.contains_interior(p))
    })
}

/// Distinct words of length `≤ depth` with equal matrices, or equal to the
/// identity.
pub fn sym_free_check(depth: u32, budget: u64) -> Result<FreeReport> {
    let words = sym_words(depth, budget)?;
    let mut seen = HashSet::new();
    let mut collisions = 0;
    for w in &words {
        let m = w.matrix();
        if (!w.is_empty() && m.is_identity()) || !seen.insert(m) {
            collisions += 1;
        }
    }
    Ok(FreeReport {
        words_checked: words.len() as u64,
        collisions,
    })
}

/// Whether the segments proved to lie on the pseudoeffective boundary, or
/// the conjectural cones filling in the picture.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PsefLayer {
    Proven,
    Expected,
}

/// A boundary segment or glued cone of the pseudoeffective picture.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsefPatch {
    pub layer: PsefLayer,
    #[serde(with = "int_rows")]
    pub vertices: Vec<Vec<BigInt>>,
    pub word: SymWord,
}

/// For each word `g`: the proven segments `g·[D₁,D₂]`, `g·[D₁,(-1,2,2)]`,
/// `g·[D₂,(2,-1,2)]`, and the expected cones `g·⟨D₁,e₃,(-1,2,2)⟩`,
/// `g·⟨D₂,e₃,(2,-1,2)⟩` glued to the conic along its tangent lines.
pub fn psef_patches(depth: u32, budget: u64) -> Result<Vec<PsefPatch>> {
    let (d1, d2) = d_classes();
    let e3 = ints(&[0, 0, 1]);
    let p1 = ints(&[-1, 2, 2]);
    let p2 = ints(&[2, -1, 2]);
    let shapes = [
        (PsefLayer::Proven, vec![d1.clone(), d2.clone()]),
        (PsefLayer::Proven, vec![d1.clone(), p1.clone()]),
        (PsefLayer::Proven, vec![d2.clone(), p2.clone()]),
        (PsefLayer::Expected, vec![d1, e3.clone(), p1]),
        (PsefLayer::Expected, vec![d2, e3, p2]),
    ];
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for word in sym_words(depth, budget)? {
        let g = word.matrix();
        for (layer, verts) in &shapes {
            let vertices: Vec<Vec<BigInt>> = verts.iter().map(|v| apply_exact(&g, v)).collect();
            let mut key = vertices.clone();
            key.sort();
            if seen.insert((*layer, key)) {
                out.push(PsefPatch {
                    layer: *layer,
                    vertices,
                    word: word.clone(),
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn generators() {
        let (a, b) = sym_generators();
        assert_eq!(a, RatMatrix::from_int_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]).unwrap());
        assert_eq!(
            b,
            RatMatrix::from_int_rows(&[vec![-2, 0, -3], vec![6, 1, 12], vec![3, 0, 4]]).unwrap()
        );
        assert!(a.mul(&a).unwrap().is_identity());
        assert!(sym_relation_check());
        assert_ne!(a.mul(&b).unwrap().mul(&a).unwrap(), b);
        let ab = a.mul(&b).unwrap();
        for k in 1..=12 {
            assert!(!ab.pow(k).is_identity());
        }
    }

    #[test]
    fn generators_preserve_quadric() {
        let q = sym_system().quadric_matrix().unwrap();
        let (a, b) = sym_generators();
        for g in [a, b] {
            assert_eq!(g.transpose().mul(&q).unwrap().mul(&g).unwrap(), q);
        }
    }

    #[test]
    fn word_reduction() {
        let w = SymWord::from_letters(&[SymLetter::B(2), SymLetter::B(-2), SymLetter::A, SymLetter::A]);
        assert!(w.is_empty());
        let w = SymWord::from_letters(&[SymLetter::A, SymLetter::B(1), SymLetter::B(2)]);
        assert_eq!(w.letters(), &[SymLetter::A, SymLetter::B(3)]);
        assert_eq!(w.word_length(), 4);
        assert_eq!(w.to_string(), "a·b^3");
        assert!(w.concat(&w.inverse()).is_empty());
        assert!(w.matrix().mul(&w.inverse().matrix()).unwrap().is_identity());
    }

    #[test]
    fn tangent_lines_and_d_classes() {
        assert_eq!(tangent_line(&ints(&[0, 0, 1])).unwrap().coefficients, ints(&[1, 1, 0]));
        assert_eq!(tangent_line(&ints(&[-1, 2, 2])).unwrap().coefficients, ints(&[4, 1, 1]));
        assert_eq!(tangent_line(&ints(&[1, 1, 1])), Err(Error::NotIsotropic));
        let (d1, d2) = d_classes();
        assert_eq!(d1, ints(&[-2, 2, 6]));
        assert_eq!(d2, ints(&[2, -2, 6]));
        for p in [ints(&[0, 0, 1]), ints(&[-1, 2, 2])] {
            assert!(tangent_line(&p).unwrap().eval(&d1).is_zero());
        }
        for p in [ints(&[0, 0, 1]), ints(&[2, -1, 2])] {
            assert!(tangent_line(&p).unwrap().eval(&d2).is_zero());
        }
    }

    #[test]
    fn d1_lies_outside_the_quadric_cone() {
        let q = sym_system().quadric_matrix().unwrap();
        let (d1, _) = d_classes();
        let inside = q.quadratic_form(&[rat(1), rat(1), rat(1)]).unwrap();
        let outside = q.quadratic_form(&rats(&d1)).unwrap();
        assert!(inside.is_positive());
        assert_eq!(outside, rat(-8));
    }

    #[test]
    fn enumeration() {
        assert_eq!(sym_enumerate(0, 100).unwrap().len(), 1);
        let d1 = sym_enumerate(1, 100).unwrap();
        assert_eq!(d1.len(), 4);
        assert_eq!(d1[1].word.letters(), &[SymLetter::A]);
        assert_eq!(
            d1[1].rays,
            vec![ints(&[0, 0, 1]), ints(&[2, -1, 2]), ints(&[1, 0, 0]), ints(&[2, 2, -1])]
        );
        assert_eq!(sym_words(4, 100).unwrap().len(), 46);
        assert!(sym_words(30, 100).is_err());
        for depth in 0..=4 {
            assert!(interiors_disjoint(&sym_enumerate(depth, 1000).unwrap()));
        }
    }

    #[test]
    fn pi_and_a_pi_form_the_hexagon() {
        let (a, _) = sym_generators();
        let pi = sym_fundamental_domain();
        let mut union: Vec<Vec<BigInt>> = pi.iter().chain(pi.iter().map(|r| apply(&a, r)).collect::<Vec<_>>().iter()).cloned().collect();
        union.sort();
        union.dedup();
        let mut hexagon = vec![
            ints(&[0, 0, 1]),
            ints(&[-1, 2, 2]),
            ints(&[0, 1, 0]),
            ints(&[2, 2, -1]),
            ints(&[1, 0, 0]),
            ints(&[2, -1, 2]),
        ];
        hexagon.sort();
        assert_eq!(union, hexagon);
    }

    #[test]
    fn free_product_has_no_collisions() {
        let r = sym_free_check(6, 1000).unwrap();
        assert_eq!(r.words_checked, 190);
        assert_eq!(r.collisions, 0);
    }

    #[test]
    fn psef_depth_zero() {
        let p = psef_patches(0, 10).unwrap();
        assert_eq!(p.len(), 5);
        assert_eq!(p[0].layer, PsefLayer::Proven);
        assert_eq!(p[0].vertices, vec![ints(&[-2, 2, 6]), ints(&[2, -2, 6])]);
        assert_eq!(p.iter().filter(|x| x.layer == PsefLayer::Proven).count(), 3);
    }

    #[test]
    fn tangency_is_preserved_by_the_group() {
        let q = sym_system().quadric_matrix().unwrap();
        let (d1, _) = d_classes();
        let p = rats(&ints(&[-1, 2, 2]));
        for w in sym_words(3, 100).unwrap() {
            let g = w.matrix();
            let gp = g.mul_vec(&p).unwrap();
            let gd = g.mul_vec(&rats(&d1)).unwrap();
            assert!(q.bilinear_form(&gp, &gd).unwrap().is_zero());
            assert!(q.quadratic_form(&gd).unwrap().is_negative());
        }
    }
}
