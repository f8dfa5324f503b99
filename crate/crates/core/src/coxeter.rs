//! The Coxeter system attached to a product of `m` copies of `Pⁿ`.
//!
//! Generators are indexed `1..=m` everywhere in the public API. The Gram
//! matrix has unit diagonal and `-n/2` off the diagonal; the primal
//! reflections act on the root basis and the dual generators `t_i` (their
//! transposes) act on divisor classes in the basis `H_1, …, H_m`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::scalar::{frac, rat};

/// Coxeter system `(W, S)_Q` with explicit Gram matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CoxeterSystem {
    n: Option<u32>,
    m: usize,
    gram: RatMatrix,
    lorentzian: bool,
}

impl CoxeterSystem {
    /// The system for `m` factors of `Pⁿ`. With `enforce_range` the
    /// dimension condition `n·m - (n+1) ≥ 3` is checked as well.
    pub fn new(n: u32, m: usize, enforce_range: bool) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameters(format!("n must be >= 1, got {n}")));
        }
        if m < 2 {
            return Err(Error::InvalidParameters(format!("m must be >= 2, got {m}")));
        }
        if enforce_range && (n as i64) * (m as i64) - (n as i64 + 1) < 3 {
            return Err(Error::InvalidParameters(format!(
                "n*m - (n+1) must be >= 3, got {} for n = {n}, m = {m}",
                (n as i64) * (m as i64) - (n as i64 + 1)
            )));
        }
        let off = frac(-(n as i64), 2);
        let gram = RatMatrix::from_fn(m, |r, c| if r == c { rat(1) } else { off.clone() });
        let mut sys = Self::from_gram(gram)?;
        sys.n = Some(n);
        Ok(sys)
    }

    /// Low-level constructor from an arbitrary symmetric Gram matrix with
    /// unit diagonal.
    pub fn from_gram(gram: RatMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let m = gram.dim();
        if (0..m).any(|i| !gram.get(i, i).is_one()) {
            return Err(Error::InvalidParameters("Gram matrix must have unit diagonal".into()));
        }
        let sig = gram.signature()?;
        Ok(CoxeterSystem {
            n: None,
            m,
            lorentzian: sig == (m - 1, 1, 0),
            gram,
        })
    }

    /// `n`, when the system belongs to the `(n, m)` family.
    pub fn n(&self) -> Option<u32> {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.m
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn is_lorentzian(&self) -> bool {
        self.lorentzian
    }

    /// True when every pair of generators generates an infinite dihedral
    /// group (all off-diagonal Gram entries `≤ -1`), so that `W` is the
    /// universal Coxeter group and words reduce freely.
    pub fn is_universal(&self) -> bool {
        let minus_one = rat(-1);
        (0..self.m).all(|r| (0..self.m).all(|c| r == c || *self.gram.get(r, c) <= minus_one))
    }

    pub(crate) fn require_universal(&self) -> Result<()> {
        if self.is_universal() {
            Ok(())
        } else {
            Err(Error::Unsupported(match self.n {
                Some(n) => format!("n = {n}"),
                None => "Gram matrix with finite m_ij".into(),
            }))
        }
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.m {
            Err(Error::IndexOutOfRange { index: i, max: self.m })
        } else {
            Ok(())
        }
    }

    /// Matrix of `τ_i(w) = w - 2·Q(w, α_i)·α_i` in the root basis.
    pub fn reflection_primal(&self, i: usize) -> Result<RatMatrix> {
        self.check_index(i)?;
        let k = i - 1;
        let two = rat(2);
        Ok(RatMatrix::from_fn(self.m, |r, c| {
            let delta = if r == c { rat(1) } else { rat(0) };
            if r == k {
                delta - &two * self.gram.get(c, k)
            } else {
                delta
            }
        }))
    }

    /// The dual generator `t_i = τ_iᵀ`.
    pub fn reflection_dual(&self, i: usize) -> Result<RatMatrix> {
        Ok(self.reflection_primal(i)?.transpose())
    }

    /// All dual generators `t_1, …, t_m`.
    pub fn generators(&self) -> Vec<RatMatrix> {
        (1..=self.m)
            .map(|i| self.reflection_dual(i).expect("index in range"))
            .collect()
    }

    /// Primitive integer rescaling of `Q⁻¹`, oriented to be positive on the
    /// all-ones class (an interior point of the nef cone).
    pub fn quadric_matrix(&self) -> Result<RatMatrix> {
        let inv = self.gram.inverse()?;
        let prim = inv.primitive();
        let ones = vec![rat(1); self.m];
        let val = prim.quadratic_form(&ones)?;
        Ok(if val.is_negative() {
            prim.scale(&rat(-1))
        } else {
            prim
        })
    }

    /// Checks the closed-form eigen-data of the family Gram matrix:
    /// `Q·(e_1 - e_i) = (1 + n/2)(e_1 - e_i)` and `Q·𝟙 = (1 - n(m-1)/2)·𝟙`.
    pub fn gram_eigen_check(&self) -> bool {
        let Some((space_val, time_val)) = self.gram_eigenvalues() else {
            return false;
        };
        let m = self.m;
        let spacelike = (2..=m).all(|i| {
            let mut v = vec![rat(0); m];
            v[0] = rat(1);
            v[i - 1] = rat(-1);
            let qv = self.gram.mul_vec(&v).expect("dim");
            qv.iter().zip(&v).all(|(a, b)| *a == &space_val * b)
        });
        let ones = vec![rat(1); m];
        let q1 = self.gram.mul_vec(&ones).expect("dim");
        spacelike && q1.iter().all(|x| *x == time_val)
    }

    /// The two closed-form eigenvalues `(1 + n/2, 1 - n(m-1)/2)`.
    pub fn gram_eigenvalues(&self) -> Option<(BigRational, BigRational)> {
        let n = self.n? as i64;
        let m = self.m as i64;
        Some((rat(1) + frac(n, 2), rat(1) - frac(n * (m - 1), 2)))
    }
}

/// A permutation of `1..=m`, stored as `images[l-1] = σ(l)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &x in &images {
            if x == 0 || x > m || seen[x - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(m: usize) -> Self {
        Permutation {
            images: (1..=m).collect(),
        }
    }

    /// The transposition `(i j)`.
    pub fn transposition(m: usize, i: usize, j: usize) -> Result<Self> {
        Self::cycle(m, &[i, j])
    }

    /// The cycle `(c_1 c_2 … c_k)`: `c_1 ↦ c_2 ↦ … ↦ c_k ↦ c_1`.
    pub fn cycle(m: usize, elems: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=m).collect();
        for (idx, &c) in elems.iter().enumerate() {
            if c == 0 || c > m {
                return Err(Error::InvalidPermutation(format!("cycle {elems:?} in S_{m}")));
            }
            images[c - 1] = elems[(idx + 1) % elems.len()];
        }
        Self::new(images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `σ(l)` for 1-based `l`.
    pub fn apply(&self, l: usize) -> usize {
        self.images[l - 1]
    }

    /// `self ∘ other`, i.e. `l ↦ self(other(l))`.
    pub fn compose(&self, other: &Self) -> Self {
        Permutation {
            images: other.images.iter().map(|&l| self.apply(l)).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (l, &x) in self.images.iter().enumerate() {
            images[x - 1] = l + 1;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(l, &x)| x == l + 1)
    }

    /// `+1` for even, `-1` for odd permutations.
    pub fn sign(&self) -> i32 {
        let m = self.images.len();
        let mut seen = vec![false; m];
        let mut sign = 1;
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] - 1;
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// `Per_σ`: column `l` is the standard vector `e_{σ(l)}`.
    pub fn matrix(&self) -> RatMatrix {
        RatMatrix::from_fn(self.images.len(), |r, c| {
            if self.images[c] == r + 1 {
                rat(1)
            } else {
                rat(0)
            }
        })
    }

    /// Every permutation of `1..=m` in lexicographic order.
    pub fn all(m: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=m).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (0..m.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..m).rev().find(|&j| cur[j] > cur[i]).expect("exists");
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

/// Checks `Per_σ · t_i = t_{σ(i)} · Per_σ` exactly.
pub fn swap_lemma_check(sys: &CoxeterSystem, sigma: &Permutation, i: usize) -> Result<bool> {
    if sigma.len() != sys.rank() {
        return Err(Error::DimensionMismatch {
            left: sys.rank(),
            right: sigma.len(),
        });
    }
    let p = sigma.matrix();
    let lhs = p.mul(&sys.reflection_dual(i)?)?;
    let rhs = sys.reflection_dual(sigma.apply(i))?.mul(&p)?;
    Ok(lhs == rhs)
}

pub(crate) fn is_zero_vec(v: &[BigRational]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_int_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn family_gram_matrices() {
        let s = CoxeterSystem::new(2, 3, true).unwrap();
        assert_eq!(*s.gram(), ints(&[&[1, -1, -1], &[-1, 1, -1], &[-1, -1, 1]]));
        assert!(s.is_lorentzian());

        let s = CoxeterSystem::new(3, 3, true).unwrap();
        assert_eq!(*s.gram().get(0, 1), frac(-3, 2));
        assert!(s.is_lorentzian());

        assert!(matches!(
            CoxeterSystem::new(1, 2, true),
            Err(Error::InvalidParameters(_))
        ));
        assert!(CoxeterSystem::new(1, 2, false).is_ok());
    }

    #[test]
    fn rank_three_example_with_c_two() {
        let gram = ints(&[&[1, -2, -2], &[-2, 1, -2], &[-2, -2, 1]]);
        let s = CoxeterSystem::from_gram(gram).unwrap();
        assert_eq!(s.reflection_primal(1).unwrap(), ints(&[&[-1, 4, 4], &[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(s.reflection_primal(2).unwrap(), ints(&[&[1, 0, 0], &[4, -1, 4], &[0, 0, 1]]));
        assert_eq!(s.reflection_dual(1).unwrap(), ints(&[&[-1, 0, 0], &[4, 1, 0], &[4, 0, 1]]));
        assert!(s.is_universal());
    }

    #[test]
    fn dual_generator_columns() {
        let s = CoxeterSystem::new(2, 3, true).unwrap();
        let t1 = s.reflection_dual(1).unwrap();
        assert_eq!(t1, ints(&[&[-1, 0, 0], &[2, 1, 0], &[2, 0, 1]]));
        let t2 = s.reflection_dual(2).unwrap();
        assert_eq!(t1.mul(&t2).unwrap(), ints(&[&[-1, -2, 0], &[2, 3, 0], &[2, 6, 1]]));
        assert!(t1.mul(&t1).unwrap().is_identity());
        assert!(matches!(s.reflection_dual(4), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(s.reflection_dual(0), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn permutation_matrices() {
        assert!(Permutation::identity(3).matrix().is_identity());
        let s = Permutation::transposition(3, 1, 2).unwrap();
        assert_eq!(s.matrix(), ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]));
        let all = Permutation::all(3);
        assert_eq!(all.len(), 6);
        for a in &all {
            for b in &all {
                assert_eq!(a.matrix().mul(&b.matrix()).unwrap(), a.compose(b).matrix());
            }
            assert_eq!(a.matrix().det(), rat(a.sign() as i64));
        }
        let c = Permutation::cycle(4, &[2, 3, 4]).unwrap();
        assert_eq!(c.images(), &[1, 3, 4, 2]);
        assert_eq!(c.inverse().images(), &[1, 4, 2, 3]);
        assert!(Permutation::new(vec![1, 1, 2]).is_err());
    }

    #[test]
    fn swap_lemma_small() {
        let s = CoxeterSystem::new(2, 3, false).unwrap();
        let sigma = Permutation::transposition(3, 1, 2).unwrap();
        assert!(swap_lemma_check(&s, &sigma, 1).unwrap());
        for i in 1..=3 {
            assert!(swap_lemma_check(&s, &Permutation::identity(3), i).unwrap());
        }
    }

    #[test]
    fn quadric_normalization() {
        let s = CoxeterSystem::new(2, 3, true).unwrap();
        assert_eq!(s.quadric_matrix().unwrap(), ints(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]));
        let s3 = CoxeterSystem::new(3, 3, true).unwrap();
        // t0² - 6 t0 t1 + ... up to sign: the nef interior is positive
        assert_eq!(
            s3.quadric_matrix().unwrap(),
            ints(&[&[-1, 3, 3], &[3, -1, 3], &[3, 3, -1]])
        );
        let degenerate = CoxeterSystem::new(1, 3, false).unwrap();
        assert!(matches!(degenerate.quadric_matrix(), Err(Error::Singular)));
        let q = s.quadric_matrix().unwrap();
        assert_eq!(q.quadratic_form(&[rat(1), rat(0), rat(0)]).unwrap(), rat(0));
    }

    #[test]
    fn gram_eigen_data() {
        for (n, m, l1, l2) in [(2, 3, rat(2), rat(-1)), (3, 3, frac(5, 2), rat(-2)), (1, 3, frac(3, 2), rat(0))] {
            let s = CoxeterSystem::new(n, m, false).unwrap();
            assert!(s.gram_eigen_check());
            assert_eq!(s.gram_eigenvalues().unwrap(), (l1, l2));
        }
        let s = CoxeterSystem::new(1, 3, false).unwrap();
        assert_eq!(s.gram().signature().unwrap(), (2, 0, 1));
        assert!(!s.is_lorentzian());
    }

    #[test]
    fn mixed_gram_is_not_universal() {
        assert!(!CoxeterSystem::new(1, 4, false).unwrap().is_universal());
        assert!(CoxeterSystem::new(2, 4, false).unwrap().is_universal());
    }
}
