//! The birational automorphism group as matrices and as words.
//!
//! Flop pullbacks and the generators `ψ_{i,j}` are products of the dual
//! reflections `t_i` and permutation matrices. For `n ≥ 2` the group
//! generated by the `t_i` is the universal Coxeter group, so every element of
//! `⟨t_i⟩ ⋊ S_m` has a unique normal form `t_{k_1}⋯t_{k_r}·Per_σ` with a
//! freely reduced `t`-word. This is the quotient of `Bir(X)` by the finite
//! kernel of automorphisms acting trivially on `N¹(X)`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coxeter::{CoxeterSystem, Permutation};
use crate::error::{Error, Result};
use crate::matrix::{poly_divmod, Matrix, RatMatrix};
use crate::scalar::{primitive_quad, quad_roots, rat, Field, QuadExt};

/// A word in the dual generators `t_1, …, t_m` (1-based letters).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TWord(pub Vec<usize>);

impl TWord {
    pub fn empty() -> Self {
        TWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    /// Cancels adjacent equal letters (`t_i² = 1`).
    pub fn reduced(&self) -> TWord {
        let mut out = Vec::with_capacity(self.0.len());
        for &k in &self.0 {
            push_reduced(&mut out, k);
        }
        TWord(out)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }

    /// Relabels every letter through `σ`.
    pub fn permuted(&self, sigma: &Permutation) -> TWord {
        TWord(self.0.iter().map(|&k| sigma.apply(k)).collect())
    }

    /// `t_{k_1} ⋯ t_{k_r}` as a matrix.
    pub fn matrix(&self, sys: &CoxeterSystem) -> Result<RatMatrix> {
        let mut acc = RatMatrix::identity(sys.rank());
        for &k in &self.0 {
            acc = acc.mul(&sys.reflection_dual(k)?)?;
        }
        Ok(acc)
    }
}

impl fmt::Debug for TWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{:?}", self.0)
    }
}

fn push_reduced(word: &mut Vec<usize>, k: usize) {
    if word.last() == Some(&k) {
        word.pop();
    } else {
        word.push(k);
    }
}

/// One syllable `ψ_{i,j}^{exp}` with `i < j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(into = "(usize, usize, i64)", try_from = "(usize, usize, i64)")]
pub struct PsiLetter {
    pub i: usize,
    pub j: usize,
    pub exp: i64,
}

impl From<PsiLetter> for (usize, usize, i64) {
    fn from(l: PsiLetter) -> Self {
        (l.i, l.j, l.exp)
    }
}

impl TryFrom<(usize, usize, i64)> for PsiLetter {
    type Error = Error;
    fn try_from((i, j, exp): (usize, usize, i64)) -> Result<Self> {
        if i >= j || exp == 0 {
            return Err(Error::Parse(format!("malformed psi letter ({i}, {j}, {exp})")));
        }
        Ok(PsiLetter { i, j, exp })
    }
}

/// A freely reduced word in the generators `ψ_{i,j}` (`i < j`), with
/// `ψ_{j,i}` stored as `ψ_{i,j}^{-1}`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PsiWord {
    letters: Vec<PsiLetter>,
}

impl PsiWord {
    pub fn empty() -> Self {
        PsiWord::default()
    }

    /// Builds a word from `(i, j, exp)` triples in either index order.
    pub fn from_triples(triples: &[(usize, usize, i64)]) -> Result<Self> {
        let mut w = PsiWord::empty();
        for &(i, j, e) in triples {
            w.push(i, j, e)?;
        }
        Ok(w)
    }

    /// Appends `ψ_{i,j}^{exp}`, merging with the last syllable.
    pub fn push(&mut self, i: usize, j: usize, exp: i64) -> Result<()> {
        if i == j {
            return Err(Error::EqualIndices(i));
        }
        if i == 0 || j == 0 {
            return Err(Error::IndexOutOfRange { index: 0, max: i.max(j) });
        }
        let (i, j, exp) = if i < j { (i, j, exp) } else { (j, i, -exp) };
        if exp == 0 {
            return Ok(());
        }
        match self.letters.last_mut() {
            Some(last) if last.i == i && last.j == j => {
                last.exp += exp;
                if last.exp == 0 {
                    self.letters.pop();
                }
            }
            _ => self.letters.push(PsiLetter { i, j, exp }),
        }
        Ok(())
    }

    pub fn letters(&self) -> &[PsiLetter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of syllables.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Total length `Σ |exp|` over the alphabet `ψ^{±1}`.
    pub fn generator_length(&self) -> u64 {
        self.letters.iter().map(|l| l.exp.unsigned_abs()).sum()
    }

    pub fn inverse(&self) -> PsiWord {
        PsiWord {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| PsiLetter { exp: -l.exp, ..*l })
                .collect(),
        }
    }

    pub fn concat(&self, other: &PsiWord) -> PsiWord {
        let mut out = self.clone();
        for l in &other.letters {
            out.push(l.i, l.j, l.exp).expect("valid letter");
        }
        out
    }

    /// Product of the `ψ*` matrices.
    pub fn matrix(&self, sys: &CoxeterSystem) -> Result<RatMatrix> {
        let mut acc = RatMatrix::identity(sys.rank());
        for l in &self.letters {
            let base = psi_matrix(sys, l.i, l.j)?;
            let step = if l.exp > 0 {
                base
            } else {
                psi_matrix(sys, l.j, l.i)?
            };
            acc = acc.mul(&step.pow(l.exp.unsigned_abs() as u32))?;
        }
        Ok(acc)
    }
}

impl fmt::Debug for PsiWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| format!("ψ{},{}^{}", l.i, l.j, l.exp))
            .collect();
        write!(f, "[{}]", parts.join("·"))
    }
}

/// Normal form `t_{k_1}⋯t_{k_r}·Per_σ` of an element of `⟨t_i⟩ ⋊ S_m`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct GroupElementNF {
    pub t_word: TWord,
    pub perm: Permutation,
}

impl GroupElementNF {
    pub fn identity(m: usize) -> Self {
        GroupElementNF {
            t_word: TWord::empty(),
            perm: Permutation::identity(m),
        }
    }

    pub fn from_t_word(m: usize, w: &TWord) -> Self {
        GroupElementNF {
            t_word: w.reduced(),
            perm: Permutation::identity(m),
        }
    }

    pub fn from_perm(perm: Permutation) -> Self {
        GroupElementNF {
            t_word: TWord::empty(),
            perm,
        }
    }

    /// `ψ_{i,j} = t_i t_j t_i · Per_{(i j)}` for any ordered pair.
    pub fn psi(m: usize, i: usize, j: usize) -> Result<Self> {
        if i == j {
            return Err(Error::EqualIndices(i));
        }
        Ok(GroupElementNF {
            t_word: TWord(vec![i, j, i]),
            perm: Permutation::transposition(m, i, j)?,
        })
    }

    /// `(w·Per_σ)(w'·Per_σ') = w·σ(w')·Per_{σσ'}`, freely reduced.
    pub fn mul(&self, other: &Self) -> Self {
        let mut letters = self.t_word.0.clone();
        for &k in &other.t_word.0 {
            push_reduced(&mut letters, self.perm.apply(k));
        }
        GroupElementNF {
            t_word: TWord(letters),
            perm: self.perm.compose(&other.perm),
        }
    }

    pub fn inverse(&self) -> Self {
        let inv = self.perm.inverse();
        let rev: Vec<usize> = self.t_word.0.iter().rev().map(|&k| inv.apply(k)).collect();
        GroupElementNF {
            t_word: TWord(rev),
            perm: inv,
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        (0..e.unsigned_abs()).fold(Self::identity(self.perm.len()), |acc, _| acc.mul(&base))
    }

    pub fn is_identity(&self) -> bool {
        self.t_word.is_empty() && self.perm.is_identity()
    }

    pub fn matrix(&self, sys: &CoxeterSystem) -> Result<RatMatrix> {
        self.t_word.matrix(sys)?.mul(&self.perm.matrix())
    }
}

/// Matrix of the flop pullback `φ*_{i,j}` for `0 ≤ i, j ≤ m`, where index 0
/// denotes `X_0 = X`.
pub fn flop_pullback(sys: &CoxeterSystem, i: usize, j: usize) -> Result<RatMatrix> {
    let m = sys.rank();
    if i == j {
        return Err(Error::EqualIndices(i));
    }
    for idx in [i, j] {
        if idx > m {
            return Err(Error::IndexOutOfRange { index: idx, max: m });
        }
    }
    if i < j {
        let cycle: Vec<usize> = (i + 1..=j).collect();
        let sigma = Permutation::cycle(m, &cycle)?.inverse();
        sys.reflection_dual(j)?.mul(&sigma.matrix())
    } else {
        let cycle: Vec<usize> = (j + 1..=i).collect();
        let sigma = Permutation::cycle(m, &cycle)?;
        sys.reflection_dual(j + 1)?.mul(&sigma.matrix())
    }
}

/// `ψ*_{i,j} = t_i t_j t_i · Per_{(i j)}`; `ψ*_{j,i}` is its inverse.
pub fn psi_matrix(sys: &CoxeterSystem, i: usize, j: usize) -> Result<RatMatrix> {
    sys.check_index(i)?;
    sys.check_index(j)?;
    GroupElementNF::psi(sys.rank(), i, j)?.matrix(sys)
}

/// Normal form of a `ψ`-word.
pub fn t_normal_form(sys: &CoxeterSystem, w: &PsiWord) -> Result<GroupElementNF> {
    sys.require_universal()?;
    let m = sys.rank();
    let mut acc = GroupElementNF::identity(m);
    for l in w.letters() {
        sys.check_index(l.j)?;
        let g = GroupElementNF::psi(m, l.i, l.j)?;
        acc = acc.mul(&g.pow(l.exp));
    }
    Ok(acc)
}

/// A `ψ`-word `w'` with `w·D ⊆ w'·Π`, built by peeling `t_{i_1} t_{i_2}`
/// off the front: `w = ψ_{i_1,i_2} · t_{i_2} t_{σ(i_3)} ⋯ · Per_σ` with
/// `σ = (i_1 i_2)`.
pub fn psi_from_t(sys: &CoxeterSystem, w: &TWord) -> Result<PsiWord> {
    sys.require_universal()?;
    for &k in w.letters() {
        sys.check_index(k)?;
    }
    let mut word = w.reduced().0;
    let mut out = PsiWord::empty();
    while word.len() >= 2 {
        let (a, b) = (word[0], word[1]);
        out.push(a, b, 1)?;
        let sigma = Permutation::transposition(sys.rank(), a, b)?;
        let mut next = Vec::with_capacity(word.len() - 1);
        push_reduced(&mut next, b);
        for &k in &word[2..] {
            push_reduced(&mut next, sigma.apply(k));
        }
        word = next;
    }
    Ok(out)
}

/// True iff the normal form of `w` starts with `t_i t_j` for a leading
/// `ψ_{i,j}^{+}` (or `t_j t_i` for `ψ_{i,j}^{-}`).
pub fn prefix_check(sys: &CoxeterSystem, w: &PsiWord) -> Result<bool> {
    let first = *w.letters().first().ok_or(Error::EmptyWord)?;
    let nf = t_normal_form(sys, w)?;
    let expected = if first.exp > 0 {
        [first.i, first.j]
    } else {
        [first.j, first.i]
    };
    Ok(nf.t_word.letters().len() >= 2 && nf.t_word.letters()[..2] == expected)
}

/// Outcome of [`verify_free`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeReport {
    pub words_checked: u64,
    pub collisions: u64,
}

/// Number of freely reduced words of length `1..=depth` over `2g` letters.
pub fn reduced_word_count(letters: u64, depth: u32) -> u128 {
    let (a, b) = (letters as u128, letters.saturating_sub(1) as u128);
    (1..=depth).map(|l| a * b.pow(l - 1)).sum()
}

/// All freely reduced words of length `1..=depth` over the `ψ^{±1}`
/// alphabet, in order of length then alphabet order.
pub fn enumerate_psi_words(sys: &CoxeterSystem, depth: u32, budget: u64) -> Result<Vec<PsiWord>> {
    let m = sys.rank();
    let mut alphabet = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            alphabet.push((i, j, 1i64));
            alphabet.push((i, j, -1i64));
        }
    }
    let requested = reduced_word_count(alphabet.len() as u64, depth);
    if requested > budget as u128 {
        return Err(Error::BudgetExceeded { requested, budget });
    }
    let mut out = Vec::new();
    let mut level: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for w in &level {
            for &letter in &alphabet {
                if let Some(&(i, j, e)) = w.last() {
                    if (i, j, -e) == letter {
                        continue;
                    }
                }
                let mut v = w.clone();
                v.push(letter);
                next.push(v);
            }
        }
        out.extend(next.iter().map(|v| PsiWord::from_triples(v).expect("valid letters")));
        level = next;
    }
    Ok(out)
}

/// Enumerates all freely reduced `ψ`-words of length `1..=depth` and checks
/// that their normal forms are pairwise distinct and nontrivial.
pub fn verify_free(sys: &CoxeterSystem, depth: u32, budget: u64) -> Result<FreeReport> {
    sys.require_universal()?;
    let words = enumerate_psi_words(sys, depth, budget)?;
    let mut seen: HashMap<GroupElementNF, usize> = HashMap::with_capacity(words.len());
    let mut collisions = 0;
    for (idx, w) in words.iter().enumerate() {
        let nf = t_normal_form(sys, w)?;
        if nf.is_identity() || seen.insert(nf, idx).is_some() {
            collisions += 1;
        }
    }
    Ok(FreeReport {
        words_checked: words.len() as u64,
        collisions,
    })
}

/// Eigenvalue `λ > 1` of `t_i t_j` with an exact eigenvector.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenPair {
    pub eigenvalue: QuadExt,
    pub conjugate: QuadExt,
    pub eigenvector: Vec<QuadExt>,
}

/// Spectral type of `t_i t_j`.
#[derive(Clone, Debug, PartialEq)]
pub enum EigenData {
    /// `n ≥ 3`: real eigenvalues `λ, 1, …, 1, λ⁻¹` with `λ > 1`.
    Hyperbolic(EigenPair),
    /// `n = 2`: only eigenvalue 1, not diagonalizable.
    Unipotent,
    /// `n = 1`: `(t_i t_j)³ = 1`.
    FiniteOrder,
}

/// Spectral data of `t_i t_j`, from the quadratic factor left after removing
/// `(x - 1)^{m-2}` from its characteristic polynomial.
pub fn eigen_pair(sys: &CoxeterSystem, i: usize, j: usize) -> Result<EigenData> {
    if i == j {
        return Err(Error::EqualIndices(i));
    }
    let prod = sys.reflection_dual(i)?.mul(&sys.reflection_dual(j)?)?;
    let mut cp = prod.char_poly();
    let x_minus_one = [rat(-1), rat(1)];
    for _ in 0..sys.rank() - 2 {
        let (q, r) = poly_divmod(&cp, &x_minus_one);
        debug_assert!(r.iter().all(Zero::is_zero));
        cp = q;
    }
    let (b, c) = (cp[1].clone(), cp[0].clone());
    let (lambda, conjugate) = match quad_roots(&b, &c) {
        Err(Error::NegativeDiscriminant(_)) => return Ok(EigenData::FiniteOrder),
        Err(e) => return Err(e),
        Ok(roots) => roots,
    };
    if lambda == conjugate {
        return Ok(EigenData::Unipotent);
    }
    let m = sys.rank();
    let shifted: Matrix<QuadExt> = Matrix::from_fn(m, |r, c| {
        let v = QuadExt::from_rational(prod.get(r, c));
        if r == c {
            &v - &lambda
        } else {
            v
        }
    });
    let kernel = shifted.kernel();
    let v = kernel
        .first()
        .ok_or_else(|| Error::InvalidParameters("eigenspace is trivial".into()))?;
    Ok(EigenData::Hyperbolic(EigenPair {
        eigenvalue: lambda,
        conjugate,
        eigenvector: primitive_quad(v),
    }))
}

/// Closed form `λ = ((n² - 2) + n·√(n² - 4)) / 2` for `n ≥ 3`.
pub fn lambda_closed_form(n: u32) -> Result<QuadExt> {
    if n < 3 {
        return Err(Error::InvalidParameters(format!("λ > 1 requires n >= 3, got {n}")));
    }
    let n = n as i64;
    QuadExt::new(
        BigRational::new(BigInt::from(n * n - 2), BigInt::from(2)),
        BigRational::new(BigInt::from(n), BigInt::from(2)),
        BigInt::from(n * n - 4),
    )
}

/// Codimension `(n+1)^m - (m+1)·((n+1)² - 1)` of the locus of forms with a
/// nontrivial automorphism, valid for `n, m ≥ 3`.
pub fn aut_codimension(n: u32, m: u32) -> Result<BigInt> {
    if n < 3 || m < 3 {
        return Err(Error::InvalidParameters(format!(
            "codimension formula needs n, m >= 3; got n = {n}, m = {m}"
        )));
    }
    let base = BigInt::from(n + 1);
    let top = num_traits::pow(base.clone(), m as usize);
    Ok(top - BigInt::from(m + 1) * (&base * &base - BigInt::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;

    fn sys(n: u32, m: usize) -> CoxeterSystem {
        CoxeterSystem::new(n, m, false).unwrap()
    }

    fn ints(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_int_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn flop_pullbacks() {
        let s = sys(2, 3);
        assert_eq!(flop_pullback(&s, 0, 1).unwrap(), ints(&[&[-1, 0, 0], &[2, 1, 0], &[2, 0, 1]]));
        let f02 = flop_pullback(&s, 0, 2).unwrap();
        assert_eq!(f02.column(0), vec![rat(2), rat(-1), rat(2)]);
        for i in 0..=3 {
            for j in 0..=3 {
                if i != j {
                    let p = flop_pullback(&s, i, j).unwrap().mul(&flop_pullback(&s, j, i).unwrap()).unwrap();
                    assert!(p.is_identity(), "({i},{j})");
                }
            }
        }
        assert!(matches!(flop_pullback(&s, 2, 2), Err(Error::EqualIndices(2))));
        assert!(matches!(flop_pullback(&s, 0, 4), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn psi_composite_of_flops() {
        // ψ*_{i,j} = φ*_{0,i} · φ*_{i,j} · (φ*_{0,j})⁻¹
        for (n, m) in [(2, 3), (3, 4), (1, 4)] {
            let s = sys(n, m);
            for i in 1..=m {
                for j in 1..=m {
                    if i == j {
                        continue;
                    }
                    let composite = flop_pullback(&s, 0, i)
                        .unwrap()
                        .mul(&flop_pullback(&s, i, j).unwrap())
                        .unwrap()
                        .mul(&flop_pullback(&s, j, 0).unwrap())
                        .unwrap();
                    assert_eq!(composite, psi_matrix(&s, i, j).unwrap(), "n={n} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn golden_psi_matrices() {
        let s = sys(2, 3);
        assert_eq!(psi_matrix(&s, 1, 2).unwrap(), ints(&[&[-2, -3, 0], &[3, 4, 0], &[6, 12, 1]]));
        assert_eq!(psi_matrix(&s, 2, 3).unwrap(), ints(&[&[1, 6, 12], &[0, -2, -3], &[0, 3, 4]]));
        let s3 = sys(3, 3);
        assert_eq!(psi_matrix(&s3, 1, 2).unwrap(), ints(&[&[-3, -8, 0], &[8, 21, 0], &[12, 36, 1]]));
        assert!(psi_matrix(&s, 1, 2).unwrap().mul(&psi_matrix(&s, 2, 1).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn normal_form_examples() {
        let s = sys(2, 3);
        let nf = t_normal_form(&s, &PsiWord::from_triples(&[(1, 2, 1)]).unwrap()).unwrap();
        assert_eq!(nf.t_word, TWord(vec![1, 2, 1]));
        assert_eq!(nf.perm, Permutation::transposition(3, 1, 2).unwrap());

        let nf = t_normal_form(&s, &PsiWord::from_triples(&[(1, 2, 1), (2, 3, 1)]).unwrap()).unwrap();
        assert_eq!(nf.t_word, TWord(vec![1, 2, 3, 1]));
        let expected = Permutation::transposition(3, 1, 2)
            .unwrap()
            .compose(&Permutation::transposition(3, 2, 3).unwrap());
        assert_eq!(nf.perm, expected);

        let w = PsiWord::from_triples(&[(1, 2, 1), (2, 1, 1)]).unwrap();
        assert!(w.is_empty());
        assert!(t_normal_form(&s, &w).unwrap().is_identity());
    }

    #[test]
    fn word_ops_reject_n1() {
        let s = sys(1, 3);
        let w = PsiWord::from_triples(&[(1, 2, 1)]).unwrap();
        assert!(matches!(t_normal_form(&s, &w), Err(Error::Unsupported(_))));
        assert!(matches!(psi_from_t(&s, &TWord(vec![1, 2])), Err(Error::Unsupported(_))));
        assert!(matches!(verify_free(&s, 1, 100), Err(Error::Unsupported(_))));
    }

    #[test]
    fn psi_from_t_examples() {
        let s = sys(2, 3);
        assert!(psi_from_t(&s, &TWord(vec![1])).unwrap().is_empty());
        assert!(psi_from_t(&s, &TWord::empty()).unwrap().is_empty());
        let one_two = PsiWord::from_triples(&[(1, 2, 1)]).unwrap();
        assert_eq!(psi_from_t(&s, &TWord(vec![1, 2])).unwrap(), one_two);
        assert_eq!(psi_from_t(&s, &TWord(vec![1, 2, 1])).unwrap(), one_two);
    }

    #[test]
    fn prefix_examples() {
        let s = sys(2, 3);
        assert!(prefix_check(&s, &PsiWord::from_triples(&[(1, 2, 1), (2, 3, 1)]).unwrap()).unwrap());
        let w = PsiWord::from_triples(&[(1, 3, -1), (1, 2, 1)]).unwrap();
        assert!(prefix_check(&s, &w).unwrap());
        assert_eq!(&t_normal_form(&s, &w).unwrap().t_word.0[..2], &[3, 1]);
        assert!(matches!(prefix_check(&s, &PsiWord::empty()), Err(Error::EmptyWord)));
    }

    #[test]
    fn free_report_counts() {
        let s = sys(2, 3);
        assert_eq!(
            verify_free(&s, 1, 1_000_000).unwrap(),
            FreeReport { words_checked: 6, collisions: 0 }
        );
        assert_eq!(reduced_word_count(6, 4), 936);
        assert!(matches!(verify_free(&s, 4, 100), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn eigen_data_by_n() {
        assert_eq!(eigen_pair(&sys(2, 3), 1, 2).unwrap(), EigenData::Unipotent);
        assert_eq!(eigen_pair(&sys(1, 3), 2, 3).unwrap(), EigenData::FiniteOrder);
        let s = sys(3, 3);
        let EigenData::Hyperbolic(pair) = eigen_pair(&s, 1, 2).unwrap() else {
            panic!("expected λ > 1");
        };
        assert_eq!(pair.eigenvalue, QuadExt::new(frac(7, 2), frac(3, 2), 5.into()).unwrap());
        assert_eq!(pair.eigenvalue, lambda_closed_form(3).unwrap());
        let prod = s.reflection_dual(1).unwrap().mul(&s.reflection_dual(2).unwrap()).unwrap();
        let lifted: Matrix<QuadExt> = Matrix::from_fn(3, |r, c| QuadExt::from_rational(prod.get(r, c)));
        let image = lifted.mul_vec(&pair.eigenvector).unwrap();
        for (a, b) in image.iter().zip(&pair.eigenvector) {
            assert_eq!(*a, &pair.eigenvalue * b);
        }
        assert_eq!(&pair.eigenvalue * &pair.conjugate, QuadExt::rational(rat(1)));
        assert!(matches!(eigen_pair(&s, 2, 2), Err(Error::EqualIndices(2))));
    }

    #[test]
    fn codimension_values() {
        assert_eq!(aut_codimension(3, 3).unwrap(), BigInt::from(4));
        assert_eq!(aut_codimension(4, 3).unwrap(), BigInt::from(29));
        assert_eq!(aut_codimension(3, 4).unwrap(), BigInt::from(181));
        assert!(aut_codimension(2, 3).is_err());
        assert!(aut_codimension(3, 2).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn psi_word(m: usize, max_len: usize) -> impl Strategy<Value = PsiWord> {
            proptest::collection::vec((1..=m, 1..=m, prop_oneof![Just(1i64), Just(-1i64), Just(2i64)]), 0..=max_len)
                .prop_map(|raw| {
                    let mut w = PsiWord::empty();
                    for (i, j, e) in raw {
                        if i != j {
                            w.push(i, j, e).unwrap();
                        }
                    }
                    w
                })
        }

        proptest! {
            #[test]
            fn normal_form_is_a_homomorphism(u in psi_word(4, 5), v in psi_word(4, 5), n in 2u32..=3) {
                let s = sys(n, 4);
                let nu = t_normal_form(&s, &u).unwrap();
                let nv = t_normal_form(&s, &v).unwrap();
                prop_assert_eq!(t_normal_form(&s, &u.concat(&v)).unwrap(), nu.mul(&nv));
                prop_assert_eq!(nu.matrix(&s).unwrap(), u.matrix(&s).unwrap());
                prop_assert!(nu.t_word.is_reduced());
            }

            #[test]
            fn psi_from_t_lands_in_fundamental_domain(raw in proptest::collection::vec(1usize..=3, 0..=7), n in 2u32..=3) {
                let s = sys(n, 3);
                let w = TWord(raw).reduced();
                let wp = psi_from_t(&s, &w).unwrap();
                let residual = t_normal_form(&s, &wp).unwrap().inverse().mul(&GroupElementNF::from_t_word(3, &w));
                prop_assert!(residual.t_word.len() <= 1);
            }
        }
    }
}
