//! Dense square matrices over an exact [`Field`].

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Row-major `dim × dim` matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    dim: usize,
    entries: Vec<T>,
}

/// Matrix over the rationals; every matrix in the Coxeter machinery is one.
pub type RatMatrix = Matrix<BigRational>;

impl<T: Field> Matrix<T> {
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        Matrix { dim, entries }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidParameters("empty matrix".into()));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Matrix { dim, entries })
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| T::zero())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &T {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: T) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, col: usize) -> Vec<T> {
        (0..self.dim).map(|r| self.get(r, col).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(r, c).clone() * k.clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self::from_fn(self.dim, |r, c| {
            self.get(r, c).clone() + other.get(r, c).clone()
        }))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self::from_fn(self.dim, |r, c| {
            self.get(r, c).clone() - other.get(r, c).clone()
        }))
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    /// Exact product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.dim;
        Ok(Self::from_fn(n, |r, c| {
            (0..n).fold(T::zero(), |acc, k| {
                let a = self.get(r, k);
                let b = other.get(k, c);
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    acc + a.clone() * b.clone()
                }
            })
        }))
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: v.len(),
            });
        }
        Ok((0..self.dim)
            .map(|r| {
                (0..self.dim).fold(T::zero(), |acc, c| acc + self.get(r, c).clone() * v[c].clone())
            })
            .collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same dim");
            }
            base = base.mul(&base).expect("same dim");
            e >>= 1;
        }
        acc
    }

    /// `vᵀ · self · v`.
    pub fn quadratic_form(&self, v: &[T]) -> Result<T> {
        let mv = self.mul_vec(v)?;
        Ok(v.iter()
            .zip(mv)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b))
    }

    /// `uᵀ · self · v`.
    pub fn bilinear_form(&self, u: &[T], v: &[T]) -> Result<T> {
        let mv = self.mul_vec(v)?;
        if u.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: u.len(),
            });
        }
        Ok(u.iter()
            .zip(mv)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b))
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> T {
        let n = self.dim;
        let mut a = self.rows();
        let mut det = T::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return T::zero();
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            let pinv = pivot.inv().expect("nonzero pivot");
            det = det * pivot;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone() * pinv.clone();
                for c in col..n {
                    let v = a[r][c].clone() - f.clone() * a[col][c].clone();
                    a[r][c] = v;
                }
            }
        }
        det
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.dim;
        let mut a = self.rows();
        let mut inv = Self::identity(n).rows();
        for col in 0..n {
            let p = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::Singular)?;
            a.swap(p, col);
            inv.swap(p, col);
            let pinv = a[col][col].inv().expect("nonzero pivot");
            for c in 0..n {
                a[col][c] = a[col][c].clone() * pinv.clone();
                inv[col][c] = inv[col][c].clone() * pinv.clone();
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    a[r][c] = a[r][c].clone() - f.clone() * a[col][c].clone();
                    inv[r][c] = inv[r][c].clone() - f.clone() * inv[col][c].clone();
                }
            }
        }
        Self::from_rows(inv)
    }

    /// Basis of the right kernel `{v : self·v = 0}` from the reduced row
    /// echelon form. One vector per free column.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let n = self.dim;
        let mut a = self.rows();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            if row == n {
                break;
            }
            let Some(p) = (row..n).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(p, row);
            let pinv = a[row][col].inv().expect("nonzero pivot");
            for c in 0..n {
                a[row][c] = a[row][c].clone() * pinv.clone();
            }
            for r in 0..n {
                if r == row || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    a[r][c] = a[r][c].clone() - f.clone() * a[row][c].clone();
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); n];
                v[f] = T::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -a[r][f].clone();
                }
                v
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.dim - self.kernel().len()
    }
}

impl RatMatrix {
    /// Matrix with integer entries.
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|x| x.is_integer())
    }

    /// Entries as integers, if all are integral.
    pub fn to_int_rows(&self) -> Option<Vec<Vec<BigInt>>> {
        self.is_integral().then(|| {
            self.rows()
                .into_iter()
                .map(|r| r.into_iter().map(|x| x.to_integer()).collect())
                .collect()
        })
    }

    /// Characteristic polynomial `det(x·I - self)`, monic, coefficients with
    /// the constant term first. Faddeev-LeVerrier recursion.
    pub fn char_poly(&self) -> Vec<BigRational> {
        let n = self.dim;
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = BigRational::one();
        let mut m = Self::zeros(n);
        let ident = Self::identity(n);
        for k in 1..=n {
            // M_k = A·M_{k-1} + c_{n-k+1}·I
            m = self
                .mul(&m)
                .and_then(|am| am.add(&ident.scale(&coeffs[n - k + 1])))
                .expect("same dim");
            let am = self.mul(&m).expect("same dim");
            let trace = (0..n).fold(BigRational::zero(), |acc, i| acc + am.get(i, i));
            coeffs[n - k] = -trace / BigRational::from_integer(BigInt::from(k));
        }
        coeffs
    }

    /// Inertia `(positive, negative, zero)` of a symmetric matrix, by exact
    /// congruence diagonalization.
    pub fn signature(&self) -> Result<(usize, usize, usize)> {
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let n = self.dim;
        let mut a = self.rows();
        let mut diag = Vec::with_capacity(n);
        let mut k = 0;
        while k < n {
            if a[k][k].is_zero() {
                if let Some(p) = (k + 1..n).find(|&r| !a[r][r].is_zero()) {
                    // symmetric swap of index k and p
                    a.swap(k, p);
                    for row in a.iter_mut() {
                        row.swap(k, p);
                    }
                } else if let Some(p) = (k + 1..n).find(|&r| !a[k][r].is_zero()) {
                    // all remaining diagonal entries vanish: add row/col p to k,
                    // giving a[k][k] = 2·a[k][p] ≠ 0
                    for c in 0..n {
                        let v = a[k][c].clone() + a[p][c].clone();
                        a[k][c] = v;
                    }
                    for row in a.iter_mut() {
                        let v = row[k].clone() + row[p].clone();
                        row[k] = v;
                    }
                } else {
                    diag.push(BigRational::zero());
                    k += 1;
                    continue;
                }
            }
            let pivot = a[k][k].clone();
            for r in k + 1..n {
                if a[r][k].is_zero() {
                    continue;
                }
                let f = &a[r][k] / &pivot;
                for c in k..n {
                    let v = &a[r][c] - &f * &a[k][c];
                    a[r][c] = v;
                }
                for row in a.iter_mut().skip(k) {
                    let v = &row[r] - &f * &row[k];
                    row[r] = v;
                }
            }
            diag.push(pivot);
            k += 1;
        }
        let pos = diag.iter().filter(|x| x.is_positive()).count();
        let neg = diag.iter().filter(|x| x.is_negative()).count();
        Ok((pos, neg, n - pos - neg))
    }

    /// Integer-primitive rescaling: multiply by the least common denominator
    /// and divide by the content.
    pub fn primitive(&self) -> Self {
        let ints = crate::scalar::primitive_from_rationals(&self.entries);
        Matrix {
            dim: self.dim,
            entries: ints.into_iter().map(BigRational::from_integer).collect(),
        }
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.entries.chunks(self.dim) {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}\n{}", self.dim, self.dim, self)
    }
}

/// Evaluates a polynomial (constant term first) at a square matrix.
pub fn eval_poly_at(coeffs: &[BigRational], m: &RatMatrix) -> RatMatrix {
    let n = m.dim();
    coeffs.iter().rev().fold(RatMatrix::zeros(n), |acc, c| {
        acc.mul(m)
            .and_then(|x| x.add(&RatMatrix::identity(n).scale(c)))
            .expect("same dim")
    })
}

/// Product of polynomials given constant term first.
pub fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic polynomial; returns `(quotient, remainder)`.
pub fn poly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if num.len() <= dd {
        return (vec![BigRational::zero()], rem);
    }
    let lead = den[dd].clone();
    let mut quot = vec![BigRational::zero(); num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dd] / &lead;
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    rem.truncate(dd);
    (quot, rem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, rat};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_int_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(RatMatrix::identity(2).mul(&a).unwrap(), a);
        assert_eq!(a.mul(&RatMatrix::identity(2)).unwrap(), a);
    }

    #[test]
    fn dimension_mismatch() {
        let a = RatMatrix::identity(2);
        let b = RatMatrix::identity(3);
        assert!(matches!(a.mul(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn char_poly_of_identity() {
        let cp = RatMatrix::identity(3).char_poly();
        assert_eq!(cp, vec![rat(-1), rat(3), rat(-3), rat(1)]);
    }

    #[test]
    fn signatures() {
        assert_eq!(RatMatrix::identity(4).signature().unwrap(), (4, 0, 0));
        // zero diagonal, off-diagonal pair: hyperbolic plane
        assert_eq!(m(&[&[0, 1], &[1, 0]]).signature().unwrap(), (1, 1, 0));
        assert_eq!(m(&[&[0, 0], &[0, 0]]).signature().unwrap(), (0, 0, 2));
        assert!(matches!(
            m(&[&[0, 1], &[2, 0]]).signature(),
            Err(Error::NotSymmetric)
        ));
        let half = frac(-1, 2);
        let q = RatMatrix::from_fn(3, |r, c| if r == c { rat(1) } else { half.clone() });
        assert_eq!(q.signature().unwrap(), (2, 0, 1));
    }

    #[test]
    fn inverse_and_singularity() {
        let a = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(a.inverse().unwrap(), m(&[&[1, -1], &[-1, 2]]));
        assert!(matches!(m(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular)));
        assert_eq!(RatMatrix::identity(3).inverse().unwrap(), RatMatrix::identity(3));
    }

    #[test]
    fn kernel_of_rank_deficient() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).unwrap().iter().all(|x| x.is_zero()));
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn polynomial_division() {
        // (x-1)^2 (x-2) / (x-1) = (x-1)(x-2)
        let p = poly_mul(&poly_mul(&[rat(-1), rat(1)], &[rat(-1), rat(1)]), &[rat(-2), rat(1)]);
        let (q, r) = poly_divmod(&p, &[rat(-1), rat(1)]);
        assert_eq!(q, vec![rat(2), rat(-3), rat(1)]);
        assert!(r.iter().all(|x| x.is_zero()));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn int_matrix(n: usize) -> impl Strategy<Value = RatMatrix> {
            proptest::collection::vec(-6i64..=6, n * n).prop_map(move |v| {
                RatMatrix::from_fn(n, |r, c| rat(v[r * n + c]))
            })
        }

        proptest! {
            #[test]
            fn cayley_hamilton(a in (1usize..=5).prop_flat_map(int_matrix)) {
                let cp = a.char_poly();
                let z = eval_poly_at(&cp, &a);
                prop_assert!(z.entries().iter().all(|x| x.is_zero()));
            }

            #[test]
            fn sylvester_law(
                (a, p) in (1usize..=4).prop_flat_map(|n| (int_matrix(n), int_matrix(n)))
            ) {
                prop_assume!(!p.det().is_zero());
                let sym = a.add(&a.transpose()).unwrap();
                let cong = p.mul(&sym).unwrap().mul(&p.transpose()).unwrap();
                prop_assert_eq!(cong.signature().unwrap(), sym.signature().unwrap());
            }

            #[test]
            fn inverse_roundtrip(a in (1usize..=4).prop_flat_map(int_matrix)) {
                prop_assume!(!a.det().is_zero());
                let inv = a.inverse().unwrap();
                prop_assert!(a.mul(&inv).unwrap().is_identity());
            }
        }
    }
}
