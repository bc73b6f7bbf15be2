//! Dense matrices over an exact ring, determinants and Cramer's rule.

use std::fmt;

use super::cyclotomic::CycNum;
use super::frac::RatFrac;
use super::poly::MPoly;
use super::rat::Rat;
use super::AlgebraError;

/// The ring operations the matrix code needs. `div_exact` must return the
/// quotient whenever the division is exact (fields: always, for nonzero divisors).
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn div_exact_ref(&self, rhs: &Self) -> Option<Self>;
}

impl Ring for Rat {
    fn zero_like(&self) -> Self {
        num_traits::Zero::zero()
    }
    fn one_like(&self) -> Self {
        num_traits::One::one()
    }
    fn is_zero_elem(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_exact_ref(&self, rhs: &Self) -> Option<Self> {
        (!num_traits::Zero::is_zero(rhs)).then(|| self / rhs)
    }
}

impl Ring for CycNum {
    fn zero_like(&self) -> Self {
        CycNum::zero(self.conductor())
    }
    fn one_like(&self) -> Self {
        CycNum::one(self.conductor())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_exact_ref(&self, rhs: &Self) -> Option<Self> {
        self.checked_div(rhs).ok()
    }
}

impl Ring for MPoly {
    fn zero_like(&self) -> Self {
        MPoly::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        MPoly::one(self.nvars())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_exact_ref(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        self.div_exact(rhs)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R> {
    nrows: usize,
    ncols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self, AlgebraError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 {
            return Err(AlgebraError::Shape("matrix must have at least one row and column".into()));
        }
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(AlgebraError::Shape("ragged rows".into()));
        }
        Ok(Matrix { nrows, ncols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(nrows: usize, ncols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(nrows * ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                data.push(f(i, j));
            }
        }
        Matrix { nrows, ncols, data }
    }

    /// Identity of size `n`, with entries built from `unit`'s ring.
    pub fn identity_like(n: usize, unit: &R) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { unit.one_like() } else { unit.zero_like() })
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.nrows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<R>> {
        (0..self.nrows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ncols, self.nrows, |i, j| self.get(j, i).clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.ncols {
            self.data.swap(a * self.ncols + j, b * self.ncols + j);
        }
    }

    pub fn with_column(&self, j: usize, col: &[R]) -> Self {
        let mut m = self.clone();
        for (i, v) in col.iter().enumerate() {
            m.set(i, j, v.clone());
        }
        m
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.ncols != other.nrows {
            return Err(AlgebraError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        Ok(Self::from_fn(self.nrows, other.ncols, |i, j| {
            let mut acc = self.get(i, 0).mul_ref(other.get(0, j));
            for k in 1..self.ncols {
                acc = acc.add_ref(&self.get(i, k).mul_ref(other.get(k, j)));
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(v.len(), self.ncols);
        (0..self.nrows)
            .map(|i| {
                let mut acc = self.get(i, 0).mul_ref(&v[0]);
                for k in 1..self.ncols {
                    acc = acc.add_ref(&self.get(i, k).mul_ref(&v[k]));
                }
                acc
            })
            .collect()
    }

    /// Determinant by fraction-free Bareiss elimination. Falls back to
    /// cofactor expansion for n <= 4 if an intermediate division is not exact.
    pub fn det(&self) -> Result<R, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare(self.nrows, self.ncols));
        }
        match self.det_bareiss() {
            Some(d) => Ok(d),
            None if self.nrows <= 4 => self.det_cofactor(),
            None => Err(AlgebraError::Unsupported("inexact division during elimination")),
        }
    }

    fn det_bareiss(&self) -> Option<R> {
        let n = self.nrows;
        let mut a = self.clone();
        let mut sign_flip = false;
        let mut prev = self.get(0, 0).one_like();
        for k in 0..n.saturating_sub(1) {
            if a.get(k, k).is_zero_elem() {
                match (k + 1..n).find(|&r| !a.get(r, k).is_zero_elem()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign_flip = !sign_flip;
                    }
                    None => return Some(self.get(0, 0).zero_like()),
                }
            }
            let pivot = a.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = pivot.mul_ref(a.get(i, j)).sub_ref(&a.get(i, k).mul_ref(a.get(k, j)));
                    a.set(i, j, v.div_exact_ref(&prev)?);
                }
                a.set(i, k, pivot.zero_like());
            }
            prev = pivot;
        }
        let d = a.get(n - 1, n - 1).clone();
        Some(if sign_flip { d.neg_ref() } else { d })
    }

    /// Laplace expansion along the first row.
    pub fn det_cofactor(&self) -> Result<R, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare(self.nrows, self.ncols));
        }
        let idx: Vec<usize> = (0..self.nrows).collect();
        Ok(self.cofactor_rec(0, &idx))
    }

    fn cofactor_rec(&self, row: usize, cols: &[usize]) -> R {
        if cols.len() == 1 {
            return self.get(row, cols[0]).clone();
        }
        let mut acc = self.get(0, 0).zero_like();
        for (k, &c) in cols.iter().enumerate() {
            let entry = self.get(row, c);
            if entry.is_zero_elem() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = entry.mul_ref(&self.cofactor_rec(row + 1, &rest));
            acc = if k % 2 == 0 { acc.add_ref(&term) } else { acc.sub_ref(&term) };
        }
        acc
    }
}

/// Solves `m * x = rhs` by Cramer's rule. Component `i` is
/// `det(m with column i replaced by rhs) / det(m)`.
pub fn solve_cramer(m: &Matrix<MPoly>, rhs: &[MPoly]) -> Result<Vec<RatFrac>, AlgebraError> {
    if !m.is_square() {
        return Err(AlgebraError::NotSquare(m.nrows(), m.ncols()));
    }
    if rhs.len() != m.nrows() {
        return Err(AlgebraError::ArityMismatch { expected: m.nrows(), found: rhs.len() });
    }
    let d = m.det()?;
    if d.is_zero() {
        return Err(AlgebraError::Singular);
    }
    (0..m.ncols())
        .map(|i| RatFrac::new(m.with_column(i, rhs).det()?, d.clone()))
        .collect()
}

impl<R: fmt::Display> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.nrows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.ncols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.data[i * self.ncols + j])?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> MPoly {
        MPoly::parse(s, n, 1).unwrap()
    }

    fn pm(rows: &[&[&str]], n: usize) -> Matrix<MPoly> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| p(s, n)).collect()).collect()).unwrap()
    }

    #[test]
    fn identity_determinant() {
        for n in 1..=5 {
            let id = Matrix::identity_like(n, &MPoly::one(2));
            assert!(id.det().unwrap() == MPoly::one(2));
        }
    }

    #[test]
    fn s2_jacobian_determinant() {
        let m = pm(&[&["1", "1"], &["x2", "x1"]], 2);
        assert_eq!(m.det().unwrap(), p("x1 - x2", 2));
        assert_eq!(m.det_cofactor().unwrap(), p("x1 - x2", 2));
    }

    #[test]
    fn s3_jacobian_determinant_is_vandermonde_multiple() {
        let m = pm(&[&["1", "1", "1"], &["x2 + x3", "x1 + x3", "x1 + x2"], &["x2*x3", "x1*x3", "x1*x2"]], 3);
        let v = p("(x1 - x2)*(x2 - x3)*(x1 - x3)", 3);
        let d = m.det().unwrap();
        assert_eq!(d, m.det_cofactor().unwrap());
        assert!(d.scalar_ratio(&v).is_some());
    }

    #[test]
    fn bareiss_needs_pivoting() {
        let m = pm(&[&["0", "x1"], &["x2", "1"]], 2);
        assert_eq!(m.det().unwrap(), p("-x1*x2", 2));
    }

    #[test]
    fn non_square_is_rejected() {
        let m = pm(&[&["1", "x1"]], 1);
        assert!(matches!(m.det(), Err(AlgebraError::NotSquare(1, 2))));
    }

    #[test]
    fn cramer_identity_system() {
        let id = Matrix::identity_like(3, &MPoly::one(3));
        let e1 = vec![MPoly::one(3), MPoly::zero(3), MPoly::zero(3)];
        let sol = solve_cramer(&id, &e1).unwrap();
        assert_eq!(sol[0], RatFrac::one(3));
        assert!(sol[1].is_zero() && sol[2].is_zero());
    }

    #[test]
    fn cramer_s2_by_hand() {
        let m = pm(&[&["1", "1"], &["x2", "x1"]], 2);
        let sol = solve_cramer(&m, &[MPoly::one(2), MPoly::zero(2)]).unwrap();
        let d = p("x1 - x2", 2);
        assert_eq!(sol[0], RatFrac::new(p("x1", 2), d.clone()).unwrap());
        assert_eq!(sol[1], RatFrac::new(p("-x2", 2), d).unwrap());
    }

    #[test]
    fn cramer_singular() {
        let m = pm(&[&["x1", "x2"], &["2*x1", "2*x2"]], 2);
        assert_eq!(solve_cramer(&m, &[MPoly::one(2), MPoly::zero(2)]).unwrap_err(), AlgebraError::Singular);
    }
}
