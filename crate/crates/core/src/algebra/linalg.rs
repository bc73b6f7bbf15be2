//! Gaussian elimination over the cyclotomic field.

use super::cyclotomic::CycNum;
use super::matrix::Matrix;
use super::AlgebraError;

pub type FieldMatrix = Matrix<CycNum>;
pub type Vector = Vec<CycNum>;

/// Reduced row echelon form and the pivot columns.
pub fn rref(m: &FieldMatrix) -> (FieldMatrix, Vec<usize>) {
    let mut a = m.clone();
    let (nr, nc) = (a.nrows(), a.ncols());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..nc {
        if row == nr {
            break;
        }
        let Some(p) = (row..nr).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        a.swap_rows(row, p);
        let inv = a.get(row, col).inverse().expect("pivot is nonzero");
        for j in 0..nc {
            let v = a.get(row, j) * &inv;
            a.set(row, j, v);
        }
        for r in 0..nr {
            if r == row || a.get(r, col).is_zero() {
                continue;
            }
            let factor = a.get(r, col).clone();
            for j in 0..nc {
                let v = a.get(r, j) - &(&factor * a.get(row, j));
                a.set(r, j, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

pub fn rank(m: &FieldMatrix) -> usize {
    rref(m).1.len()
}

/// Rank of a list of vectors (as rows).
pub fn rank_of(vectors: &[Vector]) -> usize {
    if vectors.is_empty() || vectors[0].is_empty() {
        return 0;
    }
    rank(&Matrix::from_rows(vectors.to_vec()).expect("rectangular"))
}

/// A basis of `{ v : m v = 0 }`.
pub fn nullspace(m: &FieldMatrix) -> Vec<Vector> {
    let conductor = m.entries().iter().map(CycNum::conductor).max().unwrap_or(1);
    let (r, pivots) = rref(m);
    let nc = m.ncols();
    let free: Vec<usize> = (0..nc).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![CycNum::zero(conductor); nc];
            v[f] = CycNum::one(conductor);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, f);
            }
            v
        })
        .collect()
}

/// A basis (subset of the input) of the span of `vectors`.
pub fn span_basis(vectors: &[Vector]) -> Vec<Vector> {
    let mut basis: Vec<Vector> = Vec::new();
    for v in vectors {
        let mut trial = basis.clone();
        trial.push(v.clone());
        if rank_of(&trial) > basis.len() {
            basis = trial;
        }
    }
    basis
}

pub fn in_span(v: &Vector, basis: &[Vector]) -> bool {
    let mut trial = basis.to_vec();
    trial.push(v.clone());
    rank_of(&trial) == rank_of(basis)
}

pub fn inverse(m: &FieldMatrix) -> Result<FieldMatrix, AlgebraError> {
    if !m.is_square() {
        return Err(AlgebraError::NotSquare(m.nrows(), m.ncols()));
    }
    let n = m.nrows();
    let conductor = m.entries().iter().map(CycNum::conductor).max().unwrap_or(1);
    let aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m.get(i, j).clone()
        } else if j - n == i {
            CycNum::one(conductor)
        } else {
            CycNum::zero(conductor)
        }
    });
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(AlgebraError::Singular);
    }
    Ok(Matrix::from_fn(n, n, |i, j| r.get(i, j + n).clone()))
}

/// Solves `m x = b` for a square nonsingular `m`.
pub fn solve(m: &FieldMatrix, b: &[CycNum]) -> Result<Vector, AlgebraError> {
    Ok(inverse(m)?.mul_vec(b))
}

/// Scales `v` so that its first nonzero coordinate is 1.
pub fn normalize_first_nonzero(v: &[CycNum]) -> Vector {
    match v.iter().find(|c| !c.is_zero()) {
        None => v.to_vec(),
        Some(lead) => {
            let inv = lead.inverse().expect("nonzero");
            v.iter().map(|c| c * &inv).collect()
        }
    }
}

pub fn dot(a: &[CycNum], b: &[CycNum]) -> CycNum {
    let mut acc = CycNum::zero(1);
    for (x, y) in a.iter().zip(b) {
        acc += &(x * y);
    }
    acc
}
