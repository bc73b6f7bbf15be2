//! Experimental degree-by-degree search for basic invariants.
//!
//! Monomials of each degree are averaged over the group and a candidate is
//! kept when it raises the rank of the Jacobian at sample points. Nothing
//! guarantees the result generates the invariant ring; `complete` only
//! records whether the degree product matches the group order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::linalg::{self, FieldMatrix};
use crate::algebra::{CycNum, MPoly, Matrix, Monomial};
use crate::groups::{reynolds, MatrixGroup};

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub invariants: Vec<MPoly>,
    pub complete: bool,
}

fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn go(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if cur.len() == n - 1 {
            cur.push(left);
            out.push(Monomial(cur.clone()));
            cur.pop();
            return;
        }
        for k in (0..=left).rev() {
            cur.push(k);
            go(n, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, d, &mut Vec::new(), &mut out);
    out
}

fn jacobian_rank(polys: &[MPoly], points: &[Vec<CycNum>]) -> usize {
    if polys.is_empty() {
        return 0;
    }
    let n = polys[0].nvars();
    let partials: Vec<Vec<MPoly>> = polys.iter().map(|p| (0..n).map(|j| p.partial(j)).collect()).collect();
    points
        .iter()
        .map(|pt| {
            let m: FieldMatrix = Matrix::from_fn(polys.len(), n, |i, j| partials[i][j].eval(pt));
            linalg::rank(&m)
        })
        .max()
        .unwrap_or(0)
}

/// Searches invariants up to `max_degree`, deterministic in `seed`.
pub fn search_invariants(g: &MatrixGroup, max_degree: u32, seed: u64) -> SearchOutcome {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Vec<CycNum>> = (0..3)
        .map(|_| (0..n).map(|_| CycNum::from_int(g.conductor(), rng.gen_range(-9..=9))).collect())
        .collect();
    let mut found: Vec<MPoly> = Vec::new();
    'degrees: for d in 1..=max_degree {
        for m in monomials_of_degree(n, d) {
            let avg = reynolds(g, &MPoly::monomial(m, CycNum::one(g.conductor())).extend_vars(n));
            if avg.is_zero() {
                continue;
            }
            let mut trial = found.clone();
            trial.push(avg.clone());
            if jacobian_rank(&trial, &points) > found.len() {
                found.push(avg);
                if found.len() == n {
                    break 'degrees;
                }
            }
        }
    }
    let product: usize = found.iter().map(|p| p.degree().unwrap_or(0) as usize).product();
    SearchOutcome { complete: found.len() == n && product == g.order(), invariants: found }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{is_invariant, Family};
    use crate::invariants::build_invariant_system;

    #[test]
    fn recovers_degrees_for_small_groups() {
        for (fam, degs) in [
            (Family::Symmetric { n: 3 }, vec![1, 2, 3]),
            (Family::TypeB { n: 2 }, vec![2, 4]),
            (Family::CyclicDiagonal { m: 3, n: 2 }, vec![1, 3]),
        ] {
            let g = fam.build(100).unwrap();
            let out = search_invariants(&g, 6, 7);
            assert!(out.complete, "{}", fam.label());
            let mut got: Vec<u32> = out.invariants.iter().map(|p| p.degree().unwrap()).collect();
            got.sort();
            assert_eq!(got, degs);
            assert!(out.invariants.iter().all(|p| is_invariant(&g, p)));
            assert!(build_invariant_system(&g, Some(&out.invariants)).is_ok());
        }
    }
}
