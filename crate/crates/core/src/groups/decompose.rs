//! Splitting a pseudo-reflection group into commuting factors.
//!
//! Reflections are partitioned by the transitive closure of
//! "do not commute, or move the same line". Each class generates a factor
//! acting on the span of its roots; the common fixed space is `V^W`.

use serde::Serialize;

use crate::algebra::linalg::{self, FieldMatrix, Vector};
use crate::algebra::{CycNum, Matrix};

use super::{classify_reflections, group_closure, GroupError, MatrixGroup, Reflection, DEFAULT_CLOSURE_BOUND};

#[derive(Clone, Debug)]
pub struct Factor {
    /// The factor acting on its own subspace, in coordinates of `basis`.
    pub group: MatrixGroup,
    /// Subgroup of the full group generated by this class, acting on `V`.
    pub subgroup: MatrixGroup,
    pub basis: Vec<Vector>,
    pub reflections: Vec<Reflection>,
}

#[derive(Clone, Debug)]
pub struct GroupDecomposition {
    pub factors: Vec<Factor>,
    pub fixed_subspace: Vec<Vector>,
    pub order: usize,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionCheck {
    pub direct_sum: bool,
    pub order_product: bool,
    pub cross_factor_commute: bool,
    pub acts_trivially_elsewhere: bool,
    pub faithful_restriction: bool,
}

impl DecompositionCheck {
    pub fn all_pass(&self) -> bool {
        self.direct_sum
            && self.order_product
            && self.cross_factor_commute
            && self.acts_trivially_elsewhere
            && self.faithful_restriction
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, i: usize) -> usize {
        let p = self.0[i];
        if p == i {
            return i;
        }
        let root = self.find(p);
        self.0[i] = root;
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

fn commute(a: &FieldMatrix, b: &FieldMatrix) -> bool {
    a.checked_mul(b).ok() == b.checked_mul(a).ok()
}

/// Matrix of `w` restricted to the invariant subspace spanned by `basis`.
fn restrict(w: &FieldMatrix, basis: &[Vector], conductor: u32) -> Result<FieldMatrix, GroupError> {
    let k = basis.len();
    let n = w.nrows();
    let b = Matrix::from_fn(n, k, |i, j| basis[j][i].clone());
    // k independent rows of B give a square system for the coordinates.
    let (_, rows) = linalg::rref(&b.transpose());
    let square = Matrix::from_fn(k, k, |i, j| b.get(rows[i], j).clone());
    let inv = linalg::inverse(&square)?;
    let mut cols = Vec::with_capacity(k);
    for v in basis {
        let img = w.mul_vec(v);
        let sub: Vector = rows.iter().map(|&r| img[r].clone()).collect();
        let coords = inv.mul_vec(&sub);
        let back = b.mul_vec(&coords);
        if back != img {
            return Err(GroupError::Algebra(crate::algebra::AlgebraError::Shape(
                "subspace is not invariant".into(),
            )));
        }
        cols.push(coords);
    }
    Ok(Matrix::from_fn(k, k, |i, j| cols[j][i].lift(conductor).expect("same field")))
}

/// Decomposes a group generated by pseudo-reflections.
pub fn decompose(g: &MatrixGroup) -> Result<GroupDecomposition, GroupError> {
    let refl = classify_reflections(g);
    let (n, conductor) = (g.n(), g.conductor());
    let elems: Vec<FieldMatrix> = refl.iter().map(|r| r.element.clone()).collect();
    let generated = if elems.is_empty() {
        1
    } else {
        group_closure(&elems, n, conductor, g.order().max(DEFAULT_CLOSURE_BOUND))?.order()
    };
    if generated != g.order() {
        return Err(GroupError::NotGeneratedByReflections { order: g.order(), generated });
    }

    let mut uf = UnionFind((0..refl.len()).collect());
    for i in 0..refl.len() {
        for j in i + 1..refl.len() {
            if !commute(&refl[i].element, &refl[j].element) || refl[i].same_moved_line(&refl[j]) {
                uf.union(i, j);
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![usize::MAX; refl.len()];
    for i in 0..refl.len() {
        let r = uf.find(i);
        if class_of[r] == usize::MAX {
            class_of[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[class_of[r]].push(i);
    }

    let mut factors = Vec::with_capacity(classes.len());
    for class in classes {
        let reflections: Vec<Reflection> = class.iter().map(|&i| refl[i].clone()).collect();
        let roots: Vec<Vector> = reflections.iter().map(|r| r.root.clone()).collect();
        let basis = linalg::span_basis(&roots);
        let gens: Vec<FieldMatrix> = reflections.iter().map(|r| r.element.clone()).collect();
        let subgroup = group_closure(&gens, n, conductor, g.order())?;
        let mut restricted = Vec::with_capacity(gens.len());
        for w in &gens {
            restricted.push(restrict(w, &basis, conductor)?);
        }
        let group = group_closure(&restricted, basis.len(), conductor, g.order())?;
        factors.push(Factor { group, subgroup, basis, reflections });
    }

    let fixed_subspace = if refl.is_empty() {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { CycNum::one(conductor) } else { CycNum::zero(conductor) }).collect())
            .collect()
    } else {
        let forms = Matrix::from_rows(refl.iter().map(|r| r.hyperplane.clone()).collect())?;
        linalg::nullspace(&forms)
    };

    Ok(GroupDecomposition { factors, fixed_subspace, order: g.order(), n })
}

impl GroupDecomposition {
    pub fn dimensions(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.basis.len()).collect()
    }

    pub fn orders(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.subgroup.order()).collect()
    }

    /// Re-derives the structural properties of the decomposition.
    pub fn check(&self) -> DecompositionCheck {
        let mut all: Vec<Vector> = self.factors.iter().flat_map(|f| f.basis.iter().cloned()).collect();
        all.extend(self.fixed_subspace.iter().cloned());
        let direct_sum = all.len() == self.n && linalg::rank_of(&all) == self.n;
        let order_product = self.orders().iter().product::<usize>() == self.order;
        let mut cross_factor_commute = true;
        let mut acts_trivially_elsewhere = true;
        for (i, fi) in self.factors.iter().enumerate() {
            for (j, fj) in self.factors.iter().enumerate() {
                if i == j {
                    continue;
                }
                for r in &fi.reflections {
                    if !fj.basis.iter().all(|v| r.element.mul_vec(v) == *v) {
                        acts_trivially_elsewhere = false;
                    }
                    if i < j && !fj.reflections.iter().all(|s| commute(&r.element, &s.element)) {
                        cross_factor_commute = false;
                    }
                }
            }
        }
        let faithful_restriction = self.factors.iter().all(|f| f.group.order() == f.subgroup.order());
        DecompositionCheck {
            direct_sum,
            order_product,
            cross_factor_commute,
            acts_trivially_elsewhere,
            faithful_restriction,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Family;

    #[test]
    fn s3_times_s2() {
        let s3 = Family::Symmetric { n: 3 }.build(100).unwrap();
        let s2 = Family::Symmetric { n: 2 }.build(100).unwrap();
        let g = s3.direct_product(&s2, 1000).unwrap();
        let d = decompose(&g).unwrap();
        let mut orders = d.orders();
        orders.sort();
        assert_eq!(orders, vec![2, 6]);
        let mut dims = d.dimensions();
        dims.sort();
        assert_eq!(dims, vec![1, 2]);
        assert_eq!(d.fixed_subspace.len(), 2);
        assert!(d.check().all_pass());
    }

    #[test]
    fn irreducible_s3() {
        let g = Family::Symmetric { n: 3 }.build(100).unwrap();
        let d = decompose(&g).unwrap();
        assert_eq!(d.factors.len(), 1);
        assert_eq!(d.factors[0].group.order(), 6);
        assert_eq!(d.fixed_subspace.len(), 1);
        let ones = vec![CycNum::one(1); 3];
        assert!(linalg::in_span(&ones, &d.fixed_subspace));
        assert!(d.check().all_pass());
    }

    #[test]
    fn trivial_and_cyclic() {
        let t = Family::Trivial { n: 2 }.build(10).unwrap();
        let d = decompose(&t).unwrap();
        assert!(d.factors.is_empty());
        assert_eq!(d.fixed_subspace.len(), 2);
        // both powers of diag(z, 1) move the same line and form one factor
        let c = Family::CyclicDiagonal { m: 4, n: 2 }.build(10).unwrap();
        let d = decompose(&c).unwrap();
        assert_eq!(d.orders(), vec![4]);
        assert!(d.check().all_pass());
    }

    #[test]
    fn b2_is_irreducible_and_rejects_rotations() {
        let d = decompose(&Family::TypeB { n: 2 }.build(100).unwrap()).unwrap();
        assert_eq!(d.orders(), vec![8]);
        let q = |x: i64| CycNum::from_int(1, x);
        let rot = Matrix::from_rows(vec![vec![q(0), q(-1)], vec![q(1), q(0)]]).unwrap();
        let g = group_closure(&[rot], 2, 1, 10).unwrap();
        assert!(matches!(decompose(&g), Err(GroupError::NotGeneratedByReflections { order: 4, generated: 1 })));
    }
}
