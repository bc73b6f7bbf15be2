//! Pseudo-reflections: classification, construction from hyperplane data,
//! and the commutation / invariant-subspace criteria.

use crate::algebra::linalg::{self, dot, normalize_first_nonzero, FieldMatrix, Vector};
use crate::algebra::{CycNum, Matrix};

use super::{GroupError, MatrixGroup};

/// A pseudo-reflection `g` with `g v = v - (1 - mu) L(v)/L(a) a`.
///
/// `root` spans the moved line `Im(Id - g)` and `hyperplane` is a covector
/// whose kernel is `Fix g`; both have first nonzero coordinate 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Reflection {
    pub element: FieldMatrix,
    /// Position in the group's element list, when classified from a group.
    pub index: Option<usize>,
    pub order: u32,
    pub mu: CycNum,
    pub root: Vector,
    pub hyperplane: Vector,
}

impl Reflection {
    /// Recognizes `g` as a pseudo-reflection (`rank(Id - g) = 1`).
    pub fn from_matrix(g: &FieldMatrix) -> Option<Reflection> {
        let n = g.nrows();
        let conductor = g.entries().iter().map(CycNum::conductor).max().unwrap_or(1);
        let id = Matrix::identity_like(n, &CycNum::one(conductor));
        let moved = Matrix::from_fn(n, n, |i, j| id.get(i, j) - g.get(i, j));
        if linalg::rank(&moved) != 1 {
            return None;
        }
        let col = (0..n).find(|&j| moved.column(j).iter().any(|c| !c.is_zero()))?;
        let root = normalize_first_nonzero(&moved.column(col));
        let row = (0..n).find(|&i| moved.row(i).iter().any(|c| !c.is_zero()))?;
        let hyperplane = normalize_first_nonzero(moved.row(row));
        let k = root.iter().position(|c| !c.is_zero())?;
        let mu = g.mul_vec(&root)[k].clone();
        let order = mu.root_of_unity_order()?;
        if order < 2 {
            return None;
        }
        Some(Reflection { element: g.clone(), index: None, order, mu, root, hyperplane })
    }

    /// `L_H(v)`.
    pub fn form(&self, v: &[CycNum]) -> CycNum {
        dot(&self.hyperplane, v)
    }

    pub fn fixes(&self, v: &[CycNum]) -> bool {
        self.form(v).is_zero()
    }

    /// Both reflections move the same line.
    pub fn same_moved_line(&self, other: &Reflection) -> bool {
        self.root == other.root
    }

    /// Rebuilds the matrix from `(L_H, a, mu)`.
    pub fn reconstruct(&self) -> Result<FieldMatrix, GroupError> {
        build_reflection(&self.hyperplane, &self.root, &self.mu)
    }
}

/// All pseudo-reflections of `g`, in element order.
pub fn classify_reflections(g: &MatrixGroup) -> Vec<Reflection> {
    let id = g.identity();
    g.elements()
        .iter()
        .enumerate()
        .filter(|(_, e)| **e != id)
        .filter_map(|(i, e)| {
            Reflection::from_matrix(e).map(|mut r| {
                r.index = Some(i);
                r
            })
        })
        .collect()
}

/// The matrix of `v -> v - (1 - mu) L(v)/L(a) a`.
pub fn build_reflection(form: &[CycNum], root: &[CycNum], mu: &CycNum) -> Result<FieldMatrix, GroupError> {
    let n = root.len();
    if form.len() != n {
        return Err(crate::algebra::AlgebraError::ArityMismatch { expected: n, found: form.len() }.into());
    }
    match mu.root_of_unity_order() {
        Some(k) if k >= 2 => {}
        _ => return Err(GroupError::InvalidEigenvalue),
    }
    let la = dot(form, root);
    if la.is_zero() {
        return Err(GroupError::RootInHyperplane);
    }
    let conductor = root.iter().chain(form).map(CycNum::conductor).max().unwrap_or(1).max(mu.conductor());
    let scale = &(&CycNum::one(conductor) - mu) / &la;
    Ok(Matrix::from_fn(n, n, |i, j| {
        let delta = if i == j { CycNum::one(conductor) } else { CycNum::zero(conductor) };
        &delta - &(&(&scale * &root[i]) * &form[j])
    }))
}

/// Sufficient condition for `rs = sr`: each root lies in the other's fixed hyperplane.
pub fn commuting_criterion(r: &Reflection, s: &Reflection) -> bool {
    s.fixes(&r.root) && r.fixes(&s.root)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubspaceVerdict {
    ContainedInFix,
    ContainsMovedLine,
    NotInvariant,
}

/// Classifies a subspace (given by a basis) against a pseudo-reflection:
/// it is invariant iff it lies in `Fix r` or contains the moved line.
pub fn invariant_subspace_check(basis: &[Vector], r: &Reflection) -> SubspaceVerdict {
    if basis.iter().all(|v| r.fixes(v)) {
        SubspaceVerdict::ContainedInFix
    } else if linalg::in_span(&r.root, basis) {
        SubspaceVerdict::ContainsMovedLine
    } else {
        SubspaceVerdict::NotInvariant
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{group_closure, Family};

    fn q(n: i64) -> CycNum {
        CycNum::from_int(1, n)
    }

    fn qv(v: &[i64]) -> Vector {
        v.iter().map(|&x| q(x)).collect()
    }

    fn maps_into_span(g: &FieldMatrix, basis: &[Vector]) -> bool {
        basis.iter().all(|b| linalg::in_span(&g.mul_vec(b), basis))
    }

    #[test]
    fn reflection_counts() {
        let s3 = Family::Symmetric { n: 3 }.build(1000).unwrap();
        assert_eq!(classify_reflections(&s3).len(), 3);
        let b2 = Family::TypeB { n: 2 }.build(1000).unwrap();
        assert_eq!(classify_reflections(&b2).len(), 4);
        let c3 = Family::CyclicDiagonal { m: 3, n: 2 }.build(1000).unwrap();
        let refl = classify_reflections(&c3);
        assert_eq!(refl.len(), 2);
        assert!(refl.iter().all(|r| r.order == 3));
    }

    #[test]
    fn classified_data_reconstructs_the_element() {
        for fam in [Family::TypeB { n: 3 }, Family::Imprimitive { m: 3, n: 2 }, Family::TypeD { n: 3 }] {
            let g = fam.build(1000).unwrap();
            for r in classify_reflections(&g) {
                assert_eq!(r.reconstruct().unwrap(), r.element);
                assert_eq!(r.element.mul_vec(&r.root), r.root.iter().map(|c| c * &r.mu).collect::<Vec<_>>());
                assert_eq!(r.mu.root_of_unity_order(), Some(r.order));
            }
        }
    }

    #[test]
    fn build_transposition_and_sign_change() {
        let swap = build_reflection(&qv(&[1, -1]), &qv(&[1, -1]), &q(-1)).unwrap();
        assert_eq!(swap, Matrix::from_rows(vec![qv(&[0, 1]), qv(&[1, 0])]).unwrap());
        let flip = build_reflection(&qv(&[1, 0, 0]), &qv(&[1, 0, 0]), &q(-1)).unwrap();
        assert_eq!(flip, Matrix::from_rows(vec![qv(&[-1, 0, 0]), qv(&[0, 1, 0]), qv(&[0, 0, 1])]).unwrap());
    }

    #[test]
    fn build_rejects_bad_data() {
        assert_eq!(build_reflection(&qv(&[1, -1]), &qv(&[1, 1]), &q(-1)).unwrap_err(), GroupError::RootInHyperplane);
        assert_eq!(build_reflection(&qv(&[1, 0]), &qv(&[1, 0]), &q(1)).unwrap_err(), GroupError::InvalidEigenvalue);
        assert_eq!(build_reflection(&qv(&[1, 0]), &qv(&[1, 0]), &q(2)).unwrap_err(), GroupError::InvalidEigenvalue);
    }

    #[test]
    fn build_then_classify_round_trip() {
        let z = CycNum::zeta(3);
        let form = vec![CycNum::one(3), z.clone()];
        let root = vec![CycNum::one(3), CycNum::from_int(3, 2)];
        let g = build_reflection(&form, &root, &z).unwrap();
        let r = Reflection::from_matrix(&g).unwrap();
        assert_eq!(r.mu, z);
        assert_eq!(r.root, normalize_first_nonzero(&root));
        assert_eq!(r.hyperplane, normalize_first_nonzero(&form));
        let grp = group_closure(&[g], 2, 3, 100).unwrap();
        assert_eq!(grp.order(), 3);
    }

    #[test]
    fn commuting_criterion_examples() {
        let s4 = Family::Symmetric { n: 4 }.build(1000).unwrap();
        let refl = classify_reflections(&s4);
        let find = |root: &[i64]| refl.iter().find(|r| r.root == qv(root)).unwrap().clone();
        let r12 = find(&[1, -1, 0, 0]);
        let r34 = find(&[0, 0, 1, -1]);
        let r23 = find(&[0, 1, -1, 0]);
        assert!(commuting_criterion(&r12, &r34));
        assert_eq!(
            r12.element.checked_mul(&r34.element).unwrap(),
            r34.element.checked_mul(&r12.element).unwrap()
        );
        assert!(!commuting_criterion(&r12, &r23));
        // sufficient, not necessary
        assert!(!commuting_criterion(&r12, &r12));
    }

    #[test]
    fn subspace_verdicts() {
        let s3 = Family::Symmetric { n: 3 }.build(1000).unwrap();
        let r = classify_reflections(&s3).into_iter().find(|r| r.root == qv(&[1, -1, 0])).unwrap();
        let fix = linalg::nullspace(&Matrix::from_rows(vec![r.hyperplane.clone()]).unwrap());
        assert_eq!(invariant_subspace_check(&fix, &r), SubspaceVerdict::ContainedInFix);
        assert_eq!(invariant_subspace_check(std::slice::from_ref(&r.root), &r), SubspaceVerdict::ContainsMovedLine);
        let e1 = vec![qv(&[1, 0, 0])];
        assert_eq!(invariant_subspace_check(&e1, &r), SubspaceVerdict::NotInvariant);
        for basis in [fix, vec![r.root.clone()], e1] {
            let verdict = invariant_subspace_check(&basis, &r);
            assert_eq!(maps_into_span(&r.element, &basis), verdict != SubspaceVerdict::NotInvariant);
        }
    }
}
