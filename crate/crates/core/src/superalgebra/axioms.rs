use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{koszul_sign, HomLieSuperalgebra};
use crate::check::{Check, Witness};
use crate::ratlin::{axpy, is_zero_vec, kernel, zero_vec, Scalar};

/// Results of the exhaustive axiom scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub parity_graded: Check,
    pub supersymmetric: Check,
    pub hom_jacobi: Check,
    pub multiplicative: Check,
    pub regular: Check,
    pub alpha_idempotent: Check,
    /// `None` when the algebra carries no Z-grading.
    pub z_grading_compatible: Option<Check>,
}

impl AxiomReport {
    /// The defining axioms hold (the twist-map properties are not axioms).
    pub fn is_hom_lie_superalgebra(&self) -> bool {
        self.parity_graded.passed()
            && self.supersymmetric.passed()
            && self.hom_jacobi.passed()
            && self.z_grading_compatible.as_ref().is_none_or(Check::passed)
    }
}

/// Scan every basis pair and ordered triple. The first failing index tuple in
/// lexicographic order is kept as the witness.
pub fn check_axioms(g: &HomLieSuperalgebra) -> AxiomReport {
    AxiomReport {
        parity_graded: parity_graded(g),
        supersymmetric: supersymmetric(g),
        hom_jacobi: hom_jacobi(g),
        multiplicative: multiplicative(g),
        regular: regular(g),
        alpha_idempotent: alpha_idempotent(g),
        z_grading_compatible: g.zdegrees().map(|_| z_compatible(g)),
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)))
}

fn parity_graded(g: &HomLieSuperalgebra) -> Check {
    let n = g.dim();
    let bad = pairs(n).find_map(|(i, j)| {
        let target = g.parity(i) + g.parity(j);
        (0..n)
            .find(|&k| !g.structure_constant(i, j, k).is_zero() && g.parity(k) != target)
            .map(|k| Witness::Triple(i, j, k))
    });
    Check::from_witness(bad)
}

fn supersymmetric(g: &HomLieSuperalgebra) -> Check {
    let n = g.dim();
    let bad = pairs(n).find(|&(i, j)| {
        let sign = -koszul_sign(g.parity(i), g.parity(j));
        (0..n).any(|k| g.structure_constant(j, i, k) != &(&sign * g.structure_constant(i, j, k)))
    });
    Check::from_witness(bad.map(|(i, j)| Witness::Pair(i, j)))
}

/// Signed cyclic sum
/// `(-1)^{|x||z|}[a(x),[y,z]] + (-1)^{|y||x|}[a(y),[z,x]] + (-1)^{|z||y|}[a(z),[x,y]]`
/// for basis elements `x, y, z`.
pub(crate) fn hom_jacobiator(g: &HomLieSuperalgebra, x: usize, y: usize, z: usize) -> Vec<Scalar> {
    let n = g.dim();
    let alpha = g.alpha();
    let mut out = zero_vec(n);
    for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
        let inner = g.bracket_basis(b, c);
        if is_zero_vec(&inner) {
            continue;
        }
        let term = g.bracket_unchecked(&alpha.column(a), &inner);
        axpy(&mut out, &koszul_sign(g.parity(a), g.parity(c)), &term);
    }
    out
}

fn hom_jacobi(g: &HomLieSuperalgebra) -> Check {
    let n = g.dim();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if !is_zero_vec(&hom_jacobiator(g, x, y, z)) {
                    return Check::Fail(Witness::Triple(x, y, z));
                }
            }
        }
    }
    Check::Pass
}

fn multiplicative(g: &HomLieSuperalgebra) -> Check {
    let alpha = g.alpha();
    let bad = pairs(g.dim()).find(|&(i, j)| {
        let lhs = alpha.apply(&g.bracket_basis(i, j)).expect("square twist");
        let rhs = g.bracket_unchecked(&alpha.column(i), &alpha.column(j));
        lhs != rhs
    });
    Check::from_witness(bad.map(|(i, j)| Witness::Pair(i, j)))
}

fn regular(g: &HomLieSuperalgebra) -> Check {
    let k = kernel(g.alpha());
    Check::from_witness(k.basis_vectors().into_iter().next().map(Witness::Vector))
}

fn alpha_idempotent(g: &HomLieSuperalgebra) -> Check {
    let alpha = g.alpha();
    let square = alpha * alpha;
    let bad = (0..g.dim()).find(|&j| square.column(j) != alpha.column(j));
    Check::from_witness(bad.map(Witness::Basis))
}

fn z_compatible(g: &HomLieSuperalgebra) -> Check {
    let n = g.dim();
    let bad = pairs(n).find_map(|(i, j)| {
        let target = g.degree(i)? + g.degree(j)?;
        (0..n)
            .find(|&k| !g.structure_constant(i, j, k).is_zero() && g.degree(k) != Some(target))
            .map(|k| Witness::Triple(i, j, k))
    });
    Check::from_witness(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::ratlin::Matrix;

    /// `[x,[y,z]] - [[x,y],z] - (-1)^{|x||y|}[y,[x,z]]` on basis elements.
    fn classical_jacobiator(g: &HomLieSuperalgebra, x: usize, y: usize, z: usize) -> Vec<Scalar> {
        let e = |i| g.basis_vector(i);
        let a = g.bracket(&e(x), &g.bracket_basis(y, z)).unwrap();
        let b = g.bracket(&g.bracket_basis(x, y), &e(z)).unwrap();
        let c = g.bracket(&e(y), &g.bracket_basis(x, z)).unwrap();
        let s = koszul_sign(g.parity(x), g.parity(y));
        a.iter().zip(&b).zip(&c).map(|((a, b), c)| a - b - &s * c).collect()
    }

    #[test]
    fn affine_with_identity_and_with_killed_odd_part() {
        for g in [catalog::affine(), catalog::affine_twisted()] {
            let r = check_axioms(&g);
            assert!(r.parity_graded.passed());
            assert!(r.supersymmetric.passed());
            assert!(r.hom_jacobi.passed());
            assert!(r.multiplicative.passed());
        }
        assert!(check_axioms(&catalog::affine()).regular.passed());
        assert!(check_axioms(&catalog::affine_twisted()).regular.failed());
    }

    #[test]
    fn non_idempotent_twist_reports_e2() {
        // alpha(e1)=e1, alpha(e2)=e1+e2, alpha(e3)=0; squaring by hand gives
        // alpha^2(e2) = 2e1 + e2.
        let g = catalog::affine_shear();
        let r = check_axioms(&g);
        assert!(r.multiplicative.passed());
        assert_eq!(r.alpha_idempotent, Check::Fail(Witness::Basis(1)));
        let sq = g.alpha() * g.alpha();
        assert_eq!(
            sq.column(1),
            vec![crate::ratlin::int(2), crate::ratlin::int(1), crate::ratlin::int(0)]
        );
    }

    #[test]
    fn identity_twist_matches_classical_super_jacobi() {
        let mut broken = catalog::sl2();
        // scale one bracket to break Jacobi
        let n = broken.dim();
        let mut s = broken.structure().to_vec();
        let (h, e) = (0, 1);
        for k in 0..n {
            s[(h * n + e) * n + k] *= crate::ratlin::int(3);
            s[(e * n + h) * n + k] *= crate::ratlin::int(3);
        }
        broken = HomLieSuperalgebra::from_structure(
            "broken",
            broken.names().to_vec(),
            broken.parities().to_vec(),
            None,
            s,
            Matrix::identity(n),
        )
        .unwrap();
        for g in catalog::corpus().into_iter().chain([broken]) {
            if g.alpha() != &Matrix::identity(g.dim()) {
                continue;
            }
            let n = g.dim();
            let classical = (0..n)
                .flat_map(|x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))))
                .all(|(x, y, z)| is_zero_vec(&classical_jacobiator(&g, x, y, z)));
            assert_eq!(check_axioms(&g).hom_jacobi.passed(), classical, "{}", g.name());
        }
    }

    #[test]
    fn flags_are_basis_order_independent() {
        for g in catalog::corpus() {
            let n = g.dim();
            let order: Vec<usize> = (0..n).rev().collect();
            let p = g.permuted(&order).unwrap();
            let (a, b) = (check_axioms(&g), check_axioms(&p));
            assert_eq!(a.hom_jacobi.passed(), b.hom_jacobi.passed());
            assert_eq!(a.multiplicative.passed(), b.multiplicative.passed());
            assert_eq!(a.regular.passed(), b.regular.passed());
            assert_eq!(a.alpha_idempotent.passed(), b.alpha_idempotent.passed());
        }
    }

    #[test]
    fn grading_compatibility_flag() {
        let g = catalog::sl2_graded();
        assert_eq!(check_axioms(&g).z_grading_compatible, Some(Check::Pass));
        let bad = g.with_grading(Some(vec![0, 1, 1])).unwrap();
        assert!(check_axioms(&bad).z_grading_compatible.unwrap().failed());
        assert_eq!(check_axioms(&catalog::sl2()).z_grading_compatible, None);
    }
}
