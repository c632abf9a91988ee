//! Hom-subalgebras, hom-ideals, center, derived algebra and quotients.

use serde::{Deserialize, Serialize};

use crate::check::{Check, Witness};
use crate::error::{Error, Result};
use crate::ratlin::{is_zero_vec, Matrix, Scalar, Subspace};
use crate::repth::spin_in;
use crate::superalgebra::{HomLieSuperalgebra, Parity};

/// Classification of a subspace. A hom-subalgebra is `alpha`-stable and
/// closed under the bracket; a hom-ideal is moreover closed under
/// bracketing with all of `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealVerdict {
    pub subspace: Subspace,
    /// Witness `[x, alpha(x)]` or `[x, y, [x, y]]`.
    pub is_subalgebra: Check,
    /// Fails with the subalgebra witness, or with `[x, e_j, [x, e_j]]`.
    pub is_hom_ideal: Check,
    /// Witness `[x, y, [x, y]]` with `[x, y] != 0`.
    pub is_abelian: Check,
}

fn check_ambient(g: &HomLieSuperalgebra, v: &Subspace) -> Result<()> {
    if v.ambient_dim() != g.dim() {
        return Err(Error::AmbientMismatch {
            left: g.dim(),
            right: v.ambient_dim(),
        });
    }
    Ok(())
}

/// Check `alpha(v) ⊆ v`, `[v, v] ⊆ v`, `[v, g] ⊆ v` and `[v, v] = 0` on
/// spanning sets.
pub fn classify_subspace(g: &HomLieSuperalgebra, v: &Subspace) -> Result<IdealVerdict> {
    check_ambient(g, v)?;
    let basis = v.basis_vectors();
    let alpha_bad = basis.iter().find_map(|x| {
        let ax = g.alpha().apply(x).expect("square twist");
        (!v.contains_vector(&ax)).then(|| Witness::Vectors(vec![x.clone(), ax]))
    });

    let mut closed_bad = None;
    let mut abelian_bad = None;
    for x in &basis {
        for y in &basis {
            let b = g.bracket_unchecked(x, y);
            if abelian_bad.is_none() && !is_zero_vec(&b) {
                abelian_bad = Some(Witness::Vectors(vec![x.clone(), y.clone(), b.clone()]));
            }
            if closed_bad.is_none() && !v.contains_vector(&b) {
                closed_bad = Some(Witness::Vectors(vec![x.clone(), y.clone(), b]));
            }
        }
    }
    let is_subalgebra = Check::from_witness(alpha_bad.or(closed_bad));

    let ideal_bad = basis.iter().find_map(|x| {
        (0..g.dim()).find_map(|j| {
            let e = g.basis_vector(j);
            let b = g.bracket_unchecked(x, &e);
            (!v.contains_vector(&b)).then(|| Witness::Vectors(vec![x.clone(), e, b]))
        })
    });
    let is_hom_ideal = match &is_subalgebra {
        Check::Fail(w) => Check::Fail(w.clone()),
        Check::Pass => Check::from_witness(ideal_bad),
    };

    Ok(IdealVerdict {
        subspace: v.clone(),
        is_subalgebra,
        is_hom_ideal,
        is_abelian: Check::from_witness(abelian_bad),
    })
}

/// `ad(e_i)` for every basis element, followed by `alpha`.
fn ideal_operators(g: &HomLieSuperalgebra) -> Vec<Matrix> {
    (0..g.dim()).map(|i| g.ad(i)).chain([g.alpha().clone()]).collect()
}

/// Least hom-ideal containing the generators: the spin of the generators
/// under every `ad(e_i)` and `alpha`.
pub fn ideal_closure(g: &HomLieSuperalgebra, generators: &[Vec<Scalar>]) -> Result<Subspace> {
    spin_in(g.dim(), &ideal_operators(g), generators)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealOp {
    Sum,
    Intersect,
    Bracket,
}

/// `I + J`, `I ∩ J` or `[I, J]` for hom-ideals `I`, `J`, together with the
/// classification of the result.
pub fn ideal_arithmetic(g: &HomLieSuperalgebra, i: &Subspace, j: &Subspace, op: IdealOp) -> Result<IdealVerdict> {
    for (name, s) in [("first", i), ("second", j)] {
        let v = classify_subspace(g, s)?;
        if let Check::Fail(w) = v.is_hom_ideal {
            return Err(Error::precondition(
                format!("the {name} argument is not a hom-ideal"),
                Some(w),
            ));
        }
    }
    let result = match op {
        IdealOp::Sum => i.sum(j)?,
        IdealOp::Intersect => i.intersect(j)?,
        IdealOp::Bracket => {
            let mut products = Vec::new();
            for x in i.basis_vectors() {
                for y in j.basis_vectors() {
                    products.push(g.bracket_unchecked(&x, &y));
                }
            }
            Subspace::span(g.dim(), products)?
        }
    };
    classify_subspace(g, &result)
}

/// `([g, g], Z(g))`.
pub fn derived_and_center(g: &HomLieSuperalgebra) -> (Subspace, Subspace) {
    let n = g.dim();
    let brackets = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| g.bracket_basis(i, j));
    let derived = Subspace::span(n, brackets).expect("brackets have the algebra dimension");
    let stacked = (0..n).fold(Matrix::zeros(0, n), |acc, j| {
        acc.vstack(&g.right_multiplication(j)).expect("same width")
    });
    (derived, crate::ratlin::kernel(&stacked))
}

fn diagonal_projector(n: usize, keep: impl Fn(usize) -> bool) -> Matrix {
    Matrix::from_fn(n, n, |r, c| {
        if r == c && keep(r) {
            crate::ratlin::int(1)
        } else {
            crate::ratlin::int(0)
        }
    })
}

/// Whether `v` is spanned by parity-homogeneous vectors.
pub fn is_parity_homogeneous(g: &HomLieSuperalgebra, v: &Subspace) -> bool {
    let p = diagonal_projector(g.dim(), |i| g.parity(i) == Parity::Even);
    v.is_invariant_under(&p).expect("square projector")
}

/// Whether `v` is spanned by degree-homogeneous vectors. Ungraded algebras
/// give `false`.
pub fn is_degree_homogeneous(g: &HomLieSuperalgebra, v: &Subspace) -> bool {
    let Some(deg) = g.zdegrees() else {
        return false;
    };
    g.degrees_present().into_iter().all(|d| {
        let p = diagonal_projector(g.dim(), |i| deg[i] == d);
        v.is_invariant_under(&p).expect("square projector")
    })
}

/// `g / I` on the cosets of the standard basis vectors that greedily
/// complete a basis of `I`, in basis order.
pub fn quotient(g: &HomLieSuperalgebra, ideal: &Subspace) -> Result<HomLieSuperalgebra> {
    let verdict = classify_subspace(g, ideal)?;
    if let Check::Fail(w) = verdict.is_hom_ideal {
        return Err(Error::precondition(
            "quotient by a subspace that is not a hom-ideal",
            Some(w),
        ));
    }
    if !is_parity_homogeneous(g, ideal) {
        return Err(Error::precondition(
            "quotient by a parity-inhomogeneous ideal",
            Some(Witness::Subspace(ideal.clone())),
        ));
    }
    let n = g.dim();
    let mut span = ideal.clone();
    let mut chosen = Vec::new();
    for k in 0..n {
        let e = g.basis_vector(k);
        if !span.contains_vector(&e) {
            span = span.sum(&Subspace::coordinate(n, [k]))?;
            chosen.push(k);
        }
    }
    let m = chosen.len();
    let d = ideal.dim();
    // columns: ideal basis, then the chosen standard vectors
    let mut columns = ideal.basis_vectors();
    columns.extend(chosen.iter().map(|&k| g.basis_vector(k)));
    let change = Matrix::from_columns(n, &columns)?;
    let inverse = change.inverse().expect("ideal basis plus complement is a basis");
    let project = |w: &[Scalar]| -> Vec<Scalar> {
        let c = inverse.apply(w).expect("square");
        c[d..].to_vec()
    };

    let mut brackets = Vec::new();
    for a in 0..m {
        for b in a..m {
            let w = project(&g.bracket_basis(chosen[a], chosen[b]));
            if !is_zero_vec(&w) {
                brackets.push((a, b, w));
            }
        }
    }
    let alpha_columns: Vec<Vec<Scalar>> = chosen.iter().map(|&k| project(&g.alpha().column(k))).collect();
    let alpha = Matrix::from_columns(m, &alpha_columns)?;
    let zdegree = if is_degree_homogeneous(g, ideal) {
        g.zdegrees().map(|deg| chosen.iter().map(|&k| deg[k]).collect())
    } else {
        None
    };
    HomLieSuperalgebra::from_brackets(
        format!("{}/I", g.name()),
        chosen.iter().map(|&k| g.label(k).to_string()).collect(),
        chosen.iter().map(|&k| g.parity(k)).collect(),
        zdegree,
        &brackets,
        alpha,
    )
}

/// Hom-ideals found by closing natural generating sets: zero, the whole
/// algebra, the center and derived algebra when they are hom-ideals, and
/// the closures of every basis element and every pair of basis elements.
pub fn candidate_ideals(g: &HomLieSuperalgebra) -> Result<Vec<Subspace>> {
    let n = g.dim();
    let (derived, center) = derived_and_center(g);
    let mut found: Vec<Subspace> = vec![Subspace::zero(n), Subspace::full(n)];
    let mut push = |s: Subspace| {
        if !found.contains(&s) {
            found.push(s);
        }
    };
    for s in [center, derived] {
        if classify_subspace(g, &s)?.is_hom_ideal.passed() {
            push(s);
        }
    }
    for i in 0..n {
        push(ideal_closure(g, &[g.basis_vector(i)])?);
        for j in i + 1..n {
            push(ideal_closure(g, &[g.basis_vector(i), g.basis_vector(j)])?);
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::ratlin::int;

    fn span(n: usize, idx: &[usize]) -> Subspace {
        Subspace::coordinate(n, idx.iter().copied())
    }

    /// Closure oracle: repeatedly add brackets with basis elements and
    /// alpha-images until the dimension stops growing.
    fn naive_closure(g: &HomLieSuperalgebra, gens: Vec<Vec<Scalar>>) -> Subspace {
        let n = g.dim();
        let mut s = Subspace::span(n, gens).unwrap();
        loop {
            let mut vecs = s.basis_vectors();
            for x in s.basis_vectors() {
                vecs.push(g.apply_alpha(&x).unwrap());
                for j in 0..n {
                    vecs.push(g.bracket(&g.basis_vector(j), &x).unwrap());
                }
            }
            let next = Subspace::span(n, vecs).unwrap();
            if next == s {
                return s;
            }
            s = next;
        }
    }

    #[test]
    fn affine_classification() {
        let g = catalog::affine();
        let v = classify_subspace(&g, &span(3, &[0])).unwrap();
        assert!(v.is_hom_ideal.passed() && v.is_abelian.passed());
        assert!(classify_subspace(&g, &Subspace::full(3)).unwrap().is_hom_ideal.passed());

        let v = classify_subspace(&g, &span(3, &[1])).unwrap();
        assert!(v.is_subalgebra.passed());
        let Check::Fail(Witness::Vectors(w)) = v.is_hom_ideal else {
            panic!("span(e2) is not an ideal")
        };
        // [e2, e1] = -e1
        assert_eq!(w[1], g.basis_vector(0));
        assert_eq!(w[2], vec![int(-1), int(0), int(0)]);
    }

    #[test]
    fn closures_match_naive_fixpoint() {
        let g = catalog::affine();
        assert!(ideal_closure(&g, &[]).unwrap().is_zero());
        let c = ideal_closure(&g, &[g.basis_vector(1)]).unwrap();
        assert_eq!(c, span(3, &[0, 1]));
        assert_eq!(c, naive_closure(&g, vec![g.basis_vector(1)]));
        let s = catalog::sl2();
        assert!(ideal_closure(&s, &[s.basis_vector(1)]).unwrap().is_full());
        for g in catalog::corpus() {
            for i in 0..g.dim() {
                let c = ideal_closure(&g, &[g.basis_vector(i)]).unwrap();
                assert_eq!(c, naive_closure(&g, vec![g.basis_vector(i)]));
                assert!(classify_subspace(&g, &c).unwrap().is_hom_ideal.passed());
                assert_eq!(ideal_closure(&g, &c.basis_vectors()).unwrap(), c);
            }
        }
    }

    #[test]
    fn affine_arithmetic() {
        let g = catalog::affine();
        let (i, j) = (span(3, &[0]), span(3, &[2]));
        let run = |op| ideal_arithmetic(&g, &i, &j, op).unwrap().subspace;
        assert_eq!(run(IdealOp::Sum), span(3, &[0, 2]));
        assert!(run(IdealOp::Intersect).is_zero());
        assert!(run(IdealOp::Bracket).is_zero());
        let same = ideal_arithmetic(&g, &i, &i, IdealOp::Intersect).unwrap();
        assert_eq!(same.subspace, i);
        let err = ideal_arithmetic(&g, &span(3, &[1]), &j, IdealOp::Sum).unwrap_err();
        assert!(err.witness().is_some());
    }

    #[test]
    fn derived_and_center_examples() {
        let (d, c) = derived_and_center(&catalog::abelian());
        assert!(d.is_zero() && c.is_full());
        let (d, c) = derived_and_center(&catalog::affine());
        assert_eq!(d, span(3, &[0]));
        assert_eq!(c, span(3, &[2]));
        let (d, c) = derived_and_center(&catalog::sl2());
        assert!(d.is_full() && c.is_zero());
    }

    #[test]
    fn quotient_examples() {
        let g = catalog::affine();
        assert_eq!(quotient(&g, &Subspace::zero(3)).unwrap().structure(), g.structure());
        let q = quotient(&g, &span(3, &[0])).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(q.is_abelian());
        assert_eq!(q.parities(), &[Parity::Even, Parity::Odd]);
        assert_eq!(quotient(&catalog::sl2(), &Subspace::full(3)).unwrap().dim(), 0);
        assert!(quotient(&g, &span(3, &[1])).is_err());
    }

    #[test]
    fn quotient_keeps_grading_of_graded_ideals() {
        let g = catalog::sl2_sum_sl2();
        let first = ideal_closure(&g, &[g.basis_vector(0)]).unwrap();
        assert_eq!(first, span(6, &[0, 1, 2]));
        let q = quotient(&g, &first).unwrap();
        assert_eq!(q.zdegrees(), Some(&[0, 1, -1][..]));
        assert_eq!(q.structure(), catalog::sl2_graded().structure());
    }

    #[test]
    fn mixed_parity_ideal_rejected() {
        // abelian: every subspace is an alpha-stable ideal
        let g = catalog::abelian();
        let mixed = Subspace::span(3, [vec![int(1), int(0), int(1)]]).unwrap();
        assert!(classify_subspace(&g, &mixed).unwrap().is_hom_ideal.passed());
        assert!(matches!(quotient(&g, &mixed), Err(Error::Precondition { .. })));
    }
}
