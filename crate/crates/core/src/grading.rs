//! Z-grading diagnostics: compatibility, consistency, transitivity,
//! irreducibility of `g_0` on `g_{-1}`, simplicity and the structural
//! implications relating them.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::check::{Check, Witness};
use crate::error::{Error, Result};
use crate::ratlin::{int, kernel, unit, Matrix, Scalar, Subspace};
use crate::repth::{irreducible, Echelon, IrreducibilityVerdict};
use crate::structure::derived_and_center;
use crate::superalgebra::{HomLieSuperalgebra, Parity};

/// Grading diagnostics. Fields beyond `compatible` and `consistent` are
/// `None` when they were not requested or their preconditions fail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingReport {
    /// Brackets add degrees and `alpha` preserves them. Witness: a triple
    /// `(i, j, k)` with `c[i][j][k] != 0`, or a note about `alpha`.
    pub compatible: Check,
    /// `|x| = deg(x) mod 2` on every basis element; witness: the element.
    pub consistent: Check,
    pub dims_per_degree: BTreeMap<i64, usize>,
    /// Least and greatest degree with a nonzero piece.
    pub degree_range: Option<(i64, i64)>,
    pub transitive: Option<Check>,
    pub bitransitive: Option<Check>,
    pub graded_irreducible: Option<IrreducibilityVerdict>,
    pub local_generates: Option<Check>,
    pub simple: Option<SimplicityReport>,
}

fn degrees(g: &HomLieSuperalgebra) -> Result<&[i64]> {
    g.zdegrees().ok_or(Error::MissingGrading)
}

/// Compatibility and consistency only.
pub fn check_grading(g: &HomLieSuperalgebra) -> Result<GradingReport> {
    let deg = degrees(g)?;
    let n = g.dim();
    let mut compatible = Check::Pass;
    'scan: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if !g.structure_constant(i, j, k).is_zero() && deg[k] != deg[i] + deg[j] {
                    compatible = Check::Fail(Witness::Triple(i, j, k));
                    break 'scan;
                }
            }
        }
    }
    if compatible.passed() {
        if let Some((k, j)) = (0..n)
            .flat_map(|j| (0..n).map(move |k| (k, j)))
            .find(|&(k, j)| !g.alpha().get(k, j).is_zero() && deg[k] != deg[j])
        {
            compatible = Check::Fail(Witness::Note(format!(
                "alpha({}) has a component on {} of another degree",
                g.label(j),
                g.label(k)
            )));
        }
    }
    let consistent = Check::from_witness(
        (0..n)
            .find(|&i| g.parity(i) != Parity::of_degree(deg[i]))
            .map(Witness::Basis),
    );
    let mut dims_per_degree = BTreeMap::new();
    for &d in deg {
        *dims_per_degree.entry(d).or_insert(0) += 1;
    }
    let degree_range = dims_per_degree
        .keys()
        .next()
        .map(|&lo| (lo, *dims_per_degree.keys().next_back().expect("nonempty")));
    Ok(GradingReport {
        compatible,
        consistent,
        dims_per_degree,
        degree_range,
        transitive: None,
        bitransitive: None,
        graded_irreducible: None,
        local_generates: None,
        simple: None,
    })
}

/// Every diagnostic whose preconditions hold.
pub fn grading_report(g: &HomLieSuperalgebra) -> Result<GradingReport> {
    let mut report = check_grading(g)?;
    if report.compatible.failed() {
        return Ok(report);
    }
    let t = transitivity(g)?;
    report.transitive = Some(t.transitive);
    report.bitransitive = Some(t.bitransitive);
    report.graded_irreducible = if g.degree_indices(-1).is_empty() {
        None
    } else {
        Some(graded_irreducible(g)?)
    };
    report.local_generates = Some(local_generates(g)?);
    report.simple = Some(is_simple(g));
    Ok(report)
}

fn require_compatible(g: &HomLieSuperalgebra) -> Result<&[i64]> {
    let deg = degrees(g)?;
    if let Check::Fail(w) = check_grading(g)?.compatible {
        return Err(Error::precondition("the grading is not compatible", Some(w)));
    }
    Ok(deg)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transitivity {
    /// Witness: a nonzero `a` in some `g_i`, `i >= 0`, with `[a, g_{-1}] = 0`.
    pub transitive: Check,
    /// Fails with the transitivity witness, or with a nonzero `a` in some
    /// `g_i`, `i <= 0`, with `[a, g_1] = 0`.
    pub bitransitive: Check,
}

/// Nonzero `a` in `span(source)` with `[a, e_t] = 0` for every `t` in
/// `targets`, as a full coordinate vector.
fn annihilated(g: &HomLieSuperalgebra, source: &[usize], targets: &[usize]) -> Option<Vec<Scalar>> {
    if source.is_empty() {
        return None;
    }
    let n = g.dim();
    let stacked = targets.iter().fold(Matrix::zeros(0, source.len()), |acc, &t| {
        let block = Matrix::from_fn(n, source.len(), |k, c| g.structure_constant(source[c], t, k).clone());
        acc.vstack(&block).expect("same width")
    });
    let k = kernel(&stacked);
    k.basis_vectors().into_iter().next().map(|v| {
        let mut full = vec![Scalar::zero(); n];
        for (c, x) in v.into_iter().enumerate() {
            full[source[c]] = x;
        }
        full
    })
}

pub fn transitivity(g: &HomLieSuperalgebra) -> Result<Transitivity> {
    require_compatible(g)?;
    let present = g.degrees_present();
    let minus = g.degree_indices(-1);
    let plus = g.degree_indices(1);
    let transitive = Check::from_witness(
        present
            .iter()
            .filter(|&&d| d >= 0)
            .find_map(|&d| annihilated(g, &g.degree_indices(d), &minus))
            .map(Witness::Vector),
    );
    let lower = present
        .iter()
        .filter(|&&d| d <= 0)
        .find_map(|&d| annihilated(g, &g.degree_indices(d), &plus))
        .map(Witness::Vector);
    let bitransitive = transitive.clone().and(Check::from_witness(lower));
    Ok(Transitivity {
        transitive,
        bitransitive,
    })
}

/// Irreducibility of the action of `g_0` on `g_{-1}`. The verdict is in
/// coordinates of `g_{-1}`, ordered as in the basis.
pub fn graded_irreducible(g: &HomLieSuperalgebra) -> Result<IrreducibilityVerdict> {
    require_compatible(g)?;
    let minus = g.degree_indices(-1);
    if minus.is_empty() {
        return Err(Error::precondition("g_{-1} is zero", None));
    }
    let ops = action_on(g, &g.degree_indices(0), &minus);
    irreducible(&ops, minus.len())
}

/// Matrices of `ad(e_z)` restricted to `span(target)` for each `z` in
/// `acting`; the target must be stable.
fn action_on(g: &HomLieSuperalgebra, acting: &[usize], target: &[usize]) -> Vec<Matrix> {
    acting
        .iter()
        .map(|&z| {
            Matrix::from_fn(target.len(), target.len(), |r, c| {
                g.structure_constant(z, target[c], target[r]).clone()
            })
        })
        .collect()
}

/// Least subalgebra containing `seed`, closed under brackets.
fn generated_subalgebra(g: &HomLieSuperalgebra, seed: Vec<Vec<Scalar>>) -> Subspace {
    let n = g.dim();
    let mut echelon = Echelon::new(n);
    let mut basis: Vec<Vec<Scalar>> = Vec::new();
    for v in seed {
        if echelon.insert(&v) {
            basis.push(v);
        }
    }
    let mut done = 0;
    while done < basis.len() {
        let x = basis[done].clone();
        for j in 0..=done {
            let b = g.bracket_unchecked(&x, &basis[j]);
            if echelon.insert(&b) {
                basis.push(b);
            }
        }
        done += 1;
    }
    echelon.subspace()
}

/// Whether `g_{-1} ⊕ g_0 ⊕ g_1` generates `g`; witness: the generated
/// subalgebra.
pub fn local_generates(g: &HomLieSuperalgebra) -> Result<Check> {
    let deg = degrees(g)?;
    let n = g.dim();
    let seed = (0..n).filter(|&i| deg[i].abs() <= 1).map(|i| unit(n, i)).collect();
    let s = generated_subalgebra(g, seed);
    Ok(if s.is_full() {
        Check::Pass
    } else {
        Check::Fail(Witness::Subspace(s))
    })
}

/// Outcome of the simplicity test under one notion of ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicityVerdict {
    /// `None` when the search was inconclusive.
    pub simple: Option<bool>,
    pub derived_nonzero: bool,
    /// A proper nonzero hom-ideal of the kind tested.
    pub witness: Option<Subspace>,
    pub certificate: Option<String>,
    pub reason: String,
}

/// Simplicity with respect to parity-homogeneous hom-ideals, and, when a
/// compatible grading is present, with respect to graded ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicityReport {
    pub ungraded: SimplicityVerdict,
    pub graded: Option<SimplicityVerdict>,
}

impl SimplicityReport {
    /// The graded verdict when there is one, else the ungraded one.
    pub fn simple(&self) -> Option<bool> {
        self.graded.as_ref().unwrap_or(&self.ungraded).simple
    }

    pub fn verdict(&self) -> &SimplicityVerdict {
        self.graded.as_ref().unwrap_or(&self.ungraded)
    }
}

fn projector(n: usize, keep: impl Fn(usize) -> bool) -> Matrix {
    Matrix::from_fn(n, n, |r, c| if r == c && keep(r) { int(1) } else { int(0) })
}

fn not_simple(witness: Option<Subspace>, reason: &str) -> SimplicityVerdict {
    SimplicityVerdict {
        simple: Some(false),
        derived_nonzero: true,
        witness,
        certificate: None,
        reason: reason.into(),
    }
}

fn simplicity(g: &HomLieSuperalgebra, graded: bool) -> SimplicityVerdict {
    let n = g.dim();
    let (derived, center) = derived_and_center(g);
    if derived.is_zero() {
        return SimplicityVerdict {
            simple: Some(false),
            derived_nonzero: false,
            witness: None,
            certificate: None,
            reason: "[g, g] = 0".into(),
        };
    }
    let alpha = g.alpha();
    if !center.is_zero() && center.is_invariant_under(alpha).expect("square twist") {
        return not_simple(Some(center), "the center is a proper hom-ideal");
    }
    if !derived.is_full() && derived.is_invariant_under(alpha).expect("square twist") {
        return not_simple(Some(derived), "[g, g] is a proper hom-ideal");
    }
    let mut ops: Vec<Matrix> = (0..n).map(|i| g.ad(i)).collect();
    ops.push(alpha.clone());
    ops.push(projector(n, |i| g.parity(i) == Parity::Even));
    if graded {
        let deg = g.zdegrees().expect("graded");
        for d in g.degrees_present() {
            ops.push(projector(n, |i| deg[i] == d));
        }
    }
    match irreducible(&ops, n).expect("operators are square of the algebra dimension") {
        IrreducibilityVerdict::Irreducible { certificate } => SimplicityVerdict {
            simple: Some(true),
            derived_nonzero: true,
            witness: None,
            certificate: Some(certificate),
            reason: "no proper nonzero hom-ideal".into(),
        },
        IrreducibilityVerdict::Reducible { witness } => {
            not_simple(Some(witness), "invariant subspace under ad and alpha")
        }
        IrreducibilityVerdict::Inconclusive { reason } => SimplicityVerdict {
            simple: None,
            derived_nonzero: true,
            witness: None,
            certificate: None,
            reason,
        },
    }
}

/// Simplicity: `[g, g] != 0` and no proper nonzero hom-ideal. A hom-ideal
/// is a subspace invariant under every `ad(e_i)`, `alpha` and the parity
/// projection (and the degree projections for graded ideals), so the
/// verdict comes from the invariant-subspace search.
pub fn is_simple(g: &HomLieSuperalgebra) -> SimplicityReport {
    let graded = g.zdegrees().is_some() && check_grading(g).map(|r| r.compatible.passed()).unwrap_or(false);
    SimplicityReport {
        ungraded: simplicity(g, false),
        graded: graded.then(|| simplicity(g, true)),
    }
}

/// Hypotheses and conclusions of one structural implication evaluated on
/// an instance. `None` marks a value that could not be decided.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Implication {
    /// Standing assumptions of the statement hold.
    pub applicable: bool,
    pub hypotheses: BTreeMap<String, Option<bool>>,
    pub conclusions: BTreeMap<String, Option<bool>>,
    /// All hypotheses true and some conclusion false.
    pub alarm: bool,
}

impl Implication {
    fn new(applicable: bool, hypotheses: Vec<(&str, Option<bool>)>, conclusions: Vec<(&str, Option<bool>)>) -> Self {
        let hypotheses: BTreeMap<String, Option<bool>> =
            hypotheses.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        let conclusions: BTreeMap<String, Option<bool>> =
            conclusions.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        let alarm = applicable
            && hypotheses.values().all(|v| *v == Some(true))
            && conclusions.values().any(|v| *v == Some(false));
        Implication {
            applicable,
            hypotheses,
            conclusions,
            alarm,
        }
    }

    fn inapplicable() -> Self {
        Implication::new(false, Vec::new(), Vec::new())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralReport {
    /// Simple and generated by the local part implies bitransitive.
    pub bitransitivity: Implication,
    /// Faithful irreducible action of the even part on the odd part with
    /// `[g_odd, g_odd] = g_even != 0` implies simple.
    pub odd_action: Implication,
    /// For gradings starting at `-1` with `g_{-1} != 0`: simple implies
    /// transitive, irreducible, `[g_{-1}, g_1] = g_0` and `g_0, g_1 != 0`.
    pub simple_necessary: Implication,
    /// For gradings starting at `-1` with `g_{-1} != 0`: `g_1 != 0`,
    /// transitive, irreducible and `[g_n, g_1] = g_{n+1}` for `n >= -1`
    /// implies simple.
    pub simple_sufficient: Implication,
}

impl StructuralReport {
    pub fn alarms(&self) -> Vec<&'static str> {
        [
            ("bitransitivity", &self.bitransitivity),
            ("odd_action", &self.odd_action),
            ("simple_necessary", &self.simple_necessary),
            ("simple_sufficient", &self.simple_sufficient),
        ]
        .into_iter()
        .filter(|(_, i)| i.alarm)
        .map(|(name, _)| name)
        .collect()
    }
}

fn span_of_brackets(g: &HomLieSuperalgebra, left: &[usize], right: &[usize]) -> Subspace {
    let products = left
        .iter()
        .flat_map(|&i| right.iter().map(move |&j| (i, j)))
        .map(|(i, j)| g.bracket_basis(i, j));
    Subspace::span(g.dim(), products).expect("brackets have the algebra dimension")
}

fn odd_action(g: &HomLieSuperalgebra, simple_ungraded: Option<bool>) -> Implication {
    let n = g.dim();
    let even: Vec<usize> = (0..n).filter(|&i| g.parity(i) == Parity::Even).collect();
    let odd: Vec<usize> = (0..n).filter(|&i| g.parity(i) == Parity::Odd).collect();
    let ops = action_on(g, &even, &odd);
    let faithful = if odd.is_empty() {
        even.is_empty()
    } else {
        let columns: Vec<Vec<Scalar>> = ops.iter().map(|m| m.entries().to_vec()).collect();
        Matrix::from_columns(odd.len() * odd.len(), &columns)
            .map(|m| m.rank() == even.len())
            .unwrap_or(false)
    };
    let irreducible_action = if odd.is_empty() {
        Some(false)
    } else {
        match irreducible(&ops, odd.len()).expect("restricted operators are square") {
            IrreducibilityVerdict::Irreducible { .. } => Some(true),
            IrreducibilityVerdict::Reducible { .. } => Some(false),
            IrreducibilityVerdict::Inconclusive { .. } => None,
        }
    };
    let odd_square = span_of_brackets(g, &odd, &odd) == Subspace::coordinate(n, even.iter().copied());
    Implication::new(
        true,
        vec![
            ("even_part_nonzero", Some(!even.is_empty())),
            ("faithful", Some(faithful)),
            ("irreducible", irreducible_action),
            ("odd_brackets_span_even_part", Some(odd_square)),
        ],
        vec![("simple", simple_ungraded)],
    )
}

fn verdict_bool(v: &IrreducibilityVerdict) -> Option<bool> {
    match v {
        IrreducibilityVerdict::Irreducible { .. } => Some(true),
        IrreducibilityVerdict::Reducible { .. } => Some(false),
        IrreducibilityVerdict::Inconclusive { .. } => None,
    }
}

/// Evaluate the structural implications on `g`.
pub fn structural_criteria(g: &HomLieSuperalgebra) -> StructuralReport {
    let simplicity = is_simple(g);
    let odd_action = odd_action(g, simplicity.ungraded.simple);
    let Some(report) = grading_report(g).ok().filter(|r| r.compatible.passed()) else {
        return StructuralReport {
            bitransitivity: Implication::inapplicable(),
            odd_action,
            simple_necessary: Implication::inapplicable(),
            simple_sufficient: Implication::inapplicable(),
        };
    };
    let simple = simplicity.simple();
    let transitive = report.transitive.as_ref().map(Check::passed);
    let bitransitive = report.bitransitive.as_ref().map(Check::passed);
    let local = report.local_generates.as_ref().map(Check::passed);
    let bitransitivity = Implication::new(
        true,
        vec![("simple", simple), ("local_part_generates", local)],
        vec![("bitransitive", bitransitive)],
    );

    let n = g.dim();
    let minus = g.degree_indices(-1);
    let zero = g.degree_indices(0);
    let plus = g.degree_indices(1);
    let starts_at_minus_one = report.degree_range.is_some_and(|(lo, _)| lo == -1);
    let applicable = starts_at_minus_one && !minus.is_empty();
    let irreducible = report.graded_irreducible.as_ref().and_then(verdict_bool);
    let bracket_fills_zero = span_of_brackets(g, &minus, &plus) == Subspace::coordinate(n, zero.iter().copied());
    let simple_necessary = Implication::new(
        applicable,
        vec![("simple", simple)],
        vec![
            ("transitive", transitive),
            ("irreducible", irreducible),
            ("minus_plus_brackets_span_g0", Some(bracket_fills_zero)),
            ("g0_nonzero", Some(!zero.is_empty())),
            ("g1_nonzero", Some(!plus.is_empty())),
        ],
    );
    let top = report.degree_range.map_or(0, |(_, hi)| hi);
    let generated_by_g1 = (-1..top)
        .all(|d| span_of_brackets(g, &g.degree_indices(d), &plus) == Subspace::coordinate(n, g.degree_indices(d + 1)));
    let simple_sufficient = Implication::new(
        applicable,
        vec![
            ("g1_nonzero", Some(!plus.is_empty())),
            ("transitive", transitive),
            ("irreducible", irreducible),
            ("g1_generates_positive_part", Some(generated_by_g1)),
        ],
        vec![("simple", simple)],
    );
    StructuralReport {
        bitransitivity,
        odd_action,
        simple_necessary,
        simple_sufficient,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::ratlin::Matrix;

    fn abelian_graded() -> HomLieSuperalgebra {
        HomLieSuperalgebra::from_brackets(
            "ab",
            vec!["u".into(), "v".into()],
            vec![Parity::Even, Parity::Even],
            Some(vec![-1, 0]),
            &[],
            Matrix::identity(2),
        )
        .unwrap()
    }

    #[test]
    fn compatibility_and_consistency() {
        let r = check_grading(&catalog::sl2_graded()).unwrap();
        assert!(r.compatible.passed());
        assert!(r.consistent.failed());
        let h = check_grading(&catalog::heisenberg_super()).unwrap();
        assert!(h.compatible.passed() && h.consistent.passed());
        assert!(matches!(check_grading(&catalog::sl2()), Err(Error::MissingGrading)));
        let flat = catalog::sl2().with_grading(Some(vec![0, 0, 0])).unwrap();
        let r = check_grading(&flat).unwrap();
        assert!(r.compatible.passed() && r.consistent.passed());
        assert_eq!(r.degree_range, Some((0, 0)));
    }

    #[test]
    fn alpha_must_preserve_degree() {
        let a = abelian_graded()
            .with_alpha(Matrix::from_i64(2, 2, &[1, 1, 0, 1]))
            .unwrap();
        assert!(check_grading(&a).unwrap().compatible.failed());
    }

    #[test]
    fn transitivity_examples() {
        let t = transitivity(&catalog::sl2_graded()).unwrap();
        assert!(t.transitive.passed() && t.bitransitive.passed());
        let a = transitivity(&abelian_graded()).unwrap();
        assert_eq!(a.transitive, Check::Fail(Witness::Vector(unit(2, 1))));
        let g = catalog::heisenberg_super();
        let h = transitivity(&g).unwrap();
        assert_eq!(
            h.transitive,
            Check::Fail(Witness::Vector(unit(3, g.index_of("z").unwrap())))
        );
    }

    #[test]
    fn graded_irreducibility() {
        assert!(graded_irreducible(&catalog::sl2_graded()).unwrap().is_irreducible());
        assert!(graded_irreducible(&catalog::heisenberg_super())
            .unwrap()
            .is_irreducible());
        let v = graded_irreducible(&catalog::sl2_sum_sl2()).unwrap();
        assert_eq!(v.witness().unwrap().dim(), 1);
    }

    #[test]
    fn simplicity_examples() {
        let s = is_simple(&catalog::sl2());
        assert_eq!(s.simple(), Some(true));
        assert!(s.verdict().certificate.is_some());
        let a = is_simple(&catalog::affine());
        assert_eq!(a.simple(), Some(false));
        assert_eq!(a.verdict().witness, Some(Subspace::coordinate(3, [2])));
        let z = is_simple(&catalog::abelian());
        assert!(!z.verdict().derived_nonzero && z.simple() == Some(false));
        assert_eq!(is_simple(&catalog::osp12()).simple(), Some(true));
        assert_eq!(is_simple(&catalog::sl2_sum_sl2()).simple(), Some(false));
    }

    #[test]
    fn local_generation() {
        assert!(local_generates(&catalog::sl2_graded()).unwrap().passed());
        assert!(local_generates(&catalog::osp12_graded()).unwrap().passed());
    }

    #[test]
    fn structural_examples() {
        let s = structural_criteria(&catalog::sl2_graded());
        assert!(s.alarms().is_empty());
        assert!(s.simple_necessary.conclusions.values().all(|v| *v == Some(true)));
        let h = structural_criteria(&catalog::heisenberg_super());
        assert!(h.alarms().is_empty());
        assert_eq!(h.simple_necessary.hypotheses["simple"], Some(false));
        let a = structural_criteria(&catalog::affine());
        assert_eq!(a.odd_action.hypotheses["odd_brackets_span_even_part"], Some(false));
        for g in catalog::corpus() {
            assert!(structural_criteria(&g).alarms().is_empty(), "{}", g.name());
        }
    }
}
