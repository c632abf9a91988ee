//! Bilinear forms: the defining properties of invariant forms, the radical
//! hom-ideal, proportionality, and extension of a form from the local part
//! of a graded algebra degree by degree.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::check::{Check, Witness};
use crate::error::{Error, Result};
use crate::grading::{check_grading, local_generates};
use crate::ratlin::{kernel, solve, Matrix, Scalar, Solution, Subspace};
use crate::structure::{classify_subspace, IdealVerdict};
use crate::superalgebra::{koszul_sign, HomLieSuperalgebra, Parity};

/// `f(e_i, e_j) = gram[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BilinearForm {
    pub gram: Matrix,
}

impl BilinearForm {
    pub fn new(gram: Matrix) -> Self {
        BilinearForm { gram }
    }

    pub fn zero(n: usize) -> Self {
        BilinearForm::new(Matrix::zeros(n, n))
    }

    /// `f(x, y)` on coordinate vectors.
    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let gy = self.gram.apply(y).expect("vector of the form dimension");
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }
}

/// Sign rule for supersymmetry.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignConvention {
    /// `f(x, y) = (-1)^{|x||y|} f(y, x)`: symmetric on even elements.
    #[default]
    Classical,
    /// `f(x, y) = -(-1)^{|x||y|} f(y, x)`: antisymmetric on even elements.
    Skew,
}

impl SignConvention {
    fn sign(self, a: Parity, b: Parity) -> Scalar {
        match self {
            SignConvention::Classical => koszul_sign(a, b),
            SignConvention::Skew => -koszul_sign(a, b),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormReport {
    pub convention: SignConvention,
    /// `f(g_even, g_odd) = f(g_odd, g_even) = 0`; witness: a basis pair.
    pub consistent: Check,
    /// Witness: a basis pair.
    pub supersymmetric: Check,
    /// `f([x, y], z) = f(x, [y, z])`; witness: a basis triple.
    pub invariant: Check,
    /// `f(alpha x, y) = f(x, alpha y)`; witness: a basis pair.
    pub alpha_invariant: Check,
    /// Witness: the radical.
    pub nondegenerate: Check,
    /// `{x : f(x, g) = 0}`.
    pub radical: Subspace,
}

impl FormReport {
    /// Every flag except nondegeneracy passes.
    pub fn is_invariant_form(&self) -> bool {
        self.consistent.passed()
            && self.supersymmetric.passed()
            && self.invariant.passed()
            && self.alpha_invariant.passed()
    }
}

fn check_dim(g: &HomLieSuperalgebra, b: &BilinearForm) -> Result<()> {
    let n = g.dim();
    if b.gram.rows() != n || b.gram.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.gram.rows().max(b.gram.cols()),
        });
    }
    Ok(())
}

/// Restricts which basis elements a check looks at.
type Filter<'a> = &'a dyn Fn(usize) -> bool;

fn pair_check(n: usize, keep: Filter<'_>, bad: impl Fn(usize, usize) -> bool) -> Check {
    Check::from_witness(
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| keep(i) && keep(j) && bad(i, j))
            .map(|(i, j)| Witness::Pair(i, j)),
    )
}

fn invariance(g: &HomLieSuperalgebra, b: &BilinearForm, keep: &dyn Fn(usize, usize, usize) -> bool) -> Check {
    let n = g.dim();
    let rows: Vec<Vec<Scalar>> = (0..n).map(|i| b.gram.row(i).to_vec()).collect();
    for x in 0..n {
        for y in 0..n {
            let xy = g.bracket_basis(x, y);
            for z in 0..n {
                if !keep(x, y, z) {
                    continue;
                }
                let left: Scalar = xy.iter().zip(&rows).map(|(c, r)| c * &r[z]).sum();
                let yz = g.bracket_basis(y, z);
                let right: Scalar = rows[x].iter().zip(&yz).map(|(a, c)| a * c).sum();
                if left != right {
                    return Check::Fail(Witness::Triple(x, y, z));
                }
            }
        }
    }
    Check::Pass
}

fn report(
    g: &HomLieSuperalgebra,
    b: &BilinearForm,
    convention: SignConvention,
    keep: Filter<'_>,
    keep_triple: &dyn Fn(usize, usize, usize) -> bool,
) -> FormReport {
    let n = g.dim();
    let f = |i: usize, j: usize| b.gram.get(i, j);
    let consistent = pair_check(n, keep, |i, j| g.parity(i) != g.parity(j) && !f(i, j).is_zero());
    let supersymmetric = pair_check(n, keep, |i, j| {
        *f(i, j) != convention.sign(g.parity(i), g.parity(j)) * f(j, i)
    });
    let at = &g.alpha().transpose() * &b.gram;
    let ga = &b.gram * g.alpha();
    let alpha_invariant = pair_check(n, keep, |i, j| at.get(i, j) != ga.get(i, j));
    let radical = kernel(&b.gram.transpose());
    let nondegenerate = if radical.is_zero() {
        Check::Pass
    } else {
        Check::Fail(Witness::Subspace(radical.clone()))
    };
    FormReport {
        convention,
        consistent,
        supersymmetric,
        invariant: invariance(g, b, keep_triple),
        alpha_invariant,
        nondegenerate,
        radical,
    }
}

/// Evaluate every property of `b` over basis pairs and triples.
pub fn check_form(g: &HomLieSuperalgebra, b: &BilinearForm, convention: SignConvention) -> Result<FormReport> {
    check_dim(g, b)?;
    Ok(report(g, b, convention, &|_| true, &|_, _, _| true))
}

/// The radical of an invariant form, classified as a subspace.
pub fn form_radical_ideal(g: &HomLieSuperalgebra, b: &BilinearForm) -> Result<IdealVerdict> {
    let r = check_form(g, b, SignConvention::Classical)?;
    if let Check::Fail(w) = r.invariant {
        return Err(Error::precondition("the form is not invariant", Some(w)));
    }
    classify_subspace(g, &r.radical)
}

/// `lambda` with `b1 = lambda * b2`. Two zero forms give `1`; a zero form
/// against a nonzero one gives `None`.
pub fn proportional(b1: &BilinearForm, b2: &BilinearForm) -> Result<Option<Scalar>> {
    if b1.gram.rows() != b2.gram.rows() || b1.gram.cols() != b2.gram.cols() {
        return Err(Error::DimensionMismatch {
            expected: b2.gram.rows(),
            found: b1.gram.rows(),
        });
    }
    match (b1.gram.is_zero(), b2.gram.is_zero()) {
        (true, true) => return Ok(Some(Scalar::one())),
        (true, false) | (false, true) => return Ok(None),
        _ => {}
    }
    let (p, q) = b1
        .gram
        .entries()
        .iter()
        .zip(b2.gram.entries())
        .find(|(_, q)| !q.is_zero())
        .expect("b2 is nonzero");
    let lambda = p / q;
    Ok((b2.gram.scale(&lambda) == b1.gram).then_some(lambda))
}

/// `str(ad x ad y)`, with the supertrace taken over the parity of the basis.
pub fn killing_form(g: &HomLieSuperalgebra) -> BilinearForm {
    let n = g.dim();
    let ads: Vec<Matrix> = (0..n).map(|i| g.ad(i)).collect();
    BilinearForm::new(Matrix::from_fn(n, n, |i, j| {
        let m = &ads[i] * &ads[j];
        (0..n)
            .map(|k| match g.parity(k) {
                Parity::Even => m.get(k, k).clone(),
                Parity::Odd => -m.get(k, k),
            })
            .sum()
    }))
}

/// Fill each pair where exactly one of `f(e_i, e_j)`, `f(e_j, e_i)` is
/// given by the supersymmetry rule.
pub fn supersymmetric_completion(
    g: &HomLieSuperalgebra,
    b: &BilinearForm,
    convention: SignConvention,
) -> Result<BilinearForm> {
    check_dim(g, b)?;
    let mut gram = b.gram.clone();
    for i in 0..g.dim() {
        for j in 0..g.dim() {
            if i != j && gram.get(i, j).is_zero() && !gram.get(j, i).is_zero() {
                let v = convention.sign(g.parity(i), g.parity(j)) * gram.get(j, i);
                gram.set(i, j, v);
            }
        }
    }
    Ok(BilinearForm::new(gram))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtensionVerdict {
    /// Every block was determined uniquely.
    Unique,
    /// Some block had free unknowns; they were set to zero.
    Underdetermined,
    /// Some block had no solution; the form is returned up to the level
    /// below it.
    Inconsistent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormExtension {
    pub form: BilinearForm,
    pub verdict: ExtensionVerdict,
    /// Number of free unknowns per level `k >= 2` that had unknowns.
    pub free: BTreeMap<i64, usize>,
    /// The level whose system had no solution.
    pub inconsistent_level: Option<i64>,
    /// The properties of the result on degrees `|k| <= ` the levels solved.
    pub report: FormReport,
}

/// Extend a form given on `g_{-1} ⊕ g_0 ⊕ g_1` to degrees `|k| <= k_max`.
///
/// For each level `k >= 2` the values `f(u, v)`, `u` in `g_k`, `v` in
/// `g_{-k}`, are unknowns; `f(v, u)` follows by supersymmetry. Every
/// invariance and `alpha`-invariance constraint whose terms lie at level `k`
/// or below and reach level `k` is imposed, and the system is solved exactly.
pub fn extend_form(g: &HomLieSuperalgebra, local: &BilinearForm, k_max: i64) -> Result<FormExtension> {
    check_dim(g, local)?;
    let grading = check_grading(g)?;
    if let Check::Fail(w) = grading.compatible {
        return Err(Error::precondition("the grading is not compatible", Some(w)));
    }
    let deg = g.zdegrees().expect("checked").to_vec();
    let n = g.dim();
    let level = |i: usize| deg[i].abs();
    let is_local = |i: usize| level(i) <= 1;

    for i in 0..n {
        for j in 0..n {
            let v = local.gram.get(i, j);
            if !v.is_zero() && (!is_local(i) || !is_local(j) || deg[i] + deg[j] != 0) {
                return Err(Error::precondition(
                    "the local form has a value outside the blocks (g_i, g_{-i}) with |i| <= 1",
                    Some(Witness::Pair(i, j)),
                ));
            }
        }
    }
    let conv = SignConvention::Classical;
    let local_report = report(g, local, conv, &|i| is_local(i), &|x, y, z| {
        [x, y, z].iter().all(|&i| is_local(i)) && (deg[x] + deg[y]).abs() <= 1 && (deg[y] + deg[z]).abs() <= 1
    });
    for (what, c) in [
        ("consistent", &local_report.consistent),
        ("supersymmetric", &local_report.supersymmetric),
        ("alpha-invariant", &local_report.alpha_invariant),
        ("invariant", &local_report.invariant),
    ] {
        if let Check::Fail(w) = c {
            return Err(Error::precondition(
                format!("the local form is not {what}"),
                Some(w.clone()),
            ));
        }
    }
    if let Check::Fail(w) = local_generates(g)? {
        return Err(Error::precondition(
            "the local part does not generate the algebra",
            Some(w),
        ));
    }

    let mut gram = local.gram.clone();
    let mut verdict = ExtensionVerdict::Unique;
    let mut free = BTreeMap::new();
    let mut inconsistent_level = None;
    let mut solved = 1;
    for k in 2..=k_max {
        let upper = g.degree_indices(k);
        let lower = g.degree_indices(-k);
        let unknowns: Vec<(usize, usize)> = upper.iter().flat_map(|&u| lower.iter().map(move |&v| (u, v))).collect();
        let index: BTreeMap<(usize, usize), usize> = unknowns.iter().enumerate().map(|(t, &p)| (p, t)).collect();
        let mut system = LevelSystem {
            g,
            gram: &gram,
            index: &index,
            rows: Vec::new(),
            rhs: Vec::new(),
        };
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if deg[x] + deg[y] + deg[z] != 0 {
                        continue;
                    }
                    let (l, r) = ((deg[x] + deg[y]).abs(), level(x));
                    if l.max(r) != k {
                        continue;
                    }
                    let mut row = Vec::new();
                    let xy = g.bracket_basis(x, y);
                    for (w, c) in xy.iter().enumerate() {
                        if !c.is_zero() {
                            row.push((w, z, c.clone()));
                        }
                    }
                    for (w, c) in g.bracket_basis(y, z).into_iter().enumerate() {
                        if !c.is_zero() {
                            row.push((x, w, -c));
                        }
                    }
                    system.push(&row);
                }
            }
        }
        let alpha = g.alpha();
        for x in 0..n {
            for y in 0..n {
                if deg[x] + deg[y] != 0 || level(x) != k {
                    continue;
                }
                let mut row = Vec::new();
                for w in 0..n {
                    let a = alpha.get(w, x);
                    if !a.is_zero() {
                        row.push((w, y, a.clone()));
                    }
                    let a = alpha.get(w, y);
                    if !a.is_zero() {
                        row.push((x, w, -a));
                    }
                }
                system.push(&row);
            }
        }
        for &(u, v) in index.keys() {
            if g.parity(u) != g.parity(v) {
                system.push(&[(u, v, Scalar::one())]);
            }
        }
        let (rows, rhs) = (system.rows, system.rhs);
        let values = if unknowns.is_empty() {
            if rhs.iter().any(|c| !c.is_zero()) {
                None
            } else {
                Some(Vec::new())
            }
        } else {
            let a = Matrix::from_rows(unknowns.len(), rows)?;
            match solve(&a, &rhs)? {
                Solution::Unique(x) => Some(x),
                Solution::Affine { particular, kernel } => {
                    free.insert(k, kernel.dim());
                    verdict = ExtensionVerdict::Underdetermined;
                    Some(particular)
                }
                Solution::Inconsistent => None,
            }
        };
        let Some(values) = values else {
            verdict = ExtensionVerdict::Inconsistent;
            inconsistent_level = Some(k);
            break;
        };
        if !unknowns.is_empty() {
            free.entry(k).or_insert(0);
        }
        for (&(u, v), x) in unknowns.iter().zip(values) {
            let back = conv.sign(g.parity(v), g.parity(u)) * &x;
            gram.set(u, v, x);
            gram.set(v, u, back);
        }
        solved = k;
    }
    let form = BilinearForm::new(gram);
    let within = |i: usize| level(i) <= solved;
    let report = report(g, &form, conv, &within, &|x, y, z| {
        within(x) && within(y) && within(z) && (deg[x] + deg[y]).abs() <= solved && (deg[y] + deg[z]).abs() <= solved
    });
    Ok(FormExtension {
        form,
        verdict,
        free,
        inconsistent_level,
        report,
    })
}

/// Linear constraints `sum c f(a, b) = 0` over one level's unknowns.
struct LevelSystem<'a> {
    g: &'a HomLieSuperalgebra,
    gram: &'a Matrix,
    index: &'a BTreeMap<(usize, usize), usize>,
    rows: Vec<Vec<Scalar>>,
    rhs: Vec<Scalar>,
}

impl LevelSystem<'_> {
    fn push(&mut self, terms: &[(usize, usize, Scalar)]) {
        let mut row = vec![Scalar::zero(); self.index.len()];
        let mut constant = Scalar::zero();
        let mut touches = false;
        for (a, b, c) in terms {
            if let Some(&t) = self.index.get(&(*a, *b)) {
                row[t] += c;
                touches = true;
            } else if let Some(&t) = self.index.get(&(*b, *a)) {
                row[t] += c * SignConvention::Classical.sign(self.g.parity(*a), self.g.parity(*b));
                touches = true;
            } else {
                constant -= c * self.gram.get(*a, *b);
            }
        }
        if touches || !constant.is_zero() {
            self.rows.push(row);
            self.rhs.push(constant);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::ratlin::int;

    fn gram(n: usize, entries: &[(usize, usize, i64)]) -> BilinearForm {
        let mut m = Matrix::zeros(n, n);
        for &(i, j, v) in entries {
            m.set(i, j, int(v));
        }
        BilinearForm::new(m)
    }

    // basis h, e, f
    fn trace_form() -> BilinearForm {
        gram(3, &[(0, 0, 2), (1, 2, 1), (2, 1, 1)])
    }

    #[test]
    fn sl2_trace_form() {
        let r = check_form(&catalog::sl2(), &trace_form(), SignConvention::Classical).unwrap();
        assert!(r.is_invariant_form() && r.nondegenerate.passed());
        let p = check_form(&catalog::sl2(), &trace_form(), SignConvention::Skew).unwrap();
        assert!(p.supersymmetric.failed());
    }

    #[test]
    fn zero_form() {
        let r = check_form(&catalog::sl2(), &BilinearForm::zero(3), SignConvention::Classical).unwrap();
        assert!(r.is_invariant_form());
        assert!(r.radical.is_full());
        assert!(form_radical_ideal(&catalog::sl2(), &BilinearForm::zero(3))
            .unwrap()
            .is_hom_ideal
            .passed());
    }

    #[test]
    fn affine_odd_form() {
        let g = catalog::affine();
        let b = gram(3, &[(2, 2, 1)]);
        let r = check_form(&g, &b, SignConvention::Classical).unwrap();
        assert!(r.consistent.passed() && r.invariant.passed());
        assert_eq!(r.radical, Subspace::coordinate(3, [0, 1]));
        assert!(form_radical_ideal(&g, &b).unwrap().is_hom_ideal.passed());
    }

    #[test]
    fn killing_is_four_times_trace() {
        let k = killing_form(&catalog::sl2());
        assert_eq!(k, gram(3, &[(0, 0, 8), (1, 2, 4), (2, 1, 4)]));
        assert_eq!(proportional(&k, &trace_form()).unwrap(), Some(int(4)));
        assert_eq!(proportional(&trace_form(), &BilinearForm::zero(3)).unwrap(), None);
        assert_eq!(
            proportional(&BilinearForm::zero(3), &BilinearForm::zero(3)).unwrap(),
            Some(int(1))
        );
        assert_eq!(proportional(&trace_form(), &gram(3, &[(0, 0, 1)])).unwrap(), None);
    }

    #[test]
    fn completion() {
        let b = gram(3, &[(0, 0, 2), (1, 2, 1)]);
        let c = supersymmetric_completion(&catalog::sl2(), &b, SignConvention::Classical).unwrap();
        assert_eq!(c, trace_form());
    }

    #[test]
    fn extend_sl2() {
        let g = catalog::sl2_graded();
        let ext = extend_form(&g, &trace_form(), 3).unwrap();
        assert_eq!(ext.verdict, ExtensionVerdict::Unique);
        assert_eq!(ext.form, trace_form());
        let bad = gram(3, &[(1, 2, 1), (2, 1, 1)]);
        let err = extend_form(&g, &bad, 3).unwrap_err();
        assert_eq!(err.witness(), Some(&Witness::Triple(0, 1, 2)));
    }

    #[test]
    fn extend_osp12() {
        // degrees h:0, e:2, f:-2, x:1, y:-1; (x, y) = 1, (y, x) = -1, (h, h) = c
        let g = catalog::osp12_graded();
        let i = |l: &str| g.index_of(l).unwrap();
        let inv = killing_form(&g);
        let mut local = Matrix::zeros(5, 5);
        for a in ["h", "x", "y"] {
            for b in ["h", "x", "y"] {
                local.set(i(a), i(b), inv.gram.get(i(a), i(b)).clone());
            }
        }
        let ext = extend_form(&g, &BilinearForm::new(local), 2).unwrap();
        assert_eq!(ext.verdict, ExtensionVerdict::Unique);
        assert_eq!(ext.form, inv);
        assert!(ext.report.is_invariant_form() && ext.report.nondegenerate.passed());
    }
}
