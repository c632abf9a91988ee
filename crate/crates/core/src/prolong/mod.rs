//! Local hom-Lie superalgebras and their minimal Z-graded realization
//! through the representation `phi` on the tensor algebra `T(g_{-1})`.
//!
//! ```text
//! phi(y) a              = y ⊗ a                                  y in g_{-1}
//! phi(z)(a_1 ⊗ a_2)     = [z, a_1] ⊗ a_2 ± a_1 ⊗ phi(z) a_2      z in g_0
//! phi(x)(a_1 ⊗ a_2)     = phi([x, alpha a_1]) a_2 ± alpha(a_1) ⊗ phi(x) a_2
//! ```
//!
//! with `phi(z) 1 = phi(x) 1 = 0`. The signs `±` are `+` under
//! [`Convention::Verbatim`] and Koszul signs under [`Convention::Koszul`].
//! `T_i` has Z-degree `-i`, so `phi(g_k)` has operator degree `k`.

mod realize;
mod tensor;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use realize::{prolong_minimal, Prolongation, Recovery};
pub use tensor::{Convention, TensorWindow};

use crate::check::{Check, Witness};
use crate::error::{Error, Result};
use crate::ratlin::{is_zero_vec, Matrix, Scalar};
use crate::superalgebra::{hom_jacobiator, koszul_sign, HomLieSuperalgebra, Parity};

/// `g_{-1} ⊕ g_0 ⊕ g_1` with brackets defined when `|i + j| <= 1`, stored
/// as an algebra whose brackets outside that range are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalAlgebra {
    algebra: HomLieSuperalgebra,
    minus: Vec<usize>,
    zero: Vec<usize>,
    plus: Vec<usize>,
}

impl LocalAlgebra {
    /// Validate a graded algebra with degrees in `{-1, 0, 1}` as a local
    /// hom-Lie superalgebra.
    pub fn new(algebra: HomLieSuperalgebra) -> Result<Self> {
        let deg = algebra.zdegrees().ok_or(Error::MissingGrading)?.to_vec();
        if let Some(i) = deg.iter().position(|d| d.abs() > 1) {
            return Err(Error::Invalid(format!(
                "`{}` has degree {}; a local algebra lives in degrees -1, 0, 1",
                algebra.label(i),
                deg[i]
            )));
        }
        let n = algebra.dim();
        for i in 0..n {
            for j in 0..n {
                let target = deg[i] + deg[j];
                for k in 0..n {
                    if algebra.structure_constant(i, j, k).is_zero() {
                        continue;
                    }
                    if target.abs() > 1 {
                        return Err(Error::Invalid(format!(
                            "bracket [{},{}] is given but degrees {} and {} add up to {target}",
                            algebra.label(i),
                            algebra.label(j),
                            deg[i],
                            deg[j]
                        )));
                    }
                    if deg[k] != target {
                        return Err(Error::Invalid(format!(
                            "bracket [{},{}] has a component along `{}` outside degree {target}",
                            algebra.label(i),
                            algebra.label(j),
                            algebra.label(k)
                        )));
                    }
                }
            }
        }
        let alpha = algebra.alpha();
        for j in 0..n {
            for i in 0..n {
                if !alpha.get(i, j).is_zero() && deg[i] != deg[j] {
                    return Err(Error::Invalid(format!(
                        "alpha({}) leaves degree {}",
                        algebra.label(j),
                        deg[j]
                    )));
                }
            }
        }
        let square = alpha * alpha;
        if let Some(j) = (0..n).find(|&j| square.column(j) != alpha.column(j)) {
            return Err(Error::precondition(
                format!("alpha is not idempotent at `{}`", algebra.label(j)),
                Some(Witness::Basis(j)),
            ));
        }
        for i in 0..n {
            for j in 0..n {
                if (deg[i] + deg[j]).abs() > 1 {
                    continue;
                }
                let lhs = alpha.apply(&algebra.bracket_basis(i, j))?;
                let rhs = algebra.bracket(&alpha.column(i), &alpha.column(j))?;
                if lhs != rhs {
                    return Err(Error::precondition(
                        format!(
                            "alpha is not multiplicative on [{},{}]",
                            algebra.label(i),
                            algebra.label(j)
                        ),
                        Some(Witness::Pair(i, j)),
                    ));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (a, b, c) = (deg[x], deg[y], deg[z]);
                    let defined = [a + b, b + c, c + a, a + b + c].iter().all(|s| s.abs() <= 1);
                    if defined && !is_zero_vec(&hom_jacobiator(&algebra, x, y, z)) {
                        return Err(Error::precondition(
                            "partial hom-Jacobi identity fails",
                            Some(Witness::Triple(x, y, z)),
                        ));
                    }
                }
            }
        }
        let pick = |d: i64| (0..n).filter(|&i| deg[i] == d).collect::<Vec<_>>();
        Ok(LocalAlgebra {
            minus: pick(-1),
            zero: pick(0),
            plus: pick(1),
            algebra,
        })
    }

    /// The underlying graded algebra (brackets beyond `|i + j| <= 1` are 0).
    pub fn algebra(&self) -> &HomLieSuperalgebra {
        &self.algebra
    }

    /// Basis indices of `g_{-1}`.
    pub fn minus(&self) -> &[usize] {
        &self.minus
    }

    /// Basis indices of `g_0`.
    pub fn zero(&self) -> &[usize] {
        &self.zero
    }

    /// Basis indices of `g_1`.
    pub fn plus(&self) -> &[usize] {
        &self.plus
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.algebra.degree(i).expect("local algebras are graded")
    }

    /// The same local algebra with `g_{-1}` and `g_1` exchanged.
    pub fn mirrored(&self) -> LocalAlgebra {
        let g = &self.algebra;
        let deg = g.zdegrees().expect("graded").iter().map(|d| -d).collect();
        let mirrored = g
            .with_grading(Some(deg))
            .expect("negating degrees keeps the algebra valid")
            .with_name(format!("{}_mirrored", g.name()));
        LocalAlgebra::new(mirrored).expect("mirroring keeps the local axioms")
    }

    /// `alpha` restricted to `g_{-1}`, in the `minus` basis.
    fn alpha_minus(&self) -> Matrix {
        let a = self.algebra.alpha();
        Matrix::from_fn(self.minus.len(), self.minus.len(), |r, c| {
            a.get(self.minus[r], self.minus[c]).clone()
        })
    }

    /// Action of `ad(e_i)` on `g_{-1}` in the `minus` basis, for `e_i` in `g_0`.
    fn action_on_minus(&self, i: usize) -> Matrix {
        let g = &self.algebra;
        Matrix::from_fn(self.minus.len(), self.minus.len(), |r, c| {
            g.structure_constant(i, self.minus[c], self.minus[r]).clone()
        })
    }
}

/// The matrices `phi(e_i)` on a tensor window, one per local basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorImage {
    pub window: TensorWindow,
    pub convention: Convention,
    /// Indexed like the local algebra's basis.
    pub ops: Vec<Matrix>,
    /// Operator degree of each `ops[i]`: its degree in the local algebra.
    pub degrees: Vec<i64>,
    pub parities: Vec<Parity>,
}

impl OperatorImage {
    /// `phi` extended linearly to a coordinate vector of the local algebra.
    pub fn phi(&self, v: &[Scalar]) -> Matrix {
        let n = self.window.dim();
        v.iter()
            .zip(&self.ops)
            .filter(|(c, _)| !c.is_zero())
            .fold(Matrix::zeros(n, n), |acc, (c, m)| &acc + &m.scale(c))
    }

    /// Whether `ops[i]` maps each `T_k` into `T_{k - degree}`.
    pub fn respects_degrees(&self) -> bool {
        let w = &self.window;
        self.ops.iter().zip(&self.degrees).all(|(m, &d)| {
            (0..w.dim()).all(|c| {
                (0..w.dim()).all(|r| m.get(r, c).is_zero() || w.word(r).len() as i64 == w.word(c).len() as i64 - d)
            })
        })
    }
}

/// Build `phi(b)` for every basis element of the local algebra.
pub fn phi_operators(local: &LocalAlgebra, window: &TensorWindow, convention: Convention) -> Result<OperatorImage> {
    if window.cap() < 1 {
        return Err(Error::WindowTooSmall("tensor cap must be at least 1".into()));
    }
    let g = local.algebra();
    let n = g.dim();
    let size = window.dim();
    let mut ops = vec![Matrix::zeros(size, size); n];
    for (a, &i) in local.minus().iter().enumerate() {
        ops[i] = window.left_multiplication(a);
    }
    for &i in local.zero() {
        ops[i] = window.derivation(&local.action_on_minus(i), g.parity(i), convention);
    }
    let alpha_minus = local.alpha_minus();
    for &i in local.plus() {
        let zero_ops: Vec<(usize, Matrix)> = local.zero().iter().map(|&z| (z, ops[z].clone())).collect();
        let bracket_op = |a: usize| {
            let target = g.bracket_unchecked(&g.basis_vector(i), &g.alpha().column(local.minus()[a]));
            zero_ops
                .iter()
                .filter(|(z, _)| !target[*z].is_zero())
                .fold(Matrix::zeros(size, size), |acc, (z, m)| &acc + &m.scale(&target[*z]))
        };
        ops[i] = window.raising_recursion(g.parity(i), convention, bracket_op, &alpha_minus);
    }
    Ok(OperatorImage {
        window: window.clone(),
        convention,
        ops,
        degrees: (0..n).map(|i| local.degree(i)).collect(),
        parities: g.parities().to_vec(),
    })
}

/// `AB - (-1)^{|A||B|} BA`.
pub fn super_commutator(a: &Matrix, pa: Parity, b: &Matrix, pb: Parity) -> Matrix {
    &(a * b) - &(b * a).scale(&koszul_sign(pa, pb))
}

/// Outcome of checking the three operator relations on the safe window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiRelationReport {
    pub convention: Convention,
    /// Highest tensor degree on which the identities were compared.
    pub safe_degree: usize,
    /// `phi[alpha y, alpha z] = [phi(alpha y), phi(alpha z)]`, witness `(y, z)`.
    pub minus_zero: Check,
    /// `phi[alpha x, alpha y] = [phi(alpha x), phi(alpha y)]`, witness `(x, y)`.
    pub plus_minus: Check,
    /// `phi[alpha z, alpha x] = [phi(alpha z), phi(alpha x)]`, witness `(z, x)`.
    pub zero_plus: Check,
}

impl PhiRelationReport {
    pub fn passed(&self) -> bool {
        self.minus_zero.passed() && self.plus_minus.passed() && self.zero_plus.passed()
    }
}

/// Check the relations for a given operator image; the brackets are
/// super-commutators and the comparison covers `T_0 ⊕ ... ⊕ T_{cap-1}`.
pub fn verify_operator_relations(local: &LocalAlgebra, image: &OperatorImage) -> Result<PhiRelationReport> {
    let cap = image.window.cap();
    if cap < 2 {
        return Err(Error::WindowTooSmall(format!(
            "relations need tensor cap >= 2, got {cap}"
        )));
    }
    let g = local.algebra();
    let cols = image.window.dim_through(cap - 1);
    let restrict = |m: &Matrix| m.submatrix(0..m.rows(), 0..cols);
    let check = |left: &[usize], right: &[usize]| -> Check {
        for &u in left {
            for &v in right {
                let (au, av) = (g.alpha().column(u), g.alpha().column(v));
                let lhs = image.phi(&g.bracket_unchecked(&au, &av));
                let rhs = super_commutator(&image.phi(&au), g.parity(u), &image.phi(&av), g.parity(v));
                if restrict(&lhs) != restrict(&rhs) {
                    return Check::Fail(Witness::Pair(u, v));
                }
            }
        }
        Check::Pass
    };
    Ok(PhiRelationReport {
        convention: image.convention,
        safe_degree: cap - 1,
        minus_zero: check(local.minus(), local.zero()),
        plus_minus: check(local.plus(), local.minus()),
        zero_plus: check(local.zero(), local.plus()),
    })
}

/// Build `phi` under `convention` and check the relations.
pub fn verify_phi_relations(
    local: &LocalAlgebra,
    window: &TensorWindow,
    convention: Convention,
) -> Result<PhiRelationReport> {
    verify_operator_relations(local, &phi_operators(local, window, convention)?)
}

/// Try the verbatim signs first, then Koszul signs; return the first
/// convention under which all relations hold, with its report.
pub fn select_convention(local: &LocalAlgebra, window: &TensorWindow) -> Result<(OperatorImage, PhiRelationReport)> {
    let mut last = None;
    for convention in [Convention::Verbatim, Convention::Koszul] {
        let image = phi_operators(local, window, convention)?;
        let report = verify_operator_relations(local, &image)?;
        if report.passed() {
            return Ok((image, report));
        }
        last = Some(report);
    }
    let report = last.expect("two conventions tried");
    let witness = [&report.minus_zero, &report.plus_minus, &report.zero_plus]
        .into_iter()
        .find_map(|c| c.witness().cloned());
    Err(Error::precondition(
        "the operator relations fail under both sign conventions",
        witness,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::format::parse_algebra;
    use crate::ratlin::int;
    use std::collections::BTreeMap;

    fn sl2_window(cap: usize) -> (LocalAlgebra, TensorWindow) {
        let l = catalog::sl2_local();
        let w = TensorWindow::new(&l, cap).unwrap();
        (l, w)
    }

    #[test]
    fn loading_local_algebras() {
        for l in [
            catalog::sl2_local(),
            catalog::zero_local(),
            catalog::osp12_local(),
            catalog::heisenberg_local(),
        ] {
            assert_eq!(l.minus().len() + l.zero().len() + l.plus().len(), l.algebra().dim());
        }
        let bad = include_str!("../../data/sl2_local.hls")
            .replace("[bracket]", "[alpha]\nf = f\nh = 2*h\ne = e\n\n[bracket]");
        let err = LocalAlgebra::new(parse_algebra(&bad).unwrap()).unwrap_err();
        assert!(matches!(
            err,
            Error::Precondition {
                witness: Some(Witness::Basis(1)),
                ..
            }
        ));
        let text = "[algebra]\nbasis = a, b\ndegree = a:1, b:2\n";
        assert!(LocalAlgebra::new(parse_algebra(text).unwrap()).is_err());
        let text = "[algebra]\nbasis = a, b, c\ndegree = a:1, b:1, c:0\n[bracket]\n\"a,b\" = \"c\"\n";
        assert!(LocalAlgebra::new(parse_algebra(text).unwrap()).is_err());
    }

    #[test]
    fn sl2_phi_values() {
        let (l, w) = sl2_window(3);
        let img = phi_operators(&l, &w, Convention::Verbatim).unwrap();
        let (f, h, e) = (0, 1, 2);
        let one = w.index_of(&[]).unwrap();
        let ff = w.index_of(&[0, 0]).unwrap();
        let f1 = w.index_of(&[0]).unwrap();
        // phi(f) 1 = f
        assert_eq!(img.ops[f].column(one)[f1], int(1));
        // phi(h)(f ⊗ f) = -4 f ⊗ f
        let col = img.ops[h].column(ff);
        assert_eq!(col[ff], int(-4));
        assert_eq!(col.iter().filter(|c| !c.is_zero()).count(), 1);
        // phi(e)(f ⊗ f) = -2 f, phi(e) f = 0
        let col = img.ops[e].column(ff);
        assert_eq!(col[f1], int(-2));
        assert_eq!(col.iter().filter(|c| !c.is_zero()).count(), 1);
        assert!(is_zero_vec(&img.ops[e].column(f1)));
        assert!(img.respects_degrees());
    }

    #[test]
    fn commutator_ef_is_phi_h_on_low_degrees() {
        let (l, w) = sl2_window(3);
        let img = phi_operators(&l, &w, Convention::Verbatim).unwrap();
        let c = super_commutator(&img.ops[2], Parity::Even, &img.ops[0], Parity::Even);
        let cols = w.dim_through(1);
        assert_eq!(
            c.submatrix(0..w.dim(), 0..cols),
            img.ops[1].submatrix(0..w.dim(), 0..cols)
        );
    }

    #[test]
    fn relations_and_corruption() {
        let (l, w) = sl2_window(4);
        let report = verify_phi_relations(&l, &w, Convention::Verbatim).unwrap();
        assert!(report.passed(), "{report:?}");
        let mut img = phi_operators(&l, &w, Convention::Verbatim).unwrap();
        let ff = w.index_of(&[0, 0]).unwrap();
        let f1 = w.index_of(&[0]).unwrap();
        img.ops[2].set(f1, ff, int(7));
        let report = verify_operator_relations(&l, &img).unwrap();
        assert_eq!(report.plus_minus, Check::Fail(Witness::Pair(2, 0)));

        let z = catalog::zero_local();
        let wz = TensorWindow::new(&z, 3).unwrap();
        assert!(verify_phi_relations(&z, &wz, Convention::Verbatim).unwrap().passed());
        assert!(matches!(
            verify_phi_relations(&l, &TensorWindow::new(&l, 1).unwrap(), Convention::Verbatim),
            Err(Error::WindowTooSmall(_))
        ));
        assert!(TensorWindow::new(&l, 0).is_err());
    }

    #[test]
    fn mirrored_local_part_satisfies_the_relations() {
        for l in [
            catalog::sl2_local(),
            catalog::osp12_local(),
            catalog::heisenberg_local(),
        ] {
            let m = l.mirrored();
            assert_eq!(m.minus(), l.plus());
            assert_eq!(m.plus(), l.minus());
            assert_eq!(m.mirrored().algebra().zdegrees(), l.algebra().zdegrees());
            let w = TensorWindow::new(&m, 4).unwrap();
            let (_, report) = select_convention(&m, &w).unwrap();
            assert!(report.passed(), "{}: {report:?}", m.algebra().name());
        }
        let l = catalog::sl2_local();
        let dims = |l: &LocalAlgebra| {
            let w = TensorWindow::new(l, 4).unwrap();
            crate::prolong::prolong_minimal(l, 2, &w, None).unwrap().dims
        };
        let mirrored: BTreeMap<i64, usize> = dims(&l.mirrored()).into_iter().map(|(d, n)| (-d, n)).collect();
        assert_eq!(mirrored, dims(&l));
    }

    #[test]
    fn odd_pieces_need_koszul_signs() {
        let l = catalog::osp12_local();
        let w = TensorWindow::new(&l, 4).unwrap();
        let verbatim = verify_phi_relations(&l, &w, Convention::Verbatim).unwrap();
        assert!(verbatim.plus_minus.failed());
        assert!(verify_phi_relations(&l, &w, Convention::Koszul).unwrap().passed());
        let (img, _) = select_convention(&l, &w).unwrap();
        assert_eq!(img.convention, Convention::Koszul);
    }

    #[test]
    fn window_dimensions() {
        let l = catalog::sl2_local();
        let w = TensorWindow::new(&l, 4).unwrap();
        assert_eq!(w.dim(), 5);
        let text = "[algebra]\nbasis = a, b, c\ndegree = a:-1, b:-1, c:0\n";
        let l2 = LocalAlgebra::new(parse_algebra(text).unwrap()).unwrap();
        let w2 = TensorWindow::new(&l2, 3).unwrap();
        assert_eq!(w2.dim(), 1 + 2 + 4 + 8);
        assert_eq!(w2.degree_range(2), 3..7);
        assert_eq!(w2.word(4), &[0, 1]);
    }
}
