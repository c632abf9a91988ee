//! Representations, the twisted adjoint representations, spinning and
//! irreducibility testing.
//!
//! A representation of `g` on `V` with respect to an even `beta` assigns to
//! each basis element `e_i` an operator `rho(e_i)` of parity `|e_i|` with
//!
//! ```text
//! rho(alpha(x)) beta = beta rho(x)
//! rho([x, y]) beta   = rho(alpha(x)) rho(y) - (-1)^{|x||y|} rho(alpha(y)) rho(x)
//! ```

mod meataxe;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use meataxe::{homogenize, irreducible, IrreducibilityVerdict};

use crate::check::{Check, Witness};
use crate::error::{Error, Result};
use crate::ratlin::{Matrix, Scalar, Subspace};
use crate::superalgebra::{check_axioms, koszul_sign, HomLieSuperalgebra, Parity};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub module_dim: usize,
    pub module_parity: Vec<Parity>,
    /// One operator per basis element of the algebra.
    pub rho: Vec<Matrix>,
    pub beta: Matrix,
}

impl Representation {
    /// `rho` extended linearly to a coordinate vector of the algebra.
    pub fn rho_of(&self, x: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.module_dim, self.module_dim);
        for (c, m) in x.iter().zip(&self.rho) {
            if !c.is_zero() {
                out = &out + &m.scale(c);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationReport {
    /// Each `rho(e_i)` has parity `|e_i|` and `beta` is even. Witness: the
    /// offending basis index, or a note for `beta`.
    pub even: Check,
    /// `rho(alpha(x)) beta = beta rho(x)`; witness: the basis element.
    pub twist_compatible: Check,
    /// The bracket identity; witness: the first failing basis pair.
    pub bracket_compatible: Check,
}

impl RepresentationReport {
    pub fn passed(&self) -> bool {
        self.even.passed() && self.twist_compatible.passed() && self.bracket_compatible.passed()
    }
}

fn shifts_parity(m: &Matrix, parity: &[Parity], by: Parity) -> bool {
    (0..m.rows()).all(|r| (0..m.cols()).all(|c| m.get(r, c).is_zero() || parity[r] == parity[c] + by))
}

fn check_shapes(g: &HomLieSuperalgebra, r: &Representation) -> Result<()> {
    let m = r.module_dim;
    if r.rho.len() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: r.rho.len(),
        });
    }
    if r.module_parity.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: r.module_parity.len(),
        });
    }
    for op in r.rho.iter().chain([&r.beta]) {
        if op.rows() != m || op.cols() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: op.rows().max(op.cols()),
            });
        }
    }
    Ok(())
}

/// Verify the defining identities of a representation exactly.
pub fn check_representation(g: &HomLieSuperalgebra, r: &Representation) -> Result<RepresentationReport> {
    check_shapes(g, r)?;
    let n = g.dim();
    let alpha = g.alpha();
    let rho_alpha: Vec<Matrix> = (0..n).map(|i| r.rho_of(&alpha.column(i))).collect();

    let even = if !shifts_parity(&r.beta, &r.module_parity, Parity::Even) {
        Check::Fail(Witness::Note("beta is not even".into()))
    } else {
        Check::from_witness(
            (0..n)
                .find(|&i| !shifts_parity(&r.rho[i], &r.module_parity, g.parity(i)))
                .map(Witness::Basis),
        )
    };

    let twist = (0..n).find(|&i| &rho_alpha[i] * &r.beta != &r.beta * &r.rho[i]);

    let mut bracket = None;
    'outer: for i in 0..n {
        for j in 0..n {
            let lhs = &r.rho_of(&g.bracket_basis(i, j)) * &r.beta;
            let sign = koszul_sign(g.parity(i), g.parity(j));
            let rhs = &(&rho_alpha[i] * &r.rho[j]) - &(&rho_alpha[j] * &r.rho[i]).scale(&sign);
            if lhs != rhs {
                bracket = Some(Witness::Pair(i, j));
                break 'outer;
            }
        }
    }

    Ok(RepresentationReport {
        even,
        twist_compatible: Check::from_witness(twist.map(Witness::Basis)),
        bracket_compatible: Check::from_witness(bracket),
    })
}

/// The `alpha^s`-adjoint representation `ad_s(a)(x) = [alpha^s(a), x]` with
/// `beta = alpha`. The second component is a warning when `g` is not
/// multiplicative, in which case the result need not be a representation.
pub fn adjoint(g: &HomLieSuperalgebra, s: u32) -> (Representation, Option<String>) {
    let n = g.dim();
    let alpha_s = g.alpha().pow(s);
    let rho = (0..n)
        .map(|i| {
            g.left_multiplication(&alpha_s.column(i))
                .expect("column has the algebra dimension")
        })
        .collect();
    let warning = check_axioms(g).multiplicative.failed().then(|| {
        format!(
            "{} is not multiplicative; ad_{s} may fail to be a representation",
            g.name()
        )
    });
    (
        Representation {
            module_dim: n,
            module_parity: g.parities().to_vec(),
            rho,
            beta: g.alpha().clone(),
        },
        warning,
    )
}

/// Incremental echelon basis used by the spinning loops.
pub(crate) struct Echelon {
    n: usize,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    pub(crate) fn new(n: usize) -> Self {
        Echelon { n, rows: Vec::new() }
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Add `v` if it is independent of the current rows; returns whether
    /// it was added.
    pub(crate) fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            if w[*p].is_zero() {
                continue;
            }
            let f = w[*p].clone();
            for (wc, rc) in w.iter_mut().zip(row) {
                if !rc.is_zero() {
                    *wc -= &f * rc;
                }
            }
        }
        let Some(p) = w.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        for c in w.iter_mut() {
            *c *= &inv;
        }
        self.rows.push((p, w));
        true
    }

    pub(crate) fn subspace(&self) -> Subspace {
        Subspace::span(self.n, self.rows.iter().map(|(_, r)| r.clone())).expect("rows have the ambient length")
    }
}

fn check_ops(ops: &[Matrix], n: usize) -> Result<()> {
    for op in ops {
        if op.rows() != n || op.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: op.rows().max(op.cols()),
            });
        }
    }
    Ok(())
}

/// Least subspace containing `seed` and invariant under every operator.
/// The ambient dimension is read from the operators, or from the seed
/// when there are no operators.
pub fn spin(ops: &[Matrix], seed: &[Vec<Scalar>]) -> Result<Subspace> {
    let n = match (ops.first(), seed.first()) {
        (Some(op), _) => op.rows(),
        (None, Some(v)) => v.len(),
        (None, None) => return Err(Error::Invalid("spin needs an operator or a seed vector".into())),
    };
    spin_in(n, ops, seed)
}

/// [`spin`] with an explicit ambient dimension.
pub fn spin_in(n: usize, ops: &[Matrix], seed: &[Vec<Scalar>]) -> Result<Subspace> {
    check_ops(ops, n)?;
    if let Some(v) = seed.iter().find(|v| v.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    let mut basis = Echelon::new(n);
    let mut queue: Vec<Vec<Scalar>> = Vec::new();
    for v in seed {
        if basis.insert(v) {
            queue.push(v.clone());
        }
    }
    while let Some(v) = queue.pop() {
        if basis.dim() == n {
            break;
        }
        for op in ops {
            let w = op.apply(&v)?;
            if basis.insert(&w) {
                queue.push(w);
            }
        }
    }
    Ok(basis.subspace())
}

/// Spin the basis of a subspace.
pub fn spin_subspace(ops: &[Matrix], seed: &Subspace) -> Result<Subspace> {
    spin_in(seed.ambient_dim(), ops, &seed.basis_vectors())
}

/// Largest subspace of `u` invariant under every operator: the annihilator
/// of the transposed spin of `u`'s annihilator.
pub fn largest_invariant_in(ops: &[Matrix], u: &Subspace) -> Result<Subspace> {
    let transposes: Vec<Matrix> = ops.iter().map(Matrix::transpose).collect();
    Ok(spin_subspace(&transposes, &u.annihilator())?.annihilator())
}

/// Irreducibility of a representation together with whether a reducibility
/// witness is also `beta`-stable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleVerdict {
    pub verdict: IrreducibilityVerdict,
    /// `None` unless the verdict is `Reducible`.
    pub witness_beta_stable: Option<bool>,
}

/// Test a representation for irreducibility. The witness, if any, is made
/// parity-homogeneous; `beta`-stability is reported separately.
pub fn representation_irreducible(r: &Representation) -> Result<ModuleVerdict> {
    let verdict = irreducible(&r.rho, r.module_dim)?;
    let verdict = match verdict {
        IrreducibilityVerdict::Reducible { witness } => IrreducibilityVerdict::Reducible {
            witness: homogenize(&witness, &r.module_parity),
        },
        other => other,
    };
    let witness_beta_stable = match &verdict {
        IrreducibilityVerdict::Reducible { witness } => Some(witness.is_invariant_under(&r.beta)?),
        _ => None,
    };
    Ok(ModuleVerdict {
        verdict,
        witness_beta_stable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::ratlin::int;

    #[test]
    fn zero_representation_passes() {
        let g = catalog::sl2();
        let r = Representation {
            module_dim: 2,
            module_parity: vec![Parity::Even; 2],
            rho: vec![Matrix::zeros(2, 2); 3],
            beta: Matrix::from_i64(2, 2, &[1, 2, 3, 4]),
        };
        assert!(check_representation(&g, &r).unwrap().passed());
    }

    #[test]
    fn sl2_adjoint_rho_h() {
        let (r, warning) = adjoint(&catalog::sl2(), 0);
        assert!(warning.is_none());
        let expected = Matrix::from_i64(3, 3, &[0, 0, 0, 0, 2, 0, 0, 0, -2]);
        assert_eq!(r.rho[0], expected);
        assert!(check_representation(&catalog::sl2(), &r).unwrap().passed());
    }

    #[test]
    fn identity_twist_adjoint_does_not_depend_on_s() {
        let g = catalog::osp12();
        let (a, _) = adjoint(&g, 0);
        for s in 1..4 {
            assert_eq!(adjoint(&g, s).0, a);
        }
    }

    #[test]
    fn killed_odd_part_and_corruption() {
        let g = catalog::affine_twisted();
        let (mut r, _) = adjoint(&g, 1);
        assert!(r.rho[2].is_zero());
        assert!(check_representation(&g, &r).unwrap().passed());
        // rho(e1) kills e1; make it fix e1 instead
        r.rho[0].set(0, 0, int(1));
        let report = check_representation(&g, &r).unwrap();
        assert_eq!(report.bracket_compatible, Check::Fail(Witness::Pair(0, 1)));
    }

    #[test]
    fn spin_examples() {
        let v = vec![int(1), int(2)];
        assert_eq!(
            spin(&[], std::slice::from_ref(&v)).unwrap(),
            Subspace::span(2, [v.clone()]).unwrap()
        );
        assert_eq!(
            spin(&[Matrix::zeros(2, 2)], std::slice::from_ref(&v)).unwrap(),
            Subspace::span(2, [v]).unwrap()
        );
        let (r, _) = adjoint(&catalog::sl2(), 0);
        assert!(spin(&r.rho, &[catalog::sl2().basis_vector(1)]).unwrap().is_full());
        assert!(spin(&[Matrix::identity(2)], &[vec![int(1)]]).is_err());
    }

    #[test]
    fn largest_invariant_subspace() {
        // ad(e1) on the affine algebra fixes e1 and sends e2 to e1
        let g = catalog::affine();
        let ops: Vec<Matrix> = (0..3).map(|i| g.ad(i)).collect();
        let u = Subspace::coordinate(3, [0, 1]);
        let inv = largest_invariant_in(&ops, &u).unwrap();
        assert_eq!(inv, Subspace::coordinate(3, [0, 1]));
        let u = Subspace::coordinate(3, [1, 2]);
        assert_eq!(largest_invariant_in(&ops, &u).unwrap(), Subspace::coordinate(3, [2]));
    }
}
