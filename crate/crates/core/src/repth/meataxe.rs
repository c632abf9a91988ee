//! Norton-style irreducibility test over Q.
//!
//! If `theta` is a singular element of the algebra generated by the
//! operators, a proper submodule `U` either meets `ker theta` or its
//! annihilator meets `ker theta^T`. So when `ker theta` is a line that
//! spins to the whole module, and `ker theta^T` spins to the whole dual
//! under the transposed operators, there is no proper submodule.
//!
//! Candidates for `theta` are tried in a fixed order: the generators,
//! their pairwise products and sums, each shifted by small integers, then
//! random combinations of short words drawn from a seeded generator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{check_ops, spin_in};
use crate::error::{Error, Result};
use crate::ratlin::{int, kernel, unit, Matrix, Subspace};
use crate::superalgebra::Parity;

const SEED: u64 = 0x5eed_1e55;
const RANDOM_CANDIDATES: usize = 64;
const SHIFTS: [i64; 7] = [0, 1, -1, 2, -2, 3, -3];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum IrreducibilityVerdict {
    /// No proper nonzero invariant subspace exists.
    Irreducible { certificate: String },
    /// `witness` is proper, nonzero and invariant under every operator.
    Reducible { witness: Subspace },
    /// The search budget ran out without a certificate or a witness.
    Inconclusive { reason: String },
}

impl IrreducibilityVerdict {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, IrreducibilityVerdict::Irreducible { .. })
    }

    pub fn is_reducible(&self) -> bool {
        matches!(self, IrreducibilityVerdict::Reducible { .. })
    }

    pub fn witness(&self) -> Option<&Subspace> {
        match self {
            IrreducibilityVerdict::Reducible { witness } => Some(witness),
            _ => None,
        }
    }
}

struct Search<'a> {
    n: usize,
    ops: &'a [Matrix],
    transposes: Vec<Matrix>,
}

enum Step {
    Witness(Subspace),
    Certified,
    Undecided,
}

impl Search<'_> {
    fn proper(&self, s: &Subspace) -> bool {
        !s.is_zero() && s.dim() < self.n
    }

    /// Spin a vector in the module; a proper result is a witness.
    fn spin_module(&self, v: &[crate::ratlin::Scalar]) -> Result<Option<Subspace>> {
        let s = spin_in(self.n, self.ops, &[v.to_vec()])?;
        Ok(self.proper(&s).then_some(s))
    }

    /// Spin a vector in the dual; a proper result yields the witness
    /// given by its annihilator.
    fn spin_dual(&self, v: &[crate::ratlin::Scalar]) -> Result<Option<Subspace>> {
        let s = spin_in(self.n, &self.transposes, &[v.to_vec()])?;
        Ok(self.proper(&s).then(|| s.annihilator()))
    }

    fn try_element(&self, theta: &Matrix) -> Result<Step> {
        let k = kernel(theta);
        if k.is_zero() {
            return Ok(Step::Undecided);
        }
        for v in k.basis_vectors() {
            if let Some(w) = self.spin_module(&v)? {
                return Ok(Step::Witness(w));
            }
        }
        let kt = kernel(&theta.transpose());
        for v in kt.basis_vectors() {
            if let Some(w) = self.spin_dual(&v)? {
                return Ok(Step::Witness(w));
            }
        }
        Ok(if k.dim() == 1 { Step::Certified } else { Step::Undecided })
    }
}

fn candidates(ops: &[Matrix], n: usize) -> Vec<(String, Matrix)> {
    let mut base: Vec<(String, Matrix)> = Vec::new();
    for (i, a) in ops.iter().enumerate() {
        base.push((format!("A{i}"), a.clone()));
    }
    for (i, a) in ops.iter().enumerate() {
        for (j, b) in ops.iter().enumerate() {
            base.push((format!("A{i}*A{j}"), a * b));
        }
    }
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            base.push((format!("A{i}+A{j}"), &ops[i] + &ops[j]));
        }
    }
    let id = Matrix::identity(n);
    let mut out = Vec::new();
    for (name, m) in &base {
        for &l in &SHIFTS {
            if l == 0 {
                out.push((name.clone(), m.clone()));
            } else {
                out.push((format!("{name} - ({l})I"), m - &id.scale(&int(l))));
            }
        }
    }
    out
}

fn random_candidate(ops: &[Matrix], n: usize, rng: &mut ChaCha8Rng) -> (String, Matrix) {
    let mut theta = Matrix::zeros(n, n);
    let mut terms = Vec::new();
    for _ in 0..3 {
        let len = rng.gen_range(1..=3);
        let mut word = Matrix::identity(n);
        let mut label = String::new();
        for _ in 0..len {
            let i = rng.gen_range(0..ops.len());
            word = &word * &ops[i];
            label.push_str(&format!("A{i}"));
        }
        let c: i64 = rng.gen_range(-3..=3);
        theta = &theta + &word.scale(&int(c));
        terms.push(format!("{c}*{label}"));
    }
    let shift: i64 = rng.gen_range(-3..=3);
    theta = &theta - &Matrix::identity(n).scale(&int(shift));
    (format!("{} - ({shift})I", terms.join(" + ")), theta)
}

/// Decide whether the operators act irreducibly on `Q^dim`.
///
/// `Irreducible` is returned only with a Norton certificate covering both
/// the module and its dual; `Reducible` always carries an invariant
/// witness; `Inconclusive` means the fixed search budget was exhausted.
pub fn irreducible(ops: &[Matrix], dim: usize) -> Result<IrreducibilityVerdict> {
    if dim == 0 {
        return Err(Error::Invalid("irreducibility is undefined for the zero module".into()));
    }
    check_ops(ops, dim)?;
    if dim == 1 {
        return Ok(IrreducibilityVerdict::Irreducible {
            certificate: "one-dimensional module".into(),
        });
    }
    let search = Search {
        n: dim,
        ops,
        transposes: ops.iter().map(Matrix::transpose).collect(),
    };
    for i in 0..dim {
        if let Some(w) = search.spin_module(&unit(dim, i))? {
            return Ok(IrreducibilityVerdict::Reducible { witness: w });
        }
    }
    for i in 0..dim {
        if let Some(w) = search.spin_dual(&unit(dim, i))? {
            return Ok(IrreducibilityVerdict::Reducible { witness: w });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let scheduled = candidates(ops, dim);
    let random = (0..RANDOM_CANDIDATES).map(|_| random_candidate(ops, dim, &mut rng));
    let mut tried = 0;
    for (name, theta) in scheduled.into_iter().chain(random) {
        tried += 1;
        match search.try_element(&theta)? {
            Step::Witness(w) => return Ok(IrreducibilityVerdict::Reducible { witness: w }),
            Step::Certified => {
                return Ok(IrreducibilityVerdict::Irreducible {
                    certificate: format!(
                        "ker({name}) is a line spinning to the module; its transpose kernel spins to the dual"
                    ),
                })
            }
            Step::Undecided => {}
        }
    }
    Ok(IrreducibilityVerdict::Inconclusive {
        reason: format!("no singular element with one-dimensional kernel among {tried} candidates"),
    })
}

/// Replace a mixed-parity invariant subspace by a homogeneous one. Under
/// even operators both parity projections of an invariant subspace are
/// invariant; the even projection of a mixed subspace is nonzero and,
/// since the odd part of the module is then nonzero, proper.
pub fn homogenize(w: &Subspace, parity: &[Parity]) -> Subspace {
    let n = w.ambient_dim();
    let project = |p: Parity| Matrix::from_fn(n, n, |r, c| if r == c && parity[r] == p { int(1) } else { int(0) });
    let even = w.image(&project(Parity::Even)).expect("square projector");
    let odd = w.image(&project(Parity::Odd)).expect("square projector");
    if even.is_zero() || odd.is_zero() {
        return w.clone();
    }
    even
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn small_cases() {
        assert!(irreducible(&[], 0).is_err());
        assert!(irreducible(&[Matrix::zeros(1, 1)], 1).unwrap().is_irreducible());
        let v = irreducible(&[Matrix::zeros(2, 2)], 2).unwrap();
        assert_eq!(v.witness(), Some(&Subspace::coordinate(2, [0])));
    }

    #[test]
    fn sl2_adjoint_is_certified() {
        let g = catalog::sl2();
        let ops: Vec<Matrix> = (0..3).map(|i| g.ad(i)).collect();
        assert!(irreducible(&ops, 3).unwrap().is_irreducible());
    }

    #[test]
    fn upper_triangular_is_reducible() {
        let ops = [Matrix::from_i64(2, 2, &[1, 1, 0, 1])];
        let v = irreducible(&ops, 2).unwrap();
        let w = v.witness().unwrap();
        assert!(w.is_invariant_under(&ops[0]).unwrap());
        assert_eq!(w.dim(), 1);
    }

    #[test]
    fn dual_side_finds_witness() {
        // every standard vector spins to Q^2; the invariant lines are (1, 1) and (1, -1)
        let ops = [
            Matrix::from_i64(2, 2, &[0, 1, 1, 0]),
            Matrix::from_i64(2, 2, &[1, 0, 0, 1]),
        ];
        let v = irreducible(&ops, 2).unwrap();
        let w = v.witness().unwrap();
        assert!(ops.iter().all(|m| w.is_invariant_under(m).unwrap()));
    }

    #[test]
    fn rotation_over_q_is_inconclusive() {
        let ops = [Matrix::from_i64(2, 2, &[0, -1, 1, 0])];
        assert!(matches!(
            irreducible(&ops, 2).unwrap(),
            IrreducibilityVerdict::Inconclusive { .. }
        ));
    }

    #[test]
    fn homogenize_mixed_witness() {
        let w = Subspace::span(2, [vec![int(1), int(1)]]).unwrap();
        let h = homogenize(&w, &[Parity::Even, Parity::Odd]);
        assert_eq!(h, Subspace::coordinate(2, [0]));
    }
}
