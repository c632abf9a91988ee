//! Exact linear algebra over the rationals.
//!
//! Everything above this module reduces to three primitives: [`kernel`],
//! [`solve`] and the subspace [`lattice`] operations. Subspaces are kept in
//! reduced row-echelon form so that equality of subspaces is equality of
//! matrices.

mod matrix;
mod subspace;

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use matrix::Matrix;
pub use subspace::Subspace;

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `num / den`; panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Parse `"p"` or `"p/q"` (optional sign, no spaces).
pub fn parse_scalar(s: &str) -> Option<Scalar> {
    let s = s.trim();
    let valid = |t: &str| {
        let t = t.strip_prefix('-').or_else(|| t.strip_prefix('+')).unwrap_or(t);
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    match s.split_once('/') {
        Some((p, q)) => {
            if !valid(p) || !q.bytes().all(|b| b.is_ascii_digit()) || q.is_empty() {
                return None;
            }
            let p: BigInt = p.parse().ok()?;
            let q: BigInt = q.parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Scalar::new(p, q))
        }
        None => {
            if !valid(s) {
                return None;
            }
            Some(Scalar::from_integer(s.parse().ok()?))
        }
    }
}

/// `"p"` for integers, `"p/q"` otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    x.to_string()
}

pub fn zero_vec(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vec(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `y += a * x`
pub fn axpy(y: &mut [Scalar], a: &Scalar, x: &[Scalar]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += a * xi;
        }
    }
}

pub fn scaled(v: &[Scalar], a: &Scalar) -> Vec<Scalar> {
    v.iter().map(|x| x * a).collect()
}

static KERNEL_CALLS: AtomicU64 = AtomicU64::new(0);
static RANK_NULLITY_VIOLATIONS: AtomicU64 = AtomicU64::new(0);

/// Process-wide tally of [`kernel`] calls and of calls whose result failed
/// the built-in rank-nullity / `m v = 0` self-check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KernelAudit {
    pub calls: u64,
    pub violations: u64,
}

pub fn kernel_audit() -> KernelAudit {
    KernelAudit {
        calls: KERNEL_CALLS.load(Ordering::Relaxed),
        violations: RANK_NULLITY_VIOLATIONS.load(Ordering::Relaxed),
    }
}

/// Null space `{v : m v = 0}` as a subspace of `Q^cols`.
pub fn kernel(m: &Matrix) -> Subspace {
    let n = m.cols();
    let (r, pivots) = m.rref();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let vectors = free.iter().map(|&f| {
        let mut v = unit(n, f);
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -r.get(row, f);
        }
        v
    });
    let k = Subspace::span(n, vectors).expect("kernel vectors have ambient length");

    KERNEL_CALLS.fetch_add(1, Ordering::Relaxed);
    let annihilated = k
        .basis_vectors()
        .iter()
        .all(|v| m.apply(v).map(|w| is_zero_vec(&w)).unwrap_or(false));
    if k.dim() + pivots.len() != n || !annihilated {
        RANK_NULLITY_VIOLATIONS.fetch_add(1, Ordering::Relaxed);
    }
    k
}

/// Classification of the solutions of `a x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Scalar>),
    Affine { particular: Vec<Scalar>, kernel: Subspace },
    Inconsistent,
}

impl Solution {
    /// Some solution, if there is one.
    pub fn any(&self) -> Option<&[Scalar]> {
        match self {
            Solution::Unique(x) => Some(x),
            Solution::Affine { particular, .. } => Some(particular),
            Solution::Inconsistent => None,
        }
    }
}

/// Solve `a x = b` exactly. The particular solution sets every free
/// variable to zero.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Result<Solution> {
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let n = a.cols();
    let rhs = Matrix::from_columns(a.rows(), &[b.to_vec()])?;
    let (r, pivots) = a.hstack(&rhs)?.rref();
    if pivots.last() == Some(&n) {
        return Ok(Solution::Inconsistent);
    }
    let mut x = zero_vec(n);
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r.get(row, n).clone();
    }
    let k = kernel(a);
    if k.is_zero() {
        Ok(Solution::Unique(x))
    } else {
        Ok(Solution::Affine {
            particular: x,
            kernel: k,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeOp {
    Sum,
    Intersect,
    Contains,
    Equal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeResult {
    Space(Subspace),
    Truth(bool),
}

/// Subspace lattice operations; `Contains` asks whether `a ⊇ b`.
pub fn lattice(a: &Subspace, b: &Subspace, op: LatticeOp) -> Result<LatticeResult> {
    Ok(match op {
        LatticeOp::Sum => LatticeResult::Space(a.sum(b)?),
        LatticeOp::Intersect => LatticeResult::Space(a.intersect(b)?),
        LatticeOp::Contains => LatticeResult::Truth(a.contains(b)?),
        LatticeOp::Equal => {
            if a.ambient_dim() != b.ambient_dim() {
                return Err(Error::AmbientMismatch {
                    left: a.ambient_dim(),
                    right: b.ambient_dim(),
                });
            }
            LatticeResult::Truth(a == b)
        }
    })
}

/// Serde helpers: scalars travel as `"p/q"` strings.
pub(crate) mod serde_vector {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_scalar, parse_scalar, Scalar};

    pub fn serialize<S: Serializer>(v: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_scalar))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Scalar>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| parse_scalar(t).ok_or_else(|| serde::de::Error::custom(format!("bad scalar `{t}`"))))
            .collect()
    }
}

pub(crate) mod serde_vectors {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_scalar, parse_scalar, Scalar};

    pub fn serialize<S: Serializer>(v: &[Vec<Scalar>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|row| row.iter().map(format_scalar).collect::<Vec<_>>()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Scalar>>, D::Error> {
        Vec::<Vec<String>>::deserialize(d)?
            .iter()
            .map(|row| {
                row.iter()
                    .map(|t| parse_scalar(t).ok_or_else(|| serde::de::Error::custom(format!("bad scalar `{t}`"))))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| int(x)).collect()
    }

    /// All integer vectors with entries in `-r..=r`.
    fn grid(n: usize, r: i64) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|p: Vec<Scalar>| {
                    (-r..=r).map(move |x| {
                        let mut q = p.clone();
                        q.push(int(x));
                        q
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn scalar_parsing() {
        assert_eq!(parse_scalar("3"), Some(int(3)));
        assert_eq!(parse_scalar("-6/4"), Some(frac(-3, 2)));
        assert_eq!(parse_scalar("1/0"), None);
        assert_eq!(parse_scalar("1/-2"), None);
        assert_eq!(parse_scalar("x"), None);
        assert_eq!(format_scalar(&frac(-3, 2)), "-3/2");
        assert_eq!(format_scalar(&frac(4, 2)), "2");
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        assert!(kernel(&Matrix::identity(3)).is_zero());
        assert_eq!(kernel(&Matrix::zeros(2, 3)), Subspace::full(3));
    }

    #[test]
    fn kernel_row_vector_matches_grid_oracle() {
        let m = Matrix::from_i64(1, 2, &[1, 2]);
        let oracle = Subspace::span(2, grid(2, 2).into_iter().filter(|x| is_zero_vec(&m.apply(x).unwrap()))).unwrap();
        let k = kernel(&m);
        assert_eq!(k, oracle);
        // frozen canonical row
        assert_eq!(k.basis().row(0), &[int(1), frac(-1, 2)]);
    }

    #[test]
    fn solve_examples() {
        assert_eq!(
            solve(&Matrix::identity(2), &v(&[3, -1])).unwrap(),
            Solution::Unique(v(&[3, -1]))
        );
        assert_eq!(
            solve(&Matrix::zeros(2, 2), &v(&[0, 1])).unwrap(),
            Solution::Inconsistent
        );
        let a = Matrix::from_i64(1, 2, &[1, 1]);
        let sol = solve(&a, &v(&[1])).unwrap();
        // grid oracle: every grid solution differs from the particular one
        // by a kernel vector, and the kernel is spanned by such differences.
        let sols: Vec<_> = grid(2, 2)
            .into_iter()
            .filter(|x| a.apply(x).unwrap() == v(&[1]))
            .collect();
        let diffs = sols.iter().map(|x| vec![&x[0] - int(1), x[1].clone()]);
        let oracle_kernel = Subspace::span(2, diffs).unwrap();
        assert_eq!(
            sol,
            Solution::Affine {
                particular: v(&[1, 0]),
                kernel: oracle_kernel.clone(),
            }
        );
        assert_eq!(oracle_kernel, Subspace::span(2, [v(&[1, -1])]).unwrap());
        assert!(matches!(solve(&a, &v(&[1, 2])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn lattice_examples() {
        let x = Subspace::span(2, [v(&[1, 0])]).unwrap();
        let y = Subspace::span(2, [v(&[0, 1])]).unwrap();
        assert_eq!(
            lattice(&x, &y, LatticeOp::Sum).unwrap(),
            LatticeResult::Space(Subspace::full(2))
        );
        assert_eq!(
            lattice(&x, &x, LatticeOp::Intersect).unwrap(),
            LatticeResult::Space(x.clone())
        );

        let a = Subspace::span(3, [v(&[1, 1, 0])]).unwrap();
        let b = Subspace::span(3, [v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap();
        let oracle = Subspace::span(
            3,
            grid(3, 2)
                .into_iter()
                .filter(|w| a.contains_vector(w) && b.contains_vector(w)),
        )
        .unwrap();
        assert_eq!(
            lattice(&a, &b, LatticeOp::Intersect).unwrap(),
            LatticeResult::Space(oracle)
        );
        assert_eq!(
            lattice(&b, &a, LatticeOp::Contains).unwrap(),
            LatticeResult::Truth(true)
        );
        assert_eq!(lattice(&a, &b, LatticeOp::Equal).unwrap(), LatticeResult::Truth(false));
        assert!(lattice(&a, &x, LatticeOp::Sum).is_err());
    }

    #[test]
    fn annihilator_and_coordinates() {
        let s = Subspace::span(3, [v(&[1, 2, 3])]).unwrap();
        let ann = s.annihilator();
        assert_eq!(ann.dim(), 2);
        assert_eq!(ann.annihilator(), s);
        let coords = s.coordinates(&v(&[2, 4, 6])).unwrap();
        assert_eq!(s.combine(&coords), v(&[2, 4, 6]));
        assert!(s.coordinates(&v(&[1, 0, 0])).is_none());
    }
}
