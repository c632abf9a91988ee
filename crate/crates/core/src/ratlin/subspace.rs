use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{kernel, Matrix, Scalar};
use crate::error::{Error, Result};

/// A linear subspace of `Q^n`, stored by its reduced row-echelon basis.
///
/// The representation is canonical: two subspaces are equal exactly when
/// their basis matrices are equal, so `==` is subspace equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of the given vectors.
    pub fn span<I>(ambient_dim: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        Ok(Self::from_rows(Matrix::from_rows(ambient_dim, vectors)?))
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient_dim: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let rows = indices.into_iter().map(|i| super::unit(ambient_dim, i));
        Self::span(ambient_dim, rows).expect("unit vectors have the ambient length")
    }

    /// Row space of `m`.
    pub fn from_rows(m: Matrix) -> Self {
        let ambient_dim = m.cols();
        let (r, pivots) = m.rref();
        let basis = r.submatrix(0..pivots.len(), 0..ambient_dim);
        Subspace {
            ambient_dim,
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Proper and nonzero.
    pub fn is_nontrivial(&self) -> bool {
        !self.is_zero() && !self.is_full()
    }

    /// The canonical basis, one row per basis vector.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (row, &p) in self.pivots.iter().enumerate() {
            if w[p].is_zero() {
                continue;
            }
            let factor = w[p].clone();
            for (c, b) in self.basis.row(row).iter().enumerate() {
                if !b.is_zero() {
                    w[c] -= &factor * b;
                }
            }
        }
        w
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient_dim && self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Vector with the given coordinates in the canonical basis.
    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.ambient_dim];
        for (row, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, b) in self.basis.row(row).iter().enumerate() {
                if !b.is_zero() {
                    out[j] += c * b;
                }
            }
        }
        out
    }

    fn same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        Ok(())
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.same_ambient(other)?;
        Ok(other.basis_vectors().iter().all(|v| self.contains_vector(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        Ok(Subspace::from_rows(self.basis.vstack(&other.basis)?))
    }

    /// Intersection by the Zassenhaus block method: row-reduce
    /// `[[A, A], [B, 0]]`; rows whose left half vanishes carry a basis of
    /// the intersection in their right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        let n = self.ambient_dim;
        let top = self.basis.hstack(&self.basis)?;
        let bottom = other.basis.hstack(&Matrix::zeros(other.dim(), n))?;
        let (r, pivots) = top.vstack(&bottom)?.rref();
        let rows = (0..pivots.len())
            .filter(|&i| pivots[i] >= n)
            .map(|i| r.row(i)[n..].to_vec());
        Subspace::span(n, rows)
    }

    /// `{a : a . v = 0 for all v in self}`.
    pub fn annihilator(&self) -> Subspace {
        kernel(&self.basis)
    }

    /// Image of the subspace under `m`.
    pub fn image(&self, m: &Matrix) -> Result<Subspace> {
        if m.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: m.cols(),
            });
        }
        let images = self
            .basis_vectors()
            .iter()
            .map(|v| m.apply(v))
            .collect::<Result<Vec<_>>>()?;
        Subspace::span(m.rows(), images)
    }

    /// Whether `m` maps the subspace into itself.
    pub fn is_invariant_under(&self, m: &Matrix) -> Result<bool> {
        self.contains(&self.image(m)?)
    }
}

#[derive(Serialize, Deserialize)]
struct SubspaceRepr {
    ambient_dim: usize,
    #[serde(with = "super::serde_vectors")]
    basis: Vec<Vec<Scalar>>,
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SubspaceRepr {
            ambient_dim: self.ambient_dim,
            basis: self.basis_vectors(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = SubspaceRepr::deserialize(d)?;
        Subspace::span(repr.ambient_dim, repr.basis).map_err(serde::de::Error::custom)
    }
}
