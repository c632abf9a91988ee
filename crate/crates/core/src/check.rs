//! Pass/fail outcomes that always carry a witness on failure.

use serde::{Deserialize, Serialize};

use crate::ratlin::{Scalar, Subspace};

/// Evidence that a property fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Witness {
    /// A single basis element, by index.
    Basis(usize),
    /// An ordered pair of basis indices.
    Pair(usize, usize),
    /// An ordered triple of basis indices.
    Triple(usize, usize, usize),
    /// A coordinate vector.
    #[serde(with = "crate::ratlin::serde_vector")]
    Vector(Vec<Scalar>),
    /// A short list of coordinate vectors, e.g. `x`, `y` and `[x, y]`.
    #[serde(with = "crate::ratlin::serde_vectors")]
    Vectors(Vec<Vec<Scalar>>),
    /// A subspace, e.g. a proper invariant subspace.
    Subspace(Subspace),
    /// Free-form explanation where no algebraic object fits.
    Note(String),
}

/// Outcome of a single property check. A failure always carries a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Check {
    Pass,
    Fail(Witness),
}

impl Check {
    pub fn passed(&self) -> bool {
        matches!(self, Check::Pass)
    }

    pub fn failed(&self) -> bool {
        !self.passed()
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Check::Pass => None,
            Check::Fail(w) => Some(w),
        }
    }

    /// Pass iff `witness` is `None`.
    pub fn from_witness(witness: Option<Witness>) -> Self {
        witness.map_or(Check::Pass, Check::Fail)
    }

    /// Combine two checks, keeping the first failure.
    pub fn and(self, other: Check) -> Check {
        match self {
            Check::Pass => other,
            fail => fail,
        }
    }
}

impl From<bool> for Check {
    /// `false` becomes a failure with an uninformative note; prefer
    /// [`Check::from_witness`] where a real witness exists.
    fn from(ok: bool) -> Self {
        if ok {
            Check::Pass
        } else {
            Check::Fail(Witness::Note("condition does not hold".into()))
        }
    }
}
