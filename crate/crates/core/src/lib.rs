//! Exact arithmetic for finite-dimensional hom-Lie superalgebras over Q.
//!
//! An algebra is a basis of parity-homogeneous elements, a structure
//! tensor and a twist map `alpha`. On top of that the crate provides axiom
//! checks, hom-ideals and quotients, representations and an
//! irreducibility test, Z-grading diagnostics, the minimal graded
//! realization of a local part through its tensor representation, and
//! invariant bilinear forms.
//!
//! ```
//! use homlie::{catalog, check_axioms, structure::derived_and_center};
//!
//! let g = catalog::affine();
//! assert!(check_axioms(&g).is_hom_lie_superalgebra());
//! let (_, center) = derived_and_center(&g);
//! assert_eq!(center.dim(), 1);
//! ```

pub mod catalog;
pub mod check;
pub mod cli;
pub mod error;
pub mod format;
pub mod forms;
pub mod grading;
pub mod prolong;
pub mod ratlin;
pub mod repth;
pub mod structure;
pub mod superalgebra;

pub use check::{Check, Witness};
pub use error::{Error, Result};
pub use ratlin::{Matrix, Scalar, Subspace};
pub use superalgebra::{check_axioms, AxiomReport, HomLieSuperalgebra, Parity};

macro_rules! book_chapters {
    ($($name:ident => $file:literal;)*) => {
        $(
            #[cfg(doctest)]
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            struct $name;
        )*
    };
}

book_chapters! {
    BookIntroduction => "introduction.md";
    BookAlgebras => "algebras.md";
    BookStructure => "structure.md";
    BookRepresentations => "representations.md";
    BookGrading => "grading.md";
    BookProlongation => "prolongation.md";
    BookForms => "forms.md";
    BookCli => "cli.md";
}
