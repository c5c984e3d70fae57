//! Exact computation of the multiplicative spectral sequence for the spaces
//! of free loops `L²ℙⁿ` in complex projective space and their holomorphic
//! counterparts `Hol(n)`.
//!
//! The E² page is a graded-commutative algebra with a derivation; the
//! spectral sequence collapses at E³, so the homology of that page is the
//! answer. Everything is computed with exact arithmetic over `ℚ` or `F_p`.
//!
//! ```
//! use mapspace_core::{betti_table, poincare_series, Field, Grading, SpaceSpec, Variant};
//!
//! let hol = SpaceSpec::new(1, Field::Rational, Variant::Hol)?;
//! let table = betti_table(hol, &[3], 10, Grading::Ordinary)?;
//! assert_eq!(table.get(3, 3), 1);
//! assert_eq!(poincare_series(hol, 3, 10)?.to_string(), "1 + t^3");
//! # Ok::<(), mapspace_core::Error>(())
//! ```

pub mod algebra;
pub mod analysis;
pub mod dga;
pub mod error;
pub mod linalg;
pub mod scalars;
pub mod spaces;

pub use algebra::{
    Element, GenId, Generator, GeneratorDecl, GeneratorKind, GeneratorTemplate, GradedAlgebra, Monomial,
};
pub use analysis::{
    betti_table, betti_table_on_page, check_collapse, check_dichotomy, check_example62, check_injectivity,
    check_periodicity, e2_table, example62_dimension, poincare_series, unit_check, BettiTable, Example62Reading,
    Grading, PoincareSeries, Verdict, VerificationReport,
};
pub use dga::{homology_dimensions, Derivation, DgaPage, RankProfile, RankProfiles};
pub use error::{Error, Result};
pub use linalg::SparseMatrix;
pub use scalars::{Field, Scalar};
pub use spaces::{e2_page, e2_page_with_generators, hol_to_loop_inclusion, pontrjagin_algebra, SpaceSpec, Variant};
