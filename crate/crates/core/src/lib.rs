pub mod balanced;
pub mod complex;
pub mod error;
pub mod generators;
pub mod identities;
pub mod io;
pub mod label;
pub mod poly;
pub mod poset;
pub mod report;
pub mod subset;
pub mod toric;

/// Concept chapters of the guide, compiled here so their examples run as doc tests.
pub mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/complexes.md")]
    pub mod complexes {}
    #[doc = include_str!("../../../book/src/balanced.md")]
    pub mod balanced {}
    #[doc = include_str!("../../../book/src/posets.md")]
    pub mod posets {}
    #[doc = include_str!("../../../book/src/toric.md")]
    pub mod toric {}
    #[doc = include_str!("../../../book/src/generators.md")]
    pub mod generators {}
    #[doc = include_str!("../../../book/src/reports.md")]
    pub mod reports {}
}

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
struct ReadmeExamples;

pub use complex::{build_complex, Face, SimplicialComplex};
pub use error::{Error, Result};
pub use label::Label;
pub use poly::Poly;
pub use report::VerificationReport;
pub use subset::ColorSet;
