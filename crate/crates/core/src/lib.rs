//! Support-constrained Gabidulin codes over cyclotomic fields.
//!
//! The crate builds generator matrices of maximum-rank-distance codes over
//! `Q(ζ_p)` whose entries vanish on prescribed positions, and certifies them
//! with exact arithmetic:
//!
//! * [`field`]: rationals, `Q(ζ_p)`, and the generator `θ` of its Galois group
//! * [`linalg`]: determinants, ranks and bordered minors over `Q(ζ_p)`
//! * [`constraints`]: the intersection condition on zero patterns, completion
//!   of zero sets, and the best achievable dimension parameter `ℓ`
//! * [`gabidulin`]: Moore matrices and the randomized construction
//! * [`gmmds`]: the polynomial oracle that cross-checks the condition
//! * [`certify`]: exact certificates and subcodes for infeasible patterns
//! * [`io`]: JSON formats
//!
//! ```
//! use sparsegab::{certify, constraints::SupportSpec, field::GaloisContext, gabidulin};
//!
//! let ctx = GaloisContext::new(11).unwrap();
//! // rows 1..3 must vanish on columns {1,2}, {3,4}, {5,6} (0-based here)
//! let spec = SupportSpec::new(6, 3, [[0, 1], [2, 3], [4, 5]]).unwrap();
//! let result = gabidulin::construct(&spec, &ctx, 1200, 1, 64).unwrap();
//! let cert = certify::certify_mrd(&ctx, &result, &spec, true).unwrap();
//! assert!(cert.passed);
//! assert_eq!(cert.hamming_distance, Some(4));
//! ```
//!
//! The guide in `book/` walks through each piece; its code blocks are
//! compiled and run as doctests of this crate.

pub mod certify;
pub mod constraints;
pub mod field;
pub mod gabidulin;
pub mod gmmds;
pub mod io;
pub mod linalg;

pub use certify::{build_subcode, certify_mrd, Certificate};
pub use constraints::{check_condition, complete_sets, compute_ell, SupportSpec};
pub use field::{CycloElement, GaloisContext, Rational};
pub use gabidulin::{construct, ConstructionResult};
pub use linalg::ExactMatrix;

/// Book chapters, compiled and run as doctests.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    pub mod fields {}
    #[doc = include_str!("../../../book/src/linear-algebra.md")]
    pub mod linear_algebra {}
    #[doc = include_str!("../../../book/src/zero-patterns.md")]
    pub mod zero_patterns {}
    #[doc = include_str!("../../../book/src/construction.md")]
    pub mod construction {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    pub mod oracle {}
    #[doc = include_str!("../../../book/src/certification.md")]
    pub mod certification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
