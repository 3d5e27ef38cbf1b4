//! Computational toolkit for Gorenstein liaison of codimension-two subschemes.
//!
//! The crate is layered bottom-up:
//!
//! * [`field`], [`monomial`], [`poly`], [`ring`]: exact arithmetic over GF(p).
//! * [`groebner`]: Buchberger for ideals and submodules of graded free modules,
//!   syzygies, ideal quotients, saturation, intersection, elimination.
//! * [`hilbert`]: Hilbert series of monomial ideals and modules.
//! * [`homology`]: graded maps, presentations, minimal resolutions, Betti
//!   tables, Ext, local duality and fibered sums.
//! * [`liaison`]: subscheme records, linkage certificates, Rao modules,
//!   N-type resolutions and biliaison.
//! * [`mcm`]: matrix factorizations, Knörrer's construction, ACM checks,
//!   extensions and the Serre correspondence.
//! * [`scenario`]: input documents, named end-to-end scenarios and reports.

pub mod error;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod homology;
pub mod liaison;
pub mod linalg;
pub mod mcm;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod scenario;

pub use error::{Error, Result};
pub use field::{field_arith, FieldOp, PrimeField, PrimeFieldElement};
pub use monomial::Monomial;
pub use poly::{poly_arith, random_homogeneous, PolyOp, Polynomial};
pub use ring::{PolyRing, RingDescriptor};
