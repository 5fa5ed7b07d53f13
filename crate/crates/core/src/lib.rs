//! Exact-arithmetic classification of endomorphism algebras of abelian
//! surfaces over finite fields, and of the finite groups that occur as
//! automorphism groups of polarized abelian surfaces.
//!
//! Everything in this crate is computed over `i128` integers and
//! `Ratio<i128>` rationals; there is no floating point anywhere.  The
//! main layers, bottom to top:
//!
//! * [`arith`] — factorization, Kronecker and Hilbert symbols, p-adic
//!   valuations and the other scalar number theory everything else uses.
//! * [`fields`] — quadratic, biquadratic CM and cyclotomic fields with
//!   exact prime-splitting data.
//! * [`weil`] — q-Weil numbers, Newton polygons, local Brauer invariants
//!   of the endomorphism algebra, and the Albert-type bookkeeping.
//! * [`amitsur`] — which dicyclic (and related) groups embed in division
//!   rings, via the classical embedding criteria.
//! * [`quat`] — definite quaternion algebras over `Q` and real quadratic
//!   fields, explicit orders, maximality certificates and torsion-unit
//!   enumeration by exact lattice search.
//! * [`groups`] — concrete finite groups by multiplication table,
//!   invariant fingerprints and identification against a frozen catalogue.
//! * [`classify`] — the classification pipelines: elliptic isogeny
//!   classes, and the four families of maximal automorphism groups of
//!   polarized abelian surfaces (simple, product, ordinary square,
//!   supersingular square).

pub mod arith;
pub mod fields;
pub mod poly;
pub mod weil;
pub mod amitsur;
pub mod quat;
pub mod groups;
pub mod classify;

use thiserror::Error;

/// A rational number with `i128` numerator and denominator.
pub type Rational = num_rational::Ratio<i128>;

/// Errors surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument was outside the domain of the function.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// An input polynomial or parameter set is not a q-Weil datum.
    #[error("not a Weil number datum: {0}")]
    NotWeil(String),
    /// A structural assumption of the computation failed to hold.
    #[error("structure error: {0}")]
    Structure(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
