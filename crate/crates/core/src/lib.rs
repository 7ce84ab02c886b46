//! Atoms and strong atoms of the additive monoid of `N₀[α]`.
//!
//! Given the minimal polynomial of an algebraic number `α`, this crate
//! computes `(|S(M_α)|, |A(M_α)|)`: the number of strong atoms and atoms of
//! the additive monoid `M_α` of the cyclic semidomain `N₀[α]`. Every answer
//! comes with certificates (multiplier polynomials, Descartes bounds,
//! classification cases) that can be re-checked with plain polynomial
//! arithmetic.
//!
//! All arithmetic is exact. The modules build on each other bottom-up:
//!
//! - [`polycore`]: integer and rational polynomials, minimal pairs.
//! - [`rootcount`]: sign variations, Sturm chains, root isolation.
//! - [`irreducibility`]: certifying that an input is a minimal polynomial.
//! - [`signsearch`]: does some multiple of `m(x)` have a given sign pattern?
//! - [`monoid`]: the analyzer and its certificates.
//! - [`transforms`]: the `x → x^k` lift and the `(4k+c, 5k+c)` family.
//! - [`oracle`]: brute-force factorization enumeration for cross-checks.
//!
//! ```
//! use semidomain_atoms::{monoid, Caps, Count, IntPoly};
//!
//! let m: IntPoly = "x^3 - 8x^2 + 4x - 2".parse()?;
//! let spec = monoid::AlgebraicNumberSpec::new(&m, &Caps::default(), false)?;
//! let pair = monoid::analyze(&spec, &Caps::default())?;
//! assert_eq!((pair.strong, pair.atoms), (Count::Finite(4), Count::Finite(5)));
//! # Ok::<(), semidomain_atoms::Error>(())
//! ```

pub mod caps;
pub mod error;
pub mod irreducibility;
pub mod monoid;
pub mod oracle;
pub mod polycore;
pub mod rootcount;
pub mod signsearch;
pub mod transforms;

pub use caps::Caps;
pub use error::{Error, Result};
pub use monoid::{AlgebraicNumberSpec, Certificate, Count, PairResult};
pub use polycore::{IntPoly, Integer, Rational, RatPoly};

/// The guide in `book/src`, compiled as doctests so its snippets stay honest.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    pub struct Intro;
    #[doc = include_str!("../../../book/src/polynomials.md")]
    pub struct Polynomials;
    #[doc = include_str!("../../../book/src/root-counting.md")]
    pub struct RootCounting;
    #[doc = include_str!("../../../book/src/irreducibility.md")]
    pub struct Irreducibility;
    #[doc = include_str!("../../../book/src/sign-patterns.md")]
    pub struct SignPatterns;
    #[doc = include_str!("../../../book/src/analyzer.md")]
    pub struct Analyzer;
    #[doc = include_str!("../../../book/src/degree-two.md")]
    pub struct DegreeTwo;
    #[doc = include_str!("../../../book/src/transforms.md")]
    pub struct Transforms;
    #[doc = include_str!("../../../book/src/oracle.md")]
    pub struct Oracle;
    #[doc = include_str!("../../../book/src/certificates.md")]
    pub struct Certificates;
}
