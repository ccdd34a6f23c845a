//! Exact enumeration of weighted lozenge tilings of triangular-lattice regions.
//!
//! The crate has three layers:
//!
//! * an exact-arithmetic layer ([`products`], [`fern`]) with arbitrary-precision
//!   rationals and the special product functions (hyperfactorials, Pochhammer
//!   symbols and their step-2 variants, the `T`/`V` products) that appear in
//!   closed-form tiling counts;
//! * a geometric layer ([`lattice`], [`families`]) modelling regions as finite
//!   sets of unit triangles on the triangular lattice, with constructors for
//!   hexagons, staircase-cut hexagons, quartered hexagons, the sixteen
//!   fern-intruded halved-hexagon families, and the symmetric three-fern
//!   hexagons;
//! * a counting/verification layer ([`count`], [`formulas`], [`verify`]) with
//!   two independent exact tiling-count oracles, table-driven product-formula
//!   evaluators, and a harness that checks formula = oracle, condensation
//!   recurrences, base-case splittings and factorization identities, all by
//!   exact rational equality.

pub mod count;
pub mod error;
pub mod families;
pub mod fern;
pub mod formulas;
pub mod lattice;
pub mod products;
pub mod verify;

pub use error::Error;

/// Arbitrary-precision signed integer used for all exact counts.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational: the universal value type for weighted counts.
pub type Rat = num_rational::BigRational;

/// Shorthand: an `Int` from a machine integer.
pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// Shorthand: a `Rat` from a machine integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Shorthand: the rational `p/q`.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}
