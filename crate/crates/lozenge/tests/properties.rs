//! Randomized invariant checks over the library's core types: the counting
//! routes must agree on arbitrary small regions, the product-formula
//! building blocks must satisfy their algebraic laws, and serialization
//! must round-trip exactly.

use lozenge::count::{count_tilings, count_tilings_determinant};
use lozenge::families::{build_hexagon, build_quartered, QuarteredKind};
use lozenge::fern::Fern;
use lozenge::formulas::macmahon;
use lozenge::lattice::{format_rat, parse_rat, Region};
use lozenge::products::{factorial, hyperfactorial, pochhammer};
use lozenge::{rat, ratio, Rat};
use proptest::prelude::*;

fn small_shape() -> impl Strategy<Value = Fern> {
    prop::collection::vec(0..=2i64, 0..=3).prop_map(Fern)
}

fn quartered_kind() -> impl Strategy<Value = QuarteredKind> {
    prop_oneof![
        Just(QuarteredKind::Q),
        Just(QuarteredKind::Qp),
        Just(QuarteredKind::K),
        Just(QuarteredKind::Kp),
    ]
}

proptest! {
    /// Both counting routes give the same exact value on any buildable
    /// small quartered region, and the region is balanced.
    #[test]
    fn counting_routes_agree(kind in quartered_kind(), t in small_shape()) {
        if let Ok(region) = build_quartered(kind, &t) {
            prop_assert!(region.is_balanced());
            let dp = count_tilings(&region).unwrap();
            let det = count_tilings_determinant(&region).unwrap();
            prop_assert_eq!(dp, det);
        }
    }

    /// Rising factorials compose: (x)_n (x+n)_m = (x)_{n+m}.
    #[test]
    fn pochhammer_composes(p in 1..=20i64, q in 1..=5i64, n in 0..=6i64, m in 0..=6i64) {
        let x = ratio(p, q);
        let lhs = pochhammer(&x, n).unwrap() * pochhammer(&(x.clone() + rat(n)), m).unwrap();
        prop_assert_eq!(lhs, pochhammer(&x, n + m).unwrap());
    }

    /// The hyperfactorial satisfies its defining recurrence.
    #[test]
    fn hyperfactorial_recurrence(n in 0..=12i64) {
        prop_assert_eq!(
            hyperfactorial(n + 1).unwrap(),
            hyperfactorial(n).unwrap() * factorial(n).unwrap()
        );
    }

    /// Fern display and parse round-trip exactly.
    #[test]
    fn fern_roundtrip(entries in prop::collection::vec(0..=9i64, 0..=5)) {
        let f = Fern(entries);
        prop_assert_eq!(Fern::parse(&f.to_string()).unwrap(), f);
    }

    /// The `+1` operation adds exactly one unit of total size: into the
    /// last entry when the length is even and nonzero, as a new entry
    /// otherwise.
    #[test]
    fn plus_one_adds_one_unit(entries in prop::collection::vec(0..=5i64, 0..=5)) {
        let f = Fern(entries);
        let g = f.plus_one();
        prop_assert_eq!(g.sums().total, f.sums().total + 1);
        let grows = f.is_empty() || f.len() % 2 == 1;
        prop_assert_eq!(g.len(), f.len() + i64::from(grows));
    }

    /// Rational formatting round-trips, including negative and integral values.
    #[test]
    fn rational_roundtrip(p in -50..=50i64, q in 1..=50i64) {
        let r: Rat = ratio(p, q);
        prop_assert_eq!(parse_rat(&format_rat(&r)).unwrap(), r);
    }

    /// Region JSON serialization round-trips cells and weights exactly.
    #[test]
    fn region_json_roundtrip(kind in quartered_kind(), t in small_shape()) {
        if let Ok(region) = build_quartered(kind, &t) {
            let back = Region::from_json(&region.to_json()).unwrap();
            prop_assert_eq!(back.cells, region.cells);
            prop_assert_eq!(back.weights, region.weights);
        }
    }

    /// The boxed-plane-partition count is symmetric in its three sides.
    #[test]
    fn box_count_is_symmetric(a in 0..=4i64, b in 0..=4i64, c in 0..=4i64) {
        let v = macmahon(a, b, c).unwrap();
        prop_assert_eq!(macmahon(b, c, a).unwrap(), v.clone());
        prop_assert_eq!(macmahon(c, a, b).unwrap(), v.clone());
        prop_assert_eq!(macmahon(b, a, c).unwrap(), v);
    }

    /// A hexagon's count matches the box formula for arbitrary small sides.
    #[test]
    fn hexagon_matches_box_formula(a in 0..=3i64, b in 0..=3i64, c in 0..=3i64) {
        let oracle = count_tilings(&build_hexagon(a, b, c).unwrap()).unwrap();
        prop_assert_eq!(macmahon(a, b, c).unwrap(), oracle);
    }
}
