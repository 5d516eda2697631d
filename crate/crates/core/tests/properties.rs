mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::q;
use medusa_core::generate::{generate, GeneratorParams};
use medusa_core::io::{parse_trajectories, write_trajectories};
use medusa_core::kernel::{isolate_roots, AlgebraicReal, Poly, RootCache};
use medusa_core::oracle::static_complex;
use medusa_core::run::{probe_times, simulate};
use medusa_core::triangulation::Tds;
use medusa_core::{Config, Rational, Simplex};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=9).prop_map(|(n, d)| q(n, d))
}

fn point() -> impl Strategy<Value = [Rational; 3]> {
    (-60i64..=60, -60i64..=60, -60i64..=60).prop_map(|(x, y, z)| [q(x, 7), q(y, 7), q(z, 7)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn isolation_finds_exactly_the_rational_roots(
        roots in prop::collection::vec(rational(), 1..6),
        lo in rational(),
        width in 1i64..40,
    ) {
        let hi = &lo + q(width, 3);
        let mut p = Poly::from_roots(&roots);
        // an irreducible factor that must not contribute roots
        p = &p * &Poly::from_ints(&[3, 0, 1]);
        let found = isolate_roots(&p, &lo, &hi, &mut RootCache::new()).unwrap();
        let expected: BTreeSet<Rational> = roots.into_iter().filter(|r| *r > lo && *r <= hi).collect();
        prop_assert_eq!(found.len(), expected.len());
        for (a, r) in found.iter().zip(&expected) {
            prop_assert!(a.cmp_rational(r).is_eq());
        }
    }

    #[test]
    fn square_roots_order_like_floats(a in 2i64..500, b in 2i64..500) {
        prop_assume!(a != b);
        let root = |n: i64| {
            let p = Poly::from_ints(&[-n, 0, 1]);
            isolate_roots(&p, &q(0, 1), &q(n, 1), &mut RootCache::new()).unwrap().remove(0)
        };
        let (x, y): (AlgebraicReal, AlgebraicReal) = (root(a), root(b));
        prop_assert_eq!(x.cmp(&y), (a as f64).sqrt().partial_cmp(&(b as f64).sqrt()).unwrap());
    }

    #[test]
    fn delaunay_matches_brute_force(pts in prop::collection::btree_set(point(), 5..14)) {
        let pos: BTreeMap<u32, [Rational; 3]> = pts.into_iter().enumerate().map(|(i, p)| (i as u32, p)).collect();
        let Ok(reference) = static_complex(&pos, &q(4, 1)) else {
            return Ok(());
        };
        let Ok(tds) = Tds::delaunay(&pos) else {
            return Ok(());
        };
        prop_assert!(tds.validate().is_ok());
        let tets: BTreeSet<Simplex> = tds.tets().iter().map(|t| Simplex::new(t)).collect();
        prop_assert_eq!(tets, reference.tets);
    }

    #[test]
    fn insert_then_remove_restores(pts in prop::collection::btree_set(point(), 6..12)) {
        let mut pos: BTreeMap<u32, [Rational; 3]> = pts.into_iter().enumerate().map(|(i, p)| (i as u32, p)).collect();
        let last = *pos.keys().last().unwrap();
        let extra = pos.remove(&last).unwrap();
        let Ok(before) = Tds::delaunay(&pos) else {
            return Ok(());
        };
        pos.insert(last, extra);
        let Ok(change) = before.insertion(last, &pos) else {
            return Ok(());
        };
        let mut tds = before.clone();
        tds.apply(&change);
        prop_assert!(tds.validate().is_ok());
        prop_assert!(tds.check_delaunay(&pos).is_ok());
        let back = tds.removal(last, &pos).unwrap();
        tds.apply(&back);
        prop_assert!(tds == before);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn trajectory_files_round_trip(seed in 0u64..1000, n in 1usize..12, bends in 1usize..5, churn in 0u32..60) {
        let params = GeneratorParams { churn, ..GeneratorParams::new(n, bends, 3, seed % 2 == 0) };
        let set = generate(seed, &params).unwrap();
        let text = write_trajectories(&set);
        prop_assert_eq!(parse_trajectories(&text).unwrap(), set);
    }

    #[test]
    fn small_runs_agree_with_recomputation(seed in 0u64..10_000, n in 6usize..11, bends in 1usize..4) {
        let params = GeneratorParams { churn: 25, ..GeneratorParams::new(n, bends, 3, seed % 2 == 1) };
        let set = generate(seed, &params).unwrap();
        match simulate(&set, Config::new(q(1, 1)), &probe_times(seed, 12)) {
            Ok(out) => {
                prop_assert!(out.violations.is_empty(), "{:?}", out.violations);
                prop_assert!(out.probes.iter().all(|p| p.ok()));
                prop_assert!(out.medusa.check().is_empty());
            }
            Err(e) => prop_assert!(e.is_degeneracy(), "{}", e),
        }
    }
}
