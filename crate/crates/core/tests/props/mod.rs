//! Fixed-seed property suites shared by the `properties` and `acceptance`
//! test targets.

use std::collections::BTreeSet;

use gwcross::cli::{parse_table, serialize_table};
use gwcross::gv::{gv_from_gw, gw_from_gv};
use gwcross::hodge::GradedPoly;
use gwcross::partitions::{
    enumerate_stable_partitions, enumerate_threefold_partitions, integer_partitions,
    ThreefoldPartition,
};
use gwcross::rat::{factorial, int, rat, Rat};
use gwcross::series::USeries;
use gwcross::wallcross::{gw_from_ugw, ugw_from_gw, GenusTable, Kind};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub type Suite = (&'static str, fn() -> Result<(), String>);

pub const SUITES: &[Suite] = &[
    ("series ring axioms", ring_axioms),
    ("series inverse", inverse),
    ("exp/log/pow homomorphisms", exp_log_pow),
    ("graded polynomial ring", graded_poly_ring),
    ("transform roundtrips", transform_roundtrips),
    ("transform linearity", transform_linearity),
    ("GV/GW roundtrip", gv_roundtrip),
    ("GW denominator bound", denominator_bound),
    ("table file roundtrip", table_file_roundtrip),
    ("threefold enumeration = brute force", threefold_brute_force),
    ("stable partitions satisfy their equations", stable_partitions),
];

const CASES: u32 = 64;

fn runner(seed: u8) -> TestRunner {
    let config = Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

fn check<S: Strategy>(
    seed: u8,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(seed)
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn coeffs(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec(small_rat(), len)
}

const ORDER: i64 = 7;

/// A series with valuation in `-2..=2` known below `ORDER`.
fn series() -> impl Strategy<Value = USeries> {
    (-2i64..=2, coeffs(0..=5)).prop_map(|(v, c)| USeries::from_coeffs(v, c, ORDER))
}

/// A series with zero constant term.
fn nilpotent() -> impl Strategy<Value = USeries> {
    coeffs(0..=5).prop_map(|c| USeries::from_coeffs(1, c, ORDER))
}

/// Equal on the range where both are known.
fn agree(a: &USeries, b: &USeries) -> Result<(), TestCaseError> {
    let o = a.order().min(b.order());
    prop_assert_eq!(a.truncate(o), b.truncate(o));
    Ok(())
}

fn ring_axioms() -> Result<(), String> {
    check(1, (series(), series(), series()), |(a, b, c)| {
        agree(&(&a + &b), &(&b + &a))?;
        agree(&(&a * &b), &(&b * &a))?;
        agree(&(&(&a + &b) + &c), &(&a + &(&b + &c)))?;
        agree(&(&(&a * &b) * &c), &(&a * &(&b * &c)))?;
        agree(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c)))?;
        agree(&(&a + &a.neg()), &USeries::zero(ORDER))?;
        agree(&(&a * &USeries::one(ORDER)), &a)?;
        Ok(())
    })
}

fn inverse() -> Result<(), String> {
    check(2, series(), |a| {
        if a.is_zero() {
            return Ok(());
        }
        let inv = a.inv().map_err(|e| TestCaseError::fail(e.to_string()))?;
        let one = &a * &inv;
        agree(&one, &USeries::one(one.order()))
    })
}

fn exp_log_pow() -> Result<(), String> {
    check(3, (nilpotent(), nilpotent(), -4i64..=4, -4i64..=4), |(f, g, j, k)| {
        let exp = |s: &USeries| s.exp().unwrap();
        agree(&exp(&(&f + &g)), &(&exp(&f) * &exp(&g)))?;
        agree(&exp(&f).log().unwrap(), &f)?;
        let unit = &USeries::one(ORDER) + &f;
        let pow = |k: i64| unit.pow_int(k).unwrap();
        agree(&pow(j + k), &(&pow(j) * &pow(k)))?;
        agree(&pow(k).log().unwrap(), &unit.log().unwrap().scale(&int(k)))?;
        agree(&(&pow(k) * &pow(-k)), &USeries::one(ORDER))?;
        Ok(())
    })
}

fn graded_poly() -> impl Strategy<Value = GradedPoly> {
    prop::collection::vec((small_rat(), 0u32..=3, 0u32..=3), 0..=4).prop_map(|terms| {
        terms
            .into_iter()
            .fold(GradedPoly::zero_capped(3), |acc, (r, h, c)| {
                &acc + &GradedPoly::monomial(r, h, c, 3)
            })
    })
}

fn graded_poly_ring() -> Result<(), String> {
    check(4, (graded_poly(), graded_poly(), graded_poly()), |(a, b, c)| {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        let unit = &GradedPoly::constant(int(1), 3) + &(&a - &GradedPoly::constant(a.degree_zero(), 3));
        let inv = gwcross::series::Coeff::try_inverse(&unit).unwrap();
        prop_assert_eq!(&unit * &inv, GradedPoly::constant(int(1), 3));
        Ok(())
    })
}

fn table(kind: Kind, c_range: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = GenusTable> {
    (c_range, any::<bool>(), 0u32..=4)
        .prop_flat_map(|(c, primitive, g_max)| {
            (
                Just((c, primitive, g_max)),
                prop::collection::vec(small_rat(), (g_max + 1) as usize),
            )
        })
        .prop_map(move |((c, primitive, g_max), values)| {
            GenusTable::from_pairs(kind, c, primitive, g_max, (0..).zip(values)).unwrap()
        })
}

fn transform_roundtrips() -> Result<(), String> {
    check(5, (table(Kind::Gw, -3..=6), table(Kind::Ugw, -3..=6)), |(gw, ugw)| {
        prop_assert_eq!(gw_from_ugw(&ugw_from_gw(&gw).unwrap()).unwrap(), gw);
        prop_assert_eq!(ugw_from_gw(&gw_from_ugw(&ugw).unwrap()).unwrap(), ugw);
        Ok(())
    })
}

fn transform_linearity() -> Result<(), String> {
    check(6, (table(Kind::Ugw, -3..=6), small_rat()), |(a, k)| {
        let scaled = GenusTable::from_pairs(
            Kind::Ugw,
            a.c(),
            a.primitive(),
            a.g_max(),
            a.values().iter().map(|(g, v)| (*g, v * &k + int(1))),
        )
        .unwrap();
        let ones = GenusTable::from_pairs(
            Kind::Ugw,
            a.c(),
            a.primitive(),
            a.g_max(),
            (0..=a.g_max()).map(|g| (g, int(1))),
        )
        .unwrap();
        let (fa, fs, f1) = (
            gw_from_ugw(&a).unwrap(),
            gw_from_ugw(&scaled).unwrap(),
            gw_from_ugw(&ones).unwrap(),
        );
        for g in 0..=a.g_max() {
            let lhs = fs.value_or_zero(g);
            let rhs = fa.value_or_zero(g) * &k + f1.value_or_zero(g);
            prop_assert_eq!(lhs, rhs);
        }
        Ok(())
    })
}

fn gv_roundtrip() -> Result<(), String> {
    check(7, table(Kind::Gw, 0..=6), |gw| {
        if gw.c() == 0 && !gw.primitive() {
            return Ok(());
        }
        let report = gv_from_gw(&gw).unwrap();
        prop_assert_eq!(gw_from_gv(&report.table).unwrap(), gw);
        Ok(())
    })
}

/// `[u^{2j}] S^k` has denominator dividing `(4^j (2j+1)!)^j`, so GW values
/// built from integer GV values obey the same bound at genus `h`.
fn denominator_bound() -> Result<(), String> {
    let gv = (1i64..=6, 0u32..=4).prop_flat_map(|(c, g_max)| {
        (
            Just((c, g_max)),
            prop::collection::vec(-50i64..=50, (g_max + 1) as usize),
        )
    });
    check(8, gv, |((c, g_max), values)| {
        let t = GenusTable::from_pairs(Kind::Gv, c, true, g_max, (0..).zip(values.into_iter().map(int)))
            .unwrap();
        let gw = gw_from_gv(&t).unwrap();
        for (&h, v) in gw.values() {
            let base = BigInt::from(4).pow(h) * factorial(2 * h + 1);
            let bound = base.pow(h);
            prop_assert!((&bound % v.denom()).is_zero(), "genus {} value {}", h, v);
        }
        Ok(())
    })
}

fn table_file_roundtrip() -> Result<(), String> {
    check(9, table(Kind::Gw, -3..=6), |gw| {
        let text = serialize_table(&gw);
        let back = parse_table(&text, true).unwrap();
        prop_assert_eq!(serialize_table(&back), text);
        let ugw_text = serialize_table(&ugw_from_gw(&back).unwrap());
        let again = gw_from_ugw(&parse_table(&ugw_text, true).unwrap()).unwrap();
        prop_assert_eq!(serialize_table(&again), serialize_table(&gw));
        Ok(())
    })
}

/// Every composition of `total`, then sorted decreasingly and deduplicated.
fn brute_partitions(total: u32, max_len: usize) -> BTreeSet<Vec<u32>> {
    fn compositions(total: u32) -> Vec<Vec<u32>> {
        if total == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for first in 1..=total {
            for mut rest in compositions(total - first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    compositions(total)
        .into_iter()
        .filter(|c| c.len() <= max_len)
        .map(|mut c| {
            c.sort_unstable_by(|a, b| b.cmp(a));
            c
        })
        .collect()
}

fn threefold_brute_force() -> Result<(), String> {
    for g in 0..=6u32 {
        for n in 0..=4usize {
            let mut expected = BTreeSet::new();
            for g0 in 0..=g {
                for s1 in 0..=g - g0 {
                    for g1 in brute_partitions(s1, n) {
                        for g2 in brute_partitions(g - g0 - s1, usize::MAX) {
                            if g1.is_empty() && g2.is_empty() {
                                continue;
                            }
                            expected.insert(ThreefoldPartition { g0, g1: g1.clone(), g2 });
                        }
                    }
                }
            }
            let found = enumerate_threefold_partitions(g, n);
            let found_set: BTreeSet<_> = found.iter().cloned().collect();
            if found.len() != found_set.len() {
                return Err(format!("g={g} n={n}: duplicates in enumeration"));
            }
            if found_set != expected {
                return Err(format!(
                    "g={g} n={n}: {} enumerated, {} by brute force",
                    found_set.len(),
                    expected.len()
                ));
            }
        }
    }
    for total in 0..=8u32 {
        for len in 0..=4usize {
            let found: BTreeSet<_> = integer_partitions(total, len).into_iter().collect();
            if found != brute_partitions(total, len) {
                return Err(format!("integer partitions of {total} with <= {len} parts"));
            }
        }
    }
    Ok(())
}

fn stable_partitions() -> Result<(), String> {
    let input = (0i64..=4, 0usize..=2, 1i64..=6, 1u32..=3);
    check(10, input, |(g, n, twice_d0, cap)| {
        let d0 = rat(twice_d0, 2);
        let found = enumerate_stable_partitions(g, n, &d0, cap).unwrap();
        let set: BTreeSet<_> = found.iter().cloned().collect();
        prop_assert_eq!(set.len(), found.len());
        for p in &found {
            prop_assert_eq!(i64::from(p.genus()), g);
            prop_assert!(!p.parts.is_empty());
            prop_assert!(p.marked_parts() <= n);
            prop_assert!(p.parts.windows(2).all(|w| w[0] >= w[1]));
            for part in &p.parts {
                prop_assert_eq!(part.weight(), d0.clone());
                let size: u32 = part.eta.iter().sum();
                prop_assert!((1..=cap).contains(&size));
                prop_assert!(part.markings <= 1);
            }
        }
        Ok(())
    })
}

#[allow(dead_code)]
pub fn run_all() -> Vec<(&'static str, Result<(), String>)> {
    SUITES.iter().map(|(name, f)| (*name, f())).collect()
}
