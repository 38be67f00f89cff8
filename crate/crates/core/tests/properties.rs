mod props;

macro_rules! suite_tests {
    ($($name:ident => $index:expr),* $(,)?) => {
        $(
            #[test]
            fn $name() {
                let (label, suite) = props::SUITES[$index];
                if let Err(e) = suite() {
                    panic!("{label}: {e}");
                }
            }
        )*
    };
}

suite_tests! {
    series_ring_axioms => 0,
    series_inverse => 1,
    exp_log_pow_homomorphisms => 2,
    graded_poly_ring => 3,
    transform_roundtrips => 4,
    transform_linearity => 5,
    gv_gw_roundtrip => 6,
    gw_denominator_bound => 7,
    table_file_roundtrip => 8,
    threefold_enumeration_matches_brute_force => 9,
    stable_partitions_satisfy_equations => 10,
}

#[test]
fn every_suite_is_listed() {
    assert_eq!(props::SUITES.len(), 11);
}
