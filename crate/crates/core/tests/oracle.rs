mod common;

#[test]
fn colon_kernel_sigma_matches_brute_force() {
    assert_eq!(common::compare_random_pairs(240, 20), Ok(240));
}
