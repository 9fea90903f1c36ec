use infbin::word::Letter;
use infbin::Configuration;
use proptest::prelude::*;

fn configuration() -> impl Strategy<Value = Configuration> {
    (-20i64..20, prop::collection::vec(1u64..6, 1..7))
        .prop_map(|(front, window)| Configuration::from_window(front, &window).unwrap())
}

/// Bin of the `k`-th rightmost ball after writing out `2k` tail bins.
fn reference_bin(x: &Configuration, k: u64) -> i64 {
    let mut counts: Vec<u64> = x.window().into_iter().rev().collect();
    counts.extend(std::iter::repeat_n(1, 2 * k as usize));
    let mut seen = 0;
    for (i, c) in counts.iter().enumerate() {
        seen += c;
        if seen >= k {
            return x.front() - i as i64;
        }
    }
    unreachable!()
}

proptest! {
    #[test]
    fn front_moves_by_zero_or_one(x in configuration(), k in 1u32..12) {
        let y = x.with_move(k);
        let advanced = k as u64 <= x.front_count();
        prop_assert_eq!(y.front(), x.front() + advanced as i64);
    }

    #[test]
    fn one_ball_per_move(x in configuration(), k in 1u32..12) {
        let y = x.with_move(k);
        let deep = x.front() - x.depth() as i64 - k as i64 - 3;
        prop_assert_eq!(y.count_at_or_right(deep), x.count_at_or_right(deep) + 1);
    }

    #[test]
    fn moves_commute_with_shifts(x in configuration(), k in 1u32..12, r in -50i64..50) {
        prop_assert_eq!(x.shift(r).with_move(k), x.with_move(k).shift(r));
    }

    #[test]
    fn shifts_compose(x in configuration(), a in -50i64..50, b in -50i64..50) {
        prop_assert_eq!(x.shift(a).shift(b), x.shift(a + b));
    }

    #[test]
    fn tail_lookup_matches_materialised_tail(x in configuration(), k in 1u64..40) {
        prop_assert_eq!(x.bin_of_kth_rightmost(k), reference_bin(&x, k));
        let b = x.bin_of_kth_rightmost(k);
        prop_assert!(x.count_at_or_right(b) >= k);
        prop_assert!(x.count_at_or_right(b + 1) < k);
    }

    #[test]
    fn blocks_of_the_smallest_letter_advance(x in configuration(), a in 1u32..7) {
        let m = (a * (a - 1) / 2 + 1) as usize;
        let block: Vec<Letter> = vec![a; m];
        prop_assert!(x.with_word(&block).front() > x.front());
    }

    #[test]
    fn window_grows_by_bounded_amount(x in configuration(), k in 1u32..20) {
        let y = x.with_move(k);
        let m = x.window_total();
        let bound = (k as u64).saturating_sub(m) + 1;
        prop_assert!((y.depth() as u64) <= x.depth() as u64 + bound);
    }

    #[test]
    fn json_round_trip(x in configuration()) {
        let s = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<Configuration>(&s).unwrap(), x);
    }
}
