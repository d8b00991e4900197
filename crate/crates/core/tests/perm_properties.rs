use permrep::alpha::all_permutations;
use permrep::arith::gcd;
use permrep::{CycleType, Permutation};
use proptest::prelude::*;

#[test]
fn power_types_match_actual_powers_exhaustively() {
    for n in 1..=8 {
        for p in all_permutations(n) {
            let ct = p.cycle_type();
            for k in 1..=24u64 {
                assert_eq!(p.power(k).cycle_type(), ct.power(k as u128), "{p} ^ {k}");
            }
        }
    }
}

#[test]
fn partition_counts() {
    let counts: Vec<usize> = (1..=10).map(|n| CycleType::enumerate(n).len()).collect();
    assert_eq!(counts, [1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
}

#[test]
fn enumeration_is_strictly_decreasing() {
    for n in 1..=12 {
        let parts: Vec<Vec<usize>> = CycleType::enumerate(n).iter().map(|c| c.parts_desc()).collect();
        for w in parts.windows(2) {
            assert!(w[0] > w[1], "{:?} then {:?}", w[0], w[1]);
        }
    }
}

fn cycle_type_strategy(max_n: usize) -> impl Strategy<Value = CycleType> {
    (1..=max_n).prop_flat_map(|n| {
        let types = CycleType::enumerate(n);
        (0..types.len()).prop_map(move |i| types[i].clone())
    })
}

fn permutation_strategy(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n).prop_flat_map(|n| {
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    })
}

proptest! {
    #[test]
    fn power_preserves_degree(ct in cycle_type_strategy(20), k in 1u128..100) {
        let powered = ct.power(k);
        let total: usize = powered.counts().map(|(d, c)| d * c).sum();
        prop_assert_eq!(total, ct.degree());
    }

    #[test]
    fn power_depends_on_gcd_with_order(ct in cycle_type_strategy(20), k in 1u128..500) {
        prop_assert_eq!(ct.power(k), ct.power(gcd(k, ct.order())));
    }

    #[test]
    fn divisibility_counts_sum_exact_counts(ct in cycle_type_strategy(25)) {
        let n = ct.degree();
        for d in 1..=n {
            let sum: usize = (1..).take_while(|j| d * j <= n).map(|j| ct.c(d * j)).sum();
            prop_assert_eq!(ct.m(d), sum);
        }
    }

    #[test]
    fn conjugacy_invariant_under_relabeling(p in permutation_strategy(9), seed in any::<u64>()) {
        let n = p.degree();
        let mut images: Vec<usize> = (0..n).collect();
        // Fisher-Yates with a cheap LCG; any relabeling will do
        let mut state = seed | 1;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            images.swap(i, (state >> 33) as usize % (i + 1));
        }
        let g = Permutation::from_images(images).unwrap();
        let q = g.compose(&p).compose(&g.inverse());
        prop_assert!(p.cycle_type().is_conjugate(&q.cycle_type()).unwrap());
    }

    #[test]
    fn parse_round_trips_display(p in permutation_strategy(12)) {
        let text = p.to_string();
        prop_assert_eq!(Permutation::parse(&text, p.degree()).unwrap(), p.clone());
        let ct = p.cycle_type();
        prop_assert_eq!(ct.to_string().parse::<CycleType>().unwrap(), ct);
    }
}
