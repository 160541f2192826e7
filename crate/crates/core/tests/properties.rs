//! Randomized structural properties, exercised with exact arithmetic:
//! metric axioms for total variation, permutation invariance of the
//! indicator-sum law, the mean/variance contract of the rounded binomial
//! construction, and basic moment inequalities.

use proptest::prelude::*;

use steincert::binhat::{binhat_dist, binhat_params};
use steincert::dist::poisson_binomial_dist;
use steincert::metrics::{tv_distance, tv_distance_float};
use steincert::rat::{frac_part, rat, rat_i, to_f64, Rat};
use steincert::ExactDist;

/// Random laws with small support near the origin (exact rational masses).
fn arb_dist() -> impl Strategy<Value = ExactDist> {
    (
        -4i64..=4,
        prop::collection::vec(1u32..100, 1..6),
    )
        .prop_map(|(offset, weights)| {
            let total: i64 = weights.iter().map(|w| *w as i64).sum();
            let probs: Vec<Rat> = weights.iter().map(|w| rat(*w as i64, total)).collect();
            ExactDist::new(offset, probs).expect("normalized weights form a law")
        })
}

fn arb_probs() -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec((0i64..=16, 1i64..=16), 1..8).prop_map(|pairs| {
        pairs
            .into_iter()
            .map(|(a, b)| rat(a.min(b), b))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tv_is_a_metric(a in arb_dist(), b in arb_dist(), c in arb_dist()) {
        let ab = tv_distance(&a, &b);
        prop_assert!(ab >= rat_i(0));
        prop_assert!(ab <= rat_i(1));
        prop_assert_eq!(ab.clone(), tv_distance(&b, &a));
        prop_assert_eq!(tv_distance(&a, &a), rat_i(0));
        if a != b {
            prop_assert!(ab > rat_i(0));
        }
        let through_c = tv_distance(&a, &c) + tv_distance(&c, &b);
        prop_assert!(ab <= through_c);
    }

    #[test]
    fn tv_equals_subset_supremum(a in arb_dist(), b in arb_dist()) {
        let lo = a.lo().min(b.lo());
        let hi = a.hi().max(b.hi());
        let states: Vec<i64> = (lo..=hi).collect();
        prop_assume!(states.len() <= 16);
        let mut best = rat_i(0);
        for mask in 0u32..(1 << states.len()) {
            let mut diff = rat_i(0);
            for (i, k) in states.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    diff += a.prob(*k) - b.prob(*k);
                }
            }
            let diff = if diff < rat_i(0) { -diff } else { diff };
            if diff > best {
                best = diff;
            }
        }
        prop_assert_eq!(best, tv_distance(&a, &b));
    }

    #[test]
    fn tv_float_tracks_exact(a in arb_dist(), b in arb_dist()) {
        let exact = to_f64(&tv_distance(&a, &b));
        let approx = tv_distance_float(&a.to_float(), &b.to_float());
        prop_assert!((exact - approx).abs() < 1e-12);
    }

    #[test]
    fn indicator_sum_is_permutation_invariant(p in arb_probs(), swap in any::<(prop::sample::Index, prop::sample::Index)>()) {
        let mut q = p.clone();
        let i = swap.0.index(q.len());
        let j = swap.1.index(q.len());
        q.swap(i, j);
        prop_assert_eq!(
            poisson_binomial_dist(&p).unwrap(),
            poisson_binomial_dist(&q).unwrap()
        );
        prop_assert_eq!(
            steincert::pb::var_s(&p).unwrap(),
            steincert::pb::var_s(&q).unwrap()
        );
    }

    #[test]
    fn rounded_binomial_contract(mu_num in -400i64..=400, s2_num in 1i64..=1200, den in 1i64..=40) {
        let mu = rat(mu_num, den);
        let sigma2 = rat(s2_num, den); // at most 1200, giving a modest state count
        prop_assume!(sigma2 <= rat_i(30));
        let params = binhat_params(&mu, &sigma2).unwrap();

        // Trial count is the ceiling of 4 sigma2.
        prop_assert_eq!(rat_i(params.n as i64), (rat_i(4) * &sigma2).ceil());
        // Offset parameter lies in [0, 1/n).
        prop_assert!(params.t >= rat_i(0));
        prop_assert!(params.t < rat_i(1) / rat_i(params.n as i64));
        // The formal mean is exact whether or not the law exists.
        let formal_mean =
            rat_i(params.n as i64) * params.success_prob() + rat_i(params.shift);
        prop_assert_eq!(formal_mean, mu.clone());

        if !params.is_degenerate() {
            let d = binhat_dist(&params).unwrap();
            prop_assert_eq!(d.mean(), mu);
            let v = d.variance();
            prop_assert!(v <= &sigma2 + rat(1, 4));
            prop_assert!(v > &sigma2 - rat_i(1) / (rat_i(4) * &sigma2));
        }
    }

    #[test]
    fn moment_inequalities(a in arb_dist()) {
        let m = a.moment_set();
        prop_assert!(&m.m2 * rat_i(1) >= &m.m1 * &m.m1);
        prop_assert!(&m.m4 * rat_i(1) >= &m.m2 * &m.m2);
        prop_assert!(m.variance() >= rat_i(0));
        prop_assert_eq!(m.variance(), a.variance());
    }

    #[test]
    fn frac_part_decomposition(num in -10_000i64..=10_000, den in 1i64..=500) {
        let x = rat(num, den);
        let f = frac_part(&x);
        prop_assert!(f >= rat_i(0));
        prop_assert!(f < rat_i(1));
        let whole = &x - &f;
        prop_assert!(whole.is_integer());
    }
}
