use proptest::prelude::*;
use rado::distrib::distributable;
use rado::sweep::{consistent, oracle_cap, run_oracle, OracleResult};
use rado::search::SearchConfig;
use rado::theorems::{big_t, decompose, rado_by_theorems, Family, OutcomeKind};
use rado::witness::{applicable_witnesses, best_witness};
use rado::Equation;

fn equation() -> impl Strategy<Value = Equation> {
    (prop::collection::vec(1u32..=3, 1..=4), -12i64..=30).prop_map(|(a, c)| Equation::new(a, c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn decomposition_reconstructs_the_constant(eq in equation()) {
        let s = eq.sum();
        if let Some(lm) = decompose(&eq) {
            prop_assert!(lm.lambda >= 3);
            match lm.family {
                Family::A => {
                    prop_assert_eq!(lm.lambda * (s - 1) - lm.mu, eq.constant());
                    prop_assert!(lm.mu >= 0 && lm.mu <= s - lm.lambda);
                }
                Family::B => {
                    prop_assert_eq!(lm.lambda * s - lm.mu, eq.constant());
                    prop_assert!(lm.mu >= 1 && lm.mu < lm.lambda);
                }
            }
        }
    }

    #[test]
    fn big_t_is_the_largest_t_with_the_block_inequality(eq in equation()) {
        let (s, c) = (eq.sum(), eq.constant());
        prop_assume!(c > s - 1);
        let t = big_t(&eq).unwrap();
        // T + 1 is the least n with n(S^2 + S - 1) >= 1 + c(S + 2)
        prop_assert!((t + 1) * (s * s + s - 1) > c * (s + 2));
        prop_assert!(t * (s * s + s - 1) < 1 + c * (s + 2));
    }

    #[test]
    fn theory_is_consistent_with_search(eq in equation()) {
        let out = rado_by_theorems(&eq).unwrap();
        let cap = oracle_cap(&out.kind);
        let (oracle, _) = run_oracle(&eq, &SearchConfig::new(cap).budget(Some(5_000_000))).unwrap();
        prop_assert!(consistent(&out.kind, oracle), "{} says {}, search says {}", eq, out.kind, oracle);
    }

    #[test]
    fn witnesses_are_valid_and_bounded_by_theory(eq in equation()) {
        let out = rado_by_theorems(&eq).unwrap();
        for w in applicable_witnesses(&eq, 80) {
            prop_assert!(w.check().unwrap(), "{} {}", w.kind, w.colouring);
            if let (Some(b), Some(u)) = (w.claim.lower_bound(), out.kind.upper()) {
                prop_assert!(b <= u);
            }
        }
        if let (OutcomeKind::Bounds { lower, .. } | OutcomeKind::Exact(lower), Some(w)) = (out.kind, best_witness(&eq, 80)) {
            prop_assert!(w.claim.lower_bound().unwrap_or(lower) <= lower);
        }
    }

    #[test]
    fn distributable_rows_below_unit_constant_are_exact(a in prop::collection::vec(1u32..=3, 2..=4), d in 1i64..=6) {
        prop_assume!(distributable(&a, 2));
        let s: i64 = a.iter().map(|&x| x as i64).sum();
        let c = s - 1 - d;
        prop_assume!((c * s) % 2 == 0);
        let out = rado_by_theorems(&Equation::new(a, c).unwrap()).unwrap();
        prop_assert_eq!(out.kind, OutcomeKind::Exact((d * (s + 2) + 1) as u64));
    }
}

#[test]
fn exact_rows_have_a_witness_one_shorter() {
    for a in [vec![1, 1], vec![1, 1, 1], vec![1, 1, 2], vec![1, 2, 2]] {
        for c in -6..=20 {
            let eq = Equation::new(a.clone(), c).unwrap();
            if let OutcomeKind::Exact(n) = rado_by_theorems(&eq).unwrap().kind {
                let (oracle, col) = run_oracle(&eq, &SearchConfig::new(n + 5)).unwrap();
                assert_eq!(oracle, OracleResult::Exact(n), "{eq}");
                if n > 1 {
                    assert_eq!(col.unwrap().len() as u64, n - 1);
                }
            }
        }
    }
}
