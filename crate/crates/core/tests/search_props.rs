use proptest::prelude::*;
use rado::search::{
    count_valid_colourings, export_cnf, find_valid_colouring, incremental_check, nonexistence_guard,
    rado_search, SearchConfig, SearchOutcome,
};
use rado::witness::witness_mod_p;
use rado::{is_valid_colouring, Colouring, Equation};

fn small_equation(max_sum: u32) -> impl Strategy<Value = Equation> {
    (prop::collection::vec(1u32..=3, 1..=4), -4i64..=12).prop_filter_map("sum too large", move |(a, c)| {
        (a.iter().sum::<u32>() <= max_sum).then(|| Equation::new(a, c).unwrap())
    })
}

/// Smallest n <= cap such that no 2-colouring of [1, n] is valid, by enumerating all of them.
fn rado_by_enumeration(eq: &Equation, cap: u64) -> Option<u64> {
    (1..=cap).find(|&n| {
        (0u64..1 << n).all(|mask| {
            let col = Colouring::from_fn(1, n as i64, 2, |x| ((mask >> (x - 1)) & 1) as u8).unwrap();
            !is_valid_colouring(eq, &col).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn search_matches_full_enumeration(eq in small_equation(4)) {
        let cap = 12;
        let expected = rado_by_enumeration(&eq, cap);
        match rado_search(&eq, &SearchConfig::new(cap)).unwrap() {
            SearchOutcome::Found { n, witness } => {
                prop_assert_eq!(Some(n), expected);
                if let Some(w) = witness {
                    prop_assert_eq!(w.len() as u64, n - 1);
                    prop_assert!(is_valid_colouring(&eq, &w).unwrap());
                }
            }
            SearchOutcome::NotFound { colouring } => {
                prop_assert_eq!(expected, None);
                prop_assert!(is_valid_colouring(&eq, &colouring).unwrap());
            }
            SearchOutcome::BudgetExceeded { .. } => prop_assert!(false, "default budget exhausted"),
        }
    }

    #[test]
    fn parallel_search_is_identical(eq in small_equation(5)) {
        let cfg = SearchConfig::new(40);
        let seq = rado_search(&eq, &cfg).unwrap();
        let par = rado_search(&eq, &cfg.clone().parallel(true)).unwrap();
        prop_assert_eq!(seq, par);
    }

    #[test]
    fn symmetry_breaking_halves_two_colour_counts(eq in small_equation(3), n in 1u64..=8) {
        let all = count_valid_colourings(&eq, n, 2, false).unwrap();
        let canonical = count_valid_colourings(&eq, n, 2, true).unwrap();
        prop_assert_eq!(all, 2 * canonical);
    }

    #[test]
    fn cnf_is_satisfiable_iff_a_valid_colouring_exists(eq in small_equation(4), n in 1u64..=10) {
        let cnf = export_cnf(&eq, n, 2).unwrap();
        let sat = (0u64..1 << n).any(|mask| {
            let assignment: Vec<bool> = (0..n).map(|i| (mask >> i) & 1 == 1).collect();
            cnf.satisfied_by(&assignment)
        });
        let found = find_valid_colouring(&eq, 1, n as i64, 2, None).unwrap();
        prop_assert_eq!(sat, found.is_some());
    }

    #[test]
    fn incremental_check_agrees_with_full_check(eq in small_equation(5), bits in prop::collection::vec(0u8..2, 1..=14)) {
        let col = Colouring::new(1, &bits, 2).unwrap();
        if col.len() > 1 {
            let prefix = col.restrict(1, col.hi() - 1).unwrap();
            if is_valid_colouring(&eq, &prefix).unwrap() {
                prop_assert_eq!(incremental_check(&eq, &col).unwrap(), !is_valid_colouring(&eq, &col).unwrap());
            }
        }
    }

    #[test]
    fn guard_means_no_rado_number(eq in small_equation(6), r in 2usize..=3) {
        if nonexistence_guard(&eq, r) {
            let out = rado_search(&eq, &SearchConfig::new(20).colours(r)).unwrap();
            prop_assert!(matches!(out, SearchOutcome::NotFound { .. }), "{:?}", out);
            let rule = witness_mod_p(&eq, r).unwrap();
            prop_assert!(is_valid_colouring(&eq, &rule.instantiate(60).unwrap()).unwrap());
        }
    }
}

#[test]
fn three_colour_multi_search_agrees_with_cnf_on_small_intervals() {
    let eq = Equation::new(vec![1, 1], 0).unwrap();
    for n in [4u64, 5] {
        let cnf = export_cnf(&eq, n, 3).unwrap();
        let sat = (0u64..3u64.pow(n as u32)).any(|code| {
            let mut v = code;
            let mut assignment = vec![false; cnf.num_vars];
            for p in 0..n as usize {
                assignment[p * 3 + (v % 3) as usize] = true;
                v /= 3;
            }
            cnf.satisfied_by(&assignment)
        });
        assert!(sat);
        assert!(find_valid_colouring(&eq, 1, n as i64, 3, None).unwrap().is_some());
    }
}
