use proptest::prelude::*;
use rado::transform::{complement, complement_pair, shift_colouring_down, shift_down, translate};
use rado::{is_valid_colouring, Colouring, Equation, RadoError};

fn equation() -> impl Strategy<Value = Equation> {
    (prop::collection::vec(1u32..=4, 1..=4), -10i64..=20).prop_map(|(a, c)| Equation::new(a, c).unwrap())
}

fn colouring() -> impl Strategy<Value = Colouring> {
    (-5i64..=5, prop::collection::vec(0u8..2, 1..=24)).prop_map(|(lo, bits)| Colouring::new(lo, &bits, 2).unwrap())
}

proptest! {
    #[test]
    fn shifting_preserves_validity(eq in equation(), col in colouring()) {
        let before = is_valid_colouring(&eq, &col).unwrap();
        let after = is_valid_colouring(&shift_down(&eq), &shift_colouring_down(&col)).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn translation_round_trips(eq in equation(), col in colouring(), d in -50i64..=50) {
        let moved = col.translated(d);
        prop_assert_eq!(moved.translated(-d), col.clone());
        prop_assert_eq!(translate(&translate(&eq, d), -d), eq.clone());
        prop_assert_eq!(is_valid_colouring(&eq, &col).unwrap(), is_valid_colouring(&translate(&eq, d), &moved).unwrap());
    }

    #[test]
    fn reflection_is_an_involution(eq in equation(), col in colouring()) {
        let (eq2, col2) = complement_pair(&eq, &col).unwrap();
        prop_assert_eq!(is_valid_colouring(&eq, &col).unwrap(), is_valid_colouring(&eq2, &col2).unwrap());
        let (eq3, col3) = complement_pair(&eq2, &col2).unwrap();
        prop_assert_eq!(eq3, eq);
        prop_assert_eq!(col3, col);
    }

    #[test]
    fn reflection_needs_the_matching_pivot(col in colouring(), off in 1i64..5) {
        let pivot = col.lo() + col.hi() + off;
        let is_mismatch = matches!(complement(&col, pivot), Err(RadoError::PivotMismatch { .. }));
        prop_assert!(is_mismatch);
    }

    #[test]
    fn text_form_round_trips(col in colouring()) {
        let parsed: Colouring = col.to_string().parse().unwrap();
        prop_assert_eq!(parsed, col);
    }
}
