use proptest::prelude::*;
use rootmult::peterson::compute_all;
use rootmult::weyl::reflect;
use rootmult::{CartanMatrix, Meter, RootKind, RootVector};

fn rank_two(a: i64, b: i64) -> CartanMatrix {
    CartanMatrix::build(&[vec![2, -a], vec![-b, 2]]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn multiplicities_are_weyl_invariant(a in 1i64..5, b in 1i64..5) {
        let m = rank_two(a, b);
        let t = compute_all(&m, 16).unwrap();
        for (v, r) in t.iter() {
            for i in 0..2 {
                let w = reflect(&m, i, v, Meter::off()).unwrap();
                if w.is_positive() && w.height() <= 16 {
                    let other = t.get(&w).expect("orbit member recorded");
                    prop_assert_eq!(&other.mult, &r.mult);
                    prop_assert_eq!(&other.c, &r.c);
                }
            }
        }
    }

    #[test]
    fn scaling_the_form_changes_nothing(a in 1i64..5, b in 1i64..5, lambda in 2i64..5) {
        let m = rank_two(a, b);
        prop_assert_eq!(compute_all(&m, 12).unwrap().sorted(), compute_all(&m.scaled(lambda), 12).unwrap().sorted());
    }

    #[test]
    fn kinds_follow_norms(a in 1i64..5, b in 1i64..5) {
        let m = rank_two(a, b);
        let t = compute_all(&m, 14).unwrap();
        for (v, r) in t.iter() {
            let n = m.norm(v).unwrap();
            match r.kind {
                RootKind::Imaginary => prop_assert!(n <= 0),
                RootKind::Real | RootKind::ScaledReal => prop_assert!(n > 0),
            }
        }
        prop_assert!(t.get(&RootVector::from([1, 0])).is_some());
    }
}
