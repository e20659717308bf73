use rootmult::export::{oracle_rows, table_rows};
use rootmult::oracle::naive_compute;
use rootmult::peterson::compute_all;
use rootmult::{CartanMatrix, KillingCounter, RootKind};

fn check(rows: Vec<Vec<i64>>, cap: u32) {
    let m = CartanMatrix::build(&rows).unwrap();
    let engine = compute_all(&m, cap).unwrap();
    let oracle = naive_compute(&m, cap, &KillingCounter::new()).unwrap();
    assert_eq!(
        table_rows(&engine),
        oracle_rows(&m, &oracle),
        "{rows:?} cap {cap}"
    );
}

#[test]
fn rank_two() {
    for k in 1..=6 {
        check(vec![vec![2, -k], vec![-k, 2]], 14);
    }
    check(vec![vec![2, -1], vec![-2, 2]], 14);
    check(vec![vec![2, -1], vec![-3, 2]], 14);
    check(vec![vec![2, -1], vec![-4, 2]], 14);
    check(vec![vec![2, -2], vec![-3, 2]], 14);
    check(vec![vec![2, -1], vec![-7, 2]], 12);
}

#[test]
fn rank_three() {
    check(vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]], 10);
    check(vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]], 10);
    check(vec![vec![2, -2, 0], vec![-2, 2, -1], vec![0, -1, 2]], 10);
    check(vec![vec![2, -3, 0], vec![-1, 2, -1], vec![0, -2, 2]], 9);
    check(vec![vec![2, -2, -2], vec![-2, 2, -2], vec![-2, -2, 2]], 9);
}

#[test]
fn disconnected() {
    check(vec![vec![2, -3, 0], vec![-3, 2, 0], vec![0, 0, 2]], 10);
}

#[test]
fn hyperbolic_imaginary_roots_are_present() {
    let m = CartanMatrix::build(&[vec![2, -3], vec![-3, 2]]).unwrap();
    let t = compute_all(&m, 12).unwrap();
    let imag = t
        .iter()
        .filter(|(_, r)| r.kind == RootKind::Imaginary)
        .count();
    assert!(imag > 10);
}
