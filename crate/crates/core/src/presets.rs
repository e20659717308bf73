//! Named Cartan matrices.
//!
//! `e10` and `e11` are the simply-laced trees `T(2,3,7)` and `T(2,3,8)`:
//! three chains of `p-1`, `q-1`, `r-1` nodes attached to a central node 0.
//! Node numbering is the centre first, then each chain from the centre
//! outwards in the order `p`, `q`, `r`.

pub const NAMES: &[&str] = &["a2", "affine-a1", "hyp-2-k", "e10", "e11", "t-p-q-r"];

/// Looks up a preset: `a2`, `affine-a1`, `hyp-2-<k>`, `e10`, `e11`, or
/// `t-<p>-<q>-<r>`.
pub fn preset(name: &str) -> Option<Vec<Vec<i64>>> {
    match name {
        "a2" => Some(vec![vec![2, -1], vec![-1, 2]]),
        "affine-a1" => Some(vec![vec![2, -2], vec![-2, 2]]),
        "e10" => Some(t_pqr(2, 3, 7)),
        "e11" => Some(t_pqr(2, 3, 8)),
        _ => {
            if let Some(k) = name.strip_prefix("hyp-2-") {
                let k: i64 = k.parse().ok().filter(|k| *k >= 1)?;
                return Some(vec![vec![2, -k], vec![-k, 2]]);
            }
            let rest = name.strip_prefix("t-")?;
            let parts: Vec<usize> = rest
                .split('-')
                .map(str::parse)
                .collect::<Result<_, _>>()
                .ok()?;
            match parts[..] {
                [p, q, r] if p >= 1 && q >= 1 && r >= 1 => Some(t_pqr(p, q, r)),
                _ => None,
            }
        }
    }
}

/// Cartan matrix of the star `T(p,q,r)` with `p + q + r - 2` nodes.
pub fn t_pqr(p: usize, q: usize, r: usize) -> Vec<Vec<i64>> {
    let n = p + q + r - 2;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut next = 1;
    for len in [p - 1, q - 1, r - 1] {
        let mut prev = 0;
        for _ in 0..len {
            a[prev][next] = -1;
            a[next][prev] = -1;
            prev = next;
            next += 1;
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_shapes() {
        let e10 = preset("e10").unwrap();
        assert_eq!(e10.len(), 10);
        let edges: usize = (0..10)
            .map(|i| (0..i).filter(|&j| e10[i][j] != 0).count())
            .sum();
        assert_eq!(edges, 9);
        let degree =
            |a: &Vec<Vec<i64>>, i: usize| (0..a.len()).filter(|&j| j != i && a[i][j] != 0).count();
        assert_eq!(degree(&e10, 0), 3);
        assert_eq!(preset("e11").unwrap().len(), 11);
        // T(2,3,6) is affine E8: same as e10 with one fewer node
        assert_eq!(t_pqr(2, 3, 6).len(), 9);
    }

    #[test]
    fn parametrized_presets() {
        assert_eq!(preset("hyp-2-3"), Some(vec![vec![2, -3], vec![-3, 2]]));
        assert_eq!(preset("hyp-2-x"), None);
        assert_eq!(preset("t-2-3-6"), Some(t_pqr(2, 3, 6)));
        assert_eq!(preset("t-2-3"), None);
        assert_eq!(preset("nope"), None);
    }
}
