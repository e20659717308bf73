//! Root-lattice vectors in the simple-root basis and the combinatorics the
//! recurrences iterate over.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_integer::Integer;
use serde::{Serialize, Serializer};

/// A point of the root lattice, as integer coefficients of the simple roots.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RootVector(Vec<i64>);

impl RootVector {
    pub fn new(coords: Vec<i64>) -> Self {
        RootVector(coords)
    }

    pub fn zero(d: usize) -> Self {
        RootVector(vec![0; d])
    }

    /// The simple root `alpha_i` of a rank-`d` lattice.
    pub fn simple(d: usize, i: usize) -> Self {
        let mut v = vec![0; d];
        v[i] = 1;
        RootVector(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// All coordinates non-negative and at least one positive.
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&x| x >= 0) && self.0.iter().any(|&x| x > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|&x| x <= 0) && self.0.iter().any(|&x| x < 0)
    }

    /// Componentwise `self <= other`.
    pub fn is_below(&self, other: &RootVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Gcd of the coordinates; 0 for the zero vector.
    pub fn coord_gcd(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &x| g.gcd(&x))
    }

    pub fn scale(&self, n: i64) -> RootVector {
        RootVector(self.0.iter().map(|x| x * n).collect())
    }

    /// Exact division of every coordinate by `n`.
    pub fn div_exact(&self, n: i64) -> RootVector {
        debug_assert!(self.0.iter().all(|x| x % n == 0));
        RootVector(self.0.iter().map(|x| x / n).collect())
    }

    /// Index of the single nonzero coordinate if this is a simple root.
    pub fn simple_index(&self) -> Option<usize> {
        let mut found = None;
        for (i, &x) in self.0.iter().enumerate() {
            match x {
                0 => {}
                1 if found.is_none() => found = Some(i),
                _ => return None,
            }
        }
        found
    }

    /// Every `gamma` with `0 <= gamma <= self` componentwise, excluding `0` and
    /// `self`, in lexicographic order.
    pub fn subroots(&self) -> Subroots<'_> {
        Subroots::new(self)
    }

    /// Pairs `(n, gamma)` with `n * gamma == self`, in increasing `n`.
    pub fn divisors(&self) -> impl Iterator<Item = (i64, RootVector)> + '_ {
        let g = self.coord_gcd();
        (1..=g)
            .filter(move |n| g % n == 0)
            .map(move |n| (n, self.div_exact(n)))
    }

    /// Coordinates joined by `sep`, e.g. `1;0` for CSV cells.
    pub fn joined(&self, sep: &str) -> String {
        self.0
            .iter()
            .map(i64::to_string)
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub(crate) fn coords_mut(&mut self) -> &mut [i64] {
        &mut self.0
    }
}

impl From<Vec<i64>> for RootVector {
    fn from(v: Vec<i64>) -> Self {
        RootVector(v)
    }
}

impl<const N: usize> From<[i64; N]> for RootVector {
    fn from(v: [i64; N]) -> Self {
        RootVector(v.to_vec())
    }
}

impl Index<usize> for RootVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.joined(","))
    }
}

impl Serialize for RootVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl Add for &RootVector {
    type Output = RootVector;
    fn add(self, rhs: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RootVector {
    type Output = RootVector;
    fn sub(self, rhs: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RootVector {
    type Output = RootVector;
    fn neg(self) -> RootVector {
        RootVector(self.0.iter().map(|a| -a).collect())
    }
}

/// Odometer over the interior of the box `[0, beta]`.
pub struct Subroots<'a> {
    bound: &'a RootVector,
    cur: Vec<i64>,
    done: bool,
}

impl<'a> Subroots<'a> {
    fn new(bound: &'a RootVector) -> Self {
        let mut s = Subroots {
            bound,
            cur: vec![0; bound.dim()],
            done: bound.0.iter().any(|&x| x < 0),
        };
        // skip the zero vector
        s.advance();
        s
    }

    fn advance(&mut self) {
        for i in (0..self.cur.len()).rev() {
            if self.cur[i] < self.bound.0[i] {
                self.cur[i] += 1;
                for c in &mut self.cur[i + 1..] {
                    *c = 0;
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for Subroots<'_> {
    type Item = RootVector;

    fn next(&mut self) -> Option<RootVector> {
        if self.done || self.cur == self.bound.0 {
            return None;
        }
        let out = RootVector(self.cur.clone());
        self.advance();
        Some(out)
    }
}

/// Every non-negative lattice vector of rank `d` and exact height `h`, in
/// lexicographic order.
pub fn compositions(d: usize, h: i64) -> Vec<RootVector> {
    fn rec(d: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<RootVector>) {
        if cur.len() + 1 == d {
            cur.push(left);
            out.push(RootVector(cur.clone()));
            cur.pop();
            return;
        }
        for x in 0..=left {
            cur.push(x);
            rec(d, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if d == 0 || h < 0 {
        return out;
    }
    rec(d, h, &mut Vec::with_capacity(d), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rv<const N: usize>(v: [i64; N]) -> RootVector {
        RootVector::from(v)
    }

    #[test]
    fn height_examples() {
        assert_eq!(rv([1, 0]).height(), 1);
        assert_eq!(rv([2, 3]).height(), 5);
        assert_eq!(rv([0, 0]).height(), 0);
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(rv([2, 4]).coord_gcd(), 2);
        assert_eq!(rv([1, 3]).coord_gcd(), 1);
        assert_eq!(rv([0, 0]).coord_gcd(), 0);
    }

    #[test]
    fn subroot_examples() {
        let got: Vec<_> = rv([1, 1]).subroots().collect();
        assert_eq!(got, vec![rv([0, 1]), rv([1, 0])]);
        let got: Vec<_> = rv([2, 2]).subroots().collect();
        let want = [[0, 1], [0, 2], [1, 0], [1, 1], [1, 2], [2, 0], [2, 1]].map(rv);
        assert_eq!(got, want.to_vec());
        assert_eq!(rv([1, 0]).subroots().count(), 0);
        assert_eq!(rv([0, 0]).subroots().count(), 0);
    }

    #[test]
    fn divisor_examples() {
        let got: Vec<_> = rv([2, 2]).divisors().collect();
        assert_eq!(got, vec![(1, rv([2, 2])), (2, rv([1, 1]))]);
        let got: Vec<_> = rv([1, 3]).divisors().collect();
        assert_eq!(got, vec![(1, rv([1, 3]))]);
        let got: Vec<_> = rv([6, 4]).divisors().collect();
        assert_eq!(got, vec![(1, rv([6, 4])), (2, rv([3, 2]))]);
    }

    #[test]
    fn display_is_parenthesized_tuple() {
        assert_eq!(rv([1, -2, 3]).to_string(), "(1,-2,3)");
        assert_eq!(rv([1, 2]).joined(";"), "1;2");
    }

    #[test]
    fn simple_index_detects_unit_vectors() {
        assert_eq!(rv([0, 1, 0]).simple_index(), Some(1));
        assert_eq!(rv([0, 2, 0]).simple_index(), None);
        assert_eq!(rv([1, 1, 0]).simple_index(), None);
        assert_eq!(rv([0, 0, 0]).simple_index(), None);
    }

    #[test]
    fn compositions_count() {
        // C(h + d - 1, d - 1)
        assert_eq!(compositions(3, 4).len(), 15);
        assert_eq!(compositions(1, 7), vec![rv([7])]);
    }

    fn small_positive() -> impl Strategy<Value = RootVector> {
        prop::collection::vec(0i64..5, 1..4)
            .prop_filter("nonzero", |v| v.iter().any(|&x| x > 0))
            .prop_map(RootVector::new)
    }

    proptest! {
        #[test]
        fn subroots_are_box_interior(beta in small_positive()) {
            let subs: Vec<_> = beta.subroots().collect();
            let expected = beta.coords().iter().map(|x| x + 1).product::<i64>() - 2;
            prop_assert_eq!(subs.len() as i64, expected);
            for w in subs.windows(2) {
                prop_assert!(w[0] < w[1]);
            }
            for g in &subs {
                prop_assert!(g.height() < beta.height());
                prop_assert!(g.is_below(&beta) && !g.is_zero());
                let partner = &beta - g;
                prop_assert!(subs.binary_search(&partner).is_ok());
            }
        }

        #[test]
        fn divisors_match_gcd(beta in small_positive()) {
            let g = beta.coord_gcd();
            let divs: Vec<_> = beta.divisors().collect();
            for n in 1..=g {
                let hit = divs.iter().find(|(m, _)| *m == n);
                prop_assert_eq!(hit.is_some(), g % n == 0);
                if let Some((_, gamma)) = hit {
                    prop_assert_eq!(&gamma.scale(n), &beta);
                }
            }
            prop_assert_eq!(divs.first().map(|d| d.0), Some(1));
        }
    }
}
