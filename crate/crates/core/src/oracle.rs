//! Naive Peterson evaluation over the whole positive lattice.
//!
//! Every `beta` with height at most the cap gets a c-value from the full
//! recurrence over all of its subroots, with no knowledge of which vectors
//! are roots. Only simple roots are seeded. This module deliberately shares
//! nothing with the graded-ascent engine beyond the form and the lattice
//! combinatorics, so the two can check each other.

use std::collections::HashMap;

use log::debug;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::cartan::CartanMatrix;
use crate::error::{Error, Result};
use crate::lattice::{compositions, RootVector};
use crate::metrics::{KillingCounter, Phase};
use crate::peterson::RootKind;
use crate::Rational;

#[derive(Debug, Clone)]
pub struct OracleTable {
    pub cap: u32,
    pub c: HashMap<RootVector, Rational>,
    pub mult: HashMap<RootVector, BigUint>,
    /// Vectors where `(beta, beta) = 2 (rho, beta)` forced the divisor
    /// fallback instead of the recurrence.
    pub zero_denominators: Vec<RootVector>,
}

impl OracleTable {
    pub fn c_value(&self, v: &RootVector) -> Rational {
        self.c.get(v).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn mult_value(&self, v: &RootVector) -> BigUint {
        self.mult.get(v).cloned().unwrap_or_else(BigUint::zero)
    }

    /// Vectors with nonzero c, sorted by `(height, lex)`, with the same
    /// classification the engine uses.
    pub fn nonzero_rows(
        &self,
        cm: &CartanMatrix,
    ) -> Vec<(RootVector, Rational, BigUint, RootKind)> {
        let mut rows: Vec<_> = self
            .c
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(v, c)| {
                let m = self.mult_value(v);
                let kind = if m.is_zero() {
                    RootKind::ScaledReal
                } else if cm.norm(v).expect("rank checked") > 0 {
                    RootKind::Real
                } else {
                    RootKind::Imaginary
                };
                (v.clone(), c.clone(), m, kind)
            })
            .collect();
        rows.sort_by(|a, b| a.0.height().cmp(&b.0.height()).then_with(|| a.0.cmp(&b.0)));
        rows
    }
}

/// Full-lattice evaluation up to `cap`. Charges one form evaluation per
/// ordered subroot pair and one per denominator to the oracle phase.
pub fn naive_compute(cm: &CartanMatrix, cap: u32, counter: &KillingCounter) -> Result<OracleTable> {
    let d = cm.rank();
    let meter = counter.meter(Phase::Oracle);
    let mut c: HashMap<RootVector, Rational> = HashMap::new();
    let mut mult: HashMap<RootVector, BigUint> = HashMap::new();
    let mut zero_denominators = Vec::new();

    for h in 1..=i64::from(cap) {
        for beta in compositions(d, h) {
            let value = if beta.simple_index().is_some() {
                Rational::one()
            } else {
                let norm = cm.killing(&beta, &beta, meter)?;
                let denom = norm - cm.rho_pair(&beta)?;
                let mut sum = Rational::zero();
                for gamma in beta.subroots() {
                    let delta = &beta - &gamma;
                    let f = cm.killing(&gamma, &delta, meter)?;
                    let (Some(cg), Some(cd)) = (c.get(&gamma), c.get(&delta)) else {
                        unreachable!("subroots have smaller height");
                    };
                    if f != 0 && !cg.is_zero() && !cd.is_zero() {
                        sum += cg * cd * Rational::from_integer(BigInt::from(f));
                    }
                }
                if denom != 0 {
                    sum / Rational::from_integer(BigInt::from(denom))
                } else {
                    if norm <= 0 {
                        return Err(Error::ZeroDenominator(beta));
                    }
                    debug!("oracle: zero denominator at {beta}, using divisor fallback");
                    zero_denominators.push(beta.clone());
                    let l = beta.coord_gcd();
                    if is_real_root(cm, &beta.div_exact(l)) {
                        Rational::new(BigInt::one(), BigInt::from(l))
                    } else {
                        Rational::zero()
                    }
                }
            };
            let m = invert(&c, &beta, &value)?;
            c.insert(beta.clone(), value);
            if !m.is_zero() {
                mult.insert(beta, m);
            }
        }
    }
    Ok(OracleTable {
        cap,
        c,
        mult,
        zero_denominators,
    })
}

fn invert(
    c: &HashMap<RootVector, Rational>,
    beta: &RootVector,
    c_beta: &Rational,
) -> Result<BigUint> {
    let g = beta.coord_gcd();
    let mut m = c_beta.clone();
    for n in 2..=g {
        if g % n != 0 {
            continue;
        }
        let mu = mobius(n);
        if mu != 0 {
            let part = c
                .get(&beta.div_exact(n))
                .cloned()
                .unwrap_or_else(Rational::zero);
            m += part * Rational::new(BigInt::from(mu), BigInt::from(n));
        }
    }
    if !m.is_integer() || m.is_negative() {
        return Err(Error::NonIntegerMultiplicity {
            root: beta.clone(),
            value: m.to_string(),
        });
    }
    Ok(m.to_integer().to_biguint().expect("non-negative"))
}

fn mobius(n: i64) -> i64 {
    let mut primes = 0;
    let mut rest = n;
    for p in 2..=n {
        if rest % p == 0 {
            rest /= p;
            if rest % p == 0 {
                return 0;
            }
            primes += 1;
        }
    }
    if primes % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Descends by reflections that lower the height; a positive vector is a
/// real root iff this reaches a simple root through positive vectors.
pub fn is_real_root(cm: &CartanMatrix, beta: &RootVector) -> bool {
    let d = cm.rank();
    let mut cur = beta.coords().to_vec();
    loop {
        if cur.iter().any(|&x| x < 0) || cur.iter().all(|&x| x == 0) {
            return false;
        }
        let nonzero = cur.iter().filter(|&&x| x != 0).count();
        if nonzero == 1 {
            return cur.iter().sum::<i64>() == 1;
        }
        let step = (0..d).find_map(|i| {
            let k: i64 = (0..d).map(|j| cm.a(i, j) * cur[j]).sum();
            (k > 0).then_some((i, k))
        });
        match step {
            Some((i, k)) => cur[i] -= k,
            None => return false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::k_naive_closed;
    use num_traits::ToPrimitive;

    fn cm(rows: Vec<Vec<i64>>) -> CartanMatrix {
        CartanMatrix::build(&rows).unwrap()
    }

    fn rv<const N: usize>(v: [i64; N]) -> RootVector {
        RootVector::from(v)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn support(t: &OracleTable) -> Vec<RootVector> {
        let mut v: Vec<_> = t.mult.keys().cloned().collect();
        v.sort();
        v
    }

    #[test]
    fn affine_values() {
        let m = cm(vec![vec![2, -2], vec![-2, 2]]);
        let t = naive_compute(&m, 4, &KillingCounter::new()).unwrap();
        assert_eq!(t.c_value(&rv([1, 1])), q(1, 1));
        assert_eq!(t.c_value(&rv([2, 2])), q(3, 2));
        assert_eq!(t.c_value(&rv([2, 1])), q(1, 1));
        assert_eq!(t.c_value(&rv([2, 0])), q(1, 2));
        assert_eq!(t.mult_value(&rv([2, 2])), BigUint::one());
        // (3,1) = alpha_1 + s_1 alpha_2 has (beta, beta) = 2 (rho, beta)
        assert_eq!(t.zero_denominators, vec![rv([1, 3]), rv([3, 1])]);
        assert!(t.c_value(&rv([3, 1])).is_zero());
    }

    #[test]
    fn finite_and_rank_one() {
        let a2 = cm(vec![vec![2, -1], vec![-1, 2]]);
        let t = naive_compute(&a2, 6, &KillingCounter::new()).unwrap();
        assert_eq!(support(&t), vec![rv([0, 1]), rv([1, 0]), rv([1, 1])]);
        let a1 = cm(vec![vec![2]]);
        let t = naive_compute(&a1, 5, &KillingCounter::new()).unwrap();
        assert_eq!(support(&t), vec![rv([1])]);
        assert_eq!(t.c_value(&rv([4])), q(1, 4));
    }

    #[test]
    fn descent_classifies_real_roots() {
        let m = cm(vec![vec![2, -3], vec![-3, 2]]);
        assert!(is_real_root(&m, &rv([1, 0])));
        assert!(is_real_root(&m, &rv([1, 3])));
        assert!(is_real_root(&m, &rv([8, 3])));
        assert!(!is_real_root(&m, &rv([2, 0])));
        assert!(!is_real_root(&m, &rv([4, 1])));
        assert!(!is_real_root(&m, &rv([1, 1])));
    }

    #[test]
    fn count_stays_below_closed_form() {
        for (rows, cap) in [
            (vec![vec![2, -3], vec![-3, 2]], 15u32),
            (vec![vec![2, -2], vec![-2, 2]], 10),
            (vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]], 12),
            (vec![vec![2]], 9),
        ] {
            let m = cm(rows);
            let counter = KillingCounter::new();
            naive_compute(&m, cap, &counter).unwrap();
            let closed = k_naive_closed(m.rank() as u32, cap).to_u64().unwrap();
            assert!(counter.get(Phase::Oracle) <= closed);
            assert!(counter.get(Phase::Oracle) > 0);
        }
    }
}
