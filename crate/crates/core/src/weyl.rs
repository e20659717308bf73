//! Fundamental reflections and height-capped Weyl orbit closure.

use std::collections::BTreeSet;

use crate::cartan::CartanMatrix;
use crate::error::{Error, Result};
use crate::lattice::RootVector;
use crate::metrics::Meter;
use crate::peterson::RootTable;

/// The truncated orbit produced by one [`pingpong`] call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitBatch {
    pub seed: RootVector,
    pub members: BTreeSet<RootVector>,
}

impl OrbitBatch {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// `s_i(beta) = beta - <beta, alpha_i^vee> alpha_i`. Charged to `meter` as
/// one form evaluation.
pub fn reflect(
    cm: &CartanMatrix,
    i: usize,
    beta: &RootVector,
    meter: Meter<'_>,
) -> Result<RootVector> {
    if i >= cm.rank() {
        return Err(Error::IndexOutOfRange {
            index: i,
            rank: cm.rank(),
        });
    }
    if beta.dim() != cm.rank() {
        return Err(Error::DimensionMismatch {
            expected: cm.rank(),
            got: beta.dim(),
        });
    }
    meter.tick();
    let k = cm.coroot_pairing(i, beta);
    let mut out = beta.clone();
    out.coords_mut()[i] -= k;
    Ok(out)
}

/// Depth-first closure of `seed` under fundamental reflections, keeping only
/// positive vectors of height at most `cap`. A reached vector is expanded only
/// when it is new to `table`, where it is recorded with the seed's record.
/// The batch holds the seed and every admissible vector reached.
pub fn pingpong(
    cm: &CartanMatrix,
    seed: &RootVector,
    cap: u32,
    table: &mut RootTable,
    meter: Meter<'_>,
) -> Result<OrbitBatch> {
    let record = table
        .get(seed)
        .cloned()
        .ok_or_else(|| Error::SeedMissing(seed.clone()))?;
    let cap = i64::from(cap);
    let mut members = BTreeSet::from([seed.clone()]);
    let mut stack = vec![seed.clone()];
    while let Some(beta) = stack.pop() {
        for i in 0..cm.rank() {
            let gamma = reflect(cm, i, &beta, meter)?;
            if gamma[i] < 0 || gamma.height() > cap || !gamma.is_positive() {
                continue;
            }
            members.insert(gamma.clone());
            if table.insert(gamma.clone(), record.clone()) {
                stack.push(gamma);
            }
        }
    }
    Ok(OrbitBatch {
        seed: seed.clone(),
        members,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{KillingCounter, Phase};
    use crate::peterson::{RootKind, RootRecord};
    use std::collections::{HashSet, VecDeque};

    fn h3() -> CartanMatrix {
        CartanMatrix::build(&[vec![2, -3], vec![-3, 2]]).unwrap()
    }

    fn rv<const N: usize>(v: [i64; N]) -> RootVector {
        RootVector::from(v)
    }

    #[test]
    fn reflect_examples() {
        let m = h3();
        let c = KillingCounter::new();
        let meter = c.meter(Phase::Pingpong);
        assert_eq!(reflect(&m, 0, &rv([1, 0]), meter).unwrap(), rv([-1, 0]));
        assert_eq!(reflect(&m, 1, &rv([0, 1]), meter).unwrap(), rv([0, -1]));
        assert_eq!(reflect(&m, 1, &rv([1, 0]), meter).unwrap(), rv([1, 3]));
        assert_eq!(reflect(&m, 0, &rv([1, 1]), meter).unwrap(), rv([2, 1]));
        assert_eq!(c.get(Phase::Pingpong), 4);
        assert!(matches!(
            reflect(&m, 2, &rv([1, 0]), meter),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn pingpong_examples() {
        let m = h3();
        let mut t = RootTable::new(m.clone(), 4);
        t.insert(rv([1, 0]), RootRecord::real());
        let b = pingpong(&m, &rv([1, 0]), 4, &mut t, Meter::off()).unwrap();
        assert_eq!(b.members, BTreeSet::from([rv([1, 0]), rv([1, 3])]));

        let mut t = RootTable::new(m.clone(), 3);
        let rec = RootRecord::new(
            crate::Rational::from_integer(1.into()),
            1u32.into(),
            RootKind::Imaginary,
        );
        t.insert(rv([1, 1]), rec.clone());
        let b = pingpong(&m, &rv([1, 1]), 3, &mut t, Meter::off()).unwrap();
        assert_eq!(
            b.members,
            BTreeSet::from([rv([1, 1]), rv([2, 1]), rv([1, 2])])
        );
        assert_eq!(t.get(&rv([2, 1])), Some(&rec));
        assert_eq!(t.get(&rv([1, 2])), Some(&rec));

        let mut t = RootTable::new(m.clone(), 1);
        t.insert(rv([1, 0]), RootRecord::real());
        let b = pingpong(&m, &rv([1, 0]), 1, &mut t, Meter::off()).unwrap();
        assert_eq!(b.members, BTreeSet::from([rv([1, 0])]));
    }

    #[test]
    fn pingpong_requires_recorded_seed() {
        let m = h3();
        let mut t = RootTable::new(m.clone(), 4);
        assert!(matches!(
            pingpong(&m, &rv([1, 0]), 4, &mut t, Meter::off()),
            Err(Error::SeedMissing(_))
        ));
    }

    #[test]
    fn pingpong_is_idempotent() {
        let m = h3();
        let mut t = RootTable::new(m.clone(), 30);
        t.insert(rv([1, 0]), RootRecord::real());
        let first = pingpong(&m, &rv([1, 0]), 30, &mut t, Meter::off()).unwrap();
        let snapshot: Vec<_> = t.sorted();
        let second = pingpong(&m, &rv([1, 0]), 30, &mut t, Meter::off()).unwrap();
        assert_eq!(t.sorted(), snapshot);
        assert!(second.members.is_subset(&first.members));
    }

    /// Breadth-first closure of the simple roots without any table.
    fn bfs_real_roots(m: &CartanMatrix, cap: i64) -> HashSet<RootVector> {
        let d = m.rank();
        let mut seen: HashSet<RootVector> = (0..d).map(|i| RootVector::simple(d, i)).collect();
        let mut queue: VecDeque<_> = seen.iter().cloned().collect();
        while let Some(b) = queue.pop_front() {
            for i in 0..d {
                let k: i64 = (0..d).map(|j| m.a(i, j) * b[j]).sum();
                let mut c = b.coords().to_vec();
                c[i] -= k;
                let g = RootVector::new(c);
                if g.is_positive() && g.height() <= cap && seen.insert(g.clone()) {
                    queue.push_back(g);
                }
            }
        }
        seen
    }

    #[test]
    fn simple_root_orbits_match_bfs() {
        let mats = [
            vec![vec![2, -3], vec![-3, 2]],
            vec![vec![2, -2], vec![-2, 2]],
            vec![vec![2, -1], vec![-5, 2]],
            vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]],
            vec![vec![2, -2, 0], vec![-2, 2, -1], vec![0, -1, 2]],
        ];
        for rows in mats {
            let m = CartanMatrix::build(&rows).unwrap();
            let cap = 14;
            let mut t = RootTable::new(m.clone(), cap);
            for i in 0..m.rank() {
                t.insert(RootVector::simple(m.rank(), i), RootRecord::real());
            }
            for i in 0..m.rank() {
                pingpong(
                    &m,
                    &RootVector::simple(m.rank(), i),
                    cap,
                    &mut t,
                    Meter::off(),
                )
                .unwrap();
            }
            let got: HashSet<_> = t.iter().map(|(v, _)| v.clone()).collect();
            assert_eq!(got, bfs_real_roots(&m, i64::from(cap)), "{rows:?}");
            assert!(t.iter().all(|(_, r)| *r == RootRecord::real()));
        }
    }
}
