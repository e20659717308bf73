//! Graded ascent: c-values from the Peterson recurrence restricted to known
//! roots, multiplicities by Moebius inversion, and the full driver.
//!
//! For `beta` in the fundamental chamber,
//!
//! ```text
//! ((beta, beta) - 2 (rho, beta)) c(beta) = sum_{gamma + delta = beta} (gamma, delta) c(gamma) c(delta)
//! ```
//!
//! where `c(beta) = sum_{n | beta} m(beta / n) / n`. Only `gamma` with
//! `c(gamma) != 0` contribute: roots, and multiples `n * alpha` of real roots
//! (`c = 1/n`). Both kinds are stored in the [`RootTable`] before any chamber
//! point of larger height is evaluated, so the sum only walks table entries.

use std::collections::HashMap;

use log::{debug, warn};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cartan::CartanMatrix;
use crate::chamber::{enumerate_chamber, generators_up_to};
use crate::error::{Error, Result};
use crate::lattice::RootVector;
use crate::metrics::{KillingCounter, Meter, Phase};
use crate::weyl::pingpong;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootKind {
    Real,
    Imaginary,
    /// `n * alpha` for a real root `alpha` and `n >= 2`: not a root, but
    /// `c = 1/n` enters the recurrence.
    ScaledReal,
}

impl RootKind {
    pub fn name(self) -> &'static str {
        match self {
            RootKind::Real => "real",
            RootKind::Imaginary => "imaginary",
            RootKind::ScaledReal => "scaled-real",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootRecord {
    pub c: Rational,
    pub mult: BigUint,
    pub kind: RootKind,
}

impl RootRecord {
    pub fn new(c: Rational, mult: BigUint, kind: RootKind) -> Self {
        RootRecord { c, mult, kind }
    }

    pub fn real() -> Self {
        RootRecord::new(Rational::one(), BigUint::one(), RootKind::Real)
    }
}

/// Graded store of every positive vector with nonzero c-value found so far.
#[derive(Debug, Clone)]
pub struct RootTable {
    cm: CartanMatrix,
    cap: u32,
    entries: HashMap<RootVector, RootRecord>,
    by_height: Vec<Vec<RootVector>>,
}

impl RootTable {
    pub fn new(cm: CartanMatrix, cap: u32) -> Self {
        RootTable {
            cm,
            cap,
            entries: HashMap::new(),
            by_height: vec![Vec::new(); cap as usize + 1],
        }
    }

    pub fn cm(&self) -> &CartanMatrix {
        &self.cm
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// Records `v` unless already present. Returns whether it was new.
    pub fn insert(&mut self, v: RootVector, record: RootRecord) -> bool {
        assert!(v.is_positive(), "{v} is not positive");
        let h = v.height();
        assert!(h <= i64::from(self.cap), "{v} above cap {}", self.cap);
        if self.entries.contains_key(&v) {
            return false;
        }
        self.by_height[h as usize].push(v.clone());
        self.entries.insert(v, record);
        true
    }

    pub fn get(&self, v: &RootVector) -> Option<&RootRecord> {
        self.entries.get(v)
    }

    pub fn contains(&self, v: &RootVector) -> bool {
        self.entries.contains_key(v)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&RootVector, &RootRecord)> {
        self.entries.iter()
    }

    /// Entries of exact height `h`, in insertion order.
    pub fn level(&self, h: i64) -> &[RootVector] {
        usize::try_from(h)
            .ok()
            .and_then(|h| self.by_height.get(h))
            .map_or(&[], Vec::as_slice)
    }

    /// Entries sorted by `(height, lex)`.
    pub fn sorted(&self) -> Vec<(RootVector, RootRecord)> {
        let mut out = Vec::with_capacity(self.len());
        for level in &self.by_height {
            let mut vs = level.clone();
            vs.sort();
            out.extend(vs.into_iter().map(|v| {
                let r = self.entries[&v].clone();
                (v, r)
            }));
        }
        out
    }

    /// Exact c-value, 0 for unrecorded vectors.
    pub fn c_value(&self, v: &RootVector) -> Rational {
        self.get(v).map_or_else(Rational::zero, |r| r.c.clone())
    }

    /// Recorded roots (positive multiplicity).
    pub fn roots(&self) -> impl Iterator<Item = (&RootVector, &RootRecord)> {
        self.entries.iter().filter(|(_, r)| !r.mult.is_zero())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EngineOptions {
    /// Worker threads for each Peterson sum; 1 keeps everything on the
    /// calling thread.
    pub workers: usize,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { workers: 1 }
    }
}

/// c-value of a positive-norm vector: `1/l` if `gamma / l` is a recorded real
/// root, `l = gcd(gamma)`, else 0.
pub fn c_real_direction(table: &RootTable, gamma: &RootVector) -> Result<Rational> {
    let norm = table.cm().norm(gamma)?;
    if norm <= 0 {
        return Err(Error::NonPositiveNorm {
            root: gamma.clone(),
            norm,
        });
    }
    let l = gamma.coord_gcd();
    let base = gamma.div_exact(l);
    Ok(match table.get(&base) {
        Some(r) if r.kind == RootKind::Real => Rational::new(BigInt::one(), BigInt::from(l)),
        _ => Rational::zero(),
    })
}

/// Evaluates the recurrence at `beta` from table entries of smaller height.
///
/// Each unordered pair `{gamma, beta - gamma}` is visited once from its
/// lower (height, lex) side and doubled, the self-pair counted once. One form
/// evaluation is charged per visited pair with both c-values nonzero, plus
/// one for `(beta, beta)`.
pub fn peterson_c(table: &RootTable, beta: &RootVector, meter: Meter<'_>) -> Result<Rational> {
    peterson_c_in(table, beta, meter, None)
}

fn peterson_c_in(
    table: &RootTable,
    beta: &RootVector,
    meter: Meter<'_>,
    pool: Option<&rayon::ThreadPool>,
) -> Result<Rational> {
    let cm = table.cm();
    let h = beta.height();
    let norm = cm.killing(beta, beta, meter)?;
    let denom = norm - cm.rho_pair(beta)?;
    if denom == 0 {
        return Err(Error::ZeroDenominator(beta.clone()));
    }
    let candidates: Vec<&RootVector> = (1..=h / 2)
        .flat_map(|lvl| table.level(lvl))
        .filter(|g| g.is_below(beta))
        .collect();

    let term = |gamma: &&RootVector| -> Result<Rational> {
        let delta = beta - *gamma;
        let weight = if 2 * gamma.height() < h {
            2
        } else {
            match (*gamma).cmp(&delta) {
                std::cmp::Ordering::Less => 2,
                std::cmp::Ordering::Equal => 1,
                std::cmp::Ordering::Greater => return Ok(Rational::zero()),
            }
        };
        let Some(rd) = table.get(&delta) else {
            return Ok(Rational::zero());
        };
        let rg = &table.entries[*gamma];
        let f = cm.killing(gamma, &delta, meter)?;
        if f == 0 {
            return Ok(Rational::zero());
        }
        Ok(&rg.c * &rd.c * Rational::from_integer(BigInt::from(f * weight)))
    };

    let sum = match pool {
        Some(pool) => pool.install(|| {
            candidates
                .par_iter()
                .map(term)
                .try_reduce(Rational::zero, |a, b| Ok(a + b))
        })?,
        None => {
            let mut acc = Rational::zero();
            for g in &candidates {
                acc += term(g)?;
            }
            acc
        }
    };
    Ok(sum / Rational::from_integer(BigInt::from(denom)))
}

/// Moebius inversion of `c` along the divisors of `gcd(beta)`, with
/// `c_beta` the freshly computed value at `beta` itself.
pub fn mobius_mult(table: &RootTable, beta: &RootVector, c_beta: &Rational) -> Result<BigUint> {
    let mut m = c_beta.clone();
    for (n, gamma) in beta.divisors().skip(1) {
        let mu = moebius(n);
        if mu == 0 {
            continue;
        }
        let c = table.c_value(&gamma);
        m += c * Rational::new(BigInt::from(mu), BigInt::from(n));
    }
    if !m.is_integer() || m.is_negative() {
        return Err(Error::NonIntegerMultiplicity {
            root: beta.clone(),
            value: m.to_string(),
        });
    }
    Ok(m.to_integer().to_biguint().expect("non-negative"))
}

pub(crate) fn moebius(mut n: i64) -> i64 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

pub fn compute_all(cm: &CartanMatrix, cap: u32) -> Result<RootTable> {
    compute_all_with(cm, cap, &EngineOptions::default(), &KillingCounter::new())
}

/// Every positive root of height at most `cap` with its multiplicity, plus
/// the scaled real vectors the recurrence reads.
pub fn compute_all_with(
    cm: &CartanMatrix,
    cap: u32,
    opts: &EngineOptions,
    counter: &KillingCounter,
) -> Result<RootTable> {
    assert!(cap >= 1, "height cap must be positive");
    let d = cm.rank();
    let ping = counter.meter(Phase::Pingpong);
    let sum = counter.meter(Phase::PetersonSum);
    let pool = if opts.workers > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(opts.workers)
                .build()
                .expect("thread pool"),
        )
    } else {
        None
    };

    let mut table = RootTable::new(cm.clone(), cap);
    for i in 0..d {
        table.insert(RootVector::simple(d, i), RootRecord::real());
    }
    for i in 0..d {
        pingpong(cm, &RootVector::simple(d, i), cap, &mut table, ping)?;
    }

    let mut reals: Vec<RootVector> = table.iter().map(|(v, _)| v.clone()).collect();
    reals.sort();
    for gamma in &reals {
        let h = gamma.height();
        let mut n = 2;
        while n * h <= i64::from(cap) {
            let v = gamma.scale(n);
            let c = c_real_direction(&table, &v)?;
            table.insert(v, RootRecord::new(c, BigUint::zero(), RootKind::ScaledReal));
            n += 1;
        }
    }
    debug!("{} real roots up to height {cap}", reals.len());

    let hb = generators_up_to(cm, cap)?;
    let points = enumerate_chamber(cm, &hb, cap);
    debug!(
        "{} chamber points from {} generators",
        points.len(),
        hb.len()
    );
    for beta in points {
        if table.contains(&beta) {
            continue;
        }
        let c = peterson_c_in(&table, &beta, sum, pool.as_ref())?;
        let m = mobius_mult(&table, &beta, &c)?;
        if !m.is_zero() {
            table.insert(beta.clone(), RootRecord::new(c, m, RootKind::Imaginary));
            pingpong(cm, &beta, cap, &mut table, ping)?;
        } else if !c.is_zero() {
            warn!("chamber point {beta} has c = {c} but multiplicity 0");
            table.insert(beta, RootRecord::new(c, m, RootKind::ScaledReal));
        }
    }
    Ok(table)
}

/// Multiplicity of any lattice vector within the cap; `m(-beta) = m(beta)`.
pub fn query_mult(table: &RootTable, beta: &RootVector) -> Result<BigUint> {
    let h = beta.height().abs();
    if h > i64::from(table.cap()) {
        return Err(Error::HeightExceedsCap {
            root: beta.clone(),
            height: h,
            cap: table.cap(),
        });
    }
    let key = if beta.is_negative() {
        -beta
    } else {
        beta.clone()
    };
    Ok(table
        .get(&key)
        .map_or_else(BigUint::zero, |r| r.mult.clone()))
}

impl RootRecord {
    /// Multiplicity as `u64`, when it fits.
    pub fn mult_u64(&self) -> Option<u64> {
        self.mult.to_u64()
    }
}
