//! Bilinear-form evaluation counters and the closed-form naive cost model.
//!
//! Every counted call of [`CartanMatrix::killing`](crate::CartanMatrix::killing)
//! and every fundamental reflection bumps exactly one phase of a
//! [`KillingCounter`]. The counters are atomic, so a partitioned Peterson sum
//! can share one counter across worker threads.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Phase {
    /// Reflections performed while closing Weyl orbits.
    Pingpong,
    /// Form evaluations inside the graded-ascent Peterson sums.
    PetersonSum,
    /// Form evaluations of the naive full-lattice oracle.
    Oracle,
}

impl Phase {
    pub const ALL: [Phase; 3] = [Phase::Pingpong, Phase::PetersonSum, Phase::Oracle];

    fn index(self) -> usize {
        match self {
            Phase::Pingpong => 0,
            Phase::PetersonSum => 1,
            Phase::Oracle => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Phase::Pingpong => "pingpong",
            Phase::PetersonSum => "peterson_sum",
            Phase::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Monotone per-phase counter of form evaluations.
#[derive(Debug, Default)]
pub struct KillingCounter {
    counts: [AtomicU64; 3],
}

impl KillingCounter {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn bump(&self, phase: Phase) {
        self.add(phase, 1);
    }

    #[inline]
    pub fn add(&self, phase: Phase, amount: u64) {
        self.counts[phase.index()].fetch_add(amount, Ordering::Relaxed);
    }

    pub fn get(&self, phase: Phase) -> u64 {
        self.counts[phase.index()].load(Ordering::Relaxed)
    }

    /// Graded-ascent cost: pingpong plus Peterson-sum phases.
    pub fn k_ascent(&self) -> u64 {
        self.get(Phase::Pingpong) + self.get(Phase::PetersonSum)
    }

    /// Only valid at the start of a run.
    pub fn reset(&self) {
        for c in &self.counts {
            c.store(0, Ordering::Relaxed);
        }
    }

    /// Handle that charges evaluations to `phase`.
    pub fn meter(&self, phase: Phase) -> Meter<'_> {
        Meter {
            counter: Some(self),
            phase,
        }
    }
}

/// Phase-tagged handle to an optional counter, threaded through every
/// counted evaluation.
#[derive(Debug, Clone, Copy)]
pub struct Meter<'a> {
    counter: Option<&'a KillingCounter>,
    phase: Phase,
}

impl<'a> Meter<'a> {
    /// A meter that records nothing.
    pub const fn off() -> Meter<'static> {
        Meter {
            counter: None,
            phase: Phase::Oracle,
        }
    }

    #[inline]
    pub fn tick(&self) {
        if let Some(c) = self.counter {
            c.bump(self.phase);
        }
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }
}

/// Closed form `4 * (C(h+2d-1, 2d) - ceil(h^d / d!))` for the number of form
/// evaluations of a naive Peterson evaluation up to height `h` in rank `d`.
pub fn k_naive_closed(d: u32, h: u32) -> BigUint {
    assert!(d >= 1 && h >= 1, "rank and height must be positive");
    let d = u64::from(d);
    let h = u64::from(h);
    let binom = binomial(h + 2 * d - 1, 2 * d);
    let power = BigUint::from(h).pow(d as u32);
    let fact: BigUint = (1..=d).map(BigUint::from).product();
    let (q, r) = power.div_rem(&fact);
    let ceil = if r.is_zero() { q } else { q + 1u32 };
    let diff = BigInt::from(binom) - BigInt::from(ceil);
    assert!(
        !diff.is_negative(),
        "closed form went negative for d={d}, h={h}"
    );
    (diff * 4u32).to_biguint().expect("non-negative")
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Integer that serializes as a JSON number when it fits in `u128`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Count {
    Exact(u128),
    Decimal(String),
}

impl From<&BigUint> for Count {
    fn from(v: &BigUint) -> Self {
        match v.to_u128() {
            Some(x) => Count::Exact(x),
            None => Count::Decimal(v.to_string()),
        }
    }
}

/// Per-run snapshot of the counters together with the closed-form reference.
#[derive(Debug, Clone, Serialize)]
pub struct MetricsReport {
    pub rank: u32,
    pub height: u32,
    pub phases: BTreeMap<&'static str, u64>,
    pub k_ascent: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<u64>,
    pub k_naive_closed: Count,
    /// `k_ascent / k_naive_closed`.
    pub ratio: f64,
}

/// Quiescent read of `counter` after a run of rank `d` up to height `h`.
pub fn counter_snapshot(counter: &KillingCounter, d: u32, h: u32) -> MetricsReport {
    let phases: BTreeMap<_, _> = Phase::ALL
        .iter()
        .map(|p| (p.name(), counter.get(*p)))
        .collect();
    let oracle = counter.get(Phase::Oracle);
    let naive = k_naive_closed(d, h);
    let k_ascent = counter.k_ascent();
    let ratio = match naive.to_f64() {
        Some(n) if n > 0.0 => k_ascent as f64 / n,
        _ => f64::NAN,
    };
    MetricsReport {
        rank: d,
        height: h,
        phases,
        k_ascent,
        oracle: (oracle > 0).then_some(oracle),
        k_naive_closed: Count::from(&naive),
        ratio,
    }
}

impl MetricsReport {
    pub fn naive_closed(&self) -> BigUint {
        match &self.k_naive_closed {
            Count::Exact(x) => BigUint::from(*x),
            Count::Decimal(s) => s.parse().expect("decimal digits"),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}
