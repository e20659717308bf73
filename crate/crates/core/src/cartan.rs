//! Generalized Cartan matrices, their symmetrization, and the invariant form.
//!
//! A matrix `A` is stored together with its coprime positive symmetrizer
//! `d_i` and the integer symmetric matrix `S = diag(d) * A`. The form
//! `(beta, gamma) = beta^T S gamma` is a positive multiple of the standard
//! invariant form; every ratio the recurrences compute is independent of that
//! multiple.

use std::collections::VecDeque;
use std::path::Path;

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::lattice::RootVector;
use crate::metrics::Meter;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanMatrix {
    a: Vec<Vec<i64>>,
    sym: Vec<i64>,
    s: Vec<Vec<i64>>,
}

impl CartanMatrix {
    /// Validates `entries` as a symmetrizable GCM and computes the minimal
    /// integer symmetrizer.
    pub fn build(entries: &[Vec<i64>]) -> Result<Self> {
        let d = entries.len();
        if d == 0 {
            return Err(Error::NotGcm("empty matrix".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != d {
                return Err(Error::NotGcm(format!(
                    "row {i} has {} entries, expected {d}",
                    row.len()
                )));
            }
        }
        for i in 0..d {
            if entries[i][i] != 2 {
                return Err(Error::NotGcm(format!(
                    "diagonal entry a[{i}][{i}] = {}",
                    entries[i][i]
                )));
            }
            for j in 0..d {
                if i == j {
                    continue;
                }
                if entries[i][j] > 0 {
                    return Err(Error::NotGcm(format!(
                        "positive off-diagonal a[{i}][{j}] = {}",
                        entries[i][j]
                    )));
                }
                if (entries[i][j] == 0) != (entries[j][i] == 0) {
                    return Err(Error::NotGcm(format!(
                        "a[{i}][{j}] and a[{j}][{i}] differ in zero pattern"
                    )));
                }
            }
        }
        let sym = symmetrizer(entries)?;
        let s = (0..d)
            .map(|i| (0..d).map(|j| sym[i] * entries[i][j]).collect())
            .collect();
        Ok(CartanMatrix {
            a: entries.to_vec(),
            sym,
            s,
        })
    }

    /// Parses a JSON-style nested integer array, e.g. `[[2,-3],[-3,2]]`.
    pub fn parse(text: &str) -> std::result::Result<Vec<Vec<i64>>, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn from_file(path: &Path) -> std::result::Result<Vec<Vec<i64>>, MatrixFileError> {
        let text = std::fs::read_to_string(path).map_err(|e| MatrixFileError::Io(e.to_string()))?;
        Self::parse(&text).map_err(|e| MatrixFileError::Parse(e.to_string()))
    }

    /// Copy whose form matrix is multiplied by `lambda`. The symmetrizer is no
    /// longer coprime; only useful for checking scale invariance.
    pub fn scaled(&self, lambda: i64) -> CartanMatrix {
        assert!(lambda > 0);
        CartanMatrix {
            a: self.a.clone(),
            sym: self.sym.iter().map(|x| x * lambda).collect(),
            s: self
                .s
                .iter()
                .map(|row| row.iter().map(|x| x * lambda).collect())
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.a
    }

    #[inline]
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.sym
    }

    pub fn form_matrix(&self) -> &[Vec<i64>] {
        &self.s
    }

    fn check_dim(&self, v: &RootVector) -> Result<()> {
        if v.dim() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: v.dim(),
            });
        }
        Ok(())
    }

    /// `beta^T S gamma`, charged once to `meter`.
    pub fn killing(&self, beta: &RootVector, gamma: &RootVector, meter: Meter<'_>) -> Result<i64> {
        self.check_dim(beta)?;
        self.check_dim(gamma)?;
        meter.tick();
        Ok(self.form_unchecked(beta, gamma))
    }

    /// Uncounted form evaluation; callers guarantee matching dimensions.
    pub(crate) fn form_unchecked(&self, beta: &RootVector, gamma: &RootVector) -> i64 {
        let b = beta.coords();
        let g = gamma.coords();
        let mut acc = 0;
        for (i, &bi) in b.iter().enumerate() {
            if bi == 0 {
                continue;
            }
            let row = &self.s[i];
            let mut r = 0;
            for (j, &gj) in g.iter().enumerate() {
                r += row[j] * gj;
            }
            acc += bi * r;
        }
        acc
    }

    /// Uncounted norm `(beta, beta)`, for reporting and classification.
    pub fn norm(&self, beta: &RootVector) -> Result<i64> {
        self.check_dim(beta)?;
        Ok(self.form_unchecked(beta, beta))
    }

    /// `2 (rho, beta) = sum_i beta_i S_ii`. A linear functional, never counted.
    pub fn rho_pair(&self, beta: &RootVector) -> Result<i64> {
        self.check_dim(beta)?;
        Ok(beta
            .coords()
            .iter()
            .enumerate()
            .map(|(i, b)| b * self.s[i][i])
            .sum())
    }

    /// `(S beta)_j = (beta, alpha_j)`, uncounted.
    pub fn pairing_with_simple(&self, beta: &RootVector, j: usize) -> i64 {
        self.s[j]
            .iter()
            .zip(beta.coords())
            .map(|(s, b)| s * b)
            .sum()
    }

    /// `sum_j a_ij beta_j = <beta, alpha_i^vee>`.
    #[inline]
    pub fn coroot_pairing(&self, i: usize, beta: &RootVector) -> i64 {
        self.a[i]
            .iter()
            .zip(beta.coords())
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Indices adjacent to `i` in the Dynkin graph.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank()).filter(move |&j| j != i && self.a[i][j] != 0)
    }
}

/// Failure to obtain a matrix from a file, before any GCM validation.
#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum MatrixFileError {
    #[error("cannot read matrix file: {0}")]
    Io(String),
    #[error("cannot parse matrix file: {0}")]
    Parse(String),
}

/// Propagates `d_j = d_i a_ij / a_ji` over each connected component, then
/// clears denominators so each component's entries are coprime.
fn symmetrizer(a: &[Vec<i64>]) -> Result<Vec<i64>> {
    let d = a.len();
    let mut ratio: Vec<Option<Ratio<i64>>> = vec![None; d];
    let mut out = vec![0i64; d];
    for start in 0..d {
        if ratio[start].is_some() {
            continue;
        }
        ratio[start] = Some(Ratio::from_integer(1));
        let mut component = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let ri = ratio[i].expect("visited");
            for j in 0..d {
                if j == i || a[i][j] == 0 {
                    continue;
                }
                let rj = ri * Ratio::new(a[i][j], a[j][i]);
                match ratio[j] {
                    None => {
                        ratio[j] = Some(rj);
                        component.push(j);
                        queue.push_back(j);
                    }
                    Some(existing) if existing != rj => {
                        return Err(Error::NotSymmetrizable(format!(
                            "inconsistent ratios around a cycle through nodes {i} and {j}"
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        let lcm = component
            .iter()
            .fold(1i64, |l, &i| l.lcm(ratio[i].expect("visited").denom()));
        let ints: Vec<i64> = component
            .iter()
            .map(|&i| (ratio[i].expect("visited") * lcm).to_integer())
            .collect();
        let g = ints.iter().fold(0i64, |g, x| g.gcd(x));
        for (&i, v) in component.iter().zip(ints) {
            out[i] = v / g;
        }
    }
    Ok(out)
}
