//! The fundamental chamber `{x >= 0 : (x, alpha_j) <= 0 for all j}`, the
//! Hilbert basis of its lattice-point semigroup, and graded enumeration of
//! its points.
//!
//! The basis is found in two stages. A double-description pass computes the
//! extreme rays of the cone. If the rays are linearly independent and span a
//! saturated sublattice, they already form the Hilbert basis. Otherwise every
//! basis element lies in the half-open parallelepiped of some simplicial
//! subcone, so its height is below the sum of the `d` largest ray heights;
//! all chamber points up to that height are enumerated and the irreducible
//! ones kept.

use std::collections::HashSet;

use num_integer::Integer;
use serde::Serialize;

use crate::cartan::CartanMatrix;
use crate::error::{Error, Result};
use crate::lattice::RootVector;

/// Hilbert basis of the chamber semigroup, sorted by `(height, lex)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct HilbertBasis {
    generators: Vec<RootVector>,
}

impl HilbertBasis {
    fn new(mut generators: Vec<RootVector>) -> Self {
        sort_graded(&mut generators);
        generators.dedup();
        HilbertBasis { generators }
    }

    pub fn generators(&self) -> &[RootVector] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("basis serializes")
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct HilbertOptions {
    /// Largest generator height the search may need; `None` selects
    /// `10 * d * max |S_ij|`.
    pub max_height: Option<i64>,
}

pub(crate) fn sort_graded(v: &mut [RootVector]) {
    v.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
}

/// True iff `beta` is a nonzero non-negative vector pairing non-positively
/// with every simple root.
pub fn in_chamber(cm: &CartanMatrix, beta: &RootVector) -> bool {
    beta.dim() == cm.rank()
        && beta.is_positive()
        && (0..cm.rank()).all(|j| cm.pairing_with_simple(beta, j) <= 0)
}

pub fn hilbert_basis(cm: &CartanMatrix) -> Result<HilbertBasis> {
    hilbert_basis_with(cm, HilbertOptions::default())
}

pub fn hilbert_basis_with(cm: &CartanMatrix, opts: HilbertOptions) -> Result<HilbertBasis> {
    let rays = extreme_rays(cm)?;
    if rays.is_empty() {
        return Ok(HilbertBasis::new(Vec::new()));
    }
    if is_unimodular(&rays)? {
        return Ok(HilbertBasis::new(rays));
    }
    let needed = parallelepiped_bound(cm, &rays);
    let bound = opts.max_height.unwrap_or_else(|| default_safety_bound(cm));
    if needed > bound {
        return Err(Error::CapExceeded { needed, bound });
    }
    Ok(HilbertBasis::new(irreducibles(cm, needed)))
}

/// The generators of height at most `cap`, which is all that is needed to
/// reach every chamber point up to `cap`. Never hits the safety bound.
pub fn generators_up_to(cm: &CartanMatrix, cap: u32) -> Result<HilbertBasis> {
    let cap = i64::from(cap);
    let rays = extreme_rays(cm)?;
    if rays.is_empty() {
        return Ok(HilbertBasis::new(Vec::new()));
    }
    if is_unimodular(&rays)? {
        return Ok(HilbertBasis::new(
            rays.into_iter().filter(|r| r.height() <= cap).collect(),
        ));
    }
    let limit = parallelepiped_bound(cm, &rays).min(cap);
    Ok(HilbertBasis::new(irreducibles(cm, limit)))
}

fn default_safety_bound(cm: &CartanMatrix) -> i64 {
    let max_abs = cm
        .form_matrix()
        .iter()
        .flatten()
        .map(|x| x.abs())
        .max()
        .unwrap_or(1);
    10 * cm.rank() as i64 * max_abs
}

fn parallelepiped_bound(cm: &CartanMatrix, rays: &[RootVector]) -> i64 {
    let mut heights: Vec<i64> = rays.iter().map(RootVector::height).collect();
    heights.sort_unstable_by(|a, b| b.cmp(a));
    heights.iter().take(cm.rank()).sum()
}

/// Chamber points up to `limit` that are not the sum of a smaller generator
/// and another chamber point.
fn irreducibles(cm: &CartanMatrix, limit: i64) -> Vec<RootVector> {
    let points = chamber_points(cm, limit);
    let mut gens: Vec<RootVector> = Vec::new();
    for p in points {
        let reducible = gens
            .iter()
            .any(|g| g.is_below(&p) && in_chamber(cm, &(&p - g)));
        if !reducible {
            gens.push(p);
        }
    }
    gens
}

/// All distinct non-negative integer combinations of `hb` with height at most
/// `cap`, sorted by `(height, lex)`.
pub fn enumerate_chamber(cm: &CartanMatrix, hb: &HilbertBasis, cap: u32) -> Vec<RootVector> {
    let cap = i64::from(cap);
    let gens: Vec<&RootVector> = hb
        .generators()
        .iter()
        .filter(|g| g.dim() == cm.rank() && g.height() <= cap)
        .collect();
    let mut seen: HashSet<RootVector> = gens.iter().map(|g| (*g).clone()).collect();
    let mut frontier: Vec<RootVector> = seen.iter().cloned().collect();
    while let Some(p) = frontier.pop() {
        for g in &gens {
            if p.height() + g.height() > cap {
                continue;
            }
            let q = &p + g;
            if !seen.contains(&q) {
                seen.insert(q.clone());
                frontier.push(q);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    sort_graded(&mut out);
    out
}

/// Depth-first enumeration of every chamber point with height at most
/// `limit`, sorted by `(height, lex)`.
///
/// Nodes are assigned in Dynkin-graph BFS order. Each chamber inequality is
/// checked as soon as the node and all of its neighbours are assigned, and a
/// partially assigned inequality with positive slack forces a minimum amount
/// of height onto the unassigned neighbours.
pub fn chamber_points(cm: &CartanMatrix, limit: i64) -> Vec<RootVector> {
    let d = cm.rank();
    let s = cm.form_matrix();
    let order = bfs_order(cm);
    let mut pos = vec![0; d];
    for (t, &v) in order.iter().enumerate() {
        pos[v] = t;
    }
    // constraint j is complete once step ready[j] is assigned
    let ready: Vec<usize> = (0..d)
        .map(|j| {
            cm.neighbors(j)
                .map(|k| pos[k])
                .chain([pos[j]])
                .max()
                .unwrap()
        })
        .collect();
    // after step t, the largest coefficient |S_jk| over unassigned neighbours k
    let mut reach = vec![vec![0i64; d]; d];
    for t in 0..d {
        for j in 0..d {
            reach[t][j] = cm
                .neighbors(j)
                .filter(|&k| pos[k] > t)
                .map(|k| s[j][k].abs())
                .max()
                .unwrap_or(0);
        }
    }

    struct Search<'a> {
        d: usize,
        s: &'a [Vec<i64>],
        order: Vec<usize>,
        pos: Vec<usize>,
        ready: Vec<usize>,
        reach: Vec<Vec<i64>>,
        limit: i64,
        x: Vec<i64>,
        rows: Vec<i64>,
        out: Vec<RootVector>,
    }

    impl Search<'_> {
        fn go(&mut self, t: usize, used: i64) {
            if t == self.d {
                if used > 0 {
                    self.out.push(RootVector::new(self.x.clone()));
                }
                return;
            }
            let v = self.order[t];
            for val in 0..=(self.limit - used) {
                self.x[v] = val;
                for j in 0..self.d {
                    self.rows[j] += self.s[j][v] * val;
                }
                if self.feasible(t, used + val) {
                    self.go(t + 1, used + val);
                }
                for j in 0..self.d {
                    self.rows[j] -= self.s[j][v] * val;
                }
            }
            self.x[v] = 0;
        }

        fn feasible(&self, t: usize, used: i64) -> bool {
            let mut need = 0i64;
            for j in 0..self.d {
                if self.ready[j] <= t {
                    if self.rows[j] > 0 {
                        return false;
                    }
                } else if self.pos[j] <= t && self.rows[j] > 0 {
                    let c = self.reach[t][j];
                    if c == 0 {
                        return false;
                    }
                    need = need.max(Integer::div_ceil(&self.rows[j], &c));
                }
            }
            used + need <= self.limit
        }
    }

    let mut search = Search {
        d,
        s,
        order,
        pos,
        ready,
        reach,
        limit,
        x: vec![0; d],
        rows: vec![0; d],
        out: Vec::new(),
    };
    if limit > 0 {
        search.go(0, 0);
    }
    let mut out = search.out;
    sort_graded(&mut out);
    out
}

fn bfs_order(cm: &CartanMatrix) -> Vec<usize> {
    let d = cm.rank();
    let mut seen = vec![false; d];
    let mut order = Vec::with_capacity(d);
    for start in 0..d {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for k in cm.neighbors(v) {
                if !seen[k] {
                    seen[k] = true;
                    queue.push_back(k);
                }
            }
        }
    }
    order
}

/// Primitive extreme rays of the chamber cone by the double-description
/// method with the combinatorial adjacency test.
pub fn extreme_rays(cm: &CartanMatrix) -> Result<Vec<RootVector>> {
    let d = cm.rank();
    if 2 * d > 128 {
        return Err(Error::Overflow("extreme rays (rank above 64)"));
    }
    struct Ray {
        v: Vec<i128>,
        tight: u128,
    }
    // constraints 0..d are x_k >= 0; d + j is -(S x)_j >= 0
    let mut rays: Vec<Ray> = (0..d)
        .map(|i| {
            let mut v = vec![0i128; d];
            v[i] = 1;
            let tight = (0..d).filter(|&k| k != i).fold(0u128, |m, k| m | (1 << k));
            Ray { v, tight }
        })
        .collect();
    for j in 0..d {
        let row: Vec<i128> = cm.form_matrix()[j]
            .iter()
            .map(|&x| -i128::from(x))
            .collect();
        let bit = 1u128 << (d + j);
        let values: Vec<i128> = rays
            .iter()
            .map(|r| r.v.iter().zip(&row).map(|(a, b)| a * b).sum())
            .collect();
        let mut next = Vec::new();
        for (r, &val) in rays.iter().zip(&values) {
            if val > 0 {
                next.push(Ray {
                    v: r.v.clone(),
                    tight: r.tight,
                });
            } else if val == 0 {
                next.push(Ray {
                    v: r.v.clone(),
                    tight: r.tight | bit,
                });
            }
        }
        for (p, &vp) in rays.iter().zip(&values) {
            if vp <= 0 {
                continue;
            }
            for (n, &vn) in rays.iter().zip(&values) {
                if vn >= 0 {
                    continue;
                }
                let common = p.tight & n.tight;
                let adjacent = rays.iter().all(|r| {
                    std::ptr::eq(r, p) || std::ptr::eq(r, n) || r.tight & common != common
                });
                if !adjacent {
                    continue;
                }
                let mut v = Vec::with_capacity(d);
                for k in 0..d {
                    let a = vp
                        .checked_mul(n.v[k])
                        .and_then(|x| (-vn).checked_mul(p.v[k]).and_then(|y| x.checked_add(y)))
                        .ok_or(Error::Overflow("extreme rays"))?;
                    v.push(a);
                }
                let g = v.iter().fold(0i128, |g, x| g.gcd(x));
                v.iter_mut().for_each(|x| *x /= g);
                next.push(Ray {
                    v,
                    tight: common | bit,
                });
            }
        }
        rays = next;
    }
    let mut out: Vec<RootVector> = rays
        .into_iter()
        .map(|r| {
            let coords =
                r.v.iter()
                    .map(|&x| i64::try_from(x).map_err(|_| Error::Overflow("extreme rays")))
                    .collect::<Result<Vec<_>>>()?;
            Ok(RootVector::new(coords))
        })
        .collect::<Result<_>>()?;
    sort_graded(&mut out);
    out.dedup();
    Ok(out)
}

/// Rays linearly independent with coprime maximal minors, i.e. the rays are
/// a lattice basis of the saturated sublattice they span.
fn is_unimodular(rays: &[RootVector]) -> Result<bool> {
    let k = rays.len();
    let d = rays[0].dim();
    if k > d {
        return Ok(false);
    }
    let mut g: i128 = 0;
    for cols in combinations(d, k) {
        let m: Vec<Vec<i128>> = rays
            .iter()
            .map(|r| cols.iter().map(|&c| i128::from(r[c])).collect())
            .collect();
        g = g.gcd(&bareiss_det(m)?);
        if g == 1 {
            return Ok(true);
        }
    }
    Ok(g == 1)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Fraction-free determinant.
fn bareiss_det(mut m: Vec<Vec<i128>>) -> Result<i128> {
    let n = m.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j]
                    .checked_mul(m[k][k])
                    .and_then(|a| m[i][k].checked_mul(m[k][j]).and_then(|b| a.checked_sub(b)))
                    .ok_or(Error::Overflow("determinant"))?;
                m[i][j] = num / prev;
            }
        }
        prev = m[k][k];
    }
    Ok(sign * m[n - 1][n - 1])
}
