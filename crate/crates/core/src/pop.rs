//! The Pop operator on Tam(ν), sortability statistics, the irreducible
//! decomposition and hash map on Vec(E(NE)^(n-1)), and the Pop image.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::bracket::{enumerate_vectors_with, BracketVector};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::path::{LatticePath, NuContext};

/// Indices `i < ℓ` with `b[i] > b[i+1]`.
pub fn delta_set(vec: &BracketVector) -> Vec<usize> {
    let e = vec.entries();
    (0..e.len() - 1).filter(|&i| e[i] > e[i + 1]).collect()
}

/// For `i` in the delta set, the largest `x` in `[heights(ν)[i], b[i] - 1]`
/// with `b[j] <= x` for all `j` in `[i+1, f_x]`; otherwise `b[i]`.
pub fn eta(vec: &BracketVector, i: usize) -> Result<usize> {
    let e = vec.entries();
    if i + 1 >= e.len() || e[i] <= e[i + 1] {
        return Ok(e[i]);
    }
    let ctx = vec.ctx();
    let low = ctx.heights()[i];
    (low..e[i])
        .rev()
        .find(|&x| {
            let f = ctx.fixed_position(x);
            (i + 1..=f).all(|j| e[j] <= x)
        })
        .ok_or_else(|| Error::Internal(format!("no eta candidate at index {i} of {vec}")))
}

/// Pop via the entrywise formula `(η_0, …, η_ℓ)`.
pub fn pop_vector(vec: &BracketVector) -> Result<BracketVector> {
    let entries = (0..vec.len())
        .map(|i| eta(vec, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(BracketVector::new_unchecked(Arc::clone(vec.ctx()), entries))
}

/// Pop straight from the definition: the meet of `mu` and every element
/// it covers, computed as a termwise minimum of bracket vectors.
pub fn pop_generic(ctx: &Arc<NuContext>, mu: &LatticePath) -> Result<LatticePath> {
    let mut acc = BracketVector::from_path(ctx, mu)?;
    for lower in ctx.covers_down(mu) {
        acc = acc.meet(&BracketVector::from_path(ctx, &lower)?)?;
    }
    Ok(acc.to_path())
}

/// `{b with entry i replaced by η_i : i ∈ Δ}`.
pub fn down_cover_candidates(vec: &BracketVector) -> Result<Vec<BracketVector>> {
    delta_set(vec)
        .into_iter()
        .map(|i| {
            let mut entries = vec.entries().to_vec();
            entries[i] = eta(vec, i)?;
            BracketVector::new(Arc::clone(vec.ctx()), entries)
        })
        .collect()
}

/// Upper bound on the length of any strictly decreasing chain below `vec`:
/// each Pop on a non-minimal element lowers the entry sum by at least one.
fn chain_bound(vec: &BracketVector) -> usize {
    vec.entries()
        .iter()
        .zip(vec.ctx().heights())
        .map(|(b, h)| b - h)
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PopTrajectory {
    pub states: Vec<BracketVector>,
    pub sortability_time: usize,
}

/// Iterates Pop from `vec` down to the minimum.
pub fn trajectory(vec: &BracketVector) -> Result<PopTrajectory> {
    let cap = chain_bound(vec);
    let mut states = vec![vec.clone()];
    while !states.last().expect("nonempty").is_bottom() {
        if states.len() > cap + 1 {
            return Err(Error::Internal(format!("Pop failed to descend from {vec}")));
        }
        let next = pop_vector(states.last().expect("nonempty"))?;
        states.push(next);
    }
    let sortability_time = states.len() - 1;
    Ok(PopTrajectory {
        states,
        sortability_time,
    })
}

/// Least `t` with Pop^t(vec) = b(ν).
pub fn sortability_time(vec: &BracketVector) -> Result<usize> {
    let cap = chain_bound(vec);
    let mut cur = vec.clone();
    let mut t = 0;
    while !cur.is_bottom() {
        if t > cap {
            return Err(Error::Internal(format!("Pop failed to descend from {vec}")));
        }
        cur = pop_vector(&cur)?;
        t += 1;
    }
    Ok(t)
}

/// Sortability times of every element of Tam_n, via Vec(E(NE)^(n-1)).
#[derive(Debug, Clone)]
pub struct SortabilityCensus {
    pub n: usize,
    /// `histogram[t]` = number of elements with sortability time exactly `t`.
    pub histogram: Vec<u64>,
}

impl SortabilityCensus {
    pub fn compute(n: usize) -> Result<Self> {
        Self::compute_with(n, &Limits::default())
    }

    pub fn compute_with(n: usize, limits: &Limits) -> Result<Self> {
        let ctx = Arc::new(NuContext::east_dyck(n)?);
        let all = enumerate_vectors_with(&ctx, limits)?;
        let mut memo: HashMap<Vec<usize>, usize> = HashMap::with_capacity(all.len());
        let mut histogram = Vec::new();
        for v in &all {
            let t = memo_time(v, &mut memo)?;
            if histogram.len() <= t {
                histogram.resize(t + 1, 0);
            }
            histogram[t] += 1;
        }
        Ok(SortabilityCensus { n, histogram })
    }

    pub fn total(&self) -> u64 {
        self.histogram.iter().sum()
    }

    /// Number of elements with sortability time at most `t`.
    pub fn count_sortable(&self, t: usize) -> u64 {
        self.histogram.iter().take(t + 1).sum()
    }
}

fn memo_time(v: &BracketVector, memo: &mut HashMap<Vec<usize>, usize>) -> Result<usize> {
    let mut chain = Vec::new();
    let mut cur = v.clone();
    let base = loop {
        if let Some(&t) = memo.get(cur.entries()) {
            break t;
        }
        if cur.is_bottom() {
            break 0;
        }
        if chain.len() > chain_bound(v) {
            return Err(Error::Internal(format!("Pop failed to descend from {v}")));
        }
        let next = pop_vector(&cur)?;
        chain.push(cur.into_entries());
        cur = next;
    };
    memo.insert(cur.into_entries(), base);
    let mut t = base;
    for entries in chain.into_iter().rev() {
        t += 1;
        memo.insert(entries, t);
    }
    Ok(t)
}

/// h_t(n): elements of Tam_n that are t-Pop-sortable.
pub fn count_t_sortable(n: usize, t: usize) -> Result<u64> {
    Ok(SortabilityCensus::compute(n)?.count_sortable(t))
}

fn east_dyck_size(vec: &BracketVector) -> Result<usize> {
    vec.ctx()
        .east_dyck_size()
        .ok_or_else(|| Error::NotEastDyck(vec.ctx().nu().to_string()))
}

pub fn is_irreducible(vec: &BracketVector) -> bool {
    vec.entries().first() == vec.entries().last()
}

/// Splits a vector of Vec(E(NE)^(n-1)) into irreducible components by
/// repeatedly cutting off `(b_0, …, b_{f_{b_0}})` and re-basing the rest.
pub fn decompose_irreducible(vec: &BracketVector) -> Result<Vec<BracketVector>> {
    east_dyck_size(vec)?;
    let mut parts = Vec::new();
    let mut rest = vec.entries().to_vec();
    while !rest.is_empty() {
        let m = rest[0];
        let cut = 2 * m + 2;
        if cut > rest.len() {
            return Err(Error::Internal(format!("component overruns {vec}")));
        }
        let ctx = Arc::new(NuContext::east_dyck(m + 1)?);
        parts.push(BracketVector::new(ctx, rest[..cut].to_vec())?);
        rest = rest[cut..].iter().map(|&b| b - (m + 1)).collect();
    }
    Ok(parts)
}

/// Concatenates vectors of Vec(E(NE)^(k_i - 1)), shifting each by the
/// total size of those before it.
pub fn compose(parts: &[BracketVector]) -> Result<BracketVector> {
    let mut entries = Vec::new();
    let mut offset = 0;
    for p in parts {
        let k = east_dyck_size(p)?;
        entries.extend(p.entries().iter().map(|&b| b + offset));
        offset += k;
    }
    let ctx = Arc::new(NuContext::east_dyck(offset)?);
    BracketVector::new(ctx, entries)
}

/// Deletes the first `f_0 + 1` entries and subtracts one from the rest,
/// landing in Vec(ν#) where ν# drops the first `f_0 + 1` steps of ν.
pub fn hash_map(vec: &BracketVector) -> Result<BracketVector> {
    let ctx = vec.ctx();
    let cut = ctx.fixed_position(0) + 1;
    if cut >= ctx.ell() {
        return Err(Error::HashExhausted(ctx.nu().to_string()));
    }
    let nu = LatticePath::from_steps(ctx.nu().steps()[cut..].to_vec())?;
    let entries = vec.entries()[cut..].iter().map(|&b| b - 1).collect();
    BracketVector::new(Arc::new(NuContext::new(nu)), entries)
}

/// Inverse of [`hash_map`] on irreducibles: Vec(E(NE)^(n-2)) into the
/// irreducible part of Vec(E(NE)^(n-1)).
pub fn unhash_irreducible(vec: &BracketVector) -> Result<BracketVector> {
    let n = east_dyck_size(vec)? + 1;
    let mut entries = Vec::with_capacity(2 * n);
    entries.push(n - 1);
    entries.push(0);
    entries.extend(vec.entries().iter().map(|&b| b + 1));
    BracketVector::new(Arc::new(NuContext::east_dyck(n)?), entries)
}

/// `{Pop(v) : v ∈ Vec(E(NE)^(n-1))}`.
pub fn pop_image(n: usize) -> Result<BTreeSet<BracketVector>> {
    pop_image_with(n, &Limits::default())
}

pub fn pop_image_with(n: usize, limits: &Limits) -> Result<BTreeSet<BracketVector>> {
    let ctx = Arc::new(NuContext::east_dyck(n)?);
    enumerate_vectors_with(&ctx, limits)?
        .iter()
        .map(pop_vector)
        .collect()
}

/// Number of elements covering `vec`, counted on paths.
pub fn up_cover_count(vec: &BracketVector) -> usize {
    vec.ctx().covers_up(&vec.to_path()).len()
}

/// `Σ q^{|up-covers(b)|}` over the Pop image, as an exponent histogram.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct PopPolynomial {
    pub coeffs: BTreeMap<usize, u64>,
}

impl PopPolynomial {
    pub fn coeff(&self, exponent: usize) -> u64 {
        self.coeffs.get(&exponent).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u64 {
        self.coeffs.values().sum()
    }

    pub fn from_exponents(exponents: impl IntoIterator<Item = usize>) -> Self {
        let mut coeffs = BTreeMap::new();
        for e in exponents {
            *coeffs.entry(e).or_insert(0) += 1;
        }
        PopPolynomial { coeffs }
    }
}

/// Pop(Tam_n; q).
pub fn pop_polynomial(n: usize) -> Result<PopPolynomial> {
    pop_polynomial_with(n, &Limits::default())
}

pub fn pop_polynomial_with(n: usize, limits: &Limits) -> Result<PopPolynomial> {
    let image = pop_image_with(n, limits)?;
    Ok(PopPolynomial::from_exponents(image.iter().map(up_cover_count)))
}
