//! Permutations under the right weak order, the pop-stack-sorting map,
//! the sylvester congruence and its 312-avoiding class minima.
//!
//! Av_n(312) is a sublattice of the weak order on S_n isomorphic to Tam_n,
//! and Pop on it is `π↓ ∘ pop_stack`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;
use serde::{Serialize, Serializer};

use crate::bracket::{enumerate_vectors_with, BracketVector};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::path::NuContext;
use crate::pop::{compose, unhash_irreducible};

/// A permutation of `1..=n` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pattern {
    /// No `i < j < k` with `x_j < x_k < x_i`.
    P312,
    /// No `i < j < k` with `x_k < x_i < x_j`.
    P231,
    /// No adjacent descent `x_{i-1} > x_i` with a later `x_j` strictly
    /// between them.
    Barred312,
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "312" => Ok(Pattern::P312),
            "231" => Ok(Pattern::P231),
            "31bar2" | "3bar12" | "barred312" => Ok(Pattern::Barred312),
            other => Err(Error::UnknownPattern(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PermStats {
    /// 1-based `i` with `x_i > x_{i+1}`.
    pub descent_positions: Vec<usize>,
    pub ascent_positions: Vec<usize>,
    /// Interior 1-based `i` with `x_{i-1} < x_i > x_{i+1}`.
    pub peak_positions: Vec<usize>,
    /// Lengths of the maximal descending runs, left to right.
    pub run_lengths: Vec<usize>,
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &x in &word {
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidPermutation(format!("{word:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation(word))
    }

    /// Digit string (`"74513"`) or comma-separated values (`"10,2,1,…"`).
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let word = if text.contains(',') {
            text.split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::InvalidPermutation(text.to_string()))?
        } else {
            text.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::InvalidPermutation(text.to_string()))?
        };
        Self::new(word)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn decreasing(n: usize) -> Self {
        Permutation((1..=n).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn word(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// Reverses every maximal descending run.
    pub fn pop_stack(&self) -> Permutation {
        Permutation(pop_stack_word(&self.0))
    }

    /// One permutation per descent, with that adjacent pair swapped.
    pub fn weak_order_covers_down(&self) -> Vec<Permutation> {
        (0..self.len().saturating_sub(1))
            .filter(|&i| self.0[i] > self.0[i + 1])
            .map(|i| {
                let mut w = self.0.clone();
                w.swap(i, i + 1);
                Permutation(w)
            })
            .collect()
    }

    pub fn weak_order_covers_up(&self) -> Vec<Permutation> {
        (0..self.len().saturating_sub(1))
            .filter(|&i| self.0[i] < self.0[i + 1])
            .map(|i| {
                let mut w = self.0.clone();
                w.swap(i, i + 1);
                Permutation(w)
            })
            .collect()
    }

    pub fn avoids(&self, pattern: Pattern) -> bool {
        let x = &self.0;
        let n = x.len();
        match pattern {
            Pattern::P312 => {
                for j in 1..n {
                    for i in 0..j {
                        if x[i] <= x[j] {
                            continue;
                        }
                        if x[j + 1..].iter().any(|&v| x[j] < v && v < x[i]) {
                            return false;
                        }
                    }
                }
                true
            }
            Pattern::P231 => {
                let mut suffix_min = vec![usize::MAX; n + 1];
                for k in (0..n).rev() {
                    suffix_min[k] = suffix_min[k + 1].min(x[k]);
                }
                for j in 1..n {
                    for i in 0..j {
                        if x[i] < x[j] && suffix_min[j + 1] < x[i] {
                            return false;
                        }
                    }
                }
                true
            }
            Pattern::Barred312 => barred_corner(x, 0).is_none(),
        }
    }

    /// π↓ by always swapping the leftmost removable `c a … b` corner.
    pub fn pi_down(&self) -> Permutation {
        let mut w = self.0.clone();
        let mut from = 0;
        while let Some(i) = barred_corner(&w, from) {
            w.swap(i, i + 1);
            // a swap at i can only create a new corner at i - 1
            from = i.saturating_sub(1);
        }
        Permutation(w)
    }

    /// π↓ choosing uniformly among all removable corners at each step.
    pub fn pi_down_random<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut w = self.0.clone();
        loop {
            let corners = all_barred_corners(&w);
            if corners.is_empty() {
                return Permutation(w);
            }
            let i = corners[rng.gen_range(0..corners.len())];
            w.swap(i, i + 1);
        }
    }

    /// Pop on Av_n(312): `π↓(pop_stack(p))`.
    pub fn pop_tamari(&self) -> Result<Permutation> {
        if !self.avoids(Pattern::P312) {
            return Err(Error::Not312Avoiding(self.to_string()));
        }
        Ok(self.pop_stack().pi_down())
    }

    /// `x'_i = n + 1 - x_{n+1-i}`.
    pub fn reverse_complement(&self) -> Permutation {
        let n = self.len();
        Permutation(self.0.iter().rev().map(|&x| n + 1 - x).collect())
    }

    pub fn ascent_count(&self) -> usize {
        self.0.windows(2).filter(|w| w[0] < w[1]).count()
    }

    pub fn descent_count(&self) -> usize {
        self.0.windows(2).filter(|w| w[0] > w[1]).count()
    }

    pub fn has_double_descent(&self) -> bool {
        self.0.windows(3).any(|w| w[0] > w[1] && w[1] > w[2])
    }

    pub fn stats(&self) -> PermStats {
        let x = &self.0;
        let n = x.len();
        let descent_positions = (1..n).filter(|&i| x[i - 1] > x[i]).collect();
        let ascent_positions = (1..n).filter(|&i| x[i - 1] < x[i]).collect();
        let peak_positions = (2..n)
            .filter(|&i| x[i - 2] < x[i - 1] && x[i - 1] > x[i])
            .collect();
        let mut run_lengths = Vec::new();
        let mut len = 0;
        for i in 0..n {
            len += 1;
            if i + 1 == n || x[i] < x[i + 1] {
                run_lengths.push(len);
                len = 0;
            }
        }
        PermStats {
            descent_positions,
            ascent_positions,
            peak_positions,
            run_lengths,
        }
    }

    /// Inversion set as a bitmask over value pairs `(a, b)`, `a < b`, with
    /// `b` appearing before `a`. Right weak order is containment.
    pub fn inversion_mask(&self) -> u128 {
        let n = self.len();
        assert!(n * (n - 1) / 2 <= 128, "inversion mask supports n <= 16");
        let mut pos = vec![0; n + 1];
        for (i, &x) in self.0.iter().enumerate() {
            pos[x] = i;
        }
        let mut mask = 0u128;
        let mut bit = 0;
        for a in 1..=n {
            for b in a + 1..=n {
                if pos[b] < pos[a] {
                    mask |= 1 << bit;
                }
                bit += 1;
            }
        }
        mask
    }

    /// Right weak order comparison.
    pub fn weak_leq(&self, other: &Permutation) -> bool {
        let (a, b) = (self.inversion_mask(), other.inversion_mask());
        self.len() == other.len() && a & b == a
    }
}

/// Pop-stack on an arbitrary word of distinct values.
pub fn pop_stack_word(word: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(word.len());
    let mut start = 0;
    for i in 0..word.len() {
        if i + 1 == word.len() || word[i] < word[i + 1] {
            out.extend(word[start..=i].iter().rev());
            start = i + 1;
        }
    }
    out
}

fn is_corner(w: &[usize], i: usize) -> bool {
    let (c, a) = (w[i], w[i + 1]);
    c > a && w[i + 2..].iter().any(|&b| a < b && b < c)
}

/// Leftmost `i >= from` where `w[i] w[i+1] = c a` has a later `b` with
/// `a < b < c`.
fn barred_corner(w: &[usize], from: usize) -> Option<usize> {
    (from..w.len().saturating_sub(1)).find(|&i| is_corner(w, i))
}

fn all_barred_corners(w: &[usize]) -> Vec<usize> {
    (0..w.len().saturating_sub(1))
        .filter(|&i| is_corner(w, i))
        .collect()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.len() >= 10 { "," } else { "" };
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

/// All of S_n in lexicographic order.
pub fn enumerate_permutations(n: usize, limits: &Limits) -> Result<Vec<Permutation>> {
    limits.check_perm_n(n)?;
    let mut out = Vec::new();
    let mut w: Vec<usize> = (1..=n).collect();
    loop {
        out.push(Permutation(w.clone()));
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| w[i - 1] < w[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| w[j] > w[i - 1]).expect("pivot exists");
        w.swap(i - 1, j);
        w[i..].reverse();
    }
    Ok(out)
}

/// Av_n(312) in lexicographic order.
pub fn enumerate_av312(n: usize) -> Result<Vec<Permutation>> {
    enumerate_av312_with(n, &Limits::default())
}

pub fn enumerate_av312_with(n: usize, limits: &Limits) -> Result<Vec<Permutation>> {
    limits.check_perm_n(n)?;
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    extend_av312(n, &mut word, &mut used, &mut out);
    Ok(out)
}

fn extend_av312(n: usize, word: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
    if word.len() == n {
        out.push(Permutation(word.clone()));
        return;
    }
    for v in 1..=n {
        if used[v] {
            continue;
        }
        // v would close a 312 as the "2": some x_i > v precedes a later x_j < v
        let closes = (0..word.len()).any(|i| {
            word[i] > v && word[i + 1..].iter().any(|&m| m < v)
        });
        if closes {
            continue;
        }
        used[v] = true;
        word.push(v);
        extend_av312(n, word, used, out);
        word.pop();
        used[v] = false;
    }
}

/// Permutations of Av_n(312) ending in `n` with no three consecutive
/// decreasing entries.
pub fn image_by_characterization(n: usize) -> Result<BTreeSet<Permutation>> {
    image_by_characterization_with(n, &Limits::default())
}

pub fn image_by_characterization_with(n: usize, limits: &Limits) -> Result<BTreeSet<Permutation>> {
    Ok(enumerate_av312_with(n, limits)?
        .into_iter()
        .filter(|p| p.0.last() == Some(&n) && !p.has_double_descent())
        .collect())
}

/// `{π↓(pop_stack(p)) : p ∈ Av_n(312)}`.
pub fn pop_image_perm(n: usize, limits: &Limits) -> Result<BTreeSet<Permutation>> {
    Ok(enumerate_av312_with(n, limits)?
        .iter()
        .map(|p| p.pop_stack().pi_down())
        .collect())
}

/// Histogram over `k` of 231-avoiding permutations of S_{n+1} with exactly
/// `k` descents and `k` peaks.
pub fn descent_peak_census(n: usize, limits: &Limits) -> Result<BTreeMap<usize, u64>> {
    let mut hist = BTreeMap::new();
    for p in enumerate_permutations(n + 1, limits)? {
        if !p.avoids(Pattern::P231) {
            continue;
        }
        let s = p.stats();
        if s.descent_positions.len() == s.peak_positions.len() {
            *hist.entry(s.descent_positions.len()).or_insert(0) += 1;
        }
    }
    Ok(hist)
}

pub fn count_231_equal_descents_peaks(n: usize, k: usize) -> Result<u64> {
    Ok(descent_peak_census(n, &Limits::default())?
        .get(&k)
        .copied()
        .unwrap_or(0))
}

/// The Tamari encoding of a 312-avoiding permutation: split at the value 1
/// as `L 1 R`; the left part (values `2..=k`) becomes the irreducible
/// leading component and the right part the remainder.
pub fn tamari_perm_map(p: &Permutation) -> Result<BracketVector> {
    if !p.avoids(Pattern::P312) {
        return Err(Error::Not312Avoiding(p.to_string()));
    }
    encode_312(&p.0)
}

fn encode_312(word: &[usize]) -> Result<BracketVector> {
    let n = word.len();
    let k = word.iter().position(|&x| x == 1).expect("value 1 present") + 1;
    let left: Vec<usize> = word[..k - 1].iter().map(|&x| x - 1).collect();
    let right: Vec<usize> = word[k..].iter().map(|&x| x - k).collect();
    let head = if left.is_empty() {
        BracketVector::bottom(&Arc::new(NuContext::east_dyck(1)?))
    } else {
        unhash_irreducible(&encode_312(&left)?)?
    };
    let mut parts = vec![head];
    if !right.is_empty() {
        parts.push(encode_312(&right)?);
    }
    let v = compose(&parts)?;
    debug_assert_eq!(v.ctx().east_dyck_size(), Some(n));
    Ok(v)
}

/// The map Av_n(312) → Vec(E(NE)^(n-1)), checked to be a bijection that
/// preserves and reflects order (hence sends Hasse diagram to Hasse
/// diagram).
pub fn tamari_perm_bijection(n: usize) -> Result<HashMap<Permutation, BracketVector>> {
    tamari_perm_bijection_with(n, &Limits::default())
}

pub fn tamari_perm_bijection_with(
    n: usize,
    limits: &Limits,
) -> Result<HashMap<Permutation, BracketVector>> {
    let perms = enumerate_av312_with(n, limits)?;
    let ctx = Arc::new(NuContext::east_dyck(n)?);
    let vectors: BTreeSet<_> = enumerate_vectors_with(&ctx, limits)?.into_iter().collect();
    let images = perms.iter().map(tamari_perm_map).collect::<Result<Vec<_>>>()?;
    let distinct: BTreeSet<_> = images.iter().cloned().collect();
    if distinct != vectors {
        return Err(Error::IsomorphismFailure(format!(
            "n = {n}: image has {} distinct vectors, Vec has {}",
            distinct.len(),
            vectors.len()
        )));
    }
    let masks: Vec<u128> = perms.iter().map(Permutation::inversion_mask).collect();
    for (i, (mi, vi)) in masks.iter().zip(&images).enumerate() {
        for (j, (mj, vj)) in masks.iter().zip(&images).enumerate() {
            let perm_le = mi & mj == *mi;
            if perm_le != vi.leq(vj)? {
                return Err(Error::IsomorphismFailure(format!(
                    "{} vs {}: weak order {perm_le}, vectors {vi} {vj}",
                    perms[i], perms[j]
                )));
            }
        }
    }
    Ok(perms.into_iter().zip(images).collect())
}
