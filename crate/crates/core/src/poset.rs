//! Finite posets given by an explicit cover relation.
//!
//! Used as a ground-truth oracle: the order is the reflexive-transitive
//! closure of the supplied lower covers, with no knowledge of any encoding.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    fn intersection_equals(&self, other: &BitSet, target: &BitSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .zip(&target.words)
            .all(|((a, b), t)| a & b == *t)
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| wi * 64 + b)
        })
    }
}

/// Elements are `0..len`.
#[derive(Debug, Clone)]
pub struct FinitePoset {
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    down: Vec<BitSet>,
}

impl FinitePoset {
    /// Builds the poset whose Hasse diagram has `lower[x]` as the elements
    /// covered by `x`. Fails on a cycle.
    pub fn from_lower_covers(lower: Vec<Vec<usize>>) -> Result<Self> {
        let n = lower.len();
        let mut upper = vec![Vec::new(); n];
        for (x, ls) in lower.iter().enumerate() {
            for &y in ls {
                upper[y].push(x);
            }
        }
        // Kahn's algorithm from the minimal elements upward
        let mut pending: Vec<usize> = lower.iter().map(Vec::len).collect();
        let mut ready: Vec<usize> = (0..n).filter(|&x| pending[x] == 0).collect();
        let mut down: Vec<Option<BitSet>> = vec![None; n];
        let mut done = 0;
        while let Some(x) = ready.pop() {
            let mut set = BitSet::new(n);
            set.insert(x);
            for &y in &lower[x] {
                set.union_with(down[y].as_ref().expect("lower cover finished first"));
            }
            down[x] = Some(set);
            done += 1;
            for &z in &upper[x] {
                pending[z] -= 1;
                if pending[z] == 0 {
                    ready.push(z);
                }
            }
        }
        if done != n {
            return Err(Error::Internal("cover relation has a cycle".into()));
        }
        let down = down.into_iter().map(|d| d.expect("all finished")).collect();
        Ok(FinitePoset { lower, upper, down })
    }

    /// Builds a poset from an order predicate, computing its Hasse diagram.
    pub fn from_order(len: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut below = vec![BitSet::new(len); len];
        for (x, set) in below.iter_mut().enumerate() {
            for y in (0..len).filter(|&y| y != x && leq(y, x)) {
                set.insert(y);
            }
        }
        let lower = (0..len)
            .map(|x| {
                let mut shadowed = BitSet::new(len);
                for z in below[x].iter() {
                    shadowed.union_with(&below[z]);
                }
                below[x].iter().filter(|&y| !shadowed.contains(y)).collect()
            })
            .collect();
        Self::from_lower_covers(lower)
    }

    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.down[y].contains(x)
    }

    pub fn down_set(&self, x: usize) -> Vec<usize> {
        self.down[x].iter().collect()
    }

    /// The unique minimum, if there is one.
    pub fn minimum(&self) -> Option<usize> {
        let mins: Vec<usize> = (0..self.len()).filter(|&x| self.lower[x].is_empty()).collect();
        match mins.as_slice() {
            [m] => Some(*m),
            _ => None,
        }
    }

    /// True iff `z` is the greatest lower bound of `x` and `y`.
    pub fn is_meet(&self, x: usize, y: usize, z: usize) -> bool {
        self.down[x].intersection_equals(&self.down[y], &self.down[z])
    }

    /// Greatest lower bound by search, or `None` if it does not exist.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        let common: Vec<usize> = self.down[x]
            .iter()
            .filter(|&z| self.down[y].contains(z))
            .collect();
        let best = common
            .iter()
            .copied()
            .max_by_key(|&z| self.down[z].count())?;
        self.is_meet(x, y, best).then_some(best)
    }

    /// Greatest lower bound of a nonempty set.
    pub fn meet_all(&self, xs: &[usize]) -> Option<usize> {
        let (&first, rest) = xs.split_first()?;
        rest.iter().try_fold(first, |acc, &x| self.meet(acc, x))
    }
}
