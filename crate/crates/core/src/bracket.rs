//! ν-bracket vectors: the integer-vector encoding of Tam(ν).
//!
//! A vector `(b_0, …, b_ℓ)` is a ν-bracket vector when
//!
//! 1. `b[f_k] = k` for every height `k` of ν,
//! 2. `heights(ν)[i] <= b[i] <= n_ν`,
//! 3. `b[i] = k` forces `b[j] <= k` for `i < j <= f_k` (no `121` pattern).
//!
//! The map from paths to vectors is an order isomorphism onto the
//! componentwise order, and meets are termwise minima.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::path::{LatticePath, NuContext, Step};

#[derive(Debug, Clone)]
pub struct BracketVector {
    entries: Vec<usize>,
    ctx: Arc<NuContext>,
}

/// Returns the first violated condition, if any.
fn violation(entries: &[usize], ctx: &NuContext) -> Option<String> {
    let heights = ctx.heights();
    let top = ctx.n_nu();
    for (k, &f) in ctx.fixed_positions().iter().enumerate() {
        if entries[f] != k {
            return Some(format!("entry {f} must equal {k}"));
        }
    }
    for (i, (&b, &h)) in entries.iter().zip(heights).enumerate() {
        if b < h || b > top {
            return Some(format!("entry {i} = {b} outside [{h}, {top}]"));
        }
    }
    for (i, &k) in entries.iter().enumerate() {
        let f = ctx.fixed_position(k);
        if let Some(j) = (i + 1..=f).find(|&j| entries[j] > k) {
            return Some(format!("entry {j} exceeds entry {i} = {k} before f_{k} = {f}"));
        }
    }
    None
}

/// Checks the three bracket-vector conditions against `ctx`.
pub fn is_valid(entries: &[usize], ctx: &NuContext) -> Result<bool> {
    if entries.len() != ctx.ell() + 1 {
        return Err(Error::LengthMismatch {
            expected: ctx.ell() + 1,
            got: entries.len(),
        });
    }
    Ok(violation(entries, ctx).is_none())
}

impl BracketVector {
    pub fn new(ctx: Arc<NuContext>, entries: Vec<usize>) -> Result<Self> {
        if !is_valid(&entries, &ctx)? {
            let reason = violation(&entries, &ctx).unwrap_or_default();
            return Err(Error::InvalidVector {
                nu: ctx.nu().to_string(),
                reason,
            });
        }
        Ok(BracketVector { entries, ctx })
    }

    /// Wraps entries already known to be valid.
    pub(crate) fn new_unchecked(ctx: Arc<NuContext>, entries: Vec<usize>) -> Self {
        debug_assert!(violation(&entries, &ctx).is_none(), "{entries:?}");
        BracketVector { entries, ctx }
    }

    /// The associated vector of `mu`: walk the path and write each grid
    /// point's height `k` into the rightmost empty slot at or left of `f_k`.
    pub fn from_path(ctx: &Arc<NuContext>, mu: &LatticePath) -> Result<Self> {
        ctx.require_member(mu)?;
        let mut slots: Vec<Option<usize>> = vec![None; ctx.ell() + 1];
        for p in mu.points() {
            let f = ctx.fixed_position(p.y);
            let slot = (0..=f)
                .rev()
                .find(|&i| slots[i].is_none())
                .ok_or_else(|| Error::NotWeaklyAbove(mu.to_string()))?;
            slots[slot] = Some(p.y);
        }
        let entries = slots
            .into_iter()
            .map(|s| s.ok_or_else(|| Error::Internal("unfilled slot".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new_unchecked(Arc::clone(ctx), entries))
    }

    /// Inverse of [`BracketVector::from_path`]. Every grid point writes its
    /// height exactly once, so the number of entries equal to `k` is the
    /// number of points of the path at height `k`, which pins the path.
    pub fn to_path(&self) -> LatticePath {
        let top = self.ctx.n_nu();
        let mut counts = vec![0usize; top + 1];
        for &b in &self.entries {
            counts[b] += 1;
        }
        let mut steps = Vec::with_capacity(self.ctx.ell());
        for (k, &c) in counts.iter().enumerate() {
            if k > 0 {
                steps.push(Step::N);
            }
            steps.extend(std::iter::repeat_n(Step::E, c - 1));
        }
        let path = LatticePath::from_steps(steps).expect("nonempty context");
        debug_assert_eq!(
            BracketVector::from_path(&self.ctx, &path).map(|v| v.entries),
            Ok(self.entries.clone())
        );
        path
    }

    /// b(ν): the minimum.
    pub fn bottom(ctx: &Arc<NuContext>) -> Self {
        Self::new_unchecked(Arc::clone(ctx), ctx.heights().to_vec())
    }

    pub fn top(ctx: &Arc<NuContext>) -> Self {
        Self::from_path(ctx, &ctx.top()).expect("top path is in Tam(nu)")
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<usize> {
        self.entries
    }

    pub fn ctx(&self) -> &Arc<NuContext> {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_bottom(&self) -> bool {
        self.entries == self.ctx.heights()
    }

    pub fn same_context(&self, other: &BracketVector) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx.nu() == other.ctx.nu()
    }

    fn require_same_context(&self, other: &BracketVector) -> Result<()> {
        if self.same_context(other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Termwise minimum.
    pub fn meet(&self, other: &BracketVector) -> Result<BracketVector> {
        self.require_same_context(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| a.min(b))
            .collect();
        Ok(Self::new_unchecked(Arc::clone(&self.ctx), entries))
    }

    /// Componentwise comparison.
    pub fn leq(&self, other: &BracketVector) -> Result<bool> {
        self.require_same_context(other)?;
        Ok(self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b))
    }
}

impl PartialEq for BracketVector {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries && self.same_context(other)
    }
}

impl Eq for BracketVector {}

impl Hash for BracketVector {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.entries.hash(state);
    }
}

impl PartialOrd for BracketVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on entries; only a tiebreak on ν.
impl Ord for BracketVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.entries
            .cmp(&other.entries)
            .then_with(|| self.ctx.nu().cmp(other.ctx.nu()))
    }
}

impl fmt::Display for BracketVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for BracketVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("BracketVector", 2)?;
        s.serialize_field("nu", self.ctx.nu())?;
        s.serialize_field("entries", &self.entries)?;
        s.end()
    }
}

/// All of Vec(ν), lexicographically ordered.
pub fn enumerate_vectors(ctx: &Arc<NuContext>) -> Result<Vec<BracketVector>> {
    enumerate_vectors_with(ctx, &Limits::default())
}

pub fn enumerate_vectors_with(ctx: &Arc<NuContext>, limits: &Limits) -> Result<Vec<BracketVector>> {
    limits.check_ell(ctx.ell())?;
    let mut fixed_at = vec![None; ctx.ell() + 1];
    for (k, &f) in ctx.fixed_positions().iter().enumerate() {
        fixed_at[f] = Some(k);
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(ctx.ell() + 1);
    extend_vectors(ctx, &fixed_at, &mut prefix, &mut out);
    Ok(out)
}

fn extend_vectors(
    ctx: &Arc<NuContext>,
    fixed_at: &[Option<usize>],
    prefix: &mut Vec<usize>,
    out: &mut Vec<BracketVector>,
) {
    let j = prefix.len();
    if j == fixed_at.len() {
        out.push(BracketVector::new_unchecked(Arc::clone(ctx), prefix.clone()));
        return;
    }
    // condition (3) from every earlier entry whose window reaches j
    let upper = prefix
        .iter()
        .filter(|&&k| ctx.fixed_position(k) >= j)
        .copied()
        .min()
        .unwrap_or(ctx.n_nu());
    let (lo, hi) = match fixed_at[j] {
        Some(k) => (k, k.min(upper)),
        None => (ctx.heights()[j], upper),
    };
    for v in lo..=hi {
        prefix.push(v);
        extend_vectors(ctx, fixed_at, prefix, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(nu: &str) -> Arc<NuContext> {
        Arc::new(NuContext::parse(nu).unwrap())
    }

    fn path(s: &str) -> LatticePath {
        LatticePath::parse(s).unwrap()
    }

    const FIG: [usize; 11] = [1, 0, 1, 3, 3, 3, 2, 2, 3, 4, 4];

    #[test]
    fn validity_examples() {
        let c = ctx("ENNEEEENNE");
        assert_eq!(is_valid(&FIG, &c), Ok(true));
        let mut bad = FIG;
        bad[1] = 1;
        assert_eq!(is_valid(&bad, &c), Ok(false));
        assert_eq!(is_valid(&[2, 0, 2, 1, 2, 2], &ctx("ENENE")), Ok(true));
        assert!(matches!(is_valid(&[0, 0], &c), Err(Error::LengthMismatch { .. })));
        // 121 pattern inside a window
        assert_eq!(is_valid(&[1, 0, 2, 1, 2, 2], &ctx("ENENE")), Ok(false));
        assert!(BracketVector::new(ctx("ENENE"), vec![1, 0, 2, 1, 2, 2]).is_err());
    }

    #[test]
    fn path_to_vector_examples() {
        let c = ctx("ENNEEEENNE");
        let v = BracketVector::from_path(&c, &path("NENENEEENE")).unwrap();
        assert_eq!(v.entries(), &FIG);
        assert_eq!(v.to_path(), path("NENENEEENE"));
        let nu = BracketVector::from_path(&c, c.nu()).unwrap();
        assert_eq!(nu.entries(), c.heights());
        assert_eq!(nu, BracketVector::bottom(&c));
        assert_eq!(nu.to_path(), *c.nu());

        let e3 = ctx("ENENE");
        let top = BracketVector::from_path(&e3, &path("NNEEE")).unwrap();
        assert_eq!(top.entries(), &[2, 0, 2, 1, 2, 2]);
        assert_eq!(top, BracketVector::top(&e3));
        assert!(BracketVector::from_path(&e3, &path("EENNE")).is_err());
    }

    #[test]
    fn top_is_entrywise_maximal() {
        let e3 = ctx("ENENE");
        let all = enumerate_vectors(&e3).unwrap();
        let top = BracketVector::top(&e3);
        assert!(all.iter().all(|v| v.leq(&top).unwrap()));
    }

    #[test]
    fn round_trip_dyck_4() {
        let c = Arc::new(NuContext::dyck(4).unwrap());
        let vs = enumerate_vectors(&c).unwrap();
        assert_eq!(vs.len(), 14);
        for v in vs {
            assert_eq!(BracketVector::from_path(&c, &v.to_path()).unwrap(), v);
        }
    }

    #[test]
    fn enumeration_examples() {
        let got: Vec<_> = enumerate_vectors(&ctx("ENE"))
            .unwrap()
            .into_iter()
            .map(|v| v.into_entries())
            .collect();
        assert_eq!(got, vec![vec![0, 0, 1, 1], vec![1, 0, 1, 1]]);
        assert_eq!(enumerate_vectors(&ctx("ENENE")).unwrap().len(), 5);
        let e: Vec<_> = enumerate_vectors(&ctx("E")).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].entries(), &[0, 0]);
        assert!(enumerate_vectors(&Arc::new(NuContext::dyck(14).unwrap())).is_err());
    }

    #[test]
    fn enumeration_matches_brute_filter() {
        for nu in ["ENNEENE", "NNEEN", "EENENN", "ENENENE"] {
            let c = ctx(nu);
            let (l, top) = (c.ell(), c.n_nu());
            let mut brute = Vec::new();
            let mut v = vec![0usize; l + 1];
            loop {
                if is_valid(&v, &c).unwrap() {
                    brute.push(v.clone());
                }
                // odometer over [0, top]^(l+1), last entry fastest
                let mut i = l + 1;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    if v[i] < top {
                        v[i] += 1;
                        break;
                    }
                    v[i] = 0;
                }
                if v.iter().all(|&x| x == 0) {
                    break;
                }
            }
            let got: Vec<_> = enumerate_vectors(&c)
                .unwrap()
                .into_iter()
                .map(|v| v.into_entries())
                .collect();
            assert_eq!(got, brute, "nu = {nu}");
            assert_eq!(got.len(), c.enumerate().unwrap().len());
        }
    }

    #[test]
    fn meet_and_leq_examples() {
        let e3 = ctx("ENENE");
        let v = |e: &[usize]| BracketVector::new(Arc::clone(&e3), e.to_vec()).unwrap();
        let top = v(&[2, 0, 2, 1, 2, 2]);
        let mid = v(&[1, 0, 1, 1, 2, 2]);
        let bot = BracketVector::bottom(&e3);
        assert_eq!(top.meet(&top).unwrap(), top);
        assert_eq!(bot.meet(&top).unwrap(), bot);
        assert_eq!(top.meet(&mid).unwrap(), mid);
        assert!(bot.leq(&top).unwrap());
        assert!(mid.leq(&top).unwrap());
        let a = v(&[2, 0, 1, 1, 2, 2]);
        let b = v(&[0, 0, 2, 1, 2, 2]);
        assert!(!a.leq(&b).unwrap() && !b.leq(&a).unwrap());
        let other = BracketVector::bottom(&ctx("NENENE"));
        assert_eq!(top.meet(&other), Err(Error::ContextMismatch));
        assert_eq!(top.leq(&other), Err(Error::ContextMismatch));
    }

    #[test]
    fn east_dyck_has_catalan_many_vectors() {
        let catalan = [1, 1, 2, 5, 14, 42, 132];
        for (n, &want) in catalan.iter().enumerate().skip(1) {
            let c = Arc::new(NuContext::east_dyck(n).unwrap());
            assert_eq!(enumerate_vectors(&c).unwrap().len(), want);
        }
    }

    #[test]
    fn blocks_are_non_increasing() {
        for nu in ["ENNEEEENNE", "EEENNENEE", "NENENENE"] {
            let c = ctx(nu);
            let f = c.fixed_positions();
            for v in enumerate_vectors(&c).unwrap() {
                let e = v.entries();
                for k in 0..f.len() {
                    let start = if k == 0 { 0 } else { f[k - 1] + 1 };
                    assert!(e[start..=f[k]].windows(2).all(|w| w[0] >= w[1]));
                }
            }
        }
    }

    #[test]
    fn serializes_with_nu() {
        let v = BracketVector::bottom(&ctx("ENE"));
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"nu":"ENE","entries":[0,0,1,1]}"#
        );
        assert_eq!(v.to_string(), "(0,0,1,1)");
    }
}
