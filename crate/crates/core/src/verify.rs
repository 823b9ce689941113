//! Exhaustive verification suites.
//!
//! Each suite is a set of named checks; a check returns `Err` with a
//! human-readable counterexample. Checks run in parallel and the report is
//! sorted by name, so output is deterministic for a fixed seed.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bracket::{enumerate_vectors_with, BracketVector};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::path::{LatticePath, NuContext, Step};
use crate::perm::{
    descent_peak_census, enumerate_av312_with, enumerate_permutations, image_by_characterization_with,
    pop_image_perm, tamari_perm_bijection_with, Pattern, Permutation,
};
use crate::pop::{
    decompose_irreducible, down_cover_candidates, hash_map, is_irreducible, pop_generic,
    pop_image_with, pop_polynomial_with, pop_vector, sortability_time, PopPolynomial, SortabilityCensus,
};
use crate::poset::FinitePoset;
use crate::series::{a055151, g_series, h_series, h_series_rational, h_tilde, motzkin_table, IntSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Bijection,
    PopOracle,
    Decomposition,
    Hash,
    Theorem1,
    Congruence,
    Characterization,
    Theorem2,
    Petersen,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Bijection,
        Suite::PopOracle,
        Suite::Decomposition,
        Suite::Hash,
        Suite::Theorem1,
        Suite::Congruence,
        Suite::Characterization,
        Suite::Theorem2,
        Suite::Petersen,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Bijection => "bijection",
            Suite::PopOracle => "pop-oracle",
            Suite::Decomposition => "decomposition",
            Suite::Hash => "hash",
            Suite::Theorem1 => "theorem-1",
            Suite::Congruence => "congruence",
            Suite::Characterization => "characterization",
            Suite::Theorem2 => "theorem-2",
            Suite::Petersen => "petersen",
        }
    }

    /// `(max_n, max_t)` used when the caller gives none.
    pub fn default_bounds(self) -> (usize, usize) {
        match self {
            Suite::Bijection | Suite::PopOracle => (6, 0),
            Suite::Decomposition | Suite::Hash => (8, 4),
            Suite::Theorem1 => (11, 5),
            Suite::Congruence => (8, 0),
            Suite::Characterization => (9, 0),
            Suite::Theorem2 => (11, 0),
            Suite::Petersen => (8, 0),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses a suite name; `all` expands to every suite.
pub fn parse_suites(name: &str) -> Result<Vec<Suite>> {
    if name == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    name.parse().map(|s| vec![s])
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyParams {
    pub max_n: Option<usize>,
    pub max_t: Option<usize>,
    pub seed: u64,
    pub limits: Limits,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub max_n: usize,
    pub max_t: usize,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

type Check = (String, Box<dyn Fn() -> std::result::Result<(), String> + Send + Sync>);

fn check<F>(name: impl Into<String>, f: F) -> Check
where
    F: Fn() -> std::result::Result<(), String> + Send + Sync + 'static,
{
    (name.into(), Box::new(f))
}

fn fail<T>(msg: impl Into<String>) -> std::result::Result<T, String> {
    Err(msg.into())
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub fn run(suite: Suite, params: &VerifyParams) -> VerificationReport {
    let (dn, dt) = suite.default_bounds();
    let max_n = params.max_n.unwrap_or(dn);
    let max_t = params.max_t.unwrap_or(dt);
    let checks = build_checks(suite, max_n, max_t, params.seed, params.limits);
    let mut results: Vec<CheckReport> = checks
        .into_par_iter()
        .map(|(name, f)| {
            let start = Instant::now();
            let outcome = f();
            CheckReport {
                name,
                passed: outcome.is_ok(),
                counterexample: outcome.err(),
                elapsed: start.elapsed(),
            }
        })
        .collect();
    results.sort_by(|a, b| a.name.cmp(&b.name));
    VerificationReport {
        suite: suite.name().to_string(),
        max_n,
        max_t,
        seed: params.seed,
        passed: results.iter().all(|c| c.passed),
        checks: results,
    }
}

fn build_checks(suite: Suite, max_n: usize, max_t: usize, seed: u64, limits: Limits) -> Vec<Check> {
    let name = |c: &str| format!("{}/{c}", suite.name());
    match suite {
        Suite::Bijection => {
            let corpus = corpus(max_n, 2 * max_n, 20, seed);
            vec![
                check(name("order-isomorphism-and-meets"), {
                    let corpus = corpus.clone();
                    move || corpus.iter().try_for_each(|c| check_bijection(c, limits))
                }),
                check(name("catalan-cardinality"), move || {
                    for n in 1..=max_n {
                        let want = crate::series::catalan(n as u64);
                        for ctx in [NuContext::dyck(n), NuContext::east_dyck(n)] {
                            let ctx = Arc::new(lift(ctx)?);
                            let got = lift(ctx.enumerate_with(&limits))?.len();
                            let vecs = lift(enumerate_vectors_with(&ctx, &limits))?.len();
                            if BigUint::from(got) != want || vecs != got {
                                return fail(format!("{}: {got} paths, {vecs} vectors", ctx.nu()));
                            }
                        }
                    }
                    Ok(())
                }),
                check(name("covers-inverse"), move || {
                    corpus.iter().try_for_each(|c| check_covers_inverse(c, limits))
                }),
            ]
        }
        Suite::PopOracle => {
            let corpus = corpus(max_n, 2 * max_n, 20, seed);
            vec![
                check(name("formula-vs-definition"), {
                    let corpus = corpus.clone();
                    move || corpus.iter().try_for_each(|c| check_pop_oracle(c, limits))
                }),
                check(name("down-cover-candidates"), {
                    let corpus = corpus.clone();
                    move || corpus.iter().try_for_each(|c| check_down_candidates(c, limits))
                }),
                check(name("entry-lower-bound"), move || {
                    corpus.iter().try_for_each(|c| check_entry_lower_bound(c, limits))
                }),
            ]
        }
        Suite::Decomposition => vec![
            check(name("round-trip"), move || {
                for n in 1..=max_n {
                    for v in east_dyck_vectors(n, limits)? {
                        let parts = lift(decompose_irreducible(&v))?;
                        if !parts.iter().all(is_irreducible) || lift(crate::pop::compose(&parts))? != v {
                            return fail(format!("{v}"));
                        }
                    }
                }
                Ok(())
            }),
            check(name("sortability"), move || {
                for n in 1..=max_n {
                    for v in east_dyck_vectors(n, limits)? {
                        let time = lift(sortability_time(&v))?;
                        let parts = lift(decompose_irreducible(&v))?;
                        let times = parts
                            .iter()
                            .map(sortability_time)
                            .collect::<Result<Vec<_>>>()
                            .map_err(|e| e.to_string())?;
                        for t in 0..=max_t {
                            if (time <= t) != times.iter().all(|&s| s <= t) {
                                return fail(format!("{v} at t = {t}"));
                            }
                        }
                    }
                }
                Ok(())
            }),
        ],
        Suite::Hash => vec![
            check(name("bijection-on-irreducibles"), move || {
                for n in 2..=max_n + 1 {
                    let target: BTreeSet<_> = east_dyck_vectors(n - 1, limits)?.into_iter().collect();
                    let image: Vec<_> = east_dyck_vectors(n, limits)?
                        .iter()
                        .filter(|v| is_irreducible(v))
                        .map(hash_map)
                        .collect::<Result<_>>()
                        .map_err(|e| e.to_string())?;
                    let distinct: BTreeSet<_> = image.iter().cloned().collect();
                    if distinct.len() != image.len() || distinct != target {
                        return fail(format!("n = {n}"));
                    }
                }
                Ok(())
            }),
            check(name("sortability-monotone"), move || {
                for n in 2..=max_n {
                    for v in east_dyck_vectors(n, limits)? {
                        let a = lift(sortability_time(&v))?;
                        let b = lift(hash_map(&v).and_then(|h| sortability_time(&h)))?;
                        if (0..=max_t).any(|t| a <= t && b > t) {
                            return fail(format!("{v}"));
                        }
                    }
                }
                Ok(())
            }),
            check(name("irreducible-criterion"), move || {
                for n in 2..=max_n {
                    for v in east_dyck_vectors(n, limits)?.iter().filter(|v| is_irreducible(v)) {
                        if let Some(t) = hash_criterion_violation(v, max_t)? {
                            return fail(format!("{v} at t = {t}"));
                        }
                    }
                }
                Ok(())
            }),
        ],
        Suite::Theorem1 => vec![
            check(name("census-vs-series"), move || {
                let series: Vec<IntSeries> = (1..=max_t).map(|t| h_series(t, max_n)).collect();
                for n in 1..=max_n {
                    let census = lift(SortabilityCensus::compute_with(n, &limits))?;
                    for t in 1..=max_t {
                        let got = BigUint::from(census.count_sortable(t));
                        let want = series[t - 1].coeff(n).to_biguint().unwrap_or_default();
                        if got != want {
                            return fail(format!("h_{t}({n}): census {got}, series {want}"));
                        }
                    }
                }
                Ok(())
            }),
            check(name("all-sortable-when-n-le-t"), move || {
                for n in 1..=max_n.min(8) {
                    let census = lift(SortabilityCensus::compute_with(n, &limits))?;
                    if census.count_sortable(n) != census.total() {
                        return fail(format!("n = {n}"));
                    }
                }
                Ok(())
            }),
            check(name("series-identities"), move || {
                series_identity_violation(max_t.max(6), 25).map_or(Ok(()), fail)
            }),
        ],
        Suite::Congruence => {
            let small = max_n.min(7);
            vec![
                check(name("isomorphism"), move || {
                    for n in 1..=max_n {
                        lift(tamari_perm_bijection_with(n, &limits))?;
                    }
                    for n in 1..=max_n {
                        check_cover_transport(n, limits)?;
                    }
                    Ok(())
                }),
                check(name("pop-commutes"), move || {
                    for n in 1..=max_n {
                        let map = lift(tamari_perm_bijection_with(n, &limits))?;
                        for (p, v) in &map {
                            let lhs = &map[&lift(p.pop_tamari())?];
                            if *lhs != lift(pop_vector(v))? {
                                return fail(format!("{p}"));
                            }
                        }
                    }
                    Ok(())
                }),
                check(name("pi-down-confluence"), move || {
                    check_confluence(small, 1000, seed, limits)
                }),
                check(name("pi-down-avoids-312"), move || {
                    for n in 1..=small {
                        for p in lift(enumerate_permutations(n, &limits))? {
                            let d = p.pi_down();
                            if !d.avoids(Pattern::P312) || !d.weak_leq(&p) {
                                return fail(format!("{p} -> {d}"));
                            }
                        }
                    }
                    Ok(())
                }),
            ]
        }
        Suite::Characterization => vec![check(name("image-equals-set"), move || {
            for n in 1..=max_n {
                let img = lift(pop_image_perm(n, &limits))?;
                let set = lift(image_by_characterization_with(n, &limits))?;
                if img != set {
                    let diff: Vec<_> = img.symmetric_difference(&set).map(|p| p.to_string()).collect();
                    return fail(format!("n = {n}: {diff:?}"));
                }
            }
            Ok(())
        })],
        Suite::Theorem2 => {
            let perm_n = max_n.min(9);
            vec![
                check(name("motzkin-size"), move || {
                    let m = motzkin_table(max_n);
                    for n in 1..=max_n {
                        let got = lift(pop_image_with(n, &limits))?.len();
                        if BigUint::from(got) != m[n - 1] {
                            return fail(format!("n = {n}: {got} vs {}", m[n - 1]));
                        }
                    }
                    Ok(())
                }),
                check(name("q-polynomial"), move || {
                    for n in 0..max_n {
                        let poly = lift(pop_polynomial_with(n + 1, &limits))?;
                        if let Some(msg) = q_polynomial_mismatch(n, &poly) {
                            return fail(msg);
                        }
                    }
                    Ok(())
                }),
                check(name("ascents-match-up-covers"), move || {
                    for n in 1..=perm_n {
                        let img = lift(pop_image_perm(n, &limits))?;
                        let perm_poly = PopPolynomial::from_exponents(img.iter().map(Permutation::ascent_count));
                        if perm_poly != lift(pop_polynomial_with(n, &limits))? {
                            return fail(format!("n = {n}"));
                        }
                    }
                    Ok(())
                }),
                check(name("r-map-bijection"), move || {
                    for n in 0..perm_n {
                        check_r_map(n, limits)?;
                    }
                    Ok(())
                }),
            ]
        }
        Suite::Petersen => vec![check(name("descent-peak-counts"), move || {
            for n in 0..=max_n {
                let census = lift(descent_peak_census(n, &limits))?;
                for k in 0..=n / 2 + 1 {
                    let got = BigUint::from(census.get(&k).copied().unwrap_or(0));
                    let want = a055151(n as u64, k as u64);
                    if got != want {
                        return fail(format!("n = {n}, k = {k}: {got} vs {want}"));
                    }
                }
            }
            Ok(())
        })],
    }
}

/// `(NE)^n` and `E(NE)^(n-1)` for `n <= max_n`, plus `random` seeded paths
/// of length at most `max_ell`.
pub fn corpus(max_n: usize, max_ell: usize, random: usize, seed: u64) -> Vec<Arc<NuContext>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.push(Arc::new(NuContext::dyck(n).expect("n >= 1")));
        out.push(Arc::new(NuContext::east_dyck(n).expect("n >= 1")));
    }
    out.extend(random_contexts(random, max_ell, seed));
    out
}

pub fn random_contexts(count: usize, max_ell: usize, seed: u64) -> Vec<Arc<NuContext>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let ell = rng.gen_range(1..=max_ell.max(1));
            let steps = (0..ell)
                .map(|_| if rng.gen_bool(0.5) { Step::N } else { Step::E })
                .collect();
            Arc::new(NuContext::new(LatticePath::from_steps(steps).expect("nonempty")))
        })
        .collect()
}

/// Tam(ν) with its Hasse diagram built from the path cover relation only.
pub struct TamariOracle {
    pub ctx: Arc<NuContext>,
    pub paths: Vec<LatticePath>,
    pub index: HashMap<LatticePath, usize>,
    pub poset: FinitePoset,
}

impl TamariOracle {
    pub fn build(ctx: &Arc<NuContext>, limits: &Limits) -> Result<Self> {
        let paths = ctx.enumerate_with(limits)?;
        let index: HashMap<_, _> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let lower = paths
            .iter()
            .map(|p| ctx.covers_down(p).iter().map(|q| index[q]).collect())
            .collect();
        let poset = FinitePoset::from_lower_covers(lower)?;
        Ok(TamariOracle {
            ctx: Arc::clone(ctx),
            paths,
            index,
            poset,
        })
    }
}

fn check_bijection(ctx: &Arc<NuContext>, limits: Limits) -> std::result::Result<(), String> {
    let o = lift(TamariOracle::build(ctx, &limits))?;
    let vecs = o
        .paths
        .iter()
        .map(|p| BracketVector::from_path(ctx, p))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    let by_vec: HashMap<&[usize], usize> = vecs.iter().enumerate().map(|(i, v)| (v.entries(), i)).collect();
    let all: BTreeSet<_> = lift(enumerate_vectors_with(ctx, &limits))?.into_iter().collect();
    if by_vec.len() != vecs.len() || all != vecs.iter().cloned().collect() {
        return fail(format!("nu = {}: not a bijection", ctx.nu()));
    }
    for i in 0..vecs.len() {
        for j in 0..vecs.len() {
            if o.poset.leq(i, j) != lift(vecs[i].leq(&vecs[j]))? {
                return fail(format!("nu = {}: order differs at {} vs {}", ctx.nu(), o.paths[i], o.paths[j]));
            }
            if j > i {
                let m = lift(vecs[i].meet(&vecs[j]))?;
                let ok = by_vec.get(m.entries()).is_some_and(|&k| o.poset.is_meet(i, j, k));
                if !ok {
                    return fail(format!("nu = {}: meet of {} and {}", ctx.nu(), o.paths[i], o.paths[j]));
                }
            }
        }
    }
    if o.poset.minimum() != Some(o.index[ctx.nu()]) {
        return fail(format!("nu = {}: minimum is not nu", ctx.nu()));
    }
    Ok(())
}

fn check_covers_inverse(ctx: &Arc<NuContext>, limits: Limits) -> std::result::Result<(), String> {
    for mu in lift(ctx.enumerate_with(&limits))? {
        for up in ctx.covers_up(&mu) {
            if !ctx.covers_down(&up).contains(&mu) {
                return fail(format!("nu = {}: {mu} <. {up}", ctx.nu()));
            }
        }
        for down in ctx.covers_down(&mu) {
            if !ctx.covers_up(&down).contains(&mu) {
                return fail(format!("nu = {}: {down} <. {mu}", ctx.nu()));
            }
        }
    }
    Ok(())
}

fn check_pop_oracle(ctx: &Arc<NuContext>, limits: Limits) -> std::result::Result<(), String> {
    let o = lift(TamariOracle::build(ctx, &limits))?;
    for (i, mu) in o.paths.iter().enumerate() {
        let v = lift(BracketVector::from_path(ctx, mu))?;
        let formula = lift(pop_vector(&v))?.to_path();
        let generic = lift(pop_generic(ctx, mu))?;
        let mut set = vec![i];
        set.extend_from_slice(o.poset.lower_covers(i));
        let hasse = o.poset.meet_all(&set).map(|k| &o.paths[k]);
        if formula != generic || hasse != Some(&formula) {
            return fail(format!("nu = {}, mu = {mu}", ctx.nu()));
        }
    }
    Ok(())
}

fn check_down_candidates(ctx: &Arc<NuContext>, limits: Limits) -> std::result::Result<(), String> {
    for mu in lift(ctx.enumerate_with(&limits))? {
        let v = lift(BracketVector::from_path(ctx, &mu))?;
        let cands: BTreeSet<_> = lift(down_cover_candidates(&v))?.into_iter().collect();
        let actual: BTreeSet<_> = ctx
            .covers_down(&mu)
            .iter()
            .map(|p| BracketVector::from_path(ctx, p))
            .collect::<Result<_>>()
            .map_err(|e| e.to_string())?;
        if cands != actual {
            return fail(format!("nu = {}, mu = {mu}", ctx.nu()));
        }
    }
    Ok(())
}

fn check_entry_lower_bound(ctx: &Arc<NuContext>, limits: Limits) -> std::result::Result<(), String> {
    let f = ctx.fixed_positions();
    for v in lift(enumerate_vectors_with(ctx, &limits))? {
        let popped = lift(pop_vector(&v))?;
        for k in 0..f.len() {
            let start = if k == 0 { 0 } else { f[k - 1] + 1 };
            for i in start..f[k] {
                if popped.entries()[i] < v.entries()[i + 1] {
                    return fail(format!("nu = {}, b = {v}, i = {i}", ctx.nu()));
                }
            }
        }
    }
    Ok(())
}

fn east_dyck_vectors(n: usize, limits: Limits) -> std::result::Result<Vec<BracketVector>, String> {
    let ctx = Arc::new(lift(NuContext::east_dyck(n))?);
    lift(enumerate_vectors_with(&ctx, &limits))
}

/// For an irreducible `v` in Vec(E(NE)^(n-1)), tests whether
/// `time(v) <= t` iff `time(v#) <= t` and `t >= (n - 1) - x_r + 1`, where
/// `x_r` is the size of the last irreducible component of `v#`. Returns the
/// first `t` that disagrees.
pub fn hash_criterion_violation(v: &BracketVector, max_t: usize) -> std::result::Result<Option<usize>, String> {
    let top = v.ctx().n_nu();
    let h = lift(hash_map(v))?;
    let last = lift(decompose_irreducible(&h))?
        .last()
        .and_then(|c| c.ctx().east_dyck_size())
        .ok_or("empty decomposition")?;
    let tv = lift(sortability_time(v))?;
    let th = lift(sortability_time(&h))?;
    let threshold = (top + 1).saturating_sub(last);
    Ok((0..=max_t).find(|&t| (tv <= t) != (th <= t && t >= threshold)))
}

/// Checks `1 + H_t = 1/(1 - G_t)`, `G_t = z((1 + H̃_t) G_t + 1)` and the
/// recurrence/rational agreement of `H_t` for `t <= max_t`.
pub fn series_identity_violation(max_t: usize, order: usize) -> Option<String> {
    let one = IntSeries::one(order);
    let z = IntSeries::monomial(order, 1, 1);
    for t in 1..=max_t {
        let h = h_series(t, order);
        let g = g_series(t, order);
        if h != h_series_rational(t, order) {
            return Some(format!("H_{t}: recurrence vs rational"));
        }
        let lhs = one.add(&h).ok()?;
        let rhs = g.reciprocal_one_minus().ok()?;
        if lhs != rhs {
            return Some(format!("1 + H_{t} != 1/(1 - G_{t})"));
        }
        let species = z.mul(&one.add(&h_tilde(t, order)).ok()?.mul(&g).ok()?.add(&one).ok()?).ok()?;
        if g != species {
            return Some(format!("species equation fails for t = {t}"));
        }
    }
    None
}

/// Compares `Pop(Tam_{n+1}; q)` with `Σ_k A055151(n, k) q^{n-k}`.
pub fn q_polynomial_mismatch(n: usize, poly: &PopPolynomial) -> Option<String> {
    let mut want = BTreeMap::new();
    for k in 0..=n / 2 {
        let c = u64::try_from(a055151(n as u64, k as u64)).ok()?;
        want.insert(n - k, c);
    }
    (want != poly.coeffs).then(|| format!("n = {n}: got {:?}, want {want:?}", poly.coeffs))
}

fn check_cover_transport(n: usize, limits: Limits) -> std::result::Result<(), String> {
    let perms = lift(enumerate_av312_with(n, &limits))?;
    let map = lift(tamari_perm_bijection_with(n, &limits))?;
    let sub = lift(FinitePoset::from_order(perms.len(), |a, b| perms[a].weak_leq(&perms[b])))?;
    for (i, p) in perms.iter().enumerate() {
        let v = &map[p];
        let path = v.to_path();
        let want: BTreeSet<LatticePath> = v.ctx().covers_down(&path).into_iter().collect();
        let got: BTreeSet<LatticePath> = sub
            .lower_covers(i)
            .iter()
            .map(|&j| map[&perms[j]].to_path())
            .collect();
        if want != got {
            return fail(format!("covers of {p}"));
        }
    }
    Ok(())
}

/// Random swap orders give the same π↓ as the leftmost rule, for every
/// permutation of size up to `max_n` and at least `min_trials` runs per size.
pub fn check_confluence(max_n: usize, min_trials: usize, seed: u64, limits: Limits) -> std::result::Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 1..=max_n {
        let all = lift(enumerate_permutations(n, &limits))?;
        let reps = min_trials.div_ceil(all.len());
        for p in &all {
            let want = p.pi_down();
            for _ in 0..reps {
                let got = p.pi_down_random(&mut rng);
                if got != want {
                    return fail(format!("{p}: {got} vs {want}"));
                }
            }
        }
    }
    Ok(())
}

fn check_r_map(n: usize, limits: Limits) -> std::result::Result<(), String> {
    let image = lift(pop_image_perm(n + 1, &limits))?;
    let target: BTreeSet<Permutation> = lift(enumerate_permutations(n + 1, &limits))?
        .into_iter()
        .filter(|q| {
            let s = q.stats();
            q.avoids(Pattern::P231) && s.descent_positions.len() == s.peak_positions.len()
        })
        .collect();
    let mapped: BTreeSet<Permutation> = image.iter().map(Permutation::reverse_complement).collect();
    if mapped != target {
        return fail(format!("n = {n}: r(image) differs from descent = peak set"));
    }
    for p in &image {
        if p.ascent_count() + p.reverse_complement().descent_count() != n {
            return fail(format!("n = {n}: ascents of {p}"));
        }
    }
    Ok(())
}
