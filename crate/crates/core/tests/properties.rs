use std::sync::Arc;

use proptest::prelude::*;
use tamaripop::bracket::enumerate_vectors;
use tamaripop::pop::{compose, decompose_irreducible, pop_generic, pop_vector, sortability_time};
use tamaripop::series::{catalan, h_series};
use tamaripop::{BracketVector, LatticePath, NuContext, Pattern, Permutation, Step};

fn nu_strategy(max_len: usize) -> impl Strategy<Value = Arc<NuContext>> {
    prop::collection::vec(prop::bool::ANY, 1..=max_len).prop_map(|bits| {
        let steps = bits.into_iter().map(|b| if b { Step::N } else { Step::E }).collect();
        Arc::new(NuContext::new(LatticePath::from_steps(steps).unwrap()))
    })
}

/// A context together with one of its bracket vectors.
fn element_strategy(max_len: usize) -> impl Strategy<Value = (Arc<NuContext>, BracketVector, BracketVector)> {
    nu_strategy(max_len).prop_flat_map(|ctx| {
        let vecs = enumerate_vectors(&ctx).unwrap();
        let n = vecs.len();
        (0..n, 0..n).prop_map(move |(i, j)| (Arc::clone(&ctx), vecs[i].clone(), vecs[j].clone()))
    })
}

fn perm_strategy(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|w| Permutation::new(w).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn vector_path_round_trip((ctx, v, _) in element_strategy(12)) {
        let path = v.to_path();
        prop_assert!(path.lies_weakly_above(&ctx).unwrap());
        prop_assert_eq!(BracketVector::from_path(&ctx, &path).unwrap(), v);
    }

    #[test]
    fn meet_is_a_lower_bound((_ctx, a, b) in element_strategy(12)) {
        let m = a.meet(&b).unwrap();
        prop_assert!(m.leq(&a).unwrap() && m.leq(&b).unwrap());
        prop_assert_eq!(&m, &b.meet(&a).unwrap());
        prop_assert_eq!(a.meet(&a).unwrap(), a.clone());
        prop_assert_eq!(a.leq(&b).unwrap(), m == a);
    }

    #[test]
    fn pop_moves_down_and_agrees_with_definition((ctx, v, _) in element_strategy(10)) {
        let p = pop_vector(&v).unwrap();
        prop_assert!(p.leq(&v).unwrap());
        prop_assert_eq!(p.is_bottom() || p != v, !v.is_bottom() || p.is_bottom());
        prop_assert_eq!(pop_generic(&ctx, &v.to_path()).unwrap(), p.to_path());
        let t = sortability_time(&v).unwrap();
        prop_assert_eq!(t == 0, v.is_bottom());
    }

    #[test]
    fn covers_are_mutually_inverse((ctx, v, _) in element_strategy(12)) {
        let mu = v.to_path();
        for up in ctx.covers_up(&mu) {
            prop_assert!(ctx.covers_down(&up).contains(&mu));
        }
        for down in ctx.covers_down(&mu) {
            prop_assert!(ctx.covers_up(&down).contains(&mu));
        }
    }

    #[test]
    fn decomposition_round_trips(n in 1usize..=7, seed in any::<prop::sample::Index>()) {
        let ctx = Arc::new(NuContext::east_dyck(n).unwrap());
        let vecs = enumerate_vectors(&ctx).unwrap();
        let v = seed.get(&vecs);
        let parts = decompose_irreducible(v).unwrap();
        prop_assert_eq!(&compose(&parts).unwrap(), v);
        let time = sortability_time(v).unwrap();
        let max_part = parts.iter().map(|c| sortability_time(c).unwrap()).max().unwrap_or(0);
        prop_assert_eq!(time, max_part);
    }

    #[test]
    fn pi_down_lands_in_av312_below_input(p in perm_strategy(9)) {
        let d = p.pi_down();
        prop_assert!(d.avoids(Pattern::P312));
        prop_assert!(d.weak_leq(&p));
        if p.avoids(Pattern::P312) {
            prop_assert_eq!(&d, &p);
        }
    }

    #[test]
    fn pop_stack_reverses_descending_runs(p in perm_strategy(10)) {
        let q = p.pop_stack();
        prop_assert!(q.weak_leq(&p));
        prop_assert_eq!(q.pop_stack() == q, q.is_identity() || q.descent_count() == 0);
        let stats = p.stats();
        prop_assert_eq!(stats.run_lengths.iter().sum::<usize>(), p.len());
        prop_assert_eq!(p.ascent_count() + p.descent_count() + 1, p.len());
    }

    #[test]
    fn reverse_complement_is_an_involution(p in perm_strategy(10)) {
        let r = p.reverse_complement();
        prop_assert_eq!(r.reverse_complement(), p.clone());
        prop_assert_eq!(r.avoids(Pattern::P231), p.avoids(Pattern::P312));
        prop_assert_eq!(r.descent_count(), p.descent_count());
    }
}

#[test]
fn short_paths_are_all_sortable_in_series() {
    for t in 1..=6 {
        let h = h_series(t, 12);
        for n in 1..=t {
            assert_eq!(h.coeff(n).to_biguint().unwrap(), catalan(n as u64), "t = {t}, n = {n}");
        }
    }
}
