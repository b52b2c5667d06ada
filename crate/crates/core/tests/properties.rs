use std::collections::BTreeSet;
use std::path::PathBuf;

use proptest::prelude::*;

use piblock::algebra::primes::factorize;
use piblock::blocks::{block_of, defect_group, p_blocks, pi_blocks};
use piblock::catalog::load_corpus;
use piblock::chartab::cached_table;
use piblock::perm::{coset_quotient, semidirect_product, Group, Perm, DEFAULT_CAP};
use piblock::run::{run, RunConfig};
use piblock::structure::{hall_subgroup, is_pi_separable, o_pi, pi_part, PrimeSet};

fn random_group(degree: usize, a: Vec<u32>, b: Vec<u32>) -> Group {
    let to_perm = |keys: Vec<u32>| {
        let mut idx: Vec<u32> = (0..degree as u32).collect();
        idx.sort_by_key(|&i| keys[i as usize]);
        Perm::from_images(idx).unwrap()
    };
    Group::generate(degree, vec![to_perm(a), to_perm(b)], DEFAULT_CAP).unwrap()
}

fn arb_group() -> impl Strategy<Value = Group> {
    (3usize..=6).prop_flat_map(|n| {
        (
            Just(n),
            proptest::collection::vec(any::<u32>(), n),
            proptest::collection::vec(any::<u32>(), n),
        )
            .prop_map(|(n, a, b)| random_group(n, a, b))
    })
}

/// Normal subgroups as the unions of classes closed under multiplication.
fn normal_subgroups(g: &Group) -> Vec<Group> {
    let cd = g.classes();
    let k = cd.classes.len();
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for mask in 0u32..(1 << (k - 1)) {
        let set: Vec<usize> = std::iter::once(0)
            .chain((1..k).filter(|&i| mask >> (i - 1) & 1 == 1))
            .collect();
        let els: Vec<Perm> = set
            .iter()
            .flat_map(|&c| cd.members[c].iter().map(|&e| g.element(e as usize).clone()))
            .collect();
        if !g.order().is_multiple_of(els.len()) {
            continue;
        }
        if let Ok(h) = Group::from_elements(g.degree(), els) {
            if seen.insert(h.fingerprint()) {
                out.push(h);
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn class_sizes_times_centralizers(g in arb_group()) {
        for c in &g.classes().classes {
            let cent = g.centralizer(&c.representative).unwrap();
            prop_assert_eq!(c.size * cent.order(), g.order());
        }
    }

    #[test]
    fn quotient_by_trivial_and_trivial_action(g in arb_group()) {
        let q = coset_quotient(&g, &Group::trivial(g.degree())).unwrap();
        prop_assert_eq!(q.group.order(), g.order());
        prop_assert_eq!(q.group.class_count(), g.class_count());
        let sd = semidirect_product(&g, &[], DEFAULT_CAP).unwrap();
        prop_assert_eq!(sd.group.class_count(), g.class_count());
    }

    #[test]
    fn o_pi_against_normal_subgroups(g in arb_group()) {
        prop_assume!(g.class_count() <= 12);
        let normals = normal_subgroups(&g);
        for (p, _) in factorize(g.order() as u64) {
            let pi = PrimeSet::singleton(p).unwrap();
            let o = o_pi(&g, &pi).unwrap();
            let largest = normals
                .iter()
                .filter(|n| pi.is_pi_number(n.order() as u64))
                .map(Group::order)
                .max()
                .unwrap();
            prop_assert_eq!(o.order(), largest);
            prop_assert!(o.is_normal_in(&g));
        }
    }

    #[test]
    fn pi_parts_multiply_out(n in 1u64..100_000, mask in 0u8..16) {
        let primes: Vec<u64> = [2, 3, 5, 7].iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
        let pi = PrimeSet::new(primes).unwrap();
        let complement = pi.complement(n);
        prop_assert_eq!(pi_part(n, &pi) * pi_part(n, &complement), n);
    }

    #[test]
    fn hall_subgroups_of_random_groups(g in arb_group(), seed in any::<u64>()) {
        for pi in PrimeSet::of(g.order() as u64).subsets() {
            if !is_pi_separable(&g, &pi).unwrap() {
                continue;
            }
            let h = hall_subgroup(&g, &pi, seed).unwrap();
            prop_assert_eq!(h.order() as u64, pi_part(g.order() as u64, &pi));
            let x = g.element(seed as usize % g.order());
            let conj: Vec<Perm> = h.generators().iter().map(|s| x.conjugate(s)).collect();
            prop_assert_eq!(Group::generate(g.degree(), conj, DEFAULT_CAP).unwrap().order(), h.order());
        }
    }
}

fn corpus_groups(max_order: usize) -> Vec<(String, std::sync::Arc<Group>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let cat = load_corpus(&dir, DEFAULT_CAP).unwrap();
    cat.names()
        .into_iter()
        .map(|n| {
            let g = cat.build(&n).unwrap().group.clone();
            (n, g)
        })
        .filter(|(_, g)| g.order() <= max_order)
        .collect()
}

#[test]
fn block_invariants_on_corpus() {
    for (name, g) in corpus_groups(2000) {
        let t = cached_table(&g, 0).unwrap();
        let order = g.order() as u64;
        for (p, _) in factorize(order) {
            let ps = PrimeSet::singleton(p).unwrap();
            let blocks = p_blocks(&t, p, 0).unwrap();
            // the principal block holds the trivial character
            let principal = block_of(&blocks, 0);
            assert!(principal.contains(&0));
            // defect zero: alone in the block iff χ(1)_p = |G|_p
            for chi in 0..t.len() {
                let alone = block_of(&blocks, chi).len() == 1;
                assert_eq!(alone, pi_part(t.degree(chi), &ps) == pi_part(order, &ps), "{name} p={p} χ{chi}");
            }
        }
        for pi in PrimeSet::of(order).subsets().into_iter().filter(|s| !s.is_empty()) {
            let blocks = pi_blocks(&t, &pi, 0).unwrap();
            // the finest common coarsening of the p-blocks for p ∈ π
            let per_p: Vec<_> = pi.primes().iter().map(|&p| p_blocks(&t, p, 0).unwrap()).collect();
            for b in &blocks {
                for pb in &per_p {
                    for &chi in b {
                        assert!(block_of(pb, chi).iter().all(|x| b.contains(x)), "{name} {pi}");
                    }
                }
                // no proper non-empty subset of b is closed under all p-block relations
                let mut reach = BTreeSet::from([b[0]]);
                let mut stack = vec![b[0]];
                while let Some(c) = stack.pop() {
                    for pb in &per_p {
                        for &x in block_of(pb, c) {
                            if reach.insert(x) {
                                stack.push(x);
                            }
                        }
                    }
                }
                assert_eq!(reach.len(), b.len(), "{name} {pi}");
            }
            if is_pi_separable(&g, &pi).unwrap() {
                for b in &blocks {
                    let d = defect_group(&g, &pi, b, 0).unwrap().order() as u64;
                    assert_eq!(pi_part(order, &pi) % d, 0, "{name} {pi}");
                }
            }
        }
    }
}

#[test]
fn second_orthogonality_at_identity() {
    for (name, g) in corpus_groups(1000) {
        let t = cached_table(&g, 0).unwrap();
        for class in 1..t.len() {
            let mut sum = piblock::algebra::Cyclotomic::zero(1);
            for chi in 0..t.len() {
                let term = t.value(chi, class).scale(&num_bigint::BigInt::from(t.degree(chi)));
                sum = &sum + &term;
            }
            assert!(sum.is_zero(), "{name} class {class}");
        }
    }
}

#[test]
fn reports_are_reproducible() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let cat = load_corpus(&dir, DEFAULT_CAP).unwrap();
    let config = RunConfig {
        max_order: 200,
        ..RunConfig::default()
    };
    let a = serde_json::to_string(&run(&cat, &config).unwrap()).unwrap();
    let b = serde_json::to_string(&run(&cat, &config).unwrap()).unwrap();
    assert_eq!(a, b);
}
