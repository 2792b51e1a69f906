//! The cocycle engine against a direct linear-algebra computation over all
//! functions `G → M`, and vanishing of the locally trivial part in cases
//! where it must vanish.

mod common;

use common::*;
use proptest::prelude::*;
use qdescent::cohom::{h1_cyclic, h1_group, sha1_bound};
use qdescent::f2mod::{F2Mat, GModule};
use qdescent::permgrp::{Perm, PermGroup};

#[test]
fn engine_matches_all_functions_oracle_on_small_groups() {
    let gls: Vec<Vec<F2Mat>> = (1..=3).map(gl).collect();
    let groups = small_groups();
    let mut per_order = [0usize; 13];
    for (_, g) in &groups {
        per_order[g.order_u64().unwrap() as usize] += 1;
    }
    assert_eq!(per_order, [0, 1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5]);
    let mut checked = 0usize;
    for (name, g) in &groups {
        let elems = elements(g);
        for d in 1..=3 {
            let cands: Vec<Vec<F2Mat>> = g
                .generators()
                .iter()
                .map(|s| gls[d - 1].iter().filter(|m| s.order() % mat_order(m) == 0).cloned().collect())
                .collect();
            for mats in tuples(&cands) {
                let Some(rho) = extend(g, &elems, &mats) else { continue };
                let m = GModule::from_matrices(d, mats.clone()).unwrap();
                let engine = h1_group(g, &m).unwrap().dim;
                assert_eq!(engine, oracle_h1(&elems, &rho), "{name}, d = {d}, action {mats:?}");
                checked += 1;
            }
        }
    }
    assert!(checked > 1000, "only {checked} modules checked");
}

#[test]
fn engine_matches_cyclic_closed_form() {
    let gls: Vec<Vec<F2Mat>> = (1..=3).map(gl).collect();
    for n in 1..=60usize {
        let (_, g) = cyclic(n);
        for gl_d in &gls {
            for sigma in gl_d.iter().filter(|m| n as u64 % mat_order(m) == 0) {
                let m = GModule::from_matrices(sigma.nrows(), vec![sigma.clone()]).unwrap();
                assert_eq!(h1_group(&g, &m).unwrap().dim, h1_cyclic(sigma, n as u64).unwrap().dim, "C{n} acting by {sigma:?}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn locally_trivial_classes_vanish_for_cyclic_groups(n in 1usize..=40, d in 1usize..=3, pick in any::<prop::sample::Index>()) {
        let (_, g) = cyclic(n);
        let mats = gl_with_order_dividing(d, n as u64);
        let sigma = pick.get(&mats).clone();
        let m = GModule::from_matrices(d, vec![sigma]).unwrap();
        prop_assert_eq!(sha1_bound(&g, &m).unwrap().dim, 0);
    }

    #[test]
    fn locally_trivial_classes_vanish_for_trivial_action(
        a in prop::collection::vec(0usize..6, 6),
        b in prop::collection::vec(0usize..6, 6),
        d in 1usize..=4,
    ) {
        // Random permutations of {0..5} obtained by sorting random keys.
        let perm = |keys: &[usize]| {
            let mut idx: Vec<usize> = (0..6).collect();
            idx.sort_by_key(|&i| (keys[i], i));
            Perm::from_images(idx).unwrap()
        };
        let g = PermGroup::new(6, vec![perm(&a), perm(&b)]).unwrap();
        let m = GModule::from_matrices(d, vec![F2Mat::identity(d); 2]).unwrap();
        prop_assert_eq!(sha1_bound(&g, &m).unwrap().dim, 0);
    }
}
