use num_bigint::BigInt;
use qdescent::descent::{fixed_table, kappa, local_size, rank_bound, LocalDatum, ModuleFamily, RankInputs};
use qdescent::permgrp::{search_subgroup, PermGroup, SearchParams};
use qdescent::thetacomb::CanonicalTheta;

fn find(g: &PermGroup, order: u64) -> PermGroup {
    let params = SearchParams { target_order: order, require_transitive: true, seed: 0, cap: 1_000_000 };
    let h = search_subgroup(g, &params).unwrap().expect("subgroup found within the sampling budget");
    assert_eq!(h.order(), BigInt::from(order));
    assert!(h.is_transitive());
    assert!(h.is_subgroup_of(g).unwrap());
    h
}

#[test]
fn quartic_with_index_36_group() {
    let canon = CanonicalTheta::build(3).unwrap();
    let g = canon.even_form_stabilizer(0).unwrap();
    assert_eq!(g.order(), BigInt::from(40320));
    let fam = ModuleFamily::new(&canon, &g).unwrap();
    let d2 = find(&g, 56);
    let datum = LocalDatum::new("2", 2, d2.generators().to_vec()).with_im_c(3, "images of local points");
    assert_eq!(local_size(&fam, &datum).unwrap(), 3);
    let table = fixed_table(&fam, &[datum]).unwrap();
    assert_eq!(table.global.fixed.triple(), (0, 0, 1));
    assert_eq!(table.global.k_dim(), 1);
    let row = &table.places[0];
    assert_eq!(row.fixed.triple(), (0, 0, 1));
    assert_eq!(row.im_gamma, 3);
    assert_eq!(row.w, 1);
    let k = kappa(&table).unwrap();
    assert_eq!((k.kernel_dim, k.cokernel_dim), (0, 0));
    let table = table.complete(RankInputs::supplied(0)).unwrap();
    let bound = table.bound.unwrap();
    assert_eq!((bound.selmer_dim, bound.rank), (0, 0));
}

#[test]
fn quartic_with_full_group() {
    let canon = CanonicalTheta::build(3).unwrap();
    let g = canon.group().unwrap();
    let fam = ModuleFamily::new(&canon, &g).unwrap();
    let table = fixed_table(&fam, &[]).unwrap();
    assert_eq!(table.global.fixed.triple(), (0, 0, 0));
    let bound = rank_bound(&table, RankInputs::supplied(1)).unwrap();
    assert_eq!(bound.k_dim, 0);
    assert_eq!((bound.selmer_dim, bound.rank), (1, 1));
}

#[test]
fn quartic_with_order_504_group() {
    let canon = CanonicalTheta::build(3).unwrap();
    let sp6 = canon.group().unwrap();
    let g = find(&sp6, 504);
    let fam = ModuleFamily::new(&canon, &g).unwrap();
    let d2 = find(&g, 56);
    for (im_c, selmer, w) in [(3, 5, 2), (1, 3, 0)] {
        let datum = LocalDatum::new("2", 2, d2.generators().to_vec()).with_im_c(im_c, "supplied");
        let table = fixed_table(&fam, &[datum]).unwrap();
        assert_eq!(table.global.fixed.triple(), (0, 0, 2));
        assert_eq!(table.places[0].fixed.triple(), (0, 0, 2));
        assert_eq!(table.places[0].w, w);
        let bound = rank_bound(&table, RankInputs::from_local_images()).unwrap();
        assert_eq!(bound.fake_selmer_dim, im_c);
        assert_eq!(bound.selmer_dim, selmer);
        let mut inputs = RankInputs::from_local_images();
        inputs.rank_multiple_of = Some(3);
        assert_eq!(rank_bound(&table, inputs).unwrap().rank, 3);
    }
}
