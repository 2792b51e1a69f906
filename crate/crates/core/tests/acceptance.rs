//! One PASS/FAIL line per acceptance criterion, each checked at exact
//! equality. The process exits with failure if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::*;
use num_bigint::BigInt;
use qdescent::cohom::{h1_cyclic, h1_group, sha1_bound};
use qdescent::descent::{fixed_table, kappa, rank_bound, ChainDims, LocalDatum, ModuleFamily, RankInputs};
use qdescent::f2mod::{F2Mat, GModule};
use qdescent::permgrp::{search_subgroup, Perm, PermGroup, SearchParams};
use qdescent::quartic::{
    bitangents_fq, count_points, discriminant_i27, examples, frobenius_on_bitangents, l_polynomial, r14_and_c,
    syzygetic_structure, torsion_bound, TernaryQuartic,
};
use qdescent::thetacomb::{match_structures, sigma_count_formula, CanonicalTheta};
use qdescent::Int;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Check {
    ensure(got == want, || format!("{what}: got {got:?}, expected {want:?}"))
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Four-element subsets of odd forms whose offsets sum to zero, by exhaustion.
fn brute_force_sigma(offsets: &[u32]) -> u64 {
    let n = offsets.len();
    let mut count = 0;
    for a in 0..n {
        for b in a + 1..n {
            let ab = offsets[a] ^ offsets[b];
            for c in b + 1..n {
                let abc = ab ^ offsets[c];
                count += offsets[c + 1..].iter().filter(|&&d| d == abc).count() as u64;
            }
        }
    }
    count
}

fn canonical_structure() -> Check {
    let c3 = CanonicalTheta::build(3).map_err(err)?;
    let g = c3.group().map_err(err)?;
    expect_eq("genus 3 size", c3.size(), 28)?;
    expect_eq("genus 3 quadruples", c3.sigma.len(), 315)?;
    expect_eq("genus 3 group order", g.order(), BigInt::from(1_451_520))?;
    expect_eq("genus 3 point stabilizer", g.point_stabilizer(0).map_err(err)?.order(), BigInt::from(51_840))?;
    let c2 = CanonicalTheta::build(2).map_err(err)?;
    expect_eq("genus 2 quadruples", c2.sigma.len(), 0)?;
    expect_eq("genus 2 brute force", brute_force_sigma(&c2.offsets), 0)?;
    let c4 = CanonicalTheta::build(4).map_err(err)?;
    expect_eq("genus 4 size", c4.size(), 120)?;
    expect_eq("genus 4 quadruples", c4.sigma.len() as u64, 32130)?;
    expect_eq("genus 4 formula", sigma_count_formula(4), 32130)?;
    expect_eq("genus 4 brute force", brute_force_sigma(&c4.offsets), 32130)
}

fn module_chain() -> Check {
    let canon = CanonicalTheta::build(3).map_err(err)?;
    let fam = ModuleFamily::new(&canon, &canon.group().map_err(err)?).map_err(err)?;
    expect_eq("chain dims", fam.chain_dims(), ChainDims { ones: 1, jtilde: 7, r: 21, e: 27 })?;
    fam.check_exact().map_err(err)?;
    expect_eq("dim J[2]", fam.j2.dim(), 6)?;
    expect_eq("dim E dual", fam.e_dual.dim(), 27)?;
    expect_eq("dim R dual", fam.r_dual.dim(), 21)
}

fn discriminants() -> Check {
    let minus = -(BigInt::from(2).pow(8) * BigInt::from(25) * BigInt::from(1361) * BigInt::from(97103));
    let expected = [BigInt::from(4727), BigInt::from(14227), BigInt::from(13).pow(6), minus];
    for (k, (g, want)) in examples::all().iter().zip(expected).enumerate() {
        expect_eq(&format!("I27 of curve {}", k + 1), discriminant_i27(g).map_err(err)?, want)?;
    }
    Ok(())
}

fn jac(g: &TernaryQuartic, p: u64) -> Result<Int, String> {
    Ok(l_polynomial(g, p).map_err(err)?.jacobian_order())
}

fn point_counts() -> Check {
    let [c1, c2, c3, _] = examples::all();
    expect_eq("#J(F3), curve 1", jac(&c1, 3)?, Int::from(51))?;
    expect_eq("#J(F2), curve 2", jac(&c2, 2)?, Int::from(71))?;
    expect_eq("#J(F3), curve 2", jac(&c2, 3)?, Int::from(85))?;
    expect_eq("#X(F3), curve 2", count_points(&c2, 3, 1).map_err(err)?, 7)?;
    expect_eq("#J(F3), curve 3", jac(&c3, 3)?, Int::from(91))?;
    expect_eq("#J(F7), curve 3", jac(&c3, 7)?, Int::from(659))?;
    expect_eq("torsion bound, curve 1", torsion_bound(&c1, &[3]).map_err(err)?, Int::from(51))?;
    expect_eq("torsion bound, curve 2", torsion_bound(&c2, &[2, 3]).map_err(err)?, Int::from(1))?;
    expect_eq("torsion bound, curve 3", torsion_bound(&c3, &[3, 7]).map_err(err)?, Int::from(1))
}

fn bitangent_pipeline() -> Check {
    let set = bitangents_fq(&examples::curve1(), 5).map_err(err)?;
    expect_eq("bitangents", set.lines.len(), 28)?;
    let inc = syzygetic_structure(&set.lines).map_err(err)?;
    expect_eq("syzygetic quadruples", inc.sigma.len(), 315)?;
    let mut per_pair = vec![0usize; 28 * 28];
    for q in &inc.sigma {
        for a in 0..4 {
            for b in a + 1..4 {
                per_pair[q[a].min(q[b]) * 28 + q[a].max(q[b])] += 1;
            }
        }
    }
    for a in 0..28 {
        for b in a + 1..28 {
            expect_eq(&format!("quadruples through {a},{b}"), per_pair[a * 28 + b], 5)?;
        }
    }
    let canon = CanonicalTheta::build(3).map_err(err)?;
    ensure(match_structures(&inc, &canon).is_some(), || "no matching with the canonical model".into())?;
    let frob = frobenius_on_bitangents(&set.lines).map_err(err)?;
    expect_eq("Frobenius cycle type against DDF", frob.cycle_type(), set.ddf_pattern().map_err(err)?)
}

fn find(g: &PermGroup, order: u64) -> Result<PermGroup, String> {
    let params = SearchParams { target_order: order, require_transitive: true, seed: 0, cap: 1_000_000 };
    let h = search_subgroup(g, &params).map_err(err)?.ok_or(format!("no transitive subgroup of order {order}"))?;
    ensure(h.is_subgroup_of(g).map_err(err)?, || "search returned a non-subgroup".into())?;
    Ok(h)
}

fn fixed_point_tables() -> Check {
    let canon = CanonicalTheta::build(3).map_err(err)?;
    let g = canon.even_form_stabilizer(0).map_err(err)?;
    expect_eq("stabilizer order", g.order(), BigInt::from(40320))?;
    let fam = ModuleFamily::new(&canon, &g).map_err(err)?;
    let d2 = find(&g, 56)?;
    let datum = LocalDatum::new("2", 2, d2.generators().to_vec()).with_im_c(3, "local images");
    let table = fixed_table(&fam, &[datum]).map_err(err)?;
    expect_eq("global row, curve 1", table.global.fixed.triple(), (0, 0, 1))?;
    expect_eq("local row at 2, curve 1", table.places[0].fixed.triple(), (0, 0, 1))?;
    let sp6 = canon.group().map_err(err)?;
    let full = fixed_table(&ModuleFamily::new(&canon, &sp6).map_err(err)?, &[]).map_err(err)?;
    expect_eq("global row, full group", full.global.fixed.triple(), (0, 0, 0))
}

fn rank_arithmetic() -> Check {
    let canon = CanonicalTheta::build(3).map_err(err)?;

    let g = canon.even_form_stabilizer(0).map_err(err)?;
    let fam = ModuleFamily::new(&canon, &g).map_err(err)?;
    let d2 = find(&g, 56)?;
    let datum = LocalDatum::new("2", 2, d2.generators().to_vec()).with_im_c(3, "local images");
    let table = fixed_table(&fam, &[datum]).map_err(err)?;
    expect_eq("dim W_2, curve 1", table.places[0].w, 1)?;
    expect_eq("kernel of kappa, curve 1", kappa(&table).map_err(err)?.kernel_dim, 0)?;
    let bound = table.complete(RankInputs::supplied(0)).map_err(err)?.bound.ok_or("no bound computed")?;
    expect_eq("Selmer dim, curve 1", bound.selmer_dim, 0)?;
    expect_eq("rank bound, curve 1", bound.rank, 0)?;

    let sp6 = canon.group().map_err(err)?;
    let full = fixed_table(&ModuleFamily::new(&canon, &sp6).map_err(err)?, &[]).map_err(err)?;
    expect_eq("rank bound, curve 2", rank_bound(&full, RankInputs::supplied(1)).map_err(err)?.rank, 1)?;

    let g504 = find(&sp6, 504)?;
    let fam = ModuleFamily::new(&canon, &g504).map_err(err)?;
    let d2 = find(&g504, 56)?;
    for (im_c, selmer) in [(3, 5), (1, 3)] {
        let datum = LocalDatum::new("2", 2, d2.generators().to_vec()).with_im_c(im_c, "supplied");
        let table = fixed_table(&fam, &[datum]).map_err(err)?;
        let bound = rank_bound(&table, RankInputs::from_local_images()).map_err(err)?;
        expect_eq(&format!("Selmer dim, curve 3, im C of size 2^{im_c}"), bound.selmer_dim, selmer)?;
        if im_c == 1 {
            expect_eq("dim W_2, curve 3", table.places[0].w, 0)?;
        }
    }
    Ok(())
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Perm {
    let mut images: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        images.swap(i, rng.gen_range(0..=i));
    }
    Perm::from_images(images).expect("shuffle is a permutation")
}

fn cohomology_engine() -> Check {
    let gls: Vec<Vec<F2Mat>> = (1..=3).map(gl).collect();
    let mut checked = 0usize;
    for (name, g) in small_groups() {
        let elems = elements(&g);
        for d in 1..=3 {
            let cands: Vec<Vec<F2Mat>> = g
                .generators()
                .iter()
                .map(|s| gls[d - 1].iter().filter(|m| s.order() % mat_order(m) == 0).cloned().collect())
                .collect();
            for mats in tuples(&cands) {
                let Some(rho) = extend(&g, &elems, &mats) else { continue };
                let m = GModule::from_matrices(d, mats.clone()).map_err(err)?;
                let engine = h1_group(&g, &m).map_err(err)?.dim;
                expect_eq(&format!("h1 for {name}, d = {d}"), engine, oracle_h1(&elems, &rho))?;
                checked += 1;
            }
        }
    }
    ensure(checked > 1000, || format!("only {checked} modules compared"))?;
    for n in 1..=60u64 {
        let (_, g) = cyclic(n as usize);
        for sigma in gls.iter().flatten().filter(|m| n % mat_order(m) == 0) {
            let m = GModule::from_matrices(sigma.nrows(), vec![sigma.clone()]).map_err(err)?;
            expect_eq(&format!("C{n} closed form"), h1_group(&g, &m).map_err(err)?.dim, h1_cyclic(sigma, n).map_err(err)?.dim)?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for case in 0..300 {
        let n = rng.gen_range(1..=40u64);
        let d = rng.gen_range(1..=3);
        let mats = gl_with_order_dividing(d, n);
        let sigma = mats[rng.gen_range(0..mats.len())].clone();
        let m = GModule::from_matrices(d, vec![sigma]).map_err(err)?;
        expect_eq(&format!("sha1 for cyclic case {case}"), sha1_bound(&cyclic(n as usize).1, &m).map_err(err)?.dim, 0)?;
    }
    for case in 0..300 {
        let g = PermGroup::new(6, vec![random_perm(&mut rng, 6), random_perm(&mut rng, 6)]).map_err(err)?;
        let d = rng.gen_range(1..=4);
        let m = GModule::from_matrices(d, vec![F2Mat::identity(d); 2]).map_err(err)?;
        expect_eq(&format!("sha1 for trivial action case {case}"), sha1_bound(&g, &m).map_err(err)?.dim, 0)?;
    }
    Ok(())
}

fn norm_identity() -> Check {
    for (name, g, p) in [("curve 1", examples::curve1(), 5), ("curve 4", examples::curve4(), 7)] {
        let set = bitangents_fq(&g, p).map_err(err)?;
        let ni = r14_and_c(&set.form, &set.lines).map_err(|e| format!("{name}: {e}"))?;
        ensure(ni.c_in_prime_field, || format!("{name}: c outside the prime field"))?;
        if name == "curve 4" {
            expect_eq("curve 4: c is a square", ni.c_is_square, Some(false))?;
            expect_eq("curve 4: -c is a square", ni.minus_c_is_square, Some(true))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("canonical structure", canonical_structure),
        ("submodule chain and exactness", module_chain),
        ("discriminants", discriminants),
        ("point counts and torsion bounds", point_counts),
        ("bitangent and syzygetic pipeline", bitangent_pipeline),
        ("fixed-point tables", fixed_point_tables),
        ("W, kappa and rank arithmetic", rank_arithmetic),
        ("cohomology engine", cohomology_engine),
        ("norm identity", norm_identity),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("PASS {}: {name} ({secs:.1} s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name} ({secs:.1} s): {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
