use std::collections::BTreeSet;
use std::path::Path;

use num_traits::{Signed, ToPrimitive, Zero};
use qdescent::cohom::{h1_group, sha1_bound};
use qdescent::descent::{fixed_table, LocalDatum, ModuleFamily, RankInputs, FakeBound};
use qdescent::exactalg::{ddf_factor_degrees, factor_int};
use qdescent::permgrp::{search_subgroup, GroupFile, SearchParams};
use qdescent::quartic::{
    bitangent_poly_fp, bitangents_fq, discriminant_i27, frobenius_on_bitangents, l_polynomial, reduction_flags_with,
    syzygetic_structure, torsion_bound, TernaryQuartic,
};
use qdescent::thetacomb::{match_structures, sigma_count_formula, CanonicalTheta};
use qdescent::{Error, Int};
use serde_json::{json, Value};

use crate::input;
use crate::{CliResult, Context, Failure, ModuleName, SearchArgs, TableArgs};

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn i27_of(g: &TernaryQuartic, path: &Path) -> CliResult<Int> {
    discriminant_i27(g).ctx(json!({ "curve": path }))
}

fn small_prime(p: &Int, context: &Value) -> CliResult<u64> {
    p.to_u64().ok_or_else(|| Failure::Module {
        error: Error::TooLarge { what: "prime factor", size: u128::MAX, limit: u64::MAX as u128 },
        context: context.clone(),
    })
}

pub fn disc(path: &Path) -> CliResult<Value> {
    let g = input::curve(path)?;
    let i27 = i27_of(&g, path)?;
    let context = json!({ "curve": path });
    if i27.is_zero() {
        return Err(Failure::Module { error: Error::Singular, context });
    }
    let factors = factor_int(&i27).ctx(context.clone())?;
    let mut rows = Vec::new();
    let mut s = BTreeSet::from([2u64]);
    for (p, e) in &factors {
        let p = small_prime(p, &context)?;
        let flags = reduction_flags_with(&g, &i27, p).ctx(json!({ "curve": path, "p": p }))?;
        if !flags.good && !flags.mult1_node {
            s.insert(p);
        }
        rows.push(json!({ "p": p, "exponent": e, "flags": flags }));
    }
    Ok(json!({
        "I27": i27.to_string(),
        "sign": if i27.is_negative() { -1 } else { 1 },
        "factors": factors.iter().map(|(p, e)| json!([small_prime(p, &context).unwrap_or(0), e])).collect::<Vec<_>>(),
        "primes": rows,
        "S": s,
    }))
}

pub fn bitangents(path: &Path, p: u64) -> CliResult<Value> {
    let g = input::curve(path)?;
    let set = bitangents_fq(&g, p).ctx(json!({ "curve": path, "p": p }))?;
    let pattern = set.ddf_pattern().ctx(json!({ "p": p }))?;
    let lines: Vec<Value> = set
        .lines
        .iter()
        .map(|b| json!({ "line": b.line, "contact": b.contact, "doubleContact": b.is_double_contact() }))
        .collect();
    Ok(json!({
        "p": p,
        "splittingDegree": set.r,
        "fieldModulus": set.field.modulus(),
        "contactDegree": set.contact_field.r(),
        "contactModulus": set.contact_field.modulus(),
        "projection": set.projection,
        "ddfPattern": pattern,
        "bitangentPolynomial": set.h.coeffs().iter().map(|c| c.value()).collect::<Vec<_>>(),
        "count": set.lines.len(),
        "lines": lines,
    }))
}

pub fn incidence(path: &Path, p: u64) -> CliResult<Value> {
    let g = input::curve(path)?;
    let context = json!({ "curve": path, "p": p });
    let set = bitangents_fq(&g, p).ctx(context.clone())?;
    let inc = syzygetic_structure(&set.lines).ctx(context.clone())?;
    let canon = CanonicalTheta::build(3).ctx(context.clone())?;
    let matching = match_structures(&inc, &canon);
    let frob = frobenius_on_bitangents(&set.lines).ctx(context.clone())?;
    let pattern = set.ddf_pattern().ctx(context)?;
    let n = inc.n;
    let mut per_pair = BTreeSet::new();
    let mut counts = vec![0usize; n * n];
    for q in &inc.sigma {
        for a in 0..4 {
            for b in a + 1..4 {
                counts[q[a] * n + q[b]] += 1;
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            per_pair.insert(counts[a * n + b]);
        }
    }
    Ok(json!({
        "p": p,
        "splittingDegree": set.r,
        "sigmaCount": inc.sigma.len(),
        "quadruplesPerPair": per_pair,
        "sigma": inc.sigma,
        "canonicalMatching": matching,
        "frobenius": frob,
        "frobeniusCycleType": frob.cycle_type(),
        "ddfPattern": pattern,
        "frobeniusMatchesDdf": frob.cycle_type() == pattern,
    }))
}

fn subset_sums(parts: &[usize]) -> BTreeSet<usize> {
    parts.iter().fold(BTreeSet::from([0]), |acc, &k| acc.iter().flat_map(|&s| [s, s + k]).collect())
}

pub fn galois(path: &Path, primes: &[u64]) -> CliResult<Value> {
    let g = input::curve(path)?;
    let mut rows = Vec::new();
    let mut sums: Option<BTreeSet<usize>> = None;
    for &p in primes {
        match bitangent_poly_fp(&g, p) {
            Ok((h, projection)) => {
                let degrees = ddf_factor_degrees(&h).ctx(json!({ "p": p }))?;
                let mut pattern: Vec<usize> = degrees.iter().flat_map(|(&d, &c)| std::iter::repeat(d).take(c)).collect();
                pattern.reverse();
                let s = subset_sums(&pattern);
                sums = Some(match sums {
                    None => s,
                    Some(prev) => prev.intersection(&s).copied().collect(),
                });
                rows.push(json!({ "p": p, "projection": projection, "cycleType": pattern }));
            }
            Err(e @ (Error::BadReduction(_) | Error::NotPrime(_))) => {
                rows.push(json!({ "p": p, "skipped": e.code() }));
            }
            Err(e) => return Err(Failure::Module { error: e, context: json!({ "curve": path, "p": p }) }),
        }
    }
    let sums = sums.unwrap_or_else(|| (0..=28).collect());
    let min_orbit = sums.iter().copied().find(|&s| s > 0);
    Ok(json!({
        "primes": rows,
        "possibleOrbitSizes": sums,
        "minimalOrbitSize": min_orbit,
        "transitive": sums.len() == 2,
    }))
}

pub fn canonical(genus: u32) -> CliResult<Value> {
    let context = json!({ "genus": genus });
    let canon = CanonicalTheta::build(genus).ctx(context.clone())?;
    let group = canon.group().ctx(context.clone())?;
    let stab = group.point_stabilizer(0).ctx(context)?;
    Ok(json!({
        "genus": genus,
        "size": canon.size(),
        "offsets": canon.offsets,
        "sigmaCount": canon.sigma.len(),
        "sigmaFormula": sigma_count_formula(genus),
        "groupOrder": group.order().to_string(),
        "pointStabilizerOrder": stab.order().to_string(),
        "generators": canon.generators,
        "sigma": canon.sigma,
    }))
}

pub fn cohom(path: &Path, module: ModuleName) -> CliResult<Value> {
    let g = input::group(path)?;
    let context = json!({ "group": path, "module": format!("{module:?}") });
    let canon = CanonicalTheta::build(3).ctx(context.clone())?;
    let fam = ModuleFamily::new(&canon, &g).ctx(context.clone())?;
    let m = match module {
        ModuleName::R => &fam.r,
        ModuleName::Rdual => &fam.r_dual,
        ModuleName::J2 => &fam.j2,
        ModuleName::Edual => &fam.e_dual,
    };
    let h1 = h1_group(&g, m).ctx(context.clone())?;
    let sha = sha1_bound(&g, m).ctx(context)?;
    Ok(json!({
        "module": format!("{module:?}"),
        "moduleDim": m.dim(),
        "groupOrder": g.order().to_string(),
        "h1Dim": h1.dim,
        "sha1Dim": sha.dim,
        "h1": h1,
        "sha1": sha,
    }))
}

pub fn count(path: &Path, p: u64) -> CliResult<Value> {
    let g = input::curve(path)?;
    let l = l_polynomial(&g, p).ctx(json!({ "curve": path, "p": p }))?;
    Ok(json!({
        "p": p,
        "counts": l.counts,
        "lPolynomial": l.coeffs.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "JPoints": l.jacobian_order().to_string(),
        "functionalEquation": l.functional_equation_holds(),
        "weilBounds": l.weil_bounds_hold(),
    }))
}

pub fn torsion(path: &Path, primes: &[u64]) -> CliResult<Value> {
    let g = input::curve(path)?;
    let context = json!({ "curve": path, "primes": primes });
    let mut rows = Vec::new();
    for &p in primes {
        let l = l_polynomial(&g, p).ctx(json!({ "curve": path, "p": p }))?;
        rows.push(json!({ "p": p, "JPoints": l.jacobian_order().to_string() }));
    }
    let bound = torsion_bound(&g, primes).ctx(context)?;
    Ok(json!({ "primes": rows, "torsionBound": bound.to_string() }))
}

pub fn table(args: &TableArgs) -> CliResult<Value> {
    let g = input::curve(&args.curve)?;
    let i27 = i27_of(&g, &args.curve)?;
    let context = json!({ "curve": args.curve, "global": args.global });
    let canon = CanonicalTheta::build(3).ctx(context.clone())?;
    let global = input::group(&args.global)?;
    let fam = ModuleFamily::new(&canon, &global).ctx(context.clone())?;
    let mut data = Vec::new();
    for spec in &args.local {
        let spec = input::local_spec(spec)?;
        let d = input::group(&spec.group)?;
        let good = spec.p % 2 == 1 && !i27.is_zero() && !(&i27 % Int::from(spec.p)).is_zero();
        let mut datum = LocalDatum::new(spec.place.clone(), spec.p, d.generators().to_vec());
        if let Some(dim) = spec.im_c_dim {
            datum = datum.with_im_c(dim, "command line");
        }
        if good {
            datum = datum.good_unramified();
        }
        data.push(datum);
    }
    let fake = match (args.fake, args.fake_from_local) {
        (Some(d), _) => FakeBound::Supplied(d),
        (None, true) => FakeBound::FromLocalImages,
        (None, false) => {
            return Err(Failure::Malformed { message: "one of --fake or --fake-from-local is required".into(), context });
        }
    };
    let inputs = RankInputs {
        fake,
        kappa_kernel_dim: args.kappa_kernel,
        torsion_correction: args.torsion_correction,
        rank_multiple_of: args.rank_multiple,
        circ_asserted: args.assume_circ,
    };
    let table = fixed_table(&fam, &data).and_then(|t| t.complete(inputs)).ctx(context)?;
    let mut out = to_json(&table);
    out["I27"] = json!(i27.to_string());
    Ok(out)
}

pub fn search(args: &SearchArgs) -> CliResult<Value> {
    let context = json!({ "order": args.order, "transitive": args.transitive, "seed": args.seed, "cap": args.cap });
    let ambient = match &args.within {
        Some(path) => input::group(path)?,
        None => CanonicalTheta::build(3).and_then(|c| c.group()).ctx(context.clone())?,
    };
    let params = SearchParams { target_order: args.order, require_transitive: args.transitive, seed: args.seed, cap: args.cap };
    match search_subgroup(&ambient, &params).ctx(context.clone())? {
        Some(h) => Ok(to_json(&GroupFile::from_group(&h))),
        None => Err(Failure::Module {
            error: Error::Missing(format!("no subgroup of order {} found in {} samples", args.order, args.cap)),
            context,
        }),
    }
}
