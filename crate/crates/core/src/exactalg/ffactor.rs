use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::fq::FiniteField;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Distinct-degree factorization of a squarefree polynomial over a finite
/// field: maps each degree `d` to the number of irreducible factors of
/// degree `d`.
pub fn ddf_factor_degrees<F: FiniteField>(f: &Poly<F>) -> Result<BTreeMap<usize, usize>> {
    if f.is_zero() {
        return Err(Error::FactorZero);
    }
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let mut out = BTreeMap::new();
    let mut rest = f.monic();
    let q = f.lc().field_order();
    let x = Poly::t(&f.lc());
    let mut h = x.clone();
    let mut d = 0usize;
    while rest.deg() >= 2 * (d as isize + 1) {
        d += 1;
        h = h.powmod(&q, &rest);
        let g = rest.gcd(&(&h - &x));
        if g.deg() > 0 {
            out.insert(d, g.deg() as usize / d);
            rest = rest.divrem(&g).0;
            h = h.rem(&rest);
        }
    }
    if rest.deg() > 0 {
        *out.entry(rest.deg() as usize).or_insert(0) += 1;
    }
    Ok(out)
}

/// All roots of `f` in its coefficient field, repeated according to
/// multiplicity and sorted by [`FiniteField::sort_key`].
pub fn fq_roots<F: FiniteField>(f: &Poly<F>, seed: u64) -> Result<Vec<F>> {
    if f.is_zero() {
        return Err(Error::Invalid("roots of the zero polynomial".into()));
    }
    let f = f.monic();
    if f.deg() == 0 {
        return Ok(Vec::new());
    }
    let sample = f.lc();
    let x = Poly::t(&sample);
    let q = sample.field_order();
    let split = f.gcd(&(&x.powmod(&q, &f) - &x));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut distinct = Vec::new();
    split_linear(&split, &q, &mut rng, &mut distinct);
    distinct.sort_by_key(|a| a.sort_key());
    let mut out = Vec::new();
    for a in distinct {
        let lin = Poly::new(vec![-a.clone(), a.one_like()], a.zero_like());
        let mut g = f.clone();
        loop {
            let (quo, rem) = g.divrem(&lin);
            if !rem.is_zero() {
                break;
            }
            out.push(a.clone());
            g = quo;
        }
    }
    Ok(out)
}

fn split_linear<F: FiniteField>(g: &Poly<F>, q: &BigUint, rng: &mut ChaCha8Rng, out: &mut Vec<F>) {
    match g.deg() {
        d if d <= 0 => {}
        1 => {
            let m = g.monic();
            out.push(-m.coeff(0));
        }
        _ => loop {
            let d = trial_split(g, q, rng);
            if d.deg() > 0 && d.deg() < g.deg() {
                let other = g.divrem(&d).0;
                split_linear(&d, q, rng, out);
                split_linear(&other, q, rng, out);
                return;
            }
        },
    }
}

fn trial_split<F: FiniteField>(g: &Poly<F>, q: &BigUint, rng: &mut ChaCha8Rng) -> Poly<F> {
    let sample = g.lc();
    let a = sample.random_like(rng);
    let b = sample.random_like(rng);
    let lin = Poly::new(vec![b, a], sample.zero_like());
    if sample.characteristic() == 2 {
        let mut term = lin.rem(g);
        let mut trace = term.clone();
        for _ in 1..sample.extension_degree() {
            term = term.mulmod(&term, g);
            trace = &trace + &term;
        }
        g.gcd(&trace)
    } else {
        let e = (q - BigUint::one()) / 2u32;
        let h = &lin.powmod(&e, g) - &Poly::constant(sample.one_like());
        g.gcd(&h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Embedding, FqCtx, FqElem, Fp};
    use proptest::prelude::*;

    fn fpoly(v: &[i64], p: u64) -> Poly<Fp> {
        Poly::new(v.iter().map(|&c| Fp::from_i64(c, p)).collect(), Fp::new(0, p))
    }

    #[test]
    fn ddf_small_cases() {
        assert_eq!(ddf_factor_degrees(&fpoly(&[1, 0, 1], 3)).unwrap(), BTreeMap::from([(2, 1)]));
        assert_eq!(ddf_factor_degrees(&fpoly(&[-1, 0, 1], 3)).unwrap(), BTreeMap::from([(1, 2)]));
        assert_eq!(ddf_factor_degrees(&fpoly(&[1, 2, 1], 3)), Err(Error::NotSquarefree));
        assert_eq!(ddf_factor_degrees(&fpoly(&[], 3)), Err(Error::FactorZero));
    }

    #[test]
    fn roots_small_cases() {
        let r: Vec<u64> = fq_roots(&fpoly(&[-1, 0, 1], 5), 0).unwrap().iter().map(|x| x.value()).collect();
        assert_eq!(r, vec![1, 4]);
        let r: Vec<u64> = fq_roots(&fpoly(&[0, -1, 0, 1], 3), 0).unwrap().iter().map(|x| x.value()).collect();
        assert_eq!(r, vec![0, 1, 2]);
        let r: Vec<u64> = fq_roots(&fpoly(&[1, 2, 1], 7), 3).unwrap().iter().map(|x| x.value()).collect();
        assert_eq!(r, vec![6, 6]);
        let k = FqCtx::new(2, 4).unwrap();
        let all: Vec<FqElem> = k.elements().collect();
        let t = Poly::t(&k.one());
        let f = &t.pow(16) - &t;
        assert_eq!(fq_roots(&f, 9).unwrap().len(), all.len());
    }

    fn lcm(a: usize, b: usize) -> usize {
        let (mut x, mut y) = (a, b);
        while y != 0 {
            (x, y) = (y, x % y);
        }
        a / x * b
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn ddf_matches_root_orbits(coeffs in proptest::collection::vec(0i64..5, 2..8), seed in 0u64..100) {
            let p = 5;
            let mut v = coeffs.clone();
            v.push(1);
            let f = fpoly(&v, p);
            prop_assume!(f.is_squarefree());
            let ddf = ddf_factor_degrees(&f).unwrap();
            let total: usize = ddf.iter().map(|(d, c)| d * c).sum();
            prop_assert_eq!(total, f.deg() as usize);
            let l = ddf.keys().fold(1, |a, &d| lcm(a, d));
            let k = FqCtx::new(p, l as u32).unwrap();
            let fk = f.map(k.zero(), |c| k.from_fp(*c));
            let roots = fq_roots(&fk, seed).unwrap();
            prop_assert_eq!(roots.len(), f.deg() as usize);
            let mut seen = vec![false; roots.len()];
            let mut orbit_sizes = BTreeMap::new();
            for i in 0..roots.len() {
                if seen[i] { continue; }
                let mut size = 0;
                let mut y = roots[i].clone();
                loop {
                    let j = roots.iter().position(|z| *z == y).unwrap();
                    if seen[j] { break; }
                    seen[j] = true;
                    size += 1;
                    y = y.frobenius();
                }
                *orbit_sizes.entry(size).or_insert(0usize) += 1;
            }
            prop_assert_eq!(orbit_sizes, ddf);
        }
    }

    #[test]
    fn roots_in_extension_via_embedding() {
        let small = FqCtx::new(3, 1).unwrap();
        let big = FqCtx::new(3, 2).unwrap();
        let e = Embedding::new(&small, &big).unwrap();
        assert_eq!(e.map(&small.from_u64(2)), big.from_u64(2));
        let f = Poly::new(vec![big.one(), big.zero(), big.one()], big.zero());
        assert_eq!(fq_roots(&f, 0).unwrap().len(), 2);
    }
}
