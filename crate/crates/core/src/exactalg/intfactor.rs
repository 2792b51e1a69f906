use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Prime factorization of `|n|` in increasing prime order.
///
/// Small primes are removed by trial division; the remaining cofactor is
/// split with Brent's variant of Pollard's rho, seeded deterministically.
pub fn factor_int(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    factor_int_seeded(n, 0)
}

pub fn factor_int_seeded(n: &BigInt, seed: u64) -> Result<Vec<(BigInt, u32)>> {
    if n.is_zero() {
        return Err(Error::FactorZero);
    }
    let mut m = n.abs();
    let mut primes: Vec<BigInt> = Vec::new();
    for p in 2u32..10_000 {
        let bp = BigInt::from(p);
        if &bp * &bp > m {
            break;
        }
        while (&m % &bp).is_zero() {
            primes.push(bp.clone());
            m /= &bp;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stack = vec![m];
    while let Some(x) = stack.pop() {
        if x.is_one() {
            continue;
        }
        if is_probable_prime(&x) {
            primes.push(x);
            continue;
        }
        let d = rho(&x, &mut rng);
        stack.push(&x / &d);
        stack.push(d);
    }
    primes.sort();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    Ok(out)
}

/// Miller–Rabin with fixed bases; deterministic below 3.3e24.
pub fn is_probable_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if *n < two {
        return false;
    }
    const BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    for b in BASES {
        let b = BigInt::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let nm1 = n - 1u32;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'outer: for b in BASES {
        let mut x = BigInt::from(b).modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn rho(n: &BigInt, rng: &mut ChaCha8Rng) -> BigInt {
    if n.is_even() {
        return BigInt::from(2);
    }
    let bound = n.to_u64().unwrap_or(u64::MAX).max(3);
    loop {
        let c = BigInt::from(rng.gen_range(1..bound));
        let mut y = BigInt::from(rng.gen_range(0..bound));
        let step = |v: &BigInt| (v * v + &c) % n;
        let (mut g, mut r, mut q) = (BigInt::one(), 1u64, BigInt::one());
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = step(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..128.min(r - k) {
                    y = step(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = step(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fac(n: i64) -> Vec<(i64, u32)> {
        factor_int(&BigInt::from(n)).unwrap().into_iter().map(|(p, e)| (p.to_i64().unwrap(), e)).collect()
    }

    #[test]
    fn known_factorizations() {
        assert_eq!(fac(4727), vec![(29, 1), (163, 1)]);
        assert_eq!(fac(14227), vec![(41, 1), (347, 1)]);
        assert_eq!(fac(4826809), vec![(13, 6)]);
        assert_eq!(fac(-256 * 25 * 1361 * 97103), vec![(2, 8), (5, 2), (1361, 1), (97103, 1)]);
        assert_eq!(fac(1), vec![]);
        assert_eq!(factor_int(&BigInt::from(0)), Err(Error::FactorZero));
    }

    #[test]
    fn rho_splits_large_semiprime() {
        let p = BigInt::from(1_000_000_007u64);
        let q = BigInt::from(998_244_353u64);
        let n = &p * &q * &p;
        assert_eq!(factor_int(&n).unwrap(), vec![(q, 1), (p, 2)]);
    }

    proptest! {
        #[test]
        fn product_reconstructs(n in 1i64..2_000_000_000, seed in 0u64..4) {
            let f = factor_int_seeded(&BigInt::from(n), seed).unwrap();
            let prod = f.iter().fold(BigInt::one(), |a, (p, e)| a * p.pow(*e));
            prop_assert_eq!(prod, BigInt::from(n));
            for (p, _) in &f {
                prop_assert!(is_probable_prime(p));
            }
        }
    }
}
