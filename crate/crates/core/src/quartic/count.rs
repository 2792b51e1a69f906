//! Point counts over small finite fields and the L-polynomial of the curve.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{discriminant_i27, valuation, TernaryQuartic};
use crate::error::{Error, Result};
use crate::exactalg::{is_prime_u64, FqCtx, FqElem, Ring};
use crate::Int;

/// Largest field size enumerated by [`count_points`].
pub const COUNT_FIELD_CAP: u64 = 1 << 20;

fn check_good(g: &TernaryQuartic, p: u64) -> Result<()> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let i27 = discriminant_i27(g)?;
    if valuation(&i27, &BigInt::from(p)) > 0 {
        return Err(Error::BadReduction(p));
    }
    Ok(())
}

/// `#X(F_{p^r})` for a quartic with good reduction at `p`.
pub fn count_points(g: &TernaryQuartic, p: u64, r: u32) -> Result<u64> {
    check_good(g, p)?;
    let q = p.checked_pow(r).filter(|&q| q <= COUNT_FIELD_CAP).ok_or(Error::TooLarge {
        what: "field for point counting",
        size: (p as u128).saturating_pow(r),
        limit: COUNT_FIELD_CAP as u128,
    })?;
    let ctx = FqCtx::new(p, r)?;
    let f = g.over_fq(&ctx);
    let elems: Vec<FqElem> = ctx.elements().collect();
    debug_assert_eq!(elems.len() as u64, q);
    // Coefficients of g(x, y, 1) as a polynomial in y, for fixed x.
    let affine: u64 = elems
        .par_iter()
        .map(|x| {
            let cy: Vec<FqElem> = (0..=4u32)
                .map(|j| {
                    (0..=4 - j).fold(ctx.zero(), |acc, i| {
                        let k = 4 - i - j;
                        acc + f.coeff(&[i, j, k]) * x.pow_u64(i as u64)
                    })
                })
                .collect();
            elems.iter().filter(|y| cy.iter().rev().fold(ctx.zero(), |acc, c| acc * (*y).clone() + c.clone()).is_zero()).count() as u64
        })
        .sum();
    let line_at_infinity = elems.iter().filter(|x| f.eval(&[(*x).clone(), ctx.one(), ctx.zero()]).is_zero()).count() as u64;
    let corner = u64::from(f.eval(&[ctx.one(), ctx.zero(), ctx.zero()]).is_zero());
    Ok(affine + line_at_infinity + corner)
}

/// The numerator `P(T)` of the zeta function of a genus-3 curve over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LPolynomial {
    pub p: u64,
    /// `#X(F_{p^r})` for `r = 1, 2, 3`.
    pub counts: [u64; 3],
    /// Coefficients of `P(T)`, constant term first.
    #[serde(with = "crate::exactalg::serde_int::vec")]
    pub coeffs: Vec<Int>,
}

impl LPolynomial {
    /// Determines `P(T)` from three point counts using the functional
    /// equation `P(T) = p^3 T^6 P(1/(pT))`.
    pub fn from_counts(p: u64, counts: [u64; 3]) -> Result<Self> {
        let pb = BigInt::from(p);
        let s: Vec<Int> = (1..=3u32).map(|k| pb.pow(k) + 1 - BigInt::from(counts[k as usize - 1])).collect();
        let c1 = -s[0].clone();
        let exact = |n: Int, d: i64| -> Result<Int> {
            let (q, r) = n.div_rem(&BigInt::from(d));
            if Zero::is_zero(&r) {
                Ok(q)
            } else {
                Err(Error::Inconsistent("point counts do not come from a genus-3 curve".into()))
            }
        };
        let c2 = exact(-(s[1].clone() + &c1 * &s[0]), 2)?;
        let c3 = exact(-(s[2].clone() + &c1 * &s[1] + &c2 * &s[0]), 3)?;
        let coeffs = vec![BigInt::one(), c1.clone(), c2.clone(), c3, &pb * &c2, &pb * &pb * &c1, pb.pow(3)];
        Ok(LPolynomial { p, counts, coeffs })
    }

    pub fn eval(&self, t: &Int) -> Int {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// `#J(F_p) = P(1)`.
    pub fn jacobian_order(&self) -> Int {
        self.eval(&BigInt::one())
    }

    /// Checks `P(T) = p^3 T^6 P(1/(pT))` coefficientwise.
    pub fn functional_equation_holds(&self) -> bool {
        let pb = BigInt::from(self.p);
        (0..=6usize).all(|i| {
            // coefficient of T^(6-i) equals p^(3-i) * a_i, read with integer powers.
            let lhs = &self.coeffs[6 - i];
            if i <= 3 {
                *lhs == pb.pow((3 - i) as u32) * &self.coeffs[i]
            } else {
                lhs * pb.pow((i - 3) as u32) == self.coeffs[i]
            }
        })
    }

    /// `|#X(F_{p^r}) - (p^r + 1)| ≤ 6 p^{r/2}` for the three stored counts.
    pub fn weil_bounds_hold(&self) -> bool {
        let pb = BigInt::from(self.p);
        self.counts.iter().enumerate().all(|(i, &n)| {
            let q = pb.pow(i as u32 + 1);
            let dev: Int = Signed::abs(&(BigInt::from(n) - &q - 1));
            &dev * &dev <= BigInt::from(36) * q
        })
    }
}

pub fn l_polynomial(g: &TernaryQuartic, p: u64) -> Result<LPolynomial> {
    let counts = [count_points(g, p, 1)?, count_points(g, p, 2)?, count_points(g, p, 3)?];
    LPolynomial::from_counts(p, counts)
}

fn odd_part(n: &Int) -> Int {
    let mut n = n.clone();
    while n.is_even() && !Zero::is_zero(&n) {
        n /= 2;
    }
    n
}

/// Bound on `#J(Q)_tors` from reductions: the full group order at odd good
/// primes and its odd part at `p = 2`.
pub fn torsion_bound(g: &TernaryQuartic, primes: &[u64]) -> Result<Int> {
    let mut full: Option<Int> = None;
    let mut odd: Option<Int> = None;
    for &p in primes {
        let n = l_polynomial(g, p)?.jacobian_order();
        if p == 2 {
            let o = odd_part(&n);
            odd = Some(odd.map_or(o.clone(), |a| a.gcd(&o)));
        } else {
            full = Some(full.map_or(n.clone(), |a| a.gcd(&n)));
        }
    }
    let full = full.ok_or_else(|| Error::Invalid("at least one odd prime is needed to bound the 2-part".into()))?;
    Ok(match odd {
        None => full,
        Some(o) => {
            let two_part = &full / odd_part(&full);
            two_part * odd_part(&full).gcd(&o)
        }
    })
}
