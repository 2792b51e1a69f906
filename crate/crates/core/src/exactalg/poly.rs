use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ring::{Field, Ring};

/// Dense univariate polynomial with coefficients in `R`, lowest degree first.
///
/// The vector never has a trailing zero; the zero polynomial has no
/// coefficients. A zero prototype of `R` is kept so that runtime-modulus
/// coefficient rings can still build constants.
#[derive(Clone)]
pub struct Poly<R> {
    coeffs: Vec<R>,
    zero: R,
}

impl<R: Ring> PartialEq for Poly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c:?})t^{i}"))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>, zero: R) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs, zero }
    }

    /// Builds a polynomial from coefficients; the list must be nonempty so a
    /// zero prototype can be taken from it.
    pub fn from_coeffs(coeffs: Vec<R>) -> Self {
        let zero = coeffs.first().expect("nonempty coefficient list").zero_like();
        Poly::new(coeffs, zero)
    }

    pub fn zero(zero: R) -> Self {
        Poly { coeffs: Vec::new(), zero }
    }

    pub fn constant(c: R) -> Self {
        let zero = c.zero_like();
        Poly::new(vec![c], zero)
    }

    pub fn monomial(c: R, k: usize) -> Self {
        let zero = c.zero_like();
        let mut v = vec![zero.clone(); k + 1];
        v[k] = c;
        Poly::new(v, zero)
    }

    /// The polynomial `t`, built from a sample coefficient.
    pub fn t(sample: &R) -> Self {
        Poly::monomial(sample.one_like(), 1)
    }

    pub fn zero_coeff(&self) -> &R {
        &self.zero
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial reported as `-1`.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn lc(&self) -> R {
        self.coeffs.last().cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = self.zero.clone();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.from_i64_like(i as i64) * c.clone())
            .collect();
        Poly::new(v, self.zero.clone())
    }

    pub fn scale(&self, s: &R) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(), self.zero.clone())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.zero.clone(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly::new(v, self.zero.clone())
    }

    pub fn map<S: Ring>(&self, zero: S, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect(), zero)
    }

    /// Evaluates `self` at a polynomial argument.
    pub fn compose(&self, arg: &Poly<R>) -> Poly<R> {
        let mut acc = Poly::zero(self.zero.clone());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * arg) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Division by a divisor whose leading coefficient divides exactly at
    /// every step; returns `None` when the division is not exact.
    pub fn exact_div_poly(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let dd = d.coeffs.len() - 1;
        let lc = d.lc();
        let mut rem = self.coeffs.clone();
        if rem.len() < d.coeffs.len() {
            return rem.iter().all(|c| c.is_zero()).then(|| Poly::zero(self.zero.clone()));
        }
        let mut q = vec![self.zero.clone(); rem.len() - dd];
        for k in (0..q.len()).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let c = top.exact_div(&lc)?;
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
            }
            q[k] = c;
        }
        rem.iter().all(|c| c.is_zero()).then(|| Poly::new(q, self.zero.clone()))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Poly::constant(self.zero.one_like());
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        acc
    }
}

impl<F: Field> Poly<F> {
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.coeffs.len() - 1;
        let inv = d.lc().inv().expect("field element invertible");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(self.zero.clone()), self.clone());
        }
        let mut q = vec![self.zero.clone(); rem.len() - dd];
        for k in (0..q.len()).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let c = top * inv.clone();
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
            }
            q[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(q, self.zero.clone()), Poly::new(rem, self.zero.clone()))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Self {
        match self.lc().inv() {
            Some(i) => self.scale(&i),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        if self.deg() <= 0 {
            return !self.is_zero();
        }
        self.gcd(&self.derivative()).deg() == 0
    }

    pub fn mulmod(&self, other: &Self, m: &Self) -> Self {
        (self * other).rem(m)
    }

    pub fn powmod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Poly::constant(self.zero.one_like()).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mulmod(&acc, m);
            if e.bit(i) {
                acc = acc.mulmod(&base, m);
            }
        }
        acc
    }
}

impl Poly<BigInt> {
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        Poly::new(self.coeffs.iter().map(|x| x / &c).collect(), BigInt::zero())
    }

    pub fn to_rational(&self) -> Poly<BigRational> {
        self.map(BigRational::zero(), |c| BigRational::from_integer(c.clone()))
    }

    /// Clears denominators and returns the primitive integer multiple.
    pub fn from_rational(p: &Poly<BigRational>) -> Self {
        let den = p.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let v: Vec<BigInt> = p
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        Poly::new(v, BigInt::zero()).primitive()
    }
}

impl<'a, R: Ring> Add<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn add(self, o: &Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect();
        Poly::new(v, self.zero.clone())
    }
}

impl<'a, R: Ring> Sub<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn sub(self, o: &Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect();
        Poly::new(v, self.zero.clone())
    }
}

impl<'a, R: Ring> Mul<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;
    fn mul(self, o: &Poly<R>) -> Poly<R> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.zero.clone());
        }
        let mut v = vec![self.zero.clone(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(v, self.zero.clone())
    }
}

impl<R: Ring> Add for Poly<R> {
    type Output = Poly<R>;
    fn add(self, o: Poly<R>) -> Poly<R> {
        &self + &o
    }
}

impl<R: Ring> Sub for Poly<R> {
    type Output = Poly<R>;
    fn sub(self, o: Poly<R>) -> Poly<R> {
        &self - &o
    }
}

impl<R: Ring> Mul for Poly<R> {
    type Output = Poly<R>;
    fn mul(self, o: Poly<R>) -> Poly<R> {
        &self * &o
    }
}

impl<R: Ring> Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        let zero = self.zero.clone();
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect(), zero)
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero_like(&self) -> Self {
        Poly::zero(self.zero.clone())
    }
    fn one_like(&self) -> Self {
        Poly::constant(self.zero.one_like())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Poly::new(vec![self.zero.from_i64_like(n)], self.zero.clone())
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        self.exact_div_poly(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Fp;
    use proptest::prelude::*;

    fn zp(v: &[i64]) -> Poly<BigInt> {
        Poly::new(v.iter().map(|&c| BigInt::from(c)).collect(), BigInt::zero())
    }

    #[test]
    fn arithmetic_and_trimming() {
        let a = zp(&[1, 1]);
        let b = zp(&[-1, 1]);
        assert_eq!(&a * &b, zp(&[-1, 0, 1]));
        assert_eq!((&a - &a).degree(), None);
        assert_eq!(zp(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(zp(&[1, 0, 3]).derivative(), zp(&[0, 6]));
        assert_eq!(zp(&[-1, 0, 1]).exact_div_poly(&a), Some(b.clone()));
        assert_eq!(zp(&[0, 0, 1]).exact_div_poly(&zp(&[0, 2])), None);
        assert_eq!(zp(&[1, 1]).compose(&zp(&[0, 0, 1])), zp(&[1, 0, 1]));
    }

    #[test]
    fn gcd_and_squarefree_mod_p() {
        let f = |v: &[i64]| Poly::new(v.iter().map(|&c| Fp::from_i64(c, 7)).collect(), Fp::new(0, 7));
        let g = f(&[-1, 0, 1]).gcd(&f(&[1, 2, 1]));
        assert_eq!(g, f(&[1, 1]));
        assert!(f(&[-1, 0, 1]).is_squarefree());
        assert!(!f(&[1, 2, 1]).is_squarefree());
        let x = Poly::t(&Fp::new(1, 7));
        let m = f(&[1, 0, 0, 1]);
        let x7 = x.powmod(&BigUint::from(7u32), &m);
        assert_eq!(x7, x.pow(7).rem(&m));
    }

    proptest! {
        #[test]
        fn ring_axioms_zpoly(a in proptest::collection::vec(-9i64..9, 0..5),
                             b in proptest::collection::vec(-9i64..9, 0..5),
                             c in proptest::collection::vec(-9i64..9, 0..5)) {
            let (a, b, c) = (zp(&a), zp(&b), zp(&c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!((&a * &b).exact_div_poly(&b), Some(a.clone()));
            }
        }

        #[test]
        fn division_identity_mod_p(a in proptest::collection::vec(0u64..11, 0..8),
                                   b in proptest::collection::vec(0u64..11, 1..5)) {
            let z = Fp::new(0, 11);
            let a = Poly::new(a.into_iter().map(|c| Fp::new(c, 11)).collect(), z);
            let b = Poly::new(b.into_iter().map(|c| Fp::new(c, 11)).collect(), z);
            prop_assume!(!b.is_zero());
            let (q, r) = a.divrem(&b);
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.deg() < b.deg());
        }
    }
}
