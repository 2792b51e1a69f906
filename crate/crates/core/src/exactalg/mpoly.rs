use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::ring::{Field, Ring};
use crate::error::{Error, Result};

/// Exponent vector ordered degree-lexicographically, earlier variables
/// dominating (`x > y > z`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `d` in `n` variables, largest first.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if n == 1 {
            prefix.push(d);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in (0..=d).rev() {
            prefix.push(a);
            rec(n - 1, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, d, &mut Vec::new(), &mut out);
    }
    out
}

/// Sparse multivariate polynomial with no stored zero coefficients.
#[derive(Clone)]
pub struct MPoly<R> {
    nvars: usize,
    terms: BTreeMap<Monomial, R>,
    zero: R,
}

impl<R: Ring> PartialEq for MPoly<R> {
    fn eq(&self, o: &Self) -> bool {
        self.nvars == o.nvars && self.terms == o.terms
    }
}

impl<R: Ring> fmt::Debug for MPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().rev().map(|(m, c)| format!("({c:?}){:?}", m.0)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<R: Ring> MPoly<R> {
    pub fn zero(nvars: usize, zero: R) -> Self {
        MPoly { nvars, terms: BTreeMap::new(), zero }
    }

    pub fn from_terms(nvars: usize, zero: R, terms: impl IntoIterator<Item = (Vec<u32>, R)>) -> Self {
        let mut p = MPoly::zero(nvars, zero);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn constant(nvars: usize, c: R) -> Self {
        let zero = c.zero_like();
        MPoly::from_terms(nvars, zero, [(vec![0; nvars], c)])
    }

    pub fn var(nvars: usize, i: usize, sample: &R) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly::from_terms(nvars, sample.zero_like(), [(e, sample.one_like())])
    }

    pub fn add_term(&mut self, m: Monomial, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn zero_coeff(&self) -> &R {
        &self.zero
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &R)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> R {
        self.terms.get(&Monomial(e.to_vec())).cloned().unwrap_or_else(|| self.zero.clone())
    }

    pub fn leading(&self) -> Option<(&Monomial, &R)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn require_homogeneous(&self, d: u32) -> Result<()> {
        if self.is_homogeneous(d) && !self.is_zero() {
            Ok(())
        } else {
            Err(Error::NotHomogeneous { expected: d })
        }
    }

    pub fn eval(&self, pt: &[R]) -> R {
        let mut acc = self.zero.clone();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in pt.iter().zip(&m.0) {
                if e > 0 {
                    t = t * x.pow_u64(e as u64);
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut out = MPoly::zero(self.nvars, self.zero.clone());
        for (m, c) in &self.terms {
            if m.0[i] > 0 {
                let mut e = m.0.clone();
                e[i] -= 1;
                out.add_term(Monomial(e), c.from_i64_like(m.0[i] as i64) * c.clone());
            }
        }
        out
    }

    pub fn scale(&self, s: &R) -> Self {
        let mut out = MPoly::zero(self.nvars, self.zero.clone());
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
            zero: self.zero.clone(),
        }
    }

    pub fn map<S: Ring>(&self, zero: S, f: impl Fn(&R) -> S) -> MPoly<S> {
        let mut out = MPoly::zero(self.nvars, zero);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Substitutes polynomials (in a common ring) for the variables.
    pub fn substitute(&self, images: &[MPoly<R>]) -> MPoly<R> {
        let nv = images[0].nvars;
        let mut powers: Vec<Vec<MPoly<R>>> = images.iter().map(|im| vec![MPoly::constant(nv, self.zero.one_like()), im.clone()]).collect();
        let mut out = MPoly::zero(nv, self.zero.clone());
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(nv, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = &out + &t;
        }
        out
    }
}

impl<F: Field> MPoly<F> {
    /// Remainder on division by a single polynomial in degree-lex order:
    /// the result has no monomial divisible by the leading monomial of `g`.
    pub fn reduce_by(&self, g: &MPoly<F>) -> MPoly<F> {
        let (lm, lc) = g.leading().expect("nonzero divisor");
        let (lm, inv) = (lm.clone(), lc.inv().expect("invertible"));
        let mut rest = self.clone();
        let mut out = MPoly::zero(self.nvars, self.zero.clone());
        while let Some((m, c)) = rest.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if lm.divides(&m) {
                let k = c * inv.clone();
                let shifted = g.mul_monomial(&lm.quotient_of(&m)).scale(&k);
                rest = &rest - &shifted;
            } else {
                rest.terms.remove(&m);
                out.add_term(m, c);
            }
        }
        out
    }
}

impl<'a, R: Ring> Add<&'a MPoly<R>> for &'a MPoly<R> {
    type Output = MPoly<R>;
    fn add(self, o: &MPoly<R>) -> MPoly<R> {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a, R: Ring> Sub<&'a MPoly<R>> for &'a MPoly<R> {
    type Output = MPoly<R>;
    fn sub(self, o: &MPoly<R>) -> MPoly<R> {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a, R: Ring> Mul<&'a MPoly<R>> for &'a MPoly<R> {
    type Output = MPoly<R>;
    fn mul(self, o: &MPoly<R>) -> MPoly<R> {
        let mut out = MPoly::zero(self.nvars, self.zero.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<R: Ring> Add for MPoly<R> {
    type Output = MPoly<R>;
    fn add(self, o: Self) -> Self {
        &self + &o
    }
}

impl<R: Ring> Sub for MPoly<R> {
    type Output = MPoly<R>;
    fn sub(self, o: Self) -> Self {
        &self - &o
    }
}

impl<R: Ring> Mul for MPoly<R> {
    type Output = MPoly<R>;
    fn mul(self, o: Self) -> Self {
        &self * &o
    }
}

impl<R: Ring> Neg for MPoly<R> {
    type Output = MPoly<R>;
    fn neg(self) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
            zero: self.zero,
        }
    }
}

impl<R: Ring> Ring for MPoly<R> {
    fn zero_like(&self) -> Self {
        MPoly::zero(self.nvars, self.zero.clone())
    }
    fn one_like(&self) -> Self {
        MPoly::constant(self.nvars, self.zero.one_like())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        MPoly::constant(self.nvars, self.zero.from_i64_like(n))
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (lm, lc) = d.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rest = self.clone();
        let mut q = self.zero_like();
        while let Some((m, c)) = rest.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return None;
            }
            let k = c.exact_div(&lc)?;
            let t = MPoly::from_terms(self.nvars, self.zero.clone(), [(lm.quotient_of(&m).0, k)]);
            rest = &rest - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }
}
