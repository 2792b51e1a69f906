use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigUint;
use rand::Rng;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use super::fp::{is_prime_u64, mul_mod, pow_mod, Fp};
use super::poly::Poly;
use super::ring::{Field, Ring};
use crate::error::{Error, Result};

/// A finite field element type that knows its own field.
pub trait FiniteField: Field {
    fn characteristic(&self) -> u64;
    fn extension_degree(&self) -> u32;
    fn random_like<G: Rng + ?Sized>(&self, rng: &mut G) -> Self;
    /// Key giving a deterministic total order on field elements.
    fn sort_key(&self) -> Vec<u64>;

    fn field_order(&self) -> BigUint {
        BigUint::from(self.characteristic()).pow(self.extension_degree())
    }

    fn frobenius(&self) -> Self {
        self.pow_u64(self.characteristic())
    }

    fn pow_big(&self, e: &BigUint) -> Self {
        let mut acc = self.one_like();
        for i in (0..e.bits()).rev() {
            acc = acc.clone() * acc;
            if e.bit(i) {
                acc = acc * self.clone();
            }
        }
        acc
    }
}

impl FiniteField for Fp {
    fn characteristic(&self) -> u64 {
        self.modulus()
    }
    fn extension_degree(&self) -> u32 {
        1
    }
    fn random_like<G: Rng + ?Sized>(&self, rng: &mut G) -> Self {
        Fp::new(rng.gen_range(0..self.modulus()), self.modulus())
    }
    fn sort_key(&self) -> Vec<u64> {
        vec![self.value()]
    }
}

/// Description of `F_{p^r}` as `F_p[t]/(m(t))`.
#[derive(Debug, PartialEq, Eq)]
pub struct FqCtx {
    p: u64,
    r: u32,
    /// Monic modulus, lowest degree first, length `r + 1`.
    modulus: Vec<u64>,
}

impl FqCtx {
    /// Builds `F_{p^r}` with the lexicographically smallest monic irreducible
    /// modulus, comparing coefficient vectors from `t^{r-1}` down to `t^0`.
    pub fn new(p: u64, r: u32) -> Result<Arc<FqCtx>> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if r == 0 {
            return Err(Error::Invalid("extension degree must be at least 1".into()));
        }
        let mut digits = vec![0u64; r as usize];
        loop {
            let mut m = digits.clone();
            m.push(1);
            if is_irreducible_fp(&m, p) {
                return Ok(Arc::new(FqCtx { p, r, modulus: m }));
            }
            let mut i = 0;
            loop {
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
                i += 1;
                if i == digits.len() {
                    unreachable!("irreducible polynomials exist in every degree");
                }
            }
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.r)
    }

    pub fn zero(self: &Arc<Self>) -> FqElem {
        FqElem { ctx: self.clone(), c: vec![0; self.r as usize] }
    }

    pub fn one(self: &Arc<Self>) -> FqElem {
        self.from_u64(1)
    }

    pub fn from_u64(self: &Arc<Self>, n: u64) -> FqElem {
        let mut c = vec![0; self.r as usize];
        c[0] = n % self.p;
        FqElem { ctx: self.clone(), c }
    }

    pub fn from_i64(self: &Arc<Self>, n: i64) -> FqElem {
        self.from_u64(n.rem_euclid(self.p as i64) as u64)
    }

    pub fn from_fp(self: &Arc<Self>, x: Fp) -> FqElem {
        debug_assert_eq!(x.modulus(), self.p);
        self.from_u64(x.value())
    }

    /// The class of `t`, a generator of the field over `F_p`.
    pub fn gen(self: &Arc<Self>) -> FqElem {
        if self.r == 1 {
            return self.from_u64(self.p - self.modulus[0]);
        }
        let mut c = vec![0; self.r as usize];
        c[1] = 1;
        FqElem { ctx: self.clone(), c }
    }

    pub fn from_coeffs(self: &Arc<Self>, coeffs: &[u64]) -> Result<FqElem> {
        if coeffs.len() != self.r as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::FieldMismatch(format!(
                "expected {} coefficients in [0,{})",
                self.r, self.p
            )));
        }
        Ok(FqElem { ctx: self.clone(), c: coeffs.to_vec() })
    }

    /// All field elements in coefficient-counting order.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FqElem> + '_ {
        let total = self.p.pow(self.r);
        (0..total).map(move |mut n| {
            let mut c = vec![0; self.r as usize];
            for d in c.iter_mut() {
                *d = n % self.p;
                n /= self.p;
            }
            FqElem { ctx: self.clone(), c }
        })
    }
}

/// An element of `F_{p^r}`, stored as a reduced coefficient vector.
#[derive(Clone)]
pub struct FqElem {
    ctx: Arc<FqCtx>,
    c: Vec<u64>,
}

impl FqElem {
    pub fn ctx(&self) -> &Arc<FqCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    /// Returns the `F_p` value if the element lies in the prime field.
    pub fn as_fp(&self) -> Option<Fp> {
        self.c[1..].iter().all(|&x| x == 0).then(|| Fp::new(self.c[0], self.ctx.p))
    }

    pub fn is_square(&self) -> bool {
        if Ring::is_zero(self) || self.ctx.p == 2 {
            return true;
        }
        let e = (self.ctx.order() - 1u32) / 2u32;
        self.pow_big(&e).is_one()
    }

    /// A square root when one exists, found by splitting `t^2 - self`.
    pub fn sqrt(&self, seed: u64) -> Option<FqElem> {
        if Ring::is_zero(self) {
            return Some(self.clone());
        }
        let f = Poly::new(vec![-self.clone(), self.zero_like(), self.one_like()], self.zero_like());
        super::ffactor::fq_roots(&f, seed).ok()?.into_iter().next()
    }

    fn check(&self, o: &FqElem) {
        debug_assert!(Arc::ptr_eq(&self.ctx, &o.ctx) || *self.ctx == *o.ctx, "field mismatch");
    }

    fn to_poly(&self) -> Poly<Fp> {
        Poly::new(self.c.iter().map(|&x| Fp::new(x, self.ctx.p)).collect(), Fp::new(0, self.ctx.p))
    }
}

impl PartialEq for FqElem {
    fn eq(&self, o: &Self) -> bool {
        self.ctx.p == o.ctx.p && self.ctx.r == o.ctx.r && self.c == o.c
    }
}

impl Eq for FqElem {}

impl std::hash::Hash for FqElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.c)
    }
}

impl Serialize for FqElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FqElem", 3)?;
        st.serialize_field("p", &self.ctx.p)?;
        st.serialize_field("r", &self.ctx.r)?;
        st.serialize_field("coeffs", &self.c)?;
        st.end()
    }
}

/// Serialized shape of an `F_{p^r}` element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FqElemRepr {
    pub p: u64,
    pub r: u32,
    pub coeffs: Vec<u64>,
}

impl FqElemRepr {
    pub fn into_elem(self, ctx: &Arc<FqCtx>) -> Result<FqElem> {
        if self.p != ctx.p || self.r != ctx.r {
            return Err(Error::FieldMismatch(format!(
                "element of F_{}^{} read into F_{}^{}",
                self.p, self.r, ctx.p, ctx.r
            )));
        }
        ctx.from_coeffs(&self.coeffs)
    }
}

impl Add for FqElem {
    type Output = FqElem;
    fn add(mut self, o: FqElem) -> FqElem {
        self.check(&o);
        let p = self.ctx.p;
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            let s = *a + b;
            *a = if s >= p { s - p } else { s };
        }
        self
    }
}

impl Sub for FqElem {
    type Output = FqElem;
    fn sub(mut self, o: FqElem) -> FqElem {
        self.check(&o);
        let p = self.ctx.p;
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            *a = if *a >= *b { *a - b } else { *a + p - b };
        }
        self
    }
}

impl Neg for FqElem {
    type Output = FqElem;
    fn neg(mut self) -> FqElem {
        let p = self.ctx.p;
        for a in self.c.iter_mut() {
            if *a != 0 {
                *a = p - *a;
            }
        }
        self
    }
}

impl Mul for FqElem {
    type Output = FqElem;
    fn mul(self, o: FqElem) -> FqElem {
        self.check(&o);
        let ctx = &self.ctx;
        let (p, r) = (ctx.p, ctx.r as usize);
        if r == 1 {
            return FqElem { c: vec![mul_mod(self.c[0], o.c[0], p)], ctx: self.ctx };
        }
        let mut prod = vec![0u128; 2 * r - 1];
        let pp = p as u128;
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a as u128 * b as u128) % pp;
            }
        }
        for k in (r..2 * r - 1).rev() {
            let t = prod[k] % pp;
            if t == 0 {
                continue;
            }
            prod[k] = 0;
            for j in 0..r {
                let m = ctx.modulus[j] as u128;
                prod[k - r + j] = (prod[k - r + j] + (pp - t) * m) % pp;
            }
        }
        let c = prod[..r].iter().map(|&x| (x % pp) as u64).collect();
        FqElem { ctx: self.ctx, c }
    }
}

impl Ring for FqElem {
    fn zero_like(&self) -> Self {
        self.ctx.zero()
    }
    fn one_like(&self) -> Self {
        self.ctx.one()
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
    fn from_i64_like(&self, n: i64) -> Self {
        self.ctx.from_i64(n)
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        d.inv().map(|i| self.clone() * i)
    }
}

impl Field for FqElem {
    fn inv(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            return None;
        }
        let p = self.ctx.p;
        if self.ctx.r == 1 {
            return Some(self.ctx.from_u64(pow_mod(self.c[0], p - 2, p)));
        }
        let m = Poly::new(
            self.ctx.modulus.iter().map(|&x| Fp::new(x, p)).collect(),
            Fp::new(0, p),
        );
        let (mut r0, mut r1) = (m, self.to_poly());
        let zero = Poly::zero(Fp::new(0, p));
        let (mut s0, mut s1) = (zero.clone(), Poly::constant(Fp::new(1, p)));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = r1;
            r1 = r;
            let s = &s0 - &(&q * &s1);
            s0 = s1;
            s1 = s;
        }
        let k = r0.coeff(0).inv()?;
        let inv = s0.scale(&k);
        let mut c = vec![0; self.ctx.r as usize];
        for (i, x) in inv.coeffs().iter().enumerate() {
            c[i] = x.value();
        }
        Some(FqElem { ctx: self.ctx.clone(), c })
    }
}

impl FiniteField for FqElem {
    fn characteristic(&self) -> u64 {
        self.ctx.p
    }
    fn extension_degree(&self) -> u32 {
        self.ctx.r
    }
    fn random_like<G: Rng + ?Sized>(&self, rng: &mut G) -> Self {
        let c = (0..self.ctx.r).map(|_| rng.gen_range(0..self.ctx.p)).collect();
        FqElem { ctx: self.ctx.clone(), c }
    }
    fn sort_key(&self) -> Vec<u64> {
        self.c.iter().rev().copied().collect()
    }
}

/// A field embedding `F_{p^a} -> F_{p^b}` for `a | b`.
#[derive(Debug, Clone)]
pub struct Embedding {
    small: Arc<FqCtx>,
    big: Arc<FqCtx>,
    /// Images of the powers `t^0..t^{a-1}` of the small generator.
    powers: Vec<FqElem>,
}

impl Embedding {
    /// Sends the small generator to the least root (by [`FqElem::sort_key`])
    /// of its minimal polynomial in the big field.
    pub fn new(small: &Arc<FqCtx>, big: &Arc<FqCtx>) -> Result<Self> {
        if small.p != big.p || big.r % small.r != 0 {
            return Err(Error::FieldMismatch(format!(
                "no embedding of F_{}^{} into F_{}^{}",
                small.p, small.r, big.p, big.r
            )));
        }
        let m = Poly::new(small.modulus.iter().map(|&x| big.from_u64(x)).collect(), big.zero());
        let mut roots = super::ffactor::fq_roots(&m, 0)?;
        roots.sort_by_key(|x| x.sort_key());
        let root = roots.into_iter().next().ok_or_else(|| Error::FieldMismatch("no root".into()))?;
        let mut powers = Vec::with_capacity(small.r as usize);
        let mut acc = big.one();
        for _ in 0..small.r {
            powers.push(acc.clone());
            acc = acc * root.clone();
        }
        Ok(Embedding { small: small.clone(), big: big.clone(), powers })
    }

    pub fn small(&self) -> &Arc<FqCtx> {
        &self.small
    }

    pub fn big(&self) -> &Arc<FqCtx> {
        &self.big
    }

    pub fn map(&self, x: &FqElem) -> FqElem {
        let mut acc = self.big.zero();
        for (c, pw) in x.c.iter().zip(&self.powers) {
            if *c != 0 {
                acc = acc + pw.clone() * self.big.from_u64(*c);
            }
        }
        acc
    }
}

/// Rabin irreducibility test for a monic polynomial over `F_p`.
pub fn is_irreducible_fp(monic: &[u64], p: u64) -> bool {
    let n = monic.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let f = Poly::new(monic.iter().map(|&x| Fp::new(x, p)).collect(), Fp::new(0, p));
    let x = Poly::t(&Fp::new(1, p));
    let pe = BigUint::from(p);
    let frob_iter = |k: usize| {
        let mut h = x.clone();
        for _ in 0..k {
            h = h.powmod(&pe, &f);
        }
        h
    };
    if frob_iter(n) != x.rem(&f) {
        return false;
    }
    let mut m = n;
    let mut q = 2;
    let mut primes = Vec::new();
    while q * q <= m {
        if m % q == 0 {
            primes.push(q);
            while m % q == 0 {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    primes.into_iter().all(|q| {
        let h = &frob_iter(n / q) - &x;
        f.gcd(&h).deg() == 0
    })
}
