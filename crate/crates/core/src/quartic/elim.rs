//! Elimination of the bitangent condition to a univariate polynomial.
//!
//! A line `u x + v y + z = 0` meets the quartic in the binary quartic obtained
//! by substituting `z = -(u x + v y)`. Writing it as `a X^4 + b X^3 Y + c X^2 Y^2
//! + d X Y^3 + e Y^4`, the line is a bitangent exactly when the binary form is
//! a square, which for `a ≠ 0` means
//! `P1 = b^3 - 4abc + 8a^2 d = 0` and `P2 = (4ac - b^2)^2 - 64 a^3 e = 0`.
//! The resultant in `v` of `P1` and `P2` vanishes at the `u`-coordinates of
//! bitangents together with spurious roots of `a(u)`, which are divided out.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::TernaryQuartic;
use crate::error::{Error, Result};
use crate::exactalg::{is_prime_u64, resultant_univ, Fp, MPoly, Poly, Ring};
use crate::{FpPoly, ZPoly};

/// Number of coordinate changes tried before giving up.
pub const SCHEDULE_LEN: usize = 20;

/// A unimodular integer change of variables `x = A X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Projection {
    pub matrix: [[i64; 3]; 3],
    pub inverse: [[i64; 3]; 3],
}

impl Projection {
    /// Maps a line `ℓ'` for the transformed quartic back to `ℓ = ℓ' A^{-1}`.
    pub fn line_back<R: Ring>(&self, l: &[R; 3]) -> [R; 3] {
        std::array::from_fn(|j| {
            let mut acc = l[0].zero_like();
            for (i, li) in l.iter().enumerate() {
                acc = acc + li.clone() * li.from_i64_like(self.inverse[i][j]);
            }
            acc
        })
    }
}

/// The fixed schedule: the identity followed by dense unimodular matrices
/// with entries in `-3..=3`, rejection-sampled from a seeded stream.
pub fn projection_schedule() -> Vec<Projection> {
    let id = identity();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut out = vec![Projection { matrix: id, inverse: id }];
    while out.len() < SCHEDULE_LEN {
        let a: [[i64; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-3..=3)));
        let det = det3(&a);
        if det.abs() != 1 || !is_dense(&a) {
            continue;
        }
        let inverse = std::array::from_fn(|i| std::array::from_fn(|j| det * cofactor(&a, j, i)));
        let p = Projection { matrix: a, inverse };
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

fn identity() -> [[i64; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| i64::from(i == j)))
}

fn det3(m: &[[i64; 3]; 3]) -> i64 {
    (0..3).map(|j| m[0][j] * cofactor(m, 0, j)).sum()
}

fn cofactor(m: &[[i64; 3]; 3], r: usize, c: usize) -> i64 {
    let (r0, r1) = ((r + 1) % 3, (r + 2) % 3);
    let (c0, c1) = ((c + 1) % 3, (c + 2) % 3);
    m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]
}

/// All entries and all 2x2 minors nonzero, so that no coordinate line or
/// coordinate point is mapped to a special position.
fn is_dense(a: &[[i64; 3]; 3]) -> bool {
    let minors = (0..3).flat_map(|r| (0..3).map(move |c| (r, c))).all(|(r, c)| cofactor(a, r, c) != 0);
    minors && a.iter().flatten().all(|&x| x != 0)
}

/// Bivariate polynomials in `v` over `R[u]`.
pub(crate) type UV<R> = Poly<Poly<R>>;

/// Coefficients `[e, d, c, b, a]` of the restricted binary quartic, indexed by
/// the power of `X`.
pub(crate) fn restricted_binary_quartic<R: Ring>(g: &MPoly<R>) -> [UV<R>; 5] {
    let zero = g.zero_coeff().clone();
    let mut acc: [Vec<Vec<R>>; 5] = std::array::from_fn(|_| vec![vec![zero.clone(); 5]; 5]);
    for (m, c) in g.terms() {
        let (i, k) = (m.0[0] as usize, m.0[2] as usize);
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let mut binom = 1i64;
        for mm in 0..=k {
            // z^k = (-1)^k Σ C(k,mm) u^mm v^(k-mm) x^mm y^(k-mm)
            let term = c.clone() * zero.from_i64_like(sign * binom);
            let slot = &mut acc[i + mm][k - mm][mm];
            *slot = slot.clone() + term;
            binom = binom * (k - mm) as i64 / (mm + 1) as i64;
        }
    }
    let pz = Poly::zero(zero.clone());
    acc.map(|by_v| Poly::new(by_v.into_iter().map(|by_u| Poly::new(by_u, zero.clone())).collect(), pz.clone()))
}

/// `P1` and `P2` for a quartic.
pub(crate) fn square_conditions<R: Ring>(g: &MPoly<R>) -> (UV<R>, UV<R>, Poly<R>) {
    let [e, d, c, b, a] = restricted_binary_quartic(g);
    let k = |n: i64| a.from_i64_like(n);
    let a2 = &a * &a;
    let p1 = &(&(&(&b * &b) * &b) - &(&(&k(4) * &a) * &(&b * &c))) + &(&(&k(8) * &a2) * &d);
    let t = &(&k(4) * &(&a * &c)) - &(&b * &b);
    let p2 = &(&t * &t) - &(&(&k(64) * &(&a2 * &a)) * &e);
    let a_u = a.coeff(0);
    (p1, p2, a_u)
}

/// The raw elimination output before normalization.
pub(crate) struct Elimination<R> {
    pub p1: UV<R>,
    pub p2: UV<R>,
    pub h: Poly<R>,
}

pub(crate) fn eliminate<R: Ring>(g: &MPoly<R>, normalize_divisor: impl Fn(&Poly<R>) -> Poly<R>) -> Option<Elimination<R>> {
    let (p1, p2, a_u) = square_conditions(g);
    if a_u.is_zero() {
        return None;
    }
    let mut h = resultant_univ(&p1, &p2).ok()?;
    if h.is_zero() {
        return None;
    }
    let a_n = normalize_divisor(&a_u);
    if a_n.deg() >= 1 {
        while let Some(q) = h.exact_div_poly(&a_n) {
            h = q;
        }
    }
    Some(Elimination { p1, p2, h })
}

/// Degree-28 bitangent polynomial over the rationals, with the index of the
/// projection that produced it.
#[derive(Debug, Clone)]
pub struct BitangentPoly {
    /// Primitive integer polynomial whose roots are the `u`-coordinates of the
    /// bitangents `u X + v Y + Z = 0` of the transformed quartic.
    pub h: ZPoly,
    pub projection: usize,
}

const CERT_PRIMES_FROM: u64 = 1009;

fn squarefree_over_q(h: &ZPoly) -> bool {
    let mut p = CERT_PRIMES_FROM;
    let mut tried = 0;
    while tried < 20 {
        if is_prime_u64(p) {
            tried += 1;
            let hp = reduce_zpoly(h, p);
            if hp.deg() == h.deg() && hp.is_squarefree() {
                return true;
            }
        }
        p += 2;
    }
    let hq = h.to_rational();
    hq.is_squarefree()
}

pub(crate) fn reduce_zpoly(h: &ZPoly, p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    h.map(Fp::new(0, p), |c| {
        let r = ((c % &pb) + &pb) % &pb;
        Fp::new(u64::try_from(r).expect("reduced"), p)
    })
}

/// Tries the schedule from index `start` on; the first projection yielding
/// a squarefree polynomial of degree 28 wins.
pub fn bitangent_poly(g: &TernaryQuartic, start: usize) -> Result<BitangentPoly> {
    if Zero::is_zero(&super::discriminant_i27(g)?) {
        return Err(Error::Singular);
    }
    let schedule = projection_schedule();
    for (idx, proj) in schedule.iter().enumerate().skip(start) {
        let gt = g.transform(&proj.matrix).form();
        let Some(el) = eliminate(&gt, |a| a.primitive()) else { continue };
        let h = el.h.primitive();
        if h.deg() == 28 && squarefree_over_q(&h) {
            let h = if h.lc() < BigInt::zero() { -h } else { h };
            return Ok(BitangentPoly { h, projection: idx });
        }
    }
    Err(Error::NoProjection)
}

/// Projection-dependent elimination data over `F_p`.
pub(crate) struct FpElimination {
    pub projection: usize,
    pub h: FpPoly,
    pub p1: UV<Fp>,
    pub p2: UV<Fp>,
}

pub(crate) fn eliminate_fp(g: &TernaryQuartic, p: u64, start: usize) -> Result<FpElimination> {
    let schedule = projection_schedule();
    for (idx, proj) in schedule.iter().enumerate().skip(start) {
        let gt = g.transform(&proj.matrix).mod_p(p);
        let Some(el) = eliminate(&gt, |a| a.monic()) else { continue };
        let h = el.h.monic();
        if h.deg() == 28 && h.is_squarefree() {
            return Ok(FpElimination { projection: idx, h, p1: el.p1, p2: el.p2 });
        }
    }
    Err(Error::NoProjection)
}

/// The monic degree-28 bitangent polynomial over `F_p` and the projection
/// index used.
pub fn bitangent_poly_fp(g: &TernaryQuartic, p: u64) -> Result<(FpPoly, usize)> {
    super::require_good_odd(g, p)?;
    let el = eliminate_fp(g, p, 0)?;
    Ok((el.h, el.projection))
}
