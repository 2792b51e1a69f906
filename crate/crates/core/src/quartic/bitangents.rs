//! The 28 bitangents of a quartic with good reduction at an odd prime, over
//! their splitting field, together with their contact divisors.

use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use super::elim::{eliminate_fp, UV};
use super::{require_good_odd, TernaryQuartic};
use crate::error::{Error, Result};
use crate::exactalg::{ddf_factor_degrees, fq_roots, Embedding, Field, FiniteField, Fp, FqCtx, FqElem, MPoly, Poly, Ring};
use crate::FpPoly;

/// A bitangent line `l_0 x + l_1 y + l_2 z = 0` over `F_{p^r}`.
///
/// The line is parametrized as `s·P + t·R`; the quartic restricted to it
/// equals `scale · (s^2 + quad[0] s t + quad[1] t^2)^2`.
#[derive(Debug, Clone, Serialize)]
pub struct Bitangent {
    /// Normalized so that the first nonzero coordinate is 1.
    pub line: [FqElem; 3],
    #[serde(skip)]
    pub param: [[FqElem; 3]; 2],
    #[serde(skip)]
    pub quad: [FqElem; 2],
    #[serde(skip)]
    pub scale: FqElem,
    /// The two contact points over the contact field, equal for a
    /// hyperflex-type double contact.
    pub contact: [[FqElem; 3]; 2],
}

impl Bitangent {
    pub fn is_double_contact(&self) -> bool {
        self.contact[0] == self.contact[1]
    }
}

/// All bitangents of a quartic modulo `p`.
#[derive(Debug, Clone)]
pub struct BitangentSet {
    pub p: u64,
    /// Degree of the splitting field of the bitangent scheme over `F_p`.
    pub r: u32,
    pub field: Arc<FqCtx>,
    /// Field holding the contact points: `F_{p^r}` or `F_{p^{2r}}`.
    pub contact_field: Arc<FqCtx>,
    pub projection: usize,
    /// The projected degree-28 bitangent polynomial over `F_p`.
    pub h: FpPoly,
    /// Sorted by line coordinates.
    pub lines: Vec<Bitangent>,
    /// The quartic over `F_{p^r}`.
    pub form: MPoly<FqElem>,
}

pub(crate) fn lift_fp(ctx: &Arc<FqCtx>, x: &Fp) -> FqElem {
    ctx.from_fp(*x)
}

fn eval_uv_at_u(f: &UV<Fp>, ctx: &Arc<FqCtx>, u0: &FqElem) -> Poly<FqElem> {
    Poly::new(
        f.coeffs()
            .iter()
            .map(|cu| cu.coeffs().iter().rev().fold(ctx.zero(), |acc, c| acc * u0.clone() + lift_fp(ctx, c)))
            .collect(),
        ctx.zero(),
    )
}

pub(crate) fn normalize_line(l: [FqElem; 3]) -> Option<[FqElem; 3]> {
    let lead = l.iter().find(|c| !c.is_zero())?.inv()?;
    Some(l.map(|c| c * lead.clone()))
}

pub(crate) fn line_key(l: &[FqElem; 3]) -> Vec<u64> {
    l.iter().flat_map(|c| c.sort_key()).collect()
}

/// Splitting degree `r`: least common multiple of the DDF degrees.
pub(crate) fn splitting_degree(h: &FpPoly) -> Result<u32> {
    Ok(ddf_factor_degrees(h)?.keys().fold(1u32, |a, &d| a.lcm(&(d as u32))))
}

/// Restriction data for a line: a parametrization with `g(P) ≠ 0`, the monic
/// quadratic whose square is `g|_l / g(P)`, and `g(P)`.
pub(crate) fn restrict_to_line(g: &MPoly<FqElem>, l: &[FqElem; 3]) -> Result<([[FqElem; 3]; 2], [FqElem; 2], FqElem)> {
    let ctx = l[0].ctx().clone();
    let i0 = l.iter().position(|c| !c.is_zero()).ok_or_else(|| Error::Invalid("zero line".into()))?;
    let basis: Vec<[FqElem; 3]> = (0..3)
        .filter(|&j| j != i0)
        .map(|j| {
            let mut v = [ctx.zero(), ctx.zero(), ctx.zero()];
            v[j] = ctx.one();
            v[i0] = -(l[j].clone() * l[i0].inv().expect("nonzero"));
            v
        })
        .collect();
    let comb = |c: &FqElem| -> [FqElem; 3] { std::array::from_fn(|k| basis[0][k].clone() + c.clone() * basis[1][k].clone()) };
    let mut choice = None;
    for c in 0..ctx.p().min(8) {
        let pt = comb(&ctx.from_u64(c));
        if !g.eval(&pt).is_zero() {
            choice = Some((pt, basis[1].clone()));
            break;
        }
    }
    if choice.is_none() && !g.eval(&basis[1]).is_zero() {
        choice = Some((basis[1].clone(), basis[0].clone()));
    }
    let (pp, rr) = choice.ok_or_else(|| Error::Invalid("line lies in the curve".into()))?;
    let z = ctx.zero();
    let s = MPoly::var(2, 0, &z);
    let t = MPoly::var(2, 1, &z);
    let images: Vec<MPoly<FqElem>> = (0..3).map(|k| &s.scale(&pp[k]) + &t.scale(&rr[k])).collect();
    let bq = g.substitute(&images);
    let co: Vec<FqElem> = (0..=4u32).rev().map(|i| bq.coeff(&[i, 4 - i])).collect();
    let (a, b, c, d, e) = (&co[0], &co[1], &co[2], &co[3], &co[4]);
    let ainv = a.inv().expect("g(P) ≠ 0");
    let two_inv = ctx.from_u64(2).inv().expect("odd characteristic");
    let beta = b.clone() * ainv.clone() * two_inv.clone();
    let gamma = (c.clone() * ainv.clone() - beta.clone() * beta.clone()) * two_inv;
    let two = ctx.from_u64(2);
    if d.clone() * ainv.clone() != two * beta.clone() * gamma.clone() || e.clone() * ainv != gamma.clone() * gamma.clone() {
        return Err(Error::Invalid("restriction to the line is not a square".into()));
    }
    Ok(([pp, rr], [beta, gamma], a.clone()))
}

/// Finds the 28 bitangents of `g` modulo the odd good prime `p`.
pub fn bitangents_fq(g: &TernaryQuartic, p: u64) -> Result<BitangentSet> {
    require_good_odd(g, p)?;
    let schedule = super::elim::projection_schedule();
    let mut start = 0;
    loop {
        let el = eliminate_fp(g, p, start)?;
        start = el.projection + 1;
        let r = splitting_degree(&el.h)?;
        let ctx = FqCtx::new(p, r)?;
        let hq = el.h.map(ctx.zero(), |c| lift_fp(&ctx, c));
        let roots = fq_roots(&hq, 0)?;
        if roots.len() != 28 {
            continue;
        }
        let proj = &schedule[el.projection];
        let mut lines = Vec::with_capacity(28);
        for u0 in &roots {
            let f1 = eval_uv_at_u(&el.p1, &ctx, u0);
            let f2 = eval_uv_at_u(&el.p2, &ctx, u0);
            let gcd = f1.gcd(&f2);
            if gcd.deg() != 1 {
                break;
            }
            let v0 = -gcd.monic().coeff(0);
            let back = proj.line_back(&[u0.clone(), v0, ctx.one()]);
            lines.push(normalize_line(back).expect("nonzero line"));
        }
        if lines.len() != 28 {
            continue;
        }
        lines.sort_by_key(line_key);
        lines.dedup();
        if lines.len() != 28 {
            continue;
        }
        let form = g.over_fq(&ctx);
        return assemble(p, r, ctx, el.projection, el.h, form, lines);
    }
}

fn assemble(p: u64, r: u32, ctx: Arc<FqCtx>, projection: usize, h: FpPoly, form: MPoly<FqElem>, lines: Vec<[FqElem; 3]>) -> Result<BitangentSet> {
    let restricted = lines.iter().map(|l| restrict_to_line(&form, l)).collect::<Result<Vec<_>>>()?;
    let needs_ext = restricted.iter().any(|(_, q, _)| {
        let disc = q[0].clone() * q[0].clone() - ctx.from_u64(4) * q[1].clone();
        !disc.is_square()
    });
    let (contact_field, emb) = if needs_ext {
        let big = FqCtx::new(p, 2 * r)?;
        let emb = Embedding::new(&ctx, &big)?;
        (big, Some(emb))
    } else {
        (ctx.clone(), None)
    };
    let up = |x: &FqElem| match &emb {
        Some(e) => e.map(x),
        None => x.clone(),
    };
    let mut out = Vec::with_capacity(28);
    for (line, (param, quad, scale)) in lines.into_iter().zip(restricted) {
        let (pp, rr) = (param[0].clone().map(|c| up(&c)), param[1].clone().map(|c| up(&c)));
        let (b, c) = (up(&quad[0]), up(&quad[1]));
        let disc = b.clone() * b.clone() - contact_field.from_u64(4) * c;
        let sq = disc.sqrt(0).ok_or_else(|| Error::Invalid("contact discriminant has no square root".into()))?;
        let half = contact_field.from_u64(2).inv().expect("odd characteristic");
        let roots = [(-b.clone() + sq.clone()) * half.clone(), (-b - sq) * half];
        let mut contact = roots.map(|s| {
            let pt: [FqElem; 3] = std::array::from_fn(|k| s.clone() * pp[k].clone() + rr[k].clone());
            normalize_line(pt).expect("nonzero point")
        });
        contact.sort_by_key(line_key);
        out.push(Bitangent { line, param, quad, scale, contact });
    }
    Ok(BitangentSet { p, r, field: ctx, contact_field, projection, h, lines: out, form })
}

impl BitangentSet {
    /// Linear forms of the bitangents over `F_{p^r}`.
    pub fn linear_forms(&self) -> Vec<MPoly<FqElem>> {
        self.lines.iter().map(|b| linear_form(&b.line)).collect()
    }

    /// DDF degree pattern of the projected bitangent polynomial, as a
    /// decreasing list of factor degrees.
    pub fn ddf_pattern(&self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (d, k) in ddf_factor_degrees(&self.h)? {
            out.extend(std::iter::repeat(d).take(k));
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        Ok(out)
    }
}

pub(crate) fn linear_form(l: &[FqElem; 3]) -> MPoly<FqElem> {
    let z = l[0].zero_like();
    MPoly::from_terms(3, z, (0..3).map(|j| (super::unit(j), l[j].clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quartic::examples;

    #[test]
    fn curve1_mod5_has_28_bitangents_with_contacts_on_curve() {
        let set = bitangents_fq(&examples::curve1(), 5).unwrap();
        assert_eq!(set.lines.len(), 28);
        let gbig = examples::curve1().over_fq(&set.contact_field);
        let emb = Embedding::new(&set.field, &set.contact_field).unwrap();
        for b in &set.lines {
            let l = b.line.clone().map(|c| emb.map(&c));
            for pt in &b.contact {
                assert!(gbig.eval(pt).is_zero());
                let on_line = (0..3).fold(set.contact_field.zero(), |acc, k| acc + l[k].clone() * pt[k].clone());
                assert!(on_line.is_zero());
            }
        }
    }

    #[test]
    fn curve2_mod3_has_28_bitangents() {
        assert_eq!(bitangents_fq(&examples::curve2(), 3).unwrap().lines.len(), 28);
    }

    #[test]
    fn bad_prime_rejected() {
        assert_eq!(bitangents_fq(&examples::curve1(), 29).unwrap_err(), Error::BadReduction(29));
    }
}
