//! Absolute irreducibility of a plane quartic over a finite field.
//!
//! After a coordinate change making the quartic monic in `x`, every
//! geometric component of degree `k` gives a factor of `f(x, y0 + s)` whose
//! `x`-roots are `k` of the four power-series roots lifting the roots of
//! `f(x, y0)`. Components have degree 1 or 2 up to complements, so it is
//! enough to test the ten subsets of size one and two by exact division.

use std::sync::Arc;

use num_integer::Integer;

use crate::error::Result;
use crate::exactalg::{ddf_factor_degrees, fq_roots, Embedding, Field, Fp, FqCtx, FqElem, MPoly, Poly, Ring};

/// Power-series precision; enough to determine factors of total degree 2.
const PRECISION: usize = 5;
/// Number of `y0` values with a squarefree fibre that must exist.
const FIBRE_TRIES: usize = 16;

type Series = Vec<FqElem>;

fn series_mul(a: &[FqElem], b: &[FqElem]) -> Series {
    let z = a[0].zero_like();
    let mut out = vec![z; PRECISION];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate().take(PRECISION - i) {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

fn series_inv(a: &[FqElem]) -> Series {
    let z = a[0].zero_like();
    let inv0 = a[0].inv().expect("unit constant term");
    let mut out = vec![z.clone(); PRECISION];
    out[0] = inv0.clone();
    for n in 1..PRECISION {
        let mut acc = z.clone();
        for k in 1..=n {
            if k < a.len() {
                acc = acc + a[k].clone() * out[n - k].clone();
            }
        }
        out[n] = -(acc * inv0.clone());
    }
    out
}

fn to_series(p: &Poly<FqElem>, z: &FqElem) -> Series {
    (0..PRECISION).map(|i| if i < p.coeffs().len() { p.coeffs()[i].clone() } else { z.clone() }).collect()
}

/// Evaluates `Σ a_i(s) X^i` at the series `X`.
fn eval_series(f: &Poly<Poly<FqElem>>, x: &[FqElem], z: &FqElem) -> Series {
    f.coeffs().iter().rev().fold(vec![z.clone(); PRECISION], |acc, c| {
        let prod = series_mul(&acc, x);
        prod.iter().zip(to_series(c, z)).map(|(a, b)| a.clone() + b).collect()
    })
}

fn newton_lift(f: &Poly<Poly<FqElem>>, root: &FqElem) -> Series {
    let z = root.zero_like();
    let df = f.derivative();
    let mut x = vec![z.clone(); PRECISION];
    x[0] = root.clone();
    for _ in 0..3 {
        let num = eval_series(f, &x, &z);
        let den = eval_series(&df, &x, &z);
        let step = series_mul(&num, &series_inv(&den));
        x = x.iter().zip(step).map(|(a, b)| a.clone() - b).collect();
    }
    x
}

/// `g(x, y0 + s, 1)` as a polynomial in `x` over `F[s]`.
fn fibre_family(g: &MPoly<FqElem>, y0: &FqElem) -> Poly<Poly<FqElem>> {
    let z = y0.zero_like();
    let shift = Poly::new(vec![y0.clone(), z.one_like()], z.clone());
    let mut coeffs = vec![Poly::zero(z.clone()); 5];
    for (m, c) in g.terms() {
        let i = m.0[0] as usize;
        coeffs[i] = &coeffs[i] + &shift.pow(m.0[1] as u64).scale(c);
    }
    Poly::new(coeffs, Poly::zero(z))
}

fn truncated_factor(roots: &[&Series], z: &FqElem) -> Poly<Poly<FqElem>> {
    let k = roots.len();
    let one = Poly::constant(z.one_like());
    let mut acc: Poly<Poly<FqElem>> = Poly::constant(one.clone());
    for r in roots {
        let coeffs: Vec<FqElem> = r.iter().take(k + 1).cloned().collect();
        let lin = Poly::new(vec![-Poly::new(coeffs, z.clone()), one.clone()], Poly::zero(z.clone()));
        acc = &acc * &lin;
    }
    let trunc = acc.coeffs().iter().map(|c| Poly::new(c.coeffs().iter().take(k + 1).cloned().collect(), z.clone())).collect();
    Poly::new(trunc, Poly::zero(z.clone()))
}

fn smallest_degree_with(p: u64, min_size: u64) -> u32 {
    let mut m = 1;
    let mut q = p;
    while q < min_size {
        q = q.saturating_mul(p);
        m += 1;
    }
    m
}

/// Whether the quartic `g` over `F_p` is irreducible over the algebraic
/// closure.
pub fn is_geometrically_irreducible(g: &MPoly<Fp>) -> Result<bool> {
    if g.is_zero() {
        return Ok(false);
    }
    let p = g.zero_coeff().modulus();
    let m = smallest_degree_with(p, FIBRE_TRIES as u64);
    let base = FqCtx::new(p, m)?;
    let gb = g.map(base.zero(), |c| base.from_fp(*c));
    let elems: Vec<FqElem> = base.elements().take(FIBRE_TRIES.max(64)).collect();
    let point = elems
        .iter()
        .flat_map(|a| elems.iter().map(|b| [base.one(), a.clone(), b.clone()]))
        .chain(elems.iter().map(|a| [base.zero(), base.one(), a.clone()]))
        .find(|pt| !gb.eval(pt).is_zero());
    let Some(point) = point else { return Ok(false) };
    let i0 = point.iter().position(|c| !c.is_zero()).expect("nonzero point");
    let others: Vec<usize> = (0..3).filter(|&j| j != i0).collect();
    let zero = base.zero();
    let images: Vec<MPoly<FqElem>> = (0..3)
        .map(|i| {
            let mut terms = vec![(vec![1, 0, 0], point[i].clone())];
            if i == others[0] {
                terms.push((vec![0, 1, 0], base.one()));
            }
            if i == others[1] {
                terms.push((vec![0, 0, 1], base.one()));
            }
            MPoly::from_terms(3, zero.clone(), terms)
        })
        .collect();
    let gt = gb.substitute(&images);
    for y0 in elems.iter().take(FIBRE_TRIES) {
        let fam = fibre_family(&gt, y0);
        let fibre: Poly<FqElem> = Poly::new(fam.coeffs().iter().map(|c| c.coeff(0)).collect(), zero.clone());
        if fibre.deg() != 4 || !fibre.is_squarefree() {
            continue;
        }
        return Ok(!has_small_factor(&fam, &fibre, &base)?);
    }
    Ok(false)
}

fn has_small_factor(fam: &Poly<Poly<FqElem>>, fibre: &Poly<FqElem>, base: &Arc<FqCtx>) -> Result<bool> {
    let split = ddf_factor_degrees(fibre)?.keys().fold(1u32, |a, &d| a.lcm(&(d as u32)));
    let ext = FqCtx::new(base.p(), base.r() * split)?;
    let emb = Embedding::new(base, &ext)?;
    let z = ext.zero();
    let lc_inv = emb.map(&fibre.lc()).inv().expect("nonzero leading coefficient");
    let fam_e: Poly<Poly<FqElem>> = fam.map(Poly::zero(z.clone()), |c| c.map(z.clone(), |x| emb.map(x) * lc_inv.clone()));
    let roots = fq_roots(&fibre.map(z.clone(), |x| emb.map(x)), 0)?;
    let lifts: Vec<Series> = roots.iter().map(|r| newton_lift(&fam_e, r)).collect();
    let n = lifts.len();
    let singles = (0..n).map(|i| vec![i]);
    let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| vec![i, j]));
    for subset in singles.chain(pairs) {
        let chosen: Vec<&Series> = subset.iter().map(|&i| &lifts[i]).collect();
        let h = truncated_factor(&chosen, &z);
        if fam_e.exact_div_poly(&h).is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}
