//! The degree-14 form cutting out the sum of all contact divisors and the
//! constant `c` in `∏ l_i ≡ c · r14^2 (mod g)`.

use rayon::prelude::*;
use serde::Serialize;

use super::bitangents::{linear_form, Bitangent};
use crate::error::{Error, Result};
use crate::exactalg::{kernel, monomials_of_degree, Field, FqElem, MPoly, Monomial, Poly, Ring};

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NormIdentity {
    /// Normal form modulo `g`, with leading coefficient 1.
    #[serde(skip)]
    pub r14: MPoly<FqElem>,
    pub c: FqElem,
    /// Whether `c` lies in the prime field.
    pub c_in_prime_field: bool,
    /// Quadratic character of `c` in the prime field.
    pub c_is_square: Option<bool>,
    /// Quadratic character of `-c` in the prime field.
    pub minus_c_is_square: Option<bool>,
}

/// `(s P_k + R_k)` as a polynomial in `s`.
fn param_linear(b: &Bitangent, k: usize) -> Poly<FqElem> {
    let z = b.line[0].zero_like();
    Poly::new(vec![b.param[1][k].clone(), b.param[0][k].clone()], z)
}

/// The two coefficients of the remainder of `m(sP + R)` modulo the contact
/// quadratic, for every monomial in `basis`.
fn vanishing_rows(b: &Bitangent, basis: &[Monomial]) -> [Vec<FqElem>; 2] {
    let z = b.line[0].zero_like();
    let quad = Poly::new(vec![b.quad[1].clone(), b.quad[0].clone(), z.one_like()], z.clone());
    let max_e = basis.iter().flat_map(|m| m.0.iter().copied()).max().unwrap_or(0) as usize;
    let powers: Vec<Vec<Poly<FqElem>>> = (0..3)
        .map(|k| {
            let lin = param_linear(b, k);
            let mut v = vec![Poly::constant(z.one_like())];
            for e in 1..=max_e {
                let next = (&v[e - 1] * &lin).rem(&quad);
                v.push(next);
            }
            v
        })
        .collect();
    let mut rows = [Vec::with_capacity(basis.len()), Vec::with_capacity(basis.len())];
    for m in basis {
        let val = (&(&powers[0][m.0[0] as usize] * &powers[1][m.0[1] as usize]).rem(&quad) * &powers[2][m.0[2] as usize]).rem(&quad);
        rows[0].push(val.coeff(0));
        rows[1].push(val.coeff(1));
    }
    rows
}

/// Interpolates `r14` through the contact divisors and compares the product
/// of the bitangent forms with `r14^2` modulo `g`.
pub fn r14_and_c(g: &MPoly<FqElem>, lines: &[Bitangent]) -> Result<NormIdentity> {
    let (lm, _) = g.leading().ok_or_else(|| Error::Invalid("zero form".into()))?;
    let lm = lm.clone();
    let basis: Vec<Monomial> = monomials_of_degree(3, 14).into_iter().filter(|m| !lm.divides(m)).collect();
    let rows: Vec<Vec<FqElem>> = lines.par_iter().flat_map_iter(|b| vanishing_rows(b, &basis)).collect();
    let zero = g.zero_coeff().clone();
    let ker = kernel(&rows, basis.len(), &zero);
    if ker.len() != 1 {
        return Err(Error::Interpolation(ker.len()));
    }
    let v = &ker[0];
    let lead = v.iter().find(|c| !c.is_zero()).expect("nonzero kernel vector").inv().expect("nonzero");
    let r14 = MPoly::from_terms(3, zero.clone(), basis.iter().zip(v).map(|(m, c)| (m.0.clone(), c.clone() * lead.clone())));
    let product = lines.iter().fold(MPoly::constant(3, zero.one_like()), |acc, b| &acc * &linear_form(&b.line));
    let lhs = product.reduce_by(g);
    let rhs = (&r14 * &r14).reduce_by(g);
    let (m0, c0) = rhs.leading().ok_or_else(|| Error::Inconsistent("r14 squared vanishes modulo g".into()))?;
    let c = lhs.coeff(&m0.0) * c0.inv().expect("nonzero");
    if lhs != rhs.scale(&c) {
        return Err(Error::Inconsistent("product of bitangent forms is not a constant times r14^2 modulo g".into()));
    }
    let fp = c.as_fp();
    Ok(NormIdentity {
        r14,
        c_in_prime_field: fp.is_some(),
        c_is_square: fp.map(|x| x.is_square()),
        minus_c_is_square: fp.map(|x| (-x).is_square()),
        c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quartic::{bitangents_fq, examples};

    #[test]
    fn identity_holds_for_curve1_mod5() {
        let set = bitangents_fq(&examples::curve1(), 5).unwrap();
        let ni = r14_and_c(&set.form, &set.lines).unwrap();
        assert!(ni.c_in_prime_field);
        assert_eq!(ni.r14.total_degree(), Some(14));
        let mut swapped = set.lines.clone();
        swapped.swap(0, 1);
        let ns = r14_and_c(&set.form, &swapped).unwrap();
        assert_eq!(ns.r14, ni.r14);
        assert_eq!(ns.c, ni.c);
    }
}
