//! Plane quartic curves: the discriminant `I27`, bitangents and their contact
//! divisors over finite fields, syzygetic quadruples, the Frobenius action on
//! bitangents, point counts and L-polynomials, the degree-14 norm identity
//! and reduction-type predicates.

mod bitangents;
mod count;
mod elim;
mod irred;
mod norm;
mod syzygy;

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{is_prime_u64, macaulay_resultant_cubics, monomials_of_degree, Fp, FqCtx, FqElem, MPoly, Ring};
use crate::{Int, ZForm};

pub use bitangents::{bitangents_fq, Bitangent, BitangentSet};
pub use count::{count_points, l_polynomial, torsion_bound, LPolynomial};
pub use elim::{bitangent_poly, bitangent_poly_fp, projection_schedule, BitangentPoly, Projection, SCHEDULE_LEN};
pub use irred::is_geometrically_irreducible;
pub use norm::{r14_and_c, NormIdentity};
pub use syzygy::{frobenius_on_bitangents, syzygetic_structure};

/// Exponent vectors of the 15 quartic monomials in degree-lex order.
pub fn quartic_monomials() -> Vec<[u32; 3]> {
    monomials_of_degree(3, 4).into_iter().map(|m| [m.0[0], m.0[1], m.0[2]]).collect()
}

/// A ternary quartic form with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryQuartic {
    coeffs: Vec<Int>,
}

/// On-disk curve description.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub coeffs: Vec<String>,
    pub ring: String,
}

impl TernaryQuartic {
    /// Coefficients in the order `x^4, x^3y, x^3z, x^2y^2, …, z^4`.
    pub fn new(coeffs: Vec<Int>) -> Result<Self> {
        if coeffs.len() != 15 {
            return Err(Error::Invalid(format!("a ternary quartic has 15 coefficients, got {}", coeffs.len())));
        }
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::Invalid("zero form".into()));
        }
        Ok(TernaryQuartic { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Builds the quartic from a form, which must be homogeneous of degree 4.
    pub fn from_form(f: &ZForm) -> Result<Self> {
        if f.nvars() != 3 {
            return Err(Error::Invalid("a ternary form needs 3 variables".into()));
        }
        f.require_homogeneous(4)?;
        Self::new(quartic_monomials().iter().map(|e| f.coeff(e)).collect())
    }

    pub fn fermat() -> Self {
        let mut c = vec![0i64; 15];
        c[0] = 1;
        c[10] = 1;
        c[14] = 1;
        Self::from_i64(&c).expect("valid")
    }

    pub fn from_file(file: &CurveFile) -> Result<Self> {
        if file.ring != "ZZ" {
            return Err(Error::Invalid(format!("unsupported coefficient ring {:?}", file.ring)));
        }
        let coeffs = file.coeffs.iter().map(|s| crate::exactalg::serde_int::parse(s).map_err(Error::Invalid)).collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CurveFile = serde_json::from_str(text).map_err(|e| Error::Invalid(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_file(&self) -> CurveFile {
        CurveFile { coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(), ring: "ZZ".into() }
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    /// The quartic as a polynomial over any ring receiving the integers.
    pub fn form_over<R: Ring>(&self, zero: R, f: impl Fn(&Int) -> R) -> MPoly<R> {
        MPoly::from_terms(3, zero, quartic_monomials().into_iter().zip(&self.coeffs).map(|(e, c)| (e.to_vec(), f(c))))
    }

    pub fn form(&self) -> ZForm {
        self.form_over(BigInt::zero(), Clone::clone)
    }

    pub fn mod_p(&self, p: u64) -> MPoly<Fp> {
        let pb = BigInt::from(p);
        self.form_over(Fp::new(0, p), |c| Fp::new(c.mod_floor(&pb).try_into().expect("reduced"), p))
    }

    pub fn over_fq(&self, ctx: &Arc<FqCtx>) -> MPoly<FqElem> {
        let pb = BigInt::from(ctx.p());
        self.form_over(ctx.zero(), |c| ctx.from_u64(c.mod_floor(&pb).try_into().expect("reduced")))
    }

    /// Applies `x ↦ A x`, i.e. returns `g(A x)`.
    pub fn transform(&self, a: &[[i64; 3]; 3]) -> Self {
        let f = self.form();
        let z = BigInt::zero();
        let images: Vec<ZForm> = (0..3)
            .map(|i| MPoly::from_terms(3, z.clone(), (0..3).map(|j| (unit(j), BigInt::from(a[i][j])))))
            .collect();
        Self::from_form(&f.substitute(&images)).expect("nonzero image under invertible substitution")
    }
}

pub(crate) fn unit(j: usize) -> Vec<u32> {
    let mut e = vec![0; 3];
    e[j] = 1;
    e
}

/// The degree-27 discriminant, normalized as `2^{-14}` times the resultant
/// of the three partial derivatives with the sign making the Fermat quartic
/// positive.
pub fn discriminant_i27(g: &TernaryQuartic) -> Result<Int> {
    let f = g.form();
    let partials = [f.partial(0), f.partial(1), f.partial(2)];
    if partials.iter().any(MPoly::is_zero) {
        // Two plane cubics always meet, so the curve is singular.
        return Ok(BigInt::zero());
    }
    let r = macaulay_resultant_cubics(&partials[0], &partials[1], &partials[2])?;
    let d = BigInt::one() << 14;
    let (q, rem) = r.div_rem(&d);
    if !Zero::is_zero(&rem) {
        return Err(Error::NormalizationFailed(format!("resultant {r} is not divisible by 2^14")));
    }
    Ok(q)
}

/// Reduction-type predicates at a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReductionFlags {
    pub good: bool,
    pub mult1_node: bool,
    pub geom_irreducible: bool,
    pub weil_hensel_point: bool,
}

/// Smallest prime from which the Weil bound plus Hensel lifting guarantee a
/// local point on a geometrically irreducible reduction of a quartic.
pub const WEIL_HENSEL_MIN_PRIME: u64 = 37;

pub fn reduction_flags(g: &TernaryQuartic, p: u64) -> Result<ReductionFlags> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let i27 = discriminant_i27(g)?;
    reduction_flags_with(g, &i27, p)
}

/// As [`reduction_flags`] with a precomputed discriminant.
pub fn reduction_flags_with(g: &TernaryQuartic, i27: &Int, p: u64) -> Result<ReductionFlags> {
    let pb = BigInt::from(p);
    let v = valuation(i27, &pb);
    let good = v == 0;
    let mult1_node = p % 2 == 1 && v == 1;
    let geom_irreducible = good || is_geometrically_irreducible(&g.mod_p(p))?;
    Ok(ReductionFlags { good, mult1_node, geom_irreducible, weil_hensel_point: p >= WEIL_HENSEL_MIN_PRIME && geom_irreducible })
}

/// Exponent of `p` in `n`; zero is treated as divisible to infinite order.
pub(crate) fn valuation(n: &Int, p: &Int) -> u32 {
    if Zero::is_zero(n) {
        return u32::MAX;
    }
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !Zero::is_zero(&r) {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub(crate) fn require_good_odd(g: &TernaryQuartic, p: u64) -> Result<Int> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::BadReduction(2));
    }
    let i27 = discriminant_i27(g)?;
    if Zero::is_zero(&i27) {
        return Err(Error::Singular);
    }
    if valuation(&i27, &BigInt::from(p)) > 0 {
        return Err(Error::BadReduction(p));
    }
    Ok(i27)
}

/// The four example curves used throughout the documentation and tests.
pub mod examples {
    use super::TernaryQuartic;

    /// `x³y − x²y² − x²z² − xy²z + xz³ + y³z`
    pub fn curve1() -> TernaryQuartic {
        TernaryQuartic::from_i64(&[0, 1, 0, -1, 0, -1, 0, -1, 0, 1, 0, 1, 0, 0, 0]).expect("valid")
    }

    /// `x²y² − xy³ − x³z − 2x²z² + y²z² − xz³ + yz³`
    pub fn curve2() -> TernaryQuartic {
        TernaryQuartic::from_i64(&[0, 0, -1, 1, 0, -2, -1, 0, 0, -1, 0, 0, 1, 1, 0]).expect("valid")
    }

    /// `x³y + x³z − 2x²y² − x²yz + xy³ − xy²z + 2xyz² − xz³ − 2y²z² + 3yz³`
    pub fn curve3() -> TernaryQuartic {
        TernaryQuartic::from_i64(&[0, 1, 1, -2, -1, 0, 1, -1, 2, -1, 0, 0, -2, 3, 0]).expect("valid")
    }

    /// `x⁴ + y⁴ + x²yz + 2xyz² − y²z² + z⁴`
    pub fn curve4() -> TernaryQuartic {
        TernaryQuartic::from_i64(&[1, 0, 0, 0, 1, 0, 0, 0, 2, 0, 1, 0, -1, 0, 1]).expect("valid")
    }

    pub fn all() -> [TernaryQuartic; 4] {
        [curve1(), curve2(), curve3(), curve4()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fermat_discriminant_is_positive_power_of_two() {
        assert_eq!(discriminant_i27(&TernaryQuartic::fermat()).unwrap(), BigInt::one() << 40);
    }

    #[test]
    fn example_discriminants() {
        let want: [i64; 3] = [4727, 14227, 13i64.pow(6)];
        for (g, w) in examples::all().iter().zip(want) {
            assert_eq!(discriminant_i27(g).unwrap(), BigInt::from(w));
        }
        let w4 = -BigInt::from(256) * 25 * 1361 * 97103;
        assert_eq!(discriminant_i27(&examples::curve4()).unwrap(), w4);
    }

    #[test]
    fn json_round_trip() {
        let g = examples::curve3();
        let text = serde_json::to_string(&g.to_file()).unwrap();
        assert_eq!(TernaryQuartic::from_json(&text).unwrap(), g);
        assert!(TernaryQuartic::from_json(r#"{"coeffs":["1"],"ring":"ZZ"}"#).is_err());
        assert!(TernaryQuartic::from_json(r#"{"coeffs":["1","0","0","0","0","0","0","0","0","0","1","0","0","0","1"],"ring":"QQ"}"#).is_err());
    }

    #[test]
    fn reduction_flag_examples() {
        let f = reduction_flags(&examples::curve1(), 29).unwrap();
        assert!(!f.good && f.mult1_node && f.geom_irreducible);
        assert!(reduction_flags(&examples::curve1(), 5).unwrap().good);
        let f4 = reduction_flags(&examples::curve4(), 97103).unwrap();
        assert!(f4.weil_hensel_point && f4.mult1_node);
        let f2 = reduction_flags(&examples::curve4(), 5).unwrap();
        assert!(!f2.good && !f2.mult1_node);
    }
}
