use super::linalg::det_bareiss;
use super::mpoly::{monomials_of_degree, MPoly, Monomial};
use super::poly::Poly;
use super::ring::Ring;
use crate::error::{Error, Result};

/// Sylvester matrix of two nonzero univariate polynomials.
pub fn sylvester_matrix<R: Ring>(f: &Poly<R>, g: &Poly<R>) -> Vec<Vec<R>> {
    let (m, n) = (f.deg() as usize, g.deg() as usize);
    let zero = f.zero_coeff().clone();
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for k in 0..=m {
            row[i + k] = f.coeff(m - k);
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for k in 0..=n {
            row[i + k] = g.coeff(n - k);
        }
        rows.push(row);
    }
    rows
}

/// Resultant of two univariate polynomials as the Sylvester determinant.
pub fn resultant_univ<R: Ring>(f: &Poly<R>, g: &Poly<R>) -> Result<R> {
    let zero = f.zero_coeff().clone();
    match (f.is_zero(), g.is_zero()) {
        (true, true) => return Err(Error::UndefinedResultant),
        (true, false) | (false, true) => return Ok(zero),
        _ => {}
    }
    if f.deg() == 0 && g.deg() == 0 {
        return Ok(zero.one_like());
    }
    Ok(det_bareiss(sylvester_matrix(f, g), &zero))
}

fn check_cubic<R: Ring>(f: &MPoly<R>) -> Result<()> {
    if f.nvars() != 3 {
        return Err(Error::DegreeMismatch(format!("expected 3 variables, got {}", f.nvars())));
    }
    f.require_homogeneous(3)
}

/// Resultant of three ternary cubics by the degree-7 Macaulay matrix divided
/// by its extraneous 9x9 minor, normalized so that `Res(x^3, y^3, z^3) = 1`.
pub fn macaulay_resultant_cubics<R: Ring>(f1: &MPoly<R>, f2: &MPoly<R>, f3: &MPoly<R>) -> Result<R> {
    for f in [f1, f2, f3] {
        check_cubic(f)?;
    }
    let zero = f1.zero_coeff().clone();
    let fs = [f1, f2, f3];
    let (full, minor) = macaulay_matrices(&fs);
    let dm = det_bareiss(minor.clone(), &zero);
    if !dm.is_zero() {
        let d = det_bareiss(full, &zero);
        return d.exact_div(&dm).ok_or_else(|| Error::NormalizationFailed("Macaulay quotient".into()));
    }
    // Degenerate extraneous minor: perturb f_i + t x_i^3 and take the value at t = 0.
    let pz = Poly::zero(zero.clone());
    let t = Poly::t(&zero);
    let lifted: Vec<MPoly<Poly<R>>> = fs
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let mut g = f.map(pz.clone(), |c| Poly::constant(c.clone()));
            let mut e = vec![0; 3];
            e[i] = 3;
            g.add_term(Monomial(e), t.clone());
            g
        })
        .collect();
    let (full_t, minor_t) = macaulay_matrices(&[&lifted[0], &lifted[1], &lifted[2]]);
    let num = det_bareiss(full_t, &pz);
    let den = det_bareiss(minor_t, &pz);
    let q = num.exact_div_poly(&den).ok_or_else(|| Error::NormalizationFailed("perturbed Macaulay quotient".into()))?;
    Ok(q.coeff(0))
}

fn macaulay_matrices<R: Ring>(fs: &[&MPoly<R>; 3]) -> (Vec<Vec<R>>, Vec<Vec<R>>) {
    let zero = fs[0].zero_coeff().clone();
    let monos = monomials_of_degree(3, 7);
    let index = |m: &Monomial| monos.iter().position(|x| x == m).expect("degree-7 monomial");
    let mut full = Vec::with_capacity(monos.len());
    let mut extraneous = Vec::new();
    for (row_idx, m) in monos.iter().enumerate() {
        let i = (0..3).find(|&i| m.0[i] >= 3).expect("some exponent is at least 3");
        let mut shift = m.0.clone();
        shift[i] -= 3;
        let mut row = vec![zero.clone(); monos.len()];
        for (mono, c) in fs[i].terms() {
            row[index(&mono.mul(&Monomial(shift.clone())))] = c.clone();
        }
        full.push(row);
        if m.0.iter().filter(|&&e| e >= 3).count() >= 2 {
            extraneous.push(row_idx);
        }
    }
    let minor = extraneous
        .iter()
        .map(|&r| extraneous.iter().map(|&c| full[r][c].clone()).collect())
        .collect();
    (full, minor)
}
