//! Syzygetic quadruples of bitangents and the Frobenius permutation.
//!
//! Three bitangents belong to a syzygetic quadruple exactly when some conic
//! `Q` cuts each of them in its contact divisor, i.e. `Q|_l` is proportional
//! to the contact quadratic of `l`. Those are two linear conditions per line
//! on the six conic coefficients, which handle double contacts without any
//! special casing.

use std::collections::HashMap;

use rayon::prelude::*;

use super::bitangents::{line_key, normalize_line, Bitangent};
use crate::error::{Error, Result};
use crate::exactalg::{kernel, FiniteField, FqElem, Ring};
use crate::permgrp::Perm;
use crate::thetacomb::IncidenceStructure;

const CONIC_MONOMIALS: [[u32; 3]; 6] = [[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]];

fn conic_monomial_values(pt: &[FqElem; 3]) -> [FqElem; 6] {
    CONIC_MONOMIALS.map(|e| (0..3).fold(pt[0].one_like(), |acc, k| acc * pt[k].pow_u64(e[k] as u64)))
}

/// The two linear forms on conic coefficients expressing `Q|_l ∝ q_l`.
fn conic_rows(b: &Bitangent) -> [Vec<FqElem>; 2] {
    let [pp, rr] = &b.param;
    let sum: [FqElem; 3] = std::array::from_fn(|k| pp[k].clone() + rr[k].clone());
    let (a, c, s) = (conic_monomial_values(pp), conic_monomial_values(rr), conic_monomial_values(&sum));
    let [beta, gamma] = &b.quad;
    let row_b = (0..6).map(|m| s[m].clone() - a[m].clone() - c[m].clone() - beta.clone() * a[m].clone()).collect();
    let row_c = (0..6).map(|m| c[m].clone() - gamma.clone() * a[m].clone()).collect();
    [row_b, row_c]
}

fn dot(row: &[FqElem], q: &[FqElem]) -> FqElem {
    row.iter().zip(q).fold(q[0].zero_like(), |acc, (a, b)| acc + a.clone() * b.clone())
}

fn fourth_line(rows: &[[Vec<FqElem>; 2]], t: [usize; 3]) -> Result<Option<usize>> {
    let m: Vec<Vec<FqElem>> = t.iter().flat_map(|&i| rows[i].iter().cloned()).collect();
    let zero = m[0][0].zero_like();
    let ker = kernel(&m, 6, &zero);
    match ker.len() {
        0 => Ok(None),
        1 => {
            let q = &ker[0];
            let hits: Vec<usize> = (0..rows.len())
                .filter(|j| !t.contains(j))
                .filter(|&j| rows[j].iter().all(|r| dot(r, q).is_zero()))
                .collect();
            match hits.as_slice() {
                [j] => Ok(Some(*j)),
                _ => Err(Error::DegenerateConic(t)),
            }
        }
        _ => Err(Error::DegenerateConic(t)),
    }
}

/// The syzygetic quadruples among the bitangents, labelled by their index.
pub fn syzygetic_structure(lines: &[Bitangent]) -> Result<IncidenceStructure> {
    let n = lines.len();
    let rows: Vec<[Vec<FqElem>; 2]> = lines.iter().map(conic_rows).collect();
    let triples: Vec<[usize; 3]> = (0..n).flat_map(|a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| [a, b, c]))).collect();
    let found: Vec<(usize, [usize; 3], Option<usize>)> = triples
        .par_iter()
        .enumerate()
        .map(|(i, &t)| fourth_line(&rows, t).map(|f| (i, t, f)))
        .collect::<Result<Vec<_>>>()?;
    let mut quads = Vec::new();
    for (_, t, f) in found {
        if let Some(d) = f {
            // The quadruple is found from each of its four triples; keep the one
            // whose missing member is the largest label.
            if d > t[2] {
                quads.push([t[0], t[1], t[2], d]);
            }
        }
    }
    IncidenceStructure::new(n, quads)
}

/// The permutation `i ↦ j` with `Frob(line_i) = line_j`.
pub fn frobenius_on_bitangents(lines: &[Bitangent]) -> Result<Perm> {
    let index: HashMap<Vec<u64>, usize> = lines.iter().enumerate().map(|(i, b)| (line_key(&b.line), i)).collect();
    let images = lines
        .iter()
        .map(|b| {
            let fl = normalize_line(b.line.clone().map(|c| c.frobenius())).ok_or(Error::NotFrobeniusClosed)?;
            index.get(&line_key(&fl)).copied().ok_or(Error::NotFrobeniusClosed)
        })
        .collect::<Result<Vec<_>>>()?;
    Perm::from_images(images)
}
