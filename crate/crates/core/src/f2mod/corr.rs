use serde::{Deserialize, Serialize};

use super::bits::{F2Mat, F2Vec};
use super::module::GModule;
use crate::error::{Error, Result};
use crate::permgrp::Perm;

/// Largest module dimension for which the element set is materialized as
/// the index set of a correspondence.
pub const SURJECTION_DIM_CAP: usize = 16;

/// An integer matrix `τ: Z^Δ → Z^Δ'`, stored with one row per element of `Δ'`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Correspondence {
    pub source: usize,
    pub target: usize,
    pub entries: Vec<Vec<i64>>,
}

impl Correspondence {
    pub fn new(source: usize, entries: Vec<Vec<i64>>) -> Result<Self> {
        if entries.iter().any(|r| r.len() != source) {
            return Err(Error::DegreeMismatch(format!("rows must have {source} entries")));
        }
        Ok(Correspondence { source, target: entries.len(), entries })
    }

    /// Matrix of the permutation `δ ↦ g(δ)` on `Z^Δ`.
    pub fn from_perm(g: &Perm) -> Self {
        let n = g.degree();
        let mut entries = vec![vec![0; n]; n];
        for i in 0..n {
            entries[g.apply(i)][i] = 1;
        }
        Correspondence { source: n, target: n, entries }
    }

    /// The induced map `F_2^Δ → F_2^Δ'`.
    pub fn tau_star(&self) -> F2Mat {
        let rows = self
            .entries
            .iter()
            .map(|r| {
                let idx: Vec<usize> = r.iter().enumerate().filter(|(_, &x)| x.rem_euclid(2) == 1).map(|(i, _)| i).collect();
                F2Vec::from_indices(self.source, &idx)
            })
            .collect();
        F2Mat::from_rows(self.source, rows)
    }

    /// The transposed map `F_2^Δ' → F_2^Δ`.
    pub fn tau_upper_star(&self) -> F2Mat {
        self.tau_star().transpose()
    }

    pub fn add_scaled(&self, k: i64, other: &Correspondence) -> Result<Self> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::DegreeMismatch("correspondence shapes differ".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + k * y).collect()).collect();
        Ok(Correspondence { source: self.source, target: self.target, entries })
    }
}

/// The tautological surjection `(Z/2)^{M} ↠ M` sending the basis vector of
/// an element to that element. Elements are indexed by the integer whose
/// bits are their coordinates.
pub fn correspondence_from_surjection(m: &GModule) -> Result<Correspondence> {
    let d = m.dim();
    if d > SURJECTION_DIM_CAP {
        return Err(Error::TooLarge { what: "module dimension for element enumeration", size: d as u128, limit: SURJECTION_DIM_CAP as u128 });
    }
    let cols = 1usize << d;
    let entries = (0..d).map(|i| (0..cols).map(|j| ((j >> i) & 1) as i64).collect()).collect();
    Correspondence::new(cols, entries)
}

/// The permutations of the element set of `m` induced by its generators.
pub fn element_permutations(m: &GModule) -> Result<Vec<Perm>> {
    let d = m.dim();
    if d > 8 {
        return Err(Error::TooLarge { what: "module dimension for element permutations", size: d as u128, limit: 8 });
    }
    m.actions()
        .iter()
        .map(|a| Perm::from_images((0..1u64 << d).map(|j| a.mul_vec(&F2Vec::from_u64(d, j)).to_u64() as usize).collect()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2mod::perm_module;
    use proptest::prelude::*;

    #[test]
    fn surjection_of_f2() {
        let m = GModule::from_matrices(1, vec![F2Mat::identity(1)]).unwrap();
        let c = correspondence_from_surjection(&m).unwrap();
        assert_eq!(c.entries, vec![vec![0, 1]]);
        assert_eq!(c.tau_star().rank(), 1);
    }

    #[test]
    fn surjection_is_equivariant() {
        let g = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let m = perm_module(&[g], 3).unwrap();
        let c = correspondence_from_surjection(&m).unwrap();
        let t = c.tau_star();
        assert_eq!(t.rank(), 3);
        let p = &element_permutations(&m).unwrap()[0];
        let pm = Correspondence::from_perm(p).tau_star();
        assert_eq!(t.mul(&pm), m.actions()[0].mul(&t));
    }

    #[test]
    fn cap_is_enforced() {
        let m = GModule::from_matrices(17, vec![]).unwrap();
        assert!(matches!(correspondence_from_surjection(&m), Err(Error::TooLarge { .. })));
    }

    proptest! {
        #[test]
        fn divisibility_by_two(a in proptest::collection::vec(proptest::collection::vec(-5i64..5, 4), 3),
                               mu in proptest::collection::vec(proptest::collection::vec(-5i64..5, 4), 3)) {
            let t = Correspondence::new(4, a).unwrap();
            let m = Correspondence::new(4, mu).unwrap();
            let t2 = t.add_scaled(2, &m).unwrap();
            prop_assert_eq!(t.tau_star(), t2.tau_star());
            prop_assert_eq!(t.tau_upper_star(), t2.tau_upper_star());
        }
    }
}
