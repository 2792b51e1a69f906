use std::collections::HashMap;

use serde::Serialize;

use super::forms::{quad_solve, DegTwo, QuadForm, SymplecticSpace};
use crate::error::{Error, Result};
use crate::permgrp::{Perm, PermGroup};

/// A finite set of labels `0..n` with a family of 4-element subsets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IncidenceStructure {
    pub n: usize,
    /// Sorted quadruples, sorted lexicographically.
    pub sigma: Vec<[usize; 4]>,
}

impl IncidenceStructure {
    pub fn new(n: usize, quads: impl IntoIterator<Item = [usize; 4]>) -> Result<Self> {
        let mut sigma: Vec<[usize; 4]> = Vec::new();
        for mut q in quads {
            q.sort_unstable();
            if q[3] >= n || q.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Invalid(format!("bad quadruple {q:?}")));
            }
            sigma.push(q);
        }
        sigma.sort_unstable();
        sigma.dedup();
        Ok(IncidenceStructure { n, sigma })
    }

    /// Applies a relabeling `i ↦ map[i]`.
    pub fn relabel(&self, map: &[usize]) -> Self {
        IncidenceStructure::new(self.n, self.sigma.iter().map(|q| q.map(|i| map[i]))).expect("bijective relabeling")
    }

    /// Number of quadruples through each label.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for q in &self.sigma {
            for &i in q {
                d[i] += 1;
            }
        }
        d
    }
}

/// The model `(𝚫, 𝚺)` built from odd quadratic forms on `F_2^{2g}`.
#[derive(Debug, Clone, Serialize)]
pub struct CanonicalTheta {
    pub genus: u32,
    #[serde(skip)]
    pub space: SymplecticSpace,
    #[serde(skip)]
    pub base: QuadForm,
    /// Offset `v` of each odd form `q0 + e(v, ·)`, increasing.
    pub offsets: Vec<u32>,
    pub sigma: Vec<[usize; 4]>,
    pub generators: Vec<Perm>,
    #[serde(skip)]
    label_of: HashMap<u32, usize>,
}

impl CanonicalTheta {
    pub fn build(genus: u32) -> Result<Self> {
        if !(2..=4).contains(&genus) {
            return Err(Error::GenusOutOfRange(genus));
        }
        let space = SymplecticSpace::new(genus);
        let base = QuadForm::base_odd(space);
        let offsets: Vec<u32> = (0..space.size() as u32).filter(|&v| base.eval(v) == 0).collect();
        let label_of: HashMap<u32, usize> = offsets.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut sigma = Vec::new();
        let n = offsets.len();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let v = offsets[i] ^ offsets[j] ^ offsets[k];
                    if let Some(&l) = label_of.get(&v) {
                        if l > k {
                            sigma.push([i, j, k, l]);
                        }
                    }
                }
            }
        }
        let mut theta = CanonicalTheta { genus, space, base, offsets, sigma, generators: Vec::new(), label_of };
        theta.generators = theta.transvection_axes().iter().map(|&a| theta.odd_permutation(a)).collect();
        Ok(theta)
    }

    /// The vectors `a` of the generating transvections: the standard basis,
    /// the sum of all basis vectors, and `e_0 + e_1`.
    ///
    /// The first `2g + 1` transvections all preserve the form
    /// `Σ (x_i x_{i+g} + x_i + x_{i+g})`, so they only generate an orthogonal
    /// group; the last one has value 0 on that form.
    pub fn transvection_axes(&self) -> Vec<u32> {
        let d = self.space.dim();
        let mut v: Vec<u32> = (0..d).map(|i| 1 << i).collect();
        v.push((1 << d) - 1);
        v.push(0b11);
        v
    }

    /// Offset of `q ∘ T_a` where `q = q0 + e(v, ·)`.
    pub fn transvect_offset(&self, a: u32, v: u32) -> u32 {
        let c = 1 ^ self.base.eval(a) ^ self.space.pair(v, a);
        if c == 1 {
            v ^ a
        } else {
            v
        }
    }

    fn odd_permutation(&self, a: u32) -> Perm {
        let img = self.offsets.iter().map(|&v| self.label_of[&self.transvect_offset(a, v)]).collect();
        Perm::from_images(img).expect("transvections permute odd forms")
    }

    pub fn size(&self) -> usize {
        self.offsets.len()
    }

    pub fn label(&self, offset: u32) -> Option<usize> {
        self.label_of.get(&offset).copied()
    }

    pub fn incidence(&self) -> IncidenceStructure {
        IncidenceStructure { n: self.size(), sigma: self.sigma.clone() }
    }

    pub fn group(&self) -> Result<PermGroup> {
        PermGroup::new(self.size(), self.generators.clone())
    }

    /// Ordering of all `2^{2g}` forms `q0 + e(v, ·)`: odd labels first in
    /// label order, then the even forms by increasing `v`.
    pub fn all_forms_order(&self) -> Vec<u32> {
        let mut order = self.offsets.clone();
        order.extend((0..self.space.size() as u32).filter(|&v| self.base.eval(v) == 1));
        order
    }

    /// The generators acting on all forms, in [`Self::all_forms_order`].
    pub fn all_forms_generators(&self) -> Vec<Perm> {
        let order = self.all_forms_order();
        let pos: HashMap<u32, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        self.transvection_axes()
            .iter()
            .map(|&a| Perm::from_images(order.iter().map(|&v| pos[&self.transvect_offset(a, v)]).collect()).unwrap())
            .collect()
    }

    /// Stabilizer of the `k`-th even form, acting on the odd labels.
    pub fn even_form_stabilizer(&self, k: usize) -> Result<PermGroup> {
        let n = self.size();
        let big = PermGroup::new(self.space.size(), self.all_forms_generators())?;
        let stab = big.point_stabilizer(n + k)?;
        stab.restrict(n)
    }

    /// Whether a permutation of the labels maps `𝚺` onto itself.
    pub fn preserves_sigma(&self, g: &Perm) -> bool {
        let inc = self.incidence();
        inc.relabel(&g.images()) == inc
    }

    /// Labels `θ12, θ34, θ56` with
    /// `θ1+θ2+θ34+θ56 = θ3+θ4+θ12+θ56 = θ5+θ6+θ12+θ34 = 0`.
    pub fn six_theta_resolution(&self, thetas: [usize; 6]) -> Result<(usize, usize, usize)> {
        if self.genus < 3 {
            return Err(Error::LemmaHypotheses("genus at least 3 required".into()));
        }
        if let Some(&t) = thetas.iter().find(|&&t| t >= self.size()) {
            return Err(Error::Invalid(format!("label {t} out of range")));
        }
        let off: Vec<u32> = thetas.iter().map(|&t| self.offsets[t]).collect();
        if off.iter().fold(0, |a, b| a ^ b) != 0 {
            return Err(Error::OffsetsNonzeroSum);
        }
        let f = DegTwo::from_table(self.space.dim(), &self.base.table)?;
        let (v1, v2) = (off[0] ^ off[1], off[2] ^ off[3]);
        let x = quad_solve(&f, &[v1, v2])?;
        let l = |v: u32| self.label(v).expect("zero of the base form is an odd label");
        Ok((l(x ^ v2), l(x ^ v1), l(x)))
    }

    /// For distinct labels `a, b`: the quadruples of `𝚺` containing both.
    pub fn quads_through_pair(&self, a: usize, b: usize) -> Vec<[usize; 4]> {
        self.sigma.iter().filter(|q| q.contains(&a) && q.contains(&b)).copied().collect()
    }
}

/// `(2^{g-3}/3)(2^{2g}-1)(2^{2g-2}-1)(2^{g-2}-1)` for `g >= 2`.
pub fn sigma_count_formula(genus: u32) -> u64 {
    assert!(genus >= 2);
    let g = genus;
    let a = ((1u128 << (2 * g)) - 1) * ((1u128 << (2 * g - 2)) - 1) * ((1u128 << (g - 2)) - 1);
    ((a << g) / 24) as u64
}
