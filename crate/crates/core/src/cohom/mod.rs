//! First cohomology of finite groups with coefficients in `F_2`-modules.
//!
//! A 1-cocycle is determined by its values on generators. The engine walks
//! the Cayley graph of the group, expressing every `f(w)` as a linear
//! function of those unknown values, and collects one linear condition per
//! edge that closes a cycle.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::f2mod::{AmbientKind, F2Mat, F2Subspace, F2Vec, GModule};
use crate::permgrp::{Perm, PermGroup, ENUMERATION_CAP};

/// Largest value of `dim M · #generators` the engine accepts.
pub const UNKNOWN_CAP: usize = 128;
/// Largest value of `|G| · dim M` the engine accepts.
pub const STORAGE_CAP: u64 = 12_000_000;

/// `H^1(C_n, M) = ker(1 + σ + … + σ^{n-1}) / im(σ - 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicH1 {
    pub dim: usize,
    /// Values `f(σ)` of cocycles whose classes form a basis.
    #[serde(serialize_with = "hex_vecs")]
    pub basis: Vec<F2Vec>,
}

fn hex_vecs<S: serde::Serializer>(v: &[F2Vec], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(F2Vec::to_hex))
}

fn hex_tables<S: serde::Serializer>(v: &[Vec<F2Vec>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|t| t.iter().map(F2Vec::to_hex).collect::<Vec<_>>()))
}

/// Complement of `sub` inside `space`, as echelon vectors reduced modulo `sub`.
fn complement(space: &F2Subspace, sub: &F2Subspace) -> Vec<F2Vec> {
    let reduced: Vec<F2Vec> = space.basis().iter().map(|v| sub.reduce(v)).collect();
    F2Subspace::span(space.ambient_dim(), reduced).basis().to_vec()
}

pub fn h1_cyclic(sigma: &F2Mat, n: u64) -> Result<CyclicH1> {
    let d = sigma.nrows();
    if sigma.ncols() != d {
        return Err(Error::DegreeMismatch("action matrix must be square".into()));
    }
    if n == 0 || !sigma.pow(n).is_identity() {
        return Err(Error::RelationViolated(format!("generator does not have order dividing {n}")));
    }
    let id = F2Mat::identity(d);
    let mut norm = F2Mat::zeros(d, d);
    let mut p = id.clone();
    for _ in 0..n {
        norm = norm.add(&p);
        p = p.mul(sigma);
    }
    let ker = F2Subspace::span(d, norm.kernel());
    let im = F2Subspace::span(d, sigma.add(&id).transpose().rows().to_vec());
    let basis = complement(&ker, &im);
    Ok(CyclicH1 { dim: basis.len(), basis })
}

/// Square matrix of size at most 64 with rows as bitmasks.
type Small = Vec<u64>;

fn small_from(m: &F2Mat) -> Small {
    m.rows().iter().map(F2Vec::to_u64).collect()
}

fn small_mul(a: &[u64], b: &[u64]) -> Small {
    a.iter()
        .map(|&r| {
            let mut acc = 0u64;
            let mut bits = r;
            while bits != 0 {
                let c = bits.trailing_zeros() as usize;
                acc ^= b[c];
                bits &= bits - 1;
            }
            acc
        })
        .collect()
}

/// Incrementally maintained echelon basis of vectors in `F_2^{≤128}`.
#[derive(Clone, Default)]
struct Echelon {
    rows: Vec<Option<u128>>,
    count: usize,
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: vec![None; 128], count: 0 }
    }

    fn insert(&mut self, mut x: u128) -> bool {
        while x != 0 {
            let p = 127 - x.leading_zeros() as usize;
            match self.rows[p] {
                Some(r) => x ^= r,
                None => {
                    self.rows[p] = Some(x);
                    self.count += 1;
                    return true;
                }
            }
        }
        false
    }

    fn vectors(&self, len: usize) -> Vec<F2Vec> {
        self.rows.iter().flatten().map(|&r| u128_to_vec(len, r)).collect()
    }
}

fn u128_to_vec(len: usize, x: u128) -> F2Vec {
    let idx: Vec<usize> = (0..len).filter(|&i| x >> i & 1 == 1).collect();
    F2Vec::from_indices(len, &idx)
}

fn vec_to_u128(v: &F2Vec) -> u128 {
    v.ones_iter().fold(0u128, |acc, i| acc | 1u128 << i)
}

/// Space of 1-cocycles of a group acting on a module, with every cocycle
/// value available as a linear function of the values on generators.
pub struct CocycleSpace {
    group: PermGroup,
    gens: Vec<Perm>,
    d: usize,
    /// `act[idx * d + r]`: row `r` of the action matrix of element `idx`.
    act: Vec<u64>,
    /// `sym[idx * d + r]`: row `r` of the symbolic value at element `idx`.
    sym: Vec<u128>,
    z1: F2Subspace,
    b1: F2Subspace,
}

impl std::fmt::Debug for CocycleSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CocycleSpace").field("generators", &self.gens.len()).field("dim", &self.d).field("z1", &self.z1.dim()).field("b1", &self.b1.dim()).finish()
    }
}

impl CocycleSpace {
    /// Builds the cocycle space for the group generated by `gens` acting on
    /// `F_2^d` through `mats`; the assignment must extend to a homomorphism.
    pub fn compute(gens: &[Perm], mats: &[F2Mat]) -> Result<CocycleSpace> {
        if gens.is_empty() || gens.len() != mats.len() {
            return Err(Error::DegreeMismatch("one action matrix per generator is required".into()));
        }
        let n = gens[0].degree();
        let d = mats[0].nrows();
        let k = gens.len();
        if mats.iter().any(|m| m.nrows() != d || m.ncols() != d) {
            return Err(Error::DegreeMismatch("action matrices must be square of equal size".into()));
        }
        if d > 64 || k * d > UNKNOWN_CAP {
            return Err(Error::TooLarge { what: "cocycle unknowns", size: (k * d) as u128, limit: UNKNOWN_CAP as u128 });
        }
        let group = PermGroup::new(n, gens.to_vec())?;
        let order = group.order_u64().filter(|&o| o <= ENUMERATION_CAP).ok_or_else(|| Error::TooLarge {
            what: "group order",
            size: group.order().try_into().unwrap_or(u128::MAX),
            limit: ENUMERATION_CAP as u128,
        })?;
        let dd = d.max(1) as u64;
        if order * dd > STORAGE_CAP {
            return Err(Error::TooLarge { what: "group order times module dimension", size: (order * dd) as u128, limit: STORAGE_CAP as u128 });
        }
        let actions: Vec<Small> = mats.iter().map(small_from).collect();
        let o = order as usize;
        let mut sym = vec![0u128; o * d];
        let mut act: Vec<u64> = vec![0; o * d];
        let mut seen = vec![false; o];
        let ident = group.index_of(&Perm::identity(n)).expect("identity") as usize;
        seen[ident] = true;
        for r in 0..d {
            act[ident * d + r] = 1 << r;
        }
        let mut constraints = Echelon::new();
        let mut queue = std::collections::VecDeque::from([(ident, Perm::identity(n))]);
        while let Some((w, wp)) = queue.pop_front() {
            let aw: Small = act[w * d..(w + 1) * d].to_vec();
            let fw: Vec<u128> = sym[w * d..(w + 1) * d].to_vec();
            for (i, s) in gens.iter().enumerate() {
                let np = wp.compose(s);
                let v = group.index_of(&np).expect("closed under generators") as usize;
                let a_new = small_mul(&aw, &actions[i]);
                let f_new: Vec<u128> = (0..d).map(|r| fw[r] ^ ((aw[r] as u128) << (i * d))).collect();
                if seen[v] {
                    if act[v * d..(v + 1) * d] != a_new[..] {
                        return Err(Error::RelationViolated("action matrices do not define a homomorphism".into()));
                    }
                    for r in 0..d {
                        constraints.insert(sym[v * d + r] ^ f_new[r]);
                    }
                } else {
                    seen[v] = true;
                    act[v * d..(v + 1) * d].copy_from_slice(&a_new);
                    sym[v * d..(v + 1) * d].copy_from_slice(&f_new);
                    queue.push_back((v, np));
                }
            }
        }
        let unknowns = k * d;
        let cons = constraints.vectors(unknowns);
        let z1 = if cons.is_empty() { F2Subspace::full(unknowns) } else { F2Subspace::span(unknowns, F2Mat::from_rows(unknowns, cons).kernel()) };
        let b1_gens: Vec<F2Vec> = (0..d)
            .map(|j| {
                let mut x = 0u128;
                for (i, a) in actions.iter().enumerate() {
                    for (r, row) in a.iter().enumerate() {
                        if (row >> j & 1 == 1) != (r == j) {
                            x |= 1u128 << (i * d + r);
                        }
                    }
                }
                u128_to_vec(unknowns, x)
            })
            .collect();
        let b1 = F2Subspace::span(unknowns, b1_gens);
        debug_assert!(z1.contains_space(&b1));
        Ok(CocycleSpace { group, gens: gens.to_vec(), d, act, sym, z1, b1 })
    }

    pub fn module_dim(&self) -> usize {
        self.d
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn z1(&self) -> &F2Subspace {
        &self.z1
    }

    pub fn b1(&self) -> &F2Subspace {
        &self.b1
    }

    pub fn h1_dim(&self) -> usize {
        self.z1.dim() - self.b1.dim()
    }

    /// Cocycles (as values on the generators, concatenated) whose classes
    /// form a basis of `H^1`.
    pub fn h1_basis(&self) -> Vec<F2Vec> {
        complement(&self.z1, &self.b1)
    }

    /// Splits a concatenated vector into per-generator values.
    pub fn split(&self, z: &F2Vec) -> Vec<F2Vec> {
        (0..self.gens.len()).map(|i| z.slice(i * self.d, (i + 1) * self.d)).collect()
    }

    fn index(&self, g: &Perm) -> Result<usize> {
        self.group.index_of(g).map(|i| i as usize).ok_or(Error::OutsideGroup { generator: 0 })
    }

    /// Action matrix of a group element.
    pub fn action(&self, g: &Perm) -> Result<F2Mat> {
        let i = self.index(g)?;
        let rows = (0..self.d).map(|r| F2Vec::from_u64(self.d, self.act[i * self.d + r])).collect();
        Ok(F2Mat::from_rows(self.d, rows))
    }

    fn eval_sym(&self, idx: usize, z: u128) -> u64 {
        let mut out = 0u64;
        for r in 0..self.d {
            if (self.sym[idx * self.d + r] & z).count_ones() & 1 == 1 {
                out |= 1 << r;
            }
        }
        out
    }

    /// Value at `g` of the cocycle with generator values `z`.
    pub fn value(&self, z: &F2Vec, g: &Perm) -> Result<F2Vec> {
        Ok(F2Vec::from_u64(self.d, self.eval_sym(self.index(g)?, vec_to_u128(z))))
    }

    /// The cocycles whose restriction to `⟨h⟩` is a coboundary, for each `h`.
    pub fn restriction_kernel(&self, hs: &[Perm]) -> Result<F2Subspace> {
        let zb = self.z1.basis().to_vec();
        let m = zb.len();
        let rows: Vec<Vec<F2Vec>> = hs
            .par_iter()
            .map(|h| -> Result<Vec<F2Vec>> {
                let a = self.action(h)?;
                let im = F2Subspace::span(self.d, a.add(&F2Mat::identity(self.d)).transpose().rows().to_vec());
                let idx = self.index(h)?;
                let vals: Vec<F2Vec> = zb.iter().map(|z| im.reduce(&F2Vec::from_u64(self.d, self.eval_sym(idx, vec_to_u128(z))))).collect();
                let mut out = Vec::with_capacity(self.d);
                for r in 0..self.d {
                    let idx: Vec<usize> = (0..m).filter(|&j| vals[j].get(r)).collect();
                    if !idx.is_empty() {
                        out.push(F2Vec::from_indices(m, &idx));
                    }
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        let cons: Vec<F2Vec> = F2Subspace::span(m, rows.into_iter().flatten().collect()).basis().to_vec();
        let coeffs = if cons.is_empty() { F2Subspace::full(m).basis().to_vec() } else { F2Mat::from_rows(m, cons).kernel() };
        let unknowns = self.gens.len() * self.d;
        Ok(F2Subspace::span(unknowns, coeffs.iter().map(|c| self.z1.combine(c)).collect()))
    }
}

/// Result of an `H^1` computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct H1Report {
    pub dim: usize,
    pub z1_dim: usize,
    pub b1_dim: usize,
    pub generators: Vec<Perm>,
    /// Per basis class, the cocycle values on the generators.
    #[serde(serialize_with = "hex_tables")]
    pub basis: Vec<Vec<F2Vec>>,
}

/// Generators of `G` paired with the action matrices of `M`.
fn acting_data(g: &PermGroup, m: &GModule) -> Result<(Vec<Perm>, Vec<F2Mat>)> {
    match m.kind() {
        AmbientKind::Permutation => {
            let mut gens = g.small_generating_set(0)?;
            if gens.is_empty() {
                gens.push(Perm::identity(g.degree()));
            }
            let r = m.restrict_to(&gens)?;
            Ok((gens, r.actions().to_vec()))
        }
        AmbientKind::Matrix => {
            let mut gens = g.generators().to_vec();
            let mut mats = m.actions().to_vec();
            if gens.len() != mats.len() {
                return Err(Error::DegreeMismatch("matrix module needs one matrix per group generator".into()));
            }
            if gens.is_empty() {
                gens.push(Perm::identity(g.degree()));
                mats.push(F2Mat::identity(m.dim()));
            }
            Ok((gens, mats))
        }
    }
}

fn report(cs: &CocycleSpace, classes: Vec<F2Vec>) -> H1Report {
    H1Report {
        dim: classes.len(),
        z1_dim: cs.z1().dim(),
        b1_dim: cs.b1().dim(),
        generators: cs.generators().to_vec(),
        basis: classes.iter().map(|z| cs.split(z)).collect(),
    }
}

pub fn h1_group(g: &PermGroup, m: &GModule) -> Result<H1Report> {
    let (gens, mats) = acting_data(g, m)?;
    let cs = CocycleSpace::compute(&gens, &mats)?;
    Ok(report(&cs, cs.h1_basis()))
}

/// Dimension of `∩_C ker(H^1(G, M) → H^1(C, M))` over all cyclic `C ≤ G`,
/// with representative cocycles.
pub fn sha1_bound(g: &PermGroup, m: &GModule) -> Result<H1Report> {
    let (gens, mats) = acting_data(g, m)?;
    let cs = CocycleSpace::compute(&gens, &mats)?;
    sha1_from_space(&cs)
}

pub fn sha1_from_space(cs: &CocycleSpace) -> Result<H1Report> {
    let cyclic = cs.group().cyclic_subgroups(None)?;
    let k = cs.restriction_kernel(&cyclic)?;
    debug_assert!(k.contains_space(cs.b1()));
    let classes = complement(&k, cs.b1());
    Ok(report(cs, classes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2mod::perm_module;

    fn mat(rows: &[&[u8]]) -> F2Mat {
        F2Mat::from_rows(rows[0].len(), rows.iter().map(|r| F2Vec::from_bits(r)).collect())
    }

    #[test]
    fn cyclic_examples() {
        assert_eq!(h1_cyclic(&F2Mat::identity(1), 2).unwrap().dim, 1);
        let swap = mat(&[&[0, 1], &[1, 0]]);
        assert_eq!(h1_cyclic(&swap, 2).unwrap().dim, 0);
        assert!(matches!(h1_cyclic(&swap, 3), Err(Error::RelationViolated(_))));
        // Companion matrix of x^6 + x^5 + x^4 + x^3 + x^2 + x + 1: order 7, no fixed vector.
        let mut rows: Vec<Vec<u8>> = vec![vec![0; 6]; 6];
        for (i, row) in rows.iter_mut().enumerate().skip(1) {
            row[i - 1] = 1;
        }
        for row in rows.iter_mut() {
            row[5] = 1;
        }
        let c7 = mat(&rows.iter().map(|r| r.as_slice()).collect::<Vec<_>>());
        assert!(c7.pow(7).is_identity());
        assert_eq!(h1_cyclic(&c7, 7).unwrap().dim, 0);
    }

    #[test]
    fn general_engine_small_cases() {
        let c2 = Perm::from_cycles(2, &[&[0, 1]]).unwrap();
        let g = PermGroup::new(2, vec![c2.clone()]).unwrap();
        let triv = GModule::from_matrices(1, vec![F2Mat::identity(1)]).unwrap();
        assert_eq!(h1_group(&g, &triv).unwrap().dim, 1);
        assert_eq!(sha1_bound(&g, &triv).unwrap().dim, 0);
        let zero = GModule::from_matrices(0, vec![F2Mat::identity(0)]).unwrap();
        assert_eq!(h1_group(&g, &zero).unwrap().dim, 0);
        let s3 = PermGroup::new(3, vec![Perm::from_cycles(3, &[&[0, 1]]).unwrap(), Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap()]).unwrap();
        let m = perm_module(s3.generators(), 3).unwrap();
        // Shapiro: H^1(S3, F2[S3/S2]) = H^1(S2, F2) = F2.
        assert_eq!(h1_group(&s3, &m).unwrap().dim, 1);
    }

    #[test]
    fn non_homomorphism_is_rejected() {
        let c2 = Perm::from_cycles(2, &[&[0, 1]]).unwrap();
        let bad = CocycleSpace::compute(&[c2], &[mat(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]])]);
        assert!(matches!(bad, Err(Error::RelationViolated(_))));
    }

    #[test]
    fn action_is_recovered_from_symbolic_values() {
        let a = Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let b = Perm::from_cycles(4, &[&[0, 2]]).unwrap();
        let m = perm_module(&[a.clone(), b.clone()], 4).unwrap();
        let cs = CocycleSpace::compute(&[a.clone(), b.clone()], m.actions()).unwrap();
        let ab = a.compose(&b);
        assert_eq!(cs.action(&ab).unwrap(), m.action_of(&ab).unwrap());
    }
}
