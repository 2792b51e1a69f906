//! Descent bookkeeping for the 2-torsion of the Jacobian of a plane quartic.
//!
//! A subgroup `G` of the symmetry group of the 28 odd theta characteristics
//! acts on `F_2^28`. Inside it sit the all-ones line, the span `J̃` of the
//! twelve-element sets attached to pairs, the span `R` of the syzygetic
//! quadruples and the even-weight space `E`. Dualizing gives the exact
//! sequence `0 → J[2] → E^∨ → R^∨`, whose fixed points under `G` and under
//! decomposition groups feed the local and global Selmer bookkeeping below.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::f2mod::{perm_module, F2Subspace, F2Vec, GModule, ModuleMap};
use crate::permgrp::{Perm, PermGroup, ENUMERATION_CAP};
use crate::thetacomb::CanonicalTheta;

/// The modules `E`, `R`, `E^∨`, `R^∨`, `J[2]` for a group acting on the
/// canonical labels, together with `α: J[2] → E^∨` and `q: E^∨ → R^∨`.
#[derive(Debug, Clone)]
pub struct ModuleFamily {
    pub genus: u32,
    pub group: PermGroup,
    /// All-ones line.
    pub ones: F2Subspace,
    /// Span of the sets `⋃ {σ ∈ Σ : π ⊂ σ}` over pairs `π`.
    pub jtilde: F2Subspace,
    /// Span of `Σ`.
    pub r_space: F2Subspace,
    /// Even-weight vectors.
    pub e_space: F2Subspace,
    pub e: GModule,
    pub r: GModule,
    pub e_dual: GModule,
    pub r_dual: GModule,
    pub j2: GModule,
    pub alpha: ModuleMap,
    pub q: ModuleMap,
}

/// Dimensions of the chain `1 ⊂ J̃ ⊂ R ⊂ E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ChainDims {
    pub ones: usize,
    pub jtilde: usize,
    pub r: usize,
    pub e: usize,
}

fn pair_sets(canon: &CanonicalTheta) -> Vec<F2Vec> {
    let n = canon.size();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let mut v = F2Vec::zeros(n);
            for quad in canon.quads_through_pair(a, b) {
                for &i in &quad {
                    v.set(i, true);
                }
            }
            out.push(v);
        }
    }
    out
}

impl ModuleFamily {
    /// Builds the family for `group`, which must preserve the canonical
    /// quadruples.
    pub fn new(canon: &CanonicalTheta, group: &PermGroup) -> Result<Self> {
        let n = canon.size();
        if group.degree() != n {
            return Err(Error::DegreeMismatch(format!("group of degree {} acting on {n} labels", group.degree())));
        }
        if let Some(i) = group.generators().iter().position(|g| !canon.preserves_sigma(g)) {
            return Err(Error::SigmaNotPreserved(i));
        }
        let gens = group.generators();
        let base = perm_module(gens, n)?;
        let ones = F2Subspace::span(n, vec![F2Vec::ones(n)]);
        let jtilde = F2Subspace::span(n, pair_sets(canon));
        let r_space = F2Subspace::span(n, canon.sigma.iter().map(|q| F2Vec::from_indices(n, q)).collect());
        let e_space = F2Subspace::span(n, (1..n).map(|i| F2Vec::from_indices(n, &[0, i])).collect());
        let e = base.sub_quotient(e_space.basis(), &[])?;
        let r = base.sub_quotient(r_space.basis(), &[])?;
        let e_dual = e.dual();
        let r_dual = r.dual();
        let j2 = base.sub_quotient(r_space.perp().basis(), ones.basis())?;
        let alpha = ModuleMap::induced(&j2, &e_dual)?;
        let q = ModuleMap::induced(&e_dual, &r_dual)?;
        let family = ModuleFamily { genus: canon.genus, group: group.clone(), ones, jtilde, r_space, e_space, e, r, e_dual, r_dual, j2, alpha, q };
        family.check_exact()?;
        Ok(family)
    }

    pub fn chain_dims(&self) -> ChainDims {
        ChainDims { ones: self.ones.dim(), jtilde: self.jtilde.dim(), r: self.r_space.dim(), e: self.e_space.dim() }
    }

    /// Verifies `1 ⊂ J̃ ⊂ R ⊂ E` and exactness of `0 → J[2] → E^∨ → R^∨`.
    pub fn check_exact(&self) -> Result<()> {
        let chain = [&self.ones, &self.jtilde, &self.r_space, &self.e_space];
        if chain.windows(2).any(|w| !w[1].contains_space(w[0])) {
            return Err(Error::Inconsistent("submodule chain is not increasing".into()));
        }
        if self.alpha.rank() != self.j2.dim() {
            return Err(Error::Inconsistent("J[2] → E^∨ is not injective".into()));
        }
        if !self.q.matrix.mul(&self.alpha.matrix).rows().iter().all(F2Vec::is_zero) {
            return Err(Error::Inconsistent("q ∘ α is not zero".into()));
        }
        if self.alpha.rank() + self.q.rank() != self.e_dual.dim() {
            return Err(Error::Inconsistent("image of α is not the kernel of q".into()));
        }
        Ok(())
    }

    /// Fixed-point data for the subgroup generated by `gens`, which must lie
    /// in the family's group.
    pub fn fixed(&self, gens: &[Perm]) -> Result<FixedData> {
        let j2 = self.j2.fixed_points(gens)?;
        let e_dual = self.e_dual.fixed_points(gens)?;
        let r_dual = self.r_dual.fixed_points(gens)?;
        let im_q = F2Subspace::span(self.r_dual.dim(), e_dual.basis().iter().map(|b| self.q.apply(b)).collect());
        debug_assert!(r_dual.contains_space(&im_q));
        Ok(FixedData { j2, e_dual, r_dual, im_q })
    }

    /// Coset representatives in `R^∨` (subquotient coordinates) of
    /// `R^∨(G) / q E^∨(G)`.
    pub fn coker_representatives(&self, data: &FixedData) -> Vec<F2Vec> {
        let mut span = data.im_q.clone();
        let mut reps = Vec::new();
        for b in data.r_dual.basis() {
            if !span.contains(b) {
                reps.push(b.clone());
                span = span.sum(&F2Subspace::span(span.ambient_dim(), vec![b.clone()]));
            }
        }
        reps
    }
}

/// Fixed subspaces, in subquotient coordinates, for one subgroup.
#[derive(Debug, Clone)]
pub struct FixedData {
    pub j2: F2Subspace,
    pub e_dual: F2Subspace,
    pub r_dual: F2Subspace,
    /// `q(E^∨(H)) ⊆ R^∨(H)`.
    pub im_q: F2Subspace,
}

impl FixedData {
    pub fn coker_dim(&self) -> usize {
        self.r_dual.dim() - self.im_q.dim()
    }

    fn row(&self) -> FixedRow {
        FixedRow { j2: self.j2.dim(), e_dual: self.e_dual.dim(), r_dual: self.r_dual.dim(), coker_q: self.coker_dim() }
    }
}

/// `F_2`-dimensions of `J[2]`, `E^∨`, `R^∨` fixed points and of `coker q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FixedRow {
    pub j2: usize,
    pub e_dual: usize,
    pub r_dual: usize,
    pub coker_q: usize,
}

impl FixedRow {
    pub fn triple(&self) -> (usize, usize, usize) {
        (self.j2, self.e_dual, self.r_dual)
    }
}

/// Where a local image size came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum ImageProvenance {
    /// Supplied by the caller from an outside computation.
    Supplied(String),
    /// Upper bound `#im γ_v` used in place of an exact size.
    LocalSizeBound,
}

/// Input for one place `v`.
#[derive(Debug, Clone)]
pub struct LocalDatum {
    pub place: String,
    /// Residue characteristic.
    pub p: u64,
    /// Generators of the decomposition group `D_v ≤ G`.
    pub generators: Vec<Perm>,
    /// `dim im C_v`, when known.
    pub im_c_dim: Option<usize>,
    pub im_c_provenance: Option<ImageProvenance>,
    /// Good reduction, unramified, Tamagawa numbers odd.
    pub good_unramified: bool,
}

impl LocalDatum {
    pub fn new(place: impl Into<String>, p: u64, generators: Vec<Perm>) -> Self {
        LocalDatum { place: place.into(), p, generators, im_c_dim: None, im_c_provenance: None, good_unramified: false }
    }

    pub fn with_im_c(mut self, dim: usize, source: impl Into<String>) -> Self {
        self.im_c_dim = Some(dim);
        self.im_c_provenance = Some(ImageProvenance::Supplied(source.into()));
        self
    }

    pub fn good_unramified(mut self) -> Self {
        self.good_unramified = true;
        self
    }
}

fn is_cyclic(n: usize, gens: &[Perm]) -> Result<bool> {
    let h = PermGroup::new(n, gens.to_vec())?;
    let order = h.order_u64().filter(|&o| o <= ENUMERATION_CAP).ok_or_else(|| Error::TooLarge {
        what: "decomposition group",
        size: h.order_u64().map_or(u128::MAX, u128::from),
        limit: ENUMERATION_CAP as u128,
    })?;
    if gens.iter().any(|g| g.order() == order) {
        return Ok(true);
    }
    Ok(h.elements()?.iter().any(|g| g.order() == order))
}

/// `dim_F2 J(k_v)/2J(k_v) = dim J[2](k_v) + g·[p = 2]`.
pub fn local_size(family: &ModuleFamily, datum: &LocalDatum) -> Result<usize> {
    let j2 = family.j2.fixed_points(&datum.generators)?.dim();
    Ok(local_size_from(family.genus, j2, datum.p))
}

fn local_size_from(genus: u32, j2_dim: usize, p: u64) -> usize {
    j2_dim + if p == 2 { genus as usize } else { 0 }
}

/// `dim W_v = dim coker q_v + dim im C_v − dim im γ_v`, or `0` at good
/// unramified places where `W_v` is the image of `coker q_v` in the cokernel
/// over the (trivial) inertia group.
pub fn w_v(coker_dim: usize, im_gamma_dim: usize, im_c_dim: Option<usize>, good_unramified: bool, place: &str) -> Result<usize> {
    if good_unramified {
        return Ok(0);
    }
    let c = im_c_dim.ok_or_else(|| Error::Missing(format!("size of the image of C_v at {place}")))?;
    if c > im_gamma_dim {
        return Err(Error::Inconsistent(format!("im C_v of dimension {c} exceeds the local size {im_gamma_dim} at {place}")));
    }
    (coker_dim + c).checked_sub(im_gamma_dim).ok_or_else(|| {
        Error::Inconsistent(format!("im γ_v of dimension {im_gamma_dim} is too large for coker q of dimension {coker_dim} and im C_v of dimension {c} at {place}"))
    })
}

/// One place of a [`DescentTable`].
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LocalRow {
    pub place: String,
    pub p: u64,
    pub decomposition_order: String,
    #[serde(flatten)]
    pub fixed: FixedRow,
    pub im_gamma: usize,
    pub im_c: Option<usize>,
    pub im_c_provenance: Option<ImageProvenance>,
    pub good_unramified: bool,
    pub w: usize,
    #[serde(skip)]
    data: FixedData,
}

/// The global row with `𝒦 = R^∨(k)/qE^∨(k)`.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GlobalRow {
    pub group_order: String,
    #[serde(flatten)]
    pub fixed: FixedRow,
    /// Hex-encoded ambient lifts of coset representatives of `𝒦`.
    pub k_representatives: Vec<String>,
    #[serde(skip)]
    reps: Vec<F2Vec>,
    #[serde(skip)]
    data: FixedData,
}

impl GlobalRow {
    pub fn k_dim(&self) -> usize {
        self.fixed.coker_q
    }
}

/// Kernel and cokernel of `κ: 𝒦 → ∏ W_v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KappaReport {
    pub k_dim: usize,
    pub w_dim: usize,
    pub kernel_dim: usize,
    pub cokernel_dim: usize,
}

/// How the bound on the fake Selmer group was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase", tag = "kind", content = "dim")]
pub enum FakeBound {
    Supplied(usize),
    /// `Σ_v dim im C_v` over the listed places, valid when the global
    /// candidates inject into the product of local groups.
    FromLocalImages,
}

/// Caller inputs for [`rank_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RankInputs {
    pub fake: FakeBound,
    /// Known `dim ker κ`; when absent `dim 𝒦` is used.
    pub kappa_kernel_dim: Option<usize>,
    /// Extra 2-torsion dimension known to lie in `J(k)/2J(k)`.
    pub torsion_correction: usize,
    /// The rank is known to be a multiple of this number.
    pub rank_multiple_of: Option<usize>,
    /// The divisor-class surjectivity hypothesis, as asserted by the caller.
    pub circ_asserted: bool,
}

impl RankInputs {
    pub fn supplied(fake_dim: usize) -> Self {
        RankInputs { fake: FakeBound::Supplied(fake_dim), kappa_kernel_dim: None, torsion_correction: 0, rank_multiple_of: None, circ_asserted: true }
    }

    pub fn from_local_images() -> Self {
        RankInputs { fake: FakeBound::FromLocalImages, ..RankInputs::supplied(0) }
    }
}

/// Selmer and rank bounds, all as `F_2`-dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RankBound {
    pub inputs: RankInputs,
    pub fake_selmer_dim: usize,
    pub k_dim: usize,
    pub kappa_kernel_dim: Option<usize>,
    pub selmer_dim: usize,
    pub j2_rational_dim: usize,
    pub rank: usize,
}

/// Global and local fixed-point rows, local sizes, `W_v` and bounds.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DescentTable {
    pub global: GlobalRow,
    pub places: Vec<LocalRow>,
    pub kappa: Option<KappaReport>,
    pub bound: Option<RankBound>,
}

/// Computes the global row for the family's group and one row per place.
pub fn fixed_table(family: &ModuleFamily, data: &[LocalDatum]) -> Result<DescentTable> {
    let gdata = family.fixed(family.group.generators())?;
    let reps = family.coker_representatives(&gdata);
    let global = GlobalRow {
        group_order: family.group.order().to_string(),
        fixed: gdata.row(),
        k_representatives: reps.iter().map(|r| family.r_dual.lift(r).to_hex()).collect(),
        reps,
        data: gdata,
    };
    let places = data.iter().map(|d| local_row(family, d)).collect::<Result<Vec<_>>>()?;
    Ok(DescentTable { global, places, kappa: None, bound: None })
}

fn local_row(family: &ModuleFamily, d: &LocalDatum) -> Result<LocalRow> {
    let n = family.group.degree();
    if d.good_unramified && !is_cyclic(n, &d.generators)? {
        return Err(Error::Invalid(format!("decomposition group at good unramified place {} is not cyclic", d.place)));
    }
    let data = family.fixed(&d.generators)?;
    let fixed = data.row();
    let im_gamma = local_size_from(family.genus, fixed.j2, d.p);
    let w = w_v(fixed.coker_q, im_gamma, d.im_c_dim, d.good_unramified, &d.place)?;
    Ok(LocalRow {
        place: d.place.clone(),
        p: d.p,
        decomposition_order: PermGroup::new(n, d.generators.clone())?.order().to_string(),
        fixed,
        im_gamma,
        im_c: d.im_c_dim,
        im_c_provenance: d.im_c_provenance.clone(),
        good_unramified: d.good_unramified,
        w,
        data,
    })
}

/// `κ: 𝒦 → ∏_v W_v`, determined at places where `W_v` is all of
/// `coker q_v` (restriction) or zero.
pub fn kappa(table: &DescentTable) -> Result<KappaReport> {
    let k_dim = table.global.k_dim();
    let dim = table.global.data.r_dual.ambient_dim();
    let mut w_dim = 0;
    let mut target = F2Subspace::full(dim);
    for row in &table.places {
        w_dim += row.w;
        if row.w == 0 {
            continue;
        }
        if row.w != row.fixed.coker_q {
            return Err(Error::Invalid(format!(
                "W_v at {} is a proper nonzero quotient of coker q_v; κ is not determined by fixed points alone",
                row.place
            )));
        }
        target = target.intersect(&row.data.im_q);
    }
    let k_space = F2Subspace::span(dim, table.global.reps.clone());
    let kernel_dim = k_space.intersect(&target).dim();
    let rank = k_dim - kernel_dim;
    Ok(KappaReport { k_dim, w_dim, kernel_dim, cokernel_dim: w_dim - rank })
}

/// `dim Sel ≤ fake + dim ker κ` and `rank ≤ dim Sel − dim J[2](k) − corrections`,
/// rounded down to the supplied multiple.
pub fn rank_bound(table: &DescentTable, inputs: RankInputs) -> Result<RankBound> {
    let fake_selmer_dim = match inputs.fake {
        FakeBound::Supplied(d) => d,
        FakeBound::FromLocalImages => table
            .places
            .iter()
            .map(|r| r.im_c.ok_or_else(|| Error::Missing(format!("size of the image of C_v at {}", r.place))))
            .sum::<Result<usize>>()?,
    };
    let k_dim = table.global.k_dim();
    if let Some(k) = inputs.kappa_kernel_dim {
        if k > k_dim {
            return Err(Error::Inconsistent(format!("ker κ of dimension {k} exceeds dim 𝒦 = {k_dim}")));
        }
    }
    let selmer_dim = fake_selmer_dim + inputs.kappa_kernel_dim.unwrap_or(k_dim);
    let j2_rational_dim = table.global.fixed.j2;
    let mut rank = selmer_dim
        .checked_sub(j2_rational_dim + inputs.torsion_correction)
        .ok_or_else(|| Error::Inconsistent("Selmer bound is smaller than the known 2-torsion".into()))?;
    if let Some(m) = inputs.rank_multiple_of.filter(|&m| m > 0) {
        rank -= rank % m;
    }
    Ok(RankBound { inputs, fake_selmer_dim, k_dim, kappa_kernel_dim: inputs.kappa_kernel_dim, selmer_dim, j2_rational_dim, rank })
}

impl DescentTable {
    /// Fills in `κ` when it is determined and the rank bound, using the
    /// computed `dim ker κ` unless the caller supplied one.
    pub fn complete(mut self, inputs: RankInputs) -> Result<Self> {
        self.kappa = kappa(&self).ok();
        let effective = RankInputs { kappa_kernel_dim: inputs.kappa_kernel_dim.or(self.kappa.map(|k| k.kernel_dim)), ..inputs };
        let bound = rank_bound(&self, effective)?;
        self.bound = Some(RankBound { inputs, ..bound });
        Ok(self)
    }
}
