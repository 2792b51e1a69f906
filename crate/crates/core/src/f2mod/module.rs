use serde::{Deserialize, Serialize};

use super::bits::{F2Mat, F2Subspace, F2Vec};
use crate::error::{Error, Result};
use crate::permgrp::{Perm, PermGroup};

/// How the acting group reaches the reference space `F_2^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AmbientKind {
    /// Generators permute coordinates.
    Permutation,
    /// Generators act by explicit matrices.
    Matrix,
}

/// Matrix of the coordinate permutation `e_i ↦ e_{g(i)}`.
pub fn perm_matrix(g: &Perm) -> F2Mat {
    let n = g.degree();
    let mut m = F2Mat::zeros(n, n);
    for i in 0..n {
        m.set(g.apply(i), i, true);
    }
    m
}

/// An `F_2[G]`-module realized as a subquotient `S/Q` of a reference space
/// `F_2^n` on which generators of `G` act.
#[derive(Debug, Clone)]
pub struct GModule {
    kind: AmbientKind,
    perms: Vec<Perm>,
    ambient: Vec<F2Mat>,
    sub: F2Subspace,
    quot: F2Subspace,
    /// Echelon complement of `Q` in `S`, each vector reduced modulo `Q`.
    basis: F2Subspace,
    actions: Vec<F2Mat>,
}

impl PartialEq for GModule {
    fn eq(&self, o: &Self) -> bool {
        self.kind == o.kind && self.perms == o.perms && self.ambient == o.ambient && self.sub == o.sub && self.quot == o.quot && self.actions == o.actions
    }
}

/// The permutation module `F_2^n` with generators permuting coordinates.
pub fn perm_module(gens: &[Perm], n: usize) -> Result<GModule> {
    if let Some(g) = gens.iter().find(|g| g.degree() != n) {
        return Err(Error::DegreeMismatch(format!("generator of degree {} for module of dimension {n}", g.degree())));
    }
    let ambient = gens.iter().map(perm_matrix).collect();
    GModule::assemble(AmbientKind::Permutation, gens.to_vec(), ambient, F2Subspace::full(n), F2Subspace::zero(n))
}

impl GModule {
    /// A module `F_2^d` with generators acting by the given invertible matrices.
    pub fn from_matrices(d: usize, mats: Vec<F2Mat>) -> Result<GModule> {
        for (i, m) in mats.iter().enumerate() {
            if m.nrows() != d || m.ncols() != d {
                return Err(Error::DegreeMismatch(format!("matrix {i} is not {d}x{d}")));
            }
            if m.inverse().is_none() {
                return Err(Error::Invalid(format!("matrix {i} is singular")));
            }
        }
        GModule::assemble(AmbientKind::Matrix, Vec::new(), mats, F2Subspace::full(d), F2Subspace::zero(d))
    }

    fn assemble(kind: AmbientKind, perms: Vec<Perm>, ambient: Vec<F2Mat>, sub: F2Subspace, quot: F2Subspace) -> Result<GModule> {
        let n = sub.ambient_dim();
        let reduced: Vec<F2Vec> = sub.basis().iter().map(|b| quot.reduce(b)).collect();
        let basis = F2Subspace::span(n, reduced);
        let mut m = GModule { kind, perms, ambient, sub, quot, basis, actions: Vec::new() };
        let mut actions = Vec::with_capacity(m.ambient.len());
        for (i, a) in m.ambient.iter().enumerate() {
            actions.push(m.induced(a).ok_or(Error::NotStable { generator: i })?);
        }
        m.actions = actions;
        Ok(m)
    }

    /// The matrix induced on the subquotient by an ambient matrix, if the
    /// ambient matrix preserves both `S` and `Q`.
    fn induced(&self, a: &F2Mat) -> Option<F2Mat> {
        for q in self.quot.basis() {
            if !self.quot.contains(&a.mul_vec(q)) {
                return None;
            }
        }
        let mut cols = Vec::with_capacity(self.dim());
        for b in self.basis.basis() {
            let img = a.mul_vec(b);
            cols.push(self.coords(&img)?);
        }
        for s in self.sub.basis() {
            if !self.sub.contains(&a.mul_vec(s)) {
                return None;
            }
        }
        Some(F2Mat::from_cols(self.dim(), &cols))
    }

    pub fn kind(&self) -> AmbientKind {
        self.kind
    }

    pub fn generators(&self) -> &[Perm] {
        &self.perms
    }

    pub fn num_generators(&self) -> usize {
        self.ambient.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.sub.ambient_dim()
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn sub(&self) -> &F2Subspace {
        &self.sub
    }

    pub fn quot(&self) -> &F2Subspace {
        &self.quot
    }

    /// Ambient representatives of the subquotient basis.
    pub fn basis(&self) -> &[F2Vec] {
        self.basis.basis()
    }

    /// Action matrices of the generators on subquotient coordinates.
    pub fn actions(&self) -> &[F2Mat] {
        &self.actions
    }

    /// Coordinates of the class of an ambient vector of `S`.
    pub fn coords(&self, v: &F2Vec) -> Option<F2Vec> {
        let w = self.quot.reduce(v);
        self.basis.coords(&w)
    }

    /// Ambient representative of a coordinate vector.
    pub fn lift(&self, c: &F2Vec) -> F2Vec {
        self.basis.combine(c)
    }

    /// Action of a group element given as a permutation of the reference
    /// coordinates. The element must lie in the group generated by the
    /// module's generators.
    pub fn action_of(&self, h: &Perm) -> Result<F2Mat> {
        if self.kind != AmbientKind::Permutation {
            return Err(Error::OutsideGroup { generator: 0 });
        }
        self.induced(&perm_matrix(h)).ok_or(Error::OutsideGroup { generator: 0 })
    }

    fn acting_group(&self) -> Result<PermGroup> {
        PermGroup::new(self.ambient_dim(), self.perms.clone())
    }

    /// The same module with the acting group restricted to the subgroup
    /// generated by `gens`.
    pub fn restrict_to(&self, gens: &[Perm]) -> Result<GModule> {
        if self.kind != AmbientKind::Permutation {
            return Err(Error::Invalid("restriction needs a permutation-derived module".into()));
        }
        let g = self.acting_group()?;
        for (i, h) in gens.iter().enumerate() {
            if !g.contains(h)? {
                return Err(Error::OutsideGroup { generator: i });
            }
        }
        let ambient = gens.iter().map(perm_matrix).collect();
        GModule::assemble(self.kind, gens.to_vec(), ambient, self.sub.clone(), self.quot.clone())
    }

    /// Simultaneous fixed space, in subquotient coordinates, of the listed
    /// group elements.
    pub fn fixed_points(&self, h: &[Perm]) -> Result<F2Subspace> {
        let mats = match self.kind {
            AmbientKind::Permutation => {
                let g = self.acting_group()?;
                let mut mats = Vec::with_capacity(h.len());
                for (i, x) in h.iter().enumerate() {
                    if x.degree() != self.ambient_dim() || !g.contains(x)? {
                        return Err(Error::OutsideGroup { generator: i });
                    }
                    mats.push(self.induced(&perm_matrix(x)).ok_or(Error::OutsideGroup { generator: i })?);
                }
                mats
            }
            AmbientKind::Matrix => {
                return Err(Error::OutsideGroup { generator: 0 });
            }
        };
        Ok(self.fixed_of_matrices(&mats))
    }

    /// Fixed space of the subgroup generated by some of the module's own
    /// generators, listed by index.
    pub fn fixed_points_of_generators(&self, idx: &[usize]) -> Result<F2Subspace> {
        let mut mats = Vec::new();
        for (k, &i) in idx.iter().enumerate() {
            mats.push(self.actions.get(i).cloned().ok_or(Error::OutsideGroup { generator: k })?);
        }
        Ok(self.fixed_of_matrices(&mats))
    }

    fn fixed_of_matrices(&self, mats: &[F2Mat]) -> F2Subspace {
        let d = self.dim();
        let mut rows = Vec::new();
        for m in mats {
            rows.extend(m.add(&F2Mat::identity(d)).rows().iter().cloned());
        }
        if rows.is_empty() {
            return F2Subspace::full(d);
        }
        F2Subspace::span(d, F2Mat::from_rows(d, rows).kernel())
    }

    /// The subquotient `(sub + Q) / (quot + Q)` of this module; both spaces
    /// are given by ambient vectors and must be stable under every generator.
    pub fn sub_quotient(&self, sub: &[F2Vec], quot: &[F2Vec]) -> Result<GModule> {
        let n = self.ambient_dim();
        if sub.iter().chain(quot).any(|v| v.len() != n) {
            return Err(Error::DegreeMismatch(format!("vectors must have length {n}")));
        }
        let mut s: Vec<F2Vec> = sub.to_vec();
        s.extend(self.quot.basis().iter().cloned());
        let mut q: Vec<F2Vec> = quot.to_vec();
        q.extend(self.quot.basis().iter().cloned());
        let (s, q) = (F2Subspace::span(n, s), F2Subspace::span(n, q));
        if !self.sub.contains_space(&s) {
            return Err(Error::Invalid("sub space leaves the module".into()));
        }
        if !s.contains_space(&q) {
            return Err(Error::Invalid("quotient space is not inside the sub space".into()));
        }
        for (i, a) in self.ambient.iter().enumerate() {
            let stable = |sp: &F2Subspace| sp.basis().iter().all(|b| sp.contains(&a.mul_vec(b)));
            if !stable(&s) || !stable(&q) {
                return Err(Error::NotStable { generator: i });
            }
        }
        GModule::assemble(self.kind, self.perms.clone(), self.ambient.clone(), s, q)
    }

    /// Dual module `Q^⊥ / S^⊥`, with generators acting on the reference
    /// space by inverse transposes.
    pub fn dual(&self) -> GModule {
        let ambient = self.ambient.iter().map(|a| a.inverse().expect("invertible action").transpose()).collect();
        GModule::assemble(self.kind, self.perms.clone(), ambient, self.quot.perp(), self.sub.perp()).expect("dual of a stable subquotient is stable")
    }

    /// Action matrix of a word in the generators (`(i, true)` is the inverse
    /// of generator `i`), applied right to left.
    pub fn word_action(&self, word: &[(usize, bool)]) -> F2Mat {
        let mut m = F2Mat::identity(self.dim());
        for &(i, inv) in word {
            let a = if inv { self.actions[i].inverse().expect("invertible") } else { self.actions[i].clone() };
            m = m.mul(&a);
        }
        m
    }

    pub fn to_repr(&self) -> GModuleRepr {
        GModuleRepr {
            kind: self.kind,
            ambient_dim: self.ambient_dim(),
            dim: self.dim(),
            generators: self.perms.clone(),
            matrices: match self.kind {
                AmbientKind::Matrix => self.ambient.iter().map(F2Mat::to_hex_rows).collect(),
                AmbientKind::Permutation => Vec::new(),
            },
            sub: self.sub.basis().iter().map(F2Vec::to_hex).collect(),
            quot: self.quot.basis().iter().map(F2Vec::to_hex).collect(),
        }
    }

    pub fn from_repr(r: &GModuleRepr) -> Result<GModule> {
        let n = r.ambient_dim;
        let rows = |v: &[String]| v.iter().map(|s| F2Vec::from_hex(n, s)).collect::<Result<Vec<_>>>();
        let base = match r.kind {
            AmbientKind::Permutation => perm_module(&r.generators, n)?,
            AmbientKind::Matrix => {
                let mats = r.matrices.iter().map(|m| Ok(F2Mat::from_rows(n, rows(m)?))).collect::<Result<Vec<_>>>()?;
                GModule::from_matrices(n, mats)?
            }
        };
        let m = base.sub_quotient(&rows(&r.sub)?, &rows(&r.quot)?)?;
        if m.dim() != r.dim {
            return Err(Error::Inconsistent(format!("declared dimension {} but subquotient has {}", r.dim, m.dim())));
        }
        Ok(m)
    }
}

/// Serialized form of a [`GModule`]; bit rows are hex encoded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GModuleRepr {
    pub kind: AmbientKind,
    pub ambient_dim: usize,
    pub dim: usize,
    pub generators: Vec<Perm>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub matrices: Vec<Vec<String>>,
    pub sub: Vec<String>,
    pub quot: Vec<String>,
}

/// An `F_2`-linear map between modules for the same generators.
#[derive(Debug, Clone)]
pub struct ModuleMap {
    pub source: GModule,
    pub target: GModule,
    /// `dim target × dim source`.
    pub matrix: F2Mat,
}

impl ModuleMap {
    pub fn new(source: GModule, target: GModule, matrix: F2Mat) -> Result<Self> {
        if matrix.nrows() != target.dim() || matrix.ncols() != source.dim() {
            return Err(Error::DegreeMismatch("map matrix shape".into()));
        }
        if source.num_generators() != target.num_generators() {
            return Err(Error::DegreeMismatch("modules for different generator lists".into()));
        }
        for i in 0..source.num_generators() {
            if target.actions[i].mul(&matrix) != matrix.mul(&source.actions[i]) {
                return Err(Error::NotEquivariant { generator: i });
            }
        }
        Ok(ModuleMap { source, target, matrix })
    }

    /// The map `v + Q_s ↦ v + Q_t` between subquotients of one reference
    /// space with `S_s ⊆ S_t` and `Q_s ⊆ Q_t`.
    pub fn induced(source: &GModule, target: &GModule) -> Result<Self> {
        if !target.sub.contains_space(&source.sub) || !target.quot.contains_space(&source.quot) {
            return Err(Error::Invalid("no induced map between these subquotients".into()));
        }
        let cols: Vec<F2Vec> = source.basis().iter().map(|b| target.coords(b).expect("inside target")).collect();
        ModuleMap::new(source.clone(), target.clone(), F2Mat::from_cols(target.dim(), &cols))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn kernel(&self) -> F2Subspace {
        F2Subspace::span(self.source.dim(), self.matrix.kernel())
    }

    pub fn image(&self) -> F2Subspace {
        F2Subspace::span(self.target.dim(), self.matrix.transpose().rows().to_vec())
    }

    pub fn apply(&self, v: &F2Vec) -> F2Vec {
        self.matrix.mul_vec(v)
    }

    pub fn compose(&self, first: &ModuleMap) -> Result<ModuleMap> {
        ModuleMap::new(first.source.clone(), self.target.clone(), self.matrix.mul(&first.matrix))
    }
}

/// For each subgroup (given by generators), whether the map carries the
/// fixed points of the source onto the fixed points of the target.
pub fn check_fixed_surjectivity(f: &ModuleMap, subgroups: &[Vec<Perm>]) -> Result<Vec<bool>> {
    ModuleMap::new(f.source.clone(), f.target.clone(), f.matrix.clone())?;
    subgroups
        .iter()
        .map(|h| {
            let fs = f.source.fixed_points(h)?;
            let ft = f.target.fixed_points(h)?;
            let img = F2Subspace::span(f.target.dim(), fs.basis().iter().map(|v| f.apply(v)).collect());
            Ok(img == ft)
        })
        .collect()
}
