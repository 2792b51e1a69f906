use std::fmt;

use crate::error::{Error, Result};

/// A vector over `F_2`, packed 64 coordinates per word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Vec {
    len: usize,
    words: Vec<u64>,
}

impl F2Vec {
    pub fn zeros(len: usize) -> Self {
        F2Vec { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = F2Vec::zeros(len);
        v.set(i, true);
        v
    }

    pub fn ones(len: usize) -> Self {
        let mut v = F2Vec::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = F2Vec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_indices(len: usize, idx: &[usize]) -> Self {
        let mut v = F2Vec::zeros(len);
        for &i in idx {
            v.flip(i);
        }
        v
    }

    /// Low `len` bits of an integer.
    pub fn from_u64(len: usize, x: u64) -> Self {
        let mut v = F2Vec::zeros(len);
        if len > 0 {
            v.words[0] = if len >= 64 { x } else { x & ((1u64 << len) - 1) };
        }
        v
    }

    pub fn to_u64(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        let m = 1u64 << (i % 64);
        if b {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, o: &F2Vec) {
        debug_assert_eq!(self.len, o.len);
        for (a, b) in self.words.iter_mut().zip(&o.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, o: &F2Vec) -> F2Vec {
        let mut v = self.clone();
        v.xor_assign(o);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn dot(&self, o: &F2Vec) -> bool {
        self.words.iter().zip(&o.words).map(|(a, b)| (a & b).count_ones()).sum::<u32>() & 1 == 1
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words.iter().enumerate().find(|(_, &w)| w != 0).map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn concat(&self, o: &F2Vec) -> F2Vec {
        let mut v = F2Vec::zeros(self.len + o.len);
        for i in self.ones_iter() {
            v.set(i, true);
        }
        for i in o.ones_iter() {
            v.set(self.len + i, true);
        }
        v
    }

    pub fn slice(&self, start: usize, end: usize) -> F2Vec {
        let mut v = F2Vec::zeros(end - start);
        for i in start..end {
            if self.get(i) {
                v.set(i - start, true);
            }
        }
        v
    }

    /// Hex encoding of the bytes holding bits `8k..8k+7` (bit `i` is bit
    /// `i mod 8` of byte `i / 8`).
    pub fn to_hex(&self) -> String {
        let bytes: Vec<u8> = (0..self.len.div_ceil(8)).map(|k| (self.words[k / 8] >> (8 * (k % 8))) as u8).collect();
        hex::encode(bytes)
    }

    pub fn from_hex(len: usize, s: &str) -> Result<Self> {
        let bytes = hex::decode(s).map_err(|e| Error::Invalid(format!("bad hex row: {e}")))?;
        if bytes.len() != len.div_ceil(8) {
            return Err(Error::Invalid(format!("hex row of {} bytes for length {len}", bytes.len())));
        }
        let mut v = F2Vec::zeros(len);
        for (k, b) in bytes.iter().enumerate() {
            for j in 0..8 {
                if (b >> j) & 1 == 1 {
                    let i = 8 * k + j;
                    if i >= len {
                        return Err(Error::Invalid("bits set beyond the row length".into()));
                    }
                    v.set(i, true);
                }
            }
        }
        Ok(v)
    }
}

impl fmt::Debug for F2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        write!(f, "[{s}]")
    }
}

/// A matrix over `F_2` stored by rows; it acts on column vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Mat {
    ncols: usize,
    rows: Vec<F2Vec>,
}

impl fmt::Debug for F2Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.rows).finish()
    }
}

impl F2Mat {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        F2Mat { ncols, rows: vec![F2Vec::zeros(ncols); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        F2Mat { ncols: n, rows: (0..n).map(|i| F2Vec::unit(n, i)).collect() }
    }

    pub fn from_rows(ncols: usize, rows: Vec<F2Vec>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == ncols));
        F2Mat { ncols, rows }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(nrows: usize, cols: &[F2Vec]) -> Self {
        let mut m = F2Mat::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in c.ones_iter() {
                m.rows[i].set(j, true);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[F2Vec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &F2Vec {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, b: bool) {
        self.rows[i].set(j, b);
    }

    pub fn col(&self, j: usize) -> F2Vec {
        let mut v = F2Vec::zeros(self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            if r.get(j) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn mul_vec(&self, v: &F2Vec) -> F2Vec {
        let mut out = F2Vec::zeros(self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            if r.dot(v) {
                out.set(i, true);
            }
        }
        out
    }

    pub fn mul(&self, o: &F2Mat) -> F2Mat {
        assert_eq!(self.ncols, o.nrows(), "shape mismatch");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = F2Vec::zeros(o.ncols);
                for k in r.ones_iter() {
                    acc.xor_assign(&o.rows[k]);
                }
                acc
            })
            .collect();
        F2Mat { ncols: o.ncols, rows }
    }

    pub fn add(&self, o: &F2Mat) -> F2Mat {
        F2Mat { ncols: self.ncols, rows: self.rows.iter().zip(&o.rows).map(|(a, b)| a.xor(b)).collect() }
    }

    pub fn transpose(&self) -> F2Mat {
        F2Mat::from_cols(self.ncols, &self.rows)
    }

    pub fn is_identity(&self) -> bool {
        self.nrows() == self.ncols && self.rows.iter().enumerate().all(|(i, r)| *r == F2Vec::unit(self.ncols, i))
    }

    pub fn rank(&self) -> usize {
        rref_rows(self.rows.clone()).0.len()
    }

    /// Basis of `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<F2Vec> {
        let (rows, pivots) = rref_rows(self.rows.clone());
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|c| !pivots.contains(c)) {
            let mut v = F2Vec::unit(self.ncols, free);
            for (r, &pc) in rows.iter().zip(&pivots) {
                if r.get(free) {
                    v.set(pc, true);
                }
            }
            out.push(v);
        }
        out
    }

    pub fn inverse(&self) -> Option<F2Mat> {
        let n = self.nrows();
        if n != self.ncols {
            return None;
        }
        let aug: Vec<F2Vec> = self.rows.iter().enumerate().map(|(i, r)| r.concat(&F2Vec::unit(n, i))).collect();
        let (rows, pivots) = rref_rows(aug);
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
            return None;
        }
        Some(F2Mat { ncols: n, rows: rows.iter().map(|r| r.slice(n, 2 * n)).collect() })
    }

    pub fn pow(&self, mut e: u64) -> F2Mat {
        let mut acc = F2Mat::identity(self.nrows());
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    pub fn to_hex_rows(&self) -> Vec<String> {
        self.rows.iter().map(F2Vec::to_hex).collect()
    }
}

/// Reduced row echelon form with leftmost pivots; zero rows are dropped.
pub fn rref_rows(mut rows: Vec<F2Vec>) -> (Vec<F2Vec>, Vec<usize>) {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else { continue };
        rows.swap(r, p);
        let pr = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.get(c) {
                row.xor_assign(&pr);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// A subspace of `F_2^n` stored by a reduced echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Subspace {
    n: usize,
    basis: Vec<F2Vec>,
    pivots: Vec<usize>,
}

impl fmt::Debug for F2Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Subspace(n={}, dim={}, {:?})", self.n, self.dim(), self.basis)
    }
}

impl F2Subspace {
    pub fn zero(n: usize) -> Self {
        F2Subspace { n, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        F2Subspace::span(n, (0..n).map(|i| F2Vec::unit(n, i)).collect())
    }

    pub fn span(n: usize, vecs: Vec<F2Vec>) -> Self {
        debug_assert!(vecs.iter().all(|v| v.len() == n));
        let (basis, pivots) = rref_rows(vecs);
        F2Subspace { n, basis, pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[F2Vec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Clears every pivot coordinate of `v` using the basis.
    pub fn reduce(&self, v: &F2Vec) -> F2Vec {
        let mut w = v.clone();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if w.get(p) {
                w.xor_assign(b);
            }
        }
        w
    }

    pub fn contains(&self, v: &F2Vec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_space(&self, o: &F2Subspace) -> bool {
        o.basis.iter().all(|b| self.contains(b))
    }

    /// Coordinates of a member in the echelon basis.
    pub fn coords(&self, v: &F2Vec) -> Option<F2Vec> {
        let mut c = F2Vec::zeros(self.dim());
        for (k, &p) in self.pivots.iter().enumerate() {
            if v.get(p) {
                c.set(k, true);
            }
        }
        let recon = self.combine(&c);
        (recon == *v).then_some(c)
    }

    pub fn combine(&self, c: &F2Vec) -> F2Vec {
        let mut v = F2Vec::zeros(self.n);
        for k in c.ones_iter() {
            v.xor_assign(&self.basis[k]);
        }
        v
    }

    pub fn sum(&self, o: &F2Subspace) -> F2Subspace {
        let mut v = self.basis.clone();
        v.extend(o.basis.iter().cloned());
        F2Subspace::span(self.n, v)
    }

    /// Orthogonal complement for the standard dot product.
    pub fn perp(&self) -> F2Subspace {
        let m = F2Mat::from_rows(self.n, self.basis.clone());
        F2Subspace::span(self.n, m.kernel())
    }

    pub fn intersect(&self, o: &F2Subspace) -> F2Subspace {
        self.perp().sum(&o.perp()).perp()
    }

    pub fn elements(&self) -> Result<Vec<F2Vec>> {
        if self.dim() > 24 {
            return Err(Error::TooLarge { what: "subspace dimension", size: self.dim() as u128, limit: 24 });
        }
        Ok((0..1u64 << self.dim()).map(|m| self.combine(&F2Vec::from_u64(self.dim(), m))).collect())
    }
}
