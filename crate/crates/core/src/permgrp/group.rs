use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::perm::Perm;
use crate::error::{Error, Result};

/// Largest group this engine will enumerate element by element.
pub const ENUMERATION_CAP: u64 = 2_000_000;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    orbit: Vec<usize>,
    /// `trans[γ]` maps the base point to `γ`.
    trans: Vec<Option<Perm>>,
    /// `tested[γ]` counts the strong generators already paired with `γ`.
    tested: Vec<usize>,
}

impl Level {
    fn new(base: usize, n: usize) -> Self {
        let mut trans = vec![None; n];
        trans[base] = Some(Perm::identity(n));
        Level { base, orbit: vec![base], trans, tested: vec![0; n] }
    }
}

/// A permutation group with a deterministic stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    n: usize,
    gens: Vec<Perm>,
    levels: Vec<Level>,
    /// Strong generators with the number of leading base points they fix.
    strong: Vec<(Perm, usize)>,
    prefix: Vec<usize>,
}

impl PermGroup {
    pub fn new(n: usize, gens: Vec<Perm>) -> Result<Self> {
        Self::with_base(n, gens, &[])
    }

    pub fn trivial(n: usize) -> Self {
        PermGroup { n, gens: Vec::new(), levels: Vec::new(), strong: Vec::new(), prefix: Vec::new() }
    }

    /// Builds the chain with a prescribed base prefix; remaining base points
    /// are the smallest points moved by the elements that need them.
    pub fn with_base(n: usize, gens: Vec<Perm>, prefix: &[usize]) -> Result<Self> {
        for g in &gens {
            if g.degree() != n {
                return Err(Error::DegreeMismatch(format!("generator of degree {} in group of degree {n}", g.degree())));
            }
        }
        if let Some(&b) = prefix.iter().find(|&&b| b >= n) {
            return Err(Error::Invalid(format!("base point {b} out of range")));
        }
        let mut g = PermGroup { n, gens: Vec::new(), levels: Vec::new(), strong: Vec::new(), prefix: prefix.to_vec() };
        for s in gens {
            g.add_element(s);
        }
        Ok(g)
    }

    /// Adds a generator and completes the chain.
    fn add_element(&mut self, s: Perm) {
        self.gens.push(s.clone());
        self.sift_insert(0, s);
        self.close();
    }

    fn new_level_base(&self, j: usize, h: &Perm) -> usize {
        match self.prefix.get(j) {
            Some(&b) => b,
            None => h.smallest_moved().expect("nonidentity residue"),
        }
    }

    fn sift_from(&self, j: usize, mut h: Perm) -> (Perm, usize) {
        for (l, lvl) in self.levels.iter().enumerate().skip(j) {
            let gamma = h.apply(lvl.base);
            match &lvl.trans[gamma] {
                Some(u) => h = u.inverse().compose(&h),
                None => return (h, l),
            }
        }
        let len = self.levels.len();
        (h, len)
    }

    fn sift_insert(&mut self, j: usize, h: Perm) {
        let (res, mut m) = self.sift_from(j, h);
        if m == self.levels.len() && res.is_identity() {
            return;
        }
        while m == self.levels.len() {
            let b = self.new_level_base(m, &res);
            self.levels.push(Level::new(b, self.n));
            if res.apply(b) != b {
                break;
            }
            m += 1;
        }
        self.strong.push((res, m));
        for l in 0..=m {
            self.extend_orbit(l);
        }
    }

    fn extend_orbit(&mut self, l: usize) {
        let strong = &self.strong;
        let lvl = &mut self.levels[l];
        let mut k = 0;
        while k < lvl.orbit.len() {
            let b = lvl.orbit[k];
            for (s, d) in strong {
                if *d < l {
                    continue;
                }
                let c = s.apply(b);
                if lvl.trans[c].is_none() {
                    lvl.trans[c] = Some(s.compose(lvl.trans[b].as_ref().unwrap()));
                    lvl.orbit.push(c);
                }
            }
            k += 1;
        }
    }

    /// Tests Schreier generators, deepest level first, until every level
    /// satisfies the Schreier–Sims criterion.
    fn close(&mut self) {
        loop {
            let mut job = None;
            'scan: for l in (0..self.levels.len()).rev() {
                let lvl = &self.levels[l];
                for &b in &lvl.orbit {
                    let t = lvl.tested[b];
                    if let Some(si) = (t..self.strong.len()).find(|&si| self.strong[si].1 >= l) {
                        job = Some((l, b, si));
                        break 'scan;
                    } else if t < self.strong.len() {
                        job = Some((l, b, usize::MAX));
                        break 'scan;
                    }
                }
            }
            let Some((l, b, si)) = job else { break };
            if si == usize::MAX {
                self.levels[l].tested[b] = self.strong.len();
                continue;
            }
            self.levels[l].tested[b] = si + 1;
            let sch = {
                let lvl = &self.levels[l];
                let s = &self.strong[si].0;
                let c = s.apply(b);
                let uc = lvl.trans[c].as_ref().unwrap();
                uc.inverse().compose(&s.compose(lvl.trans[b].as_ref().unwrap()))
            };
            if !sch.is_identity() {
                self.sift_insert(l + 1, sch);
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Orbit lengths along the chain.
    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigInt {
        self.levels.iter().fold(BigInt::from(1), |a, l| a * l.orbit.len())
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.levels.iter().try_fold(1u64, |a, l| a.checked_mul(l.orbit.len() as u64))
    }

    pub fn contains(&self, p: &Perm) -> Result<bool> {
        if p.degree() != self.n {
            return Err(Error::DegreeMismatch(format!("permutation of degree {} tested in group of degree {}", p.degree(), self.n)));
        }
        let (res, m) = self.sift_from(0, p.clone());
        Ok(m == self.levels.len() && res.is_identity())
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> Result<bool> {
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Orbits as sorted point lists, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut orb = vec![s];
            let mut k = 0;
            while k < orb.len() {
                let b = orb[k];
                for g in &self.gens {
                    let c = g.apply(b);
                    if !seen[c] {
                        seen[c] = true;
                        orb.push(c);
                    }
                }
                k += 1;
            }
            orb.sort_unstable();
            out.push(orb);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.n <= 1 || self.orbits().len() == 1
    }

    /// Pointwise stabilizer of the given points.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermGroup> {
        let chain = PermGroup::with_base(self.n, self.gens.clone(), points)?;
        let gens: Vec<Perm> = chain.strong.iter().filter(|(_, d)| *d >= points.len()).map(|(g, _)| g.clone()).collect();
        PermGroup::new(self.n, gens)
    }

    pub fn point_stabilizer(&self, point: usize) -> Result<PermGroup> {
        self.pointwise_stabilizer(&[point])
    }

    /// Stabilizer of `x` under an arbitrary action of the group, by orbit
    /// enumeration and sifting of Schreier generators until the stabilizer
    /// reaches the order predicted by the orbit-stabilizer theorem.
    pub fn stabilizer_by<T: Clone + Eq + Hash>(&self, x: T, act: impl Fn(&Perm, &T) -> T, orbit_cap: usize) -> Result<PermGroup> {
        let mut index: HashMap<T, usize> = HashMap::new();
        let mut orbit = vec![x.clone()];
        let mut parent: Vec<(usize, usize)> = vec![(usize::MAX, 0)];
        index.insert(x, 0);
        let mut k = 0;
        while k < orbit.len() {
            for (gi, g) in self.gens.iter().enumerate() {
                let y = act(g, &orbit[k]);
                if !index.contains_key(&y) {
                    if orbit.len() >= orbit_cap {
                        return Err(Error::TooLarge { what: "orbit", size: orbit.len() as u128 + 1, limit: orbit_cap as u128 });
                    }
                    index.insert(y.clone(), orbit.len());
                    orbit.push(y);
                    parent.push((k, gi));
                }
            }
            k += 1;
        }
        let word = |mut i: usize| {
            let mut u = Perm::identity(self.n);
            while parent[i].0 != usize::MAX {
                let (p, gi) = parent[i];
                u = u.compose(&self.gens[gi]);
                i = p;
            }
            u
        };
        let target = self.order() / BigInt::from(orbit.len());
        let mut stab = PermGroup::trivial(self.n);
        let mut reps: Vec<Option<Perm>> = vec![None; orbit.len()];
        'outer: for i in 0..orbit.len() {
            if stab.order() == target {
                break;
            }
            let ui = reps[i].get_or_insert_with(|| word(i)).clone();
            for g in &self.gens {
                if stab.order() == target {
                    break 'outer;
                }
                let y = act(g, &orbit[i]);
                let j = index[&y];
                let uj = reps[j].get_or_insert_with(|| word(j)).clone();
                let s = uj.inverse().compose(&g.compose(&ui));
                if !s.is_identity() && !stab.contains(&s)? {
                    stab.add_element(s);
                }
            }
        }
        Ok(stab)
    }

    /// Setwise stabilizer of a block of points.
    pub fn setwise_stabilizer(&self, block: &[usize]) -> Result<PermGroup> {
        let mut b: Vec<u8> = block.iter().map(|&i| i as u8).collect();
        b.sort_unstable();
        b.dedup();
        self.stabilizer_by(
            b,
            |g, s| {
                let mut v: Vec<u8> = s.iter().map(|&i| g.apply(i as usize) as u8).collect();
                v.sort_unstable();
                v
            },
            ENUMERATION_CAP as usize,
        )
    }

    fn require_enumerable(&self) -> Result<u64> {
        match self.order_u64() {
            Some(o) if o <= ENUMERATION_CAP => Ok(o),
            _ => Err(Error::TooLarge { what: "group order", size: self.order().try_into().unwrap_or(u128::MAX), limit: ENUMERATION_CAP as u128 }),
        }
    }

    /// The element with mixed-radix index `idx` in chain order.
    pub fn element(&self, mut idx: u64) -> Perm {
        let mut g = Perm::identity(self.n);
        let mut parts = Vec::with_capacity(self.levels.len());
        for l in self.levels.iter().rev() {
            let k = l.orbit.len() as u64;
            parts.push((idx % k) as usize);
            idx /= k;
        }
        parts.reverse();
        for (l, &pos) in self.levels.iter().zip(&parts) {
            g = g.compose(l.trans[l.orbit[pos]].as_ref().unwrap());
        }
        g
    }

    /// Inverse of [`PermGroup::element`]; `None` when `g` is not in the group.
    pub fn index_of(&self, g: &Perm) -> Option<u64> {
        let mut h = g.clone();
        let mut idx = 0u64;
        for l in &self.levels {
            let gamma = h.apply(l.base);
            let u = l.trans[gamma].as_ref()?;
            let pos = l.orbit.iter().position(|&x| x == gamma)? as u64;
            idx = idx * l.orbit.len() as u64 + pos;
            h = u.inverse().compose(&h);
        }
        h.is_identity().then_some(idx)
    }

    /// All elements in index order.
    pub fn elements(&self) -> Result<Vec<Perm>> {
        let o = self.require_enumerable()?;
        Ok((0..o).into_par_iter().map(|i| self.element(i)).collect())
    }

    /// Number of elements of each cycle type.
    pub fn cycle_type_census(&self) -> Result<BTreeMap<Vec<usize>, u64>> {
        let o = self.require_enumerable()?;
        let chunk = 4096u64;
        let parts: Vec<BTreeMap<Vec<usize>, u64>> = (0..o.div_ceil(chunk))
            .into_par_iter()
            .map(|c| {
                let mut m = BTreeMap::new();
                for i in c * chunk..((c + 1) * chunk).min(o) {
                    *m.entry(self.element(i).cycle_type()).or_insert(0) += 1;
                }
                m
            })
            .collect();
        let mut total = BTreeMap::new();
        for m in parts {
            for (k, v) in m {
                *total.entry(k).or_insert(0) += v;
            }
        }
        Ok(total)
    }

    /// One generator per cyclic subgroup, optionally restricted to
    /// subgroups of order at most `max_order`; the least-index generator of
    /// each subgroup is returned, in increasing index order.
    pub fn cyclic_subgroups(&self, max_order: Option<u64>) -> Result<Vec<Perm>> {
        let o = self.require_enumerable()?;
        let mut marked = vec![false; o as usize];
        let mut out = Vec::new();
        for i in 0..o {
            if marked[i as usize] {
                continue;
            }
            let g = self.element(i);
            let k = g.order();
            let mut pw = Perm::identity(self.n);
            for e in 1..=k {
                pw = pw.compose(&g);
                if num_integer::gcd(e, k) == 1 {
                    marked[self.index_of(&pw).expect("power lies in group") as usize] = true;
                }
            }
            if max_order.map_or(true, |m| k <= m) {
                out.push(g);
            }
        }
        Ok(out)
    }

    /// Action on a set of generators restricted to the first `m` points,
    /// which must form a union of orbits.
    pub fn restrict(&self, m: usize) -> Result<PermGroup> {
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let img: Vec<usize> = (0..m).map(|i| g.apply(i)).collect();
                Perm::from_images(img)
            })
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(m, gens)
    }
}

/// Serialized group: generators plus the claimed order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupFile {
    pub degree: usize,
    pub generators: Vec<Perm>,
    #[serde(with = "crate::exactalg::serde_int")]
    pub order: BigInt,
}

impl GroupFile {
    pub fn from_group(g: &PermGroup) -> Self {
        GroupFile { degree: g.degree(), generators: g.generators().to_vec(), order: g.order() }
    }

    /// Rebuilds the group and re-verifies the claimed order.
    pub fn load(&self) -> Result<PermGroup> {
        let g = PermGroup::new(self.degree, self.generators.clone())?;
        if g.order() != self.order {
            return Err(Error::Inconsistent(format!("claimed order {} but generators give {}", self.order, g.order())));
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn cyc(n: usize, c: &[usize]) -> Perm {
        Perm::from_cycles(n, &[c]).unwrap()
    }

    fn brute_closure(n: usize, gens: &[Perm]) -> HashSet<Perm> {
        let mut set = HashSet::from([Perm::identity(n)]);
        let mut frontier = vec![Perm::identity(n)];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = g.compose(&x);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    #[test]
    fn small_groups() {
        let g = PermGroup::new(2, vec![cyc(2, &[0, 1])]).unwrap();
        assert_eq!(g.order(), BigInt::from(2));
        assert!(g.is_transitive());
        let s4 = PermGroup::new(4, vec![cyc(4, &[0, 1, 2, 3]), cyc(4, &[0, 1])]).unwrap();
        assert_eq!(s4.order(), BigInt::from(24));
        assert_eq!(s4.point_stabilizer(2).unwrap().order(), BigInt::from(6));
        assert_eq!(s4.setwise_stabilizer(&[0, 1]).unwrap().order(), BigInt::from(4));
        assert_eq!(PermGroup::trivial(5).pointwise_stabilizer(&[0, 1, 2, 3, 4]).unwrap().order(), BigInt::from(1));
        assert!(s4.contains(&Perm::identity(3)).is_err());
    }

    #[test]
    fn cyclic_subgroup_counts() {
        let c6 = PermGroup::new(6, vec![cyc(6, &[0, 1, 2, 3, 4, 5])]).unwrap();
        let subs = c6.cyclic_subgroups(None).unwrap();
        let mut orders: Vec<u64> = subs.iter().map(|g| g.order()).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        let s3 = PermGroup::new(3, vec![cyc(3, &[0, 1, 2]), cyc(3, &[0, 1])]).unwrap();
        let mut orders: Vec<u64> = s3.cyclic_subgroups(None).unwrap().iter().map(|g| g.order()).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 2, 2, 2, 3]);
        let small: Vec<u64> = s3.cyclic_subgroups(Some(2)).unwrap().iter().map(|g| g.order()).collect();
        assert_eq!(small.len(), 4);
    }

    #[test]
    fn census_of_transposition() {
        let g = PermGroup::new(28, vec![cyc(28, &[0, 1])]).unwrap();
        let c = g.cycle_type_census().unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[&vec![1; 28]], 1);
        let mut t = vec![2];
        t.extend(vec![1; 26]);
        assert_eq!(c[&t], 1);
    }

    #[test]
    fn group_file_roundtrip() {
        let g = PermGroup::new(4, vec![cyc(4, &[0, 1, 2, 3])]).unwrap();
        let f = GroupFile::from_group(&g);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"degree":4,"generators":[[1,2,3,0]],"order":"4"}"#);
        let mut bad: GroupFile = serde_json::from_str(&s).unwrap();
        assert!(bad.load().is_ok());
        bad.order = BigInt::from(8);
        assert!(bad.load().is_err());
    }

    fn arb_gens() -> impl Strategy<Value = (usize, Vec<Perm>)> {
        (3usize..7).prop_flat_map(|n| {
            let perm = Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Perm::from_images(v).unwrap());
            (Just(n), proptest::collection::vec(perm, 1..3))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]
        #[test]
        fn chain_matches_brute_force((n, gens) in arb_gens(), probe in proptest::collection::vec(any::<u64>(), 20)) {
            let g = PermGroup::new(n, gens.clone()).unwrap();
            let all = brute_closure(n, &gens);
            prop_assert_eq!(g.order(), BigInt::from(all.len()));
            let els: HashSet<Perm> = g.elements().unwrap().into_iter().collect();
            prop_assert_eq!(&els, &all);
            for seed in probe {
                let mut v: Vec<usize> = (0..n).collect();
                let mut s = seed;
                for i in (1..n).rev() {
                    v.swap(i, (s % (i as u64 + 1)) as usize);
                    s /= i as u64 + 1;
                }
                let p = Perm::from_images(v).unwrap();
                prop_assert_eq!(g.contains(&p).unwrap(), all.contains(&p));
            }
            let orbit_total: usize = g.orbits().iter().map(|o| o.len()).sum();
            prop_assert_eq!(orbit_total, n);
            prop_assert_eq!(g.is_transitive(), g.orbits().len() == 1);
            for i in 0..g.order_u64().unwrap() {
                prop_assert_eq!(g.index_of(&g.element(i)), Some(i));
            }
            let st = g.point_stabilizer(0).unwrap();
            prop_assert!(st.is_subgroup_of(&g).unwrap());
            prop_assert_eq!(g.order_u64().unwrap() % st.order_u64().unwrap(), 0);
        }

        #[test]
        fn census_is_conjugation_invariant((n, gens) in arb_gens(), k in 0usize..720) {
            let g = PermGroup::new(n, gens.clone()).unwrap();
            let mut v: Vec<usize> = (0..n).collect();
            let mut s = k;
            for i in (1..n).rev() {
                v.swap(i, s % (i + 1));
                s /= i + 1;
            }
            let c = Perm::from_images(v).unwrap();
            let conj: Vec<Perm> = gens.iter().map(|x| c.compose(x).compose(&c.inverse())).collect();
            let h = PermGroup::new(n, conj).unwrap();
            prop_assert_eq!(g.cycle_type_census().unwrap(), h.cycle_type_census().unwrap());
        }
    }
}
