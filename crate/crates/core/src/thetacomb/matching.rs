use std::collections::HashMap;

use super::canonical::{CanonicalTheta, IncidenceStructure};

type Triples = HashMap<[usize; 3], Vec<usize>>;

fn triple_index(s: &IncidenceStructure) -> Triples {
    let mut t: Triples = HashMap::new();
    for q in &s.sigma {
        for skip in 0..4 {
            let mut key = [0; 3];
            let mut k = 0;
            for (i, &x) in q.iter().enumerate() {
                if i != skip {
                    key[k] = x;
                    k += 1;
                }
            }
            t.entry(key).or_default().push(q[skip]);
        }
    }
    t
}

fn sorted3(a: usize, b: usize, c: usize) -> [usize; 3] {
    let mut k = [a, b, c];
    k.sort_unstable();
    k
}

struct Search {
    n: usize,
    ta: Triples,
    tb: Triples,
    deg_a: Vec<usize>,
    deg_b: Vec<usize>,
    fwd: Vec<Option<usize>>,
    back: Vec<Option<usize>>,
    empty: Vec<usize>,
}

impl Search {
    fn fourths_a(&self, k: [usize; 3]) -> &[usize] {
        self.ta.get(&k).unwrap_or(&self.empty)
    }

    fn fourths_b(&self, k: [usize; 3]) -> &[usize] {
        self.tb.get(&k).unwrap_or(&self.empty)
    }

    /// Whether `x ↦ y` is consistent with every triple through `x` and two
    /// already assigned labels.
    fn consistent(&self, x: usize, y: usize) -> bool {
        for s in 0..x {
            for t in s + 1..x {
                let (is, it) = (self.fwd[s].unwrap(), self.fwd[t].unwrap());
                let fa = self.fourths_a(sorted3(x, s, t));
                let fb = self.fourths_b(sorted3(y, is, it));
                if fa.len() != fb.len() {
                    return false;
                }
                for &f in fa {
                    let img = if f == x { Some(y) } else { self.fwd[f] };
                    if let Some(img) = img {
                        if !fb.contains(&img) {
                            return false;
                        }
                    }
                }
                for &f in fb {
                    let pre = if f == y { Some(x) } else { self.back[f] };
                    if let Some(pre) = pre {
                        if !fa.contains(&pre) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn dfs(&mut self, x: usize) -> bool {
        if x == self.n {
            return true;
        }
        for y in 0..self.n {
            if self.back[y].is_some() || self.deg_a[x] != self.deg_b[y] || !self.consistent(x, y) {
                continue;
            }
            self.fwd[x] = Some(y);
            self.back[y] = Some(x);
            if self.dfs(x + 1) {
                return true;
            }
            self.fwd[x] = None;
            self.back[y] = None;
        }
        false
    }
}

/// A bijection `map` of labels with `map(Σ_A) = Σ_B`, or `None`.
///
/// Labels of `a` are assigned in increasing order, each to the smallest
/// admissible label of `b`, so the result is the lexicographically least
/// isomorphism.
pub fn match_incidence(a: &IncidenceStructure, b: &IncidenceStructure) -> Option<Vec<usize>> {
    if a.n != b.n || a.sigma.len() != b.sigma.len() {
        return None;
    }
    let (deg_a, deg_b) = (a.degrees(), b.degrees());
    let (mut da, mut db) = (deg_a.clone(), deg_b.clone());
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return None;
    }
    let mut s = Search {
        n: a.n,
        ta: triple_index(a),
        tb: triple_index(b),
        deg_a,
        deg_b,
        fwd: vec![None; a.n],
        back: vec![None; a.n],
        empty: Vec::new(),
    };
    if !s.dfs(0) {
        return None;
    }
    let map: Vec<usize> = s.fwd.iter().map(|y| y.unwrap()).collect();
    (a.relabel(&map) == *b).then_some(map)
}

/// Matches an incidence structure against the canonical model.
pub fn match_structures(a: &IncidenceStructure, b: &CanonicalTheta) -> Option<Vec<usize>> {
    match_incidence(a, &b.incidence())
}
