//! Small groups, enumeration of `GL_d(F_2)` and a direct computation of `H^1`
//! over all functions `G → M`, shared by several test targets.

#![allow(dead_code)]

use std::collections::HashMap;

use qdescent::f2mod::{F2Mat, F2Vec};
use qdescent::permgrp::{Perm, PermGroup};

pub fn cycle_on(n: usize, pts: &[usize]) -> Perm {
    Perm::from_cycles(n, &[pts]).unwrap()
}

pub fn cyclic(n: usize) -> (String, PermGroup) {
    let g = if n == 1 { Perm::identity(1) } else { cycle_on(n, &(0..n).collect::<Vec<_>>()) };
    (format!("C{n}"), PermGroup::new(n.max(1), vec![g]).unwrap())
}

pub fn dihedral(n: usize) -> (String, PermGroup) {
    let r = Perm::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap();
    let s = Perm::from_images((0..n).map(|i| (n - i) % n).collect()).unwrap();
    (format!("D{n}"), PermGroup::new(n, vec![r, s]).unwrap())
}

/// Left regular representation of `⟨a, x | a^{2m}, x^2 = a^m, x a x^{-1} = a^{-1}⟩`.
pub fn dicyclic(m: usize) -> (String, PermGroup) {
    let n2 = 2 * m;
    let idx = |i: usize, j: usize| 2 * i + j;
    let mul = |(i, j): (usize, usize), (k, l): (usize, usize)| match (j, l) {
        (0, _) => ((i + k) % n2, l),
        (1, 0) => ((i + n2 - k) % n2, 1),
        _ => ((i + n2 - k + m) % n2, 0),
    };
    let left = |g: (usize, usize)| {
        let mut images = vec![0; 2 * n2];
        for i in 0..n2 {
            for j in 0..2 {
                let (a, b) = mul(g, (i, j));
                images[idx(i, j)] = idx(a, b);
            }
        }
        Perm::from_images(images).unwrap()
    };
    (format!("Dic{m}"), PermGroup::new(2 * n2, vec![left((1, 0)), left((0, 1))]).unwrap())
}

pub fn product(name: &str, n: usize, cycles: &[&[usize]]) -> (String, PermGroup) {
    (name.to_string(), PermGroup::new(n, cycles.iter().map(|c| cycle_on(n, c)).collect()).unwrap())
}

/// One representative of every isomorphism type of group of order at most 12.
pub fn small_groups() -> Vec<(String, PermGroup)> {
    let mut out = vec![cyclic(1)];
    for n in 2..=12 {
        out.push(cyclic(n));
    }
    out.extend([
        product("C2xC2", 4, &[&[0, 1], &[2, 3]]),
        dihedral(3),
        product("C4xC2", 6, &[&[0, 1, 2, 3], &[4, 5]]),
        product("C2^3", 6, &[&[0, 1], &[2, 3], &[4, 5]]),
        dihedral(4),
        dicyclic(2),
        product("C3xC3", 6, &[&[0, 1, 2], &[3, 4, 5]]),
        dihedral(5),
        product("C6xC2", 8, &[&[0, 1, 2, 3, 4, 5], &[6, 7]]),
        ("A4".into(), PermGroup::new(4, vec![cycle_on(4, &[0, 1, 2]), Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap()]).unwrap()),
        dihedral(6),
        dicyclic(3),
    ]);
    out
}

pub fn gl(d: usize) -> Vec<F2Mat> {
    (0u64..1 << (d * d))
        .map(|x| F2Mat::from_rows(d, (0..d).map(|r| F2Vec::from_u64(d, x >> (r * d) & ((1 << d) - 1))).collect()))
        .filter(|m| m.rank() == d)
        .collect()
}

pub fn mat_order(m: &F2Mat) -> u64 {
    (1..=64).find(|&k| m.pow(k).is_identity()).expect("finite order")
}

/// Elements of the group in breadth-first order from the identity.
pub fn elements(g: &PermGroup) -> Vec<Perm> {
    let n = g.degree();
    let mut elems = vec![Perm::identity(n)];
    let mut index: HashMap<Perm, usize> = HashMap::from([(Perm::identity(n), 0)]);
    let mut i = 0;
    while i < elems.len() {
        for s in g.generators() {
            let y = elems[i].compose(s);
            if !index.contains_key(&y) {
                index.insert(y.clone(), elems.len());
                elems.push(y);
            }
        }
        i += 1;
    }
    elems
}

/// The representation extending `mats`, if it is a homomorphism.
pub fn extend(g: &PermGroup, elems: &[Perm], mats: &[F2Mat]) -> Option<Vec<F2Mat>> {
    let d = mats[0].nrows();
    let index: HashMap<&Perm, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut rho: Vec<Option<F2Mat>> = vec![None; elems.len()];
    rho[0] = Some(F2Mat::identity(d));
    let mut queue = vec![0usize];
    while let Some(x) = queue.pop() {
        let rx = rho[x].clone().unwrap();
        for (s, m) in g.generators().iter().zip(mats) {
            let y = index[&elems[x].compose(s)];
            let ry = rx.mul(m);
            match &rho[y] {
                Some(r) if *r != ry => return None,
                Some(_) => {}
                None => {
                    rho[y] = Some(ry);
                    queue.push(y);
                }
            }
        }
    }
    let rho: Vec<F2Mat> = rho.into_iter().map(Option::unwrap).collect();
    for (i, x) in elems.iter().enumerate() {
        for (j, y) in elems.iter().enumerate() {
            if rho[index[&x.compose(y)]] != rho[i].mul(&rho[j]) {
                return None;
            }
        }
    }
    Some(rho)
}

/// `dim Z^1 − dim B^1` from the cocycle identity imposed on every pair.
pub fn oracle_h1(elems: &[Perm], rho: &[F2Mat]) -> usize {
    let d = rho[0].nrows();
    let o = elems.len();
    let index: HashMap<&Perm, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let unknowns = o * d;
    let mut rows = Vec::new();
    for (x, ex) in elems.iter().enumerate() {
        for (y, ey) in elems.iter().enumerate() {
            let xy = index[&ex.compose(ey)];
            for r in 0..d {
                // f(xy)_r + f(x)_r + Σ_c ρ(x)_{rc} f(y)_c = 0
                let mut row = F2Vec::zeros(unknowns);
                row.flip(xy * d + r);
                row.flip(x * d + r);
                for c in 0..d {
                    if rho[x].get(r, c) {
                        row.flip(y * d + c);
                    }
                }
                rows.push(row);
            }
        }
    }
    let z1 = unknowns - F2Mat::from_rows(unknowns, rows).rank();
    let b1_gens: Vec<F2Vec> = (0..d)
        .map(|c| {
            let mut v = F2Vec::zeros(unknowns);
            for (x, m) in rho.iter().enumerate() {
                for r in 0..d {
                    if m.get(r, c) != (r == c) {
                        v.flip(x * d + r);
                    }
                }
            }
            v
        })
        .collect();
    z1 - F2Mat::from_rows(unknowns, b1_gens).rank()
}

pub fn tuples(cands: &[Vec<F2Mat>]) -> Vec<Vec<F2Mat>> {
    cands.iter().fold(vec![Vec::new()], |acc, c| acc.iter().flat_map(|t| c.iter().map(move |m| [t.clone(), vec![m.clone()]].concat())).collect())
}

pub fn gl_with_order_dividing(d: usize, n: u64) -> Vec<F2Mat> {
    gl(d).into_iter().filter(|m| n % mat_order(m) == 0).collect()
}
