use std::fmt;
use std::ops::Mul;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{0..n-1}` stored as its image array, `n <= 256`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        assert!(n <= 256, "degree at most 256");
        Perm((0..n).map(|i| i as u8).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > 256 {
            return Err(Error::TooLarge { what: "permutation degree", size: n as u128, limit: 256 });
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Invalid(format!("not a permutation of 0..{n}")));
            }
            seen[i] = true;
        }
        Ok(Perm(images.into_iter().map(|i| i as u8).collect()))
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut img: Vec<usize> = (0..n).collect();
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                if a >= n {
                    return Err(Error::Invalid(format!("point {a} out of range")));
                }
                img[a] = c[(k + 1) % c.len()];
            }
        }
        Perm::from_images(img)
    }

    pub fn bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x as usize).collect()
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Perm(inv)
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&b);
            }
            b = b.compose(&b);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Cycle lengths in decreasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn order(&self) -> u64 {
        self.cycle_type().into_iter().fold(1u64, |a, l| a.lcm(&(l as u64)))
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|(i, &j)| *i == j as usize).count()
    }

    pub fn smallest_moved(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(i, &j)| *i != j as usize).map(|(i, _)| i)
    }
}

/// Formats a cycle type like `7^4` or `2^1 1^26`.
pub fn cycle_type_string(ct: &[usize]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < ct.len() {
        let mut j = i;
        while j < ct.len() && ct[j] == ct[i] {
            j += 1;
        }
        parts.push(format!("{}^{}", ct[i], j - i));
        i = j;
    }
    parts.join(" ")
}

impl TryFrom<Vec<usize>> for Perm {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Perm::from_images(v)
    }
}

impl From<Perm> for Vec<usize> {
    fn from(p: Perm) -> Self {
        p.images()
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl<'a> Mul<&'a Perm> for &'a Perm {
    type Output = Perm;
    fn mul(self, o: &Perm) -> Perm {
        self.compose(o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        let p = Perm::from_cycles(4, &[&[0, 1, 2]]).unwrap();
        let q = Perm::from_cycles(4, &[&[2, 3]]).unwrap();
        assert_eq!(p.compose(&q).apply(2), 3);
        assert_eq!(q.compose(&p).apply(1), 3);
        assert_eq!(p.order(), 3);
        assert_eq!(p.pow(3), Perm::identity(4));
        assert_eq!(p.pow(-1), p.inverse());
        assert_eq!(p.cycle_type(), vec![3, 1]);
        assert_eq!(cycle_type_string(&[2, 1, 1]), "2^1 1^2");
        assert!(Perm::from_images(vec![0, 0]).is_err());
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[1,2,0,3]");
        let back: Perm = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Perm>("[1,1]").is_err());
    }
}
