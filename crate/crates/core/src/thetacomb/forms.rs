use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `F_2^{2g}` with the standard symplectic pairing
/// `e(x, y) = Σ_{i<g} (x_i y_{i+g} + x_{i+g} y_i)`.
///
/// Vectors are bitmasks: bit `i` is coordinate `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymplecticSpace {
    pub genus: u32,
}

impl SymplecticSpace {
    pub fn new(genus: u32) -> Self {
        assert!((1..=8).contains(&genus), "genus between 1 and 8");
        SymplecticSpace { genus }
    }

    pub fn dim(&self) -> u32 {
        2 * self.genus
    }

    pub fn size(&self) -> usize {
        1usize << self.dim()
    }

    pub fn pair(&self, x: u32, y: u32) -> u8 {
        let g = self.genus;
        let lo = (1u32 << g) - 1;
        let swapped = ((y & lo) << g) | ((y >> g) & lo);
        ((x & swapped).count_ones() & 1) as u8
    }

    /// Gram matrix rows as bitmasks.
    pub fn gram(&self) -> Vec<u32> {
        (0..self.dim()).map(|i| (0..self.dim()).filter(|&j| self.pair(1 << i, 1 << j) == 1).fold(0, |m, j| m | 1 << j)).collect()
    }

    /// The transvection `x ↦ x + e(x, a) a`.
    pub fn transvection(&self, a: u32, x: u32) -> u32 {
        if self.pair(x, a) == 1 {
            x ^ a
        } else {
            x
        }
    }
}

/// A function `F_2^{2g} → F_2` stored as a value table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadForm {
    pub space: SymplecticSpace,
    pub table: Vec<u8>,
}

impl QuadForm {
    pub fn from_fn(space: SymplecticSpace, f: impl Fn(u32) -> u8) -> Self {
        QuadForm { space, table: (0..space.size() as u32).map(|x| f(x) & 1).collect() }
    }

    /// `x_1 x_{1+g} + x_1 + x_{1+g} + Σ_{i≥2} x_i x_{i+g}`, of Arf invariant 1.
    pub fn base_odd(space: SymplecticSpace) -> Self {
        let g = space.genus;
        QuadForm::from_fn(space, |x| {
            let bit = |i: u32| ((x >> i) & 1) as u8;
            let mut v = bit(0) ^ bit(g);
            for i in 0..g {
                v ^= bit(i) & bit(i + g);
            }
            v
        })
    }

    pub fn eval(&self, x: u32) -> u8 {
        self.table[x as usize]
    }

    /// The form `x ↦ q(x) + e(v, x)`.
    pub fn translate(&self, v: u32) -> Self {
        QuadForm::from_fn(self.space, |x| self.eval(x) ^ self.space.pair(v, x))
    }

    pub fn is_associated(&self) -> bool {
        let n = self.space.size() as u32;
        (0..n).all(|x| (0..n).all(|y| self.eval(x ^ y) ^ self.eval(x) ^ self.eval(y) == self.space.pair(x, y)))
    }

    pub fn zeros(&self) -> usize {
        self.table.iter().filter(|&&v| v == 0).count()
    }
}

/// Arf invariant of a form associated to the standard pairing.
pub fn arf(q: &QuadForm) -> Result<u8> {
    if !q.is_associated() {
        return Err(Error::NotAssociated);
    }
    let g = q.space.genus;
    let even = (1usize << (2 * g - 1)) + (1usize << (g - 1));
    Ok(if q.zeros() == even { 0 } else { 1 })
}

/// A polynomial of degree at most 2 on `F_2^n`:
/// `Σ_{i<j} a_ij x_i x_j + Σ b_i x_i + c`, with squares folded into `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegTwo {
    pub n: u32,
    /// `quad[i]` has bit `j > i` set when `x_i x_j` occurs.
    pub quad: Vec<u32>,
    pub linear: u32,
    pub constant: u8,
}

impl DegTwo {
    pub fn eval(&self, x: u32) -> u8 {
        let mut v = self.constant & 1;
        v ^= ((x & self.linear).count_ones() & 1) as u8;
        for (i, row) in self.quad.iter().enumerate() {
            if (x >> i) & 1 == 1 {
                v ^= ((x & row).count_ones() & 1) as u8;
            }
        }
        v
    }

    /// Whether the alternating form of the degree-2 part is nondegenerate.
    pub fn is_nondegenerate(&self) -> bool {
        let n = self.n as usize;
        let mut rows: Vec<u32> = (0..n)
            .map(|i| {
                let mut r = self.quad[i];
                for (j, row) in self.quad.iter().enumerate() {
                    if (row >> i) & 1 == 1 && j < i {
                        r |= 1 << j;
                    }
                }
                r
            })
            .collect();
        let mut rank = 0;
        for c in 0..n {
            if let Some(p) = (rank..n).find(|&r| (rows[r] >> c) & 1 == 1) {
                rows.swap(rank, p);
                for r in 0..n {
                    if r != rank && (rows[r] >> c) & 1 == 1 {
                        rows[r] ^= rows[rank];
                    }
                }
                rank += 1;
            }
        }
        rank == n
    }

    /// Recovers the polynomial from a function table of length `2^n`,
    /// failing if the function has degree above 2.
    pub fn from_table(n: u32, table: &[u8]) -> Result<Self> {
        let c = table[0] & 1;
        let mut linear = 0;
        for i in 0..n {
            if (table[1 << i] ^ c) & 1 == 1 {
                linear |= 1 << i;
            }
        }
        let mut quad = vec![0u32; n as usize];
        for i in 0..n {
            for j in i + 1..n {
                let v = table[(1 << i) | (1 << j)] ^ table[1 << i] ^ table[1 << j] ^ c;
                if v & 1 == 1 {
                    quad[i as usize] |= 1 << j;
                }
            }
        }
        let f = DegTwo { n, quad, linear, constant: c };
        if (0..1u32 << n).any(|x| f.eval(x) != table[x as usize] & 1) {
            return Err(Error::Invalid("function has degree above 2".into()));
        }
        Ok(f)
    }
}

/// Finds the least `x` (as an integer) with `f(x) = 0` and `f(x + v) = 0`
/// for every shift `v`.
pub fn quad_solve(f: &DegTwo, shifts: &[u32]) -> Result<u32> {
    let n = f.n;
    let need = match shifts.len() {
        0 => 2,
        1 => 4,
        2 => 6,
        _ => return Err(Error::LemmaHypotheses("at most two shifts".into())),
    };
    if n % 2 != 0 || n < need || n > 24 || !f.is_nondegenerate() {
        return Err(Error::LemmaHypotheses(format!("n = {n}, shifts = {}, nondegenerate = {}", shifts.len(), f.is_nondegenerate())));
    }
    (0..1u32 << n)
        .find(|&x| f.eval(x) == 0 && shifts.iter().all(|&v| f.eval(x ^ v) == 0))
        .ok_or_else(|| Error::LemmaHypotheses("no witness found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn genus_one_arf() {
        let s = SymplecticSpace::new(1);
        let even = QuadForm::from_fn(s, |x| ((x & 1) & (x >> 1)) as u8);
        assert_eq!(arf(&even).unwrap(), 0);
        let odd = QuadForm::from_fn(s, |x| (((x & 1) & (x >> 1)) ^ (x & 1) ^ (x >> 1)) as u8);
        assert_eq!(arf(&odd).unwrap(), 1);
        let bad = QuadForm::from_fn(s, |x| (x & 1) as u8);
        assert_eq!(arf(&bad), Err(Error::NotAssociated));
    }

    #[test]
    fn odd_and_even_counts() {
        for g in 2..=4u32 {
            let s = SymplecticSpace::new(g);
            let q0 = QuadForm::base_odd(s);
            assert_eq!(arf(&q0).unwrap(), 1);
            let odd = (0..s.size() as u32).filter(|&v| arf(&q0.translate(v)).unwrap() == 1).count();
            assert_eq!(odd, (1 << (g - 1)) * ((1 << g) - 1));
            assert_eq!(s.size() - odd, (1 << (g - 1)) * ((1 << g) + 1));
            // Translation rule: Arf(q + e(v,·)) = Arf(q) + q(v).
            for v in 0..s.size() as u32 {
                assert_eq!(arf(&q0.translate(v)).unwrap(), 1 ^ q0.eval(v));
            }
        }
    }

    #[test]
    fn quad_solve_examples() {
        let f = DegTwo { n: 4, quad: vec![0b10, 0, 0b1000, 0], linear: 0, constant: 0 };
        assert_eq!(quad_solve(&f, &[]).unwrap(), 0);
        let s = SymplecticSpace::new(3);
        let q0 = QuadForm::base_odd(s);
        let f = DegTwo::from_table(6, &q0.table).unwrap();
        for v in 1..64 {
            let x = quad_solve(&f, &[v]).unwrap();
            assert_eq!((q0.eval(x), q0.eval(x ^ v)), (0, 0));
        }
        let deg = DegTwo { n: 4, quad: vec![0b10, 0, 0, 0], linear: 0, constant: 0 };
        assert!(matches!(quad_solve(&deg, &[1]), Err(Error::LemmaHypotheses(_))));
        assert!(matches!(quad_solve(&f, &[1, 2, 3]), Err(Error::LemmaHypotheses(_))));
        let small = DegTwo { n: 4, quad: vec![0b10, 0, 0b1000, 0], linear: 0, constant: 1 };
        assert!(matches!(quad_solve(&small, &[1, 2]), Err(Error::LemmaHypotheses(_))));
    }

    fn arb_nondeg6() -> impl Strategy<Value = DegTwo> {
        (proptest::collection::vec(0u32..64, 6), 0u32..64, 0u8..2)
            .prop_map(|(q, l, c)| DegTwo { n: 6, quad: q.iter().enumerate().map(|(i, r)| r & !((2u32 << i) - 1)).collect(), linear: l, constant: c })
            .prop_filter("nondegenerate", |f| f.is_nondegenerate())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn two_shift_witness_exists(f in arb_nondeg6(), v1 in 0u32..64, v2 in 0u32..64) {
            let x = quad_solve(&f, &[v1, v2]).unwrap();
            prop_assert_eq!((f.eval(x), f.eval(x ^ v1), f.eval(x ^ v2)), (0, 0, 0));
        }

        #[test]
        fn table_roundtrip(f in arb_nondeg6()) {
            let t: Vec<u8> = (0..64).map(|x| f.eval(x)).collect();
            prop_assert_eq!(DegTwo::from_table(6, &t).unwrap(), f);
        }
    }
}
