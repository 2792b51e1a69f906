use super::ring::{Field, Ring};

/// Determinant over an integral domain by fraction-free Bareiss elimination.
pub fn det_bareiss<R: Ring>(mut m: Vec<Vec<R>>, zero: &R) -> R {
    let n = m.len();
    if n == 0 {
        return zero.one_like();
    }
    let mut sign_flip = false;
    let mut prev = zero.one_like();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return zero.clone(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact over a domain");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        -d
    } else {
        d
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(i) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, i);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = m[r][j].clone();
                    m[i][j] = m[i][j].clone() - f.clone() * t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &[Vec<F>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Basis of the right kernel `{x : m x = 0}` with free-variable coordinates
/// set to unit vectors in increasing column order.
pub fn kernel<F: Field>(m: &[Vec<F>], ncols: usize, zero: &F) -> Vec<Vec<F>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let one = zero.one_like();
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![zero.clone(); ncols];
        v[free] = one.clone();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[row][free].clone();
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Fp, Poly};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn naive_det(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect()).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * naive_det(&minor)
            })
            .sum()
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor(n in 1usize..5, vals in proptest::collection::vec(-5i64..6, 16)) {
            let m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| vals[i * 4 + j]).collect()).collect();
            let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            prop_assert_eq!(det_bareiss(big, &BigInt::from(0)), BigInt::from(naive_det(&m)));
        }
    }

    #[test]
    fn bareiss_over_polynomials() {
        let z = BigInt::from(0);
        let t = Poly::t(&BigInt::from(1));
        let c = |k: i64| Poly::constant(BigInt::from(k));
        let m = vec![vec![t.clone(), c(1)], vec![c(1), t.clone()]];
        let d = det_bareiss(m, &Poly::zero(z));
        assert_eq!(d, &(&t * &t) - &c(1));
    }

    #[test]
    fn kernel_and_rank() {
        let f = |v: i64| Fp::from_i64(v, 7);
        let m = vec![vec![f(1), f(2), f(3)], vec![f(2), f(4), f(6)]];
        assert_eq!(rank(&m), 1);
        let k = kernel(&m, 3, &f(0));
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &m {
                let s = row.iter().zip(v).fold(f(0), |a, (x, y)| a + *x * *y);
                assert!(s.is_zero());
            }
        }
    }
}
