use serde::Serialize;

use super::canonical::IncidenceStructure;
use crate::error::{Error, Result};
use crate::f2mod::{F2Subspace, F2Vec};

/// The symplectic data reconstructed from an incidence structure.
///
/// `P = F_2^Δ / ⟨Σ⟩` and `P0 ⊂ P` is spanned by the classes of `δ + δ'`.
/// Vectors of `P0` are bitmasks in the echelon basis of `P0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RecoveredSymplectic {
    pub genus: u32,
    pub dim_p: usize,
    pub dim_p0: usize,
    /// Class of `δ + δ_0` for every label `δ`.
    pub marking: Vec<u32>,
    /// Rows of the Gram matrix of the pairing on `P0`.
    pub gram: Vec<u32>,
    /// Value table of the quadratic form on `P0` whose zeros are the marking.
    pub form: Vec<u8>,
}

fn genus_of(n: usize) -> Option<u32> {
    (2..=4u32).find(|&g| (1usize << (g - 1)) * ((1usize << g) - 1) == n)
}

/// Reconstructs `(P0, e, q)` from `(Δ, Σ)`, checking every property of a
/// theta structure along the way.
pub fn recover_symplectic(s: &IncidenceStructure) -> Result<RecoveredSymplectic> {
    let n = s.n;
    let fail = |why: &str| Error::NotThetaStructure(why.to_string());
    let genus = genus_of(n).ok_or_else(|| fail("label count is not 2^(g-1)(2^g-1) for 2 <= g <= 4"))?;
    let relations: Vec<F2Vec> = if genus == 2 {
        if !s.sigma.is_empty() {
            return Err(fail("genus two structures carry no quadruples"));
        }
        vec![F2Vec::ones(n)]
    } else {
        s.sigma.iter().map(|q| F2Vec::from_indices(n, q)).collect()
    };
    let rel = F2Subspace::span(n, relations);
    let dim_p = n - rel.dim();
    if dim_p != 2 * genus as usize + 1 {
        return Err(fail(&format!("quotient has dimension {dim_p}, expected {}", 2 * genus + 1)));
    }
    let diffs: Vec<F2Vec> = (0..n).map(|i| if i == 0 { F2Vec::zeros(n) } else { rel.reduce(&F2Vec::from_indices(n, &[0, i])) }).collect();
    let p0 = F2Subspace::span(n, diffs.clone());
    let dim_p0 = p0.dim();
    if dim_p0 != 2 * genus as usize {
        return Err(fail(&format!("pair classes span dimension {dim_p0}")));
    }
    let marking: Vec<u32> = diffs.iter().map(|v| p0.coords(v).expect("inside the span").to_u64() as u32).collect();
    let size = 1usize << dim_p0;
    let mut form = vec![1u8; size];
    for &m in &marking {
        if form[m as usize] == 0 {
            return Err(fail("two labels have the same class"));
        }
        form[m as usize] = 0;
    }
    let pair = |x: usize, y: usize| form[x ^ y] ^ form[x] ^ form[y];
    for b in 0..dim_p0 {
        let on_basis: Vec<u8> = (0..dim_p0).map(|i| pair(1 << i, 1 << b)).collect();
        for y in 0..size {
            let linear = (0..dim_p0).filter(|&i| y >> i & 1 == 1).fold(0, |acc, i| acc ^ on_basis[i]);
            if pair(y, 1 << b) != linear {
                return Err(fail("polarization is not bilinear"));
            }
        }
    }
    let gram: Vec<u32> = (0..dim_p0).map(|i| (0..dim_p0).filter(|&j| pair(1 << i, 1 << j) == 1).fold(0u32, |m, j| m | 1 << j)).collect();
    let gram_rows: Vec<F2Vec> = gram.iter().map(|&r| F2Vec::from_u64(dim_p0, r as u64)).collect();
    if F2Subspace::span(dim_p0, gram_rows).dim() != dim_p0 {
        return Err(fail("pairing is degenerate"));
    }
    if genus >= 3 {
        let mut label_of = vec![None; size];
        for (i, &m) in marking.iter().enumerate() {
            label_of[m as usize] = Some(i);
        }
        let mut expected = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let v = marking[a] ^ marking[b] ^ marking[c];
                    if let Some(d) = label_of[v as usize] {
                        if d > c {
                            expected.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        if expected != s.sigma {
            return Err(fail("quadruples differ from the zero-sum quadruples of the marking"));
        }
    }
    Ok(RecoveredSymplectic { genus, dim_p, dim_p0, marking, gram, form })
}
