use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::group::PermGroup;
use super::perm::Perm;
use crate::error::{Error, Result};

/// Constraints and budget for [`search_subgroup`].
#[derive(Debug, Clone)]
pub struct SearchParams {
    pub target_order: u64,
    pub require_transitive: bool,
    pub seed: u64,
    /// Maximum number of sampled elements.
    pub cap: u64,
}

impl PermGroup {
    /// A uniformly random element drawn through the chain indexing.
    pub fn random_element<G: Rng + ?Sized>(&self, rng: &mut G) -> Perm {
        match self.order_u64() {
            Some(o) => self.element(rng.gen_range(0..o)),
            None => {
                let mut g = Perm::identity(self.degree());
                for _ in 0..64 {
                    let gens = self.generators();
                    g = g.compose(&gens[rng.gen_range(0..gens.len())]);
                }
                g
            }
        }
    }

    /// A generating set found by random sampling: elements are drawn until
    /// they generate the whole group, then redundant ones are dropped.
    pub fn small_generating_set(&self, seed: u64) -> Result<Vec<Perm>> {
        let target = self.order();
        if target == BigInt::from(1) {
            return Ok(Vec::new());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut gens: Vec<Perm> = Vec::new();
        for _ in 0..256 {
            gens.push(self.random_element(&mut rng));
            if PermGroup::new(self.degree(), gens.clone())?.order() == target {
                let mut i = 0;
                while i < gens.len() && gens.len() > 1 {
                    let mut trial = gens.clone();
                    trial.remove(i);
                    if PermGroup::new(self.degree(), trial.clone())?.order() == target {
                        gens = trial;
                    } else {
                        i += 1;
                    }
                }
                return Ok(gens);
            }
        }
        Ok(self.generators().to_vec())
    }
}

/// Searches for a subgroup of the given order generated by at most three
/// sampled elements whose orders divide the target. Returns `Ok(None)` when
/// the sampling budget is exhausted.
pub fn search_subgroup(g: &PermGroup, params: &SearchParams) -> Result<Option<PermGroup>> {
    let order = g.order();
    let target = params.target_order;
    if target == 0 || !order.is_multiple_of(&BigInt::from(target)) {
        return Err(Error::Invalid(format!("target order {target} does not divide {order}")));
    }
    let accept = |h: &PermGroup| !params.require_transitive || h.is_transitive();
    if BigInt::from(target) == order {
        return Ok(accept(g).then(|| g.clone()));
    }
    let n = g.degree();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut samples = 0u64;
    let draw = |rng: &mut ChaCha8Rng, samples: &mut u64| -> Option<Perm> {
        while *samples < params.cap {
            *samples += 1;
            let x = g.random_element(rng);
            if !x.is_identity() && target % x.order() == 0 {
                return Some(x);
            }
        }
        None
    };
    while samples < params.cap {
        let Some(a) = draw(&mut rng, &mut samples) else { break };
        let Some(b) = draw(&mut rng, &mut samples) else { break };
        let h = PermGroup::new(n, vec![a.clone(), b.clone()])?;
        let ho = h.order().to_u64().unwrap_or(u64::MAX);
        if ho == target && accept(&h) {
            return Ok(Some(h));
        }
        if ho < target && target % ho == 0 {
            let Some(c) = draw(&mut rng, &mut samples) else { break };
            let h3 = PermGroup::new(n, vec![a, b, c])?;
            if h3.order() == BigInt::from(target) && accept(&h3) {
                return Ok(Some(h3));
            }
        }
    }
    Ok(None)
}
