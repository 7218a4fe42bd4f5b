//! Seeded random polynomials for identity probing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diffring::{rat, DiffPoly, Monomial, VarId};

#[derive(Debug, Clone, Copy)]
pub struct ProbeConfig {
    pub seed: u64,
    /// Highest jet index that may occur.
    pub max_order: u32,
    pub max_terms: usize,
    /// Bound on each exponent.
    pub max_exponent: u32,
    pub include_tx: bool,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        Self {
            seed: 0x5eed,
            max_order: 3,
            max_terms: 4,
            max_exponent: 2,
            include_tx: true,
        }
    }
}

fn random_monomial(rng: &mut ChaCha8Rng, cfg: &ProbeConfig) -> Monomial {
    let mut vars: Vec<VarId> = (0..=cfg.max_order).map(VarId::Jet).collect();
    if cfg.include_tx {
        vars.extend([VarId::T, VarId::X]);
    }
    let factors = rng.gen_range(0..=3);
    Monomial::from_factors((0..factors).map(|_| {
        let v = vars[rng.gen_range(0..vars.len())];
        (v, rng.gen_range(1..=cfg.max_exponent))
    }))
}

/// `count` random polynomials with small rational coefficients; identical for equal configs.
pub fn random_polys(cfg: &ProbeConfig, count: usize) -> Vec<DiffPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    (0..count)
        .map(|_| {
            let terms = rng.gen_range(1..=cfg.max_terms);
            DiffPoly::from_terms((0..terms).map(|_| {
                let m = random_monomial(&mut rng, cfg);
                let num = rng.gen_range(-9i64..=9);
                let den = rng.gen_range(1i64..=5);
                (m, rat(num, den))
            }))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_bounded() {
        let cfg = ProbeConfig::default();
        let a = random_polys(&cfg, 10);
        assert_eq!(a, random_polys(&cfg, 10));
        assert!(a.iter().all(|p| p.order().is_none_or(|k| k <= cfg.max_order)));
        let other = random_polys(&ProbeConfig { seed: 1, ..cfg }, 10);
        assert_ne!(a, other);
    }
}
