//! The ζ-coordinates `ζ^k = P̂^{k+1} 1` on the Burgers jet space.
//!
//! `ζ^k = -v_k/2 + (terms in v_0..v_{k-1})`, so `v_0..v_K ↔ ζ^0..ζ^K` is a
//! triangular polynomial change of coordinates.

use std::collections::BTreeMap;
use std::fmt;

use crate::diffring::{rat, DiffPoly, VarId};
use crate::error::{Error, Result};
use crate::jetflow::EquationKind;
use crate::opcalc::{apply, OperatorExpr};

pub const DEFAULT_MAX_INDEX: u32 = 8;

/// A polynomial in which `Jet(k)` stands for the symbol `ζ_k` rather than `v_k`.
///
/// Kept as a separate type so ζ- and v-polynomials cannot be mixed by accident.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZetaPoly(pub DiffPoly);

impl ZetaPoly {
    pub fn symbol(k: u32) -> Self {
        ZetaPoly(DiffPoly::jet(k))
    }

    pub fn as_poly(&self) -> &DiffPoly {
        &self.0
    }
}

impl fmt::Display for ZetaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.display_with("zeta").fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaBasis {
    max_index: u32,
    zetas: Vec<DiffPoly>,
    /// `inverse[k]` expresses `v_k` through `ζ_0..ζ_k`.
    inverse: Vec<DiffPoly>,
}

pub fn build_zetas(max_index: u32) -> Result<ZetaBasis> {
    let eq = EquationKind::Burgers.equation();
    let p_hat = OperatorExpr::p_hat();
    let mut zetas = Vec::with_capacity(max_index as usize + 1);
    let mut current = DiffPoly::one();
    for _ in 0..=max_index {
        current = apply(&p_hat, eq, &current)?;
        zetas.push(current.clone());
    }
    let mut inverse: Vec<DiffPoly> = Vec::with_capacity(zetas.len());
    for (k, z) in zetas.iter().enumerate() {
        let k = k as u32;
        // ζ^k = -v_k/2 + lower_k  ⇒  v_k = -2 (ζ_k - lower_k(v ↦ inverse))
        let lower = z + &DiffPoly::jet(k).scale(&rat(1, 2));
        let rules: BTreeMap<VarId, DiffPoly> = inverse
            .iter()
            .enumerate()
            .map(|(j, p)| (VarId::Jet(j as u32), p.clone()))
            .collect();
        let lower_in_zeta = lower.substitute(&rules);
        inverse.push((&DiffPoly::jet(k) - &lower_in_zeta).scale(&rat(-2, 1)));
    }
    Ok(ZetaBasis {
        max_index,
        zetas,
        inverse,
    })
}

impl ZetaBasis {
    pub fn max_index(&self) -> u32 {
        self.max_index
    }

    /// `ζ^k` as a polynomial in `v`-jets.
    pub fn zeta(&self, k: u32) -> &DiffPoly {
        &self.zetas[k as usize]
    }

    pub fn zetas(&self) -> &[DiffPoly] {
        &self.zetas
    }

    /// Rewrites a `v`-polynomial in the symbols `ζ_0..ζ_K`.
    pub fn to_zeta_coordinates(&self, p: &DiffPoly) -> Result<ZetaPoly> {
        if let Some(order) = p.order() {
            if order > self.max_index {
                return Err(Error::OrderExceeded {
                    order,
                    max: self.max_index,
                });
            }
        }
        let rules: BTreeMap<VarId, DiffPoly> = self
            .inverse
            .iter()
            .enumerate()
            .map(|(k, q)| (VarId::Jet(k as u32), q.clone()))
            .collect();
        Ok(ZetaPoly(p.substitute(&rules)))
    }

    /// Substitutes `ζ_k ↦ ζ^k(v)`.
    pub fn from_zeta(&self, p: &ZetaPoly) -> Result<DiffPoly> {
        if let Some(order) = p.0.order() {
            if order > self.max_index {
                return Err(Error::OrderExceeded {
                    order,
                    max: self.max_index,
                });
            }
        }
        let rules: BTreeMap<VarId, DiffPoly> = self
            .zetas
            .iter()
            .enumerate()
            .map(|(k, z)| (VarId::Jet(k as u32), z.clone()))
            .collect();
        Ok(p.0.substitute(&rules))
    }
}

/// Residuals of `D_x ζ^k = ζ^{k+1} - ζ^0 ζ^k` and `(D_t + v D_x - D_x^2) ζ^k = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaReport {
    pub max_index: u32,
    pub derivative_residuals: Vec<DiffPoly>,
    pub annihilation_residuals: Vec<DiffPoly>,
}

impl ZetaReport {
    pub fn holds(&self) -> bool {
        self.derivative_residuals
            .iter()
            .chain(&self.annihilation_residuals)
            .all(DiffPoly::is_zero)
    }
}

pub fn verify_zeta_identities(max_index: u32) -> Result<ZetaReport> {
    let eq = EquationKind::Burgers.equation();
    let basis = build_zetas(max_index + 1)?;
    let z0 = basis.zeta(0);
    let v = DiffPoly::jet(0);
    let mut derivative_residuals = Vec::new();
    let mut annihilation_residuals = Vec::new();
    for k in 0..=max_index {
        let zk = basis.zeta(k);
        let dx = eq.dx(zk)?;
        derivative_residuals.push(&dx - &(basis.zeta(k + 1) - &(z0 * zk)));
        let lhs = &(&eq.dt(zk)? + &(&v * &dx)) - &eq.dx(&dx)?;
        annihilation_residuals.push(lhs);
    }
    Ok(ZetaReport {
        max_index,
        derivative_residuals,
        annihilation_residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffring::int;

    fn v(k: u32) -> DiffPoly {
        DiffPoly::jet(k)
    }

    #[test]
    fn first_zetas() {
        let b = build_zetas(2).unwrap();
        assert_eq!(b.zeta(0), &v(0).scale(&rat(-1, 2)));
        assert_eq!(b.zeta(1), &(&v(1).scale(&rat(-1, 2)) + &v(0).pow(2).scale(&rat(1, 4))));
        let expected = &(&v(2).scale(&rat(-1, 2)) + &(&v(0) * &v(1)).scale(&rat(3, 4))) - &v(0).pow(3).scale(&rat(1, 8));
        assert_eq!(b.zeta(2), &expected);
        for k in 0..=2 {
            assert_eq!(b.zeta(k).order(), Some(k));
        }
    }

    #[test]
    fn identities_hold() {
        let r = verify_zeta_identities(DEFAULT_MAX_INDEX).unwrap();
        assert!(r.holds());
        assert_eq!(r.derivative_residuals.len(), 9);
    }

    #[test]
    fn coordinate_examples() {
        let b = build_zetas(3).unwrap();
        assert_eq!(b.to_zeta_coordinates(&v(0)).unwrap(), ZetaPoly(DiffPoly::jet(0).scale(&int(-2))));
        let z = DiffPoly::jet;
        let expected = (&z(1) - &z(0).pow(2)).scale(&int(-2));
        assert_eq!(b.to_zeta_coordinates(&v(1)).unwrap(), ZetaPoly(expected));
        assert!(matches!(
            b.to_zeta_coordinates(&v(4)),
            Err(Error::OrderExceeded { order: 4, max: 3 })
        ));
    }

    #[test]
    fn round_trip() {
        let b = build_zetas(3).unwrap();
        let p = &(&DiffPoly::t() * &v(3)) + &(&v(0).pow(2) * &v(2));
        let zp = b.to_zeta_coordinates(&p).unwrap();
        assert_eq!(b.from_zeta(&zp).unwrap(), p);
        assert_eq!(ZetaPoly::symbol(1).to_string(), "zeta_1");
    }
}
