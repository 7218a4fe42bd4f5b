use std::collections::BTreeMap;
use std::fmt;

use crate::diffring::{DiffPoly, Rational, VarId};
use crate::error::Result;
use crate::jetflow::{DifferentialFunction, EvolutionEquation};

/// `Σ_m p_m · e^{m z_0}` with integer grades `m` and polynomial components `p_m`.
///
/// Zero components are never stored. Derivations follow from `D(e^{m z_0}) = m D(z_0) e^{m z_0}`:
/// `D_x` contributes `m z_1 p_m` and `D_t` contributes `m L[z] p_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ExpPoly {
    components: BTreeMap<i32, DiffPoly>,
}

impl ExpPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_poly(p: DiffPoly) -> Self {
        Self::graded(0, p)
    }

    /// `p · e^{grade z_0}`.
    pub fn graded(grade: i32, p: DiffPoly) -> Self {
        let mut e = Self::zero();
        e.add_component(grade, &p);
        e
    }

    fn add_component(&mut self, grade: i32, p: &DiffPoly) {
        if p.is_zero() {
            return;
        }
        let slot = self.components.entry(grade).or_default();
        *slot += p;
        if slot.is_zero() {
            self.components.remove(&grade);
        }
    }

    pub fn component(&self, grade: i32) -> DiffPoly {
        self.components.get(&grade).cloned().unwrap_or_default()
    }

    pub fn components(&self) -> impl Iterator<Item = (i32, &DiffPoly)> {
        self.components.iter().map(|(&m, p)| (m, p))
    }

    pub fn grades(&self) -> Vec<i32> {
        self.components.keys().copied().collect()
    }

    /// The polynomial this element equals, if it carries no exponential factor.
    pub fn as_grade_zero(&self) -> Option<DiffPoly> {
        match self.components.len() {
            0 => Some(DiffPoly::zero()),
            1 => self.components.get(&0).cloned(),
            _ => None,
        }
    }

    /// Multiplies by `e^{shift z_0}`.
    pub fn shift_grade(&self, shift: i32) -> ExpPoly {
        ExpPoly {
            components: self
                .components
                .iter()
                .map(|(&m, p)| (m + shift, p.clone()))
                .collect(),
        }
    }

    fn map_components(&self, f: impl Fn(i32, &DiffPoly) -> Result<DiffPoly>) -> Result<ExpPoly> {
        let mut out = ExpPoly::zero();
        for (&m, p) in &self.components {
            out.add_component(m, &f(m, p)?);
        }
        Ok(out)
    }

    pub fn display_with<'a>(&'a self, dependent: &'a str) -> impl fmt::Display + 'a {
        struct D<'a>(&'a ExpPoly, &'a str);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.0.is_zero() {
                    return f.write_str("0");
                }
                for (i, (m, p)) in self.0.components.iter().rev().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    match m {
                        0 => write!(f, "{}", p.display_with(self.1))?,
                        1 => write!(f, "({})*e^{}", p.display_with(self.1), self.1)?,
                        m => write!(f, "({})*e^({m}*{})", p.display_with(self.1), self.1)?,
                    }
                }
                Ok(())
            }
        }
        D(self, dependent)
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with("z").fmt(f)
    }
}

impl DifferentialFunction for ExpPoly {
    fn zero() -> Self {
        ExpPoly::zero()
    }

    fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&m, p) in &other.components {
            out.add_component(m, p);
        }
        out
    }

    fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&m, p) in &other.components {
            out.add_component(m, &-p);
        }
        out
    }

    fn scaled(&self, c: &Rational) -> Self {
        let mut out = ExpPoly::zero();
        for (&m, p) in &self.components {
            out.add_component(m, &p.scale(c));
        }
        out
    }

    fn times(&self, other: &Self) -> Self {
        let mut out = ExpPoly::zero();
        for (&a, p) in &self.components {
            for (&b, q) in &other.components {
                out.add_component(a + b, &(p * q));
            }
        }
        out
    }

    fn times_poly(&self, p: &DiffPoly) -> Self {
        let mut out = ExpPoly::zero();
        for (&m, q) in &self.components {
            out.add_component(m, &(q * p));
        }
        out
    }

    fn jet_partial(&self, k: u32) -> Self {
        let mut out = ExpPoly::zero();
        for (&m, p) in &self.components {
            let mut d = p.partial(VarId::Jet(k));
            if k == 0 && m != 0 {
                d += &p.scale(&Rational::from_integer(m.into()));
            }
            out.add_component(m, &d);
        }
        out
    }

    fn order(&self) -> Option<u32> {
        self.components
            .iter()
            .map(|(&m, p)| {
                let own = p.order();
                if m != 0 {
                    own.max(Some(0))
                } else {
                    own
                }
            })
            .max()
            .flatten()
    }

    fn has_par(&self) -> bool {
        self.components.values().any(DiffPoly::has_par)
    }

    fn total_dx(&self) -> Result<Self> {
        let z1 = DiffPoly::jet(1);
        self.map_components(|m, p| {
            let mut d = p.total_dx()?;
            if m != 0 {
                d += &(&z1 * p).scale(&Rational::from_integer(m.into()));
            }
            Ok(d)
        })
    }

    fn total_dt(&self, eq: &EvolutionEquation) -> Result<Self> {
        self.map_components(|m, p| {
            let mut d = p.total_dt(eq)?;
            if m != 0 {
                d += &(eq.rhs() * p).scale(&Rational::from_integer(m.into()));
            }
            Ok(d)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffring::int;
    use crate::jetflow::EquationKind;

    #[test]
    fn derivation_rules() {
        let h = DiffPoly::par(0);
        let e = ExpPoly::graded(-1, h.clone());
        let dx = e.total_dx().unwrap();
        // D_x(h e^{-w}) = (h_1 - w_1 h) e^{-w}
        let expected = &DiffPoly::par(1) - &(&DiffPoly::jet(1) * &h);
        assert_eq!(dx, ExpPoly::graded(-1, expected));

        let pot = EquationKind::PotentialBurgers.equation();
        let dt = pot.dt(&e).unwrap();
        let expected = &DiffPoly::par(2) - &(pot.rhs() * &h);
        assert_eq!(dt, ExpPoly::graded(-1, expected));
    }

    #[test]
    fn grade_bookkeeping() {
        let a = ExpPoly::graded(1, DiffPoly::one());
        let b = ExpPoly::graded(-1, DiffPoly::x());
        assert_eq!(a.times(&b).as_grade_zero(), Some(DiffPoly::x()));
        assert!(a.minus(&a).is_zero());
        assert_eq!(a.jet_partial(0), a);
        assert_eq!(b.scaled(&int(0)), ExpPoly::zero());
        assert_eq!(b.order(), Some(0));
        assert_eq!(ExpPoly::from_poly(DiffPoly::x()).order(), None);
    }

    #[test]
    fn trivial_potential_symmetry_is_a_symmetry() {
        let pot = EquationKind::PotentialBurgers.equation();
        let e = ExpPoly::graded(-1, DiffPoly::par(0));
        assert!(pot.invariance_residual(&e).unwrap().is_zero());
    }
}
