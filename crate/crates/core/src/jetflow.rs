//! Evolution equations and their on-shell total derivatives.
//!
//! For an evolution equation `z_t = L[z]` the reduced derivations are
//!
//! ```text
//! D_x = ∂_x + Σ z_{k+1} ∂_{z_k} + Σ h_{j+1} ∂_{h_j}
//! D_t = ∂_t + Σ (D_x^k L) ∂_{z_k} + Σ h_{j+2} ∂_{h_j}
//! ```
//!
//! where the `h_j` rule encodes that the parameter function solves `h_t = h_xx`.

use std::fmt;
use std::sync::{Arc, LazyLock, RwLock};

use crate::colemap::ExpPoly;
use crate::diffring::{jet_limit, DiffPoly, Monomial, Rational, VarId};
use crate::error::{Error, Result};
use crate::symfam::FamilyIndex;

/// Operations shared by every carrier a characteristic body can live in.
pub trait DifferentialFunction: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn scaled(&self, c: &Rational) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn times_poly(&self, p: &DiffPoly) -> Self;
    /// `∂/∂z_k`.
    fn jet_partial(&self, k: u32) -> Self;
    fn order(&self) -> Option<u32>;
    fn has_par(&self) -> bool;
    /// Equation-independent total x-derivative.
    fn total_dx(&self) -> Result<Self>;
    /// On-shell total t-derivative for `eq`.
    fn total_dt(&self, eq: &EvolutionEquation) -> Result<Self>;
}

fn shifted(v: VarId) -> Option<VarId> {
    match v {
        VarId::T => None,
        VarId::X => None,
        VarId::Jet(k) => Some(VarId::Jet(k + 1)),
        VarId::Par(j) => Some(VarId::Par(j + 1)),
    }
}

impl DifferentialFunction for DiffPoly {
    fn zero() -> Self {
        DiffPoly::zero()
    }

    fn is_zero(&self) -> bool {
        DiffPoly::is_zero(self)
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn minus(&self, other: &Self) -> Self {
        self - other
    }

    fn scaled(&self, c: &Rational) -> Self {
        self.scale(c)
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn times_poly(&self, p: &DiffPoly) -> Self {
        self * p
    }

    fn jet_partial(&self, k: u32) -> Self {
        self.partial(VarId::Jet(k))
    }

    fn order(&self) -> Option<u32> {
        DiffPoly::order(self)
    }

    fn has_par(&self) -> bool {
        DiffPoly::has_par(self)
    }

    fn total_dx(&self) -> Result<Self> {
        let limit = jet_limit();
        if let Some(k) = DiffPoly::order(self) {
            if k >= limit {
                return Err(Error::JetLimit { index: k + 1, limit });
            }
        }
        let mut out = DiffPoly::zero();
        for (m, c) in self.terms() {
            for &(v, e) in m.factors() {
                let lowered = m.with_exponent(v, e - 1);
                let coeff = c * Rational::from_integer(e.into());
                match v {
                    VarId::T => {}
                    VarId::X => out.add_term(lowered, coeff),
                    _ => {
                        let next = shifted(v).expect("jet or parameter variable");
                        out.add_term(lowered.mul(&Monomial::var(next)), coeff);
                    }
                }
            }
        }
        Ok(out)
    }

    fn total_dt(&self, eq: &EvolutionEquation) -> Result<Self> {
        let mut out = self.partial(VarId::T);
        if let Some(order) = DiffPoly::order(self) {
            eq.prepare(order);
            for k in 0..=order {
                let dk = self.partial(VarId::Jet(k));
                if !dk.is_zero() {
                    out += &(&dk * &*eq.rhs_derivative(k));
                }
            }
        }
        if let Some(top) = self.max_par() {
            for j in 0..=top {
                let dj = self.partial(VarId::Par(j));
                if !dj.is_zero() {
                    out += &(&dj * &DiffPoly::par(j + 2));
                }
            }
        }
        Ok(out)
    }
}

/// The three built-in equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EquationKind {
    /// `u_t = u_xx`
    Heat,
    /// `w_t = w_xx + w_x^2`
    PotentialBurgers,
    /// `v_t = v_xx - v v_x`
    Burgers,
}

impl EquationKind {
    pub const ALL: [EquationKind; 3] = [
        EquationKind::Heat,
        EquationKind::PotentialBurgers,
        EquationKind::Burgers,
    ];

    pub fn equation(self) -> &'static EvolutionEquation {
        static HEAT: LazyLock<EvolutionEquation> = LazyLock::new(|| {
            EvolutionEquation::builtin(EquationKind::Heat, DiffPoly::jet(2))
        });
        static POT: LazyLock<EvolutionEquation> = LazyLock::new(|| {
            EvolutionEquation::builtin(
                EquationKind::PotentialBurgers,
                &DiffPoly::jet(2) + &DiffPoly::jet(1).pow(2),
            )
        });
        static BURGERS: LazyLock<EvolutionEquation> = LazyLock::new(|| {
            EvolutionEquation::builtin(
                EquationKind::Burgers,
                &DiffPoly::jet(2) - &(&DiffPoly::jet(0) * &DiffPoly::jet(1)),
            )
        });
        match self {
            EquationKind::Heat => &HEAT,
            EquationKind::PotentialBurgers => &POT,
            EquationKind::Burgers => &BURGERS,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EquationKind::Heat => "heat",
            EquationKind::PotentialBurgers => "potburgers",
            EquationKind::Burgers => "burgers",
        }
    }

    /// Conventional symbol of the dependent variable.
    pub fn dependent(self) -> &'static str {
        match self {
            EquationKind::Heat => "u",
            EquationKind::PotentialBurgers => "w",
            EquationKind::Burgers => "v",
        }
    }

    /// Whether parameter-function symbols (the trivial symmetries) live in this ring.
    pub fn allows_par(self) -> bool {
        !matches!(self, EquationKind::Burgers)
    }
}

impl fmt::Display for EquationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for EquationKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "heat" => Ok(EquationKind::Heat),
            "potburgers" => Ok(EquationKind::PotentialBurgers),
            "burgers" => Ok(EquationKind::Burgers),
            other => Err(Error::Unsupported(format!("unknown equation `{other}`"))),
        }
    }
}

/// An evolution equation `z_t = rhs[z]` with cached x-derivatives of its right-hand side.
///
/// The cache only ever grows by appending `D_x` of its last entry, so every
/// observer sees the same values; sharing an equation across threads is safe.
#[derive(Debug)]
pub struct EvolutionEquation {
    name: String,
    kind: Option<EquationKind>,
    rhs: DiffPoly,
    rhs_order: u32,
    allows_par: bool,
    dt_cache: RwLock<Vec<Arc<DiffPoly>>>,
}

impl EvolutionEquation {
    fn builtin(kind: EquationKind, rhs: DiffPoly) -> Self {
        let mut eq = Self::new(kind.name(), rhs).expect("built-in right-hand side is valid");
        eq.kind = Some(kind);
        eq.allows_par = kind.allows_par();
        eq
    }

    /// A user-defined equation. The right-hand side must depend on jet variables and `x` only.
    pub fn new(name: impl Into<String>, rhs: DiffPoly) -> Result<Self> {
        if rhs.has_par() || rhs.contains(VarId::T) {
            return Err(Error::Unsupported(
                "right-hand side must not contain t or parameter symbols".into(),
            ));
        }
        let rhs_order = rhs.order().unwrap_or(0);
        Ok(Self {
            name: name.into(),
            kind: None,
            dt_cache: RwLock::new(vec![Arc::new(rhs.clone())]),
            rhs,
            rhs_order,
            allows_par: false,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> Option<EquationKind> {
        self.kind
    }

    pub fn rhs(&self) -> &DiffPoly {
        &self.rhs
    }

    pub fn rhs_order(&self) -> u32 {
        self.rhs_order
    }

    pub fn allows_par(&self) -> bool {
        self.allows_par
    }

    /// Extends the cache so that `D_x^k rhs` is available for every `k <= max_order`.
    pub fn prepare(&self, max_order: u32) {
        let needed = max_order as usize + 1;
        if self.dt_cache.read().expect("cache lock").len() >= needed {
            return;
        }
        let mut cache = self.dt_cache.write().expect("cache lock");
        while cache.len() < needed {
            let last = cache.last().expect("cache holds rhs");
            let next = last.total_dx().expect("rhs derivative within jet limit");
            cache.push(Arc::new(next));
        }
    }

    /// `D_x^k` of the right-hand side.
    pub fn rhs_derivative(&self, k: u32) -> Arc<DiffPoly> {
        self.prepare(k);
        self.dt_cache.read().expect("cache lock")[k as usize].clone()
    }

    fn check<F: DifferentialFunction>(&self, p: &F) -> Result<()> {
        if !self.allows_par && p.has_par() {
            return Err(Error::ParameterNotSupported {
                equation: self.name.clone(),
            });
        }
        Ok(())
    }

    pub fn dx<F: DifferentialFunction>(&self, p: &F) -> Result<F> {
        self.check(p)?;
        p.total_dx()
    }

    pub fn dx_n<F: DifferentialFunction>(&self, p: &F, n: u32) -> Result<F> {
        self.check(p)?;
        let mut out = p.clone();
        for _ in 0..n {
            out = out.total_dx()?;
        }
        Ok(out)
    }

    pub fn dt<F: DifferentialFunction>(&self, p: &F) -> Result<F> {
        self.check(p)?;
        p.total_dt(self)
    }

    /// Fréchet derivative of `f` in direction `eta`: `Σ_k (∂f/∂z_k) D_x^k eta`.
    pub fn frechet<F: DifferentialFunction>(&self, f: &DiffPoly, eta: &F) -> Result<F> {
        if f.has_par() {
            return Err(Error::Unsupported(
                "Fréchet derivative of a parameter-dependent function".into(),
            ));
        }
        self.check(eta)?;
        let mut out = F::zero();
        let Some(order) = f.order() else {
            return Ok(out);
        };
        let mut dk = eta.clone();
        for k in 0..=order {
            if k > 0 {
                dk = dk.total_dx()?;
            }
            let coeff = f.partial(VarId::Jet(k));
            if !coeff.is_zero() {
                out = out.plus(&dk.times_poly(&coeff));
            }
        }
        Ok(out)
    }

    /// `D_t eta - L'[eta]`; zero exactly when `eta ∂_z` is a generalized symmetry.
    pub fn invariance_residual<F: DifferentialFunction>(&self, eta: &F) -> Result<F> {
        let dt = self.dt(eta)?;
        let lin = self.frechet(&self.rhs, eta)?;
        Ok(dt.minus(&lin))
    }
}

/// Body of a reduced characteristic: a plain polynomial, or an exponential-graded
/// one when the potential-Burgers trivial symmetries are involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Body {
    Poly(DiffPoly),
    Exp(ExpPoly),
}

impl Body {
    /// Collapses pure grade-0 exponential bodies to plain polynomials.
    pub fn normalized(self) -> Body {
        match self {
            Body::Exp(e) => match e.as_grade_zero() {
                Some(p) => Body::Poly(p),
                None => Body::Exp(e),
            },
            poly => poly,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Body::Poly(p) => p.is_zero(),
            Body::Exp(e) => e.is_zero(),
        }
    }

    pub fn as_poly(&self) -> Option<&DiffPoly> {
        match self {
            Body::Poly(p) => Some(p),
            Body::Exp(_) => None,
        }
    }

    pub fn to_exp(&self) -> ExpPoly {
        match self {
            Body::Poly(p) => ExpPoly::from_poly(p.clone()),
            Body::Exp(e) => e.clone(),
        }
    }

    pub fn has_par(&self) -> bool {
        match self {
            Body::Poly(p) => p.has_par(),
            Body::Exp(e) => DifferentialFunction::has_par(e),
        }
    }

    fn combine(
        &self,
        other: &Body,
        poly: impl Fn(&DiffPoly, &DiffPoly) -> DiffPoly,
        exp: impl Fn(&ExpPoly, &ExpPoly) -> ExpPoly,
    ) -> Body {
        match (self, other) {
            (Body::Poly(a), Body::Poly(b)) => Body::Poly(poly(a, b)),
            _ => Body::Exp(exp(&self.to_exp(), &other.to_exp())).normalized(),
        }
    }

    pub fn plus(&self, other: &Body) -> Body {
        self.combine(other, |a, b| a + b, |a, b| a.plus(b))
    }

    pub fn minus(&self, other: &Body) -> Body {
        self.combine(other, |a, b| a - b, |a, b| a.minus(b))
    }

    pub fn scaled(&self, c: &Rational) -> Body {
        match self {
            Body::Poly(p) => Body::Poly(p.scale(c)),
            Body::Exp(e) => Body::Exp(e.scaled(c)).normalized(),
        }
    }

    pub fn display_with<'a>(&'a self, dependent: &'a str) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Body, &'a str);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                match self.0 {
                    Body::Poly(p) => p.display_with(self.1).fmt(f),
                    Body::Exp(e) => e.display_with(self.1).fmt(f),
                }
            }
        }
        D(self, dependent)
    }
}

impl From<DiffPoly> for Body {
    fn from(p: DiffPoly) -> Self {
        Body::Poly(p)
    }
}

impl From<ExpPoly> for Body {
    fn from(e: ExpPoly) -> Self {
        Body::Exp(e).normalized()
    }
}

/// A reduced evolutionary characteristic `η ∂_z` of one of the built-in equations.
///
/// Bodies depend on `t`, `x`, x-derivatives of the dependent variable and, for
/// the trivial families, parameter symbols; t-derivatives are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Characteristic {
    pub equation: EquationKind,
    pub body: Body,
    pub label: Option<FamilyIndex>,
}

impl Characteristic {
    pub fn new(equation: EquationKind, body: impl Into<Body>) -> Result<Self> {
        let body = body.into();
        if !equation.allows_par() && body.has_par() {
            return Err(Error::ParameterNotSupported {
                equation: equation.name().into(),
            });
        }
        Ok(Self {
            equation,
            body,
            label: None,
        })
    }

    pub fn labelled(mut self, label: FamilyIndex) -> Self {
        self.label = Some(label);
        self
    }

    pub fn eq(&self) -> &'static EvolutionEquation {
        self.equation.equation()
    }

    pub fn invariance_residual(&self) -> Result<Body> {
        let eq = self.eq();
        Ok(match &self.body {
            Body::Poly(p) => Body::Poly(eq.invariance_residual(p)?),
            Body::Exp(e) => Body::Exp(eq.invariance_residual(e)?).normalized(),
        })
    }

    pub fn is_symmetry(&self) -> Result<bool> {
        Ok(self.invariance_residual()?.is_zero())
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(label) = &self.label {
            write!(f, "{label}: ")?;
        }
        write!(f, "{}", self.body.display_with(self.equation.dependent()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffring::{int, rat};

    fn z(k: u32) -> DiffPoly {
        DiffPoly::jet(k)
    }

    fn heat() -> &'static EvolutionEquation {
        EquationKind::Heat.equation()
    }

    fn burgers() -> &'static EvolutionEquation {
        EquationKind::Burgers.equation()
    }

    #[test]
    fn dx_examples() {
        assert_eq!(burgers().dx(&z(0).scale(&rat(-1, 2))).unwrap(), z(1).scale(&rat(-1, 2)));

        // D_x(t u_1 + x u / 2) = t u_2 + u/2 + x u_1 / 2, expanded by hand
        let t = DiffPoly::t();
        let x = DiffPoly::x();
        let p = &(&t * &z(1)) + &(&x * &z(0)).scale(&rat(1, 2));
        let expected = &(&(&t * &z(2)) + &z(0).scale(&rat(1, 2))) + &(&x * &z(1)).scale(&rat(1, 2));
        assert_eq!(heat().dx(&p).unwrap(), expected);

        let hu = &DiffPoly::par(0) * &z(0);
        let expected = &(&DiffPoly::par(1) * &z(0)) + &(&DiffPoly::par(0) * &z(1));
        assert_eq!(heat().dx(&hu).unwrap(), expected);
    }

    #[test]
    fn dt_examples() {
        assert_eq!(heat().dt(&z(1)).unwrap(), z(3));
        assert_eq!(burgers().dt(&z(0)).unwrap(), &z(2) - &(&z(0) * &z(1)));
        assert_eq!(heat().dt(&DiffPoly::par(0)).unwrap(), DiffPoly::par(2));
        assert_eq!(heat().dt(&DiffPoly::t().pow(3)).unwrap(), DiffPoly::t().pow(2).scale(&int(3)));
    }

    #[test]
    fn par_rejected_for_burgers() {
        let err = burgers().dx(&DiffPoly::par(0)).unwrap_err();
        assert!(matches!(err, Error::ParameterNotSupported { .. }));
        assert!(Characteristic::new(EquationKind::Burgers, DiffPoly::par(1)).is_err());
    }

    #[test]
    fn frechet_examples() {
        let rhs = burgers().rhs().clone();
        // Σ ∂L/∂z_k D_x^k v_1 for L = v_2 - v v_1: v_3 - v_1^2 - v v_2
        let expected = &(&z(3) - &z(1).pow(2)) - &(&z(0) * &z(2));
        assert_eq!(burgers().frechet(&rhs, &z(1)).unwrap(), expected);

        let probe = &(&DiffPoly::x() * &z(1).pow(2)) + &DiffPoly::t();
        assert_eq!(
            heat().frechet(heat().rhs(), &probe).unwrap(),
            heat().dx_n(&probe, 2).unwrap()
        );
        assert_eq!(burgers().frechet(&z(0), &probe).unwrap(), probe);
    }

    #[test]
    fn residual_examples() {
        assert!(burgers().invariance_residual(&z(1)).unwrap().is_zero());
        // (v_2 - v v_1) - (v_2 - 2 v v_1) = v v_1
        assert_eq!(burgers().invariance_residual(&z(0)).unwrap(), &z(0) * &z(1));
        assert!(heat().invariance_residual(&DiffPoly::par(0)).unwrap().is_zero());
    }

    #[test]
    fn jet_limit_guards_runaway() {
        let top = DiffPoly::jet(jet_limit());
        assert!(matches!(top.total_dx(), Err(Error::JetLimit { .. })));
    }

    #[test]
    fn custom_equation_rejects_t() {
        assert!(EvolutionEquation::new("bad", DiffPoly::t()).is_err());
        let kdv = EvolutionEquation::new("kdv", &z(3) + &(&z(0) * &z(1)).scale(&int(6))).unwrap();
        assert_eq!(kdv.rhs_order(), 3);
        assert!(kdv.invariance_residual(&z(1)).unwrap().is_zero());
    }
}
