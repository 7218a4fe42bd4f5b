//! Operator expressions over the jet ring and their evaluation.
//!
//! `Compose` lists are applied right to left, so `Compose[A, B]` means `A ∘ B`.
//! `D_x^{-1}` is realized on explicit total derivatives only; the Euler operator
//! certifies membership in the image of `D_x` before any integration happens.

use std::fmt;

use rayon::prelude::*;

use crate::diffring::{rat, DiffPoly, Rational, VarId};
use crate::error::{Error, Result};
use crate::jetflow::{DifferentialFunction, EvolutionEquation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OperatorExpr {
    Dx,
    DxInv,
    /// Admitted only by [`operator_identity_probe`].
    Dt,
    MulBy(DiffPoly),
    Scale(Rational),
    /// Empty sum is the zero operator.
    Sum(Vec<OperatorExpr>),
    /// Empty composition is the identity.
    Compose(Vec<OperatorExpr>),
}

impl OperatorExpr {
    pub fn identity() -> Self {
        OperatorExpr::Compose(Vec::new())
    }

    pub fn zero() -> Self {
        OperatorExpr::Sum(Vec::new())
    }

    pub fn mul_by(p: DiffPoly) -> Self {
        OperatorExpr::MulBy(p)
    }

    /// `P = D_x`.
    pub fn p() -> Self {
        OperatorExpr::Dx
    }

    /// `G = t D_x + x/2`.
    pub fn g() -> Self {
        OperatorExpr::Sum(vec![
            OperatorExpr::Compose(vec![OperatorExpr::MulBy(DiffPoly::t()), OperatorExpr::Dx]),
            OperatorExpr::MulBy(DiffPoly::x().scale(&rat(1, 2))),
        ])
    }

    /// `P̃ = D_x + w_x`.
    pub fn p_tilde() -> Self {
        OperatorExpr::Sum(vec![OperatorExpr::Dx, OperatorExpr::MulBy(DiffPoly::jet(1))])
    }

    /// `G̃ = t P̃ + x/2`.
    pub fn g_tilde() -> Self {
        OperatorExpr::Sum(vec![
            OperatorExpr::Compose(vec![OperatorExpr::MulBy(DiffPoly::t()), Self::p_tilde()]),
            OperatorExpr::MulBy(DiffPoly::x().scale(&rat(1, 2))),
        ])
    }

    /// `P̂ = D_x - v/2`.
    pub fn p_hat() -> Self {
        OperatorExpr::Sum(vec![
            OperatorExpr::Dx,
            OperatorExpr::MulBy(DiffPoly::jet(0).scale(&rat(-1, 2))),
        ])
    }

    /// `Ĝ = t D_x + (x - v t)/2`.
    pub fn g_hat() -> Self {
        let vt = &DiffPoly::jet(0) * &DiffPoly::t();
        OperatorExpr::Sum(vec![
            OperatorExpr::Compose(vec![OperatorExpr::MulBy(DiffPoly::t()), OperatorExpr::Dx]),
            OperatorExpr::MulBy((&DiffPoly::x() - &vt).scale(&rat(1, 2))),
        ])
    }

    /// `R₁ = D_x P̂ D_x^{-1}`.
    pub fn r1() -> Self {
        OperatorExpr::Compose(vec![OperatorExpr::Dx, Self::p_hat(), OperatorExpr::DxInv])
    }

    /// `R₂ = D_x Ĝ D_x^{-1}`.
    pub fn r2() -> Self {
        OperatorExpr::Compose(vec![OperatorExpr::Dx, Self::g_hat(), OperatorExpr::DxInv])
    }

    /// `self ∘ inner`.
    pub fn then_after(self, inner: OperatorExpr) -> Self {
        OperatorExpr::Compose(vec![self, inner])
    }

    pub fn pow(&self, n: u32) -> Self {
        OperatorExpr::Compose(vec![self.clone(); n as usize])
    }

    pub fn plus(self, other: OperatorExpr) -> Self {
        OperatorExpr::Sum(vec![self, other])
    }

    pub fn scaled(self, c: Rational) -> Self {
        OperatorExpr::Compose(vec![OperatorExpr::Scale(c), self])
    }

    /// `[a, b] = a∘b - b∘a`.
    pub fn commutator(a: &OperatorExpr, b: &OperatorExpr) -> Self {
        OperatorExpr::Sum(vec![
            OperatorExpr::Compose(vec![a.clone(), b.clone()]),
            OperatorExpr::Compose(vec![
                OperatorExpr::Scale(rat(-1, 1)),
                b.clone(),
                a.clone(),
            ]),
        ])
    }

    pub fn contains_dt(&self) -> bool {
        match self {
            OperatorExpr::Dt => true,
            OperatorExpr::Sum(xs) | OperatorExpr::Compose(xs) => xs.iter().any(Self::contains_dt),
            _ => false,
        }
    }

    /// Flattens nested compositions and cancels `D_x^{-1} ∘ D_x`.
    ///
    /// As maps, `D_x^{-1} D_x` is the identity only modulo functions of `t`;
    /// this is the formal operator calculus in which `D_x^{-1} D_x = 1`.
    pub fn formally_reduced(&self) -> OperatorExpr {
        match self {
            OperatorExpr::Sum(xs) => OperatorExpr::Sum(xs.iter().map(Self::formally_reduced).collect()),
            OperatorExpr::Compose(xs) => {
                let mut flat = Vec::new();
                flatten_into(xs, &mut flat);
                let mut out: Vec<OperatorExpr> = Vec::with_capacity(flat.len());
                for op in flat {
                    let op = op.formally_reduced();
                    if op == OperatorExpr::Dx && out.last() == Some(&OperatorExpr::DxInv) {
                        out.pop();
                        continue;
                    }
                    out.push(op);
                }
                if out.len() == 1 {
                    out.pop().expect("one element")
                } else {
                    OperatorExpr::Compose(out)
                }
            }
            other => other.clone(),
        }
    }
}

fn flatten_into(xs: &[OperatorExpr], out: &mut Vec<OperatorExpr>) {
    for x in xs {
        match x {
            OperatorExpr::Compose(inner) => flatten_into(inner, out),
            other => out.push(other.clone()),
        }
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorExpr::Dx => f.write_str("Dx"),
            OperatorExpr::DxInv => f.write_str("Dx^-1"),
            OperatorExpr::Dt => f.write_str("Dt"),
            OperatorExpr::MulBy(p) => write!(f, "[{p}]"),
            OperatorExpr::Scale(c) => write!(f, "{c}"),
            OperatorExpr::Sum(xs) if xs.is_empty() => f.write_str("0"),
            OperatorExpr::Compose(xs) if xs.is_empty() => f.write_str("1"),
            OperatorExpr::Sum(xs) => {
                f.write_str("(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
            OperatorExpr::Compose(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("∘")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}

fn evaluate(op: &OperatorExpr, eq: &EvolutionEquation, p: &DiffPoly, allow_dt: bool) -> Result<DiffPoly> {
    match op {
        OperatorExpr::Dx => eq.dx(p),
        OperatorExpr::DxInv => dx_inverse(eq, p),
        OperatorExpr::Dt if allow_dt => eq.dt(p),
        OperatorExpr::Dt => Err(Error::UnsupportedNode("Dt")),
        OperatorExpr::MulBy(q) => Ok(q * p),
        OperatorExpr::Scale(c) => Ok(p.scale(c)),
        OperatorExpr::Sum(xs) => {
            let mut acc = DiffPoly::zero();
            for x in xs {
                acc += &evaluate(x, eq, p, allow_dt)?;
            }
            Ok(acc)
        }
        OperatorExpr::Compose(xs) => {
            let mut acc = p.clone();
            for x in xs.iter().rev() {
                acc = evaluate(x, eq, &acc, allow_dt)?;
            }
            Ok(acc)
        }
    }
}

/// Structural evaluation of `op` on `p`. `Dt` nodes are rejected.
pub fn apply(op: &OperatorExpr, eq: &EvolutionEquation, p: &DiffPoly) -> Result<DiffPoly> {
    evaluate(op, eq, p, false)
}

/// `Σ_k (-D_x)^k ∂p/∂z_k` in the free jet ring.
pub fn euler_residual(p: &DiffPoly) -> Result<DiffPoly> {
    if p.has_par() {
        return Err(Error::Unsupported(
            "Euler operator on parameter-dependent polynomials".into(),
        ));
    }
    let mut out = DiffPoly::zero();
    let Some(order) = p.order() else {
        return Ok(out);
    };
    for k in 0..=order {
        let mut term = p.partial(VarId::Jet(k));
        for _ in 0..k {
            term = -term.total_dx()?;
        }
        out += &term;
    }
    Ok(out)
}

/// Membership certificate for the image of `D_x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegrabilityCertificate {
    pub euler_residual: DiffPoly,
    pub is_total_derivative: bool,
}

impl IntegrabilityCertificate {
    pub fn of(p: &DiffPoly) -> Result<Self> {
        let euler_residual = euler_residual(p)?;
        Ok(Self {
            is_total_derivative: euler_residual.is_zero(),
            euler_residual,
        })
    }
}

/// Some `g` with `D_x g = p` and no constant term.
///
/// Peels the top jet variable: `p = A z_{m+1} + B` with `A, B` free of
/// `z_{m+1}`, subtract `D_x ∫A dz_m`, repeat; the jet-free rest is
/// integrated in `x`.
pub fn dx_preimage(eq: &EvolutionEquation, p: &DiffPoly) -> Result<DiffPoly> {
    let cert = IntegrabilityCertificate::of(p)?;
    if !cert.is_total_derivative {
        return Err(Error::NotATotalDerivative {
            euler_residual: cert.euler_residual,
        });
    }
    let mut rem = p.clone();
    let mut g = DiffPoly::zero();
    while let Some(top) = rem.order() {
        let var = VarId::Jet(top);
        if top == 0 || rem.degree(var) > 1 {
            return Err(Error::NotATotalDerivative {
                euler_residual: euler_residual(&rem)?,
            });
        }
        let a = rem.partial(var);
        let g1 = a.integrate(VarId::Jet(top - 1));
        rem -= &eq.dx(&g1)?;
        g += &g1;
    }
    g += &rem.integrate(VarId::X);
    Ok(g)
}

/// Flux `M` with `rhs = D_x M`, if the equation is in conservation form.
fn flux(eq: &EvolutionEquation) -> Option<DiffPoly> {
    dx_preimage(eq, eq.rhs()).ok()
}

/// [`dx_preimage`] with the free function of `t` fixed.
///
/// For an equation `z_t = D_x M` and a preimage `g` of a symmetry `η`,
/// `D_t g - M'[η]` depends on `t` alone; its antiderivative is removed so
/// that `g` itself satisfies the potential-form invariance condition. When
/// the equation has no flux, or the defect is not a function of `t`, the
/// plain preimage is returned.
pub fn dx_inverse(eq: &EvolutionEquation, p: &DiffPoly) -> Result<DiffPoly> {
    let g = dx_preimage(eq, p)?;
    let Some(m) = flux(eq) else {
        return Ok(g);
    };
    let defect = &eq.dt(&g)? - &eq.frechet(&m, p)?;
    let t_only = defect
        .terms()
        .all(|(mono, _)| mono.factors().iter().all(|&(v, _)| v == VarId::T));
    if defect.is_zero() || !t_only {
        return Ok(g);
    }
    Ok(&g - &defect.integrate(VarId::T))
}

/// Outcome of comparing two operators on a probe set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    /// `lhs(p) - rhs(p)` per probe, in probe order.
    pub residuals: Vec<DiffPoly>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.residuals.iter().all(DiffPoly::is_zero)
    }

    pub fn failures(&self) -> impl Iterator<Item = (usize, &DiffPoly)> {
        self.residuals.iter().enumerate().filter(|(_, r)| !r.is_zero())
    }
}

/// Evaluates `lhs - rhs` on every probe after formal reduction of both sides.
pub fn operator_identity_probe(
    lhs: &OperatorExpr,
    rhs: &OperatorExpr,
    eq: &EvolutionEquation,
    probes: &[DiffPoly],
) -> Result<IdentityReport> {
    let lhs = lhs.formally_reduced();
    let rhs = rhs.formally_reduced();
    let residuals = probes
        .par_iter()
        .map(|p| Ok(&evaluate(&lhs, eq, p, true)? - &evaluate(&rhs, eq, p, true)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(IdentityReport { residuals })
}

/// `D_t + v D_x - D_x^2`, the operator annihilating `ζ^k` and commuting with `P̂`, `Ĝ`.
pub fn burgers_heat_operator() -> OperatorExpr {
    OperatorExpr::Sum(vec![
        OperatorExpr::Dt,
        OperatorExpr::Compose(vec![OperatorExpr::MulBy(DiffPoly::jet(0)), OperatorExpr::Dx]),
        OperatorExpr::Compose(vec![OperatorExpr::Scale(rat(-1, 1)), OperatorExpr::Dx, OperatorExpr::Dx]),
    ])
}
