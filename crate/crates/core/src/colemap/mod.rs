//! Symmetry maps along the Hopf–Cole chain `u = e^w`, `v = -2 w_x`.
//!
//! Heat characteristics pull back to the potential Burgers equation through
//! `η_w = e^{-w} η_u|_{u = e^w}`; this needs the exponential-graded ring
//! [`ExpPoly`]. Grade-0 potential characteristics then map to Burgers ones by
//! prolonging to `w_x`, dropping the `∂_w` component and replacing `w_{j}` by
//! `-v_{j-1}/2`. That last step only makes sense when the prolonged
//! coefficient is free of bare `w`.

mod exp;

pub use exp::ExpPoly;

use std::collections::BTreeMap;

use crate::diffring::{int, rat, DiffPoly, VarId};
use crate::error::{Error, Result};
use crate::jetflow::{Body, Characteristic, DifferentialFunction, EquationKind};

/// `B_k = P̃^k 1`, i.e. `e^{-w} D_x^k e^w`, for `k = 0..=n`.
fn exp_derivative_factors(n: u32) -> Result<Vec<DiffPoly>> {
    let w1 = DiffPoly::jet(1);
    let mut out = vec![DiffPoly::one()];
    for _ in 0..n {
        let last = out.last().expect("seeded");
        let next = &last.total_dx()? + &(&w1 * last);
        out.push(next);
    }
    Ok(out)
}

fn expect_equation(eta: &Characteristic, kind: EquationKind) -> Result<()> {
    if eta.equation != kind {
        return Err(Error::EquationMismatch(
            eta.equation.name().into(),
            kind.name().into(),
        ));
    }
    Ok(())
}

/// Pulls a heat characteristic back along `u = e^w`.
pub fn heat_to_potential(eta: &Characteristic) -> Result<Characteristic> {
    expect_equation(eta, EquationKind::Heat)?;
    let Body::Poly(p) = &eta.body else {
        return Err(Error::Unsupported(
            "heat characteristics are plain polynomials".into(),
        ));
    };
    let factors = exp_derivative_factors(p.order().unwrap_or(0))?;
    let mut out = ExpPoly::zero();
    for (m, c) in p.terms() {
        let (rest, jets) = m.split(|v| !v.is_jet());
        let mut poly = DiffPoly::term(c.clone(), rest);
        let mut grade = 0i32;
        for &(v, e) in jets.factors() {
            let VarId::Jet(k) = v else { unreachable!() };
            poly = &poly * &factors[k as usize].pow(e);
            grade += e as i32;
        }
        out = out.plus(&ExpPoly::graded(grade - 1, poly));
    }
    let mut image = Characteristic::new(EquationKind::PotentialBurgers, out)?;
    image.label = eta.label.and_then(|l| l.counterpart(EquationKind::PotentialBurgers));
    Ok(image)
}

/// `w_j ↦ -v_{j-1}/2` for `j >= 1`.
pub fn w_jet_substitution(p: &DiffPoly) -> Result<DiffPoly> {
    if p.contains(VarId::Jet(0)) {
        return Err(Error::BareDependentVariable);
    }
    let rules: BTreeMap<VarId, DiffPoly> = (1..=p.order().unwrap_or(0))
        .map(|j| (VarId::Jet(j), DiffPoly::jet(j - 1).scale(&rat(-1, 2))))
        .collect();
    Ok(p.substitute(&rules))
}

/// Maps a potential Burgers characteristic to a Burgers one.
///
/// On the essential family this sends `Q̃^{kl}` to `-2 Q̂^{kl}` (the factor
/// `-2` is kept); `Q̃^{00} = 1` lands on zero. Characteristics carrying an
/// exponential factor, or whose prolongation to `w_x` depends on `w`, fail
/// with [`Error::NotProjectable`].
pub fn potential_to_burgers(eta: &Characteristic) -> Result<Characteristic> {
    expect_equation(eta, EquationKind::PotentialBurgers)?;
    let p = match &eta.body {
        Body::Poly(p) => p.clone(),
        Body::Exp(e) => e.as_grade_zero().ok_or_else(|| {
            Error::NotProjectable(format!(
                "body carries exponential grades {:?}",
                e.grades()
            ))
        })?,
    };
    let prolonged = EquationKind::PotentialBurgers.equation().dx(&p)?;
    let image = w_jet_substitution(&prolonged).map_err(|err| match err {
        Error::BareDependentVariable => Error::NotProjectable(
            "prolonged w_x-coefficient depends on w".into(),
        ),
        other => other,
    })?;
    let mut out = Characteristic::new(EquationKind::Burgers, image.scale(&int(-2)))?;
    out.label = eta.label.and_then(|l| l.counterpart(EquationKind::Burgers));
    Ok(out)
}

/// `potential_to_burgers` divided by `-2`, so that `Q̃^{kl} ↦ Q̂^{kl}`.
pub fn potential_to_burgers_normalized(eta: &Characteristic) -> Result<Characteristic> {
    let mut out = potential_to_burgers(eta)?;
    out.body = out.body.scaled(&rat(-1, 2));
    Ok(out)
}

/// Heat → potential Burgers → Burgers.
pub fn heat_to_burgers(eta: &Characteristic) -> Result<Characteristic> {
    potential_to_burgers(&heat_to_potential(eta)?)
}

/// Inverse of [`w_jet_substitution`] on polynomials in `v`-jets: `v_j ↦ -2 w_{j+1}`.
pub fn v_to_w_jets(p: &DiffPoly) -> DiffPoly {
    let rules: BTreeMap<VarId, DiffPoly> = (0..=p.order().unwrap_or(0))
        .map(|j| (VarId::Jet(j), DiffPoly::jet(j + 1).scale(&int(-2))))
        .collect();
    p.substitute(&rules)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heat(body: DiffPoly) -> Characteristic {
        Characteristic::new(EquationKind::Heat, body).unwrap()
    }

    fn pot(body: impl Into<Body>) -> Characteristic {
        Characteristic::new(EquationKind::PotentialBurgers, body).unwrap()
    }

    #[test]
    fn pullback_examples() {
        let q00 = heat_to_potential(&heat(DiffPoly::jet(0))).unwrap();
        assert_eq!(q00.body, Body::Poly(DiffPoly::one()));

        // e^{-w} D_x(e^w) = w_1
        let q01 = heat_to_potential(&heat(DiffPoly::jet(1))).unwrap();
        assert_eq!(q01.body, Body::Poly(DiffPoly::jet(1)));

        let z = heat_to_potential(&heat(DiffPoly::par(0))).unwrap();
        assert_eq!(z.body, Body::Exp(ExpPoly::graded(-1, DiffPoly::par(0))));
    }

    #[test]
    fn pullback_of_nonlinear_function_keeps_grades() {
        // u^2 -> e^{-w} e^{2w} = e^{w}
        let img = heat_to_potential(&heat(DiffPoly::jet(0).pow(2))).unwrap();
        assert_eq!(img.body, Body::Exp(ExpPoly::graded(1, DiffPoly::one())));
    }

    #[test]
    fn pushforward_examples() {
        let kernel = potential_to_burgers(&pot(DiffPoly::one())).unwrap();
        assert!(kernel.body.is_zero());

        // D_x w_1 = w_2 -> -v_1/2, times -2
        let img = potential_to_burgers(&pot(DiffPoly::jet(1))).unwrap();
        assert_eq!(img.body, Body::Poly(DiffPoly::jet(1)));

        let z = pot(ExpPoly::graded(-1, DiffPoly::par(0)));
        assert!(matches!(potential_to_burgers(&z), Err(Error::NotProjectable(_))));

        // w itself prolongs to w_x, which is projectable; w^2 prolongs to 2 w w_x, which is not.
        assert!(potential_to_burgers(&pot(DiffPoly::jet(0))).is_ok());
        assert!(matches!(
            potential_to_burgers(&pot(DiffPoly::jet(0).pow(2))),
            Err(Error::NotProjectable(_))
        ));
    }

    #[test]
    fn jet_substitution_examples() {
        let v = DiffPoly::jet(0);
        assert_eq!(
            w_jet_substitution(&DiffPoly::jet(1).pow(2)).unwrap(),
            v.pow(2).scale(&rat(1, 4))
        );
        let lhs = &DiffPoly::jet(2) + &DiffPoly::jet(1).pow(2);
        let zeta1 = &DiffPoly::jet(1).scale(&rat(-1, 2)) + &v.pow(2).scale(&rat(1, 4));
        assert_eq!(w_jet_substitution(&lhs).unwrap(), zeta1);
        assert_eq!(
            w_jet_substitution(&DiffPoly::jet(0)),
            Err(Error::BareDependentVariable)
        );
    }

    #[test]
    fn v_to_w_inverts_substitution() {
        let p = &(&DiffPoly::jet(2) * &DiffPoly::x()) + &DiffPoly::jet(1).pow(3);
        assert_eq!(v_to_w_jets(&w_jet_substitution(&p).unwrap()), p);
    }

    #[test]
    fn wrong_equation_is_rejected() {
        assert!(matches!(
            heat_to_potential(&pot(DiffPoly::one())),
            Err(Error::EquationMismatch(..))
        ));
    }
}
