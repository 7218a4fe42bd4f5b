//! The symmetry families of the three equations and their brackets.
//!
//! | family      | characteristic              | equation           |
//! |-------------|-----------------------------|--------------------|
//! | `HeatQ`     | `G^k P^l u`                 | heat               |
//! | `PotQ`      | `G̃^k P̃^l 1`                | potential Burgers  |
//! | `BurgersQ`  | `D_x Ĝ^k P̂^l 1`            | Burgers            |
//! | `HeatZ`     | `G^k D_x^l h`               | heat               |
//! | `PotZ`      | `e^{-w} G^k D_x^l h`        | potential Burgers  |
//!
//! `h` is the parameter symbol `h_0`; the plain trivial symmetry is `(k, l) = (0, 0)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::colemap::ExpPoly;
use crate::diffring::{int, rat, DiffPoly, Rational};
use crate::error::{Error, Result};
use crate::jetflow::{Body, Characteristic, DifferentialFunction, EquationKind};
use crate::opcalc::{apply, OperatorExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    HeatQ,
    PotQ,
    BurgersQ,
    HeatZ,
    PotZ,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::HeatQ,
        Family::PotQ,
        Family::BurgersQ,
        Family::HeatZ,
        Family::PotZ,
    ];

    pub fn equation(self) -> EquationKind {
        match self {
            Family::HeatQ | Family::HeatZ => EquationKind::Heat,
            Family::PotQ | Family::PotZ => EquationKind::PotentialBurgers,
            Family::BurgersQ => EquationKind::Burgers,
        }
    }

    /// The essential (`Q`-type) family of an equation.
    pub fn essential(eq: EquationKind) -> Family {
        match eq {
            EquationKind::Heat => Family::HeatQ,
            EquationKind::PotentialBurgers => Family::PotQ,
            EquationKind::Burgers => Family::BurgersQ,
        }
    }

    pub fn is_trivial(self) -> bool {
        matches!(self, Family::HeatZ | Family::PotZ)
    }

    fn symbol(self) -> &'static str {
        match self {
            Family::HeatQ => "Q",
            Family::PotQ => "Qtilde",
            Family::BurgersQ => "Qhat",
            Family::HeatZ => "Z",
            Family::PotZ => "Ztilde",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::HeatQ => "heat-q",
            Family::PotQ => "potburgers-q",
            Family::BurgersQ => "burgers-q",
            Family::HeatZ => "heat-z",
            Family::PotZ => "potburgers-z",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown family `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyIndex {
    pub family: Family,
    pub k: u32,
    pub l: u32,
}

impl FamilyIndex {
    pub fn new(family: Family, k: u32, l: u32) -> Self {
        Self { family, k, l }
    }

    /// Same indices in the family of `eq` along the Hopf–Cole chain, if there is one.
    pub fn counterpart(self, eq: EquationKind) -> Option<FamilyIndex> {
        let family = match (self.family, eq) {
            (Family::HeatQ | Family::PotQ | Family::BurgersQ, eq) => Family::essential(eq),
            (Family::HeatZ | Family::PotZ, EquationKind::Heat) => Family::HeatZ,
            (Family::HeatZ | Family::PotZ, EquationKind::PotentialBurgers) => Family::PotZ,
            (_, EquationKind::Burgers) => return None,
        };
        Some(FamilyIndex { family, ..self })
    }
}

impl fmt::Display for FamilyIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{{{}{}}}", self.family.symbol(), self.k, self.l)
    }
}

type SeedKey = (Family, u32, u32);

/// Memo of `G^k P^l seed` per family; extended one operator at a time.
static SEEDS: LazyLock<RwLock<HashMap<SeedKey, DiffPoly>>> = LazyLock::new(Default::default);

fn seed_ops(family: Family) -> (OperatorExpr, OperatorExpr, DiffPoly) {
    match family {
        Family::HeatQ => (OperatorExpr::g(), OperatorExpr::p(), DiffPoly::jet(0)),
        Family::PotQ => (OperatorExpr::g_tilde(), OperatorExpr::p_tilde(), DiffPoly::one()),
        Family::BurgersQ => (OperatorExpr::g_hat(), OperatorExpr::p_hat(), DiffPoly::one()),
        Family::HeatZ | Family::PotZ => (OperatorExpr::g(), OperatorExpr::p(), DiffPoly::par(0)),
    }
}

fn seed_family(family: Family) -> Family {
    match family {
        Family::PotZ => Family::HeatZ,
        other => other,
    }
}

/// `G^k P^l seed` for the operators of `family`.
fn seed(family: Family, k: u32, l: u32) -> Result<DiffPoly> {
    let family = seed_family(family);
    if let Some(p) = SEEDS.read().expect("seed cache").get(&(family, k, l)) {
        return Ok(p.clone());
    }
    let (g, p, base) = seed_ops(family);
    let eq = family.equation().equation();
    let value = match (k, l) {
        (0, 0) => base,
        (0, l) => apply(&p, eq, &seed(family, 0, l - 1)?)?,
        (k, l) => apply(&g, eq, &seed(family, k - 1, l)?)?,
    };
    SEEDS
        .write()
        .expect("seed cache")
        .insert((family, k, l), value.clone());
    Ok(value)
}

/// Characteristic of the family member `idx`.
pub fn q_char(idx: FamilyIndex) -> Result<Characteristic> {
    let FamilyIndex { family, k, l } = idx;
    let s = seed(family, k, l)?;
    let body: Body = match family {
        Family::HeatQ | Family::PotQ | Family::HeatZ => s.into(),
        Family::BurgersQ => EquationKind::Burgers.equation().dx(&s)?.into(),
        Family::PotZ => ExpPoly::graded(-1, s).into(),
    };
    Ok(Characteristic::new(family.equation(), body)?.labelled(idx))
}

/// `𝔷(h)` (or `𝔷̃(h)`) for an explicit heat solution `h(t, x)`.
pub fn z_char_of(family: Family, h: &DiffPoly) -> Result<Characteristic> {
    if h.order().is_some() || h.has_par() {
        return Err(Error::Unsupported("h must be a function of t and x".into()));
    }
    let heat = EquationKind::Heat.equation();
    if heat.dt(h)? != heat.dx_n(h, 2)? {
        return Err(Error::Unsupported(format!("{h} does not solve the heat equation")));
    }
    match family {
        Family::HeatZ => Characteristic::new(EquationKind::Heat, h.clone()),
        Family::PotZ => Characteristic::new(
            EquationKind::PotentialBurgers,
            ExpPoly::graded(-1, h.clone()),
        ),
        _ => Err(Error::Unsupported(format!("{family} is not a trivial family"))),
    }
}

/// `pr_η(ζ) = Σ_k D_x^k(η) ∂ζ/∂z_k`; parameter symbols are inert.
fn prolongation<F: DifferentialFunction>(eta: &F, zeta: &F) -> Result<F> {
    let mut out = F::zero();
    let Some(order) = zeta.order() else {
        return Ok(out);
    };
    let mut dk = eta.clone();
    for k in 0..=order {
        if k > 0 {
            dk = dk.total_dx()?;
        }
        let d = zeta.jet_partial(k);
        if !d.is_zero() {
            out = out.plus(&dk.times(&d));
        }
    }
    Ok(out)
}

fn bracket<F: DifferentialFunction>(eta: &F, zeta: &F) -> Result<F> {
    Ok(prolongation(eta, zeta)?.minus(&prolongation(zeta, eta)?))
}

/// Evolutionary commutator `[η, ζ] = pr_η(ζ) - pr_ζ(η)`.
pub fn commutator(eta: &Characteristic, zeta: &Characteristic) -> Result<Characteristic> {
    if eta.equation != zeta.equation {
        return Err(Error::EquationMismatch(
            eta.equation.name().into(),
            zeta.equation.name().into(),
        ));
    }
    let body = match (&eta.body, &zeta.body) {
        (Body::Poly(a), Body::Poly(b)) => Body::Poly(bracket(a, b)?),
        (a, b) => Body::from(bracket(&a.to_exp(), &b.to_exp())?),
    };
    Characteristic::new(eta.equation, body)
}

/// `i!/2^i · C(a, i) · C(b, i)`.
fn structure_coefficient(a: u32, b: u32, i: u32) -> Rational {
    let mut fact = BigInt::one();
    for j in 2..=i {
        fact *= j;
    }
    let num = fact * binomial(BigInt::from(a), BigInt::from(i)) * binomial(BigInt::from(b), BigInt::from(i));
    Rational::new(num, BigInt::one() << i)
}

/// Closed-form right-hand side of `[Q^{kl}, Q^{k'l'}]` as a combination of family indices.
pub fn closed_form_terms(
    family: Family,
    (k, l): (u32, u32),
    (k2, l2): (u32, u32),
) -> Vec<(Rational, FamilyIndex)> {
    let mut acc: HashMap<(u32, u32), Rational> = HashMap::new();
    for i in 0..=k.min(l2) {
        *acc.entry((k + k2 - i, l + l2 - i)).or_insert_with(Rational::zero) +=
            structure_coefficient(k, l2, i);
    }
    for i in 0..=k2.min(l) {
        *acc.entry((k + k2 - i, l + l2 - i)).or_insert_with(Rational::zero) -=
            structure_coefficient(k2, l, i);
    }
    let mut out: Vec<_> = acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((a, b), c)| (c, FamilyIndex::new(family, a, b)))
        .collect();
    out.sort_by_key(|(_, idx)| (idx.k, idx.l));
    out
}

fn combination(family: Family, terms: &[(Rational, FamilyIndex)]) -> Result<Body> {
    let mut acc = match family {
        Family::PotZ => Body::Exp(ExpPoly::zero()),
        _ => Body::Poly(DiffPoly::zero()),
    };
    for (c, idx) in terms {
        acc = acc.plus(&q_char(*idx)?.body.scaled(c));
    }
    Ok(acc)
}

/// Brute-force commutator and closed-form binomial sum, as bodies.
///
/// For the Burgers family, `Q̂^{00}` evaluates to zero, so terms landing on
/// `(0, 0)` drop out.
pub fn structure_sides(family: Family, a: (u32, u32), b: (u32, u32)) -> Result<(Body, Body)> {
    if family.is_trivial() {
        return Err(Error::Unsupported(
            "structure constants are defined on the essential families; use z_structure_check".into(),
        ));
    }
    let brute = commutator(
        &q_char(FamilyIndex::new(family, a.0, a.1))?,
        &q_char(FamilyIndex::new(family, b.0, b.1))?,
    )?;
    let closed = combination(family, &closed_form_terms(family, a, b))?;
    Ok((brute.body, closed))
}

/// Brute-force commutator minus the closed-form binomial sum. Zero means the relation holds.
pub fn structure_check(family: Family, a: (u32, u32), b: (u32, u32)) -> Result<Characteristic> {
    let (brute, closed) = structure_sides(family, a, b)?;
    Characteristic::new(family.equation(), brute.minus(&closed))
}

/// `[𝔷(h), Q^{kl}] - 𝔷(G^k D_x^l h)` in the heat or potential Burgers ring.
pub fn z_structure_check(family: Family, k: u32, l: u32) -> Result<Characteristic> {
    let essential = match family {
        Family::HeatZ => Family::HeatQ,
        Family::PotZ => Family::PotQ,
        other => return Err(Error::Unsupported(format!("{other} is not a trivial family"))),
    };
    let brute = commutator(
        &q_char(FamilyIndex::new(family, 0, 0))?,
        &q_char(FamilyIndex::new(essential, k, l))?,
    )?;
    let expected = q_char(FamilyIndex::new(family, k, l))?;
    Characteristic::new(family.equation(), brute.body.minus(&expected.body))
}

/// `(k, l)` index of a family member.
pub type Index = (u32, u32);

/// Index pairs `(a, b)` with `|a|, |b| <= max_order`, in lexicographic order.
pub fn index_pairs(max_order: u32) -> Vec<(Index, Index)> {
    let singles: Vec<Index> = (0..=max_order)
        .flat_map(|n| (0..=n).rev().map(move |k| (k, n - k)))
        .collect();
    singles
        .iter()
        .flat_map(|&a| singles.iter().map(move |&b| (a, b)))
        .collect()
}

/// Runs [`structure_check`] over all index pairs up to `max_order`; returns the failing pairs.
pub fn structure_check_range(
    family: Family,
    max_order: u32,
) -> Result<Vec<(Index, Index, Characteristic)>> {
    let results = index_pairs(max_order)
        .into_par_iter()
        .map(|(a, b)| Ok((a, b, structure_check(family, a, b)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(results.into_iter().filter(|(_, _, r)| !r.body.is_zero()).collect())
}

/// Family members with `k + l <= max_order` in the order used by tables:
/// by total order, then descending `k`.
pub fn family_members(family: Family, max_order: u32) -> Vec<FamilyIndex> {
    (0..=max_order)
        .flat_map(|n| (0..=n).rev().map(move |k| FamilyIndex::new(family, k, n - k)))
        .collect()
}

/// A point symmetry `ξ^t ∂_t + ξ^x ∂_x + φ ∂_z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieGenerator {
    pub name: &'static str,
    pub xi_t: DiffPoly,
    pub xi_x: DiffPoly,
    pub phi: DiffPoly,
}

impl LieGenerator {
    pub fn new(name: &'static str, xi_t: DiffPoly, xi_x: DiffPoly, phi: DiffPoly) -> Result<Self> {
        let in_tx = |p: &DiffPoly| p.order().is_none() && !p.has_par();
        let phi_ok = !phi.has_par() && phi.order().unwrap_or(0) == 0;
        if !in_tx(&xi_t) || !in_tx(&xi_x) || !phi_ok {
            return Err(Error::Unsupported(format!("{name} is not a point symmetry")));
        }
        Ok(Self { name, xi_t, xi_x, phi })
    }
}

/// `P^t, D, K, G^x, P^x, I`: the essential Lie symmetries of the heat equation.
pub fn heat_lie_basis() -> Vec<LieGenerator> {
    let t = DiffPoly::t();
    let x = DiffPoly::x();
    let u = DiffPoly::jet(0);
    let zero = DiffPoly::zero;
    let build = |name, xi_t, xi_x, phi| LieGenerator::new(name, xi_t, xi_x, phi).expect("point symmetry");
    let k_phi = &(&x.pow(2).scale(&rat(-1, 4)) - &t.scale(&rat(1, 2))) * &u;
    vec![
        build("P^t", DiffPoly::one(), zero(), zero()),
        build("D", t.scale(&int(2)), x.clone(), u.scale(&rat(-1, 2))),
        build("K", t.pow(2), &t * &x, k_phi),
        build("G^x", zero(), t.clone(), (&x * &u).scale(&rat(-1, 2))),
        build("P^x", zero(), DiffPoly::one(), zero()),
        build("I", zero(), zero(), u),
    ]
}

/// Reduced evolutionary characteristic `φ - ξ^t L[z] - ξ^x z_1`.
pub fn evolution_form(g: &LieGenerator, eq: EquationKind) -> Result<Characteristic> {
    let rhs = eq.equation().rhs();
    let body = &(&g.phi - &(&g.xi_t * rhs)) - &(&g.xi_x * &DiffPoly::jet(1));
    Characteristic::new(eq, body)
}

/// One row of the Lie-symmetry correspondence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceEntry {
    pub generator: &'static str,
    /// Expected combination of `Q^{kl}`, as `(coefficient, k, l)`.
    pub target: Vec<(Rational, u32, u32)>,
    pub evolution: DiffPoly,
    /// `Some(±1)` when the evolution form equals `±target`.
    pub sign: Option<i8>,
}

/// Matches the evolution forms of [`heat_lie_basis`] with their `Q`-family counterparts.
pub fn lie_correspondence() -> Result<Vec<CorrespondenceEntry>> {
    let targets: [Vec<(Rational, u32, u32)>; 6] = [
        vec![(int(1), 0, 2)],
        vec![(int(2), 1, 1), (rat(1, 2), 0, 0)],
        vec![(int(1), 2, 0)],
        vec![(int(1), 1, 0)],
        vec![(int(1), 0, 1)],
        vec![(int(1), 0, 0)],
    ];
    heat_lie_basis()
        .iter()
        .zip(targets)
        .map(|(g, target)| {
            let evolution = evolution_form(g, EquationKind::Heat)?
                .body
                .as_poly()
                .cloned()
                .expect("polynomial body");
            let mut expected = DiffPoly::zero();
            for (c, k, l) in &target {
                let q = q_char(FamilyIndex::new(Family::HeatQ, *k, *l))?;
                expected += &q.body.as_poly().expect("polynomial body").scale(c);
            }
            let sign = if evolution == expected {
                Some(1)
            } else if evolution == -&expected {
                Some(-1)
            } else {
                None
            };
            Ok(CorrespondenceEntry {
                generator: g.name,
                target,
                evolution,
                sign,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(k: u32) -> DiffPoly {
        DiffPoly::jet(k)
    }

    fn q(family: Family, k: u32, l: u32) -> Characteristic {
        q_char(FamilyIndex::new(family, k, l)).unwrap()
    }

    fn poly(c: &Characteristic) -> DiffPoly {
        c.body.as_poly().cloned().unwrap()
    }

    #[test]
    fn burgers_examples() {
        assert_eq!(poly(&q(Family::BurgersQ, 0, 1)), z(1).scale(&rat(-1, 2)));
        assert!(q(Family::BurgersQ, 0, 0).body.is_zero());
        let expected = &DiffPoly::one().scale(&rat(1, 2)) - &(&DiffPoly::t() * &z(1)).scale(&rat(1, 2));
        assert_eq!(poly(&q(Family::BurgersQ, 1, 0)), expected);
    }

    #[test]
    fn orders_match_indices() {
        for family in [Family::HeatQ, Family::PotQ, Family::BurgersQ] {
            for idx in family_members(family, 4).into_iter().skip(1) {
                let c = q_char(idx).unwrap();
                assert_eq!(poly(&c).order(), Some(idx.k + idx.l), "{idx}");
            }
        }
    }

    #[test]
    fn family_members_are_symmetries() {
        for family in Family::ALL {
            for idx in family_members(family, 3) {
                assert!(q_char(idx).unwrap().is_symmetry().unwrap(), "{idx}");
            }
        }
    }

    #[test]
    fn commutator_examples() {
        let c = commutator(&q(Family::HeatQ, 0, 1), &q(Family::HeatQ, 1, 0)).unwrap();
        assert_eq!(poly(&c), z(0).scale(&rat(-1, 2)));

        let hz = q(Family::HeatZ, 0, 0);
        assert!(commutator(&hz, &hz).unwrap().body.is_zero());

        let c = commutator(&q(Family::BurgersQ, 0, 1), &q(Family::BurgersQ, 1, 0)).unwrap();
        assert!(c.body.is_zero());
    }

    #[test]
    fn mismatched_equations_are_rejected() {
        let err = commutator(&q(Family::HeatQ, 0, 1), &q(Family::BurgersQ, 0, 1)).unwrap_err();
        assert!(matches!(err, Error::EquationMismatch(..)));
    }

    #[test]
    fn structure_examples() {
        for family in [Family::HeatQ, Family::BurgersQ] {
            assert!(structure_check(family, (0, 1), (1, 0)).unwrap().body.is_zero());
        }
        let terms = closed_form_terms(Family::HeatQ, (0, 1), (1, 0));
        assert_eq!(terms, vec![(rat(-1, 2), FamilyIndex::new(Family::HeatQ, 0, 0))]);
    }

    #[test]
    fn z_bracket_example() {
        assert!(z_structure_check(Family::HeatZ, 1, 1).unwrap().body.is_zero());
        let g_dx_h = poly(&q(Family::HeatZ, 1, 1));
        let expected = &(&DiffPoly::t() * &DiffPoly::par(2)) + &(&DiffPoly::x() * &DiffPoly::par(1)).scale(&rat(1, 2));
        assert_eq!(g_dx_h, expected);
    }

    #[test]
    fn explicit_heat_solutions() {
        let h = &DiffPoly::x().pow(2) + &DiffPoly::t().scale(&int(2));
        assert!(z_char_of(Family::HeatZ, &h).is_ok());
        assert!(z_char_of(Family::HeatZ, &DiffPoly::x().pow(2)).is_err());
    }

    #[test]
    fn lie_examples() {
        let basis = heat_lie_basis();
        let d = evolution_form(&basis[1], EquationKind::Heat).unwrap();
        let expected = &(&(&DiffPoly::t() * &z(2)).scale(&int(2)) + &(&DiffPoly::x() * &z(1))) + &z(0).scale(&rat(1, 2));
        assert_eq!(poly(&d), -expected);
        let px = evolution_form(&basis[4], EquationKind::Heat).unwrap();
        assert_eq!(poly(&px), -z(1));
        let i = evolution_form(&basis[5], EquationKind::Heat).unwrap();
        assert_eq!(poly(&i), z(0));
    }

    #[test]
    fn labels_display() {
        assert_eq!(FamilyIndex::new(Family::BurgersQ, 1, 2).to_string(), "Qhat^{12}");
        assert_eq!(q(Family::HeatQ, 0, 0).to_string(), "Q^{00}: u");
    }
}
