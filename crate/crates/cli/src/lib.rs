//! Serialization and rendering for the `jetsym` command line.
//!
//! Tables serialize to [`SymmetryTableDoc`]; coefficients are exact
//! `"num/den"` strings and terms follow the global monomial order, so the
//! JSON form round-trips losslessly.

use std::fmt::Write as _;

use jetsym_core::{Body, Characteristic, DiffPoly, EquationKind, Family, FamilyIndex, Monomial, Rational, VarId};
use serde::{Deserialize, Serialize};

/// Identifier of the monomial order the term lists follow.
pub const MONOMIAL_ORDER: &str = "grlex(t<x<z0<z1<...<h0<h1<...)";

#[derive(Debug, thiserror::Error)]
pub enum DocError {
    #[error("unknown variable code `{0}`")]
    Variable(String),
    #[error("malformed coefficient `{0}`")]
    Coefficient(String),
    #[error("terms are not in the global monomial order")]
    Order,
    #[error("{0} has an exponential body; only polynomial tables serialize")]
    NotPolynomial(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    /// `(variable code, exponent)` pairs, e.g. `[["t", 1], ["z1", 2]]`.
    pub monomial: Vec<(String, u32)>,
    pub coefficient: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDoc {
    pub family: String,
    pub k: u32,
    pub l: u32,
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub engine_version: String,
    pub monomial_order: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryTableDoc {
    pub equation: String,
    pub entries: Vec<EntryDoc>,
    pub metadata: Metadata,
}

pub fn coefficient_string(c: &Rational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn poly_terms(p: &DiffPoly) -> Vec<TermDoc> {
    p.terms()
        .map(|(m, c)| TermDoc {
            monomial: m.factors().iter().map(|&(v, e)| (v.code(), e)).collect(),
            coefficient: coefficient_string(c),
        })
        .collect()
}

pub fn terms_to_poly(terms: &[TermDoc]) -> Result<DiffPoly, DocError> {
    let mut monomials = Vec::with_capacity(terms.len());
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let factors = t
            .monomial
            .iter()
            .map(|(code, e)| VarId::from_code(code).map(|v| (v, *e)).ok_or_else(|| DocError::Variable(code.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        let m = Monomial::from_factors(factors);
        let c: Rational = t.coefficient.parse().map_err(|_| DocError::Coefficient(t.coefficient.clone()))?;
        monomials.push(m.clone());
        out.push((m, c));
    }
    if monomials.windows(2).any(|w| w[0] >= w[1]) {
        return Err(DocError::Order);
    }
    Ok(DiffPoly::from_terms(out))
}

/// Essential family members shown in tables: `k + l <= max_order`, by total
/// order then ascending `k`. The Burgers table omits the zero member `Q̂^{00}`.
pub fn table_members(eq: EquationKind, max_order: u32) -> Vec<FamilyIndex> {
    let family = Family::essential(eq);
    let start = u32::from(eq == EquationKind::Burgers);
    (start..=max_order)
        .flat_map(|n| (0..=n).map(move |k| FamilyIndex::new(family, k, n - k)))
        .collect()
}

impl SymmetryTableDoc {
    pub fn from_characteristics(eq: EquationKind, chars: &[Characteristic]) -> Result<Self, DocError> {
        let entries = chars
            .iter()
            .map(|c| {
                let label = c.label.expect("table entries are labelled");
                let Body::Poly(p) = &c.body else {
                    return Err(DocError::NotPolynomial(label.to_string()));
                };
                Ok(EntryDoc {
                    family: label.family.name().into(),
                    k: label.k,
                    l: label.l,
                    terms: poly_terms(p),
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(Self {
            equation: eq.name().into(),
            entries,
            metadata: Metadata {
                engine_version: env!("CARGO_PKG_VERSION").into(),
                monomial_order: MONOMIAL_ORDER.into(),
            },
        })
    }
}

fn latex_family(f: Family) -> &'static str {
    match f {
        Family::HeatQ => r"\mathfrak{Q}",
        Family::PotQ => r"\tilde{\mathfrak{Q}}",
        Family::BurgersQ => r"\hat{\mathfrak{Q}}",
        Family::HeatZ => r"\mathfrak{z}",
        Family::PotZ => r"\tilde{\mathfrak{z}}",
    }
}

pub fn latex_label(idx: FamilyIndex) -> String {
    format!("{}^{{{}{}}}", latex_family(idx.family), idx.k, idx.l)
}

fn latex_var(v: VarId, dep: &str) -> String {
    let subscript = |base: &str, k: u32| match k {
        0 => base.to_string(),
        k if k <= 3 => format!("{base}_{{{}}}", "x".repeat(k as usize)),
        k => format!("{base}_{{{k}x}}"),
    };
    match v {
        VarId::T => "t".into(),
        VarId::X => "x".into(),
        VarId::Jet(k) => subscript(dep, k),
        VarId::Par(j) => subscript("h", j),
    }
}

/// LaTeX for a polynomial; `v_{xx}`-style derivatives, highest terms first.
pub fn latex_poly(p: &DiffPoly, dep: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let negative = c < &Rational::from_integer(0.into());
        let mag = if negative { -c.clone() } else { c.clone() };
        match (i, negative) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        let mut parts = Vec::new();
        if mag != Rational::from_integer(1.into()) || m.is_one() {
            parts.push(if mag.denom() == &1.into() {
                mag.numer().to_string()
            } else {
                format!(r"\frac{{{}}}{{{}}}", mag.numer(), mag.denom())
            });
        }
        for &(v, e) in m.factors() {
            let var = latex_var(v, dep);
            parts.push(if e > 1 { format!("{{{var}}}^{{{e}}}") } else { var });
        }
        s.push_str(&parts.join(" "));
    }
    s
}

pub fn latex_table(eq: EquationKind, chars: &[Characteristic]) -> String {
    let mut s = String::from("\\begin{aligned}\n");
    for c in chars {
        let label = c.label.map(latex_label).unwrap_or_default();
        let body = match &c.body {
            Body::Poly(p) => latex_poly(p, eq.dependent()),
            Body::Exp(e) => e.display_with(eq.dependent()).to_string(),
        };
        writeln!(s, "  {label} &= {body} \\\\").unwrap();
    }
    s.push_str("\\end{aligned}\n");
    s
}

pub fn text_table(chars: &[Characteristic]) -> String {
    chars.iter().map(|c| format!("{c}\n")).collect()
}
