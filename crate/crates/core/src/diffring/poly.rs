use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::{Monomial, Rational, VarId};

/// Exact sparse polynomial over `t`, `x`, jet variables and parameter-function symbols.
///
/// The term map only ever holds nonzero coefficients, so structural equality
/// is polynomial equality and the zero polynomial has no terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(v: VarId) -> Self {
        Self::term(Rational::one(), Monomial::var(v))
    }

    pub fn t() -> Self {
        Self::var(VarId::T)
    }

    pub fn x() -> Self {
        Self::var(VarId::X)
    }

    pub fn jet(k: u32) -> Self {
        Self::var(VarId::Jet(k))
    }

    pub fn par(j: u32) -> Self {
        Self::var(VarId::Par(j))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Accumulates `c * m` into the polynomial, keeping the term map canonical.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rational) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, c: &Rational, m: &Monomial) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> DiffPoly {
        let mut acc = DiffPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to a single variable.
    pub fn partial(&self, v: VarId) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e > 0 {
                out.add_term(m.with_exponent(v, e - 1), c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Formal antiderivative with respect to `v` (no integration constant).
    pub fn integrate(&self, v: VarId) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v) + 1;
            out.add_term(m.with_exponent(v, e), c / Rational::from_integer(e.into()));
        }
        out
    }

    /// Simultaneous substitution of variables by polynomials; unmapped variables pass through.
    pub fn substitute(&self, rules: &BTreeMap<VarId, DiffPoly>) -> DiffPoly {
        if rules.is_empty() {
            return self.clone();
        }
        let mut powers: HashMap<(VarId, u32), DiffPoly> = HashMap::new();
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut acc = DiffPoly::one();
            for &(v, e) in m.factors() {
                match rules.get(&v) {
                    Some(image) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| image.pow(e));
                        acc = &acc * &*pw;
                    }
                    None => kept.push((v, e)),
                }
            }
            out += &acc.mul_monomial(c, &Monomial::from_factors(kept));
        }
        out
    }

    /// Largest exponent of `v` over all terms (0 for the zero polynomial).
    pub fn degree(&self, v: VarId) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn jet_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::jet_degree).max().unwrap_or(0)
    }

    /// Highest jet index present; `None` plays the role of order −∞.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().filter_map(Monomial::max_jet).max()
    }

    pub fn max_par(&self) -> Option<u32> {
        self.terms.keys().filter_map(Monomial::max_par).max()
    }

    pub fn has_par(&self) -> bool {
        self.terms.keys().any(Monomial::has_par)
    }

    pub fn contains(&self, v: VarId) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    /// Sum of the terms whose monomials satisfy `pred`.
    pub fn filter_terms<F: Fn(&Monomial) -> bool>(&self, pred: F) -> DiffPoly {
        DiffPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| pred(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Formats with a chosen name for the dependent variable (`u`, `w`, `v`, ...).
    pub fn display_with<'a>(&'a self, dependent: &'a str) -> NamedPoly<'a> {
        NamedPoly {
            poly: self,
            dependent,
        }
    }
}

impl From<Rational> for DiffPoly {
    fn from(c: Rational) -> Self {
        DiffPoly::constant(c)
    }
}

impl From<VarId> for DiffPoly {
    fn from(v: VarId) -> Self {
        DiffPoly::var(v)
    }
}

impl AddAssign<&DiffPoly> for DiffPoly {
    fn add_assign(&mut self, rhs: &DiffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&DiffPoly> for DiffPoly {
    fn sub_assign(&mut self, rhs: &DiffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for DiffPoly {
    type Output = DiffPoly;
    fn add(mut self, rhs: DiffPoly) -> DiffPoly {
        self += &rhs;
        self
    }
}

impl Sub for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for DiffPoly {
    type Output = DiffPoly;
    fn sub(mut self, rhs: DiffPoly) -> DiffPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        -&self
    }
}

impl Mul for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        out
    }
}

impl Mul for DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: DiffPoly) -> DiffPoly {
        &self * &rhs
    }
}

fn write_var(f: &mut fmt::Formatter<'_>, v: VarId, dependent: &str) -> fmt::Result {
    match v {
        VarId::T => f.write_str("t"),
        VarId::X => f.write_str("x"),
        VarId::Jet(0) => f.write_str(dependent),
        VarId::Jet(k) => write!(f, "{dependent}_{k}"),
        VarId::Par(0) => f.write_str("h"),
        VarId::Par(j) => write!(f, "h_{j}"),
    }
}

/// Display adapter returned by [`DiffPoly::display_with`].
pub struct NamedPoly<'a> {
    poly: &'a DiffPoly,
    dependent: &'a str,
}

impl fmt::Display for NamedPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let unit = mag.is_one();
            if !unit || m.is_one() {
                write!(f, "{mag}")?;
            }
            for (j, &(v, e)) in m.factors().iter().enumerate() {
                if j > 0 || !unit {
                    f.write_str("*")?;
                }
                write_var(f, v, self.dependent)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with("z").fmt(f)
    }
}
