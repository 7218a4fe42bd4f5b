//! Exact sparse differential-polynomial ring.
//!
//! Polynomials live over `t`, `x`, the jet coordinates `z_k` (the k-th
//! x-derivative of the dependent variable) and the parameter symbols `h_j`
//! (x-derivatives of a heat-equation solution). Coefficients are exact
//! rationals; there is no floating point anywhere in the engine.

mod monomial;
mod poly;
mod var;

pub use monomial::Monomial;
pub use poly::{DiffPoly, NamedPoly};
pub use var::{jet_limit, set_jet_limit, VarId};

use num_bigint::BigInt;

/// Arbitrary-precision rational, always kept in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeMap;
    use VarId::*;

    fn z(k: u32) -> DiffPoly {
        DiffPoly::jet(k)
    }

    #[test]
    fn additive_inverse() {
        assert!((&z(1) + &(-&z(1))).is_zero());
    }

    #[test]
    fn product_rule_base_case() {
        let p = &z(0) * &z(1);
        assert_eq!(p.partial(Jet(1)), z(0));
    }

    #[test]
    fn scaling() {
        let p = z(0).pow(2).scale(&rat(1, 2));
        assert_eq!(p, DiffPoly::term(rat(1, 2), Monomial::from_factors([(Jet(0), 2)])));
    }

    #[test]
    fn partial_derivatives() {
        let t = DiffPoly::t();
        let x = DiffPoly::x();
        assert_eq!((&t * &z(1).pow(2)).partial(Jet(1)), (&t * &z(1)).scale(&int(2)));
        assert_eq!(x.pow(2).partial(X), x.scale(&int(2)));
        assert!(z(0).partial(T).is_zero());
    }

    #[test]
    fn substitution() {
        let mut rules = BTreeMap::new();
        rules.insert(Jet(1), z(0).scale(&rat(-1, 2)));
        assert_eq!(z(1).pow(2).substitute(&rules), z(0).pow(2).scale(&rat(1, 4)));

        let p = &z(2) - &(&z(0) * &z(1));
        assert_eq!(p.substitute(&BTreeMap::new()), p);

        let mut kill = BTreeMap::new();
        kill.insert(Jet(0), DiffPoly::zero());
        assert_eq!(p.substitute(&kill), z(2));
    }

    #[test]
    fn order_and_degree() {
        let v = z(0);
        let zeta1 = &z(1).scale(&rat(-1, 2)) + &v.pow(2).scale(&rat(1, 4));
        assert_eq!(zeta1.order(), Some(1));
        assert_eq!((&DiffPoly::t() * &DiffPoly::x()).order(), None);
        // t^2 z2 + t x z1, the body of the heat generator G^2 P^0 applied without its u-term
        let t = DiffPoly::t();
        let q = &(&t.pow(2) * &z(2)) + &(&(&t * &DiffPoly::x()) * &z(1));
        assert_eq!(q.degree(T), 2);
        assert_eq!(q.degree(X), 1);
    }

    #[test]
    fn display_is_descending_and_signed() {
        let p = &z(1).scale(&rat(-1, 2)) + &z(0).pow(2).scale(&rat(1, 4));
        assert_eq!(p.display_with("v").to_string(), "1/4*v^2 - 1/2*v_1");
        assert_eq!(DiffPoly::zero().to_string(), "0");
        assert_eq!((-DiffPoly::one()).to_string(), "-1");
        assert_eq!((&DiffPoly::t() * &DiffPoly::par(2)).to_string(), "t*h_2");
    }

    #[test]
    fn integrate_inverts_partial() {
        let p = &(&DiffPoly::x().pow(3) * &z(2)) + &DiffPoly::t();
        assert_eq!(p.integrate(X).partial(X), p);
    }

    const VARS: [VarId; 6] = [T, X, Jet(0), Jet(1), Jet(2), Par(0)];

    fn small_poly() -> impl Strategy<Value = DiffPoly> {
        let term = (
            proptest::collection::vec((0usize..VARS.len(), 1u32..3), 0..3),
            -6i64..7,
            1i64..4,
        );
        proptest::collection::vec(term, 0..5).prop_map(|terms| {
            DiffPoly::from_terms(terms.into_iter().map(|(f, n, d)| {
                (Monomial::from_factors(f.into_iter().map(|(i, e)| (VARS[i], e))), rat(n, d))
            }))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn partials_commute(p in small_poly(), i in 0usize..6, j in 0usize..6) {
            let (u, w) = (VARS[i], VARS[j]);
            prop_assert_eq!(p.partial(u).partial(w), p.partial(w).partial(u));
        }

        #[test]
        fn partial_is_a_derivation(a in small_poly(), b in small_poly(), i in 0usize..6) {
            let v = VARS[i];
            prop_assert_eq!((&a * &b).partial(v), &(&a.partial(v) * &b) + &(&a * &b.partial(v)));
        }
    }
}
