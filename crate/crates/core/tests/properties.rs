//! Algebraic invariants over seeded random polynomials and the symmetry families.

use jetsym_core::opcalc::{dx_preimage, euler_residual};
use jetsym_core::probes::{random_polys, ProbeConfig};
use jetsym_core::symfam::family_members;
use jetsym_core::{
    build_zetas, commutator, q_char, rat, solve_symmetries, Body, Characteristic, DiffPoly, EquationKind, Family,
    SolveOptions,
};
use proptest::prelude::*;

fn probes(seed: u64, count: usize) -> Vec<DiffPoly> {
    random_polys(&ProbeConfig { seed, ..ProbeConfig::default() }, count)
}

#[test]
fn dx_and_dt_commute_on_probes() {
    for kind in EquationKind::ALL {
        let eq = kind.equation();
        for p in probes(11, 20) {
            let a = eq.dx(&eq.dt(&p).unwrap()).unwrap();
            let b = eq.dt(&eq.dx(&p).unwrap()).unwrap();
            assert_eq!(a, b, "{kind} on {p}");
        }
    }
}

#[test]
fn brackets_antisymmetric_and_jacobi() {
    for family in [Family::HeatQ, Family::PotQ, Family::BurgersQ] {
        let ms: Vec<Characteristic> = family_members(family, 2).into_iter().map(|i| q_char(i).unwrap()).collect();
        for a in &ms {
            for b in &ms {
                let ab = commutator(a, b).unwrap().body;
                let ba = commutator(b, a).unwrap().body;
                assert!(ab.plus(&ba).is_zero());
                for c in &ms {
                    let bc = Characteristic::new(a.equation, commutator(b, c).unwrap().body).unwrap();
                    let ca = Characteristic::new(a.equation, commutator(c, a).unwrap().body).unwrap();
                    let abc = Characteristic::new(a.equation, ab.clone()).unwrap();
                    let total = commutator(a, &bc)
                        .unwrap()
                        .body
                        .plus(&commutator(b, &ca).unwrap().body)
                        .plus(&commutator(c, &abc).unwrap().body);
                    assert!(total.is_zero(), "{family}: Jacobi fails");
                }
            }
        }
    }
}

#[test]
fn solver_is_deterministic() {
    let a = solve_symmetries(EquationKind::Burgers, 2, SolveOptions::default()).unwrap();
    let b = solve_symmetries(EquationKind::Burgers, 2, SolveOptions::default()).unwrap();
    let bodies = |r: &jetsym_core::SolveReport| r.basis.iter().map(|c| c.body.clone()).collect::<Vec<Body>>();
    assert_eq!(bodies(&a), bodies(&b));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn self_difference_is_zero(seed in any::<u64>()) {
        for p in probes(seed, 4) {
            prop_assert!((&p - &p).is_zero());
        }
    }

    #[test]
    fn residual_is_linear(seed in any::<u64>(), n in -5i64..6, d in 1i64..5) {
        let c = rat(n, d);
        let ps = probes(seed, 2);
        for kind in EquationKind::ALL {
            let eq = kind.equation();
            let lhs = eq.invariance_residual(&(&ps[0].scale(&c) + &ps[1])).unwrap();
            let rhs = &eq.invariance_residual(&ps[0]).unwrap().scale(&c) + &eq.invariance_residual(&ps[1]).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn total_derivatives_integrate_back(seed in any::<u64>()) {
        let eq = EquationKind::Burgers.equation();
        for p in probes(seed, 3) {
            let d = eq.dx(&p).unwrap();
            prop_assert!(euler_residual(&d).unwrap().is_zero());
            let g = dx_preimage(eq, &d).unwrap();
            prop_assert_eq!(eq.dx(&g).unwrap(), d);
        }
    }

    #[test]
    fn zeta_coordinates_round_trip(seed in any::<u64>()) {
        let basis = build_zetas(3).unwrap();
        for p in probes(seed, 3) {
            let z = basis.to_zeta_coordinates(&p).unwrap();
            prop_assert_eq!(basis.from_zeta(&z).unwrap(), p);
        }
    }

    #[test]
    fn bracket_is_bilinear(a in 0usize..6, b in 0usize..6, c in 0usize..6, n in -3i64..4) {
        let ms: Vec<Characteristic> = family_members(Family::HeatQ, 2).into_iter().map(|i| q_char(i).unwrap()).collect();
        let s = rat(n, 2);
        let mixed = Characteristic::new(EquationKind::Heat, ms[a].body.scaled(&s).plus(&ms[b].body)).unwrap();
        let lhs = commutator(&mixed, &ms[c]).unwrap().body;
        let rhs = commutator(&ms[a], &ms[c]).unwrap().body.scaled(&s).plus(&commutator(&ms[b], &ms[c]).unwrap().body);
        prop_assert!(lhs.minus(&rhs).is_zero());
    }
}
