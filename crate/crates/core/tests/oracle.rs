//! Bracket values computed independently with a computer-algebra system.

use jetsym_core::{commutator, q_char, rat, DiffPoly, Family, FamilyIndex};

fn bracket(f: Family, a: (u32, u32), b: (u32, u32)) -> DiffPoly {
    let x = q_char(FamilyIndex::new(f, a.0, a.1)).unwrap();
    let y = q_char(FamilyIndex::new(f, b.0, b.1)).unwrap();
    commutator(&x, &y).unwrap().body.as_poly().unwrap().clone()
}

fn z(k: u32) -> DiffPoly {
    DiffPoly::jet(k)
}

#[test]
fn heat_bracket_matches_oracle() {
    // [Q10, Q11] = t u_1 / 2 + x u / 4 = Q10 / 2
    let expected = &(&DiffPoly::t() * &z(1)).scale(&rat(1, 2)) + &(&DiffPoly::x() * &z(0)).scale(&rat(1, 4));
    assert_eq!(bracket(Family::HeatQ, (1, 0), (1, 1)), expected);
}

#[test]
fn burgers_brackets_match_oracle() {
    // [Qhat10, Qhat11] = t v_1 / 8 - 1/8 = -Qhat10 / 4
    let expected = &(&DiffPoly::t() * &z(1)).scale(&rat(1, 8)) - &DiffPoly::constant(rat(1, 8));
    assert_eq!(bracket(Family::BurgersQ, (1, 0), (1, 1)), expected);
    // [Qhat02, Qhat10] = -v_1 / 4
    assert_eq!(bracket(Family::BurgersQ, (0, 2), (1, 0)), z(1).scale(&rat(-1, 4)));
}
