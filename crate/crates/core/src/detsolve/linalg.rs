//! Exact sparse linear algebra over the rationals.
//!
//! Rows are cleared to primitive integer vectors and eliminated fraction-free:
//! `r ← a·r − b·p` followed by division by the content, so entries stay small
//! and no rational arithmetic happens inside the elimination loop.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::diffring::{DiffPoly, Monomial, Rational};

/// Sparse integer row, sorted by column, no zero entries.
pub type SparseRow = Vec<(usize, BigInt)>;

/// Scales a rational row to a primitive integer row with positive leading entry.
pub fn integer_row(row: &[(usize, Rational)]) -> SparseRow {
    let mut entries: Vec<(usize, Rational)> = row.iter().filter(|(_, c)| !c.is_zero()).cloned().collect();
    entries.sort_by_key(|(c, _)| *c);
    let lcm = entries
        .iter()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let ints: SparseRow = entries
        .into_iter()
        .map(|(col, c)| (col, (c * Rational::from_integer(lcm.clone())).to_integer()))
        .collect();
    primitive(ints)
}

fn primitive(mut row: SparseRow) -> SparseRow {
    let Some(first) = row.first() else {
        return row;
    };
    let mut g = first.1.abs();
    for (_, c) in &row[1..] {
        if g.is_one() {
            break;
        }
        g = g.gcd(c);
    }
    let negate = first.1.is_negative();
    if !g.is_one() || negate {
        let g = if negate { -g } else { g };
        for (_, c) in &mut row {
            *c = &*c / &g;
        }
    }
    row
}

fn entry(row: &SparseRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &row[i].1)
}

/// `a·r − b·p`, made primitive.
fn combine(r: &SparseRow, a: &BigInt, p: &SparseRow, b: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let take_r = j >= p.len() || (i < r.len() && r[i].0 < p[j].0);
        let take_p = i >= r.len() || (j < p.len() && p[j].0 < r[i].0);
        let (col, val) = if take_r {
            i += 1;
            (r[i - 1].0, a * &r[i - 1].1)
        } else if take_p {
            j += 1;
            (p[j - 1].0, -(b * &p[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (r[i - 1].0, a * &r[i - 1].1 - b * &p[j - 1].1)
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    primitive(out)
}

/// Row echelon form built one row at a time; pivot = first nonzero column.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reduces `row` against the current pivots; keeps it if independent.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        while let Some(&(lead, ref coeff)) = row.first() {
            match self.pivots.get(&lead) {
                Some(p) => {
                    let a = p[0].1.clone();
                    let b = coeff.clone();
                    let g = a.gcd(&b);
                    row = combine(&row, &(&a / &g), p, &(&b / &g));
                }
                None => {
                    self.pivots.insert(lead, primitive(row));
                    return true;
                }
            }
        }
        false
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Clears every pivot column above its pivot.
    pub fn reduce(&mut self) {
        let cols: Vec<usize> = self.pivots.keys().copied().collect();
        for &pc in cols.iter().rev() {
            let p = self.pivots[&pc].clone();
            for &other in cols.iter().filter(|&&c| c < pc) {
                let row = &self.pivots[&other];
                if let Some(b) = entry(row, pc) {
                    let a = &p[0].1;
                    let g = a.gcd(b);
                    let new = combine(row, &(a / &g), &p, &(b / &g));
                    self.pivots.insert(other, new);
                }
            }
        }
    }

    /// Kernel basis of the inserted rows as vectors of length `ncols`.
    ///
    /// One vector per free column, in increasing column order, each scaled so
    /// its first nonzero entry is 1.
    pub fn nullspace(mut self, ncols: usize) -> Vec<Vec<Rational>> {
        self.reduce();
        (0..ncols)
            .filter(|c| !self.pivots.contains_key(c))
            .map(|free| {
                let mut v = vec![Rational::zero(); ncols];
                v[free] = Rational::one();
                for (&pc, row) in &self.pivots {
                    if let Some(b) = entry(row, free) {
                        v[pc] = -Rational::new(b.clone(), row[0].1.clone());
                    }
                }
                normalize_leading(&mut v);
                v
            })
            .collect()
    }
}

fn normalize_leading(v: &mut [Rational]) {
    if let Some(lead) = v.iter().find(|c| !c.is_zero()).cloned() {
        if !lead.is_one() {
            for c in v.iter_mut() {
                *c = &*c / &lead;
            }
        }
    }
}

/// Kernel of the rational matrix with the given sparse rows.
pub fn nullspace(rows: &[Vec<(usize, Rational)>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(integer_row(r));
    }
    ech.nullspace(ncols)
}

pub fn rank(rows: &[Vec<(usize, Rational)>]) -> usize {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(integer_row(r));
    }
    ech.rank()
}

/// Rank of a list of polynomials as vectors over their monomials.
pub fn poly_rank(polys: &[DiffPoly]) -> usize {
    let mut index: BTreeMap<&Monomial, usize> = BTreeMap::new();
    for p in polys {
        for (m, _) in p.terms() {
            let next = index.len();
            index.entry(m).or_insert(next);
        }
    }
    let rows: Vec<Vec<(usize, Rational)>> = polys
        .iter()
        .map(|p| p.terms().map(|(m, c)| (index[m], c.clone())).collect())
        .collect();
    rank(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffring::{int, rat};
    use proptest::prelude::*;

    fn dense(rows: &[&[i64]]) -> Vec<Vec<(usize, Rational)>> {
        rows.iter()
            .map(|r| r.iter().enumerate().map(|(i, &c)| (i, int(c))).collect())
            .collect()
    }

    fn apply(rows: &[Vec<(usize, Rational)>], v: &[Rational]) -> Vec<Rational> {
        rows.iter()
            .map(|r| r.iter().fold(Rational::zero(), |acc, (i, c)| acc + c * &v[*i]))
            .collect()
    }

    #[test]
    fn zero_matrix_has_full_kernel() {
        let ns = nullspace(&[], 3);
        assert_eq!(ns.len(), 3);
        assert_eq!(ns[1], vec![int(0), int(1), int(0)]);
    }

    #[test]
    fn single_row_kernel() {
        let ns = nullspace(&dense(&[&[1, -1]]), 2);
        assert_eq!(ns, vec![vec![int(1), int(1)]]);
    }

    #[test]
    fn rational_rows_are_cleared() {
        let rows = vec![vec![(0, rat(1, 2)), (1, rat(1, 3))]];
        let ns = nullspace(&rows, 2);
        assert_eq!(ns, vec![vec![int(1), rat(-3, 2)]]);
        assert_eq!(integer_row(&rows[0]), vec![(0, BigInt::from(3)), (1, BigInt::from(2))]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&dense(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]])), 2);
        let polys = [DiffPoly::x(), DiffPoly::t(), &DiffPoly::x() + &DiffPoly::t()];
        assert_eq!(poly_rank(&polys), 2);
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated(
            entries in proptest::collection::vec(proptest::collection::vec(-3i64..4, 5), 0..5)
        ) {
            let rows: Vec<Vec<(usize, Rational)>> = entries
                .iter()
                .map(|r| r.iter().enumerate().map(|(i, &c)| (i, int(c))).collect())
                .collect();
            let ns = nullspace(&rows, 5);
            prop_assert_eq!(ns.len() + rank(&rows), 5);
            for v in &ns {
                prop_assert!(apply(&rows, v).iter().all(Zero::is_zero));
                let lead = v.iter().find(|c| !c.is_zero()).unwrap();
                prop_assert!(lead.is_one());
            }
        }
    }
}
