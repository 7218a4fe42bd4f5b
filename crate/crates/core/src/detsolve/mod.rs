//! Bounded-ansatz solver for the determining equation of generalized symmetries.
//!
//! The ansatz is the span of `t^a x^b m(z_0..z_n)` with `a <= tDegree`,
//! `b <= xDegree` and `deg m <= jetDegree`. The invariance residual is linear,
//! so each ansatz monomial contributes one column (its residual) and the
//! symmetries inside the ansatz are exactly the kernel of that matrix.

pub mod linalg;

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::diffring::{DiffPoly, Monomial, Rational, VarId};
use crate::error::{Error, Result};
use crate::jetflow::{Characteristic, EquationKind};
use crate::symfam::{q_char, Family, FamilyIndex};

pub const DEFAULT_ANSATZ_CAP: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ansatz {
    pub equation: EquationKind,
    pub order: u32,
    pub jet_degree: u32,
    pub x_degree: u32,
    pub t_degree: u32,
}

impl Ansatz {
    /// Bounds `jet = x = t = n`.
    pub fn with_default_bounds(equation: EquationKind, order: u32) -> Self {
        Self {
            equation,
            order,
            jet_degree: order,
            x_degree: order,
            t_degree: order,
        }
    }

    /// Number of ansatz monomials, computed without enumerating them.
    pub fn size(&self) -> usize {
        let vars = self.order as u128 + 1;
        let d = self.jet_degree as u128;
        // C(vars + d, d) jet monomials of degree <= d
        let mut jets: u128 = 1;
        for i in 1..=d {
            jets = jets * (vars + i) / i;
        }
        let total = jets * (self.x_degree as u128 + 1) * (self.t_degree as u128 + 1);
        usize::try_from(total).unwrap_or(usize::MAX)
    }

    /// Ansatz monomials in ascending monomial order.
    pub fn monomials(&self) -> Vec<Monomial> {
        let mut jets = vec![Monomial::one()];
        for k in 0..=self.order {
            let var = VarId::Jet(k);
            let mut next = Vec::new();
            for m in &jets {
                let room = self.jet_degree - m.jet_degree();
                for e in 0..=room {
                    next.push(m.with_exponent(var, e));
                }
            }
            jets = next;
        }
        let mut out = Vec::with_capacity(self.size());
        for a in 0..=self.t_degree {
            for b in 0..=self.x_degree {
                let tx = Monomial::from_factors([(VarId::T, a), (VarId::X, b)]);
                out.extend(jets.iter().map(|m| m.mul(&tx)));
            }
        }
        out.sort();
        out
    }

    /// Whether every term of `p` is an ansatz monomial.
    pub fn contains(&self, p: &DiffPoly) -> bool {
        p.terms().all(|(m, _)| {
            !m.has_par()
                && m.max_jet().is_none_or(|k| k <= self.order)
                && m.jet_degree() <= self.jet_degree
                && m.exponent(VarId::X) <= self.x_degree
                && m.exponent(VarId::T) <= self.t_degree
        })
    }
}

/// Sparse system: column `j` is the residual of `columns[j]`, split by monomial.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    pub equation: EquationKind,
    pub columns: Vec<Monomial>,
    pub rows: Vec<(Monomial, Vec<(usize, Rational)>)>,
}

impl LinearSystem {
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// Column sets that share no row; the kernel splits accordingly.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.columns.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for (_, row) in &self.rows {
            if let Some(&(first, _)) = row.first() {
                for &(c, _) in &row[1..] {
                    let (a, b) = (find(&mut parent, first), find(&mut parent, c));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for c in 0..n {
            let root = find(&mut parent, c);
            groups.entry(root).or_default().push(c);
        }
        groups.into_values().collect()
    }
}

/// Residual columns of the ansatz, evaluated in parallel.
pub fn build_system(a: &Ansatz) -> Result<LinearSystem> {
    build_system_capped(a, DEFAULT_ANSATZ_CAP)
}

pub fn build_system_capped(a: &Ansatz, cap: usize) -> Result<LinearSystem> {
    let size = a.size();
    if size > cap {
        return Err(Error::AnsatzTooLarge { size, cap });
    }
    let columns = a.monomials();
    let eq = a.equation.equation();
    eq.prepare(a.order + 1);
    let residuals = columns
        .par_iter()
        .map(|m| eq.invariance_residual(&DiffPoly::term(Rational::from_integer(1.into()), m.clone())))
        .collect::<Result<Vec<_>>>()?;
    let mut rows: BTreeMap<Monomial, Vec<(usize, Rational)>> = BTreeMap::new();
    for (j, r) in residuals.into_iter().enumerate() {
        for (m, c) in r.into_terms() {
            rows.entry(m).or_default().push((j, c));
        }
    }
    Ok(LinearSystem {
        equation: a.equation,
        columns,
        rows: rows.into_iter().collect(),
    })
}

/// Kernel basis of the system, one vector per free column in column order,
/// each normalized to leading coefficient 1.
pub fn nullspace(s: &LinearSystem) -> Vec<Vec<Rational>> {
    let ncols = s.columns.len();
    let mut row_of_col: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    for (i, (_, row)) in s.rows.iter().enumerate() {
        if let Some(&(c, _)) = row.first() {
            row_of_col[c].push(i);
        }
    }
    let mut out: Vec<(usize, Vec<Rational>)> = Vec::new();
    for comp in s.components() {
        let local: BTreeMap<usize, usize> = comp.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let rows: Vec<Vec<(usize, Rational)>> = comp
            .iter()
            .flat_map(|&c| row_of_col[c].iter())
            .map(|&i| s.rows[i].1.iter().map(|(c, v)| (local[c], v.clone())).collect())
            .collect();
        for v in linalg::nullspace(&rows, comp.len()) {
            let mut full = vec![Rational::zero(); ncols];
            for (i, c) in v.into_iter().enumerate() {
                full[comp[i]] = c;
            }
            let lead = full.iter().position(|c| !c.is_zero()).expect("nonzero kernel vector");
            out.push((lead, full));
        }
    }
    out.sort_by_key(|(lead, _)| *lead);
    out.into_iter().map(|(_, v)| v).collect()
}

/// Polynomial with coefficient vector `v` over `columns`.
pub fn assemble(columns: &[Monomial], v: &[Rational]) -> DiffPoly {
    DiffPoly::from_terms(
        columns
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpanVerdict {
    Match,
    Mismatch {
        solver_rank: usize,
        family_rank: usize,
        joint_rank: usize,
    },
    /// No reference family for this equation.
    NotApplicable,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub equation: EquationKind,
    pub ansatz: Ansatz,
    pub ansatz_size: usize,
    pub dimension: usize,
    pub basis: Vec<Characteristic>,
    pub span: SpanVerdict,
}

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    pub jet_degree: Option<u32>,
    pub x_degree: Option<u32>,
    pub t_degree: Option<u32>,
    pub cap: usize,
    /// Admit the heat equation. Its polynomial kernel also contains heat
    /// polynomials, so no span comparison is made.
    pub experimental_heat: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            jet_degree: None,
            x_degree: None,
            t_degree: None,
            cap: DEFAULT_ANSATZ_CAP,
            experimental_heat: false,
        }
    }
}

/// `Q̂^{kl}` bodies with `1 <= k + l <= n`.
pub fn burgers_reference(n: u32) -> Result<Vec<DiffPoly>> {
    let mut out = Vec::new();
    for total in 1..=n {
        for k in (0..=total).rev() {
            let q = q_char(FamilyIndex::new(Family::BurgersQ, k, total - k))?;
            out.push(q.body.as_poly().cloned().expect("polynomial body"));
        }
    }
    Ok(out)
}

fn span_verdict(found: &[DiffPoly], reference: &[DiffPoly]) -> SpanVerdict {
    let solver_rank = linalg::poly_rank(found);
    let family_rank = linalg::poly_rank(reference);
    let joint: Vec<DiffPoly> = found.iter().chain(reference).cloned().collect();
    let joint_rank = linalg::poly_rank(&joint);
    if solver_rank == family_rank && family_rank == joint_rank {
        SpanVerdict::Match
    } else {
        SpanVerdict::Mismatch {
            solver_rank,
            family_rank,
            joint_rank,
        }
    }
}

pub fn solve_symmetries(eq: EquationKind, n: u32, opts: SolveOptions) -> Result<SolveReport> {
    match eq {
        EquationKind::Burgers => {}
        EquationKind::Heat if opts.experimental_heat => {}
        other => {
            return Err(Error::Unsupported(format!(
                "the solver supports burgers (heat behind the experimental flag), not {other}"
            )))
        }
    }
    let ansatz = Ansatz {
        equation: eq,
        order: n,
        jet_degree: opts.jet_degree.unwrap_or(n),
        x_degree: opts.x_degree.unwrap_or(n),
        t_degree: opts.t_degree.unwrap_or(n),
    };
    let system = build_system_capped(&ansatz, opts.cap)?;
    let kernel = nullspace(&system);
    let bodies: Vec<DiffPoly> = kernel.iter().map(|v| assemble(&system.columns, v)).collect();
    let mut basis = Vec::with_capacity(bodies.len());
    for body in &bodies {
        let c = Characteristic::new(eq, body.clone())?;
        if !c.is_symmetry()? {
            return Err(Error::Unsupported(format!("kernel element {body} is not a symmetry")));
        }
        basis.push(c);
    }
    let span = match eq {
        EquationKind::Burgers => span_verdict(&bodies, &burgers_reference(n)?),
        _ => SpanVerdict::NotApplicable,
    };
    Ok(SolveReport {
        equation: eq,
        ansatz,
        ansatz_size: system.columns.len(),
        dimension: basis.len(),
        basis,
        span,
    })
}
