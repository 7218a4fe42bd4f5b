use std::cmp::Ordering;
use std::fmt;

use super::VarId;

/// A power product of ring variables.
///
/// Stored sparsely as `(variable, exponent)` pairs sorted by [`VarId`], with
/// every exponent strictly positive. Ordered graded-lexicographically: total
/// degree first, then the monomial with the larger exponent on the first
/// differing variable is the larger one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(VarId, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: VarId) -> Self {
        Self {
            factors: vec![(v, 1)],
        }
    }

    /// Builds a monomial from arbitrary pairs; repeated variables are merged and zero exponents dropped.
    pub fn from_factors<I: IntoIterator<Item = (VarId, u32)>>(pairs: I) -> Self {
        let mut factors: Vec<(VarId, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        factors.sort_by_key(|&(v, _)| v);
        factors.dedup_by(|next, prev| {
            if next.0 == prev.0 {
                prev.1 += next.1;
                true
            } else {
                false
            }
        });
        Self { factors }
    }

    pub fn factors(&self) -> &[(VarId, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.factors
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    /// Total degree in the jet variables only.
    pub fn jet_degree(&self) -> u32 {
        self.factors
            .iter()
            .filter(|(v, _)| v.is_jet())
            .map(|&(_, e)| e)
            .sum()
    }

    pub fn max_jet(&self) -> Option<u32> {
        self.factors
            .iter()
            .filter_map(|&(v, _)| match v {
                VarId::Jet(k) => Some(k),
                _ => None,
            })
            .max()
    }

    pub fn max_par(&self) -> Option<u32> {
        self.factors
            .iter()
            .filter_map(|&(v, _)| match v {
                VarId::Par(j) => Some(j),
                _ => None,
            })
            .max()
    }

    pub fn has_par(&self) -> bool {
        self.factors.iter().any(|(v, _)| v.is_par())
    }

    pub fn has_jet(&self) -> bool {
        self.factors.iter().any(|(v, _)| v.is_jet())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    /// Returns the monomial with the exponent of `v` replaced by `exp`.
    pub fn with_exponent(&self, v: VarId, exp: u32) -> Monomial {
        let mut factors = self.factors.clone();
        match factors.binary_search_by_key(&v, |&(w, _)| w) {
            Ok(i) if exp == 0 => {
                factors.remove(i);
            }
            Ok(i) => factors[i].1 = exp,
            Err(_) if exp == 0 => {}
            Err(i) => factors.insert(i, (v, exp)),
        }
        Monomial { factors }
    }

    /// Splits off every factor for which `keep` is false, returning `(kept, removed)`.
    pub fn split<F: Fn(VarId) -> bool>(&self, keep: F) -> (Monomial, Monomial) {
        let (kept, removed): (Vec<_>, Vec<_>) = self.factors.iter().partition(|(v, _)| keep(*v));
        (Monomial { factors: kept }, Monomial { factors: removed })
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (a, b) = (&self.factors, &other.factors);
            for (x, y) in a.iter().zip(b.iter()) {
                if x.0 != y.0 {
                    // The side holding the earlier variable has the larger exponent there.
                    return if x.0 < y.0 {
                        Ordering::Greater
                    } else {
                        Ordering::Less
                    };
                }
                if x.1 != y.1 {
                    return x.1.cmp(&y.1);
                }
            }
            a.len().cmp(&b.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}
