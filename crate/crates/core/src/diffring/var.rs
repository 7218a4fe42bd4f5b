use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};

/// A coordinate of the jet ring.
///
/// The derived ordering is the global variable order used everywhere:
/// `T < X < Jet(0) < Jet(1) < ... < Par(0) < Par(1) < ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarId {
    T,
    X,
    /// `k`-th x-derivative of the dependent variable.
    Jet(u32),
    /// `j`-th x-derivative of the parameter function `h(t, x)`, a solution of the heat equation.
    Par(u32),
}

impl VarId {
    pub fn is_jet(self) -> bool {
        matches!(self, VarId::Jet(_))
    }

    pub fn is_par(self) -> bool {
        matches!(self, VarId::Par(_))
    }

    /// Short machine name: `t`, `x`, `z3`, `h1`. Used by the serializers.
    pub fn code(self) -> String {
        match self {
            VarId::T => "t".into(),
            VarId::X => "x".into(),
            VarId::Jet(k) => format!("z{k}"),
            VarId::Par(j) => format!("h{j}"),
        }
    }

    /// Inverse of [`VarId::code`].
    pub fn from_code(s: &str) -> Option<VarId> {
        match s {
            "t" => Some(VarId::T),
            "x" => Some(VarId::X),
            _ => {
                let (head, tail) = s.split_at(1.min(s.len()));
                let idx: u32 = tail.parse().ok()?;
                match head {
                    "z" => Some(VarId::Jet(idx)),
                    "h" => Some(VarId::Par(idx)),
                    _ => None,
                }
            }
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

const DEFAULT_JET_LIMIT: u32 = 64;

static JET_LIMIT: AtomicU32 = AtomicU32::new(DEFAULT_JET_LIMIT);

/// Largest jet index any total derivative may produce before failing with
/// [`crate::Error::JetLimit`]. Catches runaway computations.
pub fn jet_limit() -> u32 {
    JET_LIMIT.load(Ordering::Relaxed)
}

/// Overrides the global jet-index safety limit (default 64).
pub fn set_jet_limit(limit: u32) {
    JET_LIMIT.store(limit, Ordering::Relaxed);
}
