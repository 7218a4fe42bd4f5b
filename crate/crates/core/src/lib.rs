//! Exact symbolic engine for generalized symmetries of the heat, potential
//! Burgers and Burgers equations.
//!
//! All arithmetic is over arbitrary-precision rationals; every check in this
//! crate is an exact zero test.

pub mod colemap;
pub mod detsolve;
pub mod diffring;
pub mod error;
pub mod jetflow;
pub mod opcalc;
pub mod probes;
pub mod suite;
pub mod symfam;
pub mod zeta;

pub use colemap::{heat_to_potential, potential_to_burgers, ExpPoly};
pub use detsolve::{solve_symmetries, Ansatz, LinearSystem, SolveOptions, SolveReport, SpanVerdict};
pub use diffring::{int, rat, DiffPoly, Monomial, Rational, VarId};
pub use error::{Error, Result};
pub use jetflow::{Body, Characteristic, DifferentialFunction, EquationKind, EvolutionEquation};
pub use opcalc::{IntegrabilityCertificate, OperatorExpr};
pub use symfam::{commutator, q_char, Family, FamilyIndex, LieGenerator};
pub use zeta::{build_zetas, ZetaBasis, ZetaPoly};
