use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use jetsym_cli::{latex_table, poly_terms, table_members, text_table, SymmetryTableDoc, TermDoc};
use jetsym_core::colemap::{heat_to_potential, potential_to_burgers, potential_to_burgers_normalized};
use jetsym_core::detsolve::DEFAULT_ANSATZ_CAP;
use jetsym_core::suite::{Check, Suite};
use jetsym_core::{
    q_char, solve_symmetries, Characteristic, EquationKind, Error, Family, FamilyIndex, SolveOptions,
    SpanVerdict,
};
use serde::Serialize;

// Frozen exit-code contract.
const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "jetsym", version, about = "Exact generalized symmetries of the heat, potential Burgers and Burgers equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Eq {
    Heat,
    Potburgers,
    Burgers,
}

impl From<Eq> for EquationKind {
    fn from(e: Eq) -> Self {
        match e {
            Eq::Heat => EquationKind::Heat,
            Eq::Potburgers => EquationKind::PotentialBurgers,
            Eq::Burgers => EquationKind::Burgers,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Invariance,
    Commutators,
    Recursion,
    Operators,
    Zeta,
    Maps,
    Solver,
    Lie,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the essential symmetry family of an equation.
    Gen {
        #[arg(long)]
        eq: Eq,
        #[arg(long)]
        max_order: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run exact verification suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 3)]
        max_order: u32,
    },
    /// Solve the determining equations of the Burgers equation to a given order.
    Solve {
        #[arg(long)]
        order: u32,
        #[arg(long)]
        jet_deg: Option<u32>,
        #[arg(long)]
        x_deg: Option<u32>,
        #[arg(long)]
        t_deg: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_ANSATZ_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Push a symmetry along heat -> potential Burgers -> Burgers.
    Map {
        #[arg(long)]
        from: Eq,
        #[arg(long)]
        to: Eq,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        /// Map the trivial member with a symbolic heat solution instead.
        #[arg(long)]
        z: bool,
        /// Divide the Burgers image by -2.
        #[arg(long)]
        normalized: bool,
    },
}

enum Failure {
    Usage(String),
    Check(String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen { eq, max_order, format, out } => gen(eq.into(), max_order, format, out),
        Command::Verify { suite, max_order } => verify(suite, max_order),
        Command::Solve { order, jet_deg, x_deg, t_deg, cap, format } => {
            let opts = SolveOptions {
                jet_degree: jet_deg,
                x_degree: x_deg,
                t_degree: t_deg,
                cap,
                ..SolveOptions::default()
            };
            solve(order, opts, format)
        }
        Command::Map { from, to, k, l, z, normalized } => map(from.into(), to.into(), k, l, z, normalized),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(EXIT_FAIL)
        }
        Err(Failure::Engine(e @ Error::AnsatzTooLarge { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CAP)
        }
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}

fn emit(text: &str, out: Option<PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn gen(eq: EquationKind, max_order: u32, format: Format, out: Option<PathBuf>) -> Result<(), Failure> {
    if eq == EquationKind::Burgers && max_order == 0 {
        return Err(Failure::Usage("the Burgers family starts at order 1".into()));
    }
    let chars = table_members(eq, max_order)
        .into_iter()
        .map(q_char)
        .collect::<Result<Vec<_>, _>>()?;
    let text = match format {
        Format::Text => text_table(&chars),
        Format::Latex => latex_table(eq, &chars),
        Format::Json => {
            let doc = SymmetryTableDoc::from_characteristics(eq, &chars)
                .map_err(|e| Failure::Check(e.to_string()))?;
            serde_json::to_string_pretty(&doc).expect("document serializes") + "\n"
        }
    };
    emit(&text, out)
}

fn verify(suite: SuiteArg, max_order: u32) -> Result<(), Failure> {
    let suites: Vec<Suite> = match suite {
        SuiteArg::Invariance => vec![Suite::Invariance],
        SuiteArg::Commutators => vec![Suite::Commutators],
        SuiteArg::Recursion => vec![Suite::Recursion],
        SuiteArg::Operators => vec![Suite::Operators],
        SuiteArg::Zeta => vec![Suite::Zeta],
        SuiteArg::Maps => vec![Suite::Maps],
        SuiteArg::Solver => vec![Suite::Solver],
        SuiteArg::Lie => vec![Suite::Lie],
        SuiteArg::All => Suite::ALL.to_vec(),
    };
    let mut checks: Vec<Check> = Vec::new();
    for s in suites {
        println!("== {}", s.name());
        for c in s.run(max_order)? {
            println!("{c}");
            checks.push(c);
        }
    }
    let info = checks.iter().filter(|c| c.informational).count();
    let failed = checks.iter().filter(|c| !c.passed).count();
    let passed = checks.len() - info - failed;
    println!("summary: {passed} passed, {failed} failed, {info} informational");
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Check(format!("{failed} check(s) failed")))
    }
}

#[derive(Serialize)]
struct SolveDoc {
    equation: String,
    order: u32,
    jet_degree: u32,
    x_degree: u32,
    t_degree: u32,
    ansatz_size: usize,
    dimension: usize,
    span: String,
    basis: Vec<Vec<TermDoc>>,
}

fn span_text(s: &SpanVerdict) -> String {
    match s {
        SpanVerdict::Match => "MATCH".into(),
        SpanVerdict::Mismatch { solver_rank, family_rank, joint_rank } => {
            format!("MISMATCH(solver {solver_rank}, family {family_rank}, joint {joint_rank})")
        }
        SpanVerdict::NotApplicable => "N/A".into(),
    }
}

fn solve(order: u32, opts: SolveOptions, format: Format) -> Result<(), Failure> {
    if order == 0 {
        return Err(Failure::Usage("--order must be at least 1".into()));
    }
    let r = solve_symmetries(EquationKind::Burgers, order, opts)?;
    match format {
        Format::Json => {
            let doc = SolveDoc {
                equation: r.equation.name().into(),
                order,
                jet_degree: r.ansatz.jet_degree,
                x_degree: r.ansatz.x_degree,
                t_degree: r.ansatz.t_degree,
                ansatz_size: r.ansatz_size,
                dimension: r.dimension,
                span: span_text(&r.span),
                basis: r.basis.iter().map(|c| poly_terms(c.body.as_poly().expect("polynomial"))).collect(),
            };
            println!("{}", serde_json::to_string_pretty(&doc).expect("document serializes"));
        }
        Format::Text | Format::Latex => {
            println!("order {order}: dimension {}, ansatz {} monomials, span {}", r.dimension, r.ansatz_size, span_text(&r.span));
            for c in &r.basis {
                println!("  {c}");
            }
        }
    }
    match r.span {
        SpanVerdict::Mismatch { .. } => Err(Failure::Check("solver span differs from the family span".into())),
        _ => Ok(()),
    }
}

fn stage(name: &str, c: &Characteristic) {
    println!("{name:>11}: {c}");
}

fn map(from: EquationKind, to: EquationKind, k: u32, l: u32, z: bool, normalized: bool) -> Result<(), Failure> {
    if from >= to {
        return Err(Failure::Usage(format!("cannot map {from} -> {to}; the chain runs heat -> potburgers -> burgers")));
    }
    let family = match (from, z) {
        (EquationKind::Heat, false) => Family::HeatQ,
        (EquationKind::Heat, true) => Family::HeatZ,
        (EquationKind::PotentialBurgers, false) => Family::PotQ,
        (EquationKind::PotentialBurgers, true) => Family::PotZ,
        (EquationKind::Burgers, _) => unreachable!("rejected above"),
    };
    let idx = FamilyIndex::new(family, k, l);
    let mut current = q_char(idx)?;
    stage(from.name(), &current);
    if from == EquationKind::Heat {
        current = heat_to_potential(&current)?;
        stage("potburgers", &current);
    }
    if to == EquationKind::PotentialBurgers {
        return Ok(());
    }
    let pushed = if normalized {
        potential_to_burgers_normalized(&current)
    } else {
        potential_to_burgers(&current)
    };
    let image = match pushed {
        Ok(c) => c,
        Err(Error::NotProjectable(why)) => {
            println!("    burgers: NOT PROJECTABLE ({why})");
            return Err(Failure::Check(format!("{idx} does not project to the Burgers equation")));
        }
        Err(e) => return Err(e.into()),
    };
    let mut image = image;
    image.label = None;
    let target = FamilyIndex::new(Family::BurgersQ, k, l);
    let relation = if normalized { format!("{target}") } else { format!("-2 {target}") };
    println!("    burgers: {} (= {relation})", image.body.display_with("v"));
    if image.body.is_zero() {
        println!("     KERNEL: {} lies in the kernel of the map", FamilyIndex::new(Family::PotQ, k, l));
    }
    Ok(())
}
