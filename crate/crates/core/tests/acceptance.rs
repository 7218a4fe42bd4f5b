//! Acceptance gate: eight exact criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the report is always printed; the
//! process exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use jetsym_core::suite::{self, Check};
use jetsym_core::Result;

struct Criterion {
    id: u32,
    title: &'static str,
    run: fn() -> Result<Vec<Check>>,
}

const CRITERIA: [Criterion; 8] = [
    Criterion {
        id: 1,
        title: "invariance of all families, k+l<=6, symbolic h",
        run: || suite::invariance(6),
    },
    Criterion {
        id: 2,
        title: "structure constants k+l,k'+l'<=3; [Z(h),Q^(kl)] for k+l<=4; [Z(h1),Z(h2)]=0",
        run: || suite::commutators(3, 4),
    },
    Criterion {
        id: 3,
        title: "recursion operators R1, R2 on Qhat^(kl), k+l<=5",
        run: || suite::recursion(5),
    },
    Criterion {
        id: 4,
        title: "operator identities on >=20 probes; PG = GP + 1/2",
        run: || suite::operators(4, 20),
    },
    Criterion {
        id: 5,
        title: "zeta coordinates, k<=8, round trip to order 6",
        run: || suite::zeta(8, 6),
    },
    Criterion {
        id: 6,
        title: "Hopf-Cole chain k+l<=5, kernel, non-projectability",
        run: || suite::maps(5),
    },
    Criterion {
        id: 7,
        title: "solver dimensions 2, 5, 9, 14 and span equality for n=1..4",
        run: || suite::solver(4),
    },
    Criterion {
        id: 8,
        title: "Lie correspondence up to recorded sign",
        run: suite::lie,
    },
];

fn main() -> ExitCode {
    let mut failed = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let (passed, lines) = match (c.run)() {
            Ok(checks) => (suite::all_passed(&checks), checks.iter().map(Check::to_string).collect()),
            Err(e) => (false, vec![format!("ERROR {e}")]),
        };
        let verdict = if passed { "PASS" } else { "FAIL" };
        println!(
            "{verdict} criterion {}: {} ({:.1}s)",
            c.id,
            c.title,
            start.elapsed().as_secs_f64()
        );
        for line in lines {
            println!("    {line}");
        }
        if !passed {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
