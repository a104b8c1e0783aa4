//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use peterson_core::bikelock::worked_examples_hold;
use peterson_core::structure::union_consecutive_terms;
use peterson_core::verify::{
    verify_conversion, verify_formula, verify_identity_grid, verify_restrictions,
};
use peterson_core::{
    b_general, ConsecutiveBlock, StructureConstantKey, SubsetMask, TMonomial, VerifyReport,
};

struct Gate {
    failed: usize,
}

impl Gate {
    fn check(
        &mut self,
        name: &str,
        budget: Duration,
        run: impl FnOnce() -> Result<String, String>,
    ) {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(detail) if elapsed <= budget => (true, detail),
            Ok(detail) => (false, format!("{detail}; over budget {budget:?}")),
            Err(detail) => (false, detail),
        };
        if !ok {
            self.failed += 1;
        }
        println!(
            "{} {name} [{elapsed:.2?}] {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
    }
}

fn set(n: u32, s: &str) -> SubsetMask {
    SubsetMask::parse(n, s).expect("valid subset literal")
}

fn expect(what: &str, got: &TMonomial, want: TMonomial) -> Result<String, String> {
    if *got == want {
        Ok(format!("{what} = {got}"))
    } else {
        Err(format!("{what} = {got}, expected {want}"))
    }
}

fn sweep(report: peterson_core::Result<VerifyReport>) -> Result<String, String> {
    let report = report.map_err(|e| e.to_string())?;
    if report.passed() {
        Ok(format!(
            "{} {} ({} comparisons)",
            report.checked, report.unit, report.comparisons
        ))
    } else {
        Err(report.to_string())
    }
}

/// Pass unless a counterexample tagged `kind` was found. Counterexamples are
/// truncated, so an incomplete list with none of this kind also fails.
fn only(kind: &str, report: &VerifyReport) -> Result<String, String> {
    let summary = format!("{} pairs, {} triples", report.checked, report.comparisons);
    let hits: Vec<&String> = report
        .counterexamples
        .iter()
        .filter(|c| c.contains(&format!("[{kind}]")))
        .collect();
    if !hits.is_empty() {
        Err(format!("{} mismatches, e.g. {hits:?}", report.mismatches))
    } else if report.counterexamples.len() < report.mismatches as usize {
        Err(format!("{} mismatches, not all listed", report.mismatches))
    } else {
        Ok(summary)
    }
}

fn main() -> ExitCode {
    let mut gate = Gate { failed: 0 };

    gate.check("worked example 1", Duration::from_millis(1), || {
        let key = StructureConstantKey::new(set(5, "1,2"), set(5, "2-4"), set(5, "1-4")).unwrap();
        expect(
            "b_{12,234}^{1234}",
            &b_general(&key),
            TMonomial::new(12u32, 1),
        )
    });

    gate.check("worked example 2", Duration::from_millis(10), || {
        let (a, b) = (set(7, "1,2,4,5"), set(7, "2-4"));
        let c = ConsecutiveBlock::new(1, 6).unwrap();
        let key = StructureConstantKey::new(a, b, set(7, "1-6")).unwrap();
        let total = b_general(&key);
        let terms = union_consecutive_terms(&a, &b, c).map_err(|e| e.to_string())?;
        let factors: Vec<String> = terms
            .iter()
            .flat_map(|term| term.factors.iter().map(ToString::to_string))
            .collect();
        let want = ["12*t^1", "10", "4", "40*t^1"];
        if factors != want {
            return Err(format!("factors {factors:?}, expected {want:?}"));
        }
        expect("b_{1245,234}^{123456}", &total, TMonomial::new(280u32, 1))
            .map(|s| format!("{s} from factors {}", factors.join(", ")))
    });

    // One sweep covers three criteria; the first line is timed on the sweep
    // and each line reports on its own kind of counterexample.
    let mut formula = None;
    gate.check(
        "formula equals localization oracle, n = 2..6",
        Duration::from_secs(120),
        || {
            let report = verify_formula(2, 6).map_err(|e| e.to_string())?;
            let result = only("formula", &report);
            formula = Some(report);
            result
        },
    );
    let formula = formula.expect("sweep ran");
    gate.check(
        "positivity criterion, n = 2..6",
        Duration::from_secs(1),
        || only("positivity", &formula),
    );
    gate.check("degree law, n = 2..6", Duration::from_secs(1), || {
        only("degree", &formula)
    });

    gate.check(
        "restriction equals subword sum, n = 2..7",
        Duration::from_secs(300),
        || sweep(verify_restrictions(2, 7)),
    );

    gate.check(
        "identity counts on 0<=m,n<=3, 0<=w,x,y,z<=5, w+m+n<=12",
        Duration::from_secs(300),
        || sweep(verify_identity_grid(3, 3, 5, 12, false)),
    );

    gate.check(
        "bijection pipeline on the same grid",
        Duration::from_secs(600),
        || {
            if !worked_examples_hold() {
                return Err("worked move examples do not reproduce".into());
            }
            sweep(verify_identity_grid(3, 3, 5, 12, true))
                .map(|s| format!("{s}; worked move examples reproduce"))
        },
    );

    gate.check(
        "nested conversion law, n <= 6",
        Duration::from_secs(60),
        || sweep(verify_conversion(2, 6)),
    );

    if gate.failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} criteria failed", gate.failed);
        ExitCode::FAILURE
    }
}
