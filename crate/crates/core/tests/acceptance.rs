//! Acceptance criteria 1 to 10. Each criterion runs through the library's
//! validation suite; the expected value and comparison of every check are
//! pinned here as well, so loosening a tolerance in the library fails.
//!
//! Prints `criterion N: PASS|FAIL` per criterion and exits non-zero if any
//! fails.

use std::collections::BTreeMap;
use std::process::ExitCode;

use lyaprank::validation::{run_one, Check, Comparison, ALL_CRITERIA};

// 20-digit references
const SF_F1: f64 = 0.08814588488134658584;
const SF_F11: f64 = 0.07166013712762607391;
const SF_F111: f64 = 0.12548698090580929833;
const TRIBONACCI: f64 = 1.839286755214161;

#[derive(Clone, Copy)]
enum Pin {
    Near(f64, f64),
    Below(f64),
    Above(f64),
}

fn pins() -> BTreeMap<String, Pin> {
    use Pin::*;
    let s5 = 5f64.sqrt();
    let sixth = 1.0 / 6.0;
    let mut m: BTreeMap<String, Pin> = [
        ("tribonacci.rho", Near(TRIBONACCI, 1e-12)),
        ("thueMorse.durand.F1", Near(sixth, 1e-10)),
        ("thueMorse.durand.F11", Near(sixth, 1e-10)),
        ("thueMorse.michel.F1", Near(sixth, 1e-10)),
        ("thueMorse.michel.F11", Near(sixth, 1e-10)),
        ("thueMorse.discrepancy", Below(1e-10)),
        ("fibonacci.coefLogVU", Near(s5 - 2.0, 1e-12)),
        ("fibonacci.coefLogVAU", Near((3.0 - s5) / 2.0, 1e-12)),
        ("example.F11", Near(0.2, 1e-10)),
        ("example.F1", Near(0.1, 1e-10)),
        ("example.etaMatrixMismatches", Near(0.0, 0.0)),
        ("squarefree.zeta2", Near(3.099486, 5e-7)),
        ("squarefree.zeta3", Near(7.968954, 5e-7)),
        ("squarefree.F1", Near(SF_F1, 5e-7)),
        ("squarefree.F11", Near(SF_F11, 5e-7)),
        ("squarefree.F111", Near(SF_F111, 5e-7)),
        ("squarefree.F1.printed", Near(0.0881459, 1e-6)),
        ("squarefree.F11.printed", Near(0.0716601, 1e-6)),
        ("squarefree.F111.printed", Near(0.125487, 1e-6)),
        ("squarefree.empirical.F1", Near(SF_F1, 1e-3)),
        ("squarefree.empirical.F11", Near(SF_F11, 1e-3)),
        ("squarefree.empirical.F111", Near(SF_F111, 1e-3)),
        ("squarefree.nu10", Near(0.285293, 5e-7)),
        ("squarefree.nu110", Near(0.197147, 5e-7)),
        ("moebius.dpsiPlusInfinity", Near(0.607927, 1e-5)),
        ("moebius.dpsiMinusInfinity", Near(0.0, 1e-12)),
        ("moebius.minSecondDifference", Above(-1e-9)),
        ("moebius.minDpsiStep", Above(-1e-12)),
        ("moebius.finiteDifferenceGap", Below(1e-6)),
        ("counterexample.direct", Near(((3.0 + s5) / 2.0).ln(), 1e-2)),
        ("counterexample.closedLimit", Near(0.0, 0.0)),
        ("counterexample.closedPrefix", Near(0.0, 1e-2)),
        ("counterexample.gap", Above(0.3)),
        ("counterexample.warning", Near(1.0, 0.0)),
        ("bernoulli.standardErrors", Below(3.0)),
        ("properties.reassemblyFailures", Near(0.0, 0.0)),
        ("properties.exactLemmaSlack", Above(-1e-12)),
        ("properties.empiricalLemmaExcess", Below(1.0)),
        ("properties.cylinderIdentityExcess", Below(1.0)),
        ("properties.rankOnePower", Below(1e-12)),
        ("properties.rankOneFrobenius", Below(1e-12)),
    ]
    .into_iter()
    .map(|(k, p)| (k.to_string(), p))
    .collect();
    for i in 1..=5 {
        m.insert(format!("fibonacci.family{i}.gap"), Near(0.0, 5e-3));
    }
    m
}

/// Names every criterion must produce, so a check cannot silently vanish.
fn required(id: u32) -> &'static [&'static str] {
    match id {
        1 => &["tribonacci.rho"],
        2 => &["thueMorse.durand.F1", "thueMorse.michel.F11", "thueMorse.discrepancy"],
        3 => &["fibonacci.coefLogVU", "fibonacci.coefLogVAU", "fibonacci.family1.gap", "fibonacci.family5.gap"],
        4 => &["example.F1", "example.F11", "example.etaMatrixMismatches"],
        5 => &["squarefree.zeta2", "squarefree.zeta3", "squarefree.F1", "squarefree.F11", "squarefree.F111"],
        6 => &["squarefree.nu10", "squarefree.nu110"],
        7 => &["moebius.dpsiPlusInfinity", "moebius.minSecondDifference", "moebius.finiteDifferenceGap"],
        8 => &["counterexample.direct", "counterexample.closedLimit", "counterexample.warning"],
        9 => &["bernoulli.standardErrors"],
        10 => &["properties.reassemblyFailures", "properties.exactLemmaSlack", "properties.rankOnePower"],
        _ => &[],
    }
}

fn holds(pin: Pin, x: f64) -> bool {
    match pin {
        Pin::Near(e, tol) => (x - e).abs() <= tol,
        Pin::Below(e) => x < e,
        Pin::Above(e) => x > e,
    }
}

fn same_contract(pin: Pin, c: &Check) -> bool {
    match (pin, c.comparison) {
        // the library may use a sharper reference, never a looser tolerance
        (Pin::Near(e, tol), Comparison::Near { tolerance }) => tolerance <= tol && (c.expected - e).abs() <= tol,
        (Pin::Below(e), Comparison::Below) => c.expected <= e,
        (Pin::Above(e), Comparison::Above) => c.expected >= e,
        _ => false,
    }
}

fn main() -> ExitCode {
    let pins = pins();
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let mut all = true;
    for id in ALL_CRITERIA {
        let report = run_one(id, &BTreeMap::new(), threads);
        let mut problems = Vec::new();
        if let Some(e) = &report.error {
            problems.push(format!("error: {e}"));
        }
        for name in required(id) {
            if !report.checks.iter().any(|c| c.name == *name) {
                problems.push(format!("{name}: missing"));
            }
        }
        for c in &report.checks {
            match pins.get(&c.name) {
                None => problems.push(format!("{}: not pinned", c.name)),
                Some(&pin) => {
                    if !same_contract(pin, c) {
                        problems.push(format!("{}: contract differs from pin", c.name));
                    }
                    if !holds(pin, c.measured) {
                        problems.push(format!("{}: measured {:e}", c.name, c.measured));
                    }
                }
            }
        }
        let ok = report.passed && problems.is_empty();
        all &= ok;
        println!("criterion {id}: {} ({})", if ok { "PASS" } else { "FAIL" }, report.title);
        for p in problems {
            println!("    {p}");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
