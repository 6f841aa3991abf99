//! Acceptance criteria 1 to 10. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails. Tolerances are pinned here against the values
//! used by the suites so that neither side can drift alone.

use std::process::ExitCode;

use cpv::verify::{self, criterion};

fn pinned() -> Vec<(&'static str, f64, f64)> {
    vec![
        ("calibration relative error", verify::CALIBRATION_REL_TOL, 1e-6),
        ("calibration budget (s)", verify::CALIBRATION_BUDGET_S, 5.0),
        ("relative energy drift", verify::ENERGY_DRIFT_TOL, 1e-8),
        ("momentum drift", verify::MOMENTUM_DRIFT_TOL, 1e-6),
        ("pair distance drift", verify::DISTANCE_DRIFT_TOL, 1e-6),
        ("conservation budget (s)", verify::CONSERVATION_BUDGET_S, 30.0),
        ("equilibrium speed", verify::EQUILIBRIUM_SPEED_TOL, 1e-12),
        ("relative-equilibrium residual", verify::RE_RESIDUAL_TOL, 1e-8),
        ("landmark error", verify::LANDMARK_TOL, 1e-12),
        ("reduced dimension 2 fraction", verify::REDUCED_DIM_MIN_FRACTION, 0.9),
        ("fiber probe starts", verify::FIBER_STARTS as f64, 200.0),
        ("fiber probe budget (s)", verify::FIBER_BUDGET_S, 120.0),
        ("midpoint pairs", verify::MIDPOINT_PAIRS as f64, 100.0),
        ("midpoint successes", verify::MIDPOINT_MIN_SUCCESSES as f64, 95.0),
        ("midpoint distance", cpv_core::analysis::probe::MIDPOINT_TOL, 1e-3),
    ]
}

fn main() -> ExitCode {
    let mut failed = 0;
    for (name, used, want) in pinned() {
        if used != want {
            println!("tolerance {name}: FAIL (suite uses {used:e}, pinned {want:e})");
            failed += 1;
        }
    }
    for k in 1..=10u8 {
        let c = criterion(k);
        match c.failure() {
            None => println!("criterion {k:>2} {}: PASS ({:.2} s)", c.title, c.seconds),
            Some(why) => {
                println!("criterion {k:>2} {}: FAIL ({:.2} s) {why}", c.title, c.seconds);
                failed += 1;
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance failure(s)");
        ExitCode::FAILURE
    }
}
