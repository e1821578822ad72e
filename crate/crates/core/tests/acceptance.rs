//! Runs each acceptance criterion at its time limit and prints one line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use sympcoh::suites;
use sympcoh::{FiniteAbelianGroup, Report, Result};

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Duration,
    run: fn() -> Result<Vec<Report>>,
}

fn c1() -> Result<Vec<Report>> {
    Ok(vec![suites::signed_permutations(5)?])
}

fn c2() -> Result<Vec<Report>> {
    let mut cases = Vec::new();
    for n in 1..=3 {
        for orders in [&[][..], &[2], &[3], &[4], &[2, 2]] {
            cases.push((n, FiniteAbelianGroup::from_orders(orders)?));
        }
    }
    cases.push((4, FiniteAbelianGroup::cyclic(2)));
    Ok(vec![suites::homology_wedge(&cases)?])
}

fn c3() -> Result<Vec<Report>> {
    Ok(vec![suites::symbolic(4)?])
}

fn c4() -> Result<Vec<Report>> {
    Ok(vec![suites::concrete_frames(-20, 1)?, suites::concrete_frames(-20, 2)?])
}

fn c5() -> Result<Vec<Report>> {
    Ok(vec![suites::frame_span(-23, 2)?])
}

fn c6() -> Result<Vec<Report>> {
    Ok(vec![
        suites::nonintegrality(&[(2, 2), (3, 2), (4, 2), (5, 2), (3, 3)])?,
        suites::standard_frame_pairs(-20, 1)?,
        suites::standard_frame_pairs(-20, 2)?,
        suites::standard_frame_pairs(-20, 3)?,
    ])
}

fn c7() -> Result<Vec<Report>> {
    Ok(vec![suites::lattice_properties(20240601, 120, 50)?])
}

const CRITERIA: [Criterion; 7] = [
    Criterion { id: 1, name: "signed permutations", limit: Duration::from_secs(10), run: c1 },
    Criterion { id: 2, name: "homology of X_n(G)", limit: Duration::from_secs(30), run: c2 },
    Criterion { id: 3, name: "symbolic surjectivity", limit: Duration::from_secs(20), run: c3 },
    Criterion { id: 4, name: "concrete frames over D=-20", limit: Duration::from_secs(120), run: c4 },
    Criterion { id: 5, name: "frame images span over D=-23", limit: Duration::from_secs(300), run: c5 },
    Criterion { id: 6, name: "non-integrality", limit: Duration::from_secs(60), run: c6 },
    Criterion { id: 7, name: "lattice properties", limit: Duration::from_secs(60), run: c7 },
];

fn main() -> ExitCode {
    let filter: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut all_ok = true;
    for c in CRITERIA.iter().filter(|c| filter.is_empty() || filter.contains(&c.id)) {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.limit;
        let (passed, detail) = match &outcome {
            Ok(reports) => {
                let total: usize = reports.iter().map(|r| r.checks.len()).sum();
                let failed: Vec<&str> = reports.iter().flat_map(|r| r.failures().map(|f| f.check.as_str())).collect();
                let detail = if failed.is_empty() {
                    format!("{total} checks")
                } else {
                    format!("{} of {total} checks failed: {}", failed.len(), failed.join(", "))
                };
                (failed.is_empty(), detail)
            }
            Err(e) => (false, format!("error: {e}")),
        };
        let ok = passed && in_time;
        all_ok &= ok;
        println!(
            "criterion {} ({}): {} in {:.2}s (limit {}s) - {}",
            c.id,
            c.name,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            c.limit.as_secs(),
            if in_time { detail } else { format!("over time; {detail}") },
        );
        if let (false, Ok(reports)) = (ok, &outcome) {
            for f in reports.iter().flat_map(Report::failures) {
                println!("    {}: {}", f.check, f.witness);
            }
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
