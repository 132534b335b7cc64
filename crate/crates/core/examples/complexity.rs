//! Estimate the arithmetic complexity of `sqrt(d)` and show the family lines
//! found in the window.
//!
//! cargo run --release --example complexity -- 83 [window]

use torusrank::{arithmetic_complexity, QuadraticIrrational, SearchConfig};

fn main() -> torusrank::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let d: i64 = args
        .first()
        .map_or(83, |s| s.parse().expect("d must be an integer"));
    let window: u64 = args
        .get(1)
        .map_or(1_000_000, |s| s.parse().expect("window must be an integer"));

    let theta = QuadraticIrrational::sqrt(d)?;
    let report = arithmetic_complexity(&theta, &SearchConfig::default().with_window(window))?;
    println!("theta = {theta}, expansion {}", report.expansion);
    println!(
        "c = {} (independence {}, n = {})",
        report.c,
        report.independence,
        report.n()
    );
    for line in &report.witness_lines {
        let slope: Vec<String> = line.entry_slope.iter().map(|s| s.to_string()).collect();
        let [r0, r1, r2] = &line.radicand;
        let preview: Vec<String> = line
            .members
            .iter()
            .take(6)
            .map(|m| format!("t={} x={}", m.t, m.theta.d()))
            .collect();
        println!(
            "  slope ({}) x(t) = {r0} + {r1} t + {r2} t^2: {} members, {} skipped; {}",
            slope.join(","),
            line.members.len(),
            line.skipped_non_square_free.len(),
            preview.join(", ")
        );
    }
    println!("{:?}", report.diagnostics);
    Ok(())
}
