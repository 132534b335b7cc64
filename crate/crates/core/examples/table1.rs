//! Reproduce the reference table: continued fractions of sqrt(p), complexity and Q-rank
//! for the primes p = 3 mod 4 below 100.
//!
//! cargo run --release --example table1

use torusrank::table::{table1_reproduce, WindowOverrides};
use torusrank::SearchConfig;

fn main() -> torusrank::Result<()> {
    let table = table1_reproduce(&SearchConfig::default(), &WindowOverrides::checked_in())?;
    println!(
        "{:>3}  {:<36} {:>3} {:>4}   expected",
        "p", "sqrt(p)", "c", "rk_Q"
    );
    for row in &table.rows {
        println!(
            "{:>3}  {:<36} {:>3} {:>4}   c = {}, rk_Q = {}{}",
            row.p(),
            row.expansion.to_string(),
            row.c,
            row.rank_estimate,
            row.expected.c,
            row.expected.rk_q,
            if row.all_match() { "" } else { "   <- differs" }
        );
    }
    let matched = table.rows.iter().filter(|r| r.all_match()).count();
    println!("{matched}/{} rows agree", table.rows.len());
    Ok(())
}
