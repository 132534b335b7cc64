//! Partial multiplicity matrices of the Bratteli diagram of a torus.

use torusrank::{bratteli_schedule, canonicalize, expand};

fn main() -> torusrank::Result<()> {
    let theta = canonicalize(0, 1, 1, 2)?;
    let exp = expand(&theta);
    let schedule = bratteli_schedule(&exp);
    println!("{theta} = {exp}");
    for i in 0..5 {
        let [[a, b], [c, d]] = schedule.step(i);
        println!("step {i}: [{a} {b}; {c} {d}]");
    }
    Ok(())
}
