//! Continued fraction, convergents and the reconstruction check for a
//! quadratic irrational.
//!
//! cargo run --example expand -- 0 1 1 7      # (a + b sqrt(d))/c

use torusrank::{canonicalize, convergents, expand, reconstruct_verify};

fn main() -> torusrank::Result<()> {
    let args: Vec<i64> = std::env::args()
        .skip(1)
        .map(|s| s.parse().expect("integer arguments"))
        .collect();
    let [a, b, c, d] = match args.as_slice() {
        [a, b, c, d] => [*a, *b, *c, *d],
        [] => [0, 1, 1, 7],
        _ => panic!("usage: expand [a b c d]"),
    };

    let theta = canonicalize(a, b, c, d)?;
    let exp = expand(&theta);
    println!("{theta} = {exp}");
    println!("m = {}, n = {}", exp.m(), exp.n());

    let table = convergents(&exp, 8);
    println!("  A_0/B_0 = {}/{}", table.a[0], table.b[0]);
    for i in 1..table.len() {
        println!(
            "  A_{i}/B_{i} = {}/{}  det {}",
            table.a[i],
            table.b[i],
            table.determinant(i)
        );
    }

    let ok = reconstruct_verify(theta.as_surd(), &exp)?;
    println!("reconstruction identities hold: {ok}");
    if let Some(q) = exp.periodic_quotient() {
        println!("periodic complete quotient: {q}");
    }
    Ok(())
}
