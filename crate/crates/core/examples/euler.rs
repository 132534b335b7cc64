//! The Euler equations of sqrt(d) and the linear diophantine equation
//! obtained from them.
//!
//! cargo run --example euler -- 83

use torusrank::euler::{rational_dimension_upper_bound, symbolic_continuants};
use torusrank::{build_euler_system, expand, linear_diophantine_form, QuadraticIrrational};

fn main() -> torusrank::Result<()> {
    let d: i64 = std::env::args()
        .nth(1)
        .map_or(83, |s| s.parse().expect("d must be an integer"));
    let theta = QuadraticIrrational::sqrt(d)?;
    let exp = expand(&theta);
    println!("{theta} = {exp}");

    let k = symbolic_continuants(0, exp.period().len());
    println!("A_n     = {}", k.a_n);
    println!("A_(n-1) = {}", k.a_n1);
    println!("B_n     = {}", k.b_n);
    println!("B_(n-1) = {}", k.b_n1);

    let sys = build_euler_system(&theta, &exp)?;
    println!(
        "c1 = {}, c2 = {}, S = {}",
        sys.c1, sys.c2, sys.radicand_scale
    );
    for eq in &sys.equations {
        println!("  {eq} = 0");
    }
    let form = linear_diophantine_form(&sys)?;
    println!("diophantine, sign {}: {} = 0", form.sign, form.polynomial);
    let residual = &sys.substituted_third_relation() - &form.polynomial;
    println!("substitution residual is zero: {}", residual.is_zero());
    println!("dimension bound: {}", rational_dimension_upper_bound(&sys));
    Ok(())
}
