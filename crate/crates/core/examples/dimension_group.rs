//! Ranks of dimension groups of circle subgroups and class numbers of
//! imaginary quadratic fields.

use torusrank::rank::{
    class_number_imag_quadratic, dimension_group_rank, reduced_forms, Generator,
};
use torusrank::{canonicalize, GeneratorSet};

fn main() -> torusrank::Result<()> {
    let gens = GeneratorSet::new(vec![
        Generator::root_of_unity(1, 4)?,
        Generator::angle(&canonicalize(0, 1, 1, 2)?)?,
        Generator::angle(&canonicalize(0, 1, 1, 3)?)?,
    ])?;
    println!(
        "s = {}, t = {}, rank = {}",
        gens.s(),
        gens.t(),
        dimension_group_rank(&gens)
    );

    for p in [3, 7, 11, 23, 47, 71] {
        let forms = reduced_forms(p)?;
        println!("h(-{p}) = {}  {:?}", class_number_imag_quadratic(p)?, forms);
    }
    Ok(())
}
