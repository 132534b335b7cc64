//! Morita equivalence and isomorphism of noncommutative tori, decided from
//! the continued fractions of their moduli.

use torusrank::{isomorphic_tori, morita_equivalent, Surd};

fn main() -> torusrank::Result<()> {
    let golden = Surd::from_ints(1, 1, 2, 5)?;
    let pairs = [
        (Surd::from_ints(3, 1, 2, 5)?, golden.clone()),
        (golden.clone(), Surd::from_ints(1, -1, 2, 5)?),
        (Surd::from_ints(0, 1, 1, 83)?, Surd::from_ints(9, 1, 1, 83)?),
        (Surd::from_ints(0, 1, 1, 7)?, Surd::from_ints(0, 1, 1, 5)?),
    ];
    for (x, y) in &pairs {
        println!(
            "{x} and {y}: morita {}, isomorphic {}",
            morita_equivalent(x, y),
            isomorphic_tori(x, y)
        );
    }
    Ok(())
}
