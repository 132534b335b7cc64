//! Rank estimates from the complexity of the attached torus: a CM curve,
//! the rational family E_b and the golden-mean twist of E_3.

use torusrank::rank::{eb_expansion_check, theta_of_curve};
use torusrank::{rank_report, CurveDescriptor, SearchConfig};

fn main() -> torusrank::Result<()> {
    let cfg = SearchConfig::default();

    let r = rank_report(&CurveDescriptor::cm(83), &cfg)?;
    println!(
        "E_CM(-83,1): c = {}, rk_Q = {}, h = {:?}, rank = {:?}",
        r.c, r.rank_estimate, r.class_number, r.full_rank
    );

    for b in [4, 5, 10] {
        let desc = CurveDescriptor::rational_family(b);
        let theta = theta_of_curve(&desc)?;
        let r = rank_report(&desc, &cfg)?;
        println!(
            "E_{b}: theta = {theta} = {}, rank <= {}, estimate {} (shape check {})",
            r.complexity.expansion,
            r.rank_bound,
            r.rank_estimate,
            eb_expansion_check(b)
        );
    }

    let r = rank_report(&CurveDescriptor::rational_family(3), &cfg)?;
    let twist = r.twist.expect("E_3 has a preperiod");
    println!(
        "E_3: {} with rank bound {}; twist {} = {} has rank estimate {}",
        r.complexity.expansion, r.rank_bound, twist.theta, twist.expansion, twist.rank_estimate
    );
    Ok(())
}
