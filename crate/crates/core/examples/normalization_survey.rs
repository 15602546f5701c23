//! How each way of handling conflict affects monotonicity.
//!
//! Two conflicting simple supports, {a,b} at 6/10 and {c,d} at 5/10, are
//! combined under every rule; the survey reports whether the result still
//! entails each input and whether its probability intervals stayed inside.
//!
//!     cargo run --example normalization_survey

use evidential::monotonicity::sweep_family;
use evidential::{pairwise_survey, BeliefStructure, CombinationRule, Mass};

fn main() -> evidential::Result<()> {
    let (_, a, b) = sweep_family(true);
    let m1 = BeliefStructure::simple_support(&a, Mass::new(6, 10)?)?;
    let m2 = BeliefStructure::simple_support(&b, Mass::new(5, 10)?)?;
    let rules: Vec<CombinationRule> = ["dempster", "yager", "dubois-prade", "discount:1/2", "priority-first", "priority-second", "unnormalized"]
        .iter()
        .map(|r| r.parse().unwrap())
        .collect();

    println!("{:<16} {:>5} {:>5} {:>7} {:>7}  combined", "rule", "⊂m1", "⊂m2", "Bel(A)", "Pl(A)");
    for entry in pairwise_survey(&m1, &m2, &rules)? {
        let Some(r) = entry.report() else {
            println!("{:<16} infeasible", entry.rule());
            continue;
        };
        println!(
            "{:<16} {:>5} {:>5} {:>7} {:>7}  {}",
            r.rule.to_string(),
            r.entails_first,
            r.entails_second,
            r.combined.bel(&a)?.to_string(),
            r.combined.pl(&a)?.to_string(),
            r.combined
        );
    }
    println!("K = {}", evidential::conflict_mass(&m1, &m2)?);
    Ok(())
}
