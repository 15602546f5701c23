//! Building a belief structure and reading off probability intervals.
//!
//!     cargo run --example belief_intervals

use evidential::{BeliefStructure, Frame, Mass};

fn main() -> evidential::Result<()> {
    let frame = Frame::new(["a", "b", "c", "d"])?;
    let ab = frame.set(["a", "b"])?;
    let m = BeliefStructure::new(
        &frame,
        [(ab.clone(), Mass::new(3, 5)?), (frame.set(["b", "c"])?, Mass::new(1, 5)?), (frame.full(), Mass::new(1, 5)?)],
    )?;
    println!("{m}");

    for set in [ab, frame.set(["b"])?, frame.set(["c", "d"])?, frame.full()] {
        let iv = m.prob_interval(&set)?;
        println!(
            "{:<10} Prob ∈ {iv}  (≈ [{}, {}]), uncertainty {}",
            set.to_string(),
            iv.lower.to_decimal(3),
            iv.upper.to_decimal(3),
            m.uncertainty_range(&set)?
        );
    }

    // The whole Bel function at once, via the subset-lattice transform.
    let table = m.bel_table()?;
    let nonzero = frame.subsets().filter(|s| !table.get(s).unwrap().is_zero()).count();
    println!("{nonzero} of {} subsets have positive belief", 1 << frame.len());

    println!("{}", m.to_json());
    Ok(())
}
