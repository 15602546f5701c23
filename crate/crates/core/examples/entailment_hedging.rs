//! Entailment between belief structures, and hedging a default.
//!
//! A specific structure entails a general one when its mass can be moved
//! onto supersets to produce the general one. Weakening "typically B" to a
//! lower strength is always sound; the flow witness shows how.
//!
//!     cargo run --example entailment_hedging

use evidential::entailment::hedge;
use evidential::{flow_entails, interval_contained, partition_entails, BeliefStructure, Frame, Mass};

fn main() -> evidential::Result<()> {
    let frame = Frame::new(["a", "b", "c", "d"])?;
    let b = frame.set(["b", "c"])?;
    let strong = BeliefStructure::simple_support(&b, Mass::new(19, 20)?)?;
    let weak = hedge(&strong, &Mass::new(9, 10)?)?;
    println!("strong: {strong}\nweak:   {weak}");

    match flow_entails(&strong, &weak)? {
        Some(witness) => {
            assert!(witness.verify(&strong, &weak));
            println!("strong entails weak; transport plan:");
            println!("{}", serde_json::to_string_pretty(&witness.to_json()).unwrap());
        }
        None => println!("no transport plan"),
    }

    // The group-sum definition needs each group to match a specific focal
    // exactly, so it cannot split the 19/20 mass on B.
    println!("partition witness: {:?}", partition_entails(&strong, &weak)?.map(|w| w.mode()));

    let check = interval_contained(&strong, &weak)?;
    println!("every interval of strong lies inside weak's: {}", check.contained);

    // The reverse direction fails, and interval containment says where.
    let back = interval_contained(&weak, &strong)?;
    println!("weak entails strong: {} (first violation {})", flow_entails(&weak, &strong)?.is_some(), back.first_violation.unwrap());
    Ok(())
}
