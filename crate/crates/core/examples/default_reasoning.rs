//! Absolute and typical knowledge in a small knowledge base.
//!
//!     cargo run --example default_reasoning

use evidential::{parse_kb, CombinationRule};

const KB: &str = "
# where is the package?
frame: depot, truck, porch, neighbour
P is {truck, porch, neighbour}
typically P is {porch} strength 0.9
";

const CONFLICT: &str = "
frame: depot, truck, porch, neighbour
P is {depot, truck}
typically P is {porch} strength 0.9
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rule = CombinationRule::Dempster;
    let kb = parse_kb(KB)?;
    print!("{kb}");
    let m = kb.infer(&rule)?;
    println!("=> {m}");
    let porch = kb.frame().set(["porch"])?;
    println!("Prob(porch) ∈ {}", kb.query(&rule, &porch)?);

    // A default that contradicts the absolute statement is discarded.
    let kb = parse_kb(CONFLICT)?;
    println!("\n=> {}", kb.infer(&rule)?);

    // Errors carry a line and column.
    match parse_kb("frame: a, b\ntypically V is {a, c} strength 0.9\n") {
        Err(e) => println!("\nerror[{}]: {e}", e.kind.name()),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
