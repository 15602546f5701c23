//! Priority between conflicting defaults comes from their strengths, or
//! explicitly from the priority combination rules.
//!
//!     cargo run --example priorities_and_strengths

use evidential::{parse_kb, CombinationRule};

fn kb(alpha: &str, beta: &str) -> String {
    format!("frame: a,b,c,d,e\ntypically V is {{a,b}} strength {alpha}\ntypically V is {{c,d}} strength {beta}\n")
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (alpha, beta) in [("0.99", "0.9"), ("0.95", "0.95"), ("1/2", "1/2")] {
        let kb = parse_kb(&kb(alpha, beta))?;
        let f = kb.frame();
        let (a, b, ab) = (f.set(["a", "b"])?, f.set(["c", "d"])?, f.set(["a", "b", "c", "d"])?);
        let rule = CombinationRule::Dempster;
        let m = kb.infer(&rule)?;
        println!("α = {alpha}, β = {beta}: {m}");
        for (name, set) in [("A", &a), ("B", &b), ("A∪B", &ab)] {
            let iv = kb.query(&rule, set)?;
            println!("  Prob({name}) ∈ {iv} ≈ [{}, {}]", iv.lower.to_decimal(3), iv.upper.to_decimal(3));
        }
    }

    // Explicit priority: the first default wins outright.
    let kb = parse_kb(&kb("0.9", "0.99"))?;
    for rule in [CombinationRule::PriorityFirst, CombinationRule::PrioritySecond] {
        println!("{rule}: {}", kb.infer(&rule)?);
    }

    // Overlapping defaults conclude "typically A ∩ B" with strength αβ.
    let kb = parse_kb("frame: a,b,c,d\ntypically V is {a,b} strength 0.99\ntypically V is {b,c} strength 0.9\n")?;
    let meet = kb.frame().set(["b"])?;
    println!("summary: {}", kb.typical_summary(&CombinationRule::Dempster, &meet)?);
    Ok(())
}
