//! Sweeping the two strengths of conflicting evidence and checking the
//! closed forms for Dempster's rule: Bel(A) = αβ̄/(1−αβ) and
//! Pl(A) = β̄/(1−αβ). Writes the CSV that `evidential sweep` produces.
//!
//!     cargo run --example conflict_sweep > sweep.csv

use evidential::monotonicity::{parse_grid, sweep, sweep_csv};
use evidential::CombinationRule;
use num_rational::BigRational;
use num_traits::One;

fn main() -> evidential::Result<()> {
    let grid = parse_grid("0.1:0.9:0.1")?;
    let rows = sweep(&grid, &grid, true, &CombinationRule::Dempster)?;
    for row in &rows {
        let (x, y) = (row.alpha.ratio(), row.beta.ratio());
        let one = BigRational::one();
        let out = row.outcome.as_ref().expect("K < 1 inside the grid");
        let norm = &one - x * y;
        assert_eq!(out.bel_a.ratio(), &(x * (&one - y) / &norm));
        assert_eq!(out.pl_a.ratio(), &((&one - y) / &norm));
        assert!(out.violation, "conflict always pulls Bel(A) below α");
    }
    eprintln!("{} grid points match the closed forms", rows.len());
    print!("{}", sweep_csv(&rows));
    Ok(())
}
