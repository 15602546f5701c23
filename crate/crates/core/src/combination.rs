//! Conjunctive combination of belief structures and its conflict-handling
//! variants.
//!
//! Every cell-routing rule sends the product weight `m1(A)·m2(B)` of a pair of
//! focal elements to
//!
//! ```text
//! D = (A ∩ B) ∪ (1 - Poss(B/A)) · F(A, B)
//! ```
//!
//! With crisp possibility this is `A ∩ B` when the sets meet and `F(A, B)`
//! when they do not. The rules differ only in `F`: the union `A ∪ B`, the set
//! `Ā ∪ B̄` (which is `X` for disjoint sets), the left set `A`, the right set
//! `B`, or the empty set. Dempster's rule instead drops conflicting cells and
//! rescales by `1/(1 - K)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::frame::FocalSet;
use crate::mass::{parse_rational, Mass};
use crate::structure::BeliefStructure;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CombinationRule {
    /// Proportional renormalization of the conflict.
    Dempster,
    /// Conflict goes to the whole frame.
    YagerToX,
    /// Conflicting pairs go to their union.
    DuboisPradeUnion,
    /// Conflict stays on the empty set; the result may be subnormal.
    Unnormalized,
    /// Conflicting pairs go to the first operand's set.
    PriorityFirst,
    /// Conflicting pairs go to the second operand's set.
    PrioritySecond,
    /// The mixture `c·m1 + (1 - c)·m2`; no product cells are formed.
    Discount(Mass),
}

impl CombinationRule {
    /// The six rules that route product cells.
    pub fn cell_routing() -> [CombinationRule; 6] {
        [
            CombinationRule::Dempster,
            CombinationRule::YagerToX,
            CombinationRule::DuboisPradeUnion,
            CombinationRule::Unnormalized,
            CombinationRule::PriorityFirst,
            CombinationRule::PrioritySecond,
        ]
    }

    pub fn is_cell_routing(&self) -> bool {
        !matches!(self, CombinationRule::Discount(_))
    }

    /// Image of a conflicting pair under `F`, or `None` when the cell is
    /// discarded (Dempster, Discount).
    fn conflict_image(&self, left: u32, right: u32, full: u32) -> Option<u32> {
        match self {
            CombinationRule::Dempster | CombinationRule::Discount(_) => None,
            CombinationRule::YagerToX => Some((!left | !right) & full),
            CombinationRule::DuboisPradeUnion => Some(left | right),
            CombinationRule::Unnormalized => Some(0),
            CombinationRule::PriorityFirst => Some(left),
            CombinationRule::PrioritySecond => Some(right),
        }
    }
}

impl fmt::Display for CombinationRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CombinationRule::Dempster => f.write_str("dempster"),
            CombinationRule::YagerToX => f.write_str("yager"),
            CombinationRule::DuboisPradeUnion => f.write_str("dubois-prade"),
            CombinationRule::Unnormalized => f.write_str("unnormalized"),
            CombinationRule::PriorityFirst => f.write_str("priority-first"),
            CombinationRule::PrioritySecond => f.write_str("priority-second"),
            CombinationRule::Discount(c) => write!(f, "discount:{c}"),
        }
    }
}

impl FromStr for CombinationRule {
    type Err = Error;

    /// Accepts the rule names used on the command line and in JSON.
    /// A bare `discount` means `discount:1/2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Ok(match s {
            "dempster" => CombinationRule::Dempster,
            "yager" => CombinationRule::YagerToX,
            "dubois-prade" => CombinationRule::DuboisPradeUnion,
            "unnormalized" => CombinationRule::Unnormalized,
            "priority-first" => CombinationRule::PriorityFirst,
            "priority-second" => CombinationRule::PrioritySecond,
            "discount" => CombinationRule::Discount(Mass::new(1, 2)?),
            _ => match s.strip_prefix("discount:") {
                Some(c) => CombinationRule::Discount(Mass::from_ratio(parse_rational(c)?)?),
                None => return Err(Error::UnknownRule(s.to_string())),
            },
        })
    }
}

/// One entry of the product table of two structures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductCell {
    pub left: FocalSet,
    pub right: FocalSet,
    pub weight: Mass,
    pub conflicting: bool,
}

/// All `|m1| · |m2|` product cells, row-major in bitmask order.
pub fn product_cells(m1: &BeliefStructure, m2: &BeliefStructure) -> Result<Vec<ProductCell>> {
    m1.frame().ensure_same(m2.frame())?;
    let mut cells = Vec::with_capacity(m1.len() * m2.len());
    for (left, a) in m1.focal_elements() {
        for (right, b) in m2.focal_elements() {
            let conflicting = left.bits() & right.bits() == 0;
            cells.push(ProductCell { left: left.clone(), right, weight: a * b, conflicting });
        }
    }
    Ok(cells)
}

/// `K`: the product mass landing on empty intersections.
pub fn conflict_mass(m1: &BeliefStructure, m2: &BeliefStructure) -> Result<Mass> {
    m1.frame().ensure_same(m2.frame())?;
    let mut k = BigRational::zero();
    for (&a, wa) in m1.raw() {
        for (&b, wb) in m2.raw() {
            if a & b == 0 {
                k += wa.ratio() * wb.ratio();
            }
        }
    }
    Ok(Mass::from_ratio_unchecked(k))
}

/// Crisp possibility of `b` given `a`: one when they meet, zero otherwise.
pub fn poss(b: &FocalSet, a: &FocalSet) -> Result<Mass> {
    if a.is_empty() {
        return Err(Error::EmptyTarget);
    }
    Ok(if b.is_disjoint(a)? { Mass::zero() } else { Mass::one() })
}

/// Where `rule` sends the cell `(left, right)`; `None` when it is discarded.
pub fn route_cell(rule: &CombinationRule, left: &FocalSet, right: &FocalSet) -> Result<Option<FocalSet>> {
    let meet = left.intersection(right)?;
    if !meet.is_empty() {
        return Ok(Some(meet));
    }
    let frame = left.frame();
    Ok(rule.conflict_image(left.bits(), right.bits(), frame.full_bits()).map(|bits| frame.set_unchecked(bits)))
}

/// Combines two normal structures under `rule`.
pub fn combine(m1: &BeliefStructure, m2: &BeliefStructure, rule: &CombinationRule) -> Result<BeliefStructure> {
    m1.frame().ensure_same(m2.frame())?;
    m1.ensure_normal()?;
    m2.ensure_normal()?;
    let frame = m1.frame();
    let mut acc: BTreeMap<u32, BigRational> = BTreeMap::new();

    if let CombinationRule::Discount(c) = rule {
        let rest = c.complement();
        for (&a, w) in m1.raw() {
            *acc.entry(a).or_insert_with(BigRational::zero) += c.ratio() * w.ratio();
        }
        for (&b, w) in m2.raw() {
            *acc.entry(b).or_insert_with(BigRational::zero) += rest.ratio() * w.ratio();
        }
        return BeliefStructure::from_accumulated(frame, acc, false);
    }

    let full = frame.full_bits();
    let mut conflict = BigRational::zero();
    for (&a, wa) in m1.raw() {
        for (&b, wb) in m2.raw() {
            let weight = wa.ratio() * wb.ratio();
            let target = match a & b {
                0 => {
                    conflict += &weight;
                    rule.conflict_image(a, b, full)
                }
                meet => Some(meet),
            };
            if let Some(t) = target {
                *acc.entry(t).or_insert_with(BigRational::zero) += weight;
            }
        }
    }
    if *rule == CombinationRule::Dempster && !conflict.is_zero() {
        let kept = BigRational::one() - conflict;
        if kept.is_zero() {
            return Err(Error::TotalConflict);
        }
        for v in acc.values_mut() {
            *v /= &kept;
        }
    }
    BeliefStructure::from_accumulated(frame, acc, *rule == CombinationRule::Unnormalized)
}

/// Left fold of [`combine`] in list order.
pub fn combine_all(structures: &[BeliefStructure], rule: &CombinationRule) -> Result<BeliefStructure> {
    let (first, rest) = structures.split_first().ok_or(Error::EmptyInput)?;
    if rest.is_empty() {
        first.ensure_normal()?;
    }
    rest.iter().try_fold(first.clone(), |acc, next| combine(&acc, next, rule))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Frame;

    fn m(p: i64, q: i64) -> Mass {
        Mass::new(p, q).unwrap()
    }

    fn abcd() -> Frame {
        Frame::new(["a", "b", "c", "d"]).unwrap()
    }

    fn set(x: &Frame, atoms: &[&str]) -> FocalSet {
        x.set(atoms.iter().copied()).unwrap()
    }

    fn expect(x: &Frame, entries: &[(&[&str], Mass)]) -> BeliefStructure {
        BeliefStructure::new_subnormal(x, entries.iter().map(|(s, w)| (set(x, s), w.clone()))).unwrap()
    }

    const A: &[&str] = &["a", "b"];
    const B: &[&str] = &["c", "d"];
    const B_OVERLAP: &[&str] = &["b", "c"];
    const X: &[&str] = &["a", "b", "c", "d"];

    fn pair(alpha: Mass, beta: Mass, b: &[&str]) -> (BeliefStructure, BeliefStructure) {
        let x = abcd();
        (
            BeliefStructure::simple_support(&set(&x, A), alpha).unwrap(),
            BeliefStructure::simple_support(&set(&x, b), beta).unwrap(),
        )
    }

    #[test]
    fn rule_names_round_trip() {
        let mut rules = CombinationRule::cell_routing().to_vec();
        rules.push(CombinationRule::Discount(m(1, 2)));
        rules.push(CombinationRule::Discount(m(3, 10)));
        for r in rules {
            assert_eq!(r.to_string().parse::<CombinationRule>().unwrap(), r);
        }
        assert_eq!("discount:0.3".parse::<CombinationRule>().unwrap(), CombinationRule::Discount(m(3, 10)));
        assert_eq!("discount".parse::<CombinationRule>().unwrap(), CombinationRule::Discount(m(1, 2)));
        assert!(matches!("discount:2".parse::<CombinationRule>(), Err(Error::MassAboveOne(_))));
        assert!(matches!("smets".parse::<CombinationRule>(), Err(Error::UnknownRule(_))));
    }

    #[test]
    fn conflict_of_disjoint_simple_supports() {
        let (m1, m2) = pair(m(99, 100), m(9, 10), B);
        assert_eq!(conflict_mass(&m1, &m2).unwrap(), m(891, 1000));
        let (m1, _) = pair(m(6, 10), m(5, 10), B);
        assert_eq!(conflict_mass(&m1, &BeliefStructure::vacuous(m1.frame())).unwrap(), Mass::zero());
    }

    #[test]
    fn crisp_possibility() {
        let x = abcd();
        assert_eq!(poss(&set(&x, &["b", "c"]), &set(&x, A)).unwrap(), Mass::one());
        assert_eq!(poss(&set(&x, B), &set(&x, A)).unwrap(), Mass::zero());
        assert_eq!(poss(&x.full(), &set(&x, &["d"])).unwrap(), Mass::one());
        assert_eq!(poss(&x.full(), &x.empty_set()).unwrap_err(), Error::EmptyTarget);
    }

    #[test]
    fn dempster_without_conflict() {
        let x = abcd();
        let (m1, m2) = pair(m(6, 10), m(5, 10), B_OVERLAP);
        let out = combine(&m1, &m2, &CombinationRule::Dempster).unwrap();
        assert_eq!(out, expect(&x, &[(&["b"], m(3, 10)), (A, m(3, 10)), (B_OVERLAP, m(2, 10)), (X, m(2, 10))]));
    }

    #[test]
    fn dempster_with_conflict() {
        let x = abcd();
        let (m1, m2) = pair(m(99, 100), m(9, 10), B);
        let out = combine(&m1, &m2, &CombinationRule::Dempster).unwrap();
        assert_eq!(out, expect(&x, &[(A, m(990, 1090)), (B, m(90, 1090)), (X, m(10, 1090))]));
        let (m1, m2) = pair(m(1, 2), m(1, 2), B);
        let out = combine(&m1, &m2, &CombinationRule::Dempster).unwrap();
        assert_eq!(out, expect(&x, &[(A, m(1, 3)), (B, m(1, 3)), (X, m(1, 3))]));
    }

    #[test]
    fn alternatives_on_the_disjoint_pair() {
        let x = abcd();
        let (m1, m2) = pair(m(6, 10), m(5, 10), B);
        let yager = combine(&m1, &m2, &CombinationRule::YagerToX).unwrap();
        assert_eq!(yager, expect(&x, &[(A, m(3, 10)), (B, m(2, 10)), (X, m(5, 10))]));
        assert_eq!(yager.pl(&set(&x, A)).unwrap(), m(8, 10));
        let dp = combine(&m1, &m2, &CombinationRule::DuboisPradeUnion).unwrap();
        assert_eq!(dp, expect(&x, &[(X, m(3, 10)), (A, m(3, 10)), (B, m(2, 10)), (X, m(2, 10))]));
        let un = combine(&m1, &m2, &CombinationRule::Unnormalized).unwrap();
        assert_eq!(un, expect(&x, &[(&[], m(3, 10)), (A, m(3, 10)), (B, m(2, 10)), (X, m(2, 10))]));
        assert!(un.is_subnormal());
        let pf = combine(&m1, &m2, &CombinationRule::PriorityFirst).unwrap();
        assert_eq!(pf, expect(&x, &[(A, m(6, 10)), (B, m(2, 10)), (X, m(2, 10))]));
        assert_eq!(pf.bel(&set(&x, A)).unwrap(), m(6, 10));
        let ps = combine(&m1, &m2, &CombinationRule::PrioritySecond).unwrap();
        assert_eq!(ps, expect(&x, &[(A, m(3, 10)), (B, m(5, 10)), (X, m(2, 10))]));
        let mix = combine(&m1, &m2, &CombinationRule::Discount(m(1, 2))).unwrap();
        assert_eq!(mix, expect(&x, &[(A, m(3, 10)), (B, m(1, 4)), (X, m(9, 20))]));
    }

    #[test]
    fn union_rule_on_a_non_covering_pair() {
        // A ∪ B is a proper subset when the operands do not cover the frame
        let x = abcd();
        let m1 = BeliefStructure::simple_support(&set(&x, &["a"]), m(1, 2)).unwrap();
        let m2 = BeliefStructure::simple_support(&set(&x, &["c"]), m(1, 2)).unwrap();
        let dp = combine(&m1, &m2, &CombinationRule::DuboisPradeUnion).unwrap();
        assert_eq!(dp.mass(&set(&x, &["a", "c"])).unwrap(), m(1, 4));
        let yager = combine(&m1, &m2, &CombinationRule::YagerToX).unwrap();
        assert_eq!(yager.mass(&x.full()).unwrap(), m(1, 2));
    }

    #[test]
    fn vacuous_is_an_identity() {
        let x = abcd();
        let (m1, _) = pair(m(6, 10), m(5, 10), B);
        let v = BeliefStructure::vacuous(&x);
        for rule in CombinationRule::cell_routing() {
            assert_eq!(combine(&m1, &v, &rule).unwrap(), m1, "{rule}");
            assert_eq!(combine(&v, &m1, &rule).unwrap(), m1, "{rule}");
        }
    }

    #[test]
    fn unnormalized_is_normal_without_conflict() {
        let (m1, m2) = pair(m(6, 10), m(5, 10), B_OVERLAP);
        assert!(combine(&m1, &m2, &CombinationRule::Unnormalized).unwrap().is_normal());
    }

    #[test]
    fn total_conflict_and_subnormal_inputs() {
        let x = Frame::new(["a", "b"]).unwrap();
        let a = BeliefStructure::new(&x, [(set(&x, &["a"]), Mass::one())]).unwrap();
        let b = BeliefStructure::new(&x, [(set(&x, &["b"]), Mass::one())]).unwrap();
        assert_eq!(combine(&a, &b, &CombinationRule::Dempster).unwrap_err(), Error::TotalConflict);
        let un = combine(&a, &b, &CombinationRule::Unnormalized).unwrap();
        assert_eq!(un.empty_mass(), Mass::one());
        assert_eq!(combine(&un, &a, &CombinationRule::Dempster).unwrap_err(), Error::SubnormalInput);
        assert_eq!(combine_all(&[un], &CombinationRule::Dempster).unwrap_err(), Error::SubnormalInput);
        assert_eq!(combine_all(&[], &CombinationRule::Dempster).unwrap_err(), Error::EmptyInput);
    }

    #[test]
    fn cells_and_routing() {
        let x = abcd();
        let (m1, m2) = pair(m(6, 10), m(5, 10), B);
        let cells = product_cells(&m1, &m2).unwrap();
        assert_eq!(cells.len(), 4);
        let conflicting: Vec<_> = cells.iter().filter(|c| c.conflicting).collect();
        assert_eq!(conflicting.len(), 1);
        assert_eq!(conflicting[0].weight, m(3, 10));
        let (a, b) = (set(&x, A), set(&x, B));
        assert_eq!(route_cell(&CombinationRule::Dempster, &a, &b).unwrap(), None);
        assert_eq!(route_cell(&CombinationRule::YagerToX, &a, &b).unwrap(), Some(x.full()));
        assert_eq!(route_cell(&CombinationRule::Unnormalized, &a, &b).unwrap(), Some(x.empty_set()));
        assert_eq!(route_cell(&CombinationRule::PrioritySecond, &a, &b).unwrap(), Some(b.clone()));
        let bc = set(&x, B_OVERLAP);
        assert_eq!(route_cell(&CombinationRule::PriorityFirst, &a, &bc).unwrap(), Some(set(&x, &["b"])));
    }

    #[test]
    fn fold_matches_pairwise() {
        let (m1, m2) = pair(m(6, 10), m(5, 10), B);
        for rule in CombinationRule::cell_routing() {
            assert_eq!(combine_all(&[m1.clone(), m2.clone()], &rule).unwrap(), combine(&m1, &m2, &rule).unwrap());
        }
        assert_eq!(combine_all(std::slice::from_ref(&m1), &CombinationRule::Dempster).unwrap(), m1);
    }
}
