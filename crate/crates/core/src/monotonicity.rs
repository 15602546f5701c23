//! Does adding evidence preserve previously licensed inferences?
//!
//! Aggregation is monotonic at a step when the new aggregate still entails
//! the old one. That is checked two ways: structurally, by flow entailment,
//! and observably, by containment of every `[Bel, Pl]` interval.

use num_rational::BigRational;
use num_traits::Signed;
use serde_json::{json, Value};

use crate::combination::{combine, conflict_mass, CombinationRule};
use crate::document::set_names;
use crate::entailment::{flow_entails, interval_contained, IntervalContainment};
use crate::error::{Error, Result};
use crate::frame::{FocalSet, Frame};
use crate::mass::{format_ratio, parse_rational, Mass};
use crate::structure::BeliefStructure;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonicityReport {
    pub rule: CombinationRule,
    pub conflict: Mass,
    pub entails_first: bool,
    pub entails_second: bool,
    pub interval_ok_first: bool,
    pub interval_ok_second: bool,
    pub witness_first: Option<FocalSet>,
    pub witness_second: Option<FocalSet>,
    /// False when the combined structure is subnormal and interval
    /// containment was not evaluated; both interval flags are then false.
    pub interval_checked: bool,
    pub combined: BeliefStructure,
}

impl MonotonicityReport {
    pub fn to_json(&self) -> Value {
        let witness = |w: &Option<FocalSet>| w.as_ref().map(set_names);
        let mut v = json!({
            "rule": self.rule.to_string(),
            "feasible": true,
            "conflict": self.conflict.to_string(),
            "entails_first": self.entails_first,
            "entails_second": self.entails_second,
            "interval_checked": self.interval_checked,
            "interval_ok_first": self.interval_ok_first,
            "interval_ok_second": self.interval_ok_second,
            "witness_first": witness(&self.witness_first),
            "witness_second": witness(&self.witness_second),
            "combined": self.combined.to_json_value(),
        });
        if !self.interval_checked {
            v["note"] = json!("combined structure is subnormal; interval containment not evaluated");
        }
        v
    }
}

/// Combines `m_next` into `m_star` and reports whether the result still
/// entails each operand.
pub fn monotonic_step(
    m_star: &BeliefStructure,
    m_next: &BeliefStructure,
    rule: &CombinationRule,
) -> Result<MonotonicityReport> {
    let combined = combine(m_star, m_next, rule)?;
    let conflict = conflict_mass(m_star, m_next)?;
    let entails_first = flow_entails(&combined, m_star)?.is_some();
    let entails_second = flow_entails(&combined, m_next)?.is_some();
    let (interval_checked, first, second) = if combined.is_subnormal() {
        (false, None, None)
    } else {
        (true, Some(interval_contained(&combined, m_star)?), Some(interval_contained(&combined, m_next)?))
    };
    let ok = |c: &Option<IntervalContainment>| c.as_ref().is_some_and(|c| c.contained);
    Ok(MonotonicityReport {
        rule: rule.clone(),
        conflict,
        entails_first,
        entails_second,
        interval_ok_first: ok(&first),
        interval_ok_second: ok(&second),
        witness_first: first.and_then(|c| c.first_violation),
        witness_second: second.and_then(|c| c.first_violation),
        interval_checked,
        combined,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurveyEntry {
    Report(MonotonicityReport),
    /// Dempster's rule under total conflict.
    Infeasible { rule: CombinationRule, conflict: Mass },
}

impl SurveyEntry {
    pub fn rule(&self) -> &CombinationRule {
        match self {
            SurveyEntry::Report(r) => &r.rule,
            SurveyEntry::Infeasible { rule, .. } => rule,
        }
    }

    pub fn report(&self) -> Option<&MonotonicityReport> {
        match self {
            SurveyEntry::Report(r) => Some(r),
            SurveyEntry::Infeasible { .. } => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            SurveyEntry::Report(r) => r.to_json(),
            SurveyEntry::Infeasible { rule, conflict } => json!({
                "rule": rule.to_string(),
                "feasible": false,
                "conflict": conflict.to_string(),
            }),
        }
    }
}

/// One report per rule, in the order given.
pub fn pairwise_survey(
    m1: &BeliefStructure,
    m2: &BeliefStructure,
    rules: &[CombinationRule],
) -> Result<Vec<SurveyEntry>> {
    rules
        .iter()
        .map(|rule| match monotonic_step(m1, m2, rule) {
            Ok(report) => Ok(SurveyEntry::Report(report)),
            Err(Error::TotalConflict) => {
                Ok(SurveyEntry::Infeasible { rule: rule.clone(), conflict: conflict_mass(m1, m2)? })
            }
            Err(e) => Err(e),
        })
        .collect()
}

/// The four-atom frame `{a,b,c,d}` used by [`sweep`]: `A = {a,b}`, and `B` is
/// `{c,d}` when disjoint or `{b,c}` when overlapping.
pub fn sweep_family(disjoint: bool) -> (Frame, FocalSet, FocalSet) {
    let frame = Frame::new(["a", "b", "c", "d"]).expect("static frame");
    let a = frame.set(["a", "b"]).expect("static set");
    let b = if disjoint { frame.set(["c", "d"]) } else { frame.set(["b", "c"]) }.expect("static set");
    (frame, a, b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub alpha: Mass,
    pub beta: Mass,
    pub conflict: Mass,
    /// `None` when the rule is undefined at this point (Dempster at `K = 1`).
    pub outcome: Option<SweepOutcome>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepOutcome {
    pub bel_a: Mass,
    pub pl_a: Mass,
    /// Some interval of the combined structure escapes the first operand's.
    pub violation: bool,
}

/// Evaluates `m1 = {A: α, X: 1-α}` combined with `m2 = {B: β, X: 1-β}` at
/// every grid point, alpha-major.
pub fn sweep(alpha_grid: &[Mass], beta_grid: &[Mass], disjoint: bool, rule: &CombinationRule) -> Result<Vec<SweepRow>> {
    let (_, a, b) = sweep_family(disjoint);
    let mut rows = Vec::with_capacity(alpha_grid.len() * beta_grid.len());
    for alpha in alpha_grid {
        let m1 = BeliefStructure::simple_support(&a, alpha.clone())?;
        for beta in beta_grid {
            let m2 = BeliefStructure::simple_support(&b, beta.clone())?;
            let conflict = conflict_mass(&m1, &m2)?;
            let outcome = match combine(&m1, &m2, rule) {
                Ok(combined) => Some(SweepOutcome {
                    bel_a: combined.bel(&a)?,
                    pl_a: combined.pl(&a)?,
                    violation: !interval_contained(&combined, &m1)?.contained,
                }),
                Err(Error::TotalConflict) => None,
                Err(e) => return Err(e),
            };
            rows.push(SweepRow { alpha: alpha.clone(), beta: beta.clone(), conflict, outcome });
        }
    }
    Ok(rows)
}

pub const SWEEP_CSV_HEADER: &str =
    "alpha,alpha_exact,beta,beta_exact,K,K_exact,bel_A,bel_A_exact,pl_A,pl_A_exact,violation";

/// CSV with each quantity as a 6-place decimal followed by its exact
/// fraction. Infeasible rows leave Bel/Pl blank and read `infeasible`.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let pair = |m: &Mass| format!("{},{}", m.to_decimal(6), m);
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for row in rows {
        let tail = match &row.outcome {
            Some(o) => format!("{},{},{}", pair(&o.bel_a), pair(&o.pl_a), o.violation),
            None => ",,,,infeasible".to_string(),
        };
        out.push_str(&format!("{},{},{},{}\n", pair(&row.alpha), pair(&row.beta), pair(&row.conflict), tail));
    }
    out
}

/// Grid text: comma-separated numbers, or `start:stop:step` (inclusive).
pub fn parse_grid(text: &str) -> Result<Vec<Mass>> {
    let to_mass = |v: BigRational| Mass::from_ratio(v.clone()).map_err(|_| Error::GridOutOfRange(format_ratio(&v)));
    let values = match text.split(':').collect::<Vec<_>>().as_slice() {
        [start, stop, step] => {
            let (start, stop, step) = (parse_rational(start)?, parse_rational(stop)?, parse_rational(step)?);
            if !step.is_positive() {
                return Err(Error::InvalidNumber(format!("grid step {} must be positive", format_ratio(&step))));
            }
            let mut values = Vec::new();
            let mut v = start;
            while v <= stop {
                values.push(to_mass(v.clone())?);
                v += &step;
            }
            values
        }
        [list] if !list.trim().is_empty() => {
            list.split(',').map(|s| to_mass(parse_rational(s)?)).collect::<Result<Vec<_>>>()?
        }
        _ => return Err(Error::InvalidNumber(text.to_string())),
    };
    if values.is_empty() {
        return Err(Error::InvalidNumber(text.to_string()));
    }
    Ok(values)
}
