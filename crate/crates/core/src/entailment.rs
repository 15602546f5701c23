//! Entailment between belief structures.
//!
//! `specific ⊂ general` holds when the mass of every focal element of the
//! specific structure can be relocated onto supersets so as to produce the
//! general one. Two readings are provided:
//!
//! * [`partition_entails`]: each general focal element moves as a whole into
//!   exactly one group, one group per specific focal element, and each group
//!   sums to that element's mass.
//! * [`coarsening_entails`]: each specific focal element moves as a whole
//!   onto one general superset; general masses are the sums received.
//! * [`flow_entails`]: mass may be split, so entailment is a transportation
//!   problem on the containment graph, decided exactly by max-flow.
//!
//! Both grouping forms imply the flow form. Every flow witness yields
//! interval containment `[Bel1(A), Pl1(A)] ⊂ [Bel2(A), Pl2(A)]` for normal
//! structures, which [`interval_contained`] checks subset by subset.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::document::set_names;
use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::frame::FocalSet;
use crate::mass::Mass;
use crate::structure::{BeliefStructure, MAX_TABLE_ATOMS};
use crate::zeta::{self, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessMode {
    Partition,
    Coarsening,
    Flow,
    Interval,
}

impl WitnessMode {
    pub fn name(self) -> &'static str {
        match self {
            WitnessMode::Partition => "partition",
            WitnessMode::Coarsening => "coarsening",
            WitnessMode::Flow => "flow",
            WitnessMode::Interval => "interval",
        }
    }
}

/// One general focal element and the specific focal element whose group it joins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMember {
    pub general: FocalSet,
    pub specific: FocalSet,
}

/// Mass moved from a specific focal element to one of its supersets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transport {
    pub specific: FocalSet,
    pub general: FocalSet,
    pub mass: Mass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntailmentWitness {
    /// Each general focal element appears once.
    Partition(Vec<GroupMember>),
    /// Each specific focal element appears once.
    Coarsening(Vec<GroupMember>),
    Flow(Vec<Transport>),
    Interval,
}

impl EntailmentWitness {
    pub fn mode(&self) -> WitnessMode {
        match self {
            EntailmentWitness::Partition(_) => WitnessMode::Partition,
            EntailmentWitness::Coarsening(_) => WitnessMode::Coarsening,
            EntailmentWitness::Flow(_) => WitnessMode::Flow,
            EntailmentWitness::Interval => WitnessMode::Interval,
        }
    }

    /// Re-checks the witness against both structures without searching.
    pub fn verify(&self, specific: &BeliefStructure, general: &BeliefStructure) -> bool {
        if specific.frame() != general.frame() {
            return false;
        }
        match self {
            EntailmentWitness::Partition(members) => verify_groups(members, specific, general, false),
            EntailmentWitness::Coarsening(members) => verify_groups(members, specific, general, true),
            EntailmentWitness::Flow(triples) => verify_flow(triples, specific, general),
            EntailmentWitness::Interval => {
                interval_contained(specific, general).map(|c| c.contained).unwrap_or(false)
            }
        }
    }

    /// As a transport plan; both grouping witnesses are special cases.
    pub fn to_flow(&self, specific: &BeliefStructure, general: &BeliefStructure) -> Option<Vec<Transport>> {
        match self {
            EntailmentWitness::Flow(t) => Some(t.clone()),
            EntailmentWitness::Coarsening(members) => Some(
                members
                    .iter()
                    .map(|g| Transport {
                        specific: g.specific.clone(),
                        general: g.general.clone(),
                        mass: specific.mass(&g.specific).unwrap_or_else(|_| Mass::zero()),
                    })
                    .collect(),
            ),
            EntailmentWitness::Partition(members) => Some(
                members
                    .iter()
                    .map(|g| Transport {
                        specific: g.specific.clone(),
                        general: g.general.clone(),
                        mass: general.mass(&g.general).unwrap_or_else(|_| Mass::zero()),
                    })
                    .collect(),
            ),
            EntailmentWitness::Interval => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            EntailmentWitness::Partition(members) | EntailmentWitness::Coarsening(members) => json!({
                "mode": self.mode().name(),
                "assignment": members.iter().map(|g| json!({
                    "general": set_names(&g.general),
                    "specific": set_names(&g.specific),
                })).collect::<Vec<_>>(),
            }),
            EntailmentWitness::Flow(triples) => json!({
                "mode": "flow",
                "triples": triples.iter().map(|t| json!({
                    "specific": set_names(&t.specific),
                    "general": set_names(&t.general),
                    "mass": t.mass.to_string(),
                })).collect::<Vec<_>>(),
            }),
            EntailmentWitness::Interval => json!({ "mode": "interval" }),
        }
    }
}

fn verify_groups(
    members: &[GroupMember],
    specific: &BeliefStructure,
    general: &BeliefStructure,
    coarsening: bool,
) -> bool {
    // the "moved" side appears once per member; the "group" side gets its mass summed
    let (moved, grouped) = if coarsening { (specific, general) } else { (general, specific) };
    let mut seen = BTreeMap::new();
    let mut sums: BTreeMap<u32, BigRational> = BTreeMap::new();
    for g in members {
        let (mover, group) = if coarsening { (&g.specific, &g.general) } else { (&g.general, &g.specific) };
        let (Ok(m_moved), Ok(m_group)) = (moved.mass(mover), grouped.mass(group)) else { return false };
        if m_moved.is_zero() || m_group.is_zero() || !g.specific.is_subset(&g.general).unwrap_or(false) {
            return false;
        }
        if seen.insert(mover.bits(), ()).is_some() {
            return false;
        }
        *sums.entry(group.bits()).or_insert_with(BigRational::zero) += m_moved.ratio();
    }
    seen.len() == moved.len() && sums.len() == grouped.len()
        && grouped.raw().iter().all(|(bits, m)| sums.get(bits) == Some(m.ratio()))
}

fn verify_flow(triples: &[Transport], specific: &BeliefStructure, general: &BeliefStructure) -> bool {
    let mut rows: BTreeMap<u32, BigRational> = BTreeMap::new();
    let mut cols: BTreeMap<u32, BigRational> = BTreeMap::new();
    for t in triples {
        if t.mass.is_zero() || !t.specific.is_subset(&t.general).unwrap_or(false) {
            return false;
        }
        *rows.entry(t.specific.bits()).or_insert_with(BigRational::zero) += t.mass.ratio();
        *cols.entry(t.general.bits()).or_insert_with(BigRational::zero) += t.mass.ratio();
    }
    let matches = |sums: &BTreeMap<u32, BigRational>, target: &BTreeMap<u32, Mass>| {
        sums.len() == target.len() && target.iter().all(|(bits, m)| sums.get(bits) == Some(m.ratio()))
    };
    matches(&rows, specific.raw()) && matches(&cols, general.raw())
}

/// Entailment under the literal grouping reading: every general focal element
/// joins exactly one group, one group per specific focal element `A`, every
/// member contains `A`, and each group's masses sum to `m_specific(A)`.
/// General focal elements are never split.
pub fn partition_entails(
    specific: &BeliefStructure,
    general: &BeliefStructure,
) -> Result<Option<EntailmentWitness>> {
    specific.frame().ensure_same(general.frame())?;
    let bins: Vec<(u32, &Mass)> = specific.raw().iter().map(|(&b, m)| (b, m)).collect();
    let items: Vec<(u32, &Mass)> = general.raw().iter().map(|(&b, m)| (b, m)).collect();
    let frame = specific.frame();
    Ok(group_search(&items, &bins, |item, bin| bin & !item == 0).map(|choice| {
        let members = items
            .iter()
            .zip(choice)
            .map(|(&(g, _), i)| GroupMember { general: frame.set_unchecked(g), specific: frame.set_unchecked(bins[i].0) })
            .collect();
        EntailmentWitness::Partition(members)
    }))
}

/// Entailment where every specific focal element moves whole onto one
/// general superset, and each general mass is the sum of what it receives.
/// This is the grouping used when a combined structure is shown to entail
/// one of its inputs (`A∩B` and `A` both land on `A`).
pub fn coarsening_entails(
    specific: &BeliefStructure,
    general: &BeliefStructure,
) -> Result<Option<EntailmentWitness>> {
    specific.frame().ensure_same(general.frame())?;
    let items: Vec<(u32, &Mass)> = specific.raw().iter().map(|(&b, m)| (b, m)).collect();
    let bins: Vec<(u32, &Mass)> = general.raw().iter().map(|(&b, m)| (b, m)).collect();
    let frame = specific.frame();
    Ok(group_search(&items, &bins, |item, bin| item & !bin == 0).map(|choice| {
        let members = items
            .iter()
            .zip(choice)
            .map(|(&(a, _), j)| GroupMember { general: frame.set_unchecked(bins[j].0), specific: frame.set_unchecked(a) })
            .collect();
        EntailmentWitness::Coarsening(members)
    }))
}

/// Exact bin packing: place every item whole into a bin it `fits`, filling
/// every bin exactly. Returns the bin index per item, in item order.
///
/// Items are tried in descending mass order, and a branch is cut as soon as
/// some bin can no longer be filled by the items still unplaced.
fn group_search(
    items: &[(u32, &Mass)],
    bins: &[(u32, &Mass)],
    fits: impl Fn(u32, u32) -> bool,
) -> Option<Vec<usize>> {
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by(|&a, &b| items[b].1.cmp(items[a].1).then(items[a].0.cmp(&items[b].0)));
    let candidates: Vec<Vec<usize>> = order
        .iter()
        .map(|&k| (0..bins.len()).filter(|&i| fits(items[k].0, bins[i].0)).collect())
        .collect();
    // potential[k][i]: mass still available to bin i from items order[k..]
    let mut potential = vec![vec![BigRational::zero(); bins.len()]; order.len() + 1];
    for k in (0..order.len()).rev() {
        potential[k] = potential[k + 1].clone();
        for &i in &candidates[k] {
            potential[k][i] += items[order[k]].1.ratio();
        }
    }
    let weights: Vec<&BigRational> = order.iter().map(|&k| items[k].1.ratio()).collect();
    let search = GroupSearch { weights: &weights, candidates: &candidates, potential: &potential };
    let mut remaining: Vec<BigRational> = bins.iter().map(|(_, m)| m.ratio().clone()).collect();
    let mut chosen = vec![usize::MAX; order.len()];
    if !search.run(0, &mut remaining, &mut chosen) {
        return None;
    }
    let mut result = vec![usize::MAX; items.len()];
    for (k, &item) in order.iter().enumerate() {
        result[item] = chosen[k];
    }
    Some(result)
}

struct GroupSearch<'a> {
    weights: &'a [&'a BigRational],
    candidates: &'a [Vec<usize>],
    potential: &'a [Vec<BigRational>],
}

impl GroupSearch<'_> {
    fn run(&self, k: usize, remaining: &mut [BigRational], chosen: &mut [usize]) -> bool {
        if remaining.iter().zip(&self.potential[k]).any(|(need, avail)| need > avail) {
            return false;
        }
        if k == self.weights.len() {
            return remaining.iter().all(Zero::is_zero);
        }
        let weight = self.weights[k];
        for &i in &self.candidates[k] {
            if &remaining[i] >= weight {
                remaining[i] -= weight;
                chosen[k] = i;
                if self.run(k + 1, remaining, chosen) {
                    return true;
                }
                remaining[i] += weight;
            }
        }
        false
    }
}

/// Entailment with mass splitting allowed: a nonnegative transport plan
/// supported on containment pairs whose row sums are the specific masses and
/// column sums the general masses.
pub fn flow_entails(specific: &BeliefStructure, general: &BeliefStructure) -> Result<Option<EntailmentWitness>> {
    specific.frame().ensure_same(general.frame())?;
    let denom = zeta::common_denominator(specific.raw().values().chain(general.raw().values()));
    let scaled = |m: &Mass| m.numer() * (&denom / m.denom());

    let rows: Vec<u32> = specific.raw().keys().copied().collect();
    let cols: Vec<u32> = general.raw().keys().copied().collect();
    let source = 0;
    let sink = rows.len() + cols.len() + 1;
    let mut net = FlowNetwork::new(sink + 1);
    for (i, m) in specific.raw().values().enumerate() {
        net.add_edge(source, 1 + i, scaled(m));
    }
    for (j, m) in general.raw().values().enumerate() {
        net.add_edge(1 + rows.len() + j, sink, scaled(m));
    }
    let mut pairs = Vec::new();
    for (i, &a) in rows.iter().enumerate() {
        for (j, &b) in cols.iter().enumerate() {
            if a & !b == 0 {
                pairs.push((a, b, net.add_edge(1 + i, 1 + rows.len() + j, denom.clone())));
            }
        }
    }
    if net.max_flow(source, sink) != denom {
        return Ok(None);
    }
    let frame = specific.frame();
    let triples = pairs
        .into_iter()
        .filter_map(|(a, b, id)| {
            let f: BigInt = net.flow(id);
            (!f.is_zero()).then(|| Transport {
                specific: frame.set_unchecked(a),
                general: frame.set_unchecked(b),
                mass: Mass::from_ratio_unchecked(BigRational::new(f, denom.clone())),
            })
        })
        .collect();
    Ok(Some(EntailmentWitness::Flow(triples)))
}

/// Outcome of the exhaustive interval check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalContainment {
    pub contained: bool,
    /// Smallest subset, in bitmask order, whose interval escapes.
    pub first_violation: Option<FocalSet>,
}

/// Whether `[Bel_s(A), Pl_s(A)]` lies inside `[Bel_g(A), Pl_g(A)]` for every
/// subset `A` (closed intervals, exact comparison).
pub fn interval_contained(specific: &BeliefStructure, general: &BeliefStructure) -> Result<IntervalContainment> {
    specific.frame().ensure_same(general.frame())?;
    let n = specific.frame().len();
    if n > MAX_TABLE_ATOMS {
        return Err(Error::FrameTooLarge { atoms: n, max: MAX_TABLE_ATOMS });
    }
    let denom = zeta::common_denominator(specific.raw().values().chain(general.raw().values()));
    let violation = if zeta::fits_small(&denom) {
        first_violation::<u128>(specific, general, &denom)
    } else {
        first_violation::<BigInt>(specific, general, &denom)
    };
    Ok(IntervalContainment {
        contained: violation.is_none(),
        first_violation: violation.map(|bits| specific.frame().set_unchecked(bits)),
    })
}

fn first_violation<T: Scalar>(specific: &BeliefStructure, general: &BeliefStructure, denom: &BigInt) -> Option<u32> {
    let n = specific.frame().len();
    let full = specific.frame().full_bits();
    let tables = [specific, general].map(|m| {
        let mut t = m.scaled_table::<T>(denom);
        zeta::zeta(&mut t, n);
        let nonempty = T::from_big(denom) - T::from_big(&(m.empty_mass().numer() * (denom / m.empty_mass().denom())));
        (t, nonempty)
    });
    let [(bel_s, total_s), (bel_g, total_g)] = &tables;
    (0..=full).find(|&a| {
        let c = (full & !a) as usize;
        let a = a as usize;
        let pl_s = total_s.clone() - bel_s[c].clone();
        let pl_g = total_g.clone() - bel_g[c].clone();
        bel_g[a] > bel_s[a] || pl_s > pl_g
    })
}

/// Coarsens `m` to the simple support form on `target`:
/// `{target: Bel(target), X: 1 - Bel(target)}`.
pub fn weaken_to(m: &BeliefStructure, target: &FocalSet) -> Result<BeliefStructure> {
    m.ensure_normal()?;
    if target.is_empty() {
        return Err(Error::EmptyTarget);
    }
    let strength = m.bel(target)?;
    BeliefStructure::simple_support(target, strength)
}

/// Lowers the strength of a typical-form structure `{B: a, X: 1 - a}` to
/// `strength <= a`.
pub fn hedge(m: &BeliefStructure, strength: &Mass) -> Result<BeliefStructure> {
    m.ensure_normal()?;
    let frame = m.frame();
    let full = frame.full_bits();
    let (set, current) = match m.raw().iter().collect::<Vec<_>>().as_slice() {
        [(&b, _)] if b == full => (None, Mass::zero()),
        [(&b, a)] => (Some(b), (*a).clone()),
        [(&b, a), (&x, _)] if x == full => (Some(b), (*a).clone()),
        _ => return Err(Error::NotTypicalForm),
    };
    if strength > &current {
        return Err(Error::StrengthIncrease { from: current.to_string(), to: strength.to_string() });
    }
    match set {
        Some(b) => BeliefStructure::simple_support(&frame.set_unchecked(b), strength.clone()),
        None => Ok(BeliefStructure::vacuous(frame)),
    }
}
