//! Random generators and brute-force oracles shared by the integration
//! suites. The oracles deliberately avoid the library's fast paths.
#![allow(dead_code)]

use std::collections::BTreeMap;

use evidential::{BeliefStructure, CombinationRule, FocalSet, Frame, Mass};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn frame(n: usize) -> Frame {
    Frame::new((0..n).map(|i| format!("x{i}"))).unwrap()
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn mass(n: i64, d: i64) -> Mass {
    Mass::new(n, d).unwrap()
}

pub fn set(frame: &Frame, bits: u32) -> FocalSet {
    frame.from_bits(bits).unwrap()
}

pub fn random_nonempty(rng: &mut ChaCha8Rng, frame: &Frame) -> FocalSet {
    set(frame, rng.gen_range(1..=frame.full_bits()))
}

/// A proper, non-empty subset of the frame (needs at least two atoms).
pub fn random_proper(rng: &mut ChaCha8Rng, frame: &Frame) -> FocalSet {
    set(frame, rng.gen_range(1..frame.full_bits()))
}

/// Strictly between 0 and 1, denominator up to `max_den`.
pub fn random_strength(rng: &mut ChaCha8Rng, max_den: i64) -> Mass {
    let d = rng.gen_range(2..=max_den);
    mass(rng.gen_range(1..d), d)
}

/// Splits 1 into `k` positive rationals with small random weights.
pub fn random_weights(rng: &mut ChaCha8Rng, k: usize) -> Vec<Mass> {
    let raw: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=12)).collect();
    let total: i64 = raw.iter().sum();
    raw.into_iter().map(|w| mass(w, total)).collect()
}

pub fn structure_on(frame: &Frame, sets: &[FocalSet], rng: &mut ChaCha8Rng) -> BeliefStructure {
    let weights = random_weights(rng, sets.len());
    BeliefStructure::new(frame, sets.iter().cloned().zip(weights)).unwrap()
}

/// Normal structure with between 1 and `max_focals` distinct non-empty focals.
pub fn random_structure(rng: &mut ChaCha8Rng, frame: &Frame, max_focals: usize) -> BeliefStructure {
    let k = rng.gen_range(1..=max_focals).min(frame.full_bits() as usize);
    let mut bits: Vec<u32> = Vec::new();
    while bits.len() < k {
        let b = rng.gen_range(1..=frame.full_bits());
        if !bits.contains(&b) {
            bits.push(b);
        }
    }
    let sets: Vec<FocalSet> = bits.into_iter().map(|b| set(frame, b)).collect();
    structure_on(frame, &sets, rng)
}

/// A second structure whose every focal meets every focal of `m`.
pub fn random_nonconflicting(rng: &mut ChaCha8Rng, m: &BeliefStructure, max_focals: usize) -> BeliefStructure {
    let frame = m.frame().clone();
    let focals: Vec<u32> = m.focal_elements().map(|(s, _)| s.bits()).collect();
    let k = rng.gen_range(1..=max_focals);
    let mut sets = Vec::new();
    for _ in 0..k {
        let mut b = rng.gen_range(1..=frame.full_bits());
        for &f in &focals {
            if b & f == 0 {
                let atoms: Vec<u32> = (0..frame.len() as u32).filter(|i| f >> i & 1 == 1).collect();
                b |= 1 << atoms.choose(rng).unwrap();
            }
        }
        sets.push(set(&frame, b));
    }
    structure_on(&frame, &sets, rng)
}

/// Builds a structure entailed by `m`: each focal's mass is split into
/// pieces and each piece moved to a random superset.
pub fn random_generalization(rng: &mut ChaCha8Rng, m: &BeliefStructure) -> BeliefStructure {
    let frame = m.frame().clone();
    let mut parts = Vec::new();
    for (focal, w) in m.focal_elements() {
        let pieces = rng.gen_range(1..=3);
        for share in random_weights(rng, pieces) {
            let extra = rng.gen_range(0..=frame.full_bits()) & rng.gen_range(0..=frame.full_bits());
            parts.push((set(&frame, focal.bits() | extra), w * &share));
        }
    }
    BeliefStructure::new(&frame, parts).unwrap()
}

pub fn masses(m: &BeliefStructure) -> BTreeMap<u32, BigRational> {
    m.focal_elements().map(|(s, w)| (s.bits(), w.ratio().clone())).collect()
}

/// Bel by direct subset summation (∅ excluded).
pub fn naive_bel(m: &BeliefStructure, a: u32) -> BigRational {
    masses(m)
        .into_iter()
        .filter(|&(b, _)| b != 0 && b & !a == 0)
        .fold(BigRational::zero(), |acc, (_, w)| acc + w)
}

/// Pl by direct intersection test.
pub fn naive_pl(m: &BeliefStructure, a: u32) -> BigRational {
    masses(m).into_iter().filter(|&(b, _)| b & a != 0).fold(BigRational::zero(), |acc, (_, w)| acc + w)
}

/// Interval containment over every subset, straight from the definitions.
pub fn naive_interval_contained(specific: &BeliefStructure, general: &BeliefStructure) -> bool {
    (0..=specific.frame().full_bits()).all(|a| {
        naive_bel(specific, a) >= naive_bel(general, a) && naive_pl(specific, a) <= naive_pl(general, a)
    })
}

/// Combination by enumerating every product cell and routing conflicting
/// cells by each rule's textbook description.
pub fn oracle_combine(m1: &BeliefStructure, m2: &BeliefStructure, rule: &CombinationRule) -> Option<BeliefStructure> {
    let frame = m1.frame().clone();
    let full = frame.full_bits();
    let (a, b) = (masses(m1), masses(m2));
    let mut acc: BTreeMap<u32, BigRational> = BTreeMap::new();
    if let CombinationRule::Discount(c) = rule {
        let c = c.ratio().clone();
        for (s, w) in &a {
            *acc.entry(*s).or_insert_with(BigRational::zero) += &c * w;
        }
        for (s, w) in &b {
            *acc.entry(*s).or_insert_with(BigRational::zero) += (BigRational::one() - &c) * w;
        }
    } else {
        for (x, wx) in &a {
            for (y, wy) in &b {
                let cell = wx * wy;
                let meet = x & y;
                let target = if meet != 0 {
                    Some(meet)
                } else {
                    match rule {
                        CombinationRule::Dempster => None,
                        CombinationRule::YagerToX => Some(full),
                        CombinationRule::DuboisPradeUnion => Some(x | y),
                        CombinationRule::Unnormalized => Some(0),
                        CombinationRule::PriorityFirst => Some(*x),
                        CombinationRule::PrioritySecond => Some(*y),
                        CombinationRule::Discount(_) => unreachable!(),
                    }
                };
                if let Some(t) = target {
                    *acc.entry(t).or_insert_with(BigRational::zero) += cell;
                }
            }
        }
        if *rule == CombinationRule::Dempster {
            let total = acc.values().fold(BigRational::zero(), |s, w| s + w);
            if total.is_zero() {
                return None;
            }
            for w in acc.values_mut() {
                *w = &*w / &total;
            }
        }
    }
    let parts: Vec<(FocalSet, Mass)> = acc
        .into_iter()
        .filter(|(_, w)| !w.is_zero())
        .map(|(s, w)| (set(&frame, s), Mass::from_ratio(w).unwrap()))
        .collect();
    Some(BeliefStructure::new_subnormal(&frame, parts).unwrap())
}

pub fn all_rules(rng: &mut ChaCha8Rng) -> Vec<CombinationRule> {
    let mut rules = CombinationRule::cell_routing().to_vec();
    rules.push(CombinationRule::Discount(random_strength(rng, 9)));
    rules
}

pub mod golden;

/// Every `tests/data/*.kb`: `valid_*` files must survive parse → text →
/// parse unchanged, `err_<kind>[_*]` files must fail with that kind.
/// Returns the error classes seen, or a description of the first failure.
pub fn kb_corpus() -> Result<std::collections::BTreeSet<String>, String> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let mut paths: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    paths.sort();
    let mut kinds = std::collections::BTreeSet::new();
    let mut valid = 0;
    for path in paths.iter().filter(|p| p.extension().is_some_and(|e| e == "kb")) {
        let stem = path.file_stem().unwrap().to_string_lossy().to_string();
        let text = std::fs::read_to_string(path).unwrap();
        let parsed = evidential::parse_kb(&text);
        if let Some(rest) = stem.strip_prefix("err_") {
            let want = rest.split('_').next().unwrap();
            match parsed {
                Err(e) if e.kind.name() == want && e.line > 0 => {
                    kinds.insert(want.to_string());
                }
                other => return Err(format!("{stem}: expected {want}, got {other:?}")),
            }
        } else {
            let kb = parsed.map_err(|e| format!("{stem}: {e}"))?;
            let text = kb.to_text();
            let again = evidential::parse_kb(&text).map_err(|e| format!("{stem} reparse: {e}"))?;
            if again != kb || again.to_text() != text {
                return Err(format!("{stem}: round trip changed the knowledge base"));
            }
            valid += 1;
        }
    }
    if valid == 0 || paths.len() < 10 {
        return Err(format!("corpus too small: {} files", paths.len()));
    }
    Ok(kinds)
}

pub const KB_ERROR_CLASSES: [&str; 6] =
    ["missing-frame", "no-statements", "parse-error", "strength-out-of-range", "unknown-atom", "variable-mismatch"];
