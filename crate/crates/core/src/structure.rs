//! Belief structures (mass functions) and the Bel/Pl query machinery.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::frame::{FocalSet, Frame};
use crate::mass::{format_ratio, Mass};
use crate::zeta::{self, Scalar};

/// Largest frame for operations that materialize all `2^n` subsets.
pub const MAX_TABLE_ATOMS: usize = 20;

/// A mass assignment over a frame: distinct focal sets with strictly positive
/// masses summing to exactly one.
///
/// The empty set carries mass only in *subnormal* structures, which arise
/// from unnormalized combination. Bel and Pl never count that mass.
#[derive(Clone, PartialEq, Eq)]
pub struct BeliefStructure {
    frame: Frame,
    focal: BTreeMap<u32, Mass>,
}

impl BeliefStructure {
    /// Builds a normal structure. Repeated sets have their masses added and
    /// zero masses are dropped.
    pub fn new<I>(frame: &Frame, assignments: I) -> Result<Self>
    where
        I: IntoIterator<Item = (FocalSet, Mass)>,
    {
        Self::build(frame, assignments, false)
    }

    /// Like [`BeliefStructure::new`] but the empty set may carry mass.
    pub fn new_subnormal<I>(frame: &Frame, assignments: I) -> Result<Self>
    where
        I: IntoIterator<Item = (FocalSet, Mass)>,
    {
        Self::build(frame, assignments, true)
    }

    fn build<I>(frame: &Frame, assignments: I, allow_empty: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (FocalSet, Mass)>,
    {
        let mut acc: BTreeMap<u32, BigRational> = BTreeMap::new();
        for (set, mass) in assignments {
            frame.ensure_same(set.frame())?;
            *acc.entry(set.bits()).or_insert_with(BigRational::zero) += mass.into_ratio();
        }
        Self::from_accumulated(frame, acc, allow_empty)
    }

    pub(crate) fn from_accumulated(
        frame: &Frame,
        acc: BTreeMap<u32, BigRational>,
        allow_empty: bool,
    ) -> Result<Self> {
        let mut total = BigRational::zero();
        let mut focal = BTreeMap::new();
        for (bits, value) in acc {
            if value.is_zero() {
                continue;
            }
            if value < BigRational::zero() {
                return Err(Error::NegativeMass(format_ratio(&value)));
            }
            if bits == 0 && !allow_empty {
                return Err(Error::EmptyFocalInNormal);
            }
            total += &value;
            focal.insert(bits, value);
        }
        if !total.is_one() {
            return Err(Error::MassSumNotOne(format_ratio(&total)));
        }
        let focal = focal.into_iter().map(|(b, v)| (b, Mass::from_ratio_unchecked(v))).collect();
        Ok(BeliefStructure { frame: frame.clone(), focal })
    }

    /// Total ignorance: all mass on the frame.
    pub fn vacuous(frame: &Frame) -> Self {
        BeliefStructure { frame: frame.clone(), focal: BTreeMap::from([(frame.full_bits(), Mass::one())]) }
    }

    /// `{set: strength, X: 1 - strength}`, the simple support form.
    pub fn simple_support(set: &FocalSet, strength: Mass) -> Result<Self> {
        let frame = set.frame().clone();
        let rest = strength.complement();
        Self::new(&frame, [(set.clone(), strength), (frame.full(), rest)])
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn is_subnormal(&self) -> bool {
        self.focal.contains_key(&0)
    }

    pub fn is_normal(&self) -> bool {
        !self.is_subnormal()
    }

    /// Mass on the empty set; zero for normal structures.
    pub fn empty_mass(&self) -> Mass {
        self.focal.get(&0).cloned().unwrap_or_else(Mass::zero)
    }

    /// Number of focal elements.
    pub fn len(&self) -> usize {
        self.focal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.focal.is_empty()
    }

    /// Focal elements in bitmask order.
    pub fn focal_elements(&self) -> impl Iterator<Item = (FocalSet, &Mass)> + '_ {
        self.focal.iter().map(|(&bits, m)| (self.frame.set_unchecked(bits), m))
    }

    pub(crate) fn raw(&self) -> &BTreeMap<u32, Mass> {
        &self.focal
    }

    /// `m(set)`, zero when `set` is not focal.
    pub fn mass(&self, set: &FocalSet) -> Result<Mass> {
        self.frame.ensure_same(set.frame())?;
        Ok(self.focal.get(&set.bits()).cloned().unwrap_or_else(Mass::zero))
    }

    pub(crate) fn ensure_normal(&self) -> Result<()> {
        if self.is_subnormal() {
            Err(Error::SubnormalInput)
        } else {
            Ok(())
        }
    }

    /// Belief: total mass of non-empty focal elements contained in `set`.
    pub fn bel(&self, set: &FocalSet) -> Result<Mass> {
        self.frame.ensure_same(set.frame())?;
        let a = set.bits();
        Ok(self.sum_where(|b| b != 0 && b & !a == 0))
    }

    /// Plausibility: total mass of focal elements meeting `set`.
    pub fn pl(&self, set: &FocalSet) -> Result<Mass> {
        self.frame.ensure_same(set.frame())?;
        let a = set.bits();
        Ok(self.sum_where(|b| b & a != 0))
    }

    fn sum_where(&self, keep: impl Fn(u32) -> bool) -> Mass {
        let sum = self
            .focal
            .iter()
            .filter(|(&b, _)| keep(b))
            .fold(BigRational::zero(), |acc, (_, m)| acc + m.ratio());
        Mass::from_ratio_unchecked(sum)
    }

    pub fn prob_interval(&self, set: &FocalSet) -> Result<ProbabilityInterval> {
        Ok(ProbabilityInterval { lower: self.bel(set)?, upper: self.pl(set)? })
    }

    /// `Pl(set) - Bel(set)`, the width of the probability interval.
    pub fn uncertainty_range(&self, set: &FocalSet) -> Result<Mass> {
        self.ensure_normal()?;
        Ok(self.prob_interval(set)?.width())
    }

    /// Every focal element is a singleton.
    pub fn is_bayesian(&self) -> bool {
        self.focal.keys().all(|b| b.count_ones() == 1)
    }

    /// Bel of every subset, indexed by bitmask, via the zeta transform.
    pub fn bel_table(&self) -> Result<BeliefTable> {
        let n = self.frame.len();
        if n > MAX_TABLE_ATOMS {
            return Err(Error::FrameTooLarge { atoms: n, max: MAX_TABLE_ATOMS });
        }
        let denom = zeta::common_denominator(self.focal.values());
        let values = if zeta::fits_small(&denom) {
            self.scaled_bel::<u128>(&denom)
        } else {
            self.scaled_bel::<BigInt>(&denom)
        };
        Ok(BeliefTable { frame: self.frame.clone(), values })
    }

    fn scaled_bel<T: Scalar>(&self, denom: &BigInt) -> Vec<Mass> {
        let n = self.frame.len();
        let mut table = self.scaled_table::<T>(denom);
        zeta::zeta(&mut table, n);
        table
            .iter()
            .map(|v| Mass::from_ratio_unchecked(BigRational::new(v.to_big(), denom.clone())))
            .collect()
    }

    /// Non-empty focal masses scaled by `denom`, as a dense `2^n` table.
    pub(crate) fn scaled_table<T: Scalar>(&self, denom: &BigInt) -> Vec<T> {
        let nonempty = self.focal.iter().filter(|(&b, _)| b != 0).map(|(&b, m)| (b, m));
        zeta::scaled_table(self.frame.len(), nonempty, denom)
    }
}

impl fmt::Debug for BeliefStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("BeliefStructure{")?;
        for (i, (set, m)) in self.focal_elements().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{set}: {m}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Display for BeliefStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The closed interval `[Bel(A), Pl(A)]` known to contain `Prob(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbabilityInterval {
    pub lower: Mass,
    pub upper: Mass,
}

impl ProbabilityInterval {
    pub fn width(&self) -> Mass {
        Mass::from_ratio_unchecked(self.upper.ratio() - self.lower.ratio())
    }

    /// Closed-interval containment: `self` lies inside `other`.
    pub fn is_within(&self, other: &ProbabilityInterval) -> bool {
        other.lower <= self.lower && self.upper <= other.upper
    }
}

impl fmt::Display for ProbabilityInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lower, self.upper)
    }
}

/// Bel over all `2^n` subsets of a frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeliefTable {
    frame: Frame,
    values: Vec<Mass>,
}

impl BeliefTable {
    pub fn get(&self, set: &FocalSet) -> Result<&Mass> {
        self.frame.ensure_same(set.frame())?;
        Ok(&self.values[set.bits() as usize])
    }

    pub fn as_slice(&self) -> &[Mass] {
        &self.values
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }
}
