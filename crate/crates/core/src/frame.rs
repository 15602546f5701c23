//! Frames of discernment and their subsets.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest frame accepted anywhere in the crate.
pub const MAX_ATOMS: usize = 24;

/// An ordered, finite universe of distinct named atoms.
///
/// Atom `i` corresponds to bit `i` of every [`FocalSet`] on this frame; this
/// order is the canonical order for display and serialization.
#[derive(Clone)]
pub struct Frame {
    atoms: Arc<[String]>,
}

impl Frame {
    pub fn new<I, S>(atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        if atoms.is_empty() {
            return Err(Error::InvalidFrame("a frame needs at least one atom".into()));
        }
        if atoms.len() > MAX_ATOMS {
            return Err(Error::FrameTooLarge { atoms: atoms.len(), max: MAX_ATOMS });
        }
        for (i, atom) in atoms.iter().enumerate() {
            if atom.is_empty() {
                return Err(Error::InvalidFrame("atom names must be non-empty".into()));
            }
            if atoms[..i].contains(atom) {
                return Err(Error::InvalidFrame(format!("duplicate atom `{atom}`")));
            }
        }
        Ok(Frame { atoms: atoms.into() })
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn index_of(&self, atom: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == atom)
    }

    /// Bitmask of the whole frame `X`.
    pub fn full_bits(&self) -> u32 {
        (1u32 << self.len()) - 1
    }

    pub fn full(&self) -> FocalSet {
        FocalSet { frame: self.clone(), bits: self.full_bits() }
    }

    pub fn empty_set(&self) -> FocalSet {
        FocalSet { frame: self.clone(), bits: 0 }
    }

    /// The subset named by `atoms`; repeated names are harmless.
    pub fn set<I, S>(&self, atoms: I) -> Result<FocalSet>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut bits = 0u32;
        for atom in atoms {
            let atom = atom.as_ref();
            let index = self.index_of(atom).ok_or_else(|| Error::UnknownAtom(atom.to_string()))?;
            bits |= 1 << index;
        }
        Ok(FocalSet { frame: self.clone(), bits })
    }

    pub fn from_bits(&self, bits: u32) -> Result<FocalSet> {
        if bits & !self.full_bits() != 0 {
            return Err(Error::InvalidFrame(format!("bitmask {bits:#x} has bits outside the frame")));
        }
        Ok(FocalSet { frame: self.clone(), bits })
    }

    pub(crate) fn set_unchecked(&self, bits: u32) -> FocalSet {
        debug_assert_eq!(bits & !self.full_bits(), 0);
        FocalSet { frame: self.clone(), bits }
    }

    pub(crate) fn ensure_same(&self, other: &Frame) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }

    /// Every subset of the frame in bitmask order.
    pub fn subsets(&self) -> impl Iterator<Item = FocalSet> + '_ {
        (0..=self.full_bits()).map(move |bits| self.set_unchecked(bits))
    }
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.atoms, &other.atoms) || self.atoms == other.atoms
    }
}

impl Eq for Frame {}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Frame{{{}}}", self.atoms.join(","))
    }
}

/// A subset of a specific [`Frame`], stored as a membership bitmask.
#[derive(Clone, PartialEq, Eq)]
pub struct FocalSet {
    frame: Frame,
    bits: u32,
}

impl FocalSet {
    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == self.frame.full_bits()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn contains(&self, atom: &str) -> bool {
        self.frame.index_of(atom).is_some_and(|i| self.bits & (1 << i) != 0)
    }

    /// Member atom names in frame order.
    pub fn atoms(&self) -> impl Iterator<Item = &str> + '_ {
        self.frame
            .atoms()
            .iter()
            .enumerate()
            .filter(move |(i, _)| self.bits & (1 << i) != 0)
            .map(|(_, a)| a.as_str())
    }

    pub fn is_subset(&self, other: &FocalSet) -> Result<bool> {
        self.frame.ensure_same(&other.frame)?;
        Ok(self.bits & !other.bits == 0)
    }

    pub fn intersection(&self, other: &FocalSet) -> Result<FocalSet> {
        self.frame.ensure_same(&other.frame)?;
        Ok(self.frame.set_unchecked(self.bits & other.bits))
    }

    pub fn union(&self, other: &FocalSet) -> Result<FocalSet> {
        self.frame.ensure_same(&other.frame)?;
        Ok(self.frame.set_unchecked(self.bits | other.bits))
    }

    pub fn complement(&self) -> FocalSet {
        self.frame.set_unchecked(!self.bits & self.frame.full_bits())
    }

    pub fn is_disjoint(&self, other: &FocalSet) -> Result<bool> {
        Ok(self.intersection(other)?.is_empty())
    }
}

impl PartialOrd for FocalSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        (self.frame == other.frame).then(|| self.bits.cmp(&other.bits))
    }
}

impl fmt::Display for FocalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.atoms().collect::<Vec<_>>().join(","))
    }
}

impl fmt::Debug for FocalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
