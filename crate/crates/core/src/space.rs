//! Finite spaces, bitmask subsets and flattened product spaces.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest space addressable by a [`Subset`] bitmask.
pub const MAX_SPACE_SIZE: usize = 64;

/// Largest space on which general (table-backed) capacities are materialized.
pub const MAX_GENERAL_SIZE: usize = 20;

/// Separator between coordinates in product-space labels (`"x|y"`).
pub const TUPLE_SEPARATOR: char = '|';

/// An ordered set of distinct, named elements.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteSpace {
    labels: Arc<[String]>,
}

impl FiniteSpace {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidSpace("a space needs at least one element".into()));
        }
        if labels.len() > MAX_SPACE_SIZE {
            return Err(Error::SpaceTooLarge {
                size: labels.len(),
                limit: MAX_SPACE_SIZE,
            });
        }
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() || label.contains(',') || label.trim() != label {
                return Err(Error::InvalidSpace(format!(
                    "label {label:?} must be non-empty, without commas or surrounding spaces"
                )));
            }
            if labels[..i].contains(label) {
                return Err(Error::InvalidSpace(format!("duplicate label {label:?}")));
            }
        }
        Ok(FiniteSpace {
            labels: labels.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    /// Number of subsets, `2^len`.
    pub fn subset_count(&self) -> usize {
        1usize << self.len()
    }

    pub fn check_subset(&self, subset: Subset) -> Result<()> {
        if subset.fits(self.len()) {
            Ok(())
        } else {
            Err(Error::SubsetOutOfRange {
                mask: subset.bits(),
                size: self.len(),
            })
        }
    }

    /// Parses a comma-separated list of labels (`""` is the empty set).
    pub fn parse_subset(&self, text: &str) -> Result<Subset> {
        let mut subset = Subset::EMPTY;
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let index = self
                .index_of(part)
                .ok_or_else(|| Error::InvalidSpace(format!("unknown element {part:?}")))?;
            subset = subset.with(index);
        }
        Ok(subset)
    }

    /// The inverse of [`FiniteSpace::parse_subset`].
    pub fn format_subset(&self, subset: Subset) -> String {
        subset
            .iter()
            .map(|i| self.label(i))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub(crate) fn require_same(&self, other: &FiniteSpace, what: &str) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpaceMismatch(format!(
                "{what}: [{}] vs [{}]",
                self.labels.join(", "),
                other.labels.join(", ")
            )))
        }
    }

    pub(crate) fn require_general_size(&self) -> Result<()> {
        if self.len() > MAX_GENERAL_SIZE {
            Err(Error::SpaceTooLarge {
                size: self.len(),
                limit: MAX_GENERAL_SIZE,
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.labels.iter()).finish()
    }
}

/// A subset of a finite space, encoded as a bitmask over element indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn full(size: usize) -> Self {
        if size >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << size) - 1)
        }
    }

    pub fn singleton(index: usize) -> Self {
        Subset(1u64 << index)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices.into_iter().fold(Subset::EMPTY, Subset::with)
    }

    pub fn with(self, index: usize) -> Self {
        Subset(self.0 | (1u64 << index))
    }

    pub fn without(self, index: usize) -> Self {
        Subset(self.0 & !(1u64 << index))
    }

    pub fn contains(self, index: usize) -> bool {
        index < 64 && self.0 & (1u64 << index) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    /// Complement within a space of `size` elements.
    pub fn complement(self, size: usize) -> Subset {
        Subset(!self.0 & Subset::full(size).0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn fits(self, size: usize) -> bool {
        self.is_subset_of(Subset::full(size))
    }

    /// Element indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All subsets of a space of `size` elements, by increasing mask.
    pub fn all(size: usize) -> impl Iterator<Item = Subset> {
        debug_assert!(size < 64);
        (0..1u64 << size).map(Subset)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// An ordered product of finite spaces together with its flattening.
///
/// Tuples are flattened in mixed radix with the first factor most
/// significant, so `X1 × X2` lists `(x1, y1), (x1, y2), ..., (x2, y1), ...`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProductSpace {
    factors: Vec<FiniteSpace>,
    flat: FiniteSpace,
}

impl ProductSpace {
    pub fn new(factors: Vec<FiniteSpace>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidSpace("a product needs at least one factor".into()));
        }
        let size = factors
            .iter()
            .try_fold(1usize, |acc, f| acc.checked_mul(f.len()))
            .unwrap_or(usize::MAX);
        if size > MAX_SPACE_SIZE {
            return Err(Error::SpaceTooLarge {
                size,
                limit: MAX_SPACE_SIZE,
            });
        }
        let flat = if factors.len() == 1 {
            factors[0].clone()
        } else {
            let mut labels = Vec::with_capacity(size);
            for index in 0..size {
                let coords = decode(&factors, index);
                let parts: Vec<&str> = coords
                    .iter()
                    .zip(&factors)
                    .map(|(&c, f)| f.label(c))
                    .collect();
                labels.push(parts.join(&TUPLE_SEPARATOR.to_string()));
            }
            FiniteSpace::new(labels)?
        };
        Ok(ProductSpace { factors, flat })
    }

    pub fn factors(&self) -> &[FiniteSpace] {
        &self.factors
    }

    pub fn flat(&self) -> &FiniteSpace {
        &self.flat
    }

    pub fn len(&self) -> usize {
        self.flat.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        debug_assert_eq!(coords.len(), self.factors.len());
        coords
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&c, f)| acc * f.len() + c)
    }

    pub fn coords(&self, index: usize) -> Vec<usize> {
        decode(&self.factors, index)
    }

    /// The flat subset `∏ parts[k]`.
    pub fn rectangle(&self, parts: &[Subset]) -> Subset {
        debug_assert_eq!(parts.len(), self.factors.len());
        (0..self.len())
            .filter(|&idx| {
                self.coords(idx)
                    .iter()
                    .zip(parts)
                    .all(|(&c, part)| part.contains(c))
            })
            .fold(Subset::EMPTY, Subset::with)
    }
}

fn decode(factors: &[FiniteSpace], mut index: usize) -> Vec<usize> {
    let mut coords = vec![0; factors.len()];
    for (slot, f) in coords.iter_mut().zip(factors).rev() {
        *slot = index % f.len();
        index /= f.len();
    }
    coords
}
