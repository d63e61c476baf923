//! Capacities (fuzzy measures) on finite spaces.
//!
//! A [`Capacity`] stores its value on every subset. Possibility capacities
//! are stored by their density and necessity capacities as the dual of a
//! stored possibility capacity; both evaluate subsets on demand and have no
//! size cap beyond the bitmask width.

use crate::error::{Error, Result};
use crate::scalar::{max_value, Scalar};
use crate::space::{FiniteSpace, Subset};

/// Anything that assigns a value to every subset of a finite space.
pub trait SetFunction<V: Scalar>: Send + Sync {
    fn space(&self) -> &FiniteSpace;

    /// Value on `subset`; the subset must fit the space.
    fn measure(&self, subset: Subset) -> V;

    /// Value on `subset`, checked against the space.
    fn value_of(&self, subset: Subset) -> Result<V> {
        self.space().check_subset(subset)?;
        Ok(self.measure(subset))
    }
}

/// A monotone, normalized set function given by its full subset table.
#[derive(Debug, Clone, PartialEq)]
pub struct Capacity<V> {
    space: FiniteSpace,
    values: Vec<V>,
}

impl<V: Scalar> Capacity<V> {
    /// Validates a table indexed by subset bitmask.
    pub fn new(space: FiniteSpace, values: Vec<V>) -> Result<Self> {
        space.require_general_size()?;
        let expected = space.subset_count();
        if values.len() != expected {
            return Err(Error::TableSize {
                got: values.len(),
                expected,
            });
        }
        if let Some(v) = values.iter().find(|v| !v.is_unit()) {
            return Err(Error::OutOfUnitInterval { value: v.to_text() });
        }
        if !values[0].is_negligible() {
            return Err(Error::Normalization(format!(
                "value(∅) = {}, expected 0",
                values[0].to_text()
            )));
        }
        if !values[expected - 1].approx_eq(&V::one()) {
            return Err(Error::Normalization(format!(
                "value(X) = {}, expected 1",
                values[expected - 1].to_text()
            )));
        }
        let n = space.len();
        for mask in 0..expected {
            for x in 0..n {
                let bit = 1usize << x;
                if mask & bit != 0 {
                    continue;
                }
                let (small, large) = (&values[mask], &values[mask | bit]);
                if large.definitely_lt(small) {
                    return Err(Error::Monotonicity {
                        smaller: format!("{{{}}}", space.format_subset(Subset::from_bits(mask as u64))),
                        larger: format!(
                            "{{{}}}",
                            space.format_subset(Subset::from_bits((mask | bit) as u64))
                        ),
                        smaller_value: small.to_text(),
                        larger_value: large.to_text(),
                    });
                }
            }
        }
        Ok(Capacity { space, values })
    }

    pub fn from_fn(space: FiniteSpace, f: impl Fn(Subset) -> V) -> Result<Self> {
        space.require_general_size()?;
        let values = Subset::all(space.len()).map(f).collect();
        Capacity::new(space, values)
    }

    /// Materializes any set function on a space of at most 20 elements.
    pub fn from_set_function(nu: &impl SetFunction<V>) -> Result<Self> {
        let space = nu.space().clone();
        space.require_general_size()?;
        let values = Subset::all(space.len()).map(|s| nu.measure(s)).collect();
        Ok(Capacity { space, values })
    }

    /// Builds from a validated table without re-checking the axioms.
    pub(crate) fn from_table_unchecked(space: FiniteSpace, values: Vec<V>) -> Self {
        debug_assert_eq!(values.len(), space.subset_count());
        Capacity { space, values }
    }

    /// The greatest element: 1 on every non-empty subset.
    pub fn greatest(space: FiniteSpace) -> Result<Self> {
        Capacity::from_fn(space, |s| if s.is_empty() { V::zero() } else { V::one() })
    }

    /// The least element: 0 on every proper subset.
    pub fn least(space: FiniteSpace) -> Result<Self> {
        let full = space.full();
        Capacity::from_fn(space, move |s| if s == full { V::one() } else { V::zero() })
    }

    pub fn values(&self) -> &[V] {
        &self.values
    }

    /// `F ↦ 1 − value(X ∖ F)`.
    pub fn dual(&self) -> Capacity<V> {
        let full = self.values.len() - 1;
        let values = (0..=full)
            .map(|mask| V::one().sub(&self.values[full ^ mask]))
            .collect();
        Capacity::from_table_unchecked(self.space.clone(), values)
    }

    /// Whether `value(A ∪ B) = max(value(A), value(B))` for all subsets.
    ///
    /// Checked through the equivalent condition that each subset's value is
    /// the maximum over its singletons.
    pub fn is_possibility(&self) -> bool {
        singleton_determined(&self.values, |v, w| v.max_of(w), |m| m)
    }

    /// Whether `value(A ∩ B) = min(value(A), value(B))` for all subsets.
    pub fn is_necessity(&self) -> bool {
        // In complement coordinates C = X ∖ F this is the max case with min.
        let full = self.values.len() - 1;
        singleton_determined(&self.values, |v, w| v.min_of(w), |c| full ^ c)
    }

    /// The density, when this capacity is a possibility capacity.
    pub fn to_possibility(&self) -> Option<PossibilityCapacity<V>> {
        if !self.is_possibility() {
            return None;
        }
        let density = (0..self.space.len())
            .map(|x| self.values[1 << x].clone())
            .collect();
        PossibilityCapacity::new(self.space.clone(), density).ok()
    }

    pub fn join(&self, other: &Capacity<V>) -> Result<Capacity<V>> {
        self.pointwise(other, |a, b| a.max_of(b))
    }

    pub fn meet(&self, other: &Capacity<V>) -> Result<Capacity<V>> {
        self.pointwise(other, |a, b| a.min_of(b))
    }

    fn pointwise(&self, other: &Capacity<V>, op: impl Fn(&V, &V) -> V) -> Result<Capacity<V>> {
        self.space.require_same(&other.space, "lattice operation")?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| op(a, b))
            .collect();
        Ok(Capacity::from_table_unchecked(self.space.clone(), values))
    }

    /// `self ≤ other` on every subset (within tolerance in float mode).
    pub fn le(&self, other: &Capacity<V>) -> Result<bool> {
        self.space.require_same(&other.space, "order comparison")?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .all(|(a, b)| !b.definitely_lt(a)))
    }

    pub fn approx_eq(&self, other: &Capacity<V>) -> bool {
        self.space == other.space
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| a.approx_eq(b))
    }
}

/// `table[order(F)]` must equal `combine` over the singletons of `F`, for
/// every `F` with at least two elements.
fn singleton_determined<V: Scalar>(
    table: &[V],
    combine: impl Fn(&V, &V) -> V,
    order: impl Fn(usize) -> usize,
) -> bool {
    (1..table.len())
        .filter(|m| m.count_ones() >= 2)
        .all(|mask| {
            let low = mask & mask.wrapping_neg();
            let expected = combine(&table[order(mask ^ low)], &table[order(low)]);
            table[order(mask)].approx_eq(&expected)
        })
}

impl<V: Scalar> SetFunction<V> for Capacity<V> {
    fn space(&self) -> &FiniteSpace {
        &self.space
    }

    fn measure(&self, subset: Subset) -> V {
        self.values[subset.bits() as usize].clone()
    }
}

/// Whether `meet(nu, mu) ≤ alpha ≤ join(nu, mu)` on every subset.
pub fn interval_contains<V: Scalar>(
    nu: &Capacity<V>,
    mu: &Capacity<V>,
    alpha: &Capacity<V>,
) -> Result<bool> {
    Ok(nu.meet(mu)?.le(alpha)? && alpha.le(&nu.join(mu)?)?)
}

/// A possibility capacity, stored by its density.
#[derive(Debug, Clone, PartialEq)]
pub struct PossibilityCapacity<V> {
    space: FiniteSpace,
    density: Vec<V>,
}

impl<V: Scalar> PossibilityCapacity<V> {
    pub fn new(space: FiniteSpace, density: Vec<V>) -> Result<Self> {
        if density.len() != space.len() {
            return Err(Error::TableSize {
                got: density.len(),
                expected: space.len(),
            });
        }
        if let Some(v) = density.iter().find(|v| !v.is_unit()) {
            return Err(Error::OutOfUnitInterval { value: v.to_text() });
        }
        let top = max_value(density.iter().cloned()).unwrap_or_else(V::zero);
        if !top.approx_eq(&V::one()) {
            return Err(Error::Normalization(format!(
                "density maximum is {}, expected 1",
                top.to_text()
            )));
        }
        Ok(PossibilityCapacity { space, density })
    }

    /// Density 1 on `support`, 0 elsewhere.
    pub fn indicator(space: FiniteSpace, support: Subset) -> Result<Self> {
        space.check_subset(support)?;
        let density = (0..space.len())
            .map(|x| if support.contains(x) { V::one() } else { V::zero() })
            .collect();
        PossibilityCapacity::new(space, density)
    }

    /// The greatest possibility capacity, density ≡ 1.
    pub fn top(space: FiniteSpace) -> Self {
        let density = vec![V::one(); space.len()];
        PossibilityCapacity { space, density }
    }

    pub fn density(&self) -> &[V] {
        &self.density
    }

    /// Elements of positive density.
    pub fn support(&self) -> Subset {
        Subset::from_indices((0..self.density.len()).filter(|&x| !self.density[x].is_negligible()))
    }

    pub fn dual(&self) -> NecessityCapacity<V> {
        NecessityCapacity {
            possibility: self.clone(),
        }
    }

    pub fn to_capacity(&self) -> Result<Capacity<V>> {
        Capacity::from_set_function(self)
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.space == other.space
            && self
                .density
                .iter()
                .zip(&other.density)
                .all(|(a, b)| a.approx_eq(b))
    }
}

impl<V: Scalar> SetFunction<V> for PossibilityCapacity<V> {
    fn space(&self) -> &FiniteSpace {
        &self.space
    }

    fn measure(&self, subset: Subset) -> V {
        max_value(subset.iter().map(|x| self.density[x].clone())).unwrap_or_else(V::zero)
    }
}

/// A necessity capacity: the dual of a stored possibility capacity.
#[derive(Debug, Clone, PartialEq)]
pub struct NecessityCapacity<V> {
    possibility: PossibilityCapacity<V>,
}

impl<V: Scalar> NecessityCapacity<V> {
    pub fn from_possibility(possibility: PossibilityCapacity<V>) -> Self {
        NecessityCapacity { possibility }
    }

    /// The possibility capacity this one is dual to.
    pub fn possibility(&self) -> &PossibilityCapacity<V> {
        &self.possibility
    }

    pub fn to_capacity(&self) -> Result<Capacity<V>> {
        Capacity::from_set_function(self)
    }
}

impl<V: Scalar> SetFunction<V> for NecessityCapacity<V> {
    fn space(&self) -> &FiniteSpace {
        &self.possibility.space
    }

    fn measure(&self, subset: Subset) -> V {
        let rest = subset.complement(self.possibility.space.len());
        V::one().sub(&self.possibility.measure(rest))
    }
}

/// Which representation a [`Measure`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureKind {
    General,
    Possibility,
    Necessity,
}

impl MeasureKind {
    pub fn name(self) -> &'static str {
        match self {
            MeasureKind::General => "general",
            MeasureKind::Possibility => "possibility",
            MeasureKind::Necessity => "necessity",
        }
    }
}

/// A capacity in any of the supported representations.
#[derive(Debug, Clone, PartialEq)]
pub enum Measure<V> {
    General(Capacity<V>),
    Possibility(PossibilityCapacity<V>),
    Necessity(NecessityCapacity<V>),
}

impl<V: Scalar> Measure<V> {
    pub fn kind(&self) -> MeasureKind {
        match self {
            Measure::General(_) => MeasureKind::General,
            Measure::Possibility(_) => MeasureKind::Possibility,
            Measure::Necessity(_) => MeasureKind::Necessity,
        }
    }

    pub fn as_possibility(&self) -> Option<&PossibilityCapacity<V>> {
        match self {
            Measure::Possibility(p) => Some(p),
            _ => None,
        }
    }

    /// The full subset table (at most 20 elements).
    pub fn materialize(&self) -> Result<Capacity<V>> {
        match self {
            Measure::General(c) => Ok(c.clone()),
            Measure::Possibility(p) => p.to_capacity(),
            Measure::Necessity(n) => n.to_capacity(),
        }
    }
}

impl<V: Scalar> SetFunction<V> for Measure<V> {
    fn space(&self) -> &FiniteSpace {
        match self {
            Measure::General(c) => c.space(),
            Measure::Possibility(p) => p.space(),
            Measure::Necessity(n) => n.space(),
        }
    }

    fn measure(&self, subset: Subset) -> V {
        match self {
            Measure::General(c) => c.measure(subset),
            Measure::Possibility(p) => p.measure(subset),
            Measure::Necessity(n) => n.measure(subset),
        }
    }
}

impl<V> From<Capacity<V>> for Measure<V> {
    fn from(c: Capacity<V>) -> Self {
        Measure::General(c)
    }
}

impl<V> From<PossibilityCapacity<V>> for Measure<V> {
    fn from(p: PossibilityCapacity<V>) -> Self {
        Measure::Possibility(p)
    }
}

impl<V> From<NecessityCapacity<V>> for Measure<V> {
    fn from(n: NecessityCapacity<V>) -> Self {
        Measure::Necessity(n)
    }
}
