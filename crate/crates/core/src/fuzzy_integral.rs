//! The t-normed integral `max_t μ({f ≥ t}) ∗ t` and its Sugeno special case.

use crate::capacity::{PossibilityCapacity, SetFunction};
use crate::error::{Error, Result};
use crate::scalar::{max_value, Scalar};
use crate::space::{FiniteSpace, Subset};
use crate::tnorm::TNorm;

/// A `[0, 1]`-valued function on a finite space.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyFunction<V> {
    space: FiniteSpace,
    values: Vec<V>,
}

impl<V: Scalar> FuzzyFunction<V> {
    pub fn new(space: FiniteSpace, values: Vec<V>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::TableSize {
                got: values.len(),
                expected: space.len(),
            });
        }
        if let Some(v) = values.iter().find(|v| !v.is_unit()) {
            return Err(Error::OutOfUnitInterval { value: v.to_text() });
        }
        Ok(FuzzyFunction { space, values })
    }

    pub fn constant(space: FiniteSpace, c: V) -> Result<Self> {
        let values = vec![c; space.len()];
        FuzzyFunction::new(space, values)
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn values(&self) -> &[V] {
        &self.values
    }

    /// `{x : f(x) ≥ t}`.
    pub fn level_set(&self, t: &V) -> Subset {
        Subset::from_indices((0..self.values.len()).filter(|&x| !self.values[x].definitely_lt(t)))
    }

    /// The distinct values of `f` together with 0, in increasing order.
    pub fn levels(&self) -> Vec<V> {
        let mut levels: Vec<V> = self.values.clone();
        levels.push(V::zero());
        sorted_distinct(levels)
    }

    /// Whether `self ≤ other` pointwise.
    pub fn le(&self, other: &FuzzyFunction<V>) -> bool {
        self.space == other.space
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| !b.definitely_lt(a))
    }
}

pub(crate) fn sorted_distinct<V: Scalar>(mut values: Vec<V>) -> Vec<V> {
    values.sort_by(|a, b| a.total_cmp(b));
    values.dedup_by(|a, b| a.approx_eq(b));
    values
}

/// `max { μ(f_t) ∗ t : t ∈ [0, 1] }`, evaluated exactly.
///
/// `t ↦ μ(f_t)` is a step function that only changes at values of `f` and is
/// constant on each `(v_k, v_{k+1}]`. Since `c ∗ t` is monotone in `t`, the
/// maximum on each step sits at its right endpoint, so the candidate levels
/// are the values of `f` plus 0.
pub fn tnormed_integral<V: Scalar, M: SetFunction<V> + ?Sized>(
    f: &FuzzyFunction<V>,
    mu: &M,
    star: TNorm,
) -> Result<V> {
    f.space.require_same(mu.space(), "integrand and capacity")?;
    Ok(integral_unchecked(f, mu, star))
}

pub(crate) fn integral_unchecked<V: Scalar, M: SetFunction<V> + ?Sized>(
    f: &FuzzyFunction<V>,
    mu: &M,
    star: TNorm,
) -> V {
    let best = f
        .levels()
        .into_iter()
        .map(|t| star.eval(&mu.measure(f.level_set(&t)), &t));
    max_value(best).unwrap_or_else(V::zero)
}

/// The Sugeno integral, the t-normed integral for the minimum.
pub fn sugeno_integral<V: Scalar, M: SetFunction<V> + ?Sized>(
    f: &FuzzyFunction<V>,
    mu: &M,
) -> Result<V> {
    tnormed_integral(f, mu, TNorm::Minimum)
}

/// Closed form against a possibility capacity: `max_x density(x) ∗ f(x)`.
pub fn possibility_integral<V: Scalar>(
    f: &FuzzyFunction<V>,
    mu: &PossibilityCapacity<V>,
    star: TNorm,
) -> Result<V> {
    f.space.require_same(mu.space(), "integrand and capacity")?;
    let best = f
        .values
        .iter()
        .zip(mu.density())
        .map(|(v, d)| star.eval(d, v));
    Ok(max_value(best).unwrap_or_else(V::zero))
}
