//! Continuous triangular norms.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A continuous t-norm. Used both for integration (the payoff t-norm) and
/// for combining beliefs (the tensor t-norm).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TNorm {
    Minimum,
    Product,
    Lukasiewicz,
}

impl TNorm {
    pub const ALL: [TNorm; 3] = [TNorm::Minimum, TNorm::Product, TNorm::Lukasiewicz];

    /// Parses the short names used in files and on the command line.
    /// Non-continuous t-norms are rejected.
    pub fn from_name(name: &str) -> Result<Self> {
        match name.trim().to_ascii_lowercase().as_str() {
            "min" | "minimum" => Ok(TNorm::Minimum),
            "prod" | "product" => Ok(TNorm::Product),
            "luk" | "lukasiewicz" => Ok(TNorm::Lukasiewicz),
            "drastic" | "nilpotent-min" | "nilmin" => Err(Error::DiscontinuousTNorm(name.to_string())),
            _ => Err(Error::UnknownTNorm(name.to_string())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TNorm::Minimum => "min",
            TNorm::Product => "prod",
            TNorm::Lukasiewicz => "luk",
        }
    }

    /// `a ∗ b` with both arguments checked to lie in `[0, 1]`.
    pub fn apply<V: Scalar>(self, a: &V, b: &V) -> Result<V> {
        for v in [a, b] {
            if !v.is_unit() {
                return Err(Error::OutOfUnitInterval { value: v.to_text() });
            }
        }
        Ok(self.eval(a, b))
    }

    /// `a ∗ b` for arguments already known to lie in `[0, 1]`.
    #[inline]
    pub fn eval<V: Scalar>(self, a: &V, b: &V) -> V {
        match self {
            TNorm::Minimum => a.min_of(b),
            TNorm::Product => a.mul(b),
            TNorm::Lukasiewicz => {
                let s = a.add(b).sub(&V::one());
                s.max_of(&V::zero())
            }
        }
    }

    /// Left fold of `eval` over the values; the empty fold is the identity 1.
    pub fn fold<'a, V: Scalar, I>(self, values: I) -> V
    where
        I: IntoIterator<Item = &'a V>,
    {
        values
            .into_iter()
            .fold(V::one(), |acc, v| self.eval(&acc, v))
    }
}

impl fmt::Display for TNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TNorm::from_name(s)
    }
}

/// Largest violation of each t-norm law found on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct LawReport<V> {
    pub grid_points: usize,
    pub commutativity: V,
    pub associativity: V,
    pub monotonicity: V,
    pub identity: V,
}

impl<V: Scalar> LawReport<V> {
    pub fn holds(&self) -> bool {
        [
            &self.commutativity,
            &self.associativity,
            &self.monotonicity,
            &self.identity,
        ]
        .iter()
        .all(|v| v.is_negligible())
    }
}

fn gap<V: Scalar>(a: &V, b: &V) -> V {
    if a > b {
        a.sub(b)
    } else {
        b.sub(a)
    }
}

/// Evaluates the four t-norm laws on the grid `{0, 1/(n-1), ..., 1}`.
///
/// Monotonicity is checked between grid neighbours in each argument, which
/// is equivalent to joint monotonicity on the grid.
pub fn check_tnorm_laws<V: Scalar>(t: TNorm, grid_resolution: usize) -> LawReport<V> {
    let n = grid_resolution.max(2);
    let steps = (n - 1) as i64;
    let grid: Vec<V> = (0..=steps).map(|k| V::from_ratio(k, steps)).collect();
    let table: Vec<Vec<V>> = grid
        .iter()
        .map(|a| grid.iter().map(|b| t.eval(a, b)).collect())
        .collect();

    let mut report = LawReport {
        grid_points: n,
        commutativity: V::zero(),
        associativity: V::zero(),
        monotonicity: V::zero(),
        identity: V::zero(),
    };
    let bump = |slot: &mut V, v: V| {
        if v > *slot {
            *slot = v;
        }
    };

    for (i, a) in grid.iter().enumerate() {
        bump(&mut report.identity, gap(&t.eval(a, &V::one()), a));
        bump(&mut report.identity, gap(&t.eval(&V::one(), a), a));
        for j in 0..n {
            bump(&mut report.commutativity, gap(&table[i][j], &table[j][i]));
            if i + 1 < n {
                let rise = table[i][j].sub(&table[i + 1][j]);
                bump(&mut report.monotonicity, rise.max_of(&V::zero()));
            }
            if j + 1 < n {
                let rise = table[i][j].sub(&table[i][j + 1]);
                bump(&mut report.monotonicity, rise.max_of(&V::zero()));
            }
            let ab = &table[i][j];
            for (k, c) in grid.iter().enumerate() {
                let left = t.eval(ab, c);
                let right = t.eval(a, &table[j][k]);
                bump(&mut report.associativity, gap(&left, &right));
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn quoted_values() {
        assert_eq!(TNorm::Minimum.apply(&q(1, 1), &q(1, 2)).unwrap(), q(1, 2));
        assert_eq!(TNorm::Product.apply(&q(1, 2), &q(1, 2)).unwrap(), q(1, 4));
        for k in 0..=10 {
            let a = q(k, 10);
            assert_eq!(TNorm::Lukasiewicz.apply(&a, &q(1, 1)).unwrap(), a);
        }
    }

    #[test]
    fn lukasiewicz_clamps_at_zero() {
        assert_eq!(TNorm::Lukasiewicz.eval(&q(1, 2), &q(1, 2)), q(0, 1));
        assert_eq!(TNorm::Lukasiewicz.eval(&q(3, 4), &q(1, 2)), q(1, 4));
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            TNorm::Product.apply(&q(3, 2), &q(1, 2)),
            Err(Error::OutOfUnitInterval { .. })
        ));
        assert!(TNorm::Minimum.apply(&-0.5f64, &0.5).is_err());
    }

    #[test]
    fn names() {
        for t in TNorm::ALL {
            assert_eq!(TNorm::from_name(t.name()).unwrap(), t);
        }
        assert!(matches!(
            TNorm::from_name("drastic"),
            Err(Error::DiscontinuousTNorm(_))
        ));
        assert!(matches!(TNorm::from_name("hamacher"), Err(Error::UnknownTNorm(_))));
    }

    #[test]
    fn laws_on_small_grids() {
        assert!(check_tnorm_laws::<Rational>(TNorm::Minimum, 11).holds());
        assert!(check_tnorm_laws::<Rational>(TNorm::Product, 11).holds());
        let luk = check_tnorm_laws::<f64>(TNorm::Lukasiewicz, 21);
        assert!(luk.associativity <= 1e-12);
        assert!(luk.holds());
    }

    #[test]
    fn fold_matches_nested_eval() {
        let vals = [q(1, 2), q(3, 4), q(2, 3)];
        for t in TNorm::ALL {
            let nested = t.eval(&t.eval(&vals[0], &vals[1]), &vals[2]);
            assert_eq!(t.fold(vals.iter()), nested);
        }
        assert_eq!(TNorm::Product.fold::<Rational, _>([].iter()), q(1, 1));
    }
}
