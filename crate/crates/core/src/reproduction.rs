//! The two worked 2×2 examples, embedded as fixtures, and a checker that
//! compares computed values against the published ones.
//!
//! Example one: `u1 = (1/2, 0, 0, 1/2)`, `u2 = (0, 1/2, 1/2, 0)` over
//! `(aa, ab, ba, bb)` with belief density `(1, 1/2)`. The pair `(ν, ν)` is an
//! equilibrium for the minimum payoff t-norm and not for the product.
//!
//! Example two: `u1 = (1, 0, 1/2, 1/2)`, `u2 = (0, 1, 1/2, 1/2)` with the top
//! belief. `(ν, ν)` is a Nash equilibrium of the capacity-mixed game but not
//! an equilibrium under uncertainty.

use crate::capacity::{Measure, PossibilityCapacity};
use crate::equilibrium::{verify_capacity_nash, verify_equilibrium, BeliefProfile, Game, StrategyProfile};
use crate::error::Result;
use crate::scalar::Scalar;
use crate::space::{FiniteSpace, Subset};
use crate::tnorm::TNorm;

fn ab() -> FiniteSpace {
    FiniteSpace::new(["a", "b"]).expect("static labels")
}

fn table<V: Scalar>(entries: [(i64, i64); 4]) -> Vec<V> {
    entries.iter().map(|&(n, d)| V::from_ratio(n, d)).collect()
}

pub fn example_one<V: Scalar>() -> Game<V> {
    Game::new(
        vec![ab(), ab()],
        vec![
            table([(1, 2), (0, 1), (0, 1), (1, 2)]),
            table([(0, 1), (1, 2), (1, 2), (0, 1)]),
        ],
    )
    .expect("fixture is valid")
}

pub fn example_one_belief<V: Scalar>() -> PossibilityCapacity<V> {
    PossibilityCapacity::new(ab(), vec![V::one(), V::from_ratio(1, 2)]).expect("fixture is valid")
}

pub fn example_two<V: Scalar>() -> Game<V> {
    Game::new(
        vec![ab(), ab()],
        vec![
            table([(1, 1), (0, 1), (1, 2), (1, 2)]),
            table([(0, 1), (1, 1), (1, 2), (1, 2)]),
        ],
    )
    .expect("fixture is valid")
}

pub fn example_two_belief<V: Scalar>() -> PossibilityCapacity<V> {
    PossibilityCapacity::top(ab())
}

/// The inputs of a reproduction run.
#[derive(Debug, Clone)]
pub struct Fixtures<V> {
    pub game_one: Game<V>,
    pub belief_one: PossibilityCapacity<V>,
    pub game_two: Game<V>,
    pub belief_two: PossibilityCapacity<V>,
}

impl<V: Scalar> Default for Fixtures<V> {
    fn default() -> Self {
        Fixtures {
            game_one: example_one(),
            belief_one: example_one_belief(),
            game_two: example_two(),
            belief_two: example_two_belief(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReproductionReport {
    pub checks: Vec<Check>,
}

impl ReproductionReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }
}

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn value<V: Scalar>(&mut self, name: &str, computed: &V, expected: (i64, i64)) {
        let expected = V::from_ratio(expected.0, expected.1);
        self.checks.push(Check {
            name: name.to_string(),
            expected: expected.to_text(),
            computed: computed.to_text(),
            passed: computed.approx_eq(&expected),
        });
    }

    fn set(&mut self, name: &str, space: &FiniteSpace, computed: Subset, expected: &str) {
        let text = format!("{{{}}}", space.format_subset(computed));
        self.checks.push(Check {
            name: name.to_string(),
            passed: text == expected,
            expected: expected.to_string(),
            computed: text,
        });
    }

    fn flag(&mut self, name: &str, computed: bool, expected: bool) {
        self.checks.push(Check {
            name: name.to_string(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            passed: computed == expected,
        });
    }
}

/// Recomputes every published value of both examples.
pub fn reproduce<V: Scalar>(fixtures: &Fixtures<V>) -> Result<ReproductionReport> {
    let mut r = Recorder { checks: Vec::new() };
    let x = ab();
    let (min, prod) = (TNorm::Minimum, TNorm::Product);

    let g1 = &fixtures.game_one;
    let nu = &fixtures.belief_one;
    r.value("ex1 P1[min](a, nu)", &g1.expected_payoff(0, 0, nu, min)?, (1, 2));
    r.value("ex1 P1[min](b, nu)", &g1.expected_payoff(0, 1, nu, min)?, (1, 2));
    r.set("ex1 R1[min](nu)", &x, g1.best_response(0, nu, min)?, "{a,b}");
    r.set("ex1 R2[min](nu)", &x, g1.best_response(1, nu, min)?, "{a,b}");
    let beliefs = BeliefProfile::new(g1, vec![Measure::Possibility(nu.clone()), Measure::Possibility(nu.clone())])?;
    r.flag("ex1 (nu, nu) equilibrium [min]", verify_equilibrium(g1, &beliefs, min)?.verdict, true);
    r.value("ex1 P1[prod](a, nu)", &g1.expected_payoff(0, 0, nu, prod)?, (1, 2));
    r.value("ex1 P1[prod](b, nu)", &g1.expected_payoff(0, 1, nu, prod)?, (1, 4));
    r.set("ex1 R1[prod](nu)", &x, g1.best_response(0, nu, prod)?, "{a}");
    let cert = verify_equilibrium(g1, &beliefs, prod)?;
    r.flag("ex1 (nu, nu) equilibrium [prod]", cert.verdict, false);
    r.value("ex1 player-2 residual [prod]", &cert.residuals[1], (1, 2));

    let g2 = &fixtures.game_two;
    let top = &fixtures.belief_two;
    r.value("ex2 P1[min](a, nu)", &g2.expected_payoff(0, 0, top, min)?, (1, 1));
    r.value("ex2 P1[min](b, nu)", &g2.expected_payoff(0, 1, top, min)?, (1, 2));
    r.set("ex2 R1[min](nu)", &x, g2.best_response(0, top, min)?, "{a}");
    let profile = StrategyProfile::possibility(g2, vec![top.clone(), top.clone()])?;
    r.flag(
        "ex2 (nu, nu) capacity Nash [min, min]",
        verify_capacity_nash(g2, &profile, min, min)?.is_nash,
        true,
    );
    let beliefs = BeliefProfile::new(g2, vec![Measure::Possibility(top.clone()), Measure::Possibility(top.clone())])?;
    r.flag("ex2 (nu, nu) equilibrium [min]", verify_equilibrium(g2, &beliefs, min)?.verdict, false);

    Ok(ReproductionReport { checks: r.checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn every_check_passes_in_both_modes() {
        let exact = reproduce(&Fixtures::<Rational>::default()).unwrap();
        let float = reproduce(&Fixtures::<f64>::default()).unwrap();
        assert_eq!(exact.checks.len(), 15);
        assert!(exact.all_passed(), "{exact:#?}");
        assert!(float.all_passed(), "{float:#?}");
        let verdicts = |r: &ReproductionReport| -> Vec<bool> { r.checks.iter().map(|c| c.passed).collect() };
        assert_eq!(verdicts(&exact), verdicts(&float));
    }

    #[test]
    fn corrupted_fixture_is_detected() {
        let fixtures = Fixtures::<Rational> {
            game_one: Game::new(
                vec![ab(), ab()],
                vec![
                    table([(1, 2), (0, 1), (0, 1), (1, 3)]),
                    table([(0, 1), (1, 2), (1, 2), (0, 1)]),
                ],
            )
            .unwrap(),
            ..Fixtures::default()
        };
        let report = reproduce(&fixtures).unwrap();
        assert!(!report.all_passed());
    }
}
