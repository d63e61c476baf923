//! Finite games with capacity beliefs: t-normed expected payoffs, best
//! responses, equilibria under uncertainty and the capacity-mixed game.
//!
//! Player `i`'s opponents are laid out in ascending player order with `i`
//! removed. Every tensor, slice and residual in this module uses that one
//! convention.

use std::fmt;

use crate::capacity::{Measure, MeasureKind, PossibilityCapacity, SetFunction};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::fuzzy_integral::{integral_unchecked, tnormed_integral, FuzzyFunction};
use crate::scalar::{max_value, Scalar};
use crate::space::{FiniteSpace, ProductSpace, Subset};
use crate::tensor::{natural_form, tensor_n, tensor_n_density};
use crate::tnorm::TNorm;

pub const DEFAULT_GRID_RESOLUTION: u32 = 4;
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

/// An n-player game with `[0, 1]`-valued payoffs stored as full tables.
#[derive(Debug, Clone, PartialEq)]
pub struct Game<V> {
    strategies: Vec<FiniteSpace>,
    profiles: ProductSpace,
    opponents: Vec<ProductSpace>,
    /// `payoffs[i][k]` is player `i`'s payoff at flat profile `k`.
    payoffs: Vec<Vec<V>>,
    /// `slices[i][x][k]` is the flat profile index of `(x, k-th opponent tuple)`.
    slices: Vec<Vec<Vec<usize>>>,
}

impl<V: Scalar> Game<V> {
    pub fn new(strategies: Vec<FiniteSpace>, payoffs: Vec<Vec<V>>) -> Result<Self> {
        let players = strategies.len();
        if players < 2 {
            return Err(Error::InvalidGame(format!("needs at least 2 players, got {players}")));
        }
        if payoffs.len() != players {
            return Err(Error::InvalidGame(format!(
                "{} payoff tables for {players} players",
                payoffs.len()
            )));
        }
        let profiles = ProductSpace::new(strategies.clone())?;
        for (i, table) in payoffs.iter().enumerate() {
            if table.len() != profiles.len() {
                return Err(Error::InvalidGame(format!(
                    "player {} payoff table has {} entries, expected {}",
                    i + 1,
                    table.len(),
                    profiles.len()
                )));
            }
            if let Some((k, v)) = table.iter().enumerate().find(|(_, v)| !v.is_unit()) {
                return Err(Error::InvalidGame(format!(
                    "player {} payoff at ({}) is {}, outside [0, 1]",
                    i + 1,
                    profiles.flat().label(k),
                    v.to_text()
                )));
            }
        }
        let opponents = (0..players)
            .map(|i| ProductSpace::new(without(&strategies, i)))
            .collect::<Result<Vec<_>>>()?;
        let slices = (0..players)
            .map(|i| {
                (0..strategies[i].len())
                    .map(|x| {
                        (0..opponents[i].len())
                            .map(|k| {
                                let mut coords = opponents[i].coords(k);
                                coords.insert(i, x);
                                profiles.index(&coords)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(Game {
            strategies,
            profiles,
            opponents,
            payoffs,
            slices,
        })
    }

    /// Builds a game from a payoff function of `(player, strategy indices)`.
    pub fn from_fn(strategies: Vec<FiniteSpace>, payoff: impl Fn(usize, &[usize]) -> V) -> Result<Self> {
        let profiles = ProductSpace::new(strategies.clone())?;
        let payoffs = (0..strategies.len())
            .map(|i| (0..profiles.len()).map(|k| payoff(i, &profiles.coords(k))).collect())
            .collect();
        Game::new(strategies, payoffs)
    }

    pub fn players(&self) -> usize {
        self.strategies.len()
    }

    pub fn strategies(&self, player: usize) -> &FiniteSpace {
        &self.strategies[player]
    }

    pub fn strategy_spaces(&self) -> &[FiniteSpace] {
        &self.strategies
    }

    pub fn profiles(&self) -> &ProductSpace {
        &self.profiles
    }

    /// `X_{-i}` in ascending player order.
    pub fn opponent_space(&self, player: usize) -> &ProductSpace {
        &self.opponents[player]
    }

    pub fn payoff_table(&self, player: usize) -> &[V] {
        &self.payoffs[player]
    }

    pub fn payoff(&self, player: usize, coords: &[usize]) -> &V {
        &self.payoffs[player][self.profiles.index(coords)]
    }

    fn check_player(&self, player: usize) -> Result<()> {
        if player < self.players() {
            Ok(())
        } else {
            Err(Error::PlayerOutOfRange {
                player,
                players: self.players(),
            })
        }
    }

    fn check_strategy(&self, player: usize, strategy: usize) -> Result<()> {
        self.check_player(player)?;
        let count = self.strategies[player].len();
        if strategy < count {
            Ok(())
        } else {
            Err(Error::StrategyOutOfRange {
                player,
                strategy,
                count,
            })
        }
    }

    /// `x_{-i} ↦ p_i(x_i, x_{-i})`.
    pub fn restricted_payoff(&self, player: usize, strategy: usize) -> Result<FuzzyFunction<V>> {
        self.check_strategy(player, strategy)?;
        Ok(self.slice(player, strategy))
    }

    fn slice(&self, player: usize, strategy: usize) -> FuzzyFunction<V> {
        let values = self.slices[player][strategy]
            .iter()
            .map(|&k| self.payoffs[player][k].clone())
            .collect();
        FuzzyFunction::new(self.opponents[player].flat().clone(), values)
            .expect("payoffs validated at construction")
    }

    fn check_belief<M: SetFunction<V> + ?Sized>(&self, player: usize, belief: &M) -> Result<()> {
        self.check_player(player)?;
        self.opponents[player]
            .flat()
            .require_same(belief.space(), &format!("belief of player {}", player + 1))
    }

    /// `P_i(x_i, ν) = ∫ p_i^{x_i} dν` with the payoff t-norm `star`.
    pub fn expected_payoff<M: SetFunction<V> + ?Sized>(
        &self,
        player: usize,
        strategy: usize,
        belief: &M,
        star: TNorm,
    ) -> Result<V> {
        self.check_strategy(player, strategy)?;
        self.check_belief(player, belief)?;
        tnormed_integral(&self.slice(player, strategy), belief, star)
    }

    /// Expected payoff of each of the player's strategies.
    pub fn expected_payoffs<M: SetFunction<V> + ?Sized>(
        &self,
        player: usize,
        belief: &M,
        star: TNorm,
    ) -> Result<Vec<V>> {
        self.check_belief(player, belief)?;
        Ok((0..self.strategies[player].len())
            .map(|x| integral_unchecked(&self.slice(player, x), belief, star))
            .collect())
    }

    /// The full argmax set of the expected payoff; never empty.
    pub fn best_response<M: SetFunction<V> + ?Sized>(
        &self,
        player: usize,
        belief: &M,
        star: TNorm,
    ) -> Result<Subset> {
        Ok(argmax(&self.expected_payoffs(player, belief, star)?))
    }
}

fn without(spaces: &[FiniteSpace], skip: usize) -> Vec<FiniteSpace> {
    spaces
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != skip)
        .map(|(_, s)| s.clone())
        .collect()
}

fn argmax<V: Scalar>(values: &[V]) -> Subset {
    let best = max_value(values.iter().cloned()).unwrap_or_else(V::zero);
    Subset::from_indices((0..values.len()).filter(|&x| values[x].approx_eq(&best)))
}

/// One capacity per player on that player's opponent space.
#[derive(Debug, Clone, PartialEq)]
pub struct BeliefProfile<V> {
    beliefs: Vec<Measure<V>>,
}

impl<V: Scalar> BeliefProfile<V> {
    pub fn new(game: &Game<V>, beliefs: Vec<Measure<V>>) -> Result<Self> {
        if beliefs.len() != game.players() {
            return Err(Error::InvalidGame(format!(
                "{} beliefs for {} players",
                beliefs.len(),
                game.players()
            )));
        }
        for (i, b) in beliefs.iter().enumerate() {
            game.check_belief(i, b)?;
        }
        Ok(BeliefProfile { beliefs })
    }

    pub fn beliefs(&self) -> &[Measure<V>] {
        &self.beliefs
    }

    pub fn belief(&self, player: usize) -> &Measure<V> {
        &self.beliefs[player]
    }
}

/// One possibility (or necessity) capacity per player on their own
/// strategy set.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyProfile<V> {
    strategies: Vec<Measure<V>>,
}

impl<V: Scalar> StrategyProfile<V> {
    pub fn new(game: &Game<V>, strategies: Vec<Measure<V>>) -> Result<Self> {
        if strategies.len() != game.players() {
            return Err(Error::InvalidGame(format!(
                "{} mixed strategies for {} players",
                strategies.len(),
                game.players()
            )));
        }
        for (i, s) in strategies.iter().enumerate() {
            game.strategies[i].require_same(s.space(), &format!("strategy of player {}", i + 1))?;
            if s.kind() == MeasureKind::General {
                return Err(Error::Unsupported(
                    "strategy profiles hold possibility or necessity capacities".into(),
                ));
            }
        }
        Ok(StrategyProfile { strategies })
    }

    pub fn possibility(game: &Game<V>, strategies: Vec<PossibilityCapacity<V>>) -> Result<Self> {
        StrategyProfile::new(game, strategies.into_iter().map(Measure::Possibility).collect())
    }

    pub fn strategies(&self) -> &[Measure<V>] {
        &self.strategies
    }

    pub fn strategy(&self, player: usize) -> &Measure<V> {
        &self.strategies[player]
    }

    /// The densities, when every strategy is a possibility capacity.
    pub fn densities(&self) -> Option<Vec<&PossibilityCapacity<V>>> {
        self.strategies.iter().map(Measure::as_possibility).collect()
    }
}

/// Best-response sets, residual masses and the verdict of one belief system.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumCertificate<V> {
    /// `payoffs[i][x]` is `P_i(x, ν_i)`.
    pub payoffs: Vec<Vec<V>>,
    pub best_responses: Vec<Subset>,
    /// `ν_i(X_{-i} ∖ ∏_{j≠i} R_j)`.
    pub residuals: Vec<V>,
    pub verdict: bool,
    pub payoff_tnorm: TNorm,
    pub tensor_tnorm: Option<TNorm>,
}

/// Checks whether the belief system is an equilibrium under uncertainty
/// with respect to the payoff t-norm `star`.
pub fn verify_equilibrium<V: Scalar>(
    game: &Game<V>,
    beliefs: &BeliefProfile<V>,
    star: TNorm,
) -> Result<EquilibriumCertificate<V>> {
    let payoffs = (0..game.players())
        .map(|i| game.expected_payoffs(i, beliefs.belief(i), star))
        .collect::<Result<Vec<_>>>()?;
    let best_responses: Vec<Subset> = payoffs.iter().map(|p| argmax(p)).collect();
    let residuals: Vec<V> = (0..game.players())
        .map(|i| {
            let parts: Vec<Subset> = without_subsets(&best_responses, i);
            let opp = game.opponent_space(i);
            let outside = opp.rectangle(&parts).complement(opp.len());
            beliefs.belief(i).measure(outside)
        })
        .collect();
    let verdict = residuals.iter().all(Scalar::is_negligible);
    Ok(EquilibriumCertificate {
        payoffs,
        best_responses,
        residuals,
        verdict,
        payoff_tnorm: star,
        tensor_tnorm: None,
    })
}

fn without_subsets(sets: &[Subset], skip: usize) -> Vec<Subset> {
    sets.iter()
        .enumerate()
        .filter(|&(j, _)| j != skip)
        .map(|(_, s)| *s)
        .collect()
}

/// `ν_i = ⊛_{j≠i} μ_j` in ascending `j` order. Possibility profiles use the
/// density form, necessity profiles the general form.
pub fn induced_beliefs<V: Scalar>(
    game: &Game<V>,
    profile: &StrategyProfile<V>,
    ast: TNorm,
    exec: Execution,
) -> Result<BeliefProfile<V>> {
    let beliefs = (0..game.players())
        .map(|i| {
            let factors: Vec<Measure<V>> = profile
                .strategies
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, m)| m.clone())
                .collect();
            tensor_n(&factors, ast, natural_form(&factors), exec)
        })
        .collect::<Result<Vec<_>>>()?;
    BeliefProfile::new(game, beliefs)
}

/// Candidate families enumerated by [`search_equilibria`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Possibility indicators of every non-empty support.
    Indicator,
    /// Possibility densities on `{0, 1/g, ..., 1}` with maximum 1.
    Grid(u32),
    /// Duals of the possibility indicators.
    NecessityIndicator,
}

impl SearchMode {
    /// `indicator`, `grid`, `grid:<g>` or `necessity`.
    pub fn parse(text: &str) -> Result<Self> {
        match text.trim() {
            "indicator" => Ok(SearchMode::Indicator),
            "necessity" | "necessity-indicator" => Ok(SearchMode::NecessityIndicator),
            "grid" => Ok(SearchMode::Grid(DEFAULT_GRID_RESOLUTION)),
            other => match other.strip_prefix("grid:").map(str::parse::<u32>) {
                Some(Ok(g)) if g >= 1 => Ok(SearchMode::Grid(g)),
                _ => Err(Error::Unsupported(format!("search mode `{other}`"))),
            },
        }
    }

    /// Number of candidates for one player with `k` strategies.
    fn count(self, k: usize) -> u128 {
        let k = k as u32;
        match self {
            SearchMode::Indicator | SearchMode::NecessityIndicator => (1u128 << k) - 1,
            SearchMode::Grid(g) => {
                let g = g as u128;
                match ((g + 1).checked_pow(k), g.checked_pow(k)) {
                    (Some(a), Some(b)) => a - b,
                    _ => u128::MAX,
                }
            }
        }
    }

    fn candidates<V: Scalar>(self, space: &FiniteSpace) -> Vec<Measure<V>> {
        let n = space.len();
        match self {
            SearchMode::Indicator | SearchMode::NecessityIndicator => (1..1u64 << n)
                .map(|mask| {
                    let p = PossibilityCapacity::indicator(space.clone(), Subset::from_bits(mask))
                        .expect("non-empty support");
                    if self == SearchMode::Indicator {
                        Measure::Possibility(p)
                    } else {
                        Measure::Necessity(p.dual())
                    }
                })
                .collect(),
            SearchMode::Grid(g) => {
                let mut out = Vec::new();
                let mut digits = vec![0u32; n];
                loop {
                    if digits.contains(&g) {
                        let density = digits.iter().map(|&d| V::from_ratio(d as i64, g as i64)).collect();
                        out.push(Measure::Possibility(
                            PossibilityCapacity::new(space.clone(), density).expect("max is 1"),
                        ));
                    }
                    // Lexicographic increment, first coordinate most significant.
                    let mut pos = n;
                    loop {
                        if pos == 0 {
                            return out;
                        }
                        pos -= 1;
                        if digits[pos] < g {
                            digits[pos] += 1;
                            break;
                        }
                        digits[pos] = 0;
                    }
                }
            }
        }
    }
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchMode::Indicator => f.write_str("indicator"),
            SearchMode::Grid(g) => write!(f, "grid:{g}"),
            SearchMode::NecessityIndicator => f.write_str("necessity"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FoundEquilibrium<V> {
    /// Position in the enumeration order.
    pub index: u128,
    pub profile: StrategyProfile<V>,
    pub certificate: EquilibriumCertificate<V>,
    /// The verdict changes when the opponent factors are tensored in
    /// descending instead of ascending order.
    pub order_sensitive: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport<V> {
    pub mode: SearchMode,
    pub payoff_tnorm: TNorm,
    pub tensor_tnorm: TNorm,
    pub examined: u128,
    pub equilibria: Vec<FoundEquilibrium<V>>,
    /// Rejected candidates whose verdict would flip under descending order.
    pub order_sensitive_rejections: Vec<u128>,
}

impl<V> SearchReport<V> {
    /// Emptiness only means nothing was found among the finite candidates.
    pub fn outcome(&self) -> &'static str {
        if self.equilibria.is_empty() {
            "not found at this resolution"
        } else {
            "found"
        }
    }
}

/// Enumerates every candidate profile of `mode`, keeping those whose induced
/// beliefs form an equilibrium under uncertainty with respect to `star`.
///
/// Output order is the enumeration order: player 1's candidate is the most
/// significant digit. The budget bounds the number of candidate profiles
/// and is checked before any work is done.
pub fn search_equilibria<V: Scalar>(
    game: &Game<V>,
    star: TNorm,
    ast: TNorm,
    mode: SearchMode,
    budget: u64,
    exec: Execution,
) -> Result<SearchReport<V>> {
    let counts: Vec<u128> = game.strategies.iter().map(|s| mode.count(s.len())).collect();
    let total = counts
        .iter()
        .try_fold(1u128, |acc, &c| acc.checked_mul(c))
        .unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(Error::BudgetExceeded {
            required: total,
            budget,
        });
    }
    let candidates: Vec<Vec<Measure<V>>> = game.strategies.iter().map(|s| mode.candidates(s)).collect();
    let check_order = mode == SearchMode::NecessityIndicator && game.players() > 2;

    enum Outcome<V> {
        Equilibrium(FoundEquilibrium<V>),
        Sensitive(u128),
    }

    let outcomes = exec.try_filter_map_range(total as u64, |index| -> Result<Option<Outcome<V>>> {
        let mut rest = index as u128;
        let mut picks = vec![0usize; counts.len()];
        for (slot, &c) in picks.iter_mut().zip(&counts).rev() {
            *slot = (rest % c) as usize;
            rest /= c;
        }
        let strategies = picks
            .iter()
            .zip(&candidates)
            .map(|(&k, list)| list[k].clone())
            .collect();
        let profile = StrategyProfile { strategies };
        let beliefs = induced_beliefs(game, &profile, ast, Execution::Sequential)?;
        let mut certificate = verify_equilibrium(game, &beliefs, star)?;
        certificate.tensor_tnorm = Some(ast);
        let order_sensitive = check_order
            && reversed_order_verdict(game, &profile, &certificate.best_responses, ast)? != certificate.verdict;
        Ok(if certificate.verdict {
            Some(Outcome::Equilibrium(FoundEquilibrium {
                index: index as u128,
                profile,
                certificate,
                order_sensitive,
            }))
        } else if order_sensitive {
            Some(Outcome::Sensitive(index as u128))
        } else {
            None
        })
    })?;

    let mut report = SearchReport {
        mode,
        payoff_tnorm: star,
        tensor_tnorm: ast,
        examined: total,
        equilibria: Vec::new(),
        order_sensitive_rejections: Vec::new(),
    };
    for outcome in outcomes {
        match outcome {
            Outcome::Equilibrium(found) => report.equilibria.push(found),
            Outcome::Sensitive(index) => report.order_sensitive_rejections.push(index),
        }
    }
    Ok(report)
}

/// Verdict with every belief tensored in descending player order.
fn reversed_order_verdict<V: Scalar>(
    game: &Game<V>,
    profile: &StrategyProfile<V>,
    best_responses: &[Subset],
    ast: TNorm,
) -> Result<bool> {
    for i in 0..game.players() {
        let mut factors = Vec::new();
        let mut parts = Vec::new();
        let mut spaces = Vec::new();
        for j in (0..game.players()).rev().filter(|&j| j != i) {
            factors.push(profile.strategies[j].clone());
            parts.push(best_responses[j]);
            spaces.push(game.strategies[j].clone());
        }
        let product = ProductSpace::new(spaces)?;
        let belief = tensor_n(&factors, ast, natural_form(&factors), Execution::Sequential)?;
        let outside = product.rectangle(&parts).complement(product.len());
        if !belief.measure(outside).is_negligible() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `eu_i(μ_1, ..., μ_n) = ∫ p_i d(μ_1 ⊛ ... ⊛ μ_n)` with payoff t-norm `star`
/// and tensor t-norm `ast`, for a possibility profile.
pub fn mixed_expected_payoff<V: Scalar>(
    game: &Game<V>,
    player: usize,
    profile: &StrategyProfile<V>,
    star: TNorm,
    ast: TNorm,
) -> Result<V> {
    game.check_player(player)?;
    let densities = possibility_densities(profile)?;
    mixed_payoff_of(game, player, &densities, star, ast)
}

fn possibility_densities<V: Scalar>(profile: &StrategyProfile<V>) -> Result<Vec<PossibilityCapacity<V>>> {
    profile
        .densities()
        .map(|d| d.into_iter().cloned().collect())
        .ok_or_else(|| Error::Unsupported("the capacity-mixed game needs a possibility profile".into()))
}

fn mixed_payoff_of<V: Scalar>(
    game: &Game<V>,
    player: usize,
    densities: &[PossibilityCapacity<V>],
    star: TNorm,
    ast: TNorm,
) -> Result<V> {
    let joint = tensor_n_density(densities, ast)?;
    let payoff = FuzzyFunction::new(game.profiles.flat().clone(), game.payoffs[player].clone())?;
    tnormed_integral(&payoff, &joint, star)
}

#[derive(Debug, Clone, PartialEq)]
pub struct NashPlayer<V> {
    /// `eu_i` at the profile.
    pub payoff: V,
    /// `eu_i` after deviating to the greatest possibility capacity, the
    /// largest payoff any possibility deviation can reach.
    pub deviation_bound: V,
    pub gap: V,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NashReport<V> {
    pub players: Vec<NashPlayer<V>>,
    pub is_nash: bool,
}

/// Whether a possibility profile is a Nash equilibrium of the capacity-mixed
/// game. Deviations range over possibility capacities, where `eu_i` is
/// monotone in the deviating density and so peaks at density ≡ 1.
pub fn verify_capacity_nash<V: Scalar>(
    game: &Game<V>,
    profile: &StrategyProfile<V>,
    star: TNorm,
    ast: TNorm,
) -> Result<NashReport<V>> {
    let densities = possibility_densities(profile)?;
    let players = (0..game.players())
        .map(|i| {
            let payoff = mixed_payoff_of(game, i, &densities, star, ast)?;
            let mut deviated = densities.clone();
            deviated[i] = PossibilityCapacity::top(game.strategies[i].clone());
            let deviation_bound = mixed_payoff_of(game, i, &deviated, star, ast)?;
            let gap = deviation_bound.sub(&payoff);
            Ok(NashPlayer {
                payoff,
                deviation_bound,
                gap,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let is_nash = players.iter().all(|p| !V::zero().definitely_lt(&p.gap));
    Ok(NashReport { players, is_nash })
}
