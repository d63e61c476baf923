//! Subcommand bodies. Each returns a [`Report`] holding both renderings and
//! the exit status.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use capeq::reproduction::{reproduce, Fixtures};
use capeq::{
    induced_beliefs, search_equilibria, tensor_n, tnormed_integral, verify_capacity_nash,
    verify_equilibrium, BeliefProfile, Execution, FiniteSpace, Game, Measure, Scalar, SearchMode, SetFunction,
    StrategyProfile, Subset, TNorm, TensorForm,
};
use capeq::tensor::natural_form;
use serde_json::{json, Value};

use crate::io::{capacity_to_json, game_to_json, parse_capacity, parse_function, parse_game, read_json, CliError, CliResult};

pub struct Report {
    pub human: String,
    pub json: Value,
    pub code: u8,
}

impl Report {
    fn ok(human: String, json: Value) -> Self {
        Report { human, json, code: 0 }
    }

    fn verdict(human: String, json: Value, verdict: bool) -> Self {
        Report {
            human,
            json,
            code: if verdict { 0 } else { 1 },
        }
    }
}

fn name(path: &Path) -> String {
    path.display().to_string()
}

fn load_game<V: Scalar>(path: &Path) -> CliResult<Game<V>> {
    parse_game(&read_json(path)?, &name(path))
}

fn load_capacity<V: Scalar>(path: &Path, expected: Option<&FiniteSpace>) -> CliResult<Measure<V>> {
    parse_capacity(&read_json(path)?, &name(path), expected)
}

fn set_text(space: &FiniteSpace, s: Subset) -> String {
    format!("{{{}}}", space.format_subset(s))
}

/// Parses a 1-based player number.
fn player_index<V: Scalar>(game: &Game<V>, player: usize) -> CliResult<usize> {
    if player == 0 || player > game.players() {
        return Err(CliError::input(format!(
            "--player {player}: expected a number from 1 to {}",
            game.players()
        )));
    }
    Ok(player - 1)
}

pub enum IntegrandSource {
    Function(PathBuf),
    Game {
        path: PathBuf,
        player: usize,
        strategy: String,
    },
}

pub fn integrate<V: Scalar>(source: &IntegrandSource, capacity: &Path, star: TNorm) -> CliResult<Report> {
    let (f, what) = match source {
        IntegrandSource::Function(path) => (parse_function::<V>(&read_json(path)?, &name(path))?, name(path)),
        IntegrandSource::Game { path, player, strategy } => {
            let game = load_game::<V>(path)?;
            let i = player_index(&game, *player)?;
            let x = game.strategies(i).index_of(strategy).ok_or_else(|| {
                CliError::input(format!("--strategy {strategy:?}: not a strategy of player {player}"))
            })?;
            (game.restricted_payoff(i, x)?, format!("payoff of player {player} at {strategy}"))
        }
    };
    let mu = load_capacity::<V>(capacity, Some(f.space()))?;
    let value = tnormed_integral(&f, &mu, star)?;
    let human = format!("integral[{star}] of {what} against {}: {}\n", name(capacity), value.to_text());
    let json = json!({ "tnorm": star.name(), "value": value.to_text() });
    Ok(Report::ok(human, json))
}

pub fn tensor<V: Scalar>(
    paths: &[PathBuf],
    ast: TNorm,
    form: Option<TensorForm>,
    out: Option<&Path>,
) -> CliResult<Report> {
    let factors = paths
        .iter()
        .map(|p| load_capacity::<V>(p, None))
        .collect::<CliResult<Vec<_>>>()?;
    let form = form.unwrap_or_else(|| natural_form(&factors));
    let product = tensor_n(&factors, ast, form, Execution::default())?;
    let file = capacity_to_json(&product);
    let mut human = String::new();
    if let Some(out) = out {
        write_json(out, &file)?;
        writeln!(human, "wrote {} ({} capacity on {} elements)", out.display(), product.kind().name(), product.space().len()).unwrap();
    } else {
        human = serde_json::to_string_pretty(&file).expect("serializable") + "\n";
    }
    let json = match out {
        Some(out) => json!({ "out": out.display().to_string(), "capacity": file }),
        None => file,
    };
    Ok(Report::ok(human, json))
}

fn load_beliefs<V: Scalar>(game: &Game<V>, paths: &[PathBuf]) -> CliResult<BeliefProfile<V>> {
    if paths.len() != game.players() {
        return Err(CliError::input(format!(
            "--beliefs: expected {} files (one per player), got {}",
            game.players(),
            paths.len()
        )));
    }
    let beliefs = paths
        .iter()
        .enumerate()
        .map(|(i, p)| load_capacity::<V>(p, Some(game.opponent_space(i).flat())))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(BeliefProfile::new(game, beliefs)?)
}

fn values_json<V: Scalar>(space: &FiniteSpace, values: &[V]) -> Value {
    let map: serde_json::Map<String, Value> = space
        .labels()
        .iter()
        .zip(values)
        .map(|(l, v)| (l.clone(), Value::String(v.to_text())))
        .collect();
    Value::Object(map)
}

fn payoff_lines<V: Scalar>(game: &Game<V>, i: usize, payoffs: &[V], best: Subset, out: &mut String) {
    let x = game.strategies(i);
    let listed: Vec<String> = (0..x.len()).map(|k| format!("{}={}", x.label(k), payoffs[k].to_text())).collect();
    writeln!(out, "player {}: P = ({}), best responses {}", i + 1, listed.join(", "), set_text(x, best)).unwrap();
}

pub fn best_response<V: Scalar>(game: &Path, beliefs: &[PathBuf], star: TNorm) -> CliResult<Report> {
    let game = load_game::<V>(game)?;
    let beliefs = load_beliefs(&game, beliefs)?;
    let mut human = format!("payoff t-norm {star}\n");
    let mut players = Vec::new();
    for i in 0..game.players() {
        let payoffs = game.expected_payoffs(i, beliefs.belief(i), star)?;
        let best = game.best_response(i, beliefs.belief(i), star)?;
        payoff_lines(&game, i, &payoffs, best, &mut human);
        let x = game.strategies(i);
        players.push(json!({
            "player": i + 1,
            "payoffs": values_json(x, &payoffs),
            "best_responses": x.labels().iter().enumerate().filter(|(k, _)| best.contains(*k)).map(|(_, l)| l.clone()).collect::<Vec<_>>(),
        }));
    }
    Ok(Report::ok(human, json!({ "payoff_tnorm": star.name(), "players": players })))
}

fn certificate_json<V: Scalar>(game: &Game<V>, cert: &capeq::EquilibriumCertificate<V>) -> Value {
    let players: Vec<Value> = (0..game.players())
        .map(|i| {
            let x = game.strategies(i);
            json!({
                "player": i + 1,
                "payoffs": values_json(x, &cert.payoffs[i]),
                "best_responses": x.labels().iter().enumerate().filter(|(k, _)| cert.best_responses[i].contains(*k)).map(|(_, l)| l.clone()).collect::<Vec<_>>(),
                "residual": cert.residuals[i].to_text(),
            })
        })
        .collect();
    json!({ "players": players, "equilibrium": cert.verdict })
}

fn certificate_lines<V: Scalar>(game: &Game<V>, cert: &capeq::EquilibriumCertificate<V>, out: &mut String) {
    for i in 0..game.players() {
        payoff_lines(game, i, &cert.payoffs[i], cert.best_responses[i], out);
        writeln!(out, "  residual mass outside the best-response product: {}", cert.residuals[i].to_text()).unwrap();
    }
}

pub fn verify<V: Scalar>(game: &Path, beliefs: &[PathBuf], star: TNorm) -> CliResult<Report> {
    let game = load_game::<V>(game)?;
    let beliefs = load_beliefs(&game, beliefs)?;
    let cert = verify_equilibrium(&game, &beliefs, star)?;
    let mut human = format!("payoff t-norm {star}\n");
    certificate_lines(&game, &cert, &mut human);
    let verdict = if cert.verdict { "equilibrium" } else { "not an equilibrium" };
    writeln!(human, "verdict: {verdict}").unwrap();
    let mut json = certificate_json(&game, &cert);
    json["payoff_tnorm"] = json!(star.name());
    Ok(Report::verdict(human, json, cert.verdict))
}

fn strategy_json<V: Scalar>(m: &Measure<V>) -> Value {
    let c = capacity_to_json(m);
    json!({ "kind": c["kind"], "density": c["density"] })
}

fn strategy_text<V: Scalar>(m: &Measure<V>) -> String {
    let p = match m {
        Measure::Possibility(p) => p,
        Measure::Necessity(n) => n.possibility(),
        Measure::General(_) => return "general".into(),
    };
    let space = SetFunction::space(p);
    let parts: Vec<String> = (0..space.len()).map(|x| format!("{}={}", space.label(x), p.density()[x].to_text())).collect();
    let prefix = if matches!(m, Measure::Necessity(_)) { "dual of " } else { "" };
    format!("{prefix}({})", parts.join(", "))
}

pub fn search<V: Scalar>(game: &Path, star: TNorm, ast: TNorm, mode: SearchMode, budget: u64) -> CliResult<Report> {
    let game = load_game::<V>(game)?;
    let report = search_equilibria(&game, star, ast, mode, budget, Execution::default())?;
    let mut human = format!(
        "mode {mode}, payoff t-norm {star}, tensor t-norm {ast}: {} candidate profiles examined\n",
        report.examined
    );
    let mut found = Vec::new();
    for eq in &report.equilibria {
        let strategies: Vec<String> = eq.profile.strategies().iter().map(strategy_text).collect();
        write!(human, "#{}: {}", eq.index, strategies.join(" ; ")).unwrap();
        if eq.order_sensitive {
            human.push_str("  [verdict depends on tensor order]");
        }
        human.push('\n');
        let mut cert = certificate_json(&game, &eq.certificate);
        cert["index"] = json!(eq.index.to_string());
        cert["strategies"] = Value::Array(eq.profile.strategies().iter().map(strategy_json).collect());
        cert["order_sensitive"] = json!(eq.order_sensitive);
        found.push(cert);
    }
    if !report.order_sensitive_rejections.is_empty() {
        writeln!(
            human,
            "{} rejected candidates would be accepted with the opposite tensor order",
            report.order_sensitive_rejections.len()
        )
        .unwrap();
    }
    writeln!(human, "{} equilibria: {}", report.equilibria.len(), report.outcome()).unwrap();
    let json = json!({
        "mode": mode.to_string(),
        "payoff_tnorm": star.name(),
        "tensor_tnorm": ast.name(),
        "examined": report.examined.to_string(),
        "outcome": report.outcome(),
        "equilibria": found,
        "order_sensitive_rejections": report.order_sensitive_rejections.iter().map(|i| i.to_string()).collect::<Vec<_>>(),
    });
    Ok(Report::verdict(human, json, !report.equilibria.is_empty()))
}

pub fn nash_verify<V: Scalar>(game: &Path, profile: &[PathBuf], star: TNorm, ast: TNorm) -> CliResult<Report> {
    let game = load_game::<V>(game)?;
    if profile.len() != game.players() {
        return Err(CliError::input(format!(
            "--profile: expected {} files (one per player), got {}",
            game.players(),
            profile.len()
        )));
    }
    let strategies = profile
        .iter()
        .enumerate()
        .map(|(i, p)| load_capacity::<V>(p, Some(game.strategies(i))))
        .collect::<CliResult<Vec<_>>>()?;
    let profile = StrategyProfile::new(&game, strategies)?;
    let report = verify_capacity_nash(&game, &profile, star, ast)?;
    let beliefs = induced_beliefs(&game, &profile, ast, Execution::default())?;
    let uncertainty = verify_equilibrium(&game, &beliefs, star)?.verdict;

    let mut human = format!("payoff t-norm {star}, tensor t-norm {ast}\n");
    let mut players = Vec::new();
    for (i, p) in report.players.iter().enumerate() {
        writeln!(
            human,
            "player {}: eu = {}, best deviation = {}, gap = {}",
            i + 1,
            p.payoff.to_text(),
            p.deviation_bound.to_text(),
            p.gap.to_text()
        )
        .unwrap();
        players.push(json!({
            "player": i + 1,
            "payoff": p.payoff.to_text(),
            "deviation_bound": p.deviation_bound.to_text(),
            "gap": p.gap.to_text(),
        }));
    }
    let verdict = if report.is_nash { "Nash equilibrium" } else { "not a Nash equilibrium" };
    writeln!(human, "verdict: {verdict}").unwrap();
    writeln!(
        human,
        "induced beliefs form an equilibrium under uncertainty: {}",
        if uncertainty { "yes" } else { "no" }
    )
    .unwrap();
    let json = json!({
        "payoff_tnorm": star.name(),
        "tensor_tnorm": ast.name(),
        "players": players,
        "nash": report.is_nash,
        "equilibrium_under_uncertainty": uncertainty,
    });
    Ok(Report::verdict(human, json, report.is_nash))
}

fn write_json(path: &Path, value: &Value) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    std::fs::write(path, text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn export_fixtures<V: Scalar>(fixtures: &Fixtures<V>, dir: &Path) -> CliResult<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::input(format!("{}: {e}", dir.display())))?;
    let files = [
        ("example-one-game.json", game_to_json(&fixtures.game_one)),
        ("example-one-belief.json", capacity_to_json(&Measure::Possibility(fixtures.belief_one.clone()))),
        ("example-two-game.json", game_to_json(&fixtures.game_two)),
        ("example-two-belief.json", capacity_to_json(&Measure::Possibility(fixtures.belief_two.clone()))),
    ];
    let mut written = Vec::new();
    for (file, value) in files {
        let path = dir.join(file);
        write_json(&path, &value)?;
        written.push(path);
    }
    Ok(written)
}

pub fn reproduce_examples<V: Scalar>(
    game_one: Option<&Path>,
    game_two: Option<&Path>,
    export: Option<&Path>,
) -> CliResult<Report> {
    let mut fixtures = Fixtures::<V>::default();
    if let Some(p) = game_one {
        fixtures.game_one = load_game(p)?;
    }
    if let Some(p) = game_two {
        fixtures.game_two = load_game(p)?;
    }
    let report = reproduce(&fixtures)?;
    let width = report.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut human = String::new();
    for c in &report.checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        writeln!(human, "{tag}  {:width$}  expected {:<8} computed {}", c.name, c.expected, c.computed).unwrap();
    }
    writeln!(human, "{} of {} checks passed", report.passed(), report.checks.len()).unwrap();
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| json!({ "name": c.name, "expected": c.expected, "computed": c.computed, "passed": c.passed }))
        .collect();
    let mut json = json!({ "checks": checks, "passed": report.passed(), "total": report.checks.len() });
    if let Some(dir) = export {
        let written = export_fixtures(&fixtures, dir)?;
        for p in &written {
            writeln!(human, "wrote {}", p.display()).unwrap();
        }
        json["exported"] = written.iter().map(|p| p.display().to_string()).collect();
    }
    Ok(Report::verdict(human, json, report.all_passed()))
}
