//! JSON file formats for games, capacities and functions.
//!
//! Numbers are written as fraction strings (`"1/2"`); plain JSON numbers are
//! accepted on input. Every parse error names the file and the field.

use std::fmt;
use std::path::Path;

use capeq::{
    Capacity, FiniteSpace, FuzzyFunction, Game, Measure, NecessityCapacity, PossibilityCapacity, Scalar, SetFunction,
    Subset,
};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Unreadable or invalid input, bad arguments.
    Input,
    Budget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            kind: ErrorKind::Input,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.kind {
            ErrorKind::Input => 2,
            ErrorKind::Budget => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<capeq::Error> for CliError {
    fn from(e: capeq::Error) -> Self {
        let kind = match e {
            capeq::Error::BudgetExceeded { .. } => ErrorKind::Budget,
            _ => ErrorKind::Input,
        };
        CliError {
            kind,
            message: e.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Error context: a file name plus a field path inside it.
#[derive(Clone)]
struct Field<'a> {
    file: &'a str,
    path: String,
}

impl<'a> Field<'a> {
    fn root(file: &'a str) -> Self {
        Field {
            file,
            path: String::new(),
        }
    }

    fn key(&self, key: &str) -> Field<'a> {
        let path = if self.path.is_empty() {
            key.to_string()
        } else {
            format!("{}.{key}", self.path)
        };
        Field { file: self.file, path }
    }

    fn entry(&self, key: &str) -> Field<'a> {
        Field {
            file: self.file,
            path: format!("{}[{key:?}]", self.path),
        }
    }

    fn item(&self, index: usize) -> Field<'a> {
        Field {
            file: self.file,
            path: format!("{}[{index}]", self.path),
        }
    }

    fn err(&self, message: impl fmt::Display) -> CliError {
        if self.path.is_empty() {
            CliError::input(format!("{}: {message}", self.file))
        } else {
            CliError::input(format!("{}: field `{}`: {message}", self.file, self.path))
        }
    }
}

pub fn read_json(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: invalid JSON: {e}", path.display())))
}

fn object<'v>(v: &'v Value, at: &Field) -> CliResult<&'v Map<String, Value>> {
    v.as_object().ok_or_else(|| at.err("expected an object"))
}

fn array<'v>(v: &'v Value, at: &Field) -> CliResult<&'v Vec<Value>> {
    v.as_array().ok_or_else(|| at.err("expected an array"))
}

fn required<'v>(obj: &'v Map<String, Value>, key: &str, at: &Field) -> CliResult<&'v Value> {
    obj.get(key).ok_or_else(|| at.key(key).err("missing"))
}

fn unit_value<V: Scalar>(v: &Value, at: &Field) -> CliResult<V> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(at.err("expected a fraction string such as \"1/2\"")),
    };
    let value = V::parse(&text).map_err(|e| at.err(e))?;
    if !value.is_unit() {
        return Err(at.err(format!("value {text} lies outside [0, 1]")));
    }
    Ok(value)
}

fn labels(v: &Value, at: &Field) -> CliResult<FiniteSpace> {
    let names = array(v, at)?
        .iter()
        .enumerate()
        .map(|(i, l)| l.as_str().map(str::to_string).ok_or_else(|| at.item(i).err("expected a string label")))
        .collect::<CliResult<Vec<_>>>()?;
    FiniteSpace::new(names).map_err(|e| at.err(e))
}

fn same_elements(a: &FiniteSpace, b: &FiniteSpace) -> bool {
    a.len() == b.len() && a.labels().iter().all(|l| b.index_of(l).is_some())
}

/// Parses `{"players": n, "strategies": [[...], ...], "payoffs": [{"a,b": "1/2", ...}, ...]}`.
pub fn parse_game<V: Scalar>(v: &Value, file: &str) -> CliResult<Game<V>> {
    let root = Field::root(file);
    let obj = object(v, &root)?;
    let strategies_at = root.key("strategies");
    let strategies = array(required(obj, "strategies", &root)?, &strategies_at)?
        .iter()
        .enumerate()
        .map(|(i, s)| labels(s, &strategies_at.item(i)))
        .collect::<CliResult<Vec<_>>>()?;
    if let Some(p) = obj.get("players") {
        let n = p.as_u64().ok_or_else(|| root.key("players").err("expected a positive integer"))?;
        if n as usize != strategies.len() {
            return Err(root
                .key("players")
                .err(format!("says {n} but {} strategy sets are given", strategies.len())));
        }
    }
    let n = strategies.len();
    if n < 2 {
        return Err(strategies_at.err("a game needs at least two players"));
    }
    let counts: Vec<usize> = strategies.iter().map(FiniteSpace::len).collect();
    let size = counts
        .iter()
        .try_fold(1usize, |acc, &c| acc.checked_mul(c))
        .filter(|&s| s <= capeq::space::MAX_SPACE_SIZE)
        .ok_or_else(|| strategies_at.err("too many pure profiles"))?;

    let payoffs_at = root.key("payoffs");
    let tables = array(required(obj, "payoffs", &root)?, &payoffs_at)?;
    if tables.len() != n {
        return Err(payoffs_at.err(format!("expected {n} payoff tables, found {}", tables.len())));
    }
    let mut payoffs = Vec::with_capacity(n);
    for (i, table) in tables.iter().enumerate() {
        let at = payoffs_at.item(i);
        let entries = object(table, &at)?;
        let mut values: Vec<Option<V>> = vec![None; size];
        for (key, raw) in entries {
            let here = at.entry(key);
            let parts: Vec<&str> = key.split(',').map(str::trim).collect();
            if parts.len() != n {
                return Err(here.err(format!("expected {n} comma-separated strategies")));
            }
            let mut index = 0;
            for (j, part) in parts.iter().enumerate() {
                let c = strategies[j]
                    .index_of(part)
                    .ok_or_else(|| here.err(format!("unknown strategy {part:?} for player {}", j + 1)))?;
                index = index * counts[j] + c;
            }
            if values[index].is_some() {
                return Err(here.err("duplicate profile"));
            }
            values[index] = Some(unit_value(raw, &here)?);
        }
        let mut table = Vec::with_capacity(size);
        for (index, v) in values.into_iter().enumerate() {
            match v {
                Some(v) => table.push(v),
                None => return Err(at.err(format!("missing profile \"{}\"", profile_key(&strategies, index)))),
            }
        }
        payoffs.push(table);
    }
    Game::new(strategies, payoffs).map_err(|e| root.err(e))
}

fn profile_key(strategies: &[FiniteSpace], mut index: usize) -> String {
    let mut parts = vec![""; strategies.len()];
    for (slot, s) in parts.iter_mut().zip(strategies).rev() {
        *slot = s.label(index % s.len());
        index /= s.len();
    }
    parts.join(",")
}

pub fn game_to_json<V: Scalar>(game: &Game<V>) -> Value {
    let strategies = game.strategy_spaces();
    let size = game.profiles().len();
    let payoffs: Vec<Value> = (0..game.players())
        .map(|i| {
            let table = game.payoff_table(i);
            let map: Map<String, Value> = (0..size)
                .map(|k| (profile_key(strategies, k), Value::String(table[k].to_text())))
                .collect();
            Value::Object(map)
        })
        .collect();
    serde_json::json!({
        "players": game.players(),
        "strategies": strategies.iter().map(|s| s.labels().to_vec()).collect::<Vec<_>>(),
        "payoffs": payoffs,
    })
}

/// Parses a capacity file. With `expected`, the file must describe a
/// capacity on that space (element order in the file is free).
pub fn parse_capacity<V: Scalar>(v: &Value, file: &str, expected: Option<&FiniteSpace>) -> CliResult<Measure<V>> {
    let root = Field::root(file);
    let obj = object(v, &root)?;
    let kind = match obj.get("kind") {
        None => "possibility",
        Some(k) => k.as_str().ok_or_else(|| root.key("kind").err("expected a string"))?,
    };
    let declared = obj.get("space").map(|s| labels(s, &root.key("space"))).transpose()?;
    if let (Some(d), Some(e)) = (&declared, expected) {
        if !same_elements(d, e) {
            return Err(root.key("space").err(format!(
                "expected the elements {:?}, found {:?}",
                e.labels(),
                d.labels()
            )));
        }
    }
    match kind {
        "possibility" | "necessity" => {
            let at = root.key("density");
            let entries = object(required(obj, "density", &root)?, &at)?;
            let space = match (expected, declared) {
                (Some(e), _) => e.clone(),
                (None, Some(d)) => d,
                (None, None) => FiniteSpace::new(entries.keys().cloned()).map_err(|e| at.err(e))?,
            };
            let mut density: Vec<Option<V>> = vec![None; space.len()];
            for (key, raw) in entries {
                let here = at.entry(key);
                let x = space.index_of(key).ok_or_else(|| here.err("unknown element"))?;
                density[x] = Some(unit_value(raw, &here)?);
            }
            let density = density
                .into_iter()
                .enumerate()
                .map(|(x, d)| d.ok_or_else(|| at.err(format!("missing element {:?}", space.label(x)))))
                .collect::<CliResult<Vec<_>>>()?;
            let p = PossibilityCapacity::new(space, density).map_err(|e| at.err(e))?;
            Ok(if kind == "necessity" {
                Measure::Necessity(NecessityCapacity::from_possibility(p))
            } else {
                Measure::Possibility(p)
            })
        }
        "general" => {
            let at = root.key("values");
            let entries = object(required(obj, "values", &root)?, &at)?;
            let space = match (expected, declared) {
                (Some(e), _) => e.clone(),
                (None, Some(d)) => d,
                (None, None) => {
                    let singles = entries.keys().filter(|k| !k.is_empty() && !k.contains(','));
                    FiniteSpace::new(singles.map(|k| k.trim().to_string())).map_err(|e| at.err(e))?
                }
            };
            if space.len() > capeq::space::MAX_GENERAL_SIZE {
                return Err(at.err(format!(
                    "general capacities support at most {} elements",
                    capeq::space::MAX_GENERAL_SIZE
                )));
            }
            let mut table: Vec<Option<V>> = vec![None; space.subset_count()];
            for (key, raw) in entries {
                let here = at.entry(key);
                let subset = parse_listed_subset(&space, key).map_err(|m| here.err(m))?;
                let slot = &mut table[subset.bits() as usize];
                if slot.is_some() {
                    return Err(here.err("duplicate subset"));
                }
                *slot = Some(unit_value(raw, &here)?);
            }
            let table = table
                .into_iter()
                .enumerate()
                .map(|(m, v)| {
                    v.ok_or_else(|| {
                        at.err(format!("missing subset \"{}\"", space.format_subset(Subset::from_bits(m as u64))))
                    })
                })
                .collect::<CliResult<Vec<_>>>()?;
            let c = Capacity::new(space, table).map_err(|e| at.err(e))?;
            Ok(Measure::General(c))
        }
        other => Err(root
            .key("kind")
            .err(format!("unknown kind {other:?} (expected possibility, necessity or general)"))),
    }
}

/// Like [`FiniteSpace::parse_subset`] but rejects repeated elements.
fn parse_listed_subset(space: &FiniteSpace, key: &str) -> Result<Subset, String> {
    let mut subset = Subset::EMPTY;
    if key.trim().is_empty() {
        return Ok(subset);
    }
    for part in key.split(',').map(str::trim) {
        let x = space.index_of(part).ok_or_else(|| format!("unknown element {part:?}"))?;
        if subset.contains(x) {
            return Err(format!("element {part:?} listed twice"));
        }
        subset = subset.with(x);
    }
    Ok(subset)
}

pub fn capacity_to_json<V: Scalar>(m: &Measure<V>) -> Value {
    let density_json = |p: &PossibilityCapacity<V>, kind: &str| {
        let space = SetFunction::space(p);
        let density: Map<String, Value> = space
            .labels()
            .iter()
            .zip(p.density())
            .map(|(l, d)| (l.clone(), Value::String(d.to_text())))
            .collect();
        serde_json::json!({ "space": space.labels(), "kind": kind, "density": density })
    };
    match m {
        Measure::Possibility(p) => density_json(p, "possibility"),
        Measure::Necessity(n) => density_json(n.possibility(), "necessity"),
        Measure::General(c) => {
            let space = SetFunction::space(c);
            let values: Map<String, Value> = Subset::all(space.len())
                .map(|s| (space.format_subset(s), Value::String(c.values()[s.bits() as usize].to_text())))
                .collect();
            serde_json::json!({ "space": space.labels(), "kind": "general", "values": values })
        }
    }
}

/// Parses `{"space": [...], "values": {"a": "1/2", ...}}`.
pub fn parse_function<V: Scalar>(v: &Value, file: &str) -> CliResult<FuzzyFunction<V>> {
    let root = Field::root(file);
    let obj = object(v, &root)?;
    let at = root.key("values");
    let entries = object(required(obj, "values", &root)?, &at)?;
    let space = match obj.get("space") {
        Some(s) => labels(s, &root.key("space"))?,
        None => FiniteSpace::new(entries.keys().cloned()).map_err(|e| at.err(e))?,
    };
    let mut values: Vec<Option<V>> = vec![None; space.len()];
    for (key, raw) in entries {
        let here = at.entry(key);
        let x = space.index_of(key).ok_or_else(|| here.err("unknown element"))?;
        values[x] = Some(unit_value(raw, &here)?);
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(x, v)| v.ok_or_else(|| at.err(format!("missing element {:?}", space.label(x)))))
        .collect::<CliResult<Vec<_>>>()?;
    FuzzyFunction::new(space, values).map_err(|e| root.err(e))
}
