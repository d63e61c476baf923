use thiserror::Error;

/// Failure to read a numeric literal.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseValueError {
    #[error("malformed number `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value {value} lies outside [0, 1]")]
    OutOfUnitInterval { value: String },

    #[error("unknown t-norm `{0}` (expected min, prod or luk)")]
    UnknownTNorm(String),

    #[error("t-norm `{0}` is not continuous and is not supported")]
    DiscontinuousTNorm(String),

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("space has {size} elements but at most {limit} are supported here")]
    SpaceTooLarge { size: usize, limit: usize },

    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("subset {mask:#b} does not fit a space of {size} elements")]
    SubsetOutOfRange { mask: u64, size: usize },

    #[error("table has {got} entries, expected {expected}")]
    TableSize { got: usize, expected: usize },

    #[error("not normalized: {0}")]
    Normalization(String),

    #[error("monotonicity violated: value({smaller}) = {smaller_value} > value({larger}) = {larger_value}")]
    Monotonicity {
        smaller: String,
        larger: String,
        smaller_value: String,
        larger_value: String,
    },

    #[error("invalid game: {0}")]
    InvalidGame(String),

    #[error("player {player} out of range for a {players}-player game")]
    PlayerOutOfRange { player: usize, players: usize },

    #[error("strategy {strategy} out of range for player {player} with {count} strategies")]
    StrategyOutOfRange {
        player: usize,
        strategy: usize,
        count: usize,
    },

    #[error("search needs {required} candidate profiles but the budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("support precondition violated: factor {factor} has mass {mass} outside its support")]
    SupportPrecondition { factor: usize, mass: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Parse(#[from] ParseValueError),
}

pub type Result<T> = std::result::Result<T, Error>;
