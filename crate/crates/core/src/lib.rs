//! Fuzzy-measure game theory on finite spaces.
//!
//! Capacities (monotone normalized set functions), possibility and necessity
//! capacities, t-normed integrals, t-norm generated tensor products, and
//! equilibria under uncertainty for n-player games whose players hold
//! capacity beliefs about their opponents.
//!
//! All computations are generic over [`Scalar`]. Use [`Rational`] for exact
//! results and `f64` for the tolerance-based mode.
//!
//! ```
//! use capeq::{FiniteSpace, FuzzyFunction, PossibilityCapacity, Rational, Scalar, TNorm};
//!
//! let x = FiniteSpace::new(["a", "b"]).unwrap();
//! let half = Rational::from_ratio(1, 2);
//! let nu = PossibilityCapacity::new(x.clone(), vec![Rational::one(), half]).unwrap();
//! let f = FuzzyFunction::new(x, vec![Rational::zero(), half]).unwrap();
//! let value = capeq::tnormed_integral(&f, &nu, TNorm::Product).unwrap();
//! assert_eq!(value, Rational::from_ratio(1, 4));
//! ```

pub mod capacity;
pub mod equilibrium;
pub mod error;
pub mod exec;
pub mod fuzzy_integral;
pub mod reproduction;
pub mod scalar;
pub mod space;
pub mod tensor;
pub mod tnorm;

pub use capacity::{interval_contains, Capacity, Measure, MeasureKind, NecessityCapacity, PossibilityCapacity, SetFunction};
pub use equilibrium::{
    induced_beliefs, mixed_expected_payoff, search_equilibria, verify_capacity_nash, verify_equilibrium,
    BeliefProfile, EquilibriumCertificate, FoundEquilibrium, Game, NashReport, SearchMode, SearchReport,
    StrategyProfile,
};
pub use error::{Error, ParseValueError, Result};
pub use exec::Execution;
pub use fuzzy_integral::{possibility_integral, sugeno_integral, tnormed_integral, FuzzyFunction};
pub use scalar::{Rational, Scalar};
pub use space::{FiniteSpace, ProductSpace, Subset};
pub use tensor::{support_check, tensor_density, tensor_general, tensor_n, tensor_n_density, tensor_n_general, TensorForm};
pub use tnorm::{check_tnorm_laws, LawReport, TNorm};
