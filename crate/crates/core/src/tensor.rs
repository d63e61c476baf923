//! Tensor products of capacities generated by a t-norm.
//!
//! Two constructions are provided. The density form combines possibility
//! densities pointwise, `[μ1 ⊛ μ2](x, y) = [μ1](x) ∗ [μ2](y)`. The general
//! form works for arbitrary capacities:
//!
//! ```text
//! (μ1 ⊛ μ2)(B) = max_t  μ1({x : μ2(B_x) ≥ t}) ∗ t,   B_x = {y : (x, y) ∈ B}
//! ```
//!
//! The maximum runs over the slice values `μ2(B_x)` together with 0, which is
//! exact for the same step-function reason as the t-normed integral. Both
//! forms agree on possibility capacities. n-fold products are left folds.

use crate::capacity::{Capacity, Measure, PossibilityCapacity, SetFunction};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::fuzzy_integral::sorted_distinct;
use crate::scalar::{max_value, Scalar};
use crate::space::{FiniteSpace, ProductSpace, Subset};
use crate::tnorm::TNorm;

/// Which construction [`tensor_n`] should use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorForm {
    Density,
    General,
}

impl TensorForm {
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "density" => Ok(TensorForm::Density),
            "general" => Ok(TensorForm::General),
            other => Err(Error::Unsupported(format!("tensor form `{other}`"))),
        }
    }
}

/// Density form of the binary tensor product.
pub fn tensor_density<V: Scalar>(
    mu1: &PossibilityCapacity<V>,
    mu2: &PossibilityCapacity<V>,
    ast: TNorm,
) -> Result<PossibilityCapacity<V>> {
    tensor_n_density(&[mu1.clone(), mu2.clone()], ast)
}

/// Density form of the n-fold product: the density of a tuple is the left
/// `ast`-fold of the factor densities.
pub fn tensor_n_density<V: Scalar>(
    factors: &[PossibilityCapacity<V>],
    ast: TNorm,
) -> Result<PossibilityCapacity<V>> {
    if factors.len() == 1 {
        return Ok(factors[0].clone());
    }
    let product = ProductSpace::new(factors.iter().map(|f| f.space().clone()).collect())?;
    let density = (0..product.len())
        .map(|idx| {
            let coords = product.coords(idx);
            ast.fold(coords.iter().zip(factors).map(|(&c, f)| &f.density()[c]))
        })
        .collect();
    PossibilityCapacity::new(product.flat().clone(), density)
}

/// General form of the binary tensor product, materialized on every subset
/// of the product (at most 20 elements).
pub fn tensor_general<V, A, B>(mu1: &A, mu2: &B, ast: TNorm, exec: Execution) -> Result<Capacity<V>>
where
    V: Scalar,
    A: SetFunction<V> + ?Sized,
    B: SetFunction<V> + ?Sized,
{
    let product = ProductSpace::new(vec![mu1.space().clone(), mu2.space().clone()])?;
    product.flat().require_general_size()?;
    let n1 = mu1.space().len();
    let n2 = mu2.space().len();
    let row = Subset::full(n2).bits();

    let values = exec.map_range(1usize << product.len(), |mask| {
        let b = mask as u64;
        let slices: Vec<V> = (0..n1)
            .map(|x| mu2.measure(Subset::from_bits((b >> (x * n2)) & row)))
            .collect();
        general_value(mu1, &slices, ast)
    });
    Ok(Capacity::from_table_unchecked(product.flat().clone(), values))
}

/// `max_t μ1({x : slices[x] ≥ t}) ∗ t` over the slice values and 0.
fn general_value<V: Scalar, A: SetFunction<V> + ?Sized>(mu1: &A, slices: &[V], ast: TNorm) -> V {
    let mut levels = slices.to_vec();
    levels.push(V::zero());
    let candidates = sorted_distinct(levels).into_iter().map(|t| {
        let k_t = Subset::from_indices((0..slices.len()).filter(|&x| !slices[x].definitely_lt(&t)));
        ast.eval(&mu1.measure(k_t), &t)
    });
    max_value(candidates).unwrap_or_else(V::zero)
}

/// n-fold general tensor, left-associated: `((μ1 ⊛ μ2) ⊛ μ3) ⊛ ...`.
pub fn tensor_n_general<V: Scalar>(
    factors: &[Measure<V>],
    ast: TNorm,
    exec: Execution,
) -> Result<Capacity<V>> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::InvalidSpace("a tensor product needs at least one factor".into()))?;
    let mut acc = first.materialize()?;
    for next in rest {
        acc = tensor_general(&acc, next, ast, exec)?;
    }
    Ok(acc)
}

/// n-fold tensor product. A single factor is returned unchanged. With
/// [`TensorForm::Density`] every factor must be a possibility capacity.
pub fn tensor_n<V: Scalar>(
    factors: &[Measure<V>],
    ast: TNorm,
    form: TensorForm,
    exec: Execution,
) -> Result<Measure<V>> {
    if factors.is_empty() {
        return Err(Error::InvalidSpace("a tensor product needs at least one factor".into()));
    }
    if factors.len() == 1 {
        return Ok(factors[0].clone());
    }
    match form {
        TensorForm::Density => {
            let densities = factors
                .iter()
                .map(|f| {
                    f.as_possibility().cloned().ok_or_else(|| {
                        Error::Unsupported(format!(
                            "density tensor of a {} capacity",
                            f.kind().name()
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Measure::Possibility(tensor_n_density(&densities, ast)?))
        }
        TensorForm::General => Ok(Measure::General(tensor_n_general(factors, ast, exec)?)),
    }
}

/// The natural form for a list of factors: density when all are
/// possibility capacities, general otherwise.
pub fn natural_form<V: Scalar>(factors: &[Measure<V>]) -> TensorForm {
    if factors.iter().all(|f| f.as_possibility().is_some()) {
        TensorForm::Density
    } else {
        TensorForm::General
    }
}

/// Given `μ_i(X_i ∖ A_i) = 0` for each factor, reports whether the tensor
/// product gives zero mass outside `∏ A_i`.
pub fn support_check<V: Scalar>(
    factors: &[Measure<V>],
    supports: &[Subset],
    ast: TNorm,
    exec: Execution,
) -> Result<bool> {
    if factors.len() != supports.len() || factors.is_empty() {
        return Err(Error::InvalidSpace(format!(
            "{} factors but {} supports",
            factors.len(),
            supports.len()
        )));
    }
    for (factor, (mu, support)) in factors.iter().zip(supports).enumerate() {
        let outside = mu.value_of(support.complement(mu.space().len()))?;
        if !outside.is_negligible() {
            return Err(Error::SupportPrecondition {
                factor,
                mass: outside.to_text(),
            });
        }
    }
    let spaces: Vec<FiniteSpace> = factors.iter().map(|f| f.space().clone()).collect();
    let product = ProductSpace::new(spaces)?;
    let tensor = tensor_n(factors, ast, natural_form(factors), exec)?;
    let outside = product.rectangle(supports).complement(product.len());
    Ok(tensor.measure(outside).is_negligible())
}
