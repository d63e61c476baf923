mod common;

use capeq::{
    support_check, tensor_density, tensor_general, tensor_n, Capacity, Execution, FiniteSpace, Measure,
    PossibilityCapacity, ProductSpace, Rational, SetFunction, Subset, TNorm, TensorForm,
};
use common::*;
use rand::Rng;

fn marginals_hold(t: &Capacity<Rational>, mu1: &dyn SetFunction<Rational>, mu2: &dyn SetFunction<Rational>) {
    let product = ProductSpace::new(vec![mu1.space().clone(), mu2.space().clone()]).unwrap();
    for a in Subset::all(mu1.space().len()) {
        let cyl = product.rectangle(&[a, mu2.space().full()]);
        assert_eq!(t.measure(cyl), mu1.measure(a));
    }
    for b in Subset::all(mu2.space().len()) {
        let cyl = product.rectangle(&[mu1.space().full(), b]);
        assert_eq!(t.measure(cyl), mu2.measure(b));
    }
}

#[test]
fn density_and_general_forms_coincide_up_to_4x4() {
    let mut rng = rng(31);
    for n1 in 1..=4 {
        for n2 in 1..=4 {
            for _ in 0..4 {
                let (x1, x2) = (space(n1), space(n2));
                let p1 = random_density(&mut rng, &x1, 4);
                let p2 = random_density(&mut rng, &x2, 4);
                for ast in TNorm::ALL {
                    let d = tensor_density(&p1, &p2, ast).unwrap().to_capacity().unwrap();
                    let g = tensor_general(&p1, &p2, ast, Execution::Sequential).unwrap();
                    assert_eq!(d, g, "{n1}x{n2} {ast}");
                    marginals_hold(&d, &p1, &p2);
                }
            }
        }
    }
}

#[test]
fn general_marginals_for_arbitrary_capacities() {
    let mut rng = rng(32);
    for _ in 0..60 {
        let x1 = space(rng.gen_range(1..=4));
        let x2 = space(rng.gen_range(1..=4));
        let mu1 = random_capacity(&mut rng, &x1, 6);
        let mu2 = random_capacity(&mut rng, &x2, 6);
        for ast in TNorm::ALL {
            let t = tensor_general(&mu1, &mu2, ast, Execution::Sequential).unwrap();
            marginals_hold(&t, &mu1, &mu2);
            // The result satisfies the capacity axioms.
            Capacity::new(t.space().clone(), t.values().to_vec()).unwrap();
        }
    }
}

/// `max { t : μ1({x : μ2(B_x) ≥ t}) ≥ t }`, scanning every value that can
/// be a breakpoint.
fn max_form(mu1: &Capacity<Rational>, mu2: &Capacity<Rational>, b: Subset) -> Rational {
    let (n1, n2) = (mu1.space().len(), mu2.space().len());
    let slices: Vec<Rational> = (0..n1)
        .map(|x| {
            let row = Subset::from_indices((0..n2).filter(|&y| b.contains(x * n2 + y)));
            mu2.measure(row)
        })
        .collect();
    let mut candidates: Vec<Rational> = slices.clone();
    candidates.extend(mu1.values().iter().copied());
    candidates.push(q(0, 1));
    candidates
        .into_iter()
        .filter(|t| {
            let k = Subset::from_indices((0..n1).filter(|&x| slices[x] >= *t));
            mu1.measure(k) >= *t
        })
        .max()
        .unwrap()
}

#[test]
fn minimum_case_matches_max_form() {
    let mut rng = rng(33);
    for _ in 0..80 {
        let x1 = space(rng.gen_range(1..=3));
        let x2 = space(rng.gen_range(1..=3));
        let mu1 = random_capacity(&mut rng, &x1, 5);
        let mu2 = random_capacity(&mut rng, &x2, 5);
        let t = tensor_general(&mu1, &mu2, TNorm::Minimum, Execution::Sequential).unwrap();
        for b in Subset::all(x1.len() * x2.len()) {
            assert_eq!(t.measure(b), max_form(&mu1, &mu2, b));
        }
    }
}

#[test]
fn support_property_randomized() {
    let mut rng = rng(34);
    for trial in 0..100 {
        let factors_count = rng.gen_range(2..=3);
        let ast = TNorm::ALL[trial % 3];
        let mut factors = Vec::new();
        let mut supports = Vec::new();
        for _ in 0..factors_count {
            let n = rng.gen_range(1..=if factors_count == 2 { 4 } else { 2 });
            let x = space(n);
            let support = Subset::from_bits(rng.gen_range(1..1u64 << n));
            let m = if trial % 2 == 0 {
                Measure::General(random_capacity_supported(&mut rng, &x, 6, support))
            } else {
                let mut p = random_density(&mut rng, &x, 6).density().to_vec();
                for (i, v) in p.iter_mut().enumerate() {
                    if !support.contains(i) {
                        *v = q(0, 1);
                    }
                }
                let first = support.iter().next().unwrap();
                p[first] = q(1, 1);
                Measure::Possibility(PossibilityCapacity::new(x, p).unwrap())
            };
            factors.push(m);
            supports.push(support);
        }
        assert!(support_check(&factors, &supports, ast, Execution::Sequential).unwrap());
    }
}

#[test]
fn monotone_in_both_factors() {
    let mut rng = rng(35);
    for _ in 0..40 {
        let x1 = space(rng.gen_range(1..=3));
        let x2 = space(rng.gen_range(1..=3));
        let mu1 = random_capacity(&mut rng, &x1, 5);
        let mu2 = random_capacity(&mut rng, &x2, 5);
        let big1 = mu1.join(&random_capacity(&mut rng, &x1, 5)).unwrap();
        let big2 = mu2.join(&random_capacity(&mut rng, &x2, 5)).unwrap();
        let p1 = random_density(&mut rng, &x1, 5);
        let p2 = random_density(&mut rng, &x2, 5);
        let bp1 = PossibilityCapacity::new(x1.clone(), p1.density().iter().map(|v| (*v + q(1, 5)).min(q(1, 1))).collect()).unwrap();
        for ast in TNorm::ALL {
            let small = tensor_general(&mu1, &mu2, ast, Execution::Sequential).unwrap();
            let large = tensor_general(&big1, &big2, ast, Execution::Sequential).unwrap();
            assert!(small.le(&large).unwrap());
            let ds = tensor_density(&p1, &p2, ast).unwrap().to_capacity().unwrap();
            let dl = tensor_density(&bp1, &p2, ast).unwrap().to_capacity().unwrap();
            assert!(ds.le(&dl).unwrap());
        }
    }
}

#[test]
fn density_form_is_associative_on_2x2x2() {
    let mut rng = rng(36);
    for _ in 0..50 {
        let x = space(2);
        let (a, b, c) = (random_density(&mut rng, &x, 6), random_density(&mut rng, &x, 6), random_density(&mut rng, &x, 6));
        for ast in TNorm::ALL {
            let left = tensor_density(&tensor_density(&a, &b, ast).unwrap(), &c, ast).unwrap();
            let right = tensor_density(&a, &tensor_density(&b, &c, ast).unwrap(), ast).unwrap();
            assert_eq!(left, right);
            let folded = tensor_n(&[a.clone().into(), b.clone().into(), c.clone().into()], ast, TensorForm::Density, Execution::Sequential).unwrap();
            assert_eq!(folded.as_possibility().unwrap(), &left);
        }
    }
}

/// Records whether general tensors of necessity capacities stay necessity
/// capacities, without asserting either answer.
#[test]
fn necessity_products_are_recorded() {
    let mut rng = rng(37);
    let mut tally = [(0usize, 0usize); 3];
    for _ in 0..60 {
        let x1 = space(rng.gen_range(1..=3));
        let x2 = space(rng.gen_range(1..=3));
        let n1 = random_density(&mut rng, &x1, 4).dual();
        let n2 = random_density(&mut rng, &x2, 4).dual();
        for (k, ast) in TNorm::ALL.into_iter().enumerate() {
            let t = tensor_general(&n1, &n2, ast, Execution::Sequential).unwrap();
            tally[k].1 += 1;
            if t.is_necessity() {
                tally[k].0 += 1;
            }
        }
    }
    for (ast, (yes, total)) in TNorm::ALL.iter().zip(tally) {
        println!("necessity ⊛[{ast}] necessity is a necessity capacity in {yes}/{total} trials");
    }
}

#[test]
fn parallel_and_sequential_are_identical() {
    let mut rng = rng(38);
    for _ in 0..10 {
        let (x1, x2): (FiniteSpace, FiniteSpace) = (space(4), space(4));
        let mu1 = random_capacity(&mut rng, &x1, 7);
        let mu2 = random_capacity(&mut rng, &x2, 7);
        for ast in TNorm::ALL {
            let seq = tensor_general(&mu1, &mu2, ast, Execution::Sequential).unwrap();
            let par = tensor_general(&mu1, &mu2, ast, Execution::Parallel).unwrap();
            assert_eq!(seq, par);
        }
    }
}
