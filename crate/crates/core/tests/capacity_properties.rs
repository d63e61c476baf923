mod common;

use capeq::{interval_contains, Capacity, Error, PossibilityCapacity, Rational, Scalar, SetFunction, Subset};
use common::*;
use rand::Rng;

fn pairwise_union_law(c: &Capacity<Rational>) -> bool {
    let n = c.space().subset_count() as u64;
    (0..n).all(|a| {
        (0..n).all(|b| {
            let (a, b) = (Subset::from_bits(a), Subset::from_bits(b));
            c.measure(a.union(b)) == c.measure(a).max(c.measure(b))
        })
    })
}

fn pairwise_intersection_law(c: &Capacity<Rational>) -> bool {
    let n = c.space().subset_count() as u64;
    (0..n).all(|a| {
        (0..n).all(|b| {
            let (a, b) = (Subset::from_bits(a), Subset::from_bits(b));
            c.measure(a.intersection(b)) == c.measure(a).min(c.measure(b))
        })
    })
}

#[test]
fn law_detection_matches_pairwise_oracle() {
    let mut rng = rng(11);
    for trial in 0..300 {
        let x = space(rng.gen_range(1..=4));
        let c = match trial % 3 {
            0 => random_capacity(&mut rng, &x, 4),
            1 => random_density(&mut rng, &x, 4).to_capacity().unwrap(),
            _ => random_density(&mut rng, &x, 4).dual().to_capacity().unwrap(),
        };
        assert_eq!(c.is_possibility(), pairwise_union_law(&c), "{c:?}");
        assert_eq!(c.is_necessity(), pairwise_intersection_law(&c), "{c:?}");
    }
}

#[test]
fn possibility_is_determined_by_density() {
    let mut rng = rng(12);
    for _ in 0..200 {
        let x = space(rng.gen_range(1..=5));
        let c = random_capacity(&mut rng, &x, 3);
        if let Some(p) = c.to_possibility() {
            assert_eq!(p.to_capacity().unwrap(), c);
        } else {
            assert!(!c.is_possibility());
        }
        let p = random_density(&mut rng, &x, 6);
        assert_eq!(p.to_capacity().unwrap().to_possibility().unwrap(), p);
    }
}

#[test]
fn duality_exchanges_classes_and_extremes() {
    let mut rng = rng(13);
    for _ in 0..100 {
        let x = space(rng.gen_range(1..=5));
        let p = random_density(&mut rng, &x, 4).to_capacity().unwrap();
        let d = p.dual();
        assert!(p.is_possibility() && d.is_necessity());
        assert_eq!(d.dual(), p);
        let c = random_capacity(&mut rng, &x, 5);
        assert_eq!(c.dual().dual(), c);
        assert_eq!(c.is_possibility(), c.dual().is_necessity());
        let top = Capacity::<Rational>::greatest(x.clone()).unwrap();
        let least = Capacity::<Rational>::least(x.clone()).unwrap();
        assert_eq!(top.dual(), least);
        assert_eq!(least.dual(), top);
        assert_eq!(c.join(&least).unwrap(), c);
        assert_eq!(c.meet(&top).unwrap(), c);
        assert_eq!(c.join(&top).unwrap(), top);
        assert_eq!(c.meet(&least).unwrap(), least);
        assert!(interval_contains(&least, &top, &c).unwrap());
    }
}

#[test]
fn necessity_capacity_matches_table_dual() {
    let mut rng = rng(14);
    for _ in 0..50 {
        let x = space(rng.gen_range(1..=5));
        let p = random_density(&mut rng, &x, 4);
        let lazy = p.dual();
        let table = p.to_capacity().unwrap().dual();
        assert_eq!(lazy.to_capacity().unwrap(), table);
        for s in Subset::all(x.len()) {
            assert_eq!(lazy.measure(s), Rational::one() - p.measure(s.complement(x.len())));
        }
    }
}

#[test]
fn planted_monotonicity_violations_are_caught() {
    let mut rng = rng(15);
    let mut planted = 0;
    for _ in 0..300 {
        let x = space(rng.gen_range(2..=5));
        let n = x.len();
        let full = (1usize << n) - 1;
        let mut table = random_capacity(&mut rng, &x, 8).values().to_vec();
        // A covering pair F ⊂ G = F ∪ {x} with G ≠ X, then push G below F.
        let f = rng.gen_range(1..full);
        let missing: Vec<usize> = (0..n).filter(|&i| f & (1 << i) == 0).collect();
        let g = f | (1 << missing[rng.gen_range(0..missing.len())]);
        if g == full || table[f] < q(1, 16) {
            continue;
        }
        table[g] = table[f] - q(1, 16);
        planted += 1;
        match Capacity::new(x.clone(), table.clone()) {
            Err(Error::Monotonicity { smaller, larger, smaller_value, larger_value }) => {
                let s = x.parse_subset(smaller.trim_matches(['{', '}'])).unwrap();
                let l = x.parse_subset(larger.trim_matches(['{', '}'])).unwrap();
                assert!(s.is_subset_of(l) && l.len() == s.len() + 1);
                let sv = Rational::parse(&smaller_value).unwrap();
                let lv = Rational::parse(&larger_value).unwrap();
                assert_eq!(sv, table[s.bits() as usize]);
                assert_eq!(lv, table[l.bits() as usize]);
                assert!(sv > lv);
            }
            other => panic!("planted violation not reported: {other:?}"),
        }
    }
    assert!(planted > 100, "only {planted} tables planted");
}

#[test]
fn float_mode_tolerates_rounding() {
    let x = space(2);
    let third = 1.0f64 / 3.0;
    let p = PossibilityCapacity::new(x.clone(), vec![third * 3.0, third]).unwrap();
    assert!(p.to_capacity().unwrap().is_possibility());
    let c = Capacity::new(x, vec![0.0, 0.3, 0.1 + 0.2, 1.0]).unwrap();
    assert!(c.values()[1].approx_eq(&c.values()[2]));
}
