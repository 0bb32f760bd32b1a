use proptest::prelude::*;
use reptile_core::algebra::{AlgebraicValue, Cutoff};
use reptile_core::qlattice::Problem;
use reptile_core::spectrum::{build_index, multiplicity_by_factorization, r2, rect_multiplicity};

fn r2_brute(z: i64) -> u64 {
    let r = (z as f64).sqrt() as i64 + 1;
    let mut c = 0;
    for a in -r..=r {
        for b in -r..=r {
            if a * a + b * b == z {
                c += 1;
            }
        }
    }
    c
}

#[test]
fn r2_matches_brute_force() {
    for z in 0..=600 {
        assert_eq!(r2(z as u64), r2_brute(z), "z = {z}");
    }
    assert_eq!(r2(25), 12);
    assert_eq!(r2(3), 0);
}

#[test]
fn counting_at_and_between_eigenvalues() {
    let index = build_index(Problem::triangle(), &Cutoff::integer(1, 60)).unwrap();
    let at = index.counting(&AlgebraicValue::from_integer(1, 25)).unwrap();
    assert_eq!(at.multiplicity, 2);
    assert_eq!(at.at_most, at.below + 2);
    assert_eq!(at.position, at.below + 1);
    let between = index.counting(&AlgebraicValue::from_integer(1, 7)).unwrap();
    assert_eq!((between.below, between.multiplicity), (5, 0));
    assert_eq!(index.level_at_position(at.position as usize).unwrap().members.len(), 2);
}

#[test]
fn four_dimensional_multiplicities() {
    let v = AlgebraicValue::parse(4, "9 + 9*g^2").unwrap();
    assert_eq!(multiplicity_by_factorization(4, &v).unwrap(), rect_multiplicity(9).pow(2));
    assert!(multiplicity_by_factorization(3, &AlgebraicValue::from_integer(3, 9)).is_err());
}

proptest! {
    #[test]
    fn rectangle_multiplicity_is_a_lattice_count(c in 0u64..3000) {
        let brute = (0..=c.isqrt()).filter(|a| {
            let rest = c - a * a;
            rest % 2 == 0 && (rest / 2).isqrt().pow(2) == rest / 2
        }).count() as u64;
        prop_assert_eq!(rect_multiplicity(c), brute);
    }
}
