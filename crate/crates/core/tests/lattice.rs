use proptest::prelude::*;
use reptile_core::algebra::{AlgebraicValue, Cutoff, Parity};
use reptile_core::qlattice::{
    enumerate_below, reference_set_box, reference_set_triangle, region_below, Bc, Domain, Problem, QuantumNumber,
    TriangleReference,
};
use reptile_core::spectrum::{build_index, odd_core};

fn brute_triangle(bc: Bc, lambda: u64) -> (usize, usize) {
    let lo = if bc == Bc::Dirichlet { 1 } else { 0 };
    let (mut odd, mut even) = (0, 0);
    for m in 0..=lambda.isqrt() + 1 {
        for n in lo..=m {
            let valid = match bc {
                Bc::Neumann => true,
                Bc::Dirichlet => m > n,
            };
            if valid && m * m + n * n < lambda {
                if (m + n) % 2 == 1 {
                    odd += 1;
                } else {
                    even += 1;
                }
            }
        }
    }
    (odd, even)
}

fn brute_rectangle(bc: Bc, lambda: u64) -> usize {
    let lo = if bc == Bc::Dirichlet { 1 } else { 0 };
    let mut count = 0;
    for a in lo..=lambda.isqrt() + 1 {
        for b in lo..=lambda.isqrt() + 1 {
            if a * a + 2 * b * b < lambda {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn enumeration_matches_brute_force() {
    for bc in [Bc::Neumann, Bc::Dirichlet] {
        for lambda in [1u64, 2, 9, 10, 57, 300, 1001] {
            let region = enumerate_below(Problem::new(Domain::Triangle, bc), &Cutoff::integer(1, lambda as i64)).unwrap();
            let (odd, even) = region.parity_split();
            assert_eq!((odd.len(), even.len()), brute_triangle(bc, lambda), "{bc:?} {lambda}");
            let rect = enumerate_below(Problem::new(Domain::Box(2), bc), &Cutoff::integer(2, lambda as i64)).unwrap();
            assert_eq!(rect.len(), brute_rectangle(bc, lambda), "{bc:?} {lambda}");
        }
    }
}

#[test]
fn boundary_bijection_counts() {
    for lambda in 1..=2000i64 {
        let v = AlgebraicValue::from_integer(1, lambda);
        let region = region_below(Problem::triangle(), &v).unwrap();
        let (odd, even) = region.parity_split();
        let boundary = region.right_boundary();
        let be = boundary.iter().filter(|m| m.parity() == Parity::Even).count();
        assert_eq!(odd.len() + be, even.len(), "Neumann λ = {lambda}");

        let region = region_below(Problem::new(Domain::Triangle, Bc::Dirichlet), &v).unwrap();
        let (odd, even) = region.parity_split();
        let bo = region.right_boundary().iter().filter(|m| m.parity() == Parity::Odd).count();
        assert_eq!(odd.len(), even.len() + bo, "Dirichlet λ = {lambda}");
    }
}

#[test]
fn multiplicity_survives_folding() {
    for domain in [Domain::Triangle, Domain::Box(2), Domain::Box(3), Domain::Box(4)] {
        let problem = Problem::new(domain, Bc::Neumann);
        let index = build_index(problem, &Cutoff::integer(problem.ring(), 300)).unwrap();
        for level in index.levels().iter().filter(|l| !l.value.is_zero()) {
            let core = odd_core(&level.value).unwrap();
            let core_level = index.level(&core.core).expect("core lies lower");
            assert_eq!(core_level.multiplicity(), level.multiplicity(), "{domain} {}", level.value);
            assert_eq!(core.core.scale_gamma2(core.k as i32).unwrap(), level.value);
        }
    }
}

#[test]
fn reference_sets_sit_below() {
    let t = Problem::triangle();
    for m in 1..=15u64 {
        let diag = QuantumNumber::new(t, vec![m, m]).unwrap();
        let set = reference_set_triangle(TriangleReference::Diag(m)).unwrap();
        assert_eq!(set.len() as u64, (m + 1) * (m + 2) / 2);
        assert!(set.iter().all(|p| p.value() <= diag.value()));
        let axis = QuantumNumber::new(t, vec![2 * m, 0]).unwrap();
        let set = reference_set_triangle(TriangleReference::Axis(2 * m)).unwrap();
        assert_eq!(set.len() as u64, (m + 1) * (m + 1));
        assert!(set.iter().all(|p| p.value() <= axis.value()));
        if m >= 3 {
            assert!(QuantumNumber::new(t, vec![m + 1, 0]).unwrap().value() < diag.value());
        }
        if m >= 2 {
            assert!(QuantumNumber::new(t, vec![2 * m - 1, 2]).unwrap().value() < axis.value());
        }
    }
    let b = Problem::boxed(3).unwrap();
    let m = QuantumNumber::new(b, vec![2, 1, 3]).unwrap();
    let set = reference_set_box(&m).unwrap();
    assert_eq!(set.len(), 3 * 2 * 4);
    assert!(set.iter().all(|p| p.value() <= m.value()));
}

proptest! {
    #[test]
    fn regions_are_monotone(n in 2u32..=4, a in 1i64..60, extra in 0i64..60) {
        let p = Problem::boxed(n).unwrap();
        let small = enumerate_below(p, &Cutoff::integer(n, a)).unwrap();
        let large = enumerate_below(p, &Cutoff::integer(n, a + extra)).unwrap();
        prop_assert!(small.points().iter().all(|m| large.contains(m)));
        let values = small.values();
        prop_assert!(values.windows(2).all(|w| w[0] <= w[1]));
    }
}
