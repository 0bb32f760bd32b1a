use proptest::prelude::*;
use reptile_core::algebra::{Cutoff, Parity};
use reptile_core::eigenfn::{interior_point, EigenfunctionCombo, Symmetry};
use reptile_core::folding::{in_half, unfold_point};
use reptile_core::qlattice::{enumerate_below, Bc, Domain, Problem};
use reptile_core::sampling::LowDiscrepancy;
use reptile_core::spectrum::build_index;

const DOMAINS: [Domain; 3] = [Domain::Triangle, Domain::Box(2), Domain::Box(3)];

#[test]
fn parity_decides_symmetry() {
    for domain in DOMAINS {
        for bc in [Bc::Neumann, Bc::Dirichlet] {
            let p = Problem::new(domain, bc);
            for m in enumerate_below(p, &Cutoff::integer(p.ring(), 200)).unwrap().points() {
                let even_fn = (m.parity() == Parity::Even) == (bc == Bc::Neumann);
                let want = if even_fn { Symmetry::Even } else { Symmetry::Odd };
                assert_eq!(EigenfunctionCombo::basis(m).symmetry_check(64, 11), want, "{domain} {bc:?} {m}");
            }
        }
    }
}

#[test]
fn folding_law_on_combinations() {
    for domain in DOMAINS {
        let problem = Problem::new(domain, Bc::Neumann);
        let index = build_index(problem, &Cutoff::integer(problem.ring(), 150)).unwrap();
        let mut seq = LowDiscrepancy::new(domain.dim(), 5);
        let mut checked = 0;
        for level in index.levels().iter().filter(|l| l.parity() == Parity::Even && !l.value.is_zero()) {
            let terms = level
                .members
                .iter()
                .enumerate()
                .map(|(i, m)| (1.0 + 0.37 * i as f64, m.clone()))
                .collect();
            let f = EigenfunctionCombo::new(problem, terms).unwrap();
            let g = f.fold_fn().unwrap();
            assert_eq!(g.unfold_fn().unwrap().terms(), f.terms());
            let scale = f.sup_bound();
            for _ in 0..10 {
                let p = interior_point(domain, &seq.next_point());
                let lhs = g.eval(&p).unwrap();
                let rhs = f.eval(&unfold_point(domain, &p).unwrap()).unwrap();
                assert!((lhs - rhs).abs() <= 1e-12 * scale, "{domain} {}: {lhs} vs {rhs}", level.value);
                checked += 1;
            }
        }
        assert!(checked >= 100, "{domain}: {checked}");
    }
}

#[test]
fn unfolded_functions_are_even() {
    for domain in DOMAINS {
        let problem = Problem::new(domain, Bc::Neumann);
        let index = build_index(problem, &Cutoff::integer(problem.ring(), 80)).unwrap();
        for level in index.levels() {
            let terms = level.members.iter().map(|m| (0.5, m.clone())).collect();
            let f = EigenfunctionCombo::new(problem, terms).unwrap();
            assert_eq!(f.unfold_fn().unwrap().symmetry_check(64, 3), Symmetry::Even, "{domain} {}", level.value);
        }
    }
}

#[test]
fn half_domain_points() {
    let mut seq = LowDiscrepancy::new(2, 0);
    let inside = (0..1000)
        .filter(|_| in_half(Domain::Triangle, &interior_point(Domain::Triangle, &seq.next_point())))
        .count();
    assert!((450..550).contains(&inside), "{inside}");
}

proptest! {
    #[test]
    fn low_discrepancy_points_are_interior(dim in 1usize..8, seed in any::<u64>()) {
        let mut seq = LowDiscrepancy::new(dim, seed);
        for _ in 0..50 {
            let p = seq.next_point();
            prop_assert_eq!(p.len(), dim);
            prop_assert!(p.iter().all(|x| *x > 0.0 && *x < 1.0));
        }
    }
}
