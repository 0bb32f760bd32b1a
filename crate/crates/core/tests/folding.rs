use std::f64::consts::PI;

use proptest::prelude::*;
use reptile_core::folding::{
    build_frame, contains, fold_point, fold_qn, in_half, partition, partition_count, reflect, subdomain_spectrum_value,
    unfold_point, unfold_qn, Subdomain,
};
use reptile_core::qlattice::{Domain, Problem, QuantumNumber};

#[test]
fn triangle_frame_pieces_match_chain_nodal_domains() {
    // Nodal domains of φ along the chain (1,0) → (1,1) → (2,0) → (2,2) → …,
    // each counted by hand from the closed forms.
    let expected = [2u64, 3, 4, 6, 9, 15, 25, 45, 81];
    for (k, want) in expected.iter().enumerate() {
        assert_eq!(partition_count(Domain::Triangle, k as u32).unwrap(), *want, "k = {k}");
    }
}

#[test]
fn partitions_report_their_pieces() {
    let p = partition(Domain::Box(2), 2).unwrap();
    assert_eq!(p.count, 3);
    assert_eq!(p.subdomains.len(), 3);
    let total: f64 = p.subdomains.iter().map(|s| s.sample_fraction).sum();
    assert!((total - 1.0).abs() < 1e-6);
}

#[test]
fn square_and_rectangle_spectra_are_not_simple() {
    for m in 1..=12u64 {
        for n in 1..m {
            if (m + n) % 2 == 0 {
                continue;
            }
            let target = 2 * (m * m + n * n);
            let mut hits = 0;
            for p in 0..=m + n {
                for q in 0..=m + n {
                    if subdomain_spectrum_value(Subdomain::SquareS, p, q).unwrap().to_f64() as u64 == target {
                        hits += 1;
                    }
                }
            }
            assert!(hits >= 2, "SquareS at ({m},{n})");
            for k in 2..=5u32 {
                let target = (m * m + n * n) << k;
                let mut hits = 0;
                for p in 1..=2 * (m + n) {
                    for q in (1..=2 * (m + n)).step_by(2) {
                        if subdomain_spectrum_value(Subdomain::RectR(k), p, q).unwrap().to_f64() as u64 == target {
                            hits += 1;
                        }
                    }
                }
                assert!(hits >= 2, "RectR({k}) at ({m},{n})");
            }
        }
    }
}

#[test]
fn frames_nest_under_folding() {
    for domain in [Domain::Triangle, Domain::Box(2), Domain::Box(3)] {
        for k in 1..=5u32 {
            let frame = build_frame(domain, k);
            let parent = build_frame(domain, k - 1);
            for p in frame.sample(400, 7) {
                let image = if in_half(domain, &p) {
                    fold_point(domain, &p).unwrap()
                } else {
                    fold_point(domain, &reflect(domain, &p).unwrap()).unwrap()
                };
                assert!(parent.contains_point(&image, 1e-9), "{domain} k={k}: {p:?} ↦ {image:?}");
            }
        }
    }
}

#[test]
fn triangle_frame_sizes() {
    assert_eq!(build_frame(Domain::Triangle, 0).facets.len(), 1);
    assert_eq!(build_frame(Domain::Triangle, 1).facets.len(), 2);
    assert_eq!(build_frame(Domain::Box(2), 3).facets.len(), 8);
}

fn domain_strategy() -> impl Strategy<Value = Domain> {
    prop_oneof![Just(Domain::Triangle), (2u32..=6).prop_map(Domain::Box)]
}

proptest! {
    #[test]
    fn point_maps_invert(domain in domain_strategy(), u in prop::collection::vec(0.001f64..0.999, 6)) {
        let dim = domain.dim();
        let p: Vec<f64> = match domain {
            Domain::Triangle => vec![PI * u[0].max(u[1]), PI * u[0].min(u[1])],
            Domain::Box(_) => u[..dim].iter().zip(domain.edge_lengths()).map(|(t, l)| t * l).collect(),
        };
        prop_assert!(contains(domain, &p));
        let h = unfold_point(domain, &p).unwrap();
        prop_assert!(in_half(domain, &h));
        let back = fold_point(domain, &h).unwrap();
        for (a, b) in back.iter().zip(&p) {
            prop_assert!((a - b).abs() < 1e-12);
        }
        let r = reflect(domain, &reflect(domain, &p).unwrap()).unwrap();
        for (a, b) in r.iter().zip(&p) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn quantum_maps_invert(n in 2u32..=6, m in prop::collection::vec(0u64..=20, 6)) {
        let q = QuantumNumber::new(Problem::boxed(n).unwrap(), m[..n as usize].to_vec()).unwrap();
        let u = unfold_qn(&q).unwrap();
        prop_assert_eq!(fold_qn(&u).unwrap(), q.clone());
        prop_assert_eq!(u.value(), q.value().scale_gamma2(1).unwrap());
    }
}
