use reptile_core::algebra::{AlgebraicValue, Cutoff};
use reptile_core::courant::{classify_box, classify_triangle, explain, sharp_positions, Reason, Verdict, Witness};
use reptile_core::eigenfn::EigenfunctionCombo;
use reptile_core::nodal::count_grid;

fn verdicts(domain: &str, cutoff: i64) -> Vec<Verdict> {
    match domain {
        "triangle" => classify_triangle(&Cutoff::integer(1, cutoff)).unwrap(),
        "box2" => classify_box(2, &Cutoff::integer(2, cutoff)).unwrap(),
        "box3" => classify_box(3, &Cutoff::integer(3, cutoff)).unwrap(),
        _ => unreachable!(),
    }
}

#[test]
fn grid_counts_confirm_simple_verdicts() {
    for (domain, cutoff) in [("triangle", 150), ("box2", 100), ("box3", 100)] {
        for v in verdicts(domain, cutoff).iter().filter(|v| v.multiplicity == 1) {
            let nu = count_grid(&EigenfunctionCombo::basis(&v.members[0]), None).unwrap().nu;
            if v.sharp {
                assert_eq!(nu, v.spectral_position, "{domain} {}", v.value);
            } else {
                assert!(nu < v.spectral_position, "{domain} {}: ν = {nu}", v.value);
            }
        }
    }
}

#[test]
fn every_level_gets_one_consistent_verdict() {
    for (domain, cutoff) in [("triangle", 2000), ("box2", 600), ("box3", 200)] {
        let vs = verdicts(domain, cutoff);
        let mut next = 1;
        for v in &vs {
            assert_eq!(v.position, next, "{domain}");
            assert_eq!(v.spectral_position as usize, v.position);
            assert_eq!(v.sharp, v.reason.is_sharp_reason(), "{domain} {}", v.value);
            assert_eq!(v.members.len(), v.multiplicity);
            if let Some(core) = &v.core {
                assert_eq!(core.core.scale_gamma2(core.k as i32).unwrap(), v.value);
            }
            match v.reason {
                Reason::MultipleEigenvalue => assert!(v.multiplicity > 1),
                Reason::OddBoundary => assert_eq!(v.core.as_ref().unwrap().k, 0),
                Reason::SubdomainMultiplicity | Reason::ReferenceSetStrict => {
                    assert!(v.core.as_ref().unwrap().k >= 1)
                }
                _ => {}
            }
            next += v.multiplicity;
        }
    }
}

#[test]
fn verdicts_do_not_depend_on_the_cutoff() {
    for (domain, small, large) in [("triangle", 300, 1500), ("box2", 100, 500), ("box3", 60, 150)] {
        let a = verdicts(domain, small);
        let b = verdicts(domain, large);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.value, y.value);
            assert_eq!((x.position, x.sharp, x.reason), (y.position, y.sharp, y.reason), "{domain} {}", x.value);
        }
    }
}

#[test]
fn triangle_reasons_by_shape() {
    let vs = verdicts("triangle", 400);
    let find = |c: i64| vs.iter().find(|v| v.value == AlgebraicValue::from_integer(1, c)).unwrap();
    assert_eq!(find(25).reason, Reason::OddBoundary);
    assert_eq!(find(18).reason, Reason::ReferenceSetStrict);
    assert_eq!(find(36).reason, Reason::ReferenceSetStrict);
    assert_eq!(find(16).reason, Reason::ReferenceSetStrict);
    assert_eq!(find(20).reason, Reason::SubdomainMultiplicity);
    assert_eq!(find(40).reason, Reason::SubdomainMultiplicity);
    match &find(18).witness {
        Witness::ReferenceSet { size, extra, .. } => {
            assert_eq!(*size, 10);
            assert_eq!(extra.entries(), &[4, 0]);
        }
        w => panic!("{w:?}"),
    }
    match &find(40).witness {
        Witness::SubdomainPair { pairs, .. } => assert_eq!(*pairs, [(3, 1), (1, 3)]),
        w => panic!("{w:?}"),
    }
    assert!(explain(find(18)).contains("reference set"));
}

#[test]
fn box_preconditions_and_sharp_sets() {
    assert!(classify_box(2, &Cutoff::integer(2, 5)).is_err());
    assert!(classify_box(1, &Cutoff::integer(1, 100)).is_err());
    for n in [4u32, 5] {
        let vs = classify_box(n, &Cutoff::integer(n, 60)).unwrap();
        assert_eq!(sharp_positions(&vs), [1, 2], "n = {n}");
    }
    let vs = verdicts("box2", 40);
    let values: Vec<String> = vs.iter().filter(|v| v.sharp).map(|v| v.value.to_string()).collect();
    assert_eq!(values, ["0", "1", "3", "6"]);
}
