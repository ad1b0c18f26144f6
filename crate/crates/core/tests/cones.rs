use std::collections::BTreeSet;

use conelab_core::exactvec::{PointSet, QnVector};
use conelab_core::facetlab::{cut_roots, ocut_roots, transport_ints};
use conelab_core::generators::{build_cone, ConeId, Family};
use conelab_core::linalg;
use conelab_core::polyhedra::{Cone, DdOptions, NoObserver};
use conelab_core::IntVec;
use num_traits::Signed;

fn largest(family: Family) -> usize {
    match family {
        Family::Met | Family::Hyp | Family::Cut => 6,
        Family::QMet => 4,
        _ => 5,
    }
}

fn smallest(family: Family) -> usize {
    if family.counts_zero_point() {
        4
    } else {
        3
    }
}

fn set(rows: &[IntVec]) -> BTreeSet<IntVec> {
    rows.iter().cloned().collect()
}

#[test]
fn double_description_round_trips() {
    for family in Family::ALL {
        for n in smallest(family)..=largest(family) {
            let id = ConeId::new(family, n);
            let cone = build_cone(&id).unwrap();
            let (rays, facets) = if cone.rays().is_some() {
                let full = cone.clone().with_facets().unwrap();
                let back = Cone::from_inequalities(
                    full.ambient(),
                    full.inequalities().unwrap().to_vec(),
                    full.equalities().to_vec(),
                )
                .unwrap()
                .with_rays()
                .unwrap();
                assert_eq!(
                    set(back.rays().unwrap()),
                    set(cone.rays().unwrap()),
                    "{id}: rays after a round trip"
                );
                assert!(full.certify().unwrap(), "{id}");
                (
                    full.rays().unwrap().to_vec(),
                    full.inequalities().unwrap().to_vec(),
                )
            } else {
                let full = cone.clone().with_rays().unwrap();
                let again = Cone::from_rays(full.ambient(), full.rays().unwrap().to_vec())
                    .unwrap()
                    .with_facets()
                    .unwrap();
                let back = Cone::from_inequalities(
                    again.ambient(),
                    again.inequalities().unwrap().to_vec(),
                    again.equalities().to_vec(),
                )
                .unwrap()
                .with_rays()
                .unwrap();
                assert_eq!(
                    set(back.rays().unwrap()),
                    set(full.rays().unwrap()),
                    "{id}: rays after a round trip"
                );
                assert!(again.certify().unwrap(), "{id}");
                (
                    full.rays().unwrap().to_vec(),
                    again.inequalities().unwrap().to_vec(),
                )
            };
            for f in &facets {
                assert_eq!(
                    &linalg::primitive(f.clone()),
                    f,
                    "{id}: facet not primitive"
                );
                assert!(
                    rays.iter().all(|r| !linalg::dot(f, r).is_negative()),
                    "{id}: facet sign"
                );
            }
        }
    }
}

fn qn_to_arc(g: &[conelab_core::BigInt], n: usize) -> IntVec {
    linalg::primitive_from_rationals(QnVector::from_normalized(n, g).unwrap().expand().coords())
}

#[test]
fn transport_is_sound_and_complete() {
    for n in 3..=5 {
        let cut = build_cone(&ConeId::new(Family::Cut, n + 1))
            .unwrap()
            .with_facets()
            .unwrap();
        let ocut = build_cone(&ConeId::new(Family::OCut, n))
            .unwrap()
            .with_facets()
            .unwrap();
        let mut transported = BTreeSet::new();
        for f in cut.inequalities().unwrap() {
            let contains_l0 = cut_roots(f, n).unwrap().contains(&PointSet::full(n));
            match transport_ints(f, n).unwrap() {
                Some(g) => {
                    assert!(contains_l0);
                    let arc = qn_to_arc(&g, n);
                    assert!(ocut.is_facet(&arc).unwrap().is_facet, "n={n}: {g:?}");
                    assert_eq!(ocut_roots(&g, n).unwrap(), cut_roots(f, n).unwrap());
                    transported.insert(arc);
                }
                None => assert!(!contains_l0),
            }
        }
        let facets: BTreeSet<IntVec> = ocut
            .inequalities()
            .unwrap()
            .iter()
            .map(|r| {
                let q = conelab_core::exactvec::project_to_qn(
                    &conelab_core::ArcVector::from_ints(n, r).unwrap(),
                )
                .0;
                qn_to_arc(&q.normalized(), n)
            })
            .collect();
        assert_eq!(facets, transported, "n={n}");
    }
}

#[test]
fn output_does_not_depend_on_worker_count() {
    let cone = build_cone(&ConeId::new(Family::Cut, 6)).unwrap();
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            let mut c = cone.clone();
            c.compute_facets(&DdOptions::default(), &mut NoObserver, None)
                .unwrap();
            c
        })
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one, run(8));
}
