use std::sync::OnceLock;

use conelab_core::exactvec::{
    is_in_qn, phi, project_to_qn, qn_inner, split, transpose, weight_basis, ArcVector, PairVector,
    PointSet, QnVector,
};
use conelab_core::facetlab::{cut_roots, switch_cut};
use conelab_core::generators::{build_cone, ocut_vector, to_ints, ConeId, Family};
use conelab_core::linalg;
use conelab_core::symmetry::{CoordMap, Group, Layout};
use conelab_core::{BigInt, IntVec, Rational};
use num_traits::Zero;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn arc_vector(n: usize) -> impl Strategy<Value = ArcVector> {
    prop::collection::vec(rational(), n * (n - 1))
        .prop_map(move |c| ArcVector::from_coords(n, c).unwrap())
}

fn qn_vector(n: usize) -> impl Strategy<Value = QnVector> {
    (
        prop::collection::vec(rational(), n * (n - 1) / 2),
        prop::collection::vec(rational(), n),
    )
        .prop_map(move |(s, w)| {
            QnVector::new(PairVector::from_coords(n, false, s).unwrap(), w).unwrap()
        })
}

fn sized<S: Strategy, F: Fn(usize) -> S>(f: F) -> impl Strategy<Value = S::Value>
where
    S::Value: std::fmt::Debug,
{
    prop_oneof![f(3), f(4), f(5)]
}

/// Spanning set of `Q_n`: `φ(e_ij)` and the `q(k)`.
fn qn_spanning(n: usize) -> Vec<ArcVector> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(phi(&PairVector::unit(n, false, i, j)).unwrap());
        }
        out.push(weight_basis(i, n).unwrap());
    }
    out
}

proptest! {
    #[test]
    fn split_is_orthogonal_and_transpose_involutive(g in sized(arc_vector)) {
        let (s, a) = split(&g);
        prop_assert_eq!(&(&s + &a), &g);
        prop_assert!(s.dot(&a).is_zero());
        prop_assert_eq!(transpose(&transpose(&g)), g.clone());
        prop_assert!(s.is_symmetric());
    }

    #[test]
    fn projection_is_idempotent_with_orthogonal_residual(g in sized(arc_vector)) {
        let (q, residual) = project_to_qn(&g);
        prop_assert!(q.is_gauged());
        let e = q.expand();
        prop_assert_eq!(&(&e + &residual), &g);
        for b in qn_spanning(g.n()) {
            prop_assert!(residual.dot(&b).is_zero());
        }
        let (again, rest) = project_to_qn(&e);
        prop_assert_eq!(again, q);
        prop_assert!(rest.is_zero());
        prop_assert_eq!(is_in_qn(&g), residual.is_zero());
        prop_assert!(is_in_qn(&e));
    }

    #[test]
    fn inner_product_formula(g in qn_vector(4), q in qn_vector(4)) {
        let brute = g.expand().dot(&q.expand()) / Rational::from_integer(2.into());
        prop_assert_eq!(qn_inner(&g, &q).unwrap(), brute);
    }

    #[test]
    fn symmetric_part_keeps_triangle_sums(q in sized(qn_vector)) {
        let n = q.n();
        let a = q.expand();
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    let s = |x: usize, y: usize| q.sym().get(x.min(y), x.max(y)).clone();
                    prop_assert_eq!(s(i, j) + s(j, k) - s(i, k), a.get(i, j) + a.get(j, k) - a.get(i, k));
                }
            }
        }
    }

    #[test]
    fn star_of_ocut_is_complement(bits in 0u32..32) {
        let n = 5;
        let s = PointSet::from_bits(bits);
        prop_assert_eq!(transpose(&ocut_vector(s, n).unwrap()), ocut_vector(s.complement(n), n).unwrap());
    }

    #[test]
    fn switching_is_an_involution_on_cut6_facets(pick in 0usize..210, t_pick in 0usize..64) {
        let n = 5;
        let facets = facets_of(Family::Cut, 6);
        let f = &facets[pick % facets.len()];
        let roots = cut_roots(f, n).unwrap();
        let t = roots[t_pick % roots.len()];
        let g = switch_cut(f, n, t).unwrap();
        prop_assert!(facets.contains(&g));
        prop_assert_eq!(&switch_cut(&g, n, t).unwrap(), f);
        let mut moved: Vec<PointSet> = roots.iter().map(|r| r.symmetric_difference(t)).collect();
        moved.sort();
        prop_assert_eq!(cut_roots(&g, n).unwrap(), moved);
    }

    #[test]
    fn ocut_facets_are_invariant_under_the_full_group(pick in 0usize..240) {
        let n = 5;
        let layout = Layout::Arcs { n };
        let facets = facets_of(Family::OCut, 5);
        let canon: std::collections::BTreeSet<IntVec> = facets.iter().map(|f| qn_form(f, n)).collect();
        let elements = Group::SymRev(n).elements();
        let e = &elements[pick % elements.len()];
        let map = CoordMap::new(e, layout).unwrap();
        for f in facets {
            prop_assert!(canon.contains(&qn_form(&map.apply(f), n)));
        }
    }
}

fn qn_form(arc: &[BigInt], n: usize) -> IntVec {
    project_to_qn(&ArcVector::from_ints(n, arc).unwrap())
        .0
        .normalized()
}

fn facets_of(family: Family, n: usize) -> &'static [IntVec] {
    static CUT6: OnceLock<Vec<IntVec>> = OnceLock::new();
    static OCUT5: OnceLock<Vec<IntVec>> = OnceLock::new();
    let cell = match family {
        Family::Cut => &CUT6,
        _ => &OCUT5,
    };
    cell.get_or_init(|| {
        let cone = build_cone(&ConeId::new(family, n))
            .unwrap()
            .with_facets()
            .unwrap();
        cone.inequalities().unwrap().to_vec()
    })
}

#[test]
fn ocut_vectors_span_qn() {
    for n in 3..=6 {
        let rows: Vec<IntVec> = PointSet::all(n)
            .map(|s| to_ints(ocut_vector(s, n).unwrap().coords()))
            .collect();
        assert_eq!(linalg::rank(&rows), n * (n + 1) / 2 - 1);
    }
}
