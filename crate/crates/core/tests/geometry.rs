use std::collections::BTreeMap;

use asp_core::complexes::{h_from_shelling, SimplicialComplex};
use asp_core::curves::{almost_cyclic_points, general_curve_points, CurveSpec, TailPoly};
use asp_core::enumerative::{f_from_h, h_almost_cyclic_ball, AspParams};
use asp_core::exactnum::{rank, RatMatrix, Rational};
use asp_core::gale::almost_cyclic_facets;
use asp_core::hull::{detect_asp, Polytope};
use itertools::Itertools;
use proptest::prelude::*;

fn grid(max_d: usize) -> Vec<AspParams> {
    let mut out = vec![];
    for d in 3..=max_d {
        for s in 0..=3 {
            for n in d + s + 1..=(d + s + 5).min(14) {
                out.push(AspParams::new(d, n, s).unwrap());
            }
        }
    }
    out
}

#[test]
fn boundary_is_a_pseudomanifold() {
    for p in grid(5) {
        let poly = Polytope::new(almost_cyclic_points(p)).unwrap();
        // ridges as maximal pairwise intersections of full dimension
        let mut count: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
        for i in 0..poly.facets.len() {
            for r in poly.facet_ridges(i) {
                *count.entry(r).or_default() += 1;
            }
        }
        assert!(count.values().all(|&c| c == 2), "{p:?}");
    }
}

#[test]
fn detect_asp_recovers_parameters() {
    for p in grid(6) {
        let geo = detect_asp(&almost_cyclic_points(p)).unwrap();
        assert_eq!(geo.asp.params, p);
    }
}

#[test]
fn beyond_point_sees_one_facet() {
    for p in grid(4) {
        let poly = Polytope::new(almost_cyclic_points(p)).unwrap();
        for idx in [0, poly.facets.len() - 1] {
            let y = poly.point_beyond(idx);
            let seen: Vec<usize> = (0..poly.facets.len())
                .filter(|&i| poly.facets[i].eval(&y).signum() < 0)
                .collect();
            assert_eq!(seen, vec![idx]);
        }
    }
}

#[test]
fn line_shellings_agree() {
    for p in grid(5).into_iter().filter(|p| p.n <= p.d + p.s + 3) {
        let (q, _) = detect_asp(&almost_cyclic_points(p)).unwrap().stack_beyond_f().unwrap();
        let hs: Vec<_> = (0..6).map(|s| h_from_shelling(&q.line_shelling(s).unwrap())).collect();
        assert!(hs.iter().all_equal(), "{p:?}");
    }
}

#[test]
fn gale_ball_closes_to_the_closed_form() {
    for p in grid(6) {
        let i: Vec<u32> = (1..=(p.d + p.s) as u32).collect();
        let ball = SimplicialComplex::pure(almost_cyclic_facets(p).into_iter().filter(|f| *f != i)).unwrap();
        assert_eq!(ball.f_vector(), f_from_h(&h_almost_cyclic_ball(p)), "{p:?}");
    }
}

#[test]
fn neighborly_and_simplicial_faces() {
    for p in grid(6) {
        let poly = Polytope::new(almost_cyclic_points(p)).unwrap();
        let k = (p.d - 1) / 2;
        let sets = poly.facet_sets();
        for sub in (1..=p.n as u32).combinations(k) {
            assert!(sets.iter().any(|f| sub.iter().all(|v| f.contains(v))), "{p:?} {sub:?}");
        }
        assert!(poly.ridges_are_simplices(), "{p:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn curve_points_in_general_position(
        d in 3usize..=5,
        r in 0usize..=2,
        coeffs in prop::collection::vec(-5i64..=5, 0..=4),
        ts in prop::collection::btree_set(-12i64..=12, 8),
    ) {
        prop_assume!(r < d);
        // tails of degree above d-r keep the curve generic enough
        let d_r = d - r;
        let tails: Vec<TailPoly> = (0..r)
            .map(|j| {
                let mut c: Vec<Rational> = coeffs.iter().map(|&x| Rational::from(x)).collect();
                c.resize(d_r + 1 + j, Rational::zero());
                c.push(Rational::one());
                TailPoly::Polynomial(c)
            })
            .collect();
        let spec = CurveSpec::new(d, tails).unwrap();
        let params: Vec<Rational> = ts.iter().map(|&t| Rational::from(t)).collect();
        let cfg = general_curve_points(&spec, &params).unwrap();
        for sub in cfg.points.iter().combinations(d - r + 1) {
            let rows: Vec<Vec<Rational>> = sub
                .iter()
                .map(|p| std::iter::once(Rational::one()).chain(p.coords.iter().cloned()).collect())
                .collect();
            prop_assert_eq!(rank(&RatMatrix::from_rows(rows).unwrap()), d - r + 1);
        }
    }
}
