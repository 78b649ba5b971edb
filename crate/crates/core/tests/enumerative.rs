use asp_core::enumerative::{
    f_almost_cyclic, f_almost_stacked, f_from_h, h_from_f, phi, ubt_h_bounds, AspParams, FVector,
    HVector,
};
use asp_core::hull::detect_asp;
use asp_core::curves::almost_cyclic_points;
use asp_core::stackgen::{random_sphere_script, stacked_sphere};
use proptest::prelude::*;

fn grid() -> impl Iterator<Item = AspParams> {
    (3..=6).flat_map(|d| {
        (0..=3).flat_map(move |s| {
            (d + s + 1..=(d + s + 5).min(14)).map(move |n| AspParams::new(d, n, s).unwrap())
        })
    })
}

proptest! {
    #[test]
    fn f_h_round_trip(tail in prop::collection::vec(0i64..50, 1..=7)) {
        let mut e = vec![1];
        e.extend(tail);
        let f = FVector::new(e).unwrap();
        prop_assert_eq!(f_from_h(&h_from_f(&f)), f);
    }

    #[test]
    fn h_f_round_trip(h in prop::collection::vec(-50i64..50, 2..=8)) {
        let h = HVector::new(h);
        prop_assert_eq!(h_from_f(&f_from_h(&h)), h);
    }

    #[test]
    fn phi_counts_a_built_stacked_sphere(d in 3usize..=6, extra in 0usize..=4, seed in any::<u64>()) {
        let n = d + 1 + extra;
        let sphere = stacked_sphere(d, n, &random_sphere_script(d, n, seed)).unwrap();
        let f = sphere.f_vector();
        prop_assert_eq!(f.f(0), n as i64);
        for k in 1..d {
            prop_assert_eq!(phi(d, n, k).unwrap(), f.f(k as isize));
        }
    }
}

#[test]
fn closed_forms_are_ordered() {
    for p in grid() {
        let (lo, hi) = (f_almost_stacked(p), f_almost_cyclic(p));
        assert!(lo.entries.iter().zip(&hi.entries).all(|(a, b)| a <= b), "{p:?}");
    }
}

#[test]
fn ubt_bounds_are_attained_by_the_built_polytope() {
    for p in grid().filter(|p| p.n <= p.d + p.s + 3) {
        let geo = detect_asp(&almost_cyclic_points(p)).unwrap();
        let h = geo.asp.h_ball();
        let b = ubt_h_bounds(p);
        for &(i, v) in b.lower_half.iter().chain(&b.upper_half) {
            assert_eq!(h.h(i as isize), v, "{p:?} h_{i}");
        }
    }
}
