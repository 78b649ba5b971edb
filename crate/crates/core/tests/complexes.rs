use asp_core::complexes::{
    class_c_membership, h_from_shelling, prime_decomposition, refine_by_triangulation, SimplicialComplex,
};
use asp_core::curves::almost_cyclic_points;
use asp_core::enumerative::{f_from_h, AspParams};
use asp_core::hull::detect_asp;
use asp_core::stackgen::{almost_stacked, random_almost_stacked_scripts, random_sphere_script, stacked_sphere};
use proptest::prelude::*;

fn small_grid() -> Vec<AspParams> {
    let mut out = vec![];
    for d in 3..=5 {
        for s in 0..=2 {
            for n in d + s + 1..=d + s + 3 {
                out.push(AspParams::new(d, n, s).unwrap());
            }
        }
    }
    out
}

fn euler(f: &[i64]) -> i64 {
    // sum over i >= 0 of (-1)^i f_i, entries start at f_{-1}
    f.iter().skip(1).enumerate().map(|(i, x)| if i % 2 == 0 { *x } else { -x }).sum()
}

#[test]
fn asp_balls_from_hulls() {
    for p in small_grid() {
        let geo = detect_asp(&almost_cyclic_points(p)).unwrap();
        let asp = &geo.asp;
        asp.validate().unwrap();
        let b = asp.f_boundary().unwrap();
        assert_eq!(b.vertex_ids(), asp.f_vertices);
        assert_eq!(asp.ball.induced(&asp.f_vertices), b);
        // (d-2)-sphere Euler characteristic
        let d = p.d as i64;
        let want = if d % 2 == 0 { 2 } else { 0 };
        assert_eq!(euler(&b.f_vector().entries), want, "{p:?}");
        if p.d >= 4 {
            assert!(class_c_membership(&asp.ball).unwrap().member, "{p:?}");
        }
        let (q, _) = geo.stack_beyond_f().unwrap();
        let h = q.boundary_complex().unwrap().h_vector();
        for seed in 0..3 {
            assert_eq!(h_from_shelling(&q.line_shelling(seed).unwrap()), h);
        }
    }
}

#[test]
fn decomposition_facet_counts() {
    let mut spheres: Vec<SimplicialComplex> = vec![];
    for p in small_grid().into_iter().filter(|p| p.d >= 4) {
        let (sf, sp) = random_almost_stacked_scripts(p, p.n as u64);
        let a = almost_stacked(p, &sf, &sp).unwrap();
        spheres.push(refine_by_triangulation(&a, a.f_triangulation.as_ref().unwrap()).unwrap());
        if p.s == 0 {
            spheres.push(detect_asp(&almost_cyclic_points(p)).unwrap().polytope.boundary_complex().unwrap());
        }
    }
    for d in 3..=5 {
        spheres.push(stacked_sphere(d, d + 4, &random_sphere_script(d, d + 4, 3)).unwrap());
    }
    for s in spheres {
        let dec = prime_decomposition(&s).unwrap();
        let total: usize = dec.factors.iter().map(|f| f.num_facets()).sum();
        assert_eq!(total, s.num_facets() + 2 * dec.tree_edges.len());
    }
}

fn random_complex() -> impl Strategy<Value = SimplicialComplex> {
    (2usize..=4).prop_flat_map(|k| {
        prop::collection::btree_set(prop::collection::btree_set(1u32..=7, k), 1..=6).prop_filter_map(
            "fixed facet size",
            move |fs| {
                let fs: Vec<Vec<u32>> = fs.into_iter().map(|f| f.into_iter().collect()).filter(|f: &Vec<u32>| f.len() == k).collect();
                SimplicialComplex::pure(fs).ok()
            },
        )
    })
}

proptest! {
    #[test]
    fn induced_on_all_vertices_is_identity(c in random_complex()) {
        prop_assert_eq!(c.induced(&c.vertex_ids()), c);
    }

    #[test]
    fn star_is_face_join_link(c in random_complex(), pick in any::<prop::sample::Index>(), sub in any::<u8>()) {
        let facets: Vec<Vec<u32>> = c.facets().cloned().collect();
        let f = &facets[pick.index(facets.len())];
        let face: Vec<u32> = f.iter().enumerate().filter(|(i, _)| sub >> i & 1 == 1).map(|(_, v)| *v).collect();
        prop_assume!(!face.is_empty());
        let st = c.star(&face).unwrap();
        let lk = c.link(&face).unwrap();
        prop_assert_eq!(st, SimplicialComplex::simplex(face).join(&lk));
    }

    #[test]
    fn h_and_f_agree(c in random_complex()) {
        prop_assert_eq!(f_from_h(&c.h_vector()), c.f_vector());
    }
}
