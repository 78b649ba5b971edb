use asp_core::complexes::{class_c_membership, AspComplex};
use asp_core::enumerative::{
    boundary_g, check_asp_bounds, dehn_sommerville_defect, f_almost_stacked, ridge_identity_defect,
    AspParams,
};
use asp_core::stackgen::{
    almost_stacked, apply_script, random_almost_stacked_scripts, random_mixed_script,
    recognize_minimizer,
};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = AspParams> {
    (3usize..=6, 0usize..=3, 1usize..=4).prop_map(|(d, s, extra)| AspParams::new(d, d + s + extra, s).unwrap())
}

fn structural(a: &AspComplex) -> std::result::Result<(), TestCaseError> {
    a.validate().map_err(|e| TestCaseError::fail(e.to_string()))?;
    let fb = a.f_boundary().unwrap();
    prop_assert_eq!(ridge_identity_defect(&a.polytope_f_vector(), &fb.f_vector()), 0);
    let h = a.h_ball();
    let g = boundary_g(&fb.h_vector(), h.entries.len());
    prop_assert!(dehn_sommerville_defect(&h, &g).unwrap().iter().all(|&x| x == 0));
    let r = check_asp_bounds(&a.polytope_f_vector(), a.params).unwrap();
    prop_assert!(r.all_ok() && r.all_equal_lower(), "{:?}", r.violations());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn almost_stacked_f_vector_is_script_independent(p in params(), seed in any::<u64>()) {
        let (sf, sp) = random_almost_stacked_scripts(p, seed);
        let a = almost_stacked(p, &sf, &sp).unwrap();
        prop_assert_eq!(a.polytope_f_vector(), f_almost_stacked(p));
        structural(&a)?;
        if p.d >= 4 {
            prop_assert!(class_c_membership(&a.ball).unwrap().member || p.n == p.d + p.s + 1);
        }
    }

    #[test]
    fn mixed_scripts_stay_minimal(p in params(), seed in any::<u64>(), len in 1usize..=4) {
        let (sf, sp) = random_almost_stacked_scripts(p, seed);
        let base = almost_stacked(p, &sf, &sp).unwrap();
        let script = random_mixed_script(&base, len, seed).unwrap();
        let a = apply_script(&base, &script).unwrap();
        structural(&a)?;
        if a.params.d >= 4 {
            prop_assert!(recognize_minimizer(&a).unwrap().is_minimizer);
        }
    }
}
