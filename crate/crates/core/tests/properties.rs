use gauss_eof::bounds::{
    bound_report, natural_bounds, noise_decomposition, searched_upper_bound, sigma_lower_bound,
    BoundOptions,
};
use gauss_eof::state::{local_symplectic, single_mode_symplectic};
use gauss_eof::symplectic::{loewner_ge, symplectic_spectrum, SymMat4};
use gauss_eof::{
    eof_symmetric, geof, geof_with, invariants, is_entangled, is_physical, reduced_symmetric,
    standard_form, CovMat, GeofOptions, Side, StandardForm,
};
use nalgebra::{Matrix2, Matrix4};
use proptest::prelude::*;

const TOL: f64 = 1e-6;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

/// Physical standard forms with `a, b ∈ [1, 3]`.
fn physical_sf() -> impl Strategy<Value = StandardForm> {
    (1.0..3.0f64, 1.0..3.0f64, 0.0..1.0f64, -1.0..1.0f64)
        .prop_map(|(a, b, u, w)| {
            let c1 = u * (a * b).sqrt();
            StandardForm { a, b, c1, c2: w * c1 }
        })
        .prop_filter("physical", |s| is_physical(&s.covariance(), 1e-9))
}

fn entangled_sf() -> impl Strategy<Value = StandardForm> {
    physical_sf().prop_filter("entangled", |s| is_entangled(&s.covariance(), 1e-9).unwrap())
}

fn local() -> impl Strategy<Value = Matrix4<f64>> {
    prop::array::uniform6(-1.0..1.0f64).prop_map(|p| {
        local_symplectic(
            &single_mode_symplectic(3.0 * p[0], 0.6 * p[1], 3.0 * p[2]),
            &single_mode_symplectic(3.0 * p[3], 0.6 * p[4], 3.0 * p[5]),
        )
    })
}

fn psd(scale: f64) -> impl Strategy<Value = SymMat4> {
    prop::array::uniform16(-1.0..1.0f64).prop_map(move |g| {
        let g = Matrix4::from_row_slice(&g);
        SymMat4::new(g * g.transpose() * scale)
    })
}

fn psd2() -> impl Strategy<Value = Matrix2<f64>> {
    prop::array::uniform4(-1.0..1.0f64).prop_map(|g| {
        let g = Matrix2::from_row_slice(&g);
        g * g.transpose()
    })
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn williamson_ordering(h in psd(1.0), d in psd(0.5)) {
        let h2 = h + SymMat4::identity().scale(0.02);
        let h1 = h2 + d;
        let (a, b) = (symplectic_spectrum(&h1).unwrap(), symplectic_spectrum(&h2).unwrap());
        prop_assert!(a.dominates(&b, 1e-9));
    }

    #[test]
    fn local_symplectics_preserve_invariants(s in physical_sf(), l in local()) {
        let v = s.covariance();
        let w = v.transform(&l);
        let (iv, iw) = (invariants(&v), invariants(&w));
        let scale = 1.0 + iv.i4.abs();
        prop_assert!((iv.i1 - iw.i1).abs() < 1e-9 * (1.0 + iv.i1));
        prop_assert!((iv.i2 - iw.i2).abs() < 1e-9 * (1.0 + iv.i2));
        prop_assert!((iv.i3 - iw.i3).abs() < 1e-9 * scale);
        prop_assert!((iv.i4 - iw.i4).abs() < 1e-8 * scale);
        let back = standard_form(&w).unwrap();
        prop_assert!((back.a - s.a).abs() < 1e-8 && (back.b - s.b).abs() < 1e-8);
        prop_assert!((back.c1 - s.c1).abs() < 1e-7 && (back.c2 - s.c2).abs() < 1e-7);
    }

    #[test]
    fn closed_form_spectrum_matches_general_route(s in physical_sf(), l in local()) {
        let v = s.covariance().transform(&l);
        let closed = v.invariants().spectrum();
        let general = symplectic_spectrum(v.matrix()).unwrap();
        // the closed form loses digits when mu- ≈ mu+
        prop_assert!((closed.mu_minus - general.mu_minus).abs() < 1e-6);
        prop_assert!((closed.mu_plus - general.mu_plus).abs() < 1e-6);
    }

    #[test]
    fn physicality_cascade(s in physical_sf(), dm in psd2(), dn in psd2()) {
        // V_MM <= V_AB <= V_NN sharing C, with M <= A, B and N >= A, B
        let v = s.covariance();
        let lo = s.a.min(s.b);
        let hi = s.a.max(s.b);
        let m = Matrix2::identity() * lo - dm * 0.1;
        let n = Matrix2::identity() * hi + dn * 0.1;
        let c = v.block_c();
        let vm = CovMat::from_blocks(&m, &m, &c);
        let vn = CovMat::from_blocks(&n, &n, &c);
        prop_assert!(loewner_ge(v.matrix(), vm.matrix(), 1e-12));
        prop_assert!(loewner_ge(vn.matrix(), v.matrix(), 1e-12));
        if is_physical(&vm, 1e-10) {
            prop_assert!(is_physical(&v, 1e-10) && is_physical(&vn, 1e-10));
        }
    }

    #[test]
    fn natural_bounds_are_noise_certified(s in physical_sf()) {
        let v = s.covariance();
        let (small, large) = if s.a <= s.b { (Side::A, Side::B) } else { (Side::B, Side::A) };
        let lower = reduced_symmetric(&v, large);
        prop_assert!(noise_decomposition(&lower, &v, 1e-10).is_ok());
        prop_assert!(noise_decomposition(&v, &reduced_symmetric(&v, small), 1e-10).is_ok());
        let nb = natural_bounds(&v, &BoundOptions::default()).unwrap();
        prop_assert!((nb.lower.nats() - eof_symmetric(&lower).unwrap().nats()).abs() < 1e-12);
    }

    #[test]
    fn sigma_cannot_be_raised(s in entangled_sf(), d in psd2(), eps in 1e-6..0.5f64) {
        let v = s.covariance();
        let opts = BoundOptions::default();
        let sigma = sigma_lower_bound(&v, &opts).unwrap().nats();
        // any symmetric M above the midpoint
        let mid = Matrix2::identity() * (0.5 * (s.a + s.b));
        let m = mid + Matrix2::identity() * eps + d * 0.2;
        let vm = CovMat::from_blocks(&m, &m, &v.block_c());
        let dominated = loewner_ge(v.matrix(), vm.matrix(), 1e-10);
        let smaller = is_physical(&vm, 1e-10) && eof_symmetric(&vm).unwrap().nats() <= sigma + 1e-9;
        prop_assert!(!dominated || smaller);
        // any symmetric state certified as a lower bound by noise sits below sigma
        let big = Matrix2::identity() * s.a.max(s.b) + d * 0.2;
        let vb = CovMat::from_blocks(&big, &big, &v.block_c());
        prop_assert!(eof_symmetric(&vb).unwrap().nats() <= sigma + 1e-9);
    }

    #[test]
    fn searched_bound_is_certified(s in entangled_sf(), steps in 10usize..200) {
        let v = s.covariance();
        if let Some(b) = searched_upper_bound(&v, steps, &BoundOptions::default()).unwrap() {
            let sf = if s.a <= s.b { s } else { StandardForm { a: s.b, b: s.a, ..s } };
            let vp = b.covariance(&sf);
            prop_assert!(is_physical(&vp, 1e-9));
            prop_assert!(noise_decomposition(&sf.covariance(), &vp, 1e-9).is_ok());
            let twice = searched_upper_bound(&v, 2 * steps, &BoundOptions::default()).unwrap().unwrap();
            prop_assert!(twice.value.nats() <= b.value.nats() + 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn hierarchy_holds(s in entangled_sf(), l in local()) {
        let v = s.covariance().transform(&l);
        let r = bound_report(&v, &BoundOptions::default()).unwrap();
        prop_assert!(r.hierarchy.holds, "{:?}", r.hierarchy.violations);
        let g = r.geof_value().unwrap().nats();
        if let Some(up) = r.upper_searched {
            prop_assert!(g <= up.nats() + TOL);
        }
    }

    #[test]
    fn geof_vanishes_exactly_on_separable_states(s in physical_sf()) {
        let v = s.covariance();
        let g = geof(&v).unwrap();
        prop_assert!(g.value.nats() >= 0.0 && g.feasible);
        prop_assert_eq!(g.value.nats() > 0.0, is_entangled(&v, 1e-10).unwrap());
    }

    #[test]
    fn sandwich_between_shared_correlation_states(s in entangled_sf(), dm in psd2(), dn in psd2()) {
        let v = s.covariance();
        let c = v.block_c();
        let m = Matrix2::identity() * s.a.min(s.b) - dm * 0.05;
        let n = Matrix2::identity() * s.a.max(s.b) + dn * 0.2;
        let vm = CovMat::from_blocks(&m, &m, &c);
        let vn = CovMat::from_blocks(&n, &n, &c);
        let g = geof(&v).unwrap().value.nats();
        prop_assert!(eof_symmetric(&vn).unwrap().nats() <= g + TOL);
        if is_physical(&vm, 1e-10) {
            prop_assert!(g <= eof_symmetric(&vm).unwrap().nats() + TOL);
        }
    }

    #[test]
    fn geof_monotone_under_noise(s in entangled_sf(), l in local(), d in psd(0.05)) {
        let v = s.covariance().transform(&l);
        let w = CovMat::new(*v.matrix() + d);
        prop_assert!(geof(&w).unwrap().value.nats() <= geof(&v).unwrap().value.nats() + TOL);
    }
}

#[test]
fn more_general_starts_never_hurt() {
    let states = [
        StandardForm::new(1.3, 1.9, 0.9, -0.7).unwrap(),
        StandardForm::new(1.2, 1.8, 0.7, -0.7).unwrap(),
        StandardForm::new(1.6, 1.7, 1.0, -0.3).unwrap(),
    ];
    for s in states {
        let v = s.covariance();
        let base = geof(&v).unwrap().value.nats();
        let few = geof_with(&v, &GeofOptions { starts: 2, ..GeofOptions::default() }).unwrap();
        let many = geof_with(&v, &GeofOptions { starts: 4, ..GeofOptions::default() }).unwrap();
        assert!(many.value.nats() <= few.value.nats() + TOL);
        assert!(few.value.nats() <= base + 1e-12);
        assert!(many.feasible && few.feasible);
    }
}
