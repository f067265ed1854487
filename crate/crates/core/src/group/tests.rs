use super::*;
use crate::error::LiecoError;

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < tol)
}

#[test]
fn catalog_loads_and_self_tests() {
    let names: Vec<_> = catalog().unwrap().iter().map(|r| r.name).collect();
    assert_eq!(
        names,
        [
            "abelian2",
            "heisenberg1",
            "galilei11",
            "poincare11",
            "su2",
            "sl2r"
        ]
    );
    assert!(matches!(
        realization("nope"),
        Err(LiecoError::UnknownRealization(_))
    ));
}

#[test]
fn broken_cocycle_is_rejected_at_load() {
    let mut r = catalog::unchecked().remove(2);
    r.cocycles[0].xi = |gp, g| -(gp[2] * g[1] + 0.4 * gp[2] * gp[2] * g[0]);
    match self_test(&r) {
        Err(LiecoError::CatalogSelfTestFailure { check, .. }) => {
            assert_eq!(check, "mass: two_cocycle_identity")
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn every_realization_passes_verify_all() {
    for r in catalog().unwrap() {
        for check in verify_all(r, 60, 7, 1e-8).unwrap() {
            assert!(check.passed, "{}: {check:?}", r.name);
        }
    }
}

#[test]
fn weyl_theta() {
    let r = realization("abelian2").unwrap();
    let t = theta_at(r, "weyl", &r.identity()).unwrap();
    assert!(close(&t.dual_components, &[0.0, 0.0], 1e-12));
    assert_eq!(t.phase_component, 1.0);
    let g = GroupElement::new(vec![1.5, -0.5]);
    let t = theta_at(r, "weyl", &g).unwrap();
    assert!(close(&t.dual_components, &[-0.25, -0.75], 1e-9));
}

#[test]
fn lambda_coboundary_and_gradient() {
    let r = realization("abelian2").unwrap();
    let ab = |g: &[f64]| g[0] * g[1];
    let (gp, g) = (
        GroupElement::new(vec![1.0, 2.0]),
        GroupElement::new(vec![-3.0, 0.5]),
    );
    let v = coboundary_from_lambda(r, &ab, &gp, &g).unwrap();
    assert!((v - (1.0 * 0.5 + 2.0 * -3.0)).abs() < 1e-12);
    assert_eq!(
        coboundary_from_lambda(r, &ab, &r.identity(), &g).unwrap(),
        0.0
    );
    assert!(close(&lambda_gradient(r, &ab).value, &[0.0, 0.0], 1e-12));
    let lin = |g: &[f64]| 2.0 * g[0] - 0.5 * g[1];
    let grad = lambda_gradient(r, &lin);
    assert!(close(&grad.value, &[2.0, -0.5], 1e-9));
    assert!(grad.error.iter().all(|e| *e < 1e-8));
}

#[test]
fn group_coboundary_low_degrees() {
    let r = realization("galilei11").unwrap();
    let g = r.sample(&mut rand::thread_rng());
    let constant = |_: &[GroupElement]| Ok(vec![3.0]);
    assert_eq!(
        group_coboundary(r, Action::Trivial, 0, &constant, std::slice::from_ref(&g)).unwrap(),
        vec![0.0]
    );
    let five = vec![g.clone(); 5];
    assert_eq!(
        group_coboundary(r, Action::Trivial, 4, &constant, &five),
        Err(LiecoError::UnsupportedDegree(4))
    );
}

#[test]
fn galilei_noether_matches_numeric_and_vanishes_at_e() {
    let r = realization("galilei11").unwrap();
    assert!(close(
        &noether_invariants(r, "mass", &r.identity()).unwrap(),
        &[0.0; 3],
        1e-15
    ));
    let g = GroupElement::new(vec![0.7, -1.2, 0.4]);
    let closed = noether_invariants(r, "mass", &g).unwrap();
    let xi = r.cocycle("mass").unwrap().xi;
    let numeric = noether_for(r, &|a, b| xi(a, b), &g).unwrap();
    assert!(close(&closed, &numeric, 1e-7));
    // (−v²/2, v, vb − a)
    assert!(close(&closed, &[-0.08, 0.4, 0.4 * 0.7 + 1.2], 1e-12));
}

#[test]
fn poincare_rest_energy_noether_is_the_lambda_coboundary() {
    let r = realization("poincare11").unwrap();
    let g = GroupElement::new(vec![0.3, -0.2, 0.9]);
    let xi = r.cocycle("rest_energy").unwrap().xi;
    let numeric = noether_for(r, &|a, b| xi(a, b), &g).unwrap();
    let gamma = symplectic_coboundary_of_lambda(r, &[-1.0, 0.0, 0.0], &g).unwrap();
    assert!(close(&numeric, &gamma, 1e-7));
}

#[test]
fn su2_ad_of_x3_flow_is_a_rotation() {
    let r = realization("su2").unwrap();
    let t = 0.6f64;
    let g = r.exp_map(&[0.0, 0.0, 1.0], t).unwrap();
    let ad = r.ad(&g).unwrap();
    let expected = Mat::from_row_slice(
        3,
        3,
        &[t.cos(), -t.sin(), 0.0, t.sin(), t.cos(), 0.0, 0.0, 0.0, 1.0],
    );
    assert!((ad - expected).amax() < 1e-12);
}

#[test]
fn su2_chart_overflow_is_reported() {
    let r = realization("su2").unwrap();
    let m = r.product_of_exponentials(&[0.0, std::f64::consts::FRAC_PI_2, 0.0]);
    assert!(matches!(r.extract(&m), Err(LiecoError::ChartOverflow(_))));
}

#[test]
fn su2_extraction_handles_the_sign_of_su2() {
    let r = realization("su2").unwrap();
    let t = [2.5, 0.3, -2.9];
    let m = r.product_of_exponentials(&t);
    let back = r.extract(&m).unwrap();
    assert!((r.matrix(&back) - m).amax() < 1e-12);
}

#[test]
fn sl2r_chart_is_global() {
    let r = realization("sl2r").unwrap();
    let t = [3.1, -2.2, 5.5];
    let m = r.product_of_exponentials(&t);
    let back = r.extract(&m).unwrap();
    assert!((r.matrix(&back) - m).amax() < 1e-9);
}

#[test]
fn extended_law_accumulates_phase() {
    let r = realization("abelian2").unwrap();
    let c = r.cocycle("weyl").unwrap();
    let mut gp = GroupElement::new(vec![1.0, 0.0]);
    gp.phase = Some(0.1);
    let g = GroupElement::new(vec![0.0, 2.0]);
    let out = extended_law(r, c, &gp, &g).unwrap();
    assert_eq!(out.coords, vec![1.0, 2.0]);
    assert!((out.phase.unwrap() - 1.1).abs() < 1e-15);
    assert!((wrap_phase(4.0) - (4.0 - std::f64::consts::TAU)).abs() < 1e-15);
}

#[test]
fn extended_coadjoint_limits() {
    let r = realization("galilei11").unwrap();
    let g = GroupElement::new(vec![0.5, 1.0, -0.7]);
    let mu = [1.0, -2.0, 0.5];
    let (plain, z) = extended_coadjoint(r, "mass", &g, &mu, 0.0).unwrap();
    let coad = r.coad(&g).unwrap() * nalgebra::DVector::from_column_slice(&mu);
    assert!(close(&plain, coad.as_slice(), 1e-14));
    assert_eq!(z, 0.0);
    let (same, _) = extended_coadjoint(r, "mass", &r.identity(), &mu, 2.0).unwrap();
    assert!(close(&same, &mu, 1e-14));
}

#[test]
fn ad_equivariance_examples() {
    let su2 = realization("su2").unwrap();
    let g = GroupElement::new(vec![0.3, -0.6, 0.7]);
    assert!(ad_equivariance_check(su2, &[0.0, 0.0, 1.0], &g).unwrap() < 1e-12);
    assert_eq!(
        ad_equivariance_check(su2, &[0.0, 0.0, 1.0], &su2.identity()).unwrap(),
        0.0
    );
    let ab = realization("abelian2").unwrap();
    assert_eq!(
        ad_equivariance_check(ab, &[2.0, 1.0], &GroupElement::new(vec![1.0, 1.0])).unwrap(),
        0.0
    );
}

#[test]
fn deformed_ad_equivariance_holds_with_gamma() {
    // Ad(h⁻¹)ᵀ Ω_Γ(λ) Ad(h⁻¹) = Ω_Γ(Coad_γ(h) λ)
    let r = realization("galilei11").unwrap();
    let d = Deformation::named(r, "mass").unwrap();
    let gamma = d.gamma_f64();
    let lambda = [0.4, -1.0, 0.3];
    let h = r.matrix(&[0.5, -0.8, 1.1]);
    let ad_inv = r.ad_of_matrix(&h.clone().try_inverse().unwrap());
    let moved = d.act(r, &h, &lambda).unwrap();
    let lhs = ad_inv.transpose() * omega_f64(&r.algebra, gamma.as_ref(), &lambda) * &ad_inv;
    let rhs = omega_f64(&r.algebra, gamma.as_ref(), &moved);
    assert!((lhs - rhs).amax() < 1e-12);
}

#[test]
fn resolve_prefers_coboundaries() {
    use crate::rational::q;
    let r = realization("poincare11").unwrap();
    let gamma = AlgebraTwoCocycle::from_entries(3, &[(2, 1, q(-1))]).unwrap();
    let d = Deformation::resolve(r, &gamma).unwrap();
    assert!(d.terms.is_empty());
    assert_eq!(d.shift, Some(vec![-1.0, 0.0, 0.0]));
    let g = realization("galilei11").unwrap();
    let d = Deformation::resolve(g, &gamma).unwrap();
    assert_eq!(d.terms, vec![(0, 1.0)]);
    assert!(d.shift.is_none());
}
