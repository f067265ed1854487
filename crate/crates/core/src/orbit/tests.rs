use super::*;
use crate::group::realization;
use crate::rational::{q, qr};

fn cv(xs: &[i64]) -> CoalgebraVector {
    CoalgebraVector(xs.iter().map(|&x| q(x)).collect())
}

fn params() -> SearchParams {
    SearchParams::default()
}

fn assert_sound(
    r: &GroupRealization,
    choice: CocycleChoice<'_>,
    mu: &CoalgebraVector,
    nu: &CoalgebraVector,
) {
    let v = same_orbit(r, choice, mu, nu, &params()).unwrap();
    if v.status == OrbitStatus::Equivalent {
        let w = v.witness.as_ref().unwrap();
        assert!(v.residual < 1e-8);
        let check =
            symplectomorphism_witness_check(r, choice, &nu.to_f64(), &mu.to_f64(), w).unwrap();
        assert!(check < 1e-7, "witness check {check}");
    }
}

#[test]
fn su2_profile_examples() {
    let su2 = realization("su2").unwrap();
    let p = orbit_invariants(&su2.algebra, None, &cv(&[0, 0, 1])).unwrap();
    assert_eq!(p.omega_rank, 2);
    assert_eq!(p.casimir_values, vec![("radius_squared".to_string(), 1.0)]);
    let p = orbit_invariants(&su2.algebra, None, &cv(&[0, 0, 0])).unwrap();
    assert_eq!(p.omega_rank, 0);
    assert_eq!(p.casimir_values[0].1, 0.0);
    let ab = realization("abelian2").unwrap();
    let weyl = &ab.cocycle("weyl").unwrap().gamma0;
    let p = orbit_invariants(&ab.algebra, Some(weyl), &cv(&[3, -7])).unwrap();
    assert_eq!(p.omega_rank, 2);
    assert!(p.casimir_values.is_empty());
}

#[test]
fn su2_rotation_witness() {
    let su2 = realization("su2").unwrap();
    let v = same_orbit(
        su2,
        CocycleChoice::None,
        &cv(&[0, 0, 1]),
        &cv(&[1, 0, 0]),
        &params(),
    )
    .unwrap();
    assert_eq!(v.status, OrbitStatus::Equivalent);
    assert!(v.residual < 1e-8);
    let w = v.witness.unwrap();
    let moved = deformed_action_at(su2, &Deformation::none(), &w, &[0.0, 0.0, 1.0]).unwrap();
    assert!((moved[0] - 1.0).abs() < 1e-8 && moved[1].abs() < 1e-8 && moved[2].abs() < 1e-8);
    let check = symplectomorphism_witness_check(
        su2,
        CocycleChoice::None,
        &[1.0, 0.0, 0.0],
        &[0.0, 0.0, 1.0],
        &w,
    )
    .unwrap();
    assert!(check < 1e-7);
}

#[test]
fn su2_analytic_witness_and_wrong_witness() {
    // rotation by π/2 about axis 2 carries (0,0,1) to (1,0,0) under Coad
    let su2 = realization("su2").unwrap();
    let t = [0.0, -std::f64::consts::FRAC_PI_2, 0.0];
    let moved = deformed_action_at(su2, &Deformation::none(), &t, &[0.0, 0.0, 1.0]).unwrap();
    let exact = [1.0, 0.0, 0.0];
    let alt = [-1.0, 0.0, 0.0];
    let d = |a: &[f64], b: &[f64]| {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    };
    assert!(d(&moved, &exact) < 1e-12 || d(&moved, &alt) < 1e-12);
    let wrong = symplectomorphism_witness_check(
        su2,
        CocycleChoice::None,
        &exact,
        &[0.0, 0.0, 1.0],
        &[0.3, 0.0, 0.0],
    )
    .unwrap();
    assert!(wrong > 0.1);
    let same = symplectomorphism_witness_check(su2, CocycleChoice::None, &exact, &exact, &[0.0; 3])
        .unwrap();
    assert_eq!(same, 0.0);
}

#[test]
fn su2_radius_separates() {
    let su2 = realization("su2").unwrap();
    let v = same_orbit(
        su2,
        CocycleChoice::None,
        &cv(&[0, 0, 1]),
        &cv(&[0, 0, 2]),
        &params(),
    )
    .unwrap();
    assert_eq!(v.status, OrbitStatus::Distinct);
    let sep = v.separating_invariant.unwrap();
    assert_eq!(sep.name, "radius_squared");
    assert_eq!((sep.first, sep.second), (1.0, 4.0));
}

#[test]
fn weyl_deformed_orbit_is_the_plane() {
    let ab = realization("abelian2").unwrap();
    let v = same_orbit(
        ab,
        CocycleChoice::Named("weyl"),
        &cv(&[1, 2]),
        &cv(&[0, 0]),
        &params(),
    )
    .unwrap();
    assert_eq!(v.status, OrbitStatus::Equivalent);
    // F(g) = (b, −a) = μ₂ − μ₁ has the unique solution a = 2, b = −1.
    let w = v.witness.unwrap();
    assert!((w[0] - 2.0).abs() < 1e-7 && (w[1] + 1.0).abs() < 1e-7);
}

#[test]
fn pseudo_class_examples() {
    let ab = realization("abelian2").unwrap();
    let (x, y) = (cv(&[1, 0]), cv(&[0, 1]));
    let v = pseudo_class_equivalent(ab, None, &x, &y, &params()).unwrap();
    assert_eq!(v.status, OrbitStatus::Distinct);
    assert_eq!(v.separating_invariant.unwrap().name, "fixed_point_distance");
    let v = pseudo_class_equivalent(ab, Some("weyl"), &x, &y, &params()).unwrap();
    assert_eq!(v.status, OrbitStatus::Equivalent);
    let w = v.witness.unwrap();
    let check = symplectomorphism_witness_check(
        ab,
        CocycleChoice::Named("weyl"),
        &[1.0, 0.0],
        &[0.0, 1.0],
        &w,
    )
    .unwrap();
    assert!(check < 1e-7);
    for r in crate::group::catalog().unwrap() {
        let mu = CoalgebraVector(vec![qr(1, 3); r.dim()]);
        let v = pseudo_class_equivalent(r, None, &mu, &mu, &params()).unwrap();
        assert_eq!(v.status, OrbitStatus::Equivalent);
        assert_eq!(v.witness.unwrap(), vec![0.0; r.dim()]);
        assert_eq!(v.residual, 0.0);
    }
}

#[test]
fn galilei_mass_orbit_through_zero() {
    let g = realization("galilei11").unwrap();
    let zero = cv(&[0, 0, 0]);
    let target = CoalgebraVector(vec![qr(-1, 2), q(1), q(0)]);
    let v = same_orbit(g, CocycleChoice::Named("mass"), &zero, &target, &params()).unwrap();
    assert_eq!(v.status, OrbitStatus::Equivalent);
    assert_sound(g, CocycleChoice::Named("mass"), &zero, &target);
    let off = cv(&[1, 1, 0]);
    let v = same_orbit(g, CocycleChoice::Named("mass"), &zero, &off, &params()).unwrap();
    assert_eq!(v.status, OrbitStatus::Distinct);
    assert_eq!(v.separating_invariant.unwrap().name, "internal_energy");
}

#[test]
fn poincare_hyperbola() {
    let p = realization("poincare11").unwrap();
    let mu = cv(&[2, 0, 0]);
    let nu = CoalgebraVector(vec![qr(5, 2), qr(3, 2), q(0)]);
    let v = same_orbit(p, CocycleChoice::None, &mu, &nu, &params()).unwrap();
    assert_eq!(v.status, OrbitStatus::Equivalent, "{v:?}");
    assert_sound(p, CocycleChoice::None, &mu, &nu);
}

#[test]
fn algebra_cocycle_resolution_matches_named() {
    let g = realization("galilei11").unwrap();
    let gamma = g.cocycle("mass").unwrap().gamma0.clone();
    let zero = cv(&[0, 0, 0]);
    let target = CoalgebraVector(vec![qr(-1, 2), q(1), q(0)]);
    let v = same_orbit(g, CocycleChoice::Algebra(&gamma), &zero, &target, &params()).unwrap();
    assert_eq!(v.status, OrbitStatus::Equivalent);
}

#[test]
fn reflexive_on_random_points() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for r in crate::group::catalog().unwrap() {
        for _ in 0..17 {
            let mu = CoalgebraVector(crate::rational::random_vec(&mut rng, r.dim()));
            let v = same_orbit(r, CocycleChoice::None, &mu, &mu, &params()).unwrap();
            assert_eq!(v.status, OrbitStatus::Equivalent);
            assert_eq!(v.residual, 0.0);
        }
    }
}

#[test]
fn casimirs_are_constant_along_orbits() {
    let cases: [(&str, CocycleChoice<'_>, &str, [f64; 3]); 6] = [
        (
            "su2",
            CocycleChoice::None,
            "radius_squared",
            [0.3, -1.0, 0.7],
        ),
        (
            "sl2r",
            CocycleChoice::None,
            "killing_form",
            [0.3, -1.0, 0.7],
        ),
        (
            "galilei11",
            CocycleChoice::None,
            "momentum_P",
            [0.3, -1.0, 0.7],
        ),
        (
            "galilei11",
            CocycleChoice::Named("mass"),
            "internal_energy",
            [0.3, -1.0, 0.7],
        ),
        (
            "poincare11",
            CocycleChoice::None,
            "mass_squared",
            [0.3, -1.0, 0.7],
        ),
        (
            "poincare11",
            CocycleChoice::Named("rest_energy"),
            "shifted_mass_squared",
            [0.3, -1.0, 0.7],
        ),
    ];
    for (name, choice, inv, mu) in cases {
        let r = realization(name).unwrap();
        let res = invariant_flow_residual(r, choice, inv, &mu, 10, 11).unwrap();
        assert!(res < 1e-9, "{name}/{inv}: {res}");
    }
    let h = realization("heisenberg1").unwrap();
    assert!(
        invariant_flow_residual(
            h,
            CocycleChoice::None,
            "central_X3",
            &[1.0, 2.0, 3.0],
            10,
            1
        )
        .unwrap()
            < 1e-12
    );
}

#[test]
fn sl2r_reports_carry_the_advisory() {
    let r = realization("sl2r").unwrap();
    let v = same_orbit(
        r,
        CocycleChoice::None,
        &cv(&[0, 0, 1]),
        &cv(&[0, 0, 1]),
        &params(),
    )
    .unwrap();
    assert!(v.notes.iter().any(|n| n.contains("multiply connected")));
}

#[test]
fn tiny_budget_is_inconclusive() {
    let su2 = realization("su2").unwrap();
    let p = SearchParams {
        budget: 3,
        restarts: 1,
        ..SearchParams::default()
    };
    let v = same_orbit(
        su2,
        CocycleChoice::None,
        &cv(&[0, 0, 1]),
        &cv(&[1, 0, 0]),
        &p,
    )
    .unwrap();
    assert_eq!(v.status, OrbitStatus::Inconclusive);
    assert!(v.witness.is_none() && v.residual > 0.0);
}

#[test]
fn no_contradictory_verdicts() {
    let corpus: [(&str, CocycleChoice<'_>, [i64; 3], [i64; 3]); 5] = [
        ("su2", CocycleChoice::None, [0, 0, 1], [1, 0, 0]),
        ("su2", CocycleChoice::None, [0, 0, 1], [0, 0, 2]),
        ("sl2r", CocycleChoice::None, [0, 0, 1], [0, 0, -1]),
        (
            "galilei11",
            CocycleChoice::Named("mass"),
            [0, 0, 0],
            [1, 1, 0],
        ),
        ("heisenberg1", CocycleChoice::None, [1, 0, 1], [0, 3, 1]),
    ];
    for (name, choice, a, b) in corpus {
        let r = realization(name).unwrap();
        let (a, b) = (cv(&a), cv(&b));
        let ab = same_orbit(r, choice, &a, &b, &params()).unwrap().status;
        let ba = same_orbit(r, choice, &b, &a, &params()).unwrap().status;
        let definite = |s| s != OrbitStatus::Inconclusive;
        if definite(ab) && definite(ba) {
            assert_eq!(ab, ba, "{name}");
        }
        assert_sound(r, choice, &a, &b);
        assert_sound(r, choice, &b, &a);
    }
}
