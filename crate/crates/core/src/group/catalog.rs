//! The compiled-in catalog. Each entry is self-tested once, on first use.

use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

use super::{
    gamma_from_xi, group_coboundary, noether_for, symplectic_coboundary_of_lambda, Action, Casimir,
    GroupCocycle, GroupElement, GroupRealization, Mat,
};
use crate::algebra::{AlgebraVector, LieAlgebra};
use crate::cohomology::AlgebraTwoCocycle;
use crate::error::{LiecoError, Result};
use crate::rational::q;
use crate::symplectic::CompactGeneratorDatum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SELF_TEST_SEED: u64 = 42;

fn mat(n: usize, entries: &[(usize, usize, f64)]) -> Mat {
    let mut m = Mat::zeros(n, n);
    for &(r, c, v) in entries {
        m[(r, c)] += v;
    }
    m
}

fn unit(n: usize, entries: &[(usize, usize, f64)]) -> Mat {
    mat(n, entries) + Mat::identity(n, n)
}

fn gamma(dim: usize, entries: &[(usize, usize, i64)]) -> AlgebraTwoCocycle {
    let e: Vec<_> = entries.iter().map(|&(i, j, c)| (i, j, q(c))).collect();
    AlgebraTwoCocycle::from_entries(dim, &e).expect("catalog cocycle entries")
}

fn datum(dim: usize, i: usize, period: f64) -> CompactGeneratorDatum {
    let mut v = AlgebraVector::zero(dim);
    v.0[i] = q(1);
    CompactGeneratorDatum {
        generator: v,
        period,
    }
}

fn boxed(n: usize, lo: f64, hi: f64) -> Vec<(f64, f64)> {
    vec![(lo, hi); n]
}

fn abelian2() -> GroupRealization {
    let algebra = LieAlgebra::abelian("abelian2", &["A", "B"]).unwrap();
    let mut r = GroupRealization::new(
        "abelian2",
        algebra,
        vec!["a", "b"],
        |g| unit(3, &[(0, 2, g[0]), (1, 2, g[1])]),
        |_, m| Ok(vec![m[(0, 2)], m[(1, 2)]]),
        vec![mat(3, &[(0, 2, 1.0)]), mat(3, &[(1, 2, 1.0)])],
        boxed(2, -3.0, 3.0),
        boxed(2, -6.0, 6.0),
    );
    r.cocycles.push(GroupCocycle {
        name: "weyl",
        xi: |gp, g| 0.5 * (gp[0] * g[1] - gp[1] * g[0]),
        lambda: None,
        gamma0: gamma(2, &[(0, 1, 1)]),
        noether: Some(|_, g| vec![g[1], -g[0]]),
        casimirs: Vec::new(),
    });
    r
}

fn heisenberg1() -> GroupRealization {
    let algebra =
        LieAlgebra::from_constants("heisenberg1", &["X1", "X2", "X3"], &[(0, 1, 2, q(1))]).unwrap();
    let mut r = GroupRealization::new(
        "heisenberg1",
        algebra,
        vec!["a", "b", "c"],
        |g| {
            unit(
                3,
                &[(0, 1, g[0]), (1, 2, g[1]), (0, 2, g[2] + 0.5 * g[0] * g[1])],
            )
        },
        |_, m| {
            let (a, b) = (m[(0, 1)], m[(1, 2)]);
            Ok(vec![a, b, m[(0, 2)] - 0.5 * a * b])
        },
        vec![
            mat(3, &[(0, 1, 1.0)]),
            mat(3, &[(1, 2, 1.0)]),
            mat(3, &[(0, 2, 1.0)]),
        ],
        boxed(3, -2.0, 2.0),
        boxed(3, -6.0, 6.0),
    );
    r.casimirs.push(Casimir {
        name: "central_X3",
        eval: |mu, _| mu[2],
    });
    r
}

fn galilei11() -> GroupRealization {
    // basis H, P, K; coordinates (b, a, v)
    let algebra =
        LieAlgebra::from_constants("galilei11", &["H", "P", "K"], &[(2, 0, 1, q(1))]).unwrap();
    let mut r = GroupRealization::new(
        "galilei11",
        algebra,
        vec!["b", "a", "v"],
        |g| unit(3, &[(0, 1, g[2]), (0, 2, g[1]), (1, 2, g[0])]),
        |_, m| Ok(vec![m[(1, 2)], m[(0, 2)], m[(0, 1)]]),
        vec![
            mat(3, &[(1, 2, 1.0)]),
            mat(3, &[(0, 2, 1.0)]),
            mat(3, &[(0, 1, 1.0)]),
        ],
        boxed(3, -2.0, 2.0),
        boxed(3, -6.0, 6.0),
    );
    r.casimirs.push(Casimir {
        name: "momentum_P",
        eval: |mu, _| mu[1],
    });
    // mass m = 1
    r.cocycles.push(GroupCocycle {
        name: "mass",
        xi: |gp, g| -(gp[2] * g[1] + 0.5 * gp[2] * gp[2] * g[0]),
        lambda: None,
        gamma0: gamma(3, &[(2, 1, -1)]),
        noether: Some(|_, g| vec![-0.5 * g[2] * g[2], g[2], g[2] * g[0] - g[1]]),
        casimirs: vec![Casimir {
            name: "internal_energy",
            eval: |mu, m| mu[0] + mu[1] * mu[1] / (2.0 * m),
        }],
    });
    r
}

fn poincare11() -> GroupRealization {
    // basis H, P, K; coordinates (b, a, χ)
    let algebra = LieAlgebra::from_constants(
        "poincare11",
        &["H", "P", "K"],
        &[(2, 0, 1, q(1)), (2, 1, 0, q(1))],
    )
    .unwrap();
    let mut r = GroupRealization::new(
        "poincare11",
        algebra,
        vec!["b", "a", "chi"],
        |g| {
            let (c, s) = (g[2].cosh(), g[2].sinh());
            mat(
                3,
                &[
                    (0, 0, c),
                    (0, 1, s),
                    (1, 0, s),
                    (1, 1, c),
                    (0, 2, g[1]),
                    (1, 2, g[0]),
                    (2, 2, 1.0),
                ],
            )
        },
        |_, m| Ok(vec![m[(1, 2)], m[(0, 2)], m[(0, 1)].asinh()]),
        vec![
            mat(3, &[(1, 2, 1.0)]),
            mat(3, &[(0, 2, 1.0)]),
            mat(3, &[(0, 1, 1.0), (1, 0, 1.0)]),
        ],
        boxed(3, -2.0, 2.0),
        boxed(3, -5.0, 5.0),
    );
    r.casimirs.push(Casimir {
        name: "mass_squared",
        eval: |mu, _| mu[0] * mu[0] - mu[1] * mu[1],
    });
    // λ(g) = −m·b with m = 1, so λ⁰ = (−1, 0, 0) and ξ = ξ_λ.
    r.cocycles.push(GroupCocycle {
        name: "rest_energy",
        xi: |gp, g| -(gp[2].sinh() * g[1] + (gp[2].cosh() - 1.0) * g[0]),
        lambda: Some(|g| -g[0]),
        gamma0: gamma(3, &[(2, 1, -1)]),
        noether: Some(|r, g| {
            symplectic_coboundary_of_lambda(r, &[-1.0, 0.0, 0.0], &GroupElement::new(g.to_vec()))
                .expect("global chart")
        }),
        casimirs: vec![Casimir {
            name: "shifted_mass_squared",
            eval: |mu, m| (mu[0] - m) * (mu[0] - m) - mu[1] * mu[1],
        }],
    });
    r
}

/// Real 4×4 form of a complex 2×2 matrix, `x + iy ↦ [[x, −y], [y, x]]`.
fn complex2(re: [[f64; 2]; 2], im: [[f64; 2]; 2]) -> Mat {
    let mut m = Mat::zeros(4, 4);
    for r in 0..2 {
        for c in 0..2 {
            m[(2 * r, 2 * c)] = re[r][c];
            m[(2 * r, 2 * c + 1)] = -im[r][c];
            m[(2 * r + 1, 2 * c)] = im[r][c];
            m[(2 * r + 1, 2 * c + 1)] = re[r][c];
        }
    }
    m
}

fn su2_embed(t: &[f64]) -> Mat {
    let (c1, s1) = ((t[0] / 2.0).cos(), (t[0] / 2.0).sin());
    let (c2, s2) = ((t[1] / 2.0).cos(), (t[1] / 2.0).sin());
    let (c3, s3) = ((t[2] / 2.0).cos(), (t[2] / 2.0).sin());
    let e1 = complex2([[c1, 0.0], [0.0, c1]], [[0.0, -s1], [-s1, 0.0]]);
    let e2 = complex2([[c2, -s2], [s2, c2]], [[0.0; 2]; 2]);
    let e3 = complex2([[c3, 0.0], [0.0, c3]], [[-s3, 0.0], [0.0, s3]]);
    e1 * e2 * e3
}

fn su2_extract(r: &GroupRealization, m: &Mat) -> Result<Vec<f64>> {
    // Tait-Bryan angles of R = Ad(M) = R1(t1) R2(t2) R3(t3), then fix the
    // sign ambiguity SU(2) → SO(3) with t1 ± 2π.
    let rot = r.ad_of_matrix(m);
    let s2 = rot[(0, 2)].clamp(-1.0, 1.0);
    if (1.0 - s2 * s2).sqrt() < 1e-3 {
        return Err(LiecoError::ChartOverflow(format!(
            "su2 second-kind chart degenerates (sin t2 = {s2})"
        )));
    }
    let mut t = vec![
        (-rot[(1, 2)]).atan2(rot[(2, 2)]),
        s2.asin(),
        (-rot[(0, 1)]).atan2(rot[(0, 0)]),
    ];
    let rebuilt = su2_embed(&t);
    if (&rebuilt - m).amax() > 1e-6 {
        if (&rebuilt + m).amax() > 1e-6 {
            return Err(LiecoError::ChartOverflow("matrix is not in SU(2)".into()));
        }
        t[0] += if t[0] > 0.0 { -TAU } else { TAU };
    }
    Ok(t)
}

fn su2() -> GroupRealization {
    let algebra = LieAlgebra::from_constants(
        "su2",
        &["X1", "X2", "X3"],
        &[(0, 1, 2, q(1)), (1, 2, 0, q(1)), (2, 0, 1, q(1))],
    )
    .unwrap();
    // E_a = −(i/2) σ_a
    let basis = vec![
        complex2([[0.0; 2]; 2], [[0.0, -0.5], [-0.5, 0.0]]),
        complex2([[0.0, -0.5], [0.5, 0.0]], [[0.0; 2]; 2]),
        complex2([[0.0; 2]; 2], [[-0.5, 0.0], [0.0, 0.5]]),
    ];
    let mut r = GroupRealization::new(
        "su2",
        algebra,
        vec!["t1", "t2", "t3"],
        su2_embed,
        su2_extract,
        basis,
        boxed(3, -0.8, 0.8),
        boxed(3, -PI, PI),
    );
    r.casimirs.push(Casimir {
        name: "radius_squared",
        eval: |mu, _| mu[0] * mu[0] + mu[1] * mu[1] + mu[2] * mu[2],
    });
    r.compact_data.push(datum(3, 2, 2.0 * TAU));
    r
}

fn sl2r_embed(t: &[f64]) -> Mat {
    let (ch, sh) = ((t[0] / 2.0).cosh(), (t[0] / 2.0).sinh());
    let (c, s) = ((t[2] / 2.0).cos(), (t[2] / 2.0).sin());
    let a = Mat::from_row_slice(2, 2, &[ch, sh, sh, ch]);
    let d = Mat::from_row_slice(2, 2, &[(t[1] / 2.0).exp(), 0.0, 0.0, (-t[1] / 2.0).exp()]);
    let k = Mat::from_row_slice(2, 2, &[c, s, -s, c]);
    a * d * k
}

fn sl2r_extract(_: &GroupRealization, m: &Mat) -> Result<Vec<f64>> {
    // M = A D K with A symmetric positive, D diagonal, K a rotation; the
    // factorization is global, read from P = M Mᵀ = A D² A.
    let p = m * m.transpose();
    let t2 = ((p[(0, 0)] - p[(1, 1)]) / 2.0).asinh();
    let t1 = (p[(0, 1)] / t2.cosh()).asinh();
    let ad = sl2r_embed(&[t1, t2, 0.0]);
    let k = ad
        .try_inverse()
        .ok_or_else(|| LiecoError::ChartOverflow("singular sl2r factor".into()))?
        * m;
    let t3 = 2.0 * k[(0, 1)].atan2(k[(0, 0)]);
    let t = vec![t1, t2, t3];
    if !t.iter().all(|x| x.is_finite()) || (sl2r_embed(&t) - m).amax() > 1e-6 * m.amax().max(1.0) {
        return Err(LiecoError::ChartOverflow("matrix is not in SL(2,R)".into()));
    }
    Ok(t)
}

fn sl2r() -> GroupRealization {
    let algebra = LieAlgebra::from_constants(
        "sl2r",
        &["X1", "X2", "X3"],
        &[(0, 1, 2, q(-1)), (1, 2, 0, q(1)), (2, 0, 1, q(1))],
    )
    .unwrap();
    let basis = vec![
        Mat::from_row_slice(2, 2, &[0.0, 0.5, 0.5, 0.0]),
        Mat::from_row_slice(2, 2, &[0.5, 0.0, 0.0, -0.5]),
        Mat::from_row_slice(2, 2, &[0.0, 0.5, -0.5, 0.0]),
    ];
    let mut r = GroupRealization::new(
        "sl2r",
        algebra,
        vec!["t1", "t2", "t3"],
        sl2r_embed,
        sl2r_extract,
        basis,
        boxed(3, -0.8, 0.8),
        vec![(-4.0, 4.0), (-4.0, 4.0), (-TAU, TAU)],
    );
    r.casimirs.push(Casimir {
        name: "killing_form",
        eval: |mu, _| mu[0] * mu[0] + mu[1] * mu[1] - mu[2] * mu[2],
    });
    r.compact_data.push(datum(3, 2, 2.0 * TAU));
    r.advisory = Some(
        "sl2r orbits can be multiply connected; equivalence here is decided at the level of λ⁰ only and does not \
         separate inequivalent pseudo-cocycles sharing the same gradient",
    );
    r
}

fn build() -> Vec<GroupRealization> {
    vec![
        abelian2(),
        heisenberg1(),
        galilei11(),
        poincare11(),
        su2(),
        sl2r(),
    ]
}

/// Draws `count` samples, skipping draws the closure rejects with a chart
/// overflow.
pub(crate) fn sample_many<T>(
    realization: &GroupRealization,
    rng: &mut ChaCha8Rng,
    count: usize,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> Result<T>,
) -> Result<Vec<T>> {
    let mut out = Vec::with_capacity(count);
    let mut misses = 0usize;
    while out.len() < count {
        match draw(rng) {
            Ok(v) => out.push(v),
            Err(LiecoError::ChartOverflow(msg)) => {
                misses += 1;
                if misses > 20 * count + 100 {
                    return Err(LiecoError::ChartOverflow(format!(
                        "{}: sampler keeps leaving the chart ({msg})",
                        realization.name
                    )));
                }
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn fail(realization: &GroupRealization, check: &str, residual: f64) -> LiecoError {
    LiecoError::CatalogSelfTestFailure {
        realization: realization.name.to_string(),
        check: check.to_string(),
        residual,
    }
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Checks every invariant a catalog entry must satisfy; the first
/// violation is returned as [`LiecoError::CatalogSelfTestFailure`].
pub fn self_test(r: &GroupRealization) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(SELF_TEST_SEED);
    let e = r.identity();

    let mut worst = 0.0f64;
    for g in sample_many(r, &mut rng, 200, |rng| Ok(r.sample(rng)))? {
        worst = worst
            .max(max_diff(&r.law(&e, &g)?.coords, &g.coords))
            .max(max_diff(&r.law(&g, &e)?.coords, &g.coords));
    }
    if worst > 1e-12 {
        return Err(fail(r, "law_identity", worst));
    }

    worst = 0.0;
    for g in sample_many(r, &mut rng, 200, |rng| {
        let g = r.sample(rng);
        let inv = r.inverse(&g)?;
        Ok((inv, g))
    })? {
        worst = worst.max(max_diff(&r.law(&g.0, &g.1)?.coords, &e.coords));
    }
    if worst > 1e-12 {
        return Err(fail(r, "law_inverse", worst));
    }

    worst = 0.0;
    for (gp, g, prod) in sample_many(r, &mut rng, 500, |rng| {
        let (gp, g) = (r.sample(rng), r.sample(rng));
        let prod = r.law(&gp, &g)?;
        Ok((gp, g, prod))
    })? {
        let lhs = r.ad(&prod)?;
        let rhs = r.ad(&gp)? * r.ad(&g)?;
        worst = worst.max((lhs - rhs).amax());
    }
    if worst > 1e-9 {
        return Err(fail(r, "ad_homomorphism", worst));
    }

    for datum in &r.compact_data {
        let x = datum.generator.to_f64_vec();
        let m = (r.algebra_matrix(&x) * datum.period).exp();
        let n = m.nrows();
        let res = (m - Mat::identity(n, n)).amax();
        if res > 1e-9 {
            return Err(fail(r, "compact_period", res));
        }
    }

    for c in &r.cocycles {
        c.gamma0
            .check_closed(&r.algebra)
            .map_err(|_| fail(r, &format!("{}: gamma0_closed", c.name), f64::NAN))?;
        let xi = c.xi;
        worst = 0.0;
        for triple in sample_many(r, &mut rng, 1000, |rng| {
            let t = [r.sample(rng), r.sample(rng), r.sample(rng)];
            let v = group_coboundary(
                r,
                Action::Trivial,
                2,
                &|gs| Ok(vec![xi(&gs[0].coords, &gs[1].coords)]),
                &t,
            )?;
            Ok(v[0])
        })? {
            worst = worst.max(triple.abs());
        }
        if worst > 1e-9 {
            return Err(fail(r, &format!("{}: two_cocycle_identity", c.name), worst));
        }

        let from_xi = gamma_from_xi(r, &|a, b| xi(a, b));
        let res = (from_xi - c.gamma0.matrix().to_f64()).amax();
        if res > 1e-6 {
            return Err(fail(r, &format!("{}: gamma0_matches_xi", c.name), res));
        }

        if let Some(lambda) = c.lambda {
            worst = 0.0;
            for (gp, g) in (0..200).map(|_| (r.sample(&mut rng), r.sample(&mut rng))) {
                let v = super::coboundary_from_lambda(r, &lambda, &gp, &g)?;
                worst = worst.max((v - xi(&gp.coords, &g.coords)).abs());
            }
            if worst > 1e-9 {
                return Err(fail(
                    r,
                    &format!("{}: xi_is_lambda_coboundary", c.name),
                    worst,
                ));
            }
        }

        if let Some(closed) = c.noether {
            worst = 0.0;
            for g in (0..50).map(|_| r.sample(&mut rng)) {
                let numeric = noether_for(r, &|a, b| xi(a, b), &g)?;
                worst = worst.max(max_diff(&closed(r, &g.coords), &numeric));
            }
            if worst > 1e-6 {
                return Err(fail(r, &format!("{}: closed_form_noether", c.name), worst));
            }
        }
    }
    Ok(())
}

static CATALOG: OnceLock<Result<Vec<GroupRealization>>> = OnceLock::new();

/// All catalog realizations, self-tested on first access.
pub fn catalog() -> Result<&'static [GroupRealization]> {
    CATALOG
        .get_or_init(|| {
            let entries = build();
            for r in &entries {
                self_test(r)?;
            }
            Ok(entries)
        })
        .as_deref()
        .map_err(Clone::clone)
}

pub fn realization(name: &str) -> Result<&'static GroupRealization> {
    catalog()?
        .iter()
        .find(|r| r.name == name)
        .ok_or_else(|| LiecoError::UnknownRealization(name.to_string()))
}

/// The catalog entry whose algebra has exactly these structure constants.
pub fn realization_for_algebra(algebra: &LieAlgebra) -> Result<Option<&'static GroupRealization>> {
    Ok(catalog()?
        .iter()
        .find(|r| r.algebra.same_constants(algebra)))
}

#[cfg(test)]
pub(crate) fn unchecked() -> Vec<GroupRealization> {
    build()
}
