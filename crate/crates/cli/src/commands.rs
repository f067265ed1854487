use std::path::Path;

use lieco_core::cohomology::{
    central_extension, coboundary_of, h2_decompose, h2_report, iw_contraction, pseudo_extension,
    read_back_cocycle, trivialize_pseudo_extension, CentralExtension,
};
use lieco_core::group::{
    realization, realization_for_algebra, verify_all, verify_periods, GroupRealization,
};
use lieco_core::io::{parse_algebra_file, parse_cocycle_file, parse_csv, serialize_algebra};
use lieco_core::orbit::{
    orbit_invariants, pseudo_class_equivalent_with, same_orbit, symplectomorphism_witness_check,
    CocycleChoice, OrbitStatus, OrbitVerdict, SearchParams, CASIMIR_RESOLUTION,
};
use lieco_core::symplectic::{
    characteristic_subalgebra, coad_isotropy_kernel, integrality_check, presymplectic_matrix,
    IntegralityDetail, INTEGRALITY_TOL,
};
use lieco_core::{
    AlgebraTwoCocycle, AlgebraVector, CoalgebraVector, LieAlgebra, LiecoError, QMatrix, Q,
};
use serde_json::{json, Value};

use crate::args::{Command, Deform, Search};
use crate::render;
use crate::{CliError, Context, Outcome};

type Outcomed = Result<(Value, Outcome), CliError>;

fn read_file(ctx: &mut Context, role: &str, arg: &str) -> Result<Option<String>, CliError> {
    let path = Path::new(arg);
    if !path.is_file() {
        return Ok(None);
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read `{arg}`: {e}")))?;
    ctx.input(role, arg, &text);
    Ok(Some(text))
}

fn load_algebra(ctx: &mut Context, arg: &str) -> Result<LieAlgebra, CliError> {
    if let Some(text) = read_file(ctx, "algebra", arg)? {
        return Ok(parse_algebra_file(&text)?);
    }
    match realization(arg) {
        Ok(r) => {
            ctx.input(
                "algebra",
                &format!("catalog:{arg}"),
                &serialize_algebra(&r.algebra),
            );
            Ok(r.algebra.clone())
        }
        Err(LiecoError::UnknownRealization(_)) => Err(CliError::input(format!(
            "`{arg}` is neither a readable algebra file nor a catalog realization"
        ))),
        Err(e) => Err(e.into()),
    }
}

fn require_realization(algebra: &LieAlgebra) -> Result<&'static GroupRealization, CliError> {
    realization_for_algebra(algebra)?.ok_or_else(|| {
        CliError::input(format!(
            "no catalog realization has the structure constants of `{}`; this command needs a group",
            algebra.name()
        ))
    })
}

struct Cocycle {
    gamma: AlgebraTwoCocycle,
    /// Set when the cocycle is a catalog cocycle of the matching realization.
    name: Option<String>,
}

impl Cocycle {
    fn choice(&self) -> CocycleChoice<'_> {
        match &self.name {
            Some(n) => CocycleChoice::Named(n),
            None => CocycleChoice::Algebra(&self.gamma),
        }
    }

    fn describe(&self, algebra: &LieAlgebra) -> Value {
        json!({ "name": self.name, "entries": render::cocycle(algebra, &self.gamma) })
    }
}

fn load_cocycle(
    ctx: &mut Context,
    deform: &Deform,
    algebra: &LieAlgebra,
) -> Result<Option<Cocycle>, CliError> {
    let Some(arg) = deform.cocycle.as_deref() else {
        return Ok(None);
    };
    if let Some(text) = read_file(ctx, "cocycle", arg)? {
        return Ok(Some(Cocycle {
            gamma: parse_cocycle_file(&text, algebra)?,
            name: None,
        }));
    }
    let r = realization_for_algebra(algebra)?.ok_or_else(|| {
        CliError::input(format!(
            "`{arg}` is not a readable cocycle file and `{}` has no catalog realization to name cocycles",
            algebra.name()
        ))
    })?;
    let c = r.cocycle(arg)?;
    Ok(Some(Cocycle {
        gamma: c.gamma0.clone(),
        name: Some(arg.to_string()),
    }))
}

fn functional(flag: &str, text: &str, dim: usize) -> Result<CoalgebraVector, CliError> {
    let v = parse_csv(text).map_err(|e| CliError::flag(flag, e))?;
    if v.len() != dim {
        return Err(CliError::from(LiecoError::DimensionMismatch {
            expected: dim,
            found: v.len(),
        })
        .with_context(flag));
    }
    Ok(CoalgebraVector(v))
}

fn floats(flag: &str, text: &str, dim: usize) -> Result<Vec<f64>, CliError> {
    let v: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::input(format!("{flag}: {e}")))?;
    if v.len() != dim || v.iter().any(|x| !x.is_finite()) {
        return Err(CliError::input(format!(
            "{flag}: expected {dim} finite values"
        )));
    }
    Ok(v)
}

fn search_params(ctx: &mut Context, s: &Search) -> Result<SearchParams, CliError> {
    let seed = ctx.seed(s.seed)?;
    if s.tol.is_nan() || s.tol <= 0.0 {
        return Err(CliError::input("--tol must be positive"));
    }
    ctx.tolerance("tol", s.tol);
    ctx.tolerance("casimir_resolution", CASIMIR_RESOLUTION);
    ctx.parameter("restarts", json!(s.restarts));
    ctx.parameter("budget", json!(s.budget));
    Ok(SearchParams {
        tol: s.tol,
        restarts: s.restarts,
        budget: s.budget,
        seed,
    })
}

fn extension(ext: &CentralExtension) -> Value {
    json!({
        "extended": render::algebra(&ext.extended),
        "central": ext.extended.basis_names()[ext.central_index],
        "canonical": serialize_algebra(&ext.extended),
    })
}

fn span_rank(vs: &[AlgebraVector]) -> usize {
    if vs.is_empty() {
        0
    } else {
        QMatrix::from_rows(&vs.iter().map(|v| v.0.clone()).collect::<Vec<_>>()).rank()
    }
}

fn same_span(a: &[AlgebraVector], b: &[AlgebraVector]) -> bool {
    let both: Vec<AlgebraVector> = a.iter().chain(b).cloned().collect();
    let r = span_rank(a);
    r == span_rank(b) && r == span_rank(&both)
}

fn verdict_outcome(v: &OrbitVerdict) -> Outcome {
    if v.status == OrbitStatus::Distinct {
        Outcome::Negative
    } else {
        Outcome::Ok
    }
}

pub fn dispatch(ctx: &mut Context, command: &Command) -> Outcomed {
    match command {
        Command::Validate { algebra, .. } => {
            let a = load_algebra(ctx, algebra)?;
            Ok((
                json!({
                    "algebra": render::algebra(&a),
                    "antisymmetry": "ok",
                    "jacobi": "ok",
                    "canonical": serialize_algebra(&a),
                }),
                Outcome::Ok,
            ))
        }
        Command::H2 {
            algebra, deform, ..
        } => {
            let a = load_algebra(ctx, algebra)?;
            let gamma = load_cocycle(ctx, deform, &a)?;
            let rep = h2_report(&a);
            let mut out = json!({
                "algebra": a.name(),
                "basis": a.basis_names(),
                "z2": rep.z2_dim,
                "b2": rep.b2_dim,
                "h2": rep.h2_dim,
                "z2_basis": render::cocycles(&a, &rep.z2_basis),
                "b2_basis": render::cocycles(&a, &rep.b2_basis),
                "h2_representatives": render::cocycles(&a, &rep.h2_representatives),
            });
            if let Some(c) = gamma {
                let d = h2_decompose(&a, &c.gamma)?;
                out["cocycle"] = c.describe(&a);
                out["class"] = json!({
                    "trivial": d.trivial,
                    "mu": d.mu.as_ref().map(|m| render::qvec(&m.0)),
                    "representative": render::cocycle(&a, &d.representative),
                });
            }
            Ok((out, Outcome::Ok))
        }
        Command::Extend {
            algebra, deform, ..
        } => {
            let a = load_algebra(ctx, algebra)?;
            let c = load_cocycle(ctx, deform, &a)?
                .ok_or_else(|| CliError::input("extend needs --cocycle"))?;
            let ext = central_extension(&a, &c.gamma)?;
            let trivial = h2_decompose(&a, &c.gamma)?.trivial;
            let mut out =
                json!({ "base": a.name(), "cocycle": c.describe(&a), "class_trivial": trivial });
            merge(&mut out, extension(&ext));
            Ok((out, Outcome::Ok))
        }
        Command::PseudoExtend { algebra, l0, .. } => {
            let a = load_algebra(ctx, algebra)?;
            let l0 = functional("--l0", l0, a.dim())?;
            let ext = pseudo_extension(&a, &l0)?;
            let mut out = json!({
                "base": a.name(),
                "l0": render::qvec(&l0.0),
                "cocycle": render::cocycle(&a, &ext.cocycle),
                "read_back_matches": read_back_cocycle(&ext) == ext.cocycle,
            });
            merge(&mut out, extension(&ext));
            Ok((out, Outcome::Ok))
        }
        Command::Trivialize {
            algebra,
            l0,
            deform,
            ..
        } => {
            let a = load_algebra(ctx, algebra)?;
            let ext = match (l0, load_cocycle(ctx, deform, &a)?) {
                (Some(l), None) => pseudo_extension(&a, &functional("--l0", l, a.dim())?)?,
                (None, Some(c)) => central_extension(&a, &c.gamma)?,
                _ => {
                    return Err(CliError::input(
                        "trivialize needs exactly one of --l0 and --cocycle",
                    ))
                }
            };
            let mut out = json!({ "base": a.name(), "cocycle": render::cocycle(&a, &ext.cocycle) });
            merge(&mut out, extension(&ext));
            match trivialize_pseudo_extension(&ext) {
                Err(LiecoError::NotACoboundary) => {
                    let d = h2_decompose(&a, &ext.cocycle)?;
                    out["trivial"] = json!(false);
                    out["representative"] = render::cocycle(&a, &d.representative);
                    Ok((out, Outcome::Negative))
                }
                Err(e) => Err(e.into()),
                Ok(t) => {
                    let changed = ext.extended.change_basis(&t, None)?;
                    let n = a.dim();
                    let decoupled = (0..n).all(|i| {
                        (0..n).all(|j| {
                            changed.constant(i, j, ext.central_index) == Q::from_integer(0.into())
                        })
                    });
                    out["trivial"] = json!(true);
                    out["basis_change"] = render::matrix(&t);
                    out["trivialized"] = render::algebra(&changed);
                    out["decoupled"] = json!(decoupled);
                    Ok((
                        out,
                        if decoupled {
                            Outcome::Ok
                        } else {
                            Outcome::Negative
                        },
                    ))
                }
            }
        }
        Command::Omega {
            algebra,
            l0,
            deform,
            ..
        } => {
            let a = load_algebra(ctx, algebra)?;
            let c = load_cocycle(ctx, deform, &a)?;
            let l0 = functional("--l0", l0, a.dim())?;
            let form = presymplectic_matrix(&a, &l0, c.as_ref().map(|c| &c.gamma))?;
            let pairs: Vec<Value> = form
                .basis
                .pairs
                .iter()
                .map(|(e, f)| json!({ "e": render::qvec(e), "f": render::qvec(f) }))
                .collect();
            let kernel: Vec<Value> = form.basis.kernel.iter().map(|k| render::qvec(k)).collect();
            Ok((
                json!({
                    "algebra": a.name(),
                    "l0": render::qvec(&l0.0),
                    "cocycle": c.as_ref().map(|c| c.describe(&a)),
                    "matrix": render::matrix(&form.omega),
                    "rank": form.rank,
                    "darboux": { "pairs": pairs, "kernel": kernel },
                }),
                Outcome::Ok,
            ))
        }
        Command::CharSub {
            algebra,
            l0,
            deform,
            ..
        } => {
            let a = load_algebra(ctx, algebra)?;
            let c = load_cocycle(ctx, deform, &a)?;
            let l0 = functional("--l0", l0, a.dim())?;
            let gamma = c.as_ref().map(|c| &c.gamma);
            let sub = characteristic_subalgebra(&a, &l0, gamma)?;
            let (iso, equal) = if gamma.is_none_or(AlgebraTwoCocycle::is_zero) {
                let iso = coad_isotropy_kernel(&a, &l0)?;
                let eq = same_span(&sub.basis, &iso);
                (Some(render::vectors(&iso)), Some(eq))
            } else {
                (None, None)
            };
            Ok((
                json!({
                    "algebra": a.name(),
                    "l0": render::qvec(&l0.0),
                    "cocycle": c.as_ref().map(|c| c.describe(&a)),
                    "dim": sub.basis.len(),
                    "basis": render::vectors(&sub.basis),
                    "closed_under_bracket": sub.closed_under_bracket,
                    "coad_isotropy": iso,
                    "equals_isotropy": equal,
                }),
                Outcome::Ok,
            ))
        }
        Command::Orbit {
            algebra,
            mu,
            nu,
            deform,
            search,
            ..
        } => {
            let a = load_algebra(ctx, algebra)?;
            let r = require_realization(&a)?;
            let c = load_cocycle(ctx, deform, &a)?;
            let (mu, nu) = (
                functional("--mu", mu, a.dim())?,
                functional("--nu", nu, a.dim())?,
            );
            let params = search_params(ctx, search)?;
            let choice = c.as_ref().map_or(CocycleChoice::None, Cocycle::choice);
            let v = same_orbit(r, choice, &mu, &nu, &params)?;
            let gamma = c.as_ref().map(|c| &c.gamma);
            let mut out = json!({
                "realization": r.name,
                "cocycle": c.as_ref().map(|c| c.describe(&a)),
                "mu": render::qvec(&mu.0),
                "nu": render::qvec(&nu.0),
                "invariants": {
                    "mu": render::profile(&orbit_invariants(&a, gamma, &mu)?),
                    "nu": render::profile(&orbit_invariants(&a, gamma, &nu)?),
                },
                "verdict": render::verdict(&v),
            });
            if let Some(w) = &v.witness {
                // h carries μ to ν, so ν plays the role of λ⁰₁
                let check =
                    symplectomorphism_witness_check(r, choice, &nu.to_f64(), &mu.to_f64(), w)?;
                out["witness_check"] = render::float(check);
            }
            Ok((out, verdict_outcome(&v)))
        }
        Command::PseudoClass {
            algebra,
            l0,
            l0b,
            deform,
            search,
            ..
        } => {
            let a = load_algebra(ctx, algebra)?;
            let r = require_realization(&a)?;
            let c = load_cocycle(ctx, deform, &a)?;
            let (l1, l2) = (
                functional("--l0", l0, a.dim())?,
                functional("--l0b", l0b, a.dim())?,
            );
            let params = search_params(ctx, search)?;
            let choice = c.as_ref().map_or(CocycleChoice::None, Cocycle::choice);
            let v = pseudo_class_equivalent_with(r, choice, &l1, &l2, &params)?;
            let mut out = json!({
                "realization": r.name,
                "base_cocycle": c.as_ref().map(|c| c.describe(&a)),
                "l0": render::qvec(&l1.0),
                "l0b": render::qvec(&l2.0),
                "verdict": render::verdict(&v),
            });
            if let Some(w) = &v.witness {
                let check =
                    symplectomorphism_witness_check(r, choice, &l1.to_f64(), &l2.to_f64(), w)?;
                out["witness_check"] = render::float(check);
            }
            Ok((out, verdict_outcome(&v)))
        }
        Command::WitnessCheck {
            algebra,
            l0,
            l0b,
            witness,
            deform,
            tol,
            ..
        } => {
            let a = load_algebra(ctx, algebra)?;
            let r = require_realization(&a)?;
            let c = load_cocycle(ctx, deform, &a)?;
            let (l1, l2) = (
                functional("--l0", l0, a.dim())?,
                functional("--l0b", l0b, a.dim())?,
            );
            let w = floats("--witness", witness, a.dim())?;
            ctx.tolerance("tol", *tol);
            let choice = c.as_ref().map_or(CocycleChoice::None, Cocycle::choice);
            let residual =
                symplectomorphism_witness_check(r, choice, &l1.to_f64(), &l2.to_f64(), &w)?;
            let passed = residual < *tol;
            Ok((
                json!({
                    "realization": r.name,
                    "cocycle": c.as_ref().map(|c| c.describe(&a)),
                    "l0": render::qvec(&l1.0),
                    "l0b": render::qvec(&l2.0),
                    "witness": render::floats(&w),
                    "residual": render::float(residual),
                    "passed": passed,
                }),
                if passed {
                    Outcome::Ok
                } else {
                    Outcome::Negative
                },
            ))
        }
        Command::Integrality { algebra, l0, .. } => {
            let a = load_algebra(ctx, algebra)?;
            let r = require_realization(&a)?;
            let l0 = functional("--l0", l0, a.dim())?;
            ctx.tolerance("integrality", INTEGRALITY_TOL);
            let report = integrality_check(&a, &l0, &r.compact_data)?;
            let details: Vec<Value> = report
                .details
                .iter()
                .map(|d| match d {
                    IntegralityDetail::Checked {
                        generator,
                        period,
                        value,
                        winding,
                        integral,
                    } => json!({
                        "generator": render::qvec(&generator.0),
                        "period": render::float(*period),
                        "value": render::float(*value),
                        "winding": render::float(*winding),
                        "integral": integral,
                    }),
                    IntegralityDetail::Skipped { generator, reason } => json!({
                        "generator": render::qvec(&generator.0),
                        "skipped": reason,
                    }),
                })
                .collect();
            let periods = verify_periods(r);
            let periods_ok = periods.iter().all(|p| p.passed);
            let mut notes = Vec::new();
            if r.compact_data.is_empty() {
                notes.push(format!(
                    "{} declares no compact directions; the condition is vacuous",
                    r.name
                ));
            }
            notes.extend(report.note.clone());
            Ok((
                json!({
                    "realization": r.name,
                    "l0": render::qvec(&l0.0),
                    "integral": report.integral,
                    "details": details,
                    "period_checks": render::checks(&periods),
                    "notes": notes,
                }),
                if report.integral && periods_ok {
                    Outcome::Ok
                } else {
                    Outcome::Negative
                },
            ))
        }
        Command::Contract {
            algebra,
            sub,
            scale,
            l0,
            deform,
            ..
        } => {
            let a = load_algebra(ctx, algebra)?;
            let names: Vec<String> = sub
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect();
            let gamma = match (l0, load_cocycle(ctx, deform, &a)?) {
                (Some(l), None) => Some(coboundary_of(&a, &functional("--l0", l, a.dim())?)?),
                (None, Some(c)) => Some(c.gamma),
                (None, None) => None,
                _ => {
                    return Err(CliError::input(
                        "contract takes at most one of --l0 and --cocycle",
                    ))
                }
            };
            let c = iw_contraction(&a, &names, gamma.as_ref(), *scale)?;
            let matches = realization_for_algebra(&c.algebra)?.map(|r| r.name);
            let mut out = json!({
                "algebra": a.name(),
                "subalgebra": names,
                "weights": c.weights,
                "scale": scale,
                "contracted": render::algebra(&c.algebra),
                "catalog_match": matches,
                "canonical": serialize_algebra(&c.algebra),
            });
            if let (Some(before), Some(after)) = (&gamma, &c.cocycle) {
                let d0 = h2_decompose(&a, before)?;
                let d1 = h2_decompose(&c.algebra, after)?;
                out["cocycle"] = json!({
                    "original": render::cocycle(&a, before),
                    "original_trivial": d0.trivial,
                    "contracted": render::cocycle(&c.algebra, after),
                    "contracted_trivial": d1.trivial,
                    "contracted_representative": render::cocycle(&c.algebra, &d1.representative),
                });
            }
            Ok((out, Outcome::Ok))
        }
        Command::GroupVerify {
            algebra,
            samples,
            seed,
            tol,
            ..
        } => {
            let a = load_algebra(ctx, algebra)?;
            let r = require_realization(&a)?;
            let seed = ctx.seed(*seed)?;
            ctx.tolerance("tol", *tol);
            ctx.parameter("samples", json!(samples));
            let checks = verify_all(r, *samples, seed, *tol)?;
            let passed = checks.iter().all(|c| c.passed);
            Ok((
                json!({
                    "realization": r.name,
                    "passed": passed,
                    "checks": render::checks(&checks),
                }),
                if passed {
                    Outcome::Ok
                } else {
                    Outcome::Negative
                },
            ))
        }
        Command::Catalog { name, .. } => {
            let list: Vec<&GroupRealization> = match name {
                Some(n) => vec![realization(n)?],
                None => lieco_core::group::catalog()?.iter().collect(),
            };
            let entries: Vec<Value> = list
                .iter()
                .map(|r| {
                    let cocycles: Vec<Value> = r
                        .cocycles
                        .iter()
                        .map(|c| {
                            json!({
                                "name": c.name,
                                "gamma0": render::cocycle(&r.algebra, &c.gamma0),
                                "casimirs": c.casimirs.iter().map(|k| k.name).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    let compact: Vec<Value> = r
                        .compact_data
                        .iter()
                        .map(|d| json!({ "generator": render::qvec(&d.generator.0), "period": render::float(d.period) }))
                        .collect();
                    let mut e = json!({
                        "name": r.name,
                        "dim": r.dim(),
                        "algebra": render::algebra(&r.algebra),
                        "coordinates": r.coord_names,
                        "casimirs": r.casimirs.iter().map(|k| k.name).collect::<Vec<_>>(),
                        "cocycles": cocycles,
                        "compact_data": compact,
                        "advisory": r.advisory,
                        "self_test": "passed",
                    });
                    if name.is_some() {
                        e["canonical"] = json!(serialize_algebra(&r.algebra));
                    }
                    e
                })
                .collect();
            Ok((json!({ "realizations": entries }), Outcome::Ok))
        }
    }
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}
