//! Executes job specifications.

use dybe::fusion::{
    abrr_fusion, classical_limit, exchange_matrix, fusion_exchange_construction,
    shapovalov_vs_fusion, DynOp,
};
use dybe::macdonald::{
    commutator_check, diffop_report, eigen_check, macdonald_operator, macdonald_polynomial,
    mr_residual_of, symmetry_residual, trace_function_series, transfer_diffop,
    transfer_macdonald_check, transfer_macdonald_sides, MrSide,
};
use dybe::reps::{sym_power, WeightModule};
use dybe::rootdata::RootDatum;
use dybe::scalars::{parse_scalar, Matrix, Mode, Scalar};
use dybe::verify::{
    cdybe_residual, dynamical_hecke_rep, hecke_check, qdybe_residual, unitarity_check,
    ResidualReport,
};
use dybe::{Error, Result};
use serde_json::{json, Value};

use crate::acceptance;
use crate::job::{
    Equation, JobSpec, MacdonaldTask, Method, ModulePair, Task, TraceSide, JOB_SCHEMA,
};
use crate::solution::{build, module, module_pair, Built};

/// Result of a job: whether every requested check passed, and the artifact.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub pass: bool,
    pub artifact: Value,
}

impl Outcome {
    fn artifact(artifact: Value) -> Outcome {
        Outcome {
            pass: true,
            artifact,
        }
    }

    fn checked(schema: &str, reports: &[ResidualReport], mut extra: Value) -> Outcome {
        let pass = reports.iter().all(|r| r.is_zero);
        extra["schema"] = schema.into();
        extra["pass"] = pass.into();
        extra["reports"] = reports.iter().map(ResidualReport::to_json).collect();
        Outcome {
            pass,
            artifact: extra,
        }
    }
}

/// Process exit code for an error: 2 for unparsable input, 3 for violated
/// preconditions.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => 2,
        _ => 3,
    }
}

/// Canonical text of an artifact.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn parse_job(text: &str) -> Result<JobSpec> {
    let job: JobSpec = serde_json::from_str(text).map_err(|e| Error::Parse(format!("job: {e}")))?;
    if job.schema != JOB_SCHEMA {
        return Err(Error::Parse(format!(
            "job schema {:?} is not {JOB_SCHEMA:?}",
            job.schema
        )));
    }
    Ok(job)
}

pub fn run(job: &JobSpec) -> Result<Outcome> {
    match &job.task {
        Task::Verify {
            equation,
            solution,
            q,
            p,
        } => {
            let built = build(solution)?;
            let q = q.as_deref().map(parse_scalar).transpose()?;
            verify(&built, *equation, q, *p)
        }
        Task::Catalog { solution } => Ok(Outcome::artifact(build(solution)?.to_json())),
        Task::Fusion { pair, method } => pipelines(pair, *method, false),
        Task::Exchange { pair, method } => pipelines(pair, *method, true),
        Task::Limit { solution, order } => {
            let mut s = solution.clone();
            if s.catalog.as_deref() == Some("gl-closed-form") {
                s.quantum = true;
            }
            limit(&build(&s)?, s.catalog.as_deref(), *order)
        }
        Task::Shapovalov { depth, quantum } => shapovalov(*depth, *quantum),
        Task::Macdonald { job } => macdonald(job),
        Task::Acceptance { criteria } => {
            let results = acceptance::run(criteria)?;
            let pass = results.iter().all(|r| r.pass);
            let rows: Vec<Value> = results
                .iter()
                .map(acceptance::CriterionResult::to_json)
                .collect();
            Ok(Outcome {
                pass,
                artifact: json!({ "schema": "dybe.acceptance/1", "pass": pass, "criteria": rows }),
            })
        }
    }
}

fn verify(built: &Built, equation: Equation, q: Option<Scalar>, p: usize) -> Result<Outcome> {
    let wrong = |eq: &str, kind: &str| {
        Err(Error::Precondition(format!(
            "{eq} does not apply to a {kind} solution"
        )))
    };
    let mut reports = Vec::new();
    match built {
        Built::Classical(r) => {
            let want_all = equation == Equation::All;
            match equation {
                Equation::Cdybe | Equation::Unitarity | Equation::All => {}
                Equation::Qdybe => return wrong("qdybe", "classical"),
                Equation::Hecke => return wrong("hecke", "classical"),
                Equation::Braid => return wrong("braid", "classical"),
            }
            if want_all || equation == Equation::Cdybe {
                reports.push(cdybe_residual(r));
            }
            if want_all || equation == Equation::Unitarity {
                reports.push(unitarity_check(r, r.coupling()));
            }
        }
        Built::Quantum { r, hecke_q, .. } => {
            let hecke = || {
                q.clone().or_else(|| hecke_q.clone()).ok_or_else(|| {
                    Error::Precondition(
                        "this solution has no default Hecke parameter; pass --q".into(),
                    )
                })
            };
            match equation {
                Equation::Qdybe => reports.push(qdybe_residual(r)?),
                Equation::Hecke => reports.push(hecke_check(r, &hecke()?)?),
                Equation::Braid => reports.push(dynamical_hecke_rep(r, p, &hecke()?)?.report),
                Equation::All => {
                    reports.push(qdybe_residual(r)?);
                    if q.is_some() || hecke_q.is_some() {
                        reports.push(hecke_check(r, &hecke()?)?);
                    }
                }
                Equation::Cdybe => return wrong("cdybe", "quantum"),
                Equation::Unitarity => return wrong("unitarity", "quantum"),
            }
        }
    }
    Ok(Outcome::checked("dybe.verify/1", &reports, json!({})))
}

fn pipelines(pair: &ModulePair, method: Method, exchange: bool) -> Result<Outcome> {
    let (v, w) = module_pair(pair)?;
    let compute = |construction: bool| -> Result<DynOp> {
        match (exchange, construction) {
            (false, true) => fusion_exchange_construction(&v, &w),
            (false, false) => abrr_fusion(&v, &w),
            (true, true) => exchange_matrix(&v, &w, fusion_exchange_construction),
            (true, false) => exchange_matrix(&v, &w, abrr_fusion),
        }
    };
    let schema = if exchange {
        "dybe.exchange/1"
    } else {
        "dybe.fusion/1"
    };
    let mut out = json!({ "schema": schema, "left": v.label(), "right": w.label() });
    let mut pass = true;
    match method {
        Method::Construction => out["construction"] = compute(true)?.to_json(),
        Method::Abrr => out["abrr"] = compute(false)?.to_json(),
        Method::Both => {
            let (a, b) = (compute(true)?, compute(false)?);
            pass = a.matrix() == b.matrix();
            out["agree"] = pass.into();
            out["construction"] = a.to_json();
            out["abrr"] = b.to_json();
        }
    }
    out["pass"] = pass.into();
    Ok(Outcome {
        pass,
        artifact: out,
    })
}

fn limit(built: &Built, catalog: Option<&str>, order: usize) -> Result<Outcome> {
    let Built::Quantum { r, .. } = built else {
        return Err(Error::Precondition(
            "the γ-expansion needs a quantum solution (pass --quantum)".into(),
        ));
    };
    if r.mode() != Mode::Quantum {
        return Err(Error::Precondition(
            "the γ-expansion needs a quantum solution (pass --quantum)".into(),
        ));
    }
    let lim = classical_limit(r, order)?;
    let coefficients: Vec<Value> = (0..=order)
        .map(|k| Value::Object(lim.coefficient(k).to_text_map()))
        .collect();
    let mut reports = Vec::new();
    if catalog == Some("gl-closed-form") && order >= 1 {
        let d = r.datum();
        let v = WeightModule::vector(d, Mode::Classical);
        let want = dybe::catalog::basic_trig_r(d, &parse_scalar("e")?)?
            .evaluate(&v, &v)?
            .neg();
        let name = vec![format!("{} exchange", d.name())];
        reports.push(ResidualReport::from_matrices(
            "constant-term",
            &name,
            &lim.constant_term(),
            &Matrix::identity(lim.dim),
        ));
        reports.push(ResidualReport::from_matrices(
            "first-order",
            &name,
            &lim.first_order(),
            &want,
        ));
    }
    Ok(Outcome::checked(
        "dybe.limit/1",
        &reports,
        json!({ "order": order, "coefficients": coefficients }),
    ))
}

fn shapovalov(depth: usize, quantum: bool) -> Result<Outcome> {
    let mode = if quantum {
        Mode::Quantum
    } else {
        Mode::Classical
    };
    let rows = shapovalov_vs_fusion(&RootDatum::sl(2)?, depth, mode)?;
    let pass = rows.iter().all(|r| r.residual().is_zero());
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "degree": r.n,
                "gram": r.gram.to_text(),
                "inverse_form": r.inverse_form.to_text(),
                "fusion": r.fusion.to_text(),
                "residual": r.residual().to_text(),
            })
        })
        .collect();
    Ok(Outcome {
        pass,
        artifact: json!({ "schema": "dybe.shapovalov/1", "pass": pass, "rows": rows }),
    })
}

fn sl2_module(mode: Mode, name: &str) -> Result<WeightModule> {
    module(&RootDatum::sl(2)?, mode, name)
}

fn macdonald(job: &MacdonaldTask) -> Result<Outcome> {
    match job {
        MacdonaldTask::Operator { n, r, t } => Ok(Outcome::artifact(
            macdonald_operator(*n, *r, &parse_scalar(t)?)?.to_json(),
        )),
        MacdonaldTask::Polynomial { mu, t } => {
            let p = macdonald_polynomial(mu, &parse_scalar(t)?)?;
            Ok(Outcome::artifact(
                json!({ "schema": "dybe.polynomial/1", "mu": mu, "t": t, "polynomial": p.to_text() }),
            ))
        }
        MacdonaldTask::Eigen { mu, t } => Ok(Outcome::checked(
            "dybe.macdonald/1",
            &[eigen_check(mu, &parse_scalar(t)?)?],
            json!({}),
        )),
        MacdonaldTask::Commutativity { n, degree, t } => {
            let t = parse_scalar(t)?;
            let mut reports = Vec::new();
            for a in 1..=*n {
                for b in a + 1..=*n {
                    reports.push(commutator_check(*n, a, b, &t, *degree)?);
                }
            }
            Ok(Outcome::checked("dybe.macdonald/1", &reports, json!({})))
        }
        MacdonaldTask::Transfer { quantum, u, v, w } => {
            let mode = if *quantum {
                Mode::Quantum
            } else {
                Mode::Classical
            };
            let (u, v) = (sl2_module(mode, u)?, sl2_module(mode, v)?);
            let dv = transfer_diffop(&u, &v, abrr_fusion)?;
            let mut out = json!({ "operator": dv.to_json() });
            let mut reports = Vec::new();
            if let Some(w) = w {
                let w = sl2_module(mode, w)?;
                let dw = transfer_diffop(&u, &w, abrr_fusion)?;
                let dvw = transfer_diffop(&u, &v.tensor(&w)?, abrr_fusion)?;
                let names = vec![
                    u.label().to_string(),
                    v.label().to_string(),
                    w.label().to_string(),
                ];
                reports.push(diffop_report(
                    "transfer-tensor",
                    &names,
                    &dv.compose(&dw)?,
                    &dvw,
                )?);
                reports.push(diffop_report(
                    "transfer-commute",
                    &names,
                    &dv.compose(&dw)?,
                    &dw.compose(&dv)?,
                )?);
            }
            out["schema"] = "dybe.transfer/1".into();
            if reports.is_empty() {
                return Ok(Outcome::artifact(out));
            }
            Ok(Outcome::checked("dybe.transfer/1", &reports, out))
        }
        MacdonaldTask::Corollary91 { n, r, m } => {
            let rep = transfer_macdonald_check(*n, *r, *m)?;
            let (lhs, rhs) = transfer_macdonald_sides(*n, *r, *m)?;
            Ok(Outcome::checked(
                "dybe.corollary91/1",
                &[rep],
                json!({ "lhs": lhs.to_json(), "rhs": rhs.to_json() }),
            ))
        }
        MacdonaldTask::TraceResidual { side, depth, w } => {
            let v = sym_power(&WeightModule::vector(&RootDatum::sl(2)?, Mode::Quantum), 2)?;
            let f = trace_function_series(&v, *depth)?;
            let rep = match side {
                TraceSide::Primal => {
                    mr_residual_of(&f, &v, &sl2_module(Mode::Quantum, w)?, MrSide::Primal)?
                }
                TraceSide::Dual => {
                    mr_residual_of(&f, &v, &sl2_module(Mode::Quantum, w)?, MrSide::Dual)?
                }
                TraceSide::Symmetry => {
                    let fd = trace_function_series(&v.dual(), *depth)?;
                    symmetry_residual(&f, &fd, *depth)?
                }
            };
            Ok(Outcome::checked(
                "dybe.trace/1",
                &[rep],
                json!({ "series": f.to_json() }),
            ))
        }
    }
}
