//! Builds solutions from their descriptors.

use dybe::catalog::{
    basic_rational_r, basic_trig_r, classical_r_trig_x, classical_r_zero_coupling, gl_closed_forms,
    quantum_r_eps_x, quantum_r_x, triple_r, BDTriple, ClassicalRMatrix, ClosedForm,
};
use dybe::fusion::DynOp;
use dybe::reps::{ext_power, sym_power, WeightModule};
use dybe::rootdata::{Elem, Flavor, Root, RootDatum};
use dybe::scalars::{parse_scalar, Mode, Scalar};
use dybe::verify::{gauge_classical, gauge_quantum, ClassicalGauge, QuantumGauge};
use dybe::{Error, Result};
use num::BigRational;

use crate::job::{Gauge, ModulePair, Perturbation, Solution};

pub const CATALOG_NAMES: [&str; 8] = [
    "basic-rational",
    "basic-trig",
    "r-l",
    "r-eps-X",
    "appA",
    "R-X",
    "R-eps-X",
    "gl-closed-form",
];

/// A constructed solution.
pub enum Built {
    Classical(ClassicalRMatrix),
    Quantum {
        r: DynOp,
        /// Fusion matrix when the family comes with one.
        j: Option<DynOp>,
        /// Hecke parameter of the family, if it has a fixed one.
        hecke_q: Option<Scalar>,
    },
}

impl Built {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Built::Classical(r) => r.to_json(),
            Built::Quantum { r, j: Some(j), .. } => serde_json::json!({
                "schema": "dybe.pair/1",
                "fusion": j.to_json(),
                "exchange": r.to_json(),
            }),
            Built::Quantum { r, .. } => r.to_json(),
        }
    }
}

pub fn rational(text: &str) -> Result<BigRational> {
    text.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("not a rational number: {text:?}")))
}

fn zero_based(xs: &[usize], what: &str) -> Result<Vec<usize>> {
    xs.iter()
        .map(|&x| {
            x.checked_sub(1)
                .ok_or_else(|| Error::Parse(format!("{what} indices are 1-based")))
        })
        .collect()
}

fn datum(s: &Solution) -> Result<RootDatum> {
    let n = s.n.unwrap_or(2);
    match s.flavor.unwrap_or(Flavor::Gl) {
        Flavor::Gl => RootDatum::gl(n),
        Flavor::Sl => RootDatum::sl(n),
    }
}

fn eps(s: &Solution) -> Result<Scalar> {
    parse_scalar(s.eps.as_deref().unwrap_or("e"))
}

pub fn build(s: &Solution) -> Result<Built> {
    let built = match (&s.catalog, &s.file) {
        (Some(_), Some(_)) => {
            return Err(Error::Parse(
                "give either a catalog name or a file, not both".into(),
            ))
        }
        (None, None) => {
            return Err(Error::Parse(
                "a solution needs a catalog name or a file".into(),
            ))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            let v: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            Built::Quantum {
                r: DynOp::from_json(&v)?,
                j: None,
                hecke_q: None,
            }
        }
        (Some(name), None) => catalog(name, s)?,
    };
    let built = match &s.gauge {
        Some(g) => gauge(built, g)?,
        None => built,
    };
    perturb(built, &s.perturb)
}

fn catalog(name: &str, s: &Solution) -> Result<Built> {
    let n = s.n.unwrap_or(2);
    let classical = |r| Ok(Built::Classical(r));
    match name {
        "basic-rational" => classical(basic_rational_r(&datum(s)?)?),
        "basic-trig" => classical(basic_trig_r(&datum(s)?, &eps(s)?)?),
        "r-l" => {
            let roots = s
                .roots
                .iter()
                .map(|&(a, b)| match (a.checked_sub(1), b.checked_sub(1)) {
                    (Some(a), Some(b)) if a < b => Ok(Root::new(a, b)),
                    _ => Err(Error::Parse(format!(
                        "({a}, {b}) is not a positive root of 1-based indices"
                    ))),
                })
                .collect::<Result<Vec<_>>>()?;
            classical(classical_r_zero_coupling(&datum(s)?, &roots)?)
        }
        "r-eps-X" => classical(classical_r_trig_x(
            &datum(s)?,
            &zero_based(&s.x, "X")?,
            &eps(s)?,
        )?),
        "appA" => {
            let n = s.n.unwrap_or(3);
            let triple =
                if s.gamma1.is_empty() && s.gamma2.is_empty() && s.l_basis.is_empty() && n == 3 {
                    BDTriple::new(vec![0], vec![1], vec![vec![1, 1, 1], vec![1, 0, -1]])
                } else {
                    BDTriple::new(
                        zero_based(&s.gamma1, "Γ₁")?,
                        zero_based(&s.gamma2, "Γ₂")?,
                        s.l_basis.clone(),
                    )
                };
            classical(triple_r(&triple, &RootDatum::gl(n)?)?)
        }
        "R-X" => Ok(Built::Quantum {
            r: quantum_r_x(n, &zero_based(&s.x, "X")?)?,
            j: None,
            hecke_q: Some(Scalar::one()),
        }),
        "R-eps-X" => Ok(Built::Quantum {
            r: quantum_r_eps_x(n, &zero_based(&s.x, "X")?)?,
            j: None,
            hecke_q: Some(Scalar::q()),
        }),
        "gl-closed-form" => {
            let mode = if s.quantum {
                Mode::Quantum
            } else {
                Mode::Classical
            };
            let form = if s.printed {
                ClosedForm::AsPrinted
            } else {
                ClosedForm::Consistent
            };
            let (j, r) = gl_closed_forms(n, mode, form)?;
            Ok(Built::Quantum {
                r,
                j: Some(j),
                hecke_q: None,
            })
        }
        other => Err(Error::Parse(format!(
            "unknown catalog name {other:?}; expected one of {}",
            CATALOG_NAMES.join(", ")
        ))),
    }
}

fn rationals(xs: &[String]) -> Result<Vec<BigRational>> {
    xs.iter().map(|x| rational(x)).collect()
}

fn gauge(built: Built, g: &Gauge) -> Result<Built> {
    match built {
        Built::Classical(r) => {
            let cg = match g {
                Gauge::Shift { nu } => ClassicalGauge::Shift(rationals(nu)?),
                Gauge::ExpShift { nu } => ClassicalGauge::ExpShift(rationals(nu)?),
                Gauge::Weyl { sigma } => ClassicalGauge::Weyl(zero_based(sigma, "σ")?),
                Gauge::TwoForm { entries } => ClassicalGauge::TwoForm(
                    entries
                        .iter()
                        .map(|(a, b, c)| {
                            let ab = zero_based(&[*a, *b], "2-form")?;
                            Ok((ab[0], ab[1], parse_scalar(c)?))
                        })
                        .collect::<Result<_>>()?,
                ),
            };
            Ok(Built::Classical(gauge_classical(&r, &cg)?))
        }
        Built::Quantum { r, hecke_q, .. } => {
            let qg = match g {
                Gauge::Shift { nu } => QuantumGauge::Shift(rationals(nu)?),
                Gauge::ExpShift { .. } => {
                    return Err(Error::InvalidGauge(
                        "exponential shifts apply to classical solutions".into(),
                    ))
                }
                Gauge::Weyl { sigma } => QuantumGauge::Permute(zero_based(sigma, "σ")?),
                Gauge::TwoForm { entries } => {
                    let n = r.factors()[0].dim();
                    let mut phi = vec![vec![Scalar::one(); n]; n];
                    for (a, b, c) in entries {
                        let ab = zero_based(&[*a, *b], "2-form")?;
                        if ab[0] >= n || ab[1] >= n || ab[0] == ab[1] {
                            return Err(Error::InvalidGauge(format!(
                                "bad 2-form index ({a}, {b})"
                            )));
                        }
                        let c = parse_scalar(c)?;
                        phi[ab[1]][ab[0]] = c.inv()?;
                        phi[ab[0]][ab[1]] = c;
                    }
                    QuantumGauge::TwoForm(phi)
                }
            };
            Ok(Built::Quantum {
                r: gauge_quantum(&r, &qg)?,
                j: None,
                hecke_q,
            })
        }
    }
}

fn elem(text: &str) -> Result<Elem> {
    let digits: Vec<usize> = text
        .trim()
        .strip_prefix('E')
        .ok_or_else(|| Error::Parse(format!("expected E<a><b>, got {text:?}")))?
        .chars()
        .map(|c| c.to_digit(10).map(|d| d as usize))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Parse(format!("expected E<a><b>, got {text:?}")))?;
    match digits[..] {
        [a, b] if a >= 1 && b >= 1 => Ok(Elem { a: a - 1, b: b - 1 }),
        _ => Err(Error::Parse(format!(
            "expected E<a><b> with 1-based digits, got {text:?}"
        ))),
    }
}

fn perturb(built: Built, ps: &[Perturbation]) -> Result<Built> {
    if ps.is_empty() {
        return Ok(built);
    }
    match built {
        Built::Classical(r) => {
            let mut t = r.tensor().clone();
            for p in ps {
                let (x, y) =
                    p.at.split_once(',')
                        .ok_or_else(|| Error::Parse(format!("bad location {:?}", p.at)))?;
                t.add_term(elem(x)?, elem(y)?, parse_scalar(&p.by)?);
            }
            Ok(Built::Classical(r.with_tensor("perturbed", t)?))
        }
        Built::Quantum { r, hecke_q, .. } => {
            let mut m = r.matrix().clone();
            for p in ps {
                let (i, j) =
                    p.at.split_once(',')
                        .and_then(|(i, j)| {
                            Some((
                                i.trim().parse::<usize>().ok()?,
                                j.trim().parse::<usize>().ok()?,
                            ))
                        })
                        .ok_or_else(|| Error::Parse(format!("bad location {:?}", p.at)))?;
                if i >= m.rows() || j >= m.cols() {
                    return Err(Error::Parse(format!(
                        "location {:?} is outside the matrix",
                        p.at
                    )));
                }
                m.set(i, j, m.get(i, j) + &parse_scalar(&p.by)?);
            }
            Ok(Built::Quantum {
                r: DynOp::new(r.factors().to_vec(), m)?,
                j: None,
                hecke_q,
            })
        }
    }
}

/// Parses a module name over `datum`: `V`, `1`, `S<k>` or `L<k>`.
pub fn module(datum: &RootDatum, mode: Mode, name: &str) -> Result<WeightModule> {
    let v = WeightModule::vector(datum, mode);
    let power = |rest: &str| {
        rest.parse::<usize>()
            .map_err(|_| Error::Parse(format!("unknown module {name:?}")))
    };
    match name {
        "V" => Ok(v),
        "1" => Ok(WeightModule::trivial(datum, mode)),
        _ if name.starts_with('S') => sym_power(&v, power(&name[1..])?),
        _ if name.starts_with('L') => ext_power(&v, power(&name[1..])?),
        _ => Err(Error::Parse(format!(
            "unknown module {name:?}; expected V, 1, S<k> or L<k>"
        ))),
    }
}

pub fn module_pair(p: &ModulePair) -> Result<(WeightModule, WeightModule)> {
    let d = RootDatum::from_name(&p.algebra)?;
    let mode = if p.quantum {
        Mode::Quantum
    } else {
        Mode::Classical
    };
    Ok((module(&d, mode, &p.left)?, module(&d, mode, &p.right)?))
}
