use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dybe::rootdata::Flavor;
use dybe::{Error, Result};
use dybe_cli::job::{
    Equation, Gauge, MacdonaldTask, Method, ModulePair, Perturbation, Solution, Task, TraceSide,
};
use dybe_cli::{exit_code, parse_job, render, run, JobSpec};

/// Exact checks of dynamical Yang-Baxter structures.
///
/// Exit status: 0 when every requested check passes, 1 when a check fails,
/// 2 for unparsable input, 3 for violated preconditions. The worker pool size
/// is read from DYBE_WORKERS.
#[derive(Parser)]
#[command(name = "dybe", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the artifact to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Print the job specification instead of running it.
    #[arg(long, global = true)]
    emit_job: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Residual checks of a solution.
    Verify {
        #[arg(value_enum)]
        equation: EquationArg,
        #[command(flatten)]
        solution: SolutionArgs,
        /// Hecke parameter (scalar text; q is s^2).
        #[arg(long)]
        q: Option<String>,
        /// Tensor factors for the braid-group check.
        #[arg(long, default_value_t = 3)]
        p: usize,
    },
    /// Builds a catalog solution and prints it.
    Catalog {
        #[command(flatten)]
        solution: SolutionArgs,
    },
    /// Fusion matrices by the exchange construction and the ABRR recursion.
    Fusion(PairArgs),
    /// Exchange matrices by either fusion pipeline.
    Exchange(PairArgs),
    /// γ-expansion of a quantum solution.
    Limit {
        #[command(flatten)]
        solution: SolutionArgs,
        #[arg(long, default_value_t = 1)]
        order: usize,
    },
    /// Inverse Shapovalov form against the universal fusion matrix at λ = 0.
    Shapovalov {
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long)]
        quantum: bool,
    },
    /// Macdonald and transfer difference operators, trace functions.
    #[command(subcommand)]
    Macdonald(MacdonaldCommand),
    /// Runs acceptance criteria (all by default).
    Acceptance {
        #[arg(long = "criterion", value_delimiter = ',')]
        criteria: Vec<usize>,
    },
    /// Runs a JSON job specification.
    Run {
        #[arg(long)]
        job: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EquationArg {
    Qdybe,
    Hecke,
    Braid,
    Cdybe,
    Unitarity,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Construction,
    Abrr,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Gl,
    Sl,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Primal,
    Dual,
    Symmetry,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long, default_value = "sl2")]
    algebra: String,
    #[arg(long)]
    quantum: bool,
    /// Left module: V, 1, S<k> or L<k>.
    #[arg(long, default_value = "V")]
    left: String,
    #[arg(long, default_value = "V")]
    right: String,
    #[arg(long, value_enum, default_value = "both")]
    method: MethodArg,
}

#[derive(Args)]
struct SolutionArgs {
    /// basic-rational, basic-trig, r-l, r-eps-X, appA, R-X, R-eps-X or gl-closed-form.
    #[arg(long)]
    catalog: Option<String>,
    /// Operator JSON written by `catalog`.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum)]
    flavor: Option<FlavorArg>,
    #[arg(long)]
    quantum: bool,
    /// Subset X, 1-based.
    #[arg(long = "X", alias = "x", value_delimiter = ',')]
    x: Vec<usize>,
    /// Positive roots as a-b, 1-based.
    #[arg(long, value_delimiter = ',')]
    roots: Vec<String>,
    /// Coupling constant (scalar text).
    #[arg(long)]
    eps: Option<String>,
    #[arg(long, value_delimiter = ',')]
    gamma1: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    gamma2: Vec<usize>,
    /// Basis of l, rows separated by ';'.
    #[arg(long, allow_hyphen_values = true)]
    l_basis: Option<String>,
    /// Use the closed forms exactly as printed.
    #[arg(long)]
    printed: bool,
    /// Shift gauge ν, comma-separated rationals.
    #[arg(long, allow_hyphen_values = true)]
    gauge_shift: Option<String>,
    /// Exponential shift gauge of a trigonometric solution.
    #[arg(long, allow_hyphen_values = true)]
    gauge_exp_shift: Option<String>,
    /// Weyl gauge σ, a permutation of 1..n.
    #[arg(long)]
    gauge_weyl: Option<String>,
    /// Closed 2-form entries a,b,c separated by ';'.
    #[arg(long, allow_hyphen_values = true)]
    gauge_two_form: Option<String>,
    /// Perturbation LOCATION:EXPR, e.g. 0,0:l1 or E12,E21:1.
    #[arg(long, allow_hyphen_values = true)]
    perturb: Vec<String>,
}

#[derive(Subcommand)]
enum MacdonaldCommand {
    /// Dumps the operator M_r.
    Operator {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Macdonald parameter (scalar text in s and mt).
        #[arg(long, default_value = "mt")]
        t: String,
    },
    /// Macdonald polynomial P_μ.
    Polynomial {
        #[arg(long, value_delimiter = ',')]
        mu: Vec<usize>,
        #[arg(long, default_value = "mt")]
        t: String,
    },
    /// Eigen-equations of P_μ.
    Eigen {
        #[arg(long, value_delimiter = ',')]
        mu: Vec<usize>,
        #[arg(long, default_value = "mt")]
        t: String,
    },
    /// Commutativity of M_1..M_n.
    Commutativity {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, default_value = "mt")]
        t: String,
    },
    /// Transfer operator D^U_V of sl2, and D^U_(V⊗W) = D^U_V D^U_W when --w is given.
    Transfer {
        #[arg(long)]
        quantum: bool,
        #[arg(long, default_value = "S2")]
        u: String,
        #[arg(long, default_value = "V")]
        v: String,
        #[arg(long)]
        w: Option<String>,
    },
    /// Transfer operators of exterior powers against Macdonald operators.
    Corollary91 {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        m: usize,
    },
    /// Trace-function identities for quantum sl2 through a finite order.
    TraceResidual {
        #[arg(long, value_enum, default_value = "primal")]
        side: SideArg,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value = "V")]
        w: String,
    },
}

fn parse_err(what: &str, text: &str) -> Error {
    Error::Parse(format!("bad {what}: {text:?}"))
}

fn index_list(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|x| x.trim().parse().map_err(|_| parse_err("index list", text)))
        .collect()
}

fn string_list(text: &str) -> Vec<String> {
    text.split(',').map(|x| x.trim().to_string()).collect()
}

fn solution(a: SolutionArgs) -> Result<Solution> {
    let roots = a
        .roots
        .iter()
        .map(|r| {
            let (x, y) = r.split_once('-').ok_or_else(|| parse_err("root", r))?;
            Ok((
                x.trim().parse().map_err(|_| parse_err("root", r))?,
                y.trim().parse().map_err(|_| parse_err("root", r))?,
            ))
        })
        .collect::<Result<_>>()?;
    let l_basis = match &a.l_basis {
        Some(t) => t
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|x| x.trim().parse().map_err(|_| parse_err("basis", t)))
                    .collect()
            })
            .collect::<Result<_>>()?,
        None => Vec::new(),
    };
    let mut gauges = Vec::new();
    if let Some(t) = &a.gauge_shift {
        gauges.push(Gauge::Shift { nu: string_list(t) });
    }
    if let Some(t) = &a.gauge_exp_shift {
        gauges.push(Gauge::ExpShift { nu: string_list(t) });
    }
    if let Some(t) = &a.gauge_weyl {
        gauges.push(Gauge::Weyl {
            sigma: index_list(t)?,
        });
    }
    if let Some(t) = &a.gauge_two_form {
        let entries = t
            .split(';')
            .map(|e| match e.splitn(3, ',').collect::<Vec<_>>()[..] {
                [x, y, c] => Ok((
                    x.trim().parse().map_err(|_| parse_err("2-form entry", e))?,
                    y.trim().parse().map_err(|_| parse_err("2-form entry", e))?,
                    c.trim().to_string(),
                )),
                _ => Err(parse_err("2-form entry", e)),
            })
            .collect::<Result<_>>()?;
        gauges.push(Gauge::TwoForm { entries });
    }
    if gauges.len() > 1 {
        return Err(Error::Parse("give at most one gauge".into()));
    }
    let perturb = a
        .perturb
        .iter()
        .map(|p| {
            let (at, by) = p
                .split_once(':')
                .ok_or_else(|| parse_err("perturbation", p))?;
            Ok(Perturbation {
                at: at.trim().into(),
                by: by.trim().into(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(Solution {
        catalog: a.catalog,
        file: a.file,
        n: a.n,
        flavor: a.flavor.map(|f| match f {
            FlavorArg::Gl => Flavor::Gl,
            FlavorArg::Sl => Flavor::Sl,
        }),
        quantum: a.quantum,
        x: a.x,
        roots,
        eps: a.eps,
        gamma1: a.gamma1,
        gamma2: a.gamma2,
        l_basis,
        printed: a.printed,
        gauge: gauges.pop(),
        perturb,
    })
}

fn pair(a: PairArgs) -> (ModulePair, Method) {
    let method = match a.method {
        MethodArg::Construction => Method::Construction,
        MethodArg::Abrr => Method::Abrr,
        MethodArg::Both => Method::Both,
    };
    (
        ModulePair {
            algebra: a.algebra,
            quantum: a.quantum,
            left: a.left,
            right: a.right,
        },
        method,
    )
}

fn task(c: Command) -> Result<Task> {
    Ok(match c {
        Command::Verify {
            equation,
            solution: s,
            q,
            p,
        } => {
            let equation = match equation {
                EquationArg::Qdybe => Equation::Qdybe,
                EquationArg::Hecke => Equation::Hecke,
                EquationArg::Braid => Equation::Braid,
                EquationArg::Cdybe => Equation::Cdybe,
                EquationArg::Unitarity => Equation::Unitarity,
                EquationArg::All => Equation::All,
            };
            Task::Verify {
                equation,
                solution: solution(s)?,
                q,
                p,
            }
        }
        Command::Catalog { solution: s } => Task::Catalog {
            solution: solution(s)?,
        },
        Command::Fusion(a) => {
            let (pair, method) = pair(a);
            Task::Fusion { pair, method }
        }
        Command::Exchange(a) => {
            let (pair, method) = pair(a);
            Task::Exchange { pair, method }
        }
        Command::Limit { solution: s, order } => Task::Limit {
            solution: solution(s)?,
            order,
        },
        Command::Shapovalov { depth, quantum } => Task::Shapovalov { depth, quantum },
        Command::Macdonald(m) => Task::Macdonald {
            job: match m {
                MacdonaldCommand::Operator { n, r, t } => MacdonaldTask::Operator { n, r, t },
                MacdonaldCommand::Polynomial { mu, t } => MacdonaldTask::Polynomial { mu, t },
                MacdonaldCommand::Eigen { mu, t } => MacdonaldTask::Eigen { mu, t },
                MacdonaldCommand::Commutativity { n, degree, t } => {
                    MacdonaldTask::Commutativity { n, degree, t }
                }
                MacdonaldCommand::Transfer { quantum, u, v, w } => {
                    MacdonaldTask::Transfer { quantum, u, v, w }
                }
                MacdonaldCommand::Corollary91 { n, r, m } => MacdonaldTask::Corollary91 { n, r, m },
                MacdonaldCommand::TraceResidual { side, depth, w } => {
                    let side = match side {
                        SideArg::Primal => TraceSide::Primal,
                        SideArg::Dual => TraceSide::Dual,
                        SideArg::Symmetry => TraceSide::Symmetry,
                    };
                    MacdonaldTask::TraceResidual { side, depth, w }
                }
            },
        },
        Command::Acceptance { criteria } => Task::Acceptance { criteria },
        Command::Run { .. } => unreachable!("run is handled before conversion"),
    })
}

fn configure_workers() -> Result<()> {
    let Ok(text) = std::env::var("DYBE_WORKERS") else {
        return Ok(());
    };
    let n: usize = text
        .trim()
        .parse()
        .map_err(|_| parse_err("DYBE_WORKERS", &text))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Internal(format!("worker pool: {e}")))
}

fn job(cli: Cli) -> Result<(JobSpec, bool)> {
    let mut job = match cli.command {
        Command::Run { job } => {
            let text = std::fs::read_to_string(&job)
                .map_err(|e| Error::Parse(format!("{}: {e}", job.display())))?;
            parse_job(&text)?
        }
        other => JobSpec::new(task(other)?),
    };
    if cli.output.is_some() {
        job.output = cli.output;
    }
    Ok((job, cli.emit_job))
}

fn summarize(job: &JobSpec, pass: bool, artifact: &serde_json::Value) {
    if let Task::Acceptance { .. } = job.task {
        for c in artifact["criteria"].as_array().into_iter().flatten() {
            let verdict = if c["pass"] == true { "PASS" } else { "FAIL" };
            eprintln!(
                "criterion {:>2} {verdict} {}",
                c["id"],
                c["title"].as_str().unwrap_or_default()
            );
        }
    }
    eprintln!("{}", if pass { "pass" } else { "FAIL" });
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match configure_workers().and_then(|_| job(cli)) {
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
        Ok((job, true)) => {
            print!(
                "{}",
                render(&serde_json::to_value(&job).expect("jobs serialize"))
            );
            0
        }
        Ok((job, false)) => match run(&job) {
            Err(e) => {
                eprintln!("error: {e}");
                exit_code(&e)
            }
            Ok(outcome) => {
                let text = render(&outcome.artifact);
                let written = match &job.output {
                    Some(path) => {
                        std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
                    }
                    None => {
                        print!("{text}");
                        Ok(())
                    }
                };
                summarize(&job, outcome.pass, &outcome.artifact);
                match written {
                    Err(e) => {
                        eprintln!("error: {e}");
                        3
                    }
                    Ok(()) if outcome.pass => 0,
                    Ok(()) => 1,
                }
            }
        },
    };
    ExitCode::from(code as u8)
}
