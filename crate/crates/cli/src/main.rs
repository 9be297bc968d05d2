//! `besov`: boundedness verdicts, kernel values, operator evaluation, norms,
//! probes and sweeps for the integral operators `T_bc` on the unit ball.
//!
//! Every command prints JSON (or CSV for `sweep`) with floats written to 17
//! significant digits, and echoes the numeric inputs it used.

mod grid;
mod output;

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use besov_core::classifier::{classify, TargetSpace};
use besov_core::expansion::HarmonicExpansion;
use besov_core::kernel::{kernel_eval, truncation_degree, KernelSpec, DEFAULT_TOL};
use besov_core::operators::{Evaluator, NamedFunction};
use besov_core::probe::{
    curated_suite, finiteness_probe_with, kernel_floor_probe, ratio_probe_default, run_suite, ProbeSettings,
};
use besov_core::quadrature::{lp_norm, BallQuadrature, Integral};
use besov_core::{Error, ExtExponent, OperatorParams};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::grid::{parse_exponents, parse_point, parse_range};
use crate::output::{float, print_json};

/// Malformed input; reported with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Parser)]
#[command(name = "besov", version, about = "Bergman-Besov kernels and the operators T_bc on the unit ball")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Boundedness verdict for T_bc from L^p_alpha into the target space.
    Classify(ParamArgs),
    /// Evaluate the kernel R_alpha(x, y).
    Kernel(KernelArgs),
    /// Evaluate T_bc f(x), or D_c^t T_bc f(x) with --derivative.
    Apply(ApplyArgs),
    /// Weighted L^p norm of f, or the Besov/Bloch norm of T_bc f.
    Norm(NormArgs),
    /// Numerical probes of a verdict.
    #[command(subcommand)]
    Probe(ProbeCommand),
    /// Classify every tuple of a parameter grid and write CSV.
    Sweep(SweepArgs),
}

#[derive(Args, Clone)]
struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    b: f64,
    #[arg(long, allow_hyphen_values = true)]
    c: f64,
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    beta: f64,
    /// Source exponent: a real >= 1 or `inf`.
    #[arg(long)]
    p: String,
    /// Target exponent; defaults to `inf` for bloch, hinf and weighted-linf.
    #[arg(long)]
    q: Option<String>,
    /// besov | bloch | hinf | lebesgue | weighted-linf
    #[arg(long)]
    target: String,
    #[arg(long, default_value_t = 2)]
    dim: usize,
}

impl ParamArgs {
    fn resolve(&self) -> Result<(OperatorParams, TargetSpace), UsageError> {
        let target: TargetSpace = self.target.parse().map_err(usage)?;
        let p: ExtExponent = self.p.parse().map_err(usage)?;
        let q: ExtExponent = match &self.q {
            Some(q) => q.parse().map_err(usage)?,
            None if !target.finite_q() => ExtExponent::Infinite,
            None => return Err(UsageError(format!("target {target} needs --q"))),
        };
        let params = OperatorParams {
            b: self.b,
            c: self.c,
            alpha: self.alpha,
            beta: self.beta,
            p,
            q,
            dim: self.dim,
        };
        // surfaces inconsistent (target, q) pairs and bad dimensions
        classify(&params, target).map_err(usage)?;
        Ok((params, target))
    }
}

#[derive(Args, Clone)]
struct QuadArgs {
    #[arg(long, default_value_t = besov_core::quadrature::DEFAULT_RADIAL_NODES)]
    radial_nodes: usize,
    /// Circle nodes (n = 2) or azimuths (n = 3).
    #[arg(long)]
    sphere_nodes: Option<usize>,
    /// Monte Carlo sphere samples (n >= 4).
    #[arg(long)]
    mc_samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl QuadArgs {
    fn rule(&self, dim: usize) -> Result<BallQuadrature, UsageError> {
        let mut rule = BallQuadrature::new(dim).map_err(usage)?.with_radial_nodes(self.radial_nodes);
        if dim <= 3 {
            if let Some(n) = self.sphere_nodes {
                rule = rule.with_sphere_nodes(n);
            }
        } else {
            if let Some(n) = self.mc_samples {
                rule = rule.with_sphere_nodes(n);
            }
            rule = rule.with_seed(self.seed);
        }
        Ok(rule)
    }
}

#[derive(Args)]
struct KernelArgs {
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    #[arg(long)]
    dim: usize,
    /// Comma-separated coordinates.
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    #[arg(long, allow_hyphen_values = true)]
    y: String,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args)]
struct ApplyArgs {
    #[arg(long, allow_hyphen_values = true)]
    b: f64,
    #[arg(long, allow_hyphen_values = true)]
    c: f64,
    /// const1 | fuv:u,v | expansion:PATH
    #[arg(long, allow_hyphen_values = true)]
    f: String,
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Order t of D_c^t applied to T_bc f.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    derivative: f64,
    #[command(flatten)]
    quad: QuadArgs,
}

#[derive(Args)]
struct NormArgs {
    /// const1 | fuv:u,v | expansion:PATH
    #[arg(long, allow_hyphen_values = true)]
    f: String,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Exponent of L^p_alpha (without --target).
    #[arg(long)]
    p: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    alpha: f64,
    /// besov | bloch: measure T_bc f instead of f.
    #[arg(long)]
    target: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    beta: f64,
    #[command(flatten)]
    quad: QuadArgs,
}

#[derive(Subcommand)]
enum ProbeCommand {
    /// Finiteness and ratio probes for one tuple.
    Operator {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        settings: SettingsArgs,
    },
    /// Radius on which R_alpha >= 1/2.
    KernelFloor {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long)]
        dim: usize,
    },
    /// Agreement counts over the built-in sixty-tuple suite.
    Suite {
        #[command(flatten)]
        settings: SettingsArgs,
    },
}

#[derive(Args)]
struct SettingsArgs {
    #[arg(long)]
    members: Option<usize>,
    #[arg(long)]
    panel_nodes: Option<usize>,
    /// Use twice the default quadrature resolution.
    #[arg(long)]
    doubled: bool,
}

impl SettingsArgs {
    fn settings(&self) -> ProbeSettings {
        let mut s = ProbeSettings::default();
        if self.doubled {
            s = s.doubled();
        }
        if let Some(m) = self.members {
            s.members = m;
        }
        if let Some(n) = self.panel_nodes {
            s.panel_nodes = n;
        }
        s
    }
}

#[derive(Args)]
struct SweepArgs {
    /// Value or lo:hi:n
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long, allow_hyphen_values = true)]
    c: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    alpha: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    beta: String,
    /// Comma-separated exponents, e.g. 1,2,inf
    #[arg(long)]
    p: String,
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    target: String,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn usage(e: impl fmt::Display) -> UsageError {
    UsageError(e.to_string())
}

fn load_function(spec: &str, dim: usize) -> anyhow::Result<NamedFunction> {
    if let Some(path) = spec.strip_prefix("expansion:") {
        let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        let e = HarmonicExpansion::from_json(&text).map_err(usage)?;
        if e.dim() != dim {
            return Err(UsageError(format!("expansion has dimension {}, expected {dim}", e.dim())).into());
        }
        return Ok(NamedFunction::Expansion(e));
    }
    Ok(spec.parse().map_err(usage)?)
}

#[derive(Serialize)]
struct Echo<'a, T: Serialize> {
    input: &'a T,
    #[serde(flatten)]
    output: serde_json::Value,
}

fn quad_echo(rule: &BallQuadrature) -> serde_json::Value {
    serde_json::to_value(rule).expect("rule serializes")
}

fn integral_json(v: Integral) -> serde_json::Value {
    serde_json::to_value(v).expect("integral serializes")
}

fn cmd_classify(args: &ParamArgs) -> anyhow::Result<()> {
    let (params, target) = args.resolve()?;
    let verdict = classify(&params, target).map_err(usage)?;
    print_json(&Echo {
        input: &json!({ "params": params, "target": target }),
        output: serde_json::to_value(&verdict)?,
    })
}

fn cmd_kernel(args: &KernelArgs) -> anyhow::Result<()> {
    let spec = KernelSpec::with_tol(args.alpha, args.dim, args.tol).map_err(usage)?;
    let x = parse_point(&args.x, args.dim)?;
    let y = parse_point(&args.y, args.dim)?;
    let norm = |v: &[f64]| v.iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm(&x) > 1.0 || norm(&y) > 1.0 {
        return Err(UsageError("points must lie in the closed unit ball".into()).into());
    }
    let value = match kernel_eval(&spec, &x, &y) {
        Ok(v) => json!({ "status": "finite", "value": v }),
        Err(Error::Divergent) => json!({ "status": "divergent" }),
        Err(e) => return Err(e.into()),
    };
    let degree = truncation_degree(&spec, norm(&x), norm(&y)).ok();
    print_json(&Echo {
        input: &json!({ "alpha": args.alpha, "dim": args.dim, "x": x, "y": y, "tol": args.tol }),
        output: json!({ "result": value, "degree": degree }),
    })
}

fn cmd_apply(args: &ApplyArgs) -> anyhow::Result<()> {
    let rule = args.quad.rule(args.dim)?;
    let x = parse_point(&args.x, args.dim)?;
    if x.iter().map(|c| c * c).sum::<f64>() >= 1.0 {
        return Err(UsageError("--x must lie in the open unit ball".into()).into());
    }
    let f = load_function(&args.f, args.dim)?;
    let ev = Evaluator::new(args.dim)?.with_rule(rule);
    let result = ev.apply_t_derivative(args.b, args.c, args.derivative, &f, &x)?;
    print_json(&Echo {
        input: &json!({
            "b": args.b, "c": args.c, "derivative": args.derivative, "f": args.f,
            "x": x, "dim": args.dim, "quadrature": quad_echo(&rule),
        }),
        output: json!({ "result": integral_json(result) }),
    })
}

fn cmd_norm(args: &NormArgs) -> anyhow::Result<()> {
    let rule = args.quad.rule(args.dim)?;
    let f = load_function(&args.f, args.dim)?;
    let Some(target) = &args.target else {
        let p: ExtExponent = args
            .p
            .as_deref()
            .ok_or_else(|| UsageError("--p is required".into()))?
            .parse()
            .map_err(usage)?;
        if !p.is_infinite() && args.alpha <= -1.0 {
            return Err(UsageError("finite p needs alpha > -1".into()).into());
        }
        let value = match lp_norm(&f, p, args.alpha, &rule) {
            Ok(v) => Integral::Finite(v),
            Err(Error::Divergent) => Integral::Divergent,
            Err(e) => return Err(e.into()),
        };
        return print_json(&Echo {
            input: &json!({
                "f": args.f, "p": p, "alpha": args.alpha, "dim": args.dim, "quadrature": quad_echo(&rule),
            }),
            output: json!({ "result": integral_json(value) }),
        });
    };
    let target: TargetSpace = target.parse().map_err(usage)?;
    let (b, c) = match (args.b, args.c) {
        (Some(b), Some(c)) => (b, c),
        _ => return Err(UsageError("--b and --c are required with --target".into()).into()),
    };
    let ev = Evaluator::new(args.dim)?.with_rule(rule);
    let value = match target {
        TargetSpace::Besov => {
            let q = args.q.ok_or_else(|| UsageError("--q is required for besov".into()))?;
            if !(q >= 1.0 && q.is_finite()) {
                return Err(UsageError("--q must be a finite real >= 1".into()).into());
            }
            ev.besov_norm(b, c, &f, q, args.beta)?
        }
        TargetSpace::Bloch => ev.bloch_norm(b, c, &f, args.beta)?,
        other => return Err(UsageError(format!("norm --target supports besov and bloch, got {other}")).into()),
    };
    print_json(&Echo {
        input: &json!({
            "f": args.f, "target": target, "b": b, "c": c, "q": args.q, "beta": args.beta, "dim": args.dim,
            "quadrature": quad_echo(&ev.rule), "outer_quadrature": quad_echo(&ev.outer),
        }),
        output: serde_json::to_value(value)?,
    })
}

fn cmd_probe(cmd: &ProbeCommand) -> anyhow::Result<()> {
    match cmd {
        ProbeCommand::Operator { params, settings } => {
            let (params, target) = params.resolve()?;
            let settings = settings.settings();
            let fin = finiteness_probe_with(&params, target, &settings)?;
            let ratio = ratio_probe_default(&params, target, &settings)?;
            print_json(&Echo {
                input: &json!({ "params": params, "target": target, "settings": settings }),
                output: json!({ "reports": [fin, ratio] }),
            })
        }
        ProbeCommand::KernelFloor { alpha, dim } => {
            let eps = kernel_floor_probe(*alpha, *dim).map_err(usage)?;
            print_json(&Echo {
                input: &json!({ "alpha": alpha, "dim": dim }),
                output: json!({ "epsilon": eps }),
            })
        }
        ProbeCommand::Suite { settings } => {
            let settings = settings.settings();
            let summary = run_suite(&curated_suite(), &settings)?;
            print_json(&Echo {
                input: &json!({ "settings": settings }),
                output: serde_json::to_value(summary)?,
            })
        }
    }
}

fn exponent_text(e: ExtExponent) -> String {
    match e {
        ExtExponent::Finite(p) => float(p),
        ExtExponent::Infinite => "inf".into(),
    }
}

fn cmd_sweep(args: &SweepArgs) -> anyhow::Result<()> {
    let target: TargetSpace = args.target.parse().map_err(usage)?;
    let bs = parse_range(&args.b)?;
    let cs = parse_range(&args.c)?;
    let alphas = parse_range(&args.alpha)?;
    let betas = parse_range(&args.beta)?;
    let ps = parse_exponents(&args.p)?;
    let qs = match &args.q {
        Some(q) => parse_exponents(q)?,
        None if !target.finite_q() => vec![ExtExponent::Infinite],
        None => return Err(UsageError(format!("target {target} needs --q")).into()),
    };
    let mut rows = Vec::new();
    for &b in &bs {
        for &c in &cs {
            for &alpha in &alphas {
                for &beta in &betas {
                    for &p in &ps {
                        for &q in &qs {
                            let params = OperatorParams {
                                b,
                                c,
                                alpha,
                                beta,
                                p,
                                q,
                                dim: args.dim,
                            };
                            let v = classify(&params, target).map_err(usage)?;
                            let slack = v.binding().map_or(f64::NAN, |i| i.slack());
                            rows.push([
                                float(b),
                                float(c),
                                float(alpha),
                                float(beta),
                                exponent_text(p),
                                exponent_text(q),
                                target.to_string(),
                                args.dim.to_string(),
                                v.bounded.to_string(),
                                v.theorem_part.clone(),
                                float(slack),
                            ]);
                        }
                    }
                }
            }
        }
    }
    let sink: Box<dyn std::io::Write> = match &args.out {
        Some(path) => Box::new(fs::File::create(path).with_context(|| format!("creating {}", path.display()))?),
        None => Box::new(std::io::stdout().lock()),
    };
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["b", "c", "alpha", "beta", "p", "q", "target", "dim", "bounded", "part", "binding_slack"])?;
    for row in &rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Classify(a) => cmd_classify(a),
        Command::Kernel(a) => cmd_kernel(a),
        Command::Apply(a) => cmd_apply(a),
        Command::Norm(a) => cmd_norm(a),
        Command::Probe(p) => cmd_probe(p),
        Command::Sweep(a) => cmd_sweep(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
