use std::collections::BTreeMap;

use ccr_hopf::algebra::{
    adjoint, basis_convert, commutator, normal_form_with, Basis, Expr, Gram, Presentation, Schedule,
};
use ccr_hopf::fock::{
    self, boundedness_trend, spectrum, transfer_rep,
    vacuum_generating_function, BogoliubovSpec, Family, ModeSpace, SparseOperator,
};
use ccr_hopf::hopf::{antipode, coproduct, counit, AxiomChecker, CheckWindow, HopfSpec};
use ccr_hopf::measure::{bochner_mc, positive_definiteness_check, EtaSweep, GaussianModel};
use ccr_hopf::scalar::{KAPPA, S};
use ccr_hopf::{Execution, Scalar};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::config::{BasisArg, CommandConfig, SEED_ENV};
use crate::parse::parse_expr_for;
use crate::report::{axiom_entry, expr_value, scalar_value, tensor_value, ReportDocument, ResultEntry};
use crate::selftest;
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "ccr-hopf", version, about = "Normal ordering, Hopf checks and truncated representations for CCR algebras")]
pub struct Cli {
    #[command(flatten)]
    pub config: CommandConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScheduleArg {
    Leftmost,
    Rightmost,
    Seeded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Axiom {
    Coassociativity,
    Counit,
    Antipode,
    Cocommutativity,
    Multiplicativity,
    Relations,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form modulo the relations.
    Normalize {
        expr: String,
        #[arg(long, value_enum, default_value_t = ScheduleArg::Leftmost)]
        schedule: ScheduleArg,
    },
    /// `[x, y]` in normal form.
    Commutator { x: String, y: String },
    /// Adjoint, in normal form.
    Adjoint { expr: String },
    /// Normal form in the other mode basis.
    Convert {
        expr: String,
        #[arg(long, value_enum)]
        to: BasisArg,
    },
    Coproduct { expr: String },
    Counit { expr: String },
    Antipode { expr: String },
    /// Bounded-degree check of the bialgebra and Hopf axioms.
    HopfCheck {
        /// Defaults: coassociativity, counit, antipode and cocommutativity
        /// for the classical flavor; multiplicativity instead of
        /// cocommutativity for the deformed one, with cocommutativity
        /// reported as a probe.
        #[arg(long, value_enum, value_delimiter = ',')]
        axioms: Vec<Axiom>,
    },
    /// Truncated Fock-space numerics.
    #[command(subcommand)]
    Fock(FockCommand),
    /// Gaussian-measure numerics.
    #[command(subcommand)]
    Measure(MeasureCommand),
    /// Runs every acceptance criterion.
    Selftest,
}

#[derive(Debug, Subcommand)]
pub enum FockCommand {
    /// Ladder and field matrices with their CCR residuals.
    Matrices,
    /// Lowest eigenvalues of the (Bogoliubov) number operator.
    Spectrum {
        /// Uniform squeezing parameter.
        #[arg(long, default_value_t = 0.0)]
        r: f64,
        #[arg(long, default_value_t = 4)]
        k: usize,
    },
    /// Vacuum generating function `<theta|exp(i phi(v))|theta>`.
    Genfun {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        v: Vec<f64>,
        /// Generating-function parameter of the squeezed family; Fock when absent.
        #[arg(long)]
        squeeze_c: Option<f64>,
    },
    /// Representation transferred along the deformation constant.
    Transfer,
    /// Minimum spectrum of the transformed number operator across `d`.
    Trend {
        #[arg(long, default_value_t = 0.5 * std::f64::consts::LN_2)]
        r: f64,
        #[arg(long, value_delimiter = ',', default_values_t = vec![1usize, 2, 3])]
        ds: Vec<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum MeasureCommand {
    Cocycle {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        v: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        u: Vec<f64>,
    },
    Eta {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        v: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        u: Vec<f64>,
    },
    Bochner {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        v: Vec<f64>,
    },
    /// Weyl relation on seeded random test functions and points.
    Weyl {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Minimum eigenvalue of `Z(v_i - v_j)` on seeded random vectors.
    PdCheck {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 8)]
        m: usize,
    },
}

#[derive(Debug, Clone, clap::Args)]
pub struct ModelArgs {
    /// Diagonal of K; `sqrt(2)` on every mode when absent.
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<f64>,
}

impl ModelArgs {
    fn model(&self, d: usize) -> Result<GaussianModel, CliError> {
        if self.k.is_empty() {
            Ok(GaussianModel::fock(d))
        } else {
            Ok(GaussianModel::diagonal(&self.k)?)
        }
    }
}

/// Effective configuration: the seed environment variable wins.
pub fn resolve(mut config: CommandConfig) -> Result<CommandConfig, CliError> {
    if let Ok(s) = std::env::var(SEED_ENV) {
        config.seed = s
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("{SEED_ENV}={s} is not an unsigned integer")))?;
    }
    if config.d == 0 {
        return Err(CliError::Config("d must be positive".into()));
    }
    for (name, x) in [("q", config.q), ("c", config.c)] {
        if let Some(x) = x {
            if !(x > 0.0 && x.is_finite()) {
                return Err(CliError::Config(format!("{name} must be positive, got {x}")));
            }
        }
    }
    if config.q.is_some() != config.c.is_some() {
        return Err(CliError::Config("q and c must be given together".into()));
    }
    Ok(config)
}

fn read_gram(path: &str) -> Result<Gram, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {path}: {e}")))?;
    let rows: Vec<Vec<serde_json::Value>> =
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{path}: {e}")))?;
    let rows = rows
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| match x {
                    serde_json::Value::Number(n) => Ok(Scalar::from_f64(n.as_f64().unwrap_or(f64::NAN))),
                    serde_json::Value::String(s) => crate::parse::parse_expr(&s)?
                        .as_scalar()
                        .ok_or_else(|| CliError::Config(format!("gram entry `{s}` is not a scalar"))),
                    other => Err(CliError::Config(format!("gram entry {other} is not a number"))),
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Gram::matrix(rows)?)
}

pub fn presentation(config: &CommandConfig) -> Result<Presentation, CliError> {
    let mut p = Presentation::new(config.variant.into()).with_basis(config.basis.into());
    if config.free_unit {
        p = p.with_idempotent_unit(false);
    }
    if let (Some(q), Some(c)) = (config.q, config.c) {
        p = p.with_numeric(q, c)?;
    }
    if let Some(path) = &config.gram {
        p = p.with_gram(read_gram(path)?);
    }
    Ok(p)
}

fn numeric_assignment(p: &Presentation) -> Option<BTreeMap<String, f64>> {
    let k = p.kappa().eval(&BTreeMap::new()).ok()?;
    let s = p.s().eval(&BTreeMap::new()).ok()?;
    Some(BTreeMap::from([(KAPPA.to_string(), k.re), (S.to_string(), s.re)]))
}

fn unit_vector(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
}

fn check_len(v: &[f64], d: usize, name: &str) -> Result<(), CliError> {
    if v.len() != d {
        return Err(CliError::Config(format!("--{name} has {} entries, expected d = {d}", v.len())));
    }
    Ok(())
}

/// Runs one command and assembles its report.
pub fn run(command: &Command, echo: Vec<String>, config: CommandConfig) -> Result<ReportDocument, CliError> {
    let config = resolve(config)?;
    let results = dispatch(command, &config)?;
    Ok(ReportDocument::new(echo, config, results))
}

fn dispatch(command: &Command, config: &CommandConfig) -> Result<Vec<ResultEntry>, CliError> {
    let exec: Execution = config.execution.into();
    match command {
        Command::Selftest => selftest::run_all(config.seed, exec),
        Command::Fock(f) => fock_command(f, config, exec),
        Command::Measure(m) => measure_command(m, config, exec),
        _ => algebra_command(command, config, exec),
    }
}

fn algebra_command(command: &Command, config: &CommandConfig, exec: Execution) -> Result<Vec<ResultEntry>, CliError> {
    let p = presentation(config)?;
    let numeric = numeric_assignment(&p);
    let num = numeric.as_ref();
    let h = HopfSpec {
        flavor: config.flavor.into(),
    };
    let parse = |s: &str| parse_expr_for(s, &p);
    let entry = |name: &str, e: &Expr| ResultEntry::info(name, Some(0.0), expr_value(e, num));
    Ok(match command {
        Command::Normalize { expr, schedule } => {
            let schedule = match schedule {
                ScheduleArg::Leftmost => Schedule::Leftmost,
                ScheduleArg::Rightmost => Schedule::Rightmost,
                ScheduleArg::Seeded => Schedule::Seeded(config.seed),
            };
            vec![entry("normal-form", &normal_form_with(&parse(expr)?, &p, schedule)?)]
        }
        Command::Commutator { x, y } => vec![entry("commutator", &commutator(&parse(x)?, &parse(y)?, &p)?)],
        Command::Adjoint { expr } => {
            let e = parse(expr)?;
            vec![entry("adjoint", &normal_form_with(&adjoint(&e), &p, Schedule::Leftmost)?)]
        }
        Command::Convert { expr, to } => {
            let target: Basis = (*to).into();
            vec![entry("converted", &basis_convert(&parse(expr)?, target, &p)?)]
        }
        Command::Coproduct { expr } => {
            let t = coproduct(&parse(expr)?, &h, &p)?;
            vec![ResultEntry::info("coproduct", Some(0.0), tensor_value(&t))]
        }
        Command::Counit { expr } => {
            let c = counit(&parse(expr)?, &h)?;
            vec![ResultEntry::info("counit", Some(0.0), scalar_value(&c, num))]
        }
        Command::Antipode { expr } => vec![entry("antipode", &antipode(&parse(expr)?, &h, &p)?)],
        Command::HopfCheck { axioms } => {
            let checker = AxiomChecker::new(h, &p)
                .window(CheckWindow {
                    modes: config.modes,
                    degree: config.degree,
                })
                .execution(exec);
            let classical = matches!(config.flavor, crate::config::FlavorArg::Classical);
            let (list, probe) = if axioms.is_empty() {
                let mut l = vec![Axiom::Coassociativity, Axiom::Counit, Axiom::Antipode];
                l.push(if classical { Axiom::Cocommutativity } else { Axiom::Multiplicativity });
                (l, !classical)
            } else {
                (axioms.clone(), false)
            };
            let mut out = Vec::new();
            for a in list {
                let r = match a {
                    Axiom::Coassociativity => checker.coassociativity()?,
                    Axiom::Counit => checker.counit()?,
                    Axiom::Antipode => checker.antipode()?,
                    Axiom::Cocommutativity => checker.cocommutativity()?,
                    Axiom::Multiplicativity => checker.multiplicativity()?,
                    Axiom::Relations => checker.respects_relations()?,
                };
                out.push(axiom_entry(&r));
            }
            if probe {
                let mut e = axiom_entry(&checker.cocommutativity()?);
                e.status = crate::report::Status::Info;
                out.push(e.note("cocommutativity is probed, not required, for the deformed flavor"));
            }
            out
        }
        Command::Fock(_) | Command::Measure(_) | Command::Selftest => unreachable!("dispatched elsewhere"),
    })
}

fn safe_ccr_residual(m: &ModeSpace, x: &SparseOperator, y: &SparseOperator, target: Complex64) -> f64 {
    let comm = x.commutator(y);
    let id = SparseOperator::identity(m.dim()).scale(target);
    (&comm - &id).norm_on_columns(&m.safe_columns(2))
}

fn fock_command(f: &FockCommand, config: &CommandConfig, exec: Execution) -> Result<Vec<ResultEntry>, CliError> {
    let (d, nmax) = (config.d, config.nmax);
    Ok(match f {
        FockCommand::Matrices => {
            let p = presentation(config)?;
            let m = fock::presentation_space(&p, d, nmax)?;
            let l = fock::ladder_matrices(&m);
            let fields = fock::phi_pi_from(&l);
            let mut ladder_res: f64 = 0.0;
            let mut field_res: f64 = 0.0;
            let mut herm: f64 = 0.0;
            for j in 0..d {
                for k in 0..d {
                    let g = m.gram()[(j, k)];
                    ladder_res = ladder_res.max(safe_ccr_residual(&m, &l.minus[j], &l.plus[k], g));
                    field_res = field_res.max(safe_ccr_residual(&m, &fields.pi[j], &fields.phi[k], Complex64::new(0.0, -1.0) * g));
                }
                herm = herm.max(fields.phi[j].hermiticity_defect()).max(fields.pi[j].hermiticity_defect());
            }
            vec![
                ResultEntry::info("dimension", None, json!({ "d": d, "nmax": nmax, "dim": m.dim() })),
                ResultEntry::check("ladder-ccr", ladder_res < 1e-12, 1e-12, json!(ladder_res)),
                ResultEntry::check("field-ccr", field_res < 1e-12, 1e-12, json!(field_res)),
                ResultEntry::check("hermiticity", herm < 1e-14, 1e-14, json!(herm.abs())),
            ]
        }
        FockCommand::Spectrum { r, k } => {
            let spec = BogoliubovSpec::uniform(d, *r);
            let report = spectrum(d, nmax, Some(&spec), *k)?;
            vec![ResultEntry::info("spectrum", Some(1e-6), serde_json::to_value(report).expect("serializable"))]
        }
        FockCommand::Genfun { v, squeeze_c } => {
            check_len(v, d, "v")?;
            let norm2: f64 = v.iter().map(|x| x * x).sum();
            let (spec, reference, tol) = match squeeze_c {
                Some(c) => (Some(BogoliubovSpec::from_c(d, *c)?), (-c * c * norm2 / 2.0).exp(), 1e-6),
                None => (None, (-norm2 / 4.0).exp(), 1e-8),
            };
            let m = ModeSpace::new(d, nmax)?;
            let z = vacuum_generating_function(&m, &unit_vector(v), spec.as_ref())?;
            let err = (z - Complex64::new(reference, 0.0)).norm();
            vec![ResultEntry::check(
                "generating-function",
                err < tol,
                tol,
                json!({ "re": z.re, "im": z.im, "reference": reference, "error": err }),
            )]
        }
        FockCommand::Transfer => {
            let (q, c) = config
                .q
                .zip(config.c)
                .ok_or_else(|| CliError::Config("fock transfer needs --q and --c".into()))?;
            let m = ModeSpace::new(d, nmax)?;
            let t = transfer_rep(&m, q, c)?;
            let mut worst: f64 = 0.0;
            for j in 0..d {
                for k in 0..d {
                    let g = m.gram()[(j, k)];
                    worst = worst.max(safe_ccr_residual(&m, &t.pi[j], &t.phi[k], Complex64::new(0.0, -t.constant) * g));
                }
            }
            vec![ResultEntry::check(
                "transfer-ccr",
                worst < 1e-12,
                1e-12,
                json!({ "deformation_constant": t.constant, "residual": worst }),
            )]
        }
        FockCommand::Trend { r, ds } => {
            let reports = boundedness_trend(&[Family::Uniform { r: *r }, Family::Summable { r: *r }], ds, nmax, exec)?;
            reports
                .into_iter()
                .map(|t| ResultEntry::info("trend", Some(1e-6), serde_json::to_value(t).expect("serializable")))
                .collect()
        }
    })
}

fn measure_command(mc: &MeasureCommand, config: &CommandConfig, exec: Execution) -> Result<Vec<ResultEntry>, CliError> {
    let d = config.d;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    Ok(match mc {
        MeasureCommand::Cocycle { model, v, u } => {
            check_len(v, d, "v")?;
            check_len(u, d, "u")?;
            let m = model.model(d)?;
            let a = m.cocycle(v, u)?;
            let rn = m.radon_nikodym_residual(v, u)?;
            vec![
                ResultEntry::info("cocycle", None, json!(a)),
                ResultEntry::check("radon-nikodym", rn < 1e-10, 1e-10, json!(rn)),
            ]
        }
        MeasureCommand::Eta { model, v, u } => {
            check_len(v, d, "v")?;
            check_len(u, d, "u")?;
            let est = model.model(d)?.eta(v, u, EtaSweep::default())?;
            let err = est.error();
            vec![ResultEntry::check("eta", err < 1e-8, 1e-8, serde_json::to_value(est).expect("serializable"))
                .note("the translation cocycle is read with <Cv,u> in its linear term")]
        }
        MeasureCommand::Bochner { model, v } => {
            check_len(v, d, "v")?;
            let m = model.model(d)?;
            let est = bochner_mc(&m, v, config.samples, config.seed, exec)?;
            let target = m.generating_function(v);
            vec![ResultEntry::check(
                "bochner",
                est.brackets(target, 3.0),
                3.0 * est.re_stderr,
                json!({ "estimate": est, "target": target }),
            )]
        }
        MeasureCommand::Weyl { model, trials } => {
            let m = model.model(d)?;
            let worst = selftest::weyl_trials(&m, *trials, &mut rng);
            vec![ResultEntry::check("weyl-relation", worst < 1e-10, 1e-10, json!(worst))]
        }
        MeasureCommand::PdCheck { model, m } => {
            let model = model.model(d)?;
            let vs: Vec<Vec<f64>> = (0..*m).map(|_| (0..d).map(|_| rng.random_range(-1.5..1.5)).collect()).collect();
            let min = positive_definiteness_check(|v| Complex64::new(model.generating_function(v), 0.0), &vs)?;
            vec![ResultEntry::check("positive-definite", min >= -1e-10, 1e-10, json!(min))]
        }
    })
}
