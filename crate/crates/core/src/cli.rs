//! Command-line front end. Every command prints one JSON document; the exit
//! code is 0 on success, 1 for an input invariant violation, 2 for a parse
//! error, 3 when a verified property fails and 4 when its hypothesis is unmet.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fnspace::{is_katetov, is_lip1, strong_min, FnOnX};
use crate::gen;
use crate::infconv::{attainment, inf_conv, verify_fond0};
use crate::io;
use crate::katetov::{self, katetov_extension};
use crate::magma::FiniteMetricMagma;
use crate::monoid::{self, UnitScope};
use crate::plcone::{self, PlKatetovFn};
use crate::rational::{self, Rational};
use crate::report::{Status, TheoremReport};
use crate::zline::{self, bench, CyclicMode};

#[derive(Debug, Parser)]
#[command(name = "infconv", version, about = "Exact inf-convolution over finite metric magmas, Katetov maps and convex curves")]
pub struct Cli {
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = gen::DEFAULT_SEED)]
    pub seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify the law of a magma file and test metric invariance.
    Classify { magma: PathBuf },
    /// d-invariance constants at one element, or at every element.
    Invariance {
        magma: PathBuf,
        #[arg(long)]
        at: Option<usize>,
    },
    /// Inf-convolution of two functions, with attainment at an element.
    Convolve {
        magma: PathBuf,
        f: PathBuf,
        g: PathBuf,
        #[arg(long)]
        at: Option<usize>,
    },
    /// Strong-minimum equivalence for `f (+) g`.
    Fond0 { magma: PathBuf, f: PathBuf, g: PathBuf },
    /// Decide whether `f` is invertible under inf-convolution.
    UnitCheck {
        magma: PathBuf,
        f: PathBuf,
        /// Restrict to nonnegative functions.
        #[arg(long)]
        positive: bool,
    },
    /// Kuratowski image closure and the morphism identity.
    Closure { magma: PathBuf },
    /// Identity and associativity of the monoid of nonnegative 1-Lipschitz maps.
    Int2 { magma: PathBuf, extra: Vec<PathBuf> },
    /// Arg-min morphism, for one pair or exhaustively over a value grid.
    Argmin {
        magma: PathBuf,
        f: Option<PathBuf>,
        g: Option<PathBuf>,
        /// Comma-separated rationals; enumerates all 1-Lipschitz maps with a
        /// strong minimum taking these values.
        #[arg(long, value_delimiter = ',')]
        grid: Vec<String>,
    },
    /// Check the map induced by an isometric isomorphism between two groups.
    IsoVerify {
        source: PathBuf,
        target: PathBuf,
        /// Comma-separated image of each element.
        #[arg(long, value_delimiter = ',', required = true)]
        map: Vec<usize>,
        suite: Vec<PathBuf>,
    },
    /// Search grid-valued maps for a failure of cancellation.
    CancelSearch {
        magma: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "0,1")]
        grid: Vec<String>,
    },
    /// Katetov maps: extension, closure checks, units.
    #[command(subcommand)]
    Katetov(KatetovCommand),
    /// Periodic sequences under cyclic min-plus convolution.
    #[command(subcommand)]
    Cyclic(CyclicCommand),
    /// Cofinite integer sequences.
    #[command(subcommand)]
    Zseq(ZseqCommand),
    /// Convex Katetov curves on the line.
    #[command(subcommand)]
    Pl(PlCommand),
    /// Kernel timings.
    #[command(subcommand)]
    Bench(BenchCommand),
}

#[derive(Debug, Subcommand)]
pub enum KatetovCommand {
    /// Greatest 1-Lipschitz extension of a Katetov map on a subset.
    Extend { subspace: PathBuf },
    /// Closure, non-expansiveness and the distance identity; with `--random`
    /// runs that many seeded pairs instead of the given files.
    Check {
        magma: PathBuf,
        f: Option<PathBuf>,
        g: Option<PathBuf>,
        h: Option<PathBuf>,
        #[arg(long)]
        random: Option<usize>,
    },
    /// Units of the Katetov monoid.
    Units { magma: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum CyclicCommand {
    Conv {
        #[arg(short = 'p', long)]
        p: usize,
        u: PathBuf,
        v: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Naive)]
        mode: ModeArg,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Naive,
    Merge,
    Smawk,
}

#[derive(Debug, Subcommand)]
pub enum ZseqCommand {
    Conv { u: PathBuf, v: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum PlCommand {
    Conv { f: PathBuf, g: PathBuf },
    Scale {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        f: PathBuf,
    },
    Fixedpoint {
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value = "1/1000000000")]
        tol: String,
        g: PathBuf,
    },
    /// Validate and print the canonical form and intercepts.
    Check { f: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum BenchCommand {
    Minplus {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "smawk")]
        mode: String,
    },
}

/// A finished command: its report and exit code.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
}

impl Outcome {
    fn ok(report: impl Serialize) -> Self {
        Outcome { code: 0, report: to_value(report) }
    }

    fn status(status: Status, report: impl Serialize) -> Self {
        Outcome { code: status.exit_code(), report: to_value(report) }
    }

    fn theorem(report: TheoremReport) -> Self {
        Self::status(report.status, report)
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::parse(path.display().to_string(), e.to_string()))
}

fn load_magma(path: &Path) -> Result<FiniteMetricMagma> {
    io::parse_magma(&read(path)?)
}

fn load_fn(path: &Path, m: &FiniteMetricMagma) -> Result<FnOnX> {
    let f = io::parse_function(&read(path)?)?;
    if f.len() != m.len() {
        return Err(Error::invariant(path.display().to_string(), format!("has {} values, carrier has {}", f.len(), m.len())));
    }
    Ok(f)
}

fn load_pl(path: &Path) -> Result<PlKatetovFn> {
    io::parse_pl(&read(path)?)
}

fn rationals(field: &str, items: &[String]) -> Result<Vec<Rational>> {
    items
        .iter()
        .enumerate()
        .map(|(i, s)| rational::parse(s).map_err(|_| Error::parse(format!("{field}[{i}]"), format!("bad rational {s:?}"))))
        .collect()
}

fn rational_arg(field: &str, s: &str) -> Result<Rational> {
    rational::parse(s).map_err(|_| Error::parse(field, format!("bad rational {s:?}")))
}

pub fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Classify { magma } => {
            let m = load_magma(magma)?;
            Ok(Outcome::ok(json!({
                "n": m.len(),
                "class": m.classify(),
                "metric_invariant": m.check_metric_invariance(),
                "identity": m.identity(),
                "commutative": m.is_commutative(),
                "associativity_witness": m.associativity_witness(),
            })))
        }
        Command::Invariance { magma, at } => {
            let m = load_magma(magma)?;
            let points: Vec<usize> = match at {
                Some(x) if *x >= m.len() => return Err(Error::invariant("--at", "index out of range")),
                Some(x) => vec![*x],
                None => (0..m.len()).collect(),
            };
            let constants: Vec<Value> = points
                .iter()
                .map(|&x| json!({ "x": x, "constants": m.d_invariance_at(x), "fiber": m.delta_fiber(x) }))
                .collect();
            Ok(Outcome::ok(json!({ "metric_invariant": m.check_metric_invariance(), "points": constants })))
        }
        Command::Convolve { magma, f, g, at } => {
            let m = load_magma(magma)?;
            let (f, g) = (load_fn(f, &m)?, load_fn(g, &m)?);
            let h = inf_conv(&m, &f, &g);
            let att = match at {
                Some(a) if *a >= m.len() => return Err(Error::invariant("--at", "index out of range")),
                Some(a) => Some(attainment(&m, &f, &g, *a)),
                None => None,
            };
            Ok(Outcome::ok(json!({ "result": h, "attainment": att })))
        }
        Command::Fond0 { magma, f, g } => {
            let m = load_magma(magma)?;
            let r = verify_fond0(&m, &load_fn(f, &m)?, &load_fn(g, &m)?)?;
            let status = match r.outcome {
                crate::infconv::Fond0Outcome::Holds => Status::Holds,
                crate::infconv::Fond0Outcome::Violated => Status::Violated,
                crate::infconv::Fond0Outcome::HypothesisUnmet => Status::HypothesisUnmet,
            };
            Ok(Outcome::status(status, r))
        }
        Command::UnitCheck { magma, f, positive } => {
            let m = load_magma(magma)?;
            let f = load_fn(f, &m)?;
            let scope = if *positive { UnitScope::Lip1Plus } else { UnitScope::Lip1 };
            let cert = monoid::is_unit(&m, &f, scope)?;
            Ok(Outcome::ok(json!({ "unit": cert.is_some(), "certificate": cert })))
        }
        Command::Closure { magma } => Ok(Outcome::theorem(monoid::kuratowski_closure(&load_magma(magma)?))),
        Command::Int2 { magma, extra } => {
            let m = load_magma(magma)?;
            let extra = extra.iter().map(|p| load_fn(p, &m)).collect::<Result<Vec<_>>>()?;
            Ok(Outcome::theorem(monoid::verify_int2(&m, &extra)?))
        }
        Command::Argmin { magma, f, g, grid } => {
            let m = load_magma(magma)?;
            let r = match (f, g) {
                (Some(f), Some(g)) => monoid::argmin_morphism(&m, &load_fn(f, &m)?, &load_fn(g, &m)?)?,
                (None, None) if !grid.is_empty() => {
                    let grid = rationals("grid", grid)?;
                    let family: Vec<FnOnX> = gen::grid_functions(m.len(), &grid)
                        .into_iter()
                        .filter(|f| is_lip1(m.metric(), f) && strong_min(f).is_some())
                        .collect();
                    monoid::argmin_morphism_all(&m, &family)?
                }
                _ => return Err(Error::parse("argmin", "give both f and g, or --grid")),
            };
            let status = if r.holds { Status::Holds } else { Status::Violated };
            Ok(Outcome::status(status, r))
        }
        Command::IsoVerify { source, target, map, suite } => {
            let (m1, m2) = (load_magma(source)?, load_magma(target)?);
            let suite = suite.iter().map(|p| load_fn(p, &m1)).collect::<Result<Vec<_>>>()?;
            let (_, report) = monoid::verify_canonical_iso(&m1, &m2, map, &suite)?;
            Ok(Outcome::theorem(report))
        }
        Command::CancelSearch { magma, grid } => {
            let m = load_magma(magma)?;
            let grid = rationals("grid", grid)?;
            let w = monoid::cancellation_search(&m, &grid);
            let conv = w.as_ref().map(|w| inf_conv(&m, &w.f, &w.g));
            Ok(Outcome::ok(json!({ "found": w.is_some(), "witness": w, "common_product": conv })))
        }
        Command::Katetov(cmd) => katetov_cmd(cli, cmd),
        Command::Cyclic(CyclicCommand::Conv { p, u, v, mode }) => {
            let (u, v) = (io::parse_cyclic(&read(u)?)?, io::parse_cyclic(&read(v)?)?);
            for (name, s) in [("u", &u), ("v", &v)] {
                if s.period() != *p {
                    return Err(Error::invariant(name, format!("period {} differs from -p {p}", s.period())));
                }
            }
            let mode = match mode {
                ModeArg::Naive => CyclicMode::Naive,
                ModeArg::Merge => CyclicMode::Merge,
                ModeArg::Smawk => CyclicMode::Smawk,
            };
            let w = zline::cyclic_minplus(&u, &v, mode)?;
            Ok(Outcome::ok(json!({ "result": io::cyclic_to_file(&w), "in_linf_dis": w.in_linf_dis() })))
        }
        Command::Zseq(ZseqCommand::Conv { u, v }) => {
            let (u, v) = (io::parse_cofinite(&read(u)?)?, io::parse_cofinite(&read(v)?)?);
            let w = zline::z_minplus(&u, &v)?;
            Ok(Outcome::ok(json!({ "result": io::cofinite_to_file(&w), "in_linf_dis": w.in_linf_dis() })))
        }
        Command::Pl(cmd) => pl_cmd(cmd),
        Command::Bench(BenchCommand::Minplus { n, mode }) => {
            let mode: bench::BenchMode = mode.parse()?;
            let r = bench::bench_minplus(*n, mode, cli.seed)?;
            let status = if r.matches_naive && r.exact_subsample_ok { Status::Holds } else { Status::Violated };
            Ok(Outcome::status(status, r))
        }
    }
}

fn katetov_cmd(cli: &Cli, cmd: &KatetovCommand) -> Result<Outcome> {
    match cmd {
        KatetovCommand::Extend { subspace } => {
            let sf = io::parse_subspace(&read(subspace)?)?;
            let ext = katetov_extension(&sf);
            Ok(Outcome::ok(json!({ "extension": ext, "katetov": is_katetov(sf.metric(), &ext) })))
        }
        KatetovCommand::Check { magma, f, g, h, random } => {
            let m = load_magma(magma)?;
            let triples: Vec<(FnOnX, FnOnX, FnOnX)> = match (f, g, random) {
                (Some(f), Some(g), None) => {
                    let (f, g) = (load_fn(f, &m)?, load_fn(g, &m)?);
                    let h = match h {
                        Some(h) => load_fn(h, &m)?,
                        None => f.clone(),
                    };
                    vec![(f, g, h)]
                }
                (None, None, Some(count)) => {
                    let mut rng = gen::rng(cli.seed);
                    (0..*count)
                        .map(|_| {
                            let f = gen::random_katetov(m.metric(), &mut rng);
                            let g = gen::random_katetov(m.metric(), &mut rng);
                            let h = gen::random_katetov(m.metric(), &mut rng);
                            (f, g, h)
                        })
                        .collect()
                }
                _ => return Err(Error::parse("katetov check", "give f and g (and optionally h), or --random N")),
            };
            let mut report = TheoremReport::new("Katetov monoid: closure, non-expansiveness, distance identity");
            for (f, g, h) in &triples {
                report.absorb(katetov::katetov_closure_check(&m, f, g)?);
                report.absorb(katetov::contraction_isometry_check(&m, f, g, h)?);
                for x in 0..m.len() {
                    let ok = katetov::eval_as_distance(&m, f, x).is_ok();
                    report.check(ok, || json!({ "distance_identity_fails": x, "f": f }));
                }
            }
            report.witness(json!({ "triples": triples.len() }));
            Ok(Outcome::theorem(report))
        }
        KatetovCommand::Units { magma } => Ok(Outcome::theorem(katetov::katetov_units(&load_magma(magma)?)?)),
    }
}

fn pl_cmd(cmd: &PlCommand) -> Result<Outcome> {
    match cmd {
        PlCommand::Conv { f, g } => Ok(Outcome::ok(plcone::pl_infconv(&load_pl(f)?, &load_pl(g)?))),
        PlCommand::Scale { lambda, f } => {
            let lambda = rational_arg("--lambda", lambda)?;
            Ok(Outcome::ok(plcone::epi_scale(&lambda, &load_pl(f)?)?))
        }
        PlCommand::Fixedpoint { lambda, tol, g } => {
            let lambda = rational_arg("--lambda", lambda)?;
            let tol = rational_arg("--tol", tol)?;
            let r = plcone::fixed_point_solve(&lambda, &load_pl(g)?, &tol)?;
            let status = if r.converged { Status::Holds } else { Status::Violated };
            Ok(Outcome::status(status, r))
        }
        PlCommand::Check { f } => {
            let f = load_pl(f)?;
            Ok(Outcome::ok(json!({
                "canonical": f,
                "slopes": f.slopes().iter().map(rational::format).collect::<Vec<_>>(),
                "c_plus": rational::format(&f.c_plus()),
                "c_minus": rational::format(&f.c_minus()),
                "min_value": rational::format(&f.min_value()),
            })))
        }
    }
}

/// Runs a parsed command line: writes the report and returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    match dispatch(cli) {
        Ok(outcome) => {
            let text = serde_json::to_string_pretty(&outcome.report).expect("reports serialize") + "\n";
            let written = match &cli.output {
                Some(path) => std::fs::write(path, text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => outcome.code,
                Err(e) => {
                    eprintln!("error: cannot write report: {e}");
                    2
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
