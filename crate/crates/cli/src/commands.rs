use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use trapezoid_core::generate::spread_tangents;
use trapezoid_core::{
    analyze, circle_points, find_exceptional_pair, gen_hyperboloid_rulings, gen_parallel_lines, gen_paraboloid_rulings,
    gen_pencil, gen_subcase_ii, gen_transformed, generic_rotation, qi, random_intervals, verify_i2l, AnalyzeOptions,
    Exact, Family, Interval, Mode, PlanarRotation, RegulusStrategy, Relation, RigidMotion3, Scalar, Which,
};

use crate::dataset::Dataset;
use crate::error::{io_err, CliError, CliResult};
use crate::render::{overlays_from_report, render_svg};
use crate::report::ReportFile;

#[derive(Debug, Parser)]
#[command(name = "trapezoid", version, about = "Trapezoid pairs of plane intervals and the line structures behind them")]
pub struct Cli {
    /// Worker threads for detection; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a configuration family as a dataset.
    Generate(GenerateArgs),
    /// Count pairs and detect concurrent, coplanar and regulus structures.
    Analyze(AnalyzeArgs),
    /// Check the pair count against the intersecting line pairs.
    Verify(VerifyArgs),
    /// Draw a dataset, optionally with the loci of a report.
    Render(RenderArgs),
    /// Change the numeric mode of a dataset.
    Convert(ConvertArgs),
}

#[derive(Debug, Args)]
pub struct Output {
    /// Destination file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum WhichArg {
    Both,
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
}

impl From<WhichArg> for Which {
    fn from(w: WhichArg) -> Self {
        match w {
            WhichArg::Both => Which::Both,
            WhichArg::One => Which::Family1,
            WhichArg::Two => Which::Family2,
        }
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(subcommand)]
    pub family: FamilyCmd,
}

#[derive(Debug, Subcommand)]
pub enum FamilyCmd {
    /// Rulings of x²/A² + y²/B² - z²/C² = 1.
    Hyperboloid {
        #[arg(long = "A", default_value = "1", allow_hyphen_values = true)]
        a: String,
        #[arg(long = "B", default_value = "1", allow_hyphen_values = true)]
        b: String,
        #[arg(long = "C", default_value = "1", allow_hyphen_values = true)]
        c: String,
        #[arg(long, default_value_t = 24)]
        count: usize,
        #[arg(long, value_enum, default_value_t = WhichArg::Both)]
        which: WhichArg,
        #[command(flatten)]
        output: Output,
    },
    /// Rulings of z = x²/A² - y²/B².
    Paraboloid {
        #[arg(long = "A", default_value = "1", allow_hyphen_values = true)]
        a: String,
        #[arg(long = "B", default_value = "1", allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = 12)]
        count: usize,
        #[arg(long, value_enum, default_value_t = WhichArg::Both)]
        which: WhichArg,
        #[command(flatten)]
        output: Output,
    },
    /// Lines in the plane A x + B y + C z + D = 0.
    Pencil {
        #[arg(long = "A", allow_hyphen_values = true)]
        a: String,
        #[arg(long = "B", allow_hyphen_values = true)]
        b: String,
        #[arg(long = "C", default_value = "0", allow_hyphen_values = true)]
        c: String,
        #[arg(long = "D", default_value = "0", allow_hyphen_values = true)]
        d: String,
        #[arg(long, default_value_t = 8)]
        count: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Intervals between the parallel lines y = m x + k1 and y = m x + k2.
    Parallel {
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        m: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        k1: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        k2: String,
        #[arg(long, default_value_t = 6)]
        count: usize,
        #[command(flatten)]
        output: Output,
    },
    /// The two families on xy = z² + (u+1) z + u + v x.
    SubcaseIi {
        #[arg(long, default_value = "-1", allow_hyphen_values = true)]
        u: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        v: String,
        #[arg(long, default_value_t = 12)]
        count: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Distinct random rational intervals.
    Random {
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 20)]
        max_num: i64,
        #[arg(long, default_value_t = 6)]
        max_den: i64,
        #[command(flatten)]
        output: Output,
    },
    /// Move every line of a dataset by a rigid motion.
    Transformed {
        #[arg(long = "in")]
        input: PathBuf,
        /// `p,q,r`, applied last.
        #[arg(long, allow_hyphen_values = true)]
        translate: Option<String>,
        /// Half-angle tangent of a rotation about the x-axis, applied first.
        #[arg(long, allow_hyphen_values = true)]
        rotate_x: Option<String>,
        /// Half-angle tangent of a rotation about the z-axis.
        #[arg(long, allow_hyphen_values = true)]
        rotate_z: Option<String>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RelationArg {
    Trapezoid,
    Orthodiagonal,
    Ratio,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Auto,
    Exhaustive,
    Sampled,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = RelationArg::Trapezoid)]
    pub relation: RelationArg,
    /// Slope ratio for `--relation ratio`.
    #[arg(long, allow_hyphen_values = true)]
    pub rho: Option<String>,
    /// Report destination; standard output when absent.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
    pub strategy: StrategyArg,
    /// Sampled triples for `--strategy sampled`.
    #[arg(long, default_value_t = 2000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Report whose planar loci are drawn as overlays.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum)]
    pub to: ModeArg,
}

fn scalar(s: &str, name: &str) -> CliResult<Exact> {
    Exact::parse(s).map_err(|e| CliError::BadInput(format!("--{name}: {e}")))
}

fn emit(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(io_err(p)),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(io_err("<stdout>")),
    }
}

/// 1, -1, 2, -2, ...
fn alternating(k: usize) -> impl Iterator<Item = i64> {
    (0..k as i64).map(|i| if i % 2 == 0 { i / 2 + 1 } else { -(i / 2 + 1) })
}

fn report_drops(family: &Family<Exact>) {
    if !family.dropped.is_empty() {
        eprintln!("note: {} sample(s) dropped: {:?}", family.dropped.len(), family.dropped);
    }
}

fn per_ruling(count: usize, which: WhichArg) -> usize {
    match which {
        WhichArg::Both => count.div_ceil(2),
        _ => count,
    }
}

fn generate(family: &FamilyCmd) -> CliResult<(Vec<Interval<Exact>>, &Output)> {
    let (fam, output) = match family {
        FamilyCmd::Hyperboloid {
            a,
            b,
            c,
            count,
            which,
            output,
        } => {
            let ts = spread_tangents::<Exact>(per_ruling(*count, *which));
            let fam = gen_hyperboloid_rulings(
                &scalar(a, "A")?,
                &scalar(b, "B")?,
                &scalar(c, "C")?,
                &circle_points(&ts),
                (*which).into(),
            )?;
            (fam, output)
        }
        FamilyCmd::Paraboloid {
            a,
            b,
            count,
            which,
            output,
        } => {
            let lambdas: Vec<Exact> = alternating(per_ruling(*count, *which)).map(qi).collect();
            let fam = gen_paraboloid_rulings(&scalar(a, "A")?, &scalar(b, "B")?, &lambdas, (*which).into())?;
            (fam, output)
        }
        FamilyCmd::Pencil {
            a,
            b,
            c,
            d,
            count,
            output,
        } => {
            // free endpoints on a parabola; spare samples cover ones dropped at the center
            let samples: Vec<(Exact, Exact)> = std::iter::once(0)
                .chain(alternating(count + 3))
                .map(|k| (qi(k), qi(k * k)))
                .collect();
            let mut fam = gen_pencil(
                &scalar(a, "A")?,
                &scalar(b, "B")?,
                &scalar(c, "C")?,
                &scalar(d, "D")?,
                &samples,
            )?;
            fam.intervals.truncate(*count);
            (fam, output)
        }
        FamilyCmd::Parallel {
            m,
            k1,
            k2,
            count,
            output,
        } => {
            let abscissae: Vec<(Exact, Exact)> = std::iter::once(0)
                .chain(alternating(count.saturating_sub(1)))
                .map(|k| (qi(k), qi(k * k + 1)))
                .collect();
            let fam = gen_parallel_lines(&scalar(m, "m")?, &scalar(k1, "k1")?, &scalar(k2, "k2")?, &abscissae)?;
            (fam, output)
        }
        FamilyCmd::SubcaseIi { u, v, count, output } => {
            let ts: Vec<Exact> = alternating(count.div_ceil(2)).map(qi).collect();
            let (f1, f2) = gen_subcase_ii(&scalar(u, "u")?, &scalar(v, "v")?, &ts)?;
            let mut fam = f1;
            for iv in f2.intervals {
                if !fam.intervals.iter().any(|j| j.same(&iv)) {
                    fam.intervals.push(iv);
                }
            }
            fam.intervals.truncate(*count);
            (fam, output)
        }
        FamilyCmd::Random {
            count,
            max_num,
            max_den,
            output,
        } => {
            if *max_num < 1 || *max_den < 1 {
                return Err(CliError::BadInput("--max-num and --max-den must be positive".into()));
            }
            let intervals = random_intervals::<Exact>(*count, output.seed, *max_num, *max_den);
            return Ok((intervals, output));
        }
        FamilyCmd::Transformed {
            input,
            translate,
            rotate_x,
            rotate_z,
            output,
        } => {
            let Dataset::Exact(intervals) = Dataset::read(input)? else {
                return Err(CliError::BadInput("transformed needs an exact dataset".into()));
            };
            let mut motion = RigidMotion3::identity();
            if let Some(t) = rotate_x {
                let rot = PlanarRotation::from_half_angle_tan(&scalar(t, "rotate-x")?);
                motion = motion.then(&RigidMotion3::rotation_x(&rot));
            }
            if let Some(t) = rotate_z {
                let rot = PlanarRotation::from_half_angle_tan(&scalar(t, "rotate-z")?);
                motion = motion.then(&RigidMotion3::rotation_z(&rot));
            }
            if let Some(t) = translate {
                let parts: Vec<Exact> = t.split(',').map(|s| scalar(s, "translate")).collect::<CliResult<_>>()?;
                let [p, q, r]: [Exact; 3] = parts
                    .try_into()
                    .map_err(|_| CliError::BadInput("--translate needs p,q,r".into()))?;
                motion = motion.then(&RigidMotion3::translation(p, q, r));
            }
            (gen_transformed(&intervals, &motion), output)
        }
    };
    report_drops(&fam);
    Ok((fam.intervals, output))
}

fn cmd_generate(args: &GenerateArgs) -> CliResult<()> {
    let (intervals, output) = generate(&args.family)?;
    emit(output.out.as_deref(), &Dataset::Exact(intervals).to_json())
}

fn analyze_as<S: Scalar>(intervals: &[Interval<S>], args: &AnalyzeArgs, command: Vec<String>) -> CliResult<ReportFile> {
    let relation = match (args.relation, &args.rho) {
        (RelationArg::Trapezoid, None) => Relation::Trapezoid,
        (RelationArg::Orthodiagonal, None) => Relation::Orthodiagonal,
        (RelationArg::Ratio, Some(rho)) => {
            Relation::Ratio(S::parse(rho).map_err(|e| CliError::BadInput(format!("--rho: {e}")))?)
        }
        (RelationArg::Ratio, None) => return Err(CliError::BadInput("--relation ratio needs --rho".into())),
        (_, Some(_)) => return Err(CliError::BadInput("--rho only applies to --relation ratio".into())),
    };
    let strategy = match args.strategy {
        StrategyArg::Auto => None,
        StrategyArg::Exhaustive => Some(RegulusStrategy::ExhaustiveTriples),
        StrategyArg::Sampled => Some(RegulusStrategy::Sampled {
            k: args.samples,
            seed: args.seed,
        }),
    };
    let options = AnalyzeOptions {
        relation,
        strategy,
        seed: args.seed,
    };
    let report = analyze(intervals, &options)?;
    Ok(ReportFile::build(&report, command, args.seed))
}

fn to_f64<S: Scalar>(intervals: &[Interval<S>]) -> Vec<[f64; 4]> {
    intervals.iter().map(Interval::to_f64).collect()
}

fn cmd_analyze(args: &AnalyzeArgs, command: Vec<String>) -> CliResult<()> {
    let data = Dataset::read(&args.input)?;
    let (report, plain) = match &data {
        Dataset::Exact(v) => (analyze_as(v, args, command)?, to_f64(v)),
        Dataset::Float(v) => (analyze_as(v, args, command)?, to_f64(v)),
    };
    emit(args.report.as_deref(), &report.to_json())?;
    if let Some(path) = &args.svg {
        let svg = render_svg(&plain, &overlays_from_report(&report));
        fs::write(path, svg).map_err(io_err(path))?;
    }
    Ok(())
}

fn verify_as<S: Scalar>(intervals: &[Interval<S>], seed: u64) -> CliResult<()> {
    let working = if find_exceptional_pair(intervals).is_some() {
        let (rotated, rot) = generic_rotation(intervals, seed);
        eprintln!("note: applied generic rotation cos={} sin={}", rot.cos(), rot.sin());
        rotated
    } else {
        intervals.to_vec()
    };
    let r = verify_i2l(&working)?;
    println!("N={} T={} P={} holds={}", r.n, r.trapezoids, r.intersecting_pairs, r.holds);
    if r.holds {
        Ok(())
    } else {
        Err(CliError::VerifyFailed(format!(
            "2T + N = {} but P = {}",
            2 * r.trapezoids + r.n as u64,
            r.intersecting_pairs
        )))
    }
}

fn cmd_verify(args: &VerifyArgs) -> CliResult<()> {
    match Dataset::read(&args.input)? {
        Dataset::Exact(v) => verify_as(&v, args.seed),
        Dataset::Float(v) => verify_as(&v, args.seed),
    }
}

fn cmd_render(args: &RenderArgs) -> CliResult<()> {
    let plain = match Dataset::read(&args.input)? {
        Dataset::Exact(v) => to_f64(&v),
        Dataset::Float(v) => to_f64(&v),
    };
    let overlays = match &args.report {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(io_err(path))?;
            let report: ReportFile = serde_json::from_str(&text).map_err(|source| CliError::Json {
                path: path.clone(),
                source,
            })?;
            if let Some(bad) = report.member_indices().find(|&k| k >= plain.len()) {
                return Err(CliError::BadInput(format!(
                    "report refers to interval {bad} but the dataset has {}",
                    plain.len()
                )));
            }
            overlays_from_report(&report)
        }
        None => Vec::new(),
    };
    fs::write(&args.out, render_svg(&plain, &overlays)).map_err(io_err(&args.out))
}

fn cmd_convert(args: &ConvertArgs) -> CliResult<()> {
    let to = match args.to {
        ModeArg::Exact => Mode::Exact,
        ModeArg::Float => Mode::Float,
    };
    Dataset::read(&args.input)?.convert(to)?.write(&args.out)
}

/// Runs a parsed command line. `command` is recorded in report provenance.
pub fn execute(cli: &Cli, command: Vec<String>) -> CliResult<()> {
    let run = || match &cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Analyze(a) => cmd_analyze(a, command.clone()),
        Command::Verify(a) => cmd_verify(a),
        Command::Render(a) => cmd_render(a),
        Command::Convert(a) => cmd_convert(a),
    };
    match cli.threads {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build()?.install(run),
        None => run(),
    }
}
