use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use heisenberg_kakeya::constructions::{anisotropic_eta, extremal_function, ExtremalKind};
use heisenberg_kakeya::harness::io::load_grid_function;
use heisenberg_kakeya::harness::{
    default_plans, parse_list, run_suite, sweep_plan, Suite, SuiteConfig, SuiteReport, BIG_QS,
    DEFAULT_QS,
};
use heisenberg_kakeya::maximal::{
    affine_max_op_argmax, heis_max_op_argmax, refined_max_op_argmax, Domain, MaxValues,
};
use heisenberg_kakeya::{geometry::AffineSpace, Error, Field, Heisenberg, Result};

#[derive(Parser)]
#[command(
    name = "kakeya",
    version,
    about = "Horizontal Kakeya maximal operators on finite Heisenberg groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare enumerated counts of points, directions and lines with their closed forms.
    Census(Common),
    /// Run verification suites and write one CSV row per (bound, q, input).
    Verify(VerifyArgs),
    /// Fit growth slopes of extremal ratios against the exponent formulas.
    Sweep(Common),
    /// Evaluate a maximal operator on a JSON grid function or an extremal function.
    Maxop(MaxopArgs),
    /// Check the separating example sets and print a table.
    Examples(Common),
}

#[derive(Args, Clone)]
struct Common {
    /// Comma-separated field sizes.
    #[arg(long, value_delimiter = ',')]
    q: Option<Vec<u32>>,
    /// Rank of the Heisenberg group.
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Modulus coefficients, constant term first (leading 1 optional).
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
    /// Also use q = 16, 25, 27.
    #[arg(long)]
    big: bool,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn qs(&self) -> Vec<u32> {
        let mut qs = self.q.clone().unwrap_or_else(|| DEFAULT_QS.to_vec());
        if self.big {
            for q in BIG_QS {
                if !qs.contains(&q) {
                    qs.push(q);
                }
            }
        }
        qs
    }

    fn config(&self, suites: &[Suite]) -> SuiteConfig {
        SuiteConfig {
            qs: self.qs(),
            n: self.n,
            suites: suites.to_vec(),
            modulus: self.modulus.clone(),
            ..SuiteConfig::default()
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated suite names, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Relative tolerance for inequalities.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Write the central Fourier tables of the first random input here.
    #[arg(long)]
    dump_fourier: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OperatorArg {
    Planar,
    Heis,
    Refined,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    PointMass,
    SingleLine,
    Bush,
    TwoLinesBlocking,
    Constant,
    Paraboloid,
}

#[derive(Args)]
struct MaxopArgs {
    #[arg(long, value_enum)]
    operator: OperatorArg,
    /// JSON grid function to evaluate.
    #[arg(long, conflicts_with = "extremal")]
    input: Option<PathBuf>,
    /// Evaluate this extremal function instead.
    #[arg(long, value_enum)]
    extremal: Option<KindArg>,
    #[arg(long, default_value_t = 5)]
    q: u32,
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn finish(report: &SuiteReport) -> ExitCode {
    for note in &report.notes {
        eprintln!("note: {note}");
    }
    let bad: Vec<_> = report.violations().collect();
    if bad.is_empty() {
        return ExitCode::SUCCESS;
    }
    eprintln!("{} violated row(s):", bad.len());
    let mut err = io::stderr().lock();
    let rows: Vec<_> = bad.into_iter().cloned().collect();
    let _ = heisenberg_kakeya::harness::write_rows(&rows, &mut err);
    ExitCode::from(1)
}

fn verify(args: &VerifyArgs) -> Result<ExitCode> {
    let suites = if args.suite.trim() == "all" {
        Suite::ALL.to_vec()
    } else {
        parse_list::<Suite>(&args.suite)
            .map_err(|_| Error::Malformed(format!("unknown suite in {:?}", args.suite)))?
    };
    let config = SuiteConfig {
        trials: args.trials,
        seed: args.seed,
        tol: args.tol,
        dump_fourier: args.dump_fourier.clone(),
        ..args.common.config(&suites)
    };
    let report = run_suite(&config)?;
    report.write_csv(output(&args.common.out)?)?;
    Ok(finish(&report))
}

fn table(report: &SuiteReport) -> String {
    let mut s = format!(
        "{:<48} {:>4} {:>14} {:>14}  {}\n",
        "check", "q", "observed", "reference", "ok"
    );
    for r in &report.rows {
        s += &format!(
            "{:<48} {:>4} {:>14.6} {:>14.6}  {}\n",
            r.bound,
            r.q,
            r.lhs,
            r.rhs,
            if r.holds { "yes" } else { "NO" }
        );
    }
    s
}

fn tabulate(common: &Common, suite: Suite) -> Result<ExitCode> {
    let report = run_suite(&common.config(&[suite]))?;
    output(&common.out)?.write_all(table(&report).as_bytes())?;
    Ok(finish(&report))
}

#[derive(Serialize)]
struct SweepRow {
    plan: String,
    n: usize,
    u: String,
    v: String,
    q: u32,
    ratio: f64,
    slope: f64,
    term: f64,
    matches: bool,
}

fn sweep(common: &Common) -> Result<ExitCode> {
    let mut w = csv::Writer::from_writer(output(&common.out)?);
    let qs = common.qs();
    let mut ok = true;
    for plan in default_plans().into_iter().filter(|p| p.n == common.n) {
        let modulus = if plan.large_q {
            None
        } else {
            common.modulus.as_deref()
        };
        let res = sweep_plan(&plan, &plan.fit_qs(&qs), modulus)?;
        let matches = res.deviation() <= 0.1;
        ok &= matches;
        for (&q, &ratio) in res.qs.iter().zip(&res.ratios) {
            w.serialize(SweepRow {
                plan: plan.label(),
                n: plan.n,
                u: plan.u.to_string(),
                v: plan.v.to_string(),
                q,
                ratio,
                slope: res.slope,
                term: *res.term.numer() as f64 / *res.term.denom() as f64,
                matches,
            })
            .map_err(|e| Error::Malformed(e.to_string()))?;
        }
    }
    w.flush()?;
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

#[derive(Serialize)]
struct MaxopOutput {
    operator: &'static str,
    q: u32,
    values: Vec<f64>,
    argmax: Vec<usize>,
}

fn maxop(args: &MaxopArgs) -> Result<ExitCode> {
    let f = match (&args.input, args.extremal) {
        (Some(path), _) => load_grid_function(path)?,
        (None, Some(kind)) => {
            let field = Field::from_spec(args.q, args.modulus.as_deref())?;
            let h = Heisenberg::new(&field, args.n)?;
            let kind = match kind {
                KindArg::PointMass => ExtremalKind::PointMass,
                KindArg::SingleLine => ExtremalKind::SingleLine,
                KindArg::Bush => ExtremalKind::Bush,
                KindArg::TwoLinesBlocking => ExtremalKind::TwoLinesBlocking,
                KindArg::Constant => ExtremalKind::Constant,
                KindArg::Paraboloid => ExtremalKind::Paraboloid {
                    eta: anisotropic_eta(&field)?,
                },
            };
            extremal_function(&h, kind)?
        }
        (None, None) => return Err(Error::Malformed("give --input or --extremal".into())),
    };
    let (name, MaxValues { values, argmax }) = match (args.operator, f.domain()) {
        (OperatorArg::Planar, Domain::Affine { d }) => (
            "planar",
            affine_max_op_argmax(&AffineSpace::new(f.field(), d)?, &f)?,
        ),
        (OperatorArg::Heis, Domain::Heisenberg { n }) => (
            "heis",
            heis_max_op_argmax(&Heisenberg::new(f.field(), n)?, &f)?,
        ),
        (OperatorArg::Refined, Domain::Heisenberg { n }) => (
            "refined",
            refined_max_op_argmax(&Heisenberg::new(f.field(), n)?, &f)?,
        ),
        (_, d) => return Err(Error::Domain(format!("operator does not act on {d:?}"))),
    };
    let out = MaxopOutput {
        operator: name,
        q: f.q(),
        values,
        argmax,
    };
    let mut w = output(&args.out)?;
    serde_json::to_writer(&mut w, &out)?;
    writeln!(w)?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Census(c) => tabulate(c, Suite::Census),
        Command::Verify(v) => verify(v),
        Command::Sweep(c) => sweep(c),
        Command::Maxop(m) => maxop(m),
        Command::Examples(c) => tabulate(c, Suite::Examples),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
