//! Verification suites across several fields, with reproducible seeds and
//! CSV output.

pub mod io;
pub mod random;
mod suites;
pub mod sweep;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::maximal::{ExtendedExponent, VerifyReport, DEFAULT_TOL};

pub use sweep::{default_plans, fit_slope, sweep_plan, SweepPlan, SweepResult, LARGE_FIT_QS};

/// The default field sizes.
pub const DEFAULT_QS: [u32; 6] = [3, 5, 7, 9, 11, 13];
/// Added by `--big`.
pub const BIG_QS: [u32; 3] = [16, 25, 27];
/// Dense random inputs are only drawn on groups with at most this many points.
pub const DENSE_POINT_LIMIT: usize = 1 << 15;

/// A named group of checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Suite {
    Census,
    PlanarL2,
    Ttstar,
    Diag,
    Offdiag,
    RdL2,
    Fourier,
    Exponents,
    LowerBounds,
    Examples,
    KakeyaBounds,
    Moments,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Census,
        Suite::PlanarL2,
        Suite::Ttstar,
        Suite::Diag,
        Suite::Offdiag,
        Suite::RdL2,
        Suite::Fourier,
        Suite::Exponents,
        Suite::LowerBounds,
        Suite::Examples,
        Suite::KakeyaBounds,
        Suite::Moments,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Census => "census",
            Suite::PlanarL2 => "planar-l2",
            Suite::Ttstar => "ttstar",
            Suite::Diag => "diag",
            Suite::Offdiag => "offdiag",
            Suite::RdL2 => "rd-l2",
            Suite::Fourier => "fourier",
            Suite::Exponents => "exponents",
            Suite::LowerBounds => "lowerbounds",
            Suite::Examples => "examples",
            Suite::KakeyaBounds => "kakeya-bounds",
            Suite::Moments => "moments",
        }
    }

    fn id(self) -> u8 {
        self as u8
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s.trim())
            .ok_or_else(|| Error::Malformed(format!("unknown suite {s:?}")))
    }
}

/// Everything a verification run needs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub qs: Vec<u32>,
    pub n: usize,
    pub suites: Vec<Suite>,
    pub seed: u64,
    pub trials: usize,
    pub tol: f64,
    pub modulus: Option<Vec<u32>>,
    pub out: Option<PathBuf>,
    pub dump_fourier: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            qs: DEFAULT_QS.to_vec(),
            n: 1,
            suites: Suite::ALL.to_vec(),
            seed: 0,
            trials: 20,
            tol: DEFAULT_TOL,
            modulus: None,
            out: None,
            dump_fourier: None,
        }
    }
}

impl SuiteConfig {
    pub fn new(qs: &[u32], suites: &[Suite]) -> Self {
        SuiteConfig {
            qs: qs.to_vec(),
            suites: suites.to_vec(),
            ..Self::default()
        }
    }

    /// Checks that every `q` is a supported prime power and the numeric
    /// settings are sane.
    pub fn validate(&self) -> Result<()> {
        if self.qs.is_empty() {
            return Err(Error::Malformed("empty q list".into()));
        }
        if self.trials == 0 {
            return Err(Error::Malformed("trials must be at least 1".into()));
        }
        if self.n == 0 {
            return Err(Error::Malformed("n must be at least 1".into()));
        }
        if !(self.tol >= 0.0 && self.tol.is_finite()) {
            return Err(Error::Malformed(format!("bad tolerance {}", self.tol)));
        }
        if self.modulus.is_some() && self.qs.len() != 1 {
            return Err(Error::Malformed("--modulus needs exactly one q".into()));
        }
        for &q in &self.qs {
            self.field(q)?;
        }
        Ok(())
    }

    pub fn field(&self, q: u32) -> Result<Field> {
        Field::from_spec(q, self.modulus.as_deref())
    }
}

/// One CSV row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub suite: String,
    pub bound: String,
    pub q: u32,
    pub n: usize,
    pub u: Option<ExtendedExponent>,
    pub v: Option<ExtendedExponent>,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub holds: bool,
    pub seed: u64,
    pub trial: Option<usize>,
}

pub const CSV_HEADER: &str = "suite,bound,q,n,u,v,lhs,rhs,ratio,holds,seed,trial";

impl Row {
    fn from_report(
        suite: Suite,
        n: usize,
        r: &VerifyReport,
        seed: u64,
        trial: Option<usize>,
    ) -> Row {
        Row {
            suite: suite.name().to_string(),
            bound: r.bound.clone(),
            q: r.q,
            n,
            u: Some(r.u),
            v: Some(r.v),
            lhs: r.lhs,
            rhs: r.rhs,
            ratio: r.ratio,
            holds: r.holds,
            seed,
            trial,
        }
    }

    fn key(
        &self,
    ) -> (
        &str,
        &str,
        u32,
        usize,
        Option<ExtendedExponent>,
        Option<ExtendedExponent>,
    ) {
        (&self.suite, &self.bound, self.q, self.n, self.u, self.v)
    }
}

/// All rows of a run, in a deterministic order.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub rows: Vec<Row>,
    /// Human-readable notes about skipped combinations.
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }

    pub fn violations(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| !r.holds)
    }

    /// 0 when every row holds, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_hold() {
            0
        } else {
            1
        }
    }

    pub fn write_csv(&self, w: impl Write) -> Result<()> {
        write_rows(&self.rows, w)
    }
}

/// Writes rows with the standard header.
pub fn write_rows(rows: &[Row], w: impl Write) -> Result<()> {
    let mut wr = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    wr.write_record(CSV_HEADER.split(','))
        .map_err(|e| Error::Malformed(e.to_string()))?;
    for row in rows {
        wr.serialize(row)
            .map_err(|e| Error::Malformed(e.to_string()))?;
    }
    wr.flush()?;
    Ok(())
}

/// Collects rows, keeping for repeated keys (bound, q, n, u, v) only the
/// worst one: a violation if there is one, else the largest ratio.
#[derive(Default)]
struct RowSink {
    rows: Vec<Row>,
}

impl RowSink {
    fn push(&mut self, row: Row) {
        if let Some(old) = self.rows.iter_mut().find(|r| r.key() == row.key()) {
            let worse =
                (old.holds && !row.holds) || (old.holds == row.holds && row.ratio > old.ratio);
            if worse {
                *old = row;
            }
        } else {
            self.rows.push(row);
        }
    }
}

/// Runs every configured suite in order.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let mut report = SuiteReport::default();
    for &suite in &config.suites {
        let mut ctx = suites::Ctx::new(config, suite);
        suites::run(&mut ctx)?;
        report.rows.extend(ctx.sink.rows);
        report.notes.extend(ctx.notes);
    }
    if let Some(path) = &config.out {
        report.write_csv(std::fs::File::create(path)?)?;
    }
    Ok(report)
}

/// Parses a comma-separated list such as `3,5,7`.
pub fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::Malformed(format!("bad list entry {x:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn config_validation() {
        assert!(SuiteConfig::new(&[3, 4, 5], &[Suite::Census])
            .validate()
            .is_ok());
        assert!(SuiteConfig::new(&[6], &[Suite::Census]).validate().is_err());
        let mut c = SuiteConfig::new(&[3, 5], &[Suite::Census]);
        c.modulus = Some(vec![1, 1]);
        assert!(c.validate().is_err());
    }

    #[test]
    fn csv_is_deterministic() {
        let mut c = SuiteConfig::new(&[3, 5], &[Suite::RdL2, Suite::Ttstar]);
        c.trials = 3;
        c.seed = 7;
        let mut a = Vec::new();
        run_suite(&c).unwrap().write_csv(&mut a).unwrap();
        let mut b = Vec::new();
        run_suite(&c).unwrap().write_csv(&mut b).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        assert!(text.starts_with(CSV_HEADER));
    }
}
