//! Problem documents, run reports and the four commands behind the
//! `insideout` binary.
//!
//! A problem document is JSON:
//!
//! ```json
//! {
//!   "builtin": { "family": "magic", "params": [3] },
//!   "mode": "cubical",
//!   "distinctness": "all",
//!   "symmetry": "none",
//!   "budgets": { "max_points": 100000000, "max_orientations": 1000000 },
//!   "range": { "t_min": 1, "t_max": 12 }
//! }
//! ```
//!
//! or, instead of `builtin`, an `explicit` block with `d` and either
//! `line_classes` (lists of 1-based point lists, one list per class) or
//! `forms` (`{"coefficients": ["1", "1/2", ...], "target": "1", "class": 1}`).
//! Rationals are strings `"p/q"` or integers.

use crate::arrangement::{inside_out_denominator, Orientation, Target};
use crate::clutter::{builtin, Builtin, CoveringClutter, Distinctness, FormSystem, InsideOutProblem, Mode, Options, Symmetry};
use crate::counting::{Budget, CountSeries, Counter, Regime};
use crate::exact::{format_rational, parse_rational, Rational};
use crate::permutations::{conjecture_report_with_ties, realizable_in, ConjectureReport};
use crate::quasipoly::{fit, verify_structure, Check, CheckStatus, FitReport, StructureReport};
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<BuiltinSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub explicit: Option<ExplicitSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distinctness: Option<Distinctness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<Symmetry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budgets: Option<Budget>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<RangeSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuiltinSpec {
    pub family: String,
    pub params: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitSpec {
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line_classes: Option<Vec<Vec<Vec<usize>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forms: Option<Vec<FormSpec>>,
    /// `[rows, cols]` when the points form a grid (needed for symmetry).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalSpec {
    Integer(i64),
    Text(String),
}

impl RationalSpec {
    fn parse(&self, location: &str) -> Result<Rational> {
        match self {
            RationalSpec::Integer(v) => Ok(crate::exact::rat(*v)),
            RationalSpec::Text(s) => {
                parse_rational(s).ok_or_else(|| Error::schema(location, format!("{s:?} is not a rational p/q")))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormSpec {
    pub coefficients: Vec<RationalSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<RationalSpec>,
    /// 1-based class label; forms default to class 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RangeSpec {
    #[serde(default = "one")]
    pub t_min: u64,
    pub t_max: u64,
}

fn one() -> u64 {
    1
}

/// Parses a problem document, reporting JSON errors by line and column.
pub fn parse_document(text: &str) -> Result<ProblemDocument> {
    serde_json::from_str(text)
        .map_err(|e| Error::schema(format!("line {} column {}", e.line(), e.column()), e.to_string()))
}

impl ProblemDocument {
    pub fn for_builtin(family: Builtin, mode: Mode) -> Self {
        ProblemDocument {
            builtin: Some(BuiltinSpec {
                family: family.family().to_string(),
                params: family.params(),
            }),
            mode: Some(mode),
            ..Default::default()
        }
    }

    pub fn budget(&self) -> Budget {
        self.budgets.unwrap_or_default()
    }

    pub fn options(&self) -> Options {
        Options {
            mode: self.mode.unwrap_or(Mode::Cubical),
            distinctness: self.distinctness,
            symmetry: self.symmetry.unwrap_or_default(),
        }
    }
}

fn zero_based(v: &[usize], location: &str) -> Result<Vec<usize>> {
    v.iter()
        .map(|&i| {
            i.checked_sub(1)
                .ok_or_else(|| Error::schema(location, "indices are 1-based"))
        })
        .collect()
}

/// Builds the problem a document describes; built-in documents give the
/// same problem as [`builtin`].
pub fn from_config(doc: &ProblemDocument) -> Result<InsideOutProblem> {
    let options = doc.options();
    match (&doc.builtin, &doc.explicit) {
        (Some(b), None) => {
            let family = Builtin::from_parts(&b.family, &b.params)?;
            builtin(family, options)
        }
        (None, Some(e)) => {
            if e.d == 0 {
                return Err(Error::schema("explicit.d", "need at least one point"));
            }
            let name = doc.name.clone().unwrap_or_else(|| "explicit".to_string());
            match (&e.line_classes, &e.forms) {
                (Some(classes), None) => {
                    let mut zb = Vec::with_capacity(classes.len());
                    for (k, class) in classes.iter().enumerate() {
                        let mut lines = Vec::with_capacity(class.len());
                        for (li, line) in class.iter().enumerate() {
                            lines.push(zero_based(line, &format!("explicit.line_classes[{k}][{li}]"))?);
                        }
                        zb.push(lines);
                    }
                    let clutter = CoveringClutter::with_classes(e.d, zb)?;
                    let options = Options {
                        distinctness: Some(options.distinctness.unwrap_or(Distinctness::All)),
                        ..options
                    };
                    InsideOutProblem::from_clutter(name, clutter, e.grid, options)
                }
                (None, Some(forms)) => {
                    let mut coeffs = Vec::with_capacity(forms.len());
                    let mut classes = Vec::with_capacity(forms.len());
                    let mut targets = Vec::with_capacity(forms.len());
                    for (i, f) in forms.iter().enumerate() {
                        let loc = format!("explicit.forms[{i}]");
                        coeffs.push(
                            f.coefficients
                                .iter()
                                .enumerate()
                                .map(|(j, c)| c.parse(&format!("{loc}.coefficients[{j}]")))
                                .collect::<Result<Vec<_>>>()?,
                        );
                        let class = f.class.unwrap_or(1);
                        classes.push(
                            class
                                .checked_sub(1)
                                .ok_or_else(|| Error::schema(format!("{loc}.class"), "classes are 1-based"))?,
                        );
                        targets.push(match &f.target {
                            Some(t) => t.parse(&format!("{loc}.target"))?,
                            None => crate::exact::rat(1),
                        });
                    }
                    let system = FormSystem::new(e.d, coeffs, classes, targets)?;
                    InsideOutProblem::from_forms(name, system, e.grid, options)
                }
                _ => Err(Error::schema(
                    "explicit",
                    "give exactly one of line_classes and forms",
                )),
            }
        }
        _ => Err(Error::schema("document", "give exactly one of builtin and explicit")),
    }
}

/// Echo of the constructed problem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProblemEcho {
    pub name: String,
    pub mode: Mode,
    pub distinctness: Distinctness,
    pub symmetry: Symmetry,
    pub points: usize,
    pub dim: usize,
    pub period: u64,
    pub hyperplanes: usize,
    pub constant_weight: bool,
}

impl ProblemEcho {
    pub fn of(p: &InsideOutProblem) -> Self {
        ProblemEcho {
            name: p.name().to_string(),
            mode: p.mode(),
            distinctness: p.distinctness(),
            symmetry: p.symmetry(),
            points: p.point_count(),
            dim: p.dim(),
            period: p.period(),
            hyperplanes: p.arrangement().hyperplanes.len(),
            constant_weight: p.constant_weight(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesOut {
    pub regime: Regime,
    /// `[t, value]` pairs in increasing `t`.
    pub values: Vec<(u64, u64)>,
}

impl From<&CountSeries> for SeriesOut {
    fn from(s: &CountSeries) -> Self {
        SeriesOut {
            regime: s.regime,
            values: s.values.iter().map(|(&t, &v)| (t, v)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstituentOut {
    pub residue: u64,
    /// `c_0, c_1, …` as exact fractions.
    pub coefficients: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FitOut {
    pub regime: Regime,
    pub degree: usize,
    pub period: u64,
    pub period_bound: u64,
    pub candidates: Vec<u64>,
    pub held_out: usize,
    pub constituents: Vec<ConstituentOut>,
    /// Sign pattern of each constituent, highest degree first.
    pub signs: Vec<String>,
}

impl From<&FitReport> for FitOut {
    fn from(r: &FitReport) -> Self {
        let q = &r.quasipolynomial;
        FitOut {
            regime: r.regime,
            degree: r.degree,
            period: q.period,
            period_bound: r.period_bound,
            candidates: r.candidates.clone(),
            held_out: r.held_out,
            constituents: q
                .constituents
                .iter()
                .enumerate()
                .map(|(i, c)| ConstituentOut {
                    residue: i as u64,
                    coefficients: c.iter().map(format_rational).collect(),
                })
                .collect(),
            signs: q
                .constituents
                .iter()
                .map(|c| {
                    c.iter()
                        .rev()
                        .map(|v| match v.numer().sign() {
                            num_bigint::Sign::Plus => '+',
                            num_bigint::Sign::Minus => '-',
                            num_bigint::Sign::NoSign => '0',
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermutationsOut {
    pub count: usize,
    /// Rank arrays (complete graph) or 1-based oriented edges `[i, j]`
    /// meaning `x_i < x_j`.
    pub orientations: Vec<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjecture: Option<ConjectureReport>,
}

fn orientation_json(o: &Orientation) -> serde_json::Value {
    match o.positions() {
        Some(p) => serde_json::json!(p),
        None => serde_json::json!(o.edges.iter().map(|&(i, j)| [i + 1, j + 1]).collect::<Vec<_>>()),
    }
}

/// Everything a command produced. Serialization is deterministic: no
/// timings, sorted collections, canonical fractions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub problem: ProblemEcho,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub series: Vec<SeriesOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit: Option<FitOut>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub permutations: Option<PermutationsOut>,
    pub budget: Budget,
    pub passed: bool,
}

impl RunReport {
    fn new(command: &str, problem: &InsideOutProblem, budget: Budget) -> Self {
        RunReport {
            command: command.to_string(),
            problem: ProblemEcho::of(problem),
            series: Vec::new(),
            fit: None,
            checks: Vec::new(),
            permutations: None,
            budget,
            passed: true,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// A flat table: series as `t, regime…`; fits as `residue, c0…`;
    /// checks as `check, status, expected, actual`; orientations one per row.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        if !self.series.is_empty() {
            let mut header = vec!["t".to_string()];
            header.extend(self.series.iter().map(|s| s.regime.name().to_string()));
            w.write_record(&header).unwrap();
            for (k, (t, _)) in self.series[0].values.iter().enumerate() {
                let mut row = vec![t.to_string()];
                row.extend(self.series.iter().map(|s| s.values[k].1.to_string()));
                w.write_record(&row).unwrap();
            }
        }
        if let Some(f) = &self.fit {
            let mut header = vec!["residue".to_string()];
            header.extend((0..=f.degree).map(|i| format!("c{i}")));
            w.write_record(&header).unwrap();
            for c in &f.constituents {
                let mut row = vec![c.residue.to_string()];
                row.extend(c.coefficients.iter().cloned());
                w.write_record(&row).unwrap();
            }
        }
        if !self.checks.is_empty() {
            w.write_record(["check", "status", "expected", "actual"]).unwrap();
            for c in &self.checks {
                let status = match c.status {
                    CheckStatus::Pass => "pass",
                    CheckStatus::Fail => "fail",
                    CheckStatus::Skipped => "skipped",
                };
                w.write_record([c.name.as_str(), status, &c.expected, &c.actual]).unwrap();
            }
        }
        if let Some(p) = &self.permutations {
            w.write_record(["index", "orientation"]).unwrap();
            for (i, o) in p.orientations.iter().enumerate() {
                w.write_record([(i + 1).to_string(), o.to_string()]).unwrap();
            }
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }
}

/// Exit code contract: 1 bad input, 2 budget exhausted, 3 fit or
/// verification failure.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::TooLarge { .. } | Error::Overflow => 2,
        Error::NoConsistentPeriod { .. } | Error::InsufficientData { .. } => 3,
        _ => 1,
    }
}

pub fn cmd_count(problem: &InsideOutProblem, regimes: &[Regime], t_min: u64, t_max: u64, budget: Budget) -> Result<RunReport> {
    let mut report = RunReport::new("count", problem, budget);
    let mut counter = Counter::new(problem, budget)?;
    let series = counter.series(regimes, t_min..=t_max)?;
    report.series = series.iter().map(SeriesOut::from).collect();
    Ok(report)
}

/// Period bound for fitting: the inside-out denominator.
pub fn period_bound(problem: &InsideOutProblem, budget: &Budget) -> Result<u64> {
    inside_out_denominator(problem.polytope(), problem.arrangement(), budget)?
        .to_u64()
        .ok_or(Error::Overflow)
}

/// Counts `t = 1..T` (default `T = 2·bound·(D+1)`), fits, and for open
/// regimes runs the structural checks.
pub fn cmd_fit(
    problem: &InsideOutProblem,
    regime: Regime,
    t_max: Option<u64>,
    degree: Option<usize>,
    bound: Option<u64>,
    budget: Budget,
) -> Result<RunReport> {
    let mut report = RunReport::new("fit", problem, budget);
    let degree = degree.unwrap_or(problem.dim());
    let bound = match bound {
        Some(b) => b,
        None => period_bound(problem, &budget)?,
    };
    let t_max = t_max.unwrap_or(2 * bound * (degree as u64 + 1));
    let mut counter = Counter::new(problem, budget)?;
    let series = counter.series(&[regime], 1..=t_max)?.remove(0);
    let fitted = fit(&series, degree, bound, problem.period())?;
    report.fit = Some(FitOut::from(&fitted));
    if !regime.is_closed() {
        let checks = verify_structure(&fitted, problem, &budget)?;
        report.passed = checks.all_pass();
        report.checks = checks.checks;
    }
    Ok(report)
}

/// The cross-method suite.
pub fn cmd_verify(problem: &InsideOutProblem, t_max: Option<u64>, budget: Budget) -> Result<RunReport> {
    let mut report = RunReport::new("verify", problem, budget);
    let mut checks = StructureReport::default();
    let p = problem.polytope();
    let vertices = p.vertices(&budget)?;
    let den = inside_out_denominator(p, problem.arrangement(), &budget)?;
    checks.push(
        format!("polytope denominator {} divides {den}", vertices.denominator),
        true,
        den.is_multiple_of(&vertices.denominator),
    );
    let bound = den.to_u64().ok_or(Error::Overflow)?;
    let degree = problem.dim();
    let t_max = t_max.unwrap_or(2 * bound * (degree as u64 + 1));

    let mut counter = Counter::new(problem, budget)?;
    let direct = counter.series(&[Regime::OpenStrong, Regime::WeakOpen], 1..=t_max)?;
    let open = &direct[0];
    let pp = problem.period();
    let vanishing = open.values.iter().all(|(t, v)| t % pp == 0 || *v == 0);
    checks.push(format!("open counts vanish off multiples of p(s) = {pp}"), true, vanishing);
    let weak = &direct[1];
    let monotone = open.values.iter().all(|(t, v)| *v <= weak.get(*t).unwrap());
    checks.push("open-strong at most weak-open", true, monotone);

    match fit(open, degree, bound, pp) {
        Ok(fitted) => {
            let structure = verify_structure(&fitted, problem, &budget)?;
            checks.checks.extend(structure.checks);
            report.fit = Some(FitOut::from(&fitted));
        }
        Err(e @ (Error::NoConsistentPeriod { .. } | Error::InsufficientData { .. })) => {
            checks.push("quasipolynomial fit", "fit", e.to_string());
        }
        Err(e) => return Err(e),
    }

    let mobius_range = 1..=t_max.min(20);
    match counter.series(&[Regime::MoebiusOpen], mobius_range.clone()) {
        Ok(m) => {
            let expected: Vec<String> = mobius_range.clone().map(|t| open.get(t).unwrap().to_string()).collect();
            let actual: Vec<String> = mobius_range.clone().map(|t| m[0].get(t).unwrap().to_string()).collect();
            checks.push("moebius-open equals open-strong on t=1..20", expected.join(","), actual.join(","));
            match counter.series(&[Regime::MoebiusClosed, Regime::ClosedMultiplicity], 0..=10) {
                Ok(c) => checks.push(
                    "moebius-closed equals closed-multiplicity on t=0..10",
                    c[1].values.values().map(u64::to_string).collect::<Vec<_>>().join(","),
                    c[0].values.values().map(u64::to_string).collect::<Vec<_>>().join(","),
                ),
                Err(Error::NotTransverse) => checks.skip("moebius-closed", "arrangement is not transverse"),
                Err(e) => return Err(e),
            }
        }
        Err(Error::NonConstantWeight) => checks.skip("moebius", "forms do not have constant weight"),
        Err(e) => return Err(e),
    }

    if problem.mode() == Mode::Cubical {
        let in_p = realizable_in(problem, Target::Closed, &budget)?;
        let in_s = realizable_in(problem, Target::Subspace, &budget)?;
        checks.push("orientations realizable in P equal those in s", in_s.len(), in_p.len());
    }

    report.passed = checks.all_pass();
    report.checks = checks.checks;
    Ok(report)
}

/// `ties` (experimental, normally empty) lists 1-based positions of an
/// order whose following link may be an equality.
pub fn cmd_perms(problem: &InsideOutProblem, ties: &[usize], budget: Budget) -> Result<RunReport> {
    let mut report = RunReport::new("perms", problem, budget);
    let os = realizable_in(problem, Target::Open, &budget)?;
    let conjecture = if problem.graph().is_complete() {
        let c = conjecture_report_with_ties(problem, ties, &budget)?;
        report.passed = c.agreement;
        Some(c)
    } else {
        None
    };
    report.permutations = Some(PermutationsOut {
        count: os.len(),
        orientations: os.iter().map(orientation_json).collect(),
        conjecture,
    });
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DistinctFlag {
    All,
    Line,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeFlag {
    Cubical,
    Affine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SymmetryFlag {
    None,
    Cubical,
    Affine,
}

/// Problem selection and budgets shared by every command. Flags override
/// the corresponding document fields.
#[derive(Clone, Debug, Args)]
pub struct ProblemArgs {
    /// JSON problem document.
    #[arg(long, conflicts_with = "builtin")]
    pub problem: Option<PathBuf>,
    /// Built-in family, e.g. `magic(3)` or `magilatin_rectangle:2x3`.
    #[arg(long)]
    pub builtin: Option<String>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeFlag>,
    #[arg(long, value_enum)]
    pub distinct: Option<DistinctFlag>,
    #[arg(long, value_enum)]
    pub symmetry: Option<SymmetryFlag>,
    #[arg(long)]
    pub budget_points: Option<u128>,
    #[arg(long)]
    pub budget_orients: Option<u128>,
    #[arg(long, value_enum, default_value = "json")]
    pub out: OutputFormat,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Count lattice points at each dilation.
    Count {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long)]
        t_min: Option<u64>,
        #[arg(long)]
        t_max: Option<u64>,
        /// Comma-separated regimes.
        #[arg(long, default_value = "open-strong", value_delimiter = ',')]
        regime: Vec<String>,
    },
    /// Fit a quasipolynomial and check its structure.
    Fit {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, default_value = "open-strong")]
        regime: String,
        #[arg(long)]
        t_max: Option<u64>,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        period_bound: Option<u64>,
    },
    /// Run the cross-method checks.
    Verify {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long)]
        t_max: Option<u64>,
    },
    /// List realizable orientations and compare with the antichain test.
    Perms {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Experimental: positions k whose link x_{σk} < x_{σ(k+1)} is
        /// relaxed to ≤ in the conjecture comparison.
        #[arg(long, value_delimiter = ',')]
        ties: Vec<usize>,
    },
}

#[derive(Clone, Debug, Parser)]
#[command(name = "insideout", version, about = "Exact counts of magic and magilatin labellings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

fn load(args: &ProblemArgs) -> Result<ProblemDocument> {
    let mut doc = match (&args.problem, &args.builtin) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::schema(path.display().to_string(), e.to_string()))?;
            parse_document(&text)?
        }
        (None, Some(name)) => {
            let b: Builtin = name.parse()?;
            ProblemDocument::for_builtin(b, Mode::Cubical)
        }
        (None, None) => return Err(Error::schema("arguments", "give --problem FILE or --builtin NAME")),
    };
    if let Some(m) = args.mode {
        doc.mode = Some(match m {
            ModeFlag::Cubical => Mode::Cubical,
            ModeFlag::Affine => Mode::Affine,
        });
    }
    if let Some(d) = args.distinct {
        doc.distinctness = Some(match d {
            DistinctFlag::All => Distinctness::All,
            DistinctFlag::Line => Distinctness::Line,
            DistinctFlag::None => Distinctness::None,
        });
    }
    if let Some(s) = args.symmetry {
        doc.symmetry = Some(match s {
            SymmetryFlag::None => Symmetry::None,
            SymmetryFlag::Cubical => Symmetry::Cubical,
            SymmetryFlag::Affine => Symmetry::Affine,
        });
    }
    let mut budget = doc.budget();
    if let Some(n) = args.budget_points {
        budget.max_points = n;
    }
    if let Some(n) = args.budget_orients {
        budget.max_orientations = n;
    }
    doc.budgets = Some(budget);
    Ok(doc)
}

/// Runs one command; returns the rendered report and the exit code.
pub fn run(cli: &Cli) -> (String, i32) {
    let args = match &cli.command {
        Command::Count { problem, .. }
        | Command::Fit { problem, .. }
        | Command::Verify { problem, .. }
        | Command::Perms { problem, .. } => problem,
    };
    let outcome = (|| -> Result<RunReport> {
        let doc = load(args)?;
        let budget = doc.budget();
        let problem = from_config(&doc)?;
        match &cli.command {
            Command::Count { t_min, t_max, regime, .. } => {
                let regimes = regime.iter().map(|r| r.parse()).collect::<Result<Vec<Regime>>>()?;
                let t_min = t_min.or(doc.range.map(|r| r.t_min)).unwrap_or(1);
                let t_max = t_max
                    .or(doc.range.map(|r| r.t_max))
                    .ok_or_else(|| Error::schema("range.t_max", "give --t-max or range.t_max"))?;
                if t_min > t_max {
                    return Err(Error::schema("range", "t_min exceeds t_max"));
                }
                cmd_count(&problem, &regimes, t_min, t_max, budget)
            }
            Command::Fit { regime, t_max, degree, period_bound, .. } => {
                let t_max = t_max.or(doc.range.map(|r| r.t_max));
                cmd_fit(&problem, regime.parse()?, t_max, *degree, *period_bound, budget)
            }
            Command::Verify { t_max, .. } => cmd_verify(&problem, t_max.or(doc.range.map(|r| r.t_max)), budget),
            Command::Perms { ties, .. } => cmd_perms(&problem, ties, budget),
        }
    })();
    match outcome {
        Ok(report) => {
            let text = match args.out {
                OutputFormat::Json => report.to_json(),
                OutputFormat::Csv => report.to_csv(),
            };
            (text, if report.passed { 0 } else { 3 })
        }
        Err(e) => (format!("error: {e}"), exit_code(&e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_document_round_trip() {
        let doc = parse_document(r#"{"builtin": {"family": "magic", "params": [3]}, "mode": "affine"}"#).unwrap();
        let a = from_config(&doc).unwrap();
        let b = builtin(Builtin::Magic(3), Options::affine()).unwrap();
        assert_eq!(ProblemEcho::of(&a), ProblemEcho::of(&b));
    }

    #[test]
    fn triangle_clutter() {
        let doc = parse_document(
            r#"{"explicit": {"d": 3, "line_classes": [[[1,2],[2,3],[1,3]]]}, "mode": "affine"}"#,
        )
        .unwrap();
        // all three pair sums equal 1 forces every entry to 1/2
        assert_eq!(from_config(&doc).unwrap_err(), Error::NoStrongLabelling(0, 1));
    }

    #[test]
    fn empty_line_reports_location() {
        let doc = parse_document(r#"{"explicit": {"d": 2, "line_classes": [[[1,2],[]]]}}"#).unwrap();
        match from_config(&doc) {
            Err(Error::Schema { location, .. }) => assert_eq!(location, "line_classes[0][1]"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_index_rejected() {
        let doc = parse_document(r#"{"explicit": {"d": 2, "line_classes": [[[0,1]]]}}"#).unwrap();
        assert!(matches!(from_config(&doc), Err(Error::Schema { .. })));
    }

    #[test]
    fn unknown_field_is_schema_error() {
        let e = parse_document(r#"{"builtin": {"family": "magic", "params": [3]}, "colour": 1}"#).unwrap_err();
        assert!(matches!(e, Error::Schema { .. }));
        assert_eq!(exit_code(&e), 1);
    }

    #[test]
    fn forms_with_unequal_weight_are_flagged() {
        let doc = parse_document(
            r#"{"explicit": {"d": 3, "forms": [
                {"coefficients": ["1", "1", "0"]},
                {"coefficients": ["0", "1/2", "1"]}
            ]}, "mode": "affine", "distinctness": "none"}"#,
        )
        .unwrap();
        let p = from_config(&doc).unwrap();
        assert!(!p.constant_weight());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            exit_code(&Error::TooLarge {
                what: "x",
                needed: 2,
                limit: 1
            }),
            2
        );
        assert_eq!(exit_code(&Error::NoConsistentPeriod { bound: 4 }), 3);
    }
}
