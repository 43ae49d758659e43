//! `diptych`: classify matrix pairs, build long rectangles, weight tables,
//! projection schedules and the serial Pfaffian chain, and verify them.

use clap::{Args, Parser, Subcommand, ValueEnum};
use diptych::classify::{build_pair, classify_descent, enumerate_pairs, verify_rules, Classification, DiptychParams, MatrixPair, Variant};
use diptych::diptych::Diptych;
use diptych::error::Error;
use diptych::monomial::Gen;
use diptych::projseq::schedule;
use diptych::rectangle::{cone_facets, rectangle_ab, rectangle_lm, LongRectangle};
use diptych::sweep::{check_tuple, sweep, SweepBounds, TupleReport};
use diptych::unproject::{
    claim_divisibility_check, homogeneity_check, section_check, serial_chain, serial_chain_top_down, EquationStore,
};
use diptych::weights::{scissors_export, weight_table};
use serde::Serialize;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_VALIDATION: u8 = 2;
const EXIT_OUT_OF_SCOPE: u8 = 3;
const EXIT_VERIFICATION: u8 = 4;

#[derive(Parser)]
#[command(name = "diptych", version, about = "Toric diptychs: classification, rectangles, weights and Pfaffian chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build, check or enumerate partner matrix pairs.
    Classify(ClassifyArgs),
    /// Run the serial unprojection chain.
    Chain(ChainArgs),
    /// Impartial torus weights of every generator.
    Weights(WeightsArgs),
    /// The projection sequence of V_AB and its h-sequence.
    Schedule(ParamArgs),
    /// The two long rectangles of a diptych or of an explicit pair.
    Rectangle(RectangleArgs),
    /// Run every per-tuple check, for one tuple or a whole grid.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Args, Clone)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Shorthand for `--format csv`.
    #[arg(long, conflicts_with = "format")]
    csv: bool,
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

impl OutputArgs {
    fn format(&self) -> Format {
        if self.csv {
            Format::Csv
        } else {
            self.format
        }
    }
}

#[derive(Args, Clone)]
struct ParamArgs {
    #[arg(long)]
    d: i64,
    #[arg(long)]
    e: i64,
    #[arg(long)]
    k: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long, required_unless_present_any = ["enumerate", "pair"])]
    d: Option<i64>,
    #[arg(long, required_unless_present_any = ["enumerate", "pair"])]
    e: Option<i64>,
    #[arg(long, required_unless_present_any = ["enumerate", "pair"])]
    k: Option<usize>,
    /// first, second, swapped-first or swapped-second.
    #[arg(long, default_value = "first")]
    variant: String,
    /// Classify an explicit pair `r,a,b,s,g,h` by descent.
    #[arg(long, value_parser = parse_pair, conflicts_with = "enumerate")]
    pair: Option<MatrixPair>,
    /// List every rule-abiding pair with entries up to `--bound`.
    #[arg(long)]
    enumerate: bool,
    #[arg(long, default_value_t = 10)]
    bound: i64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ChainArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Run from the top of V_LM down instead of from the bottom up.
    #[arg(long)]
    top_down: bool,
    /// Check homogeneity and both sections; exit nonzero on failure.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct WeightsArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Emit the Padded Cell scissors points instead of the weights.
    #[arg(long)]
    scissors: bool,
}

#[derive(Args)]
struct RectangleArgs {
    #[arg(long, required_unless_present = "pair")]
    d: Option<i64>,
    #[arg(long, required_unless_present = "pair")]
    e: Option<i64>,
    #[arg(long, required_unless_present = "pair")]
    k: Option<usize>,
    /// Use an explicit pair `r,a,b,s,g,h` instead of `(d, e, k)`.
    #[arg(long, value_parser = parse_pair)]
    pair: Option<MatrixPair>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, required_unless_present = "sweep")]
    d: Option<i64>,
    #[arg(long, required_unless_present = "sweep")]
    e: Option<i64>,
    #[arg(long, required_unless_present = "sweep")]
    k: Option<usize>,
    /// Check every main-case tuple with `2 ≤ d ≤ dmax`, `2 ≤ e ≤ emax`, `k ≤ kmax`.
    #[arg(long)]
    sweep: bool,
    #[arg(long, default_value_t = 5)]
    dmax: i64,
    #[arg(long, default_value_t = 5)]
    emax: i64,
    #[arg(long, default_value_t = 6)]
    kmax: usize,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    jobs: Option<usize>,
    /// Also brute-force the divisibility claim at every step up to this exponent.
    #[arg(long)]
    claim_bound: Option<u32>,
    #[command(flatten)]
    out: OutputArgs,
}

/// A failed command: the exit code and the message for standard error.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Domain(_) | Error::Precondition(_) => EXIT_VALIDATION,
            Error::OutOfScope(_) => EXIT_OUT_OF_SCOPE,
            Error::Invariant(_) | Error::Structural(_) => EXIT_VERIFICATION,
        };
        Failure(code, e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn io_failure(e: impl std::fmt::Display) -> Failure {
    Failure(1, format!("i/o error: {e}"))
}

fn emit(out: &OutputArgs, body: &str) -> CmdResult {
    match &out.output {
        Some(path) => std::fs::write(path, body).map_err(io_failure),
        None => std::io::stdout().write_all(body.as_bytes()).map_err(io_failure),
    }
}

fn to_json<T: Serialize + ?Sized>(v: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(v).map_err(io_failure)?;
    s.push('\n');
    Ok(s)
}

fn to_csv<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(io_failure)?;
    }
    String::from_utf8(w.into_inner().map_err(io_failure)?).map_err(io_failure)
}

fn no_csv(what: &str) -> Failure {
    Failure(EXIT_VALIDATION, format!("{what} has no CSV form; use --format json or text"))
}

fn parse_pair(text: &str) -> Result<MatrixPair, String> {
    let v: Vec<i64> = text.split(',').map(|t| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"))).collect::<Result<_, _>>()?;
    match v[..] {
        [r, a, b, s, g, h] => Ok(MatrixPair::from_i64(r, a, b, s, g, h)),
        _ => Err(format!("expected six entries r,a,b,s,g,h, got {}", v.len())),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

// classify

#[derive(Serialize)]
struct ClassifyReport {
    params: DiptychParams,
    pair: MatrixPair,
    recovered: Classification,
}

#[derive(Serialize)]
struct EnumerateRow {
    r: String,
    a: String,
    b: String,
    s: String,
    g: String,
    h: String,
    kind: &'static str,
    d: i64,
    e: i64,
    k: Option<usize>,
    variant: Option<Variant>,
}

fn enumerate_row(pair: &MatrixPair, class: &Classification) -> EnumerateRow {
    let (kind, d, e, k, variant) = match class {
        Classification::Regular { params, .. } => ("regular", params.d, params.e, Some(params.k), Some(params.variant)),
        Classification::Exceptional { d, e, .. } => ("exceptional", *d, *e, None, None),
    };
    EnumerateRow {
        r: pair.r.to_string(),
        a: pair.a.to_string(),
        b: pair.b.to_string(),
        s: pair.s.to_string(),
        g: pair.g.to_string(),
        h: pair.h.to_string(),
        kind,
        d,
        e,
        k,
        variant,
    }
}

fn describe(class: &Classification) -> String {
    match class {
        Classification::Regular { params, descent } => format!(
            "d = {}, e = {}, k = {}, {:?} factorization, descent of length {}",
            params.d, params.e, params.k, params.variant, descent.trace.len() - 1
        ),
        Classification::Exceptional { branch, d, e } => format!("exceptional {branch:?} with d = {d}, e = {e}"),
    }
}

fn cmd_classify(a: &ClassifyArgs) -> CmdResult {
    if a.enumerate {
        if a.bound < 1 {
            return Err(Failure(EXIT_VALIDATION, format!("--bound must be at least 1, got {}", a.bound)));
        }
        let pairs = enumerate_pairs(a.bound);
        let body = match a.out.format() {
            Format::Json => to_json(&pairs.iter().map(|(p, c)| enumerate_row(p, c)).collect::<Vec<_>>())?,
            Format::Csv => to_csv(pairs.iter().map(|(p, c)| enumerate_row(p, c)))?,
            Format::Text => {
                let mut s = String::new();
                for (p, c) in &pairs {
                    let _ = writeln!(s, "{p}  {}", describe(c));
                }
                let _ = writeln!(s, "{} pairs with entries at most {}", pairs.len(), a.bound);
                s
            }
        };
        return emit(&a.out, &body);
    }
    if let Some(pair) = &a.pair {
        let pair = pair.clone();
        let class = classify_descent(&pair)?;
        let body = match a.out.format() {
            Format::Json => to_json(&class)?,
            Format::Csv => to_csv([enumerate_row(&pair, &class)])?,
            Format::Text => format!("{pair}\n{}\n", describe(&class)),
        };
        return emit(&a.out, &body);
    }
    let variant: Variant = a.variant.parse()?;
    let (d, e, k) = (a.d.expect("required"), a.e.expect("required"), a.k.expect("required"));
    let params = DiptychParams::new(d, e, k, variant)?;
    let pair = build_pair(&params)?;
    let rules = verify_rules(&pair).map_err(|v| Failure(EXIT_VERIFICATION, format!("built pair {pair} breaks a rule: {v}")))?;
    let recovered = classify_descent(&pair)?;
    let report = ClassifyReport { params: params.clone(), pair: pair.clone(), recovered };
    let body = match a.out.format() {
        Format::Json => to_json(&report)?,
        Format::Csv => to_csv([enumerate_row(&pair, &report.recovered)])?,
        Format::Text => {
            let mut s = format!("{pair}\n");
            let _ = writeln!(s, "main case: {}", yes_no(params.main_case));
            if let Some(x) = params.excluded {
                let _ = writeln!(s, "excluded: {x:?}");
            }
            let _ = writeln!(s, "rules: d = {}, e = {}", rules.d, rules.e);
            let _ = writeln!(s, "descent: {}", describe(&report.recovered));
            s
        }
    };
    emit(&a.out, &body)
}

// chain

fn render_store(store: &EquationStore) -> String {
    let mut s = format!("(d, e, k) = ({}, {}, {}), l = {}\n\ninitial complete intersection:\n", store.d, store.e, store.k, store.l);
    for t in store.equations.iter().take(2) {
        let _ = writeln!(s, "  {t:#}");
    }
    for (n, pg) in store.log.iter().enumerate() {
        let _ = write!(s, "\npentagram {}: {pg}", n + 1);
    }
    let _ = writeln!(s, "\n{} equations", store.equations.len());
    s
}

fn cmd_chain(a: &ChainArgs) -> CmdResult {
    let p = &a.params;
    let dip = Diptych::new(p.d, p.e, p.k)?;
    let store = if a.top_down { serial_chain_top_down(&dip)? } else { serial_chain(&dip)? };
    let body = match p.out.format() {
        Format::Json => to_json(&store)?,
        Format::Text => render_store(&store),
        Format::Csv => return Err(no_csv("the equation store")),
    };
    emit(&p.out, &body)?;
    if a.verify {
        let table = weight_table(&dip)?;
        let homogeneous = homogeneity_check(&store, &table);
        let sections = section_check(&store, &dip)?;
        let mut msg = String::new();
        if !homogeneous {
            msg.push_str("an equation is not torus-homogeneous\n");
        }
        for f in &sections {
            let _ = writeln!(msg, "section {} fails for {}", f.section, f.equation);
        }
        if !msg.is_empty() {
            return Err(Failure(EXIT_VERIFICATION, msg.trim_end().to_string()));
        }
        eprintln!("verified: {} equations homogeneous, both sections agree", store.equations.len());
    }
    Ok(())
}

// weights

#[derive(Serialize)]
struct WeightRow {
    generator: Gen,
    #[serde(rename = "L")]
    l: String,
    #[serde(rename = "M")]
    m: String,
    #[serde(rename = "A")]
    a: String,
    #[serde(rename = "B")]
    b: String,
}

#[derive(Serialize)]
struct ScissorsCsvRow {
    generator: Gen,
    #[serde(rename = "L_units")]
    l_units: String,
    #[serde(rename = "M_units")]
    m_units: String,
}

/// Generators in display order: `x_0..x_k` then `y_0..y_l`.
fn display_order(dip: &Diptych) -> Vec<Gen> {
    dip.side_generators()
}

fn cmd_weights(a: &WeightsArgs) -> CmdResult {
    let p = &a.params;
    let dip = Diptych::new(p.d, p.e, p.k)?;
    let table = weight_table(&dip)?;
    let body = if a.scissors {
        let rows = scissors_export(&table, &dip)?;
        match p.out.format() {
            Format::Json => to_json(&rows)?,
            Format::Csv => to_csv(rows.iter().map(|r| ScissorsCsvRow {
                generator: r.generator,
                l_units: r.l_units.to_string(),
                m_units: r.m_units.to_string(),
            }))?,
            Format::Text => {
                let mut s = format!("scissors points in units of 1/{} and 1/{}\n", dip.cycle_tag(0), dip.cycle_tag(1));
                for r in &rows {
                    let _ = writeln!(s, "{:>6}  {:>8} {:>8}", r.generator.to_string(), r.l_units, r.m_units);
                }
                s
            }
        }
    } else {
        let rows = display_order(&dip).into_iter().map(|g| {
            let w = table.weight(g);
            WeightRow { generator: g, l: w.0[0].to_string(), m: w.0[1].to_string(), a: w.0[2].to_string(), b: w.0[3].to_string() }
        });
        match p.out.format() {
            Format::Json => to_json(&table)?,
            Format::Csv => to_csv(rows)?,
            Format::Text => {
                let mut s = format!("{:>6}  {:>10} {:>10} {:>10} {:>10}\n", "", "L", "M", "A", "B");
                for r in rows {
                    let _ = writeln!(s, "{:>6}  {:>10} {:>10} {:>10} {:>10}", r.generator.to_string(), r.l, r.m, r.a, r.b);
                }
                s
            }
        }
    };
    emit(&p.out, &body)
}

// schedule

#[derive(Serialize)]
struct ScheduleRow {
    nu: usize,
    bar_i: usize,
    bar_j: usize,
    s: Gen,
    alpha: i64,
    beta: i64,
    a: String,
    b: String,
    h: String,
}

fn cmd_schedule(p: &ParamArgs) -> CmdResult {
    let dip = Diptych::new(p.d, p.e, p.k)?;
    let sheet = schedule(&dip)?;
    let rows = sheet.steps.iter().map(|st| ScheduleRow {
        nu: st.nu,
        bar_i: st.bar_i,
        bar_j: st.bar_j,
        s: st.s,
        alpha: st.alpha,
        beta: st.beta,
        a: st.a_ann.to_string(),
        b: st.b_ann.to_string(),
        h: st.h.to_string(),
    });
    let body = match p.out.format() {
        Format::Json => to_json(&sheet)?,
        Format::Csv => to_csv(rows)?,
        Format::Text => {
            let mut s = format!("{:>3}  {:>10}  {:>6}  {:>10} {:>10}  {:>10}\n", "nu", "bar", "s", "A_nu", "B_nu", "h");
            for r in rows {
                let bar = format!("x_{} y_{}", r.bar_i, r.bar_j);
                let _ = writeln!(s, "{:>3}  {bar:>10}  {:>6}  {:>10} {:>10}  {:>10}", r.nu, r.s.to_string(), r.a, r.b, r.h);
            }
            let hs: Vec<String> = sheet.h_sequence().iter().map(|m| m.to_string()).collect();
            let _ = writeln!(s, "h: [{}]", hs.join(", "));
            let order: Vec<String> = sheet.elimination_order().iter().map(|g| g.to_string()).collect();
            let _ = writeln!(s, "elimination order from the top: {}", order.join(", "));
            s
        }
    };
    emit(&p.out, &body)
}

// rectangle

#[derive(Serialize)]
struct RectangleReport<'a> {
    pair: &'a MatrixPair,
    ab: &'a LongRectangle,
    lm: &'a LongRectangle,
    ab_zero_check: bool,
    lm_zero_check: bool,
    facets: diptych::rectangle::Facets,
}

fn cmd_rectangle(a: &RectangleArgs) -> CmdResult {
    let (pair, ab, lm) = match &a.pair {
        Some(pair) => {
            let pair = pair.clone();
            verify_rules(&pair).map_err(|v| Failure(EXIT_VALIDATION, format!("{pair} is not a partner pair: {v}")))?;
            let (ab, lm) = (rectangle_ab(&pair)?, rectangle_lm(&pair)?);
            (pair, ab, lm)
        }
        None => {
            let dip = Diptych::new(a.d.expect("required"), a.e.expect("required"), a.k.expect("required"))?;
            (dip.pair, dip.ab, dip.lm)
        }
    };
    let body = match a.out.format() {
        Format::Json => to_json(&RectangleReport {
            pair: &pair,
            ab: &ab,
            lm: &lm,
            ab_zero_check: ab.zero_check(),
            lm_zero_check: lm.zero_check(),
            facets: cone_facets(&pair),
        })?,
        Format::Text => {
            let mut s = format!("{pair}\n\n{}\nzero word {} vanishes: {}\n", ab.render(), ab.zero_word(), yes_no(ab.zero_check()));
            let _ = write!(s, "\n{}\nzero word {} vanishes: {}\n", lm.render(), lm.zero_word(), yes_no(lm.zero_check()));
            let _ = writeln!(s, "\nGorenstein: {}", yes_no(cone_facets(&pair).gorenstein));
            s
        }
        Format::Csv => return Err(no_csv("a rectangle")),
    };
    emit(&a.out, &body)
}

// verify

#[derive(Serialize)]
struct VerifyRow {
    #[serde(flatten)]
    report: TupleReport,
    claim_checked: Option<usize>,
    claim_counterexample: Option<String>,
    passed: bool,
}

fn claim_for(d: i64, e: i64, k: usize, bound: u32) -> Result<usize, String> {
    let dip = Diptych::new(d, e, k).map_err(|e| e.to_string())?;
    let sheet = schedule(&dip).map_err(|e| e.to_string())?;
    let table = weight_table(&dip).map_err(|e| e.to_string())?;
    let mut total = 0;
    for nu in 0..sheet.steps.len() {
        total += claim_divisibility_check(&table, &sheet, nu, bound).map_err(|m| format!("step {nu}: {m} is not divisible by h"))?;
    }
    Ok(total)
}

fn verify_row(report: TupleReport, claim_bound: Option<u32>) -> VerifyRow {
    let claim = claim_bound.filter(|_| report.error.is_none()).map(|b| claim_for(report.d, report.e, report.k, b));
    let (claim_checked, claim_counterexample) = match claim {
        Some(Ok(n)) => (Some(n), None),
        Some(Err(m)) => (None, Some(m)),
        None => (None, None),
    };
    let passed = report.passed() && claim_counterexample.is_none();
    VerifyRow { report, claim_checked, claim_counterexample, passed }
}

fn cmd_verify(a: &VerifyArgs) -> CmdResult {
    let rows: Vec<VerifyRow> = if a.sweep {
        if a.dmax < 2 || a.emax < 2 {
            return Err(Failure(EXIT_VALIDATION, "--dmax and --emax must be at least 2".into()));
        }
        let bounds = SweepBounds::new(a.dmax, a.emax, a.kmax);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(a.jobs.unwrap_or(0)).build().map_err(io_failure)?;
        pool.install(|| {
            use rayon::prelude::*;
            sweep(&bounds).into_par_iter().map(|r| verify_row(r, a.claim_bound)).collect()
        })
    } else {
        let (d, e, k) = (a.d.expect("required"), a.e.expect("required"), a.k.expect("required"));
        Diptych::new(d, e, k)?;
        vec![verify_row(check_tuple(d, e, k), a.claim_bound)]
    };
    let failed = rows.iter().filter(|r| !r.passed).count();
    let body = match a.out.format() {
        Format::Json => to_json(&rows)?,
        Format::Csv => {
            let flat = rows.iter().map(|r| {
                let t = &r.report;
                (t.d, t.e, t.k, t.l, t.equations, t.schedule, t.homogeneous, t.section_failures, t.top_down_agrees, t.gorenstein, t.weights_monotone, t.padded_cell, t.elimination_monotone, r.passed)
            });
            let header = "d,e,k,l,equations,schedule,homogeneous,section_failures,top_down_agrees,gorenstein,weights_monotone,padded_cell,elimination_monotone,passed\n";
            format!("{header}{}", to_csv(flat)?)
        }
        Format::Text => {
            let mut s = String::new();
            for r in &rows {
                let t = &r.report;
                let status = if r.passed { "ok" } else { "FAIL" };
                let _ = write!(s, "({}, {}, {})  l = {:<3} {:>4} equations  {status}", t.d, t.e, t.k, t.l, t.equations);
                if let Some(n) = r.claim_checked {
                    let _ = write!(s, "  claim: {n} monomials");
                }
                if let Some(err) = &t.error {
                    let _ = write!(s, "  {err}");
                }
                if let Some(c) = &r.claim_counterexample {
                    let _ = write!(s, "  claim: {c}");
                }
                s.push('\n');
            }
            let _ = writeln!(s, "{} of {} tuples passed", rows.len() - failed, rows.len());
            s
        }
    };
    emit(&a.out, &body)?;
    if failed > 0 {
        return Err(Failure(EXIT_VERIFICATION, format!("{failed} tuples failed verification")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Classify(a) => cmd_classify(a),
        Command::Chain(a) => cmd_chain(a),
        Command::Weights(a) => cmd_weights(a),
        Command::Schedule(a) => cmd_schedule(a),
        Command::Rectangle(a) => cmd_rectangle(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
