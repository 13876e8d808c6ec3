//! The `ruban` command line.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expansion::Expansion;
use crate::interval::DEFAULT_BITS;
use crate::padic::{self, padic_floor, LRational, Prime};
use crate::parse::{parse_number, NumberSpec};
use crate::pure_periodic::{determine_pure_periodic, pell_period1};
use crate::quadratic_cf::{
    classify_quadratic, scan_primes_quadratic, ClassifyOptions, QuadraticOutcome, QuadraticSurd,
};
use crate::rational_cf::{classify_rational, expand_rational, scan_primes_rational, RationalOutcome};
use crate::report::{
    self, show_list, strings, BoundRecord, ExpansionReport, FloorReport, InputEcho, PeriodicSurdRecord,
    PellLevelRecord, PellRecord, PellTableRecord, PurePeriodicRecord, ScanRecord, ScanRowRecord,
    TraceKind, TraceRecord, WitnessRecord, SCHEMA,
};

#[derive(Debug, Parser)]
#[command(name = "ruban", version, about = "Ruban l-adic continued fractions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The l-adic integral part of a number
    Floor(NumberArgs),
    /// Expansion with preperiod and period, or the prefix up to an aperiodicity witness
    Expand(NumberArgs),
    /// Finite, periodic or aperiodic, with the step at which it was decided
    Classify(NumberArgs),
    /// Purely periodic surds (b+sqrt(D))/(c*l^f) of ordinate D
    PurePeriodic(PureArgs),
    /// Classification over every prime up to a limit
    Scan(ScanArgs),
    /// Re-check a stored JSON report against every bound
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct NumberArgs {
    /// Rational p/q or surd (b+u*sqrt(D))/(c*l^f)
    #[arg(allow_hyphen_values = true)]
    pub spec: String,
    #[arg(short = 'l', long = "prime")]
    pub prime: String,
    /// Residue class of sqrt(D / l^(2h)) mod l (mod 8 for l = 2)
    #[arg(long, allow_hyphen_values = true)]
    pub branch: Option<String>,
    #[arg(long)]
    pub max_steps: Option<u64>,
    #[arg(long)]
    pub improved_bound: bool,
    /// Include complete quotients and convergents
    #[arg(long)]
    pub trace: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct PureArgs {
    pub ordinate: String,
    #[arg(short = 'l', long = "prime")]
    pub prime: String,
    #[arg(long, allow_hyphen_values = true)]
    pub branch: Option<String>,
    /// List the period-one expansions [t/l^h] for h up to this value instead
    #[arg(long, value_name = "H_MAX")]
    pub pell: Option<u32>,
    #[arg(long)]
    pub show_filtered: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Rational, surd or polynomial such as x^2-13
    #[arg(allow_hyphen_values = true)]
    pub spec: String,
    #[arg(long = "l-max")]
    pub l_max: u64,
    #[arg(long, allow_hyphen_values = true)]
    pub branch: Option<String>,
    #[arg(long)]
    pub improved_bound: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub report: PathBuf,
    #[arg(long)]
    pub json: bool,
}

/// Accepts the single-dash spelling `-l-max`.
pub fn normalize_args<I: IntoIterator<Item = String>>(args: I) -> Vec<String> {
    args.into_iter()
        .map(|a| {
            if a == "-l-max" {
                "--l-max".to_string()
            } else if let Some(v) = a.strip_prefix("-l-max=") {
                format!("--l-max={v}")
            } else {
                a
            }
        })
        .collect()
}

/// Parses and runs; returns the process exit code.
pub fn run<I: IntoIterator<Item = String>>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(normalize_args(args)) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Domain(format!("output: {e}"))
}

fn emit_json<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<()> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Error::Domain(e.to_string()))?;
    writeln!(out, "{s}").map_err(io)
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Floor(a) => cmd_floor(&a, out).map(|_| 0),
        Command::Expand(a) => cmd_expand(&a, false, out).map(|_| 0),
        Command::Classify(a) => cmd_expand(&a, true, out).map(|_| 0),
        Command::PurePeriodic(a) => cmd_pure_periodic(&a, out).map(|_| 0),
        Command::Scan(a) => cmd_scan(&a, out).map(|_| 0),
        Command::Verify(a) => cmd_verify(&a, out),
    }
}

fn parse_branch(s: &Option<String>) -> Result<Option<BigInt>> {
    s.as_deref()
        .map(|b| b.parse().map_err(|_| Error::Parse(format!("bad branch {b:?}"))))
        .transpose()
}

enum Number {
    Rational(LRational),
    Surd(QuadraticSurd),
}

fn number(spec: &str, prime: &Prime, branch: &Option<String>) -> Result<Number> {
    match parse_number(spec)? {
        NumberSpec::Rational(r) => Ok(Number::Rational(LRational::from_rational(r, prime))),
        NumberSpec::Surd(s) => {
            let branch = parse_branch(branch)?.ok_or_else(|| {
                let (_, unit) = padic::split_disc(&s.disc, prime);
                let valid: Vec<String> = padic::sqrt_branches(&unit, prime)
                    .iter()
                    .map(|b| b.to_string())
                    .collect();
                Error::Parse(format!(
                    "surds need --branch (choices for sqrt({}): {})",
                    s.disc,
                    if valid.is_empty() { "none".into() } else { valid.join(", ") }
                ))
            })?;
            Ok(Number::Surd(s.build(prime, &branch)?))
        }
        NumberSpec::Poly(_) => Err(Error::Parse(
            "polynomials are accepted by scan only; pass one root as a surd".into(),
        )),
    }
}

fn echo(spec: &str, prime: &Prime, branch: &Option<String>) -> InputEcho {
    InputEcho {
        spec: spec.to_string(),
        prime: prime.to_string(),
        branch: branch.clone(),
    }
}

pub fn cmd_floor(a: &NumberArgs, out: &mut dyn Write) -> Result<()> {
    let prime: Prime = a.prime.parse()?;
    let floor = match number(&a.spec, &prime, &a.branch)? {
        Number::Rational(x) => padic_floor(&x),
        Number::Surd(s) => s.floor(),
    };
    if a.json {
        emit_json(
            out,
            &FloorReport {
                schema: SCHEMA.into(),
                input: echo(&a.spec, &prime, &a.branch),
                floor: floor.to_string(),
            },
        )
    } else {
        writeln!(out, "{floor}").map_err(io)
    }
}

fn trace_lines(exp: &Expansion, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "trace:").map_err(io)?;
    for (n, alpha) in exp.complete.iter().enumerate() {
        let a = exp.quotients.get(n).map_or("-".to_string(), |a| a.to_string());
        let row = &exp.convergents[n];
        writeln!(
            out,
            "  n={n}  alpha={alpha}  a={a}  p~={}  q~={}  s={}",
            row.p, row.q, row.s
        )
        .map_err(io)?;
    }
    Ok(())
}

fn rational_report(a: &NumberArgs, x: &LRational, classify_only: bool) -> Result<(ExpansionReport, Option<Expansion>)> {
    let prime = x.prime();
    let base = |outcome: RationalOutcome, quotients, preperiod, period, bound, steps, trace| ExpansionReport {
        schema: SCHEMA.into(),
        command: if classify_only { "classify" } else { "expand" }.into(),
        input: echo(&a.spec, prime, &a.branch),
        kind: "rational".into(),
        value: x.to_string(),
        outcome: outcome.to_string(),
        quotients,
        preperiod,
        period,
        witness: None,
        bound,
        steps_used: steps,
        trace,
        verification: None,
    };
    if classify_only {
        let c = classify_rational(x)?;
        let bound = BoundRecord {
            name: "B1".into(),
            value: c.bound.to_string(),
        };
        return Ok((base(c.outcome, vec![], None, None, bound, c.decided_at, None), None));
    }
    let e = expand_rational(x)?;
    let bound = BoundRecord {
        name: "B2".into(),
        value: e.bound.to_string(),
    };
    let qs = strings(e.quotients());
    let (pre, per) = match e.outcome {
        RationalOutcome::Finite => (None, None),
        RationalOutcome::PeriodicRational => (Some(qs.clone()), Some(strings(&e.period()))),
    };
    let trace = a
        .trace
        .then(|| TraceRecord::from_expansion(&e.trace, TraceKind::Rational));
    let steps = e.trace.len() as u64;
    Ok((base(e.outcome, qs, pre, per, bound, steps, trace), Some(e.trace)))
}

fn surd_report(a: &NumberArgs, x: &QuadraticSurd, classify_only: bool) -> Result<(ExpansionReport, Option<Expansion>)> {
    let opts = ClassifyOptions {
        improved: a.improved_bound,
        max_steps: a.max_steps,
        naive_scan: false,
    };
    let c = classify_quadratic(x, opts)?;
    let bound_name = match (a.max_steps, a.improved_bound) {
        (Some(_), _) => "max-steps",
        (None, true) => "N_alpha (improved)",
        (None, false) => "N_alpha",
    };
    let mut rep = ExpansionReport {
        schema: SCHEMA.into(),
        command: if classify_only { "classify" } else { "expand" }.into(),
        input: echo(&a.spec, x.prime(), &a.branch),
        kind: "surd".into(),
        value: x.to_string(),
        outcome: String::new(),
        quotients: strings(&c.trace.quotients),
        preperiod: None,
        period: None,
        witness: None,
        bound: BoundRecord {
            name: bound_name.into(),
            value: c.bound_used.to_string(),
        },
        steps_used: c.steps_used,
        trace: None,
        verification: None,
    };
    match &c.outcome {
        QuadraticOutcome::Periodic { preperiod, period } => {
            rep.outcome = "periodic".into();
            rep.preperiod = Some(strings(preperiod));
            rep.period = Some(strings(period));
        }
        QuadraticOutcome::Aperiodic {
            witness_index,
            witness,
        } => {
            rep.outcome = "aperiodic".into();
            rep.witness = Some(WitnessRecord {
                index: *witness_index,
                value: witness.to_string(),
                canonical: witness.canonical(),
            });
        }
        QuadraticOutcome::NoRealEmbedding => rep.outcome = "no-real-embedding".into(),
    }
    if classify_only {
        rep.quotients.clear();
    }
    if a.trace {
        rep.trace = Some(TraceRecord::from_expansion(&c.trace, TraceKind::Stripped));
    }
    Ok((rep, Some(c.trace)))
}

fn outcome_line(rep: &ExpansionReport) -> String {
    let list = |v: &Option<Vec<String>>| format!("[{}]", v.clone().unwrap_or_default().join(", "));
    match rep.outcome.as_str() {
        "finite" => format!("finite: [{}]", rep.quotients.join(", ")),
        "periodic" => format!(
            "periodic: preperiod {}, period {}",
            list(&rep.preperiod),
            list(&rep.period)
        ),
        "aperiodic" => {
            let w = rep.witness.as_ref().expect("aperiodic reports carry a witness");
            format!("aperiodic; witness step {}: {}", w.index, w.value)
        }
        _ => "aperiodic; sqrt of a negative number has no real embedding".into(),
    }
}

pub fn cmd_expand(a: &NumberArgs, classify_only: bool, out: &mut dyn Write) -> Result<()> {
    let prime: Prime = a.prime.parse()?;
    let (mut rep, exp) = match number(&a.spec, &prime, &a.branch)? {
        Number::Rational(x) => rational_report(a, &x, classify_only)?,
        Number::Surd(s) => surd_report(a, &s, classify_only)?,
    };
    if let Some(t) = &rep.trace {
        rep.verification = Some(report::verify_trace(t, DEFAULT_BITS)?);
    }
    if a.json {
        return emit_json(out, &rep);
    }
    if classify_only {
        let line = match rep.outcome.as_str() {
            "finite" | "periodic" if rep.kind == "rational" => rep.outcome.clone(),
            _ => outcome_line(&rep),
        };
        writeln!(out, "{line}").map_err(io)?;
        writeln!(
            out,
            "decided at step {} (bound {} = {})",
            rep.steps_used, rep.bound.name, rep.bound.value
        )
        .map_err(io)?;
    } else {
        writeln!(out, "{}", outcome_line(&rep)).map_err(io)?;
        if rep.outcome == "aperiodic" {
            writeln!(out, "prefix: [{}]", rep.quotients.join(", ")).map_err(io)?;
        }
        writeln!(out, "bound: {} = {}", rep.bound.name, rep.bound.value).map_err(io)?;
    }
    if a.trace {
        if let Some(exp) = &exp {
            trace_lines(exp, out)?;
        }
        if let Some(v) = &rep.verification {
            writeln!(out, "bounds: {}", if v.pass { "all pass" } else { "FAILED" }).map_err(io)?;
        }
    }
    Ok(())
}

pub fn cmd_pure_periodic(a: &PureArgs, out: &mut dyn Write) -> Result<()> {
    let prime: Prime = a.prime.parse()?;
    let delta: BigInt = a
        .ordinate
        .parse()
        .map_err(|_| Error::Parse(format!("ordinate must be an integer, got {:?}", a.ordinate)))?;
    let branch = match parse_branch(&a.branch)? {
        Some(b) => b,
        None => {
            let (_, unit) = padic::split_disc(&delta, &prime);
            padic::sqrt_branches(&unit, &prime)
                .into_iter()
                .next()
                .ok_or_else(|| Error::NoLadicRoot {
                    disc: delta.to_string(),
                    prime: prime.to_string(),
                })?
        }
    };
    if let Some(h_max) = a.pell {
        return pell_table(&delta, &prime, h_max, &branch, a.json, out);
    }
    let r = determine_pure_periodic(&delta, &prime, &branch)?;
    if a.json {
        return emit_json(
            out,
            &PurePeriodicRecord {
                schema: SCHEMA.into(),
                ordinate: delta.to_string(),
                prime: prime.to_string(),
                branch: branch.to_string(),
                candidates: r.candidates,
                filtered: r.filtered.iter().map(|c| c.surd.to_string()).collect(),
                confirmed: r
                    .confirmed
                    .iter()
                    .map(|p| PeriodicSurdRecord {
                        surd: p.surd.to_string(),
                        canonical: p.surd.canonical(),
                        period: strings(&p.period),
                    })
                    .collect(),
            },
        );
    }
    if a.show_filtered {
        writeln!(
            out,
            "candidates: {} -> after filters: {} -> confirmed: {}",
            r.candidates,
            r.filtered.len(),
            r.confirmed.len()
        )
        .map_err(io)?;
        for c in &r.filtered {
            writeln!(out, "  passed filters: {}", c.surd).map_err(io)?;
        }
    }
    if r.confirmed.is_empty() {
        writeln!(out, "no purely periodic surds").map_err(io)?;
    }
    for p in &r.confirmed {
        writeln!(out, "{}: period {}", p.surd, show_list(&p.period)).map_err(io)?;
    }
    Ok(())
}

fn pell_table(delta: &BigInt, prime: &Prime, h_max: u32, branch: &BigInt, json: bool, out: &mut dyn Write) -> Result<()> {
    let levels = pell_period1(delta, prime, h_max, branch)?;
    if json {
        let rec = PellTableRecord {
            schema: SCHEMA.into(),
            ordinate: delta.to_string(),
            prime: prime.to_string(),
            levels: levels
                .iter()
                .map(|lv| PellLevelRecord {
                    h: lv.h,
                    solutions: lv
                        .solutions
                        .iter()
                        .map(|s| PellRecord {
                            h: s.h,
                            t: s.t.to_string(),
                            u: s.u.to_string(),
                            halved: s.halved().map(|(t, u)| (t.to_string(), u.to_string())),
                            surd: s.formula(delta),
                            quotient: s.quotient.to_string(),
                            positive_embedding: if s.positive_under_plus() { "+" } else { "-" }.into(),
                        })
                        .collect(),
                })
                .collect(),
        };
        return emit_json(out, &rec);
    }
    for lv in &levels {
        if lv.solutions.is_empty() {
            writeln!(out, "h={}: none", lv.h).map_err(io)?;
        }
        for s in &lv.solutions {
            let (t, u) = s.halved().unwrap_or((s.t.clone(), s.u.clone()));
            let emb = if s.positive_under_plus() { "+" } else { "-" };
            writeln!(
                out,
                "h={}: (t, u) = ({t}, {u}); {} = [{}, {}, ...]; positive at sqrt({delta}) -> {emb}sqrt({delta})",
                lv.h,
                s.formula(delta),
                s.quotient,
                s.quotient
            )
            .map_err(io)?;
        }
    }
    Ok(())
}

fn quadratic_outcome_text(o: &QuadraticOutcome) -> String {
    match o {
        QuadraticOutcome::Periodic { preperiod, period } => format!(
            "periodic: preperiod {}, period {}",
            show_list(preperiod),
            show_list(period)
        ),
        QuadraticOutcome::Aperiodic { witness_index, .. } => {
            format!("aperiodic (witness step {witness_index})")
        }
        QuadraticOutcome::NoRealEmbedding => "aperiodic (no real embedding)".into(),
    }
}

pub fn cmd_scan(a: &ScanArgs, out: &mut dyn Write) -> Result<()> {
    let spec = parse_number(&a.spec)?;
    let opts = ClassifyOptions {
        improved: a.improved_bound,
        ..ClassifyOptions::default()
    };
    let rec = match spec {
        NumberSpec::Rational(r) => scan_rational(&r, a)?,
        NumberSpec::Poly([pa, pb, pc]) => scan_quadratic(&pa, &pb, &pc, a, opts)?,
        NumberSpec::Surd(s) => {
            let den = match &s.base {
                Some(l) => BigRational::from_integer(s.c.clone()) * crate::arith::rpow(l, s.f),
                None => BigRational::from_integer(s.c.clone()),
            };
            let [pa, pb, pc] = crate::field::from_parts(&s.b, &s.u, &den, &s.disc).min_poly();
            scan_quadratic(&pa, &pb, &pc, a, opts)?
        }
    };
    if a.json {
        return emit_json(out, &rec);
    }
    if let Some(p) = &rec.prediction {
        writeln!(out, "prediction: {p}").map_err(io)?;
    }
    for row in &rec.rows {
        let thr = match &row.predicted {
            Some(p) => format!(" (predicted {p})"),
            None => String::new(),
        };
        if row.results.is_empty() {
            writeln!(out, "l={}: no root in Q_{}{thr}", row.prime, row.prime).map_err(io)?;
        }
        for (what, res) in &row.results {
            writeln!(out, "l={}: {what}: {res}{thr}", row.prime).map_err(io)?;
        }
    }
    Ok(())
}

fn scan_rational(x: &BigRational, a: &ScanArgs) -> Result<ScanRecord> {
    let scan = scan_primes_rational(x, a.l_max)?;
    let rows = scan
        .rows
        .iter()
        .map(|r| {
            let text = match r.outcome {
                RationalOutcome::Finite => format!("finite: {}", show_list(&r.quotients)),
                RationalOutcome::PeriodicRational => format!(
                    "periodic: preperiod {}, period {}",
                    show_list(&r.quotients),
                    show_list(&[padic::PartialQuotient::tail_quotient(&r.prime)])
                ),
            };
            ScanRowRecord {
                prime: r.prime.to_string(),
                predicted: scan.threshold.predicts(&r.prime).map(|o| o.to_string()),
                results: vec![(x.to_string(), text)],
            }
        })
        .collect();
    Ok(ScanRecord {
        schema: SCHEMA.into(),
        spec: a.spec.clone(),
        l_max: a.l_max,
        prediction: Some(scan.threshold.to_string()),
        rows,
    })
}

fn scan_quadratic(pa: &BigInt, pb: &BigInt, pc: &BigInt, a: &ScanArgs, opts: ClassifyOptions) -> Result<ScanRecord> {
    let rows = scan_primes_quadratic(pa, pb, pc, a.l_max, opts)?;
    Ok(ScanRecord {
        schema: SCHEMA.into(),
        spec: a.spec.clone(),
        l_max: a.l_max,
        prediction: Some(
            "both roots aperiodic whenever l does not divide A, l > disc/4A and l > C".into(),
        ),
        rows: rows
            .iter()
            .map(|r| ScanRowRecord {
                prime: r.prime.to_string(),
                predicted: r.threshold.then(|| "aperiodic".to_string()),
                results: r
                    .roots
                    .iter()
                    .map(|(s, o)| (format!("{s} [branch {}]", s.branch()), quadratic_outcome_text(o)))
                    .collect(),
            })
            .collect(),
    })
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let text = std::fs::read_to_string(&a.report)
        .map_err(|e| Error::Parse(format!("{}: {e}", a.report.display())))?;
    let rep: ExpansionReport =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("schema mismatch: {e}")))?;
    if rep.schema != SCHEMA {
        return Err(Error::Parse(format!("schema mismatch: {}", rep.schema)));
    }
    let trace = rep
        .trace
        .as_ref()
        .ok_or_else(|| Error::Parse("the report carries no trace; rerun with --trace".into()))?;
    let v = match report::verify_trace(trace, DEFAULT_BITS) {
        Ok(v) => v,
        Err(Error::InvariantBreach(m)) => return Err(Error::InvariantBreach(m)),
        Err(e) => {
            writeln!(out, "verify: FAIL ({e})").map_err(io)?;
            return Ok(1);
        }
    };
    if a.json {
        emit_json(out, &v)?;
    } else {
        let yn = |b: bool| if b { "pass" } else { "FAIL" };
        writeln!(out, "steps consistent: {}", yn(v.consistent)).map_err(io)?;
        writeln!(out, "q_n bound: {}", yn(v.audit.qn_bound)).map_err(io)?;
        writeln!(out, "height bounds: {}", yn(v.audit.height_bounds)).map_err(io)?;
        match v.audit.growth_bounds {
            Some(g) => writeln!(out, "growth bounds: {}", yn(g)).map_err(io)?,
            None => writeln!(out, "growth bounds: n/a").map_err(io)?,
        }
        writeln!(out, "l-adic approximation: {}", yn(v.audit.ladic_approx)).map_err(io)?;
        writeln!(out, "verify: {}", if v.pass { "PASS" } else { "FAIL" }).map_err(io)?;
    }
    Ok(if v.pass { 0 } else { 1 })
}
