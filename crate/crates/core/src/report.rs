//! Serializable reports and the stored-trace round trip used by `verify`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::bounds::{self, Audit};
use crate::error::{Error, Result};
use crate::expansion::{convergents_of, CompleteQuotient, ConvergentRow, Expansion};
use crate::padic::{LRational, PartialQuotient, Prime};
use crate::parse::{parse_rational, parse_surd};
use crate::quadratic_cf::surd_step;
use crate::rational_cf::step_rational;

pub const SCHEMA: &str = "ruban-report/1";

pub fn show_list(qs: &[PartialQuotient]) -> String {
    let items: Vec<String> = qs.iter().map(|a| a.to_string()).collect();
    format!("[{}]", items.join(", "))
}

pub fn strings(qs: &[PartialQuotient]) -> Vec<String> {
    qs.iter().map(|a| a.to_string()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub spec: String,
    pub prime: String,
    pub branch: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TraceKind {
    Rational,
    /// Surd complete quotients after stripping common powers of ℓ.
    Stripped,
    /// Surd complete quotients from the plain recurrence.
    Raw,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowRecord {
    pub n: usize,
    pub p: String,
    pub q: String,
    pub s: u64,
}

/// An expansion prefix in a form that can be checked independently.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub kind: TraceKind,
    pub prime: String,
    pub branch: Option<String>,
    pub terminated: bool,
    pub quotients: Vec<String>,
    pub complete: Vec<String>,
    pub convergents: Vec<RowRecord>,
}

fn complete_text(x: &CompleteQuotient) -> String {
    match x {
        CompleteQuotient::Rational(q) => q.to_string(),
        CompleteQuotient::Surd(s) => s.canonical(),
    }
}

impl TraceRecord {
    pub fn from_expansion(exp: &Expansion, kind: TraceKind) -> Self {
        let branch = exp.complete.iter().find_map(|c| match c {
            CompleteQuotient::Surd(s) => Some(s.branch().to_string()),
            CompleteQuotient::Rational(_) => None,
        });
        TraceRecord {
            kind,
            prime: exp.prime.to_string(),
            branch,
            terminated: exp.terminated,
            quotients: strings(&exp.quotients),
            complete: exp.complete.iter().map(complete_text).collect(),
            convergents: exp
                .convergents
                .iter()
                .map(|r| RowRecord {
                    n: r.n,
                    p: r.p.to_string(),
                    q: r.q.to_string(),
                    s: r.s,
                })
                .collect(),
        }
    }

    pub fn to_expansion(&self) -> Result<Expansion> {
        let prime: Prime = self.prime.parse()?;
        let quotients = self
            .quotients
            .iter()
            .map(|s| PartialQuotient::parse(s, &prime))
            .collect::<Result<Vec<_>>>()?;
        let complete = self
            .complete
            .iter()
            .map(|s| self.parse_complete(s, &prime))
            .collect::<Result<Vec<_>>>()?;
        let convergents = self
            .convergents
            .iter()
            .map(|r| {
                let int = |x: &str| {
                    x.parse::<BigInt>()
                        .map_err(|_| Error::Parse(format!("bad integer {x:?} in trace")))
                };
                Ok(ConvergentRow {
                    n: r.n,
                    p: int(&r.p)?,
                    q: int(&r.q)?,
                    s: r.s,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let expected_complete = quotients.len() + usize::from(!self.terminated);
        if complete.is_empty()
            || complete.len() != expected_complete
            || convergents.len() != quotients.len() + 1
        {
            return Err(Error::Parse("trace lengths do not match".into()));
        }
        Ok(Expansion {
            prime,
            quotients,
            complete,
            convergents,
            terminated: self.terminated,
        })
    }

    fn parse_complete(&self, s: &str, prime: &Prime) -> Result<CompleteQuotient> {
        match self.kind {
            TraceKind::Rational => Ok(CompleteQuotient::Rational(LRational::from_rational(
                parse_rational(s)?,
                prime,
            ))),
            TraceKind::Stripped | TraceKind::Raw => {
                let branch: BigInt = self
                    .branch
                    .as_deref()
                    .ok_or_else(|| Error::Parse("surd trace without a branch".into()))?
                    .parse()
                    .map_err(|_| Error::Parse("bad branch in trace".into()))?;
                Ok(CompleteQuotient::Surd(parse_surd(s)?.build(prime, &branch)?))
            }
        }
    }
}

/// Whether every stored step is what the expansion algorithm produces.
pub fn trace_consistent(exp: &Expansion, kind: TraceKind) -> bool {
    if convergents_of(&exp.quotients, &exp.prime) != exp.convergents {
        return false;
    }
    for (n, a) in exp.quotients.iter().enumerate() {
        let next = exp.complete.get(n + 1);
        let ok = match (&exp.complete[n], kind) {
            (CompleteQuotient::Rational(x), TraceKind::Rational) => {
                let (b, y) = step_rational(x);
                b == *a
                    && match (y, next) {
                        (Some(y), Some(CompleteQuotient::Rational(z))) => y == *z,
                        (None, None) => true,
                        _ => false,
                    }
            }
            (CompleteQuotient::Surd(x), TraceKind::Stripped | TraceKind::Raw) => {
                let (b, y) = surd_step(x);
                let y = if kind == TraceKind::Stripped { y.stripped() } else { y };
                b == *a
                    && match next {
                        Some(CompleteQuotient::Surd(z)) => y == *z,
                        _ => false,
                    }
            }
            _ => false,
        };
        if !ok {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub consistent: bool,
    pub audit: Audit,
    pub pass: bool,
}

pub fn verify_trace(rec: &TraceRecord, bits: u32) -> Result<VerifySummary> {
    let exp = rec.to_expansion()?;
    let consistent = trace_consistent(&exp, rec.kind);
    let audit = bounds::audit(&exp, rec.kind == TraceKind::Raw, bits);
    let pass = consistent && audit.all_pass();
    Ok(VerifySummary {
        consistent,
        audit,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub index: usize,
    pub value: String,
    pub canonical: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub name: String,
    pub value: String,
}

/// Output of `expand` and `classify`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionReport {
    pub schema: String,
    pub command: String,
    pub input: InputEcho,
    pub kind: String,
    pub value: String,
    pub outcome: String,
    pub quotients: Vec<String>,
    pub preperiod: Option<Vec<String>>,
    pub period: Option<Vec<String>>,
    pub witness: Option<WitnessRecord>,
    pub bound: BoundRecord,
    pub steps_used: u64,
    pub trace: Option<TraceRecord>,
    pub verification: Option<VerifySummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FloorReport {
    pub schema: String,
    pub input: InputEcho,
    pub floor: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicSurdRecord {
    pub surd: String,
    pub canonical: String,
    pub period: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PurePeriodicRecord {
    pub schema: String,
    pub ordinate: String,
    pub prime: String,
    pub branch: String,
    pub candidates: usize,
    pub filtered: Vec<String>,
    pub confirmed: Vec<PeriodicSurdRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellRecord {
    pub h: u32,
    pub t: String,
    pub u: String,
    pub halved: Option<(String, String)>,
    pub surd: String,
    pub quotient: String,
    pub positive_embedding: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellLevelRecord {
    pub h: u32,
    pub solutions: Vec<PellRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellTableRecord {
    pub schema: String,
    pub ordinate: String,
    pub prime: String,
    pub levels: Vec<PellLevelRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRowRecord {
    pub prime: String,
    pub predicted: Option<String>,
    pub results: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub schema: String,
    pub spec: String,
    pub l_max: u64,
    pub prediction: Option<String>,
    pub rows: Vec<ScanRowRecord>,
}
