//! Ruban expansions of rational numbers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, rpow};
use crate::error::{Error, Result};
use crate::expansion::{convergents_of, CompleteQuotient, Expansion};
use crate::padic::{padic_floor, LRational, PartialQuotient, Prime};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum RationalOutcome {
    Finite,
    PeriodicRational,
}

impl std::fmt::Display for RationalOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RationalOutcome::Finite => write!(f, "finite"),
            RationalOutcome::PeriodicRational => write!(f, "periodic"),
        }
    }
}

/// One step: `a = ⌊x⌋_ℓ` and `1/(x - a)`, or `None` when `x = a`.
pub fn step_rational(x: &LRational) -> (PartialQuotient, Option<LRational>) {
    let a = padic_floor(x);
    let y = x.sub_quotient(&a);
    if y.is_zero() {
        (a, None)
    } else {
        (a, Some(y.recip().expect("nonzero")))
    }
}

/// `max(⌈log b / log ℓ⌉, 2)` for the reduced denominator `b`.
pub fn bound_b1(x: &LRational) -> u64 {
    (arith::ceil_log(x.denom(), x.prime().value()) as u64).max(2)
}

/// `32 ℓ H(x)²`.
pub fn bound_b2(x: &LRational) -> BigInt {
    let h = x.height();
    BigInt::from(32) * x.prime().value() * &h * &h
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalClassification {
    pub outcome: RationalOutcome,
    /// Index of the complete quotient at which the decision was made.
    pub decided_at: u64,
    pub bound: u64,
}

/// Finite or periodic, deciding within `B₁` steps.
///
/// The complete quotients `α_0..=α_{B₁}` are inspected; a first negative one
/// can sit exactly at index `B₁`.
pub fn classify_rational(x: &LRational) -> Result<RationalClassification> {
    let bound = bound_b1(x);
    let mut cur = x.clone();
    for i in 0..=bound {
        if cur.is_negative() {
            return Ok(RationalClassification {
                outcome: RationalOutcome::PeriodicRational,
                decided_at: i,
                bound,
            });
        }
        match step_rational(&cur) {
            (_, None) => {
                return Ok(RationalClassification {
                    outcome: RationalOutcome::Finite,
                    decided_at: i,
                    bound,
                })
            }
            (_, Some(next)) => cur = next,
        }
    }
    Err(Error::InvariantBreach(format!(
        "{x}: no decision within {bound} steps over Q_{}",
        x.prime()
    )))
}

/// Full expansion: the trace up to termination or up to the complete quotient `-1/ℓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalExpansion {
    pub input: LRational,
    pub outcome: RationalOutcome,
    pub preperiod_len: usize,
    pub bound: BigInt,
    pub trace: Expansion,
}

impl RationalExpansion {
    pub fn prime(&self) -> &Prime {
        self.input.prime()
    }

    /// The emitted quotients (the whole expansion when finite, else the preperiod).
    pub fn quotients(&self) -> &[PartialQuotient] {
        &self.trace.quotients
    }

    pub fn period(&self) -> Vec<PartialQuotient> {
        match self.outcome {
            RationalOutcome::Finite => Vec::new(),
            RationalOutcome::PeriodicRational => {
                vec![PartialQuotient::tail_quotient(self.prime())]
            }
        }
    }
}

fn minus_inverse_prime(prime: &Prime) -> BigRational {
    -BigRational::new(BigInt::one(), prime.value().clone())
}

/// Expands `x`, stopping on termination or at the complete quotient `-1/ℓ`,
/// within `32ℓH(x)² + 1` iterations.
pub fn expand_rational(x: &LRational) -> Result<RationalExpansion> {
    let prime = x.prime().clone();
    let bound = bound_b2(x);
    let tail = minus_inverse_prime(&prime);
    let (mut trace, mut state) = Expansion::start(CompleteQuotient::Rational(x.clone()), &prime);
    let mut cur = x.clone();
    let mut i = BigInt::zero();
    let limit = &bound + 1u32;
    while i < limit {
        if *cur.value() == tail {
            let n = trace.len();
            return Ok(RationalExpansion {
                input: x.clone(),
                outcome: RationalOutcome::PeriodicRational,
                preperiod_len: n,
                bound,
                trace,
            });
        }
        let (a, next) = step_rational(&cur);
        match next {
            None => {
                trace.push(&mut state, a, None);
                let n = trace.len();
                return Ok(RationalExpansion {
                    input: x.clone(),
                    outcome: RationalOutcome::Finite,
                    preperiod_len: n,
                    bound,
                    trace,
                });
            }
            Some(y) => {
                trace.push(&mut state, a, Some(CompleteQuotient::Rational(y.clone())));
                cur = y;
            }
        }
        i += 1u32;
    }
    Err(Error::InvariantBreach(format!(
        "{x}: expansion over Q_{prime} did not settle within {bound} + 1 steps"
    )))
}

/// The first `steps` quotients of `x` (fewer if the expansion terminates),
/// running through the periodic tail when there is one.
pub fn expand_rational_steps(x: &LRational, steps: usize) -> Expansion {
    let prime = x.prime().clone();
    let (mut trace, mut state) = Expansion::start(CompleteQuotient::Rational(x.clone()), &prime);
    let mut cur = x.clone();
    for _ in 0..steps {
        let (a, next) = step_rational(&cur);
        match next {
            None => {
                trace.push(&mut state, a, None);
                break;
            }
            Some(y) => {
                trace.push(&mut state, a, Some(CompleteQuotient::Rational(y.clone())));
                cur = y;
            }
        }
    }
    trace
}

/// Inverts an expansion from its quotients alone.
pub fn reconstruct_rational(exp: &RationalExpansion) -> Result<LRational> {
    reconstruct_from_quotients(exp.quotients(), exp.outcome, exp.prime())
}

/// Value of a finite quotient list, or of `preperiod` followed by the tail
/// `[ℓ - ℓ⁻¹]` repeated.
pub fn reconstruct_from_quotients(
    quotients: &[PartialQuotient],
    outcome: RationalOutcome,
    prime: &Prime,
) -> Result<LRational> {
    let rows = convergents_of(quotients, prime);
    let n = quotients.len();
    let value = match outcome {
        RationalOutcome::Finite => {
            if n == 0 {
                return Err(Error::InvariantBreach("empty finite expansion".into()));
            }
            let last = &rows[n];
            BigRational::new(last.p.clone(), last.q.clone())
        }
        RationalOutcome::PeriodicRational => {
            let tail = minus_inverse_prime(prime);
            if n == 0 {
                tail
            } else {
                let (cur, prev) = (&rows[n], &rows[n - 1]);
                let num = &tail * cur.p_value(prime) + prev.p_value(prime);
                let den = &tail * cur.q_value(prime) + prev.q_value(prime);
                if den.is_zero() {
                    return Err(Error::InvariantBreach("degenerate convergents".into()));
                }
                num / den
            }
        }
    };
    Ok(LRational::from_rational(value, prime))
}

/// What the varying-prime theory predicts for `x` beyond some threshold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeThreshold {
    /// Negative numbers never terminate.
    AllPeriodic,
    /// A non-negative integer `n` has the length-one expansion `[n]` for every `ℓ > n`.
    FiniteAbove(BigInt),
    /// A non-integer `n/m > 0` is periodic for every `ℓ > max(n, m)`.
    PeriodicAbove(BigInt),
}

impl PrimeThreshold {
    pub fn predicts(&self, prime: &Prime) -> Option<RationalOutcome> {
        match self {
            PrimeThreshold::AllPeriodic => Some(RationalOutcome::PeriodicRational),
            PrimeThreshold::FiniteAbove(t) if prime.value() > t => Some(RationalOutcome::Finite),
            PrimeThreshold::PeriodicAbove(t) if prime.value() > t => {
                Some(RationalOutcome::PeriodicRational)
            }
            _ => None,
        }
    }
}

impl std::fmt::Display for PrimeThreshold {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PrimeThreshold::AllPeriodic => write!(f, "periodic for every prime"),
            PrimeThreshold::FiniteAbove(t) => write!(f, "finite of length one for every prime > {t}"),
            PrimeThreshold::PeriodicAbove(t) => write!(f, "periodic for every prime > {t}"),
        }
    }
}

pub fn prime_threshold(x: &BigRational) -> Result<PrimeThreshold> {
    if x.is_zero() {
        return Err(Error::Domain("the scan needs a nonzero rational".into()));
    }
    Ok(if x.is_negative() {
        PrimeThreshold::AllPeriodic
    } else if x.is_integer() {
        PrimeThreshold::FiniteAbove(x.to_integer())
    } else {
        PrimeThreshold::PeriodicAbove(x.numer().clone().max(x.denom().clone()))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalScanRow {
    pub prime: Prime,
    pub outcome: RationalOutcome,
    pub quotients: Vec<PartialQuotient>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalScan {
    pub value: BigRational,
    pub threshold: PrimeThreshold,
    pub rows: Vec<RationalScanRow>,
}

impl RationalScan {
    /// Rows where the computed outcome contradicts the threshold prediction.
    pub fn contradictions(&self) -> Vec<&RationalScanRow> {
        self.rows
            .iter()
            .filter(|r| matches!(self.threshold.predicts(&r.prime), Some(o) if o != r.outcome))
            .collect()
    }
}

/// Classifies `x` over every prime `ℓ ≤ l_max`.
pub fn scan_primes_rational(x: &BigRational, l_max: u64) -> Result<RationalScan> {
    let threshold = prime_threshold(x)?;
    let mut rows = Vec::new();
    for l in arith::primes_up_to(l_max) {
        let prime = Prime::new(l)?;
        let lx = LRational::from_rational(x.clone(), &prime);
        let exp = expand_rational(&lx)?;
        rows.push(RationalScanRow {
            prime,
            outcome: exp.outcome,
            quotients: exp.quotients().to_vec(),
        });
    }
    Ok(RationalScan {
        value: x.clone(),
        threshold,
        rows,
    })
}

/// `v(p_n - α q_n)` for every `n` before termination, together with the
/// predicted value `s_{n+1} - e_0`; exact terminating steps report `None`.
pub fn approximation_orders(trace: &Expansion, alpha: &BigRational) -> Vec<(usize, Option<i64>, i64)> {
    let prime = &trace.prime;
    let e: Vec<i64> = trace.exponents().iter().map(|&e| e as i64).collect();
    let mut out = Vec::new();
    for n in 0..trace.len() {
        let row = &trace.convergents[n];
        let diff = row.p_value(prime) - alpha * row.q_value(prime);
        let predicted = e[..=n].iter().sum::<i64>() - e[0];
        let got = (!diff.is_zero()).then(|| arith::rat_valuation(&diff, prime.value()));
        out.push((n, got, predicted));
    }
    out
}

/// `p̃_n, q̃_n` lower bounds for expansions with `a_0 ≠ 0`, at every `n > 1`.
pub fn lower_bounds_hold(trace: &Expansion) -> bool {
    if trace.quotients.first().map_or(true, |a| a.is_zero()) {
        return true;
    }
    let prime = &trace.prime;
    let rows = &trace.convergents;
    (2..rows.len()).all(|n| {
        let (s, s_prev) = (rows[n].s as u32, rows[n - 1].s as u32);
        let (p, q) = (&rows[n].p, &rows[n].q);
        if n % 2 == 0 {
            *p > prime.pow(s) && *q >= prime.pow(s_prev)
        } else {
            *p > prime.pow(s_prev) && *q >= prime.pow(s)
        }
    })
}

/// Odd convergents increase, even ones decrease, and every odd one lies
/// below every even one.
pub fn interleaving_holds(trace: &Expansion) -> bool {
    let vals: Vec<(usize, BigRational)> = trace
        .convergents
        .iter()
        .filter(|r| !r.q.is_zero())
        .map(|r| (r.n, BigRational::new(r.p.clone(), r.q.clone())))
        .collect();
    let odd: Vec<&BigRational> = vals.iter().filter(|(n, _)| n % 2 == 1).map(|(_, v)| v).collect();
    let even: Vec<&BigRational> = vals.iter().filter(|(n, _)| n % 2 == 0).map(|(_, v)| v).collect();
    let inc = odd.windows(2).all(|w| w[0] < w[1]);
    let dec = even.windows(2).all(|w| w[0] > w[1]);
    let sep = match (odd.iter().max(), even.iter().min()) {
        (Some(hi), Some(lo)) => hi < lo,
        _ => true,
    };
    inc && dec && sep
}

/// Length bound for finite expansions: `ℓ^{k-2} ≤ min(|p|, q)`.
pub fn finite_length_bound_holds(x: &LRational, k: usize) -> bool {
    let m = x.numer().abs().min(x.denom().clone());
    if k <= 2 {
        return true;
    }
    x.prime().pow((k - 2) as u32) <= m
}

/// `H(α_n) ≤ 4ℓH(α)` on every rational complete quotient of the trace.
pub fn height_growth_holds(trace: &Expansion, alpha: &LRational) -> bool {
    let cap = BigInt::from(4) * alpha.prime().value() * alpha.height();
    trace.complete.iter().all(|c| match c {
        CompleteQuotient::Rational(x) => x.height() <= cap,
        CompleteQuotient::Surd(_) => true,
    })
}

/// `ℓ^k` as a rational, for tests and callers that need `-1/ℓ`-style values.
pub fn prime_power(prime: &Prime, k: i64) -> BigRational {
    rpow(prime.value(), k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    fn q(n: i64, d: i64, l: u32) -> LRational {
        LRational::new(n, d, &p(l)).unwrap()
    }

    fn show(qs: &[PartialQuotient]) -> Vec<String> {
        qs.iter().map(|a| a.to_string()).collect()
    }

    #[test]
    fn step_examples() {
        let (a, next) = step_rational(&q(17, 11, 3));
        assert_eq!(a.to_string(), "1");
        assert_eq!(next.unwrap().to_string(), "11/6");
        let (a, next) = step_rational(&q(11, 6, 3));
        assert_eq!(a.to_string(), "1/3");
        assert_eq!(next.unwrap().to_string(), "2/3");
        let (a, next) = step_rational(&q(-1, 3, 3));
        assert_eq!(a.to_string(), "8/3");
        assert_eq!(next.unwrap().to_string(), "-1/3");
    }

    #[test]
    fn classify_examples() {
        let f = |x: LRational| classify_rational(&x).unwrap().outcome;
        assert_eq!(f(q(17, 11, 3)), RationalOutcome::Finite);
        assert_eq!(f(q(5, 6, 3)), RationalOutcome::PeriodicRational);
        assert_eq!(f(q(-4, 7, 5)), RationalOutcome::PeriodicRational);
    }

    #[test]
    fn expand_examples() {
        let e = expand_rational(&q(17, 11, 3)).unwrap();
        assert_eq!(e.outcome, RationalOutcome::Finite);
        assert_eq!(show(e.quotients()), ["1", "1/3", "2/3"]);

        let e = expand_rational(&q(5, 6, 3)).unwrap();
        assert_eq!(e.outcome, RationalOutcome::PeriodicRational);
        assert_eq!(show(e.quotients()), ["7/3", "7/3"]);
        assert_eq!(show(&e.period()), ["8/3"]);

        let e = expand_rational(&q(-1, 5, 5)).unwrap();
        assert!(e.quotients().is_empty());
        assert_eq!(show(&e.period()), ["24/5"]);
    }

    #[test]
    fn reconstruct_examples() {
        for (n, d) in [(17, 11), (5, 6), (-1, 3), (0, 1), (1, 1), (-7, 2)] {
            let x = q(n, d, 3);
            let e = expand_rational(&x).unwrap();
            assert_eq!(reconstruct_rational(&e).unwrap(), x);
        }
    }

    #[test]
    fn scan_examples() {
        let s = scan_primes_rational(&BigRational::new((-7).into(), 2.into()), 13).unwrap();
        assert!(s.rows.iter().all(|r| r.outcome == RationalOutcome::PeriodicRational));
        let s = scan_primes_rational(&BigRational::from_integer(6.into()), 7).unwrap();
        let row7 = s.rows.iter().find(|r| r.prime == p(7)).unwrap();
        assert_eq!(row7.outcome, RationalOutcome::Finite);
        assert_eq!(show(&row7.quotients), ["6"]);
        let s = scan_primes_rational(&BigRational::new(5.into(), 6.into()), 13).unwrap();
        assert!(s.contradictions().is_empty());
        assert!(s
            .rows
            .iter()
            .filter(|r| r.prime.value() > &BigInt::from(6))
            .all(|r| r.outcome == RationalOutcome::PeriodicRational));
    }

    #[test]
    fn trace_properties() {
        let x = q(5, 6, 3);
        let t = expand_rational_steps(&x, 10);
        assert!(crate::expansion::determinant_identity_holds(&t.convergents, &t.prime));
        assert!(lower_bounds_hold(&t));
        assert!(interleaving_holds(&t));
        for (_, got, want) in approximation_orders(&t, x.value()) {
            assert_eq!(got, Some(want));
        }
    }
}
