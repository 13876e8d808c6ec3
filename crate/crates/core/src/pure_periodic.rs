//! Purely periodic surds of a given ordinate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::padic::{self, PartialQuotient, Prime};
use crate::quadratic_cf::{
    classify_quadratic, surd_step, ClassifyOptions, QuadraticOutcome, QuadraticSurd,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub b: BigInt,
    pub c: BigInt,
    pub f: u32,
    pub surd: QuadraticSurd,
    /// `|α|_ℓ > 1` and `|α'|_ℓ < 1`.
    pub valuation_ok: bool,
    /// Exactly one real embedding is positive.
    pub sign_ok: bool,
    /// `c | Δ - b²`, so every complete quotient keeps the ordinate `Δ`.
    pub first_shape: bool,
}

impl Candidate {
    pub fn passes(&self) -> bool {
        self.valuation_ok && self.sign_ok
    }
}

fn check_ordinate(delta: &BigInt, prime: &Prime) -> Result<()> {
    if !delta.is_positive() {
        return Err(Error::Domain("the ordinate must be positive".into()));
    }
    if delta.is_multiple_of(prime.value()) {
        return Err(Error::Domain(format!(
            "{prime} divides {delta}; strip square factors of {prime} first"
        )));
    }
    if !padic::sqrt_exists(delta, prime)? {
        return Err(Error::NoLadicRoot {
            disc: delta.to_string(),
            prime: prime.to_string(),
        });
    }
    Ok(())
}

fn make_candidate(delta: &BigInt, b: BigInt, c: BigInt, f: u32, prime: &Prime, branch: &BigInt) -> Result<Candidate> {
    let surd = QuadraticSurd::new(delta.clone(), b.clone(), c.clone(), f as i64, prime, branch.clone())?;
    let valuation_ok = surd.valuation() < 0 && surd.conj_valuation() > 0;
    let (s1, s2) = surd.embedding_signs()?;
    let first_shape = (delta - &b * &b).is_multiple_of(&c);
    Ok(Candidate {
        b,
        c,
        f,
        surd,
        valuation_ok,
        sign_ok: s1 != s2,
        first_shape,
    })
}

/// Every `(b + δ)/(ℓ^f c)` with `|b| ≤ ⌊√Δ⌋`, `f ≥ 1`, `ℓ ∤ c` and
/// `ℓ^{f+1}|c| ≤ Δ`: a finite superset of the purely periodic surds of
/// ordinate `Δ`.
pub fn candidate_list(delta: &BigInt, prime: &Prime, branch: &BigInt) -> Result<Vec<Candidate>> {
    check_ordinate(delta, prime)?;
    let t = arith::isqrt(delta);
    let mut out = Vec::new();
    let mut f = 1u32;
    while prime.pow(f + 1) <= *delta {
        let cmax = delta / prime.pow(f + 1);
        let mut cabs = BigInt::one();
        while cabs <= cmax {
            if !cabs.is_multiple_of(prime.value()) {
                for c in [-cabs.clone(), cabs.clone()] {
                    let mut b = -t.clone();
                    while b <= t {
                        out.push(make_candidate(delta, b.clone(), c.clone(), f, prime, branch)?);
                        b += 1u32;
                    }
                }
            }
            cabs += 1u32;
        }
        f += 1;
    }
    Ok(out)
}

/// Keeps candidates with `|α|_ℓ > 1`, `|α'|_ℓ < 1` and exactly one positive
/// real embedding; equal values are merged.
pub fn ppp_filter(cands: &[Candidate]) -> Vec<Candidate> {
    let mut out: Vec<Candidate> = Vec::new();
    for c in cands.iter().filter(|c| c.passes()) {
        if !out.iter().any(|o| o.surd.same_value(&c.surd)) {
            out.push(c.clone());
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PurePeriodic {
    pub surd: QuadraticSurd,
    pub period: Vec<PartialQuotient>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PurePeriodicReport {
    pub candidates: usize,
    pub filtered: Vec<Candidate>,
    pub confirmed: Vec<PurePeriodic>,
}

/// Expands each filtered candidate `|list| + 1` times: leaving the list rules
/// it out, coming back to the start confirms it.
///
/// A candidate with `c ∤ Δ - b²` expands at the ordinate `c²Δ`, outside the
/// list, and is decided by the classifier instead.
pub fn confirm(filtered: &[Candidate]) -> Result<Vec<PurePeriodic>> {
    let steps = filtered.len() + 1;
    let mut out = Vec::new();
    for cand in filtered {
        let start = &cand.surd;
        if !cand.first_shape {
            let c = classify_quadratic(start, ClassifyOptions::default())?;
            if let QuadraticOutcome::Periodic { preperiod, period } = c.outcome {
                if preperiod.is_empty() {
                    out.push(PurePeriodic {
                        surd: start.clone(),
                        period,
                    });
                }
            }
            continue;
        }
        let mut cur = start.clone();
        let mut period = Vec::new();
        for _ in 0..steps {
            let (a, next) = surd_step(&cur);
            period.push(a);
            if next.same_value(start) {
                out.push(PurePeriodic {
                    surd: start.clone(),
                    period: period.clone(),
                });
                break;
            }
            if !filtered.iter().any(|c| c.surd.same_value(&next)) {
                break;
            }
            cur = next;
        }
    }
    out.sort_by(|x, y| {
        (x.surd.b(), x.surd.c(), x.surd.f()).cmp(&(y.surd.b(), y.surd.c(), y.surd.f()))
    });
    Ok(out)
}

/// The purely periodic surds `(b + δ)/(ℓ^f c)` of ordinate `Δ`.
pub fn determine_pure_periodic(delta: &BigInt, prime: &Prime, branch: &BigInt) -> Result<PurePeriodicReport> {
    let cands = candidate_list(delta, prime, branch)?;
    let filtered = ppp_filter(&cands);
    let confirmed = confirm(&filtered)?;
    Ok(PurePeriodicReport {
        candidates: cands.len(),
        filtered,
        confirmed,
    })
}

/// A solution of `t² - u²Δ = -4ℓ^{2h}` with `0 ≤ t < ℓ^{h+1}`, `ℓ ∤ t`, and
/// the surd `x = (t ± uδ)/(2ℓ^h) = [t/ℓ^h, t/ℓ^h, ...]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellSolution {
    pub h: u32,
    pub t: BigInt,
    pub u: BigInt,
    /// `+1` when `x = (t + uδ)/(2ℓ^h)`, `-1` for the conjugate.
    pub sign: i32,
    pub surd: QuadraticSurd,
    pub quotient: PartialQuotient,
}

impl PellSolution {
    /// `x` written with the coefficient of `√Δ` kept apart, halved when possible.
    pub fn formula(&self, delta: &BigInt) -> String {
        let (t, u, den) = match self.halved() {
            Some((t, u)) => (t, u, self.surd.prime().pow(self.h)),
            None => (self.t.clone(), self.u.clone(), BigInt::from(2) * self.surd.prime().pow(self.h)),
        };
        let op = if self.sign > 0 { '+' } else { '-' };
        let coef = if u == BigInt::one() { String::new() } else { format!("{u}*") };
        format!("({t}{op}{coef}sqrt({delta}))/{den}")
    }

    /// `(t/2, u/2)`, the normalization `t² - u²Δ = -ℓ^{2h}`, when both are even.
    pub fn halved(&self) -> Option<(BigInt, BigInt)> {
        (self.t.is_even() && self.u.is_even()).then(|| (&self.t / 2u32, &self.u / 2u32))
    }

    /// Whether the real embedding `δ ↦ +√Δ` sends the surd to a positive number.
    pub fn positive_under_plus(&self) -> bool {
        matches!(self.surd.embedding_signs(), Ok((1, _)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellLevel {
    pub h: u32,
    pub solutions: Vec<PellSolution>,
}

/// Period-one expansions `[t/ℓ^h]` inside `ℚ(√Δ)` for `1 ≤ h ≤ h_max`.
pub fn pell_period1(delta: &BigInt, prime: &Prime, h_max: u32, branch: &BigInt) -> Result<Vec<PellLevel>> {
    if !delta.is_positive() || arith::is_perfect_square(delta) {
        return Err(Error::Domain(format!("{delta} must be a positive non-square")));
    }
    if !padic::sqrt_exists(delta, prime)? {
        return Err(Error::NoLadicRoot {
            disc: delta.to_string(),
            prime: prime.to_string(),
        });
    }
    let l = prime.value();
    let mut levels = Vec::new();
    for h in 1..=h_max {
        let four_l2h = BigInt::from(4) * prime.pow(2 * h);
        let limit = prime.pow(h + 1);
        let mut solutions = Vec::new();
        let mut t = BigInt::one();
        while t < limit {
            if !t.is_multiple_of(l) {
                let (q, r) = (&t * &t + &four_l2h).div_rem(delta);
                if r.is_zero() {
                    if let Some(u) = arith::perfect_square_root(&q) {
                        solutions.push(pell_solution(delta, prime, h, &t, &u, branch)?);
                    }
                }
            }
            t += 1u32;
        }
        levels.push(PellLevel { h, solutions });
    }
    Ok(levels)
}

fn pell_solution(delta: &BigInt, prime: &Prime, h: u32, t: &BigInt, u: &BigInt, branch: &BigInt) -> Result<PellSolution> {
    let quotient = PartialQuotient::new(t.clone(), h, prime)?;
    let g = if t.is_even() && u.is_even() { 2u32 } else { 1 };
    let (th, uh) = (t / g, u / g);
    let den = BigInt::from(2 / g);
    for sign in [1, -1] {
        let surd = QuadraticSurd::with_coefficient(delta.clone(), th.clone(), &uh * sign, den.clone(), h as i64, prime, branch.clone())?;
        if surd.valuation() < 0 {
            return Ok(PellSolution {
                h,
                t: t.clone(),
                u: u.clone(),
                sign,
                surd,
                quotient,
            });
        }
    }
    Err(Error::InvariantBreach(format!(
        "neither (t ± uδ)/(2ℓ^h) has negative valuation for t = {t}, u = {u}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn rescaled_candidate_is_kept() {
        // (3 + δ)/12 expands at the ordinate 9·73
        let r = determine_pure_periodic(&b(73), &p(2), &b(3)).unwrap();
        let x = QuadraticSurd::new(73, 3, 3, 2, &p(2), 3).unwrap();
        let hit = r.confirmed.iter().find(|c| c.surd.same_value(&x)).unwrap();
        assert_eq!(hit.period.len(), 2);
    }

    #[test]
    fn funnel_thirteen() {
        let r = determine_pure_periodic(&b(13), &p(3), &b(1)).unwrap();
        assert_eq!(r.candidates, 14);
        assert_eq!(r.filtered.len(), 2);
        assert_eq!(r.confirmed.len(), 1);
        assert_eq!(r.confirmed[0].surd.to_string(), "(2-sqrt(13))/3");
        assert_eq!(r.confirmed[0].period[0].to_string(), "4/3");
    }

    #[test]
    fn includes_theta_and_pell_seed() {
        let l = p(3);
        let r = determine_pure_periodic(&b(37), &l, &b(1)).unwrap();
        let theta = QuadraticSurd::new(37, 1, 6, 0, &l, 1).unwrap();
        let hit = r.confirmed.iter().find(|x| x.surd.same_value(&theta)).unwrap();
        assert_eq!(hit.period[0].to_string(), "1/3");
        let r = determine_pure_periodic(&b(10), &l, &b(1)).unwrap();
        let x1 = QuadraticSurd::new(10, 1, 1, 1, &l, 1).unwrap();
        let hit = r.confirmed.iter().find(|x| x.surd.same_value(&x1)).unwrap();
        assert_eq!(hit.period.len(), 1);
        assert_eq!(hit.period[0].to_string(), "2/3");
    }

    #[test]
    fn rejects_divisible_ordinate() {
        assert!(candidate_list(&b(39), &p(3), &b(1)).is_err());
    }

    #[test]
    fn pell_ten() {
        let l = p(3);
        let levels = pell_period1(&b(10), &l, 6, &b(1)).unwrap();
        let halves: Vec<Vec<(BigInt, BigInt)>> = levels
            .iter()
            .map(|lv| lv.solutions.iter().filter_map(|s| s.halved()).collect())
            .collect();
        assert_eq!(halves[0], vec![(b(1), b(1))]);
        assert_eq!(halves[1], vec![(b(13), b(5))]);
        assert_eq!(halves[2], vec![(b(31), b(13))]);
        assert_eq!(halves[3], vec![(b(43), b(29))]);
        assert!(halves[4].is_empty());
        for lv in &levels {
            for s in &lv.solutions {
                let c = classify_quadratic(&s.surd, ClassifyOptions::default()).unwrap();
                assert_eq!(
                    c.outcome,
                    QuadraticOutcome::Periodic {
                        preperiod: vec![],
                        period: vec![s.quotient.clone()]
                    }
                );
            }
        }
        let x2 = &levels[1].solutions[0];
        assert_eq!(x2.surd.to_string(), "(13-sqrt(250))/9");
        assert_eq!(x2.formula(&b(10)), "(13-5*sqrt(10))/9");
        assert_eq!(x2.quotient.to_string(), "26/9");
    }
}
