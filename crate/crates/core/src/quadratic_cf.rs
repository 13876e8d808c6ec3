//! Quadratic surds `(b + δ)/(ℓ^f c)` and their Ruban expansions.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, pow};
use crate::error::{Error, Result};
use crate::expansion::{convergents_of, CompleteQuotient, Expansion};
use crate::field::QuadElem;
use crate::padic::{self, hensel_sqrt, sqrt_branches, PartialQuotient, Prime};

/// `(b + δ)/(ℓ^f c)` where `δ² = Δ = ℓ^{2h} Δ̃`, `ℓ ∤ Δ̃`, and `δ = ℓ^h δ̃`
/// with `δ̃` the root of `Δ̃` selected by `branch`.
///
/// Values always satisfy `ℓ ∤ c` and `c | Δ - b²`. Under the real embedding
/// called `ι` below, `δ ↦ +√Δ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    prime: Prime,
    unit_disc: BigInt,
    half_val: u32,
    branch: BigInt,
    b: BigInt,
    c: BigInt,
    f: i64,
}

fn check_disc(delta: &BigInt, prime: &Prime) -> Result<(u32, BigInt)> {
    if delta.is_zero() {
        return Err(Error::Domain("the discriminant must be nonzero".into()));
    }
    if !padic::sqrt_exists(delta, prime)? {
        return Err(Error::NoLadicRoot {
            disc: delta.to_string(),
            prime: prime.to_string(),
        });
    }
    let (v, unit) = padic::split_disc(delta, prime);
    Ok((v / 2, unit))
}

fn normalize_branch(unit: &BigInt, prime: &Prime, branch: &BigInt) -> Result<BigInt> {
    let k = if prime.is_two() { 3 } else { 1 };
    Ok(hensel_sqrt(unit, prime, branch, k)?.branch().clone())
}

impl QuadraticSurd {
    /// Builds `(b + δ)/(ℓ^f c)` with `δ² = delta`, rescaling to `c | Δ - b²`
    /// when needed. For `ℓ² | Δ` the branch refers to `δ/ℓ^h`.
    pub fn new(
        delta: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        f: i64,
        prime: &Prime,
        branch: impl Into<BigInt>,
    ) -> Result<Self> {
        let delta = delta.into();
        let (h, unit) = check_disc(&delta, prime)?;
        let branch = normalize_branch(&unit, prime, &branch.into())?;
        Self::assemble(prime, unit, h, branch, b.into(), c.into(), f)
    }

    /// `√Δ` itself.
    pub fn sqrt(delta: impl Into<BigInt>, prime: &Prime, branch: impl Into<BigInt>) -> Result<Self> {
        Self::new(delta, 0, 1, 0, prime, branch)
    }

    /// `(b + u·δ)/(ℓ^f c)` with `δ² = delta`; the coefficient is folded into the
    /// discriminant.
    pub fn with_coefficient(
        delta: impl Into<BigInt>,
        b: impl Into<BigInt>,
        u: impl Into<BigInt>,
        c: impl Into<BigInt>,
        f: i64,
        prime: &Prime,
        branch: impl Into<BigInt>,
    ) -> Result<Self> {
        let delta = delta.into();
        let (mut b, mut u, mut c) = (b.into(), u.into(), c.into());
        if u.is_zero() {
            return Err(Error::Domain("the coefficient of the square root is zero".into()));
        }
        if u.is_negative() {
            b = -b;
            u = -u;
            c = -c;
        }
        let (h, unit) = check_disc(&delta, prime)?;
        let branch = normalize_branch(&unit, prime, &branch.into())?;
        let (j, u_unit) = arith::split_power(&u, prime.value());
        let bm = prime.branch_modulus();
        Self::assemble(
            prime,
            &unit * &u_unit * &u_unit,
            h + j,
            (&branch * &u_unit).mod_floor(&bm),
            b,
            c,
            f,
        )
    }

    /// Roots of `A x² + B x + C` lying in `ℚ_ℓ`, one per branch.
    pub fn roots_of(a: &BigInt, b: &BigInt, c: &BigInt, prime: &Prime) -> Result<Vec<Self>> {
        if a.is_zero() {
            return Err(Error::Domain("leading coefficient is zero".into()));
        }
        let disc = b * b - BigInt::from(4) * a * c;
        if disc.is_zero() || arith::is_perfect_square(&disc) {
            return Err(Error::Domain(format!(
                "{a}x^2 + {b}x + {c} is reducible over Q"
            )));
        }
        if !padic::sqrt_exists(&disc, prime)? {
            return Ok(Vec::new());
        }
        let (_, unit) = padic::split_disc(&disc, prime);
        sqrt_branches(&unit, prime)
            .into_iter()
            .map(|br| Self::new(disc.clone(), -b.clone(), BigInt::from(2) * a, 0, prime, br))
            .collect()
    }

    fn assemble(
        prime: &Prime,
        mut unit: BigInt,
        h: u32,
        mut branch: BigInt,
        mut b: BigInt,
        c: BigInt,
        f: i64,
    ) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        let (k, mut c) = arith::split_power(&c, prime.value());
        let f = f + k as i64;
        let delta = pow(prime.value(), 2 * h) * &unit;
        let g = c.gcd(&(&delta - &b * &b));
        let d = c.abs() / g;
        if !d.is_one() {
            b *= &d;
            c *= &d;
            unit *= &d * &d;
            branch = (branch * &d).mod_floor(&prime.branch_modulus());
        }
        Ok(QuadraticSurd {
            prime: prime.clone(),
            unit_disc: unit,
            half_val: h,
            branch,
            b,
            c,
            f,
        })
    }

    pub fn prime(&self) -> &Prime {
        &self.prime
    }

    /// `Δ = ℓ^{2h} Δ̃`.
    pub fn delta(&self) -> BigInt {
        self.prime.pow(2 * self.half_val) * &self.unit_disc
    }

    pub fn unit_disc(&self) -> &BigInt {
        &self.unit_disc
    }

    pub fn half_val(&self) -> u32 {
        self.half_val
    }

    pub fn branch(&self) -> &BigInt {
        &self.branch
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn f(&self) -> i64 {
        self.f
    }

    /// `ℓ^f c` as a rational.
    pub fn denominator(&self) -> BigRational {
        BigRational::from_integer(self.c.clone()) * arith::rpow(self.prime.value(), self.f)
    }

    /// Key identifying the value among maximally stripped representations.
    pub fn key(&self) -> (u32, BigInt, BigInt, i64) {
        (self.half_val, self.b.clone(), self.c.clone(), self.f)
    }

    /// `δ mod ℓ^k`.
    pub fn delta_residue(&self, k: u32) -> BigInt {
        let h = self.half_val;
        if k <= h {
            return BigInt::zero();
        }
        let root = hensel_sqrt(&self.unit_disc, &self.prime, &self.branch, k - h)
            .expect("branch validated at construction");
        self.prime.pow(h) * root.residue()
    }

    /// The value as `x + y·δ` in `ℚ(δ)`.
    pub fn field_elem(&self) -> QuadElem {
        let den = self.denominator();
        QuadElem::new(
            BigRational::from_integer(self.b.clone()) / &den,
            BigRational::one() / den,
            self.delta(),
        )
    }

    /// `v(x + y·δ)`, or `None` when both coefficients vanish.
    pub fn valuation_of(&self, x: &BigRational, y: &BigRational) -> Option<i64> {
        let l = self.prime.value();
        if y.is_zero() {
            return (!x.is_zero()).then(|| arith::rat_valuation(x, l));
        }
        let vy = arith::rat_valuation(y, l);
        let mut prec: i64 = 8;
        loop {
            let k = (prec - vy).max(1) as u32;
            let approx = x + y * BigRational::from_integer(self.delta_residue(k));
            let target = vy + k as i64;
            if !approx.is_zero() {
                let v = arith::rat_valuation(&approx, l);
                if v < target {
                    return Some(v);
                }
            }
            prec *= 2;
        }
    }

    pub fn valuation(&self) -> i64 {
        let e = self.field_elem();
        self.valuation_of(&e.x, &e.y).expect("irrational value")
    }

    /// `v` of the algebraic conjugate `(b - δ)/(ℓ^f c)`.
    pub fn conj_valuation(&self) -> i64 {
        let e = self.field_elem().conj();
        self.valuation_of(&e.x, &e.y).expect("irrational value")
    }

    /// The ℓ-adic integral part.
    pub fn floor(&self) -> PartialQuotient {
        self.floor_parts().0
    }

    /// Floor plus the shift `w = v(b + δ)` it was computed with (when nonzero).
    fn floor_parts(&self) -> (PartialQuotient, u32) {
        let zero = PartialQuotient::zero(&self.prime);
        if self.f < 0 {
            return (zero, 0);
        }
        let f = self.f as u32;
        let modulus = self.prime.pow(f + 1);
        let n = (&self.b + self.delta_residue(f + 1)).mod_floor(&modulus);
        if n.is_zero() {
            return (zero, 0);
        }
        let (w, unit) = arith::split_power(&n, self.prime.value());
        let e = f - w;
        let m = self.prime.pow(e + 1);
        let inv = arith::mod_inverse(&self.c, &m).expect("ℓ does not divide c");
        let r = (unit * inv).mod_floor(&m);
        let a = PartialQuotient::new(r, e, &self.prime).expect("reduced residue");
        (a, w)
    }

    /// Signs of the two real embeddings `δ ↦ +√Δ` and `δ ↦ -√Δ`.
    pub fn embedding_signs(&self) -> Result<(i32, i32)> {
        let delta = self.delta();
        if delta.is_negative() {
            return Err(Error::Domain(format!(
                "sqrt({delta}) has no real embedding"
            )));
        }
        let b2 = &self.b * &self.b;
        let plus = if !self.b.is_negative() || b2 < delta { 1 } else { -1 };
        let minus = if !self.b.is_positive() || b2 < delta { -1 } else { 1 };
        let s = if self.c.is_positive() { 1 } else { -1 };
        Ok((plus * s, minus * s))
    }

    pub fn both_negative(&self) -> bool {
        matches!(self.embedding_signs(), Ok((-1, -1)))
    }

    /// Whether `ℓ^f c | Δ - b²`, `ℓ ∤ Δ` and `v = -f < 0` (`1 - f` for `ℓ = 2`).
    pub fn is_standard(&self) -> bool {
        if self.half_val != 0 || self.f < 0 {
            return false;
        }
        let k = self.prime.pow(self.f as u32) * &self.c;
        if !(self.delta() - &self.b * &self.b).is_multiple_of(&k) {
            return false;
        }
        let v = self.valuation();
        let expect = if self.prime.is_two() { 1 - self.f } else { -self.f };
        v == expect && v < 0
    }

    /// Divides the largest common power `ℓ^k`, `k ≤ h`, out of `b` and `δ`.
    pub fn stripped(&self) -> Self {
        let k = if self.b.is_zero() {
            self.half_val
        } else {
            arith::int_valuation(&self.b, self.prime.value()).min(self.half_val)
        };
        if k == 0 {
            return self.clone();
        }
        QuadraticSurd {
            b: &self.b / self.prime.pow(k),
            half_val: self.half_val - k,
            f: self.f - k as i64,
            ..self.clone()
        }
    }

    /// Integer polynomial `[A, B, C]` with `A > 0`, primitive, vanishing here.
    pub fn min_poly(&self) -> [BigInt; 3] {
        self.field_elem().min_poly()
    }

    /// `α mod ℓ^prec`, as a rational with an ℓ-power denominator.
    fn approx(&self, prec: i64) -> BigRational {
        let k = (prec + self.f).max(1) as u32;
        let m = self.prime.pow(k);
        let num = (&self.b + self.delta_residue(k)).mod_floor(&m);
        let inv = arith::mod_inverse(&self.c, &m).expect("unit");
        BigRational::from_integer((num * inv).mod_floor(&m)) * arith::rpow(self.prime.value(), -self.f)
    }

    /// Equality of values across representations.
    pub fn same_value(&self, other: &Self) -> bool {
        if self.prime != other.prime || self.min_poly() != other.min_poly() {
            return false;
        }
        let v2 = if self.prime.is_two() { 1 } else { 0 };
        let sep = |s: &Self| v2 + s.half_val as i64 - s.f;
        let prec = sep(self).max(sep(other)) + 1;
        let diff = self.approx(prec) - other.approx(prec);
        diff.is_zero() || arith::rat_valuation(&diff, self.prime.value()) >= prec
    }

    /// `(b+sqrt(Δ))/(c*ℓ^f)`, the form accepted by the parser.
    pub fn canonical(&self) -> String {
        format!(
            "({}+sqrt({}))/({}*{}^{})",
            self.b,
            self.delta(),
            self.c,
            self.prime,
            self.f
        )
        .replace("+-", "-")
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.f < 0 {
            return write!(fm, "{}", self.canonical());
        }
        let den = self.prime.pow(self.f as u32) * self.c.abs();
        let root = format!("sqrt({})", self.delta());
        let (neg, inner) = match (self.c.is_positive(), self.b.sign()) {
            (true, Sign::NoSign) => (false, root),
            (true, _) => (false, format!("({}+{root})", self.b)),
            (false, Sign::Minus) => (false, format!("({}-{root})", -self.b.clone())),
            (false, Sign::NoSign) => (true, root),
            (false, Sign::Plus) => (true, format!("({}+{root})", self.b)),
        };
        let sign = if neg { "-" } else { "" };
        if den.is_one() {
            let inner = if neg {
                inner.as_str()
            } else {
                inner
                    .strip_prefix('(')
                    .and_then(|s| s.strip_suffix(')'))
                    .unwrap_or(&inner)
            };
            write!(fm, "{sign}{inner}")
        } else {
            write!(fm, "{sign}{inner}/{den}")
        }
    }
}

/// One raw step of the recurrence: `a = ⌊x⌋_ℓ`, `b' = aℓ^f c - b`,
/// `ℓ^{f+f'} c c' = Δ - b'²`.
pub fn surd_step(x: &QuadraticSurd) -> (PartialQuotient, QuadraticSurd) {
    let (a, w) = x.floor_parts();
    let b_next = if a.is_zero() {
        -x.b.clone()
    } else {
        a.numerator() * &x.c * x.prime.pow(w) - &x.b
    };
    let m_full = x.delta() - &b_next * &b_next;
    let (m_q, rem) = m_full.div_rem(&x.c);
    debug_assert!(rem.is_zero(), "c must divide Δ - b'²");
    let (m, c_next) = arith::split_power(&m_q, x.prime.value());
    let next = QuadraticSurd {
        b: b_next,
        c: c_next,
        f: m as i64 - x.f,
        ..x.clone()
    };
    (a, next)
}

/// Result of bringing a surd into the standard shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub prefix: Vec<PartialQuotient>,
    pub complete: Vec<QuadraticSurd>,
    pub standard: QuadraticSurd,
}

/// Expands until a complete quotient in standard shape appears, stripping
/// powers of ℓ after every step; at most `v(Δ)/2 + 2` steps, plus one
/// leading `a = 0` step when `v(x) > 0`.
pub fn reduce_to_standard(x: &QuadraticSurd) -> Result<Reduction> {
    let extra = u32::from(x.valuation() > 0);
    let limit = x.half_val + 2 + extra;
    let mut prefix = Vec::new();
    let mut complete = Vec::new();
    let mut cur = x.clone();
    for _ in 0..limit {
        let (a, next) = surd_step(&cur);
        prefix.push(a);
        cur = next.stripped();
        complete.push(cur.clone());
        if cur.is_standard() {
            return Ok(Reduction {
                prefix,
                complete,
                standard: cur,
            });
        }
    }
    Err(Error::InvariantBreach(format!(
        "{x}: no standard complete quotient within {limit} steps"
    )))
}

/// Step bound within which the classifier must decide.
pub fn n_alpha(x: &QuadraticSurd, improved: bool) -> Result<BigInt> {
    let delta = x.delta();
    if !delta.is_positive() {
        return Err(Error::Domain("the step bound needs Δ > 0".into()));
    }
    let t = arith::isqrt(&delta);
    let excess = x.b.abs() - &t;
    let main = |d: &BigInt| {
        let t = arith::isqrt(d);
        (BigInt::from(2) * &t + 1u32) * d
            - &t * (&t + 1u32) * (BigInt::from(2) * &t + 1u32) / 3u32
            + 1u32
    };
    Ok(if improved {
        BigInt::from(x.half_val + 2).max(excess) + main(&x.unit_disc)
    } else {
        BigInt::zero().max(excess) + main(&delta)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadraticOutcome {
    Periodic {
        preperiod: Vec<PartialQuotient>,
        period: Vec<PartialQuotient>,
    },
    Aperiodic {
        witness_index: usize,
        witness: QuadraticSurd,
    },
    /// `Δ < 0`: no real embedding, hence never periodic.
    NoRealEmbedding,
}

impl QuadraticOutcome {
    pub fn is_periodic(&self) -> bool {
        matches!(self, QuadraticOutcome::Periodic { .. })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub improved: bool,
    /// Replaces the step bound; running out then reports "undecided" instead
    /// of an invariant breach.
    pub max_steps: Option<u64>,
    /// Quadratic scan over earlier complete quotients instead of hashing.
    pub naive_scan: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticClassification {
    pub input: QuadraticSurd,
    pub outcome: QuadraticOutcome,
    pub steps_used: u64,
    pub bound_used: BigInt,
    /// Complete quotients (maximally stripped) and convergents.
    pub trace: Expansion,
    /// First index whose complete quotient is in standard shape.
    pub standard_index: Option<usize>,
}

/// Decides periodicity: stops at a complete quotient with both real
/// embeddings negative, or at the first repeated complete quotient.
pub fn classify_quadratic(x: &QuadraticSurd, opts: ClassifyOptions) -> Result<QuadraticClassification> {
    let prime = x.prime().clone();
    if x.delta().is_negative() {
        let (trace, _) = Expansion::start(CompleteQuotient::Surd(x.clone()), &prime);
        return Ok(QuadraticClassification {
            input: x.clone(),
            outcome: QuadraticOutcome::NoRealEmbedding,
            steps_used: 0,
            bound_used: BigInt::zero(),
            trace,
            standard_index: None,
        });
    }
    let bound = match opts.max_steps {
        Some(m) => BigInt::from(m),
        None => n_alpha(x, opts.improved)?,
    };
    let mut cur = x.stripped();
    let (mut trace, mut state) = Expansion::start(CompleteQuotient::Surd(cur.clone()), &prime);
    let mut seen: HashMap<(u32, BigInt, BigInt, i64), usize> = HashMap::new();
    let mut history: Vec<QuadraticSurd> = vec![cur.clone()];
    seen.insert(cur.key(), 0);
    let mut standard_index = cur.is_standard().then_some(0);
    let mut i: usize = 0;
    loop {
        if BigInt::from(i) > bound {
            return Err(match opts.max_steps {
                Some(m) => Error::Domain(format!("{x}: undecided after {m} steps")),
                None => Error::InvariantBreach(format!(
                    "{x}: neither a repetition nor a negative complete quotient within {bound} steps"
                )),
            });
        }
        if cur.both_negative() {
            return Ok(QuadraticClassification {
                input: x.clone(),
                outcome: QuadraticOutcome::Aperiodic {
                    witness_index: i,
                    witness: cur,
                },
                steps_used: i as u64,
                bound_used: bound,
                trace,
                standard_index,
            });
        }
        let (a, next) = surd_step(&cur);
        let next = next.stripped();
        trace.push(&mut state, a, Some(CompleteQuotient::Surd(next.clone())));
        if standard_index.is_none() && next.is_standard() {
            standard_index = Some(i + 1);
        }
        let hit = if opts.naive_scan {
            history.iter().position(|y| *y == next)
        } else {
            seen.get(&next.key()).copied()
        };
        if let Some(j) = hit {
            let preperiod = trace.quotients[..j].to_vec();
            let period = trace.quotients[j..].to_vec();
            return Ok(QuadraticClassification {
                input: x.clone(),
                outcome: QuadraticOutcome::Periodic { preperiod, period },
                steps_used: i as u64,
                bound_used: bound,
                trace,
                standard_index,
            });
        }
        seen.insert(next.key(), i + 1);
        history.push(next.clone());
        cur = next;
        i += 1;
    }
}

/// The first `steps` quotients using the raw recurrence, without stripping.
pub fn expand_surd_raw(x: &QuadraticSurd, steps: usize) -> Expansion {
    let (mut trace, mut state) = Expansion::start(CompleteQuotient::Surd(x.clone()), x.prime());
    let mut cur = x.clone();
    for _ in 0..steps {
        let (a, next) = surd_step(&cur);
        trace.push(&mut state, a, Some(CompleteQuotient::Surd(next.clone())));
        cur = next;
    }
    trace
}

/// The first `steps` quotients, stripping powers of ℓ after each step.
pub fn expand_surd(x: &QuadraticSurd, steps: usize) -> Expansion {
    let mut cur = x.stripped();
    let (mut trace, mut state) = Expansion::start(CompleteQuotient::Surd(cur.clone()), x.prime());
    for _ in 0..steps {
        let (a, next) = surd_step(&cur);
        let next = next.stripped();
        trace.push(&mut state, a, Some(CompleteQuotient::Surd(next.clone())));
        cur = next;
    }
    trace
}

/// `q_k x² - (p_k - q_{k-1}) x - p_{k-1} = 0` for a purely periodic `x`
/// whose period is `period`.
pub fn periodic_equation_holds(x: &QuadraticSurd, period: &[PartialQuotient]) -> bool {
    if period.is_empty() {
        return false;
    }
    let prime = x.prime();
    let rows = convergents_of(period, prime);
    let k = period.len();
    let (pk, qk) = (rows[k].p_value(prime), rows[k].q_value(prime));
    let (pk1, qk1) = (rows[k - 1].p_value(prime), rows[k - 1].q_value(prime));
    let e = x.field_elem();
    let konst = |r: BigRational| QuadElem::rational(r, e.d.clone());
    let x2 = &e * &e;
    let t1 = &konst(qk) * &x2;
    let t2 = &konst(pk - qk1) * &e;
    let val = &(&t1 - &t2) - &konst(pk1);
    val.is_zero()
}

/// Sufficient condition for both roots of `Ax² + Bx + C` to be aperiodic in
/// `ℚ_ℓ`: `ℓ ∤ A`, `ℓ > Δ/4A` and `ℓ > C`.
pub fn aperiodicity_threshold(a: &BigInt, b: &BigInt, c: &BigInt, prime: &Prime) -> Result<bool> {
    if !a.is_positive() {
        return Err(Error::Domain("leading coefficient must be positive".into()));
    }
    let disc = b * b - BigInt::from(4) * a * c;
    if !disc.is_positive() {
        return Err(Error::Domain("discriminant must be positive".into()));
    }
    if arith::is_perfect_square(&disc) {
        return Err(Error::Domain(format!(
            "{a}x^2 + {b}x + {c} is reducible over Q"
        )));
    }
    let l = prime.value();
    Ok(!a.is_multiple_of(l) && BigInt::from(4) * a * l > disc && l > c)
}

/// For `Δ = 1 + kℓ^h`: whether `Δ > (ℓ^h + 1)²`.
///
/// When `ℓ ∤ k` a `true` answer guarantees that the root `δ ≡ 1 (mod ℓ)` is
/// aperiodic; for `ℓ | k` only the inequality is reported.
pub fn family_nonperiodic_check(k: &BigInt, h: u32, prime: &Prime) -> Result<bool> {
    if prime.is_two() {
        return Err(Error::Domain("the family needs an odd prime".into()));
    }
    if !k.is_positive() || h == 0 {
        return Err(Error::Domain("k and h must be positive".into()));
    }
    let lh = prime.pow(h);
    let disc = BigInt::one() + k * &lh;
    if arith::is_perfect_square(&disc) {
        return Err(Error::RationalSquare(disc.to_string()));
    }
    let edge = &lh + 1u32;
    Ok(disc > &edge * &edge)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticScanRow {
    pub prime: Prime,
    pub threshold: bool,
    pub roots: Vec<(QuadraticSurd, QuadraticOutcome)>,
}

/// Classifies the ℓ-adic roots of `Ax² + Bx + C` for every prime `ℓ ≤ l_max`.
pub fn scan_primes_quadratic(
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
    l_max: u64,
    opts: ClassifyOptions,
) -> Result<Vec<QuadraticScanRow>> {
    let mut rows = Vec::new();
    for l in arith::primes_up_to(l_max) {
        let prime = Prime::new(l)?;
        let roots = QuadraticSurd::roots_of(a, b, c, &prime)?;
        let threshold = a.is_positive()
            && (b * b - BigInt::from(4) * a * c).is_positive()
            && aperiodicity_threshold(a, b, c, &prime)?;
        let mut out = Vec::new();
        for r in roots {
            let cls = classify_quadratic(&r, opts)?;
            out.push((r, cls.outcome));
        }
        rows.push(QuadraticScanRow {
            prime,
            threshold,
            roots: out,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    fn show(qs: &[PartialQuotient]) -> Vec<String> {
        qs.iter().map(|a| a.to_string()).collect()
    }

    fn tuple(s: &QuadraticSurd) -> (BigInt, BigInt, BigInt, i64) {
        (s.delta(), s.b().clone(), s.c().clone(), s.f())
    }

    fn t(d: i64, b: i64, c: i64, f: i64) -> (BigInt, BigInt, BigInt, i64) {
        (d.into(), b.into(), c.into(), f)
    }

    #[test]
    fn make_surd_rescales() {
        let s = QuadraticSurd::new(13, 2, 4, 1, &p(3), 1).unwrap();
        assert_eq!(tuple(&s), t(208, 8, 16, 1));
        let s = QuadraticSurd::new(13, 0, 1, 0, &p(3), 1).unwrap();
        assert_eq!(tuple(&s), t(13, 0, 1, 0));
        let s = QuadraticSurd::new(37, 1, 6, 0, &p(3), 1).unwrap();
        assert_eq!(tuple(&s), t(37, 1, 2, 1));
        assert!(matches!(
            QuadraticSurd::new(49, 0, 1, 0, &p(3), 1),
            Err(Error::RationalSquare(_))
        ));
        assert!(matches!(
            QuadraticSurd::new(5, 0, 1, 0, &p(3), 1),
            Err(Error::NoLadicRoot { .. })
        ));
    }

    #[test]
    fn step_examples() {
        let l = p(3);
        let (a, n) = surd_step(&QuadraticSurd::sqrt(13, &l, 1).unwrap());
        assert_eq!(a.to_string(), "1");
        assert_eq!(tuple(&n), t(13, 1, 4, 1));
        let (a, n) = surd_step(&n);
        assert_eq!(a.to_string(), "2/3");
        assert_eq!(tuple(&n), t(13, 7, -1, 1));
        let theta = QuadraticSurd::new(37, 1, 6, 0, &l, 1).unwrap();
        let (a, n) = surd_step(&theta);
        assert_eq!(a.to_string(), "1/3");
        assert!(n.same_value(&theta));
    }

    #[test]
    fn golden_sqrt13_prefix() {
        let x = QuadraticSurd::sqrt(13, &p(3), 1).unwrap();
        let e = expand_surd(&x, 4);
        assert_eq!(show(&e.quotients), ["1", "2/3", "4/3", "8/9"]);
    }

    #[test]
    fn reduce_examples() {
        let l = p(3);
        let r = reduce_to_standard(&QuadraticSurd::sqrt(13, &l, 1).unwrap()).unwrap();
        assert_eq!(show(&r.prefix), ["1"]);
        assert_eq!(tuple(&r.standard), t(13, 1, 4, 1));
        let r = reduce_to_standard(&QuadraticSurd::sqrt(117, &l, 1).unwrap()).unwrap();
        assert!(r.prefix.len() <= 3);
        assert_eq!(r.standard.delta(), BigInt::from(13));
    }

    #[test]
    fn signs() {
        let l = p(3);
        let s = QuadraticSurd::new(13, 2, 1, 1, &l, 1).unwrap();
        assert_eq!(s.embedding_signs().unwrap(), (1, -1));
        let s = QuadraticSurd::new(37, 19, -1, 2, &l, 1).unwrap();
        assert_eq!(s.embedding_signs().unwrap(), (-1, -1));
        let s = QuadraticSurd::new(13, 7, -1, 1, &l, 1).unwrap();
        assert_eq!(s.embedding_signs().unwrap(), (-1, -1));
    }

    #[test]
    fn bounds_closed_form() {
        let l = p(3);
        let s = QuadraticSurd::new(13, 1, 4, 1, &l, 1).unwrap();
        assert_eq!(n_alpha(&s, false).unwrap(), BigInt::from(64));
        let s = QuadraticSurd::sqrt(2, &p(7), 3).unwrap();
        assert_eq!(n_alpha(&s, false).unwrap(), BigInt::from(5));
        let s = QuadraticSurd::sqrt(9 * 13, &l, 1).unwrap();
        assert!(n_alpha(&s, true).unwrap() < n_alpha(&s, false).unwrap());
    }

    #[test]
    fn display_forms() {
        let l = p(3);
        let s = QuadraticSurd::new(37, 19, -1, 2, &l, 1).unwrap();
        assert_eq!(s.to_string(), "-(19+sqrt(37))/9");
        let s = QuadraticSurd::new(13, -2, -1, 1, &l, 1).unwrap();
        assert_eq!(s.to_string(), "(2-sqrt(13))/3");
        let s = QuadraticSurd::sqrt(13, &l, 1).unwrap();
        assert_eq!(s.to_string(), "sqrt(13)");
        assert_eq!(s.canonical(), "(0+sqrt(13))/(1*3^0)");
    }

    #[test]
    fn classify_examples() {
        let l = p(3);
        let o = ClassifyOptions::default();
        let c = classify_quadratic(&QuadraticSurd::sqrt(37, &l, 1).unwrap(), o).unwrap();
        match &c.outcome {
            QuadraticOutcome::Aperiodic { witness_index, witness } => {
                assert_eq!(*witness_index, 2);
                assert_eq!(witness.to_string(), "-(19+sqrt(37))/9");
            }
            other => panic!("{other:?}"),
        }
        let alpha = QuadraticSurd::new(13, -2, -1, 1, &l, 1).unwrap();
        let c = classify_quadratic(&alpha, o).unwrap();
        assert_eq!(
            c.outcome,
            QuadraticOutcome::Periodic {
                preperiod: vec![],
                period: vec![PartialQuotient::parse("4/3", &l).unwrap()]
            }
        );
        let seven = p(7);
        let a = QuadraticSurd::with_coefficient(2, 1, 5, 7, 0, &seven, 3).unwrap();
        let c = classify_quadratic(&a, o).unwrap();
        let period = |c: &QuadraticClassification| match &c.outcome {
            QuadraticOutcome::Periodic { preperiod, period } if preperiod.is_empty() => show(period),
            other => panic!("{other:?}"),
        };
        assert_eq!(period(&c), ["2/7"]);
        let b = QuadraticSurd::with_coefficient(2, 17, -13, 7, 0, &seven, 3).unwrap();
        assert_eq!(period(&classify_quadratic(&b, o).unwrap()), ["34/7"]);
    }

    #[test]
    fn negative_discriminant() {
        let s = QuadraticSurd::sqrt(-2, &p(3), 1).unwrap();
        let c = classify_quadratic(&s, ClassifyOptions::default()).unwrap();
        assert_eq!(c.outcome, QuadraticOutcome::NoRealEmbedding);
        assert!(s.embedding_signs().is_err());
    }

    #[test]
    fn thresholds() {
        let one = BigInt::one();
        let zero = BigInt::zero();
        let m13 = BigInt::from(-13);
        assert!(aperiodicity_threshold(&one, &zero, &m13, &p(101)).unwrap());
        assert!(!aperiodicity_threshold(&one, &zero, &m13, &p(3)).unwrap());
        assert!(!aperiodicity_threshold(&BigInt::from(3), &one, &m13, &p(3)).unwrap());
        assert!(family_nonperiodic_check(&12.into(), 2, &p(3)).unwrap());
        assert!(!family_nonperiodic_check(&4.into(), 1, &p(3)).unwrap());
        assert!(!family_nonperiodic_check(&2.into(), 1, &p(5)).unwrap());
    }
}
