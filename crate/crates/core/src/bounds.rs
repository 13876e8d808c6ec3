//! Checkers for the quantitative bounds satisfied by expansions.
//!
//! Irrational quantities are replaced by rational enclosures; a bound passes
//! when the enclosures cannot refute it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, rpow};
use crate::expansion::{CompleteQuotient, Expansion};
use crate::interval::{log_interval, log_of_interval, sqrt_interval, RationalInterval};
use crate::padic::{PartialQuotient, Prime};
use crate::quadratic_cf::QuadraticSurd;

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `λ(a) = (a + √(a² + 4))/2`, the positive root of `x² - ax - 1`.
///
/// For `e ≥ 1` the enclosure is refined until its upper end is at most `ℓ^e`;
/// `a = ℓ - ℓ⁻¹` gives the exact point `ℓ`.
pub fn lambda_interval(a: &PartialQuotient, bits: u32) -> RationalInterval {
    let av = a.value();
    let cap = a.prime().pow(a.exponent());
    let mut bits = bits;
    loop {
        let root = sqrt_interval(&(&av * &av + rat(4)), bits);
        let half = BigRational::new(1.into(), 2.into());
        let iv = root.add_rational(&av).scale(&half);
        if a.exponent() == 0 || *iv.hi() <= rat(cap.clone()) || bits >= 4096 {
            return iv;
        }
        bits *= 2;
    }
}

/// `q_n ≤ λ(a_{n-1})⋯λ(a_1)` and `p_n ≤ λ(a_{n-1})⋯λ(a_0)` for every row.
pub fn check_qn_bound(exp: &Expansion, bits: u32) -> bool {
    let prime = &exp.prime;
    let Some(a0) = exp.quotients.first() else {
        return true;
    };
    let lambda0 = lambda_interval(a0, bits);
    let mut tail = RationalInterval::integer(1);
    for row in exp.convergents.iter().skip(1) {
        let n = row.n;
        if n >= 2 {
            tail = tail.mul(&lambda_interval(&exp.quotients[n - 1], bits));
        }
        let full = tail.mul(&lambda0);
        if row.q_value(prime) > *tail.hi() || row.p_value(prime) > *full.hi() {
            return false;
        }
    }
    true
}

/// `H(α)²` (rationals) or the Mahler measure (degree two) enclosed.
pub fn height_squared(x: &CompleteQuotient, bits: u32) -> RationalInterval {
    match x {
        CompleteQuotient::Rational(q) => {
            let h = q.height();
            RationalInterval::integer(&h * &h)
        }
        CompleteQuotient::Surd(s) => mahler_measure(s, bits),
    }
}

/// `M(α) = A·max(1,|α|)·max(1,|α'|)` for the primitive polynomial `Ax² + Bx + C`.
pub fn mahler_measure(x: &QuadraticSurd, bits: u32) -> RationalInterval {
    let [a, b, c] = x.min_poly();
    let disc = &b * &b - BigInt::from(4) * &a * &c;
    if disc.is_negative() {
        return RationalInterval::integer(a.max(c));
    }
    let s = sqrt_interval(&rat(disc), bits);
    let inv = BigRational::new(1.into(), BigInt::from(2) * &a);
    let nb = rat(-b);
    let one = BigRational::one();
    let r1 = s.add_rational(&nb).scale(&inv).abs().max_with(&one);
    let r2 = s.neg().add_rational(&nb).scale(&inv).abs().max_with(&one);
    r1.mul(&r2).scale(&rat(a))
}

/// Logarithmic height in base 2.
pub fn log_height(x: &CompleteQuotient, bits: u32) -> RationalInterval {
    let two = rat(2);
    let hsq = height_squared(x, bits);
    log_of_interval(&hsq, &two, bits).scale(&BigRational::new(1.into(), 2.into()))
}

/// `h(α_n) ≤ h(α) + s_n log ℓ + n log 2ℓ` and
/// `h(α_n) ≤ 2ⁿ(h(α) + log 2ℓ) - log 2ℓ`, with logarithms in base 2.
///
/// The statement needs `v(α) ≤ 0`; otherwise the expansion of `α_1 = 1/α`,
/// which has the same height, is used.
pub fn check_height_bounds(exp: &Expansion, alpha_height: &RationalInterval, bits: u32) -> bool {
    let prime = &exp.prime;
    let start = usize::from(exp.quotients.first().is_some_and(|a| a.is_zero()));
    let two = rat(2);
    let log_l = log_interval(&rat(prime.value().clone()), &two, bits);
    let log_2l = log_l.add_rational(&BigRational::one());
    let mut s: u64 = 0;
    for (n, alpha_n) in exp.complete.iter().enumerate().skip(start) {
        let m = (n - start) as u32;
        let h_n = log_height(alpha_n, bits);
        let linear = alpha_height
            .add(&log_l.scale(&rat(s)))
            .add(&log_2l.scale(&rat(m)));
        let doubling = alpha_height
            .add(&log_2l)
            .scale(&rat(BigInt::one() << m as usize))
            .add(&log_2l.neg());
        if h_n.lo() > linear.hi() || h_n.lo() > doubling.hi() {
            return false;
        }
        if let Some(a) = exp.quotients.get(n) {
            s += a.exponent() as u64;
        }
    }
    true
}

/// Constants of the growth bounds for a surd expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthConstants {
    /// `(ℓ² + 2 + ℓ√(ℓ² + 4))/2`.
    pub c2: RationalInterval,
    /// `|k₋₁| + |k₀| + |b₀|` with `k₀ = ℓ^{f₀}c₀`, `k₋₁ = (Δ - b₀²)/k₀`.
    pub c3: BigRational,
    /// `log C₃ / log ℓ`.
    pub c4: RationalInterval,
}

pub fn growth_constants(x: &QuadraticSurd, bits: u32) -> GrowthConstants {
    let prime = x.prime();
    let l = rat(prime.value().clone());
    let l2 = &l * &l;
    let root = sqrt_interval(&(&l2 + rat(4)), bits);
    let c2 = root
        .scale(&l)
        .add_rational(&(&l2 + rat(2)))
        .scale(&BigRational::new(1.into(), 2.into()));
    let k0 = x.denominator();
    let b0 = rat(x.b().clone());
    let km1 = (rat(x.delta()) - &b0 * &b0) / &k0;
    let c3 = km1.abs() + k0.abs() + b0.abs();
    let c4 = log_interval(&c3, &l, bits);
    GrowthConstants { c2, c3, c4 }
}

/// `|b_n| ≤ C₃C₂ⁿ`, `|c_n ℓ^{f_n}| ≤ C₃C₂ⁿ` and `f_n < 3n + C₄` along the
/// complete quotients of an unstripped surd expansion.
pub fn check_growth_bounds(exp: &Expansion, bits: u32) -> bool {
    growth_violations(exp, bits).map_or(false, |v| v.is_empty())
}

/// Indices at which a growth bound fails, or `None` for a non-surd trace.
pub fn growth_violations(exp: &Expansion, bits: u32) -> Option<Vec<usize>> {
    let surds: Vec<&QuadraticSurd> = exp
        .complete
        .iter()
        .map(|c| match c {
            CompleteQuotient::Surd(s) => Some(s),
            CompleteQuotient::Rational(_) => None,
        })
        .collect::<Option<_>>()?;
    let first = surds.first()?;
    let k = growth_constants(first, bits);
    let prime = first.prime();
    let mut bad = Vec::new();
    let mut cap = k.c3.clone();
    for (n, s) in surds.iter().enumerate() {
        if n > 0 {
            cap *= k.c2.hi();
        }
        let b = rat(s.b().abs());
        let kn = s.denominator().abs();
        let f_ok = rpow(prime.value(), s.f() - 3 * n as i64) < k.c3;
        if b > cap || kn > cap || !f_ok {
            bad.push(n);
        }
    }
    Some(bad)
}

fn approx_error_valuation(alpha: &CompleteQuotient, p: &BigInt, q: &BigInt, prime: &Prime) -> Option<i64> {
    match alpha {
        CompleteQuotient::Rational(x) => {
            let d = rat(p.clone()) - x.value() * rat(q.clone());
            (!d.is_zero()).then(|| arith::rat_valuation(&d, prime.value()))
        }
        CompleteQuotient::Surd(s) => {
            let e = s.field_elem();
            let qr = rat(q.clone());
            s.valuation_of(&(rat(p.clone()) - &e.x * &qr), &(-(&e.y * &qr)))
        }
    }
}

/// `v(p_n - αq_n) = s_{n+1} - e_0` before termination, and `p_n = αq_n` at
/// the terminating row.
pub fn check_ladic_approx(exp: &Expansion) -> bool {
    let Some(alpha) = exp.complete.first() else {
        return false;
    };
    let prime = &exp.prime;
    let e0 = match exp.quotients.first() {
        Some(a) => a.exponent() as i64,
        None => return true,
    };
    let mut s_next: i64 = 0;
    for (n, a) in exp.quotients.iter().enumerate() {
        s_next += a.exponent() as i64;
        let row = &exp.convergents[n];
        let v = approx_error_valuation(alpha, &row.p, &row.q, prime).map(|v| v - row.s as i64);
        if v != Some(s_next - e0) {
            return false;
        }
    }
    if exp.terminated {
        let row = exp.convergents.last().expect("rows");
        return approx_error_valuation(alpha, &row.p, &row.q, prime).is_none();
    }
    true
}

/// Every checker on one expansion.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Audit {
    pub qn_bound: bool,
    pub height_bounds: bool,
    pub growth_bounds: Option<bool>,
    pub ladic_approx: bool,
}

impl Audit {
    pub fn all_pass(&self) -> bool {
        self.qn_bound && self.height_bounds && self.growth_bounds != Some(false) && self.ladic_approx
    }
}

/// Runs the checkers; the growth bound applies to unstripped surd traces only.
pub fn audit(exp: &Expansion, raw_surd: bool, bits: u32) -> Audit {
    let alpha_height = exp
        .complete
        .first()
        .map(|a| log_height(a, bits))
        .unwrap_or_else(|| RationalInterval::integer(0));
    Audit {
        qn_bound: check_qn_bound(exp, bits),
        height_bounds: check_height_bounds(exp, &alpha_height, bits),
        growth_bounds: raw_surd.then(|| check_growth_bounds(exp, bits)),
        ladic_approx: check_ladic_approx(exp),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::DEFAULT_BITS;
    use crate::padic::LRational;
    use crate::quadratic_cf::{expand_surd, expand_surd_raw};
    use crate::rational_cf::{expand_rational, expand_rational_steps};

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    fn pq(s: &str, l: &Prime) -> PartialQuotient {
        PartialQuotient::parse(s, l).unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn lambda_examples() {
        let l = p(3);
        assert_eq!(lambda_interval(&pq("8/3", &l), DEFAULT_BITS), RationalInterval::integer(3));
        let g = lambda_interval(&pq("1", &l), DEFAULT_BITS);
        let f = |x: &BigRational| x * x - x - BigRational::one();
        assert!(f(g.lo()) <= BigRational::zero() && f(g.hi()) >= BigRational::zero());
        let t = lambda_interval(&pq("2/3", &l), DEFAULT_BITS);
        assert!(*t.hi() < r(3, 1));
        assert_eq!(lambda_interval(&pq("0", &l), 8), RationalInterval::integer(1));
    }

    #[test]
    fn rational_checks() {
        let l = p(3);
        for (n, d) in [(17, 11), (5, 6), (-7, 3), (9, 2)] {
            let x = LRational::new(n, d, &l).unwrap();
            let e = expand_rational(&x).unwrap().trace;
            let a = audit(&e, false, DEFAULT_BITS);
            assert!(a.all_pass(), "{n}/{d}: {a:?}");
        }
        let e = expand_rational_steps(&LRational::new(5, 6, &l).unwrap(), 10);
        assert!(audit(&e, false, DEFAULT_BITS).all_pass());
    }

    #[test]
    fn surd_checks() {
        let l = p(3);
        let x = QuadraticSurd::sqrt(13, &l, 1).unwrap();
        assert!(check_growth_bounds(&expand_surd_raw(&x, 30), DEFAULT_BITS));
        let e = expand_surd(&x, 20);
        assert!(check_qn_bound(&e, DEFAULT_BITS));
        assert!(check_ladic_approx(&e));
        let h = log_height(&e.complete[0], DEFAULT_BITS);
        assert!(check_height_bounds(&e, &h, DEFAULT_BITS));
        let theta = QuadraticSurd::new(37, 1, 6, 0, &l, 1).unwrap();
        assert!(check_growth_bounds(&expand_surd_raw(&theta, 12), DEFAULT_BITS));
    }

    #[test]
    fn negative_controls() {
        let l = p(3);
        let x = LRational::new(5, 6, &l).unwrap();
        let mut e = expand_rational_steps(&x, 10);
        e.convergents[4].q *= 1000;
        assert!(!check_qn_bound(&e, DEFAULT_BITS));
        assert!(!check_ladic_approx(&e));
        let e = expand_rational_steps(&x, 10);
        let fake = RationalInterval::integer(-40);
        assert!(!check_height_bounds(&e, &fake, DEFAULT_BITS));

        let s = QuadraticSurd::sqrt(13, &l, 1).unwrap();
        let mut e = expand_surd_raw(&s, 10);
        let CompleteQuotient::Surd(y) = &e.complete[5] else { unreachable!() };
        let inflated = QuadraticSurd::new(13, y.b() * BigInt::from(10).pow(12), y.c().clone(), y.f(), &l, 1).unwrap();
        e.complete[5] = CompleteQuotient::Surd(inflated);
        assert!(!check_growth_bounds(&e, DEFAULT_BITS));
    }

    #[test]
    fn mahler_of_simple_surds() {
        let l = p(3);
        // x² - 13: M = 13
        let m = mahler_measure(&QuadraticSurd::sqrt(13, &l, 1).unwrap(), DEFAULT_BITS);
        assert!(m.contains(&r(13, 1)));
        // 3x² + 4x - 1: only the root -(2 + √13)/3 lies outside the unit disc
        let m = mahler_measure(&QuadraticSurd::new(13, 2, -1, 1, &l, 1).unwrap(), DEFAULT_BITS);
        let expect = (2.0 + 13f64.sqrt()) / 3.0 * 3.0;
        assert!(*m.lo() <= r((expect * 1e6) as i64 + 1, 1_000_000));
        assert!(*m.hi() >= r((expect * 1e6) as i64, 1_000_000));
    }
}
