//! Exact ℓ-adic primitives: valuations, the Ruban integral part, digit
//! expansions and Hensel square roots.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, pow};
use crate::error::{Error, Result};

/// A rational prime, checked at construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(BigInt);

impl Prime {
    pub fn new(value: impl Into<BigInt>) -> Result<Self> {
        let value = value.into();
        match arith::is_prime(&value) {
            Some(true) => Ok(Prime(value)),
            Some(false) => Err(Error::NotPrime(value.to_string())),
            None => Err(Error::Domain(format!(
                "{value} is too large for the deterministic primality check"
            ))),
        }
    }

    pub fn value(&self) -> &BigInt {
        &self.0
    }

    pub fn is_two(&self) -> bool {
        self.0 == BigInt::from(2)
    }

    pub fn pow(&self, k: u32) -> BigInt {
        pow(&self.0, k)
    }

    /// Modulus that separates the two square roots of a unit:
    /// `ℓ` for odd primes, `8` for `ℓ = 2`.
    pub fn branch_modulus(&self) -> BigInt {
        if self.is_two() {
            BigInt::from(8)
        } else {
            self.0.clone()
        }
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Prime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let v: BigInt = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad prime '{s}'")))?;
        Prime::new(v)
    }
}

/// Exact rational number attached to a prime, with its ℓ-adic valuation cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LRational {
    value: BigRational,
    prime: Prime,
    val: Option<i64>,
}

impl LRational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>, prime: &Prime) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Self::from_rational(BigRational::new(num.into(), den), prime))
    }

    pub fn from_rational(value: BigRational, prime: &Prime) -> Self {
        let val = (!value.is_zero()).then(|| arith::rat_valuation(&value, prime.value()));
        LRational {
            value,
            prime: prime.clone(),
            val,
        }
    }

    pub fn integer(n: impl Into<BigInt>, prime: &Prime) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()), prime)
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn numer(&self) -> &BigInt {
        self.value.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.value.denom()
    }

    pub fn prime(&self) -> &Prime {
        &self.prime
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.value.is_negative()
    }

    /// Multiplicative height `max(|p|, |q|)` of the reduced fraction.
    pub fn height(&self) -> BigInt {
        self.numer().abs().max(self.denom().clone())
    }

    pub fn valuation(&self) -> Result<i64> {
        self.val.ok_or(Error::ZeroValuation)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        Ok(Self::from_rational(self.value.recip(), &self.prime))
    }

    pub fn sub_quotient(&self, a: &PartialQuotient) -> Self {
        Self::from_rational(&self.value - a.value(), &self.prime)
    }
}

impl fmt::Display for LRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Element `r / ℓ^e` of `ℤ[1/ℓ] ∩ [0, ℓ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialQuotient {
    r: BigInt,
    e: u32,
    prime: Prime,
}

impl PartialQuotient {
    pub fn new(r: BigInt, e: u32, prime: &Prime) -> Result<Self> {
        let l = prime.value();
        if r.is_negative() || r >= pow(l, e + 1) {
            return Err(Error::Domain(format!("{r}/{l}^{e} is outside [0, {l})")));
        }
        if e > 0 && (&r % l).is_zero() {
            return Err(Error::Domain(format!(
                "{r}/{l}^{e} is not in lowest terms"
            )));
        }
        Ok(PartialQuotient {
            r,
            e,
            prime: prime.clone(),
        })
    }

    pub fn zero(prime: &Prime) -> Self {
        PartialQuotient {
            r: BigInt::zero(),
            e: 0,
            prime: prime.clone(),
        }
    }

    /// The quotient `ℓ - ℓ^{-1}` every non-terminating rational ends with.
    pub fn tail_quotient(prime: &Prime) -> Self {
        let l = prime.value();
        PartialQuotient {
            r: l * l - 1u32,
            e: 1,
            prime: prime.clone(),
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.r
    }

    pub fn exponent(&self) -> u32 {
        self.e
    }

    pub fn prime(&self) -> &Prime {
        &self.prime
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero()
    }

    pub fn value(&self) -> BigRational {
        BigRational::new(self.r.clone(), self.prime.pow(self.e))
    }

    /// Parses the `r` or `r/ℓ^e` (evaluated denominator) form written by `Display`.
    pub fn parse(s: &str, prime: &Prime) -> Result<Self> {
        let bad = || Error::Parse(format!("bad partial quotient '{s}'"));
        let (r, d) = match s.trim().split_once('/') {
            Some((r, d)) => (
                r.trim().parse::<BigInt>().map_err(|_| bad())?,
                d.trim().parse::<BigInt>().map_err(|_| bad())?,
            ),
            None => (s.trim().parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        if !d.is_positive() {
            return Err(bad());
        }
        let (e, rest) = arith::split_power(&d, prime.value());
        if !rest.is_one() {
            return Err(bad());
        }
        PartialQuotient::new(r, e, prime)
    }
}

impl fmt::Display for PartialQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 0 {
            write!(f, "{}", self.r)
        } else {
            write!(f, "{}/{}", self.r, self.prime.pow(self.e))
        }
    }
}

/// `v_ℓ(x)`; fails on zero.
pub fn valuation(x: &LRational) -> Result<i64> {
    x.valuation()
}

/// The ℓ-adic integral part: the unique `a ∈ ℤ[1/ℓ]`, `0 ≤ a < ℓ`, with `|x - a|_ℓ < 1`.
pub fn padic_floor(x: &LRational) -> PartialQuotient {
    let prime = x.prime();
    let v = match x.valuation() {
        Ok(v) if v <= 0 => v,
        _ => return PartialQuotient::zero(prime),
    };
    let e = (-v) as u32;
    let modulus = prime.pow(e + 1);
    let scaled = x.value() * BigRational::from_integer(prime.pow(e));
    let r = arith::rat_mod(&scaled, &modulus).expect("denominator is an ℓ-unit after scaling");
    PartialQuotient {
        r,
        e,
        prime: prime.clone(),
    }
}

/// Digits `c_lo..=c_hi` of the Hensel expansion `x = Σ c_i ℓ^i`.
pub fn digit_expansion(x: &LRational, lo: i64, hi: i64) -> Result<Vec<BigInt>> {
    if lo > hi {
        return Err(Error::Domain(format!("empty digit range [{lo}, {hi}]")));
    }
    if let Ok(v) = x.valuation() {
        if lo > v {
            return Err(Error::Domain(format!(
                "digit range starts at {lo}, above the valuation {v}"
            )));
        }
    }
    let l = x.prime().value();
    let mut y = x.value() * arith::rpow(l, -lo);
    let mut digits = Vec::with_capacity((hi - lo + 1) as usize);
    for _ in lo..=hi {
        let c = arith::rat_mod(&y, l).expect("y is ℓ-integral");
        y = (y - BigRational::from_integer(c.clone())) / BigRational::from_integer(l.clone());
        digits.push(c);
    }
    Ok(digits)
}

/// Writes `d = ℓ^h · d̃` with `ℓ ∤ d̃`.
pub fn split_disc(d: &BigInt, prime: &Prime) -> (u32, BigInt) {
    arith::split_power(d, prime.value())
}

fn unit_is_square(unit: &BigInt, prime: &Prime) -> bool {
    if prime.is_two() {
        unit.mod_floor(&BigInt::from(8)).is_one()
    } else {
        let l = prime.value();
        let exp: BigInt = (l - 1u32) / 2u32;
        unit.mod_floor(l).modpow(&exp, l).is_one()
    }
}

/// Whether `√d ∈ ℚ_ℓ`. Perfect squares are reported as [`Error::RationalSquare`].
pub fn sqrt_exists(d: &BigInt, prime: &Prime) -> Result<bool> {
    if d.is_zero() {
        return Err(Error::Domain("square root of zero".into()));
    }
    if arith::is_perfect_square(d) {
        return Err(Error::RationalSquare(d.to_string()));
    }
    let (h, unit) = split_disc(d, prime);
    Ok(h % 2 == 0 && unit_is_square(&unit, prime))
}

/// Tonelli-Shanks: some `x` with `x² ≡ n (mod ℓ)`, for odd `ℓ` and a residue `n`.
fn sqrt_mod_prime(n: &BigInt, l: &BigInt) -> BigInt {
    let n = n.mod_floor(l);
    let one = BigInt::one();
    let two = BigInt::from(2);
    let l1 = l - 1u32;
    let (s, q) = arith::split_power(&l1, &two);
    let mut z = two.clone();
    while z.modpow(&(&l1 / 2u32), l) != l1 {
        z += 1u32;
    }
    let mut m = s;
    let mut c = z.modpow(&q, l);
    let mut t = n.modpow(&q, l);
    let mut r = n.modpow(&((&q + 1u32) / 2u32), l);
    while !t.is_one() {
        let mut i = 0;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2) % l;
            i += 1;
        }
        let b = c.modpow(&(&one << (m - i - 1) as usize), l);
        m = i;
        c = (&b * &b) % l;
        t = (t * &c) % l;
        r = (r * b) % l;
    }
    r
}

/// Lifts a 2-adic square root of `unit ≡ 1 (mod 8)` from its residue mod 4.
fn lift_two_adic(unit: &BigInt, start_mod4: &BigInt, k: u32) -> BigInt {
    let two = BigInt::from(2);
    let mut x = start_mod4.mod_floor(&BigInt::from(4));
    let mut j = 2;
    while j < k {
        let diff = unit - &x * &x;
        let t = (diff / pow(&two, j + 1)).mod_floor(&two);
        x += t * pow(&two, j);
        j += 1;
    }
    x.mod_floor(&pow(&two, k))
}

/// The branch residues of the two ℓ-adic square roots of the unit `unit`,
/// sorted ascending. Empty when the unit is not a square in `ℚ_ℓ`.
pub fn sqrt_branches(unit: &BigInt, prime: &Prime) -> Vec<BigInt> {
    if !unit_is_square(unit, prime) {
        return Vec::new();
    }
    let mut out = if prime.is_two() {
        vec![
            lift_two_adic(unit, &BigInt::one(), 3),
            lift_two_adic(unit, &BigInt::from(3), 3),
        ]
    } else {
        let l = prime.value();
        let r = sqrt_mod_prime(unit, l);
        vec![r.clone(), l - r]
    };
    out.sort();
    out
}

/// A square root of an ℓ-adic unit known modulo `ℓ^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HenselRoot {
    delta_mod: BigInt,
    modulus_exp: u32,
    target: BigInt,
    branch: BigInt,
    prime: Prime,
}

impl HenselRoot {
    pub fn residue(&self) -> &BigInt {
        &self.delta_mod
    }

    pub fn precision(&self) -> u32 {
        self.modulus_exp
    }

    pub fn target(&self) -> &BigInt {
        &self.target
    }

    pub fn branch(&self) -> &BigInt {
        &self.branch
    }

    /// Recomputes the root to precision `k`; lower digits are unchanged.
    pub fn lift(&self, k: u32) -> HenselRoot {
        hensel_sqrt(&self.target, &self.prime, &self.branch, k).expect("branch was validated")
    }
}

fn invalid_branch(d: &BigInt, prime: &Prime, branch: &BigInt) -> Error {
    let valid: Vec<String> = sqrt_branches(d, prime)
        .iter()
        .map(|b| b.to_string())
        .collect();
    Error::InvalidBranch {
        branch: branch.to_string(),
        disc: d.to_string(),
        prime: prime.to_string(),
        valid: if valid.is_empty() {
            "none".into()
        } else {
            valid.join(", ")
        },
    }
}

/// `δ mod ℓ^k` for the square root `δ` of the unit `d` selected by `branch`
/// (a residue mod `ℓ`, or mod 8 when `ℓ = 2`).
pub fn hensel_sqrt(d: &BigInt, prime: &Prime, branch: &BigInt, k: u32) -> Result<HenselRoot> {
    let l = prime.value();
    if (d % l).is_zero() {
        return Err(Error::Domain(format!("{l} divides {d}")));
    }
    let bmod = prime.branch_modulus();
    let branch = branch.mod_floor(&bmod);
    let residue = if prime.is_two() {
        if !d.mod_floor(&bmod).is_one() || branch.is_even() {
            return Err(invalid_branch(d, prime, &branch));
        }
        let root = lift_two_adic(d, &branch, k.max(3));
        if root.mod_floor(&bmod) != branch {
            return Err(invalid_branch(d, prime, &branch));
        }
        root.mod_floor(&prime.pow(k))
    } else {
        if branch.is_zero() || !(&branch * &branch - d).mod_floor(l).is_zero() {
            return Err(invalid_branch(d, prime, &branch));
        }
        newton_lift(d, l, &branch, k)
    };
    Ok(HenselRoot {
        delta_mod: residue,
        modulus_exp: k,
        target: d.clone(),
        branch,
        prime: prime.clone(),
    })
}

/// Newton iteration `x ← x - (x² - d)/(2x)`, doubling the precision each step.
fn newton_lift(d: &BigInt, l: &BigInt, start: &BigInt, k: u32) -> BigInt {
    if k == 0 {
        return BigInt::zero();
    }
    let mut x = start.mod_floor(l);
    let mut prec = 1u32;
    while prec < k {
        prec = (2 * prec).min(k);
        let m = pow(l, prec);
        let inv = arith::mod_inverse(&(&x * 2u32), &m).expect("2x is a unit");
        x = (&x - (&x * &x - d) * inv).mod_floor(&m);
    }
    x
}
