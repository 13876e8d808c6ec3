//! Closed intervals with exact rational endpoints.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith;

/// Width of enclosures when the caller does not ask for anything else: `2^-32`.
pub const DEFAULT_BITS: u32 = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        RationalInterval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        RationalInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self::point(BigRational::from_integer(n.into()))
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn add_rational(&self, x: &BigRational) -> Self {
        Self::new(&self.lo + x, &self.hi + x)
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn scale(&self, x: &BigRational) -> Self {
        if x.is_negative() {
            Self::new(&self.hi * x, &self.lo * x)
        } else {
            Self::new(&self.lo * x, &self.hi * x)
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Self::new(lo, hi)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::integer(1);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let hi = (-self.lo.clone()).max(self.hi.clone());
            Self::new(BigRational::zero(), hi)
        }
    }

    pub fn max_with(&self, x: &BigRational) -> Self {
        Self::new(self.lo.clone().max(x.clone()), self.hi.clone().max(x.clone()))
    }

    /// Outward rounding of both endpoints to multiples of `2^-bits`.
    pub fn round_out(&self, bits: u32) -> Self {
        Self::new(round_down(&self.lo, bits), round_up(&self.hi, bits))
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

fn two_pow(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

pub fn round_down(x: &BigRational, bits: u32) -> BigRational {
    let s = two_pow(bits);
    BigRational::new((x * BigRational::from_integer(s.clone())).floor().to_integer(), s)
}

pub fn round_up(x: &BigRational, bits: u32) -> BigRational {
    let s = two_pow(bits);
    BigRational::new((x * BigRational::from_integer(s.clone())).ceil().to_integer(), s)
}

/// `√x` for `x ≥ 0`, exact when `x` is a rational square, otherwise of width `2^-bits`.
pub fn sqrt_interval(x: &BigRational, bits: u32) -> RationalInterval {
    assert!(!x.is_negative(), "square root of a negative number");
    if let Some(r) = arith::rational_sqrt(x) {
        return RationalInterval::point(r);
    }
    let s = two_pow(bits);
    let scaled = (x * BigRational::from_integer(&s * &s)).floor().to_integer();
    let k = arith::isqrt(&scaled);
    RationalInterval::new(BigRational::new(k.clone(), s.clone()), BigRational::new(k + 1u32, s))
}

/// `log_base x` for rationals `x > 0`, `base > 1`, by the squaring method: the
/// digits of the mantissa come from comparing powers against `base`.
pub fn log_interval(x: &BigRational, base: &BigRational, bits: u32) -> RationalInterval {
    assert!(x.is_positive(), "log of a non-positive number");
    assert!(*base > BigRational::one(), "log base must exceed 1");
    let one = BigRational::one();
    let mut k: i64 = 0;
    let mut y = x.clone();
    while y >= *base {
        y /= base;
        k += 1;
    }
    while y < one {
        y *= base;
        k -= 1;
    }
    if y == one {
        return RationalInterval::integer(k);
    }
    // fixed point: y ∈ [lo, hi] / 2^guard
    let guard = (bits + 48) as usize;
    let (bn, bd) = (base.numer().clone(), base.denom().clone());
    let unit = BigInt::one() << guard;
    let scaled = &y * BigRational::from_integer(unit.clone());
    let mut lo = scaled.floor().to_integer();
    let mut hi = scaled.ceil().to_integer();
    let above = |m: &BigInt| m * &bd >= &bn << guard;
    let below = |m: &BigInt| m * &bd < &bn << guard;
    let mut acc = BigRational::from_integer(BigInt::from(k));
    let mut step = one.clone();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for _ in 0..bits {
        step *= &half;
        let sq_lo = (&lo * &lo) >> guard;
        let sq_hi: BigInt = ((&hi * &hi) + &unit - 1u32) >> guard;
        if above(&sq_lo) {
            acc += &step;
            lo = (sq_lo * &bd) / &bn;
            hi = (sq_hi * &bd + &bn - 1u32) / &bn;
            if lo < unit {
                lo = unit.clone();
            }
        } else if below(&sq_hi) {
            lo = sq_lo;
            hi = sq_hi;
        } else {
            let w = &step * BigRational::from_integer(2.into());
            return RationalInterval::new(acc.clone(), acc + w);
        }
    }
    RationalInterval::new(acc.clone(), acc + step)
}

/// `log_base` of a positive interval, by monotonicity.
pub fn log_of_interval(x: &RationalInterval, base: &BigRational, bits: u32) -> RationalInterval {
    let lo = log_interval(x.lo(), base, bits);
    let hi = log_interval(x.hi(), base, bits);
    RationalInterval::new(lo.lo, hi.hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sqrt_encloses() {
        let iv = sqrt_interval(&r(2, 1), DEFAULT_BITS);
        assert!(iv.lo() * iv.lo() <= r(2, 1) && iv.hi() * iv.hi() >= r(2, 1));
        assert_eq!(iv.width(), BigRational::new(1.into(), BigInt::one() << 32usize));
        assert_eq!(sqrt_interval(&r(9, 4), 8), RationalInterval::point(r(3, 2)));
    }

    #[test]
    fn log_brackets_powers() {
        let b = r(3, 1);
        assert_eq!(log_interval(&r(81, 1), &b, 20), RationalInterval::integer(4));
        let iv = log_interval(&r(10, 1), &b, 20);
        // log_3 10 = 2.0959032...
        assert!(iv.contains(&r(2095903, 1000000)));
        assert!(iv.width() <= r(1, 1 << 19));
        let iv = log_interval(&r(1, 10), &b, 20);
        assert!(iv.contains(&r(-2095903, 1000000)));
    }
}
