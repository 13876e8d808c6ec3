//! Plain arithmetic in `ℚ(√d)`, used as an independent check on the surd
//! recurrences and for minimal polynomials.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `x + y·√d` for a fixed non-square integer `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadElem {
    pub x: BigRational,
    pub y: BigRational,
    pub d: BigInt,
}

impl QuadElem {
    pub fn new(x: BigRational, y: BigRational, d: BigInt) -> Self {
        QuadElem { x, y, d }
    }

    pub fn rational(x: BigRational, d: BigInt) -> Self {
        QuadElem {
            x,
            y: BigRational::zero(),
            d,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadElem {
            x: self.x.clone(),
            y: -self.y.clone(),
            d: self.d.clone(),
        }
    }

    pub fn norm(&self) -> BigRational {
        &self.x * &self.x - &self.y * &self.y * BigRational::from_integer(self.d.clone())
    }

    pub fn trace(&self) -> BigRational {
        &self.x + &self.x
    }

    pub fn recip(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(QuadElem {
            x: &self.x / &n,
            y: -(&self.y / &n),
            d: self.d.clone(),
        })
    }

    /// Primitive integer polynomial `[A, B, C]`, `A > 0`, vanishing at this element:
    /// degree two when `y ≠ 0`, otherwise `[0, q, -p]` for the rational `p/q`.
    pub fn min_poly(&self) -> [BigInt; 3] {
        if self.y.is_zero() {
            return [
                BigInt::zero(),
                self.x.denom().clone(),
                -self.x.numer().clone(),
            ];
        }
        let t = self.trace();
        let n = self.norm();
        let den = t.denom().lcm(n.denom());
        let a = den.clone();
        let b = -(t * BigRational::from_integer(den.clone())).to_integer();
        let c = (n * BigRational::from_integer(den)).to_integer();
        let g = a.gcd(&b).gcd(&c);
        [a / &g, b / &g, c / &g]
    }
}

impl Add for &QuadElem {
    type Output = QuadElem;
    fn add(self, o: &QuadElem) -> QuadElem {
        QuadElem::new(&self.x + &o.x, &self.y + &o.y, self.d.clone())
    }
}

impl Sub for &QuadElem {
    type Output = QuadElem;
    fn sub(self, o: &QuadElem) -> QuadElem {
        QuadElem::new(&self.x - &o.x, &self.y - &o.y, self.d.clone())
    }
}

impl Mul for &QuadElem {
    type Output = QuadElem;
    fn mul(self, o: &QuadElem) -> QuadElem {
        let d = BigRational::from_integer(self.d.clone());
        QuadElem::new(
            &self.x * &o.x + &self.y * &o.y * d,
            &self.x * &o.y + &self.y * &o.x,
            self.d.clone(),
        )
    }
}

/// Evaluates `A·x² + B·x + C` on a field element.
pub fn eval_poly(poly: &[BigInt; 3], x: &QuadElem) -> QuadElem {
    let k = |n: &BigInt| QuadElem::rational(BigRational::from_integer(n.clone()), x.d.clone());
    let x2 = x * x;
    let t = &(&k(&poly[0]) * &x2) + &(&k(&poly[1]) * x);
    &t + &k(&poly[2])
}

/// Sign of `x + y·√d` under the real embedding `√d ↦ +√d`, for `d > 0`.
pub fn real_sign(x: &BigRational, y: &BigRational, d: &BigInt) -> i32 {
    let sx = sign(x);
    let sy = sign(y);
    if sy == 0 {
        return sx;
    }
    if sx == 0 || sx == sy {
        return if sx == 0 { sy } else { sx };
    }
    let x2 = x * x;
    let y2d = y * y * BigRational::from_integer(d.clone());
    if x2 > y2d {
        sx
    } else {
        sy
    }
}

fn sign(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Converts `(b + u·√d)/den` into a field element.
pub fn from_parts(b: &BigInt, u: &BigInt, den: &BigRational, d: &BigInt) -> QuadElem {
    let one = BigRational::one();
    let inv = &one / den;
    QuadElem::new(
        BigRational::from_integer(b.clone()) * &inv,
        BigRational::from_integer(u.clone()) * inv,
        d.clone(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn recip_round_trip() {
        let x = QuadElem::new(r(1, 12), r(1, 12), 13.into());
        let y = x.recip().unwrap();
        let one = &x * &y;
        assert_eq!(one.x, r(1, 1));
        assert!(one.y.is_zero());
    }

    #[test]
    fn min_poly_of_surd() {
        let x = QuadElem::new(r(2, 3), r(-1, 3), 13.into());
        let p = x.min_poly();
        assert_eq!(p, [3.into(), (-4).into(), (-3).into()]);
        assert!(eval_poly(&p, &x).is_zero());
    }

    #[test]
    fn signs() {
        let d = BigInt::from(13);
        assert_eq!(real_sign(&r(2, 1), &r(-1, 1), &d), -1);
        assert_eq!(real_sign(&r(4, 1), &r(-1, 1), &d), 1);
        assert_eq!(real_sign(&r(0, 1), &r(-1, 1), &d), -1);
    }
}
