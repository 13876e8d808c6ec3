//! Integer helpers shared by the expansion modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn pow(base: &BigInt, exp: u32) -> BigInt {
    num_traits::pow(base.clone(), exp as usize)
}

/// `base^exp` as a rational, for possibly negative `exp`.
pub fn rpow(base: &BigInt, exp: i64) -> BigRational {
    let p = pow(base, exp.unsigned_abs() as u32);
    if exp >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// Splits `n = p^k * m` with `p` not dividing `m`. `n` must be nonzero.
pub fn split_power(n: &BigInt, p: &BigInt) -> (u32, BigInt) {
    debug_assert!(!n.is_zero());
    let mut k = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return (k, m);
        }
        m = q;
        k += 1;
    }
}

/// p-adic valuation of a nonzero integer.
pub fn int_valuation(n: &BigInt, p: &BigInt) -> u32 {
    split_power(n, p).0
}

/// p-adic valuation of a nonzero rational.
pub fn rat_valuation(x: &BigRational, p: &BigInt) -> i64 {
    int_valuation(x.numer(), p) as i64 - int_valuation(x.denom(), p) as i64
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Residue of the rational `x` modulo `m`; the denominator must be invertible.
pub fn rat_mod(x: &BigRational, m: &BigInt) -> Option<BigInt> {
    let inv = mod_inverse(x.denom(), m)?;
    Some((x.numer() * inv).mod_floor(m))
}

/// Floor of the square root of a non-negative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of a negative integer");
    n.sqrt()
}

pub fn perfect_square_root(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = isqrt(n);
    (&r * &r == *n).then_some(r)
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    perfect_square_root(n).is_some()
}

/// Exact square root of a non-negative rational, when it exists.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    let n = perfect_square_root(x.numer())?;
    let d = perfect_square_root(x.denom())?;
    Some(BigRational::new(n, d))
}

/// Smallest `k >= 0` with `base^k >= x`, for integers `x >= 1`, `base >= 2`.
pub fn ceil_log(x: &BigInt, base: &BigInt) -> u32 {
    let mut k = 0;
    let mut acc = BigInt::one();
    while acc < *x {
        acc *= base;
        k += 1;
    }
    k
}

const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Deterministic primality test, valid for `n < 3.3 * 10^24`.
///
/// Returns `None` when `n` is beyond the range where the fixed Miller-Rabin
/// bases are known to be a proof.
pub fn is_prime(n: &BigInt) -> Option<bool> {
    let two = BigInt::from(2);
    if *n < two {
        return Some(false);
    }
    for b in MR_BASES {
        let b = BigInt::from(b);
        if *n == b {
            return Some(true);
        }
        if (n % &b).is_zero() {
            return Some(false);
        }
    }
    let limit: BigInt = "3317044064679887385961981".parse().unwrap();
    if *n >= limit {
        return None;
    }
    let n1 = n - 1u32;
    let (s, d) = split_power(&n1, &two);
    'witness: for b in MR_BASES {
        let mut x = BigInt::from(b).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return Some(false);
    }
    Some(true)
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter(|(_, &p)| p)
        .map(|(i, _)| i as u64)
        .collect()
}

pub fn to_i64(n: &BigInt) -> Option<i64> {
    n.to_i64()
}
