#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ruban::padic::{self, LRational, Prime};
use ruban::QuadraticSurd;

pub const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn prime(l: u64) -> Prime {
    Prime::new(l).unwrap()
}

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Nonzero `p/q` with `|p|, q ≤ max`.
pub fn random_rational(rng: &mut ChaCha8Rng, l: &Prime, max: i64) -> LRational {
    loop {
        let p = rng.gen_range(-max..=max);
        let q = rng.gen_range(1..=max);
        if p != 0 {
            return LRational::new(p, q, l).unwrap();
        }
    }
}

/// Branch residues of `√delta` in `ℚ_ℓ`, empty when there is no root.
pub fn branches(delta: i64, l: &Prime) -> Vec<BigInt> {
    match padic::sqrt_exists(&int(delta), l) {
        Ok(true) => {
            let (_, unit) = padic::split_disc(&int(delta), l);
            padic::sqrt_branches(&unit, l)
        }
        _ => Vec::new(),
    }
}

/// `(b + δ)/(ℓ^f c)` on the branch numbered `pick`, if `√delta ∈ ℚ_ℓ`.
pub fn surd(delta: i64, b: i64, c: i64, f: i64, l: &Prime, pick: usize) -> Option<QuadraticSurd> {
    let br = branches(delta, l);
    if br.is_empty() || c == 0 {
        return None;
    }
    QuadraticSurd::new(delta, b, c, f, l, br[pick % br.len()].clone()).ok()
}

pub fn random_surd(rng: &mut ChaCha8Rng, delta_max: i64) -> QuadraticSurd {
    loop {
        let l = prime(PRIMES[rng.gen_range(0..PRIMES.len())]);
        let delta = rng.gen_range(2..=delta_max);
        let b = rng.gen_range(-20..=20);
        let c = rng.gen_range(-12..=12);
        let f = rng.gen_range(-2..=3);
        if let Some(s) = surd(delta, b, c, f, &l, rng.gen_range(0..2)) {
            return s;
        }
    }
}
