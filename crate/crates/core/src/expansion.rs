//! Convergent bookkeeping shared by rational and quadratic expansions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::rpow;
use crate::padic::{LRational, PartialQuotient, Prime};
use crate::quadratic_cf::QuadraticSurd;

/// One row of the cleared convergents: `p̃_n = ℓ^{s_n} p_n`, `q̃_n = ℓ^{s_n} q_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentRow {
    pub n: usize,
    pub p: BigInt,
    pub q: BigInt,
    pub s: u64,
}

impl ConvergentRow {
    pub fn p_value(&self, prime: &Prime) -> BigRational {
        BigRational::from_integer(self.p.clone()) * rpow(prime.value(), -(self.s as i64))
    }

    pub fn q_value(&self, prime: &Prime) -> BigRational {
        BigRational::from_integer(self.q.clone()) * rpow(prime.value(), -(self.s as i64))
    }
}

/// Running state of the `p̃, q̃` recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentState {
    prime: Prime,
    p: BigInt,
    p_prev: BigInt,
    q: BigInt,
    q_prev: BigInt,
    exps: Vec<u32>,
    s: u64,
    s_prev: u64,
}

impl ConvergentState {
    pub fn new(prime: &Prime) -> Self {
        ConvergentState {
            prime: prime.clone(),
            p: BigInt::one(),
            p_prev: BigInt::zero(),
            q: BigInt::zero(),
            q_prev: BigInt::zero(),
            exps: Vec::new(),
            s: 0,
            s_prev: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn row(&self) -> ConvergentRow {
        ConvergentRow {
            n: self.n(),
            p: self.p.clone(),
            q: self.q.clone(),
            s: self.s,
        }
    }

    /// Folds in the next partial quotient `a_n = r_n / ℓ^{e_n}`.
    pub fn push(&mut self, a: &PartialQuotient) {
        let r = a.numerator();
        let e = a.exponent();
        let (p, q) = if self.exps.is_empty() {
            (r.clone(), self.prime.pow(e))
        } else {
            let prev_e = *self.exps.last().unwrap();
            let w = self.prime.pow(e + prev_e);
            (
                r * &self.p + &w * &self.p_prev,
                r * &self.q + &w * &self.q_prev,
            )
        };
        self.p_prev = std::mem::replace(&mut self.p, p);
        self.q_prev = std::mem::replace(&mut self.q, q);
        self.s_prev = self.s;
        self.s += e as u64;
        self.exps.push(e);
    }

    /// `p̃_n q̃_{n-1} - p̃_{n-1} q̃_n = (-1)^n ℓ^{s_n + s_{n-1}}`.
    pub fn determinant_holds(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let lhs = &self.p * &self.q_prev - &self.p_prev * &self.q;
        let mut rhs = self.prime.pow((self.s + self.s_prev) as u32);
        if n % 2 == 1 {
            rhs = -rhs;
        }
        lhs == rhs
    }
}

/// A complete quotient `α_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompleteQuotient {
    Rational(LRational),
    Surd(QuadraticSurd),
}

impl std::fmt::Display for CompleteQuotient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CompleteQuotient::Rational(x) => write!(f, "{x}"),
            CompleteQuotient::Surd(s) => write!(f, "{s}"),
        }
    }
}

/// A computed prefix of an expansion: `a_0..a_{k-1}`, the complete quotients
/// `α_0..α_k` (the last one absent after termination) and the convergent rows
/// for `n = 0..=k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub prime: Prime,
    pub quotients: Vec<PartialQuotient>,
    pub complete: Vec<CompleteQuotient>,
    pub convergents: Vec<ConvergentRow>,
    pub terminated: bool,
}

impl Expansion {
    pub fn start(alpha: CompleteQuotient, prime: &Prime) -> (Self, ConvergentState) {
        let state = ConvergentState::new(prime);
        let exp = Expansion {
            prime: prime.clone(),
            quotients: Vec::new(),
            complete: vec![alpha],
            convergents: vec![state.row()],
            terminated: false,
        };
        (exp, state)
    }

    /// Appends `a_n` and, unless the expansion stops here, `α_{n+1}`.
    pub fn push(
        &mut self,
        state: &mut ConvergentState,
        a: PartialQuotient,
        next: Option<CompleteQuotient>,
    ) {
        state.push(&a);
        self.quotients.push(a);
        self.convergents.push(state.row());
        match next {
            Some(x) => self.complete.push(x),
            None => self.terminated = true,
        }
    }

    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.quotients.iter().map(|a| a.exponent()).collect()
    }
}

/// Rebuilds the convergent rows of a quotient list.
pub fn convergents_of(quotients: &[PartialQuotient], prime: &Prime) -> Vec<ConvergentRow> {
    let mut state = ConvergentState::new(prime);
    let mut rows = vec![state.row()];
    for a in quotients {
        state.push(a);
        rows.push(state.row());
    }
    rows
}

/// Checks the determinant identity at every row of a convergent table.
pub fn determinant_identity_holds(rows: &[ConvergentRow], prime: &Prime) -> bool {
    rows.windows(2).all(|w| {
        let (prev, cur) = (&w[0], &w[1]);
        let lhs = &cur.p * &prev.q - &prev.p * &cur.q;
        let mut rhs = prime.pow((cur.s + prev.s) as u32);
        if cur.n % 2 == 1 {
            rhs = -rhs;
        }
        lhs == rhs
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_elevenths() {
        let l = Prime::new(3).unwrap();
        let qs: Vec<_> = ["1", "1/3", "2/3"]
            .iter()
            .map(|s| PartialQuotient::parse(s, &l).unwrap())
            .collect();
        let rows = convergents_of(&qs, &l);
        let last = rows.last().unwrap();
        assert_eq!(
            last.p_value(&l) / last.q_value(&l),
            BigRational::new(17.into(), 11.into())
        );
        assert!(determinant_identity_holds(&rows, &l));
        let mut st = ConvergentState::new(&l);
        for a in &qs {
            st.push(a);
            assert!(st.determinant_holds());
        }
    }
}
