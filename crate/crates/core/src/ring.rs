//! Monomials, monomial orders and graded polynomial rings.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeff::CoefficientRing;
use crate::error::{AlgebraError, Result};

pub const MAX_VARS: usize = 16;

/// An exponent vector `t1^a1 ... tn^an`. Exponents are bounded by 255.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    deg: u16,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// The variable `t_{i+1}` (zero-based index).
    pub fn var(i: usize) -> Self {
        let mut m = Self::default();
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut m = Self::default();
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u8::try_from(e).expect("exponent overflow");
            m.deg += e as u16;
        }
        m
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, n: usize) -> Vec<u32> {
        self.exps[..n].iter().map(|&e| e as u32).collect()
    }

    /// Unweighted total degree.
    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        m.deg += other.deg;
        m
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Self) -> Self {
        debug_assert!(self.divides(other));
        let mut m = *other;
        for (a, b) in m.exps.iter_mut().zip(self.exps.iter()) {
            *a -= *b;
        }
        m.deg -= self.deg;
        m
    }

    pub fn checked_div(&self, divisor: &Self) -> Option<Self> {
        divisor.divides(self).then(|| divisor.quotient_of(self))
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut m = Self::default();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(other.exps[i]);
            m.deg += m.exps[i] as u16;
        }
        m
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut m = Self::default();
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].min(other.exps[i]);
            m.deg += m.exps[i] as u16;
        }
        m
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Support of the monomial as a list of zero-based variable indices.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }

    /// All monomials of unweighted degree `deg` in `n` variables, in
    /// descending order for `order`.
    pub fn all_of_degree(n: usize, deg: u32, order: MonomialOrder) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = [0u32; MAX_VARS];
        fn rec(i: usize, n: usize, left: u32, cur: &mut [u32; MAX_VARS], out: &mut Vec<Monomial>) {
            if i + 1 == n {
                cur[i] = left;
                out.push(Monomial::from_exponents(&cur[..n]));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, n, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if n == 0 {
            if deg == 0 {
                out.push(Monomial::one());
            }
            return out;
        }
        rec(0, n, deg, &mut cur, &mut out);
        out.sort_by(|a, b| order.cmp(b, a));
        out
    }

    pub fn display(&self, n: usize) -> String {
        if self.is_one() {
            return "1".into();
        }
        let mut parts = Vec::new();
        for i in 0..n {
            match self.exps[i] {
                0 => {}
                1 => parts.push(format!("t{}", i + 1)),
                e => parts.push(format!("t{}^{}", i + 1, e)),
            }
        }
        parts.join("*")
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display(MAX_VARS))
    }
}

/// Total order on monomials. All orders here refine the total degree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    DegLex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => a.deg.cmp(&b.deg).then_with(|| {
                for i in (0..MAX_VARS).rev() {
                    if a.exps[i] != b.exps[i] {
                        return b.exps[i].cmp(&a.exps[i]);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::DegLex => a.deg.cmp(&b.deg).then_with(|| a.exps.cmp(&b.exps)),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
        }
    }
}

/// `k[t1, ..., tn]` with every variable of weight `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolynomialRing {
    pub coefficients: CoefficientRing,
    pub num_vars: usize,
    pub var_weight: u32,
    #[serde(default)]
    pub order: MonomialOrder,
}

impl PolynomialRing {
    pub fn new(coefficients: CoefficientRing, num_vars: usize, var_weight: u32) -> Result<Self> {
        if num_vars == 0 {
            return Err(AlgebraError::InvalidRing("at least one variable is required".into()));
        }
        if num_vars > MAX_VARS {
            return Err(AlgebraError::TooManyVariables { got: num_vars, max: MAX_VARS });
        }
        if var_weight == 0 {
            return Err(AlgebraError::InvalidRing("variable weight must be positive".into()));
        }
        if let CoefficientRing::PrimeField(p) = coefficients {
            CoefficientRing::prime_field(p)?;
        }
        Ok(PolynomialRing { coefficients, num_vars, var_weight, order: MonomialOrder::default() })
    }

    pub fn with_order(mut self, order: MonomialOrder) -> Self {
        self.order = order;
        self
    }

    pub fn with_coefficients(mut self, coefficients: CoefficientRing) -> Self {
        self.coefficients = coefficients;
        self
    }

    /// The same ring with one more variable of the same weight.
    pub fn extended(&self) -> Result<Self> {
        let mut r = *self;
        r.num_vars += 1;
        if r.num_vars > MAX_VARS {
            return Err(AlgebraError::TooManyVariables { got: r.num_vars, max: MAX_VARS });
        }
        Ok(r)
    }

    pub fn weight(&self) -> i64 {
        self.var_weight as i64
    }

    pub fn weighted_degree(&self, m: &Monomial) -> i64 {
        self.weight() * m.degree() as i64
    }

    /// `dim_k R_d`.
    pub fn dim_at(&self, d: i64) -> u64 {
        let w = self.weight();
        if d < 0 || d % w != 0 {
            return 0;
        }
        binomial((d / w) as u64 + self.num_vars as u64 - 1, self.num_vars as u64 - 1)
    }

    pub fn monomials_of_degree(&self, d: i64) -> Vec<Monomial> {
        let w = self.weight();
        if d < 0 || d % w != 0 {
            return Vec::new();
        }
        Monomial::all_of_degree(self.num_vars, (d / w) as u32, self.order)
    }

    /// Same variables, weight and order; coefficients may differ.
    pub fn same_shape(&self, other: &Self) -> bool {
        self.num_vars == other.num_vars && self.var_weight == other.var_weight && self.order == other.order
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}
