//! Hilbert series and truncated Hilbert functions.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ring::binomial;

/// `numerator(q) / (1 - q^weight)^num_vars` with an integer Laurent numerator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    pub num_vars: usize,
    pub weight: u32,
    /// exponent -> coefficient, zero coefficients never stored
    pub numerator: BTreeMap<i64, i64>,
}

impl HilbertSeries {
    pub fn zero(num_vars: usize, weight: u32) -> Self {
        HilbertSeries { num_vars, weight, numerator: BTreeMap::new() }
    }

    /// Series of the free module with generators in the given degrees.
    pub fn free(num_vars: usize, weight: u32, shifts: &[i64]) -> Self {
        let mut s = Self::zero(num_vars, weight);
        for &sh in shifts {
            s.add_term(sh, 1);
        }
        s
    }

    /// Series of `m[shift]`, the maximal ideal shifted.
    pub fn max_ideal(num_vars: usize, weight: u32, shift: i64) -> Self {
        // 1 - (1 - q^w)^n
        let mut s = Self::zero(num_vars, weight);
        for k in 1..=num_vars as u64 {
            let c = binomial(num_vars as u64, k) as i64;
            let sign = if k % 2 == 1 { 1 } else { -1 };
            s.add_term(shift + k as i64 * weight as i64, sign * c);
        }
        s
    }

    pub fn add_term(&mut self, exp: i64, coeff: i64) {
        let e = self.numerator.entry(exp).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.numerator.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.num_vars, self.weight), (other.num_vars, other.weight));
        let mut s = self.clone();
        for (&e, &c) in &other.numerator {
            s.add_term(e, c);
        }
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut neg = other.clone();
        for c in neg.numerator.values_mut() {
            *c = -*c;
        }
        self.add(&neg)
    }

    pub fn shifted(&self, by: i64) -> Self {
        HilbertSeries {
            num_vars: self.num_vars,
            weight: self.weight,
            numerator: self.numerator.iter().map(|(&e, &c)| (e + by, c)).collect(),
        }
    }

    /// Multiplication by `1/(1 - q^w)`: one more variable.
    pub fn with_extra_variable(&self) -> Self {
        HilbertSeries { num_vars: self.num_vars + 1, ..self.clone() }
    }

    /// Coefficient of `q^d` in the expansion.
    pub fn value_at(&self, d: i64) -> i64 {
        let w = self.weight as i64;
        let n = self.num_vars as u64;
        self.numerator
            .iter()
            .filter(|(&e, _)| e <= d && (d - e) % w == 0)
            .map(|(&e, &c)| c * binomial(((d - e) / w) as u64 + n - 1, n - 1) as i64)
            .sum()
    }

    /// Dimensions for degrees `0..=max_degree`.
    pub fn truncate(&self, max_degree: i64) -> Vec<i64> {
        (0..=max_degree).map(|d| self.value_at(d)).collect()
    }

    /// Smallest degree with a nonzero coefficient in the numerator.
    pub fn initial_degree(&self) -> Option<i64> {
        self.numerator.keys().next().copied()
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut num = String::new();
        for (k, (&e, &c)) in self.numerator.iter().enumerate() {
            let neg = c < 0;
            let a = c.abs();
            if k == 0 {
                if neg {
                    num.push('-');
                }
            } else {
                num.push_str(if neg { " - " } else { " + " });
            }
            let mono = match e {
                0 => String::new(),
                1 => "q".into(),
                e => format!("q^{e}"),
            };
            match (a, mono.is_empty()) {
                (_, true) => num.push_str(&a.to_string()),
                (1, false) => num.push_str(&mono),
                (_, false) => num.push_str(&format!("{a}*{mono}")),
            }
        }
        if num.is_empty() {
            num.push('0');
        }
        let base = if self.weight == 1 { "q".to_string() } else { format!("q^{}", self.weight) };
        write!(f, "({num})/(1 - {base})^{}", self.num_vars)
    }
}

/// Hilbert data of a graded module: a closed-form series or a truncated
/// Hilbert function over degrees `0..=D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HilbertData {
    ClosedForm(HilbertSeries),
    Truncated(Vec<i64>),
}

/// How [`crate::hilbert`]-style computations should report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HilbertMode {
    ClosedForm,
    Truncated(i64),
}

impl HilbertData {
    pub fn truncated(&self, max_degree: i64) -> Vec<i64> {
        match self {
            HilbertData::ClosedForm(s) => s.truncate(max_degree),
            HilbertData::Truncated(v) => v.iter().copied().take(max_degree as usize + 1).collect(),
        }
    }

    /// Whether both descriptions agree on every degree where both are defined.
    pub fn agrees_with(&self, other: &Self) -> bool {
        match (self, other) {
            (HilbertData::ClosedForm(a), HilbertData::ClosedForm(b)) => a == b,
            (HilbertData::ClosedForm(a), HilbertData::Truncated(t))
            | (HilbertData::Truncated(t), HilbertData::ClosedForm(a)) => a.truncate(t.len() as i64 - 1) == *t,
            (HilbertData::Truncated(a), HilbertData::Truncated(b)) => {
                let n = a.len().min(b.len());
                a[..n] == b[..n]
            }
        }
    }
}
