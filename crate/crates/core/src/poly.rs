//! Exact multivariate polynomials in canonical form.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeff::Rational;
use crate::error::{AlgebraError, Result};
use crate::ring::{Monomial, PolynomialRing, MAX_VARS};

/// Result of [`Polynomial::homogeneous_degree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Homogeneity {
    /// The zero polynomial: homogeneous of every degree.
    Any,
    Degree(i64),
    NotHomogeneous,
}

impl Homogeneity {
    /// Whether a polynomial with this homogeneity may sit in degree `d`.
    pub fn admits(&self, d: i64) -> bool {
        match self {
            Homogeneity::Any => true,
            Homogeneity::Degree(e) => *e == d,
            Homogeneity::NotHomogeneous => false,
        }
    }
}

/// A polynomial over a [`PolynomialRing`].
///
/// Terms are stored in strictly descending monomial order with nonzero,
/// ring-normalized coefficients, so structural equality is equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: PolynomialRing,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(ring: PolynomialRing) -> Self {
        Polynomial { ring, terms: Vec::new() }
    }

    pub fn constant(ring: PolynomialRing, c: impl Into<Rational>) -> Result<Self> {
        Self::from_terms(ring, vec![(Monomial::one(), c.into())])
    }

    pub fn one(ring: PolynomialRing) -> Self {
        Polynomial { ring, terms: vec![(Monomial::one(), Rational::one())] }
    }

    /// The variable `t_{i+1}`.
    pub fn var(ring: PolynomialRing, i: usize) -> Self {
        assert!(i < ring.num_vars, "variable index out of range");
        Polynomial { ring, terms: vec![(Monomial::var(i), Rational::one())] }
    }

    pub fn monomial(ring: PolynomialRing, m: Monomial, c: impl Into<Rational>) -> Result<Self> {
        Self::from_terms(ring, vec![(m, c.into())])
    }

    /// Builds a polynomial from arbitrary terms: combines duplicates, drops
    /// zeros and normalizes coefficients for the ring.
    pub fn from_terms(ring: PolynomialRing, mut terms: Vec<(Monomial, Rational)>) -> Result<Self> {
        for (m, _) in &terms {
            if m.support().any(|i| i >= ring.num_vars) {
                return Err(AlgebraError::DimensionMismatch(format!(
                    "monomial {m:?} uses a variable outside t1..t{}",
                    ring.num_vars
                )));
            }
        }
        terms.sort_by(|a, b| ring.order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = ring.coefficients.normalize(&c)?;
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = ring.coefficients.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Ok(Polynomial { ring, terms: out })
    }

    pub(crate) fn from_sorted_terms_unchecked(ring: PolynomialRing, terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { ring, terms }
    }

    pub fn ring(&self) -> &PolynomialRing {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn constant_term(&self) -> Rational {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.iter().find(|(tm, _)| tm == m).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn homogeneous_degree(&self) -> Homogeneity {
        let mut it = self.terms.iter().map(|(m, _)| self.ring.weighted_degree(m));
        match it.next() {
            None => Homogeneity::Any,
            Some(d) if it.all(|e| e == d) => Homogeneity::Degree(d),
            Some(_) => Homogeneity::NotHomogeneous,
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(AlgebraError::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let ring = self.ring;
        let coeffs = ring.coefficients;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ring.order.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((*mb, cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = coeffs.add(ca, cb);
                    if !c.is_zero() {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Ok(Polynomial { ring, terms: out })
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.ring.coefficients;
        Polynomial { ring: self.ring, terms: self.terms.iter().map(|(m, c)| (*m, coeffs.neg(c))).collect() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let coeffs = self.ring.coefficients;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                terms.push((ma.mul(mb), coeffs.mul(ca, cb)));
            }
        }
        Self::from_terms(self.ring, terms)
    }

    pub fn scale(&self, c: &Rational) -> Result<Self> {
        let c = self.ring.coefficients.normalize(c)?;
        if c.is_zero() {
            return Ok(Self::zero(self.ring));
        }
        let coeffs = self.ring.coefficients;
        let terms = self.terms.iter().map(|(m, a)| (*m, coeffs.mul(a, &c))).filter(|(_, a)| !a.is_zero()).collect();
        Ok(Polynomial { ring: self.ring, terms })
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial { ring: self.ring, terms: self.terms.iter().map(|(tm, c)| (tm.mul(m), c.clone())).collect() }
    }

    /// Re-reads the same terms in another ring with the same or more
    /// variables (coefficients re-normalized).
    pub fn embed(&self, ring: PolynomialRing) -> Result<Self> {
        if ring.num_vars < self.ring.num_vars || ring.var_weight != self.ring.var_weight {
            return Err(AlgebraError::RingMismatch);
        }
        Self::from_terms(ring, self.terms.clone())
    }

    /// Parses the text format `3*t1^2*t3 - t2 + 1/2`.
    pub fn parse(ring: PolynomialRing, s: &str) -> Result<Self> {
        let err = |msg: &str| AlgebraError::Parse(format!("{msg} in `{s}`"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty polynomial"));
        }
        let mut terms = Vec::new();
        let bytes = compact.as_bytes();
        let mut start = 0;
        let mut pieces = Vec::new();
        for (i, &b) in bytes.iter().enumerate() {
            if (b == b'+' || b == b'-') && i > 0 && !matches!(bytes[i - 1], b'^' | b'*' | b'/' | b'+' | b'-') {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);
        for piece in pieces {
            let mut sign = Rational::one();
            let mut body = piece;
            while let Some(rest) = body.strip_prefix('-').or_else(|| body.strip_prefix('+')) {
                if body.starts_with('-') {
                    sign = sign.neg();
                }
                body = rest;
            }
            if body.is_empty() {
                return Err(err("dangling sign"));
            }
            let mut coeff = sign;
            let mut exps = [0u32; MAX_VARS];
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(err("empty factor"));
                }
                if let Some(rest) = factor.strip_prefix('t') {
                    let (idx, exp) = match rest.split_once('^') {
                        Some((i, e)) => (i, e.parse::<u32>().map_err(|_| err("bad exponent"))?),
                        None => (rest, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| err("bad variable index"))?;
                    if idx == 0 || idx > ring.num_vars {
                        return Err(err(&format!("variable t{idx} outside t1..t{}", ring.num_vars)));
                    }
                    exps[idx - 1] += exp;
                } else {
                    let c: Rational = factor.parse().map_err(|_| err("bad coefficient"))?;
                    coeff = coeff.mul(&c);
                }
            }
            if exps.iter().any(|&e| e > 255) {
                return Err(err("exponent too large"));
            }
            terms.push((Monomial::from_exponents(&exps[..ring.num_vars]), coeff));
        }
        Self::from_terms(ring, terms)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let n = self.ring.num_vars;
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&m.display(n))?;
            } else {
                write!(f, "{abs}*{}", m.display(n))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::CoefficientRing;
    use proptest::prelude::*;

    fn ring(c: CoefficientRing, n: usize, w: u32) -> PolynomialRing {
        PolynomialRing::new(c, n, w).unwrap()
    }

    fn p(r: PolynomialRing, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = ring(CoefficientRing::Rationals, 2, 1);
        let prod = p(r, "t1 + t2").mul(&p(r, "t1 - t2")).unwrap();
        assert_eq!(prod, p(r, "t1^2 - t2^2"));
    }

    #[test]
    fn frobenius_in_characteristic_two() {
        let r = ring(CoefficientRing::PrimeField(2), 2, 1);
        let s = p(r, "t1 + t2");
        assert_eq!(s.mul(&s).unwrap(), p(r, "t1^2 + t2^2"));
    }

    #[test]
    fn zero_times_anything_has_no_terms() {
        let r = ring(CoefficientRing::Integers, 2, 1);
        let z = Polynomial::zero(r).mul(&p(r, "t1")).unwrap();
        assert!(z.is_zero());
        assert!(z.terms().is_empty());
    }

    #[test]
    fn homogeneity_examples() {
        let r2 = ring(CoefficientRing::Rationals, 2, 2);
        assert_eq!(p(r2, "t1*t2").homogeneous_degree(), Homogeneity::Degree(4));
        let r1 = ring(CoefficientRing::Rationals, 2, 1);
        assert_eq!(p(r1, "t1 + t2^2").homogeneous_degree(), Homogeneity::NotHomogeneous);
        assert_eq!(p(r1, "t1").homogeneous_degree(), Homogeneity::Degree(1));
        assert_eq!(Polynomial::zero(r1).homogeneous_degree(), Homogeneity::Any);
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = p(ring(CoefficientRing::Rationals, 2, 1), "t1");
        let b = p(ring(CoefficientRing::Rationals, 3, 1), "t1");
        assert_eq!(a.add(&b), Err(AlgebraError::RingMismatch));
    }

    #[test]
    fn text_format() {
        let r = ring(CoefficientRing::Rationals, 3, 1);
        let q = p(r, "3*t1^2*t3 - t2 + 1/2");
        assert_eq!(q.to_string(), "3*t1^2*t3 - t2 + 1/2");
        assert!(Polynomial::parse(r, "t4").is_err());
        assert!(Polynomial::parse(r, "2*").is_err());
        assert_eq!(p(r, "-t1 - -t1"), Polynomial::zero(r));
    }

    #[test]
    fn integers_reject_fractions() {
        let r = ring(CoefficientRing::Integers, 1, 1);
        assert!(Polynomial::parse(r, "t1/2").is_err() || Polynomial::parse(r, "1/2*t1").is_err());
        assert!(Polynomial::parse(r, "1/2*t1").is_err());
    }

    fn arb_poly(r: PolynomialRing) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..5), 0..6).prop_map(move |ts| {
            let terms = ts
                .into_iter()
                .map(|((a, b, c), k)| (Monomial::from_exponents(&[a, b, c]), Rational::from_int(k)))
                .collect();
            Polynomial::from_terms(r, terms).unwrap()
        })
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(q in arb_poly(ring(CoefficientRing::Rationals, 3, 1))) {
            let back = Polynomial::parse(*q.ring(), &q.to_string()).unwrap();
            prop_assert_eq!(back, q);
        }

        #[test]
        fn distributive(a in arb_poly(ring(CoefficientRing::PrimeField(5), 3, 1)),
                        b in arb_poly(ring(CoefficientRing::PrimeField(5), 3, 1)),
                        c in arb_poly(ring(CoefficientRing::PrimeField(5), 3, 1))) {
            let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
            let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
