//! Homology Poincaré polynomials of `X_r`, `Y_r`, `Z_r` and of connected sums
//! of sphere products.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::ring::binomial;

use super::complexes::Variant;

/// A polynomial in `q` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PoincarePolynomial {
    pub coeffs: BTreeMap<u32, i64>,
}

impl PoincarePolynomial {
    pub fn add_term(&mut self, exp: u32, c: i64) {
        let e = self.coeffs.entry(exp).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coefficient(&self, exp: u32) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    /// Sum of the coefficients (total Betti number).
    pub fn total(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// `q^dim · P(1/q) = P(q)`.
    pub fn is_symmetric(&self, dim: u32) -> bool {
        self.coeffs.iter().all(|(&e, &c)| e <= dim && self.coefficient(dim - e) == c)
    }

    /// Sum of coefficients in odd degrees.
    pub fn odd_rank(&self) -> i64 {
        self.coeffs.iter().filter(|(e, _)| *e % 2 == 1).map(|(_, c)| c).sum()
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (&e, &c)) in self.coeffs.iter().enumerate() {
            let (sign, a) = if c < 0 { ("-", -c) } else { ("+", c) };
            if i == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (e, a) {
                (0, a) => write!(f, "{a}")?,
                (1, 1) => f.write_str("q")?,
                (1, a) => write!(f, "{a}q")?,
                (e, 1) => write!(f, "q^{e}")?,
                (e, a) => write!(f, "{a}q^{e}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Space {
    X,
    Y,
    Z,
}

impl std::str::FromStr for Space {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "X" | "x" => Ok(Space::X),
            "Y" | "y" => Ok(Space::Y),
            "Z" | "z" => Ok(Space::Z),
            other => Err(AlgebraError::Parse(format!("unknown space {other:?}, expected X, Y or Z"))),
        }
    }
}

fn check_r(r: u32) -> Result<()> {
    if [1, 2, 4, 8].contains(&r) {
        Ok(())
    } else {
        Err(AlgebraError::InvalidSpec(format!("r must be 1, 2, 4 or 8, got {r}")))
    }
}

/// Poincaré polynomial of the homology of `X_r`, `Y_r` or `Z_r`.
pub fn homology_poincare(space: Space, r: u32, variant: Variant) -> Result<PoincarePolynomial> {
    check_r(r)?;
    let mut p = PoincarePolynomial::default();
    let c = |k: u32| binomial(r as u64 + 1, k as u64) as i64;
    match variant {
        Variant::Torus => match space {
            Space::X => {
                p.add_term(0, 1);
                for k in 0..=r {
                    p.add_term(r + k, c(k));
                }
            }
            Space::Y => {
                for k in 0..=r {
                    p.add_term(2 * r - 1 + k, c(k));
                }
                p.add_term(0, 1);
                for k in 1..=r {
                    p.add_term(r + k, c(k));
                }
            }
            Space::Z => {
                p.add_term(0, 1);
                for k in 1..=r {
                    p.add_term(r + k, c(k));
                }
                p.add_term(3 * r + 1, 1);
            }
        },
        Variant::TwoTorus => {
            let a = (1i64 << (r + 1)) - 1;
            match space {
                Space::X => {
                    p.add_term(0, 1);
                    p.add_term(r, a);
                }
                Space::Y => {
                    p.add_term(2 * r - 1, a);
                    p.add_term(0, 1);
                    p.add_term(r, a - 1);
                }
                Space::Z => {
                    p.add_term(0, 1);
                    p.add_term(r, a - 1);
                    p.add_term(2 * r, 1);
                }
            }
        }
        Variant::Example33 => {
            return Err(AlgebraError::InvalidSpec("Poincaré polynomials are defined for the geometric variants".into()))
        }
    }
    Ok(p)
}

/// `1 + q^dim + Σ count · (q^a + q^b)` for a connected sum of products
/// `S^a × S^b` of total dimension `dim`.
pub fn connected_sum_poincare(summands: &[(u64, (u32, u32))], total_dim: u32) -> Result<PoincarePolynomial> {
    let mut p = PoincarePolynomial::default();
    p.add_term(0, 1);
    p.add_term(total_dim, 1);
    for &(count, (a, b)) in summands {
        if a + b != total_dim {
            return Err(AlgebraError::DimensionMismatch(format!(
                "S^{a} × S^{b} has dimension {}, not {total_dim}",
                a + b
            )));
        }
        p.add_term(a, count as i64);
        p.add_term(b, count as i64);
    }
    Ok(p)
}

/// Connected-sum summands `(copies, (a, b))` standing for `copies ⋆ (S^a × S^b)`.
pub type SphereProducts = Vec<(u64, (u32, u32))>;

/// Summands `C(r+1, k) ⋆ (S^{r+k} × S^{2r+1-k})`, `k = 1..r/2`, and the total
/// dimension `3r + 1`.
pub fn torus_connected_sum(r: u32) -> (SphereProducts, u32) {
    let summands = (1..=r / 2).map(|k| (binomial(r as u64 + 1, k as u64), (r + k, 2 * r + 1 - k))).collect();
    (summands, 3 * r + 1)
}

/// `(2^r - 1) ⋆ (S^r × S^r)` of dimension `2r`.
pub fn two_torus_connected_sum(r: u32) -> (SphereProducts, u32) {
    (vec![((1u64 << r) - 1, (r, r))], 2 * r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_polynomials() {
        assert_eq!(homology_poincare(Space::Z, 2, Variant::Torus).unwrap().to_string(), "1 + 3q^3 + 3q^4 + q^7");
        assert_eq!(homology_poincare(Space::Z, 2, Variant::TwoTorus).unwrap().to_string(), "1 + 6q^2 + q^4");
        assert_eq!(homology_poincare(Space::Z, 1, Variant::Torus).unwrap().to_string(), "1 + 2q^2 + q^4");
    }

    #[test]
    fn y_by_rank_additivity() {
        assert_eq!(homology_poincare(Space::Y, 2, Variant::Torus).unwrap().to_string(), "1 + 4q^3 + 6q^4 + 3q^5");
    }

    #[test]
    fn connected_sums_match() {
        for r in [2, 4, 8] {
            let (s, dim) = torus_connected_sum(r);
            let z = homology_poincare(Space::Z, r, Variant::Torus).unwrap();
            assert_eq!(connected_sum_poincare(&s, dim).unwrap(), z);
            assert!(z.is_symmetric(dim));
        }
        for r in [1, 2, 4, 8] {
            let (s, dim) = two_torus_connected_sum(r);
            let z = homology_poincare(Space::Z, r, Variant::TwoTorus).unwrap();
            assert_eq!(connected_sum_poincare(&s, dim).unwrap(), z);
            assert_eq!(z.total(), 1 << (r + 1));
            assert!(z.is_symmetric(dim));
        }
        assert_eq!(connected_sum_poincare(&two_torus_connected_sum(4).0, 8).unwrap().to_string(), "1 + 30q^4 + q^8");
    }

    #[test]
    fn empty_sum_is_a_sphere() {
        assert_eq!(connected_sum_poincare(&[], 4).unwrap().to_string(), "1 + q^4");
        assert!(connected_sum_poincare(&[(1, (2, 3))], 4).is_err());
    }

    #[test]
    fn invalid_r() {
        assert!(homology_poincare(Space::X, 3, Variant::Torus).is_err());
    }
}
