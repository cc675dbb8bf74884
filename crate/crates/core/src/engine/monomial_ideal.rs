//! Hilbert numerators of quotients by monomial ideals.

use std::collections::BTreeMap;

use super::groebner::minimalize_monomials;
use crate::ring::Monomial;

/// Numerator `N(q)` of `H(R/I) = N(q) / (1 - q^w)^n` for the monomial ideal
/// `I` generated by `gens`, using `N(I + (m)) = N(I) - q^{deg m} N(I : m)`.
pub(crate) fn quotient_numerator(gens: &[Monomial], weight: i64) -> BTreeMap<i64, i64> {
    let gens = minimalize_monomials(gens.to_vec());
    let mut out = BTreeMap::new();
    numerator_rec(&gens, weight, 0, 1, &mut out);
    out.retain(|_, c| *c != 0);
    out
}

fn numerator_rec(gens: &[Monomial], weight: i64, shift: i64, sign: i64, out: &mut BTreeMap<i64, i64>) {
    // pairwise coprime generators: N = Π (1 - q^{deg m})
    if gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b))) {
        let mut poly: BTreeMap<i64, i64> = BTreeMap::from([(0, 1)]);
        for m in gens {
            let d = weight * m.degree() as i64;
            let mut next = poly.clone();
            for (&e, &c) in &poly {
                *next.entry(e + d).or_insert(0) -= c;
            }
            poly = next;
        }
        for (e, c) in poly {
            *out.entry(e + shift).or_insert(0) += sign * c;
        }
        return;
    }
    let (last, rest) = gens.split_last().expect("nonempty when not coprime");
    numerator_rec(rest, weight, shift, sign, out);
    let colon: Vec<Monomial> = rest.iter().map(|g| last.quotient_of(&g.lcm(last))).collect();
    let colon = minimalize_monomials(colon);
    numerator_rec(&colon, weight, shift + weight * last.degree() as i64, -sign, out);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn principal_and_maximal_ideals() {
        let n = quotient_numerator(&[Monomial::var(0)], 2);
        assert_eq!(n, BTreeMap::from([(0, 1), (2, -1)]));
        // (t1, t2, t3): (1 - q)^3
        let m = quotient_numerator(&[Monomial::var(0), Monomial::var(1), Monomial::var(2)], 1);
        assert_eq!(m, BTreeMap::from([(0, 1), (1, -3), (2, 3), (3, -1)]));
    }

    #[test]
    fn non_coprime_generators() {
        // (t1^2, t1 t2) in k[t1, t2], w = 1: quotient has basis 1, t1, t2^k, t1 -> dims 1, 2, 1, 1, ...
        let gens = [Monomial::from_exponents(&[2, 0]), Monomial::from_exponents(&[1, 1])];
        let n = quotient_numerator(&gens, 1);
        // (1 - 2q^2 + q^3) / (1 - q)^2
        assert_eq!(n, BTreeMap::from([(0, 1), (2, -2), (3, 1)]));
    }
}
