//! The integral group algebra of `G = (Z/2)^n` and its mod-2 exterior
//! description through `u_i = 1 - g_i`.

use std::collections::BTreeMap;

/// A `Z`-combination of group elements; the element `g_S = Π_{i∈S} g_i` is
/// keyed by the bitmask `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    pub n: usize,
    coeffs: BTreeMap<u32, i64>,
}

impl GroupAlgebraElement {
    pub fn zero(n: usize) -> Self {
        GroupAlgebraElement { n, coeffs: BTreeMap::new() }
    }

    pub fn group_element(n: usize, s: u32) -> Self {
        let mut e = Self::zero(n);
        e.add_term(s, 1);
        e
    }

    pub fn one(n: usize) -> Self {
        Self::group_element(n, 0)
    }

    /// The generator `g_i` (0-based).
    pub fn g(n: usize, i: usize) -> Self {
        Self::group_element(n, 1 << i)
    }

    /// `1 - g_i`.
    pub fn u(n: usize, i: usize) -> Self {
        Self::one(n).sub(&Self::g(n, i))
    }

    fn add_term(&mut self, s: u32, c: i64) {
        let e = self.coeffs.entry(s).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&s);
        }
    }

    pub fn coefficient(&self, s: u32) -> i64 {
        self.coeffs.get(&s).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.coeffs.iter().map(|(s, c)| (*s, *c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in other.terms() {
            out.add_term(s, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero(self.n);
        for (s, c) in self.terms() {
            out.add_term(s, c * k);
        }
        out
    }

    /// Group law: `g_S g_T = g_{S xor T}`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (s, a) in self.terms() {
            for (t, b) in other.terms() {
                out.add_term(s ^ t, a * b);
            }
        }
        out
    }

    /// Sum of coefficients (every `g` maps to 1).
    pub fn augmentation(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// Group elements with odd coefficient.
    pub fn mod2_support(&self) -> Vec<u32> {
        self.terms().filter(|(_, c)| c.rem_euclid(2) == 1).map(|(s, _)| s).collect()
    }
}

/// `ω = (1 - g_1) ··· (1 - g_n)`, expanded on the group basis.
pub fn group_algebra_omega(r: usize) -> GroupAlgebraElement {
    let n = r + 1;
    (0..n).fold(GroupAlgebraElement::one(n), |acc, i| acc.mul(&GroupAlgebraElement::u(n, i)))
}

/// Square 0/1 matrix over `F2` on `2^n` basis vectors indexed by bitmask.
pub type Mod2Matrix = Vec<Vec<u8>>;

fn mod2_mul(a: &Mod2Matrix, b: &Mod2Matrix) -> Mod2Matrix {
    let n = a.len();
    let mut out = vec![vec![0u8; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 1 {
                for j in 0..n {
                    out[i][j] ^= b[k][j];
                }
            }
        }
    }
    out
}

/// Left multiplication by `1 - g_i` on the group basis, reduced mod 2
/// (column `T` holds the coordinates of `(1 - g_i) g_T`).
pub fn left_multiplication_mod2(n: usize, i: usize) -> Mod2Matrix {
    let size = 1usize << n;
    let u = GroupAlgebraElement::u(n, i);
    let mut m = vec![vec![0u8; size]; size];
    for t in 0..size as u32 {
        let image = u.mul(&GroupAlgebraElement::group_element(n, t));
        for s in image.mod2_support() {
            m[s as usize][t as usize] = 1;
        }
    }
    m
}

/// Change of basis from the `u`-basis to the group basis mod 2:
/// `u_S = Σ_{T⊆S} g_T`. It is an involution.
pub fn u_to_g_mod2(n: usize) -> Mod2Matrix {
    let size = 1usize << n;
    (0..size).map(|t| (0..size).map(|s| u8::from(t & s == t)).collect()).collect()
}

/// Left multiplication by `u_i` written in the `u`-basis, obtained by
/// conjugating the group-basis matrix. Column `S` is `u_{S∪i}` when
/// `i ∉ S` and zero otherwise.
pub fn u_multiplication_mod2(n: usize, i: usize) -> Mod2Matrix {
    let p = u_to_g_mod2(n);
    mod2_mul(&p, &mod2_mul(&left_multiplication_mod2(n, i), &p))
}

/// Whether the conjugated matrix is exterior multiplication by `u_i`.
pub fn is_exterior_multiplication(m: &Mod2Matrix, i: usize) -> bool {
    m.iter().enumerate().all(|(row, r)| {
        r.iter().enumerate().all(|(col, &x)| {
            let want = col & (1 << i) == 0 && row == col | (1 << i);
            x == u8::from(want)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_r1_expansion() {
        let w = group_algebra_omega(1);
        let expected: Vec<(u32, i64)> = vec![(0b00, 1), (0b01, -1), (0b10, -1), (0b11, 1)];
        assert_eq!(w.terms().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn omega_identities() {
        for r in [1usize, 2, 4, 8] {
            let n = r + 1;
            let w = group_algebra_omega(r);
            assert_eq!(w.num_terms(), 1 << n);
            assert!(w.terms().all(|(s, c)| c == if s.count_ones() % 2 == 0 { 1 } else { -1 }));
            assert_eq!(w.augmentation(), 0);
            assert_eq!(w.mul(&w), w.scale(1 << n));
            for i in 0..n {
                assert_eq!(GroupAlgebraElement::g(n, i).mul(&w), w.scale(-1));
            }
            assert_eq!(w.mod2_support(), (0..1u32 << n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn u_basis_turns_group_action_into_exterior_multiplication() {
        for n in 1..=5 {
            let p = u_to_g_mod2(n);
            let id = mod2_mul(&p, &p);
            assert!(id.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, &x)| x == u8::from(i == j))));
            for i in 0..n {
                assert!(is_exterior_multiplication(&u_multiplication_mod2(n, i), i));
            }
        }
    }

    #[test]
    fn u_squares_to_zero_mod_two() {
        let u = GroupAlgebraElement::u(3, 1);
        assert!(u.mul(&u).mod2_support().is_empty());
        assert_eq!(u.mul(&u), u.scale(2));
    }
}
