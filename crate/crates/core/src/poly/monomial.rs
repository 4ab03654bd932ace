use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::tensor::Axis;

/// Largest total degree a packed monomial can hold.
pub const MAX_DEGREE: u32 = 15;

/// Index (i, j, k), 0-based, of variable `v = 9i + 3j + k`.
#[inline]
pub fn var_indices(v: usize) -> [usize; 3] {
    [v / 9, (v / 3) % 3, v % 3]
}

#[inline]
pub fn var_of(i: usize, j: usize, k: usize) -> usize {
    9 * i + 3 * j + k
}

/// Monomial in the 27 variables T_ijk, one 4-bit exponent per variable.
/// Variable 0 (T_111) sits in the most significant nibble.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial27(u128);

#[inline]
fn shift(v: usize) -> u32 {
    4 * (26 - v as u32)
}

const LOW_NIBBLES: u64 = 0x0f0f_0f0f_0f0f_0f0f;

impl Monomial27 {
    pub const ONE: Monomial27 = Monomial27(0);

    pub fn var(v: usize) -> Self {
        assert!(v < 27);
        Monomial27(1u128 << shift(v))
    }

    pub fn from_exponents(exps: &[u32; 27]) -> Option<Self> {
        let mut packed = 0u128;
        let mut deg = 0;
        for (v, &e) in exps.iter().enumerate() {
            deg += e;
            if e > 15 {
                return None;
            }
            packed |= (e as u128) << shift(v);
        }
        (deg <= MAX_DEGREE).then_some(Monomial27(packed))
    }

    pub fn packed(self) -> u128 {
        self.0
    }

    #[inline]
    pub fn exponent(self, v: usize) -> u32 {
        ((self.0 >> shift(v)) & 0xf) as u32
    }

    pub fn exponents(self) -> [u32; 27] {
        std::array::from_fn(|v| self.exponent(v))
    }

    #[inline]
    pub fn degree(self) -> u32 {
        let half = |x: u64| {
            let b = (x & LOW_NIBBLES) + ((x >> 4) & LOW_NIBBLES);
            (b.wrapping_mul(0x0101_0101_0101_0101) >> 56) as u32
        };
        half(self.0 as u64) + half((self.0 >> 64) as u64)
    }

    /// Product, or `None` when the degree would exceed [`MAX_DEGREE`].
    #[inline]
    pub fn checked_mul(self, other: Self) -> Option<Self> {
        (self.degree() + other.degree() <= MAX_DEGREE).then_some(Monomial27(self.0 + other.0))
    }

    /// Quotient by a single variable; `None` when it does not divide.
    #[inline]
    pub fn div_var(self, v: usize) -> Option<Self> {
        (self.exponent(v) > 0).then(|| Monomial27(self.0 - (1u128 << shift(v))))
    }

    #[inline]
    pub fn mul_var(self, v: usize) -> Option<Self> {
        (self.degree() < MAX_DEGREE).then(|| Monomial27(self.0 + (1u128 << shift(v))))
    }

    pub fn support(self) -> impl Iterator<Item = (usize, u32)> {
        (0..27).filter_map(move |v| {
            let e = self.exponent(v);
            (e > 0).then_some((v, e))
        })
    }

    pub fn weight(self) -> Weight {
        let mut w = Weight::default();
        for (v, e) in self.support() {
            let [i, j, k] = var_indices(v);
            w.parts[0][i] += e;
            w.parts[1][j] += e;
            w.parts[2][k] += e;
        }
        w
    }

    /// All monomials of degree `d`, in increasing order.
    pub fn all_of_degree(d: u32) -> Vec<Monomial27> {
        let mut out = Vec::new();
        fn rec(v: usize, left: u32, cur: u128, out: &mut Vec<Monomial27>) {
            if v == 26 {
                out.push(Monomial27(cur + ((left as u128) << shift(26))));
                return;
            }
            for e in 0..=left {
                rec(v + 1, left - e, cur + ((e as u128) << shift(v)), out);
            }
        }
        assert!(d <= MAX_DEGREE);
        rec(0, d, 0, &mut out);
        out.sort();
        out
    }
}

impl Ord for Monomial27 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then(self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial27 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial27 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in self.support() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let [i, j, k] = var_indices(v);
            write!(f, "T_{}_{}_{}", i + 1, j + 1, k + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Contents of the A-, B- and C-indices of a monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Weight {
    pub parts: [[u32; 3]; 3],
}

impl Weight {
    pub fn new(a: [u32; 3], b: [u32; 3], c: [u32; 3]) -> Self {
        Weight { parts: [a, b, c] }
    }

    pub fn axis(&self, axis: Axis) -> [u32; 3] {
        self.parts[axis.index()]
    }

    /// Common degree, or `None` when the three parts have different sums.
    pub fn degree(&self) -> Option<u32> {
        let s = self.parts.map(|p| p.iter().sum::<u32>());
        (s[0] == s[1] && s[1] == s[2]).then_some(s[0])
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight { parts: std::array::from_fn(|x| std::array::from_fn(|i| self.parts[x][i] + other.parts[x][i])) }
    }

    /// Each part weakly decreasing.
    pub fn is_dominant(&self) -> bool {
        self.parts.iter().all(|p| p[0] >= p[1] && p[1] >= p[2])
    }

    /// Shift content from index `s` to index `r` along `axis`.
    pub fn shifted(&self, axis: Axis, r: usize, s: usize) -> Option<Weight> {
        let mut w = *self;
        let part = &mut w.parts[axis.index()];
        if part[s] == 0 {
            return None;
        }
        part[s] -= 1;
        part[r] += 1;
        Some(w)
    }

    /// Index of this weight among all weights of its degree; used to bucket monomials.
    pub fn key(&self) -> u64 {
        let mut k = 0u64;
        for p in &self.parts {
            for &x in &p[..2] {
                k = k * 32 + x as u64;
            }
        }
        k
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = |x: &[u32; 3]| format!("{}{}{}", x[0], x[1], x[2]);
        write!(f, "({},{},{})", p(&self.parts[0]), p(&self.parts[1]), p(&self.parts[2]))
    }
}

/// All monomials of degree `d` with exactly the given weight, in increasing order.
pub fn weight_space_basis(w: &Weight) -> Vec<Monomial27> {
    let Some(_) = w.degree() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut rem = w.parts;
    fn rec(v: usize, rem: &mut [[u32; 3]; 3], cur: u128, out: &mut Vec<Monomial27>) {
        if v == 27 {
            if rem.iter().all(|p| p.iter().all(|&x| x == 0)) {
                out.push(Monomial27(cur));
            }
            return;
        }
        let [i, j, k] = var_indices(v);
        // The remaining content in A-index i must be absorbed by variables with that index.
        let max = rem[0][i].min(rem[1][j]).min(rem[2][k]);
        for e in (0..=max).rev() {
            rem[0][i] -= e;
            rem[1][j] -= e;
            rem[2][k] -= e;
            // Once the last variable with A-index i has been chosen, its content must be spent.
            let done_i = v % 9 == 8 && rem[0][i] != 0;
            if !done_i {
                rec(v + 1, rem, cur + ((e as u128) << shift(v)), out);
            }
            rem[0][i] += e;
            rem[1][j] += e;
            rem[2][k] += e;
        }
    }
    rec(0, &mut rem, 0, &mut out);
    out.sort();
    out
}
