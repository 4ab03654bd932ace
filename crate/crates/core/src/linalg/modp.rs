//! Dense elimination over small prime fields and the multi-modular lifting helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::scalar::{inv_mod, is_prime};

/// Dense row-major matrix over GF(p), residues in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMatrix {
    pub rows: usize,
    pub cols: usize,
    pub p: u32,
    pub data: Vec<u32>,
}

impl ModMatrix {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        ModMatrix { rows, cols, p, data: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<u32>], cols: usize, p: u32) -> Self {
        let mut m = Self::zeros(rows.len(), cols, p);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p as u64;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    self.data.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = inv_mod(self.get(r, c), self.p) as u64;
            for j in c..cols {
                let v = self.get(r, j) as u64 * inv % p;
                self.set(r, j, v as u32);
            }
            let pivot_row: Vec<(usize, u64)> = (c..cols)
                .filter_map(|j| {
                    let v = self.get(r, j);
                    (v != 0).then_some((j, v as u64))
                })
                .collect();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c) as u64;
                if f == 0 {
                    continue;
                }
                let neg = p - f;
                let row = &mut self.data[i * cols..(i + 1) * cols];
                for &(j, v) in &pivot_row {
                    row[j] = ((row[j] as u64 + neg * v) % p) as u32;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        kernel_from_rref(&m, &pivots)
    }
}

/// Null space basis read off a matrix already in reduced row echelon form.
pub fn kernel_from_rref(m: &ModMatrix, pivots: &[usize]) -> Vec<Vec<u32>> {
    let mut is_pivot = vec![false; m.cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0u32; m.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                let x = m.get(i, free);
                v[pc] = if x == 0 { 0 } else { m.p - x };
            }
            v
        })
        .collect()
}

/// Reduced echelon basis of the row space of `vectors`.
pub fn row_space_rref(vectors: &[Vec<u32>], cols: usize, p: u32) -> (Vec<Vec<u32>>, Vec<usize>) {
    let mut m = ModMatrix::from_rows(vectors, cols, p);
    let pivots = m.rref_in_place();
    let basis = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
    (basis, pivots)
}

/// Primes just below 2^31, in decreasing order.
pub fn large_primes() -> impl Iterator<Item = u32> {
    (1u32 << 20..=(1u32 << 31) - 1).rev().filter(|&n| n % 2 == 1 && is_prime(n as u64))
}

pub fn residue(x: &BigInt, p: u32) -> u32 {
    let r = x.mod_floor(&BigInt::from(p));
    u32::try_from(r).unwrap()
}

/// Combine `acc mod m` with `r mod p` into a residue modulo `m*p`.
pub fn crt(acc: &BigInt, m: &BigInt, r: u32, p: u32) -> BigInt {
    let pb = BigInt::from(p);
    let acc_p = residue(acc, p) as u64;
    let m_p = residue(m, p);
    let diff = (r as u64 + p as u64 - acc_p) % p as u64;
    let t = diff * inv_mod(m_p, p) as u64 % p as u64;
    let out = acc + m * BigInt::from(t);
    out.mod_floor(&(m * pb))
}

/// Smallest fraction n/d with |n|, d below sqrt(m/2) congruent to `a` mod `m`.
pub fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if r1.gcd(&t1) != BigInt::one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Lift a vector known modulo many primes to Q.
///
/// `image(p)` returns the residues for prime `p`, or `None` when `p` is unlucky.
/// Reconstruction is attempted after every prime and accepted once it is
/// stable across one extra prime and `accept` approves it.
pub fn lift_vector<F, A>(mut image: F, mut accept: A, max_primes: usize) -> Option<Vec<BigRational>>
where
    F: FnMut(u32) -> Option<Vec<u32>>,
    A: FnMut(&[BigRational]) -> bool,
{
    let mut acc: Option<Vec<BigInt>> = None;
    let mut modulus = BigInt::one();
    let mut previous: Option<Vec<BigRational>> = None;
    for p in large_primes().take(max_primes) {
        let Some(res) = image(p) else { continue };
        acc = Some(match acc {
            None => res.iter().map(|&r| BigInt::from(r)).collect(),
            Some(a) => {
                assert_eq!(a.len(), res.len(), "image length changed between primes");
                a.iter().zip(&res).map(|(x, &r)| crt(x, &modulus, r, p)).collect()
            }
        });
        modulus *= BigInt::from(p);
        let cur: Option<Vec<BigRational>> =
            acc.as_ref().unwrap().iter().map(|x| rational_reconstruction(x, &modulus)).collect();
        if let (Some(c), Some(prev)) = (&cur, &previous) {
            if c == prev && accept(c) {
                return cur;
            }
        }
        previous = cur;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_kernel() {
        let p = 101;
        let m = ModMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]], 3, p);
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        for i in 0..3 {
            let s: u64 = (0..3).map(|j| m.get(i, j) as u64 * k[0][j] as u64).sum();
            assert_eq!(s % p as u64, 0);
        }
    }

    #[test]
    fn reconstruction_roundtrip() {
        let m = BigInt::from(1_000_003u64) * BigInt::from(999_983u64);
        for (n, d) in [(3i64, 7i64), (-22, 5), (0, 1), (123, 1)] {
            let q = BigRational::new(BigInt::from(n), BigInt::from(d));
            let inv = q.denom().extended_gcd(&m).x.mod_floor(&m);
            let a = (q.numer() * inv).mod_floor(&m);
            assert_eq!(rational_reconstruction(&a, &m), Some(q));
        }
    }

    #[test]
    fn crt_combines() {
        let x = BigInt::from(123456789u64);
        let p1 = 1_000_003u32;
        let p2 = 999_983u32;
        let acc = BigInt::from(residue(&x, p1));
        let out = crt(&acc, &BigInt::from(p1), residue(&x, p2), p2);
        assert_eq!(out, x);
    }

    #[test]
    fn lifting_recovers_fractions() {
        let target = [BigRational::new(5.into(), 3.into()), BigRational::new((-7).into(), 2.into())];
        let image =
            |p: u32| Some(target.iter().map(|q| crate::linalg::scalar::reduce_rational(q, p).unwrap()).collect());
        let got = lift_vector(image, |_| true, 10).unwrap();
        assert_eq!(got, target.to_vec());
    }

    #[test]
    fn primes_are_large() {
        let ps: Vec<u32> = large_primes().take(3).collect();
        assert_eq!(ps[0], 2147483647);
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
    }
}
