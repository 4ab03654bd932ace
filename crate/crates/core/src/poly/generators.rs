//! The cubic equations from pencil determinants and the two shipped witnesses.

use super::format::parse_letters;
use super::monomial::{var_of, Monomial27};
use super::Poly27;
use crate::linalg::{Field, Scalar};
use crate::tensor::Axis;

/// Exponents of x1, x2, x3 for the ten cubic monomials, in decreasing lex order.
pub const CUBIC_EXPONENTS: [[u8; 3]; 10] =
    [[3, 0, 0], [2, 1, 0], [2, 0, 1], [1, 2, 0], [1, 1, 1], [1, 0, 2], [0, 3, 0], [0, 2, 1], [0, 1, 2], [0, 0, 3]];

const PERMS: [([usize; 3], i64); 6] =
    [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([0, 2, 1], -1), ([2, 1, 0], -1), ([1, 0, 2], -1)];

/// Variable sitting at entry (r, c) of slice `s` along `axis`.
fn slice_var(axis: Axis, s: usize, r: usize, c: usize) -> usize {
    match axis {
        Axis::A => var_of(s, r, c),
        Axis::B => var_of(r, s, c),
        Axis::C => var_of(r, c, s),
    }
}

/// The coefficients of det(x1 S1 + x2 S2 + x3 S3), with S the slices along
/// `axis`, in the order of [`CUBIC_EXPONENTS`].
pub fn m3_generators(axis: Axis) -> Vec<Poly27> {
    let mut buckets: Vec<Vec<(Monomial27, Scalar)>> = vec![Vec::new(); 10];
    for (perm, sign) in PERMS {
        for choice in 0..27usize {
            let s = [choice / 9, (choice / 3) % 3, choice % 3];
            let mut e = [0u8; 3];
            let mut m = Monomial27::ONE;
            for r in 0..3 {
                e[s[r]] += 1;
                m = m.mul_var(slice_var(axis, s[r], r, perm[r])).unwrap();
            }
            let slot = CUBIC_EXPONENTS.iter().position(|x| *x == e).unwrap();
            buckets[slot].push((m, Scalar::from_i64(sign, Field::Rational)));
        }
    }
    buckets.into_iter().map(|t| Poly27::from_terms(Field::Rational, t)).collect()
}

/// All thirty cubics, axis A first.
pub fn s3_m3() -> Vec<Poly27> {
    Axis::ALL.iter().flat_map(|&ax| m3_generators(ax)).collect()
}

/// det of the matrix with rows (a11 a12 a13), (b11 b12 b13), (c11 c12 c13).
pub fn f_det() -> Poly27 {
    parse_letters("a11b12c13 - a11b13c12 - a12b11c13 + a12b13c11 + a13b11c12 - a13b12c11").unwrap()
}

pub const WITNESS_G_TEXT: &str = include_str!("../../data/witness_g.txt");

/// The degree-4 witness shipped in `data/witness_g.txt`.
pub fn witness_g() -> Poly27 {
    parse_letters(WITNESS_G_TEXT).expect("shipped witness parses")
}
