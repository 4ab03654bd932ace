use std::collections::BTreeMap;
use std::fmt;

use crate::linalg::{DenseMatrix, Field, Scalar};

/// Homogeneous polynomial in x1, x2, x3, keyed by exponent triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryForm {
    field: Field,
    terms: BTreeMap<[u8; 3], Scalar>,
}

impl TernaryForm {
    pub fn zero(field: Field) -> Self {
        TernaryForm { field, terms: BTreeMap::new() }
    }

    /// The linear form c1 x1 + c2 x2 + c3 x3.
    pub fn linear(coeffs: [Scalar; 3]) -> Self {
        let field = coeffs[0].field();
        let mut f = Self::zero(field);
        for (i, c) in coeffs.into_iter().enumerate() {
            let mut e = [0u8; 3];
            e[i] = 1;
            f.add_term(e, c);
        }
        f
    }

    fn add_term(&mut self, e: [u8; 3], c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(|| self.field.zero());
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: [u8; 3]) -> Scalar {
        self.terms.get(&e).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8; 3], &Scalar)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        TernaryForm { field: self.field, terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.field);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mut s = c.to_string();
                for (i, &p) in e.iter().enumerate() {
                    match p {
                        0 => {}
                        1 => s.push_str(&format!("*x{}", i + 1)),
                        _ => s.push_str(&format!("*x{}^{}", i + 1, p)),
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The matrix x1 M1 + x2 M2 + x3 M3 of linear forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pencil {
    coeffs: [DenseMatrix; 3],
}

impl Pencil {
    pub fn new(coeffs: [DenseMatrix; 3]) -> Self {
        Pencil { coeffs }
    }

    pub fn coefficient_matrices(&self) -> &[DenseMatrix; 3] {
        &self.coeffs
    }

    pub fn field(&self) -> Field {
        self.coeffs[0].field()
    }

    pub fn entry(&self, r: usize, c: usize) -> TernaryForm {
        TernaryForm::linear([0, 1, 2].map(|s| self.coeffs[s].get(r, c).clone()))
    }

    /// Determinant of the submatrix on the given rows and columns, as a form.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> TernaryForm {
        assert_eq!(rows.len(), cols.len());
        match rows.len() {
            0 => {
                let mut one = TernaryForm::zero(self.field());
                one.add_term([0, 0, 0], self.field().one());
                one
            }
            1 => self.entry(rows[0], cols[0]),
            _ => {
                let mut acc = TernaryForm::zero(self.field());
                for (n, &c) in cols.iter().enumerate() {
                    let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = self.entry(rows[0], c).mul(&self.minor(&rows[1..], &rest));
                    acc = if n % 2 == 0 { acc.add(&term) } else { acc.add(&term.neg()) };
                }
                acc
            }
        }
    }

    pub fn determinant(&self) -> TernaryForm {
        self.minor(&[0, 1, 2], &[0, 1, 2])
    }

    /// Rank over the field of rational functions in x1, x2, x3.
    pub fn generic_rank(&self) -> usize {
        if !self.determinant().is_zero() {
            return 3;
        }
        let pairs = [[0, 1], [0, 2], [1, 2]];
        for r in pairs {
            for c in pairs {
                if !self.minor(&r, &c).is_zero() {
                    return 2;
                }
            }
        }
        if self.coeffs.iter().any(|m| !m.is_zero()) {
            1
        } else {
            0
        }
    }
}

impl fmt::Display for Pencil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..3 {
            let row: Vec<String> = (0..3).map(|c| self.entry(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{Axis, Tensor333};

    const Q: Field = Field::Rational;

    fn lin(a: i64, b: i64, c: i64) -> TernaryForm {
        TernaryForm::linear([a, b, c].map(|v| Scalar::from_i64(v, Q)))
    }

    #[test]
    fn normal_form_pencils() {
        let t = Tensor333::from_terms(&[(1, 0, 1, 0), (1, 2, 0, 0), (1, 1, 1, 1), (1, 2, 2, 2)], Q);
        let pa = t.pencil(Axis::A);
        let expect_a = [
            [lin(0, 0, 1), lin(0, 0, 0), lin(0, 0, 0)],
            [lin(1, 0, 0), lin(0, 1, 0), lin(0, 0, 0)],
            [lin(0, 0, 0), lin(0, 0, 0), lin(0, 0, 1)],
        ];
        let pc = t.pencil(Axis::C);
        let expect_c = [
            [lin(0, 0, 0), lin(1, 0, 0), lin(0, 0, 0)],
            [lin(0, 0, 0), lin(0, 1, 0), lin(0, 0, 0)],
            [lin(1, 0, 0), lin(0, 0, 0), lin(0, 0, 1)],
        ];
        for r in 0..3 {
            for c in 0..3 {
                assert_eq!(pa.entry(r, c), expect_a[r][c]);
                assert_eq!(pc.entry(r, c), expect_c[r][c]);
            }
        }
        assert!(pc.determinant().is_zero());
        assert!(!pa.determinant().is_zero());
    }

    #[test]
    fn skew_pencil_of_f() {
        let f = Tensor333::from_terms(
            &[(1, 0, 1, 2), (1, 1, 2, 0), (1, 2, 0, 1), (-1, 0, 2, 1), (-1, 1, 0, 2), (-1, 2, 1, 0)],
            Q,
        );
        let p = f.pencil(Axis::A);
        for r in 0..3 {
            assert!(p.entry(r, r).is_zero());
            for c in 0..3 {
                assert_eq!(p.entry(r, c), p.entry(c, r).neg());
            }
        }
        assert_eq!(p.entry(0, 1), lin(0, 0, 1));
        assert_eq!(p.entry(1, 2), lin(1, 0, 0));
        assert_eq!(p.entry(2, 0), lin(0, 1, 0));
        assert_eq!(p.generic_rank(), 2);
    }

    #[test]
    fn forms_multiply() {
        let x = lin(1, 0, 0);
        let y = lin(0, 1, 0);
        let p = x.add(&y).mul(&x.add(&y.neg()));
        assert_eq!(p.coefficient([2, 0, 0]), Scalar::from_i64(1, Q));
        assert_eq!(p.coefficient([1, 1, 0]), Scalar::from_i64(0, Q));
        assert_eq!(p.coefficient([0, 2, 0]), Scalar::from_i64(-1, Q));
    }
}
