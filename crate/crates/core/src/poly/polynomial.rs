use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::monomial::{var_indices, var_of, Monomial27, Weight};
use super::PolyError;
use crate::linalg::{Field, Scalar};
use crate::tensor::{Axis, Tensor333};

/// Sparse polynomial in the 27 coordinates T_ijk.
///
/// Terms are kept sorted by increasing monomial with no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly27 {
    field: Field,
    terms: Vec<(Monomial27, Scalar)>,
}

/// Sort by monomial and merge equal monomials, dropping zeros.
fn canonical(mut terms: Vec<(Monomial27, Scalar)>) -> Vec<(Monomial27, Scalar)> {
    terms.sort_by_key(|a| a.0);
    let mut out: Vec<(Monomial27, Scalar)> = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
            _ => out.push((m, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

impl Poly27 {
    pub fn zero(field: Field) -> Self {
        Poly27 { field, terms: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_terms(c.field(), vec![(Monomial27::ONE, c)])
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field.one())
    }

    /// The coordinate T_{i+1, j+1, k+1}.
    pub fn var(i: usize, j: usize, k: usize, field: Field) -> Self {
        Self::monomial(Monomial27::var(var_of(i, j, k)), field.one())
    }

    pub fn monomial(m: Monomial27, c: Scalar) -> Self {
        Self::from_terms(c.field(), vec![(m, c)])
    }

    pub fn from_terms(field: Field, terms: Vec<(Monomial27, Scalar)>) -> Self {
        assert!(terms.iter().all(|(_, c)| c.field() == field), "mixed fields");
        Poly27 { field, terms: canonical(terms) }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &[(Monomial27, Scalar)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: Monomial27) -> Scalar {
        match self.terms.binary_search_by(|(x, _)| x.cmp(&m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    /// Largest monomial and its coefficient.
    pub fn leading_term(&self) -> Option<&(Monomial27, Scalar)> {
        self.terms.last()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    /// Common weight of all terms, if there is one.
    pub fn weight(&self) -> Option<Weight> {
        let mut it = self.terms.iter().map(|(m, _)| m.weight());
        let w = it.next()?;
        it.all(|x| x == w).then_some(w)
    }

    fn check_field(&self, other: &Self) -> Result<(), PolyError> {
        if self.field != other.field {
            return Err(PolyError::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_field(other).expect("polynomials over different fields");
        let mut t = self.terms.clone();
        t.extend(other.terms.iter().cloned());
        Poly27 { field: self.field, terms: canonical(t) }
    }

    pub fn neg(&self) -> Self {
        Poly27 { field: self.field, terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.field);
        }
        Poly27 { field: self.field, terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect() }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_field(other)?;
        let mut t = Vec::with_capacity(self.len() * other.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.checked_mul(*m2).ok_or(PolyError::DegreeTooLarge)?;
                t.push((m, c1 * c2));
            }
        }
        Ok(Poly27 { field: self.field, terms: canonical(t) })
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("polynomial product")
    }

    pub fn mul_monomial(&self, m: Monomial27) -> Self {
        Poly27 {
            field: self.field,
            terms: self.terms.iter().map(|(x, c)| (x.checked_mul(m).expect("degree above limit"), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.field), |acc, _| acc.mul(self))
    }

    /// Partial derivative with respect to variable index `v = 9i + 3j + k`.
    pub fn derivative(&self, v: usize) -> Self {
        let t = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let e = m.exponent(v);
                m.div_var(v).map(|q| (q, c.scale_i64(e as i64)))
            })
            .collect();
        Poly27::from_terms(self.field, t)
    }

    /// The Lie algebra element E_{r,s} of one factor, acting as a derivation:
    /// every occurrence of index `s` in the `axis` slot is replaced by `r`.
    pub fn lie(&self, axis: Axis, r: usize, s: usize) -> Self {
        assert!(r < 3 && s < 3);
        let mut t = Vec::new();
        for (m, c) in &self.terms {
            for (v, e) in m.support() {
                let mut idx = var_indices(v);
                if idx[axis.index()] != s {
                    continue;
                }
                idx[axis.index()] = r;
                let target = var_of(idx[0], idx[1], idx[2]);
                let q = m.div_var(v).unwrap().mul_var(target).unwrap();
                t.push((q, c.scale_i64(e as i64)));
            }
        }
        Poly27::from_terms(self.field, t)
    }

    /// Raising operator E_{r,s} with r < s.
    pub fn raise(&self, axis: Axis, r: usize, s: usize) -> Self {
        assert!(r < s, "raising needs r < s");
        self.lie(axis, r, s)
    }

    /// Lowering operator E_{r,s} with r > s.
    pub fn lower(&self, axis: Axis, r: usize, s: usize) -> Self {
        assert!(r > s, "lowering needs r > s");
        self.lie(axis, r, s)
    }

    pub fn evaluate(&self, t: &Tensor333) -> Result<Scalar, PolyError> {
        if t.field() != self.field {
            return Err(PolyError::FieldMismatch(self.field, t.field()));
        }
        if let Some(v) = self.evaluate_integral(t) {
            return Ok(Scalar::from_bigint(v, self.field));
        }
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in m.support() {
                let x = &t.flat()[v];
                for _ in 0..e {
                    term = &term * x;
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Fast path for integer coefficients at an integer point over Q.
    fn evaluate_integral(&self, t: &Tensor333) -> Option<BigInt> {
        Some(self.integer_form()?.evaluate(&integer_point(t)?))
    }

    /// Coefficients as machine integers, if they all fit.
    pub fn integer_form(&self) -> Option<IntPoly> {
        if self.field != Field::Rational {
            return None;
        }
        let terms = self.terms.iter().map(|(m, c)| Some((*m, c.to_integer()?.to_i128()?))).collect::<Option<_>>()?;
        Some(IntPoly { terms })
    }

    pub fn to_field(&self, p: u32) -> Result<Self, PolyError> {
        let t = self.terms.iter().map(|(m, c)| Ok((*m, c.reduce(p)?))).collect::<Result<Vec<_>, PolyError>>()?;
        Ok(Poly27::from_terms(Field::Prime(p), t))
    }

    /// Residues of the coefficients modulo `p`, zeros dropped.
    pub fn residues(&self, p: u32) -> Result<Vec<(Monomial27, u32)>, PolyError> {
        let mut out = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            let Scalar::Modular(x) = c.reduce(p)? else { unreachable!() };
            if x.value() != 0 {
                out.push((*m, x.value()));
            }
        }
        Ok(out)
    }

    /// Rescale a rational polynomial to coprime integer coefficients with a
    /// positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.field != Field::Rational || self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for (_, c) in &self.terms {
            let q = c.as_rational().unwrap();
            den = den.lcm(q.denom());
            num = num.gcd(q.numer());
        }
        let mut s = BigRational::new(den, num);
        if self.leading_term().unwrap().1.is_negative() {
            s = -s;
        }
        self.scale(&Scalar::Rational(s))
    }

    /// Coefficients as integers, if they all are.
    pub fn integer_coefficients(&self) -> Option<Vec<BigInt>> {
        self.terms.iter().map(|(_, c)| c.to_integer()).collect()
    }
}

/// Evaluate integer terms at an integer point, in i128 with a BigInt fallback on overflow.
/// A polynomial with machine-integer coefficients, for evaluating one
/// polynomial at many integer points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    pub terms: Vec<(Monomial27, i128)>,
}

impl IntPoly {
    /// Value at an integer point, exact.
    pub fn evaluate(&self, point: &[i128; 27]) -> BigInt {
        let fast = || -> Option<i128> {
            let mut acc: i128 = 0;
            for &(m, c) in &self.terms {
                let mut term = c;
                for (v, e) in m.support() {
                    for _ in 0..e {
                        term = term.checked_mul(point[v])?;
                    }
                }
                acc = acc.checked_add(term)?;
            }
            Some(acc)
        };
        if let Some(v) = fast() {
            return BigInt::from(v);
        }
        let mut acc = BigInt::zero();
        for &(m, c) in &self.terms {
            let mut term = BigInt::from(c);
            for (v, e) in m.support() {
                term *= BigInt::from(point[v]).pow(e);
            }
            acc += term;
        }
        acc
    }

    pub fn vanishes_at(&self, point: &[i128; 27]) -> bool {
        self.evaluate(point).is_zero()
    }
}

/// Entries of an integral tensor as machine integers.
pub fn integer_point(t: &Tensor333) -> Option<[i128; 27]> {
    let v: Vec<i128> = t.flat().iter().map(|s| s.to_integer().and_then(|x| x.to_i128())).collect::<Option<_>>()?;
    v.try_into().ok()
}

impl fmt::Display for Poly27 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, abs) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *m == Monomial27::ONE {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}
