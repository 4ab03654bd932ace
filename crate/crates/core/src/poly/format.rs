//! Text and JSON encodings of polynomials.
//!
//! Text: `3*T_1_2_3^2*T_2_1_1 - 1/2*T_3_3_3`.
//! Letter form: `3a_{23}a_{12}b_{11}c_{21} - c_{13}b_{12}a_{21}^2`, with
//! a_ij = T_ij1, b_ij = T_ij2, c_ij = T_ij3; LaTeX braces and line breaks are ignored.
//! JSON: `[{"coeff": "3", "vars": [[1,2,3,2],[2,1,1,1]]}, ...]`, each var as [i,j,k,exponent].

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::monomial::{var_of, Monomial27};
use super::{Poly27, PolyError};
use crate::linalg::{Field, Scalar};

fn perr(msg: impl Into<String>) -> PolyError {
    PolyError::Parse(msg.into())
}

/// Split at top-level signs, returning (negative, body) pairs.
fn signed_terms(text: &str) -> Result<Vec<(bool, String)>, PolyError> {
    let mut out = Vec::new();
    let mut neg = false;
    let mut cur = String::new();
    let mut prev: Option<char> = None;
    for ch in text.chars().filter(|c| !c.is_whitespace()) {
        // A sign right after '^' or '/' would be part of a number; those are not allowed here.
        if (ch == '+' || ch == '-') && !matches!(prev, Some('^') | Some('/')) {
            if !cur.is_empty() {
                out.push((neg, std::mem::take(&mut cur)));
                neg = false;
            } else if prev.is_some() && !matches!(prev, Some('+') | Some('-')) {
                return Err(perr("misplaced sign"));
            }
            if ch == '-' {
                neg = !neg;
            }
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    if !cur.is_empty() {
        out.push((neg, cur));
    } else if prev.is_some() {
        return Err(perr("dangling sign"));
    }
    Ok(out)
}

fn mul_var(m: Monomial27, v: usize, e: u32) -> Result<Monomial27, PolyError> {
    let mut m = m;
    for _ in 0..e {
        m = m.mul_var(v).ok_or(PolyError::DegreeTooLarge)?;
    }
    Ok(m)
}

fn index_digit(c: u8) -> Result<usize, PolyError> {
    match c {
        b'1'..=b'3' => Ok((c - b'1') as usize),
        _ => Err(perr(format!("index {:?} not in 1..3", c as char))),
    }
}

/// Parse the `c*T_i_j_k^e*...` text format over `field`.
pub fn parse_poly(text: &str, field: Field) -> Result<Poly27, PolyError> {
    let mut terms = Vec::new();
    for (neg, body) in signed_terms(text)? {
        let mut coeff = field.one();
        let mut mono = Monomial27::ONE;
        for factor in body.split('*') {
            if let Some(rest) = factor.strip_prefix("T_") {
                let (idx, exp) = match rest.split_once('^') {
                    Some((a, b)) => (a, b.parse::<u32>().map_err(|_| perr(factor))?),
                    None => (rest, 1),
                };
                let parts: Vec<&str> = idx.split('_').collect();
                if parts.len() != 3 || parts.iter().any(|p| p.len() != 1) {
                    return Err(perr(format!("bad variable {factor:?}")));
                }
                let ijk: Vec<usize> = parts.iter().map(|p| index_digit(p.as_bytes()[0])).collect::<Result<_, _>>()?;
                mono = mul_var(mono, var_of(ijk[0], ijk[1], ijk[2]), exp)?;
            } else {
                let c: Scalar = factor.parse().map_err(|_| perr(format!("bad factor {factor:?}")))?;
                let c = match field {
                    Field::Rational => c,
                    Field::Prime(p) => c.reduce(p)?,
                };
                coeff = &coeff * &c;
            }
        }
        if neg {
            coeff = -coeff;
        }
        terms.push((mono, coeff));
    }
    Ok(Poly27::from_terms(field, terms))
}

/// Parse the letter form over Q.
pub fn parse_letters(text: &str) -> Result<Poly27, PolyError> {
    let cleaned: String = text
        .replace("\\\\", " ")
        .replace("_{", "")
        .chars()
        .filter(|c| !matches!(c, '{' | '}' | '.') && !c.is_whitespace())
        .collect();
    let mut terms = Vec::new();
    for (neg, body) in signed_terms(&cleaned)? {
        let b = body.as_bytes();
        let mut pos = 0;
        while pos < b.len() && b[pos].is_ascii_digit() {
            pos += 1;
        }
        let coeff: BigInt = if pos == 0 { BigInt::from(1) } else { body[..pos].parse().map_err(|_| perr(&body))? };
        let mut mono = Monomial27::ONE;
        while pos < b.len() {
            let k = match b[pos] {
                b'a' => 0,
                b'b' => 1,
                b'c' => 2,
                _ => return Err(perr(format!("unexpected {:?} in {body:?}", b[pos] as char))),
            };
            if pos + 2 >= b.len() {
                return Err(perr(format!("truncated variable in {body:?}")));
            }
            let i = index_digit(b[pos + 1])?;
            let j = index_digit(b[pos + 2])?;
            pos += 3;
            let mut e = 1;
            if pos < b.len() && b[pos] == b'^' {
                let start = pos + 1;
                pos = start;
                while pos < b.len() && b[pos].is_ascii_digit() {
                    pos += 1;
                }
                e = body[start..pos].parse().map_err(|_| perr(&body))?;
            }
            mono = mul_var(mono, var_of(i, j, k), e)?;
        }
        let c = Scalar::from_bigint(if neg { -coeff } else { coeff }, Field::Rational);
        terms.push((mono, c));
    }
    Ok(Poly27::from_terms(Field::Rational, terms))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub vars: Vec<[u32; 4]>,
}

pub fn to_json_terms(p: &Poly27) -> Vec<TermJson> {
    p.terms()
        .iter()
        .rev()
        .map(|(m, c)| TermJson {
            coeff: c.to_string(),
            vars: m
                .support()
                .map(|(v, e)| {
                    let [i, j, k] = super::monomial::var_indices(v);
                    [i as u32 + 1, j as u32 + 1, k as u32 + 1, e]
                })
                .collect(),
        })
        .collect()
}

pub fn from_json_terms(terms: &[TermJson], field: Field) -> Result<Poly27, PolyError> {
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let c: Scalar = t.coeff.parse().map_err(|_| perr(&t.coeff))?;
        let c = match field {
            Field::Rational => c,
            Field::Prime(p) => c.reduce(p)?,
        };
        let mut m = Monomial27::ONE;
        for &[i, j, k, e] in &t.vars {
            if !(1..=3).contains(&i) || !(1..=3).contains(&j) || !(1..=3).contains(&k) {
                return Err(perr(format!("index out of range in {:?}", [i, j, k])));
            }
            m = mul_var(m, var_of(i as usize - 1, j as usize - 1, k as usize - 1), e)?;
        }
        out.push((m, c));
    }
    Ok(Poly27::from_terms(field, out))
}
