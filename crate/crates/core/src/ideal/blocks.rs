use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{GradedGeneratorSet, IdealError};
use crate::linalg::sparse::{rank_of_rows, Echelon};
use crate::poly::{weight_space_basis, ModPoly, Monomial27, Poly27, Weight};

/// No degree above this is ever attempted.
pub const HARD_DEGREE_CAP: u32 = 7;

/// Number of monomials of degree `d` in 27 variables.
pub fn ambient_dim(d: u32) -> u64 {
    let mut b: u64 = 1;
    for i in 1..=d as u64 {
        b = b * (26 + i) / i;
    }
    b
}

fn compositions(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

/// Every weight of degree `d`.
pub fn weights_of_degree(d: u32) -> Vec<Weight> {
    let c = compositions(d);
    let mut out = Vec::with_capacity(c.len().pow(3));
    for a in &c {
        for b in &c {
            for x in &c {
                out.push(Weight::new(*a, *b, *x));
            }
        }
    }
    out
}

fn dominant_weights(d: u32) -> Vec<Weight> {
    weights_of_degree(d).into_iter().filter(Weight::is_dominant).collect()
}

/// Number of weights obtained by permuting the entries of each axis.
fn orbit_size(w: &Weight) -> u64 {
    w.parts
        .iter()
        .map(|p| {
            if p[0] == p[1] && p[1] == p[2] {
                1
            } else if p[0] == p[1] || p[1] == p[2] || p[0] == p[2] {
                3
            } else {
                6
            }
        })
        .product()
}

fn checked_sub(w: &Weight, v: &Weight) -> Option<Weight> {
    let mut out = *w;
    for x in 0..3 {
        for i in 0..3 {
            out.parts[x][i] = w.parts[x][i].checked_sub(v.parts[x][i])?;
        }
    }
    Some(out)
}

pub(super) fn check_cap(d: u32, cap: u32) -> Result<(), IdealError> {
    if d > cap || d > HARD_DEGREE_CAP {
        return Err(IdealError::CapExceeded { degree: d, cap: cap.min(HARD_DEGREE_CAP), ambient: ambient_dim(d) });
    }
    Ok(())
}

pub(super) type Groups<'a> = Vec<(Weight, Vec<&'a ModPoly>)>;

/// Generators of degree at most `d`, grouped by weight.
pub(super) fn grouped(g: &GradedGeneratorSet, d: u32) -> Groups<'_> {
    let mut out: Groups<'_> = Vec::new();
    for f in g.by_degree.range(..=d).flat_map(|(_, v)| v) {
        let w = f.weight().unwrap();
        match out.iter_mut().find(|(x, _)| *x == w) {
            Some((_, v)) => v.push(f),
            None => out.push((w, vec![f])),
        }
    }
    out
}

fn column(basis: &[Monomial27], m: Monomial27) -> u32 {
    basis.binary_search(&m).expect("product left its weight space") as u32
}

pub(super) fn poly_row(basis: &[Monomial27], f: &ModPoly, m: Monomial27) -> Vec<(u32, u32)> {
    f.terms.iter().map(|&(q, c)| (column(basis, q.checked_mul(m).unwrap()), c)).collect()
}

/// Rows of all products `monomial * generator` that land in weight `w`.
pub(super) fn block_rows(groups: &Groups<'_>, w: &Weight, basis: &[Monomial27]) -> Vec<Vec<(u32, u32)>> {
    let mut rows = Vec::new();
    for (wg, fs) in groups {
        let Some(rest) = checked_sub(w, wg) else { continue };
        let mons = weight_space_basis(&rest);
        for f in fs {
            for &m in &mons {
                rows.push(poly_row(basis, f, m));
            }
        }
    }
    rows
}

fn block_rank(groups: &Groups<'_>, w: &Weight, p: u32) -> usize {
    let basis = weight_space_basis(w);
    let rows = block_rows(groups, w, &basis);
    if rows.is_empty() {
        return 0;
    }
    rank_of_rows(rows, basis.len(), p)
}

/// Weights of degree `d` that some product of a generator with a monomial reaches.
fn reachable(groups: &Groups<'_>, d: u32) -> Vec<Weight> {
    let mut out = BTreeSet::new();
    for (wg, _) in groups {
        let e = wg.degree().unwrap();
        for w in weights_of_degree(d - e) {
            out.insert(w.add(wg));
        }
    }
    out.into_iter().collect()
}

/// Dimension of the degree-`d` part of the ideal generated by `g`.
///
/// The product matrix splits into independent weight blocks; the ranks of the
/// blocks are summed. When the set is invariant, only dominant weights are
/// computed and each is counted once per weight in its orbit.
pub fn ideal_dim_in_degree(g: &GradedGeneratorSet, d: u32, cap: u32) -> Result<u64, IdealError> {
    check_cap(d, cap)?;
    let groups = grouped(g, d);
    if groups.is_empty() {
        return Ok(0);
    }
    let p = g.p;
    if g.invariant {
        Ok(dominant_weights(d).par_iter().map(|w| block_rank(&groups, w, p) as u64 * orbit_size(w)).sum())
    } else {
        Ok(reachable(&groups, d).par_iter().map(|w| block_rank(&groups, w, p) as u64).sum())
    }
}

/// Dimension of the degree-`d` part of the quotient ring.
pub fn hilbert_quotient(g: &GradedGeneratorSet, d: u32, cap: u32) -> Result<u64, IdealError> {
    Ok(ambient_dim(d) - ideal_dim_in_degree(g, d, cap)?)
}

/// The same dimension from one unblocked matrix; only for small degrees.
pub fn unblocked_ideal_dim(g: &GradedGeneratorSet, d: u32) -> Result<u64, IdealError> {
    check_cap(d, 4)?;
    let basis = Monomial27::all_of_degree(d);
    let mut rows = Vec::new();
    for (e, fs) in g.by_degree.range(..=d) {
        let mons = Monomial27::all_of_degree(d - e);
        for f in fs {
            for &m in &mons {
                let mut r: Vec<(u32, u32)> = f
                    .terms
                    .iter()
                    .map(|&(q, c)| (basis.binary_search(&q.checked_mul(m).unwrap()).unwrap() as u32, c))
                    .collect();
                r.sort_unstable();
                rows.push(r);
            }
        }
    }
    Ok(rank_of_rows(rows, basis.len(), g.p) as u64)
}

/// Is `h` in the span of the products of lower degree generators with monomials?
///
/// A `true` answer means `h` is not a new minimal generator.
pub fn minimal_generator_test(h: &Poly27, g: &GradedGeneratorSet) -> Result<bool, IdealError> {
    let w = h.weight().ok_or(IdealError::NotWeightHomogeneous)?;
    let d = h.degree().unwrap_or(0);
    let hp = ModPoly::from_poly(h, g.p)?;
    if hp.is_zero() {
        return Ok(true);
    }
    let basis = weight_space_basis(&w);
    let below = g.below(d);
    let groups = grouped(&below, d);
    let mut ech = Echelon::new(basis.len(), g.p);
    for row in block_rows(&groups, &w, &basis) {
        ech.insert(&row);
    }
    Ok(ech.contains(&poly_row(&basis, &hp, Monomial27::ONE)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NzdRow {
    pub degree: u32,
    /// H(R/J, d)
    pub quotient: u64,
    /// H(R/J, d - e), zero below degree e
    pub shifted: u64,
    /// H(R/(J + f), d)
    pub with_f: u64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NzdReport {
    pub prime: u32,
    pub f_degree: u32,
    pub cap: u32,
    pub rows: Vec<NzdRow>,
    pub verdict: bool,
    pub first_failure: Option<u32>,
}

/// Degree-capped check of H(R/(J+f), d) = H(R/J, d) - H(R/J, d - e).
pub fn graded_nonzerodivisor_check(g: &GradedGeneratorSet, f: &ModPoly, cap: u32) -> Result<NzdReport, IdealError> {
    check_cap(cap, HARD_DEGREE_CAP)?;
    let e = f.degree().ok_or_else(|| IdealError::Inconsistent("zero test polynomial".into()))?;
    let wf = f.weight().ok_or(IdealError::NotWeightHomogeneous)?;
    if !f.terms.iter().all(|(m, _)| m.weight() == wf) {
        return Err(IdealError::NotWeightHomogeneous);
    }
    let quotients: Vec<u64> = (0..=cap).map(|d| hilbert_quotient(g, d, cap)).collect::<Result<_, _>>()?;
    let mut rows = Vec::new();
    for d in 1..=cap {
        let shifted = if d >= e { quotients[(d - e) as usize] } else { 0 };
        let extra = if d >= e {
            let groups = grouped(g, d);
            let mut with = groups.clone();
            match with.iter_mut().find(|(x, _)| *x == wf) {
                Some((_, v)) => v.push(f),
                None => with.push((wf, vec![f])),
            }
            let p = g.p;
            weights_of_degree(d - e)
                .par_iter()
                .map(|w| {
                    let w = w.add(&wf);
                    (block_rank(&with, &w, p) - block_rank(&groups, &w, p)) as u64
                })
                .sum()
        } else {
            0
        };
        let quotient = quotients[d as usize];
        let with_f = quotient - extra;
        rows.push(NzdRow { degree: d, quotient, shifted, with_f, holds: with_f == quotient - shifted });
    }
    let first_failure = rows.iter().find(|r| !r.holds).map(|r| r.degree);
    Ok(NzdReport { prime: g.p, f_degree: e, cap, rows, verdict: first_failure.is_none(), first_failure })
}
