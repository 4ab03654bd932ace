use super::monomial::{var_indices, var_of, Monomial27, Weight};
use super::{Poly27, PolyError};
use crate::tensor::Axis;

/// Polynomial with coefficients in GF(p), terms sorted by monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPoly {
    pub p: u32,
    pub terms: Vec<(Monomial27, u32)>,
}

impl ModPoly {
    pub fn from_terms(p: u32, mut terms: Vec<(Monomial27, u32)>) -> Self {
        terms.sort_unstable_by_key(|a| a.0);
        let mut out: Vec<(Monomial27, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = ((*lc as u64 + c as u64) % p as u64) as u32,
                _ => out.push((m, c % p)),
            }
        }
        out.retain(|&(_, c)| c != 0);
        ModPoly { p, terms: out }
    }

    pub fn from_poly(f: &Poly27, p: u32) -> Result<Self, PolyError> {
        Ok(ModPoly { p, terms: f.residues(p)? })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lie(&self, axis: Axis, r: usize, s: usize) -> Self {
        let mut t = Vec::new();
        for &(m, c) in &self.terms {
            for (v, e) in m.support() {
                let mut idx = var_indices(v);
                if idx[axis.index()] != s {
                    continue;
                }
                idx[axis.index()] = r;
                let target = var_of(idx[0], idx[1], idx[2]);
                let q = m.div_var(v).unwrap().mul_var(target).unwrap();
                t.push((q, (c as u64 * e as u64 % self.p as u64) as u32));
            }
        }
        Self::from_terms(self.p, t)
    }

    pub fn weight(&self) -> Option<Weight> {
        self.terms.first().map(|(m, _)| m.weight())
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn mul_monomial(&self, m: Monomial27) -> Self {
        ModPoly {
            p: self.p,
            terms: self.terms.iter().map(|&(q, c)| (q.checked_mul(m).expect("degree overflow"), c)).collect(),
        }
    }

    /// `sum_j coeffs[j] * polys[j]`; all inputs share the modulus `p`.
    pub fn combination(p: u32, polys: &[ModPoly], coeffs: &[u32]) -> Self {
        let mut t = Vec::new();
        for (f, &c) in polys.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            debug_assert_eq!(f.p, p);
            t.extend(f.terms.iter().map(|&(m, x)| (m, (x as u64 * c as u64 % p as u64) as u32)));
        }
        Self::from_terms(p, t)
    }

    /// Value at a point given by its 27 residues.
    pub fn evaluate(&self, point: &[u32; 27]) -> u32 {
        let p = self.p as u64;
        let mut acc = 0u64;
        for &(m, c) in &self.terms {
            let mut term = c as u64;
            for (v, e) in m.support() {
                for _ in 0..e {
                    term = term * point[v] as u64 % p;
                }
            }
            acc = (acc + term) % p;
        }
        acc as u32
    }
}
