use std::collections::{HashMap, VecDeque};

use num_rational::BigRational;

use super::characters::{kronecker, weyl_dim};
use super::partition::IsotypicLabel;
use super::RepError;
use crate::linalg::modp::{large_primes, row_space_rref};
use crate::linalg::sparse::{kernel_of_rows, Echelon};
use crate::linalg::{Field, Scalar};
use crate::poly::{weight_space_basis, ModPoly, Monomial27, Poly27, Weight};
use crate::tensor::Axis;

/// The six simple raising operators E_{0,1} and E_{1,2} on each factor.
pub const SIMPLE_RAISES: [(Axis, usize, usize); 6] =
    [(Axis::A, 0, 1), (Axis::A, 1, 2), (Axis::B, 0, 1), (Axis::B, 1, 2), (Axis::C, 0, 1), (Axis::C, 1, 2)];

/// The six simple lowering operators.
pub const SIMPLE_LOWERS: [(Axis, usize, usize); 6] =
    [(Axis::A, 1, 0), (Axis::A, 2, 1), (Axis::B, 1, 0), (Axis::B, 2, 1), (Axis::C, 1, 0), (Axis::C, 2, 1)];

const P_CHECK: u32 = 2_147_483_647;

/// Largest degree accepted by the highest weight computations.
pub const MAX_LABEL_DEGREE: u32 = 9;

/// Multiplicity of the label in the degree-d piece of the coordinate ring.
pub fn multiplicity(label: &IsotypicLabel) -> u64 {
    kronecker(&label.lambda, &label.mu, &label.nu)
}

/// Dimension of one copy of the irreducible module with this label.
pub fn module_dim(label: &IsotypicLabel) -> u64 {
    weyl_dim(&label.lambda) * weyl_dim(&label.mu) * weyl_dim(&label.nu)
}

fn raising_rows(basis: &[Monomial27], p: u32) -> Vec<Vec<(u32, u32)>> {
    let mut index: HashMap<(usize, Monomial27), usize> = HashMap::new();
    let mut rows: Vec<Vec<(u32, u32)>> = Vec::new();
    for (col, &m) in basis.iter().enumerate() {
        let single = ModPoly::from_terms(p, vec![(m, 1)]);
        for (op, &(axis, r, s)) in SIMPLE_RAISES.iter().enumerate() {
            for (q, c) in single.lie(axis, r, s).terms {
                let row = *index.entry((op, q)).or_insert_with(|| {
                    rows.push(Vec::new());
                    rows.len() - 1
                });
                rows[row].push((col as u32, c));
            }
        }
    }
    rows
}

/// Highest weight vectors of the label modulo `p`, as coordinate vectors on
/// `weight_space_basis(label.weight())`.
///
/// Returns `None` when the kernel has the wrong dimension at this prime.
pub fn hw_space_mod_p(label: &IsotypicLabel, p: u32) -> Result<Option<Vec<Vec<u32>>>, RepError> {
    if label.degree() > MAX_LABEL_DEGREE {
        return Err(RepError::DegreeTooLarge(label.degree()));
    }
    let basis = weight_space_basis(&label.weight()?);
    let k = multiplicity(label) as usize;
    let n = basis.len();
    if k > n {
        return Err(RepError::Inconsistent(format!("{label}: multiplicity {k} exceeds weight space size {n}")));
    }
    let rows = raising_rows(&basis, p);
    let ker = kernel_of_rows(&rows, n, p, Some(n - k));
    Ok((ker.len() == k).then_some(ker))
}

/// Highest weight vectors mod p as polynomials.
pub fn hw_polys_mod_p(label: &IsotypicLabel, p: u32) -> Result<Option<Vec<ModPoly>>, RepError> {
    let basis = weight_space_basis(&label.weight()?);
    Ok(hw_space_mod_p(label, p)?.map(|ker| ker.iter().map(|v| to_modpoly(&basis, v, p)).collect()))
}

fn to_modpoly(basis: &[Monomial27], v: &[u32], p: u32) -> ModPoly {
    ModPoly::from_terms(p, basis.iter().zip(v).filter(|(_, &c)| c != 0).map(|(&m, &c)| (m, c)).collect())
}

/// Is `f` killed by every simple raising operator?
pub fn is_highest_weight(f: &Poly27) -> bool {
    f.weight().is_some() && SIMPLE_RAISES.iter().all(|&(a, r, s)| f.raise(a, r, s).is_zero())
}

/// Highest weight vectors of one isotypic label, exact over Q.
#[derive(Debug, Clone, PartialEq)]
pub struct HwSpace {
    pub label: IsotypicLabel,
    pub basis: Vec<Poly27>,
}

impl HwSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Exact basis of the highest weight vectors over Q, each made primitive.
///
/// The basis is the reduced echelon basis of the kernel, lifted from several
/// large primes and checked exactly against all raising operators.
pub fn hw_space(label: &IsotypicLabel) -> Result<HwSpace, RepError> {
    Ok(HwSpace { label: label.clone(), basis: hw_basis(label)? })
}

fn hw_basis(label: &IsotypicLabel) -> Result<Vec<Poly27>, RepError> {
    if label.degree() > MAX_LABEL_DEGREE {
        return Err(RepError::DegreeTooLarge(label.degree()));
    }
    let basis = weight_space_basis(&label.weight()?);
    let k = multiplicity(label) as usize;
    if k == 0 {
        return Ok(Vec::new());
    }
    let n = basis.len();
    let mut pivots_ref: Option<Vec<usize>> = None;
    let image = |p: u32| -> Option<Vec<u32>> {
        let ker = hw_space_mod_p(label, p).ok()??;
        let (rref, pivots) = row_space_rref(&ker, n, p);
        match &pivots_ref {
            None => pivots_ref = Some(pivots),
            Some(q) if *q != pivots => return None,
            _ => {}
        }
        Some(rref.concat())
    };
    let accept = |flat: &[BigRational]| -> bool { flat.chunks(n).all(|v| is_highest_weight(&from_coords(&basis, v))) };
    let flat =
        crate::linalg::modp::lift_vector(image, accept, 64).ok_or_else(|| RepError::LiftFailed(label.to_string()))?;
    Ok(flat.chunks(n).map(|v| from_coords(&basis, v).primitive()).collect())
}

fn from_coords(basis: &[Monomial27], v: &[BigRational]) -> Poly27 {
    Poly27::from_terms(
        Field::Rational,
        basis
            .iter()
            .zip(v)
            .filter(|(_, c)| *c != &BigRational::from_integer(0.into()))
            .map(|(&m, c)| (m, Scalar::Rational(c.clone())))
            .collect(),
    )
}

/// Spanning set search shared by the exact and modular module spans.
fn span_by_lowering<T, L, R>(start: T, p: u32, lower: L, residues: R) -> Vec<T>
where
    L: Fn(&T, Axis, usize, usize) -> T,
    R: Fn(&T) -> Vec<(Monomial27, u32)>,
{
    let mut blocks: HashMap<Weight, (HashMap<Monomial27, u32>, Echelon)> = HashMap::new();
    let mut insert = |t: &T| -> bool {
        let res = residues(t);
        if res.is_empty() {
            return false;
        }
        let w = res[0].0.weight();
        let (cols, ech) = blocks.entry(w).or_insert_with(|| {
            let basis = weight_space_basis(&w);
            let n = basis.len();
            let cols = basis.into_iter().enumerate().map(|(i, m)| (m, i as u32)).collect();
            (cols, Echelon::new(n, p))
        });
        let mut row: Vec<(u32, u32)> = res.iter().map(|(m, c)| (cols[m], *c)).collect();
        row.sort_unstable();
        ech.insert(&row)
    };
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    if insert(&start) {
        queue.push_back(start);
    }
    while let Some(t) = queue.pop_front() {
        for &(axis, r, s) in &SIMPLE_LOWERS {
            let u = lower(&t, axis, r, s);
            if insert(&u) {
                queue.push_back(u);
            }
        }
        out.push(t);
    }
    out
}

fn expected_module_dim(w: &Weight) -> Result<u64, RepError> {
    Ok(module_dim(&IsotypicLabel::from_weight(w)?))
}

/// Basis of the module generated by a highest weight vector, found by
/// repeated lowering; the size is checked against the Weyl dimension.
pub fn module_span(f: &Poly27) -> Result<Vec<Poly27>, RepError> {
    if !is_highest_weight(f) {
        return Err(RepError::NotHighestWeight);
    }
    let expected = expected_module_dim(&f.weight().unwrap())?;
    let out = span_by_lowering(
        f.clone(),
        P_CHECK,
        |t, a, r, s| t.lower(a, r, s),
        |t| t.residues(P_CHECK).unwrap_or_default(),
    );
    if out.len() as u64 != expected {
        return Err(RepError::Inconsistent(format!("module span has {} elements, expected {expected}", out.len())));
    }
    Ok(out)
}

/// Modular version of `module_span`; independence is tested in GF(p) itself.
pub fn module_span_mod_p(f: &ModPoly) -> Result<Vec<ModPoly>, RepError> {
    let Some(&(m, _)) = f.terms.first() else {
        return Err(RepError::NotHighestWeight);
    };
    let out = span_by_lowering(f.clone(), f.p, |t, a, r, s| t.lie(a, r, s), |t| t.terms.clone());
    check_len(out, &m.weight())
}

fn check_len(out: Vec<ModPoly>, w: &Weight) -> Result<Vec<ModPoly>, RepError> {
    let expected = expected_module_dim(w)?;
    if out.len() as u64 != expected {
        return Err(RepError::Inconsistent(format!("module span has {} elements, expected {expected}", out.len())));
    }
    Ok(out)
}

/// First prime from the large-prime list at which the modular highest weight space is clean.
pub fn first_good_prime(label: &IsotypicLabel) -> Result<u32, RepError> {
    for p in large_primes().take(8) {
        if hw_space_mod_p(label, p)?.is_some() {
            return Ok(p);
        }
    }
    Err(RepError::LiftFailed(label.to_string()))
}
