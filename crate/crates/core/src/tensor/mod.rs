//! 3x3x3 tensors, their slices, flattenings, pencils and the GL(3)^3 action.
//!
//! Indices are 0-based throughout: `t.get(i, j, k)` is T_{i+1,j+1,k+1}, and
//! in the a/b/c notation a_{ij} = T_{ij1}, b_{ij} = T_{ij2}, c_{ij} = T_{ij3}.

mod pencil;

pub use pencil::{Pencil, TernaryForm};

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{DenseMatrix, Field, LinalgError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("slice index {0} out of range 0..3")]
    IndexOutOfRange(usize),
    #[error("group element has a singular factor")]
    SingularGroupElement,
    #[error("expected a 3x3 matrix, got {0}x{1}")]
    NotThreeByThree(usize, usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    A,
    B,
    C,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::A, Axis::B, Axis::C];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axis::A => "A",
            Axis::B => "B",
            Axis::C => "C",
        };
        f.write_str(s)
    }
}

/// Ranks along the three axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RankTriple {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl RankTriple {
    pub fn new(a: usize, b: usize, c: usize) -> Self {
        RankTriple { a, b, c }
    }

    pub fn as_array(self) -> [usize; 3] {
        [self.a, self.b, self.c]
    }

    pub fn get(self, axis: Axis) -> usize {
        self.as_array()[axis.index()]
    }

    /// Same multiset of entries.
    pub fn is_permutation_of(self, other: RankTriple) -> bool {
        let mut x = self.as_array();
        let mut y = other.as_array();
        x.sort_unstable();
        y.sort_unstable();
        x == y
    }
}

impl fmt::Display for RankTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// Element of A* (x) B* (x) C, entries in a single field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tensor333 {
    field: Field,
    data: Vec<Scalar>,
}

#[inline]
pub fn flat_index(i: usize, j: usize, k: usize) -> usize {
    9 * i + 3 * j + k
}

impl Tensor333 {
    pub fn zeros(field: Field) -> Self {
        Tensor333 { field, data: vec![field.zero(); 27] }
    }

    pub fn from_fn(field: Field, mut f: impl FnMut(usize, usize, usize) -> Scalar) -> Self {
        let mut t = Self::zeros(field);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let v = f(i, j, k);
                    assert_eq!(v.field(), field);
                    t.data[flat_index(i, j, k)] = v;
                }
            }
        }
        t
    }

    pub fn from_i64(entries: [[[i64; 3]; 3]; 3], field: Field) -> Self {
        Self::from_fn(field, |i, j, k| Scalar::from_i64(entries[i][j][k], field))
    }

    /// Entries in flat order 9i+3j+k.
    pub fn from_flat(values: Vec<Scalar>) -> Result<Self, TensorError> {
        if values.len() != 27 {
            return Err(TensorError::Linalg(LinalgError::DimensionMismatch(format!(
                "{} entries, expected 27",
                values.len()
            ))));
        }
        let field = values[0].field();
        if let Some(bad) = values.iter().find(|s| s.field() != field) {
            return Err(LinalgError::FieldMismatch(field, bad.field()).into());
        }
        Ok(Tensor333 { field, data: values })
    }

    /// Sum of unit tensors e_i (x) e_j (x) e_k with the given coefficients.
    pub fn from_terms(terms: &[(i64, usize, usize, usize)], field: Field) -> Self {
        let mut t = Self::zeros(field);
        for &(c, i, j, k) in terms {
            let idx = flat_index(i, j, k);
            t.data[idx] = &t.data[idx] + &Scalar::from_i64(c, field);
        }
        t
    }

    pub fn rank_one(u: &[Scalar; 3], v: &[Scalar; 3], w: &[Scalar; 3]) -> Self {
        let field = u[0].field();
        Self::from_fn(field, |i, j, k| &(&u[i] * &v[j]) * &w[k])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[flat_index(i, j, k)]
    }

    pub fn flat(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Tensor333 { field: self.field, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn add(&self, other: &Tensor333) -> Self {
        Tensor333 { field: self.field, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn to_field(&self, p: u32) -> Result<Self, TensorError> {
        let data = self.data.iter().map(|s| s.reduce(p)).collect::<Result<_, _>>()?;
        Ok(Tensor333 { field: Field::Prime(p), data })
    }

    /// Entry of the tensor at a position given in axis-relative order:
    /// `(s, r, c)` is the slice index along `axis` followed by the two
    /// remaining indices in their natural order.
    fn axis_entry(&self, axis: Axis, s: usize, r: usize, c: usize) -> &Scalar {
        match axis {
            Axis::A => self.get(s, r, c),
            Axis::B => self.get(r, s, c),
            Axis::C => self.get(r, c, s),
        }
    }

    /// W_i, Y_j or Z_k with 0-based `index`.
    pub fn slice(&self, axis: Axis, index: usize) -> Result<DenseMatrix, TensorError> {
        if index >= 3 {
            return Err(TensorError::IndexOutOfRange(index));
        }
        let rows = (0..3).map(|r| (0..3).map(|c| self.axis_entry(axis, index, r, c).clone()).collect()).collect();
        Ok(DenseMatrix::from_rows(rows)?)
    }

    /// 3x9 matrix whose row s is the row-major vectorization of slice s.
    pub fn flattening(&self, axis: Axis) -> DenseMatrix {
        let rows =
            (0..3).map(|s| (0..9).map(|rc| self.axis_entry(axis, s, rc / 3, rc % 3).clone()).collect()).collect();
        DenseMatrix::from_rows(rows).unwrap()
    }

    pub fn frank(&self) -> RankTriple {
        let r = Axis::ALL.map(|ax| self.flattening(ax).rank());
        RankTriple::new(r[0], r[1], r[2])
    }

    pub fn pencil(&self, axis: Axis) -> Pencil {
        Pencil::new([0, 1, 2].map(|s| self.slice(axis, s).unwrap()))
    }

    pub fn prank(&self) -> RankTriple {
        let r = Axis::ALL.map(|ax| self.pencil(ax).generic_rank());
        RankTriple::new(r[0], r[1], r[2])
    }

    /// w_k = sum_{i,j} T_ijk u_i v_j.
    pub fn contract(&self, u: &[Scalar; 3], v: &[Scalar; 3]) -> [Scalar; 3] {
        [0, 1, 2].map(|k| {
            let mut acc = self.field.zero();
            for i in 0..3 {
                for j in 0..3 {
                    let t = self.get(i, j, k);
                    if !t.is_zero() {
                        acc = &acc + &(&(t * &u[i]) * &v[j]);
                    }
                }
            }
            acc
        })
    }

    /// Cyclic relabelling a -> b -> c -> a of the three factors:
    /// the result satisfies T'_{kij} = T_{ijk}.
    pub fn cycle_factors(&self) -> Self {
        Self::from_fn(self.field, |k, i, j| self.get(i, j, k).clone())
    }

    /// Multiply along one axis by a 3x3 matrix, which need not be invertible.
    pub fn mode_product(&self, axis: Axis, g: &DenseMatrix) -> Self {
        Self::from_fn(self.field, |i, j, k| {
            let mut acc = self.field.zero();
            for s in 0..3 {
                let (coef, entry) = match axis {
                    Axis::A => (g.get(i, s), self.get(s, j, k)),
                    Axis::B => (g.get(j, s), self.get(i, s, k)),
                    Axis::C => (g.get(k, s), self.get(i, j, s)),
                };
                if !coef.is_zero() && !entry.is_zero() {
                    acc = &acc + &(coef * entry);
                }
            }
            acc
        })
    }
}

impl fmt::Display for Tensor333 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let v = self.get(i, j, k);
                    if v.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    if !v.is_one() {
                        write!(f, "({v})*")?;
                    }
                    write!(f, "T{}{}{}", i + 1, j + 1, k + 1)?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A triple (gA, gB, gC) of invertible 3x3 matrices.
///
/// It acts by T'_{ijk} = sum gA[i][i'] gB[j][j'] gC[k][k'] T_{i'j'k'}. With
/// this convention contract(g.T, u, v) = gC . contract(T, gA^T u, gB^T v).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    pub ga: DenseMatrix,
    pub gb: DenseMatrix,
    pub gc: DenseMatrix,
}

impl GroupElement {
    pub fn new(ga: DenseMatrix, gb: DenseMatrix, gc: DenseMatrix) -> Result<Self, TensorError> {
        for m in [&ga, &gb, &gc] {
            if m.rows() != 3 || m.cols() != 3 {
                return Err(TensorError::NotThreeByThree(m.rows(), m.cols()));
            }
            if m.det()?.is_zero() {
                return Err(TensorError::SingularGroupElement);
            }
        }
        Ok(GroupElement { ga, gb, gc })
    }

    pub fn identity(field: Field) -> Self {
        let i = DenseMatrix::identity(3, field);
        GroupElement { ga: i.clone(), gb: i.clone(), gc: i }
    }

    pub fn compose(&self, other: &GroupElement) -> Self {
        GroupElement {
            ga: self.ga.mul(&other.ga).unwrap(),
            gb: self.gb.mul(&other.gb).unwrap(),
            gc: self.gc.mul(&other.gc).unwrap(),
        }
    }

    pub fn factor(&self, axis: Axis) -> &DenseMatrix {
        match axis {
            Axis::A => &self.ga,
            Axis::B => &self.gb,
            Axis::C => &self.gc,
        }
    }

    /// Seeded draw with entries in [-bound, bound]; singular draws are retried.
    pub fn random(rng: &mut impl Rng, bound: i64, field: Field) -> Self {
        let mut draw = || loop {
            let rows: Vec<Vec<i64>> = (0..3).map(|_| (0..3).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let m = DenseMatrix::from_i64(&refs, field);
            if !m.det().unwrap().is_zero() {
                return m;
            }
        };
        let (ga, gb, gc) = (draw(), draw(), draw());
        GroupElement { ga, gb, gc }
    }
}

pub fn act(g: &GroupElement, t: &Tensor333) -> Result<Tensor333, TensorError> {
    for m in [&g.ga, &g.gb, &g.gc] {
        if m.rows() != 3 || m.cols() != 3 {
            return Err(TensorError::NotThreeByThree(m.rows(), m.cols()));
        }
        if m.field() != t.field() {
            return Err(LinalgError::FieldMismatch(m.field(), t.field()).into());
        }
        if m.det()?.is_zero() {
            return Err(TensorError::SingularGroupElement);
        }
    }
    Ok(t.mode_product(Axis::A, &g.ga).mode_product(Axis::B, &g.gb).mode_product(Axis::C, &g.gc))
}

/// Terms (coefficient, i, j, k) of the normal form of a trifocal tensor.
pub const TRIFOCAL_NORMAL_FORM: [(i64, usize, usize, usize); 4] =
    [(1, 0, 1, 0), (1, 2, 0, 0), (1, 1, 1, 1), (1, 2, 2, 2)];

pub fn trifocal_normal_form(field: Field) -> Tensor333 {
    Tensor333::from_terms(&TRIFOCAL_NORMAL_FORM, field)
}

/// `act(g, nf)` for a group element drawn from `seed` with entries in [-5, 5].
pub fn random_orbit_point(nf: &Tensor333, seed: u64) -> Tensor333 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = GroupElement::random(&mut rng, 5, nf.field());
    act(&g, nf).expect("sampled group element is invertible")
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn s(v: i64) -> Scalar {
        Scalar::from_i64(v, Q)
    }

    /// a1 b2 c1 + a3 b1 c1 + a2 b2 c2 + a3 b3 c3
    fn normal_form() -> Tensor333 {
        Tensor333::from_terms(&[(1, 0, 1, 0), (1, 2, 0, 0), (1, 1, 1, 1), (1, 2, 2, 2)], Q)
    }

    /// The six-term form whose C-slices are listed with the normal form.
    fn slice_form() -> Tensor333 {
        Tensor333::from_terms(
            &[(-1, 0, 1, 0), (1, 2, 0, 0), (-1, 1, 1, 1), (1, 2, 1, 1), (-1, 2, 1, 2), (1, 2, 2, 2)],
            Q,
        )
    }

    fn f_tensor() -> Tensor333 {
        Tensor333::from_terms(
            &[(1, 0, 1, 2), (1, 1, 2, 0), (1, 2, 0, 1), (-1, 0, 2, 1), (-1, 1, 0, 2), (-1, 2, 1, 0)],
            Q,
        )
    }

    #[test]
    fn c_slice_of_slice_form() {
        let z1 = slice_form().slice(Axis::C, 0).unwrap();
        let expect = DenseMatrix::from_i64(&[&[0, -1, 0], &[0, 0, 0], &[1, 0, 0]], Q);
        assert_eq!(z1, expect);
        assert!(Tensor333::zeros(Q).slice(Axis::B, 2).unwrap().is_zero());
        assert!(normal_form().slice(Axis::A, 3).is_err());
    }

    #[test]
    fn rank_one_slices() {
        let u = [s(1), s(2), s(-1)];
        let v = [s(3), s(0), s(1)];
        let w = [s(2), s(1), s(5)];
        let t = Tensor333::rank_one(&u, &v, &w);
        for i in 0..3 {
            let sl = t.slice(Axis::A, i).unwrap();
            for j in 0..3 {
                for k in 0..3 {
                    assert_eq!(sl.get(j, k), &(&u[i] * &(&v[j] * &w[k])));
                }
            }
        }
        assert_eq!(t.frank(), RankTriple::new(1, 1, 1));
    }

    #[test]
    fn flattenings() {
        let fc = slice_form().flattening(Axis::C);
        assert_eq!(fc.rank(), 3);
        for k in 0..3 {
            let z = slice_form().slice(Axis::C, k).unwrap();
            for r in 0..3 {
                for c in 0..3 {
                    assert_eq!(fc.get(k, 3 * r + c), z.get(r, c));
                }
            }
        }
        let fa = f_tensor().flattening(Axis::A);
        // rows e23 - e32, e31 - e13, e12 - e21 in 3x3 block coordinates
        let mut expect = DenseMatrix::zeros(3, 9, Q);
        for (row, (p, m)) in [((1, 2), (2, 1)), ((2, 0), (0, 2)), ((0, 1), (1, 0))].iter().enumerate() {
            expect.set(row, 3 * p.0 + p.1, s(1));
            expect.set(row, 3 * m.0 + m.1, s(-1));
        }
        assert_eq!(fa, expect);
        assert_eq!(fa.rank(), 3);
        assert!(Tensor333::zeros(Q).flattening(Axis::B).is_zero());
    }

    #[test]
    fn rank_invariants_of_known_forms() {
        assert_eq!(normal_form().frank(), RankTriple::new(3, 3, 3));
        assert_eq!(normal_form().prank(), RankTriple::new(3, 3, 2));
        assert_eq!(slice_form().prank(), RankTriple::new(3, 3, 2));
        assert_eq!(f_tensor().prank(), RankTriple::new(2, 2, 2));
        assert_eq!(f_tensor().frank(), RankTriple::new(3, 3, 3));
        assert_eq!(Tensor333::zeros(Q).frank(), RankTriple::new(0, 0, 0));
        assert_eq!(Tensor333::zeros(Q).prank(), RankTriple::new(0, 0, 0));
    }

    #[test]
    fn reassembling_slices() {
        let t = random_orbit_point(&normal_form(), 9);
        for ax in Axis::ALL {
            let sl: Vec<_> = (0..3).map(|i| t.slice(ax, i).unwrap()).collect();
            let back = Tensor333::from_fn(Q, |i, j, k| match ax {
                Axis::A => sl[i].get(j, k).clone(),
                Axis::B => sl[j].get(i, k).clone(),
                Axis::C => sl[k].get(i, j).clone(),
            });
            assert_eq!(back, t);
        }
    }

    #[test]
    fn action_basics() {
        let t = normal_form();
        assert_eq!(act(&GroupElement::identity(Q), &t).unwrap(), t);
        let d = |x: i64| DenseMatrix::identity(3, Q).scale(&s(x));
        let g = GroupElement::new(d(2), d(3), d(-5)).unwrap();
        assert_eq!(act(&g, &t).unwrap(), t.scale(&s(-30)));
        let sing = DenseMatrix::zeros(3, 3, Q);
        assert!(GroupElement::new(sing.clone(), d(1), d(1)).is_err());
        let bad = GroupElement { ga: sing, gb: d(1), gc: d(1) };
        assert_eq!(act(&bad, &t), Err(TensorError::SingularGroupElement));
    }

    #[test]
    fn action_is_a_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let t = random_orbit_point(&f_tensor(), 1);
        for _ in 0..5 {
            let g = GroupElement::random(&mut rng, 3, Q);
            let h = GroupElement::random(&mut rng, 3, Q);
            let lhs = act(&g.compose(&h), &t).unwrap();
            let rhs = act(&g, &act(&h, &t).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn ranks_are_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for nf in [normal_form(), f_tensor()] {
            let (fr, pr) = (nf.frank(), nf.prank());
            for _ in 0..100 {
                let g = GroupElement::random(&mut rng, 5, Q);
                let t = act(&g, &nf).unwrap();
                assert_eq!(t.frank(), fr);
                assert_eq!(t.prank(), pr);
            }
        }
    }

    #[test]
    fn contraction_equivariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for seed in 0..20 {
            let t = random_orbit_point(&normal_form(), seed);
            let g = GroupElement::random(&mut rng, 4, Q);
            let u = [0, 1, 2].map(|_| s(rng.gen_range(-5..=5)));
            let v = [0, 1, 2].map(|_| s(rng.gen_range(-5..=5)));
            let lhs = act(&g, &t).unwrap().contract(&u, &v);
            let ua: [Scalar; 3] = g.ga.transpose().mul_vec(&u).unwrap().try_into().unwrap();
            let vb: [Scalar; 3] = g.gb.transpose().mul_vec(&v).unwrap().try_into().unwrap();
            let inner = t.contract(&ua, &vb);
            let rhs = g.gc.mul_vec(&inner).unwrap();
            assert_eq!(lhs.to_vec(), rhs);
        }
    }

    #[test]
    fn contraction_of_rank_one() {
        let (u, v, w) = ([s(1), s(2), s(3)], [s(0), s(-1), s(4)], [s(5), s(1), s(-2)]);
        let t = Tensor333::rank_one(&u, &v, &w);
        let (u2, v2) = ([s(2), s(1), s(1)], [s(1), s(1), s(3)]);
        let dot = |a: &[Scalar; 3], b: &[Scalar; 3]| &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2]);
        let c = &dot(&u, &u2) * &dot(&v, &v2);
        assert_eq!(t.contract(&u2, &v2), [0, 1, 2].map(|k| &c * &w[k]));
        let zero = [s(0), s(0), s(0)];
        assert!(t.contract(&zero, &v2).iter().all(Scalar::is_zero));
    }

    #[test]
    fn random_points_are_deterministic() {
        let a = random_orbit_point(&normal_form(), 77);
        assert_eq!(a, random_orbit_point(&normal_form(), 77));
        assert_eq!(a.prank(), RankTriple::new(3, 3, 2));
        assert!(random_orbit_point(&Tensor333::zeros(Q), 3).is_zero());
    }

    #[test]
    fn cycling_permutes_rank_triples() {
        let t = normal_form();
        let c = t.cycle_factors();
        assert_eq!(c.prank(), RankTriple::new(2, 3, 3));
        assert_eq!(c.cycle_factors().cycle_factors(), t);
    }
}
