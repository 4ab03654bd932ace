//! Projective cameras, the tensor of a camera triple, and synthetic line transfer.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linalg::{DenseMatrix, Field, LinalgError, Scalar};
use crate::tensor::Tensor333;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CameraError {
    #[error("camera must be 3x4, got {0}x{1}")]
    Shape(usize, usize),
    #[error("camera has rank {0}, expected 3")]
    RankDeficient(usize),
    #[error("degenerate camera configuration: {0}")]
    Degenerate(String),
    #[error("degenerate transfer: {0}")]
    DegenerateTransfer(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A rank-3 3x4 matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Camera(DenseMatrix);

impl Camera {
    pub fn new(m: DenseMatrix) -> Result<Self, CameraError> {
        if m.rows() != 3 || m.cols() != 4 {
            return Err(CameraError::Shape(m.rows(), m.cols()));
        }
        let r = m.rank();
        if r != 3 {
            return Err(CameraError::RankDeficient(r));
        }
        Ok(Camera(m))
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.0
    }

    pub fn field(&self) -> Field {
        self.0.field()
    }

    /// Kernel vector; unique up to scale.
    pub fn focal_point(&self) -> [Scalar; 4] {
        let k = self.0.kernel_basis();
        debug_assert_eq!(k.len(), 1);
        k.into_iter().next().unwrap().try_into().unwrap()
    }

    pub fn apply(&self, x: &[Scalar; 4]) -> [Scalar; 3] {
        self.0.mul_vec(x).unwrap().try_into().unwrap()
    }
}

pub fn focal_point(a: &DenseMatrix) -> Result<[Scalar; 4], CameraError> {
    Ok(Camera::new(a.clone())?.focal_point())
}

fn proportional(u: &[Scalar], v: &[Scalar]) -> bool {
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            if !(&(&u[i] * &v[j]) - &(&u[j] * &v[i])).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Three cameras with distinct focal points whose stacked transposes have rank 4.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CameraTriple {
    pub cams: [Camera; 3],
}

impl CameraTriple {
    pub fn new(a1: DenseMatrix, a2: DenseMatrix, a3: DenseMatrix) -> Result<Self, CameraError> {
        let cams = [Camera::new(a1)?, Camera::new(a2)?, Camera::new(a3)?];
        let f = cams.iter().map(|c| c.field()).collect::<Vec<_>>();
        if f[0] != f[1] || f[1] != f[2] {
            return Err(LinalgError::FieldMismatch(f[0], if f[0] != f[1] { f[1] } else { f[2] }).into());
        }
        let stacked = cams[0].matrix().vstack(cams[1].matrix())?.vstack(cams[2].matrix())?;
        let r = stacked.rank();
        if r != 4 {
            return Err(CameraError::Degenerate(format!("stacked camera matrix has rank {r}")));
        }
        let foci = cams.each_ref().map(|c| c.focal_point());
        for (x, y) in [(0, 1), (0, 2), (1, 2)] {
            if proportional(&foci[x], &foci[y]) {
                return Err(CameraError::Degenerate(format!("cameras {} and {} share a focal point", x + 1, y + 1)));
            }
        }
        Ok(CameraTriple { cams })
    }

    /// Seeded triple with integer entries in [-5, 5]; invalid draws are retried.
    pub fn random(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let mut draw = || {
                let rows: Vec<Vec<i64>> = (0..3).map(|_| (0..4).map(|_| rng.gen_range(-5..=5)).collect()).collect();
                let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
                DenseMatrix::from_i64(&refs, Field::Rational)
            };
            let (a, b, c) = (draw(), draw(), draw());
            if let Ok(t) = CameraTriple::new(a, b, c) {
                return t;
            }
        }
    }

    pub fn camera(&self, i: usize) -> &Camera {
        &self.cams[i]
    }
}

/// T_ijk = sum over c < d of eps(k, c, d) det[row i of A1; row j of A2; rows c, d of A3].
pub fn trifocal_from_cameras(ct: &CameraTriple) -> Result<Tensor333, CameraError> {
    let [a1, a2, a3] = ct.cams.each_ref().map(|c| c.matrix());
    let field = a1.field();
    // complementary pair of each k with the sign of the permutation (k, c, d)
    let pairs = [(1, 2, 1i64), (0, 2, -1), (0, 1, 1)];
    let t = Tensor333::from_fn(field, |i, j, k| {
        let (c, d, sign) = pairs[k];
        let rows = vec![a1.row(i).to_vec(), a2.row(j).to_vec(), a3.row(c).to_vec(), a3.row(d).to_vec()];
        let det = DenseMatrix::from_rows(rows).unwrap().det().unwrap();
        det.scale_i64(sign)
    });
    if t.is_zero() {
        return Err(CameraError::Degenerate("all minors vanish".into()));
    }
    Ok(t)
}

pub fn cross(u: &[Scalar; 3], v: &[Scalar; 3]) -> [Scalar; 3] {
    [&(&u[1] * &v[2]) - &(&u[2] * &v[1]), &(&u[2] * &v[0]) - &(&u[0] * &v[2]), &(&u[0] * &v[1]) - &(&u[1] * &v[0])]
}

/// Back-project l1 and l2 to planes, intersect them, and image the line in the third view.
pub fn transfer_geometric(ct: &CameraTriple, l1: &[Scalar; 3], l2: &[Scalar; 3]) -> Result<[Scalar; 3], CameraError> {
    let pi1 = ct.cams[0].matrix().transpose().mul_vec(l1)?;
    let pi2 = ct.cams[1].matrix().transpose().mul_vec(l2)?;
    let planes = DenseMatrix::from_rows(vec![pi1, pi2])?;
    if planes.rank() != 2 {
        return Err(CameraError::DegenerateTransfer("back-projected planes coincide or vanish".into()));
    }
    let line = planes.kernel_basis();
    let p: [Scalar; 4] = line[0].clone().try_into().unwrap();
    let q: [Scalar; 4] = line[1].clone().try_into().unwrap();
    let l3 = cross(&ct.cams[2].apply(&p), &ct.cams[2].apply(&q));
    if l3.iter().all(Scalar::is_zero) {
        return Err(CameraError::DegenerateTransfer("space line passes through the third focal point".into()));
    }
    Ok(l3)
}

/// True when the two vectors are proportional (all 2x2 minors vanish).
pub fn parallel(u: &[Scalar], v: &[Scalar]) -> bool {
    proportional(u, v)
}
