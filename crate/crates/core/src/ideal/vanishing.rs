use rand::Rng;
use serde::Serialize;

use super::points::random_point_mod_p;
use super::IdealError;
use crate::linalg::modp::ModMatrix;
use crate::linalg::{DenseMatrix, Field};
use crate::poly::{ModPoly, Poly27};
use crate::rep::{HwSpace, IsotypicLabel};
use crate::tensor::Tensor333;

/// The part of a highest weight space that vanishes on the trifocal variety.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VanishingReport {
    pub label: IsotypicLabel,
    pub kronecker: usize,
    pub ideal_multiplicity: usize,
    #[serde(skip)]
    pub certificate: Vec<Poly27>,
}

/// Exact kernel of the evaluation matrix of `h.basis` at `points`, checked
/// again on `fresh`.
pub fn vanishing_subspace(
    h: &HwSpace,
    points: &[Tensor333],
    fresh: &[Tensor333],
) -> Result<VanishingReport, IdealError> {
    let m = h.basis.len();
    if points.len() < m {
        return Err(IdealError::Inconsistent(format!("{} points for a {m}-dimensional space", points.len())));
    }
    let mut certificate = Vec::new();
    if m > 0 {
        let rows = points
            .iter()
            .map(|t| h.basis.iter().map(|f| f.evaluate(t)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let mat = DenseMatrix::from_rows(rows).map_err(|e| IdealError::Inconsistent(e.to_string()))?;
        for v in mat.kernel_basis() {
            let mut f = Poly27::zero(Field::Rational);
            for (c, b) in v.iter().zip(&h.basis) {
                if !c.is_zero() {
                    f = f.add(&b.scale(c));
                }
            }
            certificate.push(f.primitive());
        }
    }
    for t in fresh {
        for f in &certificate {
            if !f.evaluate(t)?.is_zero() {
                return Err(IdealError::FalsePositive(h.label.to_string()));
            }
        }
    }
    Ok(VanishingReport { label: h.label.clone(), kronecker: m, ideal_multiplicity: certificate.len(), certificate })
}

fn evaluation_kernel(hw: &[ModPoly], p: u32, points: &[[u32; 27]]) -> Vec<Vec<u32>> {
    let rows: Vec<Vec<u32>> = points.iter().map(|x| hw.iter().map(|f| f.evaluate(x)).collect()).collect();
    ModMatrix::from_rows(&rows, hw.len(), p).kernel_basis()
}

/// Coefficient vectors (over `hw`) of the combinations vanishing at
/// `oversample * hw.len()` random points mod p, confirmed on a fresh batch.
pub fn vanishing_mod_p(
    hw: &[ModPoly],
    p: u32,
    rng: &mut impl Rng,
    oversample: usize,
) -> Result<Vec<Vec<u32>>, IdealError> {
    let m = hw.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let mut n = oversample.max(1) * m;
    for _ in 0..3 {
        let pts: Vec<[u32; 27]> = (0..n).map(|_| random_point_mod_p(rng, p)).collect();
        let ker = evaluation_kernel(hw, p, &pts);
        let combos: Vec<ModPoly> = ker.iter().map(|c| ModPoly::combination(p, hw, c)).collect();
        let ok = (0..m + 2).all(|_| {
            let x = random_point_mod_p(rng, p);
            combos.iter().all(|f| f.evaluate(&x) == 0)
        });
        if ok {
            return Ok(ker);
        }
        n *= 2;
    }
    Err(IdealError::FalsePositive(format!("{m}-dimensional highest weight space mod {p}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::random_trifocal_points;
    use crate::rep::{hw_polys_mod_p, hw_space};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn label(s: &str) -> IsotypicLabel {
        IsotypicLabel::parse(s).unwrap()
    }

    #[test]
    fn cubic_labels() {
        let pts = random_trifocal_points(1, 4);
        let fresh = random_trifocal_points(2, 4);
        let r = vanishing_subspace(&hw_space(&label("111,111,3")).unwrap(), &pts, &fresh).unwrap();
        assert_eq!((r.kronecker, r.ideal_multiplicity), (1, 1));
        let r = vanishing_subspace(&hw_space(&label("3,111,111")).unwrap(), &pts, &fresh).unwrap();
        assert_eq!((r.kronecker, r.ideal_multiplicity), (1, 0));
    }

    #[test]
    fn modular_and_exact_agree_in_degree_three() {
        let p = 32003;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pts = random_trifocal_points(3, 12);
        let fresh = random_trifocal_points(4, 6);
        for l in IsotypicLabel::all(3) {
            let hw = hw_polys_mod_p(&l, p).unwrap().unwrap();
            let modular = vanishing_mod_p(&hw, p, &mut rng, 2).unwrap().len();
            let exact = vanishing_subspace(&hw_space(&l).unwrap(), &pts, &fresh).unwrap().ideal_multiplicity;
            assert_eq!(modular, exact, "{l}");
            assert_eq!(exact, (l == label("111,111,3")) as usize, "{l}");
        }
    }

    #[test]
    fn too_few_points() {
        let h = hw_space(&label("1,1,1")).unwrap();
        assert!(vanishing_subspace(&h, &[], &[]).is_err());
    }
}
