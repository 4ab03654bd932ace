use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::OrbitError;
use crate::linalg::{Field, Scalar};
use crate::tensor::{act, trifocal_normal_form, GroupElement, Tensor333};

/// Codimensions of the components Sub_{2,3,3}, the trifocal variety and P-Rank (2,2,2).
pub const CODIM_SUB233: usize = 7;
pub const CODIM_TRIFOCAL: usize = 8;
pub const CODIM_PRANK222: usize = 10;

/// Tensor with one term e_i ⊗ e_{j-3} ⊗ e_{k-6} per three-digit code `ijk`,
/// digits i in 1..=3, j in 4..=6, k in 7..=9.
pub fn decode_nurmiev(codes: &[u32]) -> Result<Tensor333, OrbitError> {
    let mut terms = Vec::with_capacity(codes.len());
    for &code in codes {
        let (i, j, k) = (code / 100, code / 10 % 10, code % 10);
        if code >= 1000 || !(1..=3).contains(&i) || !(4..=6).contains(&j) || !(7..=9).contains(&k) {
            return Err(OrbitError::BadCode(code));
        }
        terms.push((1, (i - 1) as usize, (j - 4) as usize, (k - 7) as usize));
    }
    Ok(Tensor333::from_terms(&terms, Field::Rational))
}

/// The skew family: the A-pencil is lambda times the cross-product matrix of (a1, a2, a3).
pub fn f_family(lambda: &Scalar) -> Tensor333 {
    let f = Tensor333::from_terms(
        &[(1, 0, 1, 2), (1, 1, 2, 0), (1, 2, 0, 1), (-1, 0, 2, 1), (-1, 1, 0, 2), (-1, 2, 1, 0)],
        lambda.field(),
    );
    f.scale(lambda)
}

pub fn f_tensor() -> Tensor333 {
    f_family(&Scalar::from_i64(1, Field::Rational))
}

pub fn orbit17() -> Tensor333 {
    Tensor333::from_terms(&[(1, 0, 0, 1), (1, 0, 1, 0), (1, 1, 0, 2), (1, 1, 2, 0)], Field::Rational)
}

pub fn orbit18() -> Tensor333 {
    Tensor333::from_terms(&[(1, 0, 0, 0), (1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 2)], Field::Rational)
}

/// Apply the factor cycle a -> b -> c -> a `times` times.
pub fn primed(t: &Tensor333, times: usize) -> Tensor333 {
    let mut out = t.clone();
    for _ in 0..times % 3 {
        out = out.cycle_factors();
    }
    out
}

/// A random point of the subspace variety Sub_{p,q,r}: random entries on the
/// leading p x q x r block, then a random group translate.
pub fn sub_generic(p: usize, q: usize, r: usize, seed: u64) -> Result<Tensor333, OrbitError> {
    if !(1..=3).contains(&p) || !(1..=3).contains(&q) || !(1..=3).contains(&r) {
        return Err(OrbitError::BadShape(p, q, r));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let core = Tensor333::from_fn(Field::Rational, |i, j, k| {
        let v = if i < p && j < q && k < r { rng.gen_range(-9..=9) } else { 0 };
        Scalar::from_i64(v, Field::Rational)
    });
    let g = GroupElement::random(&mut rng, 5, Field::Rational);
    Ok(act(&g, &core)?)
}

/// A tensor with independent random integer entries in [-9, 9].
pub fn random_tensor(seed: u64) -> Tensor333 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Tensor333::from_fn(Field::Rational, |_, _, _| Scalar::from_i64(rng.gen_range(-9..=9), Field::Rational))
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalForm {
    pub name: String,
    pub tensor: Tensor333,
    pub description: String,
}

fn nf(name: &str, tensor: Tensor333, description: &str) -> NormalForm {
    NormalForm { name: name.to_string(), tensor, description: description.to_string() }
}

/// Named representatives: the trifocal normal form, orbit 11, orbits 17 and
/// 18 with their cyclic images, F, and sample points of the subspace varieties.
pub fn catalog() -> Vec<NormalForm> {
    let o11 = decode_nurmiev(&[149, 167, 248, 357]).expect("valid codes");
    let mut out = vec![
        nf("trifocal-11''", trifocal_normal_form(Field::Rational), "normal form of a trifocal tensor"),
        nf("11", o11, "codes 149 167 248 357"),
        nf("17", orbit17(), "a1(b1c2 + b2c1) + a2(b1c3 + b3c1)"),
        nf("17'", primed(&orbit17(), 1), "orbit 17 after one factor cycle"),
        nf("17''", primed(&orbit17(), 2), "orbit 17 after two factor cycles"),
        nf("18", orbit18(), "a1(b1c1 + b2c2) + a2(b1c2 + b2c3)"),
        nf("18'", primed(&orbit18(), 1), "orbit 18 after one factor cycle"),
        nf("18''", primed(&orbit18(), 2), "orbit 18 after two factor cycles"),
        nf("F", f_tensor(), "skew family at lambda = 1"),
    ];
    for (name, (p, q, r)) in
        [("Sub233-generic", (2, 3, 3)), ("Sub323-generic", (3, 2, 3)), ("Sub332-generic", (3, 3, 2))]
    {
        out.push(nf(name, sub_generic(p, q, r, 17).expect("valid shape"), "random point of a subspace variety"));
    }
    out
}

pub fn lookup(name: &str) -> Option<NormalForm> {
    catalog().into_iter().find(|n| n.name == name)
}
