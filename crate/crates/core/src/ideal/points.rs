use rand::Rng;

use crate::linalg::Field;
use crate::poly::var_of;
use crate::tensor::{random_orbit_point, trifocal_normal_form, Tensor333, TRIFOCAL_NORMAL_FORM};

/// Image of the trifocal normal form under a uniformly random triple of
/// 3x3 matrices over GF(p). Singular draws still land in the variety.
pub fn random_point_mod_p(rng: &mut impl Rng, p: u32) -> [u32; 27] {
    let p64 = p as u64;
    let mut g = [[[0u64; 3]; 3]; 3];
    for m in g.iter_mut() {
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                *x = rng.gen_range(0..p64);
            }
        }
    }
    let mut out = [0u64; 27];
    for &(c, i0, j0, k0) in &TRIFOCAL_NORMAL_FORM {
        let c = c.rem_euclid(p as i64) as u64;
        for i in 0..3 {
            let a = c * g[0][i][i0] % p64;
            for j in 0..3 {
                let ab = a * g[1][j][j0] % p64;
                for k in 0..3 {
                    let v = var_of(i, j, k);
                    out[v] = (out[v] + ab * g[2][k][k0]) % p64;
                }
            }
        }
    }
    out.map(|x| x as u32)
}

/// `n` random rational points of the trifocal orbit, one seed each.
pub fn random_trifocal_points(seed: u64, n: usize) -> Vec<Tensor333> {
    let nf = trifocal_normal_form(Field::Rational);
    (0..n as u64).map(|i| random_orbit_point(&nf, seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(i))).collect()
}
