use super::partition::Partition;

/// Irreducible character of S_d via the Murnaghan-Nakayama rule on beta sets.
pub fn mn_character(lambda: &Partition, rho: &Partition) -> i64 {
    assert_eq!(lambda.size(), rho.size(), "character arguments of different size");
    let l = lambda.len();
    let beta: Vec<u32> = lambda.parts().iter().enumerate().map(|(i, &p)| p + (l - 1 - i) as u32).collect();
    mn_beta(&beta, rho.parts())
}

fn mn_beta(beta: &[u32], rho: &[u32]) -> i64 {
    let Some((&r, rest)) = rho.split_first() else {
        return 1;
    };
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.to_vec();
        next[idx] = target;
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn_beta(&next, rest);
    }
    total
}

/// Size of the centralizer of a permutation with cycle type `rho`.
pub fn z_mu(rho: &Partition) -> u128 {
    let mut z: u128 = 1;
    for (i, &m) in rho.multiplicities().iter().enumerate().skip(1) {
        for k in 1..=m as u128 {
            z *= i as u128 * k;
        }
    }
    z
}

fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

/// Kronecker coefficient: the multiplicity of the trivial module in the
/// triple tensor product of Specht modules.
pub fn kronecker(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    let d = lambda.size();
    assert!(mu.size() == d && nu.size() == d, "kronecker of partitions of different size");
    let n = factorial(d) as i128;
    let mut total: i128 = 0;
    for rho in Partition::all(d, d as usize) {
        let chi = mn_character(lambda, &rho) as i128 * mn_character(mu, &rho) as i128 * mn_character(nu, &rho) as i128;
        total += chi * (n / z_mu(&rho) as i128);
    }
    assert!(total >= 0 && total % n == 0, "character sum not divisible by d!");
    (total / n) as u64
}

/// Dimension of the irreducible GL_3 module with highest weight `lambda`.
pub fn weyl_dim(lambda: &Partition) -> u64 {
    let l = match lambda.padded3() {
        Ok(l) => l,
        Err(_) => return 0,
    };
    let mut num: u64 = 1;
    let mut den: u64 = 1;
    for i in 0..3 {
        for j in i + 1..3 {
            num *= (l[i] as i64 - l[j] as i64 + (j - i) as i64) as u64;
            den *= (j - i) as u64;
        }
    }
    num / den
}
