use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ideal::{default_inventory, ExactInventory};
use crate::linalg::{Field, Scalar};
use crate::poly::{m3_generators, IntPoly, ModPoly, Poly27};
use crate::rep::IsotypicLabel;
use crate::tensor::{act, Axis, GroupElement, RankTriple, Tensor333};

/// Integer forms of the generator modules of degree five and six.
#[derive(Debug, Clone)]
pub struct ModuleTable {
    pub m5: Vec<(IsotypicLabel, Vec<Poly27>, Vec<IntPoly>)>,
    pub m6: Vec<(IsotypicLabel, Vec<Poly27>, Vec<IntPoly>)>,
}

impl ModuleTable {
    pub fn from_inventory(inv: &ExactInventory) -> Self {
        let collect = |d: u32| {
            inv.of_degree(d)
                .map(|(i, g)| {
                    let basis = inv.module_basis(i).to_vec();
                    let ints = basis.iter().map(|f| f.integer_form().expect("integer coefficients")).collect();
                    (g.label.clone(), basis, ints)
                })
                .collect()
        };
        ModuleTable { m5: collect(5), m6: collect(6) }
    }

    /// Table built from the default inventory, once per process.
    pub fn default_table() -> &'static ModuleTable {
        static TABLE: OnceLock<ModuleTable> = OnceLock::new();
        TABLE.get_or_init(|| ModuleTable::from_inventory(default_inventory()))
    }
}

/// Tensor entries as integers with the denominators cleared.
fn cleared(t: &Tensor333) -> Option<[i128; 27]> {
    let mut den = num_bigint::BigInt::one();
    for s in t.flat() {
        den = den.lcm(s.as_rational()?.denom());
    }
    let v: Vec<i128> = t
        .flat()
        .iter()
        .map(|s| {
            let q = s.as_rational().unwrap();
            (q.numer() * (&den / q.denom())).to_i128()
        })
        .collect::<Option<_>>()?;
    v.try_into().ok()
}

/// Does every polynomial vanish at `t`? Exact for rational and modular tensors.
pub fn all_vanish(polys: &[Poly27], ints: &[IntPoly], t: &Tensor333) -> bool {
    match t.field() {
        Field::Rational => match cleared(t) {
            Some(x) => ints.iter().all(|f| f.vanishes_at(&x)),
            None => polys.iter().all(|f| f.evaluate(t).map(|v| v.is_zero()).unwrap_or(false)),
        },
        Field::Prime(p) => {
            let x: [u32; 27] = std::array::from_fn(|v| match &t.flat()[v] {
                Scalar::Modular(a) => a.value(),
                _ => unreachable!(),
            });
            polys.iter().all(|f| ModPoly::from_poly(f, p).map(|m| m.evaluate(&x) == 0).unwrap_or(false))
        }
    }
}

fn m3_vanishes(axis: Axis, t: &Tensor333) -> bool {
    let f = m3_generators(axis);
    let ints: Vec<IntPoly> = f.iter().map(|g| g.integer_form().unwrap()).collect();
    all_vanish(&f, &ints, t)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub frank: RankTriple,
    pub prank: RankTriple,
    /// Whether the ten cubics of each axis vanish, in the order A, B, C.
    pub m3_axis_vanishing: [bool; 3],
    /// Whether every degree-five generator vanishes; absent without a module table.
    pub m5_vanishing: Option<bool>,
    /// Per degree-six module, whether it vanishes; absent without a module table.
    pub m6_flags: Option<Vec<(IsotypicLabel, bool)>>,
}

/// Ranks and cubic vanishing only.
pub fn signature(t: &Tensor333) -> Signature {
    Signature {
        frank: t.frank(),
        prank: t.prank(),
        m3_axis_vanishing: Axis::ALL.map(|a| m3_vanishes(a, t)),
        m5_vanishing: None,
        m6_flags: None,
    }
}

/// The full signature including the degree five and six modules.
pub fn signature_with(t: &Tensor333, table: &ModuleTable) -> Signature {
    let mut s = signature(t);
    s.m5_vanishing = Some(table.m5.iter().all(|(_, p, i)| all_vanish(p, i, t)));
    s.m6_flags = Some(table.m6.iter().map(|(l, p, i)| (l.clone(), all_vanish(p, i, t))).collect());
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Component {
    Sub233,
    Sub323,
    Trifocal,
    PRank222,
    NotInVM3,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Component::Sub233 => "Sub233",
            Component::Sub323 => "Sub323",
            Component::Trifocal => "Trifocal",
            Component::PRank222 => "PRank222",
            Component::NotInVM3 => "NotInVM3",
        };
        f.write_str(s)
    }
}

/// Component of the zero set of the C-axis cubics containing `t`.
///
/// Points on several components are reported by the order Sub233, Sub323,
/// PRank222, Trifocal.
pub fn classify_component(t: &Tensor333) -> Component {
    if !m3_vanishes(Axis::C, t) {
        return Component::NotInVM3;
    }
    let fr = t.frank();
    if fr.a < 3 {
        return Component::Sub233;
    }
    if fr.b < 3 {
        return Component::Sub323;
    }
    if t.prank().as_array().iter().all(|&r| r <= 2) {
        return Component::PRank222;
    }
    Component::Trifocal
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrifocalVerdict {
    pub is_trifocal: bool,
    pub reason: String,
    pub prank: RankTriple,
    pub frank: RankTriple,
}

fn sorted(r: RankTriple) -> [usize; 3] {
    let mut a = r.as_array();
    a.sort_unstable();
    a
}

/// The two rank tests: P-Rank exactly (3,3,2), or a permutation of it when
/// `permutation_tolerant`, and then F-Rank exactly (3,3,3).
pub fn is_trifocal(t: &Tensor333, permutation_tolerant: bool) -> TrifocalVerdict {
    let prank = t.prank();
    let frank = t.frank();
    let target = RankTriple::new(3, 3, 2);
    let (have, want) =
        if permutation_tolerant { (sorted(prank), sorted(target)) } else { (prank.as_array(), target.as_array()) };
    let verdict = |ok: bool, reason: String| TrifocalVerdict { is_trifocal: ok, reason, prank, frank };
    if have != want {
        let low = have.iter().zip(&want).all(|(h, w)| h <= w);
        let reason = if low { format!("P-Rank {prank}, too low") } else { format!("P-Rank {prank}") };
        return verdict(false, reason);
    }
    if frank != RankTriple::new(3, 3, 3) {
        return verdict(false, format!("F-Rank {frank}, too low"));
    }
    verdict(true, "P-Rank (3,3,2) and F-Rank (3,3,3)".to_string())
}

/// `is_trifocal` after a random change of coordinates drawn from `seed`.
pub fn is_trifocal_randomized(t: &Tensor333, permutation_tolerant: bool, seed: u64) -> TrifocalVerdict {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = GroupElement::random(&mut rng, 5, t.field());
    is_trifocal(&act(&g, t).expect("invertible change of coordinates"), permutation_tolerant)
}
