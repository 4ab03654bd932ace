use serde::{Deserialize, Serialize};

use super::catalog::{f_tensor, orbit17, orbit18};
use crate::linalg::{DenseMatrix, Field, Scalar};
use crate::poly::s3_m3;
use crate::tensor::{Axis, RankTriple, Tensor333};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Degeneration {
    Orbit17,
    Orbit18,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepKind {
    /// Rewriting the same tensor.
    Rewrite,
    /// An invertible change of coordinates on one factor.
    GroupOperation,
    /// The limit of a one-parameter family of group operations.
    Limit,
    /// A manipulation that is not induced by the group.
    NotAGroupOperation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub description: String,
    pub kind: StepKind,
    pub verified: bool,
}

/// Dimensions showing that a point is not in the closure of the F orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    /// Dimension of the closure of the orbit of F (rank of the Lie algebra action at F).
    pub source_dim: usize,
    /// Rank of the Jacobian of the thirty cubics at the target.
    pub jacobian_rank: usize,
    /// Dimension of the tangent space of their zero set at the target.
    pub tangent_dim: usize,
    /// Dimension of the orbit closure of the target.
    pub target_dim: usize,
}

impl Obstruction {
    /// Every point of a closed variety has tangent space at least as large as the variety.
    pub fn excludes(&self) -> bool {
        self.tangent_dim < self.source_dim
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerationReport {
    pub target: String,
    pub holds: bool,
    pub steps: Vec<Step>,
    pub obstruction: Obstruction,
}

fn q(x: i64) -> Scalar {
    Scalar::from_i64(x, Field::Rational)
}

fn mat(rows: [[i64; 3]; 3]) -> DenseMatrix {
    let r: Vec<&[i64]> = rows.iter().map(|x| x.as_slice()).collect();
    DenseMatrix::from_i64(&r, Field::Rational)
}

/// Tensor whose A-pencil has entry (j, k) equal to sum_i m[j][k][i] a_i.
fn from_pencil(m: [[[i64; 3]; 3]; 3]) -> Tensor333 {
    Tensor333::from_fn(Field::Rational, |i, j, k| q(m[j][k][i]))
}

const A1: [i64; 3] = [1, 0, 0];
const A2: [i64; 3] = [0, 1, 0];
const A3: [i64; 3] = [0, 0, 1];
const O: [i64; 3] = [0, 0, 0];

fn neg(a: [i64; 3]) -> [i64; 3] {
    a.map(|x| -x)
}

fn times(c: i64, a: [i64; 3]) -> [i64; 3] {
    a.map(|x| c * x)
}

/// Dimension of the orbit closure of `t` under GL_3 x GL_3 x GL_3.
pub fn orbit_dimension(t: &Tensor333) -> usize {
    let mut rows = Vec::new();
    for axis in Axis::ALL {
        for r in 0..3 {
            for s in 0..3 {
                let mut e = [[0i64; 3]; 3];
                e[r][s] = 1;
                rows.push(t.mode_product(axis, &mat(e)).flat().to_vec());
            }
        }
    }
    DenseMatrix::from_rows(rows).expect("27 rows of length 27").rank()
}

/// Rank of the Jacobian of the thirty cubics at `t`.
pub fn s3m3_jacobian_rank(t: &Tensor333) -> usize {
    let rows = s3_m3()
        .iter()
        .map(|f| (0..27).map(|v| f.derivative(v).evaluate(t).expect("rational point")).collect())
        .collect();
    DenseMatrix::from_rows(rows).expect("30 rows of length 27").rank()
}

pub fn obstruction(source: &Tensor333, target: &Tensor333) -> Obstruction {
    let jacobian_rank = s3m3_jacobian_rank(target);
    Obstruction {
        source_dim: orbit_dimension(source),
        jacobian_rank,
        tangent_dim: 27 - jacobian_rank,
        target_dim: orbit_dimension(target),
    }
}

/// Is `t` in the subspace variety Sub_{p,q,r}, i.e. are its flattening ranks bounded by (p,q,r)?
pub fn in_subspace_variety(t: &Tensor333, bound: RankTriple) -> bool {
    let f = t.frank();
    f.a <= bound.a && f.b <= bound.b && f.c <= bound.c
}

/// The F-orbit signature: P-Rank (2,2,2) and F-Rank (3,3,3).
fn in_f_class(t: &Tensor333) -> bool {
    t.prank() == RankTriple::new(2, 2, 2) && t.frank() == RankTriple::new(3, 3, 3)
}

fn step(description: &str, kind: StepKind, verified: bool) -> Step {
    Step { description: description.to_string(), kind, verified }
}

fn replay17() -> Vec<Step> {
    let target = orbit17();
    let flip = mat([[-1, 0, 0], [0, 1, 0], [0, 0, 1]]);
    let flipped = target.mode_product(Axis::B, &flip);
    let skew = from_pencil([[O, neg(A1), neg(A2)], [A1, O, O], [A2, O, O]]);
    let mut steps =
        vec![step("replace b1 by -b1; the A-pencil becomes skew", StepKind::GroupOperation, flipped == skew)];

    let ga = |t: i64| mat([[0, 0, -1], [0, 1, 0], [t, 0, 0]]);
    let family = |t: i64| f_tensor().mode_product(Axis::A, &ga(t));
    let mut members_ok = true;
    for t in [1, 2, 3, -1, 5] {
        let m = family(t);
        let expected = from_pencil([[O, neg(A1), neg(A2)], [A1, O, times(t, A3)], [A2, times(-t, A3), O]]);
        members_ok &= !ga(t).det().unwrap().is_zero() && m == expected && in_f_class(&m);
    }
    steps.push(step(
        "the matrices [[0,-a1,-a2],[a1,0,z],[a2,-z,0]] with z = t a3, t != 0, lie in the orbit of F",
        StepKind::GroupOperation,
        members_ok,
    ));

    let m0 = family(0);
    let m1 = family(1);
    let affine = [2, 3, -1].iter().all(|&t| family(t) == m0.add(&m1.add(&m0.scale(&q(-1))).scale(&q(t))));
    steps.push(step(
        "the family is affine in t and its value at t = 0 is the skew form of orbit 17",
        StepKind::Limit,
        affine && m0 == skew,
    ));
    steps
}

fn replay18() -> Vec<Step> {
    let target = orbit18();
    let as_matrix = from_pencil([[A1, A2, O], [O, A1, A2], [O, O, O]]);
    let mut steps =
        vec![step("orbit 18 as the matrix [[a1,a2,0],[0,a1,a2],[0,0,0]]", StepKind::Rewrite, target == as_matrix)];

    let cycle = mat([[0, 1, 0], [0, 0, 1], [1, 0, 0]]);
    let cycled = target.mode_product(Axis::B, &cycle);
    let zero_diag = from_pencil([[O, A1, A2], [O, O, O], [A1, A2, O]]);
    steps.push(step("cycle rows 1, 2, 3", StepKind::GroupOperation, cycled == zero_diag));

    // x = a1, y = -a2, z = a3 in the matrix [[0,x,-y],[-x,0,z],[y,-z,0]].
    let sub = mat([[0, 0, 1], [0, -1, 0], [1, 0, 0]]);
    let f_sub = f_tensor().mode_product(Axis::A, &sub);
    let expected = from_pencil([[O, A1, A2], [neg(A1), O, A3], [neg(A2), neg(A3), O]]);
    let ok = !sub.det().unwrap().is_zero() && f_sub == expected && in_f_class(&f_sub);
    steps.push(step("set x = a1, -y = a2 in the matrix form of F", StepKind::GroupOperation, ok));

    let kill_row = mat([[1, 0, 0], [0, 0, 0], [0, 0, 1]]);
    let limit = f_sub.mode_product(Axis::B, &kill_row);
    let expected = from_pencil([[O, A1, A2], [O, O, O], [neg(A2), neg(A3), O]]);
    steps.push(step("scale row 2 by e and let e -> 0", StepKind::Limit, limit == expected));

    // Scaling a row by a ratio of linear forms, and substituting a non-linear
    // expression for a coordinate, are not induced by any group element; the
    // resulting entries are not linear forms, so no tensor is produced.
    steps.push(step("multiply row 3 by -a1/a2", StepKind::NotAGroupOperation, false));
    steps.push(step("set z = a2^2/a1", StepKind::NotAGroupOperation, false));
    steps
}

/// Replay the explicit degenerations from the orbit of F.
///
/// The answer is true only when every step is verified and is a group
/// operation, a rewrite, or a limit of group operations. The report also
/// carries the tangent space comparison between the closure of the F orbit
/// and the target.
pub fn degeneration_check(which: Degeneration) -> DegenerationReport {
    let (name, steps, target) = match which {
        Degeneration::Orbit17 => ("17", replay17(), orbit17()),
        Degeneration::Orbit18 => ("18", replay18(), orbit18()),
    };
    let legal = steps.iter().all(|s| s.verified && s.kind != StepKind::NotAGroupOperation);
    let obstruction = obstruction(&f_tensor(), &target);
    DegenerationReport { target: name.to_string(), holds: legal && !obstruction.excludes(), steps, obstruction }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::trifocal_normal_form;

    #[test]
    fn orbit_dimensions() {
        assert_eq!(orbit_dimension(&f_tensor()), 17);
        // The trifocal variety has codimension eight.
        assert_eq!(orbit_dimension(&trifocal_normal_form(Field::Rational)), 19);
        assert_eq!(s3m3_jacobian_rank(&f_tensor()), 10);
    }

    #[test]
    fn seventeen_is_a_limit_of_f() {
        let r = degeneration_check(Degeneration::Orbit17);
        assert!(r.steps.iter().all(|s| s.verified), "{:?}", r.steps);
        assert!(!r.obstruction.excludes());
        assert!(r.holds);
    }

    #[test]
    fn eighteen_is_obstructed() {
        let r = degeneration_check(Degeneration::Orbit18);
        assert!(r.steps[..4].iter().all(|s| s.verified), "{:?}", r.steps);
        assert_eq!(r.steps.iter().filter(|s| s.kind == StepKind::NotAGroupOperation).count(), 2);
        assert_eq!(r.obstruction.jacobian_rank, 11);
        assert_eq!(r.obstruction.tangent_dim, 16);
        assert_eq!(r.obstruction.source_dim, 17);
        // The orbit closure fills its tangent space, so it is a component of its own.
        assert_eq!(r.obstruction.target_dim, 16);
        assert!(!r.holds);
    }

    #[test]
    fn f_is_not_in_a_subspace_variety() {
        assert!(!in_subspace_variety(&f_tensor(), RankTriple::new(2, 3, 3)));
        assert!(!in_subspace_variety(&f_tensor(), RankTriple::new(3, 2, 3)));
        assert!(in_subspace_variety(&orbit17(), RankTriple::new(2, 3, 3)));
    }
}
