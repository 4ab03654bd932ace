//! Sparse rank over GF(p) with an incremental echelon form.

use std::collections::HashMap;

use super::scalar::inv_mod;
use super::{Field, LinalgError, Scalar};

/// Coordinate-list sparse matrix; stored entries are nonzero and keys are unique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<(usize, usize, Scalar)>,
}

impl SparseMatrix {
    /// Builds the matrix, summing duplicate keys and dropping zeros.
    pub fn new(
        rows: usize,
        cols: usize,
        field: Field,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Self, LinalgError> {
        let mut map: HashMap<(usize, usize), Scalar> = HashMap::new();
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(LinalgError::IndexOutOfRange(format!("({r}, {c})")));
            }
            if v.field() != field {
                return Err(LinalgError::FieldMismatch(field, v.field()));
            }
            let slot = map.entry((r, c)).or_insert_with(|| field.zero());
            *slot = &*slot + &v;
        }
        let mut entries: Vec<_> = map.into_iter().filter(|(_, v)| !v.is_zero()).map(|((r, c), v)| (r, c, v)).collect();
        entries.sort_by_key(|&(r, c, _)| (r, c));
        Ok(SparseMatrix { rows, cols, field, entries })
    }

    pub fn identity(n: usize, field: Field) -> Self {
        SparseMatrix { rows: n, cols: n, field, entries: (0..n).map(|i| (i, i, field.one())).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn entries(&self) -> &[(usize, usize, Scalar)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }
}

/// Exact rank of a sparse matrix over its prime field.
pub fn sparse_rank(m: &SparseMatrix) -> Result<usize, LinalgError> {
    let Field::Prime(p) = m.field else {
        return Err(LinalgError::UsePrimeField);
    };
    let mut rows: Vec<Vec<(u32, u32)>> = vec![Vec::new(); m.rows];
    for (r, c, v) in &m.entries {
        let Scalar::Modular(x) = v else { unreachable!() };
        rows[*r].push((*c as u32, x.value()));
    }
    Ok(rank_of_rows(rows, m.cols, p))
}

/// Rank of a list of sparse rows over GF(p).
///
/// Columns are first relabelled by increasing occupancy so sparse columns
/// become pivots early, which keeps fill-in down.
pub fn rank_of_rows(mut rows: Vec<Vec<(u32, u32)>>, ncols: usize, p: u32) -> usize {
    let mut count = vec![0u32; ncols];
    for row in &rows {
        for &(c, _) in row {
            count[c as usize] += 1;
        }
    }
    let mut order: Vec<u32> = (0..ncols as u32).collect();
    order.sort_by_key(|&c| (count[c as usize], c));
    let mut relabel = vec![0u32; ncols];
    for (new, &old) in order.iter().enumerate() {
        relabel[old as usize] = new as u32;
    }
    for row in rows.iter_mut() {
        for e in row.iter_mut() {
            e.0 = relabel[e.0 as usize];
        }
    }
    rows.sort_by_key(|r| r.len());
    let mut ech = Echelon::new(ncols, p);
    for row in &rows {
        ech.insert(row);
        if ech.rank() == ncols {
            break;
        }
    }
    ech.rank()
}

/// Incremental row echelon form over GF(p).
///
/// Each stored row has its leftmost nonzero entry equal to one at a column
/// owned by no other stored row.
#[derive(Debug, Clone)]
pub struct Echelon {
    p: u32,
    pivot_row: Vec<u32>,
    rows: Vec<Vec<(u32, u32)>>,
    acc: Vec<u64>,
}

const NONE: u32 = u32::MAX;

impl Echelon {
    pub fn new(ncols: usize, p: u32) -> Self {
        Echelon { p, pivot_row: vec![NONE; ncols], rows: Vec::new(), acc: vec![0; ncols] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.acc.len()
    }

    /// Reduce `row` against the stored rows; returns the nonzero residual, sorted by column.
    pub fn reduce(&mut self, row: &[(u32, u32)]) -> Vec<(u32, u32)> {
        let p = self.p as u64;
        let mut lo = usize::MAX;
        for &(c, v) in row {
            let c = c as usize;
            self.acc[c] = (self.acc[c] + v as u64) % p;
            lo = lo.min(c);
        }
        if lo == usize::MAX {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut hi = row.iter().map(|&(c, _)| c as usize).max().unwrap();
        let mut c = lo;
        while c <= hi {
            let f = self.acc[c];
            if f != 0 {
                let pr = self.pivot_row[c];
                if pr == NONE {
                    out.push((c as u32, f as u32));
                } else {
                    let neg = p - f;
                    for &(j, v) in &self.rows[pr as usize] {
                        let j = j as usize;
                        self.acc[j] = (self.acc[j] + neg * v as u64) % p;
                        hi = hi.max(j);
                    }
                }
                self.acc[c] = 0;
            }
            c += 1;
        }
        out
    }

    /// Insert a row; returns true when it was independent of the stored rows.
    pub fn insert(&mut self, row: &[(u32, u32)]) -> bool {
        let mut res = self.reduce(row);
        if res.is_empty() {
            return false;
        }
        let inv = inv_mod(res[0].1, self.p) as u64;
        for e in res.iter_mut() {
            e.1 = (e.1 as u64 * inv % self.p as u64) as u32;
        }
        self.pivot_row[res[0].0 as usize] = self.rows.len() as u32;
        self.rows.push(res);
        true
    }

    pub fn contains(&mut self, row: &[(u32, u32)]) -> bool {
        self.reduce(row).is_empty()
    }
}

/// Basis of the right kernel of the given sparse rows over GF(p), as dense vectors.
///
/// Elimination stops early once `target_rank` independent rows have been seen.
pub fn kernel_of_rows(rows: &[Vec<(u32, u32)>], ncols: usize, p: u32, target_rank: Option<usize>) -> Vec<Vec<u32>> {
    let mut ech = Echelon::new(ncols, p);
    for row in rows {
        ech.insert(row);
        if Some(ech.rank()) == target_rank {
            break;
        }
    }
    ech.kernel()
}

impl Echelon {
    /// Kernel basis by back substitution, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let ncols = self.ncols();
        let p = self.p as u64;
        let mut order: Vec<usize> = (0..ncols).filter(|&c| self.pivot_row[c] != NONE).collect();
        order.reverse();
        (0..ncols)
            .filter(|&c| self.pivot_row[c] == NONE)
            .map(|free| {
                let mut x = vec![0u64; ncols];
                x[free] = 1;
                for &c in &order {
                    let row = &self.rows[self.pivot_row[c] as usize];
                    let mut acc = 0u64;
                    for &(j, v) in &row[1..] {
                        acc = (acc + v as u64 * x[j as usize]) % p;
                    }
                    x[c] = (p - acc) % p;
                }
                x.into_iter().map(|v| v as u32).collect()
            })
            .collect()
    }
}
