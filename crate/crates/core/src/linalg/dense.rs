use std::fmt;

use super::{Field, LinalgError, Scalar};

/// Row-major matrix of exact scalars, all in one field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize, field: Field) -> Self {
        DenseMatrix { rows, cols, field, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]], field: Field) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        let data = rows.iter().flat_map(|row| row.iter().map(|&v| Scalar::from_i64(v, field))).collect();
        DenseMatrix { rows: r, cols: c, field, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(LinalgError::DimensionMismatch("ragged rows".into()));
        }
        let field = rows.iter().flatten().next().map_or(Field::Rational, |s| s.field());
        let data: Vec<Scalar> = rows.into_iter().flatten().collect();
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(LinalgError::FieldMismatch(field, bad.field()));
        }
        Ok(DenseMatrix { rows: r, cols: c, field, data })
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "field mismatch in set");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch(self.field, other.field));
        }
        let mut out = Self::zeros(self.rows, other.cols, self.field);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.field.zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "matrix with {} columns times vector of length {}",
                self.cols,
                v.len()
            )));
        }
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc = acc.try_add(&a.try_mul(b)?)?;
                }
                Ok(acc)
            })
            .collect()
    }

    pub fn scale(&self, s: &Scalar) -> DenseMatrix {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = &*x * s;
        }
        out
    }

    pub fn add(&self, other: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::DimensionMismatch("matrix sum".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.try_add(b)).collect::<Result<_, _>>()?;
        Ok(DenseMatrix { data, ..self.clone() })
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (DenseMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inverse().unwrap();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![self.field.zero(); self.cols];
                v[free] = self.field.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(i, free);
                }
                v
            })
            .collect()
    }

    pub fn det(&self) -> Result<Scalar, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::DimensionMismatch(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let mut m = self.clone();
        let mut det = self.field.one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = &det * &pivot;
            let inv = pivot.inverse().unwrap();
            for i in c + 1..m.rows {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<DenseMatrix, LinalgError> {
        if let Some(&r) = rows.iter().find(|&&r| r >= self.rows) {
            return Err(LinalgError::IndexOutOfRange(format!("row {r}")));
        }
        if let Some(&c) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(LinalgError::IndexOutOfRange(format!("column {c}")));
        }
        let data =
            rows.iter().flat_map(|&r| cols.iter().map(move |&c| (r, c))).map(|(r, c)| self.get(r, c).clone()).collect();
        Ok(DenseMatrix { rows: rows.len(), cols: cols.len(), field: self.field, data })
    }

    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Scalar, LinalgError> {
        if rows.len() != cols.len() {
            return Err(LinalgError::DimensionMismatch(format!(
                "minor with {} rows and {} columns",
                rows.len(),
                cols.len()
            )));
        }
        self.submatrix(rows, cols)?.det()
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch("vstack".into()));
        }
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch(self.field, other.field));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(DenseMatrix { rows: self.rows + other.rows, cols: self.cols, field: self.field, data })
    }

    pub fn to_field(&self, p: u32) -> Result<DenseMatrix, LinalgError> {
        let data = self.data.iter().map(|s| s.reduce(p)).collect::<Result<_, _>>()?;
        Ok(DenseMatrix { rows: self.rows, cols: self.cols, field: Field::Prime(p), data })
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Cofactor expansion along the first row; exponential, for cross-checking only.
pub fn det_by_cofactors(m: &DenseMatrix) -> Scalar {
    let n = m.rows();
    assert_eq!(n, m.cols());
    if n == 0 {
        return m.field().one();
    }
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut acc = m.field().zero();
    for j in 0..n {
        if m.get(0, j).is_zero() {
            continue;
        }
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let sub = det_by_cofactors(&m.submatrix(&rows, &cols).unwrap());
        let term = m.get(0, j) * &sub;
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const Q: Field = Field::Rational;

    fn random_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize, field: Field) -> DenseMatrix {
        let rows: Vec<Vec<Scalar>> =
            (0..r).map(|_| (0..c).map(|_| Scalar::from_i64(rng.gen_range(-4..=4), field)).collect()).collect();
        DenseMatrix::from_rows(rows).unwrap()
    }

    /// r x c matrix of rank k built as a product of random factors.
    fn random_rank(rng: &mut ChaCha8Rng, r: usize, c: usize, k: usize) -> DenseMatrix {
        loop {
            let a = random_matrix(rng, r, k, Q);
            let b = random_matrix(rng, k, c, Q);
            let m = a.mul(&b).unwrap();
            if m.rank() == k {
                return m;
            }
        }
    }

    #[test]
    fn small_ranks() {
        assert_eq!(DenseMatrix::identity(3, Q).rank(), 3);
        assert_eq!(DenseMatrix::zeros(3, 9, Q).rank(), 0);
    }

    #[test]
    fn kernel_of_projection_camera() {
        let m = DenseMatrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]], Q);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        let expect: Vec<Scalar> = [0, 0, 0, 1].iter().map(|&v| Scalar::from_i64(v, Q)).collect();
        assert_eq!(k[0], expect);
        assert!(DenseMatrix::identity(3, Q).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_dimension_rank_nullity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = random_rank(&mut rng, 4, 9, 4);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 5);
        for v in &k {
            assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn determinants() {
        let m = DenseMatrix::from_i64(&[&[0, 1], &[-1, 0]], Q);
        assert_eq!(m.det().unwrap(), Scalar::from_i64(1, Q));
        let s = DenseMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 5]], Q);
        assert!(s.det().unwrap().is_zero());
        assert!(DenseMatrix::zeros(2, 3, Q).det().is_err());
        assert!(m.minor(&[0], &[0, 1]).is_err());
    }

    #[test]
    fn four_minors_of_rank_three_vanish() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = random_rank(&mut rng, 4, 9, 3);
        for cols in [[0, 1, 2, 3], [1, 4, 6, 8], [2, 3, 5, 7]] {
            let sub = m.submatrix(&[0, 1, 2, 3], &cols).unwrap();
            assert!(det_by_cofactors(&sub).is_zero());
            assert!(m.minor(&[0, 1, 2, 3], &cols).unwrap().is_zero());
        }
    }

    #[test]
    fn elimination_matches_cofactors() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=5 {
            for _ in 0..10 {
                let m = random_matrix(&mut rng, n, n, Q);
                assert_eq!(m.det().unwrap(), det_by_cofactors(&m));
            }
        }
    }

    #[test]
    fn rank_properties_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut agree = 0;
        let trials = 200;
        for _ in 0..trials {
            let r = rng.gen_range(1..6);
            let c = rng.gen_range(1..6);
            let m = random_matrix(&mut rng, r, c, Q);
            let rq = m.rank();
            assert_eq!(rq, m.transpose().rank());
            let rp = m.to_field(101).unwrap().rank();
            assert!(rp <= rq);
            if rp == rq {
                agree += 1;
            }
            if r == c {
                assert_eq!(!m.det().unwrap().is_zero(), rq == r);
            }
        }
        assert!(agree * 100 >= trials * 95, "only {agree}/{trials} agree mod 101");
    }

    #[test]
    fn modular_matrices() {
        let f = Field::Prime(7);
        let m = DenseMatrix::from_i64(&[&[1, 2], &[3, 6]], f);
        assert_eq!(m.rank(), 1);
        let m = DenseMatrix::from_i64(&[&[1, 2], &[3, 7]], f);
        assert_eq!(m.det().unwrap(), Scalar::from_i64(1, f));
    }
}
