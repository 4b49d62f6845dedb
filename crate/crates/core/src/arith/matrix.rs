use std::fmt;
use std::ops::{Index, IndexMut, Mul};
use std::str::FromStr;

use super::{DualScalar, Ring, Scalar};

/// Dense row-major matrix over a ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type Mat = Matrix<Scalar>;
pub type DualMat = Matrix<DualScalar>;

impl<T: Ring> Matrix<T> {
    /// Panics unless `data.len() == rows * cols`.
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::new(rows, cols, vec![T::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix::new(rows, cols, data)
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        Matrix::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<T> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Ring>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix::new(self.rows, self.cols, self.data.iter().map(f).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = &self[(i, j)];
                    if i == j {
                        *e == T::one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.plus(b)).collect();
        Matrix::new(self.rows, self.cols, data)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.minus(b)).collect();
        Matrix::new(self.rows, self.cols, data)
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| s.times(x))
    }

    pub fn neg(&self) -> Self {
        self.map(T::negate)
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul dimension mismatch");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].plus(&a.times(b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.plus(&a.times(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        (0..self.rows).fold(T::zero(), |acc, i| acc.plus(&self[(i, i)]))
    }

    /// Block-stack `blocks` vertically. All blocks must share a column count.
    pub fn vstack(blocks: &[Matrix<T>]) -> Self {
        let cols = blocks.first().map_or(0, |b| b.cols);
        assert!(blocks.iter().all(|b| b.cols == cols), "vstack column mismatch");
        let rows = blocks.iter().map(|b| b.rows).sum();
        let data = blocks.iter().flat_map(|b| b.data.iter().cloned()).collect();
        Matrix::new(rows, cols, data)
    }

    /// Adjugate (classical adjoint), so that `m · adj(m) = det(m) · I`.
    ///
    /// Computed from cofactors, so it avoids division and works over any
    /// commutative ring. Intended for small matrices.
    pub fn adjugate(&self) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        if n == 1 {
            return Matrix::identity(1);
        }
        Matrix::from_fn(n, n, |i, j| {
            // adj[i][j] = (-1)^{i+j} det(minor deleting row j, column i)
            let minor = self.minor(j, i);
            let d = minor.cofactor_det();
            if (i + j) % 2 == 0 {
                d
            } else {
                d.negate()
            }
        })
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Self {
        let n = self.rows;
        let mut data = Vec::with_capacity((n - 1) * (n - 1));
        for i in (0..n).filter(|&i| i != skip_row) {
            for j in (0..n).filter(|&j| j != skip_col) {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix::new(n - 1, n - 1, data)
    }

    /// Determinant by cofactor expansion along the first row. Division-free,
    /// exponential cost; used for symbolic entries and small sizes only.
    pub fn cofactor_det(&self) -> T {
        assert!(self.is_square());
        match self.rows {
            0 => T::one(),
            1 => self.data[0].clone(),
            2 => self[(0, 0)]
                .times(&self[(1, 1)])
                .minus(&self[(0, 1)].times(&self[(1, 0)])),
            n => {
                let mut acc = T::zero();
                for j in 0..n {
                    let a = &self[(0, j)];
                    if a.is_zero() {
                        continue;
                    }
                    let term = a.times(&self.minor(0, j).cofactor_det());
                    acc = if j % 2 == 0 { acc.plus(&term) } else { acc.minus(&term) };
                }
                acc
            }
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<'a, T: Ring> Mul<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.matmul(rhs)
    }
}

impl Mat {
    pub fn from_ints(rows: &[&[i64]]) -> Mat {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
    }

    /// Diagonal matrix with the given entries.
    pub fn diag(entries: &[Scalar]) -> Mat {
        let n = entries.len();
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                Scalar::from_int(0)
            }
        })
    }

    /// The elementary matrix with a single 1 at `(i, j)`.
    pub fn unit(n: usize, i: usize, j: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        m[(i, j)] = Scalar::from_int(1);
        m
    }

    pub fn to_dual(&self) -> DualMat {
        self.map(|x| DualScalar::constant(x.clone()))
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    /// `[[a,b],[c,d]]`, the same syntax [`Mat::from_str`] accepts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        f.write_str("]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid matrix literal at byte {offset}: {message}")]
pub struct MatParseError {
    /// Byte offset into the literal where the problem was detected.
    pub offset: usize,
    pub message: String,
}

impl FromStr for Mat {
    type Err = MatParseError;

    /// Parses `[[s,s],[s,s]]` where each `s` is a scalar literal.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bytes = text.as_bytes();
        let mut pos = 0;
        let err = |offset: usize, message: String| MatParseError { offset, message };
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let expect = |pos: &mut usize, c: u8| -> Result<(), MatParseError> {
            skip_ws(pos);
            if bytes.get(*pos) == Some(&c) {
                *pos += 1;
                Ok(())
            } else {
                Err(err(*pos, format!("expected `{}`", c as char)))
            }
        };

        expect(&mut pos, b'[')?;
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        loop {
            expect(&mut pos, b'[')?;
            let mut row = Vec::new();
            loop {
                skip_ws(&mut pos);
                let start = pos;
                while pos < bytes.len() && !matches!(bytes[pos], b',' | b']' | b'[') {
                    pos += 1;
                }
                if pos >= bytes.len() {
                    return Err(err(pos, "unterminated row".into()));
                }
                let lit = &text[start..pos];
                let value: Scalar = lit.parse().map_err(|e: super::ScalarParseError| {
                    err(start, format!("bad scalar `{}`: {}", lit.trim(), e.reason))
                })?;
                row.push(value);
                if bytes[pos] == b',' {
                    pos += 1;
                    continue;
                }
                expect(&mut pos, b']')?;
                break;
            }
            if let Some(first) = rows.first() {
                if first.len() != row.len() {
                    return Err(err(
                        pos,
                        format!(
                            "row {} has {} entries, expected {}",
                            rows.len() + 1,
                            row.len(),
                            first.len()
                        ),
                    ));
                }
            }
            rows.push(row);
            skip_ws(&mut pos);
            match bytes.get(pos) {
                Some(b',') => pos += 1,
                Some(b']') => {
                    pos += 1;
                    break;
                }
                _ => return Err(err(pos, "expected `,` or `]` after row".into())),
            }
        }
        skip_ws(&mut pos);
        if pos != bytes.len() {
            return Err(err(pos, "trailing characters after matrix".into()));
        }
        Ok(Matrix::from_rows(rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let m: Mat = "[[1, -1/2], [i, 2+3*i]]".parse().unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m[(1, 1)], Scalar::gaussian(2, 3));
        assert_eq!(m.to_string(), "[[1,-1/2],[i,2+3*i]]");
        assert_eq!(m.to_string().parse::<Mat>().unwrap(), m);
    }

    #[test]
    fn parse_errors_carry_offsets() {
        let e = "[[1,1],[0,1]".parse::<Mat>().unwrap_err();
        assert_eq!(e.offset, 12);
        assert!("[[1,1],[0]]".parse::<Mat>().is_err());
        assert!("[[1,x]]".parse::<Mat>().is_err());
        assert!("[[1]] junk".parse::<Mat>().is_err());
    }

    #[test]
    fn adjugate_identity() {
        let m = Mat::from_ints(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let d = m.cofactor_det();
        assert_eq!(&m * &m.adjugate(), Mat::identity(3).scale(&d));
        assert_eq!(d, Scalar::from_int(18));
    }
}
