//! Exact elimination kernels over ℚ(i).
//!
//! Rank and determinant use fraction-free (Bareiss) elimination: after step
//! `k` every live entry is a `(k+1)`-minor of the input, and the division by
//! the previous pivot is exact. Kernel, solve and inverse go through the
//! reduced row echelon form.

use super::{Field, Mat, Scalar};
use crate::error::{Error, Result};

/// Bareiss forward elimination in place. Returns the pivot columns and the
/// parity of the row permutation applied.
fn bareiss(m: &mut Mat) -> (Vec<usize>, bool) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut prev = Scalar::from_int(1);
    let mut odd = false;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let tmp = m[(p, j)].clone();
                m[(p, j)] = m[(r, j)].clone();
                m[(r, j)] = tmp;
            }
            odd = !odd;
        }
        let pivot = m[(r, c)].clone();
        for i in (r + 1)..rows {
            let lead = m[(i, c)].clone();
            for j in (c + 1)..cols {
                let v = &(&pivot * &m[(i, j)]) - &(&lead * &m[(r, j)]);
                m[(i, j)] = &v / &prev;
            }
            m[(i, c)] = Scalar::zero();
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    (pivots, odd)
}

/// Exact rank over ℚ(i).
pub fn rank(m: &Mat) -> usize {
    let mut work = m.clone();
    bareiss(&mut work).0.len()
}

/// Exact determinant; panics on non-square input.
pub fn det(m: &Mat) -> Scalar {
    assert!(m.is_square(), "determinant of non-square matrix");
    let n = m.rows();
    if n == 0 {
        return Scalar::from_int(1);
    }
    let mut work = m.clone();
    let (pivots, odd) = bareiss(&mut work);
    if pivots.len() < n {
        return Scalar::zero();
    }
    // The last Bareiss pivot is the determinant of the row-permuted matrix.
    let d = work[(n - 1, n - 1)].clone();
    if odd {
        -d
    } else {
        d
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: Mat,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(m: &Mat) -> Self {
        let mut a = m.clone();
        let (rows, cols) = (a.rows(), a.cols());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    let tmp = a[(p, j)].clone();
                    a[(p, j)] = a[(r, j)].clone();
                    a[(r, j)] = tmp;
                }
            }
            let inv = a[(r, c)].inv().expect("nonzero pivot");
            for j in c..cols {
                a[(r, j)] = &a[(r, j)] * &inv;
            }
            for i in 0..rows {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in c..cols {
                    let v = &a[(i, j)] - &(&f * &a[(r, j)]);
                    a[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: a, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the right null space, one vector per free column, in
    /// increasing order of the free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let cols = self.reduced.cols();
        let mut is_pivot = vec![false; cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Scalar::zero(); cols];
                v[f] = Scalar::from_int(1);
                for (row, &p) in self.pivots.iter().enumerate() {
                    v[p] = -&self.reduced[(row, f)];
                }
                v
            })
            .collect()
    }
}

/// Exact basis of `{x : m·x = 0}`; its size is `cols(m) − rank(m)`.
pub fn kernel_basis(m: &Mat) -> Vec<Vec<Scalar>> {
    Echelon::new(m).kernel()
}

/// One solution of `m·x = rhs`, or `None` if the system is inconsistent.
/// Free variables are set to zero.
pub fn solve(m: &Mat, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(rhs.len(), m.rows(), "rhs length must equal row count");
    let cols = m.cols();
    let aug = Mat::from_fn(m.rows(), cols + 1, |i, j| {
        if j < cols {
            m[(i, j)].clone()
        } else {
            rhs[i].clone()
        }
    });
    let e = Echelon::new(&aug);
    if e.pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Scalar::zero(); cols];
    for (row, &p) in e.pivots.iter().enumerate() {
        x[p] = e.reduced[(row, cols)].clone();
    }
    Some(x)
}

/// Exact inverse; [`Error::Singular`] when `det(m) = 0`.
pub fn inverse(m: &Mat) -> Result<Mat> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "cannot invert a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let aug = Mat::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else if j - n == i {
            Scalar::from_int(1)
        } else {
            Scalar::zero()
        }
    });
    let e = Echelon::new(&aug);
    if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
        return Err(Error::Singular);
    }
    Ok(Mat::from_fn(n, n, |i, j| e.reduced[(i, n + j)].clone()))
}

impl Mat {
    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn det(&self) -> Scalar {
        det(self)
    }

    pub fn inverse(&self) -> Result<Mat> {
        inverse(self)
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        kernel_basis(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_zero_vec;
    use proptest::prelude::*;

    fn ints(rows: &[&[i64]]) -> Mat {
        Mat::from_ints(rows)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Mat::identity(2)), 2);
        assert_eq!(rank(&Mat::zeros(3, 3)), 0);
        assert_eq!(rank(&ints(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&Mat::zeros(0, 4)), 0);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Mat::identity(3)).is_empty());
        assert_eq!(kernel_basis(&Mat::zeros(2, 3)).len(), 3);
        let k = kernel_basis(&ints(&[&[1, -1]]));
        assert_eq!(k, vec![vec![Scalar::from_int(1), Scalar::from_int(1)]]);
    }

    #[test]
    fn solve_examples() {
        let x = solve(&Mat::identity(2), &[1.into(), 2.into()]).unwrap();
        assert_eq!(x, vec![Scalar::from_int(1), Scalar::from_int(2)]);
        assert!(solve(&ints(&[&[0]]), &[1.into()]).is_none());
        let m = ints(&[&[1, 1]]);
        let x = solve(&m, &[2.into()]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![Scalar::from_int(2)]);
    }

    #[test]
    fn det_and_inverse_examples() {
        assert_eq!(det(&Mat::identity(4)), Scalar::from_int(1));
        let u = ints(&[&[1, 1], &[0, 1]]);
        assert_eq!(det(&u), Scalar::from_int(1));
        assert_eq!(inverse(&u).unwrap(), ints(&[&[1, -1], &[0, 1]]));
        assert!(matches!(inverse(&ints(&[&[1, 2], &[2, 4]])), Err(Error::Singular)));
        // row swap flips the sign
        assert_eq!(det(&ints(&[&[0, 1], &[1, 0]])), Scalar::from_int(-1));
        let z = Mat::from_rows(vec![
            vec![Scalar::i(), Scalar::from_int(0)],
            vec![Scalar::from_int(0), -Scalar::i()],
        ]);
        assert_eq!(det(&z), Scalar::from_int(1));
    }

    fn gaussian_entry() -> impl Strategy<Value = Scalar> {
        (-4i64..5, 1i64..4, -2i64..3).prop_map(|(n, d, m)| Scalar::ratio(n, d) + Scalar::from_int(m) * Scalar::i())
    }

    fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
        // Bias toward rank deficiency by zeroing entries half the time.
        proptest::collection::vec((gaussian_entry(), any::<bool>()), rows * cols).prop_map(move |v| {
            Mat::new(
                rows,
                cols,
                v.into_iter()
                    .map(|(x, keep)| if keep { x } else { Scalar::zero() })
                    .collect(),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rank_nullity(m in (1usize..5, 1usize..6).prop_flat_map(|(r, c)| matrix(r, c))) {
            let k = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + k.len(), m.cols());
            for v in &k {
                prop_assert!(is_zero_vec(&m.mul_vec(v)));
            }
        }

        #[test]
        fn inverse_is_two_sided(m in matrix(3, 3)) {
            let d = det(&m);
            // cofactor expansion is an independent determinant route
            prop_assert_eq!(&d, &m.cofactor_det());
            if !d.is_zero() {
                let inv = inverse(&m).unwrap();
                prop_assert!((&m * &inv).is_identity());
                prop_assert!((&inv * &m).is_identity());
            } else {
                prop_assert!(inverse(&m).is_err());
            }
        }

        #[test]
        fn rational_addition_matches_integer_arithmetic(
            a in -50i64..50, b in 1i64..30, c in -50i64..50, d in 1i64..30
        ) {
            let sum = Scalar::ratio(a, b) + Scalar::ratio(c, d);
            // cross-multiplied integer oracle
            prop_assert_eq!(sum, Scalar::ratio(a * d + c * b, b * d));
        }
    }
}
