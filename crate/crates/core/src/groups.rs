//! The classical matrix group families over ℚ(i): membership, Lie algebra
//! bases, the adjoint action, invariant bilinear forms and center dimensions.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::arith::{dot, kernel_basis, Echelon, Mat, Scalar};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    GL,
    SL,
    SO,
    Sp,
}

/// One of `GL(n)`, `SL(n)`, `SO(n)`, `Sp(n)` (the latter with `n` even).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupFamily {
    kind: GroupKind,
    n: usize,
}

impl GroupFamily {
    pub fn new(kind: GroupKind, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidFamily("matrix size must be positive".into()));
        }
        if kind == GroupKind::Sp && !n.is_multiple_of(2) {
            return Err(Error::InvalidFamily(format!("Sp needs an even size, got {n}")));
        }
        Ok(GroupFamily { kind, n })
    }

    pub fn gl(n: usize) -> Self {
        GroupFamily::new(GroupKind::GL, n).unwrap()
    }

    pub fn sl(n: usize) -> Self {
        GroupFamily::new(GroupKind::SL, n).unwrap()
    }

    pub fn so(n: usize) -> Self {
        GroupFamily::new(GroupKind::SO, n).unwrap()
    }

    /// Panics on odd `n`.
    pub fn sp(n: usize) -> Self {
        GroupFamily::new(GroupKind::Sp, n).unwrap()
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    /// Matrix size.
    pub fn size(&self) -> usize {
        self.n
    }

    /// `dim G`, the classical formula.
    pub fn dim(&self) -> usize {
        let n = self.n;
        match self.kind {
            GroupKind::GL => n * n,
            GroupKind::SL => n * n - 1,
            GroupKind::SO => n * (n - 1) / 2,
            GroupKind::Sp => n * (n + 1) / 2,
        }
    }

    /// `dim C(G)`: scalars for `GL(n)`, the whole group for the torus `SO(2)`,
    /// a finite group otherwise.
    pub fn center_dim(&self) -> usize {
        match (self.kind, self.n) {
            (GroupKind::GL, _) => 1,
            (GroupKind::SO, 2) => 1,
            _ => 0,
        }
    }

    pub fn is_gl_or_sl(&self) -> bool {
        matches!(self.kind, GroupKind::GL | GroupKind::SL)
    }

    /// Exact membership test. Errors only on a size mismatch.
    pub fn contains(&self, m: &Mat) -> Result<bool> {
        if m.rows() != self.n || m.cols() != self.n {
            return Err(Error::Shape(format!(
                "{} expects {n}x{n} matrices, got {}x{}",
                self,
                m.rows(),
                m.cols(),
                n = self.n
            )));
        }
        let one = Scalar::from_int(1);
        Ok(match self.kind {
            GroupKind::GL => !m.det().is_zero(),
            GroupKind::SL => m.det() == one,
            GroupKind::SO => is_orthogonal(m) && m.det() == one,
            GroupKind::Sp => {
                let j = symplectic_form(self.n);
                &(m * &j) * &m.transpose() == j
            }
        })
    }
}

/// `A·Aᵀ = I`, i.e. membership in `O(n)` (no determinant condition).
pub fn is_orthogonal(m: &Mat) -> bool {
    m.is_square() && (m * &m.transpose()).is_identity()
}

/// `J = AD(1,…,1,−1,…,−1)`: anti-diagonal, `+1` in the top half of the rows.
pub fn symplectic_form(size: usize) -> Mat {
    Mat::from_fn(size, size, |i, j| {
        if i + j + 1 == size {
            Scalar::from_int(if i < size / 2 { 1 } else { -1 })
        } else {
            Scalar::from_int(0)
        }
    })
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            GroupKind::GL => "GL",
            GroupKind::SL => "SL",
            GroupKind::SO => "SO",
            GroupKind::Sp => "Sp",
        };
        write!(f, "{k} {}", self.n)
    }
}

impl FromStr for GroupFamily {
    type Err = Error;

    /// `GL 2`, `SL 2`, `SO 3`, `Sp 4`.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split_whitespace();
        let (Some(k), Some(n), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::InvalidFamily(format!("expected `<kind> <size>`, got `{s}`")));
        };
        let kind = match k {
            "GL" => GroupKind::GL,
            "SL" => GroupKind::SL,
            "SO" => GroupKind::SO,
            "Sp" => GroupKind::Sp,
            other => return Err(Error::InvalidFamily(format!("unknown kind `{other}`"))),
        };
        let n = n.parse().map_err(|_| Error::InvalidFamily(format!("bad size `{n}`")))?;
        GroupFamily::new(kind, n)
    }
}

/// An explicit basis of the Lie algebra `𝔤 ⊂ M(n)` with a coordinate map.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    family: GroupFamily,
    basis: Vec<Mat>,
    /// Matrix entries (row-major index) on which the basis restricts to an
    /// invertible square system.
    coord_positions: Vec<usize>,
    coord_inverse: Mat,
}

impl LieAlgebra {
    /// Bases, in order:
    /// - `GL(n)`: `E_ij` row-major;
    /// - `SL(n)`: off-diagonal `E_ij` row-major, then `E_kk − E_{k+1,k+1}`;
    /// - `SO(n)`: `E_ij − E_ji` for `i < j`;
    /// - `Sp(n)`: kernel basis of `X ↦ X·J + J·Xᵀ`.
    pub fn new(family: GroupFamily) -> Self {
        let n = family.size();
        let e = |i, j| Mat::unit(n, i, j);
        let basis: Vec<Mat> = match family.kind() {
            GroupKind::GL => (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| e(i, j))
                .collect(),
            GroupKind::SL => {
                let mut b: Vec<Mat> = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .filter(|(i, j)| i != j)
                    .map(|(i, j)| e(i, j))
                    .collect();
                b.extend((0..n.saturating_sub(1)).map(|k| e(k, k).sub(&e(k + 1, k + 1))));
                b
            }
            GroupKind::SO => (0..n)
                .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                .map(|(i, j)| e(i, j).sub(&e(j, i)))
                .collect(),
            GroupKind::Sp => {
                let j = symplectic_form(n);
                let lin = linear_map_matrix(n, |x| (x * &j).add(&(&j * &x.transpose())));
                kernel_basis(&lin).into_iter().map(|v| Mat::new(n, n, v)).collect()
            }
        };
        debug_assert_eq!(basis.len(), family.dim());

        let flat = Mat::from_columns(n * n, &basis.iter().map(|b| b.entries().to_vec()).collect::<Vec<_>>());
        let positions = Echelon::new(&flat.transpose()).pivots;
        let restricted = Mat::from_fn(basis.len(), basis.len(), |r, c| flat[(positions[r], c)].clone());
        let coord_inverse = restricted.inverse().expect("Lie algebra basis is independent");
        LieAlgebra {
            family,
            basis,
            coord_positions: positions,
            coord_inverse,
        }
    }

    pub fn family(&self) -> GroupFamily {
        self.family
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    /// `Σ coords[k] · basis[k]`.
    pub fn element(&self, coords: &[Scalar]) -> Mat {
        assert_eq!(coords.len(), self.dim(), "coordinate vector length");
        let n = self.family.size();
        let mut m = Mat::zeros(n, n);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                m = m.add(&b.scale(c));
            }
        }
        m
    }

    /// Coordinates of `x` in the basis; errors if `x ∉ 𝔤`.
    pub fn coordinates(&self, x: &Mat) -> Result<Vec<Scalar>> {
        let n = self.family.size();
        if x.rows() != n || x.cols() != n {
            return Err(Error::Shape(format!("expected a {n}x{n} matrix")));
        }
        let picked: Vec<Scalar> = self.coord_positions.iter().map(|&p| x.entries()[p].clone()).collect();
        let coords = self.coord_inverse.mul_vec(&picked);
        if self.element(&coords) != *x {
            return Err(Error::NotInLieAlgebra {
                family: self.family.to_string(),
            });
        }
        Ok(coords)
    }

    pub fn contains(&self, x: &Mat) -> bool {
        self.coordinates(x).is_ok()
    }

    /// Matrix of `ad(X) = [X, ·]` in the basis.
    pub fn ad(&self, x: &Mat) -> Result<Mat> {
        let cols = self
            .basis
            .iter()
            .map(|b| self.coordinates(&(x * b).sub(&(b * x))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat::from_columns(self.dim(), &cols))
    }
}

/// Matrix (in row-major vectorized coordinates) of a linear map `M(n) → M(n)`.
fn linear_map_matrix(n: usize, f: impl Fn(&Mat) -> Mat) -> Mat {
    let cols: Vec<Vec<Scalar>> = (0..n * n)
        .map(|k| f(&Mat::unit(n, k / n, k % n)).into_entries())
        .collect();
    Mat::from_columns(n * n, &cols)
}

/// Matrix of `X ↦ g·X·g⁻¹` on `𝔤` in the basis of `lie`.
pub fn adjoint_matrix(lie: &LieAlgebra, g: &Mat) -> Result<Mat> {
    if !lie.family().contains(g)? {
        return Err(Error::NotMember {
            family: lie.family().to_string(),
        });
    }
    let g_inv = g.inverse()?;
    let cols = lie
        .basis()
        .iter()
        .map(|b| lie.coordinates(&(&(g * b) * &g_inv)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Mat::from_columns(lie.dim(), &cols))
}

/// A symmetric, non-degenerate, Ad-invariant bilinear form on `𝔤`, stored as
/// its Gram matrix in the Lie algebra basis.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearForm {
    gram: Mat,
}

impl BilinearForm {
    /// `B(X, Y) = tr(X·Y)`.
    pub fn trace(lie: &LieAlgebra) -> Self {
        let b = lie.basis();
        let gram = Mat::from_fn(b.len(), b.len(), |k, l| (&b[k] * &b[l]).trace());
        BilinearForm { gram }
    }

    /// Accepts a user Gram matrix after checking symmetry, non-degeneracy and
    /// infinitesimal invariance `ad(X)ᵀ·G + G·ad(X) = 0` for every basis `X`
    /// (equivalent to Ad-invariance, all families being connected).
    pub fn new(lie: &LieAlgebra, gram: Mat) -> Result<Self> {
        let d = lie.dim();
        if gram.rows() != d || gram.cols() != d {
            return Err(Error::InvalidForm(format!("Gram matrix must be {d}x{d}")));
        }
        if gram.transpose() != gram {
            return Err(Error::InvalidForm("not symmetric".into()));
        }
        if gram.rank() != d {
            return Err(Error::InvalidForm("degenerate".into()));
        }
        for x in lie.basis() {
            let ad = lie.ad(x)?;
            if !(&ad.transpose() * &gram).add(&(&gram * &ad)).is_zero() {
                return Err(Error::InvalidForm("not Ad-invariant".into()));
            }
        }
        Ok(BilinearForm { gram })
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    /// `B(x, y)` on coordinate vectors.
    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        dot(x, &self.gram.mul_vec(y))
    }

    pub fn scaled(&self, lambda: &Scalar) -> Self {
        BilinearForm {
            gram: self.gram.scale(lambda),
        }
    }
}

fn small_gaussian<R: Rng>(rng: &mut R, allow_zero: bool) -> Scalar {
    loop {
        let re = rng.gen_range(-3i64..=3);
        let im = if rng.gen_bool(0.3) { rng.gen_range(-2i64..=2) } else { 0 };
        let s = Scalar::gaussian(re, im);
        if allow_zero || !s.is_zero() {
            return s;
        }
    }
}

/// `(I − X)(I + X)⁻¹`, or `None` when `I + X` is singular.
fn cayley(x: &Mat) -> Option<Mat> {
    let id = Mat::identity(x.rows());
    let inv = id.add(x).inverse().ok()?;
    Some(&id.sub(x) * &inv)
}

/// A pseudo-random element of the family with small exact entries.
///
/// `GL`/`SL`: products of elementary unipotents `I + t·E_ij` and a diagonal
/// torus element. `SO`/`Sp`: products of Cayley transforms of random Lie
/// algebra elements.
pub fn random_element<R: Rng>(family: GroupFamily, rng: &mut R) -> Mat {
    let n = family.size();
    let mut g = Mat::identity(n);
    match family.kind() {
        GroupKind::GL | GroupKind::SL => {
            if n == 1 {
                if family.kind() == GroupKind::GL {
                    g[(0, 0)] = small_gaussian(rng, false);
                }
                return g;
            }
            for _ in 0..4 {
                let i = rng.gen_range(0..n);
                let mut j = rng.gen_range(0..n - 1);
                if j >= i {
                    j += 1;
                }
                let mut u = Mat::identity(n);
                u[(i, j)] = small_gaussian(rng, true);
                g = &g * &u;
            }
            let d = small_gaussian(rng, false);
            let mut t = Mat::identity(n);
            t[(0, 0)] = d.clone();
            if family.kind() == GroupKind::SL {
                t[(1, 1)] = d.recip().unwrap();
            }
            g = &g * &t;
        }
        GroupKind::SO | GroupKind::Sp => {
            let lie = LieAlgebra::new(family);
            // Sparse coordinates keep entry heights manageable.
            for _ in 0..3 {
                loop {
                    let mut coords = vec![Scalar::zero(); lie.dim()];
                    for _ in 0..2 {
                        let k = rng.gen_range(0..lie.dim());
                        coords[k] = Scalar::ratio(rng.gen_range(-2i64..=2), rng.gen_range(1i64..=2));
                    }
                    if let Some(c) = cayley(&lie.element(&coords)) {
                        g = &g * &c;
                        break;
                    }
                }
            }
        }
    }
    debug_assert!(family.contains(&g).unwrap());
    g
}
