//! Polynomial equations of the representation scheme `Hom(Γ, G)` for
//! `G = SL(n)` or `GL(n)`, and its Zariski tangent space at a point.
//!
//! Generator `k` gets the matrix of variables `x_{k n² + 1} … x_{(k+1) n²}`
//! (row-major). For `GL(n)` there is also `d_k`, standing for `1/det`.
//! Inverses are written division-free: `adj(X)` for `SL(n)` and
//! `d·adj(X)` for `GL(n)`, both exact on the variety.

mod polynomial;

pub use polynomial::{Monomial, Polynomial};

use crate::arith::{Mat, Matrix, Ring, Scalar};
use crate::error::{Error, Result};
use crate::groups::{GroupFamily, GroupKind};
use crate::presentation::{evaluate_word_with, GroupPresentation};
use crate::representation::Representation;

#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialSystem {
    family: GroupFamily,
    generators: usize,
    variables: Vec<String>,
    equations: Vec<Polynomial>,
    /// Number of leading determinant equations.
    det_equations: usize,
}

impl PolynomialSystem {
    pub fn family(&self) -> GroupFamily {
        self.family
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn equations(&self) -> &[Polynomial] {
        &self.equations
    }

    pub fn determinant_equations(&self) -> &[Polynomial] {
        &self.equations[..self.det_equations]
    }

    pub fn relator_equations(&self) -> &[Polynomial] {
        &self.equations[self.det_equations..]
    }

    /// One equation per line, as `… = 0`.
    pub fn format_equations(&self) -> String {
        self.equations
            .iter()
            .map(|p| format!("{} = 0\n", p.format_with(&self.variables)))
            .collect()
    }

    /// Symbolic partial derivatives, one row per equation.
    pub fn jacobian(&self) -> Matrix<Polynomial> {
        Matrix::from_fn(self.equations.len(), self.variables.len(), |i, j| {
            self.equations[i].derivative(j)
        })
    }

    /// Rank of the Jacobian at a point of the variety.
    pub fn jacobian_rank_at(&self, point: &[Scalar]) -> Result<usize> {
        if point.len() != self.variables.len() {
            return Err(Error::Shape(format!(
                "point has {} coordinates, system has {} variables",
                point.len(),
                self.variables.len()
            )));
        }
        let mut rows = Vec::with_capacity(self.equations.len());
        for (k, e) in self.equations.iter().enumerate() {
            let (v, grad) = e.value_and_gradient(point);
            if !v.is_zero() {
                return Err(Error::PointNotOnVariety {
                    equation: k + 1,
                    value: v.to_string(),
                });
            }
            rows.push(grad);
        }
        if rows.is_empty() {
            return Ok(0);
        }
        Ok(Mat::from_rows(rows).rank())
    }

    /// `dim T_ρ Hom(Γ, G)` = #variables − Jacobian rank. For `GL(n)` each `d`
    /// variable is paired with one determinant equation, so it cancels.
    pub fn tangent_dim_at(&self, point: &[Scalar]) -> Result<usize> {
        Ok(self.variables.len() - self.jacobian_rank_at(point)?)
    }

    /// Coordinates of `ρ` in this system's variable order.
    pub fn point_from_representation(&self, rho: &Representation) -> Result<Vec<Scalar>> {
        if rho.family() != self.family || rho.images().len() != self.generators {
            return Err(Error::Shape("representation does not match the system".into()));
        }
        let mut point: Vec<Scalar> = rho.images().iter().flat_map(|m| m.entries().iter().cloned()).collect();
        if self.family.kind() == GroupKind::GL {
            for m in rho.images() {
                point.push(m.det().recip().ok_or(Error::Singular)?);
            }
        }
        Ok(point)
    }
}

/// The raw system: determinant conditions first, then the `n²` entries of
/// `w − I` for every relator `w`, in presentation order.
pub fn build_system(presentation: &GroupPresentation, family: GroupFamily) -> Result<PolynomialSystem> {
    let gl = match family.kind() {
        GroupKind::GL => true,
        GroupKind::SL => false,
        _ => return Err(Error::UnsupportedFamily(family.to_string())),
    };
    let n = family.size();
    let gens = presentation.generator_count();
    let mut variables: Vec<String> = (1..=gens * n * n).map(|i| format!("x{i}")).collect();
    if gl {
        variables.extend((1..=gens).map(|k| format!("d{k}")));
    }
    let images: Vec<Matrix<Polynomial>> = (0..gens)
        .map(|k| Matrix::from_fn(n, n, |i, j| Polynomial::var(k * n * n + i * n + j)))
        .collect();
    let mut equations = Vec::new();
    let mut inverses = Vec::new();
    for (k, x) in images.iter().enumerate() {
        let det = x.cofactor_det();
        let adj = x.adjugate();
        if gl {
            let d = Polynomial::var(gens * n * n + k);
            equations.push(d.times(&det).minus(&Polynomial::one()));
            inverses.push(adj.scale(&d));
        } else {
            equations.push(det.minus(&Polynomial::one()));
            inverses.push(adj);
        }
    }
    let id = Matrix::<Polynomial>::identity(n);
    for r in presentation.relators() {
        let w = evaluate_word_with(r, n, &images, &inverses).sub(&id);
        equations.extend(w.into_entries());
    }
    Ok(PolynomialSystem {
        family,
        generators: gens,
        variables,
        equations,
        det_equations: gens,
    })
}

/// `dim T_ρ Hom(Γ, G)` computed from the equations.
pub fn tangent_dim_of(rho: &Representation) -> Result<usize> {
    let system = build_system(rho.presentation(), rho.family())?;
    let point = system.point_from_representation(rho)?;
    system.tangent_dim_at(&point)
}
