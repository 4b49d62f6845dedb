//! The cup-product pairing `ω_B` on `H¹(π₁F, Ad ρ)` of a closed surface,
//! and isotropy tests for subspaces.
//!
//! `ω_B(σ, τ)` is the cochain `(g, h) ↦ B(σ(g), Ad ρ(g)·τ(h))` evaluated on
//! an explicit bar-complex 2-chain representing the fundamental class.

use std::collections::BTreeMap;

use crate::arith::{Mat, Scalar, SpanBuilder};
use crate::cohomology::{Cocycle, Cohomology, CohomologySummary};
use crate::error::{Error, Result};
use crate::groups::BilinearForm;
use crate::presentation::{GroupPresentation, Letter, Word};
use crate::representation::Representation;

/// Integer combination of bar cells `[g|h]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalChain {
    relator: Word,
    terms: Vec<(i64, Word, Word)>,
}

impl FundamentalChain {
    /// For `R = s₁…s_m`: `Σ_k [s₁…s_{k−1} | s_k]` minus `[a | a⁻¹]` for each
    /// inverse letter `a⁻¹` of `R`.
    pub fn new(presentation: &GroupPresentation) -> Result<Self> {
        if presentation.surface_genus().is_none() {
            return Err(Error::NotSurface);
        }
        let relator = presentation.relators()[0].clone();
        let mut terms = Vec::new();
        let mut prefix: Vec<Letter> = Vec::new();
        for &s in relator.letters() {
            terms.push((1, Word::reduced(prefix.iter().copied()), Word::reduced([s])));
            prefix.push(s);
        }
        for &s in relator.letters().iter().filter(|l| l.inverse) {
            terms.push((-1, Word::reduced([s.inverted()]), Word::reduced([s])));
        }
        let chain = FundamentalChain { relator, terms };
        debug_assert!(chain.boundary_is_degenerate());
        Ok(chain)
    }

    pub fn terms(&self) -> &[(i64, Word, Word)] {
        &self.terms
    }

    /// `∂[g|h] = [h] − [gh] + [g]`, collected on freely reduced words.
    pub fn boundary(&self) -> BTreeMap<Vec<(usize, bool)>, i64> {
        let key = |w: &Word| w.letters().iter().map(|l| (l.generator, l.inverse)).collect::<Vec<_>>();
        let mut out: BTreeMap<Vec<(usize, bool)>, i64> = BTreeMap::new();
        for (c, g, h) in &self.terms {
            *out.entry(key(h)).or_default() += c;
            *out.entry(key(&g.concat(h))).or_default() -= c;
            *out.entry(key(g)).or_default() += c;
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// True when only cells equal to `1` in the group survive: the empty
    /// word and the relator or its inverse.
    pub fn boundary_is_degenerate(&self) -> bool {
        let r: Vec<(usize, bool)> = self
            .relator
            .letters()
            .iter()
            .map(|l| (l.generator, l.inverse))
            .collect();
        let r_inv: Vec<(usize, bool)> = self
            .relator
            .inverse()
            .letters()
            .iter()
            .map(|l| (l.generator, l.inverse))
            .collect();
        self.boundary().keys().all(|k| k.is_empty() || *k == r || *k == r_inv)
    }
}

pub fn fundamental_chain(presentation: &GroupPresentation) -> Result<FundamentalChain> {
    FundamentalChain::new(presentation)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaMatrix {
    pub gram: Mat,
    pub rank: usize,
    pub genus: usize,
}

impl OmegaMatrix {
    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.rank == self.dim()
    }

    pub fn label(&self) -> &'static str {
        match (self.genus, self.is_nondegenerate()) {
            (1, _) => "pairing (possibly degenerate)",
            (_, true) => "symplectic",
            (_, false) => "degenerate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsotropyReport {
    pub isotropic: bool,
    /// Dimension of the image in `H¹`.
    pub dim: usize,
    pub lagrangian: bool,
}

/// Everything needed to pair cocycles at a surface-group representation.
#[derive(Debug, Clone)]
pub struct SurfacePairing {
    cohomology: Cohomology,
    chain: FundamentalChain,
    form: BilinearForm,
    summary: CohomologySummary,
    genus: usize,
    /// `Ad ρ(g)` for the first word of each chain cell.
    cell_ad: Vec<Mat>,
}

impl SurfacePairing {
    /// `form` defaults to the trace form.
    pub fn new(rho: &Representation, form: Option<BilinearForm>) -> Result<Self> {
        let genus = rho.presentation().surface_genus().ok_or(Error::NotSurface)?;
        let chain = FundamentalChain::new(rho.presentation())?;
        let cohomology = Cohomology::new(rho)?;
        let form = match form {
            Some(f) if f.dim() != cohomology.dim() => {
                return Err(Error::InvalidForm(format!(
                    "gram is {0}x{0}, Lie algebra has dimension {1}",
                    f.dim(),
                    cohomology.dim()
                )))
            }
            Some(f) => f,
            None => BilinearForm::trace(cohomology.adjoint().lie()),
        };
        let summary = cohomology.summary();
        let cell_ad = chain
            .terms()
            .iter()
            .map(|(_, g, _)| cohomology.adjoint().word(g))
            .collect();
        Ok(SurfacePairing {
            cohomology,
            chain,
            form,
            summary,
            genus,
            cell_ad,
        })
    }

    pub fn cohomology(&self) -> &Cohomology {
        &self.cohomology
    }

    pub fn summary(&self) -> &CohomologySummary {
        &self.summary
    }

    pub fn chain(&self) -> &FundamentalChain {
        &self.chain
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// `(σ(g), Ad ρ(g)·σ(h))` on every cell `[g|h]`.
    fn cell_values(&self, sigma: &Cocycle) -> Result<Vec<(Vec<Scalar>, Vec<Scalar>)>> {
        self.chain
            .terms()
            .iter()
            .zip(&self.cell_ad)
            .map(|((_, g, h), ad)| {
                let left = self.cohomology.evaluate(sigma, g)?;
                let right = ad.mul_vec(&self.cohomology.evaluate(sigma, h)?);
                Ok((left, right))
            })
            .collect()
    }

    fn pair_values(&self, s: &[(Vec<Scalar>, Vec<Scalar>)], t: &[(Vec<Scalar>, Vec<Scalar>)]) -> Scalar {
        let mut acc = Scalar::zero();
        for (((c, _, _), (left, _)), (_, right)) in self.chain.terms().iter().zip(s).zip(t) {
            acc += &(&Scalar::from_int(*c) * &self.form.eval(left, right));
        }
        acc
    }

    fn cup_unchecked(&self, sigma: &Cocycle, tau: &Cocycle) -> Result<Scalar> {
        Ok(self.pair_values(&self.cell_values(sigma)?, &self.cell_values(tau)?))
    }

    /// Rejects inputs that fail the dual-number cocycle test.
    pub fn cup(&self, sigma: &Cocycle, tau: &Cocycle) -> Result<Scalar> {
        for s in [sigma, tau] {
            if !self.cohomology.dual_number_check(s)? {
                return Err(Error::NotACocycle);
            }
        }
        self.cup_unchecked(sigma, tau)
    }

    /// Gram matrix of `ω_B` on the `H¹` representatives.
    pub fn omega(&self) -> Result<OmegaMatrix> {
        let values = self
            .summary
            .h1_reps
            .iter()
            .map(|r| self.cell_values(r))
            .collect::<Result<Vec<_>>>()?;
        let k = values.len();
        let gram = Mat::from_fn(k, k, |i, j| self.pair_values(&values[i], &values[j]));
        if !gram.add(&gram.transpose()).is_zero() {
            return Err(Error::NotAntisymmetric);
        }
        let rank = gram.rank();
        Ok(OmegaMatrix {
            gram,
            rank,
            genus: self.genus,
        })
    }

    /// Dimension of the image of `subspace` in `H¹` and whether `ω_B`
    /// vanishes on it.
    pub fn isotropy(&self, subspace: &[Cocycle]) -> Result<IsotropyReport> {
        for s in subspace {
            if !self.cohomology.is_cocycle(s)? {
                return Err(Error::NotACocycle);
            }
        }
        let mut span = SpanBuilder::new();
        for b in &self.summary.b1_basis {
            span.insert(&b.flatten());
        }
        let base = span.dim();
        for s in subspace {
            span.insert(&s.flatten());
        }
        let dim = span.dim() - base;
        let values = subspace
            .iter()
            .map(|s| self.cell_values(s))
            .collect::<Result<Vec<_>>>()?;
        let isotropic = values
            .iter()
            .enumerate()
            .all(|(i, u)| values[i..].iter().all(|v| self.pair_values(u, v).is_zero()));
        Ok(IsotropyReport {
            isotropic,
            dim,
            lagrangian: isotropic && 2 * dim == self.summary.h1_dim,
        })
    }
}

pub fn cup_pair(sigma: &Cocycle, tau: &Cocycle, rho: &Representation, form: Option<BilinearForm>) -> Result<Scalar> {
    SurfacePairing::new(rho, form)?.cup(sigma, tau)
}

pub fn omega_matrix(rho: &Representation, form: Option<BilinearForm>) -> Result<OmegaMatrix> {
    SurfacePairing::new(rho, form)?.omega()
}

pub fn isotropy_check(
    subspace: &[Cocycle],
    rho: &Representation,
    form: Option<BilinearForm>,
) -> Result<IsotropyReport> {
    SurfacePairing::new(rho, form)?.isotropy(subspace)
}
