//! Representations `ρ: Γ → G`: validation, centralizers and irreducibility.

use std::fmt;

use crate::arith::{kernel_basis, Mat, SpanBuilder};
use crate::error::{Error, Result};
use crate::groups::{adjoint_matrix, GroupFamily, LieAlgebra};
use crate::presentation::{evaluate_word, evaluate_word_with, GroupHom, GroupPresentation, Letter, Word};

/// An assignment of one matrix per generator, into a declared family.
///
/// Construction only checks shapes; call [`validate`](Self::validate) for
/// group membership and the relators.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    presentation: GroupPresentation,
    family: GroupFamily,
    images: Vec<Mat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotMember { generator: String },
    Singular { generator: String },
    RelatorNontrivial { relator: String, value: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotMember { generator } => write!(f, "image of `{generator}` is not in the target group"),
            Violation::Singular { generator } => write!(f, "image of `{generator}` is singular"),
            Violation::RelatorNontrivial { relator, value } => {
                write!(f, "relator `{relator}` evaluates to {value}, not the identity")
            }
        }
    }
}

impl Representation {
    pub fn new(presentation: GroupPresentation, family: GroupFamily, images: Vec<Mat>) -> Result<Self> {
        if images.len() != presentation.generator_count() {
            return Err(Error::Shape(format!(
                "{} generators but {} images",
                presentation.generator_count(),
                images.len()
            )));
        }
        let n = family.size();
        if let Some((k, m)) = images.iter().enumerate().find(|(_, m)| m.rows() != n || m.cols() != n) {
            return Err(Error::Shape(format!(
                "image of `{}` is {}x{}, target {} needs {n}x{n}",
                presentation.generator_names()[k],
                m.rows(),
                m.cols(),
                family
            )));
        }
        Ok(Representation {
            presentation,
            family,
            images,
        })
    }

    /// Every generator to the identity.
    pub fn trivial(presentation: GroupPresentation, family: GroupFamily) -> Self {
        let images = vec![Mat::identity(family.size()); presentation.generator_count()];
        Representation {
            presentation,
            family,
            images,
        }
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.presentation
    }

    pub fn family(&self) -> GroupFamily {
        self.family
    }

    pub fn images(&self) -> &[Mat] {
        &self.images
    }

    /// `ρ(w)`.
    pub fn evaluate(&self, w: &Word) -> Result<Mat> {
        evaluate_word(w, &self.images)
    }

    /// All failures: non-member or singular images, then non-trivial relators.
    pub fn validate(&self) -> Vec<Violation> {
        let names = self.presentation.generator_names();
        let mut out = Vec::new();
        let mut invertible = true;
        for (name, m) in names.iter().zip(&self.images) {
            if m.det().is_zero() {
                invertible = false;
                out.push(Violation::Singular {
                    generator: name.clone(),
                });
            } else if !self.family.contains(m).unwrap_or(false) {
                out.push(Violation::NotMember {
                    generator: name.clone(),
                });
            }
        }
        if !invertible {
            return out;
        }
        for r in self.presentation.relators() {
            let value = self.evaluate(r).expect("images are invertible");
            if !value.is_identity() {
                out.push(Violation::RelatorNontrivial {
                    relator: self.presentation.format_word(r),
                    value: value.to_string(),
                });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidRepresentation(
                v.iter().map(ToString::to_string).collect(),
            ))
        }
    }

    /// `γ ↦ g·ρ(γ)·g⁻¹`.
    pub fn conjugate(&self, g: &Mat) -> Result<Self> {
        let g_inv = g.inverse()?;
        let images = self.images.iter().map(|m| &(g * m) * &g_inv).collect();
        Representation::new(self.presentation.clone(), self.family, images)
    }

    /// `ρ ∘ hom` on the source presentation of `hom`. The result is not
    /// validated here.
    pub fn compose(&self, hom: &GroupHom) -> Result<Self> {
        if hom.target() != &self.presentation {
            return Err(Error::Shape(
                "homomorphism target does not match the representation".into(),
            ));
        }
        let images = hom
            .images()
            .iter()
            .map(|w| self.evaluate(w))
            .collect::<Result<Vec<_>>>()?;
        Representation::new(hom.source().clone(), self.family, images)
    }

    /// The Lie algebra module `Ad ∘ ρ`; requires a valid representation.
    pub fn adjoint(&self) -> Result<AdjointRep> {
        self.ensure_valid()?;
        AdjointRep::new(self)
    }

    /// `dim H⁰(Γ, Ad ρ)`, the Lie algebra of the centralizer, as the kernel of
    /// the stacked `Ad ρ(γᵢ) − I`.
    pub fn centralizer(&self) -> Result<CentralizerReport> {
        let ad = self.adjoint()?;
        Ok(ad.centralizer())
    }

    /// Breadth-first search for words whose images span `M(n)`.
    ///
    /// Only words that enlarged the span are extended, which gives exactly
    /// the span of all freely reduced words of length `≤ word_cap`.
    pub fn burnside_irreducible(&self, word_cap: usize) -> Result<BurnsideReport> {
        if !self.family.is_gl_or_sl() {
            return Err(Error::UnsupportedFamily(self.family.to_string()));
        }
        let n = self.family.size();
        let target = n * n;
        let inverses = self.images.iter().map(Mat::inverse).collect::<Result<Vec<_>>>()?;

        let mut span = SpanBuilder::new();
        let identity = Mat::identity(n);
        span.insert(identity.entries());
        let mut frontier: Vec<(Option<Letter>, Mat)> = vec![(None, identity)];
        let mut examined = 1;
        let mut length = 0;
        while span.dim() < target && length < word_cap && !frontier.is_empty() {
            length += 1;
            let mut next = Vec::new();
            for (last, m) in &frontier {
                for (g, (fwd, inv)) in self.images.iter().zip(&inverses).enumerate() {
                    for inverse in [false, true] {
                        let l = Letter::new(g, inverse);
                        if *last == Some(l.inverted()) {
                            continue;
                        }
                        let step = if inverse { inv } else { fwd };
                        let img = m * step;
                        examined += 1;
                        if span.insert(img.entries()) {
                            next.push((Some(l), img));
                            if span.dim() == target {
                                break;
                            }
                        }
                    }
                }
            }
            frontier = next;
        }
        let verdict = if span.dim() == target {
            BurnsideVerdict::Irreducible
        } else {
            BurnsideVerdict::Inconclusive
        };
        Ok(BurnsideReport {
            verdict,
            span_dim: span.dim(),
            words_examined: examined,
            max_length: length,
        })
    }

    /// Irreducible iff `dim 𝔷(ρ) = dim C(G)`; valid only for completely
    /// reducible `ρ`, which the caller attests.
    pub fn cr_irreducibility_criterion(&self) -> Result<Irreducibility> {
        let c = self.centralizer()?;
        Ok(if c.h0_dim == c.center_dim {
            Irreducibility::Irreducible
        } else {
            Irreducibility::Reducible
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CentralizerReport {
    pub h0_dim: usize,
    pub center_dim: usize,
    /// `dim G − h0_dim`.
    pub orbit_dim: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BurnsideVerdict {
    Irreducible,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BurnsideReport {
    pub verdict: BurnsideVerdict,
    pub span_dim: usize,
    pub words_examined: usize,
    /// Longest word length actually reached (early exit may stop short of the cap).
    pub max_length: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible,
}

/// `Ad ∘ ρ` in the basis of the Lie algebra: one matrix per generator and
/// per inverse generator.
#[derive(Debug, Clone)]
pub struct AdjointRep {
    lie: LieAlgebra,
    ad: Vec<Mat>,
    ad_inv: Vec<Mat>,
}

impl AdjointRep {
    fn new(rho: &Representation) -> Result<Self> {
        let lie = LieAlgebra::new(rho.family);
        let ad = rho
            .images
            .iter()
            .map(|g| adjoint_matrix(&lie, g))
            .collect::<Result<Vec<_>>>()?;
        let ad_inv = ad.iter().map(Mat::inverse).collect::<Result<Vec<_>>>()?;
        Ok(AdjointRep { lie, ad, ad_inv })
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn generator_count(&self) -> usize {
        self.ad.len()
    }

    pub fn generator(&self, g: usize) -> &Mat {
        &self.ad[g]
    }

    pub fn letter(&self, l: Letter) -> &Mat {
        if l.inverse {
            &self.ad_inv[l.generator]
        } else {
            &self.ad[l.generator]
        }
    }

    /// `Ad ρ(w)`.
    pub fn word(&self, w: &Word) -> Mat {
        evaluate_word_with(w, self.dim(), &self.ad, &self.ad_inv)
    }

    pub fn centralizer(&self) -> CentralizerReport {
        let d = self.dim();
        let id = Mat::identity(d);
        let blocks: Vec<Mat> = self.ad.iter().map(|a| a.sub(&id)).collect();
        let h0_dim = if blocks.is_empty() {
            d
        } else {
            kernel_basis(&Mat::vstack(&blocks)).len()
        };
        CentralizerReport {
            h0_dim,
            center_dim: self.lie.family().center_dim(),
            orbit_dim: d - h0_dim,
        }
    }
}
