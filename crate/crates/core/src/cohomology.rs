//! Twisted cohomology `H¹(Γ, Ad ρ)` of a finitely presented group.
//!
//! A 1-cocycle is determined by its values on the generators and extends to
//! words through `σ(uv) = σ(u) + Ad ρ(u)·σ(v)`. The same recursion, applied
//! with a symbolic `σ`, gives the Fox-derivative constraint matrix whose
//! kernel is `Z¹`.

use crate::arith::{is_zero_vec, DualMat, DualScalar, Echelon, Mat, Scalar, SpanBuilder};
use crate::error::{Error, Result};
use crate::presentation::{evaluate_word_with, GroupHom, GroupPresentation, Word};
use crate::representation::{AdjointRep, Representation};

/// Per-generator values of a map `Γ → 𝔤`, in Lie algebra coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    values: Vec<Vec<Scalar>>,
}

impl Cocycle {
    pub fn new(values: Vec<Vec<Scalar>>) -> Self {
        Cocycle { values }
    }

    pub fn zero(generators: usize, dim: usize) -> Self {
        Cocycle {
            values: vec![vec![Scalar::zero(); dim]; generators],
        }
    }

    /// Splits a flat vector, generator-major.
    pub fn from_flat(flat: &[Scalar], dim: usize) -> Self {
        assert!(
            dim > 0 && flat.len().is_multiple_of(dim),
            "flat length must be a multiple of dim"
        );
        Cocycle {
            values: flat.chunks(dim).map(<[Scalar]>::to_vec).collect(),
        }
    }

    pub fn values(&self) -> &[Vec<Scalar>] {
        &self.values
    }

    pub fn generator_count(&self) -> usize {
        self.values.len()
    }

    pub fn flatten(&self) -> Vec<Scalar> {
        self.values.concat()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| is_zero_vec(v))
    }

    pub fn add(&self, rhs: &Cocycle) -> Cocycle {
        Cocycle {
            values: self
                .values
                .iter()
                .zip(&rhs.values)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    /// `σ ↦ Ad(g)·σ`, the cocycle matching the conjugate `g ρ g⁻¹`.
    pub fn transport(&self, ad_g: &Mat) -> Cocycle {
        Cocycle {
            values: self.values.iter().map(|v| ad_g.mul_vec(v)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Cocycle {
        Cocycle {
            values: self.values.iter().map(|v| v.iter().map(|x| x * s).collect()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologySummary {
    pub z1_dim: usize,
    pub b1_dim: usize,
    pub h1_dim: usize,
    pub z1_basis: Vec<Cocycle>,
    pub b1_basis: Vec<Cocycle>,
    /// Elements of `z1_basis` that complete `b1_basis` to a basis of `Z¹`.
    pub h1_reps: Vec<Cocycle>,
}

/// The `Γ`-module `𝔤` twisted by `Ad ∘ ρ`, for a valid `ρ`.
#[derive(Debug, Clone)]
pub struct Cohomology {
    rho: Representation,
    ad: AdjointRep,
}

impl Cohomology {
    pub fn new(rho: &Representation) -> Result<Self> {
        let ad = rho.adjoint()?;
        Ok(Cohomology { rho: rho.clone(), ad })
    }

    pub fn representation(&self) -> &Representation {
        &self.rho
    }

    pub fn presentation(&self) -> &GroupPresentation {
        self.rho.presentation()
    }

    pub fn adjoint(&self) -> &AdjointRep {
        &self.ad
    }

    /// `dim 𝔤`.
    pub fn dim(&self) -> usize {
        self.ad.dim()
    }

    fn generators(&self) -> usize {
        self.presentation().generator_count()
    }

    fn check_shape(&self, sigma: &Cocycle) -> Result<()> {
        if sigma.generator_count() != self.generators() {
            return Err(Error::CocycleShape(format!(
                "{} generator values for {} generators",
                sigma.generator_count(),
                self.generators()
            )));
        }
        if let Some(v) = sigma.values().iter().find(|v| v.len() != self.dim()) {
            return Err(Error::CocycleShape(format!(
                "value of length {} in a Lie algebra of dimension {}",
                v.len(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// `σ(w)`, with `σ(γ⁻¹) = −Ad ρ(γ)⁻¹ σ(γ)`.
    pub fn evaluate(&self, sigma: &Cocycle, w: &Word) -> Result<Vec<Scalar>> {
        self.check_shape(sigma)?;
        let d = self.dim();
        let mut acc = vec![Scalar::zero(); d];
        let mut prefix = Mat::identity(d);
        for &l in w.letters() {
            let value = sigma.values()[l.generator].clone();
            let step = if l.inverse {
                let u = self.ad.letter(l).mul_vec(&value);
                u.iter().map(|x| -x).collect()
            } else {
                value
            };
            for (a, x) in acc.iter_mut().zip(prefix.mul_vec(&step)) {
                *a += &x;
            }
            prefix = &prefix * self.ad.letter(l);
        }
        Ok(acc)
    }

    /// The linear map `(σ(γ₁),…,σ(γ_N)) ↦ (σ(r₁),…,σ(r_M))`, one block row
    /// per relator.
    pub fn constraint_matrix(&self) -> Mat {
        let d = self.dim();
        let n = self.generators();
        let relators = self.presentation().relators();
        let mut m = Mat::zeros(relators.len() * d, n * d);
        for (ri, r) in relators.iter().enumerate() {
            let mut prefix = Mat::identity(d);
            for &l in r.letters() {
                let block = if l.inverse {
                    (&prefix * self.ad.letter(l)).neg()
                } else {
                    prefix.clone()
                };
                for i in 0..d {
                    for j in 0..d {
                        let (row, col) = (ri * d + i, l.generator * d + j);
                        m[(row, col)] = &m[(row, col)] + &block[(i, j)];
                    }
                }
                prefix = &prefix * self.ad.letter(l);
            }
        }
        m
    }

    pub fn is_cocycle(&self, sigma: &Cocycle) -> Result<bool> {
        self.check_shape(sigma)?;
        for r in self.presentation().relators() {
            if !is_zero_vec(&self.evaluate(sigma, r)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn z1_basis(&self) -> Vec<Cocycle> {
        let d = self.dim();
        let n = self.generators();
        if self.presentation().relators().is_empty() {
            return (0..n * d)
                .map(|k| {
                    let mut flat = vec![Scalar::zero(); n * d];
                    flat[k] = Scalar::one();
                    Cocycle::from_flat(&flat, d)
                })
                .collect();
        }
        Echelon::new(&self.constraint_matrix())
            .kernel()
            .iter()
            .map(|v| Cocycle::from_flat(v, d))
            .collect()
    }

    /// `δA : γ ↦ A − Ad ρ(γ)·A`.
    pub fn coboundary(&self, a: &[Scalar]) -> Cocycle {
        let values = (0..self.generators())
            .map(|g| {
                let moved = self.ad.generator(g).mul_vec(a);
                a.iter().zip(moved).map(|(x, y)| x - &y).collect()
            })
            .collect();
        Cocycle::new(values)
    }

    /// Independent coboundaries of the Lie algebra basis vectors, chosen by
    /// pivot column.
    pub fn b1_basis(&self) -> Vec<Cocycle> {
        let d = self.dim();
        let n = self.generators();
        if n == 0 {
            return Vec::new();
        }
        let images: Vec<Cocycle> = (0..d)
            .map(|k| {
                let mut e = vec![Scalar::zero(); d];
                e[k] = Scalar::one();
                self.coboundary(&e)
            })
            .collect();
        let columns: Vec<Vec<Scalar>> = images.iter().map(Cocycle::flatten).collect();
        let m = Mat::from_columns(n * d, &columns);
        Echelon::new(&m).pivots.into_iter().map(|k| images[k].clone()).collect()
    }

    pub fn summary(&self) -> CohomologySummary {
        let z1_basis = self.z1_basis();
        let b1_basis = self.b1_basis();
        let mut span = SpanBuilder::new();
        for b in &b1_basis {
            span.insert(&b.flatten());
        }
        let h1_reps: Vec<Cocycle> = z1_basis.iter().filter(|z| span.insert(&z.flatten())).cloned().collect();
        debug_assert_eq!(span.dim(), z1_basis.len(), "B¹ must lie in Z¹");
        CohomologySummary {
            z1_dim: z1_basis.len(),
            b1_dim: b1_basis.len(),
            h1_dim: h1_reps.len(),
            z1_basis,
            b1_basis,
            h1_reps,
        }
    }

    /// Checks that `γ ↦ (I + σ(γ)ε)·ρ(γ)` kills every relator over `ℚ(i)[ε]`.
    pub fn dual_number_check(&self, sigma: &Cocycle) -> Result<bool> {
        self.check_shape(sigma)?;
        let lie = self.ad.lie();
        let n = self.rho.family().size();
        let eps = |x: &Mat| x.map(|v| DualScalar::new(Scalar::zero(), v.clone()));
        let mut images = Vec::new();
        let mut inverses = Vec::new();
        for (g, m) in self.rho.images().iter().enumerate() {
            let s = eps(&lie.element(&sigma.values()[g]));
            let id = DualMat::identity(n);
            images.push(id.add(&s).matmul(&m.to_dual()));
            inverses.push(m.inverse()?.to_dual().matmul(&id.sub(&s)));
        }
        Ok(self
            .presentation()
            .relators()
            .iter()
            .all(|r| evaluate_word_with(r, n, &images, &inverses).is_identity()))
    }
}

/// `σ(w)` for a cocycle on the generators of `ρ`'s presentation.
pub fn evaluate_cocycle(sigma: &Cocycle, w: &Word, rho: &Representation) -> Result<Vec<Scalar>> {
    Cohomology::new(rho)?.evaluate(sigma, w)
}

pub fn z1_basis(rho: &Representation) -> Result<Vec<Cocycle>> {
    Ok(Cohomology::new(rho)?.z1_basis())
}

pub fn b1_basis(rho: &Representation) -> Result<Vec<Cocycle>> {
    Ok(Cohomology::new(rho)?.b1_basis())
}

pub fn h1_summary(rho: &Representation) -> Result<CohomologySummary> {
    Ok(Cohomology::new(rho)?.summary())
}

pub fn dual_number_check(sigma: &Cocycle, rho: &Representation) -> Result<bool> {
    Cohomology::new(rho)?.dual_number_check(sigma)
}

/// Restriction of cocycles along `hom: Γ' → Γ` at a target representation.
#[derive(Debug, Clone)]
pub struct Pullback {
    hom: GroupHom,
    target: Cohomology,
    source: Cohomology,
}

impl Pullback {
    /// Fails when `ρ ∘ hom` does not kill a source relator.
    pub fn new(hom: &GroupHom, rho_target: &Representation) -> Result<Self> {
        let target = Cohomology::new(rho_target)?;
        let composed = rho_target.compose(hom)?;
        for r in composed.presentation().relators() {
            let value = composed.evaluate(r)?;
            if !value.is_identity() {
                return Err(Error::HomomorphismInvalid {
                    relator: composed.presentation().format_word(r),
                    value: value.to_string(),
                });
            }
        }
        let source = Cohomology::new(&composed)?;
        Ok(Pullback {
            hom: hom.clone(),
            target,
            source,
        })
    }

    pub fn source(&self) -> &Cohomology {
        &self.source
    }

    pub fn target(&self) -> &Cohomology {
        &self.target
    }

    pub fn apply(&self, sigma: &Cocycle) -> Result<Cocycle> {
        let values = self
            .hom
            .images()
            .iter()
            .map(|w| self.target.evaluate(sigma, w))
            .collect::<Result<Vec<_>>>()?;
        let pulled = Cocycle::new(values);
        if !self.source.is_cocycle(&pulled)? {
            return Err(Error::NotACocycle);
        }
        Ok(pulled)
    }
}

pub fn pullback(hom: &GroupHom, rho_target: &Representation, sigma: &Cocycle) -> Result<Cocycle> {
    Pullback::new(hom, rho_target)?.apply(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{random_element, GroupFamily};
    use crate::presentation::Letter;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn a() -> Mat {
        Mat::from_ints(&[&[1, 1], &[0, 1]])
    }

    fn b() -> Mat {
        Mat::from_ints(&[&[1, 0], &[1, 1]])
    }

    fn free_pair() -> Representation {
        let f2 = GroupPresentation::free(&["x", "y"]).unwrap();
        Representation::new(f2, GroupFamily::sl(2), vec![a(), b()]).unwrap()
    }

    fn klein() -> Representation {
        let p = GroupPresentation::free(&["x", "y"]).unwrap();
        let relators = ["x x", "y y", "x y x y"]
            .iter()
            .map(|t| p.parse_word(t).unwrap())
            .collect();
        let p = GroupPresentation::new(p.generator_names().to_vec(), relators).unwrap();
        let x = Mat::diag(&[1.into(), (-1).into(), (-1).into()]);
        let y = Mat::diag(&[(-1).into(), 1.into(), (-1).into()]);
        Representation::new(p, GroupFamily::so(3), vec![x, y]).unwrap()
    }

    fn genus2() -> Representation {
        let s = GroupPresentation::surface(2).unwrap();
        Representation::new(s, GroupFamily::sl(2), vec![a(), b(), b(), a()]).unwrap()
    }

    fn z2_trivial() -> Representation {
        Representation::trivial(GroupPresentation::surface(1).unwrap(), GroupFamily::sl(2))
    }

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn evaluation_examples() {
        let rho = free_pair();
        let c = Cohomology::new(&rho).unwrap();
        let sigma = Cocycle::new(vec![ints(&[1, 2, 3]), ints(&[-1, 0, 5])]);
        assert!(is_zero_vec(&c.evaluate(&sigma, &Word::empty()).unwrap()));
        // σ(γγ⁻¹) = σ(γ) + Ad ρ(γ)·σ(γ⁻¹)
        let g = c.evaluate(&sigma, &Word::generator(0)).unwrap();
        let g_inv = c.evaluate(&sigma, &Word::generator(0).inverse()).unwrap();
        let moved = c.adjoint().generator(0).mul_vec(&g_inv);
        assert!(g.iter().zip(&moved).all(|(x, y)| (x + y).is_zero()));

        let triv = Representation::trivial(rho.presentation().clone(), GroupFamily::sl(2));
        let ct = Cohomology::new(&triv).unwrap();
        let xy = rho.presentation().parse_word("x y").unwrap();
        assert_eq!(ct.evaluate(&sigma, &xy).unwrap(), ints(&[0, 2, 8]));
    }

    #[test]
    fn z1_examples() {
        assert_eq!(z1_basis(&free_pair()).unwrap().len(), 6);
        assert_eq!(z1_basis(&z2_trivial()).unwrap().len(), 6);
        assert_eq!(Cohomology::new(&z2_trivial()).unwrap().constraint_matrix().rank(), 0);
        assert_eq!(z1_basis(&genus2()).unwrap().len(), 9);
    }

    #[test]
    fn b1_examples() {
        assert_eq!(b1_basis(&z2_trivial()).unwrap().len(), 0);
        assert_eq!(b1_basis(&free_pair()).unwrap().len(), 3);
        assert_eq!(b1_basis(&klein()).unwrap().len(), 3);
    }

    #[test]
    fn h1_examples() {
        let k = h1_summary(&klein()).unwrap();
        assert_eq!((k.z1_dim, k.b1_dim, k.h1_dim), (3, 3, 0));
        let g = h1_summary(&genus2()).unwrap();
        assert_eq!((g.z1_dim, g.b1_dim, g.h1_dim), (9, 3, 6));
        assert_eq!(h1_summary(&free_pair()).unwrap().h1_dim, 3);
    }

    #[test]
    fn cyclic_group_has_no_h1() {
        let p = GroupPresentation::free(&["x"]).unwrap();
        let p = GroupPresentation::new(p.generator_names().to_vec(), vec![p.parse_word("x^3").unwrap()]).unwrap();
        let x = Mat::from_ints(&[&[0, -1], &[1, -1]]);
        let rho = Representation::new(p, GroupFamily::sl(2), vec![x]).unwrap();
        assert!(rho.is_valid());
        assert_eq!(h1_summary(&rho).unwrap().h1_dim, 0);
    }

    #[test]
    fn coboundaries_are_cocycles() {
        for rho in [genus2(), klein(), free_pair()] {
            let c = Cohomology::new(&rho).unwrap();
            let s = c.summary();
            let z = Mat::from_columns(
                c.generators() * c.dim(),
                &s.z1_basis.iter().map(Cocycle::flatten).collect::<Vec<_>>(),
            );
            let mut cols: Vec<Vec<Scalar>> = s.z1_basis.iter().map(Cocycle::flatten).collect();
            cols.extend(s.b1_basis.iter().map(Cocycle::flatten));
            let zb = Mat::from_columns(c.generators() * c.dim(), &cols);
            assert_eq!(z.rank(), zb.rank());
            for b in &s.b1_basis {
                assert!(c.is_cocycle(b).unwrap());
            }
        }
    }

    #[test]
    fn dual_numbers_accept_cocycles_only() {
        for rho in [genus2(), klein(), z2_trivial()] {
            let c = Cohomology::new(&rho).unwrap();
            for z in c.z1_basis() {
                assert!(c.dual_number_check(&z).unwrap());
            }
            assert!(c.dual_number_check(&Cocycle::zero(c.generators(), c.dim())).unwrap());
        }
        // a unit vector on any column the constraints see
        let c = Cohomology::new(&genus2()).unwrap();
        let m = c.constraint_matrix();
        let k = (0..m.cols()).find(|&j| !is_zero_vec(&m.column(j))).unwrap();
        let mut flat = vec![Scalar::zero(); m.cols()];
        flat[k] = Scalar::one();
        let bad = Cocycle::from_flat(&flat, c.dim());
        assert!(!c.is_cocycle(&bad).unwrap());
        assert!(!c.dual_number_check(&bad).unwrap());
    }

    #[test]
    fn dual_numbers_reject_outside_kernel_on_z2() {
        let p = GroupPresentation::surface(1).unwrap();
        let d = Mat::diag(&[2.into(), Scalar::ratio(1, 2)]);
        let rho = Representation::new(p, GroupFamily::sl(2), vec![d.clone(), &d * &d]).unwrap();
        let c = Cohomology::new(&rho).unwrap();
        assert_eq!(c.summary().z1_dim, 4);
        let bad = Cocycle::new(vec![ints(&[1, 0, 0]), ints(&[0, 0, 0])]);
        assert!(!c.dual_number_check(&bad).unwrap());
    }

    #[test]
    fn dimensions_are_conjugation_invariant() {
        let mut rng = StdRng::seed_from_u64(5);
        for rho in [genus2(), free_pair()] {
            let base = h1_summary(&rho).unwrap();
            for _ in 0..3 {
                let g = random_element(rho.family(), &mut rng);
                let s = h1_summary(&rho.conjugate(&g).unwrap()).unwrap();
                assert_eq!((s.z1_dim, s.b1_dim, s.h1_dim), (base.z1_dim, base.b1_dim, base.h1_dim));
            }
        }
    }

    #[test]
    fn identity_pullback_is_identity() {
        let rho = genus2();
        let hom = GroupHom::identity(rho.presentation());
        let pb = Pullback::new(&hom, &rho).unwrap();
        for z in z1_basis(&rho).unwrap() {
            assert_eq!(pb.apply(&z).unwrap(), z);
        }
    }

    fn handlebody() -> (GroupHom, Representation) {
        let s = GroupPresentation::surface(2).unwrap();
        let f2 = GroupPresentation::free(&["x", "y"]).unwrap();
        let images = ["x", "1", "y", "1"].iter().map(|t| f2.parse_word(t).unwrap()).collect();
        let hom = GroupHom::new(s, f2.clone(), images).unwrap();
        (hom, free_pair())
    }

    #[test]
    fn handlebody_pullback_lands_in_z1() {
        let (hom, rho) = handlebody();
        let pb = Pullback::new(&hom, &rho).unwrap();
        let source_z1 = pb.source().z1_basis();
        let mut span = SpanBuilder::new();
        for z in &source_z1 {
            span.insert(&z.flatten());
        }
        for z in pb.target().z1_basis() {
            let p = pb.apply(&z).unwrap();
            assert!(span.contains(&p.flatten()));
        }
    }

    #[test]
    fn pullback_of_coboundary_is_coboundary() {
        let (hom, rho) = handlebody();
        let pb = Pullback::new(&hom, &rho).unwrap();
        let a = ints(&[1, -2, 3]);
        let pulled = pb.apply(&pb.target().coboundary(&a)).unwrap();
        assert_eq!(pulled, pb.source().coboundary(&a));
    }

    #[test]
    fn invalid_hom_is_reported() {
        // a1 ↦ x, b1 ↦ y does not respect the genus-1 relator at a non-commuting pair
        let s = GroupPresentation::surface(1).unwrap();
        let f2 = GroupPresentation::free(&["x", "y"]).unwrap();
        let images = ["x", "y"].iter().map(|t| f2.parse_word(t).unwrap()).collect();
        let hom = GroupHom::new(s, f2, images).unwrap();
        let err = Pullback::new(&hom, &free_pair()).unwrap_err();
        match err {
            Error::HomomorphismInvalid { relator, .. } => assert_eq!(relator, "a1 b1 a1^-1 b1^-1"),
            e => panic!("unexpected {e:?}"),
        }
    }

    fn small_vec() -> impl Strategy<Value = Vec<Scalar>> {
        proptest::collection::vec((-3i64..4).prop_map(Scalar::from_int), 3)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn evaluation_is_a_crossed_homomorphism(
            s0 in small_vec(), s1 in small_vec(),
            u in proptest::collection::vec((0usize..2, any::<bool>()), 0..5),
            v in proptest::collection::vec((0usize..2, any::<bool>()), 0..5),
        ) {
            let rho = free_pair();
            let c = Cohomology::new(&rho).unwrap();
            let sigma = Cocycle::new(vec![s0, s1]);
            let u = Word::reduced(u.into_iter().map(|(g, i)| Letter::new(g, i)));
            let v = Word::reduced(v.into_iter().map(|(g, i)| Letter::new(g, i)));
            let lhs = c.evaluate(&sigma, &u.concat(&v)).unwrap();
            let su = c.evaluate(&sigma, &u).unwrap();
            let sv = c.evaluate(&sigma, &v).unwrap();
            let moved = c.adjoint().word(&u).mul_vec(&sv);
            let rhs: Vec<Scalar> = su.iter().zip(&moved).map(|(x, y)| x + y).collect();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
