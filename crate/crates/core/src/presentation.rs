//! Finitely presented groups, words, and homomorphisms given by words.

use std::fmt;

use crate::arith::{Mat, Matrix, Ring};
use crate::error::{Error, Result};

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn pos(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub fn neg(generator: usize) -> Self {
        Letter::new(generator, true)
    }

    pub fn inverted(self) -> Self {
        Letter::new(self.generator, !self.inverse)
    }
}

/// A freely reduced word in the generators.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

/// Cancels adjacent `g g⁻¹` and `g⁻¹ g` pairs until none remain.
///
/// Fails if any letter references a generator `>= generator_count`.
pub fn free_reduce(letters: &[Letter], generator_count: usize) -> Result<Word> {
    if let Some(bad) = letters.iter().find(|l| l.generator >= generator_count) {
        return Err(Error::UnknownGenerator {
            index: bad.generator,
            count: generator_count,
        });
    }
    Ok(Word::reduced(letters.iter().copied()))
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn generator(g: usize) -> Self {
        Word {
            letters: vec![Letter::pos(g)],
        }
    }

    /// Stack-based free reduction; does not validate generator indices.
    pub fn reduced(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverted()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Reversed word with every letter inverted.
    pub fn inverse(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    /// Freely reduced concatenation `self · rhs`.
    pub fn concat(&self, rhs: &Word) -> Self {
        Word::reduced(self.letters.iter().chain(&rhs.letters).copied())
    }

    /// The commutator `u v u⁻¹ v⁻¹`.
    pub fn commutator(u: &Word, v: &Word) -> Self {
        u.concat(v).concat(&u.inverse()).concat(&v.inverse())
    }

    /// Substitutes a word for every generator and reduces.
    pub fn substitute(&self, images: &[Word]) -> Word {
        Word::reduced(self.letters.iter().flat_map(|l| {
            let w = &images[l.generator];
            let part: Vec<Letter> = if l.inverse {
                w.inverse().letters
            } else {
                w.letters.clone()
            };
            part
        }))
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }
}

/// `⟨generators | relators⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl GroupPresentation {
    /// Relators are freely reduced on the way in; a relator that reduces to
    /// the empty word is rejected.
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        for (i, n) in names.iter().enumerate() {
            if !valid_name(n) {
                return Err(Error::UnknownGeneratorName(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(Error::Shape(format!("duplicate generator name `{n}`")));
            }
        }
        let relators = relators
            .iter()
            .map(|r| {
                let w = free_reduce(r.letters(), names.len())?;
                if w.is_empty() {
                    Err(Error::EmptyRelator)
                } else {
                    Ok(w)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupPresentation { names, relators })
    }

    /// The free group on `names`.
    pub fn free(names: &[&str]) -> Result<Self> {
        GroupPresentation::new(names.iter().map(|s| s.to_string()).collect(), Vec::new())
    }

    /// `⟨a₁, b₁, …, a_g, b_g | [a₁,b₁]⋯[a_g,b_g]⟩`.
    pub fn surface(genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::ZeroGenus);
        }
        let names = (1..=genus).flat_map(|k| [format!("a{k}"), format!("b{k}")]).collect();
        GroupPresentation::new(names, vec![surface_relator(genus)])
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn is_free(&self) -> bool {
        self.relators.is_empty()
    }

    /// `Some(g)` iff this is literally the standard genus-`g` one-relator
    /// presentation (generator names are ignored, order is not).
    pub fn surface_genus(&self) -> Option<usize> {
        let n = self.names.len();
        if n == 0 || !n.is_multiple_of(2) || self.relators.len() != 1 {
            return None;
        }
        let g = n / 2;
        (self.relators[0] == surface_relator(g)).then_some(g)
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Parses whitespace-separated letters `name`, `name^-1` (or `name^k`
    /// for any nonzero integer `k`). A lone `1` is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens == ["1"] {
            return Ok(Word::empty());
        }
        for tok in tokens {
            let (name, exp) = match tok.split_once('^') {
                Some((name, e)) => {
                    let exp: i64 = e
                        .parse()
                        .map_err(|_| Error::Shape(format!("bad exponent in `{tok}`")))?;
                    if exp == 0 {
                        return Err(Error::Shape(format!("zero exponent in `{tok}`")));
                    }
                    (name, exp)
                }
                None => (tok, 1),
            };
            let g = self
                .generator_index(name)
                .ok_or_else(|| Error::UnknownGeneratorName(name.to_string()))?;
            for _ in 0..exp.unsigned_abs() {
                letters.push(Letter::new(g, exp < 0));
            }
        }
        free_reduce(&letters, self.generator_count())
    }

    /// Inverse of [`parse_word`](Self::parse_word); the empty word prints as `1`.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.letters()
            .iter()
            .map(|l| {
                let name = &self.names[l.generator];
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}", self.names.join(", "))?;
        if !self.relators.is_empty() {
            let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
            write!(f, " | {}", rels.join(", "))?;
        }
        f.write_str(">")
    }
}

fn surface_relator(genus: usize) -> Word {
    let mut letters = Vec::with_capacity(4 * genus);
    for k in 0..genus {
        let (a, b) = (2 * k, 2 * k + 1);
        letters.extend([Letter::pos(a), Letter::pos(b), Letter::neg(a), Letter::neg(b)]);
    }
    Word { letters }
}

/// Evaluates `w` given the images of the generators and of their inverses.
///
/// Generic over the entry ring so the same routine evaluates numeric,
/// dual-number and symbolic matrices. `size` is used for the empty word.
pub fn evaluate_word_with<T: Ring>(w: &Word, size: usize, images: &[Matrix<T>], inverses: &[Matrix<T>]) -> Matrix<T> {
    let mut acc: Option<Matrix<T>> = None;
    for l in w.letters() {
        let m = if l.inverse {
            &inverses[l.generator]
        } else {
            &images[l.generator]
        };
        acc = Some(match acc {
            None => m.clone(),
            Some(a) => a.matmul(m),
        });
    }
    acc.unwrap_or_else(|| Matrix::identity(size))
}

/// Numeric word evaluation; fails if a generator image used by `w` is singular.
pub fn evaluate_word(w: &Word, images: &[Mat]) -> Result<Mat> {
    let size = images.first().map_or(0, Mat::rows);
    if let Some(g) = w.max_generator() {
        if g >= images.len() {
            return Err(Error::UnknownGenerator {
                index: g,
                count: images.len(),
            });
        }
    }
    if images.iter().any(|m| !m.is_square() || m.rows() != size) {
        return Err(Error::Shape("generator images must be square of equal size".into()));
    }
    let inverses = images.iter().map(Mat::inverse).collect::<Result<Vec<_>>>()?;
    Ok(evaluate_word_with(w, size, images, &inverses))
}

/// A homomorphism `source → target` given by one target word per source generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: GroupPresentation,
    target: GroupPresentation,
    images: Vec<Word>,
}

impl GroupHom {
    /// Relator compatibility is not checked here; it is checked pointwise
    /// when a representation is pulled back.
    pub fn new(source: GroupPresentation, target: GroupPresentation, images: Vec<Word>) -> Result<Self> {
        if images.len() != source.generator_count() {
            return Err(Error::Shape(format!(
                "homomorphism needs {} image words, got {}",
                source.generator_count(),
                images.len()
            )));
        }
        let images = images
            .iter()
            .map(|w| free_reduce(w.letters(), target.generator_count()))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupHom { source, target, images })
    }

    pub fn identity(p: &GroupPresentation) -> Self {
        let images = (0..p.generator_count()).map(Word::generator).collect();
        GroupHom {
            source: p.clone(),
            target: p.clone(),
            images,
        }
    }

    pub fn source(&self) -> &GroupPresentation {
        &self.source
    }

    pub fn target(&self) -> &GroupPresentation {
        &self.target
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Image of a source word in the target.
    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Scalar;
    use proptest::prelude::*;

    fn ab() -> GroupPresentation {
        GroupPresentation::free(&["a", "b"]).unwrap()
    }

    #[test]
    fn free_reduce_examples() {
        let (a, b) = (0, 1);
        assert!(free_reduce(&[Letter::pos(a), Letter::neg(a)], 2).unwrap().is_empty());
        let w = free_reduce(&[Letter::pos(a), Letter::pos(b), Letter::neg(b), Letter::pos(a)], 2).unwrap();
        assert_eq!(w.letters(), &[Letter::pos(a), Letter::pos(a)]);
        let reduced = [Letter::pos(a), Letter::neg(b), Letter::pos(a)];
        assert_eq!(free_reduce(&reduced, 2).unwrap().letters(), &reduced);
        assert!(matches!(
            free_reduce(&[Letter::pos(5)], 2),
            Err(Error::UnknownGenerator { index: 5, count: 2 })
        ));
    }

    #[test]
    fn invert_examples() {
        let p = ab();
        assert!(Word::empty().inverse().is_empty());
        let w = p.parse_word("a b").unwrap();
        assert_eq!(p.format_word(&w.inverse()), "b^-1 a^-1");
        let c = p.parse_word("a b a^-1 b^-1").unwrap();
        assert_eq!(p.format_word(&c.inverse()), "b a b^-1 a^-1");
        assert!(c.concat(&c.inverse()).is_empty());
    }

    #[test]
    fn surface_presentations() {
        let t = GroupPresentation::surface(1).unwrap();
        assert_eq!(t.to_string(), "<a1, b1 | a1 b1 a1^-1 b1^-1>");
        for g in 2..=3 {
            let s = GroupPresentation::surface(g).unwrap();
            assert_eq!(s.generator_count(), 2 * g);
            assert_eq!(s.relators()[0].len(), 4 * g);
            assert_eq!(s.surface_genus(), Some(g));
        }
        assert_eq!(GroupPresentation::surface(0), Err(Error::ZeroGenus));
        assert_eq!(ab().surface_genus(), None);
    }

    #[test]
    fn rejects_empty_relator() {
        let names = vec!["a".to_string()];
        let r = Word::reduced([Letter::pos(0), Letter::neg(0)]);
        assert_eq!(GroupPresentation::new(names, vec![r]), Err(Error::EmptyRelator));
    }

    #[test]
    fn word_syntax() {
        let p = ab();
        assert!(p.parse_word("1").unwrap().is_empty());
        assert_eq!(p.parse_word("a^2 b^-2").unwrap().len(), 4);
        assert!(matches!(p.parse_word("c"), Err(Error::UnknownGeneratorName(_))));
        assert!(p.parse_word("a^0").is_err());
    }

    #[test]
    fn evaluate_examples() {
        let a = Mat::from_ints(&[&[1, 1], &[0, 1]]);
        let b = Mat::from_ints(&[&[1, 0], &[1, 1]]);
        let imgs = [a.clone(), b.clone()];
        let p = ab();
        assert!(evaluate_word(&Word::empty(), &imgs).unwrap().is_identity());
        assert_eq!(evaluate_word(&p.parse_word("a").unwrap(), &imgs).unwrap(), a);
        // [A,B] by hand: AB = [[2,1],[1,1]], A^-1 = [[1,-1],[0,1]],
        // B^-1 = [[1,0],[-1,1]]; AB A^-1 = [[2,-1],[1,0]];
        // [[2,-1],[1,0]] B^-1 = [[3,-1],[1,0]].
        let c = evaluate_word(&p.parse_word("a b a^-1 b^-1").unwrap(), &imgs).unwrap();
        assert_eq!(c, Mat::from_ints(&[&[3, -1], &[1, 0]]));
        let singular = [Mat::from_ints(&[&[1, 1], &[1, 1]]), b];
        assert!(matches!(
            evaluate_word(&p.parse_word("a").unwrap(), &singular),
            Err(Error::Singular)
        ));
    }

    fn word_strategy(gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
        proptest::collection::vec((0..gens, any::<bool>()), 0..max_len)
            .prop_map(|v| Word::reduced(v.into_iter().map(|(g, i)| Letter::new(g, i))))
    }

    fn sl2_images() -> Vec<Mat> {
        vec![
            Mat::from_ints(&[&[1, 1], &[0, 1]]),
            Mat::from_ints(&[&[1, 0], &[1, 1]]),
            Mat::from_rows(vec![
                vec![Scalar::from_int(2), Scalar::from_int(0)],
                vec![Scalar::i(), Scalar::ratio(1, 2)],
            ]),
        ]
    }

    proptest! {
        #[test]
        fn reduction_idempotent(v in proptest::collection::vec((0usize..3, any::<bool>()), 0..20)) {
            let letters: Vec<Letter> = v.into_iter().map(|(g, i)| Letter::new(g, i)).collect();
            let w = free_reduce(&letters, 3).unwrap();
            prop_assert!(w.len() <= letters.len());
            prop_assert_eq!(free_reduce(w.letters(), 3).unwrap(), w.clone());
            for pair in w.letters().windows(2) {
                prop_assert_ne!(pair[0], pair[1].inverted());
            }
        }

        #[test]
        fn evaluation_is_a_monoid_homomorphism(u in word_strategy(3, 8), v in word_strategy(3, 8)) {
            let imgs = sl2_images();
            let eu = evaluate_word(&u, &imgs).unwrap();
            let ev = evaluate_word(&v, &imgs).unwrap();
            prop_assert_eq!(evaluate_word(&u.concat(&v), &imgs).unwrap(), &eu * &ev);
            prop_assert_eq!(evaluate_word(&u.inverse(), &imgs).unwrap(), eu.inverse().unwrap());
        }
    }
}
