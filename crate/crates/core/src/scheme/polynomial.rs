//! Sparse multivariate polynomials over ℚ(i).

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num::Signed;

use crate::arith::{Ring, Scalar};

/// Exponent vector with trailing zeros trimmed, so equal monomials compare equal.
pub type Monomial = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Scalar>,
}

fn trim(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

impl Polynomial {
    pub fn constant(c: Scalar) -> Self {
        let mut p = Polynomial::default();
        p.add_term(Vec::new(), c);
        p
    }

    /// The variable with index `i` (zero-based).
    pub fn var(i: usize) -> Self {
        let mut m = vec![0; i + 1];
        m[i] = 1;
        let mut p = Polynomial::default();
        p.add_term(m, Scalar::one());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Polynomial::default();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let m = trim(m);
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    /// Number of variables the polynomial can mention.
    pub fn var_bound(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Polynomial::default();
        for (m, c) in &self.terms {
            let Some(&e) = m.get(i) else { continue };
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2[i] -= 1;
            out.add_term(m2, c * &Scalar::from_int(i64::from(e)));
        }
        out
    }

    /// Value at `point`; variables beyond `point` must not occur.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert!(self.var_bound() <= point.len(), "point has too few coordinates");
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    t = &t * x;
                }
            }
            acc += &t;
        }
        acc
    }

    /// Value and all partial derivatives at `point` in one pass over the
    /// terms, without building the derivative polynomials.
    pub fn value_and_gradient(&self, point: &[Scalar]) -> (Scalar, Vec<Scalar>) {
        assert!(self.var_bound() <= point.len(), "point has too few coordinates");
        let mut value = Scalar::zero();
        let mut grad = vec![Scalar::zero(); point.len()];
        for (m, c) in &self.terms {
            // product over the nonzero coordinates, and the vanishing ones
            let mut p = c.clone();
            let mut zeros: Option<usize> = None;
            let mut dead = false;
            for (j, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if point[j].is_zero() {
                    if zeros.is_some() || e > 1 {
                        dead = true;
                        break;
                    }
                    zeros = Some(j);
                } else {
                    for _ in 0..e {
                        p = &p * &point[j];
                    }
                }
            }
            if dead {
                continue;
            }
            match zeros {
                Some(j) => grad[j] += &p,
                None => {
                    for (j, &e) in m.iter().enumerate() {
                        if e > 0 {
                            let d = &(&p * &Scalar::from_int(i64::from(e))) / &point[j];
                            grad[j] += &d;
                        }
                    }
                    value += &p;
                }
            }
        }
        (value, grad)
    }

    /// Text form `coeff*x3^2*x7` with the given variable names, highest
    /// total degree first.
    pub fn format_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut terms: Vec<(&Monomial, &Scalar)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            match db.cmp(&da) {
                Ordering::Equal => b.cmp(a),
                o => o,
            }
        });
        let mut out = String::new();
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{e}", names[i])
                    }
                })
                .collect();
            let negative = c.is_real() && c.re().is_negative();
            let mag = if negative { -c } else { c.clone() };
            let coeff = if mag.is_real() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            let body = if vars.is_empty() {
                coeff
            } else if mag == Scalar::one() {
                vars.join("*")
            } else {
                format!("{coeff}*{}", vars.join("*"))
            };
            match (k, negative) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        out
    }
}

impl Ring for Polynomial {
    fn zero() -> Self {
        Polynomial::default()
    }

    fn one() -> Self {
        Polynomial::constant(Scalar::one())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn plus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn minus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    fn times(&self, rhs: &Self) -> Self {
        let mut out = Polynomial::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let len = ma.len().max(mb.len());
                let m: Monomial = (0..len)
                    .map(|i| ma.get(i).copied().unwrap_or(0) + mb.get(i).copied().unwrap_or(0))
                    .collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    fn negate(&self) -> Self {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("x{i}")).collect()
    }

    #[test]
    fn arithmetic_and_format() {
        let det = x(0).times(&x(3)).minus(&x(1).times(&x(2))).minus(&Polynomial::one());
        assert_eq!(det.format_with(&names(4)), "x1*x4 - x2*x3 - 1");
        assert_eq!(det.derivative(0), x(3));
        assert_eq!(det.derivative(1), x(2).negate());
        let sq = x(2).times(&x(2)).times(&x(6)).times(&Polynomial::constant(3.into()));
        assert_eq!(sq.format_with(&names(7)), "3*x3^2*x7");
        let c = Polynomial::constant(Scalar::gaussian(1, 2)).times(&x(0));
        assert_eq!(c.format_with(&names(1)), "(1+2*i)*x1");
        assert_eq!(x(0).minus(&x(0)), Polynomial::zero());
        assert_eq!(Polynomial::zero().format_with(&[]), "0");
        assert_eq!(det.eval(&[1.into(), 0.into(), 0.into(), 1.into()]), Scalar::zero());
    }

    fn poly() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec((proptest::collection::vec(0u32..3, 0..4), -3i64..4), 0..5)
            .prop_map(|t| Polynomial::from_terms(t.into_iter().map(|(m, c)| (m, Scalar::from_int(c)))))
    }

    fn point() -> impl Strategy<Value = Vec<Scalar>> {
        proptest::collection::vec((-3i64..4, 1i64..3).prop_map(|(n, d)| Scalar::ratio(n, d)), 4)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn derivative_is_linear(p in poly(), q in poly(), c in -3i64..4, i in 0usize..4) {
            let c = Polynomial::constant(c.into());
            let lhs = p.plus(&c.times(&q)).derivative(i);
            let rhs = p.derivative(i).plus(&c.times(&q.derivative(i)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn product_rule(p in poly(), q in poly(), i in 0usize..4) {
            let lhs = p.times(&q).derivative(i);
            let rhs = p.derivative(i).times(&q).plus(&p.times(&q.derivative(i)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn gradient_matches_symbolic_derivatives(p in poly(), pt in point()) {
            // integer points hit the vanishing-coordinate branches often
            let (v, g) = p.value_and_gradient(&pt);
            prop_assert_eq!(v, p.eval(&pt));
            for (i, gi) in g.iter().enumerate() {
                prop_assert_eq!(gi, &p.derivative(i).eval(&pt));
            }
        }

        #[test]
        fn product_matches_pointwise_values(p in poly(), q in poly(), pt in point()) {
            prop_assert_eq!(p.times(&q).eval(&pt), &p.eval(&pt) * &q.eval(&pt));
            prop_assert_eq!(p.plus(&q).eval(&pt), &p.eval(&pt) + &q.eval(&pt));
        }
    }
}
