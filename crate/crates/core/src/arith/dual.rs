use std::fmt;

use super::{Ring, Scalar};

/// `value + eps·ε` in ℚ(i)[ε]/(ε²).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct DualScalar {
    pub value: Scalar,
    pub eps: Scalar,
}

impl DualScalar {
    pub fn new(value: Scalar, eps: Scalar) -> Self {
        DualScalar { value, eps }
    }

    pub fn constant(value: Scalar) -> Self {
        DualScalar::new(value, Scalar::from_int(0))
    }
}

impl Ring for DualScalar {
    fn zero() -> Self {
        DualScalar::default()
    }
    fn one() -> Self {
        DualScalar::constant(Scalar::from_int(1))
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.eps.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        DualScalar::new(&self.value + &rhs.value, &self.eps + &rhs.eps)
    }
    fn minus(&self, rhs: &Self) -> Self {
        DualScalar::new(&self.value - &rhs.value, &self.eps - &rhs.eps)
    }
    fn times(&self, rhs: &Self) -> Self {
        // (a + bε)(c + dε) = ac + (ad + bc)ε
        DualScalar::new(
            &self.value * &rhs.value,
            &(&self.value * &rhs.eps) + &(&self.eps * &rhs.value),
        )
    }
    fn negate(&self) -> Self {
        DualScalar::new(-&self.value, -&self.eps)
    }
}

impl fmt::Debug for DualScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})+({:?})ε", self.value, self.eps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small() -> impl Strategy<Value = Scalar> {
        (-20i64..20, 1i64..9, -20i64..20).prop_map(|(n, d, m)| Scalar::ratio(n, d) + Scalar::from_int(m) * Scalar::i())
    }

    proptest! {
        #[test]
        fn epsilon_squares_to_zero(a in small(), b in small(), c in small(), d in small()) {
            let x = DualScalar::new(a.clone(), b.clone());
            let y = DualScalar::new(c.clone(), d.clone());
            let p = x.times(&y);
            prop_assert_eq!(p.value, &a * &c);
            prop_assert_eq!(p.eps, &(&a * &d) + &(&b * &c));
        }
    }

    #[test]
    fn pure_epsilon_is_nilpotent() {
        let e = DualScalar::new(Scalar::from_int(0), Scalar::from_int(1));
        assert!(e.times(&e).is_zero());
    }
}
