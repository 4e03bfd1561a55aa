//! Polynomials in `x` stored in the divided-power basis `x^{[s]} = x^s / s!`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use crate::scalar::Scalar;

/// `Σ c_s x^{[s]}` with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyX {
    terms: BTreeMap<usize, Scalar>,
}

impl PolyX {
    pub fn zero() -> Self {
        PolyX::default()
    }

    /// The basis element `x^{[s]}`.
    pub fn basis(s: usize) -> Self {
        Self::term(s, Scalar::one())
    }

    pub fn term(s: usize, c: Scalar) -> Self {
        let mut p = PolyX::zero();
        p.add_term(s, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut p = PolyX::zero();
        for (s, c) in terms {
            p.add_term(s, c);
        }
        p
    }

    /// Coefficient vector `[c_0, ..., c_{n-1}]` read as `Σ c_s x^{[s]}`.
    pub fn from_dense(cs: &[Scalar]) -> Self {
        Self::from_terms(cs.iter().cloned().enumerate())
    }

    pub fn add_term(&mut self, s: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(s).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, s: usize) -> Scalar {
        self.terms.get(&s).cloned().unwrap_or_default()
    }

    /// Degree, `-1` for zero.
    pub fn degree(&self) -> i64 {
        self.terms.keys().next_back().map_or(-1, |&s| s as i64)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.terms.iter().map(|(&s, c)| (s, c))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(self.terms().map(|(s, x)| (s, x * c)))
    }

    /// Dense coefficients for degrees `0..len`; higher terms are dropped.
    pub fn to_dense(&self, len: usize) -> Vec<Scalar> {
        (0..len).map(|s| self.coeff(s)).collect()
    }
}

impl Add for &PolyX {
    type Output = PolyX;
    fn add(self, rhs: &PolyX) -> PolyX {
        let mut out = self.clone();
        for (s, c) in rhs.terms() {
            out.add_term(s, c.clone());
        }
        out
    }
}

impl Sub for &PolyX {
    type Output = PolyX;
    fn sub(self, rhs: &PolyX) -> PolyX {
        let mut out = self.clone();
        for (s, c) in rhs.terms() {
            out.add_term(s, -c);
        }
        out
    }
}

impl fmt::Debug for PolyX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms().map(|(s, c)| format!("{c}*x^[{s}]")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `Σ c_s x^s ↦ Σ (s!·c_s) x^{[s]}`.
pub fn polyx_monomial_to_divided(c: &[Scalar]) -> PolyX {
    PolyX::from_terms(
        c.iter()
            .enumerate()
            .map(|(s, cs)| (s, cs * &Scalar::factorial(s))),
    )
}

/// Monomial coefficients `[c_0, c_1, ...]` of `p`, without trailing zeros.
pub fn polyx_divided_to_monomial(p: &PolyX) -> Vec<Scalar> {
    let len = (p.degree() + 1) as usize;
    let mut out = vec![Scalar::zero(); len];
    for (s, c) in p.terms() {
        out[s] = c / &Scalar::factorial(s);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(cs: &[i64]) -> Vec<Scalar> {
        cs.iter().map(|&c| Scalar::from_int(c)).collect()
    }

    #[test]
    fn monomial_to_divided_examples() {
        assert_eq!(
            polyx_monomial_to_divided(&ints(&[0, 0, 1])),
            PolyX::term(2, Scalar::from_int(2))
        );
        assert_eq!(polyx_monomial_to_divided(&ints(&[1])), PolyX::basis(0));
        let x3_over_6 = vec![
            Scalar::zero(),
            Scalar::zero(),
            Scalar::zero(),
            Scalar::new(1, 6),
        ];
        assert_eq!(polyx_monomial_to_divided(&x3_over_6), PolyX::basis(3));
    }

    #[test]
    fn divided_to_monomial_examples() {
        assert_eq!(
            polyx_divided_to_monomial(&PolyX::basis(2)),
            vec![Scalar::zero(), Scalar::zero(), Scalar::new(1, 2)]
        );
        assert!(polyx_divided_to_monomial(&PolyX::zero()).is_empty());
        let p = &PolyX::basis(0) + &PolyX::basis(1);
        assert_eq!(polyx_divided_to_monomial(&p), ints(&[1, 1]));
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = &PolyX::basis(3) - &PolyX::basis(3);
        assert!(p.is_zero());
        assert_eq!(p.degree(), -1);
    }

    proptest! {
        #[test]
        fn basis_round_trip(cs in prop::collection::vec((-9i64..10, 1i64..5), 0..7)) {
            let mut c: Vec<Scalar> = cs.iter().map(|&(n, d)| Scalar::new(n, d)).collect();
            while c.last().is_some_and(Scalar::is_zero) {
                c.pop();
            }
            prop_assert_eq!(polyx_divided_to_monomial(&polyx_monomial_to_divided(&c)), c);
        }
    }
}
