//! Polynomials in `H` with exact rational coefficients.
//!
//! These are the coefficient ring `K[H]` of both the integro-differential
//! algebra and its skew-Laurent quotient. `τ`, the shift `H ↦ H + 1`, acts on
//! them through [`HPoly::shift`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// Dense polynomial in `H`; `coeffs[k]` is the coefficient of `H^k`.
/// The vector is empty for zero and otherwise ends in a nonzero entry.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct HPoly {
    coeffs: Vec<Scalar>,
}

impl HPoly {
    pub fn zero() -> Self {
        HPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `H`.
    pub fn var() -> Self {
        Self::from_coeffs(vec![Scalar::zero(), Scalar::one()])
    }

    /// `a·H + b`.
    pub fn linear(a: Scalar, b: Scalar) -> Self {
        Self::from_coeffs(vec![b, a])
    }

    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        HPoly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `H`, `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    /// The constant value when the degree is at most zero.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.coeffs.len() {
            0 => Some(Scalar::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn eval(&self, h: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| acc * h + c)
    }

    pub fn eval_int(&self, h: i64) -> Scalar {
        self.eval(&Scalar::from_int(h))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        HPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// `τ^k(p)`: the polynomial `H ↦ p(H + k)`.
    pub fn shift(&self, k: i64) -> Self {
        if k == 0 || self.coeffs.len() <= 1 {
            return self.clone();
        }
        // Horner in the basis (H + k)^j.
        let step = HPoly::linear(Scalar::one(), Scalar::from_int(k));
        self.coeffs.iter().rev().fold(HPoly::zero(), |acc, c| {
            &(&acc * &step) + &HPoly::constant(c.clone())
        })
    }

    /// `H ↦ p(c·H)`.
    pub fn scale_var(&self, c: &Scalar) -> Self {
        let mut pow = Scalar::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pow);
            pow *= c;
        }
        Self::from_coeffs(out)
    }
}

impl fmt::Debug for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        f.write_str("H")?;
                    } else {
                        write!(f, "H^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &HPoly {
    type Output = HPoly;
    fn add(self, rhs: &HPoly) -> HPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        HPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &HPoly {
    type Output = HPoly;
    fn sub(self, rhs: &HPoly) -> HPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        HPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &HPoly {
    type Output = HPoly;
    fn mul(self, rhs: &HPoly) -> HPoly {
        if self.is_zero() || rhs.is_zero() {
            return HPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        HPoly::from_coeffs(out)
    }
}

impl Neg for &HPoly {
    type Output = HPoly;
    fn neg(self) -> HPoly {
        HPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for HPoly {
    type Output = HPoly;
    fn add(self, rhs: HPoly) -> HPoly {
        &self + &rhs
    }
}

impl Sub for HPoly {
    type Output = HPoly;
    fn sub(self, rhs: HPoly) -> HPoly {
        &self - &rhs
    }
}

impl Mul for HPoly {
    type Output = HPoly;
    fn mul(self, rhs: HPoly) -> HPoly {
        &self * &rhs
    }
}

/// `τ^k(p)`.
pub fn hpoly_shift(p: &HPoly, k: i64) -> HPoly {
    p.shift(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly() -> impl Strategy<Value = HPoly> {
        prop::collection::vec(-5i64..6, 0..5).prop_map(|cs| HPoly::from_ints(&cs))
    }

    #[test]
    fn shift_examples() {
        assert_eq!(hpoly_shift(&HPoly::var(), 1), HPoly::from_ints(&[1, 1]));
        let p = HPoly::from_ints(&[3, -2, 7]);
        assert_eq!(hpoly_shift(&p, 0), p);
        assert_eq!(
            hpoly_shift(&HPoly::from_ints(&[0, 0, 1]), 1),
            HPoly::from_ints(&[1, 2, 1])
        );
    }

    #[test]
    fn zero_degree_is_minus_one() {
        assert_eq!(HPoly::zero().degree(), -1);
        assert_eq!(HPoly::from_ints(&[0, 0, 0]).degree(), -1);
        assert_eq!(HPoly::from_ints(&[5]).degree(), 0);
    }

    #[test]
    fn scale_var_halves() {
        let p = HPoly::from_ints(&[1, 2, 4]);
        assert_eq!(
            p.scale_var(&Scalar::new(1, 2)),
            HPoly::from_ints(&[1, 1, 1])
        );
    }

    #[test]
    fn display() {
        assert_eq!(HPoly::from_ints(&[-1, 1]).to_string(), "H - 1");
        assert_eq!(HPoly::from_ints(&[0, -2, 1]).to_string(), "H^2 - 2*H");
        assert_eq!(HPoly::zero().to_string(), "0");
    }

    proptest! {
        #[test]
        fn shift_composes(p in poly(), a in -6i64..7, b in -6i64..7) {
            prop_assert_eq!(p.shift(a).shift(b), p.shift(a + b));
        }

        #[test]
        fn shift_preserves_degree(p in poly(), a in -6i64..7) {
            prop_assert_eq!(p.shift(a).degree(), p.degree());
        }

        #[test]
        fn shift_matches_evaluation(p in poly(), a in -6i64..7, h in -10i64..10) {
            prop_assert_eq!(p.shift(a).eval_int(h), p.eval_int(h + a));
        }

        #[test]
        fn shift_is_ring_map(p in poly(), q in poly(), a in -4i64..5) {
            prop_assert_eq!((&p * &q).shift(a), &p.shift(a) * &q.shift(a));
        }
    }
}
