//! The skew-Laurent quotient `B₁ = I₁/F = K[H][∂, ∂^{-1}; τ]`, `τ(H) = H + 1`.
//!
//! Elements are `Σ p_k(H)·∂^k` with left coefficients. The ad(H)-weight of the
//! component `∂^k` is `−k`, matching `[H, ∂] = −∂`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::hpoly::HPoly;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct B1Elem {
    components: BTreeMap<i64, HPoly>,
}

impl B1Elem {
    pub fn zero() -> Self {
        B1Elem::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, HPoly::one())
    }

    pub fn h() -> Self {
        Self::monomial(0, HPoly::var())
    }

    pub fn der() -> Self {
        Self::monomial(1, HPoly::one())
    }

    pub fn der_inv() -> Self {
        Self::monomial(-1, HPoly::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::monomial(0, HPoly::constant(c))
    }

    /// `p(H)·∂^k`.
    pub fn monomial(k: i64, p: HPoly) -> Self {
        Self::from_components([(k, p)])
    }

    pub fn from_components(cs: impl IntoIterator<Item = (i64, HPoly)>) -> Self {
        let mut out = B1Elem::zero();
        for (k, p) in cs {
            out.add_component(k, &p);
        }
        out
    }

    /// Map from `∂`-exponent to its left coefficient.
    pub fn components(&self) -> &BTreeMap<i64, HPoly> {
        &self.components
    }

    pub fn component(&self, k: i64) -> Option<&HPoly> {
        self.components.get(&k)
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_components(self.components.iter().map(|(&k, p)| (k, p.scale(c))))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(B1Elem::one(), |acc, _| &acc * self)
    }

    fn add_component(&mut self, k: i64, p: &HPoly) {
        if p.is_zero() {
            return;
        }
        let sum = match self.components.get(&k) {
            Some(q) => q + p,
            None => p.clone(),
        };
        if sum.is_zero() {
            self.components.remove(&k);
        } else {
            self.components.insert(k, sum);
        }
    }
}

/// `(p∂^i)(q∂^j) = p·τ^i(q)·∂^{i+j}`.
pub fn b1_mul(a: &B1Elem, b: &B1Elem) -> B1Elem {
    let mut out = B1Elem::zero();
    for (&i, p) in &a.components {
        for (&j, q) in &b.components {
            out.add_component(i + j, &(p * &q.shift(i)));
        }
    }
    out
}

impl Mul for &B1Elem {
    type Output = B1Elem;
    fn mul(self, rhs: &B1Elem) -> B1Elem {
        b1_mul(self, rhs)
    }
}

impl Add for &B1Elem {
    type Output = B1Elem;
    fn add(self, rhs: &B1Elem) -> B1Elem {
        let mut out = self.clone();
        for (&k, p) in &rhs.components {
            out.add_component(k, p);
        }
        out
    }
}

impl Neg for &B1Elem {
    type Output = B1Elem;
    fn neg(self) -> B1Elem {
        B1Elem {
            components: self.components.iter().map(|(&k, p)| (k, -p)).collect(),
        }
    }
}

impl Sub for &B1Elem {
    type Output = B1Elem;
    fn sub(self, rhs: &B1Elem) -> B1Elem {
        self + &-rhs
    }
}

/// `σ_n`: `H ↦ H/n`, `∂ ↦ ∂^n`, i.e. `p(H)∂^k ↦ p(H/n)∂^{nk}`.
pub fn sigma_n_apply(n: u32, a: &B1Elem) -> B1Elem {
    assert!(n >= 1, "sigma_n needs n >= 1");
    let inv = Scalar::new(1, n as i64);
    B1Elem::from_components(
        a.components
            .iter()
            .map(|(&k, p)| (k * n as i64, p.scale_var(&inv))),
    )
}

/// Looks for `b` with `σ_n(b) = target`, `∂`-exponents in `[−d, d]` and
/// `deg_H ≤ d`.
///
/// `σ_n` acts componentwise, sending exponent `k` to `nk` and `p(H)` to
/// `p(H/n)`, so each target component has at most one candidate preimage
/// `p(nH)∂^{k/n}`; a component whose exponent is not divisible by `n` has
/// none.
pub fn sigma_n_preimage_search(n: u32, target: &B1Elem, d: u32) -> Option<B1Elem> {
    assert!(n >= 2, "preimage search needs n >= 2");
    let n_s = Scalar::from_int(n as i64);
    let mut pre = B1Elem::zero();
    for (&k, p) in &target.components {
        if k.rem_euclid(n as i64) != 0 {
            return None;
        }
        let k0 = k / n as i64;
        let q = p.scale_var(&n_s);
        if k0.unsigned_abs() > d as u64 || q.degree() > d as i64 {
            return None;
        }
        pre.add_component(k0, &q);
    }
    (sigma_n_apply(n, &pre) == *target).then_some(pre)
}

/// The eigenvalue `ν` of `ad(a)` on the weight-`i` component `K[H]·∂^{−i}`,
/// if there is a nonzero one.
///
/// `[a, β∂^{−i}] = (a − τ^{−i}(a))·β∂^{−i}`, so an eigenvalue exists exactly
/// when `a − τ^{−i}(a)` is a nonzero constant, which forces `deg_H(a) = 1`.
pub fn ad_eigenvalue_on_component(a: &HPoly, i: i64) -> Result<Option<Scalar>> {
    if i == 0 {
        return Err(Error::InvalidComponent);
    }
    let diff = a - &a.shift(-i);
    Ok(diff.as_constant().filter(|nu| !nu.is_zero()))
}

impl fmt::Display for B1Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .rev()
            .map(|(&k, p)| {
                let d = match k {
                    0 => String::new(),
                    1 => "D".into(),
                    -1 => "Dinv".into(),
                    k if k > 0 => format!("D^{k}"),
                    k => format!("Dinv^{}", -k),
                };
                match (d.is_empty(), p.coeffs().len()) {
                    (true, _) => format!("({p})"),
                    (false, 1) if p.coeff(0).is_one() => d,
                    (false, _) => format!("({p})*{d}"),
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for B1Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B1({self})")
    }
}
