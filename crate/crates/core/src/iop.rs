//! Elements of the algebra `I₁ = K⟨H, ∂, ∫⟩` in canonical form.
//!
//! Every element is stored uniquely as `Σ b_i(H)·v_i + Σ λ_{kl} e_{kl}` where
//! `v_i = ∫^i` for `i > 0`, `v_0 = 1` and `v_i = ∂^{-i}` for `i < 0`.
//! Coefficients `b_i` sit on the left.
//!
//! Products are reduced with the rewriting rules
//!
//! * `v_i·p(H) = p(H − i)·v_i` (from `∫H = (H − 1)∫`, `H∂ = ∂(H − 1)`),
//! * `∂^a∫^b = v_{b−a}`, and `∫^a∂^b = v_{a−b} − Σ_{k<min(a,b)} e_{k+a−m, k+b−m}`
//!   with `m = min(a, b)`,
//! * `∫e_{kl} = e_{k+1,l}`, `∂e_{kl} = e_{k−1,l}`, `e_{kl}∫ = e_{k,l−1}`,
//!   `e_{kl}∂ = e_{k,l+1}` (out-of-range indices give zero),
//! * `p(H)e_{kl} = p(k+1)e_{kl}` and `e_{kl}p(H) = p(l+1)e_{kl}`,
//! * `e_{ij}e_{kl} = δ_{jk}e_{il}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::b1::B1Elem;
use crate::error::{Error, Result};
use crate::fmatrix::{det_one_plus, fmul, inverse_one_plus, FMatrix};
use crate::hpoly::HPoly;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IOp {
    towers: BTreeMap<i64, HPoly>,
    fpart: FMatrix,
}

/// Named generators accepted by [`generator`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    One,
    H,
    Der,
    Int,
    X,
    E(usize, usize),
}

pub fn generator(g: Generator) -> IOp {
    match g {
        Generator::One => IOp::one(),
        Generator::H => IOp::h(),
        Generator::Der => IOp::der(),
        Generator::Int => IOp::int(),
        Generator::X => IOp::x(),
        Generator::E(i, j) => IOp::e(i, j),
    }
}

impl IOp {
    pub fn zero() -> Self {
        IOp::default()
    }

    pub fn one() -> Self {
        Self::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Self::tower(0, HPoly::constant(c))
    }

    pub fn h() -> Self {
        Self::tower(0, HPoly::var())
    }

    pub fn der() -> Self {
        Self::tower(-1, HPoly::one())
    }

    pub fn int() -> Self {
        Self::tower(1, HPoly::one())
    }

    /// `x = ∫H`, stored as `(H − 1)∫`.
    pub fn x() -> Self {
        &IOp::int() * &IOp::h()
    }

    pub fn e(i: usize, j: usize) -> Self {
        Self::from_f(FMatrix::unit(i, j))
    }

    /// `p(H)·v_i`.
    pub fn tower(i: i64, p: HPoly) -> Self {
        let mut a = IOp::zero();
        a.add_tower(i, &p);
        a
    }

    /// `∫^n` for `n ≥ 0`, `∂^{-n}` for `n < 0`.
    pub fn v(i: i64) -> Self {
        Self::tower(i, HPoly::one())
    }

    pub fn from_f(f: FMatrix) -> Self {
        IOp {
            towers: BTreeMap::new(),
            fpart: f,
        }
    }

    pub fn from_parts(towers: impl IntoIterator<Item = (i64, HPoly)>, fpart: FMatrix) -> Self {
        let mut a = IOp::from_f(fpart);
        for (i, p) in towers {
            a.add_tower(i, &p);
        }
        a
    }

    pub fn towers(&self) -> &BTreeMap<i64, HPoly> {
        &self.towers
    }

    pub fn tower_at(&self, i: i64) -> Option<&HPoly> {
        self.towers.get(&i)
    }

    pub fn fpart(&self) -> &FMatrix {
        &self.fpart
    }

    pub fn is_zero(&self) -> bool {
        self.towers.is_empty() && self.fpart.is_zero()
    }

    /// True when the element lies in `F`.
    pub fn is_in_f(&self) -> bool {
        self.towers.is_empty()
    }

    /// Largest and smallest tower index, `None` for elements of `F`.
    pub fn tower_range(&self) -> Option<(i64, i64)> {
        let lo = *self.towers.keys().next()?;
        let hi = *self.towers.keys().next_back()?;
        Some((lo, hi))
    }

    /// `max(max |i|, deg_F) + 1` over tower indices `i`.
    pub fn bandwidth(&self) -> usize {
        let t = self
            .towers
            .keys()
            .map(|i| i.unsigned_abs())
            .max()
            .unwrap_or(0);
        let f = self.fpart.deg_f().max(0) as u64;
        (t.max(f) + 1) as usize
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return IOp::zero();
        }
        IOp {
            towers: self.towers.iter().map(|(&i, p)| (i, p.scale(c))).collect(),
            fpart: self.fpart.scale(c),
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = IOp::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn add_tower(&mut self, i: i64, p: &HPoly) {
        if p.is_zero() {
            return;
        }
        let sum = match self.towers.get(&i) {
            Some(q) => q + p,
            None => p.clone(),
        };
        if sum.is_zero() {
            self.towers.remove(&i);
        } else {
            self.towers.insert(i, sum);
        }
    }

    /// Adds `p(H)·e_{kl}`, i.e. `p(k+1)·e_{kl}`.
    fn add_weighted_unit(&mut self, p: &HPoly, k: usize, l: usize) {
        self.fpart.add_entry(k, l, p.eval_int(k as i64 + 1));
    }
}

/// `v_i·v_j` as a tower index plus the matrix units to subtract.
/// Only `∫^a∂^b` produces corrections.
fn v_product(i: i64, j: i64) -> (i64, Vec<(usize, usize)>) {
    let k = i + j;
    if i > 0 && j < 0 {
        let (a, b) = (i as usize, (-j) as usize);
        let m = a.min(b);
        let corrections = (0..m).map(|t| (t + a - m, t + b - m)).collect();
        (k, corrections)
    } else {
        (k, Vec::new())
    }
}

/// `v_i·e_{kl}`.
fn v_times_unit(i: i64, k: usize, l: usize) -> Option<(usize, usize)> {
    let r = k as i64 + i;
    (r >= 0).then_some((r as usize, l))
}

/// `e_{kl}·v_j`.
fn unit_times_v(k: usize, l: usize, j: i64) -> Option<(usize, usize)> {
    let c = l as i64 - j;
    (c >= 0).then_some((k, c as usize))
}

impl Mul for &IOp {
    type Output = IOp;

    fn mul(self, rhs: &IOp) -> IOp {
        let mut out = IOp::zero();
        for (&i, p) in &self.towers {
            for (&j, q) in &rhs.towers {
                // p(H) v_i q(H) v_j = p(H) q(H - i) v_i v_j
                let coeff = p * &q.shift(-i);
                let (k, corrections) = v_product(i, j);
                out.add_tower(k, &coeff);
                for (r, c) in corrections {
                    out.add_weighted_unit(&-&coeff, r, c);
                }
            }
            for ((k, l), lam) in rhs.fpart.entries() {
                if let Some((r, c)) = v_times_unit(i, k, l) {
                    out.add_weighted_unit(&p.scale(lam), r, c);
                }
            }
        }
        for ((k, l), lam) in self.fpart.entries() {
            for (&j, q) in &rhs.towers {
                if let Some((r, c)) = unit_times_v(k, l, j) {
                    out.fpart.add_entry(r, c, lam * &q.eval_int(l as i64 + 1));
                }
            }
        }
        out.fpart = &out.fpart + &fmul(&self.fpart, &rhs.fpart);
        out
    }
}

impl Add for &IOp {
    type Output = IOp;
    fn add(self, rhs: &IOp) -> IOp {
        let mut out = self.clone();
        for (&i, p) in &rhs.towers {
            out.add_tower(i, p);
        }
        out.fpart = &out.fpart + &rhs.fpart;
        out
    }
}

impl Sub for &IOp {
    type Output = IOp;
    fn sub(self, rhs: &IOp) -> IOp {
        self + &-rhs
    }
}

impl Neg for &IOp {
    type Output = IOp;
    fn neg(self) -> IOp {
        IOp {
            towers: self.towers.iter().map(|(&i, p)| (i, -p)).collect(),
            fpart: -&self.fpart,
        }
    }
}

impl Mul for IOp {
    type Output = IOp;
    fn mul(self, rhs: IOp) -> IOp {
        &self * &rhs
    }
}

impl Add for IOp {
    type Output = IOp;
    fn add(self, rhs: IOp) -> IOp {
        &self + &rhs
    }
}

impl Sub for IOp {
    type Output = IOp;
    fn sub(self, rhs: IOp) -> IOp {
        &self - &rhs
    }
}

impl Neg for IOp {
    type Output = IOp;
    fn neg(self) -> IOp {
        -&self
    }
}

pub fn mul(a: &IOp, b: &IOp) -> IOp {
    a * b
}

pub fn add(a: &IOp, b: &IOp) -> IOp {
    a + b
}

pub fn neg(a: &IOp) -> IOp {
    -a
}

pub fn scalar_mul(c: &Scalar, a: &IOp) -> IOp {
    a.scale(c)
}

/// `[a, b] = ab − ba`.
pub fn commutator(a: &IOp, b: &IOp) -> IOp {
    &(a * b) - &(b * a)
}

/// The weight-`i` part: `b_i v_i` plus the `e_{kl}` with `k − l = i`.
pub fn graded_component(a: &IOp, i: i64) -> IOp {
    IOp {
        towers: a
            .towers
            .get(&i)
            .map(|p| (i, p.clone()))
            .into_iter()
            .collect(),
        fpart: FMatrix::from_entries(
            a.fpart
                .entries()
                .filter(|((k, l), _)| *k as i64 - *l as i64 == i)
                .map(|(k, c)| (k, c.clone())),
        ),
    }
}

/// Every weight that carries a nonzero graded component.
pub fn weights(a: &IOp) -> Vec<i64> {
    let mut ws: Vec<i64> = a
        .towers
        .keys()
        .copied()
        .chain(a.fpart.entries().map(|((k, l), _)| k as i64 - l as i64))
        .collect();
    ws.sort_unstable();
    ws.dedup();
    ws
}

pub fn f_part(a: &IOp) -> FMatrix {
    a.fpart.clone()
}

/// The image in `B₁ = I₁/F`, with `v_i ↦ ∂^{-i}`.
pub fn pi(a: &IOp) -> B1Elem {
    B1Elem::from_components(a.towers.iter().map(|(&i, p)| (-i, p.clone())))
}

/// Membership in `K + F`, the elements generating finite-dimensional
/// subalgebras.
pub fn is_in_k_plus_f(a: &IOp) -> bool {
    match a.towers.len() {
        0 => true,
        1 => a.towers.get(&0).is_some_and(|p| p.degree() == 0),
        _ => false,
    }
}

/// Writes `a = λ(1 + f)` when possible.
fn unit_parts(a: &IOp) -> Option<(Scalar, FMatrix)> {
    if a.towers.len() != 1 {
        return None;
    }
    let p = a.towers.get(&0)?;
    if p.degree() != 0 {
        return None;
    }
    let lam = p.coeff(0);
    let f = a.fpart.scale(&lam.inv()?);
    Some((lam, f))
}

/// Units are exactly `λ(1 + f)` with `λ ≠ 0` and `det(1 + f) ≠ 0`.
pub fn is_unit(a: &IOp) -> bool {
    unit_parts(a).is_some_and(|(_, f)| !det_one_plus(&f).is_zero())
}

pub fn unit_inverse(a: &IOp) -> Result<IOp> {
    let (lam, f) = unit_parts(a).ok_or(Error::NotAUnit)?;
    let g = inverse_one_plus(&f)?;
    let inv_lam = lam.inv().ok_or(Error::NotAUnit)?;
    Ok(IOp::from_parts(
        [(0, HPoly::constant(inv_lam.clone()))],
        g.scale(&inv_lam),
    ))
}

/// Dimension of `{f ∈ span(e_{ij} : i, j ≤ n) : [a, f] = 0}`.
pub fn centralizer_f_dim(a: &IOp, n: usize) -> usize {
    let unknowns: Vec<(usize, usize)> =
        (0..=n).flat_map(|i| (0..=n).map(move |j| (i, j))).collect();
    let images: Vec<FMatrix> = unknowns
        .iter()
        .map(|&(i, j)| {
            let c = commutator(a, &IOp::e(i, j));
            debug_assert!(c.is_in_f(), "F is an ideal");
            c.fpart
        })
        .collect();
    let mut rows: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for img in &images {
        for (k, _) in img.entries() {
            let next = rows.len();
            rows.entry(k).or_insert(next);
        }
    }
    let mut m = Matrix::zeros(rows.len(), unknowns.len());
    for (col, img) in images.iter().enumerate() {
        for (k, c) in img.entries() {
            m[(rows[&k], col)] = c.clone();
        }
    }
    unknowns.len() - m.rank()
}

/// Prints in the command-line expression syntax, e.g. `(H - 1)*Int + 1 - e(0,0)`.
impl fmt::Display for IOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        for (&i, p) in self.towers.iter().rev() {
            let v = match i {
                0 => None,
                1 => Some("Int".to_string()),
                -1 => Some("D".to_string()),
                i if i > 0 => Some(format!("Int^{i}")),
                i => Some(format!("D^{}", -i)),
            };
            let (neg, p) = match p.leading() {
                Some(c) if c.is_negative() => (true, -p),
                _ => (false, p.clone()),
            };
            let body = match (v, p.coeffs().len()) {
                (None, n)
                    if neg && n > 1 && p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 =>
                {
                    format!("({p})")
                }
                (None, _) => p.to_string(),
                (Some(v), 1) if p.coeff(0).is_one() => v,
                (Some(v), 1) => format!("{}*{v}", p.coeff(0)),
                (Some(v), _) if p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1 => {
                    format!("{p}*{v}")
                }
                (Some(v), _) => format!("({p})*{v}"),
            };
            terms.push((neg, body));
        }
        for ((i, j), c) in self.fpart.entries() {
            let neg = c.is_negative();
            let mag = c.abs();
            let body = if mag.is_one() {
                format!("e({i},{j})")
            } else {
                format!("{mag}*e({i},{j})")
            };
            terms.push((neg, body));
        }
        for (idx, (neg, body)) in terms.iter().enumerate() {
            match (idx, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => f.write_str(body)?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IOp({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h() -> IOp {
        IOp::h()
    }
    fn d() -> IOp {
        IOp::der()
    }
    fn int() -> IOp {
        IOp::int()
    }
    fn e(i: usize, j: usize) -> IOp {
        IOp::e(i, j)
    }
    fn one() -> IOp {
        IOp::one()
    }

    #[test]
    fn generators() {
        assert_eq!(generator(Generator::H).towers().len(), 1);
        assert_eq!(IOp::x(), IOp::tower(1, HPoly::from_ints(&[-1, 1])));
        assert_eq!(generator(Generator::E(0, 0)).fpart(), &FMatrix::unit(0, 0));
        assert!(generator(Generator::E(0, 0)).towers().is_empty());
    }

    #[test]
    fn defining_relations() {
        assert_eq!(&d() * &int(), one());
        assert_eq!(&int() * &d(), &one() - &e(0, 0));
        assert_eq!(&h() * &e(0, 0), e(0, 0));
        assert_eq!(&int().pow(2) * &d().pow(2), &(&one() - &e(0, 0)) - &e(1, 1));
        assert_eq!(commutator(&h(), &int()), int());
        assert_eq!(commutator(&h(), &d()), -&d());
        let p = &one() - &(&int() * &d());
        assert_eq!(&h() * &p, p);
        assert_eq!(&p * &h(), p);
    }

    #[test]
    fn shift_rules() {
        // Left-coefficient forms of ∫H = (H − 1)∫ and ∂H = (H + 1)∂.
        assert_eq!(&int() * &h(), IOp::tower(1, HPoly::from_ints(&[-1, 1])));
        assert_eq!(&d() * &h(), IOp::tower(-1, HPoly::from_ints(&[1, 1])));
        assert_eq!(&int() * &e(2, 3), e(3, 3));
        assert_eq!(&e(2, 3) * &int(), e(2, 2));
        assert_eq!(&d() * &e(2, 3), e(1, 3));
        assert_eq!(&e(2, 3) * &d(), e(2, 4));
        assert!((&d() * &e(0, 3)).is_zero());
        assert!((&e(2, 0) * &int()).is_zero());
        assert_eq!(&e(1, 4) * &h(), e(1, 4).scale(&Scalar::from_int(5)));
        assert_eq!(&h() * &e(1, 4), e(1, 4).scale(&Scalar::from_int(2)));
    }

    #[test]
    fn e_ij_is_int_e00_der() {
        for i in 0..4u32 {
            for j in 0..4u32 {
                let lhs = &(&int().pow(i) * &e(0, 0)) * &d().pow(j);
                assert_eq!(lhs, e(i as usize, j as usize));
                let def = &(&int().pow(i) * &d().pow(j)) - &(&int().pow(i + 1) * &d().pow(j + 1));
                assert_eq!(def, e(i as usize, j as usize));
            }
        }
    }

    #[test]
    fn add_examples() {
        assert!((&h() + &-&h()).is_zero());
        assert_eq!(&d() + &d(), IOp::tower(-1, HPoly::from_ints(&[2])));
        assert_eq!(&IOp::zero() + &e(1, 1), e(1, 1));
        assert_eq!(
            scalar_mul(&Scalar::from_int(3), &d()),
            IOp::tower(-1, HPoly::from_ints(&[3]))
        );
    }

    #[test]
    fn commutator_of_self_vanishes() {
        let a = &(&h() * &d()) + &(&int() + &e(1, 0));
        assert!(commutator(&a, &a).is_zero());
    }

    #[test]
    fn graded_component_examples() {
        let a = &(&h() + &int()) + &e(0, 1);
        assert_eq!(graded_component(&a, 1), int());
        assert_eq!(graded_component(&a, -1), e(0, 1));
        assert_eq!(graded_component(&h(), 0), h());
        assert_eq!(graded_component(&IOp::x(), 1), IOp::x());
    }

    #[test]
    fn pi_examples() {
        assert_eq!(pi(&(&int() * &d())), B1Elem::one());
        assert!(pi(&e(3, 4)).is_zero());
        assert_eq!(pi(&(&h() + &e(0, 0))), B1Elem::h());
    }

    #[test]
    fn k_plus_f_examples() {
        assert!(is_in_k_plus_f(
            &(&IOp::scalar(Scalar::from_int(3)) + &e(1, 2))
        ));
        assert!(!is_in_k_plus_f(&h()));
        assert!(!is_in_k_plus_f(&int()));
        assert!(is_in_k_plus_f(&IOp::zero()));
    }

    #[test]
    fn unit_examples() {
        let two = Scalar::from_int(2);
        let a = (&one() + &e(0, 1)).scale(&two);
        assert!(is_unit(&a));
        let inv = unit_inverse(&a).unwrap();
        assert_eq!(inv, (&one() - &e(0, 1)).scale(&Scalar::new(1, 2)));
        assert_eq!(&a * &inv, one());
        assert_eq!(&inv * &a, one());
        assert!(!is_unit(&int()));
        assert!(!is_unit(&(&one() - &e(0, 0))));
        assert_eq!(unit_inverse(&int()), Err(Error::NotAUnit));
        assert_eq!(unit_inverse(&(&one() - &e(0, 0))), Err(Error::NotAUnit));
    }

    #[test]
    fn centralizer_examples() {
        assert_eq!(centralizer_f_dim(&h(), 3), 4);
        assert_eq!(centralizer_f_dim(&e(0, 0), 1), 2);
        assert_eq!(centralizer_f_dim(&(&d() + &int()), 0), 0);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(IOp::x().to_string(), "(H - 1)*Int");
        assert_eq!((&int() * &d()).to_string(), "1 - e(0,0)");
        assert_eq!(IOp::zero().to_string(), "0");
        assert_eq!((-&d()).to_string(), "-D");
        assert_eq!(
            IOp::tower(0, HPoly::from_ints(&[1, -1])).to_string(),
            "-(H - 1)"
        );
    }
}
