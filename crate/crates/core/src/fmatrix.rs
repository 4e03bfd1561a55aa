//! The ideal `F = ⊕ K e_{ij}` of finitely supported infinite matrices.
//!
//! Coordinates are kept in the `e`-basis, where `e_{ij}e_{kl} = δ_{jk}e_{il}`.
//! The identity of `1 + F` is never stored: operations on `1 + f` work on `f`
//! and add Kronecker deltas on the finite block `0..=deg_F(f)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FMatrix {
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl FMatrix {
    pub fn zero() -> Self {
        FMatrix::default()
    }

    /// The matrix unit `e_{ij}`.
    pub fn unit(i: usize, j: usize) -> Self {
        Self::term(i, j, Scalar::one())
    }

    pub fn term(i: usize, j: usize, c: Scalar) -> Self {
        let mut f = FMatrix::zero();
        f.add_entry(i, j, c);
        f
    }

    pub fn from_entries(entries: impl IntoIterator<Item = ((usize, usize), Scalar)>) -> Self {
        let mut f = FMatrix::zero();
        for ((i, j), c) in entries {
            f.add_entry(i, j, c);
        }
        f
    }

    pub fn add_entry(&mut self, i: usize, j: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.entries.entry((i, j)).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in lexicographic `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Scalar)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_entries(self.entries().map(|(k, v)| (k, v * c)))
    }

    /// Smallest `n` with every index `<= n`; `-1` for zero.
    pub fn deg_f(&self) -> i64 {
        self.entries
            .keys()
            .map(|&(i, j)| i.max(j) as i64)
            .max()
            .unwrap_or(-1)
    }

    /// Dense `n × n` block in `e`-coordinates.
    pub fn block(&self, n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for ((i, j), c) in self.entries() {
            assert!(i < n && j < n, "entry outside block");
            m[(i, j)] = c.clone();
        }
        m
    }

    pub fn from_block(m: &Matrix) -> Self {
        let mut f = FMatrix::zero();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                f.add_entry(i, j, m[(i, j)].clone());
            }
        }
        f
    }

    /// Column `j`, i.e. the coefficients of `f·x^{[j]}`.
    pub fn column(&self, j: usize) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries
            .iter()
            .filter(move |((_, c), _)| *c == j)
            .map(|(&(r, _), v)| (r, v))
    }
}

impl fmt::Debug for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .entries()
            .map(|((i, j), c)| format!("{c}*e({i},{j})"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Add for &FMatrix {
    type Output = FMatrix;
    fn add(self, rhs: &FMatrix) -> FMatrix {
        let mut out = self.clone();
        for ((i, j), c) in rhs.entries() {
            out.add_entry(i, j, c.clone());
        }
        out
    }
}

impl Sub for &FMatrix {
    type Output = FMatrix;
    fn sub(self, rhs: &FMatrix) -> FMatrix {
        let mut out = self.clone();
        for ((i, j), c) in rhs.entries() {
            out.add_entry(i, j, -c);
        }
        out
    }
}

impl Neg for &FMatrix {
    type Output = FMatrix;
    fn neg(self) -> FMatrix {
        self.scale(&-Scalar::one())
    }
}

/// Product in `F`, the bilinear extension of `e_{ij}e_{kl} = δ_{jk}e_{il}`.
pub fn fmul(a: &FMatrix, b: &FMatrix) -> FMatrix {
    let mut rows_of_b: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
    for ((k, l), c) in b.entries() {
        rows_of_b.entry(k).or_default().push((l, c));
    }
    let mut out = FMatrix::zero();
    for ((i, j), x) in a.entries() {
        if let Some(row) = rows_of_b.get(&j) {
            for &(l, y) in row {
                out.add_entry(i, l, x * y);
            }
        }
    }
    out
}

/// `(1 + a)(1 + b) − 1 = a + b + ab`.
pub fn one_plus_mul(a: &FMatrix, b: &FMatrix) -> FMatrix {
    &(a + b) + &fmul(a, b)
}

/// Coordinates in the usual matrix units `E_{ij}`: `e_{ij} = (j!/i!) E_{ij}`.
pub fn e_to_big_e(a: &FMatrix) -> BTreeMap<(usize, usize), Scalar> {
    a.entries()
        .map(|((i, j), c)| ((i, j), c * &(Scalar::factorial(j) / Scalar::factorial(i))))
        .collect()
}

/// Inverse of [`e_to_big_e`].
pub fn big_e_to_e(a: &BTreeMap<(usize, usize), Scalar>) -> FMatrix {
    FMatrix::from_entries(
        a.iter()
            .map(|(&(i, j), c)| ((i, j), c * &(Scalar::factorial(i) / Scalar::factorial(j)))),
    )
}

pub fn deg_f(a: &FMatrix) -> i64 {
    a.deg_f()
}

/// `det(1 + f)` on the block `0..=deg_F(f)`, taken in `E`-coordinates.
pub fn det_one_plus(f: &FMatrix) -> Scalar {
    let n = (f.deg_f() + 1) as usize;
    let mut m = Matrix::identity(n);
    for ((i, j), c) in e_to_big_e(f) {
        m[(i, j)] += c;
    }
    m.determinant()
}

pub fn is_unit_one_plus(f: &FMatrix) -> bool {
    !det_one_plus(f).is_zero()
}

/// The `g` with `(1 + f)(1 + g) = (1 + g)(1 + f) = 1`.
pub fn inverse_one_plus(f: &FMatrix) -> Result<FMatrix> {
    let n = (f.deg_f() + 1) as usize;
    if n == 0 {
        return Ok(FMatrix::zero());
    }
    let mut m = Matrix::identity(n);
    for ((i, j), c) in f.entries() {
        m[(i, j)] += c;
    }
    let inv = m.inverse().ok_or(Error::NotAUnit)?;
    let mut g = FMatrix::from_block(&inv);
    for i in 0..n {
        g.add_entry(i, i, -Scalar::one());
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(i: usize, j: usize) -> FMatrix {
        FMatrix::unit(i, j)
    }

    fn fmat(max: usize) -> impl Strategy<Value = FMatrix> {
        prop::collection::vec(((0..max, 0..max), -3i64..4), 0..8).prop_map(|es| {
            FMatrix::from_entries(es.into_iter().map(|(k, c)| (k, Scalar::from_int(c))))
        })
    }

    #[test]
    fn fmul_examples() {
        assert_eq!(fmul(&e(0, 1), &e(1, 2)), e(0, 2));
        assert!(fmul(&e(0, 1), &e(0, 1)).is_zero());
        let d = &e(0, 0) + &e(1, 1);
        assert_eq!(fmul(&d, &d), d);
    }

    #[test]
    fn basis_change_examples() {
        let conv = e_to_big_e(&e(0, 1));
        assert_eq!(conv[&(0, 1)], Scalar::one());
        assert_eq!(e_to_big_e(&e(1, 2))[&(1, 2)], Scalar::from_int(2));
        assert_eq!(e_to_big_e(&e(2, 0))[&(2, 0)], Scalar::new(1, 2));
    }

    #[test]
    fn deg_f_examples() {
        assert_eq!(e(2, 5).deg_f(), 5);
        assert_eq!(FMatrix::zero().deg_f(), -1);
        assert_eq!((&e(0, 0) + &e(3, 1)).deg_f(), 3);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(det_one_plus(&FMatrix::zero()), Scalar::one());
        assert_eq!(det_one_plus(&-&e(0, 0)), Scalar::zero());
        assert_eq!(det_one_plus(&e(0, 1)), Scalar::one());
        assert!(is_unit_one_plus(&e(0, 1)));
        assert!(!is_unit_one_plus(&-&e(0, 0)));
        assert!(is_unit_one_plus(&FMatrix::zero()));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse_one_plus(&e(0, 1)).unwrap(), -&e(0, 1));
        assert_eq!(inverse_one_plus(&FMatrix::zero()).unwrap(), FMatrix::zero());
        assert_eq!(
            inverse_one_plus(&e(0, 0)).unwrap(),
            FMatrix::term(0, 0, Scalar::new(-1, 2))
        );
        assert_eq!(inverse_one_plus(&-&e(0, 0)), Err(Error::NotAUnit));
    }

    #[test]
    fn e_and_big_e_determinants_agree() {
        // The two coordinate systems are related by a diagonal similarity.
        let f = FMatrix::from_entries([
            ((0, 2), Scalar::from_int(3)),
            ((2, 0), Scalar::from_int(1)),
            ((1, 1), Scalar::from_int(-2)),
        ]);
        let mut m = Matrix::identity(3);
        for ((i, j), c) in f.entries() {
            m[(i, j)] += c;
        }
        assert_eq!(det_one_plus(&f), m.determinant());
    }

    proptest! {
        #[test]
        fn fmul_associative(a in fmat(6), b in fmat(6), c in fmat(6)) {
            prop_assert_eq!(fmul(&fmul(&a, &b), &c), fmul(&a, &fmul(&b, &c)));
        }

        #[test]
        fn fmul_bilinear(a in fmat(5), b in fmat(5), c in fmat(5)) {
            prop_assert_eq!(fmul(&a, &(&b + &c)), &fmul(&a, &b) + &fmul(&a, &c));
            prop_assert_eq!(fmul(&(&a + &b), &c), &fmul(&a, &c) + &fmul(&b, &c));
        }

        #[test]
        fn det_multiplicative(a in fmat(6), b in fmat(6)) {
            prop_assert_eq!(
                det_one_plus(&one_plus_mul(&a, &b)),
                det_one_plus(&a) * det_one_plus(&b)
            );
        }

        #[test]
        fn inverse_iff_unit(f in fmat(5)) {
            match inverse_one_plus(&f) {
                Ok(g) => {
                    prop_assert!(is_unit_one_plus(&f));
                    prop_assert!(one_plus_mul(&f, &g).is_zero());
                    prop_assert!(one_plus_mul(&g, &f).is_zero());
                    prop_assert!(g.deg_f() <= f.deg_f());
                }
                Err(_) => prop_assert!(!is_unit_one_plus(&f)),
            }
        }

        #[test]
        fn basis_change_round_trip(f in fmat(7)) {
            prop_assert_eq!(big_e_to_e(&e_to_big_e(&f)), f);
        }
    }
}
