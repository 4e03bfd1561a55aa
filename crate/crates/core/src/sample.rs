//! Seeded random elements for fuzzing and property checks.

use rand::Rng;

use crate::fmatrix::{is_unit_one_plus, FMatrix};
use crate::hpoly::HPoly;
use crate::iop::IOp;
use crate::scalar::Scalar;

/// Small rational, numerator in `-3..=3`, denominator in `1..=2`.
pub fn small_scalar<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    Scalar::new(rng.gen_range(-3..=3), rng.gen_range(1..=2))
}

pub fn nonzero_scalar<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    loop {
        let c = small_scalar(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn hpoly<R: Rng + ?Sized>(rng: &mut R, max_deg: usize) -> HPoly {
    let deg = rng.gen_range(0..=max_deg);
    HPoly::from_coeffs((0..=deg).map(|_| small_scalar(rng)).collect())
}

/// Up to `max_entries` random entries on the block `0..block`.
pub fn fmatrix<R: Rng + ?Sized>(rng: &mut R, block: usize, max_entries: usize) -> FMatrix {
    if block == 0 {
        return FMatrix::zero();
    }
    let count = rng.gen_range(0..=max_entries);
    FMatrix::from_entries((0..count).map(|_| {
        let i = rng.gen_range(0..block);
        let j = rng.gen_range(0..block);
        ((i, j), small_scalar(rng))
    }))
}

/// Random element with towers at indices `|i| ≤ max_tower`, coefficients of
/// degree `≤ max_deg` and F-part on the block `0..block`.
pub fn iop<R: Rng + ?Sized>(rng: &mut R, max_tower: i64, max_deg: usize, block: usize) -> IOp {
    let towers = rng.gen_range(0..=3);
    let parts = (0..towers).map(|_| (rng.gen_range(-max_tower..=max_tower), hpoly(rng, max_deg)));
    let parts: Vec<_> = parts.collect();
    IOp::from_parts(parts, fmatrix(rng, block, 4))
}

/// Random `u` on the block `0..block` with `1 + u` invertible.
pub fn unit<R: Rng + ?Sized>(rng: &mut R, block: usize) -> FMatrix {
    loop {
        let u = fmatrix(rng, block, block * block);
        if is_unit_one_plus(&u) {
            return u;
        }
    }
}
