//! Exact arithmetic in the algebra `I₁ = K⟨H, ∂, ∫⟩` of polynomial
//! integro-differential operators over `K = ℚ`.
//!
//! * [`scalar`], [`hpoly`], [`polyx`]: exact scalars, `K[H]`, and `K[x]` in the
//!   divided-power basis.
//! * [`fmatrix`]: the ideal `F` of finitely supported matrices and the
//!   determinant on `1 + F`.
//! * [`iop`]: canonical forms and multiplication in `I₁`.
//! * [`b1`]: the skew-Laurent quotient `B₁ = I₁/F`.
//! * [`action`]: the action on `K[x]`, kernels, cokernels and indices.
//! * [`endo`]: endomorphisms, torus and inner automorphisms, and the
//!   decomposition of an endomorphism as `t_ν ∘ ω_u`.
//!
//! ```
//! use intdiff::{IOp, action::index, endo::{compose, decompose, inner, torus}};
//! use intdiff::{FMatrix, Scalar};
//!
//! let p = &IOp::int() * &IOp::der();
//! assert_eq!(p, &IOp::one() - &IOp::e(0, 0));
//! assert_eq!(index(&IOp::der().pow(3)).unwrap(), 3);
//!
//! let u = FMatrix::term(1, 0, Scalar::from_int(2));
//! let s = compose(&torus(&Scalar::new(5, 3)).unwrap(), &inner(&u).unwrap()).unwrap();
//! let d = decompose(&s).unwrap();
//! assert_eq!((d.nu, d.u), (Scalar::new(5, 3), u));
//! ```

pub mod action;
pub mod b1;
pub mod endo;
pub mod error;
pub mod fmatrix;
pub mod hpoly;
pub mod iop;
pub mod linalg;
pub mod polyx;
pub mod sample;
pub mod scalar;

pub use b1::B1Elem;
pub use endo::{AutDecomposition, Endo};
pub use error::{Error, Relation, Result};
pub use fmatrix::FMatrix;
pub use hpoly::HPoly;
pub use iop::IOp;
pub use polyx::PolyX;
pub use scalar::Scalar;
