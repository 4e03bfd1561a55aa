//! The action of `I₁` on `K[x]` and the Fredholm data it carries.
//!
//! In the divided-power basis `∂·x^{[s]} = x^{[s−1]}`, `∫·x^{[s]} = x^{[s+1]}`,
//! `H·x^{[s]} = (s+1)x^{[s]}` and `e_{ij}·x^{[s]} = δ_{js}x^{[i]}`, so every
//! element acts by a banded matrix.
//!
//! Kernels and cokernels are read off finite truncations. Let `hi` be the top
//! tower index of `a` and `b` its coefficient. Once `s` is past `deg_F(a)`,
//! past `−hi` and past every integer root of `b(s + hi + 1)`, the column
//! `a·x^{[s]}` has degree exactly `s + hi`. From that threshold on no kernel
//! vector can live and every new output degree is hit, so a truncation at or
//! beyond it gives exact answers. The threshold is computed from a Cauchy
//! root bound and serves as the stabilization certificate.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::iop::IOp;
use crate::linalg::Matrix;
use crate::polyx::PolyX;
use crate::scalar::Scalar;

/// Default truncation cap, as a multiple of the operator bandwidth.
pub const DEFAULT_CAP_MULTIPLIER: usize = 512;

/// `a·p`.
pub fn apply(a: &IOp, p: &PolyX) -> PolyX {
    let mut out = PolyX::zero();
    for (s, c) in p.terms() {
        apply_to_basis_into(a, s, c, &mut out);
    }
    out
}

/// Adds `c·(a·x^{[s]})` to `out`.
fn apply_to_basis_into(a: &IOp, s: usize, c: &Scalar, out: &mut PolyX) {
    for (&i, b) in a.towers() {
        let r = s as i64 + i;
        if r >= 0 {
            out.add_term(r as usize, c * &b.eval_int(r + 1));
        }
    }
    for (r, v) in a.fpart().column(s) {
        out.add_term(r, c * v);
    }
}

/// Matrix of `a` on `span{x^{[0]}, …, x^{[N]}}`, with every output row that
/// can be nonzero.
#[derive(Clone, Debug)]
pub struct TruncatedAction {
    pub op: IOp,
    pub in_degree: usize,
    pub matrix: Matrix,
}

pub fn truncated_matrix(a: &IOp, n: usize) -> TruncatedAction {
    let raise = a.tower_range().map_or(0, |(_, hi)| hi.max(0) as usize);
    let rows = (n + raise).max(a.fpart().deg_f().max(0) as usize) + 1;
    let mut m = Matrix::zeros(rows, n + 1);
    for s in 0..=n {
        let mut col = PolyX::zero();
        apply_to_basis_into(a, s, &Scalar::one(), &mut col);
        for (r, v) in col.terms() {
            m[(r, s)] = v.clone();
        }
    }
    TruncatedAction {
        op: a.clone(),
        in_degree: n,
        matrix: m,
    }
}

/// Truncation policy for kernel and index computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationConfig {
    /// The truncation degree may grow up to `cap_multiplier × bandwidth`.
    pub cap_multiplier: usize,
}

impl Default for TruncationConfig {
    fn default() -> Self {
        TruncationConfig {
            cap_multiplier: DEFAULT_CAP_MULTIPLIER,
        }
    }
}

/// Kernel, cokernel and index of `a` acting on `K[x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FredholmData {
    pub kernel: Vec<PolyX>,
    pub cokernel_dim: usize,
    pub index: i64,
    /// Truncation degree at which the answer was certified.
    pub truncation: usize,
}

/// Smallest `s` from which `a·x^{[t]}` has degree exactly `t + hi` for all
/// `t ≥ s` (see the module docs).
pub fn stabilization_threshold(a: &IOp) -> Result<usize> {
    let (_, hi) = a.tower_range().ok_or(Error::ElementOfF)?;
    let lead = &a.towers()[&hi];
    let df = a.fpart().deg_f();
    // Cauchy: every root z of lead satisfies |z| <= 1 + max |c_k / c_n|.
    let root_bound = match lead.leading() {
        Some(top) if lead.degree() > 0 => {
            let m = lead.coeffs()[..lead.coeffs().len() - 1]
                .iter()
                .map(|c| (c / top).abs())
                .max()
                .unwrap_or_else(Scalar::zero);
            (Scalar::one() + m)
                .ceil()
                .to_i64()
                .expect("root bound fits in i64")
        }
        _ => 0,
    };
    let s0 = [df + 1 - hi, -hi, root_bound - hi, 0]
        .into_iter()
        .max()
        .unwrap();
    Ok(s0 as usize)
}

fn check_operator(a: &IOp) -> Result<()> {
    if a.is_zero() {
        Err(Error::ZeroOperator)
    } else if a.is_in_f() {
        Err(Error::ElementOfF)
    } else {
        Ok(())
    }
}

/// Kernel basis and cokernel dimension at truncation degree `n`.
fn truncated_fredholm(a: &IOp, n: usize, hi: i64) -> (Vec<Vec<Scalar>>, usize) {
    let t = truncated_matrix(a, n);
    let m = &t.matrix;
    let kernel = m.nullspace();
    // Outputs up to degree r = n + hi; rows above r must vanish on the
    // combinations whose images are counted.
    let r = n as i64 + hi;
    let top = (r + 1).clamp(0, m.rows() as i64) as usize;
    let bottom_rank = m.row_slice(top..m.rows()).rank();
    let image_dim = (n + 1) - bottom_rank - kernel.len();
    let coker = ((r + 1).max(0) as usize).saturating_sub(image_dim);
    (kernel, coker)
}

/// Kernel, cokernel and index of `a` on `K[x]`, from certified truncations.
///
/// The truncation degree starts at `4·bw` and doubles until it reaches
/// [`stabilization_threshold`]; the answer is then confirmed once more at the
/// next doubling when that stays under the cap.
pub fn fredholm(a: &IOp, cfg: &TruncationConfig) -> Result<FredholmData> {
    check_operator(a)?;
    let (_, hi) = a.tower_range().expect("checked above");
    let bw = a.bandwidth();
    let cap = cfg.cap_multiplier * bw;
    let needed = stabilization_threshold(a)?;
    if needed > cap {
        return Err(Error::NotStabilized { cap, needed });
    }
    let mut n = 4 * bw;
    while n < needed {
        n *= 2;
    }
    let n = n.min(cap);
    let (kernel, coker) = truncated_fredholm(a, n, hi);
    let confirm = (2 * n).min(cap);
    if confirm > n {
        let (k2, c2) = truncated_fredholm(a, confirm, hi);
        if (k2.len(), c2) != (kernel.len(), coker) {
            return Err(Error::NotStabilized { cap, needed });
        }
    }
    Ok(FredholmData {
        kernel: kernel.iter().map(|v| PolyX::from_dense(v)).collect(),
        cokernel_dim: coker,
        index: kernel.len() as i64 - coker as i64,
        truncation: n,
    })
}

/// Basis of `{p ∈ K[x] : a·p = 0}`.
pub fn kernel_basis(a: &IOp) -> Result<Vec<PolyX>> {
    fredholm(a, &TruncationConfig::default()).map(|d| d.kernel)
}

/// `dim ker − dim coker` of `a` on `K[x]`.
pub fn index(a: &IOp) -> Result<i64> {
    fredholm(a, &TruncationConfig::default()).map(|d| d.index)
}

/// Basis of `{p : deg p ≤ n, a·p = λp}`.
pub fn eigenspace(a: &IOp, lam: &Scalar, n: usize) -> Vec<PolyX> {
    let mut m = truncated_matrix(a, n).matrix;
    for s in 0..=n {
        m[(s, s)] -= lam;
    }
    m.nullspace().iter().map(|v| PolyX::from_dense(v)).collect()
}

/// Echelon basis of the span of `vectors`.
pub fn span_basis(vectors: &[PolyX]) -> Vec<PolyX> {
    let len = vectors
        .iter()
        .map(|p| p.degree() + 1)
        .max()
        .unwrap_or(0)
        .max(0) as usize;
    if len == 0 {
        return Vec::new();
    }
    let rows: Vec<Vec<Scalar>> = vectors.iter().map(|p| p.to_dense(len)).collect();
    let (r, pivots) = Matrix::from_rows(rows).rref();
    (0..pivots.len())
        .map(|i| PolyX::from_dense(r.row(i)))
        .collect()
}

/// Basis of `op·K[op]·seeds = span{opᵏ·p : k ≥ 1, p ∈ seeds}`, or `None` if it
/// is still growing after `max_rounds` applications.
pub fn krylov_span(op: &IOp, seeds: &[PolyX], max_rounds: usize) -> Option<Vec<PolyX>> {
    let mut frontier: Vec<PolyX> = seeds.to_vec();
    let mut basis: Vec<PolyX> = Vec::new();
    for _ in 0..max_rounds {
        frontier = frontier.iter().map(|p| apply(op, p)).collect();
        let mut all = basis.clone();
        all.extend(frontier.iter().cloned());
        let next = span_basis(&all);
        if next.len() == basis.len() {
            return Some(basis);
        }
        basis = next;
    }
    None
}
