//! Endomorphisms of `I₁` given by the images of `H`, `∫` and `∂`.
//!
//! An [`Endo`] can only be obtained through [`validate`] (or the constructors
//! built on it), so the defining relations always hold for its images.
//! [`decompose`] turns a validated endomorphism into a torus parameter `ν`
//! and a unit `1 + u ∈ (1 + F)*` with `σ = t_ν ∘ ω_{1+u}`, following the
//! argument that every endomorphism is an automorphism step by step and
//! failing loudly when a step that must hold does not.

use crate::action::{apply, eigenspace, fredholm, krylov_span, TruncationConfig};
use crate::b1::{ad_eigenvalue_on_component, B1Elem};
use crate::error::{Error, Relation, Result};
use crate::fmatrix::{is_unit_one_plus, FMatrix};
use crate::hpoly::HPoly;
use crate::iop::{commutator, pi, unit_inverse, IOp};
use crate::polyx::PolyX;
use crate::scalar::Scalar;

/// A validated endomorphism `σ`, stored as `(σ(H), σ(∫), σ(∂))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endo {
    h: IOp,
    int: IOp,
    der: IOp,
}

impl Endo {
    pub fn identity() -> Self {
        Endo {
            h: IOp::h(),
            int: IOp::int(),
            der: IOp::der(),
        }
    }

    pub fn h_img(&self) -> &IOp {
        &self.h
    }

    pub fn int_img(&self) -> &IOp {
        &self.int
    }

    pub fn der_img(&self) -> &IOp {
        &self.der
    }
}

/// Residual of each defining relation; all zero exactly when the triple
/// defines an endomorphism.
pub fn relation_residuals(h: &IOp, int: &IOp, der: &IOp) -> Vec<(Relation, IOp)> {
    let one = IOp::one();
    let proj = &one - &(int * der);
    Relation::ALL
        .iter()
        .map(|&r| {
            let residual = match r {
                Relation::DerInt => &(der * int) - &one,
                Relation::WeightInt => &commutator(h, int) - int,
                Relation::WeightDer => &commutator(h, der) + der,
                Relation::ProjectorLeft => &(h * &proj) - &proj,
                Relation::ProjectorRight => &(&proj * h) - &proj,
            };
            (r, residual)
        })
        .collect()
}

pub fn validate(h: IOp, int: IOp, der: IOp) -> Result<Endo> {
    for (relation, residual) in relation_residuals(&h, &int, &der) {
        if !residual.is_zero() {
            return Err(Error::RelationViolated {
                relation,
                residual: Box::new(residual),
            });
        }
    }
    Ok(Endo { h, int, der })
}

/// Substitution `a ↦ σ(a)` with power caches for `σ(∫)`, `σ(∂)`, `σ(H)`.
struct Substitution<'a> {
    s: &'a Endo,
    int_pows: Vec<IOp>,
    der_pows: Vec<IOp>,
    h_pows: Vec<IOp>,
    e00: IOp,
}

impl<'a> Substitution<'a> {
    fn new(s: &'a Endo) -> Self {
        Substitution {
            s,
            int_pows: vec![IOp::one()],
            der_pows: vec![IOp::one()],
            h_pows: vec![IOp::one()],
            e00: &IOp::one() - &(&s.int * &s.der),
        }
    }

    fn pow(cache: &mut Vec<IOp>, base: &IOp, n: usize) -> IOp {
        while cache.len() <= n {
            let next = cache.last().unwrap() * base;
            cache.push(next);
        }
        cache[n].clone()
    }

    fn h_poly(&mut self, p: &HPoly) -> IOp {
        let mut out = IOp::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out = &out + &Self::pow(&mut self.h_pows, &self.s.h, k).scale(c);
            }
        }
        out
    }

    fn v(&mut self, i: i64) -> IOp {
        if i >= 0 {
            Self::pow(&mut self.int_pows, &self.s.int, i as usize)
        } else {
            Self::pow(&mut self.der_pows, &self.s.der, (-i) as usize)
        }
    }

    fn apply(&mut self, a: &IOp) -> IOp {
        let mut out = IOp::zero();
        for (&i, b) in a.towers() {
            let term = &self.h_poly(b) * &self.v(i);
            out = &out + &term;
        }
        for ((i, j), c) in a.fpart().entries() {
            // e_{ij} = ∫^i e_{00} ∂^j and σ(e_{00}) = 1 − ∫′∂′
            let left = &self.v(i as i64) * &self.e00;
            let term = &left * &self.v(-(j as i64));
            out = &out + &term.scale(c);
        }
        out
    }
}

/// `σ(a)`.
pub fn apply_endo(s: &Endo, a: &IOp) -> IOp {
    Substitution::new(s).apply(a)
}

/// `t_λ`: `H ↦ H`, `∫ ↦ λ∫`, `∂ ↦ λ^{−1}∂`.
pub fn torus(lam: &Scalar) -> Result<Endo> {
    let inv = lam.inv().ok_or(Error::ZeroScalar)?;
    validate(IOp::h(), IOp::int().scale(lam), IOp::der().scale(&inv))
}

/// `ω_{1+u}`: conjugation `a ↦ (1+u)·a·(1+u)^{−1}`.
pub fn inner(u: &FMatrix) -> Result<Endo> {
    let unit = &IOp::one() + &IOp::from_f(u.clone());
    let inv = unit_inverse(&unit)?;
    let conj = |g: IOp| &(&unit * &g) * &inv;
    validate(conj(IOp::h()), conj(IOp::int()), conj(IOp::der()))
}

/// `s1 ∘ s2`.
pub fn compose(s1: &Endo, s2: &Endo) -> Result<Endo> {
    let mut sub = Substitution::new(s1);
    let h = sub.apply(&s2.h);
    let int = sub.apply(&s2.int);
    let der = sub.apply(&s2.der);
    validate(h, int, der)
}

/// Intermediate data gathered while decomposing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostics {
    /// `π(σ(H)) = λH + μ`.
    pub lambda: Scalar,
    pub mu: Scalar,
    /// `λ = 1/n`.
    pub n: i64,
    /// Degree bound `s` with `σ(∂)`, `σ(∫)`, `σ(H)` acting as `∂`, `∫`, `H`
    /// on every `x^{[i]}`, `i ≥ s`.
    pub s: usize,
    /// Largest degree in the kernel of `σ(∂)`.
    pub kernel_der_deg: i64,
    pub kernel_der: Vec<PolyX>,
}

/// `σ = t_ν ∘ ω_{1+u}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutDecomposition {
    pub nu: Scalar,
    pub u: FMatrix,
    pub diagnostics: Diagnostics,
}

fn violation(step: &'static str, details: impl Into<String>) -> Error {
    Error::TheoremViolation {
        step,
        details: details.into(),
    }
}

/// Reads `ν` from `π(img) = ν·∂^k`.
fn scalar_monomial(b: &B1Elem, k: i64) -> Option<Scalar> {
    if b.components().len() != 1 {
        return None;
    }
    b.component(k)?.as_constant().filter(|c| !c.is_zero())
}

pub fn decompose(s: &Endo) -> Result<AutDecomposition> {
    decompose_with(s, &TruncationConfig::default())
}

pub fn decompose_with(s: &Endo, cfg: &TruncationConfig) -> Result<AutDecomposition> {
    // H′ = λH + μ + h: π(H′) must be a degree-one polynomial in H, the only
    // elements of K[H] with a nonzero ad-eigenvalue on B₁.
    let pi_h = pi(&s.h);
    let alpha = match (pi_h.components().len(), pi_h.component(0)) {
        (1, Some(p)) => p.clone(),
        _ => {
            return Err(violation(
                "weight of H'",
                format!("pi(H') = {pi_h} is not in K[H]"),
            ))
        }
    };
    let lambda = match ad_eigenvalue_on_component(&alpha, 1)? {
        Some(nu) if alpha.degree() == 1 => nu,
        _ => {
            return Err(violation(
                "weight of H'",
                format!("pi(H') = {alpha} is not lambda*H + mu"),
            ))
        }
    };
    let mu = alpha.coeff(0);

    // λ = ±1/n; only the positive branch can occur.
    let pi_int = pi(&s.int);
    let pi_der = pi(&s.der);
    let n_scalar = lambda.inv().expect("nonzero eigenvalue");
    if n_scalar.is_negative() {
        return Err(violation(
            "leading term of int'",
            format!("negative weight branch: pi(H') = {alpha}, pi(int') = {pi_int}, pi(der') = {pi_der}"),
        ));
    }
    let n = n_scalar.to_i64().ok_or_else(|| {
        violation(
            "leading term of int'",
            format!("1/lambda = {n_scalar} is not an integer"),
        )
    })?;
    let nu = scalar_monomial(&pi_int, -n).ok_or_else(|| {
        violation(
            "leading term of int'",
            format!("pi(int') = {pi_int} is not nu*D^-{n}"),
        )
    })?;
    let nu_inv = nu.inv().expect("nonzero");
    if scalar_monomial(&pi_der, n) != Some(nu_inv.clone()) {
        return Err(violation(
            "leading term of int'",
            format!("pi(der') = {pi_der} is not {nu_inv}*D^{n}"),
        ));
    }

    // dim ker(∂′) = ind(∂′) = ind(ν^{-1}∂^n) = n.
    let fred = fredholm(&s.der, cfg)?;
    if fred.index != n || fred.cokernel_dim != 0 {
        return Err(violation(
            "index of der'",
            format!(
                "ind(der') = {}, coker = {}, expected index {n}",
                fred.index, fred.cokernel_dim
            ),
        ));
    }
    if n != 1 {
        return Err(violation("n = 1", format!("n = {n}")));
    }
    if !mu.is_zero() {
        return Err(violation("mu = 0", format!("mu = {mu}")));
    }

    // Normalize away the torus part.
    let s1 = compose(&torus(&nu_inv)?, s)?;
    let kernel = fredholm(&s1.der, cfg)?.kernel;
    let d = kernel.iter().map(PolyX::degree).max().unwrap_or(-1);
    let bound = [
        1,
        d,
        s1.h.fpart().deg_f(),
        s1.int.fpart().deg_f(),
        s1.der.fpart().deg_f(),
    ]
    .into_iter()
    .max()
    .unwrap();
    let sb = (bound + 1) as usize;

    // ∂′K[∂′]·ker(H′ − (s + 2)) must be all of K[x]_{≤s}.
    let top = PolyX::basis(sb + 1);
    let eig = eigenspace(&s1.h, &Scalar::from_int(sb as i64 + 2), sb + 1);
    if eig != vec![top.clone()] {
        return Err(violation(
            "basis reconstruction",
            format!("eigenspace of H' at {} is {eig:?}", sb + 2),
        ));
    }
    let span = krylov_span(&s1.der, &eig, sb + 2).map_or(0, |b| b.len());
    if span != sb + 1 {
        return Err(violation(
            "basis reconstruction",
            format!("dim der'K[der'] * eigenspace = {span}, expected {}", sb + 1),
        ));
    }

    // x′^{[i]} = ∂′^{s+1−i}·x^{[s+1]}; the unit sends x^{[i]} to x′^{[i]}.
    let mut u = FMatrix::zero();
    let mut cur = top;
    for i in (0..=sb).rev() {
        cur = apply(&s1.der, &cur);
        let diff = &cur - &PolyX::basis(i);
        for (r, c) in diff.terms() {
            u.add_entry(r, i, c.clone());
        }
    }
    if !is_unit_one_plus(&u) {
        return Err(Error::ReconstructionMismatch {
            detail: format!("det(1 + u) = 0 for u = {u:?}"),
        });
    }
    let rebuilt = compose(&torus(&nu)?, &inner(&u)?)?;
    for (name, got, want) in [
        ("H", &rebuilt.h, &s.h),
        ("int", &rebuilt.int, &s.int),
        ("der", &rebuilt.der, &s.der),
    ] {
        if got != want {
            return Err(Error::ReconstructionMismatch {
                detail: format!("generator {name}: rebuilt {got}, expected {want}"),
            });
        }
    }

    Ok(AutDecomposition {
        nu,
        u,
        diagnostics: Diagnostics {
            lambda,
            mu,
            n,
            s: sb,
            kernel_der_deg: d,
            kernel_der: kernel,
        },
    })
}
