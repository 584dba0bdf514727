//! The moduli space `Σ = M(w)`, `w = (3, -H, n)`.
//!
//! For `n >= 4`, `NS(Σ) = Z L ⊕ Z κ` with `L^2 = 2` and
//! `κ^2 = -2 t(n-3) / g^2`, `g = gcd(3, n)`. Write `Δ = t(n-3)/g^2`; the
//! boundary rays `sqrt(Δ) L ± κ` of the positive cone are rational exactly
//! when `Δ` is a square, and a class `X L + Y κ` is spherical exactly when
//! `X^2 - Δ Y^2 = -1`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::mukai::{standard_vectors, MukaiContext, MukaiVector};
use crate::pell::{isqrt, negative_pell_minimal, three_mod_four_factor, PellSolution};

fn check_n(n: i64, min: i64) -> Result<()> {
    if n < min {
        return Err(Error::NOutOfRange { n, min });
    }
    Ok(())
}

/// Néron–Severi data of `Σ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NsSigma {
    pub n: i64,
    pub g: i64,
    pub l_square: i64,
    pub kappa_square: i64,
    /// Primitive generator of `w^⊥ ∩ u^⊥` in the Mukai lattice.
    pub kappa_vec: MukaiVector,
}

impl NsSigma {
    /// `Δ = t(n-3)/g^2 = -κ^2 / 2`.
    pub fn delta(&self) -> i64 {
        -self.kappa_square / 2
    }

    /// Determinant of the Gram matrix `diag(2, κ^2)`.
    pub fn discriminant(&self) -> i64 {
        self.l_square * self.kappa_square
    }
}

pub fn ns_sigma(n: i64) -> Result<NsSigma> {
    check_n(n, 4)?;
    let ctx = MukaiContext::new(n)?;
    let t = ctx.t();
    let g = n.gcd(&3);
    let raw = [t, -(2 * n - 3), t * (n - 2)];
    if raw.iter().any(|c| c % g != 0) {
        return Err(Error::Precondition(format!(
            "κ is not integral for n = {n}"
        )));
    }
    let kappa_vec = MukaiVector::new(raw[0] / g, raw[1] / g, raw[2] / g);
    let kappa_square = -2 * t * (n - 3) / (g * g);
    let std = standard_vectors(&ctx);
    if ctx.pairing(&kappa_vec, &std.u) != 0
        || ctx.pairing(&kappa_vec, &std.w) != 0
        || ctx.square(&kappa_vec) != kappa_square
    {
        return Err(Error::Precondition(format!(
            "κ invariants fail for n = {n}"
        )));
    }
    Ok(NsSigma {
        n,
        g,
        l_square: 2,
        kappa_square,
        kappa_vec,
    })
}

pub fn positive_cone_rational(n: i64) -> Result<bool> {
    let ns = ns_sigma(n)?;
    Ok(isqrt(&BigUint::from(ns.delta() as u64)).1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BirStatus {
    Finite,
    Infinite,
    Unknown,
}

impl fmt::Display for BirStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BirStatus::Finite => "finite",
            BirStatus::Infinite => "infinite",
            BirStatus::Unknown => "unknown",
        })
    }
}

/// Finiteness verdict for `Bir(Σ)` with the evidence behind it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BirVerdict {
    pub n: i64,
    pub status: BirStatus,
    /// Minimal solution of `X^2 - Δ Y^2 = -1`, a spherical class `X L + Y κ`.
    pub witness: Option<PellSolution>,
    /// A prime `p = 3 (mod 4)` dividing `Δ`.
    pub obstruction: Option<BigUint>,
    pub delta: i64,
    /// `gcd(3, 2t, n)`, the divisibility of `w`.
    pub w_divisibility: i64,
    pub positive_cone_rational: bool,
}

/// - `n = 7`: finite (rational boundary of the positive cone);
/// - `X^2 - Δ Y^2 = -1` solvable: finite, a spherical class cuts the movable
///   cone strictly inside the positive cone;
/// - `3 | n`: infinite, no spherical class exists and `w` has divisibility 3;
/// - otherwise unknown.
pub fn bir_finiteness(n: i64) -> Result<BirVerdict> {
    let ns = ns_sigma(n)?;
    let delta = ns.delta();
    let t = 4 * n - 3;
    let w_divisibility = 3i64.gcd(&(2 * t)).gcd(&n);
    let rational = isqrt(&BigUint::from(delta as u64)).1;
    let mut verdict = BirVerdict {
        n,
        status: BirStatus::Unknown,
        witness: None,
        obstruction: None,
        delta,
        w_divisibility,
        positive_cone_rational: rational,
    };
    if n == 7 || rational {
        verdict.status = BirStatus::Finite;
        return Ok(verdict);
    }
    let d = BigUint::from(delta as u64);
    verdict.obstruction = three_mod_four_factor(&d, 1 << 20);
    if let Some(sol) = negative_pell_minimal(&d)? {
        verdict.status = BirStatus::Finite;
        verdict.witness = Some(sol);
    } else if n % 3 == 0 {
        verdict.status = BirStatus::Infinite;
    }
    Ok(verdict)
}

/// `h^0(Σ, kL) = C(k^2 + n - 1, n - 2)`.
pub fn h0_sigma(n: i64, k: i64) -> Result<BigUint> {
    check_n(n, 3)?;
    if k < 1 {
        return Err(Error::Precondition(format!("k must be positive, got {k}")));
    }
    Ok(binomial((k * k + n - 1) as u64, (n - 2) as u64))
}

pub(crate) fn binomial(top: u64, bottom: u64) -> BigUint {
    if bottom > top {
        return BigUint::from(0u32);
    }
    let bottom = bottom.min(top - bottom);
    let mut acc = BigUint::one();
    for i in 0..bottom {
        acc = acc * (top - i) / (i + 1);
    }
    acc
}

/// Dimension counts around `|H_n - 2δ|` and the Plücker space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionReport {
    pub n: i64,
    /// `h^0(H_n - 2δ) = (n+1)(n+2)/2`.
    pub h0_full: i64,
    /// `dim |H_n - 2δ| = n(n+3)/2`.
    pub proj_dim: i64,
    /// `dim V^⊥ = n(n-1)/2`.
    pub pluecker_linear_dim: i64,
    /// Ambient projective dimension `(n-2)(n+1)/2` of the Plücker variety.
    pub pluecker_ambient_dim: i64,
    /// `h^0(Σ, L)` when `n >= 3`; equals `pluecker_linear_dim`.
    pub h0_sigma_l: Option<BigUint>,
}

pub fn dimension_report(n: i64) -> Result<DimensionReport> {
    check_n(n, 2)?;
    let h0_full = (n + 1) * (n + 2) / 2;
    let pluecker_linear_dim = h0_full - (2 * n + 1);
    Ok(DimensionReport {
        n,
        h0_full,
        proj_dim: h0_full - 1,
        pluecker_linear_dim,
        pluecker_ambient_dim: pluecker_linear_dim - 1,
        h0_sigma_l: if n >= 3 { Some(h0_sigma(n, 1)?) } else { None },
    })
}
