//! Closed-form counts attached to the Mukai bundle `U_2^∨` and the class
//! `H_n - 2δ`.

use num_bigint::{BigInt, BigUint};

use crate::error::{Error, Result};
use crate::hilbcone::{bb_form, DivisorClass};
use crate::lattice::{divisibility, PeriodLattice};
use crate::sigma::binomial;

fn check_n(n: i64) -> Result<()> {
    if n < 2 {
        return Err(Error::NOutOfRange { n, min: 2 });
    }
    Ok(())
}

/// Length of the zero-locus of a section of `U_2^∨`:
/// `c_1^2 / 2 - (χ(U_2^∨) - 2χ(O_S)) = (8n - 6)/2 - (2n - 3)`.
pub fn zero_locus_length(n: i64) -> Result<i64> {
    check_n(n)?;
    Ok((8 * n - 6) / 2 - (2 * n - 3))
}

/// `dim G(2, 2n+1) = 2(2n - 1)`.
pub fn grassmannian_dim(n: i64) -> Result<i64> {
    check_n(n)?;
    Ok(2 * (2 * n - 1))
}

/// Plücker degree of `G(2, 2n+1)`, the Catalan number
/// `binom(4n - 2, 2n - 1) / (2n)`.
pub fn grassmannian_degree(n: i64) -> Result<BigUint> {
    check_n(n)?;
    let n = n as u64;
    Ok(binomial(4 * n - 2, 2 * n - 1) / (2 * n))
}

/// Degree and divisibility of `H_n - 2δ`, both in `NS(S^[n])` and after the
/// marking `H_n ↦ u + t v`, `δ ↦ ℓ` into the period lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizationCheck {
    pub n: i64,
    pub bb_degree: BigInt,
    pub divisibility: u64,
    /// Degree and divisibility of `u + v`, the class it is moved to.
    pub target_degree: i64,
    pub target_divisibility: u64,
}

impl PolarizationCheck {
    pub fn holds(&self) -> bool {
        self.bb_degree == BigInt::from(2)
            && self.divisibility == 1
            && self.target_degree == 2
            && self.target_divisibility == 1
    }
}

pub fn polarization_check(n: i64) -> Result<PolarizationCheck> {
    check_n(n)?;
    let h = DivisorClass::new(1, -2);
    let xi = PeriodLattice::new(n)?;
    let image = xi.polarization();
    let target = xi.vector(1, 1, 0, 0, 0);
    if xi.lattice.pair(&image, &image) != 2 {
        return Err(Error::Precondition(
            "marking does not preserve the degree".into(),
        ));
    }
    Ok(PolarizationCheck {
        n,
        bb_degree: bb_form(n, &h, &h),
        divisibility: divisibility(&xi.lattice, &image)?,
        target_degree: xi.lattice.pair(&target, &target),
        target_divisibility: divisibility(&xi.lattice, &target)?,
    })
}
