//! Even integral lattices given by Gram matrices, Eichler transvections, and
//! the period lattice `Ξ = U^3 ⊕ E8(-1)^2 ⊕ Z ℓ` with `ℓ^2 = -2(n-1)`.
//!
//! Vectors are coordinate columns in the lattice basis; a [`LatticeMap`]
//! stores the images of the basis vectors as columns.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Cartan matrix of E8, simple roots in Bourbaki order.
const E8_CARTAN: [[i64; 8]; 8] = [
    [2, 0, -1, 0, 0, 0, 0, 0],
    [0, 2, 0, -1, 0, 0, 0, 0],
    [-1, 0, 2, -1, 0, 0, 0, 0],
    [0, -1, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, 0, 0, -1, 2],
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Summand {
    /// Hyperbolic plane `[[0, 1], [1, 0]]`.
    U,
    /// The negative definite E8 lattice.
    E8Minus,
    /// `<d>`, `d` even and nonzero.
    Rank1(i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerLattice {
    gram: Vec<Vec<i64>>,
}

impl IntegerLattice {
    /// Validates symmetry, evenness and nondegeneracy.
    pub fn from_gram(gram: Vec<Vec<i64>>) -> Result<Self> {
        let rank = gram.len();
        if rank == 0 {
            return Err(Error::EmptyLattice);
        }
        for (i, row) in gram.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    got: row.len(),
                });
            }
            if row[i] % 2 != 0 {
                return Err(Error::OddDegree(row[i]));
            }
            if (0..i).any(|j| row[j] != gram[j][i]) {
                return Err(Error::Precondition("Gram matrix is not symmetric".into()));
            }
        }
        let lattice = Self { gram };
        if lattice.determinant().is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(lattice)
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// The `i`-th basis vector.
    pub fn basis(&self, i: usize) -> LatticeElement {
        let mut coords = vec![0; self.rank()];
        coords[i] = 1;
        LatticeElement { coords }
    }

    pub fn zero(&self) -> LatticeElement {
        LatticeElement {
            coords: vec![0; self.rank()],
        }
    }

    fn check(&self, e: &LatticeElement) -> Result<()> {
        if e.coords.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: e.coords.len(),
            });
        }
        Ok(())
    }

    /// `G x`, i.e. the pairings `(x, e_i)` with every basis vector.
    pub fn pairings(&self, x: &LatticeElement) -> Vec<i64> {
        self.gram
            .iter()
            .map(|row| row.iter().zip(&x.coords).map(|(g, c)| g * c).sum())
            .collect()
    }

    pub fn pair(&self, x: &LatticeElement, y: &LatticeElement) -> i64 {
        self.pairings(x)
            .iter()
            .zip(&y.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        let n = self.rank();
        let mut a: Vec<Vec<BigInt>> = self
            .gram
            .iter()
            .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Columns of `G^{-1}`: coordinates of the dual basis `e_i^*`.
    pub fn dual_basis(&self) -> Vec<Vec<BigRational>> {
        let n = self.rank();
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = self.gram[i]
                    .iter()
                    .map(|&v| BigRational::from_integer(v.into()))
                    .collect();
                row.extend((0..n).map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                }));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .expect("nondegenerate Gram matrix");
            a.swap(col, pivot);
            let inv = a[col][col].recip();
            for v in a[col].iter_mut() {
                *v *= &inv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    let pivot_row = a[col].clone();
                    for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                        *x -= &f * p;
                    }
                }
            }
        }
        // a = [I | G^{-1}]; G^{-1} is symmetric so rows are columns.
        a.into_iter().map(|row| row[n..].to_vec()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeElement {
    pub coords: Vec<i64>,
}

impl LatticeElement {
    pub fn new(coords: Vec<i64>) -> Self {
        Self { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl Add for &LatticeElement {
    type Output = LatticeElement;
    fn add(self, o: Self) -> LatticeElement {
        LatticeElement::new(
            self.coords
                .iter()
                .zip(&o.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &LatticeElement {
    type Output = LatticeElement;
    fn sub(self, o: Self) -> LatticeElement {
        LatticeElement::new(
            self.coords
                .iter()
                .zip(&o.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &LatticeElement {
    type Output = LatticeElement;
    fn neg(self) -> LatticeElement {
        LatticeElement::new(self.coords.iter().map(|a| -a).collect())
    }
}

impl Mul<&LatticeElement> for i64 {
    type Output = LatticeElement;
    fn mul(self, v: &LatticeElement) -> LatticeElement {
        LatticeElement::new(v.coords.iter().map(|a| self * a).collect())
    }
}

/// Linear endomorphism; `columns[j]` is the image of the `j`-th basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMap {
    columns: Vec<Vec<i64>>,
}

impl LatticeMap {
    pub fn identity(rank: usize) -> Self {
        Self {
            columns: (0..rank)
                .map(|j| (0..rank).map(|i| i64::from(i == j)).collect())
                .collect(),
        }
    }

    pub fn from_columns(columns: Vec<Vec<i64>>) -> Self {
        Self { columns }
    }

    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    /// Entry in row `i`, column `j`.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.columns[j][i]
    }

    pub fn apply(&self, x: &LatticeElement) -> LatticeElement {
        let rank = self.rank();
        let mut out = vec![0; rank];
        for (col, &c) in self.columns.iter().zip(&x.coords) {
            if c != 0 {
                for i in 0..rank {
                    out[i] += col[i] * c;
                }
            }
        }
        LatticeElement::new(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LatticeMap) -> LatticeMap {
        LatticeMap {
            columns: other
                .columns
                .iter()
                .map(|c| self.apply(&LatticeElement::new(c.clone())).coords)
                .collect(),
        }
    }

    /// `M^T G M == G`.
    pub fn is_isometry(&self, lattice: &IntegerLattice) -> bool {
        let rank = lattice.rank();
        if self.rank() != rank {
            return false;
        }
        let images: Vec<LatticeElement> = self
            .columns
            .iter()
            .map(|c| LatticeElement::new(c.clone()))
            .collect();
        (0..rank).all(|i| {
            let gi = lattice.pairings(&images[i]);
            (0..rank).all(|j| {
                let v: i64 = gi.iter().zip(&images[j].coords).map(|(a, b)| a * b).sum();
                v == lattice.gram[i][j]
            })
        })
    }
}

/// Block-diagonal lattice from a list of summands.
pub fn build_lattice(summands: &[Summand]) -> Result<IntegerLattice> {
    if summands.is_empty() {
        return Err(Error::EmptyLattice);
    }
    let blocks: Vec<Vec<Vec<i64>>> = summands
        .iter()
        .map(|s| match *s {
            Summand::U => Ok(vec![vec![0, 1], vec![1, 0]]),
            Summand::E8Minus => Ok(E8_CARTAN
                .iter()
                .map(|row| row.iter().map(|v| -v).collect())
                .collect()),
            Summand::Rank1(d) if d % 2 != 0 => Err(Error::OddDegree(d)),
            Summand::Rank1(0) => Err(Error::Degenerate),
            Summand::Rank1(d) => Ok(vec![vec![d]]),
        })
        .collect::<Result<_>>()?;
    let rank = blocks.iter().map(Vec::len).sum();
    let mut gram = vec![vec![0; rank]; rank];
    let mut offset = 0;
    for block in blocks {
        for (i, row) in block.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                gram[offset + i][offset + j] = v;
            }
        }
        offset += block.len();
    }
    IntegerLattice::from_gram(gram)
}

/// Eichler transvection
/// `t(x, y): z ↦ z - (y, z) x + (x, z) y - (y, y)/2 (x, z) x`
/// for isotropic `x`. The result is checked to be an isometry.
pub fn transvection(
    lattice: &IntegerLattice,
    x: &LatticeElement,
    y: &LatticeElement,
) -> Result<LatticeMap> {
    lattice.check(x)?;
    lattice.check(y)?;
    let xx = lattice.pair(x, x);
    if xx != 0 {
        return Err(Error::NotIsotropic(xx));
    }
    // Even lattice: (y, y) is even.
    let half_yy = lattice.pair(y, y) / 2;
    let gx = lattice.pairings(x);
    let gy = lattice.pairings(y);
    let columns = (0..lattice.rank())
        .map(|j| {
            let (xz, yz) = (gx[j], gy[j]);
            (0..lattice.rank())
                .map(|i| {
                    i64::from(i == j) - yz * x.coords[i] + xz * y.coords[i]
                        - half_yy * xz * x.coords[i]
                })
                .collect()
        })
        .collect();
    let map = LatticeMap { columns };
    if !map.is_isometry(lattice) {
        return Err(Error::NotIsometry);
    }
    Ok(map)
}

/// Positive generator of `{(e, x) : x in L}`.
pub fn divisibility(lattice: &IntegerLattice, e: &LatticeElement) -> Result<u64> {
    lattice.check(e)?;
    if e.is_zero() {
        return Err(Error::ZeroVector);
    }
    let g = lattice
        .pairings(e)
        .into_iter()
        .fold(0i64, |acc, v| acc.gcd(&v));
    Ok(g.unsigned_abs())
}

/// Whether `m(e^*) - e^*` is integral for every dual basis vector, i.e.
/// whether `m` induces the identity on `L^* / L`.
pub fn acts_trivially_on_discriminant(lattice: &IntegerLattice, m: &LatticeMap) -> Result<bool> {
    if !m.is_isometry(lattice) {
        return Err(Error::NotIsometry);
    }
    let rank = lattice.rank();
    for dual in lattice.dual_basis() {
        for i in 0..rank {
            let mut image = BigRational::zero();
            for (j, c) in dual.iter().enumerate() {
                if !c.is_zero() {
                    image += c * BigRational::from_integer(m.entry(i, j).into());
                }
            }
            if !(image - &dual[i]).is_integer() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `Ξ(n)` with basis `(u, v, u1, v1, u2, v2, E8(-1), E8(-1), ℓ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodLattice {
    pub n: i64,
    pub lattice: IntegerLattice,
}

impl PeriodLattice {
    pub const U: usize = 0;
    pub const V: usize = 1;
    pub const U1: usize = 2;
    pub const V1: usize = 3;
    pub const ELL: usize = 22;

    pub fn new(n: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::NOutOfRange { n, min: 2 });
        }
        let lattice = build_lattice(&[
            Summand::U,
            Summand::U,
            Summand::U,
            Summand::E8Minus,
            Summand::E8Minus,
            Summand::Rank1(-2 * (n - 1)),
        ])?;
        Ok(Self { n, lattice })
    }

    pub fn t(&self) -> i64 {
        4 * self.n - 3
    }

    /// `a u + b v + c u1 + d v1 + e ℓ`.
    pub fn vector(&self, a: i64, b: i64, c: i64, d: i64, e: i64) -> LatticeElement {
        let mut coords = vec![0; self.lattice.rank()];
        coords[Self::U] = a;
        coords[Self::V] = b;
        coords[Self::U1] = c;
        coords[Self::V1] = d;
        coords[Self::ELL] = e;
        LatticeElement::new(coords)
    }

    /// Image `u + t v - 2ℓ` of `H_n - 2δ` under the marking.
    pub fn polarization(&self) -> LatticeElement {
        self.vector(1, self.t(), 0, 0, -2)
    }

    /// Image `2(n-1)(u + t v) - t ℓ` of `2(n-1) H_n - t δ`, the generator of
    /// the orthogonal complement of `H_n - 2δ` in `NS(S^[n])`.
    pub fn polarization_complement(&self) -> LatticeElement {
        let (n1, t) = (self.n - 1, self.t());
        self.vector(2 * n1, 2 * n1 * t, 0, 0, -t)
    }

    /// `κ = 2(n-1)(u - v) + 4(n-1) v1 - ℓ`.
    pub fn kappa(&self) -> LatticeElement {
        let n1 = self.n - 1;
        self.vector(2 * n1, -2 * n1, 0, 4 * n1, -1)
    }
}

/// `α = t(u1, -v) ∘ t(v1, w) ∘ t(u1, -v)^{-1}` with
/// `w = (u + t v - 2ℓ) - (u + v)`; note `t(u1, -v)^{-1} = t(u1, v)`.
pub fn build_alpha(n: i64) -> Result<(PeriodLattice, LatticeMap)> {
    let xi = PeriodLattice::new(n)?;
    let lat = &xi.lattice;
    let u1 = lat.basis(PeriodLattice::U1);
    let v1 = lat.basis(PeriodLattice::V1);
    let v = lat.basis(PeriodLattice::V);
    let w = &xi.polarization() - &xi.vector(1, 1, 0, 0, 0);
    let outer = transvection(lat, &u1, &-&v)?;
    let inner = transvection(lat, &v1, &w)?;
    let undo = transvection(lat, &u1, &v)?;
    let alpha = outer.compose(&inner).compose(&undo);
    Ok((xi, alpha))
}

/// Outcome of the checks on [`build_alpha`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaReport {
    pub n: i64,
    pub isometry: bool,
    pub polarization_image: LatticeElement,
    pub sends_polarization_to_u_plus_v: bool,
    pub complement_image: LatticeElement,
    pub sends_complement_to_kappa: bool,
    pub discriminant_trivial: bool,
}

impl AlphaReport {
    pub fn all_pass(&self) -> bool {
        self.isometry
            && self.sends_polarization_to_u_plus_v
            && self.sends_complement_to_kappa
            && self.discriminant_trivial
    }
}

pub fn verify_alpha(n: i64) -> Result<AlphaReport> {
    let (xi, alpha) = build_alpha(n)?;
    let lat = &xi.lattice;
    let isometry = alpha.is_isometry(lat);
    let polarization_image = alpha.apply(&xi.polarization());
    let complement_image = alpha.apply(&xi.polarization_complement());
    let discriminant_trivial = isometry && acts_trivially_on_discriminant(lat, &alpha)?;
    Ok(AlphaReport {
        n,
        isometry,
        sends_polarization_to_u_plus_v: polarization_image == xi.vector(1, 1, 0, 0, 0),
        sends_complement_to_kappa: complement_image == xi.kappa(),
        polarization_image,
        complement_image,
        discriminant_trivial,
    })
}
