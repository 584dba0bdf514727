//! The algebraic Mukai lattice of a K3 surface `S` with `NS(S) = Z H`,
//! `H^2 = 2t`, `t = 4n - 3`.
//!
//! A class is written `(r, c, s)` for `(r, c H, s)`. The pairing is
//! `((r, c, s), (r', c', s')) = 2t c c' - r s' - r' s`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MukaiContext {
    n: i64,
    t: i64,
}

impl MukaiContext {
    pub fn new(n: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::NOutOfRange { n, min: 2 });
        }
        Ok(Self { n, t: 4 * n - 3 })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    pub fn pairing(&self, a: &MukaiVector, b: &MukaiVector) -> i64 {
        mukai_pairing(self, a, b)
    }

    pub fn square(&self, a: &MukaiVector) -> i64 {
        mukai_pairing(self, a, a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MukaiVector {
    pub r: i64,
    pub c: i64,
    pub s: i64,
}

impl MukaiVector {
    pub const fn new(r: i64, c: i64, s: i64) -> Self {
        Self { r, c, s }
    }

    pub fn is_zero(&self) -> bool {
        self.r == 0 && self.c == 0 && self.s == 0
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}H, {})", self.r, self.c, self.s)
    }
}

impl Add for MukaiVector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.r + o.r, self.c + o.c, self.s + o.s)
    }
}

impl Sub for MukaiVector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.r - o.r, self.c - o.c, self.s - o.s)
    }
}

impl Neg for MukaiVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.r, -self.c, -self.s)
    }
}

impl Mul<MukaiVector> for i64 {
    type Output = MukaiVector;
    fn mul(self, v: MukaiVector) -> MukaiVector {
        MukaiVector::new(self * v.r, self * v.c, self * v.s)
    }
}

pub fn mukai_pairing(ctx: &MukaiContext, a: &MukaiVector, b: &MukaiVector) -> i64 {
    2 * ctx.t * a.c * b.c - a.r * b.s - b.r * a.s
}

/// The classes `v`, `a`, `w = v - a` and `u` spanning the lattice of the flop
/// and its orthogonal complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StandardVectors {
    /// `(1, 0, -(n-1))`, the Mukai vector of an ideal sheaf of `n` points.
    pub v: MukaiVector,
    /// `(-2, 1, -(2n-1))`, a spherical class with `(v, a) = 1`.
    pub a: MukaiVector,
    /// `v - a = (3, -1, n)`.
    pub w: MukaiVector,
    /// `(2, -1, 2(n-1))`, orthogonal to `v` and `a`.
    pub u: MukaiVector,
}

pub fn standard_vectors(ctx: &MukaiContext) -> StandardVectors {
    let n = ctx.n;
    let v = MukaiVector::new(1, 0, -(n - 1));
    let a = MukaiVector::new(-2, 1, -(2 * n - 1));
    StandardVectors {
        v,
        a,
        w: v - a,
        u: MukaiVector::new(2, -1, 2 * (n - 1)),
    }
}

/// `v^(i) = v - (i+1) a = (2i+3, -(i+1), (2i+1)n - i)`.
pub fn v_i(ctx: &MukaiContext, i: i64) -> Result<MukaiVector> {
    if i < -1 {
        return Err(Error::Precondition(format!("v^(i) needs i >= -1, got {i}")));
    }
    let std = standard_vectors(ctx);
    Ok(std.v - (i + 1) * std.a)
}

/// Largest `i >= 0` with `n >= (i+1)(i+2)`.
pub fn r_max(ctx: &MukaiContext) -> i64 {
    let mut i = 0;
    while (i + 2) * (i + 3) <= ctx.n {
        i += 1;
    }
    i
}

/// Spherical classes `s = x v + y a` with `|x|, |y| <= bound` and
/// `0 < (s, v^(i)) <= (v^(i))^2 / 2`, sorted by `(x, y)`.
pub fn spherical_search(ctx: &MukaiContext, i: i64, bound: i64) -> Result<Vec<(i64, i64)>> {
    let target = v_i(ctx, i)?;
    let target_sq = ctx.square(&target);
    if target_sq <= 0 {
        return Err(Error::Precondition(format!(
            "spherical search needs (v^({i}))^2 > 0, got {target_sq}"
        )));
    }
    let std = standard_vectors(ctx);
    let mut out = Vec::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            // s^2 = -2 is the hyperbola (n-1)x^2 + xy - y^2 = -1.
            if (ctx.n - 1) * x * x + x * y - y * y != -1 {
                continue;
            }
            let s = x * std.v + y * std.a;
            let p = ctx.pairing(&s, &target);
            if p > 0 && 2 * p <= target_sq {
                out.push((x, y));
            }
        }
    }
    Ok(out)
}

/// Splittings `v^(i) = w1 + w2` with `w1 = x v + y a`, `|x|, |y| <= bound`,
/// both summands positive: nonzero, square `>= 0`, positive pairing with
/// `v^(i)`.
pub fn positive_decomposition_search(
    ctx: &MukaiContext,
    i: i64,
    bound: i64,
) -> Result<Vec<(MukaiVector, MukaiVector)>> {
    let rmax = r_max(ctx);
    if !(0..=rmax).contains(&i) {
        return Err(Error::Precondition(format!(
            "positive decomposition search needs 0 <= i <= {rmax}, got {i}"
        )));
    }
    let target = v_i(ctx, i)?;
    let std = standard_vectors(ctx);
    let positive =
        |w: &MukaiVector| !w.is_zero() && ctx.square(w) >= 0 && ctx.pairing(w, &target) > 0;
    let mut out = Vec::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            let w1 = x * std.v + y * std.a;
            let w2 = target - w1;
            if positive(&w1) && positive(&w2) {
                out.push((w1, w2));
            }
        }
    }
    Ok(out)
}

/// One stratum `k` of the indeterminacy locus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StrataRow {
    pub k: i64,
    pub vector: MukaiVector,
    /// `(v^(k))^2 + 2`, the dimension of the moduli space of `v^(k)`.
    pub moduli_dim: i64,
    /// Codimension `2(k+1)(k+2)` of the closed stratum in the base of the
    /// contraction.
    pub codim_in_n: i64,
    /// Dimension `(k+1)(k+2)` of the fibers over the open stratum.
    pub fiber_dim: i64,
    /// `2n - (k+1)(k+2)`.
    pub dim_jk: i64,
    /// Euler characteristic `hom - ext^1 = 2k + 3`.
    pub hom_chi: i64,
}

pub fn strata_table(ctx: &MukaiContext) -> Vec<StrataRow> {
    (0..=r_max(ctx))
        .map(|k| {
            let vector = v_i(ctx, k).expect("k >= 0");
            let moduli_dim = ctx.square(&vector) + 2;
            let fiber_dim = (k + 1) * (k + 2);
            StrataRow {
                k,
                vector,
                moduli_dim,
                codim_in_n: 2 * fiber_dim,
                fiber_dim,
                dim_jk: moduli_dim + fiber_dim,
                hom_chi: 2 * k + 3,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(n: i64) -> MukaiContext {
        MukaiContext::new(n).unwrap()
    }

    #[test]
    fn pairing_examples() {
        let c = ctx(3);
        let s = standard_vectors(&c);
        assert_eq!(c.square(&s.v), 4);
        for n in [2, 5, 17] {
            let c = ctx(n);
            let s = standard_vectors(&c);
            assert_eq!(c.square(&s.a), -2);
            assert_eq!(c.pairing(&s.v, &s.a), 1);
        }
    }

    #[test]
    fn standard_vector_identities() {
        let c = ctx(4);
        let s = standard_vectors(&c);
        assert_eq!(s.w, MukaiVector::new(3, -1, 4));
        assert_eq!(c.square(&s.w), 2);
        for n in 2..=500 {
            let c = ctx(n);
            let s = standard_vectors(&c);
            assert_eq!(c.square(&s.v), 2 * n - 2);
            assert_eq!(c.square(&s.w), 2 * n - 6);
            assert_eq!(c.pairing(&s.a, &s.w), 3);
            assert_eq!(c.square(&s.u), 2);
            assert_eq!(c.pairing(&s.u, &s.w), 0);
        }
    }

    #[test]
    fn v_i_examples() {
        let c = ctx(6);
        let s = standard_vectors(&c);
        assert_eq!(v_i(&c, -1).unwrap(), s.v);
        assert_eq!(v_i(&c, 0).unwrap(), s.w);
        // v - 2a = (1, 0, -5) - 2 (-2, 1, -11)
        let v1 = v_i(&c, 1).unwrap();
        assert_eq!(v1, MukaiVector::new(5, -2, 17));
        assert_eq!(c.square(&v1), -2);
        assert!(v_i(&c, -2).is_err());
    }

    #[test]
    fn v_i_closed_form_and_square() {
        for n in 2..=200 {
            let c = ctx(n);
            for i in -1..=r_max(&c) + 2 {
                let v = v_i(&c, i).unwrap();
                assert_eq!(
                    v,
                    MukaiVector::new(2 * i + 3, -(i + 1), (2 * i + 1) * n - i)
                );
                assert_eq!(c.square(&v) + 2, 2 * n - 2 * (i + 1) * (i + 2));
            }
        }
    }

    #[test]
    fn r_max_examples() {
        assert_eq!(r_max(&ctx(2)), 0);
        assert_eq!(r_max(&ctx(5)), 0);
        assert_eq!(r_max(&ctx(6)), 1);
        assert_eq!(r_max(&ctx(11)), 1);
        assert_eq!(r_max(&ctx(12)), 2);
        assert!(MukaiContext::new(1).is_err());
    }

    #[test]
    fn spherical_examples() {
        assert_eq!(spherical_search(&ctx(7), 0, 50).unwrap(), vec![(0, 1)]);
        assert_eq!(
            spherical_search(&ctx(6), 0, 50).unwrap(),
            vec![(0, 1), (1, -2)]
        );
        assert_eq!(
            spherical_search(&ctx(12), 1, 50).unwrap(),
            vec![(0, 1), (1, -3)]
        );
        // (v^(1))^2 = 0 for n = 7
        assert!(spherical_search(&ctx(7), 1, 50).is_err());
    }

    #[test]
    fn positive_examples() {
        assert!(positive_decomposition_search(&ctx(5), 0, 20)
            .unwrap()
            .is_empty());
        assert!(positive_decomposition_search(&ctx(12), 2, 48)
            .unwrap()
            .is_empty());
        assert!(positive_decomposition_search(&ctx(3), 0, 12)
            .unwrap()
            .is_empty());
        assert!(positive_decomposition_search(&ctx(5), 1, 20).is_err());
    }

    #[test]
    fn strata_examples() {
        let rows = strata_table(&ctx(6));
        assert_eq!(rows.len(), 2);
        assert_eq!(
            (rows[0].codim_in_n, rows[0].fiber_dim, rows[0].dim_jk),
            (4, 2, 10)
        );
        assert_eq!(
            (rows[1].codim_in_n, rows[1].fiber_dim, rows[1].dim_jk),
            (12, 6, 6)
        );
        let rows = strata_table(&ctx(3));
        assert_eq!(rows.len(), 1);
        assert_eq!(
            (rows[0].codim_in_n, rows[0].fiber_dim, rows[0].dim_jk),
            (4, 2, 4)
        );
        let rows = strata_table(&ctx(12));
        assert_eq!(rows[2].moduli_dim, 0);
        for n in 2..=300 {
            for row in strata_table(&ctx(n)) {
                assert_eq!(row.moduli_dim, 2 * n - 2 * (row.k + 1) * (row.k + 2));
                assert_eq!(row.dim_jk, 2 * n - (row.k + 1) * (row.k + 2));
                assert_eq!(row.hom_chi, row.vector.r);
                assert!(row.moduli_dim >= 0);
            }
        }
    }

    fn arb_vec() -> impl Strategy<Value = MukaiVector> {
        (-1000i64..1000, -1000i64..1000, -1000i64..1000)
            .prop_map(|(r, c, s)| MukaiVector::new(r, c, s))
    }

    proptest! {
        #[test]
        fn pairing_symmetric_bilinear(n in 2i64..200, x in arb_vec(), y in arb_vec(), z in arb_vec(), k in -50i64..50) {
            let c = ctx(n);
            prop_assert_eq!(c.pairing(&x, &y), c.pairing(&y, &x));
            prop_assert_eq!(c.pairing(&(x + k * y), &z), c.pairing(&x, &z) + k * c.pairing(&y, &z));
            prop_assert_eq!(c.square(&x) % 2, 0);
        }
    }
}
