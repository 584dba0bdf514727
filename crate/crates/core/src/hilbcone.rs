//! `NS(S^[n]) = Z H_n ⊕ Z δ`, the involution `φ* = -R_{H_n - 2δ}`, walls of
//! the movable cone and the chamber count `C_n`.
//!
//! Interior walls are spanned by `X H_n - 2tY δ` where `(X, Y)` is a positive
//! solution of
//!
//! ```text
//! X^2 - 4t(n-1) Y^2 = α^2 - 4ρ(n-1),    X ≡ ±α (mod 2(n-1))
//! ```
//!
//! for one of the admissible pairs `(ρ, α)` of [`cattaneo_cases`]. The ray
//! lies inside the movable cone iff its slope `Y/X` is below `2/(2t-1)`,
//! which for a solution is equivalent to `X^2 < (2t-1)^2 A` with
//! `A = α^2 - 4ρ(n-1)`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mukai::{standard_vectors, MukaiContext, MukaiVector};
use crate::pell::{ceil_sqrt_u128, isqrt, isqrt_u128, solutions_bounded, GeneralizedPellProblem};

fn check_n(n: i64) -> Result<()> {
    if n < 2 {
        return Err(Error::NOutOfRange { n, min: 2 });
    }
    Ok(())
}

/// `a H_n + b δ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass {
    pub a: BigInt,
    pub b: BigInt,
}

impl DivisorClass {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
        }
    }

    /// Primitive representative with the same sign as the input.
    pub fn primitive(&self) -> Self {
        let g = self.a.gcd(&self.b);
        if g.is_zero() {
            return self.clone();
        }
        Self::new(&self.a / &g, &self.b / &g)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} H_n + {} δ", self.a, self.b)
    }
}

/// Beauville–Bogomolov form `diag(2t, -2(n-1))` in the basis `(H_n, δ)`.
pub fn bb_form(n: i64, c1: &DivisorClass, c2: &DivisorClass) -> BigInt {
    let t = 4 * n - 3;
    BigInt::from(2 * t) * &c1.a * &c2.a - BigInt::from(2 * (n - 1)) * &c1.b * &c2.b
}

/// `φ*(c) = -R_D(c) = (c, D) D - c` for `D = H_n - 2δ`, `q(D) = 2`.
pub fn involution_action(n: i64, c: &DivisorClass) -> DivisorClass {
    let d = DivisorClass::new(1, -2);
    let cd = bb_form(n, c, &d);
    DivisorClass::new(&cd - &c.a, -2 * &cd - &c.b)
}

/// The two extremal rays `H_n` and `φ*(H_n) = (2t-1) H_n - 4t δ`.
pub fn movable_rays(n: i64) -> (DivisorClass, DivisorClass) {
    let t = 4 * n - 3;
    (
        DivisorClass::new(1, 0),
        DivisorClass::new(2 * t - 1, -4 * t),
    )
}

/// Which search semantics to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScanMode {
    /// Replicates the original search program: case A starts at `α = 2`
    /// (the middle wall is added separately), case C stops before
    /// `ρ = floor((n-1)/4)`, and `X` passes the congruence test only when
    /// `X ∈ {α, 2(n-1) - α}` as plain integers.
    Appendix,
    /// Every admissible `(ρ, α)` and the full congruence `X ≡ ±α`.
    Full,
}

impl ScanMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ScanMode::Appendix => "appendix",
            ScanMode::Full => "full",
        }
    }
}

impl fmt::Display for ScanMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ScanMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "appendix" => Ok(ScanMode::Appendix),
            "full" => Ok(ScanMode::Full),
            other => Err(format!(
                "unknown mode '{other}' (expected appendix or full)"
            )),
        }
    }
}

/// Admissible `(ρ, α)`:
/// - A: `ρ = -1`, `1 <= α <= n-1`
/// - B: `ρ = 0`, `3 <= α <= n-1`
/// - C: `1 <= ρ <= floor((n-1)/4)`, `4ρ+1 <= α <= n-1`
pub fn cattaneo_cases(n: i64) -> Vec<(i64, i64)> {
    cattaneo_cases_for(n, ScanMode::Full)
}

pub fn cattaneo_cases_for(n: i64, mode: ScanMode) -> Vec<(i64, i64)> {
    let (a_start, rho_end) = match mode {
        ScanMode::Full => (1, (n - 1) / 4),
        ScanMode::Appendix => (2, (n - 1) / 4 - 1),
    };
    let mut cases: Vec<(i64, i64)> = (a_start..n).map(|alpha| (-1, alpha)).collect();
    cases.extend((3..n).map(|alpha| (0, alpha)));
    for rho in 1..=rho_end {
        cases.extend((4 * rho + 1..n).map(|alpha| (rho, alpha)));
    }
    cases
}

/// A wall of the movable cone together with the data that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallRecord {
    pub rho: i64,
    pub alpha: i64,
    pub x: BigInt,
    pub y: BigInt,
    /// `X H_n - 2tY δ`.
    pub ray: DivisorClass,
    /// The class `a` spanning the wall lattice together with `v`.
    pub a_vec: MukaiVector,
    pub slope: BigRational,
}

impl WallRecord {
    /// Builds the record and checks every invariant: the Pell equation, the
    /// congruence, integrality of `a` with `a^2 = 2ρ` and `|(v, a)| = α`,
    /// and `0 < Y/X < 2/(2t-1)`.
    pub fn new(n: i64, rho: i64, alpha: i64, x: BigInt, y: BigInt) -> Result<Self> {
        check_n(n)?;
        let ctx = MukaiContext::new(n)?;
        let t = ctx.t();
        let n1 = BigInt::from(n - 1);
        let m = BigInt::from(2 * (n - 1));
        let al = BigInt::from(alpha);
        let fail = |what: &str| {
            Error::WallInvariant(format!("n={n} ρ={rho} α={alpha} X={x} Y={y}: {what}"))
        };

        if !x.is_positive() || !y.is_positive() {
            return Err(fail("X and Y must be positive"));
        }
        let lhs = &x * &x - BigInt::from(4 * t) * &n1 * &y * &y;
        let rhs = &al * &al - BigInt::from(4 * rho) * &n1;
        if lhs != rhs {
            return Err(fail("Pell equation does not hold"));
        }
        let (first, third) = if (&x - &al).is_multiple_of(&m) {
            ((&x - &al) / &m, (&x + &al) / 2)
        } else if (&x + &al).is_multiple_of(&m) {
            ((&x + &al) / &m, (&x - &al) / 2)
        } else {
            return Err(fail("X is not ±α modulo 2(n-1)"));
        };
        let to_i64 = |v: &BigInt| v.to_i64().ok_or(Error::Overflow("wall vector"));
        let a_vec = MukaiVector::new(to_i64(&first)?, -to_i64(&y)?, to_i64(&third)?);
        if ctx.square(&a_vec) != 2 * rho {
            return Err(fail("a^2 != 2ρ"));
        }
        let v = standard_vectors(&ctx).v;
        if ctx.pairing(&v, &a_vec).abs() != alpha {
            return Err(fail("|(v, a)| != α"));
        }
        // Y/X < 2/(2t-1)
        if BigInt::from(2 * t - 1) * &y >= BigInt::from(2) * &x {
            return Err(fail("ray is not inside the movable cone"));
        }
        let ray = DivisorClass::new(x.clone(), BigInt::from(-2 * t) * &y);
        let slope = BigRational::new(y.clone(), x.clone());
        Ok(Self {
            rho,
            alpha,
            x,
            y,
            ray,
            a_vec,
            slope,
        })
    }

    /// `(X/g, Y/g)`, the key identifying the ray.
    pub fn ray_key(&self) -> (BigInt, BigInt) {
        let g = self.x.gcd(&self.y);
        (&self.x / &g, &self.y / &g)
    }

    /// Slope strictly below `1/t`, i.e. between `H_n` and `H_n - 2δ`.
    pub fn below_middle(&self, n: i64) -> bool {
        BigInt::from(4 * n - 3) * &self.y < self.x
    }

    pub fn is_middle(&self, n: i64) -> bool {
        BigInt::from(4 * n - 3) * &self.y == self.x
    }
}

/// Raw solution found by a search, before record construction.
type RawWall = (i64, i64, u128, u128);

/// Largest admissible `ρ` for a given `α` (text semantics).
fn rho_ceiling(n: i64, alpha: i64) -> i64 {
    if alpha < 3 {
        -1
    } else {
        ((n - 1) / 4).min((alpha - 1) / 4)
    }
}

/// Full-congruence search, organized by `(α, Y)` instead of by case.
///
/// For fixed `α` and `Y`, every admissible `ρ` constrains `X^2` to the
/// window `[DY^2 + α^2 - 4(n-1)ρ_max, DY^2 + α^2 + 4(n-1)]`, which is short
/// compared to the spacing `2(n-1)` of each residue class. Given `X` the
/// value of `ρ` is determined, so the whole case list is covered in
/// `O(n^2)` steps rather than one Pell scan per case.
fn sweep_full(n: i64) -> Vec<RawWall> {
    let n1 = (n - 1) as u128;
    let t = (4 * n - 3) as u128;
    let m = 2 * n1;
    let d = 4 * t * n1;
    let mut out = Vec::new();
    for alpha in 1..n {
        let rho_hi = rho_ceiling(n, alpha);
        let al = alpha as u128;
        let a_max = al * al + 4 * n1;
        let classes = {
            let r1 = al % m;
            let r2 = (m - r1) % m;
            if r1 == r2 {
                [Some(r1), None]
            } else {
                [Some(r1), Some(r2)]
            }
        };
        let mut y: u128 = 1;
        while n1 * y * y < (t - 1) * a_max {
            let base = d * y * y + al * al;
            let lo = if rho_hi >= 0 {
                base - 4 * n1 * rho_hi as u128
            } else {
                base + 4 * n1
            };
            let hi = base + 4 * n1;
            let x_lo = ceil_sqrt_u128(lo);
            let x_hi = isqrt_u128(hi).0;
            for r in classes.iter().flatten() {
                let mut x = x_lo + (r + m - x_lo % m) % m;
                while x <= x_hi {
                    let num = x * x - al * al;
                    debug_assert_eq!(num % (4 * n1), 0);
                    let rho = (t * y * y) as i128 - (num / (4 * n1)) as i128;
                    if rho >= -1 && rho <= rho_hi as i128 {
                        let a_val = (al * al) as i128 - 4 * rho * n1 as i128;
                        if a_val > 0 && (n1 * y * y) < (t - 1) * a_val as u128 {
                            out.push((rho as i64, alpha, x, y));
                        }
                    }
                    x += m;
                }
            }
            y += 1;
        }
    }
    out
}

/// Literal-congruence search: only `X ∈ {α, 2(n-1) - α}` are candidates.
fn sweep_appendix(n: i64) -> Vec<RawWall> {
    let n1 = (n - 1) as i128;
    let t = (4 * n - 3) as i128;
    let d = 4 * t * n1;
    let mut out = vec![(-1, 1, t as u128, 1)];
    for (rho, alpha) in cattaneo_cases_for(n, ScanMode::Appendix) {
        let a_val = (alpha as i128).pow(2) - 4 * rho as i128 * n1;
        if a_val <= 0 {
            continue;
        }
        let mut candidates = vec![alpha as i128, 2 * n1 - alpha as i128];
        candidates.dedup();
        for x in candidates.into_iter().filter(|&x| x > 0) {
            let diff = x * x - a_val;
            if diff <= 0 || diff % d != 0 {
                continue;
            }
            let (y, exact) = isqrt_u128((diff / d) as u128);
            if exact && y > 0 && (n1 * (y * y) as i128) < (t - 1) * a_val {
                out.push((rho, alpha, x as u128, y));
            }
        }
    }
    out
}

fn finish(n: i64, raw: Vec<RawWall>) -> Result<Vec<WallRecord>> {
    let mut records = raw
        .into_iter()
        .map(|(rho, alpha, x, y)| WallRecord::new(n, rho, alpha, BigInt::from(x), BigInt::from(y)))
        .collect::<Result<Vec<_>>>()?;
    records.sort_by(|p, q| {
        p.slope
            .cmp(&q.slope)
            .then(p.rho.cmp(&q.rho))
            .then(p.alpha.cmp(&q.alpha))
            .then(p.x.cmp(&q.x))
    });
    let mut seen = HashSet::new();
    records.retain(|r| seen.insert(r.ray_key()));
    Ok(records)
}

/// All walls in the interior of the movable cone, one record per distinct
/// ray, sorted by slope. The middle wall `(ρ, α) = (-1, 1)`,
/// `(X, Y) = (t, 1)` is always present.
pub fn enumerate_walls(n: i64, mode: ScanMode) -> Result<Vec<WallRecord>> {
    check_n(n)?;
    let raw = match mode {
        ScanMode::Full => sweep_full(n),
        ScanMode::Appendix => sweep_appendix(n),
    };
    finish(n, raw)
}

/// Same result as [`enumerate_walls`], computed by solving one bounded Pell
/// problem per admissible `(ρ, α)` with
/// `x_bound = isqrt((2t-1)^2 A)`. Cubic in `n`; used as a cross-check.
pub fn enumerate_walls_per_case(n: i64, mode: ScanMode) -> Result<Vec<WallRecord>> {
    check_n(n)?;
    let n1 = n - 1;
    let t = 4 * n - 3;
    let m = 2 * n1;
    let d = BigInt::from(4 * t) * n1;
    let d = d.to_biguint().expect("positive");
    let mut raw = Vec::new();
    if mode == ScanMode::Appendix {
        raw.push((-1, 1, t as u128, 1));
    }
    for (rho, alpha) in cattaneo_cases_for(n, mode) {
        let a_val = BigInt::from(alpha * alpha - 4 * rho * n1);
        if !a_val.is_positive() {
            continue;
        }
        let reach = (BigInt::from((2 * t - 1) * (2 * t - 1)) * &a_val)
            .to_biguint()
            .expect("positive");
        let x_bound = isqrt(&reach).0;
        let prob = GeneralizedPellProblem::new(
            d.clone(),
            a_val.clone(),
            m as u64,
            (alpha % m) as u64,
            x_bound,
        )?;
        for sol in solutions_bounded(&prob) {
            let x = sol.x.to_u128().ok_or(Error::Overflow("wall search"))?;
            let y = sol.y.to_u128().ok_or(Error::Overflow("wall search"))?;
            if mode == ScanMode::Appendix && x != alpha as u128 && x != (m - alpha) as u128 {
                continue;
            }
            // X^2 < (2t-1)^2 A, strict
            let lhs = BigInt::from(x) * BigInt::from(x);
            if lhs < BigInt::from((2 * t - 1) * (2 * t - 1)) * &a_val {
                raw.push((rho, alpha, x, y));
            }
        }
    }
    finish(n, raw)
}

/// Chamber data for one `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberCount {
    pub n: i64,
    pub mode: ScanMode,
    /// Chambers in half of the movable cone.
    pub c_n: u64,
    /// Distinct wall rays with slope `< 1/t`.
    pub walls_below_middle: u64,
    /// Distinct wall rays in the interior of the movable cone.
    pub total_walls: u64,
    /// `total_walls == 2 C_n - 1` and the ray set is mapped to itself by the
    /// involution.
    pub symmetric: bool,
    pub walls: Vec<WallRecord>,
}

fn positive_ray(c: &DivisorClass) -> DivisorClass {
    let p = c.primitive();
    if p.a.is_negative() {
        DivisorClass::new(-p.a, -p.b)
    } else {
        p
    }
}

pub fn chamber_count(n: i64, mode: ScanMode) -> Result<ChamberCount> {
    let walls = enumerate_walls(n, mode)?;
    let below = walls.iter().filter(|w| w.below_middle(n)).count() as u64;
    let total = walls.len() as u64;
    let c_n = below + 1;
    let rays: HashSet<DivisorClass> = walls.iter().map(|w| positive_ray(&w.ray)).collect();
    let stable = rays
        .iter()
        .all(|r| rays.contains(&positive_ray(&involution_action(n, r))));
    Ok(ChamberCount {
        n,
        mode,
        c_n,
        walls_below_middle: below,
        total_walls: total,
        symmetric: stable && total == 2 * c_n - 1,
        walls,
    })
}

/// [`chamber_count`] for every `n` in `n_min..=n_max`, evaluated on `jobs`
/// worker threads. The map is ordered by `n` whatever the thread count.
pub fn scan_chambers(
    n_min: i64,
    n_max: i64,
    mode: ScanMode,
    jobs: usize,
) -> Result<BTreeMap<i64, ChamberCount>> {
    check_n(n_min)?;
    if n_min > n_max {
        return Err(Error::Precondition(format!(
            "empty range {n_min}..={n_max}"
        )));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    let counts = pool.install(|| {
        (n_min..=n_max)
            .into_par_iter()
            .map(|n| chamber_count(n, mode))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(counts.into_iter().map(|c| (c.n, c)).collect())
}

/// Walls found with the full congruence but not by the literal search.
pub fn mode_disagreements(n: i64) -> Result<Vec<WallRecord>> {
    let appendix: HashSet<_> = enumerate_walls(n, ScanMode::Appendix)?
        .iter()
        .map(WallRecord::ray_key)
        .collect();
    Ok(enumerate_walls(n, ScanMode::Full)?
        .into_iter()
        .filter(|w| !appendix.contains(&w.ray_key()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dc(a: i64, b: i64) -> DivisorClass {
        DivisorClass::new(a, b)
    }

    #[test]
    fn bb_form_examples() {
        for n in [2, 3, 10] {
            let t = 4 * n - 3;
            assert_eq!(bb_form(n, &dc(1, -2), &dc(1, -2)), BigInt::from(2));
            assert_eq!(bb_form(n, &dc(1, 0), &dc(1, 0)), BigInt::from(2 * t));
            assert_eq!(bb_form(n, &dc(0, 1), &dc(0, 1)), BigInt::from(-2 * (n - 1)));
        }
    }

    #[test]
    fn involution_examples() {
        for n in 2..=50 {
            let t = 4 * n - 3;
            assert_eq!(involution_action(n, &dc(1, 0)), dc(2 * t - 1, -4 * t));
            assert_eq!(involution_action(n, &dc(1, -2)), dc(1, -2));
            let img = involution_action(n, &dc(0, 1));
            assert_eq!(img, dc(4 * (n - 1), -(8 * n - 7)));
            assert_eq!(involution_action(n, &img), dc(0, 1));
        }
    }

    #[test]
    fn movable_ray_examples() {
        assert_eq!(movable_rays(3), (dc(1, 0), dc(17, -36)));
        assert_eq!(movable_rays(4), (dc(1, 0), dc(25, -52)));
        for n in 2..=100 {
            let (h, other) = movable_rays(n);
            assert_eq!(involution_action(n, &h), other);
        }
    }

    #[test]
    fn case_lists() {
        assert_eq!(cattaneo_cases(3), vec![(-1, 1), (-1, 2)]);
        let c5 = cattaneo_cases(5);
        assert_eq!(c5, vec![(-1, 1), (-1, 2), (-1, 3), (-1, 4), (0, 3), (0, 4)]);
        let c9 = cattaneo_cases(9);
        let rho1: Vec<_> = c9.iter().filter(|c| c.0 == 1).map(|c| c.1).collect();
        assert_eq!(rho1, vec![5, 6, 7, 8]);
        assert!(c9.iter().all(|c| c.0 <= 2));
        assert!(!c9.iter().any(|c| c.0 == 2));
        // n = 15: floor(14/4) = 3 contributes α = 13, 14; the appendix stops at 2
        let text = cattaneo_cases(15);
        let app = cattaneo_cases_for(15, ScanMode::Appendix);
        let top: Vec<_> = text.iter().filter(|c| c.0 == 3).map(|c| c.1).collect();
        assert_eq!(top, vec![13, 14]);
        assert_eq!(app.iter().map(|c| c.0).max(), Some(2));
        assert_eq!(text.len(), app.len() + 3);
        assert!(!app.contains(&(-1, 1)));
    }

    #[test]
    fn n3_has_only_the_middle_wall() {
        for mode in [ScanMode::Full, ScanMode::Appendix] {
            let walls = enumerate_walls(3, mode).unwrap();
            assert_eq!(walls.len(), 1);
            let w = &walls[0];
            assert_eq!((w.rho, w.alpha), (-1, 1));
            assert_eq!(
                (w.x.clone(), w.y.clone()),
                (BigInt::from(9), BigInt::from(1))
            );
            assert_eq!(w.ray, dc(9, -18));
            assert_eq!(positive_ray(&w.ray), dc(1, -2));
            assert_eq!(w.a_vec, MukaiVector::new(2, -1, 5));
        }
        // (ρ, α) = (-1, 2) is impossible modulo 3 at n = 3.
        let p = GeneralizedPellProblem::new(72u32, 12, 4u32, 2u32, 200u32).unwrap();
        assert!(crate::pell::solutions_bounded_oracle(&p, false).is_empty());
    }

    #[test]
    fn n2_middle_wall() {
        let walls = enumerate_walls(2, ScanMode::Full).unwrap();
        assert_eq!(walls.len(), 1);
        assert_eq!(walls[0].x, BigInt::from(5));
    }

    #[test]
    fn record_rejects_bad_data() {
        assert!(WallRecord::new(3, -1, 1, BigInt::from(9), BigInt::from(1)).is_ok());
        assert!(WallRecord::new(3, -1, 1, BigInt::from(10), BigInt::from(1)).is_err());
        assert!(WallRecord::new(3, -1, 2, BigInt::from(9), BigInt::from(1)).is_err());
        assert!(WallRecord::new(3, -1, 1, BigInt::from(9), BigInt::from(0)).is_err());
    }

    #[test]
    fn sweep_matches_per_case_route() {
        for n in 2..=90 {
            for mode in [ScanMode::Full, ScanMode::Appendix] {
                assert_eq!(
                    enumerate_walls(n, mode).unwrap(),
                    enumerate_walls_per_case(n, mode).unwrap(),
                    "n = {n}, {mode}"
                );
            }
        }
    }

    #[test]
    fn small_chamber_counts() {
        for n in 2..=60 {
            for mode in [ScanMode::Full, ScanMode::Appendix] {
                let c = chamber_count(n, mode).unwrap();
                assert_eq!((c.c_n, c.walls_below_middle), (1, 0), "n = {n}");
                assert!(c.symmetric);
                assert!(c.walls[0].is_middle(n));
            }
            assert!(mode_disagreements(n).unwrap().is_empty());
        }
    }

    #[test]
    fn scan_is_independent_of_thread_count() {
        let one = scan_chambers(2, 40, ScanMode::Full, 1).unwrap();
        let many = scan_chambers(2, 40, ScanMode::Full, 4).unwrap();
        assert_eq!(one, many);
        assert_eq!(
            one.keys().copied().collect::<Vec<_>>(),
            (2..=40).collect::<Vec<_>>()
        );
        assert!(scan_chambers(5, 4, ScanMode::Full, 1).is_err());
        let tiny = scan_chambers(2, 3, ScanMode::Appendix, 2).unwrap();
        assert_eq!(tiny.values().map(|c| c.c_n).collect::<Vec<_>>(), vec![1, 1]);
    }

    proptest! {
        #[test]
        fn involution_is_isometric_involution(n in 2i64..=100, a in -10_000i64..10_000, b in -10_000i64..10_000) {
            let c = dc(a, b);
            let img = involution_action(n, &c);
            prop_assert_eq!(bb_form(n, &img, &img), bb_form(n, &c, &c));
            prop_assert_eq!(involution_action(n, &img), c);
        }
    }
}
