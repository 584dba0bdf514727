//! Ordinary, negative and generalized Pell equations.
//!
//! Ordinary and negative equations are solved from the periodic continued
//! fraction of `sqrt(D)`. The generalized equation `X^2 - D Y^2 = N` is only
//! ever needed on a bounded range of `X` together with a congruence
//! condition `X = ±r (mod m)`, so it is handled by enumeration over the
//! admissible residue classes. [`solutions_bounded_oracle`] is the naive
//! double loop kept as an independent cross-check.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer, Roots};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Trial-division limit for the `p = 3 (mod 4)` obstruction test.
const TRIAL_DIVISION_LIMIT: u64 = 1 << 20;

/// Returns `(floor(sqrt(m)), floor(sqrt(m))^2 == m)`.
pub fn isqrt(m: &BigUint) -> (BigUint, bool) {
    let root = m.sqrt();
    let exact = &root * &root == *m;
    (root, exact)
}

pub(crate) fn isqrt_u128(m: u128) -> (u128, bool) {
    let root = m.sqrt();
    (root, root * root == m)
}

/// Smallest `r` with `r^2 >= m`.
pub(crate) fn ceil_sqrt_u128(m: u128) -> u128 {
    let (root, exact) = isqrt_u128(m);
    if exact {
        root
    } else {
        root + 1
    }
}

/// A nonnegative solution `(x, y)` of some Pell-type equation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PellSolution {
    pub x: BigUint,
    pub y: BigUint,
}

impl PellSolution {
    pub fn new(x: impl Into<BigUint>, y: impl Into<BigUint>) -> Self {
        Self {
            x: x.into(),
            y: y.into(),
        }
    }

    /// `x^2 - d y^2` as a signed integer.
    pub fn norm(&self, d: &BigUint) -> BigInt {
        BigInt::from(&self.x * &self.x) - BigInt::from(d * &self.y * &self.y)
    }
}

fn check_nonsquare(d: &BigUint) -> Result<()> {
    if d.is_zero() {
        return Err(Error::ZeroCoefficient);
    }
    if isqrt(d).1 {
        return Err(Error::SquareCoefficient(d.clone()));
    }
    Ok(())
}

/// Continued fraction of `sqrt(d)`: the integer part `a0` and one full
/// period `a1, ..., aL` (which always ends with `2 a0`).
pub fn continued_fraction_period(d: &BigUint) -> Result<(BigUint, Vec<BigUint>)> {
    check_nonsquare(d)?;
    let a0 = d.sqrt();
    let two_a0 = &a0 << 1u32;
    let mut m = BigUint::zero();
    let mut q = BigUint::one();
    let mut a = a0.clone();
    let mut period = Vec::new();
    loop {
        m = &q * &a - &m;
        q = (d - &m * &m) / &q;
        a = (&a0 + &m) / &q;
        period.push(a.clone());
        if a == two_a0 {
            break;
        }
    }
    Ok((a0, period))
}

/// Convergent `p_k / q_k` of `[a0; period, period, ...]`.
fn convergent(a0: &BigUint, period: &[BigUint], k: usize) -> (BigUint, BigUint) {
    let (mut p_prev, mut p) = (BigUint::one(), a0.clone());
    let (mut q_prev, mut q) = (BigUint::zero(), BigUint::one());
    for j in 1..=k {
        let a = &period[(j - 1) % period.len()];
        let p_next = a * &p + &p_prev;
        let q_next = a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
    (p, q)
}

/// Minimal positive solution of `x^2 - d y^2 = 1`.
pub fn fundamental_solution(d: &BigUint) -> Result<PellSolution> {
    let (a0, period) = continued_fraction_period(d)?;
    let len = period.len();
    let k = if len % 2 == 0 { len - 1 } else { 2 * len - 1 };
    let (x, y) = convergent(&a0, &period, k);
    Ok(PellSolution { x, y })
}

/// Smallest prime factor of `d` congruent to 3 mod 4, found by trial
/// division with divisors up to `limit`. `None` means no such factor was
/// found; when `d` has a large cofactor this is not a proof of absence.
pub fn three_mod_four_factor(d: &BigUint, limit: u64) -> Option<BigUint> {
    let mut rem = d.clone();
    while !rem.is_zero() && rem.is_even() {
        rem >>= 1u32;
    }
    let mut p = 3u64;
    while p <= limit {
        let pp = BigUint::from(p);
        if &pp * &pp > rem {
            break;
        }
        if (&rem % p).is_zero() {
            if p % 4 == 3 {
                return Some(pp);
            }
            while (&rem % p).is_zero() {
                rem /= p;
            }
        }
        p += 2;
    }
    let fully_factored = {
        let pp = BigUint::from(p);
        &pp * &pp > rem
    };
    // What is left is 1 or a prime when trial division ran to completion.
    (fully_factored && rem > BigUint::one() && (&rem % 4u32) == BigUint::from(3u32)).then_some(rem)
}

/// Minimal positive solution of `x^2 - d y^2 = -1`, if the equation is
/// solvable.
pub fn negative_pell_minimal(d: &BigUint) -> Result<Option<PellSolution>> {
    check_nonsquare(d)?;
    // -1 is not a square mod 4 or mod any prime p = 3 (mod 4).
    let low = (d % 4u32).to_u32().unwrap_or(0);
    if low == 0 || low == 3 {
        return Ok(None);
    }
    if three_mod_four_factor(d, TRIAL_DIVISION_LIMIT).is_some() {
        return Ok(None);
    }
    let (a0, period) = continued_fraction_period(d)?;
    if period.len() % 2 == 0 {
        return Ok(None);
    }
    let (x, y) = convergent(&a0, &period, period.len() - 1);
    Ok(Some(PellSolution { x, y }))
}

/// Minimal positive `(x, y)` with `p x^2 - q y^2 = -1` and `x <= bound`.
///
/// Plain search over `x`; only used for small witnesses.
pub fn minimal_solution_mixed(
    p: &BigUint,
    q: &BigUint,
    bound: u64,
) -> Result<Option<PellSolution>> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroCoefficient);
    }
    for x in 1..=bound {
        let x = BigUint::from(x);
        let num = p * &x * &x + 1u32;
        let (quot, rem) = num.div_rem(q);
        if !rem.is_zero() {
            continue;
        }
        let (y, exact) = isqrt(&quot);
        if exact && !y.is_zero() {
            return Ok(Some(PellSolution { x, y }));
        }
    }
    Ok(None)
}

/// `X^2 - d Y^2 = rhs` with `0 < X <= x_bound`, `Y >= 1` and
/// `X = ±residue (mod modulus)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedPellProblem {
    d: BigUint,
    rhs: BigInt,
    modulus: BigUint,
    residue: BigUint,
    x_bound: BigUint,
}

impl GeneralizedPellProblem {
    pub fn new(
        d: impl Into<BigUint>,
        rhs: impl Into<BigInt>,
        modulus: impl Into<BigUint>,
        residue: impl Into<BigUint>,
        x_bound: impl Into<BigUint>,
    ) -> Result<Self> {
        let prob = Self {
            d: d.into(),
            rhs: rhs.into(),
            modulus: modulus.into(),
            residue: residue.into(),
            x_bound: x_bound.into(),
        };
        check_nonsquare(&prob.d)?;
        if prob.modulus.is_zero() {
            return Err(Error::InvalidProblem("modulus must be positive"));
        }
        if prob.residue >= prob.modulus {
            return Err(Error::InvalidProblem("residue must lie in [0, modulus)"));
        }
        Ok(prob)
    }

    pub fn d(&self) -> &BigUint {
        &self.d
    }

    pub fn rhs(&self) -> &BigInt {
        &self.rhs
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    pub fn residue(&self) -> &BigUint {
        &self.residue
    }

    pub fn x_bound(&self) -> &BigUint {
        &self.x_bound
    }

    /// The two residue classes `residue` and `-residue` (equal when
    /// `2 residue = 0 mod modulus`).
    fn residue_classes(&self) -> Vec<BigUint> {
        let r1 = self.residue.clone();
        let r2 = (&self.modulus - &self.residue) % &self.modulus;
        if r1 == r2 {
            vec![r1]
        } else {
            vec![r1, r2]
        }
    }

    fn small(&self) -> Option<SmallProblem> {
        let limit = 1u64 << 62;
        let x_bound = self.x_bound.to_u64().filter(|&v| v < limit)?;
        let modulus = self.modulus.to_u64().filter(|&v| v < limit)?;
        let residue = self.residue.to_u64()?;
        let d = self.d.to_u64()?;
        let rhs = self.rhs.to_i64()?;
        Some(SmallProblem {
            d: d as u128,
            rhs: rhs as i128,
            modulus,
            residue,
            x_bound,
        })
    }
}

struct SmallProblem {
    d: u128,
    rhs: i128,
    modulus: u64,
    residue: u64,
    x_bound: u64,
}

impl SmallProblem {
    fn solve(&self) -> Vec<PellSolution> {
        let r1 = self.residue;
        let r2 = (self.modulus - self.residue) % self.modulus;
        let classes: &[u64] = if r1 == r2 { &[r1] } else { &[r1, r2] };
        let mut xs = Vec::new();
        for &r in classes {
            let mut x = if r == 0 { self.modulus } else { r };
            while x <= self.x_bound {
                let diff = (x as i128) * (x as i128) - self.rhs;
                if diff > 0 {
                    let diff = diff as u128;
                    if diff.is_multiple_of(self.d) {
                        let (y, exact) = isqrt_u128(diff / self.d);
                        if exact {
                            xs.push((x, y as u64));
                        }
                    }
                }
                x = match x.checked_add(self.modulus) {
                    Some(next) => next,
                    None => break,
                };
            }
        }
        xs.sort_unstable();
        xs.dedup();
        xs.into_iter()
            .map(|(x, y)| PellSolution::new(x, y))
            .collect()
    }
}

/// All solutions of a [`GeneralizedPellProblem`], sorted by `X`.
///
/// Only `X` in the admissible residue classes are visited; for each one the
/// quotient `(X^2 - N) / D` is tested for being a perfect square.
pub fn solutions_bounded(prob: &GeneralizedPellProblem) -> Vec<PellSolution> {
    if let Some(small) = prob.small() {
        return small.solve();
    }
    let mut out = Vec::new();
    let d = BigInt::from(prob.d.clone());
    for r in prob.residue_classes() {
        let mut x = if r.is_zero() { prob.modulus.clone() } else { r };
        while x <= prob.x_bound {
            let xi = BigInt::from(x.clone());
            let diff = &xi * &xi - &prob.rhs;
            if diff.sign() == Sign::Plus {
                let (quot, rem) = diff.div_rem(&d);
                if rem.is_zero() {
                    let quot = quot.to_biguint().expect("positive quotient");
                    let (y, exact) = isqrt(&quot);
                    if exact {
                        out.push(PellSolution { x: x.clone(), y });
                    }
                }
            }
            x += &prob.modulus;
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Brute-force double loop over `X` and `Y`.
///
/// With `appendix_semantics` the congruence test compares unreduced
/// integers, accepting `X` only when `X = r`, `X = -r` or `X = m - r`; this
/// is the literal test of the original search program. Otherwise the full
/// congruence `X = ±r (mod m)` is used and the result must agree with
/// [`solutions_bounded`].
pub fn solutions_bounded_oracle(
    prob: &GeneralizedPellProblem,
    appendix_semantics: bool,
) -> Vec<PellSolution> {
    let d = BigInt::from(prob.d.clone());
    let m = BigInt::from(prob.modulus.clone());
    let r = BigInt::from(prob.residue.clone());
    let bound = BigInt::from(prob.x_bound.clone());
    let mut out = Vec::new();
    let mut x = BigInt::one();
    while x <= bound {
        let admissible = if appendix_semantics {
            x == r || x == -&r || x == &m - &r
        } else {
            (&x - &r).is_multiple_of(&m) || (&x + &r).is_multiple_of(&m)
        };
        if admissible {
            let x2 = &x * &x;
            let mut y = BigInt::one();
            loop {
                let lhs = &x2 - &d * &y * &y;
                if lhs == prob.rhs {
                    out.push(PellSolution {
                        x: x.to_biguint().expect("positive"),
                        y: y.to_biguint().expect("positive"),
                    });
                }
                if lhs <= prob.rhs {
                    break;
                }
                y += 1;
            }
        }
        x += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn brute_fundamental(d: u64, x_max: u64) -> Option<(u64, u64)> {
        (2..=x_max).find_map(|x| {
            let v = x * x - 1;
            if v % d != 0 {
                return None;
            }
            let (y, exact) = isqrt_u128((v / d) as u128);
            (exact && y > 0).then_some((x, y as u64))
        })
    }

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(&big(0)), (big(0), true));
        assert_eq!(isqrt(&big(17)), (big(4), false));
        assert_eq!(isqrt(&big(324)), (big(18), true));
    }

    #[test]
    fn fundamental_examples() {
        assert_eq!(
            fundamental_solution(&big(18)).unwrap(),
            PellSolution::new(17u32, 4u32)
        );
        assert_eq!(
            fundamental_solution(&big(39)).unwrap(),
            PellSolution::new(25u32, 4u32)
        );
        let brute = brute_fundamental(13, 1000).unwrap();
        assert_eq!(brute, (649, 180));
        assert_eq!(
            fundamental_solution(&big(13)).unwrap(),
            PellSolution::new(brute.0, brute.1)
        );
    }

    #[test]
    fn fundamental_rejects_bad_input() {
        assert_eq!(fundamental_solution(&big(0)), Err(Error::ZeroCoefficient));
        assert!(matches!(
            fundamental_solution(&big(49)),
            Err(Error::SquareCoefficient(_))
        ));
    }

    #[test]
    fn fundamental_matches_brute_force_up_to_500() {
        for d in 2u64..=500 {
            if isqrt_u128(d as u128).1 {
                continue;
            }
            let sol = fundamental_solution(&big(d)).unwrap();
            assert_eq!(sol.norm(&big(d)), BigInt::one());
            if let Some(x) = sol.x.to_u64().filter(|&x| x <= 100_000) {
                let brute = brute_fundamental(d, 100_000).unwrap();
                assert_eq!((x, sol.y.to_u64().unwrap()), brute, "d = {d}");
            } else {
                assert!(brute_fundamental(d, 100_000).is_none(), "d = {d}");
            }
        }
    }

    #[test]
    fn negative_examples() {
        assert_eq!(
            negative_pell_minimal(&big(13)).unwrap(),
            Some(PellSolution::new(18u32, 5u32))
        );
        assert_eq!(
            negative_pell_minimal(&big(2)).unwrap(),
            Some(PellSolution::new(1u32, 1u32))
        );
        assert_eq!(negative_pell_minimal(&big(3)).unwrap(), None);
        // brute force for d = 3
        for x in 1u64..=10_000 {
            let v = x * x + 1;
            if v % 3 == 0 {
                assert!(!isqrt_u128((v / 3) as u128).1);
            }
        }
    }

    #[test]
    fn negative_solutions_are_minimal_and_unobstructed() {
        for d in 2u64..=400 {
            if isqrt_u128(d as u128).1 {
                continue;
            }
            let got = negative_pell_minimal(&big(d)).unwrap();
            let brute = (1u64..=5_000).find_map(|x| {
                let v = x * x + 1;
                (v % d == 0)
                    .then(|| isqrt_u128((v / d) as u128))
                    .filter(|&(_, exact)| exact)
                    .map(|(y, _)| (x, y as u64))
            });
            match got {
                Some(sol) => {
                    assert_eq!(sol.norm(&big(d)), BigInt::from(-1));
                    assert!(three_mod_four_factor(&big(d), 1000).is_none());
                    let x = sol.x.to_u64().unwrap();
                    if x <= 5_000 {
                        assert_eq!(Some((x, sol.y.to_u64().unwrap())), brute, "d = {d}");
                    }
                }
                None => assert_eq!(brute, None, "d = {d}"),
            }
        }
    }

    #[test]
    fn three_mod_four_detection() {
        let f = |d: u64| three_mod_four_factor(&big(d), 100).and_then(|p| p.to_u64());
        assert_eq!(f(3), Some(3));
        assert_eq!(f(21), Some(3));
        assert_eq!(f(13 * 17), None);
        assert_eq!(f(2 * 7), Some(7));
        assert_eq!(f(2 * 19 * 19), Some(19));
        assert_eq!(f(5 * 23), Some(23));
        assert_eq!(f(5 * 5 * 103), Some(103));
    }

    #[test]
    fn mixed_examples() {
        let f = |p: u64, q: u64| minimal_solution_mixed(&big(p), &big(q), 1000).unwrap();
        assert_eq!(f(2, 9), Some(PellSolution::new(2u32, 1u32)));
        assert_eq!(f(3, 13), Some(PellSolution::new(2u32, 1u32)));
        assert_eq!(f(1, 2), Some(PellSolution::new(1u32, 1u32)));
        assert_eq!(f(1, 3), None);
    }

    #[test]
    fn bounded_examples() {
        let p = GeneralizedPellProblem::new(72u32, 9, 4u32, 1u32, 9u32).unwrap();
        assert_eq!(solutions_bounded(&p), vec![PellSolution::new(9u32, 1u32)]);

        let p = GeneralizedPellProblem::new(72u32, 12, 4u32, 2u32, 200u32).unwrap();
        assert!(solutions_bounded(&p).is_empty());
        assert!(solutions_bounded_oracle(&p, false).is_empty());

        // t = 9 is the smallest solution; a bound below it finds nothing.
        let p = GeneralizedPellProblem::new(72u32, 81, 4u32, 1u32, 8u32).unwrap();
        assert!(solutions_bounded(&p).is_empty());
    }

    #[test]
    fn bounded_rejects_invalid_problems() {
        assert!(GeneralizedPellProblem::new(72u32, 9, 0u32, 0u32, 9u32).is_err());
        assert!(GeneralizedPellProblem::new(72u32, 9, 4u32, 4u32, 9u32).is_err());
        assert!(GeneralizedPellProblem::new(64u32, 9, 4u32, 1u32, 9u32).is_err());
    }

    #[test]
    fn arbitrary_precision_path() {
        // rhs does not fit in 64 bits, so the BigInt loop is taken.
        let y = BigUint::one() << 33u32;
        let rhs = BigInt::from(9) - BigInt::from(BigUint::from(2u32) * &y * &y);
        let p = GeneralizedPellProblem::new(2u32, rhs.clone(), 1u32, 0u32, 10u32).unwrap();
        assert!(p.small().is_none());
        let sols = solutions_bounded(&p);
        assert!(sols.contains(&PellSolution { x: big(3), y }));
        for s in &sols {
            assert_eq!(s.norm(&big(2)), rhs);
        }
    }

    #[test]
    fn appendix_semantics_miss_shifted_residues() {
        // Middle-wall problem for n = 3: X = t = 9 = 1 + 2 * 4.
        let p = GeneralizedPellProblem::new(72u32, 9, 4u32, 1u32, 9u32).unwrap();
        assert_eq!(
            solutions_bounded_oracle(&p, false),
            vec![PellSolution::new(9u32, 1u32)]
        );
        assert!(solutions_bounded_oracle(&p, true).is_empty());
    }
}
