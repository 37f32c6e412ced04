//! Explicit monochromatic solutions.
//!
//! The `build_*` functions are pure parametrizations: given the parameters
//! a proof produces (a scale, a step, an index), they return the solution
//! tuple and check it satisfies its equation exactly. The `prove_*`
//! functions drive them from a coloring, via the searches in
//! [`crate::structures`], and re-verify the result against the coloring.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::coloring::{Color, Coloring};
use crate::equation::{at_equation, family_equation, LinearEquation, SolutionTuple, AT_MAX_N, FAMILY_MAX_N};
use crate::error::{Error, Result};
use crate::serde_decimal;
use crate::structures::{find_fan, pigeonhole_powers, FanBudget, HomogeneousFamily, Member, MonochromaticFan, PigeonholeWitness};

fn to_u64(v: &BigInt, index: usize) -> Result<u64> {
    if !v.is_positive() {
        return Err(Error::NonPositive {
            index,
            value: v.to_string(),
        });
    }
    v.to_u64()
        .ok_or_else(|| Error::Overflow(format!("x{} = {v} does not fit in 64 bits", index + 1)))
}

fn pow2(e: u32) -> BigInt {
    BigInt::one() << e
}

fn check_solution(eq: &LinearEquation, tuple: &SolutionTuple) -> Result<()> {
    if eq.is_solution(&tuple.values) {
        Ok(())
    } else {
        Err(Error::Verification(format!(
            "{:?} does not solve {eq} (residual {})",
            tuple.values,
            eq.residual(&tuple.values)
        )))
    }
}

/// The parameters `(l1, l2) = (2^(n-1) + 2^j, 2^(n-1))`.
pub fn theorem1_lambdas(n: u32, j: u32) -> (BigInt, BigInt) {
    let p = pow2(n - 1);
    (&p + pow2(j), p)
}

/// Solution of `x1 + 2 x2 + ... + 2^(n-2) x_{n-1} - 2^(n-1) x_n = 0` from a
/// pair `(2^j b, b)` and step `d`:
/// `x_{n-j} = 2^j b + l1 d`, `x_n = b + l2 d`, every other `x_i = 2^(n-1) d`.
pub fn build_theorem1_solution(n: u32, j: u32, b: u64, d: u64) -> Result<SolutionTuple> {
    if !(2..=FAMILY_MAX_N).contains(&n) {
        return Err(Error::out_of_range("n", n, 2, FAMILY_MAX_N as i128));
    }
    if !(1..n).contains(&j) {
        return Err(Error::out_of_range("j", j, 1, n as i128 - 1));
    }
    if b == 0 || d == 0 {
        return Err(Error::Precondition("b and d must be positive".into()));
    }
    let (l1, l2) = theorem1_lambdas(n, j);
    let (b_big, d_big) = (BigInt::from(b), BigInt::from(d));
    let filler = pow2(n - 1) * &d_big;
    let slot = (n - j) as usize;
    let values = (1..=n as usize)
        .map(|idx| {
            let v = if idx == slot {
                pow2(j) * &b_big + &l1 * &d_big
            } else if idx == n as usize {
                &b_big + &l2 * &d_big
            } else {
                filler.clone()
            };
            to_u64(&v, idx - 1)
        })
        .collect::<Result<Vec<_>>>()?;
    let tuple = SolutionTuple::with_lambdas(values, vec![l1, l2]);
    check_solution(&family_equation(n)?, &tuple)?;
    Ok(tuple)
}

/// Solution of the canonical [`at_equation`] for `n`: `x_{i+1} = x`, every
/// other coordinate `2^i x`. `i` is 1-based, `1 <= i <= n - 1`.
pub fn build_at_solution(n: u32, i: u32, x: u64) -> Result<SolutionTuple> {
    if !(2..=AT_MAX_N).contains(&n) {
        return Err(Error::out_of_range("n", n, 2, AT_MAX_N as i128));
    }
    if !(1..n).contains(&i) {
        return Err(Error::out_of_range("i", i, 1, n as i128 - 1));
    }
    if x == 0 {
        return Err(Error::Precondition("x must be positive".into()));
    }
    let big = x
        .checked_mul(1u64 << i)
        .ok_or_else(|| Error::Overflow(format!("2^{i} * {x}")))?;
    let values = (0..n).map(|idx| if idx == i { x } else { big }).collect();
    let tuple = SolutionTuple::new(values);
    check_solution(&at_equation(n)?, &tuple)?;
    Ok(tuple)
}

// ---------------------------------------------------------------------------
// Appending terms

/// A solution of `sum a_i x_i + sum b_l x_{n+l} = 0` obtained from a solution
/// `y` of `sum a_i y_i = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionSolution {
    /// `a_1..a_n, b_1..b_k` as exact rationals.
    #[serde(with = "ratio_vec")]
    pub coefficients: Vec<BigRational>,
    pub tuple: SolutionTuple,
    /// Shift applied to the first coordinate, as a multiple of `d`.
    #[serde(with = "serde_decimal::ratio")]
    pub lambda1: BigRational,
    pub step: u64,
    /// Value of every appended coordinate, `|a_1| d`.
    pub appended: u64,
    /// True when `a_1 < 0`, so the appended coordinates use `|a_1| d` and
    /// the shift changes sign.
    pub sign_adjusted: bool,
}

mod ratio_vec {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(ToString::to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| BigRational::from_str(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

impl ExtensionSolution {
    pub fn residual(&self) -> BigRational {
        self.coefficients
            .iter()
            .zip(&self.tuple.values)
            .map(|(a, &x)| a * BigRational::from_integer(x.into()))
            .sum()
    }

    pub fn extended_equation(&self) -> Result<LinearEquation> {
        LinearEquation::from_rationals(self.coefficients.clone())
    }
}

/// Appends `extra.len()` terms with rational coefficients `extra` to `eq`.
///
/// The new coordinates all equal `|a_1| d` and the first coordinate moves to
/// `y_1 - (b_1 + ... + b_k) d` (sign flipped when `a_1 < 0`). The shift must be
/// an integer; `d` is never rescaled to make it one.
pub fn build_theorem41_solution(
    eq: &LinearEquation,
    base: &SolutionTuple,
    extra: &[BigRational],
    d: u64,
) -> Result<ExtensionSolution> {
    check_solution(eq, base)?;
    if extra.is_empty() {
        return Err(Error::Precondition("at least one term must be appended".into()));
    }
    if d == 0 {
        return Err(Error::Precondition("d must be positive".into()));
    }
    let a1 = &eq.coeffs()[0];
    let sign_adjusted = a1.is_negative();
    let b_sum: BigRational = extra.iter().sum();
    let lambda1 = if sign_adjusted { b_sum } else { -b_sum };
    let shift = &lambda1 * BigRational::from_integer(d.into());
    if !shift.is_integer() {
        return Err(Error::NonIntegral(format!("first-coordinate shift {lambda1} * {d} = {shift}")));
    }
    let x1 = BigInt::from(base.values[0]) + shift.to_integer();
    let appended = to_u64(&(a1.abs() * BigInt::from(d)), eq.len())?;

    let mut values = base.values.clone();
    values[0] = to_u64(&x1, 0)?;
    values.extend(std::iter::repeat(appended).take(extra.len()));

    let mut coefficients: Vec<BigRational> = eq.coeffs().iter().cloned().map(BigRational::from_integer).collect();
    coefficients.extend(extra.iter().cloned());
    let sol = ExtensionSolution {
        coefficients,
        tuple: SolutionTuple::new(values),
        lambda1,
        step: d,
        appended,
        sign_adjusted,
    };
    if !sol.residual().is_zero() {
        return Err(Error::Verification(format!("extended residual {}", sol.residual())));
    }
    Ok(sol)
}

// ---------------------------------------------------------------------------
// One sign flip

/// A solution of `sum f(i) a_i x_i = 0` where at most one `f(i)` is `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperplaneSolution {
    pub tuple: SolutionTuple,
    pub flips: Vec<i8>,
    /// 0-based.
    pub flipped_index: Option<usize>,
    /// `|a_1 * ... * a_n|`.
    #[serde(with = "serde_decimal::int")]
    pub p: BigInt,
    pub i: usize,
    pub j: usize,
    pub k: u64,
    pub d: u64,
}

impl HyperplaneSolution {
    /// Coefficients with the flips applied.
    pub fn flipped_coefficients(&self, eq: &LinearEquation) -> Vec<BigInt> {
        eq.coeffs()
            .iter()
            .zip(&self.flips)
            .map(|(a, &f)| a * BigInt::from(f))
            .collect()
    }

    pub fn verify(&self, eq: &LinearEquation) -> Result<()> {
        let fail = |m: String| Err(Error::Verification(m));
        if self.flips.len() != eq.len() || self.tuple.values.len() != eq.len() {
            return fail("length mismatch".into());
        }
        if self.flips.iter().any(|&f| f != 1 && f != -1) {
            return fail(format!("flips {:?} must be +1 or -1", self.flips));
        }
        let flipped: Vec<usize> = (0..eq.len()).filter(|&t| self.flips[t] == -1).collect();
        if flipped.len() > 1 || flipped.first().copied() != self.flipped_index {
            return fail(format!("flips {:?} flip more than one sign", self.flips));
        }
        let p: BigInt = eq.coeffs().iter().product::<BigInt>().abs();
        if p != self.p {
            return fail(format!("P = {} but |a_1...a_n| = {p}", self.p));
        }
        if self.tuple.values.iter().any(|&x| x == 0) {
            return fail("zero coordinate".into());
        }
        let residual: BigInt = self
            .flipped_coefficients(eq)
            .iter()
            .zip(&self.tuple.values)
            .map(|(a, &x)| a * BigInt::from(x))
            .sum();
        if !residual.is_zero() {
            return fail(format!("flipped residual {residual}"));
        }
        Ok(())
    }
}

/// `l1 = -P * (sum of a_l, l != i, j) / (f(i) a_i)` and the flip of `i`.
/// Exact since `|a_i|` divides `P`.
pub fn theorem42_lambda(eq: &LinearEquation, i: usize, j: usize) -> (BigInt, i8) {
    let a = eq.coeffs();
    let p: BigInt = a.iter().product::<BigInt>().abs();
    let f_i: i8 = if a[i].is_negative() == a[j].is_negative() { -1 } else { 1 };
    let others: BigInt = a
        .iter()
        .enumerate()
        .filter(|&(t, _)| t != i && t != j)
        .map(|(_, c)| c.clone())
        .sum();
    let denom = &a[i] * BigInt::from(f_i);
    let num = -(p * others);
    debug_assert!((&num % &denom).is_zero());
    (num / denom, f_i)
}

/// Builds the solution from a pair `(|a_i| k, |a_j| k)` and step `d`:
/// `x_i = |a_j| k + l1 d`, `x_j = |a_i| k`, every other coordinate `P d`.
/// `i < j` are 0-based.
pub fn build_theorem42_solution(eq: &LinearEquation, i: usize, j: usize, k: u64, d: u64) -> Result<HyperplaneSolution> {
    let n = eq.len();
    if !(i < j && j < n) {
        return Err(Error::Precondition(format!("need i < j < {n}, got i = {i}, j = {j}")));
    }
    if k == 0 || d == 0 {
        return Err(Error::Precondition("k and d must be positive".into()));
    }
    let a = eq.coeffs();
    let p: BigInt = a.iter().product::<BigInt>().abs();
    let (l1, f_i) = theorem42_lambda(eq, i, j);
    let (k_big, d_big) = (BigInt::from(k), BigInt::from(d));

    let xi = a[j].abs() * &k_big + &l1 * &d_big;
    if !xi.is_positive() {
        // |a_j| k + l1 d >= 1
        let need = BigInt::one() - &l1 * &d_big;
        let aj = a[j].abs();
        let min_k = (&need + &aj - 1) / &aj;
        return Err(Error::Precondition(format!(
            "x{} = {xi} is not positive; k must be at least {min_k}",
            i + 1
        )));
    }
    let filler = &p * &d_big;
    let values = (0..n)
        .map(|t| {
            let v = if t == i {
                xi.clone()
            } else if t == j {
                a[i].abs() * &k_big
            } else {
                filler.clone()
            };
            to_u64(&v, t)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut flips = vec![1i8; n];
    flips[i] = f_i;
    let sol = HyperplaneSolution {
        tuple: SolutionTuple::with_lambdas(values, vec![l1, BigInt::zero()]),
        flipped_index: (f_i == -1).then_some(i),
        flips,
        p,
        i,
        j,
        k,
        d,
    };
    sol.verify(eq)?;
    Ok(sol)
}

// ---------------------------------------------------------------------------
// Pipelines from a coloring

fn check_palette(c: &Coloring, n: u32) -> Result<()> {
    if c.num_colors() + 1 > n {
        return Err(Error::Precondition(format!(
            "coloring has {} colors; the construction covers at most n - 1 = {}",
            c.num_colors(),
            n - 1
        )));
    }
    Ok(())
}

fn check_monochromatic(c: &Coloring, values: &[u64], color: Color) -> Result<()> {
    match c.is_monochromatic(values) {
        Some(got) if got == color => Ok(()),
        _ => Err(Error::Verification(format!("{values:?} is not monochromatic in color {color}"))),
    }
}

/// Provenance of a monochromatic solution of the power-of-two family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem1Proof {
    pub equation: LinearEquation,
    pub pigeonhole: PigeonholeWitness,
    pub fan: MonochromaticFan,
    #[serde(with = "serde_decimal::vec")]
    pub lambdas: Vec<BigInt>,
    pub tuple: SolutionTuple,
    pub color: Color,
}

impl Theorem1Proof {
    pub fn verify(&self, c: &Coloring) -> Result<()> {
        self.pigeonhole.verify(c)?;
        self.fan.verify(c)?;
        check_solution(&self.equation, &self.tuple)?;
        check_monochromatic(c, &self.tuple.values, self.color)?;
        if let Some(x) = self.tuple.values.iter().find(|&&x| !self.fan.contains(x)) {
            return Err(Error::Verification(format!("{x} is not an element of the fan")));
        }
        Ok(())
    }
}

/// Finds a monochromatic solution of the `n`-variable power-of-two family
/// under a coloring with at most `n - 1` colors: pigeonhole over powers of
/// two, a fan over pairs `(2^j b, b)` with radius `2^n` and extra element
/// `2^(n-1) d`, then the parametrization of [`build_theorem1_solution`].
pub fn prove_theorem1(c: &Coloring, n: u32, budget: FanBudget) -> Result<Theorem1Proof> {
    if !(2..=FAMILY_MAX_N).contains(&n) {
        return Err(Error::out_of_range("n", n, 2, FAMILY_MAX_N as i128));
    }
    check_palette(c, n)?;
    let pigeonhole = pigeonhole_powers(c, n)?;
    let family = HomogeneousFamily::power_pairs(n)?;
    let fan = find_fan(c, &family, 1 << n, 1 << (n - 1), budget)?;
    let Member::PowerPair { b, j } = fan.member else {
        unreachable!("power-pair family yields power-pair members");
    };
    let tuple = build_theorem1_solution(n, j, b, fan.step)?;
    let proof = Theorem1Proof {
        equation: family_equation(n)?,
        pigeonhole,
        lambdas: tuple.lambdas.clone().unwrap_or_default(),
        color: fan.color,
        fan,
        tuple,
    };
    proof.verify(c)?;
    Ok(proof)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtProof {
    pub equation: LinearEquation,
    pub pigeonhole: PigeonholeWitness,
    pub tuple: SolutionTuple,
    pub color: Color,
}

impl AtProof {
    pub fn verify(&self, c: &Coloring) -> Result<()> {
        self.pigeonhole.verify(c)?;
        check_solution(&self.equation, &self.tuple)?;
        check_monochromatic(c, &self.tuple.values, self.color)
    }
}

/// Monochromatic solution of [`at_equation`]`(n)`: a pair `x, 2^i x` of one
/// color among the powers of two, fed to [`build_at_solution`].
pub fn prove_at(c: &Coloring, n: u32) -> Result<AtProof> {
    if !(2..=AT_MAX_N).contains(&n) {
        return Err(Error::out_of_range("n", n, 2, AT_MAX_N as i128));
    }
    check_palette(c, n)?;
    let pigeonhole = pigeonhole_powers(c, n)?;
    let tuple = build_at_solution(n, pigeonhole.j, pigeonhole.x)?;
    let proof = AtProof {
        equation: at_equation(n)?,
        color: pigeonhole.color,
        pigeonhole,
        tuple,
    };
    proof.verify(c)?;
    Ok(proof)
}

/// Two coefficient magnitudes `|a_i|`, `|a_j|` of one color (0-based, `i < j`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientPigeonhole {
    pub i: usize,
    pub j: usize,
    pub color: Color,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperplaneProof {
    pub equation: LinearEquation,
    pub pigeonhole: CoefficientPigeonhole,
    pub fan: MonochromaticFan,
    pub solution: HyperplaneSolution,
    pub color: Color,
}

impl HyperplaneProof {
    pub fn verify(&self, c: &Coloring) -> Result<()> {
        self.fan.verify(c)?;
        self.solution.verify(&self.equation)?;
        check_monochromatic(c, &self.solution.tuple.values, self.color)?;
        if let Some(x) = self.solution.tuple.values.iter().find(|&&x| !self.fan.contains(x)) {
            return Err(Error::Verification(format!("{x} is not an element of the fan")));
        }
        Ok(())
    }
}

/// Monochromatic solution of `eq` with at most one coefficient sign flipped,
/// under a coloring with at most `n - 1` colors.
pub fn prove_hyperplane(c: &Coloring, eq: &LinearEquation, budget: FanBudget) -> Result<HyperplaneProof> {
    let n = eq.len();
    check_palette(c, n as u32)?;
    let family = HomogeneousFamily::coefficient_pairs(eq)?;
    let HomogeneousFamily::CoefficientPairs { magnitudes } = &family else {
        unreachable!();
    };
    let top = family.compactness_bound();
    if top > c.domain_bound() {
        return Err(Error::Precondition(format!(
            "domain [1, {}] does not contain max |a_i| = {top}",
            c.domain_bound()
        )));
    }
    let pigeonhole = (1..n)
        .find_map(|j| {
            let cj = c.color_unchecked(magnitudes[j]);
            (0..j)
                .find(|&i| c.color_unchecked(magnitudes[i]) == cj)
                .map(|i| CoefficientPigeonhole { i, j, color: cj })
        })
        .ok_or_else(|| Error::Precondition("coefficient magnitudes all have distinct colors".into()))?;

    let radius = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| theorem42_lambda(eq, i, j).0.abs())
        .max()
        .unwrap_or_default();
    let radius = radius
        .to_u64()
        .ok_or_else(|| Error::Overflow(format!("fan radius {radius}")))?;
    let p: BigInt = eq.coeffs().iter().product::<BigInt>().abs();
    let q = p.to_u64().ok_or_else(|| Error::Overflow(format!("P = {p}")))?;

    let fan = find_fan(c, &family, radius, q, budget)?;
    let Member::CoefficientPair { k, i, j } = fan.member else {
        unreachable!("coefficient-pair family yields coefficient-pair members");
    };
    let solution = build_theorem42_solution(eq, i, j, k, fan.step)?;
    let proof = HyperplaneProof {
        equation: eq.clone(),
        pigeonhole,
        color: fan.color,
        fan,
        solution,
    };
    proof.verify(c)?;
    Ok(proof)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::Family;

    fn eq(c: &[i64]) -> LinearEquation {
        LinearEquation::from_integers(c).unwrap()
    }

    #[test]
    fn theorem1_examples() {
        assert_eq!(build_theorem1_solution(3, 1, 1, 1).unwrap().values, vec![4, 8, 5]);
        assert_eq!(build_theorem1_solution(2, 1, 1, 1).unwrap().values, vec![6, 3]);
        assert!(build_theorem1_solution(3, 3, 1, 1).is_err());
        assert!(build_theorem1_solution(3, 0, 1, 1).is_err());
    }

    #[test]
    fn theorem1_lambda_identity() {
        for n in 2..=40u32 {
            for j in 1..n {
                let (l1, l2) = theorem1_lambdas(n, j);
                let rhs = pow2(n - 1) + pow2(j) - pow2(n - 1 + j);
                assert_eq!(&l1 - pow2(j) * &l2, rhs, "n = {n}, j = {j}");
                assert!(l1 <= pow2(n));
            }
        }
    }

    #[test]
    fn at_examples() {
        assert_eq!(build_at_solution(3, 1, 3).unwrap().values, vec![6, 3, 6]);
        assert_eq!(build_at_solution(2, 1, 1).unwrap().values, vec![2, 1]);
        let one = build_at_solution(5, 2, 7).unwrap();
        let five = build_at_solution(5, 2, 35).unwrap();
        assert!(one.values.iter().zip(&five.values).all(|(a, b)| 5 * a == *b));
    }

    #[test]
    fn theorem41_examples() {
        let schur = eq(&[1, 1, -1]);
        let one = [BigRational::one()];
        let err = build_theorem41_solution(&schur, &SolutionTuple::new(vec![1, 1, 2]), &one, 1).unwrap_err();
        assert!(matches!(err, Error::NonPositive { index: 0, .. }));

        let sol = build_theorem41_solution(&schur, &SolutionTuple::new(vec![3, 1, 4]), &one, 1).unwrap();
        assert_eq!(sol.tuple.values, vec![2, 1, 4, 1]);

        let zero = [BigRational::zero()];
        let sol = build_theorem41_solution(&schur, &SolutionTuple::new(vec![3, 1, 4]), &zero, 5).unwrap();
        assert_eq!(sol.tuple.values, vec![3, 1, 4, 5]);

        let half = BigRational::new(1.into(), 2.into());
        let halves = [half.clone(), half.clone()];
        let sol = build_theorem41_solution(&schur, &SolutionTuple::new(vec![3, 1, 4]), &halves, 2).unwrap();
        assert_eq!(sol.tuple.values, vec![1, 1, 4, 2, 2]);
        let err = build_theorem41_solution(&schur, &SolutionTuple::new(vec![3, 1, 4]), &[half], 1).unwrap_err();
        assert!(matches!(err, Error::NonIntegral(_)));
    }

    #[test]
    fn theorem41_negative_leading_coefficient() {
        // -x1 + x2 + x3 = 0 with base (2, 1, 1), b = 1
        let e = eq(&[-1, 1, 1]);
        let sol = build_theorem41_solution(&e, &SolutionTuple::new(vec![2, 1, 1]), &[BigRational::one()], 1).unwrap();
        assert!(sol.sign_adjusted);
        assert_eq!(sol.tuple.values, vec![3, 1, 1, 1]);
        assert!(sol.residual().is_zero());
    }

    #[test]
    fn theorem42_examples() {
        let sol = build_theorem42_solution(&eq(&[1, 1, 1]), 0, 1, 2, 1).unwrap();
        assert_eq!(sol.tuple.values, vec![3, 2, 1]);
        assert_eq!(sol.flips, vec![-1, 1, 1]);
        assert_eq!(sol.flipped_index, Some(0));

        for (k, d) in [(2u64, 1u64), (5, 3), (9, 8)] {
            let sol = build_theorem42_solution(&eq(&[1, 1, -1]), 0, 2, k, d).unwrap();
            assert_eq!(sol.flips, vec![1, 1, 1]);
            assert_eq!(sol.tuple.values, vec![k - d, d, k]);
        }
        let err = build_theorem42_solution(&eq(&[1, 1, -1]), 0, 2, 1, 1).unwrap_err();
        assert!(err.to_string().contains("k must be at least 2"), "{err}");
    }

    #[test]
    fn prove_theorem1_constant() {
        let k = Coloring::of_family(Family::Constant, 64).unwrap();
        let proof = prove_theorem1(&k, 2, FanBudget::default()).unwrap();
        proof.verify(&k).unwrap();
        assert!(proof.equation.is_solution(&proof.tuple.values));
    }

    #[test]
    fn prove_theorem1_mod2() {
        let m2 = Coloring::of_family(Family::Mod(2), 200).unwrap();
        let proof = prove_theorem1(&m2, 3, FanBudget::default()).unwrap();
        proof.verify(&m2).unwrap();
        assert_eq!(proof.color, 0);
        let v = crate::coloring::verify_avoiding(&m2, &family_equation(3).unwrap(), proof.tuple.max_value()).unwrap();
        assert!(!v.is_avoiding());
    }

    #[test]
    fn prove_theorem1_needs_small_palette() {
        let m3 = Coloring::of_family(Family::Mod(3), 200).unwrap();
        assert!(matches!(prove_theorem1(&m3, 3, FanBudget::default()), Err(Error::Precondition(_))));
    }

    #[test]
    fn prove_at_mod2() {
        let m2 = Coloring::of_family(Family::Mod(2), 4).unwrap();
        let proof = prove_at(&m2, 3).unwrap();
        assert_eq!(proof.tuple.values, vec![4, 2, 4]);
        proof.verify(&m2).unwrap();
    }

    #[test]
    fn prove_hyperplane_small() {
        let e = eq(&[1, 1, 1]);
        let m2 = Coloring::of_family(Family::Mod(2), 200).unwrap();
        let proof = prove_hyperplane(&m2, &e, FanBudget::default()).unwrap();
        proof.verify(&m2).unwrap();
    }
}
