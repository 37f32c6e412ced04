//! Single linear homogeneous equations `a1*x1 + ... + an*xn = 0`.
//!
//! Equations are kept in a canonical integer form: rational coefficients are
//! cleared by the LCM of their denominators and then divided by the gcd of
//! the result. The overall sign is never flipped, since sign-flip
//! constructions depend on the signs as given.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::serde_decimal;

/// Largest `n` accepted by [`family_equation`]; `2^(n-1)` must fit in `i64`.
pub const FAMILY_MAX_N: u32 = 62;
/// Largest `n` accepted by [`at_equation`].
pub const AT_MAX_N: u32 = 30;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearEquation {
    coeffs: Vec<BigInt>,
    scale: BigRational,
}

impl LinearEquation {
    /// Canonicalizes rational coefficients.
    pub fn from_rationals(coeffs: Vec<BigRational>) -> Result<Self> {
        if let Some(index) = coeffs.iter().position(Zero::is_zero) {
            return Err(Error::ZeroCoefficient { index });
        }
        if coeffs.len() < 2 {
            return Err(Error::TooFewTerms(coeffs.len()));
        }
        let lcm = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let cleared: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let gcd = cleared.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let coeffs = cleared.into_iter().map(|c| c / &gcd).collect();
        Ok(Self {
            coeffs,
            scale: BigRational::new(lcm, gcd),
        })
    }

    pub fn from_big_integers(coeffs: Vec<BigInt>) -> Result<Self> {
        Self::from_rationals(coeffs.into_iter().map(BigRational::from_integer).collect())
    }

    pub fn from_integers(coeffs: &[i64]) -> Result<Self> {
        Self::from_big_integers(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Number of variables.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Factor the input coefficients were multiplied by to reach canonical form.
    pub fn scale(&self) -> &BigRational {
        &self.scale
    }

    /// Coefficients as machine integers, for the enumeration hot paths.
    pub fn small_coeffs(&self) -> Result<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|c| {
                c.to_i64()
                    .ok_or_else(|| Error::Overflow(format!("coefficient {c} does not fit in 64 bits")))
            })
            .collect()
    }

    /// `sum a_i * x_i`, computed exactly. Missing or extra values are an error
    /// of the caller; they are reported as a panic.
    pub fn residual(&self, values: &[u64]) -> BigInt {
        assert_eq!(values.len(), self.len(), "tuple length does not match equation");
        self.coeffs
            .iter()
            .zip(values)
            .map(|(a, &x)| a * BigInt::from(x))
            .sum()
    }

    pub fn is_solution(&self, values: &[u64]) -> bool {
        values.len() == self.len() && values.iter().all(|&x| x >= 1) && self.residual(values).is_zero()
    }

    /// Comma-separated canonical coefficients, e.g. `1,2,-4`.
    pub fn render(&self) -> String {
        self.coeffs
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Expression form, e.g. `x1 + 2*x2 - 4*x3 = 0`.
    pub fn render_expression(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&format!("x{}", i + 1));
        }
        out.push_str(" = 0");
        out
    }
}

impl fmt::Display for LinearEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_expression())
    }
}

impl FromStr for LinearEquation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_equation(s)
    }
}

/// Serialized as the canonical coefficients, a JSON array of decimal strings.
impl Serialize for LinearEquation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serde_decimal::vec::serialize(&self.coeffs, serializer)
    }
}

impl<'de> Deserialize<'de> for LinearEquation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let coeffs = serde_decimal::vec::deserialize(deserializer)?;
        LinearEquation::from_big_integers(coeffs).map_err(serde::de::Error::custom)
    }
}

/// A positive integer solution, plus the parameters of the construction
/// that produced it, if any.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SolutionTuple {
    pub values: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "serde_decimal::opt_vec")]
    pub lambdas: Option<Vec<BigInt>>,
}

impl SolutionTuple {
    pub fn new(values: Vec<u64>) -> Self {
        Self { values, lambdas: None }
    }

    pub fn with_lambdas(values: Vec<u64>, lambdas: Vec<BigInt>) -> Self {
        Self {
            values,
            lambdas: Some(lambdas),
        }
    }

    pub fn max_value(&self) -> u64 {
        self.values.iter().copied().max().unwrap_or(0)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.values.len());
        self.values.iter().all(|x| seen.insert(*x))
    }
}

// ---------------------------------------------------------------------------
// Parsing

/// Parses either a comma-separated coefficient list (`1/2, 1/3, -1`) or an
/// expression (`x1 + 2x2 - 4*x3 = 0`) into canonical form.
pub fn parse_equation(text: &str) -> Result<LinearEquation> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    let coeffs = if text.contains('=') || text.chars().any(|c| c.is_ascii_alphabetic()) {
        parse_expression(text)?
    } else {
        text.split(',')
            .map(|tok| parse_rational(tok.trim()))
            .collect::<Result<Vec<_>>>()?
    };
    LinearEquation::from_rationals(coeffs)
}

fn parse_rational(tok: &str) -> Result<BigRational> {
    if tok.is_empty() {
        return Err(Error::Parse("empty coefficient".into()));
    }
    let (num, den) = match tok.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (tok, None),
    };
    let num = parse_signed(num)?;
    let den = match den {
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse(format!("bad denominator in `{tok}`")));
            }
            let d = BigInt::from_str(d).map_err(|_| Error::Parse(format!("bad denominator in `{tok}`")))?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{tok}`")));
            }
            d
        }
        None => BigInt::one(),
    };
    Ok(BigRational::new(num, den))
}

fn parse_signed(s: &str) -> Result<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("`{s}` is not an integer")));
    }
    BigInt::from_str(s).map_err(|_| Error::Parse(format!("`{s}` is not an integer")))
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.bump();
        }
        &self.src[start..self.pos]
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn unsigned_rational(&mut self) -> Result<BigRational> {
        let num = self.take_while(|c| c.is_ascii_digit());
        self.skip_ws();
        if self.eat('/') {
            self.skip_ws();
            let den = self.take_while(|c| c.is_ascii_digit());
            parse_rational(&format!("{num}/{den}"))
        } else {
            parse_rational(num)
        }
    }
}

fn parse_expression(text: &str) -> Result<Vec<BigRational>> {
    let (lhs, rhs) = match text.split_once('=') {
        Some((l, r)) => (l, Some(r.trim())),
        None => (text, None),
    };
    if let Some(rhs) = rhs {
        if rhs.contains('=') {
            return Err(Error::Parse("more than one `=`".into()));
        }
        let zero = parse_rational(rhs).map(|r| r.is_zero()).unwrap_or(false);
        if !zero {
            return Err(Error::NonZeroRhs(rhs.to_string()));
        }
    }

    let mut cur = Cursor { src: lhs, pos: 0 };
    let mut names: Vec<&str> = Vec::new();
    let mut coeffs = Vec::new();
    loop {
        cur.skip_ws();
        let negative = if cur.eat('-') {
            true
        } else if cur.eat('+') {
            false
        } else if coeffs.is_empty() {
            false
        } else {
            return Err(Error::Parse(format!(
                "expected `+` or `-` at offset {} of `{lhs}`",
                cur.pos
            )));
        };
        cur.skip_ws();

        let mut coeff = if cur.eat('(') {
            cur.skip_ws();
            let inner_neg = cur.eat('-');
            cur.skip_ws();
            let r = cur.unsigned_rational()?;
            cur.skip_ws();
            if !cur.eat(')') {
                return Err(Error::Parse("unbalanced parenthesis".into()));
            }
            if inner_neg {
                -r
            } else {
                r
            }
        } else if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
            cur.unsigned_rational()?
        } else {
            BigRational::one()
        };
        cur.skip_ws();
        cur.eat('*');
        cur.skip_ws();

        if !cur.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            return Err(Error::Parse(format!(
                "term {} has no variable (equation must be homogeneous)",
                coeffs.len() + 1
            )));
        }
        let name = cur.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
        if names.contains(&name) {
            return Err(Error::Parse(format!("variable `{name}` appears twice")));
        }
        names.push(name);
        if negative {
            coeff = -coeff;
        }
        coeffs.push(coeff);

        cur.skip_ws();
        if cur.at_end() {
            break;
        }
    }
    Ok(coeffs)
}

// ---------------------------------------------------------------------------
// Builtin families

/// `x1 + 2*x2 + ... + 2^(n-2)*x_{n-1} - 2^(n-1)*x_n = 0`.
pub fn family_equation(n: u32) -> Result<LinearEquation> {
    if !(2..=FAMILY_MAX_N).contains(&n) {
        return Err(Error::out_of_range("n", n, 2, FAMILY_MAX_N as i128));
    }
    let mut coeffs: Vec<i64> = (0..n - 1).map(|i| 1i64 << i).collect();
    coeffs.push(-(1i64 << (n - 1)));
    LinearEquation::from_integers(&coeffs)
}

/// The equation with rational coefficients
/// `(1 - sum_{i<n} 2^i/(2^i-1)) x1 + sum_{i<n} 2^i/(2^i-1) x_{i+1} = 0`,
/// in canonical integer form.
pub fn at_equation(n: u32) -> Result<LinearEquation> {
    if !(2..=AT_MAX_N).contains(&n) {
        return Err(Error::out_of_range("n", n, 2, AT_MAX_N as i128));
    }
    let ratios: Vec<BigRational> = (1..n)
        .map(|i| {
            let p = BigInt::one() << i;
            BigRational::new(p.clone(), p - 1)
        })
        .collect();
    let first = BigRational::one() - ratios.iter().sum::<BigRational>();
    let mut coeffs = Vec::with_capacity(n as usize);
    coeffs.push(first);
    coeffs.extend(ratios);
    LinearEquation::from_rationals(coeffs)
}

// ---------------------------------------------------------------------------
// Rado's criterion

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Regularity {
    pub regular: bool,
    /// 0-based indices of the lexicographically first zero-sum subset.
    pub subset: Option<Vec<usize>>,
}

/// Cap on the total size of the suffix sum sets before switching to
/// meet-in-the-middle queries.
const REACH_CAP: usize = 1 << 20;

/// Decides whether some nonempty subset of the coefficients sums to zero.
///
/// Walks index subsets in lexicographic order, greedily taking the first
/// index after which the remaining suffix can still reach zero. Suffix
/// reachability comes from sum sets trimmed to the window a prefix could
/// still cancel (small for the builtin families), or, when those grow past
/// [`REACH_CAP`], from meet-in-the-middle queries. The worst case is
/// exponential, as for any subset-sum procedure.
pub fn is_regular(eq: &LinearEquation) -> Regularity {
    let a = eq.coeffs();
    let oracle = match SuffixReach::trimmed(a, REACH_CAP) {
        Some(reach) => Reach::Sets(reach),
        None => Reach::Split(a),
    };

    let n = a.len();
    let mut subset = Vec::new();
    let mut sum = BigInt::zero();
    let mut start = 0;
    loop {
        let step = (start..n).find(|&m| oracle.reaches(m + 1, &-(&sum + &a[m])));
        match step {
            Some(m) => {
                sum += &a[m];
                subset.push(m);
                if sum.is_zero() {
                    return Regularity {
                        regular: true,
                        subset: Some(subset),
                    };
                }
                start = m + 1;
            }
            None => {
                debug_assert!(subset.is_empty());
                return Regularity {
                    regular: false,
                    subset: None,
                };
            }
        }
    }
}

enum Reach<'a> {
    Sets(SuffixReach),
    Split(&'a [BigInt]),
}

impl Reach<'_> {
    /// Whether some subset (possibly empty) of `a[t..]` sums to `target`.
    fn reaches(&self, t: usize, target: &BigInt) -> bool {
        match self {
            Reach::Sets(r) => r.sets[t].contains(target),
            Reach::Split(a) => subset_sum_exists(&a[t..], target),
        }
    }
}

struct SuffixReach {
    sets: Vec<HashSet<BigInt>>,
}

impl SuffixReach {
    /// `sets[t]` holds the subset sums of `a[t..]` that some subset of
    /// `a[..t]` could cancel, i.e. those in `[-pos(a[..t]), -neg(a[..t])]`.
    /// Gives up once the sets hold more than `cap` values in total.
    fn trimmed(a: &[BigInt], cap: usize) -> Option<Self> {
        let n = a.len();
        let mut prefix_pos = vec![BigInt::zero(); n + 1];
        let mut prefix_neg = vec![BigInt::zero(); n + 1];
        for (t, c) in a.iter().enumerate() {
            prefix_pos[t + 1] = &prefix_pos[t] + if c.is_positive() { c.clone() } else { BigInt::zero() };
            prefix_neg[t + 1] = &prefix_neg[t] + if c.is_negative() { c.clone() } else { BigInt::zero() };
        }
        let mut sets: Vec<HashSet<BigInt>> = vec![HashSet::new(); n + 1];
        sets[n].insert(BigInt::zero());
        let mut total = 1;
        for t in (1..n).rev() {
            let lo = -&prefix_pos[t];
            let hi = -&prefix_neg[t];
            let mut next = HashSet::with_capacity(sets[t + 1].len() * 2);
            for v in &sets[t + 1] {
                for cand in [v.clone(), v + &a[t]] {
                    if cand >= lo && cand <= hi {
                        next.insert(cand);
                    }
                }
            }
            total += next.len();
            if total > cap {
                return None;
            }
            sets[t] = next;
        }
        Some(Self { sets })
    }
}

/// Meet in the middle: does some subset (possibly empty) of `items` sum to
/// `target`?
fn subset_sum_exists(items: &[BigInt], target: &BigInt) -> bool {
    fn all_sums(items: &[BigInt]) -> Vec<BigInt> {
        let mut sums = vec![BigInt::zero()];
        for x in items {
            let shifted: Vec<BigInt> = sums.iter().map(|s| s + x).collect();
            sums.extend(shifted);
        }
        sums
    }
    let (left, right) = items.split_at(items.len() / 2);
    let right: HashSet<BigInt> = all_sums(right).into_iter().collect();
    all_sums(left).iter().any(|s| right.contains(&(target - s)))
}

// ---------------------------------------------------------------------------
// Bounded solution enumeration

#[derive(Clone, Copy, Debug, Default)]
struct Frame {
    next: i64,
    end: i64,
    tail_max: bool,
}

impl Frame {
    fn pop(&mut self, max_element: i64) -> Option<i64> {
        if self.next <= self.end {
            let v = self.next;
            self.next += 1;
            Some(v)
        } else if self.tail_max {
            self.tail_max = false;
            Some(max_element)
        } else {
            None
        }
    }
}

const EMPTY_LO: i128 = i128::MAX / 4;
const EMPTY_HI: i128 = i128::MIN / 4;

/// Depth-first solution enumerator over a box `[1, hi]^n`, optionally
/// restricted to tuples whose maximum equals `hi`.
///
/// Each coordinate's candidate range is cut down to the values for which the
/// remaining suffix can still cancel the partial sum, so the last coordinate
/// is always solved for directly.
#[derive(Clone, Debug)]
pub struct SolutionCursor {
    coeffs: Vec<i64>,
    hi: i64,
    require_max: bool,
    plain_lo: Vec<i128>,
    plain_hi: Vec<i128>,
    with_lo: Vec<i128>,
    with_hi: Vec<i128>,
    values: Vec<u64>,
    frames: Vec<Frame>,
    sums: Vec<i128>,
    has_max: Vec<bool>,
    depth: usize,
    started: bool,
    done: bool,
}

impl SolutionCursor {
    /// All solutions in `[1, max_value]^n`.
    pub fn new(coeffs: Vec<i64>, max_value: u64) -> Result<Self> {
        Self::build(coeffs, max_value, false)
    }

    /// Solutions in `[1, m]^n` with at least one coordinate equal to `m`.
    pub fn with_max_element(coeffs: Vec<i64>, m: u64) -> Result<Self> {
        Self::build(coeffs, m, true)
    }

    fn build(coeffs: Vec<i64>, hi: u64, require_max: bool) -> Result<Self> {
        let n = coeffs.len();
        let mut cursor = Self {
            coeffs,
            hi: 0,
            require_max,
            plain_lo: vec![0; n + 1],
            plain_hi: vec![0; n + 1],
            with_lo: vec![EMPTY_LO; n + 1],
            with_hi: vec![EMPTY_HI; n + 1],
            values: vec![0; n],
            frames: vec![Frame::default(); n],
            sums: vec![0; n + 1],
            has_max: vec![false; n + 1],
            depth: 0,
            started: false,
            done: false,
        };
        cursor.reset(hi)?;
        Ok(cursor)
    }

    /// Restarts the enumeration with a new box bound (or required maximum).
    pub fn reset(&mut self, hi: u64) -> Result<()> {
        let overflow = || Error::Overflow(format!("|coefficients| * {hi} exceeds the 64-bit range"));
        let hi_i = i64::try_from(hi).map_err(|_| overflow())?;
        self.coeffs
            .iter()
            .try_fold(0i64, |acc, &a| a.checked_abs()?.checked_mul(hi_i)?.checked_add(acc))
            .ok_or_else(overflow)?;

        self.hi = hi_i;
        let n = self.coeffs.len();
        let hi = hi_i as i128;
        for t in (0..n).rev() {
            let a = self.coeffs[t] as i128;
            let (lo_t, hi_t) = if a > 0 { (a, a * hi) } else { (a * hi, a) };
            self.plain_lo[t] = self.plain_lo[t + 1] + lo_t;
            self.plain_hi[t] = self.plain_hi[t + 1] + hi_t;
            let pinned = a * hi;
            self.with_lo[t] = (pinned + self.plain_lo[t + 1]).min(lo_t + self.with_lo[t + 1]);
            self.with_hi[t] = (pinned + self.plain_hi[t + 1]).max(hi_t + self.with_hi[t + 1]);
        }
        self.started = false;
        self.done = n == 0 || hi_i < 1;
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.coeffs.len()
    }

    /// Values of coordinate `t` compatible with partial sum `s` when the
    /// suffix after `t` ranges over `[rest_lo, rest_hi]`, clipped to `[1, cap]`.
    fn window(&self, t: usize, s: i128, rest_lo: i128, rest_hi: i128, cap: i64) -> (i64, i64) {
        if rest_lo > rest_hi || cap < 1 {
            return (1, 0);
        }
        let a = self.coeffs[t] as i128;
        let (lo, hi) = (-s - rest_hi, -s - rest_lo);
        let (xlo, xhi) = if a > 0 {
            (Integer::div_ceil(&lo, &a), Integer::div_floor(&hi, &a))
        } else {
            (Integer::div_ceil(&hi, &a), Integer::div_floor(&lo, &a))
        };
        let xlo = xlo.max(1);
        let xhi = xhi.min(cap as i128);
        if xlo > xhi {
            (1, 0)
        } else {
            (xlo as i64, xhi as i64)
        }
    }

    fn open_frame(&mut self, t: usize) {
        let s = self.sums[t];
        let frame = if self.require_max && !self.has_max[t] {
            let (next, end) = self.window(t, s, self.with_lo[t + 1], self.with_hi[t + 1], self.hi - 1);
            let pinned = -(s + self.coeffs[t] as i128 * self.hi as i128);
            let tail_max = pinned >= self.plain_lo[t + 1] && pinned <= self.plain_hi[t + 1];
            Frame { next, end, tail_max }
        } else {
            let (next, end) = self.window(t, s, self.plain_lo[t + 1], self.plain_hi[t + 1], self.hi);
            Frame {
                next,
                end,
                tail_max: false,
            }
        };
        self.frames[t] = frame;
    }

    /// Advances to the next solution in lexicographic order.
    pub fn next_values(&mut self) -> Option<&[u64]> {
        if self.done {
            return None;
        }
        let n = self.coeffs.len();
        if !self.started {
            self.started = true;
            self.depth = 0;
            self.open_frame(0);
        }
        loop {
            let t = self.depth;
            match self.frames[t].pop(self.hi) {
                Some(v) => {
                    self.values[t] = v as u64;
                    self.sums[t + 1] = self.sums[t] + self.coeffs[t] as i128 * v as i128;
                    self.has_max[t + 1] = self.has_max[t] || v == self.hi;
                    if t + 1 == n {
                        debug_assert_eq!(self.sums[n], 0);
                        return Some(&self.values);
                    }
                    self.depth = t + 1;
                    self.open_frame(t + 1);
                }
                None => {
                    if t == 0 {
                        self.done = true;
                        return None;
                    }
                    self.depth = t - 1;
                }
            }
        }
    }
}

/// Iterator over [`SolutionTuple`]s; see [`enumerate_solutions`].
#[derive(Clone, Debug)]
pub struct Solutions {
    cursor: SolutionCursor,
}

impl Iterator for Solutions {
    type Item = SolutionTuple;

    fn next(&mut self) -> Option<SolutionTuple> {
        self.cursor.next_values().map(|v| SolutionTuple::new(v.to_vec()))
    }
}

/// Every solution in `[1, max_value]^n` in lexicographic order. With
/// `max_element = Some(m)`, only those whose largest coordinate is exactly `m`.
pub fn enumerate_solutions(eq: &LinearEquation, max_value: u64, max_element: Option<u64>) -> Result<Solutions> {
    if max_value < 1 {
        return Err(Error::out_of_range("max_value", max_value, 1, i64::MAX as i128));
    }
    let coeffs = eq.small_coeffs()?;
    let cursor = match max_element {
        Some(m) if m > max_value => {
            let mut c = SolutionCursor::new(coeffs, 1)?;
            c.done = true;
            c
        }
        Some(m) => SolutionCursor::with_max_element(coeffs, m)?,
        None => SolutionCursor::new(coeffs, max_value)?,
    };
    Ok(Solutions { cursor })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(eq: &LinearEquation) -> Vec<i64> {
        eq.small_coeffs().unwrap()
    }

    #[test]
    fn parses_expression_form() {
        let eq = parse_equation("x1 + 2x2 - 4x3 = 0").unwrap();
        assert_eq!(ints(&eq), vec![1, 2, -4]);
        assert!(eq.scale().is_one());

        let eq = parse_equation("3*x - 6*y + 9*z = 0").unwrap();
        assert_eq!(ints(&eq), vec![1, -2, 3]);
        assert_eq!(eq.scale(), &BigRational::new(1.into(), 3.into()));

        let eq = parse_equation("-(1/2)a + b").unwrap();
        assert_eq!(ints(&eq), vec![-1, 2]);
    }

    #[test]
    fn parses_rational_list() {
        let eq = parse_equation("1/2, 1/3, -1").unwrap();
        assert_eq!(ints(&eq), vec![3, 2, -6]);
        assert_eq!(eq.scale(), &BigRational::from_integer(6.into()));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_equation("0,1,-1"), Err(Error::ZeroCoefficient { index: 0 })));
        assert!(matches!(parse_equation("x1 + 0*x2 = 0"), Err(Error::ZeroCoefficient { index: 1 })));
        assert!(matches!(parse_equation("5"), Err(Error::TooFewTerms(1))));
        assert!(matches!(parse_equation("x1 = 0"), Err(Error::TooFewTerms(1))));
        assert!(matches!(parse_equation("x1 + x2 = 3"), Err(Error::NonZeroRhs(_))));
        assert!(matches!(parse_equation("x1 + x2 + 3 = 0"), Err(Error::Parse(_))));
        assert!(matches!(parse_equation("x1 + x1 = 0"), Err(Error::Parse(_))));
        assert!(matches!(parse_equation("1,,2"), Err(Error::Parse(_))));
        assert!(matches!(parse_equation("1/0,2"), Err(Error::Parse(_))));
        assert!(matches!(parse_equation("1,2a"), Err(Error::Parse(_))));
        assert!(matches!(parse_equation(""), Err(Error::Parse(_))));
    }

    #[test]
    fn canonicalization_keeps_sign_and_order() {
        let eq = LinearEquation::from_integers(&[-4, 2, -6]).unwrap();
        assert_eq!(ints(&eq), vec![-2, 1, -3]);
    }

    #[test]
    fn renders_both_forms() {
        let eq = LinearEquation::from_integers(&[-1, 1, 3]).unwrap();
        assert_eq!(eq.render(), "-1,1,3");
        assert_eq!(eq.render_expression(), "-x1 + x2 + 3*x3 = 0");
        assert_eq!(parse_equation(&eq.render_expression()).unwrap(), eq);
    }

    #[test]
    fn json_is_decimal_strings() {
        let eq = family_equation(3).unwrap();
        let json = serde_json::to_string(&eq).unwrap();
        assert_eq!(json, r#"["1","2","-4"]"#);
        let back: LinearEquation = serde_json::from_str(&json).unwrap();
        assert_eq!(back, eq);
    }

    #[test]
    fn family_instances() {
        assert_eq!(ints(&family_equation(2).unwrap()), vec![1, -2]);
        assert_eq!(ints(&family_equation(3).unwrap()), vec![1, 2, -4]);
        assert_eq!(ints(&family_equation(4).unwrap()), vec![1, 2, 4, -8]);
        let big = family_equation(62).unwrap();
        assert_eq!(big.coeffs()[61], BigInt::from(-(1i64 << 61)));
        assert!(family_equation(1).is_err());
        assert!(family_equation(63).is_err());
    }

    #[test]
    fn at_instances() {
        assert_eq!(ints(&at_equation(2).unwrap()), vec![-1, 2]);
        let eq3 = at_equation(3).unwrap();
        assert_eq!(ints(&eq3), vec![-7, 6, 4]);
        assert_eq!(eq3.scale(), &BigRational::from_integer(3.into()));
        assert!(at_equation(30).is_ok());
        assert!(at_equation(31).is_err());
    }

    #[test]
    fn regularity_examples() {
        let r = is_regular(&LinearEquation::from_integers(&[1, 1, -1]).unwrap());
        assert_eq!(r.subset, Some(vec![0, 2]));
        let r = is_regular(&LinearEquation::from_integers(&[1, 2, -4]).unwrap());
        assert!(!r.regular);
        let r = is_regular(&LinearEquation::from_integers(&[2, 3, -5]).unwrap());
        assert_eq!(r.subset, Some(vec![0, 1, 2]));
    }

    #[test]
    fn large_families_are_decided_quickly() {
        assert!(!is_regular(&family_equation(62).unwrap()).regular);
        assert!(!is_regular(&at_equation(30).unwrap()).regular);
    }

    #[test]
    fn enumerate_small_examples() {
        let eq = LinearEquation::from_integers(&[1, 2, -4]).unwrap();
        let sols: Vec<_> = enumerate_solutions(&eq, 4, None).unwrap().map(|s| s.values).collect();
        // brute force over [1,4]^3 finds four, not two
        assert_eq!(sols, vec![vec![2, 1, 1], vec![2, 3, 2], vec![4, 2, 2], vec![4, 4, 3]]);

        let eq = LinearEquation::from_integers(&[1, 1, 1]).unwrap();
        assert_eq!(enumerate_solutions(&eq, 50, None).unwrap().count(), 0);

        let eq = LinearEquation::from_integers(&[1, 1, -1]).unwrap();
        let sols: Vec<_> = enumerate_solutions(&eq, 4, Some(4)).unwrap().map(|s| s.values).collect();
        assert_eq!(sols, vec![vec![1, 3, 4], vec![2, 2, 4], vec![3, 1, 4]]);
        assert_eq!(enumerate_solutions(&eq, 4, Some(5)).unwrap().count(), 0);
    }

    #[test]
    fn enumerate_rejects_overflow() {
        let eq = family_equation(62).unwrap();
        assert!(matches!(enumerate_solutions(&eq, 1 << 10, None), Err(Error::Overflow(_))));
    }
}
