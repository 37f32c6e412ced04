//! Searches for the monochromatic structures behind the regularity proofs:
//! pairs `x, 2^j x` among powers of two, arithmetic progressions, product
//! colorings, and fans `{b + l*d : b in B, |l| <= M} + {q*d}`.
//!
//! Every search takes explicit bounds and reports [`Error::BudgetExhausted`]
//! when they run out. Each returned object has a `verify` method that
//! re-checks it against the coloring without reusing the search code.

use std::collections::HashMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::coloring::{Color, Coloring};
use crate::equation::LinearEquation;
use crate::error::{Error, Exhaustion, Result};

fn verify_fail(msg: String) -> Error {
    Error::Verification(msg)
}

fn color_checked(c: &Coloring, x: i128) -> Result<Color> {
    if x < 1 || x > c.domain_bound() as i128 {
        return Err(verify_fail(format!("{x} lies outside [1, {}]", c.domain_bound())));
    }
    c.color_of(x as u64)
}

// ---------------------------------------------------------------------------
// Pigeonhole over powers of two

/// `x` and `2^j * x` share a color.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PigeonholeWitness {
    pub x: u64,
    pub j: u32,
    pub color: Color,
}

impl PigeonholeWitness {
    pub fn partner(&self) -> u64 {
        self.x << self.j
    }

    pub fn verify(&self, c: &Coloring) -> Result<()> {
        if self.j == 0 || self.j >= 64 {
            return Err(verify_fail(format!("exponent j = {} not positive", self.j)));
        }
        let partner = (self.x as u128) << self.j;
        let cx = color_checked(c, self.x as i128)?;
        let cp = color_checked(c, partner as i128)?;
        if cx != self.color || cp != self.color {
            return Err(verify_fail(format!(
                "c({}) = {cx}, c({partner}) = {cp}, claimed {}",
                self.x, self.color
            )));
        }
        Ok(())
    }
}

/// Scans `1, 2, 4, ..., 2^(n-1)` and stops at the first power whose color
/// was already seen, returning that earlier power as `x`.
///
/// Cannot fail when the coloring has at most `n - 1` colors.
pub fn pigeonhole_powers(c: &Coloring, n: u32) -> Result<PigeonholeWitness> {
    if !(2..=63).contains(&n) {
        return Err(Error::out_of_range("n", n, 2, 63));
    }
    let top = 1u64 << (n - 1);
    if c.domain_bound() < top {
        return Err(Error::Precondition(format!(
            "domain [1, {}] does not contain 2^(n-1) = {top}",
            c.domain_bound()
        )));
    }
    let mut first_seen: HashMap<Color, u32> = HashMap::new();
    for t in 0..n {
        let color = c.color_unchecked(1 << t);
        if let Some(&s) = first_seen.get(&color) {
            return Ok(PigeonholeWitness {
                x: 1 << s,
                j: t - s,
                color,
            });
        }
        first_seen.insert(color, t);
    }
    Err(Error::Precondition(format!(
        "the {n} powers 1..2^{} all have distinct colors (coloring uses {} >= n colors)",
        n - 1,
        c.num_colors()
    )))
}

// ---------------------------------------------------------------------------
// Arithmetic progressions

/// The progression `center + l*step` for `|l| <= half_length`, one color.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct APWitness {
    pub center: u64,
    pub step: u64,
    pub half_length: u64,
    pub color: Color,
}

impl APWitness {
    pub fn len(&self) -> u64 {
        2 * self.half_length + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> u64 {
        self.center - self.half_length * self.step
    }

    pub fn verify(&self, c: &Coloring) -> Result<()> {
        if self.step == 0 {
            return Err(verify_fail("progression step is zero".into()));
        }
        let k = self.half_length as i128;
        for l in -k..=k {
            let x = self.center as i128 + l * self.step as i128;
            let got = color_checked(c, x)?;
            if got != self.color {
                return Err(verify_fail(format!("c({x}) = {got}, progression color {}", self.color)));
            }
        }
        Ok(())
    }
}

/// `runs[x]` = length of the monochromatic run `..., x - 2d, x - d, x` ending
/// at `x`, for `x` in `1..=bound` (index 0 unused).
fn runs_for_step(c: &Coloring, bound: u64, d: u64, runs: &mut Vec<u32>) {
    runs.clear();
    runs.resize(bound as usize + 1, 0);
    for x in 1..=bound {
        runs[x as usize] = if x > d && c.color_unchecked(x) == c.color_unchecked(x - d) {
            runs[(x - d) as usize].saturating_add(1)
        } else {
            1
        };
    }
}

/// Finds the monochromatic progression of the given (odd) length inside
/// `[1, search_bound]` that is smallest by `(step, center)`.
pub fn find_monochromatic_ap(c: &Coloring, length: u64, search_bound: u64) -> Result<Option<APWitness>> {
    if length % 2 == 0 {
        return Err(Error::Precondition(format!("progression length {length} must be odd")));
    }
    if search_bound > c.domain_bound() {
        return Err(Error::out_of_range("search_bound", search_bound, 1, c.domain_bound() as i128));
    }
    if search_bound == 0 {
        return Ok(None);
    }
    let k = (length - 1) / 2;
    if k == 0 {
        return Ok(Some(APWitness {
            center: 1,
            step: 1,
            half_length: 0,
            color: c.color_unchecked(1),
        }));
    }
    let max_step = (search_bound - 1) / (2 * k);
    let mut runs = Vec::new();
    for d in 1..=max_step {
        runs_for_step(c, search_bound, d, &mut runs);
        if let Some(end) = (1..=search_bound).find(|&x| runs[x as usize] as u64 >= length) {
            let center = end - k * d;
            return Ok(Some(APWitness {
                center,
                step: d,
                half_length: k,
                color: c.color_unchecked(center),
            }));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Product colorings

/// The coloring on `[1, N/R]` where `a` and `b` match iff
/// `c(a*i) = c(b*i)` for every `1 <= i <= R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductColoring {
    pub multiplier_bound: u64,
    pub coloring: Coloring,
    /// `signatures[k]` is the vector `(c(a), c(2a), ..., c(Ra))` shared by
    /// every `a` of product color `k`. Colors are numbered by first appearance.
    pub signatures: Vec<Vec<Color>>,
}

pub fn signature(c: &Coloring, a: u64, multiplier_bound: u64) -> Vec<Color> {
    (1..=multiplier_bound).map(|i| c.color_unchecked(a * i)).collect()
}

pub fn product_coloring(c: &Coloring, multiplier_bound: u64) -> Result<ProductColoring> {
    if multiplier_bound == 0 {
        return Err(Error::Precondition("multiplier bound R must be positive".into()));
    }
    let domain = c.domain_bound() / multiplier_bound;
    if domain == 0 {
        return Err(Error::Precondition(format!(
            "domain [1, {}] too small for R = {multiplier_bound}",
            c.domain_bound()
        )));
    }
    let mut index: HashMap<Vec<Color>, Color> = HashMap::new();
    let mut signatures = Vec::new();
    let mut colors = Vec::with_capacity(domain as usize);
    for a in 1..=domain {
        let sig = signature(c, a, multiplier_bound);
        let next = signatures.len() as Color;
        let k = *index.entry(sig.clone()).or_insert_with(|| {
            signatures.push(sig);
            next
        });
        colors.push(k);
    }
    let coloring = Coloring::explicit(signatures.len() as u32, colors)?;
    Ok(ProductColoring {
        multiplier_bound,
        coloring,
        signatures,
    })
}

// ---------------------------------------------------------------------------
// Homogeneous families and fans

/// The two scale-invariant families of pairs the constructions use.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum HomogeneousFamily {
    /// Pairs `(2^j b, b)` with `1 <= j <= n - 1`.
    PowerPairs { n: u32 },
    /// Pairs `(|a_i| k, |a_j| k)` with `i < j`, for the coefficient
    /// magnitudes of an equation.
    CoefficientPairs { magnitudes: Vec<u64> },
}

/// Which member of a [`HomogeneousFamily`] a base set is. Indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Member {
    PowerPair { b: u64, j: u32 },
    CoefficientPair { k: u64, i: usize, j: usize },
}

impl HomogeneousFamily {
    pub fn power_pairs(n: u32) -> Result<Self> {
        if !(2..=63).contains(&n) {
            return Err(Error::out_of_range("n", n, 2, 63));
        }
        Ok(HomogeneousFamily::PowerPairs { n })
    }

    pub fn coefficient_pairs(eq: &LinearEquation) -> Result<Self> {
        let magnitudes = eq
            .small_coeffs()?
            .iter()
            .map(|a| a.unsigned_abs())
            .collect();
        Ok(HomogeneousFamily::CoefficientPairs { magnitudes })
    }

    /// Number of colors for which every coloring has a monochromatic member.
    pub fn guaranteed_colors(&self) -> u32 {
        match self {
            HomogeneousFamily::PowerPairs { n } => n - 1,
            HomogeneousFamily::CoefficientPairs { magnitudes } => magnitudes.len() as u32 - 1,
        }
    }

    /// A bound within which a monochromatic member must appear for
    /// colorings with [`guaranteed_colors`](Self::guaranteed_colors) colors:
    /// `2^(n-1)`, resp. `max |a_i|`.
    pub fn compactness_bound(&self) -> u64 {
        match self {
            HomogeneousFamily::PowerPairs { n } => 1 << (n - 1),
            HomogeneousFamily::CoefficientPairs { magnitudes } => magnitudes.iter().copied().max().unwrap_or(0),
        }
    }

    /// Elements of a member, `None` on overflow or invalid member.
    pub fn elements(&self, member: &Member) -> Option<Vec<u64>> {
        match (self, *member) {
            (HomogeneousFamily::PowerPairs { n }, Member::PowerPair { b, j }) => {
                if j == 0 || j >= *n {
                    return None;
                }
                Some(vec![b.checked_mul(1u64.checked_shl(j)?)?, b])
            }
            (HomogeneousFamily::CoefficientPairs { magnitudes }, Member::CoefficientPair { k, i, j }) => {
                if i >= j || j >= magnitudes.len() {
                    return None;
                }
                Some(vec![magnitudes[i].checked_mul(k)?, magnitudes[j].checked_mul(k)?])
            }
            _ => None,
        }
    }

    /// Members at scale `s` (the `b` resp. `k`), in search order.
    fn members_at_scale(&self, s: u64) -> Vec<Member> {
        match self {
            HomogeneousFamily::PowerPairs { n } => (1..*n).map(|j| Member::PowerPair { b: s, j }).collect(),
            HomogeneousFamily::CoefficientPairs { magnitudes } => {
                let len = magnitudes.len();
                (0..len)
                    .flat_map(|i| (i + 1..len).map(move |j| Member::CoefficientPair { k: s, i, j }))
                    .collect()
            }
        }
    }

    fn smallest_unit(&self) -> u64 {
        match self {
            HomogeneousFamily::PowerPairs { .. } => 1,
            HomogeneousFamily::CoefficientPairs { magnitudes } => magnitudes.iter().copied().min().unwrap_or(1).max(1),
        }
    }
}

/// Search limits for [`find_fan`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanBudget {
    pub max_step: u64,
    pub max_scale: u64,
}

impl Default for FanBudget {
    fn default() -> Self {
        Self {
            max_step: 256,
            max_scale: u64::MAX,
        }
    }
}

/// `{b + l*step : b in base, |l| <= radius}` together with `multiplier * step`,
/// all of one color.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonochromaticFan {
    pub member: Member,
    pub base: Vec<u64>,
    pub step: u64,
    pub radius: u64,
    pub multiplier: u64,
    pub color: Color,
}

impl MonochromaticFan {
    pub fn extra(&self) -> u64 {
        self.multiplier * self.step
    }

    /// Whether `x` is one of the fan's elements.
    pub fn contains(&self, x: u64) -> bool {
        if x == self.extra() {
            return true;
        }
        let reach = self.radius as i128 * self.step as i128;
        self.base.iter().any(|&b| {
            let off = x as i128 - b as i128;
            off.abs() <= reach && off % self.step as i128 == 0
        })
    }

    pub fn verify(&self, c: &Coloring) -> Result<()> {
        if self.step == 0 || self.base.is_empty() {
            return Err(verify_fail("fan needs a positive step and a nonempty base".into()));
        }
        let m = self.radius as i128;
        for &b in &self.base {
            for l in -m..=m {
                let x = b as i128 + l * self.step as i128;
                let got = color_checked(c, x)?;
                if got != self.color {
                    return Err(verify_fail(format!("fan element {x} has color {got}, fan color {}", self.color)));
                }
            }
        }
        let extra = self.multiplier as i128 * self.step as i128;
        let got = color_checked(c, extra)?;
        if got != self.color {
            return Err(verify_fail(format!("q*d = {extra} has color {got}, fan color {}", self.color)));
        }
        Ok(())
    }

    /// Checks the base is the claimed member of `family`.
    pub fn verify_member(&self, family: &HomogeneousFamily) -> Result<()> {
        match family.elements(&self.member) {
            Some(el) if el == self.base => Ok(()),
            _ => Err(verify_fail(format!("base {:?} is not member {:?}", self.base, self.member))),
        }
    }
}

/// First fan over `family` in the order: step ascending, then scale
/// ascending, then member index.
pub fn find_fan(
    c: &Coloring,
    family: &HomogeneousFamily,
    radius: u64,
    multiplier: u64,
    budget: FanBudget,
) -> Result<MonochromaticFan> {
    if multiplier == 0 {
        return Err(Error::Precondition("multiplier q must be positive".into()));
    }
    let n = c.domain_bound();
    let mut runs = Vec::new();
    let mut last_step = 0;
    let exhausted = |last_step: u64| {
        Error::BudgetExhausted(Exhaustion::new(
            "fan search",
            format!(
                "d in [1, {last_step}] of max {}, scale <= {}, domain [1, {n}], M = {radius}, q = {multiplier}",
                budget.max_step,
                budget.max_scale.min(n)
            ),
        ))
    };

    for d in 1..=budget.max_step {
        let Some(extra) = multiplier.checked_mul(d).filter(|&e| e <= n) else {
            break;
        };
        let Some(reach) = radius.checked_mul(d).filter(|&r| 2 * r < n) else {
            break;
        };
        last_step = d;
        let target = c.color_unchecked(extra);
        runs_for_step(c, n, d, &mut runs);
        let span = 2 * radius + 1;
        let good_center = |x: u64| {
            x > reach && x <= n - reach && c.color_unchecked(x) == target && runs[(x + reach) as usize] as u64 >= span
        };

        let unit = family.smallest_unit();
        for s in 1..=budget.max_scale {
            if unit.saturating_mul(s) > n - reach {
                break;
            }
            for member in family.members_at_scale(s) {
                let Some(base) = family.elements(&member) else {
                    continue;
                };
                if base.iter().all(|&b| good_center(b)) {
                    return Ok(MonochromaticFan {
                        member,
                        base,
                        step: d,
                        radius,
                        multiplier,
                        color: target,
                    });
                }
            }
        }
    }
    Err(exhausted(last_step))
}

// ---------------------------------------------------------------------------
// Progressions in the product coloring, rescaled

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaBudget {
    /// Upper end of the progression search in the product coloring;
    /// defaults to the whole product domain.
    pub ap_search_bound: Option<u64>,
}

/// Every intermediate object of the rescaling argument, so the result can be
/// replayed: progression in the product coloring, the monochromatic member
/// among its center's multiples, and the rescaled fan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma22Trace {
    pub multiplier_bound: u64,
    pub product_colors: usize,
    pub signatures: Vec<Vec<Color>>,
    /// Progression in the product coloring; its half-length is `radius * R`.
    pub ap: APWitness,
    pub member: Member,
    /// The member's elements divided by the progression center.
    pub multipliers: Vec<u64>,
    /// `center * multipliers[i]`.
    pub base: Vec<u64>,
    /// lcm of the multipliers.
    pub lcm: u64,
    /// `ap.step * lcm`.
    pub step: u64,
    pub radius: u64,
    pub color: Color,
}

impl Lemma22Trace {
    /// Replays the argument against `c`.
    pub fn verify(&self, c: &Coloring) -> Result<()> {
        let r = self.multiplier_bound;
        let a = self.ap.center;

        // The progression is monochromatic in the product coloring: recompute
        // signatures straight from `c`.
        let sig0 = (1..=r)
            .map(|i| color_checked(c, a as i128 * i as i128))
            .collect::<Result<Vec<_>>>()?;
        if self.signatures.get(self.ap.color as usize) != Some(&sig0) {
            return Err(verify_fail("center signature does not match the recorded product color".into()));
        }
        let k = self.ap.half_length as i128;
        for l in -k..=k {
            let x = a as i128 + l * self.ap.step as i128;
            for i in 1..=r {
                if color_checked(c, x * i as i128)? != sig0[(i - 1) as usize] {
                    return Err(verify_fail(format!("signature of {x} differs from the center's at i = {i}")));
                }
            }
        }

        let lcm = self.multipliers.iter().fold(1u64, |acc, &m| acc.lcm(&m));
        if lcm != self.lcm || self.step != self.ap.step * lcm {
            return Err(verify_fail(format!(
                "step {} != {} * lcm {lcm}",
                self.step, self.ap.step
            )));
        }
        if self.multipliers.iter().any(|&m| m == 0 || m > r) || self.base.len() != self.multipliers.len() {
            return Err(verify_fail("multipliers must lie in [1, R]".into()));
        }
        for (&b, &m) in self.base.iter().zip(&self.multipliers) {
            if b != a * m {
                return Err(verify_fail(format!("base element {b} != {a} * {m}")));
            }
            let cb = color_checked(c, b as i128)?;
            if cb != self.color {
                return Err(verify_fail(format!("base element {b} has color {cb}")));
            }
            let ratio = (lcm / m) as i128;
            for l in -(self.radius as i128)..=self.radius as i128 {
                // l * y / b_i stays inside the progression
                if (l * ratio).abs() > k {
                    return Err(verify_fail(format!("|{l} * {ratio}| exceeds half-length {k}")));
                }
                let inner = a as i128 + l * self.ap.step as i128 * ratio;
                let x = b as i128 + l * self.step as i128;
                if m as i128 * inner != x {
                    return Err(verify_fail(format!("{m} * {inner} != {x}")));
                }
                let cx = color_checked(c, x)?;
                if cx != self.color {
                    return Err(verify_fail(format!("fan element {x} has color {cx}")));
                }
            }
        }
        Ok(())
    }
}

/// Runs the rescaling argument: build the product coloring for multipliers
/// up to `R`, find a monochromatic progression of half-length `radius * R`
/// in it, pick a monochromatic family member among `{a, 2a, ..., Ra}`, and
/// rescale the step by the lcm of the member's multipliers.
pub fn lemma22_demonstrate(
    c: &Coloring,
    family: &HomogeneousFamily,
    radius: u64,
    multiplier_bound: u64,
    budget: &LemmaBudget,
) -> Result<Lemma22Trace> {
    let product = product_coloring(c, multiplier_bound)?;
    let half_length = radius
        .checked_mul(multiplier_bound)
        .ok_or_else(|| Error::Overflow("radius * R".into()))?;
    let bound = budget
        .ap_search_bound
        .unwrap_or(product.coloring.domain_bound())
        .min(product.coloring.domain_bound());
    let ap = find_monochromatic_ap(&product.coloring, 2 * half_length + 1, bound)?.ok_or_else(|| {
        Error::BudgetExhausted(Exhaustion::new(
            "progression search in the product coloring",
            format!("length {} in [1, {bound}]", 2 * half_length + 1),
        ))
    })?;

    let a = ap.center;
    let (member, multipliers) = multiplier_members(family, multiplier_bound)
        .into_iter()
        .find(|(_, ms)| {
            let first = c.color_unchecked(a * ms[0]);
            ms.iter().all(|&m| c.color_unchecked(a * m) == first)
        })
        .ok_or_else(|| {
            Error::BudgetExhausted(Exhaustion::new(
                "monochromatic family member",
                format!("multiples of {a} up to {multiplier_bound} * {a}"),
            ))
        })?;

    let lcm = multipliers.iter().fold(1u64, |acc, &m| acc.lcm(&m));
    let trace = Lemma22Trace {
        multiplier_bound,
        product_colors: product.signatures.len(),
        signatures: product.signatures,
        member,
        base: multipliers.iter().map(|&m| a * m).collect(),
        color: c.color_unchecked(a * multipliers[0]),
        step: ap.step * lcm,
        lcm,
        multipliers,
        ap,
        radius,
    };
    trace.verify(c)?;
    Ok(trace)
}

/// Family members with all elements in `[1, R]`, in search order, paired
/// with their elements.
fn multiplier_members(family: &HomogeneousFamily, r: u64) -> Vec<(Member, Vec<u64>)> {
    (1..=r)
        .flat_map(|s| family.members_at_scale(s))
        .filter_map(|m| {
            let el = family.elements(&m)?;
            el.iter().all(|&e| e <= r).then_some((m, el))
        })
        .collect()
}
