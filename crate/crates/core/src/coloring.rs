//! Finite colorings of `[1, N]` and monochromatic-solution checks.
//!
//! Colors are 0-based here; front ends add one when printing for people.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::equation::{LinearEquation, SolutionCursor, SolutionTuple};
use crate::error::{Error, Result};

pub type Color = u32;

/// Colorings defined by a formula rather than a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Everything gets color 0.
    Constant,
    /// `x mod m`.
    Mod(u32),
    /// `nu2(x) mod m`, where `nu2` is the exponent of 2 in `x`.
    Nu2Mod(u32),
}

impl Family {
    pub fn color(&self, x: u64) -> Color {
        match *self {
            Family::Constant => 0,
            Family::Mod(m) => (x % m as u64) as Color,
            Family::Nu2Mod(m) => x.trailing_zeros() % m,
        }
    }

    /// Smallest palette the family fits in.
    pub fn min_colors(&self) -> u32 {
        match *self {
            Family::Constant => 1,
            Family::Mod(m) | Family::Nu2Mod(m) => m,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Constant => f.write_str("const"),
            Family::Mod(m) => write!(f, "mod:{m}"),
            Family::Nu2Mod(m) => write!(f, "nu2:{m}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidColoring(format!("unknown family `{s}` (expected const, mod:m or nu2:m)"));
        let s = s.trim();
        if s == "const" || s == "constant" {
            return Ok(Family::Constant);
        }
        let (kind, m) = s.split_once(':').ok_or_else(bad)?;
        let m: u32 = m.trim().parse().map_err(|_| bad())?;
        if m == 0 {
            return Err(Error::InvalidColoring(format!("modulus must be positive in `{s}`")));
        }
        match kind.trim() {
            "mod" => Ok(Family::Mod(m)),
            "nu2" | "nu2mod" => Ok(Family::Nu2Mod(m)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// Colors of `1..=N`, in order.
    Explicit(Vec<Color>),
    Family(Family),
}

/// An `r`-coloring of `[1, N]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawColoring")]
pub struct Coloring {
    num_colors: u32,
    domain_bound: u64,
    source: Source,
}

#[derive(Deserialize)]
struct RawColoring {
    num_colors: u32,
    domain_bound: u64,
    source: Source,
}

impl TryFrom<RawColoring> for Coloring {
    type Error = Error;

    fn try_from(raw: RawColoring) -> Result<Self> {
        match raw.source {
            Source::Explicit(colors) => {
                if colors.len() as u64 != raw.domain_bound {
                    return Err(Error::InvalidColoring(format!(
                        "domain bound {} but {} colors given",
                        raw.domain_bound,
                        colors.len()
                    )));
                }
                Coloring::explicit(raw.num_colors, colors)
            }
            Source::Family(f) => Coloring::family(f, raw.num_colors, raw.domain_bound),
        }
    }
}

impl Coloring {
    pub fn explicit(num_colors: u32, colors: Vec<Color>) -> Result<Self> {
        if num_colors == 0 {
            return Err(Error::InvalidColoring("need at least one color".into()));
        }
        if colors.is_empty() {
            return Err(Error::InvalidColoring("empty domain".into()));
        }
        if let Some((i, c)) = colors.iter().enumerate().find(|(_, &c)| c >= num_colors) {
            return Err(Error::InvalidColoring(format!(
                "color {c} of {} is not below r = {num_colors}",
                i + 1
            )));
        }
        Ok(Self {
            num_colors,
            domain_bound: colors.len() as u64,
            source: Source::Explicit(colors),
        })
    }

    pub fn family(family: Family, num_colors: u32, domain_bound: u64) -> Result<Self> {
        if domain_bound == 0 {
            return Err(Error::InvalidColoring("empty domain".into()));
        }
        if num_colors < family.min_colors() {
            return Err(Error::InvalidColoring(format!(
                "{family} needs at least {} colors, got {num_colors}",
                family.min_colors()
            )));
        }
        Ok(Self {
            num_colors,
            domain_bound,
            source: Source::Family(family),
        })
    }

    /// A family coloring on the smallest palette that holds it.
    pub fn of_family(family: Family, domain_bound: u64) -> Result<Self> {
        Self::family(family, family.min_colors(), domain_bound)
    }

    pub fn num_colors(&self) -> u32 {
        self.num_colors
    }

    pub fn domain_bound(&self) -> u64 {
        self.domain_bound
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn color_of(&self, x: u64) -> Result<Color> {
        if x == 0 || x > self.domain_bound {
            return Err(Error::OutOfDomain {
                x,
                bound: self.domain_bound,
            });
        }
        Ok(self.color_unchecked(x))
    }

    /// Caller guarantees `1 <= x <= domain_bound`.
    #[inline]
    pub(crate) fn color_unchecked(&self, x: u64) -> Color {
        debug_assert!(x >= 1 && x <= self.domain_bound);
        match &self.source {
            Source::Explicit(colors) => colors[(x - 1) as usize],
            Source::Family(f) => f.color(x),
        }
    }

    /// Same coloring, as a table.
    pub fn expand(&self) -> Coloring {
        let colors = (1..=self.domain_bound).map(|x| self.color_unchecked(x)).collect();
        Coloring {
            num_colors: self.num_colors,
            domain_bound: self.domain_bound,
            source: Source::Explicit(colors),
        }
    }

    /// Restriction to `[1, n]`.
    pub fn restrict(&self, n: u64) -> Result<Coloring> {
        if n == 0 || n > self.domain_bound {
            return Err(Error::out_of_range("restriction bound", n, 1, self.domain_bound as i128));
        }
        let source = match &self.source {
            Source::Explicit(colors) => Source::Explicit(colors[..n as usize].to_vec()),
            Source::Family(f) => Source::Family(*f),
        };
        Ok(Coloring {
            num_colors: self.num_colors,
            domain_bound: n,
            source,
        })
    }

    /// Sizes of the color classes, indexed by color.
    pub fn class_sizes(&self) -> Vec<u64> {
        let mut sizes = vec![0u64; self.num_colors as usize];
        for x in 1..=self.domain_bound {
            sizes[self.color_unchecked(x) as usize] += 1;
        }
        sizes
    }

    /// Whether all the given values lie in the domain and share one color.
    pub fn is_monochromatic(&self, values: &[u64]) -> Option<Color> {
        let (&first, rest) = values.split_first()?;
        let c = self.color_of(first).ok()?;
        rest.iter()
            .all(|&x| self.color_of(x).ok() == Some(c))
            .then_some(c)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        text.parse()
    }

    pub fn store(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_file_string())?;
        Ok(())
    }

    /// The text file format: a header line `r N`, then the N colors.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("{} {}\n", self.num_colors, self.domain_bound);
        let body: Vec<String> = (1..=self.domain_bound)
            .map(|x| self.color_unchecked(x).to_string())
            .collect();
        out.push_str(&body.join(" "));
        out.push('\n');
        out
    }
}

impl FromStr for Coloring {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().skip_while(|l| l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidColoring("missing header `r N`".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let (r, n) = match fields.as_slice() {
            [r, n] => (
                r.parse::<u32>()
                    .map_err(|_| Error::InvalidColoring(format!("bad color count `{r}` in header")))?,
                n.parse::<u64>()
                    .map_err(|_| Error::InvalidColoring(format!("bad domain bound `{n}` in header")))?,
            ),
            _ => {
                return Err(Error::InvalidColoring(format!(
                    "header must be `r N`, got `{header}`"
                )))
            }
        };
        let colors = lines
            .flat_map(str::split_whitespace)
            .map(|tok| {
                tok.parse::<Color>()
                    .map_err(|_| Error::InvalidColoring(format!("bad color index `{tok}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if colors.len() as u64 != n {
            return Err(Error::InvalidColoring(format!(
                "header promises {n} colors, file has {}",
                colors.len()
            )));
        }
        Coloring::explicit(r, colors)
    }
}

/// How a coloring is named on the command line: `const`, `mod:m`, `nu2:m`
/// or `file:path`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColoringSpec {
    Family(Family),
    File(String),
}

impl FromStr for ColoringSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().strip_prefix("file:") {
            Some(path) => Ok(ColoringSpec::File(path.to_string())),
            None => s.parse().map(ColoringSpec::Family),
        }
    }
}

impl ColoringSpec {
    /// Materializes the coloring. Families need a domain bound; a palette
    /// size larger than the family's minimum may be requested.
    pub fn resolve(&self, domain_bound: Option<u64>, num_colors: Option<u32>) -> Result<Coloring> {
        match self {
            ColoringSpec::Family(f) => {
                let n = domain_bound
                    .ok_or_else(|| Error::InvalidColoring(format!("{f} needs a domain bound (-N)")))?;
                Coloring::family(*f, num_colors.unwrap_or(f.min_colors()), n)
            }
            ColoringSpec::File(path) => {
                let c = Coloring::load(path)?;
                match domain_bound {
                    Some(n) if n != c.domain_bound() => c.restrict(n),
                    _ => Ok(c),
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Verification

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict", content = "solution")]
pub enum Verdict {
    Avoiding,
    Violated(SolutionTuple),
}

impl Verdict {
    pub fn is_avoiding(&self) -> bool {
        matches!(self, Verdict::Avoiding)
    }
}

/// First monochromatic solution with max coordinate `m`, if any.
fn violation_at(c: &Coloring, cursor: &mut SolutionCursor, m: u64) -> Result<Option<SolutionTuple>> {
    cursor.reset(m)?;
    let target = c.color_unchecked(m);
    while let Some(values) = cursor.next_values() {
        if values.iter().all(|&x| c.color_unchecked(x) == target) {
            return Ok(Some(SolutionTuple::new(values.to_vec())));
        }
    }
    Ok(None)
}

/// Looks for a monochromatic solution with every coordinate `<= up_to`.
///
/// Scans by largest coordinate ascending, so a reported violation has the
/// smallest possible maximum and is lexicographically first among those.
pub fn verify_avoiding(c: &Coloring, eq: &LinearEquation, up_to: u64) -> Result<Verdict> {
    check_up_to(c, up_to)?;
    let coeffs = eq.small_coeffs()?;
    let mut cursor = SolutionCursor::with_max_element(coeffs, up_to.max(1))?;
    for m in 1..=up_to {
        if let Some(sol) = violation_at(c, &mut cursor, m)? {
            return Ok(Verdict::Violated(sol));
        }
    }
    Ok(Verdict::Avoiding)
}

/// [`verify_avoiding`] with the range of maxima split across `threads`
/// workers. Returns the same verdict as the sequential scan.
pub fn verify_avoiding_parallel(c: &Coloring, eq: &LinearEquation, up_to: u64, threads: usize) -> Result<Verdict> {
    if threads <= 1 {
        return verify_avoiding(c, eq, up_to);
    }
    check_up_to(c, up_to)?;
    let coeffs = eq.small_coeffs()?;
    // surface overflow up front so that workers cannot fail on it
    SolutionCursor::with_max_element(coeffs.clone(), up_to.max(1))?;

    let chunk = (up_to / (threads as u64 * 8)).max(1024);
    let chunks: Vec<(u64, u64)> = (0..up_to.div_ceil(chunk))
        .map(|i| (i * chunk + 1, ((i + 1) * chunk).min(up_to)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    let found = pool.install(|| {
        chunks.par_iter().find_map_first(|&(lo, hi)| {
            let mut cursor = SolutionCursor::with_max_element(coeffs.clone(), hi).ok()?;
            (lo..=hi).find_map(|m| violation_at(c, &mut cursor, m).ok().flatten())
        })
    });
    Ok(found.map_or(Verdict::Avoiding, Verdict::Violated))
}

fn check_up_to(c: &Coloring, up_to: u64) -> Result<()> {
    if up_to > c.domain_bound() {
        return Err(Error::out_of_range("up_to", up_to, 0, c.domain_bound() as i128));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_colors() {
        let nu2 = Coloring::of_family(Family::Nu2Mod(2), 100).unwrap();
        assert_eq!(nu2.color_of(12).unwrap(), 0);
        assert_eq!(nu2.color_of(2).unwrap(), 1);
        let m3 = Coloring::of_family(Family::Mod(3), 100).unwrap();
        assert_eq!(m3.color_of(7).unwrap(), 1);
        let k = Coloring::of_family(Family::Constant, 100).unwrap();
        assert_eq!(k.color_of(99).unwrap(), 0);
        assert!(matches!(k.color_of(0), Err(Error::OutOfDomain { .. })));
        assert!(matches!(k.color_of(101), Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn family_needs_enough_colors() {
        assert!(Coloring::family(Family::Mod(3), 2, 10).is_err());
        assert!(Coloring::family(Family::Mod(3), 4, 10).is_ok());
        assert!("mod:0".parse::<Family>().is_err());
        assert!("foo:2".parse::<Family>().is_err());
    }

    #[test]
    fn spec_grammar() {
        assert_eq!("const".parse::<ColoringSpec>().unwrap(), ColoringSpec::Family(Family::Constant));
        assert_eq!("mod:3".parse::<ColoringSpec>().unwrap(), ColoringSpec::Family(Family::Mod(3)));
        assert_eq!("nu2:2".parse::<ColoringSpec>().unwrap(), ColoringSpec::Family(Family::Nu2Mod(2)));
        assert_eq!(
            "file:/tmp/c.txt".parse::<ColoringSpec>().unwrap(),
            ColoringSpec::File("/tmp/c.txt".into())
        );
    }

    #[test]
    fn file_format() {
        let c: Coloring = "2 4\n0 1 0 1".parse().unwrap();
        assert_eq!(c.num_colors(), 2);
        assert_eq!(c.domain_bound(), 4);
        assert_eq!(c.color_of(2).unwrap(), 1);
        assert_eq!(c.to_file_string(), "2 4\n0 1 0 1\n");

        assert!(matches!("2 3\n0 1 0 1".parse::<Coloring>(), Err(Error::InvalidColoring(_))));
        assert!(matches!("2 4\n0 1 2 1".parse::<Coloring>(), Err(Error::InvalidColoring(_))));
        assert!(matches!("2\n0 1".parse::<Coloring>(), Err(Error::InvalidColoring(_))));
        assert!(matches!("".parse::<Coloring>(), Err(Error::InvalidColoring(_))));
    }

    #[test]
    fn json_round_trip_validates() {
        let c = Coloring::explicit(2, vec![0, 1, 1]).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, r#"{"num_colors":2,"domain_bound":3,"source":{"explicit":[0,1,1]}}"#);
        assert_eq!(serde_json::from_str::<Coloring>(&json).unwrap(), c);
        let bad = r#"{"num_colors":1,"domain_bound":3,"source":{"explicit":[0,1,1]}}"#;
        assert!(serde_json::from_str::<Coloring>(bad).is_err());
        let fam = Coloring::of_family(Family::Nu2Mod(2), 10).unwrap();
        let json = serde_json::to_string(&fam).unwrap();
        assert!(json.contains(r#""family":"nu2:2""#));
    }

    #[test]
    fn verify_examples() {
        let schur = LinearEquation::from_integers(&[1, 1, -1]).unwrap();
        let m2 = Coloring::of_family(Family::Mod(2), 5).unwrap();
        assert_eq!(
            verify_avoiding(&m2, &schur, 5).unwrap(),
            Verdict::Violated(SolutionTuple::new(vec![2, 2, 4]))
        );

        let eq = LinearEquation::from_integers(&[1, 2, -4]).unwrap();
        let k = Coloring::of_family(Family::Constant, 2).unwrap();
        assert_eq!(
            verify_avoiding(&k, &eq, 2).unwrap(),
            Verdict::Violated(SolutionTuple::new(vec![2, 1, 1]))
        );

        let halving = LinearEquation::from_integers(&[1, -2]).unwrap();
        let nu2 = Coloring::of_family(Family::Nu2Mod(2), 10_000).unwrap();
        assert!(verify_avoiding(&nu2, &halving, 10_000).unwrap().is_avoiding());
        assert!(verify_avoiding(&nu2, &halving, 10_001).is_err());
    }

    #[test]
    fn parallel_matches_sequential() {
        let schur = LinearEquation::from_integers(&[1, 1, -1]).unwrap();
        let c = Coloring::explicit(2, (1..=3000u64).map(|x| ((x * x + x / 7) % 2) as u32).collect()).unwrap();
        let seq = verify_avoiding(&c, &schur, 3000).unwrap();
        let par = verify_avoiding_parallel(&c, &schur, 3000, 4).unwrap();
        assert_eq!(seq, par);
        let halving = LinearEquation::from_integers(&[1, -2]).unwrap();
        let nu2 = Coloring::of_family(Family::Nu2Mod(2), 50_000).unwrap();
        assert!(verify_avoiding_parallel(&nu2, &halving, 50_000, 3).unwrap().is_avoiding());
    }
}
