//! Partition regularity of single linear homogeneous equations.
//!
//! - [`equation`]: parsing, canonical form, Rado's criterion, bounded solution
//!   enumeration.
//! - [`coloring`]: colorings of `[1, N]` and monochromatic-solution checks.
//! - [`structures`]: pigeonhole pairs, monochromatic progressions, product
//!   colorings and monochromatic fans.
//! - [`constructive`]: explicit monochromatic solutions built from those
//!   structures.
//! - [`search`]: certified backtracking over colorings, Rado numbers and
//!   degree-of-regularity reports.

pub mod coloring;
pub mod constructive;
pub mod equation;
pub mod error;
pub mod search;
pub mod serde_decimal;
pub mod structures;

pub use coloring::{verify_avoiding, verify_avoiding_parallel, Color, Coloring, ColoringSpec, Family, Verdict};
pub use equation::{
    at_equation, enumerate_solutions, family_equation, is_regular, parse_equation, LinearEquation, Regularity,
    SolutionCursor, SolutionTuple,
};
pub use error::{Error, Exhaustion, Result};
pub use constructive::{
    build_at_solution, build_theorem1_solution, build_theorem41_solution, build_theorem42_solution, prove_at,
    prove_hyperplane, prove_theorem1, AtProof, ExtensionSolution, HyperplaneProof, HyperplaneSolution, Theorem1Proof,
};
pub use search::{
    dor_report, rado_number, rado_number_from, search_avoiding, search_avoiding_from, DorReport, Outcome, RadoReport, RadoValue,
    SearchCertificate, SearchOptions,
};
pub use structures::{
    find_fan, find_monochromatic_ap, lemma22_demonstrate, pigeonhole_powers, product_coloring, APWitness, FanBudget,
    HomogeneousFamily, Lemma22Trace, LemmaBudget, Member, MonochromaticFan, PigeonholeWitness, ProductColoring,
};
