use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use num_rational::BigRational;
use serde_json::json;

use rado_core::search::{DorRowStatus, SearchOptions};
use rado_core::structures::{find_fan, lemma22_demonstrate, FanBudget, HomogeneousFamily, LemmaBudget};
use rado_core::*;

use crate::{
    ColoringArgs, ColoringCommand, ConstructCommand, EqCommand, EquationArg, FanArgs, FindCommand, Output, SearchArgs,
    SearchCommand,
};

const DEFAULT_FAMILY_DOMAIN: u64 = 1 << 16;

fn equation(arg: &EquationArg) -> Result<LinearEquation> {
    parse_equation(&arg.equation).with_context(|| format!("equation `{}`", arg.equation))
}

fn load_coloring(args: &ColoringArgs) -> Result<Coloring> {
    let spec = ColoringSpec::from_str(&args.coloring).with_context(|| format!("coloring `{}`", args.coloring))?;
    let domain = match spec {
        ColoringSpec::Family(_) => Some(args.domain.unwrap_or(DEFAULT_FAMILY_DOMAIN)),
        ColoringSpec::File(_) => args.domain,
    };
    Ok(spec.resolve(domain, args.colors)?)
}

fn colors_of(c: &Coloring) -> Vec<Color> {
    (1..=c.domain_bound()).map(|x| c.color_of(x).expect("in domain")).collect()
}

fn fan_budget(f: &FanArgs) -> FanBudget {
    FanBudget {
        max_step: f.max_step,
        max_scale: f.max_scale.unwrap_or(u64::MAX),
    }
}

fn search_options(s: &SearchArgs, timing: bool) -> SearchOptions {
    SearchOptions {
        max_nodes: s.budget,
        threads: s.threads,
        distinct_values: s.distinct,
        timing,
        ..SearchOptions::default()
    }
}

fn parse_list<T: FromStr>(what: &str, s: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<T>()
                .map_err(|e| anyhow::anyhow!("{what}: bad entry `{}`: {e}", tok.trim()))
        })
        .collect()
}

fn parse_family(s: &str) -> Result<HomogeneousFamily> {
    if let Some(n) = s.strip_prefix("pairs:") {
        let n: u32 = n.trim().parse().with_context(|| format!("family `{s}`"))?;
        return Ok(HomogeneousFamily::power_pairs(n)?);
    }
    if let Some(eq) = s.strip_prefix("coeffs:") {
        let eq = parse_equation(eq).with_context(|| format!("family `{s}`"))?;
        return Ok(HomogeneousFamily::coefficient_pairs(&eq)?);
    }
    bail!("family `{s}`: expected pairs:n or coeffs:EQUATION")
}

fn tuple(values: &[u64]) -> String {
    let parts: Vec<String> = values.iter().map(u64::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Colors as one line when short, otherwise the class sizes.
fn show_coloring(c: &Coloring) -> String {
    if c.domain_bound() <= 120 {
        let cs: Vec<String> = colors_of(c).iter().map(u32::to_string).collect();
        cs.join(" ")
    } else {
        format!("{} colors on [1, {}], class sizes {:?}", c.num_colors(), c.domain_bound(), c.class_sizes())
    }
}

// ---------------------------------------------------------------------------

pub fn eq(cmd: &EqCommand) -> Result<Output> {
    match cmd {
        EqCommand::Check(arg) => {
            let e = equation(arg)?;
            let reg = is_regular(&e);
            let vars: Option<Vec<String>> = reg
                .subset
                .as_ref()
                .map(|s| s.iter().map(|i| format!("x{}", i + 1)).collect());
            let one_based: Option<Vec<usize>> = reg.subset.as_ref().map(|s| s.iter().map(|i| i + 1).collect());
            let mut text = format!("{}\n", e.render_expression());
            match (&vars, &one_based) {
                (Some(v), Some(_)) => {
                    writeln!(text, "regular: the coefficients of {} sum to zero", v.join(", "))?;
                }
                _ => writeln!(text, "not regular: no nonempty subset of the coefficients sums to 0")?,
            }
            Output::new(
                json!({
                    "equation": e,
                    "expression": e.render_expression(),
                    "regular": reg.regular,
                    "subset": reg.subset,
                    "variables": vars,
                }),
                text,
            )
        }
        EqCommand::Canon(arg) => {
            let e = equation(arg)?;
            Output::new(
                json!({ "equation": e, "expression": e.render_expression(), "scale": e.scale().to_string() }),
                format!("{}\n{}\nscale {}\n", e.render(), e.render_expression(), e.scale()),
            )
        }
        EqCommand::Solve {
            eq,
            max_value,
            max_element,
            limit,
        } => {
            let e = equation(eq)?;
            let mut it = enumerate_solutions(&e, *max_value, *max_element)?;
            let sols: Vec<Vec<u64>> = it.by_ref().take(*limit).map(|s| s.values).collect();
            let truncated = it.next().is_some();
            let mut text = String::new();
            for s in &sols {
                writeln!(text, "{}", tuple(s))?;
            }
            writeln!(
                text,
                "{} solution{} in [1, {max_value}]^{}{}",
                sols.len(),
                if sols.len() == 1 { "" } else { "s" },
                e.len(),
                if truncated { " (truncated)" } else { "" }
            )?;
            Output::new(json!({ "equation": e, "count": sols.len(), "truncated": truncated, "solutions": sols }), text)
        }
        EqCommand::Family { n } => {
            let e = family_equation(*n)?;
            Output::new(
                json!({ "n": n, "equation": e, "expression": e.render_expression() }),
                format!("{}\n{}\n", e.render(), e.render_expression()),
            )
        }
        EqCommand::At { n } => {
            let e = at_equation(*n)?;
            Output::new(
                json!({ "n": n, "equation": e, "expression": e.render_expression(), "scale": e.scale().to_string() }),
                format!("{}\n{}\n", e.render(), e.render_expression()),
            )
        }
    }
}

// ---------------------------------------------------------------------------

fn read_seed(path: &Path) -> Result<Vec<Color>> {
    let c = Coloring::load(path).with_context(|| format!("seed witness {}", path.display()))?;
    Ok(colors_of(&c))
}

pub fn search(cmd: &SearchCommand, timing: bool) -> Result<Output> {
    match cmd {
        SearchCommand::Avoid {
            eq,
            r,
            n,
            search,
            seed_witness,
            out,
        } => {
            let e = equation(eq)?;
            let opts = search_options(search, timing);
            let cert = match seed_witness {
                Some(path) => search_avoiding_from(&e, *r, *n, &read_seed(path)?, false, &opts)?,
                None => search_avoiding(&e, *r, *n, &opts)?,
            };
            cert.verify().context("witness failed re-verification")?;
            let text = match cert.witness() {
                Some(w) => {
                    if let Some(path) = out {
                        w.store(path)?;
                    }
                    format!(
                        "witness: {r}-coloring of [1, {n}] with no monochromatic solution\n{}\nnodes: {}\n",
                        show_coloring(w),
                        cert.stats.nodes
                    )
                }
                None => format!(
                    "exhausted: every {r}-coloring of [1, {n}] has a monochromatic solution\nnodes: {}\n",
                    cert.stats.nodes
                ),
            };
            Output::new(&cert, text)
        }
        SearchCommand::Rado {
            eq,
            r,
            max_n,
            search,
            seed_witness,
            out,
        } => {
            let e = equation(eq)?;
            let opts = search_options(search, timing);
            let rep = match seed_witness {
                Some(path) => rado_number_from(&e, *r, *max_n, &read_seed(path)?, &opts)?,
                None => rado_number(&e, *r, *max_n, &opts)?,
            };
            if let (Some(path), Some(w)) = (out, &rep.witness) {
                w.store(path)?;
            }
            let text = match rep.value() {
                Some(v) => format!("{v}\n"),
                None => format!(
                    "unknown: an avoiding {r}-coloring of [1, {max_n}] exists\n{}\n",
                    rep.witness.as_ref().map(show_coloring).unwrap_or_default()
                ),
            };
            Output::new(&rep, text)
        }
        SearchCommand::Dor {
            eq,
            r_max,
            evidence_bound,
            search,
        } => {
            let e = equation(eq)?;
            let rep = dor_report(&e, *r_max, *evidence_bound, &search_options(search, timing))?;
            let mut text = format!("{}\nregular: {}\n", e.render_expression(), rep.is_regular);
            for row in &rep.rows {
                let status = match &row.status {
                    DorRowStatus::Exhausted { rado_number } => format!("Rado number {rado_number}"),
                    DorRowStatus::Witness { .. } => format!("avoiding coloring of [1, {}]", rep.evidence_bound),
                    DorRowStatus::BudgetExceeded { searched } => format!("budget exceeded ({searched})"),
                };
                writeln!(text, "r = {}: {status}", row.r)?;
            }
            let show = |v: Option<u32>| v.map_or("-".to_string(), |v| v.to_string());
            writeln!(
                text,
                "certified lower bound: {}\nevidence upper bound: {}",
                show(rep.certified_lower),
                show(rep.evidence_upper)
            )?;
            Output::new(&rep, text)
        }
    }
}

// ---------------------------------------------------------------------------

pub fn construct(cmd: &ConstructCommand) -> Result<Output> {
    match cmd {
        ConstructCommand::Theorem1 {
            n,
            coloring,
            j,
            b,
            d,
            fan,
        } => match (coloring.get(), j, b, d) {
            (Some(args), _, _, _) => {
                let c = load_coloring(&args)?;
                let proof = prove_theorem1(&c, *n, fan_budget(fan))?;
                proof.verify(&c).context("proof failed re-verification")?;
                let text = format!(
                    "{}\nsolution {} in color {}\npair {} and {} = 2^{} * {}\nfan: base {:?}, step {}, radius {}, extra {}\n",
                    proof.equation.render_expression(),
                    tuple(&proof.tuple.values),
                    proof.color,
                    proof.pigeonhole.x,
                    proof.pigeonhole.partner(),
                    proof.pigeonhole.j,
                    proof.pigeonhole.x,
                    proof.fan.base,
                    proof.fan.step,
                    proof.fan.radius,
                    proof.fan.extra(),
                );
                Output::new(&proof, text)
            }
            (None, Some(j), Some(b), Some(d)) => {
                let t = build_theorem1_solution(*n, *j, *b, *d)?;
                let e = family_equation(*n)?;
                let text = format!("{}\nsolution {}\n", e.render_expression(), tuple(&t.values));
                Output::new(json!({ "equation": e, "tuple": t }), text)
            }
            _ => bail!("give --coloring, or --j, --b and --d"),
        },
        ConstructCommand::At { n, coloring, i, x } => match (coloring.get(), i, x) {
            (Some(args), _, _) => {
                let c = load_coloring(&args)?;
                let proof = prove_at(&c, *n)?;
                proof.verify(&c).context("proof failed re-verification")?;
                let text = format!(
                    "{}\nsolution {} in color {}\npair {} and {}\n",
                    proof.equation.render_expression(),
                    tuple(&proof.tuple.values),
                    proof.color,
                    proof.pigeonhole.x,
                    proof.pigeonhole.partner()
                );
                Output::new(&proof, text)
            }
            (None, Some(i), Some(x)) => {
                let t = build_at_solution(*n, *i, *x)?;
                let e = at_equation(*n)?;
                let text = format!("{}\nsolution {}\n", e.render_expression(), tuple(&t.values));
                Output::new(json!({ "equation": e, "tuple": t }), text)
            }
            _ => bail!("give --coloring, or --i and --x"),
        },
        ConstructCommand::Extend { eq, base, extra, d } => {
            let e = equation(eq)?;
            let base = SolutionTuple::new(parse_list::<u64>("--base", base)?);
            let extra = parse_list::<BigRational>("--extra", extra)?;
            let sol = build_theorem41_solution(&e, &base, &extra, *d)?;
            let coeffs: Vec<String> = sol.coefficients.iter().map(ToString::to_string).collect();
            let mut text = format!(
                "coefficients ({})\nsolution {}\n",
                coeffs.join(", "),
                tuple(&sol.tuple.values)
            );
            if sol.sign_adjusted {
                writeln!(text, "leading coefficient is negative: appended values use |a1| d")?;
            }
            Output::new(&sol, text)
        }
        ConstructCommand::Hyperplane {
            eq,
            coloring,
            i,
            j,
            k,
            d,
            fan,
        } => {
            let e = equation(eq)?;
            let (sol, proof) = match coloring.get() {
                Some(args) => {
                    let c = load_coloring(&args)?;
                    let proof = prove_hyperplane(&c, &e, fan_budget(fan))?;
                    proof.verify(&c).context("proof failed re-verification")?;
                    (proof.solution.clone(), Some(proof))
                }
                None => {
                    if *i == 0 || *j == 0 {
                        bail!("--i and --j are 1-based");
                    }
                    (build_theorem42_solution(&e, i - 1, j - 1, *k, *d)?, None)
                }
            };
            sol.verify(&e).context("solution failed re-verification")?;
            let f: Vec<String> = sol.flips.iter().map(i8::to_string).collect();
            let mut text = format!("solution {}\nflips ({})\nP = {}\n", tuple(&sol.tuple.values), f.join(", "), sol.p);
            if let Some(p) = &proof {
                writeln!(text, "color {}", p.color)?;
            }
            match proof {
                Some(p) => Output::new(&p, text),
                None => Output::new(&sol, text),
            }
        }
    }
}

// ---------------------------------------------------------------------------

pub fn coloring(cmd: &ColoringCommand) -> Result<Output> {
    match cmd {
        ColoringCommand::Verify { eq, coloring, threads } => {
            let e = equation(eq)?;
            let c = load_coloring(coloring)?;
            let n = c.domain_bound();
            let v = verify_avoiding_parallel(&c, &e, n, *threads)?;
            let text = match &v {
                Verdict::Avoiding => format!("avoiding: no monochromatic solution in [1, {n}]\n"),
                Verdict::Violated(s) => format!(
                    "violated: {} has color {}\n",
                    tuple(&s.values),
                    c.color_of(s.values[0])?
                ),
            };
            Output::new(json!({ "equation": e, "N": n, "result": v }), text)
        }
        ColoringCommand::Expand { coloring, out } => {
            let c = load_coloring(coloring)?.expand();
            let file = c.to_file_string();
            if let Some(path) = out {
                c.store(path)?;
            }
            Output::new(json!({ "coloring": c, "file": file }), file)
        }
        ColoringCommand::Info { coloring } => {
            let c = load_coloring(coloring)?;
            let sizes = c.class_sizes();
            let mut text = format!("{} colors on [1, {}]\n", c.num_colors(), c.domain_bound());
            for (k, s) in sizes.iter().enumerate() {
                writeln!(text, "color {k}: {s}")?;
            }
            Output::new(
                json!({
                    "spec": coloring.coloring,
                    "num_colors": c.num_colors(),
                    "N": c.domain_bound(),
                    "class_sizes": sizes,
                }),
                text,
            )
        }
    }
}

// ---------------------------------------------------------------------------

pub fn find(cmd: &FindCommand) -> Result<Output> {
    match cmd {
        FindCommand::Pigeonhole { n, coloring } => {
            let c = load_coloring(coloring)?;
            let w = pigeonhole_powers(&c, *n)?;
            w.verify(&c)?;
            let text = format!("{} and {} = 2^{} * {} share color {}\n", w.x, w.partner(), w.j, w.x, w.color);
            Output::new(&w, text)
        }
        FindCommand::Ap { coloring, length, bound } => {
            let c = load_coloring(coloring)?;
            let bound = bound.unwrap_or(c.domain_bound());
            match find_monochromatic_ap(&c, *length, bound)? {
                Some(ap) => {
                    ap.verify(&c)?;
                    let text = format!(
                        "{} terms from {} with step {} (center {}), color {}\n",
                        ap.len(),
                        ap.first(),
                        ap.step,
                        ap.center,
                        ap.color
                    );
                    Output::new(json!({ "found": true, "progression": ap }), text)
                }
                None => Output::new(
                    json!({ "found": false, "progression": null }),
                    format!("no monochromatic progression of length {length} in [1, {bound}]\n"),
                ),
            }
        }
        FindCommand::Fan {
            coloring,
            family,
            radius,
            multiplier,
            fan,
        } => {
            let c = load_coloring(coloring)?;
            let fam = parse_family(family)?;
            let f = find_fan(&c, &fam, *radius, *multiplier, fan_budget(fan))?;
            f.verify(&c)?;
            f.verify_member(&fam)?;
            let text = format!(
                "base {:?}, step {}, radius {}, extra {} = {} * {}, color {}\n",
                f.base,
                f.step,
                f.radius,
                f.extra(),
                f.multiplier,
                f.step,
                f.color
            );
            Output::new(&f, text)
        }
        FindCommand::Lemma {
            coloring,
            family,
            radius,
            multipliers,
            ap_bound,
        } => {
            let c = load_coloring(coloring)?;
            let fam = parse_family(family)?;
            let budget = LemmaBudget {
                ap_search_bound: *ap_bound,
            };
            let t = lemma22_demonstrate(&c, &fam, *radius, *multipliers, &budget)?;
            t.verify(&c)?;
            let text = format!(
                "product coloring: {} colors\nprogression: center {}, step {}, half-length {}\nmultipliers {:?}, lcm {}\nfan: base {:?}, step {}, radius {}, color {}\n",
                t.product_colors,
                t.ap.center,
                t.ap.step,
                t.ap.half_length,
                t.multipliers,
                t.lcm,
                t.base,
                t.step,
                t.radius,
                t.color
            );
            Output::new(&t, text)
        }
        FindCommand::Product {
            coloring,
            multipliers,
            out,
        } => {
            let c = load_coloring(coloring)?;
            let p = product_coloring(&c, *multipliers)?;
            if let Some(path) = out {
                p.coloring.store(path)?;
            }
            let text = format!(
                "{} product colors on [1, {}]\n",
                p.signatures.len(),
                p.coloring.domain_bound()
            );
            Output::new(
                json!({
                    "R": p.multiplier_bound,
                    "N": p.coloring.domain_bound(),
                    "num_colors": p.signatures.len(),
                    "signatures": p.signatures,
                    "class_sizes": p.coloring.class_sizes(),
                }),
                text,
            )
        }
    }
}
