//! Command-line front end: evaluate expressions, check properties, query
//! hull membership, enumerate universes, saturate families, run the
//! verification suites and export specialization diagrams.
//!
//! Exit codes: 0 success, 1 assertion failure, 2 usage error.

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::classes::{in_hull, Catalog, ClosureRules, FamilyClosure, HullKind, Pred};
use crate::error::{Error, Result};
use crate::expr::{eval, parse, SymbolicValue, Value};
use crate::prime::accumulation_points;
use crate::space::{mask_contains, mask_points, FinSpace, SpaceJson, TopProperty};
use crate::suites;

#[derive(Parser)]
#[command(
    name = "fintop",
    about = "A calculus for finite topological spaces",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate an expression and print the resulting space.
    Eval {
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Check a topological property of an expression (exit 1 when false).
    Check {
        expr: String,
        /// one of: t0, t1, connected, locally_connected, zero_dimensional,
        /// totally_disconnected, discrete, indiscrete
        prop: String,
        #[arg(long)]
        json: bool,
    },
    /// Hull membership: `hull KIND EXPR vs FAMILY...`.
    Hull {
        /// coreflective, epireflective or bireflective
        kind: String,
        expr: String,
        /// family expressions; a leading literal `vs` is accepted
        #[arg(num_args = 1..)]
        family: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// List all homeomorphism classes with exactly N points.
    Universe {
        n: usize,
        #[arg(long, default_value = "all")]
        pred: String,
        #[arg(long)]
        json: bool,
    },
    /// Saturate a seed family under the closure rules.
    Saturate {
        /// seed expressions
        #[arg(num_args = 1..)]
        seeds: Vec<String>,
        #[arg(long, default_value_t = 6)]
        bound: usize,
        #[arg(long, default_value_t = 3)]
        copies: usize,
        #[arg(long, default_value = "all")]
        pred: String,
        /// comma-separated subset of: subspace, prime_factor, quotients
        #[arg(long, default_value = "subspace,prime_factor,quotients")]
        rules: String,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite (exit 1 on any failing check).
    Verify {
        /// one of: prime_decomp, pinch, retraction, heredity, t0, towers,
        /// lmp, omega
        suite: String,
        #[arg(long)]
        json: bool,
        /// override a suite's size bound where it has one
        #[arg(long)]
        bound: Option<usize>,
        /// override the seed of the randomized sweeps
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print the Hasse diagram of the specialization preorder as DOT.
    ExportDot { expr: String },
}

pub fn main() -> i32 {
    run(std::env::args().collect())
}

pub fn run(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap prints help/version through the error path with status 0
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn eval_finite(src: &str) -> Result<FinSpace> {
    eval(&parse(src)?)?.finite()
}

#[derive(Serialize)]
struct ClosureJson {
    seeds: Vec<SpaceJson>,
    rules: Vec<String>,
    point_bound: usize,
    sum_copy_bound: usize,
    pred: String,
    members: Vec<SpaceJson>,
    saturated: bool,
}

fn closure_json(c: &FamilyClosure) -> Result<ClosureJson> {
    let mut rules = Vec::new();
    if c.rules.subspace {
        rules.push("subspace".to_string());
    }
    if c.rules.prime_factor {
        rules.push("prime_factor".to_string());
    }
    if c.rules.bounded_quotient_of_sums {
        rules.push("bounded_quotient_of_sums".to_string());
    }
    Ok(ClosureJson {
        seeds: c
            .seeds
            .iter()
            .map(SpaceJson::from_space)
            .collect::<Result<_>>()?,
        rules,
        point_bound: c.point_bound,
        sum_copy_bound: c.sum_copy_bound,
        pred: c.pred.name().to_string(),
        members: sorted_listing(&c.members)?,
        saturated: c.saturated,
    })
}

fn sorted_listing(members: &[FinSpace]) -> Result<Vec<SpaceJson>> {
    let mut with_keys: Vec<(usize, Vec<crate::space::Mask>, &FinSpace)> = members
        .iter()
        .map(|m| Ok((m.n(), m.opens()?, m)))
        .collect::<Result<_>>()?;
    with_keys.sort();
    with_keys
        .into_iter()
        .map(|(_, _, m)| SpaceJson::from_space(m))
        .collect()
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Eval { expr, json } => {
            let value = eval(&parse(&expr)?)?;
            match value {
                Value::Finite(space) => {
                    if json {
                        println!("{}", space.to_json()?);
                    } else {
                        let opens = space.opens()?;
                        println!("points: {}", space.n());
                        let rendered: Vec<String> = opens
                            .iter()
                            .map(|&m| {
                                let pts: Vec<String> =
                                    mask_points(m).map(|p| p.to_string()).collect();
                                format!("[{}]", pts.join(","))
                            })
                            .collect();
                        println!("opens: [{}]", rendered.join(","));
                    }
                }
                Value::Symbolic(s) => {
                    let name = match s {
                        SymbolicValue::COmega => "Comega",
                        SymbolicValue::CofiniteSpace => "Cof",
                    };
                    if json {
                        println!("{{\"symbolic\":\"{name}\"}}");
                    } else {
                        println!("symbolic space: {name}");
                    }
                }
            }
            Ok(0)
        }
        Cmd::Check { expr, prop, json } => {
            let property = TopProperty::parse(&prop).ok_or_else(|| {
                Error::BadParameters(format!(
                    "unknown property '{prop}'; available: {}",
                    TopProperty::ALL
                        .iter()
                        .map(|p| p.name())
                        .collect::<Vec<_>>()
                        .join(", ")
                ))
            })?;
            let space = eval_finite(&expr)?;
            let value = space.check(property);
            if json {
                println!("{{\"expr\":{expr:?},\"prop\":\"{prop}\",\"value\":{value}}}");
            } else {
                println!("{value}");
            }
            Ok(if value { 0 } else { 1 })
        }
        Cmd::Hull {
            kind,
            expr,
            family,
            json,
        } => {
            let hull_kind = HullKind::parse(&kind).ok_or_else(|| {
                Error::BadParameters(format!(
                    "unknown hull kind '{kind}'; available: coreflective, epireflective, bireflective"
                ))
            })?;
            let space = eval_finite(&expr)?;
            let members: Vec<FinSpace> = family
                .iter()
                .filter(|s| s.as_str() != "vs")
                .map(|s| eval_finite(s))
                .collect::<Result<_>>()?;
            let (member, _) = in_hull(hull_kind, &space, &members);
            if json {
                println!(
                    "{{\"kind\":\"{kind}\",\"expr\":{expr:?},\"family_size\":{},\"member\":{member}}}",
                    members.len()
                );
            } else {
                println!("{member}");
            }
            Ok(if member { 0 } else { 1 })
        }
        Cmd::Universe { n, pred, json } => {
            let p = Pred::parse(&pred)
                .ok_or_else(|| Error::BadParameters(format!("unknown predicate '{pred}'")))?;
            let mut cat = Catalog::new();
            let ids = cat.universe(n, p)?;
            let spaces = cat.spaces_of(&ids);
            if json {
                #[derive(Serialize)]
                struct UniverseJson {
                    n: usize,
                    pred: String,
                    count: usize,
                    members: Vec<SpaceJson>,
                }
                let out = UniverseJson {
                    n,
                    pred: p.name().to_string(),
                    count: spaces.len(),
                    members: spaces
                        .iter()
                        .map(SpaceJson::from_space)
                        .collect::<Result<_>>()?,
                };
                println!(
                    "{}",
                    serde_json::to_string(&out).map_err(|e| Error::Json(e.to_string()))?
                );
            } else {
                println!("{} classes with exactly {} points ({})", spaces.len(), n, p.name());
                for s in &spaces {
                    println!("{}", s.to_json()?);
                }
            }
            Ok(0)
        }
        Cmd::Saturate {
            seeds,
            bound,
            copies,
            pred,
            rules,
            json,
        } => {
            let p = Pred::parse(&pred)
                .ok_or_else(|| Error::BadParameters(format!("unknown predicate '{pred}'")))?;
            let mut rule_set = ClosureRules {
                subspace: false,
                prime_factor: false,
                bounded_quotient_of_sums: false,
            };
            for r in rules.split(',').filter(|r| !r.is_empty()) {
                match r.trim() {
                    "subspace" => rule_set.subspace = true,
                    "prime_factor" => rule_set.prime_factor = true,
                    "quotients" | "bounded_quotient_of_sums" => {
                        rule_set.bounded_quotient_of_sums = true
                    }
                    other => {
                        return Err(Error::BadParameters(format!("unknown rule '{other}'")))
                    }
                }
            }
            let seed_spaces: Vec<FinSpace> = seeds
                .iter()
                .map(|s| eval_finite(s))
                .collect::<Result<_>>()?;
            let mut cat = Catalog::new();
            let closure = cat.saturate(&seed_spaces, rule_set, bound, copies, p)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string(&closure_json(&closure)?)
                        .map_err(|e| Error::Json(e.to_string()))?
                );
            } else {
                println!(
                    "{} members (bound {}, copies {}, pred {})",
                    closure.members.len(),
                    bound,
                    copies,
                    p.name()
                );
                for m in sorted_listing(&closure.members)? {
                    println!(
                        "{}",
                        serde_json::to_string(&m).map_err(|e| Error::Json(e.to_string()))?
                    );
                }
            }
            Ok(0)
        }
        Cmd::Verify {
            suite,
            json,
            bound,
            seed,
        } => {
            let mut cat = Catalog::new();
            let report = suites::run_suite(&suite, &mut cat, suites::SuiteOptions { bound, seed })?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string(&report).map_err(|e| Error::Json(e.to_string()))?
                );
            } else {
                for check in &report.checks {
                    println!(
                        "{}: {} — {}",
                        check.label,
                        if check.pass { "PASS" } else { "FAIL" },
                        check.details
                    );
                }
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
        Cmd::ExportDot { expr } => {
            let space = eval_finite(&expr)?;
            print!("{}", export_dot(&space));
            Ok(0)
        }
    }
}

/// Hasse reduction of the specialization preorder in DOT format.
/// Accumulation points are double-circled; points with equal closures are
/// clustered with dashed edges and drawn on the same rank.
pub fn export_dot(x: &FinSpace) -> String {
    let n = x.n();
    let acc = accumulation_points(x);
    let mut out = String::from("digraph specialization {\n  rankdir=BT;\n");
    for p in 0..n {
        let shape = if mask_contains(acc, p) {
            "doublecircle"
        } else {
            "circle"
        };
        out.push_str(&format!("  p{p} [label=\"{p}\", shape={shape}];\n"));
    }
    // equivalence classes of mutual specialization
    let mut class_of = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for p in 0..n {
        let found = reps
            .iter()
            .position(|&r| x.min_nbhd(r) == x.min_nbhd(p));
        match found {
            Some(i) => class_of[p] = i,
            None => {
                class_of[p] = reps.len();
                reps.push(p);
            }
        }
    }
    for (i, &r) in reps.iter().enumerate() {
        let members: Vec<usize> = (0..n).filter(|&p| class_of[p] == i).collect();
        if members.len() > 1 {
            let named: Vec<String> = members.iter().map(|p| format!("p{p}")).collect();
            out.push_str(&format!("  {{ rank=same; {}; }}\n", named.join("; ")));
            for w in members.windows(2) {
                out.push_str(&format!(
                    "  p{} -> p{} [dir=none, style=dashed];\n",
                    w[0], w[1]
                ));
            }
        }
        let _ = r;
    }
    // covers of the strict order on classes
    let lt = |a: usize, b: usize| {
        mask_contains(x.min_nbhd(a), b) && !mask_contains(x.min_nbhd(b), a)
    };
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            if i == j || !lt(a, b) {
                continue;
            }
            let covered = reps
                .iter()
                .enumerate()
                .any(|(k, &c)| k != i && k != j && lt(a, c) && lt(c, b));
            if !covered {
                out.push_str(&format!("  p{a} -> p{b};\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> i32 {
        run(std::iter::once("fintop")
            .chain(args.iter().copied())
            .map(String::from)
            .collect())
    }

    #[test]
    fn check_exit_codes() {
        assert_eq!(run_args(&["check", "tri(S,S,0)", "t0"]), 0);
        assert_eq!(run_args(&["check", "I(2)", "t0"]), 1);
        assert_eq!(run_args(&["check", "S", "nonsense"]), 2);
        assert_eq!(run_args(&["eval", "tri(S, S)"]), 2);
    }

    #[test]
    fn hull_command() {
        assert_eq!(run_args(&["hull", "coreflective", "I(2)", "vs", "S"]), 0);
        assert_eq!(run_args(&["hull", "epireflective", "I(2)", "vs", "S"]), 1);
    }

    #[test]
    fn dot_output_shape() {
        let s = FinSpace::sierpinski();
        let dot = export_dot(&s);
        assert!(dot.contains("doublecircle"));
        // 0 lies in the closure of 1, so 0 sits below 1
        assert!(dot.contains("p0 -> p1"));
        let at = FinSpace::indiscrete(2);
        let dot = export_dot(&at);
        assert!(dot.contains("rank=same"));
        assert!(dot.contains("style=dashed"));
    }
}
