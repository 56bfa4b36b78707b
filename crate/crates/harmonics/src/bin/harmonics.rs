//! Command-line interface: expansion of the harmonic forms, verification of
//! the relation families, the bijection check, filtration tooling, and
//! Tanisaki quotient Hilbert data.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::Zero;
use rand::{Rng, SeedableRng};
use serde_json::json;

use harmonics::comb::{
    self, compositions, gf_identity_check, is_extreme_hook, k_subsets_of_range,
    parse_comma_subset, parse_order_file, phi, psi, render_qz, subsets_of_range,
    SubsetOfRange,
};
use harmonics::ops::{apply_diff_operator, d_i_vandermonde, elementary};
use harmonics::relations::{
    shifted_vandermonde_sum, verify_generic_pieri, verify_golden, verify_hook,
    RelationReport,
};
use harmonics::span::{
    annihilation_check, factor_dims_check, ideal_graded_dims, search_order, SearchOutcome,
};
use harmonics::text;

#[derive(Parser)]
#[command(name = "harmonics", version, about = "Exact calculus for harmonic differential forms of the symmetric group")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Output format for the primary stream.
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// RNG seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print d_I Δ_n, or ∂_{e_r(S)} d_I Δ_n when --e/--S are given.
    Expand {
        #[arg(long)]
        n: usize,
        /// Comma list, e.g. `1,3`; empty string for I = ∅.
        #[arg(long = "I", default_value = "")]
        i: String,
        /// Elementary degree r of the applied operator e_r(S).
        #[arg(long)]
        e: Option<usize>,
        /// Comma list for the window S of e_r(S); defaults to [n].
        #[arg(long = "S")]
        s: Option<String>,
    },
    /// Verify a relation family exactly.
    Verify {
        #[command(subcommand)]
        family: Family,
    },
    /// Check the subset/composition bijection and its statistics.
    Bijection {
        #[arg(long)]
        n: usize,
    },
    /// Run the filtration annihilation and factor-dimension checks.
    Filtration {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// File with one comma-list subset per line; defaults to descending
        /// Sum / reverse-lex order.
        #[arg(long)]
        order_file: Option<std::path::PathBuf>,
        /// Use the full Tanisaki generator set instead of essential ones.
        #[arg(long)]
        full_generators: bool,
    },
    /// Graded dimensions of ℚ[x]/𝓘_μ.
    Hilbert {
        /// Partition as a comma list, e.g. `2,1,1`.
        #[arg(long)]
        mu: String,
        #[arg(long)]
        degree_cap: Option<usize>,
    },
    /// Backtracking search for an order answering the filtration question.
    OrderSearch {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Generic Pieri Rule instances.
    Pieri {
        #[arg(long)]
        n: usize,
        /// Single instance, e.g. `--I 1,6`.
        #[arg(long = "I")]
        i: Option<String>,
        /// Verify every I ⊆ [n−1].
        #[arg(long)]
        all: bool,
    },
    /// Extreme hook relation instances.
    Hook {
        #[arg(long)]
        n: usize,
        #[arg(long = "I")]
        i: Option<String>,
        /// `0`, `0..2`, or omitted for all 0 ≤ u ≤ s.
        #[arg(long)]
        u: Option<String>,
        /// Verify every extreme-hook I ⊆ [n−1].
        #[arg(long)]
        all: bool,
    },
    /// The hard-coded displayed relations.
    Golden {
        /// n3k1, n7k2 or n8k3; omitted for all three.
        #[arg(long)]
        label: Option<String>,
    },
    /// Randomized shifted Vandermonde suite.
    Shiftedvdm {
        #[arg(long, default_value_t = 500)]
        cases: usize,
        #[arg(long, default_value_t = 4)]
        max_s: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.common.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("thread pool already initialized");
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<bool, String> {
    let out = cli.common.output;
    match &cli.cmd {
        Cmd::Expand { n, i, e, s } => {
            let i_set = parse_comma_subset(*n, i).map_err(|e| e.to_string())?;
            let mut p = d_i_vandermonde(i_set.elems(), *n);
            if let Some(r) = e {
                let window: Vec<usize> = match s {
                    Some(spec) => {
                        let sub = parse_comma_window(*n, spec)?;
                        sub
                    }
                    None => (1..=*n).collect(),
                };
                p = apply_diff_operator(&elementary(*n, *r, &window), &p);
            } else if s.is_some() {
                return Err("--S requires --e".into());
            }
            let rendered = text::render(&p);
            match out {
                Output::Text => println!("{}", rendered),
                Output::Json => println!(
                    "{}",
                    json!({"n": n, "I": i_set.elems(), "poly": rendered})
                ),
            }
            Ok(true)
        }
        Cmd::Verify { family } => verify(family, cli),
        Cmd::Bijection { n } => bijection(*n, out),
        Cmd::Filtration { n, k, order_file, full_generators } => {
            filtration(*n, *k, order_file.as_deref(), *full_generators, out)
        }
        Cmd::Hilbert { mu, degree_cap } => hilbert(mu, *degree_cap, out),
        Cmd::OrderSearch { n, k, budget } => order_search(*n, *k, *budget, out),
    }
}

/// A window for e_r(S): subsets of [n] (the full window included), unlike
/// subsets of [n−1].
fn parse_comma_window(n: usize, s: &str) -> Result<Vec<usize>, String> {
    let mut elems = Vec::new();
    for tok in s.trim().split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        let i: usize = tok.parse().map_err(|_| format!("bad window element `{}`", tok))?;
        if i < 1 || i > n {
            return Err(format!("window element {} outside [1,{}]", i, n));
        }
        elems.push(i);
    }
    elems.sort_unstable();
    elems.dedup();
    Ok(elems)
}

fn emit_report(rep: &RelationReport, out: Output) {
    match out {
        Output::Text => {
            let i_str = rep
                .i_set
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",");
            let u_str = rep.u.map_or(String::new(), |u| format!(" u={}", u));
            println!(
                "{} n={} I={{{}}}{}: {} ({} terms, {} ms)",
                rep.relation,
                rep.n,
                i_str,
                u_str,
                if rep.is_zero { "PASS" } else { "FAIL" },
                rep.term_count,
                rep.wall_ms
            );
        }
        Output::Json => println!("{}", serde_json::to_string(rep).unwrap()),
    }
}

fn verify(family: &Family, cli: &Cli) -> Result<bool, String> {
    let out = cli.common.output;
    match family {
        Family::Pieri { n, i, all } => {
            let instances: Vec<SubsetOfRange> = match (i, all) {
                (Some(spec), false) => {
                    vec![parse_comma_subset(*n, spec).map_err(|e| e.to_string())?]
                }
                (None, true) => subsets_of_range(*n),
                _ => return Err("pass exactly one of --I or --all".into()),
            };
            let mut ok = true;
            for i_set in &instances {
                let rep = verify_generic_pieri(*n, i_set);
                ok &= rep.is_zero;
                emit_report(&rep, out);
            }
            Ok(ok)
        }
        Family::Hook { n, i, u, all } => {
            let instances: Vec<SubsetOfRange> = match (i, all) {
                (Some(spec), false) => {
                    vec![parse_comma_subset(*n, spec).map_err(|e| e.to_string())?]
                }
                (None, true) => subsets_of_range(*n)
                    .into_iter()
                    .filter(|s| is_extreme_hook(s).is_some())
                    .collect(),
                _ => return Err("pass exactly one of --I or --all".into()),
            };
            let mut ok = true;
            for i_set in &instances {
                let s = is_extreme_hook(i_set)
                    .ok_or_else(|| format!("I={:?} is not an extreme hook", i_set))?;
                let us = parse_u_range(u.as_deref(), s)?;
                for uu in us {
                    let rep = verify_hook(*n, i_set, uu);
                    ok &= rep.is_zero;
                    emit_report(&rep, out);
                }
            }
            Ok(ok)
        }
        Family::Golden { label } => {
            let labels: Vec<&str> = match label {
                Some(l) => vec![l.as_str()],
                None => vec!["n3k1", "n7k2", "n8k3"],
            };
            let mut ok = true;
            for l in labels {
                if harmonics::relations::golden_terms(l).is_none() {
                    return Err(format!("unknown golden label `{}`", l));
                }
                let rep = verify_golden(l);
                ok &= rep.is_zero;
                emit_report(&rep, out);
            }
            Ok(ok)
        }
        Family::Shiftedvdm { cases, max_s } => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cli.common.seed);
            let mut ok = true;
            for case in 0..*cases {
                let s = rng.gen_range(1..=*max_s);
                let gamma: Vec<i64> = (0..s).map(|_| rng.gen_range(-5..=5)).collect();
                let alpha: Vec<i64> = (0..s).map(|_| rng.gen_range(-5..=5)).collect();
                let v: i64 = rng.gen_range(-3..=3);
                let mut pi: Vec<usize> = (1..=s).filter(|_| rng.gen_bool(0.7)).collect();
                if pi.is_empty() {
                    pi.push(rng.gen_range(1..=s));
                }
                let u = rng.gen_range(0..pi.len()) as u64;
                let val = shifted_vandermonde_sum(&gamma, &alpha, &pi, u, v);
                let pass = val.is_zero();
                ok &= pass;
                if !pass || cli.common.output == Output::Json {
                    let line = json!({
                        "relation": "shifted_vandermonde", "case": case,
                        "gamma": gamma, "alpha": alpha, "pi": pi, "u": u, "v": v,
                        "isZero": pass,
                    });
                    println!("{}", line);
                }
            }
            if cli.common.output == Output::Text {
                println!(
                    "shifted_vandermonde: {} ({} cases, seed {})",
                    if ok { "PASS" } else { "FAIL" },
                    cases,
                    cli.common.seed
                );
            }
            Ok(ok)
        }
    }
}

fn parse_u_range(spec: Option<&str>, s: usize) -> Result<Vec<usize>, String> {
    match spec {
        None => Ok((0..=s).collect()),
        Some(t) => {
            let t = t.trim();
            if let Some((a, b)) = t.split_once("..") {
                let a: usize = a.parse().map_err(|_| format!("bad u range `{}`", t))?;
                let b: usize = b.parse().map_err(|_| format!("bad u range `{}`", t))?;
                if a > b || b > s {
                    return Err(format!("u range `{}` outside 0..={}", t, s));
                }
                Ok((a..=b).collect())
            } else {
                let u: usize = t.parse().map_err(|_| format!("bad u `{}`", t))?;
                if u > s {
                    return Err(format!("u = {} exceeds s = {}", u, s));
                }
                Ok(vec![u])
            }
        }
    }
}

fn bijection(n: usize, out: Output) -> Result<bool, String> {
    let mut ok = true;
    for alpha in compositions(n) {
        let i_set = psi(&alpha);
        ok &= comb::deg_comp(&alpha) == comb::deg_subset(&i_set);
        ok &= phi(n, &i_set) == alpha;
    }
    for i_set in subsets_of_range(n) {
        ok &= psi(&phi(n, &i_set)) == i_set;
    }
    let (lhs, rhs, eq) = gf_identity_check(n);
    ok &= eq;
    match out {
        Output::Text => {
            println!(
                "bijection n={}: {}",
                n,
                if ok { "identity holds" } else { "FAIL" }
            );
            println!("lhs: {}", render_qz(&lhs));
            println!("rhs: {}", render_qz(&rhs));
        }
        Output::Json => println!(
            "{}",
            json!({
                "n": n, "pass": ok,
                "lhs": render_qz(&lhs), "rhs": render_qz(&rhs),
            })
        ),
    }
    Ok(ok)
}

fn default_order(n: usize, k: usize) -> Vec<SubsetOfRange> {
    let mut order = k_subsets_of_range(n, k);
    order.sort_by(|a, b| b.sum().cmp(&a.sum()).then_with(|| b.elems().cmp(a.elems())));
    order
}

fn filtration(
    n: usize,
    k: usize,
    order_file: Option<&std::path::Path>,
    full_generators: bool,
    out: Output,
) -> Result<bool, String> {
    let order = match order_file {
        Some(path) => {
            let body = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {}", path.display(), e))?;
            parse_order_file(n, &body).map_err(|e| e.to_string())?
        }
        None => default_order(n, k),
    };
    let steps = annihilation_check(n, k, &order, full_generators);
    let all_pass = steps.iter().all(|s| s.pass);
    let dims_ok = factor_dims_check(n, k, &order);
    match out {
        Output::Text => {
            for step in &steps {
                let fails: Vec<String> = step
                    .generators
                    .iter()
                    .filter(|g| !g.member)
                    .map(|g| format!("e_{}({:?})", g.r, g.s))
                    .collect();
                let i_str = step
                    .i_set
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                if step.pass {
                    println!("step I={{{}}}: PASS", i_str);
                } else {
                    println!("step I={{{}}}: FAIL ({})", i_str, fails.join(", "));
                }
            }
            println!(
                "factor dimensions: {}",
                if dims_ok { "PASS" } else { "FAIL" }
            );
        }
        Output::Json => {
            let payload = json!({
                "n": n, "k": k,
                "order": order.iter().map(|s| s.elems().to_vec()).collect::<Vec<_>>(),
                "steps": steps,
                "factorDimsPass": dims_ok,
            });
            println!("{}", payload);
        }
    }
    Ok(all_pass && dims_ok)
}

fn hilbert(mu_spec: &str, degree_cap: Option<usize>, out: Output) -> Result<bool, String> {
    let comp = comb::parse_composition(mu_spec).map_err(|e| e.to_string())?;
    let mu = comp.sorted_partition();
    let n: usize = mu.iter().sum();
    let cap = degree_cap.unwrap_or(n * (n - 1) / 2);
    let dims = ideal_graded_dims(&mu, cap);
    let total: usize = dims.iter().sum();
    match out {
        Output::Text => {
            let rendered: Vec<String> = dims
                .iter()
                .enumerate()
                .filter(|(_, &d)| d > 0)
                .map(|(deg, d)| format!("{}:{}", deg, d))
                .collect();
            println!("mu={:?} dims {{{}}} total {}", mu, rendered.join(", "), total);
        }
        Output::Json => {
            println!("{}", json!({"mu": mu, "dims": dims, "total": total}));
        }
    }
    Ok(true)
}

fn order_search(n: usize, k: usize, budget: usize, out: Output) -> Result<bool, String> {
    match search_order(n, k, budget) {
        SearchOutcome::Found(order) => {
            match out {
                Output::Text => {
                    for i_set in &order {
                        println!(
                            "{}",
                            i_set
                                .elems()
                                .iter()
                                .map(|x| x.to_string())
                                .collect::<Vec<_>>()
                                .join(",")
                        );
                    }
                }
                Output::Json => println!(
                    "{}",
                    json!({
                        "n": n, "k": k, "found": true,
                        "order": order.iter().map(|s| s.elems().to_vec()).collect::<Vec<_>>(),
                    })
                ),
            }
            Ok(true)
        }
        SearchOutcome::NoneExists => {
            match out {
                Output::Text => println!("no order exists"),
                Output::Json => {
                    println!("{}", json!({"n": n, "k": k, "found": false, "exhaustive": true}))
                }
            }
            Ok(false)
        }
        SearchOutcome::BudgetExhausted => {
            match out {
                Output::Text => println!("budget exhausted before completion"),
                Output::Json => {
                    println!("{}", json!({"n": n, "k": k, "found": false, "exhaustive": false}))
                }
            }
            Ok(false)
        }
    }
}
