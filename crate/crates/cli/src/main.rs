//! One-shot CLI for exact polynomial counting over finite fields.
//!
//! Every invocation prints a single JSON document with the echoed request,
//! the resulting count(s) as decimal strings, the method used, and the
//! elapsed time. Counts are never emitted as native numbers; they exceed
//! 64-bit range at moderate parameters.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 input error,
//! 3 capacity error.

use std::collections::BTreeSet;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fqcount::closed_form::{
    count_irreducible_total, count_irreducible_trace, count_pattern_w0, count_pattern_w1,
    rs_distance_count, smooth_w0, smooth_w1, PatternSpec, SmoothMethod,
};
use fqcount::group_ring::{
    count_irreducible_general, count_pattern_general, GroupAlgebra, GroupElem,
};
use fqcount::oracle::{oracle_count, oracle_table, Constraint, OracleQuery};
use fqcount::{Error, FieldCtx, FqElem, Mode, PrimePower};

/// Environment variable overriding the enumeration budget (total
/// polynomials one oracle pass may visit).
const BUDGET_ENV: &str = "FQCOUNT_BUDGET";

#[derive(Parser)]
#[command(
    name = "fqcount",
    version,
    about = "Exact counts of monic polynomials over finite fields by factorization pattern"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Count distinct irreducible factors per degree.
    Distinct,
    /// Count irreducible factors per degree with multiplicity.
    Multiplicity,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Distinct => Mode::Distinct,
            ModeArg::Multiplicity => Mode::Multiplicity,
        }
    }
}

impl ModeArg {
    fn name(self) -> &'static str {
        match self {
            ModeArg::Distinct => "distinct",
            ModeArg::Multiplicity => "multiplicity",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CountMethodArg {
    Formula,
    Oracle,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum SmoothMethodArg {
    Complement,
    Partition,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Count monic irreducibles of degree m, optionally with the first w
    /// coefficients prescribed.
    Irreducible {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        e: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 0)]
        w: u32,
        /// Prescribed coefficients f_1..f_w, comma-separated; extension
        /// field elements as colon-separated residues.
        #[arg(long)]
        coeffs: Option<String>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Count monic degree-m polynomials with a prescribed factorization
    /// pattern and optionally prescribed coefficients.
    Count {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        e: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 0)]
        w: u32,
        #[arg(long)]
        coeffs: Option<String>,
        /// Pattern as degree:count pairs, e.g. "1:2,3:0".
        #[arg(long)]
        pattern: String,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = CountMethodArg::Formula)]
        method: CountMethodArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Count monic n-smooth polynomials of degree m (no irreducible factor
    /// of degree greater than n), for w <= 1.
    Smooth {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        e: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        w: u32,
        #[arg(long)]
        coeffs: Option<String>,
        #[arg(long, value_enum, default_value_t = SmoothMethodArg::Both)]
        method: SmoothMethodArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Number of Reed-Solomon codewords of dimension k at distance q-r from
    /// the word interpolated by the monic polynomial v.
    RsDistance {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        e: u32,
        #[arg(long)]
        k: u32,
        /// Monic polynomial, coefficients from the leading term down.
        #[arg(long)]
        v: String,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Compare formulas against one oracle enumeration over a whole grid of
    /// (w, m, coefficients, pattern) cells; report PASS or the first
    /// mismatch.
    Verify {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        e: u32,
        #[arg(long)]
        w_max: u32,
        #[arg(long)]
        m_max: u32,
        /// Degrees to constrain, comma-separated, e.g. "1,2".
        #[arg(long = "T")]
        t: String,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(cli.command) {
        Ok((mut doc, exit)) => {
            let elapsed = started.elapsed().as_secs_f64() * 1e3;
            doc["elapsed_ms"] = json!(elapsed);
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            );
            std::process::exit(exit);
        }
        Err(err) => {
            let (code, kind) = match &err {
                Error::Input(_) => (2, "input"),
                Error::Capacity(_) => (3, "capacity"),
            };
            eprintln!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "error": err.to_string(),
                    "kind": kind,
                }))
                .expect("serializable")
            );
            std::process::exit(code);
        }
    }
}

fn build_ctx(p: u64, e: u32) -> Result<FieldCtx, Error> {
    let mut ctx = FieldCtx::new(p, e)?;
    if let Ok(raw) = std::env::var(BUDGET_ENV) {
        let budget = raw.parse::<u64>().map_err(|_| {
            Error::Input(format!(
                "{BUDGET_ENV} must be a positive integer, got {raw:?}"
            ))
        })?;
        ctx.set_enum_budget(budget);
    }
    Ok(ctx)
}

/// Parse one field element as colon-separated residues without needing the
/// field tables; returns the residue vector.
fn parse_residues(p: u64, e: u32, s: &str) -> Result<Vec<u64>, Error> {
    let coords: Vec<u64> = s
        .split(':')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| Error::Input(format!("bad field element {s:?}")))
        })
        .collect::<Result<_, _>>()?;
    if coords.len() > e as usize {
        return Err(Error::Input(format!(
            "element {s:?} has {} coordinates but the field has degree {e}",
            coords.len()
        )));
    }
    if coords.iter().any(|&c| c >= p) {
        return Err(Error::Input(format!(
            "element {s:?} has a coordinate outside [0, {p})"
        )));
    }
    Ok(coords)
}

fn parse_coeff_strings(w: u32, coeffs: &Option<String>) -> Result<Vec<String>, Error> {
    match (w, coeffs) {
        (0, None) => Ok(vec![]),
        (0, Some(s)) if s.trim().is_empty() => Ok(vec![]),
        (0, Some(_)) => Err(Error::Input("coefficients given but w = 0".into())),
        (_, None) => Err(Error::Input(format!(
            "w = {w} requires --coeffs with {w} entries"
        ))),
        (_, Some(s)) => {
            let parts: Vec<String> = s.split(',').map(|x| x.trim().to_string()).collect();
            if parts.len() != w as usize {
                return Err(Error::Input(format!(
                    "expected {w} coefficients, got {}",
                    parts.len()
                )));
            }
            Ok(parts)
        }
    }
}

fn parse_pattern(s: &str, mode: Mode) -> Result<PatternSpec, Error> {
    let mut entries = Vec::new();
    for part in s.split(',') {
        let (i, r) = part
            .split_once(':')
            .ok_or_else(|| Error::Input(format!("pattern entry {part:?} is not degree:count")))?;
        let i: u32 = i
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("bad degree in pattern entry {part:?}")))?;
        let r: u32 = r
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("bad count in pattern entry {part:?}")))?;
        entries.push((i, r));
    }
    PatternSpec::new(mode, entries)
}

fn parse_degree_set(s: &str) -> Result<BTreeSet<u32>, Error> {
    let t: BTreeSet<u32> = s
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<u32>()
                .map_err(|_| Error::Input(format!("bad degree {part:?} in --T")))
        })
        .collect::<Result<_, _>>()?;
    if t.is_empty() || t.contains(&0) {
        return Err(Error::Input("--T must list positive degrees".into()));
    }
    Ok(t)
}

fn run(command: Command) -> Result<(Value, i32), Error> {
    match command {
        Command::Irreducible {
            p,
            e,
            m,
            w,
            coeffs,
            format: _,
        } => {
            let q = PrimePower::new(p, e)?;
            if m == 0 {
                return Err(Error::Input("m must be positive".into()));
            }
            let coeff_strings = parse_coeff_strings(w, &coeffs)?;
            let count = match w {
                0 => count_irreducible_total(&q, m),
                1 => {
                    let residues = parse_residues(p, e, &coeff_strings[0])?;
                    count_irreducible_trace(&q, m, residues.iter().all(|&c| c == 0))
                }
                _ => {
                    let ctx = build_ctx(p, e)?;
                    let elems = coeff_strings
                        .iter()
                        .map(|s| ctx.elem_from_str(s))
                        .collect::<Result<Vec<_>, _>>()?;
                    count_irreducible_general(&ctx, w, m, &elems)?
                }
            };
            let doc = json!({
                "request": {
                    "command": "irreducible",
                    "p": p, "e": e, "m": m, "w": w,
                    "coeffs": coeffs,
                },
                "count": count.to_string(),
                "method": "formula",
            });
            Ok((doc, 0))
        }

        Command::Count {
            p,
            e,
            m,
            w,
            coeffs,
            pattern,
            mode,
            method,
            format: _,
        } => {
            let q = PrimePower::new(p, e)?;
            if m == 0 {
                return Err(Error::Input("m must be positive".into()));
            }
            let spec = parse_pattern(&pattern, mode.into())?;
            if spec.max_degree() > m {
                return Err(Error::Input(format!(
                    "pattern degree {} outside [1, {m}]",
                    spec.max_degree()
                )));
            }
            let coeff_strings = parse_coeff_strings(w, &coeffs)?;

            let formula = |q: &PrimePower| -> Result<_, Error> {
                match w {
                    0 => Ok(count_pattern_w0(q, m, &spec)),
                    1 => {
                        let residues = parse_residues(p, e, &coeff_strings[0])?;
                        Ok(count_pattern_w1(
                            q,
                            m,
                            residues.iter().all(|&c| c == 0),
                            &spec,
                        ))
                    }
                    _ => {
                        let ctx = build_ctx(p, e)?;
                        let elems = coeff_strings
                            .iter()
                            .map(|s| ctx.elem_from_str(s))
                            .collect::<Result<Vec<_>, _>>()?;
                        count_pattern_general(&ctx, w, m, &elems, &spec)
                    }
                }
            };
            let oracle = || -> Result<_, Error> {
                let ctx = build_ctx(p, e)?;
                let elems = coeff_strings
                    .iter()
                    .map(|s| ctx.elem_from_str(s))
                    .collect::<Result<Vec<FqElem>, _>>()?;
                let query = OracleQuery::new(&ctx, w, m, elems, Constraint::Pattern(spec.clone()))?;
                oracle_count(&query)
            };

            let request = json!({
                "command": "count",
                "p": p, "e": e, "m": m, "w": w,
                "coeffs": coeffs,
                "pattern": pattern,
                "mode": mode.name(),
            });
            match method {
                CountMethodArg::Formula => {
                    let count = formula(&q)?;
                    Ok((
                        json!({
                            "request": request,
                            "count": count.to_string(),
                            "method": "formula",
                        }),
                        0,
                    ))
                }
                CountMethodArg::Oracle => {
                    let count = oracle()?;
                    Ok((
                        json!({
                            "request": request,
                            "count": count.to_string(),
                            "method": "oracle",
                        }),
                        0,
                    ))
                }
                CountMethodArg::Both => {
                    let by_formula = formula(&q)?;
                    let by_oracle = oracle()?;
                    let agree = by_formula == by_oracle;
                    let doc = json!({
                        "request": request,
                        "count": by_formula.to_string(),
                        "counts": {
                            "formula": by_formula.to_string(),
                            "oracle": by_oracle.to_string(),
                        },
                        "method": "both",
                        "verdict": if agree { "PASS" } else { "MISMATCH" },
                    });
                    Ok((doc, if agree { 0 } else { 1 }))
                }
            }
        }

        Command::Smooth {
            p,
            e,
            m,
            n,
            w,
            coeffs,
            method,
            format: _,
        } => {
            let q = PrimePower::new(p, e)?;
            if m == 0 || n == 0 {
                return Err(Error::Input("m and n must be positive".into()));
            }
            if n > m {
                return Err(Error::Input(format!(
                    "need 1 <= n <= m, got n = {n}, m = {m}"
                )));
            }
            if w > 1 {
                return Err(Error::Input(
                    "smooth counts support w <= 1; compose pattern queries for larger w".into(),
                ));
            }
            let coeff_strings = parse_coeff_strings(w, &coeffs)?;
            let alpha_is_zero = if w == 1 {
                parse_residues(p, e, &coeff_strings[0])?
                    .iter()
                    .all(|&c| c == 0)
            } else {
                false
            };
            let eval = |sm: SmoothMethod| {
                if w == 0 {
                    smooth_w0(&q, m, n, sm)
                } else {
                    smooth_w1(&q, m, n, alpha_is_zero, sm)
                }
            };
            let request = json!({
                "command": "smooth",
                "p": p, "e": e, "m": m, "n": n, "w": w,
                "coeffs": coeffs,
            });
            match method {
                SmoothMethodArg::Complement => {
                    let count = eval(SmoothMethod::Complement);
                    Ok((
                        json!({
                            "request": request,
                            "count": count.to_string(),
                            "method": "complement",
                        }),
                        0,
                    ))
                }
                SmoothMethodArg::Partition => {
                    let count = eval(SmoothMethod::Partition);
                    Ok((
                        json!({
                            "request": request,
                            "count": count.to_string(),
                            "method": "partition",
                        }),
                        0,
                    ))
                }
                SmoothMethodArg::Both => {
                    let complement = eval(SmoothMethod::Complement);
                    let partition = eval(SmoothMethod::Partition);
                    let agree = complement == partition;
                    let doc = json!({
                        "request": request,
                        "count": complement.to_string(),
                        "counts": {
                            "complement": complement.to_string(),
                            "partition": partition.to_string(),
                        },
                        "method": "both",
                        "verdict": if agree { "PASS" } else { "MISMATCH" },
                    });
                    Ok((doc, if agree { 0 } else { 1 }))
                }
            }
        }

        Command::RsDistance {
            p,
            e,
            k,
            v,
            r,
            format: _,
        } => {
            let ctx = build_ctx(p, e)?;
            let v_poly = ctx.poly_from_str(&v)?;
            if (v_poly.degree() as u32) < k {
                return Err(Error::Input(format!(
                    "polynomial degree {} is below the code dimension k = {k}",
                    v_poly.degree()
                )));
            }
            let w = v_poly.degree() as u32 - k;
            let count = rs_distance_count(&ctx, k, w, &v_poly, r)?;
            let doc = json!({
                "request": {
                    "command": "rs-distance",
                    "p": p, "e": e, "k": k, "v": v, "r": r,
                },
                "count": count.to_string(),
                "w": w,
                "method": "formula",
            });
            Ok((doc, 0))
        }

        Command::Verify {
            p,
            e,
            w_max,
            m_max,
            t,
            mode,
            format: _,
        } => {
            let ctx = build_ctx(p, e)?;
            let q = ctx.prime_power();
            let t_all = parse_degree_set(&t)?;
            if m_max == 0 {
                return Err(Error::Input("m-max must be positive".into()));
            }
            let mode_core: Mode = mode.into();

            let mut cells = 0u64;
            let mut mismatch: Option<Value> = None;
            'grid: for m in 1..=m_max {
                let t_m: BTreeSet<u32> = t_all.iter().copied().filter(|&i| i <= m).collect();
                if t_m.is_empty() {
                    continue;
                }
                let degrees: Vec<u32> = t_m.iter().copied().collect();
                for w in 0..=w_max.min(m) {
                    let table = oracle_table(&ctx, w, m, &t_m, mode_core)?;
                    let classes: Vec<GroupElem> = match w {
                        0 => vec![GroupElem::identity(0)],
                        1 => ctx.elems().map(|a| GroupElem::new(1, vec![a])).collect(),
                        _ => {
                            let algebra = GroupAlgebra::new(&ctx, w)?;
                            (0..algebra.size()).map(|i| algebra.elem_at(i)).collect()
                        }
                    };
                    for class in &classes {
                        for counts in pattern_rectangle(&degrees, m) {
                            let spec = PatternSpec::new(
                                mode_core,
                                degrees.iter().copied().zip(counts.iter().copied()),
                            )?;
                            let formula = match w {
                                0 => count_pattern_w0(&q, m, &spec),
                                1 => count_pattern_w1(&q, m, class.coeffs()[0].is_zero(), &spec),
                                _ => count_pattern_general(&ctx, w, m, class.coeffs(), &spec)?,
                            };
                            let by_oracle = table.count(class, &counts);
                            cells += 1;
                            if formula != by_oracle {
                                let coeffs: Vec<String> = class
                                    .coeffs()
                                    .iter()
                                    .map(|&a| ctx.elem_to_string(a))
                                    .collect();
                                mismatch = Some(json!({
                                    "w": w,
                                    "m": m,
                                    "coeffs": coeffs.join(","),
                                    "pattern": counts,
                                    "formula": formula.to_string(),
                                    "oracle": by_oracle.to_string(),
                                }));
                                break 'grid;
                            }
                        }
                    }
                }
            }

            let pass = mismatch.is_none();
            let doc = json!({
                "request": {
                    "command": "verify",
                    "p": p, "e": e, "w_max": w_max, "m_max": m_max,
                    "T": t, "mode": mode.name(),
                },
                "verdict": if pass { "PASS" } else { "MISMATCH" },
                "cells": cells,
                "mismatch": mismatch,
                "method": "verify",
            });
            Ok((doc, if pass { 0 } else { 1 }))
        }
    }
}

/// Every count vector with r_i <= m / i per coordinate.
fn pattern_rectangle(degrees: &[u32], m: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &i in degrees {
        let mut next = Vec::new();
        for prefix in &out {
            for r in 0..=m / i {
                let mut v = prefix.clone();
                v.push(r);
                next.push(v);
            }
        }
        out = next;
    }
    out
}
