//! Ground-truth brute force: enumerate every monic polynomial in range,
//! factor it by trial division, and tally whatever was asked.
//!
//! This module is the independent side of every identity the crate claims.
//! It never samples and never approximates; if a query does not fit the
//! enumeration budget it refuses rather than degrade.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::closed_form::PatternSpec;
use crate::error::{capacity_err, input_err, Result};
use crate::field::{
    factor_with_table, irreducibles_up_to, pattern_of, FieldCtx, FqElem, FqPoly, Mode,
};
use crate::group_ring::{reduce, GroupElem};

/// What to test each enumerated polynomial against.
#[derive(Clone, Debug)]
pub enum Constraint {
    /// Exact factorization pattern over the pattern's T, in its mode.
    Pattern(PatternSpec),
    /// No irreducible factor of degree greater than n.
    Smooth(u32),
    /// Irreducible: a single factor with multiplicity 1.
    Irreducible,
}

/// One brute-force counting request: the q^{m-w} monic degree-m polynomials
/// with prescribed coefficients f_1..f_w, filtered by a constraint.
#[derive(Debug)]
pub struct OracleQuery<'a> {
    ctx: &'a FieldCtx,
    w: u32,
    m: u32,
    coeffs: Vec<FqElem>,
    constraint: Constraint,
}

impl<'a> OracleQuery<'a> {
    pub fn new(
        ctx: &'a FieldCtx,
        w: u32,
        m: u32,
        coeffs: Vec<FqElem>,
        constraint: Constraint,
    ) -> Result<Self> {
        if m == 0 {
            return input_err("degree must be positive");
        }
        if m < w {
            return input_err(format!(
                "cannot prescribe {w} coefficients of a degree-{m} polynomial"
            ));
        }
        if coeffs.len() != w as usize {
            return input_err(format!("expected {w} coefficients, got {}", coeffs.len()));
        }
        if let Constraint::Pattern(spec) = &constraint {
            if spec.max_degree() > m {
                return input_err(format!(
                    "pattern degree {} outside [1, {m}]",
                    spec.max_degree()
                ));
            }
        }
        Ok(OracleQuery {
            ctx,
            w,
            m,
            coeffs,
            constraint,
        })
    }
}

fn checked_pow_within(q: u64, d: u32, budget: u64) -> Result<u64> {
    (0..d)
        .try_fold(1u64, |acc, _| acc.checked_mul(q).filter(|&v| v <= budget))
        .ok_or_else(|| {
            crate::error::Error::Capacity(format!(
                "enumerating {q}^{d} polynomials exceeds the budget of {budget}"
            ))
        })
}

/// Count by literal enumeration: factor each candidate and test the
/// constraint.
pub fn oracle_count(query: &OracleQuery) -> Result<BigInt> {
    let ctx = query.ctx;
    let free = query.m - query.w;
    let total = checked_pow_within(ctx.q(), free, ctx.enum_budget())?;
    let table = irreducibles_up_to(ctx, query.m / 2)?;

    let q = ctx.q();
    let mut tail = vec![ctx.zero(); query.m as usize];
    tail[..query.w as usize].copy_from_slice(&query.coeffs);
    let mut count = BigInt::zero();
    for c in 0..total {
        let mut rest = c;
        for j in (query.w as usize..query.m as usize).rev() {
            tail[j] = elem_from_digit(rest % q);
            rest /= q;
        }
        let f = FqPoly::from_tail(ctx, &tail);
        let fact = factor_with_table(ctx, &f, &table)?;
        let hit = match &query.constraint {
            Constraint::Pattern(spec) => {
                let got = pattern_of(&fact, &spec.degrees().collect(), spec.mode());
                spec.entries().all(|(i, r)| got[&i] == r)
            }
            Constraint::Smooth(n) => fact.factors().iter().all(|(g, _)| g.degree() as u32 <= *n),
            Constraint::Irreducible => fact.is_irreducible(),
        };
        if hit {
            count += BigInt::one();
        }
    }
    Ok(count)
}

fn elem_from_digit(d: u64) -> FqElem {
    // Enumeration digits are element indices; index order is the canonical
    // element order.
    FqElem::from_raw(d as u32)
}

/// Joint tally of (reversal class, pattern) over one full enumeration of
/// the monic degree-m polynomials. Patterns are canonical count vectors
/// aligned with the sorted degree set T, zeros included.
#[derive(Debug, Clone)]
pub struct TallyTable {
    w: u32,
    t: Vec<u32>,
    mode: Mode,
    m: u32,
    counts: BTreeMap<(GroupElem, Vec<u32>), BigInt>,
}

impl TallyTable {
    pub fn w(&self) -> u32 {
        self.w
    }

    pub fn degrees(&self) -> &[u32] {
        &self.t
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn degree_counted(&self) -> u32 {
        self.m
    }

    /// The tally for one (class, pattern) cell; absent cells are zero.
    pub fn count(&self, class: &GroupElem, pattern: &[u32]) -> BigInt {
        self.counts
            .get(&(class.clone(), pattern.to_vec()))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroupElem, &[u32], &BigInt)> {
        self.counts
            .iter()
            .map(|((class, pat), n)| (class, pat.as_slice(), n))
    }

    /// Sum of all cells; q^m for a full enumeration.
    pub fn total(&self) -> BigInt {
        self.counts.values().sum()
    }

    /// Collapse to a subset of the degrees, summing the dropped coordinates.
    /// One enumeration thereby serves every sub-pattern query.
    pub fn restrict(&self, t_sub: &BTreeSet<u32>) -> TallyTable {
        assert!(
            t_sub.iter().all(|i| self.t.contains(i)),
            "can only restrict to degrees the table was built with"
        );
        let keep: Vec<usize> = self
            .t
            .iter()
            .enumerate()
            .filter(|(_, i)| t_sub.contains(i))
            .map(|(pos, _)| pos)
            .collect();
        let mut counts: BTreeMap<(GroupElem, Vec<u32>), BigInt> = BTreeMap::new();
        for ((class, pat), n) in &self.counts {
            let sub: Vec<u32> = keep.iter().map(|&pos| pat[pos]).collect();
            *counts.entry((class.clone(), sub)).or_default() += n;
        }
        TallyTable {
            w: self.w,
            t: t_sub.iter().copied().collect(),
            mode: self.mode,
            m: self.m,
            counts,
        }
    }

    /// Collapse the class coordinate down to a shorter prescription length,
    /// summing classes that agree on their first w_sub coefficients.
    pub fn truncate_classes(&self, w_sub: u32) -> TallyTable {
        assert!(
            w_sub <= self.w,
            "can only truncate to a shorter prescription"
        );
        let mut counts: BTreeMap<(GroupElem, Vec<u32>), BigInt> = BTreeMap::new();
        for ((class, pat), n) in &self.counts {
            let short = GroupElem::new(w_sub, class.coeffs()[..w_sub as usize].to_vec());
            *counts.entry((short, pat.clone())).or_default() += n;
        }
        TallyTable {
            w: w_sub,
            t: self.t.clone(),
            mode: self.mode,
            m: self.m,
            counts,
        }
    }
}

/// One pass over all monic degree-m polynomials, tallying (class, pattern)
/// jointly.
pub fn oracle_table(
    ctx: &FieldCtx,
    w: u32,
    m: u32,
    t: &BTreeSet<u32>,
    mode: Mode,
) -> Result<TallyTable> {
    if m == 0 {
        return input_err("degree must be positive");
    }
    if t.is_empty() || t.iter().any(|&i| i == 0) {
        return input_err("degree set must be nonempty with positive degrees");
    }
    checked_pow_within(ctx.q(), m, ctx.enum_budget())?;
    if (ctx.q() as u128).pow(w.min(64)) > u32::MAX as u128 {
        return capacity_err(format!("class space {}^{w} is too large to tally", ctx.q()));
    }
    let table = irreducibles_up_to(ctx, m / 2)?;

    let degrees: Vec<u32> = t.iter().copied().collect();
    let mut counts: BTreeMap<(GroupElem, Vec<u32>), BigInt> = BTreeMap::new();
    for f in ctx.enumerate_monic(m)? {
        let fact = factor_with_table(ctx, &f, &table)?;
        let got = pattern_of(&fact, t, mode);
        let pattern: Vec<u32> = degrees.iter().map(|i| got[i]).collect();
        let class = reduce(&f, w);
        *counts.entry((class, pattern)).or_default() += 1;
    }
    Ok(TallyTable {
        w,
        t: degrees,
        mode,
        m,
        counts,
    })
}
