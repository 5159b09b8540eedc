//! Closed-form counts for monic polynomials with no prescribed coefficients
//! (w = 0) or a prescribed trace coefficient (w = 1): irreducible counts,
//! general factorization-pattern counts, the simplified large-degree
//! products, and n-smooth counts by two independent routes each.
//!
//! Conventions shared by every formula here:
//!
//! - a "pattern" fixes, for each degree i in a finite set T, how many
//!   irreducible factors of degree i the polynomial must have, either
//!   distinct (r_i) or counting multiplicity (l_i);
//! - inner sums carry a joint constraint such as sum_i i(r_i + j_i) <= m
//!   coupling the summation indices across T; these are implemented as loop
//!   bounds, never as post-hoc filters;
//! - intermediate values are exact rationals and the final count is asserted
//!   to be a nonnegative integer.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{input_err, Result};
use crate::exact::{
    big_pow, binom_int, binom_rat, divisors, expect_count, expect_integer, mobius, rat_from_int,
    rat_pow,
};
use crate::field::{FieldCtx, FqPoly, Mode, PrimePower};

/// A factorization-pattern constraint: for each degree i in T, the required
/// number of irreducible factors of degree i, in the given counting mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternSpec {
    mode: Mode,
    counts: BTreeMap<u32, u32>,
}

impl PatternSpec {
    /// Build a pattern; T is the key set of `counts` and must be nonempty
    /// with all degrees >= 1.
    pub fn new(mode: Mode, counts: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let counts: BTreeMap<u32, u32> = counts.into_iter().collect();
        if counts.is_empty() {
            return input_err("pattern must constrain at least one degree");
        }
        if counts.keys().any(|&i| i == 0) {
            return input_err("pattern degrees must be positive");
        }
        Ok(PatternSpec { mode, counts })
    }

    /// The all-zero pattern on T = {lo, ..., hi}; used for smooth counts.
    pub fn zero_range(mode: Mode, lo: u32, hi: u32) -> Result<Self> {
        PatternSpec::new(mode, (lo..=hi).map(|i| (i, 0)))
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.counts.keys().copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.counts.iter().map(|(&i, &r)| (i, r))
    }

    pub fn count(&self, i: u32) -> Option<u32> {
        self.counts.get(&i).copied()
    }

    pub fn max_degree(&self) -> u32 {
        *self.counts.keys().last().expect("pattern is nonempty")
    }
}

/// The reversal class of the prescribed leading coefficients when w <= 1:
/// trivial for w = 0, and determined by whether the trace coefficient is
/// zero for w = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceClass {
    W0,
    W1 { alpha_is_zero: bool },
}

impl TraceClass {
    /// The class of a monic polynomial's first w coefficients, for w <= 1.
    pub fn of_poly(v: &FqPoly, w: u32) -> Result<TraceClass> {
        match w {
            0 => Ok(TraceClass::W0),
            1 => Ok(TraceClass::W1 {
                alpha_is_zero: v.fcoeff(1).is_zero(),
            }),
            _ => input_err(format!("trace classes cover w <= 1, got w = {w}")),
        }
    }

    /// Pattern count within this class, dispatching on w.
    pub fn count_pattern(&self, q: &PrimePower, m: u32, spec: &PatternSpec) -> BigInt {
        match *self {
            TraceClass::W0 => count_pattern_w0(q, m, spec),
            TraceClass::W1 { alpha_is_zero } => count_pattern_w1(q, m, alpha_is_zero, spec),
        }
    }
}

/// Which of the two equivalent smooth-count formulas to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmoothMethod {
    /// Constrain degrees n+1..m to zero factors.
    Complement,
    /// Sum multiplicity patterns over all partitions of m into parts <= n.
    Partition,
}

/// Total number of monic irreducible polynomials of degree m over F_q:
/// (1/m) sum_{k|m} mu(m/k) q^k.
///
/// ```
/// use fqcount::closed_form::count_irreducible_total;
/// use fqcount::PrimePower;
///
/// let q = PrimePower::new(2, 1).unwrap();
/// assert_eq!(count_irreducible_total(&q, 4).to_string(), "3");
/// ```
pub fn count_irreducible_total(q: &PrimePower, m: u32) -> BigInt {
    assert!(m >= 1, "degree must be positive");
    let mut sum = BigInt::zero();
    for k in divisors(m as u64).expect("m >= 1") {
        sum += mobius(m as u64 / k).expect("divisor is positive") * big_pow(q.q(), k as u32);
    }
    let r = BigRational::new(sum, BigInt::from(m));
    let n = expect_integer(&r, "irreducible count");
    assert!(n.is_positive(), "irreducible count must be positive");
    n
}

/// The per-degree trace distribution of irreducibles: `I(i, <x+beta>)` equals
/// `a` for beta != 0 and `a + b` for beta = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceSplitPair {
    a: BigRational,
    b: BigRational,
}

impl TraceSplitPair {
    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }
}

/// Split |I_i| by trace class:
/// a_i = (1/(iq)) sum_{p∤k|i} mu(k) q^{i/k},
/// b_i = (1/i)    sum_{p|k|i} mu(k) q^{i/k}.
///
/// Both are asserted integral, with q*a_i + b_i = |I_i|, a_i >= 0 and
/// a_i + b_i >= 0.
pub fn trace_split(q: &PrimePower, i: u32) -> TraceSplitPair {
    assert!(i >= 1, "degree must be positive");
    let p = q.p();
    let mut coprime = BigInt::zero();
    let mut multiple = BigInt::zero();
    for k in divisors(i as u64).expect("i >= 1") {
        let term = mobius(k).expect("divisor is positive") * big_pow(q.q(), (i as u64 / k) as u32);
        if k % p == 0 {
            multiple += term;
        } else {
            coprime += term;
        }
    }
    let a = BigRational::new(coprime, BigInt::from(i as u64 * q.q()));
    let b = BigRational::new(multiple, BigInt::from(i));

    expect_integer(&a, "trace split a");
    expect_integer(&b, "trace split b");
    assert!(!a.is_negative(), "trace split a must be nonnegative");
    assert!(
        !(&a + &b).is_negative(),
        "trace split a+b must be nonnegative"
    );
    let total = rat_from_int(&count_irreducible_total(q, i));
    assert_eq!(
        &a * rat_pow(q.q(), 1) + &b,
        total,
        "trace split must partition the irreducible count"
    );
    TraceSplitPair { a, b }
}

/// Number of monic irreducibles of degree m over F_q with trace coefficient
/// beta, depending only on whether beta is zero.
pub fn count_irreducible_trace(q: &PrimePower, m: u32, beta_is_zero: bool) -> BigInt {
    let pair = trace_split(q, m);
    let value = if beta_is_zero {
        pair.a() + pair.b()
    } else {
        pair.a().clone()
    };
    expect_count(&value, "irreducible trace count")
}

fn sign(parity: u64) -> BigRational {
    if parity.is_multiple_of(2) {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// A_m(a, b): coefficient sequence of the trace-projected product
/// `prod_{f in I_i} (1 + <f> y)` at w = 1.
pub fn a_coeff(pair: &TraceSplitPair, m: u32, q: &PrimePower) -> BigRational {
    let p = q.p();
    let aq_over_p = pair.a() * rat_pow(q.q(), 1) / BigRational::from(BigInt::from(p));
    if pair.b().is_zero() {
        // single-term form, nonzero only when p | m
        if !(m as u64).is_multiple_of(p) {
            return BigRational::zero();
        }
        let m_over_p = m as u64 / p;
        binom_rat(&aq_over_p, m_over_p) * sign(m as u64 + m_over_p)
    } else {
        let mut sum = BigRational::zero();
        for j in 0..=(m as u64 / p) {
            sum +=
                binom_rat(&aq_over_p, j) * binom_rat(pair.b(), m as u64 - p * j) * sign(j + p * j);
        }
        sum
    }
}

/// B_m(a, b): coefficient sequence of the trace-projected product
/// `prod_{f in I_i} (1 - <f> y)^{-1}` at w = 1.
pub fn b_coeff(pair: &TraceSplitPair, m: u32, q: &PrimePower) -> BigRational {
    let p = q.p();
    let aq_over_p = pair.a() * rat_pow(q.q(), 1) / BigRational::from(BigInt::from(p));
    if pair.b().is_zero() {
        if !(m as u64).is_multiple_of(p) {
            return BigRational::zero();
        }
        let m_over_p = m as u64 / p;
        binom_rat(
            &(&aq_over_p + BigRational::from(BigInt::from(m_over_p)) - BigRational::one()),
            m_over_p,
        )
    } else {
        let mut sum = BigRational::zero();
        for j in 0..=(m as u64 / p) {
            let first = binom_rat(
                &(&aq_over_p + BigRational::from(BigInt::from(j)) - BigRational::one()),
                j,
            );
            let rest = m as u64 - p * j;
            let second = binom_rat(
                &(pair.b() + BigRational::from(BigInt::from(rest)) - BigRational::one()),
                rest,
            );
            sum += first * second;
        }
        sum
    }
}

/// Visit every tuple (j_i) indexed like `weights`, with j_i <= caps[i] and
/// sum_i weights[i] * j_i <= budget (== budget when `exact`). The joint
/// constraint is folded into the loop bounds.
pub(crate) fn visit_weighted_tuples(
    weights: &[u32],
    caps: &[u64],
    budget: u64,
    exact: bool,
    f: &mut dyn FnMut(&[u64]),
) {
    fn rec(
        weights: &[u32],
        caps: &[u64],
        remaining: u64,
        exact: bool,
        acc: &mut Vec<u64>,
        f: &mut dyn FnMut(&[u64]),
    ) {
        let pos = acc.len();
        if pos == weights.len() {
            if !exact || remaining == 0 {
                f(acc);
            }
            return;
        }
        let w = weights[pos] as u64;
        let max_j = caps[pos].min(remaining / w);
        for j in 0..=max_j {
            acc.push(j);
            rec(weights, caps, remaining - j * w, exact, acc, f);
            acc.pop();
        }
    }
    let mut acc = Vec::with_capacity(weights.len());
    rec(weights, caps, budget, exact, &mut acc, f);
}

fn cap_from_bigint(n: &BigInt, limit: u64) -> u64 {
    if n.is_negative() {
        return 0;
    }
    n.to_u64().map_or(limit, |v| v.min(limit))
}

/// The averaged ("E") part of every pattern count, without its q^{m-w}
/// prefactor:
///
/// prod_i C(|I_i|, r_i) q^{-i r_i}
///   * sum over (j_i) with sum i(r_i + j_i) <= m of
///     prod_i C(|I_i| - r_i, j_i) (-1)^{j_i} q^{-i j_i}
///
/// in distinct mode, and the analogue with C(|I_i| + l_i - 1, l_i) and
/// j_i <= |I_i| in multiplicity mode.
pub(crate) fn e_term_sum(q: &PrimePower, m: u32, spec: &PatternSpec) -> BigRational {
    let mut prefactor = BigRational::one();
    let mut weight_used = 0u64;
    let mut weights = Vec::new();
    let mut jmax = Vec::new();
    for (i, r) in spec.entries() {
        let icount = count_irreducible_total(q, i);
        let pref = match spec.mode() {
            Mode::Distinct => binom_int(&icount, r as u64),
            Mode::Multiplicity => binom_int(&(&icount + BigInt::from(r) - 1), r as u64),
        };
        if pref.is_zero() {
            return BigRational::zero();
        }
        prefactor *= rat_from_int(&pref) * rat_pow(q.q(), -((i as i64) * (r as i64)));
        weight_used += i as u64 * r as u64;
        weights.push(i);
        jmax.push(match spec.mode() {
            Mode::Distinct => icount - BigInt::from(r),
            Mode::Multiplicity => icount,
        });
    }
    if weight_used > m as u64 {
        return BigRational::zero();
    }
    let budget = m as u64 - weight_used;
    let caps: Vec<u64> = weights
        .iter()
        .zip(&jmax)
        .map(|(&i, n)| cap_from_bigint(n, budget / i as u64))
        .collect();

    let mut sum = BigRational::zero();
    visit_weighted_tuples(&weights, &caps, budget, false, &mut |js| {
        let mut term = BigRational::one();
        for ((&i, n), &j) in weights.iter().zip(&jmax).zip(js) {
            term *= rat_from_int(&binom_int(n, j))
                * sign(j)
                * rat_pow(q.q(), -((i as i64) * (j as i64)));
        }
        sum += term;
    });
    prefactor * sum
}

/// Count of monic degree-m polynomials over F_q with the prescribed
/// pattern and no coefficient constraint.
///
/// ```
/// use fqcount::closed_form::{count_pattern_w0, PatternSpec};
/// use fqcount::{Mode, PrimePower};
///
/// // cubics over F_2 with exactly one distinct root
/// let q = PrimePower::new(2, 1).unwrap();
/// let spec = PatternSpec::new(Mode::Distinct, [(1, 1)]).unwrap();
/// assert_eq!(count_pattern_w0(&q, 3, &spec).to_string(), "4");
/// ```
pub fn count_pattern_w0(q: &PrimePower, m: u32, spec: &PatternSpec) -> BigInt {
    assert!(m >= 1, "degree must be positive");
    assert!(spec.max_degree() <= m, "pattern degrees must lie in [1, m]");
    let total = rat_pow(q.q(), m as i64) * e_term_sum(q, m, spec);
    expect_count(&total, "pattern count (w = 0)")
}

/// v(alpha) = q*[alpha = 0] - 1, the coefficient of `<x+alpha>` in q*J.
fn v_of_alpha(q: &PrimePower, alpha_is_zero: bool) -> BigRational {
    if alpha_is_zero {
        rat_pow(q.q(), 1) - BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// The trace-corrected ("J") part of a w = 1 pattern count, without its
/// v(alpha)/q prefactor.
fn j_term_w1(q: &PrimePower, m: u32, spec: &PatternSpec) -> BigRational {
    let splits: Vec<(u32, u32, TraceSplitPair)> = spec
        .entries()
        .map(|(i, r)| (i, r, trace_split(q, i)))
        .collect();
    let weights: Vec<u32> = splits.iter().map(|&(i, _, _)| i).collect();

    match spec.mode() {
        Mode::Distinct => {
            // sum over (k_i) with sum i k_i = m of
            //   prod_i A_{k_i}(a_i, b_i) C(k_i, r_i) (-1)^{k_i - r_i}
            let caps: Vec<u64> = weights.iter().map(|&i| m as u64 / i as u64).collect();
            let mut sum = BigRational::zero();
            visit_weighted_tuples(&weights, &caps, m as u64, true, &mut |ks| {
                let mut term = BigRational::one();
                for ((_, r, pair), &k) in splits.iter().zip(ks) {
                    term *= a_coeff(pair, k as u32, q)
                        * binom_int(&BigInt::from(k), *r as u64)
                        * sign(k + *r as u64);
                }
                sum += term;
            });
            sum
        }
        Mode::Multiplicity => {
            // prod_i B_{l_i} carried along; sum over (k_i) with
            // sum i(l_i + k_i) = m of prod_i A_{k_i}(a_i, b_i) (-1)^{k_i}
            let mut weight_used = 0u64;
            let mut prefactor = BigRational::one();
            for (i, l, pair) in &splits {
                weight_used += *i as u64 * *l as u64;
                prefactor *= b_coeff(pair, *l, q);
            }
            if weight_used > m as u64 || prefactor.is_zero() {
                return BigRational::zero();
            }
            let budget = m as u64 - weight_used;
            let caps: Vec<u64> = weights.iter().map(|&i| budget / i as u64).collect();
            let mut sum = BigRational::zero();
            visit_weighted_tuples(&weights, &caps, budget, true, &mut |ks| {
                let mut term = BigRational::one();
                for ((_, _, pair), &k) in splits.iter().zip(ks) {
                    term *= a_coeff(pair, k as u32, q) * sign(k);
                }
                sum += term;
            });
            prefactor * sum
        }
    }
}

/// Count of monic degree-m polynomials with trace coefficient alpha and the
/// prescribed pattern, out of the q^{m-1} polynomials in the trace class.
pub fn count_pattern_w1(q: &PrimePower, m: u32, alpha_is_zero: bool, spec: &PatternSpec) -> BigInt {
    assert!(m >= 1, "degree must be positive");
    assert!(spec.max_degree() <= m, "pattern degrees must lie in [1, m]");
    let e_part = rat_pow(q.q(), m as i64 - 1) * e_term_sum(q, m, spec);
    let j_part = v_of_alpha(q, alpha_is_zero) / rat_pow(q.q(), 1) * j_term_w1(q, m, spec);
    expect_count(&(e_part + j_part), "pattern count (w = 1)")
}

/// Same value as [`count_pattern_w1`] via the simplified branches available
/// when p divides no degree in T (so b_i = 0 and q a_i = |I_i| throughout).
pub fn count_pattern_w1_special(
    q: &PrimePower,
    m: u32,
    alpha_is_zero: bool,
    spec: &PatternSpec,
) -> Result<BigInt> {
    assert!(m >= 1, "degree must be positive");
    assert!(spec.max_degree() <= m, "pattern degrees must lie in [1, m]");
    let p = q.p();
    if let Some(i) = spec.degrees().find(|&i| (i as u64).is_multiple_of(p)) {
        return input_err(format!(
            "simplified trace formula requires p to divide no pattern degree, got p = {p}, i = {i}"
        ));
    }

    let e_part = rat_pow(q.q(), m as i64 - 1) * e_term_sum(q, m, spec);

    let weights: Vec<u32> = spec.degrees().collect();
    let entries: Vec<(u32, u32, BigInt)> = spec
        .entries()
        .map(|(i, r)| {
            let icount = count_irreducible_total(q, i);
            let over_p = BigRational::new(icount, BigInt::from(p));
            (i, r, expect_integer(&over_p, "|I_i|/p with p coprime to i"))
        })
        .collect();

    let j_part = match spec.mode() {
        Mode::Distinct => {
            if !(m as u64).is_multiple_of(p) {
                BigRational::zero()
            } else {
                // sum over (k_i) with sum i k_i = m/p of
                //   prod_i C(|I_i|/p, k_i) C(p k_i, r_i) (-1)^{k_i - r_i}
                let budget = m as u64 / p;
                let caps: Vec<u64> = weights.iter().map(|&i| budget / i as u64).collect();
                let mut sum = BigRational::zero();
                visit_weighted_tuples(&weights, &caps, budget, true, &mut |ks| {
                    let mut term = BigRational::one();
                    for ((_, r, ip), &k) in entries.iter().zip(ks) {
                        term *= rat_from_int(&binom_int(ip, k))
                            * binom_int(&BigInt::from(p * k), *r as u64)
                            * sign(k + *r as u64);
                    }
                    sum += term;
                });
                sum
            }
        }
        Mode::Multiplicity => {
            if !(m as u64).is_multiple_of(p)
                || entries
                    .iter()
                    .any(|(_, l, _)| !(*l as u64).is_multiple_of(p))
            {
                BigRational::zero()
            } else {
                let mut weight_used = 0u64;
                let mut prefactor = BigRational::one();
                for (i, l, ip) in &entries {
                    let l_over_p = *l as u64 / p;
                    weight_used += *i as u64 * l_over_p;
                    prefactor *=
                        rat_from_int(&binom_int(&(ip + BigInt::from(l_over_p) - 1), l_over_p));
                }
                let budget = m as u64 / p;
                if weight_used > budget {
                    BigRational::zero()
                } else {
                    let rem = budget - weight_used;
                    let caps: Vec<u64> = weights.iter().map(|&i| rem / i as u64).collect();
                    let mut sum = BigRational::zero();
                    visit_weighted_tuples(&weights, &caps, rem, true, &mut |ks| {
                        let mut term = BigRational::one();
                        for ((_, _, ip), &k) in entries.iter().zip(ks) {
                            term *= rat_from_int(&binom_int(ip, k)) * sign(k);
                        }
                        sum += term;
                    });
                    prefactor * sum
                }
            }
        }
    };

    let total = e_part + v_of_alpha(q, alpha_is_zero) / rat_pow(q.q(), 1) * j_part;
    Ok(expect_count(&total, "pattern count (w = 1, simplified)"))
}

/// Large-degree closed product. Requires sum_i i|I_i| <= m - w (distinct)
/// or sum_i i(|I_i| + l_i) <= m - w (multiplicity); under that hypothesis
/// the correction term vanishes and the count is a pure product.
pub fn count_large(q: &PrimePower, w: u32, m: u32, spec: &PatternSpec) -> Result<BigInt> {
    assert!(m >= 1, "degree must be positive");
    assert!(spec.max_degree() <= m, "pattern degrees must lie in [1, m]");
    let mut hypothesis_weight = BigInt::zero();
    let mut counts = Vec::new();
    for (i, r) in spec.entries() {
        let icount = count_irreducible_total(q, i);
        hypothesis_weight += BigInt::from(i) * &icount;
        if spec.mode() == Mode::Multiplicity {
            hypothesis_weight += BigInt::from(i as u64 * r as u64);
        }
        counts.push((i, r, icount));
    }
    if m < w || hypothesis_weight > BigInt::from(m - w) {
        return input_err(format!(
            "large-degree hypothesis fails: pattern weight {hypothesis_weight} exceeds m - w = {}",
            m as i64 - w as i64
        ));
    }

    // The hypothesis bounds every |I_i| by m, so u64 exponents suffice.
    let mut total = rat_pow(q.q(), m as i64 - w as i64);
    for (i, r, icount) in counts {
        let icount_u = icount.to_u64().expect("bounded by m");
        let inv_qi = rat_pow(q.q(), -(i as i64));
        let one_minus = BigRational::one() - &inv_qi;
        match spec.mode() {
            Mode::Distinct => {
                if (r as u64) > icount_u {
                    return Ok(BigInt::zero());
                }
                total *= rat_from_int(&binom_int(&icount, r as u64));
                for _ in 0..r {
                    total *= &inv_qi;
                }
                for _ in 0..icount_u - r as u64 {
                    total *= &one_minus;
                }
            }
            Mode::Multiplicity => {
                total *= rat_from_int(&binom_int(&(&icount + BigInt::from(r) - 1), r as u64));
                for _ in 0..r {
                    total *= &inv_qi;
                }
                for _ in 0..icount_u {
                    total *= &one_minus;
                }
            }
        }
    }
    Ok(expect_count(&total, "large-degree count"))
}

/// Sum over all (l_1..l_n) with sum i*l_i = m of prod_i f(i, l_i), parts
/// visited largest first. Shared by both partition-method smooth counts.
fn partition_sum(m: u32, n: u32, mut f: impl FnMut(u32, u32) -> BigRational) -> BigRational {
    let weights: Vec<u32> = (1..=n.min(m)).rev().collect();
    let caps: Vec<u64> = weights.iter().map(|&i| (m / i) as u64).collect();
    let mut sum = BigRational::zero();
    visit_weighted_tuples(&weights, &caps, m as u64, true, &mut |ls| {
        let mut term = BigRational::one();
        for (&i, &l) in weights.iter().zip(ls) {
            term *= f(i, l as u32);
        }
        sum += term;
    });
    sum
}

/// Number of monic n-smooth polynomials of degree m over F_q (no factor of
/// degree exceeding n). Both methods return the identical count.
///
/// ```
/// use fqcount::closed_form::{smooth_w0, SmoothMethod};
/// use fqcount::PrimePower;
///
/// // 8 cubics over F_2 minus the 2 irreducible ones
/// let q = PrimePower::new(2, 1).unwrap();
/// assert_eq!(smooth_w0(&q, 3, 2, SmoothMethod::Complement).to_string(), "6");
/// assert_eq!(smooth_w0(&q, 3, 2, SmoothMethod::Partition).to_string(), "6");
/// ```
pub fn smooth_w0(q: &PrimePower, m: u32, n: u32, method: SmoothMethod) -> BigInt {
    assert!(
        m >= 1 && n >= 1,
        "degree and smoothness bound must be positive"
    );
    if n >= m {
        return big_pow(q.q(), m);
    }
    match method {
        SmoothMethod::Complement => {
            let spec = PatternSpec::zero_range(Mode::Distinct, n + 1, m).expect("n < m");
            count_pattern_w0(q, m, &spec)
        }
        SmoothMethod::Partition => {
            let total = partition_sum(m, n, |i, l| {
                let icount = count_irreducible_total(q, i);
                rat_from_int(&binom_int(&(&icount + BigInt::from(l) - 1), l as u64))
            });
            expect_count(&total, "smooth count (w = 0, partition)")
        }
    }
}

/// Number of monic n-smooth degree-m polynomials with trace coefficient
/// alpha. Both methods return the identical count.
pub fn smooth_w1(
    q: &PrimePower,
    m: u32,
    n: u32,
    alpha_is_zero: bool,
    method: SmoothMethod,
) -> BigInt {
    assert!(
        m >= 1 && n >= 1,
        "degree and smoothness bound must be positive"
    );
    if n >= m {
        return big_pow(q.q(), m - 1);
    }
    match method {
        SmoothMethod::Complement => {
            let spec = PatternSpec::zero_range(Mode::Distinct, n + 1, m).expect("n < m");
            count_pattern_w1(q, m, alpha_is_zero, &spec)
        }
        SmoothMethod::Partition => {
            // (1/q) * sum over partitions of prod C(|I_i|+l_i-1, l_i)
            // + (v(alpha)/q) * sum over partitions of prod B_{l_i}(a_i, b_i)
            let mut splits: BTreeMap<u32, TraceSplitPair> = BTreeMap::new();
            for i in 1..=n {
                splits.insert(i, trace_split(q, i));
            }
            let main = partition_sum(m, n, |i, l| {
                let icount = count_irreducible_total(q, i);
                rat_from_int(&binom_int(&(&icount + BigInt::from(l) - 1), l as u64))
            });
            let correction = partition_sum(m, n, |i, l| b_coeff(&splits[&i], l, q));
            let total = (main + v_of_alpha(q, alpha_is_zero) * correction) / rat_pow(q.q(), 1);
            expect_count(&total, "smooth count (w = 1, partition)")
        }
    }
}

/// Number of Reed-Solomon codewords of dimension k at distance q - r from
/// the received word interpolated by the monic polynomial `v` of degree
/// k + w: the count of monic degree-(k+w) polynomials sharing v's first w
/// coefficients with exactly r distinct roots.
pub fn rs_distance_count(ctx: &FieldCtx, k: u32, w: u32, v: &FqPoly, r: u32) -> Result<BigInt> {
    if k == 0 {
        return input_err("code dimension k must be positive");
    }
    if v.degree() != (k + w) as usize {
        return input_err(format!(
            "polynomial degree {} does not match k + w = {}",
            v.degree(),
            k + w
        ));
    }
    if r as u64 > ctx.q() {
        return input_err(format!(
            "cannot have {r} distinct roots over a field of size {}",
            ctx.q()
        ));
    }
    let q = ctx.prime_power();
    let m = k + w;
    let spec = PatternSpec::new(Mode::Distinct, [(1, r)]).expect("nonempty");
    if w <= 1 {
        Ok(TraceClass::of_poly(v, w)?.count_pattern(&q, m, &spec))
    } else {
        let coeffs: Vec<_> = (1..=w as usize).map(|j| v.fcoeff(j)).collect();
        crate::group_ring::count_pattern_general(ctx, w, m, &coeffs, &spec)
    }
}
