//! The general-w counting engine.
//!
//! The first w coefficients of a monic polynomial f are encoded by its
//! truncated reversal 1 + f_1 x + ... + f_w x^w mod x^{w+1}. These classes
//! form an abelian group G of order q^w, and counting polynomials with
//! prescribed coefficients becomes coefficient extraction in the rational
//! group algebra Q\[G\]: generating functions in z (marking degree) and
//! markers u_i (marking degree-i irreducible factors) split along the
//! orthogonal idempotents E (the uniform average over G) and J = 1 - E into
//! an averaged part with a closed form and a correction part computed here
//! by truncated series arithmetic.
//!
//! Everything is exact rational arithmetic over a dense |G|-vector; the
//! group is small by construction (q^w <= 256) and multiplication is direct
//! convolution through a precomputed index table.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

use crate::closed_form::{e_term_sum, PatternSpec};
use crate::error::{capacity_err, input_err, Result};
use crate::exact::{binom_int, divisors, expect_count, mobius, rat_from_int, rat_pow};
use crate::field::{FieldCtx, FqElem, FqPoly, Mode};

/// Largest supported group order q^w.
pub const MAX_GROUP_SIZE: u64 = 256;

/// Largest supported total count of polynomials enumerated to build the
/// per-degree irreducible class tables: sum over i in T of q^i.
pub const MAX_CLASS_ENUM: u64 = 1_000_000;

/// An element of G: the class 1 + f_1 x + ... + f_w x^w mod x^{w+1} of a
/// monic polynomial, recorded by the coefficient vector (f_1, ..., f_w).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElem {
    w: u32,
    coeffs: Vec<FqElem>,
}

impl GroupElem {
    pub fn new(w: u32, coeffs: Vec<FqElem>) -> GroupElem {
        assert_eq!(
            coeffs.len(),
            w as usize,
            "class needs exactly w coefficients"
        );
        GroupElem { w, coeffs }
    }

    pub fn identity(w: u32) -> GroupElem {
        GroupElem {
            w,
            coeffs: vec![FqElem::default(); w as usize],
        }
    }

    pub fn w(&self) -> u32 {
        self.w
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs.iter().all(FqElem::is_zero)
    }
}

/// The class `<f>_w` of a monic polynomial: its first w coefficients, with
/// f_j = 0 beyond the degree.
pub fn reduce(f: &FqPoly, w: u32) -> GroupElem {
    GroupElem {
        w,
        coeffs: (1..=w as usize).map(|j| f.fcoeff(j)).collect(),
    }
}

/// Product in G: the truncated product of the two reversal series mod
/// x^{w+1}. Both operands must share the same w.
pub fn group_mul(ctx: &FieldCtx, a: &GroupElem, b: &GroupElem) -> GroupElem {
    assert_eq!(a.w, b.w, "mismatched truncation orders {} and {}", a.w, b.w);
    let w = a.w as usize;
    let mut out = vec![ctx.zero(); w];
    for k in 1..=w {
        // implicit constant terms contribute a_k + b_k
        let mut acc = ctx.add(a.coeffs[k - 1], b.coeffs[k - 1]);
        for i in 1..k {
            acc = ctx.add(acc, ctx.mul(a.coeffs[i - 1], b.coeffs[k - i - 1]));
        }
        out[k - 1] = acc;
    }
    GroupElem {
        w: a.w,
        coeffs: out,
    }
}

/// Inverse in G: the truncated power-series inverse of the reversal series.
pub fn group_inv(ctx: &FieldCtx, a: &GroupElem) -> GroupElem {
    let w = a.w as usize;
    let mut out = vec![ctx.zero(); w];
    for k in 1..=w {
        // h_k = -(a_k + sum_{i=1}^{k-1} a_i h_{k-i})
        let mut acc = a.coeffs[k - 1];
        for i in 1..k {
            acc = ctx.add(acc, ctx.mul(a.coeffs[i - 1], out[k - i - 1]));
        }
        out[k - 1] = ctx.neg(acc);
    }
    GroupElem {
        w: a.w,
        coeffs: out,
    }
}

/// An element of the group algebra Q\[G\]: exact rational coordinates over
/// all |G| classes in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingElem {
    coords: Vec<BigRational>,
}

impl GroupRingElem {
    pub fn zero(size: usize) -> GroupRingElem {
        GroupRingElem {
            coords: vec![BigRational::zero(); size],
        }
    }

    pub fn single(size: usize, idx: usize, value: BigRational) -> GroupRingElem {
        let mut coords = vec![BigRational::zero(); size];
        coords[idx] = value;
        GroupRingElem { coords }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coord(&self, idx: usize) -> &BigRational {
        &self.coords[idx]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &GroupRingElem) -> GroupRingElem {
        debug_assert_eq!(self.len(), other.len());
        GroupRingElem {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &GroupRingElem) -> GroupRingElem {
        debug_assert_eq!(self.len(), other.len());
        GroupRingElem {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn add_assign(&mut self, other: &GroupRingElem) {
        debug_assert_eq!(self.len(), other.len());
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            *a += b;
        }
    }

    pub fn scale(&self, factor: &BigRational) -> GroupRingElem {
        GroupRingElem {
            coords: self.coords.iter().map(|a| a * factor).collect(),
        }
    }
}

/// The group G for a fixed (field, w) with its multiplication table over
/// class indices; the home of all Q\[G\] products.
pub struct GroupAlgebra<'c> {
    ctx: &'c FieldCtx,
    w: u32,
    size: usize,
    mul_table: Vec<u32>,
}

impl<'c> GroupAlgebra<'c> {
    pub fn new(ctx: &'c FieldCtx, w: u32) -> Result<Self> {
        let size = (0..w).try_fold(1u64, |acc, _| {
            acc.checked_mul(ctx.q()).filter(|&v| v <= MAX_GROUP_SIZE)
        });
        let Some(size) = size else {
            return capacity_err(format!(
                "group order {}^{w} exceeds the supported maximum {MAX_GROUP_SIZE}",
                ctx.q()
            ));
        };
        let size = size as usize;
        let elems: Vec<GroupElem> = (0..size).map(|i| Self::decode(ctx, w, i)).collect();
        let mut mul_table = vec![0u32; size * size];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate().take(i + 1) {
                let prod = Self::encode(ctx, &group_mul(ctx, a, b));
                mul_table[i * size + j] = prod as u32;
                mul_table[j * size + i] = prod as u32;
            }
        }
        Ok(GroupAlgebra {
            ctx,
            w,
            size,
            mul_table,
        })
    }

    fn decode(ctx: &FieldCtx, w: u32, idx: usize) -> GroupElem {
        let q = ctx.q() as usize;
        let mut coeffs = vec![ctx.zero(); w as usize];
        let mut rest = idx;
        for j in (0..w as usize).rev() {
            // f_1 is the most significant digit
            coeffs[j] = crate::field::FqElem::from_raw((rest % q) as u32);
            rest /= q;
        }
        GroupElem { w, coeffs }
    }

    fn encode(ctx: &FieldCtx, g: &GroupElem) -> usize {
        let q = ctx.q() as usize;
        g.coeffs
            .iter()
            .fold(0usize, |acc, c| acc * q + c.index() as usize)
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.ctx
    }

    pub fn w(&self) -> u32 {
        self.w
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elem_at(&self, idx: usize) -> GroupElem {
        Self::decode(self.ctx, self.w, idx)
    }

    pub fn index_of(&self, g: &GroupElem) -> usize {
        assert_eq!(g.w, self.w, "class from a different truncation order");
        Self::encode(self.ctx, g)
    }

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.mul_table[a * self.size + b] as usize
    }

    pub fn pow_idx(&self, a: usize, k: u64) -> usize {
        let mut acc = 0usize; // identity class
        for _ in 0..k {
            acc = self.mul_idx(acc, a);
        }
        acc
    }

    pub fn ring_zero(&self) -> GroupRingElem {
        GroupRingElem::zero(self.size)
    }

    pub fn ring_one(&self) -> GroupRingElem {
        GroupRingElem::single(self.size, 0, BigRational::one())
    }

    pub fn ring_class(&self, idx: usize) -> GroupRingElem {
        GroupRingElem::single(self.size, idx, BigRational::one())
    }

    /// Convolution product in Q\[G\].
    pub fn ring_mul(&self, a: &GroupRingElem, b: &GroupRingElem) -> GroupRingElem {
        debug_assert_eq!(a.len(), self.size);
        debug_assert_eq!(b.len(), self.size);
        let mut out = GroupRingElem::zero(self.size);
        for (i, ai) in a.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coords.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let k = self.mul_idx(i, j);
                out.coords[k] += ai * bj;
            }
        }
        out
    }

    /// The orthogonal idempotents (E, J): E averages uniformly over G and
    /// J = 1 - E.
    pub fn idempotents(&self) -> (GroupRingElem, GroupRingElem) {
        let share = BigRational::new(BigInt::one(), BigInt::from(self.size as u64));
        let e = GroupRingElem {
            coords: vec![share; self.size],
        };
        let j = self.ring_one().sub(&e);
        (e, j)
    }
}

/// The idempotent pair for F_q and w, checking the group-size envelope.
pub fn idempotents(ctx: &FieldCtx, w: u32) -> Result<(GroupRingElem, GroupRingElem)> {
    let algebra = GroupAlgebra::new(ctx, w)?;
    Ok(algebra.idempotents())
}

/// A truncated formal series in z and the markers u_i with Q\[G\]
/// coefficients: the computational form of the pattern generating
/// functions. Keys above the z cap or any marker cap are discarded on
/// insertion; that is sound for coefficient extraction because every
/// operation only ever raises degrees.
pub struct PatternSeries {
    z_cap: u32,
    u_caps: Vec<u32>,
    terms: BTreeMap<(u32, Vec<u32>), GroupRingElem>,
}

impl PatternSeries {
    pub fn zero(z_cap: u32, u_caps: Vec<u32>) -> PatternSeries {
        PatternSeries {
            z_cap,
            u_caps,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, d: u32, exps: Vec<u32>, coeff: GroupRingElem) {
        debug_assert_eq!(exps.len(), self.u_caps.len());
        if d > self.z_cap || exps.iter().zip(&self.u_caps).any(|(e, cap)| e > cap) {
            return;
        }
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry((d, exps)) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                slot.get_mut().add_assign(&coeff);
            }
        }
    }

    pub fn coeff(&self, d: u32, exps: &[u32]) -> Option<&GroupRingElem> {
        self.terms.get(&(d, exps.to_vec()))
    }

    pub fn mul(&self, other: &PatternSeries, algebra: &GroupAlgebra) -> PatternSeries {
        let mut out = PatternSeries::zero(self.z_cap, self.u_caps.clone());
        for ((d1, e1), c1) in &self.terms {
            for ((d2, e2), c2) in &other.terms {
                let d = d1 + d2;
                if d > self.z_cap {
                    continue;
                }
                let exps: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                if exps.iter().zip(&self.u_caps).any(|(e, cap)| e > cap) {
                    continue;
                }
                out.add_term(d, exps, algebra.ring_mul(c1, c2));
            }
        }
        out
    }
}

/// A truncated series in z alone with Q\[G\] coefficients, dense by degree.
pub struct GrSeries {
    coeffs: Vec<GroupRingElem>,
}

impl GrSeries {
    pub fn zero(algebra: &GroupAlgebra, cap: u32) -> GrSeries {
        GrSeries {
            coeffs: vec![algebra.ring_zero(); cap as usize + 1],
        }
    }

    pub fn one(algebra: &GroupAlgebra, cap: u32) -> GrSeries {
        let mut s = GrSeries::zero(algebra, cap);
        s.coeffs[0] = algebra.ring_one();
        s
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, d: usize) -> &GroupRingElem {
        &self.coeffs[d]
    }

    pub fn set_coeff(&mut self, d: usize, value: GroupRingElem) {
        self.coeffs[d] = value;
    }

    pub fn mul(&self, other: &GrSeries, algebra: &GroupAlgebra) -> GrSeries {
        let cap = self.cap();
        let mut out = GrSeries::zero(algebra, cap as u32);
        for i in 0..=cap {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=cap - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let prod = algebra.ring_mul(&self.coeffs[i], &other.coeffs[j]);
                out.coeffs[i + j].add_assign(&prod);
            }
        }
        out
    }

    /// Multiplicative inverse of a series with constant term 1.
    pub fn inv(&self, algebra: &GroupAlgebra) -> GrSeries {
        assert_eq!(
            self.coeffs[0],
            algebra.ring_one(),
            "inverse needs constant term 1"
        );
        let cap = self.cap();
        let mut out = GrSeries::zero(algebra, cap as u32);
        out.coeffs[0] = algebra.ring_one();
        for n in 1..=cap {
            let mut acc = algebra.ring_zero();
            for k in 1..=n {
                let prod = algebra.ring_mul(&self.coeffs[k], &out.coeffs[n - k]);
                acc.add_assign(&prod);
            }
            out.coeffs[n] = acc.scale(&-BigRational::one());
        }
        out
    }

    /// Logarithm of a series with constant term 1, by the partial-sum
    /// recurrence n L_n = n S_n - sum_{k=1}^{n-1} k L_k S_{n-k}.
    pub fn ln(&self, algebra: &GroupAlgebra) -> GrSeries {
        assert_eq!(
            self.coeffs[0],
            algebra.ring_one(),
            "logarithm needs constant term 1"
        );
        let cap = self.cap();
        let mut out = GrSeries::zero(algebra, cap as u32);
        for n in 1..=cap {
            let mut acc = algebra.ring_zero();
            for k in 1..n {
                let prod = algebra.ring_mul(&out.coeffs[k], &self.coeffs[n - k]);
                acc.add_assign(&prod.scale(&BigRational::from(BigInt::from(k))));
            }
            let over_n = BigRational::new(BigInt::one(), BigInt::from(n));
            out.coeffs[n] = self.coeffs[n].sub(&acc.scale(&over_n));
        }
        out
    }

    pub fn scale_ring(&self, factor: &GroupRingElem, algebra: &GroupAlgebra) -> GrSeries {
        GrSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| algebra.ring_mul(c, factor))
                .collect(),
        }
    }
}

fn check_envelope(ctx: &FieldCtx, spec: &PatternSpec) -> Result<()> {
    let mut total = 0u64;
    for i in spec.degrees() {
        let step = (0..i).try_fold(1u64, |acc, _| {
            acc.checked_mul(ctx.q()).filter(|&v| v <= MAX_CLASS_ENUM)
        });
        total += step.ok_or_else(|| {
            crate::error::Error::Capacity(format!(
                "irreducible class table for degree {i} exceeds {MAX_CLASS_ENUM} polynomials"
            ))
        })?;
        if total > MAX_CLASS_ENUM {
            return capacity_err(format!(
                "irreducible class tables need {total} polynomials, supported maximum is {MAX_CLASS_ENUM}"
            ));
        }
    }
    Ok(())
}

/// Per-degree class distribution of irreducibles: for each i in T the
/// number of g in I_i with `<g>_w = c`, indexed by class.
fn irreducible_class_counts(
    algebra: &GroupAlgebra,
    spec: &PatternSpec,
) -> Result<BTreeMap<u32, Vec<u64>>> {
    let ctx = algebra.ctx();
    let table = crate::field::irreducibles_up_to(ctx, spec.max_degree())?;
    let mut out = BTreeMap::new();
    for i in spec.degrees() {
        let mut counts = vec![0u64; algebra.size()];
        for g in table.irreducibles(i) {
            counts[algebra.index_of(&reduce(g, algebra.w()))] += 1;
        }
        out.insert(i, counts);
    }
    Ok(out)
}

/// `J * (sum_{d<w} sum_{f in M_d} <f> z^d)` as a pattern series.
fn j_prefix_series(algebra: &GroupAlgebra, z_cap: u32, u_caps: &[u32]) -> Result<PatternSeries> {
    let ctx = algebra.ctx();
    let (_, j) = algebra.idempotents();
    let mut series = PatternSeries::zero(z_cap, u_caps.to_vec());
    for d in 0..algebra.w().min(z_cap + 1) {
        let mut sum = algebra.ring_zero();
        for f in ctx.enumerate_monic(d)? {
            sum.add_assign(&algebra.ring_class(algebra.index_of(&reduce(&f, algebra.w()))));
        }
        series.add_term(d, vec![0; u_caps.len()], algebra.ring_mul(&j, &sum));
    }
    Ok(series)
}

/// Exact count of monic degree-m polynomials over F_q with prescribed first
/// w coefficients and prescribed factorization pattern, for any w >= 0.
///
/// The averaged part is the closed product-of-sums shared with the w <= 1
/// formulas; the correction part extracts the coefficient of
/// `<f> z^m prod u_i^{r_i}` from the J-projected generating function, built
/// from per-class irreducible counts with one closed binomial expansion per
/// class.
pub fn count_pattern_general(
    ctx: &FieldCtx,
    w: u32,
    m: u32,
    coeffs: &[FqElem],
    spec: &PatternSpec,
) -> Result<BigInt> {
    if m == 0 {
        return input_err("degree must be positive");
    }
    if coeffs.len() != w as usize {
        return input_err(format!(
            "expected {w} prescribed coefficients, got {}",
            coeffs.len()
        ));
    }
    if spec.max_degree() > m {
        return input_err(format!(
            "pattern degree {} outside [1, {m}]",
            spec.max_degree()
        ));
    }

    let e_part = rat_pow(ctx.q(), m as i64 - w as i64) * e_term_sum(&ctx.prime_power(), m, spec);
    if w == 0 {
        return Ok(expect_count(&e_part, "pattern count (general, w = 0)"));
    }

    let algebra = GroupAlgebra::new(ctx, w)?;
    check_envelope(ctx, spec)?;
    let class_counts = irreducible_class_counts(&algebra, spec)?;

    let degrees: Vec<u32> = spec.degrees().collect();
    let u_caps: Vec<u32> = spec.entries().map(|(_, r)| r).collect();
    let mut series = j_prefix_series(&algebra, m, &u_caps)?;

    for (pos, &i) in degrees.iter().enumerate() {
        let r_cap = u_caps[pos];
        for (class, &n) in class_counts[&i].iter().enumerate() {
            if n == 0 {
                continue;
            }
            let mut factor = PatternSeries::zero(m, u_caps.clone());
            match spec.mode() {
                Mode::Distinct => {
                    // (1 + c z^i (u_i - 1))^n expanded by the binomial
                    // theorem; (u_i - 1)^k in turn expands over marker
                    // exponents r <= k.
                    let k_max = (m / i) as u64;
                    for k in 0..=k_max.min(n) {
                        let ck = algebra.pow_idx(class, k);
                        let choose_k = rat_from_int(&binom_int(&BigInt::from(n), k));
                        for r in 0..=k.min(r_cap as u64) {
                            let mut exps = vec![0u32; u_caps.len()];
                            exps[pos] = r as u32;
                            let scalar = &choose_k
                                * rat_from_int(&binom_int(&BigInt::from(k), r))
                                * parity_sign(k + r);
                            factor.add_term(
                                i * k as u32,
                                exps,
                                GroupRingElem::single(algebra.size(), ck, scalar),
                            );
                        }
                    }
                    series = series.mul(&factor, &algebra);
                }
                Mode::Multiplicity => {
                    // ((1 - c z^i) / (1 - c z^i u_i))^n as two closed
                    // expansions: a signed binomial series and a multiset
                    // binomial series carrying the marker.
                    let k_max = (m / i) as u64;
                    for k in 0..=k_max.min(n) {
                        let ck = algebra.pow_idx(class, k);
                        let scalar = rat_from_int(&binom_int(&BigInt::from(n), k)) * parity_sign(k);
                        factor.add_term(
                            i * k as u32,
                            vec![0; u_caps.len()],
                            GroupRingElem::single(algebra.size(), ck, scalar),
                        );
                    }
                    series = series.mul(&factor, &algebra);

                    let mut marked = PatternSeries::zero(m, u_caps.clone());
                    for k in 0..=k_max.min(r_cap as u64) {
                        let ck = algebra.pow_idx(class, k);
                        let scalar =
                            rat_from_int(&binom_int(&(BigInt::from(n) + BigInt::from(k) - 1), k));
                        let mut exps = vec![0u32; u_caps.len()];
                        exps[pos] = k as u32;
                        marked.add_term(
                            i * k as u32,
                            exps,
                            GroupRingElem::single(algebra.size(), ck, scalar),
                        );
                    }
                    series = series.mul(&marked, &algebra);
                }
            }
        }
    }

    let target = algebra.index_of(&GroupElem::new(w, coeffs.to_vec()));
    let j_part = series
        .coeff(m, &u_caps)
        .map(|c| c.coord(target).clone())
        .unwrap_or_else(BigRational::zero);

    Ok(expect_count(&(e_part + j_part), "pattern count (general)"))
}

fn parity_sign(parity: u64) -> BigRational {
    if parity.is_multiple_of(2) {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// Exact count of monic irreducibles of degree m with prescribed first w
/// coefficients, for any w >= 0.
///
/// Computes `N(k, <g>) = q^{k-w} + k [<g> z^k] J ln(1 + sum_{d<w} M_d-sum z^d)`
/// for every divisor k of m and Möbius-inverts over the divisor/power pairs
/// `<g>^{m/k} = <f>`.
pub fn count_irreducible_general(
    ctx: &FieldCtx,
    w: u32,
    m: u32,
    coeffs: &[FqElem],
) -> Result<BigInt> {
    if m == 0 {
        return input_err("degree must be positive");
    }
    if coeffs.len() != w as usize {
        return input_err(format!(
            "expected {w} prescribed coefficients, got {}",
            coeffs.len()
        ));
    }
    let algebra = GroupAlgebra::new(ctx, w)?;
    let size = algebra.size();

    // S(z) = 1 + sum_{d=1}^{w-1} (sum_{f in M_d} <f>) z^d, truncated at z^m.
    let mut s = GrSeries::one(&algebra, m);
    for d in 1..w.min(m + 1) {
        let mut sum = algebra.ring_zero();
        for f in ctx.enumerate_monic(d)? {
            sum.add_assign(&algebra.ring_class(algebra.index_of(&reduce(&f, w))));
        }
        s.set_coeff(d as usize, sum);
    }
    let (_, j) = algebra.idempotents();
    let j_log = s.ln(&algebra).scale_ring(&j, &algebra);

    // N(k, <g>) = q^{k-w} + k * (J ln ...)[<g> z^k], exact rationals even
    // when k < w.
    let n_of = |k: u32, class: usize| -> BigRational {
        rat_pow(ctx.q(), k as i64 - w as i64)
            + BigRational::from(BigInt::from(k)) * j_log.coeff(k as usize).coord(class)
    };

    let target = algebra.index_of(&GroupElem::new(w, coeffs.to_vec()));
    let mut total = BigRational::zero();
    for k in divisors(m as u64).expect("m >= 1") {
        let mu = mobius(m as u64 / k).expect("divisor is positive");
        if mu == 0 {
            continue;
        }
        let exp = m as u64 / k;
        let mut inner = BigRational::zero();
        for g in 0..size {
            if algebra.pow_idx(g, exp) == target {
                inner += n_of(k as u32, g);
            }
        }
        total += BigRational::from(BigInt::from(mu)) * inner;
    }
    total /= BigRational::from(BigInt::from(m));
    Ok(expect_count(&total, "irreducible count (general)"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::{
        a_coeff, b_coeff, count_irreducible_total, count_irreducible_trace, count_pattern_w0,
        count_pattern_w1, trace_split,
    };
    use crate::field::irreducibles_up_to;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn ctx2() -> FieldCtx {
        FieldCtx::new(2, 1).unwrap()
    }

    fn ctx3() -> FieldCtx {
        FieldCtx::new(3, 1).unwrap()
    }

    fn class_of(ctx: &FieldCtx, w: u32, coords: &[&[u64]]) -> GroupElem {
        GroupElem::new(w, coords.iter().map(|c| ctx.elem(c).unwrap()).collect())
    }

    #[test]
    fn reduce_reads_leading_coefficients() {
        let ctx = ctx2();
        let f = ctx.poly_from_str("1,0,1,1").unwrap(); // x^3+x+1
        assert_eq!(reduce(&f, 2), class_of(&ctx, 2, &[&[0], &[1]]));
        assert_eq!(reduce(&f, 0), GroupElem::identity(0));
        let g = ctx.poly_from_str("1,1").unwrap(); // x+1
        assert_eq!(reduce(&g, 1), class_of(&ctx, 1, &[&[1]]));
        // coefficients beyond the degree read as zero
        assert_eq!(reduce(&g, 3), class_of(&ctx, 3, &[&[1], &[0], &[0]]));
    }

    #[test]
    fn group_mul_examples() {
        let ctx = ctx2();
        let a = class_of(&ctx, 1, &[&[1]]); // <x+1>
        assert!(group_mul(&ctx, &a, &a).is_identity()); // characteristic 2
        let id = GroupElem::identity(1);
        assert_eq!(group_mul(&ctx, &a, &id), a);

        // <x+alpha>^k = <x+k*alpha> at w = 1
        let ctx = ctx3();
        for alpha in 0..3u64 {
            let g = class_of(&ctx, 1, &[&[alpha]]);
            let mut acc = GroupElem::identity(1);
            for k in 1..=6u64 {
                acc = group_mul(&ctx, &acc, &g);
                let expected = class_of(&ctx, 1, &[&[(k * alpha) % 3]]);
                assert_eq!(acc, expected, "alpha = {alpha}, k = {k}");
            }
        }
    }

    #[test]
    fn group_inv_examples() {
        let ctx = ctx2();
        assert!(group_inv(&ctx, &GroupElem::identity(2)).is_identity());
        let a = class_of(&ctx, 1, &[&[1]]);
        assert_eq!(group_inv(&ctx, &a), a); // self-inverse in char 2

        let b = class_of(&ctx, 2, &[&[1], &[1]]); // 1 + x + x^2
        let binv = group_inv(&ctx, &b);
        assert_eq!(binv, class_of(&ctx, 2, &[&[1], &[0]]));
        assert!(group_mul(&ctx, &b, &binv).is_identity());
    }

    #[test]
    fn group_laws_exhaustive() {
        for (p, w) in [(2u64, 1u32), (2, 2), (3, 1), (3, 2)] {
            let ctx = FieldCtx::new(p, 1).unwrap();
            let algebra = GroupAlgebra::new(&ctx, w).unwrap();
            let elems: Vec<GroupElem> = (0..algebra.size()).map(|i| algebra.elem_at(i)).collect();
            let id = GroupElem::identity(w);
            for a in &elems {
                assert_eq!(group_mul(&ctx, a, &id), *a);
                assert!(group_mul(&ctx, a, &group_inv(&ctx, a)).is_identity());
                for b in &elems {
                    assert_eq!(group_mul(&ctx, a, b), group_mul(&ctx, b, a));
                    for c in &elems {
                        assert_eq!(
                            group_mul(&ctx, &group_mul(&ctx, a, b), c),
                            group_mul(&ctx, a, &group_mul(&ctx, b, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn group_encoding_round_trips() {
        let ctx = FieldCtx::new(2, 2).unwrap(); // F_4, w = 2: 16 classes
        let algebra = GroupAlgebra::new(&ctx, 2).unwrap();
        for idx in 0..algebra.size() {
            assert_eq!(algebra.index_of(&algebra.elem_at(idx)), idx);
        }
    }

    #[test]
    fn idempotent_laws() {
        for (p, e, w) in [
            (2u64, 1u32, 0u32),
            (2, 1, 1),
            (2, 1, 2),
            (3, 1, 2),
            (2, 2, 1),
        ] {
            let ctx = FieldCtx::new(p, e).unwrap();
            let algebra = GroupAlgebra::new(&ctx, w).unwrap();
            let (e_idem, j_idem) = algebra.idempotents();
            assert_eq!(algebra.ring_mul(&e_idem, &e_idem), e_idem, "E^2 = E");
            assert_eq!(algebra.ring_mul(&j_idem, &j_idem), j_idem, "J^2 = J");
            assert!(algebra.ring_mul(&e_idem, &j_idem).is_zero(), "EJ = 0");
            assert_eq!(e_idem.add(&j_idem), algebra.ring_one(), "E + J = 1");
            for c in 0..algebra.size() {
                assert_eq!(
                    algebra.ring_mul(&e_idem, &algebra.ring_class(c)),
                    e_idem,
                    "E <g> = E"
                );
            }
            if w == 0 {
                assert_eq!(e_idem, algebra.ring_one());
                assert!(j_idem.is_zero());
            }
            assert_eq!(idempotents(&ctx, w).unwrap(), (e_idem, j_idem));
        }
    }

    #[test]
    fn averaging_law() {
        // sum over M_d of <f> equals q^d E for every d >= w.
        for (p, w) in [(2u64, 1u32), (2, 2), (3, 1)] {
            let ctx = FieldCtx::new(p, 1).unwrap();
            let algebra = GroupAlgebra::new(&ctx, w).unwrap();
            let (e_idem, _) = algebra.idempotents();
            for d in w..w + 3 {
                let mut sum = algebra.ring_zero();
                for f in ctx.enumerate_monic(d).unwrap() {
                    sum.add_assign(&algebra.ring_class(algebra.index_of(&reduce(&f, w))));
                }
                assert_eq!(sum, e_idem.scale(&rat_pow(ctx.q(), d as i64)), "d = {d}");
            }
        }
    }

    #[test]
    fn idempotent_substitution_in_series() {
        // For K idempotent, K A(z) = K A(Kz): coefficientwise
        // K a_j = K a_j K^j.
        let mut rng = StdRng::seed_from_u64(7);
        for (p, w) in [(2u64, 1u32), (2, 2), (3, 1)] {
            let ctx = FieldCtx::new(p, 1).unwrap();
            let algebra = GroupAlgebra::new(&ctx, w).unwrap();
            let random_ring = |rng: &mut StdRng| GroupRingElem {
                coords: (0..algebra.size())
                    .map(|_| {
                        BigRational::new(
                            BigInt::from(rng.gen_range(-5i64..=5)),
                            BigInt::from(rng.gen_range(1i64..=4)),
                        )
                    })
                    .collect(),
            };
            for (k_name, k_idem) in [
                ("E", algebra.idempotents().0),
                ("J", algebra.idempotents().1),
            ] {
                for j in 0..5u32 {
                    let a_j = random_ring(&mut rng);
                    let lhs = algebra.ring_mul(&k_idem, &a_j);
                    let mut rhs = algebra.ring_mul(&k_idem, &a_j);
                    for _ in 0..j {
                        rhs = algebra.ring_mul(&rhs, &k_idem);
                    }
                    assert_eq!(lhs, rhs, "{k_name}, z-degree {j}");
                }
            }
        }
    }

    #[test]
    fn trace_power_sums_through_j() {
        // J sum_alpha <x+alpha>^k = qJ if p | k, else 0 (w = 1).
        for p in [2u64, 3, 5] {
            let ctx = FieldCtx::new(p, 1).unwrap();
            let algebra = GroupAlgebra::new(&ctx, 1).unwrap();
            let (_, j_idem) = algebra.idempotents();
            for k in 1..=20u64 {
                let mut sum = algebra.ring_zero();
                for alpha in 0..algebra.size() {
                    sum.add_assign(&algebra.ring_class(algebra.pow_idx(alpha, k)));
                }
                let projected = algebra.ring_mul(&j_idem, &sum);
                let expected = if k % p == 0 {
                    j_idem.scale(&rat_pow(ctx.q(), 1))
                } else {
                    algebra.ring_zero()
                };
                assert_eq!(projected, expected, "p = {p}, k = {k}");
            }
        }
    }

    #[test]
    fn projected_products_match_ab_coefficients() {
        // J prod_{f in I_i}(1 + <f> y) = J sum_k A_k(a_i, b_i) y^k and the
        // inverse-product analogue with B_k, through degree 12.
        let cap = 12u32;
        for p in [2u64, 3] {
            let ctx = FieldCtx::new(p, 1).unwrap();
            let q = ctx.prime_power();
            let algebra = GroupAlgebra::new(&ctx, 1).unwrap();
            let (_, j_idem) = algebra.idempotents();
            let table = irreducibles_up_to(&ctx, 4).unwrap();
            for i in 1..=4u32 {
                let pair = trace_split(&q, i);

                let mut plus_product = GrSeries::one(&algebra, cap);
                let mut minus_product = GrSeries::one(&algebra, cap);
                for g in table.irreducibles(i) {
                    let class = algebra.index_of(&reduce(g, 1));
                    let mut plus = GrSeries::one(&algebra, cap);
                    plus.set_coeff(1, algebra.ring_class(class));
                    plus_product = plus_product.mul(&plus, &algebra);
                    let mut minus = GrSeries::one(&algebra, cap);
                    minus.set_coeff(1, algebra.ring_class(class).scale(&-BigRational::one()));
                    minus_product = minus_product.mul(&minus, &algebra);
                }
                let inverse_product = minus_product.inv(&algebra);

                for k in 0..=cap {
                    let lhs_a = algebra.ring_mul(&j_idem, plus_product.coeff(k as usize));
                    let rhs_a = j_idem.scale(&a_coeff(&pair, k, &q));
                    assert_eq!(lhs_a, rhs_a, "A_{k} over F_{p}, i = {i}");

                    let lhs_b = algebra.ring_mul(&j_idem, inverse_product.coeff(k as usize));
                    let rhs_b = j_idem.scale(&b_coeff(&pair, k, &q));
                    assert_eq!(lhs_b, rhs_b, "B_{k} over F_{p}, i = {i}");
                }
            }
        }
    }

    #[test]
    fn general_count_matches_closed_forms_at_low_w() {
        for ctx in [ctx2(), ctx3()] {
            let q = ctx.prime_power();
            for m in 1..=5u32 {
                for i in 1..=2.min(m) {
                    for r in 0..=m / i {
                        for mode in [Mode::Distinct, Mode::Multiplicity] {
                            let spec = PatternSpec::new(mode, [(i, r)]).unwrap();
                            assert_eq!(
                                count_pattern_general(&ctx, 0, m, &[], &spec).unwrap(),
                                count_pattern_w0(&q, m, &spec)
                            );
                            for alpha in ctx.elems() {
                                assert_eq!(
                                    count_pattern_general(&ctx, 1, m, &[alpha], &spec).unwrap(),
                                    count_pattern_w1(&q, m, alpha.is_zero(), &spec),
                                    "q={}, m={m}, i={i}, r={r}, {mode}",
                                    ctx.q()
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn general_count_w2_known_values() {
        let ctx = ctx2();
        // x^3+x+1 is the unique irreducible cubic with f_1 = 0, f_2 = 1.
        let coeffs = [ctx.zero(), ctx.one()];
        let spec = PatternSpec::new(Mode::Distinct, [(3, 1)]).unwrap();
        assert_eq!(
            count_pattern_general(&ctx, 2, 3, &coeffs, &spec).unwrap(),
            BigInt::from(1)
        );
        // Among x^4 + g with deg g <= 1, only x^4+x+1 has no linear factor.
        let coeffs = [ctx.zero(), ctx.zero()];
        let spec = PatternSpec::new(Mode::Distinct, [(1, 0)]).unwrap();
        assert_eq!(
            count_pattern_general(&ctx, 2, 4, &coeffs, &spec).unwrap(),
            BigInt::from(1)
        );
    }

    #[test]
    fn general_irreducible_matches_low_w() {
        for ctx in [ctx2(), ctx3()] {
            let q = ctx.prime_power();
            for m in 1..=12u32 {
                assert_eq!(
                    count_irreducible_general(&ctx, 0, m, &[]).unwrap(),
                    count_irreducible_total(&q, m)
                );
                for beta in ctx.elems() {
                    assert_eq!(
                        count_irreducible_general(&ctx, 1, m, &[beta]).unwrap(),
                        count_irreducible_trace(&q, m, beta.is_zero()),
                        "q = {}, m = {m}",
                        ctx.q()
                    );
                }
            }
        }
    }

    #[test]
    fn general_irreducible_w2_example_and_completeness() {
        let ctx = ctx2();
        let coeffs = [ctx.zero(), ctx.one()];
        assert_eq!(
            count_irreducible_general(&ctx, 2, 3, &coeffs).unwrap(),
            BigInt::from(1)
        );
        // Summing over all classes recovers |I_m|.
        let q = ctx.prime_power();
        let algebra = GroupAlgebra::new(&ctx, 2).unwrap();
        for m in 1..=6u32 {
            let mut sum = BigInt::zero();
            for idx in 0..algebra.size() {
                let class = algebra.elem_at(idx);
                sum += count_irreducible_general(&ctx, 2, m, class.coeffs()).unwrap();
            }
            assert_eq!(sum, count_irreducible_total(&q, m), "m = {m}");
        }
    }

    #[test]
    fn envelope_is_enforced() {
        let ctx = FieldCtx::new(5, 1).unwrap();
        assert!(matches!(
            GroupAlgebra::new(&ctx, 4),
            Err(crate::error::Error::Capacity(_))
        ));
        let spec = PatternSpec::new(Mode::Distinct, [(1, 0)]).unwrap();
        assert!(count_pattern_general(&ctx, 4, 5, &[ctx.zero(); 4], &spec).is_err());
    }
}
