//! Finite fields F_{p^e}, monic polynomial arithmetic over them, irreducible
//! enumeration by sieve, and complete factorization by trial division.
//!
//! The field is modeled concretely: an element is a coordinate vector of `e`
//! residues mod `p` relative to the polynomial basis of a fixed monic
//! irreducible modulus. Elements are packed into a single index so that all
//! arithmetic is table lookup; the index encoding is chosen so that index
//! order equals lexicographic order on coordinate tuples (low coordinate
//! first), which fixes one canonical enumeration order for everything built
//! on top.
//!
//! Everything here is deliberately small-scale and exhaustive: fields are
//! capped at q = 1000 and enumerations at a configurable budget, because the
//! consumers of this module (the brute-force oracle and the irreducible
//! class tables) operate at desk scale where trial division is simplest.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{capacity_err, input_err, Error, Result};

/// Largest supported field size. Arithmetic tables are q*q, and no formula
/// in this crate needs a larger concrete field model.
pub const MAX_FIELD_SIZE: u64 = 1000;

/// Default cap on the total number of polynomials a single enumeration may
/// visit.
pub const DEFAULT_ENUM_BUDGET: u64 = 10_000_000;

/// A prime power q = p^e with the primality of `p` verified at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimePower {
    p: u64,
    e: u32,
    q: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimePower {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return input_err(format!("{p} is not prime"));
        }
        if e == 0 {
            return input_err("extension degree must be at least 1");
        }
        let q = (0..e).try_fold(1u64, |acc, _| acc.checked_mul(p));
        match q {
            Some(q) => Ok(PrimePower { p, e, q }),
            None => input_err(format!("{p}^{e} overflows")),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.e)
        }
    }
}

/// A field element, stored as a packed index into the context's tables.
///
/// The index encodes the coordinate tuple (a_0, ..., a_{e-1}) big-endian in
/// a_0, so deriving `Ord` on the index yields exactly the canonical element
/// order: coordinate tuples compared as integers, low coordinate first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqElem(u32);

impl FqElem {
    pub fn is_zero(&self) -> bool {
        self.0 == 0
    }

    pub fn index(&self) -> u32 {
        self.0
    }

    pub(crate) fn from_raw(idx: u32) -> FqElem {
        FqElem(idx)
    }
}

impl Default for FqElem {
    /// The zero element; index 0 is zero in every field context.
    fn default() -> Self {
        FqElem(0)
    }
}

/// The field F_{p^e} together with its arithmetic tables and the enumeration
/// budget. Immutable after construction; share freely by reference.
pub struct FieldCtx {
    pp: PrimePower,
    /// Monic irreducible modulus over F_p, coefficients by ascending power
    /// of y, length e+1, leading coefficient 1. For e = 1 this is the formal
    /// polynomial y.
    modulus: Vec<u64>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    enum_budget: u64,
}

// --- F_p polynomial helpers used only during construction ---------------

fn fp_trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    fp_trim(&mut out);
    out
}

/// Remainder of `a` modulo the monic polynomial `m`, over F_p.
fn fp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let k = r.len() - 1 - dm;
        if lead != 0 {
            for j in 0..dm {
                r[k + j] = (r[k + j] + (p - lead) * m[j]) % p;
            }
        }
        r.pop();
    }
    fp_trim(&mut r);
    r
}

fn fp_is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// The c-th monic polynomial of degree d over F_p: y^d plus the base-p
/// digits of c as lower coefficients, least significant digit in the
/// constant term. Scanning c upward visits candidates in
/// high-coefficient-first order.
fn fp_monic_candidate(c: u64, p: u64, d: u32) -> Vec<u64> {
    let mut poly = vec![0u64; d as usize + 1];
    poly[d as usize] = 1;
    let mut rest = c;
    for slot in poly.iter_mut().take(d as usize) {
        *slot = rest % p;
        rest /= p;
    }
    poly
}

/// Monic irreducibles over F_p of each degree 1..=max_degree, found by the
/// divisibility sieve. Polynomials are coefficient vectors ascending in y.
fn fp_irreducibles(p: u64, max_degree: u32) -> Vec<Vec<Vec<u64>>> {
    let mut by_degree: Vec<Vec<Vec<u64>>> = Vec::new();
    for d in 1..=max_degree {
        let mut irr = Vec::new();
        let count = p.pow(d);
        for c in 0..count {
            let poly = fp_monic_candidate(c, p, d);
            let divisible = by_degree
                .iter()
                .take((d / 2) as usize)
                .flatten()
                .any(|g| fp_is_zero(&fp_rem(&poly, g, p)));
            if !divisible {
                irr.push(poly);
            }
        }
        by_degree.push(irr);
    }
    by_degree
}

impl FieldCtx {
    /// Build F_{p^e} with the lexicographically smallest monic irreducible
    /// modulus of degree e over F_p (coefficients compared from the
    /// high-degree end).
    pub fn new(p: u64, e: u32) -> Result<Self> {
        let pp = PrimePower::new(p, e)?;
        if pp.q() > MAX_FIELD_SIZE {
            return capacity_err(format!(
                "field size {} exceeds the supported maximum {MAX_FIELD_SIZE}",
                pp.q()
            ));
        }
        let q = pp.q();

        // Smallest monic irreducible of degree e, scanning candidates in
        // high-coefficient-first order. Degree-1 candidates are all
        // irreducible, so e = 1 yields the formal modulus y immediately.
        let lower = fp_irreducibles(p, e / 2);
        let mut modulus = None;
        'search: for c in 0..q {
            let poly = fp_monic_candidate(c, p, e);
            for g in lower.iter().flatten() {
                if fp_is_zero(&fp_rem(&poly, g, p)) {
                    continue 'search;
                }
            }
            modulus = Some(poly);
            break;
        }
        let modulus = modulus.expect("an irreducible polynomial of each degree exists");

        let qs = q as usize;
        let idx_to_coords = |idx: u64| -> Vec<u64> {
            let mut coords = vec![0u64; e as usize];
            let mut rest = idx;
            for j in (0..e as usize).rev() {
                // a_0 is the most significant digit of the index.
                coords[j] = rest % p;
                rest /= p;
            }
            coords
        };
        let coords_to_idx = |coords: &[u64]| -> u64 {
            let mut idx = 0u64;
            for j in 0..e as usize {
                let a = if j < coords.len() { coords[j] } else { 0 };
                idx = idx * p + a;
            }
            idx
        };

        let mut add = vec![0u32; qs * qs];
        let mut mul = vec![0u32; qs * qs];
        let mut neg = vec![0u32; qs];
        for a in 0..q {
            let ca = idx_to_coords(a);
            let cn: Vec<u64> = ca.iter().map(|&x| (p - x) % p).collect();
            neg[a as usize] = coords_to_idx(&cn) as u32;
            for b in 0..=a {
                let cb = idx_to_coords(b);
                let cs: Vec<u64> = ca.iter().zip(&cb).map(|(&x, &y)| (x + y) % p).collect();
                let s = coords_to_idx(&cs) as u32;
                add[(a * q + b) as usize] = s;
                add[(b * q + a) as usize] = s;
                let prod = fp_rem(&fp_mul(&ca, &cb, p), &modulus, p);
                let m = coords_to_idx(&prod) as u32;
                mul[(a * q + b) as usize] = m;
                mul[(b * q + a) as usize] = m;
            }
        }

        let one = coords_to_idx(&[1]) as u32;
        let mut inv = vec![0u32; qs];
        for a in 1..q {
            for b in 1..q {
                if mul[(a * q + b) as usize] == one {
                    inv[a as usize] = b as u32;
                    break;
                }
            }
        }

        Ok(FieldCtx {
            pp,
            modulus,
            add,
            mul,
            neg,
            inv,
            enum_budget: DEFAULT_ENUM_BUDGET,
        })
    }

    /// Override the enumeration budget (total polynomials a single
    /// enumeration may visit). Must be called before the context is shared.
    pub fn set_enum_budget(&mut self, budget: u64) {
        self.enum_budget = budget;
    }

    pub fn enum_budget(&self) -> u64 {
        self.enum_budget
    }

    pub fn prime_power(&self) -> PrimePower {
        self.pp
    }

    pub fn p(&self) -> u64 {
        self.pp.p()
    }

    pub fn e(&self) -> u32 {
        self.pp.e()
    }

    pub fn q(&self) -> u64 {
        self.pp.q()
    }

    /// The modulus as coefficients by ascending power, length e+1.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem(0)
    }

    pub fn one(&self) -> FqElem {
        // Coordinates (1, 0, ..., 0); a_0 is the most significant digit.
        FqElem(self.pp.p().pow(self.pp.e() - 1) as u32)
    }

    /// Element from its coordinate vector (a_0, ..., a_{e-1}); shorter
    /// vectors are zero-padded.
    pub fn elem(&self, coords: &[u64]) -> Result<FqElem> {
        if coords.len() > self.e() as usize {
            return input_err(format!(
                "element has {} coordinates but the field has degree {}",
                coords.len(),
                self.e()
            ));
        }
        let mut idx = 0u64;
        for j in 0..self.e() as usize {
            let a = coords.get(j).copied().unwrap_or(0);
            if a >= self.p() {
                return input_err(format!("coordinate {a} is not a residue mod {}", self.p()));
            }
            idx = idx * self.p() + a;
        }
        Ok(FqElem(idx as u32))
    }

    /// Coordinate vector (a_0, ..., a_{e-1}) of an element.
    pub fn coords(&self, a: FqElem) -> Vec<u64> {
        let mut coords = vec![0u64; self.e() as usize];
        let mut rest = a.0 as u64;
        for j in (0..self.e() as usize).rev() {
            coords[j] = rest % self.p();
            rest /= self.p();
        }
        coords
    }

    /// All field elements in canonical order.
    pub fn elems(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q() as u32).map(FqElem)
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(self.add[(a.0 as u64 * self.q() + b.0 as u64) as usize])
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(self.mul[(a.0 as u64 * self.q() + b.0 as u64) as usize])
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        FqElem(self.neg[a.0 as usize])
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: FqElem) -> FqElem {
        assert!(!a.is_zero(), "inverse of zero");
        FqElem(self.inv[a.0 as usize])
    }
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("q", &self.q())
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// A monic polynomial over F_q. Coefficients are stored densely by ascending
/// power of x including the leading 1, so `coeffs.len() == degree + 1` and
/// the degree-0 polynomial is the constant 1.
///
/// In the f_j view, f = x^d + f_1 x^{d-1} + ... + f_d with f_j = 0 for
/// j > d; see [`FqPoly::fcoeff`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqPoly {
    coeffs: Vec<FqElem>,
}

impl FqPoly {
    /// The constant polynomial 1.
    pub fn one(ctx: &FieldCtx) -> FqPoly {
        FqPoly {
            coeffs: vec![ctx.one()],
        }
    }

    /// Monic polynomial from its non-leading coefficients in the order
    /// (f_1, ..., f_d), i.e. from x^{d-1} down to the constant term.
    pub fn from_tail(ctx: &FieldCtx, tail: &[FqElem]) -> FqPoly {
        let mut coeffs: Vec<FqElem> = tail.iter().rev().copied().collect();
        coeffs.push(ctx.one());
        FqPoly { coeffs }
    }

    pub(crate) fn from_low_coeffs(coeffs: Vec<FqElem>) -> FqPoly {
        debug_assert!(!coeffs.is_empty());
        FqPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// f_j, the coefficient of x^{d-j}; zero for j > d, one for j = 0.
    pub fn fcoeff(&self, j: usize) -> FqElem {
        if j > self.degree() {
            FqElem(0)
        } else {
            self.coeffs[self.degree() - j]
        }
    }

    /// Coefficients by ascending power of x, including the leading 1.
    pub fn low_coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }
}

impl PartialOrd for FqPoly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FqPoly {
    /// Canonical order: by degree, then by the coefficient tuple
    /// (f_1, ..., f_d).
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let d = self.degree();
            for j in 1..=d {
                let c = self.fcoeff(j).cmp(&other.fcoeff(j));
                if c != std::cmp::Ordering::Equal {
                    return c;
                }
            }
            std::cmp::Ordering::Equal
        })
    }
}

impl FieldCtx {
    pub fn poly_mul(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let (ac, bc) = (a.low_coeffs(), b.low_coeffs());
        let mut out = vec![FqElem(0); ac.len() + bc.len() - 1];
        for (i, &ai) in ac.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, &bj) in bc.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(ai, bj));
            }
        }
        FqPoly::from_low_coeffs(out)
    }

    /// Synthetic division of `f` (dense, ascending) by the monic `g`, in
    /// place. On success `f` becomes the quotient and the call returns true;
    /// on failure `f` is left in an unspecified state.
    pub(crate) fn div_in_place(&self, f: &mut Vec<FqElem>, g: &[FqElem]) -> bool {
        let dg = g.len() - 1;
        if f.len() - 1 < dg {
            return false;
        }
        for k in (dg..f.len()).rev() {
            // g is monic, so f[k] itself is the quotient digit for x^{k-dg};
            // positions below k are still in flight.
            let c = f[k];
            if c.is_zero() {
                continue;
            }
            for j in 0..dg {
                f[k - dg + j] = self.sub(f[k - dg + j], self.mul(c, g[j]));
            }
        }
        if f[..dg].iter().all(FqElem::is_zero) {
            f.drain(..dg);
            true
        } else {
            false
        }
    }

    /// Quotient of `f` by the monic `g` if `g` divides `f` exactly.
    pub fn try_divide(&self, f: &FqPoly, g: &FqPoly) -> Option<FqPoly> {
        if g.degree() > f.degree() {
            return None;
        }
        let mut work = f.low_coeffs().to_vec();
        if self.div_in_place(&mut work, g.low_coeffs()) {
            Some(FqPoly::from_low_coeffs(work))
        } else {
            None
        }
    }

    fn checked_q_pow(&self, d: u32) -> Option<u64> {
        (0..d).try_fold(1u64, |acc, _| {
            acc.checked_mul(self.q()).filter(|&v| v <= self.enum_budget)
        })
    }

    /// All monic polynomials of degree `d`, in canonical order. Exactly q^d
    /// items.
    pub fn enumerate_monic(&self, d: u32) -> Result<impl Iterator<Item = FqPoly> + '_> {
        let total = self.checked_q_pow(d).ok_or_else(|| {
            Error::Capacity(format!(
                "enumerating {}^{d} monic polynomials exceeds the budget of {}",
                self.q(),
                self.enum_budget
            ))
        })?;
        let q = self.q();
        Ok((0..total).map(move |c| {
            let mut tail = vec![FqElem(0); d as usize];
            let mut rest = c;
            for j in (0..d as usize).rev() {
                // f_1 is the most significant digit, matching the canonical
                // (f_1, ..., f_d) tuple order.
                tail[j] = FqElem((rest % q) as u32);
                rest /= q;
            }
            FqPoly::from_tail(self, &tail)
        }))
    }
}

/// The monic irreducibles of every degree 1..=max_degree, found by sieve:
/// a polynomial of degree d is irreducible iff no irreducible of degree
/// <= d/2 divides it.
pub struct IrreducibleTable {
    by_degree: Vec<Vec<FqPoly>>,
}

impl IrreducibleTable {
    pub fn max_degree(&self) -> u32 {
        self.by_degree.len() as u32
    }

    /// The set I_d in canonical order. Panics if `d` is out of range.
    pub fn irreducibles(&self, d: u32) -> &[FqPoly] {
        assert!(
            d >= 1 && d <= self.max_degree(),
            "degree {d} outside the table"
        );
        &self.by_degree[d as usize - 1]
    }
}

/// Sieve the irreducibles of each degree up to `max_degree`.
pub fn irreducibles_up_to(ctx: &FieldCtx, max_degree: u32) -> Result<IrreducibleTable> {
    let mut total = 0u64;
    for d in 1..=max_degree {
        let step = ctx.checked_q_pow(d).ok_or_else(|| {
            Error::Capacity(format!(
                "irreducible sieve to degree {max_degree} exceeds the budget"
            ))
        })?;
        total += step;
        if total > ctx.enum_budget() {
            return capacity_err(format!(
                "irreducible sieve to degree {max_degree} needs {total} polynomials, budget is {}",
                ctx.enum_budget()
            ));
        }
    }

    let mut by_degree: Vec<Vec<FqPoly>> = Vec::new();
    for d in 1..=max_degree {
        let mut irr = Vec::new();
        'poly: for f in ctx.enumerate_monic(d)? {
            for g in by_degree.iter().take((d / 2) as usize).flatten() {
                if ctx.try_divide(&f, g).is_some() {
                    continue 'poly;
                }
            }
            irr.push(f);
        }
        by_degree.push(irr);
    }
    Ok(IrreducibleTable { by_degree })
}

/// A complete factorization into monic irreducibles with multiplicities,
/// sorted by (degree, coefficient order). Pairwise distinct factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(FqPoly, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(FqPoly, u32)] {
        &self.factors
    }

    /// Multiply the factorization back out.
    pub fn expand(&self, ctx: &FieldCtx) -> FqPoly {
        let mut acc = FqPoly::one(ctx);
        for (g, mult) in &self.factors {
            for _ in 0..*mult {
                acc = ctx.poly_mul(&acc, g);
            }
        }
        acc
    }

    /// Sum of degree * multiplicity; equals the degree of the factored
    /// polynomial.
    pub fn total_degree(&self) -> usize {
        self.factors
            .iter()
            .map(|(g, m)| g.degree() * *m as usize)
            .sum()
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Factor `f` by trial division against `table`, which must cover degrees up
/// to floor(d(f)/2); whatever remains after all small factors are removed is
/// itself irreducible.
pub fn factor_with_table(
    ctx: &FieldCtx,
    f: &FqPoly,
    table: &IrreducibleTable,
) -> Result<Factorization> {
    if f.degree() == 0 {
        return input_err("cannot factor the constant polynomial");
    }
    if table.max_degree() < (f.degree() / 2) as u32 {
        return input_err(format!(
            "irreducible table covers degree {} but factoring degree {} needs {}",
            table.max_degree(),
            f.degree(),
            f.degree() / 2
        ));
    }
    let mut current: Vec<FqElem> = f.low_coeffs().to_vec();
    let mut work: Vec<FqElem> = Vec::with_capacity(current.len());
    let mut factors: Vec<(FqPoly, u32)> = Vec::new();
    let mut d = 1u32;
    while 2 * (d as usize) < current.len() {
        for g in table.irreducibles(d) {
            let mut mult = 0u32;
            loop {
                work.clone_from(&current);
                if ctx.div_in_place(&mut work, g.low_coeffs()) {
                    std::mem::swap(&mut current, &mut work);
                    mult += 1;
                } else {
                    break;
                }
            }
            if mult > 0 {
                factors.push((g.clone(), mult));
            }
            if 2 * (d as usize) >= current.len() {
                break;
            }
        }
        d += 1;
    }
    if current.len() > 1 {
        factors.push((FqPoly::from_low_coeffs(current), 1));
    }
    Ok(Factorization { factors })
}

/// Factor `f`, sieving the needed irreducible table on the fly. Callers that
/// factor many polynomials should sieve once and use [`factor_with_table`].
pub fn factor(ctx: &FieldCtx, f: &FqPoly) -> Result<Factorization> {
    if f.degree() == 0 {
        return input_err("cannot factor the constant polynomial");
    }
    let table = irreducibles_up_to(ctx, (f.degree() / 2) as u32)?;
    factor_with_table(ctx, f, &table)
}

/// Count mode for factorization patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// r_i: number of distinct irreducible factors of degree i.
    Distinct,
    /// l_i: number of irreducible factors of degree i counting multiplicity.
    Multiplicity,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Distinct => write!(f, "distinct"),
            Mode::Multiplicity => write!(f, "multiplicity"),
        }
    }
}

/// For each degree i in `t`, the count r_i(f) or l_i(f) of the factored
/// polynomial. Degrees outside `t` are ignored.
pub fn pattern_of(
    fact: &Factorization,
    t: &BTreeSet<u32>,
    mode: Mode,
) -> std::collections::BTreeMap<u32, u32> {
    let mut out: std::collections::BTreeMap<u32, u32> = t.iter().map(|&i| (i, 0)).collect();
    for (g, mult) in fact.factors() {
        let d = g.degree() as u32;
        if let Some(slot) = out.get_mut(&d) {
            *slot += match mode {
                Mode::Distinct => 1,
                Mode::Multiplicity => *mult,
            };
        }
    }
    out
}

// --- text format ---------------------------------------------------------

impl FieldCtx {
    /// Render an element as its coordinates joined by `:` (a single residue
    /// for prime fields).
    pub fn elem_to_string(&self, a: FqElem) -> String {
        self.coords(a)
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(":")
    }

    pub fn elem_from_str(&self, s: &str) -> Result<FqElem> {
        let coords: Vec<u64> = s
            .split(':')
            .map(|part| {
                part.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Input(format!("bad field element {s:?}")))
            })
            .collect::<Result<_>>()?;
        self.elem(&coords)
    }

    /// Render a monic polynomial as comma-separated coefficients from x^d
    /// down to the constant term, leading 1 included.
    pub fn poly_to_string(&self, f: &FqPoly) -> String {
        (0..=f.degree())
            .map(|j| self.elem_to_string(f.fcoeff(j)))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn poly_from_str(&self, s: &str) -> Result<FqPoly> {
        let coeffs: Vec<FqElem> = s
            .split(',')
            .map(|part| self.elem_from_str(part))
            .collect::<Result<_>>()?;
        if coeffs.is_empty() {
            return input_err("empty polynomial");
        }
        if coeffs[0] != self.one() {
            return input_err("polynomial is not monic: leading coefficient must be 1");
        }
        Ok(FqPoly::from_tail(self, &coeffs[1..]))
    }
}
