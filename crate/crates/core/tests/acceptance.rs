//! Acceptance suite: every formula in the crate against the brute-force
//! oracle and the structural identities, at the full supported grid, with
//! zero tolerance. One summary line per criterion; run with `--nocapture`
//! to see them.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use fqcount::closed_form::{
    a_coeff, b_coeff, count_irreducible_total, count_irreducible_trace, count_large,
    count_pattern_w0, count_pattern_w1, count_pattern_w1_special, rs_distance_count, smooth_w0,
    smooth_w1, trace_split, PatternSpec, SmoothMethod,
};
use fqcount::exact::big_pow;
use fqcount::field::irreducibles_up_to;
use fqcount::group_ring::{
    count_irreducible_general, count_pattern_general, group_inv, group_mul, reduce, GroupAlgebra,
    GroupElem,
};
use fqcount::oracle::{oracle_count, oracle_table, Constraint, OracleQuery};
use fqcount::{FieldCtx, Mode, PrimePower};

fn field(p: u64, e: u32) -> FieldCtx {
    FieldCtx::new(p, e).unwrap()
}

/// All nonempty subsets of the sorted degree slice.
fn nonempty_subsets(degrees: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << degrees.len()) {
        out.push(
            degrees
                .iter()
                .enumerate()
                .filter(|(pos, _)| mask & (1 << pos) != 0)
                .map(|(_, &i)| i)
                .collect(),
        );
    }
    out
}

/// Every count vector with r_i <= m / i per coordinate; covers all
/// achievable patterns and a fringe of unachievable ones that must count 0.
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

fn pattern(mode: Mode, degrees: &[u32], counts: &[u32]) -> PatternSpec {
    PatternSpec::new(mode, degrees.iter().copied().zip(counts.iter().copied())).unwrap()
}

/// Criterion grid shared by the closed-form and large-degree checks:
/// q in {2, 3, 4, 5}, m <= 8 with q^m <= 4*10^5.
fn closed_form_grid() -> Vec<(FieldCtx, Vec<u32>)> {
    [(2u64, 1u32), (3, 1), (2, 2), (5, 1)]
        .into_iter()
        .map(|(p, e)| {
            let ctx = field(p, e);
            let ms: Vec<u32> = (1..=8)
                .filter(|&m| (ctx.q() as f64).powi(m as i32) <= 4e5)
                .collect();
            (ctx, ms)
        })
        .collect()
}

#[test]
fn criterion_1_oracle_equivalence_closed_forms() {
    let mut cells = 0u64;
    for (ctx, ms) in closed_form_grid() {
        let q = ctx.prime_power();
        for &m in &ms {
            let t_full: Vec<u32> = (1..=3.min(m)).collect();
            let t_set: BTreeSet<u32> = t_full.iter().copied().collect();
            for mode in [Mode::Distinct, Mode::Multiplicity] {
                let table_w1 = oracle_table(&ctx, 1, m, &t_set, mode).unwrap();
                let table_w0 = table_w1.truncate_classes(0);
                for t_sub in nonempty_subsets(&t_full) {
                    let sub_set: BTreeSet<u32> = t_sub.iter().copied().collect();
                    let sub_w1 = table_w1.restrict(&sub_set);
                    let sub_w0 = table_w0.restrict(&sub_set);
                    for counts in pattern_rectangle(&t_sub, m) {
                        let spec = pattern(mode, &t_sub, &counts);

                        let formula = count_pattern_w0(&q, m, &spec);
                        let oracle = sub_w0.count(&GroupElem::identity(0), &counts);
                        assert_eq!(
                            formula,
                            oracle,
                            "w=0 q={} m={m} T={t_sub:?} r={counts:?} {mode}",
                            ctx.q()
                        );
                        cells += 1;

                        for alpha in ctx.elems() {
                            let formula = count_pattern_w1(&q, m, alpha.is_zero(), &spec);
                            let class = GroupElem::new(1, vec![alpha]);
                            let oracle = sub_w1.count(&class, &counts);
                            assert_eq!(
                                formula,
                                oracle,
                                "w=1 q={} m={m} alpha={alpha:?} T={t_sub:?} r={counts:?} {mode}",
                                ctx.q()
                            );
                            cells += 1;
                        }
                    }
                }
            }
        }
    }
    println!("criterion 1 (oracle equivalence, w <= 1 closed forms): PASS, {cells} cells");
}

#[test]
fn criterion_2_oracle_equivalence_general_engine() {
    let w = 2u32;
    let mut cells = 0u64;
    for p in [2u64, 3] {
        let ctx = field(p, 1);
        let algebra = GroupAlgebra::new(&ctx, w).unwrap();
        let classes: Vec<GroupElem> = (0..algebra.size()).map(|i| algebra.elem_at(i)).collect();
        for m in 1..=6u32 {
            let t_full: Vec<u32> = (1..=3.min(m)).collect();
            let t_set: BTreeSet<u32> = t_full.iter().copied().collect();
            for mode in [Mode::Distinct, Mode::Multiplicity] {
                let table = oracle_table(&ctx, w, m, &t_set, mode).unwrap();
                for t_sub in nonempty_subsets(&t_full) {
                    let sub_set: BTreeSet<u32> = t_sub.iter().copied().collect();
                    let sub = table.restrict(&sub_set);
                    for counts in pattern_rectangle(&t_sub, m) {
                        let spec = pattern(mode, &t_sub, &counts);
                        for class in &classes {
                            let formula =
                                count_pattern_general(&ctx, w, m, class.coeffs(), &spec).unwrap();
                            let oracle = sub.count(class, &counts);
                            assert_eq!(
                                formula, oracle,
                                "general q={p} m={m} class={class:?} T={t_sub:?} r={counts:?} {mode}"
                            );
                            cells += 1;
                        }
                    }
                }
            }

            // irreducibility: a degree-m polynomial is irreducible exactly
            // when it is its own degree-m factor, so tally r_m = 1.
            let t_m: BTreeSet<u32> = [m].into();
            let irr_table = oracle_table(&ctx, w, m, &t_m, Mode::Distinct).unwrap();
            for class in &classes {
                let formula = count_irreducible_general(&ctx, w, m, class.coeffs()).unwrap();
                let oracle = irr_table.count(class, &[1]);
                assert_eq!(formula, oracle, "irreducible q={p} m={m} class={class:?}");
                cells += 1;
            }
        }
    }
    println!("criterion 2 (oracle equivalence, general-w engine): PASS, {cells} cells");
}

#[test]
fn criterion_3_smooth_identities() {
    let mut cells = 0u64;
    for (p, e) in [(2u64, 1u32), (3, 1), (2, 2)] {
        let q = PrimePower::new(p, e).unwrap();
        for m in 1..=12u32 {
            for n in 1..=m {
                let complement = smooth_w0(&q, m, n, SmoothMethod::Complement);
                let partition = smooth_w0(&q, m, n, SmoothMethod::Partition);
                assert_eq!(complement, partition, "w=0 q={} m={m} n={n}", q.q());
                cells += 1;
                for alpha_is_zero in [true, false] {
                    let complement = smooth_w1(&q, m, n, alpha_is_zero, SmoothMethod::Complement);
                    let partition = smooth_w1(&q, m, n, alpha_is_zero, SmoothMethod::Partition);
                    assert_eq!(
                        complement,
                        partition,
                        "w=1 q={} m={m} n={n} alpha0={alpha_is_zero}",
                        q.q()
                    );
                    cells += 1;
                }
            }
        }
    }
    println!("criterion 3 (smooth-count identities): PASS, {cells} cells");
}

#[test]
fn criterion_4_known_value_reproduction() {
    let ctx = field(2, 1);
    let irr = |m: u32| {
        oracle_count(&OracleQuery::new(&ctx, 0, m, vec![], Constraint::Irreducible).unwrap())
            .unwrap()
    };
    assert_eq!(irr(2), BigInt::from(1));
    assert_eq!(irr(3), BigInt::from(2));
    assert_eq!(irr(4), BigInt::from(3));

    let irr_trace = |beta: u64| {
        let coeffs = vec![ctx.elem(&[beta]).unwrap()];
        oracle_count(&OracleQuery::new(&ctx, 1, 2, coeffs, Constraint::Irreducible).unwrap())
            .unwrap()
    };
    assert_eq!(irr_trace(0), BigInt::from(0));
    assert_eq!(irr_trace(1), BigInt::from(1));

    let one_root = PatternSpec::new(Mode::Distinct, [(1, 1)]).unwrap();
    let n_3 =
        oracle_count(&OracleQuery::new(&ctx, 0, 3, vec![], Constraint::Pattern(one_root)).unwrap())
            .unwrap();
    assert_eq!(n_3, BigInt::from(4));

    let rootless = || PatternSpec::new(Mode::Distinct, [(1, 0)]).unwrap();
    let n_2 = |beta: u64| {
        let coeffs = vec![ctx.elem(&[beta]).unwrap()];
        oracle_count(
            &OracleQuery::new(&ctx, 1, 2, coeffs, Constraint::Pattern(rootless())).unwrap(),
        )
        .unwrap()
    };
    assert_eq!(n_2(1), BigInt::from(1));
    assert_eq!(n_2(0), BigInt::from(0));

    println!("criterion 4 (known-value reproduction): PASS, 8 values");
}

#[test]
fn criterion_5_large_degree_consistency() {
    let mut cells = 0u64;
    for (ctx, ms) in closed_form_grid() {
        let q = ctx.prime_power();
        for &m in &ms {
            let t_full: Vec<u32> = (1..=3.min(m)).collect();
            for mode in [Mode::Distinct, Mode::Multiplicity] {
                for t_sub in nonempty_subsets(&t_full) {
                    for counts in pattern_rectangle(&t_sub, m) {
                        let spec = pattern(mode, &t_sub, &counts);
                        for w in 0..=1u32 {
                            let Ok(large) = count_large(&q, w, m, &spec) else {
                                continue; // hypothesis does not hold here
                            };
                            let general = match w {
                                0 => count_pattern_w0(&q, m, &spec),
                                _ => {
                                    let anywhere = count_pattern_w1(&q, m, false, &spec);
                                    // the simplified product is class-blind
                                    assert_eq!(
                                        anywhere,
                                        count_pattern_w1(&q, m, true, &spec),
                                        "q={} m={m} w=1 {t_sub:?} {counts:?}",
                                        ctx.q()
                                    );
                                    anywhere
                                }
                            };
                            assert_eq!(
                                large,
                                general,
                                "q={} m={m} w={w} T={t_sub:?} r={counts:?} {mode}",
                                ctx.q()
                            );
                            cells += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(
        cells > 0,
        "the large-degree hypothesis must hold somewhere on the grid"
    );
    println!("criterion 5 (large-degree consistency): PASS, {cells} cells");
}

#[test]
fn criterion_6_structural_suites() {
    let mut checks = 0u64;

    // Idempotent laws across the supported envelope.
    for (p, e, w) in [
        (2u64, 1u32, 0u32),
        (2, 1, 1),
        (2, 1, 2),
        (3, 1, 1),
        (3, 1, 2),
        (2, 2, 1),
    ] {
        let ctx = field(p, e);
        let algebra = GroupAlgebra::new(&ctx, w).unwrap();
        let (e_idem, j_idem) = algebra.idempotents();
        assert_eq!(algebra.ring_mul(&e_idem, &e_idem), e_idem);
        assert_eq!(algebra.ring_mul(&j_idem, &j_idem), j_idem);
        assert!(algebra.ring_mul(&e_idem, &j_idem).is_zero());
        for c in 0..algebra.size() {
            assert_eq!(algebra.ring_mul(&e_idem, &algebra.ring_class(c)), e_idem);
        }
        checks += 3 + algebra.size() as u64;
    }

    // Group laws, exhaustive for q in {2, 3}, w <= 2.
    for p in [2u64, 3] {
        let ctx = field(p, 1);
        for w in 1..=2u32 {
            let algebra = GroupAlgebra::new(&ctx, w).unwrap();
            let elems: Vec<GroupElem> = (0..algebra.size()).map(|i| algebra.elem_at(i)).collect();
            for a in &elems {
                assert!(group_mul(&ctx, a, &group_inv(&ctx, a)).is_identity());
                for b in &elems {
                    assert_eq!(group_mul(&ctx, a, b), group_mul(&ctx, b, a));
                    for c in &elems {
                        assert_eq!(
                            group_mul(&ctx, &group_mul(&ctx, a, b), c),
                            group_mul(&ctx, a, &group_mul(&ctx, b, c))
                        );
                        checks += 1;
                    }
                }
            }
        }
    }

    // Averaging law: sum over M_d of <f> = q^d E for d >= w.
    for (p, w) in [(2u64, 1u32), (2, 2), (3, 1), (3, 2)] {
        let ctx = field(p, 1);
        let algebra = GroupAlgebra::new(&ctx, w).unwrap();
        let (e_idem, _) = algebra.idempotents();
        for d in w..=w + 2 {
            let mut sum = algebra.ring_zero();
            for f in ctx.enumerate_monic(d).unwrap() {
                sum.add_assign(&algebra.ring_class(algebra.index_of(&reduce(&f, w))));
            }
            let scale = BigRational::from(big_pow(ctx.q(), d));
            assert_eq!(sum, e_idem.scale(&scale), "q={p} w={w} d={d}");
            checks += 1;
        }
    }

    // Trace-projected product identities through degree 12 at w = 1.
    for p in [2u64, 3] {
        let ctx = field(p, 1);
        let q = ctx.prime_power();
        let algebra = GroupAlgebra::new(&ctx, 1).unwrap();
        let (_, j_idem) = algebra.idempotents();
        let table = irreducibles_up_to(&ctx, 4).unwrap();
        let cap = 12usize;
        for i in 1..=4u32 {
            let pair = trace_split(&q, i);
            // expand prod (1 + <f> y) and prod (1 - <f> y) as dense series
            let mut plus = vec![algebra.ring_zero(); cap + 1];
            let mut minus = vec![algebra.ring_zero(); cap + 1];
            plus[0] = algebra.ring_one();
            minus[0] = algebra.ring_one();
            for g in table.irreducibles(i) {
                let class = algebra.ring_class(algebra.index_of(&reduce(g, 1)));
                for d in (1..=cap).rev() {
                    let bump = algebra.ring_mul(&plus[d - 1], &class);
                    plus[d] = plus[d].add(&bump);
                    let bump = algebra.ring_mul(&minus[d - 1], &class);
                    minus[d] = minus[d].sub(&bump);
                }
            }
            // invert the minus-product: inverse series coefficients
            let mut inv = vec![algebra.ring_zero(); cap + 1];
            inv[0] = algebra.ring_one();
            for d in 1..=cap {
                let mut acc = algebra.ring_zero();
                for k in 1..=d {
                    acc.add_assign(&algebra.ring_mul(&minus[k], &inv[d - k]));
                }
                inv[d] = algebra.ring_zero().sub(&acc);
            }
            for k in 0..=cap {
                let lhs = algebra.ring_mul(&j_idem, &plus[k]);
                assert_eq!(
                    lhs,
                    j_idem.scale(&a_coeff(&pair, k as u32, &q)),
                    "A_{k} q={p} i={i}"
                );
                let lhs = algebra.ring_mul(&j_idem, &inv[k]);
                assert_eq!(
                    lhs,
                    j_idem.scale(&b_coeff(&pair, k as u32, &q)),
                    "B_{k} q={p} i={i}"
                );
                checks += 2;
            }
        }
    }

    // Completeness: single-degree pattern counts sum to q^{m-w}, and trace
    // counts sum to |I_m|.
    for (ctx, ms) in closed_form_grid() {
        let q = ctx.prime_power();
        for &m in &ms {
            for i in 1..=3.min(m) {
                for mode in [Mode::Distinct, Mode::Multiplicity] {
                    let mut w0_sum = BigInt::zero();
                    let mut w1_sums = vec![BigInt::zero(); 2];
                    for r in 0..=m / i {
                        let spec = pattern(mode, &[i], &[r]);
                        w0_sum += count_pattern_w0(&q, m, &spec);
                        for (slot, alpha_is_zero) in [true, false].into_iter().enumerate() {
                            w1_sums[slot] += count_pattern_w1(&q, m, alpha_is_zero, &spec);
                        }
                    }
                    assert_eq!(w0_sum, big_pow(q.q(), m));
                    for sum in w1_sums {
                        assert_eq!(sum, big_pow(q.q(), m - 1));
                    }
                    checks += 3;
                }
            }
            let zero_trace = count_irreducible_trace(&q, m, true);
            let nonzero_trace = count_irreducible_trace(&q, m, false);
            assert_eq!(
                zero_trace + BigInt::from(q.q() - 1) * nonzero_trace,
                count_irreducible_total(&q, m)
            );
            checks += 1;
        }
    }

    println!("criterion 6 (structural suites): PASS, {checks} checks");
}

#[test]
fn criterion_7_integrality_fuzz() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let fields: Vec<FieldCtx> = vec![field(2, 1), field(3, 1), field(2, 2), field(5, 1)];
    let mut done = 0u64;
    while done < 1000 {
        let ctx = &fields[rng.gen_range(0..fields.len())];
        let q = ctx.prime_power();
        let m = rng.gen_range(1..=8u32);
        let value: BigInt = match rng.gen_range(0..9) {
            0 => count_irreducible_total(&q, m),
            1 => count_irreducible_trace(&q, m, rng.gen_bool(0.5)),
            2 | 3 => {
                let degrees: Vec<u32> = {
                    let mut d: Vec<u32> = (1..=3.min(m)).filter(|_| rng.gen_bool(0.6)).collect();
                    if d.is_empty() {
                        d.push(rng.gen_range(1..=m.min(3)));
                    }
                    d
                };
                let counts: Vec<u32> = degrees.iter().map(|&i| rng.gen_range(0..=m / i)).collect();
                let mode = if rng.gen_bool(0.5) {
                    Mode::Distinct
                } else {
                    Mode::Multiplicity
                };
                let spec = pattern(mode, &degrees, &counts);
                if rng.gen_bool(0.5) {
                    count_pattern_w0(&q, m, &spec)
                } else {
                    count_pattern_w1(&q, m, rng.gen_bool(0.5), &spec)
                }
            }
            4 => {
                let i = rng.gen_range(1..=m.min(3));
                if (i as u64).is_multiple_of(q.p()) {
                    continue;
                }
                let r = rng.gen_range(0..=m / i);
                let mode = if rng.gen_bool(0.5) {
                    Mode::Distinct
                } else {
                    Mode::Multiplicity
                };
                count_pattern_w1_special(&q, m, rng.gen_bool(0.5), &pattern(mode, &[i], &[r]))
                    .unwrap()
            }
            5 => {
                let n = rng.gen_range(1..=m);
                let method = if rng.gen_bool(0.5) {
                    SmoothMethod::Complement
                } else {
                    SmoothMethod::Partition
                };
                if rng.gen_bool(0.5) {
                    smooth_w0(&q, m, n, method)
                } else {
                    smooth_w1(&q, m, n, rng.gen_bool(0.5), method)
                }
            }
            6 => {
                let i = rng.gen_range(1..=m.min(3));
                let r = rng.gen_range(0..=m / i);
                let mode = if rng.gen_bool(0.5) {
                    Mode::Distinct
                } else {
                    Mode::Multiplicity
                };
                let spec = pattern(mode, &[i], &[r]);
                match count_large(&q, rng.gen_range(0..=1), m, &spec) {
                    Ok(v) => v,
                    Err(_) => continue, // hypothesis fails; not an in-envelope input
                }
            }
            7 => {
                if ctx.q() > 3 {
                    continue; // keep the general engine inside its envelope
                }
                let w = rng.gen_range(0..=2u32);
                let coeffs: Vec<_> = (0..w)
                    .map(|_| ctx.elem(&[rng.gen_range(0..ctx.p())]).unwrap())
                    .collect();
                let i = rng.gen_range(1..=m.min(3));
                let r = rng.gen_range(0..=m / i);
                let mode = if rng.gen_bool(0.5) {
                    Mode::Distinct
                } else {
                    Mode::Multiplicity
                };
                if rng.gen_bool(0.5) {
                    count_pattern_general(ctx, w, m, &coeffs, &pattern(mode, &[i], &[r])).unwrap()
                } else {
                    count_irreducible_general(ctx, w, m, &coeffs).unwrap()
                }
            }
            _ => {
                let w = rng.gen_range(0..=1u32);
                if m <= w {
                    continue;
                }
                let k = m - w;
                let tail: Vec<_> = (0..m)
                    .map(|_| ctx.elem(&[rng.gen_range(0..ctx.p())]).unwrap())
                    .collect();
                let v = fqcount::FqPoly::from_tail(ctx, &tail);
                let r = rng.gen_range(0..=ctx.q().min(4) as u32);
                rs_distance_count(ctx, k, w, &v, r).unwrap()
            }
        };
        assert!(!value.is_negative(), "counting operation returned {value}");
        done += 1;
    }
    println!("criterion 7 (integrality fuzz): PASS, {done} random inputs");
}
