//! Acceptance criteria, one line each.
//!
//! Every algebraic identity is re-derived here without the library's field
//! arithmetic: words are multiplied out over `ℚ[x]`, minimal polynomials
//! are rebuilt from their numeric roots, and identities are cross-multiplied
//! so no inverses are needed. Library results are then compared against
//! these oracles.
//!
//! Three criteria state identities that do not hold as printed. They are
//! reported as FAIL, together with the corrected identity that does hold.
//! The binary exits non-zero if any criterion deviates from the expected
//! outcome in either direction.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use veechsaf::exactfield::{subfield_membership, FieldElement};
use veechsaf::hecke::{
    generators, lambda_field, leutbecher_parity_check, search_special, special_report, GroupMatrix, HeckeWord, Letter,
};
use veechsaf::matrix::Point;
use veechsaf::rosen::{convergent_matrix, expand, hyperbolic_from_periodic, ExpansionStatus};
use veechsaf::saf::{compose, first_return_iet, saf_invariant, translations, Direction, Iet, WedgeValue};
use veechsaf::surfaces::{check_linear_normalization, matrix_h, normalize, unfold_triangle, Ambient};
use veechsaf::trig;
use veechsaf::verify::{random, DEFAULT_SEED};

/// Float cross-checks only; every decision below is exact.
const FLOAT_TOL: f64 = 1e-9;

// ---------- ℚ[x] oracle ----------

type P = Vec<BigRational>;

fn r(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn p(c: &[i64]) -> P {
    trim(c.iter().map(|&n| r(n)).collect())
}

fn trim(mut a: P) -> P {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn add(a: &P, b: &P) -> P {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()).collect())
}

fn neg(a: &P) -> P {
    a.iter().map(|c| -c).collect()
}

fn sub(a: &P, b: &P) -> P {
    add(a, &neg(b))
}

fn mul(a: &P, b: &P) -> P {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn pw(a: &P, e: u32) -> P {
    (0..e).fold(p(&[1]), |acc, _| mul(&acc, a))
}

/// Remainder modulo a monic polynomial.
fn rem(a: &P, m: &P) -> P {
    let mut a = trim(a.clone());
    let dm = m.len() - 1;
    while a.len() > dm {
        let k = a.len() - 1 - dm;
        let lead = a.last().unwrap().clone();
        for (i, c) in m.iter().enumerate() {
            a[k + i] -= &lead * c;
        }
        a = trim(a);
    }
    a
}

fn congruent(a: &P, b: &P, m: &P) -> bool {
    rem(&sub(a, b), m).is_empty()
}

fn eval_f64(a: &P, x: f64) -> f64 {
    a.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap())
}

fn lambda_f64(q: u64) -> f64 {
    2.0 * (std::f64::consts::PI / q as f64).cos()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn phi(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

/// Minimal polynomial of `2cos(π/q)` as `∏ (x − 2cos(πk/q))` over
/// `k < q` coprime to `2q`, rounded to integers.
fn minpoly_lambda(q: u64) -> P {
    let mut c = vec![1.0f64];
    for k in (1..q).filter(|&k| gcd(k, 2 * q) == 1) {
        let root = 2.0 * (std::f64::consts::PI * k as f64 / q as f64).cos();
        let mut next = vec![0.0; c.len() + 1];
        for (i, a) in c.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * root;
        }
        c = next;
    }
    let rounded: Vec<i64> = c.iter().map(|v| v.round() as i64).collect();
    assert!(c.iter().zip(&rounded).all(|(v, n)| (v - *n as f64).abs() < 1e-6), "minpoly rounding for q = {q}");
    p(&rounded)
}

/// `[a, b, c, d]` for `[[a, b], [c, d]]`.
type M = [P; 4];

fn mmul(x: &M, y: &M) -> M {
    [
        add(&mul(&x[0], &y[0]), &mul(&x[1], &y[2])),
        add(&mul(&x[0], &y[1]), &mul(&x[1], &y[3])),
        add(&mul(&x[2], &y[0]), &mul(&x[3], &y[2])),
        add(&mul(&x[2], &y[1]), &mul(&x[3], &y[3])),
    ]
}

fn mrem(x: &M, m: &P) -> M {
    x.clone().map(|e| rem(&e, m))
}

fn trace(x: &M) -> P {
    add(&x[0], &x[3])
}

#[derive(Clone, Copy)]
enum L {
    S(i64),
    T,
}

fn letter(l: L) -> M {
    match l {
        L::S(k) => [p(&[1]), p(&[0, k]), p(&[]), p(&[1])],
        L::T => [p(&[]), p(&[-1]), p(&[1]), p(&[])],
    }
}

fn rep(w: &[L], n: usize) -> Vec<L> {
    w.iter().copied().cycle().take(w.len() * n).collect()
}

fn cat(parts: &[Vec<L>]) -> Vec<L> {
    parts.concat()
}

fn word(w: &[L]) -> M {
    w.iter().fold([p(&[1]), p(&[]), p(&[]), p(&[1])], |acc, &l| mmul(&acc, &letter(l)))
}

fn from_library_word(w: &HeckeWord) -> M {
    let ls: Vec<L> = w
        .letters()
        .iter()
        .map(|l| match l {
            Letter::S(k) => L::S(*k),
            Letter::T => L::T,
        })
        .collect();
    let m = word(&ls);
    if w.negated() {
        m.map(|e| neg(&e))
    } else {
        m
    }
}

/// Field element from a polynomial in the generator, reduced first.
fn elem(f: &std::sync::Arc<veechsaf::exactfield::NumberField>, a: &P) -> FieldElement {
    let mut c = a.clone();
    c.resize(f.degree().max(c.len()), BigRational::zero());
    let g = FieldElement::generator(f);
    c.iter().rev().fold(FieldElement::zero(f), |acc, k| &(&acc * &g) + &FieldElement::from_rational(f, k))
}

fn coeffs(x: &FieldElement) -> P {
    trim(x.coeffs())
}

fn lib_matrix(m: &GroupMatrix) -> M {
    m.entries().map(coeffs)
}

/// `x = num/den` is fixed by `m` iff `c·num² + (d − a)·num·den − b·den² ≡ 0`.
fn fixes(m: &M, num: &P, den: &P, modulus: &P) -> bool {
    let lhs = add(&add(&mul(&m[2], &mul(num, num)), &mul(&sub(&m[3], &m[0]), &mul(num, den))), &neg(&mul(&m[1], &mul(den, den))));
    rem(&lhs, modulus).is_empty()
}

fn only_even(a: &P) -> bool {
    a.iter().skip(1).step_by(2).all(Zero::is_zero)
}

fn only_odd(a: &P) -> bool {
    a.iter().step_by(2).all(Zero::is_zero)
}

/// `Σ l_i ∧ t_i` from coefficient vectors.
fn wedge_sum(pairs: &[(P, P)]) -> std::collections::BTreeMap<(usize, usize), BigRational> {
    let mut out = std::collections::BTreeMap::new();
    for (u, v) in pairs {
        let n = u.len().max(v.len());
        let at = |w: &P, i: usize| w.get(i).cloned().unwrap_or_default();
        for a in 0..n {
            for b in a + 1..n {
                let c = at(u, a) * at(v, b) - at(u, b) * at(v, a);
                *out.entry((a, b)).or_insert_with(BigRational::zero) += c;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn same_wedge(w: &WedgeValue, oracle: &std::collections::BTreeMap<(usize, usize), BigRational>) -> bool {
    let lib: std::collections::BTreeMap<(usize, usize), BigRational> =
        w.entries().map(|(a, b, c)| ((a, b), c.clone())).collect();
    lib == *oracle
}

fn iet_saf_oracle(t: &Iet) -> std::collections::BTreeMap<(usize, usize), BigRational> {
    // translations as image start minus domain start, recomputed by `apply`
    let mut start = FieldElement::zero(t.field());
    let mut pairs = Vec::new();
    for l in t.lengths() {
        let image = t.apply(&start).unwrap();
        pairs.push((coeffs(l), coeffs(&(&image - &start))));
        start = &start + l;
    }
    wedge_sum(&pairs)
}

// ---------- criteria ----------

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

const Q14: [L; 8] = [L::S(1), L::T, L::S(-1), L::T, L::S(-1), L::T, L::S(1), L::T];

fn c1_q14_word() -> Outcome {
    let m = word(&Q14);
    // the identity holds for every λ, so compare before any reduction
    let expected = [p(&[1, 0, 1, 0, 1]), p(&[0, 0, 0, -1]), p(&[0, 0, 0, 1]), p(&[1, 0, -1])];
    let generic = m == expected;
    let lib = lib_matrix(&HeckeWord::parse(14, "S T S^-1 T S^-1 T S T").unwrap().eval().unwrap());
    let reduced = mrem(&expected, &minpoly_lambda(14)) == lib;
    outcome(generic && reduced, format!("product over Q[x] matches: {generic}; library matrix matches: {reduced}"))
}

fn c2_q14_congruence() -> Outcome {
    let modulus = p(&[-7, 0, 14, 0, -7, 0, 1]);
    let same_minpoly = modulus == minpoly_lambda(14);
    let lhs = pw(&p(&[-25, 0, 0, 0, 1]), 2);
    let rhs = mul(&p(&[4, 0, 0, 0, 1]), &pw(&p(&[-12, 0, 0, 0, 1]), 2));
    let ok = congruent(&lhs, &rhs, &modulus);
    let lib = veechsaf::poly::IntPoly::from_i64(&[-25, 0, 0, 0, 1]);
    let lib_ok = {
        let l = lib.mul(&lib);
        let r = veechsaf::poly::IntPoly::from_i64(&[4, 0, 0, 0, 1])
            .mul(&veechsaf::poly::IntPoly::from_i64(&[-12, 0, 0, 0, 1]))
            .mul(&veechsaf::poly::IntPoly::from_i64(&[-12, 0, 0, 0, 1]));
        l.sub(&r).rem_monic(&veechsaf::poly::IntPoly::from_i64(&[-7, 0, 14, 0, -7, 0, 1])).is_zero()
    };
    outcome(same_minpoly && ok && lib_ok, format!("p is the minimal polynomial: {same_minpoly}; remainder zero: {ok} (library: {lib_ok})"))
}

fn q18_word() -> Vec<L> {
    vec![L::S(1), L::T, L::S(4), L::T, L::S(-1), L::T, L::S(-4), L::T]
}

fn c3_q18() -> Outcome {
    let modulus = minpoly_lambda(18);
    let m = mrem(&word(&q18_word()), &modulus);
    let tr = trace(&m);
    let disc = rem(&sub(&mul(&tr, &tr), &p(&[4])), &modulus);
    let delta = p(&[1, 0, 0, 0, 4]);
    let literal = congruent(&disc, &delta, &modulus);
    let scaled = congruent(&disc, &mul(&p(&[0, 0, 0, 0, 64]), &delta), &modulus);
    // √δ = (3δ + 37)/(δ − 33)  ⇔  (3δ + 37)² = δ(δ − 33)²
    let sqrt_ok = congruent(
        &pw(&add(&mul(&p(&[3]), &delta), &p(&[37])), 2),
        &mul(&delta, &pw(&sub(&delta, &p(&[33])), 2)),
        &modulus,
    );
    let (num, den) = (p(&[12, 0, -17, 0, 7]), p(&[0, -16, 0, 0, 0, 2]));
    let fixed = fixes(&m, &num, &den, &modulus);
    let coset = only_even(&num) && only_odd(&den);
    let lib_m = HeckeWord::parse(18, "S T S^4 T S^-1 T S^-4 T").unwrap().eval().unwrap();
    let lib_agrees = lib_matrix(&lib_m) == m && {
        let f = lib_m.field();
        let x = elem(f, &num).checked_div(&elem(f, &den)).unwrap();
        special_report(&lib_m).unwrap().fixed_points.contains(&Point::Finite(x.clone()))
            && x.in_lambda_times_even_subfield().unwrap()
    };
    let all = literal && sqrt_ok && fixed && coset && lib_agrees;
    let render = |a: &P| elem(&lambda_field(18).unwrap(), a).to_string();
    outcome(
        all,
        format!(
            "tr^2 - 4 = 1 + 4l^4: {literal} (actual {}; equals (8l^2)^2 (1 + 4l^4): {scaled}); sqrt identity: {sqrt_ok}; fixes point: {fixed}; point in l*Q(l^2): {coset}; library agrees: {lib_agrees}",
            render(&disc)
        ),
    )
}

fn q20_literal() -> Vec<L> {
    cat(&[vec![L::S(4), L::T, L::S(-4), L::T], rep(&[L::S(-1), L::T], 3)])
}

fn q20_period() -> Vec<L> {
    cat(&[rep(&[L::S(1), L::T], 4), vec![L::S(-4), L::T], rep(&[L::S(-1), L::T], 3)])
}

fn c4_q20() -> Outcome {
    let modulus = minpoly_lambda(20);
    let lit = mrem(&word(&q20_literal()), &modulus);
    let per = mrem(&word(&q20_period()), &modulus);
    let delta = p(&[1, 0, 0, 0, 4, 0, -4, 0, 1]);
    let l2m2sq = pw(&p(&[-2, 0, 1]), 2);
    let disc = |m: &M| sub(&pw(&trace(m), 2), &p(&[4]));
    let norm_lit = congruent(&disc(&lit), &mul(&mul(&p(&[0, 0, 1]), &l2m2sq), &delta), &modulus);
    let norm_per = congruent(&disc(&per), &mul(&mul(&p(&[0, 0, 0, 0, 16]), &l2m2sq), &delta), &modulus);
    let top = add(&sub(&mul(&delta, &delta), &mul(&p(&[29]), &delta)), &p(&[41]));
    let sqrt_with = |k: i64| {
        congruent(&mul(&top, &top), &mul(&delta, &pw(&sub(&mul(&p(&[k]), &delta), &p(&[16])), 2)), &modulus)
    };
    let (sqrt14, sqrt4) = (sqrt_with(14), sqrt_with(4));
    let (num, den) = (p(&[-19, 0, 202, 0, -273, 0, 65]), p(&[0, 8, 0, 40, 0, -68, 0, 18]));
    let (fix_lit, fix_per) = (fixes(&lit, &num, &den, &modulus), fixes(&per, &num, &den, &modulus));

    // H·x = (x + cos π/20)/sin π/20 in the trace field, with a float check of
    // the exact coordinates
    let amb = Ambient::new(20).unwrap();
    let f = lambda_field(20).unwrap();
    let x = elem(&f, &num).checked_div(&elem(&f, &den)).unwrap();
    let hx = match matrix_h(20).unwrap().apply(&Point::Finite(x.embed(&amb.field).unwrap())).unwrap() {
        Point::Finite(y) => y,
        Point::Infinity => unreachable!("sin(pi/20) != 0"),
    };
    let cert = subfield_membership(&hx, &amb.trace_field_generator(), amb.trace_field_degree()).unwrap();
    let h_ok = cert.as_ref().is_some_and(|c| {
        let g = 2.0 * (std::f64::consts::PI / 10.0).cos();
        let value = eval_f64(&trim(c.clone()), g);
        let xf = eval_f64(&num, lambda_f64(20)) / eval_f64(&den, lambda_f64(20));
        let th = std::f64::consts::PI / 20.0;
        (value - (xf + th.cos()) / th.sin()).abs() < FLOAT_TOL
    });
    let all = norm_lit && sqrt14 && fix_lit && h_ok;
    outcome(
        all,
        format!(
            "normalized discriminant = delta: {norm_lit} (period word (S T)^4 S^-4 T (S^-1 T)^3 gives 16l^2 delta: {norm_per}); \
             sqrt with 14d - 16: {sqrt14} (with 4d - 16: {sqrt4}); literal word fixes x: {fix_lit} (period word: {fix_per}); \
             H*x in Q(cos pi/10): {h_ok}"
        ),
    )
}

fn c5_q24() -> Outcome {
    let modulus = minpoly_lambda(24);
    let tsp = [L::T, L::S(1)];
    let tsm = [L::T, L::S(-1)];
    let w = cat(&[rep(&tsp, 4), vec![L::T, L::S(6)], rep(&tsm, 2), vec![L::T, L::S(-5)], rep(&tsp, 2)]);
    let w2 = cat(&[rep(&tsm, 4), vec![L::T, L::S(-6)], rep(&tsp, 2), vec![L::T, L::S(5)], rep(&tsm, 2)]);
    let m = mrem(&mmul(&word(&w), &word(&w2)), &modulus);
    let expected = [
        p(&[-351899, 0, 5540990, 0, -5630280, 0, 1384810]),
        p(&[0, 267120, 0, -4206030, 0, 4273780, 0, -1051090]),
        p(&[0, 216120, 0, -3402520, 0, 3454760, 0, -848800]),
        p(&[-643899, 0, 10138610, 0, -10297720, 0, 2530790]),
    ];
    let entries = m == expected;
    let trf = eval_f64(&trace(&m), lambda_f64(24));
    let lib_m = HeckeWord::parse(24, "(T S)^4 T S^6 (T S^-1)^2 T S^-5 (T S)^2 (T S^-1)^4 T S^-6 (T S)^2 T S^5 (T S^-1)^2")
        .unwrap()
        .eval()
        .unwrap();
    let tr = lib_m.trace();
    let sign = (&tr - &FieldElement::from_int(tr.field(), 2)).sign().unwrap();
    let (num, den) = (p(&[0, -38424, 0, 599662, 0, -527439, 0, 95988]), p(&[-23909, 0, 374995, 0, -338345, 0, 62189]));
    let fixed = fixes(&m, &num, &den, &modulus);
    // √(tr² − 4) = 2c·x − (a − d), cross-multiplied by den
    let root = sub(&mul(&mul(&p(&[2]), &m[2]), &num), &mul(&sub(&m[0], &m[3]), &den));
    let disc = sub(&pw(&trace(&m), 2), &p(&[4]));
    let square = congruent(&mul(&root, &root), &mul(&disc, &mul(&den, &den)), &modulus);
    let report = special_report(&lib_m).unwrap();
    let all = entries && sign == 1 && trf > 2.0 && fixed && square && report.is_special && lib_matrix(&lib_m) == m;
    outcome(
        all,
        format!(
            "entries: {entries}; sign(tr - 2) = {sign} (tr ~ {trf:.1}); fixes point: {fixed}; tr^2 - 4 is a square: {square}; library is_special: {}",
            report.is_special
        ),
    )
}

fn rosen_case(q: u64, x: &P) -> (bool, String) {
    let modulus = minpoly_lambda(q);
    let f = lambda_field(q).unwrap();
    let xe = elem(&f, x);
    let e = expand(&xe, q, 2000).unwrap();
    let digit_word = |ds: &[i64]| word(&ds.iter().flat_map(|&k| [L::S(k), L::T]).collect::<Vec<_>>());
    match e.status {
        ExpansionStatus::EventuallyPeriodic { preperiod_len, period_len } => {
            let pre = digit_word(&e.digits[..preperiod_len]);
            let per = digit_word(&e.digits[preperiod_len..preperiod_len + period_len]);
            let adj = [pre[3].clone(), neg(&pre[1]), neg(&pre[2]), pre[0].clone()];
            let m = mrem(&mmul(&mmul(&pre, &per), &adj), &modulus);
            let fixed = fixes(&m, x, &p(&[1]), &modulus);
            let hyperbolic = eval_f64(&trace(&m), lambda_f64(q)).abs() > 2.0 + FLOAT_TOL;
            let lib = hyperbolic_from_periodic(&e, &xe).map(|w| lib_matrix(&w) == m).unwrap_or(false);
            (
                fixed && hyperbolic && lib,
                format!("periodic (preperiod {preperiod_len}, period {period_len}), hyperbolic witness fixes x: {}", fixed && hyperbolic && lib),
            )
        }
        ExpansionStatus::Finite => {
            // the convergent sends ∞ to a/c, so x ∈ G_q·∞
            let m = mrem(&digit_word(&e.digits), &modulus);
            let hits = congruent(&m[0], &mul(x, &m[2]), &modulus);
            let lib = convergent_matrix(&e.digits, q).map(|w| lib_matrix(&w) == m).unwrap_or(false);
            (false, format!("FINITE ({} digits {:?}); convergent maps inf to x exactly: {}", e.digits.len(), e.digits, hits && lib))
        }
        ExpansionStatus::Undecided { steps } => (false, format!("undecided after {steps} steps")),
    }
}

fn c6_rosen_towse() -> Outcome {
    let cases: [(&str, u64, P); 5] = [
        ("l^2 - 1 (q=7)", 7, p(&[-1, 0, 1])),
        ("2l^2 + 2 (q=9)", 9, p(&[2, 0, 2])),
        ("-(2l^2 + 2) (q=9)", 9, p(&[-2, 0, -2])),
        ("8l + 8 (q=9)", 9, p(&[8, 8])),
        ("-(8l + 8) (q=9)", 9, p(&[-8, -8])),
    ];
    let mut all = true;
    let mut parts = Vec::new();
    for (name, q, x) in &cases {
        let (ok, d) = rosen_case(*q, x);
        all &= ok;
        parts.push(format!("{name}: {d}"));
    }
    outcome(all, parts.join("; "))
}

fn c7_lehmer() -> Outcome {
    let s28 = trig::degree_report(28).unwrap().sin_degree;
    let s36 = trig::degree_report(36).unwrap().sin_degree;
    let mut bad_exact = Vec::new();
    let mut bad_formula = Vec::new();
    for q in (3..=48).filter(|&q| q != 4) {
        if !trig::verify_degrees_exact(q).unwrap() {
            bad_exact.push(q);
        }
        let rep = trig::degree_report(q).unwrap();
        let g = gcd(4 * q, q.abs_diff(4));
        if rep.cos_degree != phi(q) / 2 || rep.sin_degree != phi(4 * q / g) / 2 {
            bad_formula.push(q);
        }
    }
    let bad_gcd: Vec<u64> = (3..=10000).filter(|&q| trig::gcd_case(q).unwrap() != gcd(4 * q, q.abs_diff(4))).collect();
    let all = s28 == 3 && s36 == 3 && bad_exact.is_empty() && bad_formula.is_empty() && bad_gcd.is_empty();
    outcome(
        all,
        format!(
            "sin degree q=28: {s28}, q=36: {s36}; exact degree failures {bad_exact:?}; totient mismatches {bad_formula:?}; gcd mismatches up to 10000: {}",
            bad_gcd.len()
        ),
    )
}

fn c8_normalization() -> Outcome {
    let mut count = 0;
    let mut bad = Vec::new();
    for q in 3..=12u64 {
        for a in 1..q {
            for b in 1..q - a {
                let c = q - a - b;
                if gcd(gcd(a, b), c) != 1 {
                    continue;
                }
                count += 1;
                let s = normalize(a, b, c).unwrap();
                let rep = check_linear_normalization(&s).unwrap();
                // re-evaluate each certificate numerically against the vertex
                let g = 2.0 * (2.0 * std::f64::consts::PI / q as f64).cos();
                let numeric = rep.certificates.iter().all(|cert| {
                    let (re, im) = s.polygons()[cert.polygon][cert.vertex].to_complex_f64();
                    let at = |v: &Option<Vec<BigRational>>| v.as_ref().map(|v| eval_f64(&trim(v.clone()), g));
                    matches!((at(&cert.re), at(&cert.im)), (Some(x), Some(y)) if (x - re).abs() < FLOAT_TOL && (y - im).abs() < FLOAT_TOL)
                });
                if !(rep.vertex_field_ok && rep.edge_slope_field_ok && numeric && rep.reverify(&s).unwrap()) {
                    bad.push((a, b, c));
                }
            }
        }
    }
    // without N, X(1,1,3) has the vertex ζ_5 with Im = sin(2π/5); sin²(2π/5)
    // = (5 + √5)/8 has norm 5/16, not a rational square, so sin(2π/5) ∉ ℚ(√5)
    let x = unfold_triangle(1, 1, 3).unwrap();
    let t = 2.0 * std::f64::consts::PI / 5.0;
    let has_zeta5 = x.polygons().iter().flatten().any(|z| {
        let (re, im) = z.to_complex_f64();
        (re - t.cos()).abs() < FLOAT_TOL && (im - t.sin()).abs() < FLOAT_TOL
    });
    let norm = BigRational::new(5.into(), 16.into());
    let norm_square = {
        let (n, d) = (norm.numer().sqrt(), norm.denom().sqrt());
        &n * &n == *norm.numer() && &d * &d == *norm.denom()
    };
    let negative = !check_linear_normalization(&x).unwrap().vertex_field_ok;
    let all = bad.is_empty() && has_zeta5 && !norm_square && negative;
    outcome(
        all,
        format!("{count} coprime triples, failures {bad:?}; X(1,1,3) without N fails: {negative} (vertex zeta_5 present: {has_zeta5})"),
    )
}

/// Exact finite-order test on interval midpoints: every orbit returns.
fn periodic(t: &Iet, max: usize) -> bool {
    let starts = t.starts();
    let two = FieldElement::from_int(t.field(), 2);
    t.lengths().iter().zip(&starts).all(|(l, s)| {
        let mid = s + &l.checked_div(&two).unwrap();
        let mut y = t.apply(&mid).unwrap();
        for _ in 0..max {
            if y == mid {
                return true;
            }
            y = t.apply(&y).unwrap();
        }
        false
    })
}

fn c9_saf() -> Outcome {
    let mut rng = random::rng(DEFAULT_SEED);
    let f7 = lambda_field(7).unwrap();
    let mut hom_ok = 0;
    for i in 0..100 {
        let f = random::iet(&mut rng, &f7, 2 + i % 4).unwrap();
        let g = random::iet_with_total(&mut rng, &f.total_length(), 2 + (i / 4) % 4).unwrap();
        let fg = compose(&f, &g).unwrap();
        // pointwise: (f∘g)(x) = f(g(x)) on every piece of the composite
        let two = FieldElement::from_int(&f7, 2);
        let pointwise = fg.lengths().iter().zip(fg.starts()).all(|(l, s)| {
            let x = &s + &l.checked_div(&two).unwrap();
            fg.apply(&x).unwrap() == f.apply(&g.apply(&x).unwrap()).unwrap()
        });
        let mut sum = iet_saf_oracle(&f);
        for (k, v) in iet_saf_oracle(&g) {
            *sum.entry(k).or_insert_with(BigRational::zero) += v;
        }
        sum.retain(|_, c| !c.is_zero());
        let oracle = iet_saf_oracle(&fg) == sum;
        let lib = saf_invariant(&fg).unwrap() == saf_invariant(&f).unwrap().add(&saf_invariant(&g).unwrap())
            && same_wedge(&saf_invariant(&fg).unwrap(), &iet_saf_oracle(&fg));
        if pointwise && oracle && lib {
            hom_ok += 1;
        }
    }

    let mut rational_ok = true;
    for n in 1..=6 {
        let f = lambda_field(7).unwrap();
        let lengths = (0..n).map(|i| FieldElement::from_int(&f, 1 + (3 * i as i64 + 2) % 7)).collect();
        let t = Iet::new(lengths, (0..n).rev().collect()).unwrap();
        rational_ok &= saf_invariant(&t).unwrap().is_zero() && iet_saf_oracle(&t).is_empty();
        rational_ok &= translations(&t).iter().all(|x| x.is_rational());
    }

    let y = normalize(1, 1, 3).unwrap();
    let g5 = FieldElement::generator(&veechsaf::exactfield::make_real_cos_field(5).unwrap());
    let one = FieldElement::one(g5.field());
    let slopes = [
        FieldElement::zero(g5.field()),
        one.clone(),
        g5.clone(),
        -&g5,
        &one + &g5,
    ];
    let mut dir_ok = 0;
    for s in &slopes {
        let fr = first_return_iet(&y, &Direction::slope(s.clone()).unwrap()).unwrap();
        let zero_lib = saf_invariant(&fr.iet).unwrap().is_zero();
        let zero_oracle = iet_saf_oracle(&fr.iet).is_empty();
        if zero_lib && zero_oracle && periodic(&fr.iet, 5000) {
            dir_ok += 1;
        }
    }
    let all = hom_ok == 100 && rational_ok && dir_ok == slopes.len();
    outcome(
        all,
        format!(
            "homomorphism {hom_ok}/100 (pointwise composite and independent wedge sums); rational IETs zero: {rational_ok}; \
             trace-field slopes on N*X(1,1,3) with zero SAF and periodic return map: {dir_ok}/{}",
            slopes.len()
        ),
    )
}

fn c10_relations() -> Outcome {
    let mut bad_ts = Vec::new();
    for q in 3..=24u64 {
        let modulus = minpoly_lambda(q);
        let m = mrem(&word(&rep(&[L::T, L::S(1)], q as usize)), &modulus);
        let oracle = m == [p(&[-1]), p(&[]), p(&[]), p(&[-1])];
        let (s, t) = generators(q).unwrap();
        let lib = t.mul(&s).pow(q as i64).neg().is_identity();
        if !(oracle && lib) {
            bad_ts.push(q);
        }
    }
    let mut rng = random::rng(DEFAULT_SEED ^ 10);
    let mut parity_ok = 0;
    let mut total = 0;
    for q in [8u64, 10, 12, 14] {
        let modulus = minpoly_lambda(q);
        for _ in 0..500 {
            total += 1;
            let w = random::word(&mut rng, q, 6);
            let m = mrem(&from_library_word(&w), &modulus);
            let col = |x: &P, y: &P| (only_even(x) && only_odd(y)) || (only_odd(x) && only_even(y));
            let oracle = col(&m[0], &m[2]) && col(&m[1], &m[3]);
            let g = w.eval().unwrap();
            let lib = leutbecher_parity_check(&g).unwrap() && lib_matrix(&g) == m;
            if oracle && lib {
                parity_ok += 1;
            }
        }
    }
    outcome(bad_ts.is_empty() && parity_ok == total, format!("(TS)^q = -I failures {bad_ts:?}; parity {parity_ok}/{total}"))
}

fn c11_search() -> Outcome {
    let modulus = minpoly_lambda(14);
    let target = rem(&trace(&word(&Q14)), &modulus);
    let hits = search_special(14, 8, 1).unwrap();
    let mut verified = 0;
    let mut matching = 0;
    for h in &hits {
        let m = mrem(&from_library_word(&h.word), &modulus);
        let fixed = h.report.fixed_points.iter().filter_map(Point::finite).all(|x| fixes(&m, &coeffs(x), &p(&[1]), &modulus));
        if h.report.is_special && fixed && !h.report.fixed_points.is_empty() {
            verified += 1;
        }
        if trace(&m) == target {
            matching += 1;
        }
    }
    outcome(
        matching >= 1 && verified == hits.len(),
        format!("{} hit(s), {verified} with field fixed points verified, {matching} with trace l^4 + 2", hits.len()),
    )
}

/// Parts of a documented FAIL that must still come out as stated.
fn documented_failure(n: usize, d: &str) -> bool {
    match n {
        3 => {
            d.contains("1 + 4l^4: false")
                && d.ends_with(
                    "equals (8l^2)^2 (1 + 4l^4): true); sqrt identity: true; fixes point: true; point in l*Q(l^2): true; library agrees: true",
                )
        }
        4 => {
            d.contains("delta: false (period word (S T)^4 S^-4 T (S^-1 T)^3 gives 16l^2 delta: true)")
                && d.contains("14d - 16: false (with 4d - 16: true)")
                && d.contains("literal word fixes x: false (period word: true)")
                && d.ends_with("H*x in Q(cos pi/10): true")
        }
        6 => {
            d.matches("hyperbolic witness fixes x: true").count() == 3
                && d.matches("convergent maps inf to x exactly: true").count() == 2
        }
        _ => false,
    }
}

fn main() {
    // (criterion, expected to pass, check)
    let criteria: [(usize, &str, bool, fn() -> Outcome); 11] = [
        (1, "q=14 word evaluation", true, c1_q14_word),
        (2, "q=14 congruence", true, c2_q14_congruence),
        (3, "q=18 special hyperbolic", false, c3_q18),
        (4, "q=20 special hyperbolic", false, c4_q20),
        (5, "q=24 special hyperbolic", true, c5_q24),
        (6, "Rosen-Towse periodic expansions", false, c6_rosen_towse),
        (7, "degree table", true, c7_lehmer),
        (8, "linear normalization", true, c8_normalization),
        (9, "SAF properties", true, c9_saf),
        (10, "group relations", true, c10_relations),
        (11, "search rediscovery", true, c11_search),
    ];
    let mut unexpected = Vec::new();
    for (n, name, expected, check) in criteria {
        let start = Instant::now();
        let o = check();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {n:>2} {status} {name} [{} ms]: {}", start.elapsed().as_millis(), o.detail);
        if o.pass != expected || (!expected && !documented_failure(n, &o.detail)) {
            unexpected.push(n);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: 8 PASS, 3 FAIL; every FAIL is a documented discrepancy whose corrected form verifies");
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
