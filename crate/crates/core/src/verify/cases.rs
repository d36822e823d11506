use super::{ensure, mismatch, random, FnCase, Outcome, Registry, RunContext, VerificationCase};
use crate::arith::gcd;
use crate::exactfield::{make_real_cos_field, verify_sqrt, FieldElement};
use crate::hecke::{
    generators, leutbecher_parity_check, search_special, special_report, CuspPattern, GroupMatrix, HeckeWord,
    MatrixClass,
};
use crate::matrix::{Matrix2, Point};
use crate::parse::{parse_element, parse_lambda};
use crate::poly::IntPoly;
use crate::rosen::{expand, hyperbolic_from_periodic, ExpansionStatus, DEFAULT_BUDGET};
use crate::saf::{compose, inverse, saf_invariant, saf_of_direction, Direction};
use crate::surfaces::{
    check_linear_normalization, matrix_h, matrix_n, matrix_nh, normalize, unfold_triangle, veech_double_polygon,
    Ambient,
};
use crate::trig;

const Q14_WORD: &str = "S T S^-1 T S^-1 T S T";
const Q18_WORD: &str = "S T S^4 T S^-1 T S^-4 T";
const Q18_POINT: &str = "(7l^4 - 17l^2 + 12)/(2l(l^4 - 8))";
const Q20_WORD: &str = "S^4 T S^-4 T (S^-1 T)^3";
/// The period of the Rosen expansion of the q=20 point.
const Q20_PERIOD_WORD: &str = "(S T)^4 S^-4 T (S^-1 T)^3";
const Q20_DELTA: &str = "1 + 4l^4 - 4l^6 + l^8";
const Q20_POINT: &str = "(-19 + 202l^2 - 273l^4 + 65l^6)/(l(8 + 40l^2 - 68l^4 + 18l^6))";
const Q24_W: &str = "(T S)^4 T S^6 (T S^-1)^2 T S^-5 (T S)^2";
const Q24_W2: &str = "(T S^-1)^4 T S^-6 (T S)^2 T S^5 (T S^-1)^2";
const Q24_ENTRIES: [&str; 4] = [
    "-351899 + 5540990l^2 - 5630280l^4 + 1384810l^6",
    "267120l - 4206030l^3 + 4273780l^5 - 1051090l^7",
    "216120l - 3402520l^3 + 3454760l^5 - 848800l^7",
    "-643899 + 10138610l^2 - 10297720l^4 + 2530790l^6",
];
const Q24_POINT: &str =
    "(-38424l + 599662l^3 - 527439l^5 + 95988l^7)/(-23909 + 374995l^2 - 338345l^4 + 62189l^6)";

fn word(q: u64, src: &str) -> Result<GroupMatrix, super::Failure> {
    Ok(HeckeWord::parse(q, src)?.eval()?)
}

fn el(src: &str, q: u64) -> Result<FieldElement, super::Failure> {
    Ok(parse_lambda(src, q)?)
}

/// `δ ↦ expr(δ)` over the field of `delta`.
fn in_delta(expr: &str, delta: &FieldElement) -> Result<FieldElement, super::Failure> {
    Ok(parse_element(expr, delta.field(), &[("d", delta.clone())])?)
}

fn fixes(m: &Matrix2, x: &FieldElement) -> Result<bool, super::Failure> {
    let p = Point::Finite(x.clone());
    Ok(m.apply(&p)? == p)
}

/// Membership of the Möbius image `A·x` in `ℚ(cos 2π/q)`, for `x ∈ ℚ(λ_q)`.
fn image_in_trace_field(a: &Matrix2, x: &FieldElement, q: u64) -> Result<bool, super::Failure> {
    let amb = Ambient::new(q)?;
    let y = match a.apply(&Point::Finite(x.embed(&amb.field)?))? {
        Point::Finite(y) => y,
        Point::Infinity => return Ok(true),
    };
    Ok(crate::exactfield::subfield_membership(&y, &amb.trace_field_generator(), amb.trace_field_degree())?.is_some())
}

fn q14_eval(_: &RunContext) -> Outcome {
    let m = word(14, Q14_WORD)?;
    let f = m.field().clone();
    let expected = Matrix2::new(el("l^4 + l^2 + 1", 14)?, el("-l^3", 14)?, el("l^3", 14)?, el("1 - l^2", 14)?)?;
    ensure(expected.field() == &f && *m.matrix() == expected, || format!("got {m}, expected {expected}"))
}

fn q14_congruence(_: &RunContext) -> Outcome {
    let p = IntPoly::from_i64(&[-7, 0, 14, 0, -7, 0, 1]);
    let x4m25 = IntPoly::from_i64(&[-25, 0, 0, 0, 1]);
    let x4p4 = IntPoly::from_i64(&[4, 0, 0, 0, 1]);
    let x4m12 = IntPoly::from_i64(&[-12, 0, 0, 0, 1]);
    let lhs = x4m25.mul(&x4m25);
    let rhs = x4p4.mul(&x4m12).mul(&x4m12);
    let r = lhs.sub(&rhs).rem_monic(&p);
    ensure(r.is_zero(), || format!("remainder {r:?}"))
}

fn q14_special(_: &RunContext) -> Outcome {
    let m = word(14, Q14_WORD)?;
    let r = special_report(&m)?;
    ensure(r.class == MatrixClass::Hyperbolic && r.is_special, || format!("class {:?}, special {}", r.class, r.is_special))?;
    ensure(r.cusp_pattern == Some(CuspPattern::InLambdaTimesEvenSubfield), || {
        format!("cusp pattern {:?}", r.cusp_pattern)
    })?;
    // x = (λ²+2 ± √(λ⁴+4))/(2λ) with √(λ⁴+4) = (λ⁴−25)/(λ⁴−12)
    let s = el("(l^4 - 25)/(l^4 - 12)", 14)?;
    ensure(s.square() == el("l^4 + 4", 14)?, || format!("{s} does not square to l^4 + 4"))?;
    for sign in ["+", "-"] {
        let x = el(&format!("(l^2 + 2 {sign} (l^4 - 25)/(l^4 - 12))/(2l)"), 14)?;
        ensure(fixes(&m, &x)?, || format!("M does not fix {x}"))?;
    }
    Ok(())
}

fn q14_h_field(_: &RunContext) -> Outcome {
    let m = word(14, Q14_WORD)?;
    let r = special_report(&m)?;
    let h = matrix_h(14)?;
    for p in r.fixed_points.iter().filter_map(Point::finite) {
        ensure(image_in_trace_field(&h, p, 14)?, || {
            format!("H·x is not in Q(cos pi/7) for the fixed point x = {p}")
        })?;
    }
    Ok(())
}

fn q14_nh_field(_: &RunContext) -> Outcome {
    let m = word(14, Q14_WORD)?;
    let r = special_report(&m)?;
    let nh = matrix_nh(14)?;
    for p in r.fixed_points.iter().filter_map(Point::finite) {
        ensure(image_in_trace_field(&nh, p, 14)?, || format!("N·H·x is not in Q(cos pi/7) for x = {p}"))?;
    }
    Ok(())
}

fn q18_delta(_: &RunContext) -> Outcome {
    let m = word(18, Q18_WORD)?;
    let tr = m.trace();
    let delta = &tr.square() - &FieldElement::from_int(tr.field(), 4);
    let claimed = el("1 + 4l^4", 18)?;
    let scaled = &el("(8l^2)^2", 18)? * &claimed;
    ensure(delta == claimed, || {
        format!("tr^2 - 4 = {delta}, not {claimed}; it equals (8l^2)^2 (1 + 4l^4): {}", delta == scaled)
    })
}

fn q18_sqrt(_: &RunContext) -> Outcome {
    let d = el("1 + 4l^4", 18)?;
    let s = in_delta("(3d + 37)/(d - 33)", &d)?;
    ensure(verify_sqrt(&d, &s)?, || format!("({s})^2 != {d}"))
}

fn q18_fixed_point(_: &RunContext) -> Outcome {
    let m = word(18, Q18_WORD)?;
    let x = el(Q18_POINT, 18)?;
    ensure(fixes(&m, &x)?, || format!("M·x != x for x = {x}"))?;
    ensure(x.in_lambda_times_even_subfield()?, || format!("{x} is not in l·Q(l^2)"))
}

fn q18_special(_: &RunContext) -> Outcome {
    let r = special_report(&word(18, Q18_WORD)?)?;
    ensure(r.is_special && r.cusp_pattern == Some(CuspPattern::InLambdaTimesEvenSubfield), || {
        format!("special {}, cusp pattern {:?}", r.is_special, r.cusp_pattern)
    })
}

/// `(tr² − 4)/(λ²(λ² − 2)²)`
fn q20_normalized_delta(m: &GroupMatrix) -> Result<FieldElement, super::Failure> {
    let tr = m.trace();
    let num = &tr.square() - &FieldElement::from_int(tr.field(), 4);
    Ok(num.checked_div(&el("l^2 (l^2 - 2)^2", 20)?)?)
}

fn q20_delta(_: &RunContext) -> Outcome {
    let claimed = el(Q20_DELTA, 20)?;
    let lit = q20_normalized_delta(&word(20, Q20_WORD)?)?;
    let per = q20_normalized_delta(&word(20, Q20_PERIOD_WORD)?)?;
    ensure(lit == claimed, || {
        format!(
            "for {Q20_WORD}: value {lit}; for {Q20_PERIOD_WORD}: value equals 16l^2·({Q20_DELTA}): {}",
            per == &el("16l^2", 20).unwrap() * &claimed
        )
    })
}

fn q20_sqrt(_: &RunContext) -> Outcome {
    let d = el(Q20_DELTA, 20)?;
    let s = in_delta("(d^2 - 29d + 41)/(14d - 16)", &d)?;
    let fixed = in_delta("(d^2 - 29d + 41)/(4d - 16)", &d)?;
    ensure(verify_sqrt(&d, &s)?, || {
        format!(
            "((d^2 - 29d + 41)/(14d - 16))^2 != d; with denominator 4d - 16 the square root verifies: {}",
            verify_sqrt(&d, &fixed).unwrap_or(false)
        )
    })
}

fn q20_fixed_point(_: &RunContext) -> Outcome {
    let x = el(Q20_POINT, 20)?;
    let m = word(20, Q20_WORD)?;
    ensure(fixes(&m, &x)?, || {
        let per = word(20, Q20_PERIOD_WORD).ok();
        let ok = per.map(|p| fixes(&p, &x).unwrap_or(false)).unwrap_or(false);
        format!("{Q20_WORD} does not fix x; {Q20_PERIOD_WORD} fixes x: {ok}")
    })
}

fn q20_period_word(_: &RunContext) -> Outcome {
    let x = el(Q20_POINT, 20)?;
    let e = expand(&x, 20, DEFAULT_BUDGET)?;
    let m = word(20, Q20_PERIOD_WORD)?;
    ensure(
        e.status == (ExpansionStatus::EventuallyPeriodic { preperiod_len: 0, period_len: 8 })
            && e.digits == [1, 1, 1, 1, -4, -1, -1, -1],
        || format!("expansion {:?} with digits {:?}", e.status, e.digits),
    )?;
    ensure(fixes(&m, &x)?, || "period word does not fix x".into())?;
    let r = special_report(&m)?;
    ensure(r.is_special, || "period word is not special".into())?;
    // (tr² − 4) = (4λ²(λ² − 2))² δ
    let tr = m.trace();
    let lhs = &tr.square() - &FieldElement::from_int(tr.field(), 4);
    let rhs = &el("(4l^2(l^2 - 2))^2", 20)? * &el(Q20_DELTA, 20)?;
    ensure(lhs == rhs, || format!("tr^2 - 4 = {lhs}"))
}

fn q20_h_field(_: &RunContext) -> Outcome {
    let x = el(Q20_POINT, 20)?;
    ensure(image_in_trace_field(&matrix_h(20)?, &x, 20)?, || "H·x is not in Q(cos pi/10)".into())
}

fn q24_matrix() -> Result<GroupMatrix, super::Failure> {
    Ok(HeckeWord::parse(24, Q24_W)?.concat(&HeckeWord::parse(24, Q24_W2)?).eval()?)
}

fn q24_entries(_: &RunContext) -> Outcome {
    let m = q24_matrix()?;
    for (got, src) in m.entries().into_iter().zip(Q24_ENTRIES) {
        ensure(*got == el(src, 24)?, || format!("entry {got} != {src}"))?;
    }
    Ok(())
}

fn q24_special(_: &RunContext) -> Outcome {
    let m = q24_matrix()?;
    let tr = m.trace();
    let s = (&tr - &FieldElement::from_int(tr.field(), 2)).sign()?;
    ensure(s == 1, || format!("sign(tr - 2) = {s}"))?;
    let x = el(Q24_POINT, 24)?;
    ensure(fixes(&m, &x)?, || format!("M does not fix {x}"))?;
    let r = special_report(&m)?;
    ensure(r.is_special, || "not special".into())
}

fn q24_rosen(_: &RunContext) -> Outcome {
    let x = el("(2l^2 + 13)/(l + l^3)", 24)?;
    let e = expand(&x, 24, DEFAULT_BUDGET)?;
    let ExpansionStatus::EventuallyPeriodic { .. } = e.status else {
        return Err(mismatch(format!("expansion status {:?}", e.status)));
    };
    let h = hyperbolic_from_periodic(&e, &x)?;
    let m = q24_matrix()?;
    ensure(h.trace() == m.trace() || h.trace() == -m.trace(), || {
        format!("period trace {} differs from tr(M) = {}", h.trace(), m.trace())
    })
}

/// Rosen expansion of an element expected to be eventually periodic.
struct RosenCase {
    id: String,
    q: u64,
    expr: String,
}

impl VerificationCase for RosenCase {
    fn id(&self) -> &str {
        &self.id
    }

    fn run(&self, _: &RunContext) -> Outcome {
        let x = el(&self.expr, self.q)?;
        let e = expand(&x, self.q, DEFAULT_BUDGET)?;
        match e.status {
            ExpansionStatus::EventuallyPeriodic { .. } => {
                let m = hyperbolic_from_periodic(&e, &x)?;
                ensure(fixes(&m, &x)?, || "witness does not fix x".into())
            }
            ExpansionStatus::Finite => {
                let w = crate::rosen::convergent_matrix(&e.digits, self.q)?;
                let hits = w.apply(&Point::Infinity)? == Point::Finite(x.clone());
                Err(mismatch(format!(
                    "finite expansion {:?} ({} digits); its convergent maps infinity to x exactly: {hits}",
                    e.digits,
                    e.digits.len()
                )))
            }
            ExpansionStatus::Undecided { steps } => Err(mismatch(format!("undecided after {steps} steps"))),
        }
    }
}

/// `[ℚ(sin 2π/q) : ℚ] = 3`, by formula and exactly.
struct LehmerSinDegree {
    id: String,
    q: u64,
}

impl VerificationCase for LehmerSinDegree {
    fn id(&self) -> &str {
        &self.id
    }

    fn run(&self, _: &RunContext) -> Outcome {
        let r = trig::degree_report(self.q)?;
        ensure(r.sin_degree == 3, || format!("sin degree {}", r.sin_degree))?;
        ensure(trig::verify_degrees_exact(self.q)?, || "exact degree check failed".into())
    }
}

fn lehmer_degrees(_: &RunContext) -> Outcome {
    for q in (3..=48).filter(|&q| q != 4) {
        ensure(trig::verify_degrees_exact(q)?, || format!("q = {q}"))?;
    }
    Ok(())
}

fn lehmer_gcd(_: &RunContext) -> Outcome {
    for q in 3..=10000 {
        let (a, b) = (trig::gcd_case(q)?, gcd(4 * q, q.abs_diff(4)));
        ensure(a == b, || format!("q = {q}: case value {a}, gcd {b}"))?;
    }
    Ok(())
}

fn lehmer_ratios(_: &RunContext) -> Outcome {
    for q in (3..=200).filter(|&q| q != 4) {
        let r = trig::degree_report(q)?;
        let ok = if q % 8 == 0 {
            r.sin_degree == r.cos_degree
        } else if q % 4 == 0 {
            2 * r.sin_degree == r.cos_degree
        } else {
            r.sin_degree == 2 * r.cos_degree
        };
        ensure(ok, || format!("q = {q}: {r:?}"))?;
    }
    Ok(())
}

fn lehmer_half_angle(_: &RunContext) -> Outcome {
    for q in 3..=48 {
        ensure(trig::verify_cos_half_angle(q)?, || format!("q = {q}"))?;
    }
    Ok(())
}

fn lehmer_tangent(_: &RunContext) -> Outcome {
    for q in [4, 8, 12, 16, 20, 24] {
        ensure(trig::verify_tan_square_degree(q)?, || format!("q = {q}"))?;
    }
    Ok(())
}

fn lehmer_chebyshev(_: &RunContext) -> Outcome {
    for q in [5, 7, 9, 12] {
        for n in 0..8 {
            ensure(trig::verify_chebyshev_identity(n, q)?, || format!("n = {n}, q = {q}"))?;
        }
    }
    Ok(())
}

fn normalization_triples(_: &RunContext) -> Outcome {
    for q in 3..=12u64 {
        for a in 1..q {
            for b in 1..q - a {
                let c = q - a - b;
                if gcd(gcd(a, b), c) != 1 {
                    continue;
                }
                let s = normalize(a, b, c)?;
                let r = check_linear_normalization(&s)?;
                ensure(r.vertex_field_ok && r.edge_slope_field_ok, || format!("({a}, {b}, {c})"))?;
            }
        }
    }
    Ok(())
}

fn normalization_negative(_: &RunContext) -> Outcome {
    let r = check_linear_normalization(&unfold_triangle(1, 1, 3)?)?;
    ensure(!r.vertex_field_ok, || "X(1,1,3) already has all vertices in the trace field".into())
}

fn normalization_nh(_: &RunContext) -> Outcome {
    for q in 5..=24 {
        ensure(matrix_n(q)?.mul(&matrix_h(q)?) == matrix_nh(q)?, || format!("q = {q}"))?;
    }
    Ok(())
}

/// `H⁻¹·V_q` for odd `q`: the surface with Veech group `G_q`.
fn normalization_hq(_: &RunContext) -> Outcome {
    for q in [5, 7, 9, 11] {
        let s = veech_double_polygon(q)?.apply_matrix(&matrix_h(q)?.inverse()?)?;
        let r = check_linear_normalization(&s)?;
        ensure(r.vertex_field_ok, || format!("q = {q}"))?;
    }
    Ok(())
}

fn saf_homomorphism(ctx: &RunContext) -> Outcome {
    let mut rng = random::rng(ctx.seed);
    let f7 = crate::hecke::lambda_field(7)?;
    for i in 0..100 {
        let n = 2 + i % 4;
        let f = random::iet(&mut rng, &f7, n)?;
        let g = random::iet_with_total(&mut rng, &f.total_length(), 2 + (i / 4) % 4)?;
        let lhs = saf_invariant(&compose(&f, &g)?)?;
        let rhs = saf_invariant(&f)?.add(&saf_invariant(&g)?);
        ensure(lhs == rhs, || format!("pair {i}: f = {f}, g = {g}"))?;
        ensure(saf_invariant(&inverse(&f))? == saf_invariant(&f)?.neg(), || format!("inverse of {f}"))?;
    }
    Ok(())
}

fn saf_rational(ctx: &RunContext) -> Outcome {
    let mut rng = random::rng(ctx.seed ^ 1);
    let f = make_real_cos_field(14)?;
    for _ in 0..50 {
        let n = rand::Rng::gen_range(&mut rng, 1..=6);
        let lengths: Vec<FieldElement> =
            (0..n).map(|_| FieldElement::from_int(&f, rand::Rng::gen_range(&mut rng, 1..=20))).collect();
        let mut perm: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
        let t = crate::saf::Iet::new(lengths, perm)?;
        ensure(saf_invariant(&t)?.is_zero(), || format!("{t}"))?;
    }
    Ok(())
}

fn saf_direction_q5(_: &RunContext) -> Outcome {
    let y = normalize(1, 1, 3)?;
    let f = make_real_cos_field(5)?;
    let g = FieldElement::generator(&f);
    for s in ["0", "1", "g", "2g - 1/3", "(1 + g)/(3 - g)"] {
        let slope = parse_element(s, &f, &[("g", g.clone())])?;
        let w = saf_of_direction(&y, &Direction::slope(slope)?)?;
        ensure(w.is_zero(), || format!("slope {s}: SAF = {w}"))?;
    }
    Ok(())
}

fn saf_octagon(_: &RunContext) -> Outcome {
    let s = crate::surfaces::regular_polygon_surface(8)?;
    let f = make_real_cos_field(32)?;
    let w = saf_of_direction(&s, &Direction::slope(FieldElement::zero(&f))?)?;
    ensure(w.is_zero(), || format!("SAF = {w}"))
}

fn relations_ts(_: &RunContext) -> Outcome {
    for q in 3..=24 {
        let (s, t) = generators(q)?;
        let p = t.mul(&s).pow(q as i64);
        ensure(p.neg().is_identity(), || format!("q = {q}: (TS)^q = {p}"))?;
    }
    Ok(())
}

fn relations_parity(ctx: &RunContext) -> Outcome {
    let mut rng = random::rng(ctx.seed ^ 2);
    for q in [8, 10, 12, 14] {
        for _ in 0..500 {
            let w = random::word(&mut rng, q, 6);
            ensure(leutbecher_parity_check(&w.eval()?)?, || format!("q = {q}, word {w}"))?;
        }
    }
    Ok(())
}

fn search_q14(_: &RunContext) -> Outcome {
    let target = word(14, Q14_WORD)?.trace();
    let hits = search_special(14, 8, 1)?;
    ensure(hits.iter().any(|h| h.report.trace == target), || {
        format!("{} hits, none with trace {target}", hits.len())
    })
}

pub fn register_all(r: &mut Registry) {
    let fns: [(&'static str, fn(&RunContext) -> Outcome); 34] = [
        ("q14-eval", q14_eval),
        ("q14-congruence", q14_congruence),
        ("q14-special", q14_special),
        ("q14-h-field", q14_h_field),
        ("q14-nh-field", q14_nh_field),
        ("q18-delta", q18_delta),
        ("q18-sqrt", q18_sqrt),
        ("q18-fixed-point", q18_fixed_point),
        ("q18-special", q18_special),
        ("q20-delta", q20_delta),
        ("q20-sqrt", q20_sqrt),
        ("q20-fixed-point", q20_fixed_point),
        ("q20-period-word", q20_period_word),
        ("q20-h-field", q20_h_field),
        ("q24-entries", q24_entries),
        ("q24-special", q24_special),
        ("q24-rosen", q24_rosen),
        ("lehmer-degrees", lehmer_degrees),
        ("lehmer-gcd", lehmer_gcd),
        ("lehmer-ratios", lehmer_ratios),
        ("lehmer-half-angle", lehmer_half_angle),
        ("lehmer-tangent", lehmer_tangent),
        ("lehmer-chebyshev", lehmer_chebyshev),
        ("normalization-triples", normalization_triples),
        ("normalization-negative", normalization_negative),
        ("normalization-nh", normalization_nh),
        ("normalization-hq", normalization_hq),
        ("saf-homomorphism", saf_homomorphism),
        ("saf-rational", saf_rational),
        ("saf-direction-q5", saf_direction_q5),
        ("saf-octagon", saf_octagon),
        ("relations-ts", relations_ts),
        ("relations-parity", relations_parity),
        ("search-q14", search_q14),
    ];
    for (id, f) in fns {
        r.register(Box::new(FnCase { id, f }));
    }
    for q in [28, 36] {
        r.register(Box::new(LehmerSinDegree { id: format!("lehmer-{q}"), q }));
    }
    r.register(Box::new(RosenCase { id: "rosen-towse-q7".into(), q: 7, expr: "l^2 - 1".into() }));
    for (sign, tag) in [("", "plus"), ("-", "minus")] {
        for (name, body) in [("2l2", "2l^2 + 2"), ("8l", "8l + 8")] {
            r.register(Box::new(RosenCase {
                id: format!("rosen-towse-q9-{name}-{tag}"),
                q: 9,
                expr: format!("{sign}({body})"),
            }));
        }
    }
}
