use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::{json, Value};

use veechsaf::exactfield::{cyclotomic_polynomial, ElementJson, FieldElement};
use veechsaf::hecke::{classify, leutbecher_parity_check, search_special, special_report, GroupMatrix, HeckeWord};
use veechsaf::matrix::Point;
use veechsaf::parse::{parse_lambda, split_list};
use veechsaf::poly::{real_cos_minpoly, IntPoly};
use veechsaf::rosen::{self, ExpansionStatus, OrbitVerdict};
use veechsaf::saf::{first_return_iet, saf_invariant, translations, Direction, Iet};
use veechsaf::surfaces::{check_linear_normalization, normalize, unfold_triangle, PolygonalSurface, SurfaceJson};
use veechsaf::trig;
use veechsaf::verify::{Registry, RunContext, DEFAULT_SEED};

/// `println!` that exits quietly once stdout is closed.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if writeln!(std::io::stdout(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

#[derive(Parser)]
#[command(name = "veechsaf", version, about = "Exact computations for Hecke groups, Rosen fractions, Veech surfaces and SAF invariants")]
struct Cli {
    /// Also print decimal approximations with this many digits
    /// (non-normative; every decision is exact).
    #[arg(long, global = true, value_name = "DIGITS")]
    approx: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Minimal polynomial of 2cos(pi/N), 2cos(2pi/N), or the cyclotomic polynomial.
    Minpoly(MinpolyArgs),
    /// Words in the Hecke group G_q: evaluation, classification, search.
    #[command(subcommand)]
    Hecke(HeckeCmd),
    /// Rosen continued fractions and cusp-orbit tests.
    #[command(subcommand)]
    Rosen(RosenCmd),
    /// Triangle unfoldings and the linear normalization check.
    #[command(subcommand)]
    Surface(SurfaceCmd),
    /// Interval exchanges and SAF invariants of flow directions.
    #[command(subcommand)]
    Saf(SafCmd),
    /// Degrees of cos and sin of pi/q over the rationals.
    #[command(subcommand)]
    Trig(TrigCmd),
    /// Replay the built-in verification cases and print a JSON report.
    VerifyPaper {
        /// Only run cases whose id starts with this prefix.
        #[arg(long)]
        filter: Option<String>,
        /// List case ids instead of running them.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Args)]
#[group(skip)]
#[command(group(ArgGroup::new("which").required(true).args(["cos_pi_over", "cos_2pi_over", "cyclotomic"])))]
struct MinpolyArgs {
    #[arg(long, value_name = "N")]
    cos_pi_over: Option<u64>,
    #[arg(long = "cos-2pi-over", value_name = "N")]
    cos_2pi_over: Option<u64>,
    #[arg(long, value_name = "N")]
    cyclotomic: Option<u64>,
    #[command(flatten)]
    out: Json,
}

#[derive(Args)]
struct Json {
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct WordArgs {
    #[arg(long)]
    q: u64,
    /// e.g. "S T S^-1 T"
    #[arg(long)]
    word: String,
    #[command(flatten)]
    out: Json,
}

#[derive(Subcommand)]
enum HeckeCmd {
    /// Evaluate a word in S and T.
    Eval(WordArgs),
    /// Elliptic, parabolic or hyperbolic.
    Classify(WordArgs),
    /// Special-hyperbolic report: sqrt of the discriminant, fixed points, cusp pattern.
    Special(WordArgs),
    /// Enumerate special hyperbolic words S^k1 T ... S^km T.
    Search {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 8)]
        max_letters: usize,
        #[arg(long, default_value_t = 3)]
        max_exponent: i64,
        #[command(flatten)]
        out: Json,
    },
}

#[derive(Subcommand)]
enum RosenCmd {
    /// Rosen lambda-continued fraction digits.
    Expand {
        #[arg(long)]
        q: u64,
        /// Element of Q(l), l = 2cos(pi/q), e.g. "l^2-1" or "(2*l^2+13)/(l+l^3)".
        #[arg(long)]
        element: String,
        #[arg(long, default_value_t = 500)]
        max_steps: usize,
        /// Include the iterates.
        #[arg(long)]
        iterates: bool,
        #[command(flatten)]
        out: Json,
    },
    /// Decide membership in the orbit of infinity when the expansion terminates or repeats.
    OrbitTest {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        element: String,
        #[arg(long, default_value_t = rosen::DEFAULT_BUDGET)]
        budget: usize,
        #[command(flatten)]
        out: Json,
    },
}

#[derive(Args)]
struct TriangleArgs {
    #[arg(long)]
    a: u64,
    #[arg(long)]
    b: u64,
    #[arg(long)]
    c: u64,
    /// Apply the normalizing matrix N when 4 does not divide q.
    #[arg(long)]
    normalize: bool,
}

#[derive(Subcommand)]
enum SurfaceCmd {
    /// Unfold the (a, b, c) triangle.
    Unfold {
        #[command(flatten)]
        tri: TriangleArgs,
        /// Write the surface here; without it the surface JSON goes to stdout.
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
    },
    /// Check that vertices and edge slopes lie in the trace field.
    Check {
        #[arg(long, value_name = "FILE", conflicts_with_all = ["a", "b", "c"])]
        surface: Option<PathBuf>,
        #[arg(long, requires_all = ["b", "c"])]
        a: Option<u64>,
        #[arg(long)]
        b: Option<u64>,
        #[arg(long)]
        c: Option<u64>,
        #[arg(long)]
        normalize: bool,
        #[command(flatten)]
        out: Json,
    },
}

#[derive(Subcommand)]
enum SafCmd {
    /// SAF invariant of an interval exchange over Q(l), l = 2cos(pi/q).
    Iet {
        #[arg(long)]
        lengths: String,
        /// 1-based images of the intervals, e.g. "2,1".
        #[arg(long)]
        perm: String,
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        out: Json,
    },
    /// First-return map and SAF invariant of a flow direction on a surface.
    Direction {
        #[arg(long, value_name = "FILE")]
        surface: PathBuf,
        /// "dx, dy" in Q(l) with l = 2cos(pi/q) of the surface.
        #[arg(long)]
        dir: String,
        #[command(flatten)]
        out: Json,
    },
}

#[derive(Subcommand)]
enum TrigCmd {
    /// Degrees of Q(cos 2pi/q) and Q(sin 2pi/q) for 3 <= q <= qmax, q != 4.
    Table {
        #[arg(long)]
        qmax: u64,
        #[command(flatten)]
        out: Json,
    },
    /// Cross-check the degree formulas against exact minimal polynomials.
    Verify {
        #[arg(long)]
        qmax: u64,
        #[command(flatten)]
        out: Json,
    },
}

/// Result of a command: output already printed, and whether every check held.
enum Verdict {
    Ok,
    Failed,
}

struct Ctx {
    approx: Option<usize>,
    seed: u64,
}

impl Ctx {
    fn text(&self, x: &FieldElement) -> String {
        match self.approx.and_then(|d| x.approx_decimal(d).ok()) {
            Some(a) => format!("{x}  [~ {a}]"),
            None => x.to_string(),
        }
    }

    fn value(&self, x: &FieldElement) -> Value {
        let j = ElementJson::from(x);
        let mut v = json!({ "text": x.to_string(), "field": j.field, "coeffs": j.coeffs });
        if let Some(a) = self.approx.and_then(|d| x.approx_decimal(d).ok()) {
            v["approx"] = json!({ "value": a, "normative": false });
        }
        v
    }

    fn point_text(&self, p: &Point) -> String {
        p.finite().map_or_else(|| "inf".to_string(), |x| self.text(x))
    }

    fn point(&self, p: &Point) -> Value {
        p.finite().map_or_else(|| json!("inf"), |x| self.value(x))
    }

    fn matrix(&self, m: &GroupMatrix) -> Value {
        let [a, b, c, d] = m.entries();
        json!([[self.value(a), self.value(b)], [self.value(c), self.value(d)]])
    }
}

fn print_json(v: &Value) {
    out!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn poly_json(p: &IntPoly) -> Value {
    json!({ "text": p.to_string(), "coeffs": p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>() })
}

fn cmd_minpoly(args: &MinpolyArgs) -> Result<Verdict> {
    let p = match (args.cos_pi_over, args.cos_2pi_over, args.cyclotomic) {
        (Some(n), ..) if n >= 1 => real_cos_minpoly(2 * n),
        (_, Some(n), _) if n >= 1 => real_cos_minpoly(n),
        (.., Some(n)) if n >= 1 => cyclotomic_polynomial(n),
        _ => bail!("N must be positive"),
    };
    if args.out.json {
        print_json(&poly_json(&p));
    } else {
        out!("{p}");
    }
    Ok(Verdict::Ok)
}

fn load_word(a: &WordArgs) -> Result<(HeckeWord, GroupMatrix)> {
    let w = HeckeWord::parse(a.q, &a.word)?;
    let m = w.eval()?;
    Ok((w, m))
}

fn cmd_hecke(cmd: &HeckeCmd, ctx: &Ctx) -> Result<Verdict> {
    match cmd {
        HeckeCmd::Eval(a) => {
            let (w, m) = load_word(a)?;
            if a.out.json {
                print_json(&json!({ "q": a.q, "word": w.to_string(), "matrix": ctx.matrix(&m), "trace": ctx.value(&m.trace()) }));
            } else {
                out!("{m}");
                out!("trace = {}", ctx.text(&m.trace()));
            }
        }
        HeckeCmd::Classify(a) => {
            let (_, m) = load_word(a)?;
            let (class, disc) = classify(&m)?;
            if a.out.json {
                print_json(&json!({ "class": class, "trace": ctx.value(&m.trace()), "discriminant": ctx.value(&disc) }));
            } else {
                out!("{class:?}");
                out!("tr^2 - 4 = {}", ctx.text(&disc));
            }
        }
        HeckeCmd::Special(a) => {
            let (_, m) = load_word(a)?;
            let r = special_report(&m)?;
            let parity = if a.q % 2 == 0 { Some(leutbecher_parity_check(&m)?) } else { None };
            if a.out.json {
                print_json(&json!({
                    "class": r.class,
                    "trace": ctx.value(&r.trace),
                    "discriminant": ctx.value(&r.discriminant),
                    "is_special": r.is_special,
                    "sqrt_discriminant": r.sqrt_delta.as_ref().map(|s| ctx.value(s)),
                    "fixed_points": r.fixed_points.iter().map(|p| ctx.point(p)).collect::<Vec<_>>(),
                    "cusp_pattern": r.cusp_pattern,
                    "parity_ok": parity,
                }));
            } else {
                out!("class: {:?}", r.class);
                out!("trace: {}", ctx.text(&r.trace));
                out!("tr^2 - 4: {}", ctx.text(&r.discriminant));
                out!("special: {}", r.is_special);
                if let Some(s) = &r.sqrt_delta {
                    out!("sqrt(tr^2 - 4): {}", ctx.text(s));
                }
                for p in &r.fixed_points {
                    out!("fixed point: {}", ctx.point_text(p));
                }
                if let Some(c) = r.cusp_pattern {
                    out!("cusp pattern: {c:?}");
                }
                if let Some(p) = parity {
                    out!("column parity: {p}");
                }
            }
        }
        HeckeCmd::Search { q, max_letters, max_exponent, out } => {
            let hits = search_special(*q, *max_letters, *max_exponent)?;
            if out.json {
                print_json(&Value::from(
                    hits.iter()
                        .map(|h| {
                            json!({
                                "word": h.word.to_string(),
                                "trace": ctx.value(&h.report.trace),
                                "fixed_points": h.report.fixed_points.iter().map(|p| ctx.point(p)).collect::<Vec<_>>(),
                            })
                        })
                        .collect::<Vec<_>>(),
                ));
            } else {
                for h in &hits {
                    out!("{}    trace {}", h.word, ctx.text(&h.report.trace));
                }
                out!("{} special hyperbolic word(s)", hits.len());
            }
        }
    }
    Ok(Verdict::Ok)
}

fn cmd_rosen(cmd: &RosenCmd, ctx: &Ctx) -> Result<Verdict> {
    match cmd {
        RosenCmd::Expand { q, element, max_steps, iterates, out } => {
            let x = parse_lambda(element, *q)?;
            let e = rosen::expand(&x, *q, *max_steps)?;
            if out.json {
                let mut v = json!({ "q": q, "x": ctx.value(&x), "digits": e.digits, "status": e.status });
                if *iterates {
                    v["iterates"] = Value::from(e.iterates.iter().map(|y| ctx.value(y)).collect::<Vec<_>>());
                }
                print_json(&v);
            } else {
                out!("digits: {:?}", e.digits);
                match e.status {
                    ExpansionStatus::Finite => out!("status: Finite"),
                    ExpansionStatus::EventuallyPeriodic { preperiod_len, period_len } => {
                        out!("status: EventuallyPeriodic (preperiod {preperiod_len}, period {period_len})")
                    }
                    ExpansionStatus::Undecided { steps } => out!("status: Undecided after {steps} steps"),
                }
                if *iterates {
                    for (i, y) in e.iterates.iter().enumerate() {
                        out!("x_{i} = {}", ctx.text(y));
                    }
                }
            }
        }
        RosenCmd::OrbitTest { q, element, budget, out } => {
            let x = parse_lambda(element, *q)?;
            let (verdict, witness, steps) = match rosen::orbit_test(&x, *q, *budget)? {
                OrbitVerdict::InOrbitOfInfinity { witness } => ("InOrbitOfInfinity", Some(witness), None),
                OrbitVerdict::NotInOrbit { hyperbolic_witness } => ("NotInOrbit", Some(hyperbolic_witness), None),
                OrbitVerdict::Undecided { steps } => ("Undecided", None, Some(steps)),
            };
            if out.json {
                print_json(&json!({
                    "q": q,
                    "x": ctx.value(&x),
                    "verdict": verdict,
                    "witness": witness.as_ref().map(|w| ctx.matrix(w)),
                    "steps": steps,
                }));
            } else {
                out!("{verdict}");
                if let Some(w) = witness {
                    out!("witness: {w}");
                }
            }
        }
    }
    Ok(Verdict::Ok)
}

fn build_surface(a: u64, b: u64, c: u64, norm: bool) -> Result<PolygonalSurface> {
    Ok(if norm { normalize(a, b, c)? } else { unfold_triangle(a, b, c)? })
}

fn read_surface(path: &PathBuf) -> Result<PolygonalSurface> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let j: SurfaceJson = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(PolygonalSurface::try_from(&j)?)
}

fn cmd_surface(cmd: &SurfaceCmd) -> Result<Verdict> {
    match cmd {
        SurfaceCmd::Unfold { tri, json } => {
            let s = build_surface(tri.a, tri.b, tri.c, tri.normalize)?;
            let text = serde_json::to_string_pretty(&SurfaceJson::from(&s))?;
            match json {
                Some(path) => {
                    fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
                    out!(
                        "q = {}, {} polygons, {} edge pairs, euler characteristic {}",
                        s.q,
                        s.polygons().len(),
                        s.identifications().len(),
                        s.euler_characteristic()
                    );
                }
                None => out!("{text}"),
            }
            Ok(Verdict::Ok)
        }
        SurfaceCmd::Check { surface, a, b, c, normalize, out } => {
            let s = match (surface, a, b, c) {
                (Some(p), ..) => read_surface(p)?,
                (None, Some(a), Some(b), Some(c)) => build_surface(*a, *b, *c, *normalize)?,
                _ => bail!("give --surface FILE or all of --a --b --c"),
            };
            let r = check_linear_normalization(&s)?;
            let ok = r.vertex_field_ok && r.edge_slope_field_ok && r.reverify(&s)?;
            if out.json {
                print_json(&r.to_json());
            } else {
                out!("q = {}, trace field degree {}", r.q, r.trace_field_degree);
                out!("vertices in trace field: {}", r.vertex_field_ok);
                out!("edge slopes in trace field: {}", r.edge_slope_field_ok);
                for e in &r.bad_slopes {
                    out!("  slope outside: polygon {} edge {}", e.0, e.1);
                }
            }
            Ok(if ok { Verdict::Ok } else { Verdict::Failed })
        }
    }
}

fn parse_elements(src: &str, q: u64) -> Result<Vec<FieldElement>> {
    split_list(src).into_iter().map(|s| parse_lambda(s, q).map_err(Into::into)).collect()
}

fn cmd_saf(cmd: &SafCmd, ctx: &Ctx) -> Result<Verdict> {
    match cmd {
        SafCmd::Iet { lengths, perm, q, out } => {
            let lengths = parse_elements(lengths, *q)?;
            let perm = split_list(perm)
                .into_iter()
                .map(|p| match p.parse::<usize>() {
                    Ok(k) if k >= 1 => Ok(k - 1),
                    _ => Err(anyhow!("bad permutation entry {p:?}; entries are 1-based")),
                })
                .collect::<Result<Vec<_>>>()?;
            let t = Iet::new(lengths, perm)?;
            let saf = saf_invariant(&t)?;
            if out.json {
                print_json(&json!({
                    "lengths": t.lengths().iter().map(|x| ctx.value(x)).collect::<Vec<_>>(),
                    "perm": t.perm().iter().map(|p| p + 1).collect::<Vec<_>>(),
                    "translations": translations(&t).iter().map(|x| ctx.value(x)).collect::<Vec<_>>(),
                    "saf": saf.to_json(),
                }));
            } else {
                out!("{t}");
                let ts: Vec<String> = translations(&t).iter().map(|x| ctx.text(x)).collect();
                out!("translations [{}]", ts.join(", "));
                out!("SAF = {saf}");
            }
        }
        SafCmd::Direction { surface, dir, out } => {
            let s = read_surface(surface)?;
            let parts = parse_elements(dir, s.q)?;
            let [dx, dy] = <[FieldElement; 2]>::try_from(parts).map_err(|_| anyhow!("direction needs two coordinates \"dx, dy\""))?;
            let d = Direction::new(dx, dy)?;
            let fr = first_return_iet(&s, &d)?;
            let saf = saf_invariant(&fr.iet)?;
            if out.json {
                print_json(&json!({
                    "direction": [ctx.value(&d.dx), ctx.value(&d.dy)],
                    "sections": fr.sections.iter().map(|e| json!({ "edge": [e.edge.0, e.edge.1], "width": ctx.value(&e.width) })).collect::<Vec<_>>(),
                    "lengths": fr.iet.lengths().iter().map(|x| ctx.value(x)).collect::<Vec<_>>(),
                    "perm": fr.iet.perm().iter().map(|p| p + 1).collect::<Vec<_>>(),
                    "saf": saf.to_json(),
                }));
            } else {
                out!("direction ({}, {})", ctx.text(&d.dx), ctx.text(&d.dy));
                out!("{} cross-section edges; lengths in {}, l its generator", fr.sections.len(), fr.iet.field());
                out!("{}", fr.iet);
                out!("SAF = {saf}");
            }
        }
    }
    Ok(Verdict::Ok)
}

fn trig_qs(qmax: u64) -> impl Iterator<Item = u64> {
    (3..=qmax).filter(|&q| q != 4)
}

fn cmd_trig(cmd: &TrigCmd) -> Result<Verdict> {
    match cmd {
        TrigCmd::Table { qmax, out } => {
            let rows = trig_qs(*qmax).map(trig::degree_report).collect::<Result<Vec<_>, _>>()?;
            if out.json {
                print_json(&serde_json::to_value(&rows)?);
            } else {
                out!("{:>5} {:>6} {:>6} {:>6} {:>4}  class", "q", "cos", "sin", "K", "gcd");
                for r in &rows {
                    out!("{:>5} {:>6} {:>6} {:>6} {:>4}  {:?}", r.q, r.cos_degree, r.sin_degree, r.k, r.gcd_value, r.class);
                }
            }
            Ok(Verdict::Ok)
        }
        TrigCmd::Verify { qmax, out } => {
            let mut rows = Vec::new();
            for q in trig_qs(*qmax) {
                let degrees = trig::verify_degrees_exact(q)?;
                let gcd = trig::gcd_case(q)? == trig::gcd_direct(q);
                let half_angle = trig::verify_cos_half_angle(q)?;
                let tan = if q % 4 == 0 { Some(trig::verify_tan_square_degree(q)?) } else { None };
                rows.push((q, degrees, gcd, half_angle, tan));
            }
            let ok = rows.iter().all(|&(_, d, g, h, t)| d && g && h && t != Some(false));
            if out.json {
                print_json(&json!({
                    "all_ok": ok,
                    "rows": rows.iter().map(|&(q, d, g, h, t)| json!({
                        "q": q, "degrees": d, "gcd": g, "half_angle": h, "tan_square": t,
                    })).collect::<Vec<_>>(),
                }));
            } else {
                for &(q, d, g, h, t) in &rows {
                    let tan = t.map_or("-".to_string(), |t| t.to_string());
                    out!("q = {q:>3}: degrees {d}, gcd {g}, half-angle {h}, tan^2 {tan}");
                }
                out!("{}", if ok { "all checks passed" } else { "SOME CHECKS FAILED" });
            }
            Ok(if ok { Verdict::Ok } else { Verdict::Failed })
        }
    }
}

fn cmd_verify(filter: Option<&str>, list: bool, ctx: &Ctx) -> Result<Verdict> {
    let reg = Registry::builtin();
    if list {
        for id in reg.ids().filter(|id| filter.is_none_or(|f| id.starts_with(f))) {
            out!("{id}");
        }
        return Ok(Verdict::Ok);
    }
    let report = reg.run(filter, &RunContext { seed: ctx.seed });
    print_json(&serde_json::to_value(&report)?);
    Ok(if report.all_passed() { Verdict::Ok } else { Verdict::Failed })
}

fn run(cli: &Cli) -> Result<Verdict> {
    let ctx = Ctx { approx: cli.approx, seed: cli.seed };
    match &cli.cmd {
        Cmd::Minpoly(a) => cmd_minpoly(a),
        Cmd::Hecke(c) => cmd_hecke(c, &ctx),
        Cmd::Rosen(c) => cmd_rosen(c, &ctx),
        Cmd::Surface(c) => cmd_surface(c),
        Cmd::Saf(c) => cmd_saf(c, &ctx),
        Cmd::Trig(c) => cmd_trig(c),
        Cmd::VerifyPaper { filter, list } => cmd_verify(filter.as_deref(), *list, &ctx),
    }
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Verdict::Ok) => ExitCode::SUCCESS,
        Ok(Verdict::Failed) => ExitCode::from(1),
        // bad input: malformed expressions, invalid parameters, unreadable files
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
