//! Command-line front end. `run` parses arguments, resolves settings and
//! writes the result to `out`; the return value is the process exit code.

pub mod config;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::bounds::{
    castelnuovo_severi_report, finite_field_constant_bound, preperiodic_count_bound, tower_report,
    x0_case_bounds, BoundMode, BoundReport, GenusInput, TowerInput,
};
use crate::dynatomic::{
    check_product_identity, check_zeta_factorization, phi, phi_mn, zeta_component, CurveLabel,
    FamilyParams,
};
use crate::error::{Error, Result};
use crate::factor::{bounded_degree_scan, subset_factor};
use crate::lemma::{verify_factorization2, verify_simple_roots};
use crate::poly::{to_text, BivarPoly};
use crate::ring::{Cyclotomic, Field, FqCtx, Rationals};
use crate::series::verify_splitting;
use crate::suite::{degree_cell, reduction_cell, run_suite, SuiteOptions};

use config::{load_config, resolve, Overrides, Settings};

pub const SCHEMA: &str = "v1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "dynatomic", version, about = "Dynatomic polynomials of z^d + c")]
struct Cli {
    /// Emit JSON.
    #[arg(long, global = true, env = "DYNATOMIC_JSON")]
    json: bool,
    /// Config file of `key = value` lines.
    #[arg(long, global = true, env = "DYNATOMIC_CONFIG")]
    config: Option<PathBuf>,
    #[arg(long, global = true, env = "DYNATOMIC_THREADS")]
    threads: Option<usize>,
    /// Series precision in powers of T.
    #[arg(long, global = true, env = "DYNATOMIC_PREC")]
    prec: Option<i64>,
    #[arg(long, global = true, env = "DYNATOMIC_DEGREE_CAP")]
    degree_cap: Option<usize>,
    #[arg(long, global = true, env = "DYNATOMIC_ORBIT_CAP")]
    orbit_cap: Option<usize>,
    #[arg(long, global = true, env = "DYNATOMIC_SCAN_CAP")]
    scan_cap: Option<u128>,
    /// Work budget for the explicit ζ-factorization check.
    #[arg(long, global = true, env = "DYNATOMIC_ZETA_BUDGET")]
    zeta_budget: Option<u128>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Φ_n(z, c), over ℚ or over F_q with --p.
    Phi {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Φ_{m,n}(z, c), over ℚ or over F_q with --p.
    Phimn {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: Option<u64>,
    },
    /// The ζ^j-component, over ℚ(ζ_d) or over F_q with --p.
    Component {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        j: u64,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Run one identity check.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Coded roots of f^n − f^m at c = ∞ over F_q((T)).
    SeriesRoots(FqArgs),
    /// Factor f^n − f^m over F_q(c) by unions of local orbits.
    FactorFq(FqArgs),
    /// Enumerate all monic degree-e divisors of f^n − f^m over F_q(c).
    Scan {
        #[command(flatten)]
        fq: FqArgs,
        #[arg(long)]
        e: u64,
    },
    /// Bound calculators.
    Bounds {
        #[command(subcommand)]
        which: Bounds,
    },
    /// Run the identity suite over a parameter grid.
    VerifyAll {
        /// Small grid: d ≤ 3, n ≤ 4, m ≤ 3, p ∈ {3, 5}.
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Args, Debug)]
struct FqArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    d: u64,
    #[arg(long)]
    n: u64,
    #[arg(long, default_value_t = 0)]
    m: u64,
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// Σ_{e|n} Φ_e = f^n − z as a product.
    Product {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        n: u64,
    },
    /// deg_z Φ_n = D₁(n).
    Degree {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        n: u64,
    },
    /// Φ_{m,n} equals the product of its ζ-components.
    Zeta {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
    },
    /// Simple roots and degree of the components over c at z = 0.
    SimpleRoots {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        /// One index; all of 1..d when absent.
        #[arg(long)]
        j: Option<u64>,
    },
    /// The quotient identity for the fibre over z = 0 when n | m − 1.
    ZeroFibre {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
    },
    /// Splitting of f^n − f^m at c = ∞.
    Splitting(FqArgs),
    /// Reduction of Φ_n mod p agrees with Φ_n over F_q.
    Reduction {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
    },
}

#[derive(Subcommand, Debug)]
enum Bounds {
    /// Castelnuovo–Severi genus bound.
    Cs {
        #[arg(long)]
        g1: u64,
        #[arg(long)]
        g2: u64,
        #[arg(long)]
        d1: u64,
        #[arg(long)]
        d2: u64,
    },
    /// Gonality lower bound for X₀(n); asymptotic genus when --genus is absent.
    X0 {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        genus: Option<u64>,
    },
    /// Gonality recursion up the tower in m.
    Tower {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        gamma1: u64,
        #[arg(long)]
        m_max: u64,
        /// Comma-separated genera g_1,…,g_{m_max}.
        #[arg(long, value_delimiter = ',')]
        genera: Option<Vec<u64>>,
    },
    /// n d^n, the count of preperiodic points of period ≤ n in one fibre.
    Count {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        n: u64,
    },
    /// q0^D.
    Constfield {
        #[arg(long)]
        q0: u64,
        #[arg(long)]
        degree: u64,
    },
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } | Error::DegreeCap { .. } | Error::PrecisionInsufficient(_) => EXIT_CAP,
        Error::InvalidParameter(_)
        | Error::WildCharacteristic { .. }
        | Error::MissingRootsOfUnity(_)
        | Error::Parse(_) => EXIT_USAGE,
        _ => EXIT_CHECK_FAILED,
    }
}

/// Machine-readable reason for an error.
pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NonExactDivision(_) => "non-exact-division",
        Error::MismatchedContexts => "mismatched-contexts",
        Error::DegreeCap { .. } => "degree-cap",
        Error::InvalidParameter(_) => "invalid-parameter",
        Error::WildCharacteristic { .. } => "wild-characteristic",
        Error::MissingRootsOfUnity(_) => "missing-roots-of-unity",
        Error::NotInvertible => "not-invertible",
        Error::NoRoot(_) => "no-root",
        Error::DiskCondition { .. } => "disk-condition",
        Error::PrecisionInsufficient(_) => "precision-insufficient",
        Error::CapExceeded { .. } => "cap-exceeded",
        Error::Parse(_) => "parse",
    }
}

struct Ctx {
    s: Settings,
    out: Vec<u8>,
}

impl Ctx {
    fn emit(&mut self, mut value: Value, human: &str) -> Result<()> {
        let res = if self.s.json {
            if let Value::Object(ref mut m) = value {
                m.insert("schema".into(), json!(SCHEMA));
            }
            writeln!(self.out, "{}", serde_json::to_string(&sort_keys(value)).unwrap())
        } else {
            write!(self.out, "{human}")
        };
        res.map_err(|e| Error::Parse(format!("write failed: {e}")))
    }
}

/// Rebuilds objects so keys are sorted; output is byte-stable.
fn sort_keys(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let sorted: std::collections::BTreeMap<String, Value> =
                m.into_iter().map(|(k, v)| (k, sort_keys(v))).collect();
            Value::Object(sorted.into_iter().collect())
        }
        Value::Array(a) => Value::Array(a.into_iter().map(sort_keys).collect()),
        other => other,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let json = cli.json;
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let code = exit_code(&e);
            if json {
                let v = json!({
                    "schema": SCHEMA,
                    "error": {"kind": error_kind(&e), "message": e.to_string(), "exit_code": code},
                });
                let _ = writeln!(out, "{}", serde_json::to_string(&sort_keys(v)).unwrap());
            } else {
                let _ = writeln!(err, "error[{}]: {e}", error_kind(&e));
            }
            code
        }
    }
}

fn settings(cli: &Cli) -> Result<Settings> {
    let file = match &cli.config {
        Some(p) => load_config(p)?,
        None => Default::default(),
    };
    let over = Overrides {
        prec: cli.prec,
        degree_cap: cli.degree_cap,
        orbit_cap: cli.orbit_cap,
        scan_cap: cli.scan_cap,
        zeta_budget: cli.zeta_budget,
        threads: cli.threads,
        json: cli.json,
    };
    resolve(&over, &file)
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let s = settings(&cli)?;
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(t) = s.threads {
            b = b.num_threads(t);
        }
        b.build().map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
    };
    let mut ctx = Ctx { s, out: Vec::new() };
    let res = pool.install(|| dispatch(cli.cmd, &mut ctx));
    out.write_all(&ctx.out)
        .and_then(|_| out.flush())
        .map_err(|e| Error::Parse(format!("write failed: {e}")))?;
    res
}

fn fq_json(k: &FqCtx) -> Value {
    let i = k.info();
    json!({"kind": "F_q", "p": i.p, "k": i.k, "q": i.q, "modulus": i.modulus, "gen_zeta": i.gen_zeta})
}

fn poly_output<F: Field>(
    ctx: &mut Ctx,
    command: &str,
    label: String,
    field: Value,
    params: Value,
    p: &BivarPoly<F>,
) -> Result<i32> {
    let text = to_text(p);
    let v = json!({
        "command": command,
        "label": label,
        "field": field,
        "params": params,
        "deg_z": p.deg_z(),
        "deg_c": p.deg_c(),
        "terms": p.term_count(),
        "poly": text,
    });
    let fname = match &field {
        Value::Object(m) => match m.get("q") {
            Some(q) => format!("F_{q}"),
            None => format!("Q(zeta_{})", m["d"]),
        },
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    let human = format!(
        "# {label} over {fname}: deg_z={} deg_c={} terms={}\n{text}",
        p.deg_z().map_or("-inf".into(), |x| x.to_string()),
        p.deg_c().map_or("-inf".into(), |x| x.to_string()),
        p.term_count()
    );
    ctx.emit(v, &human)?;
    Ok(EXIT_OK)
}

fn check_output(ctx: &mut Ctx, check: &str, passed: bool, details: Value, summary: &str) -> Result<i32> {
    let v = json!({"command": "verify", "check": check, "passed": passed, "details": details});
    let human = format!("{} {check} {summary}\n", if passed { "PASS" } else { "FAIL" });
    ctx.emit(v, &human)?;
    Ok(if passed { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn bound_output(ctx: &mut Ctx, r: BoundReport) -> Result<i32> {
    let mut human = format!("{} bound = {} ({})\n", r.bound, r.value, mode_name(r.mode));
    for c in &r.caveats {
        human.push_str(&format!("caveat: {c}\n"));
    }
    let mut v = serde_json::to_value(&r).unwrap();
    v["command"] = json!("bounds");
    ctx.emit(v, &human)?;
    Ok(EXIT_OK)
}

fn mode_name(m: BoundMode) -> &'static str {
    match m {
        BoundMode::ExactFormula => "exact-formula",
        BoundMode::AsymptoticLeadingTerm => "asymptotic-leading-term",
        BoundMode::UserSuppliedGenus => "user-supplied-genus",
    }
}

fn dispatch(cmd: Command, ctx: &mut Ctx) -> Result<i32> {
    let cap = ctx.s.degree_cap;
    match cmd {
        Command::Phi { d, n, p } => {
            let label = CurveLabel::periodic(n)?.to_string();
            let params = json!({"d": d, "n": n});
            match p {
                None => {
                    let fp = FamilyParams::new(d, Rationals)?.with_degree_cap(cap);
                    poly_output(ctx, "phi", label, json!("Q"), params, &phi(&fp, n)?)
                }
                Some(p) => {
                    let k = FqCtx::new(p, d)?;
                    let fp = FamilyParams::new(d, k.clone())?.with_degree_cap(cap);
                    poly_output(ctx, "phi", label, fq_json(&k), params, &phi(&fp, n)?)
                }
            }
        }
        Command::Phimn { d, m, n, p } => {
            let label = format!("Phi({m},{n})");
            let params = json!({"d": d, "m": m, "n": n});
            match p {
                None => {
                    let fp = FamilyParams::new(d, Rationals)?.with_degree_cap(cap);
                    poly_output(ctx, "phimn", label, json!("Q"), params, &phi_mn(&fp, m, n)?)
                }
                Some(p) => {
                    let k = FqCtx::new(p, d)?;
                    let fp = FamilyParams::new(d, k.clone())?.with_degree_cap(cap);
                    poly_output(ctx, "phimn", label, fq_json(&k), params, &phi_mn(&fp, m, n)?)
                }
            }
        }
        Command::Component { d, m, n, j, p } => {
            let label = CurveLabel::component(d, m, n, j)?.to_string();
            let params = json!({"d": d, "m": m, "n": n, "j": j});
            match p {
                None => {
                    let cyc = Cyclotomic::new(d)?;
                    let fp = FamilyParams::new(d, cyc.clone())?.with_degree_cap(cap);
                    let field = json!({"kind": "Q(zeta)", "d": d, "modulus": cyc.modulus().iter().map(|c| c.to_string()).collect::<Vec<_>>()});
                    poly_output(ctx, "component", label, field, params, &zeta_component(&fp, m, n, j)?)
                }
                Some(p) => {
                    let k = FqCtx::new(p, d)?;
                    let fp = FamilyParams::new(d, k.clone())?.with_degree_cap(cap);
                    poly_output(ctx, "component", label, fq_json(&k), params, &zeta_component(&fp, m, n, j)?)
                }
            }
        }
        Command::Verify { what } => verify(what, ctx),
        Command::SeriesRoots(a) => {
            let k = FqCtx::new(a.p, a.d)?;
            let r = verify_splitting(&k, a.n, a.m, ctx.s.prec)?;
            let mut human = format!(
                "# roots of f^{} - f^{} over F_{}((T)), prec {}\n",
                a.n, a.m, r.q, r.prec
            );
            for root in &r.roots {
                let cs: Vec<String> = root.coeffs.iter().map(|c| format!("[{}]", c.join(","))).collect();
                human.push_str(&format!("{} T^{}: {}\n", root.code, root.lo, cs.join(" ")));
            }
            let passed = r.passed;
            let mut v = serde_json::to_value(&r).unwrap();
            v["command"] = json!("series-roots");
            v["field"] = fq_json(&k);
            ctx.emit(v, &human)?;
            Ok(if passed { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::FactorFq(a) => {
            let k = FqCtx::new(a.p, a.d)?;
            let r = subset_factor(&k, a.n, a.m, ctx.s.prec, ctx.s.orbit_cap)?;
            let mut human = format!(
                "# f^{} - f^{} over F_{}(c): degrees {:?}\n",
                a.n, a.m, r.q, r.degrees
            );
            for (f, poly) in r.factors.iter().zip(&r.polys) {
                human.push_str(&format!(
                    "degree {} orbits {:?} points_above_infinity {}: {}\n",
                    f.degree,
                    f.orbits,
                    f.points_above_infinity,
                    poly.pretty()
                ));
            }
            let ok = r.product_ok && r.gauss_bound_ok;
            let mut v = serde_json::to_value(&r).unwrap();
            v["command"] = json!("factor-fq");
            v["field"] = fq_json(&k);
            ctx.emit(v, &human)?;
            Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::Scan { fq: a, e } => {
            let k = FqCtx::new(a.p, a.d)?;
            let r = bounded_degree_scan(&k, e, a.n, a.m, ctx.s.scan_cap)?;
            let mut human = format!(
                "# degree-{e} divisors of f^{} - f^{} over F_{}(c): {} candidates, {} found\n",
                a.n,
                a.m,
                r.q,
                r.candidates,
                r.polys.len()
            );
            for p in &r.polys {
                human.push_str(&format!("{}\n", p.pretty()));
            }
            let mut v = serde_json::to_value(&r).unwrap();
            v["command"] = json!("scan");
            v["field"] = fq_json(&k);
            ctx.emit(v, &human)?;
            Ok(EXIT_OK)
        }
        Command::Bounds { which } => {
            let r = match which {
                Bounds::Cs { g1, g2, d1, d2 } => castelnuovo_severi_report(g1, g2, d1, d2)?,
                Bounds::X0 { d, n, genus } => {
                    let g = genus.map_or(GenusInput::Asymptotic, GenusInput::Supplied);
                    x0_case_bounds(d, n, g)?
                }
                Bounds::Tower { d, n, gamma1, m_max, genera } => {
                    let input = genera.map_or(TowerInput::Ramification, TowerInput::Genera);
                    tower_report(d, n, gamma1, &input, m_max)?
                }
                Bounds::Count { d, n } => BoundReport {
                    bound: "count",
                    inputs: json!({"d": d, "n": n}),
                    value: preperiodic_count_bound(d, n)?.to_string(),
                    mode: BoundMode::ExactFormula,
                    caveats: vec![],
                    details: json!({"meaning": "sum over m < n of deg_z(f^n - f^m)"}),
                },
                Bounds::Constfield { q0, degree } => BoundReport {
                    bound: "constfield",
                    inputs: json!({"q0": q0, "degree": degree}),
                    value: finite_field_constant_bound(q0, degree)?.to_string(),
                    mode: BoundMode::ExactFormula,
                    caveats: vec![],
                    details: json!({"meaning": "size of the constant field F_(q0^D)"}),
                },
            };
            bound_output(ctx, r)
        }
        Command::VerifyAll { quick } => {
            let opts = SuiteOptions {
                quick,
                prec: ctx.s.prec,
                zeta_budget: ctx.s.zeta_budget,
                scan_cap: ctx.s.scan_cap,
                orbit_cap: ctx.s.orbit_cap,
            };
            let results = run_suite(&opts);
            let failed = results.iter().filter(|r| !r.passed).count();
            let mut human = String::new();
            for r in &results {
                human.push_str(&format!(
                    "{} {} {}{}{}\n",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.check,
                    r.params,
                    if r.detail.is_empty() { "" } else { " : " },
                    r.detail
                ));
            }
            human.push_str(&format!("{} checks, {} failed\n", results.len(), failed));
            let v = json!({
                "command": "verify-all",
                "quick": quick,
                "total": results.len(),
                "failed": failed,
                "results": results,
            });
            ctx.emit(v, &human)?;
            Ok(if failed == 0 { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
    }
}

fn verify(what: Verify, ctx: &mut Ctx) -> Result<i32> {
    match what {
        Verify::Product { d, n } => {
            let ok = check_product_identity(&FamilyParams::new(d, Rationals)?.with_degree_cap(ctx.s.degree_cap), n)?;
            check_output(ctx, "product", ok, json!({"d": d, "n": n}), &format!("d={d} n={n}"))
        }
        Verify::Degree { d, n } => {
            let (ok, detail) = degree_cell(d, n)?;
            check_output(ctx, "degree", ok, json!({"d": d, "n": n, "detail": detail}), &format!("d={d} n={n} {detail}"))
        }
        Verify::Zeta { d, m, n } => {
            let fp = FamilyParams::new(d, Cyclotomic::new(d)?)?;
            let r = check_zeta_factorization(&fp, m, n, ctx.s.zeta_budget)?;
            let summary = format!("d={d} m={m} n={n} mode={}", serde_json::to_value(r.mode).unwrap().as_str().unwrap());
            check_output(ctx, "zeta", r.holds, serde_json::to_value(&r).unwrap(), &summary)
        }
        Verify::SimpleRoots { d, m, n, j } => {
            let js: Vec<u64> = match j {
                Some(j) => vec![j],
                None => (1..d.max(2)).collect(),
            };
            let reports = js
                .iter()
                .map(|&j| verify_simple_roots(d, m, n, j))
                .collect::<Result<Vec<_>>>()?;
            let ok = reports.iter().all(|r| r.passed());
            let summary = reports
                .iter()
                .map(|r| format!("j={} degree={} squarefree={}", r.j, r.degree, r.squarefree))
                .collect::<Vec<_>>()
                .join("; ");
            check_output(ctx, "simple-roots", ok, serde_json::to_value(&reports).unwrap(), &format!("d={d} m={m} n={n} {summary}"))
        }
        Verify::ZeroFibre { d, m, n } => {
            let r = verify_factorization2(d, m, n)?;
            let ok = r.holds && r.divides_each;
            check_output(ctx, "zero-fibre", ok, serde_json::to_value(&r).unwrap(), &format!("d={d} m={m} n={n}"))
        }
        Verify::Splitting(a) => {
            let k = FqCtx::new(a.p, a.d)?;
            let mut r = verify_splitting(&k, a.n, a.m, ctx.s.prec)?;
            let summary = format!(
                "p={} d={} n={} m={} roots={} min_residual={}",
                a.p, a.d, a.n, a.m, r.root_count, r.min_residual_order
            );
            let ok = r.passed;
            r.roots.clear();
            check_output(ctx, "splitting", ok, serde_json::to_value(&r).unwrap(), &summary)
        }
        Verify::Reduction { d, n, p } => {
            let (ok, detail) = reduction_cell(d, n, p)?;
            check_output(ctx, "reduction", ok, json!({"d": d, "n": n, "p": p, "detail": detail}), &format!("d={d} n={n} p={p} {detail}"))
        }
    }
}
