//! Command-line front end: parse surface fixtures and Mukai vectors, dispatch
//! to the decision library, and emit structured results.
//!
//! Exit codes for `wbn`: 0 holds, 3 fails, 4 undetermined, 2 input error.
//! All other commands exit 0 on success and 2 on input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use mukai_wbn::{
    decide, elliptic_product_stream, embed_into_u, fixture, is_totally_semistable_candidate,
    is_wall, rank2_counterexample_stream, search_decompositions, ulrich_classify,
    ulrich_enumerate_rank1, wall_orbit, arith, BinaryEvenForm, Certificate, CounterexampleRecord,
    DivisorClass, EllipticProductStream, FormClass, Int, IsotropicDecomposition, MukaiVector,
    Provenance, Rank2CounterexampleStream, SearchBound, SurfaceContext, UlrichConclusion,
    WbnStatus, WbnVerdict, DEFAULT_COORD_BOX,
};

const BOX_ENV_VAR: &str = "MUKAI_WBN_BOX";
const DEFAULT_COUNT: usize = 5;

#[derive(Parser)]
#[command(
    name = "mukai-wbn",
    about = "Weak Brill-Noether decisions and counterexample machinery for \
             polarized abelian surfaces given as integer lattices",
    long_about = None,
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputOpts {
    /// Emit machine-readable JSON (canonical key order) instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide weak Brill-Noether for a Mukai vector "r; c1,...,cρ; a".
    Wbn {
        /// Surface fixture file (JSON).
        #[arg(long)]
        surface: PathBuf,
        /// Mukai vector, e.g. "6; -5,18,7; 0".
        #[arg(allow_hyphen_values = true)]
        vector: String,
        /// Sup-norm bound on searched Chern classes
        /// (default 10, or the MUKAI_WBN_BOX environment variable).
        #[arg(long)]
        bound: Option<u32>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Stream all isotropic decompositions of a Mukai vector in the box.
    Decompose {
        #[arg(long)]
        surface: PathBuf,
        #[arg(allow_hyphen_values = true)]
        vector: String,
        /// Sup-norm bound on searched Chern classes
        /// (default 10, or the MUKAI_WBN_BOX environment variable).
        #[arg(long = "box")]
        coord_box: Option<u32>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Classify a Mukai vector as Ulrich for the fixture polarization, or
    /// enumerate the rank-1 Ulrich vector for (r, m).
    Ulrich {
        #[arg(long)]
        surface: PathBuf,
        /// Mukai vector to classify (omit when enumerating).
        #[arg(allow_hyphen_values = true)]
        vector: Option<String>,
        #[arg(long = "box")]
        coord_box: Option<u32>,
        /// Enumerate on a rank-1 fixture: bundle rank r.
        #[arg(long, requires = "enumerate_m")]
        enumerate_r: Option<i64>,
        /// Enumerate on a rank-1 fixture: polarization multiplier m.
        #[arg(long, requires = "enumerate_r")]
        enumerate_m: Option<i64>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Stream verified counterexample records from a rank-2 fixture or from
    /// the elliptic-product lattice with parameter m.
    Counterexamples {
        #[arg(long, conflicts_with = "m")]
        surface: Option<PathBuf>,
        /// Elliptic-product parameter (H^2 = 2m, D^2 = -2, H.D = 0).
        #[arg(long, allow_hyphen_values = true)]
        m: Option<i64>,
        /// Number of records to emit.
        #[arg(long, default_value_t = DEFAULT_COUNT)]
        count: usize,
        /// Force the general Pell stream even on an elliptic-product fixture.
        #[arg(long)]
        general: bool,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Wall predicates for a candidate against v; optionally a wall orbit.
    Walls {
        #[arg(long)]
        surface: PathBuf,
        /// The fixed Mukai vector v.
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        /// The candidate wall vector v1.
        #[arg(long, allow_hyphen_values = true)]
        candidate: String,
        /// Emit a wall orbit of this length (needs --twist and --basis).
        #[arg(long)]
        orbit_count: Option<usize>,
        /// Twisting divisor class D, e.g. "0,0,0".
        #[arg(long, allow_hyphen_values = true)]
        twist: Option<String>,
        /// Sublattice basis "p1,...,pρ;q1,...,qρ".
        #[arg(long, allow_hyphen_values = true)]
        basis: Option<String>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Fundamental Pell solutions t^2 - D u^2 = 1 (or = 4 with --four).
    Pell {
        #[arg(long, allow_hyphen_values = true)]
        d: String,
        /// Solve t^2 - D u^2 = 4 instead.
        #[arg(long)]
        four: bool,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Embed an even binary form, given as Gram entries "2a,b,2c", into the
    /// hyperbolic plane, or report the nonsquare verdict.
    EmbedU {
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        #[command(flatten)]
        out: OutputOpts,
    },
}

fn main() -> ExitCode {
    // Die quietly when the output pipe closes (e.g. piping into head),
    // like any other line-oriented tool.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn resolve_box(cli_value: Option<u32>) -> mukai_wbn::Result<u32> {
    if let Some(b) = cli_value {
        return Ok(b);
    }
    match std::env::var(BOX_ENV_VAR) {
        Ok(text) => text
            .trim()
            .parse::<u32>()
            .map_err(|_| mukai_wbn::Error::Parse(format!("invalid {BOX_ENV_VAR}={text:?}"))),
        Err(_) => Ok(DEFAULT_COORD_BOX),
    }
}

fn load_surface(path: &Path) -> mukai_wbn::Result<SurfaceContext> {
    fixture::SurfaceFixtureDoc::from_path(path)?.to_context()
}

fn divisor_json(d: &DivisorClass) -> Value {
    Value::String(d.to_string())
}

fn mukai_json(v: &MukaiVector) -> Value {
    Value::String(fixture::format_mukai_vector(v))
}

fn decomposition_json(dec: &IsotropicDecomposition) -> Value {
    json!({
        "v1": mukai_json(&dec.v1),
        "v2": mukai_json(&dec.v2),
        "l1": dec.l1.to_string(),
        "l2": dec.l2.to_string(),
    })
}

fn certificate_json(cert: &Certificate) -> Value {
    match cert {
        Certificate::Decomposition(dec) => json!({
            "kind": "isotropic-decomposition",
            "decomposition": decomposition_json(dec),
        }),
        Certificate::TwistedRank { eta } => json!({
            "kind": "twisted-rank",
            "eta": divisor_json(eta),
        }),
        Certificate::RankOneTwist { eta, colength } => json!({
            "kind": "rank-one-twist",
            "eta": divisor_json(eta),
            "colength": colength.to_string(),
        }),
    }
}

fn record_json(ctx: &SurfaceContext, rec: &CounterexampleRecord) -> Value {
    let lat = ctx.lattice();
    let a_sq = lat.square(&rec.tuple.a).expect("record dims");
    let b_sq = lat.square(&rec.tuple.b).expect("record dims");
    let provenance = match &rec.provenance {
        Provenance::PellOrbit { index, skipped } => json!({
            "kind": "pell-orbit",
            "index": index,
            "skipped": skipped,
        }),
        Provenance::EllipticProduct { s, t } => json!({
            "kind": "elliptic-product",
            "s": s.to_string(),
            "t": t.to_string(),
        }),
        Provenance::Search => json!({ "kind": "search" }),
    };
    json!({
        "tuple": {
            "a": divisor_json(&rec.tuple.a),
            "b": divisor_json(&rec.tuple.b),
            "r1": rec.tuple.r1.to_string(),
            "r2": rec.tuple.r2.to_string(),
            "a_square": a_sq.to_string(),
            "b_square": b_sq.to_string(),
        },
        "v1": mukai_json(&rec.v1),
        "v2": mukai_json(&rec.v2),
        "v": mukai_json(&rec.v),
        "polarization": divisor_json(&rec.polarization),
        "provenance": provenance,
    })
}

/// serde_json maps sort keys (BTreeMap); nested objects built with json! are
/// already canonical. Records print as single lines.
fn emit(value: &Value) {
    println!("{}", serde_json::to_string(value).expect("json"));
}

fn base_record(command: &str, elapsed_ms: u128) -> Map<String, Value> {
    let mut map = Map::new();
    map.insert("command".into(), Value::String(command.into()));
    map.insert("elapsed_ms".into(), json!(elapsed_ms));
    map
}

fn run(command: Command) -> mukai_wbn::Result<u8> {
    match command {
        Command::Wbn {
            surface,
            vector,
            bound,
            out,
        } => {
            let started = Instant::now();
            let ctx = load_surface(&surface)?;
            let v = fixture::parse_mukai_vector(&vector, ctx.rank())?;
            let coord_box = resolve_box(bound)?;
            let h = ctx.ample_ref().clone();
            let verdict = decide(&ctx, &v, &h, &SearchBound::new(coord_box))?;
            let elapsed = started.elapsed().as_millis();
            let code = match verdict.status {
                WbnStatus::Holds { .. } => 0u8,
                WbnStatus::Fails => 3,
                WbnStatus::Undetermined => 4,
            };
            if out.json {
                let mut map = base_record("wbn", elapsed);
                map.insert("surface".into(), json!(surface.display().to_string()));
                map.insert("vector".into(), json!(vector.trim()));
                map.insert("box".into(), json!(coord_box));
                let (status, reason, decisive) = describe_status(&verdict);
                map.insert("status".into(), json!(status));
                if let Some(reason) = reason {
                    map.insert("reason".into(), json!(reason));
                }
                map.insert("decisive".into(), json!(decisive));
                if let Some(p) = &verdict.profile {
                    map.insert(
                        "profile".into(),
                        json!({
                            "h0": p.h0.to_string(),
                            "h1": p.h1.to_string(),
                            "h2": p.h2.to_string(),
                        }),
                    );
                }
                if let Some(cert) = &verdict.certificate {
                    map.insert("certificate".into(), certificate_json(cert));
                }
                map.insert("warnings".into(), json!(verdict.warnings));
                emit(&Value::Object(map));
            } else {
                print_wbn_text(&surface, &vector, coord_box, &verdict, elapsed);
            }
            Ok(code)
        }
        Command::Decompose {
            surface,
            vector,
            coord_box,
            out,
        } => {
            let started = Instant::now();
            let ctx = load_surface(&surface)?;
            let v = fixture::parse_mukai_vector(&vector, ctx.rank())?;
            let coord_box = resolve_box(coord_box)?;
            let h = ctx.ample_ref().clone();
            let found = search_decompositions(&ctx, &v, &h, &SearchBound::new(coord_box))?;
            let elapsed = started.elapsed().as_millis();
            if out.json {
                for dec in &found {
                    let mut map = base_record("decompose", elapsed);
                    map.insert("box".into(), json!(coord_box));
                    map.insert("vector".into(), json!(vector.trim()));
                    map.insert("decomposition".into(), decomposition_json(dec));
                    emit(&Value::Object(map));
                }
                if found.is_empty() {
                    let mut map = base_record("decompose", elapsed);
                    map.insert("box".into(), json!(coord_box));
                    map.insert("vector".into(), json!(vector.trim()));
                    map.insert("decomposition".into(), Value::Null);
                    emit(&Value::Object(map));
                }
            } else {
                if found.is_empty() {
                    println!("no decompositions within box {coord_box}");
                } else {
                    for dec in &found {
                        println!(
                            "v1=[{}] v2=[{}] l1={} l2={}",
                            dec.v1, dec.v2, dec.l1, dec.l2
                        );
                    }
                }
                println!("count: {} (box {coord_box}, {} ms)", found.len(), elapsed);
            }
            Ok(0)
        }
        Command::Ulrich {
            surface,
            vector,
            coord_box,
            enumerate_r,
            enumerate_m,
            out,
        } => {
            let started = Instant::now();
            let ctx = load_surface(&surface)?;
            let coord_box = resolve_box(coord_box)?;
            if let (Some(r), Some(m)) = (enumerate_r, enumerate_m) {
                if ctx.rank() != 1 {
                    return Err(mukai_wbn::Error::OutOfScope(
                        "rank-1 Ulrich enumeration needs a rank-1 fixture".into(),
                    ));
                }
                let h_sq = ctx.lattice().square(ctx.ample_ref())?;
                let found = ulrich_enumerate_rank1(&h_sq, &Int::from(r), &Int::from(m))?;
                let elapsed = started.elapsed().as_millis();
                if out.json {
                    let mut map = base_record("ulrich", elapsed);
                    map.insert("enumerate".into(), json!({"r": r, "m": m}));
                    map.insert("h_square".into(), json!(h_sq.to_string()));
                    map.insert(
                        "vector".into(),
                        found.as_ref().map(mukai_json).unwrap_or(Value::Null),
                    );
                    emit(&Value::Object(map));
                } else {
                    match &found {
                        Some(v) => println!("ulrich vector: {v}"),
                        None => println!("none (2 does not divide rm)"),
                    }
                }
                return Ok(0);
            }
            let vector = vector.ok_or_else(|| {
                mukai_wbn::Error::Parse(
                    "a Mukai vector is required unless --enumerate-r/--enumerate-m are used"
                        .into(),
                )
            })?;
            let v = fixture::parse_mukai_vector(&vector, ctx.rank())?;
            let h = ctx.ample_ref().clone();
            let report = ulrich_classify(&ctx, &v, &h, &SearchBound::new(coord_box))?;
            let elapsed = started.elapsed().as_millis();
            let conclusion = match report.conclusion {
                UlrichConclusion::UlrichGeneric => "ulrich-generic",
                UlrichConclusion::NoUlrichViaTheorem => "no-ulrich-via-theorem",
                UlrichConclusion::NotCandidate => "not-candidate",
            };
            if out.json {
                let mut map = base_record("ulrich", elapsed);
                map.insert("vector".into(), json!(vector.trim()));
                map.insert("box".into(), json!(coord_box));
                map.insert("conclusion".into(), json!(conclusion));
                map.insert("candidate_ok".into(), json!(report.candidate_ok));
                map.insert("decisive".into(), json!(report.decisive));
                map.insert("untwisted".into(), mukai_json(&report.untwisted));
                map.insert(
                    "conditions".into(),
                    json!({
                        "rank_ge_2": report.conditions.rank_ge_2,
                        "a_part_zero": report.conditions.a_part_zero,
                        "pairing_matches": report.conditions.pairing_matches,
                        "xi_square_nonneg": report.conditions.xi_square_nonneg,
                    }),
                );
                map.insert(
                    "decomposition".into(),
                    report
                        .decomposition_found
                        .as_ref()
                        .map(decomposition_json)
                        .unwrap_or(Value::Null),
                );
                emit(&Value::Object(map));
            } else {
                println!("conclusion: {conclusion}");
                println!("untwisted: {}", report.untwisted);
                println!(
                    "conditions: rank_ge_2={} a_part_zero={} pairing_matches={} xi_square_nonneg={}",
                    report.conditions.rank_ge_2,
                    report.conditions.a_part_zero,
                    report.conditions.pairing_matches,
                    report.conditions.xi_square_nonneg
                );
                if let Some(dec) = &report.decomposition_found {
                    println!(
                        "decomposition: v1=[{}] v2=[{}] l1={} l2={}",
                        dec.v1, dec.v2, dec.l1, dec.l2
                    );
                }
                println!(
                    "decisive: {} (box {coord_box}, {elapsed} ms)",
                    report.decisive
                );
            }
            Ok(0)
        }
        Command::Counterexamples {
            surface,
            m,
            count,
            general,
            out,
        } => {
            let started = Instant::now();
            let (ctx, records) = if let Some(m) = m {
                let m = Int::from(m);
                let stream = EllipticProductStream::new(&m)?;
                let ctx = stream.context().clone();
                (ctx, elliptic_product_stream(&m, count)?)
            } else {
                let surface = surface.ok_or_else(|| {
                    mukai_wbn::Error::Parse("either --surface or --m is required".into())
                })?;
                let ctx = load_surface(&surface)?;
                if ctx.rank() != 2 {
                    return Err(mukai_wbn::Error::OutOfScope(
                        "counterexample streams need a rank-2 fixture (or --m)".into(),
                    ));
                }
                let gram = ctx.lattice().gram();
                let form =
                    BinaryEvenForm::from_gram(&gram[0][0], &gram[0][1], &gram[1][1])?;
                // An elliptic-product shape [[2m, 0], [0, -2]] prefers the
                // worked stream unless --general is passed.
                let is_elliptic_shape = gram[0][1] == Int::from(0)
                    && gram[1][1] == Int::from(-2)
                    && form.a >= Int::from(2)
                    && arith::is_perfect_square(&form.a).is_none();
                if is_elliptic_shape && !general {
                    let m = form.a.clone();
                    let stream = EllipticProductStream::new(&m)?;
                    (stream.context().clone(), elliptic_product_stream(&m, count)?)
                } else {
                    let stream = Rank2CounterexampleStream::new(&form)?;
                    (
                        stream.context().clone(),
                        rank2_counterexample_stream(&form, count)?,
                    )
                }
            };
            let elapsed = started.elapsed().as_millis();
            if out.json {
                for rec in &records {
                    let mut map = base_record("counterexamples", elapsed);
                    map.insert("count".into(), json!(count));
                    map.insert("record".into(), record_json(&ctx, rec));
                    emit(&Value::Object(map));
                }
            } else {
                let lat = ctx.lattice();
                for rec in &records {
                    let a_sq = lat.square(&rec.tuple.a)?;
                    let b_sq = lat.square(&rec.tuple.b)?;
                    println!(
                        "A=({}) B=({}) r1={} r2={} A^2={} B^2={} v=[{}] H=({})",
                        rec.tuple.a,
                        rec.tuple.b,
                        rec.tuple.r1,
                        rec.tuple.r2,
                        a_sq,
                        b_sq,
                        rec.v,
                        rec.polarization
                    );
                }
                println!("records: {} ({} ms)", records.len(), elapsed);
            }
            Ok(0)
        }
        Command::Walls {
            surface,
            v,
            candidate,
            orbit_count,
            twist,
            basis,
            out,
        } => {
            let started = Instant::now();
            let ctx = load_surface(&surface)?;
            let rank = ctx.rank();
            let v = fixture::parse_mukai_vector(&v, rank)?;
            let v1 = fixture::parse_mukai_vector(&candidate, rank)?;
            let wall = is_wall(&ctx, &v1, &v)?;
            let totally = is_totally_semistable_candidate(&ctx, &v1, &v)?;
            let orbit = match orbit_count {
                Some(count) => {
                    let twist = twist.ok_or_else(|| {
                        mukai_wbn::Error::Parse("--orbit-count needs --twist".into())
                    })?;
                    let basis = basis.ok_or_else(|| {
                        mukai_wbn::Error::Parse("--orbit-count needs --basis".into())
                    })?;
                    let d = fixture::parse_divisor_class(&twist, rank)?;
                    let (p_text, q_text) = basis.split_once(';').ok_or_else(|| {
                        mukai_wbn::Error::Parse(
                            "basis must be \"p1,...,pρ;q1,...,qρ\"".into(),
                        )
                    })?;
                    let p = fixture::parse_divisor_class(p_text, rank)?;
                    let q = fixture::parse_divisor_class(q_text, rank)?;
                    Some(wall_orbit(&ctx, &v, &v1, &d, (&p, &q), count)?)
                }
                None => None,
            };
            let elapsed = started.elapsed().as_millis();
            if out.json {
                let mut map = base_record("walls", elapsed);
                map.insert("v".into(), json!(v.to_string()));
                map.insert("candidate".into(), json!(v1.to_string()));
                map.insert("is_wall".into(), json!(wall));
                map.insert("totally_semistable_candidate".into(), json!(totally));
                if let Some(orbit) = &orbit {
                    map.insert(
                        "orbit".into(),
                        json!({
                            "exponent": orbit.exponent,
                            "elements": orbit
                                .elements
                                .iter()
                                .map(mukai_json)
                                .collect::<Vec<_>>(),
                        }),
                    );
                }
                emit(&Value::Object(map));
            } else {
                println!("is_wall: {wall}");
                println!("totally_semistable_candidate: {totally}");
                if let Some(orbit) = &orbit {
                    println!("stabilization exponent: {}", orbit.exponent);
                    for (i, w_n) in orbit.elements.iter().enumerate() {
                        println!("w_{}: {}", i + 1, w_n);
                    }
                }
                println!("elapsed_ms: {elapsed}");
            }
            Ok(0)
        }
        Command::Pell { d, four, out } => {
            let started = Instant::now();
            let d: Int = d
                .trim()
                .parse()
                .map_err(|_| mukai_wbn::Error::Parse(format!("invalid integer {d:?}")))?;
            let sol = if four {
                arith::pell4_fundamental(&d)?
            } else {
                arith::pell_fundamental(&d)?
            };
            let elapsed = started.elapsed().as_millis();
            if out.json {
                let mut map = base_record("pell", elapsed);
                map.insert("d".into(), json!(d.to_string()));
                map.insert("form".into(), json!(if four { "unit-4" } else { "unit-1" }));
                map.insert("t".into(), json!(sol.t.to_string()));
                map.insert("u".into(), json!(sol.u.to_string()));
                emit(&Value::Object(map));
            } else {
                println!("t={} u={}", sol.t, sol.u);
            }
            Ok(0)
        }
        Command::EmbedU { form, out } => {
            let started = Instant::now();
            let parts: Vec<&str> = form.split(',').collect();
            if parts.len() != 3 {
                return Err(mukai_wbn::Error::Parse(
                    "form must be \"2a,b,2c\" (three Gram entries)".into(),
                ));
            }
            let g11: Int = parts[0]
                .trim()
                .parse()
                .map_err(|_| mukai_wbn::Error::Parse(format!("invalid entry {:?}", parts[0])))?;
            let g12: Int = parts[1]
                .trim()
                .parse()
                .map_err(|_| mukai_wbn::Error::Parse(format!("invalid entry {:?}", parts[1])))?;
            let g22: Int = parts[2]
                .trim()
                .parse()
                .map_err(|_| mukai_wbn::Error::Parse(format!("invalid entry {:?}", parts[2])))?;
            let form = BinaryEvenForm::from_gram(&g11, &g12, &g22)?;
            let class = form.classify();
            let elapsed = started.elapsed().as_millis();
            let (verdict, detail) = match &class {
                FormClass::Square(n) => ("square", Some(n.to_string())),
                FormClass::Nonsquare => ("nonsquare", None),
                FormClass::Definite => ("definite", None),
            };
            let embedding = match class {
                FormClass::Square(_) => Some(embed_into_u(&form)?),
                _ => None,
            };
            if out.json {
                let mut map = base_record("embed-u", elapsed);
                map.insert("delta".into(), json!(form.delta().to_string()));
                map.insert("classification".into(), json!(verdict));
                if let Some(n) = detail {
                    map.insert("sqrt_delta".into(), json!(n));
                }
                if let Some(e) = &embedding {
                    map.insert(
                        "embedding".into(),
                        json!({
                            "s": e.s.to_string(),
                            "x": e.x.to_string(),
                            "t": e.t.to_string(),
                            "y": e.y.to_string(),
                        }),
                    );
                }
                emit(&Value::Object(map));
            } else {
                println!("delta: {} ({verdict})", form.delta());
                match &embedding {
                    Some(e) => println!("embedding: (s,x,t,y)=({},{},{},{})", e.s, e.x, e.t, e.y),
                    None => println!("no embedding into U"),
                }
            }
            Ok(0)
        }
    }
}

fn describe_status(verdict: &WbnVerdict) -> (&'static str, Option<&'static str>, bool) {
    match &verdict.status {
        WbnStatus::Holds { reason, decisive } => ("holds", Some(reason.tag()), *decisive),
        WbnStatus::Fails => ("fails", None, true),
        WbnStatus::Undetermined => ("undetermined", None, false),
    }
}

fn print_wbn_text(
    surface: &Path,
    vector: &str,
    coord_box: u32,
    verdict: &WbnVerdict,
    elapsed: u128,
) {
    let (status, reason, decisive) = describe_status(verdict);
    match reason {
        Some(reason) => println!("status: {status} ({reason}, decisive={decisive})"),
        None => println!("status: {status}"),
    }
    if let Some(p) = &verdict.profile {
        println!("profile: h0={} h1={} h2={}", p.h0, p.h1, p.h2);
    }
    match &verdict.certificate {
        Some(Certificate::Decomposition(dec)) => println!(
            "certificate: v1=[{}] v2=[{}] l1={} l2={}",
            dec.v1, dec.v2, dec.l1, dec.l2
        ),
        Some(Certificate::TwistedRank { eta }) => {
            println!("certificate: twisted-rank eta=({eta})");
        }
        Some(Certificate::RankOneTwist { eta, colength }) => {
            println!("certificate: rank-one-twist eta=({eta}) colength={colength}");
        }
        None => {}
    }
    for w in &verdict.warnings {
        println!("warning: {w}");
    }
    println!("box: {coord_box}");
    println!("vector: {}", vector.trim());
    println!("surface: {}", surface.display());
    println!("elapsed_ms: {elapsed}");
}
