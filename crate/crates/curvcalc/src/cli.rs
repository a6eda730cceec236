//! Command-line front end.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use curvcalc_core::adiabatic::{self, Profile, WarpFunction};
use curvcalc_core::complex::{Simplex, VertexId};
use curvcalc_core::curvature::{self, Method};
use curvcalc_core::euler::{self, Rounding};
use curvcalc_core::morse::{self, Direction};
use curvcalc_core::pushforward;
use curvcalc_core::sampling::{Estimate, SampleConfig};
use curvcalc_core::subdivision::{barycentric_subdivide, signature_census};
use curvcalc_core::{product, ConstructibleFunction, PlFunction};
use serde_json::{json, Map, Value};

use crate::document::{render_rational, ComplexDocument};
use crate::error::{CliError, Result};
use crate::function::{parse_function, parse_pieces, parse_product_function, render_function};
use crate::mapfile::parse_map;
use crate::render::{float, json_float};

#[derive(Debug, Parser)]
#[command(name = "curvcalc", version, about = "Euler calculus and curvature calculus on simplicial complexes")]
pub struct Cli {
    /// Seed for every Monte Carlo estimate.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Directions per Monte Carlo estimate.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub samples: u64,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Grid points for the adiabatic computations.
    #[arg(long, global = true, default_value_t = adiabatic::DEFAULT_GRID)]
    pub grid: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Exact,
    Mc,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Floor,
    Ceil,
    FloorOracle,
    CeilOracle,
    Tentative,
    Weights,
    Simple,
    Curvature,
    Final,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check face closure; report counts, or the star and link of a vertex.
    Validate {
        complex: PathBuf,
        #[arg(long)]
        vertex: Option<String>,
    },
    /// Integrate the complex's vertex values, or a function file.
    Integrate {
        complex: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Constructible function (JSON) for `simple`.
        #[arg(long)]
        function: Option<PathBuf>,
        /// Pieces (JSON) for `final`.
        #[arg(long)]
        pieces: Option<PathBuf>,
        /// Resolution for the oracle kinds; defaults to the value denominators' lcm.
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, value_enum, default_value = "exact")]
        method: MethodArg,
        #[arg(long)]
        equilateral: bool,
    },
    /// Barycentric subdivision, or the signature census of a simplex.
    Subdivide {
        #[arg(required_unless_present = "census")]
        complex: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        times: usize,
        /// Dimension of the simplex whose first subdivision to census.
        #[arg(long)]
        census: Option<usize>,
    },
    /// Angle curvature at every vertex, or one excess angle.
    Curvature {
        complex: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        method: MethodArg,
        #[arg(long)]
        equilateral: bool,
        /// Comma-separated simplex for a single excess angle.
        #[arg(long, requires = "vertex")]
        simplex: Option<String>,
        #[arg(long, requires = "simplex")]
        vertex: Option<String>,
    },
    /// Total curvature against the Euler characteristic.
    GaussBonnetCheck {
        complex: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        method: MethodArg,
        #[arg(long)]
        equilateral: bool,
    },
    /// Curvature as the average Morse index of linear functions.
    MorseCurvature {
        complex: PathBuf,
        #[arg(long)]
        equilateral: bool,
    },
    /// Morse indices for one direction.
    MorseIndex {
        complex: PathBuf,
        /// Comma-separated direction vector.
        #[arg(long, allow_hyphen_values = true)]
        direction: String,
        #[arg(long)]
        equilateral: bool,
    },
    /// Push a constructible function forward along a simplicial map.
    Pushforward {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        map: PathBuf,
        /// Defaults to the constant function 1.
        #[arg(long)]
        function: Option<PathBuf>,
        /// Report the fiber Euler characteristic over every target simplex.
        #[arg(long)]
        fibers: bool,
        /// A second map out of the target, to check functoriality.
        #[arg(long, requires = "then_target")]
        then: Option<PathBuf>,
        #[arg(long, requires = "then")]
        then_target: Option<PathBuf>,
    },
    /// Direct and iterated integrals over a product, or the curvature product rule.
    FubiniCheck {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        /// Defaults to the constant function 1.
        #[arg(long)]
        function: Option<PathBuf>,
        #[arg(long)]
        curvature: bool,
    },
    /// Curvature of a surface of revolution pushed to its axis as fibers shrink.
    Adiabatic {
        /// sphere, cylinder, cone, torus, paraboloid, or file:<csv of t,f>.
        #[arg(long, default_value = "sphere")]
        profile: String,
        #[arg(long, value_delimiter = ',', default_value = "0,0.5,0.9,0.99")]
        eps: Vec<f64>,
        /// Identify the ends of a file profile.
        #[arg(long)]
        periodic: bool,
        /// Compare the pushforward with the axis's own curvature.
        #[arg(long)]
        nonsplit: bool,
    },
}

/// Every library operation with a command line that reaches it. Paths are
/// relative to the fixture directory.
pub const OPERATIONS: &[(&str, &[&str])] = &[
    ("validate", &["validate", "octahedron.txt"]),
    ("star/link", &["validate", "octahedron.txt", "--vertex", "n"]),
    ("parse/serialize", &["subdivide", "id_edge.txt", "--times", "0"]),
    ("barycentric_subdivide", &["subdivide", "id_edge.txt"]),
    ("signature_census", &["subdivide", "--census", "2"]),
    ("product", &["fubini-check", "--left", "segment.txt", "--right", "hollow_triangle.txt"]),
    ("chi_c", &["integrate", "segment.txt", "--kind", "simple", "--function", "open_edge.json"]),
    ("euler_integral", &["integrate", "segment.txt", "--kind", "simple", "--function", "open_interval.json"]),
    ("floor_integral", &["integrate", "id_edge.txt", "--kind", "floor"]),
    ("ceil_integral", &["integrate", "id_edge.txt", "--kind", "ceil"]),
    ("floor_integral_oracle_1d", &["integrate", "id_edge.txt", "--kind", "floor-oracle", "--n", "2"]),
    ("tentative_integral", &["integrate", "id_edge.txt", "--kind", "tentative"]),
    ("weight", &["integrate", "triangle.txt", "--kind", "weights"]),
    ("excess_angle", &["curvature", "triangle.txt", "--simplex", "a,b,c", "--vertex", "a"]),
    ("banchoff_curvature", &["curvature", "octahedron.txt"]),
    ("equilateral_embedding", &["curvature", "triangle.txt", "--equilateral", "--method", "mc", "--samples", "2000"]),
    ("curvature_integral", &["integrate", "octahedron.txt", "--kind", "curvature"]),
    ("final_integral", &["integrate", "segment.txt", "--kind", "final", "--pieces", "open_interval.pieces.json"]),
    ("gauss_bonnet", &["gauss-bonnet-check", "octahedron.txt"]),
    ("morse_index", &["morse-index", "octahedron.txt", "--direction", "0.3,0.5,0.8"]),
    ("chi_sum_check", &["morse-index", "octahedron.txt", "--direction", "0.3,0.5,0.8", "--format", "json"]),
    ("bk_curvature_measure", &["morse-curvature", "octahedron.txt", "--samples", "2000"]),
    ("pushforward", &["pushforward", "--source", "octahedron.txt", "--target", "path.txt", "--map", "height.map"]),
    ("fiber_euler", &["pushforward", "--source", "octahedron.txt", "--target", "path.txt", "--map", "height.map", "--fibers"]),
    (
        "check_functoriality",
        &[
            "pushforward", "--source", "octahedron.txt", "--target", "path.txt", "--map", "height.map", "--then",
            "collapse.map", "--then-target", "point.txt",
        ],
    ),
    ("fubini_chi", &["fubini-check", "--left", "triangle.txt", "--right", "segment.txt", "--function", "product_cells.json"]),
    ("fubini_curvature", &["fubini-check", "--left", "segment.txt", "--right", "segment.txt", "--curvature", "--samples", "2000"]),
    ("curvature_density", &["adiabatic", "--profile", "cone", "--eps", "0", "--grid", "11"]),
    ("adiabatic_sweep", &["adiabatic", "--profile", "sphere", "--grid", "101", "--format", "json"]),
    ("warp_from_samples", &["adiabatic", "--profile", "file:paraboloid.csv", "--format", "json"]),
    ("nonsplit_demo", &["adiabatic", "--profile", "sphere", "--grid", "101", "--nonsplit"]),
];

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn load(path: &Path) -> Result<ComplexDocument> {
    ComplexDocument::parse(&read(path)?)
}

fn method(m: MethodArg, cli: &Cli) -> Method {
    match m {
        MethodArg::Exact => Method::Exact,
        MethodArg::Mc => Method::MonteCarlo(SampleConfig::new(cli.samples, cli.seed)),
    }
}

fn simplex_list(doc: &ComplexDocument, list: &str) -> Result<Simplex> {
    let names: Vec<&str> = list.split(',').map(str::trim).collect();
    doc.simplex(&names)
}

fn simplices_json(doc: &ComplexDocument, simplices: impl Iterator<Item = Simplex>) -> Value {
    Value::Array(simplices.map(|s| json!(doc.simplex_names(&s))).collect())
}

fn estimate_json(e: Estimate) -> Value {
    json!({ "value": json_float(e.value), "stderr": json_float(e.stderr) })
}

fn atoms_csv(doc: &ComplexDocument, atoms: &BTreeMap<VertexId, Estimate>) -> String {
    let mut out = String::from("vertex,kappa,stderr\n");
    for (v, k) in atoms {
        writeln!(out, "{},{},{}", doc.name(*v), float(k.value), float(k.stderr)).unwrap();
    }
    out
}

fn atoms_json(doc: &ComplexDocument, atoms: &BTreeMap<VertexId, Estimate>) -> Vec<Value> {
    atoms
        .iter()
        .map(|(v, k)| json!({ "vertex": doc.name(*v), "kappa": json_float(k.value), "stderr": json_float(k.stderr) }))
        .collect()
}

fn exact_value(format: Format, v: &curvcalc_core::Rational) -> String {
    match format {
        Format::Json => json!({ "value": render_rational(v) }).to_string(),
        Format::Csv => format!("value\n{}", render_rational(v)),
    }
}

/// Names for subdivided complexes: each new vertex is labelled by the
/// vertices of the simplex it subdivides.
fn subdivided_document(doc: &ComplexDocument, times: usize) -> Result<ComplexDocument> {
    let mut doc = doc.clone();
    for _ in 0..times {
        let zero = PlFunction::constant(doc.complex(), num_traits::Zero::zero());
        let alpha_in = doc.alpha().cloned().unwrap_or(zero);
        let sd = barycentric_subdivide(doc.complex(), &alpha_in)?;
        let names = sd.carriers.iter().map(|s| doc.label(s)).collect();
        let coords = doc.coordinates().map(|c| {
            sd.carriers
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    let n = s.len() as f64;
                    let dim = c.values().next().map_or(0, Vec::len);
                    let mut p = vec![0.0; dim];
                    for v in s.vertices() {
                        p.iter_mut().zip(&c[v]).for_each(|(a, b)| *a += b / n);
                    }
                    (VertexId(i as u32), p)
                })
                .collect()
        });
        let alpha = doc.alpha().map(|_| sd.alpha.clone());
        doc = ComplexDocument::new(names, sd.complex, coords, alpha)?;
    }
    Ok(doc)
}

fn load_warp(profile: &str, grid: usize, periodic: bool) -> Result<WarpFunction> {
    if let Some(path) = profile.strip_prefix("file:") {
        let text = read(Path::new(path))?;
        let (mut t, mut f) = (Vec::new(), Vec::new());
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || (i == 0 && line.starts_with(|c: char| c.is_alphabetic())) {
                continue;
            }
            let parse = |s: Option<&str>| s.and_then(|x| x.trim().parse::<f64>().ok());
            let mut parts = line.split(',');
            match (parse(parts.next()), parse(parts.next()), parts.next()) {
                (Some(a), Some(b), None) => {
                    t.push(a);
                    f.push(b);
                }
                _ => return Err(CliError::parse(i + 1, "expected 't,f'")),
            }
        }
        return Ok(WarpFunction::from_samples(&t, &f, periodic)?);
    }
    let p = Profile::from_name(profile).ok_or_else(|| CliError::Usage(format!("unknown profile {profile:?}")))?;
    Ok(p.warp(grid)?)
}

fn execute(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Validate { complex, vertex } => {
            let doc = load(complex)?;
            let c = doc.complex();
            c.validate()?;
            let format = cli.format.unwrap_or(Format::Json);
            match vertex {
                None => Ok(match format {
                    Format::Json => json!({
                        "valid": true,
                        "vertices": c.vertices().len(),
                        "simplices": c.len(),
                        "dimension": c.dim(),
                        "f_vector": c.f_vector(),
                        "euler_characteristic": c.euler_characteristic(),
                    })
                    .to_string(),
                    Format::Csv => format!(
                        "vertices,simplices,dimension,euler_characteristic\n{},{},{},{}",
                        c.vertices().len(),
                        c.len(),
                        c.dim().map_or(-1, |d| d as i64),
                        c.euler_characteristic()
                    ),
                }),
                Some(name) => {
                    let v = doc.id(name)?;
                    let star = c.star(v)?;
                    let link = c.link(v)?;
                    let w = euler::weight(c, v)?;
                    Ok(match format {
                        Format::Json => json!({
                            "vertex": name,
                            "star": simplices_json(&doc, star.into_iter()),
                            "link": simplices_json(&doc, link.simplices().cloned()),
                            "weight": render_rational(&w),
                        })
                        .to_string(),
                        Format::Csv => {
                            let mut out = String::from("part,simplex\n");
                            for s in &star {
                                writeln!(out, "star,{}", doc.label(s)).unwrap();
                            }
                            for s in link.simplices() {
                                writeln!(out, "link,{}", doc.label(s)).unwrap();
                            }
                            out
                        }
                    })
                }
            }
        }
        Command::Integrate { complex, kind, function, pieces, n, method: m, equilateral } => {
            let doc = load(complex)?;
            let c = doc.complex();
            let format = cli.format.unwrap_or(Format::Json);
            let oracle = |rounding| -> Result<String> {
                let alpha = doc.require_alpha()?;
                let n = match n {
                    Some(n) => *n,
                    None => num_traits::ToPrimitive::to_u64(&euler::value_denominator_lcm(alpha))
                        .ok_or_else(|| CliError::Usage("denominators too large; pass --n".into()))?,
                };
                Ok(exact_value(format, &euler::rounded_integral_1d(c, alpha, n, rounding)?))
            };
            match kind {
                Kind::Floor => Ok(exact_value(format, &euler::floor_integral(c, doc.require_alpha()?)?)),
                Kind::Ceil => Ok(exact_value(format, &euler::ceil_integral(c, doc.require_alpha()?)?)),
                Kind::FloorOracle => oracle(Rounding::Floor),
                Kind::CeilOracle => oracle(Rounding::Ceil),
                Kind::Tentative => Ok(exact_value(format, &euler::tentative_integral(c, doc.require_alpha()?)?)),
                Kind::Simple => {
                    let path = function.as_ref().ok_or_else(|| CliError::Usage("--kind simple needs --function".into()))?;
                    let s = parse_function(&read(path)?, &doc)?;
                    Ok(exact_value(format, &s.euler_integral()))
                }
                Kind::Weights => {
                    let w = euler::weights(c);
                    Ok(match format {
                        Format::Json => {
                            let m: Map<String, Value> =
                                w.iter().map(|(v, x)| (doc.name(*v).to_string(), json!(render_rational(x)))).collect();
                            json!({ "weights": m }).to_string()
                        }
                        Format::Csv => {
                            let mut out = String::from("vertex,weight\n");
                            for (v, x) in &w {
                                writeln!(out, "{},{}", doc.name(*v), render_rational(x)).unwrap();
                            }
                            out
                        }
                    })
                }
                Kind::Curvature | Kind::Final => {
                    let e = doc.embedding(*equilateral)?;
                    let est = if *kind == Kind::Curvature {
                        curvature::curvature_integral(doc.require_alpha()?, &e, method(*m, cli))?
                    } else {
                        let path = pieces.as_ref().ok_or_else(|| CliError::Usage("--kind final needs --pieces".into()))?;
                        curvature::final_integral(&e, &parse_pieces(&read(path)?, &doc)?, method(*m, cli))?
                    };
                    Ok(match format {
                        Format::Json => estimate_json(est).to_string(),
                        Format::Csv => format!("value,stderr\n{},{}", float(est.value), float(est.stderr)),
                    })
                }
            }
        }
        Command::Subdivide { complex, times, census } => {
            if let Some(n) = census {
                if *n > 12 {
                    return Err(CliError::Usage("census supports dimensions up to 12".into()));
                }
                let census = signature_census(*n);
                return Ok(match cli.format.unwrap_or(Format::Csv) {
                    Format::Csv => {
                        let mut out = String::from("signature,count\n");
                        for (s, k) in &census {
                            writeln!(out, "\"{s}\",{k}").unwrap();
                        }
                        out
                    }
                    Format::Json => {
                        let m: Map<String, Value> = census.iter().map(|(s, k)| (s.to_string(), json!(k))).collect();
                        Value::Object(m).to_string()
                    }
                });
            }
            let doc = load(complex.as_ref().expect("required by clap"))?;
            Ok(subdivided_document(&doc, *times)?.to_string())
        }
        Command::Curvature { complex, method: m, equilateral, simplex, vertex } => {
            let doc = load(complex)?;
            let e = doc.embedding(*equilateral)?;
            let format = cli.format.unwrap_or(Format::Csv);
            if let (Some(s), Some(v)) = (simplex, vertex) {
                let s = simplex_list(&doc, s)?;
                let est = curvature::excess_angle(&e, &s, doc.id(v)?, method(*m, cli))?;
                return Ok(match format {
                    Format::Csv => format!("simplex,vertex,excess,stderr\n{},{v},{},{}", doc.label(&s), float(est.value), float(est.stderr)),
                    Format::Json => estimate_json(est).to_string(),
                });
            }
            let kappa = curvature::curvature_measure(&e, method(*m, cli))?;
            Ok(match format {
                Format::Csv => atoms_csv(&doc, &kappa.atoms),
                Format::Json => {
                    json!({ "atoms": atoms_json(&doc, &kappa.atoms), "total": estimate_json(kappa.total()) }).to_string()
                }
            })
        }
        Command::GaussBonnetCheck { complex, method: m, equilateral } => {
            let doc = load(complex)?;
            let r = curvature::gauss_bonnet_check(&doc.embedding(*equilateral)?, method(*m, cli))?;
            let bound = 4.0 * r.total.stderr + 1e-9;
            Ok(match cli.format.unwrap_or(Format::Json) {
                Format::Json => json!({
                    "sum": json_float(r.total.value),
                    "chi": r.chi,
                    "bound": json_float(bound),
                    "deviation": json_float(r.deviation()),
                    "within_bound": r.deviation() <= bound,
                })
                .to_string(),
                Format::Csv => format!(
                    "sum,chi,bound,deviation\n{},{},{},{}",
                    float(r.total.value),
                    r.chi,
                    float(bound),
                    float(r.deviation())
                ),
            })
        }
        Command::MorseCurvature { complex, equilateral } => {
            let doc = load(complex)?;
            let m = morse::bk_curvature_measure(&doc.embedding(*equilateral)?, SampleConfig::new(cli.samples, cli.seed))?;
            Ok(match cli.format.unwrap_or(Format::Csv) {
                Format::Csv => atoms_csv(&doc, &m.measure.atoms),
                Format::Json => json!({
                    "atoms": atoms_json(&doc, &m.measure.atoms),
                    "total": estimate_json(m.measure.total()),
                    "tie_rate": json_float(m.tie_rate()),
                })
                .to_string(),
            })
        }
        Command::MorseIndex { complex, direction, equilateral } => {
            let doc = load(complex)?;
            let e = doc.embedding(*equilateral)?;
            let x = direction
                .split(',')
                .map(|s| s.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| CliError::Usage(format!("bad direction {direction:?}")))?;
            let x = Direction::new(x)?;
            let sum = morse::chi_sum_check(&e, &x)?;
            let report = morse::morse_indices(&e, &x)?;
            Ok(match cli.format.unwrap_or(Format::Csv) {
                Format::Csv => {
                    let mut out = String::from("vertex,index\n");
                    for (v, i) in &report.indices {
                        writeln!(out, "{},{i}", doc.name(*v)).unwrap();
                    }
                    out
                }
                Format::Json => {
                    let m: Map<String, Value> = report.indices.iter().map(|(v, i)| (doc.name(*v).to_string(), json!(i))).collect();
                    json!({ "indices": m, "sum": sum, "euler_characteristic": doc.complex().euler_characteristic() })
                        .to_string()
                }
            })
        }
        Command::Pushforward { source, target, map, function, fibers, then, then_target } => {
            let src = load(source)?;
            let tgt = load(target)?;
            let f = parse_map(&read(map)?, &src, &tgt)?;
            let s = match function {
                Some(p) => parse_function(&read(p)?, &src)?,
                None => ConstructibleFunction::one(src.complex()),
            };
            if *fibers {
                let mut out = String::from("simplex,chi_c\n");
                for tau in tgt.complex().simplices() {
                    writeln!(out, "{},{}", tgt.label(tau), pushforward::fiber_euler(&f, tau)?).unwrap();
                }
                return Ok(out);
            }
            let pushed = pushforward::pushforward(&f, &s)?;
            if let (Some(g_path), Some(third)) = (then, then_target) {
                let fin = load(third)?;
                let g = parse_map(&read(g_path)?, &tgt, &fin)?;
                let ok = pushforward::check_functoriality(&g, &f, &s)?;
                let composite = pushforward::pushforward(&g.compose(&f)?, &s)?;
                let rendered: Value = serde_json::from_str(&render_function(&composite, &fin))?;
                return Ok(json!({ "functorial": ok, "composite": rendered }).to_string());
            }
            Ok(render_function(&pushed, &tgt))
        }
        Command::FubiniCheck { left, right, function, curvature: curv } => {
            let l = load(left)?;
            let r = load(right)?;
            if *curv {
                let rows = pushforward::fubini_curvature(
                    &l.embedding(false)?,
                    &r.embedding(false)?,
                    SampleConfig::new(cli.samples, cli.seed),
                )?;
                return Ok(match cli.format.unwrap_or(Format::Csv) {
                    Format::Csv => {
                        let mut out = String::from("left,right,product,product_stderr,factors,factors_stderr\n");
                        for row in &rows {
                            writeln!(
                                out,
                                "{},{},{},{},{},{}",
                                l.name(row.vertex.0),
                                r.name(row.vertex.1),
                                float(row.product.value),
                                float(row.product.stderr),
                                float(row.factors.value),
                                float(row.factors.stderr)
                            )
                            .unwrap();
                        }
                        out
                    }
                    Format::Json => Value::Array(
                        rows.iter()
                            .map(|row| {
                                json!({
                                    "left": l.name(row.vertex.0),
                                    "right": r.name(row.vertex.1),
                                    "product": estimate_json(row.product),
                                    "factors": estimate_json(row.factors),
                                    "agree": row.agrees(4.0),
                                })
                            })
                            .collect(),
                    )
                    .to_string(),
                });
            }
            let carrier = product::product(l.complex(), r.complex());
            let s = match function {
                Some(p) => parse_product_function(&read(p)?, &l, &r, &carrier)?,
                None => ConstructibleFunction::one(&carrier),
            };
            let t = pushforward::fubini_chi(&carrier, &s)?;
            Ok(match cli.format.unwrap_or(Format::Json) {
                Format::Json => json!({
                    "direct": render_rational(&t.direct),
                    "left_first": render_rational(&t.left_first),
                    "right_first": render_rational(&t.right_first),
                    "agree": t.agrees(),
                })
                .to_string(),
                Format::Csv => format!(
                    "direct,left_first,right_first\n{},{},{}",
                    render_rational(&t.direct),
                    render_rational(&t.left_first),
                    render_rational(&t.right_first)
                ),
            })
        }
        Command::Adiabatic { profile, eps, periodic, nonsplit } => {
            let w = load_warp(profile, cli.grid, *periodic)?;
            if *nonsplit {
                let r = adiabatic::nonsplit_demo(&w)?;
                let m = &r.pushforward;
                return Ok(json!({
                    "pushforward": {
                        "interior_mass": json_float(m.interior_mass),
                        "atom_a": json_float(m.atom_a),
                        "atom_b": json_float(m.atom_b),
                        "total": json_float(m.total()),
                    },
                    "base": { "interior_mass": 0, "atom_a": json_float(r.base_atoms.0), "atom_b": json_float(r.base_atoms.1) },
                    "interior_support": json_float(r.interior_support),
                    "not_absolutely_continuous": r.not_absolutely_continuous,
                })
                .to_string());
            }
            let rows = adiabatic::adiabatic_sweep(&w, eps)?;
            Ok(match cli.format.unwrap_or(Format::Csv) {
                Format::Csv => {
                    let mut out = String::from("eps,t,lambda\n");
                    for row in &rows {
                        for (t, l) in row.measure.t.iter().zip(&row.measure.density) {
                            writeln!(out, "{},{},{}", float(row.eps), float(*t), float(*l)).unwrap();
                        }
                    }
                    out
                }
                Format::Json => Value::Array(
                    rows.iter()
                        .map(|row| {
                            json!({
                                "eps": json_float(row.eps),
                                "interior_mass": json_float(row.measure.interior_mass),
                                "atom_a": json_float(row.measure.atom_a),
                                "atom_b": json_float(row.measure.atom_b),
                                "total": json_float(row.measure.total()),
                            })
                        })
                        .collect(),
                )
                .to_string(),
            })
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code: 0 on success, 2 on any error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                0
            } else {
                let _ = write!(err, "{e}");
                2
            };
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            if !text.ends_with('\n') {
                let _ = out.write_all(b"\n");
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error[{}]: {e}", e.code());
            2
        }
    }
}

/// Subcommand names, from the parser definition.
pub fn subcommands() -> Vec<String> {
    use clap::CommandFactory;
    Cli::command().get_subcommands().map(|c| c.get_name().to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parser_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
