use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use linarr::arrangement::{collinear_triples_report, multiplicity_predicates, parse_arrangement};
use linarr::boundary::{b1_boundary_u, boundary_cover_classifier, build_graph, delta_boundary_f};
use linarr::jumploci::{count_torsion_points, MilnorFiberGroup, DEFAULT_CHARACTER_BUDGET};
use linarr::multinet::{is_net, pointed_lines, search_multinets, SearchOptions};
use linarr::osalgebra::{aomoto_h1_dim, beta_p, build_os_truncation, AomotoClass, FieldSpec};
use linarr::pi1::{complement_group, Chart};
use linarr::report::{falk_pair_demo, run_full_report, ReportOptions, Section, SCHEMA_VERSION};
use linarr::{fixtures, Arrangement, ArrangementInput, Error, IntersectionLattice};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "linarr", version, about = "Exact invariants of line arrangements in CP²")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Intersection lattice, multiplicity census and collinearity of high points
    Lattice {
        file: PathBuf,
        /// Also report the multiplicity predicates for this r
        #[arg(long)]
        order: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Orlik–Solomon resonance: β_p and the Aomoto complex at the diagonal class
    Resonance {
        file: PathBuf,
        /// Primes to test (repeatable)
        #[arg(long = "field", default_values_t = [2u64, 3, 5])]
        fields: Vec<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive search for 3- and 4-multinets
    Multinets {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_weight: u32,
        #[arg(long)]
        nets_only: bool,
        #[arg(long)]
        json: bool,
    },
    /// Presentation of π₁ of the projective complement
    Pi1 {
        file: PathBuf,
        /// a,b,c for [[1,a,0],[0,1,0],[b,c,1]] or nine entries row by row
        #[arg(long)]
        chart: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Monodromy of the Milnor fiber, computed and predicted
    Milnor {
        file: PathBuf,
        #[arg(long)]
        chart: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_weight: u32,
        #[arg(long)]
        json: bool,
    },
    /// Incidence graph, boundary manifold and boundary of the Milnor fiber
    Boundary {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Count characters η with η^r = 1 and depth ≥ s
    CvCount {
        file: PathBuf,
        #[arg(long)]
        order: u64,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = SpaceArg::F)]
        space: SpaceArg,
        #[arg(long, default_value_t = DEFAULT_CHARACTER_BUDGET)]
        budget: u64,
        #[arg(long)]
        chart: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Everything at once
    Report {
        file: PathBuf,
        /// Scan characters of this order on U and F
        #[arg(long)]
        order: Option<u64>,
        #[arg(long)]
        chart: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_weight: u32,
        #[arg(long)]
        json: bool,
    },
    /// The two Falk arrangements side by side
    FalkDemo {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    #[value(name = "U")]
    U,
    #[value(name = "F")]
    F,
}

fn fail(message: String) -> Error {
    Error::Validation(message)
}

/// A path, or the name of a built-in fixture.
fn load(file: &Path) -> Result<ArrangementInput, Error> {
    let label = file.file_stem().and_then(|s| s.to_str()).unwrap_or("arrangement").to_string();
    match std::fs::read_to_string(file) {
        Ok(text) => parse_arrangement(&text, &label),
        Err(e) => fixtures::by_name(&file.to_string_lossy())
            .ok_or_else(|| fail(format!("cannot read {}: {e}", file.display()))),
    }
}

fn realized(input: &ArrangementInput, what: &str) -> Result<Arrangement, Error> {
    input
        .realized()
        .cloned()
        .ok_or_else(|| fail(format!("{what} needs line coefficients; {} is incidence-only", input.label())))
}

fn parse_chart(text: Option<&str>) -> Result<Option<Chart>, Error> {
    let Some(text) = text else { return Ok(None) };
    let v: Vec<i64> = text
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| fail(format!("chart entry {t:?} is not an integer"))))
        .collect::<Result<_, _>>()?;
    match v.len() {
        3 => Ok(Some([[1, v[0], 0], [0, 1, 0], [v[1], v[2], 1]])),
        9 => Ok(Some([[v[0], v[1], v[2]], [v[3], v[4], v[5]], [v[6], v[7], v[8]]])),
        k => Err(fail(format!("a chart takes 3 or 9 integers, got {k}"))),
    }
}

fn search_options(max_weight: u32) -> SearchOptions {
    SearchOptions {
        max_weight,
        ..SearchOptions::default()
    }
}

fn emit(json: bool, value: &Value, text: impl FnOnce() -> String) {
    if json {
        let mut value = value.clone();
        if let Some(obj) = value.as_object_mut() {
            obj.entry("schema_version").or_insert(json!(SCHEMA_VERSION));
        }
        println!("{}", serde_json::to_string_pretty(&value).expect("json serializes"));
    } else {
        print!("{}", text());
    }
}

fn lattice_json(label: &str, lat: &IntersectionLattice) -> Value {
    json!({
        "label": label,
        "n": lat.n(),
        "census": lat.census(),
        "flats": lat.flats(),
    })
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Lattice { file, order, json } => {
            let input = load(&file)?;
            let lat = input.lattice()?;
            let collinear = collinear_triples_report(&lat);
            let predicates = order.map(|r| multiplicity_predicates(&lat, r)).transpose()?;
            let mut v = lattice_json(input.label(), &lat);
            v["common_line_exists"] = json!(collinear.common_line_exists);
            v["high_flats_per_line"] = json!(collinear.per_line);
            if let Some(p) = &predicates {
                v["multiplicity_predicates"] = json!(p);
            }
            emit(json, &v, || {
                let mut s = format!("{}: {} lines, census {:?}\n", input.label(), lat.n(), lat.census());
                for f in lat.flats() {
                    s += &format!("  {:?}", f.lines);
                    if let Some(p) = f.point {
                        s += &format!(" at {p:?}");
                    }
                    s += "\n";
                }
                s += &format!("common line through all points of multiplicity ≥ 3: {}\n", collinear.common_line_exists);
                if let Some(p) = &predicates {
                    s += &format!("{p:?}\n");
                }
                s
            });
        }
        Command::Resonance { file, fields, json } => {
            let input = load(&file)?;
            let lat = input.lattice()?;
            let mut rows = Vec::new();
            for &p in &fields {
                let field = FieldSpec::prime(p)?;
                let os = build_os_truncation(&lat, field);
                let diag = aomoto_h1_dim(&os, &AomotoClass::diagonal(field, lat.n()))?;
                rows.push(json!({
                    "p": p,
                    "beta": beta_p(&lat, p)?,
                    "dim_a1": os.dim1(),
                    "dim_a2": os.dim2(),
                    "diagonal_h1": diag,
                }));
            }
            let os = build_os_truncation(&lat, FieldSpec::Rationals);
            let v = json!({
                "label": input.label(),
                "n": lat.n(),
                "dim_a2": os.dim2(),
                "beta": rows,
            });
            emit(json, &v, || {
                let mut s = format!("{}: dim A¹ = {}, dim A² = {}\n", input.label(), os.dim1(), os.dim2());
                for r in &rows {
                    s += &format!("  β_{} = {}, dim H¹(A, ·σ) = {}\n", r["p"], r["beta"], r["diagonal_h1"]["dim"]);
                }
                s
            });
        }
        Command::Multinets { file, max_weight, nets_only, json } => {
            let input = load(&file)?;
            let lat = input.lattice()?;
            let opts = search_options(max_weight);
            let mut found = search_multinets(&lat, 3, &opts)?;
            found.extend(search_multinets(&lat, 4, &opts)?);
            found.retain(|m| !nets_only || is_net(m, &lat));
            let rows: Vec<Value> = found
                .iter()
                .map(|m| {
                    json!({
                        "k": m.k(),
                        "d": m.weight(),
                        "classes": m.classes,
                        "mult": m.mult,
                        "base_locus": m.base_locus,
                        "reduced": m.is_reduced(),
                        "net": is_net(m, &lat),
                        "pointed": pointed_lines(m, &lat),
                    })
                })
                .collect();
            let v = json!({ "label": input.label(), "multinets": rows });
            emit(json, &v, || {
                let mut s = format!("{}: {} multinet(s)\n", input.label(), found.len());
                for m in &found {
                    s += &format!(
                        "  ({}, {}) classes {:?} mult {:?}{}{}\n",
                        m.k(),
                        m.weight(),
                        m.classes,
                        m.mult,
                        if m.is_reduced() { " reduced" } else { "" },
                        if is_net(m, &lat) { " net" } else { "" }
                    );
                }
                s
            });
        }
        Command::Pi1 { file, chart, json } => {
            let input = load(&file)?;
            let arr = realized(&input, "pi1")?;
            let lat = input.lattice()?;
            let (wiring, pres) = complement_group(&arr, &lat, parse_chart(chart.as_deref())?)?;
            let v = json!({
                "label": input.label(),
                "chart": wiring.chart,
                "generators": pres.generators,
                "relators": pres.relators,
            });
            emit(json, &v, || {
                let mut s = format!(
                    "{}: {} generators, {} relators, chart {:?}\n",
                    input.label(),
                    pres.num_generators(),
                    pres.num_relators(),
                    wiring.chart
                );
                for r in &pres.relators {
                    let word: Vec<String> = r
                        .iter()
                        .map(|&l| if l > 0 { format!("x{}", l - 1) } else { format!("x{}⁻¹", -l - 1) })
                        .collect();
                    s += &format!("  {}\n", word.join(" "));
                }
                s
            });
        }
        Command::Milnor { file, chart, max_weight, json } => {
            let input = load(&file)?;
            let opts = ReportOptions {
                chart: parse_chart(chart.as_deref())?,
                search: search_options(max_weight),
                ..ReportOptions::new()
            };
            let r = run_full_report(&input, &opts)?;
            let mut v = json!({
                "label": r.label,
                "n": r.n,
                "delta_corollary": r.delta_corollary,
                "delta_conjectural": r.delta_conjectural,
                "bound_claims": r.bound_claims,
                "beta4_equality": r.beta4_equality,
            });
            match &r.monodromy {
                Section::Done(m) => {
                    v["e_r"] = json!(m.e_r);
                    v["delta_computed"] = json!(m.delta_computed);
                    v["b1_F"] = json!(m.b1_f);
                    v["h1_F_snf"] = json!({ "free_rank": m.h1_f_free_rank, "torsion": m.h1_f_torsion });
                    v["modular_bounds"] = json!(m.modular_bounds);
                }
                Section::Skipped { skipped } => v["delta_computed"] = json!({ "skipped": skipped }),
            }
            emit(json, &v, || r.to_text());
        }
        Command::Boundary { file, json } => {
            let input = load(&file)?;
            let lat = input.lattice()?;
            let g = build_graph(&lat);
            let b1u = b1_boundary_u(&g)?;
            let delta = delta_boundary_f(&lat);
            let classifier = boundary_cover_classifier(&g);
            let v = json!({
                "label": input.label(),
                "graph": { "V": g.num_vertices(), "E": g.num_edges(), "b1": g.b1() },
                "b1_boundary_U": b1u,
                "delta_boundary_F": delta.to_string(),
                "b1_boundary_F": delta.degree(),
                "h1_boundary_F_torsion": "not computed",
                "cover_classifier": classifier,
            });
            emit(json, &v, || {
                format!(
                    "{}: Γ has V = {}, E = {}, b₁ = {}\nb₁(∂U) = {b1u}\nΔ_∂F(t) = {delta}\nb₁(∂F) = {}\ncover: {} meridians ↦ 1, {} cycles ↦ 0\n",
                    input.label(),
                    g.num_vertices(),
                    g.num_edges(),
                    g.b1(),
                    delta.degree(),
                    classifier.meridians(),
                    classifier.cycles()
                )
            });
        }
        Command::CvCount { file, order, depth, space, budget, chart, json } => {
            let input = load(&file)?;
            let arr = realized(&input, "cv-count")?;
            let lat = input.lattice()?;
            let (_, pres) = complement_group(&arr, &lat, parse_chart(chart.as_deref())?)?;
            let (name, count) = match space {
                SpaceArg::U => ("U", count_torsion_points(&pres, order, depth, budget)?),
                SpaceArg::F => {
                    let f = MilnorFiberGroup::new(&pres)?;
                    ("F", count_torsion_points(f.presentation(), order, depth, budget)?)
                }
            };
            let v = json!({ "label": input.label(), "space": name, "result": count });
            emit(json, &v, || {
                format!(
                    "{} {name}: {} of {} characters with η^{order} = 1 have depth ≥ {depth}\n",
                    input.label(),
                    count.count,
                    count.scanned
                )
            });
        }
        Command::Report { file, order, chart, max_weight, json } => {
            let input = load(&file)?;
            let opts = ReportOptions {
                chart: parse_chart(chart.as_deref())?,
                search: search_options(max_weight),
                torsion_order: order,
                ..ReportOptions::new()
            };
            let r = run_full_report(&input, &opts)?;
            if json {
                print!("{}", r.to_json());
            } else {
                print!("{}", r.to_text());
            }
        }
        Command::FalkDemo { json } => {
            let demo = falk_pair_demo()?;
            emit(json, &json!(demo), || demo.to_text());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
