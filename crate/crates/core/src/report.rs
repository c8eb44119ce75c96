//! Full per-arrangement reports and the side-by-side comparison of the two
//! Falk arrangements.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::arrangement::{collinear_triples_report, ArrangementInput, IntersectionLattice};
use crate::boundary::{b1_boundary_u, boundary_cover_classifier, build_graph, delta_boundary_f, CoverClassifier};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::jumploci::{
    all_e_r, count_torsion_points, milnor_h1_decomposition, modular_bound_check, MilnorFiberGroup, ModularBound,
    DEFAULT_CHARACTER_BUDGET,
};
use crate::milnor::{
    beta4_equalities, delta_conjectural, delta_triple_points, is_essential, multinet_lower_bounds, validate_claims,
    BoundClaim, CharPolyFactorization, EqualityClaim,
};
use crate::multinet::{is_net, search_multinets, Multinet, SearchOptions};
use crate::osalgebra::beta_p;
use crate::pi1::{complement_group, Chart};

pub const SCHEMA_VERSION: u32 = 1;

/// A report section that was either computed or skipped with a reason.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Section<T> {
    Done(T),
    Skipped { skipped: String },
}

impl<T> Section<T> {
    pub fn skipped(reason: impl Into<String>) -> Self {
        Section::Skipped { skipped: reason.into() }
    }

    pub fn done(&self) -> Option<&T> {
        match self {
            Section::Done(t) => Some(t),
            Section::Skipped { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ReportOptions {
    pub chart: Option<Chart>,
    pub search: SearchOptions,
    /// Scan characters of this order on F (and U) when set.
    pub torsion_order: Option<u64>,
    pub character_budget: u64,
}

impl ReportOptions {
    pub fn new() -> Self {
        ReportOptions {
            character_budget: DEFAULT_CHARACTER_BUDGET,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultinetSummary {
    pub k: usize,
    pub weight: u32,
    pub reduced: bool,
    pub net: bool,
    pub classes: Vec<Vec<usize>>,
    pub mult: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pi1Summary {
    pub chart: Chart,
    pub generators: usize,
    pub relators: usize,
    pub max_relator_length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaCheck {
    pub delta: String,
    pub agrees: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjecturalCheck {
    pub delta: String,
    pub conjectural: bool,
    pub agrees: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonodromyBlock {
    pub e_r: BTreeMap<u64, usize>,
    pub delta_computed: String,
    pub delta_degree: u64,
    pub b1_f: u64,
    pub h1_f_free_rank: usize,
    pub h1_f_torsion: Vec<String>,
    pub schreier_generators: usize,
    pub schreier_relators: usize,
    pub modular_bounds: Vec<ModularBound>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryBlock {
    pub vertices: usize,
    pub edges: usize,
    pub graph_b1: usize,
    pub b1_boundary_u: usize,
    pub delta_boundary_f: String,
    pub b1_boundary_f: u64,
    pub h1_boundary_f_torsion: String,
    pub cover_classifier: CoverClassifier,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionCounts {
    pub order: u64,
    /// Characters of F with η^r = 1 at each depth ≥ 1 (cumulative).
    pub f_depth_at_least: BTreeMap<usize, u64>,
    pub u_depth_at_least: BTreeMap<usize, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub label: String,
    pub tier: String,
    pub n: usize,
    pub census: BTreeMap<usize, usize>,
    pub common_line: bool,
    pub essential: bool,
    pub beta: BTreeMap<u64, usize>,
    pub multinets: Section<Vec<MultinetSummary>>,
    pub pi1: Section<Pi1Summary>,
    pub monodromy: Section<MonodromyBlock>,
    pub delta_corollary: Section<FormulaCheck>,
    pub delta_conjectural: Section<ConjecturalCheck>,
    pub bound_claims: Vec<BoundClaim>,
    pub beta4_equality: Option<EqualityClaim>,
    pub boundary: BoundaryBlock,
    pub torsion_points: Section<TorsionCounts>,
}

fn summarize(m: &Multinet, lat: &IntersectionLattice) -> MultinetSummary {
    MultinetSummary {
        k: m.k(),
        weight: m.weight(),
        reduced: m.is_reduced(),
        net: is_net(m, lat),
        classes: m.classes.clone(),
        mult: m.mult.clone(),
    }
}

fn cumulative(hist: &BTreeMap<usize, u64>) -> BTreeMap<usize, u64> {
    let top = hist.keys().next_back().copied().unwrap_or(0);
    (1..=top).map(|s| (s, hist.range(s..).map(|(_, c)| c).sum())).collect()
}

pub fn run_full_report(input: &ArrangementInput, opts: &ReportOptions) -> Result<Report> {
    let lat = input.lattice()?;
    let n = lat.n();
    let beta: BTreeMap<u64, usize> = [2, 3].into_iter().map(|p| Ok((p, beta_p(&lat, p)?))).collect::<Result<_>>()?;

    let multinets = if n > opts.search.max_lines {
        Section::skipped(format!("multinet search limited to {} lines", opts.search.max_lines))
    } else {
        let mut found = search_multinets(&lat, 3, &opts.search)?;
        found.extend(search_multinets(&lat, 4, &opts.search)?);
        Section::Done(found)
    };
    let found: &[Multinet] = multinets.done().map_or(&[], Vec::as_slice);
    let mut bound_claims = multinet_lower_bounds(found, n);
    let mut beta4_equality = beta4_equalities(&lat, found, beta[&2]);

    let graph = build_graph(&lat);
    let delta_bf = delta_boundary_f(&lat);
    let boundary = BoundaryBlock {
        vertices: graph.num_vertices(),
        edges: graph.num_edges(),
        graph_b1: graph.b1(),
        b1_boundary_u: b1_boundary_u(&graph)?,
        delta_boundary_f: delta_bf.to_string(),
        b1_boundary_f: delta_bf.degree(),
        h1_boundary_f_torsion: "not computed".into(),
        cover_classifier: boundary_cover_classifier(&graph),
    };

    let (pi1, monodromy, torsion_points, computed) = match input.realized() {
        None => {
            let reason = "incidence-only input has no real picture for π₁";
            (Section::skipped(reason), Section::skipped(reason), Section::skipped(reason), None)
        }
        Some(arr) => {
            let (wiring, pres) = complement_group(arr, &lat, opts.chart)?;
            let pi1 = Pi1Summary {
                chart: wiring.chart,
                generators: pres.num_generators(),
                relators: pres.num_relators(),
                max_relator_length: pres.max_relator_length(),
            };
            let e = all_e_r(&pres)?;
            let decomposition = milnor_h1_decomposition(&e, n)?;
            let fiber = MilnorFiberGroup::new(&pres)?;
            if fiber.b1() as u64 != decomposition.b1_f {
                return Err(Error::Consistency(format!(
                    "b₁(F) = {} from twisted homology but {} from the Milnor fiber presentation",
                    decomposition.b1_f,
                    fiber.b1()
                )));
            }
            let mut modular_bounds = Vec::new();
            for p in [2u64, 3] {
                let mut s = 1;
                while (n as u64) % p.pow(s) == 0 {
                    let b = modular_bound_check(&pres, &lat, p, s)?;
                    if !b.holds {
                        return Err(Error::Consistency(format!("e_{} = {:?} exceeds β_{p} = {}", p.pow(s), b.e, b.beta)));
                    }
                    modular_bounds.push(b);
                    s += 1;
                }
            }
            let torsion_points = match opts.torsion_order {
                None => Section::skipped("no character order requested"),
                Some(r) => {
                    let f = count_torsion_points(fiber.presentation(), r, 1, opts.character_budget)?;
                    let u = count_torsion_points(&pres, r, 1, opts.character_budget)?;
                    Section::Done(TorsionCounts {
                        order: r,
                        f_depth_at_least: cumulative(&f.histogram),
                        u_depth_at_least: cumulative(&u.histogram),
                    })
                }
            };
            let block = MonodromyBlock {
                e_r: e.clone(),
                delta_computed: decomposition.delta.to_string(),
                delta_degree: decomposition.delta.degree(),
                b1_f: decomposition.b1_f,
                h1_f_free_rank: fiber.b1(),
                h1_f_torsion: fiber.torsion().iter().map(ToString::to_string).collect(),
                schreier_generators: fiber.presentation().num_generators(),
                schreier_relators: fiber.presentation().num_relators(),
                modular_bounds,
            };
            (Section::Done(pi1), Section::Done(block), torsion_points, Some((e, decomposition.delta)))
        }
    };

    if let Some((e, _)) = &computed {
        validate_claims(&mut bound_claims, e);
        if let Some(c) = bound_claims.iter().find(|c| c.holds == Some(false)) {
            return Err(Error::Consistency(format!(
                "a reduced {}-multinet forces e_{} ≥ {}, computed {}",
                c.k, c.r, c.lower, e[&c.r]
            )));
        }
        if let Some(eq) = beta4_equality.as_mut() {
            eq.validate(e);
            if eq.holds == Some(false) {
                return Err(Error::Consistency(format!("a 4-net with β₂ = {} forces e₂ = e₄ = β₂", eq.beta2)));
            }
        }
    }
    let computed_delta: Option<&CharPolyFactorization> = computed.as_ref().map(|(_, d)| d);

    let delta_corollary = match delta_triple_points(&lat, beta[&3]) {
        Err(Error::Argument(reason)) => Section::skipped(reason),
        Err(e) => return Err(e),
        Ok(d) => {
            let agrees = computed_delta.map(|c| *c == d);
            if agrees == Some(false) {
                return Err(Error::Consistency(format!(
                    "triple-point formula gives {d}, computed {}",
                    computed_delta.unwrap()
                )));
            }
            Section::Done(FormulaCheck {
                delta: d.to_string(),
                agrees,
            })
        }
    };
    let delta_conjectural = match delta_conjectural(&lat, beta[&2], beta[&3]) {
        Err(Error::Argument(reason)) => Section::skipped(reason),
        Err(e) => return Err(e),
        Ok(c) => Section::Done(ConjecturalCheck {
            delta: c.delta.to_string(),
            conjectural: c.conjectural,
            agrees: computed_delta.map(|d| *d == c.delta),
        }),
    };

    Ok(Report {
        schema_version: SCHEMA_VERSION,
        label: input.label().to_string(),
        tier: if input.realized().is_some() { "realized" } else { "incidence" }.into(),
        n,
        census: lat.census().clone(),
        common_line: collinear_triples_report(&lat).common_line_exists,
        essential: is_essential(&lat),
        beta,
        multinets: match multinets {
            Section::Done(ms) => Section::Done(ms.iter().map(|m| summarize(m, &lat)).collect()),
            Section::Skipped { skipped } => Section::Skipped { skipped },
        },
        pi1,
        monodromy,
        delta_corollary,
        delta_conjectural,
        bound_claims,
        beta4_equality,
        boundary,
        torsion_points,
    })
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} ({} lines, {} tier)", self.label, self.n, self.tier);
        let _ = writeln!(s, "  census            {:?}", self.census);
        let _ = writeln!(s, "  β₂, β₃            {}, {}", self.beta[&2], self.beta[&3]);
        match &self.multinets {
            Section::Done(ms) => {
                let _ = writeln!(s, "  multinets         {}", ms.len());
                for m in ms {
                    let _ = writeln!(
                        s,
                        "    ({}, {}){}{} {:?}",
                        m.k,
                        m.weight,
                        if m.net { " net" } else { "" },
                        if m.reduced { " reduced" } else { "" },
                        m.classes
                    );
                }
            }
            Section::Skipped { skipped } => {
                let _ = writeln!(s, "  multinets         skipped: {skipped}");
            }
        }
        match &self.monodromy {
            Section::Done(m) => {
                let _ = writeln!(s, "  e_r               {:?}", m.e_r);
                let _ = writeln!(s, "  Δ(t)              {}", m.delta_computed);
                let _ = writeln!(s, "  b₁(F)             {}", m.b1_f);
                let torsion = if m.h1_f_torsion.is_empty() {
                    String::new()
                } else {
                    format!(" ⊕ torsion {:?}", m.h1_f_torsion)
                };
                let _ = writeln!(s, "  H₁(F, Z)          Z^{}{torsion}", m.h1_f_free_rank);
            }
            Section::Skipped { skipped } => {
                let _ = writeln!(s, "  monodromy         skipped: {skipped}");
            }
        }
        if let Section::Done(c) = &self.delta_corollary {
            let _ = writeln!(s, "  triple-point Δ    {}", c.delta);
        }
        if let Section::Done(c) = &self.delta_conjectural {
            let _ = writeln!(s, "  conjectural Δ     {} (conjectural)", c.delta);
        }
        for c in &self.bound_claims {
            let status = match c.holds {
                Some(true) => "holds",
                Some(false) => "fails",
                None => "unchecked",
            };
            let _ = writeln!(s, "  claim             e_{} ≥ {} ({status})", c.r, c.lower);
        }
        let _ = writeln!(s, "  b₁(∂U)            {}", self.boundary.b1_boundary_u);
        let _ = writeln!(s, "  Δ_∂F(t)           {}", self.boundary.delta_boundary_f);
        if let Section::Done(t) = &self.torsion_points {
            let _ = writeln!(s, "  order-{} points F  {:?}", t.order, t.f_depth_at_least);
            let _ = writeln!(s, "  order-{} points U  {:?}", t.order, t.u_depth_at_least);
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DemoColumn {
    pub label: String,
    pub common_line: bool,
    pub census: BTreeMap<usize, usize>,
    pub delta: String,
    pub delta_boundary_f: String,
    pub b1_boundary_u: usize,
    pub b1_f: u64,
    pub h1_f: String,
    /// Order-3 characters of π₁(F) by depth, cumulative.
    pub order3_depth1: u64,
    pub order3_depth2: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FalkDemo {
    pub schema_version: u32,
    pub columns: [DemoColumn; 2],
    pub conclusion: String,
}

fn demo_column(input: &ArrangementInput) -> Result<DemoColumn> {
    let mut opts = ReportOptions::new();
    opts.torsion_order = Some(3);
    let r = run_full_report(input, &opts)?;
    let m = r.monodromy.done().ok_or_else(|| Error::Consistency("Falk fixtures are realized".into()))?;
    let t = r.torsion_points.done().ok_or_else(|| Error::Consistency("torsion points were requested".into()))?;
    let at = |s| t.f_depth_at_least.get(&s).copied().unwrap_or(0);
    Ok(DemoColumn {
        label: r.label.clone(),
        common_line: r.common_line,
        census: r.census.clone(),
        delta: m.delta_computed.clone(),
        delta_boundary_f: r.boundary.delta_boundary_f.clone(),
        b1_boundary_u: r.boundary.b1_boundary_u,
        b1_f: m.b1_f,
        h1_f: if m.h1_f_torsion.is_empty() {
            format!("Z^{}", m.h1_f_free_rank)
        } else {
            format!("Z^{} + torsion {:?}", m.h1_f_free_rank, m.h1_f_torsion)
        },
        order3_depth1: at(1),
        order3_depth2: at(2),
    })
}

/// Both Falk arrangements side by side: equal homological invariants, and
/// the order-3 depth counts that separate the fundamental groups of their
/// Milnor fibers.
pub fn falk_pair_demo() -> Result<FalkDemo> {
    let a = demo_column(&ArrangementInput::Realized(fixtures::falk_a()))?;
    let b = demo_column(&ArrangementInput::Realized(fixtures::falk_a_prime()))?;
    let conclusion = if a.order3_depth2 != b.order3_depth2 {
        format!(
            "order-3 depth-2 counts {} vs {}: the Milnor fibers have non-isomorphic fundamental groups, so they are not homotopy equivalent",
            a.order3_depth2, b.order3_depth2
        )
    } else {
        "order-3 depth-2 counts agree: no separation at this order".into()
    };
    Ok(FalkDemo {
        schema_version: SCHEMA_VERSION,
        columns: [a, b],
        conclusion,
    })
}

impl FalkDemo {
    pub fn to_text(&self) -> String {
        let [a, b] = &self.columns;
        let mut s = String::new();
        let row = |s: &mut String, name: &str, x: String, y: String| {
            let _ = writeln!(s, "{name:<26}{x:<26}{y}");
        };
        row(&mut s, "", a.label.clone(), b.label.clone());
        row(&mut s, "triple points on a line", a.common_line.to_string(), b.common_line.to_string());
        row(&mut s, "census", format!("{:?}", a.census), format!("{:?}", b.census));
        row(&mut s, "Δ(t)", a.delta.clone(), b.delta.clone());
        row(&mut s, "Δ_∂F(t)", a.delta_boundary_f.clone(), b.delta_boundary_f.clone());
        row(&mut s, "b₁(∂U)", a.b1_boundary_u.to_string(), b.b1_boundary_u.to_string());
        row(&mut s, "b₁(F)", a.b1_f.to_string(), b.b1_f.to_string());
        row(&mut s, "H₁(F, Z)", a.h1_f.clone(), b.h1_f.clone());
        row(&mut s, "order 3, depth ≥ 1", a.order3_depth1.to_string(), b.order3_depth1.to_string());
        row(&mut s, "order 3, depth ≥ 2", a.order3_depth2.to_string(), b.order3_depth2.to_string());
        let _ = writeln!(s, "{}", self.conclusion);
        s
    }
}
