//! The incidence graph of lines and points, the first Betti number of the
//! boundary manifold, and the monodromy of the boundary of the Milnor fiber.

use std::collections::VecDeque;

use num_integer::Integer;
use serde::Serialize;

use crate::arrangement::IntersectionLattice;
use crate::error::{Error, Result};
use crate::milnor::CharPolyFactorization;

/// Bipartite graph Γ: one vertex per line, one per flat, an edge for each
/// incidence.
#[derive(Debug, Clone, Serialize)]
pub struct IncidenceGraph {
    pub lines: usize,
    pub points: usize,
    /// (line, flat) pairs, sorted.
    pub edges: Vec<(usize, usize)>,
    pub components: usize,
    pub connected: bool,
}

impl IncidenceGraph {
    pub fn num_vertices(&self) -> usize {
        self.lines + self.points
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// E − V + #components.
    pub fn b1(&self) -> usize {
        self.num_edges() + self.components - self.num_vertices()
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.num_vertices()];
        for (e, &(l, p)) in self.edges.iter().enumerate() {
            adj[l].push((self.lines + p, e));
            adj[self.lines + p].push((l, e));
        }
        adj
    }
}

pub fn build_graph(lat: &IntersectionLattice) -> IncidenceGraph {
    let lines = lat.n();
    let points = lat.flats().len();
    let mut edges: Vec<(usize, usize)> = lat
        .flats()
        .iter()
        .enumerate()
        .flat_map(|(p, f)| f.lines.iter().map(move |&l| (l, p)))
        .collect();
    edges.sort_unstable();
    let mut g = IncidenceGraph {
        lines,
        points,
        edges,
        components: 0,
        connected: false,
    };
    let (forest, _) = spanning_forest(&g);
    g.components = forest.iter().filter(|&&root| root).count();
    g.connected = g.components == 1;
    g
}

/// Breadth-first spanning forest from the lowest unvisited vertex, lines
/// before points, neighbours in index order. Returns the roots and the
/// tree-edge flags.
fn spanning_forest(g: &IncidenceGraph) -> (Vec<bool>, Vec<bool>) {
    let adj = g.adjacency();
    let mut seen = vec![false; g.num_vertices()];
    let mut roots = vec![false; g.num_vertices()];
    let mut tree = vec![false; g.num_edges()];
    for start in 0..g.num_vertices() {
        if seen[start] {
            continue;
        }
        roots[start] = true;
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let mut next = adj[v].clone();
            next.sort_unstable();
            for (w, e) in next {
                if !seen[w] {
                    seen[w] = true;
                    tree[e] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    (roots, tree)
}

/// b₁(∂U) = (n − 1) + b₁(Γ).
pub fn b1_boundary_u(graph: &IncidenceGraph) -> Result<usize> {
    if !graph.connected {
        return Err(Error::Argument(format!(
            "incidence graph has {} components; b₁(∂U) is only computed for connected graphs",
            graph.components
        )));
    }
    Ok(graph.lines - 1 + graph.b1())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundaryGenerator {
    /// x̄_H, the meridian of a line.
    Meridian { line: usize },
    /// y_c, the loop closing a non-tree edge of Γ.
    Cycle { line: usize, point: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifierEntry {
    pub generator: BoundaryGenerator,
    pub image: u64,
}

/// The map π₁(∂U) → Z_n classifying ∂F → ∂U: meridians to 1, cycle
/// generators to 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverClassifier {
    pub modulus: u64,
    pub table: Vec<ClassifierEntry>,
}

impl CoverClassifier {
    pub fn meridians(&self) -> usize {
        self.table
            .iter()
            .filter(|e| matches!(e.generator, BoundaryGenerator::Meridian { .. }))
            .count()
    }

    pub fn cycles(&self) -> usize {
        self.table.len() - self.meridians()
    }
}

pub fn boundary_cover_classifier(graph: &IncidenceGraph) -> CoverClassifier {
    let (_, tree) = spanning_forest(graph);
    let mut table: Vec<ClassifierEntry> = (0..graph.lines)
        .map(|line| ClassifierEntry {
            generator: BoundaryGenerator::Meridian { line },
            image: 1,
        })
        .collect();
    table.extend(graph.edges.iter().zip(&tree).filter(|(_, &t)| !t).map(|(&(line, point), _)| ClassifierEntry {
        generator: BoundaryGenerator::Cycle { line, point },
        image: 0,
    }));
    CoverClassifier {
        modulus: graph.lines as u64,
        table,
    }
}

/// ∏_X (t − 1)(t^{gcd(|A_X|, n)} − 1)^{|A_X| − 2}.
pub fn delta_boundary_f(lat: &IntersectionLattice) -> CharPolyFactorization {
    let n = lat.n() as u64;
    let mut delta = CharPolyFactorization::one();
    for f in lat.flats() {
        let q = f.multiplicity() as u64;
        delta.add(1, 1);
        delta = delta.mul(&CharPolyFactorization::t_power_minus_one(q.gcd(&n)).pow(q as usize - 2));
    }
    delta
}
