//! Real pictures of complexified-real arrangements: a projective chart that
//! makes every line an affine graph y = s·x + t, and the sequence of
//! crossings swept from left to right.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::arrangement::{Arrangement, IntersectionLattice};
use crate::error::{Error, Result};

pub type Chart = [[i64; 3]; 3];

#[derive(Debug, Clone, Serialize)]
pub struct WiringEvent {
    #[serde(serialize_with = "ser_rational")]
    pub x: BigRational,
    /// Lattice flat crossing here.
    pub flat: usize,
    /// Lowest position occupied by the crossing wires.
    pub position: usize,
    /// Wires through the crossing, bottom to top just before it.
    pub wires: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WiringDiagram {
    pub chart: Chart,
    #[serde(serialize_with = "ser_rationals")]
    pub slopes: Vec<BigRational>,
    #[serde(serialize_with = "ser_rationals")]
    pub intercepts: Vec<BigRational>,
    /// Wires bottom to top left of every crossing.
    pub initial_order: Vec<usize>,
    pub events: Vec<WiringEvent>,
    /// Flats on the chart's line at infinity (parallel classes).
    pub flats_at_infinity: Vec<usize>,
}

fn ser_rational<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

fn ser_rationals<S: Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

impl WiringDiagram {
    pub fn n(&self) -> usize {
        self.slopes.len()
    }

    fn y_at(&self, wire: usize, x: &BigRational) -> BigRational {
        &self.slopes[wire] * x + &self.intercepts[wire]
    }

    fn sorted_at(&self, x: &BigRational) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by(|&a, &b| self.y_at(a, x).cmp(&self.y_at(b, x)));
        order
    }

    /// Re-derive every wire order from the line equations and compare with
    /// the swept permutations.
    pub fn validate(&self) -> Result<()> {
        let mut order = self.initial_order.clone();
        let probe = |k: usize| -> BigRational {
            match (k.checked_sub(1).map(|i| &self.events[i].x), self.events.get(k).map(|e| &e.x)) {
                (None, Some(r)) => r - BigRational::one(),
                (Some(l), Some(r)) => (l + r) / BigRational::from_integer(BigInt::from(2)),
                (Some(l), None) => l + BigRational::one(),
                (None, None) => BigRational::zero(),
            }
        };
        for k in 0..=self.events.len() {
            if self.sorted_at(&probe(k)) != order {
                return Err(Error::Consistency(format!("wire order before event {k} is not the swept order")));
            }
            if let Some(e) = self.events.get(k) {
                let m = e.wires.len();
                if order[e.position..e.position + m] != e.wires[..] {
                    return Err(Error::Consistency(format!("event {k} wires are not consecutive")));
                }
                order[e.position..e.position + m].reverse();
            }
        }
        Ok(())
    }
}

fn det3(m: &Chart) -> i128 {
    let m = m.map(|r| r.map(i128::from));
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn adjugate(m: &Chart) -> [[i128; 3]; 3] {
    let m = m.map(|r| r.map(i128::from));
    let mut adj = [[0i128; 3]; 3];
    for (i, row) in adj.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            // cofactor of (j, i)
            let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
            let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
            *entry = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
        }
    }
    adj
}

/// The unimodular charts tried by the automatic search, in order:
/// [[1, a, 0], [0, 1, 0], [b, c, 1]] by increasing max(|a|, |b|, |c|).
pub fn chart_candidates(max_abs: i64) -> impl Iterator<Item = Chart> {
    (0..=max_abs).flat_map(move |bound| {
        let range = move || -bound..=bound;
        range().flat_map(move |a| {
            range().flat_map(move |b| {
                range()
                    .filter(move |&c| a.abs().max(b.abs()).max(c.abs()) == bound)
                    .map(move |c| [[1, a, 0], [0, 1, 0], [b, c, 1]])
            })
        })
    })
}

pub const DEFAULT_CHART_BUDGET: i64 = 6;

/// Wiring diagram in a user chart, or in the first chart of the automatic
/// search that puts no flat at infinity.
pub fn choose_chart_and_wire(
    arr: &Arrangement,
    lat: &IntersectionLattice,
    chart: Option<Chart>,
    budget: i64,
) -> Result<WiringDiagram> {
    if arr.len() != lat.n() {
        return Err(Error::Argument("lattice does not belong to this arrangement".into()));
    }
    if let Some(c) = chart {
        if det3(&c) == 0 {
            return Err(Error::Argument(format!("chart {c:?} is singular")));
        }
        return wire_in_chart(arr, lat, c, true).map_err(|reason| Error::Argument(format!("chart {c:?} rejected: {reason}")));
    }
    for c in chart_candidates(budget) {
        if let Ok(w) = wire_in_chart(arr, lat, c, false) {
            return Ok(w);
        }
    }
    Err(Error::Budget(format!(
        "no admissible chart with entries up to {budget}; supply one with --chart"
    )))
}

fn wire_in_chart(
    arr: &Arrangement,
    lat: &IntersectionLattice,
    chart: Chart,
    allow_infinity: bool,
) -> std::result::Result<WiringDiagram, String> {
    let adj = adjugate(&chart);
    let mut slopes = Vec::with_capacity(arr.len());
    let mut intercepts = Vec::with_capacity(arr.len());
    for (i, line) in arr.lines().iter().enumerate() {
        let l = line.coeffs().map(i128::from);
        let t: Vec<BigInt> = (0..3)
            .map(|k| BigInt::from((0..3).map(|j| l[j] * adj[j][k]).sum::<i128>()))
            .collect();
        if t[1].is_zero() {
            return Err(format!("line {i} is vertical or at infinity"));
        }
        slopes.push(BigRational::new(-t[0].clone(), t[1].clone()));
        intercepts.push(BigRational::new(-t[2].clone(), t[1].clone()));
    }

    let mut events: BTreeMap<BigRational, usize> = BTreeMap::new();
    let mut flats_at_infinity = Vec::new();
    for (x, flat) in lat.flats().iter().enumerate() {
        let p = flat.point.ok_or("flat without coordinates")?;
        let q: Vec<BigInt> = (0..3)
            .map(|k| BigInt::from((0..3).map(|j| i128::from(chart[k][j]) * p[j]).sum::<i128>()))
            .collect();
        if q[2].is_zero() {
            if !allow_infinity {
                return Err(format!("flat {x} lies at infinity"));
            }
            flats_at_infinity.push(x);
            continue;
        }
        let xc = BigRational::new(q[0].clone(), q[2].clone());
        if let Some(other) = events.insert(xc, x) {
            return Err(format!("flats {other} and {x} share an x-coordinate"));
        }
    }

    let start = events.keys().next().map_or_else(BigRational::zero, |x| x - BigRational::one());
    let mut order: Vec<usize> = (0..arr.len()).collect();
    order.sort_by(|&a, &b| (&slopes[a] * &start + &intercepts[a]).cmp(&(&slopes[b] * &start + &intercepts[b])));
    let initial_order = order.clone();

    let mut out = Vec::with_capacity(events.len());
    for (x, flat) in events {
        let lines = &lat.flats()[flat].lines;
        let mut pos: Vec<usize> = lines.iter().map(|l| order.iter().position(|w| w == l).unwrap()).collect();
        pos.sort_unstable();
        let position = pos[0];
        if pos.iter().enumerate().any(|(k, &p)| p != position + k) {
            return Err(format!("wires of flat {flat} are not adjacent"));
        }
        let m = lines.len();
        let wires = order[position..position + m].to_vec();
        order[position..position + m].reverse();
        out.push(WiringEvent { x, flat, position, wires });
    }

    let w = WiringDiagram {
        chart,
        slopes,
        intercepts,
        initial_order,
        events: out,
        flats_at_infinity,
    };
    w.validate().map_err(|e| e.to_string())?;
    Ok(w)
}
