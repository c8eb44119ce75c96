//! Characteristic polynomials of the algebraic monodromy as products of
//! cyclotomic polynomials, and the combinatorial formulas that predict them.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::arrangement::IntersectionLattice;
use crate::cyclo::{divisors, totient};
use crate::error::{Error, Result};
use crate::multinet::{is_net, Multinet};

/// ∏_r Φ_r(t)^{e_r}; the (t − 1) factor is stored at r = 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CharPolyFactorization {
    pub factors: BTreeMap<u64, usize>,
}

impl CharPolyFactorization {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = (u64, usize)>) -> Self {
        let mut f = Self::default();
        for (r, e) in exps {
            f.add(r, e);
        }
        f
    }

    /// t^m − 1 = ∏_{d | m} Φ_d(t).
    pub fn t_power_minus_one(m: u64) -> Self {
        Self::from_exponents(divisors(m).into_iter().map(|d| (d, 1)))
    }

    pub fn add(&mut self, r: u64, e: usize) {
        if e > 0 {
            *self.factors.entry(r).or_insert(0) += e;
        }
    }

    pub fn exponent(&self, r: u64) -> usize {
        self.factors.get(&r).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&r, &e) in &other.factors {
            out.add(r, e);
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        Self::from_exponents(self.factors.iter().map(|(&r, &e)| (r, e * k)))
    }

    pub fn degree(&self) -> u64 {
        self.factors.iter().map(|(&r, &e)| totient(r) * e as u64).sum()
    }
}

fn cyclotomic_name(r: u64) -> String {
    match r {
        1 => "(t-1)".into(),
        2 => "(t+1)".into(),
        3 => "(t^2+t+1)".into(),
        4 => "(t^2+1)".into(),
        6 => "(t^2-t+1)".into(),
        _ => format!("Phi_{r}(t)"),
    }
}

impl fmt::Display for CharPolyFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(&r, &e)| match e {
                1 => cyclotomic_name(r),
                _ => format!("{}^{e}", cyclotomic_name(r)),
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A factorization predicted by the conjectural formula. Kept apart from
/// computed values on purpose.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Conjectural {
    pub delta: CharPolyFactorization,
    pub conjectural: bool,
}

/// Δ(t) = (t−1)^{n−1} (t²+t+1)^{β₃} for lattices with only double and
/// triple points.
pub fn delta_triple_points(lat: &IntersectionLattice, beta3: usize) -> Result<CharPolyFactorization> {
    if lat.census().keys().any(|&q| q > 3) {
        return Err(Error::Argument(format!(
            "the triple-point formula needs flats of multiplicity 2 and 3 only (census {:?}); use the conjectural formula",
            lat.census()
        )));
    }
    if beta3 > 2 {
        return Err(Error::Consistency(format!(
            "β₃ = {beta3} on a lattice with only double and triple points, but β₃ ≤ 2 there"
        )));
    }
    Ok(CharPolyFactorization::from_exponents([(1, lat.n().saturating_sub(1)), (3, beta3)]))
}

/// Lines not all through one point, and at least two of them.
pub fn is_essential(lat: &IntersectionLattice) -> bool {
    lat.n() >= 2 && !lat.flats().iter().any(|f| f.multiplicity() == lat.n())
}

/// Δ(t) = (t−1)^{n−1} ((t+1)(t²+1))^{β₂} (t²+t+1)^{β₃}, conjecturally.
pub fn delta_conjectural(lat: &IntersectionLattice, beta2: usize, beta3: usize) -> Result<Conjectural> {
    if !is_essential(lat) {
        return Err(Error::Argument("the conjectural formula is stated for essential arrangements".into()));
    }
    let delta = CharPolyFactorization::from_exponents([(1, lat.n() - 1), (2, beta2), (4, beta2), (3, beta3)]);
    Ok(Conjectural {
        delta,
        conjectural: true,
    })
}

/// e_r ≥ lower, implied by a reduced multinet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundClaim {
    pub r: u64,
    pub lower: usize,
    /// Class count of the multinet behind the claim.
    pub k: usize,
    /// Comparison with a computed e_r, when one is supplied.
    pub holds: Option<bool>,
}

/// For a reduced k-multinet: e_k ≥ k − 2, and e_{p^j} ≥ k − 2 for
/// 1 ≤ j ≤ s when k = p^s.
pub fn multinet_lower_bounds(multinets: &[Multinet], n: usize) -> Vec<BoundClaim> {
    let mut best: BTreeMap<u64, (usize, usize)> = BTreeMap::new();
    for m in multinets.iter().filter(|m| m.is_reduced()) {
        let k = m.k() as u64;
        if n as u64 % k != 0 {
            continue;
        }
        let lower = m.k() - 2;
        let mut rs = vec![k];
        if let Some((p, s)) = prime_power(k) {
            rs.extend((1..=s).map(|j| p.pow(j)));
        }
        for r in rs {
            let e = best.entry(r).or_insert((lower, m.k()));
            if lower > e.0 {
                *e = (lower, m.k());
            }
        }
    }
    best.into_iter()
        .map(|(r, (lower, k))| BoundClaim { r, lower, k, holds: None })
        .collect()
}

fn prime_power(k: u64) -> Option<(u64, u32)> {
    let p = (2..=k).find(|d| k % d == 0)?;
    let mut m = k;
    let mut s = 0;
    while m % p == 0 {
        m /= p;
        s += 1;
    }
    (m == 1).then_some((p, s))
}

/// Fill in `holds` from computed exponents.
pub fn validate_claims(claims: &mut [BoundClaim], computed: &BTreeMap<u64, usize>) {
    for c in claims.iter_mut() {
        c.holds = computed.get(&c.r).map(|&e| e >= c.lower);
    }
}

/// e₂ = e₄ = β₂, claimed when a 4-net exists and β₂ ≤ 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EqualityClaim {
    pub beta2: usize,
    pub holds: Option<bool>,
}

pub fn beta4_equalities(lat: &IntersectionLattice, multinets: &[Multinet], beta2: usize) -> Option<EqualityClaim> {
    let has_4net = multinets.iter().any(|m| m.k() == 4 && is_net(m, lat));
    (has_4net && beta2 <= 2).then_some(EqualityClaim { beta2, holds: None })
}

impl EqualityClaim {
    pub fn validate(&mut self, computed: &BTreeMap<u64, usize>) {
        self.holds = match (computed.get(&2), computed.get(&4)) {
            (Some(&e2), Some(&e4)) => Some(e2 == self.beta2 && e4 == self.beta2),
            _ => None,
        };
    }
}
