//! Twisted first homology at finite-order characters via Fox calculus, the
//! exponents e_r(A), the homology of the Milnor fiber, and counts of
//! torsion points on characteristic varieties.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::arrangement::IntersectionLattice;
use crate::cyclo::{divisors, split_prime, totient, CycloField, CycloPoly};
use crate::error::{Error, Result};
use crate::field::Fp;
use crate::linalg::rank;
use crate::milnor::CharPolyFactorization;
use crate::osalgebra::beta_p;
use crate::pi1::presentation::generator_of;
use crate::pi1::{milnor_fiber_presentation, CosetSchreierData, GroupPresentation};

/// A homomorphism to the r-th roots of unity, x_j ↦ ζ_r^{e_j}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Character {
    pub order: u64,
    pub exponents: Vec<u64>,
}

impl Character {
    pub fn new(pres: &GroupPresentation, order: u64, exponents: Vec<u64>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Argument("character order must be positive".into()));
        }
        if exponents.len() != pres.num_generators() {
            return Err(Error::Argument(format!(
                "{} exponents for {} generators",
                exponents.len(),
                pres.num_generators()
            )));
        }
        let chi = Character {
            order,
            exponents: exponents.into_iter().map(|e| e % order).collect(),
        };
        for (i, r) in pres.relators.iter().enumerate() {
            if chi.eval(r) != 0 {
                return Err(Error::Validation(format!(
                    "character is not defined on the group: relator {i} {r:?} maps to ζ^{}",
                    chi.eval(r)
                )));
            }
        }
        Ok(chi)
    }

    /// ρ_r: every generator to ζ_r.
    pub fn diagonal(pres: &GroupPresentation, order: u64) -> Result<Self> {
        Character::new(pres, order, vec![1; pres.num_generators()])
    }

    /// Exponent of the image of a word.
    pub fn eval(&self, w: &[i32]) -> u64 {
        let r = self.order as i64;
        let s: i64 = w
            .iter()
            .map(|&l| l.signum() as i64 * self.exponents[generator_of(l)] as i64)
            .sum();
        s.rem_euclid(r) as u64
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn inverse(&self) -> Character {
        Character {
            order: self.order,
            exponents: self.exponents.iter().map(|&e| (self.order - e) % self.order).collect(),
        }
    }
}

/// Fox derivatives of every relator, each as exponent counts of ζ: entry
/// [i][j][e] is the coefficient of ζ^e in ∂r_i/∂x_j.
fn fox_counts(pres: &GroupPresentation, chi: &Character) -> Vec<Vec<Vec<i64>>> {
    let g = pres.num_generators();
    let r = chi.order as usize;
    pres.relators
        .iter()
        .map(|w| {
            let mut row = vec![vec![0i64; r]; g];
            let mut e = 0usize;
            for &l in w {
                let x = generator_of(l);
                let step = chi.exponents[x] as usize;
                if l > 0 {
                    row[x][e] += 1;
                    e = (e + step) % r;
                } else {
                    e = (e + r - step) % r;
                    row[x][e] -= 1;
                }
            }
            row
        })
        .collect()
}

/// The Fox Jacobian evaluated at χ, entries in Z[x]/Φ_r.
pub fn fox_jacobian(pres: &GroupPresentation, chi: &Character) -> Vec<Vec<CycloPoly>> {
    fox_counts(pres, chi)
        .into_iter()
        .map(|row| row.iter().map(|c| CycloPoly::from_exponent_counts(chi.order, c)).collect())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwistedDim {
    pub dim: usize,
    /// Set for the trivial character: `dim` is then b₁ of the group.
    pub trivial: bool,
}

/// dim H₁(G; C_χ) = g − 1 − rank J(χ) for χ ≠ 1.
///
/// The rank is first bounded from below by reducing modulo a prime that
/// splits in Q(ζ_r); when that already reaches g − 1 the answer is 0,
/// otherwise the rank is recomputed exactly over Q(ζ_r).
pub fn twisted_h1_dim(pres: &GroupPresentation, chi: &Character) -> Result<TwistedDim> {
    let chi = Character::new(pres, chi.order, chi.exponents.clone())?;
    let g = pres.num_generators();
    if chi.is_trivial() {
        return Ok(TwistedDim {
            dim: pres.abelianization().free_rank(),
            trivial: true,
        });
    }
    let counts = fox_counts(pres, &chi);
    let root = split_prime(chi.order, 1 << 20);
    let q = root.modulus();
    let powers: Vec<Fp> = (0..chi.order).map(|k| root.pow(k)).collect();
    let modular: Vec<Vec<Fp>> = counts
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| c.iter().zip(&powers).fold(Fp::new(0, q), |acc, (&k, &w)| acc + Fp::new(k, q) * w))
                .collect()
        })
        .collect();
    if rank(modular) == g - 1 {
        return Ok(TwistedDim { dim: 0, trivial: false });
    }
    let ctx = CycloField::new(chi.order);
    let exact = counts
        .iter()
        .map(|row| row.iter().map(|c| CycloPoly::from_exponent_counts(chi.order, c).to_field(&ctx)).collect())
        .collect();
    Ok(TwistedDim {
        dim: g - 1 - rank(exact),
        trivial: false,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DepthReport {
    pub character: Character,
    pub dim: usize,
    pub depth: usize,
    pub trivial: bool,
}

pub fn depth(pres: &GroupPresentation, chi: &Character) -> Result<DepthReport> {
    let t = twisted_h1_dim(pres, chi)?;
    Ok(DepthReport {
        character: chi.clone(),
        dim: t.dim,
        depth: t.dim,
        trivial: t.trivial,
    })
}

/// e_r(A) = depth of ρ_r on π₁(U).
pub fn e_r(pres_u: &GroupPresentation, r: u64) -> Result<usize> {
    let n = pres_u.num_generators() as u64;
    if r < 2 || n % r != 0 {
        return Err(Error::Argument(format!(
            "e_r needs 1 < r | n; r = {r}, n = {n} (ρ_r does not kill the product of all meridians)"
        )));
    }
    Ok(twisted_h1_dim(pres_u, &Character::diagonal(pres_u, r)?)?.dim)
}

/// e_r for every divisor 1 < r | n.
pub fn all_e_r(pres_u: &GroupPresentation) -> Result<BTreeMap<u64, usize>> {
    let n = pres_u.num_generators() as u64;
    divisors(n)
        .into_iter()
        .filter(|&r| r > 1)
        .map(|r| Ok((r, e_r(pres_u, r)?)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MilnorH1 {
    pub b1_f: u64,
    pub delta: CharPolyFactorization,
}

/// b₁(F) = n − 1 + Σ φ(r) e_r and Δ(t) = (t−1)^{n−1} ∏ Φ_r^{e_r}.
pub fn milnor_h1_decomposition(e: &BTreeMap<u64, usize>, n: usize) -> Result<MilnorH1> {
    let n64 = n as u64;
    for r in divisors(n64).into_iter().filter(|&r| r > 1) {
        if !e.contains_key(&r) {
            return Err(Error::Argument(format!("e_{r} missing (divisor of n = {n})")));
        }
    }
    if let Some(r) = e.keys().find(|&&r| r < 2 || n64 % r != 0) {
        return Err(Error::Argument(format!("e_{r} given, but {r} is not a divisor of n = {n} above 1")));
    }
    let mut delta = CharPolyFactorization::from_exponents([(1, n.saturating_sub(1))]);
    for (&r, &er) in e {
        delta.add(r, er);
    }
    Ok(MilnorH1 {
        b1_f: n64.saturating_sub(1) + e.iter().map(|(&r, &er)| totient(r) * er as u64).sum::<u64>(),
        delta,
    })
}

/// The characters of a group through its abelianization, in the basis
/// given by the Smith form.
#[derive(Debug, Clone)]
pub struct CharacterGroup {
    /// Invariant of each coordinate of H₁: `Some(d)` for Z/d (d > 1),
    /// `None` for Z.
    pub invariants: Vec<Option<BigInt>>,
    /// Coordinates of every generator's image in H₁.
    pub coords: Vec<Vec<BigInt>>,
}

impl CharacterGroup {
    pub fn new(pres: &GroupPresentation) -> Self {
        let snf = pres.abelianization();
        let v = snf.col_transform.clone().expect("transform requested");
        let g = pres.num_generators();
        let units = snf.factors.iter().take_while(|d| d.is_one()).count();
        let mut invariants: Vec<Option<BigInt>> = snf.factors[units..].iter().cloned().map(Some).collect();
        invariants.extend((snf.rank()..g).map(|_| None));
        let coords = (0..g).map(|j| v[j][units..].to_vec()).collect();
        CharacterGroup { invariants, coords }
    }

    pub fn b1(&self) -> usize {
        self.invariants.iter().filter(|d| d.is_none()).count()
    }

    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariants.iter().flatten().cloned().collect()
    }

    /// Admissible values of each coordinate for characters with η^r = 1.
    fn choices(&self, r: u64) -> Vec<Vec<u64>> {
        self.invariants
            .iter()
            .map(|d| match d {
                None => (0..r).collect(),
                Some(d) => {
                    let g = d.gcd(&BigInt::from(r)).to_u64().unwrap();
                    let step = r / g;
                    (0..g).map(|k| k * step).collect()
                }
            })
            .collect()
    }

    /// Number of characters with η^r = 1.
    pub fn count(&self, r: u64) -> BigInt {
        self.choices(r).iter().map(|c| BigInt::from(c.len())).product()
    }

    fn character(&self, values: &[u64], r: u64) -> Character {
        let rb = BigInt::from(r);
        let exponents = self
            .coords
            .iter()
            .map(|row| {
                let s: BigInt = row.iter().zip(values).map(|(a, &c)| a * BigInt::from(c)).sum();
                s.mod_floor(&rb).to_u64().unwrap()
            })
            .collect();
        Character { order: r, exponents }
    }

    /// Every character with η^r = 1, in mixed-radix order.
    pub fn characters(&self, r: u64) -> impl Iterator<Item = Character> + '_ {
        let choices = self.choices(r);
        let total: usize = choices.iter().map(Vec::len).product();
        (0..total).map(move |mut idx| {
            let values: Vec<u64> = choices
                .iter()
                .map(|c| {
                    let v = c[idx % c.len()];
                    idx /= c.len();
                    v
                })
                .collect();
            self.character(&values, r)
        })
    }
}

/// π₁(F) for F the Milnor fiber, with H₁(F, Z) and its character group.
#[derive(Debug, Clone)]
pub struct MilnorFiberGroup {
    pub schreier: CosetSchreierData,
    pub characters: CharacterGroup,
}

impl MilnorFiberGroup {
    pub fn new(pres_u: &GroupPresentation) -> Result<Self> {
        let schreier = milnor_fiber_presentation(pres_u)?;
        let characters = CharacterGroup::new(&schreier.presentation);
        Ok(MilnorFiberGroup { schreier, characters })
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.schreier.presentation
    }

    pub fn b1(&self) -> usize {
        self.characters.b1()
    }

    pub fn torsion(&self) -> Vec<BigInt> {
        self.characters.torsion()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Space {
    U,
    F,
}

pub const DEFAULT_CHARACTER_BUDGET: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionPointCount {
    pub order: u64,
    pub depth: usize,
    /// Number of characters with η^r = 1 scanned.
    pub scanned: u64,
    /// Characters of depth ≥ s; the trivial character is included when b₁ ≥ s.
    pub count: u64,
    /// Number of scanned characters at each depth.
    pub histogram: BTreeMap<usize, u64>,
    /// H₁ has torsion, so characters range over its full character group.
    pub torsion_in_h1: bool,
}

/// Depth of every character with η^r = 1, tallied.
pub fn depth_histogram(pres: &GroupPresentation, r: u64, budget: u64) -> Result<BTreeMap<usize, u64>> {
    if r == 0 {
        return Err(Error::Argument("order must be positive".into()));
    }
    let group = CharacterGroup::new(pres);
    let total = group.count(r);
    if total > BigInt::from(budget) {
        return Err(Error::Budget(format!(
            "{total} characters of order dividing {r} to scan; the budget is {budget}"
        )));
    }
    let mut hist = BTreeMap::new();
    for chi in group.characters(r) {
        *hist.entry(twisted_h1_dim(pres, &chi)?.dim).or_insert(0) += 1;
    }
    Ok(hist)
}

/// Characters η with η^r = 1 and depth(η) ≥ s.
pub fn count_torsion_points(pres: &GroupPresentation, r: u64, s: usize, budget: u64) -> Result<TorsionPointCount> {
    if s == 0 {
        return Err(Error::Argument("depth must be positive".into()));
    }
    let histogram = depth_histogram(pres, r, budget)?;
    Ok(TorsionPointCount {
        order: r,
        depth: s,
        scanned: histogram.values().sum(),
        count: histogram.range(s..).map(|(_, c)| c).sum(),
        histogram,
        torsion_in_h1: !CharacterGroup::new(pres).torsion().is_empty(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModularBound {
    pub p: u64,
    pub s: u32,
    /// e_{p^s}; absent when p^s does not divide n.
    pub e: Option<usize>,
    pub beta: usize,
    pub holds: bool,
}

/// e_{p^s} ≤ β_p, both sides computed.
pub fn modular_bound_check(pres_u: &GroupPresentation, lat: &IntersectionLattice, p: u64, s: u32) -> Result<ModularBound> {
    let beta = beta_p(lat, p)?;
    let q = p.checked_pow(s).ok_or_else(|| Error::Argument("p^s overflows".into()))?;
    let n = pres_u.num_generators() as u64;
    let e = if s >= 1 && n % q == 0 { Some(e_r(pres_u, q)?) } else { None };
    Ok(ModularBound {
        p,
        s,
        e,
        beta,
        holds: e.map_or(true, |e| e <= beta),
    })
}
