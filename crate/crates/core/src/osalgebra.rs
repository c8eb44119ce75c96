//! Degree ≤ 2 truncation of the Orlik–Solomon algebra, the Aomoto complex
//! and the Aomoto–Betti numbers β_p.
//!
//! A² is stored flat by flat. For a flat X with lines H_1 < ... < H_q the
//! local basis is b_i = [e_{H_1} e_{H_i}], i = 2..q, and the products inside
//! X reduce by e_{H_i} e_{H_j} = b_j − b_i (with b_1 = 0).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arrangement::IntersectionLattice;
use crate::error::{Error, Result};
use crate::field::{is_prime, Field, Fp};
use crate::linalg::rank;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) && p < (1 << 31) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::Argument(format!("{p} is not a supported prime")))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// A¹ ⊕ A² of the Orlik–Solomon algebra with its cup product.
#[derive(Debug, Clone)]
pub struct OSTruncation {
    field: FieldSpec,
    n: usize,
    /// Sorted line lists of the flats, in lattice order.
    flats: Vec<Vec<usize>>,
    /// Start of each flat's block in A².
    offsets: Vec<usize>,
    /// Flat index of every unordered pair (i < j), row-major upper triangle.
    pair_flat: Vec<usize>,
    dim2: usize,
}

pub fn build_os_truncation(lat: &IntersectionLattice, field: FieldSpec) -> OSTruncation {
    let n = lat.n();
    let flats: Vec<Vec<usize>> = lat.flats().iter().map(|f| f.lines.clone()).collect();
    let mut offsets = Vec::with_capacity(flats.len());
    let mut dim2 = 0;
    for f in &flats {
        offsets.push(dim2);
        dim2 += f.len() - 1;
    }
    let mut pair_flat = vec![usize::MAX; n * n];
    for (x, f) in flats.iter().enumerate() {
        for (a, &i) in f.iter().enumerate() {
            for &j in &f[a + 1..] {
                pair_flat[i * n + j] = x;
                pair_flat[j * n + i] = x;
            }
        }
    }
    OSTruncation {
        field,
        n,
        flats,
        offsets,
        pair_flat,
        dim2,
    }
}

impl OSTruncation {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim1(&self) -> usize {
        self.n
    }

    pub fn dim2(&self) -> usize {
        self.dim2
    }

    /// e_i · e_j as a sparse integer vector in the A² basis.
    pub fn cup(&self, i: usize, j: usize) -> Vec<(usize, i64)> {
        if i == j {
            return Vec::new();
        }
        let (lo, hi, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        let x = self.pair_flat[lo * self.n + hi];
        let lines = &self.flats[x];
        let pos = |h: usize| lines.binary_search(&h).expect("line lies on its flat");
        let (a, b) = (pos(lo), pos(hi));
        // local basis index of b_k is offset + k - 1 for k ≥ 1
        let base = self.offsets[x];
        let mut out = vec![(base + b - 1, sign)];
        if a > 0 {
            out.push((base + a - 1, -sign));
        }
        out
    }

    /// Matrix of δ_a: A¹ → A², one row per A² basis element.
    fn delta_matrix<F: Field>(&self, a: &[F], zero: &F) -> Vec<Vec<F>> {
        let mut m = vec![vec![zero.clone(); self.n]; self.dim2];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for j in 0..self.n {
                for (row, s) in self.cup(i, j) {
                    let term = if s > 0 { ai.clone() } else { -ai.clone() };
                    m[row][j] = m[row][j].clone() + term;
                }
            }
        }
        m
    }
}

/// A degree-one class a = Σ a_H e_H with integer coordinates, read in the
/// field it is tagged with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AomotoClass {
    pub field: FieldSpec,
    pub coords: Vec<BigInt>,
}

impl AomotoClass {
    pub fn new(field: FieldSpec, coords: Vec<BigInt>) -> Self {
        AomotoClass { field, coords }
    }

    pub fn from_i64(field: FieldSpec, coords: &[i64]) -> Self {
        AomotoClass::new(field, coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The diagonal class σ = Σ e_H.
    pub fn diagonal(field: FieldSpec, n: usize) -> Self {
        AomotoClass::new(field, vec![BigInt::one(); n])
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        AomotoClass::new(self.field, self.coords.iter().map(|x| x * c).collect())
    }

    pub fn is_zero(&self) -> bool {
        match self.field {
            FieldSpec::Rationals => self.coords.iter().all(Zero::is_zero),
            FieldSpec::Prime(p) => self.coords.iter().all(|c| Fp::from_big(c, p).value() == 0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AomotoH1 {
    pub dim: usize,
    /// Set when a = 0: `dim` is then dim A¹ rather than a resonance depth.
    pub trivial_class: bool,
}

pub fn aomoto_h1_dim(os: &OSTruncation, a: &AomotoClass) -> Result<AomotoH1> {
    if a.field != os.field {
        return Err(Error::Argument(format!(
            "class over {} used with an Orlik–Solomon algebra over {}",
            a.field, os.field
        )));
    }
    if a.coords.len() != os.n {
        return Err(Error::Argument(format!(
            "class has {} coordinates, arrangement has {} lines",
            a.coords.len(),
            os.n
        )));
    }
    if a.is_zero() {
        return Ok(AomotoH1 {
            dim: os.n,
            trivial_class: true,
        });
    }
    let r = match os.field {
        FieldSpec::Rationals => {
            let coords: Vec<BigRational> = a.coords.iter().map(|c| BigRational::from_integer(c.clone())).collect();
            rank(os.delta_matrix(&coords, &BigRational::zero()))
        }
        FieldSpec::Prime(p) => {
            let coords: Vec<Fp> = a.coords.iter().map(|c| Fp::from_big(c, p)).collect();
            rank(os.delta_matrix(&coords, &Fp::new(0, p)))
        }
    };
    Ok(AomotoH1 {
        dim: os.n - r - 1,
        trivial_class: false,
    })
}

/// Depth of σ in the resonance over F_p.
pub fn beta_p(lat: &IntersectionLattice, p: u64) -> Result<usize> {
    let field = FieldSpec::prime(p)?;
    let os = build_os_truncation(lat, field);
    Ok(aomoto_h1_dim(&os, &AomotoClass::diagonal(field, lat.n()))?.dim)
}

pub fn resonance_membership(os: &OSTruncation, a: &AomotoClass, s: usize) -> Result<bool> {
    if s == 0 {
        return Err(Error::Argument("resonance depth s must be positive".into()));
    }
    Ok(aomoto_h1_dim(os, a)?.dim >= s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::build_lattice;
    use crate::fixtures;

    #[test]
    fn dimensions_of_a2() {
        let q = FieldSpec::Rationals;
        assert_eq!(build_os_truncation(&build_lattice(&fixtures::pencil3()).unwrap(), q).dim2(), 2);
        assert_eq!(build_os_truncation(&build_lattice(&fixtures::falk_a()).unwrap(), q).dim2(), 13);
        assert_eq!(build_os_truncation(&build_lattice(&fixtures::generic4()).unwrap(), q).dim2(), 6);
    }

    #[test]
    fn cup_is_alternating() {
        let lat = build_lattice(&fixtures::b3()).unwrap();
        let os = build_os_truncation(&lat, FieldSpec::Prime(2));
        for i in 0..9 {
            assert!(os.cup(i, i).is_empty());
            for j in 0..9 {
                let mut neg: Vec<(usize, i64)> = os.cup(j, i).into_iter().map(|(k, s)| (k, -s)).collect();
                let mut pos = os.cup(i, j);
                neg.sort();
                pos.sort();
                assert_eq!(pos, neg);
            }
        }
    }

    #[test]
    fn pencil_resonance() {
        let os = build_os_truncation(&build_lattice(&fixtures::pencil3()).unwrap(), FieldSpec::Rationals);
        for t in [-3i64, 1, 2, 7] {
            let a = AomotoClass::from_i64(FieldSpec::Rationals, &[1, t, -1 - t]);
            assert_eq!(aomoto_h1_dim(&os, &a).unwrap().dim, 1);
        }
        let off = AomotoClass::from_i64(FieldSpec::Rationals, &[1, 1, 1]);
        assert_eq!(aomoto_h1_dim(&os, &off).unwrap().dim, 0);
    }

    #[test]
    fn pencil_diagonal_depends_on_characteristic() {
        let lat = build_lattice(&fixtures::pencil3()).unwrap();
        assert_eq!(beta_p(&lat, 3).unwrap(), 1);
        assert_eq!(beta_p(&lat, 2).unwrap(), 0);
        assert!(beta_p(&lat, 4).is_err());
    }

    #[test]
    fn zero_class_convention() {
        let os = build_os_truncation(&build_lattice(&fixtures::falk_a()).unwrap(), FieldSpec::Prime(3));
        let z = AomotoClass::from_i64(FieldSpec::Prime(3), &[3, 0, -3, 6, 0, 0]);
        let h = aomoto_h1_dim(&os, &z).unwrap();
        assert!(h.trivial_class);
        assert_eq!(h.dim, 6);
        assert!(resonance_membership(&os, &z, 5).unwrap());
        assert!(!resonance_membership(&os, &z, 7).unwrap());
        assert!(resonance_membership(&os, &z, 0).is_err());
    }

    #[test]
    fn field_mismatch_is_rejected() {
        let os = build_os_truncation(&build_lattice(&fixtures::pencil3()).unwrap(), FieldSpec::Rationals);
        let a = AomotoClass::from_i64(FieldSpec::Prime(5), &[1, 2, 3]);
        assert!(matches!(aomoto_h1_dim(&os, &a), Err(Error::Argument(_))));
    }

    #[test]
    fn falk_and_braid_betas() {
        for arr in [fixtures::falk_a(), fixtures::falk_a_prime()] {
            let lat = build_lattice(&arr).unwrap();
            assert_eq!(beta_p(&lat, 2).unwrap(), 0);
            assert_eq!(beta_p(&lat, 3).unwrap(), 0);
        }
        let braid = build_lattice(&fixtures::braid()).unwrap();
        assert_eq!(beta_p(&braid, 3).unwrap(), 1);
        assert_eq!(beta_p(&braid, 2).unwrap(), 0);
    }

    #[test]
    fn all_double_points_force_zero() {
        let lat = build_lattice(&fixtures::generic4()).unwrap();
        for p in [2, 3, 5, 7] {
            assert_eq!(beta_p(&lat, p).unwrap(), 0);
        }
    }
}
