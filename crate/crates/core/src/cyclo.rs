//! Cyclotomic arithmetic: Φ_r, Euler's totient, the ring Z[x]/Φ_r and the
//! field Q(ζ_r) = Q[x]/Φ_r.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::{is_prime, Field, Fp};

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn totient(r: u64) -> u64 {
    (1..=r).filter(|&k| num_integer::gcd(k, r) == 1).count() as u64
}

/// Coefficients of Φ_r(x), lowest degree first.
pub fn cyclotomic_polynomial(r: u64) -> Vec<i64> {
    assert!(r >= 1, "cyclotomic order must be positive");
    // x^r - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; r as usize + 1];
    num[0] = -1;
    num[r as usize] = 1;
    for d in divisors(r).into_iter().filter(|&d| d < r) {
        num = exact_div_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0), "division by Φ_d is exact");
    quot
}

/// Element of Z[x]/Φ_r(x) in the power basis 1, x, ..., x^{φ(r)-1}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloPoly {
    order: u64,
    coeffs: Vec<BigInt>,
}

impl CycloPoly {
    pub fn zero(order: u64) -> Self {
        CycloPoly {
            order,
            coeffs: vec![BigInt::zero(); totient(order) as usize],
        }
    }

    /// Reduce an arbitrary integer polynomial (lowest degree first).
    pub fn from_poly(order: u64, poly: &[BigInt]) -> Self {
        let phi = cyclotomic_polynomial(order);
        let deg = phi.len() - 1;
        let mut c = poly.to_vec();
        for k in (deg..c.len()).rev() {
            let lead = c[k].clone();
            if lead.is_zero() {
                continue;
            }
            for (i, &p) in phi.iter().enumerate() {
                c[k - deg + i] -= &lead * p;
            }
        }
        c.resize(deg, BigInt::zero());
        CycloPoly { order, coeffs: c }
    }

    /// The group-ring element Σ counts[k]·x^k with exponents taken mod r.
    pub fn from_exponent_counts(order: u64, counts: &[i64]) -> Self {
        let mut poly = vec![BigInt::zero(); order as usize];
        for (k, &c) in counts.iter().enumerate() {
            poly[k % order as usize] += c;
        }
        CycloPoly::from_poly(order, &poly)
    }

    pub fn monomial(order: u64, exponent: u64) -> Self {
        let mut counts = vec![0i64; order as usize];
        counts[(exponent % order) as usize] = 1;
        CycloPoly::from_exponent_counts(order, &counts)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Image under x ↦ w in F_q, for w a primitive r-th root of unity mod q.
    pub fn reduce_mod(&self, root: Fp) -> Fp {
        let q = root.modulus();
        let mut acc = Fp::new(0, q);
        let mut pw = Fp::new(1, q);
        for c in &self.coeffs {
            acc = acc + Fp::from_big(c, q) * pw;
            pw = pw * root;
        }
        acc
    }

    pub fn to_field(&self, ctx: &Arc<CycloField>) -> CycloElem {
        debug_assert_eq!(ctx.order, self.order);
        CycloElem {
            coeffs: self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect(),
            ctx: ctx.clone(),
        }
    }
}

impl fmt::Debug for CycloPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod Φ_{}", format_poly(&self.coeffs), self.order)
    }
}

fn format_poly<T: fmt::Display + Zero>(c: &[T]) -> String {
    let terms: Vec<String> = c
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, v)| match k {
            0 => format!("{v}"),
            1 => format!("({v})x"),
            _ => format!("({v})x^{k}"),
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

impl Add for CycloPoly {
    type Output = CycloPoly;
    fn add(mut self, rhs: CycloPoly) -> CycloPoly {
        assert_eq!(self.order, rhs.order);
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
        self
    }
}

impl Sub for CycloPoly {
    type Output = CycloPoly;
    fn sub(mut self, rhs: CycloPoly) -> CycloPoly {
        assert_eq!(self.order, rhs.order);
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a -= b;
        }
        self
    }
}

impl Mul for CycloPoly {
    type Output = CycloPoly;
    fn mul(self, rhs: CycloPoly) -> CycloPoly {
        assert_eq!(self.order, rhs.order);
        let n = self.coeffs.len();
        let mut prod = vec![BigInt::zero(); (2 * n).saturating_sub(1).max(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        CycloPoly::from_poly(self.order, &prod)
    }
}

/// The number field Q(ζ_r) as a context shared by its elements.
#[derive(Debug, PartialEq, Eq)]
pub struct CycloField {
    order: u64,
    /// Monic Φ_r, lowest degree first.
    modulus: Vec<BigRational>,
}

impl CycloField {
    pub fn new(order: u64) -> Arc<Self> {
        let modulus = cyclotomic_polynomial(order)
            .into_iter()
            .map(|c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        Arc::new(CycloField { order, modulus })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn zero(self: &Arc<Self>) -> CycloElem {
        CycloElem {
            coeffs: vec![BigRational::zero(); self.degree()],
            ctx: self.clone(),
        }
    }

    pub fn one(self: &Arc<Self>) -> CycloElem {
        let mut z = self.zero();
        if self.degree() > 0 {
            z.coeffs[0] = BigRational::one();
        }
        z
    }
}

/// Element of Q(ζ_r) in the power basis.
#[derive(Clone)]
pub struct CycloElem {
    coeffs: Vec<BigRational>,
    ctx: Arc<CycloField>,
}

impl CycloElem {
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn reduce(ctx: &Arc<CycloField>, mut c: Vec<BigRational>) -> CycloElem {
        let deg = ctx.degree();
        for k in (deg..c.len()).rev() {
            let lead = c[k].clone();
            if Zero::is_zero(&lead) {
                continue;
            }
            for (i, p) in ctx.modulus.iter().enumerate() {
                c[k - deg + i] = &c[k - deg + i] - &lead * p;
            }
        }
        c.resize(deg, BigRational::zero());
        CycloElem {
            coeffs: c,
            ctx: ctx.clone(),
        }
    }
}

impl PartialEq for CycloElem {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.order == other.ctx.order && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in Q(ζ_{})", format_poly(&self.coeffs), self.ctx.order)
    }
}

impl Add for CycloElem {
    type Output = CycloElem;
    fn add(mut self, rhs: CycloElem) -> CycloElem {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
        self
    }
}

impl Sub for CycloElem {
    type Output = CycloElem;
    fn sub(mut self, rhs: CycloElem) -> CycloElem {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a -= b;
        }
        self
    }
}

impl Neg for CycloElem {
    type Output = CycloElem;
    fn neg(mut self) -> CycloElem {
        for a in self.coeffs.iter_mut() {
            *a = -a.clone();
        }
        self
    }
}

impl Mul for CycloElem {
    type Output = CycloElem;
    fn mul(self, rhs: CycloElem) -> CycloElem {
        let n = self.coeffs.len();
        if n == 0 {
            return self;
        }
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !Zero::is_zero(b) {
                    prod[i + j] += a * b;
                }
            }
        }
        CycloElem::reduce(&self.ctx, prod)
    }
}

impl Field for CycloElem {
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn inverse(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        // Extended Euclid in Q[x]: s·a + t·Φ = g, g a nonzero constant
        // because Φ_r is irreducible over Q.
        let a = trim(self.coeffs.clone());
        let (g, s) = ext_gcd(&a, &trim(self.ctx.modulus.clone()));
        assert!(
            g.len() == 1,
            "zero divisor in Q(ζ_{}): Φ_r must be irreducible",
            self.ctx.order
        );
        let inv_g = BigRational::one() / g[0].clone();
        let s: Vec<BigRational> = s.into_iter().map(|c| c * inv_g.clone()).collect();
        Some(CycloElem::reduce(&self.ctx, s))
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (vec![], trim(rem));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    let lead_inv = BigRational::one() / b[db].clone();
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] * &lead_inv;
        if Zero::is_zero(&c) {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] = &rem[k + i] - &c * bi;
        }
        quot[k] = c;
    }
    (trim(quot), trim(rem))
}

fn poly_sub_mul(a: &[BigRational], q: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let len = a.len().max(if q.is_empty() || b.is_empty() { 0 } else { q.len() + b.len() - 1 });
    let mut out = vec![BigRational::zero(); len];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in q.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] -= x * y;
        }
    }
    trim(out)
}

/// Returns (g, s) with s·a ≡ g (mod m).
fn ext_gcd(a: &[BigRational], m: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    let (mut s0, mut s1): (Vec<BigRational>, Vec<BigRational>) = (vec![], vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub_mul(&s0, &q, &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

/// Smallest prime q ≥ `min` with q ≡ 1 (mod r), and a primitive r-th root of
/// unity modulo q.
pub fn split_prime(r: u64, min: u64) -> Fp {
    let mut q = min.max(r + 1);
    q += (r + 1 - q % r) % r;
    loop {
        if q % r == 1 && is_prime(q) {
            if let Some(w) = primitive_root_of_unity(q, r) {
                return w;
            }
        }
        q += r;
    }
}

fn primitive_root_of_unity(q: u64, r: u64) -> Option<Fp> {
    let prime_factors: Vec<u64> = divisors(r).into_iter().filter(|&d| d > 1 && is_prime(d)).collect();
    (2..q).map(|g| Fp::new(g as i64, q).pow((q - 1) / r)).find(|w| {
        w.pow(r).value() == 1 && prime_factors.iter().all(|&p| w.pow(r / p).value() != 1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn totients() {
        let t: Vec<u64> = (1..=12).map(totient).collect();
        assert_eq!(t, vec![1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
        for r in 1..40 {
            assert_eq!(cyclotomic_polynomial(r).len() as u64 - 1, totient(r));
        }
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for r in 2..12u64 {
            let counts = vec![1i64; r as usize];
            assert!(CycloPoly::from_exponent_counts(r, &counts).is_zero());
            let z = CycloPoly::monomial(r, 1);
            let mut p = CycloPoly::monomial(r, 0);
            for _ in 0..r {
                p = p * z.clone();
            }
            assert_eq!(p, CycloPoly::monomial(r, 0));
        }
    }

    #[test]
    fn field_inverses() {
        for r in [3u64, 4, 5, 6, 8, 12] {
            let ctx = CycloField::new(r);
            let x = CycloPoly::from_exponent_counts(r, &[2, -1, 3]).to_field(&ctx);
            let inv = x.inverse().unwrap();
            assert_eq!(x * inv, ctx.one());
        }
    }

    #[test]
    fn split_primes_carry_primitive_roots() {
        for r in [2u64, 3, 4, 6, 12] {
            let w = split_prime(r, 1000);
            assert_eq!(w.modulus() % r, 1);
            assert_eq!(w.pow(r).value(), 1);
            // 1 + w + ... + w^{r-1} = 0 for a primitive root
            let s = (0..r).fold(Fp::new(0, w.modulus()), |acc, k| acc + w.pow(k));
            assert_eq!(s.value(), 0);
            let x = CycloPoly::from_exponent_counts(r, &[1, 2, 3]);
            let direct = Fp::new(1, w.modulus()) + Fp::new(2, w.modulus()) * w + Fp::new(3, w.modulus()) * w.pow(2);
            assert_eq!(x.reduce_mod(w), direct);
        }
    }
}
