use linarr::jumploci::{all_e_r, milnor_h1_decomposition};
use linarr::milnor::{delta_conjectural, delta_triple_points, is_essential, CharPolyFactorization};
use linarr::osalgebra::beta_p;
use linarr::pi1::complement_group;
use linarr::{build_lattice, fixtures, Error};
use proptest::prelude::*;

/// Φ_r as integer coefficients, by dividing t^r − 1 by Φ_d for d | r, d < r.
fn cyclotomic(r: usize) -> Vec<i64> {
    let mut num = vec![0i64; r + 1];
    num[0] = -1;
    num[r] = 1;
    for d in (1..r).filter(|d| r % d == 0) {
        num = divide(&num, &cyclotomic(d));
    }
    num
}

fn divide(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = rem[i + db] / b[db];
        q[i] = c;
        for (j, &bj) in b.iter().enumerate() {
            rem[i + j] -= c * bj;
        }
    }
    assert!(rem.iter().all(|&x| x == 0));
    q
}

const P: i128 = 1_000_000_007;

fn eval(p: &[i64], t: i128) -> i128 {
    p.iter().rev().fold(0i128, |acc, &c| (acc * t + c as i128).rem_euclid(P))
}

fn pow_mod(x: i128, e: u32) -> i128 {
    (0..e).fold(1, |acc, _| acc * x % P)
}

/// Value mod P.
fn eval_factorization(f: &CharPolyFactorization, t: i128) -> i128 {
    f.factors.iter().fold(1, |acc, (&r, &e)| acc * pow_mod(eval(&cyclotomic(r as usize), t), e as u32) % P)
}

proptest! {
    #[test]
    fn t_power_minus_one_factors(m in 1u64..=24, t in -3i128..=3) {
        let f = CharPolyFactorization::t_power_minus_one(m);
        prop_assert_eq!(eval_factorization(&f, t), (pow_mod(t.rem_euclid(P), m as u32) - 1).rem_euclid(P));
        prop_assert_eq!(f.degree(), m);
    }

    #[test]
    fn products_and_powers(a in prop::collection::btree_map(1u64..=12, 0usize..=3, 0..4),
                           b in prop::collection::btree_map(1u64..=12, 0usize..=3, 0..4),
                           k in 0usize..=3, t in 2i128..=3) {
        let fa = CharPolyFactorization::from_exponents(a);
        let fb = CharPolyFactorization::from_exponents(b);
        prop_assert_eq!(eval_factorization(&fa.mul(&fb), t), eval_factorization(&fa, t) * eval_factorization(&fb, t) % P);
        prop_assert_eq!(fa.mul(&fb).degree(), fa.degree() + fb.degree());
        prop_assert_eq!(eval_factorization(&fa.pow(k), t), pow_mod(eval_factorization(&fa, t), k as u32));
    }
}

#[test]
fn display() {
    assert_eq!(CharPolyFactorization::one().to_string(), "1");
    let f = CharPolyFactorization::from_exponents([(1, 5), (3, 1)]);
    assert_eq!(f.to_string(), "(t-1)^5 (t^2+t+1)");
    let g = CharPolyFactorization::from_exponents([(2, 1), (4, 2), (5, 1)]);
    assert_eq!(g.to_string(), "(t+1) (t^2+1)^2 Phi_5(t)");
}

#[test]
fn triple_point_formula_agrees_with_computation() {
    let mut checked = 0;
    for input in fixtures::all() {
        let Some(arr) = input.realized() else { continue };
        let lat = build_lattice(arr).unwrap();
        let beta3 = beta_p(&lat, 3).unwrap();
        let predicted = match delta_triple_points(&lat, beta3) {
            Ok(d) => d,
            Err(Error::Argument(_)) => continue,
            Err(e) => panic!("{e}"),
        };
        let pres = complement_group(arr, &lat, None).unwrap().1;
        let computed = milnor_h1_decomposition(&all_e_r(&pres).unwrap(), arr.len()).unwrap().delta;
        assert_eq!(predicted, computed, "{}", arr.label());
        checked += 1;
    }
    assert!(checked >= 5);
}

#[test]
fn conjectural_formula_needs_an_essential_arrangement() {
    let pencil = build_lattice(&fixtures::pencil3()).unwrap();
    assert!(!is_essential(&pencil));
    assert!(matches!(delta_conjectural(&pencil, 0, 1), Err(Error::Argument(_))));
    let b3 = build_lattice(&fixtures::b3()).unwrap();
    assert!(matches!(delta_triple_points(&b3, 0), Err(Error::Argument(_))));
    let c = delta_conjectural(&b3, 0, 0).unwrap();
    assert!(c.conjectural);
    assert_eq!(c.delta.to_string(), "(t-1)^8");
}
