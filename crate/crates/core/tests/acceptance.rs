//! Acceptance criteria 1–10. Each criterion prints one PASS/FAIL line; the
//! test fails if any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use linarr::arrangement::collinear_triples_report;
use linarr::boundary::{b1_boundary_u, build_graph, delta_boundary_f};
use linarr::jumploci::{
    all_e_r, count_torsion_points, e_r, milnor_h1_decomposition, modular_bound_check, twisted_h1_dim, Character,
    MilnorFiberGroup,
};
use linarr::milnor::{delta_conjectural, delta_triple_points, CharPolyFactorization};
use linarr::multinet::{
    enumerate_3nets, is_latin_square, is_net, latin_square, pereira_yuzvinsky_check, search_multinets,
    verify_multinet, Multinet, SearchOptions,
};
use linarr::osalgebra::{aomoto_h1_dim, beta_p, build_os_truncation, AomotoClass, FieldSpec};
use linarr::pi1::{complement_group, GroupPresentation};
use linarr::{build_lattice, fixtures, Arrangement, IntersectionLattice};
use num_bigint::BigInt;
use rand::Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

struct Realized {
    arr: Arrangement,
    lat: IntersectionLattice,
    pres: GroupPresentation,
}

fn realize(arr: Arrangement) -> Realized {
    let lat = build_lattice(&arr).unwrap();
    let (_, pres) = complement_group(&arr, &lat, None).unwrap();
    Realized { arr, lat, pres }
}

/// Depth of every order-3 character of π₁(F), keyed by exponent vector.
fn order3_depths(fiber: &MilnorFiberGroup) -> BTreeMap<Vec<u64>, usize> {
    fiber
        .characters
        .characters(3)
        .map(|chi| {
            let d = twisted_h1_dim(fiber.presentation(), &chi).unwrap().dim;
            (chi.exponents, d)
        })
        .collect()
}

struct Ctx {
    falk: [Realized; 2],
    fibers: [MilnorFiberGroup; 2],
    depths: [BTreeMap<Vec<u64>, usize>; 2],
}

fn context() -> Ctx {
    let falk = [realize(fixtures::falk_a()), realize(fixtures::falk_a_prime())];
    let fibers = [MilnorFiberGroup::new(&falk[0].pres).unwrap(), MilnorFiberGroup::new(&falk[1].pres).unwrap()];
    let depths = [order3_depths(&fibers[0]), order3_depths(&fibers[1])];
    Ctx { falk, fibers, depths }
}

fn criterion_1(ctx: &Ctx) -> Outcome {
    let expected = BTreeMap::from([(2, 9), (3, 2)]);
    for r in &ctx.falk {
        check(r.lat.census() == &expected, format!("{} census {:?}", r.arr.label(), r.lat.census()))?;
    }
    let a = collinear_triples_report(&ctx.falk[0].lat).common_line_exists;
    let b = collinear_triples_report(&ctx.falk[1].lat).common_line_exists;
    check(a && !b, format!("common line: A {a}, A' {b}"))?;
    Ok("census {3:2, 2:9} for both; triple points share a line in A only".into())
}

fn criterion_2(ctx: &Ctx) -> Outcome {
    for r in &ctx.falk {
        let b2 = beta_p(&r.lat, 2).map_err(|e| e.to_string())?;
        let b3 = beta_p(&r.lat, 3).map_err(|e| e.to_string())?;
        check((b2, b3) == (0, 0), format!("{}: β₂ = {b2}, β₃ = {b3}", r.arr.label()))?;
        let n = r.lat.n();
        // second route: β₂ is forced to vanish because no flat of multiplicity
        // > 2 has even size, and β₃ = e₃ on triple-point lattices
        let forced_b2 = r.lat.flats().iter().all(|f| f.multiplicity() <= 2 || f.multiplicity() % 2 != 0);
        check(forced_b2, "a flat of even multiplicity > 2")?;
        let e3 = e_r(&r.pres, 3).map_err(|e| e.to_string())?;
        check(e3 == b3, format!("e₃ = {e3} but β₃ = {b3}"))?;
        let sigma = vec![1i64; n];
        for p in [2, 3] {
            let brute = common::aomoto_h1_bruteforce(&r.lat, p, &sigma);
            check(brute == 0, format!("exterior-algebra oracle gives β_{p} = {brute}"))?;
        }
    }
    Ok("β₂ = β₃ = 0 for both (F_p rank, exterior-algebra oracle, β₃ = e₃ and the parity criterion)".into())
}

fn criterion_3(ctx: &Ctx) -> Outcome {
    let reduced = SearchOptions {
        reduced_only: true,
        ..SearchOptions::default()
    };
    for r in &ctx.falk {
        let nets = enumerate_3nets(&r.lat, &SearchOptions::default()).map_err(|e| e.to_string())?;
        check(nets.is_empty(), format!("{}: {} 3-nets", r.arr.label(), nets.len()))?;
        let multinets = search_multinets(&r.lat, 3, &reduced).map_err(|e| e.to_string())?;
        check(multinets.is_empty(), format!("{}: {} reduced 3-multinets", r.arr.label(), multinets.len()))?;
        let brute = common::all_multinets_naive(&r.lat, 3, 1);
        check(brute.is_empty(), format!("{}: brute force finds {} reduced 3-multinets", r.arr.label(), brute.len()))?;
    }
    Ok("no 3-net and no reduced 3-multinet on either arrangement (search and brute force)".into())
}

fn criterion_4(ctx: &Ctx) -> Outcome {
    let expected = CharPolyFactorization::from_exponents([(1, 5)]);
    for r in &ctx.falk {
        let e = all_e_r(&r.pres).map_err(|e| e.to_string())?;
        let m = milnor_h1_decomposition(&e, 6).map_err(|e| e.to_string())?;
        check(m.delta == expected, format!("{}: Δ = {}", r.arr.label(), m.delta))?;
        let b3 = beta_p(&r.lat, 3).unwrap();
        let b2 = beta_p(&r.lat, 2).unwrap();
        let cor = delta_triple_points(&r.lat, b3).map_err(|e| e.to_string())?;
        let conj = delta_conjectural(&r.lat, b2, b3).map_err(|e| e.to_string())?;
        check(cor == m.delta && conj.delta == m.delta, format!("formulas give {cor} and {}", conj.delta))?;
    }
    Ok("Δ(t) = (t-1)^5 for both by Fox calculus, triple-point and conjectural formulas".into())
}

fn criterion_5(ctx: &Ctx) -> Outcome {
    for (r, f) in ctx.falk.iter().zip(&ctx.fibers) {
        check(
            f.b1() == 5 && f.torsion().is_empty(),
            format!("{}: H₁(F) = Z^{} ⊕ {:?}", r.arr.label(), f.b1(), f.torsion()),
        )?;
    }
    Ok("H₁(F, Z) = Z^5, torsion-free, for both".into())
}

fn criterion_6(ctx: &Ctx) -> Outcome {
    let counts = |d: &BTreeMap<Vec<u64>, usize>, s: usize| d.values().filter(|&&v| v >= s).count();
    // F is the fiber whose arrangement has its triple points on disjoint sets
    // of lines, F' the one whose triple points share a line.
    let common: Vec<bool> = ctx.falk.iter().map(|r| collinear_triples_report(&r.lat).common_line_exists).collect();
    let f = common.iter().position(|&c| !c).ok_or("no fixture without a common line")?;
    let fp = common.iter().position(|&c| c).ok_or("no fixture with a common line")?;
    let depth2 = (counts(&ctx.depths[f], 2), counts(&ctx.depths[fp], 2));
    let depth1 = (counts(&ctx.depths[f], 1), counts(&ctx.depths[fp], 1));
    check(depth2 == (3, 1), format!("depth-2 counts {depth2:?}"))?;
    check(depth1 == (15, 17), format!("depth-1 counts {depth1:?}"))?;
    check(
        ctx.depths.iter().all(|d| d.len() == 243),
        "character scan did not cover 3^5 characters",
    )?;
    Ok(format!(
        "order-3 counts (F, F') = {depth2:?} at depth 2, {depth1:?} at depth 1 (F: {}, F': {})",
        ctx.falk[f].arr.label(),
        ctx.falk[fp].arr.label()
    ))
}

fn criterion_7(ctx: &Ctx) -> Outcome {
    let expected = CharPolyFactorization::from_exponents([(1, 13), (3, 2)]);
    for r in &ctx.falk {
        let g = build_graph(&r.lat);
        let b1 = b1_boundary_u(&g).map_err(|e| e.to_string())?;
        check(b1 == 13, format!("{}: b₁(∂U) = {b1}", r.arr.label()))?;
        let d = delta_boundary_f(&r.lat);
        check(d == expected, format!("{}: Δ_∂F = {d}", r.arr.label()))?;
    }
    Ok("b₁(∂U) = 13 and Δ_∂F(t) = (t-1)^13 (t^2+t+1)^2 for both".into())
}

fn criterion_8() -> Outcome {
    let r = realize(fixtures::braid());
    let b3 = beta_p(&r.lat, 3).map_err(|e| e.to_string())?;
    let e3 = e_r(&r.pres, 3).map_err(|e| e.to_string())?;
    let e = all_e_r(&r.pres).map_err(|e| e.to_string())?;
    let m = milnor_h1_decomposition(&e, 6).map_err(|e| e.to_string())?;
    let fiber = MilnorFiberGroup::new(&r.pres).map_err(|e| e.to_string())?;
    check(b3 == 1, format!("β₃ = {b3}"))?;
    check(e3 == 1, format!("e₃ = {e3}"))?;
    check(
        m.delta == CharPolyFactorization::from_exponents([(1, 5), (3, 1)]),
        format!("Δ = {}", m.delta),
    )?;
    check(fiber.b1() == 7 && fiber.torsion().is_empty(), format!("SNF b₁(F) = {}", fiber.b1()))?;
    check(m.b1_f == 7, format!("Fox b₁(F) = {}", m.b1_f))?;
    let nets = enumerate_3nets(&r.lat, &SearchOptions::default()).map_err(|e| e.to_string())?;
    check(nets.len() == 1, format!("{} 3-net classes", nets.len()))?;
    let brute: BTreeSet<Vec<Vec<usize>>> = common::all_multinets_naive(&r.lat, 3, 1).into_iter().map(|(c, _)| c).collect();
    check(brute.len() == 1 && brute.contains(&nets[0].classes), "brute-force 3-nets differ")?;
    Ok("braid: β₃ = e₃ = 1, Δ = (t-1)^5 (t^2+t+1), b₁(F) = 7 by SNF and Fox, one 3-net".into())
}

fn realized_fixtures() -> Vec<Realized> {
    fixtures::all().into_iter().filter_map(|i| i.realized().cloned()).map(realize).collect()
}

fn all_multinets(lat: &IntersectionLattice) -> Vec<Multinet> {
    let mut v = search_multinets(lat, 3, &SearchOptions::default()).unwrap();
    v.extend(search_multinets(lat, 4, &SearchOptions::default()).unwrap());
    v
}

fn criterion_9(ctx: &Ctx) -> Outcome {
    let mut rng = common::rng(9);
    // pair coverage on random arrangements
    for _ in 0..200 {
        let n = rng.gen_range(1..=8);
        let arr = common::random_arrangement(&mut rng, n, 4);
        let lat = build_lattice(&arr).map_err(|e| e.to_string())?;
        let pairs: usize = lat.flats().iter().map(|f| f.multiplicity() * (f.multiplicity() - 1) / 2).sum();
        check(pairs == n * (n - 1) / 2, format!("Σ C(q,2) = {pairs} for n = {n}"))?;
        for i in 0..n {
            for j in i + 1..n {
                let holding = lat.flats().iter().filter(|f| f.contains(i) && f.contains(j)).count();
                check(holding == 1, format!("pair ({i},{j}) lies in {holding} flats"))?;
            }
        }
        check(
            lat.census() == &common::census_of(&common::points_by_cross_products(&arr)),
            "census differs from cross products",
        )?;
    }
    // scaling invariance of the Aomoto complex
    for r in &ctx.falk {
        for field in [FieldSpec::Rationals, FieldSpec::prime(5).unwrap()] {
            let os = build_os_truncation(&r.lat, field);
            for _ in 0..20 {
                let a: Vec<i64> = (0..6).map(|_| rng.gen_range(-3..=3)).collect();
                let c = BigInt::from(rng.gen_range(1..=4));
                let class = AomotoClass::from_i64(field, &a);
                let d1 = aomoto_h1_dim(&os, &class).unwrap().dim;
                let d2 = aomoto_h1_dim(&os, &class.scaled(&c)).unwrap().dim;
                check(d1 == d2, format!("dim changes under scaling: {d1} vs {d2}"))?;
            }
        }
    }
    // modular bound, degree identity and Maschke on every realized fixture
    for r in realized_fixtures() {
        let n = r.lat.n() as u64;
        for p in [2u64, 3, 5, 7, 11] {
            let mut s = 1;
            while n % p.pow(s) == 0 {
                let b = modular_bound_check(&r.pres, &r.lat, p, s).map_err(|e| e.to_string())?;
                check(b.holds, format!("{}: e_{} = {:?} > β_{p} = {}", r.arr.label(), p.pow(s), b.e, b.beta))?;
                s += 1;
            }
        }
        let e = all_e_r(&r.pres).unwrap();
        let m = milnor_h1_decomposition(&e, n as usize).unwrap();
        let fiber = MilnorFiberGroup::new(&r.pres).unwrap();
        check(m.delta.degree() == fiber.b1() as u64, format!("{}: deg Δ = {} ≠ b₁(F)", r.arr.label(), m.delta.degree()))?;
        let maschke: usize = (1..n)
            .map(|k| {
                let chi = Character::new(&r.pres, n, vec![k; n as usize]).unwrap();
                twisted_h1_dim(&r.pres, &chi).unwrap().dim
            })
            .sum();
        check(
            maschke + (n as usize - 1) == fiber.b1(),
            format!("{}: Σ_k depth(ρ^k) = {maschke}, b₁(F) = {}", r.arr.label(), fiber.b1()),
        )?;
    }
    // conjugation symmetry at order 3 on both Falk fibers
    for d in &ctx.depths {
        for (exps, &v) in d {
            let inv: Vec<u64> = exps.iter().map(|&e| (3 - e) % 3).collect();
            check(d[&inv] == v, format!("depth({exps:?}) = {v} ≠ depth of inverse"))?;
        }
    }
    // Latin squares, Pereira–Yuzvinsky
    for input in fixtures::all() {
        let lat = input.lattice().unwrap();
        for m in all_multinets(&lat) {
            check(verify_multinet(&lat, &m).unwrap().valid, "search returned an invalid multinet")?;
            check(pereira_yuzvinsky_check(&m).is_ok(), format!("{}: k ∈ {{3,4}} bound fired", input.label()))?;
            if m.k() == 3 && is_net(&m, &lat) {
                let sq = latin_square(&m, &lat).unwrap();
                check(is_latin_square(&sq), "not a Latin square")?;
                let rebuilt: BTreeSet<Vec<usize>> = sq
                    .iter()
                    .enumerate()
                    .flat_map(|(i, row)| {
                        let m = &m;
                        row.iter().enumerate().map(move |(j, &l)| {
                            let mut f = vec![m.classes[0][i], m.classes[1][j], m.classes[2][l]];
                            f.sort_unstable();
                            f
                        })
                    })
                    .collect();
                let base: BTreeSet<Vec<usize>> = m.base_locus.iter().map(|b| lat.flats()[b.flat].lines.clone()).collect();
                check(rebuilt == base, format!("{}: Latin square does not rebuild the base locus", input.label()))?;
            }
        }
    }
    Ok("pair coverage (200 random), scaling, modular bounds, deg Δ = b₁(F), Maschke, conjugation, Latin squares, Pereira–Yuzvinsky".into())
}

fn criterion_10() -> Outcome {
    let r = realize(fixtures::generic4());
    let e = all_e_r(&r.pres).map_err(|e| e.to_string())?;
    let m = milnor_h1_decomposition(&e, 4).map_err(|e| e.to_string())?;
    check(m.delta == CharPolyFactorization::from_exponents([(1, 3)]), format!("Δ = {}", m.delta))?;
    for order in [2, 4] {
        let c = count_torsion_points(&r.pres, order, 1, 4096).map_err(|e| e.to_string())?;
        // only the trivial character, of depth b₁(U) = 3
        check(c.count == 1 && c.histogram.get(&3) == Some(&1), format!("order {order}: {:?}", c.histogram))?;
    }
    let d = delta_boundary_f(&r.lat);
    check(d.degree() == 6 && d == CharPolyFactorization::from_exponents([(1, 6)]), format!("Δ_∂F = {d}"))?;
    Ok("generic 4 lines: Δ = (t-1)^3, V₁(U) has no nontrivial order-2 or order-4 points, deg Δ_∂F = 6".into())
}

#[test]
fn acceptance_criteria() {
    let ctx = context();
    let results: Vec<(usize, Outcome)> = vec![
        (1, criterion_1(&ctx)),
        (2, criterion_2(&ctx)),
        (3, criterion_3(&ctx)),
        (4, criterion_4(&ctx)),
        (5, criterion_5(&ctx)),
        (6, criterion_6(&ctx)),
        (7, criterion_7(&ctx)),
        (8, criterion_8()),
        (9, criterion_9(&ctx)),
        (10, criterion_10()),
    ];
    let mut out = std::io::stdout().lock();
    let mut failed = Vec::new();
    for (k, r) in &results {
        let line = match r {
            Ok(msg) => format!("criterion {k:>2}: PASS  {msg}\n"),
            Err(msg) => {
                failed.push(*k);
                format!("criterion {k:>2}: FAIL  {msg}\n")
            }
        };
        out.write_all(line.as_bytes()).unwrap();
    }
    out.flush().unwrap();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
