//! π₁ of the projective complement of a real line arrangement, from the
//! braid monodromy of a wiring diagram, and presentations of finite-index
//! kernels (the Milnor fiber among them).

pub mod presentation;
pub mod schreier;
pub mod wiring;

use num_bigint::BigInt;
use num_traits::One;

pub use presentation::{GeneratorTag, GroupPresentation, Word};
pub use schreier::{reidemeister_schreier, CosetSchreierData};
pub use wiring::{choose_chart_and_wire, Chart, WiringDiagram, WiringEvent, DEFAULT_CHART_BUDGET};

use crate::arrangement::{Arrangement, IntersectionLattice};
use crate::error::{Error, Result};
use presentation::{commutator, conjugate, letter, product};

/// Presentation of π₁(U) on the meridians x_0, ..., x_{n−1}.
///
/// The fiber base point sits far below the real axis and the current
/// meridian words are kept per wire position. A crossing of m consecutive
/// wires with words a_1, ..., a_m (bottom to top) contributes the relations
/// [a_m ⋯ a_1, a_j] for j < m, then replaces the words by
/// b_j = Q_{j−1} a_{m−j+1} Q_{j−1}⁻¹ with Q_j = a_m ⋯ a_{m−j+1}. The last
/// relator x_{top} ⋯ x_{bottom} of the initial fiber kills the meridian of
/// the line at infinity.
pub fn braid_presentation(w: &WiringDiagram) -> Result<GroupPresentation> {
    let n = w.n();
    let mut words: Vec<Word> = w.initial_order.iter().map(|&l| vec![letter(l, false)]).collect();
    let fiber_product = {
        let parts: Vec<&[i32]> = words.iter().rev().map(Vec::as_slice).collect();
        product(&parts)
    };
    let mut relators = Vec::new();
    for e in &w.events {
        let m = e.wires.len();
        let a: Vec<Word> = words[e.position..e.position + m].to_vec();
        let p = {
            let parts: Vec<&[i32]> = a.iter().rev().map(Vec::as_slice).collect();
            product(&parts)
        };
        for aj in &a[..m - 1] {
            relators.push(commutator(&p, aj));
        }
        let mut q = Word::new();
        for j in 1..=m {
            let next = &a[m - j];
            words[e.position + j - 1] = conjugate(&q, next);
            q = product(&[&q, next]);
        }
    }
    relators.push(fiber_product);
    let pres = GroupPresentation::new((0..n).map(|line| GeneratorTag::Meridian { line }).collect(), relators)?;

    let ab = pres.abelianization();
    if ab.free_rank() != n - 1 || !ab.factors.iter().all(One::is_one) {
        return Err(Error::Consistency(format!(
            "abelianization is Z^{} with torsion {:?}, expected Z^{}",
            ab.free_rank(),
            ab.torsion().iter().map(BigInt::to_string).collect::<Vec<_>>(),
            n - 1
        )));
    }
    Ok(pres)
}

/// Chart search, wiring and braid monodromy in one call.
pub fn complement_group(arr: &Arrangement, lat: &IntersectionLattice, chart: Option<Chart>) -> Result<(WiringDiagram, GroupPresentation)> {
    let w = choose_chart_and_wire(arr, lat, chart, DEFAULT_CHART_BUDGET)?;
    let p = braid_presentation(&w)?;
    Ok((w, p))
}

/// π₁ of the Milnor fiber: the kernel of x_H ↦ 1 ∈ Z_n.
pub fn milnor_fiber_presentation(pres_u: &GroupPresentation) -> Result<CosetSchreierData> {
    let n = pres_u.num_generators() as u64;
    reidemeister_schreier(pres_u, &vec![1; n as usize], n)
}
