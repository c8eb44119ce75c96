//! Reidemeister–Schreier rewriting for the kernel of a homomorphism onto a
//! finite cyclic group.

use std::collections::VecDeque;

use num_integer::Integer;
use serde::Serialize;

use super::presentation::{generator_of, letter, GeneratorTag, GroupPresentation, Word};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct CosetSchreierData {
    pub index: u64,
    /// Image of each parent generator in Z_n.
    pub images: Vec<u64>,
    /// Transversal: representative word (in parent generators) per coset.
    pub representatives: Vec<Word>,
    /// Presentation of the kernel on the Schreier generators off the tree.
    pub presentation: GroupPresentation,
    /// Size of the full Schreier generating set, n·g.
    pub full_generators: usize,
    /// Number of rewritten relators, n·|R|.
    pub full_relators: usize,
}

impl CosetSchreierData {
    /// Euler-characteristic bookkeeping of the full Schreier presentation:
    /// n·(g − |R|).
    pub fn full_deficiency(&self) -> i64 {
        self.full_generators as i64 - self.full_relators as i64
    }
}

pub fn reidemeister_schreier(pres: &GroupPresentation, images: &[u64], n: u64) -> Result<CosetSchreierData> {
    let g = pres.num_generators();
    if images.len() != g {
        return Err(Error::Argument(format!("{} images for {g} generators", images.len())));
    }
    if n == 0 {
        return Err(Error::Argument("index must be positive".into()));
    }
    let images: Vec<u64> = images.iter().map(|x| x % n).collect();
    let d = images.iter().fold(n, |acc, &x| acc.gcd(&x));
    if d != 1 {
        return Err(Error::Argument(format!(
            "homomorphism is not onto Z_{n}: its image is the subgroup generated by {d}, of order {}",
            n / d
        )));
    }
    if n == 1 {
        return Ok(CosetSchreierData {
            index: 1,
            images,
            representatives: vec![Vec::new()],
            presentation: pres.clone(),
            full_generators: g,
            full_relators: pres.num_relators(),
        });
    }

    let nc = n as usize;
    // Spanning tree of the coset graph by breadth-first search, generators
    // tried in order with positive letters only.
    let mut reps: Vec<Option<Word>> = vec![None; nc];
    let mut tree = vec![vec![false; g]; nc];
    reps[0] = Some(Vec::new());
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for x in 0..g {
            let t = (c + images[x] as usize) % nc;
            if reps[t].is_none() {
                let mut w = reps[c].clone().unwrap();
                w.push(letter(x, false));
                reps[t] = Some(w);
                tree[c][x] = true;
                queue.push_back(t);
            }
        }
    }
    let representatives: Vec<Word> = reps.into_iter().map(|r| r.expect("surjective map reaches every coset")).collect();

    let mut index_of = vec![vec![usize::MAX; g]; nc];
    let mut generators = Vec::new();
    for c in 0..nc {
        for x in 0..g {
            if !tree[c][x] {
                index_of[c][x] = generators.len();
                generators.push(GeneratorTag::Schreier { coset: c, parent: x });
            }
        }
    }

    let rewrite = |w: &[i32], start: usize| -> Word {
        let mut d = start;
        let mut out = Word::new();
        for &l in w {
            let x = generator_of(l);
            let step = images[x] as usize;
            if l > 0 {
                if !tree[d][x] {
                    out.push(letter(index_of[d][x], false));
                }
                d = (d + step) % nc;
            } else {
                d = (d + nc - step) % nc;
                if !tree[d][x] {
                    out.push(letter(index_of[d][x], true));
                }
            }
        }
        out
    };

    let mut relators = Vec::with_capacity(nc * pres.num_relators());
    for r in &pres.relators {
        for c in 0..nc {
            relators.push(rewrite(r, c));
        }
    }
    Ok(CosetSchreierData {
        index: n,
        images,
        representatives,
        presentation: GroupPresentation::new(generators, relators)?,
        full_generators: nc * g,
        full_relators: nc * pres.num_relators(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pi1::presentation::commutator;

    fn meridians(n: usize) -> Vec<GeneratorTag> {
        (0..n).map(|line| GeneratorTag::Meridian { line }).collect()
    }

    #[test]
    fn index_one_is_identity() {
        let p = GroupPresentation::new(meridians(2), vec![commutator(&[1], &[2])]).unwrap();
        let rs = reidemeister_schreier(&p, &[1, 1], 1).unwrap();
        assert_eq!(rs.presentation, p);
    }

    #[test]
    fn rejects_non_surjective_maps() {
        let p = GroupPresentation::new(meridians(2), vec![]).unwrap();
        let e = reidemeister_schreier(&p, &[2, 4], 6).unwrap_err();
        assert!(e.to_string().contains("generated by 2"), "{e}");
    }

    #[test]
    fn free_group_subgroup_ranks() {
        // index-n subgroup of F_2 is free of rank n + 1
        let p = GroupPresentation::new(meridians(2), vec![]).unwrap();
        for n in 2..6 {
            let rs = reidemeister_schreier(&p, &[1, 1], n).unwrap();
            assert_eq!(rs.presentation.num_generators(), n as usize + 1);
            assert_eq!(rs.presentation.abelianization().free_rank(), n as usize + 1);
            assert_eq!(rs.representatives[3 % n as usize], vec![1; 3 % n as usize]);
        }
    }

    #[test]
    fn full_set_bookkeeping() {
        let p = GroupPresentation::new(meridians(3), vec![commutator(&[1], &[2]), commutator(&[2, 3], &[1])]).unwrap();
        let rs = reidemeister_schreier(&p, &[1, 1, 1], 4).unwrap();
        assert_eq!(rs.full_deficiency(), 4 * (3 - 2));
        let reduced = rs.presentation.num_generators() as i64 - rs.presentation.num_relators() as i64;
        assert_eq!(reduced, rs.full_deficiency() - 3);
    }

    #[test]
    fn z_squared_kernel() {
        // ker(Z² → Z_3, (a, b) ↦ a + b) ≅ Z²
        let p = GroupPresentation::new(meridians(2), vec![commutator(&[1], &[2])]).unwrap();
        let rs = reidemeister_schreier(&p, &[1, 1], 3).unwrap();
        let ab = rs.presentation.abelianization();
        assert_eq!(ab.free_rank(), 2);
        assert!(ab.torsion().is_empty());
    }
}
