//! Finitely presented groups with freely reduced relator words.
//!
//! A word is a sequence of nonzero integers: `g + 1` stands for generator
//! `g` and `-(g + 1)` for its inverse.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::snf::{smith_normal_form, SmithForm};

pub type Word = Vec<i32>;

pub fn letter(generator: usize, inverse: bool) -> i32 {
    let l = generator as i32 + 1;
    if inverse {
        -l
    } else {
        l
    }
}

pub fn generator_of(l: i32) -> usize {
    (l.unsigned_abs() - 1) as usize
}

/// Cancel adjacent inverse pairs.
pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|l| -l).collect()
}

/// Reduced product of the given words, left to right.
pub fn product(words: &[&[i32]]) -> Word {
    let mut out = Word::new();
    for w in words {
        for &l in *w {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
    }
    out
}

/// a b a⁻¹ b⁻¹
pub fn commutator(a: &[i32], b: &[i32]) -> Word {
    product(&[a, b, &inverse(a), &inverse(b)])
}

/// u w u⁻¹
pub fn conjugate(u: &[i32], w: &[i32]) -> Word {
    product(&[u, w, &inverse(u)])
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorTag {
    /// Meridian x_H of the line with this index.
    Meridian { line: usize },
    /// Schreier generator s_{c,x} = rep(c) · x · rep(c + φ(x))⁻¹.
    Schreier { coset: usize, parent: usize },
    Auxiliary { name: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    pub generators: Vec<GeneratorTag>,
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<GeneratorTag>, relators: Vec<Word>) -> Result<Self> {
        let g = generators.len();
        for (i, r) in relators.iter().enumerate() {
            if let Some(&bad) = r.iter().find(|&&l| l == 0 || generator_of(l) >= g) {
                return Err(Error::Validation(format!(
                    "relator {i} uses letter {bad}, but there are {g} generators"
                )));
            }
        }
        let relators = relators.iter().map(|r| free_reduce(r)).collect();
        Ok(GroupPresentation { generators, relators })
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn num_relators(&self) -> usize {
        self.relators.len()
    }

    /// Exponent-sum matrix, one row per relator.
    pub fn abelianization_matrix(&self) -> Vec<Vec<BigInt>> {
        let g = self.num_generators();
        self.relators
            .iter()
            .map(|r| {
                let mut row = vec![0i64; g];
                for &l in r {
                    row[generator_of(l)] += l.signum() as i64;
                }
                row.into_iter().map(BigInt::from).collect()
            })
            .collect()
    }

    /// Smith form of the exponent-sum matrix, with its column transform.
    pub fn abelianization(&self) -> SmithForm<BigInt> {
        let rows: Vec<Vec<BigInt>> = self
            .abelianization_matrix()
            .into_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        smith_normal_form(&rows, self.num_generators(), true)
    }

    pub fn max_relator_length(&self) -> usize {
        self.relators.iter().map(Vec::len).max().unwrap_or(0)
    }
}
