//! Smith normal form over the integers, generic over the integer type.
//!
//! `U · M · V = D` with `U`, `V` unimodular and `D` diagonal with
//! `d_1 | d_2 | ...`. Only the column transform `V` is tracked: it is what
//! turns an abelianized presentation into coordinates on its abelian group.

use num_integer::Integer;
use num_traits::Signed;

#[derive(Debug, Clone)]
pub struct SmithForm<T> {
    /// Nonzero invariant factors, all positive, each dividing the next.
    pub factors: Vec<T>,
    pub nrows: usize,
    pub ncols: usize,
    /// Column transform `V` (ncols × ncols), when requested.
    pub col_transform: Option<Vec<Vec<T>>>,
}

impl<T: Integer + Signed + Clone> SmithForm<T> {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Rank of the cokernel `Z^ncols / rowspace(M)` free part.
    pub fn free_rank(&self) -> usize {
        self.ncols - self.rank()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<T> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

pub fn smith_normal_form<T>(matrix: &[Vec<T>], ncols: usize, with_transform: bool) -> SmithForm<T>
where
    T: Integer + Signed + Clone,
{
    let nrows = matrix.len();
    let mut a: Vec<Vec<T>> = matrix.to_vec();
    debug_assert!(a.iter().all(|r| r.len() == ncols));
    let mut v: Option<Vec<Vec<T>>> = with_transform.then(|| {
        (0..ncols)
            .map(|i| (0..ncols).map(|j| if i == j { T::one() } else { T::zero() }).collect())
            .collect()
    });

    let mut t = 0;
    while t < nrows.min(ncols) {
        // Smallest nonzero entry in the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);
        if let Some(v) = v.as_mut() {
            swap_cols(v, t, pj);
        }

        loop {
            let mut dirty = false;
            // Clear column t.
            for i in t + 1..nrows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..ncols {
                    let s = a[t][j].clone() * q.clone();
                    a[i][j] = a[i][j].clone() - s;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            // Clear row t.
            for j in t + 1..ncols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                add_col_multiple(&mut a, j, t, &q);
                if let Some(v) = v.as_mut() {
                    add_col_multiple(v, j, t, &q);
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // Move the smallest remaining entry of row/column t to the pivot.
                let mut best = (t, t);
                for i in t..nrows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t..ncols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                } else if best.1 != t {
                    swap_cols(&mut a, t, best.1);
                    if let Some(v) = v.as_mut() {
                        swap_cols(v, t, best.1);
                    }
                }
                continue;
            }
            // Divisibility: fold an offending row into row t and retry.
            let offending = (t + 1..nrows)
                .find(|&i| (t + 1..ncols).any(|j| !a[i][j].mod_floor(&a[t][t]).is_zero()));
            match offending {
                Some(i) => {
                    for j in t..ncols {
                        let s = a[i][j].clone();
                        a[t][j] = a[t][j].clone() + s;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for j in t..ncols {
                a[t][j] = -a[t][j].clone();
            }
        }
        t += 1;
    }

    let factors = (0..nrows.min(ncols))
        .map(|i| a[i][i].clone())
        .take_while(|d| !d.is_zero())
        .collect();
    SmithForm {
        factors,
        nrows,
        ncols,
        col_transform: v,
    }
}

fn swap_cols<T>(m: &mut [Vec<T>], a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// column[j] -= q * column[t]
fn add_col_multiple<T: Integer + Clone>(m: &mut [Vec<T>], j: usize, t: usize, q: &T) {
    for row in m.iter_mut() {
        let s = row[t].clone() * q.clone();
        row[j] = row[j].clone() - s;
    }
}
