//! Dense Gaussian elimination over an arbitrary [`Field`].

use crate::field::Field;

/// Rank of a dense matrix given as rows. Rows may be empty; ragged input
/// is a caller bug.
pub fn rank<F: Field>(mut rows: Vec<Vec<F>>) -> usize {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    debug_assert!(rows.iter().all(|r| r.len() == ncols));

    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(pivot) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inverse().expect("pivot is nonzero");
        let pivot_row: Vec<F> = rows[rank].iter().map(|x| x.clone() * inv.clone()).collect();
        for i in rank + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone();
            for j in col..ncols {
                if pivot_row[j].is_zero() {
                    continue;
                }
                let v = rows[i][j].clone() - factor.clone() * pivot_row[j].clone();
                rows[i][j] = v;
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Basis of the right kernel `{ v : M v = 0 }`, one vector per free column.
/// `zero` and `one` are the field's constants (elements carry context).
pub fn kernel<F: Field>(rows: &[Vec<F>], ncols: usize, zero: &F, one: &F) -> Vec<Vec<F>> {
    let mut m: Vec<Vec<F>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].inverse().expect("pivot is nonzero");
        for j in 0..ncols {
            m[r][j] = m[r][j].clone() * inv.clone();
        }
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for j in 0..ncols {
                    let v = m[i][j].clone() - factor.clone() * m[r][j].clone();
                    m[i][j] = v;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![zero.clone(); ncols];
            v[f] = one.clone();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            v
        })
        .collect()
}
