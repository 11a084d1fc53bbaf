//! Integer matrices: row compression and Smith normal form with unimodular
//! transforms. Arithmetic is checked `i128`; overflow is reported, never
//! wrapped.

use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<i128>>;

fn ck(x: Option<i128>) -> Result<i128> {
    x.ok_or(Error::Overflow("integer matrix reduction"))
}

/// `row[dst] += c * row[src]`
fn axpy(dst: &mut [i128], src: &[i128], c: i128) -> Result<()> {
    if c == 0 {
        return Ok(());
    }
    for (d, s) in dst.iter_mut().zip(src) {
        *d = ck(d.checked_add(ck(c.checked_mul(*s))?))?;
    }
    Ok(())
}

/// Row-reduces to an echelon basis of the row lattice (zero rows dropped).
/// The row lattice is preserved exactly.
pub fn echelon_rows(mut m: IntMatrix) -> Result<IntMatrix> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    for col in 0..cols {
        loop {
            // smallest nonzero |entry| in this column among remaining rows
            let Some(p) = (0..m.len())
                .filter(|&r| m[r][col] != 0)
                .min_by_key(|&r| m[r][col].unsigned_abs())
            else {
                break;
            };
            let pivot = m.swap_remove(p);
            let mut done = true;
            for row in m.iter_mut() {
                if row[col] != 0 {
                    let q = row[col].div_euclid(pivot[col]);
                    axpy(row, &pivot, -q)?;
                    if row[col] != 0 {
                        done = false;
                    }
                }
            }
            m.push(pivot);
            if done {
                let pivot = m.pop().expect("pivot");
                out.push(pivot);
                break;
            }
        }
        m.retain(|r| r.iter().any(|&x| x != 0));
        if m.is_empty() {
            break;
        }
    }
    Ok(out)
}

/// `u · a · v = diag(d)`, with `v_inv = v⁻¹`. `d` has length `min(rows, cols)`,
/// nonnegative, each dividing the next (zeros last).
#[derive(Debug, Clone)]
pub struct Smith {
    pub d: Vec<i128>,
    pub u: Option<IntMatrix>,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

fn col_axpy(m: &mut IntMatrix, dst: usize, src: usize, c: i128) -> Result<()> {
    if c == 0 {
        return Ok(());
    }
    for row in m.iter_mut() {
        row[dst] = ck(row[dst].checked_add(ck(c.checked_mul(row[src]))?))?;
    }
    Ok(())
}

fn col_swap(m: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

pub fn smith(a: &IntMatrix, cols: usize, track_left: bool) -> Result<Smith> {
    let rows = a.len();
    let mut m = a.clone();
    let mut u = track_left.then(|| identity(rows));
    let mut v = identity(cols);
    let mut vi = identity(cols);
    let n = rows.min(cols);

    // Column ops on m are mirrored on v (columns) and on v_inv (inverse row ops).
    let col_op = |m: &mut IntMatrix, v: &mut IntMatrix, vi: &mut IntMatrix, dst: usize, src: usize, c: i128| -> Result<()> {
        col_axpy(m, dst, src, c)?;
        col_axpy(v, dst, src, c)?;
        // (V E)^{-1} = E^{-1} V^{-1}; E adds c·col src to col dst, E^{-1} row op: row src -= c·row dst
        let dst_row = vi[dst].clone();
        axpy(&mut vi[src], &dst_row, -c)
    };
    let row_op = |m: &mut IntMatrix, u: &mut Option<IntMatrix>, dst: usize, src: usize, c: i128| -> Result<()> {
        let s = m[src].clone();
        axpy(&mut m[dst], &s, c)?;
        if let Some(u) = u.as_mut() {
            let s = u[src].clone();
            axpy(&mut u[dst], &s, c)?;
        }
        Ok(())
    };

    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && best.is_none_or(|(bi, bj)| x.unsigned_abs() < m[bi][bj].unsigned_abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                // remaining block is zero
                return finish(m, u, v, vi, n);
            };
            m.swap(t, pi);
            if let Some(u) = u.as_mut() {
                u.swap(t, pi);
            }
            col_swap(&mut m, t, pj);
            col_swap(&mut v, t, pj);
            vi.swap(t, pj);

            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                if m[i][t] != 0 {
                    let q = m[i][t].div_euclid(p);
                    row_op(&mut m, &mut u, i, t, -q)?;
                    clean &= m[i][t] == 0;
                }
            }
            for j in t + 1..cols {
                if m[t][j] != 0 {
                    let q = m[t][j].div_euclid(p);
                    col_op(&mut m, &mut v, &mut vi, j, t, -q)?;
                    clean &= m[t][j] == 0;
                }
            }
            if !clean {
                continue;
            }
            // pivot must divide the rest of the block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0));
            match bad {
                Some(i) => row_op(&mut m, &mut u, t, i, 1)?,
                None => break,
            }
        }
        if m[t][t] < 0 {
            for x in m[t].iter_mut() {
                *x = -*x;
            }
            if let Some(u) = u.as_mut() {
                for x in u[t].iter_mut() {
                    *x = -*x;
                }
            }
        }
    }
    finish(m, u, v, vi, n)
}

fn finish(m: IntMatrix, u: Option<IntMatrix>, v: IntMatrix, v_inv: IntMatrix, n: usize) -> Result<Smith> {
    let d = (0..n).map(|i| m[i][i]).collect();
    Ok(Smith { d, u, v, v_inv })
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).try_fold(0i128, |acc, k| {
                        ck(acc.checked_add(ck(row[k].checked_mul(b[k][j]))?))
                    })
                })
                .collect()
        })
        .collect()
}

/// Row vector times matrix.
pub fn vec_mul(x: &[i128], m: &IntMatrix) -> Result<Vec<i128>> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| {
            x.iter().zip(m).try_fold(0i128, |acc, (a, row)| {
                ck(acc.checked_add(ck(a.checked_mul(row[j]))?))
            })
        })
        .collect()
}
