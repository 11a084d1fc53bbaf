//! Gaussian elimination over an arbitrary [`Field`]. Matrices are row-major
//! `Vec<Vec<E>>`; pivoting is first-nonzero so results are deterministic.

use super::Field;

/// Reduced row echelon form and the pivot columns.
pub fn rref<K: Field>(k: &K, mut m: Vec<Vec<K::Elem>>) -> (Vec<Vec<K::Elem>>, Vec<usize>) {
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !k.is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(row, p);
        let inv = k.inv(&m[row][col]).expect("nonzero pivot");
        m[row] = m[row].iter().map(|x| k.mul(x, &inv)).collect();
        for r in 0..m.len() {
            if r != row && !k.is_zero(&m[r][col]) {
                let c = m[r][col].clone();
                let pivot_row = m[row].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x = k.sub(x, &k.mul(&c, y));
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    m.truncate(row);
    (m, pivots)
}

pub fn rank<K: Field>(k: &K, m: Vec<Vec<K::Elem>>) -> usize {
    rref(k, m).1.len()
}

/// Basis of the right kernel `{x : m·x = 0}`; `cols` is the number of unknowns.
pub fn kernel<K: Field>(k: &K, m: Vec<Vec<K::Elem>>, cols: usize) -> Vec<Vec<K::Elem>> {
    let (r, pivots) = rref(k, m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![k.zero(); cols];
            v[f] = k.one();
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = k.neg(&row[f]);
            }
            v
        })
        .collect()
}

/// One solution of `m·x = rhs`, if any.
pub fn solve<K: Field>(
    k: &K,
    m: &[Vec<K::Elem>],
    rhs: &[K::Elem],
    cols: usize,
) -> Option<Vec<K::Elem>> {
    let aug: Vec<Vec<K::Elem>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(k, aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![k.zero(); cols];
    for (row, &pc) in r.iter().zip(&pivots) {
        x[pc] = row[cols].clone();
    }
    Some(x)
}

/// Whether `v` is in the span of `vectors`.
pub fn in_span<K: Field>(k: &K, vectors: &[Vec<K::Elem>], v: &[K::Elem]) -> bool {
    let base = rank(k, vectors.to_vec());
    let mut ext = vectors.to_vec();
    ext.push(v.to_vec());
    rank(k, ext) == base
}
