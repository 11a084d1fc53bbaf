//! Carry arithmetic on the index set I = {(m₁,…,m_r) : 0 ≤ mᵢ < qᵢ}.

/// Reduces `m + n` back into I. Returns `(β, t)` with
/// `mᵢ + nᵢ = βᵢ + tᵢ·qᵢ` and `tᵢ ∈ {0, 1}`.
pub fn beta_reduce(q: &[u64], m: &[u64], n: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let mut beta = Vec::with_capacity(q.len());
    let mut carry = Vec::with_capacity(q.len());
    for ((&qi, &mi), &ni) in q.iter().zip(m).zip(n) {
        debug_assert!(mi < qi && ni < qi);
        let s = mi + ni;
        beta.push(s % qi);
        carry.push(s / qi);
    }
    (beta, carry)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn carries() {
        assert_eq!(beta_reduce(&[2, 2], &[1, 0], &[1, 0]), (vec![0, 0], vec![1, 0]));
        assert_eq!(beta_reduce(&[2, 2], &[1, 0], &[0, 1]), (vec![1, 1], vec![0, 0]));
        assert_eq!(beta_reduce(&[8], &[5], &[6]), (vec![3], vec![1]));
    }
}
