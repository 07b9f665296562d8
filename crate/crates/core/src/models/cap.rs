//! Poincaré duality on `H*(G) = Λ(x_i^∨)` against `[G] = x₁⋯x_r`.
//!
//! Subsets are 1-based ascending index lists. The `*_oracle` functions compute the same
//! quantities by explicit permutation signs and are kept as independent references.

use crate::linear::sign_pow;

/// `x_{j₁}^∨…x_{j_p}^∨ ∩ [G] = (−1)^{Σ(j_k−1)} x₁…x̂_{j₁}…x̂_{j_p}…x_r`; returns the sign.
pub fn cap_sign_closed_form(subset: &[usize]) -> i64 {
    sign_pow(subset.iter().map(|&j| j as i64 - 1).sum())
}

/// Sign of the permutation `perm` of `0..n`, by counting inversions.
pub fn permutation_sign(perm: &[usize]) -> i64 {
    let mut inversions = 0i64;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    sign_pow(inversions)
}

/// `x_j^∨ ∩ w` for a word `w` of distinct generators: bring `x_j` to the front (Koszul
/// sign of that permutation), then evaluate. `None` when `x_j` is absent.
fn contract(j: usize, word: &[usize]) -> Option<(i64, Vec<usize>)> {
    let k = word.iter().position(|&g| g == j)?;
    let mut perm = vec![k];
    perm.extend((0..word.len()).filter(|&i| i != k));
    let mut rest = word.to_vec();
    rest.remove(k);
    Some((permutation_sign(&perm), rest))
}

/// `x_{j₁}^∨ ∩ (x_{j₂}^∨ ∩ (… ∩ (x_{j_p}^∨ ∩ x₁⋯x_r)))`.
pub fn cap_fundamental_oracle(subset: &[usize], r: usize) -> Option<(i64, Vec<usize>)> {
    let mut word: Vec<usize> = (1..=r).collect();
    let mut sign = 1;
    for &j in subset.iter().rev() {
        let (s, rest) = contract(j, &word)?;
        sign *= s;
        word = rest;
    }
    Some((sign, word))
}

/// Product `x_j · w` in `Λ(x₁…x_r)` sorted back into ascending order by adjacent swaps.
fn pontryagin_left(j: usize, word: &[usize]) -> Option<(i64, Vec<usize>)> {
    if word.contains(&j) {
        return None;
    }
    let mut w = vec![j];
    w.extend_from_slice(word);
    let mut sign = 1;
    let mut swapped = true;
    while swapped {
        swapped = false;
        for i in 0..w.len() - 1 {
            if w[i] > w[i + 1] {
                w.swap(i, i + 1);
                sign = -sign;
                swapped = true;
            }
        }
    }
    Some((sign, w))
}

/// `x_{j_i}·x_{j₁}^∨…x_{j_p}^∨ = (−1)^{i−1} x_{j₁}^∨…x̂_{j_i}^∨…x_{j_p}^∨`, or `None` (zero)
/// when `j` is not in the subset.
pub fn action_closed_form(j: usize, subset: &[usize]) -> Option<(i64, Vec<usize>)> {
    let i = subset.iter().position(|&k| k == j)?;
    let mut rest = subset.to_vec();
    rest.remove(i);
    Some((sign_pow(i as i64), rest))
}

/// The same action transported through the cap-product oracle: cap with `[G]`, multiply
/// by `x_j` in homology, and read the result back as a cap product.
pub fn action_oracle(j: usize, subset: &[usize], r: usize) -> Option<(i64, Vec<usize>)> {
    let (s1, word) = cap_fundamental_oracle(subset, r)?;
    let (s2, word) = pontryagin_left(j, &word)?;
    let complement: Vec<usize> = (1..=r).filter(|i| !word.contains(i)).collect();
    let (s3, back) = cap_fundamental_oracle(&complement, r)?;
    debug_assert_eq!(back, word);
    Some((s1 * s2 * s3, complement))
}

/// All ascending subsets of `{1..r}`.
pub fn subsets(r: usize) -> Vec<Vec<usize>> {
    (0u64..1 << r)
        .map(|mask| (1..=r).filter(|&i| mask >> (i - 1) & 1 == 1).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_dual_class() {
        assert_eq!(cap_fundamental_oracle(&[2], 3), Some((-1, vec![1, 3])));
        assert_eq!(cap_sign_closed_form(&[2]), -1);
    }

    #[test]
    fn empty_subset_is_fundamental_class() {
        assert_eq!(cap_fundamental_oracle(&[], 4), Some((1, vec![1, 2, 3, 4])));
    }

    #[test]
    fn action_on_absent_index_vanishes() {
        assert_eq!(action_closed_form(2, &[1, 3]), None);
        assert_eq!(action_oracle(2, &[1, 3], 3), None);
    }

    #[test]
    fn action_second_position() {
        assert_eq!(action_closed_form(3, &[1, 3]), Some((-1, vec![1])));
        assert_eq!(action_oracle(3, &[1, 3], 4), Some((-1, vec![1])));
    }
}
