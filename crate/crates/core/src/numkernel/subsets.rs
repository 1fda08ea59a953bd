//! Lexicographically ordered `k`-subsets of `{0..n-1}`, the index set of
//! Plücker coordinates throughout the crate.

use itertools::Itertools;

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n).combinations(k)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Position of a sorted subset in the lexicographic list of `k_subsets(n, |s|)`.
pub fn subset_rank(n: usize, s: &[usize]) -> usize {
    let k = s.len();
    let mut rank = 0;
    let mut start = 0;
    for (pos, &x) in s.iter().enumerate() {
        for skipped in start..x {
            rank += binomial(n - skipped - 1, k - pos - 1);
        }
        start = x + 1;
    }
    rank
}

/// Concatenated decimal label such as `"013"`; indices ≥ 10 are
/// comma-separated instead.
pub fn subset_label(s: &[usize]) -> String {
    if s.iter().all(|&i| i < 10) {
        s.iter().map(|i| i.to_string()).collect()
    } else {
        s.iter().map(|i| i.to_string()).join(",")
    }
}

/// Inverse of [`subset_label`].
pub fn parse_subset_label(label: &str) -> Option<Vec<usize>> {
    let parts: Option<Vec<usize>> = if label.contains(',') {
        label.split(',').map(|p| p.trim().parse().ok()).collect()
    } else {
        label.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
    };
    parts.filter(|v| v.windows(2).all(|w| w[0] < w[1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_matches_enumeration() {
        for (n, k) in [(6, 2), (6, 3), (7, 4), (5, 0), (15, 3)] {
            for (i, s) in k_subsets(n, k).enumerate() {
                assert_eq!(subset_rank(n, &s), i);
            }
            assert_eq!(k_subsets(n, k).count(), binomial(n, k));
        }
    }

    #[test]
    fn labels_round_trip() {
        assert_eq!(subset_label(&[0, 1, 3]), "013");
        assert_eq!(parse_subset_label("013"), Some(vec![0, 1, 3]));
        assert_eq!(subset_label(&[2, 11]), "2,11");
        assert_eq!(parse_subset_label("2,11"), Some(vec![2, 11]));
        assert_eq!(parse_subset_label("31"), None);
    }
}
