//! Longest-common-subsequence text similarity.

use alloc::vec;
use alloc::vec::Vec;

/// Length of the longest common subsequence of `a` and `b`, counted in
/// Unicode scalar values. O(|a|·|b|) time, O(min) space.
pub fn lcs_length(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let (long, short) = if a.len() >= b.len() { (&a, &b) } else { (&b, &a) };
    if short.is_empty() {
        return 0;
    }
    let mut row = vec![0usize; short.len() + 1];
    for &x in long.iter() {
        let mut diag = 0;
        for (j, &y) in short.iter().enumerate() {
            let up = row[j + 1];
            row[j + 1] = if x == y { diag + 1 } else { up.max(row[j]) };
            diag = up;
        }
    }
    row[short.len()]
}

/// `lcs_length(a, b) / max(|a|, |b|)`; two empty strings score 0.
pub fn lcs_similarity(a: &str, b: &str) -> f64 {
    let longest = a.chars().count().max(b.chars().count());
    if longest == 0 {
        return 0.0;
    }
    lcs_length(a, b) as f64 / longest as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive(a: &[char], b: &[char]) -> usize {
        match (a.split_first(), b.split_first()) {
            (Some((x, ra)), Some((y, rb))) => {
                if x == y {
                    1 + naive(ra, rb)
                } else {
                    naive(ra, b).max(naive(a, rb))
                }
            }
            _ => 0,
        }
    }

    #[test]
    fn worked_values() {
        assert_eq!(lcs_similarity("Contact Us", "Contact Us"), 1.0);
        assert_eq!(lcs_length("Contact", "Contract"), 7);
        assert_eq!(lcs_similarity("Contact", "Contract"), 0.875);
        assert_eq!(lcs_length("kitten", "sitting"), 4);
        assert_eq!(lcs_similarity("kitten", "sitting"), 4.0 / 7.0);
        assert_eq!(lcs_similarity("", ""), 0.0);
        assert_eq!(lcs_similarity("abc", ""), 0.0);
    }

    #[test]
    fn counts_chars_not_bytes() {
        assert_eq!(lcs_similarity("café", "cafe"), 0.75);
    }

    proptest! {
        #[test]
        fn matches_naive_recursion(a in "[a-d ]{0,10}", b in "[a-d ]{0,10}") {
            let ac: Vec<char> = a.chars().collect();
            let bc: Vec<char> = b.chars().collect();
            prop_assert_eq!(lcs_length(&a, &b), naive(&ac, &bc));
        }

        #[test]
        fn symmetric_and_bounded(a in "\\PC{0,16}", b in "\\PC{0,16}") {
            let s = lcs_similarity(&a, &b);
            prop_assert_eq!(s, lcs_similarity(&b, &a));
            prop_assert!((0.0..=1.0).contains(&s));
        }
    }
}
