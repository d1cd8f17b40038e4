//! Exact integer helpers. Nothing here touches floating point.

use num_integer::Integer;
use num_traits::Signed;

use crate::error::{Error, Result};

/// `gcd(|a|, |b|)` with `gcd(0, 0) = 0`, so a `(0, 0)` pair never counts as coprime.
pub fn pair_gcd<I: Integer + Signed + Clone>(a: I, b: I) -> I {
    a.gcd(&b)
}

/// Elementary symmetric polynomial of the given degree, `sigma_0 = 1`.
///
/// Computed by the usual one-pass recurrence over the coefficients of
/// `prod (1 + v_i x)`.
pub fn elementary_symmetric<I: Integer + Clone>(values: &[I], degree: usize) -> Result<I> {
    if degree > values.len() {
        return Err(Error::DegreeOutOfRange {
            degree,
            len: values.len(),
        });
    }
    let mut e = vec![I::zero(); degree + 1];
    e[0] = I::one();
    for v in values {
        for k in (1..=degree).rev() {
            e[k] = e[k].clone() + e[k - 1].clone() * v.clone();
        }
    }
    Ok(e.swap_remove(degree))
}

/// Every permutation of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_examples() {
        assert_eq!(pair_gcd(1i64, -1), 1);
        assert_eq!(pair_gcd(0i64, 0), 0);
        assert_eq!(pair_gcd(4i64, 6), 2);
        assert_eq!(pair_gcd(-4i128, 0), 4);
    }

    #[test]
    fn sigma_examples() {
        let v = [1i128, 1, 1, 1, -1, -3];
        assert_eq!(elementary_symmetric(&v, 0).unwrap(), 1);
        assert_eq!(elementary_symmetric(&v, 1).unwrap(), 0);
        assert_eq!(elementary_symmetric(&v, 2).unwrap(), -7);
        assert_eq!(elementary_symmetric(&v, 3).unwrap(), -8);
        assert!(matches!(
            elementary_symmetric(&v, 7),
            Err(Error::DegreeOutOfRange { degree: 7, len: 6 })
        ));
    }

    #[test]
    fn sigma_large_entries_do_not_overflow_i128() {
        let m = 1_000_000i128;
        let v = [m, m, m, m, m, -5 * m];
        // (x - m)^5 (x + 5m): sigma_3 = 10 m^3 - 50 m^3
        assert_eq!(elementary_symmetric(&v, 3).unwrap(), -40 * m * m * m);
        assert_eq!(elementary_symmetric(&v, 6).unwrap(), -5 * m.pow(6));
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(5).len(), 120);
        assert_eq!(permutations(0).len(), 1);
    }
}
