//! Exact determinant signs by fraction-free (Bareiss) elimination.
//!
//! Elimination runs in checked `i128`; on overflow it restarts in
//! arbitrary precision.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        match self.to_i8() * other.to_i8() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }

    fn of_i128(v: i128) -> Sign {
        match v.signum() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }
}

/// Sign of the determinant of a square matrix given as its columns (the
/// determinant is transpose-invariant, so rows work equally).
pub fn det_sign(columns: &[Vec<i128>]) -> Sign {
    let k = columns.len();
    assert!(columns.iter().all(|c| c.len() == k), "matrix must be square");
    if k == 0 {
        return Sign::Positive;
    }
    match bareiss_i128(columns.to_vec()) {
        Some(v) => Sign::of_i128(v),
        None => {
            let big = columns
                .iter()
                .map(|c| c.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            let v = bareiss_big(big);
            if v.is_zero() {
                Sign::Zero
            } else if v.is_positive() {
                Sign::Positive
            } else {
                Sign::Negative
            }
        }
    }
}

fn bareiss_i128(mut m: Vec<Vec<i128>>) -> Option<i128> {
    let k = m.len();
    let mut negate = false;
    let mut prev: i128 = 1;
    for p in 0..k.saturating_sub(1) {
        if m[p][p] == 0 {
            match (p + 1..k).find(|&r| m[r][p] != 0) {
                Some(r) => {
                    m.swap(p, r);
                    negate = !negate;
                }
                None => return Some(0),
            }
        }
        for i in p + 1..k {
            for j in p + 1..k {
                let a = m[i][j].checked_mul(m[p][p])?;
                let b = m[i][p].checked_mul(m[p][j])?;
                m[i][j] = a.checked_sub(b)? / prev;
            }
            m[i][p] = 0;
        }
        prev = m[p][p];
    }
    let d = m[k - 1][k - 1];
    Some(if negate { -d } else { d })
}

fn bareiss_big(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let k = m.len();
    let mut negate = false;
    let mut prev = BigInt::from(1);
    for p in 0..k.saturating_sub(1) {
        if m[p][p].is_zero() {
            match (p + 1..k).find(|&r| !m[r][p].is_zero()) {
                Some(r) => {
                    m.swap(p, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in p + 1..k {
            for j in p + 1..k {
                let v = (&m[i][j] * &m[p][p] - &m[i][p] * &m[p][j]) / &prev;
                m[i][j] = v;
            }
            m[i][p] = BigInt::zero();
        }
        prev = m[p][p].clone();
    }
    let d = m[k - 1][k - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(m: &[Vec<i128>]) -> BigInt {
        // Laplace expansion along the first row.
        let k = m.len();
        if k == 1 {
            return BigInt::from(m[0][0]);
        }
        let mut acc = BigInt::zero();
        for c in 0..k {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != c)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let term = BigInt::from(m[0][c]) * naive(&minor);
            if c % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn sign_of(v: &BigInt) -> Sign {
        if v.is_zero() {
            Sign::Zero
        } else if v.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    #[test]
    fn matches_laplace_on_small_matrices() {
        let mut seed: u64 = 0x9e37_79b9_7f4a_7c15;
        let mut next = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed % 7) as i128 - 3
        };
        for k in 1..=5 {
            for _ in 0..300 {
                let m: Vec<Vec<i128>> = (0..k).map(|_| (0..k).map(|_| next()).collect()).collect();
                assert_eq!(det_sign(&m), sign_of(&naive(&m)), "{m:?}");
            }
        }
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = 1i128 << 100;
        let m = vec![vec![big, 1], vec![1, big]];
        assert_eq!(det_sign(&m), Sign::Positive);
        let m = vec![vec![1, big], vec![big, 1]];
        assert_eq!(det_sign(&m), Sign::Negative);
        let m = vec![vec![big, big], vec![big, big]];
        assert_eq!(det_sign(&m), Sign::Zero);
    }

    #[test]
    fn zero_pivot_swaps() {
        let m = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(det_sign(&m), Sign::Negative);
    }
}
