//! Subsets of `[n]`, r-separation, and purity audits.

mod census;
mod collection;
mod separation;
mod subset;
mod universal;

pub use census::{is_pure, maximal_collections, Purity};
pub use collection::Collection;
pub use separation::{
    alternation_blocks, is_r_separated, is_r_separated_collection, separated_from_all,
    SeparationReport,
};
pub(crate) use separation::separated_bits;
pub use subset::SubsetMask;
pub(crate) use subset::{check_ground, full_bits};
pub use universal::universal_sets;
pub(crate) use universal::{check_dims, is_universal};

use crate::error::{Error, Result};

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// `s_{n,d} = C(n,0) + C(n,1) + ... + C(n,d)`, the size of a cubillage
/// spectrum on `Z(n,d)`.
pub fn max_size(n: usize, d: usize) -> Result<u64> {
    if d > n {
        return Err(Error::DimensionOutOfRange { n, d });
    }
    Ok((0..=d).map(|k| binomial(n, k)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max_size_values() {
        assert_eq!(max_size(6, 4).unwrap(), 57);
        assert_eq!(max_size(6, 3).unwrap(), 42);
        for n in 2..=12 {
            assert_eq!(max_size(n, n).unwrap(), 1 << n);
            assert_eq!(max_size(n, 2).unwrap(), (n * (n + 1) / 2 + 1) as u64);
        }
        assert!(matches!(
            max_size(3, 4),
            Err(Error::DimensionOutOfRange { .. })
        ));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(30, 15), 155_117_520);
        assert_eq!(binomial(3, 5), 0);
    }
}
