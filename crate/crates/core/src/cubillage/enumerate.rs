//! Exhaustive enumeration of cubillages by repeated expansion.

use crate::caps::AuditCaps;
use crate::error::{Error, Result};
use crate::membrane::membranes_of;
use crate::setcalc::{binomial, check_dims, SubsetMask};

use super::{expand, Cube, Cubillage};

/// Rhombus tiling counts of the `2n`-gon, `n = 0..=10`.
const RHOMBUS_TILINGS: [u128; 11] = [
    1,
    1,
    1,
    2,
    8,
    62,
    908,
    24_698,
    1_232_944,
    112_018_190,
    18_410_581_880,
];

/// Known number of cubillages of `Z(n,d)`, where a closed form or table
/// value is available.
pub fn predicted_count(n: usize, d: usize) -> Option<u128> {
    if d == 0 || d > n {
        return None;
    }
    if d == n {
        return Some(1);
    }
    if d + 1 == n {
        return Some(2);
    }
    if d + 2 == n {
        return Some(2 * n as u128);
    }
    if d == 1 {
        return (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k));
    }
    if d == 2 {
        return RHOMBUS_TILINGS.get(n).copied();
    }
    None
}

type CubillageStream = Box<dyn Iterator<Item = Result<Cubillage>>>;

fn stream(n: usize, d: usize) -> CubillageStream {
    if n == d {
        let full = SubsetMask::from_bits_unchecked(n, crate::setcalc::full_bits(n));
        let empty = SubsetMask::from_bits_unchecked(n, 0);
        let q = Cubillage::from_cubes_unchecked(n, d, vec![Cube::new_unchecked(full, empty)]);
        return Box::new(std::iter::once(Ok(q)));
    }
    Box::new(stream(n - 1, d).flat_map(|parent| -> CubillageStream {
        let parent = match parent {
            Ok(p) => p,
            Err(e) => return Box::new(std::iter::once(Err(e))),
        };
        match membranes_of(&parent) {
            Ok(ms) => Box::new(ms.into_iter().map(move |m| expand(&parent, &m))),
            Err(e) => Box::new(std::iter::once(Err(e))),
        }
    }))
}

/// Every cubillage of `Z(n,d)`, each exactly once.
///
/// Cubillages of `Z(n,d)` are in bijection with pairs of a cubillage of
/// `Z(n−1,d)` and one of its membranes, so the stream expands recursively
/// from the single cube `Z(d,d)`.
pub fn enumerate(
    n: usize,
    d: usize,
    caps: &AuditCaps,
) -> Result<impl Iterator<Item = Result<Cubillage>>> {
    check_dims(n, d)?;
    let types = binomial(n, d);
    if types > caps.enumerate_types {
        return Err(Error::AuditTooLarge {
            what: format!("enumeration of Z({n},{d})"),
            detail: format!("{types} cube types, cap {}", caps.enumerate_types),
        });
    }
    if let Some(count) = predicted_count(n, d) {
        if count > caps.enumerate_count {
            return Err(Error::AuditTooLarge {
                what: format!("enumeration of Z({n},{d})"),
                detail: format!("{count} cubillages expected, cap {}", caps.enumerate_count),
            });
        }
    }
    #[cfg(debug_assertions)]
    let mut seen = std::collections::HashSet::new();
    Ok(stream(n, d).map(move |q| {
        #[cfg(debug_assertions)]
        if let Ok(q) = &q {
            if !seen.insert(q.clone()) {
                return Err(Error::Invariant(format!("enumeration repeated {q}")));
            }
        }
        q
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(n: usize, d: usize) -> usize {
        enumerate(n, d, &AuditCaps::default())
            .unwrap()
            .collect::<Result<Vec<_>>>()
            .unwrap()
            .len()
    }

    #[test]
    fn small_counts_match_predictions() {
        for (n, d) in [(1, 1), (3, 3), (3, 2), (4, 2), (5, 2), (4, 3), (5, 3), (4, 1), (5, 1), (6, 4)] {
            assert_eq!(Some(count(n, d) as u128), predicted_count(n, d), "n={n} d={d}");
        }
    }

    #[test]
    fn every_result_validates() {
        for q in enumerate(5, 3, &AuditCaps::default()).unwrap() {
            let q = q.unwrap();
            assert_eq!(q.validate(), Ok(()));
        }
    }

    #[test]
    fn caps_apply() {
        assert!(matches!(
            enumerate(7, 3, &AuditCaps::default()),
            Err(Error::AuditTooLarge { .. })
        ));
        let tight = AuditCaps {
            enumerate_count: 10,
            ..AuditCaps::default()
        };
        assert!(enumerate(5, 2, &tight).is_err());
        assert!(enumerate(5, 3, &tight).is_ok());
    }
}
