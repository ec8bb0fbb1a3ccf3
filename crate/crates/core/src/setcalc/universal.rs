//! Vertex labels of the cyclic zonotope boundary, via cortege rules.

use crate::error::{Error, Result};
use crate::setcalc::{Collection, SubsetMask};

/// The sets that are (d−1)-separated from every subset of `[n]`: the vertex
/// labels of `Z(n,d)` itself.
///
/// For even `d`: all `d/2`-pieced corteges containing 1 or `n`, plus all
/// corteges with fewer than `d/2` pieces. For odd `d`: all `(d+1)/2`-pieced
/// corteges containing both 1 and `n`, plus all corteges with at most
/// `(d−1)/2` pieces.
pub fn universal_sets(n: usize, d: usize) -> Result<Collection> {
    check_dims(n, d)?;
    Collection::new(
        n,
        SubsetMask::all(n)?.filter(|&x| is_universal(x, d)),
    )
}

pub(crate) fn is_universal(x: SubsetMask, d: usize) -> bool {
    let n = x.n();
    let p = x.pieces();
    let first = x.contains(1);
    let last = x.contains(n);
    if d.is_multiple_of(2) {
        p < d / 2 || (p == d / 2 && (first || last))
    } else {
        p <= (d - 1) / 2 || (p == d.div_ceil(2) && first && last)
    }
}

pub(crate) fn check_dims(n: usize, d: usize) -> Result<()> {
    crate::setcalc::subset::check_ground(n)?;
    if d == 0 || d > n {
        return Err(Error::DimensionOutOfRange { n, d });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setcalc::separation::separated_bits;

    #[test]
    fn six_four_excludes_the_twelve() {
        let u = universal_sets(6, 4).unwrap();
        assert_eq!(u.len(), 52);
        let excluded: Vec<_> = SubsetMask::all(6)
            .unwrap()
            .filter(|&x| !u.contains(x))
            .collect();
        let listed = Collection::parse(
            6,
            "24,245,25,235,35,135,1356,136,1346,146,1246,246",
        )
        .unwrap();
        assert_eq!(Collection::new(6, excluded).unwrap(), listed);
    }

    #[test]
    fn full_dimension_is_everything() {
        for n in 1..=7 {
            assert_eq!(universal_sets(n, n).unwrap().len(), 1 << n);
        }
    }

    #[test]
    fn one_below_full_misses_odd_and_even() {
        let u = universal_sets(5, 4).unwrap();
        assert_eq!(u.len(), 30);
        assert!(!u.contains(SubsetMask::parse(5, "135").unwrap()));
        assert!(!u.contains(SubsetMask::parse(5, "24").unwrap()));
    }

    #[test]
    fn out_of_range() {
        assert!(universal_sets(4, 5).is_err());
        assert!(universal_sets(4, 0).is_err());
    }

    // The cortege rule must pick out exactly the sets separated from all of 2^[n].
    #[test]
    fn cortege_rule_matches_separation_from_everything() {
        for n in 2..=7 {
            for d in 2..=n {
                let u = universal_sets(n, d).unwrap();
                for x in SubsetMask::all(n).unwrap() {
                    let sep_all = SubsetMask::all(n)
                        .unwrap()
                        .all(|y| separated_bits(x.bits(), y.bits(), d - 1));
                    assert_eq!(u.contains(x), sep_all, "n={n} d={d} x={x}");
                }
            }
        }
    }
}
