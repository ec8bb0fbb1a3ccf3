//! Standard and anti-standard cubillages, and reconstruction from spectra.

use crate::error::{Error, Result};
use crate::setcalc::{check_dims, max_size, separated_bits, Collection, SubsetMask};

use super::{Cube, Cubillage};

/// Bottom of the cube of type `K` in the standard cubillage: the elements
/// `i ∉ K` with `#{k ∈ K : k < i} + 1 ≡ d (mod 2)`.
fn standard_bottom(kind: SubsetMask, d: usize, standard: bool) -> SubsetMask {
    let n = kind.n();
    let mut bits = 0u32;
    let mut below = 0usize;
    for i in 1..=n {
        if kind.contains(i) {
            below += 1;
            continue;
        }
        if ((below + 1) % 2 == d % 2) == standard {
            bits |= 1 << (i - 1);
        }
    }
    SubsetMask::from_bits_unchecked(n, bits)
}

fn by_parity(n: usize, d: usize, standard: bool) -> Result<Cubillage> {
    check_dims(n, d)?;
    let cubes = SubsetMask::k_subsets(n, d)?
        .into_iter()
        .map(|k| Cube::new_unchecked(k, standard_bottom(k, d, standard)))
        .collect();
    let q = Cubillage::from_cubes_unchecked(n, d, cubes);
    q.validate()
        .map_err(|e| Error::Invariant(format!("standard construction: {e}")))?;
    Ok(q)
}

/// The projection of the front side of `Z(n,d+1)` to `Z(n,d)`.
pub fn standard(n: usize, d: usize) -> Result<Cubillage> {
    by_parity(n, d, true)
}

/// The projection of the rear side of `Z(n,d+1)` to `Z(n,d)`.
pub fn antistandard(n: usize, d: usize) -> Result<Cubillage> {
    by_parity(n, d, false)
}

/// Rebuilds the unique cubillage with spectrum `spec`.
///
/// For each type `K` the cube bottom is the unique `X` such that every
/// `X ∪ S` with `S ⊆ K` lies in `spec`.
pub fn from_spectrum(spec: &Collection, d: usize) -> Result<Cubillage> {
    let n = spec.n();
    if d > n {
        return Err(Error::DimensionOutOfRange { n, d });
    }
    let expected = max_size(n, d)?;
    if spec.len() as u64 != expected {
        return Err(Error::NotMaxSize {
            found: spec.len(),
            expected: expected as usize,
        });
    }
    if d >= 1 {
        let m = spec.members();
        for (i, &a) in m.iter().enumerate() {
            if let Some(&b) = m[i + 1..]
                .iter()
                .find(|b| !separated_bits(a.bits(), b.bits(), d - 1))
            {
                return Err(Error::NotSeparated {
                    r: d - 1,
                    a: a.to_string(),
                    b: b.to_string(),
                });
            }
        }
    }
    let mut cubes = Vec::new();
    for kind in SubsetMask::k_subsets(n, d)? {
        let mut found = None;
        for x in spec.iter().filter(|x| x.is_disjoint(kind)) {
            if kind.subsets().all(|s| spec.contains(x.union(s))) {
                if found.is_some() {
                    return Err(Error::AmbiguousCube(kind.to_string()));
                }
                found = Some(x);
            }
        }
        let x = found.ok_or_else(|| Error::NoCubeForType(kind.to_string()))?;
        cubes.push(Cube::new_unchecked(kind, x));
    }
    Cubillage::new(n, d, cubes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubillage::tests::cube;
    use crate::zonogeom::{boundary_side_spectra, orientation_sign, Column, CyclicConfiguration, Sign};

    /// Bottoms by the sign rule in dimension `d+1`.
    fn by_sign(n: usize, d: usize, standard: bool) -> Vec<Cube> {
        let cfg = CyclicConfiguration::new(n, d + 1).unwrap();
        SubsetMask::k_subsets(n, d)
            .unwrap()
            .into_iter()
            .map(|k| {
                let idx = k.to_vec();
                let axis = orientation_sign(&cfg, &idx, Column::LastAxis).unwrap();
                let mut x = SubsetMask::empty(n).unwrap();
                for i in (1..=n).filter(|&i| !k.contains(i)) {
                    let toward = orientation_sign(&cfg, &idx, Column::Generator(i)).unwrap();
                    let prod = toward.times(axis);
                    if (prod == Sign::Negative) == standard {
                        x = x.with(i);
                    }
                }
                Cube::new(k, x).unwrap()
            })
            .collect()
    }

    #[test]
    fn parity_matches_sign_rule() {
        for n in 1..=7 {
            for d in 1..=n.min(5) {
                assert_eq!(standard(n, d).unwrap().cubes(), &by_sign(n, d, true)[..]);
                assert_eq!(antistandard(n, d).unwrap().cubes(), &by_sign(n, d, false)[..]);
            }
        }
    }

    #[test]
    fn standard_examples() {
        let q = standard(5, 1).unwrap();
        for c in q.cubes() {
            let k = c.kind().to_vec()[0];
            assert_eq!(c.bottom(), SubsetMask::new(5, (1 << (k - 1)) - 1).unwrap());
        }
        let q = standard(3, 2).unwrap();
        assert_eq!(
            q.cubes(),
            &[cube(3, "12", "∅"), cube(3, "13", "2"), cube(3, "23", "∅")]
        );
        for d in 1..=5 {
            assert_eq!(standard(d, d).unwrap(), antistandard(d, d).unwrap());
            assert_eq!(standard(d, d).unwrap().cubes().len(), 1);
        }
    }

    #[test]
    fn standard_spectra_are_boundary_sides() {
        for n in 2..=6 {
            for d in 1..=4.min(n - 1) {
                let sides = boundary_side_spectra(n, d + 1).unwrap();
                assert_eq!(standard(n, d).unwrap().spectrum().unwrap(), sides.front);
                assert_eq!(antistandard(n, d).unwrap().spectrum().unwrap(), sides.rear);
            }
        }
    }

    #[test]
    fn spectrum_round_trip() {
        for n in 1..=6 {
            for d in 1..=n {
                let q = standard(n, d).unwrap();
                assert_eq!(from_spectrum(&q.spectrum().unwrap(), d).unwrap(), q);
                let q = antistandard(n, d).unwrap();
                assert_eq!(from_spectrum(&q.spectrum().unwrap(), d).unwrap(), q);
            }
        }
    }

    #[test]
    fn from_spectrum_errors() {
        let universal = crate::setcalc::universal_sets(6, 4).unwrap();
        let triple = Collection::parse(6, "24,35,1346").unwrap();
        let c = universal.union(&triple).unwrap();
        assert!(matches!(
            from_spectrum(&c, 4),
            Err(Error::NotMaxSize { found: 55, expected: 57 })
        ));
        // right size, not separated
        let bad = Collection::parse(3, "∅,1,2,3,13,23,123").unwrap();
        assert!(matches!(from_spectrum(&bad, 2), Err(Error::NotSeparated { .. })));
    }
}
