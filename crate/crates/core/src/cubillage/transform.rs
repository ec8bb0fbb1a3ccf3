//! i-contraction and n-expansion.

use crate::error::{Error, Result};
use crate::membrane::Membrane;
use crate::setcalc::{check_dims, Collection, SubsetMask};

use super::{from_spectrum, Cube, Cubillage};

/// Result of contracting a cubillage: the compacted cubillage on `[n−1]`
/// and, for each new element `j`, the original element it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    pub cubillage: Cubillage,
    /// `index_map[j − 1]` is the original label of element `j`.
    pub index_map: Vec<usize>,
}

fn check_contractible(q: &Cubillage, i: usize) -> Result<()> {
    let (n, d) = (q.n(), q.d());
    if i == 0 || i > n {
        return Err(Error::ElementOutOfRange { element: i, n });
    }
    if n <= d {
        return Err(Error::GroundTooSmall(n));
    }
    Ok(())
}

fn index_map(n: usize, i: usize) -> Vec<usize> {
    (1..=n).filter(|&j| j != i).collect()
}

/// The `i`-contraction of `q`, built from its spectrum: the new spectrum
/// consists of the sets `X ⊆ [n]−i` with `X` or `X ∪ i` in `Spec(q)`.
pub fn contract(q: &Cubillage, i: usize) -> Result<Contraction> {
    check_contractible(q, i)?;
    let spec = q.spectrum()?;
    let sets: Vec<SubsetMask> = spec.iter().map(|x| x.without(i).delete_element(i)).collect();
    let contracted = Collection::new(q.n() - 1, sets)?;
    Ok(Contraction {
        cubillage: from_spectrum(&contracted, q.d())?,
        index_map: index_map(q.n(), i),
    })
}

/// Cube-level contraction: drop the cubes whose type contains `i` and
/// delete `i` from the remaining bottoms.
pub fn contract_by_cubes(q: &Cubillage, i: usize) -> Result<Contraction> {
    check_contractible(q, i)?;
    let cubes = q
        .cubes()
        .iter()
        .filter(|c| !c.kind().contains(i))
        .map(|c| {
            Cube::new_unchecked(
                c.kind().delete_element(i),
                c.bottom().without(i).delete_element(i),
            )
        })
        .collect();
    Ok(Contraction {
        cubillage: Cubillage::new(q.n() - 1, q.d(), cubes)?,
        index_map: index_map(q.n(), i),
    })
}

/// The `(n+1)`-expansion of `q` along the membrane `m`.
///
/// Cubes before `m` are kept, cubes after it are shifted by the new color
/// `n+1`, and each facet of `m` is blown up into a cube of the new pie.
pub fn expand(q: &Cubillage, m: &Membrane) -> Result<Cubillage> {
    let (n, d) = (q.n(), q.d());
    check_dims(n, d)?;
    let located = m.locate_in(q)?;
    let ideal = located.ideal().expect("located membranes carry their ideal");
    let n1 = n + 1;
    let new = n1;
    let mut cubes = Vec::with_capacity(q.cubes().len() + m.facets().len());
    for c in q.cubes() {
        let kind = c.kind().regrounded(n1)?;
        let mut bottom = c.bottom().regrounded(n1)?;
        if ideal.binary_search(&c.kind()).is_err() {
            bottom = bottom.with(new);
        }
        cubes.push(Cube::new_unchecked(kind, bottom));
    }
    for f in m.facets() {
        cubes.push(Cube::new_unchecked(
            f.kind().regrounded(n1)?.with(new),
            f.bottom().regrounded(n1)?,
        ));
    }
    Cubillage::new(n1, d, cubes).map_err(|e| match e {
        Error::InvalidCubillage(diag) => {
            Error::Invariant(format!("expansion produced an invalid cubillage: {diag}"))
        }
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubillage::tests::cube;
    use crate::cubillage::{antistandard, standard};
    use crate::membrane::membranes_of;

    #[test]
    fn hexagon_contraction() {
        let q = standard(3, 2).unwrap();
        let c = contract(&q, 2).unwrap();
        assert_eq!(c.cubillage.cubes(), &[cube(2, "12", "∅")]);
        assert_eq!(c.index_map, vec![1, 3]);
        assert_eq!(contract_by_cubes(&q, 2).unwrap(), c);
    }

    #[test]
    fn contraction_needs_room() {
        let q = standard(3, 3).unwrap();
        assert!(matches!(contract(&q, 1), Err(Error::GroundTooSmall(3))));
        let q = standard(4, 2).unwrap();
        assert!(matches!(
            contract(&q, 5),
            Err(Error::ElementOutOfRange { .. })
        ));
    }

    #[test]
    fn contraction_paths_agree_on_standard() {
        for n in 2..=6 {
            for d in 1..n {
                for q in [standard(n, d).unwrap(), antistandard(n, d).unwrap()] {
                    for i in 1..=n {
                        let a = contract(&q, i).unwrap();
                        assert_eq!(a.cubillage.cubes().len() as u64, crate::setcalc::binomial(n - 1, d));
                        assert_eq!(a, contract_by_cubes(&q, i).unwrap(), "n={n} d={d} i={i}");
                    }
                }
            }
        }
    }

    #[test]
    fn single_cube_expansions() {
        for d in 1..=4 {
            let q = standard(d, d).unwrap();
            let ms = membranes_of(&q).unwrap();
            assert_eq!(ms.len(), 2);
            for m in &ms {
                let e = expand(&q, m).unwrap();
                assert_eq!(e.cubes().len(), d + 1);
                assert_eq!(contract(&e, d + 1).unwrap().cubillage, q);
            }
        }
    }

    #[test]
    fn rear_expansion_keeps_spectrum() {
        for (n, d) in [(3, 2), (4, 2), (4, 3), (5, 3)] {
            let q = standard(n, d).unwrap();
            let rear = membranes_of(&q).unwrap().pop().unwrap();
            assert_eq!(rear.ideal().unwrap().len(), q.cubes().len());
            let e = expand(&q, &rear).unwrap();
            let old = q.spectrum().unwrap().regrounded(n + 1).unwrap();
            assert!(old.is_subset(&e.spectrum().unwrap()));
        }
    }
}
