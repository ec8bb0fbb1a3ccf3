use std::fmt;

use crate::error::{Error, Result};
use crate::setcalc::subset::{check_ground, SubsetMask};

/// A duplicate-free family of subsets of `[n]`, kept in canonical order
/// (cardinality, then mask value).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Collection {
    n: usize,
    members: Vec<SubsetMask>,
}

impl Collection {
    pub fn empty(n: usize) -> Result<Self> {
        check_ground(n)?;
        Ok(Collection {
            n,
            members: Vec::new(),
        })
    }

    pub fn new<I: IntoIterator<Item = SubsetMask>>(n: usize, sets: I) -> Result<Self> {
        check_ground(n)?;
        let mut members = Vec::new();
        for s in sets {
            if s.n() != n {
                return Err(Error::GroundSetMismatch {
                    left: n,
                    right: s.n(),
                });
            }
            members.push(s);
        }
        members.sort_unstable();
        members.dedup();
        Ok(Collection { n, members })
    }

    /// Parses a comma-separated list of set literals, e.g. `"24,35,1346"`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() {
            return Self::empty(n);
        }
        let sets = t
            .split(',')
            .map(|s| SubsetMask::parse(n, s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, sets)
    }

    pub(crate) fn from_sorted_unchecked(n: usize, members: Vec<SubsetMask>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Collection { n, members }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[SubsetMask] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, x: SubsetMask) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset(&self, other: &Collection) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn union(&self, other: &Collection) -> Result<Collection> {
        if self.n != other.n {
            return Err(Error::GroundSetMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Collection::new(self.n, self.iter().chain(other.iter()))
    }

    pub fn difference(&self, other: &Collection) -> Collection {
        Collection::from_sorted_unchecked(
            self.n,
            self.iter().filter(|&x| !other.contains(x)).collect(),
        )
    }

    /// Reinterprets every member over a ground set of size `n`.
    pub fn regrounded(&self, n: usize) -> Result<Collection> {
        Collection::new(
            n,
            self.iter()
                .map(|x| x.regrounded(n))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// Ascending element lists, as used in the JSON formats.
    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.iter().map(SubsetMask::to_vec).collect()
    }

    pub fn from_lists(n: usize, lists: &[Vec<usize>]) -> Result<Collection> {
        Collection::new(
            n,
            lists
                .iter()
                .map(|l| SubsetMask::from_elements(n, l))
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

impl fmt::Display for Collection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Collection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}/{}", self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_and_deduplicated() {
        let c = Collection::parse(6, "1346,24,35,24").unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.to_string(), "{24, 35, 1346}");
        assert!(c.contains(SubsetMask::parse(6, "35").unwrap()));
        assert!(!c.contains(SubsetMask::parse(6, "36").unwrap()));
    }

    #[test]
    fn mixed_ground_sets_rejected() {
        let a = SubsetMask::parse(5, "12").unwrap();
        let b = SubsetMask::parse(6, "12").unwrap();
        assert!(matches!(
            Collection::new(5, [a, b]),
            Err(Error::GroundSetMismatch { .. })
        ));
    }

    #[test]
    fn lists_round_trip() {
        let c = Collection::parse(6, "∅,6,24,1346").unwrap();
        let back = Collection::from_lists(6, &c.to_lists()).unwrap();
        assert_eq!(back, c);
    }
}
