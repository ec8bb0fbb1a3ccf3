//! Cubes, cubillages and their structural validation.
//!
//! A cube is a pair `(K, X)`: its type `K` is the set of `d` generator colors
//! spanning it and its bottom `X` (disjoint from `K`) is the label of its
//! lowest vertex. Its vertices are the labels `X ∪ S` for `S ⊆ K`.

mod construct;
mod enumerate;
mod precedence;
mod transform;

use std::collections::HashMap;
use std::fmt;

pub use construct::{antistandard, from_spectrum, standard};
pub use enumerate::{enumerate, predicted_count};
pub use precedence::{precedence, PrecedenceDag};
pub use transform::{contract, contract_by_cubes, expand, Contraction};

use crate::error::{Error, Result};
use crate::setcalc::{binomial, is_universal, max_size, separated_bits, Collection, SubsetMask};
use crate::zonogeom::{ensure_parity_rule, facet_side_parity, FacetCopy, Side};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube {
    kind: SubsetMask,
    bottom: SubsetMask,
}

impl Cube {
    pub fn new(kind: SubsetMask, bottom: SubsetMask) -> Result<Self> {
        if kind.n() != bottom.n() {
            return Err(Error::GroundSetMismatch {
                left: kind.n(),
                right: bottom.n(),
            });
        }
        if !kind.is_disjoint(bottom) {
            return Err(Error::DegenerateInput(format!(
                "cube type {kind} meets bottom {bottom}"
            )));
        }
        Ok(Cube { kind, bottom })
    }

    pub(crate) fn new_unchecked(kind: SubsetMask, bottom: SubsetMask) -> Self {
        debug_assert!(kind.is_disjoint(bottom) && kind.n() == bottom.n());
        Cube { kind, bottom }
    }

    /// The type `τ(C)`.
    pub fn kind(&self) -> SubsetMask {
        self.kind
    }

    pub fn bottom(&self) -> SubsetMask {
        self.bottom
    }

    pub fn top(&self) -> SubsetMask {
        self.bottom.union(self.kind)
    }

    pub fn dim(&self) -> usize {
        self.kind.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.kind.subsets().map(|s| self.bottom.union(s))
    }

    /// The facet omitting the `position`-th smallest type element, at the
    /// given copy, together with its side.
    pub fn facet(&self, position: usize, copy: FacetCopy) -> (Cube, Side) {
        let omitted = self.kind.elements().nth(position - 1).expect("position in range");
        let bottom = match copy {
            FacetCopy::Bottom => self.bottom,
            FacetCopy::Top => self.bottom.with(omitted),
        };
        let face = Cube::new_unchecked(self.kind.without(omitted), bottom);
        (face, facet_side_parity(self.dim(), position, copy))
    }

    /// All `2d` facets with their sides.
    pub fn facets(&self) -> impl Iterator<Item = (Cube, Side)> + '_ {
        (1..=self.dim())
            .flat_map(move |p| [FacetCopy::Bottom, FacetCopy::Top].map(|c| self.facet(p, c)))
    }

    pub fn front_facets(&self) -> impl Iterator<Item = Cube> + '_ {
        self.facets()
            .filter(|&(_, s)| s == Side::Front)
            .map(|(f, _)| f)
    }

    pub fn rear_facets(&self) -> impl Iterator<Item = Cube> + '_ {
        self.facets()
            .filter(|&(_, s)| s == Side::Rear)
            .map(|(f, _)| f)
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.kind, self.bottom)
    }
}

impl fmt::Debug for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Why a list of cubes is not a cubillage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    DimensionOutOfRange { n: usize, d: usize },
    MalformedCube { cube: Cube, reason: String },
    WrongCubeCount { found: usize, expected: u64 },
    TypeCollision { kind: SubsetMask },
    FacetPairingBroken { facet: Cube, detail: String },
    SpectrumSizeMismatch { found: usize, expected: u64 },
    NotSeparated { a: SubsetMask, b: SubsetMask },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::DimensionOutOfRange { n, d } => write!(f, "d={d} out of range for n={n}"),
            Diagnostic::MalformedCube { cube, reason } => write!(f, "cube {cube}: {reason}"),
            Diagnostic::WrongCubeCount { found, expected } => {
                write!(f, "{found} cubes, expected {expected}")
            }
            Diagnostic::TypeCollision { kind } => write!(f, "type {kind} used twice"),
            Diagnostic::FacetPairingBroken { facet, detail } => {
                write!(f, "facet {facet}: {detail}")
            }
            Diagnostic::SpectrumSizeMismatch { found, expected } => {
                write!(f, "spectrum has {found} sets, expected {expected}")
            }
            Diagnostic::NotSeparated { a, b } => write!(f, "{a} and {b} are not separated"),
        }
    }
}

/// Where a facet sits: `pred` has it as a rear facet, `succ` as a front
/// facet. `None` stands for the exterior.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub(crate) struct FacetSlot {
    pub pred: Option<usize>,
    pub succ: Option<usize>,
}

/// A fine zonotopal tiling of `Z(n,d)`, with cubes sorted by type.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cubillage {
    n: usize,
    d: usize,
    cubes: Vec<Cube>,
}

impl Cubillage {
    /// Sorts the cubes by type and validates the result.
    pub fn new(n: usize, d: usize, cubes: Vec<Cube>) -> Result<Self> {
        let q = Self::from_cubes_unchecked(n, d, cubes);
        q.validate().map_err(Error::InvalidCubillage)?;
        Ok(q)
    }

    pub(crate) fn from_cubes_unchecked(n: usize, d: usize, mut cubes: Vec<Cube>) -> Self {
        cubes.sort_unstable();
        Cubillage { n, d, cubes }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    /// Index of the cube of the given type.
    pub fn cube_index(&self, kind: SubsetMask) -> Option<usize> {
        self.cubes.binary_search_by(|c| c.kind.cmp(&kind)).ok()
    }

    pub fn cube_of_type(&self, kind: SubsetMask) -> Option<&Cube> {
        self.cube_index(kind).map(|i| &self.cubes[i])
    }

    /// The union of all cube vertex labels; its size must be `s_{n,d}`.
    pub fn spectrum(&self) -> Result<Collection> {
        let spec = self.raw_spectrum();
        let expected = max_size(self.n, self.d)?;
        if spec.len() as u64 != expected {
            return Err(Error::SpectrumSizeMismatch {
                found: spec.len(),
                expected: expected as usize,
            });
        }
        Ok(spec)
    }

    fn raw_spectrum(&self) -> Collection {
        let mut labels: Vec<SubsetMask> = self.cubes.iter().flat_map(|c| c.vertices()).collect();
        labels.sort_unstable();
        labels.dedup();
        Collection::from_sorted_unchecked(self.n, labels)
    }

    /// Facet incidence: every facet with the cubes on either side of it.
    pub(crate) fn facet_slots(&self) -> HashMap<Cube, FacetSlot> {
        let mut map: HashMap<Cube, FacetSlot> = HashMap::new();
        for (ci, cube) in self.cubes.iter().enumerate() {
            for (facet, side) in cube.facets() {
                let slot = map.entry(facet).or_default();
                match side {
                    Side::Rear => slot.pred = Some(ci),
                    Side::Front => slot.succ = Some(ci),
                }
            }
        }
        map
    }

    /// Checks every structural invariant of a cubillage.
    pub fn validate(&self) -> std::result::Result<(), Diagnostic> {
        ensure_parity_rule();
        let (n, d) = (self.n, self.d);
        if crate::setcalc::check_ground(n).is_err() || d > n {
            return Err(Diagnostic::DimensionOutOfRange { n, d });
        }
        for &cube in &self.cubes {
            let reason = if cube.kind.n() != n || cube.bottom.n() != n {
                Some("wrong ground set".to_string())
            } else if cube.kind.len() != d {
                Some(format!("type has {} elements, expected {d}", cube.kind.len()))
            } else if !cube.kind.is_disjoint(cube.bottom) {
                Some("type meets bottom".to_string())
            } else {
                None
            };
            if let Some(reason) = reason {
                return Err(Diagnostic::MalformedCube { cube, reason });
            }
        }
        for w in self.cubes.windows(2) {
            if w[0].kind == w[1].kind {
                return Err(Diagnostic::TypeCollision { kind: w[0].kind });
            }
        }
        let expected = binomial(n, d);
        if self.cubes.len() as u64 != expected {
            return Err(Diagnostic::WrongCubeCount {
                found: self.cubes.len(),
                expected,
            });
        }
        self.check_facet_pairing()?;
        let spec = self.raw_spectrum();
        let expected = max_size(n, d).expect("d <= n");
        if spec.len() as u64 != expected {
            return Err(Diagnostic::SpectrumSizeMismatch {
                found: spec.len(),
                expected,
            });
        }
        if d >= 1 {
            let m = spec.members();
            for (i, &a) in m.iter().enumerate() {
                for &b in &m[i + 1..] {
                    if !separated_bits(a.bits(), b.bits(), d - 1) {
                        return Err(Diagnostic::NotSeparated { a, b });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_facet_pairing(&self) -> std::result::Result<(), Diagnostic> {
        let d = self.d;
        let mut seen: HashMap<Cube, (usize, usize)> = HashMap::new();
        for cube in &self.cubes {
            for (facet, side) in cube.facets() {
                let e = seen.entry(facet).or_default();
                match side {
                    Side::Front => e.0 += 1,
                    Side::Rear => e.1 += 1,
                }
            }
        }
        let mut facets: Vec<_> = seen.into_iter().collect();
        facets.sort_unstable_by_key(|(f, _)| *f);
        for (facet, (fronts, rears)) in facets {
            let boundary = facet.vertices().all(|v| is_universal(v, d));
            let ok = if boundary {
                fronts + rears == 1
            } else {
                fronts == 1 && rears == 1
            };
            if !ok {
                let place = if boundary { "boundary" } else { "interior" };
                return Err(Diagnostic::FacetPairingBroken {
                    facet,
                    detail: format!("{place} facet used {fronts}x as front, {rears}x as rear"),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Cubillage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(n={}, d={}; ", self.n, self.d)?;
        for (i, c) in self.cubes.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Cubillage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn s(n: usize, t: &str) -> SubsetMask {
        SubsetMask::parse(n, t).unwrap()
    }

    pub(crate) fn cube(n: usize, k: &str, x: &str) -> Cube {
        Cube::new(s(n, k), s(n, x)).unwrap()
    }

    #[test]
    fn single_cube_spectrum_is_power_set() {
        for d in 1..=5 {
            let q = Cubillage::new(
                d,
                d,
                vec![Cube::new(SubsetMask::full(d).unwrap(), SubsetMask::empty(d).unwrap()).unwrap()],
            )
            .unwrap();
            assert_eq!(q.spectrum().unwrap().len(), 1 << d);
        }
    }

    #[test]
    fn hexagon_validates() {
        let q = Cubillage::new(
            3,
            2,
            vec![cube(3, "12", "∅"), cube(3, "13", "2"), cube(3, "23", "∅")],
        )
        .unwrap();
        assert_eq!(
            q.spectrum().unwrap(),
            Collection::parse(3, "∅,1,2,3,12,23,123").unwrap()
        );
    }

    #[test]
    fn type_collision_reported() {
        let q = Cubillage::from_cubes_unchecked(
            3,
            2,
            vec![cube(3, "12", "∅"), cube(3, "12", "3"), cube(3, "23", "∅")],
        );
        assert!(matches!(q.validate(), Err(Diagnostic::TypeCollision { .. })));
    }

    #[test]
    fn perturbed_bottom_breaks_pairing() {
        let q = Cubillage::from_cubes_unchecked(
            3,
            2,
            vec![cube(3, "12", "∅"), cube(3, "13", "∅"), cube(3, "23", "∅")],
        );
        assert!(matches!(
            q.validate(),
            Err(Diagnostic::FacetPairingBroken { .. })
        ));
    }

    #[test]
    fn wrong_count_and_malformed() {
        let q = Cubillage::from_cubes_unchecked(3, 2, vec![cube(3, "12", "∅")]);
        assert!(matches!(q.validate(), Err(Diagnostic::WrongCubeCount { .. })));
        let q = Cubillage::from_cubes_unchecked(3, 2, vec![cube(3, "1", "∅")]);
        assert!(matches!(q.validate(), Err(Diagnostic::MalformedCube { .. })));
    }

    #[test]
    fn cube_facets_cover_each_vertex_set() {
        let c = cube(5, "135", "2");
        assert_eq!(c.facets().count(), 6);
        assert_eq!(c.front_facets().count(), 3);
        assert_eq!(c.rear_facets().count(), 3);
        for f in c.front_facets() {
            assert!(c.rear_facets().all(|r| r != f));
            assert!(f.vertices().all(|v| c.vertices().any(|w| w == v)));
        }
    }
}
