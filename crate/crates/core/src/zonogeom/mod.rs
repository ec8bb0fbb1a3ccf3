//! The canonical cyclic configuration and the sign predicates built on it.
//!
//! Generators are `ξ_i = (1, i, i², …, i^{d−1})` with exact integer
//! coordinates. Every geometric decision in the crate reduces to the sign of
//! a determinant; vertices are identified by their subset labels, never by
//! coordinates.

mod det;

use std::sync::OnceLock;

pub use det::{det_sign, Sign};

use crate::cubillage::Cube;
use crate::error::{Error, Result};
use crate::setcalc::{check_dims, universal_sets, Collection, SubsetMask};

/// Largest ambient dimension supported by the coordinate type.
pub const MAX_DIM: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CyclicConfiguration {
    n: usize,
    d: usize,
}

/// A column of an orientation determinant after the leading generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    Generator(usize),
    /// The unit vector along the last coordinate axis.
    LastAxis,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub coords: Vec<i128>,
}

impl Point {
    /// The first coordinate, which equals the cardinality of the label.
    pub fn height(&self) -> i128 {
        self.coords[0]
    }
}

impl CyclicConfiguration {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        crate::setcalc::check_ground(n)?;
        if d == 0 || d > MAX_DIM {
            return Err(Error::DimensionOutOfRange { n, d });
        }
        Ok(CyclicConfiguration { n, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// The parameter `t_i` of generator `i`.
    pub fn parameter(&self, i: usize) -> i128 {
        i as i128
    }

    /// `ξ_i` as exact coordinates; `i` is 1-based.
    pub fn generator(&self, i: usize) -> Vec<i128> {
        debug_assert!(i >= 1 && i <= self.n);
        let t = self.parameter(i);
        let mut v = Vec::with_capacity(self.d);
        let mut p = 1i128;
        for _ in 0..self.d {
            v.push(p);
            p *= t;
        }
        v
    }

    fn last_axis(&self) -> Vec<i128> {
        let mut v = vec![0; self.d];
        v[self.d - 1] = 1;
        v
    }

    fn column(&self, c: Column) -> Vec<i128> {
        match c {
            Column::Generator(i) => self.generator(i),
            Column::LastAxis => self.last_axis(),
        }
    }
}

/// Sign of `det(ξ_{indices[0]}, …, ξ_{indices[d−2]}, extra)`.
///
/// `indices` must be strictly ascending with `indices.len() + 1 == d`; a
/// repeated generator is a [`Error::DegenerateInput`].
pub fn orientation_sign(
    cfg: &CyclicConfiguration,
    indices: &[usize],
    extra: Column,
) -> Result<Sign> {
    if indices.len() + 1 != cfg.d {
        return Err(Error::DegenerateInput(format!(
            "{} leading columns given, d = {}",
            indices.len(),
            cfg.d
        )));
    }
    for &i in indices {
        if i == 0 || i > cfg.n {
            return Err(Error::ElementOutOfRange { element: i, n: cfg.n });
        }
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::DegenerateInput(format!(
            "indices {indices:?} are not strictly ascending"
        )));
    }
    if let Column::Generator(j) = extra {
        if j == 0 || j > cfg.n {
            return Err(Error::ElementOutOfRange { element: j, n: cfg.n });
        }
        if indices.contains(&j) {
            return Err(Error::DegenerateInput(format!("generator {j} repeated")));
        }
    }
    let mut cols: Vec<Vec<i128>> = indices.iter().map(|&i| cfg.generator(i)).collect();
    cols.push(cfg.column(extra));
    Ok(det_sign(&cols))
}

/// The point `Σ_{b ∈ X} ξ_b`.
pub fn vertex_point(cfg: &CyclicConfiguration, x: SubsetMask) -> Result<Point> {
    if x.n() != cfg.n {
        return Err(Error::GroundSetMismatch {
            left: cfg.n,
            right: x.n(),
        });
    }
    let mut coords = vec![0i128; cfg.d];
    for b in x.elements() {
        for (c, g) in coords.iter_mut().zip(cfg.generator(b)) {
            *c += g;
        }
    }
    Ok(Point { coords })
}

/// Front, rear and rim spectra of `Z(n,d)` as seen along the last axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundarySides {
    pub front: Collection,
    pub rear: Collection,
    pub rim: Collection,
}

/// Cortege description of the front, rear and rim of `Z(n,d)`.
pub fn boundary_side_spectra(n: usize, d: usize) -> Result<BoundarySides> {
    check_dims(n, d)?;
    let mut rim = Vec::new();
    let mut front_only = Vec::new();
    let mut rear_only = Vec::new();
    for x in SubsetMask::all(n)? {
        let p = x.pieces();
        let first = x.contains(1);
        let last = x.contains(n);
        if d.is_multiple_of(2) {
            let h = d / 2;
            if p < h || (p == h && first && last) {
                rim.push(x);
            } else if p == h && first {
                front_only.push(x);
            } else if p == h && last {
                rear_only.push(x);
            }
        } else {
            let h = (d - 1) / 2;
            if p < h || (p == h && (first || last)) {
                rim.push(x);
            } else if p == h {
                front_only.push(x);
            } else if p == h + 1 && first && last {
                rear_only.push(x);
            }
        }
    }
    let rim = Collection::new(n, rim)?;
    Ok(BoundarySides {
        front: Collection::new(n, rim.iter().chain(front_only))?,
        rear: Collection::new(n, rim.iter().chain(rear_only))?,
        rim,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FacetCopy {
    Bottom,
    Top,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Front,
    Rear,
}

/// Side of a cube facet by the exact sign test.
///
/// The facet omits the `position`-th smallest element `k_i` of the type
/// (1-based). With `ν(w) = det(ξ_{K−k_i}, w)` oriented so that
/// `ν(ξ_{k_i}) > 0`, the bottom copy is on the front exactly when
/// `ν(e_d) > 0`.
pub fn facet_side_of_cube(
    cfg: &CyclicConfiguration,
    cube: &Cube,
    position: usize,
    copy: FacetCopy,
) -> Result<Side> {
    let d = cfg.d;
    let ty = cube.kind();
    if ty.n() != cfg.n || ty.len() != d || !ty.is_disjoint(cube.bottom()) {
        return Err(Error::DegenerateInput(format!("malformed cube {cube}")));
    }
    if position == 0 || position > d {
        return Err(Error::DegenerateInput(format!(
            "facet position {position} outside 1..={d}"
        )));
    }
    let elems = ty.to_vec();
    let omitted = elems[position - 1];
    let rest: Vec<usize> = elems.iter().copied().filter(|&e| e != omitted).collect();
    let toward_cube = orientation_sign(cfg, &rest, Column::Generator(omitted))?;
    let toward_axis = orientation_sign(cfg, &rest, Column::LastAxis)?;
    let bottom_front = toward_cube.times(toward_axis) == Sign::Positive;
    Ok(match (bottom_front, copy) {
        (true, FacetCopy::Bottom) | (false, FacetCopy::Top) => Side::Front,
        _ => Side::Rear,
    })
}

/// Closed form of [`facet_side_of_cube`]: the bottom copy of the facet
/// omitting `k_i` is on the front exactly when `d − i` is even.
#[inline]
pub fn facet_side_parity(d: usize, position: usize, copy: FacetCopy) -> Side {
    let bottom_front = (d - position).is_multiple_of(2);
    match (bottom_front, copy) {
        (true, FacetCopy::Bottom) | (false, FacetCopy::Top) => Side::Front,
        _ => Side::Rear,
    }
}

/// Confirms the parity rule against the sign test for every `d <= max_d`,
/// every facet position and both copies, on the cube of type `[d]`.
pub fn check_parity_rule(max_d: usize) -> Result<()> {
    for d in 1..=max_d {
        let cfg = CyclicConfiguration::new(d, d)?;
        let cube = Cube::new(SubsetMask::full(d)?, SubsetMask::empty(d)?)?;
        for position in 1..=d {
            for copy in [FacetCopy::Bottom, FacetCopy::Top] {
                let exact = facet_side_of_cube(&cfg, &cube, position, copy)?;
                if exact != facet_side_parity(d, position, copy) {
                    return Err(Error::Invariant(format!(
                        "facet parity rule fails at d={d}, position {position}, {copy:?}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Runs [`check_parity_rule`] for `d <= 5` once per process.
pub(crate) fn ensure_parity_rule() {
    static CHECKED: OnceLock<()> = OnceLock::new();
    CHECKED.get_or_init(|| {
        check_parity_rule(5).expect("facet parity rule disagrees with the sign test");
    });
}

/// Vertices and edges of `Z(n,d)` projected to the first two coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Export2d {
    pub n: usize,
    pub d: usize,
    pub vertices: Vec<(SubsetMask, [i128; 2])>,
    pub edges: Vec<(SubsetMask, SubsetMask)>,
}

/// Vertices of `Z(n,d)` are the universal sets; two of them span an edge
/// of the zonotope when they differ in exactly one element.
pub fn export_2d(n: usize, d: usize) -> Result<Export2d> {
    check_dims(n, d)?;
    let cfg = CyclicConfiguration::new(n, d.max(2))?;
    let verts = universal_sets(n, d)?;
    let mut vertices = Vec::with_capacity(verts.len());
    let mut edges = Vec::new();
    for x in verts.iter() {
        let p = vertex_point(&cfg, x)?;
        vertices.push((x, [p.coords[0], p.coords[1]]));
        for e in 1..=n {
            if !x.contains(e) && verts.contains(x.with(e)) {
                edges.push((x, x.with(e)));
            }
        }
    }
    Ok(Export2d {
        n,
        d,
        vertices,
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, t: &str) -> SubsetMask {
        SubsetMask::parse(n, t).unwrap()
    }

    #[test]
    fn orientation_examples() {
        let c2 = CyclicConfiguration::new(3, 2).unwrap();
        assert_eq!(
            orientation_sign(&c2, &[1], Column::Generator(2)).unwrap(),
            Sign::Positive
        );
        assert_eq!(
            orientation_sign(&c2, &[2], Column::Generator(1)).unwrap(),
            Sign::Negative
        );
        let c3 = CyclicConfiguration::new(3, 3).unwrap();
        assert_eq!(
            orientation_sign(&c3, &[1, 3], Column::LastAxis).unwrap(),
            Sign::Positive
        );
        assert!(matches!(
            orientation_sign(&c3, &[1, 1], Column::LastAxis),
            Err(Error::DegenerateInput(_))
        ));
        assert!(matches!(
            orientation_sign(&c3, &[1, 3], Column::Generator(3)),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn ascending_generator_tuples_are_positive() {
        for n in 1..=8 {
            for d in 1..=n.min(5) {
                let cfg = CyclicConfiguration::new(n, d).unwrap();
                for k in SubsetMask::k_subsets(n, d).unwrap() {
                    let idx = k.to_vec();
                    let (last, lead) = idx.split_last().unwrap();
                    assert_eq!(
                        orientation_sign(&cfg, lead, Column::Generator(*last)).unwrap(),
                        Sign::Positive,
                        "n={n} d={d} {k}"
                    );
                }
            }
        }
    }

    #[test]
    fn vertex_points() {
        let cfg = CyclicConfiguration::new(3, 2).unwrap();
        assert_eq!(vertex_point(&cfg, s(3, "∅")).unwrap().coords, vec![0, 0]);
        assert_eq!(vertex_point(&cfg, s(3, "13")).unwrap().coords, vec![2, 4]);
        let cfg = CyclicConfiguration::new(7, 4).unwrap();
        for x in SubsetMask::all(7).unwrap() {
            assert_eq!(vertex_point(&cfg, x).unwrap().height(), x.len() as i128);
        }
    }

    #[test]
    fn sides_for_d2() {
        for n in 2..=6 {
            let b = boundary_side_spectra(n, 2).unwrap();
            let prefixes =
                Collection::new(n, (0..=n).map(|k| SubsetMask::new(n, (1 << k) - 1).unwrap()))
                    .unwrap();
            assert_eq!(b.front, prefixes);
            assert_eq!(
                b.rim,
                Collection::new(n, [s(n, "∅"), SubsetMask::full(n).unwrap()]).unwrap()
            );
        }
    }

    #[test]
    fn front_minus_rim_four_three() {
        let b = boundary_side_spectra(4, 3).unwrap();
        assert_eq!(b.front.difference(&b.rim), Collection::parse(4, "2,3,23").unwrap());
    }

    #[test]
    fn sides_partition_the_universal_sets() {
        for n in 2..=7 {
            for d in 2..=n {
                let b = boundary_side_spectra(n, d).unwrap();
                let u = universal_sets(n, d).unwrap();
                assert_eq!(b.front.union(&b.rear).unwrap(), u, "n={n} d={d}");
                let both: Vec<_> = b.front.iter().filter(|&x| b.rear.contains(x)).collect();
                assert_eq!(Collection::new(n, both).unwrap(), b.rim);
            }
        }
    }

    #[test]
    fn parity_rule_matches_sign_test() {
        check_parity_rule(5).unwrap();
        // and on cubes in larger zonotopes, where other generators exist
        for (n, d) in [(5, 2), (6, 3), (7, 4), (7, 5)] {
            let cfg = CyclicConfiguration::new(n, d).unwrap();
            for k in SubsetMask::k_subsets(n, d).unwrap() {
                let cube = Cube::new(k, SubsetMask::empty(n).unwrap()).unwrap();
                for pos in 1..=d {
                    for copy in [FacetCopy::Bottom, FacetCopy::Top] {
                        assert_eq!(
                            facet_side_of_cube(&cfg, &cube, pos, copy).unwrap(),
                            facet_side_parity(d, pos, copy)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn facet_side_examples() {
        // d = 1: the bottom vertex is in front
        let cfg = CyclicConfiguration::new(3, 1).unwrap();
        let seg = Cube::new(s(3, "2"), s(3, "1")).unwrap();
        assert_eq!(
            facet_side_of_cube(&cfg, &seg, 1, FacetCopy::Bottom).unwrap(),
            Side::Front
        );
        // d = 2: front edges are the k1-edge at the bottom and the k2-edge on top
        let cfg = CyclicConfiguration::new(2, 2).unwrap();
        let rhombus = Cube::new(s(2, "12"), s(2, "∅")).unwrap();
        assert_eq!(
            facet_side_of_cube(&cfg, &rhombus, 2, FacetCopy::Bottom).unwrap(),
            Side::Front
        );
        assert_eq!(
            facet_side_of_cube(&cfg, &rhombus, 1, FacetCopy::Top).unwrap(),
            Side::Front
        );
        assert_eq!(
            facet_side_of_cube(&cfg, &rhombus, 1, FacetCopy::Bottom).unwrap(),
            Side::Rear
        );
    }

    #[test]
    fn cube_has_d_front_and_d_rear_facets() {
        for d in 1..=5 {
            let fronts = (1..=d)
                .flat_map(|p| [FacetCopy::Bottom, FacetCopy::Top].map(|c| facet_side_parity(d, p, c)))
                .filter(|&s| s == Side::Front)
                .count();
            assert_eq!(fronts, d);
        }
    }

    #[test]
    fn export_counts() {
        let e = export_2d(3, 2).unwrap();
        assert_eq!(e.vertices.len(), 6);
        assert_eq!(e.edges.len(), 6);
        let e = export_2d(4, 3).unwrap();
        assert_eq!(e.vertices.len(), 14);
    }
}
