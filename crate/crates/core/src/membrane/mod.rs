//! Membranes: facet surfaces of a cubillage that project bijectively to
//! `Z(n,d−1)`.
//!
//! Inside a fixed cubillage, membranes are the rear boundaries of order
//! ideals of the precedence order. The front side of `Z(n,d)` belongs to
//! the empty ideal and the rear side to the full one.

mod inversions;
mod packet;

use std::collections::{HashMap, HashSet};
use std::fmt;

pub use inversions::{
    calibrate_parity, inversions_geometric, inversions_spectral, inversions_spectral_with,
    parity_convention, InversionSet, ParityConvention,
};
pub use packet::{agreeable, nested_inversions_separated, packet_order, packet_order_in, PacketOrder};

use crate::bits::Bits;
use crate::caps::AuditCaps;
use crate::cubillage::{from_spectrum, precedence, Cube, Cubillage, FacetSlot};
use crate::error::{Error, Result};
use crate::extendability::search_extension;
use crate::setcalc::{binomial, check_dims, Collection, SubsetMask};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Membrane {
    n: usize,
    d: usize,
    facets: Vec<Cube>,
    /// Types of the cubes before the membrane, sorted, when the host
    /// cubillage is known.
    ideal: Option<Vec<SubsetMask>>,
}

impl Membrane {
    /// Builds a membrane of `Z(n,d)` from its `(d−1)`-dimensional facets.
    /// The facets must form a cubillage of `Z(n,d−1)`.
    pub fn new(n: usize, d: usize, mut facets: Vec<Cube>) -> Result<Self> {
        check_dims(n, d)?;
        facets.sort_unstable();
        let expected = binomial(n, d - 1);
        if facets.len() as u64 != expected {
            return Err(Error::MembraneMismatch(format!(
                "{} facets, expected {expected}",
                facets.len()
            )));
        }
        Cubillage::new(n, d - 1, facets.clone())?;
        Ok(Membrane {
            n,
            d,
            facets,
            ideal: None,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn facets(&self) -> &[Cube] {
        &self.facets
    }

    pub fn ideal(&self) -> Option<&[SubsetMask]> {
        self.ideal.as_deref()
    }

    /// Labels of all facet vertices.
    pub fn spectrum(&self) -> Collection {
        let mut labels: Vec<SubsetMask> = self.facets.iter().flat_map(|f| f.vertices()).collect();
        labels.sort_unstable();
        labels.dedup();
        Collection::from_sorted_unchecked(self.n, labels)
    }

    /// Reads the facets as the cubes of a cubillage of `Z(n,d−1)`.
    pub fn project(&self) -> Result<Cubillage> {
        Cubillage::new(self.n, self.d - 1, self.facets.clone())
    }

    /// Places the membrane inside `q`, recovering the cubes before it.
    pub fn locate_in(&self, q: &Cubillage) -> Result<Membrane> {
        if (q.n(), q.d()) != (self.n, self.d) {
            return Err(Error::MembraneMismatch(format!(
                "membrane lives in Z({},{}), cubillage in Z({},{})",
                self.n,
                self.d,
                q.n(),
                q.d()
            )));
        }
        let slots = q.facet_slots();
        let own: HashSet<Cube> = self.facets.iter().copied().collect();
        if let Some(f) = self.facets.iter().find(|f| !slots.contains_key(f)) {
            return Err(Error::MembraneMismatch(format!("{f} is not a facet of the cubillage")));
        }
        let len = q.cubes().len();
        let mut ideal = Bits::new(len);
        let mut queue: Vec<usize> = Vec::new();
        let reach = |c: usize, ideal: &mut Bits, queue: &mut Vec<usize>| {
            if !ideal.contains(c) {
                ideal.insert(c);
                queue.push(c);
            }
        };
        for (f, slot) in &slots {
            if let (None, Some(c)) = (slot.pred, slot.succ) {
                if !own.contains(f) {
                    reach(c, &mut ideal, &mut queue);
                }
            }
        }
        while let Some(c) = queue.pop() {
            for f in q.cubes()[c].rear_facets() {
                if own.contains(&f) {
                    continue;
                }
                if let Some(next) = slots[&f].succ {
                    reach(next, &mut ideal, &mut queue);
                }
            }
        }
        let facets = surface(&slots, &ideal);
        if facets != self.facets {
            return Err(Error::MembraneMismatch(
                "facets do not bound an order ideal of the cubillage".into(),
            ));
        }
        Ok(Membrane {
            ideal: Some(ideal_types(q, &ideal)),
            ..self.clone()
        })
    }
}

impl fmt::Display for Membrane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M(n={}, d={}; ", self.n, self.d)?;
        for (i, c) in self.facets.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Membrane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Facets whose rear-side cube is in the ideal (or is the exterior) and
/// whose front-side cube is not.
fn surface(slots: &HashMap<Cube, FacetSlot>, ideal: &Bits) -> Vec<Cube> {
    let mut out: Vec<Cube> = slots
        .iter()
        .filter(|(_, s)| {
            s.pred.is_none_or(|c| ideal.contains(c)) && s.succ.is_none_or(|c| !ideal.contains(c))
        })
        .map(|(f, _)| *f)
        .collect();
    out.sort_unstable();
    out
}

fn ideal_types(q: &Cubillage, ideal: &Bits) -> Vec<SubsetMask> {
    // cube order is type order, so this is sorted
    ideal.iter().map(|c| q.cubes()[c].kind()).collect()
}

fn from_ideal(q: &Cubillage, slots: &HashMap<Cube, FacetSlot>, ideal: &Bits) -> Result<Membrane> {
    let facets = surface(slots, ideal);
    let mut m = Membrane::new(q.n(), q.d(), facets).map_err(|e| {
        Error::MembraneValidationFailed(format!("ideal of size {}: {e}", ideal.count()))
    })?;
    m.ideal = Some(ideal_types(q, ideal));
    Ok(m)
}

/// Every membrane of `q`, one per order ideal of its precedence order,
/// starting with the front side and ending with the rear side.
pub fn membranes_of(q: &Cubillage) -> Result<Vec<Membrane>> {
    let dag = precedence(q)?;
    let slots = q.facet_slots();
    dag.ideals().map(|ideal| from_ideal(q, &slots, &ideal)).collect()
}

/// The front side of `Z(n,d)` inside `q`.
pub fn front_side(q: &Cubillage) -> Result<Membrane> {
    from_ideal(q, &q.facet_slots(), &Bits::new(q.cubes().len()))
}

/// The rear side of `Z(n,d)` inside `q`.
pub fn rear_side(q: &Cubillage) -> Result<Membrane> {
    from_ideal(q, &q.facet_slots(), &Bits::full(q.cubes().len()))
}

pub fn project(m: &Membrane) -> Result<Cubillage> {
    m.project()
}

/// Lifts a cubillage of `Z(n,d−1)` to a membrane of some cubillage of
/// `Z(n,d)`. The host is built from the first extension of `Spec(q)` found
/// by the extension search.
pub fn lift(q: &Cubillage, caps: &AuditCaps) -> Result<(Cubillage, Membrane)> {
    let (n, d) = (q.n(), q.d() + 1);
    check_dims(n, d)?;
    let spec = q.spectrum()?;
    let outcome = search_extension(&spec, d, caps, false)?;
    let extension = outcome
        .extension
        .ok_or_else(|| Error::Invariant(format!("no cubillage of Z({n},{d}) contains Spec of {q}")))?;
    let host = from_spectrum(&extension, d)?;
    let m = Membrane::new(n, d, q.cubes().to_vec())?
        .locate_in(&host)
        .map_err(|e| Error::Invariant(format!("lifted cubes do not form a membrane: {e}")))?;
    if m.project()? != *q {
        return Err(Error::Invariant("lifted membrane projects elsewhere".into()));
    }
    Ok((host, m))
}
