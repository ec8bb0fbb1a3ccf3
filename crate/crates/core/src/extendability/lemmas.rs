//! Checks of the extendability transfer lemmas and the search harness for
//! the open questions about pairs of cubes and membrane-cube pairs.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::caps::AuditCaps;
use crate::cubillage::enumerate;
use crate::error::{Error, Result};
use crate::membrane::membranes_of;
use crate::setcalc::{is_r_separated_collection, Collection, SubsetMask};

use super::is_extendable;

/// Verdicts before and after a transfer. The lemmas say they agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub before: bool,
    pub after: bool,
}

impl LemmaCheck {
    pub fn agree(&self) -> bool {
        self.before == self.after
    }
}

/// `a` at `(n,d)` versus the same sets at `(n+1,d)`.
pub fn check_lemma_ground_growth(
    a: &Collection,
    n: usize,
    d: usize,
    caps: &AuditCaps,
) -> Result<LemmaCheck> {
    let before = is_extendable(a, n, d, caps)?.extendable();
    let after = is_extendable(&a.regrounded(n + 1)?, n + 1, d, caps)?.extendable();
    Ok(LemmaCheck { before, after })
}

/// `a` at `(n,d)` versus `a ∪ {X ∪ {n+1} : X ∈ a}` at `(n+1,d+1)`.
pub fn check_lemma_diag_growth(
    a: &Collection,
    n: usize,
    d: usize,
    caps: &AuditCaps,
) -> Result<LemmaCheck> {
    let before = is_extendable(a, n, d, caps)?.extendable();
    let grown = a.regrounded(n + 1)?;
    let doubled = Collection::new(
        n + 1,
        grown.iter().chain(grown.iter().map(|x| x.with(n + 1))),
    )?;
    let after = is_extendable(&doubled, n + 1, d + 1, caps)?.extendable();
    Ok(LemmaCheck { before, after })
}

/// `{A ∪ X : X ⊆ D}`.
pub fn cube_collection(a: SubsetMask, dset: SubsetMask) -> Collection {
    let members: Vec<SubsetMask> = dset.subsets().map(|x| a.union(x)).collect();
    Collection::new(a.n(), members).expect("one ground set")
}

/// Builds `{B ∪ D′ : B ∈ b, D′ ⊆ D}` over the ground set of `dset` and
/// decides whether it is `(n, |D|+3)`-extendable. `b` lives on `[k]` and
/// must be 2-separated; `D` must avoid `[k]`.
pub fn check_prop_bd(k: usize, b: &Collection, dset: SubsetMask, caps: &AuditCaps) -> Result<bool> {
    let n = dset.n();
    if b.n() != k {
        return Err(Error::GroundSetMismatch { left: k, right: b.n() });
    }
    if let Some((x, y)) = is_r_separated_collection(b, 2).violating_pair {
        return Err(Error::NotSeparated {
            r: 2,
            a: x.to_string(),
            b: y.to_string(),
        });
    }
    if let Some(e) = dset.elements().find(|&e| e <= k) {
        return Err(Error::DegenerateInput(format!("D contains {e} <= k = {k}")));
    }
    let mut sets = Vec::new();
    for base in b.regrounded(n)?.iter() {
        for part in dset.subsets() {
            sets.push(base.union(part));
        }
    }
    let c = Collection::new(n, sets)?;
    Ok(is_extendable(&c, n, dset.len() + 3, caps)?.extendable())
}

pub const EVIDENCE_LABEL: &str = "instance evidence only";

/// Which open configuration to sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpenQuestion {
    /// Two cube collections `{A ∪ X : X ⊆ D}` of the given dimensions.
    TwoCubes { dim_a: usize, dim_b: usize },
    /// A membrane spectrum together with one cube collection. With
    /// `front_only` only the front side is used.
    MembraneAndCube { cube_dim: usize, front_only: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HarnessReport {
    pub question: String,
    pub label: &'static str,
    pub n: usize,
    pub d: usize,
    /// Distinct separated collections tested.
    pub instances: usize,
    pub extendable: usize,
    /// Up to ten non-extendable instances.
    pub counterexamples: Vec<Collection>,
}

fn cubes_of_dim(n: usize, dim: usize) -> Result<Vec<Collection>> {
    let mut out = Vec::new();
    for dset in SubsetMask::k_subsets(n, dim)? {
        let rest = SubsetMask::full(n)?.difference(dset);
        for a in rest.subsets() {
            out.push(cube_collection(a, dset));
        }
    }
    Ok(out)
}

const HARNESS_GROUND_LIMIT: usize = 6;

/// Tests every configuration of the given shape on `Z(n,d)` whose union is
/// `(d−1)`-separated. Reports counts only; no general claim is made.
pub fn open_question_harness(
    question: OpenQuestion,
    n: usize,
    d: usize,
    caps: &AuditCaps,
) -> Result<HarnessReport> {
    crate::setcalc::check_dims(n, d)?;
    if n > HARNESS_GROUND_LIMIT {
        return Err(Error::AuditTooLarge {
            what: format!("open-question harness at n={n}"),
            detail: format!("harness is limited to n <= {HARNESS_GROUND_LIMIT}"),
        });
    }
    let mut unions: BTreeSet<Collection> = BTreeSet::new();
    let name = match question {
        OpenQuestion::TwoCubes { dim_a, dim_b } => {
            if dim_a > d || dim_b > d {
                return Err(Error::DimensionOutOfRange { n: d, d: dim_a.max(dim_b) });
            }
            let first = cubes_of_dim(n, dim_a)?;
            let second = cubes_of_dim(n, dim_b)?;
            for a in &first {
                for b in &second {
                    unions.insert(a.union(b)?);
                }
            }
            format!("O1: two cubes of dimensions {dim_a} and {dim_b}")
        }
        OpenQuestion::MembraneAndCube { cube_dim, front_only } => {
            if cube_dim > d {
                return Err(Error::DimensionOutOfRange { n: d, d: cube_dim });
            }
            let mut spectra: BTreeSet<Collection> = BTreeSet::new();
            if front_only {
                spectra.insert(crate::zonogeom::boundary_side_spectra(n, d)?.front);
            } else {
                for q in enumerate(n, d, caps)? {
                    for m in membranes_of(&q?)? {
                        spectra.insert(m.spectrum());
                    }
                }
            }
            let cubes = cubes_of_dim(n, cube_dim)?;
            for s in &spectra {
                for c in &cubes {
                    unions.insert(s.union(c)?);
                }
            }
            let which = if front_only { "the front side" } else { "a membrane" };
            format!("O2: {which} and a cube of dimension {cube_dim}")
        }
    };
    let mut cache: HashMap<Collection, bool> = HashMap::new();
    let mut instances = 0;
    let mut extendable = 0;
    let mut counterexamples = Vec::new();
    for u in unions {
        if !is_r_separated_collection(&u, d - 1).ok {
            continue;
        }
        instances += 1;
        let verdict = match cache.get(&u) {
            Some(&v) => v,
            None => {
                let v = is_extendable(&u, n, d, caps)?.extendable();
                cache.insert(u.clone(), v);
                v
            }
        };
        if verdict {
            extendable += 1;
        } else if counterexamples.len() < 10 {
            counterexamples.push(u);
        }
    }
    Ok(HarnessReport {
        question: name,
        label: EVIDENCE_LABEL,
        n,
        d,
        instances,
        extendable,
        counterexamples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setcalc::universal_sets;

    fn caps() -> AuditCaps {
        AuditCaps::default()
    }

    #[test]
    fn known_triple_stays_stuck() {
        let a = Collection::parse(6, "24,35,1346").unwrap();
        let g = check_lemma_ground_growth(&a, 6, 4, &caps()).unwrap();
        assert_eq!(g, LemmaCheck { before: false, after: false });
        let dg = check_lemma_diag_growth(&a, 6, 4, &caps()).unwrap();
        assert_eq!(dg, LemmaCheck { before: false, after: false });
    }

    #[test]
    fn universal_sets_transfer() {
        for (n, d) in [(4, 2), (5, 3), (6, 4)] {
            let u = universal_sets(n, d).unwrap();
            assert_eq!(
                check_lemma_ground_growth(&u, n, d, &caps()).unwrap(),
                LemmaCheck { before: true, after: true }
            );
        }
        let empty = Collection::empty(5).unwrap();
        assert!(check_lemma_diag_growth(&empty, 5, 3, &caps()).unwrap().agree());
    }

    #[test]
    fn prop_bd_instances() {
        let single = Collection::parse(3, "13").unwrap();
        assert!(check_prop_bd(3, &single, SubsetMask::parse(5, "4").unwrap(), &caps()).unwrap());
        let cube = Collection::new(3, SubsetMask::all(3).unwrap()).unwrap();
        assert!(check_prop_bd(3, &cube, SubsetMask::empty(4).unwrap(), &caps()).unwrap());
        assert!(check_prop_bd(3, &cube, SubsetMask::parse(6, "56").unwrap(), &caps()).unwrap());
        let not2 = Collection::parse(4, "13,24").unwrap();
        assert!(matches!(
            check_prop_bd(4, &not2, SubsetMask::parse(6, "5").unwrap(), &caps()),
            Err(Error::NotSeparated { .. })
        ));
    }

    #[test]
    fn harness_runs_small_cases() {
        let r = open_question_harness(OpenQuestion::TwoCubes { dim_a: 0, dim_b: 0 }, 5, 3, &caps()).unwrap();
        assert_eq!(r.label, EVIDENCE_LABEL);
        assert!(r.instances > 0);
        assert_eq!(r.extendable, r.instances, "(5,3) is pure");
        let r = open_question_harness(
            OpenQuestion::MembraneAndCube { cube_dim: 1, front_only: true },
            5,
            3,
            &caps(),
        )
        .unwrap();
        assert_eq!(r.extendable, r.instances);
        assert!(open_question_harness(OpenQuestion::TwoCubes { dim_a: 0, dim_b: 0 }, 7, 3, &caps()).is_err());
    }
}
