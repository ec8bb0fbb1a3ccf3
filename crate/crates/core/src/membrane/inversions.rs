//! Inversion sets of membranes.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::caps::AuditCaps;
use crate::cubillage::{enumerate, Cubillage};
use crate::error::{Error, Result};
use crate::setcalc::{Collection, SubsetMask};

use super::{membranes_of, Membrane};

/// The `d`-subsets whose cubes lie before a membrane.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InversionSet {
    pub n: usize,
    pub d: usize,
    /// Sorted in canonical subset order.
    pub members: Vec<SubsetMask>,
}

impl InversionSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, k: SubsetMask) -> bool {
        self.members.binary_search(&k).is_ok()
    }

    pub fn is_subset(&self, other: &InversionSet) -> bool {
        self.members.iter().all(|&k| other.contains(k))
    }
}

/// Which parity class of `K = {k_1 < … < k_d}` marks `K` as inversive:
/// `Odd` is `{k_i : d − i odd}`, `Even` is `{k_i : d − i even}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityConvention {
    Odd,
    Even,
}

impl ParityConvention {
    /// The parity class of `k` selected by this convention.
    pub fn class_of(self, k: SubsetMask) -> SubsetMask {
        let d = k.len();
        let want_odd = self == ParityConvention::Odd;
        let mut out = SubsetMask::from_bits_unchecked(k.n(), 0);
        for (i, e) in k.elements().enumerate() {
            if ((d - (i + 1)) % 2 == 1) == want_odd {
                out = out.with(e);
            }
        }
        out
    }
}

impl fmt::Display for ParityConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParityConvention::Odd => "odd",
            ParityConvention::Even => "even",
        })
    }
}

/// Types of the cubes before `m` in `q`.
pub fn inversions_geometric(q: &Cubillage, m: &Membrane) -> Result<InversionSet> {
    let located = m.locate_in(q)?;
    Ok(InversionSet {
        n: q.n(),
        d: q.d(),
        members: located.ideal().expect("located").to_vec(),
    })
}

/// Inversions read off a membrane spectrum alone: `K` is inversive when some
/// `X` in the spectrum meets `K` in exactly its inversive parity class.
pub fn inversions_spectral_with(
    spec: &Collection,
    d: usize,
    convention: ParityConvention,
) -> Result<InversionSet> {
    let n = spec.n();
    let members = SubsetMask::k_subsets(n, d)?
        .into_iter()
        .filter(|&k| {
            let class = convention.class_of(k);
            spec.iter().any(|x| x.intersection(k) == class)
        })
        .collect();
    Ok(InversionSet { n, d, members })
}

/// [`inversions_spectral_with`] under the calibrated convention.
pub fn inversions_spectral(spec: &Collection, d: usize) -> Result<InversionSet> {
    inversions_spectral_with(spec, d, parity_convention())
}

/// Decides the convention by comparing both candidates with the geometric
/// inversion sets of every membrane of every cubillage of `Z(4,2)`. Exactly
/// one candidate must agree everywhere.
pub fn calibrate_parity() -> Result<ParityConvention> {
    let mut odd_ok = true;
    let mut even_ok = true;
    for q in enumerate(4, 2, &AuditCaps::default())? {
        let q = q?;
        for m in membranes_of(&q)? {
            let geo = inversions_geometric(&q, &m)?;
            let spec = m.spectrum();
            odd_ok &= inversions_spectral_with(&spec, 2, ParityConvention::Odd)? == geo;
            even_ok &= inversions_spectral_with(&spec, 2, ParityConvention::Even)? == geo;
        }
    }
    match (odd_ok, even_ok) {
        (true, false) => Ok(ParityConvention::Odd),
        (false, true) => Ok(ParityConvention::Even),
        _ => Err(Error::Invariant(format!(
            "parity calibration inconclusive (odd: {odd_ok}, even: {even_ok})"
        ))),
    }
}

/// The calibrated convention, computed once per process.
pub fn parity_convention() -> ParityConvention {
    static CONVENTION: OnceLock<ParityConvention> = OnceLock::new();
    *CONVENTION.get_or_init(|| calibrate_parity().expect("parity calibration"))
}
