//! Extendability: whether a separated collection lies in some cubillage
//! spectrum, with certificates that can be checked without searching.

mod lemmas;
mod search;

use serde::{Deserialize, Serialize};

pub use lemmas::{
    check_lemma_diag_growth, check_lemma_ground_growth, check_prop_bd, cube_collection,
    open_question_harness, HarnessReport, LemmaCheck, OpenQuestion, EVIDENCE_LABEL,
};
pub use search::{
    search_extension, Refutation, SearchOutcome, SearchStats, TraceNode, TRACE_DEPTH_LIMIT,
    TRACE_NODE_LIMIT,
};

use crate::caps::AuditCaps;
use crate::cubillage::{from_spectrum, Cubillage};
use crate::error::{Error, Result};
use crate::setcalc::{
    is_r_separated_collection, max_size, separated_from_all, Collection, Purity, SubsetMask,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CertificateKind {
    ExtensionFound,
    ExhaustedNoExtension,
    PurityWitness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Witness {
    Cubillage(Cubillage),
    Collection(Collection),
}

/// A verdict with enough data to re-check it.
///
/// `ExtensionFound` carries a cubillage whose spectrum contains the input.
/// `ExhaustedNoExtension` carries the search tree when it was small enough
/// to record. `PurityWitness` has a maximal collection of deficient size as
/// its input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub n: usize,
    pub d: usize,
    pub input: Collection,
    pub witness: Option<Witness>,
    pub stats: SearchStats,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refutation: Option<Refutation>,
    #[serde(default)]
    pub trace_omitted: bool,
}

impl Certificate {
    pub fn extendable(&self) -> bool {
        self.kind == CertificateKind::ExtensionFound
    }

    /// A certificate of impurity from a purity audit, if it found one.
    pub fn from_purity(p: &Purity) -> Option<Certificate> {
        p.witness.as_ref().map(|w| Certificate {
            kind: CertificateKind::PurityWitness,
            n: p.n,
            d: p.d,
            input: w.clone(),
            witness: None,
            stats: SearchStats::default(),
            refutation: None,
            trace_omitted: false,
        })
    }
}

/// Decides whether `a` is `(n,d)`-extendable.
pub fn is_extendable(a: &Collection, n: usize, d: usize, caps: &AuditCaps) -> Result<Certificate> {
    if a.n() != n {
        return Err(Error::GroundSetMismatch { left: n, right: a.n() });
    }
    let out = search_extension(a, d, caps, true)?;
    let (kind, witness) = match &out.extension {
        Some(ext) => {
            let q = from_spectrum(ext, d)
                .map_err(|e| Error::Invariant(format!("extension is not a spectrum: {e}")))?;
            (CertificateKind::ExtensionFound, Some(Witness::Cubillage(q)))
        }
        None => (CertificateKind::ExhaustedNoExtension, None),
    };
    Ok(Certificate {
        kind,
        n,
        d,
        input: a.clone(),
        witness,
        stats: out.stats,
        refutation: out.refutation,
        trace_omitted: out.trace_omitted,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplayVerdict {
    pub valid: bool,
    pub detail: String,
}

impl ReplayVerdict {
    fn valid(detail: impl Into<String>) -> Self {
        ReplayVerdict {
            valid: true,
            detail: detail.into(),
        }
    }

    fn invalid(detail: impl Into<String>) -> Self {
        ReplayVerdict {
            valid: false,
            detail: detail.into(),
        }
    }
}

/// Re-checks a certificate without searching.
pub fn replay(cert: &Certificate, caps: &AuditCaps) -> Result<ReplayVerdict> {
    let (n, d) = (cert.n, cert.d);
    if cert.input.n() != n {
        return Ok(ReplayVerdict::invalid("input ground set differs from n"));
    }
    Ok(match cert.kind {
        CertificateKind::ExtensionFound => match &cert.witness {
            Some(Witness::Cubillage(q)) => {
                if (q.n(), q.d()) != (n, d) {
                    ReplayVerdict::invalid("witness lives in another zonotope")
                } else if let Err(diag) = q.validate() {
                    ReplayVerdict::invalid(format!("witness is not a cubillage: {diag}"))
                } else if !cert.input.is_subset(&q.spectrum()?) {
                    ReplayVerdict::invalid("witness spectrum misses input sets")
                } else {
                    ReplayVerdict::valid("witness cubillage contains the input")
                }
            }
            _ => ReplayVerdict::invalid("no cubillage witness"),
        },
        CertificateKind::ExhaustedNoExtension => match &cert.refutation {
            Some(r) => match search::check_refutation(&cert.input, d, r, caps) {
                Ok(nodes) => ReplayVerdict::valid(format!("refutation tree of {nodes} nodes checks")),
                Err(why) => ReplayVerdict::invalid(why),
            },
            None => ReplayVerdict::invalid("refutation trace was omitted; rerun the search"),
        },
        CertificateKind::PurityWitness => {
            let c = &cert.input;
            if d == 0 || d > n {
                return Ok(ReplayVerdict::invalid("dimension out of range"));
            }
            if !is_r_separated_collection(c, d - 1).ok {
                ReplayVerdict::invalid("witness is not separated")
            } else if c.len() as u64 >= max_size(n, d)? {
                ReplayVerdict::invalid("witness is not deficient")
            } else if let Some(x) = SubsetMask::all(n)?
                .find(|&x| !c.contains(x) && separated_from_all(x, c, d - 1))
            {
                ReplayVerdict::invalid(format!("witness grows by {x}"))
            } else {
                ReplayVerdict::valid(format!(
                    "maximal collection of size {} < {}",
                    c.len(),
                    max_size(n, d)?
                ))
            }
        }
    })
}
