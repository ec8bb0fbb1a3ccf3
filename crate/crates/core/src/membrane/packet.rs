//! Packet orders, nested inversion sets, and agreeability.

use serde::Serialize;

use crate::caps::AuditCaps;
use crate::cubillage::{precedence, Cubillage, PrecedenceDag};
use crate::error::{Error, Result};
use crate::extendability::{is_extendable, Certificate};
use crate::setcalc::{is_r_separated_collection, Collection, SeparationReport, SubsetMask};

use super::{inversions_geometric, inversions_spectral, Membrane};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PacketOrder {
    /// `K − k_d ≺ K − k_{d−1} ≺ … ≺ K − k_1`.
    Lex,
    Antilex,
}

/// Order of the packet `{K − k : k ∈ K}` in a cubillage of dimension
/// `|K| − 1`.
pub fn packet_order(q: &Cubillage, k: SubsetMask) -> Result<PacketOrder> {
    packet_order_in(q, &precedence(q)?, k)
}

/// [`packet_order`] with a precomputed precedence order of `q`.
pub fn packet_order_in(q: &Cubillage, dag: &PrecedenceDag, k: SubsetMask) -> Result<PacketOrder> {
    if k.n() != q.n() || k.len() != q.d() + 1 {
        return Err(Error::DimensionOutOfRange {
            n: q.n(),
            d: k.len(),
        });
    }
    // lexicographic packet order: drop the largest element first
    let pack: Vec<SubsetMask> = k.to_vec().iter().rev().map(|&e| k.without(e)).collect();
    for (i, &a) in pack.iter().enumerate() {
        for &b in &pack[i + 1..] {
            if !dag.precedes(a, b) && !dag.precedes(b, a) {
                return Err(Error::NotTotallyOrdered(format!("{k}: {a} and {b} are incomparable")));
            }
        }
    }
    if pack.windows(2).all(|w| dag.precedes(w[0], w[1])) {
        Ok(PacketOrder::Lex)
    } else if pack.windows(2).all(|w| dag.precedes(w[1], w[0])) {
        Ok(PacketOrder::Antilex)
    } else {
        Err(Error::NotTotallyOrdered(format!(
            "{k}: packet is neither lexicographic nor antilexicographic"
        )))
    }
}

/// Checks that the union of the membranes' spectra is `(d−1)`-separated.
/// The membranes must lie in `q` with nested inversion sets.
pub fn nested_inversions_separated(q: &Cubillage, membranes: &[Membrane]) -> Result<SeparationReport> {
    let mut chain = membranes
        .iter()
        .map(|m| Ok((inversions_geometric(q, m)?, m)))
        .collect::<Result<Vec<_>>>()?;
    chain.sort_by_key(|(inv, _)| inv.len());
    if chain.windows(2).any(|w| !w[0].0.is_subset(&w[1].0)) {
        return Err(Error::NotNested);
    }
    let mut union = Collection::empty(q.n())?;
    for m in membranes {
        union = union.union(&m.spectrum())?;
    }
    Ok(is_r_separated_collection(&union, q.d() - 1))
}

/// Whether the spectra of `m` and `n` fit together in one cubillage. The
/// spectral inversion sets of the two must be nested.
pub fn agreeable(m: &Membrane, n: &Membrane, caps: &AuditCaps) -> Result<Certificate> {
    if (m.n(), m.d()) != (n.n(), n.d()) {
        return Err(Error::GroundSetMismatch {
            left: m.n(),
            right: n.n(),
        });
    }
    let a = inversions_spectral(&m.spectrum(), m.d())?;
    let b = inversions_spectral(&n.spectrum(), n.d())?;
    if !a.is_subset(&b) && !b.is_subset(&a) {
        return Err(Error::NotNested);
    }
    let union = m.spectrum().union(&n.spectrum())?;
    is_extendable(&union, m.n(), m.d(), caps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubillage::{antistandard, enumerate, standard};
    use crate::membrane::{membranes_of, InversionSet};

    #[test]
    fn standard_packets_are_lex() {
        for d in 2..=5 {
            let k = SubsetMask::full(d).unwrap();
            assert_eq!(packet_order(&standard(d, d - 1).unwrap(), k).unwrap(), PacketOrder::Lex);
            assert_eq!(
                packet_order(&antistandard(d, d - 1).unwrap(), k).unwrap(),
                PacketOrder::Antilex
            );
        }
    }

    #[test]
    fn dichotomy_at_four_two() {
        for q in enumerate(4, 2, &AuditCaps::default()).unwrap() {
            let q = q.unwrap();
            for m in membranes_of(&q).unwrap() {
                let inv: InversionSet = inversions_geometric(&q, &m).unwrap();
                let p = m.project().unwrap();
                let dag = precedence(&p).unwrap();
                for k in SubsetMask::k_subsets(4, 2).unwrap() {
                    let order = packet_order_in(&p, &dag, k).unwrap();
                    assert_eq!(order == PacketOrder::Lex, !inv.contains(k));
                }
            }
        }
    }

    #[test]
    fn nesting_is_checked() {
        let q = standard(4, 3).unwrap();
        let ms = membranes_of(&q).unwrap();
        let first = ms.first().unwrap().clone();
        let last = ms.last().unwrap().clone();
        assert!(nested_inversions_separated(&q, &[first.clone(), last.clone()]).unwrap().ok);
        assert!(nested_inversions_separated(&q, &[last]).unwrap().ok);
        let incomparable: Vec<_> = ms
            .iter()
            .filter(|m| {
                let i = inversions_geometric(&q, m).unwrap();
                i.len() == 1
            })
            .cloned()
            .collect();
        if incomparable.len() >= 2 {
            assert!(matches!(
                nested_inversions_separated(&q, &incomparable[..2]),
                Err(Error::NotNested)
            ));
        }
    }

    #[test]
    fn nested_pairs_agree_at_d3() {
        let caps = AuditCaps::default();
        let q = standard(5, 3).unwrap();
        let ms = membranes_of(&q).unwrap();
        for m in ms.iter().step_by(3) {
            assert!(agreeable(m, m, &caps).unwrap().extendable());
            assert!(agreeable(&ms[0], m, &caps).unwrap().extendable());
        }
    }
}
