//! Census of inclusion-maximal (d−1)-separated collections.
//!
//! Every maximal collection contains the universal sets, so the census runs
//! Bron–Kerbosch over the separation graph on the remaining subsets only.

use std::collections::BTreeMap;

use crate::bits::Bits;
use crate::caps::AuditCaps;
use crate::error::Result;
use crate::setcalc::separation::separated_bits;
use crate::setcalc::universal::{check_dims, is_universal};
use crate::setcalc::{max_size, Collection, SubsetMask};

/// All maximal cliques of a graph given by adjacency bitsets. Output is
/// deterministic: each clique ascending, cliques in lexicographic order.
pub(crate) fn maximal_cliques(adj: &[Bits]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut r = Vec::new();
    bron_kerbosch(adj, &mut r, Bits::full(adj.len()), Bits::new(adj.len()), &mut out);
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out
}

fn bron_kerbosch(
    adj: &[Bits],
    r: &mut Vec<usize>,
    mut p: Bits,
    mut x: Bits,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    // Tomita pivot: the vertex of P ∪ X with most neighbours in P.
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| (adj[u].intersection_count(&p), std::cmp::Reverse(u)))
        .expect("P is non-empty");
    let todo: Vec<usize> = p.difference(&adj[pivot]).iter().collect();
    for v in todo {
        r.push(v);
        bron_kerbosch(adj, r, p.intersection(&adj[v]), x.intersection(&adj[v]), out);
        r.pop();
        p.remove(v);
        x.insert(v);
    }
}

/// Every inclusion-maximal (d−1)-separated collection in `2^[n]`, as
/// `(size, collection)` pairs sorted by size, then by members.
pub fn maximal_collections(
    n: usize,
    d: usize,
    caps: &AuditCaps,
) -> Result<Vec<(usize, Collection)>> {
    check_dims(n, d)?;
    caps.check_census(n)?;
    let r = d - 1;
    let (universal, rest): (Vec<SubsetMask>, Vec<SubsetMask>) =
        SubsetMask::all(n)?.partition(|&x| is_universal(x, d));
    let adj: Vec<Bits> = rest
        .iter()
        .map(|a| {
            rest.iter()
                .enumerate()
                .filter(|&(_, b)| a != b && separated_bits(a.bits(), b.bits(), r))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    if rest.is_empty() {
        let c = Collection::new(n, universal.iter().copied())?;
        out.push((c.len(), c));
        return Ok(out);
    }
    for clique in maximal_cliques(&adj) {
        let c = Collection::new(
            n,
            universal
                .iter()
                .copied()
                .chain(clique.iter().map(|&i| rest[i])),
        )?;
        out.push((c.len(), c));
    }
    out.sort();
    Ok(out)
}

/// Result of a purity audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Purity {
    pub n: usize,
    pub d: usize,
    pub pure: bool,
    pub max_size: u64,
    /// A maximal collection of deficient size, present when impure. The
    /// smallest such collection is reported.
    pub witness: Option<Collection>,
    /// Number of maximal collections of each size.
    pub size_counts: BTreeMap<usize, usize>,
}

impl Purity {
    pub fn collection_count(&self) -> usize {
        self.size_counts.values().sum()
    }
}

/// Decides whether all maximal (d−1)-separated collections in `2^[n]` have
/// the same size.
pub fn is_pure(n: usize, d: usize, caps: &AuditCaps) -> Result<Purity> {
    let census = maximal_collections(n, d, caps)?;
    let target = max_size(n, d)?;
    let mut size_counts = BTreeMap::new();
    for (size, _) in &census {
        *size_counts.entry(*size).or_insert(0) += 1;
    }
    let witness = census
        .iter()
        .find(|(size, _)| (*size as u64) < target)
        .map(|(_, c)| c.clone());
    Ok(Purity {
        n,
        d,
        pure: witness.is_none(),
        max_size: target,
        witness,
        size_counts,
    })
}
