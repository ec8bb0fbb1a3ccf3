//! Branch and bound for completing a separated collection to full size.
//!
//! Completing `A` is a clique problem: the vertices are the subsets that are
//! separated from `A` and from every universal set, the target clique size
//! is what `A ∪ universal` lacks of `s_{n,d}`. Each node greedily colors its
//! pool; a clique of size `m` needs `m` colors and has a vertex in a class of
//! index at least `m − 1`, so only those vertices are branched on.

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::caps::AuditCaps;
use crate::error::{Error, Result};
use crate::setcalc::{
    check_dims, is_r_separated_collection, max_size, separated_bits, separated_from_all,
    universal_sets, Collection, SubsetMask,
};

/// Largest refutation tree kept in a certificate.
pub const TRACE_NODE_LIMIT: u64 = 200_000;
/// Deeper trees are not recorded, to keep certificates within the nesting
/// limits of common JSON readers.
pub const TRACE_DEPTH_LIMIT: usize = 40;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes_visited: u64,
    pub max_depth: usize,
    /// Not serialized, so certificates stay byte-identical across runs.
    #[serde(skip)]
    pub wall_time: std::time::Duration,
}

/// One node of a refutation tree: the color classes of its pool and, when
/// the classes do not already rule out the target, one child per branch
/// vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceNode {
    pub partition: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub branches: Vec<TraceNode>,
}

/// A complete search tree showing that no completion exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refutation {
    /// Candidate sets as element lists, in canonical order; partitions
    /// index into this list.
    pub candidates: Vec<Vec<usize>>,
    pub need: usize,
    pub root: TraceNode,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub extension: Option<Collection>,
    pub stats: SearchStats,
    pub refutation: Option<Refutation>,
    pub trace_omitted: bool,
}

/// The clique instance for completing `input`.
pub(crate) struct Instance {
    pub base: Collection,
    pub candidates: Vec<SubsetMask>,
    pub adj: Vec<Bits>,
    pub need: usize,
}

pub(crate) fn instance(input: &Collection, d: usize, caps: &AuditCaps) -> Result<Instance> {
    let n = input.n();
    check_dims(n, d)?;
    caps.check_search(n)?;
    let report = is_r_separated_collection(input, d - 1);
    if let Some((a, b)) = report.violating_pair {
        return Err(Error::NotSeparated {
            r: d - 1,
            a: a.to_string(),
            b: b.to_string(),
        });
    }
    let base = input.union(&universal_sets(n, d)?)?;
    let target = max_size(n, d)? as usize;
    let need = target.checked_sub(base.len()).ok_or_else(|| {
        Error::Invariant(format!(
            "{} separated sets exceed the maximum {target}",
            base.len()
        ))
    })?;
    let mut candidates: Vec<SubsetMask> = SubsetMask::all(n)?
        .filter(|&x| !base.contains(x) && separated_from_all(x, &base, d - 1))
        .collect();
    candidates.sort_unstable();
    let adj = candidates
        .iter()
        .map(|a| {
            candidates
                .iter()
                .enumerate()
                .filter(|&(_, b)| a != b && separated_bits(a.bits(), b.bits(), d - 1))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    Ok(Instance {
        base,
        candidates,
        adj,
        need,
    })
}

/// Greedy coloring of `pool` in ascending vertex order.
pub(crate) fn color_classes(adj: &[Bits], pool: &Bits) -> Vec<Bits> {
    let mut classes: Vec<Bits> = Vec::new();
    for v in pool.iter() {
        match classes
            .iter_mut()
            .find(|c| c.intersection_count(&adj[v]) == 0)
        {
            Some(c) => c.insert(v),
            None => {
                let mut c = Bits::new(adj.len());
                c.insert(v);
                classes.push(c);
            }
        }
    }
    classes
}

/// Vertices of classes with index `>= need − 1`, ascending.
pub(crate) fn branch_vertices(classes: &[Bits], need: usize, len: usize) -> Vec<usize> {
    let mut b = Bits::new(len);
    for c in &classes[need - 1..] {
        b.union_with(c);
    }
    b.iter().collect()
}

struct Engine<'a> {
    adj: &'a [Bits],
    stats: SearchStats,
    record: bool,
    chosen: Vec<usize>,
}

impl Engine<'_> {
    /// Returns whether a clique of size `need` exists in `pool`, with the
    /// trace of the subtree when recording.
    fn expand(&mut self, pool: Bits, need: usize) -> (bool, Option<TraceNode>) {
        self.stats.nodes_visited += 1;
        self.stats.max_depth = self.stats.max_depth.max(self.chosen.len());
        if self.record && self.stats.nodes_visited > TRACE_NODE_LIMIT {
            self.record = false;
        }
        if need == 0 {
            return (true, None);
        }
        let classes = color_classes(self.adj, &pool);
        let partition = |classes: &[Bits]| {
            classes
                .iter()
                .map(|c| c.iter().map(|v| v as u32).collect())
                .collect()
        };
        if classes.len() < need {
            let node = self.record.then(|| TraceNode {
                partition: partition(&classes),
                branches: Vec::new(),
            });
            return (false, node);
        }
        let branch = branch_vertices(&classes, need, self.adj.len());
        let mut pool = pool;
        let mut children = Vec::with_capacity(branch.len());
        for v in branch {
            let child_pool = pool.intersection(&self.adj[v]);
            self.chosen.push(v);
            let (found, node) = self.expand(child_pool, need - 1);
            if found {
                return (true, None);
            }
            self.chosen.pop();
            pool.remove(v);
            if let Some(node) = node {
                children.push(node);
            }
        }
        let node = self.record.then(|| TraceNode {
            partition: partition(&classes),
            branches: children,
        });
        (false, node)
    }
}

/// Searches for a size-`s_{n,d}` `(d−1)`-separated collection containing
/// `input`. Candidates are tried in canonical order, so the extension found
/// is deterministic.
pub fn search_extension(
    input: &Collection,
    d: usize,
    caps: &AuditCaps,
    record_trace: bool,
) -> Result<SearchOutcome> {
    let start = std::time::Instant::now();
    let inst = instance(input, d, caps)?;
    let len = inst.candidates.len();
    let record = record_trace && inst.need <= TRACE_DEPTH_LIMIT;
    let mut engine = Engine {
        adj: &inst.adj,
        stats: SearchStats::default(),
        record,
        chosen: Vec::new(),
    };
    let (found, root) = engine.expand(Bits::full(len), inst.need);
    let complete_trace = engine.record;
    let mut stats = engine.stats;
    stats.wall_time = start.elapsed();
    if found {
        let extension = Collection::new(
            input.n(),
            inst.base
                .iter()
                .chain(engine.chosen.iter().map(|&v| inst.candidates[v])),
        )?;
        return Ok(SearchOutcome {
            extension: Some(extension),
            stats,
            refutation: None,
            trace_omitted: false,
        });
    }
    let refutation = match root {
        Some(root) if complete_trace => Some(Refutation {
            candidates: inst.candidates.iter().map(|c| c.to_vec()).collect(),
            need: inst.need,
            root,
        }),
        _ => None,
    };
    Ok(SearchOutcome {
        extension: None,
        stats,
        trace_omitted: record_trace && refutation.is_none(),
        refutation,
    })
}

/// Checks a refutation tree against a freshly built instance.
pub(crate) fn check_refutation(
    input: &Collection,
    d: usize,
    refutation: &Refutation,
    caps: &AuditCaps,
) -> std::result::Result<u64, String> {
    let inst = instance(input, d, caps).map_err(|e| e.to_string())?;
    let listed: Vec<Vec<usize>> = inst.candidates.iter().map(|c| c.to_vec()).collect();
    if listed != refutation.candidates {
        return Err("candidate list differs from the recomputed one".into());
    }
    if inst.need != refutation.need {
        return Err(format!(
            "certificate needs {} sets, recomputed {}",
            refutation.need, inst.need
        ));
    }
    check_node(&inst.adj, &refutation.root, Bits::full(inst.candidates.len()), inst.need)
}

fn check_node(adj: &[Bits], node: &TraceNode, pool: Bits, need: usize) -> std::result::Result<u64, String> {
    if need == 0 {
        return Err("a branch reaches the target size".into());
    }
    let len = adj.len();
    let mut covered = Bits::new(len);
    let mut classes = Vec::with_capacity(node.partition.len());
    for class in &node.partition {
        let mut bits = Bits::new(len);
        for &v in class {
            let v = v as usize;
            if v >= len || covered.contains(v) {
                return Err(format!("vertex {v} misplaced in partition"));
            }
            covered.insert(v);
            bits.insert(v);
        }
        if bits.iter().any(|v| bits.intersection_count(&adj[v]) > 0) {
            return Err("a color class contains two separated sets".into());
        }
        classes.push(bits);
    }
    if covered != pool {
        return Err("partition does not cover the pool".into());
    }
    if classes.len() < need {
        return if node.branches.is_empty() {
            Ok(1)
        } else {
            Err("pruned node has branches".into())
        };
    }
    let branch = branch_vertices(&classes, need, len);
    if branch.len() != node.branches.len() {
        return Err(format!(
            "{} branches recorded, {} required",
            node.branches.len(),
            branch.len()
        ));
    }
    let mut pool = pool;
    let mut total = 1;
    for (v, child) in branch.into_iter().zip(&node.branches) {
        total += check_node(adj, child, pool.intersection(&adj[v]), need - 1)?;
        pool.remove(v);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coloring_is_proper() {
        let inst = instance(&Collection::empty(6).unwrap(), 4, &AuditCaps::default()).unwrap();
        assert_eq!(inst.candidates.len(), 12);
        assert_eq!(inst.need, 5);
        let classes = color_classes(&inst.adj, &Bits::full(12));
        for c in &classes {
            for v in c.iter() {
                assert_eq!(c.intersection_count(&inst.adj[v]), 0);
            }
        }
    }

    #[test]
    fn refutation_replays_and_tampering_fails() {
        let a = Collection::parse(6, "24,35,1346").unwrap();
        let out = search_extension(&a, 4, &AuditCaps::default(), true).unwrap();
        assert!(out.extension.is_none());
        let r = out.refutation.unwrap();
        let nodes = check_refutation(&a, 4, &r, &AuditCaps::default()).unwrap();
        assert_eq!(nodes, out.stats.nodes_visited);
        let mut bad = r.clone();
        bad.need += 1;
        assert!(check_refutation(&a, 4, &bad, &AuditCaps::default()).is_err());
    }
}
