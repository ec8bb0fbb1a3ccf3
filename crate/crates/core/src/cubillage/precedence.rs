//! The precedence order on cubes: `C` immediately precedes `C′` when a
//! rear facet of `C` is a front facet of `C′`.

use std::collections::VecDeque;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::setcalc::SubsetMask;

use super::Cubillage;

/// Immediate-precedence arcs between the cubes of a cubillage, indexed as
/// in [`Cubillage::cubes`], with the transitive closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrecedenceDag {
    types: Vec<SubsetMask>,
    succ: Vec<Bits>,
    pred: Vec<Bits>,
    /// `after[u]` holds every `v` with `u ≺ v`.
    after: Vec<Bits>,
    topo: Vec<usize>,
}

pub fn precedence(q: &Cubillage) -> Result<PrecedenceDag> {
    let len = q.cubes().len();
    let mut succ = vec![Bits::new(len); len];
    let mut pred = vec![Bits::new(len); len];
    for slot in q.facet_slots().values() {
        if let (Some(a), Some(b)) = (slot.pred, slot.succ) {
            succ[a].insert(b);
            pred[b].insert(a);
        }
    }
    let types: Vec<SubsetMask> = q.cubes().iter().map(|c| c.kind()).collect();

    // Kahn's algorithm, smallest index first.
    let mut indegree: Vec<usize> = pred.iter().map(Bits::count).collect();
    let mut ready: VecDeque<usize> = (0..len).filter(|&v| indegree[v] == 0).collect();
    let mut topo = Vec::with_capacity(len);
    while let Some(u) = ready.pop_front() {
        topo.push(u);
        for v in succ[u].iter() {
            indegree[v] -= 1;
            if indegree[v] == 0 {
                ready.push_back(v);
            }
        }
    }
    if topo.len() != len {
        let stuck = (0..len).find(|&v| indegree[v] > 0).expect("some node is on a cycle");
        return Err(Error::CyclicPrecedence(types[stuck].to_string()));
    }

    let mut after = vec![Bits::new(len); len];
    for &u in topo.iter().rev() {
        let mut reach = succ[u].clone();
        for v in succ[u].iter() {
            reach.union_with(&after[v]);
        }
        after[u] = reach;
    }
    Ok(PrecedenceDag {
        types,
        succ,
        pred,
        after,
        topo,
    })
}

impl PrecedenceDag {
    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn types(&self) -> &[SubsetMask] {
        &self.types
    }

    fn index(&self, kind: SubsetMask) -> Option<usize> {
        self.types.binary_search(&kind).ok()
    }

    /// Immediate-precedence arcs as type pairs, sorted.
    pub fn arcs(&self) -> Vec<(SubsetMask, SubsetMask)> {
        let mut out: Vec<_> = (0..self.len())
            .flat_map(|u| self.succ[u].iter().map(move |v| (u, v)))
            .map(|(u, v)| (self.types[u], self.types[v]))
            .collect();
        out.sort_unstable();
        out
    }

    /// Strict precedence `a ≺ b` between the cubes of the given types.
    pub fn precedes(&self, a: SubsetMask, b: SubsetMask) -> bool {
        match (self.index(a), self.index(b)) {
            (Some(u), Some(v)) => self.after[u].contains(v),
            _ => false,
        }
    }

    pub fn immediately_precedes(&self, a: SubsetMask, b: SubsetMask) -> bool {
        match (self.index(a), self.index(b)) {
            (Some(u), Some(v)) => self.succ[u].contains(v),
            _ => false,
        }
    }

    /// Cube indices in a linear extension.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    /// Every order ideal (down-closed cube set), lazily. The empty ideal
    /// comes first and the full one last.
    pub fn ideals(&self) -> impl Iterator<Item = Bits> + '_ {
        let len = self.len();
        let mut stack = vec![(0usize, Bits::new(len))];
        std::iter::from_fn(move || {
            while let Some((pos, ideal)) = stack.pop() {
                if pos == len {
                    return Some(ideal);
                }
                let v = self.topo[pos];
                if self.pred[v].is_subset(&ideal) {
                    let mut with = ideal.clone();
                    with.insert(v);
                    stack.push((pos + 1, with));
                }
                stack.push((pos + 1, ideal));
            }
            None
        })
    }
}
