use serde::Serialize;

use crate::error::{Error, Result};
use crate::setcalc::{Collection, SubsetMask};

/// Outcome of an r-separation test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationReport {
    pub r: usize,
    pub ok: bool,
    /// First pair that fails, in canonical order.
    pub violating_pair: Option<(SubsetMask, SubsetMask)>,
    /// Increasing elements `i_0 < ... < i_{r+1}` alternating between the two
    /// set differences. Present exactly when `ok` is false.
    pub witness_chain: Option<Vec<usize>>,
}

impl SeparationReport {
    fn pass(r: usize) -> Self {
        SeparationReport {
            r,
            ok: true,
            violating_pair: None,
            witness_chain: None,
        }
    }
}

#[derive(Serialize)]
struct ReportJson {
    r: usize,
    ok: bool,
    violating_pair: Option<[Vec<usize>; 2]>,
    witness_chain: Option<Vec<usize>>,
}

impl Serialize for SeparationReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ReportJson {
            r: self.r,
            ok: self.ok,
            violating_pair: self.violating_pair.map(|(a, b)| [a.to_vec(), b.to_vec()]),
            witness_chain: self.witness_chain.clone(),
        }
        .serialize(s)
    }
}

/// Number of maximal same-side runs in the sorted symmetric difference.
#[inline]
pub(crate) fn blocks(a: u32, b: u32) -> u32 {
    let sym = a ^ b;
    if sym == 0 {
        return 0;
    }
    // A new run starts wherever the side flips between consecutive elements.
    let side = a & sym;
    let mut rest = sym;
    let mut count = 0;
    let mut prev = u32::MAX;
    while rest != 0 {
        let i = rest.trailing_zeros();
        let s = (side >> i) & 1;
        if s != prev {
            count += 1;
            prev = s;
        }
        rest &= rest - 1;
    }
    count
}

#[inline]
pub(crate) fn separated_bits(a: u32, b: u32, r: usize) -> bool {
    blocks(a, b) as usize <= r + 1
}

/// Counts the maximal runs of same-side elements when `A △ B` is listed
/// increasingly and each element is labeled `A − B` or `B − A`.
///
/// `A` and `B` are r-separated exactly when the count is at most `r + 1`.
pub fn alternation_blocks(a: SubsetMask, b: SubsetMask) -> Result<usize> {
    same_ground(a, b)?;
    Ok(blocks(a.bits(), b.bits()) as usize)
}

/// Decides r-separation of two sets; on failure, the witness chain takes the
/// smallest element of each of the first `r + 2` runs.
pub fn is_r_separated(a: SubsetMask, b: SubsetMask, r: usize) -> Result<SeparationReport> {
    same_ground(a, b)?;
    if separated_bits(a.bits(), b.bits(), r) {
        return Ok(SeparationReport::pass(r));
    }
    Ok(SeparationReport {
        r,
        ok: false,
        violating_pair: Some((a, b)),
        witness_chain: Some(witness(a.bits(), b.bits(), r + 2)),
    })
}

fn witness(a: u32, b: u32, len: usize) -> Vec<usize> {
    let sym = a ^ b;
    let side = a & sym;
    let mut rest = sym;
    let mut prev = u32::MAX;
    let mut out = Vec::with_capacity(len);
    while rest != 0 && out.len() < len {
        let i = rest.trailing_zeros();
        let s = (side >> i) & 1;
        if s != prev {
            out.push(i as usize + 1);
            prev = s;
        }
        rest &= rest - 1;
    }
    out
}

/// Checks all unordered pairs; reports the first failing pair in canonical
/// order.
pub fn is_r_separated_collection(c: &Collection, r: usize) -> SeparationReport {
    let m = c.members();
    for (i, &a) in m.iter().enumerate() {
        for &b in &m[i + 1..] {
            if !separated_bits(a.bits(), b.bits(), r) {
                return SeparationReport {
                    r,
                    ok: false,
                    violating_pair: Some((a, b)),
                    witness_chain: Some(witness(a.bits(), b.bits(), r + 2)),
                };
            }
        }
    }
    SeparationReport::pass(r)
}

/// Checks that `x` is r-separated from every member of `c`.
pub fn separated_from_all(x: SubsetMask, c: &Collection, r: usize) -> bool {
    c.iter().all(|y| separated_bits(x.bits(), y.bits(), r))
}

fn same_ground(a: SubsetMask, b: SubsetMask) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::GroundSetMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, t: &str) -> SubsetMask {
        SubsetMask::parse(n, t).unwrap()
    }

    /// Direct reading of the definition: search every increasing sequence of
    /// r+2 elements for one that alternates between A−B and B−A.
    fn brute_separated(a: SubsetMask, b: SubsetMask, r: usize) -> bool {
        let n = a.n();
        let amb = a.difference(b);
        let bma = b.difference(a);
        fn search(
            start: usize,
            n: usize,
            left: usize,
            want_a: bool,
            amb: SubsetMask,
            bma: SubsetMask,
        ) -> bool {
            if left == 0 {
                return true;
            }
            (start..=n).any(|i| {
                let ok = if want_a { amb.contains(i) } else { bma.contains(i) };
                ok && search(i + 1, n, left - 1, !want_a, amb, bma)
            })
        }
        !(search(1, n, r + 2, true, amb, bma) || search(1, n, r + 2, false, amb, bma))
    }

    #[test]
    fn block_examples() {
        assert_eq!(alternation_blocks(s(6, "24"), s(6, "35")).unwrap(), 4);
        assert_eq!(alternation_blocks(s(6, "24"), s(6, "135")).unwrap(), 5);
        assert_eq!(alternation_blocks(s(6, "246"), s(6, "246")).unwrap(), 0);
        assert!(matches!(
            alternation_blocks(s(5, "1"), s(6, "1")),
            Err(Error::GroundSetMismatch { .. })
        ));
    }

    #[test]
    fn minimal_alternating_triple() {
        let rep = is_r_separated(s(3, "13"), s(3, "2"), 1).unwrap();
        assert!(!rep.ok);
        assert_eq!(rep.witness_chain, Some(vec![1, 2, 3]));
    }

    #[test]
    fn triple_members_pairwise_separated() {
        assert!(is_r_separated(s(6, "24"), s(6, "1346"), 3).unwrap().ok);
        let c = Collection::parse(6, "24,35,1346").unwrap();
        assert!(is_r_separated_collection(&c, 3).ok);
        let bad = Collection::parse(6, "24,136").unwrap();
        let rep = is_r_separated_collection(&bad, 3);
        assert!(!rep.ok);
        assert_eq!(rep.witness_chain.as_ref().unwrap().len(), 5);
        assert!(is_r_separated_collection(&Collection::empty(6).unwrap(), 3).ok);
    }

    #[test]
    fn witness_chain_alternates() {
        for a in SubsetMask::all(6).unwrap() {
            for b in SubsetMask::all(6).unwrap() {
                for r in 1..=4 {
                    let rep = is_r_separated(a, b, r).unwrap();
                    if let Some(chain) = rep.witness_chain {
                        assert_eq!(chain.len(), r + 2);
                        assert!(chain.windows(2).all(|w| w[0] < w[1]));
                        for (k, &e) in chain.iter().enumerate() {
                            let first_in_a = a.contains(chain[0]) && !b.contains(chain[0]);
                            let want_a = (k % 2 == 0) == first_in_a;
                            assert_eq!(a.contains(e) && !b.contains(e), want_a);
                            assert_eq!(b.contains(e) && !a.contains(e), !want_a);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn agrees_with_sequence_search() {
        for n in 1..=6 {
            for a in SubsetMask::all(n).unwrap() {
                for b in SubsetMask::all(n).unwrap() {
                    for r in 1..=4 {
                        assert_eq!(
                            is_r_separated(a, b, r).unwrap().ok,
                            brute_separated(a, b, r),
                            "{a:?} {b:?} r={r}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn symmetric_and_monotone() {
        for n in 1..=5 {
            for a in SubsetMask::all(n).unwrap() {
                for b in SubsetMask::all(n).unwrap() {
                    let ab = alternation_blocks(a, b).unwrap();
                    assert_eq!(ab, alternation_blocks(b, a).unwrap());
                    for r in 1..n {
                        if is_r_separated(a, b, r).unwrap().ok {
                            assert!(is_r_separated(a, b, r + 1).unwrap().ok);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn small_symmetric_difference_is_separated() {
        for a in SubsetMask::all(6).unwrap() {
            for b in SubsetMask::all(6).unwrap() {
                let sym = a.bits() ^ b.bits();
                for r in 1..=4 {
                    if sym.count_ones() as usize <= r + 1 {
                        assert!(is_r_separated(a, b, r).unwrap().ok);
                    }
                }
            }
        }
    }
}
