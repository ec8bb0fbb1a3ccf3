use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::MAX_GROUND;

/// A subset of the ground set `[n] = {1, ..., n}`.
///
/// Element `i` is stored at bit `i - 1`. The ground-set size travels with the
/// mask so that sets over different ground sets are never mixed silently.
///
/// Subsets order canonically by cardinality, then by mask value.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubsetMask {
    n: u8,
    bits: u32,
}

impl SubsetMask {
    pub fn new(n: usize, bits: u32) -> Result<Self> {
        check_ground(n)?;
        if n < 32 && bits >> n != 0 {
            let stray = 32 - bits.leading_zeros() as usize;
            return Err(Error::ElementOutOfRange { element: stray, n });
        }
        Ok(SubsetMask { n: n as u8, bits })
    }

    pub(crate) fn from_bits_unchecked(n: usize, bits: u32) -> Self {
        debug_assert!(n <= MAX_GROUND && (n >= 32 || bits >> n == 0));
        SubsetMask { n: n as u8, bits }
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, 0)
    }

    pub fn full(n: usize) -> Result<Self> {
        check_ground(n)?;
        Ok(SubsetMask {
            n: n as u8,
            bits: full_bits(n),
        })
    }

    /// Builds a subset from 1-based elements, in any order.
    pub fn from_elements(n: usize, elements: &[usize]) -> Result<Self> {
        check_ground(n)?;
        let mut bits = 0u32;
        for &e in elements {
            if e == 0 || e > n {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
            bits |= 1 << (e - 1);
        }
        Ok(SubsetMask { n: n as u8, bits })
    }

    /// Parses the compact digit notation (`"24"`, `"1346"`) for `n <= 9`, or
    /// a bracketed list (`"[2,4]"`, `"{10,11}"`). `∅`, `{}` and `[]` are empty.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "∅" {
            return Self::empty(n);
        }
        let inner = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .or_else(|| t.strip_prefix('{').and_then(|s| s.strip_suffix('}')));
        if let Some(inner) = inner {
            let elems = inner
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad element `{s}` in `{text}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            return Self::from_elements(n, &elems);
        }
        if n > 9 {
            return Err(Error::Parse(format!(
                "digit-string set `{text}` is ambiguous for n={n}; use [a,b,...]"
            )));
        }
        let elems = t
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .filter(|&d| d > 0)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::Parse(format!("bad set literal `{text}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_elements(n, &elems)
    }

    #[inline]
    pub fn n(self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(self, element: usize) -> bool {
        element >= 1 && element <= self.n() && self.bits & (1 << (element - 1)) != 0
    }

    /// Ascending 1-based elements.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(b + 1)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.elements().collect()
    }

    pub fn with(self, element: usize) -> Self {
        debug_assert!(element >= 1 && element <= self.n());
        SubsetMask {
            n: self.n,
            bits: self.bits | 1 << (element - 1),
        }
    }

    pub fn without(self, element: usize) -> Self {
        debug_assert!(element >= 1 && element <= self.n());
        SubsetMask {
            n: self.n,
            bits: self.bits & !(1 << (element - 1)),
        }
    }

    pub fn union(self, other: Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        SubsetMask {
            n: self.n,
            bits: self.bits | other.bits,
        }
    }

    pub fn intersection(self, other: Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        SubsetMask {
            n: self.n,
            bits: self.bits & other.bits,
        }
    }

    pub fn difference(self, other: Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        SubsetMask {
            n: self.n,
            bits: self.bits & !other.bits,
        }
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.bits & other.bits == 0
    }

    /// Number of maximal runs of consecutive elements (the piece count of a
    /// cortege). The empty set has zero pieces.
    pub fn pieces(self) -> usize {
        (self.bits & !(self.bits << 1)).count_ones() as usize
    }

    /// Reinterprets the set over a different ground set.
    pub fn regrounded(self, n: usize) -> Result<Self> {
        Self::new(n, self.bits)
    }

    /// Deletes element `i` and shifts larger elements down by one.
    pub fn delete_element(self, i: usize) -> Self {
        debug_assert!(i >= 1 && i <= self.n());
        let low = self.bits & ((1u32 << (i - 1)) - 1);
        let high = (self.bits >> i) << (i - 1);
        SubsetMask {
            n: self.n - 1,
            bits: low | high,
        }
    }

    /// All subsets of this set, ascending by mask value.
    pub fn subsets(self) -> impl Iterator<Item = SubsetMask> {
        let n = self.n;
        let full = self.bits;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(SubsetMask { n, bits: cur })
        })
    }

    /// Every subset of `[n]`, in mask order.
    pub fn all(n: usize) -> Result<impl Iterator<Item = SubsetMask>> {
        check_ground(n)?;
        if n > 24 {
            return Err(Error::AuditTooLarge {
                what: format!("power set of [{n}]"),
                detail: "power-set iteration is limited to n <= 24".into(),
            });
        }
        Ok((0..1u32 << n).map(move |bits| SubsetMask { n: n as u8, bits }))
    }

    /// All `k`-element subsets of `[n]`, in canonical order.
    pub fn k_subsets(n: usize, k: usize) -> Result<Vec<SubsetMask>> {
        check_ground(n)?;
        if k > n {
            return Err(Error::DimensionOutOfRange { n, d: k });
        }
        let mut out = Vec::new();
        if k == 0 {
            out.push(SubsetMask { n: n as u8, bits: 0 });
            return Ok(out);
        }
        // Gosper's hack walks k-subsets in increasing mask order.
        let mut x: u64 = (1u64 << k) - 1;
        let limit = 1u64 << n;
        while x < limit {
            out.push(SubsetMask {
                n: n as u8,
                bits: x as u32,
            });
            let c = x & x.wrapping_neg();
            let r = x + c;
            x = (((r ^ x) >> 2) / c) | r;
        }
        Ok(out)
    }
}

pub(crate) fn full_bits(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

pub(crate) fn check_ground(n: usize) -> Result<()> {
    if n == 0 || n > MAX_GROUND {
        return Err(Error::GroundSetTooLarge(n));
    }
    Ok(())
}

impl Ord for SubsetMask {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.len().cmp(&other.len()))
            .then(self.bits.cmp(&other.bits))
    }
}

impl PartialOrd for SubsetMask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        if self.n <= 9 {
            for e in self.elements() {
                write!(f, "{e}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.elements().map(|e| e.to_string()).collect();
            write!(f, "{{{}}}", parts.join(","))
        }
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}/{}", self.n)
    }
}
