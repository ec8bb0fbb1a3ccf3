//! The reproduction suite behind `verify-paper`.
//!
//! Each check recomputes one published result exhaustively (or on a seeded
//! sample) and carries its own runtime bound. A check passes only when its
//! verdict is right and it finished within the bound.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use zonoforge::cubillage::{self, Cubillage};
use zonoforge::extendability::{self, CertificateKind};
use zonoforge::membrane::{self, Membrane, PacketOrder};
use zonoforge::setcalc::{self, Collection, SubsetMask};
use zonoforge::{AuditCaps, Error};

use crate::sampling;

/// The sets of `[6]` outside `Spec(Z(6,4))`, in cyclic order.
pub const EXCLUDED_6_4: &str = "24,245,25,235,35,135,1356,136,1346,146,1246,246";

/// A 3-separated triple that is not `(6,4)`-extendable.
pub const TRIPLE_6_4: &str = "24,35,1346";

/// Seed for every sampled check.
pub const SEED: u64 = 0x5eed_2019;

#[derive(Debug)]
pub struct Fail(pub String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(e.to_string())
    }
}

type Verdict = Result<String, Fail>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), Fail> {
    if cond {
        Ok(())
    } else {
        Err(Fail(msg()))
    }
}

pub struct Check {
    pub id: u8,
    pub name: &'static str,
    pub bound: Duration,
    pub run: fn(&AuditCaps) -> Verdict,
}

pub fn checks() -> Vec<Check> {
    let secs = Duration::from_secs;
    vec![
        Check { id: 1, name: "purity-6-4", bound: secs(1), run: purity_6_4 },
        Check { id: 2, name: "purity-positive", bound: secs(300), run: purity_positive },
        Check { id: 3, name: "triple-not-extendable", bound: secs(60), run: triple_not_extendable },
        Check { id: 4, name: "spectrum-law", bound: secs(60), run: spectrum_law },
        Check { id: 5, name: "contraction-expansion", bound: secs(300), run: contraction_expansion },
        Check { id: 6, name: "inversion-oracles", bound: secs(120), run: inversion_oracles },
        Check { id: 7, name: "packet-dichotomy", bound: secs(120), run: packet_dichotomy },
        Check { id: 8, name: "nested-membranes", bound: secs(120), run: nested_membranes },
        Check { id: 9, name: "extendability-lemmas", bound: secs(300), run: extendability_lemmas },
        Check { id: 10, name: "precedence-contraction", bound: secs(60), run: precedence_contraction },
    ]
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub within_bound: bool,
    pub seconds: f64,
    pub bound_seconds: f64,
    pub detail: String,
}

impl CheckResult {
    pub fn ok(&self) -> bool {
        self.passed && self.within_bound
    }

    /// One line: status, id, name, timing and detail.
    pub fn line(&self) -> String {
        let status = if self.ok() { "PASS" } else { "FAIL" };
        let late = if self.within_bound { "" } else { " (over bound)" };
        format!(
            "{status} {:>2} {:<24} {:>8.3}s / {:>4}s{late}  {}",
            self.id, self.name, self.seconds, self.bound_seconds, self.detail
        )
    }
}

pub fn run_check(check: &Check, caps: &AuditCaps) -> CheckResult {
    let start = Instant::now();
    let verdict = (check.run)(caps);
    let elapsed = start.elapsed();
    let (passed, detail) = match verdict {
        Ok(d) => (true, d),
        Err(Fail(d)) => (false, d),
    };
    CheckResult {
        id: check.id,
        name: check.name,
        passed,
        within_bound: elapsed < check.bound,
        seconds: elapsed.as_secs_f64(),
        bound_seconds: check.bound.as_secs_f64(),
        detail,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.passed
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = writeln!(out, "{}", c.line());
        }
        out
    }
}

/// Checks selected by `only` (ids, names or name prefixes); all when empty.
pub fn select(only: &[String]) -> Result<Vec<Check>, String> {
    let all = checks();
    if only.is_empty() {
        return Ok(all);
    }
    for key in only {
        if !all.iter().any(|c| matches(c, key)) {
            let names: Vec<_> = all.iter().map(|c| c.name).collect();
            return Err(format!("unknown check `{key}`; known: {}", names.join(", ")));
        }
    }
    Ok(all.into_iter().filter(|c| only.iter().any(|k| matches(c, k))).collect())
}

fn matches(c: &Check, key: &str) -> bool {
    key.parse::<u8>().is_ok_and(|id| id == c.id) || c.name.starts_with(key)
}

pub fn run_suite(only: &[String], caps: &AuditCaps) -> Result<Report, String> {
    let checks: Vec<CheckResult> = select(only)?.iter().map(|c| run_check(c, caps)).collect();
    Ok(Report {
        passed: checks.iter().all(CheckResult::ok),
        checks,
    })
}

fn all_cubillages(n: usize, d: usize, caps: &AuditCaps) -> Result<Vec<Cubillage>, Fail> {
    Ok(cubillage::enumerate(n, d, caps)?.collect::<zonoforge::Result<Vec<_>>>()?)
}

fn purity_6_4(caps: &AuditCaps) -> Verdict {
    let p = setcalc::is_pure(6, 4, caps)?;
    ensure(!p.pure, || "(6,4) reported pure".into())?;
    let witness = p.witness.clone().ok_or_else(|| Fail("no witness".into()))?;
    ensure(witness.len() == 55, || format!("witness has {} sets", witness.len()))?;
    ensure(p.max_size == 57, || format!("max size {}", p.max_size))?;

    let universal = setcalc::universal_sets(6, 4)?;
    ensure(universal.len() == 52, || format!("{} universal sets", universal.len()))?;
    ensure(universal.is_subset(&witness), || "witness misses universal sets".into())?;
    let excluded: Vec<SubsetMask> = SubsetMask::all(6)?.filter(|x| !universal.contains(*x)).collect();
    let expected = Collection::parse(6, EXCLUDED_6_4)?;
    ensure(excluded == expected.members(), || format!("excluded sets differ: {excluded:?}"))?;

    let cert = extendability::Certificate::from_purity(&p).ok_or_else(|| Fail("no certificate".into()))?;
    let replay = extendability::replay(&cert, caps)?;
    ensure(replay.valid, || format!("witness replay: {}", replay.detail))?;

    // the explicit collection: universal sets plus every fourth excluded set
    let triple = Collection::parse(6, TRIPLE_6_4)?;
    let explicit = universal.union(&triple)?;
    ensure(setcalc::is_r_separated_collection(&explicit, 3).ok, || "explicit collection not 3-separated".into())?;
    let grows = expected
        .iter()
        .filter(|x| !explicit.contains(*x))
        .find(|&x| setcalc::separated_from_all(x, &explicit, 3));
    ensure(grows.is_none(), || format!("explicit collection grows by {}", grows.unwrap()))?;
    Ok(format!(
        "maximal collection of size 55 < 57; 52 universal sets, 12 excluded; {} maximal collections",
        p.collection_count()
    ))
}

pub const PURE_CASES: [(usize, usize); 10] =
    [(4, 2), (5, 2), (6, 2), (7, 2), (4, 3), (5, 3), (6, 3), (5, 4), (6, 5), (7, 6)];

fn purity_positive(caps: &AuditCaps) -> Verdict {
    let mut counts = Vec::new();
    for (n, d) in PURE_CASES {
        let p = setcalc::is_pure(n, d, caps)?;
        ensure(p.pure, || format!("({n},{d}) reported non-pure"))?;
        ensure(p.max_size == setcalc::max_size(n, d)?, || format!("({n},{d}) max size {}", p.max_size))?;
        counts.push(format!("({n},{d}):{}", p.collection_count()));
    }
    Ok(format!("all pure; collections {}", counts.join(" ")))
}

fn triple_not_extendable(caps: &AuditCaps) -> Verdict {
    let mut nodes = Vec::new();
    for n in [6, 7] {
        let a = Collection::parse(n, TRIPLE_6_4)?;
        let cert = extendability::is_extendable(&a, n, 4, caps)?;
        ensure(cert.kind == CertificateKind::ExhaustedNoExtension, || {
            format!("({n},4): {:?}", cert.kind)
        })?;
        if cert.refutation.is_some() {
            let replay = extendability::replay(&cert, caps)?;
            ensure(replay.valid, || format!("({n},4) replay: {}", replay.detail))?;
        }
        nodes.push(format!("({n},4) {} nodes", cert.stats.nodes_visited));
    }
    Ok(format!("exhausted at {}", nodes.join(", ")))
}

fn spectrum_law(caps: &AuditCaps) -> Verdict {
    let mut seen = Vec::new();
    for (n, d) in [(4, 2), (5, 2), (4, 3), (5, 3)] {
        let size = setcalc::max_size(n, d)?;
        let types = SubsetMask::k_subsets(n, d)?;
        let all = all_cubillages(n, d, caps)?;
        if let Some(p) = cubillage::predicted_count(n, d) {
            ensure(all.len() as u128 == p, || format!("({n},{d}): {} cubillages, expected {p}", all.len()))?;
        }
        for q in &all {
            let spec = q.spectrum()?;
            ensure(spec.len() as u64 == size, || format!("{q:?}: spectrum size {}", spec.len()))?;
            let got: Vec<SubsetMask> = q.cubes().iter().map(|c| c.kind()).collect();
            ensure(got == types, || format!("{q:?}: cube types differ"))?;
            ensure(cubillage::from_spectrum(&spec, d)? == *q, || format!("{q:?}: round trip differs"))?;
        }
        seen.push(format!("({n},{d}):{}", all.len()));
    }
    Ok(format!("cubillages {}", seen.join(" ")))
}

fn contraction_expansion(caps: &AuditCaps) -> Verdict {
    let mut notes = Vec::new();
    for (n, d) in [(4, 2), (4, 3)] {
        let mut expansions: HashSet<Cubillage> = HashSet::new();
        let mut pairs = 0usize;
        for small in all_cubillages(n, d, caps)? {
            for m in membrane::membranes_of(&small)? {
                pairs += 1;
                let big = cubillage::expand(&small, &m)?;
                let back = cubillage::contract(&big, n + 1)?;
                ensure(back.cubillage == small, || format!("contract(expand) differs for {m}"))?;
                ensure(back.index_map == (1..=n).collect::<Vec<_>>(), || "index map is not the identity".into())?;
                expansions.insert(big);
            }
        }
        ensure(expansions.len() == pairs, || format!("({n},{d}): expansions are not distinct"))?;
        let targets: HashSet<Cubillage> = all_cubillages(n + 1, d, caps)?.into_iter().collect();
        ensure(targets == expansions, || {
            format!("({},{d}): {} cubillages, {} expansions", n + 1, targets.len(), pairs)
        })?;
        notes.push(format!("({n},{d}) {pairs} pairs"));
    }
    for n in 3..=5 {
        let count = all_cubillages(n, 2, caps)?.len();
        let census = setcalc::is_pure(n, 2, caps)?.collection_count();
        ensure(count == census, || format!("({n},2): {count} cubillages, census {census}"))?;
        notes.push(format!("({n},2) {count} = census"));
    }
    Ok(notes.join("; "))
}

/// Classical inversions of the permutation read along a membrane of a
/// two-dimensional cubillage: pairs `{i < j}` with `j` crossed first.
pub fn classical_inversions(m: &Membrane) -> Result<Vec<SubsetMask>, Fail> {
    let line = m.project()?;
    let mut segments: Vec<_> = line.cubes().to_vec();
    segments.sort_by_key(|c| c.bottom().len());
    let word: Vec<usize> = segments.iter().map(|c| c.kind().to_vec()[0]).collect();
    let mut out = Vec::new();
    for (a, &x) in word.iter().enumerate() {
        for &y in &word[a + 1..] {
            if x > y {
                out.push(SubsetMask::from_elements(m.n(), &[y, x])?);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

fn inversion_oracles(caps: &AuditCaps) -> Verdict {
    let convention = membrane::parity_convention();
    let mut total = 0usize;
    for (n, d) in [(4, 2), (5, 3)] {
        for q in all_cubillages(n, d, caps)? {
            for m in membrane::membranes_of(&q)? {
                let geo = membrane::inversions_geometric(&q, &m)?;
                let spec = membrane::inversions_spectral(&m.spectrum(), d)?;
                ensure(geo == spec, || format!("{m}: geometric {:?} vs spectral {:?}", geo.members, spec.members))?;
                if d == 2 {
                    let classical = classical_inversions(&m)?;
                    ensure(geo.members == classical, || format!("{m}: not the classical inversions"))?;
                }
                total += 1;
            }
        }
    }
    Ok(format!("{total} membranes agree under the {convention} convention"))
}

fn packet_dichotomy(caps: &AuditCaps) -> Verdict {
    let (n, d) = (5, 3);
    let mut distinct: HashSet<Vec<zonoforge::Cube>> = HashSet::new();
    let mut tested = 0usize;
    let ks = SubsetMask::k_subsets(n, d)?;
    for q in all_cubillages(n, d, caps)? {
        for m in membrane::membranes_of(&q)? {
            if !distinct.insert(m.facets().to_vec()) {
                continue;
            }
            let inv = membrane::inversions_geometric(&q, &m)?;
            let below = m.project()?;
            let dag = cubillage::precedence(&below)?;
            for &k in &ks {
                let order = membrane::packet_order_in(&below, &dag, k)?;
                ensure((order == PacketOrder::Lex) == !inv.contains(k), || {
                    format!("{m}: packet of {k} is {order:?}, inversive: {}", inv.contains(k))
                })?;
                tested += 1;
            }
        }
    }
    Ok(format!("{} membranes, {tested} packets", distinct.len()))
}

fn ideal_of(m: &Membrane) -> BTreeSet<SubsetMask> {
    m.ideal().unwrap_or_default().iter().copied().collect()
}

fn check_chain(q: &Cubillage, chain: &[&Membrane]) -> Result<(), Fail> {
    let owned: Vec<Membrane> = chain.iter().map(|&m| m.clone()).collect();
    let report = membrane::nested_inversions_separated(q, &owned)?;
    ensure(report.ok, || {
        format!("union of {} nested membranes is not separated: {:?}", chain.len(), report.violating_pair)
    })
}

fn nested_membranes(caps: &AuditCaps) -> Verdict {
    let mut exhaustive = 0usize;
    for q in all_cubillages(4, 2, caps)? {
        let ms = membrane::membranes_of(&q)?;
        let ideals: Vec<BTreeSet<SubsetMask>> = ms.iter().map(ideal_of).collect();
        let below = |a: usize, b: usize| ideals[a].is_subset(&ideals[b]) && ideals[a] != ideals[b];
        for a in 0..ms.len() {
            check_chain(&q, &[&ms[a]])?;
            exhaustive += 1;
            for b in (0..ms.len()).filter(|&b| below(a, b)) {
                check_chain(&q, &[&ms[a], &ms[b]])?;
                exhaustive += 1;
                for c in (0..ms.len()).filter(|&c| below(b, c)) {
                    check_chain(&q, &[&ms[a], &ms[b], &ms[c]])?;
                    exhaustive += 1;
                }
            }
        }
    }

    let hosts: Vec<(Cubillage, Vec<Membrane>)> = all_cubillages(5, 3, caps)?
        .into_iter()
        .map(|q| {
            let ms = membrane::membranes_of(&q)?;
            Ok((q, ms))
        })
        .collect::<Result<_, Fail>>()?;
    let mut rng = sampling::rng(SEED);
    let mut lengths = [0usize; 5];
    for _ in 0..1000 {
        let (q, ms) = hosts.choose(&mut rng).expect("hosts");
        let want = rng.gen_range(2..=4);
        let mut order: Vec<&Membrane> = ms.iter().collect();
        order.shuffle(&mut rng);
        let mut chain: Vec<&Membrane> = Vec::new();
        for m in order {
            if chain.len() == want {
                break;
            }
            let i = ideal_of(m);
            let comparable = chain.iter().all(|c| {
                let j = ideal_of(c);
                i != j && (i.is_subset(&j) || j.is_subset(&i))
            });
            if comparable {
                chain.push(m);
            }
        }
        chain.sort_by_key(|m| m.ideal().map_or(0, <[_]>::len));
        lengths[chain.len()] += 1;
        check_chain(q, &chain)?;
    }
    Ok(format!(
        "{exhaustive} chains at (4,2); 1000 sampled at (5,3) with lengths 1..4: {:?}",
        &lengths[1..]
    ))
}

fn extendability_lemmas(caps: &AuditCaps) -> Verdict {
    let mut rng = sampling::rng(SEED);
    let mut ground_ext = 0usize;
    for _ in 0..200 {
        let a = sampling::random_separated(&mut rng, 4, 1, setcalc::max_size(4, 2)? as usize);
        let check = extendability::check_lemma_ground_growth(&a, 4, 2, caps)?;
        ensure(check.agree(), || format!("ground growth disagrees on {a:?}: {check:?}"))?;
        ground_ext += usize::from(check.before);
    }
    let mut diag_ext = 0usize;
    for _ in 0..200 {
        let a = sampling::random_separated(&mut rng, 5, 2, setcalc::max_size(5, 3)? as usize);
        let check = extendability::check_lemma_diag_growth(&a, 5, 3, caps)?;
        ensure(check.agree(), || format!("diagonal growth disagrees on {a:?}: {check:?}"))?;
        diag_ext += usize::from(check.before);
    }

    let cube = Collection::new(3, SubsetMask::full(3)?.subsets())?;
    let mut instances = 0usize;
    for n in 4..=PROP_BD_MAX_GROUND {
        let tail: Vec<usize> = (4..=n).collect();
        for size in 0..=tail.len().min(2) {
            for dset in SubsetMask::k_subsets(tail.len(), size)? {
                let elements: Vec<usize> = dset.elements().map(|e| tail[e - 1]).collect();
                let dset = SubsetMask::from_elements(n, &elements)?;
                let ok = extendability::check_prop_bd(3, &cube, dset, caps)?;
                ensure(ok, || format!("cube on [3] with D = {dset} is not ({n},{})-extendable", size + 3))?;
                instances += 1;
            }
        }
    }
    Ok(format!(
        "200 + 200 samples agree ({ground_ext} and {diag_ext} extendable); {instances} cube instances extendable"
    ))
}

/// Largest ground set for the cube instances of the extendability check.
pub const PROP_BD_MAX_GROUND: usize = 7;

fn precedence_contraction(caps: &AuditCaps) -> Verdict {
    let mut arcs = 0usize;
    for (n, d) in [(4, 2), (4, 3)] {
        for q in all_cubillages(n, d, caps)? {
            let dag = cubillage::precedence(&q)?;
            for i in 1..=n {
                let c = cubillage::contract(&q, i)?;
                let small = cubillage::precedence(&c.cubillage)?;
                let lift = |k: SubsetMask| {
                    let e: Vec<usize> = k.elements().map(|j| c.index_map[j - 1]).collect();
                    SubsetMask::from_elements(n, &e)
                };
                for (a, b) in small.arcs() {
                    let (la, lb) = (lift(a)?, lift(b)?);
                    ensure(dag.precedes(la, lb), || format!("{la} does not precede {lb} after {i}-contraction"))?;
                    arcs += 1;
                }
            }
        }
    }
    Ok(format!("{arcs} contracted arcs preserved"))
}
