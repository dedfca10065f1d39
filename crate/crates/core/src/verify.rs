//! Batch verification of the structural claims over a corpus.
//!
//! Every check yields a [`Verdict`]; a violated claim is recorded as a
//! failure and never aborts the run. Checks that need a cyclic factorization
//! are skipped on groups without one.

use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::corpus::{corpus_hash, CatalogEntry, CorpusConfig, Status, Verdict};
use crate::elemset::ElementSet;
use crate::error::{Error, Result};
use crate::factor::{self, Factorization};
use crate::group::{FiniteGroup, Limits};
use crate::lattice::{all_subgroups, SubgroupLattice};
use crate::structure::{self, SupersolubilityChecker};
use crate::subgroup;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    /// The ten clauses of the decomposition `G = (S × T) ⋊ H`.
    Theorem1,
    /// Prüfer rank at most 3.
    Rank3,
    /// Rank at most 2 for odd `p`-groups and at most 3 for 2-groups.
    PgroupRank,
    /// `A_πB_π` is a Hall π-subgroup and smaller Sylow subgroups normalize
    /// larger ones.
    SylowTower,
    /// In `p`-groups every subgroup of `A` permutes with every subgroup of
    /// `B`.
    Permutability,
    /// The basis normalizer equals `A*B*`.
    Lemma26,
    /// Hall subgroups of soluble groups have rank at most one more than
    /// their Sylow subgroups.
    Lemma27,
    /// Products of pairwise permutable cyclic subgroups are supersoluble.
    Supersoluble,
    /// Groups with a cyclic factorization are metabelian with `R ⊆ G'`.
    Metabelian,
    /// The largest-prime Sylow product is normal with the complementary
    /// product as complement.
    Lemma51,
}

impl Check {
    pub const ALL: [Check; 10] = [
        Check::Theorem1,
        Check::Rank3,
        Check::PgroupRank,
        Check::SylowTower,
        Check::Permutability,
        Check::Lemma26,
        Check::Lemma27,
        Check::Supersoluble,
        Check::Metabelian,
        Check::Lemma51,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Theorem1 => "theorem1",
            Check::Rank3 => "rank3",
            Check::PgroupRank => "pgroupRank",
            Check::SylowTower => "sylowTower",
            Check::Permutability => "permutability",
            Check::Lemma26 => "lemma26",
            Check::Lemma27 => "lemma27",
            Check::Supersoluble => "supersoluble",
            Check::Metabelian => "metabelian",
            Check::Lemma51 => "lemma51",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown check {s:?}")))
    }
}

/// Parses a comma-separated list of check names.
pub fn parse_checks(list: &str) -> Result<Vec<Check>> {
    let mut out: Vec<Check> = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EntryReport {
    pub name: String,
    pub order: usize,
    pub factorizations: usize,
    pub multi_products: usize,
    pub three_factor_products: usize,
    /// Present when a check needed the subgroup lattice.
    pub prufer_rank: Option<u32>,
    pub results: BTreeMap<String, Verdict>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub corpus_hash: String,
    pub checks: Vec<String>,
    pub entries: Vec<EntryReport>,
    pub summary: Summary,
}

impl VerificationReport {
    /// Copy with every timing zeroed, for comparing runs.
    pub fn without_timings(&self) -> Self {
        let mut r = self.clone();
        for e in &mut r.entries {
            for v in e.results.values_mut() {
                v.elapsed_micros = 0;
            }
        }
        r
    }

    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    /// Entries with at least one failed check, with the failing names.
    pub fn failures(&self) -> Vec<(&str, Vec<&str>)> {
        self.entries
            .iter()
            .filter_map(|e| {
                let bad: Vec<&str> = e
                    .results
                    .iter()
                    .filter(|(_, v)| v.status == Status::Fail)
                    .map(|(k, _)| k.as_str())
                    .collect();
                (!bad.is_empty()).then_some((e.name.as_str(), bad))
            })
            .collect()
    }
}

/// Runs `checks` on every entry with `jobs` worker threads (0 picks the
/// default) and stores the verdicts in the entries. The report lists
/// entries in input order and does not depend on `jobs`.
pub fn run_checks(
    entries: &mut [CatalogEntry],
    checks: &[Check],
    jobs: usize,
    config: &CorpusConfig,
) -> Result<VerificationReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    let limits = config.limits();
    let reports: Vec<EntryReport> = pool.install(|| {
        entries
            .par_iter_mut()
            .map(|e| check_entry(e, checks, config, &limits))
            .collect()
    });
    let mut summary = Summary::default();
    for r in &reports {
        for v in r.results.values() {
            match v.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
    }
    Ok(VerificationReport {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        corpus_hash: corpus_hash(entries),
        checks: checks.iter().map(|c| c.name().to_string()).collect(),
        entries: reports,
        summary,
    })
}

/// Per-entry analysis shared between checks. Owned by one worker.
struct Analysis<'e> {
    entry: &'e CatalogEntry,
    limits: Limits,
    lattice: OnceCell<std::result::Result<SubgroupLattice, Error>>,
    supersoluble: OnceCell<bool>,
}

impl Analysis<'_> {
    fn g(&self) -> &FiniteGroup {
        &self.entry.group
    }

    fn lattice(&self) -> std::result::Result<&SubgroupLattice, String> {
        self.lattice
            .get_or_init(|| all_subgroups(self.g(), &self.limits))
            .as_ref()
            .map_err(|e| format!("subgroup lattice: {e}"))
    }

    fn supersoluble(&self) -> bool {
        *self
            .supersoluble
            .get_or_init(|| SupersolubilityChecker::new().check(self.g()))
    }

    fn factorized(&self) -> bool {
        !self.entry.factorizations.is_empty()
    }

    /// The prime when `|G|` is a nontrivial prime power.
    fn p_group_prime(&self) -> Option<u64> {
        arith::prime_power_base(self.g().order() as u64)
    }
}

type Outcome = (Status, String);

fn pass(detail: impl Into<String>) -> Outcome {
    (Status::Pass, detail.into())
}

fn fail(detail: impl Into<String>) -> Outcome {
    (Status::Fail, detail.into())
}

fn skip(detail: impl Into<String>) -> Outcome {
    (Status::Skipped, detail.into())
}

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        pass(detail)
    } else {
        fail(detail)
    }
}

const NO_FACTORIZATION: &str = "no cyclic factorization";

fn check_entry(
    entry: &mut CatalogEntry,
    checks: &[Check],
    config: &CorpusConfig,
    limits: &Limits,
) -> EntryReport {
    entry.discover(config);
    let mut results = BTreeMap::new();
    let prufer_rank;
    {
        let a = Analysis {
            entry,
            limits: *limits,
            lattice: OnceCell::new(),
            supersoluble: OnceCell::new(),
        };
        for &c in checks {
            let start = Instant::now();
            let (status, detail) = run_check(&a, c);
            results.insert(
                c.name().to_string(),
                Verdict {
                    status,
                    detail,
                    elapsed_micros: start.elapsed().as_micros() as u64,
                },
            );
        }
        prufer_rank = a
            .lattice
            .get()
            .and_then(|l| l.as_ref().ok())
            .map(SubgroupLattice::prufer_rank);
    }
    entry.results = results.clone();
    EntryReport {
        name: entry.name.clone(),
        order: entry.group.order(),
        factorizations: entry.factorizations.len(),
        multi_products: entry.multi_products.len(),
        three_factor_products: entry.three_factor_count(),
        prufer_rank,
        results,
    }
}

fn run_check(a: &Analysis<'_>, check: Check) -> Outcome {
    match check {
        Check::Theorem1 => theorem1(a),
        Check::Rank3 => rank3(a),
        Check::PgroupRank => pgroup_rank(a),
        Check::SylowTower => sylow_tower(a),
        Check::Permutability => permutability(a),
        Check::Lemma26 => lemma26(a),
        Check::Lemma27 => lemma27(a),
        Check::Supersoluble => supersoluble(a),
        Check::Metabelian => metabelian(a),
        Check::Lemma51 => lemma51(a),
    }
}

fn theorem1(a: &Analysis<'_>) -> Outcome {
    if !a.factorized() {
        return skip(NO_FACTORIZATION);
    }
    let g = a.g();
    let mut runs = Vec::new();
    let mut problems = Vec::new();
    for (i, f) in a.entry.factorizations.iter().enumerate() {
        let report = match structure::decompose(g, f) {
            Ok(r) => r,
            Err(e) => {
                problems.push(format!("factorization {i}: {e}"));
                continue;
            }
        };
        if !report.holds() {
            let names: Vec<String> = report.failed_clauses().iter().map(|c| c.to_string()).collect();
            let reduced = if structure::reduced_stabilizers(g, &report).is_some() {
                " (reduced A*, B* satisfy the decomposition)"
            } else {
                ""
            };
            problems.push(format!("factorization {i}: failed {}{reduced}", names.join(", ")));
        }
        // R ∩ N(H) = 1 forces H to be self-normalizing.
        let nh = subgroup::normalizer_unchecked(g, &report.h);
        if report.r.intersection(&nh).is_trivial() && nh != report.h {
            problems.push(format!("factorization {i}: N(H) ≠ H although R ∩ N(H) = 1"));
        }
        runs.push((f.clone(), report));
    }
    let u = structure::check_uniqueness(g, &runs);
    if !u.deterministic {
        problems.push("reports not reproducible".into());
    }
    let detail = format!(
        "{} factorizations, {} distinct {{S, T}} pairs",
        a.entry.factorizations.len(),
        u.distinct_pairs
    );
    if problems.is_empty() {
        pass(detail)
    } else {
        fail(format!("{detail}; {}", problems.join("; ")))
    }
}

fn rank3(a: &Analysis<'_>) -> Outcome {
    if !a.factorized() {
        return skip(NO_FACTORIZATION);
    }
    match a.lattice() {
        Ok(l) => {
            let r = l.prufer_rank();
            verdict(r <= 3, format!("rank {r}"))
        }
        Err(e) => fail(e),
    }
}

fn pgroup_rank(a: &Analysis<'_>) -> Outcome {
    if !a.factorized() {
        return skip(NO_FACTORIZATION);
    }
    let Some(p) = a.p_group_prime() else {
        return skip("not a p-group");
    };
    let bound = if p == 2 { 3 } else { 2 };
    match a.lattice() {
        Ok(l) => {
            let r = l.prufer_rank();
            verdict(r <= bound, format!("p = {p}, rank {r}, bound {bound}"))
        }
        Err(e) => fail(e),
    }
}

fn sylow_tower(a: &Analysis<'_>) -> Outcome {
    if !a.factorized() {
        return skip(NO_FACTORIZATION);
    }
    let g = a.g();
    let primes = arith::prime_divisors(g.order() as u64);
    let subsets = arith::prime_subsets(&primes, 3);
    for (i, f) in a.entry.factorizations.iter().enumerate() {
        for pi in &subsets {
            if let Err(e) = factor::sylow_subgroup(g, f, pi) {
                return fail(format!("factorization {i}, π = {pi:?}: {e}"));
            }
        }
        for t in factor::check_sylow_tower(g, f) {
            if !t.normalizes || !t.hall_product {
                return fail(format!(
                    "factorization {i}: G_{} and G_{} violate the tower (normalizes {}, Hall product {})",
                    t.q, t.p, t.normalizes, t.hall_product
                ));
            }
        }
    }
    pass(format!(
        "{} factorizations, {} prime sets",
        a.entry.factorizations.len(),
        subsets.len()
    ))
}

/// Subgroups of a cyclic group, one per divisor of its order.
fn cyclic_subgroup_chain(g: &FiniteGroup, c: &ElementSet) -> Vec<ElementSet> {
    let n = c.len();
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| {
            let mut s = ElementSet::empty(g.order());
            for x in c.iter().filter(|&x| d % g.elem_order(x) as usize == 0) {
                s.insert(x);
            }
            s
        })
        .collect()
}

fn permutability(a: &Analysis<'_>) -> Outcome {
    if !a.factorized() {
        return skip(NO_FACTORIZATION);
    }
    if a.p_group_prime().is_none() {
        return skip("not a p-group");
    }
    let g = a.g();
    let mut pairs = 0;
    for (i, f) in a.entry.factorizations.iter().enumerate() {
        let cs = cyclic_subgroup_chain(g, &f.a);
        let ds = cyclic_subgroup_chain(g, &f.b);
        for c in &cs {
            for d in &ds {
                pairs += 1;
                if !factor::permutes(g, c, d).unwrap_or(false) {
                    return fail(format!(
                        "factorization {i}: subgroups of orders {} and {} do not permute",
                        c.len(),
                        d.len()
                    ));
                }
            }
        }
    }
    pass(format!("{pairs} subgroup pairs"))
}

fn lemma26(a: &Analysis<'_>) -> Outcome {
    if !a.factorized() {
        return skip(NO_FACTORIZATION);
    }
    for (i, f) in a.entry.factorizations.iter().enumerate() {
        match factor::check_basis_normalizer(a.g(), f) {
            Ok(c) if c.holds() => {}
            Ok(c) => {
                return fail(format!(
                    "factorization {i}: normalizer of order {} vs A*B* (equal {}, nilpotent {})",
                    c.normalizer.len(),
                    c.equals_product,
                    c.nilpotent
                ))
            }
            Err(e) => return fail(format!("factorization {i}: {e}")),
        }
    }
    pass(format!("{} factorizations", a.entry.factorizations.len()))
}

fn lemma27(a: &Analysis<'_>) -> Outcome {
    let g = a.g();
    if !structure::is_soluble(g) {
        return skip("not soluble");
    }
    let primes = arith::prime_divisors(g.order() as u64);
    if primes.is_empty() {
        return skip("trivial group");
    }
    let lattice = match a.lattice() {
        Ok(l) => l,
        Err(e) => return fail(e),
    };
    let subsets = arith::prime_subsets(&primes, 3);
    for pi in &subsets {
        match structure::hall_rank_bound(g, lattice, pi) {
            Ok(v) if v.holds => {}
            Ok(v) => {
                return fail(format!(
                    "π = {pi:?}: Hall rank {} exceeds Sylow rank {} + 1",
                    v.hall_rank, v.sylow_rank
                ))
            }
            Err(e) => return fail(format!("π = {pi:?}: {e}")),
        }
    }
    pass(format!("{} prime sets", subsets.len()))
}

fn supersoluble(a: &Analysis<'_>) -> Outcome {
    if a.entry.multi_products.is_empty() {
        return skip("no cyclic product decomposition");
    }
    verdict(a.supersoluble(), format!("{} products", a.entry.multi_products.len()))
}

fn metabelian(a: &Analysis<'_>) -> Outcome {
    if !a.factorized() {
        return skip(NO_FACTORIZATION);
    }
    let g = a.g();
    let r = subgroup::nilpotent_residual(g);
    let derived = subgroup::derived_series(g).get(1).cloned().unwrap_or_else(|| g.trivial());
    let meta = structure::is_metabelian(g);
    let inside = r.is_subset(&derived);
    verdict(
        meta && inside,
        format!("metabelian {meta}, |R| = {}, |G'| = {}, R ⊆ G' {inside}", r.len(), derived.len()),
    )
}

fn lemma51(a: &Analysis<'_>) -> Outcome {
    let products = &a.entry.multi_products;
    if products.is_empty() {
        return skip("no cyclic product decomposition");
    }
    if !a.supersoluble() {
        return fail("product group is not supersoluble");
    }
    for (i, mp) in products.iter().enumerate() {
        let rep = factor::largest_prime_sylow_normal(a.g(), mp);
        if !rep.holds() {
            return fail(format!(
                "product {i}: normal Sylow {}, complement {}",
                rep.p_is_normal_sylow, rep.q_is_complement
            ));
        }
    }
    pass(format!(
        "{} products, {} with three factors",
        products.len(),
        a.entry.three_factor_count()
    ))
}

/// Decomposes every factorization of one group, for single-group commands.
pub fn factorization_reports(g: &FiniteGroup) -> Vec<(Factorization, Result<structure::DecompositionReport>)> {
    factor::find_cyclic_factorizations(g)
        .into_iter()
        .map(|f| {
            let r = structure::decompose(g, &f);
            (f, r)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::generate_corpus;
    use crate::group::GroupRecipe;

    #[test]
    fn check_names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert_eq!(
            parse_checks("rank3, theorem1,rank3").unwrap(),
            vec![Check::Theorem1, Check::Rank3]
        );
        assert!(parse_checks("rank4").is_err());
    }

    #[test]
    fn empty_entry_list() {
        let r = run_checks(&mut [], &Check::ALL, 1, &CorpusConfig::default()).unwrap();
        assert!(r.entries.is_empty());
        assert_eq!(r.summary, Summary::default());
    }

    #[test]
    fn cyclic_groups_pass_with_trivial_s_and_t() {
        let limits = Limits::default();
        let mut entries: Vec<CatalogEntry> = (1..=24)
            .map(|n| CatalogEntry::from_recipe(format!("C{n}"), GroupRecipe::cyclic(n), &limits).unwrap())
            .collect();
        let r = run_checks(&mut entries, &Check::ALL, 2, &CorpusConfig::default()).unwrap();
        assert_eq!(r.summary.fail, 0);
        for e in &entries {
            for f in &e.factorizations {
                let d = structure::decompose(&e.group, f).unwrap();
                assert!(d.s.is_trivial() && d.t.is_trivial());
            }
        }
    }

    #[test]
    fn small_corpus_passes() {
        let config = CorpusConfig::with_max_order(24);
        let mut entries = generate_corpus(&config).unwrap();
        let r = run_checks(&mut entries, &Check::ALL, 0, &config).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures());
        let json = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
