//! The verification corpus: small groups from fixed families, deduplicated
//! up to isomorphism by a canonical Cayley-graph encoding.
//!
//! Families, in generation order:
//!
//! * cyclic `C_n`;
//! * dihedral `D_n` of order `2n`;
//! * generalized quaternion `Q_{2^k}`;
//! * `C_{2^k} ⋊ C_2` with the inverting action;
//! * `⟨a⟩⟨b⟩` with `a^b = a⁻¹` and the involutions of `⟨a⟩` and `⟨b⟩`
//!   identified;
//! * `C_m ⋊ C_k` for every power action `x ↦ x^r` with `r^k ≡ 1 (mod m)`;
//! * direct products of two cyclic, dihedral or quaternion groups;
//! * the subgroups of the symmetric group of degree 5.
//!
//! When two constructions give isomorphic groups the earlier one is kept.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arith;
use crate::elemset::ElementSet;
use crate::error::{Error, Result};
use crate::factor::{self, Factorization, MultiProduct};
use crate::formats;
use crate::group::{build, Elem, FiniteGroup, GroupRecipe, Limits};
use crate::lattice::{all_subgroups, minimal_generators};
use crate::subgroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusConfig {
    /// Upper bound on every group order.
    pub max_order: usize,
    pub cyclic_max: usize,
    /// Largest dihedral degree `n` (order `2n`).
    pub dihedral_max: usize,
    /// Largest exponent `k` for `Q_{2^k}`, `C_{2^k} ⋊ C_2` and the inverted
    /// extensions.
    pub two_power_max: u32,
    pub semidirect_max: usize,
    pub direct_max: usize,
    pub symmetric_subgroups: bool,
    /// Largest order searched for products of three cyclic subgroups.
    pub triple_search_max: usize,
    /// At most this many three-factor products are kept per group.
    pub triples_per_group: usize,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            max_order: 128,
            cyclic_max: 64,
            dihedral_max: 32,
            two_power_max: 6,
            semidirect_max: 128,
            direct_max: 128,
            symmetric_subgroups: true,
            triple_search_max: 64,
            triples_per_group: 2,
        }
    }
}

impl CorpusConfig {
    pub fn with_max_order(max_order: usize) -> Self {
        CorpusConfig {
            max_order,
            ..Self::default()
        }
    }

    /// Limits wide enough for every group the configuration builds. The
    /// inverted extensions pass through a group of twice their order.
    pub fn limits(&self) -> Limits {
        let n = 2 * self.max_order.max(120);
        Limits {
            max_order: n,
            assoc_check_bound: n,
            lattice_bound: n,
        }
    }
}

/// Outcome of one check on one corpus entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Verdict {
    pub status: Status,
    pub detail: String,
    pub elapsed_micros: u64,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub recipe: GroupRecipe,
    pub group: FiniteGroup,
    pub factorizations: Vec<Factorization>,
    /// Every factorization as a two-factor product, followed by the
    /// three-factor products found by [`CatalogEntry::discover`].
    pub multi_products: Vec<MultiProduct>,
    pub results: BTreeMap<String, Verdict>,
    discovered: bool,
}

impl CatalogEntry {
    pub fn new(name: impl Into<String>, recipe: GroupRecipe, group: FiniteGroup) -> Self {
        CatalogEntry {
            name: name.into(),
            recipe,
            group,
            factorizations: Vec::new(),
            multi_products: Vec::new(),
            results: BTreeMap::new(),
            discovered: false,
        }
    }

    pub fn from_recipe(name: impl Into<String>, recipe: GroupRecipe, limits: &Limits) -> Result<Self> {
        let group = build(&recipe, limits)?;
        Ok(Self::new(name, recipe, group))
    }

    /// Fills in the cyclic factorizations and multi-products. Idempotent.
    pub fn discover(&mut self, config: &CorpusConfig) {
        if self.discovered {
            return;
        }
        let g = &self.group;
        self.factorizations = factor::find_cyclic_factorizations(g);
        self.multi_products = self
            .factorizations
            .iter()
            .map(|f| MultiProduct {
                factors: vec![f.a.clone(), f.b.clone()],
            })
            .collect();
        if g.order() <= config.triple_search_max {
            self.multi_products
                .extend(three_factor_products(g, config.triples_per_group));
        }
        self.discovered = true;
    }

    pub fn three_factor_count(&self) -> usize {
        self.multi_products.iter().filter(|m| m.factors.len() == 3).count()
    }
}

/// Products `G = A₁A₂A₃` of pairwise permutable nontrivial cyclic subgroups
/// where no two of the factors already give `G`.
pub fn three_factor_products(g: &FiniteGroup, cap: usize) -> Vec<MultiProduct> {
    let n = g.order();
    let cyc: Vec<ElementSet> = factor::cyclic_subgroups(g)
        .into_iter()
        .map(|(c, _)| c)
        .filter(|c| !c.is_trivial() && c.len() < n)
        .collect();
    let m = cyc.len();
    let mut pair: HashMap<(usize, usize), Option<ElementSet>> = HashMap::new();
    // The subgroup `C_i C_j` when the two permute.
    let mut product = |i: usize, j: usize| -> Option<ElementSet> {
        pair.entry((i, j))
            .or_insert_with(|| {
                let xy = factor::raw_product(g, &cyc[i], &cyc[j]);
                let yx = factor::raw_product(g, &cyc[j], &cyc[i]);
                (xy == yx).then_some(xy)
            })
            .clone()
    };
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if cyc[i].is_subset(&cyc[j]) {
                continue;
            }
            let Some(ij) = product(i, j) else { continue };
            if ij.len() == n {
                continue;
            }
            for k in j + 1..m {
                if cyc[k].is_subset(&ij) || ij.len() * cyc[k].len() < n {
                    continue;
                }
                let (Some(ik), Some(jk)) = (product(i, k), product(j, k)) else {
                    continue;
                };
                if ik.len() == n || jk.len() == n {
                    continue;
                }
                let factors = vec![cyc[i].clone(), cyc[j].clone(), cyc[k].clone()];
                if let Ok(mp) = factor::build_multi_product(g, factors) {
                    out.push(mp);
                    if out.len() >= cap {
                        return out;
                    }
                }
            }
        }
    }
    out
}

/// Order, sorted (element order, centralizer size) pairs, |Z(G)|, |G'|.
type Signature = (usize, Vec<(u32, u32)>, usize, usize);

/// Cheap isomorphism invariant: order, the multiset of (element order,
/// centralizer size), and the orders of the center and derived subgroup.
fn signature(g: &FiniteGroup) -> Signature {
    let n = g.order();
    let mut classes: Vec<(u32, u32)> = g
        .elements()
        .map(|x| {
            let c = g.elements().filter(|&y| g.mul(x, y) == g.mul(y, x)).count();
            (g.elem_order(x), c as u32)
        })
        .collect();
    classes.sort_unstable();
    let center = subgroup::center(g).len();
    let derived = subgroup::derived_series(g).get(1).map_or(1, ElementSet::len);
    (n, classes, center, derived)
}

/// Generating tuples examined before giving up on a canonical form.
const CANONICAL_BUDGET: usize = 400_000;

/// Canonical encoding: the least, over generating tuples of minimal length,
/// of the tuple's element orders followed by the labels met in a breadth
/// first walk of the Cayley graph from the identity. Two groups are
/// isomorphic exactly when their encodings agree. `None` when the search
/// budget runs out.
pub fn canonical_form(g: &FiniteGroup) -> Option<Vec<u32>> {
    let n = g.order();
    if n == 1 {
        return Some(vec![1]);
    }
    let d = minimal_generators(g, &g.whole()).expect("whole group") as usize;
    let mut cands: Vec<Elem> = g.elements().skip(1).collect();
    cands.sort_by_key(|&x| (g.elem_order(x), x));
    let mut search = CanonSearch {
        g,
        d,
        cands,
        best: None,
        tuple: Vec::with_capacity(d),
        budget: CANONICAL_BUDGET,
        labels: vec![u32::MAX; n],
        buf: Vec::new(),
    };
    search.descend();
    if search.budget == 0 {
        return None;
    }
    let mut out = vec![n as u32];
    out.extend(search.best?);
    Some(out)
}

struct CanonSearch<'g> {
    g: &'g FiniteGroup,
    d: usize,
    cands: Vec<Elem>,
    best: Option<Vec<u32>>,
    tuple: Vec<Elem>,
    budget: usize,
    labels: Vec<u32>,
    buf: Vec<u32>,
}

impl CanonSearch<'_> {
    fn descend(&mut self) {
        if self.budget == 0 {
            return;
        }
        let depth = self.tuple.len();
        if depth == self.d {
            self.budget -= 1;
            self.encode();
            return;
        }
        for i in 0..self.cands.len() {
            let x = self.cands[i];
            let ord = self.g.elem_order(x);
            if let Some(best) = &self.best {
                // Orders come first in the encoding and the candidates are
                // sorted by order, so larger orders cannot win.
                let prefix_equal = self
                    .tuple
                    .iter()
                    .zip(best)
                    .all(|(&t, &b)| self.g.elem_order(t) == b);
                if prefix_equal && ord > best[depth] {
                    break;
                }
            }
            if self.tuple.contains(&x) {
                continue;
            }
            self.tuple.push(x);
            self.descend();
            self.tuple.pop();
            if self.budget == 0 {
                return;
            }
        }
    }

    fn encode(&mut self) {
        let g = self.g;
        let n = g.order();
        self.buf.clear();
        self.buf.extend(self.tuple.iter().map(|&x| g.elem_order(x)));
        // Less: already below the best; Equal: matches the best so far.
        let mut state = match &self.best {
            Some(best) => self.buf.as_slice().cmp(&best[..self.buf.len()]),
            None => std::cmp::Ordering::Less,
        };
        if state == std::cmp::Ordering::Greater {
            return;
        }
        self.labels.iter_mut().for_each(|l| *l = u32::MAX);
        let mut queue = VecDeque::with_capacity(n);
        self.labels[0] = 0;
        let mut next = 1u32;
        queue.push_back(Elem::IDENTITY);
        while let Some(u) = queue.pop_front() {
            for &x in &self.tuple {
                let v = g.mul(u, x);
                if self.labels[v.index()] == u32::MAX {
                    self.labels[v.index()] = next;
                    next += 1;
                    queue.push_back(v);
                }
                let l = self.labels[v.index()];
                if state == std::cmp::Ordering::Equal {
                    let b = self.best.as_ref().expect("equal needs a best")[self.buf.len()];
                    match l.cmp(&b) {
                        std::cmp::Ordering::Greater => return,
                        std::cmp::Ordering::Less => state = std::cmp::Ordering::Less,
                        std::cmp::Ordering::Equal => {}
                    }
                }
                self.buf.push(l);
            }
        }
        if next as usize != n {
            return;
        }
        if state == std::cmp::Ordering::Less {
            self.best = Some(self.buf.clone());
        }
    }
}

/// Keeps the first of every isomorphism class, comparing canonical forms
/// only between groups whose cheap signatures agree.
#[derive(Default)]
struct Dedup {
    buckets: HashMap<Signature, Vec<usize>>,
    forms: Vec<Option<Option<Vec<u32>>>>,
}

impl Dedup {
    /// Registers `g` as entry `idx` unless it is isomorphic to one already
    /// registered in `entries`.
    fn admit(&mut self, g: &FiniteGroup, entries: &[CatalogEntry]) -> bool {
        let sig = signature(g);
        let bucket = self.buckets.entry(sig).or_default();
        if !bucket.is_empty() {
            let mine = canonical_form(g);
            for &j in bucket.iter() {
                let theirs = self.forms[j]
                    .get_or_insert_with(|| canonical_form(&entries[j].group))
                    .clone();
                match (&mine, theirs) {
                    (Some(a), Some(b)) if *a == b => return false,
                    _ => {}
                }
            }
            self.forms.push(Some(mine));
        } else {
            self.forms.push(None);
        }
        bucket.push(entries.len());
        true
    }
}

fn power_of_two(k: u32) -> usize {
    1usize << k
}

fn basic_families(config: &CorpusConfig) -> Vec<(String, GroupRecipe, usize)> {
    let cap = config.max_order;
    let mut out = Vec::new();
    for n in 2..=config.cyclic_max.min(cap) {
        out.push((format!("C{n}"), GroupRecipe::cyclic(n), n));
    }
    for n in 2..=config.dihedral_max {
        if 2 * n <= cap {
            out.push((format!("D{n}"), GroupRecipe::dihedral(n), 2 * n));
        }
    }
    for k in 3..=config.two_power_max {
        let order = power_of_two(k);
        if order <= cap {
            out.push((format!("Q{order}"), GroupRecipe::quaternion(order), order));
        }
    }
    out
}

fn recipe_families(config: &CorpusConfig) -> Vec<(String, GroupRecipe)> {
    let cap = config.max_order;
    let mut out = vec![("C1".to_string(), GroupRecipe::cyclic(1))];
    let basic = basic_families(config);
    out.extend(basic.iter().map(|(n, r, _)| (n.clone(), r.clone())));
    for k in 1..=config.two_power_max {
        let m = power_of_two(k);
        if 2 * m <= cap {
            out.push((format!("C{m}:C2[-1]"), GroupRecipe::cyclic_semidirect(m, 2, -1)));
        }
    }
    for a in 2..=config.two_power_max {
        for t in 2..=config.two_power_max {
            let (cyclic, top) = (power_of_two(a), power_of_two(t));
            if cyclic * top / 2 <= cap {
                out.push((
                    format!("C{cyclic}.C{top}"),
                    GroupRecipe::InvertedCyclicExtension { cyclic, top },
                ));
            }
        }
    }
    for m in 2..=config.semidirect_max.min(cap) / 2 {
        for k in 2..=config.semidirect_max.min(cap) / m {
            for r in 1..m as u64 {
                if arith::gcd(r, m as u64) != 1 || mod_pow(r, k as u64, m as u64) != 1 {
                    continue;
                }
                out.push((
                    format!("C{m}:C{k}[{r}]"),
                    GroupRecipe::cyclic_semidirect(m, k, r as i64),
                ));
            }
        }
    }
    let direct_cap = config.direct_max.min(cap);
    for (i, (ln, lr, lo)) in basic.iter().enumerate() {
        for (rn, rr, ro) in &basic[i..] {
            if lo * ro <= direct_cap {
                out.push((format!("{ln}x{rn}"), GroupRecipe::direct(lr.clone(), rr.clone())));
            }
        }
    }
    out
}

fn mod_pow(base: u64, exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    for _ in 0..exp {
        acc = acc * base % m;
    }
    acc
}

/// Subgroups of `S_5`, one recipe per lattice member, generators written in
/// cycle notation.
fn symmetric_subgroups(max_order: usize, limits: &Limits) -> Result<Vec<(String, GroupRecipe)>> {
    let gens = [
        formats::parse_cycles("(1 2 3 4 5)", 5, 1)?,
        formats::parse_cycles("(1 2)", 5, 1)?,
    ];
    let (s5, perms) = FiniteGroup::permutation_group(5, &gens, limits)?;
    let lattice = all_subgroups(&s5, limits)?;
    let mut out = Vec::new();
    for i in 0..lattice.len() {
        let h = lattice.get(i);
        if h.len() > max_order {
            continue;
        }
        let mut generators: Vec<String> = lattice
            .generators(i)
            .iter()
            .map(|x| formats::format_cycles(&perms[x.index()]))
            .collect();
        if generators.is_empty() {
            generators.push("()".into());
        }
        out.push((
            format!("S5sub{i}"),
            GroupRecipe::FromPermutations {
                degree: 5,
                generators,
            },
        ));
    }
    Ok(out)
}

/// Builds the deduplicated corpus in a fixed order.
pub fn generate_corpus(config: &CorpusConfig) -> Result<Vec<CatalogEntry>> {
    if config.max_order == 0 {
        return Err(Error::InvalidConfig("max order must be positive".into()));
    }
    let limits = config.limits();
    let mut recipes = recipe_families(config);
    if config.symmetric_subgroups {
        recipes.extend(symmetric_subgroups(config.max_order, &limits)?);
    }
    let mut entries: Vec<CatalogEntry> = Vec::new();
    let mut dedup = Dedup::default();
    for (name, recipe) in recipes {
        let group = build(&recipe, &limits)?;
        if group.order() > config.max_order {
            continue;
        }
        if dedup.admit(&group, &entries) {
            entries.push(CatalogEntry::new(name, recipe, group));
        }
    }
    Ok(entries)
}

/// SHA-256 over every entry's name and Cayley table, as lowercase hex.
pub fn corpus_hash(entries: &[CatalogEntry]) -> String {
    let mut h = Sha256::new();
    for e in entries {
        h.update(e.name.as_bytes());
        h.update([0]);
        h.update((e.group.order() as u64).to_le_bytes());
        for &x in e.group.flat_table() {
            h.update(x.to_le_bytes());
        }
    }
    hex::encode(h.finalize())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ManifestEntry {
    pub name: String,
    pub order: usize,
    pub recipe: GroupRecipe,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Manifest {
    pub schema_version: u32,
    pub tool_version: String,
    pub corpus_hash: String,
    pub entries: Vec<ManifestEntry>,
}

pub fn manifest(entries: &[CatalogEntry]) -> Manifest {
    Manifest {
        schema_version: crate::verify::SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        corpus_hash: corpus_hash(entries),
        entries: entries
            .iter()
            .map(|e| ManifestEntry {
                name: e.name.clone(),
                order: e.group.order(),
                recipe: e.recipe.clone(),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(r: GroupRecipe) -> FiniteGroup {
        build(&r, &Limits::default()).unwrap()
    }

    #[test]
    fn canonical_form_detects_isomorphism() {
        let d3 = grp(GroupRecipe::dihedral(3));
        let s3 = grp(GroupRecipe::permutations(3, &["(1 2 3)", "(1 2)"]));
        let c6 = grp(GroupRecipe::cyclic(6));
        let c3c2 = grp(GroupRecipe::direct(GroupRecipe::cyclic(3), GroupRecipe::cyclic(2)));
        assert_eq!(canonical_form(&d3), canonical_form(&s3));
        assert_eq!(canonical_form(&c6), canonical_form(&c3c2));
        assert_ne!(canonical_form(&d3), canonical_form(&c6));
        let d4 = grp(GroupRecipe::dihedral(4));
        let q8 = grp(GroupRecipe::quaternion(8));
        assert_ne!(canonical_form(&d4), canonical_form(&q8));
        let ext = grp(GroupRecipe::InvertedCyclicExtension { cyclic: 4, top: 4 });
        assert_eq!(canonical_form(&ext), canonical_form(&q8));
    }

    #[test]
    fn small_corpus_is_deduplicated() {
        let entries = generate_corpus(&CorpusConfig::with_max_order(6)).unwrap();
        let names: Vec<&str> = entries.iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names, ["C1", "C2", "C3", "C4", "C5", "C6", "D2", "D3"]);
    }

    #[test]
    fn three_factor_products_in_abelian_groups() {
        let g = grp(GroupRecipe::direct(GroupRecipe::cyclic(2), GroupRecipe::dihedral(2)));
        let found = three_factor_products(&g, 10);
        assert!(!found.is_empty());
        for mp in &found {
            assert_eq!(mp.factors.len(), 3);
            assert!(mp.factors.iter().all(|f| f.len() == 2));
        }
    }

    #[test]
    fn power_action_exponents() {
        assert_eq!(mod_pow(2, 3, 7), 1);
        assert_eq!(mod_pow(3, 2, 8), 1);
        assert_eq!(mod_pow(5, 0, 1), 0);
    }
}
