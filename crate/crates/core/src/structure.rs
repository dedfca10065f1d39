//! The decomposition `G = (S × T) ⋊ H = (S × A*)(T × B*)` of a product of
//! two cyclic subgroups, together with supersolubility, Hall-rank and
//! derivation checks.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::elemset::ElementSet;
use crate::error::{Error, Result};
use crate::factor::{self, Factorization};
use crate::group::{is_automorphism, Elem, FiniteGroup, Limits};
use crate::lattice::SubgroupLattice;
use crate::subgroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Clause {
    SNormalCyclic,
    TNormalCyclic,
    InternalSemidirect,
    DoubleFactorization,
    PiDisjointS,
    PiDisjointT,
    SCommutatorFull,
    TCommutatorFull,
    HNilpotent,
    GMetabelian,
}

impl Clause {
    pub const ALL: [Clause; 10] = [
        Clause::SNormalCyclic,
        Clause::TNormalCyclic,
        Clause::InternalSemidirect,
        Clause::DoubleFactorization,
        Clause::PiDisjointS,
        Clause::PiDisjointT,
        Clause::SCommutatorFull,
        Clause::TCommutatorFull,
        Clause::HNilpotent,
        Clause::GMetabelian,
    ];
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    /// Nilpotent residual of `G`.
    pub r: ElementSet,
    /// Basis normalizer of the Sylow basis `{A_p B_p}`.
    pub h: ElementSet,
    pub a_star: ElementSet,
    pub b_star: ElementSet,
    /// `R ∩ ⟨A, B*⟩`.
    pub s: ElementSet,
    /// `R ∩ ⟨A*, B⟩`.
    pub t: ElementSet,
    /// `A ∩ BS`.
    pub a0: ElementSet,
    /// `AT ∩ B`.
    pub b0: ElementSet,
    pub clauses: BTreeMap<Clause, bool>,
}

impl DecompositionReport {
    pub fn holds(&self) -> bool {
        self.clauses.values().all(|&v| v)
    }

    pub fn failed_clauses(&self) -> Vec<Clause> {
        self.clauses
            .iter()
            .filter(|(_, &v)| !v)
            .map(|(&c, _)| c)
            .collect()
    }

    pub fn to_record(&self, order: usize) -> DecompositionRecord {
        let subgroups = [
            ("R", &self.r),
            ("H", &self.h),
            ("Astar", &self.a_star),
            ("Bstar", &self.b_star),
            ("S", &self.s),
            ("T", &self.t),
            ("A0", &self.a0),
            ("B0", &self.b0),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.to_indices()))
        .collect();
        DecompositionRecord {
            order,
            subgroups,
            clauses: self.clauses.iter().map(|(c, &v)| (c.to_string(), v)).collect(),
        }
    }
}

/// Serialized form of a [`DecompositionReport`]: each subgroup as a sorted
/// list of element indices, plus the clause verdicts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DecompositionRecord {
    pub order: usize,
    pub subgroups: BTreeMap<String, Vec<u32>>,
    pub clauses: BTreeMap<String, bool>,
}

pub fn decompose(g: &FiniteGroup, f: &Factorization) -> Result<DecompositionReport> {
    let checked = Factorization::new(g, f.a.clone(), f.b.clone())?;
    if checked != *f {
        return Err(Error::InvalidFactorization("stale Sylow data".into()));
    }
    let r = subgroup::nilpotent_residual(g);
    let bn = factor::check_basis_normalizer(g, f)?;
    let (h, a_star, b_star) = (bn.normalizer, bn.a_star, bn.b_star);

    let s = r.intersection(&subgroup::generate(g, f.a.union(&b_star).iter()));
    let t = r.intersection(&subgroup::generate(g, a_star.union(&f.b).iter()));
    let a0 = f.a.intersection(&factor::raw_product(g, &f.b, &s));
    let b0 = factor::raw_product(g, &f.a, &t).intersection(&f.b);

    let normal_cyclic =
        |x: &ElementSet| subgroup::is_normal(g, x) && subgroup::is_cyclic(g, x);
    let disjoint_primes = |x: &ElementSet, y: &ElementSet| {
        let px: BTreeSet<u64> = subgroup::primes_of(g, x).into_iter().collect();
        subgroup::primes_of(g, y).iter().all(|p| !px.contains(p))
    };
    // x × y as an internal direct product: trivial meet, elementwise commuting.
    let direct = |x: &ElementSet, y: &ElementSet| {
        x.intersection(y).is_trivial() && subgroup::commute_elementwise(g, x, y)
    };

    let st = factor::raw_product(g, &s, &t);
    let internal_semidirect = direct(&s, &t)
        && g.is_subgroup(&st)
        && subgroup::is_normal(g, &st)
        && st.intersection(&h).is_trivial()
        && factor::raw_product(g, &st, &h) == g.whole();
    let double_factorization = direct(&s, &a_star)
        && direct(&t, &b_star)
        && factor::raw_product(
            g,
            &factor::raw_product(g, &s, &a_star),
            &factor::raw_product(g, &t, &b_star),
        ) == g.whole();

    let clauses = BTreeMap::from([
        (Clause::SNormalCyclic, normal_cyclic(&s)),
        (Clause::TNormalCyclic, normal_cyclic(&t)),
        (Clause::InternalSemidirect, internal_semidirect),
        (Clause::DoubleFactorization, double_factorization),
        (Clause::PiDisjointS, disjoint_primes(&s, &a_star)),
        (Clause::PiDisjointT, disjoint_primes(&t, &b_star)),
        (Clause::SCommutatorFull, subgroup::commutator_unchecked(g, &s, &b_star) == s),
        (Clause::TCommutatorFull, subgroup::commutator_unchecked(g, &t, &a_star) == t),
        (Clause::HNilpotent, subgroup::is_nilpotent_subgroup(g, &h)),
        (Clause::GMetabelian, is_metabelian(g)),
    ]);

    Ok(DecompositionReport {
        r,
        h,
        a_star,
        b_star,
        s,
        t,
        a0,
        b0,
        clauses,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct UniquenessVerdict {
    /// Re-running the pipeline reproduced every report.
    pub deterministic: bool,
    /// Distinct unordered pairs `{S, T}` seen across factorizations.
    pub distinct_pairs: usize,
}

impl UniquenessVerdict {
    pub fn all_equal(&self) -> bool {
        self.distinct_pairs <= 1
    }
}

/// Re-runs the pipeline on every factorization and records how many
/// different `{S, T}` pairs the factorizations of `g` produce.
pub fn check_uniqueness(g: &FiniteGroup, runs: &[(Factorization, DecompositionReport)]) -> UniquenessVerdict {
    let mut deterministic = true;
    let mut pairs = BTreeSet::new();
    for (f, report) in runs {
        deterministic &= decompose(g, f).as_ref() == Ok(report);
        let (x, y) = (report.s.clone(), report.t.clone());
        pairs.insert(if x <= y { (x, y) } else { (y, x) });
    }
    UniquenessVerdict {
        deterministic,
        distinct_pairs: pairs.len(),
    }
}

/// Replacement factors for the decomposition: the π(S)'-part of `A*` and
/// the π(T)'-part of `B*`, returned when they still give `H = A*B*` and
/// every clause that involves `A*` or `B*`.
///
/// `A* = ∩ N_A(G_p)` can share primes with `S` when `A ∩ B` meets `H`; the
/// decomposition only needs some `A* ≤ A` and `B* ≤ B` with `H = A*B*`.
pub fn reduced_stabilizers(g: &FiniteGroup, report: &DecompositionReport) -> Option<(ElementSet, ElementSet)> {
    let complement = |x: &ElementSet, avoid: &ElementSet| {
        let bad = subgroup::primes_of(g, avoid);
        let keep: Vec<u64> = subgroup::primes_of(g, x)
            .into_iter()
            .filter(|p| !bad.contains(p))
            .collect();
        subgroup::pi_elements(g, x, &keep)
    };
    let a = complement(&report.a_star, &report.s);
    let b = complement(&report.b_star, &report.t);
    let direct = |x: &ElementSet, y: &ElementSet| {
        x.intersection(y).is_trivial() && subgroup::commute_elementwise(g, x, y)
    };
    let ok = factor::raw_product(g, &a, &b) == report.h
        && direct(&report.s, &a)
        && direct(&report.t, &b)
        && factor::raw_product(
            g,
            &factor::raw_product(g, &report.s, &a),
            &factor::raw_product(g, &report.t, &b),
        ) == g.whole()
        && subgroup::commutator_unchecked(g, &report.s, &b) == report.s
        && subgroup::commutator_unchecked(g, &report.t, &a) == report.t;
    ok.then_some((a, b))
}

pub fn is_metabelian(g: &FiniteGroup) -> bool {
    subgroup::is_metabelian_subgroup(g, &g.whole())
}

pub fn is_nilpotent(g: &FiniteGroup) -> bool {
    subgroup::is_nilpotent_subgroup(g, &g.whole())
}

pub fn is_soluble(g: &FiniteGroup) -> bool {
    subgroup::is_soluble_subgroup(g, &g.whole())
}

/// Supersolubility by repeatedly factoring out a normal subgroup of prime
/// order. Quotients are memoized on their tables.
#[derive(Debug, Default)]
pub struct SupersolubilityChecker {
    memo: HashMap<Vec<u32>, bool>,
}

impl SupersolubilityChecker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn check(&mut self, g: &FiniteGroup) -> bool {
        if g.order() == 1 {
            return true;
        }
        if let Some(&known) = self.memo.get(g.flat_table()) {
            return known;
        }
        let limits = Limits {
            max_order: g.order(),
            assoc_check_bound: 0,
            lattice_bound: 0,
        };
        let normal_prime = g.elements().find_map(|x| {
            if !arith::is_prime(g.elem_order(x) as u64) {
                return None;
            }
            let n = subgroup::cyclic_subgroup(g, x);
            subgroup::is_normal(g, &n).then_some(n)
        });
        // A supersoluble group always has a normal subgroup of prime order,
        // and supersolubility passes to and lifts from such quotients.
        let verdict = match normal_prime {
            Some(n) => {
                let (q, _) = g.quotient(&n, &limits).expect("normal subgroup");
                self.check(&q)
            }
            None => false,
        };
        self.memo.insert(g.flat_table().to_vec(), verdict);
        verdict
    }
}

pub fn is_supersoluble(g: &FiniteGroup) -> bool {
    SupersolubilityChecker::new().check(g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HallRankVerdict {
    pub primes: Vec<u64>,
    /// Largest rank of a Sylow `p`-subgroup, `p ∈ π`.
    pub sylow_rank: u32,
    pub hall_order: usize,
    pub hall_rank: u32,
    pub holds: bool,
}

/// A Hall π-subgroup of a soluble group has rank at most one more than the
/// largest rank of its Sylow subgroups.
pub fn hall_rank_bound(g: &FiniteGroup, lattice: &SubgroupLattice, primes: &[u64]) -> Result<HallRankVerdict> {
    if !is_soluble(g) {
        return Err(Error::NotSoluble);
    }
    let n = g.order() as u64;
    let mut sylow_rank = 0;
    for &p in primes {
        let gp = factor::hall_subgroup_by_scan(g, lattice, &[p])
            .ok_or_else(|| Error::NoHallSubgroup(vec![p]))?;
        sylow_rank = sylow_rank.max(lattice.rank_of_set(&gp).expect("lattice member"));
    }
    let hall = factor::hall_subgroup_by_scan(g, lattice, primes)
        .ok_or_else(|| Error::NoHallSubgroup(primes.to_vec()))?;
    let hall_rank = lattice.rank_of_set(&hall).expect("lattice member");
    Ok(HallRankVerdict {
        primes: primes.to_vec(),
        sylow_rank,
        hall_order: arith::pi_part(n, primes) as usize,
        hall_rank,
        holds: hall_rank <= sylow_rank + 1,
    })
}

/// A map `φ: B → A₁` into an abelian group `A₁` on which `B` acts.
#[derive(Clone, Debug)]
pub struct DerivationTable {
    pub acting: FiniteGroup,
    pub module: FiniteGroup,
    /// `action[b][a]` is `a^b`.
    pub action: Vec<Vec<Elem>>,
    pub phi: Vec<Elem>,
}

/// True when `φ(bc) = φ(b) · φ(c)^b` for all `b, c`.
pub fn validate_derivation(d: &DerivationTable) -> Result<bool> {
    let (b, a) = (&d.acting, &d.module);
    if !a.is_abelian() {
        return Err(Error::ModuleNotAbelian);
    }
    if d.action.len() != b.order() || d.phi.len() != b.order() {
        return Err(Error::ActionNotAutomorphism(format!(
            "expected {} action rows and φ values",
            b.order()
        )));
    }
    if let Some(bad) = d.phi.iter().find(|x| x.index() >= a.order()) {
        return Err(Error::IndexOutOfRange {
            index: bad.index(),
            order: a.order(),
        });
    }
    for (i, row) in d.action.iter().enumerate() {
        if !is_automorphism(a, row) {
            return Err(Error::ActionNotAutomorphism(format!("element {i} of the acting group")));
        }
    }
    if d.action[0].iter().enumerate().any(|(i, x)| x.index() != i) {
        return Err(Error::ActionNotAutomorphism("identity acts non-trivially".into()));
    }
    for x in b.elements() {
        for y in b.elements() {
            let xy = b.mul(x, y).index();
            // a^{xy} = (a^x)^y
            let consistent = a
                .elements()
                .all(|e| d.action[xy][e.index()] == d.action[y.index()][d.action[x.index()][e.index()].index()]);
            if !consistent {
                return Err(Error::ActionNotAutomorphism(format!(
                    "action is not a homomorphism at ({x}, {y})"
                )));
            }
        }
    }
    let phi = |x: Elem| d.phi[x.index()];
    Ok(b.elements().all(|x| {
        b.elements().all(|y| {
            let twisted = d.action[x.index()][phi(y).index()];
            phi(b.mul(x, y)) == a.mul(phi(x), twisted)
        })
    }))
}
