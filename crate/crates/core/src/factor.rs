//! Factorizations `G = AB` with cyclic factors, the Sylow basis they induce,
//! and products of several pairwise permutable cyclic subgroups.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::elemset::ElementSet;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::lattice::SubgroupLattice;
use crate::subgroup::{self, require_subgroup};

/// The set `{xy : x ∈ X, y ∈ Y}`, not necessarily a subgroup.
pub fn product_set(g: &FiniteGroup, x: &ElementSet, y: &ElementSet) -> Result<ElementSet> {
    require_subgroup(g, x)?;
    require_subgroup(g, y)?;
    Ok(raw_product(g, x, y))
}

pub(crate) fn raw_product(g: &FiniteGroup, x: &ElementSet, y: &ElementSet) -> ElementSet {
    let ys: Vec<Elem> = y.iter().collect();
    let mut out = ElementSet::empty(g.order());
    for a in x {
        for &b in &ys {
            out.insert(g.mul(a, b));
        }
    }
    out
}

/// `XY = YX`; when this holds the product is also checked to be a subgroup.
pub fn permutes(g: &FiniteGroup, x: &ElementSet, y: &ElementSet) -> Result<bool> {
    let xy = product_set(g, x, y)?;
    let yx = raw_product(g, y, x);
    Ok(xy == yx && g.is_subgroup(&xy))
}

/// Every cyclic subgroup of `g` with one generator each, sorted by
/// `(size, elements)`.
pub fn cyclic_subgroups(g: &FiniteGroup) -> Vec<(ElementSet, Elem)> {
    let mut seen = std::collections::HashSet::new();
    let mut out: Vec<(ElementSet, Elem)> = g
        .elements()
        .filter_map(|x| {
            let c = subgroup::cyclic_subgroup(g, x);
            seen.insert(c.clone()).then_some((c, x))
        })
        .collect();
    out.sort();
    out
}

/// `G = AB` with `A` and `B` cyclic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub a: ElementSet,
    pub b: ElementSet,
    /// The unique Sylow `p`-subgroup of `A`, for every prime dividing `|G|`.
    pub sylow_a: BTreeMap<u64, ElementSet>,
    pub sylow_b: BTreeMap<u64, ElementSet>,
}

impl Factorization {
    pub fn new(g: &FiniteGroup, a: ElementSet, b: ElementSet) -> Result<Self> {
        let invalid = |m: &str| Error::InvalidFactorization(m.to_string());
        for (name, s) in [("A", &a), ("B", &b)] {
            g.check_set(s)?;
            if !g.is_subgroup(s) {
                return Err(invalid(&format!("{name} is not a subgroup")));
            }
            if !subgroup::is_cyclic(g, s) {
                return Err(invalid(&format!("{name} is not cyclic")));
            }
        }
        let meet = a.intersection(&b).len();
        if a.len() * b.len() != g.order() * meet {
            return Err(invalid(&format!(
                "|A||B| = {} but |G||A∩B| = {}",
                a.len() * b.len(),
                g.order() * meet
            )));
        }
        if raw_product(g, &a, &b) != g.whole() {
            return Err(invalid("AB does not cover G"));
        }
        let primes = arith::prime_divisors(g.order() as u64);
        let sylow = |s: &ElementSet| {
            primes
                .iter()
                .map(|&p| (p, subgroup::pi_elements(g, s, &[p])))
                .collect()
        };
        Ok(Factorization {
            sylow_a: sylow(&a),
            sylow_b: sylow(&b),
            a,
            b,
        })
    }

    /// `A_π`: elements of `A` whose order is a π-number.
    pub fn a_pi(&self, g: &FiniteGroup, primes: &[u64]) -> ElementSet {
        subgroup::pi_elements(g, &self.a, primes)
    }

    pub fn b_pi(&self, g: &FiniteGroup, primes: &[u64]) -> ElementSet {
        subgroup::pi_elements(g, &self.b, primes)
    }
}

/// All unordered pairs `{A, B}` of cyclic subgroups with `G = AB`.
///
/// Each pair is listed once with `A ≤ B` in `(size, elements)` order, and the
/// list is sorted by `(A, B)`.
pub fn find_cyclic_factorizations(g: &FiniteGroup) -> Vec<Factorization> {
    let cyc = cyclic_subgroups(g);
    let n = g.order();
    let mut out = Vec::new();
    for (i, (a, _)) in cyc.iter().enumerate() {
        for (b, _) in &cyc[i..] {
            if a.len() * b.len() < n {
                continue;
            }
            if a.len() * b.len() != n * a.intersection(b).len() {
                continue;
            }
            if let Ok(f) = Factorization::new(g, a.clone(), b.clone()) {
                out.push(f);
            }
        }
    }
    out
}

/// `G_π = A_π B_π`, checked to be a subgroup of order the π-part of `|G|`.
pub fn sylow_subgroup(g: &FiniteGroup, f: &Factorization, primes: &[u64]) -> Result<ElementSet> {
    let prod = raw_product(g, &f.a_pi(g, primes), &f.b_pi(g, primes));
    let want = arith::pi_part(g.order() as u64, primes) as usize;
    if prod.len() == want && g.is_subgroup(&prod) {
        Ok(prod)
    } else {
        Err(Error::ProductNotSubgroup(format!(
            "A_πB_π for π = {primes:?} ({} elements, expected {want})",
            prod.len()
        )))
    }
}

/// Generic cross-check: the first subgroup in the lattice whose order is
/// the π-part of `|G|`.
pub fn hall_subgroup_by_scan(g: &FiniteGroup, lattice: &SubgroupLattice, primes: &[u64]) -> Option<ElementSet> {
    let want = arith::pi_part(g.order() as u64, primes) as usize;
    lattice.of_order(want).next().map(|i| lattice.get(i).clone())
}

/// One Sylow subgroup for every prime dividing `|G|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylowBasis {
    pub by_prime: BTreeMap<u64, ElementSet>,
}

/// The basis `{A_p B_p}`, checked to be pairwise permutable.
pub fn sylow_basis(g: &FiniteGroup, f: &Factorization) -> Result<SylowBasis> {
    let mut by_prime = BTreeMap::new();
    for p in arith::prime_divisors(g.order() as u64) {
        by_prime.insert(p, sylow_subgroup(g, f, &[p])?);
    }
    let primes: Vec<u64> = by_prime.keys().copied().collect();
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            let (gp, gq) = (&by_prime[&p], &by_prime[&q]);
            let pq = raw_product(g, gp, gq);
            if pq != raw_product(g, gq, gp) || !g.is_subgroup(&pq) {
                return Err(Error::BasisNotPermutable { p, q });
            }
        }
    }
    Ok(SylowBasis { by_prime })
}

/// `⋂_p N_G(G_p)`.
pub fn basis_normalizer(g: &FiniteGroup, basis: &SylowBasis) -> ElementSet {
    let mut acc = g.whole();
    for gp in basis.by_prime.values() {
        acc.intersect_with(&subgroup::normalizer_unchecked(g, gp));
    }
    acc
}

/// `(A*, B*)` with `A* = ⋂_p N_A(G_p)` and `B* = ⋂_p N_B(G_p)`.
pub fn factor_stabilizers(g: &FiniteGroup, f: &Factorization) -> Result<(ElementSet, ElementSet)> {
    let n = basis_normalizer(g, &sylow_basis(g, f)?);
    Ok((f.a.intersection(&n), f.b.intersection(&n)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisNormalizerCheck {
    pub normalizer: ElementSet,
    pub a_star: ElementSet,
    pub b_star: ElementSet,
    /// Basis normalizer equals `A*B*` as a set.
    pub equals_product: bool,
    pub nilpotent: bool,
}

impl BasisNormalizerCheck {
    pub fn holds(&self) -> bool {
        self.equals_product && self.nilpotent
    }
}

pub fn check_basis_normalizer(g: &FiniteGroup, f: &Factorization) -> Result<BasisNormalizerCheck> {
    let basis = sylow_basis(g, f)?;
    let normalizer = basis_normalizer(g, &basis);
    let a_star = f.a.intersection(&normalizer);
    let b_star = f.b.intersection(&normalizer);
    let equals_product = raw_product(g, &a_star, &b_star) == normalizer;
    let nilpotent = subgroup::is_nilpotent_subgroup(g, &normalizer);
    Ok(BasisNormalizerCheck {
        normalizer,
        a_star,
        b_star,
        equals_product,
        nilpotent,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerPair {
    pub p: u64,
    pub q: u64,
    /// `G_q ≤ N_G(G_p)`.
    pub normalizes: bool,
    /// `G_p G_q` is the Hall `{p, q}`-subgroup.
    pub hall_product: bool,
}

/// For every pair of primes `p > q` dividing `|G|`: `G_q` normalizes `G_p`
/// and `G_p G_q` is a Hall `{p, q}`-subgroup.
pub fn check_sylow_tower(g: &FiniteGroup, f: &Factorization) -> Vec<TowerPair> {
    let primes = arith::prime_divisors(g.order() as u64);
    let sylow: BTreeMap<u64, Option<ElementSet>> = primes
        .iter()
        .map(|&p| (p, sylow_subgroup(g, f, &[p]).ok()))
        .collect();
    let mut out = Vec::new();
    for &p in primes.iter().rev() {
        for &q in primes.iter().filter(|&&q| q < p) {
            let verdict = match (&sylow[&p], &sylow[&q]) {
                (Some(gp), Some(gq)) => {
                    let normalizes = gq.is_subset(&subgroup::normalizer_unchecked(g, gp));
                    let prod = raw_product(g, gp, gq);
                    let want = arith::pi_part(g.order() as u64, &[p, q]) as usize;
                    (normalizes, prod.len() == want && g.is_subgroup(&prod))
                }
                _ => (false, false),
            };
            out.push(TowerPair {
                p,
                q,
                normalizes: verdict.0,
                hall_product: verdict.1,
            });
        }
    }
    out
}

/// `G = A₁A₂…Aₙ` with pairwise permutable cyclic factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiProduct {
    pub factors: Vec<ElementSet>,
}

fn iterated_product(g: &FiniteGroup, sets: &[ElementSet]) -> ElementSet {
    let mut acc = g.trivial();
    for s in sets {
        acc = raw_product(g, &acc, s);
    }
    acc
}

pub fn build_multi_product(g: &FiniteGroup, factors: Vec<ElementSet>) -> Result<MultiProduct> {
    for (i, f) in factors.iter().enumerate() {
        g.check_set(f)?;
        if !g.is_subgroup(f) || !subgroup::is_cyclic(g, f) {
            return Err(Error::NotCyclic(i));
        }
    }
    let all = iterated_product(g, &factors);
    if all.len() != g.order() {
        return Err(Error::ProductNotWhole {
            found: all.len(),
            order: g.order(),
        });
    }
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            if raw_product(g, &factors[i], &factors[j]) != raw_product(g, &factors[j], &factors[i]) {
                return Err(Error::NotPermutable(i, j));
            }
        }
    }
    Ok(MultiProduct { factors })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LargestPrimeReport {
    /// Largest prime dividing `|G|`; `None` for the trivial group.
    pub prime: Option<u64>,
    /// `P₁P₂…Pₙ`.
    pub p_product: ElementSet,
    /// `Q₁Q₂…Qₙ`.
    pub q_product: ElementSet,
    pub p_is_normal_sylow: bool,
    pub q_is_complement: bool,
}

impl LargestPrimeReport {
    pub fn holds(&self) -> bool {
        self.p_is_normal_sylow && self.q_is_complement
    }
}

/// For the largest prime `p`, the product of the factors' Sylow
/// `p`-subgroups is a normal Sylow subgroup and the product of their
/// `p`-complements complements it.
pub fn largest_prime_sylow_normal(g: &FiniteGroup, mp: &MultiProduct) -> LargestPrimeReport {
    let primes = arith::prime_divisors(g.order() as u64);
    let Some(&p) = primes.last() else {
        return LargestPrimeReport {
            prime: None,
            p_product: g.trivial(),
            q_product: g.trivial(),
            p_is_normal_sylow: true,
            q_is_complement: true,
        };
    };
    let rest: Vec<u64> = primes[..primes.len() - 1].to_vec();
    let ps: Vec<ElementSet> = mp
        .factors
        .iter()
        .map(|a| subgroup::pi_elements(g, a, &[p]))
        .collect();
    let qs: Vec<ElementSet> = mp
        .factors
        .iter()
        .map(|a| subgroup::pi_elements(g, a, &rest))
        .collect();
    let pp = iterated_product(g, &ps);
    let qq = iterated_product(g, &qs);
    let p_part = arith::pi_part(g.order() as u64, &[p]) as usize;
    let p_is_normal_sylow =
        pp.len() == p_part && g.is_subgroup(&pp) && subgroup::is_normal(g, &pp);
    let q_is_complement = g.is_subgroup(&qq)
        && pp.intersection(&qq).is_trivial()
        && raw_product(g, &pp, &qq) == g.whole();
    LargestPrimeReport {
        prime: Some(p),
        p_product: pp,
        q_product: qq,
        p_is_normal_sylow,
        q_is_complement,
    }
}

/// Smallest lattice member `E ⊇ h` with `E = (A ∩ E)(B ∩ E)`.
pub fn minimal_factorized_overgroup(
    g: &FiniteGroup,
    lattice: &SubgroupLattice,
    f: &Factorization,
    h: &ElementSet,
) -> Result<ElementSet> {
    require_subgroup(g, h)?;
    let found = lattice.subgroups().iter().find(|e| {
        h.is_subset(e) && raw_product(g, &f.a.intersection(e), &f.b.intersection(e)) == **e
    });
    Ok(found.cloned().unwrap_or_else(|| g.whole()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build, GroupRecipe, Limits};
    use crate::lattice::all_subgroups;

    fn grp(r: GroupRecipe) -> FiniteGroup {
        build(&r, &Limits::default()).unwrap()
    }

    fn set(n: usize, xs: &[u32]) -> ElementSet {
        ElementSet::from_elems(n, xs.iter().map(|&x| Elem(x)))
    }

    // D3 with index 2i + j: rotations are even, reflections odd.
    fn d3_parts() -> (FiniteGroup, ElementSet, ElementSet) {
        let d3 = grp(GroupRecipe::dihedral(3));
        (d3, set(6, &[0, 2, 4]), set(6, &[0, 1]))
    }

    #[test]
    fn product_set_examples() {
        let (d3, c3, s) = d3_parts();
        assert_eq!(product_set(&d3, &c3, &d3.trivial()).unwrap(), c3);
        assert_eq!(product_set(&d3, &c3, &s).unwrap(), d3.whole());
        assert!(permutes(&d3, &c3, &s).unwrap());
        let s2 = set(6, &[0, 3]);
        assert!(!permutes(&d3, &s, &s2).unwrap());
        assert_eq!(product_set(&d3, &s, &s2).unwrap().len(), 4);
        let klein = grp(GroupRecipe::dihedral(2));
        let (x, y) = (set(4, &[0, 1]), set(4, &[0, 2]));
        assert_eq!(product_set(&klein, &x, &y).unwrap(), klein.whole());
        assert!(permutes(&klein, &x, &y).unwrap());
        assert_eq!(product_set(&d3, &set(6, &[0, 2]), &s), Err(Error::NotSubgroup));
    }

    #[test]
    fn factorization_search() {
        let c12 = grp(GroupRecipe::cyclic(12));
        let fs = find_cyclic_factorizations(&c12);
        assert!(fs.iter().any(|f| f.a.is_trivial() && f.b == c12.whole()));
        assert!(fs.windows(2).all(|w| (&w[0].a, &w[0].b) < (&w[1].a, &w[1].b)));

        let s4 = grp(GroupRecipe::permutations(4, &["(1 2 3 4)", "(1 2)"]));
        assert!(find_cyclic_factorizations(&s4).is_empty());
        let a4 = grp(GroupRecipe::permutations(4, &["(1 2 3)", "(1 2)(3 4)"]));
        assert!(find_cyclic_factorizations(&a4).is_empty());

        let q8 = grp(GroupRecipe::quaternion(8));
        let fs = find_cyclic_factorizations(&q8);
        assert_eq!(fs.len(), 3);
        for f in &fs {
            assert_eq!((f.a.len(), f.b.len(), f.a.intersection(&f.b).len()), (4, 4, 2));
        }
    }

    #[test]
    fn factorization_validation() {
        let (d3, c3, s) = d3_parts();
        assert!(Factorization::new(&d3, c3.clone(), s.clone()).is_ok());
        assert!(matches!(
            Factorization::new(&d3, s.clone(), set(6, &[0, 3])),
            Err(Error::InvalidFactorization(_))
        ));
        assert!(matches!(
            Factorization::new(&d3, d3.whole(), d3.trivial()),
            Err(Error::InvalidFactorization(_))
        ));
    }

    #[test]
    fn sylow_examples() {
        let (d3, c3, s) = d3_parts();
        let f = Factorization::new(&d3, c3.clone(), s.clone()).unwrap();
        assert!(sylow_subgroup(&d3, &f, &[5]).unwrap().is_trivial());
        assert_eq!(sylow_subgroup(&d3, &f, &[3]).unwrap(), c3);
        assert_eq!(sylow_subgroup(&d3, &f, &[2, 3]).unwrap(), d3.whole());

        let basis = sylow_basis(&d3, &f).unwrap();
        assert_eq!(basis.by_prime[&3], c3);
        assert_eq!(basis.by_prime[&2], s);
        assert_eq!(basis_normalizer(&d3, &basis), s);
        let (a_star, b_star) = factor_stabilizers(&d3, &f).unwrap();
        assert!(a_star.is_trivial());
        assert_eq!(b_star, s);
        assert!(check_basis_normalizer(&d3, &f).unwrap().holds());
    }

    #[test]
    fn nilpotent_and_p_group_stabilizers() {
        let c12 = grp(GroupRecipe::cyclic(12));
        let f = Factorization::new(&c12, c12.whole(), c12.trivial()).unwrap();
        let chk = check_basis_normalizer(&c12, &f).unwrap();
        assert_eq!(chk.normalizer, c12.whole());
        assert_eq!(chk.a_star, f.a);
        assert_eq!(chk.b_star, f.b);

        let q8 = grp(GroupRecipe::quaternion(8));
        for f in find_cyclic_factorizations(&q8) {
            let chk = check_basis_normalizer(&q8, &f).unwrap();
            assert_eq!(chk.normalizer, q8.whole());
            assert!(chk.holds());
        }
    }

    #[test]
    fn tower_examples() {
        let c8 = grp(GroupRecipe::cyclic(8));
        let f = Factorization::new(&c8, c8.whole(), c8.trivial()).unwrap();
        assert!(check_sylow_tower(&c8, &f).is_empty());

        let (d3, c3, s) = d3_parts();
        let f = Factorization::new(&d3, c3, s).unwrap();
        let t = check_sylow_tower(&d3, &f);
        assert_eq!(
            t,
            vec![TowerPair {
                p: 3,
                q: 2,
                normalizes: true,
                hall_product: true
            }]
        );

        let g = grp(GroupRecipe::cyclic_semidirect(3, 4, -1));
        // (n, k) has index 4n + k
        let a = set(12, &[0, 4, 8]);
        let b = set(12, &[0, 1, 2, 3]);
        let f = Factorization::new(&g, a, b).unwrap();
        let t = check_sylow_tower(&g, &f);
        assert!(t.iter().all(|p| p.normalizes && p.hall_product));
    }

    #[test]
    fn multi_products() {
        let c6 = grp(GroupRecipe::cyclic(6));
        assert!(build_multi_product(&c6, vec![c6.whole()]).is_ok());
        let (d3, c3, s) = d3_parts();
        let mp = build_multi_product(&d3, vec![c3.clone(), s.clone()]).unwrap();
        let r = largest_prime_sylow_normal(&d3, &mp);
        assert_eq!(r.prime, Some(3));
        assert_eq!(r.p_product, c3);
        assert_eq!(r.q_product, s);
        assert!(r.holds());

        assert_eq!(
            build_multi_product(&d3, vec![c3.clone(), s.clone(), set(6, &[0, 3])]),
            Err(Error::NotPermutable(1, 2))
        );
        assert_eq!(build_multi_product(&d3, vec![d3.whole()]), Err(Error::NotCyclic(0)));

        let s4 = grp(GroupRecipe::permutations(4, &["(1 2 3 4)", "(1 2 3)"]));
        let four = subgroup::cyclic_subgroup(&s4, Elem(1));
        let three = subgroup::cyclic_subgroup(&s4, Elem(2));
        assert_eq!((four.len(), three.len()), (4, 3));
        assert!(matches!(
            build_multi_product(&s4, vec![four, three]),
            Err(Error::ProductNotWhole { found: 12, order: 24 })
        ));

        let g = grp(GroupRecipe::cyclic_semidirect(3, 4, -1));
        let mp = build_multi_product(&g, vec![set(12, &[0, 4, 8]), set(12, &[0, 1, 2, 3])]).unwrap();
        let r = largest_prime_sylow_normal(&g, &mp);
        assert_eq!(r.prime, Some(3));
        assert_eq!(r.p_product.len(), 3);
        assert_eq!(r.q_product.len(), 4);
        assert!(r.holds());

        let q8 = grp(GroupRecipe::quaternion(8));
        let f = &find_cyclic_factorizations(&q8)[0];
        let mp = build_multi_product(&q8, vec![f.a.clone(), f.b.clone()]).unwrap();
        let r = largest_prime_sylow_normal(&q8, &mp);
        assert_eq!(r.p_product, q8.whole());
        assert!(r.q_product.is_trivial());
    }

    #[test]
    fn factorized_overgroups() {
        let (d3, c3, s) = d3_parts();
        let lat = all_subgroups(&d3, &Limits::default()).unwrap();
        let f = Factorization::new(&d3, c3.clone(), s.clone()).unwrap();
        assert_eq!(minimal_factorized_overgroup(&d3, &lat, &f, &c3).unwrap(), c3);
        assert_eq!(minimal_factorized_overgroup(&d3, &lat, &f, &d3.whole()).unwrap(), d3.whole());
        assert_eq!(minimal_factorized_overgroup(&d3, &lat, &f, &s).unwrap(), s);
        let other = set(6, &[0, 3]);
        assert_eq!(minimal_factorized_overgroup(&d3, &lat, &f, &other).unwrap(), d3.whole());
    }
}
