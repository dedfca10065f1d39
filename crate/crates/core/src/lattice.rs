//! Full subgroup lattices, minimal generator counts and Prüfer rank.
//!
//! The lattice is enumerated by cyclic extension: start from every cyclic
//! subgroup and join each known subgroup with each cyclic subgroup it does
//! not contain until nothing new appears. Every join `⟨H, x⟩` is recorded,
//! which gives the minimal generator count of every member by a pass over
//! the lattice in increasing size: `d(K) = min d(H) + 1` over recorded
//! joins `⟨H, x⟩ = K`.

use std::collections::HashMap;

use crate::elemset::ElementSet;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Limits};
use crate::subgroup::{self, SubgroupBuilder};

#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    subgroups: Vec<ElementSet>,
    gens: Vec<Vec<Elem>>,
    index: HashMap<ElementSet, usize>,
    cyclic: Vec<usize>,
    min_gens: Vec<u32>,
    /// `supersets[i]` holds `j` whenever subgroup `i ⊆` subgroup `j`.
    supersets: Vec<ElementSet>,
}

impl SubgroupLattice {
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    /// Members sorted by `(size, elements)`; index 0 is the trivial group and
    /// the last index is the whole group.
    pub fn subgroups(&self) -> &[ElementSet] {
        &self.subgroups
    }

    pub fn get(&self, i: usize) -> &ElementSet {
        &self.subgroups[i]
    }

    pub fn generators(&self, i: usize) -> &[Elem] {
        &self.gens[i]
    }

    pub fn index_of(&self, s: &ElementSet) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Indices of the cyclic members.
    pub fn cyclic(&self) -> &[usize] {
        &self.cyclic
    }

    /// Minimal number of generators of member `i`.
    pub fn min_generators(&self, i: usize) -> u32 {
        self.min_gens[i]
    }

    pub fn is_contained(&self, i: usize, j: usize) -> bool {
        self.supersets[i].contains(Elem(j as u32))
    }

    /// Indices of members contained in member `i`.
    pub fn below(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&j| self.is_contained(j, i))
    }

    /// Prüfer rank of member `i`: the largest generator count of a member
    /// contained in it.
    pub fn rank_of(&self, i: usize) -> u32 {
        self.below(i).map(|j| self.min_gens[j]).max().unwrap_or(0)
    }

    pub fn rank_of_set(&self, s: &ElementSet) -> Option<u32> {
        self.index_of(s).map(|i| self.rank_of(i))
    }

    /// Prüfer rank of the whole group; 0 for the trivial group.
    pub fn prufer_rank(&self) -> u32 {
        self.min_gens.iter().copied().max().unwrap_or(0)
    }

    pub fn whole_index(&self) -> usize {
        self.len() - 1
    }

    pub fn normal_indices<'a>(&'a self, g: &'a FiniteGroup) -> impl Iterator<Item = usize> + 'a {
        (0..self.len()).filter(move |&i| subgroup::is_normal(g, &self.subgroups[i]))
    }

    pub fn of_order(&self, order: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.subgroups[i].len() == order)
    }

    /// True when the intersection of every pair of members is a member.
    pub fn is_intersection_closed(&self) -> bool {
        (0..self.len()).all(|i| {
            (i + 1..self.len()).all(|j| {
                self.index
                    .contains_key(&self.subgroups[i].intersection(&self.subgroups[j]))
            })
        })
    }
}

/// Enumerates every subgroup of `g`.
pub fn all_subgroups(g: &FiniteGroup, limits: &Limits) -> Result<SubgroupLattice> {
    let n = g.order();
    if n > limits.lattice_bound {
        return Err(Error::OrderBound {
            order: n,
            bound: limits.lattice_bound,
        });
    }
    let mut subgroups: Vec<ElementSet> = Vec::new();
    let mut gens: Vec<Vec<Elem>> = Vec::new();
    let mut index: HashMap<ElementSet, usize> = HashMap::new();
    let mut cyclic_reps: Vec<(usize, Elem)> = Vec::new();

    for x in g.elements() {
        let c = subgroup::cyclic_subgroup(g, x);
        if !index.contains_key(&c) {
            index.insert(c.clone(), subgroups.len());
            if x != Elem::IDENTITY {
                cyclic_reps.push((subgroups.len(), x));
            }
            subgroups.push(c);
            gens.push(if x == Elem::IDENTITY { vec![] } else { vec![x] });
        }
    }

    let mut joins: Vec<(u32, u32)> = Vec::new();
    let mut next = 0;
    while next < subgroups.len() {
        let h = next;
        next += 1;
        let base = SubgroupBuilder::from_parts(g, subgroups[h].clone(), gens[h].clone());
        for &(_, x) in &cyclic_reps {
            if base.contains(x) {
                continue;
            }
            let mut b = base.clone();
            b.add(x);
            let k = match index.get(b.set()) {
                Some(&k) => k,
                None => {
                    let k = subgroups.len();
                    gens.push(b.gens().to_vec());
                    let set = b.into_set();
                    index.insert(set.clone(), k);
                    subgroups.push(set);
                    k
                }
            };
            joins.push((h as u32, k as u32));
        }
    }

    // Sort by (size, elements) and renumber.
    let mut order: Vec<usize> = (0..subgroups.len()).collect();
    order.sort_by(|&a, &b| subgroups[a].cmp(&subgroups[b]));
    let mut rank_of = vec![0usize; subgroups.len()];
    for (new, &old) in order.iter().enumerate() {
        rank_of[old] = new;
    }
    let subgroups: Vec<ElementSet> = order.iter().map(|&i| subgroups[i].clone()).collect();
    let gens: Vec<Vec<Elem>> = order.iter().map(|&i| gens[i].clone()).collect();
    let index: HashMap<ElementSet, usize> = subgroups
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    let mut cyclic: Vec<usize> = cyclic_reps.iter().map(|&(i, _)| rank_of[i]).collect();
    cyclic.push(0);
    cyclic.sort_unstable();

    let m = subgroups.len();
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (h, k) in joins {
        out_edges[rank_of[h as usize]].push(rank_of[k as usize]);
    }
    let mut min_gens = vec![u32::MAX; m];
    min_gens[0] = 0;
    // Every recorded join strictly grows the subgroup, so increasing index
    // order finalizes each count before it is propagated.
    for h in 0..m {
        debug_assert!(min_gens[h] != u32::MAX, "subgroup {h} unreachable");
        let d = min_gens[h] + 1;
        for &k in &out_edges[h] {
            if d < min_gens[k] {
                min_gens[k] = d;
            }
        }
    }

    let mut supersets = vec![ElementSet::empty(m); m];
    for i in 0..m {
        for j in i..m {
            if subgroups[i].is_subset(&subgroups[j]) {
                supersets[i].insert(Elem(j as u32));
            }
        }
    }

    Ok(SubgroupLattice {
        subgroups,
        gens,
        index,
        cyclic,
        min_gens,
        supersets,
    })
}

/// Smallest number of elements generating `h`, by exhaustive search over
/// subsets of increasing size.
///
/// Candidates are taken in index order, one per cyclic subgroup of `h`, and
/// an element already inside the subgroup generated by the chosen prefix is
/// never chosen.
pub fn minimal_generators(g: &FiniteGroup, h: &ElementSet) -> Result<u32> {
    subgroup::require_subgroup(g, h)?;
    if h.is_trivial() {
        return Ok(0);
    }
    let mut seen_cyclic = std::collections::HashSet::new();
    let candidates: Vec<Elem> = h
        .iter()
        .filter(|&x| x != Elem::IDENTITY && seen_cyclic.insert(subgroup::cyclic_subgroup(g, x)))
        .collect();
    let target = h.len();
    for k in 1.. {
        if search(&candidates, 0, k, SubgroupBuilder::trivial(g), target) {
            return Ok(k);
        }
    }
    unreachable!("the candidates generate h")
}

fn search(cands: &[Elem], start: usize, left: u32, b: SubgroupBuilder<'_>, target: usize) -> bool {
    if b.len() == target {
        return true;
    }
    if left == 0 {
        return false;
    }
    for i in start..cands.len() {
        let x = cands[i];
        if b.contains(x) {
            continue;
        }
        let mut next = b.clone();
        next.add(x);
        if search(cands, i + 1, left - 1, next, target) {
            return true;
        }
    }
    false
}

/// Prüfer rank of `g`: the largest minimal generator count over all
/// subgroups.
pub fn prufer_rank(g: &FiniteGroup, limits: &Limits) -> Result<u32> {
    Ok(all_subgroups(g, limits)?.prufer_rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build, GroupRecipe};

    fn grp(r: GroupRecipe) -> FiniteGroup {
        build(&r, &Limits::default()).unwrap()
    }

    fn lat(g: &FiniteGroup) -> SubgroupLattice {
        all_subgroups(g, &Limits::default()).unwrap()
    }

    #[test]
    fn subgroup_counts() {
        for p in [2, 3, 5, 7, 31] {
            assert_eq!(lat(&grp(GroupRecipe::cyclic(p))).len(), 2);
        }
        assert_eq!(lat(&grp(GroupRecipe::cyclic(12))).len(), 6);
        assert_eq!(lat(&grp(GroupRecipe::quaternion(8))).len(), 6);
        assert_eq!(lat(&grp(GroupRecipe::dihedral(3))).len(), 6);
        assert_eq!(lat(&grp(GroupRecipe::dihedral(4))).len(), 10);
        let s4 = grp(GroupRecipe::permutations(4, &["(1 2 3 4)", "(1 2)"]));
        assert_eq!(lat(&s4).len(), 30);
        let s5 = grp(GroupRecipe::permutations(5, &["(1 2 3 4 5)", "(1 2)"]));
        let l = lat(&s5);
        assert_eq!(l.len(), 156);
        assert!(l.is_intersection_closed());
    }

    #[test]
    fn lattice_shape() {
        let g = grp(GroupRecipe::dihedral(6));
        let l = lat(&g);
        assert!(l.get(0).is_trivial());
        assert_eq!(*l.get(l.whole_index()), g.whole());
        assert!(l.subgroups().windows(2).all(|w| w[0] < w[1]));
        assert!(l.is_intersection_closed());
        for (i, s) in l.subgroups().iter().enumerate() {
            assert!(g.is_subgroup(s));
            assert_eq!(g.order() % s.len(), 0);
            assert_eq!(subgroup::generate(&g, l.generators(i).iter().copied()), *s);
        }
    }

    #[test]
    fn order_bound() {
        let g = grp(GroupRecipe::cyclic(20));
        let tight = Limits {
            lattice_bound: 16,
            ..Limits::default()
        };
        assert!(matches!(
            all_subgroups(&g, &tight),
            Err(Error::OrderBound { order: 20, bound: 16 })
        ));
    }

    #[test]
    fn minimal_generator_examples() {
        let c6 = grp(GroupRecipe::cyclic(6));
        assert_eq!(minimal_generators(&c6, &c6.whole()).unwrap(), 1);
        assert_eq!(minimal_generators(&c6, &c6.trivial()).unwrap(), 0);
        let klein = grp(GroupRecipe::dihedral(2));
        assert_eq!(minimal_generators(&klein, &klein.whole()).unwrap(), 2);
        let q8 = grp(GroupRecipe::quaternion(8));
        assert_eq!(minimal_generators(&q8, &q8.whole()).unwrap(), 2);
        let e8 = grp(GroupRecipe::direct(GroupRecipe::dihedral(2), GroupRecipe::cyclic(2)));
        assert_eq!(minimal_generators(&e8, &e8.whole()).unwrap(), 3);
        let junk = ElementSet::from_elems(6, [Elem(0), Elem(1)]);
        assert_eq!(minimal_generators(&c6, &junk), Err(Error::NotSubgroup));
    }

    #[test]
    fn rank_examples() {
        let l = Limits::default();
        assert_eq!(prufer_rank(&grp(GroupRecipe::cyclic(1)), &l).unwrap(), 0);
        for n in [2, 9, 30, 64] {
            assert_eq!(prufer_rank(&grp(GroupRecipe::cyclic(n)), &l).unwrap(), 1);
        }
        assert_eq!(prufer_rank(&grp(GroupRecipe::quaternion(8)), &l).unwrap(), 2);
        assert_eq!(prufer_rank(&grp(GroupRecipe::dihedral(4)), &l).unwrap(), 2);
        let e8 = grp(GroupRecipe::direct(GroupRecipe::dihedral(2), GroupRecipe::cyclic(2)));
        assert_eq!(prufer_rank(&e8, &l).unwrap(), 3);
    }

    #[test]
    fn lattice_counts_agree_with_exhaustive_search() {
        let groups = [
            grp(GroupRecipe::dihedral(6)),
            grp(GroupRecipe::quaternion(16)),
            grp(GroupRecipe::direct(GroupRecipe::dihedral(2), GroupRecipe::cyclic(6))),
            grp(GroupRecipe::permutations(4, &["(1 2 3 4)", "(1 2)"])),
        ];
        for g in &groups {
            let l = lat(g);
            for i in 0..l.len() {
                assert_eq!(
                    l.min_generators(i),
                    minimal_generators(g, l.get(i)).unwrap(),
                    "subgroup {i} of order {}",
                    l.get(i).len()
                );
            }
        }
    }
}
