//! Generated subgroups, normalizers, commutators and the standard series.

use crate::arith;
use crate::elemset::ElementSet;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};

/// Incrementally grows a subgroup one generator at a time (Dimino's method).
///
/// The current subgroup is kept both as a bitset and as an element list so
/// that whole right cosets can be appended when a generator is added.
#[derive(Clone, Debug)]
pub struct SubgroupBuilder<'g> {
    group: &'g FiniteGroup,
    set: ElementSet,
    elems: Vec<Elem>,
    gens: Vec<Elem>,
}

impl<'g> SubgroupBuilder<'g> {
    pub fn trivial(group: &'g FiniteGroup) -> Self {
        SubgroupBuilder {
            group,
            set: group.trivial(),
            elems: vec![Elem::IDENTITY],
            gens: Vec::new(),
        }
    }

    /// Starts from a known subgroup and a generating set for it.
    pub fn from_parts(group: &'g FiniteGroup, set: ElementSet, gens: Vec<Elem>) -> Self {
        let elems = set.iter().collect();
        SubgroupBuilder {
            group,
            set,
            elems,
            gens,
        }
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.set.contains(x)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    pub fn set(&self) -> &ElementSet {
        &self.set
    }

    pub fn into_set(self) -> ElementSet {
        self.set
    }

    /// Adds `x` as a generator; returns false when `x` was already inside.
    pub fn add(&mut self, x: Elem) -> bool {
        if self.set.contains(x) {
            return false;
        }
        let g = self.group;
        let old: Vec<Elem> = self.elems.clone();
        self.gens.push(x);
        let mut reps = vec![x];
        for &h in &old {
            let y = g.mul(h, x);
            self.set.insert(y);
            self.elems.push(y);
        }
        let mut pos = 0;
        while pos < reps.len() {
            let r = reps[pos];
            pos += 1;
            for i in 0..self.gens.len() {
                let rs = g.mul(r, self.gens[i]);
                if !self.set.contains(rs) {
                    reps.push(rs);
                    for &h in &old {
                        let y = g.mul(h, rs);
                        self.set.insert(y);
                        self.elems.push(y);
                    }
                }
            }
        }
        true
    }
}

pub fn require_subgroup(g: &FiniteGroup, s: &ElementSet) -> Result<()> {
    g.check_set(s)?;
    if g.is_subgroup(s) {
        Ok(())
    } else {
        Err(Error::NotSubgroup)
    }
}

/// Smallest subgroup containing `seed`.
pub fn closure(g: &FiniteGroup, seed: &ElementSet) -> Result<ElementSet> {
    g.check_set(seed)?;
    if seed.is_empty() {
        return Err(Error::EmptySeed);
    }
    Ok(generate(g, seed.iter()))
}

/// Subgroup generated by the given elements (the trivial group when empty).
pub fn generate<I: IntoIterator<Item = Elem>>(g: &FiniteGroup, gens: I) -> ElementSet {
    let mut b = SubgroupBuilder::trivial(g);
    for x in gens {
        b.add(x);
    }
    b.into_set()
}

pub fn cyclic_subgroup(g: &FiniteGroup, x: Elem) -> ElementSet {
    let mut s = g.trivial();
    let mut y = x;
    while y != Elem::IDENTITY {
        s.insert(y);
        y = g.mul(y, x);
    }
    s
}

/// A subgroup is cyclic when it has an element of full order.
pub fn is_cyclic(g: &FiniteGroup, h: &ElementSet) -> bool {
    let n = h.len() as u32;
    h.iter().any(|x| g.elem_order(x) == n)
}

/// Primes dividing the order of some element of `s`.
pub fn primes_of(g: &FiniteGroup, s: &ElementSet) -> Vec<u64> {
    let mut out: Vec<u64> = s
        .iter()
        .flat_map(|x| arith::prime_divisors(g.elem_order(x) as u64))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Elements of `s` whose order involves only primes in `primes`.
pub fn pi_elements(g: &FiniteGroup, s: &ElementSet, primes: &[u64]) -> ElementSet {
    ElementSet::from_elems(
        g.order(),
        s.iter()
            .filter(|&x| arith::is_pi_number(g.elem_order(x) as u64, primes)),
    )
}

pub fn normalizer(g: &FiniteGroup, h: &ElementSet) -> Result<ElementSet> {
    require_subgroup(g, h)?;
    Ok(normalizer_unchecked(g, h))
}

pub(crate) fn normalizer_unchecked(g: &FiniteGroup, h: &ElementSet) -> ElementSet {
    let members: Vec<Elem> = h.iter().collect();
    ElementSet::from_elems(
        g.order(),
        g.elements()
            .filter(|&x| members.iter().all(|&y| h.contains(g.conj(y, x)))),
    )
}

pub fn centralizer(g: &FiniteGroup, h: &ElementSet) -> Result<ElementSet> {
    require_subgroup(g, h)?;
    let members: Vec<Elem> = h.iter().collect();
    Ok(ElementSet::from_elems(
        g.order(),
        g.elements()
            .filter(|&x| members.iter().all(|&y| g.mul(x, y) == g.mul(y, x))),
    ))
}

pub fn center(g: &FiniteGroup) -> ElementSet {
    centralizer(g, &g.whole()).expect("whole group is a subgroup")
}

/// Largest normal subgroup of `g` inside `h`.
pub fn core(g: &FiniteGroup, h: &ElementSet) -> Result<ElementSet> {
    require_subgroup(g, h)?;
    Ok(ElementSet::from_elems(
        g.order(),
        h.iter()
            .filter(|&y| g.elements().all(|x| h.contains(g.conj(y, x)))),
    ))
}

/// Smallest normal subgroup of `g` containing `h`.
pub fn normal_closure(g: &FiniteGroup, h: &ElementSet) -> Result<ElementSet> {
    require_subgroup(g, h)?;
    let mut conjugates = g.trivial();
    for y in h {
        for x in g.elements() {
            conjugates.insert(g.conj(y, x));
        }
    }
    Ok(generate(g, conjugates.iter()))
}

pub fn is_normal(g: &FiniteGroup, h: &ElementSet) -> bool {
    g.is_normal_set(h)
}

/// `[x, y]`: the subgroup generated by all `a⁻¹b⁻¹ab` with `a ∈ x`, `b ∈ y`.
pub fn commutator(g: &FiniteGroup, x: &ElementSet, y: &ElementSet) -> Result<ElementSet> {
    require_subgroup(g, x)?;
    require_subgroup(g, y)?;
    Ok(commutator_unchecked(g, x, y))
}

pub(crate) fn commutator_unchecked(g: &FiniteGroup, x: &ElementSet, y: &ElementSet) -> ElementSet {
    let mut b = SubgroupBuilder::trivial(g);
    let ys: Vec<Elem> = y.iter().collect();
    for a in x {
        for &c in &ys {
            b.add(g.comm(a, c));
        }
    }
    b.into_set()
}

/// `h, h', h'', …` until the terms stop shrinking.
pub fn derived_series_of(g: &FiniteGroup, h: &ElementSet) -> Vec<ElementSet> {
    let mut series = vec![h.clone()];
    loop {
        let last = series.last().expect("non-empty");
        let next = commutator_unchecked(g, last, last);
        if next == *last {
            return series;
        }
        series.push(next);
    }
}

/// `γ₁ = h, γᵢ₊₁ = [γᵢ, h]` until the terms stop shrinking.
pub fn lower_central_series_of(g: &FiniteGroup, h: &ElementSet) -> Vec<ElementSet> {
    let mut series = vec![h.clone()];
    loop {
        let last = series.last().expect("non-empty");
        let next = commutator_unchecked(g, last, h);
        if next == *last {
            return series;
        }
        series.push(next);
    }
}

pub fn derived_series(g: &FiniteGroup) -> Vec<ElementSet> {
    derived_series_of(g, &g.whole())
}

pub fn lower_central_series(g: &FiniteGroup) -> Vec<ElementSet> {
    lower_central_series_of(g, &g.whole())
}

/// Smallest normal subgroup with nilpotent quotient: the stable term of the
/// lower central series.
pub fn nilpotent_residual(g: &FiniteGroup) -> ElementSet {
    lower_central_series(g).pop().expect("non-empty")
}

pub fn is_nilpotent_subgroup(g: &FiniteGroup, h: &ElementSet) -> bool {
    lower_central_series_of(g, h)
        .last()
        .is_some_and(ElementSet::is_trivial)
}

pub fn is_soluble_subgroup(g: &FiniteGroup, h: &ElementSet) -> bool {
    derived_series_of(g, h)
        .last()
        .is_some_and(ElementSet::is_trivial)
}

/// Derived length at most two.
pub fn is_metabelian_subgroup(g: &FiniteGroup, h: &ElementSet) -> bool {
    let series = derived_series_of(g, h);
    series.len() <= 3 && series.last().is_some_and(ElementSet::is_trivial)
}

/// True when every element of `x` commutes with every element of `y`.
pub fn commute_elementwise(g: &FiniteGroup, x: &ElementSet, y: &ElementSet) -> bool {
    let ys: Vec<Elem> = y.iter().collect();
    x.iter()
        .all(|a| ys.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}
