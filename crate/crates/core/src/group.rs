//! Finite groups stored as full multiplication tables.
//!
//! Element `0` is always the identity. Constructors fix their element order:
//!
//! * `Cyclic(n)`: element `k` is the `k`-th power of the generator.
//! * `DirectProduct(G, K)`: the pair `(g, k)` has index `g * |K| + k`.
//! * `SemidirectProduct(N, K)`: the pair `(n, k)` has index `n * |K| + k` and
//!   multiplies as `(a, k)(b, l) = (a · k(b), kl)`.
//! * `Dihedral(n)`: `Cyclic(n) ⋊ Cyclic(2)` with the inverting action.
//! * `GeneralizedQuaternion(m)`: `x^i y^j` has index `2i + j`, where
//!   `x` has order `m/2`, `y² = x^{m/4}` and `y⁻¹xy = x⁻¹`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::elemset::ElementSet;
use crate::error::{Error, Result};
use crate::formats;

/// Index of an element inside one [`FiniteGroup`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Elem(pub u32);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Size limits applied when groups are built or analysed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_order: usize,
    /// Associativity is checked exhaustively up to this order.
    pub assoc_check_bound: usize,
    /// Largest group whose full subgroup lattice may be enumerated.
    pub lattice_bound: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 512,
            assoc_check_bound: 512,
            lattice_bound: 256,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<Elem>,
    element_orders: Vec<u32>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

impl FiniteGroup {
    /// Validates a Cayley table and derives inverses and element orders.
    pub fn from_table(rows: Vec<Vec<u32>>, limits: &Limits) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::TableInvalid("empty table".into()));
        }
        if n > limits.max_order {
            return Err(Error::OrderBound {
                order: n,
                bound: limits.max_order,
            });
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::TableInvalid(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x as usize >= n) {
                return Err(Error::TableInvalid(format!(
                    "row {i} contains {bad}, outside 0..{n}"
                )));
            }
            table.extend_from_slice(row);
        }
        Self::from_flat(n, table, limits)
    }

    pub(crate) fn from_flat(n: usize, table: Vec<u32>, limits: &Limits) -> Result<Self> {
        if n > limits.max_order {
            return Err(Error::OrderBound {
                order: n,
                bound: limits.max_order,
            });
        }
        debug_assert_eq!(table.len(), n * n);
        for i in 0..n {
            if table[i] as usize != i || table[i * n] as usize != i {
                return Err(Error::TableInvalid(format!(
                    "element 0 does not act as identity on element {i}"
                )));
            }
        }
        let mut seen = vec![0usize; n];
        for i in 0..n {
            for j in 0..n {
                let x = table[i * n + j] as usize;
                if seen[x] == 2 * i + 1 {
                    return Err(Error::TableInvalid(format!("row {i} repeats {x}")));
                }
                seen[x] = 2 * i + 1;
            }
        }
        for j in 0..n {
            for i in 0..n {
                let x = table[i * n + j] as usize;
                if seen[x] == 2 * j + 2 {
                    return Err(Error::TableInvalid(format!("column {j} repeats {x}")));
                }
                seen[x] = 2 * j + 2;
            }
        }
        if n <= limits.assoc_check_bound {
            for i in 0..n {
                for j in 0..n {
                    let ij = table[i * n + j] as usize;
                    for k in 0..n {
                        let jk = table[j * n + k] as usize;
                        if table[ij * n + k] != table[i * n + jk] {
                            return Err(Error::TableInvalid(format!(
                                "associativity fails for ({i}, {j}, {k})"
                            )));
                        }
                    }
                }
            }
        }
        let mut inverses = vec![Elem(0); n];
        for i in 0..n {
            let j = (0..n).find(|&j| table[i * n + j] == 0).expect("latin row");
            inverses[i] = Elem(j as u32);
        }
        let mut element_orders = vec![1u32; n];
        for (i, slot) in element_orders.iter_mut().enumerate() {
            let mut x = i;
            let mut k = 1;
            while x != 0 {
                x = table[x * n + i] as usize;
                k += 1;
            }
            *slot = k;
        }
        Ok(FiniteGroup {
            order: n,
            table,
            inverses,
            element_orders,
        })
    }

    pub fn cyclic(n: usize, limits: &Limits) -> Result<Self> {
        if n == 0 {
            return Err(Error::TableInvalid("cyclic group of order 0".into()));
        }
        let table = (0..n)
            .flat_map(|i| (0..n).map(move |j| ((i + j) % n) as u32))
            .collect();
        Self::from_flat(n, table, limits)
    }

    pub fn direct_product(left: &FiniteGroup, right: &FiniteGroup, limits: &Limits) -> Result<Self> {
        let (a, b) = (left.order, right.order);
        let n = a * b;
        if n > limits.max_order {
            return Err(Error::OrderBound {
                order: n,
                bound: limits.max_order,
            });
        }
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (x1, x2) = (x / b, x % b);
                let (y1, y2) = (y / b, y % b);
                let z1 = left.table[x1 * a + y1] as usize;
                let z2 = right.table[x2 * b + y2] as usize;
                table.push((z1 * b + z2) as u32);
            }
        }
        Self::from_flat(n, table, limits)
    }

    /// `normal ⋊ acting`, where `action[k]` is the automorphism of `normal`
    /// attached to element `k` of `acting`, given by its image list.
    pub fn semidirect_product(
        normal: &FiniteGroup,
        acting: &FiniteGroup,
        action: &[Vec<Elem>],
        limits: &Limits,
    ) -> Result<Self> {
        let (a, b) = (normal.order, acting.order);
        let n = a * b;
        if n > limits.max_order {
            return Err(Error::OrderBound {
                order: n,
                bound: limits.max_order,
            });
        }
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (x1, x2) = (x / b, x % b);
                let (y1, y2) = (y / b, y % b);
                let twisted = action[x2][y1].index();
                let z1 = normal.table[x1 * a + twisted] as usize;
                let z2 = acting.table[x2 * b + y2] as usize;
                table.push((z1 * b + z2) as u32);
            }
        }
        Self::from_flat(n, table, limits)
    }

    pub fn dihedral(n: usize, limits: &Limits) -> Result<Self> {
        let rot = Self::cyclic(n, limits)?;
        let flip = Self::cyclic(2, limits)?;
        let inv: Vec<Elem> = (0..n).map(|k| rot.inverses[k]).collect();
        let ident: Vec<Elem> = (0..n).map(|k| Elem(k as u32)).collect();
        Self::semidirect_product(&rot, &flip, &[ident, inv], limits)
    }

    pub fn generalized_quaternion(m: usize, limits: &Limits) -> Result<Self> {
        if m < 8 || !m.is_power_of_two() {
            return Err(Error::TableInvalid(format!(
                "generalized quaternion order must be a power of two ≥ 8, got {m}"
            )));
        }
        let h = m / 2;
        let mut table = Vec::with_capacity(m * m);
        for x in 0..m {
            for y in 0..m {
                let (i, b) = (x / 2, x % 2);
                let (c, d) = (y / 2, y % 2);
                let (e, f) = match (b, d) {
                    (0, _) => ((i + c) % h, d),
                    (_, 0) => ((i + h - c) % h, 1),
                    _ => ((i + h - c + m / 4) % h, 0),
                };
                table.push((e * 2 + f) as u32);
            }
        }
        Self::from_flat(m, table, limits)
    }

    /// Enumerates the group generated by permutations of `0..degree`.
    ///
    /// Products compose left to right: `x * y` applies `x` first.
    /// Elements are numbered in breadth-first order from the identity.
    pub fn from_permutations(degree: usize, gens: &[Vec<u32>], limits: &Limits) -> Result<Self> {
        Ok(Self::permutation_group(degree, gens, limits)?.0)
    }

    /// Like [`FiniteGroup::from_permutations`], also returning the
    /// permutation behind every element index.
    pub fn permutation_group(
        degree: usize,
        gens: &[Vec<u32>],
        limits: &Limits,
    ) -> Result<(Self, Vec<Vec<u32>>)> {
        let identity: Vec<u32> = (0..degree as u32).collect();
        let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut elems = vec![identity.clone()];
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let next: Vec<u32> = elems[i].iter().map(|&p| g[p as usize]).collect();
                if !index.contains_key(&next) {
                    if elems.len() == limits.max_order {
                        return Err(Error::OrderBound {
                            order: elems.len() + 1,
                            bound: limits.max_order,
                        });
                    }
                    index.insert(next.clone(), elems.len() as u32);
                    queue.push_back(elems.len());
                    elems.push(next);
                }
            }
        }
        let n = elems.len();
        let mut table = Vec::with_capacity(n * n);
        for x in &elems {
            for y in &elems {
                let z: Vec<u32> = x.iter().map(|&p| y[p as usize]).collect();
                table.push(index[&z]);
            }
        }
        Ok((Self::from_flat(n, table, limits)?, elems))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        Elem(self.table[x.index() * self.order + y.index()])
    }

    #[inline]
    pub fn inv(&self, x: Elem) -> Elem {
        self.inverses[x.index()]
    }

    /// `by⁻¹ · x · by`.
    #[inline]
    pub fn conj(&self, x: Elem, by: Elem) -> Elem {
        self.mul(self.mul(self.inv(by), x), by)
    }

    /// `x⁻¹ y⁻¹ x y`.
    #[inline]
    pub fn comm(&self, x: Elem, y: Elem) -> Elem {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn pow(&self, x: Elem, k: u64) -> Elem {
        let mut acc = Elem::IDENTITY;
        for _ in 0..k % self.element_orders[x.index()] as u64 {
            acc = self.mul(acc, x);
        }
        acc
    }

    #[inline]
    pub fn elem_order(&self, x: Elem) -> u32 {
        self.element_orders[x.index()]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order as u32).map(Elem)
    }

    pub fn whole(&self) -> ElementSet {
        ElementSet::full(self.order)
    }

    pub fn trivial(&self) -> ElementSet {
        ElementSet::identity(self.order)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|i| (i + 1..n).all(|j| self.table[i * n + j] == self.table[j * n + i]))
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.table.chunks(self.order)
    }

    pub fn flat_table(&self) -> &[u32] {
        &self.table
    }

    pub fn check_elem(&self, x: Elem) -> Result<Elem> {
        if x.index() < self.order {
            Ok(x)
        } else {
            Err(Error::IndexOutOfRange {
                index: x.index(),
                order: self.order,
            })
        }
    }

    pub fn check_set(&self, s: &ElementSet) -> Result<()> {
        if s.universe() == self.order {
            Ok(())
        } else {
            Err(Error::ForeignSet {
                expected: self.order,
                found: s.universe(),
            })
        }
    }

    /// Checked multiplication.
    pub fn multiply(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.mul(self.check_elem(x)?, self.check_elem(y)?))
    }

    pub fn inverse(&self, x: Elem) -> Result<Elem> {
        Ok(self.inv(self.check_elem(x)?))
    }

    pub fn conjugate(&self, x: Elem, by: Elem) -> Result<Elem> {
        Ok(self.conj(self.check_elem(x)?, self.check_elem(by)?))
    }

    /// True when `s` contains the identity and is closed under products.
    pub fn is_subgroup(&self, s: &ElementSet) -> bool {
        if s.universe() != self.order || !s.contains(Elem::IDENTITY) {
            return false;
        }
        let members: Vec<Elem> = s.iter().collect();
        members
            .iter()
            .all(|&x| members.iter().all(|&y| s.contains(self.mul(x, y))))
    }

    /// True when `s` is invariant under conjugation by every group element.
    pub fn is_normal_set(&self, s: &ElementSet) -> bool {
        s.iter()
            .all(|x| self.elements().all(|g| s.contains(self.conj(x, g))))
    }

    /// Factor group by a normal subgroup, with the projection map.
    ///
    /// Cosets are represented by their smallest element and listed in
    /// increasing order of representative.
    pub fn quotient(&self, normal: &ElementSet, limits: &Limits) -> Result<(FiniteGroup, Vec<Elem>)> {
        self.check_set(normal)?;
        if !self.is_subgroup(normal) {
            return Err(Error::NotSubgroup);
        }
        if !self.is_normal_set(normal) {
            return Err(Error::NotNormal);
        }
        let n = self.order;
        let mut proj = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if proj[x] != u32::MAX {
                continue;
            }
            let label = reps.len() as u32;
            reps.push(Elem(x as u32));
            for h in normal {
                proj[self.mul(Elem(x as u32), h).index()] = label;
            }
        }
        let m = reps.len();
        let mut table = Vec::with_capacity(m * m);
        for &x in &reps {
            for &y in &reps {
                table.push(proj[self.mul(x, y).index()]);
            }
        }
        let q = FiniteGroup::from_flat(m, table, limits)?;
        Ok((q, proj.into_iter().map(Elem).collect()))
    }
}

/// How an acting group is attached to the normal factor of a semidirect
/// product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum ActionSpec {
    /// Both factors cyclic: the generator of the acting group raises every
    /// element of the normal factor to the power `exponent`.
    Power { exponent: i64 },
    /// Images of the normal factor's elements under the automorphism
    /// attached to each listed generator of the acting group.
    Images {
        generators: Vec<u32>,
        images: Vec<Vec<u32>>,
    },
}

/// A named construction that [`build`] turns into a [`FiniteGroup`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum GroupRecipe {
    Cyclic {
        n: usize,
    },
    Dihedral {
        n: usize,
    },
    GeneralizedQuaternion {
        order: usize,
    },
    DirectProduct {
        left: Box<GroupRecipe>,
        right: Box<GroupRecipe>,
    },
    SemidirectProduct {
        normal: Box<GroupRecipe>,
        acting: Box<GroupRecipe>,
        action: ActionSpec,
    },
    /// `⟨a⟩⟨b⟩` with `|a| = cyclic`, `|b| = top`, `a^b = a⁻¹` and the
    /// involution of `⟨b⟩` identified with the involution of `⟨a⟩`.
    /// Both orders are powers of two, at least 4.
    InvertedCyclicExtension {
        cyclic: usize,
        top: usize,
    },
    FromCayleyFile {
        path: PathBuf,
    },
    /// Generators in disjoint-cycle notation on points `1..=degree`.
    FromPermutations {
        degree: usize,
        generators: Vec<String>,
    },
}

impl GroupRecipe {
    pub fn cyclic(n: usize) -> Self {
        GroupRecipe::Cyclic { n }
    }

    pub fn dihedral(n: usize) -> Self {
        GroupRecipe::Dihedral { n }
    }

    pub fn quaternion(order: usize) -> Self {
        GroupRecipe::GeneralizedQuaternion { order }
    }

    pub fn direct(left: GroupRecipe, right: GroupRecipe) -> Self {
        GroupRecipe::DirectProduct {
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    /// `C_m ⋊ C_k` where the generator of `C_k` acts as `x ↦ x^r`.
    pub fn cyclic_semidirect(m: usize, k: usize, r: i64) -> Self {
        GroupRecipe::SemidirectProduct {
            normal: Box::new(GroupRecipe::cyclic(m)),
            acting: Box::new(GroupRecipe::cyclic(k)),
            action: ActionSpec::Power { exponent: r },
        }
    }

    pub fn permutations(degree: usize, generators: &[&str]) -> Self {
        GroupRecipe::FromPermutations {
            degree,
            generators: generators.iter().map(|s| s.to_string()).collect(),
        }
    }
}

/// Builds the group described by `recipe`.
pub fn build(recipe: &GroupRecipe, limits: &Limits) -> Result<FiniteGroup> {
    match recipe {
        GroupRecipe::Cyclic { n } => FiniteGroup::cyclic(*n, limits),
        GroupRecipe::Dihedral { n } => {
            if *n == 0 {
                return Err(Error::TableInvalid("dihedral group of degree 0".into()));
            }
            FiniteGroup::dihedral(*n, limits)
        }
        GroupRecipe::GeneralizedQuaternion { order } => {
            FiniteGroup::generalized_quaternion(*order, limits)
        }
        GroupRecipe::DirectProduct { left, right } => {
            let l = build(left, limits)?;
            let r = build(right, limits)?;
            FiniteGroup::direct_product(&l, &r, limits)
        }
        GroupRecipe::SemidirectProduct {
            normal,
            acting,
            action,
        } => {
            let n = build(normal, limits)?;
            let k = build(acting, limits)?;
            let (generators, images) = match action {
                ActionSpec::Power { exponent } => {
                    if !matches!(**normal, GroupRecipe::Cyclic { .. })
                        || !matches!(**acting, GroupRecipe::Cyclic { .. })
                    {
                        return Err(Error::InvalidAction(
                            "power actions need cyclic factors".into(),
                        ));
                    }
                    let m = n.order() as i64;
                    let r = exponent.rem_euclid(m.max(1));
                    let img = (0..m).map(|x| ((x * r) % m.max(1)) as u32).collect();
                    if k.order() == 1 {
                        (vec![], vec![])
                    } else {
                        (vec![1], vec![img])
                    }
                }
                ActionSpec::Images { generators, images } => (generators.clone(), images.clone()),
            };
            let table = action_table(&n, &k, &generators, &images)?;
            FiniteGroup::semidirect_product(&n, &k, &table, limits)
        }
        GroupRecipe::InvertedCyclicExtension { cyclic, top } => {
            if *cyclic < 4 || *top < 4 || !cyclic.is_power_of_two() || !top.is_power_of_two() {
                return Err(Error::InvalidAction(format!(
                    "inverted cyclic extension needs powers of two ≥ 4, got {cyclic} and {top}"
                )));
            }
            let big = build(&GroupRecipe::cyclic_semidirect(*cyclic, *top, -1), limits)?;
            // (a^{cyclic/2}, b^{top/2}) is central of order 2.
            let z = Elem(((cyclic / 2) * top + top / 2) as u32);
            let amalgam = ElementSet::from_elems(big.order(), [Elem::IDENTITY, z]);
            Ok(big.quotient(&amalgam, limits)?.0)
        }
        GroupRecipe::FromCayleyFile { path } => {
            let text = std::fs::read_to_string(path)?;
            formats::parse_group(&text, limits)
        }
        GroupRecipe::FromPermutations { degree, generators } => {
            let gens = generators
                .iter()
                .enumerate()
                .map(|(i, g)| formats::parse_cycles(g, *degree, i + 1))
                .collect::<Result<Vec<_>>>()?;
            FiniteGroup::from_permutations(*degree, &gens, limits)
        }
    }
}

/// Extends generator images to an automorphism for every element of
/// `acting`, checking that each image is an automorphism of `normal` and
/// that the assignment is a homomorphism.
fn action_table(
    normal: &FiniteGroup,
    acting: &FiniteGroup,
    generators: &[u32],
    images: &[Vec<u32>],
) -> Result<Vec<Vec<Elem>>> {
    if generators.len() != images.len() {
        return Err(Error::InvalidAction(format!(
            "{} generators but {} image lists",
            generators.len(),
            images.len()
        )));
    }
    let n = normal.order();
    let mut autos = Vec::with_capacity(images.len());
    for (gi, img) in generators.iter().zip(images) {
        acting
            .check_elem(Elem(*gi))
            .map_err(|e| Error::InvalidAction(e.to_string()))?;
        if img.len() != n {
            return Err(Error::InvalidAction(format!(
                "image of generator {gi} has {} entries, expected {n}",
                img.len()
            )));
        }
        let auto: Vec<Elem> = img.iter().map(|&x| Elem(x)).collect();
        if !is_automorphism(normal, &auto) {
            return Err(Error::InvalidAction(format!(
                "image of generator {gi} is not an automorphism"
            )));
        }
        autos.push(auto);
    }
    let identity: Vec<Elem> = normal.elements().collect();
    let mut table: Vec<Option<Vec<Elem>>> = vec![None; acting.order()];
    table[0] = Some(identity);
    let mut queue = VecDeque::from([Elem::IDENTITY]);
    while let Some(k) = queue.pop_front() {
        let phi_k = table[k.index()].clone().expect("queued elements are assigned");
        for (&g, phi_g) in generators.iter().zip(&autos) {
            let kg = acting.mul(k, Elem(g));
            // φ(kg) = φ(k) ∘ φ(g)
            let composed: Vec<Elem> = phi_g.iter().map(|&x| phi_k[x.index()]).collect();
            match &table[kg.index()] {
                Some(existing) if *existing != composed => {
                    return Err(Error::InvalidAction(
                        "generator images do not define a homomorphism".into(),
                    ));
                }
                Some(_) => {}
                None => {
                    table[kg.index()] = Some(composed);
                    queue.push_back(kg);
                }
            }
        }
    }
    table
        .into_iter()
        .map(|t| t.ok_or_else(|| Error::InvalidAction("generators do not generate the acting group".into())))
        .collect()
}

/// True when `map` (given by images) is a bijective endomorphism.
pub fn is_automorphism(g: &FiniteGroup, map: &[Elem]) -> bool {
    let n = g.order();
    if map.len() != n || map.iter().any(|x| x.index() >= n) {
        return false;
    }
    let mut hit = vec![false; n];
    for x in map {
        if std::mem::replace(&mut hit[x.index()], true) {
            return false;
        }
    }
    g.elements().all(|x| {
        g.elements()
            .all(|y| map[g.mul(x, y).index()] == g.mul(map[x.index()], map[y.index()]))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn trivial_and_cyclic_orders() {
        let c1 = build(&GroupRecipe::cyclic(1), &lim()).unwrap();
        assert_eq!(c1.order(), 1);
        let c6 = build(&GroupRecipe::cyclic(6), &lim()).unwrap();
        let mut orders: Vec<u32> = c6.elements().map(|x| c6.elem_order(x)).collect();
        assert_eq!(orders, vec![1, 6, 3, 2, 3, 6]);
        orders.sort();
        orders.dedup();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        assert!(c6.is_abelian());
    }

    #[test]
    fn inverse_in_cyclic_five() {
        let c5 = build(&GroupRecipe::cyclic(5), &lim()).unwrap();
        assert_eq!(c5.inverse(Elem(2)).unwrap(), Elem(3));
        assert_eq!(c5.multiply(Elem(0), Elem(4)).unwrap(), Elem(4));
        assert!(matches!(
            c5.inverse(Elem(5)),
            Err(Error::IndexOutOfRange { index: 5, order: 5 })
        ));
    }

    #[test]
    fn inverting_semidirect_matches_dihedral() {
        let sd = build(&GroupRecipe::cyclic_semidirect(3, 2, -1), &lim()).unwrap();
        let d3 = build(&GroupRecipe::dihedral(3), &lim()).unwrap();
        assert_eq!(sd.order(), 6);
        assert_eq!(sd, d3);
        let involutions = sd.elements().filter(|&x| sd.elem_order(x) == 2).count();
        assert_eq!(involutions, 3);
        assert!(!sd.is_abelian());
    }

    #[test]
    fn conjugating_rotation_by_reflection_inverts_it() {
        let d3 = build(&GroupRecipe::dihedral(3), &lim()).unwrap();
        // index = rotation * 2 + flip
        let r = Elem(2);
        let s = Elem(1);
        assert_eq!(d3.elem_order(r), 3);
        assert_eq!(d3.elem_order(s), 2);
        assert_eq!(d3.conjugate(r, s).unwrap(), d3.inv(r));
    }

    #[test]
    fn quaternion_structure() {
        let q8 = build(&GroupRecipe::quaternion(8), &lim()).unwrap();
        let involutions = q8.elements().filter(|&x| q8.elem_order(x) == 2).count();
        assert_eq!(involutions, 1);
        let fours = q8.elements().filter(|&x| q8.elem_order(x) == 4).count();
        assert_eq!(fours, 6);
        let q32 = build(&GroupRecipe::quaternion(32), &lim()).unwrap();
        assert_eq!(q32.elements().filter(|&x| q32.elem_order(x) == 2).count(), 1);
        assert!(build(&GroupRecipe::quaternion(12), &lim()).is_err());
    }

    #[test]
    fn inverted_extension_with_top_four_is_quaternion_sized() {
        let g = build(
            &GroupRecipe::InvertedCyclicExtension { cyclic: 8, top: 4 },
            &lim(),
        )
        .unwrap();
        assert_eq!(g.order(), 16);
        assert_eq!(g.elements().filter(|&x| g.elem_order(x) == 2).count(), 1);
        let h = build(
            &GroupRecipe::InvertedCyclicExtension { cyclic: 4, top: 8 },
            &lim(),
        )
        .unwrap();
        assert_eq!(h.order(), 16);
        assert!(h.elements().any(|x| h.elem_order(x) == 8));
    }

    #[test]
    fn bad_actions_are_rejected() {
        // x -> 2x is not an automorphism of C4
        let r = build(&GroupRecipe::cyclic_semidirect(4, 2, 2), &lim());
        assert!(matches!(r, Err(Error::InvalidAction(_))));
        // x -> 2x on C3 has order 2, so it is not a homomorphism from C3
        let r = build(&GroupRecipe::cyclic_semidirect(3, 3, 2), &lim());
        assert!(matches!(r, Err(Error::InvalidAction(_))));
        // non-cyclic factor with a power action
        let r = build(
            &GroupRecipe::SemidirectProduct {
                normal: Box::new(GroupRecipe::dihedral(3)),
                acting: Box::new(GroupRecipe::cyclic(2)),
                action: ActionSpec::Power { exponent: 1 },
            },
            &lim(),
        );
        assert!(matches!(r, Err(Error::InvalidAction(_))));
    }

    #[test]
    fn image_action_builds_c3_by_c4() {
        let recipe = GroupRecipe::SemidirectProduct {
            normal: Box::new(GroupRecipe::cyclic(3)),
            acting: Box::new(GroupRecipe::cyclic(4)),
            action: ActionSpec::Images {
                generators: vec![1],
                images: vec![vec![0, 2, 1]],
            },
        };
        let g = build(&recipe, &lim()).unwrap();
        assert_eq!(g, build(&GroupRecipe::cyclic_semidirect(3, 4, -1), &lim()).unwrap());
        assert_eq!(g.elements().filter(|&x| g.elem_order(x) == 2).count(), 1);
    }

    #[test]
    fn table_validation_errors() {
        let l = lim();
        let not_latin = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(FiniteGroup::from_table(not_latin, &l), Err(Error::TableInvalid(_))));
        let bad_identity = vec![vec![1, 0], vec![0, 1]];
        assert!(matches!(FiniteGroup::from_table(bad_identity, &l), Err(Error::TableInvalid(_))));
        // Latin square with identity that is not associative (order-5 loop).
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table(loop5, &l).unwrap_err();
        assert!(err.to_string().contains("associativity"), "{err}");
        let small = Limits { max_order: 4, ..l };
        assert!(matches!(
            FiniteGroup::cyclic(5, &small),
            Err(Error::OrderBound { order: 5, bound: 4 })
        ));
    }

    #[test]
    fn quotient_examples() {
        let l = lim();
        let c6 = FiniteGroup::cyclic(6, &l).unwrap();
        let c3 = ElementSet::from_elems(6, [Elem(0), Elem(2), Elem(4)]);
        let (q, proj) = c6.quotient(&c3, &l).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj[1], Elem(1));
        let (same, proj) = c6.quotient(&c6.trivial(), &l).unwrap();
        assert_eq!(same, c6);
        assert_eq!(proj, c6.elements().collect::<Vec<_>>());

        let d3 = FiniteGroup::dihedral(3, &l).unwrap();
        let rot = ElementSet::from_elems(6, [Elem(0), Elem(2), Elem(4)]);
        assert_eq!(d3.quotient(&rot, &l).unwrap().0.order(), 2);
        let refl = ElementSet::from_elems(6, [Elem(0), Elem(1)]);
        assert_eq!(d3.quotient(&refl, &l).unwrap_err(), Error::NotNormal);
        let junk = ElementSet::from_elems(6, [Elem(0), Elem(2)]);
        assert_eq!(d3.quotient(&junk, &l).unwrap_err(), Error::NotSubgroup);
    }

    #[test]
    fn permutation_groups() {
        let l = lim();
        let s4 = build(&GroupRecipe::permutations(4, &["(1 2 3 4)", "(1 2)"]), &l).unwrap();
        assert_eq!(s4.order(), 24);
        let a4 = build(&GroupRecipe::permutations(4, &["(1 2 3)", "(1 2)(3 4)"]), &l).unwrap();
        assert_eq!(a4.order(), 12);
        let s5 = build(&GroupRecipe::permutations(5, &["(1 2 3 4 5)", "(1 2)"]), &l).unwrap();
        assert_eq!(s5.order(), 120);
        let tight = Limits { max_order: 100, ..l };
        assert!(matches!(
            build(&GroupRecipe::permutations(5, &["(1 2 3 4 5)", "(1 2)"]), &tight),
            Err(Error::OrderBound { .. })
        ));
    }
}
