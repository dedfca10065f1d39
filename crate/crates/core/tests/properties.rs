use proptest::prelude::*;

use cycprod::factor::{self, find_cyclic_factorizations};
use cycprod::formats::{parse_cayley, write_cayley};
use cycprod::lattice::all_subgroups;
use cycprod::structure::{self, decompose, is_supersoluble};
use cycprod::subgroup::{self, closure, core, generate, normalizer};
use cycprod::{build, ElementSet, Elem, FiniteGroup, GroupRecipe, Limits};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Power actions `x ↦ x^r` on `C_m` whose `k`-th power is the identity.
fn valid_exponents(m: usize, k: usize) -> Vec<i64> {
    (1..m.max(2))
        .filter(|&r| {
            gcd(r, m) == 1 && (0..k).fold(1 % m, |acc, _| acc * r % m) == 1 % m
        })
        .map(|r| r as i64)
        .collect()
}

fn small_recipe() -> impl Strategy<Value = GroupRecipe> {
    let cyclic = (1usize..=30).prop_map(GroupRecipe::cyclic);
    let dihedral = (1usize..=15).prop_map(GroupRecipe::dihedral);
    let quaternion = prop::sample::select(vec![8usize, 16, 32]).prop_map(GroupRecipe::quaternion);
    let semidirect = (2usize..=12, 2usize..=6, any::<prop::sample::Index>()).prop_map(|(m, k, i)| {
        let rs = valid_exponents(m, k);
        GroupRecipe::cyclic_semidirect(m, k, *i.get(&rs))
    });
    let base = prop_oneof![cyclic, dihedral, quaternion, semidirect];
    let direct = ((1usize..=6), (1usize..=4)).prop_map(|(a, b)| {
        GroupRecipe::direct(GroupRecipe::cyclic(a), GroupRecipe::dihedral(b))
    });
    prop_oneof![4 => base, 1 => direct]
}

fn group() -> impl Strategy<Value = FiniteGroup> {
    small_recipe().prop_map(|r| build(&r, &Limits::default()).expect("valid recipe"))
}

/// A group together with a few of its elements.
fn group_with_elems(k: usize) -> impl Strategy<Value = (FiniteGroup, Vec<Elem>)> {
    group().prop_flat_map(move |g| {
        let n = g.order() as u32;
        (Just(g), prop::collection::vec((0..n).prop_map(Elem), 1..=k))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn table_round_trips_through_text((g, _) in group_with_elems(1)) {
        let back = parse_cayley(&write_cayley(&g), &Limits::default()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn group_axioms((g, xs) in group_with_elems(3)) {
        let x = xs[0];
        let y = *xs.get(1).unwrap_or(&x);
        let z = *xs.get(2).unwrap_or(&y);
        prop_assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
        prop_assert_eq!(g.mul(x, g.inv(x)), Elem::IDENTITY);
        prop_assert_eq!(g.pow(x, g.elem_order(x) as u64), Elem::IDENTITY);
        prop_assert_eq!(g.order() % g.elem_order(x) as usize, 0);
    }

    #[test]
    fn closure_is_idempotent((g, xs) in group_with_elems(3)) {
        let seed = ElementSet::from_elems(g.order(), xs);
        let h = closure(&g, &seed).unwrap();
        prop_assert!(seed.is_subset(&h));
        prop_assert!(g.is_subgroup(&h));
        prop_assert_eq!(closure(&g, &h).unwrap(), h.clone());
        prop_assert_eq!(g.order() % h.len(), 0);
    }

    #[test]
    fn core_inside_subgroup_inside_normalizer((g, xs) in group_with_elems(2)) {
        let h = generate(&g, xs);
        let c = core(&g, &h).unwrap();
        let n = normalizer(&g, &h).unwrap();
        prop_assert!(c.is_subset(&h));
        prop_assert!(h.is_subset(&n));
        prop_assert!(subgroup::is_normal(&g, &c));
        prop_assert!(g.is_subgroup(&n));
    }

    #[test]
    fn quotient_map_is_a_homomorphism((g, xs) in group_with_elems(3)) {
        let normal = subgroup::normal_closure(&g, &generate(&g, [xs[0]])).unwrap();
        let (q, proj) = g.quotient(&normal, &Limits::default()).unwrap();
        prop_assert_eq!(q.order() * normal.len(), g.order());
        for &x in &xs {
            for &y in &xs {
                prop_assert_eq!(proj[g.mul(x, y).index()], q.mul(proj[x.index()], proj[y.index()]));
            }
        }
        for x in normal.iter() {
            prop_assert_eq!(proj[x.index()], Elem::IDENTITY);
        }
    }

    #[test]
    fn permutability_is_symmetric((g, xs) in group_with_elems(2)) {
        let x = subgroup::cyclic_subgroup(&g, xs[0]);
        let y = subgroup::cyclic_subgroup(&g, *xs.last().unwrap());
        prop_assert_eq!(factor::permutes(&g, &x, &y).unwrap(), factor::permutes(&g, &y, &x).unwrap());
    }

    #[test]
    fn factorizations_satisfy_the_product_formula(g in group()) {
        for f in find_cyclic_factorizations(&g) {
            let meet = f.a.intersection(&f.b).len();
            prop_assert_eq!(f.a.len() * f.b.len(), g.order() * meet);
            prop_assert_eq!(factor::product_set(&g, &f.a, &f.b).unwrap(), g.whole());
            prop_assert!(factor::check_basis_normalizer(&g, &f).unwrap().holds());
            prop_assert!(factor::check_sylow_tower(&g, &f).iter().all(|t| t.normalizes && t.hall_product));
            let r1 = decompose(&g, &f).unwrap();
            prop_assert_eq!(decompose(&g, &f).unwrap(), r1.clone());
            // R lies in the derived subgroup.
            let derived = subgroup::derived_series(&g).get(1).cloned().unwrap_or_else(|| g.trivial());
            prop_assert!(r1.r.is_subset(&derived));
        }
    }

    #[test]
    fn rank_is_monotone_and_bounds_generator_counts(g in group()) {
        let l = all_subgroups(&g, &Limits::default()).unwrap();
        prop_assert!(l.is_intersection_closed());
        for i in 0..l.len() {
            prop_assert!(l.rank_of(i) >= l.min_generators(i));
            for j in l.below(i) {
                prop_assert!(l.rank_of(j) <= l.rank_of(i));
            }
        }
    }

    #[test]
    fn abelian_rank_is_largest_elementary_section(
        a in 1usize..=12, b in 1usize..=10, c in 1usize..=2
    ) {
        let limits = Limits::default();
        let recipe = GroupRecipe::direct(
            GroupRecipe::direct(GroupRecipe::cyclic(a), GroupRecipe::cyclic(b)),
            GroupRecipe::cyclic(c),
        );
        let g = build(&recipe, &limits).unwrap();
        // Elements of order p form an elementary abelian group of order p^r.
        let mut expect = 0;
        for p in [2u32, 3, 5, 7, 11] {
            let count = g.elements().filter(|&x| g.elem_order(x) == p).count() + 1;
            let mut r = 0;
            let mut q = 1;
            while q < count {
                q *= p as usize;
                r += 1;
            }
            prop_assert_eq!(q, count);
            expect = expect.max(r);
        }
        prop_assert_eq!(cycprod::prufer_rank(&g, &limits).unwrap(), expect);
    }

    #[test]
    fn supersoluble_sits_between_nilpotent_and_soluble(g in group()) {
        let ss = is_supersoluble(&g);
        if structure::is_nilpotent(&g) {
            prop_assert!(ss);
        }
        if ss {
            prop_assert!(structure::is_soluble(&g));
        }
    }
}
