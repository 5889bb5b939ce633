mod common;

use std::sync::Arc;

use clifford_count::group::{enumerate_group, normal_subgroups, GroupSpec, GroupTable, QuotientGroup, Subgroup};
use clifford_count::{Error, Execution};
use proptest::prelude::*;

fn perms(degree: usize, generators: Vec<Vec<usize>>) -> Arc<GroupTable> {
    Arc::new(enumerate_group("t", &GroupSpec::Permutations { degree, generators }, 20000).unwrap())
}

fn sorted_orders(g: &GroupTable) -> Vec<u32> {
    let mut v = g.element_orders().to_vec();
    v.sort_unstable();
    v
}

/// Element order by repeated multiplication.
fn naive_order(g: &GroupTable, x: u32) -> u32 {
    let (mut y, mut k) = (x, 1);
    while y != 0 {
        y = g.mul(y, x);
        k += 1;
    }
    k
}

#[test]
fn enumerate_examples() {
    assert_eq!(perms(3, vec![vec![1, 2, 3]]).order(), 1);
    let c4 = perms(4, vec![vec![2, 3, 4, 1]]);
    assert_eq!(sorted_orders(&c4), vec![1, 2, 4, 4]);
    let q8 = common::load("q8");
    assert_eq!(sorted_orders(&q8.group), vec![1, 2, 4, 4, 4, 4, 4, 4]);
}

#[test]
fn enumerate_errors() {
    let dup = enumerate_group("bad", &GroupSpec::Permutations { degree: 3, generators: vec![vec![1, 2, 2]] }, 100);
    match dup {
        Err(Error::InvalidPermutation { generator, reason }) => {
            assert_eq!(generator, 1);
            assert!(reason.contains("positions 2 and 3"), "{reason}");
        }
        other => panic!("{other:?}"),
    }
    let not_assoc = GroupSpec::Cayley { table: vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 2, 0]] };
    assert!(matches!(enumerate_group("bad", &not_assoc, 100), Err(Error::NotAGroup(_))));
    let s5 = GroupSpec::Permutations { degree: 5, generators: vec![vec![2, 3, 4, 5, 1], vec![2, 1, 3, 4, 5]] };
    assert!(matches!(enumerate_group("s5", &s5, 100), Err(Error::OrderCapExceeded { cap: 100 })));
}

#[test]
fn cayley_c2() {
    let g = enumerate_group("C2", &GroupSpec::Cayley { table: vec![vec![0, 1], vec![1, 0]] }, 10).unwrap();
    assert_eq!(g.order(), 2);
    assert_eq!(g.element_orders(), &[1, 2]);
}

#[test]
fn class_examples() {
    let sizes = |name: &str| {
        let g = common::load(name);
        let cl = g.group.classes();
        (0..cl.len()).map(|c| cl.size(c)).collect::<Vec<_>>()
    };
    assert_eq!(sizes("s3"), vec![1, 3, 2]);
    assert_eq!(sizes("q8"), vec![1, 1, 2, 2, 2]);
    assert!(sizes("c6").iter().all(|&s| s == 1));
}

#[test]
fn table_invariants_on_catalog() {
    for g in common::standard() {
        let t = &g.group;
        assert!(t.check_associativity(Execution::default()), "{}", t.name());
        for x in t.elements() {
            assert_eq!(t.mul(0, x), x);
            assert_eq!(t.mul(x, 0), x);
            assert_eq!(t.mul(x, t.inv(x)), 0);
            assert_eq!(t.element_order(x), naive_order(t, x));
        }
        let cl = t.classes();
        let mut seen = vec![0usize; t.order()];
        for c in 0..cl.len() {
            assert_eq!(cl.size(c) * cl.centralizer_order(c), t.order());
            assert_eq!(cl.inverse_class(cl.inverse_class(c)), c);
            for &m in cl.members(c) {
                seen[m as usize] += 1;
                assert_eq!(cl.class_of(m), c);
            }
            // the representative really is conjugate to every member
            let rep = cl.rep(c);
            let orbit: Vec<u32> = t.elements().map(|y| t.conj(rep, y)).collect();
            assert!(cl.members(c).iter().all(|m| orbit.contains(m)));
        }
        assert!(seen.iter().all(|&k| k == 1), "{}: classes do not partition", t.name());
        assert_eq!(cl.class_of(0), 0);
        let total: usize = (0..cl.len()).map(|c| cl.size(c)).sum();
        assert_eq!(total, t.order());
    }
}

#[test]
fn subgroup_from_words() {
    let q8 = common::load("q8");
    let g = &q8.group;
    let t = Subgroup::from_words(g, &[]).unwrap();
    assert_eq!(t.order(), 1);
    assert!(t.is_normal());
    let all: Vec<Vec<i64>> = (1..=g.generators().len() as i64).map(|i| vec![i]).collect();
    assert!(Subgroup::from_words(g, &all).unwrap().is_whole());
    let z = q8.normal("Z").unwrap();
    assert_eq!(z.order(), 2);
    assert!(z.is_normal());
    assert!(matches!(Subgroup::from_words(g, &[vec![9]]), Err(Error::UnknownGenerator(9))));
}

#[test]
fn quotient_examples() {
    let q8 = common::load("q8");
    let g = &q8.group;
    let triv = QuotientGroup::new(&Subgroup::trivial(g)).unwrap();
    assert_eq!(triv.order(), 8);
    for a in g.elements() {
        for b in g.elements() {
            assert_eq!(triv.projection(g.mul(a, b)), triv.table().mul(triv.projection(a), triv.projection(b)));
        }
    }
    assert_eq!(QuotientGroup::new(&Subgroup::whole(g)).unwrap().order(), 1);
    let v4 = QuotientGroup::new(&q8.normal("Z").unwrap()).unwrap();
    assert_eq!(v4.order(), 4);
    assert_eq!(sorted_orders(v4.table()), vec![1, 2, 2, 2]);
    assert_eq!(v4.involution_cosets().len(), 4);

    let s3 = common::load("s3");
    let not_normal = Subgroup::generated_by(&s3.group, &[s3.group.classes().rep(1)]);
    assert!(matches!(QuotientGroup::new(&not_normal), Err(Error::NotNormal(_))));
}

#[test]
fn quotient_is_homomorphism_on_catalog() {
    for g in common::standard() {
        let t = &g.group;
        for n in normal_subgroups(t) {
            let q = QuotientGroup::new(&n).unwrap();
            assert_eq!(q.order() * n.order(), t.order());
            for x in q.table().elements() {
                assert_eq!(q.projection(q.section(x)), x);
                let coset_min = n.members().iter().map(|&m| t.mul(m, q.section(x))).min().unwrap();
                assert_eq!(q.section(x), coset_min);
            }
            for a in t.elements() {
                assert_eq!(q.projection(a) == 0, n.contains(a));
                for b in t.elements() {
                    assert_eq!(q.projection(t.mul(a, b)), q.table().mul(q.projection(a), q.projection(b)));
                }
            }
            let inv: Vec<u32> = q.involution_cosets();
            assert_eq!(inv[0], 0);
            let expected = q.table().elements().filter(|&x| q.table().element_order(x) <= 2).count();
            assert_eq!(inv.len(), expected);
        }
    }
}

#[test]
fn centralizer_examples() {
    let s3 = common::load("s3");
    let g = &s3.group;
    let whole = Subgroup::whole(g);
    let one = Subgroup::trivial(g);
    let cl = g.classes();
    let (t, c) = (cl.rep(1), cl.rep(2));
    assert_eq!(whole.coset_centralizer(&one, c).order(), 3);
    assert_eq!(whole.coset_centralizer(&whole, c).order(), 6);
    assert_eq!(whole.extended_coset_centralizer(&one, c).order(), 6);
    let inverting = whole.inverting_set(&one, c);
    assert_eq!(inverting.len(), 3);
    assert!(inverting.iter().all(|&y| g.element_order(y) == 2));
    assert_eq!(whole.inverting_set(&one, t).len(), 2);

    let q8 = common::load("q8");
    let z = q8.normal("Z").unwrap();
    let w = Subgroup::whole(&q8.group);
    for x in q8.group.elements() {
        assert!(w.coset_centralizer(&z, x).is_whole());
    }
    assert_eq!(w.inverting_set(&w, 3).len(), 8);

    let c3 = perms(3, vec![vec![2, 3, 1]]);
    assert!(Subgroup::whole(&c3).inverting_set(&Subgroup::trivial(&c3), 1).is_empty());
}

#[test]
fn centralizer_invariants_on_catalog() {
    for g in common::standard() {
        let t = &g.group;
        let whole = Subgroup::whole(t);
        for n in normal_subgroups(t) {
            for x in t.elements() {
                let c = whole.coset_centralizer(&n, x);
                let star = whole.extended_coset_centralizer(&n, x);
                assert!(n.is_subgroup_of(&c));
                assert!(t.elements().filter(|&y| t.mul(x, y) == t.mul(y, x)).all(|y| c.contains(y)));
                assert!(c.is_subgroup_of(&star));
                let idx = star.order() / c.order();
                assert!(idx == 1 || idx == 2);
                if n.contains(t.mul(x, x)) {
                    assert_eq!(idx, 1);
                }
                let inv = whole.inverting_set(&n, x);
                assert!(inv.is_empty() || inv.len() == c.order());
                if let Some(&e) = inv.first() {
                    let mut coset: Vec<u32> = c.members().iter().map(|&y| t.mul(y, e)).collect();
                    coset.sort_unstable();
                    assert_eq!(coset, inv);
                }
            }
        }
    }
}

#[test]
fn normal_subgroup_counts() {
    let count = |name: &str| normal_subgroups(&common::load(name).group).len();
    assert_eq!(count("s3"), 3);
    assert_eq!(count("q8"), 6);
    assert_eq!(count("d8"), 6);
    assert_eq!(count("a4"), 3);
    assert_eq!(count("s4"), 4);
    assert_eq!(count("a5"), 2);
    assert_eq!(count("sl23"), 4);
}

/// Size of the group generated by `gens`, closing image lists directly.
fn closure_size(gens: &[Vec<usize>]) -> usize {
    let id: Vec<usize> = (1..=gens[0].len()).collect();
    let mut seen = std::collections::HashSet::from([id.clone()]);
    let mut queue = vec![id];
    while let Some(p) = queue.pop() {
        for s in gens {
            let q: Vec<usize> = p.iter().map(|&i| s[i - 1]).collect();
            if seen.insert(q.clone()) {
                queue.push(q);
            }
        }
    }
    seen.len()
}

fn arb_perm(degree: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=degree).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_permutation_groups(gens in prop::collection::vec(arb_perm(5), 1..3)) {
        let g = perms(5, gens.clone());
        prop_assert_eq!(120 % g.order(), 0);
        prop_assert!(g.check_associativity(Execution::Sequential));
        for x in g.elements() {
            prop_assert_eq!(g.mul(x, g.inv(x)), 0);
            prop_assert_eq!(g.element_order(x), naive_order(&g, x));
        }
        prop_assert_eq!(g.order(), closure_size(&gens));
        let cl = g.classes();
        let total: usize = (0..cl.len()).map(|c| cl.size(c)).sum();
        prop_assert_eq!(total, g.order());
    }
}
