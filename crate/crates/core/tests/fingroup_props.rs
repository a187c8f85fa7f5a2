use proptest::prelude::*;
use repshift_core::fingroup::{Elem, ElemSet, ExtensionData, FiniteGroup, GroupElement};

const EXTENSIONS: [&str; 3] = ["S3/S2", "A4/Z3", "S4/S3"];

#[test]
fn twisted_action_is_an_action_by_automorphisms() {
    for name in EXTENSIONS {
        let ext = ExtensionData::standard(name).unwrap();
        let (q, a) = (ext.quotient(), ext.kernel());
        for x in a.elems() {
            assert_eq!(ext.twisted_action(q.identity(), x), x, "{name}");
            for y in q.elems() {
                for z in q.elems() {
                    // a^y = s(y) a s(y)^-1 composes as a^{yz} = (a^z)^y.
                    let lhs = ext.twisted_action(q.mul(y, z), x);
                    let rhs = ext.twisted_action(y, ext.twisted_action(z, x));
                    assert_eq!(lhs, rhs, "{name}");
                }
                for w in a.elems() {
                    let lhs = ext.twisted_action(y, a.mul(x, w));
                    let rhs = a.mul(ext.twisted_action(y, x), ext.twisted_action(y, w));
                    assert_eq!(lhs, rhs, "{name}");
                }
            }
        }
    }
}

#[test]
fn extension_maps_are_consistent() {
    for name in EXTENSIONS {
        let ext = ExtensionData::standard(name).unwrap();
        let (e, q) = (ext.total(), ext.quotient());
        for y in q.elems() {
            assert_eq!(ext.project(ext.section(y)), y);
            let fiber = ext.fiber(y);
            assert_eq!(fiber.len(), ext.kernel().order());
            assert!(fiber.iter().all(|g| ext.project(g) == y));
        }
        for g in e.elems() {
            for h in e.elems() {
                assert_eq!(ext.project(e.mul(g, h)), q.mul(ext.project(g), ext.project(h)));
            }
        }
        for a in ext.kernel().elems() {
            assert_eq!(ext.restrict(ext.include(a)), Some(a));
        }
    }
}

/// Transitivity read straight off the subgroup: the images of 1 cover
/// every point.
fn transitive_by_images(g: &FiniteGroup, h: ElemSet) -> bool {
    let n = g.degree().unwrap();
    let mut hit = vec![false; n];
    for x in h.iter() {
        if let GroupElement::Perm(p) = g.element(x) {
            hit[p.apply(1) - 1] = true;
        }
    }
    hit.into_iter().all(|b| b)
}

#[test]
fn transitivity_is_monotone_and_matches_images() {
    for name in ["S3", "S4", "A4", "S5"] {
        let g = FiniteGroup::from_name(name).unwrap();
        let subs = g.subgroups();
        for &h in &subs {
            assert_eq!(g.is_transitive_set(h), transitive_by_images(&g, h), "{name}");
        }
        if name == "S5" {
            continue;
        }
        for &h in &subs {
            for &k in &subs {
                if h.is_subset(k) && g.is_transitive_set(h) {
                    assert!(g.is_transitive_set(k));
                }
            }
        }
    }
}

#[test]
fn subgroup_counts() {
    // Number of subgroups of S3, A4 and S4.
    for (name, n) in [("S3", 6), ("A4", 10), ("S4", 30), ("V4", 5), ("Z6", 4)] {
        assert_eq!(FiniteGroup::from_name(name).unwrap().subgroups().len(), n, "{name}");
    }
}

fn subset_of(g: &FiniteGroup, bits: u128) -> ElemSet {
    ElemSet(bits & g.all().0)
}

proptest! {
    #[test]
    fn closure_is_idempotent_and_monotone(a in any::<u128>(), b in any::<u128>(), which in 0usize..4) {
        let g = FiniteGroup::from_name(["S4", "A4", "S3", "A5"][which]).unwrap();
        let s = subset_of(&g, a);
        let t = s.union(subset_of(&g, b));
        let cs = g.closure(s);
        prop_assert_eq!(g.closure(cs), cs);
        prop_assert!(s.is_subset(cs));
        prop_assert!(cs.is_subset(g.closure(t)));
        prop_assert!(g.is_subgroup(cs));
        prop_assert!(cs.contains(Elem::IDENTITY));
    }

    #[test]
    fn group_axioms(x in 0u8..120, y in 0u8..120, z in 0u8..120) {
        let g = FiniteGroup::from_name("S5").unwrap();
        let (x, y, z) = (Elem(x), Elem(y), Elem(z));
        prop_assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
        prop_assert_eq!(g.mul(x, g.inv(x)), Elem::IDENTITY);
        prop_assert_eq!(g.pow(x, g.element_order(x) as i64), Elem::IDENTITY);
        prop_assert_eq!(g.parse_elem(&g.display(x)).unwrap(), x);
    }
}
