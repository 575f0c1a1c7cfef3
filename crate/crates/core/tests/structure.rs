use fusionlim::amalgam::{completion_fusion, rep_graph, TreeObject};
use fusionlim::fixtures::{degenerate_fixtures, psl32, psl32_amalgam, s3_c3_amalgam};
use fusionlim::funmod::{cohomology_functor, DEFAULT_BAR_BOUND};
use fusionlim::fusion::FusionSystem;
use fusionlim::groups::{
    abelianization_mod_p, local_subgroups, p_part, sylow_p, FiniteGroup, GroupHom,
};
use fusionlim::orbitcat::OrbitCategory;
use proptest::prelude::*;
use std::collections::HashSet;
use std::sync::Arc;

fn a4() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::from_one_line(4, &[vec![2, 3, 1, 4], vec![2, 1, 4, 3]]).unwrap())
}

/// `(name, G, p)` with `|G| ≤ 200`.
fn groups() -> Vec<(&'static str, Arc<FiniteGroup>, u32)> {
    vec![
        ("S3", Arc::new(FiniteGroup::symmetric(3)), 3),
        ("S3", Arc::new(FiniteGroup::symmetric(3)), 2),
        ("D8", Arc::new(FiniteGroup::dihedral(4)), 2),
        ("A4", a4(), 2),
        ("S4", Arc::new(FiniteGroup::symmetric(4)), 2),
        ("S4", Arc::new(FiniteGroup::symmetric(4)), 3),
        ("D12", Arc::new(FiniteGroup::dihedral(6)), 2),
        ("PSL(3,2)", psl32().unwrap(), 2),
        ("PSL(3,2)", psl32().unwrap(), 7),
    ]
}

fn systems() -> Vec<(&'static str, Arc<FusionSystem>, Arc<FiniteGroup>)> {
    groups()
        .into_iter()
        .map(|(name, g, p)| {
            let s = Arc::new(sylow_p(&g, p).unwrap());
            (
                name,
                Arc::new(FusionSystem::of_group(s, g.clone(), p).unwrap()),
                g,
            )
        })
        .collect()
}

#[test]
fn sylow_orders_and_local_chains() {
    for (name, g, p) in groups() {
        let s = sylow_p(&g, p).unwrap();
        assert_eq!(
            s.order() * (g.order() / p_part(g.order(), p)),
            g.order(),
            "{name}"
        );
        let amb = fusionlim::fusion::Ambient::new(Arc::new(s), p).unwrap();
        for q in 0..amb.subgroups().len() {
            let h = amb.to_group(q);
            let l = local_subgroups(&g, &h).unwrap();
            assert!(l.center.is_subgroup_of(&l.centralizer));
            assert!(l.centralizer.is_subgroup_of(&l.normalizer));
            assert!(h.is_subgroup_of(&l.normalizer));
            let normal = h.generators().iter().all(|x| {
                l.normalizer
                    .elements()
                    .iter()
                    .all(|y| h.contains(&g.conj(x, y)))
            });
            assert!(normal, "{name}");
        }
    }
}

#[test]
fn hom_sets_are_nonempty_exactly_for_conjugate_subgroups() {
    for (name, f, g) in systems() {
        let amb = f.ambient();
        let n = amb.subgroups().len();
        for p in 0..n {
            let pg = amb.to_group(p);
            for q in 0..n {
                let qs = amb.sub(q);
                let by_group = g.elements().iter().any(|x| {
                    pg.elements()
                        .iter()
                        .all(|y| amb.index_of(&g.conj(y, x)).is_some_and(|i| qs.contains(i)))
                });
                assert_eq!(
                    !f.hom(p, q).unwrap().is_empty(),
                    by_group,
                    "{name}: {p} → {q}"
                );
            }
        }
    }
}

#[test]
fn centric_collection_is_conjugation_invariant_and_overgroup_closed() {
    for (name, f, _) in systems() {
        let amb = f.ambient();
        let c: HashSet<usize> = f.centric_collection().unwrap().into_iter().collect();
        for &q in &c {
            for r in f.conjugacy_orbit(q).unwrap() {
                assert!(c.contains(&r), "{name}");
            }
            for r in 0..amb.subgroups().len() {
                if amb.is_sub(q, r) {
                    assert!(c.contains(&r), "{name}");
                }
            }
        }
    }
}

#[test]
fn orbit_category_fibers_and_weak_terminality() {
    for (name, f, _) in systems() {
        let amb = f.ambient().clone();
        if amb.order() > 64 {
            continue;
        }
        let c = f.centric_collection().unwrap();
        let oc = OrbitCategory::new(f.clone(), &c).unwrap();
        let top = oc.object_of(amb.top()).unwrap();
        for (a, &p) in oc.objects.iter().enumerate() {
            assert!(!oc.cat.hom(a, top).is_empty(), "{name}");
            for (b, &q) in oc.objects.iter().enumerate() {
                let total: usize = oc.cat.hom(a, b).iter().map(|&m| oc.fiber[m]).sum();
                assert_eq!(total, f.hom(p, q).unwrap().len(), "{name}");
                for &m in oc.cat.hom(a, b) {
                    let rep = &oc.reps[m];
                    let orbit: HashSet<Vec<u16>> = amb
                        .sub(q)
                        .elements
                        .iter()
                        .map(|&x| rep.iter().map(|&y| amb.conj(y, x)).collect())
                        .collect();
                    assert_eq!(orbit.len(), oc.fiber[m], "{name}");
                }
            }
        }
        // projecting then composing equals composing then projecting
        for m1 in 0..oc.cat.num_morphisms() {
            let i1 = oc.cat.mor(m1);
            for &m2 in oc.cat.out_of(i1.dst) {
                let i2 = oc.cat.mor(m2);
                let (p, r, q) = (oc.objects[i1.src], oc.objects[i1.dst], oc.objects[i2.dst]);
                let t = amb.compose(&oc.reps[m1], r, &oc.reps[m2]);
                assert_eq!(
                    oc.classify(p, q, &t),
                    Some(oc.cat.compose(m1, m2)),
                    "{name}"
                );
            }
        }
    }
}

#[test]
fn first_cohomology_is_the_abelianization_on_every_fixture() {
    let mut trees = vec![psl32_amalgam().unwrap(), s3_c3_amalgam().unwrap()];
    trees.extend(degenerate_fixtures().unwrap().into_iter().map(|(_, t)| t));
    let mut count = 0;
    for t in &trees {
        let f = Arc::new(completion_fusion(t).unwrap());
        let c = f.centric_collection().unwrap();
        let oc = OrbitCategory::new(f.clone(), &c).unwrap();
        let h1 = cohomology_functor(&oc, 1, DEFAULT_BAR_BOUND).unwrap();
        for (a, &q) in oc.objects.iter().enumerate() {
            assert_eq!(
                h1.dim(a),
                abelianization_mod_p(&f.ambient().to_group(q), t.p)
            );
            count += 1;
        }
    }
    assert!(count > 10);
}

#[test]
fn completion_contains_every_vertex_system() {
    for t in [psl32_amalgam().unwrap(), s3_c3_amalgam().unwrap()] {
        let f = completion_fusion(&t).unwrap();
        let amb = t.ambient();
        for v in 0..t.num_vertices() {
            let local = t.local(TreeObject::Vertex(v));
            for q in 0..amb.subgroups().len() {
                let big: HashSet<Box<[u16]>> = f.hom_to_s(q).unwrap().iter().cloned().collect();
                assert!(local.hom_to_s(q).unwrap().iter().all(|m| big.contains(m)));
                // S-conjugation maps are in every system over S
                for &x in &amb.sub(amb.top()).elements {
                    assert!(big.contains(&amb.conj_table(q, x)));
                }
            }
        }
    }
}

#[test]
fn fusion_isomorphic_subgroups_have_matching_rep_graphs() {
    for t in [psl32_amalgam().unwrap(), s3_c3_amalgam().unwrap()] {
        let f = completion_fusion(&t).unwrap();
        for q in f.centric_collection().unwrap() {
            let g = rep_graph(&t, &f, q).unwrap();
            for r in f.conjugacy_orbit(q).unwrap() {
                let h = rep_graph(&t, &f, r).unwrap();
                assert_eq!(
                    (g.vertices.len(), g.edges.len(), g.h0, g.h1),
                    (h.vertices.len(), h.edges.len(), h.h0, h.h1)
                );
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn conjugation_maps_compose_associatively(i in 0usize..24, j in 0usize..24, k in 0usize..24) {
        let g = Arc::new(FiniteGroup::symmetric(4));
        let s = Arc::new(sylow_p(&g, 2).unwrap());
        let e = g.elements();
        let (x, y, z) = (&e[i], &e[j], &e[k]);
        let conj_group = |h: &FiniteGroup, t: &[u16]| -> Arc<FiniteGroup> {
            let gens: Vec<_> = h.generators().iter().map(|a| g.conj(a, t)).collect();
            Arc::new(fusionlim::groups::generate_subgroup(&g, &gens).unwrap())
        };
        let s1 = conj_group(&s, x);
        let s2 = conj_group(&s1, y);
        let s3 = conj_group(&s2, z);
        let a = GroupHom::conjugation(&g, x, s.clone(), s1.clone()).unwrap();
        let b = GroupHom::conjugation(&g, y, s1.clone(), s2.clone()).unwrap();
        let c = GroupHom::conjugation(&g, z, s2.clone(), s3.clone()).unwrap();
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left.table(), right.table());
        let id = GroupHom::conjugation(&g, &g.identity(), s1.clone(), s1.clone()).unwrap();
        let ai = a.compose(&id).unwrap();
        prop_assert_eq!(ai.table(), a.table());
    }
}
