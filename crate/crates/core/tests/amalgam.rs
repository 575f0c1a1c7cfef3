use fusionlim::amalgam::{
    cgp_functor, completion_fusion, degenerate_centralizer_check, rep_classes, rep_graph,
    TreeObject,
};
use fusionlim::fixtures::{degenerate_fixtures, psl32, psl32_amalgam, s3_c3_amalgam};
use fusionlim::fusion::FusionSystem;
use fusionlim::groups::{Elem, FiniteGroup};
use fusionlim::orbitcat::OrbitCategory;
use std::collections::BTreeSet;
use std::sync::Arc;

#[test]
fn psl32_amalgam_reconstructs_the_group() {
    let t = psl32_amalgam().unwrap();
    let f = completion_fusion(&t).unwrap();
    let direct = FusionSystem::of_group_on(t.ambient().clone(), psl32().unwrap()).unwrap();
    assert!(f.same_morphisms(&direct).unwrap());
}

#[test]
fn psl32_rep_graphs_are_trees() {
    let t = psl32_amalgam().unwrap();
    let f = Arc::new(completion_fusion(&t).unwrap());
    let c = f.centric_collection().unwrap();
    for &q in &c {
        let g = rep_graph(&t, &f, q).unwrap();
        assert_eq!((g.h0, g.h1), (1, 0));
    }
    let oc = OrbitCategory::new(f, &c).unwrap();
    let (cgp, _) = cgp_functor(&t, &oc).unwrap();
    assert!(cgp.is_zero());
}

/// Classes of `{c_g|V : V^g ≤ D8}` under post-composition with
/// conjugations from `L`, enumerated inside `PSL(3,2)` directly.
fn rep_class_oracle(g: &FiniteGroup, v: &FiniteGroup, d8: &FiniteGroup, l: &FiniteGroup) -> usize {
    let ve: Vec<Elem> = v.elements().to_vec();
    let maps: BTreeSet<Vec<Elem>> = g
        .elements()
        .iter()
        .map(|x| ve.iter().map(|y| g.conj(y, x)).collect::<Vec<Elem>>())
        .filter(|m| m.iter().all(|y| d8.contains(y)))
        .collect();
    let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();
    let mut classes = 0;
    for m in &maps {
        if seen.contains(m) {
            continue;
        }
        classes += 1;
        for h in l.elements() {
            let img: Vec<Elem> = m.iter().map(|y| g.conj(y, h)).collect();
            if maps.contains(&img) {
                seen.insert(img);
            }
        }
    }
    classes
}

#[test]
fn klein_four_classes_over_the_other_vertex() {
    let t = psl32_amalgam().unwrap();
    let f = completion_fusion(&t).unwrap();
    let amb = t.ambient();
    let psl = psl32().unwrap();
    let g1 = &t.vertex_groups[0];
    let d8 = amb.to_group(amb.top());
    let mut checked = 0;
    for q in 0..amb.subgroups().len() {
        let s = amb.sub(q);
        let is_v4 = s.order == 4 && s.elements.iter().all(|&x| amb.mul(x, x) == amb.identity());
        if !is_v4 {
            continue;
        }
        let h = amb.to_group(q);
        let normal = h
            .generators()
            .iter()
            .all(|x| g1.generators().iter().all(|g| h.contains(&g1.conj(x, g))));
        if normal {
            let got = rep_classes(&t, &f, q, TreeObject::Vertex(1)).unwrap().len();
            let want = rep_class_oracle(&psl, &h, &d8, &t.vertex_groups[1]);
            assert_eq!(got, want);
            assert_eq!(got, 3);
            checked += 1;
        }
    }
    assert_eq!(checked, 1);
}

#[test]
fn top_has_one_class_over_the_root() {
    for t in [psl32_amalgam().unwrap(), s3_c3_amalgam().unwrap()] {
        let f = completion_fusion(&t).unwrap();
        let top = t.ambient().top();
        assert_eq!(
            rep_classes(&t, &f, top, TreeObject::Vertex(t.root))
                .unwrap()
                .len(),
            1
        );
        assert_eq!(
            rep_graph(&t, &f, top)
                .unwrap()
                .vertices
                .iter()
                .filter(|v| v.tree_vertex == t.root)
                .count(),
            1
        );
    }
}

#[test]
fn degenerate_fixtures_match_the_centralizer_formula() {
    for (name, t) in degenerate_fixtures().unwrap() {
        let f = completion_fusion(&t).unwrap();
        let direct =
            FusionSystem::of_group_on(t.ambient().clone(), t.vertex_groups[0].clone()).unwrap();
        assert!(f.same_morphisms(&direct).unwrap(), "{name}");
        for q in f.centric_collection().unwrap() {
            let chk = degenerate_centralizer_check(&t, &f, q).unwrap();
            assert!(chk.equal, "{name}: {chk:?}");
        }
    }
}
