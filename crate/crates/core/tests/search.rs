//! Brute-force search for a two-vertex amalgam whose `C_G^p` is nonzero.

use fusionlim::amalgam::{cgp_functor, completion_fusion, TreeOfGroups};
use fusionlim::fusion::FusionSystem;
use fusionlim::groups::{generate_subgroup, p_part, Elem, FiniteGroup};
use fusionlim::orbitcat::OrbitCategory;
use std::collections::BTreeSet;
use std::sync::Arc;

fn small_groups() -> Vec<(&'static str, Arc<FiniteGroup>)> {
    vec![
        ("C2", Arc::new(FiniteGroup::cyclic(2))),
        ("C3", Arc::new(FiniteGroup::cyclic(3))),
        ("C4", Arc::new(FiniteGroup::cyclic(4))),
        ("S3", Arc::new(FiniteGroup::symmetric(3))),
        ("C6", Arc::new(FiniteGroup::cyclic(6))),
        ("D8", Arc::new(FiniteGroup::dihedral(4))),
        ("D10", Arc::new(FiniteGroup::dihedral(5))),
        (
            "A4",
            Arc::new(FiniteGroup::from_one_line(4, &[vec![2, 3, 1, 4], vec![2, 1, 4, 3]]).unwrap()),
        ),
        ("D12", Arc::new(FiniteGroup::dihedral(6))),
        ("S4", Arc::new(FiniteGroup::symmetric(4))),
    ]
}

/// Every subgroup, as the closure of joins of cyclic subgroups.
fn all_subgroups(g: &FiniteGroup) -> Vec<FiniteGroup> {
    let key = |h: &FiniteGroup| -> Vec<usize> {
        let mut v: Vec<usize> = h
            .elements()
            .iter()
            .map(|x| g.index_of(x).unwrap())
            .collect();
        v.sort();
        v
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut queue = vec![generate_subgroup(g, &[]).unwrap()];
    while let Some(h) = queue.pop() {
        if !seen.insert(key(&h)) {
            continue;
        }
        for x in g.elements() {
            if !h.contains(x) {
                let mut gens = h.generators().to_vec();
                gens.push(x.clone());
                queue.push(generate_subgroup(g, &gens).unwrap());
            }
        }
        out.push(h);
    }
    out.sort_by_key(|h| (h.order(), key(h)));
    out
}

/// `G *_H G` along the inclusion of a subgroup `H` of `p'`-index, for
/// every small `G` and `p` in search order; returns the first hit.
fn first_nonzero() -> Option<(String, u32, usize, Vec<usize>)> {
    let mut skipped = Vec::new();
    for (name, g) in small_groups() {
        for p in [2u32, 3, 5] {
            if g.order() % p as usize != 0 {
                continue;
            }
            for hs in all_subgroups(&g) {
                if hs.order() == g.order() || p_part(hs.order(), p) != p_part(g.order(), p) {
                    continue;
                }
                let hs = Arc::new(hs);
                let incl: Vec<Elem> = hs.generators().to_vec();
                let t = match TreeOfGroups::two_vertex(
                    p,
                    ("G1".into(), g.clone()),
                    ("G2".into(), g.clone()),
                    ("H".into(), hs.clone()),
                    &incl,
                    &incl,
                    None,
                ) {
                    Ok(t) => t,
                    Err(e) => {
                        skipped.push((name, p, hs.order(), e.to_string()));
                        continue;
                    }
                };
                let f: Arc<FusionSystem> = Arc::new(completion_fusion(&t).unwrap());
                let c = f.centric_collection().unwrap();
                let oc = OrbitCategory::new(f, &c).unwrap();
                let (cgp, _) = cgp_functor(&t, &oc).unwrap();
                if !cgp.is_zero() {
                    return Some((name.to_string(), p, hs.order(), cgp.dims().to_vec()));
                }
            }
        }
    }
    eprintln!("skipped: {skipped:?}");
    None
}

#[test]
fn smallest_nonzero_instance_is_s3_over_c3() {
    // frozen as fixtures::s3_c3_amalgam
    assert_eq!(first_nonzero(), Some(("S3".to_string(), 3, 3, vec![1])));
}
