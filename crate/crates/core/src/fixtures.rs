//! Small named amalgams used by tests, benches and the command line.

use crate::amalgam::TreeOfGroups;
use crate::error::Result;
use crate::groups::{sylow_p, Elem, FiniteGroup};
use std::sync::Arc;

/// Generators of `PSL(3,2)` on the seven points of the Fano plane.
pub const PSL32_GENERATORS: [[usize; 7]; 2] = [[2, 3, 4, 5, 6, 7, 1], [1, 2, 5, 4, 3, 7, 6]];
/// Stabilizer of the point 7.
pub const POINT_STABILIZER: [[usize; 7]; 2] = [[1, 4, 3, 2, 6, 5, 7], [2, 3, 6, 5, 4, 1, 7]];
/// Stabilizer of the line `{4, 5, 7}`.
pub const LINE_STABILIZER: [[usize; 7]; 2] = [[1, 2, 6, 4, 7, 3, 5], [2, 3, 1, 5, 7, 6, 4]];
/// Their intersection, a dihedral group of order 8.
pub const FLAG_STABILIZER: [[usize; 7]; 2] = [[1, 6, 3, 5, 4, 2, 7], [2, 1, 6, 4, 5, 3, 7]];

fn perm_group(gens: &[[usize; 7]]) -> Result<Arc<FiniteGroup>> {
    let v: Vec<Vec<usize>> = gens.iter().map(|g| g.to_vec()).collect();
    Ok(Arc::new(FiniteGroup::from_one_line(7, &v)?))
}

pub fn psl32() -> Result<Arc<FiniteGroup>> {
    perm_group(&PSL32_GENERATORS)
}

/// `Σ₄ *_{D₈} Σ₄` with the point and line stabilizers of the Fano plane.
pub fn psl32_amalgam() -> Result<TreeOfGroups> {
    let g1 = perm_group(&POINT_STABILIZER)?;
    let g2 = perm_group(&LINE_STABILIZER)?;
    let ge = perm_group(&FLAG_STABILIZER)?;
    let incl: Vec<Elem> = ge.generators().to_vec();
    TreeOfGroups::two_vertex(
        2,
        ("S4_point".into(), g1),
        ("S4_line".into(), g2),
        ("D8".into(), ge),
        &incl,
        &incl,
        None,
    )
}

/// `S₃ *_{C₃} S₃` at `p = 3`: a rep graph with a cycle.
pub fn s3_c3_amalgam() -> Result<TreeOfGroups> {
    let s3 = Arc::new(FiniteGroup::symmetric(3));
    let c3 = Arc::new(sylow_p(&s3, 3)?);
    let incl: Vec<Elem> = c3.generators().to_vec();
    TreeOfGroups::two_vertex(
        3,
        ("S3a".into(), s3.clone()),
        ("S3b".into(), s3),
        ("C3".into(), c3),
        &incl,
        &incl,
        None,
    )
}

/// `G *_H H` with both maps the inclusion.
pub fn degenerate(p: u32, g: Arc<FiniteGroup>, h: Arc<FiniteGroup>) -> Result<TreeOfGroups> {
    let incl: Vec<Elem> = h.generators().to_vec();
    TreeOfGroups::two_vertex(
        p,
        ("G1".into(), g),
        ("G2".into(), h.clone()),
        ("Ge".into(), h),
        &incl,
        &incl,
        None,
    )
}

/// The named degenerate fixtures.
pub fn degenerate_fixtures() -> Result<Vec<(&'static str, TreeOfGroups)>> {
    let s4 = Arc::new(FiniteGroup::symmetric(4));
    let d8 = Arc::new(sylow_p(&s4, 2)?);
    let s3 = Arc::new(FiniteGroup::symmetric(3));
    let c3 = Arc::new(sylow_p(&s3, 3)?);
    let a4 = Arc::new(FiniteGroup::from_one_line(
        4,
        &[vec![2, 3, 1, 4], vec![2, 1, 4, 3]],
    )?);
    let v4 = Arc::new(sylow_p(&a4, 2)?);
    let psl = psl32()?;
    let point = perm_group(&POINT_STABILIZER)?;
    Ok(vec![
        ("s4_d8", degenerate(2, s4, d8)?),
        ("s3_c3", degenerate(3, s3, c3)?),
        ("a4_v4", degenerate(2, a4, v4)?),
        ("psl32_s4", degenerate(2, psl, point)?),
    ])
}
