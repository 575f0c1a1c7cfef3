use fusionlim::catalog::{clelland_parker_base, parker_stroth_base, CATALOG_ORDER_BOUND};

#[test]
fn clelland_parker_two_three() {
    let cp = clelland_parker_base(2, 3, CATALOG_ORDER_BOUND).unwrap();
    assert_eq!(cp.a.order(), 27);
    assert_eq!(cp.d.order(), 96);
    assert_eq!(cp.p_group.order(), 2592);
    assert_eq!(cp.np_r.order(), 216);
    let checks = cp.verify().unwrap();
    for c in &checks {
        assert!(c.pass, "{c:?}");
    }
}

#[test]
fn parker_stroth_five() {
    let ps = parker_stroth_base(5, CATALOG_ORDER_BOUND).unwrap();
    assert_eq!(ps.n, 1);
    assert_eq!(ps.cdq.len(), 4);
    assert_eq!(ps.k.order(), 3000);
    assert_eq!(ps.c.order(), 500);
    assert_eq!(ps.s_prime.order(), 125);
    for c in ps.verify().unwrap() {
        assert!(c.pass, "{c:?}");
    }
}
