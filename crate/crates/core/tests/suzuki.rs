use std::collections::BTreeSet;

use beauville::beauville::StrongReality;
use beauville::suzuki::{
    is_real_under_aut, odd_centralizers, suzuki_order_data, sz8, sz_find_structure, verify_sz,
};

#[test]
fn sz8_structure_is_not_strongly_real() {
    let (ctx, fg) = sz8().unwrap();
    assert_eq!(fg.order(), 29120);
    assert_eq!(ctx.order(), 29120);
    assert_eq!(fg.order_spectrum(), BTreeSet::from([1, 2, 4, 5, 7, 13]));

    for (o, c) in odd_centralizers(&fg).unwrap() {
        assert_eq!(o as usize, c, "element of order {o} has centraliser of order {c}");
    }

    let s = sz_find_structure(&fg).unwrap();
    let t1 = [s.t1.x, s.t1.y, s.t1.z];
    let t2 = [s.t2.x, s.t2.y, s.t2.z];
    assert_eq!(fg.triple_type(&t1).unwrap(), (2, 4, 5));
    let n = suzuki_order_data(3).unwrap().n;
    assert_eq!(fg.triple_type(&t2).unwrap(), (7, n, n));

    let cls = fg.classes();
    let id = |g| cls.class_of[fg.index_of(&g).unwrap()];
    assert!(fg.frobenius_count(id(s.t2.x), id(s.t2.y), id(s.t2.y)) > 0);

    // order-4 elements are never conjugate to their inverses, even under Aut
    assert!(!is_real_under_aut(&ctx, &fg, s.t1.y));

    let report = verify_sz(&ctx, &fg, &s).unwrap();
    assert!(report.pass(), "{report:?}");
    match report.strongly_real {
        StrongReality::NoneFound { covers_aut, candidates } => {
            assert!(covers_aut);
            assert_eq!(candidates, 3 * 29120);
        }
        other => panic!("unexpected {other:?}"),
    }
}
