use cartier_lift::construct::{
    build_as_cover, dimension_lower_bound, example_family, min_pole_order, search_prank0_base,
};
use cartier_lift::criteria::{check_liftable, verify_rigidified, Verdict};
use cartier_lift::differentials::p_rank;
use cartier_lift::field_linalg::Poly;

mod common;
use common::{hyper, k};

#[test]
fn search_examples() {
    let hits = search_prank0_base(7, 2, 50, None).unwrap();
    let target = Poly::from_ints(k(7), &[1, 0, 0, 0, 0, 1]);
    assert!(hits.iter().any(|c| c.hyperelliptic_polynomial() == Some(&target)));
    let hits = search_prank0_base(5, 2, 3125, None).unwrap();
    assert!(!hits.is_empty());
    for c in &hits {
        assert_eq!(p_rank(c).unwrap(), 0);
        assert_eq!(c.genus(), 2);
    }
    assert!(search_prank0_base(5, 0, 10, None).is_err());
    let a = search_prank0_base(5, 2, 200, Some(9)).unwrap();
    let b = search_prank0_base(5, 2, 200, Some(9)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn cover_examples() {
    let y = hyper(7, &[1, 0, 0, 0, 0, 1]);
    let spec = build_as_cover(&y, 30).unwrap();
    assert_eq!(spec.d_different, 186);
    assert_eq!(spec.genus, 101);
    assert_eq!(spec.cover.genus(), 101);
    assert_eq!((spec.p_rank_base, spec.p_rank), (0, 0));
    assert_eq!(spec.u.to_string(), "x^15");
    assert!(build_as_cover(&y, 35).is_err());
    let gap = build_as_cover(&y, 3).unwrap_err().to_string();
    assert!(gap.contains("pole order 3"), "{gap}");
}

#[test]
fn family_examples() {
    assert_eq!(dimension_lower_bound(7, 2, 186), 2);
    assert_eq!(dimension_lower_bound(7, 2, 12), -85);
    let y = hyper(7, &[1, 0, 0, 0, 0, 1]);
    let err = example_family(&y, 3).unwrap_err().to_string();
    assert!(err.contains("m too small"), "{err}");
    let fam = example_family(&y, 30).unwrap();
    assert_eq!(fam.family_dimension, 26);
    assert_eq!(fam.lower_bound, 2);
    assert!(fam.hom.v_dimension() as i64 >= fam.lower_bound);
    assert!(verify_rigidified(&fam.morphism, &fam.certificate).unwrap());
    assert_eq!(check_liftable(&fam.morphism).unwrap().verdict, Verdict::Liftable);
    assert!(min_pole_order(7, 2) <= 30);
}

#[test]
fn smaller_families() {
    for (p, f) in [(5u64, vec![1i64, 0, 0, 1]), (3, vec![0, 1, 0, 0, 0, 1])] {
        let y = hyper(p, &f);
        if p_rank(&y).unwrap() != 0 || y.genus() < 2 {
            continue;
        }
        let m = min_pole_order(p, y.genus());
        let fam = example_family(&y, m).unwrap();
        assert!(verify_rigidified(&fam.morphism, &fam.certificate).unwrap());
    }
    for c in search_prank0_base(5, 2, 400, None).unwrap().into_iter().take(2) {
        let m = min_pole_order(5, 2);
        let fam = example_family(&c, m).unwrap();
        assert!(fam.hom.dimension >= 1);
        assert_eq!(fam.report.verdict, Verdict::Liftable);
        assert!(verify_rigidified(&fam.morphism, &fam.certificate).unwrap());
    }
}
