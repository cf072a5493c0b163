use cartier_lift::field_linalg::{
    mat_kernel, span_basis, stable_rank, subspace_intersect, Fp, MatrixModP, Poly, PrimeField,
};
use proptest::prelude::*;

fn k(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

#[test]
fn kernel_examples() {
    assert_eq!(mat_kernel(&MatrixModP::from_rows(k(5), &[vec![0]])), vec![vec![1]]);
    assert!(mat_kernel(&MatrixModP::identity(k(3), 2)).is_empty());
    let m = MatrixModP::from_rows(k(7), &[vec![0, 3], vec![0, 0]]);
    assert_eq!(mat_kernel(&m), vec![vec![1, 0]]);
}

#[test]
fn intersection_examples() {
    let f5 = k(5);
    let e1 = vec![1, 0];
    let e2 = vec![0, 1];
    assert_eq!(subspace_intersect(f5, 2, std::slice::from_ref(&e1), std::slice::from_ref(&e1)).unwrap(), vec![e1.clone()]);
    assert!(subspace_intersect(f5, 2, &[e1], &[e2]).unwrap().is_empty());

    let f3 = k(3);
    let b1 = [vec![1, 0, 0], vec![0, 1, 0]];
    let b2 = [vec![1, 1, 0], vec![0, 0, 1]];
    let i = subspace_intersect(f3, 3, &b1, &b2).unwrap();
    assert_eq!(i.len(), 1);
    let v = &i[0];
    assert!(v[0] != 0 && v[0] == v[1] && v[2] == 0);

    assert!(subspace_intersect(f3, 3, &[vec![1, 0]], &b2).is_err());
}

#[test]
fn stable_rank_examples() {
    assert_eq!(stable_rank(&MatrixModP::from_rows(k(5), &[vec![0]])).unwrap(), 0);
    assert_eq!(stable_rank(&MatrixModP::from_rows(k(5), &[vec![2]])).unwrap(), 1);
    let m = MatrixModP::from_rows(k(7), &[vec![0, 3], vec![0, 0]]);
    assert_eq!(stable_rank(&m).unwrap(), 0);
    assert!(stable_rank(&MatrixModP::zeros(k(7), 2, 3)).is_err());
}

#[test]
fn polynomial_basics() {
    let f = Poly::from_ints(k(7), &[1, 0, 0, 0, 0, 1]);
    assert_eq!(f.pow(3).coeffs(), &[1, 0, 0, 0, 0, 3, 0, 0, 0, 0, 3, 0, 0, 0, 0, 1]);
    assert!(f.is_squarefree());
    assert!(!Poly::from_ints(k(5), &[1, 2, 1]).is_squarefree());
    assert_eq!(Poly::from_ints(k(5), &[-1, 0, 1]).roots(), vec![1, 4]);
    let (q, r) = f.div_rem(&Poly::from_ints(k(7), &[1, 1]));
    assert!(r.is_zero());
    assert_eq!(q.mul(&Poly::from_ints(k(7), &[1, 1])), f);
}

fn matrix(p: u64, rows: usize, cols: usize) -> impl Strategy<Value = MatrixModP> {
    prop::collection::vec(0..p as Fp, rows * cols)
        .prop_map(move |e| MatrixModP::new(k(p), rows, cols, e))
}

fn square() -> impl Strategy<Value = MatrixModP> {
    (prop::sample::select(vec![3u64, 5, 7]), 1usize..6)
        .prop_flat_map(|(p, n)| matrix(p, n, n))
}

fn vectors(p: u64, n: usize) -> impl Strategy<Value = Vec<Vec<Fp>>> {
    prop::collection::vec(prop::collection::vec(0..p as Fp, n), 0..4)
}

proptest! {
    #[test]
    fn rank_nullity(m in (1usize..7, 1usize..7).prop_flat_map(|(r, c)| matrix(5, r, c))) {
        let ker = m.kernel();
        prop_assert_eq!(m.rank() + ker.len(), m.cols());
        for v in &ker {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|&x| x == 0));
        }
        prop_assert_eq!(span_basis(m.field(), m.cols(), &ker).unwrap().len(), ker.len());
    }

    #[test]
    fn intersection_is_symmetric_and_idempotent(a in vectors(3, 4), b in vectors(3, 4)) {
        let f = k(3);
        let ab = subspace_intersect(f, 4, &a, &b).unwrap();
        let ba = subspace_intersect(f, 4, &b, &a).unwrap();
        prop_assert_eq!(span_basis(f, 4, &ab).unwrap(), span_basis(f, 4, &ba).unwrap());
        let aa = subspace_intersect(f, 4, &a, &a).unwrap();
        prop_assert_eq!(span_basis(f, 4, &aa).unwrap(), span_basis(f, 4, &a).unwrap());
        let da = span_basis(f, 4, &a).unwrap().len();
        let db = span_basis(f, 4, &b).unwrap().len();
        prop_assert!(ab.len() + 4 >= da + db);
        prop_assert!(ab.len() <= da.min(db));
    }

    #[test]
    fn stable_rank_is_stable(m in square()) {
        let sq = m.mul(&m).unwrap();
        prop_assert_eq!(m.stable_rank().unwrap(), sq.stable_rank().unwrap());
        prop_assert_eq!(m.stable_rank().unwrap(), m.pow(m.rows() as u64).unwrap().rank());
    }
}
