//! Algebraic laws of real-linear operators, checked on random 4x4 operators.

use proptest::prelude::*;
use relwave_core::linalg::{c, norm, spinor_distance, ComplexMatrix, RealLinearOperator, Spinor, C64};

fn complex() -> impl Strategy<Value = C64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| c(a, b))
}

fn matrix() -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec(complex(), 16).prop_map(|d| ComplexMatrix::new(4, 4, d).unwrap())
}

fn operator() -> impl Strategy<Value = RealLinearOperator> {
    (matrix(), matrix()).prop_map(|(a, b)| RealLinearOperator::new(a, b).unwrap())
}

fn spinor() -> impl Strategy<Value = Spinor> {
    proptest::array::uniform4(complex())
}

fn real_inner(x: &Spinor, y: &Spinor) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a.conj() * b).re).sum()
}

proptest! {
    #[test]
    fn compose_matches_sequential_application(p in operator(), q in operator(), x in spinor()) {
        let pq = RealLinearOperator::compose(&p, &q).unwrap();
        let seq = q.apply_spinor(&p.apply_spinor(&x));
        prop_assert!(spinor_distance(&pq.apply_spinor(&x), &seq) <= 1e-12 * (1.0 + norm(&seq)));
    }

    #[test]
    fn compose_is_associative(p in operator(), q in operator(), r in operator()) {
        let left = r.after(&q.after(&p).unwrap()).unwrap();
        let right = r.after(&q).unwrap().after(&p).unwrap();
        prop_assert!(left.distance(&right).unwrap() <= 1e-11 * (1.0 + left.frobenius_norm()));
    }

    #[test]
    fn adjoint_is_an_involution_and_reverses_order(p in operator(), q in operator()) {
        prop_assert_eq!(p.adjoint().adjoint(), p.clone());
        let lhs = q.after(&p).unwrap().adjoint();
        let rhs = p.adjoint().after(&q.adjoint()).unwrap();
        prop_assert!(lhs.distance(&rhs).unwrap() <= 1e-11 * (1.0 + lhs.frobenius_norm()));
    }

    #[test]
    fn adjoint_is_the_real_inner_product_transpose(p in operator(), x in spinor(), y in spinor()) {
        let lhs = real_inner(&p.apply_spinor(&x), &y);
        let rhs = real_inner(&x, &p.adjoint().apply_spinor(&y));
        prop_assert!((lhs - rhs).abs() <= 1e-11 * (1.0 + lhs.abs()));
    }

    #[test]
    fn antilinear_parts_conjugate_scalars(b in matrix(), x in spinor(), s in complex()) {
        let op = RealLinearOperator::antilinear(b);
        let scaled = op.apply_spinor(&x.map(|z| z * s));
        let expected = op.apply_spinor(&x).map(|z| z * s.conj());
        prop_assert!(spinor_distance(&scaled, &expected) <= 1e-12 * (1.0 + norm(&expected)));
    }

    #[test]
    fn parity_of_compositions(a in matrix(), b in matrix()) {
        let la = RealLinearOperator::linear(a.clone());
        let ab = RealLinearOperator::antilinear(b.clone());
        prop_assert!(ab.after(&ab).unwrap().is_linear());
        prop_assert!(la.after(&ab).unwrap().is_antilinear());
        prop_assert!(ab.after(&la).unwrap().is_antilinear());
        prop_assert!(la.after(&la).unwrap().is_linear());
    }

    #[test]
    fn identity_is_neutral(p in operator()) {
        let id = RealLinearOperator::identity(4);
        prop_assert_eq!(p.after(&id).unwrap(), p.clone());
        prop_assert_eq!(id.after(&p).unwrap(), p);
    }
}
