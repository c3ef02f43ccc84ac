use proptest::prelude::*;

use super::*;
use crate::cartan_root::{build_cartan, Series};
use crate::qalgebra::Monomial;
use crate::representations::builtin_rep;

fn qv(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| Q::from(x)).collect()
}

fn setup(s: Series, r: usize) -> CoxeterSetup {
    CoxeterSetup::new(&build_cartan(s, r).unwrap(), &(0..r).collect::<Vec<_>>(), None).unwrap()
}

fn trivial(r: usize) -> (Character, Character) {
    (
        Character::trivial(Direction::Positive, r),
        Character::trivial(Direction::Negative, r),
    )
}

#[test]
fn shift_past_character() {
    let d = [1, 1];
    let t = DifferenceOperator::shift(&d, qv(&[1, 0]));
    let ch = DifferenceOperator::character(&d, qv(&[1, 0]));
    let lhs = t.mul(&ch);
    let rhs = ch.mul(&t).scale(&QScalar::q_pow_int(-1));
    assert_eq!(lhs, rhs);
    // shifts orthogonal to the character commute with it
    let t2 = DifferenceOperator::shift(&d, qv(&[0, 1]));
    assert!(t2.commutator(&ch).is_zero());
    // non-trivial symmetrizer enters the pairing
    let b = [2, 1];
    let tb = DifferenceOperator::shift(&b, qv(&[1, 0]));
    let cb = DifferenceOperator::character(&b, qv(&[1, 0]));
    assert_eq!(tb.mul(&cb), cb.mul(&tb).scale(&QScalar::q_pow_int(-2)));
}

fn arb_op(d: &[i64], seed: &[(i8, i8, i8, i8, i8)]) -> DifferenceOperator {
    let mut out = DifferenceOperator::zero(d);
    for &(a, b, c, e, k) in seed {
        out.add_term(
            vec![Q::from(i64::from(a % 3)), Q::new(i64::from(b % 3), 2)],
            vec![Q::from(i64::from(c % 3)), Q::from(i64::from(e % 2))],
            &QScalar::from_int(i64::from(k % 4) + 5) * &QScalar::q_pow_int(i64::from(a % 2)),
        );
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn operator_product_is_associative(
        a in proptest::collection::vec(any::<(i8, i8, i8, i8, i8)>(), 1..4),
        b in proptest::collection::vec(any::<(i8, i8, i8, i8, i8)>(), 1..4),
        c in proptest::collection::vec(any::<(i8, i8, i8, i8, i8)>(), 1..4),
    ) {
        let d = [2, 1];
        let (x, y, z) = (arb_op(&d, &a), arb_op(&d, &b), arb_op(&d, &c));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&DifferenceOperator::identity(&d)), x.clone());
    }

    #[test]
    fn l_is_multiplicative(
        a in proptest::collection::vec((0usize..2, 0usize..3, -2i64..3, -2i64..3), 1..3),
        b in proptest::collection::vec((0usize..2, 0usize..3, -2i64..3, -2i64..3), 1..3),
    ) {
        let s = setup(Series::A, 2);
        let alg = &s.coxeter;
        let chibar = Character::new(Direction::Negative, vec![QScalar::from_int(2), QScalar::q()]).unwrap();
        let build = |seed: &[(usize, usize, i64, i64)]| {
            let mut x = alg.zero();
            for &(first, len, y1, y2) in seed {
                let mut m = Monomial::unit(2);
                m.f = (0..len).map(|k| (first + k) % 2).collect();
                m.cartan = vec![Q::new(y1, 3), Q::from(y2)];
                x.add_term(m, QScalar::from_int(1 + y1.abs()));
            }
            x
        };
        let (u, v) = (build(&a), build(&b));
        let uv = alg.mul(&u, &v).unwrap();
        let lhs = l_realize(s.cartan(), &uv, &chibar).unwrap();
        let rhs = l_realize(s.cartan(), &u, &chibar).unwrap().mul(&l_realize(s.cartan(), &v, &chibar).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn l_on_generators() {
    let s = setup(Series::A, 1);
    let (_, chibar) = trivial(1);
    let d = &s.cartan().d;
    let f = l_realize(s.cartan(), &s.coxeter.f(0), &chibar).unwrap();
    assert_eq!(f, DifferenceOperator::character(d, qv(&[1])));
    let two_rho = s.coxeter.cartan_exp(&[Q::from(2)]);
    assert_eq!(
        l_realize(s.cartan(), &two_rho, &chibar).unwrap(),
        DifferenceOperator::shift(d, qv(&[2]))
    );
    assert!(l_realize(s.cartan(), &s.coxeter.e(0), &chibar).is_err());
}

#[test]
fn non_simple_root_vectors_realize_to_zero() {
    for (t, r) in [(Series::A, 2), (Series::B, 2)] {
        let s = setup(t, r);
        let (_, chibar) = trivial(r);
        for k in 0..s.roots.len() {
            if s.roots.is_simple(k) {
                continue;
            }
            let x = &s.f_beta[k];
            assert!(l_realize(s.cartan(), x, &chibar).unwrap().is_zero());
            let simple = &s.f_beta[s.roots.simple(0)];
            let prod = s.coxeter.mul(simple, x).unwrap();
            assert!(l_realize(s.cartan(), &prod, &chibar).unwrap().is_zero());
        }
    }
}

#[test]
fn phi_conjugation_matches_operator_product() {
    let d = [1, 1];
    let rho = qv(&[1, 1]);
    let op = arb_op(&d, &[(1, 2, 1, 1, 3), (0, 1, 2, 0, 1), (2, 0, 1, 1, 2)]);
    // φ is multiplication by e^{hρ(y)}, i.e. the character −ρ
    let phi = DifferenceOperator::character(&d, rho.iter().map(|x| -x).collect());
    let phi_inv = DifferenceOperator::character(&d, rho.clone());
    assert_eq!(op.conjugate_by_phi(&rho), phi.mul(&op).mul(&phi_inv));
    assert_eq!(op.conjugate_by_phi(&rho).conjugate_by_phi_inverse(&rho), op);
    let id = DifferenceOperator::identity(&d);
    assert_eq!(id.conjugate_by_phi(&rho), id);
    let ch = DifferenceOperator::character(&d, qv(&[1, 0]));
    assert_eq!(ch.conjugate_by_phi(&rho), ch);
}

#[test]
fn sl2_hamiltonian() {
    let s = setup(Series::A, 1);
    let v = builtin_rep(Series::A, 1, "vector").unwrap();
    let (chi, chibar) = trivial(1);
    let m = toda_hamiltonian(&s, &v, &chi, &chibar).unwrap();
    let d = &s.cartan().d;
    let qq = &QScalar::q() - &QScalar::q().inv();
    let expect = DifferenceOperator::shift(d, qv(&[2]))
        .add(&DifferenceOperator::shift(d, qv(&[-2])))
        .add(&DifferenceOperator::character(d, qv(&[1])).scale(&(&qq * &qq)));
    assert_eq!(m, expect);
}

#[test]
fn character_rescaling_invariance() {
    let s = setup(Series::A, 2);
    let v = builtin_rep(Series::A, 2, "vector").unwrap();
    let (chi, chibar) = trivial(2);
    let m = toda_hamiltonian(&s, &v, &chi, &chibar).unwrap();
    let u: QScalar = "2q".parse().unwrap();
    let chi_u = Character::new(Direction::Positive, vec![u.clone(), u.clone()]).unwrap();
    let chibar_u = Character::new(Direction::Negative, vec![u.inv(), u.inv()]).unwrap();
    assert_eq!(toda_hamiltonian(&s, &v, &chi_u, &chibar_u).unwrap(), m);
}

#[test]
fn sl3_fundamentals_commute() {
    let s = setup(Series::A, 2);
    let (chi, chibar) = trivial(2);
    let ops: Vec<_> = ["fundamental:1", "fundamental:2"]
        .iter()
        .map(|w| toda_hamiltonian(&s, &builtin_rep(Series::A, 2, w).unwrap(), &chi, &chibar).unwrap())
        .collect();
    assert!(check_commutativity(&ops).passed());
    // negative control: perturb one coefficient
    let mut bad = ops[0].clone();
    let (k, _) = bad.terms().iter().find(|((_, la), _)| la.iter().any(|x| !x.is_zero())).unwrap();
    let (mu, la) = k.clone();
    bad.add_term(la, mu, QScalar::one());
    let rep = check_commutativity(&[bad, ops[1].clone()]);
    assert_eq!(rep.failures.len(), 1);
}

#[test]
fn reference_differs_by_cross_term_sign() {
    for r in 1..=2 {
        let c = build_cartan(Series::A, r).unwrap();
        let s = setup(Series::A, r);
        let v = builtin_rep(Series::A, r, "vector").unwrap();
        let (chi, chibar) = trivial(r);
        let m = toda_hamiltonian(&s, &v, &chi, &chibar).unwrap();
        let refr = sl_reference(&c, &v, &chi, &chibar).unwrap();
        let rep = term_ratio(&m, &refr);
        assert!(rep.only_in_left.is_empty() && rep.only_in_right.is_empty());
        for ((_, la), ratio) in &rep.ratios {
            let expect = if la.iter().all(Zero::is_zero) { 1 } else { -1 };
            assert_eq!(*ratio, QScalar::from_int(expect));
        }
        assert!(!rep.passed());
    }
}

#[test]
fn classical_expansion_of_shift() {
    let d = [1, 1];
    let t = DifferenceOperator::shift(&d, qv(&[2, -1]));
    let e = classical_limit(&t, 2).unwrap();
    let r = |n: i64, m: i64| BigRational::new(n.into(), m.into());
    assert_eq!(e.coeff(&qv(&[0, 0]), &[0, 0], 0), r(1, 1));
    assert_eq!(e.coeff(&qv(&[0, 0]), &[1, 0], 1), r(2, 1));
    assert_eq!(e.coeff(&qv(&[0, 0]), &[0, 1], 1), r(-1, 1));
    assert_eq!(e.coeff(&qv(&[0, 0]), &[2, 0], 2), r(2, 1));
    assert_eq!(e.coeff(&qv(&[0, 0]), &[1, 1], 2), r(-2, 1));
    assert_eq!(e.coeff(&qv(&[0, 0]), &[0, 2], 2), r(1, 2));
    assert!(classical_limit(&DifferenceOperator::zero(&d), 3).unwrap().terms.is_empty());
}

#[test]
fn sl2_classical_limit() {
    let c = build_cartan(Series::A, 1).unwrap();
    let s = setup(Series::A, 1);
    let v = builtin_rep(Series::A, 1, "vector").unwrap();
    let (chi, chibar) = trivial(1);
    let m = toda_hamiltonian(&s, &v, &chi, &chibar).unwrap();
    let cmp = compare_classical(&classical_limit(&m, 2).unwrap(), &c, &chi, &chibar).unwrap();
    assert!(cmp.passed(), "{cmp:?}");
    assert_eq!(cmp.identity_h0, BigRational::from_integer(2.into()));
    assert_eq!(cmp.normalization, Some(BigRational::from_integer(2.into())));
    assert_eq!(cmp.potential_gauge, vec![Some(BigRational::from_integer(2.into()))]);
}

#[test]
fn json_round_trip() {
    let s = setup(Series::A, 2);
    let v = builtin_rep(Series::A, 2, "vector").unwrap();
    let (chi, chibar) = trivial(2);
    let m = toda_hamiltonian(&s, &v, &chi, &chibar).unwrap();
    let back = DifferenceOperator::from_json(&s.cartan().d, &m.to_json()).unwrap();
    assert_eq!(back, m);
    assert!(m.to_latex().contains("T_{"));
}
