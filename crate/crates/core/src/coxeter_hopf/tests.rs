use super::*;
use crate::cartan_root::{build_cartan, Series};
use crate::representations::builtin_rep;

fn setup(s: Series, r: usize, pi: &[usize]) -> CoxeterSetup {
    CoxeterSetup::new(&build_cartan(s, r).unwrap(), pi, None).unwrap()
}

fn id_pi(r: usize) -> Vec<usize> {
    (0..r).collect()
}

#[test]
fn psi_on_a2_generators() {
    let s = setup(Series::A, 2, &[0, 1]);
    let st = &s.standard;
    let e1 = s.psi_forward(&s.coxeter.e(0)).unwrap();
    assert_eq!(e1, st.mul(&st.e(0), &st.l(1, Q::from(1))).unwrap());
    let e2 = s.psi_forward(&s.coxeter.e(1)).unwrap();
    assert_eq!(e2, st.e(1));
    let f1 = s.psi_forward(&s.coxeter.f(0)).unwrap();
    assert_eq!(f1, st.mul(&st.l(1, Q::from(-1)), &st.f(0)).unwrap());
    // ψ^{-1} ψ = id on generators
    for i in 0..2 {
        let x = s.coxeter.e(i);
        assert_eq!(s.psi_inverse(&s.psi_forward(&x).unwrap()).unwrap(), x);
    }
}

#[test]
fn psi_transports_relations() {
    for (t, r, pi) in [
        (Series::A, 1, vec![0]),
        (Series::A, 2, vec![0, 1]),
        (Series::A, 2, vec![1, 0]),
        (Series::B, 2, vec![0, 1]),
        (Series::C, 2, vec![1, 0]),
        (Series::A, 3, vec![1, 0, 2]),
    ] {
        let s = setup(t, r, &pi);
        let bad = s.check_psi_relations().unwrap();
        assert!(bad.is_empty(), "{t}{r} {pi:?} {bad:?}");
    }
}

#[test]
fn characters_vanish_on_serre() {
    for (t, r) in [(Series::A, 2), (Series::B, 2), (Series::G, 2), (Series::A, 3)] {
        let s = setup(t, r, &id_pi(r));
        let chi = Character::trivial(Direction::Positive, r);
        let chibar = Character::trivial(Direction::Negative, r);
        for i in 0..r {
            for j in 0..r {
                if i != j {
                    assert!(chi.apply(&s.coxeter.serre_element(i, j, true)).unwrap().is_zero());
                    assert!(chibar.apply(&s.coxeter.serre_element(i, j, false)).unwrap().is_zero());
                }
            }
        }
    }
}

#[test]
fn character_rejects_vanishing_values() {
    let err = Character::new(Direction::Positive, vec!["q - 1".parse().unwrap()]);
    assert!(matches!(err, Err(Error::Domain(_))));
    assert!(Character::new(Direction::Positive, vec!["2q".parse().unwrap()]).is_ok());
}

#[test]
fn rho_chi_on_sl2() {
    let s = setup(Series::A, 1, &[0]);
    let a = &s.coxeter;
    let chi = Character::new(Direction::Positive, vec![QScalar::from_int(3)]).unwrap();
    let fe = a.mul(&a.f(0), &a.e(0)).unwrap();
    assert_eq!(s.rho_chi(&fe, &chi).unwrap(), a.f(0).scale(&QScalar::from_int(3)));
    // e f = f e + (K − K^{-1})/(q − q^{-1})
    let ef = a.mul(&a.e(0), &a.f(0)).unwrap();
    let inv = (&QScalar::q() - &QScalar::q().inv()).inv();
    let expect = &(&a.f(0).scale(&QScalar::from_int(3)) + &a.k(0, 1).scale(&inv)) - &a.k(0, -1).scale(&inv);
    assert_eq!(s.rho_chi(&ef, &chi).unwrap(), expect);
    // dot action of e on f: ρ_χ([e, f])
    let v = s.dot_action(&a.e(0), &a.f(0), &chi).unwrap();
    assert_eq!(v, &a.k(0, 1).scale(&inv) - &a.k(0, -1).scale(&inv));
    assert!(s.rho_chi(&fe, &Character::trivial(Direction::Negative, 1)).is_err());
}

#[test]
fn root_vectors_are_cartan_free_and_characters_nonzero() {
    for (t, r) in [(Series::A, 3), (Series::B, 2), (Series::C, 3)] {
        let s = setup(t, r, &id_pi(r));
        let chi = Character::trivial(Direction::Positive, r);
        let chibar = Character::trivial(Direction::Negative, r);
        for (k, (x, y)) in s.character_on_roots(&chi, &chibar).unwrap().into_iter().enumerate() {
            if s.roots.is_simple(k) {
                assert!(x.is_one() && y.is_one());
            }
        }
    }
}

#[test]
fn hopf_axioms_rank_one_and_two() {
    for (t, r, pi) in [(Series::A, 1, vec![0]), (Series::A, 2, vec![1, 0]), (Series::B, 2, vec![0, 1])] {
        let s = setup(t, r, &pi);
        let bad: Vec<_> = s
            .hopf_axiom_checks()
            .unwrap()
            .into_iter()
            .chain(s.coproduct_relation_checks().unwrap())
            .filter(|c| !c.passed)
            .collect();
        assert!(bad.is_empty(), "{t}{r}: {bad:?}");
        assert!(s.antipode_square_check().unwrap().passed());
    }
}

#[test]
fn sl2_central_element() {
    let s = setup(Series::A, 1, &[0]);
    let v = builtin_rep(Series::A, 1, "vector").unwrap();
    let c = s.central_element(&v).unwrap();
    assert!(!c.is_zero());
    assert!(s.centrality_failures(&c).unwrap().is_empty());
    let vv = v.direct_sum(&v);
    let c2 = s.central_element(&vv).unwrap();
    assert_eq!(c2, c.scale(&QScalar::from_int(2)));
    // projection agrees with ρ_χ applied afterwards
    let chi = Character::trivial(Direction::Positive, 1);
    assert_eq!(s.projected_central_element(&v, &chi).unwrap(), s.rho_chi(&c, &chi).unwrap());
}

#[test]
fn sl3_central_element() {
    let s = setup(Series::A, 2, &[0, 1]);
    let v = builtin_rep(Series::A, 2, "vector").unwrap();
    let c = s.central_element(&v).unwrap();
    assert!(s.centrality_failures(&c).unwrap().is_empty());
}

#[test]
fn r_matrix_identities_on_vector_reps() {
    for (t, r, pi) in [(Series::A, 1, vec![0]), (Series::A, 2, vec![0, 1]), (Series::A, 2, vec![1, 0])] {
        let s = setup(t, r, &pi);
        let v = builtin_rep(t, r, "vector").unwrap();
        assert!(s.yang_baxter_holds(&v).unwrap());
        assert!(s.quasitriangular_failures(&v).unwrap().is_empty());
        assert_eq!(s.r_matrix_antipode_full(&v, &v).unwrap(), s.r_matrix_full(&v, &v).unwrap());
    }
}
