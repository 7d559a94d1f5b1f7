use super::*;
use crate::field_poly::Field;

fn cfg(d: usize) -> HypersurfaceConfig {
    HypersurfaceConfig::new(d, Field::Prime(5)).unwrap()
}

fn cfg_q(d: usize) -> HypersurfaceConfig {
    HypersurfaceConfig::new(d, Field::Rational).unwrap()
}

fn pm(field: Field, rows: &[&[&[i64]]]) -> PolyMatrix {
    PolyMatrix::from_i64s(field, rows)
}

/// Rank one: `x^(a_0), …, x^(a_(l-1))` starting at label 0.
fn monomial_chain(c: HypersurfaceConfig, exps: &[usize]) -> Factorization {
    let mut degs = vec![vec![0i64]];
    let mut maps = Vec::new();
    for &a in exps {
        let mut coeffs = vec![0i64; a + 1];
        coeffs[a] = 1;
        maps.push(PolyMatrix::from_i64s(c.field, &[&[&coeffs]]));
        let last = degs.last().unwrap()[0];
        degs.push(vec![last + a as i64]);
    }
    fac_validate(&maps, &degs, c).unwrap()
}

fn xx() -> Factorization {
    monomial_chain(cfg_q(2), &[1])
}

#[test]
fn validate_examples() {
    let x = xx();
    assert_eq!(x.closing().mat(), &pm(Field::Rational, &[&[&[0, 1]]]));
    assert_eq!(x.closing().src(), &[1]);
    assert_eq!(x.closing().tgt(), &[2]);

    let nu0 = monomial_chain(cfg_q(2), &[2]);
    assert_eq!(nu0.closing().mat(), &PolyMatrix::identity(Field::Rational, 1));
    assert_eq!(nu0, nu(cfg_q(2), &[0], 0, 1).unwrap());

    let f = Field::Rational;
    let a = pm(f, &[&[&[0, 1], &[]], &[&[1], &[0, 1]]]);
    let x = fac_validate(&[a.clone()], &[vec![0, -1], vec![1, 0]], cfg_q(2)).unwrap();
    let expected = pm(f, &[&[&[0, 1], &[]], &[&[-1], &[0, 1]]]);
    assert_eq!(x.closing().mat(), &expected);
    assert_eq!(a.mul(&expected), PolyMatrix::scalar_diag(f, 2, &Polynomial::x_pow(f, 2)));
}

#[test]
fn validate_errors() {
    let f = Field::Rational;
    let zero = pm(f, &[&[&[]]]);
    assert_eq!(fac_validate(&[zero], &[vec![0], vec![0]], cfg_q(2)), Err(InvalidFactorization::NonMonic(0)));
    let cube = pm(f, &[&[&[0, 0, 0, 1]]]);
    assert_eq!(fac_validate(&[cube], &[vec![0], vec![3]], cfg_q(2)), Err(InvalidFactorization::NoClosing));
    let x = pm(f, &[&[&[0, 1]]]);
    assert!(matches!(
        fac_validate(&[x.clone()], &[vec![0], vec![0]], cfg_q(2)),
        Err(InvalidFactorization::GradingViolation { map: 0, row: 0, col: 0, expected: 0 })
    ));
    assert!(matches!(fac_validate(&[x.clone()], &[vec![0]], cfg_q(2)), Err(InvalidFactorization::Shape(_))));
    assert!(matches!(fac_validate(&[], &[vec![0]], cfg_q(2)), Err(InvalidFactorization::Shape(_))));
    // Singular 2x2 composite.
    let sing = pm(f, &[&[&[0, 1], &[0, 1]], &[&[0, 1], &[0, 1]]]);
    assert_eq!(fac_validate(&[sing], &[vec![0, 0], vec![1, 1]], cfg_q(2)), Err(InvalidFactorization::NonMonic(0)));
}

#[test]
fn zigzag_examples() {
    for l in 1..=3 {
        for k in 0..=l {
            assert_eq!(zigzag_check(&nu(cfg(3), &[0, -1], k, l).unwrap()), Ok(()));
        }
    }
    assert_eq!(zigzag_check(&xx()), Ok(()));
    assert_eq!(zigzag_check(&monomial_chain(cfg(3), &[1, 1])), Ok(()));
    assert_eq!(zigzag_check(&monomial_chain(cfg(3), &[0, 2])), Ok(()));
}

#[test]
fn nu_examples() {
    let c = cfg_q(2);
    let f = Field::Rational;
    let x2 = PolyMatrix::scalar_diag(f, 1, &Polynomial::x_pow(f, 2));
    let id = PolyMatrix::identity(f, 1);
    let n0 = nu(c, &[0], 0, 1).unwrap();
    assert_eq!((n0.map(0).mat(), n0.closing().mat()), (&x2, &id));
    let n1 = nu(c, &[0], 1, 1).unwrap();
    assert_eq!((n1.map(0).mat(), n1.closing().mat()), (&id, &x2));
    let n12 = nu(c, &[0], 1, 2).unwrap();
    assert_eq!((n12.map(0).mat(), n12.map(1).mat(), n12.closing().mat()), (&id, &x2, &id));
    let raw: Vec<PolyMatrix> = n12.base_maps().iter().map(|a| a.mat().clone()).collect();
    assert_eq!(fac_validate(&raw, n12.base_degs(), c).unwrap(), n12);
    assert!(nu(c, &[0], 3, 2).is_err());
    assert!(nu(c, &[0], 0, 0).is_err());
}

#[test]
fn rotation_examples() {
    let c = cfg(3);
    let x = monomial_chain(c, &[1]);
    let r = rotate(&x, false);
    assert_eq!(r.map(0).mat(), x.closing().mat());
    assert_eq!(r.closing().mat(), x.map(0).mat());
    assert_eq!(r.labels(0), vec![1]);
    assert_eq!(r.labels(1), vec![3]);
    assert_eq!(zigzag_check(&r), Ok(()));

    for x in [monomial_chain(c, &[1, 0]), monomial_chain(c, &[1, 1, 1]), nu(c, &[0, 2], 1, 2).unwrap(), Factorization::zero(c, 2)] {
        let mut y = x.clone();
        for _ in 0..=x.l() {
            y = rotate(&y, false);
            assert_eq!(zigzag_check(&y), Ok(()));
        }
        assert_eq!(y.base_maps(), x.base_maps());
        assert_eq!(y.base_closing(), x.base_closing());
        assert_eq!(y.base_degs(), x.base_degs());
        assert_eq!(y.twist(), x.twist() + 1);
        assert_eq!(y, x.tau(1));
        assert_eq!(rotate(&rotate(&x, true), false), x);
        assert_eq!(rotate(&rotate(&x, false), true), x);
        let mut z = x.clone();
        for _ in 0..=x.l() {
            z = rotate(&z, true);
        }
        assert_eq!(z, x.tau(-1));
    }
}

#[test]
fn sum_and_contraction_examples() {
    let c = cfg_q(2);
    let x = xx();
    assert_eq!(direct_sum(&x, &Factorization::zero(c, 1)).unwrap(), x);
    let s = direct_sum(&nu(c, &[0], 0, 1).unwrap(), &nu(c, &[0], 1, 1).unwrap()).unwrap();
    assert_eq!(zigzag_check(&s), Ok(()));
    let xx2 = direct_sum(&x, &x).unwrap();
    assert_eq!(xx2.map(0), GradedMatrix::x_pow(Field::Rational, &[0, 0], 1));
    assert_eq!(xx2.closing(), GradedMatrix::x_pow(Field::Rational, &[1, 1], 1));
    assert!(direct_sum(&x, &monomial_chain(c, &[1, 1])).is_err());

    assert_eq!(contract(&x), x);
    let c3 = cfg_q(3);
    let g = contract(&monomial_chain(c3, &[1, 1]));
    assert_eq!(g.map(0), GradedMatrix::x_pow(Field::Rational, &[0], 2));
    assert_eq!(g.closing(), GradedMatrix::x_pow(Field::Rational, &[2], 1));
    let nl = contract(&nu(c3, &[0], 2, 2).unwrap());
    assert_eq!(nl, nu(c3, &[0], 1, 1).unwrap());
}

#[test]
fn hom_examples() {
    let x = xx();
    let end = fac_hom_basis(&x, &x);
    assert_eq!(end.len(), 1);
    assert!(FacMap::new(&x, &x, end[0].components().to_vec()).is_ok());
    assert!(crate::linalg::in_span(Field::Rational, &[end[0].coords()], &FacMap::identity(&x).coords()));
    assert!(fac_hom_basis(&x, &Factorization::zero(x.cfg(), 1)).is_empty());
    // A shift pushes the identity out of degree zero.
    assert_eq!(fac_hom_basis(&x, &x.shifted(-1)).len(), 0);
    assert_eq!(fac_hom_basis(&x, &x.shifted(1)).len(), 1);
    assert_eq!(fac_stable_hom_dim(&x, &x), 1);
    assert!(!fac_projective_test(&x));

    let c = cfg_q(2);
    for k in 0..=1 {
        let p = nu(c, &[0], k, 1).unwrap();
        assert!(fac_projective_test(&p));
        assert_eq!(fac_stable_hom_dim(&x, &p), 0);
        assert_eq!(fac_stable_hom_dim(&p, &x), 0);
    }
    let both = direct_sum(&nu(c, &[0], 0, 1).unwrap(), &nu(c, &[3], 1, 1).unwrap()).unwrap();
    assert!(fac_projective_test(&both));
}

#[test]
fn closing_square_is_checked() {
    let x = xx();
    let bad = FacMap::new_unchecked(vec![GradedMatrix::identity(Field::Rational, &[0]), GradedMatrix::zero(Field::Rational, &[1], &[1])]);
    assert_eq!(bad.failing_square(&x, &x), Some(0));
    assert!(FacMap::new(&x, &x, bad.components().to_vec()).is_err());
}

#[test]
fn transport_examples() {
    let c = cfg(3);
    let x = monomial_chain(c, &[1, 1]);
    let a = vec![0i64];
    let nl = nu(c, &a, 2, 2).unwrap();
    let id = FacMap::identity(&nl);
    let h = nu_l_left_transport(&id).unwrap();
    assert_eq!(h, GradedMatrix::identity(Field::Prime(5), &a));
    assert_eq!(nu_l_left_inverse(&nl, &h).unwrap(), id);

    for k in 1..=2 {
        let h = GradedMatrix::identity(Field::Prime(5), &x.labels(k));
        let g = nu_k_left_inverse(&x, k, &h).unwrap();
        let src = nu(c, &x.labels(k).iter().map(|n| n - 3).collect::<Vec<_>>(), k - 1, 2).unwrap();
        assert!(FacMap::new(&src, &x, g.components().to_vec()).is_ok());
        assert_eq!(nu_k_left_transport(&g, k).unwrap(), h);
    }
    for k in 0..=2 {
        let h = GradedMatrix::identity(Field::Prime(5), &x.labels(k));
        let g = nu_k_right_inverse(&x, k, &h).unwrap();
        let tgt = nu(c, &x.labels(k), k, 2).unwrap();
        assert!(FacMap::new(&x, &tgt, g.components().to_vec()).is_ok());
        assert_eq!(nu_k_right_transport(&g, k).unwrap(), h);
    }
    assert!(nu_k_left_inverse(&x, 0, &GradedMatrix::identity(Field::Prime(5), &[0])).is_err());
    assert!(nu_k_right_inverse(&x, 1, &GradedMatrix::identity(Field::Prime(5), &[7])).is_err());
}

#[test]
fn resolution_examples() {
    let x = xx();
    let res = nu_resolution(&x, Side::Epic).unwrap();
    let c = x.cfg();
    let expected = direct_sum(&nu(c, &[0], 1, 1).unwrap(), &nu(c, &[-1], 0, 1).unwrap()).unwrap();
    assert_eq!(res.object, expected);
    assert!(res.is_termwise_split_exact());
    assert_eq!(zigzag_check(&res.other), Ok(()));
    assert!(fac_projective_test(&res.object));
    assert!(FacMap::new(&res.object, &x, res.map.components().to_vec()).is_ok());

    let nl = nu(c, &[0], 1, 1).unwrap();
    let res = nu_resolution(&nl, Side::Epic).unwrap();
    assert!(res.is_termwise_split_exact());
    assert!(fac_projective_test(&res.other));

    for x in [monomial_chain(cfg(3), &[1, 1]), monomial_chain(cfg(3), &[2, 0]), xx().tau(2)] {
        for side in [Side::Epic, Side::Monic] {
            let res = nu_resolution(&x, side).unwrap();
            assert!(res.is_termwise_split_exact(), "{side:?}");
            assert_eq!(zigzag_check(&res.other), Ok(()));
            assert!(fac_projective_test(&res.object));
            assert_eq!(res.other.rank(), x.l() * x.rank());
        }
    }
}
