use facto_core::equivalence_harness::random::{random_chain, random_chain_map, random_fac_map, random_factorization, random_graded_matrix, random_module};
use facto_core::equivalence_harness::hom_dim_compare;
use facto_core::factorization::{
    contract, direct_sum, fac_hom_basis, fac_projective_test, fac_stable_hom_dim, fac_validate, nu, nu_k_left_inverse, nu_k_left_transport,
    nu_k_right_inverse, nu_k_right_transport, nu_l_left_inverse, nu_l_left_transport, rotate, zigzag_check, FacMap, Factorization,
};
use facto_core::field_poly::Field;
use facto_core::functors::{cok, jq_sequence, to_ldiagram};
use facto_core::hypersurface_module::{map_ker_cok_im, module_from_presentation, module_iso, HypersurfaceConfig};
use facto_core::monochain::{
    chain_hom_basis, chain_iso_test, chain_projective_cover, chain_projective_test, chain_stable_hom_dim, iota_embed, mu_trivial, MonoChain,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cfg(d: usize) -> HypersurfaceConfig {
    HypersurfaceConfig::new(d, Field::Prime(3)).unwrap()
}

fn shape() -> impl Strategy<Value = (u64, usize, usize)> {
    (any::<u64>(), 2usize..=3, 1usize..=3)
}

fn fac(rng: &mut ChaCha8Rng, c: HypersurfaceConfig, l: usize) -> Factorization {
    random_factorization(rng, c, l, 2, c.d as i64, &[])
}

fn chain(rng: &mut ChaCha8Rng, c: HypersurfaceConfig, l: usize) -> MonoChain {
    random_chain(rng, c, l, 2, c.d as i64)
}

fn trivial(rng: &mut ChaCha8Rng, c: HypersurfaceConfig, l: usize) -> Factorization {
    let k = rng.gen_range(0..=l);
    let n = rng.gen_range(-(c.d as i64)..=0);
    nu(c, &[n], k, l).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn chain_covers(seed_d_l in shape()) {
        let (seed, d, l) = seed_d_l;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = chain(&mut rng, cfg(d), l);
        let (p, cover) = chain_projective_cover(&u);
        prop_assert!(chain_projective_test(&p));
        prop_assert!(cover.is_epi());
    }

    #[test]
    fn chain_stable_hom_laws(seed_d_l in shape()) {
        let (seed, d, l) = seed_d_l;
        let c = cfg(d);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (u, v, w) = (chain(&mut rng, c, l), chain(&mut rng, c, l), chain(&mut rng, c, l));
        let free = facto_core::hypersurface_module::RModule::free(c, &[rng.gen_range(0..=2)]);
        let proj = mu_trivial(&free, rng.gen_range(1..=l), l).unwrap();
        prop_assert!(chain_projective_test(&proj));
        prop_assert_eq!(chain_stable_hom_dim(&u, &proj), 0);
        prop_assert_eq!(chain_stable_hom_dim(&proj, &u), 0);
        let vw = v.direct_sum(&w).unwrap();
        prop_assert_eq!(chain_stable_hom_dim(&u, &vw), chain_stable_hom_dim(&u, &v) + chain_stable_hom_dim(&u, &w));
        prop_assert_eq!(chain_stable_hom_dim(&vw, &u), chain_stable_hom_dim(&v, &u) + chain_stable_hom_dim(&w, &u));
        prop_assert_eq!(chain_hom_basis(&u, &v).len(), chain_hom_basis(&iota_embed(&u), &iota_embed(&v)).len());
    }

    #[test]
    fn chain_maps_compose(seed_d_l in shape()) {
        let (seed, d, l) = seed_d_l;
        let c = cfg(d);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (u, v, w) = (chain(&mut rng, c, l), chain(&mut rng, c, l), chain(&mut rng, c, l));
        let f = random_chain_map(&mut rng, &u, &v);
        let g = random_chain_map(&mut rng, &v, &w);
        let gf = g.compose(&f);
        prop_assert!(facto_core::monochain::ChainMap::new(&u, &w, gf.components().to_vec()).is_ok());
    }

    #[test]
    fn rotation_and_zigzag(seed_d_l in shape()) {
        let (seed, d, l) = seed_d_l;
        let c = cfg(d);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = fac(&mut rng, c, l);
        let y = fac(&mut rng, c, l);
        let mut objects = vec![x.clone(), direct_sum(&x, &y).unwrap(), contract(&x), trivial(&mut rng, c, l)];
        let mut spun = x.clone();
        for _ in 0..=l {
            spun = rotate(&spun, false);
            objects.push(spun.clone());
        }
        prop_assert_eq!(&spun, &x.tau(1));
        prop_assert_eq!(spun.base_maps(), x.base_maps());
        for o in &objects {
            prop_assert!(zigzag_check(o).is_ok());
            let maps: Vec<_> = o.base_maps().iter().map(|a| a.mat().clone()).collect();
            prop_assert!(fac_validate(&maps, o.base_degs(), c).is_ok());
            prop_assert_eq!(&rotate(&rotate(o, true), false), o);
        }
    }

    #[test]
    fn fac_stable_hom_laws(seed_d_l in shape()) {
        let (seed, d, l) = seed_d_l;
        let c = cfg(d);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (fac(&mut rng, c, l), fac(&mut rng, c, l), fac(&mut rng, c, l));
        let t = trivial(&mut rng, c, l);
        prop_assert!(fac_projective_test(&t));
        prop_assert_eq!(fac_stable_hom_dim(&x, &t), 0);
        prop_assert_eq!(fac_stable_hom_dim(&t, &x), 0);
        let yz = direct_sum(&y, &z).unwrap();
        prop_assert_eq!(fac_stable_hom_dim(&x, &yz), fac_stable_hom_dim(&x, &y) + fac_stable_hom_dim(&x, &z));
        prop_assert_eq!(fac_stable_hom_dim(&yz, &x), fac_stable_hom_dim(&y, &x) + fac_stable_hom_dim(&z, &x));
    }

    #[test]
    fn transports_are_natural(seed_d_l in shape()) {
        let (seed, d, l) = seed_d_l;
        let c = cfg(d);
        let dd = d as i64;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = fac(&mut rng, c, l);
        let y = fac(&mut rng, c, l);
        let f = random_fac_map(&mut rng, &x, &y);
        let a: Vec<i64> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(-dd - 1..=1)).collect();

        let h = random_graded_matrix(&mut rng, c.field, &a, &x.labels(0));
        let g = nu_l_left_inverse(&x, &h).unwrap();
        let p = nu(c, &a, l, l).unwrap();
        prop_assert!(FacMap::new(&p, &x, g.components().to_vec()).is_ok());
        prop_assert_eq!(&nu_l_left_transport(&g).unwrap(), &h);
        prop_assert_eq!(nu_l_left_transport(&f.compose(&g)).unwrap(), f.components()[0].compose(&h));

        let k = rng.gen_range(1..=l);
        let raised: Vec<i64> = a.iter().map(|n| n + dd).collect();
        let h = random_graded_matrix(&mut rng, c.field, &raised, &x.labels(k));
        let g = nu_k_left_inverse(&x, k, &h).unwrap();
        let p = nu(c, &a, k - 1, l).unwrap();
        prop_assert!(FacMap::new(&p, &x, g.components().to_vec()).is_ok());
        prop_assert_eq!(&nu_k_left_transport(&g, k).unwrap(), &h);
        prop_assert_eq!(nu_k_left_transport(&f.compose(&g), k).unwrap(), f.components()[k].compose(&h));
        let g2 = random_fac_map(&mut rng, &p, &x);
        prop_assert_eq!(nu_k_left_inverse(&x, k, &nu_k_left_transport(&g2, k).unwrap()).unwrap(), g2);

        let k = rng.gen_range(0..=l);
        let h = random_graded_matrix(&mut rng, c.field, &y.labels(k), &a);
        let g = nu_k_right_inverse(&y, k, &h).unwrap();
        let q = nu(c, &a, k, l).unwrap();
        prop_assert!(FacMap::new(&y, &q, g.components().to_vec()).is_ok());
        prop_assert_eq!(&nu_k_right_transport(&g, k).unwrap(), &h);
        prop_assert_eq!(nu_k_right_transport(&g.compose(&f), k).unwrap(), h.compose(&f.components()[k]));
        let g2 = random_fac_map(&mut rng, &y, &q);
        prop_assert_eq!(nu_k_right_inverse(&y, k, &nu_k_right_transport(&g2, k).unwrap()).unwrap(), g2);
    }

    #[test]
    fn cok_laws(seed_d_l in shape()) {
        let (seed, d, l) = seed_d_l;
        let c = cfg(d);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = (fac(&mut rng, c, l), fac(&mut rng, c, l));
        let u = cok(&x).unwrap();
        prop_assert!(chain_iso_test(&cok(&direct_sum(&x, &y).unwrap()).unwrap(), &u.direct_sum(&cok(&y).unwrap()).unwrap()));
        // The chain stores U^1, …, U^l; U^0 = 0.
        for j in 0..=l {
            for k in j + 1..=l {
                let by_chain = if j == 0 { u.objects()[k - 1].clone() } else { map_ker_cok_im(&u.composite(j - 1, k - 1)).cok };
                let by_fac = module_from_presentation(&x.composite(j, k), c).unwrap();
                prop_assert!(module_iso(&by_chain, &by_fac));
            }
        }
        let k = rng.gen_range(0..l);
        let free = random_module(&mut rng, c, 2, 2);
        let labels: Vec<i64> = free.summands().iter().map(|s| -s.1).collect();
        let t = cok(&nu(c, &labels, k, l).unwrap()).unwrap();
        prop_assert!(chain_projective_test(&t));
        prop_assert!(t.objects().iter().all(|m| m.is_free()));
        let jq = jq_sequence(&x).unwrap();
        prop_assert!(jq.exact);
        prop_assert!(to_ldiagram(&x).unwrap().is_short_exact());
    }

    #[test]
    fn hom_dims_through_cok(seed_d_l in shape()) {
        let (seed, d, l) = seed_d_l;
        let c = cfg(d);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = (fac(&mut rng, c, l), fac(&mut rng, c, l));
        prop_assert!(hom_dim_compare(&x, &y).unwrap().equal);
        prop_assert_eq!(fac_stable_hom_dim(&x, &y), chain_stable_hom_dim(&cok(&x).unwrap(), &cok(&y).unwrap()));
        prop_assert!(fac_hom_basis(&x, &y).len() >= fac_stable_hom_dim(&x, &y));
    }
}
