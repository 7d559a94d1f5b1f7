//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::time::{Duration, Instant};

use facto_core::equivalence_harness::random::{random_chain, random_fac_map, random_factorization, random_graded_matrix, random_ses};
use facto_core::equivalence_harness::{
    class_census, hom_dim_compare, probe_set, quotient_ideal_dims, stable_profile, CensusBounds, CensusError,
};
use facto_core::factorization::{
    fac_hom_basis, fac_projective_test, fac_validate, nu, nu_k_left_inverse, nu_k_left_transport, nu_k_right_inverse, nu_k_right_transport,
    nu_l_left_inverse, nu_l_left_transport, nu_resolution, rotate, zigzag_check, FacMap, Factorization, Side,
};
use facto_core::field_poly::{Field, Polynomial};
use facto_core::functors::{cok, cok_exactness_check, reconstruct};
use facto_core::hypersurface_module::HypersurfaceConfig;
use facto_core::monochain::chain_iso_test;
use facto_core::polymat::{snf, PolyMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PAIRS: [(usize, usize); 4] = [(2, 1), (2, 2), (3, 1), (3, 2)];

type Outcome = Result<String, String>;

fn cfg(field: Field, d: usize) -> HypersurfaceConfig {
    HypersurfaceConfig::new(d, field).expect("d >= 1")
}

fn f5(d: usize) -> HypersurfaceConfig {
    cfg(Field::Prime(5), d)
}

/// Collects every factorization built anywhere in the suite for the zig-zag/rotation criterion.
#[derive(Default)]
struct Suite {
    produced: Vec<Factorization>,
}

impl Suite {
    fn keep(&mut self, x: &Factorization) {
        self.produced.push(x.clone());
    }

    fn classical_census(&mut self) -> Outcome {
        let mut notes = Vec::new();
        for d in 2..=4 {
            let start = Instant::now();
            let bounds = CensusBounds { m: 2, dim: d, window: d as i64 };
            let report = class_census(f5(d), 1, &bounds).map_err(describe)?;
            if !report.is_consistent() {
                return Err(format!("d={d}: inconsistent census\n{}", report.table()));
            }
            let elapsed = start.elapsed();
            if report.fac_classes.len() != d - 1 || report.chain_classes.len() != d - 1 {
                return Err(format!("d={d}: {} / {} classes, expected {}", report.fac_classes.len(), report.chain_classes.len(), d - 1));
            }
            // Independent oracle: the nonfree indecomposable modules are R/(x^i), 1 <= i < d.
            let mut lengths: Vec<usize> = Vec::new();
            for c in &report.chain_classes {
                let summands = c.chain["objects"][0]["summands"].as_array().cloned().unwrap_or_default();
                if summands.len() != 1 {
                    return Err(format!("d={d}: chain class {:?} is not a single cyclic module", c.modules));
                }
                lengths.push(summands[0][0].as_u64().unwrap_or(0) as usize);
            }
            lengths.sort();
            if lengths != (1..d).collect::<Vec<_>>() {
                return Err(format!("d={d}: module lengths {lengths:?}"));
            }
            if elapsed > Duration::from_secs(60) {
                return Err(format!("d={d} took {elapsed:?}"));
            }
            for class in &report.fac_classes {
                self.keep(&parse(&class.factorization)?);
            }
            notes.push(format!("d={d}: {} classes in {:.2?}", d - 1, elapsed));
        }
        Ok(notes.join(", "))
    }

    fn nfold_census(&mut self) -> Outcome {
        let mut notes = Vec::new();
        let start = Instant::now();
        for d in [2, 3] {
            let c = f5(d);
            let bounds = CensusBounds { m: 2, dim: 3, window: 3 };
            let report = class_census(c, 2, &bounds).map_err(describe)?;
            if !report.is_consistent() {
                return Err(format!("d={d}: inconsistent census\n{}", report.table()));
            }
            let classes: Vec<Factorization> = report.fac_classes.iter().map(|f| parse(&f.factorization)).collect::<Result<_, _>>()?;
            for x in &classes {
                self.keep(x);
                for y in &classes {
                    for t in -3..=3 {
                        let cmp = hom_dim_compare(x, &y.shifted(t)).map_err(|e| e.to_string())?;
                        if !cmp.equal {
                            return Err(format!("d={d}: hom_dim_compare {} vs {}", cmp.lhs, cmp.rhs));
                        }
                    }
                }
            }
            notes.push(format!("d={d}: {} classes, {} stable-hom entries", classes.len(), report.hom_table.len()));
        }
        let elapsed = start.elapsed();
        if elapsed > Duration::from_secs(300) {
            return Err(format!("took {elapsed:?}"));
        }
        Ok(format!("{} in {elapsed:.2?}", notes.join(", ")))
    }

    fn round_trip_a(&mut self) -> Outcome {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut count = 0;
        for (d, l) in PAIRS {
            for i in 0..200 {
                let field = if i % 4 == 0 { Field::Rational } else { Field::Prime(5) };
                let u = random_chain(&mut rng, cfg(field, d), l, 3, d as i64);
                let x = reconstruct(&u).map_err(|e| e.to_string())?;
                self.keep(&x);
                if !chain_iso_test(&cok(&x).map_err(|e| e.to_string())?, &u) {
                    return Err(format!("d={d} l={l} {field}: cok(reconstruct(U)) differs from U = {u}"));
                }
                count += 1;
            }
        }
        Ok(format!("{count} chains"))
    }

    fn round_trip_b(&mut self) -> Outcome {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut probes_total = 0;
        for (d, l) in PAIRS {
            let c = f5(d);
            let probes = probe_set(c, l, &CensusBounds { m: 2, dim: 3, window: d as i64 }).map_err(|e| e.to_string())?;
            probes_total += probes.len();
            for _ in 0..50 {
                let x = random_factorization(&mut rng, c, l, 2, d as i64, &[]);
                let back = reconstruct(&cok(&x).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
                self.keep(&x);
                self.keep(&back);
                if stable_profile(&x, &probes) != stable_profile(&back, &probes) {
                    return Err(format!("d={d} l={l}: profiles differ for\n{x}"));
                }
            }
        }
        Ok(format!("200 objects against {probes_total} probes"))
    }

    fn adjunctions(&mut self) -> Outcome {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for trial in 0..100 {
            let (d, l) = PAIRS[trial % PAIRS.len()];
            let c = f5(d);
            let dd = d as i64;
            let x = random_factorization(&mut rng, c, l, 2, dd, &[]);
            let y = random_factorization(&mut rng, c, l, 2, dd, &[]);
            self.keep(&x);
            self.keep(&y);
            let f = random_fac_map(&mut rng, &x, &y);
            let a: Vec<i64> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(-dd - 1..=1)).collect();
            let fail = |what: &str| Err(format!("trial {trial}, d={d} l={l}: {what}"));

            // Hom(ν^l A, X) ≅ Hom(A, X^0)
            let p = nu(c, &a, l, l).map_err(|e| e.to_string())?;
            self.keep(&p);
            let h = random_graded_matrix(&mut rng, c.field, &a, &x.labels(0));
            let g = nu_l_left_inverse(&x, &h).map_err(|e| e.to_string())?;
            let g2 = random_fac_map(&mut rng, &p, &x);
            if FacMap::new(&p, &x, g.components().to_vec()).is_err()
                || nu_l_left_transport(&g).ok() != Some(h.clone())
                || nu_l_left_inverse(&x, &nu_l_left_transport(&g2).map_err(|e| e.to_string())?).ok() != Some(g2)
                || nu_l_left_transport(&f.compose(&g)).ok() != Some(f.components()[0].compose(&h))
            {
                return fail("ν^l left adjunction");
            }

            // Hom(ν^(k-1) A, X) ≅ Hom(τA, X^k)
            let k = rng.gen_range(1..=l);
            let p = nu(c, &a, k - 1, l).map_err(|e| e.to_string())?;
            self.keep(&p);
            let raised: Vec<i64> = a.iter().map(|n| n + dd).collect();
            let h = random_graded_matrix(&mut rng, c.field, &raised, &x.labels(k));
            let g = nu_k_left_inverse(&x, k, &h).map_err(|e| e.to_string())?;
            let g2 = random_fac_map(&mut rng, &p, &x);
            if FacMap::new(&p, &x, g.components().to_vec()).is_err()
                || nu_k_left_transport(&g, k).ok() != Some(h.clone())
                || nu_k_left_inverse(&x, k, &nu_k_left_transport(&g2, k).map_err(|e| e.to_string())?).ok() != Some(g2)
                || nu_k_left_transport(&f.compose(&g), k).ok() != Some(f.components()[k].compose(&h))
            {
                return fail("ν^(k-1) left adjunction");
            }

            // Hom(X, ν^k B) ≅ Hom(X^k, B)
            let k = rng.gen_range(0..=l);
            let q = nu(c, &a, k, l).map_err(|e| e.to_string())?;
            self.keep(&q);
            let h = random_graded_matrix(&mut rng, c.field, &y.labels(k), &a);
            let g = nu_k_right_inverse(&y, k, &h).map_err(|e| e.to_string())?;
            let g2 = random_fac_map(&mut rng, &y, &q);
            if FacMap::new(&y, &q, g.components().to_vec()).is_err()
                || nu_k_right_transport(&g, k).ok() != Some(h.clone())
                || nu_k_right_inverse(&y, k, &nu_k_right_transport(&g2, k).map_err(|e| e.to_string())?).ok() != Some(g2)
                || nu_k_right_transport(&g.compose(&f), k).ok() != Some(h.compose(&f.components()[k]))
            {
                return fail("ν^k right adjunction");
            }
        }
        Ok("100 instances of each of the three bijections".into())
    }

    fn resolutions(&mut self) -> Outcome {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..100 {
            let (d, l) = PAIRS[trial % PAIRS.len()];
            let x = random_factorization(&mut rng, f5(d), l, 2, d as i64, &[]);
            let res = nu_resolution(&x, Side::Epic).map_err(|e| e.to_string())?;
            self.keep(&x);
            self.keep(&res.object);
            self.keep(&res.other);
            let kernel = &res.other;
            let maps: Vec<PolyMatrix> = kernel.base_maps().iter().map(|a| a.mat().clone()).collect();
            let ok = res.is_termwise_split_exact()
                && fac_projective_test(&res.object)
                && fac_validate(&maps, kernel.base_degs(), kernel.cfg()).is_ok()
                && zigzag_check(kernel).is_ok()
                && FacMap::new(&res.object, &x, res.map.components().to_vec()).is_ok()
                && FacMap::new(kernel, &res.object, res.other_map.components().to_vec()).is_ok();
            if !ok {
                return Err(format!("trial {trial}, d={d} l={l}"));
            }
        }
        Ok("100 epic resolutions".into())
    }

    fn cok_exactness(&mut self) -> Outcome {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for (d, l) in PAIRS {
            for trial in 0..100 {
                let ses = random_ses(&mut rng, f5(d), l, d as i64);
                ses.validate().map_err(|e| format!("d={d} l={l} trial {trial}: malformed sequence: {e}"))?;
                for x in [&ses.x, &ses.y, &ses.z] {
                    self.keep(x);
                }
                if !cok_exactness_check(&ses).map_err(|e| e.to_string())? {
                    return Err(format!("d={d} l={l} trial {trial}"));
                }
            }
        }
        Ok("400 sequences".into())
    }

    fn quotient_ideal(&mut self) -> Outcome {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let mut nonzero = 0;
        for trial in 0..100 {
            let (d, l) = PAIRS[trial % PAIRS.len()];
            let c = f5(d);
            let x = random_factorization(&mut rng, c, l, 2, d as i64, &[]);
            let y = random_factorization(&mut rng, c, l, 2, d as i64, &[]);
            self.keep(&x);
            self.keep(&y);
            let (through_cover, through_frees) = quotient_ideal_dims(&x, &y).map_err(|e| e.to_string())?;
            if through_cover != through_frees {
                return Err(format!("trial {trial}: {through_cover} vs {through_frees}"));
            }
            nonzero += usize::from(through_cover > 0 && through_cover < fac_hom_basis(&x, &y).len());
        }
        Ok(format!("100 hom spaces, {nonzero} with a proper nonzero ideal"))
    }

    fn zigzag_rotation(&self) -> Outcome {
        for (i, x) in self.produced.iter().enumerate() {
            if let Err(k) = zigzag_check(x) {
                return Err(format!("object {i}: zig-zag fails at {k}"));
            }
            let mut spun = x.clone();
            for _ in 0..=x.l() {
                spun = rotate(&spun, false);
            }
            if spun != x.tau(1) || spun.base_maps() != x.base_maps() || spun.base_closing() != x.base_closing() {
                return Err(format!("object {i}: rotation does not return with twist + 1"));
            }
        }
        Ok(format!("{} objects", self.produced.len()))
    }
}

fn describe(e: CensusError) -> String {
    match e {
        CensusError::MatchFailure { reason, report } => format!("{reason}\n{}", report.table()),
        other => other.to_string(),
    }
}

fn parse(v: &serde_json::Value) -> Result<Factorization, String> {
    facto_core::json::factorization_from_json(Field::Prime(5), v).map_err(|e| e.to_string())
}

fn snf_kernel() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let start = Instant::now();
    for i in 0..500 {
        let field = if i % 2 == 0 { Field::Rational } else { Field::Prime(5) };
        let (rows, cols) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let entries: Vec<Vec<Polynomial>> = (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| {
                        let deg = rng.gen_range(0..=4);
                        let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-5..=5)).collect();
                        Polynomial::from_i64s(field, &coeffs)
                    })
                    .collect()
            })
            .collect();
        let a = PolyMatrix::from_rows(field, entries, cols).map_err(|e| e.to_string())?;
        let s = snf(&a);
        let diagonal = (0..rows).all(|r| (0..cols).all(|c| r == c || s.d.get(r, c).is_zero()));
        let units = s.u.det().is_ok_and(|p| p.is_unit()) && s.v.det().is_ok_and(|p| p.is_unit());
        let inv = s.invariant_factors();
        let divides = inv.windows(2).all(|w| w[1].div_rem(&w[0]).is_ok_and(|(_, r)| r.is_zero()));
        let trailing_zero = (s.rank..rows.min(cols)).all(|t| s.d.get(t, t).is_zero());
        if s.u.mul(&a).mul(&s.v) != s.d || !diagonal || !units || !divides || !trailing_zero {
            return Err(format!("matrix {i} over {field}"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(30) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("500 matrices in {elapsed:.2?}"))
}

fn main() {
    let mut suite = Suite::default();
    let mut results: Vec<(usize, &str, Outcome, Duration)> = Vec::new();
    let mut run = |n: usize, name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| f()))
            .unwrap_or_else(|p| Err(format!("panicked: {}", p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())));
        let elapsed = start.elapsed();
        match &outcome {
            Ok(note) => println!("PASS {n:>2} {name}: {note} [{elapsed:.2?}]"),
            Err(why) => println!("FAIL {n:>2} {name}: {why} [{elapsed:.2?}]"),
        }
        results.push((n, name, outcome, elapsed));
    };
    run(1, "classical census, l = 1", &mut || suite.classical_census());
    run(2, "n-fold census, l = 2", &mut || suite.nfold_census());
    run(3, "round trip cok(reconstruct(U)) = U", &mut || suite.round_trip_a());
    run(4, "round trip stable profiles of reconstruct(cok(X))", &mut || suite.round_trip_b());
    run(6, "adjunction transports", &mut || suite.adjunctions());
    run(7, "nu-resolutions", &mut || suite.resolutions());
    run(8, "exactness of cok", &mut || suite.cok_exactness());
    run(9, "Smith normal form", &mut snf_kernel);
    run(10, "quotient ideal", &mut || suite.quotient_ideal());
    run(5, "zig-zag and rotation on every object above", &mut || suite.zigzag_rotation());
    let failed = results.iter().filter(|r| r.2.is_err()).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
