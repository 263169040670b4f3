use num_bigint::BigUint;
use num_traits::{Signed, Zero};
use orbitdh_core::dh::{self, DhEngine};
use orbitdh_core::num::q_frac;
use orbitdh_core::{Rational, Weight};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TYPES: [&str; 4] = ["A2", "B2", "A3", "G2"];

#[test]
fn kostant_matches_freudenthal_up_to_three() {
    for t in TYPES {
        let e = DhEngine::from_type_str(t).unwrap();
        let r = e.root_system().rank();
        let mut lambdas = vec![vec![]];
        for _ in 0..r {
            lambdas = lambdas.into_iter().flat_map(|l: Vec<i64>| (0..=3).map(move |c| [l.clone(), vec![c]].concat())).collect();
        }
        for l in lambdas {
            let lambda = Weight::from_ints(&l);
            let table = e.multiplicity_table(&lambda).unwrap();
            let support = dh::weight_support(e.root_system(), &lambda).unwrap();
            for (mu, m) in &support {
                let k = e.weight_multiplicity_with_table(&lambda, &Weight::from_ints(mu), &table).unwrap();
                assert_eq!(&k, m, "{t} {lambda} {mu:?}");
            }
            let total: BigUint = support.values().sum();
            assert_eq!(total, dh::weyl_dimension(e.root_system(), &lambda).unwrap());
        }
    }
}

#[test]
fn off_support_multiplicities_vanish() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for t in TYPES {
        let e = DhEngine::from_type_str(t).unwrap();
        let r = e.root_system().rank();
        for _ in 0..40 {
            let lambda = Weight::from_ints(&(0..r).map(|_| rng.random_range(0..=2)).collect::<Vec<_>>());
            let support = dh::weight_support(e.root_system(), &lambda).unwrap();
            let mu: Vec<i64> = (0..r).map(|_| rng.random_range(-5..=5)).collect();
            let m = e.weight_multiplicity(&lambda, &Weight::from_ints(&mu)).unwrap();
            assert_eq!(m, support.get(&mu).cloned().unwrap_or_default(), "{t} {lambda} {mu:?}");
        }
    }
}

#[test]
fn nonnegative_on_random_queries() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for t in TYPES {
        let e = DhEngine::from_type_str(t).unwrap();
        let r = e.root_system().rank();
        for _ in 0..200 {
            let lambda = Weight::from_ints(&(0..r).map(|_| rng.random_range(1..=3)).collect::<Vec<_>>());
            let mu = Weight::from_ints(&(0..r).map(|_| rng.random_range(-6..=6)).collect::<Vec<_>>());
            let query = e.query(lambda, mu).unwrap();
            // both calls error internally on a negative total
            let rho = e.dh_density(&query).unwrap();
            assert!(!rho.is_negative());
            e.multiplicity(&query).unwrap();
        }
    }
}

/// Along a ray the density is piecewise polynomial of degree at most `s`:
/// `(s+1)`-th finite differences vanish except in windows straddling a
/// breakpoint, and one breakpoint touches at most `s+1` consecutive windows.
#[test]
fn piecewise_polynomial_along_rays() {
    let cases: [(&str, [i64; 2], [Rational; 2]); 3] = [
        ("A2", [3, 2], [q_frac(1, 3), q_frac(-2, 7)]),
        ("B2", [2, 3], [q_frac(-2, 5), q_frac(3, 11)]),
        ("G2", [1, 2], [q_frac(3, 5), q_frac(-1, 3)]),
    ];
    for (t, l, dir) in cases {
        let e = DhEngine::from_type_str(t).unwrap();
        let s = e.root_system().s();
        let lambda = Weight::from_ints(&l);
        let samples: Vec<Rational> = (0..27 * 24)
            .map(|j| {
                let tt = q_frac(j, 24);
                e.density_at(&lambda, &[&dir[0] * &tt, &dir[1] * &tt]).unwrap()
            })
            .collect();
        assert!(!samples[0].is_zero() && samples.last().unwrap().is_zero(), "{t}: ray must leave the support");
        let mut diffs = samples;
        for _ in 0..=s {
            diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        let mut run = 0;
        let mut nonzero = 0;
        for d in &diffs {
            if d.is_zero() {
                run = 0;
            } else {
                run += 1;
                nonzero += 1;
                assert!(run <= s + 1, "{t}: degree exceeds {s}");
            }
        }
        assert!(nonzero * 4 < diffs.len(), "{t}: {nonzero} of {} windows nonpolynomial", diffs.len());
    }
}
