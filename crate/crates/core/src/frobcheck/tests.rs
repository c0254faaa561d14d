use std::sync::Arc;

use super::*;
use crate::fppoly::{PolyRing, VariableSpace};
use crate::linmember::{member_bounded, MembershipInstance};
use crate::shapes::{build_matrix, permanental_generators, MatrixShape};
use crate::witnesses::{minimal_primes_generic, minimal_primes_symmetric, witness_generic, witness_symmetric, PrimeKind};

fn ring(names: &[&str], p: u32) -> Arc<crate::fppoly::PolyRing> {
    PolyRing::new(VariableSpace::new(names.iter().copied()).unwrap(), p).unwrap()
}

fn ci(r: &Arc<PolyRing>, gens: &[&str]) -> IdealPresentation {
    let gens = gens.iter().map(|s| Polynomial::parse(r, s).unwrap()).collect();
    IdealPresentation::new(gens, IdealStructure::CompleteIntersection).unwrap()
}

fn p(n: u64) -> PrimeModulus {
    PrimeModulus::prime(n).unwrap()
}

fn hankel2(pr: u32) -> (Arc<PolyRing>, IdealPresentation) {
    let r = ring(&["z1", "z2", "z3"], pr);
    let g = ci(&r, &["z2^2 + z1*z3"]);
    (r, g)
}

#[test]
fn fedder_examples() {
    let r = ring(&["x", "y"], 3);
    let v = fedder_ci_check(&ci(&r, &["x*y"]), p(3)).unwrap();
    assert!(v.passed);
    assert_eq!(v.survivor.unwrap().render(), "x^2*y^2");
    let r1 = ring(&["x"], 3);
    let v = fedder_ci_check(&ci(&r1, &["x^2"]), p(3)).unwrap();
    assert!(!v.passed && v.survivor.is_none() && v.surviving_term.is_none());
    let (_, g) = hankel2(3);
    let v = fedder_ci_check(&g, p(3)).unwrap();
    assert!(v.passed);
    assert_eq!(v.survivor.unwrap().render(), "z1^2*z3^2 + 2*z1*z2^2*z3");
}

#[test]
fn fedder_refuses_without_ci_tag() {
    let r = ring(&["x", "y"], 3);
    let gens = IdealPresentation::new(vec![Polynomial::parse(&r, "x*y").unwrap()], IdealStructure::Unstructured).unwrap();
    assert!(matches!(fedder_ci_check(&gens, p(3)), Err(Error::Refused(_))));
    assert!(matches!(glassbrenner_witness_check(&Polynomial::one(&r), &gens, p(3)), Err(Error::Refused(_))));
    assert!(fedder_ci_check(&ci(&r, &["x*y"]), PrimeModulus::new(3, 2).unwrap()).is_err());
}

#[test]
fn glassbrenner_examples() {
    let (r, g) = hankel2(3);
    let z1 = Polynomial::var(&r, 0);
    let v = glassbrenner_witness_check(&z1, &g, p(3)).unwrap();
    assert!(v.passed);
    assert_eq!(v.survivor.unwrap().render(), "2*z1^2*z2^2*z3");
    // c = z1*z3 reproduces the product F_2 = -(z1 z2 z3)^2
    let z1z3 = Polynomial::parse(&r, "z1*z3").unwrap();
    assert_eq!(glassbrenner_witness_check(&z1z3, &g, p(3)).unwrap().survivor.unwrap().render(), "2*z1^2*z2^2*z3^2");
    let one = glassbrenner_witness_check(&Polynomial::one(&r), &g, p(3)).unwrap();
    let fedder = fedder_ci_check(&g, p(3)).unwrap();
    assert_eq!(one.survivor, fedder.survivor);
    let rx = ring(&["x", "y"], 3);
    let x = Polynomial::var(&rx, 0);
    assert!(!glassbrenner_witness_check(&x, &ci(&rx, &["x*y"]), p(3)).unwrap().passed);
}

#[test]
fn glassbrenner_with_e2() {
    let (_, g) = hankel2(3);
    let r = g.ring().unwrap().clone();
    let v = glassbrenner_witness_check(&Polynomial::one(&r), &g, PrimeModulus::new(3, 2).unwrap()).unwrap();
    assert!(v.passed);
    assert!(v.survivor.unwrap().terms().iter().all(|(m, _)| m.max_exponent() < 9));
}

#[test]
fn colon_generic_2x3() {
    let f = witness_generic(2, 3, 3).unwrap();
    let primes = minimal_primes_generic(2, 3).unwrap();
    for prime in &primes {
        let cert = colon_membership(&f, prime, p(3)).unwrap().unwrap_or_else(|| panic!("{prime} fails"));
        assert!(cert.replay(&f, prime).unwrap());
        assert_eq!(cert.prime_id, prime.id());
    }
    let one = Polynomial::one(f.ring());
    for prime in &primes {
        assert!(colon_membership(&one, prime, p(3)).unwrap().is_none());
    }
}

#[test]
fn colon_non_member_agrees_with_linear_algebra() {
    let f = witness_generic(2, 3, 3).unwrap();
    let r = f.ring().clone();
    let prime = &minimal_primes_generic(2, 3).unwrap()[0];
    let gens = prime.generators(&r).unwrap();
    let mut colon_gens = vec![prime.omega(&r).unwrap().pow(2).unwrap()];
    colon_gens.extend(gens.iter().map(|g| g.pow(3).unwrap()));
    for target in ["1", "x1_1", "x1_1*x2_2 + x1_2*x2_1", "x1_3^2*x2_3^2"] {
        let t = Polynomial::parse(&r, target).unwrap();
        let structural = colon_membership(&t, prime, p(3)).unwrap().is_some();
        let deg = t.degree().unwrap().max(6);
        let lin = member_bounded(&MembershipInstance { target: t, generators: colon_gens.clone(), degree_bound: deg }).unwrap();
        assert_eq!(structural, lin.is_member(), "{target}");
    }
}

#[test]
fn colon_certificate_tampering_is_detected() {
    let f = witness_generic(2, 3, 3).unwrap();
    let prime = &minimal_primes_generic(2, 3).unwrap()[0];
    let mut cert = colon_membership(&f, prime, p(3)).unwrap().unwrap();
    let other = &minimal_primes_generic(2, 3).unwrap()[1];
    assert!(!cert.replay(&f, other).unwrap());
    let g = cert.groups.iter().position(|g| g.rule == GroupRule::FrobeniusBinomial);
    if let Some(i) = g {
        cert.groups[i].rule = GroupRule::ColonBinomial;
        assert!(!cert.replay(&f, prime).unwrap());
    }
}

#[test]
fn colon_symmetric_and_refusal() {
    let f = witness_symmetric(3, 3).unwrap();
    for prime in minimal_primes_symmetric(3).unwrap() {
        let cert = colon_membership(&f, &prime, p(3)).unwrap().unwrap();
        assert!(cert.replay(&f, &prime).unwrap());
    }
    let un = crate::witnesses::MinimalPrime::unstructured(vec![Polynomial::var(f.ring(), 0)]).unwrap();
    assert!(matches!(colon_membership(&f, &un, p(3)), Err(Error::Refused(_))));
}

#[test]
fn colon_implies_truncate_compatibility() {
    for (m, n) in [(2, 2), (2, 3), (3, 3)] {
        let f = witness_generic(m, n, 3).unwrap();
        for prime in minimal_primes_generic(m, n).unwrap() {
            assert!(colon_membership(&f, &prime, p(3)).unwrap().is_some());
            for g in prime.generators(f.ring()).unwrap() {
                assert!(in_frobenius_power(&f.mul(&g).unwrap(), &prime, 3).unwrap(), "{m}x{n} {prime}");
            }
        }
    }
    for n in 2..=3 {
        let f = witness_symmetric(n, 3).unwrap();
        for prime in minimal_primes_symmetric(n).unwrap() {
            for g in prime.generators(f.ring()).unwrap() {
                assert!(in_frobenius_power(&f.mul(&g).unwrap(), &prime, 3).unwrap());
            }
        }
    }
}

#[test]
fn pure_variable_primes_match_monomial_membership() {
    let f = witness_generic(3, 3, 3).unwrap();
    let r = f.ring().clone();
    for prime in minimal_primes_generic(3, 3).unwrap().into_iter().filter(|p| p.is_pure_variable()) {
        assert!(matches!(prime.kind(), PrimeKind::RowVariables { .. } | PrimeKind::ColumnVariables { .. }));
        // term by term: each monomial is a multiple of x^3 (x a generator) or of ∏ x^2
        let direct = f.terms().iter().all(|(m, _)| {
            let e = m.exponents();
            prime.generator_vars().iter().any(|&v| e[v] >= 3) || prime.generator_vars().iter().all(|&v| e[v] >= 2)
        });
        assert_eq!(colon_membership(&f, &prime, p(3)).unwrap().is_some(), direct);
        let x = Polynomial::var(&r, prime.generator_vars()[0]);
        assert!(colon_membership(&x, &prime, p(3)).unwrap().is_none());
    }
}

#[test]
fn fullsupport_hankel1() {
    let r = ring(&["z1"], 3);
    let g = ci(&r, &["z1"]);
    for method in [FedderMethod::Truncated, FedderMethod::Pointcount] {
        assert_eq!(fedder_coefficient_fullsupport(&g, 3, method, &ScanOptions::default()).unwrap().coefficient, 1);
    }
    assert!(matches!(
        fedder_coefficient_fullsupport(&g, 3, FedderMethod::Fiber, &ScanOptions::default()),
        Err(Error::Refused(_))
    ));
    let r2 = ring(&["x", "y"], 3);
    assert!(matches!(
        fedder_coefficient_fullsupport(&ci(&r2, &["x"]), 3, FedderMethod::Truncated, &ScanOptions::default()),
        Err(Error::Refused(_))
    ));
}

fn generic34(pr: u32) -> IdealPresentation {
    let (mat, space) = build_matrix(MatrixShape::generic(3, 4)).unwrap();
    let r = PolyRing::new(space, pr).unwrap();
    permanental_generators(&mat, &r, 3).unwrap()
}

#[test]
fn three_methods_agree_at_3() {
    let g = generic34(3);
    assert_eq!(g.structure, IdealStructure::CompleteIntersection);
    let opts = ScanOptions::default();
    let t = fedder_coefficient_fullsupport(&g, 3, FedderMethod::Truncated, &opts).unwrap();
    let pc = fedder_coefficient_fullsupport(&g, 3, FedderMethod::Pointcount, &opts).unwrap();
    let fb = fedder_coefficient_fullsupport(&g, 3, FedderMethod::Fiber, &opts).unwrap();
    assert_eq!(t.coefficient, 0);
    assert_eq!(pc.coefficient, t.coefficient);
    assert_eq!(fb.coefficient, t.coefficient);
    assert_eq!(pc.nonvanishing_points, fb.nonvanishing_points);
    assert_eq!(fiber_count_projective(3).unwrap(), fb.nonvanishing_points.unwrap());
}

#[test]
fn fiber_5_and_7() {
    let opts = ScanOptions::default();
    let c5 = fedder_coefficient_fullsupport(&generic34(5), 5, FedderMethod::Fiber, &opts).unwrap();
    assert_eq!(c5.coefficient, 0);
    assert_eq!(fiber_count_projective(5).unwrap(), c5.nonvanishing_points.unwrap());
    let c7 = fedder_coefficient_fullsupport(&generic34(7), 7, FedderMethod::Fiber, &opts).unwrap();
    assert_ne!(c7.coefficient, 0);
    assert_eq!(c7.blocks, Some(7u64.pow(9)));
}

#[test]
fn fiber_block_matches_brute_force() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for pr in [3u32, 5, 7] {
        let r = ring(&["c1", "c2", "c3"], pr);
        for _ in 0..60 {
            let mut col = || [rng.gen_range(0..pr), rng.gen_range(0..pr), rng.gen_range(0..pr)];
            let (a, b, y) = (col(), col(), col());
            let fast = fiber_block_count(pr, a, b, y).unwrap();
            let block = |c: [u32; 3]| {
                let rows: Vec<Vec<u32>> = (0..3).map(|i| vec![a[i], b[i], y[i], c[i]]).collect();
                let mut all_nonzero = true;
                for cols in crate::shapes::subsets(4, 3) {
                    let sub: Vec<Vec<u32>> = rows.iter().map(|row| cols.iter().map(|&j| row[j]).collect()).collect();
                    if crate::shapes::permanent_eval_naive(&sub, pr).unwrap() == 0 {
                        all_nonzero = false;
                    }
                }
                all_nonzero
            };
            let mut brute = 0u64;
            for code in 0..pr.pow(3) {
                if block([code / (pr * pr), (code / pr) % pr, code % pr]) {
                    brute += 1;
                }
            }
            assert_eq!(fast, brute, "p={pr} a={a:?} b={b:?} y={y:?}");
            let _ = &r;
        }
    }
}

#[test]
fn fastmod_matches_remainder() {
    for d in [3u32, 5, 7, 11, 13, 31, 32749] {
        let fm = FastMod::new(d);
        for a in (0..200_000u32).chain([u32::MAX, u32::MAX - 1, 1 << 31]) {
            assert_eq!(fm.reduce(a), a % d);
        }
    }
}

#[test]
fn extension_by_unused_variable_keeps_verdict() {
    let (_, g) = hankel2(5);
    let r2 = ring(&["z1", "z2", "z3", "w"], 5);
    let g2 = ci(&r2, &["z2^2 + z1*z3"]);
    assert_eq!(fedder_ci_check(&g, p(5)).unwrap().passed, fedder_ci_check(&g2, p(5)).unwrap().passed);
}
