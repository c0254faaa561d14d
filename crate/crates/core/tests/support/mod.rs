//! Randomized properties shared by the property suite and the acceptance run.
//! Every property uses a fixed seed so failures reproduce.

#![allow(dead_code)]

use std::sync::Arc;

use permcheck_core::fppoly::{Monomial, MonomialOrder, PolyRing, Polynomial, PrimeModulus, TruncationContext, VariableSpace};
use permcheck_core::frobcheck::{
    fedder_ci_check, fedder_coefficient_fullsupport, glassbrenner_witness_check, FedderMethod, ScanOptions,
};
use permcheck_core::linmember::monomials_of_degree;
use permcheck_core::shapes::{
    build_matrix, full_permanent, permanent_eval, permanent_eval_dp, permanent_eval_naive, IdealPresentation,
    IdealStructure, MatrixShape,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

const SEED: [u8; 32] = *b"permanental-ideals-fixed-seed-01";

pub type Property = fn(u32) -> Result<(), String>;

pub const ALL: &[(&str, Property)] = &[
    ("ring axioms", ring_axioms),
    ("truncation homomorphism", truncation_homomorphism),
    ("powering equivalence", powering_equivalence),
    ("permanent oracles", permanent_oracles),
    ("point-count coefficient", pointcount_coefficient),
    ("exact division round trip", exact_divide_round_trip),
    ("fedder vs glassbrenner c=1", fedder_matches_unit_witness),
];

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

fn run<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

fn ring(nvars: usize, p: u32) -> Arc<PolyRing> {
    PolyRing::new(VariableSpace::new((1..=nvars).map(|i| format!("x{i}"))).unwrap(), p).unwrap()
}

type Terms = Vec<(Vec<u16>, u64)>;

fn terms(nvars: usize, max_exp: u16, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), any::<u64>()), 0..=max_terms)
}

fn poly(r: &Arc<PolyRing>, t: &Terms) -> Polynomial {
    Polynomial::from_terms(r, t.iter().map(|(e, c)| (Monomial::from_exponents(e), *c))).unwrap()
}

fn small_prime() -> impl Strategy<Value = u32> {
    prop_oneof![Just(3u32), Just(5), Just(7)]
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, TestCaseError> {
    r.map_err(|err| TestCaseError::fail(err.to_string()))
}

pub fn ring_axioms(cases: u32) -> Result<(), String> {
    let s = (small_prime(), terms(3, 3, 5), terms(3, 3, 5), terms(3, 3, 5));
    run(cases, s, |(p, ta, tb, tc)| {
        let r = ring(3, p);
        let (a, b, c) = (poly(&r, &ta), poly(&r, &tb), poly(&r, &tc));
        prop_assert_eq!(e(a.add(&b))?, e(b.add(&a))?);
        prop_assert_eq!(e(a.mul(&b))?, e(b.mul(&a))?);
        prop_assert_eq!(e(e(a.add(&b))?.add(&c))?, e(a.add(&e(b.add(&c))?))?);
        prop_assert_eq!(e(e(a.mul(&b))?.mul(&c))?, e(a.mul(&e(b.mul(&c))?))?);
        prop_assert_eq!(e(a.mul(&e(b.add(&c))?))?, e(e(a.mul(&b))?.add(&e(a.mul(&c))?))?);
        prop_assert!(e(a.add(&a.neg()))?.is_zero());
        prop_assert_eq!(e(a.mul(&Polynomial::one(&r)))?, a.clone());
        prop_assert_eq!(e(a.sub(&b))?, e(a.add(&b.neg()))?);
        prop_assert_eq!(e(Polynomial::parse(&r, &a.render()))?, a);
        Ok(())
    })
}

pub fn truncation_homomorphism(cases: u32) -> Result<(), String> {
    let s = (small_prime(), 1u32..=2, terms(3, 6, 5), terms(3, 6, 5));
    run(cases, s, |(p, ex, ta, tb)| {
        let r = ring(3, p);
        let ctx = e(TruncationContext::new(&r, e(PrimeModulus::new(p as u64, ex))?))?;
        let (a, b) = (poly(&r, &ta), poly(&r, &tb));
        let full = e(ctx.truncate(&e(a.mul(&b))?))?;
        prop_assert_eq!(&full, &e(ctx.mul(&e(ctx.truncate(&a))?, &e(ctx.truncate(&b))?))?);
        prop_assert_eq!(e(ctx.truncate(&e(a.add(&b))?))?, e(e(ctx.truncate(&a))?.add(&e(ctx.truncate(&b))?))?);
        prop_assert!(ctx.is_truncated(&full));
        Ok(())
    })
}

pub fn powering_equivalence(cases: u32) -> Result<(), String> {
    let s = (small_prime(), 0u64..=12, terms(3, 3, 4));
    run(cases, s, |(p, k, ta)| {
        let r = ring(3, p);
        let ctx = e(TruncationContext::new(&r, e(PrimeModulus::prime(p as u64))?))?;
        let a = poly(&r, &ta);
        let binary = e(ctx.pow(&a, k))?;
        prop_assert_eq!(&binary, &e(ctx.pow_repeated(&a, k))?);
        prop_assert_eq!(&binary, &e(ctx.truncate(&e(a.pow(k as u32))?))?);
        Ok(())
    })
}

pub fn permanent_oracles(cases: u32) -> Result<(), String> {
    let s = (small_prime(), 1usize..=4).prop_flat_map(|(p, k)| {
        (Just(p), Just(k), prop::collection::vec(prop::collection::vec(0..p, k), k))
    });
    run(cases, s, |(p, k, vals)| {
        let ryser = e(permanent_eval(&vals, p))?;
        prop_assert_eq!(ryser, e(permanent_eval_dp(&vals, p))?);
        prop_assert_eq!(ryser, e(permanent_eval_naive(&vals, p))?);
        let (mat, space) = e(build_matrix(MatrixShape::generic(k, k)))?;
        let r = e(PolyRing::new(space, p))?;
        let mut point = vec![0u32; r.nvars()];
        for (i, row) in vals.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                point[mat.entry(i, j)] = v;
            }
        }
        prop_assert_eq!(ryser, e(e(full_permanent(&mat, &r))?.evaluate(&point))?);
        Ok(())
    })
}

fn compositions(v: u32) -> Vec<Vec<u32>> {
    if v == 0 {
        return vec![Vec::new()];
    }
    (1..=v)
        .flat_map(|first| {
            compositions(v - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Homogeneous generators whose degrees sum to the variable count, so the
/// coefficient of `∏ x^{p-1}` in `ω^{p-1}` is a signed point count.
pub fn pointcount_coefficient(cases: u32) -> Result<(), String> {
    let s = (prop_oneof![Just(3u32), Just(5)], 1usize..=3).prop_flat_map(|(p, v)| {
        let comps = compositions(v as u32);
        (Just(p), Just(v), prop::sample::select(comps)).prop_flat_map(|(p, v, degs)| {
            let coeffs: Vec<_> = degs
                .iter()
                .map(|&d| prop::collection::vec(0..p, monomials_of_degree(v, d).len()))
                .collect();
            (Just(p), Just(v), Just(degs), coeffs)
        })
    });
    run(cases, s, |(p, v, degs, coeffs)| {
        let r = ring(v, p);
        let gens: Vec<Polynomial> = degs
            .iter()
            .zip(&coeffs)
            .map(|(&d, cs)| poly_from(&r, monomials_of_degree(v, d), cs))
            .collect();
        prop_assume!(gens.iter().all(|g| !g.is_zero()));
        let omega = gens.iter().try_fold(Polynomial::one(&r), |acc, g| acc.mul(g)).map_err(|x| TestCaseError::fail(x.to_string()))?;
        let target = Monomial::from_exponents(&vec![(p - 1) as u16; v]);
        let oracle = e(omega.pow(p - 1))?.coefficient_of(&target);
        let ideal = e(IdealPresentation::new(gens, IdealStructure::CompleteIntersection))?;
        let opts = ScanOptions::default();
        let t = e(fedder_coefficient_fullsupport(&ideal, p, FedderMethod::Truncated, &opts))?;
        let pc = e(fedder_coefficient_fullsupport(&ideal, p, FedderMethod::Pointcount, &opts))?;
        prop_assert_eq!(t.coefficient, oracle);
        prop_assert_eq!(pc.coefficient, oracle);
        Ok(())
    })
}

fn poly_from(r: &Arc<PolyRing>, monos: Vec<Monomial>, cs: &[u32]) -> Polynomial {
    Polynomial::from_terms(r, monos.into_iter().zip(cs).map(|(m, &c)| (m, c as u64))).unwrap()
}

pub fn exact_divide_round_trip(cases: u32) -> Result<(), String> {
    let s = (small_prime(), terms(3, 3, 4), terms(3, 3, 4), terms(3, 1, 3));
    run(cases, s, |(p, ta, tb, tr)| {
        let r = ring(3, p);
        let ord = MonomialOrder::grlex(3);
        let (a, b) = (poly(&r, &ta), poly(&r, &tb));
        prop_assume!(!b.is_zero());
        let prod = e(a.mul(&b))?;
        prop_assert_eq!(e(prod.exact_divide(&b, &ord))?, Some(a.clone()));
        // a non-multiple never divides exactly
        let off = e(prod.add(&poly(&r, &tr)))?;
        if let Some(q) = e(off.exact_divide(&b, &ord))? {
            prop_assert_eq!(e(q.mul(&b))?, off);
        }
        Ok(())
    })
}

pub fn fedder_matches_unit_witness(cases: u32) -> Result<(), String> {
    let s = (small_prime(), terms(3, 2, 4), terms(3, 2, 3));
    run(cases, s, |(p, ta, tb)| {
        let r = ring(3, p);
        let gens: Vec<Polynomial> = [poly(&r, &ta), poly(&r, &tb)].into_iter().filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let ideal = e(IdealPresentation::new(gens, IdealStructure::CompleteIntersection))?;
        let modulus = e(PrimeModulus::prime(p as u64))?;
        let f = e(fedder_ci_check(&ideal, modulus))?;
        let g = e(glassbrenner_witness_check(&Polynomial::one(&r), &ideal, modulus))?;
        prop_assert_eq!(f.passed, g.passed);
        prop_assert_eq!(f.survivor, g.survivor);
        Ok(())
    })
}
