//! Acceptance criteria, one line each. Exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use census::Session;
use census_core::census::{constant_term, is_coprime, kac_classes, oracle_check, regularity_from};
use census_core::zeta::{pic_order, torsion_identity, weil_from_counts};
use census_core::{alpha, pleth_exp, pleth_log, BiSeries, FactoredRat, Monomial, Rational, SparsePoly, Var};
use rand::{Rng, SeedableRng};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn(&Session) -> Outcome, u64);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn prod(g: usize, sign: i64, with_q: bool) -> FactoredRat {
    (1..=2 * g).fold(FactoredRat::one(), |acc, k| {
        let m = if with_q { alpha(k).mul(&Monomial::var(Var::Q)) } else { alpha(k) };
        acc.mul(&FactoredRat::binomial(&Rational::from_int(-sign), &m))
    })
}

/// `1 / (k·(q^e - c))`.
fn inv_q_minus(k: i64, c: i64, e: i32) -> FactoredRat {
    let c = Rational::from_int(c);
    FactoredRat::inv_binomial(&c.recip(), &Monomial::var_pow(Var::Q, e)).unwrap().scale(&(-&c * &Rational::from_int(k)).recip())
}

fn rank_two_formula(g: usize) -> FactoredRat {
    let minus = prod(g, -1, false);
    let t1 = prod(g, -1, true).mul(&inv_q_minus(1, 1, 1)).mul(&inv_q_minus(1, 1, 2));
    let t2 = prod(g, 1, false).mul(&inv_q_minus(4, -1, 1));
    let mut bracket = FactoredRat::constant(Rational::new(1, 2)).sub(&inv_q_minus(1, 1, 1));
    for k in 1..=2 * g {
        bracket = bracket.sub(&FactoredRat::inv_binomial(&Rational::ONE, &alpha(k)).unwrap());
    }
    minus.mul(&t1.sub(&t2).add(&minus.mul(&inv_q_minus(2, 1, 1)).mul(&bracket)))
}

fn binom(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn rank_one(s: &Session) -> Outcome {
    for g in 0..=3 {
        for d in [0, -1, 5] {
            let k = s.kac(g, 1, d).map_err(|e| e.to_string())?;
            ensure(k.value == prod(g, -1, false) && k.polynomial() == Some(pic_order(g)), || format!("g={g} d={d}: {}", k.value))?;
        }
    }
    Ok(())
}

fn rank_two(s: &Session) -> Outcome {
    for g in 0..=2 {
        let want = rank_two_formula(g);
        for d in 0..2 {
            let k = s.kac(g, 2, d).map_err(|e| e.to_string())?;
            ensure(k.value == want, || format!("g={g} d={d}"))?;
        }
    }
    Ok(())
}

fn constant_terms(_: &Session) -> Outcome {
    for g in 0..=5i64 {
        let want = [1, binom(g, 1), 4 * binom(g, 2) + binom(g, 1), 32 * binom(g, 3) + 20 * binom(g, 2) + binom(g, 1)];
        for (i, w) in want.into_iter().enumerate() {
            for d in [0, 1] {
                let got = constant_term(g as usize, i as u32 + 1, d).map_err(|e| e.to_string())?;
                ensure(got == Rational::from_int(w), || format!("g={g} r={} d={d}: {got} != {w}", i + 1))?;
            }
        }
    }
    Ok(())
}

fn regularity(s: &Session) -> Outcome {
    for r in [2, 3] {
        for g in 0..=2 {
            let a = s.rational(g, r).map_err(|e| e.to_string())?;
            let rep = regularity_from(g, r, &a);
            ensure(rep.clears_with_rank && rep.d_independent, || format!("g={g} r={r}: {rep:?}"))?;
            let classes = kac_classes(g, r, &a).map_err(|e| e.to_string())?;
            ensure(classes.windows(2).all(|w| w[0].value == w[1].value), || format!("g={g} r={r}: classes differ"))?;
        }
    }
    Ok(())
}

fn two_routes(s: &Session) -> Outcome {
    for g in 0..=2 {
        for r in 1..=3 {
            let rep = oracle_check(g, r, &s.pool).map_err(|e| e.to_string())?;
            ensure(rep.passed(), || format!("g={g} r={r}: mismatch at d = {:?}", rep.mismatches))?;
        }
    }
    Ok(())
}

fn unitarity(s: &Session) -> Outcome {
    for g in 1..=2 {
        for (r, d) in [(2u32, 1i64), (3, 1), (3, 2)] {
            let b = s.betti(g, r, d).map_err(|e| e.to_string())?;
            let top = 4 * (1 + (g as i32 - 1) * (r * r) as i32);
            let coeffs = b.coefficients();
            let monic = b.degree() == Some(top) && coeffs.last().is_some_and(|(_, c)| c.is_one());
            let positive = coeffs.iter().all(|(_, c)| c.is_integer() && !c.is_negative());
            ensure(monic && positive, || format!("g={g} r={r} d={d}: {}", b.poly))?;
        }
    }
    Ok(())
}

const COPRIME: [(u32, i64); 5] = [(1, 0), (1, 3), (2, 1), (3, 1), (3, 2)];

fn elliptic(s: &Session) -> Outcome {
    for (q, n1) in [(2u64, 3i64), (3, 4), (5, 8)] {
        let e = weil_from_counts(q, &[n1]).map_err(|e| e.to_string())?;
        for (r, d) in COPRIME {
            let c = s.count(&e, r, d).map_err(|e| e.to_string())?;
            ensure(c.indecomposables == n1 as i128, || format!("q={q} r={r} d={d}: {}", c.indecomposables))?;
        }
    }
    Ok(())
}

fn higgs(s: &Session) -> Outcome {
    let curves = [weil_from_counts(2, &[3]), weil_from_counts(3, &[4]), weil_from_counts(3, &[5, 17])];
    for e in curves {
        let e = e.map_err(|e| e.to_string())?;
        for (r, d) in COPRIME.into_iter().chain([(2, 0)]) {
            let c = s.count(&e, r, d).map_err(|e| e.to_string())?;
            let exp = 1 + (e.genus as u32 - 1) * r * r;
            let want = is_coprime(r, d).then(|| (e.q as i128).pow(exp) * c.indecomposables);
            ensure(c.higgs_points == want, || format!("q={} g={} r={r} d={d}: {:?}", e.q, e.genus, c.higgs_points))?;
        }
    }
    let spot = s.count(&weil_from_counts(2, &[3]).unwrap(), 1, 0).map_err(|e| e.to_string())?;
    ensure(spot.higgs_points == Some(6), || format!("spot value {:?}", spot.higgs_points))
}

fn random_series(rng: &mut rand::rngs::StdRng) -> BiSeries<FactoredRat> {
    let mut coeffs = vec![FactoredRat::zero()];
    for _ in 0..5 {
        let terms = (0..rng.gen_range(0..4)).map(|_| {
            let m = Monomial::from_pairs(&[(Var::Q, rng.gen_range(-2..=2)), (Var::A(1), rng.gen_range(-1..=2))]);
            (m, Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=7)))
        });
        let mut c = FactoredRat::from_poly(SparsePoly::from_terms(terms.collect::<Vec<_>>()));
        if rng.gen_bool(0.3) {
            c = c.div_binomial(&Rational::ONE, &Monomial::var_pow(Var::Q, rng.gen_range(1..=2))).unwrap();
        }
        coeffs.push(c);
    }
    BiSeries::new(coeffs)
}

/// Exact equality of every coefficient as a rational function.
fn same_series(a: &BiSeries<FactoredRat>, b: &BiSeries<FactoredRat>) -> bool {
    a.order() == b.order() && a.coeffs().iter().zip(b.coeffs()).all(|(x, y)| x.same_value(y))
}

fn identities(_: &Session) -> Outcome {
    for g in 0..=2 {
        let c = torsion_identity(g, 6).map_err(|e| e.to_string())?;
        ensure(c.passed, || format!("torsion identity g={g}"))?;
    }
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
    for trial in 0..20 {
        let a = random_series(&mut rng);
        let e = pleth_exp(&a).map_err(|e| e.to_string())?;
        let back = pleth_log(&e).map_err(|e| e.to_string())?;
        ensure(same_series(&back, &a), || format!("Log(Exp) trial {trial}"))?;
        let again = pleth_exp(&back).map_err(|e| e.to_string())?;
        ensure(same_series(&again, &e), || format!("Exp(Log) trial {trial}"))?;
    }
    Ok(())
}

fn cross_pipeline(s: &Session) -> Outcome {
    for g in 0..=2 {
        for r in 1..=3u32 {
            for d in (0..r as i64).filter(|&d| is_coprime(r, d)) {
                let b = s.betti(g, r, d).map_err(|e| e.to_string())?;
                let lowest = b.lowest().map(|(_, c)| c).unwrap_or(Rational::ZERO);
                let ct = constant_term(g, r, d).map_err(|e| e.to_string())?;
                ensure(lowest == ct, || format!("g={g} r={r} d={d}: {lowest} vs {ct}"))?;
            }
        }
    }
    Ok(())
}

fn main() {
    // a scratch cache lets later criteria reuse the rational functions
    let scratch = tempfile::tempdir().expect("temporary cache directory");
    let session = Session::new(None, Some(census::Cache::new(scratch.path())));
    let criteria: [Criterion; 10] = [
        ("rank one equals the Jacobian count", rank_one, 1),
        ("rank two equals the closed formula", rank_two, 60),
        ("constant-term table", constant_terms, 30),
        ("prime-rank regularity", regularity, 300),
        ("series and rational routes agree", two_routes, 300),
        ("coprime Betti polynomials are monic and positive", unitarity, 300),
        ("elliptic counts equal N_1", elliptic, 300),
        ("Higgs counts follow the indecomposable counts", higgs, 300),
        ("identity suite", identities, 300),
        ("lowest Betti number equals the constant term", cross_pipeline, 300),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run(&session);
        let took = start.elapsed();
        let outcome = outcome.and_then(|_| ensure(took <= Duration::from_secs(limit), || format!("took {took:?}, limit {limit} s")));
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({:.2} s)", i + 1, took.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
