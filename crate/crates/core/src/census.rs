//! The end-to-end pipeline: the partition sum, its plethystic logarithm, the
//! extraction of `A_{g,r,d}`, and everything derived from it.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_integer::Integer;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{CensusError, Result};
use crate::frac::FactoredRat;
use crate::monomial::{Monomial, Var};
use crate::partition::{pairing, partitions_of, partitions_up_to, Partition};
use crate::poly::SparsePoly;
use crate::rational::Rational;
use crate::residue::h_factor;
use crate::series::{pleth_log, BiSeries, CoeffRing, ZSeries};
use crate::zeta::{check_genus, j_factor, CurveData};

/// Runs independent jobs; the pipeline is generic over how.
pub trait Executor: Sync {
    fn map<T: Send>(&self, n: usize, f: &(dyn Fn(usize) -> T + Sync)) -> Vec<T>;
}

/// Runs jobs one after another on the calling thread.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map<T: Send>(&self, n: usize, f: &(dyn Fn(usize) -> T + Sync)) -> Vec<T> {
        (0..n).map(f).collect()
    }
}

fn check_rank(r: u32) -> Result<()> {
    if r == 0 {
        Err(CensusError::InvalidInput("rank must be positive".into()))
    } else {
        Ok(())
    }
}

/// `d mod r` in `0..r`.
pub fn degree_class(d: i64, r: u32) -> u32 {
    d.rem_euclid(r as i64) as u32
}

/// `gcd(r, d) = 1`.
pub fn is_coprime(r: u32, d: i64) -> bool {
    (r as i64).gcd(&d) == 1
}

fn one_minus_z_pow(k: u32) -> FactoredRat {
    FactoredRat::binomial(&Rational::ONE, &Monomial::var_pow(Var::Z, k as i32))
}

/// `q^{(g-1)⟨λ,λ⟩} J_λ(z) H_λ(z)`.
pub fn rhs_term(g: usize, lambda: &Partition) -> Result<FactoredRat> {
    check_genus(g)?;
    let w = (g as i32 - 1) * pairing(lambda, lambda) as i32;
    let j = j_factor(g, lambda)?;
    let h = h_factor(g, lambda)?;
    Ok(j.mul(&h).mul_monomial(&Rational::ONE, &Monomial::var_pow(Var::Q, w)))
}

/// `Σ_{|λ| ≤ R} q^{(g-1)⟨λ,λ⟩} J_λ H_λ T^{|λ|}`, rational in `z`.
pub fn rhs_series<E: Executor>(g: usize, max_rank: u32, exec: &E) -> Result<BiSeries<FactoredRat>> {
    check_genus(g)?;
    let parts = partitions_up_to(max_rank);
    let terms = exec.map(parts.len(), &|i| rhs_term(g, &parts[i]));
    let mut by_size: Vec<Vec<FactoredRat>> = vec![Vec::new(); max_rank as usize + 1];
    for (l, t) in parts.iter().zip(terms) {
        by_size[l.size() as usize].push(t?);
    }
    Ok(BiSeries::new(by_size.iter().map(FactoredRat::sum).collect()))
}

/// `A_{g,r}(z)` for `r = 1..=max_rank`; entry `r - 1` is rank `r`.
pub fn kac_rationals<E: Executor>(g: usize, max_rank: u32, exec: &E) -> Result<Vec<FactoredRat>> {
    check_rank(max_rank)?;
    let rhs = rhs_series(g, max_rank, exec)?;
    let log = pleth_log(&rhs)?;
    let qm1 = FactoredRat::from_poly(SparsePoly::from_terms([(Monomial::var(Var::Q), Rational::ONE), (Monomial::ONE, Rational::from_int(-1))]));
    Ok(log.coeffs()[1..].iter().map(|c| c.mul(&qm1)).collect())
}

/// `A_{g,r}(z) = (q-1)·[T^r] Log(Σ_λ q^{(g-1)⟨λ,λ⟩} J_λ H_λ T^{|λ|})`.
pub fn kac_rational<E: Executor>(g: usize, r: u32, exec: &E) -> Result<FactoredRat> {
    Ok(kac_rationals(g, r, exec)?.pop().unwrap())
}

/// Splits `f` into its `z`-dependence: returns the Laurent coefficients of
/// `var` (exponent, coefficient) when no denominator atom mentions `var`.
fn laurent_coefficients(f: &FactoredRat, var: Var) -> Option<Vec<(i32, FactoredRat)>> {
    if f.denominator().iter().any(|(a, _)| a.mentions(var)) {
        return None;
    }
    let shift = f.prefactor().exp(var);
    let common = FactoredRat::from_parts(f.prefactor().without(var), SparsePoly::one(), f.denominator().to_vec());
    Some(
        f.numerator()
            .collect_in(var)
            .into_iter()
            .map(|(e, c)| (e + shift, common.mul_poly(&c)))
            .collect(),
    )
}

/// `Σ_{j ≡ class (mod r)} [var^j] f` for a Laurent polynomial in `var`.
fn class_sums(coeffs: &[(i32, FactoredRat)], r: u32) -> Vec<FactoredRat> {
    (0..r)
        .map(|c| {
            let items: Vec<FactoredRat> =
                coeffs.iter().filter(|(e, _)| e.rem_euclid(r as i32) as u32 == c).map(|(_, v)| v.clone()).collect();
            FactoredRat::sum(&items)
        })
        .collect()
}

/// Where a result came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub route: String,
    pub t_order: u32,
    pub z_order: Option<u32>,
    /// Filled in by front ends that have a clock.
    pub wall_time_ms: Option<u64>,
}

/// A finished `A_{g,r,d}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KacResult {
    pub genus: usize,
    pub rank: u32,
    pub degree_class: u32,
    pub value: FactoredRat,
    pub is_polynomial: bool,
    pub is_d_independent: bool,
    pub provenance: Provenance,
}

impl KacResult {
    /// The value as a Laurent polynomial in `α_{2i-1}` and `q`, if it is one.
    pub fn polynomial(&self) -> Option<SparsePoly> {
        self.value.to_poly()
    }
}

/// All degree classes of `A_{g,r,d}` from the rational function.
///
/// Clearing the simple poles with `1 - z^r` leaves a Laurent polynomial `Q`;
/// the residue sum over `μ_r` then equals the sum of the coefficients of `Q`
/// in each class mod `r`.
pub fn kac_classes(g: usize, r: u32, a: &FactoredRat) -> Result<Vec<KacResult>> {
    let qz = a.mul(&one_minus_z_pow(r));
    let coeffs = laurent_coefficients(&qz, Var::Z).ok_or(CensusError::NotPolynomialAfterClearing { rank: r })?;
    let sums = class_sums(&coeffs, r);
    let indep = sums.windows(2).all(|w| w[0].same_value(&w[1]));
    Ok(sums
        .into_iter()
        .enumerate()
        .map(|(c, v)| KacResult {
            genus: g,
            rank: r,
            degree_class: c as u32,
            is_polynomial: v.is_laurent_polynomial(),
            value: v,
            is_d_independent: indep,
            provenance: Provenance { route: "rational".into(), t_order: r, z_order: None, wall_time_ms: None },
        })
        .collect())
}

pub fn kac_polynomial<E: Executor>(g: usize, r: u32, d: i64, exec: &E) -> Result<KacResult> {
    check_rank(r)?;
    let a = kac_rational(g, r, exec)?;
    let mut all = kac_classes(g, r, &a)?;
    Ok(all.swap_remove(degree_class(d, r) as usize))
}

/// Default `z`-order for the series route: one full extra period past the
/// stabilization bound.
pub fn oracle_default_order(g: usize, r: u32) -> u32 {
    stabilization_bound(g, r) as u32 + 2 * r + 2
}

/// `max(0, (g-1) r (r-1))`: past this degree the series coefficients are periodic.
pub fn stabilization_bound(g: usize, r: u32) -> i64 {
    ((g as i64 - 1) * r as i64 * (r as i64 - 1)).max(0)
}

/// The series route: `A^{≥0}_{g,r,d}` for `d = 0..=order`, with every
/// rational function expanded as a `z`-series before the logarithm.
pub fn kac_series_oracle<E: Executor>(g: usize, r: u32, order: u32, exec: &E) -> Result<Vec<FactoredRat>> {
    check_rank(r)?;
    check_genus(g)?;
    let parts = partitions_up_to(r);
    let terms = exec.map(parts.len(), &|i| rhs_term(g, &parts[i]).and_then(|t| ZSeries::expand(&t, Var::Z, order)));
    let mut by_size: Vec<Vec<ZSeries>> = vec![Vec::new(); r as usize + 1];
    for (l, t) in parts.iter().zip(terms) {
        by_size[l.size() as usize].push(t?);
    }
    let coeffs: Vec<ZSeries> = by_size.iter().map(|v| <ZSeries as CoeffRing>::sum(v)).collect();
    let log = pleth_log(&BiSeries::new(coeffs))?;
    let top = log.coeff(r as usize);
    let qm1 = SparsePoly::from_terms([(Monomial::var(Var::Q), Rational::ONE), (Monomial::ONE, Rational::from_int(-1))]);
    Ok(top.coeffs().iter().map(|c| c.mul_poly(&qm1)).collect())
}

/// Outcome of comparing the periodic tail of the series route with the
/// rational route.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub genus: usize,
    pub rank: u32,
    pub order: u32,
    pub tail_start: u32,
    pub mismatches: Vec<u32>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn oracle_check<E: Executor>(g: usize, r: u32, exec: &E) -> Result<OracleReport> {
    let order = oracle_default_order(g, r);
    let series = kac_series_oracle(g, r, order, exec)?;
    let classes = kac_classes(g, r, &kac_rational(g, r, exec)?)?;
    let tail_start = stabilization_bound(g, r) as u32 + 1;
    let mismatches = (tail_start..=order)
        .filter(|&d| !series[d as usize].same_value(&classes[(d % r) as usize].value))
        .collect();
    Ok(OracleReport { genus: g, rank: r, order, tail_start, mismatches })
}

/// `K_λ(z) = 1/∏_i ∏_{j ≤ r_i} (1 - z^{-j})`.
pub fn k_factor(lambda: &Partition) -> FactoredRat {
    let mut acc = FactoredRat::one();
    for &ri in lambda.block_profile().multiplicities() {
        for j in 1..=ri {
            let f = FactoredRat::inv_binomial(&Rational::ONE, &Monomial::var_pow(Var::Z, -(j as i32)))
                .expect("1 - z^{-j} is not identically zero");
            acc = acc.mul(&f);
        }
    }
    acc
}

/// `A⁰_{g,r}(z)`: the `T^r` coefficient of
/// `-Log(Σ_λ z^{(g-1)⟨λ,λ⟩ - l(λ)} K_λ(z) T^{|λ|})`.
pub fn constant_term_rational(g: usize, r: u32) -> Result<FactoredRat> {
    check_rank(r)?;
    let mut coeffs = Vec::with_capacity(r as usize + 1);
    for n in 0..=r {
        let items: Vec<FactoredRat> = partitions_of(n)
            .iter()
            .map(|l| {
                let e = (g as i64 - 1) * pairing(l, l) as i64 - l.len() as i64;
                k_factor(l).mul_monomial(&Rational::ONE, &Monomial::var_pow(Var::Z, e as i32))
            })
            .collect();
        coeffs.push(FactoredRat::sum(&items));
    }
    let log = pleth_log(&BiSeries::new(coeffs))?;
    Ok(log.coeff(r as usize).neg())
}

/// `A_{g,r,d}(0)`, the number of irreducible components of the nilpotent cone.
pub fn constant_term(g: usize, r: u32, d: i64) -> Result<Rational> {
    let a0 = constant_term_rational(g, r)?;
    let q0 = a0.mul(&one_minus_z_pow(r));
    let coeffs = laurent_coefficients(&q0, Var::Z).ok_or(CensusError::NotPolynomialAfterClearing { rank: r })?;
    let sums = class_sums(&coeffs, r);
    let v = &sums[degree_class(d, r) as usize];
    v.as_constant().ok_or_else(|| CensusError::InvalidInput(format!("constant term {v} is not a number")))
}

/// A compactly supported Poincaré polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiResult {
    pub genus: usize,
    pub rank: u32,
    pub degree_class: u32,
    /// Polynomial in `t`.
    pub poly: SparsePoly,
    /// `gcd(r, d) = 1`; only then is the result guaranteed geometric.
    pub coprime: bool,
}

impl BettiResult {
    /// `(degree, coefficient)` pairs, ascending.
    pub fn coefficients(&self) -> Vec<(i32, Rational)> {
        let mut v: Vec<(i32, Rational)> = self.poly.terms().iter().map(|(m, c)| (m.exp(Var::Tt), c.clone())).collect();
        v.sort_by_key(|(e, _)| *e);
        v
    }

    pub fn degree(&self) -> Option<i32> {
        self.poly.max_exp(Var::Tt)
    }

    pub fn lowest(&self) -> Option<(i32, Rational)> {
        self.coefficients().into_iter().next()
    }
}

/// `t^{2(1+(g-1)r²)} A_{g,r,d}` under `α_i ↦ -t`, `q ↦ t²`.
pub fn betti_from(result: &KacResult, d: i64) -> Result<BettiResult> {
    let g = result.genus;
    let r = result.rank;
    let mut f = result.value.clone();
    for i in 1..=g {
        f = f.substitute(Var::A(i as u8), &Rational::from_int(-1), &Monomial::var(Var::Tt))?;
    }
    f = f.substitute(Var::Q, &Rational::ONE, &Monomial::var_pow(Var::Tt, 2))?;
    let shift = 2 * (1 + (g as i32 - 1) * (r * r) as i32);
    let f = f.mul_monomial(&Rational::ONE, &Monomial::var_pow(Var::Tt, shift));
    let poly = f
        .to_poly()
        .ok_or_else(|| CensusError::InvalidInput(format!("Poincaré series {f} is not a polynomial in t")))?;
    let coprime = is_coprime(r, d);
    let out = BettiResult { genus: g, rank: r, degree_class: result.degree_class, poly, coprime };
    if coprime {
        for (e, c) in out.coefficients() {
            if c.is_negative() || !c.is_integer() {
                return Err(CensusError::NegativeBettiCoefficient { degree: e, value: c.to_string() });
            }
        }
    }
    Ok(out)
}

pub fn betti_polynomial<E: Executor>(g: usize, r: u32, d: i64, exec: &E) -> Result<BettiResult> {
    let k = kac_polynomial(g, r, d, exec)?;
    betti_from(&k, d)
}

/// Point counts attached to a curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCount {
    pub indecomposables: i128,
    /// `q^{1+(g-1)r²}` times the indecomposable count, for coprime `(r, d)`.
    pub higgs_points: Option<i128>,
}

/// Evaluates `A_{g,r,d}` at the curve's Weil numbers and rounds.
pub fn count_from(result: &KacResult, curve: &CurveData, d: i64) -> Result<PointCount> {
    let v: Complex64 = result.value.eval(&curve.point())?;
    let n = v.re.round();
    let residual = (v - Complex64::new(n, 0.0)).norm();
    if residual.is_nan() || residual >= 1e-6 * v.norm().max(1.0) || n.abs() > 1e30 {
        return Err(CensusError::RoundingFailure { value: format!("{v}") });
    }
    let ind = n as i128;
    let r = result.rank;
    let coprime = is_coprime(r, d);
    let higgs = if coprime {
        let e = 1 + (curve.genus as i64 - 1) * (r as i64 * r as i64);
        if e >= 0 {
            Some((curve.q as i128).checked_pow(e as u32).and_then(|p| p.checked_mul(ind)).ok_or_else(|| {
                CensusError::InvalidInput("Higgs point count overflows".into())
            })?)
        } else if ind == 0 {
            Some(0)
        } else {
            None
        }
    } else {
        None
    };
    Ok(PointCount { indecomposables: ind, higgs_points: higgs })
}

pub fn count_points<E: Executor>(curve: &CurveData, r: u32, d: i64, exec: &E) -> Result<PointCount> {
    let k = kac_polynomial(curve.genus, r, d, exec)?;
    count_from(&k, curve, d)
}

/// Pole structure of `A_{g,r}(z)` at roots of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityReport {
    pub genus: usize,
    pub rank: u32,
    /// `(m, order)`: pole order at the primitive `m`-th roots of unity, `m | r`.
    pub pole_orders: Vec<(u32, u32)>,
    /// `(1 - z^r) A_{g,r}(z)` is a Laurent polynomial in `z`.
    pub clears_with_rank: bool,
    /// `(1 - z) A_{g,r}(z)` is a Laurent polynomial in `z`.
    pub regular_at_nontrivial_roots: bool,
    pub d_independent: bool,
}

impl RegularityReport {
    pub fn simple_poles(&self) -> bool {
        self.clears_with_rank && self.pole_orders.iter().all(|&(_, o)| o <= 1)
    }
}

/// Integer coefficients of the cyclotomic polynomial `Φ_m`, ascending.
pub fn cyclotomic(m: u32) -> Vec<i64> {
    // z^m - 1 divided by Φ_d for every proper divisor d
    let mut p = vec![0i64; m as usize + 1];
    p[0] = -1;
    p[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            let div = cyclotomic(d);
            p = exact_div_monic(&p, &div);
        }
    }
    p
}

fn exact_div_monic(p: &[i64], d: &[i64]) -> Vec<i64> {
    let mut rem = p.to_vec();
    let dn = d.len() - 1;
    let qn = p.len() - 1 - dn;
    let mut out = vec![0i64; qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn];
        out[k] = c;
        for (i, &x) in d.iter().enumerate() {
            rem[k + i] -= c * x;
        }
    }
    out
}

/// Whether `Σ_e c_e ξ^e` vanishes at a primitive `m`-th root of unity `ξ`.
fn vanishes_at_root(coeffs: &[(i32, FactoredRat)], m: u32) -> bool {
    let phi = cyclotomic(m);
    let deg = phi.len() - 1;
    // reduce exponents mod m, then the remainder modulo Φ_m
    let mut red: Vec<Vec<FactoredRat>> = vec![Vec::new(); m as usize];
    for (e, c) in coeffs {
        red[e.rem_euclid(m as i32) as usize].push(c.clone());
    }
    let mut v: Vec<FactoredRat> = red.iter().map(FactoredRat::sum).collect();
    for k in (deg..m as usize).rev() {
        let c = v[k].clone();
        if c.is_zero() {
            continue;
        }
        for (i, &x) in phi.iter().enumerate() {
            if x != 0 {
                let idx = k - deg + i;
                v[idx] = v[idx].sub(&c.scale(&Rational::from_int(x)));
            }
        }
    }
    v[..deg].iter().all(|c| c.is_zero())
}

pub fn regularity_from(g: usize, r: u32, a: &FactoredRat) -> RegularityReport {
    let qz = a.mul(&one_minus_z_pow(r));
    let (clears, pole_orders, d_indep) = match laurent_coefficients(&qz, Var::Z) {
        Some(coeffs) => {
            let orders = (1..=r).filter(|m| r.is_multiple_of(*m)).map(|m| (m, !vanishes_at_root(&coeffs, m) as u32)).collect();
            let sums = class_sums(&coeffs, r);
            (true, orders, sums.windows(2).all(|w| w[0].same_value(&w[1])))
        }
        None => (false, Vec::new(), false),
    };
    let regular = laurent_coefficients(&a.mul(&one_minus_z_pow(1)), Var::Z).is_some();
    RegularityReport {
        genus: g,
        rank: r,
        pole_orders,
        clears_with_rank: clears,
        regular_at_nontrivial_roots: regular,
        d_independent: d_indep,
    }
}

pub fn regularity_report<E: Executor>(g: usize, r: u32, exec: &E) -> Result<RegularityReport> {
    let a = kac_rational(g, r, exec)?;
    Ok(regularity_from(g, r, &a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::{pic_order, weil_from_counts};

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(2), vec![1, 1]);
        assert_eq!(cyclotomic(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
    }

    #[test]
    fn rank_one() {
        for g in 0..=2 {
            let a = kac_rational(g, 1, &Sequential).unwrap();
            let want = FactoredRat::from_poly(pic_order(g)).mul(&FactoredRat::inv_binomial(&Rational::ONE, &Monomial::var(Var::Z)).unwrap());
            assert!(a.same_value(&want), "g={g}: {a}");
            for d in [0, -1, 5] {
                let k = kac_polynomial(g, 1, d, &Sequential).unwrap();
                assert_eq!(k.polynomial().unwrap(), pic_order(g));
            }
        }
    }

    #[test]
    fn genus_zero_rank_two_vanishes() {
        for d in 0..2 {
            assert!(kac_polynomial(0, 2, d, &Sequential).unwrap().value.is_zero());
        }
    }

    #[test]
    fn constant_terms_small() {
        for g in 0..=3 {
            assert_eq!(constant_term(g, 1, 0).unwrap(), Rational::ONE);
            assert_eq!(constant_term(g, 2, 1).unwrap(), Rational::from_int(g as i64));
        }
        assert_eq!(constant_term(3, 3, 1).unwrap(), Rational::from_int(15));
    }

    #[test]
    fn genus_one_counts() {
        let e = weil_from_counts(2, &[3]).unwrap();
        let c = count_points(&e, 1, 0, &Sequential).unwrap();
        assert_eq!(c, PointCount { indecomposables: 3, higgs_points: Some(6) });
    }

    #[test]
    fn genus_one_betti() {
        let b = betti_polynomial(1, 1, 0, &Sequential).unwrap();
        let t = |e: i32| Monomial::var_pow(Var::Tt, e);
        let want = SparsePoly::from_terms([(t(2), Rational::ONE), (t(3), Rational::from_int(2)), (t(4), Rational::ONE)]);
        assert_eq!(b.poly, want);
        assert_eq!(betti_polynomial(0, 1, 0, &Sequential).unwrap().poly, SparsePoly::one());
    }
}
