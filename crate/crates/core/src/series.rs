//! Truncated power series in `T` and the plethystic calculus on them.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{CensusError, Result};
use crate::frac::{Atom, FactoredRat};
use crate::monomial::{Monomial, Var};
use crate::poly::SparsePoly;
use crate::rational::Rational;

/// Coefficient rings a [`BiSeries`] can carry.
///
/// `adams` must be the ring endomorphism raising every variable to the `k`-th
/// power, so that `ψ_k` on the series acts on coefficients and on `T` alike.
pub trait CoeffRing: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn adams(&self, k: u32) -> Self;

    fn sum(items: &[Self]) -> Self {
        let mut acc = items[0].clone();
        for x in &items[1..] {
            acc = acc.add(x);
        }
        acc
    }

    /// `Exp` of a constant-in-`T` coefficient. Only the zero element is
    /// accepted unless the ring has its own augmentation.
    fn exp_constant(&self) -> Result<Self> {
        if self.is_zero() {
            Ok(self.one_like())
        } else {
            Err(CensusError::NotAugmented)
        }
    }
}

impl CoeffRing for FactoredRat {
    fn zero_like(&self) -> Self {
        FactoredRat::zero()
    }
    fn one_like(&self) -> Self {
        FactoredRat::one()
    }
    fn is_zero(&self) -> bool {
        FactoredRat::is_zero(self)
    }
    fn is_one(&self) -> bool {
        FactoredRat::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        FactoredRat::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        FactoredRat::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        FactoredRat::mul(self, o)
    }
    fn scale(&self, c: &Rational) -> Self {
        FactoredRat::scale(self, c)
    }
    fn adams(&self, k: u32) -> Self {
        FactoredRat::adams(self, k)
    }
    fn sum(items: &[Self]) -> Self {
        FactoredRat::sum(items)
    }
}

/// A power series in one variable truncated after `order`, with coefficients
/// rational in the remaining variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZSeries {
    var: Var,
    coeffs: Vec<FactoredRat>,
}

impl ZSeries {
    pub fn zero(var: Var, order: u32) -> Self {
        ZSeries { var, coeffs: vec![FactoredRat::zero(); order as usize + 1] }
    }

    pub fn from_coeffs(var: Var, order: u32, mut coeffs: Vec<FactoredRat>) -> Self {
        coeffs.resize(order as usize + 1, FactoredRat::zero());
        ZSeries { var, coeffs }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn order(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    pub fn coeffs(&self) -> &[FactoredRat] {
        &self.coeffs
    }

    pub fn coeff(&self, j: u32) -> &FactoredRat {
        &self.coeffs[j as usize]
    }

    /// Power-series expansion of `f` in `var` through `var^order`.
    ///
    /// Denominator atoms free of `var` stay in the coefficients; the others
    /// are expanded geometrically. Fails with `InvalidInput` when `f` has a
    /// pole at `var = 0`.
    pub fn expand(f: &FactoredRat, var: Var, order: u32) -> Result<Self> {
        let n = order as usize + 1;
        let (outer, inner) = f.take_atoms(|a| a.mentions(var));
        // fixed part: prefactor, numerator and var-free atoms
        let mut shift = outer.prefactor().exp(var);
        let fixed_pre = outer.prefactor().without(var);
        // series part, coefficients are Laurent polynomials in the other variables
        let mut acc: Vec<SparsePoly> = vec![SparsePoly::zero(); n];
        let low = match outer.numerator().min_exp(var) {
            Some(e) => e,
            None => return Ok(Self::zero(var, order)),
        };
        // atoms with negative var-exponent are flipped so every factor is 1/(1 - x·var^k), k > 0
        let mut geo: Vec<(SparsePoly, u32, u32)> = Vec::new();
        let mut scalar = Rational::ONE;
        let mut mono = Monomial::ONE;
        for (a, mult) in &inner {
            let k = a.shape().exp(var);
            let rest = a.shape().without(var);
            if k > 0 {
                geo.push((SparsePoly::term(rest, a.constant().clone()), k as u32, *mult));
            } else {
                // 1/(1 - c m v^k) = -(c m)^{-1} v^{-k} / (1 - c^{-1} m^{-1} v^{-k})
                for _ in 0..*mult {
                    scalar = &scalar * &(-a.constant().recip());
                    mono = mono.mul(&rest.inv());
                    shift -= k;
                }
                geo.push((SparsePoly::term(rest.inv(), a.constant().recip()), (-k) as u32, *mult));
            }
        }
        shift += low;
        if shift < 0 {
            return Err(CensusError::InvalidInput("series expansion of a function with a pole at the origin".into()));
        }
        let shift = shift as usize;
        if shift >= n {
            return Ok(Self::zero(var, order));
        }
        let room = n - shift;
        for (e, c) in outer.numerator().collect_in(var) {
            let idx = (e - low) as usize;
            if idx < room {
                acc[idx] = acc[idx].add(&c);
            }
        }
        acc.truncate(room);
        for (x, k, mult) in geo {
            for _ in 0..mult {
                // multiply by 1/(1 - x v^k): b_j = a_j + x b_{j-k}
                for j in k as usize..room {
                    let prev = acc[j - k as usize].mul(&x);
                    if !prev.is_zero() {
                        acc[j] = acc[j].add(&prev);
                    }
                }
            }
        }
        let common = FactoredRat::from_parts(fixed_pre.mul(&mono), SparsePoly::constant(scalar), outer.denominator().to_vec());
        let mut coeffs = vec![FactoredRat::zero(); n];
        for (j, p) in acc.into_iter().enumerate() {
            if !p.is_zero() {
                coeffs[shift + j] = common.mul_poly(&p);
            }
        }
        Ok(ZSeries { var, coeffs })
    }

    /// Sum of the coefficients of `var^j` over `j ≡ class (mod r)`.
    pub fn class_sum(&self, r: u32, class: u32) -> FactoredRat {
        let items: Vec<FactoredRat> =
            self.coeffs.iter().enumerate().filter(|(j, _)| *j as u32 % r == class).map(|(_, c)| c.clone()).collect();
        FactoredRat::sum(&items)
    }
}

impl CoeffRing for ZSeries {
    fn zero_like(&self) -> Self {
        Self::zero(self.var, self.order())
    }
    fn one_like(&self) -> Self {
        let mut z = self.zero_like();
        z.coeffs[0] = FactoredRat::one();
        z
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }
    fn add(&self, o: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect();
        ZSeries { var: self.var, coeffs }
    }
    fn sub(&self, o: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect();
        ZSeries { var: self.var, coeffs }
    }
    fn mul(&self, o: &Self) -> Self {
        let n = self.coeffs.len();
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let terms: Vec<FactoredRat> = (0..=k)
                .filter(|&i| !self.coeffs[i].is_zero() && !o.coeffs[k - i].is_zero())
                .map(|i| self.coeffs[i].mul(&o.coeffs[k - i]))
                .collect();
            coeffs.push(FactoredRat::sum(&terms));
        }
        ZSeries { var: self.var, coeffs }
    }
    fn scale(&self, c: &Rational) -> Self {
        ZSeries { var: self.var, coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }
    fn adams(&self, k: u32) -> Self {
        let mut out = self.zero_like();
        for (j, c) in self.coeffs.iter().enumerate() {
            let t = j * k as usize;
            if t < out.coeffs.len() && !c.is_zero() {
                out.coeffs[t] = c.adams(k);
            }
        }
        out
    }
    fn sum(items: &[Self]) -> Self {
        let n = items[0].coeffs.len();
        let coeffs = (0..n)
            .map(|j| FactoredRat::sum(&items.iter().map(|s| s.coeffs[j].clone()).collect::<Vec<_>>()))
            .collect();
        ZSeries { var: items[0].var, coeffs }
    }
    /// The augmentation ideal here is everything with vanishing constant term.
    fn exp_constant(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(CensusError::NotAugmented);
        }
        let as_t = BiSeries { coeffs: self.coeffs.clone() };
        Ok(ZSeries { var: self.var, coeffs: pleth_exp(&as_t)?.coeffs })
    }
}

/// A power series `Σ_{k ≤ R} c_k T^k` truncated after `T^R`.
#[derive(Clone, PartialEq, Debug)]
pub struct BiSeries<C> {
    coeffs: Vec<C>,
}

impl<C: CoeffRing> BiSeries<C> {
    /// Requires at least one coefficient.
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs its constant coefficient");
        BiSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn add(&self, o: &Self) -> Self {
        BiSeries { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        BiSeries { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.coeffs.len().min(o.coeffs.len());
        let coeffs = (0..n)
            .map(|k| {
                let terms: Vec<C> = (0..=k)
                    .filter(|&i| !self.coeffs[i].is_zero() && !o.coeffs[k - i].is_zero())
                    .map(|i| self.coeffs[i].mul(&o.coeffs[k - i]))
                    .collect();
                if terms.is_empty() {
                    self.coeffs[0].zero_like()
                } else {
                    C::sum(&terms)
                }
            })
            .collect();
        BiSeries { coeffs }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        BiSeries { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    /// `ψ_k`: coefficients mapped by `ψ_k` and `T ↦ T^k`, same truncation.
    pub fn adams(&self, k: u32) -> Self {
        let zero = self.coeffs[0].zero_like();
        let mut coeffs = vec![zero; self.coeffs.len()];
        for (j, c) in self.coeffs.iter().enumerate() {
            let t = j * k as usize;
            if t < coeffs.len() {
                coeffs[t] = c.adams(k);
            }
        }
        BiSeries { coeffs }
    }
}

/// `log f` for `f` with constant coefficient 1, via `k g_k = k f_k − Σ_{j<k} j g_j f_{k−j}`.
pub fn series_log<C: CoeffRing>(f: &BiSeries<C>) -> Result<BiSeries<C>> {
    if !f.coeffs[0].is_one() {
        return Err(CensusError::NotUnitConstantTerm);
    }
    let n = f.coeffs.len();
    let mut g: Vec<C> = vec![f.coeffs[0].zero_like(); n];
    for k in 1..n {
        let mut terms = vec![f.coeffs[k].scale(&Rational::from_int(k as i64))];
        for (j, gj) in g.iter().enumerate().take(k).skip(1) {
            if !gj.is_zero() && !f.coeffs[k - j].is_zero() {
                terms.push(gj.mul(&f.coeffs[k - j]).scale(&Rational::from_int(-(j as i64))));
            }
        }
        g[k] = C::sum(&terms).scale(&Rational::new(1, k as i64));
    }
    Ok(BiSeries { coeffs: g })
}

/// `exp f` for `f` with vanishing constant coefficient, via `k e_k = Σ_{j ≤ k} j f_j e_{k−j}`.
pub fn series_exp<C: CoeffRing>(f: &BiSeries<C>) -> Result<BiSeries<C>> {
    if !f.coeffs[0].is_zero() {
        return Err(CensusError::NotAugmented);
    }
    Ok(exp_from(f, f.coeffs[0].one_like()))
}

fn exp_from<C: CoeffRing>(f: &BiSeries<C>, e0: C) -> BiSeries<C> {
    let n = f.coeffs.len();
    let mut e: Vec<C> = Vec::with_capacity(n);
    e.push(e0);
    for k in 1..n {
        let terms: Vec<C> = (1..=k)
            .filter(|&j| !f.coeffs[j].is_zero() && !e[k - j].is_zero())
            .map(|j| f.coeffs[j].mul(&e[k - j]).scale(&Rational::from_int(j as i64)))
            .collect();
        let v = if terms.is_empty() { f.coeffs[0].zero_like() } else { C::sum(&terms).scale(&Rational::new(1, k as i64)) };
        e.push(v);
    }
    BiSeries { coeffs: e }
}

/// Möbius function.
pub fn mobius(n: u32) -> i32 {
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// `Exp(f) = exp(Σ_k ψ_k(f)/k)`.
pub fn pleth_exp<C: CoeffRing>(f: &BiSeries<C>) -> Result<BiSeries<C>> {
    let e0 = f.coeffs[0].exp_constant()?;
    let r = f.order();
    let mut f0 = f.clone();
    f0.coeffs[0] = f.coeffs[0].zero_like();
    let mut acc = f0.clone();
    for k in 2..=r.max(1) as u32 {
        acc = acc.add(&f0.adams(k).scale(&Rational::new(1, k as i64)));
    }
    Ok(exp_from(&acc, e0))
}

/// `Log(f) = Σ_k μ(k)/k · ψ_k(log f)`.
pub fn pleth_log<C: CoeffRing>(f: &BiSeries<C>) -> Result<BiSeries<C>> {
    let l = series_log(f)?;
    let mut acc = l.clone();
    for k in 2..=l.order().max(1) as u32 {
        let mu = mobius(k);
        if mu != 0 {
            acc = acc.add(&l.adams(k).scale(&Rational::new(mu as i64, k as i64)));
        }
    }
    Ok(acc)
}

/// The atoms of `f` that are pure powers of `v`, used by callers that need to
/// inspect cyclotomic denominators.
pub fn pure_atoms(f: &FactoredRat, v: Var) -> Vec<(Atom, u32)> {
    f.denominator().iter().filter(|(a, _)| a.is_pure_in(v)).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t_series(cs: &[i64]) -> BiSeries<FactoredRat> {
        BiSeries::new(cs.iter().map(|&c| FactoredRat::int(c)).collect())
    }

    #[test]
    fn mobius_values() {
        let v: Vec<i32> = (1..=12).map(mobius).collect();
        assert_eq!(v, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
        for k in 1..=30u32 {
            let s: i32 = (1..=k).filter(|d| k % d == 0).map(mobius).sum();
            assert_eq!(s, (k == 1) as i32);
        }
    }

    #[test]
    fn log_of_one_plus_t() {
        let l = series_log(&t_series(&[1, 1, 0, 0, 0])).unwrap();
        let want: Vec<Rational> = [0, 1, -1, 1, -1].iter().zip([1, 1, 2, 3, 4]).map(|(&a, b)| Rational::new(a, b)).collect();
        for (c, w) in l.coeffs().iter().zip(want) {
            assert_eq!(c.as_constant(), Some(w));
        }
        assert!(series_log(&t_series(&[1, 0, 0])).unwrap().coeffs().iter().all(|c| c.is_zero()));
        assert_eq!(series_log(&t_series(&[2, 1])).unwrap_err(), CensusError::NotUnitConstantTerm);
    }

    #[test]
    fn exp_of_t_is_geometric() {
        let e = pleth_exp(&t_series(&[0, 1, 0, 0, 0, 0])).unwrap();
        assert!(e.coeffs().iter().all(|c| c.is_one()));
        let a = FactoredRat::var(Var::A(1));
        let f = BiSeries::new(vec![FactoredRat::zero(), a.clone(), FactoredRat::zero(), FactoredRat::zero()]);
        let e = pleth_exp(&f).unwrap();
        for k in 0..4 {
            assert_eq!(e.coeff(k), &a.pow(k as u32));
        }
        assert_eq!(pleth_exp(&t_series(&[1, 1])).unwrap_err(), CensusError::NotAugmented);
    }

    #[test]
    fn log_of_geometric_is_t() {
        let l = pleth_log(&t_series(&[1, 1, 1, 1, 1, 1])).unwrap();
        assert!(l.coeff(1).is_one());
        assert!(l.coeffs().iter().enumerate().all(|(k, c)| k == 1 || c.is_zero()));
    }

    #[test]
    fn zseries_expansion() {
        // 1/((1-z)(1-qz)) = Σ (1 + q + … + q^j) z^j
        let z = Monomial::var(Var::Z);
        let f = FactoredRat::inv_binomial(&Rational::ONE, &z)
            .unwrap()
            .mul(&FactoredRat::inv_binomial(&Rational::ONE, &Monomial::var(Var::Q).mul(&z)).unwrap());
        let s = ZSeries::expand(&f, Var::Z, 4).unwrap();
        for j in 0..=4u32 {
            let want = SparsePoly::from_terms((0..=j).map(|i| (Monomial::var_pow(Var::Q, i as i32), Rational::ONE)));
            assert_eq!(s.coeff(j).to_poly().unwrap(), want);
        }
        // a flipped atom: 1/(1 - q/z) = -(z/q)/(1 - z/q)
        let g = FactoredRat::inv_binomial(&Rational::ONE, &Monomial::from_pairs(&[(Var::Q, 1), (Var::Z, -1)])).unwrap();
        let s = ZSeries::expand(&g, Var::Z, 3).unwrap();
        assert!(s.coeff(0).is_zero());
        assert_eq!(s.coeff(2), &FactoredRat::monomial(Rational::from_int(-1), Monomial::var_pow(Var::Q, -2)));
        let pole = FactoredRat::monomial(Rational::ONE, z.inv());
        assert!(ZSeries::expand(&pole, Var::Z, 3).is_err());
    }
}
