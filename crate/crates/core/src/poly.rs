//! Sparse multivariate Laurent polynomials with exact rational coefficients.

use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;
use num_complex::Complex64;

use crate::monomial::{Monomial, Var, NVARS};
use crate::rational::Rational;

/// A finite sum of rational multiples of Laurent monomials.
///
/// Terms are kept sorted by the graded lexicographic monomial order with no
/// zero coefficients, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparsePoly {
    terms: Vec<(Monomial, Rational)>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        SparsePoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::ONE)
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            SparsePoly { terms: alloc::vec![(m, c)] }
        }
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), Rational::ONE)
    }

    /// Collects terms, merging equal monomials and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in it {
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(e) => *e = &*e + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|a| a.0);
        SparsePoly { terms }
    }

    /// Trusts the caller that `terms` is sorted, deduplicated and zero-free.
    fn from_sorted(terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        SparsePoly { terms }
    }

    /// `1 - c·m` as a polynomial.
    pub fn binomial(c: &Rational, m: &Monomial) -> Self {
        Self::from_terms([(Monomial::ONE, Rational::ONE), (*m, -c)])
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value when the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::ZERO),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// `(c, m)` when the polynomial is a single term.
    pub fn as_term(&self) -> Option<(Rational, Monomial)> {
        match self.terms.as_slice() {
            [(m, c)] => Some((c.clone(), *m)),
            _ => None,
        }
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms
            .binary_search_by(|(t, _)| t.cmp(m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or(Rational::ZERO)
    }

    pub fn add(&self, o: &SparsePoly) -> SparsePoly {
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                core::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Self::from_sorted(out)
    }

    pub fn neg(&self) -> SparsePoly {
        SparsePoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn sub(&self, o: &SparsePoly) -> SparsePoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Rational) -> SparsePoly {
        if c.is_zero() {
            return Self::zero();
        }
        SparsePoly { terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect() }
    }

    /// Multiplication by a monomial preserves the term order.
    pub fn mul_monomial(&self, m: &Monomial) -> SparsePoly {
        if m.is_one() {
            return self.clone();
        }
        Self::from_sorted(self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect())
    }

    pub fn mul_term(&self, c: &Rational, m: &Monomial) -> SparsePoly {
        self.scale(c).mul_monomial(m)
    }

    pub fn mul(&self, o: &SparsePoly) -> SparsePoly {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let (small, large) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return large.mul_term(c, m);
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(large.len() * small.len().min(8));
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(e) => *e = &*e + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(acc)
    }

    pub fn pow(&self, k: u32) -> SparsePoly {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Componentwise minimum exponent over all terms (`1` for zero).
    pub fn min_monomial(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::ONE,
            Some((m, _)) => it.fold(*m, |acc, (t, _)| acc.gcd(t)),
        }
    }

    pub fn max_exp(&self, v: Var) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m.exp(v)).max()
    }

    pub fn min_exp(&self, v: Var) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m.exp(v)).min()
    }

    pub fn mentions(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.mentions(v))
    }

    /// Applies a monomial map termwise; the map must be injective on the
    /// support or the caller must accept re-collection.
    pub fn map_monomials<F: Fn(&Monomial) -> Monomial>(&self, f: F) -> SparsePoly {
        Self::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// Adams operation: every variable raised to the `k`-th power.
    pub fn adams(&self, k: u32) -> SparsePoly {
        if k == 1 {
            return self.clone();
        }
        // m ↦ m^k is injective and order preserving for k > 0
        Self::from_sorted(self.terms.iter().map(|(m, c)| (m.pow(k as i32), c.clone())).collect())
    }

    /// Substitutes `v ↦ c·m` (with `m` free of `v`).
    pub fn substitute(&self, v: Var, c: &Rational, m: &Monomial) -> SparsePoly {
        debug_assert!(!m.mentions(v));
        let mut powers: HashMap<i32, Rational> = HashMap::new();
        Self::from_terms(self.terms.iter().map(|(t, k)| {
            let e = t.exp(v);
            let s = powers.entry(e).or_insert_with(|| c.pow(e)).clone();
            (t.without(v).mul(&m.pow(e)), k * &s)
        }))
    }

    /// Whether `1 - c·shape` divides this polynomial in the Laurent ring.
    ///
    /// Works in the quotient by `x^k = (c·m')^{-1}` where `x` is the leading
    /// variable of `shape = x^k·m'` (`k > 0`): the classes of `1, x, …, x^{k-1}`
    /// form a basis, so the polynomial is divisible iff its reduction is zero.
    pub fn divisible_by_binomial(&self, c: &Rational, shape: &Monomial) -> bool {
        if self.is_zero() {
            return true;
        }
        let x = shape.leading_var().expect("binomial shape must be nonconstant");
        let k = shape.exp(x);
        debug_assert!(k > 0);
        let rest = shape.without(x);
        let cinv = c.recip();
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.len());
        let mut powers: HashMap<i32, Rational> = HashMap::new();
        for (m, coef) in &self.terms {
            let e = m.exp(x);
            let qd = e.div_euclid(k);
            let r = e.rem_euclid(k);
            // x^e = x^r · (x^k)^qd ≡ x^r · (c·rest)^{-qd}
            let red = m.with_exp(x, r).mul(&rest.pow(-qd));
            let s = powers.entry(qd).or_insert_with(|| cinv.pow(qd)).clone();
            let val = coef * &s;
            match acc.get_mut(&red) {
                Some(e) => *e = &*e + &val,
                None => {
                    acc.insert(red, val);
                }
            }
        }
        acc.values().all(|v| v.is_zero())
    }

    /// Exact quotient by `1 - c·shape`, or `None` when it does not divide.
    pub fn div_binomial(&self, c: &Rational, shape: &Monomial) -> Option<SparsePoly> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if !self.divisible_by_binomial(c, shape) {
            return None;
        }
        Some(self.div_binomial_unchecked(c, shape))
    }

    /// Quotient by `1 - c·shape` assuming divisibility.
    ///
    /// Writing the dividend as `Σ_e N_e x^e` in the leading variable `x` of
    /// `shape = x^k m'`, the quotient coefficients satisfy
    /// `Q_e = N_e + c·m'·Q_{e-k}`.
    pub fn div_binomial_unchecked(&self, c: &Rational, shape: &Monomial) -> SparsePoly {
        let x = shape.leading_var().expect("binomial shape must be nonconstant");
        let k = shape.exp(x);
        let rest = shape.without(x);
        let emin = self.min_exp(x).unwrap();
        let emax = self.max_exp(x).unwrap();
        let span = (emax - emin + 1) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = alloc::vec![Vec::new(); span];
        for (m, coef) in &self.terms {
            buckets[(m.exp(x) - emin) as usize].push((m.without(x), coef.clone()));
        }
        let top = emax - k;
        let mut q: Vec<SparsePoly> = Vec::with_capacity(span);
        let mut out_terms = Vec::new();
        for idx in 0..span {
            let e = emin + idx as i32;
            if e > top {
                break;
            }
            let mut cur = SparsePoly::from_terms(core::mem::take(&mut buckets[idx]));
            if idx >= k as usize {
                let prev = &q[idx - k as usize];
                if !prev.is_zero() {
                    cur = cur.add(&prev.mul_term(c, &rest));
                }
            }
            for (m, v) in cur.terms() {
                out_terms.push((m.with_exp(x, e), v.clone()));
            }
            q.push(cur);
        }
        SparsePoly::from_terms(out_terms)
    }

    pub fn eval(&self, point: &[Option<Complex64>; NVARS]) -> Result<Complex64, Var> {
        let mut total = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            total += eval_monomial(m, point)? * c.to_f64();
        }
        Ok(total)
    }

    /// Splits by the exponent of `v`: returns `(e, coefficient)` pairs sorted by `e`.
    pub fn collect_in(&self, v: Var) -> Vec<(i32, SparsePoly)> {
        let mut map: HashMap<i32, Vec<(Monomial, Rational)>> = HashMap::new();
        for (m, c) in &self.terms {
            map.entry(m.exp(v)).or_default().push((m.without(v), c.clone()));
        }
        let mut out: Vec<_> = map.into_iter().map(|(e, t)| (e, SparsePoly::from_terms(t))).collect();
        out.sort_by_key(|(e, _)| *e);
        out
    }
}

pub(crate) fn eval_monomial(m: &Monomial, point: &[Option<Complex64>; NVARS]) -> Result<Complex64, Var> {
    let mut acc = Complex64::new(1.0, 0.0);
    for (slot, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let x = point[slot].ok_or(Var::from_slot(slot))?;
        acc *= powi(x, e as i32);
    }
    Ok(acc)
}

pub(crate) fn powi(x: Complex64, e: i32) -> Complex64 {
    let mut base = if e < 0 { Complex64::new(1.0, 0.0) / x } else { x };
    let mut n = e.unsigned_abs();
    let mut acc = Complex64::new(1.0, 0.0);
    while n > 0 {
        if n & 1 == 1 {
            acc *= base;
        }
        base *= base;
        n >>= 1;
    }
    acc
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}
