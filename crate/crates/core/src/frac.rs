//! Rational functions whose denominators are products of binomials `1 - c·m`.
//!
//! Denominators are never expanded. Cancellation is decided by exact binomial
//! division of the numerator, so no multivariate gcd is needed.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::error::{CensusError, Result};
use crate::monomial::{Monomial, Var, NVARS};
use crate::poly::{eval_monomial, SparsePoly};
use crate::rational::Rational;

/// The denominator factor `1 - constant·shape`.
///
/// Canonical form: the leading variable of `shape` has a positive exponent,
/// and `1 - b²·n²` is always stored split as `(1 - b·n)(1 + b·n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    shape: Monomial,
    constant: Rational,
}

/// `1 - c·m = scalar · mono · ∏ atoms`.
#[derive(Clone, Debug)]
pub struct BinomialFactors {
    pub scalar: Rational,
    pub mono: Monomial,
    pub atoms: Vec<Atom>,
}

impl Atom {
    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn shape(&self) -> &Monomial {
        &self.shape
    }

    /// Canonical factorization of `1 - c·m` into atoms.
    pub(crate) fn factor(c: &Rational, m: &Monomial) -> BinomialFactors {
        let mut out = BinomialFactors { scalar: Rational::ONE, mono: Monomial::ONE, atoms: Vec::new() };
        Self::factor_into(c.clone(), *m, &mut out);
        out
    }

    fn factor_into(c: Rational, m: Monomial, out: &mut BinomialFactors) {
        if c.is_zero() {
            return;
        }
        let lead = match m.leading_var() {
            None => {
                out.scalar = &out.scalar * &(&Rational::ONE - &c);
                return;
            }
            Some(v) => v,
        };
        if m.exp(lead) < 0 {
            // 1 - c m = (-c m)(1 - c^{-1} m^{-1})
            out.scalar = &out.scalar * &(-&c);
            out.mono = out.mono.mul(&m);
            return Self::factor_into(c.recip(), m.inv(), out);
        }
        if m.exponent_gcd() % 2 == 0 {
            if let Some(b) = c.sqrt_exact() {
                let half = Monomial::from_exponents(m.exponents().map(|e| e / 2));
                Self::factor_into(b.clone(), half, out);
                Self::factor_into(-b, half, out);
                return;
            }
        }
        out.atoms.push(Atom { shape: m, constant: c });
    }

    pub fn as_poly(&self) -> SparsePoly {
        SparsePoly::binomial(&self.constant, &self.shape)
    }

    pub fn mentions(&self, v: Var) -> bool {
        self.shape.mentions(v)
    }

    /// Whether the shape involves only `v` (a pure power atom `1 - c·v^k`).
    pub fn is_pure_in(&self, v: Var) -> bool {
        self.shape.mentions(v) && self.shape.without(v).is_one()
    }

    pub fn adams(&self, k: u32) -> BinomialFactors {
        Self::factor(&self.constant, &self.shape.pow(k as i32))
    }

    pub fn eval(&self, point: &[Option<Complex64>; NVARS]) -> core::result::Result<Complex64, Var> {
        Ok(Complex64::new(1.0, 0.0) - eval_monomial(&self.shape, point)? * self.constant.to_f64())
    }

    /// The atom `1 - constant·shape`, if that is already in canonical form.
    pub fn from_canonical(constant: Rational, shape: Monomial) -> Option<Atom> {
        let f = Self::factor(&constant, &shape);
        (f.atoms.len() == 1 && f.scalar.is_one() && f.mono.is_one()).then(|| f.atoms[0].clone())
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.constant.is_negative() {
            let a = self.constant.abs();
            if a.is_one() {
                write!(f, "(1 + {})", self.shape)
            } else {
                write!(f, "(1 + {}*{})", a, self.shape)
            }
        } else if self.constant.is_one() {
            write!(f, "(1 - {})", self.shape)
        } else {
            write!(f, "(1 - {}*{})", self.constant, self.shape)
        }
    }
}

/// `prefactor · numerator / ∏ atoms^multiplicity`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FactoredRat {
    prefactor: Monomial,
    numerator: SparsePoly,
    denominator: Vec<(Atom, u32)>,
}

fn merge_sum(a: &[(Atom, u32)], b: &[(Atom, u32)]) -> Vec<(Atom, u32)> {
    merge_with(a, b, |x, y| x + y)
}

fn merge_max(a: &[(Atom, u32)], b: &[(Atom, u32)]) -> Vec<(Atom, u32)> {
    merge_with(a, b, |x, y| x.max(y))
}

fn merge_with(a: &[(Atom, u32)], b: &[(Atom, u32)], f: impl Fn(u32, u32) -> u32) -> Vec<(Atom, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            core::cmp::Ordering::Less => {
                out.push((a[i].0.clone(), f(a[i].1, 0)));
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push((b[j].0.clone(), f(0, b[j].1)));
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                out.push((a[i].0.clone(), f(a[i].1, b[j].1)));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().map(|(x, m)| (x.clone(), f(*m, 0))));
    out.extend(b[j..].iter().map(|(x, m)| (x.clone(), f(0, *m))));
    out
}

fn insert_atom(den: &mut Vec<(Atom, u32)>, atom: Atom, mult: u32) {
    match den.binary_search_by(|(a, _)| a.cmp(&atom)) {
        Ok(i) => den[i].1 += mult,
        Err(i) => den.insert(i, (atom, mult)),
    }
}

/// Multiplies `p` by `∏ (1 - c m)^k` over the listed atoms, one binomial at a time.
fn mul_by_atoms(mut p: SparsePoly, atoms: &[(Atom, u32)]) -> SparsePoly {
    for (a, k) in atoms {
        for _ in 0..*k {
            p = p.sub(&p.mul_term(&a.constant, &a.shape));
        }
    }
    p
}

/// Removes atoms of `den` that divide `num`, as often as they divide.
fn cancel(num: &mut SparsePoly, den: &mut Vec<(Atom, u32)>, only: impl Fn(&Atom) -> bool) {
    if num.len() <= 1 {
        return;
    }
    for (atom, mult) in den.iter_mut() {
        if !only(atom) {
            continue;
        }
        while *mult > 0 {
            match num.div_binomial(&atom.constant, &atom.shape) {
                Some(q) => {
                    *num = q;
                    *mult -= 1;
                }
                None => break,
            }
        }
        if num.len() <= 1 {
            break;
        }
    }
    den.retain(|(_, m)| *m > 0);
}

impl FactoredRat {
    pub fn zero() -> Self {
        FactoredRat { prefactor: Monomial::ONE, numerator: SparsePoly::zero(), denominator: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::ONE)
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(SparsePoly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Rational::ONE, Monomial::var(v))
    }

    pub fn monomial(c: Rational, m: Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FactoredRat { prefactor: m, numerator: SparsePoly::constant(c), denominator: Vec::new() }
    }

    pub fn from_poly(p: SparsePoly) -> Self {
        FactoredRat { prefactor: Monomial::ONE, numerator: p, denominator: Vec::new() }.normalize()
    }

    /// The polynomial `1 - c·m`.
    pub fn binomial(c: &Rational, m: &Monomial) -> Self {
        Self::from_poly(SparsePoly::binomial(c, m))
    }

    /// `1 / (1 - c·m)`; fails if the factor is identically zero.
    pub fn inv_binomial(c: &Rational, m: &Monomial) -> Result<Self> {
        let f = Atom::factor(c, m);
        if f.scalar.is_zero() {
            return Err(CensusError::PoleAtPoint);
        }
        let mut den = Vec::new();
        for a in f.atoms {
            insert_atom(&mut den, a, 1);
        }
        Ok(FactoredRat {
            prefactor: f.mono.inv(),
            numerator: SparsePoly::constant(f.scalar.recip()),
            denominator: den,
        })
    }

    /// Assembles and normalizes `prefactor · numerator / ∏ atoms^mult`.
    pub fn from_parts(prefactor: Monomial, numerator: SparsePoly, atoms: Vec<(Atom, u32)>) -> Self {
        let mut den: Vec<(Atom, u32)> = Vec::new();
        for (a, k) in atoms {
            if k > 0 {
                insert_atom(&mut den, a, k);
            }
        }
        FactoredRat { prefactor, numerator, denominator: den }.normalize()
    }

    pub fn prefactor(&self) -> &Monomial {
        &self.prefactor
    }

    pub fn numerator(&self) -> &SparsePoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &[(Atom, u32)] {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.denominator.is_empty() && self.prefactor.is_one() && self.numerator.as_constant() == Some(Rational::ONE)
    }

    /// Value when this is a rational constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if !self.denominator.is_empty() || !self.prefactor.is_one() && !self.is_zero() {
            return None;
        }
        self.numerator.as_constant()
    }

    /// Whether the denominator is empty (a Laurent polynomial).
    pub fn is_laurent_polynomial(&self) -> bool {
        self.denominator.is_empty()
    }

    /// `prefactor · numerator` as one polynomial.
    pub fn expanded_numerator(&self) -> SparsePoly {
        self.numerator.mul_monomial(&self.prefactor)
    }

    /// The Laurent polynomial this represents, if the denominator is empty.
    pub fn to_poly(&self) -> Option<SparsePoly> {
        self.denominator.is_empty().then(|| self.expanded_numerator())
    }

    pub fn mentions(&self, v: Var) -> bool {
        self.prefactor.mentions(v) || self.numerator.mentions(v) || self.denominator.iter().any(|(a, _)| a.mentions(v))
    }

    /// Number of denominator factors counted with multiplicity.
    pub fn denominator_degree(&self) -> u32 {
        self.denominator.iter().map(|(_, k)| k).sum()
    }

    /// Cancels every denominator atom dividing the numerator and moves the
    /// monomial content of the numerator into the prefactor.
    pub fn normalize(mut self) -> Self {
        if self.numerator.is_zero() {
            return Self::zero();
        }
        self.pull_content();
        cancel(&mut self.numerator, &mut self.denominator, |_| true);
        self.pull_content();
        self
    }

    fn pull_content(&mut self) {
        let mc = self.numerator.min_monomial();
        if !mc.is_one() {
            self.numerator = self.numerator.mul_monomial(&mc.inv());
            self.prefactor = self.prefactor.mul(&mc);
        }
    }

    pub fn neg(&self) -> Self {
        FactoredRat { prefactor: self.prefactor, numerator: self.numerator.neg(), denominator: self.denominator.clone() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FactoredRat { prefactor: self.prefactor, numerator: self.numerator.scale(c), denominator: self.denominator.clone() }
    }

    pub fn mul_monomial(&self, c: &Rational, m: &Monomial) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        FactoredRat {
            prefactor: self.prefactor.mul(m),
            numerator: self.numerator.scale(c),
            denominator: self.denominator.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::sum([self, o])
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::sum([self, &o.neg()])
    }

    /// Sum over a single common denominator (the lcm of the atom multisets),
    /// normalized once at the end.
    pub fn sum<'a, I: IntoIterator<Item = &'a FactoredRat>>(items: I) -> Self {
        let items: Vec<&FactoredRat> = items.into_iter().filter(|x| !x.is_zero()).collect();
        match items.len() {
            0 => return Self::zero(),
            1 => return items[0].clone(),
            _ => {}
        }
        let mut pre = items[0].prefactor;
        let mut den: Vec<(Atom, u32)> = items[0].denominator.clone();
        for it in &items[1..] {
            pre = pre.gcd(&it.prefactor);
            den = merge_max(&den, &it.denominator);
        }
        let mut num = SparsePoly::zero();
        for it in &items {
            let missing: Vec<(Atom, u32)> = complement(&den, &it.denominator);
            let shifted = it.numerator.mul_monomial(&it.prefactor.div(&pre));
            num = num.add(&mul_by_atoms(shifted, &missing));
        }
        FactoredRat { prefactor: pre, numerator: num, denominator: den }.normalize()
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut na = self.numerator.clone();
        let mut nb = o.numerator.clone();
        let mut da = self.denominator.clone();
        let mut db = o.denominator.clone();
        cancel(&mut na, &mut db, |_| true);
        cancel(&mut nb, &mut da, |_| true);
        let mut out = FactoredRat {
            prefactor: self.prefactor.mul(&o.prefactor),
            numerator: na.mul(&nb),
            denominator: merge_sum(&da, &db),
        };
        // a reducible atom can divide a product without dividing either factor
        cancel(&mut out.numerator, &mut out.denominator, |a| a.shape.exponent_gcd() > 1);
        out.pull_content();
        out
    }

    pub fn mul_poly(&self, p: &SparsePoly) -> Self {
        self.mul(&Self::from_poly(p.clone()))
    }

    /// Divides by the binomial `1 - c·m`.
    pub fn div_binomial(&self, c: &Rational, m: &Monomial) -> Result<Self> {
        Ok(self.mul(&Self::inv_binomial(c, m)?))
    }

    /// Multiplicative inverse, available when the numerator is a single term.
    pub fn inv(&self) -> Option<Self> {
        let (c, m) = self.numerator.as_term()?;
        let num = mul_by_atoms(SparsePoly::constant(c.recip()), &self.denominator);
        Some(FactoredRat::from_parts(self.prefactor.mul(&m).inv(), num, Vec::new()))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// The Adams operation `ψ_k`: every variable raised to the `k`-th power.
    pub fn adams(&self, k: u32) -> Self {
        assert!(k >= 1, "Adams operations are indexed from 1");
        if k == 1 || self.is_zero() {
            return self.clone();
        }
        let mut num = self.numerator.adams(k);
        let mut pre = self.prefactor.pow(k as i32);
        let mut den: Vec<(Atom, u32)> = Vec::new();
        let mut split = false;
        for (a, mult) in &self.denominator {
            let f = a.adams(k);
            // ψ_k keeps leading exponents positive, so only splitting can occur
            debug_assert!(f.mono.is_one());
            if f.atoms.len() > 1 {
                split = true;
            }
            for _ in 0..*mult {
                num = num.scale(&f.scalar.recip());
                pre = pre.mul(&f.mono.inv());
            }
            for atom in f.atoms {
                insert_atom(&mut den, atom, *mult);
            }
        }
        let mut out = FactoredRat { prefactor: pre, numerator: num, denominator: den };
        if split {
            // ψ_k is injective, so only factors of split atoms can newly cancel
            cancel(&mut out.numerator, &mut out.denominator, |_| true);
            out.pull_content();
        }
        out
    }

    /// Substitutes `v ↦ c·m` (`m` free of `v`) and normalizes.
    pub fn substitute(&self, v: Var, c: &Rational, m: &Monomial) -> Result<Self> {
        if c.is_zero() {
            return Err(CensusError::InvalidInput("substitution image must be nonzero".into()));
        }
        if m.mentions(v) {
            return Err(CensusError::InvalidInput("substitution image must not mention the variable".into()));
        }
        let mut num = self.numerator.substitute(v, c, m);
        let e = self.prefactor.exp(v);
        let mut pre = self.prefactor.without(v).mul(&m.pow(e));
        num = num.scale(&c.pow(e));
        let mut den: Vec<(Atom, u32)> = Vec::new();
        for (a, mult) in &self.denominator {
            if !a.mentions(v) {
                insert_atom(&mut den, a.clone(), *mult);
                continue;
            }
            let h = a.shape.exp(v);
            let nc = &a.constant * &c.pow(h);
            let ns = a.shape.without(v).mul(&m.pow(h));
            let f = Atom::factor(&nc, &ns);
            if f.scalar.is_zero() {
                return Err(CensusError::SubstitutionToZeroPole { var: v });
            }
            for _ in 0..*mult {
                num = num.scale(&f.scalar.recip());
                pre = pre.mul(&f.mono.inv());
            }
            for atom in f.atoms {
                insert_atom(&mut den, atom, *mult);
            }
        }
        Ok(FactoredRat { prefactor: pre, numerator: num, denominator: den }.normalize())
    }

    /// Floating-point value in factored form (no expansion of the denominator).
    pub fn eval(&self, point: &[Option<Complex64>; NVARS]) -> Result<Complex64> {
        let miss = CensusError::MissingVariable;
        let mut val = self.numerator.eval(point).map_err(miss)? * eval_monomial(&self.prefactor, point).map_err(miss)?;
        for (a, k) in &self.denominator {
            let d = a.eval(point).map_err(miss)?;
            if d.norm() < 1e-12 {
                return Err(CensusError::PoleAtPoint);
            }
            for _ in 0..*k {
                val /= d;
            }
        }
        Ok(val)
    }

    /// Exact value equality, decided by normalizing the difference.
    pub fn same_value(&self, o: &Self) -> bool {
        self == o || self.sub(o).is_zero()
    }

    /// Denominator atoms that mention `v`.
    pub fn atoms_in(&self, v: Var) -> impl Iterator<Item = &(Atom, u32)> {
        self.denominator.iter().filter(move |(a, _)| a.mentions(v))
    }

    /// Splits off the denominator atoms that satisfy `pred`:
    /// returns `(self with those atoms removed, the removed atoms)`.
    pub(crate) fn take_atoms(&self, pred: impl Fn(&Atom) -> bool) -> (Self, Vec<(Atom, u32)>) {
        let (taken, kept): (Vec<_>, Vec<_>) = self.denominator.iter().cloned().partition(|(a, _)| pred(a));
        (FactoredRat { prefactor: self.prefactor, numerator: self.numerator.clone(), denominator: kept }, taken)
    }
}

/// Atoms of `full` not covered by `part` (multiset difference).
fn complement(full: &[(Atom, u32)], part: &[(Atom, u32)]) -> Vec<(Atom, u32)> {
    let mut out = Vec::new();
    let mut j = 0;
    for (a, k) in full {
        while j < part.len() && part[j].0 < *a {
            j += 1;
        }
        let have = if j < part.len() && part[j].0 == *a { part[j].1 } else { 0 };
        if *k > have {
            out.push((a.clone(), k - have));
        }
    }
    out
}

impl fmt::Debug for FactoredRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FactoredRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if !self.prefactor.is_one() {
            write!(f, "{}*", self.prefactor)?;
        }
        write!(f, "({})", self.numerator)?;
        if !self.denominator.is_empty() {
            write!(f, " / (")?;
            for (i, (a, k)) in self.denominator.iter().enumerate() {
                if i > 0 {
                    write!(f, "*")?;
                }
                if *k == 1 {
                    write!(f, "{a}")?;
                } else {
                    write!(f, "{a}^{k}")?;
                }
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl From<SparsePoly> for FactoredRat {
    fn from(p: SparsePoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<Rational> for FactoredRat {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}
