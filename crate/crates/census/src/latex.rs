//! LaTeX rendering. Products `∏(1 ± α_i)` and `∏(1 ± qα_i)` are pulled out
//! when they divide; whatever is left is printed expanded.

use std::fmt::Write;

use census_core::{alpha, Atom, FactoredRat, Monomial, Rational, SparsePoly, Var};

fn rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

fn alpha_name(k: u32) -> String {
    if k < 10 {
        format!("\\alpha_{k}")
    } else {
        format!("\\alpha_{{{k}}}")
    }
}

fn power(base: &str, e: i32) -> String {
    if e == 1 {
        base.to_string()
    } else {
        format!("{base}^{{{e}}}")
    }
}

/// `a_i^{-e}` is written `α_{2i}^{e} q^{-e}`, so only the `q` exponent can be negative.
fn monomial(m: &Monomial) -> String {
    let mut q = m.exp(Var::Q);
    let mut parts = Vec::new();
    for (v, e) in m.vars() {
        match v {
            Var::A(i) if e > 0 => parts.push(power(&alpha_name(2 * i as u32 - 1), e)),
            Var::A(i) => {
                parts.push(power(&alpha_name(2 * i as u32), -e));
                q += e;
            }
            _ => {}
        }
    }
    if q != 0 {
        parts.insert(0, power("q", q));
    }
    for (v, e) in m.vars() {
        if !v.is_alpha() && v != Var::Q {
            parts.push(power(&v.name(), e));
        }
    }
    parts.join(" ")
}

/// Expanded form, highest terms first.
pub fn poly(p: &SparsePoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().rev().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let a = c.abs();
        let mono = monomial(m);
        if mono.is_empty() {
            out.push_str(&rational(&a));
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            let _ = write!(out, "{} {mono}", rational(&a));
        }
    }
    out
}

struct Family {
    sign: char,
    with_q: bool,
}

const FAMILIES: [Family; 4] = [
    Family { sign: '-', with_q: false },
    Family { sign: '+', with_q: false },
    Family { sign: '-', with_q: true },
    Family { sign: '+', with_q: true },
];

impl Family {
    fn factor(&self, k: usize) -> (Rational, Monomial) {
        let c = if self.sign == '-' { Rational::ONE } else { Rational::from_int(-1) };
        let m = if self.with_q { alpha(k).mul(&Monomial::var(Var::Q)) } else { alpha(k) };
        (c, m)
    }

    fn render(&self, g: usize, power_of: u32) -> String {
        let q = if self.with_q { "q" } else { "" };
        (1..=2 * g)
            .map(|k| {
                let base = format!("(1{}{q}{})", self.sign, alpha_name(k as u32));
                if power_of == 1 { base } else { format!("{base}^{{{power_of}}}") }
            })
            .collect()
    }
}

/// Tries `f / ∏_k (1 ∓ (q)α_k)`, keeping the quotient only if it is still a
/// Laurent polynomial.
fn divide_out(f: &FactoredRat, fam: &Family, g: usize) -> Option<FactoredRat> {
    let mut acc = f.clone();
    for k in 1..=2 * g {
        let (c, m) = fam.factor(k);
        acc = acc.div_binomial(&c, &m).ok()?;
    }
    acc.is_laurent_polynomial().then_some(acc)
}

/// Best-effort factored form of a Laurent polynomial in `α_{2i-1}, q`.
pub fn factored_poly(p: &SparsePoly, g: usize) -> String {
    if p.is_zero() || g == 0 {
        return poly(p);
    }
    let mut rest = FactoredRat::from_poly(p.clone());
    let mut head = String::new();
    for fam in &FAMILIES {
        let mut n = 0;
        while let Some(next) = divide_out(&rest, fam, g) {
            rest = next;
            n += 1;
        }
        if n > 0 {
            head.push_str(&fam.render(g, n));
        }
    }
    let rest = rest.to_poly().expect("quotients are kept only when polynomial");
    if head.is_empty() {
        return poly(p);
    }
    match rest.as_constant() {
        Some(c) if c.is_one() => head,
        Some(c) if c == Rational::from_int(-1) => format!("-{head}"),
        Some(c) => format!("{} {head}", rational(&c)),
        None => format!("{head}\\left({}\\right)", poly(&rest)),
    }
}

fn atom(a: &Atom) -> String {
    let mono = monomial(a.shape());
    let c = a.constant();
    let (sign, mag) = if c.is_negative() { ('+', c.abs()) } else { ('-', c.clone()) };
    if mag.is_one() {
        format!("(1 {sign} {mono})")
    } else {
        format!("(1 {sign} {} {mono})", rational(&mag))
    }
}

/// LaTeX for any value: factored polynomial form when possible, a fraction
/// over the binomial denominator otherwise.
pub fn factored(f: &FactoredRat, g: usize) -> String {
    if let Some(p) = f.to_poly() {
        return factored_poly(&p, g);
    }
    let num = poly(&f.numerator().mul_monomial(f.prefactor()));
    let den: String = f
        .denominator()
        .iter()
        .map(|(a, k)| if *k == 1 { atom(a) } else { format!("{}^{{{k}}}", atom(a)) })
        .collect();
    format!("\\frac{{{num}}}{{{den}}}")
}
