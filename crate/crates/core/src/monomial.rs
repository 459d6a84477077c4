//! Ring variables and Laurent monomials over a fixed variable layout.
//!
//! The torus relation `α_{2i-1} α_{2i} = q` is built into the coordinates: only
//! the odd-indexed `α_{2i-1}` are ring variables, and `α_{2i}` is the monomial
//! `q · α_{2i-1}^{-1}` (see [`alpha`]). The coordinate ring of the torus is then
//! the plain Laurent ring in `α_1, α_3, …, α_{2g-1}, q`.

use alloc::format;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

/// Largest genus the symbolic engine has variable slots for.
pub const MAX_GENUS: usize = 8;
/// Number of auxiliary `z_i` slots (kernel variables).
pub const MAX_KERNEL_VARS: usize = 6;
/// Number of auxiliary `u_i` slots.
pub const MAX_RATIO_VARS: usize = 5;

pub(crate) const SLOT_Q: usize = MAX_GENUS;
pub(crate) const SLOT_Z: usize = SLOT_Q + 1;
pub(crate) const SLOT_T: usize = SLOT_Z + 1;
pub(crate) const SLOT_ZI: usize = SLOT_T + 1;
pub(crate) const SLOT_U: usize = SLOT_ZI + MAX_KERNEL_VARS;
pub(crate) const SLOT_TT: usize = SLOT_U + MAX_RATIO_VARS;
pub(crate) const SLOT_S: usize = SLOT_TT + 1;
/// Total number of variable slots.
pub const NVARS: usize = SLOT_S + 1;

/// A ring variable. Declaration order is the canonical variable order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// `A(i)` is the Weil variable `α_{2i-1}`, `1 ≤ i ≤ MAX_GENUS`.
    A(u8),
    Q,
    Z,
    T,
    /// Kernel variable `z_i`, `1 ≤ i ≤ MAX_KERNEL_VARS`.
    Zi(u8),
    /// Auxiliary ratio variable `u_i`, `1 ≤ i ≤ MAX_RATIO_VARS`.
    U(u8),
    /// Poincaré variable `t`.
    Tt,
    /// Torsion-series variable `s`.
    S,
}

impl Var {
    pub fn slot(self) -> usize {
        match self {
            Var::A(i) => {
                assert!(i >= 1 && (i as usize) <= MAX_GENUS, "alpha slot {i} out of range");
                i as usize - 1
            }
            Var::Q => SLOT_Q,
            Var::Z => SLOT_Z,
            Var::T => SLOT_T,
            Var::Zi(i) => {
                assert!(i >= 1 && (i as usize) <= MAX_KERNEL_VARS, "z_{i} out of range");
                SLOT_ZI + i as usize - 1
            }
            Var::U(i) => {
                assert!(i >= 1 && (i as usize) <= MAX_RATIO_VARS, "u_{i} out of range");
                SLOT_U + i as usize - 1
            }
            Var::Tt => SLOT_TT,
            Var::S => SLOT_S,
        }
    }

    pub fn from_slot(slot: usize) -> Var {
        match slot {
            s if s < MAX_GENUS => Var::A(s as u8 + 1),
            SLOT_Q => Var::Q,
            SLOT_Z => Var::Z,
            SLOT_T => Var::T,
            s if (SLOT_ZI..SLOT_U).contains(&s) => Var::Zi((s - SLOT_ZI + 1) as u8),
            s if (SLOT_U..SLOT_TT).contains(&s) => Var::U((s - SLOT_U + 1) as u8),
            SLOT_TT => Var::Tt,
            SLOT_S => Var::S,
            _ => panic!("slot {slot} out of range"),
        }
    }

    pub fn name(self) -> String {
        match self {
            Var::A(i) => format!("alpha_{}", 2 * i as usize - 1),
            Var::Q => "q".into(),
            Var::Z => "z".into(),
            Var::T => "T".into(),
            Var::Zi(i) => format!("z_{i}"),
            Var::U(i) => format!("u_{i}"),
            Var::Tt => "t".into(),
            Var::S => "s".into(),
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        let idx = |s: &str| s.parse::<u8>().ok();
        match name {
            "q" => Some(Var::Q),
            "z" => Some(Var::Z),
            "T" => Some(Var::T),
            "t" => Some(Var::Tt),
            "s" => Some(Var::S),
            _ => {
                if let Some(k) = name.strip_prefix("alpha_").and_then(idx) {
                    (k % 2 == 1 && (k as usize).div_ceil(2) <= MAX_GENUS).then(|| Var::A(k.div_ceil(2)))
                } else if let Some(i) = name.strip_prefix("z_").and_then(idx) {
                    (i >= 1 && i as usize <= MAX_KERNEL_VARS).then_some(Var::Zi(i))
                } else if let Some(i) = name.strip_prefix("u_").and_then(idx) {
                    (i >= 1 && i as usize <= MAX_RATIO_VARS).then_some(Var::U(i))
                } else {
                    None
                }
            }
        }
    }

    /// Whether this is one of the Weil variables.
    pub fn is_alpha(self) -> bool {
        matches!(self, Var::A(_))
    }
}

/// A Laurent monomial: one signed exponent per variable slot.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial([i16; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: i32) -> Self {
        let mut m = Self::ONE;
        m.0[v.slot()] = e as i16;
        m
    }

    pub fn from_pairs(pairs: &[(Var, i32)]) -> Self {
        let mut m = Self::ONE;
        for &(v, e) in pairs {
            m.0[v.slot()] += e as i16;
        }
        m
    }

    pub fn exponents(&self) -> &[i16; NVARS] {
        &self.0
    }

    pub fn from_exponents(e: [i16; NVARS]) -> Self {
        Monomial(e)
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0[v.slot()] as i32
    }

    pub fn with_exp(mut self, v: Var, e: i32) -> Self {
        self.0[v.slot()] = e as i16;
        self
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0.iter()) {
            *a += *b;
        }
        r
    }

    pub fn div(&self, o: &Monomial) -> Monomial {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0.iter()) {
            *a -= *b;
        }
        r
    }

    pub fn inv(&self) -> Monomial {
        let mut r = *self;
        for a in r.0.iter_mut() {
            *a = -*a;
        }
        r
    }

    pub fn pow(&self, k: i32) -> Monomial {
        let mut r = *self;
        for a in r.0.iter_mut() {
            *a = (*a as i32 * k) as i16;
        }
        r
    }

    /// Componentwise minimum (the monomial gcd in the Laurent sense).
    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0.iter()) {
            *a = (*a).min(*b);
        }
        r
    }

    pub fn total_degree(&self) -> i32 {
        self.0.iter().map(|&e| e as i32).sum()
    }

    pub fn mentions(&self, v: Var) -> bool {
        self.0[v.slot()] != 0
    }

    /// First variable (in canonical order) with a nonzero exponent.
    pub fn leading_var(&self) -> Option<Var> {
        self.0.iter().position(|&e| e != 0).map(Var::from_slot)
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, i32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(s, &e)| (Var::from_slot(s), e as i32))
    }

    /// gcd of all exponents (0 for the unit monomial).
    pub fn exponent_gcd(&self) -> i32 {
        self.0.iter().fold(0i32, |g, &e| num_integer::Integer::gcd(&g, &(e as i32)))
    }

    /// Drop the exponent of `v`.
    pub fn without(&self, v: Var) -> Monomial {
        let mut r = *self;
        r.0[v.slot()] = 0;
        r
    }
}

impl Ord for Monomial {
    /// Graded lexicographic over the canonical variable order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in self.vars() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v.name())?;
            } else {
                write!(f, "{}^{}", v.name(), e)?;
            }
        }
        Ok(())
    }
}

/// The Weil variable `α_k` (1-based) as a monomial in the torus coordinates:
/// `α_{2i-1}` is a ring variable, `α_{2i} = q · α_{2i-1}^{-1}`.
pub fn alpha(k: usize) -> Monomial {
    assert!(k >= 1, "alpha index is 1-based");
    let i = k.div_ceil(2);
    assert!(i <= MAX_GENUS, "alpha_{k} exceeds the supported genus");
    if k % 2 == 1 {
        Monomial::var(Var::A(i as u8))
    } else {
        Monomial::from_pairs(&[(Var::Q, 1), (Var::A(i as u8), -1)])
    }
}

/// All `2g` Weil monomials `α_1, …, α_{2g}`.
pub fn alphas(genus: usize) -> alloc::vec::Vec<Monomial> {
    (1..=2 * genus).map(alpha).collect()
}
