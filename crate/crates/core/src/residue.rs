//! The symmetrized kernel `L(z_n, …, z_1)`, its iterated chain residues and
//! the resulting partition factors `H̃_λ` and `H_λ(z)`.
//!
//! Each block of the chain is rewritten in the coordinates (leader, ratios):
//! for consecutive indices `j, j+1` of a block the ratio `u_j = z_j / z_{j+1}`
//! replaces `z_{j+1}`, the constraint becomes `u_j = q`, and every residue is
//! taken of the form `f du_j / u_j` with the leader held fixed.

use alloc::vec::Vec;

use crate::error::{CensusError, Result};
use crate::frac::{Atom, FactoredRat};
use crate::monomial::{alpha, Monomial, Var, MAX_KERNEL_VARS, MAX_RATIO_VARS};
use crate::partition::Partition;
use crate::poly::SparsePoly;
use crate::rational::Rational;
use crate::zeta::check_genus;

fn zi(i: u32) -> Var {
    Var::Zi(i as u8)
}

fn q() -> Monomial {
    Monomial::var(Var::Q)
}

/// The chain data of a partition: one entry per nonempty block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSpec {
    pub n: u32,
    /// `(part size i, leader index 1 + r_{<i}, r_{<i}, block size r_i)`.
    pub blocks: Vec<ChainBlock>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainBlock {
    pub part: u32,
    pub leader: u32,
    pub below: u32,
    pub size: u32,
}

impl ChainSpec {
    pub fn new(lambda: &Partition) -> Self {
        let bp = lambda.block_profile();
        let blocks = bp
            .blocks()
            .into_iter()
            .map(|b| ChainBlock { part: b.part, leader: b.leader, below: bp.r_below(b.part as usize), size: b.size })
            .collect();
        ChainSpec { n: bp.n(), blocks }
    }

    /// Ratio variable indices `j` (for `u_j = z_j/z_{j+1}`), each block from
    /// the top of its chain down, blocks from last to first.
    pub fn default_order(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for b in self.blocks.iter().rev() {
            for j in (b.leader..b.leader + b.size - 1).rev() {
                out.push(j);
            }
        }
        out
    }

    pub fn constraint_count(&self) -> u32 {
        self.blocks.iter().map(|b| b.size - 1).sum()
    }
}

/// `ζ̃(x)/ζ̃(1/x) = q^{1-g} ∏(1 - α_k x)(1 - x/q) / ((1 - q x) ∏(1 - x/α_k))`.
pub fn tilde_ratio(g: usize, x: &Monomial) -> Result<FactoredRat> {
    let mut num = SparsePoly::binomial(&Rational::ONE, &q().inv().mul(x));
    let mut den = FactoredRat::inv_binomial(&Rational::ONE, &q().mul(x))?;
    for k in 1..=2 * g {
        num = num.mul(&SparsePoly::binomial(&Rational::ONE, &alpha(k).mul(x)));
        den = den.mul(&FactoredRat::inv_binomial(&Rational::ONE, &alpha(k).inv().mul(x))?);
    }
    Ok(den.mul_poly(&num).mul_monomial(&Rational::ONE, &Monomial::var_pow(Var::Q, 1 - g as i32)))
}

fn permutations(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (1..=n as u32).collect();
    fn heap(k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k.is_multiple_of(2) {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut cur, &mut out);
    out
}

/// One summand of the kernel for the sequence `seq = (σ(1), …, σ(n))`.
fn kernel_term(g: usize, seq: &[u32]) -> Result<FactoredRat> {
    let n = seq.len();
    let mut acc = FactoredRat::inv_binomial(&Rational::ONE, &Monomial::var(zi(seq[0])))?;
    for i in 0..n - 1 {
        let x = Monomial::from_pairs(&[(zi(seq[i + 1]), 1), (zi(seq[i]), -1)]);
        acc = acc.mul(&FactoredRat::inv_binomial(&Rational::ONE, &q().mul(&x))?);
    }
    // pairs appearing in decreasing index order contribute ζ̃(z_l/z_k)/ζ̃(z_k/z_l)
    for i in 0..n {
        for j in i + 1..n {
            if seq[i] > seq[j] {
                let x = Monomial::from_pairs(&[(zi(seq[i]), 1), (zi(seq[j]), -1)]);
                acc = acc.mul(&tilde_ratio(g, &x)?);
            }
        }
    }
    Ok(acc)
}

/// The kernel `L(z_n, …, z_1)` in the variables `z_1..z_n`, combined into a
/// single normalized fraction.
pub fn build_kernel(g: usize, n: u32) -> Result<FactoredRat> {
    check_genus(g)?;
    if n == 0 || n as usize > MAX_KERNEL_VARS {
        return Err(CensusError::InvalidInput(alloc::format!("kernel size {n} outside 1..={MAX_KERNEL_VARS}")));
    }
    let terms = kernel_terms(g, n)?;
    Ok(FactoredRat::sum(&terms))
}

/// The `n!` summands of the kernel, before combination.
pub fn kernel_terms(g: usize, n: u32) -> Result<Vec<FactoredRat>> {
    permutations(n as usize).iter().map(|s| kernel_term(g, s)).collect()
}

/// Residue of `f du/u` at the simple pole `u = c·m`, i.e. `((u - c m) f / u)` at `u = c m`.
///
/// Atoms vanishing identically on `u = c m` have the form `1 - y^b` with
/// `y = u/(c m)`; each behaves like `b (1 - y)` there. Numerator factors of
/// `1 - y` lower the pole order. Returns zero when no pole remains.
pub fn res_simple(f: &FactoredRat, u: Var, c: &Rational, m: &Monomial) -> Result<FactoredRat> {
    if c.is_zero() || m.mentions(u) {
        return Err(CensusError::InvalidInput("residue point must be a nonzero multiple of a u-free monomial".into()));
    }
    let vanishes = |a: &Atom| {
        let h = a.shape().exp(u);
        h != 0 && a.shape().without(u).mul(&m.pow(h)).is_one() && (a.constant() * &c.pow(h)).is_one()
    };
    let (rest, poles) = f.take_atoms(vanishes);
    let order: u32 = poles.iter().map(|(_, k)| k).sum();
    if order == 0 || f.is_zero() {
        return Ok(FactoredRat::zero());
    }
    // 1 - y = s·M·line
    let y = m.inv().mul(&Monomial::var(u));
    let split = Atom::factor(&c.recip(), &y);
    let line = &split.atoms[0];
    let mut num = rest.numerator().clone();
    let mut k = 0u32;
    while k < order {
        match num.div_binomial(line.constant(), line.shape()) {
            Some(qt) => {
                num = qt;
                k += 1;
            }
            None => break,
        }
    }
    if k == order {
        return Ok(FactoredRat::zero());
    }
    if order - k > 1 {
        return Err(CensusError::HigherOrderPole { var: u, order: order - k });
    }
    let mut scale = split.scalar.pow(-(k as i32));
    for (a, mult) in &poles {
        scale = &scale * &Rational::from_int(a.shape().exp(u) as i64).pow(-(*mult as i32));
    }
    let pre = rest.prefactor().mul(&split.mono.pow(-(k as i32)));
    let g = FactoredRat::from_parts(pre, num.scale(&-scale), rest.denominator().to_vec());
    g.substitute(u, c, m)
}

/// `f` rewritten in leader-and-ratio coordinates of `spec`.
pub fn to_ratio_coordinates(f: &FactoredRat, spec: &ChainSpec) -> Result<FactoredRat> {
    if spec.n as usize > MAX_RATIO_VARS + 1 {
        return Err(CensusError::InvalidInput("too many kernel variables for the ratio slots".into()));
    }
    let mut out = f.clone();
    for b in &spec.blocks {
        let lead = Monomial::var(zi(b.leader));
        let mut img = lead;
        for j in b.leader..b.leader + b.size - 1 {
            img = img.mul(&Monomial::var_pow(Var::U(j as u8), -1));
            out = out.substitute(zi(j + 1), &Rational::ONE, &img)?;
        }
    }
    Ok(out)
}

/// `H̃_λ` as a function of the block leaders, residues taken in the given
/// order of ratio indices (a permutation of [`ChainSpec::default_order`]).
pub fn h_tilde_with_order(g: usize, lambda: &Partition, order: &[u32]) -> Result<FactoredRat> {
    if lambda.is_empty() {
        return Err(CensusError::InvalidInput("the empty partition has no residue factor".into()));
    }
    let spec = ChainSpec::new(lambda);
    let mut want = spec.default_order();
    let mut got = order.to_vec();
    want.sort_unstable();
    got.sort_unstable();
    if want != got {
        return Err(CensusError::InvalidInput("residue order must list each chain ratio once".into()));
    }
    let terms = kernel_terms(g, spec.n)?;
    let kernel = FactoredRat::sum(&terms);
    let mut f = to_ratio_coordinates(&kernel, &spec)?;
    for &j in order {
        f = res_simple(&f, Var::U(j as u8), &Rational::ONE, &q())?;
    }
    Ok(f)
}

pub fn h_tilde(g: usize, lambda: &Partition) -> Result<FactoredRat> {
    let order = ChainSpec::new(lambda).default_order();
    h_tilde_with_order(g, lambda, &order)
}

/// `H_λ(z)`: each leader of block `i` replaced by `z^i q^{-r_{<i}}`; `H_∅ = 1`.
pub fn h_factor(g: usize, lambda: &Partition) -> Result<FactoredRat> {
    if lambda.is_empty() {
        return Ok(FactoredRat::one());
    }
    let spec = ChainSpec::new(lambda);
    let mut f = h_tilde(g, lambda)?;
    for b in &spec.blocks {
        let img = Monomial::from_pairs(&[(Var::Z, b.part as i32), (Var::Q, -(b.below as i32))]);
        f = f.substitute(zi(b.leader), &Rational::ONE, &img)?;
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::zeta_tilde;
    use num_complex::Complex64;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn permutations_are_complete() {
        let ps = permutations(4);
        assert_eq!(ps.len(), 24);
        let mut s = ps.clone();
        s.sort();
        s.dedup();
        assert_eq!(s.len(), 24);
    }

    #[test]
    fn tilde_ratio_matches_definition() {
        let x = Monomial::from_pairs(&[(Var::Zi(2), 1), (Var::Zi(1), -1)]);
        for g in 0..=2 {
            let r = tilde_ratio(g, &x).unwrap();
            let a = zeta_tilde(g, &Rational::ONE, &x).unwrap();
            let b = zeta_tilde(g, &Rational::ONE, &x.inv()).unwrap();
            let mut pt = [None; crate::monomial::NVARS];
            pt[Var::Q.slot()] = Some(Complex64::new(2.3, 0.4));
            pt[Var::Zi(1).slot()] = Some(Complex64::new(0.3, -0.8));
            pt[Var::Zi(2).slot()] = Some(Complex64::new(1.1, 0.2));
            for i in 1..=g {
                pt[Var::A(i as u8).slot()] = Some(Complex64::new(0.5 + i as f64, -0.3));
            }
            let lhs = r.eval(&pt).unwrap();
            let rhs = a.eval(&pt).unwrap() / b.eval(&pt).unwrap();
            assert!((lhs - rhs).norm() < 1e-10 * rhs.norm(), "g={g}");
        }
    }

    #[test]
    fn res_simple_examples() {
        let u = Monomial::var(Var::U(1));
        let f = FactoredRat::inv_binomial(&Rational::ONE, &u).unwrap();
        let r = res_simple(&f, Var::U(1), &Rational::ONE, &Monomial::ONE).unwrap();
        assert_eq!(r.as_constant(), Some(Rational::from_int(-1)));
        let reg = FactoredRat::binomial(&Rational::ONE, &u);
        assert!(res_simple(&reg, Var::U(1), &Rational::ONE, &Monomial::ONE).unwrap().is_zero());
        let f = FactoredRat::inv_binomial(&Rational::ONE, &q().mul(&u)).unwrap();
        let r = res_simple(&f, Var::U(1), &Rational::ONE, &q().inv()).unwrap();
        assert_eq!(r.as_constant(), Some(Rational::from_int(-1)));
        let sq = f.mul(&f);
        let err = res_simple(&sq, Var::U(1), &Rational::ONE, &q().inv()).unwrap_err();
        assert_eq!(err.name(), "HigherOrderPole");
        // (1 - q u) / (1 - q u)^2 after cancellation is a simple pole
        let mixed = sq.mul(&FactoredRat::binomial(&Rational::ONE, &q().mul(&u)));
        assert!(res_simple(&mixed, Var::U(1), &Rational::ONE, &q().inv()).is_ok());
    }

    #[test]
    fn res_simple_cubic_atom() {
        // 1/(1 - u^3) at u = 1: ((u-1)/(u(1-u^3))) → -1/3
        let u3 = Monomial::var_pow(Var::U(1), 3);
        let f = FactoredRat::inv_binomial(&Rational::ONE, &u3).unwrap();
        let r = res_simple(&f, Var::U(1), &Rational::ONE, &Monomial::ONE).unwrap();
        assert_eq!(r.as_constant(), Some(Rational::new(-1, 3)));
    }

    #[test]
    fn small_kernels() {
        let k1 = build_kernel(1, 1).unwrap();
        assert_eq!(k1, FactoredRat::inv_binomial(&Rational::ONE, &Monomial::var(Var::Zi(1))).unwrap());
        assert_eq!(k1.denominator().len(), 1);
    }

    /// The kernel straight from its definition, evaluated numerically.
    fn kernel_numeric(g: usize, zs: &[Complex64], pt: &[Option<Complex64>; crate::monomial::NVARS]) -> Complex64 {
        let n = zs.len();
        let mut pt = *pt;
        let zt = |x: Complex64, pt: &mut [Option<Complex64>; crate::monomial::NVARS]| {
            pt[Var::Z.slot()] = Some(x);
            zeta_tilde(g, &Rational::ONE, &Monomial::var(Var::Z)).unwrap().eval(pt).unwrap()
        };
        let qv = pt[Var::Q.slot()].unwrap();
        let one = Complex64::new(1.0, 0.0);
        let mut base = one;
        for i in 0..n {
            for j in i + 1..n {
                base *= zt(zs[i] / zs[j], &mut pt);
            }
        }
        let mut total = Complex64::new(0.0, 0.0);
        for s in permutations(n) {
            let w: Vec<Complex64> = s.iter().map(|&k| zs[k as usize - 1]).collect();
            let mut t = one / (one - w[0]);
            for i in 0..n - 1 {
                t /= one - qv * w[i + 1] / w[i];
            }
            for i in 0..n {
                for j in i + 1..n {
                    t *= zt(w[i] / w[j], &mut pt);
                }
            }
            total += t;
        }
        total / base
    }

    #[test]
    fn kernel_matches_definition() {
        for g in 0..=2 {
            for n in 1..=3u32 {
                let k = build_kernel(g, n).unwrap();
                let mut pt = [None; crate::monomial::NVARS];
                pt[Var::Q.slot()] = Some(Complex64::new(1.7, 0.3));
                for i in 1..=g {
                    pt[Var::A(i as u8).slot()] = Some(Complex64::new(0.4 * i as f64, 0.9));
                }
                let zs: Vec<Complex64> = (0..n).map(|i| Complex64::new(0.3 + 0.25 * i as f64, 0.5 - 0.4 * i as f64)).collect();
                for (i, z) in zs.iter().enumerate() {
                    pt[Var::Zi(i as u8 + 1).slot()] = Some(*z);
                }
                let want = kernel_numeric(g, &zs, &pt);
                let got = k.eval(&pt).unwrap();
                assert!((got - want).norm() < 1e-9 * want.norm(), "g={g} n={n}");
            }
        }
    }

    #[test]
    fn single_part_factors() {
        for g in 0..=2 {
            let z = Monomial::var(Var::Z);
            assert_eq!(h_factor(g, &p(&[1])).unwrap(), FactoredRat::inv_binomial(&Rational::ONE, &z).unwrap());
            let h2 = h_factor(g, &p(&[2])).unwrap();
            assert!(h2.same_value(&FactoredRat::inv_binomial(&Rational::ONE, &z.pow(2)).unwrap()));
            assert!(h_factor(g, &Partition::empty()).unwrap().is_one());
        }
    }

    #[test]
    fn genus_zero_pair_factor() {
        // H_(1,1) = (q - 1)/((z - q)(z - 1)) at g = 0
        let h = h_factor(0, &p(&[1, 1])).unwrap();
        let z = Monomial::var(Var::Z);
        let want = FactoredRat::from_poly(SparsePoly::from_terms([(q(), Rational::ONE), (Monomial::ONE, Rational::from_int(-1))]))
            .mul(&FactoredRat::inv_binomial(&Rational::ONE, &z).unwrap())
            .mul(&FactoredRat::inv_binomial(&Rational::ONE, &q().inv().mul(&z)).unwrap())
            .mul_monomial(&Rational::ONE, &q().inv());
        assert!(h.same_value(&want), "{h}");
    }
}
