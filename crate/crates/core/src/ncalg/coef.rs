use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use super::Scalar;
use crate::error::{Error, Result};

/// Ring of coefficients an [`NCPoly`](super::NCPoly) may carry.
///
/// Both implementations are commutative. `aux_dim` is the number of
/// `t`-variables (equal to the number of `ε`-variables) the value lives over,
/// always 0 for plain scalars.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_aux(aux: usize) -> Self;
    fn one_aux(aux: usize) -> Self;
    fn from_scalar(s: Scalar, aux: usize) -> Self;
    fn vanishes(&self) -> bool;
    fn aux_dim(&self) -> usize;
    fn add_assign_ref(&mut self, rhs: &Self);
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale(&self, s: &Scalar) -> Self;
}

impl Coefficient for Scalar {
    fn zero_aux(_aux: usize) -> Self {
        Scalar::zero()
    }
    fn one_aux(_aux: usize) -> Self {
        Scalar::one()
    }
    fn from_scalar(s: Scalar, _aux: usize) -> Self {
        s
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn aux_dim(&self) -> usize {
        0
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }
}

/// Commutative polynomial in `t_1..t_k, ε_1..ε_k` with rational coefficients.
///
/// Monomials are exponent vectors of length `2k`: the `t` exponents followed
/// by the `ε` exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefPoly {
    k: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl CoefPoly {
    pub fn zero(k: usize) -> CoefPoly {
        CoefPoly {
            k,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar, k: usize) -> CoefPoly {
        let mut p = CoefPoly::zero(k);
        if !c.is_zero() {
            p.terms.insert(vec![0; 2 * k], c);
        }
        p
    }

    /// The variable `t_i`, `1 ≤ i ≤ k`.
    pub fn t(i: usize, k: usize) -> CoefPoly {
        assert!((1..=k).contains(&i), "t_{i} out of range for k = {k}");
        let mut e = vec![0; 2 * k];
        e[i - 1] = 1;
        CoefPoly {
            k,
            terms: BTreeMap::from([(e, Scalar::one())]),
        }
    }

    /// The variable `ε_i`, `1 ≤ i ≤ k`.
    pub fn eps(i: usize, k: usize) -> CoefPoly {
        assert!((1..=k).contains(&i), "ε_{i} out of range for k = {k}");
        let mut e = vec![0; 2 * k];
        e[k + i - 1] = 1;
        CoefPoly {
            k,
            terms: BTreeMap::from([(e, Scalar::one())]),
        }
    }

    /// Monomial with explicit `t` and `ε` exponents.
    pub fn monomial(c: Scalar, t_exp: &[u32], eps_exp: &[u32]) -> CoefPoly {
        assert_eq!(t_exp.len(), eps_exp.len());
        let k = t_exp.len();
        let mut p = CoefPoly::zero(k);
        if !c.is_zero() {
            let mut e = t_exp.to_vec();
            e.extend_from_slice(eps_exp);
            p.terms.insert(e, c);
        }
        p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates `(t exponents, ε exponents, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &[u32], &Scalar)> {
        self.terms
            .iter()
            .map(move |(e, c)| (&e[..self.k], &e[self.k..], c))
    }

    pub fn has_eps(&self) -> bool {
        self.terms
            .keys()
            .any(|e| e[self.k..].iter().any(|&x| x > 0))
    }

    /// Coefficient of `ε_1 ε_2 ⋯ ε_k`; the `t` dependence is kept.
    pub fn eps_coefficient(&self) -> CoefPoly {
        let k = self.k;
        let mut out = CoefPoly::zero(k);
        for (e, c) in &self.terms {
            if e[k..].iter().all(|&x| x == 1) {
                let mut key = e.clone();
                key[k..].iter_mut().for_each(|x| *x = 0);
                out.terms.insert(key, c.clone());
            }
        }
        out
    }

    /// Integral over the standard simplex `t_i ≥ 0, Σ t_i ≤ 1`, using
    /// `∫ ∏ t_i^{a_i} dt = ∏ a_i! / (k + Σ a_i)!`.
    pub fn integrate_simplex(&self) -> Result<Scalar> {
        if self.has_eps() {
            return Err(Error::ResidualEpsilon);
        }
        let mut total = Scalar::zero();
        for (e, c) in &self.terms {
            total += c * simplex_monomial_integral(&e[..self.k]);
        }
        Ok(total)
    }

    /// Drops every monomial in which some `ε_i` has exponent above 1.
    pub(crate) fn retain_eps_multilinear(&mut self) {
        let k = self.k;
        self.terms.retain(|e, _| e[k..].iter().all(|&x| x <= 1));
    }

    /// Returns the scalar value when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }
}

fn factorial(n: u32) -> num::BigInt {
    (1..=n).fold(num::BigInt::one(), |acc, i| acc * i)
}

/// `∏ a_i! / (k + Σ a_i)!` for a `t`-exponent vector of length `k`.
pub fn simplex_monomial_integral(exponents: &[u32]) -> Scalar {
    let k = exponents.len() as u32;
    let num = exponents
        .iter()
        .fold(num::BigInt::one(), |acc, &a| acc * factorial(a));
    let den = factorial(k + exponents.iter().sum::<u32>());
    Scalar::new(num, den)
}

impl Coefficient for CoefPoly {
    fn zero_aux(aux: usize) -> Self {
        CoefPoly::zero(aux)
    }
    fn one_aux(aux: usize) -> Self {
        CoefPoly::constant(Scalar::one(), aux)
    }
    fn from_scalar(s: Scalar, aux: usize) -> Self {
        CoefPoly::constant(s, aux)
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
    fn aux_dim(&self) -> usize {
        self.k
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        assert_eq!(self.k, rhs.k, "auxiliary dimension mismatch");
        for (e, c) in &rhs.terms {
            add_into(&mut self.terms, e, c);
        }
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        assert_eq!(self.k, rhs.k, "auxiliary dimension mismatch");
        let mut out = CoefPoly::zero(self.k);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                add_into(&mut out.terms, &e, &(ca * cb));
            }
        }
        out
    }
    fn neg_ref(&self) -> Self {
        CoefPoly {
            k: self.k,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
    fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return CoefPoly::zero(self.k);
        }
        CoefPoly {
            k: self.k,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }
}

fn add_into(terms: &mut BTreeMap<Vec<u32>, Scalar>, e: &[u32], c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(e) {
        Some(existing) => {
            *existing += c;
            if existing.is_zero() {
                terms.remove(e);
            }
        }
        None => {
            terms.insert(e.to_vec(), c.clone());
        }
    }
}

impl fmt::Display for CoefPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if idx > 0 {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            for (i, &a) in e.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let name = if i < self.k {
                    format!("t{}", i + 1)
                } else {
                    format!("e{}", i - self.k + 1)
                };
                factors.push(if a == 1 { name } else { format!("{name}^{a}") });
            }
            if factors.is_empty() || !abs.is_one() {
                factors.insert(0, abs.to_string());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
