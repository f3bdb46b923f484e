use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::One;

use super::{CoefPoly, Coefficient, Letter, ParamId, Scalar, Word};
use crate::error::{Error, Result};

/// A finite linear combination of words, tagged with its arity `n`.
///
/// No zero coefficient is ever stored; iteration follows the canonical word
/// order. Active letters are always within `1..=arity`.
#[derive(Clone, Debug, PartialEq)]
pub struct NCPoly<C: Coefficient = Scalar> {
    arity: usize,
    aux: usize,
    terms: BTreeMap<Word, C>,
}

/// Polynomial with rational coefficients.
pub type Poly = NCPoly<Scalar>;

/// Polynomial whose coefficients depend on auxiliary `t`, `ε` variables.
pub type AuxPoly = NCPoly<CoefPoly>;

impl<C: Coefficient> NCPoly<C> {
    pub fn zero(arity: usize) -> Self {
        Self::zero_aux(arity, 0)
    }

    pub fn zero_aux(arity: usize, aux: usize) -> Self {
        NCPoly {
            arity,
            aux,
            terms: BTreeMap::new(),
        }
    }

    pub fn one_aux(arity: usize, aux: usize) -> Self {
        let mut p = Self::zero_aux(arity, aux);
        p.terms.insert(Word::empty(), C::one_aux(aux));
        p
    }

    /// `coef · word`, validating the word against the arity.
    pub fn monomial(arity: usize, word: Word, coef: C) -> Result<Self> {
        check_word(&word, arity)?;
        let mut p = Self::zero_aux(arity, coef.aux_dim());
        p.add_term(word, coef);
        Ok(p)
    }

    pub fn from_terms<I>(arity: usize, aux: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, C)>,
    {
        let mut p = Self::zero_aux(arity, aux);
        for (w, c) in terms {
            check_word(&w, arity)?;
            if c.aux_dim() != aux {
                return Err(Error::AuxMismatch {
                    left: aux,
                    right: c.aux_dim(),
                });
            }
            p.add_term(w, c);
        }
        Ok(p)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn aux_dim(&self) -> usize {
        self.aux
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same as [`is_zero`](Self::is_zero).
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Option<&C> {
        self.terms.get(w)
    }

    /// Adds `coef · word` in place, without arity validation.
    pub(crate) fn add_term(&mut self, word: Word, coef: C) {
        if coef.vanishes() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&coef);
                if e.get().vanishes() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(coef);
            }
        }
    }

    pub(crate) fn add_term_ref(&mut self, word: &Word, coef: &C) {
        if coef.vanishes() {
            return;
        }
        if let Some(existing) = self.terms.get_mut(word) {
            existing.add_assign_ref(coef);
            if existing.vanishes() {
                self.terms.remove(word);
            }
        } else {
            self.terms.insert(word.clone(), coef.clone());
        }
    }

    /// Same terms viewed in a different arity.
    pub fn with_arity(&self, arity: usize) -> Result<Self> {
        for w in self.terms.keys() {
            check_word(w, arity)?;
        }
        Ok(NCPoly {
            arity,
            aux: self.aux,
            terms: self.terms.clone(),
        })
    }

    pub fn max_param(&self) -> Option<ParamId> {
        self.terms.keys().filter_map(Word::max_param).max()
    }

    pub fn has_params(&self) -> bool {
        self.terms.keys().any(Word::has_params)
    }

    pub fn contains_letter(&self, letter: Letter) -> bool {
        self.terms.keys().any(|w| w.letters().contains(&letter))
    }

    /// Highest word degree present, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::degree)
    }

    /// `Some(d)` when every term has degree `d` (the zero polynomial is homogeneous of any degree).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let first = self.terms.keys().next()?.degree();
        (self.degree() == Some(first)).then_some(first)
    }

    pub fn homogeneous_component(&self, d: usize) -> Self {
        self.filter(|w| w.degree() == d)
    }

    /// Distinct degrees of the stored terms, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.terms.keys().map(Word::degree).collect();
        out.dedup();
        out
    }

    /// Terms of degree at most `max_degree`.
    pub fn truncate(&self, max_degree: usize) -> Self {
        self.filter(|w| w.degree() <= max_degree)
    }

    pub fn filter(&self, keep: impl Fn(&Word) -> bool) -> Self {
        NCPoly {
            arity: self.arity,
            aux: self.aux,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Words in which every active letter `1..=n` occurs exactly once, with no parameters.
    pub fn multilinear_part(&self) -> Self {
        let n = self.arity;
        self.filter(|w| w.is_multilinear(n))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Self::zero_aux(self.arity, self.aux);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.scale(s));
        }
        out
    }

    /// Multiplies every coefficient by a ring element.
    pub fn scale_coef(&self, s: &C) -> Self {
        let mut out = Self::zero_aux(self.arity, self.aux);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.mul_ref(s));
        }
        out
    }

    /// The associative product; coefficients multiply commutatively.
    pub fn nc_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero_aux(self.arity, self.aux);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                out.add_term(wa.concat(wb), ca.mul_ref(cb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one_aux(self.arity, self.aux);
        for _ in 0..k {
            acc = acc.nc_mul(self).expect("same arity");
        }
        acc
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term_ref(w, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        if self.aux != other.aux {
            return Err(Error::AuxMismatch {
                left: self.aux,
                right: other.aux,
            });
        }
        Ok(())
    }
}

impl Poly {
    pub fn one(arity: usize) -> Poly {
        Self::one_aux(arity, 0)
    }

    pub fn constant(arity: usize, c: Scalar) -> Poly {
        let mut p = Poly::zero(arity);
        p.add_term(Word::empty(), c);
        p
    }

    /// The generator `x_i` in arity `arity`.
    pub fn generator(arity: usize, i: u32) -> Result<Poly> {
        Poly::monomial(arity, Word::new(vec![Letter::Active(i)]), Scalar::one())
    }

    pub fn letter(arity: usize, letter: Letter) -> Result<Poly> {
        Poly::monomial(arity, Word::new(vec![letter]), Scalar::one())
    }

    pub fn word(arity: usize, word: Word) -> Result<Poly> {
        Poly::monomial(arity, word, Scalar::one())
    }

    /// Embeds into the auxiliary-coefficient ring of dimension `k`.
    pub fn lift(&self, k: usize) -> AuxPoly {
        let mut out = AuxPoly::zero_aux(self.arity, k);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), CoefPoly::constant(c.clone(), k));
        }
        out
    }

    /// Coefficient of `w`, zero when absent.
    pub fn coefficient_or_zero(&self, w: &Word) -> Scalar {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| Scalar::from_integer(0.into()))
    }
}

impl AuxPoly {
    /// Coefficient of `ε_1 ⋯ ε_k` in every term; terms may still depend on `t`.
    pub fn eps_coefficient(&self) -> AuxPoly {
        let mut out = AuxPoly::zero_aux(self.arity, self.aux);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.eps_coefficient());
        }
        out
    }

    /// Integrates every coefficient over the standard simplex `Δ_k`.
    pub fn simplex_integrate(&self) -> Result<Poly> {
        let mut out = Poly::zero(self.arity);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.integrate_simplex()?);
        }
        Ok(out)
    }

    pub(crate) fn retain_eps_multilinear(&mut self) {
        for c in self.terms.values_mut() {
            c.retain_eps_multilinear();
        }
        self.terms.retain(|_, c| !Coefficient::vanishes(c));
    }
}

pub(crate) fn check_word(w: &Word, arity: usize) -> Result<()> {
    for l in w.letters() {
        if let Letter::Active(i) = *l {
            if i == 0 || i as usize > arity {
                return Err(Error::LetterOutOfRange {
                    letter: l.to_string(),
                    arity,
                });
            }
        }
    }
    Ok(())
}

impl<C: Coefficient> Neg for &NCPoly<C> {
    type Output = NCPoly<C>;
    fn neg(self) -> NCPoly<C> {
        NCPoly {
            arity: self.arity,
            aux: self.aux,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg_ref()))
                .collect(),
        }
    }
}

impl<C: Coefficient> Neg for NCPoly<C> {
    type Output = NCPoly<C>;
    fn neg(self) -> NCPoly<C> {
        -&self
    }
}

impl<C: Coefficient> AddAssign<&NCPoly<C>> for NCPoly<C> {
    /// Panics when arities differ.
    fn add_assign(&mut self, rhs: &NCPoly<C>) {
        assert_eq!(self.arity, rhs.arity, "arity mismatch in addition");
        for (w, c) in &rhs.terms {
            self.add_term_ref(w, c);
        }
    }
}

impl<C: Coefficient> SubAssign<&NCPoly<C>> for NCPoly<C> {
    fn sub_assign(&mut self, rhs: &NCPoly<C>) {
        assert_eq!(self.arity, rhs.arity, "arity mismatch in subtraction");
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c.neg_ref());
        }
    }
}

impl<C: Coefficient> Add for &NCPoly<C> {
    type Output = NCPoly<C>;
    fn add(self, rhs: &NCPoly<C>) -> NCPoly<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<C: Coefficient> Sub for &NCPoly<C> {
    type Output = NCPoly<C>;
    fn sub(self, rhs: &NCPoly<C>) -> NCPoly<C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<C: Coefficient> Add for NCPoly<C> {
    type Output = NCPoly<C>;
    fn add(mut self, rhs: NCPoly<C>) -> NCPoly<C> {
        self += &rhs;
        self
    }
}

impl<C: Coefficient> Sub for NCPoly<C> {
    type Output = NCPoly<C>;
    fn sub(mut self, rhs: NCPoly<C>) -> NCPoly<C> {
        self -= &rhs;
        self
    }
}

impl<C: Coefficient> Mul for &NCPoly<C> {
    type Output = NCPoly<C>;
    /// Panics when arities or auxiliary dimensions differ; see [`NCPoly::nc_mul`].
    fn mul(self, rhs: &NCPoly<C>) -> NCPoly<C> {
        self.nc_mul(rhs).expect("incompatible operands in product")
    }
}
