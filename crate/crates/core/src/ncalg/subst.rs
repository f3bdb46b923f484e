use std::collections::BTreeMap;

use super::poly::check_word;
use super::{Coefficient, Letter, NCPoly, ParamId, Scalar, Word};
use crate::error::{Error, Result};

/// Image of one letter: a linear combination of letters.
pub type LetterImage<C> = Vec<(C, Letter)>;

/// An algebra homomorphism given by linear images of the active letters.
///
/// Parameters map to themselves unless explicitly rebound with
/// [`LinearSubstitution::bind_param`]. Every image has word degree 1 or is
/// zero, so word degree is preserved term by term.
#[derive(Clone, Debug)]
pub struct LinearSubstitution<C: Coefficient = Scalar> {
    source_arity: usize,
    target_arity: usize,
    aux: usize,
    images: Vec<LetterImage<C>>,
    param_images: BTreeMap<ParamId, LetterImage<C>>,
}

impl<C: Coefficient> LinearSubstitution<C> {
    /// `images[i]` is the image of `x_{i+1}`.
    pub fn new(target_arity: usize, aux: usize, images: Vec<LetterImage<C>>) -> Result<Self> {
        for img in &images {
            check_image(img, target_arity, aux)?;
        }
        Ok(LinearSubstitution {
            source_arity: images.len(),
            target_arity,
            aux,
            images: images
                .into_iter()
                .map(|img| img.into_iter().filter(|(c, _)| !c.vanishes()).collect())
                .collect(),
            param_images: BTreeMap::new(),
        })
    }

    /// Rebinds parameter `p` to a linear combination of target letters.
    pub fn bind_param(mut self, p: ParamId, image: LetterImage<C>) -> Result<Self> {
        check_image(&image, self.target_arity, self.aux)?;
        self.param_images.insert(
            p,
            image.into_iter().filter(|(c, _)| !c.vanishes()).collect(),
        );
        Ok(self)
    }

    pub fn source_arity(&self) -> usize {
        self.source_arity
    }

    pub fn target_arity(&self) -> usize {
        self.target_arity
    }

    fn image(&self, l: Letter) -> Option<&[(C, Letter)]> {
        match l {
            Letter::Active(i) => Some(&self.images[i as usize - 1]),
            Letter::Param(p) => self.param_images.get(&p).map(Vec::as_slice),
        }
    }

    /// Applies the homomorphism.
    pub fn apply(&self, f: &NCPoly<C>) -> Result<NCPoly<C>> {
        if f.arity() != self.source_arity {
            return Err(Error::ArityMismatch {
                expected: self.source_arity,
                found: f.arity(),
            });
        }
        if f.aux_dim() != self.aux {
            return Err(Error::AuxMismatch {
                left: self.aux,
                right: f.aux_dim(),
            });
        }
        let one = C::one_aux(self.aux);
        let mut out = NCPoly::zero_aux(self.target_arity, self.aux);
        for (word, coef) in f.terms() {
            let mut partial: BTreeMap<Word, C> = BTreeMap::from([(Word::empty(), coef.clone())]);
            for &letter in word.letters() {
                let identity = [(one.clone(), letter)];
                let img = self.image(letter).unwrap_or(&identity);
                if img.is_empty() {
                    partial.clear();
                    break;
                }
                let mut next: BTreeMap<Word, C> = BTreeMap::new();
                for (pw, pc) in &partial {
                    for (ic, il) in img {
                        let mut w = pw.clone();
                        w.push(*il);
                        let c = pc.mul_ref(ic);
                        match next.get_mut(&w) {
                            Some(e) => e.add_assign_ref(&c),
                            None => {
                                next.insert(w, c);
                            }
                        }
                    }
                }
                next.retain(|_, c| !c.vanishes());
                partial = next;
            }
            for (w, c) in partial {
                out.add_term(w, c);
            }
        }
        Ok(out)
    }
}

fn check_image<C: Coefficient>(img: &[(C, Letter)], arity: usize, aux: usize) -> Result<()> {
    for (c, l) in img {
        if c.aux_dim() != aux {
            return Err(Error::AuxMismatch {
                left: aux,
                right: c.aux_dim(),
            });
        }
        check_word(&Word::new(vec![*l]), arity)?;
    }
    Ok(())
}

/// `σ(f)` for a linear substitution `σ`.
pub fn substitute<C: Coefficient>(
    f: &NCPoly<C>,
    sigma: &LinearSubstitution<C>,
) -> Result<NCPoly<C>> {
    sigma.apply(f)
}

/// Rational linear combination of active letters, e.g. `lin(&[(1, 2), (-1, 1)])` is `x_2 − x_1`.
pub fn lin(terms: &[(i64, u32)]) -> LetterImage<Scalar> {
    terms
        .iter()
        .map(|&(c, i)| (Scalar::from_integer(c.into()), Letter::Active(i)))
        .collect()
}
