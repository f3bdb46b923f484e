//! The free Lie algebra `L_n ⊂ T_n`: brackets, the Dynkin–Specht–Wever
//! membership test and Lyndon bases with exact coordinates.

use std::collections::HashMap;

use num::Zero;

use crate::error::{Error, Result};
use crate::ncalg::{Letter, Poly, Scalar, Word};

/// `[a, b] = ab − ba`.
pub fn bracket_expand(a: &Poly, b: &Poly) -> Result<Poly> {
    Ok(&a.nc_mul(b)? - &b.nc_mul(a)?)
}

fn left_normed(arity: usize, w: &Word) -> Poly {
    let mut letters = w.letters().iter();
    let first = letters.next().expect("degree ≥ 1");
    let mut acc = Poly::word(arity, Word::new(vec![*first])).expect("letter in range");
    for l in letters {
        let x = Poly::word(arity, Word::new(vec![*l])).expect("letter in range");
        acc = &(&acc * &x) - &(&x * &acc);
    }
    acc
}

/// Linear extension of `x_{i_1} ⋯ x_{i_d} ↦ [[..[x_{i_1}, x_{i_2}], ..], x_{i_d}]`.
///
/// The zero polynomial maps to zero.
pub fn dynkin_map(f: &Poly) -> Result<Poly> {
    if f.is_zero() {
        return Ok(f.clone());
    }
    let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    if d == 0 {
        return Err(Error::DegreeZero);
    }
    let mut out = Poly::zero(f.arity());
    for (w, c) in f.terms() {
        out += &left_normed(f.arity(), w).scale(c);
    }
    Ok(out)
}

/// Dynkin–Specht–Wever: every component `f_d` with `d ≥ 1` satisfies
/// `dynkin_map(f_d) = d·f_d`, and the constant part vanishes.
pub fn is_lie(f: &Poly) -> bool {
    f.degrees().into_iter().all(|d| {
        if d == 0 {
            return false;
        }
        let part = f.homogeneous_component(d);
        dynkin_map(&part).expect("homogeneous, d ≥ 1")
            == part.scale(&Scalar::from_integer(d.into()))
    })
}

/// True when `w` is strictly smaller than each of its proper suffixes.
pub fn is_lyndon(w: &Word) -> bool {
    let l = w.letters();
    !l.is_empty() && (1..l.len()).all(|i| l < &l[i..])
}

/// Dimension of the degree-`d` part of the free Lie algebra on `n` generators.
pub fn witt_dimension(n: usize, d: usize) -> usize {
    if d == 0 {
        return 0;
    }
    let total: i128 = (1..=d)
        .filter(|e| d.is_multiple_of(*e))
        .map(|e| mobius(d / e) as i128 * (n as i128).pow(e as u32))
        .sum();
    (total / d as i128) as usize
}

fn mobius(mut m: usize) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if m > 1 {
        result = -result;
    }
    result
}

/// Lyndon words of length `d` over `x_1..x_n` with their standard bracketings.
#[derive(Clone, Debug)]
pub struct LyndonBasis {
    pub n: usize,
    pub d: usize,
    pub words: Vec<Word>,
    pub elements: Vec<Poly>,
}

impl LyndonBasis {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// `Σ c_i b_i`.
    pub fn combine(&self, coords: &[Scalar]) -> Poly {
        let mut out = Poly::zero(self.n);
        for (c, b) in coords.iter().zip(&self.elements) {
            if !c.is_zero() {
                out += &b.scale(c);
            }
        }
        out
    }
}

/// Lyndon words of every length up to `d`, in lexicographic order (Duval).
fn lyndon_words_up_to(n: usize, d: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if n == 0 || d == 0 {
        return out;
    }
    let mut w: Vec<u32> = vec![1];
    while !w.is_empty() {
        out.push(w.clone());
        let m = w.len();
        while w.len() < d {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&(n as u32)) {
            w.pop();
        }
        if let Some(last) = w.last_mut() {
            *last += 1;
        }
    }
    out
}

fn standard_bracketing(arity: usize, w: &[u32], memo: &mut HashMap<Vec<u32>, Poly>) -> Poly {
    if let Some(p) = memo.get(w) {
        return p.clone();
    }
    let p = if w.len() == 1 {
        Poly::generator(arity, w[0]).expect("letter in range")
    } else {
        // longest proper Lyndon suffix
        let split = (1..w.len())
            .find(|&i| is_lyndon(&Word::from_indices(&w[i..])))
            .expect("a single letter is Lyndon");
        let left = standard_bracketing(arity, &w[..split], memo);
        let right = standard_bracketing(arity, &w[split..], memo);
        &(&left * &right) - &(&right * &left)
    };
    memo.insert(w.to_vec(), p.clone());
    p
}

pub fn lyndon_basis(n: usize, d: usize) -> LyndonBasis {
    let mut memo = HashMap::new();
    let mut words = Vec::new();
    let mut elements = Vec::new();
    for w in lyndon_words_up_to(n, d)
        .into_iter()
        .filter(|w| w.len() == d)
    {
        elements.push(standard_bracketing(n, &w, &mut memo));
        words.push(Word::from_indices(&w));
    }
    LyndonBasis {
        n,
        d,
        words,
        elements,
    }
}

/// Coordinates of a Lie element in a Lyndon basis.
///
/// Each standard bracketing is its Lyndon word plus strictly larger words,
/// so the coefficients are read off in increasing word order.
pub fn lie_coordinates(f: &Poly, basis: &LyndonBasis) -> Result<Vec<Scalar>> {
    let degree = f.homogeneous_degree().unwrap_or(basis.d);
    if f.arity() != basis.n || degree != basis.d {
        return Err(Error::BasisMismatch {
            basis_n: basis.n,
            basis_d: basis.d,
            n: f.arity(),
            d: degree,
        });
    }
    if f.terms()
        .any(|(w, _)| w.letters().iter().any(|l| matches!(l, Letter::Param(_))))
    {
        return Err(Error::NotLie);
    }
    let mut rest = f.clone();
    let mut coords = Vec::with_capacity(basis.len());
    for (w, b) in basis.words.iter().zip(&basis.elements) {
        let c = rest.coefficient_or_zero(w);
        if !c.is_zero() {
            rest -= &b.scale(&c);
        }
        coords.push(c);
    }
    if rest.is_zero() {
        Ok(coords)
    } else {
        Err(Error::NotLie)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::qi;

    fn x(n: usize, i: u32) -> Poly {
        Poly::generator(n, i).unwrap()
    }

    fn br(a: &Poly, b: &Poly) -> Poly {
        bracket_expand(a, b).unwrap()
    }

    fn w(n: usize, idx: &[u32]) -> Poly {
        Poly::word(n, Word::from_indices(idx)).unwrap()
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(br(&x(2, 1), &x(2, 2)), &w(2, &[1, 2]) - &w(2, &[2, 1]));
        assert!(br(&x(2, 1), &x(2, 1)).is_zero());
        let expected = &(&w(2, &[1, 1, 2]) - &w(2, &[1, 2, 1]).scale(&qi(2))) + &w(2, &[2, 1, 1]);
        assert_eq!(br(&x(2, 1), &br(&x(2, 1), &x(2, 2))), expected);
        assert!(bracket_expand(&x(2, 1), &x(3, 1)).is_err());
    }

    #[test]
    fn dynkin_examples() {
        assert_eq!(dynkin_map(&x(1, 1)).unwrap(), x(1, 1));
        let c = br(&x(2, 1), &x(2, 2));
        assert_eq!(dynkin_map(&w(2, &[1, 2])).unwrap(), c);
        assert_eq!(dynkin_map(&c).unwrap(), c.scale(&qi(2)));
        assert_eq!(
            dynkin_map(&(&x(2, 1) + &w(2, &[1, 2]))),
            Err(Error::NotHomogeneous)
        );
        assert_eq!(dynkin_map(&Poly::one(2)), Err(Error::DegreeZero));
    }

    #[test]
    fn membership_examples() {
        let c = br(&x(2, 1), &x(2, 2));
        assert!(is_lie(&c));
        assert!(!is_lie(&w(2, &[1, 2])));
        assert!(is_lie(&(&x(2, 1) + &c)));
        assert!(!is_lie(&Poly::one(1)));
        assert!(is_lie(&Poly::zero(2)));
    }

    #[test]
    fn lyndon_examples() {
        let b = lyndon_basis(2, 2);
        assert_eq!(b.words, vec![Word::from_indices(&[1, 2])]);
        assert_eq!(b.elements, vec![br(&x(2, 1), &x(2, 2))]);
        let b3 = lyndon_basis(2, 3);
        assert_eq!(
            b3.words,
            vec![
                Word::from_indices(&[1, 1, 2]),
                Word::from_indices(&[1, 2, 2])
            ]
        );
        assert!(lyndon_basis(1, 2).is_empty());
        assert_eq!(lyndon_basis(1, 1).len(), 1);
    }

    #[test]
    fn witt_numbers() {
        assert_eq!(witt_dimension(2, 2), 1);
        assert_eq!(witt_dimension(2, 3), 2);
        assert_eq!(witt_dimension(3, 4), 18);
        assert_eq!(witt_dimension(5, 5), 624);
        for n in 1..=4 {
            for d in 1..=6 {
                assert_eq!(
                    lyndon_basis(n, d).len(),
                    witt_dimension(n, d),
                    "n={n} d={d}"
                );
            }
        }
    }

    #[test]
    fn leading_word_is_lyndon_word() {
        for n in 1..=3 {
            for d in 1..=5 {
                let b = lyndon_basis(n, d);
                for (word, el) in b.words.iter().zip(&b.elements) {
                    let (lead, c) = el.terms().next().unwrap();
                    assert_eq!(lead, word);
                    assert_eq!(*c, qi(1));
                    assert!(is_lie(el));
                }
            }
        }
    }

    #[test]
    fn coordinates_examples() {
        let b = lyndon_basis(2, 2);
        assert_eq!(
            lie_coordinates(&br(&x(2, 1), &x(2, 2)), &b).unwrap(),
            vec![qi(1)]
        );
        let b3 = lyndon_basis(2, 3);
        let f = br(&x(2, 1), &br(&x(2, 1), &x(2, 2))).scale(&qi(2));
        assert_eq!(lie_coordinates(&f, &b3).unwrap(), vec![qi(2), qi(0)]);
        assert_eq!(lie_coordinates(&w(2, &[1, 2]), &b), Err(Error::NotLie));
        assert!(matches!(
            lie_coordinates(&x(2, 1), &b),
            Err(Error::BasisMismatch { .. })
        ));
        assert_eq!(lie_coordinates(&Poly::zero(2), &b).unwrap(), vec![qi(0)]);
    }
}
