use num::One;

use super::{sgn_scalar, signed_permutations, CONVENTIONS};
use crate::error::{Error, Result};
use crate::ncalg::{lin, Letter, LetterImage, LinearSubstitution, Poly, Scalar, Word};

fn subst(f: &Poly, target: usize, images: Vec<LetterImage<Scalar>>) -> Result<Poly> {
    LinearSubstitution::new(target, 0, images)?.apply(f)
}

/// The simplicial differential `T_n → T_{n+1}`.
pub fn delta(f: &Poly) -> Result<Poly> {
    let n = f.arity();
    let mut out = Poly::zero(n + 1);
    for i in 1..=n + 1 {
        let images = (1..=n as u32)
            .map(|j| lin(&[(1, if (j as usize) < i { j } else { j + 1 })]))
            .collect();
        let term = subst(f, n + 1, images)?;
        if CONVENTIONS.delta_sign(i) > 0 {
            out += &term;
        } else {
            out -= &term;
        }
    }
    Ok(out)
}

/// `(s f)(x_1..x_n) = f(0, x_1, .., x_n)`.
pub fn s_retract(f: &Poly) -> Result<Poly> {
    let m = f.arity();
    if m == 0 {
        return Err(Error::ArityTooSmall { min: 1, found: 0 });
    }
    let mut images = vec![Vec::new()];
    images.extend((1..m as u32).map(|i| lin(&[(1, i)])));
    subst(f, m - 1, images)
}

/// `f(x_1 + y, .., x_n + y) − f(x_1, .., x_n)`; zero exactly on translation invariants.
pub fn tau_defect(f: &Poly) -> Result<Poly> {
    if f.contains_letter(Letter::y()) {
        return Err(Error::ParamClash("y".into()));
    }
    let n = f.arity();
    let images = (1..=n as u32)
        .map(|i| {
            vec![
                (Scalar::one(), Letter::Active(i)),
                (Scalar::one(), Letter::y()),
            ]
        })
        .collect();
    Ok(&subst(f, n, images)? - f)
}

/// `(R g)(x_1..x_{m+1}) = g(x_2 − x_1, .., x_{m+1} − x_m)`.
pub fn r_embed(g: &Poly) -> Result<Poly> {
    let m = g.arity();
    let images = (1..=m as u32)
        .map(|i| lin(&[(1, i + 1), (-1, i)]))
        .collect();
    subst(g, m + 1, images)
}

/// Left inverse of [`r_embed`]: `f(0, x_1, x_1 + x_2, .., x_1 + ⋯ + x_{n−1})`.
pub fn r_invert(f: &Poly) -> Result<Poly> {
    let n = f.arity();
    if n == 0 {
        return Err(Error::ArityTooSmall { min: 1, found: 0 });
    }
    let defect = tau_defect(f)?;
    if !defect.is_zero() {
        return Err(Error::NotTranslationInvariant {
            defect: defect.to_string(),
        });
    }
    let images = (1..=n as u32)
        .map(|j| (1..j).map(|i| (Scalar::one(), Letter::Active(i))).collect())
        .collect();
    subst(f, n - 1, images)
}

/// The Eilenberg–MacLane differential `T_m → T_{m+1}`.
pub fn delta_a(g: &Poly) -> Result<Poly> {
    let m = g.arity();
    let target = m + 1;
    let shifted = (1..=m as u32).map(|j| lin(&[(1, j + 1)])).collect();
    let mut out = subst(g, target, shifted)?;
    for i in 1..=m as u32 {
        let images = (1..=m as u32)
            .map(|j| match j.cmp(&i) {
                std::cmp::Ordering::Less => lin(&[(1, j)]),
                std::cmp::Ordering::Equal => lin(&[(1, j), (1, j + 1)]),
                std::cmp::Ordering::Greater => lin(&[(1, j + 1)]),
            })
            .collect();
        let term = subst(g, target, images)?;
        if i % 2 == 0 {
            out += &term;
        } else {
            out -= &term;
        }
    }
    let last = g.with_arity(target)?;
    if (m + 1).is_multiple_of(2) {
        out += &last;
    } else {
        out -= &last;
    }
    Ok(out)
}

/// `A_m = Σ_σ sgn(σ) x_{σ(1)} ⋯ x_{σ(m)}`.
pub fn antisymmetrizer(m: usize) -> Poly {
    let mut out = Poly::zero(m);
    for (perm, sign) in signed_permutations(m) {
        let w = Word::from_indices(&perm.iter().map(|&i| i as u32 + 1).collect::<Vec<_>>());
        out += &Poly::monomial(m, w, sgn_scalar(sign)).expect("letters in range");
    }
    out
}

/// Projection onto the span of `A_m`, normalized to be idempotent.
pub fn ant(g: &Poly) -> Result<Poly> {
    let m = g.arity();
    if let Some(p) = g.max_param() {
        return Err(Error::UnexpectedParam(p.to_string()));
    }
    // Σ_σ sgn(σ) σ(w) = sgn(π) A_m for w = x_{π(1)} ⋯ x_{π(m)}
    let mut weight = Scalar::from_integer(0.into());
    for (w, c) in g.multilinear_part().terms() {
        let idx: Vec<u32> = w
            .letters()
            .iter()
            .filter_map(|l| l.active_index())
            .collect();
        let inversions = (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .filter(|&(i, j)| idx[i] > idx[j])
            .count();
        if inversions % 2 == 0 {
            weight += c;
        } else {
            weight -= c;
        }
    }
    if CONVENTIONS.ant_normalized {
        let fact: num::BigInt = (1..=m as u64).fold(num::BigInt::one(), |a, i| a * i);
        weight /= Scalar::from_integer(fact);
    }
    Ok(antisymmetrizer(m).scale(&weight))
}
