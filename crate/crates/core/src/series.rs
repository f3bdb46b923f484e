//! Truncated exponential and logarithm in `T_n`, and the
//! Baker–Campbell–Hausdorff series `log(exp(x_1) exp(x_2))`.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::ncalg::{Poly, Scalar, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesMode {
    Exp,
    Log,
}

/// Product with every term of degree above `max_degree` discarded.
pub fn mul_trunc(a: &Poly, b: &Poly, max_degree: usize) -> Result<Poly> {
    if a.arity() != b.arity() {
        return Err(Error::ArityMismatch {
            expected: a.arity(),
            found: b.arity(),
        });
    }
    let a = a.truncate(max_degree);
    let b = b.truncate(max_degree);
    let mut out = Poly::zero(a.arity());
    for (wa, ca) in a.terms() {
        for (wb, cb) in b.terms() {
            if wa.degree() + wb.degree() <= max_degree {
                let term = Poly::monomial(a.arity(), wa.concat(wb), ca * cb)?;
                out += &term;
            }
        }
    }
    Ok(out)
}

fn constant_term(f: &Poly) -> Scalar {
    f.coefficient_or_zero(&Word::empty())
}

/// `Σ_{k≥0} f^k / k!` up to degree `max_degree`; `f` must have no constant term.
pub fn exp_trunc(f: &Poly, max_degree: usize) -> Result<Poly> {
    if !constant_term(f).is_zero() {
        return Err(Error::ConstantTerm("exp needs a zero constant term"));
    }
    let mut power = Poly::one(f.arity());
    let mut out = power.clone();
    for k in 1..=max_degree {
        power = mul_trunc(&power, f, max_degree)?.scale(&Scalar::new(1.into(), k.into()));
        out += &power;
    }
    Ok(out)
}

/// `Σ_{k≥1} (−1)^{k+1} (f − 1)^k / k` up to degree `max_degree`; `f` must have constant term 1.
pub fn log_trunc(f: &Poly, max_degree: usize) -> Result<Poly> {
    if !constant_term(f).is_one() {
        return Err(Error::ConstantTerm("log needs constant term 1"));
    }
    let g = f - &Poly::one(f.arity());
    let mut power = Poly::one(f.arity());
    let mut out = Poly::zero(f.arity());
    for k in 1..=max_degree {
        power = mul_trunc(&power, &g, max_degree)?;
        let c = Scalar::new(if k % 2 == 1 { 1.into() } else { (-1).into() }, k.into());
        out += &power.scale(&c);
    }
    Ok(out)
}

pub fn exp_log_trunc(mode: SeriesMode, f: &Poly, max_degree: usize) -> Result<Poly> {
    match mode {
        SeriesMode::Exp => exp_trunc(f, max_degree),
        SeriesMode::Log => log_trunc(f, max_degree),
    }
}

/// `log(exp(x_1) exp(x_2))` up to degree `max_degree`.
pub fn bch(max_degree: usize) -> Poly {
    let x1 = Poly::generator(2, 1).expect("arity 2");
    let x2 = Poly::generator(2, 2).expect("arity 2");
    let e1 = exp_trunc(&x1, max_degree).expect("no constant term");
    let e2 = exp_trunc(&x2, max_degree).expect("no constant term");
    let product = mul_trunc(&e1, &e2, max_degree).expect("same arity");
    log_trunc(&product, max_degree).expect("constant term 1")
}

/// Algebra morphism `x_i ↦ images[i−1]`, truncated at `max_degree`.
///
/// Images may be arbitrary polynomials of a common arity; used to compose
/// truncated series.
pub fn compose_trunc(f: &Poly, images: &[Poly], max_degree: usize) -> Result<Poly> {
    if images.len() != f.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            found: images.len(),
        });
    }
    let target = images.first().map_or(f.arity(), Poly::arity);
    let mut out = Poly::zero(target);
    for (w, c) in f.terms() {
        let mut acc = Poly::constant(target, c.clone());
        for l in w.letters() {
            let i = l
                .active_index()
                .ok_or_else(|| Error::UnexpectedParam(l.to_string()))?;
            acc = mul_trunc(&acc, &images[i as usize - 1], max_degree)?;
        }
        out += &acc;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{bracket_expand, is_lie};
    use crate::ncalg::q;

    fn x(n: usize, i: u32) -> Poly {
        Poly::generator(n, i).unwrap()
    }

    #[test]
    fn exp_log_examples() {
        let e = exp_trunc(&x(1, 1), 5).unwrap();
        assert_eq!(log_trunc(&e, 5).unwrap(), x(1, 1));

        let prod = mul_trunc(
            &exp_trunc(&x(2, 1), 2).unwrap(),
            &exp_trunc(&x(2, 2), 2).unwrap(),
            2,
        )
        .unwrap();
        let expected = &(&x(2, 1).pow(2).scale(&q(1, 2)) + &(&x(2, 1) * &x(2, 2)))
            + &x(2, 2).pow(2).scale(&q(1, 2));
        assert_eq!(prod.homogeneous_component(2), expected);

        let one_plus = &Poly::one(1) + &x(1, 1);
        let expected =
            &(&x(1, 1) - &x(1, 1).pow(2).scale(&q(1, 2))) + &x(1, 1).pow(3).scale(&q(1, 3));
        assert_eq!(log_trunc(&one_plus, 3).unwrap(), expected);
    }

    #[test]
    fn preconditions() {
        assert!(exp_trunc(&Poly::one(1), 3).is_err());
        assert!(log_trunc(&x(1, 1), 3).is_err());
        assert!(exp_log_trunc(SeriesMode::Log, &Poly::one(1), 3)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn round_trips() {
        let c = &x(2, 1) + &bracket_expand(&x(2, 1), &x(2, 2)).unwrap();
        for d in 1..=6 {
            for f in [x(2, 1), c.clone()] {
                let back = log_trunc(&exp_trunc(&f, d).unwrap(), d).unwrap();
                assert_eq!(back, f.truncate(d));
            }
        }
    }

    #[test]
    fn bch_low_degrees() {
        let b = bch(3);
        assert_eq!(b.homogeneous_component(1), &x(2, 1) + &x(2, 2));
        let c = bracket_expand(&x(2, 1), &x(2, 2)).unwrap();
        assert_eq!(b.homogeneous_component(2), c.scale(&q(1, 2)));
        assert!(is_lie(&b));
    }

    #[test]
    fn bch_is_associative() {
        for d in 1..=4 {
            let b = bch(d);
            let x3 = |i| x(3, i);
            let left_inner = compose_trunc(&b, &[x3(1), x3(2)], d).unwrap();
            let left = compose_trunc(&b, &[left_inner, x3(3)], d).unwrap();
            let right_inner = compose_trunc(&b, &[x3(2), x3(3)], d).unwrap();
            let right = compose_trunc(&b, &[x3(1), right_inner], d).unwrap();
            assert_eq!(left, right, "degree {d}");
        }
    }
}
