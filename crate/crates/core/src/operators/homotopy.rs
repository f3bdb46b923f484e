use std::collections::HashMap;

use num::One;

use super::{delta, p_project, r_embed, r_invert, tau_defect, Point};
use crate::error::{Error, Result};
use crate::ncalg::{
    lin, CoefPoly, Letter, LetterImage, LinearSubstitution, ParamId, Poly, Scalar, Word,
};

/// The homotopy `G: T_{n+1} → T_n` with `Gδ + δG = Id − P`.
///
/// `G` is linear, so it is evaluated word by word; results are memoized per
/// `(arity, word)` for the lifetime of one `Homotopy` value.
#[derive(Debug, Default)]
pub struct Homotopy {
    cache: HashMap<(usize, Word), Poly>,
}

impl Homotopy {
    pub fn new() -> Homotopy {
        Homotopy::default()
    }

    pub fn apply(&mut self, f: &Poly) -> Result<Poly> {
        let m = f.arity();
        if m == 0 {
            return Err(Error::ArityTooSmall { min: 1, found: 0 });
        }
        let mut out = Poly::zero(m - 1);
        if m <= 2 {
            return Ok(out);
        }
        for (w, c) in f.terms() {
            let key = (m, w.clone());
            if !self.cache.contains_key(&key) {
                let value = self.on_word(m, w)?;
                self.cache.insert(key.clone(), value);
            }
            out += &self.cache[&key].scale(c);
        }
        Ok(out)
    }

    /// `G^{n+1}` on one word of arity `m = n + 1 ≥ 3`.
    fn on_word(&mut self, m: usize, w: &Word) -> Result<Poly> {
        let n = m - 1;
        let p = ParamId::fresh_after(w.max_param());
        let f = Poly::word(m, w.clone())?;

        // φ(w_1..w_n) = f(p, p + w_1, .., p + w_n)
        let mut images: Vec<LetterImage<Scalar>> = vec![vec![(Scalar::one(), Letter::Param(p))]];
        images.extend((1..=n as u32).map(|j| {
            vec![
                (Scalar::one(), Letter::Param(p)),
                (Scalar::one(), Letter::Active(j)),
            ]
        }));
        let phi = LinearSubstitution::new(n, 0, images)?.apply(&f)?;

        // (H^n − δ G^n) φ
        let mut u = &phi - &p_project(&phi)?;
        let g_phi = self.apply(&phi)?;
        u -= &delta(&g_phi)?;

        // evaluate at (0, x_2 − x_1, .., x_n − x_1) with p ↦ x_1
        let mut back = vec![Vec::new()];
        back.extend((2..=n as u32).map(|j| lin(&[(1, j), (-1, 1)])));
        LinearSubstitution::new(n, 0, back)?
            .bind_param(p, lin(&[(1, 1)]))?
            .apply(&u)
    }
}

/// `G` applied to `f` with a fresh memo table.
pub fn g_homotopy(f: &Poly) -> Result<Poly> {
    Homotopy::new().apply(f)
}

/// The homotopy on the Eilenberg–MacLane complex, `R⁻¹ ∘ G ∘ R`.
///
/// Fails with [`Error::InvarianceViolation`] if `G(R g)` is not translation invariant.
pub fn g_a(g: &Poly) -> Result<Poly> {
    if g.arity() == 0 {
        return Err(Error::ArityTooSmall { min: 1, found: 0 });
    }
    let h = g_homotopy(&r_embed(g)?)?;
    let defect = tau_defect(&h)?;
    if !defect.is_zero() {
        return Err(Error::InvarianceViolation {
            defect: defect.to_string(),
        });
    }
    r_invert(&h)
}

/// Lifts `f`, substitutes the given images, keeps the `ε_1⋯ε_k` coefficient
/// and integrates over `Δ_k`.
fn integrated_term(
    f: &Poly,
    target: usize,
    k: usize,
    images: Vec<LetterImage<CoefPoly>>,
) -> Result<Poly> {
    let mut sub = LinearSubstitution::new(target, k, images)?.apply(&f.lift(k))?;
    sub.retain_eps_multilinear();
    sub.eps_coefficient().simplex_integrate()
}

/// `f(x_{i_1}, .., x_{i_m})` for a list of plain letter indices.
fn evaluate_at(f: &Poly, target: usize, slots: &[u32]) -> Result<Poly> {
    let images = slots.iter().map(|&i| lin(&[(1, i)])).collect();
    LinearSubstitution::new(target, 0, images)?.apply(f)
}

/// Direct transcription of the displayed formulas for `G³` and `G⁴`.
///
/// The `G⁴₂` integrals are taken over the simplex `Δ₂`.
pub fn g_closed_form(order: usize, f: &Poly) -> Result<Poly> {
    match order {
        3 => g3_closed(f),
        4 => g4_closed(f),
        other => Err(Error::UnsupportedOrder(other)),
    }
}

fn expect_arity(f: &Poly, arity: usize) -> Result<()> {
    if f.arity() != arity {
        return Err(Error::ArityMismatch {
            expected: arity,
            found: f.arity(),
        });
    }
    Ok(())
}

fn g3_closed(f: &Poly) -> Result<Poly> {
    expect_arity(f, 3)?;
    let k = 1;
    let t = CoefPoly::t(1, k);
    let e = CoefPoly::eps(1, k);
    // f(v1, v1 + t(v2 − v1), v1 + t(v2 − v1) + ε(v2 − v1))
    let v1 = Point::vertex(1, k);
    let moving = v1.plus_edge(&t, 1, 2);
    let images = vec![
        v1.image(),
        moving.image(),
        moving.plus_edge(&e, 1, 2).image(),
    ];
    let head = evaluate_at(f, 2, &[1, 1, 2])?;
    Ok(&head - &integrated_term(f, 2, k, images)?)
}

fn g4_closed(f: &Poly) -> Result<Poly> {
    expect_arity(f, 4)?;
    let mut g0 = evaluate_at(f, 3, &[1, 1, 2, 3])?;
    g0 -= &evaluate_at(f, 3, &[1, 2, 2, 3])?;
    g0 += &evaluate_at(f, 3, &[1, 1, 1, 3])?;
    g0 -= &evaluate_at(f, 3, &[1, 1, 1, 2])?;

    // ∫_0^1 coeff_ε f(a, b, c + t(e − c), c + (t + ε)(e − c)) dt
    let segment = |a: u32, b: u32, c: u32, e: u32| -> Result<Poly> {
        let k = 1;
        let t = CoefPoly::t(1, k);
        let eps = CoefPoly::eps(1, k);
        let on_edge = Point::vertex(c, k).plus_edge(&t, c, e);
        let images = vec![
            Point::vertex(a, k).image(),
            Point::vertex(b, k).image(),
            on_edge.image(),
            on_edge.plus_edge(&eps, c, e).image(),
        ];
        integrated_term(f, 3, k, images)
    };
    let mut g1 = segment(1, 2, 2, 3)?;
    g1 -= &segment(1, 1, 1, 3)?;
    g1 += &segment(1, 1, 1, 2)?;

    // V(t) = v1 + t1 (v2 − v1) + t2 (v3 − v1); V(t + ε1), V(t + ε2)
    let k = 2;
    let v = Point::vertex(1, k)
        .plus_edge(&CoefPoly::t(1, k), 1, 2)
        .plus_edge(&CoefPoly::t(2, k), 1, 3);
    let v_e1 = v.plus_edge(&CoefPoly::eps(1, k), 1, 2);
    let v_e2 = v.plus_edge(&CoefPoly::eps(2, k), 1, 3);
    let first = vec![
        Point::vertex(1, k).image(),
        v.image(),
        v_e1.image(),
        v_e2.image(),
    ];
    let second = vec![
        Point::vertex(1, k).image(),
        v.image(),
        v_e2.image(),
        v_e1.image(),
    ];
    let g2 = -&(&integrated_term(f, 3, k, first)? + &integrated_term(f, 3, k, second)?);

    Ok(&(&g0 + &g1) + &g2)
}

/// Comparison of the closed-form `G⁴` against the inductive homotopy.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedFormReport {
    pub input: Poly,
    pub closed_form: Poly,
    pub inductive: Poly,
    pub difference: Poly,
}

impl ClosedFormReport {
    pub fn agrees(&self) -> bool {
        self.difference.is_zero()
    }
}

pub fn closed_form_g4_report(f: &Poly) -> Result<ClosedFormReport> {
    let closed_form = g_closed_form(4, f)?;
    let inductive = g_homotopy(f)?;
    let difference = &closed_form - &inductive;
    Ok(ClosedFormReport {
        input: f.clone(),
        closed_form,
        inductive,
        difference,
    })
}
