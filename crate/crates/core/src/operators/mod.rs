//! The simplicial complex `δ` on `T_n`, its translation-invariant
//! subcomplex identified with the Eilenberg–MacLane complex `δ_A` through
//! `R`, the projector `P`, and the inductive homotopy `G`.

mod homotopy;
mod projection;
mod simplicial;

use std::collections::BTreeMap;
use std::fmt;

pub use homotopy::{
    closed_form_g4_report, g_a, g_closed_form, g_homotopy, ClosedFormReport, Homotopy,
};
pub use projection::p_project;
pub use simplicial::{
    ant, antisymmetrizer, delta, delta_a, r_embed, r_invert, s_retract, tau_defect,
};

use crate::ncalg::{CoefPoly, Coefficient, Letter, LetterImage, Scalar};

/// Sign and normalization conventions shared by every operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConventionLedger {
    /// `δ` omits slot `i` with sign `(−1)^(i + delta_sign_shift)`.
    pub delta_sign_shift: u32,
    /// `Ant` carries the factor `1/m!`.
    pub ant_normalized: bool,
    pub delta_sign: &'static str,
    pub delta_a_form: &'static str,
    pub ant_normalization: &'static str,
}

impl ConventionLedger {
    /// Sign attached to omitting slot `i` (1-based) in `δ`.
    pub fn delta_sign(&self, i: usize) -> i64 {
        if (i as u32 + self.delta_sign_shift).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

pub const CONVENTIONS: ConventionLedger = ConventionLedger {
    delta_sign_shift: 1,
    ant_normalized: true,
    delta_sign: "(delta f)(x1..x(n+1)) = sum_{i=1}^{n+1} (-1)^(i-1) f(x1..^xi..x(n+1))",
    delta_a_form: "(deltaA g)(x1..x(m+1)) = g(x2..x(m+1)) + sum_{i=1}^{m} (-1)^i g(x1..xi+x(i+1)..x(m+1)) + (-1)^(m+1) g(x1..xm)",
    ant_normalization: "Ant g = (1/m!) sum_sigma sgn(sigma) sigma(multilinear part of g)",
};

impl fmt::Display for ConventionLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "delta_sign: {}", self.delta_sign)?;
        writeln!(f, "deltaA_form: {}", self.delta_a_form)?;
        write!(f, "ant_normalization: {}", self.ant_normalization)
    }
}

/// Permutations of `0..m` in lexicographic order, with their signs.
pub(crate) fn signed_permutations(m: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, i64)>) {
        let m = used.len();
        if prefix.len() == m {
            let inversions = (0..m)
                .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
                .filter(|&(i, j)| prefix[i] > prefix[j])
                .count();
            out.push((prefix.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for v in 0..m {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

/// An affine combination of active letters with [`CoefPoly`] weights,
/// e.g. `x_1 + t_1 (x_2 − x_1)`. Used to build the simplex parametrizations.
#[derive(Clone, Debug)]
pub(crate) struct Point {
    k: usize,
    weights: BTreeMap<u32, CoefPoly>,
}

impl Point {
    pub(crate) fn vertex(i: u32, k: usize) -> Point {
        Point {
            k,
            weights: BTreeMap::from([(i, CoefPoly::one_aux(k))]),
        }
    }

    /// `self + c · (to − from)` with `to`, `from` vertices.
    pub(crate) fn plus_edge(&self, c: &CoefPoly, from: u32, to: u32) -> Point {
        let mut out = self.clone();
        out.add(to, c.clone());
        out.add(from, c.neg_ref());
        out
    }

    fn add(&mut self, i: u32, c: CoefPoly) {
        let e = self
            .weights
            .entry(i)
            .or_insert_with(|| CoefPoly::zero(self.k));
        e.add_assign_ref(&c);
    }

    pub(crate) fn image(&self) -> LetterImage<CoefPoly> {
        self.weights
            .iter()
            .filter(|(_, c)| !Coefficient::vanishes(*c))
            .map(|(&i, c)| (c.clone(), Letter::Active(i)))
            .collect()
    }
}

pub(crate) fn sgn_scalar(s: i64) -> Scalar {
    Scalar::from_integer(s.into())
}
