use std::collections::BTreeMap;

use num::{BigInt, One, Zero};

use super::{sgn_scalar, signed_permutations};
use crate::error::Result;
use crate::ncalg::{Letter, Poly, Scalar, Word};

/// The projector `P_n`.
///
/// With `x(t) = x_1 + Σ t_i (x_{i+1} − x_1)`, sums over permutations `σ` of
/// `{2..n}` the signed substitution `x_1 ↦ x(t)`,
/// `x_j ↦ x(t) + ε_{j−1} (x_{σ(j)} − x_1)`, keeps the coefficient of
/// `ε_1 ⋯ ε_{n−1}` and integrates over the simplex `Δ_{n−1}`. The identity
/// in arity 0 and 1.
pub fn p_project(f: &Poly) -> Result<Poly> {
    let n = f.arity();
    if n <= 1 {
        return Ok(f.clone());
    }
    let perms = signed_permutations(n - 1);
    let mut acc: BTreeMap<Word, Scalar> = BTreeMap::new();
    for (w, c) in f.terms() {
        project_word(n, w, c, &perms, &mut acc);
    }
    Poly::from_terms(n, 0, acc.into_iter().filter(|(_, c)| !c.is_zero()))
}

/// Adds `c · P(w)` to `acc`.
///
/// The ε-coefficient selects, for each letter `x_j` with `j ≥ 2`, one
/// occurrence that becomes `x_{σ(j)} − x_1`. Every other active letter
/// becomes `x(t) = Σ λ_i x_{i+1}` in barycentric coordinates, and
/// `∫_Δ Π λ_i^{a_i} = Π a_i! / (k + Σ a_i)!`.
fn project_word(
    n: usize,
    w: &Word,
    c: &Scalar,
    perms: &[(Vec<usize>, i64)],
    acc: &mut BTreeMap<Word, Scalar>,
) {
    let k = n - 1;
    let letters = w.letters();
    let occurrences: Vec<Vec<usize>> = (2..=n as u32)
        .map(|j| {
            (0..letters.len())
                .filter(|&p| letters[p] == Letter::Active(j))
                .collect()
        })
        .collect();
    if occurrences.iter().any(Vec::is_empty) {
        return;
    }
    let mut choice = vec![0usize; k];
    loop {
        // slot[p] = Some(j − 2) when position p carries the ε of x_j
        let mut slot: Vec<Option<usize>> = vec![None; letters.len()];
        for (j, occ) in occurrences.iter().enumerate() {
            slot[occ[choice[j]]] = Some(j);
        }
        let free: Vec<usize> = (0..letters.len())
            .filter(|&p| slot[p].is_none() && letters[p].active_index().is_some())
            .collect();
        let norm = factorial(k + free.len());
        let mut vertex = vec![0usize; free.len()];
        loop {
            let mut counts = vec![0usize; n];
            for &v in &vertex {
                counts[v] += 1;
            }
            let weight = counts
                .iter()
                .map(|&a| factorial(a))
                .fold(BigInt::one(), |x, y| x * y);
            let coef = c * Scalar::new(weight, norm.clone());
            let mut fixed = letters.to_vec();
            for (&p, &v) in free.iter().zip(&vertex) {
                fixed[p] = Letter::Active(v as u32 + 1);
            }
            for (perm, sign) in perms {
                expand_edges(&fixed, &slot, perm, &sgn_scalar(*sign) * &coef, acc);
            }
            if !advance(&mut vertex, n) {
                break;
            }
        }
        let sizes: Vec<usize> = occurrences.iter().map(Vec::len).collect();
        if !advance_mixed(&mut choice, &sizes) {
            break;
        }
    }
}

/// Expands the edge factors `x_{σ(j)} − x_1` at the ε positions.
fn expand_edges(
    fixed: &[Letter],
    slot: &[Option<usize>],
    perm: &[usize],
    coef: Scalar,
    acc: &mut BTreeMap<Word, Scalar>,
) {
    let edges: Vec<usize> = (0..fixed.len()).filter(|&p| slot[p].is_some()).collect();
    for mask in 0u32..(1 << edges.len()) {
        let mut letters = fixed.to_vec();
        let mut c = coef.clone();
        for (bit, &p) in edges.iter().enumerate() {
            letters[p] = if mask & (1 << bit) == 0 {
                Letter::Active(perm[slot[p].expect("edge")] as u32 + 2)
            } else {
                c = -c;
                Letter::Active(1)
            };
        }
        let e = acc.entry(Word::new(letters)).or_insert_with(Scalar::zero);
        *e += c;
    }
}

fn factorial(m: usize) -> BigInt {
    (1..=m).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

/// Next tuple in `{0..base}^len`; false after the last.
fn advance(v: &mut [usize], base: usize) -> bool {
    for x in v.iter_mut() {
        *x += 1;
        if *x < base {
            return true;
        }
        *x = 0;
    }
    false
}

fn advance_mixed(v: &mut [usize], sizes: &[usize]) -> bool {
    for (x, &s) in v.iter_mut().zip(sizes) {
        *x += 1;
        if *x < s {
            return true;
        }
        *x = 0;
    }
    false
}
