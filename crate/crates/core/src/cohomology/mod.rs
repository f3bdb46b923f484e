//! Per-bidegree cohomology of `δ_A` on `T_n` and on `L_n`.
//!
//! Cochains at bidegree `(n, d)` are the degree-`d` elements in `n`
//! letters. The constant strand `d = 0` is left out of all tables.

mod linalg;

use std::fmt;
use std::str::FromStr;

use num::Zero;
use rayon::prelude::*;

pub use linalg::{exact_rank, nullspace, rref, Matrix};

use crate::error::{Error, Result};
use crate::lie::{lie_coordinates, lyndon_basis, LyndonBasis};
use crate::ncalg::{word_basis, Poly, Scalar, Word};
use crate::operators::{ant, delta, delta_a, g_homotopy, p_project, r_embed};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algebra {
    /// The free associative algebra `T_n`.
    Assoc,
    /// The free Lie algebra `L_n`.
    Lie,
}

impl Algebra {
    pub fn name(self) -> &'static str {
        match self {
            Algebra::Assoc => "assoc",
            Algebra::Lie => "lie",
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algebra {
    type Err = Error;

    fn from_str(s: &str) -> Result<Algebra> {
        match s {
            "assoc" | "T" => Ok(Algebra::Assoc),
            "lie" | "L" => Ok(Algebra::Lie),
            other => Err(Error::UnsupportedOperator(format!(
                "unknown algebra {other}"
            ))),
        }
    }
}

/// A basis of the degree-`d` part in `n` letters.
#[derive(Clone, Debug)]
pub enum Basis {
    Words {
        n: usize,
        d: usize,
        words: Vec<Word>,
    },
    Lyndon(LyndonBasis),
}

impl Basis {
    pub fn words(n: usize, d: usize) -> Basis {
        Basis::Words {
            n,
            d,
            words: word_basis(n, d),
        }
    }

    pub fn lyndon(n: usize, d: usize) -> Basis {
        Basis::Lyndon(lyndon_basis(n, d))
    }

    pub fn for_algebra(algebra: Algebra, n: usize, d: usize) -> Basis {
        match algebra {
            Algebra::Assoc => Basis::words(n, d),
            Algebra::Lie => Basis::lyndon(n, d),
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Basis::Words { n, .. } => *n,
            Basis::Lyndon(b) => b.n,
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Basis::Words { d, .. } => *d,
            Basis::Lyndon(b) => b.d,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Basis::Words { words, .. } => words.len(),
            Basis::Lyndon(b) => b.len(),
        }
    }

    pub fn element(&self, j: usize) -> Poly {
        match self {
            Basis::Words { n, words, .. } => Poly::word(*n, words[j].clone()).expect("basis word"),
            Basis::Lyndon(b) => b.elements[j].clone(),
        }
    }

    pub fn coordinates(&self, f: &Poly) -> Result<Vec<Scalar>> {
        match self {
            Basis::Words { n, d, words } => {
                let degree = f.homogeneous_degree().unwrap_or(*d);
                if f.arity() != *n || degree != *d {
                    return Err(Error::BasisMismatch {
                        basis_n: *n,
                        basis_d: *d,
                        n: f.arity(),
                        d: degree,
                    });
                }
                Ok(words.iter().map(|w| f.coefficient_or_zero(w)).collect())
            }
            Basis::Lyndon(b) => lie_coordinates(f, b),
        }
    }

    pub fn combine(&self, coords: &[Scalar]) -> Poly {
        match self {
            Basis::Words { n, words, .. } => {
                let mut out = Poly::zero(*n);
                for (w, c) in words.iter().zip(coords) {
                    out += &Poly::monomial(*n, w.clone(), c.clone()).expect("basis word");
                }
                out
            }
            Basis::Lyndon(b) => b.combine(coords),
        }
    }
}

/// The matrix of an operator between canonical bases at a fixed degree.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    pub op: String,
    pub n: usize,
    pub d: usize,
    pub source: Basis,
    pub target: Basis,
    /// Column `j` holds the target coordinates of the image of source element `j`.
    pub entries: Matrix,
}

impl OperatorMatrix {
    pub fn rows(&self) -> usize {
        self.entries.rows()
    }

    pub fn cols(&self) -> usize {
        self.entries.cols()
    }
}

type Operator = fn(&Poly) -> Result<Poly>;

/// Operators preserving word degree, with the arity shift they induce.
fn lookup(op: &str, algebra: Algebra) -> Result<(Operator, usize)> {
    let found: Option<(Operator, usize)> = match (op, algebra) {
        ("delta_A" | "deltaA", _) => Some((delta_a, 1)),
        ("delta", Algebra::Assoc) => Some((delta, 1)),
        ("P", Algebra::Assoc) => Some((p_project, 0)),
        ("G", Algebra::Assoc) => Some((g_homotopy, 0)),
        ("Ant", Algebra::Assoc) => Some((ant, 0)),
        ("R", Algebra::Assoc) => Some((r_embed, 1)),
        _ => None,
    };
    found.ok_or_else(|| Error::UnsupportedOperator(format!("{op} on {algebra}")))
}

fn build_matrix(
    op: &str,
    f: Operator,
    shift: usize,
    source: Basis,
    target: Basis,
) -> Result<OperatorMatrix> {
    let (n, d) = (source.arity(), source.degree());
    let columns = (0..source.dim())
        .map(|j| f(&source.element(j)).and_then(|img| target.coordinates(&img)))
        .collect::<Result<Vec<_>>>()?;
    debug_assert_eq!(target.arity(), n + shift);
    let entries = Matrix::from_columns(target.dim(), &columns);
    Ok(OperatorMatrix {
        op: op.to_string(),
        n,
        d,
        source,
        target,
        entries,
    })
}

/// Matrix of `op` from bidegree `(n, d)` in the canonical bases.
///
/// Supported: `delta_A` on both algebras, and `delta`, `P`, `G`, `Ant`,
/// `R` on the associative algebra.
pub fn operator_matrix(op: &str, algebra: Algebra, n: usize, d: usize) -> Result<OperatorMatrix> {
    let (f, shift) = lookup(op, algebra)?;
    if (op == "P" || op == "G") && n == 0 {
        return Err(Error::ArityTooSmall { min: 1, found: 0 });
    }
    build_matrix(
        op,
        f,
        shift,
        Basis::for_algebra(algebra, n, d),
        Basis::for_algebra(algebra, n + shift, d),
    )
}

/// `δ_A` on Lyndon elements, written in word coordinates of `T_{n+1}`.
pub fn lie_delta_a_in_words(n: usize, d: usize) -> Result<OperatorMatrix> {
    build_matrix(
        "delta_A",
        delta_a,
        1,
        Basis::lyndon(n, d),
        Basis::words(n + 1, d),
    )
}

/// Cohomology of `δ_A` at one bidegree.
#[derive(Clone, Debug, PartialEq)]
pub struct BettiEntry {
    pub algebra: Algebra,
    pub n: usize,
    pub d: usize,
    pub dim: usize,
    pub rank_out: usize,
    pub rank_in: usize,
    pub betti: usize,
    /// Cocycles completing a basis of the image, one per cohomology class.
    pub generators: Vec<Poly>,
}

struct Cell {
    n: usize,
    d: usize,
    out: OperatorMatrix,
    rank_out: usize,
}

fn cell(algebra: Algebra, n: usize, d: usize) -> Result<Cell> {
    let out = operator_matrix("delta_A", algebra, n, d)?;
    let rank_out = exact_rank(&out.entries);
    Ok(Cell {
        n,
        d,
        out,
        rank_out,
    })
}

fn run_parallel<T: Send, F>(threads: usize, jobs: usize, f: F) -> Result<Vec<T>>
where
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    if threads <= 1 {
        return (0..jobs).map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    pool.install(|| (0..jobs).into_par_iter().map(&f).collect())
}

/// Kernel vectors of `out` reduced modulo the image of `inc` and brought to
/// reduced echelon form, so each starts with coordinate 1.
fn complement(out: &OperatorMatrix, inc: Option<&OperatorMatrix>) -> Vec<Vec<Scalar>> {
    let dim = out.cols();
    let image: Vec<Vec<Scalar>> = inc.map_or_else(Vec::new, |m| {
        (0..m.cols()).map(|j| m.entries.column(j)).collect()
    });
    let (image_rows, image_pivots) = linalg::row_space_basis(dim, &image);
    let reduced: Vec<Vec<Scalar>> = nullspace(&out.entries)
        .into_iter()
        .map(|mut v| {
            for (row, &p) in image_rows.iter().zip(&image_pivots) {
                let c = v[p].clone();
                if !c.is_zero() {
                    for (x, y) in v.iter_mut().zip(row) {
                        *x -= &c * y;
                    }
                }
            }
            v
        })
        .collect();
    linalg::row_space_basis(dim, &reduced).0
}

/// Checks that every generator is a cocycle outside the image, and that
/// together they raise the rank of the image by their number.
fn certify(inc: Option<&OperatorMatrix>, out: &OperatorMatrix, gens: &[Vec<Scalar>]) -> Result<()> {
    let dim = out.cols();
    let image: Vec<Vec<Scalar>> = inc.map_or_else(Vec::new, |m| {
        (0..m.cols()).map(|j| m.entries.column(j)).collect()
    });
    let base = linalg::vectors_rank(dim, &image);
    for g in gens {
        let poly = out.source.combine(g);
        let defect = delta_a(&poly)?;
        if !defect.is_zero() {
            return Err(Error::InvarianceViolation {
                defect: defect.to_string(),
            });
        }
        let mut with = image.clone();
        with.push(g.clone());
        if linalg::vectors_rank(dim, &with) != base + 1 {
            return Err(Error::InvarianceViolation {
                defect: format!("{poly} lies in the image"),
            });
        }
    }
    let mut all = image;
    all.extend(gens.iter().cloned());
    if linalg::vectors_rank(dim, &all) != base + gens.len() {
        return Err(Error::InvarianceViolation {
            defect: "generators are dependent modulo the image".into(),
        });
    }
    Ok(())
}

fn entry(algebra: Algebra, this: &Cell, below: Option<&Cell>) -> Result<BettiEntry> {
    let dim = this.out.cols();
    let rank_in = below.map_or(0, |c| c.rank_out);
    let betti = dim - this.rank_out - rank_in;
    let generators = if betti == 0 {
        Vec::new()
    } else {
        let inc = below.map(|c| &c.out);
        let gens = complement(&this.out, inc);
        certify(inc, &this.out, &gens)?;
        gens.iter().map(|g| this.out.source.combine(g)).collect()
    };
    debug_assert_eq!(generators.len(), betti);
    Ok(BettiEntry {
        algebra,
        n: this.n,
        d: this.d,
        dim,
        rank_out: this.rank_out,
        rank_in,
        betti,
        generators,
    })
}

/// Betti numbers for `1 ≤ n ≤ n_max`, `1 ≤ d ≤ d_max`, ordered by `n` then `d`.
///
/// Cells are computed on `threads` workers; the result does not depend on it.
pub fn betti_table(
    algebra: Algebra,
    n_max: usize,
    d_max: usize,
    threads: usize,
) -> Result<Vec<BettiEntry>> {
    let coords: Vec<(usize, usize)> = (1..=n_max)
        .flat_map(|n| (1..=d_max).map(move |d| (n, d)))
        .collect();
    let cells = run_parallel(threads, coords.len(), |i| {
        cell(algebra, coords[i].0, coords[i].1)
    })?;
    run_parallel(threads, cells.len(), |i| {
        let below = (cells[i].n > 1).then(|| &cells[i - d_max]);
        entry(algebra, &cells[i], below)
    })
}

/// Certified generators of the cohomology at `(n, d)`.
pub fn cohomology_generators(algebra: Algebra, n: usize, d: usize) -> Result<Vec<Poly>> {
    if n == 0 || d == 0 {
        return Ok(Vec::new());
    }
    let this = cell(algebra, n, d)?;
    let below = if n > 1 {
        Some(cell(algebra, n - 1, d)?)
    } else {
        None
    };
    Ok(entry(algebra, &this, below.as_ref())?.generators)
}

/// Betti number of `L` at `(n, d)` with `δ_A` written in word coordinates.
pub fn lie_betti_in_word_coordinates(n: usize, d: usize) -> Result<usize> {
    let out = lie_delta_a_in_words(n, d)?;
    let rank_in = if n > 1 {
        exact_rank(&lie_delta_a_in_words(n - 1, d)?.entries)
    } else {
        0
    };
    Ok(out.cols() - exact_rank(&out.entries) - rank_in)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::qi;

    #[test]
    fn delta_a_matrix_examples() {
        let m = operator_matrix("delta_A", Algebra::Assoc, 1, 1).unwrap();
        assert_eq!(m.entries.shape(), (2, 1));
        assert!(m.entries.is_zero());
        let m = operator_matrix("delta_A", Algebra::Assoc, 1, 2).unwrap();
        assert_eq!(m.entries.column(0), vec![qi(0), qi(-1), qi(-1), qi(0)]);
        assert_eq!(exact_rank(&m.entries), 1);
        assert_eq!(
            operator_matrix("delta_A", Algebra::Assoc, 2, 2)
                .unwrap()
                .entries
                .shape(),
            (9, 4)
        );
    }

    #[test]
    fn unsupported_operator() {
        assert!(matches!(
            operator_matrix("tau", Algebra::Assoc, 2, 2),
            Err(Error::UnsupportedOperator(_))
        ));
        assert!(matches!(
            operator_matrix("G", Algebra::Lie, 2, 2),
            Err(Error::UnsupportedOperator(_))
        ));
    }

    #[test]
    fn small_table() {
        let t = betti_table(Algebra::Assoc, 2, 3, 1).unwrap();
        let b: Vec<usize> = t.iter().map(|e| e.betti).collect();
        assert_eq!(b, vec![1, 0, 0, 0, 1, 0]);
        let x1 = Poly::generator(1, 1).unwrap();
        assert_eq!(t[0].generators, vec![x1]);
    }

    #[test]
    fn lie_examples() {
        let g = cohomology_generators(Algebra::Lie, 2, 2).unwrap();
        let x = |i| Poly::generator(2, i).unwrap();
        assert_eq!(g, vec![crate::lie::bracket_expand(&x(1), &x(2)).unwrap()]);
        assert!(cohomology_generators(Algebra::Lie, 3, 3)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn threads_do_not_change_the_table() {
        let a = betti_table(Algebra::Lie, 3, 3, 1).unwrap();
        let b = betti_table(Algebra::Lie, 3, 3, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn complex_property() {
        for algebra in [Algebra::Assoc, Algebra::Lie] {
            for n in 1..=2 {
                for d in 1..=3 {
                    let a = operator_matrix("delta_A", algebra, n, d).unwrap();
                    let b = operator_matrix("delta_A", algebra, n + 1, d).unwrap();
                    assert!(b.entries.mul(&a.entries).is_zero());
                }
            }
        }
    }
}
