//! Dense exact linear algebra over ℚ.

use std::fmt;

use num::{BigInt, Integer, One, Zero};

use crate::ncalg::Scalar;

/// Dense rectangular matrix of rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Matrix {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&a| Scalar::from_integer(a.into())).collect())
                .collect(),
        )
    }

    /// Matrix whose `j`-th column is `columns[j]`; every column has length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zero(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, a) in col.iter().enumerate() {
                m.data[i * m.cols + j] = a.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Applies the matrix to a coordinate vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Rank by fraction-free Bareiss elimination.
///
/// Rows are first cleared of denominators. At each step the pivot is the
/// first nonzero entry in row-major order of the remaining submatrix.
pub fn exact_rank(m: &Matrix) -> usize {
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let row = m.row(i);
            let lcm = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();
    let mut colperm: Vec<usize> = (0..cols).collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        let found = (k..rows).find_map(|i| {
            (k..cols)
                .find(|&c| !a[i][colperm[c]].is_zero())
                .map(|c| (i, c))
        });
        let Some((pi, pc)) = found else { break };
        a.swap(k, pi);
        colperm.swap(k, pc);
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let pivot = pivot_row[colperm[k]].clone();
        for row in tail.iter_mut() {
            let lead = row[colperm[k]].clone();
            for &c in &colperm[k + 1..] {
                let keep = !row[c].is_zero();
                let cross = !lead.is_zero() && !pivot_row[c].is_zero();
                if !keep && !cross {
                    continue;
                }
                let mut v = &pivot * &row[c];
                if cross {
                    v -= &lead * &pivot_row[c];
                }
                row[c] = v / &prev;
            }
            row[colperm[k]] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Reduced row echelon form and its pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<Scalar>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut().skip(c) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let (head, tail) = a.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().expect("row r exists");
        for row in head.iter_mut().chain(tail.iter_mut()) {
            let factor = row[c].clone();
            if factor.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(pivot_row.iter()).skip(c) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (Matrix::from_rows_sized(a, cols), pivots)
}

impl Matrix {
    fn from_rows_sized(rows: Vec<Vec<Scalar>>, cols: usize) -> Matrix {
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }
}

/// Basis of `{v : M v = 0}`, one vector per free column, in increasing column order.
pub fn nullspace(m: &Matrix) -> Vec<Vec<Scalar>> {
    let (e, pivots) = rref(m);
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -e.get(r, f).clone();
            }
            v
        })
        .collect()
}

/// Nonzero rows of the RREF of the span of `vectors`.
pub fn row_space_basis(len: usize, vectors: &[Vec<Scalar>]) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    if vectors.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let (e, pivots) = rref(&Matrix::from_rows_sized(vectors.to_vec(), len));
    (
        (0..pivots.len()).map(|i| e.row(i).to_vec()).collect(),
        pivots,
    )
}

/// Rank of a list of vectors.
pub fn vectors_rank(len: usize, vectors: &[Vec<Scalar>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    exact_rank(&Matrix::from_rows_sized(vectors.to_vec(), len))
}
