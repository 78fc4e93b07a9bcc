//! Dense matrices over the rationals with exact arithmetic.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Rational::one())
    }

    pub fn scalar(n: usize, c: Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    /// Builds a matrix from integer rows. All rows must have the same length.
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| rat(rows[i][j]))
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Product of a chain of matrices, left to right.
    pub fn chain(ms: &[&RatMatrix]) -> Result<RatMatrix> {
        let mut iter = ms.iter();
        let first = (*iter.next().expect("non-empty chain")).clone();
        iter.try_fold(first, |acc, m| acc.mul(m))
    }

    fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    /// Row echelon form by Gaussian elimination. Returns the reduced matrix,
    /// the pivot columns and the determinant sign flips.
    fn echelon(&self) -> (RatMatrix, Vec<usize>, bool) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut negated = false;
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            if p != row {
                m.swap_rows(p, row);
                negated = !negated;
            }
            let inv = m[(row, col)].recip();
            for c in col..m.cols {
                let v = &m[(row, c)] * &inv;
                m[(row, c)] = v;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    let delta = &factor * &m[(row, c)];
                    m[(r, c)] -= delta;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots, negated)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    pub fn det(&self) -> Result<Rational> {
        self.require_square()?;
        Ok(self.det_unchecked())
    }

    fn det_unchecked(&self) -> Rational {
        let n = self.rows;
        if n == 0 {
            return Rational::one();
        }
        let mut m = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Rational::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det *= &pivot;
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = &m[(r, col)] / &pivot;
                for c in col..n {
                    let delta = &factor * &m[(col, c)];
                    m[(r, c)] -= delta;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        self.require_square()?;
        let n = self.rows;
        let augmented = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let (reduced, pivots, _) = augmented.echelon();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
            return Err(Error::Singular(format!("{n}x{n} matrix has no inverse")));
        }
        Ok(Self::from_fn(n, n, |i, j| reduced[(i, j + n)].clone()))
    }

    /// The matrix with row `r` and column `c` removed.
    pub fn minor(&self, r: usize, c: usize) -> RatMatrix {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != r) {
            for j in (0..self.cols).filter(|&j| j != c) {
                data.push(self[(i, j)].clone());
            }
        }
        RatMatrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }

    /// The classical adjugate: entry `(i, j)` is `(-1)^(i+j)` times the
    /// determinant of the minor omitting row `j` and column `i`.
    ///
    /// `M * adj(M) = adj(M) * M = det(M) I` holds for every square `M`,
    /// singular or not. The adjugate of a `1x1` matrix is `[1]`.
    pub fn adjugate(&self) -> Result<RatMatrix> {
        self.require_square()?;
        let n = self.rows;
        if n == 1 {
            return Ok(Self::identity(1));
        }
        Ok(Self::from_fn(n, n, |i, j| {
            let d = self.minor(j, i).det_unchecked();
            if (i + j) % 2 == 0 {
                d
            } else {
                -d
            }
        }))
    }

    /// A basis of the right kernel `{x : M x = 0}`, one column vector per entry.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (reduced, pivots, _) = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    x[p] = -reduced[(row, f)].clone();
                }
                x
            })
            .collect()
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

/// Rank of a list of integer vectors over the rationals.
pub fn integer_rank(vectors: &[Vec<i64>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    RatMatrix::from_i64(vectors).rank()
}

/// Scales a rational vector to the primitive integer vector on its ray.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign = if ints
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative())
    {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    ints.into_iter().map(|x| x / &g * &sign).collect()
}
