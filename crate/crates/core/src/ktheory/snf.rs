use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// A dense integer matrix with exact entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    #[serde(serialize_with = "serialize_entries")]
    data: Vec<BigInt>,
}

fn serialize_entries<S: serde::Serializer>(data: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(data.iter().map(|x| x.to_string()))
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row.iter().cloned().map(Into::into));
        }
        Self { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] -= q * row[src]
    fn row_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j] * q;
            self.data[dst * self.cols + j] -= s;
        }
    }

    /// col[dst] -= q * col[src]
    fn col_sub(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src] * q;
            self.data[i * self.cols + dst] -= s;
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Non-zero diagonal of the Smith normal form, `d_1 | d_2 | …`, all
/// positive. Its length is the rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub diagonal: Vec<BigInt>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

/// Diagonalizes by unimodular row and column operations, choosing at each
/// step a pivot of least absolute value and repeating until it divides the
/// rest of the block.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut diagonal = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = smallest_nonzero(&a, t) else {
                return Snf { diagonal };
            };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            let pivot = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = a.get(i, t).div_floor(&pivot);
                if !q.is_zero() {
                    a.row_sub(i, t, &q);
                }
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = a.get(t, j).div_floor(&pivot);
                if !q.is_zero() {
                    a.col_sub(j, t, &q);
                }
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            // The pivot must divide the remaining block; otherwise fold an
            // offending row into row t and go again.
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a.get(t, j) + a.get(i, j);
                        a.set(t, j, v);
                    }
                }
                None => {
                    diagonal.push(pivot.abs());
                    break;
                }
            }
        }
    }
    Snf { diagonal }
}

fn smallest_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            let abs = v.abs();
            if best.as_ref().is_none_or(|(_, b)| abs < *b) {
                let one = abs.is_one();
                best = Some(((i, j), abs));
                if one {
                    return best.map(|b| b.0);
                }
            }
        }
    }
    best.map(|b| b.0)
}
