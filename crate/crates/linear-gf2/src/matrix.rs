//! Dense bit matrices over GF(2), up to 64 columns, with rank, product,
//! row-sparsity, and the `m n` + 0/1-rows text format.

use crate::error::LinearError;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    m: usize,
    n: usize,
    rows: Vec<u64>,
}

impl Gf2Matrix {
    pub fn new(m: usize, n: usize, rows: Vec<u64>) -> Result<Gf2Matrix, LinearError> {
        if n > 64 {
            return Err(LinearError::InvalidParams(format!(
                "at most 64 columns supported, got {n}"
            )));
        }
        if rows.len() != m {
            return Err(LinearError::InvalidParams(format!(
                "expected {m} rows, got {}",
                rows.len()
            )));
        }
        let mask = Self::col_mask(n);
        if rows.iter().any(|r| r & !mask != 0) {
            return Err(LinearError::InvalidParams(
                "row has bits beyond the column count".into(),
            ));
        }
        Ok(Gf2Matrix { m, n, rows })
    }

    fn col_mask(n: usize) -> u64 {
        if n == 64 {
            u64::MAX
        } else {
            (1u64 << n) - 1
        }
    }

    pub fn zero(m: usize, n: usize) -> Gf2Matrix {
        Gf2Matrix {
            m,
            n,
            rows: vec![0; m],
        }
    }

    pub fn identity(n: usize) -> Gf2Matrix {
        Gf2Matrix {
            m: n,
            n,
            rows: (0..n).map(|i| 1u64 << i).collect(),
        }
    }

    /// Upper triangular pattern: entry `(i, j) = 1` iff `j >= i`.
    pub fn upper_triangular(n: usize) -> Gf2Matrix {
        let mask = Self::col_mask(n);
        Gf2Matrix {
            m: n,
            n,
            rows: (0..n).map(|i| mask & !((1u64 << i) - 1)).collect(),
        }
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    /// Maximum number of ones in a row.
    pub fn row_sparsity(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).max().unwrap_or(0)
    }

    pub fn xor(&self, other: &Gf2Matrix) -> Result<Gf2Matrix, LinearError> {
        if self.dims() != other.dims() {
            return Err(LinearError::DimensionMismatch {
                left: self.dims(),
                right: other.dims(),
            });
        }
        Ok(Gf2Matrix {
            m: self.m,
            n: self.n,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    /// `self · other` with `self: m×w`, `other: w×n`.
    pub fn mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix, LinearError> {
        if self.n != other.m {
            return Err(LinearError::DimensionMismatch {
                left: self.dims(),
                right: other.dims(),
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                let mut acc = 0u64;
                let mut bits = r;
                while bits != 0 {
                    let j = bits.trailing_zeros() as usize;
                    acc ^= other.rows[j];
                    bits &= bits - 1;
                }
                acc
            })
            .collect();
        Gf2Matrix::new(self.m, other.n, rows)
    }

    /// `Mx` for a column vector packed into a word.
    pub fn apply(&self, x: u64) -> u64 {
        let mut out = 0u64;
        for (i, &r) in self.rows.iter().enumerate() {
            if (r & x).count_ones() & 1 == 1 {
                out |= 1 << i;
            }
        }
        out
    }

    /// Rank over GF(2) by Gaussian elimination on rows.
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.n {
            let bit = 1u64 << col;
            let Some(p) = (rank..rows.len()).find(|&i| rows[i] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && *row & bit != 0 {
                    *row ^= pivot;
                }
            }
            rank += 1;
        }
        rank
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.m, self.n)?;
        for r in &self.rows {
            for j in 0..self.n {
                write!(f, "{}", r >> j & 1)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn write_matrix(mx: &Gf2Matrix) -> String {
    let (m, n) = mx.dims();
    let mut s = format!("{m} {n}\n");
    for i in 0..m {
        for j in 0..n {
            s.push(if mx.get(i, j) { '1' } else { '0' });
        }
        s.push('\n');
    }
    s
}

pub fn parse_matrix(text: &str) -> Result<Gf2Matrix, LinearError> {
    let err = |line: usize, msg: &str| LinearError::Parse {
        line,
        msg: msg.to_string(),
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| err(1, "empty matrix file"))?;
    let dims: Vec<&str> = header.split_ascii_whitespace().collect();
    if dims.len() != 2 {
        return Err(err(hline, "expected header '<m> <n>'"));
    }
    let m: usize = dims[0].parse().map_err(|_| err(hline, "bad row count"))?;
    let n: usize = dims[1].parse().map_err(|_| err(hline, "bad column count"))?;
    let mut rows = Vec::with_capacity(m);
    for _ in 0..m {
        let (lno, l) = lines
            .next()
            .ok_or_else(|| err(hline, "fewer rows than the header declares"))?;
        if l.len() != n {
            return Err(err(lno, "row length disagrees with the header"));
        }
        let mut r = 0u64;
        for (j, ch) in l.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => r |= 1 << j,
                _ => return Err(err(lno, "rows must be 0/1 characters")),
            }
        }
        rows.push(r);
    }
    if lines.next().is_some() {
        return Err(err(hline, "more rows than the header declares"));
    }
    Gf2Matrix::new(m, n, rows)
}
