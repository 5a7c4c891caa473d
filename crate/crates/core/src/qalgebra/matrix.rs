use std::fmt;

use super::ratfunc::RationalFunction;
use super::AlgebraError;

/// A dense matrix over `Q(x, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RfMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RationalFunction>,
}

impl RfMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        RfMatrix {
            rows,
            cols,
            data: vec![RationalFunction::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RfMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, RationalFunction::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RationalFunction>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::Shape);
        }
        Ok(RfMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalFunction {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RationalFunction) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[RationalFunction] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<RationalFunction>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &RfMatrix) -> Result<RfMatrix, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::Shape);
        }
        let mut out = RfMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Entrywise `x -> x q^k`.
    pub fn shift_x(&self, k: i64) -> RfMatrix {
        RfMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e.shift_x(k)).collect(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Simultaneous row/column permutation: entry `(i, j)` of the result is
    /// entry `(order[i], order[j])` of `self`.
    pub fn permute(&self, order: &[usize]) -> RfMatrix {
        assert!(self.is_square() && order.len() == self.rows);
        let n = self.rows;
        let mut out = RfMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(order[i], order[j]).clone());
            }
        }
        out
    }

    /// Top-left `k x k` block.
    pub fn leading_block(&self, k: usize) -> RfMatrix {
        let mut out = RfMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        out
    }

    /// Inverse of a matrix that is the identity except for row `r`, whose
    /// entries left of the diagonal vanish. Row `r` of the inverse is
    /// `(e_r - sum_{j>r} t_{rj} e_j) / t_{rr}`.
    pub fn inverse_row_elementary(&self, r: usize) -> Result<RfMatrix, AlgebraError> {
        let n = self.rows;
        if !self.is_square() || r >= n {
            return Err(AlgebraError::Shape);
        }
        for i in 0..n {
            for j in 0..n {
                let expected_identity = i != r;
                let e = self.get(i, j);
                if expected_identity {
                    let want = if i == j { e.is_one() } else { e.is_zero() };
                    if !want {
                        return Err(AlgebraError::Shape);
                    }
                } else if j < r && !e.is_zero() {
                    return Err(AlgebraError::Shape);
                }
            }
        }
        let pivot = self.get(r, r);
        if pivot.is_zero() {
            return Err(AlgebraError::SingularPivot);
        }
        let inv_pivot = pivot.inv()?;
        let mut out = RfMatrix::identity(n);
        out.set(r, r, inv_pivot.clone());
        for j in r + 1..n {
            let v = self.get(r, j);
            if !v.is_zero() {
                out.set(r, j, -(&(v * &inv_pivot)));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for RfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(0))
            .collect();
        for row in &cells {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::parse_rational;

    fn rf(s: &str) -> RationalFunction {
        parse_rational(s).unwrap()
    }

    fn elementary() -> RfMatrix {
        RfMatrix::from_rows(vec![
            vec![rf("1"), rf("0"), rf("0")],
            vec![rf("0"), rf("x*q^2"), rf("1 + x")],
            vec![rf("0"), rf("0"), rf("1")],
        ])
        .unwrap()
    }

    #[test]
    fn elementary_inverse_round_trips() {
        let t = elementary();
        let inv = t.inverse_row_elementary(1).unwrap();
        assert_eq!(t.mul(&inv).unwrap(), RfMatrix::identity(3));
        assert_eq!(inv.mul(&t).unwrap(), RfMatrix::identity(3));
    }

    #[test]
    fn singular_pivot_is_reported() {
        let mut t = elementary();
        t.set(1, 1, RationalFunction::zero());
        assert_eq!(t.inverse_row_elementary(1), Err(AlgebraError::SingularPivot));
    }

    #[test]
    fn identity_is_neutral() {
        let p = RfMatrix::from_rows(vec![
            vec![rf("x"), rf("1/(1 - q)")],
            vec![rf("q^3"), rf("x^2 - q")],
        ])
        .unwrap();
        assert_eq!(RfMatrix::identity(2).mul(&p).unwrap(), p);
    }

    #[test]
    fn permute_reorders_both_axes() {
        let p = RfMatrix::from_rows(vec![
            vec![rf("1"), rf("2")],
            vec![rf("3"), rf("4")],
        ])
        .unwrap();
        let s = p.permute(&[1, 0]);
        assert_eq!(s.get(0, 0), &rf("4"));
        assert_eq!(s.get(0, 1), &rf("3"));
    }
}
