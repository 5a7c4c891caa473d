//! Truncated power series in `q` (and in `x` and `q`) with rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::bipoly::BiPoly;
use super::ratfunc::RationalFunction;
use super::render::render_coeff;
use super::AlgebraError;

/// A power series in `q` known exactly through `q^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<BigRational>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        QSeries::monomial(BigRational::one(), 0, order)
    }

    /// `c q^e`, truncated.
    pub fn monomial(c: BigRational, e: usize, order: usize) -> Self {
        let mut s = QSeries::zero(order);
        if e <= order {
            s.coeffs[e] = c;
        }
        s
    }

    /// Coefficients of `q^0 ..= q^order`; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        QSeries { coeffs }
    }

    pub fn from_integers<I: IntoIterator<Item = BigInt>>(coeffs: I) -> Self {
        QSeries::from_coeffs(coeffs.into_iter().map(BigRational::from_integer).collect())
    }

    /// A polynomial in `q` given by `(exponent, coefficient)` pairs.
    pub fn from_q_terms<'a, I>(terms: I, order: usize) -> Self
    where
        I: IntoIterator<Item = (u32, &'a BigInt)>,
    {
        let mut s = QSeries::zero(order);
        for (e, c) in terms {
            if (e as usize) <= order {
                s.coeffs[e as usize] += BigRational::from_integer(c.clone());
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Integer coefficients, if all are integral.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn truncate(&self, order: usize) -> QSeries {
        assert!(order <= self.order(), "cannot extend a truncated series");
        QSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let n = self.order().min(other.order());
        QSeries {
            coeffs: (0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        let n = self.order().min(other.order());
        QSeries {
            coeffs: (0..=n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect(),
        }
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        let n = self.order().min(other.order());
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        QSeries { coeffs: out }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: usize) -> QSeries {
        let n = self.order();
        let mut out = vec![BigRational::zero(); n + 1];
        if k <= n {
            out[k..].clone_from_slice(&self.coeffs[..=n - k]);
        }
        QSeries { coeffs: out }
    }

    /// In place: multiply by `1 - c q^k`.
    pub fn mul_binomial(&mut self, c: &BigRational, k: usize) {
        if k == 0 {
            let f = BigRational::one() - c;
            for a in &mut self.coeffs {
                *a *= &f;
            }
            return;
        }
        for i in (k..self.coeffs.len()).rev() {
            if !self.coeffs[i - k].is_zero() {
                let d = c * &self.coeffs[i - k];
                self.coeffs[i] -= d;
            }
        }
    }

    /// In place: divide by `1 - c q^k` for `k >= 1`.
    pub fn div_binomial(&mut self, c: &BigRational, k: usize) {
        assert!(k >= 1, "division by a binomial with constant term 1 - c");
        for i in k..self.coeffs.len() {
            if !self.coeffs[i - k].is_zero() {
                let d = c * &self.coeffs[i - k];
                self.coeffs[i] += d;
            }
        }
    }

    pub fn inverse(&self) -> Result<QSeries, AlgebraError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(AlgebraError::NotInvertible);
        }
        let n = self.order();
        let inv0 = a0.recip();
        let mut out = vec![BigRational::zero(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut s = BigRational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() && !out[k - j].is_zero() {
                    s += &self.coeffs[j] * &out[k - j];
                }
            }
            out[k] = -(s * &inv0);
        }
        Ok(QSeries { coeffs: out })
    }

    pub fn div(&self, other: &QSeries) -> Result<QSeries, AlgebraError> {
        Ok(self.mul(&other.inverse()?))
    }

    /// First exponent at which the two series differ, within the common order.
    pub fn first_mismatch(&self, other: &QSeries) -> Option<usize> {
        let n = self.order().min(other.order());
        (0..=n).find(|&i| self.coeffs[i] != other.coeffs[i])
    }

    /// The finite or infinite q-Pochhammer symbol
    /// `prod_{j < n} (1 - c q^(e + step*j))` truncated at `order`.
    /// With `n = None` the product runs over all `j`; that requires `step >= 1`.
    pub fn pochhammer(
        c: &BigRational,
        e: usize,
        step: usize,
        n: Option<usize>,
        order: usize,
    ) -> QSeries {
        assert!(n.is_some() || step >= 1, "infinite product needs step >= 1");
        let mut s = QSeries::one(order);
        let mut j = 0usize;
        while n.is_none_or(|n| j < n) {
            let k = e + step * j;
            // every remaining factor is 1 modulo q^(order+1)
            if k > order {
                break;
            }
            s.mul_binomial(c, k);
            j += 1;
        }
        s
    }

    /// `1 / prod_{j < n} (1 - c q^(e + step*j))`, requiring every exponent to be positive.
    pub fn pochhammer_inverse(
        c: &BigRational,
        e: usize,
        step: usize,
        n: Option<usize>,
        order: usize,
    ) -> QSeries {
        assert!(e >= 1, "inverse Pochhammer symbol needs positive exponents");
        assert!(n.is_some() || step >= 1, "infinite product needs step >= 1");
        let mut s = QSeries::one(order);
        let mut j = 0usize;
        while n.is_none_or(|n| j < n) {
            let k = e + step * j;
            if k > order {
                break;
            }
            s.div_binomial(c, k);
            j += 1;
        }
        s
    }

    /// `1 / prod_i (q^(r_i); q^modulus)_inf` for positive residues `r_i`.
    pub fn modular_product_inverse(residues: &[usize], modulus: usize, order: usize) -> QSeries {
        let one = BigRational::one();
        let mut s = QSeries::one(order);
        for &r in residues {
            s = {
                let mut t = s;
                let mut k = r;
                assert!(k >= 1, "residues must be positive");
                while k <= order {
                    t.div_binomial(&one, k);
                    k += modulus;
                }
                t
            };
        }
        s
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            let body = match (i, a.is_one()) {
                (0, _) => render_coeff(&a),
                (_, true) if i == 1 => "q".to_string(),
                (_, true) => format!("q^{i}"),
                (1, false) => format!("{}*q", render_coeff(&a)),
                (_, false) => format!("{}*q^{i}", render_coeff(&a)),
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            f.write_str(&body)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

/// A power series in `x` and `q` known exactly for `x^i q^j` with
/// `i <= x_order` and `j <= q_order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    x_order: usize,
    q_order: usize,
    /// `c[i][j]` is the coefficient of `x^i q^j`.
    c: Vec<Vec<BigRational>>,
}

impl BiSeries {
    pub fn zero(x_order: usize, q_order: usize) -> Self {
        BiSeries {
            x_order,
            q_order,
            c: vec![vec![BigRational::zero(); q_order + 1]; x_order + 1],
        }
    }

    pub fn one(x_order: usize, q_order: usize) -> Self {
        let mut s = BiSeries::zero(x_order, q_order);
        s.c[0][0] = BigRational::one();
        s
    }

    pub fn from_poly(p: &BiPoly, x_order: usize, q_order: usize) -> Self {
        let mut s = BiSeries::zero(x_order, q_order);
        for (dx, dq, v) in p.terms() {
            let (i, j) = (dx as usize, dq as usize);
            if i <= x_order && j <= q_order {
                s.c[i][j] += BigRational::from_integer(v.clone());
            }
        }
        s
    }

    /// Expansion of a rational function whose denominator has a nonzero
    /// constant term.
    pub fn from_rational(
        r: &RationalFunction,
        x_order: usize,
        q_order: usize,
    ) -> Result<Self, AlgebraError> {
        let num = BiSeries::from_poly(r.numer(), x_order, q_order);
        let den = BiSeries::from_poly(r.denom(), x_order, q_order);
        Ok(num.mul(&den.inverse()?))
    }

    pub fn x_order(&self) -> usize {
        self.x_order
    }

    pub fn q_order(&self) -> usize {
        self.q_order
    }

    pub fn coeff(&self, i: usize, j: usize) -> &BigRational {
        &self.c[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.c[i][j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().flatten().all(Zero::is_zero)
    }

    pub fn add(&self, other: &BiSeries) -> BiSeries {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &BiSeries) -> BiSeries {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &BiSeries, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> BiSeries {
        let xo = self.x_order.min(other.x_order);
        let qo = self.q_order.min(other.q_order);
        BiSeries {
            x_order: xo,
            q_order: qo,
            c: (0..=xo)
                .map(|i| (0..=qo).map(|j| f(&self.c[i][j], &other.c[i][j])).collect())
                .collect(),
        }
    }

    pub fn mul(&self, other: &BiSeries) -> BiSeries {
        let xo = self.x_order.min(other.x_order);
        let qo = self.q_order.min(other.q_order);
        let mut out = BiSeries::zero(xo, qo);
        for i1 in 0..=xo {
            for j1 in 0..=qo {
                let a = &self.c[i1][j1];
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..=xo - i1 {
                    for j2 in 0..=qo - j1 {
                        let b = &other.c[i2][j2];
                        if !b.is_zero() {
                            out.c[i1 + i2][j1 + j2] += a * b;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn inverse(&self) -> Result<BiSeries, AlgebraError> {
        let a0 = &self.c[0][0];
        if a0.is_zero() {
            return Err(AlgebraError::NotInvertible);
        }
        let inv0 = a0.recip();
        let (xo, qo) = (self.x_order, self.q_order);
        let mut out = BiSeries::zero(xo, qo);
        for i in 0..=xo {
            for j in 0..=qo {
                if i == 0 && j == 0 {
                    out.c[0][0] = inv0.clone();
                    continue;
                }
                let mut s = BigRational::zero();
                for i1 in 0..=i {
                    for j1 in 0..=j {
                        if i1 == 0 && j1 == 0 {
                            continue;
                        }
                        let a = &self.c[i1][j1];
                        if !a.is_zero() {
                            s += a * &out.c[i - i1][j - j1];
                        }
                    }
                }
                out.c[i][j] = -(s * &inv0);
            }
        }
        Ok(out)
    }

    /// Substitutes `x -> x q^k` for `k >= 0`.
    pub fn shift_x(&self, k: usize) -> BiSeries {
        let mut out = BiSeries::zero(self.x_order, self.q_order);
        for i in 0..=self.x_order {
            for j in 0..=self.q_order {
                let t = j + k * i;
                if t <= self.q_order {
                    out.c[i][t] = self.c[i][j].clone();
                }
            }
        }
        out
    }

    /// The coefficient of `x^i` as a series in `q`.
    pub fn x_coeff(&self, i: usize) -> QSeries {
        QSeries::from_coeffs(self.c[i].clone())
    }

    /// Sum over all known `x`-coefficients. This is the value at `x = 1`
    /// when the `x`-order is large enough that higher powers of `x` carry
    /// only powers of `q` above the `q`-order.
    pub fn at_x_one(&self) -> QSeries {
        let mut out = QSeries::zero(self.q_order);
        for row in &self.c {
            out = out.add(&QSeries::from_coeffs(row.clone()));
        }
        out
    }
}
