//! Exact truncated series in `x` with `q`-series coefficients, solving
//! q-difference equations as recurrences, and the product/sum identities
//! behind the mod 14 theorem.

mod chain;
mod identities;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::murraymiller::QDifferenceEquation;
use crate::qalgebra::{BiPoly, BiSeries, QSeries};

pub use chain::{
    closed_form_i, g_limit_check, g_recurrence_residual, h_equation_residual,
    i_recurrence_residual, reference_g_equation_residual, transform_chain, untransform,
    Chain, ClassParams,
};
pub use identities::{
    class_product, double_sum, euler_check, euler_sides, f1_single_sum, remark_product,
    remark_single_sum, remark_single_sum_check, slater_check, slater_sides, EulerIdentity,
    SLATER_PARAMS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QSeriesError {
    #[error("equation must be normalized: offset 0 and polynomial coefficients")]
    NotNormalized,
    #[error("constant terms do not admit F(0) = 1")]
    NoUnitSolution,
    #[error("recurrence coefficient of f_{0} is not invertible")]
    NotInvertible(usize),
    #[error("class index must be 1, 2 or 3, got {0}")]
    UnknownClass(usize),
    #[error("x = c q^k needs k >= 1")]
    NonPositivePower,
    #[error("g_L has not stabilized at q^{0}")]
    NotStabilized(usize),
}

/// `sum_M f_M(q) x^M` for `M <= x_order`, each `f_M` truncated at
/// `q^q_order`. Coefficients of negative powers are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSeries {
    q_order: usize,
    coeffs: Vec<QSeries>,
}

impl XSeries {
    pub fn zero(x_order: usize, q_order: usize) -> Self {
        XSeries {
            q_order,
            coeffs: vec![QSeries::zero(q_order); x_order + 1],
        }
    }

    pub fn one(x_order: usize, q_order: usize) -> Self {
        let mut s = XSeries::zero(x_order, q_order);
        s.coeffs[0] = QSeries::one(q_order);
        s
    }

    /// All coefficients are truncated to the smallest order among them.
    pub fn new(coeffs: Vec<QSeries>) -> Self {
        assert!(!coeffs.is_empty(), "an x-series needs at least f_0");
        let q_order = coeffs.iter().map(QSeries::order).min().expect("nonempty");
        XSeries {
            q_order,
            coeffs: coeffs.iter().map(|c| c.truncate(q_order)).collect(),
        }
    }

    pub fn from_bi(b: &BiSeries) -> Self {
        XSeries::new((0..=b.x_order()).map(|i| b.x_coeff(i)).collect())
    }

    pub fn to_bi(&self) -> BiSeries {
        let mut b = BiSeries::zero(self.x_order(), self.q_order);
        for (i, c) in self.coeffs.iter().enumerate() {
            for (j, v) in c.coeffs().iter().enumerate() {
                if !v.is_zero() {
                    b.set(i, j, v.clone());
                }
            }
        }
        b
    }

    pub fn x_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn q_order(&self) -> usize {
        self.q_order
    }

    /// `f_M`; zero for negative `M`.
    pub fn coeff(&self, m: i64) -> QSeries {
        if m < 0 {
            QSeries::zero(self.q_order)
        } else {
            self.coeffs[m as usize].clone()
        }
    }

    pub fn coeffs(&self) -> &[QSeries] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(QSeries::is_zero)
    }

    pub fn truncate(&self, x_order: usize, q_order: usize) -> XSeries {
        XSeries {
            q_order: q_order.min(self.q_order),
            coeffs: self.coeffs[..=x_order.min(self.x_order())]
                .iter()
                .map(|c| c.truncate(q_order))
                .collect(),
        }
    }

    fn zip(&self, other: &XSeries, f: impl Fn(&QSeries, &QSeries) -> QSeries) -> XSeries {
        let n = self.x_order().min(other.x_order());
        XSeries::new((0..=n).map(|i| f(&self.coeffs[i], &other.coeffs[i])).collect())
    }

    pub fn add(&self, other: &XSeries) -> XSeries {
        self.zip(other, QSeries::add)
    }

    pub fn sub(&self, other: &XSeries) -> XSeries {
        self.zip(other, QSeries::sub)
    }

    /// Multiplies by a polynomial in `x` and `q` with rational coefficients,
    /// given as `(dx, dq, c)` terms.
    pub fn mul_terms(&self, terms: &[(usize, usize, BigRational)]) -> XSeries {
        let mut out = XSeries::zero(self.x_order(), self.q_order);
        for (dx, dq, c) in terms {
            for m in *dx..=self.x_order() {
                let t = self.coeffs[m - dx].shift(*dq).scale(c);
                out.coeffs[m] = out.coeffs[m].add(&t);
            }
        }
        out
    }

    pub fn mul_poly(&self, p: &BiPoly) -> XSeries {
        self.mul_terms(&poly_terms(p, &BigInt::one()))
    }

    /// `x -> x q^k`.
    pub fn shift_x(&self, k: usize) -> XSeries {
        XSeries {
            q_order: self.q_order,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(m, c)| c.shift(k * m))
                .collect(),
        }
    }

    /// Multiplies by `1 - c x q^k`.
    pub fn mul_x_binomial(&self, c: &BigRational, k: usize) -> XSeries {
        let mut out = self.clone();
        for m in (1..=self.x_order()).rev() {
            let t = self.coeffs[m - 1].shift(k).scale(c);
            out.coeffs[m] = out.coeffs[m].sub(&t);
        }
        out
    }

    /// Divides by `1 - c x q^k`.
    pub fn div_x_binomial(&self, c: &BigRational, k: usize) -> XSeries {
        let mut out = self.clone();
        for m in 1..=self.x_order() {
            let t = out.coeffs[m - 1].shift(k).scale(c);
            out.coeffs[m] = out.coeffs[m].add(&t);
        }
        out
    }

    /// Multiplies by `(x; q^2)_inf`, keeping the factors that matter within
    /// the truncation.
    pub fn mul_x_q2_infinite(&self) -> XSeries {
        let one = BigRational::one();
        let mut out = self.clone();
        let mut k = 0;
        while k <= self.q_order {
            out = out.mul_x_binomial(&one, k);
            k += 2;
        }
        out
    }

    /// Divides by `(x; q^2)_inf`.
    pub fn div_x_q2_infinite(&self) -> XSeries {
        let one = BigRational::one();
        let mut out = self.clone();
        let mut k = 0;
        while k <= self.q_order {
            out = out.div_x_binomial(&one, k);
            k += 2;
        }
        out
    }

    /// `sum_M f_M`, valid through `q^q_order` when terms beyond the
    /// x-truncation only carry higher powers of `q`.
    pub fn at_x_one(&self) -> QSeries {
        self.coeffs
            .iter()
            .fold(QSeries::zero(self.q_order), |acc, c| acc.add(c))
    }
}

/// `(dx, dq, c)` for the term `c x^dx q^dq`.
type Terms = Vec<(usize, usize, BigRational)>;

fn poly_terms(p: &BiPoly, den: &BigInt) -> Terms {
    p.terms()
        .map(|(dx, dq, c)| {
            (dx as usize, dq as usize, BigRational::new(c.clone(), den.clone()))
        })
        .collect()
}

/// `(dx, dq, c)` terms of each coefficient of a normalized equation.
fn equation_terms(
    eq: &QDifferenceEquation,
) -> Result<Vec<Terms>, QSeriesError> {
    if eq.offset() != 0 {
        return Err(QSeriesError::NotNormalized);
    }
    eq.coeffs()
        .iter()
        .map(|c| {
            let den = c.denom().as_constant().ok_or(QSeriesError::NotNormalized)?;
            Ok(poly_terms(c.numer(), &den))
        })
        .collect()
}

/// The series solution with `f_0 = 1` of a normalized equation
/// `sum_i p_i(x) F(x q^{m i}) = 0`, through `x^x_order` and `q^q_order`.
///
/// The `x^M` coefficient of the equation reads
/// `sum_{i,a,b} c_{iab} q^{b + m i (M - a)} f_{M-a} = 0`, which is solved for
/// `f_M`.
pub fn solve_equation(
    eq: &QDifferenceEquation,
    x_order: usize,
    q_order: usize,
) -> Result<XSeries, QSeriesError> {
    let terms = equation_terms(eq)?;
    let m = eq.step() as usize;
    let mut f: Vec<QSeries> = Vec::with_capacity(x_order + 1);
    for big_m in 0..=x_order {
        let mut diag = QSeries::zero(q_order);
        let mut rest = QSeries::zero(q_order);
        for (i, p) in terms.iter().enumerate() {
            for (a, b, c) in p {
                if *a > big_m {
                    continue;
                }
                let e = b + m * i * (big_m - a);
                if e > q_order {
                    continue;
                }
                if *a == 0 {
                    diag = diag.add(&QSeries::monomial(c.clone(), e, q_order));
                } else {
                    rest = rest.add(&f[big_m - a].shift(e).scale(c));
                }
            }
        }
        let fm = if big_m == 0 {
            if !diag.is_zero() {
                return Err(QSeriesError::NoUnitSolution);
            }
            QSeries::one(q_order)
        } else {
            let inv = diag
                .inverse()
                .map_err(|_| QSeriesError::NotInvertible(big_m))?;
            rest.neg().mul(&inv)
        };
        f.push(fm);
    }
    Ok(XSeries::new(f))
}

/// `sum_i p_i(x) F(x q^{m i})` truncated to the orders of `f`.
pub fn equation_residual(eq: &QDifferenceEquation, f: &XSeries) -> Result<XSeries, QSeriesError> {
    let terms = equation_terms(eq)?;
    let m = eq.step() as usize;
    let mut acc = XSeries::zero(f.x_order(), f.q_order());
    for (i, p) in terms.iter().enumerate() {
        acc = acc.add(&f.shift_x(m * i).mul_terms(p));
    }
    Ok(acc)
}

/// `F(1)` through `q^q_order`; the x-truncation of `f` must be at least
/// `q_order` for classes of partitions with positive parts.
pub fn evaluate_x1(f: &XSeries, q_order: usize) -> QSeries {
    f.at_x_one().truncate(q_order)
}
