//! The substitutions `F -> G -> H -> I` that turn the class equations into
//! a two-term recurrence with a product solution.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::murraymiller::QDifferenceEquation;
use crate::nandi;
use crate::qalgebra::QSeries;

use super::{solve_equation, QSeriesError, XSeries};

/// Parameters `(s, t)` of class `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassParams {
    pub s: usize,
    pub t: usize,
}

impl ClassParams {
    pub fn of(a: usize) -> Result<Self, QSeriesError> {
        match a {
            1 => Ok(ClassParams { s: 0, t: 0 }),
            2 => Ok(ClassParams { s: 0, t: 1 }),
            3 => Ok(ClassParams { s: 1, t: 1 }),
            _ => Err(QSeriesError::UnknownClass(a)),
        }
    }
}

fn int(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

/// `(-q^{1+s}; q)_{2M}`.
fn neg_poch(s: usize, m: usize, order: usize) -> QSeries {
    QSeries::pochhammer(&int(-1), 1 + s, 1, Some(2 * m), order)
}

/// `F`, `G = F / (x; q^2)_inf`, `H` with `h_M = g_M / (-q^{1+s}; q)_{2M}`,
/// and `I = H (x; q^2)_inf`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub params: ClassParams,
    pub f: XSeries,
    pub g: XSeries,
    pub h: XSeries,
    pub i: XSeries,
}

pub fn transform_chain(a: usize, x_order: usize, q_order: usize) -> Result<Chain, QSeriesError> {
    let params = ClassParams::of(a)?;
    let eq = QDifferenceEquation::new(2, 0, nandi::equation(a - 1));
    let f = solve_equation(&eq, x_order, q_order)?;
    Ok(chain_from(params, f))
}

fn chain_from(params: ClassParams, f: XSeries) -> Chain {
    let q_order = f.q_order();
    let g = f.div_x_q2_infinite();
    let h = XSeries::new(
        g.coeffs()
            .iter()
            .enumerate()
            .map(|(m, gm)| {
                gm.div(&neg_poch(params.s, m, q_order))
                    .expect("constant term 1")
            })
            .collect(),
    );
    let i = h.mul_x_q2_infinite();
    Chain { params, f, g, h, i }
}

/// Rebuilds `F` from `I` by inverting the three substitutions.
pub fn untransform(params: ClassParams, i: &XSeries) -> XSeries {
    let q_order = i.q_order();
    let h = i.div_x_q2_infinite();
    let g = XSeries::new(
        h.coeffs()
            .iter()
            .enumerate()
            .map(|(m, hm)| hm.mul(&neg_poch(params.s, m, q_order)))
            .collect(),
    );
    g.mul_x_q2_infinite()
}

/// `(-1)^M q^{M(M+2t)} / ((-q^{1+s}; q)_{2M} (q^2; q^2)_M)`.
pub fn closed_form_i(params: ClassParams, m: usize, order: usize) -> QSeries {
    let e = m * (m + 2 * params.t);
    if e > order {
        return QSeries::zero(order);
    }
    let sign = if m.is_multiple_of(2) { int(1) } else { int(-1) };
    let num = QSeries::monomial(sign, e, order);
    let den = neg_poch(params.s, m, order).mul(&QSeries::pochhammer(
        &BigRational::one(),
        2,
        2,
        Some(m),
        order,
    ));
    num.div(&den).expect("constant term 1")
}

/// `(1 - q^{2M})(1 + q^{2M-1+s})(1 + q^{2M+s}) i_M + q^{2M-1+2t} i_{M-1}` for
/// `1 <= M <= x_order`.
pub fn i_recurrence_residual(chain: &Chain) -> Vec<QSeries> {
    let i = &chain.i;
    let (s, t) = (chain.params.s, chain.params.t);
    let order = i.q_order();
    let one = BigRational::one();
    (1..=i.x_order())
        .map(|m| {
            let mut lhs = i.coeff(m as i64);
            lhs.mul_binomial(&one, 2 * m);
            lhs.mul_binomial(&int(-1), 2 * m - 1 + s);
            lhs.mul_binomial(&int(-1), 2 * m + s);
            lhs.add(&i.coeff(m as i64 - 1).shift(2 * m - 1 + 2 * t))
                .truncate(order)
        })
        .collect()
}

/// Polynomial in `q` from `(coefficient, exponent)` pairs; exponents must be
/// non-negative.
fn qpoly(terms: &[(i64, i64)], order: usize) -> QSeries {
    terms.iter().fold(QSeries::zero(order), |acc, &(c, e)| {
        assert!(e >= 0, "negative power of q");
        if e as usize > order {
            acc
        } else {
            acc.add(&QSeries::monomial(int(c), e as usize, order))
        }
    })
}

fn product(factors: &[QSeries]) -> QSeries {
    factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, f| acc.mul(f))
}

/// Residuals of the class-1 recurrence for `g_M`, for `0 <= M <= x_order`:
///
/// `(1 - q^{2M}) g_M + (-1 - q^2 - q^4 - q^{2M+1} + q^{4M}) g_{M-1}
///  + q^2 (1 + q^2 + q^4 - q^{2M-3})(1 + q^{2M-3})(1 + q^{2M-2}) g_{M-2}
///  - q^6 (1 - q^{2M-5})(1 + q^{2M-5})(1 + q^{2M-4})(1 + q^{2M-3})(1 + q^{2M-2}) g_{M-3}`.
pub fn g_recurrence_residual(g: &XSeries) -> Vec<QSeries> {
    let order = g.q_order();
    (0..=g.x_order() as i64)
        .map(|m| {
            let mut acc = qpoly(&[(1, 0), (-1, 2 * m)], order).mul(&g.coeff(m));
            if m >= 1 {
                let c = qpoly(&[(-1, 0), (-1, 2), (-1, 4), (-1, 2 * m + 1), (1, 4 * m)], order);
                acc = acc.add(&c.mul(&g.coeff(m - 1)));
            }
            if m >= 2 {
                let c = product(&[
                    qpoly(&[(1, 2), (1, 4), (1, 6), (-1, 2 * m - 1)], order),
                    qpoly(&[(1, 0), (1, 2 * m - 3)], order),
                    qpoly(&[(1, 0), (1, 2 * m - 2)], order),
                ]);
                acc = acc.add(&c.mul(&g.coeff(m - 2)));
            }
            if m >= 3 {
                let c = product(&[
                    qpoly(&[(1, 6), (-1, 2 * m + 1)], order),
                    qpoly(&[(1, 0), (1, 2 * m - 5)], order),
                    qpoly(&[(1, 0), (1, 2 * m - 4)], order),
                    qpoly(&[(1, 0), (1, 2 * m - 3)], order),
                    qpoly(&[(1, 0), (1, 2 * m - 2)], order),
                ]);
                acc = acc.sub(&c.mul(&g.coeff(m - 3)));
            }
            acc
        })
        .collect()
}

/// Residual of the class-1 functional equation for `G`:
///
/// `(1-x)(1-xq^2)(1-xq^4) G(x) - (1-xq^2)(1-xq^4)(1+xq^2+xq^3+xq^4) G(xq^2)
///  + xq^4 (1-xq^4)(1-x+xq^3+xq^4+xq^5) G(xq^4)
///  - x^2 q^6 (1-xq^4-xq^5-xq^6+xq^9) G(xq^6)
///  + x^3 q^13 (1+q+q^2) G(xq^8) + x^3 q^17 G(xq^10)`.
pub fn reference_g_equation_residual(g: &XSeries) -> XSeries {
    use crate::qalgebra::parse_poly;
    let coeffs = [
        "(1 - x)*(1 - x*q^2)*(1 - x*q^4)",
        "-(1 - x*q^2)*(1 - x*q^4)*(1 + x*q^2 + x*q^3 + x*q^4)",
        "x*q^4*(1 - x*q^4)*(1 - x + x*q^3 + x*q^4 + x*q^5)",
        "-x^2*q^6*(1 - x*q^4 - x*q^5 - x*q^6 + x*q^9)",
        "x^3*q^13*(1 + q + q^2)",
        "x^3*q^17",
    ];
    coeffs
        .iter()
        .enumerate()
        .fold(XSeries::zero(g.x_order(), g.q_order()), |acc, (i, c)| {
            let p = parse_poly(c).expect("fixed polynomial");
            acc.add(&g.shift_x(2 * i).mul_poly(&p))
        })
}

/// Residual of the class-1 functional equation for `H`:
///
/// `q(1-x)(1-xq^2)(1-xq^4) H(x) + (1-xq^2)(1-xq^4)(1+xq^2) H(xq^2)
///  - q(1-xq^4) H(xq^4) - H(xq^6)`.
pub fn h_equation_residual(h: &XSeries) -> XSeries {
    use crate::qalgebra::parse_poly;
    let coeffs = [
        "q*(1 - x)*(1 - x*q^2)*(1 - x*q^4)",
        "(1 - x*q^2)*(1 - x*q^4)*(1 + x*q^2)",
        "-q*(1 - x*q^4)",
        "-1",
    ];
    coeffs
        .iter()
        .enumerate()
        .fold(XSeries::zero(h.x_order(), h.q_order()), |acc, (i, c)| {
            let p = parse_poly(c).expect("fixed polynomial");
            acc.add(&h.shift_x(2 * i).mul_poly(&p))
        })
}

/// `g_L` from its closed form
/// `sum_{M <= L} (-1)^M q^{M(M+2t)} (-q^{1+s};q)_{2L}
///   / ((q^2;q^2)_{L-M} (-q^{1+s};q)_{2M} (q^2;q^2)_M)`.
fn g_closed(params: ClassParams, l: usize, order: usize) -> QSeries {
    let one = BigRational::one();
    let top = neg_poch(params.s, l, order);
    (0..=l).fold(QSeries::zero(order), |acc, m| {
        let e = m * (m + 2 * params.t);
        if e > order {
            return acc;
        }
        let den = QSeries::pochhammer(&one, 2, 2, Some(l - m), order)
            .mul(&QSeries::pochhammer(&one, 2, 2, Some(m), order))
            .mul(&neg_poch(params.s, m, order));
        let sign = if m % 2 == 0 { int(1) } else { int(-1) };
        let term = top
            .mul(&QSeries::monomial(sign, e, order))
            .div(&den)
            .expect("constant term 1");
        acc.add(&term)
    })
}

/// Checks that the closed form of `g_L` agrees for `L = l_max - 1` and
/// `L = l_max` through `q^q_order`, and returns
/// `(q^2;q^2)_inf lim g_L`, the value `F(1)`.
pub fn g_limit_check(a: usize, l_max: usize, q_order: usize) -> Result<QSeries, QSeriesError> {
    let params = ClassParams::of(a)?;
    let last = g_closed(params, l_max, q_order);
    if l_max > 0 {
        let prev = g_closed(params, l_max - 1, q_order);
        if let Some(k) = prev.first_mismatch(&last) {
            return Err(QSeriesError::NotStabilized(k));
        }
    }
    let q2 = QSeries::pochhammer(&BigRational::one(), 2, 2, None, q_order);
    Ok(q2.mul(&last))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::{evaluate_x1, f1_single_sum};

    #[test]
    fn i_matches_closed_form() {
        for a in 1..=3 {
            let c = transform_chain(a, 10, 40).unwrap();
            for m in 0..=10 {
                assert_eq!(
                    c.i.coeff(m as i64),
                    closed_form_i(c.params, m, 40),
                    "a = {a}, M = {m}"
                );
            }
            assert!(i_recurrence_residual(&c).iter().all(QSeries::is_zero));
        }
    }

    #[test]
    fn first_coefficients_are_one() {
        for a in 1..=3 {
            let c = transform_chain(a, 3, 10).unwrap();
            for s in [&c.f, &c.g, &c.h, &c.i] {
                assert_eq!(s.coeff(0), QSeries::one(10));
            }
        }
    }

    #[test]
    fn class_one_intermediate_equations() {
        let c = transform_chain(1, 12, 40).unwrap();
        assert!(g_recurrence_residual(&c.g).iter().all(QSeries::is_zero));
        assert!(reference_g_equation_residual(&c.g).is_zero());
        assert!(h_equation_residual(&c.h).is_zero());
    }

    #[test]
    fn chain_inverts() {
        for a in 1..=3 {
            let c = transform_chain(a, 15, 30).unwrap();
            assert_eq!(untransform(c.params, &c.i), c.f);
        }
    }

    #[test]
    fn limit_of_g() {
        for a in 1..=3 {
            let lim = g_limit_check(a, 30, 30).unwrap();
            let f = transform_chain(a, 30, 30).unwrap().f;
            assert_eq!(lim, evaluate_x1(&f, 30), "a = {a}");
            assert_eq!(lim, f1_single_sum(a, 30).unwrap());
        }
        assert_eq!(g_limit_check(1, 0, 0).unwrap(), QSeries::one(0));
        assert!(matches!(g_limit_check(1, 3, 30), Err(QSeriesError::NotStabilized(_))));
        assert_eq!(g_limit_check(4, 3, 3), Err(QSeriesError::UnknownClass(4)));
    }
}
