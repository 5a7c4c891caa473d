use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::qalgebra::QSeries;

use super::chain::ClassParams;
use super::QSeriesError;

fn int(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

fn sign(n: usize) -> BigRational {
    if n.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// `(q^e; q^step)_n` with `n = None` for the infinite product.
fn poch(e: usize, step: usize, n: Option<usize>, order: usize) -> QSeries {
    QSeries::pochhammer(&BigRational::one(), e, step, n, order)
}

fn poch_inv(e: usize, step: usize, n: Option<usize>, order: usize) -> QSeries {
    QSeries::pochhammer_inverse(&BigRational::one(), e, step, n, order)
}

/// Residues mod 14 of the parts in the product side for class `a`.
fn class_residues(a: usize) -> Result<[usize; 6], QSeriesError> {
    match a {
        1 => Ok([2, 3, 4, 10, 11, 12]),
        2 => Ok([1, 4, 6, 8, 10, 13]),
        3 => Ok([2, 5, 6, 8, 9, 12]),
        _ => Err(QSeriesError::UnknownClass(a)),
    }
}

/// `1 / prod_{r} (q^r; q^14)_inf` over the class residues.
pub fn class_product(a: usize, order: usize) -> Result<QSeries, QSeriesError> {
    Ok(QSeries::modular_product_inverse(&class_residues(a)?, 14, order))
}

/// `sum_{i,j} (-1)^j q^{C(i,2) + 2C(j,2) + 2ij + A_a(i,j)} / ((q;q)_i (q^2;q^2)_j)`
/// with `A_1 = i + j`, `A_2 = i + 3j`, `A_3 = 2i + 3j`.
pub fn double_sum(a: usize, order: usize) -> Result<QSeries, QSeriesError> {
    let (ai, aj) = match a {
        1 => (1, 1),
        2 => (1, 3),
        3 => (2, 3),
        _ => return Err(QSeriesError::UnknownClass(a)),
    };
    let mut acc = QSeries::zero(order);
    for i in 0.. {
        if binom2(i) + ai * i > order {
            break;
        }
        for j in 0.. {
            let e = binom2(i) + 2 * binom2(j) + 2 * i * j + ai * i + aj * j;
            if e > order {
                break;
            }
            let den = poch(1, 1, Some(i), order).mul(&poch(2, 2, Some(j), order));
            let term = QSeries::monomial(sign(j), e, order)
                .div(&den)
                .expect("constant term 1");
            acc = acc.add(&term);
        }
    }
    Ok(acc)
}

/// `sum_M (-1)^M q^{M(M+2t)} / ((-q;q)_{2M+s} (q^2;q^2)_M)`.
fn slater_sum(s: usize, t: usize, order: usize) -> QSeries {
    let mut acc = QSeries::zero(order);
    for n in 0.. {
        let e = n * (n + 2 * t);
        if e > order {
            break;
        }
        let den = QSeries::pochhammer(&int(-1), 1, 1, Some(2 * n + s), order)
            .mul(&poch(2, 2, Some(n), order));
        acc = acc.add(
            &QSeries::monomial(sign(n), e, order)
                .div(&den)
                .expect("constant term 1"),
        );
    }
    acc
}

/// `(-q;q)_inf sum_M (-1)^M q^{M(M+2t)} / ((-q;q)_{2M+s} (q^2;q^2)_M)`, the
/// value at `x = 1` of the class-`a` series.
pub fn f1_single_sum(a: usize, order: usize) -> Result<QSeries, QSeriesError> {
    let p = ClassParams::of(a)?;
    let lead = QSeries::pochhammer(&int(-1), 1, 1, None, order);
    Ok(lead.mul(&slater_sum(p.s, p.t, order)))
}

/// Parameters `(b, s, t)` of the three mod 28 identities, for classes 1, 2, 3.
pub const SLATER_PARAMS: [(usize, usize, usize); 3] = [(3, 0, 0), (1, 0, 1), (5, 1, 1)];

/// Both sides of
/// `sum_n (-1)^n q^{n(n+2t)} / ((-q;q)_{2n+s} (q^2;q^2)_n)
///  = (q;q^2)_inf / (q^2;q^2)_inf
///    * (q^{2b}, q^{14-2b}, q^14; q^14)_inf / (q^b, q^{14-b}; q^14)_inf`.
pub fn slater_sides(b: usize, s: usize, t: usize, order: usize) -> (QSeries, QSeries) {
    let lhs = slater_sum(s, t, order);
    let rhs = product_of(&[
        poch(1, 2, None, order),
        poch_inv(2, 2, None, order),
        poch(2 * b, 14, None, order),
        poch(14 - 2 * b, 14, None, order),
        poch(14, 14, None, order),
        poch_inv(b, 14, None, order),
        poch_inv(14 - b, 14, None, order),
    ]);
    (lhs, rhs)
}

pub fn slater_check(b: usize, s: usize, t: usize, order: usize) -> bool {
    let (l, r) = slater_sides(b, s, t, order);
    l == r
}

fn product_of(factors: &[QSeries]) -> QSeries {
    factors.iter().skip(1).fold(factors[0].clone(), |acc, f| acc.mul(f))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EulerIdentity {
    /// `sum x^n / (q;q)_n = 1 / (x;q)_inf`
    A,
    /// `sum q^{C(n,2)} x^n / (q;q)_n = (-x;q)_inf`
    B,
}

/// Both sides of an Euler identity at `x = c q^k`; `k >= 1` unless `c = 0`.
pub fn euler_sides(
    which: EulerIdentity,
    c: &BigRational,
    k: usize,
    order: usize,
) -> Result<(QSeries, QSeries), QSeriesError> {
    if c.is_zero() {
        return Ok((QSeries::one(order), QSeries::one(order)));
    }
    if k == 0 {
        return Err(QSeriesError::NonPositivePower);
    }
    let mut lhs = QSeries::zero(order);
    let mut cn = BigRational::one();
    for n in 0.. {
        let e = k * n + if which == EulerIdentity::B { binom2(n) } else { 0 };
        if e > order {
            break;
        }
        let term = QSeries::monomial(cn.clone(), e, order)
            .mul(&poch_inv(1, 1, Some(n), order).truncate(order));
        lhs = lhs.add(&term);
        cn *= c;
    }
    let rhs = match which {
        EulerIdentity::A => QSeries::pochhammer_inverse(c, k, 1, None, order),
        EulerIdentity::B => QSeries::pochhammer(&-c.clone(), k, 1, None, order),
    };
    Ok((lhs, rhs))
}

pub fn euler_check(
    which: EulerIdentity,
    c: &BigRational,
    k: usize,
    order: usize,
) -> Result<bool, QSeriesError> {
    let (l, r) = euler_sides(which, c, k, order)?;
    Ok(l == r)
}

/// `sum_i q^{C(i,2) + (1+s)i} / ((q;q)_i (q;q^2)_{i+t})`.
pub fn remark_single_sum(a: usize, order: usize) -> Result<QSeries, QSeriesError> {
    let p = ClassParams::of(a)?;
    let mut acc = QSeries::zero(order);
    for i in 0.. {
        let e = binom2(i) + (1 + p.s) * i;
        if e > order {
            break;
        }
        let den = poch(1, 1, Some(i), order).mul(&poch(1, 2, Some(i + p.t), order));
        acc = acc.add(&QSeries::monomial(int(1), e, order).div(&den).expect("constant term 1"));
    }
    Ok(acc)
}

/// `(q^a, q^{7-a}, q^7; q^7)_inf (q^{7-2a}, q^{7+2a}; q^14)_inf / ((q;q)_inf (q;q^2)_inf)`.
pub fn remark_product(a: usize, order: usize) -> Result<QSeries, QSeriesError> {
    ClassParams::of(a)?;
    Ok(product_of(&[
        poch(a, 7, None, order),
        poch(7 - a, 7, None, order),
        poch(7, 7, None, order),
        poch(7 - 2 * a, 14, None, order),
        poch(7 + 2 * a, 14, None, order),
        poch_inv(1, 1, None, order),
        poch_inv(1, 2, None, order),
    ]))
}

/// Checks, through `q^order`,
/// `N_a = sum_i (q^{1+2i+2t}; q^2)_inf q^{C(i,2)+(1+s)i} / (q;q)_i
///      = (q;q^2)_inf * remark_single_sum(a)`
/// and `remark_single_sum(a) = remark_product(a)`.
pub fn remark_single_sum_check(a: usize, order: usize) -> Result<bool, QSeriesError> {
    let p = ClassParams::of(a)?;
    let n = double_sum(a, order)?;
    let mut middle = QSeries::zero(order);
    for i in 0.. {
        let e = binom2(i) + (1 + p.s) * i;
        if e > order {
            break;
        }
        let term = QSeries::monomial(int(1), e, order)
            .mul(&poch(1 + 2 * i + 2 * p.t, 2, None, order))
            .mul(&poch_inv(1, 1, Some(i), order));
        middle = middle.add(&term);
    }
    let single = remark_single_sum(a, order)?;
    let right = poch(1, 2, None, order).mul(&single);
    Ok(n == middle && n == right && single == remark_product(a, order)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> QSeries {
        QSeries::from_integers(v.iter().map(|&c| BigInt::from(c)))
    }

    #[test]
    fn double_sum_head() {
        assert_eq!(double_sum(1, 4).unwrap(), ints(&[1, 0, 1, 1, 2]));
        for a in 1..=3 {
            assert_eq!(double_sum(a, 0).unwrap(), QSeries::one(0));
        }
        assert_eq!(double_sum(3, 30).unwrap(), class_product(3, 30).unwrap());
        assert_eq!(double_sum(0, 3), Err(QSeriesError::UnknownClass(0)));
    }

    #[test]
    fn euler_identities() {
        let one = BigRational::one();
        assert!(euler_check(EulerIdentity::A, &one, 1, 20).unwrap());
        assert!(euler_check(EulerIdentity::B, &one, 2, 25).unwrap());
        assert!(euler_check(EulerIdentity::B, &BigRational::zero(), 0, 25).unwrap());
        assert!(euler_check(EulerIdentity::A, &-one.clone(), 3, 25).unwrap());
        assert_eq!(
            euler_check(EulerIdentity::A, &one, 0, 5),
            Err(QSeriesError::NonPositivePower)
        );
        // a wrong side is caught
        let (l, _) = euler_sides(EulerIdentity::A, &one, 1, 10).unwrap();
        let (_, r) = euler_sides(EulerIdentity::B, &one, 1, 10).unwrap();
        assert_ne!(l, r);
    }

    #[test]
    fn slater_identities() {
        for (b, s, t) in SLATER_PARAMS {
            assert!(slater_check(b, s, t, 40));
            assert!(slater_check(b, s, t, 0));
        }
        assert!(!slater_check(3, 0, 1, 20));
    }

    #[test]
    fn remark_identities() {
        for a in 1..=3 {
            assert!(remark_single_sum_check(a, 30).unwrap(), "a = {a}");
            assert!(remark_single_sum_check(a, 0).unwrap());
        }
    }

    #[test]
    fn single_sum_equals_double_sum() {
        for a in 1..=3 {
            assert_eq!(f1_single_sum(a, 40).unwrap(), double_sum(a, 40).unwrap());
        }
    }
}
