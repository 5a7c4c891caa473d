use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::qalgebra::{BiSeries, QSeries};

use super::system::QDifferenceSystem;
use super::LinkedError;

/// Power series solutions of the system for every row, through `x^x_order`
/// and `q^q_order`.
///
/// Coefficients are filled in order of increasing `q`-degree: the `x^i q^j`
/// coefficient (`i >= 1`) of `F_v(x)` only involves coefficients of
/// `F_u(x q^m)` of `q`-degree below `j`, or of lower `x`-degree.
pub fn solve_system(
    sys: &QDifferenceSystem,
    x_order: usize,
    q_order: usize,
) -> Result<Vec<BiSeries>, LinkedError> {
    let n = sys.size();
    let m = sys.step() as usize;
    let mut terms: Vec<Vec<Vec<(usize, usize, BigRational)>>> = vec![vec![Vec::new(); n]; n];
    for v in 0..n {
        for u in 0..n {
            let p = sys.matrix().get(v, u).as_poly().ok_or(LinkedError::NotPolynomial)?;
            terms[v][u] = p
                .terms()
                .map(|(dx, dq, c)| (dx as usize, dq as usize, BigRational::from_integer(c.clone())))
                .collect();
        }
    }
    // c[v][i][j]
    let mut c = vec![vec![vec![BigRational::zero(); q_order + 1]; x_order + 1]; n];
    for v in 0..n {
        c[v][0][0] = sys.seed()[v].clone();
    }
    for j in 0..=q_order {
        for i in 1..=x_order {
            for v in 0..n {
                let mut acc = BigRational::zero();
                for u in 0..n {
                    for (dx, dq, a) in &terms[v][u] {
                        if *dx > i {
                            continue;
                        }
                        let i2 = i - dx;
                        let shift = dq + m * i2;
                        if shift > j {
                            continue;
                        }
                        let b = &c[u][i2][j - shift];
                        if !b.is_zero() {
                            acc += a * b;
                        }
                    }
                }
                c[v][i][j] = acc;
            }
        }
    }
    Ok(c
        .into_iter()
        .map(|rows| {
            let mut s = BiSeries::zero(x_order, q_order);
            for (i, row) in rows.into_iter().enumerate() {
                for (j, v) in row.into_iter().enumerate() {
                    if !v.is_zero() {
                        s.set(i, j, v);
                    }
                }
            }
            s
        })
        .collect())
}

/// The solution component for row `label`, as a bivariate series.
pub fn series_from_system(
    sys: &QDifferenceSystem,
    label: usize,
    x_order: usize,
    q_order: usize,
) -> Result<BiSeries, LinkedError> {
    let row = sys.row_of(label).ok_or(LinkedError::UnknownState(label))?;
    Ok(solve_system(sys, x_order, q_order)?.swap_remove(row))
}

/// The solution component for row `label` at `x = 1`, through `q^q_order`.
///
/// Requires every monomial `x^a q^b` of the system to have `b >= a`, so that
/// `x^i` only meets powers `q^j` with `j >= i`.
pub fn series_at_x1(
    sys: &QDifferenceSystem,
    label: usize,
    q_order: usize,
) -> Result<QSeries, LinkedError> {
    for v in 0..sys.size() {
        for u in 0..sys.size() {
            let p = sys.matrix().get(v, u).as_poly().ok_or(LinkedError::NotPolynomial)?;
            if p.terms().any(|(dx, dq, _)| dq < dx) {
                return Err(LinkedError::XOneUndetermined);
            }
        }
    }
    Ok(series_from_system(sys, label, q_order, q_order)?.at_x_one())
}

/// Integer coefficients of a series known to count something.
pub fn counts(s: &QSeries) -> Vec<BigInt> {
    s.integer_coeffs().expect("counting series have integer coefficients")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{Alphabet, Regex};
    use crate::linked::{LinkedMachine, LinkedSpec};
    use crate::nandi;
    use crate::partitions::{count_class_series, for_each_partition, NandiClass, Partition};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn distinct_parts() -> LinkedSpec {
        LinkedSpec::new(
            1,
            Alphabet::digits(2),
            vec![Partition::empty(), Partition::new(vec![1]).unwrap()],
            Regex::Empty,
            Regex::Empty,
        )
        .unwrap()
    }

    #[test]
    fn class_one_through_six() {
        let spec = nandi::spec();
        let m = LinkedMachine::new(spec.clone());
        let al = spec.alphabet();
        let v = m
            .state_for_class(&crate::automata::parse_regex("3U4", al).unwrap())
            .unwrap();
        let s = series_at_x1(&m.derive_system(), v, 6).unwrap();
        assert_eq!(counts(&s), ints(&[1, 0, 1, 1, 2, 1, 3]));
        let brute: Vec<BigInt> = count_class_series(NandiClass::N1, 6)
            .into_iter()
            .map(BigInt::from)
            .collect();
        assert_eq!(counts(&s), brute);
    }

    #[test]
    fn order_zero_is_one() {
        let sys = LinkedMachine::new(nandi::spec()).derive_system();
        for &v in sys.labels() {
            assert_eq!(counts(&series_at_x1(&sys, v, 0).unwrap()), ints(&[1]));
        }
    }

    #[test]
    fn distinct_parts_series() {
        let sys = LinkedMachine::new(distinct_parts()).derive_system();
        let s = series_at_x1(&sys, sys.labels()[0], 5).unwrap();
        assert_eq!(counts(&s), ints(&[1, 1, 1, 2, 2, 3]));
        let s = series_at_x1(&sys, sys.labels()[0], 20).unwrap();
        let brute: Vec<BigInt> = (0..=20)
            .map(|n| {
                let mut c = 0i64;
                for_each_partition(n, |p| {
                    if p.windows(2).all(|w| w[0] > w[1]) {
                        c += 1;
                    }
                });
                BigInt::from(c)
            })
            .collect();
        assert_eq!(counts(&s), brute);
    }

    #[test]
    fn every_state_matches_membership_counts() {
        let m = LinkedMachine::new(nandi::spec());
        let sys = m.derive_system();
        let order = 25;
        let sols = solve_system(&sys, order, order).unwrap();
        for (row, &v) in sys.labels().iter().enumerate() {
            let s = sols[row].at_x_one();
            for n in 0..=order as u32 {
                let mut c = 0i64;
                for_each_partition(n, |p| {
                    if m.member(&Partition::new(p.to_vec()).unwrap(), v).unwrap() {
                        c += 1;
                    }
                });
                assert_eq!(s.coeff(n as usize), &BigRational::from_integer(c.into()), "state {v} n {n}");
            }
        }
    }
}
