//! Strategies and checks shared by the property tests and the acceptance run.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use qlinked::automata::{Alphabet, Dfa, Regex, Symbol};
use qlinked::linked::{solve_system, QDifferenceSystem};
use qlinked::murraymiller::derive_equation;
use qlinked::partitions::Partition;
use qlinked::qalgebra::{
    parse_poly, parse_rational, render_poly, render_rational, BiPoly, QSeries, RationalFunction,
    RfMatrix,
};
use qlinked::qseries::XSeries;

pub type Check = Result<(), TestCaseError>;

pub fn bipoly(max_dx: u32, max_dq: u32, max_terms: usize) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((0..=max_dx, 0..=max_dq, -3i64..=3), 0..=max_terms).prop_map(|ts| {
        BiPoly::from_terms(ts.into_iter().map(|(dx, dq, c)| ((dx, dq), BigInt::from(c))))
    })
}

pub fn nonzero_bipoly() -> impl Strategy<Value = BiPoly> {
    bipoly(2, 3, 3).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn ratfunc() -> impl Strategy<Value = RationalFunction> {
    (bipoly(2, 3, 3), nonzero_bipoly()).prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

pub fn ring_axioms(a: &RationalFunction, b: &RationalFunction, c: &RationalFunction) -> Check {
    prop_assert_eq!(a + b, b + a);
    prop_assert_eq!(a * b, b * a);
    prop_assert_eq!(&(a + b) + c, a + &(b + c));
    prop_assert_eq!(&(a * b) * c, a * &(b * c));
    prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    prop_assert_eq!(&(a + &RationalFunction::zero()), a);
    prop_assert_eq!(&(a * &RationalFunction::one()), a);
    let same = a.clone();
    prop_assert!((a - &same).is_zero());
    if !b.is_zero() {
        prop_assert_eq!(&(&(a * b) / b), a);
        prop_assert!((b * &b.inv().unwrap()).is_one());
    }
    Ok(())
}

pub fn gcd_divides(a: &BiPoly, b: &BiPoly, c: &BiPoly) -> Check {
    let (ac, bc) = (a * c, b * c);
    if ac.is_zero() && bc.is_zero() {
        return Ok(());
    }
    let g = ac.gcd(&bc);
    prop_assert!(ac.div_exact(&g).is_some());
    prop_assert!(bc.div_exact(&g).is_some());
    prop_assert!(g.div_exact(c).is_some());
    Ok(())
}

pub fn render_round_trip(a: &RationalFunction, p: &BiPoly) -> Check {
    prop_assert_eq!(&parse_rational(&render_rational(a)).unwrap(), a);
    prop_assert_eq!(&parse_poly(&render_poly(p)).unwrap(), p);
    Ok(())
}

pub fn regex(k: usize) -> impl Strategy<Value = Regex> {
    let leaf = prop_oneof![
        1 => Just(Regex::Empty),
        1 => Just(Regex::Epsilon),
        6 => (0..k).prop_map(Regex::Sym),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Regex::union(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Regex::concat(a, b)),
            inner.prop_map(Regex::star),
        ]
    })
}

/// An alphabet size in `1..=5` with a regex over it.
pub fn sized_regex() -> impl Strategy<Value = (usize, Regex)> {
    (1usize..=5).prop_flat_map(|k| (Just(k), regex(k)))
}

/// End positions `j` with `w[i..j]` in the language of `r`.
fn ends(r: &Regex, w: &[Symbol], i: usize) -> BTreeSet<usize> {
    match r {
        Regex::Empty => BTreeSet::new(),
        Regex::Epsilon => BTreeSet::from([i]),
        Regex::Sym(a) => {
            if w.get(i) == Some(a) {
                BTreeSet::from([i + 1])
            } else {
                BTreeSet::new()
            }
        }
        Regex::Union(a, b) => {
            let mut s = ends(a, w, i);
            s.extend(ends(b, w, i));
            s
        }
        Regex::Concat(a, b) => ends(a, w, i).into_iter().flat_map(|j| ends(b, w, j)).collect(),
        Regex::Star(a) => {
            let mut seen = BTreeSet::from([i]);
            let mut frontier = vec![i];
            while let Some(j) = frontier.pop() {
                for e in ends(a, w, j) {
                    if seen.insert(e) {
                        frontier.push(e);
                    }
                }
            }
            seen
        }
    }
}

/// Backtracking matcher, independent of the automata.
pub fn matches(r: &Regex, w: &[Symbol]) -> bool {
    ends(r, w, 0).contains(&w.len())
}

pub fn all_words(k: usize, max_len: usize) -> Vec<Vec<Symbol>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<Symbol>| {
                (0..k).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

pub fn minimization(k: usize, r: &Regex) -> Check {
    let al = Alphabet::new((0..k).map(|a| a.to_string()).collect()).unwrap();
    let d = Dfa::from_regex(r, &al);
    let min = d.minimize();
    prop_assert!(min.num_states() <= d.num_states());
    let again = min.minimize();
    prop_assert_eq!(again.num_states(), min.num_states());
    prop_assert!(again.isomorphism(&min).is_some());
    prop_assert!(min.equivalent(&d).unwrap());
    for w in all_words(k, 6) {
        let want = matches(r, &w);
        prop_assert_eq!(d.accepts(&w), want, "word {:?}", w);
        prop_assert_eq!(min.accepts(&w), want, "word {:?}", w);
    }
    Ok(())
}

pub type Terms = Vec<Vec<Vec<(i64, u32, u32)>>>;

/// Step, the position of the `1` in each row, and terms `(c, dx, e)` standing
/// for `c x^dx q^(dx + e)`.
pub fn random_system() -> impl Strategy<Value = (u32, Vec<usize>, Terms)> {
    let terms = prop::collection::vec((-2i64..=2, 1u32..=2, 0u32..=2), 0..=2);
    (
        1u32..=2,
        prop::collection::vec(0usize..3, 3),
        prop::collection::vec(prop::collection::vec(terms, 3), 3),
    )
}

pub fn build_system(step: u32, ones: &[usize], terms: &Terms) -> QDifferenceSystem {
    let rows = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    let mut p = BiPoly::from_terms(
                        terms[i][j].iter().map(|&(c, dx, e)| ((dx, dx + e), BigInt::from(c))),
                    );
                    if ones[i] == j {
                        p = &p + &BiPoly::one();
                    }
                    RationalFunction::from_poly(p)
                })
                .collect()
        })
        .collect();
    let one = BigRational::from_integer(1.into());
    QDifferenceSystem::new(step, vec![0, 1, 2], RfMatrix::from_rows(rows).unwrap(), vec![one; 3])
        .unwrap()
}

/// The eliminated equation annihilates the system's solution through `q^order`.
pub fn elimination(sys: &QDifferenceSystem, target: usize, order: usize) -> Check {
    let eq = derive_equation(sys, target).unwrap();
    prop_assert!(!eq.is_trivial());
    let f = &solve_system(sys, order, order).unwrap()[target];
    prop_assert!(eq.residual(f).unwrap().is_zero(), "{}", eq);
    Ok(())
}

/// For `B = A / (1 - x)`: `b_M` is the partial sum of the `a_n`, and equals
/// `A(1)` once `M >= deg A`.
pub fn appell(a: &[i64], extra: usize) -> Check {
    let x_order = a.len() - 1 + extra;
    let mut coeffs: Vec<QSeries> =
        a.iter().map(|&c| QSeries::from_integers([BigInt::from(c)])).collect();
    coeffs.resize(x_order + 1, QSeries::zero(0));
    let poly = XSeries::new(coeffs);
    let b = poly.div_x_binomial(&BigRational::from_integer(1.into()), 0);
    let mut partial = 0i64;
    for m in 0..=x_order {
        partial += a.get(m).copied().unwrap_or(0);
        prop_assert_eq!(b.coeff(m as i64), QSeries::from_integers([BigInt::from(partial)]));
    }
    prop_assert_eq!(b.coeff(x_order as i64), poly.at_x_one());
    Ok(())
}

pub fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..=9, 0..=7).prop_map(|v| Partition::from_unsorted(v).unwrap())
}

pub fn oplus_monoid(p: &Partition, q: &Partition, r: &Partition) -> Check {
    prop_assert_eq!(p.oplus(q), q.oplus(p));
    prop_assert_eq!(p.oplus(q).oplus(r), p.oplus(&q.oplus(r)));
    prop_assert_eq!(&p.oplus(&Partition::empty()), p);
    prop_assert_eq!(p.oplus(q).weight(), p.weight() + q.weight());
    prop_assert_eq!(
        p.oplus(q).to_multiplicities(),
        p.to_multiplicities().oplus(&q.to_multiplicities())
    );
    Ok(())
}
