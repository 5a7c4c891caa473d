//! Reduction of a q-difference system to a single equation for its first
//! component: triangularization followed by elimination.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::linked::QDifferenceSystem;
use crate::qalgebra::{
    render_rational, AlgebraError, BiPoly, BiSeries, RationalFunction, RfMatrix,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EliminationError {
    #[error("no row labelled {0}")]
    UnknownLabel(usize),
    #[error("row order must be a permutation of the system's labels")]
    NotAPermutation,
    #[error("matrix at iteration {iteration} lost the triangular shape at ({row}, {col})")]
    ShapeViolation { iteration: usize, row: usize, col: usize },
    #[error("equation coefficients must be polynomials with no negative shifts")]
    NotNormalized,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Moves `target` to the first row and column; the other rows keep their
/// order.
pub fn reorder_first(
    sys: &QDifferenceSystem,
    target: usize,
) -> Result<QDifferenceSystem, EliminationError> {
    let t = sys.row_of(target).ok_or(EliminationError::UnknownLabel(target))?;
    let order: Vec<usize> = std::iter::once(t).chain((0..sys.size()).filter(|&i| i != t)).collect();
    Ok(sys.permuted(&order))
}

/// Reorders rows and columns so that they follow `labels`.
pub fn reorder(
    sys: &QDifferenceSystem,
    labels: &[usize],
) -> Result<QDifferenceSystem, EliminationError> {
    if labels.len() != sys.size() {
        return Err(EliminationError::NotAPermutation);
    }
    let mut order = Vec::with_capacity(labels.len());
    for &l in labels {
        let i = sys.row_of(l).ok_or(EliminationError::UnknownLabel(l))?;
        if order.contains(&i) {
            return Err(EliminationError::NotAPermutation);
        }
        order.push(i);
    }
    Ok(sys.permuted(&order))
}

/// Outcome of triangularization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangular {
    /// Number `l'` of components of the reduced system.
    pub size: usize,
    /// The full matrix at the returning iteration; its leading `size` block
    /// is the reduced system.
    pub matrix: RfMatrix,
    /// Row/column swaps made, as 0-based `(s + 1, t)` pairs.
    pub swaps: Vec<(usize, usize)>,
}

impl Triangular {
    pub fn reduced(&self) -> RfMatrix {
        self.matrix.leading_block(self.size)
    }
}

/// Rows above `s` (0-based) must read `(*, ..., *, 1, 0, ..., 0)` with the
/// 1 on the superdiagonal.
fn check_shape(p: &RfMatrix, s: usize) -> Result<(), EliminationError> {
    for i in 0..s {
        for j in i + 1..p.cols() {
            let e = p.get(i, j);
            let ok = if j == i + 1 { e.is_one() } else { e.is_zero() };
            if !ok {
                return Err(EliminationError::ShapeViolation {
                    iteration: s + 1,
                    row: i,
                    col: j,
                });
            }
        }
    }
    Ok(())
}

/// Brings `F(x) = P(x) F(x q^step)` to the form whose leading block has
/// ones on the superdiagonal and zeros above it, keeping the first
/// component fixed. Swaps pick the smallest admissible column.
pub fn triangularize(p: &RfMatrix, step: u32) -> Result<Triangular, EliminationError> {
    if !p.is_square() {
        return Err(AlgebraError::Shape.into());
    }
    let n = p.rows();
    let m = step as i64;
    let mut p = p.clone();
    let mut swaps = Vec::new();
    for s in 0..n {
        check_shape(&p, s)?;
        let Some(t) = (s + 1..n).find(|&j| !p.get(s, j).is_zero()) else {
            return Ok(Triangular {
                size: s + 1,
                matrix: p,
                swaps,
            });
        };
        if t != s + 1 {
            p.swap_rows(s + 1, t);
            p.swap_cols(s + 1, t);
            swaps.push((s + 1, t));
        }
        let mut tm = RfMatrix::identity(n);
        tm.set(s + 1, s + 1, RationalFunction::zero());
        for j in s + 1..n {
            tm.set(s + 1, j, p.get(s, j).clone());
        }
        let inv = tm.inverse_row_elementary(s + 1)?;
        p = tm.shift_x(-m).mul(&p)?.mul(&inv)?;
    }
    unreachable!("the last iteration always returns")
}

/// A linear combination `sum_e c_e(x) G(x q^{step e})` of shifts of the
/// first component.
type Shifts = BTreeMap<i64, RationalFunction>;

fn shifted(f: &Shifts, k: i64, step: i64) -> Shifts {
    f.iter().map(|(&e, c)| (e + k, c.shift_x(step * k))).collect()
}

fn add_scaled(acc: &mut Shifts, f: &Shifts, c: &RationalFunction) {
    for (&e, v) in f {
        let entry = acc.entry(e).or_insert_with(RationalFunction::zero);
        *entry = &*entry + &(c * v);
    }
}

/// A single equation `sum_i p_i(x) F(x q^{step (offset + i)}) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QDifferenceEquation {
    step: u32,
    offset: i64,
    coeffs: Vec<RationalFunction>,
}

impl QDifferenceEquation {
    /// Leading and trailing zero coefficients are dropped.
    pub fn new(step: u32, offset: i64, coeffs: Vec<RationalFunction>) -> Self {
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        let mut coeffs: Vec<RationalFunction> = coeffs.into_iter().skip(lead).collect();
        while coeffs.last().is_some_and(RationalFunction::is_zero) {
            coeffs.pop();
        }
        QDifferenceEquation {
            step,
            offset: offset + lead as i64,
            coeffs,
        }
    }

    pub fn step(&self) -> u32 {
        self.step
    }

    /// Shift index of the first coefficient.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    /// Number of shifts spanned minus one.
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The coefficients as strings.
    pub fn coefficient_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(render_rational).collect()
    }

    /// `sum_i p_i(x) f(x q^{step i})` for a normalized equation, truncated
    /// to the orders of `f`.
    pub fn residual(&self, f: &BiSeries) -> Result<BiSeries, EliminationError> {
        if self.offset < 0 {
            return Err(EliminationError::NotNormalized);
        }
        let (lx, lq) = (f.x_order(), f.q_order());
        let mut acc = BiSeries::zero(lx, lq);
        for (i, c) in self.coeffs.iter().enumerate() {
            let p = c.as_poly().ok_or(EliminationError::NotNormalized)?;
            if c.denom().as_constant().is_none() {
                return Err(EliminationError::NotNormalized);
            }
            let k = self.step as usize * (self.offset as usize + i);
            let term = BiSeries::from_poly(p, lx, lq).mul(&f.shift_x(k));
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

impl fmt::Display for QDifferenceEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = self.step as i64 * (self.offset + i as i64);
            writeln!(f, "p_{k} = {}", render_rational(c))?;
        }
        Ok(())
    }
}

/// Eliminates components `l', ..., 2` of a triangularized system and
/// returns the last row as an equation for the first component.
pub fn eliminate(t: &Triangular, step: u32) -> Result<QDifferenceEquation, EliminationError> {
    let l = t.size;
    let p = &t.matrix;
    check_shape(p, l - 1)?;
    let m = step as i64;
    let mut g: Vec<Shifts> = Vec::with_capacity(l);
    g.push(BTreeMap::from([(0, RationalFunction::one())]));
    // row i: G_{i+1}(x) = G_i(x q^-m) - sum_{j<=i} P_ij(x q^-m) G_j(x)
    for i in 0..l - 1 {
        let mut next = shifted(&g[i], -1, m);
        for j in 0..=i {
            let c = -p.get(i, j).shift_x(-m);
            add_scaled(&mut next, &g[j], &c);
        }
        g.push(next);
    }
    // last row: 0 = -G_l(x) + sum_j P_lj(x) G_j(x q^m)
    let mut eq: Shifts = BTreeMap::new();
    add_scaled(&mut eq, &g[l - 1], &-RationalFunction::one());
    for (j, gj) in g.iter().enumerate() {
        add_scaled(&mut eq, &shifted(gj, 1, m), p.get(l - 1, j));
    }
    eq.retain(|_, c| !c.is_zero());
    let Some((&lo, _)) = eq.first_key_value() else {
        return Ok(QDifferenceEquation::new(step, 0, Vec::new()));
    };
    let hi = *eq.last_key_value().expect("nonempty").0;
    let coeffs = (lo..=hi)
        .map(|e| eq.remove(&e).unwrap_or_else(RationalFunction::zero))
        .collect();
    Ok(QDifferenceEquation::new(step, lo, coeffs))
}

fn lcm(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let g = a.gcd(b);
    (a * b).div_exact(&g).expect("gcd divides the product")
}

/// Shifts `x` so that the lowest shift index is 0, clears denominators,
/// removes the common polynomial factor, then scales `p_0` to 1 when it is
/// a constant (otherwise makes its leading coefficient positive).
pub fn normalize_equation(eq: &QDifferenceEquation) -> QDifferenceEquation {
    if eq.is_trivial() {
        return QDifferenceEquation::new(eq.step, 0, Vec::new());
    }
    let k = -eq.offset * eq.step as i64;
    let shifted: Vec<RationalFunction> = eq.coeffs.iter().map(|c| c.shift_x(k)).collect();
    let den = shifted.iter().fold(BiPoly::one(), |acc, c| lcm(&acc, c.denom()));
    let nums: Vec<BiPoly> = shifted
        .iter()
        .map(|c| {
            let factor = den.div_exact(c.denom()).expect("lcm is a multiple");
            c.numer() * &factor
        })
        .collect();
    let g = nums.iter().fold(BiPoly::zero(), |acc, p| acc.gcd(p));
    let mut nums: Vec<BiPoly> = nums
        .iter()
        .map(|p| p.div_exact(&g).expect("gcd divides every coefficient"))
        .collect();
    let coeffs = match nums[0].as_constant() {
        Some(c) => {
            let inv = BigRational::new(BigInt::one(), c);
            nums.iter()
                .map(|p| RationalFunction::from_poly(p.clone()) * rational_constant(&inv))
                .collect()
        }
        None => {
            if nums[0].leading_coeff().is_some_and(|c| c < &BigInt::zero()) {
                nums = nums.iter().map(|p| -p).collect();
            }
            nums.into_iter().map(RationalFunction::from_poly).collect()
        }
    };
    QDifferenceEquation::new(eq.step, 0, coeffs)
}

fn rational_constant(c: &BigRational) -> RationalFunction {
    RationalFunction::new(
        BiPoly::constant(c.numer().clone()),
        BiPoly::constant(c.denom().clone()),
    )
    .expect("nonzero denominator")
}

/// Full pipeline for the component labelled `target`: reorder, triangularize,
/// eliminate and normalize.
pub fn derive_equation(
    sys: &QDifferenceSystem,
    target: usize,
) -> Result<QDifferenceEquation, EliminationError> {
    let sys = reorder_first(sys, target)?;
    let t = triangularize(sys.matrix(), sys.step())?;
    Ok(normalize_equation(&eliminate(&t, sys.step())?))
}
