use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::bipoly::BiPoly;
use super::AlgebraError;

/// An element of `Q(x, q)` kept in lowest terms.
///
/// Invariants: numerator and denominator are coprime in `Z[x, q]`, the
/// denominator is nonzero with positive leading coefficient, and zero is
/// stored as `0/1`. Two rational functions are equal iff their fields are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: BiPoly,
    den: BiPoly,
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction {
            num: BiPoly::zero(),
            den: BiPoly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(BiPoly::one())
    }

    pub fn from_poly(p: BiPoly) -> Self {
        RationalFunction {
            num: p,
            den: BiPoly::one(),
        }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        RationalFunction::from_poly(BiPoly::constant(c))
    }

    pub fn monomial(c: impl Into<BigInt>, dx: u32, dq: u32) -> Self {
        RationalFunction::from_poly(BiPoly::monomial(c, dx, dq))
    }

    pub fn x() -> Self {
        RationalFunction::from_poly(BiPoly::x())
    }

    pub fn q() -> Self {
        RationalFunction::from_poly(BiPoly::q())
    }

    /// `q^k` for any integer `k`.
    pub fn q_power(k: i64) -> Self {
        if k >= 0 {
            RationalFunction::monomial(1, 0, k as u32)
        } else {
            RationalFunction {
                num: BiPoly::one(),
                den: BiPoly::monomial(1, 0, (-k) as u32),
            }
        }
    }

    /// Builds `num/den` and reduces it.
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: BiPoly, den: BiPoly) -> Self {
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        if den.leading_coeff().is_some_and(Signed::is_negative) {
            num = -num;
            den = -den;
        }
        RationalFunction { num, den }
    }

    /// `num/den` for coprime inputs; only the sign is normalized.
    fn signed(num: BiPoly, den: BiPoly) -> Self {
        if num.is_zero() {
            return RationalFunction::zero();
        }
        if den.leading_coeff().is_some_and(Signed::is_negative) {
            RationalFunction { num: -num, den: -den }
        } else {
            RationalFunction { num, den }
        }
    }

    pub fn numer(&self) -> &BiPoly {
        &self.num
    }

    pub fn denom(&self) -> &BiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The polynomial value, if the denominator is 1.
    pub fn as_poly(&self) -> Option<&BiPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        if other.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::reduced(&self.num * &other.den, &self.den * &other.num))
    }

    /// Substitutes `x -> x q^k`. Negative powers of `q` that appear are moved
    /// into the denominator.
    pub fn shift_x(&self, k: i64) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let lift_n = self.num.shift_deficit(k);
        let lift_d = self.den.shift_deficit(k);
        let lift = lift_n.max(lift_d);
        let num = self.num.substitute_xq(k, lift);
        let den = self.den.substitute_xq(k, lift);
        Self::reduced(num, den)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::reduced(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, n: u32) -> Self {
        RationalFunction {
            num: self.num.pow(n),
            den: self.den.pow(n),
        }
    }
}

fn exact(a: &BiPoly, g: &BiPoly) -> BiPoly {
    if g.is_one() {
        a.clone()
    } else {
        a.div_exact(g).expect("gcd divides")
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        RationalFunction::zero()
    }
}

impl From<BiPoly> for RationalFunction {
    fn from(p: BiPoly) -> Self {
        RationalFunction::from_poly(p)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunction::reduced(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            return RationalFunction::signed(
                &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
                &self.den * &rhs.den,
            );
        }
        let d1 = exact(&self.den, &g);
        let d2 = exact(&rhs.den, &g);
        let num = &(&self.num * &d2) + &(&rhs.num * &d1);
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let h = num.gcd(&g);
        RationalFunction::signed(exact(&num, &h), &d1 * &exact(&rhs.den, &h))
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        RationalFunction::signed(
            &exact(&self.num, &g1) * &exact(&rhs.num, &g2),
            &exact(&self.den, &g2) * &exact(&rhs.den, &g1),
        )
    }
}

/// Panics on division by zero; use [`RationalFunction::checked_div`] to handle it.
impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction::one()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render::render_rational(self))
    }
}
