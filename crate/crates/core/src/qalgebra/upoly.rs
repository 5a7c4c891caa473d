//! Dense univariate polynomials over the integers.
//!
//! These back the bivariate gcd: a `BiPoly` is viewed as a polynomial in `x`
//! whose coefficients are `UPoly`s in `q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `coeffs[i]` is the coefficient of `q^i`; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub(crate) struct UPoly {
    pub(crate) coeffs: Vec<BigInt>,
}

impl UPoly {
    pub(crate) fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub(crate) fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub(crate) fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub(crate) fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub(crate) fn add(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_default();
            let b = other.coeffs.get(i).cloned().unwrap_or_default();
            out.push(a + b);
        }
        UPoly::from_coeffs(out)
    }

    pub(crate) fn neg(&self) -> UPoly {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub(crate) fn sub(&self, other: &UPoly) -> UPoly {
        self.add(&other.neg())
    }

    pub(crate) fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::from_coeffs(out)
    }

    pub(crate) fn scale(&self, c: &BigInt) -> UPoly {
        UPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// gcd of the integer coefficients, non-negative.
    pub(crate) fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn div_integer(&self, c: &BigInt) -> UPoly {
        UPoly {
            coeffs: self.coeffs.iter().map(|a| a / c).collect(),
        }
    }

    /// Primitive part with positive leading coefficient.
    pub(crate) fn primitive(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        self.div_integer(&c)
    }

    /// Exact division; `None` when `other` does not divide `self` over the integers.
    pub(crate) fn div_exact(&self, other: &UPoly) -> Option<UPoly> {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(UPoly::zero());
        }
        let db = other.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() < other.coeffs.len() {
            return None;
        }
        let mut quot = vec![BigInt::zero(); rem.len() - db];
        let lead = other.leading();
        for k in (0..quot.len()).rev() {
            let top = &rem[k + db];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                rem[k + j] -= &q * b;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(UPoly::from_coeffs(quot))
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    fn pseudo_rem(&self, other: &UPoly) -> UPoly {
        let db = other.degree().expect("pseudo-remainder by zero");
        let mut rem = self.clone();
        let lead = other.leading().clone();
        while let Some(da) = rem.degree() {
            if da < db {
                break;
            }
            let top = rem.leading().clone();
            let mut next = rem.scale(&lead).coeffs;
            for (j, b) in other.coeffs.iter().enumerate() {
                next[da - db + j] -= &top * b;
            }
            rem = UPoly::from_coeffs(next);
        }
        rem
    }

    /// gcd in `Z[q]`, normalized to positive leading coefficient.
    pub(crate) fn gcd(&self, other: &UPoly) -> UPoly {
        if self.is_zero() {
            return other.primitive().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive().scale(&self.content());
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive().scale(&c)
    }

    pub(crate) fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UPoly {
        UPoly::from_coeffs(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (1+q)(1-q) and (1+q)(2+q)
        let a = p(&[1, 0, -1]);
        let b = p(&[2, 3, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
    }

    #[test]
    fn gcd_keeps_integer_content() {
        assert_eq!(p(&[4, 6]).gcd(&p(&[6, 9])), p(&[2, 3]));
        assert_eq!(p(&[4]).gcd(&p(&[0, 6])), p(&[2]));
    }

    #[test]
    fn exact_division() {
        let a = p(&[1, 0, -1]);
        assert_eq!(a.div_exact(&p(&[1, 1])), Some(p(&[1, -1])));
        assert_eq!(a.div_exact(&p(&[2, 1])), None);
        assert_eq!(p(&[3]).div_exact(&p(&[2])), None);
    }
}
