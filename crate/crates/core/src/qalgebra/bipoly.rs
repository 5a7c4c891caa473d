use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::upoly::UPoly;

/// A polynomial in `x` and `q` with integer coefficients.
///
/// Terms are keyed by `(deg_x, deg_q)`. Zero coefficients are never stored,
/// so structural equality is polynomial equality. The leading term is the
/// largest key, i.e. highest `x`-degree first, then highest `q`-degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        BiPoly::monomial(c, 0, 0)
    }

    /// `c * x^dx * q^dq`
    pub fn monomial(c: impl Into<BigInt>, dx: u32, dq: u32) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(dx, dq, c.into());
        p
    }

    pub fn x() -> Self {
        BiPoly::monomial(1, 1, 0)
    }

    pub fn q() -> Self {
        BiPoly::monomial(1, 0, 1)
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), BigInt)>,
    {
        let mut p = BiPoly::zero();
        for ((dx, dq), c) in terms {
            p.add_term(dx, dq, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, dx: u32, dq: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((dx, dq)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(dx, dq));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(One::is_one)
    }

    /// Terms in ascending `(deg_x, deg_q)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> + '_ {
        self.terms.iter().map(|(&(dx, dq), c)| (dx, dq, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, dx: u32, dq: u32) -> BigInt {
        self.terms.get(&(dx, dq)).cloned().unwrap_or_default()
    }

    /// The coefficient of the leading term (largest key).
    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn degree_q(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    /// Smallest `q`-exponent occurring in any term.
    pub fn min_degree_q(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).min()
    }

    /// Returns `(c, 0, 0)`-style constants as their value.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn scale(&self, c: &BigInt) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    /// Multiply by `x^dx q^dq`.
    pub fn shift_monomial(&self, dx: u32, dq: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), v)| ((a + dx, b + dq), v.clone()))
                .collect(),
        }
    }

    /// Substitute `x -> x q^k` and multiply by `q^lift`. Panics if a
    /// resulting exponent would be negative; callers pick `lift` from
    /// [`BiPoly::shift_deficit`].
    pub(crate) fn substitute_xq(&self, k: i64, lift: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(dx, dq), v)| {
                    let e = dq as i64 + k * dx as i64 + lift as i64;
                    assert!(e >= 0, "negative q exponent after substitution");
                    ((dx, e as u32), v.clone())
                })
                .collect(),
        }
    }

    /// The power of `q` needed to keep exponents non-negative under `x -> x q^k`.
    pub(crate) fn shift_deficit(&self, k: i64) -> u32 {
        self.terms
            .keys()
            .map(|&(dx, dq)| -(dq as i64 + k * dx as i64))
            .max()
            .unwrap_or(0)
            .max(0) as u32
    }

    /// Evaluate at `x = 1`, giving a polynomial in `q` as `(exponent, coeff)` pairs.
    pub fn at_x_one(&self) -> BTreeMap<u32, BigInt> {
        let mut out: BTreeMap<u32, BigInt> = BTreeMap::new();
        for (&(_, dq), c) in &self.terms {
            *out.entry(dq).or_default() += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Sum of all coefficients (value at `x = q = 1`).
    pub fn at_one_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// The `x^i` coefficient as a `q`-polynomial.
    pub(crate) fn x_coeff(&self, i: u32) -> UPoly {
        let mut coeffs = Vec::new();
        for (&(dx, dq), c) in self.terms.range((i, 0)..=(i, u32::MAX)) {
            debug_assert_eq!(dx, i);
            let dq = dq as usize;
            if coeffs.len() <= dq {
                coeffs.resize(dq + 1, BigInt::zero());
            }
            coeffs[dq] = c.clone();
        }
        UPoly::from_coeffs(coeffs)
    }

    fn to_x_major(&self) -> Vec<UPoly> {
        match self.degree_x() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|i| self.x_coeff(i)).collect(),
        }
    }

    fn from_x_major(cs: &[UPoly]) -> BiPoly {
        let mut p = BiPoly::zero();
        for (i, c) in cs.iter().enumerate() {
            for (j, v) in c.coeffs.iter().enumerate() {
                p.add_term(i as u32, j as u32, v.clone());
            }
        }
        p
    }

    /// Exact division in `Z[x, q]`; `None` if not divisible.
    pub fn div_exact(&self, other: &BiPoly) -> Option<BiPoly> {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(BiPoly::zero());
        }
        if let Some(c) = other.as_constant() {
            let mut out = BiPoly::zero();
            for (&(dx, dq), v) in &self.terms {
                let (d, r) = v.div_rem(&c);
                if !r.is_zero() {
                    return None;
                }
                out.add_term(dx, dq, d);
            }
            return Some(out);
        }
        let mut rem = self.to_x_major();
        let den = other.to_x_major();
        let db = den.len() - 1;
        if rem.len() < den.len() {
            return None;
        }
        let mut quot = vec![UPoly::zero(); rem.len() - db];
        for k in (0..quot.len()).rev() {
            if rem[k + db].is_zero() {
                continue;
            }
            let c = rem[k + db].div_exact(&den[db])?;
            for (j, b) in den.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&c.mul(b));
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(BiPoly::from_x_major(&quot))
    }

    /// gcd in `Z[x, q]`, computed as polynomials in `x` over `Z[q]` with a
    /// primitive remainder sequence. The result has positive leading
    /// coefficient.
    pub fn gcd(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() {
            return other.normalized_sign();
        }
        if other.is_zero() {
            return self.normalized_sign();
        }
        if self.is_monomial() || other.is_monomial() {
            return monomial_gcd(self, other);
        }
        let a = self.to_x_major();
        let b = other.to_x_major();
        let ca = x_content(&a);
        let cb = x_content(&b);
        let content = ca.gcd(&cb);
        if coprime_in_x_mod_p(&a, &b) {
            return BiPoly::from_x_major(&[content]).normalized_sign();
        }
        let mut a = divide_all(&a, &ca);
        let mut b = divide_all(&b, &cb);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = pseudo_rem(&a, &b);
            a = b;
            b = if r.is_empty() {
                r
            } else {
                let c = x_content(&r);
                divide_all(&r, &c)
            };
        }
        let g = BiPoly::from_x_major(&a);
        let g = g.mul_upoly(&content);
        g.normalized_sign()
    }

    fn mul_upoly(&self, c: &UPoly) -> BiPoly {
        let cs: Vec<UPoly> = self.to_x_major().iter().map(|p| p.mul(c)).collect();
        BiPoly::from_x_major(&cs)
    }

    pub(crate) fn normalized_sign(&self) -> BiPoly {
        match self.leading_coeff() {
            Some(c) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    /// gcd of integer coefficients (non-negative).
    pub fn integer_content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn pow(&self, n: u32) -> BiPoly {
        let mut out = BiPoly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }
}

fn monomial_gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let ix = a
        .terms
        .keys()
        .chain(b.terms.keys())
        .map(|k| k.0)
        .min()
        .unwrap_or(0);
    let iq = a
        .terms
        .keys()
        .chain(b.terms.keys())
        .map(|k| k.1)
        .min()
        .unwrap_or(0);
    let c = a.integer_content().gcd(&b.integer_content());
    BiPoly::monomial(c, ix, iq)
}

const SCREEN_P: u64 = (1 << 61) - 1;
const SCREEN_Q: [u64; 2] = [1_000_003, 987_654_321_987];

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % SCREEN_P as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

fn eval_mod(c: &UPoly, q: u64) -> u64 {
    let p = BigInt::from(SCREEN_P);
    c.coeffs.iter().rev().fold(0, |acc, v| {
        let v = v.mod_floor(&p);
        let v: u64 = v.try_into().expect("reduced below the modulus");
        (mul_mod(acc, q) + v) % SCREEN_P
    })
}

/// Degree of the gcd over `F_p` of two polynomials in `x`.
fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = pow_mod(*b.last().unwrap(), SCREEN_P - 2);
        while a.len() >= b.len() {
            let f = mul_mod(*a.last().unwrap(), inv);
            let off = a.len() - b.len();
            for (j, &bj) in b.iter().enumerate() {
                a[off + j] = (a[off + j] + SCREEN_P - mul_mod(f, bj)) % SCREEN_P;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// True when the images at some `q = q0` mod p have a constant gcd in `x`.
/// The leading coefficients must survive the evaluation; then the image
/// degree bounds the true `x`-degree of the gcd from above, so a `true`
/// answer means the gcd is a polynomial in `q` alone.
fn coprime_in_x_mod_p(a: &[UPoly], b: &[UPoly]) -> bool {
    SCREEN_Q.iter().any(|&q| {
        let ea: Vec<u64> = a.iter().map(|c| eval_mod(c, q)).collect();
        let eb: Vec<u64> = b.iter().map(|c| eval_mod(c, q)).collect();
        ea.last() != Some(&0) && eb.last() != Some(&0) && gcd_degree_mod(ea, eb) == 0
    })
}

fn x_content(cs: &[UPoly]) -> UPoly {
    let mut g = UPoly::zero();
    for c in cs {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn divide_all(cs: &[UPoly], d: &UPoly) -> Vec<UPoly> {
    cs.iter()
        .map(|c| c.div_exact(d).expect("content divides every coefficient"))
        .collect()
}

fn trim(mut cs: Vec<UPoly>) -> Vec<UPoly> {
    while cs.last().is_some_and(UPoly::is_zero) {
        cs.pop();
    }
    cs
}

fn pseudo_rem(a: &[UPoly], b: &[UPoly]) -> Vec<UPoly> {
    let db = b.len() - 1;
    let lead = &b[db];
    let mut rem = a.to_vec();
    while rem.len() > db {
        let da = rem.len() - 1;
        let top = rem[da].clone();
        let mut next: Vec<UPoly> = rem.iter().map(|c| c.mul(lead)).collect();
        for (j, bj) in b.iter().enumerate() {
            next[da - db + j] = next[da - db + j].sub(&top.mul(bj));
        }
        rem = trim(next);
    }
    rem
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(dx, dq), c) in &rhs.terms {
            out.add_term(dx, dq, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(dx, dq), c) in &rhs.terms {
            out.add_term(dx, dq, -c);
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(ax, aq), a) in &self.terms {
            for (&(bx, bq), b) in &rhs.terms {
                out.add_term(ax + bx, aq + bq, a * b);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, -v)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}
