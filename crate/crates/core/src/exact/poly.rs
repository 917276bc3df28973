//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A polynomial `c[0] + c[1] x + ... + c[d] x^d` with exact rational coefficients.
///
/// The coefficient vector never has trailing zeros, so the zero polynomial is
/// the empty vector and `degree` is `len - 1` otherwise.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

#[cfg(test)]
pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    /// `c0 + c1 x`.
    pub fn linear(c0: BigRational, c1: BigRational) -> Self {
        Self::new(vec![c0, c1])
    }

    /// Builds a polynomial from integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Coefficient of `x^i`; zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation in floating point after rounding each coefficient.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.to_f64_coeffs().iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// The antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(BigRational::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push(c / BigRational::from_integer(BigInt::from(i + 1)));
        }
        Self::new(out)
    }

    /// `∫_lo^hi p(x) dx`, exactly.
    pub fn definite_integral(&self, lo: &BigRational, hi: &BigRational) -> BigRational {
        let anti = self.antiderivative();
        anti.eval(hi) - anti.eval(lo)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `p(x + shift)`, i.e. the Taylor coefficients of `p` around `shift`.
    pub fn taylor_shift(&self, shift: &BigRational) -> Self {
        // synthetic division repeated: O(d^2) exact operations
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * shift;
                c[j] += t;
            }
        }
        Self::new(c)
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    ///
    /// Panics if `divisor` is the zero polynomial.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading_coeff().unwrap();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if sd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let q = &rem[i + dd] / lead;
            if !q.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &q * dc;
                }
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Scales so the leading coefficient is one. The zero polynomial is returned as is.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`: same real roots, all simple.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// Multiplies through by the lcm of the denominators and divides by the
    /// content, returning integer coefficients with a positive leading term.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        use num_integer::Integer;
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        for c in &mut ints {
            *c = &*c / &content * &sign;
        }
        ints
    }
}

impl fmt::Debug for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalPoly({self})")
    }
}

impl RationalPoly {
    /// Formats the polynomial in the variable `var`.
    pub fn display_in<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        struct In<'a>(&'a RationalPoly, &'a str);
        impl fmt::Display for In<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let (p, var) = (self.0, self.1);
                if p.is_zero() {
                    return write!(f, "0");
                }
                let mut first = true;
                for (i, c) in p.coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    match i {
                        0 => write!(f, "{c}")?,
                        1 => write!(f, "({c}){var}")?,
                        _ => write!(f, "({c}){var}^{i}")?,
                    }
                }
                Ok(())
            }
        }
        In(self, var)
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("x"))
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalPoly {
            type Output = RationalPoly;
            fn $m(self, rhs: RationalPoly) -> RationalPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[(i64, i64)]) -> RationalPoly {
        RationalPoly::new(c.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn difference_of_squares() {
        let a = RationalPoly::from_ints(&[1, 1]);
        let b = RationalPoly::from_ints(&[1, -1]);
        assert_eq!(&a * &b, RationalPoly::from_ints(&[1, 0, -1]));
    }

    #[test]
    fn product_with_zero_is_zero() {
        let a = RationalPoly::from_ints(&[3, 0, 2]);
        assert!((&a * &RationalPoly::zero()).is_zero());
        assert_eq!((&a * &RationalPoly::zero()).degree(), None);
    }

    #[test]
    fn square_of_half_linear() {
        let a = p(&[(1, 1), (1, 2)]);
        assert_eq!(&a * &a, p(&[(1, 1), (1, 1), (1, 4)]));
    }

    #[test]
    fn antiderivative_power_rule() {
        assert_eq!(RationalPoly::x().antiderivative(), p(&[(0, 1), (0, 1), (1, 2)]));
        assert!(RationalPoly::zero().antiderivative().is_zero());
        assert_eq!(p(&[(1, 1), (1, 2)]).antiderivative(), p(&[(0, 1), (1, 1), (1, 4)]));
    }

    #[test]
    fn horner_values() {
        let q = p(&[(0, 1), (0, 1), (1, 2), (1, 6)]);
        assert_eq!(q.eval(&rat(1, 1)), rat(2, 3));
        assert_eq!(q.eval(&rat(-1, 1)), rat(1, 3));
        let r = p(&[(7, 3), (1, 1), (5, 1)]);
        assert_eq!(r.eval(&BigRational::zero()), rat(7, 3));
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let q = RationalPoly::new(vec![rat(1, 1), rat(0, 1), rat(0, 1)]);
        assert_eq!(q.degree(), Some(0));
        assert_eq!(RationalPoly::new(vec![rat(0, 1)]).degree(), None);
    }

    #[test]
    fn division_recovers_factor() {
        // (12a^2 + 10a + 1)(a + 1)^2
        let f = RationalPoly::from_ints(&[1, 10, 12]);
        let g = RationalPoly::from_ints(&[1, 1]).pow(2);
        let (q, r) = (&f * &g).div_rem(&f);
        assert!(r.is_zero());
        assert_eq!(q, g);
    }

    #[test]
    fn squarefree_drops_repeated_factor() {
        let f = &RationalPoly::from_ints(&[1, 10, 12]) * &RationalPoly::from_ints(&[1, 1]).pow(3);
        let s = f.squarefree_part();
        assert_eq!(s.degree(), Some(3));
        assert!(s.div_rem(&RationalPoly::from_ints(&[1, 1])).1.is_zero());
    }

    #[test]
    fn taylor_shift_matches_composition() {
        let q = p(&[(1, 3), (-2, 1), (0, 1), (5, 7)]);
        let s = rat(-3, 4);
        let shifted = q.taylor_shift(&s);
        for x in [rat(0, 1), rat(1, 2), rat(-5, 3), rat(9, 1)] {
            assert_eq!(shifted.eval(&x), q.eval(&(&x + &s)));
        }
    }

    #[test]
    fn primitive_integer_form() {
        let q = p(&[(1, 6), (5, 3), (-2, 1)]);
        let ints = q.primitive_integer_coeffs();
        assert_eq!(ints, vec![BigInt::from(-1), BigInt::from(-10), BigInt::from(12)]);
    }
}
