//! Rational functions: quotients of two polynomials.
//!
//! No multivariate gcd reduction is ever attempted; equality is decided by
//! cross-multiplication. The only normalization applied is scalar: the
//! common rational content of numerator and denominator is stripped and the
//! denominator's leading coefficient is made positive, which keeps
//! coefficient sizes manageable without changing the function.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Polynomial, Rational, Variable};

/// A quotient `num/den` of polynomials with `den != 0`.
#[derive(Clone, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Builds `num/den`, stripping common rational content.
    ///
    /// Panics if `den` is zero.
    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        assert!(!den.is_zero(), "rational function denominator must be nonzero");
        let mut f = RationalFunction { num, den };
        f.strip_content();
        f
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    pub fn zero() -> Self {
        RationalFunction::from_polynomial(Polynomial::zero())
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    /// True iff the function is identically zero, i.e. its numerator is the
    /// zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn strip_content(&mut self) {
        if self.num.is_zero() {
            // Normalize the representation of zero.
            self.den = Polynomial::one();
            return;
        }
        // gcd of all coefficient numerators over lcm of all denominators,
        // taken across both polynomials so the quotient is unchanged.
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for (_, c) in self.num.terms().chain(self.den.terms()) {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = Rational::from_bigints(num_gcd, den_lcm);
        let lead = self
            .den
            .leading_term()
            .expect("nonzero denominator")
            .1;
        if lead.is_negative() {
            content = -content;
        }
        let inv = content.recip();
        self.num = self.num.scale(&inv);
        self.den = self.den.scale(&inv);
    }

    /// Exact partial derivative via the quotient rule,
    /// `(num' den - num den') / den^2`; no cancellation is attempted.
    pub fn diff(&self, v: Variable) -> RationalFunction {
        let dnum = self.num.diff(v, 1);
        let dden = self.den.diff(v, 1);
        RationalFunction::new(
            &dnum.mul(&self.den) - &self.num.mul(&dden),
            self.den.mul(&self.den),
        )
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        if self.den == other.den {
            return RationalFunction::new(&self.num + &other.num, self.den.clone());
        }
        RationalFunction::new(
            &self.num.mul(&other.den) + &other.num.mul(&self.den),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &RationalFunction) -> RationalFunction {
        if self.den == other.den {
            return RationalFunction::new(&self.num - &other.num, self.den.clone());
        }
        RationalFunction::new(
            &self.num.mul(&other.den) - &other.num.mul(&self.den),
            self.den.mul(&other.den),
        )
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, c: &Rational) -> RationalFunction {
        RationalFunction::new(self.num.scale(c), self.den.clone())
    }
}

impl PartialEq for RationalFunction {
    /// Equality by cross-multiplication: `a/b == c/d` iff `a d == c b`.
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::add(self, rhs)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::sub(self, rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::mul(self, rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction::new(self.num.negate(), self.den.clone())
    }
}
