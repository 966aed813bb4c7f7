//! Truncated formal power series in the spectral variable `z` with
//! polynomial coefficients.
//!
//! Every generating series in this crate lives here: the hyperbolic
//! compositions behind the psi/phi families, the tanh series of the change
//! of variables, and the sech/tanh cocktail of the shift relation. A series
//! of truncation order `N` knows nothing about coefficients beyond `N`;
//! binary operations insist on matching orders rather than guessing.

use alloc::vec::Vec;
use core::fmt;

use crate::ring::{Polynomial, Rational, Variable};

/// Errors for truncated-series operations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SeriesError {
    /// Binary operation on series of different truncation orders.
    TruncationMismatch { left: usize, right: usize },
    /// Inversion requires an invertible (nonzero rational) constant term.
    NonUnitConstantTerm,
    /// Composition requires the inner series to have zero constant term.
    NonzeroConstantTerm,
    /// Coefficient index beyond the truncation order.
    IndexBeyondTruncation { index: usize, trunc_order: usize },
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::TruncationMismatch { left, right } => {
                write!(f, "truncation orders differ: {left} vs {right}")
            }
            SeriesError::NonUnitConstantTerm => {
                write!(f, "constant term is not an invertible rational")
            }
            SeriesError::NonzeroConstantTerm => {
                write!(f, "inner series must have zero constant term")
            }
            SeriesError::IndexBeyondTruncation { index, trunc_order } => {
                write!(f, "coefficient {index} requested beyond truncation order {trunc_order}")
            }
        }
    }
}

impl core::error::Error for SeriesError {}

/// The named analytic series available for composition.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HyperKind {
    Sinh,
    Cosh,
    Tanh,
    Sech,
    Exp,
    Arctanh,
}

/// A formal power series `sum_{k=0}^{N} c_k z^k` with `c_k` polynomials,
/// truncated (inclusively) at order `N`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PowerSeries {
    coeffs: Vec<Polynomial>,
}

impl PowerSeries {
    /// Builds a series from its coefficients; the truncation order is
    /// `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Polynomial>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least the z^0 coefficient");
        PowerSeries { coeffs }
    }

    pub fn zero(trunc_order: usize) -> Self {
        PowerSeries { coeffs: alloc::vec![Polynomial::zero(); trunc_order + 1] }
    }

    pub fn one(trunc_order: usize) -> Self {
        let mut s = PowerSeries::zero(trunc_order);
        s.coeffs[0] = Polynomial::one();
        s
    }

    /// The monomial series `p * z^k`.
    pub fn monomial(p: Polynomial, k: usize, trunc_order: usize) -> Self {
        assert!(k <= trunc_order, "monomial degree beyond truncation order");
        let mut s = PowerSeries::zero(trunc_order);
        s.coeffs[k] = p;
        s
    }

    pub fn trunc_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The exact coefficient of `z^k`.
    pub fn coeff(&self, k: usize) -> Result<&Polynomial, SeriesError> {
        self.coeffs.get(k).ok_or(SeriesError::IndexBeyondTruncation {
            index: k,
            trunc_order: self.trunc_order(),
        })
    }

    /// Re-truncates to a lower (or equal) order.
    pub fn truncated(&self, trunc_order: usize) -> Self {
        assert!(trunc_order <= self.trunc_order(), "cannot extend a truncated series");
        PowerSeries { coeffs: self.coeffs[..=trunc_order].to_vec() }
    }

    /// All even-index coefficients vanish.
    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(Polynomial::is_zero)
    }

    /// All odd-index coefficients vanish.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Polynomial::is_zero)
    }

    fn check_orders(&self, other: &PowerSeries) -> Result<(), SeriesError> {
        if self.trunc_order() != other.trunc_order() {
            return Err(SeriesError::TruncationMismatch {
                left: self.trunc_order(),
                right: other.trunc_order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &PowerSeries) -> Result<PowerSeries, SeriesError> {
        self.check_orders(other)?;
        Ok(PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &PowerSeries) -> Result<PowerSeries, SeriesError> {
        self.check_orders(other)?;
        Ok(PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> PowerSeries {
        PowerSeries { coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect() }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &PowerSeries) -> Result<PowerSeries, SeriesError> {
        self.check_orders(other)?;
        let n = self.trunc_order();
        let mut coeffs = alloc::vec![Polynomial::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > n {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Ok(PowerSeries { coeffs })
    }

    /// Multiplicative inverse `b` with `self * b = 1 + O(z^{N+1})`.
    ///
    /// The constant term must be a nonzero rational (in particular, an even
    /// series with constant term 1 inverts to an even series with constant
    /// term 1).
    pub fn inverse(&self) -> Result<PowerSeries, SeriesError> {
        let c0 = &self.coeffs[0];
        let unit = match c0.terms().next() {
            Some((m, c)) if m.is_unit() && c0.num_terms() == 1 => c.clone(),
            _ => return Err(SeriesError::NonUnitConstantTerm),
        };
        let n = self.trunc_order();
        let inv0 = unit.recip();
        let mut out = alloc::vec![Polynomial::zero(); n + 1];
        out[0] = Polynomial::constant(inv0.clone());
        for k in 1..=n {
            let mut acc = Polynomial::zero();
            for i in 1..=k {
                if self.coeffs[i].is_zero() || out[k - i].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[i].mul(&out[k - i]));
            }
            out[k] = acc.scale(&-&inv0);
        }
        Ok(PowerSeries { coeffs: out })
    }
}

/// Taylor coefficients of the named analytic function at the origin, up to
/// and including order `n`, as exact rationals.
///
/// The tanh and sech coefficients are generated from the differential
/// recurrences `tanh' = 1 - tanh^2` and `sech' = -sech tanh` rather than
/// hard-coded tables, so any truncation order is available.
pub fn taylor_coefficients(kind: HyperKind, n: usize) -> Vec<Rational> {
    match kind {
        HyperKind::Exp => (0..=n).map(|k| Rational::inv_factorial(k as u32)).collect(),
        HyperKind::Sinh => (0..=n)
            .map(|k| {
                if k % 2 == 1 {
                    Rational::inv_factorial(k as u32)
                } else {
                    Rational::zero()
                }
            })
            .collect(),
        HyperKind::Cosh => (0..=n)
            .map(|k| {
                if k % 2 == 0 {
                    Rational::inv_factorial(k as u32)
                } else {
                    Rational::zero()
                }
            })
            .collect(),
        HyperKind::Arctanh => (0..=n)
            .map(|k| {
                if k % 2 == 1 {
                    Rational::new(1, k as i64)
                } else {
                    Rational::zero()
                }
            })
            .collect(),
        HyperKind::Tanh => {
            let mut c = alloc::vec![Rational::zero(); n + 1];
            // (k+1) c_{k+1} = [w^k](1 - tanh^2)
            for k in 0..n {
                let mut rhs = if k == 0 { Rational::one() } else { Rational::zero() };
                for i in 0..=k {
                    rhs = rhs - &c[i] * &c[k - i];
                }
                c[k + 1] = rhs / Rational::from_int(k as i64 + 1);
            }
            c
        }
        HyperKind::Sech => {
            let tanh = taylor_coefficients(HyperKind::Tanh, n);
            let mut s = alloc::vec![Rational::zero(); n + 1];
            s[0] = Rational::one();
            // (k+1) s_{k+1} = -[w^k](sech tanh)
            for k in 0..n {
                let mut rhs = Rational::zero();
                for i in 0..=k {
                    rhs = rhs + &s[i] * &tanh[k - i];
                }
                s[k + 1] = -rhs / Rational::from_int(k as i64 + 1);
            }
            s
        }
    }
}

/// Composes the named analytic series with `inner`, truncated at the
/// inner series' order. The inner series must have zero constant term.
pub fn hyper_compose(kind: HyperKind, inner: &PowerSeries) -> Result<PowerSeries, SeriesError> {
    if !inner.coeffs[0].is_zero() {
        return Err(SeriesError::NonzeroConstantTerm);
    }
    let n = inner.trunc_order();
    let outer = taylor_coefficients(kind, n);
    // Horner evaluation of the outer Taylor polynomial in the inner series;
    // every intermediate stays truncated at n.
    let mut acc = PowerSeries::zero(n);
    acc.coeffs[0] = Polynomial::constant(outer[n].clone());
    for k in (0..n).rev() {
        acc = acc.mul(inner)?;
        if !outer[k].is_zero() {
            acc.coeffs[0] = acc.coeffs[0].add(&Polynomial::constant(outer[k].clone()));
        }
    }
    Ok(acc)
}

/// The canonical odd inner series `eta = sum_{i >= 2} t_{2i-1} z^{2i-1}`,
/// including every odd time `3 <= k <= max_index` that fits under the
/// truncation order.
pub fn eta_series(max_index: u32, trunc_order: usize) -> PowerSeries {
    let mut s = PowerSeries::zero(trunc_order);
    let mut k = 3u32;
    while k <= max_index && (k as usize) <= trunc_order {
        s.coeffs[k as usize] = Polynomial::variable(Variable::t(k));
        k += 2;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Monomial;

    fn int(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn xz(trunc: usize) -> PowerSeries {
        PowerSeries::monomial(Polynomial::variable(Variable::x()), 1, trunc)
    }

    #[test]
    fn cauchy_product() {
        // (1 + z)(1 - z) = 1 - z^2 at N = 2.
        let one_plus = PowerSeries::new(alloc::vec![
            Polynomial::one(),
            Polynomial::one(),
            Polynomial::zero(),
        ]);
        let one_minus = PowerSeries::new(alloc::vec![
            Polynomial::one(),
            Polynomial::constant(int(-1)),
            Polynomial::zero(),
        ]);
        let prod = one_plus.mul(&one_minus).unwrap();
        assert_eq!(prod.coeff(0).unwrap(), &Polynomial::one());
        assert!(prod.coeff(1).unwrap().is_zero());
        assert_eq!(prod.coeff(2).unwrap(), &Polynomial::constant(int(-1)));
    }

    #[test]
    fn eta_squared() {
        // (t3 z^3 + t5 z^5)^2 = t3^2 z^6 + 2 t3 t5 z^8 + t5^2 z^10 at N = 10.
        let eta = eta_series(5, 10);
        let sq = eta.mul(&eta).unwrap();
        let t3 = Variable::t(3);
        let t5 = Variable::t(5);
        assert_eq!(sq.coeff(6).unwrap(), &Polynomial::term(Monomial::var(t3, 2), int(1)));
        assert_eq!(
            sq.coeff(8).unwrap(),
            &Polynomial::term(Monomial::from_pairs(&[(t3, 1), (t5, 1)]), int(2))
        );
        assert_eq!(sq.coeff(10).unwrap(), &Polynomial::term(Monomial::var(t5, 2), int(1)));
        for k in [0, 1, 2, 3, 4, 5, 7, 9] {
            assert!(sq.coeff(k).unwrap().is_zero());
        }
        assert!(sq.is_even());
    }

    #[test]
    fn truncation_mismatch_is_an_error() {
        let a = PowerSeries::zero(3);
        let b = PowerSeries::zero(4);
        assert_eq!(
            a.mul(&b),
            Err(SeriesError::TruncationMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn geometric_inverse() {
        // inv(1 - z^2) = 1 + z^2 + z^4 + z^6 at N = 6.
        let mut s = PowerSeries::one(6);
        s.coeffs[2] = Polynomial::constant(int(-1));
        let inv = s.inverse().unwrap();
        for k in 0..=6 {
            let expect = if k % 2 == 0 { Polynomial::one() } else { Polynomial::zero() };
            assert_eq!(inv.coeff(k).unwrap(), &expect);
        }
        assert!(inv.is_even());
    }

    #[test]
    fn inverse_of_one_and_non_unit_rejection() {
        assert_eq!(PowerSeries::one(4).inverse().unwrap(), PowerSeries::one(4));
        let bad = PowerSeries::monomial(Polynomial::variable(Variable::x()), 0, 3);
        assert_eq!(bad.inverse(), Err(SeriesError::NonUnitConstantTerm));
        assert_eq!(PowerSeries::zero(3).inverse(), Err(SeriesError::NonUnitConstantTerm));
    }

    #[test]
    fn sinh_taylor_in_x() {
        // sinh(xz) carries x^{2j-1}/(2j-1)! at z^{2j-1}.
        let sinh = hyper_compose(HyperKind::Sinh, &xz(7)).unwrap();
        assert_eq!(sinh.coeff(1).unwrap(), &Polynomial::variable(Variable::x()));
        for j in 1..=4usize {
            let k = 2 * j - 1;
            let expect = Polynomial::term(
                Monomial::var(Variable::x(), k as i32),
                Rational::inv_factorial(k as u32),
            );
            assert_eq!(sinh.coeff(k).unwrap(), &expect);
        }
        assert!(sinh.is_odd());
    }

    #[test]
    fn tanh_of_eta_leading_coefficients() {
        // tanh(t3 z^3 + t5 z^5 + t7 z^7 + t9 z^9): z^3 -> t3, z^5 -> t5 (and zero
        // at z^5 when only t3 is present), z^9 -> t9 - t3^3/3.
        let tanh = hyper_compose(HyperKind::Tanh, &eta_series(9, 10)).unwrap();
        assert_eq!(tanh.coeff(3).unwrap(), &Polynomial::variable(Variable::t(3)));
        assert_eq!(tanh.coeff(5).unwrap(), &Polynomial::variable(Variable::t(5)));
        let z9 = Polynomial::from_terms(&[
            (int(1), &[(Variable::t(9), 1)]),
            (Rational::new(-1, 3), &[(Variable::t(3), 3)]),
        ]);
        assert_eq!(tanh.coeff(9).unwrap(), &z9);
        assert!(tanh.is_odd());

        let only_t3 = hyper_compose(HyperKind::Tanh, &eta_series(3, 5)).unwrap();
        assert_eq!(only_t3.coeff(3).unwrap(), &Polynomial::variable(Variable::t(3)));
        assert!(only_t3.coeff(5).unwrap().is_zero());
    }

    #[test]
    fn coefficient_beyond_truncation() {
        let s = PowerSeries::zero(4);
        assert_eq!(
            s.coeff(5).err(),
            Some(SeriesError::IndexBeyondTruncation { index: 5, trunc_order: 4 })
        );
    }

    #[test]
    fn composition_requires_zero_constant_term() {
        let bad = PowerSeries::one(4);
        assert_eq!(hyper_compose(HyperKind::Tanh, &bad), Err(SeriesError::NonzeroConstantTerm));
    }

    #[test]
    fn tanh_is_sinh_over_cosh_and_sech_is_inverse_cosh() {
        let inner = eta_series(7, 9);
        let sinh = hyper_compose(HyperKind::Sinh, &inner).unwrap();
        let cosh = hyper_compose(HyperKind::Cosh, &inner).unwrap();
        let tanh = hyper_compose(HyperKind::Tanh, &inner).unwrap();
        let sech = hyper_compose(HyperKind::Sech, &inner).unwrap();
        assert_eq!(tanh, sinh.mul(&cosh.inverse().unwrap()).unwrap());
        assert_eq!(sech, cosh.inverse().unwrap());
    }

    #[test]
    fn cosh_squared_minus_sinh_squared() {
        let inner = eta_series(9, 11);
        let sinh = hyper_compose(HyperKind::Sinh, &inner).unwrap();
        let cosh = hyper_compose(HyperKind::Cosh, &inner).unwrap();
        let id = cosh.mul(&cosh).unwrap().sub(&sinh.mul(&sinh).unwrap()).unwrap();
        assert_eq!(id, PowerSeries::one(11));
    }

    #[test]
    fn arctanh_inverts_tanh() {
        let inner = eta_series(7, 9);
        let tanh = hyper_compose(HyperKind::Tanh, &inner).unwrap();
        let back = hyper_compose(HyperKind::Arctanh, &tanh).unwrap();
        assert_eq!(back, inner);
    }

    #[test]
    fn parity_rules() {
        let inner = eta_series(5, 8);
        assert!(inner.is_odd());
        assert!(hyper_compose(HyperKind::Tanh, &inner).unwrap().is_odd());
        assert!(hyper_compose(HyperKind::Sinh, &inner).unwrap().is_odd());
        assert!(hyper_compose(HyperKind::Arctanh, &inner).unwrap().is_odd());
        let cosh = hyper_compose(HyperKind::Cosh, &inner).unwrap();
        let sech = hyper_compose(HyperKind::Sech, &inner).unwrap();
        assert!(cosh.is_even());
        assert!(sech.is_even());
        assert_eq!(cosh.coeff(0).unwrap(), &Polynomial::one());
        assert_eq!(sech.coeff(0).unwrap(), &Polynomial::one());
    }

    #[test]
    fn odd_times_even_with_unit_constant_keeps_leading_term() {
        // sinh(xz) * sech(even series with constant term 1): the z^1
        // coefficient stays x.
        let sinh = hyper_compose(HyperKind::Sinh, &xz(7)).unwrap();
        let sech = hyper_compose(HyperKind::Sech, &eta_series(5, 7)).unwrap();
        let prod = sinh.mul(&sech).unwrap();
        assert!(prod.is_odd());
        assert_eq!(prod.coeff(1).unwrap(), &Polynomial::variable(Variable::x()));
    }
}
