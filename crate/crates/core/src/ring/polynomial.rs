//! Sparse multivariate polynomials over the exact rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by monomial under the canonical
//! graded-lexicographic order (total weight first, then lexicographic on
//! exponents with `x = t_1 < t_3 < ... < q_3 < ... < s_3 < ... < lambda_inv`),
//! so iteration order, equality and serialization are all deterministic.
//! Zero coefficients are never stored.
//!
//! Exponents are signed: `lambda_inv` may carry negative powers (they stand
//! for powers of `lambda`), every other variable is restricted to
//! nonnegative exponents.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::{Rational, Variable};

/// A monomial: a sparse exponent vector over the variable alphabet.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    /// Sorted by variable, no zero exponents.
    factors: Vec<(Variable, i32)>,
}

impl Monomial {
    /// The empty monomial `1`.
    pub fn unit() -> Self {
        Monomial { factors: Vec::new() }
    }

    /// Single-variable monomial `v^exp`.
    pub fn var(v: Variable, exp: i32) -> Self {
        assert!(
            exp >= 0 || v.allows_negative_exponent(),
            "negative exponent on {v}"
        );
        if exp == 0 {
            Monomial::unit()
        } else {
            Monomial { factors: alloc::vec![(v, exp)] }
        }
    }

    /// Builds a monomial from (variable, exponent) pairs; duplicates are
    /// accumulated and zero exponents dropped.
    pub fn from_pairs(pairs: &[(Variable, i32)]) -> Self {
        let mut map: BTreeMap<Variable, i32> = BTreeMap::new();
        for &(v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        let factors: Vec<(Variable, i32)> = map.into_iter().filter(|&(_, e)| e != 0).collect();
        for &(v, e) in &factors {
            assert!(e >= 0 || v.allows_negative_exponent(), "negative exponent on {v}");
        }
        Monomial { factors }
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, v: Variable) -> i32 {
        self.factors
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (Variable, i32)> + '_ {
        self.factors.iter().copied()
    }

    /// Total grading weight, `sum exp * weight(var)`.
    pub fn weight(&self) -> i64 {
        self.factors.iter().map(|&(v, e)| v.weight() * e as i64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (va, ea) = self.factors[i];
            let (vb, eb) = other.factors[j];
            match va.cmp(&vb) {
                Ordering::Less => {
                    factors.push((va, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    factors.push((vb, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    if ea + eb != 0 {
                        factors.push((va, ea + eb));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        factors.extend_from_slice(&self.factors[i..]);
        factors.extend_from_slice(&other.factors[j..]);
        Monomial { factors }
    }

    /// Exact monomial quotient `self / other`, or `None` when a variable
    /// that forbids negative exponents would go negative.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let inv = Monomial {
            factors: other.factors.iter().map(|&(v, e)| (v, -e)).collect(),
        };
        let q = self.mul(&inv);
        for &(v, e) in &q.factors {
            if e < 0 && !v.allows_negative_exponent() {
                return None;
            }
        }
        Some(q)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // Graded: total weight first.
        match self.weight().cmp(&other.weight()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Lexicographic: first variable (in canonical ascending order) with
        // differing exponent decides; the higher exponent is the larger
        // monomial.
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.factors.get(i), other.factors.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, ea)), None) => return ea.cmp(&0),
                (None, Some(&(_, eb))) => return 0.cmp(&eb),
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(&eb),
                    Ordering::Equal => {
                        match ea.cmp(&eb) {
                            Ordering::Equal => {}
                            ord => return ord,
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Error returned by [`Polynomial::graded_degree`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GradedDegreeError {
    /// The zero polynomial has no graded degree.
    ZeroPolynomial,
    /// Terms of distinct weights are present; the offending weights are
    /// listed in ascending order.
    NonHomogeneous(Vec<i64>),
}

impl fmt::Display for GradedDegreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradedDegreeError::ZeroPolynomial => write!(f, "zero polynomial has no graded degree"),
            GradedDegreeError::NonHomogeneous(ws) => {
                write!(f, "polynomial is not weight-homogeneous; weights {ws:?}")
            }
        }
    }
}

impl core::error::Error for GradedDegreeError {}

/// A sparse multivariate polynomial with [`Rational`] coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::unit(), c);
        p
    }

    pub fn variable(v: Variable) -> Self {
        Polynomial::term(Monomial::var(v, 1), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    /// Convenience builder: sum of `coeff * prod v^e` terms.
    pub fn from_terms(terms: &[(Rational, &[(Variable, i32)])]) -> Self {
        let mut p = Polynomial::zero();
        for (c, pairs) in terms {
            p.add_term(Monomial::from_pairs(pairs), c.clone());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical ascending order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// The coefficient of a monomial (zero when absent).
    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading term under the canonical order, if any.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// The set of variables occurring with nonzero exponent.
    pub fn variables(&self) -> Vec<Variable> {
        let mut vars: Vec<Variable> = Vec::new();
        for m in self.terms.keys() {
            for (v, _) in m.factors() {
                if let Err(pos) = vars.binary_search(&v) {
                    vars.insert(pos, v);
                }
            }
        }
        vars
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn negate(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact partial derivative of the given order with respect to `v`.
    pub fn diff(&self, v: Variable, order: u32) -> Polynomial {
        let mut p = self.clone();
        for _ in 0..order {
            let mut out = Polynomial::zero();
            for (m, c) in &p.terms {
                let e = m.exponent(v);
                if e == 0 {
                    continue;
                }
                let lowered = m
                    .try_div(&Monomial::var(v, 1))
                    .expect("derivative lowers the exponent by one");
                out.add_term(lowered, c * &Rational::from_int(e as i64));
            }
            p = out;
        }
        p
    }

    /// Simultaneous substitution of variables by polynomials. Bound
    /// variables absent from `self` are ignored; unbound variables pass
    /// through unchanged.
    pub fn substitute(&self, bindings: &BTreeMap<Variable, Polynomial>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(c.clone());
            let mut residue = Monomial::unit();
            for (v, e) in m.factors() {
                match bindings.get(&v) {
                    None => residue = residue.mul(&Monomial::var(v, e)),
                    Some(b) => {
                        assert!(e >= 0, "cannot substitute into a negative power of {v}");
                        term = term.mul(&b.pow(e as u32));
                    }
                }
            }
            out = out.add(&term.mul(&Polynomial::term(residue, Rational::one())));
        }
        out
    }

    /// The common weight of all terms, or an error when the polynomial is
    /// zero or mixes weights.
    pub fn graded_degree(&self) -> Result<i64, GradedDegreeError> {
        let mut weights: Vec<i64> = self.terms.keys().map(|m| m.weight()).collect();
        weights.sort_unstable();
        weights.dedup();
        match weights.as_slice() {
            [] => Err(GradedDegreeError::ZeroPolynomial),
            [w] => Ok(*w),
            _ => Err(GradedDegreeError::NonHomogeneous(weights)),
        }
    }

    /// Highest exponent of `v` across all terms (zero for the zero
    /// polynomial).
    pub fn degree_in(&self, v: Variable) -> i32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Collects the coefficient of `v^k` as a polynomial in the remaining
    /// variables.
    pub fn coeff_of_power(&self, v: Variable, k: i32) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            if m.exponent(v) == k {
                let reduced = m
                    .try_div(&Monomial::var(v, k))
                    .expect("dividing out the full power of v");
                out.add_term(reduced, c.clone());
            }
        }
        out
    }

    /// Exact polynomial quotient `self / divisor`, or `None` when the
    /// division is not exact. Used by fraction-free elimination, where
    /// exactness is guaranteed.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let (dm, dc) = divisor.leading_term().expect("nonzero divisor");
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        let mut steps: usize = 0;
        while let Some((lm, lc)) = rem.leading_term() {
            let qm = lm.try_div(&dm)?;
            let qc = lc / &dc;
            let t = Polynomial::term(qm, qc);
            rem = rem.sub(&t.mul(divisor));
            quot = quot.add(&t);
            steps += 1;
            if steps > 1_000_000 {
                return None;
            }
        }
        Some(quot)
    }

    /// The rational content: gcd of coefficient numerators over lcm of
    /// denominators. Zero for the zero polynomial.
    pub fn content(&self) -> Rational {
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_traits::{One, Zero};
        if self.is_zero() {
            return Rational::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        Rational::from_bigints(num_gcd, den_lcm)
    }

    /// Renders the first `limit` terms in canonical descending order,
    /// marking any truncation with a trailing ellipsis.
    pub fn display_leading(&self, limit: usize) -> alloc::string::String {
        let mut s = alloc::string::String::new();
        if self.is_zero() {
            return alloc::string::String::from("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i == limit {
                s.push_str(" + ...");
                break;
            }
            write_term(&mut s, m, c, i == 0).expect("string write");
        }
        s
    }
}

fn write_term(f: &mut dyn fmt::Write, m: &Monomial, c: &Rational, first: bool) -> fmt::Result {
    let neg = c.is_negative();
    if first {
        if neg {
            f.write_str("-")?;
        }
    } else if neg {
        f.write_str(" - ")?;
    } else {
        f.write_str(" + ")?;
    }
    let mag = c.abs();
    if m.is_unit() {
        return write!(f, "{mag}");
    }
    let mut wrote = false;
    if !mag.is_one() {
        write!(f, "{mag}")?;
        wrote = true;
    }
    // Mirror the usual typography of these polynomials: t/q/s factors in
    // ascending index first, the x-power last.
    let mut factors: Vec<(Variable, i32)> = m.factors().collect();
    factors.sort_by_key(|&(v, _)| (v == Variable::x(), v));
    for (v, e) in factors {
        if wrote {
            f.write_str("*")?;
        }
        wrote = true;
        if e == 1 {
            write!(f, "{v}")?;
        } else {
            write!(f, "{v}^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            write_term(f, m, c, i == 0)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::add(self, rhs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::sub(self, rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::mul(self, rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.negate()
    }
}
