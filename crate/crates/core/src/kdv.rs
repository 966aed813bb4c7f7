//! The Adler-Moser polynomials, the tanh change of variables, and the
//! polynomial tau functions of the KdV hierarchy.
//!
//! The Adler-Moser sequence `theta_n(x, q_3, ..., q_{2n-1})` is built along
//! two independent routes and the two must agree exactly:
//!
//! - `adler_moser_recursive`: solve the bilinear recursion
//!   `theta_{n+1}' theta_{n-1} - theta_{n+1} theta_{n-1}' = (2n+1) theta_n^2`
//!   by undetermined coefficients, fixing the integration constant
//!   `q_{2n+1}` as the coefficient of `x^{d_{n-1}}`;
//! - `adler_moser_wronskian`: rescale the psi Wronskians,
//!   `theta_n = mu_n W_n` with `s_{2i-1} = q_{2i-1} / alpha_{2i-1}`.
//!
//! Substituting `q_{2i-1} = alpha_{2i-1} * [z^{2i-1}] tanh(sum t_{2i-1} z^{2i-1})`
//! turns the `theta_n` into the tau functions `tau_n(x, t_3, ..., t_{2n-1})`,
//! which equal `mu_n Wr(phi_1, ..., phi_n)`; `u = -2 (log tau)''` then gives
//! the rational KdV solutions.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::ring::{Monomial, Polynomial, Rational, RationalFunction, Variable};
use crate::series::{eta_series, hyper_compose, HyperKind, PowerSeries};
use crate::wronskian::{phi_family, psi_family, wronskian};

pub use crate::wronskian::mu_factor;

/// How a theta sequence was constructed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Route {
    Recursion,
    Wronskian,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Route::Recursion => write!(f, "recursion"),
            Route::Wronskian => write!(f, "wronskian"),
        }
    }
}

/// `d_n = n(n+1)/2`, the x-degree and grading weight of `theta_n`/`tau_n`.
pub fn triangular_weight(n: u32) -> u32 {
    n * (n + 1) / 2
}

/// The Adler-Moser polynomials `theta_0..theta_n` in `x, q_3, ..., q_{2n-1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdlerMoserSequence {
    thetas: Vec<Polynomial>,
    route: Route,
}

impl AdlerMoserSequence {
    pub fn theta(&self, k: usize) -> &Polynomial {
        &self.thetas[k]
    }

    pub fn thetas(&self) -> &[Polynomial] {
        &self.thetas
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    pub fn route(&self) -> Route {
        self.route
    }
}

/// The tau functions `tau_0..tau_n` in `x, t_3, ..., t_{2n-1}`, normalized
/// monic in `x^{d_n}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TauSequence {
    taus: Vec<Polynomial>,
}

impl TauSequence {
    pub fn tau(&self, k: usize) -> &Polynomial {
        &self.taus[k]
    }

    pub fn taus(&self) -> &[Polynomial] {
        &self.taus
    }

    pub fn len(&self) -> usize {
        self.taus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taus.is_empty()
    }
}

/// The change of variables `q -> t`: each `q_{2i-1}` as a polynomial in
/// `t_3, ..., t_{2i-1}`, together with the rescaling constants
/// `alpha_{2i-1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChangeOfVariables {
    /// Keyed by the odd index `2i-1`.
    q_in_t: BTreeMap<u32, Polynomial>,
    alphas: BTreeMap<u32, Rational>,
}

impl ChangeOfVariables {
    /// The expression of `q_k` in the t-times, for odd `k >= 3`.
    pub fn q_binding(&self, k: u32) -> Option<&Polynomial> {
        self.q_in_t.get(&k)
    }

    pub fn alpha(&self, k: u32) -> Option<&Rational> {
        self.alphas.get(&k)
    }

    /// The odd indices covered, in ascending order.
    pub fn indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.q_in_t.keys().copied()
    }

    /// Substitution map `q_k -> polynomial in t`, ready for
    /// [`Polynomial::substitute`].
    pub fn as_bindings(&self) -> BTreeMap<Variable, Polynomial> {
        self.q_in_t
            .iter()
            .map(|(&k, p)| (Variable::q(k), p.clone()))
            .collect()
    }
}

/// Failure of the undetermined-coefficient solve. This signals an
/// implementation bug, not a mathematical one: the bilinear recursion has a
/// unique solution once the integration constant is normalized.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LinearSolveFailure {
    /// The linear system has no solution.
    Inconsistent { index: u32 },
    /// The linear system has leftover freedom beyond the normalized
    /// integration constant.
    Underdetermined { index: u32 },
}

impl fmt::Display for LinearSolveFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinearSolveFailure::Inconsistent { index } => {
                write!(f, "bilinear recursion system inconsistent at theta_{index}")
            }
            LinearSolveFailure::Underdetermined { index } => {
                write!(f, "bilinear recursion system underdetermined at theta_{index}")
            }
        }
    }
}

impl core::error::Error for LinearSolveFailure {}

/// `alpha_{2i-1} = (-1)^{i-1} 3^2 5^2 ... (2i-3)^2 (2i-1)` for `i >= 2`:
/// `alpha_3 = -3`, `alpha_5 = 45`, `alpha_7 = -1575`, `alpha_9 = 99225`.
pub fn alpha_coefficient(i: u32) -> Rational {
    assert!(i >= 2, "alpha is defined for i >= 2");
    let mut a = Rational::from_int(2 * i as i64 - 1);
    let mut j = 3i64;
    while j <= 2 * i as i64 - 3 {
        a = a * Rational::from_int(j * j);
        j += 2;
    }
    if i.is_multiple_of(2) {
        a = -a;
    }
    a
}

/// Builds `theta_0..theta_n` by solving the bilinear recursion with exact
/// linear algebra.
pub fn adler_moser_recursive(n: u32) -> Result<AdlerMoserSequence, LinearSolveFailure> {
    let mut thetas = alloc::vec![Polynomial::one()];
    if n >= 1 {
        thetas.push(Polynomial::variable(Variable::x()));
    }
    for next in 2..=n {
        let step = theta_step(&thetas[next as usize - 2], &thetas[next as usize - 1], next)?;
        thetas.push(step);
    }
    thetas.truncate(n as usize + 1);
    Ok(AdlerMoserSequence { thetas, route: Route::Recursion })
}

/// Builds `theta_0..theta_n` as `mu_k W_k` under the substitution
/// `s_{2i-1} -> q_{2i-1}/alpha_{2i-1} + (compound correction)`.
///
/// The pure rescaling `s = q/alpha` reproduces the bare-q normalization
/// (the coefficient of `x^{d_{k-2}}` in `theta_k` is the bare `q_{2k-1}`)
/// only while no compound monomial of odd weight can interfere; the first
/// failure is at `theta_6`, where `x^{d_4}` picks up `8085 q_3^2 q_5` next
/// to `q_11`. Since `W_k` depends on `s_{2k-1}` exactly as
/// `(-1)^{k-1} s_{2k-1} W_{k-2}`, the impurity is absorbed into the
/// `s_{2k-1}` binding itself. Re-choosing these x-free ladder constants
/// keeps every Wronskian identity intact, so the resulting thetas satisfy
/// the bilinear recursion and match the recursive route exactly.
pub fn adler_moser_wronskian(n: u32) -> AdlerMoserSequence {
    let mut thetas = alloc::vec![Polynomial::one()];
    if n >= 1 {
        let family = psi_family(n as usize);
        let mut bindings: BTreeMap<Variable, Polynomial> = BTreeMap::new();
        for i in 2..=n {
            let k = 2 * i - 1;
            bindings.insert(
                Variable::s(k),
                Polynomial::term(Monomial::var(Variable::q(k), 1), alpha_coefficient(i).recip()),
            );
        }
        let x = Variable::x();
        for k in 1..=n as usize {
            let w = wronskian(&family.members()[..k]);
            let mut theta = w.substitute(&bindings).scale(&mu_factor(k as u32));
            if k >= 2 {
                let d_lower = triangular_weight(k as u32 - 2) as i32;
                let gamma = theta
                    .coeff_of_power(x, d_lower)
                    .sub(&Polynomial::variable(Variable::q(2 * k as u32 - 1)));
                if !gamma.is_zero() {
                    // Shifting the s_{2k-1} binding by delta moves theta_k by
                    // (-1)^{k-1} (mu_k/mu_{k-2}) delta theta_{k-2}; pick delta
                    // to cancel gamma at x^{d_{k-2}} exactly.
                    let sign = if k % 2 == 0 { Rational::one() } else { Rational::from_int(-1) };
                    let ratio = mu_factor(k as u32 - 2) / mu_factor(k as u32);
                    let delta = gamma.scale(&(sign * ratio));
                    let key = Variable::s(2 * k as u32 - 1);
                    let shifted = bindings
                        .get(&key)
                        .expect("binding exists for k >= 2")
                        .add(&delta);
                    bindings.insert(key, shifted);
                    theta = theta.sub(&gamma.mul(&thetas[k - 2]));
                }
            }
            thetas.push(theta);
        }
    }
    AdlerMoserSequence { thetas, route: Route::Wronskian }
}

/// The change of variables for `q_3 .. q_{2n-1}`:
/// `q_{2i-1} = alpha_{2i-1} * [z^{2i-1}] tanh(sum_{i>=2} t_{2i-1} z^{2i-1})`.
pub fn change_of_variables(n: u32) -> ChangeOfVariables {
    assert!(n >= 2, "the change of variables starts at q_3");
    let trunc = 2 * n as usize - 1;
    let tanh = hyper_compose(HyperKind::Tanh, &eta_series(trunc as u32, trunc))
        .expect("eta has zero constant term");
    let mut q_in_t = BTreeMap::new();
    let mut alphas = BTreeMap::new();
    for i in 2..=n {
        let k = 2 * i - 1;
        let alpha = alpha_coefficient(i);
        let coeff = tanh.coeff(k as usize).expect("below truncation").clone();
        q_in_t.insert(k, coeff.scale(&alpha));
        alphas.insert(k, alpha);
    }
    ChangeOfVariables { q_in_t, alphas }
}

/// The tau functions `tau_k = mu_k Wr(phi_1, ..., phi_k)` for `k = 0..n`.
/// The scaling makes each `tau_k` monic in `x^{d_k}`.
///
/// For `k <= 5` the same polynomials arise from `theta_k` under
/// [`change_of_variables`]. From `k = 6` on, the substitution inherits the
/// bare-q integration-constant convention of the theta sequence and differs
/// from the Wronskian by an x-free multiple of `tau_{k-2}` (at `k = 6`:
/// `-3274425 t_3^2 t_5 tau_4`). The Wronskians are the tau functions; the
/// wave-function identity holds for them, not for the realigned variant.
pub fn tau_polynomial(n: u32) -> TauSequence {
    let mut taus = alloc::vec![Polynomial::one()];
    if n >= 1 {
        let family = phi_family(n as usize);
        for k in 1..=n as usize {
            let w = wronskian(&family.members()[..k]);
            taus.push(w.scale(&mu_factor(k as u32)));
        }
    }
    TauSequence { taus }
}

/// `u = -2 (log tau)'' = -2 (tau'' tau - (tau')^2) / tau^2`, derivatives
/// in `x`. Panics on a zero tau.
pub fn u_from_tau(tau: &Polynomial) -> RationalFunction {
    assert!(!tau.is_zero(), "tau must be nonzero");
    let x = Variable::x();
    let d1 = tau.diff(x, 1);
    let d2 = tau.diff(x, 2);
    let num = (&d2.mul(tau) - &d1.mul(&d1)).scale(&Rational::from_int(-2));
    RationalFunction::new(num, tau.mul(tau))
}

/// The Miwa shift `tau(t - [1/lambda])`: substitutes
/// `t_k -> t_k - (1/k) lambda_inv^k` for every odd `k <= max_index` and
/// expands exactly.
pub fn miwa_shift(tau: &Polynomial, max_index: u32) -> Polynomial {
    let mut bindings: BTreeMap<Variable, Polynomial> = BTreeMap::new();
    let mut k = 1u32;
    while k <= max_index {
        let shift = Polynomial::from_terms(&[
            (Rational::one(), &[(Variable::t(k), 1)]),
            (Rational::new(-1, k as i64), &[(Variable::lambda_inv(), k as i32)]),
        ]);
        bindings.insert(Variable::t(k), shift);
        k += 2;
    }
    tau.substitute(&bindings)
}

/// The x-free coefficients `a_j` of `tanh(eta) = sum_{j>=2} a_j z^{2j-1}`;
/// `a_0 = a_1 = 0`. Indexed by `j`, covering `2j-1 <= trunc`.
pub fn a_series(trunc: usize) -> Vec<Polynomial> {
    assert!(trunc >= 3, "a-series needs truncation order >= 3");
    let tanh = hyper_compose(HyperKind::Tanh, &eta_series(trunc as u32, trunc))
        .expect("eta has zero constant term");
    let jmax = trunc.div_ceil(2);
    (0..=jmax)
        .map(|j| {
            if j == 0 {
                Polynomial::zero()
            } else {
                tanh.coeff(2 * j - 1).expect("below truncation").clone()
            }
        })
        .collect()
}

/// The x-free coefficients `b_j` of the even series
/// `sech(z/lambda) [1 - (z/lambda) tanh(z/lambda) - (z/lambda) tanh(eta)
///  + tanh(z/lambda) tanh(eta)]^{-1} = sum_{j>=0} b_j z^{2j}`, with
/// `b_0 = 1`. Indexed by `j`, covering `2j <= trunc`.
pub fn b_series(trunc: usize) -> Vec<Polynomial> {
    assert!(trunc >= 2, "b-series needs truncation order >= 2");
    let zl = PowerSeries::monomial(Polynomial::variable(Variable::lambda_inv()), 1, trunc);
    let tanh_zl = hyper_compose(HyperKind::Tanh, &zl).expect("zero constant term");
    let sech_zl = hyper_compose(HyperKind::Sech, &zl).expect("zero constant term");
    let tanh_eta = hyper_compose(HyperKind::Tanh, &eta_series(trunc as u32, trunc))
        .expect("zero constant term");
    let bracket = PowerSeries::one(trunc)
        .sub(&zl.mul(&tanh_zl).expect("orders"))
        .expect("orders")
        .sub(&zl.mul(&tanh_eta).expect("orders"))
        .expect("orders")
        .add(&tanh_zl.mul(&tanh_eta).expect("orders"))
        .expect("orders");
    let series = sech_zl
        .mul(&bracket.inverse().expect("bracket has constant term 1"))
        .expect("orders");
    (0..=trunc / 2)
        .map(|j| series.coeff(2 * j).expect("below truncation").clone())
        .collect()
}

/// Solves one step of the bilinear recursion: given `theta_{n-1}` and
/// `theta_n`, finds `theta_{n+1}` with
/// `theta_{n+1}' theta_{n-1} - theta_{n+1} theta_{n-1}' = (2n+1) theta_n^2`,
/// normalized so the coefficient of `x^{d_{n-1}}` is exactly the new
/// integration constant `q_{2n+1}`.
fn theta_step(
    prev: &Polynomial,
    curr: &Polynomial,
    next: u32,
) -> Result<Polynomial, LinearSolveFailure> {
    let n = next - 1;
    let d_next = triangular_weight(next) as i64;
    let norm_power = triangular_weight(next.saturating_sub(2)) as i64;
    let q_new = 2 * next - 1;
    let parts: Vec<u32> = (0..)
        .map(|i| 3 + 2 * i)
        .take_while(|&k| k <= q_new)
        .collect();

    // Unknown basis: x^m times a q-monomial of weight d_next - m.
    let mut basis: Vec<(i64, Monomial)> = Vec::new();
    for m in (0..=d_next).rev() {
        for q_mono in q_monomials_of_weight(d_next - m, &parts) {
            basis.push((m, q_mono));
        }
    }

    let x = Variable::x();
    let prev_dx = prev.diff(x, 1);
    // The recursion operator is linear in the unknown polynomial.
    let images: Vec<Polynomial> = basis
        .iter()
        .map(|(m, q_mono)| {
            let b = Polynomial::term(Monomial::var(x, *m as i32).mul(q_mono), Rational::one());
            &b.diff(x, 1).mul(prev) - &b.mul(&prev_dx)
        })
        .collect();
    let rhs_poly = curr.mul(curr).scale(&Rational::from_int(2 * n as i64 + 1));

    // One row per monomial appearing anywhere, plus the normalization rows
    // pinning the coefficient of x^{d_{n-1}} to the bare q_{2n+1}.
    let mut row_of: BTreeMap<Monomial, usize> = BTreeMap::new();
    for img in images.iter().chain(core::iter::once(&rhs_poly)) {
        for (mono, _) in img.terms() {
            let idx = row_of.len();
            row_of.entry(mono.clone()).or_insert(idx);
        }
    }
    let n_norm = basis.iter().filter(|(m, _)| *m == norm_power).count();
    let n_rows = row_of.len() + n_norm;
    let n_cols = basis.len();
    let mut a = alloc::vec![alloc::vec![Rational::zero(); n_cols]; n_rows];
    let mut b = alloc::vec![Rational::zero(); n_rows];
    for (u, img) in images.iter().enumerate() {
        for (mono, c) in img.terms() {
            a[row_of[mono]][u] = c.clone();
        }
    }
    for (mono, c) in rhs_poly.terms() {
        b[row_of[mono]] = c.clone();
    }
    let mut extra = row_of.len();
    let q_new_mono = Monomial::var(Variable::q(q_new), 1);
    for (u, (m, q_mono)) in basis.iter().enumerate() {
        if *m == norm_power {
            a[extra][u] = Rational::one();
            b[extra] = if *q_mono == q_new_mono { Rational::one() } else { Rational::zero() };
            extra += 1;
        }
    }

    let solution = solve_unique(a, b).map_err(|e| match e {
        SolveError::Inconsistent => LinearSolveFailure::Inconsistent { index: next },
        SolveError::Underdetermined => LinearSolveFailure::Underdetermined { index: next },
    })?;

    let mut theta = Polynomial::zero();
    for ((m, q_mono), c) in basis.iter().zip(solution) {
        if !c.is_zero() {
            theta = theta.add(&Polynomial::term(Monomial::var(x, *m as i32).mul(q_mono), c));
        }
    }
    Ok(theta)
}

/// All monomials of the given weight in the q-variables with indices drawn
/// from `parts` (ascending odd indices).
fn q_monomials_of_weight(weight: i64, parts: &[u32]) -> Vec<Monomial> {
    fn rec(weight: i64, parts: &[u32], stack: &mut Vec<(Variable, i32)>, out: &mut Vec<Monomial>) {
        if weight == 0 {
            out.push(Monomial::from_pairs(stack));
            return;
        }
        let Some((&k, rest)) = parts.split_last() else {
            return;
        };
        let max_e = weight / k as i64;
        for e in (0..=max_e).rev() {
            if e > 0 {
                stack.push((Variable::q(k), e as i32));
            }
            rec(weight - e * k as i64, rest, stack, out);
            if e > 0 {
                stack.pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut stack: Vec<(Variable, i32)> = Vec::new();
    rec(weight, parts, &mut stack, &mut out);
    out
}

pub(crate) enum SolveError {
    Inconsistent,
    Underdetermined,
}

/// Exact Gaussian elimination; requires a unique solution.
pub(crate) fn solve_unique(
    mut a: Vec<Vec<Rational>>,
    mut b: Vec<Rational>,
) -> Result<Vec<Rational>, SolveError> {
    let n_rows = a.len();
    let n_cols = if n_rows == 0 { 0 } else { a[0].len() };
    let mut rank = 0usize;
    for col in 0..n_cols {
        let Some(p) = (rank..n_rows).find(|&r| !a[r][col].is_zero()) else {
            return Err(SolveError::Underdetermined);
        };
        a.swap(rank, p);
        b.swap(rank, p);
        let inv = a[rank][col].recip();
        let pivot_row = a[rank].clone();
        for r in rank + 1..n_rows {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            for (c, pivot_entry) in pivot_row.iter().enumerate().skip(col) {
                let delta = &factor * pivot_entry;
                a[r][c] -= &delta;
            }
            let delta = &factor * &b[rank];
            b[r] -= &delta;
        }
        rank += 1;
    }
    if b[rank..].iter().any(|rhs| !rhs.is_zero()) {
        return Err(SolveError::Inconsistent);
    }
    // Back-substitution: pivot for column c sits in row c because every
    // column acquired a pivot in order.
    let mut x = alloc::vec![Rational::zero(); n_cols];
    for r in (0..rank).rev() {
        let mut acc = b[r].clone();
        for c in r + 1..n_cols {
            if !a[r][c].is_zero() {
                let delta = &a[r][c] * &x[c];
                acc -= &delta;
            }
        }
        x[r] = acc / a[r][r].clone();
    }
    Ok(x)
}
