//! Function families and (bordered) Wronskian determinants.
//!
//! Three families share the second-derivative ladder `f_j'' = f_{j-1}`:
//!
//! - `psi_j`: odd coefficients of `sinh(xz) + cosh(xz) sum s_{2i-1} z^{2i-1}`;
//! - `phi_j`: odd coefficients of `sinh(xz) + cosh(xz) tanh(sum t_{2i-1} z^{2i-1})`;
//! - `p_j`: odd coefficients of `exp(xz + sum t_{2i-1} z^{2i-1})`, the
//!   odd-time reduction of the elementary Schur polynomials.
//!
//! Wronskians are `det(D^{i-1} f_j)` with rows indexed by the derivative
//! order and columns by the family member. Determinants of size up to four
//! expand by cofactors; larger ones run fraction-free Bareiss elimination,
//! whose divisions are exact over the polynomial ring.

use alloc::vec::Vec;

use crate::ring::{Polynomial, Rational, Variable};
use crate::series::{eta_series, hyper_compose, HyperKind, PowerSeries};

/// Which generating series a family came from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FamilyKind {
    Psi,
    Phi,
    SchurOdd,
}

/// Position of the border function in a bordered Wronskian. The two
/// orderings differ by the sign `(-1)^n`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BorderPosition {
    First,
    Last,
}

/// A finite slice `f_1, ..., f_n` of one of the three function families.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FunctionFamily {
    kind: FamilyKind,
    members: Vec<Polynomial>,
}

impl FunctionFamily {
    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Member `f_j` for `1 <= j <= n`.
    pub fn member(&self, j: usize) -> &Polynomial {
        assert!(1 <= j && j <= self.members.len(), "family member index out of range");
        &self.members[j - 1]
    }

    /// Members `f_1..f_n` in order.
    pub fn members(&self) -> &[Polynomial] {
        &self.members
    }
}

/// Truncation order used for a family up to index `n`: member `j` sits at
/// `z^{2j-1}`, one spare order guards off-by-one mistakes.
fn family_trunc(n: usize) -> usize {
    2 * n + 1
}

/// Extracts members `f_1..f_n` from the odd z-coefficients of a series.
fn odd_members(series: &PowerSeries, n: usize) -> Vec<Polynomial> {
    (1..=n)
        .map(|j| series.coeff(2 * j - 1).expect("member below truncation").clone())
        .collect()
}

/// The psi family: `psi_j` is the `z^{2j-1}` coefficient of
/// `sinh(xz) + cosh(xz) (s_3 z^3 + s_5 z^5 + ...)`; `psi_1 = x`.
pub fn psi_family(n: usize) -> FunctionFamily {
    assert!(n >= 1, "family needs at least one member");
    let trunc = family_trunc(n);
    let xz = PowerSeries::monomial(Polynomial::variable(Variable::x()), 1, trunc);
    let sinh = hyper_compose(HyperKind::Sinh, &xz).expect("xz has zero constant term");
    let cosh = hyper_compose(HyperKind::Cosh, &xz).expect("xz has zero constant term");
    let mut s_times = PowerSeries::zero(trunc);
    let mut k = 3usize;
    while k <= trunc {
        s_times = s_times
            .add(&PowerSeries::monomial(
                Polynomial::variable(Variable::s(k as u32)),
                k,
                trunc,
            ))
            .expect("matched orders");
        k += 2;
    }
    let series = sinh
        .add(&cosh.mul(&s_times).expect("matched orders"))
        .expect("matched orders");
    FunctionFamily { kind: FamilyKind::Psi, members: odd_members(&series, n) }
}

/// The phi family: `phi_j` is the `z^{2j-1}` coefficient of
/// `sinh(xz) + cosh(xz) tanh(t_3 z^3 + t_5 z^5 + ...)`; applies the tanh
/// change of variables to the psi family at the level of the generating
/// series.
pub fn phi_family(n: usize) -> FunctionFamily {
    assert!(n >= 1, "family needs at least one member");
    let trunc = family_trunc(n);
    let xz = PowerSeries::monomial(Polynomial::variable(Variable::x()), 1, trunc);
    let sinh = hyper_compose(HyperKind::Sinh, &xz).expect("xz has zero constant term");
    let cosh = hyper_compose(HyperKind::Cosh, &xz).expect("xz has zero constant term");
    let eta = eta_series(trunc as u32, trunc);
    let tanh = hyper_compose(HyperKind::Tanh, &eta).expect("eta has zero constant term");
    let series = sinh
        .add(&cosh.mul(&tanh).expect("matched orders"))
        .expect("matched orders");
    FunctionFamily { kind: FamilyKind::Phi, members: odd_members(&series, n) }
}

/// The odd-time elementary Schur family: `p_j` is the `z^{2j-1}` coefficient
/// of `exp(xz + t_3 z^3 + t_5 z^5 + ...)`. Generated directly with only odd
/// times; no even times are ever materialized.
pub fn schur_odd_family(n: usize) -> FunctionFamily {
    assert!(n >= 1, "family needs at least one member");
    let trunc = family_trunc(n);
    let xz = PowerSeries::monomial(Polynomial::variable(Variable::x()), 1, trunc);
    let inner = xz
        .add(&eta_series(trunc as u32, trunc))
        .expect("matched orders");
    let series = hyper_compose(HyperKind::Exp, &inner).expect("zero constant term");
    FunctionFamily { kind: FamilyKind::SchurOdd, members: odd_members(&series, n) }
}

/// Wronskian `Wr(f_1, ..., f_n) = det(D^{i-1} f_j)` with derivatives in `x`.
/// The empty Wronskian is 1.
pub fn wronskian(fs: &[Polynomial]) -> Polynomial {
    let n = fs.len();
    let x = Variable::x();
    let matrix: Vec<Vec<Polynomial>> = (0..n)
        .map(|order| fs.iter().map(|f| f.diff(x, order as u32)).collect())
        .collect();
    determinant(matrix)
}

/// Bordered Wronskian: `Wr` of the family with one extra function placed in
/// the given column position.
pub fn bordered_wronskian(
    chi: &Polynomial,
    fs: &[Polynomial],
    position: BorderPosition,
) -> Polynomial {
    let mut columns: Vec<Polynomial> = Vec::with_capacity(fs.len() + 1);
    match position {
        BorderPosition::First => {
            columns.push(chi.clone());
            columns.extend_from_slice(fs);
        }
        BorderPosition::Last => {
            columns.extend_from_slice(fs);
            columns.push(chi.clone());
        }
    }
    wronskian(&columns)
}

/// Exact determinant of a square polynomial matrix.
pub(crate) fn determinant(matrix: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = matrix.len();
    if n == 0 {
        return Polynomial::one();
    }
    for row in &matrix {
        assert!(row.len() == n, "determinant needs a square matrix");
    }
    if n <= 4 {
        cofactor_det(&matrix)
    } else {
        bareiss_det(matrix)
    }
}

fn cofactor_det(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = Polynomial::zero();
    for (i, row) in m.iter().enumerate() {
        if row[0].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = m
            .iter()
            .enumerate()
            .filter(|&(r, _)| r != i)
            .map(|(_, r)| r[1..].to_vec())
            .collect();
        let cof = row[0].mul(&cofactor_det(&minor));
        if i % 2 == 0 {
            det = det.add(&cof);
        } else {
            det = det.sub(&cof);
        }
    }
    det
}

/// Fraction-free Bareiss elimination. Every division is by the previous
/// pivot and is exact over the polynomial ring.
fn bareiss_det(mut m: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = m.len();
    let mut sign_flip = false;
    let mut prev_pivot = Polynomial::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Polynomial::zero();
            };
            m.swap(k, swap);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[k][k].mul(&m[i][j]) - &m[i][k].mul(&m[k][j]);
                m[i][j] = num
                    .exact_div(&prev_pivot)
                    .expect("Bareiss division is exact over an integral domain");
            }
            m[i][k] = Polynomial::zero();
        }
        prev_pivot = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.negate()
    } else {
        det
    }
}

/// `mu_n = prod_{i=1}^{n} (2i-1)^{n+1-i}`, the factor relating the
/// Adler-Moser polynomials to the psi Wronskians: `theta_n = mu_n W_n`.
/// `mu_0 = mu_1 = 1`, `mu_2 = 3`, `mu_3 = 45`, `mu_4 = 4725`.
pub fn mu_factor(n: u32) -> Rational {
    let mut mu = Rational::one();
    for i in 1..=n {
        mu = mu * Rational::from_int(2 * i as i64 - 1).pow(n + 1 - i);
    }
    mu
}
