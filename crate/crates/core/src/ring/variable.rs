//! The graded variable alphabet.
//!
//! Three families of odd-indexed times plus the formal spectral variable:
//! `t_k` (tau-function times, `t_1 = x`), `q_k` (Adler-Moser integration
//! constants), `s_k` (Wronskian times), and `lambda_inv` (`1/lambda`, used
//! by the Miwa shift and the wave-function identity). The weight of `t_k`,
//! `q_k`, `s_k` is `k`; the weight of `lambda_inv` is `-1`.
//!
//! `q_1` and `s_1` are never materialized: both are aliases of `t_1 = x`.

use core::fmt;

/// A named variable of the graded alphabet.
///
/// The derived ordering (`T < Q < S < LambdaInv`, then by index) is the
/// canonical variable order used for monomial comparison and serialization,
/// so `x = t_1 < t_3 < t_5 < ...`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Variable {
    /// `t_k`, odd `k >= 1`; `t_1` is the space variable `x`.
    T(u32),
    /// `q_k`, odd `k >= 3`.
    Q(u32),
    /// `s_k`, odd `k >= 3`.
    S(u32),
    /// `1/lambda`; the only variable allowed to carry negative exponents.
    LambdaInv,
}

impl Variable {
    /// The space variable `x = t_1`.
    pub fn x() -> Self {
        Variable::T(1)
    }

    /// `t_k` for odd `k >= 1`.
    pub fn t(k: u32) -> Self {
        assert!(k % 2 == 1, "t-index must be odd, got t_{k}");
        Variable::T(k)
    }

    /// `q_k` for odd `k >= 3` (`q_1` is the alias of `x`).
    pub fn q(k: u32) -> Self {
        assert!(k % 2 == 1 && k >= 3, "q-index must be odd and >= 3, got q_{k}");
        Variable::Q(k)
    }

    /// `s_k` for odd `k >= 3` (`s_1` is the alias of `x`).
    pub fn s(k: u32) -> Self {
        assert!(k % 2 == 1 && k >= 3, "s-index must be odd and >= 3, got s_{k}");
        Variable::S(k)
    }

    pub fn lambda_inv() -> Self {
        Variable::LambdaInv
    }

    /// Grading weight: `deg t_k = deg q_k = deg s_k = k`, `deg lambda_inv = -1`.
    pub fn weight(&self) -> i64 {
        match self {
            Variable::T(k) | Variable::Q(k) | Variable::S(k) => *k as i64,
            Variable::LambdaInv => -1,
        }
    }

    /// Whether negative exponents of this variable are meaningful
    /// (only `lambda_inv`, whose negative powers stand for powers of
    /// `lambda`).
    pub fn allows_negative_exponent(&self) -> bool {
        matches!(self, Variable::LambdaInv)
    }

    /// Parses the plain-text name produced by `Display`.
    pub fn parse_name(name: &str) -> Option<Self> {
        if name == "x" {
            return Some(Variable::T(1));
        }
        if name == "lambda_inv" {
            return Some(Variable::LambdaInv);
        }
        let (head, idx) = name.split_at(1);
        let k: u32 = idx.parse().ok()?;
        if k.is_multiple_of(2) {
            return None;
        }
        match head {
            "t" if k >= 1 => Some(Variable::T(k)),
            "q" if k >= 3 => Some(Variable::Q(k)),
            "s" if k >= 3 => Some(Variable::S(k)),
            _ => None,
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::T(1) => write!(f, "x"),
            Variable::T(k) => write!(f, "t{k}"),
            Variable::Q(k) => write!(f, "q{k}"),
            Variable::S(k) => write!(f, "s{k}"),
            Variable::LambdaInv => write!(f, "lambda_inv"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order() {
        assert!(Variable::t(1) < Variable::t(3));
        assert!(Variable::t(9) < Variable::q(3));
        assert!(Variable::q(5) < Variable::s(3));
        assert!(Variable::s(11) < Variable::lambda_inv());
    }

    #[test]
    fn weights() {
        assert_eq!(Variable::x().weight(), 1);
        assert_eq!(Variable::q(7).weight(), 7);
        assert_eq!(Variable::lambda_inv().weight(), -1);
    }

    #[test]
    #[should_panic]
    fn q1_is_never_materialized() {
        let _ = Variable::q(1);
    }

    #[test]
    fn name_round_trip() {
        for v in [
            Variable::x(),
            Variable::t(5),
            Variable::q(3),
            Variable::s(11),
            Variable::lambda_inv(),
        ] {
            let name = alloc::format!("{v}");
            assert_eq!(Variable::parse_name(&name), Some(v));
        }
        assert_eq!(Variable::parse_name("t2"), None);
        assert_eq!(Variable::parse_name("q1"), None);
        assert_eq!(Variable::parse_name("y"), None);
    }
}
