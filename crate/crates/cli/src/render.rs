//! Plain-text and LaTeX rendering of polynomials.
//!
//! Both flavors print terms in canonical descending order and put the
//! t/q/s factors before the x-power inside a monomial, mirroring the usual
//! typography of these polynomials (`5q_{3}x^{3}`, `45t_{5}x`). Text output
//! is the core `Display` form (`5*q3*x^3`).

use std::fmt::Write;

use kdvtau_core::ring::{Polynomial, Rational, Variable};

/// `name = polynomial` on one line, e.g. `tau_2 = x^3 - 3*t3`.
pub fn text_line(name: &str, index: u32, p: &Polynomial) -> String {
    format!("{name}_{index} = {p}")
}

fn latex_variable(v: Variable, exp: i32, out: &mut String) {
    match v {
        Variable::LambdaInv => {
            // Negative exponents of lambda_inv are positive powers of lambda.
            let lam_exp = -exp;
            if lam_exp == 1 {
                out.push_str("\\lambda");
            } else {
                let _ = write!(out, "\\lambda^{{{lam_exp}}}");
            }
        }
        _ => {
            let name = v.to_string();
            if name == "x" {
                out.push('x');
            } else {
                let (head, idx) = name.split_at(1);
                let _ = write!(out, "{head}_{{{idx}}}");
            }
            if exp != 1 {
                let _ = write!(out, "^{{{exp}}}");
            }
        }
    }
}

fn latex_magnitude(c: &Rational, out: &mut String) {
    if c.is_integer() {
        let _ = write!(out, "{}", c.numer());
    } else {
        let _ = write!(out, "\\frac{{{}}}{{{}}}", c.numer(), c.denom());
    }
}

/// The bare LaTeX expression, e.g.
/// `x^{6} + 5q_{3}x^{3} + q_{5}x - 5q_{3}^{2}`.
pub fn latex(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (mono, coeff)) in p.terms().rev().enumerate() {
        let neg = coeff.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = coeff.abs();
        if mono.is_unit() {
            latex_magnitude(&mag, &mut out);
            continue;
        }
        if !mag.is_one() {
            latex_magnitude(&mag, &mut out);
        }
        let mut factors: Vec<(Variable, i32)> = mono.factors().collect();
        factors.sort_by_key(|&(v, _)| (v == Variable::x(), v));
        for (v, e) in factors {
            latex_variable(v, e, &mut out);
        }
    }
    out
}
