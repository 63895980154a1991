//! Text form of expressions and test functions.
//!
//! ```text
//! expr    := term { ("+" | "-") term } ;
//! term    := factor { "*" factor } ;
//! factor  := complex | atom | call | "(" expr ")" ;
//! atom    := "rect" | "sinc" | "gauss" | "one" | "comb" ;
//! call    := "delta" "(" real ")" | "cexp" "(" real ")"
//!          | "cos2pi" "(" real ")" | "sin2pi" "(" real ")"
//!          | "shift" "(" expr "," real ")" | "dilate" "(" expr "," real ")"
//!          | "conj" "(" expr ")" | "re" "(" expr ")" | "im" "(" expr ")" ;
//! complex := real [ ("+" | "-") real "i" ] | real "i" ;
//! ```
//!
//! A product needs at least one numeric factor or one `cexp(..)` factor
//! (which acts as a modulation); products fold from the right. A complex
//! literal is greedy, so `2+3i*rect` is `(2+3i)*rect`.

mod parse;

use num_complex::Complex64;

use crate::expr::DistExpr;

pub use parse::{parse_expr, parse_expr_tree, parse_fnspec, MAX_DEPTH, MAX_INPUT};

/// Shortest decimal that parses back to `x`; exponent form outside
/// `[1e-5, 1e16)`.
pub fn fmt_real(x: f64) -> String {
    let m = x.abs();
    if m == 0.0 || (1e-5..1e16).contains(&m) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// `re`, `imi` or `re±imi`, without parentheses.
pub fn fmt_complex_bare(c: Complex64) -> String {
    if c.im == 0.0 {
        fmt_real(c.re)
    } else if c.re == 0.0 && c.re.is_sign_positive() {
        format!("{}i", fmt_real(c.im))
    } else {
        let sign = if c.im.is_sign_negative() { '-' } else { '+' };
        format!("{}{}{}i", fmt_real(c.re), sign, fmt_real(c.im.abs()))
    }
}

fn fmt_scalar(c: Complex64) -> String {
    if c.im == 0.0 {
        fmt_real(c.re)
    } else {
        format!("({})", fmt_complex_bare(c))
    }
}

/// Text for `e` as written; `parse_expr(&print_expr(e))` equals
/// `normalize(e)`. Print a normalized expression for the canonical text.
pub fn print_expr(e: &DistExpr) -> String {
    let mut out = String::new();
    write_expr(e, &mut out);
    out
}

fn write_operand(e: &DistExpr, out: &mut String) {
    if matches!(e, DistExpr::Sum(_)) {
        out.push('(');
        write_expr(e, out);
        out.push(')');
    } else {
        write_expr(e, out);
    }
}

fn write_expr(e: &DistExpr, out: &mut String) {
    match e {
        DistExpr::Rect => out.push_str("rect"),
        DistExpr::Sinc => out.push_str("sinc"),
        DistExpr::Gauss => out.push_str("gauss"),
        DistExpr::One => out.push_str("one"),
        DistExpr::Comb => out.push_str("comb"),
        DistExpr::Delta(x) => out.push_str(&format!("delta({})", fmt_real(*x))),
        DistExpr::CExp(x) => out.push_str(&format!("cexp({})", fmt_real(*x))),
        DistExpr::Cos(x) => out.push_str(&format!("cos2pi({})", fmt_real(*x))),
        DistExpr::Sin(x) => out.push_str(&format!("sin2pi({})", fmt_real(*x))),
        DistExpr::Scale(c, e) => {
            out.push_str(&fmt_scalar(*c));
            out.push('*');
            write_operand(e, out);
        }
        DistExpr::Modulate(e, xi) => {
            out.push_str(&format!("cexp({})*", fmt_real(*xi)));
            write_operand(e, out);
        }
        DistExpr::Sum(es) if es.is_empty() => out.push_str("0*one"),
        DistExpr::Sum(es) => {
            for (i, t) in es.iter().enumerate() {
                let mut s = String::new();
                write_operand(t, &mut s);
                if i > 0 && !s.starts_with('-') {
                    out.push('+');
                }
                out.push_str(&s);
            }
        }
        DistExpr::Shift(e, x) => {
            out.push_str("shift(");
            write_expr(e, out);
            out.push_str(&format!(",{})", fmt_real(*x)));
        }
        DistExpr::Dilate(e, l) => {
            out.push_str("dilate(");
            write_expr(e, out);
            out.push_str(&format!(",{})", fmt_real(*l)));
        }
        DistExpr::Conjugate(e) => call("conj", e, out),
        DistExpr::RealPart(e) => call("re", e, out),
        DistExpr::ImagPart(e) => call("im", e, out),
    }
}

fn call(name: &str, e: &DistExpr, out: &mut String) {
    out.push_str(name);
    out.push('(');
    write_expr(e, out);
    out.push(')');
}
