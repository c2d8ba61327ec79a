//! Radial expression trees over the weight grammar
//! `{r, literals, +, -, *, /, ^const, exp, log}`, with evaluation, a
//! canonical printer, and an exact symbolic derivative that stays inside the
//! grammar.
//!
//! Negative constants are not grammar literals; they are represented as
//! `0 - c` so that every tree the calculus produces prints back to parseable
//! text. The one extension over the displayed grammar is an optional sign on
//! the exponent after `^`, which the derivative of `u^n` needs for `n < 0`.

/// Expression tree over the weight grammar. `Pow` carries a constant
/// exponent, as in the grammar `factor := base ('^' number)?`.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightExpr {
    /// The radial variable `r`.
    Var,
    /// A non-negative finite literal (negative values appear only as `0 - c`).
    Lit(f64),
    Add(Box<WeightExpr>, Box<WeightExpr>),
    Sub(Box<WeightExpr>, Box<WeightExpr>),
    Mul(Box<WeightExpr>, Box<WeightExpr>),
    Div(Box<WeightExpr>, Box<WeightExpr>),
    Pow(Box<WeightExpr>, f64),
    Exp(Box<WeightExpr>),
    Log(Box<WeightExpr>),
}

impl WeightExpr {
    /// Evaluate at radius `r`. Non-finite results propagate to the caller,
    /// which decides whether they mean divergence or invalid input.
    pub fn eval(&self, r: f64) -> f64 {
        match self {
            WeightExpr::Var => r,
            WeightExpr::Lit(v) => *v,
            WeightExpr::Add(a, b) => a.eval(r) + b.eval(r),
            WeightExpr::Sub(a, b) => a.eval(r) - b.eval(r),
            WeightExpr::Mul(a, b) => a.eval(r) * b.eval(r),
            WeightExpr::Div(a, b) => a.eval(r) / b.eval(r),
            WeightExpr::Pow(a, e) => pow_value(a.eval(r), *e),
            WeightExpr::Exp(a) => a.eval(r).exp(),
            WeightExpr::Log(a) => a.eval(r).ln(),
        }
    }

    /// Exact symbolic derivative, within the same grammar.
    pub fn differentiate(&self) -> WeightExpr {
        match self {
            WeightExpr::Var => lit(1.0),
            WeightExpr::Lit(_) => lit(0.0),
            WeightExpr::Add(a, b) => add(a.differentiate(), b.differentiate()),
            WeightExpr::Sub(a, b) => sub(a.differentiate(), b.differentiate()),
            WeightExpr::Mul(a, b) => add(
                mul(a.differentiate(), (**b).clone()),
                mul((**a).clone(), b.differentiate()),
            ),
            WeightExpr::Div(a, b) => div(
                sub(
                    mul(a.differentiate(), (**b).clone()),
                    mul((**a).clone(), b.differentiate()),
                ),
                pow((**b).clone(), 2.0),
            ),
            WeightExpr::Pow(a, e) => mul(
                mul(lit(*e), pow((**a).clone(), e - 1.0)),
                a.differentiate(),
            ),
            WeightExpr::Exp(a) => mul(exp((**a).clone()), a.differentiate()),
            WeightExpr::Log(a) => div(a.differentiate(), (**a).clone()),
        }
    }

    /// Symbolic logarithmic derivative `w'/w`, pushed through `exp`, products,
    /// quotients, and powers so that it stays evaluable at radii where `w`
    /// itself overflows `f64`.
    pub fn log_derivative(&self) -> WeightExpr {
        match self {
            WeightExpr::Exp(a) => a.differentiate(),
            WeightExpr::Mul(a, b) => add(a.log_derivative(), b.log_derivative()),
            WeightExpr::Div(a, b) => sub(a.log_derivative(), b.log_derivative()),
            WeightExpr::Pow(a, e) => mul(lit(*e), a.log_derivative()),
            other => div(other.differentiate(), other.clone()),
        }
    }

    /// Canonical text form; parses back to the identical tree.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.print(&mut out, 0);
        out
    }

    // Precedence levels: 0 additive, 1 multiplicative, 2 power, 3 atom.
    fn precedence(&self) -> u8 {
        match self {
            WeightExpr::Add(..) | WeightExpr::Sub(..) => 0,
            WeightExpr::Mul(..) | WeightExpr::Div(..) => 1,
            WeightExpr::Pow(..) => 2,
            _ => 3,
        }
    }

    fn print(&self, out: &mut String, min_prec: u8) {
        let prec = self.precedence();
        let need_parens = prec < min_prec;
        if need_parens {
            out.push('(');
        }
        match self {
            WeightExpr::Var => out.push('r'),
            WeightExpr::Lit(v) => out.push_str(&format_literal(*v)),
            WeightExpr::Add(a, b) => {
                a.print(out, 0);
                out.push('+');
                b.print(out, 1);
            }
            WeightExpr::Sub(a, b) => {
                a.print(out, 0);
                out.push('-');
                b.print(out, 1);
            }
            WeightExpr::Mul(a, b) => {
                a.print(out, 1);
                out.push('*');
                b.print(out, 2);
            }
            WeightExpr::Div(a, b) => {
                a.print(out, 1);
                out.push('/');
                b.print(out, 2);
            }
            WeightExpr::Pow(a, e) => {
                // Grammar: the base of `^` is an atom; parenthesize otherwise.
                a.print(out, 3);
                out.push('^');
                out.push_str(&format_literal(*e));
            }
            WeightExpr::Exp(a) => {
                out.push_str("exp(");
                a.print(out, 0);
                out.push(')');
            }
            WeightExpr::Log(a) => {
                out.push_str("log(");
                a.print(out, 0);
                out.push(')');
            }
        }
        if need_parens {
            out.push(')');
        }
    }
}

fn pow_value(base: f64, e: f64) -> f64 {
    if e == e.trunc() && e.abs() <= 64.0 {
        base.powi(e as i32)
    } else {
        base.powf(e)
    }
}

fn format_literal(v: f64) -> String {
    // f64 Display never emits scientific notation and round-trips exactly.
    format!("{v}")
}

// --- smart constructors -----------------------------------------------------
//
// Light simplification keeps derivative trees small; anything folded must stay
// printable, so negative constants go through `lit`.

pub(crate) fn lit(v: f64) -> WeightExpr {
    assert!(v.is_finite(), "literal must be finite, got {v}");
    if v < 0.0 {
        WeightExpr::Sub(Box::new(WeightExpr::Lit(0.0)), Box::new(WeightExpr::Lit(-v)))
    } else {
        WeightExpr::Lit(v)
    }
}

fn as_lit(e: &WeightExpr) -> Option<f64> {
    match e {
        WeightExpr::Lit(v) => Some(*v),
        WeightExpr::Sub(a, b) => match (&**a, &**b) {
            (WeightExpr::Lit(x), WeightExpr::Lit(y)) if *x == 0.0 => Some(-y),
            _ => None,
        },
        _ => None,
    }
}

pub(crate) fn add(a: WeightExpr, b: WeightExpr) -> WeightExpr {
    match (as_lit(&a), as_lit(&b)) {
        (Some(x), Some(y)) => lit(x + y),
        (Some(0.0), _) => b,
        (_, Some(0.0)) => a,
        _ => WeightExpr::Add(Box::new(a), Box::new(b)),
    }
}

pub(crate) fn sub(a: WeightExpr, b: WeightExpr) -> WeightExpr {
    match (as_lit(&a), as_lit(&b)) {
        (Some(x), Some(y)) => lit(x - y),
        (_, Some(0.0)) => a,
        _ => WeightExpr::Sub(Box::new(a), Box::new(b)),
    }
}

pub(crate) fn mul(a: WeightExpr, b: WeightExpr) -> WeightExpr {
    match (as_lit(&a), as_lit(&b)) {
        (Some(x), Some(y)) => lit(x * y),
        (Some(0.0), _) | (_, Some(0.0)) => lit(0.0),
        (Some(1.0), _) => b,
        (_, Some(1.0)) => a,
        _ => WeightExpr::Mul(Box::new(a), Box::new(b)),
    }
}

pub(crate) fn div(a: WeightExpr, b: WeightExpr) -> WeightExpr {
    match (as_lit(&a), as_lit(&b)) {
        (Some(0.0), _) => lit(0.0),
        (_, Some(1.0)) => a,
        _ => WeightExpr::Div(Box::new(a), Box::new(b)),
    }
}

pub(crate) fn pow(a: WeightExpr, e: f64) -> WeightExpr {
    if e == 0.0 {
        return lit(1.0);
    }
    if e == 1.0 {
        return a;
    }
    if let Some(x) = as_lit(&a) {
        if x >= 0.0 {
            return lit(pow_value(x, e));
        }
    }
    WeightExpr::Pow(Box::new(a), e)
}

pub(crate) fn exp(a: WeightExpr) -> WeightExpr {
    WeightExpr::Exp(Box::new(a))
}

pub(crate) fn log(a: WeightExpr) -> WeightExpr {
    WeightExpr::Log(Box::new(a))
}
