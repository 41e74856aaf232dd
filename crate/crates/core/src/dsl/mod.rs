//! A small expression language for series in `y` and for operators.
//!
//! Series: rational literals (`3`, `1/2`), the variable `y`, `+ - * ^`,
//! `exp(..)` and `log(..)`. Operators: the atoms `X D UP DP G GINV THETA ID`,
//! rational scalars and the same arithmetic, where `A*B` is composition
//! (apply `B` first).

mod op;
mod parse;

pub use op::{parse_op, OpAtoms, OpExpr, OP_ATOMS};
pub use parse::{parse_expr, Expr};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::Series;

/// A parsed series expression in the single variable `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesExpr(pub Expr);

pub fn parse_series(text: &str) -> Result<SeriesExpr> {
    let e = parse_expr(text)?;
    check_series_atoms(&e)?;
    Ok(SeriesExpr(e))
}

fn check_series_atoms(e: &Expr) -> Result<()> {
    match e {
        Expr::Lit(_) => Ok(()),
        Expr::Atom(a) if a == "y" => Ok(()),
        Expr::Atom(a) => Err(Error::UnknownAtom(a.clone())),
        Expr::Call(name, arg) if name == "exp" || name == "log" => check_series_atoms(arg),
        Expr::Call(name, _) => Err(Error::UnknownAtom(name.clone())),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
            check_series_atoms(a)?;
            check_series_atoms(b)
        }
        Expr::Neg(a) | Expr::Pow(a, _) => check_series_atoms(a),
    }
}

impl SeriesExpr {
    /// Evaluates to a truncated series known through `y^order`.
    pub fn eval<F: Scalar>(&self, order: usize) -> Result<Series<F>> {
        eval_series(&self.0, order)
    }
}

impl std::fmt::Display for SeriesExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

fn eval_series<F: Scalar>(e: &Expr, order: usize) -> Result<Series<F>> {
    Ok(match e {
        Expr::Lit(r) => Series::constant(F::from_rational(r), order),
        Expr::Atom(_) => Series::variable(order),
        Expr::Call(name, arg) => {
            let a = eval_series::<F>(arg, order)?;
            if name == "exp" {
                a.exp()?
            } else {
                a.log()?
            }
        }
        Expr::Add(a, b) => eval_series::<F>(a, order)?.add(&eval_series(b, order)?),
        Expr::Sub(a, b) => eval_series::<F>(a, order)?.sub(&eval_series(b, order)?),
        Expr::Mul(a, b) => eval_series::<F>(a, order)?.mul(&eval_series(b, order)?),
        Expr::Neg(a) => eval_series::<F>(a, order)?.neg(),
        Expr::Pow(a, k) => eval_series::<F>(a, order)?.pow(*k as usize),
    })
}
