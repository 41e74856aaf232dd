use super::parse::{parse_expr, Expr};
use crate::error::{Error, Result};
use crate::opcalc::{Calculus, Operator};
use crate::scalar::Scalar;

pub const OP_ATOMS: [&str; 8] = ["X", "D", "UP", "DP", "G", "GINV", "THETA", "ID"];

/// A parsed operator expression. `A*B` applies `B` first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpExpr(pub Expr);

/// Resolves operator atoms to matrices.
pub trait OpAtoms<F: Scalar> {
    fn dim(&self) -> usize;
    fn atom(&self, name: &str) -> Option<Operator<F>>;
}

impl<F: Scalar> OpAtoms<F> for Calculus<F> {
    fn dim(&self) -> usize {
        Calculus::dim(self)
    }

    fn atom(&self, name: &str) -> Option<Operator<F>> {
        Some(match name {
            "X" => self.x.clone(),
            "D" => self.d.clone(),
            "UP" => self.u.clone(),
            "DP" => self.dp.clone(),
            "G" => self.g.clone(),
            "GINV" => self.ginv.clone(),
            "THETA" => self.theta.clone(),
            "ID" => self.id.clone(),
            _ => return None,
        })
    }
}

pub fn parse_op(text: &str) -> Result<OpExpr> {
    let e = parse_expr(text)?;
    check_op_atoms(&e)?;
    Ok(OpExpr(e))
}

fn check_op_atoms(e: &Expr) -> Result<()> {
    match e {
        Expr::Lit(_) => Ok(()),
        Expr::Atom(a) if OP_ATOMS.contains(&a.as_str()) => Ok(()),
        Expr::Atom(a) | Expr::Call(a, _) => Err(Error::UnknownAtom(a.clone())),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
            check_op_atoms(a)?;
            check_op_atoms(b)
        }
        Expr::Neg(a) | Expr::Pow(a, _) => check_op_atoms(a),
    }
}

impl OpExpr {
    pub fn eval<F: Scalar>(&self, atoms: &impl OpAtoms<F>) -> Result<Operator<F>> {
        eval_op(&self.0, atoms)
    }
}

impl std::fmt::Display for OpExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

fn eval_op<F: Scalar>(e: &Expr, atoms: &impl OpAtoms<F>) -> Result<Operator<F>> {
    Ok(match e {
        Expr::Lit(r) => Operator::identity(atoms.dim()).scale(&F::from_rational(r)),
        Expr::Atom(a) => atoms.atom(a).ok_or_else(|| Error::UnknownAtom(a.clone()))?,
        Expr::Call(name, _) => return Err(Error::UnknownAtom(name.clone())),
        Expr::Add(a, b) => eval_op(a, atoms)?.add(&eval_op(b, atoms)?),
        Expr::Sub(a, b) => eval_op(a, atoms)?.sub(&eval_op(b, atoms)?),
        Expr::Mul(a, b) => eval_op(a, atoms)?.compose(&eval_op(b, atoms)?),
        Expr::Neg(a) => eval_op(a, atoms)?.neg(),
        Expr::Pow(a, k) => eval_op(a, atoms)?.pow(*k as usize),
    })
}
