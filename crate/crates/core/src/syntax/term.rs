use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::context::{Context, VarRef};
use crate::signature::{ArityInstance, InstanceRef, Signature, SignatureError, TyArgs};
use crate::types::{Name, TypeExpr};

/// A well-scoped term in de Bruijn form: a variable, or a constructor
/// applied to one argument per arity slot. The i-th argument lives in the
/// context extended by the i-th binder list of the node's arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(VarRef),
    Con(Arc<ConNode>),
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct ConNode {
    instance: InstanceRef,
    args: Vec<Term>,
    /// One more than the largest free index, 0 when closed.
    scope: usize,
}

impl ConNode {
    pub fn instance(&self) -> &InstanceRef {
        &self.instance
    }

    pub fn schema(&self) -> &Name {
        &self.instance.schema
    }

    pub fn tyargs(&self) -> &TyArgs {
        &self.instance.tyargs
    }

    pub fn args(&self) -> &[Term] {
        &self.args
    }

    pub fn scope(&self) -> usize {
        self.scope
    }

    pub fn output(&self) -> &TypeExpr {
        &self.instance.arity.output
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("variable index {index} out of range for a context of length {len}")]
    UnboundIndex { index: usize, len: usize },
    #[error("unknown schema `{0}`")]
    UnknownSchema(Name),
    #[error("`{schema}` expects {expected} argument(s), got {found}")]
    ArgCount {
        schema: Name,
        expected: usize,
        found: usize,
    },
    #[error("argument {position} of `{schema}`: expected type {expected}, found {found}")]
    TypeMismatch {
        schema: Name,
        position: usize,
        expected: TypeExpr,
        found: TypeExpr,
    },
    #[error("expected a term of type {expected}, found {found}")]
    Expected { expected: TypeExpr, found: TypeExpr },
    #[error("instance `{0}` does not match the signature")]
    ForeignInstance(Name),
    #[error(transparent)]
    Signature(#[from] SignatureError),
    #[error("{pos}: syntax error: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("{pos}: {error}")]
    At { pos: usize, error: Box<TermError> },
}

impl TermError {
    pub(crate) fn at(self, pos: usize) -> TermError {
        TermError::At { pos, error: Box::new(self) }
    }

    /// The error without its source position.
    pub fn kind(&self) -> &TermError {
        match self {
            TermError::At { error, .. } => error.kind(),
            e => e,
        }
    }
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(VarRef(i))
    }

    /// Build a node without type checking; callers guarantee the arity shape.
    pub(crate) fn con_unchecked(instance: InstanceRef, args: Vec<Term>) -> Term {
        debug_assert_eq!(instance.arity.args.len(), args.len());
        let scope = instance
            .arity
            .args
            .iter()
            .zip(&args)
            .map(|(slot, a)| a.scope().saturating_sub(slot.binders.len()))
            .max()
            .unwrap_or(0);
        Term::Con(Arc::new(ConNode { instance, args, scope }))
    }

    /// One more than the largest free variable index; 0 for closed terms.
    pub fn scope(&self) -> usize {
        match self {
            Term::Var(v) => v.0 + 1,
            Term::Con(node) => node.scope,
        }
    }

    /// Constructor and variable nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Con(node) => 1 + node.args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn as_con(&self) -> Option<&ConNode> {
        match self {
            Term::Con(node) => Some(node),
            Term::Var(_) => None,
        }
    }

    /// Whether any constructor node binds at least one variable.
    pub fn has_binder(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Con(node) => {
                node.instance.arity.args.iter().any(|a| !a.binders.is_empty())
                    || node.args.iter().any(Term::has_binder)
            }
        }
    }
}

/// Structural equality; alpha-equivalence is built into the representation.
pub fn term_eq(x: &Term, y: &Term) -> bool {
    x == y
}

pub fn mk_var(ctx: &Context, i: usize) -> Result<(Term, TypeExpr), TermError> {
    ctx.get(VarRef(i))
        .map(|t| (Term::var(i), t.clone()))
        .ok_or(TermError::UnboundIndex { index: i, len: ctx.len() })
}

/// Checked constructor application: each argument must already be a term of
/// the arity's result type over the context extended by its binders.
pub fn mk_con(
    sig: &Signature,
    ctx: &Context,
    schema: &str,
    tyargs: &TyArgs,
    args: Vec<Term>,
) -> Result<(Term, TypeExpr), TermError> {
    if sig.schema(schema).is_none() {
        return Err(TermError::UnknownSchema(schema.into()));
    }
    let instance = Arc::new(sig.instance(schema, tyargs)?);
    mk_con_instance(sig, ctx, instance, args)
}

pub(crate) fn mk_con_instance(
    sig: &Signature,
    ctx: &Context,
    instance: InstanceRef,
    args: Vec<Term>,
) -> Result<(Term, TypeExpr), TermError> {
    let shape = &instance.arity;
    if shape.args.len() != args.len() {
        return Err(TermError::ArgCount {
            schema: instance.schema.clone(),
            expected: shape.args.len(),
            found: args.len(),
        });
    }
    for (position, (slot, arg)) in shape.args.iter().zip(&args).enumerate() {
        let found = type_of(sig, &ctx.pow(&slot.binders), arg)?;
        if found != slot.result {
            return Err(TermError::TypeMismatch {
                schema: instance.schema.clone(),
                position,
                expected: slot.result.clone(),
                found,
            });
        }
    }
    let output = shape.output.clone();
    Ok((Term::con_unchecked(instance, args), output))
}

/// Fully check `x` over `ctx` and return its type.
pub fn type_of(sig: &Signature, ctx: &Context, x: &Term) -> Result<TypeExpr, TermError> {
    match x {
        Term::Var(v) => mk_var(ctx, v.0).map(|(_, t)| t),
        Term::Con(node) => {
            let expected: ArityInstance = sig.instance(&node.instance.schema, &node.instance.tyargs)?;
            if expected != *node.instance {
                return Err(TermError::ForeignInstance(node.instance.schema.clone()));
            }
            for (position, (slot, arg)) in node.instance.arity.args.iter().zip(&node.args).enumerate() {
                let found = type_of(sig, &ctx.pow(&slot.binders), arg)?;
                if found != slot.result {
                    return Err(TermError::TypeMismatch {
                        schema: node.instance.schema.clone(),
                        position,
                        expected: slot.result.clone(),
                        found,
                    });
                }
            }
            Ok(node.instance.arity.output.clone())
        }
    }
}

pub fn check_term(sig: &Signature, ctx: &Context, x: &Term, t: &TypeExpr) -> Result<(), TermError> {
    let found = type_of(sig, ctx, x)?;
    if &found == t {
        Ok(())
    } else {
        Err(TermError::Expected { expected: t.clone(), found })
    }
}

/// Canonical s-expression rendering.
pub fn print_term(x: &Term) -> String {
    x.to_string()
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "(var {v})"),
            Term::Con(node) => {
                write!(f, "(con {}", node.instance.schema)?;
                if !node.instance.tyargs.is_empty() {
                    write!(f, " {}", node.instance.tyargs)?;
                }
                for a in &node.args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{stlc_signature, ulc_signature};

    fn unit() -> TypeExpr {
        TypeExpr::base("unit")
    }

    #[test]
    fn scope_counts_free_variables_only() {
        let sig = ulc_signature();
        let c = Context::new(vec![unit(); 3]);
        let none = TyArgs::default();
        let inner = Context::new(vec![unit(); 4]);
        let body = mk_con(&sig, &inner, "app", &none, vec![Term::var(0), Term::var(3)]).unwrap().0;
        assert_eq!(body.scope(), 4);
        let lam = mk_con(&sig, &c, "abs", &none, vec![body]).unwrap().0;
        assert_eq!(lam.scope(), 3);
        assert_eq!(lam.size(), 4);
        assert!(lam.has_binder());

        let closed = mk_con(&sig, &Context::empty(), "abs", &none, vec![Term::var(0)]).unwrap().0;
        assert_eq!(closed.scope(), 0);
    }

    #[test]
    fn construction_is_checked() {
        let sig = stlc_signature();
        let base = TypeExpr::base("base");
        let arrow = TypeExpr::app("arrow", vec![base.clone(), base.clone()]);
        let c = Context::new(vec![base.clone(), arrow.clone()]);
        let st = TyArgs::new(&[("s", base.clone()), ("t", base.clone())]);

        let (x, t) = mk_con(&sig, &c, "app", &st, vec![Term::var(1), Term::var(0)]).unwrap();
        assert_eq!(t, base);
        assert_eq!(type_of(&sig, &c, &x), Ok(base.clone()));

        let swapped = mk_con(&sig, &c, "app", &st, vec![Term::var(0), Term::var(1)]).unwrap_err();
        assert!(matches!(swapped, TermError::TypeMismatch { position: 0, .. }));
        let short = mk_con(&sig, &c, "app", &st, vec![Term::var(1)]).unwrap_err();
        assert!(matches!(short, TermError::ArgCount { expected: 2, found: 1, .. }));
        assert!(matches!(mk_var(&c, 2), Err(TermError::UnboundIndex { index: 2, len: 2 })));
        assert!(check_term(&sig, &c, &Term::var(1), &base).is_err());
    }

    #[test]
    fn printed_form() {
        let sig = stlc_signature();
        let base = TypeExpr::base("base");
        let st = TyArgs::new(&[("s", base.clone()), ("t", base.clone())]);
        let id = mk_con(&sig, &Context::empty(), "abs", &st, vec![Term::var(0)]).unwrap().0;
        assert_eq!(print_term(&id), "(con abs [s=base,t=base] (var 0))");
    }
}
