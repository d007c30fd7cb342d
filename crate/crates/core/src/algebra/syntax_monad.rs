use std::collections::HashMap;
use std::sync::Mutex;

use super::monad::{Bound, Monad};
use crate::signature::Signature;
use crate::syntax::{check_term, print_term, subst, Assignment, Context, Term, TermEnumerator, VarRef};
use crate::types::TypeExpr;

/// The syntax of a signature as a monad: variables as unit, substitution as
/// Kleisli extension.
pub struct SyntaxMonad {
    sig: Signature,
    enumerators: Mutex<HashMap<usize, TermEnumerator>>,
}

impl SyntaxMonad {
    pub fn new(sig: Signature) -> Self {
        SyntaxMonad { sig, enumerators: Mutex::new(HashMap::new()) }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }
}

impl Monad for SyntaxMonad {
    type Value = Term;

    fn name(&self) -> String {
        format!("syntax({})", self.sig.name)
    }

    fn unit(&self, _ctx: &Context, v: VarRef) -> Term {
        Term::Var(v)
    }

    fn kleisli(&self, f: &Assignment<Term>, x: &Term) -> Term {
        subst(f, x)
    }

    fn elements(&self, ctx: &Context, t: &TypeExpr, bound: Bound) -> Vec<Term> {
        let mut cache = self.enumerators.lock().expect("enumerator cache poisoned");
        cache
            .entry(bound.ty_depth)
            .or_insert_with(|| TermEnumerator::new(&self.sig, bound.ty_depth))
            .up_to(ctx, t, bound.nodes)
    }

    fn has_type(&self, ctx: &Context, t: &TypeExpr, x: &Term) -> bool {
        check_term(&self.sig, ctx, x, t).is_ok()
    }

    fn size(&self, x: &Term) -> usize {
        x.size()
    }

    fn render(&self, x: &Term) -> String {
        print_term(x)
    }
}
