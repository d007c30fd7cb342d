//! Terms with named variables and textbook capture-avoiding substitution:
//! every binder crossed is renamed to a fresh name.

use std::collections::HashMap;

use initsyn::signature::{InstanceRef, Signature};
use initsyn::syntax::{mk_con, Context, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Named {
    Var(String),
    /// Each argument carries its binder names, in the arity's binder order.
    Con(InstanceRef, Vec<(Vec<String>, Named)>),
}

/// Source of names no caller has seen.
#[derive(Default)]
pub struct Fresh(usize);

impl Fresh {
    pub fn next(&mut self) -> String {
        self.0 += 1;
        format!("x{}", self.0)
    }
}

/// `scope[i]` names de Bruijn index `i`.
pub fn to_named(x: &Term, scope: &[String], fresh: &mut Fresh) -> Named {
    match x {
        Term::Var(v) => Named::Var(scope[v.0].clone()),
        Term::Con(node) => {
            let slots = &node.instance().arity.args;
            let args = slots
                .iter()
                .zip(node.args())
                .map(|(slot, a)| {
                    let names: Vec<String> = slot.binders.iter().map(|_| fresh.next()).collect();
                    // The last binder is the innermost, index 0.
                    let inner: Vec<String> = names.iter().rev().chain(scope).cloned().collect();
                    (names, to_named(a, &inner, fresh))
                })
                .collect();
            Named::Con(node.instance().clone(), args)
        }
    }
}

/// Back to de Bruijn form over `ctx`, whose index `i` is named `scope[i]`.
/// Inner binders shadow outer names.
pub fn from_named(sig: &Signature, ctx: &Context, scope: &[String], n: &Named) -> Term {
    match n {
        Named::Var(s) => Term::var(scope.iter().position(|t| t == s).expect("free name in scope")),
        Named::Con(inst, args) => {
            let built = inst
                .arity
                .args
                .iter()
                .zip(args)
                .map(|(slot, (names, body))| {
                    let inner: Vec<String> = names.iter().rev().chain(scope).cloned().collect();
                    from_named(sig, &ctx.pow(&slot.binders), &inner, body)
                })
                .collect();
            mk_con(sig, ctx, &inst.schema, &inst.tyargs, built).expect("well typed").0
        }
    }
}

/// Simultaneous substitution; names missing from `sigma` stay put.
pub fn subst_named(sigma: &HashMap<String, Named>, n: &Named, fresh: &mut Fresh) -> Named {
    match n {
        Named::Var(s) => sigma.get(s).cloned().unwrap_or_else(|| n.clone()),
        Named::Con(inst, args) => {
            let args = args
                .iter()
                .map(|(names, body)| {
                    let mut inner = sigma.clone();
                    let renamed: Vec<String> = names
                        .iter()
                        .map(|b| {
                            let b2 = fresh.next();
                            inner.insert(b.clone(), Named::Var(b2.clone()));
                            b2
                        })
                        .collect();
                    (renamed, subst_named(&inner, body, fresh))
                })
                .collect();
            Named::Con(inst.clone(), args)
        }
    }
}

/// `subst` computed through names: `images[i]` (over `target`) replaces
/// index `i` of `x` (over `source`).
pub fn subst_via_names(sig: &Signature, target: &Context, images: &[Term], x: &Term) -> Term {
    let mut fresh = Fresh::default();
    let source_names: Vec<String> = images.iter().map(|_| fresh.next()).collect();
    let target_names: Vec<String> = (0..target.len()).map(|_| fresh.next()).collect();
    let sigma: HashMap<String, Named> = source_names
        .iter()
        .zip(images)
        .map(|(s, img)| (s.clone(), to_named(img, &target_names, &mut fresh)))
        .collect();
    let named = to_named(x, &source_names, &mut fresh);
    from_named(sig, target, &target_names, &subst_named(&sigma, &named, &mut fresh))
}
