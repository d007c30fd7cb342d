//! Reference implementations the library is checked against. None of this
//! reuses the library's enumerators or substitution.

#![allow(dead_code)]

pub mod named;

use std::collections::BTreeSet;

use initsyn::signature::Signature;
use initsyn::syntax::{mk_con, print_term, type_of, Context, Term};
use initsyn::types::{TypeExpr, TypeUniverse};

/// Every type of depth at most `depth`, by repeated closure from the
/// constants. Printed forms, so the result is independent of `TypeExpr`'s
/// ordering.
pub fn brute_types(universe: &TypeUniverse, depth: usize) -> BTreeSet<String> {
    let tycons = universe.tycons();
    let mut layer: Vec<TypeExpr> = Vec::new();
    for _ in 0..depth {
        let mut next: Vec<TypeExpr> = Vec::new();
        for c in &tycons {
            let mut tuples: Vec<Vec<TypeExpr>> = vec![vec![]];
            for _ in 0..c.arity {
                tuples = tuples
                    .into_iter()
                    .flat_map(|t| {
                        layer.iter().map(move |a| {
                            let mut t = t.clone();
                            t.push(a.clone());
                            t
                        })
                    })
                    .collect();
            }
            next.extend(tuples.into_iter().map(|args| TypeExpr::Con(c.name.clone(), args)));
        }
        next.sort_by_key(|t| t.to_string());
        next.dedup();
        layer = next;
    }
    layer.iter().map(|t| t.to_string()).collect()
}

/// Untyped trees with exactly `nodes` nodes whose variables are in scope,
/// built from every instance whose type arguments have depth ≤ `ty_depth`.
/// Typing is left to the caller's filter.
fn shapes(sig: &Signature, ctx: &Context, nodes: usize, ty_depth: usize) -> Vec<Term> {
    let mut out = Vec::new();
    if nodes == 1 {
        out.extend((0..ctx.len()).map(Term::var));
    }
    for inst in sig.instances(ty_depth) {
        let slots = &inst.arity.args;
        let budget = nodes - 1;
        if slots.len() > budget || (slots.is_empty() && budget != 0) {
            continue;
        }
        for split in splits(budget, slots.len()) {
            let mut partial: Vec<Vec<Term>> = vec![vec![]];
            for (slot, &n) in slots.iter().zip(&split) {
                let inner = ctx.pow(&slot.binders);
                let options = shapes(sig, &inner, n, ty_depth);
                partial = partial
                    .into_iter()
                    .flat_map(|p| {
                        options.iter().map(move |o| {
                            let mut p = p.clone();
                            p.push(o.clone());
                            p
                        })
                    })
                    .collect();
            }
            for args in partial {
                // mk_con rejects ill-typed argument lists; keep only the good ones.
                if let Ok((x, _)) = mk_con(sig, ctx, &inst.schema, &inst.tyargs, args) {
                    out.push(x);
                }
            }
        }
    }
    out
}

/// Ordered ways to write `total` as `parts` positive summands.
fn splits(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    (1..=total.saturating_sub(parts - 1))
        .flat_map(|first| {
            splits(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Printed forms of every term of type `t` over `ctx` with at most
/// `max_nodes` nodes.
pub fn brute_terms(sig: &Signature, ctx: &Context, t: &TypeExpr, max_nodes: usize, ty_depth: usize) -> BTreeSet<String> {
    (1..=max_nodes)
        .flat_map(|n| shapes(sig, ctx, n, ty_depth))
        .filter(|x| type_of(sig, ctx, x).as_ref() == Ok(t))
        .map(|x| print_term(&x))
        .collect()
}
