use std::collections::HashMap;
use std::sync::Arc;

use super::context::{Context, VarRef};
use super::term::Term;
use crate::signature::{InstanceRef, Signature};
use crate::types::TypeExpr;

/// Memoizing generator of all well-typed terms of a given exact size.
///
/// Order within a size: variables (index order), then constructor instances
/// in schema declaration order and metavariable-assignment order, then the
/// split of the remaining nodes among arguments (first argument smallest
/// first), then the lexicographic product of the argument lists.
pub struct TermEnumerator {
    by_output: HashMap<TypeExpr, Vec<InstanceRef>>,
    memo: HashMap<(Context, TypeExpr, usize), Arc<Vec<Term>>>,
}

impl TermEnumerator {
    pub fn new(sig: &Signature, ty_depth: usize) -> Self {
        let mut by_output: HashMap<TypeExpr, Vec<InstanceRef>> = HashMap::new();
        for inst in sig.instances(ty_depth) {
            by_output
                .entry(inst.arity.output.clone())
                .or_default()
                .push(Arc::new(inst));
        }
        TermEnumerator { by_output, memo: HashMap::new() }
    }

    /// Terms of type `t` over `ctx` with exactly `nodes` nodes.
    pub fn exact(&mut self, ctx: &Context, t: &TypeExpr, nodes: usize) -> Arc<Vec<Term>> {
        let key = (ctx.clone(), t.clone(), nodes);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let mut out = Vec::new();
        let instances = self.by_output.get(t).cloned().unwrap_or_default();
        if nodes == 1 {
            out.extend(ctx.vars_of_type(t).map(Term::Var));
            for inst in instances.iter().filter(|i| i.arity.args.is_empty()) {
                out.push(Term::con_unchecked(inst.clone(), Vec::new()));
            }
        } else if nodes > 1 {
            for inst in instances.iter().filter(|i| !i.arity.args.is_empty()) {
                let k = inst.arity.args.len();
                for sizes in compositions(nodes - 1, k) {
                    let mut tuples: Vec<Vec<Term>> = vec![Vec::new()];
                    for (slot, &size) in inst.arity.args.iter().zip(&sizes) {
                        let choices = self.exact(&ctx.pow(&slot.binders), &slot.result, size);
                        if choices.is_empty() {
                            tuples.clear();
                            break;
                        }
                        tuples = tuples
                            .into_iter()
                            .flat_map(|prefix| {
                                choices.iter().map(move |c| {
                                    let mut p = prefix.clone();
                                    p.push(c.clone());
                                    p
                                })
                            })
                            .collect();
                    }
                    out.extend(tuples.into_iter().map(|args| Term::con_unchecked(inst.clone(), args)));
                }
            }
        }
        let out = Arc::new(out);
        self.memo.insert(key, out.clone());
        out
    }

    /// Terms of type `t` over `ctx` with at most `max_nodes` nodes.
    pub fn up_to(&mut self, ctx: &Context, t: &TypeExpr, max_nodes: usize) -> Vec<Term> {
        (1..=max_nodes)
            .flat_map(|n| self.exact(ctx, t, n).iter().cloned().collect::<Vec<_>>())
            .collect()
    }
}

/// Ordered ways to write `total` as a sum of `parts` positive integers,
/// lexicographic.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if total < parts {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in 1..=total - (parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All well-typed terms of type `t` over `ctx` with at most `max_nodes`
/// nodes, with metavariables instantiated from types of depth ≤ `ty_depth`.
pub fn enumerate_terms(
    sig: &Signature,
    ctx: &Context,
    t: &TypeExpr,
    max_nodes: usize,
    ty_depth: usize,
) -> Vec<Term> {
    TermEnumerator::new(sig, ty_depth).up_to(ctx, t, max_nodes)
}

/// Variables of `ctx` with type `t`, as terms.
pub fn variables_of_type(ctx: &Context, t: &TypeExpr) -> Vec<Term> {
    ctx.vars_of_type(t).map(|VarRef(i)| Term::var(i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_are_lexicographic() {
        assert_eq!(compositions(3, 2), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(compositions(1, 2), Vec::<Vec<usize>>::new());
        assert_eq!(compositions(2, 1), vec![vec![2]]);
    }
}
