use std::fmt;

use crate::syntax::{Assignment, Context, VarMap, VarRef};
use crate::types::TypeExpr;

/// Enumeration bound for carrier elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bound {
    pub nodes: usize,
    pub ty_depth: usize,
}

/// A monad on typed families, given as a Kleisli triple and realized on
/// finite contexts. The carrier at `(V, t)` is the set of values of type
/// `t` over `V`; `unit` is the variable-as-value map and `kleisli` the
/// substitution along an assignment `V -> P(W)`.
pub trait Monad {
    type Value: Clone + PartialEq + fmt::Debug;

    fn name(&self) -> String;

    fn unit(&self, ctx: &Context, v: VarRef) -> Self::Value;

    fn kleisli(&self, f: &Assignment<Self::Value>, x: &Self::Value) -> Self::Value;

    /// `kleisli` along one assignment for many values.
    fn kleisli_all(&self, f: &Assignment<Self::Value>, xs: &[Self::Value]) -> Vec<Self::Value> {
        xs.iter().map(|x| self.kleisli(f, x)).collect()
    }

    /// The carrier at `(ctx, t)`, truncated by `bound`, in a fixed order.
    fn elements(&self, ctx: &Context, t: &TypeExpr, bound: Bound) -> Vec<Self::Value>;

    fn has_type(&self, ctx: &Context, t: &TypeExpr, x: &Self::Value) -> bool;

    /// Node count of a value, compared against `Bound::nodes` when values
    /// are bounded jointly. Values without structure count as one node.
    fn size(&self, _x: &Self::Value) -> usize {
        1
    }

    fn render(&self, x: &Self::Value) -> String;
}

/// `η_V` as an assignment `V -> P(V)`.
pub fn unit_map<P: Monad>(p: &P, ctx: &Context) -> Assignment<P::Value> {
    VarMap::identity(ctx).map_images(ctx.clone(), |v| p.unit(ctx, *v))
}

/// Functoriality derived from the Kleisli structure: `P(f) = kleisli(f ; η)`.
pub fn lift<P: Monad>(p: &P, f: &VarMap, x: &P::Value) -> P::Value {
    let target = f.target().clone();
    let g = f.map_images(target.clone(), |v| p.unit(&target, *v));
    p.kleisli(&g, x)
}

/// `f ; kleisli(g)`.
pub fn kleisli_compose<P: Monad>(
    p: &P,
    f: &Assignment<P::Value>,
    g: &Assignment<P::Value>,
) -> Assignment<P::Value> {
    f.map_images(g.target().clone(), |x| p.kleisli(g, x))
}

/// The shifted map `V^{*u} -> P(W^{*u})`: the fresh variable goes to its
/// own unit, every other image is lifted along the inclusion `W -> W^{*u}`.
pub fn shift_map<P: Monad>(p: &P, u: &TypeExpr, f: &Assignment<P::Value>) -> Assignment<P::Value> {
    let source = f.source().extend(u);
    let target = f.target().extend(u);
    let weakening = VarMap::weakening(u, f.target());
    let mut images = Vec::with_capacity(source.len());
    images.push(p.unit(&target, VarRef(0)));
    images.extend(f.images().iter().map(|x| lift(p, &weakening, x)));
    Assignment::new_unchecked(source, target, images)
}

/// `shift_map` iterated over a binder list in context-extension order.
pub fn lshift_map<P: Monad>(p: &P, binders: &[TypeExpr], f: &Assignment<P::Value>) -> Assignment<P::Value> {
    match binders.split_first() {
        None => f.clone(),
        Some((b, bs)) => lshift_map(p, bs, &shift_map(p, b, f)),
    }
}

/// Every assignment `source -> P(target)` whose images come from
/// `P::elements` under `bound`, in lexicographic order.
pub fn assignments<P: Monad>(p: &P, source: &Context, target: &Context, bound: Bound) -> Vec<Assignment<P::Value>> {
    let mut partial: Vec<Vec<P::Value>> = vec![Vec::new()];
    for t in source.iter() {
        let choices = p.elements(target, t, bound);
        partial = partial
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |c| {
                    let mut next = prefix.clone();
                    next.push(c.clone());
                    next
                })
            })
            .collect();
        if partial.is_empty() {
            break;
        }
    }
    partial
        .into_iter()
        .map(|images| Assignment::new_unchecked(source.clone(), target.clone(), images))
        .collect()
}

pub fn render_assignment<T>(f: &Assignment<T>, render: impl Fn(&T) -> String) -> String {
    let parts: Vec<String> = f
        .images()
        .iter()
        .enumerate()
        .map(|(i, x)| format!("{i}:={}", render(x)))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

/// The derived monad `P^u(V) = P(V^{*u})`. Its unit goes through the
/// inclusion `V -> V^{*u}`; an assignment `V -> P(W^{*u})` acts by
/// substituting along its extension that sends the extra variable to itself.
pub struct DerivedMonad<'a, P> {
    base: &'a P,
    u: TypeExpr,
}

impl<'a, P: Monad> DerivedMonad<'a, P> {
    pub fn new(base: &'a P, u: TypeExpr) -> Self {
        DerivedMonad { base, u }
    }

    pub fn base(&self) -> &P {
        self.base
    }

    /// `default(f, η(*))` as an assignment `V^{*u} -> P(W^{*u})`.
    pub fn extend_assignment(&self, f: &Assignment<P::Value>) -> Assignment<P::Value> {
        let source = f.source().extend(&self.u);
        let target = f.target().extend(&self.u);
        let mut images = Vec::with_capacity(source.len());
        images.push(self.base.unit(&target, VarRef(0)));
        images.extend(f.images().iter().cloned());
        Assignment::new_unchecked(source, target, images)
    }
}

impl<'a, P: Monad> Monad for DerivedMonad<'a, P> {
    type Value = P::Value;

    fn name(&self) -> String {
        format!("{}^{}", self.base.name(), self.u)
    }

    fn unit(&self, ctx: &Context, v: VarRef) -> P::Value {
        self.base.unit(&ctx.extend(&self.u), VarRef(v.0 + 1))
    }

    fn kleisli(&self, f: &Assignment<P::Value>, x: &P::Value) -> P::Value {
        self.base.kleisli(&self.extend_assignment(f), x)
    }

    fn kleisli_all(&self, f: &Assignment<P::Value>, xs: &[P::Value]) -> Vec<P::Value> {
        self.base.kleisli_all(&self.extend_assignment(f), xs)
    }

    fn elements(&self, ctx: &Context, t: &TypeExpr, bound: Bound) -> Vec<P::Value> {
        self.base.elements(&ctx.extend(&self.u), t, bound)
    }

    fn has_type(&self, ctx: &Context, t: &TypeExpr, x: &P::Value) -> bool {
        self.base.has_type(&ctx.extend(&self.u), t, x)
    }

    fn size(&self, x: &P::Value) -> usize {
        self.base.size(x)
    }

    fn render(&self, x: &P::Value) -> String {
        self.base.render(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::SyntaxMonad;
    use crate::catalog::{stlc_signature, ulc_signature};
    use crate::syntax::{parse_term, rename, Term};

    fn unit() -> TypeExpr {
        TypeExpr::base("unit")
    }

    #[test]
    fn lift_agrees_with_renaming() {
        let lc = SyntaxMonad::new(ulc_signature());
        let v = Context::new(vec![unit(), unit()]);
        let w = Context::new(vec![unit(), unit(), unit()]);
        let f = VarMap::new(v.clone(), w.clone(), vec![2, 0]).unwrap();
        let x = parse_term(lc.signature(), &v, "(con abs (con app (var 2) (var 1)))").unwrap();
        assert_eq!(lift(&lc, &f, &x), rename(&f, &x));
    }

    #[test]
    fn shift_map_fixes_the_fresh_variable() {
        let lc = SyntaxMonad::new(ulc_signature());
        let v = Context::new(vec![unit()]);
        let w = Context::new(vec![unit()]);
        let f = Assignment::new_unchecked(v, w, vec![parse_term(lc.signature(), &Context::new(vec![unit()]), "(con abs (var 1))").unwrap()]);
        let g = shift_map(&lc, &unit(), &f);
        assert_eq!(g.images()[0], Term::var(0));
        assert_eq!(crate::syntax::print_term(&g.images()[1]), "(con abs (var 2))");
        assert_eq!(lshift_map(&lc, &[unit(), unit()], &f), shift_map(&lc, &unit(), &g));
    }

    #[test]
    fn assignments_are_the_product_of_fibres() {
        let sig = stlc_signature();
        let lc = SyntaxMonad::new(sig);
        let base = TypeExpr::base("base");
        let arrow = TypeExpr::app("arrow", vec![base.clone(), base.clone()]);
        let w = Context::new(vec![base.clone(), arrow.clone()]);
        let bound = Bound { nodes: 2, ty_depth: 1 };
        let a = lc.elements(&w, &base, bound).len();
        let b = lc.elements(&w, &arrow, bound).len();
        let source = Context::new(vec![arrow, base]);
        assert_eq!(assignments(&lc, &source, &w, bound).len(), a * b);
        assert_eq!(assignments(&lc, &Context::empty(), &w, bound).len(), 1);
    }

    #[test]
    fn derived_unit_skips_the_extra_variable() {
        let lc = SyntaxMonad::new(ulc_signature());
        let d = DerivedMonad::new(&lc, unit());
        let v = Context::new(vec![unit(), unit()]);
        assert_eq!(d.unit(&v, VarRef(1)), Term::var(2));
        let f = unit_map(&d, &v);
        assert_eq!(render_assignment(&d.extend_assignment(&f), |x| lc.render(x)), "{0:=(var 0), 1:=(var 1), 2:=(var 2)}");
        assert_eq!(d.extend_assignment(&f), unit_map(&lc, &v.extend(&unit())));
    }
}
