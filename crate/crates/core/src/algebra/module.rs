//! Modules over monads and the standard constructions on them.

use std::fmt;

use super::hom::MonadHom;
use super::monad::{lshift_map, shift_map, Bound, Monad};
use crate::syntax::{Assignment, Context};
use crate::types::TypeExpr;

pub type BaseValue<M> = <<M as Module>::Base as Monad>::Value;

/// A module over a monad: a carrier with a substitution action along
/// assignments into the monad. Typed modules have a carrier per object type
/// (codomain typed families); plain modules have a single carrier set.
pub trait Module {
    type Base: Monad;
    type Value: Clone + PartialEq + fmt::Debug;

    fn name(&self) -> String;

    fn base(&self) -> &Self::Base;

    fn is_typed(&self) -> bool;

    /// The carrier over `ctx`: at `sort` for typed modules; plain modules
    /// ignore `sort`.
    fn elements(&self, ctx: &Context, sort: Option<&TypeExpr>, bound: Bound) -> Vec<Self::Value>;

    fn msubst(&self, f: &Assignment<BaseValue<Self>>, x: &Self::Value) -> Self::Value;

    /// `msubst` along one assignment for many values.
    fn msubst_all(&self, f: &Assignment<BaseValue<Self>>, xs: &[Self::Value]) -> Vec<Self::Value> {
        xs.iter().map(|x| self.msubst(f, x)).collect()
    }

    /// Node count, compared against `Bound::nodes` when elements are
    /// combined into tuples.
    fn size(&self, _x: &Self::Value) -> usize {
        1
    }

    fn render(&self, x: &Self::Value) -> String;
}

/// A monad viewed as a module over itself.
pub struct Tautological<'a, P> {
    monad: &'a P,
}

impl<P> Clone for Tautological<'_, P> {
    fn clone(&self) -> Self {
        Tautological { monad: self.monad }
    }
}

pub fn taut_module<P: Monad>(p: &P) -> Tautological<'_, P> {
    Tautological { monad: p }
}

impl<P: Monad> Module for Tautological<'_, P> {
    type Base = P;
    type Value = P::Value;

    fn name(&self) -> String {
        self.monad.name()
    }

    fn base(&self) -> &P {
        self.monad
    }

    fn is_typed(&self) -> bool {
        true
    }

    fn elements(&self, ctx: &Context, sort: Option<&TypeExpr>, bound: Bound) -> Vec<P::Value> {
        sort.map_or_else(Vec::new, |t| self.monad.elements(ctx, t, bound))
    }

    fn msubst(&self, f: &Assignment<P::Value>, x: &P::Value) -> P::Value {
        self.monad.kleisli(f, x)
    }

    fn msubst_all(&self, f: &Assignment<P::Value>, xs: &[P::Value]) -> Vec<P::Value> {
        self.monad.kleisli_all(f, xs)
    }

    fn size(&self, x: &P::Value) -> usize {
        self.monad.size(x)
    }

    fn render(&self, x: &P::Value) -> String {
        self.monad.render(x)
    }
}

/// A fixed set with trivial substitution. With a singleton it is terminal.
pub struct Constant<'a, P, D> {
    monad: &'a P,
    values: Vec<D>,
}

impl<P, D: Clone> Clone for Constant<'_, P, D> {
    fn clone(&self) -> Self {
        Constant { monad: self.monad, values: self.values.clone() }
    }
}

pub fn constant_module<P: Monad, D>(p: &P, values: Vec<D>) -> Constant<'_, P, D> {
    Constant { monad: p, values }
}

pub fn terminal_module<P: Monad>(p: &P) -> Constant<'_, P, ()> {
    constant_module(p, vec![()])
}

impl<P: Monad, D: Clone + PartialEq + fmt::Debug> Module for Constant<'_, P, D> {
    type Base = P;
    type Value = D;

    fn name(&self) -> String {
        format!("const({})", self.values.len())
    }

    fn base(&self) -> &P {
        self.monad
    }

    fn is_typed(&self) -> bool {
        false
    }

    fn elements(&self, _ctx: &Context, _sort: Option<&TypeExpr>, _bound: Bound) -> Vec<D> {
        self.values.clone()
    }

    fn msubst(&self, _f: &Assignment<P::Value>, x: &D) -> D {
        x.clone()
    }

    fn render(&self, x: &D) -> String {
        format!("{x:?}")
    }
}

/// The fibre `M_u(V) = M(V)(u)` of a typed module.
#[derive(Clone)]
pub struct Fibre<M> {
    module: M,
    u: TypeExpr,
}

pub fn fibre_module<M: Module>(module: M, u: TypeExpr) -> Fibre<M> {
    assert!(module.is_typed(), "fibres are taken of typed modules");
    Fibre { module, u }
}

impl<M: Module> Module for Fibre<M> {
    type Base = M::Base;
    type Value = M::Value;

    fn name(&self) -> String {
        format!("{}_{}", self.module.name(), self.u)
    }

    fn base(&self) -> &M::Base {
        self.module.base()
    }

    fn is_typed(&self) -> bool {
        false
    }

    fn elements(&self, ctx: &Context, _sort: Option<&TypeExpr>, bound: Bound) -> Vec<M::Value> {
        self.module.elements(ctx, Some(&self.u), bound)
    }

    fn msubst(&self, f: &Assignment<BaseValue<M>>, x: &M::Value) -> M::Value {
        self.module.msubst(f, x)
    }

    fn msubst_all(&self, f: &Assignment<BaseValue<M>>, xs: &[M::Value]) -> Vec<M::Value> {
        self.module.msubst_all(f, xs)
    }

    fn size(&self, x: &M::Value) -> usize {
        self.module.size(x)
    }

    fn render(&self, x: &M::Value) -> String {
        self.module.render(x)
    }
}

/// The derived module `M^u(V) = M(V^{*u})`, substituting along the shifted map.
#[derive(Clone)]
pub struct Derived<M> {
    module: M,
    u: TypeExpr,
}

pub fn derived_module<M: Module>(module: M, u: TypeExpr) -> Derived<M> {
    Derived { module, u }
}

impl<M: Module> Module for Derived<M> {
    type Base = M::Base;
    type Value = M::Value;

    fn name(&self) -> String {
        format!("{}^{}", self.module.name(), self.u)
    }

    fn base(&self) -> &M::Base {
        self.module.base()
    }

    fn is_typed(&self) -> bool {
        self.module.is_typed()
    }

    fn elements(&self, ctx: &Context, sort: Option<&TypeExpr>, bound: Bound) -> Vec<M::Value> {
        self.module.elements(&ctx.extend(&self.u), sort, bound)
    }

    fn msubst(&self, f: &Assignment<BaseValue<M>>, x: &M::Value) -> M::Value {
        self.module.msubst(&shift_map(self.base(), &self.u, f), x)
    }

    fn msubst_all(&self, f: &Assignment<BaseValue<M>>, xs: &[M::Value]) -> Vec<M::Value> {
        self.module.msubst_all(&shift_map(self.base(), &self.u, f), xs)
    }

    fn size(&self, x: &M::Value) -> usize {
        self.module.size(x)
    }

    fn render(&self, x: &M::Value) -> String {
        self.module.render(x)
    }
}

/// Derivation along a binder list, in context-extension order.
#[derive(Clone)]
pub struct DerivedList<M> {
    module: M,
    binders: Vec<TypeExpr>,
}

pub fn derived_module_list<M: Module>(module: M, binders: Vec<TypeExpr>) -> DerivedList<M> {
    DerivedList { module, binders }
}

impl<M: Module> Module for DerivedList<M> {
    type Base = M::Base;
    type Value = M::Value;

    fn name(&self) -> String {
        let bs: Vec<String> = self.binders.iter().map(|b| b.to_string()).collect();
        format!("{}^[{}]", self.module.name(), bs.join(","))
    }

    fn base(&self) -> &M::Base {
        self.module.base()
    }

    fn is_typed(&self) -> bool {
        self.module.is_typed()
    }

    fn elements(&self, ctx: &Context, sort: Option<&TypeExpr>, bound: Bound) -> Vec<M::Value> {
        self.module.elements(&ctx.pow(&self.binders), sort, bound)
    }

    fn msubst(&self, f: &Assignment<BaseValue<M>>, x: &M::Value) -> M::Value {
        self.module.msubst(&lshift_map(self.base(), &self.binders, f), x)
    }

    fn msubst_all(&self, f: &Assignment<BaseValue<M>>, xs: &[M::Value]) -> Vec<M::Value> {
        self.module.msubst_all(&lshift_map(self.base(), &self.binders, f), xs)
    }

    fn size(&self, x: &M::Value) -> usize {
        self.module.size(x)
    }

    fn render(&self, x: &M::Value) -> String {
        self.module.render(x)
    }
}

/// Pointwise product `c ↦ M(c) × N(c)` of two modules over the same monad.
#[derive(Clone)]
pub struct Product<M, N> {
    left: M,
    right: N,
}

pub fn product_module<M: Module, N: Module<Base = M::Base>>(left: M, right: N) -> Product<M, N> {
    assert_eq!(left.is_typed(), right.is_typed(), "factors must share a codomain");
    Product { left, right }
}

impl<M: Module, N: Module<Base = M::Base>> Module for Product<M, N> {
    type Base = M::Base;
    type Value = (M::Value, N::Value);

    fn name(&self) -> String {
        format!("prod({},{})", self.left.name(), self.right.name())
    }

    fn base(&self) -> &M::Base {
        self.left.base()
    }

    fn is_typed(&self) -> bool {
        self.left.is_typed()
    }

    /// Pairs whose components together have at most `bound.nodes` nodes.
    fn elements(&self, ctx: &Context, sort: Option<&TypeExpr>, bound: Bound) -> Vec<Self::Value> {
        if bound.nodes < 2 {
            return Vec::new();
        }
        let factor = Bound { nodes: bound.nodes - 1, ..bound };
        let rights: Vec<(usize, N::Value)> =
            self.right.elements(ctx, sort, factor).into_iter().map(|b| (self.right.size(&b), b)).collect();
        self.left
            .elements(ctx, sort, factor)
            .into_iter()
            .flat_map(|a| {
                let n = self.left.size(&a);
                rights
                    .iter()
                    .filter(move |(m, _)| n + m <= bound.nodes)
                    .map(move |(_, b)| (a.clone(), b.clone()))
            })
            .collect()
    }

    fn msubst(&self, f: &Assignment<BaseValue<M>>, x: &Self::Value) -> Self::Value {
        (self.left.msubst(f, &x.0), self.right.msubst(f, &x.1))
    }

    fn msubst_all(&self, f: &Assignment<BaseValue<M>>, xs: &[Self::Value]) -> Vec<Self::Value> {
        let (ls, rs): (Vec<_>, Vec<_>) = xs.iter().cloned().unzip();
        self.left.msubst_all(f, &ls).into_iter().zip(self.right.msubst_all(f, &rs)).collect()
    }

    fn size(&self, x: &Self::Value) -> usize {
        self.left.size(&x.0) + self.right.size(&x.1)
    }

    fn render(&self, x: &Self::Value) -> String {
        format!("<{}, {}>", self.left.render(&x.0), self.right.render(&x.1))
    }
}

/// A `Q`-module seen as a `P`-module along a monad morphism `h : P -> Q`;
/// the carrier is unchanged and substitution goes through `h`.
pub struct Pullback<'h, P: Monad, Q: Monad, M> {
    hom: &'h MonadHom<'h, P, Q>,
    module: M,
}

impl<'h, P: Monad, Q: Monad, M: Clone> Clone for Pullback<'h, P, Q, M> {
    fn clone(&self) -> Self {
        Pullback { hom: self.hom, module: self.module.clone() }
    }
}

pub fn pullback_module<'h, P: Monad, Q: Monad, M: Module<Base = Q>>(
    hom: &'h MonadHom<'h, P, Q>,
    module: M,
) -> Pullback<'h, P, Q, M> {
    Pullback { hom, module }
}

impl<'h, P: Monad, Q: Monad, M: Module<Base = Q>> Module for Pullback<'h, P, Q, M> {
    type Base = P;
    type Value = M::Value;

    fn name(&self) -> String {
        format!("{}*({})", self.hom.name(), self.module.name())
    }

    fn base(&self) -> &P {
        self.hom.source()
    }

    fn is_typed(&self) -> bool {
        self.module.is_typed()
    }

    fn elements(&self, ctx: &Context, sort: Option<&TypeExpr>, bound: Bound) -> Vec<M::Value> {
        self.module.elements(ctx, sort, bound)
    }

    fn msubst(&self, f: &Assignment<P::Value>, x: &M::Value) -> M::Value {
        self.module.msubst(&self.hom.map_assignment(f), x)
    }

    fn msubst_all(&self, f: &Assignment<P::Value>, xs: &[M::Value]) -> Vec<M::Value> {
        self.module.msubst_all(&self.hom.map_assignment(f), xs)
    }

    fn size(&self, x: &M::Value) -> usize {
        self.module.size(x)
    }

    fn render(&self, x: &M::Value) -> String {
        self.module.render(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{unit_map, Monad, SyntaxMonad};
    use crate::catalog::{pcf_signature, ulc_signature};
    use crate::syntax::{parse_term, Context};

    fn unit() -> TypeExpr {
        TypeExpr::base("unit")
    }

    #[test]
    fn product_pairs_are_bounded_jointly() {
        let lc = SyntaxMonad::new(ulc_signature());
        let m = product_module(taut_module(&lc), taut_module(&lc));
        let v = Context::new(vec![unit()]);
        let bound = Bound { nodes: 3, ty_depth: 1 };
        let pairs = m.elements(&v, Some(&unit()), bound);
        assert!(pairs.iter().all(|p| m.size(p) <= 3));
        // sizes (1,1), (1,2), (2,1): one 1-node term, two 2-node terms
        assert_eq!(lc.elements(&v, &unit(), Bound { nodes: 1, ..bound }).len(), 1);
        assert_eq!(lc.elements(&v, &unit(), Bound { nodes: 2, ..bound }).len(), 3);
        assert_eq!(pairs.len(), 5);
        assert!(m.elements(&v, Some(&unit()), Bound { nodes: 1, ..bound }).is_empty());
    }

    #[test]
    fn derived_elements_live_in_the_extended_context() {
        let lc = SyntaxMonad::new(ulc_signature());
        let d = derived_module(taut_module(&lc), unit());
        let bound = Bound { nodes: 1, ty_depth: 1 };
        assert_eq!(d.elements(&Context::empty(), Some(&unit()), bound), lc.elements(&Context::new(vec![unit()]), &unit(), bound));
        let two = derived_module_list(taut_module(&lc), vec![unit(), unit()]);
        assert_eq!(two.elements(&Context::empty(), Some(&unit()), bound).len(), 2);
    }

    #[test]
    fn derived_substitution_shifts_the_map() {
        let lc = SyntaxMonad::new(ulc_signature());
        let d = derived_module(taut_module(&lc), unit());
        let v = Context::new(vec![unit()]);
        let x = parse_term(lc.signature(), &v.extend(&unit()), "(con app (var 0) (var 1))").unwrap();
        let image = parse_term(lc.signature(), &v, "(con abs (var 1))").unwrap();
        let f = Assignment::new_unchecked(v.clone(), v.clone(), vec![image]);
        let y = d.msubst(&f, &x);
        assert_eq!(lc.render(&y), "(con app (var 0) (con abs (var 2)))");
    }

    #[test]
    fn constant_and_fibre() {
        let pcf = SyntaxMonad::new(pcf_signature());
        let nat = TypeExpr::base("nat");
        let v = Context::new(vec![nat.clone(), TypeExpr::base("bool")]);
        let k = constant_module(&pcf, vec!['a', 'b']);
        assert_eq!(k.elements(&v, None, Bound { nodes: 3, ty_depth: 1 }), vec!['a', 'b']);
        assert_eq!(k.msubst(&unit_map(&pcf, &v), &'b'), 'b');
        assert_eq!(terminal_module(&pcf).elements(&Context::empty(), None, Bound { nodes: 1, ty_depth: 1 }), vec![()]);

        let fib = fibre_module(taut_module(&pcf), nat.clone());
        let bound = Bound { nodes: 1, ty_depth: 1 };
        assert!(!fib.is_typed());
        assert_eq!(fib.elements(&v, None, bound), pcf.elements(&v, &nat, bound));
    }
}
