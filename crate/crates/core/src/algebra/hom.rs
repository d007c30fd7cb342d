use super::module::{pullback_module, taut_module, Module, Pullback, Tautological};
use super::monad::Monad;
use crate::syntax::{Assignment, Context};

type CarrierMap<'a, A, B> = Box<dyn Fn(&Context, &A) -> B + 'a>;

/// A family of carrier maps `τ_V : P(V) -> Q(V)`, meant to commute with
/// units and Kleisli extension (checked by `check_monad_hom`).
pub struct MonadHom<'a, P: Monad, Q: Monad> {
    name: String,
    source: &'a P,
    target: &'a Q,
    map: CarrierMap<'a, P::Value, Q::Value>,
}

impl<'a, P: Monad, Q: Monad> MonadHom<'a, P, Q> {
    pub fn new(
        name: impl Into<String>,
        source: &'a P,
        target: &'a Q,
        map: impl Fn(&Context, &P::Value) -> Q::Value + 'a,
    ) -> Self {
        MonadHom { name: name.into(), source, target, map: Box::new(map) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &'a P {
        self.source
    }

    pub fn target(&self) -> &'a Q {
        self.target
    }

    pub fn apply(&self, ctx: &Context, x: &P::Value) -> Q::Value {
        (self.map)(ctx, x)
    }

    /// `f ; τ` for an assignment `f : V -> P(W)`.
    pub fn map_assignment(&self, f: &Assignment<P::Value>) -> Assignment<Q::Value> {
        let w = f.target().clone();
        f.map_images(w.clone(), |x| self.apply(&w, x))
    }
}

impl<'a, P: Monad> MonadHom<'a, P, P> {
    pub fn identity(p: &'a P) -> Self {
        MonadHom::new(format!("id({})", p.name()), p, p, |_, x: &P::Value| x.clone())
    }
}

/// A family of carrier maps between two modules over the same monad, meant
/// to commute with module substitution (checked by `check_module_hom`).
pub struct ModuleHom<'a, M: Module, N: Module<Base = M::Base>> {
    name: String,
    source: M,
    target: N,
    map: CarrierMap<'a, M::Value, N::Value>,
}

impl<'a, M: Module, N: Module<Base = M::Base>> ModuleHom<'a, M, N> {
    pub fn new(
        name: impl Into<String>,
        source: M,
        target: N,
        map: impl Fn(&Context, &M::Value) -> N::Value + 'a,
    ) -> Self {
        ModuleHom { name: name.into(), source, target, map: Box::new(map) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &M {
        &self.source
    }

    pub fn target(&self) -> &N {
        &self.target
    }

    pub fn apply(&self, ctx: &Context, x: &M::Value) -> N::Value {
        (self.map)(ctx, x)
    }
}

/// A monad morphism `h : P -> Q` as a morphism of `P`-modules `P -> h*Q`.
pub fn induced_module_hom<'a, P: Monad, Q: Monad>(
    h: &'a MonadHom<'a, P, Q>,
) -> ModuleHom<'a, Tautological<'a, P>, Pullback<'a, P, Q, Tautological<'a, Q>>> {
    ModuleHom::new(
        format!("induced({})", h.name()),
        taut_module(h.source()),
        pullback_module(h, taut_module(h.target())),
        move |ctx, x| h.apply(ctx, x),
    )
}
