//! Representations of a signature in a monad, their morphisms, and the fold
//! out of the syntax.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{
    check_module_hom, ctx_entry, derived_module, fibre_module, lift, lshift_map, render_assignment, run_law,
    shift_map, taut_module, Bound, CheckSpace, Derived, DerivedMonad, Fibre, LawReport, MapTable, Module,
    ModuleHom, Monad, MonadHom, SyntaxMonad, Tautological, Witness,
};
use crate::signature::{ConcreteArity, InstanceRef, Signature, TyArgs};
use crate::syntax::{rename, subst, Assignment, Context, Term, VarMap, VarRef};
use crate::types::TypeExpr;

/// One value per argument slot of an arity; slot `i` lives over the context
/// extended by that slot's binders.
pub type ArgTuple<V> = Vec<V>;

/// A monad with one constructor per arity instance of a signature. A
/// constructor takes an `ArgTuple` over `V` to a value over `V` of the
/// instance's output type.
pub trait Representation {
    type Monad: Monad;

    fn name(&self) -> String;

    fn signature(&self) -> &Signature;

    fn monad(&self) -> &Self::Monad;

    fn construct(
        &self,
        ctx: &Context,
        instance: &InstanceRef,
        args: &[<Self::Monad as Monad>::Value],
    ) -> <Self::Monad as Monad>::Value;
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("representations of different signatures: `{source_sig}` and `{target_sig}`")]
    ShapeMismatch { source_sig: String, target_sig: String },
    #[error("candidate is not a morphism of representations: {0}")]
    PreconditionFailed(LawReport),
}

/// The domain module of an arity: argument tuples, substituted slotwise
/// along the map shifted under each slot's binders.
pub struct DomainModule<'a, P> {
    monad: &'a P,
    arity: ConcreteArity,
}

impl<P> Clone for DomainModule<'_, P> {
    fn clone(&self) -> Self {
        DomainModule { monad: self.monad, arity: self.arity.clone() }
    }
}

pub fn domain_module<P: Monad>(p: &P, arity: ConcreteArity) -> DomainModule<'_, P> {
    DomainModule { monad: p, arity }
}

impl<'a, P: Monad> DomainModule<'a, P> {
    pub fn arity(&self) -> &ConcreteArity {
        &self.arity
    }
}

impl<P: Monad> Module for DomainModule<'_, P> {
    type Base = P;
    type Value = ArgTuple<P::Value>;

    fn name(&self) -> String {
        let slots: Vec<String> = self.arity.args.iter().map(|a| a.to_string()).collect();
        format!("dom[{}]", slots.join(","))
    }

    fn base(&self) -> &P {
        self.monad
    }

    fn is_typed(&self) -> bool {
        false
    }

    /// Tuples whose components together have at most `bound.nodes` nodes,
    /// so the constructed term has at most one node more.
    fn elements(&self, ctx: &Context, _sort: Option<&TypeExpr>, bound: Bound) -> Vec<Self::Value> {
        let slots = self.arity.args.len();
        if bound.nodes < slots {
            return Vec::new();
        }
        let widest = Bound { nodes: bound.nodes + 1 - slots, ..bound };
        let mut tuples: Vec<(usize, Self::Value)> = vec![(0, Vec::new())];
        for (k, slot) in self.arity.args.iter().enumerate() {
            // Every later slot needs at least one node.
            let room = bound.nodes - (slots - k - 1);
            let choices: Vec<(usize, P::Value)> = self
                .monad
                .elements(&ctx.pow(&slot.binders), &slot.result, widest)
                .into_iter()
                .map(|c| (self.monad.size(&c), c))
                .collect();
            tuples = tuples
                .into_iter()
                .flat_map(|(used, prefix)| {
                    choices.iter().filter(move |(n, _)| used + n <= room).map(move |(n, c)| {
                        let mut next = prefix.clone();
                        next.push(c.clone());
                        (used + n, next)
                    })
                })
                .collect();
        }
        tuples.into_iter().map(|(_, t)| t).collect()
    }

    fn msubst(&self, f: &Assignment<P::Value>, x: &Self::Value) -> Self::Value {
        self.arity
            .args
            .iter()
            .zip(x)
            .map(|(slot, xi)| self.monad.kleisli(&lshift_map(self.monad, &slot.binders, f), xi))
            .collect()
    }

    fn msubst_all(&self, f: &Assignment<P::Value>, xs: &[Self::Value]) -> Vec<Self::Value> {
        let shifted: Vec<_> = self.arity.args.iter().map(|slot| lshift_map(self.monad, &slot.binders, f)).collect();
        xs.iter()
            .map(|x| shifted.iter().zip(x).map(|(g, xi)| self.monad.kleisli(g, xi)).collect())
            .collect()
    }

    fn size(&self, x: &Self::Value) -> usize {
        x.iter().map(|v| self.monad.size(v)).sum()
    }

    fn render(&self, x: &Self::Value) -> String {
        render_tuple(self.monad, x)
    }
}

pub fn render_tuple<P: Monad>(p: &P, x: &[P::Value]) -> String {
    let parts: Vec<String> = x.iter().map(|v| p.render(v)).collect();
    format!("<{}>", parts.join(", "))
}

/// The constructor of `instance` as a module morphism from its domain
/// module into the fibre at its output type.
pub fn arity_hom<'r, R: Representation>(
    rep: &'r R,
    instance: &InstanceRef,
) -> ModuleHom<'r, DomainModule<'r, R::Monad>, Fibre<Tautological<'r, R::Monad>>> {
    let inst = instance.clone();
    ModuleHom::new(
        format!("{}/{}{}", rep.name(), instance.schema, tyargs_suffix(instance)),
        domain_module(rep.monad(), instance.arity.clone()),
        fibre_module(taut_module(rep.monad()), instance.arity.output.clone()),
        move |ctx, args| rep.construct(ctx, &inst, args),
    )
}

fn tyargs_suffix(instance: &InstanceRef) -> String {
    if instance.tyargs.is_empty() {
        String::new()
    } else {
        instance.tyargs.to_string()
    }
}

/// Instances of a signature up to the budget's type depth.
pub fn instance_refs(sig: &Signature, space: &CheckSpace) -> Vec<InstanceRef> {
    sig.instances(space.terms.ty_depth).into_iter().map(Arc::new).collect()
}

/// `check_module_hom` for every constructor of `rep` within the budget.
pub fn check_representation(rep: &impl Representation, space: &CheckSpace) -> Vec<LawReport> {
    instance_refs(rep.signature(), space)
        .iter()
        .map(|inst| check_module_hom(&arity_hom(rep, inst), space))
        .collect()
}

/// The syntax as a representation: every constructor is itself.
pub struct SyntaxRepresentation {
    monad: SyntaxMonad,
}

pub fn syntax_representation(sig: Signature) -> SyntaxRepresentation {
    SyntaxRepresentation { monad: SyntaxMonad::new(sig) }
}

impl Representation for SyntaxRepresentation {
    type Monad = SyntaxMonad;

    fn name(&self) -> String {
        format!("syntax({})", self.monad.signature().name)
    }

    fn signature(&self) -> &Signature {
        self.monad.signature()
    }

    fn monad(&self) -> &SyntaxMonad {
        &self.monad
    }

    fn construct(&self, _ctx: &Context, instance: &InstanceRef, args: &[Term]) -> Term {
        Term::con_unchecked(instance.clone(), args.to_vec())
    }
}

/// The fold out of the syntax: variables go to units, each constructor to
/// its representation applied to the folded arguments.
pub fn init_fold<R: Representation>(rep: &R, ctx: &Context, x: &Term) -> <R::Monad as Monad>::Value {
    match x {
        Term::Var(v) => rep.monad().unit(ctx, *v),
        Term::Con(node) => {
            let args: Vec<_> = node
                .instance()
                .arity
                .args
                .iter()
                .zip(node.args())
                .map(|(slot, a)| init_fold(rep, &ctx.pow(&slot.binders), a))
                .collect();
            rep.construct(ctx, node.instance(), &args)
        }
    }
}

/// A monad morphism between the monads of two representations of the same
/// signature, meant to commute with their constructors.
pub struct RepMorphism<'a, R: Representation, S: Representation> {
    pub source: &'a R,
    pub target: &'a S,
    pub hom: MonadHom<'a, R::Monad, S::Monad>,
}

impl<'a, R: Representation, S: Representation> RepMorphism<'a, R, S> {
    pub fn new(
        name: impl Into<String>,
        source: &'a R,
        target: &'a S,
        map: impl Fn(&Context, &<R::Monad as Monad>::Value) -> <S::Monad as Monad>::Value + 'a,
    ) -> Self {
        RepMorphism { source, target, hom: MonadHom::new(name, source.monad(), target.monad(), map) }
    }

    pub fn name(&self) -> &str {
        self.hom.name()
    }
}

/// `init_fold` packaged as a morphism out of the syntax.
pub fn init_morphism<'a, R: Representation>(
    syntax: &'a SyntaxRepresentation,
    rep: &'a R,
) -> RepMorphism<'a, SyntaxRepresentation, R> {
    RepMorphism::new(format!("init[{}]", rep.name()), syntax, rep, move |ctx, x| init_fold(rep, ctx, x))
}

fn same_shape(a: &Signature, b: &Signature) -> Result<(), RepError> {
    if a.universe == b.universe && a.schemas == b.schemas {
        Ok(())
    } else {
        Err(RepError::ShapeMismatch { source_sig: a.name.to_string(), target_sig: b.name.to_string() })
    }
}

/// For every arity instance and every enumerated argument tuple over every
/// checked context: constructing in the source and then mapping agrees with
/// mapping slotwise and then constructing in the target. One report per
/// schema.
pub fn commute_check<R: Representation, S: Representation>(
    m: &RepMorphism<'_, R, S>,
    space: &CheckSpace,
) -> Result<Vec<LawReport>, RepError> {
    let sig = m.source.signature();
    same_shape(sig, m.target.signature())?;
    let p = m.source.monad();
    let q = m.target.monad();
    let instances = instance_refs(sig, space);
    let reports = sig
        .schemas
        .iter()
        .map(|schema| {
            run_law(format!("{}/commute[{}]", m.name(), schema.name), |probe| {
                for inst in instances.iter().filter(|i| i.schema == schema.name) {
                    let dom = domain_module(p, inst.arity.clone());
                    for v in &space.contexts {
                        for args in dom.elements(v, None, space.terms) {
                            let lhs = m.hom.apply(v, &m.source.construct(v, inst, &args));
                            let mapped: Vec<_> = inst
                                .arity
                                .args
                                .iter()
                                .zip(&args)
                                .map(|(slot, a)| m.hom.apply(&v.pow(&slot.binders), a))
                                .collect();
                            let rhs = m.target.construct(v, inst, &mapped);
                            probe.check(lhs == rhs, || Witness {
                                inputs: vec![
                                    ctx_entry("V", v),
                                    ("instance".into(), format!("{}{}", inst.schema, tyargs_suffix(inst))),
                                    ("args".into(), render_tuple(p, &args)),
                                ],
                                lhs: q.render(&lhs),
                                rhs: q.render(&rhs),
                            })?;
                        }
                    }
                }
                Ok(())
            })
        })
        .collect();
    Ok(reports)
}

/// The fold's compatibility with units, renaming, shifting and substitution.
pub fn check_init_monad_hom<R: Representation>(
    syntax: &SyntaxRepresentation,
    rep: &R,
    space: &CheckSpace,
) -> Vec<LawReport> {
    let s = syntax.monad();
    let q = rep.monad();
    let name = format!("init[{}]", rep.name());
    let init = |ctx: &Context, x: &Term| init_fold(rep, ctx, x);

    let weta = run_law(format!("{name}/init_weta"), |probe| {
        for v in &space.contexts {
            for i in 0..v.len() {
                let lhs = init(v, &Term::Var(VarRef(i)));
                let rhs = q.unit(v, VarRef(i));
                probe.check(lhs == rhs, || Witness {
                    inputs: vec![ctx_entry("V", v), ("v".into(), i.to_string())],
                    lhs: q.render(&lhs),
                    rhs: q.render(&rhs),
                })?;
            }
        }
        Ok(())
    });

    let init_lift = run_law(format!("{name}/init_lift"), |probe| {
        for v in &space.contexts {
            let xs = space.monad_elements(s, v);
            let ixs: Vec<_> = xs.iter().map(|x| init(v, x)).collect();
            for w in &space.contexts {
                for f in VarMap::all(v, w) {
                    for (x, ix) in xs.iter().zip(&ixs) {
                        let lhs = init(w, &rename(&f, x));
                        let rhs = lift(q, &f, ix);
                        probe.check(lhs == rhs, || Witness {
                            inputs: vec![
                                ctx_entry("V", v),
                                ("x".into(), s.render(x)),
                                ctx_entry("W", w),
                                ("f".into(), render_assignment(&f, |r| r.to_string())),
                            ],
                            lhs: q.render(&lhs),
                            rhs: q.render(&rhs),
                        })?;
                    }
                }
            }
        }
        Ok(())
    });

    let maps = MapTable::new(s, space);
    let init_shift = run_law(format!("{name}/init_shift"), |probe| {
        for (vi, v) in space.contexts.iter().enumerate() {
            for (_, f) in maps.from(vi) {
                let f_init = f.map_images(f.target().clone(), |x| init(f.target(), x));
                for u in &space.types {
                    let shifted = shift_map(s, u, f);
                    let shifted_init = shift_map(q, u, &f_init);
                    for i in 0..shifted.source().len() {
                        let lhs = init(shifted.target(), shifted.image(VarRef(i)));
                        let rhs = shifted_init.image(VarRef(i));
                        probe.check(&lhs == rhs, || Witness {
                            inputs: vec![
                                ctx_entry("V", v),
                                ctx_entry("W", f.target()),
                                ("f".into(), render_assignment(f, |y| s.render(y))),
                                ("u".into(), u.to_string()),
                                ("v".into(), i.to_string()),
                            ],
                            lhs: q.render(&lhs),
                            rhs: q.render(rhs),
                        })?;
                    }
                }
            }
        }
        Ok(())
    });

    let init_kleisli = run_law(format!("{name}/init_kleisli"), |probe| {
        for (vi, v) in space.contexts.iter().enumerate() {
            let xs = space.monad_elements(s, v);
            let ixs: Vec<_> = xs.iter().map(|x| init(v, x)).collect();
            for (_, f) in maps.from(vi) {
                let w = f.target();
                let f_init = f.map_images(w.clone(), |x| init(w, x));
                for (x, ix) in xs.iter().zip(&ixs) {
                    let lhs = init(w, &subst(f, x));
                    let rhs = q.kleisli(&f_init, ix);
                    probe.check(lhs == rhs, || Witness {
                        inputs: vec![
                            ctx_entry("V", v),
                            ("x".into(), s.render(x)),
                            ctx_entry("W", w),
                            ("f".into(), render_assignment(f, |y| s.render(y))),
                        ],
                        lhs: q.render(&lhs),
                        rhs: q.render(&rhs),
                    })?;
                }
            }
        }
        Ok(())
    });

    vec![weta, init_lift, init_shift, init_kleisli]
}

/// Finite uniqueness: a candidate morphism out of the syntax that commutes
/// with the constructors over `commute_space` agrees with `init_fold` on
/// every term enumerated by `space`. A candidate that does not commute is
/// rejected with its failing report.
pub fn uniqueness_check<R: Representation>(
    rep: &R,
    candidate: &RepMorphism<'_, SyntaxRepresentation, R>,
    commute_space: &CheckSpace,
    space: &CheckSpace,
) -> Result<LawReport, RepError> {
    same_shape(candidate.source.signature(), rep.signature())?;
    if let Some(failed) = commute_check(candidate, commute_space)?.into_iter().find(|r| !r.passed()) {
        return Err(RepError::PreconditionFailed(failed));
    }
    let s = candidate.source.monad();
    let q = rep.monad();
    Ok(run_law(format!("{}/init_unique", candidate.name()), |probe| {
        for v in &space.contexts {
            for x in space.monad_elements(s, v) {
                let lhs = candidate.hom.apply(v, &x);
                let rhs = init_fold(rep, v, &x);
                probe.check(lhs == rhs, || Witness {
                    inputs: vec![ctx_entry("V", v), ("x".into(), s.render(&x))],
                    lhs: q.render(&lhs),
                    rhs: q.render(&rhs),
                })?;
            }
        }
        Ok(())
    }))
}

/// Abs as a carrier map `LC^*(V) -> LC(V)` over a signature with a unary
/// `abs` binding one variable of the single object type.
pub fn abs_monad_hom<'a>(
    lc: &'a SyntaxMonad,
    star: &'a DerivedMonad<'a, SyntaxMonad>,
) -> MonadHom<'a, DerivedMonad<'a, SyntaxMonad>, SyntaxMonad> {
    let abs = Arc::new(lc.signature().instance("abs", &TyArgs::default()).expect("signature has a plain `abs`"));
    MonadHom::new("abs", star, lc, move |_, x: &Term| Term::con_unchecked(abs.clone(), vec![x.clone()]))
}

/// Abs as a module morphism `LC^* -> LC` (derived tautological module into
/// the tautological one).
pub fn abs_module_hom(
    lc: &SyntaxMonad,
    u: TypeExpr,
) -> ModuleHom<'static, Derived<Tautological<'_, SyntaxMonad>>, Tautological<'_, SyntaxMonad>> {
    let abs = Arc::new(lc.signature().instance("abs", &TyArgs::default()).expect("signature has a plain `abs`"));
    ModuleHom::new("abs", derived_module(taut_module(lc), u), taut_module(lc), move |_, x: &Term| {
        Term::con_unchecked(abs.clone(), vec![x.clone()])
    })
}

/// Both routes of the Kleisli square for Abs seen as a monad morphism
/// `LC^* -> LC`. Start from the unit of the outer variable `a` in
/// `LC^*([a])` and substitute `a` by the fresh variable `*` over `[]`.
/// Returns `(upper, lower)`: abs after substitution, and substitution after
/// abs.
pub fn abs_square_routes(lc: &SyntaxMonad) -> (Term, Term) {
    let u = lc.signature().universe.tycons()[0].name.clone();
    let u = TypeExpr::base(&u);
    let star = DerivedMonad::new(lc, u.clone());
    let abs = abs_monad_hom(lc, &star);
    let v = Context::new(vec![u]);
    let w = Context::empty();
    let x = star.unit(&v, VarRef(0));
    let f = Assignment::new_unchecked(v.clone(), w.clone(), vec![Term::var(0)]);
    let upper = abs.apply(&w, &star.kleisli(&f, &x));
    let lower = lc.kleisli(&abs.map_assignment(&f), &abs.apply(&v, &x));
    (upper, lower)
}

/// The untyped lambda calculus instance of `abs_square_routes`.
pub fn abs_counterexample() -> (Term, Term) {
    abs_square_routes(&SyntaxMonad::new(crate::catalog::ulc_signature()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Budget;
    use crate::catalog::{pcf_signature, stlc_signature, swapped_candidate, ulc_const_signature, ulc_signature};
    use crate::syntax::{parse_term, print_term};

    const SMALL: Budget = Budget { max_nodes: 2, map_nodes: 1, ctx_len: 1, ty_depth: 1, ctx_ty_depth: 1 };

    #[test]
    fn domain_tuples_are_bounded_jointly() {
        let sig = pcf_signature();
        let p = SyntaxMonad::new(sig.clone());
        let nat = TypeExpr::base("nat");
        let cond = sig.instance("cond", &TyArgs::new(&[("t", nat.clone())])).unwrap();
        let dom = domain_module(&p, cond.arity.clone());
        let v = Context::new(vec![nat]);
        let bound = Bound { nodes: 4, ty_depth: 1 };
        let tuples = dom.elements(&v, None, bound);
        assert!(!tuples.is_empty());
        assert!(tuples.iter().all(|t| t.len() == 3 && dom.size(t) <= 4));
        assert!(tuples.iter().any(|t| dom.size(t) == 4));
        assert!(dom.elements(&v, None, Bound { nodes: 2, ..bound }).is_empty());
    }

    #[test]
    fn fold_into_the_syntax_is_the_identity() {
        let sig = stlc_signature();
        let syntax = syntax_representation(sig.clone());
        let space = CheckSpace::new(&sig.universe, &SMALL);
        for v in &space.contexts {
            for x in space.monad_elements(syntax.monad(), v) {
                assert_eq!(init_fold(&syntax, v, &x), x);
            }
        }
    }

    #[test]
    fn abs_square_does_not_commute() {
        let (upper, lower) = abs_counterexample();
        assert_eq!(print_term(&upper), "(con abs (var 0))");
        assert_eq!(print_term(&lower), "(con abs (con abs (var 0)))");
        let lc = SyntaxMonad::new(ulc_signature());
        let u = TypeExpr::base("unit");
        let report = check_module_hom(&abs_module_hom(&lc, u), &CheckSpace::new(&lc.signature().universe, &SMALL));
        assert!(report.passed(), "{report}");
        assert_eq!(upper, parse_term(lc.signature(), &Context::empty(), "(con abs (var 0))").unwrap());
    }

    #[test]
    fn uniqueness_rejects_a_non_commuting_candidate() {
        let sig = ulc_signature();
        let syntax = syntax_representation(sig.clone());
        let space = CheckSpace::new(&sig.universe, &Budget::STANDARD);
        let cand = swapped_candidate(&syntax);
        assert!(matches!(uniqueness_check(&syntax, &cand, &space, &space), Err(RepError::PreconditionFailed(_))));
        let id = init_morphism(&syntax, &syntax);
        assert!(uniqueness_check(&syntax, &id, &space, &space).unwrap().passed());
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let syntax = syntax_representation(ulc_signature());
        let other = syntax_representation(ulc_const_signature());
        let space = CheckSpace::new(&ulc_signature().universe, &SMALL);
        let m = init_morphism(&syntax, &syntax);
        assert!(check_representation(&other, &space).iter().all(|r| r.passed()));
        assert!(matches!(
            uniqueness_check(&other, &RepMorphism::new("id", &syntax, &other, |_, x: &Term| x.clone()), &space, &space),
            Err(RepError::ShapeMismatch { .. })
        ));
        assert!(m.name().starts_with("init["));
    }
}
