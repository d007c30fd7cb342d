//! Shipped signatures, representations, candidate morphisms and negative
//! controls.

use std::sync::Arc;

use crate::algebra::{fibre_module, taut_module, Bound, Budget, Fibre, ModuleHom, Monad, SyntaxMonad, Tautological};
use crate::representation::{
    domain_module, init_fold, syntax_representation, DomainModule, RepError, RepMorphism, Representation,
    SyntaxRepresentation,
};
use crate::signature::{parse_signature, InstanceRef, Signature, TyArgs};
use crate::syntax::{parse_term, print_term, Assignment, Context, Term, VarRef};
use crate::types::TypeExpr;

pub const ULC_SIG: &str = include_str!("../examples/ulc.sig");
pub const ULC_CONST_SIG: &str = include_str!("../examples/ulc_const.sig");
pub const STLC_SIG: &str = include_str!("../examples/stlc.sig");
pub const PCF_SIG: &str = include_str!("../examples/pcf.sig");

fn shipped(text: &str) -> Signature {
    parse_signature(text).expect("shipped signature files are valid")
}

pub fn ulc_signature() -> Signature {
    shipped(ULC_SIG)
}

pub fn ulc_const_signature() -> Signature {
    shipped(ULC_CONST_SIG)
}

pub fn stlc_signature() -> Signature {
    shipped(STLC_SIG)
}

pub fn pcf_signature() -> Signature {
    shipped(PCF_SIG)
}

/// A named signature with the budget its law suite runs at, and the larger
/// signature its inclusion representation targets.
#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub text: &'static str,
    pub budget: Budget,
    pub superset: Option<&'static str>,
}

impl CatalogEntry {
    pub fn signature(&self) -> Signature {
        shipped(self.text)
    }
}

/// The standard budget with context entries restricted to depth-one types:
/// arrow types in contexts multiply the law instances past desk scale.
pub const PCF_BUDGET: Budget = Budget { ctx_ty_depth: 1, ..Budget::STANDARD };

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry { name: "ulc", text: ULC_SIG, budget: Budget::STANDARD, superset: Some("ulc_const") },
    CatalogEntry { name: "ulc_const", text: ULC_CONST_SIG, budget: Budget::STANDARD, superset: None },
    CatalogEntry { name: "stlc", text: STLC_SIG, budget: Budget::STANDARD, superset: None },
    CatalogEntry { name: "pcf", text: PCF_SIG, budget: PCF_BUDGET, superset: None },
];

pub fn entry(name: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.name == name)
}

pub fn signature_by_name(name: &str) -> Option<Signature> {
    entry(name).map(CatalogEntry::signature)
}

/// Names accepted by `fold --rep`.
pub const REPRESENTATION_NAMES: &[&str] = &["syntax", "exception", "inclusion"];

/// A value of the exception monad: a variable, or failure at an object type.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Exc {
    Inl(VarRef),
    Bottom(TypeExpr),
}

/// `E(V)_t = V_t + {⊥_t}`: substitution replaces variables and keeps ⊥.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExceptionMonad;

impl Monad for ExceptionMonad {
    type Value = Exc;

    fn name(&self) -> String {
        "exc".into()
    }

    fn unit(&self, _ctx: &Context, v: VarRef) -> Exc {
        Exc::Inl(v)
    }

    fn kleisli(&self, f: &Assignment<Exc>, x: &Exc) -> Exc {
        match x {
            Exc::Inl(v) => f.image(*v).clone(),
            Exc::Bottom(t) => Exc::Bottom(t.clone()),
        }
    }

    fn elements(&self, ctx: &Context, t: &TypeExpr, _bound: Bound) -> Vec<Exc> {
        ctx.vars_of_type(t).map(Exc::Inl).chain([Exc::Bottom(t.clone())]).collect()
    }

    fn has_type(&self, ctx: &Context, t: &TypeExpr, x: &Exc) -> bool {
        match x {
            Exc::Inl(v) => ctx.get(*v) == Some(t),
            Exc::Bottom(u) => u == t,
        }
    }

    fn render(&self, x: &Exc) -> String {
        match x {
            Exc::Inl(v) => format!("inl {v}"),
            Exc::Bottom(t) => format!("bottom@{t}"),
        }
    }
}

/// Every constructor fails at its output type.
pub struct ExceptionRepresentation {
    sig: Signature,
    monad: ExceptionMonad,
}

pub fn exception_representation(sig: Signature) -> ExceptionRepresentation {
    ExceptionRepresentation { sig, monad: ExceptionMonad }
}

impl Representation for ExceptionRepresentation {
    type Monad = ExceptionMonad;

    fn name(&self) -> String {
        format!("exception({})", self.sig.name)
    }

    fn signature(&self) -> &Signature {
        &self.sig
    }

    fn monad(&self) -> &ExceptionMonad {
        &self.monad
    }

    fn construct(&self, _ctx: &Context, instance: &InstanceRef, _args: &[Exc]) -> Exc {
        Exc::Bottom(instance.arity.output.clone())
    }
}

/// A signature represented in the syntax of a larger one over the same
/// object types: each constructor is re-tagged as the same-named
/// constructor of the larger signature.
pub struct InclusionRepresentation {
    sub: Signature,
    sup: SyntaxMonad,
}

/// Fails unless every schema of `sub` occurs verbatim in `sup` and the
/// type universes agree.
pub fn inclusion_representation(sub: Signature, sup: Signature) -> Result<InclusionRepresentation, RepError> {
    let mismatch = || RepError::ShapeMismatch { source_sig: sub.name.to_string(), target_sig: sup.name.to_string() };
    if sub.universe != sup.universe || !sub.schemas.iter().all(|s| sup.schema(&s.name) == Some(s)) {
        return Err(mismatch());
    }
    Ok(InclusionRepresentation { sub, sup: SyntaxMonad::new(sup) })
}

impl InclusionRepresentation {
    /// The same-named constructor of the larger signature. Schemas were
    /// checked equal at construction, so the instance data coincides and
    /// the node can be shared.
    fn retag(&self, instance: &InstanceRef) -> InstanceRef {
        instance.clone()
    }
}

impl Representation for InclusionRepresentation {
    type Monad = SyntaxMonad;

    fn name(&self) -> String {
        format!("inclusion({}<{})", self.sub.name, self.sup.signature().name)
    }

    fn signature(&self) -> &Signature {
        &self.sub
    }

    fn monad(&self) -> &SyntaxMonad {
        &self.sup
    }

    fn construct(&self, _ctx: &Context, instance: &InstanceRef, args: &[Term]) -> Term {
        Term::con_unchecked(self.retag(instance), args.to_vec())
    }
}

/// Structural injection written directly, independent of `init_fold`.
pub fn inclusion_candidate<'a>(
    syntax: &'a SyntaxRepresentation,
    rep: &'a InclusionRepresentation,
) -> RepMorphism<'a, SyntaxRepresentation, InclusionRepresentation> {
    fn inject(rep: &InclusionRepresentation, x: &Term) -> Term {
        match x {
            Term::Var(v) => Term::Var(*v),
            Term::Con(node) => {
                let args = node.args().iter().map(|a| inject(rep, a)).collect();
                Term::con_unchecked(rep.retag(node.instance()), args)
            }
        }
    }
    RepMorphism::new("inject", syntax, rep, move |_, x| inject(rep, x))
}

/// Variables to themselves, every constructor term to ⊥ at its type.
pub fn exception_candidate<'a>(
    syntax: &'a SyntaxRepresentation,
    rep: &'a ExceptionRepresentation,
) -> RepMorphism<'a, SyntaxRepresentation, ExceptionRepresentation> {
    RepMorphism::new("to_exc", syntax, rep, |_, x: &Term| match x {
        Term::Var(v) => Exc::Inl(*v),
        Term::Con(node) => Exc::Bottom(node.output().clone()),
    })
}

/// The identity on the syntax as a morphism into any representation sharing
/// its monad.
pub fn identity_candidate<'a, R: Representation<Monad = SyntaxMonad>>(
    syntax: &'a SyntaxRepresentation,
    rep: &'a R,
) -> RepMorphism<'a, SyntaxRepresentation, R> {
    RepMorphism::new("id", syntax, rep, |_, x: &Term| x.clone())
}

/// The fold into the syntax followed by exchanging `λ.0` and `λ.λ.0`
/// (printed forms), which breaks commutation with `abs`.
pub fn swapped_candidate(syntax: &SyntaxRepresentation) -> RepMorphism<'_, SyntaxRepresentation, SyntaxRepresentation> {
    const ID: &str = "(con abs (var 0))";
    const K: &str = "(con abs (con abs (var 0)))";
    RepMorphism::new("swap", syntax, syntax, move |ctx, x| {
        let y = init_fold(syntax, ctx, x);
        let sig = syntax.signature();
        match print_term(&y).as_str() {
            ID => parse_term(sig, ctx, K).unwrap_or(y),
            K => parse_term(sig, ctx, ID).unwrap_or(y),
            _ => y,
        }
    })
}

/// The syntax of a signature with `abs` replaced by a constant: every
/// abstraction becomes `λ.0`.
pub struct CorruptedRepresentation {
    syntax: SyntaxRepresentation,
}

pub fn corrupted_representation(sig: Signature) -> CorruptedRepresentation {
    CorruptedRepresentation { syntax: syntax_representation(sig) }
}

impl Representation for CorruptedRepresentation {
    type Monad = SyntaxMonad;

    fn name(&self) -> String {
        format!("corrupted({})", self.syntax.signature().name)
    }

    fn signature(&self) -> &Signature {
        self.syntax.signature()
    }

    fn monad(&self) -> &SyntaxMonad {
        self.syntax.monad()
    }

    fn construct(&self, ctx: &Context, instance: &InstanceRef, args: &[Term]) -> Term {
        if &*instance.schema == "abs" {
            let body = Term::var(0);
            self.syntax.construct(ctx, instance, &[body])
        } else {
            self.syntax.construct(ctx, instance, args)
        }
    }
}

/// A would-be `app` constructor that ignores its arguments and returns
/// `(var 0)` over non-empty contexts and `λ.0` over the empty one.
pub fn context_dependent_app(
    monad: &SyntaxMonad,
) -> ModuleHom<'_, DomainModule<'_, SyntaxMonad>, Fibre<Tautological<'_, SyntaxMonad>>> {
    let sig = monad.signature();
    let app = Arc::new(sig.instance("app", &TyArgs::default()).expect("signature has a plain `app`"));
    let abs = Arc::new(sig.instance("abs", &TyArgs::default()).expect("signature has a plain `abs`"));
    ModuleHom::new(
        "const_app",
        domain_module(monad, app.arity.clone()),
        fibre_module(taut_module(monad), app.arity.output.clone()),
        move |ctx: &Context, _args: &Vec<Term>| {
            if ctx.is_empty() {
                Term::con_unchecked(abs.clone(), vec![Term::var(0)])
            } else {
                Term::var(0)
            }
        },
    )
}

/// Substitution that forgets to shift under binders: a bound variable is
/// replaced as if it were free, and out-of-range indices are left alone.
pub struct BrokenMonad {
    syntax: SyntaxMonad,
}

pub fn broken_monad_control(sig: Signature) -> BrokenMonad {
    BrokenMonad { syntax: SyntaxMonad::new(sig) }
}

fn broken_subst(f: &Assignment<Term>, x: &Term) -> Term {
    match x {
        Term::Var(v) if v.0 < f.images().len() => f.image(*v).clone(),
        Term::Var(v) => Term::Var(*v),
        Term::Con(node) => {
            let args = node.args().iter().map(|a| broken_subst(f, a)).collect();
            Term::con_unchecked(node.instance().clone(), args)
        }
    }
}

impl Monad for BrokenMonad {
    type Value = Term;

    fn name(&self) -> String {
        format!("broken({})", self.syntax.signature().name)
    }

    fn unit(&self, ctx: &Context, v: VarRef) -> Term {
        self.syntax.unit(ctx, v)
    }

    fn kleisli(&self, f: &Assignment<Term>, x: &Term) -> Term {
        broken_subst(f, x)
    }

    fn elements(&self, ctx: &Context, t: &TypeExpr, bound: Bound) -> Vec<Term> {
        self.syntax.elements(ctx, t, bound)
    }

    fn has_type(&self, ctx: &Context, t: &TypeExpr, x: &Term) -> bool {
        self.syntax.has_type(ctx, t, x)
    }

    fn size(&self, x: &Term) -> usize {
        x.size()
    }

    fn render(&self, x: &Term) -> String {
        self.syntax.render(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representation::init_fold;
    use crate::syntax::parse_term;

    #[test]
    fn every_entry_parses() {
        for e in CATALOG {
            let sig = e.signature();
            assert_eq!(sig.name.to_string(), e.name);
            if let Some(sup) = e.superset {
                assert!(inclusion_representation(sig, signature_by_name(sup).unwrap()).is_ok());
            }
        }
        assert!(signature_by_name("nope").is_none());
    }

    #[test]
    fn inclusion_needs_a_superset() {
        let err = inclusion_representation(ulc_const_signature(), ulc_signature()).err().unwrap();
        assert!(matches!(err, RepError::ShapeMismatch { .. }));
        assert!(inclusion_representation(stlc_signature(), pcf_signature()).is_err());
    }

    #[test]
    fn exception_fold_keeps_variables() {
        let sig = pcf_signature();
        let exc = exception_representation(sig.clone());
        let nat = TypeExpr::base("nat");
        let v = Context::new(vec![nat.clone()]);
        let var = parse_term(&sig, &v, "(var 0)").unwrap();
        let succ = parse_term(&sig, &v, "(con succ (var 0))").unwrap();
        assert_eq!(init_fold(&exc, &v, &var), Exc::Inl(VarRef(0)));
        assert_eq!(init_fold(&exc, &v, &succ), Exc::Bottom(nat.clone()));
        assert_eq!(ExceptionMonad.elements(&v, &nat, Bound { nodes: 1, ty_depth: 1 }).len(), 2);
    }

    #[test]
    fn broken_monad_sizes_follow_terms() {
        let sig = ulc_signature();
        let broken = broken_monad_control(sig.clone());
        let x = parse_term(&sig, &Context::empty(), "(con abs (con abs (var 1)))").unwrap();
        assert_eq!(broken.size(&x), 3);
    }
}
