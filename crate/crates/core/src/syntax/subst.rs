//! Renaming and capture-avoiding simultaneous substitution.

use std::fmt;

use super::context::{Context, VarRef};
use super::term::{check_term, Term, TermError};
use crate::signature::Signature;
use crate::types::TypeExpr;

/// A morphism of typed families out of `source`: one image per variable of
/// `source`, living over `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment<T> {
    source: Context,
    target: Context,
    images: Vec<T>,
}

/// Type-preserving variable renaming `V -> W`.
pub type VarMap = Assignment<VarRef>;
/// Substitution `V -> Terms(W)`.
pub type SubstMap = Assignment<Term>;

impl<T> Assignment<T> {
    /// Panics if the number of images differs from the source length;
    /// typing of the images is the caller's responsibility.
    pub fn new_unchecked(source: Context, target: Context, images: Vec<T>) -> Self {
        assert_eq!(source.len(), images.len(), "one image per source variable");
        Assignment { source, target, images }
    }

    pub fn source(&self) -> &Context {
        &self.source
    }

    pub fn target(&self) -> &Context {
        &self.target
    }

    pub fn images(&self) -> &[T] {
        &self.images
    }

    pub fn image(&self, v: VarRef) -> &T {
        &self.images[v.0]
    }

    /// Post-compose every image with `g`, which sees the target context.
    pub fn map_images<U>(&self, target: Context, g: impl FnMut(&T) -> U) -> Assignment<U> {
        Assignment { source: self.source.clone(), target, images: self.images.iter().map(g).collect() }
    }
}

impl VarMap {
    pub fn new(source: Context, target: Context, mapping: Vec<usize>) -> Result<Self, TermError> {
        if mapping.len() != source.len() {
            return Err(TermError::ArgCount {
                schema: "varmap".into(),
                expected: source.len(),
                found: mapping.len(),
            });
        }
        for (i, &j) in mapping.iter().enumerate() {
            let t = target.get(VarRef(j)).ok_or(TermError::UnboundIndex { index: j, len: target.len() })?;
            let s = &source.telescope()[i];
            if s != t {
                return Err(TermError::Expected { expected: s.clone(), found: t.clone() });
            }
        }
        Ok(Assignment { source, target, images: mapping.into_iter().map(VarRef).collect() })
    }

    pub fn identity(ctx: &Context) -> Self {
        Assignment {
            source: ctx.clone(),
            target: ctx.clone(),
            images: (0..ctx.len()).map(VarRef).collect(),
        }
    }

    /// The inclusion `V -> V^{*u}`.
    pub fn weakening(u: &TypeExpr, ctx: &Context) -> Self {
        Assignment {
            source: ctx.clone(),
            target: ctx.extend(u),
            images: (0..ctx.len()).map(|i| VarRef(i + 1)).collect(),
        }
    }

    /// `f ; η`: each variable sent to the variable term of its image.
    pub fn to_subst(&self) -> SubstMap {
        self.map_images(self.target.clone(), |v| Term::Var(*v))
    }

    /// All type-preserving renamings `source -> target`, lexicographic.
    pub fn all(source: &Context, target: &Context) -> Vec<VarMap> {
        let mut maps: Vec<Vec<VarRef>> = vec![Vec::new()];
        for t in source.iter() {
            let choices: Vec<VarRef> = target.vars_of_type(t).collect();
            maps = maps
                .into_iter()
                .flat_map(|m| {
                    choices.iter().map(move |&c| {
                        let mut m = m.clone();
                        m.push(c);
                        m
                    })
                })
                .collect();
        }
        maps.into_iter()
            .map(|images| Assignment { source: source.clone(), target: target.clone(), images })
            .collect()
    }
}

impl SubstMap {
    /// Checked constructor: image `i` must have type `source[i]` over `target`.
    pub fn new(sig: &Signature, source: Context, target: Context, images: Vec<Term>) -> Result<Self, TermError> {
        if images.len() != source.len() {
            return Err(TermError::ArgCount {
                schema: "substitution".into(),
                expected: source.len(),
                found: images.len(),
            });
        }
        for (t, x) in source.iter().zip(&images) {
            check_term(sig, &target, x, t)?;
        }
        Ok(Assignment { source, target, images })
    }

    /// The variable-as-term map `η : V -> Terms(V)`.
    pub fn eta(ctx: &Context) -> Self {
        VarMap::identity(ctx).to_subst()
    }
}

impl<T: fmt::Display> fmt::Display for Assignment<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}:={x}")?;
        }
        write!(f, "}}")
    }
}

fn rename_under(map: &[VarRef], depth: usize, x: &Term) -> Term {
    match x {
        Term::Var(VarRef(i)) if *i < depth => x.clone(),
        Term::Var(VarRef(i)) => Term::Var(VarRef(map[i - depth].0 + depth)),
        Term::Con(node) if node.scope() <= depth => x.clone(),
        Term::Con(node) => {
            let args = node
                .instance()
                .arity
                .args
                .iter()
                .zip(node.args())
                .map(|(slot, a)| rename_under(map, depth + slot.binders.len(), a))
                .collect();
            Term::con_unchecked(node.instance().clone(), args)
        }
    }
}

/// Rename the free variables of `x` along `f`; under binders the map is
/// extended to fix the bound variables.
pub fn rename(f: &VarMap, x: &Term) -> Term {
    rename_under(&f.images, 0, x)
}

/// Add `by` to every free variable at or above `cutoff`.
fn weaken_from(by: usize, cutoff: usize, x: &Term) -> Term {
    match x {
        Term::Var(VarRef(i)) if *i < cutoff => x.clone(),
        Term::Var(VarRef(i)) => Term::Var(VarRef(i + by)),
        Term::Con(node) if node.scope() <= cutoff => x.clone(),
        Term::Con(node) => {
            let args = node
                .instance()
                .arity
                .args
                .iter()
                .zip(node.args())
                .map(|(slot, a)| weaken_from(by, cutoff + slot.binders.len(), a))
                .collect();
            Term::con_unchecked(node.instance().clone(), args)
        }
    }
}

/// Renaming along the inclusion into a context extended by `by` fresh variables.
pub fn weaken(by: usize, x: &Term) -> Term {
    if by == 0 {
        x.clone()
    } else {
        weaken_from(by, 0, x)
    }
}

/// `f` adjusted under one binder of type `u`: the fresh variable goes to
/// itself, every other image is weakened past it.
pub fn shift(u: &TypeExpr, f: &SubstMap) -> SubstMap {
    let mut images = Vec::with_capacity(f.images.len() + 1);
    images.push(Term::var(0));
    images.extend(f.images.iter().map(|x| weaken(1, x)));
    Assignment { source: f.source.extend(u), target: f.target.extend(u), images }
}

/// `shift` iterated over a binder list in context-extension order.
pub fn lshift(binders: &[TypeExpr], f: &SubstMap) -> SubstMap {
    match binders.split_first() {
        None => f.clone(),
        Some((b, bs)) => lshift(bs, &shift(b, f)),
    }
}

// Substituting under `depth` binders uses `lshift` of the map by those
// binders, computed on demand: bound variables stay, free ones go to the
// weakened image.
fn subst_under(images: &[Term], depth: usize, x: &Term) -> Term {
    match x {
        Term::Var(VarRef(i)) if *i < depth => x.clone(),
        Term::Var(VarRef(i)) => weaken(depth, &images[i - depth]),
        Term::Con(node) if node.scope() <= depth => x.clone(),
        Term::Con(node) => {
            let args = node
                .instance()
                .arity
                .args
                .iter()
                .zip(node.args())
                .map(|(slot, a)| subst_under(images, depth + slot.binders.len(), a))
                .collect();
            Term::con_unchecked(node.instance().clone(), args)
        }
    }
}

/// Capture-avoiding simultaneous substitution.
pub fn subst(f: &SubstMap, x: &Term) -> Term {
    subst_under(&f.images, 0, x)
}

/// Kleisli composition `f ; subst g`.
pub fn compose(f: &SubstMap, g: &SubstMap) -> SubstMap {
    f.map_images(g.target.clone(), |x| subst(g, x))
}
