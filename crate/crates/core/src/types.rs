//! Object-type universes, type expressions, and the first-order
//! initial-algebra fold over them.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub type Name = Arc<str>;

/// A type expression: a type constructor applied to arguments, or a
/// metavariable (only legal inside arity schemas).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeExpr {
    Con(Name, Vec<TypeExpr>),
    Meta(Name),
}

impl TypeExpr {
    pub fn base(name: &str) -> Self {
        TypeExpr::Con(name.into(), Vec::new())
    }

    pub fn app(name: &str, args: Vec<TypeExpr>) -> Self {
        TypeExpr::Con(name.into(), args)
    }

    pub fn meta(name: &str) -> Self {
        TypeExpr::Meta(name.into())
    }

    pub fn is_concrete(&self) -> bool {
        match self {
            TypeExpr::Con(_, args) => args.iter().all(TypeExpr::is_concrete),
            TypeExpr::Meta(_) => false,
        }
    }

    /// Tycon nesting depth; nullary constructors and metavariables have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            TypeExpr::Con(_, args) => 1 + args.iter().map(TypeExpr::depth).max().unwrap_or(0),
            TypeExpr::Meta(_) => 1,
        }
    }

    pub fn metavars(&self, out: &mut Vec<Name>) {
        match self {
            TypeExpr::Con(_, args) => args.iter().for_each(|a| a.metavars(out)),
            TypeExpr::Meta(m) => {
                if !out.contains(m) {
                    out.push(m.clone())
                }
            }
        }
    }

    /// Replace metavariables according to `lookup`; unmapped ones are kept.
    pub fn substitute(&self, lookup: &dyn Fn(&str) -> Option<TypeExpr>) -> TypeExpr {
        match self {
            TypeExpr::Con(name, args) => TypeExpr::Con(
                name.clone(),
                args.iter().map(|a| a.substitute(lookup)).collect(),
            ),
            TypeExpr::Meta(m) => lookup(m).unwrap_or_else(|| self.clone()),
        }
    }
}

impl fmt::Display for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeExpr::Con(name, args) if args.is_empty() => write!(f, "{name}"),
            TypeExpr::Con(name, args) => {
                write!(f, "({name}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
            TypeExpr::Meta(m) => write!(f, "{m}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tycon {
    pub name: Name,
    pub arity: usize,
}

/// The set of object types: either a finite list of names or the types
/// freely generated by a list of type constructors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeUniverse {
    Enumerated(Vec<Name>),
    Generated(Vec<Tycon>),
}

impl TypeUniverse {
    pub fn enumerated(names: &[&str]) -> Self {
        TypeUniverse::Enumerated(names.iter().map(|&n| n.into()).collect())
    }

    pub fn generated(tycons: &[(&str, usize)]) -> Self {
        TypeUniverse::Generated(
            tycons
                .iter()
                .map(|&(name, arity)| Tycon { name: name.into(), arity })
                .collect(),
        )
    }

    /// Enumerated names are seen as nullary constructors.
    pub fn tycons(&self) -> Vec<Tycon> {
        match self {
            TypeUniverse::Enumerated(names) => names
                .iter()
                .map(|n| Tycon { name: n.clone(), arity: 0 })
                .collect(),
            TypeUniverse::Generated(tycons) => tycons.clone(),
        }
    }

    pub fn arity_of(&self, name: &str) -> Option<usize> {
        match self {
            TypeUniverse::Enumerated(names) => names.iter().any(|n| &**n == name).then_some(0),
            TypeUniverse::Generated(tycons) => {
                tycons.iter().find(|t| &*t.name == name).map(|t| t.arity)
            }
        }
    }

    pub fn validate(&self) -> Vec<TypeError> {
        let mut errors = Vec::new();
        let names: Vec<Name> = self.tycons().into_iter().map(|t| t.name).collect();
        if names.is_empty() {
            errors.push(TypeError::EmptyUniverse);
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                errors.push(TypeError::EmptyName);
            }
            if names[..i].contains(n) {
                errors.push(TypeError::DuplicateTypeName(n.clone()));
            }
        }
        errors
    }

    /// Check well-formedness of `t`; metavariables are allowed iff listed in `metavars`.
    pub fn check(&self, t: &TypeExpr, metavars: &[Name]) -> Result<(), TypeError> {
        match t {
            TypeExpr::Meta(m) if metavars.contains(m) => Ok(()),
            TypeExpr::Meta(m) => Err(TypeError::UndeclaredMetavar(m.clone())),
            TypeExpr::Con(name, args) => {
                let arity = self
                    .arity_of(name)
                    .ok_or_else(|| TypeError::UnknownType(name.clone()))?;
                if arity != args.len() {
                    return Err(TypeError::ArityMismatch {
                        name: name.clone(),
                        expected: arity,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| self.check(a, metavars))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("unknown type name `{0}`")]
    UnknownType(Name),
    #[error("arity mismatch: `{name}` expects {expected} argument(s), got {found}")]
    ArityMismatch {
        name: Name,
        expected: usize,
        found: usize,
    },
    #[error("undeclared metavariable {0}")]
    UndeclaredMetavar(Name),
    #[error("duplicate type name `{0}`")]
    DuplicateTypeName(Name),
    #[error("empty type name")]
    EmptyName,
    #[error("type universe has no types")]
    EmptyUniverse,
}

/// All concrete types of nesting depth at most `max_depth`, depth-major, then
/// constructor declaration order, then lexicographic in the argument positions.
pub fn enumerate_type_exprs(universe: &TypeUniverse, max_depth: usize) -> Vec<TypeExpr> {
    let tycons = universe.tycons();
    let mut all: Vec<TypeExpr> = Vec::new();
    // all[shallower..] holds the types of the previous depth
    let mut shallower = 0;
    for depth in 1..=max_depth {
        let prev_len = all.len();
        let mut level = Vec::new();
        for tc in &tycons {
            if depth == 1 {
                if tc.arity == 0 {
                    level.push(TypeExpr::Con(tc.name.clone(), Vec::new()));
                }
                continue;
            }
            if tc.arity == 0 || prev_len == 0 {
                continue;
            }
            // Argument tuples drawn from `all` in lexicographic order, keeping
            // those with at least one argument of depth exactly `depth - 1`.
            let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
            for _ in 0..tc.arity {
                tuples = tuples
                    .into_iter()
                    .flat_map(|t| {
                        (0..prev_len).map(move |i| {
                            let mut t = t.clone();
                            t.push(i);
                            t
                        })
                    })
                    .collect();
            }
            for idx in tuples.into_iter().filter(|t| t.iter().any(|&i| i >= shallower)) {
                let args = idx.iter().map(|&i| all[i].clone()).collect();
                level.push(TypeExpr::Con(tc.name.clone(), args));
            }
        }
        shallower = prev_len;
        all.extend(level);
    }
    all
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FoldError {
    #[error("no operation for type constructor `{0}`")]
    MissingOperation(Name),
    #[error("operation `{name}` has arity {found}, constructor expects {expected}")]
    ArityMismatch {
        name: Name,
        expected: usize,
        found: usize,
    },
    #[error("cannot fold a type containing metavariable {0}")]
    NotConcrete(Name),
}

type Op<'a, C> = Box<dyn Fn(&[C]) -> C + 'a>;

/// An algebra for the type constructors of a universe: one n-ary
/// operation on the carrier `C` per constructor.
pub struct TypeAlgebra<'a, C> {
    ops: HashMap<Name, (usize, Op<'a, C>)>,
}

impl<'a, C> Default for TypeAlgebra<'a, C> {
    fn default() -> Self {
        TypeAlgebra { ops: HashMap::new() }
    }
}

impl<'a, C> TypeAlgebra<'a, C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn op(mut self, name: &str, arity: usize, f: impl Fn(&[C]) -> C + 'a) -> Self {
        self.ops.insert(name.into(), (arity, Box::new(f)));
        self
    }

    pub fn apply(&self, name: &str, args: &[C]) -> Result<C, FoldError> {
        let (arity, f) = self
            .ops
            .get(name)
            .ok_or_else(|| FoldError::MissingOperation(name.into()))?;
        if *arity != args.len() {
            return Err(FoldError::ArityMismatch {
                name: name.into(),
                expected: args.len(),
                found: *arity,
            });
        }
        Ok(f(args))
    }

    /// The unique homomorphism out of the term algebra.
    pub fn fold(&self, t: &TypeExpr) -> Result<C, FoldError> {
        match t {
            TypeExpr::Con(name, args) => {
                let children = args
                    .iter()
                    .map(|a| self.fold(a))
                    .collect::<Result<Vec<_>, _>>()?;
                self.apply(name, &children)
            }
            TypeExpr::Meta(m) => Err(FoldError::NotConcrete(m.clone())),
        }
    }
}

/// Fold `t` with `algebra`, after checking that the algebra interprets every
/// constructor of `universe` at the right arity.
pub fn fold_type_algebra<C>(
    universe: &TypeUniverse,
    algebra: &TypeAlgebra<'_, C>,
    t: &TypeExpr,
) -> Result<C, FoldError> {
    for tc in universe.tycons() {
        match algebra.ops.get(&tc.name) {
            None => return Err(FoldError::MissingOperation(tc.name)),
            Some((arity, _)) if *arity != tc.arity => {
                return Err(FoldError::ArityMismatch {
                    name: tc.name,
                    expected: tc.arity,
                    found: *arity,
                })
            }
            Some(_) => {}
        }
    }
    algebra.fold(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stlc() -> TypeUniverse {
        TypeUniverse::generated(&[("base", 0), ("arrow", 2)])
    }

    fn arrow(a: TypeExpr, b: TypeExpr) -> TypeExpr {
        TypeExpr::app("arrow", vec![a, b])
    }

    #[test]
    fn enumerate_enumerated_universe() {
        let u = TypeUniverse::enumerated(&["unit"]);
        assert_eq!(enumerate_type_exprs(&u, 1), vec![TypeExpr::base("unit")]);
        assert_eq!(enumerate_type_exprs(&u, 4), vec![TypeExpr::base("unit")]);
    }

    #[test]
    fn enumerate_generated_depth_two_and_three() {
        let b = TypeExpr::base("base");
        let bb = arrow(b.clone(), b.clone());
        assert_eq!(enumerate_type_exprs(&stlc(), 2), vec![b.clone(), bb.clone()]);
        assert_eq!(
            enumerate_type_exprs(&stlc(), 3),
            vec![
                b.clone(),
                bb.clone(),
                arrow(b.clone(), bb.clone()),
                arrow(bb.clone(), b),
                arrow(bb.clone(), bb),
            ]
        );
    }

    #[test]
    fn depth_and_concreteness() {
        let t = arrow(TypeExpr::meta("s"), TypeExpr::base("base"));
        assert_eq!(t.depth(), 2);
        assert!(!t.is_concrete());
        assert_eq!(t.to_string(), "(arrow s base)");
    }

    #[test]
    fn check_reports_arity_mismatch() {
        let t = TypeExpr::app("arrow", vec![TypeExpr::base("base")]);
        assert!(matches!(
            stlc().check(&t, &[]),
            Err(TypeError::ArityMismatch { expected: 2, found: 1, .. })
        ));
    }

    #[test]
    fn fold_naturals() {
        let nat = TypeUniverse::generated(&[("z", 0), ("s", 1)]);
        let alg = TypeAlgebra::new().op("z", 0, |_| 0u32).op("s", 1, |x| x[0] + 1);
        let two = TypeExpr::app("s", vec![TypeExpr::app("s", vec![TypeExpr::base("z")])]);
        assert_eq!(fold_type_algebra(&nat, &alg, &two), Ok(2));
    }

    #[test]
    fn fold_reports_missing_operation() {
        let alg = TypeAlgebra::new().op("base", 0, |_| 1usize);
        assert_eq!(
            fold_type_algebra(&stlc(), &alg, &TypeExpr::base("base")),
            Err(FoldError::MissingOperation("arrow".into()))
        );
    }

    #[test]
    fn fold_size_algebra() {
        let alg = TypeAlgebra::new()
            .op("base", 0, |_| 1usize)
            .op("arrow", 2, |xs| 1 + xs.iter().sum::<usize>());
        let b = TypeExpr::base("base");
        assert_eq!(fold_type_algebra(&stlc(), &alg, &arrow(b.clone(), b)), Ok(3));
    }
}
