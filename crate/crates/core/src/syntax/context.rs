use std::fmt;
use std::sync::Arc;

use crate::types::TypeExpr;

/// A finite typed family of variables, as a telescope of object types.
/// Position 0 is the most recently bound variable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Context(Arc<[TypeExpr]>);

/// A variable: a global de Bruijn position into a context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarRef(pub usize);

impl Context {
    pub fn new(telescope: Vec<TypeExpr>) -> Self {
        Context(telescope.into())
    }

    pub fn empty() -> Self {
        Context::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: VarRef) -> Option<&TypeExpr> {
        self.0.get(v.0)
    }

    pub fn telescope(&self) -> &[TypeExpr] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &TypeExpr> {
        self.0.iter()
    }

    /// The fibre `V_t`: variables of type `t`, in index order.
    pub fn vars_of_type<'a>(&'a self, t: &'a TypeExpr) -> impl Iterator<Item = VarRef> + 'a {
        self.0
            .iter()
            .enumerate()
            .filter(move |(_, s)| *s == t)
            .map(|(i, _)| VarRef(i))
    }

    pub fn extend(&self, u: &TypeExpr) -> Context {
        ctx_extend(u, self)
    }

    pub fn pow(&self, binders: &[TypeExpr]) -> Context {
        ctx_pow(binders, self)
    }
}

/// Add a fresh variable of type `u`; it becomes index 0.
pub fn ctx_extend(u: &TypeExpr, v: &Context) -> Context {
    let mut t = Vec::with_capacity(v.len() + 1);
    t.push(u.clone());
    t.extend(v.iter().cloned());
    Context::new(t)
}

/// Add one fresh variable per binder, first binder first, so that the last
/// binder ends up at index 0.
pub fn ctx_pow(binders: &[TypeExpr], v: &Context) -> Context {
    match binders.split_first() {
        None => v.clone(),
        Some((b, bs)) => ctx_pow(bs, &ctx_extend(b, v)),
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for VarRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
