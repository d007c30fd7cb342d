//! The initial syntax of a signature: intrinsically typed de Bruijn terms
//! over finite contexts, with renaming and substitution.

mod context;
mod enumerate;
mod sexpr;
mod subst;
mod term;

pub use context::{ctx_extend, ctx_pow, Context, VarRef};
pub use enumerate::{enumerate_terms, variables_of_type, TermEnumerator};
pub use sexpr::{parse_context, parse_subst_map, parse_term, parse_type, parse_typed_term, print_context};
pub use subst::{compose, lshift, rename, shift, subst, weaken, Assignment, SubstMap, VarMap};
pub use term::{check_term, mk_con, mk_var, print_term, term_eq, type_of, ConNode, Term, TermError};
