//! Monads on typed families, modules over them, their morphisms, and
//! exhaustive law checkers.

mod hom;
mod laws;
mod module;
mod monad;
mod syntax_monad;

pub use hom::{induced_module_hom, ModuleHom, MonadHom};
pub use laws::{
    check_module_hom, check_module_laws, check_monad_hom, check_monad_laws, check_same_module, pb_iso_checks,
    Budget, CheckSpace, LawReport, MapTable, Status, Witness,
};
pub(crate) use laws::{ctx_entry, run_law};
pub use module::{
    constant_module, derived_module, derived_module_list, fibre_module, product_module, pullback_module,
    taut_module, terminal_module, BaseValue, Constant, Derived, DerivedList, Fibre, Module, Product, Pullback,
    Tautological,
};
pub use monad::{
    assignments, kleisli_compose, lift, lshift_map, render_assignment, shift_map, unit_map, Bound, DerivedMonad,
    Monad,
};
pub use syntax_monad::SyntaxMonad;
