//! The full law suite for a signature, and the negative controls.

use crate::algebra::{
    check_module_hom, check_module_laws, check_monad_hom, check_monad_laws, constant_module, derived_module,
    derived_module_list, fibre_module, induced_module_hom, pb_iso_checks, product_module, pullback_module,
    taut_module, terminal_module, Budget, CheckSpace, LawReport, MonadHom, Status, Witness,
};
use crate::catalog::{
    broken_monad_control, context_dependent_app, corrupted_representation, exception_candidate,
    exception_representation, identity_candidate, inclusion_candidate, inclusion_representation, swapped_candidate,
};
use crate::representation::{
    abs_module_hom, abs_monad_hom, check_init_monad_hom, check_representation, commute_check, init_morphism,
    uniqueness_check, RepError, Representation, SyntaxRepresentation,
};
use crate::signature::Signature;
use crate::types::TypeExpr;

/// Budgets for one suite run. Uniqueness is checked one node further than
/// the other laws.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteBudget {
    pub laws: Budget,
    pub unique_nodes: usize,
}

impl From<Budget> for SuiteBudget {
    fn from(laws: Budget) -> Self {
        SuiteBudget { laws, unique_nodes: laws.max_nodes + 1 }
    }
}

impl SuiteBudget {
    fn unique(&self) -> Budget {
        Budget { max_nodes: self.unique_nodes, ..self.laws }
    }
}

/// Two object types to build fibres and derivations at: the first and the
/// last type of depth one.
fn probe_types(space: &CheckSpace) -> (TypeExpr, TypeExpr) {
    let shallow: Vec<&TypeExpr> = space.types.iter().filter(|t| t.depth() <= 1).collect();
    let first = shallow.first().copied().or(space.types.first()).cloned().expect("universe is non-empty");
    let last = shallow.last().map(|t| (*t).clone()).unwrap_or_else(|| first.clone());
    (first, last)
}

fn has_plain_abs(sig: &Signature) -> bool {
    sig.schema("abs").is_some_and(|s| s.metavars.is_empty()) && sig.schema("app").is_some_and(|s| s.metavars.is_empty())
}

/// The three Kleisli laws for the syntax monad of `syntax`.
pub fn monad_suite(syntax: &SyntaxRepresentation, space: &CheckSpace) -> Vec<LawReport> {
    check_monad_laws(syntax.monad(), space)
}

/// Module laws for every construction over the syntax monad and over the
/// exception monad, and the module-morphism law for every constructor.
pub fn module_suite(syntax: &SyntaxRepresentation, space: &CheckSpace) -> Vec<LawReport> {
    let p = syntax.monad();
    let (u, w) = probe_types(space);
    let mut out = Vec::new();
    out.extend(check_module_laws(&taut_module(p), space));
    out.extend(check_module_laws(&fibre_module(taut_module(p), u.clone()), space));
    out.extend(check_module_laws(&derived_module(taut_module(p), u.clone()), space));
    out.extend(check_module_laws(&derived_module_list(taut_module(p), vec![u.clone(), w.clone()]), space));
    out.extend(check_module_laws(
        &product_module(fibre_module(taut_module(p), u.clone()), fibre_module(taut_module(p), w.clone())),
        space,
    ));
    let id = MonadHom::identity(p);
    out.extend(check_module_laws(&pullback_module(&id, taut_module(p)), space));
    out.extend(check_module_laws(&constant_module(p, vec![0u8, 1, 2]), space));
    out.extend(check_module_laws(&terminal_module(p), space));

    let exc = exception_representation(syntax.signature().clone());
    let e = exc.monad();
    out.extend(check_module_laws(&taut_module(e), space));
    out.extend(check_module_laws(&derived_module(taut_module(e), u.clone()), space));
    let init = init_morphism(syntax, &exc);
    out.extend(check_module_laws(&pullback_module(&init.hom, taut_module(e)), space));
    out.extend(check_module_laws(&pullback_module(&init.hom, fibre_module(taut_module(e), u.clone())), space));

    out.extend(check_representation(syntax, space));
    out.push(check_module_hom(&induced_module_hom(&id), space));
    out.push(check_module_hom(&induced_module_hom(&init.hom), space));
    if has_plain_abs(syntax.signature()) {
        out.push(check_module_hom(&abs_module_hom(p, u), space));
    }
    out
}

/// Pullback commutes with products, derivation and fibres, along the
/// identity of the syntax and along the fold into the exception monad.
pub fn pb_suite(syntax: &SyntaxRepresentation, space: &CheckSpace) -> Vec<LawReport> {
    let p = syntax.monad();
    let (u, _) = probe_types(space);
    let id = MonadHom::identity(p);
    let mut out = pb_iso_checks(&id, &taut_module(p), &taut_module(p), &u, space);
    let exc = exception_representation(syntax.signature().clone());
    let init = init_morphism(syntax, &exc);
    let e = exc.monad();
    out.extend(pb_iso_checks(&init.hom, &taut_module(e), &derived_module(taut_module(e), u.clone()), &u, space));
    out
}

fn precondition(law: String, e: RepError) -> LawReport {
    match e {
        RepError::PreconditionFailed(r) => r,
        other => LawReport {
            law,
            status: Status::Fail(Witness { inputs: vec![("error".into(), other.to_string())], lhs: "-".into(), rhs: "-".into() }),
            inputs_checked: 0,
        },
    }
}

fn commute_reports<R: Representation, S: Representation>(
    m: &crate::representation::RepMorphism<'_, R, S>,
    space: &CheckSpace,
) -> Vec<LawReport> {
    commute_check(m, space).unwrap_or_else(|e| vec![precondition(format!("{}/commute", m.name()), e)])
}

/// The fold into the exception representation: its monad and constructor
/// laws, the monad-morphism lemmas, commutation, and agreement with the
/// hand-written candidate.
pub fn exception_suite(syntax: &SyntaxRepresentation, budget: &SuiteBudget) -> Vec<LawReport> {
    let sig = syntax.signature();
    let space = CheckSpace::new(&sig.universe, &budget.laws);
    let exc = exception_representation(sig.clone());
    let mut out = check_monad_laws(exc.monad(), &space);
    out.extend(check_representation(&exc, &space));
    out.extend(check_init_monad_hom(syntax, &exc, &space));
    let init = init_morphism(syntax, &exc);
    out.extend(check_monad_hom(&init.hom, &space));
    out.extend(commute_reports(&init, &space));
    let cand = exception_candidate(syntax, &exc);
    let unique_space = CheckSpace::new(&sig.universe, &budget.unique());
    out.push(uniqueness_check(&exc, &cand, &space, &unique_space).unwrap_or_else(|e| precondition(cand.name().into(), e)));
    out
}

/// The fold into the syntax of `superset` (the signature itself when
/// absent), checked like `exception_suite`.
pub fn inclusion_suite(
    syntax: &SyntaxRepresentation,
    superset: Option<&Signature>,
    budget: &SuiteBudget,
) -> Vec<LawReport> {
    let sig = syntax.signature();
    let sup = superset.cloned().unwrap_or_else(|| sig.clone());
    let inc = match inclusion_representation(sig.clone(), sup) {
        Ok(inc) => inc,
        Err(e) => return vec![precondition(format!("inclusion({})", sig.name), e)],
    };
    let space = CheckSpace::new(&sig.universe, &budget.laws);
    let mut out = check_representation(&inc, &space);
    out.extend(check_init_monad_hom(syntax, &inc, &space));
    let init = init_morphism(syntax, &inc);
    out.extend(check_monad_hom(&init.hom, &space));
    out.extend(commute_reports(&init, &space));
    let cand = inclusion_candidate(syntax, &inc);
    let unique_space = CheckSpace::new(&sig.universe, &budget.unique());
    out.push(uniqueness_check(&inc, &cand, &space, &unique_space).unwrap_or_else(|e| precondition(cand.name().into(), e)));
    out
}

/// The fold from the syntax into itself is the identity.
pub fn self_fold_suite(syntax: &SyntaxRepresentation, budget: &SuiteBudget) -> Vec<LawReport> {
    let sig = syntax.signature();
    let space = CheckSpace::new(&sig.universe, &budget.laws);
    let mut out = check_init_monad_hom(syntax, syntax, &space);
    let id = identity_candidate(syntax, syntax);
    out.extend(commute_reports(&id, &space));
    let unique_space = CheckSpace::new(&sig.universe, &budget.unique());
    out.push(uniqueness_check(syntax, &id, &space, &unique_space).unwrap_or_else(|e| precondition(id.name().into(), e)));
    out
}

/// Which parts of the suite to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Section {
    All,
    Syntax,
    Exception,
    Inclusion,
}

/// The selected checks for one signature.
pub fn run_suite(sig: &Signature, superset: Option<&Signature>, budget: &SuiteBudget, section: Section) -> Vec<LawReport> {
    let syntax = crate::representation::syntax_representation(sig.clone());
    let space = CheckSpace::new(&sig.universe, &budget.laws);
    let mut out = Vec::new();
    if matches!(section, Section::All | Section::Syntax) {
        out.extend(monad_suite(&syntax, &space));
        out.extend(module_suite(&syntax, &space));
        out.extend(pb_suite(&syntax, &space));
        out.extend(self_fold_suite(&syntax, budget));
    }
    if matches!(section, Section::All | Section::Exception) {
        out.extend(exception_suite(&syntax, budget));
    }
    if matches!(section, Section::All | Section::Inclusion) {
        out.extend(inclusion_suite(&syntax, superset, budget));
    }
    out
}

/// Every positive check for one signature.
pub fn full_suite(sig: &Signature, superset: Option<&Signature>, budget: &SuiteBudget) -> Vec<LawReport> {
    run_suite(sig, superset, budget, Section::All)
}

/// Negative controls available from the command line.
pub const CONTROL_NAMES: &[&str] = &["broken-monad", "corrupted-rep", "const-app", "swapped-candidate", "abs-monad-hom"];

/// Run one negative control over `sig` (which must have plain `app` and
/// `abs`). Each is expected to report at least one failure.
pub fn control_suite(name: &str, sig: &Signature, budget: &Budget) -> Option<Vec<LawReport>> {
    let space = CheckSpace::new(&sig.universe, budget);
    let syntax = crate::representation::syntax_representation(sig.clone());
    let reports = match name {
        "broken-monad" => check_monad_laws(&broken_monad_control(sig.clone()), &space),
        "corrupted-rep" => {
            let bad = corrupted_representation(sig.clone());
            let id = identity_candidate(&syntax, &bad);
            commute_reports(&id, &space)
        }
        "const-app" => vec![check_module_hom(&context_dependent_app(syntax.monad()), &space)],
        "swapped-candidate" => {
            let cand = swapped_candidate(&syntax);
            vec![uniqueness_check(&syntax, &cand, &space, &space).unwrap_or_else(|e| precondition(cand.name().into(), e))]
        }
        "abs-monad-hom" => {
            let lc = syntax.monad();
            let (u, _) = probe_types(&space);
            let star = crate::algebra::DerivedMonad::new(lc, u);
            let abs = abs_monad_hom(lc, &star);
            check_monad_hom(&abs, &space)
        }
        _ => return None,
    };
    Some(reports)
}

/// Whether printed terms in `rendered` contain a node of a binding schema.
pub fn mentions_binder(rendered: &str, sig: &Signature) -> bool {
    sig.schemas
        .iter()
        .filter(|s| s.args.iter().any(|a| !a.binders.is_empty()))
        .any(|s| rendered.contains(&format!("(con {}", s.name)))
}
