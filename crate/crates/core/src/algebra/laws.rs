//! Exhaustive law checking over finite budgets.

use std::fmt;

use super::hom::{ModuleHom, MonadHom};
use super::module::{derived_module, fibre_module, product_module, pullback_module, Module};
use super::monad::{assignments, kleisli_compose, render_assignment, unit_map, Bound, Monad};
use crate::syntax::{print_context, Assignment, Context, VarRef};
use crate::types::{enumerate_type_exprs, TypeExpr, TypeUniverse};

/// User-facing enumeration bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest term (in nodes) a law is checked on.
    pub max_nodes: usize,
    /// Largest image (in nodes) of an enumerated assignment.
    pub map_nodes: usize,
    /// Longest context.
    pub ctx_len: usize,
    /// Depth of the object types terms are drawn at, and of metavariable instances.
    pub ty_depth: usize,
    /// Depth of the object types allowed in contexts.
    pub ctx_ty_depth: usize,
}

impl Budget {
    /// Terms of at most 3 nodes, maps built from terms of at most 2 nodes,
    /// contexts of at most 2 entries, types of depth at most 2.
    pub const STANDARD: Budget = Budget { max_nodes: 3, map_nodes: 2, ctx_len: 2, ty_depth: 2, ctx_ty_depth: 2 };
}

impl Default for Budget {
    fn default() -> Self {
        Budget::STANDARD
    }
}

/// A budget materialized over a type universe.
#[derive(Clone, Debug)]
pub struct CheckSpace {
    pub types: Vec<TypeExpr>,
    pub contexts: Vec<Context>,
    pub terms: Bound,
    pub maps: Bound,
}

impl CheckSpace {
    pub fn new(universe: &TypeUniverse, budget: &Budget) -> Self {
        let pool = enumerate_type_exprs(universe, budget.ctx_ty_depth);
        let mut contexts = vec![Context::empty()];
        let mut layer: Vec<Vec<TypeExpr>> = vec![Vec::new()];
        for _ in 0..budget.ctx_len {
            layer = layer
                .into_iter()
                .flat_map(|prefix| {
                    pool.iter().map(move |t| {
                        let mut next = prefix.clone();
                        next.push(t.clone());
                        next
                    })
                })
                .collect();
            contexts.extend(layer.iter().cloned().map(Context::new));
        }
        CheckSpace {
            types: enumerate_type_exprs(universe, budget.ty_depth),
            contexts,
            terms: Bound { nodes: budget.max_nodes, ty_depth: budget.ty_depth },
            maps: Bound { nodes: budget.map_nodes, ty_depth: budget.ty_depth },
        }
    }

    /// The sorts a module's carrier is checked at.
    pub fn sorts(&self, typed: bool) -> Vec<Option<&TypeExpr>> {
        if typed {
            self.types.iter().map(Some).collect()
        } else {
            vec![None]
        }
    }

    /// Every element of a typed family over `ctx`, across all checked types.
    pub fn monad_elements<P: Monad>(&self, p: &P, ctx: &Context) -> Vec<P::Value> {
        self.types.iter().flat_map(|t| p.elements(ctx, t, self.terms)).collect()
    }

    pub fn module_elements<M: Module>(&self, m: &M, ctx: &Context) -> Vec<M::Value> {
        self.sorts(m.is_typed())
            .into_iter()
            .flat_map(|s| m.elements(ctx, s, self.terms))
            .collect()
    }
}

/// Enumerated assignments for every pair of checked contexts, `[source][target]`.
pub struct MapTable<V> {
    maps: Vec<Vec<Vec<Assignment<V>>>>,
}

impl<V: Clone> MapTable<V> {
    pub fn new<P: Monad<Value = V>>(p: &P, space: &CheckSpace) -> Self {
        let maps = space
            .contexts
            .iter()
            .map(|v| space.contexts.iter().map(|w| assignments(p, v, w, space.maps)).collect())
            .collect();
        MapTable { maps }
    }

    pub fn get(&self, source: usize, target: usize) -> &[Assignment<V>] {
        &self.maps[source][target]
    }

    pub fn from(&self, source: usize) -> impl Iterator<Item = (usize, &Assignment<V>)> {
        self.maps[source]
            .iter()
            .enumerate()
            .flat_map(|(w, fs)| fs.iter().map(move |f| (w, f)))
    }
}

/// The inputs on which a law failed, with both sides rendered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub inputs: Vec<(String, String)>,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    pub fn input(&self, key: &str) -> Option<&str> {
        self.inputs.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail(Witness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub law: String,
    pub status: Status,
    pub inputs_checked: usize,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.status {
            Status::Pass => None,
            Status::Fail(w) => Some(w),
        }
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            Status::Pass => write!(f, "LAW {} PASS n={}", self.law, self.inputs_checked),
            Status::Fail(w) => {
                let inputs: Vec<String> = w.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
                write!(
                    f,
                    "LAW {} FAIL witness={{{}}} lhs={} rhs={}",
                    self.law,
                    inputs.join("; "),
                    w.lhs,
                    w.rhs
                )
            }
        }
    }
}

/// Counts law instances and stops at the first failure.
pub(crate) struct Probe {
    count: usize,
}

impl Probe {
    pub(crate) fn check(&mut self, ok: bool, witness: impl FnOnce() -> Witness) -> Result<(), Witness> {
        self.count += 1;
        if ok {
            Ok(())
        } else {
            Err(witness())
        }
    }
}

pub(crate) fn run_law(law: String, body: impl FnOnce(&mut Probe) -> Result<(), Witness>) -> LawReport {
    let mut probe = Probe { count: 0 };
    let status = match body(&mut probe) {
        Ok(()) => Status::Pass,
        Err(w) => Status::Fail(w),
    };
    LawReport { law, status, inputs_checked: probe.count }
}

pub(crate) fn ctx_entry(key: &str, ctx: &Context) -> (String, String) {
    (key.to_string(), format!("[{}]", print_context(ctx)))
}

/// The three Kleisli-triple laws: `eta_kl` (η ; σ(f) = f), `kl_eta`
/// (σ(η) = id) and `dist` (σ(f) ; σ(g) = σ(f ; σ(g))).
pub fn check_monad_laws<P: Monad>(p: &P, space: &CheckSpace) -> Vec<LawReport> {
    let name = p.name();
    let maps = MapTable::new(p, space);
    let show = |x: &P::Value| p.render(x);
    let show_map = |f: &Assignment<P::Value>| render_assignment(f, |x| p.render(x));

    let eta_kl = run_law(format!("{name}/eta_kl"), |probe| {
        for (vi, v) in space.contexts.iter().enumerate() {
            for (_, f) in maps.from(vi) {
                for i in 0..v.len() {
                    let lhs = p.kleisli(f, &p.unit(v, VarRef(i)));
                    let rhs = f.image(VarRef(i));
                    probe.check(&lhs == rhs, || Witness {
                        inputs: vec![
                            ctx_entry("V", v),
                            ("v".into(), i.to_string()),
                            ctx_entry("W", f.target()),
                            ("f".into(), show_map(f)),
                        ],
                        lhs: show(&lhs),
                        rhs: show(rhs),
                    })?;
                }
            }
        }
        Ok(())
    });

    let kl_eta = run_law(format!("{name}/kl_eta"), |probe| {
        for v in &space.contexts {
            let xs = space.monad_elements(p, v);
            let lhss = p.kleisli_all(&unit_map(p, v), &xs);
            for (x, lhs) in xs.into_iter().zip(lhss) {
                probe.check(lhs == x, || Witness {
                    inputs: vec![ctx_entry("V", v), ("x".into(), show(&x))],
                    lhs: show(&lhs),
                    rhs: show(&x),
                })?;
            }
        }
        Ok(())
    });

    let dist = run_law(format!("{name}/dist"), |probe| {
        for (vi, v) in space.contexts.iter().enumerate() {
            let xs = space.monad_elements(p, v);
            for (wi, f) in maps.from(vi) {
                let fxs = p.kleisli_all(f, &xs);
                for (_, g) in maps.from(wi) {
                    let lhss = p.kleisli_all(g, &fxs);
                    let rhss = p.kleisli_all(&kleisli_compose(p, f, g), &xs);
                    for ((x, lhs), rhs) in xs.iter().zip(lhss).zip(rhss) {
                        probe.check(lhs == rhs, || Witness {
                            inputs: vec![
                                ctx_entry("V", v),
                                ("x".into(), show(x)),
                                ctx_entry("W", f.target()),
                                ("f".into(), show_map(f)),
                                ctx_entry("X", g.target()),
                                ("g".into(), show_map(g)),
                            ],
                            lhs: show(&lhs),
                            rhs: show(&rhs),
                        })?;
                    }
                }
            }
        }
        Ok(())
    });

    vec![eta_kl, kl_eta, dist]
}

/// `monad_hom_weta` (η ; τ = η) and `monad_hom_kl`
/// (σ_P(f) ; τ = τ ; σ_Q(f ; τ)).
pub fn check_monad_hom<P: Monad, Q: Monad>(h: &MonadHom<'_, P, Q>, space: &CheckSpace) -> Vec<LawReport> {
    let p = h.source();
    let q = h.target();
    let maps = MapTable::new(p, space);

    let weta = run_law(format!("{}/monad_hom_weta", h.name()), |probe| {
        for v in &space.contexts {
            for i in 0..v.len() {
                let lhs = h.apply(v, &p.unit(v, VarRef(i)));
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

    let kl = run_law(format!("{}/monad_hom_kl", h.name()), |probe| {
        for (vi, v) in space.contexts.iter().enumerate() {
            let xs = space.monad_elements(p, v);
            let txs: Vec<Q::Value> = xs.iter().map(|x| h.apply(v, x)).collect();
            for (_, f) in maps.from(vi) {
                let w = f.target();
                let fxs = p.kleisli_all(f, &xs);
                let rhss = q.kleisli_all(&h.map_assignment(f), &txs);
                for ((x, fx), rhs) in xs.iter().zip(&fxs).zip(rhss) {
                    let lhs = h.apply(w, fx);
                    probe.check(lhs == rhs, || Witness {
                        inputs: vec![
                            ctx_entry("V", v),
                            ("x".into(), p.render(x)),
                            ctx_entry("W", w),
                            ("f".into(), render_assignment(f, |y| p.render(y))),
                        ],
                        lhs: q.render(&lhs),
                        rhs: q.render(&rhs),
                    })?;
                }
            }
        }
        Ok(())
    });

    vec![weta, kl]
}

/// `mkl_weta` (ς(η) = id) and `mkl_mkl` (ς(f) ; ς(g) = ς(f ; σ(g))).
pub fn check_module_laws<M: Module>(m: &M, space: &CheckSpace) -> Vec<LawReport> {
    let name = m.name();
    let p = m.base();
    let maps = MapTable::new(p, space);
    let show_map = |f: &Assignment<<M::Base as Monad>::Value>| render_assignment(f, |x| p.render(x));

    let weta = run_law(format!("{name}/mkl_weta"), |probe| {
        for v in &space.contexts {
            let xs = space.module_elements(m, v);
            let lhss = m.msubst_all(&unit_map(p, v), &xs);
            for (x, lhs) in xs.into_iter().zip(lhss) {
                probe.check(lhs == x, || Witness {
                    inputs: vec![ctx_entry("V", v), ("x".into(), m.render(&x))],
                    lhs: m.render(&lhs),
                    rhs: m.render(&x),
                })?;
            }
        }
        Ok(())
    });

    let mkl = run_law(format!("{name}/mkl_mkl"), |probe| {
        for (vi, v) in space.contexts.iter().enumerate() {
            let xs = space.module_elements(m, v);
            for (wi, f) in maps.from(vi) {
                let fxs = m.msubst_all(f, &xs);
                for (_, g) in maps.from(wi) {
                    let lhss = m.msubst_all(g, &fxs);
                    let rhss = m.msubst_all(&kleisli_compose(p, f, g), &xs);
                    for ((x, lhs), rhs) in xs.iter().zip(lhss).zip(rhss) {
                        probe.check(lhs == rhs, || Witness {
                            inputs: vec![
                                ctx_entry("V", v),
                                ("x".into(), m.render(x)),
                                ctx_entry("W", f.target()),
                                ("f".into(), show_map(f)),
                                ctx_entry("X", g.target()),
                                ("g".into(), show_map(g)),
                            ],
                            lhs: m.render(&lhs),
                            rhs: m.render(&rhs),
                        })?;
                    }
                }
            }
        }
        Ok(())
    });

    vec![weta, mkl]
}

/// `ρ ; ς_N(f) = ς_M(f) ; ρ` for every checked input.
pub fn check_module_hom<M: Module, N: Module<Base = M::Base>>(
    h: &ModuleHom<'_, M, N>,
    space: &CheckSpace,
) -> LawReport {
    let src = h.source();
    let tgt = h.target();
    let p = src.base();
    let maps = MapTable::new(p, space);
    run_law(format!("{}/mod_hom_mkl", h.name()), |probe| {
        for (vi, v) in space.contexts.iter().enumerate() {
            let xs = space.module_elements(src, v);
            let rxs: Vec<N::Value> = xs.iter().map(|x| h.apply(v, x)).collect();
            for (_, f) in maps.from(vi) {
                let w = f.target();
                let lhss = tgt.msubst_all(f, &rxs);
                let fxs = src.msubst_all(f, &xs);
                for ((x, lhs), fx) in xs.iter().zip(lhss).zip(&fxs) {
                    let rhs = h.apply(w, fx);
                    probe.check(lhs == rhs, || Witness {
                        inputs: vec![
                            ctx_entry("V", v),
                            ("x".into(), src.render(x)),
                            ctx_entry("W", w),
                            ("f".into(), render_assignment(f, |y| p.render(y))),
                        ],
                        lhs: tgt.render(&lhs),
                        rhs: tgt.render(&rhs),
                    })?;
                }
            }
        }
        Ok(())
    })
}

/// Two modules over the same monad with identical carriers and identical
/// substitution, checked pointwise.
pub fn check_same_module<A, B>(law: String, a: &A, b: &B, space: &CheckSpace) -> LawReport
where
    A: Module,
    B: Module<Base = A::Base, Value = A::Value>,
{
    let p = a.base();
    let maps = MapTable::new(p, space);
    run_law(law, |probe| {
        for (vi, v) in space.contexts.iter().enumerate() {
            for sort in space.sorts(a.is_typed()) {
                let xa = a.elements(v, sort, space.terms);
                let xb = b.elements(v, sort, space.terms);
                probe.check(xa == xb && a.is_typed() == b.is_typed(), || Witness {
                    inputs: vec![ctx_entry("V", v), ("sort".into(), sort.map_or("-".into(), |t| t.to_string()))],
                    lhs: format!("{} elements", xa.len()),
                    rhs: format!("{} elements", xb.len()),
                })?;
                for (_, f) in maps.from(vi) {
                    let lhss = a.msubst_all(f, &xa);
                    let rhss = b.msubst_all(f, &xa);
                    for ((x, lhs), rhs) in xa.iter().zip(lhss).zip(rhss) {
                        probe.check(lhs == rhs, || Witness {
                            inputs: vec![
                                ctx_entry("V", v),
                                ("x".into(), a.render(x)),
                                ctx_entry("W", f.target()),
                                ("f".into(), render_assignment(f, |y| p.render(y))),
                            ],
                            lhs: a.render(&lhs),
                            rhs: b.render(&rhs),
                        })?;
                    }
                }
            }
        }
        Ok(())
    })
}

/// Pullback commutes with products, derivation and fibres: the carriers
/// agree and the substitutions agree pointwise, so the comparison maps are
/// identities.
pub fn pb_iso_checks<P, Q, M, N>(
    h: &MonadHom<'_, P, Q>,
    m: &M,
    n: &N,
    u: &TypeExpr,
    space: &CheckSpace,
) -> Vec<LawReport>
where
    P: Monad,
    Q: Monad,
    M: Module<Base = Q> + Clone,
    N: Module<Base = Q> + Clone,
{
    let subject = format!("{}*[{},{}]", h.name(), m.name(), n.name());
    let mut reports = vec![check_same_module(
        format!("{subject}/pb_prod"),
        &pullback_module(h, product_module(m.clone(), n.clone())),
        &product_module(pullback_module(h, m.clone()), pullback_module(h, n.clone())),
        space,
    )];
    reports.push(check_same_module(
        format!("{subject}/pb_der_{u}"),
        &pullback_module(h, derived_module(m.clone(), u.clone())),
        &derived_module(pullback_module(h, m.clone()), u.clone()),
        space,
    ));
    if m.is_typed() {
        reports.push(check_same_module(
            format!("{subject}/pb_fib_{u}"),
            &pullback_module(h, fibre_module(m.clone(), u.clone())),
            &fibre_module(pullback_module(h, m.clone()), u.clone()),
            space,
        ));
    }
    reports
}
