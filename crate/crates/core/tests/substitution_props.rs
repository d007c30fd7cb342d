//! Substitution, renaming and printing on terms larger than the exhaustive
//! budget, sampled from enumerations.

mod common;

use std::sync::OnceLock;

use initsyn::catalog::{pcf_signature, stlc_signature, ulc_signature};
use initsyn::signature::Signature;
use initsyn::syntax::{
    compose, enumerate_terms, parse_context, parse_term, print_term, rename, subst, type_of, weaken, Context,
    SubstMap, Term, VarMap,
};
use initsyn::types::TypeExpr;
use proptest::prelude::*;
use proptest::sample::Index;

use common::named::subst_via_names;

/// A signature with a source context `v`, a target context `w`, terms over
/// `v` and, per type of `v` and `w`, candidate images over `w`.
struct Fixture {
    sig: Signature,
    v: Context,
    w: Context,
    terms: Vec<Term>,
    images_for_v: Vec<Vec<Term>>,
    images_for_w: Vec<Vec<Term>>,
}

impl Fixture {
    fn new(sig: Signature, v: &str, w: &str, types: &[&str], term_nodes: usize) -> Self {
        let v = parse_context(&sig.universe, v).unwrap();
        let w = parse_context(&sig.universe, w).unwrap();
        let mut terms = Vec::new();
        for t in types {
            let t = initsyn::syntax::parse_type(&sig.universe, t).unwrap();
            terms.extend(enumerate_terms(&sig, &v, &t, term_nodes, 2));
        }
        let images = |ctx: &Context| -> Vec<Vec<Term>> {
            ctx.iter().map(|t: &TypeExpr| enumerate_terms(&sig, &w, t, 3, 1)).collect()
        };
        let images_for_v = images(&v);
        let images_for_w = images(&w);
        assert!(images_for_v.iter().chain(&images_for_w).all(|p| !p.is_empty()));
        Fixture { terms, images_for_v, images_for_w, sig, v, w }
    }

    fn term(&self, i: &Index) -> &Term {
        i.get(&self.terms)
    }

    fn map(&self, source: &Context, pools: &[Vec<Term>], picks: &[Index]) -> SubstMap {
        let images = pools.iter().zip(picks).map(|(p, i)| i.get(p).clone()).collect();
        SubstMap::new(&self.sig, source.clone(), self.w.clone(), images).unwrap()
    }

    fn f(&self, picks: &[Index]) -> SubstMap {
        self.map(&self.v, &self.images_for_v, picks)
    }

    fn g(&self, picks: &[Index]) -> SubstMap {
        self.map(&self.w, &self.images_for_w, picks)
    }
}

fn fixtures() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        vec![
            Fixture::new(ulc_signature(), "unit, unit", "unit, unit", &["unit"], 6),
            Fixture::new(
                stlc_signature(),
                "base, (arrow base base)",
                "(arrow base base), base, base",
                &["base", "(arrow base base)"],
                5,
            ),
            Fixture::new(pcf_signature(), "nat, bool", "bool, nat, nat", &["nat", "bool"], 4),
        ]
    })
}

fn picks() -> impl Strategy<Value = (usize, Index, Vec<Index>, Vec<Index>)> {
    (0..3usize, any::<Index>(), prop::collection::vec(any::<Index>(), 3), prop::collection::vec(any::<Index>(), 3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn substitution_agrees_with_named_oracle((k, x, f, _) in picks()) {
        let fx = &fixtures()[k];
        let (x, f) = (fx.term(&x), fx.f(&f));
        let want = subst_via_names(&fx.sig, &fx.w, f.images(), x);
        prop_assert_eq!(print_term(&subst(&f, x)), print_term(&want));
    }

    #[test]
    fn substitution_preserves_types((k, x, f, _) in picks()) {
        let fx = &fixtures()[k];
        let (x, f) = (fx.term(&x), fx.f(&f));
        let before = type_of(&fx.sig, &fx.v, x).unwrap();
        prop_assert_eq!(type_of(&fx.sig, &fx.w, &subst(&f, x)), Ok(before));
    }

    #[test]
    fn unit_is_neutral((k, x, _, _) in picks()) {
        let fx = &fixtures()[k];
        let x = fx.term(&x);
        prop_assert_eq!(&subst(&SubstMap::eta(&fx.v), x), x);
    }

    #[test]
    fn substitution_is_associative((k, x, f, g) in picks()) {
        let fx = &fixtures()[k];
        let (x, f, g) = (fx.term(&x), fx.f(&f), fx.g(&g));
        prop_assert_eq!(subst(&g, &subst(&f, x)), subst(&compose(&f, &g), x));
    }

    #[test]
    fn renaming_is_substitution_by_variables((k, x, _, r) in picks()) {
        let fx = &fixtures()[k];
        let x = fx.term(&x);
        let all = VarMap::all(&fx.v, &fx.w);
        let r = r[0].get(&all);
        prop_assert_eq!(rename(r, x), subst(&r.to_subst(), x));
    }

    #[test]
    fn weakening_is_renaming((k, x, _, _) in picks()) {
        let fx = &fixtures()[k];
        let x = fx.term(&x);
        let u = fx.v.telescope()[0].clone();
        prop_assert_eq!(weaken(1, x), rename(&VarMap::weakening(&u, &fx.v), x));
    }

    #[test]
    fn print_then_parse_is_identity((k, x, _, _) in picks()) {
        let fx = &fixtures()[k];
        let x = fx.term(&x);
        let text = print_term(x);
        let back = parse_term(&fx.sig, &fx.v, &text).unwrap();
        prop_assert_eq!(&back, x);
        prop_assert_eq!(print_term(&back), text);
    }
}
