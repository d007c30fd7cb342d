//! The enumerators against brute force.

mod common;

use std::collections::BTreeSet;

use initsyn::catalog::{pcf_signature, stlc_signature, ulc_signature};
use initsyn::syntax::{enumerate_terms, parse_context, parse_type, print_term, Context};
use initsyn::types::enumerate_type_exprs;

use common::{brute_terms, brute_types};

fn listed(sig: &initsyn::signature::Signature, ctx: &Context, ty: &str, nodes: usize, depth: usize) -> BTreeSet<String> {
    let t = parse_type(&sig.universe, ty).unwrap();
    let xs = enumerate_terms(sig, ctx, &t, nodes, depth);
    let set: BTreeSet<String> = xs.iter().map(print_term).collect();
    assert_eq!(set.len(), xs.len(), "enumeration repeats a term");
    set
}

#[test]
fn closed_ulc_terms_up_to_three_nodes() {
    let sig = ulc_signature();
    let got = listed(&sig, &Context::empty(), "unit", 3, 2);
    let want: BTreeSet<String> = [
        "(con abs (var 0))",
        "(con abs (con abs (var 0)))",
        "(con abs (con abs (var 1)))",
    ]
    .into_iter()
    .map(String::from)
    .collect();
    assert_eq!(got, want);
    assert_eq!(got, brute_terms(&sig, &Context::empty(), &parse_type(&sig.universe, "unit").unwrap(), 3, 2));
}

#[test]
fn stlc_types_of_depth_three() {
    let sig = stlc_signature();
    let got: BTreeSet<String> = enumerate_type_exprs(&sig.universe, 3).iter().map(|t| t.to_string()).collect();
    assert_eq!(got.len(), 5);
    assert_eq!(got, brute_types(&sig.universe, 3));
}

#[test]
fn type_enumeration_matches_brute_force_at_each_depth() {
    for sig in [ulc_signature(), stlc_signature(), pcf_signature()] {
        for d in 1..=3 {
            let got: BTreeSet<String> = enumerate_type_exprs(&sig.universe, d).iter().map(|t| t.to_string()).collect();
            assert_eq!(got, brute_types(&sig.universe, d), "{} at depth {d}", sig.name);
        }
    }
}

#[test]
fn closed_pcf_naturals_up_to_two_nodes() {
    let sig = pcf_signature();
    let got = listed(&sig, &Context::empty(), "nat", 2, 2);
    let want: BTreeSet<String> = [
        "(con zero)",
        "(con bottom [t=nat])",
        "(con succ (con zero))",
        "(con succ (con bottom [t=nat]))",
        "(con pred (con zero))",
        "(con pred (con bottom [t=nat]))",
        "(con fix [t=nat] (con bottom [t=(arrow nat nat)]))",
    ]
    .into_iter()
    .map(String::from)
    .collect();
    assert_eq!(got, want);
}

#[test]
fn term_enumeration_matches_brute_force() {
    let cases: &[(initsyn::signature::Signature, &str, &str, usize)] = &[
        (ulc_signature(), "unit, unit", "unit", 4),
        (stlc_signature(), "base", "base", 4),
        (stlc_signature(), "base, (arrow base base)", "(arrow base base)", 3),
        (pcf_signature(), "nat", "nat", 3),
        (pcf_signature(), "bool", "(arrow nat nat)", 3),
    ];
    for (sig, ctx, ty, nodes) in cases {
        let ctx = parse_context(&sig.universe, ctx).unwrap();
        let t = parse_type(&sig.universe, ty).unwrap();
        assert_eq!(
            listed(sig, &ctx, ty, *nodes, 2),
            brute_terms(sig, &ctx, &t, *nodes, 2),
            "{} over [{ctx}] at {ty}",
            sig.name
        );
    }
}
