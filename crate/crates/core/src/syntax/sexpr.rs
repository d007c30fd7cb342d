//! Reading terms, types, and contexts from their textual forms.

use std::sync::Arc;

use super::context::Context;
use super::subst::SubstMap;
use super::term::{mk_var, Term, TermError};
use crate::signature::{Signature, SignatureError, TyArgs};
use crate::types::{Name, TypeError, TypeExpr, TypeUniverse};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Open,
    Close,
    LBracket,
    RBracket,
    Eq,
    Comma,
    Ident(String),
    Nat(usize),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, TermError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        let single = match c {
            '(' => Some(Tok::Open),
            ')' => Some(Tok::Close),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '=' => Some(Tok::Eq),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = single {
            out.push((pos, t));
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s
                .parse()
                .map_err(|_| TermError::Syntax { pos, msg: format!("number too large: {s}") })?;
            out.push((pos, Tok::Nat(n)));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().collect())));
        } else {
            return Err(TermError::Syntax { pos, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Reader<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    universe: &'a TypeUniverse,
}

enum Raw {
    Var(usize, usize),
    Con { pos: usize, name: String, tyargs: Vec<(Name, TypeExpr)>, args: Vec<Raw> },
}

impl<'a> Reader<'a> {
    fn new(text: &str, universe: &'a TypeUniverse) -> Result<Self, TermError> {
        Ok(Reader { toks: tokenize(text)?, pos: 0, end: text.chars().count() + 1, universe })
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T, TermError> {
        Err(TermError::Syntax { pos: self.here(), msg: msg.into() })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), TermError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(format!("expected {what}"))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, TermError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.fail(format!("expected {what}")),
        }
    }

    fn finish(&self) -> Result<(), TermError> {
        if self.pos < self.toks.len() {
            self.fail("trailing input")
        } else {
            Ok(())
        }
    }

    fn tyexpr(&mut self) -> Result<TypeExpr, TermError> {
        let type_err = |e: TypeError| TermError::Signature(SignatureError::Type(e));
        let (name, args) = if self.peek() == Some(&Tok::Open) {
            self.pos += 1;
            let head = self.ident("type constructor")?;
            let mut args = Vec::new();
            while self.peek() != Some(&Tok::Close) {
                if self.peek().is_none() {
                    return self.fail("unclosed `(` in type");
                }
                args.push(self.tyexpr()?);
            }
            self.pos += 1;
            (head, args)
        } else {
            (self.ident("type")?, Vec::new())
        };
        let t = TypeExpr::Con(name.into(), args);
        self.universe.check(&t, &[]).map_err(type_err)?;
        Ok(t)
    }

    fn term(&mut self) -> Result<Raw, TermError> {
        let start = self.here();
        self.expect(Tok::Open, "`(`")?;
        let head = self.ident("`var` or `con`")?;
        match head.as_str() {
            "var" => {
                let n = match self.peek() {
                    Some(Tok::Nat(n)) => *n,
                    _ => return self.fail("expected variable index"),
                };
                self.pos += 1;
                self.expect(Tok::Close, "`)`")?;
                Ok(Raw::Var(start, n))
            }
            "con" => {
                let name = self.ident("schema name")?;
                let mut tyargs = Vec::new();
                if self.peek() == Some(&Tok::LBracket) {
                    self.pos += 1;
                    loop {
                        let var = self.ident("metavariable")?;
                        self.expect(Tok::Eq, "`=`")?;
                        tyargs.push((Name::from(var), self.tyexpr()?));
                        if self.peek() == Some(&Tok::Comma) {
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                    self.expect(Tok::RBracket, "`]`")?;
                }
                let mut args = Vec::new();
                while self.peek() != Some(&Tok::Close) {
                    if self.peek().is_none() {
                        return self.fail("unclosed `(con`");
                    }
                    args.push(self.term()?);
                }
                self.pos += 1;
                Ok(Raw::Con { pos: start, name, tyargs, args })
            }
            other => {
                self.pos -= 1;
                self.fail(format!("expected `var` or `con`, found `{other}`"))
            }
        }
    }
}

fn elaborate(sig: &Signature, ctx: &Context, raw: Raw) -> Result<(Term, TypeExpr), TermError> {
    match raw {
        Raw::Var(pos, i) => mk_var(ctx, i).map_err(|e| e.at(pos)),
        Raw::Con { pos, name, tyargs, args } => {
            if sig.schema(&name).is_none() {
                return Err(TermError::UnknownSchema(name.into()).at(pos));
            }
            let instance = Arc::new(sig.instance(&name, &TyArgs(tyargs)).map_err(|e| TermError::from(e).at(pos))?);
            let shape = &instance.arity;
            if shape.args.len() != args.len() {
                return Err(TermError::ArgCount {
                    schema: instance.schema.clone(),
                    expected: shape.args.len(),
                    found: args.len(),
                }
                .at(pos));
            }
            let mut built = Vec::with_capacity(args.len());
            for (position, (slot, arg)) in shape.args.iter().zip(args).enumerate() {
                let (x, found) = elaborate(sig, &ctx.pow(&slot.binders), arg)?;
                if found != slot.result {
                    return Err(TermError::TypeMismatch {
                        schema: instance.schema.clone(),
                        position,
                        expected: slot.result.clone(),
                        found,
                    }
                    .at(pos));
                }
                built.push(x);
            }
            let output = shape.output.clone();
            Ok((Term::con_unchecked(instance, built), output))
        }
    }
}

/// Parse and type-check a term over `ctx`, returning it with its type.
pub fn parse_typed_term(sig: &Signature, ctx: &Context, text: &str) -> Result<(Term, TypeExpr), TermError> {
    let mut r = Reader::new(text, &sig.universe)?;
    let raw = r.term()?;
    r.finish()?;
    elaborate(sig, ctx, raw)
}

pub fn parse_term(sig: &Signature, ctx: &Context, text: &str) -> Result<Term, TermError> {
    parse_typed_term(sig, ctx, text).map(|(t, _)| t)
}

pub fn parse_type(universe: &TypeUniverse, text: &str) -> Result<TypeExpr, TermError> {
    let mut r = Reader::new(text, universe)?;
    let t = r.tyexpr()?;
    r.finish()?;
    Ok(t)
}

/// Comma-separated types, position 0 first; blank text is the empty context.
pub fn parse_context(universe: &TypeUniverse, text: &str) -> Result<Context, TermError> {
    let mut r = Reader::new(text, universe)?;
    let mut telescope = Vec::new();
    if r.peek().is_some() {
        loop {
            telescope.push(r.tyexpr()?);
            if r.peek() == Some(&Tok::Comma) {
                r.pos += 1;
            } else {
                break;
            }
        }
    }
    r.finish()?;
    Ok(Context::new(telescope))
}

/// A context in the form `parse_context` reads.
pub fn print_context(ctx: &Context) -> String {
    ctx.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ")
}

/// Read an assignment `source -> T(target)` written `{0:=t0, 1:=t1}`, the
/// form assignments are rendered in. Indices must be listed in order.
pub fn parse_subst_map(sig: &Signature, source: &Context, target: &Context, text: &str) -> Result<SubstMap, TermError> {
    let bad = |msg: &str| TermError::Syntax { pos: 1, msg: msg.into() };
    let body = text
        .trim()
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| bad("expected `{...}`"))?;
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in body.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&body[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if !body.trim().is_empty() {
        parts.push(&body[start..]);
    }
    let mut images = Vec::with_capacity(parts.len());
    for (expected, part) in parts.iter().enumerate() {
        let (index, term) = part.split_once(":=").ok_or_else(|| bad("expected `index:=term`"))?;
        if index.trim().parse::<usize>().ok() != Some(expected) {
            return Err(bad(&format!("expected index {expected}, found `{}`", index.trim())));
        }
        images.push(parse_term(sig, target, term.trim())?);
    }
    SubstMap::new(sig, source.clone(), target.clone(), images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{pcf_signature, ulc_signature};
    use crate::syntax::subst::subst;
    use crate::syntax::term::print_term;

    #[test]
    fn errors_carry_positions() {
        let sig = ulc_signature();
        let c = Context::new(vec![TypeExpr::base("unit")]);
        let e = parse_term(&sig, &c, "(con abs (var 2))").unwrap_err();
        assert_eq!(e, TermError::UnboundIndex { index: 2, len: 2 }.at(10));
        assert_eq!(e.to_string(), "10: variable index 2 out of range for a context of length 2");
        let e = parse_term(&sig, &c, "(con lam (var 0))").unwrap_err();
        assert!(matches!(e.kind(), TermError::UnknownSchema(_)));
        let e = parse_term(&sig, &c, "(con app (var 0))").unwrap_err();
        assert!(matches!(e.kind(), TermError::ArgCount { .. }));
        assert!(matches!(parse_term(&sig, &c, "(var 0) x"), Err(TermError::Syntax { pos: 9, .. })));
        assert!(matches!(parse_term(&sig, &c, "(con abs"), Err(TermError::Syntax { .. })));
    }

    #[test]
    fn type_arguments_and_contexts() {
        let sig = pcf_signature();
        let c = parse_context(&sig.universe, "nat, (arrow nat bool)").unwrap();
        assert_eq!(print_context(&c), "nat, (arrow nat bool)");
        assert_eq!(parse_context(&sig.universe, "  ").unwrap(), Context::empty());
        let (x, t) = parse_typed_term(&sig, &c, "(con app [s=nat, t=bool] (var 1) (con succ (var 0)))").unwrap();
        assert_eq!(t, TypeExpr::base("bool"));
        assert_eq!(print_term(&x), "(con app [s=nat,t=bool] (var 1) (con succ (var 0)))");
        assert!(parse_type(&sig.universe, "(arrow nat)").is_err());
        assert!(parse_context(&sig.universe, "nat, list").is_err());
    }

    #[test]
    fn substitution_maps_read_back_their_display() {
        let sig = ulc_signature();
        let u = TypeExpr::base("unit");
        let v = Context::new(vec![u.clone(), u.clone()]);
        let w = Context::new(vec![u.clone()]);
        let f = parse_subst_map(&sig, &v, &w, "{0:=(con abs (var 1)), 1:=(con app (var 0) (var 0))}").unwrap();
        assert_eq!(parse_subst_map(&sig, &v, &w, &f.to_string()).unwrap(), f);
        let x = parse_term(&sig, &v, "(con app (var 1) (var 0))").unwrap();
        assert_eq!(
            print_term(&subst(&f, &x)),
            "(con app (con app (var 0) (var 0)) (con abs (var 1)))"
        );
        assert!(parse_subst_map(&sig, &v, &w, "{1:=(var 0), 0:=(var 0)}").is_err());
        assert!(parse_subst_map(&sig, &v, &w, "{0:=(var 0)}").is_err());
    }
}
