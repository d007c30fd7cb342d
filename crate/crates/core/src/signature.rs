//! Binding signatures: arity schemas over a type universe, their
//! instantiation, validation, and the line-oriented file format.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::types::{enumerate_type_exprs, Name, TypeError, TypeExpr, TypeUniverse};

/// One argument of an arity: the types of the variables it binds and the
/// type of the argument term itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArgShape {
    pub binders: Vec<TypeExpr>,
    pub result: TypeExpr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AritySchema {
    pub name: Name,
    pub metavars: Vec<Name>,
    pub args: Vec<ArgShape>,
    pub output: TypeExpr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub name: Name,
    pub universe: TypeUniverse,
    pub schemas: Vec<AritySchema>,
}

/// A metavariable-free arity, `(s1)t1, ..., (sn)tn -> t0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConcreteArity {
    pub args: Vec<ArgShape>,
    pub output: TypeExpr,
}

/// Assignment of concrete types to metavariables, in schema declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TyArgs(pub Vec<(Name, TypeExpr)>);

impl TyArgs {
    pub fn new(pairs: &[(&str, TypeExpr)]) -> Self {
        TyArgs(pairs.iter().map(|(n, t)| (Name::from(*n), t.clone())).collect())
    }

    pub fn get(&self, name: &str) -> Option<&TypeExpr> {
        self.0.iter().find(|(n, _)| &**n == name).map(|(_, t)| t)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for TyArgs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (n, t)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}={t}")?;
        }
        write!(f, "]")
    }
}

/// A schema together with a metavariable assignment and the arity it yields.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArityInstance {
    pub schema: Name,
    pub tyargs: TyArgs,
    pub arity: ConcreteArity,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("{line}:{col}: {error}")]
    At {
        line: usize,
        col: usize,
        error: Box<SignatureError>,
    },
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error("duplicate schema name `{0}`")]
    DuplicateSchema(Name),
    #[error("duplicate metavariable `{var}` in schema `{schema}`")]
    DuplicateMetavar { schema: Name, var: Name },
    #[error("schema `{schema}`: {error}")]
    InSchema { schema: Name, error: TypeError },
    #[error("missing binding for metavariable {0}")]
    MissingMetavar(Name),
    #[error("metavariable {var} bound to non-concrete type {ty}")]
    NonConcreteBinding { var: Name, ty: TypeExpr },
    #[error("unknown schema `{0}`")]
    UnknownSchema(Name),
}

impl SignatureError {
    fn at(self, line: usize, col: usize) -> Self {
        SignatureError::At { line, col, error: Box::new(self) }
    }

    /// The error with any position wrapper removed.
    pub fn kind(&self) -> &SignatureError {
        match self {
            SignatureError::At { error, .. } => error.kind(),
            other => other,
        }
    }
}

impl AritySchema {
    fn types(&self) -> impl Iterator<Item = &TypeExpr> {
        self.args
            .iter()
            .flat_map(|a| a.binders.iter().chain(std::iter::once(&a.result)))
            .chain(std::iter::once(&self.output))
    }
}

/// Replace the schema's metavariables by their assigned concrete types.
pub fn instantiate_arity(
    schema: &AritySchema,
    assignment: &TyArgs,
) -> Result<ConcreteArity, SignatureError> {
    for m in &schema.metavars {
        match assignment.get(m) {
            None => return Err(SignatureError::MissingMetavar(m.clone())),
            Some(t) if !t.is_concrete() => {
                return Err(SignatureError::NonConcreteBinding { var: m.clone(), ty: t.clone() })
            }
            Some(_) => {}
        }
    }
    let lookup = |m: &str| assignment.get(m).cloned();
    let inst = |t: &TypeExpr| t.substitute(&lookup);
    let arity = ConcreteArity {
        args: schema
            .args
            .iter()
            .map(|a| ArgShape {
                binders: a.binders.iter().map(inst).collect(),
                result: inst(&a.result),
            })
            .collect(),
        output: inst(&schema.output),
    };
    if let Some(t) = arity
        .args
        .iter()
        .flat_map(|a| a.binders.iter().chain([&a.result]))
        .chain([&arity.output])
        .find(|t| !t.is_concrete())
    {
        let mut vars = Vec::new();
        t.metavars(&mut vars);
        return Err(SignatureError::MissingMetavar(vars.remove(0)));
    }
    Ok(arity)
}

/// Every invariant violation of `sig`; empty iff the signature is valid.
pub fn validate_signature(sig: &Signature) -> Vec<SignatureError> {
    let mut errors: Vec<SignatureError> =
        sig.universe.validate().into_iter().map(SignatureError::Type).collect();
    for (i, schema) in sig.schemas.iter().enumerate() {
        if sig.schemas[..i].iter().any(|s| s.name == schema.name) {
            errors.push(SignatureError::DuplicateSchema(schema.name.clone()));
        }
        for (j, m) in schema.metavars.iter().enumerate() {
            if schema.metavars[..j].contains(m) {
                errors.push(SignatureError::DuplicateMetavar {
                    schema: schema.name.clone(),
                    var: m.clone(),
                });
            }
        }
        for t in schema.types() {
            if let Err(e) = sig.universe.check(t, &schema.metavars) {
                errors.push(SignatureError::InSchema { schema: schema.name.clone(), error: e });
            }
        }
    }
    errors
}

impl Signature {
    pub fn schema(&self, name: &str) -> Option<&AritySchema> {
        self.schemas.iter().find(|s| &*s.name == name)
    }

    pub fn instance(&self, schema: &str, tyargs: &TyArgs) -> Result<ArityInstance, SignatureError> {
        let s = self
            .schema(schema)
            .ok_or_else(|| SignatureError::UnknownSchema(schema.into()))?;
        let arity = instantiate_arity(s, tyargs)?;
        let ordered = s
            .metavars
            .iter()
            .map(|m| (m.clone(), tyargs.get(m).cloned().expect("checked by instantiate")))
            .collect();
        Ok(ArityInstance { schema: s.name.clone(), tyargs: TyArgs(ordered), arity })
    }

    /// All instances of all schemas with metavariables drawn from the types
    /// of depth at most `ty_depth`: schema order, then lexicographic assignments.
    pub fn instances(&self, ty_depth: usize) -> Vec<ArityInstance> {
        let types = enumerate_type_exprs(&self.universe, ty_depth);
        let mut out = Vec::new();
        for s in &self.schemas {
            let mut assignments: Vec<Vec<(Name, TypeExpr)>> = vec![Vec::new()];
            for m in &s.metavars {
                assignments = assignments
                    .into_iter()
                    .flat_map(|a| {
                        types.iter().map(move |t| {
                            let mut a = a.clone();
                            a.push((m.clone(), t.clone()));
                            a
                        })
                    })
                    .collect();
            }
            for a in assignments {
                let tyargs = TyArgs(a);
                if let Ok(arity) = instantiate_arity(s, &tyargs) {
                    out.push(ArityInstance { schema: s.name.clone(), tyargs, arity });
                }
            }
        }
        out
    }

    /// The instances whose output type is `t`.
    pub fn arities_with_output(&self, t: &TypeExpr, ty_depth: usize) -> Vec<ArityInstance> {
        self.instances(ty_depth)
            .into_iter()
            .filter(|i| &i.arity.output == t)
            .collect()
    }
}

// ---------------------------------------------------------------------------
// File format

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(usize),
    Sym(&'static str),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Nat(n) => write!(f, "`{n}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Tokens of one line, each with its 1-based column.
fn tokenize_line(line: &str, lineno: usize) -> Result<Vec<(usize, Tok)>, SignatureError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push((col, Tok::Sym("->")));
            i += 2;
            continue;
        }
        let sym = match c {
            '(' => Some("("),
            ')' => Some(")"),
            '[' => Some("["),
            ']' => Some("]"),
            ',' => Some(","),
            '.' => Some("."),
            ':' => Some(":"),
            '=' => Some("="),
            _ => None,
        };
        if let Some(s) = sym {
            out.push((col, Tok::Sym(s)));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text.parse().map_err(|_| {
                SignatureError::Syntax(format!("number too large: {text}")).at(lineno, col)
            })?;
            out.push((col, Tok::Nat(n)));
        } else if is_ident_start(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            out.push((col, Tok::Ident(chars[start..i].iter().collect())));
        } else {
            return Err(SignatureError::Syntax(format!("unexpected character `{c}`")).at(lineno, col));
        }
    }
    Ok(out)
}

struct LineParser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    line: usize,
    eol_col: usize,
}

impl<'a> LineParser<'a> {
    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.eol_col, |(c, _)| *c)
    }

    fn err(&self, msg: impl Into<String>) -> SignatureError {
        SignatureError::Syntax(msg.into()).at(self.line, self.col())
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn found(&self) -> String {
        self.peek().map_or("end of line".to_string(), Tok::to_string)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.peek().cloned();
        self.pos += 1;
        t
    }

    fn expect_sym(&mut self, s: &'static str) -> Result<(), SignatureError> {
        if self.peek() == Some(&Tok::Sym(s)) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{s}`, found {}", self.found())))
        }
    }

    fn is_sym(&self, s: &'static str) -> bool {
        self.peek() == Some(&Tok::Sym(s))
    }

    fn ident(&mut self, what: &str) -> Result<String, SignatureError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err(format!("expected {what}, found {}", self.found()))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), SignatureError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(format!("expected `{kw}`, found {}", self.found()))),
        }
    }

    fn end(&self) -> Result<(), SignatureError> {
        if self.pos < self.toks.len() {
            Err(self.err(format!("unexpected {}", self.found())))
        } else {
            Ok(())
        }
    }

    fn resolve(
        &self,
        universe: &TypeUniverse,
        metavars: &[Name],
        name: &str,
        args: Vec<TypeExpr>,
        col: usize,
    ) -> Result<TypeExpr, SignatureError> {
        let located = |e: TypeError| SignatureError::Type(e).at(self.line, col);
        if metavars.iter().any(|m| &**m == name) {
            if !args.is_empty() {
                return Err(SignatureError::Syntax(format!(
                    "metavariable {name} cannot be applied"
                ))
                .at(self.line, col));
            }
            return Ok(TypeExpr::Meta(name.into()));
        }
        let arity = universe
            .arity_of(name)
            .ok_or_else(|| located(TypeError::UnknownType(name.into())))?;
        if arity != args.len() {
            return Err(located(TypeError::ArityMismatch {
                name: name.into(),
                expected: arity,
                found: args.len(),
            }));
        }
        Ok(TypeExpr::Con(name.into(), args))
    }

    fn tyexpr(&mut self, universe: &TypeUniverse, metavars: &[Name]) -> Result<TypeExpr, SignatureError> {
        let col = self.col();
        if self.is_sym("(") {
            self.pos += 1;
            let head_col = self.col();
            let head = self.ident("type constructor")?;
            let mut args = Vec::new();
            while !self.is_sym(")") {
                if self.peek().is_none() {
                    return Err(self.err("unclosed `(` in type"));
                }
                args.push(self.tyexpr(universe, metavars)?);
            }
            self.pos += 1;
            if args.is_empty() {
                return Err(SignatureError::Syntax("parenthesized type needs arguments".into())
                    .at(self.line, col));
            }
            self.resolve(universe, metavars, &head, args, head_col)
        } else {
            let name = self.ident("type")?;
            self.resolve(universe, metavars, &name, Vec::new(), col)
        }
    }

    fn arg(&mut self, universe: &TypeUniverse, metavars: &[Name]) -> Result<ArgShape, SignatureError> {
        self.expect_sym("(")?;
        let mut types = Vec::new();
        let mut dot = None;
        loop {
            match self.peek() {
                Some(Tok::Sym(")")) => break,
                Some(Tok::Sym(".")) if dot.is_none() => {
                    dot = Some(types.len());
                    self.pos += 1;
                }
                None => return Err(self.err("unclosed argument")),
                _ => types.push(self.tyexpr(universe, metavars)?),
            }
        }
        let close_col = self.col();
        self.pos += 1;
        let bad = |msg: &str| SignatureError::Syntax(msg.into()).at(self.line, close_col);
        match dot {
            None if types.len() == 1 => Ok(ArgShape { binders: Vec::new(), result: types.remove(0) }),
            None => Err(bad("argument needs exactly one type, or binders followed by `.` and a result")),
            Some(0) => Err(bad("expected binder types before `.`")),
            Some(k) if types.len() == k + 1 => {
                let result = types.pop().expect("nonempty");
                Ok(ArgShape { binders: types, result })
            }
            Some(_) => Err(bad("expected exactly one result type after `.`")),
        }
    }
}

/// Parse and validate a signature file.
pub fn parse_signature(text: &str) -> Result<Signature, SignatureError> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let toks = tokenize_line(raw, i + 1)?;
        if !toks.is_empty() {
            lines.push((i + 1, raw.chars().count() + 1, toks));
        }
    }
    let mut it = lines.iter().peekable();
    fn parser(entry: &(usize, usize, Vec<(usize, Tok)>)) -> LineParser<'_> {
        let (line, eol_col, toks) = entry;
        LineParser { toks: &toks[..], pos: 0, line: *line, eol_col: *eol_col }
    }
    let last_line = text.lines().count().max(1);
    let eof = |msg: &str| SignatureError::Syntax(msg.into()).at(last_line, 1);

    let mut p = parser(it.next().ok_or_else(|| eof("empty signature file"))?);
    p.keyword("signature")?;
    let name = p.ident("signature name")?;
    p.end()?;

    let mut p = parser(it.next().ok_or_else(|| eof("expected `types`"))?);
    p.keyword("types")?;
    let universe = match p.ident("`enum` or `generated`")?.as_str() {
        "enum" => {
            let mut names = Vec::new();
            while p.peek().is_some() {
                names.push(Name::from(p.ident("type name")?));
            }
            if names.is_empty() {
                return Err(p.err("`types enum` needs at least one name"));
            }
            TypeUniverse::Enumerated(names)
        }
        "generated" => {
            p.end()?;
            let mut tycons = Vec::new();
            while let Some(entry) = it.peek() {
                let mut q = parser(entry);
                if q.peek() != Some(&Tok::Ident("tycon".into())) {
                    break;
                }
                it.next();
                q.pos += 1;
                let tc = q.ident("type constructor name")?;
                let arity = match q.next() {
                    Some(Tok::Nat(n)) => n,
                    _ => {
                        q.pos -= 1;
                        return Err(q.err(format!("expected arity, found {}", q.found())));
                    }
                };
                q.end()?;
                tycons.push(crate::types::Tycon { name: tc.into(), arity });
            }
            if tycons.is_empty() {
                return Err(eof("`types generated` needs at least one `tycon` line"));
            }
            TypeUniverse::Generated(tycons)
        }
        other => {
            p.pos -= 1;
            return Err(p.err(format!("expected `enum` or `generated`, found `{other}`")));
        }
    };
    if let Some(e) = universe.validate().into_iter().next() {
        return Err(SignatureError::Type(e).at(lines[1].0, 1));
    }

    let mut schemas: Vec<AritySchema> = Vec::new();
    let mut ended = false;
    for entry in it {
        let mut p = parser(entry);
        if ended {
            return Err(p.err("content after `end`"));
        }
        match p.peek() {
            Some(Tok::Ident(k)) if k == "end" => {
                p.pos += 1;
                p.end()?;
                ended = true;
                continue;
            }
            _ => p.keyword("op")?,
        }
        let name_col = p.col();
        let op_name: Name = p.ident("operation name")?.into();
        if schemas.iter().any(|s| s.name == op_name) {
            return Err(SignatureError::DuplicateSchema(op_name).at(entry.0, name_col));
        }
        p.expect_sym("[")?;
        let mut metavars: Vec<Name> = Vec::new();
        if !p.is_sym("]") {
            loop {
                let col = p.col();
                let m: Name = p.ident("metavariable")?.into();
                if metavars.contains(&m) {
                    return Err(SignatureError::DuplicateMetavar { schema: op_name, var: m }
                        .at(entry.0, col));
                }
                metavars.push(m);
                if p.is_sym(",") {
                    p.pos += 1;
                } else {
                    break;
                }
            }
        }
        p.expect_sym("]")?;
        p.expect_sym(":")?;
        let mut args = Vec::new();
        if !p.is_sym("->") {
            loop {
                args.push(p.arg(&universe, &metavars)?);
                if p.is_sym(",") {
                    p.pos += 1;
                } else {
                    break;
                }
            }
        }
        p.expect_sym("->")?;
        // The output may also be written as a bare application `arrow s t`.
        let output = match (p.peek(), p.toks.len() - p.pos) {
            (Some(Tok::Ident(head)), n) if n > 1 => {
                let head = head.clone();
                let col = p.col();
                p.pos += 1;
                let mut targs = Vec::new();
                while p.peek().is_some() {
                    targs.push(p.tyexpr(&universe, &metavars)?);
                }
                p.resolve(&universe, &metavars, &head, targs, col)?
            }
            _ => p.tyexpr(&universe, &metavars)?,
        };
        p.end()?;
        schemas.push(AritySchema { name: op_name, metavars, args, output });
    }
    if !ended {
        return Err(eof("missing `end`"));
    }
    let sig = Signature { name: name.into(), universe, schemas };
    if let Some(e) = validate_signature(&sig).into_iter().next() {
        return Err(e);
    }
    Ok(sig)
}

impl fmt::Display for ArgShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for b in &self.binders {
            write!(f, "{b} ")?;
        }
        if !self.binders.is_empty() {
            write!(f, ". ")?;
        }
        write!(f, "{})", self.result)
    }
}

impl fmt::Display for AritySchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<&str> = self.metavars.iter().map(|m| &**m).collect();
        write!(f, "op {} [{}] :", self.name, vars.join(","))?;
        for (i, a) in self.args.iter().enumerate() {
            write!(f, "{}{a}", if i == 0 { " " } else { ", " })?;
        }
        write!(f, " -> {}", self.output)
    }
}

impl fmt::Display for ConcreteArity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.args.iter().enumerate() {
            write!(f, "{}{a}", if i == 0 { "" } else { ", " })?;
        }
        write!(f, "{}-> {}", if self.args.is_empty() { "" } else { " " }, self.output)
    }
}

/// Canonical rendering in the file grammar.
pub fn print_signature(sig: &Signature) -> String {
    let mut out = format!("signature {}\n", sig.name);
    match &sig.universe {
        TypeUniverse::Enumerated(names) => {
            let names: Vec<&str> = names.iter().map(|n| &**n).collect();
            out.push_str(&format!("types enum {}\n", names.join(" ")));
        }
        TypeUniverse::Generated(tycons) => {
            out.push_str("types generated\n");
            for tc in tycons {
                out.push_str(&format!("tycon {} {}\n", tc.name, tc.arity));
            }
        }
    }
    for s in &sig.schemas {
        out.push_str(&format!("{s}\n"));
    }
    out.push_str("end\n");
    out
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_signature(self))
    }
}

/// Shared handle for instances stored inside term nodes.
pub type InstanceRef = Arc<ArityInstance>;

#[cfg(test)]
mod tests {
    use super::*;

    const ULC: &str = "signature ulc\ntypes enum unit\nop app [] : (unit), (unit) -> unit\nop abs [] : (unit . unit) -> unit\nend\n";
    const STLC: &str = "signature stlc\ntypes generated\ntycon base 0\ntycon arrow 2\nop app [s,t] : ((arrow s t)), (s) -> t\nop abs [s,t] : (s . t) -> arrow s t\nend\n";

    fn base() -> TypeExpr {
        TypeExpr::base("base")
    }

    fn arrow(a: TypeExpr, b: TypeExpr) -> TypeExpr {
        TypeExpr::app("arrow", vec![a, b])
    }

    #[test]
    fn parses_ulc() {
        let sig = parse_signature(ULC).unwrap();
        assert_eq!(&*sig.name, "ulc");
        let app = sig.schema("app").unwrap();
        assert_eq!(app.args.len(), 2);
        assert!(app.args.iter().all(|a| a.binders.is_empty()));
        let abs = sig.schema("abs").unwrap();
        assert_eq!(abs.args.len(), 1);
        assert_eq!(abs.args[0].binders, vec![TypeExpr::base("unit")]);
        assert_eq!(print_signature(&sig), ULC);
    }

    #[test]
    fn parses_stlc_abs_schema() {
        let sig = parse_signature(STLC).unwrap();
        let abs = sig.schema("abs").unwrap();
        assert_eq!(abs.metavars, vec![Name::from("s"), Name::from("t")]);
        assert_eq!(abs.args, vec![ArgShape { binders: vec![TypeExpr::meta("s")], result: TypeExpr::meta("t") }]);
        assert_eq!(abs.output, arrow(TypeExpr::meta("s"), TypeExpr::meta("t")));
        let printed = print_signature(&sig);
        assert!(printed.contains("op abs [s,t] : (s . t) -> (arrow s t)"));
        assert_eq!(parse_signature(&printed).unwrap(), sig);
    }

    #[test]
    fn unknown_type_is_reported_with_position() {
        let text = "signature bad\ntypes enum unit\nop c [] : (foo) -> unit\nend\n";
        let err = parse_signature(text).unwrap_err();
        assert!(matches!(err, SignatureError::At { line: 3, col: 12, .. }), "{err}");
        assert_eq!(err.kind(), &SignatureError::Type(TypeError::UnknownType("foo".into())));
    }

    #[test]
    fn syntax_and_arity_errors() {
        let bad_arity = "signature s\ntypes generated\ntycon base 0\ntycon arrow 2\nop f [] : ((arrow base)) -> base\nend\n";
        let err = parse_signature(bad_arity).unwrap_err();
        assert!(matches!(err.kind(), SignatureError::Type(TypeError::ArityMismatch { .. })));

        let dup = "signature s\ntypes enum u\nop f [] : -> u\nop f [] : -> u\nend\n";
        assert_eq!(parse_signature(dup).unwrap_err().kind(), &SignatureError::DuplicateSchema("f".into()));

        let missing_end = "signature s\ntypes enum u\nop f [] : -> u\n";
        assert!(matches!(parse_signature(missing_end).unwrap_err().kind(), SignatureError::Syntax(_)));

        let junk = "signature s\ntypes enum u\nop f [] : (u) u -> u\nend\n";
        assert!(matches!(parse_signature(junk).unwrap_err(), SignatureError::At { line: 3, .. }));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# header\nsignature c\n\ntypes enum u # only type\nop k [] : -> u\nend\n";
        let sig = parse_signature(text).unwrap();
        assert_eq!(sig.schemas[0].args.len(), 0);
    }

    #[test]
    fn validate_flags_undeclared_metavar_and_arity() {
        let mut sig = parse_signature(STLC).unwrap();
        assert!(validate_signature(&sig).is_empty());
        sig.schemas[1].args[0].result = TypeExpr::meta("u");
        sig.schemas[0].output = TypeExpr::app("arrow", vec![base()]);
        let errors = validate_signature(&sig);
        let text: Vec<String> = errors.iter().map(|e| e.to_string()).collect();
        assert!(text.iter().any(|e| e.contains("undeclared metavariable u")), "{text:?}");
        assert!(text.iter().any(|e| e.contains("arity mismatch")), "{text:?}");
    }

    #[test]
    fn instantiate_slc_arities() {
        let sig = parse_signature(STLC).unwrap();
        let bb = TyArgs::new(&[("s", base()), ("t", base())]);
        let abs = instantiate_arity(sig.schema("abs").unwrap(), &bb).unwrap();
        assert_eq!(abs.args, vec![ArgShape { binders: vec![base()], result: base() }]);
        assert_eq!(abs.output, arrow(base(), base()));
        let app = instantiate_arity(sig.schema("app").unwrap(), &bb).unwrap();
        assert_eq!(
            app.args,
            vec![
                ArgShape { binders: vec![], result: arrow(base(), base()) },
                ArgShape { binders: vec![], result: base() }
            ]
        );
        assert_eq!(app.output, base());
        assert_eq!(
            instantiate_arity(sig.schema("app").unwrap(), &TyArgs::new(&[("s", base())])),
            Err(SignatureError::MissingMetavar("t".into()))
        );
    }

    #[test]
    fn instantiate_without_metavars_is_identity() {
        let sig = parse_signature(ULC).unwrap();
        let abs = sig.schema("abs").unwrap();
        let a = instantiate_arity(abs, &TyArgs::default()).unwrap();
        assert_eq!(a.args, abs.args);
        assert_eq!(a.output, abs.output);
    }

    #[test]
    fn arities_with_output_lookup() {
        let sig = parse_signature(STLC).unwrap();
        let found = sig.arities_with_output(&arrow(base(), base()), 2);
        // app with t = (arrow base base) for each s, then abs at (base, base)
        let names: Vec<String> = found.iter().map(|i| format!("{}{}", i.schema, i.tyargs)).collect();
        assert_eq!(
            names,
            vec![
                "app[s=base,t=(arrow base base)]",
                "app[s=(arrow base base),t=(arrow base base)]",
                "abs[s=base,t=base]"
            ]
        );
    }
}
