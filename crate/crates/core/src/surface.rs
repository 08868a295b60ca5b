//! Concrete syntax for every system.
//!
//! Lambda-family grammar (untyped, `stlc`, `stlcext`):
//!
//! ```text
//! term   ::= '\' binder '.' term | app
//! binder ::= [name] [':' type]          -- annotation required when typed
//! app    ::= prefix+                    -- left-associative; a trailing
//!                                        -- lambda extends to the right
//! prefix ::= 'fst' prefix | 'snd' prefix
//!          | 'inl' '[' type ']' prefix | 'inr' '[' type ']' prefix | atom
//! atom   ::= 'v' digits | name | '(' term ')' | '(' term ',' term ')'
//!          | 'case' term 'of' '{' 'inl' [name] '=>' term '|' 'inr' [name] '=>' term '}'
//! type   ::= sum ['->' type]
//! sum    ::= prod ('+' prod)*
//! prod   ::= tatom ('*' tatom)*
//! tatom  ::= 'b' digits | '(' type ')'
//! ```
//!
//! `v<n>` is a raw de Bruijn index; names are resolved against enclosing
//! binders. Untyped terms may also use `omega` and `id` when those names are
//! not bound.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::lambda::{self, Term};
use crate::rewrite::Expr;
use crate::ski::{capp, CTerm};
use crate::stlc::{TTerm, Ty};
use crate::stlcext::{build as e, ETerm, ETy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum System {
    Lambda,
    Ski,
    Expr,
    Srs,
    Stlc,
    StlcExt,
}

impl System {
    pub const ALL: [System; 6] =
        [System::Lambda, System::Ski, System::Expr, System::Srs, System::Stlc, System::StlcExt];

    pub fn name(self) -> &'static str {
        match self {
            System::Lambda => "lambda",
            System::Ski => "ski",
            System::Expr => "expr",
            System::Srs => "srs",
            System::Stlc => "stlc",
            System::StlcExt => "stlcext",
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown system {0:?} (expected one of lambda, ski, expr, srs, stlc, stlcext)")]
pub struct UnknownSystem(pub String);

impl FromStr for System {
    type Err = UnknownSystem;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        System::ALL.into_iter().find(|sys| sys.name() == s).ok_or_else(|| UnknownSystem(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub byte_start: usize,
    pub byte_end: usize,
    /// 1-based.
    pub line: usize,
    /// 1-based, in characters.
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.span.line, self.span.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

/// A parsed term of any system.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Parsed {
    Lambda(Term),
    Ski(CTerm),
    Expr(Expr),
    Srs(String),
    Stlc(TTerm),
    StlcExt(ETerm),
}

impl Parsed {
    pub fn system(&self) -> System {
        match self {
            Parsed::Lambda(_) => System::Lambda,
            Parsed::Ski(_) => System::Ski,
            Parsed::Expr(_) => System::Expr,
            Parsed::Srs(_) => System::Srs,
            Parsed::Stlc(_) => System::Stlc,
            Parsed::StlcExt(_) => System::StlcExt,
        }
    }
}

impl fmt::Display for Parsed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parsed::Lambda(t) => write!(f, "{t}"),
            Parsed::Ski(t) => write!(f, "{t}"),
            Parsed::Expr(t) => write!(f, "{t}"),
            Parsed::Srs(t) => write!(f, "{t}"),
            Parsed::Stlc(t) => write!(f, "{t}"),
            Parsed::StlcExt(t) => write!(f, "{t}"),
        }
    }
}

/// Canonical printed form.
pub fn print(term: &Parsed) -> String {
    term.to_string()
}

pub fn parse(system: System, input: &str) -> Result<Parsed, ParseError> {
    match system {
        System::Lambda => parse_lambda(input).map(Parsed::Lambda),
        System::Ski => parse_ski(input).map(Parsed::Ski),
        System::Expr => parse_expr(input).map(Parsed::Expr),
        System::Srs => parse_srs(input).map(Parsed::Srs),
        System::Stlc => parse_stlc(input).map(Parsed::Stlc),
        System::StlcExt => parse_stlcext(input).map(Parsed::StlcExt),
    }
}

/// Parses with a system named by string.
pub fn parse_named(system: &str, input: &str) -> Result<Parsed, SurfaceError> {
    let sys: System = system.parse()?;
    Ok(parse(sys, input)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error(transparent)]
    UnknownSystem(#[from] UnknownSystem),
    #[error("{0}")]
    Parse(#[from] ParseError),
}

// ---------------------------------------------------------------------------
// Lexer

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Backslash,
    Dot,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Colon,
    Comma,
    Bar,
    FatArrow,
    Arrow,
    Plus,
    Star,
    Ident(String),
    Num(usize),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Backslash => "`\\`".into(),
            Tok::Dot => "`.`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Bar => "`|`".into(),
            Tok::FatArrow => "`=>`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Star => "`*`".into(),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(n) => format!("`{n}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    span: SourceSpan,
}

fn span_at(input: &str, start: usize, end: usize) -> SourceSpan {
    let before = &input[..start];
    let line = before.matches('\n').count() + 1;
    let line_start = before.rfind('\n').map_or(0, |i| i + 1);
    SourceSpan { byte_start: start, byte_end: end, line, column: input[line_start..start].chars().count() + 1 }
}

fn error_at(input: &str, start: usize, end: usize, message: impl Into<String>) -> ParseError {
    ParseError { span: span_at(input, start, end), message: message.into(), expected: Vec::new() }
}

fn lex(input: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some(&(start, ch)) = chars.peek() {
        if ch.is_whitespace() {
            chars.next();
            continue;
        }
        let mut single = |tok: Tok, len: usize| {
            out.push(Spanned { tok, span: span_at(input, start, start + len) });
        };
        match ch {
            '\\' | 'λ' => {
                single(Tok::Backslash, ch.len_utf8());
                chars.next();
            }
            '.' => {
                single(Tok::Dot, 1);
                chars.next();
            }
            '(' => {
                single(Tok::LParen, 1);
                chars.next();
            }
            ')' => {
                single(Tok::RParen, 1);
                chars.next();
            }
            '[' => {
                single(Tok::LBracket, 1);
                chars.next();
            }
            ']' => {
                single(Tok::RBracket, 1);
                chars.next();
            }
            '{' => {
                single(Tok::LBrace, 1);
                chars.next();
            }
            '}' => {
                single(Tok::RBrace, 1);
                chars.next();
            }
            ':' => {
                single(Tok::Colon, 1);
                chars.next();
            }
            ',' => {
                single(Tok::Comma, 1);
                chars.next();
            }
            '|' => {
                single(Tok::Bar, 1);
                chars.next();
            }
            '+' => {
                single(Tok::Plus, 1);
                chars.next();
            }
            '*' | '×' => {
                single(Tok::Star, ch.len_utf8());
                chars.next();
            }
            '→' => {
                single(Tok::Arrow, ch.len_utf8());
                chars.next();
            }
            '=' | '-' => {
                chars.next();
                match chars.peek() {
                    Some(&(_, '>')) => {
                        chars.next();
                        let tok = if ch == '=' { Tok::FatArrow } else { Tok::Arrow };
                        out.push(Spanned { tok, span: span_at(input, start, start + 2) });
                    }
                    _ => return Err(error_at(input, start, start + 1, format!("unexpected character {ch:?}"))),
                }
            }
            c if c.is_ascii_digit() => {
                let mut end = start;
                while let Some(&(i, d)) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    end = i + 1;
                    chars.next();
                }
                let n = input[start..end].parse().map_err(|_| error_at(input, start, end, "number too large"))?;
                out.push(Spanned { tok: Tok::Num(n), span: span_at(input, start, end) });
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut end = start;
                while let Some(&(i, d)) = chars.peek() {
                    if !(d.is_alphanumeric() || d == '_' || d == '\'') {
                        break;
                    }
                    end = i + d.len_utf8();
                    chars.next();
                }
                out.push(Spanned { tok: Tok::Ident(input[start..end].to_string()), span: span_at(input, start, end) });
            }
            other => {
                return Err(error_at(input, start, start + other.len_utf8(), format!("unexpected character {other:?}")))
            }
        }
    }
    out.push(Spanned { tok: Tok::Eof, span: span_at(input, input.len(), input.len()) });
    Ok(out)
}

fn indexed(name: &str, prefix: char) -> Option<usize> {
    let digits = name.strip_prefix(prefix)?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

const KEYWORDS: [&str; 6] = ["fst", "snd", "inl", "inr", "case", "of"];

// ---------------------------------------------------------------------------
// Lambda-family parser

#[derive(Clone, Copy, PartialEq, Eq)]
enum Flavor {
    Untyped,
    Typed,
    Extended,
}

// One tree shape for all three lambda-family term types.
enum Ast {
    Var(usize),
    App(Box<Node>, Box<Node>),
    Lam(Option<ETy>, Box<Node>),
    Pair(Box<Node>, Box<Node>),
    Fst(Box<Node>),
    Snd(Box<Node>),
    Inl(ETy, Box<Node>),
    Inr(ETy, Box<Node>),
    Case(Box<Node>, Box<Node>, Box<Node>),
}

struct Node {
    span: SourceSpan,
    ast: Ast,
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    flavor: Flavor,
    // Binder names, innermost last; `None` for anonymous binders.
    scope: Vec<Option<String>>,
    // End of the last consumed token.
    last_end: usize,
}

impl Parser {
    fn new(input: &str, flavor: Flavor) -> Result<Self, ParseError> {
        Ok(Parser { toks: lex(input)?, pos: 0, flavor, scope: Vec::new(), last_end: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].span
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        self.last_end = t.span.byte_end;
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    // A node spanning from `start` to the last consumed token.
    fn node(&self, start: SourceSpan, ast: Ast) -> Node {
        Node { span: SourceSpan { byte_end: self.last_end.max(start.byte_start), ..start }, ast }
    }

    fn error(&self, message: impl Into<String>, expected: &[&str]) -> ParseError {
        ParseError {
            span: self.span(),
            message: message.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        self.error(format!("unexpected {}", self.peek().describe()), expected)
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&[&tok.describe()]))
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.is_keyword(kw) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&[&format!("`{kw}`")]))
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected(&["end of input"]))
        }
    }

    fn extended(&self) -> bool {
        self.flavor == Flavor::Extended
    }

    // type ::= sum ['->' type]
    fn ty(&mut self) -> Result<ETy, ParseError> {
        let lhs = self.ty_sum()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            Ok(crate::stlcext::earr(lhs, self.ty()?))
        } else {
            Ok(lhs)
        }
    }

    fn ty_sum(&mut self) -> Result<ETy, ParseError> {
        let mut acc = self.ty_prod()?;
        while *self.peek() == Tok::Plus {
            if !self.extended() {
                return Err(self.error("sum types need the stlcext system", &[]));
            }
            self.bump();
            acc = crate::stlcext::sum(acc, self.ty_prod()?);
        }
        Ok(acc)
    }

    fn ty_prod(&mut self) -> Result<ETy, ParseError> {
        let mut acc = self.ty_atom()?;
        while *self.peek() == Tok::Star {
            if !self.extended() {
                return Err(self.error("product types need the stlcext system", &[]));
            }
            self.bump();
            acc = crate::stlcext::prod(acc, self.ty_atom()?);
        }
        Ok(acc)
    }

    fn ty_atom(&mut self) -> Result<ETy, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => match indexed(&name, 'b') {
                Some(n) => {
                    self.bump();
                    Ok(ETy::Base(n))
                }
                None => Err(self.error(format!("unknown type `{name}`"), &["base type `b<n>`", "`(`"])),
            },
            Tok::LParen => {
                self.bump();
                let t = self.ty()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => Err(self.unexpected(&["base type `b<n>`", "`(`"])),
        }
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Tok::LParen => true,
            Tok::Ident(s) => s != "of",
            _ => false,
        }
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        if *self.peek() == Tok::Backslash {
            return self.lambda();
        }
        let start = self.span();
        let mut acc = self.prefix()?;
        loop {
            if *self.peek() == Tok::Backslash {
                let arg = self.lambda()?;
                acc = self.node(start, Ast::App(Box::new(acc), Box::new(arg)));
                break;
            }
            if !self.starts_atom() {
                break;
            }
            let arg = self.prefix()?;
            acc = self.node(start, Ast::App(Box::new(acc), Box::new(arg)));
        }
        Ok(acc)
    }

    fn binder_name(&mut self) -> Result<Option<String>, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                if KEYWORDS.contains(&name.as_str()) || indexed(&name, 'v').is_some() {
                    return Err(self.error(format!("`{name}` cannot be used as a binder name"), &["a name"]));
                }
                self.bump();
                Ok(Some(name))
            }
            _ => Ok(None),
        }
    }

    fn lambda(&mut self) -> Result<Node, ParseError> {
        let start = self.span();
        self.expect(Tok::Backslash)?;
        let name = self.binder_name()?;
        let ann = if *self.peek() == Tok::Colon {
            self.bump();
            if self.flavor == Flavor::Untyped {
                return Err(self.error("untyped lambda terms take no annotations", &["`.`"]));
            }
            Some(self.ty()?)
        } else {
            if self.flavor != Flavor::Untyped {
                return Err(self.unexpected(&["`:`"]));
            }
            None
        };
        self.expect(Tok::Dot)?;
        self.scope.push(name);
        let body = self.term();
        self.scope.pop();
        let body = body?;
        Ok(self.node(start, Ast::Lam(ann, Box::new(body))))
    }

    fn prefix(&mut self) -> Result<Node, ParseError> {
        let start = self.span();
        if self.extended() {
            if self.is_keyword("fst") || self.is_keyword("snd") {
                let is_fst = self.is_keyword("fst");
                self.bump();
                let m = Box::new(self.prefix()?);
                return Ok(self.node(start, if is_fst { Ast::Fst(m) } else { Ast::Snd(m) }));
            }
            if self.is_keyword("inl") || self.is_keyword("inr") {
                let left = self.is_keyword("inl");
                self.bump();
                self.expect(Tok::LBracket)?;
                let ann = self.ty()?;
                self.expect(Tok::RBracket)?;
                let m = Box::new(self.prefix()?);
                return Ok(self.node(start, if left { Ast::Inl(ann, m) } else { Ast::Inr(ann, m) }));
            }
        }
        self.atom()
    }

    fn branch(&mut self, kw: &str) -> Result<Node, ParseError> {
        self.expect_keyword(kw)?;
        let name = self.binder_name()?;
        self.expect(Tok::FatArrow)?;
        self.scope.push(name);
        let body = self.term();
        self.scope.pop();
        body
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        let start = self.span();
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let first = self.term()?;
                if self.extended() && *self.peek() == Tok::Comma {
                    self.bump();
                    let second = self.term()?;
                    self.expect(Tok::RParen)?;
                    return Ok(self.node(start, Ast::Pair(Box::new(first), Box::new(second))));
                }
                let expected: &[&str] = if self.extended() { &["`)`", "`,`"] } else { &["`)`"] };
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected(expected));
                }
                self.bump();
                Ok(first)
            }
            Tok::Ident(name) if self.extended() && name == "case" => {
                self.bump();
                let scrut = self.term()?;
                self.expect_keyword("of")?;
                self.expect(Tok::LBrace)?;
                let n1 = self.branch("inl")?;
                self.expect(Tok::Bar)?;
                let n2 = self.branch("inr")?;
                self.expect(Tok::RBrace)?;
                Ok(self.node(start, Ast::Case(Box::new(scrut), Box::new(n1), Box::new(n2))))
            }
            Tok::Ident(name) => {
                if let Some(n) = indexed(&name, 'v') {
                    self.bump();
                    return Ok(self.node(start, Ast::Var(n)));
                }
                if self.extended() && KEYWORDS.contains(&name.as_str()) {
                    return Err(self.unexpected(&["a term"]));
                }
                if let Some(depth) = self.scope.iter().rev().position(|b| b.as_deref() == Some(name.as_str())) {
                    self.bump();
                    return Ok(self.node(start, Ast::Var(depth)));
                }
                if self.flavor == Flavor::Untyped {
                    let builtin = match name.as_str() {
                        "omega" => Some(lambda::omega()),
                        "id" => Some(lambda::lam(lambda::var(0))),
                        _ => None,
                    };
                    if let Some(t) = builtin {
                        self.bump();
                        return Ok(from_untyped(&t, self.node(start, Ast::Var(0)).span));
                    }
                }
                Err(self.error(format!("unbound name `{name}`"), &[]))
            }
            _ => Err(self.unexpected(&["a term"])),
        }
    }
}

// Every node of an expanded builtin carries the builtin name's span.
fn from_untyped(t: &Term, span: SourceSpan) -> Node {
    let ast = match t {
        Term::Var(n) => Ast::Var(*n),
        Term::App(f, a) => Ast::App(Box::new(from_untyped(f, span)), Box::new(from_untyped(a, span))),
        Term::Lam(b) => Ast::Lam(None, Box::new(from_untyped(b, span))),
    };
    Node { span, ast }
}

fn to_untyped(n: Node) -> Term {
    match n.ast {
        Ast::Var(n) => lambda::var(n),
        Ast::App(f, x) => lambda::app(to_untyped(*f), to_untyped(*x)),
        Ast::Lam(_, b) => lambda::lam(to_untyped(*b)),
        _ => unreachable!("extended forms only parse in the stlcext flavor"),
    }
}

fn to_simple_ty(t: ETy) -> Ty {
    match t {
        ETy::Base(n) => Ty::Base(n),
        ETy::Arr(a, b) => crate::stlc::arr(to_simple_ty(*a), to_simple_ty(*b)),
        _ => unreachable!("product and sum types only parse in the stlcext flavor"),
    }
}

fn to_typed(n: Node) -> TTerm {
    match n.ast {
        Ast::Var(n) => TTerm::Var(n),
        Ast::App(f, x) => crate::stlc::tapp(to_typed(*f), to_typed(*x)),
        Ast::Lam(ty, b) => crate::stlc::tlam(to_simple_ty(ty.expect("typed binders are annotated")), to_typed(*b)),
        _ => unreachable!("extended forms only parse in the stlcext flavor"),
    }
}

fn to_ext(n: Node) -> ETerm {
    match n.ast {
        Ast::Var(n) => e::v(n),
        Ast::App(f, x) => e::app(to_ext(*f), to_ext(*x)),
        Ast::Lam(ty, b) => e::lam(ty.expect("typed binders are annotated"), to_ext(*b)),
        Ast::Pair(l, r) => e::pair(to_ext(*l), to_ext(*r)),
        Ast::Fst(m) => e::fst(to_ext(*m)),
        Ast::Snd(m) => e::snd(to_ext(*m)),
        Ast::Inl(ty, m) => e::inl(ty, to_ext(*m)),
        Ast::Inr(ty, m) => e::inr(ty, to_ext(*m)),
        Ast::Case(s, n1, n2) => e::case(to_ext(*s), to_ext(*n1), to_ext(*n2)),
    }
}

// Node spans in pre-order, matching the children order of the term types.
fn spans_of(n: &Node, out: &mut Vec<SourceSpan>) {
    out.push(n.span);
    match &n.ast {
        Ast::Var(_) => {}
        Ast::Lam(_, m) | Ast::Fst(m) | Ast::Snd(m) | Ast::Inl(_, m) | Ast::Inr(_, m) => spans_of(m, out),
        Ast::App(a, b) | Ast::Pair(a, b) => {
            spans_of(a, out);
            spans_of(b, out);
        }
        Ast::Case(a, b, c) => {
            spans_of(a, out);
            spans_of(b, out);
            spans_of(c, out);
        }
    }
}

fn parse_family(input: &str, flavor: Flavor) -> Result<Node, ParseError> {
    let mut p = Parser::new(input, flavor)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_lambda(input: &str) -> Result<Term, ParseError> {
    parse_family(input, Flavor::Untyped).map(to_untyped)
}

pub fn parse_stlc(input: &str) -> Result<TTerm, ParseError> {
    parse_family(input, Flavor::Typed).map(to_typed)
}

pub fn parse_stlcext(input: &str) -> Result<ETerm, ParseError> {
    parse_family(input, Flavor::Extended).map(to_ext)
}

/// A parsed term with the source span of each node, in pre-order.
#[derive(Debug, Clone)]
pub struct WithSpans<T> {
    pub term: T,
    pub spans: Vec<SourceSpan>,
}

fn with_spans<T>(input: &str, flavor: Flavor, conv: fn(Node) -> T) -> Result<WithSpans<T>, ParseError> {
    let n = parse_family(input, flavor)?;
    let mut spans = Vec::new();
    spans_of(&n, &mut spans);
    Ok(WithSpans { term: conv(n), spans })
}

pub fn parse_stlc_spanned(input: &str) -> Result<WithSpans<TTerm>, ParseError> {
    with_spans(input, Flavor::Typed, to_typed)
}

pub fn parse_stlcext_spanned(input: &str) -> Result<WithSpans<ETerm>, ParseError> {
    with_spans(input, Flavor::Extended, to_ext)
}

pub fn parse_ty(input: &str) -> Result<Ty, ParseError> {
    let mut p = Parser::new(input, Flavor::Typed)?;
    let t = p.ty()?;
    p.finish()?;
    Ok(to_simple_ty(t))
}

pub fn parse_ety(input: &str) -> Result<ETy, ParseError> {
    let mut p = Parser::new(input, Flavor::Extended)?;
    let t = p.ty()?;
    p.finish()?;
    Ok(t)
}

// ---------------------------------------------------------------------------
// SK, arithmetic and strings

pub fn parse_ski(input: &str) -> Result<CTerm, ParseError> {
    fn atom(p: &mut Parser) -> Result<CTerm, ParseError> {
        match p.peek().clone() {
            Tok::Ident(s) if s == "S" => {
                p.bump();
                Ok(CTerm::S)
            }
            Tok::Ident(s) if s == "K" => {
                p.bump();
                Ok(CTerm::K)
            }
            Tok::LParen => {
                p.bump();
                let t = app(p)?;
                p.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => Err(p.unexpected(&["`S`", "`K`", "`(`"])),
        }
    }
    fn app(p: &mut Parser) -> Result<CTerm, ParseError> {
        let mut acc = atom(p)?;
        while matches!(p.peek(), Tok::Ident(_) | Tok::LParen) {
            acc = capp(acc, atom(p)?);
        }
        Ok(acc)
    }
    let mut p = Parser::new(input, Flavor::Untyped)?;
    // `SK` lexes as one identifier; split combinator runs.
    p.toks = split_combinators(p.toks);
    let t = app(&mut p)?;
    p.finish()?;
    Ok(t)
}

fn split_combinators(toks: Vec<Spanned>) -> Vec<Spanned> {
    let mut out = Vec::with_capacity(toks.len());
    for t in toks {
        match &t.tok {
            Tok::Ident(s) if s.len() > 1 && s.chars().all(|c| c == 'S' || c == 'K') => {
                for (i, c) in s.char_indices() {
                    let mut span = t.span;
                    span.byte_start += i;
                    span.byte_end = span.byte_start + 1;
                    span.column += i;
                    out.push(Spanned { tok: Tok::Ident(c.to_string()), span });
                }
            }
            _ => out.push(t),
        }
    }
    out
}

pub fn parse_expr(input: &str) -> Result<Expr, ParseError> {
    fn atom(p: &mut Parser) -> Result<Expr, ParseError> {
        match p.peek().clone() {
            Tok::Num(0) => {
                p.bump();
                Ok(Expr::Zero)
            }
            Tok::Num(1) => {
                p.bump();
                Ok(Expr::One)
            }
            Tok::LParen => {
                p.bump();
                let e = sum(p)?;
                p.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Num(n) => Err(p.error(format!("only the constants 0 and 1 exist, found {n}"), &["`0`", "`1`"])),
            _ => Err(p.unexpected(&["`0`", "`1`", "`(`"])),
        }
    }
    fn product(p: &mut Parser) -> Result<Expr, ParseError> {
        let mut acc = atom(p)?;
        while *p.peek() == Tok::Star {
            p.bump();
            acc = crate::rewrite::mul(acc, atom(p)?);
        }
        Ok(acc)
    }
    fn sum(p: &mut Parser) -> Result<Expr, ParseError> {
        let mut acc = product(p)?;
        while *p.peek() == Tok::Plus {
            p.bump();
            acc = crate::rewrite::add(acc, product(p)?);
        }
        Ok(acc)
    }
    let mut p = Parser::new(input, Flavor::Untyped)?;
    let e = sum(&mut p)?;
    p.finish()?;
    Ok(e)
}

/// A word over `{a, b}`; surrounding whitespace is ignored and the empty word
/// is allowed.
pub fn parse_srs(input: &str) -> Result<String, ParseError> {
    let lead = input.len() - input.trim_start().len();
    let word = input.trim();
    for (i, ch) in word.char_indices() {
        if !matches!(ch, 'a' | 'b') {
            let at = lead + i;
            return Err(ParseError {
                span: span_at(input, at, at + ch.len_utf8()),
                message: format!("symbol {ch:?} is outside the alphabet {{a, b}}"),
                expected: vec!["`a`".into(), "`b`".into()],
            });
        }
    }
    Ok(word.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::{app, lam, var};
    use crate::stlcext::{ebase, sum as tsum};

    #[test]
    fn lambda_examples() {
        assert_eq!(parse_lambda("\\x. x").unwrap(), lam(var(0)));
        assert_eq!(parse_lambda("λx. λy. x").unwrap(), lam(lam(var(1))));
        assert_eq!(parse_lambda("(\\x.\\y.x) v5").unwrap(), app(lam(lam(var(1))), var(5)));
        assert_eq!(parse_lambda("\\. v0 v1").unwrap(), lam(app(var(0), var(1))));
        assert_eq!(parse_lambda("a b").unwrap_err().message, "unbound name `a`");
        assert_eq!(parse_lambda("omega").unwrap(), lambda::omega());
        assert_eq!(parse_lambda("v0 \\x. x v2").unwrap(), app(var(0), lam(app(var(0), var(2)))));
    }

    #[test]
    fn shadowing_resolves_innermost() {
        assert_eq!(parse_lambda("\\x. \\x. x").unwrap(), lam(lam(var(0))));
        assert_eq!(parse_lambda("\\id. id").unwrap(), lam(var(0)));
    }

    #[test]
    fn stlcext_example() {
        let t = parse_stlcext("fst (\\x:b0. x, \\y:b1. y)").unwrap();
        assert_eq!(t, e::fst(e::pair(e::lam(ebase(0), e::v(0)), e::lam(ebase(1), e::v(0)))));
        let c = parse_stlcext("\\s:b0+b1. case s of { inl x => x | inr => s }").unwrap();
        assert_eq!(c, e::lam(tsum(ebase(0), ebase(1)), e::case(e::v(0), e::v(0), e::v(1))));
    }

    #[test]
    fn srs_alphabet_error_has_span() {
        let err = parse_srs("abc").unwrap_err();
        assert_eq!(err.span.byte_start, 2);
        assert_eq!(err.span.column, 3);
        assert_eq!(parse_srs(" aab ").unwrap(), "aab");
    }

    #[test]
    fn error_positions() {
        let err = parse_stlc("\\x:b0.\n  x )").unwrap_err();
        assert_eq!((err.span.line, err.span.column), (2, 5));
        assert_eq!(err.expected, vec!["end of input"]);
        assert!(parse_stlc("\\x. x").is_err());
        assert!(parse_stlc("\\x:b0*b1. x").is_err());
        assert!(parse_stlcext("fst 0-ary-var").is_err());
    }

    #[test]
    fn ski_and_expr() {
        use crate::ski::{spine, CTerm::*};
        assert_eq!(parse_ski("K S K").unwrap(), spine([K, S, K]));
        assert_eq!(parse_ski("SKK").unwrap(), spine([S, K, K]));
        assert_eq!(parse_ski("S (K K)").unwrap(), capp(S, capp(K, K)));
        use crate::rewrite::{add, mul, Expr::*};
        assert_eq!(parse_expr("1 * 0 + 0").unwrap(), add(mul(One, Zero), Zero));
        assert_eq!(parse_expr("1*(0+0)").unwrap(), mul(One, add(Zero, Zero)));
        assert!(parse_expr("2").is_err());
    }

    #[test]
    fn types() {
        assert_eq!(parse_ty("b0 -> b1 -> b2").unwrap().to_string(), "b0 -> b1 -> b2");
        assert_eq!(parse_ty("(b0 -> b1) -> b2").unwrap().to_string(), "(b0 -> b1) -> b2");
        assert_eq!(parse_ety("b0 * b1 + b2 -> b0").unwrap().to_string(), "b0 * b1 + b2 -> b0");
        assert_eq!(parse_ety("b0 * (b1 + b2)").unwrap().to_string(), "b0 * (b1 + b2)");
    }

    #[test]
    fn unknown_system() {
        assert!(matches!(parse_named("fortran", "x"), Err(SurfaceError::UnknownSystem(_))));
    }

    #[test]
    fn node_spans_follow_preorder() {
        let input = "\\p:b0*b1. (snd p, v7)";
        let w = parse_stlcext_spanned(input).unwrap();
        assert_eq!(w.spans.len(), w.term.size());
        let text: Vec<&str> = w.spans.iter().map(|s| &input[s.byte_start..s.byte_end]).collect();
        assert_eq!(text, ["\\p:b0*b1. (snd p, v7)", "(snd p, v7)", "snd p", "p", "v7"]);
    }
}
