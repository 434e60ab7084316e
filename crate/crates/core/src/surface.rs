//! S-expression surface syntax.
//!
//! Every node is a parenthesized list headed by a lowercase keyword; levels
//! and indices are decimal naturals; `;` starts a comment running to the end
//! of the line. There are no named binders. Sugar: `(v n)` for `q[pⁿ]`,
//! `(arrow A B)` for `Π A (B[p])`, `(dollar t A u)` for `(app t)[id, u]` with
//! `A` the domain, and `(lift A σ)` for `(σ ∘ p, q)` over `A`. Printing
//! re-introduces only the `v` sugar.

use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::syntax::{Ctx, Level, Sub, Tm, Ty};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedEof,
    UnexpectedChar(char),
    UnbalancedClose,
    TrailingInput,
    UnknownKeyword(String),
    Arity {
        keyword: String,
        expected: usize,
        found: usize,
    },
    ExpectedNumber(String),
    WrongSort {
        keyword: String,
        expected: &'static str,
    },
    ExpectedList,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedEof => write!(f, "unexpected end of input"),
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnbalancedClose => write!(f, "unbalanced ')'"),
            ParseErrorKind::TrailingInput => write!(f, "trailing input after the directive"),
            ParseErrorKind::UnknownKeyword(k) => write!(f, "unknown keyword {k:?}"),
            ParseErrorKind::Arity {
                keyword,
                expected,
                found,
            } => write!(f, "{keyword} takes {expected} argument(s), found {found}"),
            ParseErrorKind::ExpectedNumber(s) => write!(f, "expected a natural number, found {s:?}"),
            ParseErrorKind::WrongSort { keyword, expected } => {
                write!(f, "{keyword} is not a {expected}")
            }
            ParseErrorKind::ExpectedList => write!(f, "expected a parenthesized form"),
        }
    }
}

type Result<T> = std::result::Result<T, ParseError>;

#[derive(Clone, Debug)]
enum SExp {
    Atom(String, usize, usize),
    List(Vec<SExp>, usize, usize),
}

impl SExp {
    fn pos(&self) -> (usize, usize) {
        match self {
            SExp::Atom(_, l, c) | SExp::List(_, l, c) => (*l, *c),
        }
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        let (line, col) = self.pos();
        ParseError { line, col, kind }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            chars: src.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == ';' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col,
            kind,
        }
    }

    fn sexp(&mut self) -> Result<SExp> {
        self.skip_trivia();
        let (line, col) = (self.line, self.col);
        match self.chars.peek().copied() {
            None => Err(self.error(ParseErrorKind::UnexpectedEof)),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.chars.peek() {
                        None => return Err(self.error(ParseErrorKind::UnexpectedEof)),
                        Some(')') => {
                            self.bump();
                            return Ok(SExp::List(items, line, col));
                        }
                        Some(_) => items.push(self.sexp()?),
                    }
                }
            }
            Some(')') => Err(self.error(ParseErrorKind::UnbalancedClose)),
            Some(c) if is_atom_char(c) => {
                let mut s = String::new();
                while let Some(&c) = self.chars.peek() {
                    if !is_atom_char(c) {
                        break;
                    }
                    s.push(c);
                    self.bump();
                }
                Ok(SExp::Atom(s, line, col))
            }
            Some(c) => Err(self.error(ParseErrorKind::UnexpectedChar(c))),
        }
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_trivia();
        match self.chars.peek() {
            None => Ok(()),
            Some(_) => Err(self.error(ParseErrorKind::TrailingInput)),
        }
    }
}

fn is_atom_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '-' || c == '_'
}

fn parse_one(src: &str) -> Result<SExp> {
    let mut lx = Lexer::new(src);
    let e = lx.sexp()?;
    lx.finish()?;
    Ok(e)
}

/// Any parsed entity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entity {
    Ctx(Ctx),
    Sub(Sub),
    Ty(Ty),
    Tm(Tm),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sort {
    Ctx,
    Sub,
    Ty,
    Tm,
}

fn sort_name(s: Sort) -> &'static str {
    match s {
        Sort::Ctx => "context",
        Sort::Sub => "substitution",
        Sort::Ty => "type",
        Sort::Tm => "term",
    }
}

fn keyword_sort(k: &str) -> Option<Sort> {
    Some(match k {
        "ctx" => Sort::Ctx,
        "id" | "comp" | "eps" | "ext" | "p" | "lift" => Sort::Sub,
        "tysub" | "pi" | "sigma" | "top" | "u" | "el" | "bool" | "idt" | "arrow" => Sort::Ty,
        "tmsub" | "q" | "lam" | "app" | "pair" | "fst" | "snd" | "tt" | "code" | "true"
        | "false" | "if" | "refl" | "j" | "v" | "dollar" => Sort::Tm,
        _ => return None,
    })
}

fn head(e: &SExp) -> Result<(&str, &[SExp])> {
    match e {
        SExp::List(items, ..) => match items.split_first() {
            Some((SExp::Atom(k, ..), rest)) => Ok((k.as_str(), rest)),
            _ => Err(e.err(ParseErrorKind::ExpectedList)),
        },
        SExp::Atom(..) => Err(e.err(ParseErrorKind::ExpectedList)),
    }
}

fn arity(e: &SExp, k: &str, args: &[SExp], n: usize) -> Result<()> {
    if args.len() == n {
        Ok(())
    } else {
        Err(e.err(ParseErrorKind::Arity {
            keyword: k.to_string(),
            expected: n,
            found: args.len(),
        }))
    }
}

fn number(e: &SExp) -> Result<u32> {
    match e {
        SExp::Atom(s, ..) => s
            .parse::<u32>()
            .map_err(|_| e.err(ParseErrorKind::ExpectedNumber(s.clone()))),
        SExp::List(..) => Err(e.err(ParseErrorKind::ExpectedNumber("(...)".into()))),
    }
}

fn entity(e: &SExp) -> Result<Entity> {
    let (k, _) = head(e)?;
    match keyword_sort(k) {
        Some(Sort::Ctx) => ctx(e).map(Entity::Ctx),
        Some(Sort::Sub) => sub(e).map(Entity::Sub),
        Some(Sort::Ty) => ty(e).map(Entity::Ty),
        Some(Sort::Tm) => tm(e).map(Entity::Tm),
        None => Err(e.err(ParseErrorKind::UnknownKeyword(k.into()))),
    }
}

fn expect_sort(e: &SExp, k: &str, want: Sort) -> Result<()> {
    match keyword_sort(k) {
        None => Err(e.err(ParseErrorKind::UnknownKeyword(k.into()))),
        Some(s) if s == want => Ok(()),
        Some(_) => Err(e.err(ParseErrorKind::WrongSort {
            keyword: k.into(),
            expected: sort_name(want),
        })),
    }
}

fn ctx(e: &SExp) -> Result<Ctx> {
    let (k, args) = head(e)?;
    expect_sort(e, k, Sort::Ctx)?;
    args.iter().map(ty).collect()
}

fn sub(e: &SExp) -> Result<Sub> {
    let (k, a) = head(e)?;
    expect_sort(e, k, Sort::Sub)?;
    let n = |n| arity(e, k, a, n);
    Ok(match k {
        "id" => {
            n(0)?;
            Sub::Id
        }
        "comp" => {
            n(2)?;
            Sub::comp(sub(&a[0])?, sub(&a[1])?)
        }
        "eps" => {
            n(0)?;
            Sub::Eps
        }
        "ext" => {
            n(3)?;
            Sub::ext(sub(&a[0])?, ty(&a[1])?, tm(&a[2])?)
        }
        "p" => {
            n(0)?;
            Sub::P
        }
        "lift" => {
            n(2)?;
            Sub::lift(sub(&a[1])?, ty(&a[0])?)
        }
        _ => unreachable!(),
    })
}

fn ty(e: &SExp) -> Result<Ty> {
    let (k, a) = head(e)?;
    expect_sort(e, k, Sort::Ty)?;
    let n = |n| arity(e, k, a, n);
    Ok(match k {
        "tysub" => {
            n(2)?;
            ty(&a[0])?.sub(sub(&a[1])?)
        }
        "pi" => {
            n(2)?;
            Ty::pi(ty(&a[0])?, ty(&a[1])?)
        }
        "sigma" => {
            n(2)?;
            Ty::sigma(ty(&a[0])?, ty(&a[1])?)
        }
        "top" => {
            n(0)?;
            Ty::Top
        }
        "u" => {
            n(1)?;
            Ty::U(Level(number(&a[0])?))
        }
        "el" => {
            n(1)?;
            Ty::el(tm(&a[0])?)
        }
        "bool" => {
            n(0)?;
            Ty::Bool
        }
        "idt" => {
            n(3)?;
            Ty::id(ty(&a[0])?, tm(&a[1])?, tm(&a[2])?)
        }
        "arrow" => {
            n(2)?;
            Ty::arrow(ty(&a[0])?, ty(&a[1])?)
        }
        _ => unreachable!(),
    })
}

fn tm(e: &SExp) -> Result<Tm> {
    let (k, a) = head(e)?;
    expect_sort(e, k, Sort::Tm)?;
    let n = |n| arity(e, k, a, n);
    Ok(match k {
        "tmsub" => {
            n(2)?;
            tm(&a[0])?.sub(sub(&a[1])?)
        }
        "q" => {
            n(0)?;
            Tm::Q
        }
        "lam" => {
            n(2)?;
            Tm::lam(ty(&a[0])?, tm(&a[1])?)
        }
        "app" => {
            n(1)?;
            Tm::app(tm(&a[0])?)
        }
        "pair" => {
            n(4)?;
            Tm::pair(ty(&a[0])?, ty(&a[1])?, tm(&a[2])?, tm(&a[3])?)
        }
        "fst" => {
            n(1)?;
            Tm::fst(tm(&a[0])?)
        }
        "snd" => {
            n(1)?;
            Tm::snd(tm(&a[0])?)
        }
        "tt" => {
            n(0)?;
            Tm::Tt
        }
        "code" => {
            n(1)?;
            Tm::code(ty(&a[0])?)
        }
        "true" => {
            n(0)?;
            Tm::True
        }
        "false" => {
            n(0)?;
            Tm::False
        }
        "if" => {
            n(4)?;
            Tm::ite(ty(&a[0])?, tm(&a[1])?, tm(&a[2])?, tm(&a[3])?)
        }
        "refl" => {
            n(1)?;
            Tm::refl(tm(&a[0])?)
        }
        "j" => {
            n(3)?;
            Tm::j(ty(&a[0])?, tm(&a[1])?, tm(&a[2])?)
        }
        "v" => {
            n(1)?;
            Tm::var(number(&a[0])? as usize)
        }
        "dollar" => {
            n(3)?;
            Tm::apply1(tm(&a[0])?, ty(&a[1])?, tm(&a[2])?)
        }
        _ => unreachable!(),
    })
}

pub fn parse_entity(src: &str) -> Result<Entity> {
    entity(&parse_one(src)?)
}

pub fn parse_ctx(src: &str) -> Result<Ctx> {
    ctx(&parse_one(src)?)
}

pub fn parse_sub(src: &str) -> Result<Sub> {
    sub(&parse_one(src)?)
}

pub fn parse_ty(src: &str) -> Result<Ty> {
    ty(&parse_one(src)?)
}

pub fn parse_tm(src: &str) -> Result<Tm> {
    tm(&parse_one(src)?)
}

/// A context-relative entity for the translation directives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subject {
    Ctx(Ctx),
    Ty(Ctx, Ty),
    Sub(Ctx, Sub),
    Tm(Ctx, Tm),
}

/// One top-level command of an input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Directive {
    CheckTm(Ctx, Tm),
    CheckTy(Ctx, Ty),
    Nf(Ctx, Tm),
    ConvTm(Ctx, Ty, Tm, Tm),
    ConvTy(Ctx, Ty, Ty),
    ConvSub(Ctx, Ctx, Sub, Sub),
    Termify(Subject),
    Param(Subject),
    Canon(Tm),
    Inject(Subject),
}

fn subject(e: &SExp, k: &str, a: &[SExp]) -> Result<Subject> {
    match a.len() {
        1 => Ok(Subject::Ctx(ctx(&a[0])?)),
        2 => {
            let c = ctx(&a[0])?;
            Ok(match entity(&a[1])? {
                Entity::Ctx(_) => {
                    return Err(a[1].err(ParseErrorKind::WrongSort {
                        keyword: "ctx".into(),
                        expected: "type, substitution or term",
                    }))
                }
                Entity::Ty(t) => Subject::Ty(c, t),
                Entity::Sub(s) => Subject::Sub(c, s),
                Entity::Tm(t) => Subject::Tm(c, t),
            })
        }
        found => Err(e.err(ParseErrorKind::Arity {
            keyword: k.into(),
            expected: 2,
            found,
        })),
    }
}

pub fn parse_directive(src: &str) -> Result<Directive> {
    let e = parse_one(src)?;
    let (k, a) = head(&e)?;
    let n = |n| arity(&e, k, a, n);
    Ok(match k {
        "check-tm" => {
            n(2)?;
            Directive::CheckTm(ctx(&a[0])?, tm(&a[1])?)
        }
        "check-ty" => {
            n(2)?;
            Directive::CheckTy(ctx(&a[0])?, ty(&a[1])?)
        }
        "nf" => {
            n(2)?;
            Directive::Nf(ctx(&a[0])?, tm(&a[1])?)
        }
        "conv-tm" => {
            n(4)?;
            Directive::ConvTm(ctx(&a[0])?, ty(&a[1])?, tm(&a[2])?, tm(&a[3])?)
        }
        "conv-ty" => {
            n(3)?;
            Directive::ConvTy(ctx(&a[0])?, ty(&a[1])?, ty(&a[2])?)
        }
        "conv-sub" => {
            n(4)?;
            Directive::ConvSub(ctx(&a[0])?, ctx(&a[1])?, sub(&a[2])?, sub(&a[3])?)
        }
        "termify" => Directive::Termify(subject(&e, k, a)?),
        "param" => Directive::Param(subject(&e, k, a)?),
        "inject" => Directive::Inject(subject(&e, k, a)?),
        "canon" => {
            n(1)?;
            Directive::Canon(tm(&a[0])?)
        }
        _ => return Err(e.err(ParseErrorKind::UnknownKeyword(k.into()))),
    })
}

// Printing.

struct Printer(String);

impl Printer {
    fn open(&mut self, k: &str) {
        self.0.push('(');
        self.0.push_str(k);
    }

    fn close(&mut self) {
        self.0.push(')');
    }

    fn sp(&mut self) {
        self.0.push(' ');
    }

    fn atom(&mut self, k: &str) {
        self.open(k);
        self.close();
    }

    fn ctx(&mut self, c: &Ctx) {
        self.open("ctx");
        for t in c.entries() {
            self.sp();
            self.ty(t);
        }
        self.close();
    }

    fn sub(&mut self, s: &Sub) {
        match s {
            Sub::Id => self.atom("id"),
            Sub::Comp(a, b) => {
                self.open("comp");
                self.sp();
                self.sub(a);
                self.sp();
                self.sub(b);
                self.close();
            }
            Sub::Eps => self.atom("eps"),
            Sub::Ext(a, t, u) => {
                self.open("ext");
                self.sp();
                self.sub(a);
                self.sp();
                self.ty(t);
                self.sp();
                self.tm(u);
                self.close();
            }
            Sub::P => self.atom("p"),
        }
    }

    fn ty(&mut self, t: &Ty) {
        match t {
            Ty::Subst(a, s) => {
                self.open("tysub");
                self.sp();
                self.ty(a);
                self.sp();
                self.sub(s);
                self.close();
            }
            Ty::Pi(a, b) | Ty::Sigma(a, b) => {
                self.open(if matches!(t, Ty::Pi(..)) { "pi" } else { "sigma" });
                self.sp();
                self.ty(a);
                self.sp();
                self.ty(b);
                self.close();
            }
            Ty::Top => self.atom("top"),
            Ty::U(i) => {
                self.open("u");
                self.sp();
                self.0.push_str(&i.0.to_string());
                self.close();
            }
            Ty::El(a) => {
                self.open("el");
                self.sp();
                self.tm(a);
                self.close();
            }
            Ty::Bool => self.atom("bool"),
            Ty::Id(a, u, v) => {
                self.open("idt");
                self.sp();
                self.ty(a);
                self.sp();
                self.tm(u);
                self.sp();
                self.tm(v);
                self.close();
            }
        }
    }

    fn tm(&mut self, t: &Tm) {
        if let Some(n) = t.as_var() {
            if n > 0 {
                self.open("v");
                self.sp();
                self.0.push_str(&n.to_string());
                self.close();
                return;
            }
        }
        match t {
            Tm::Subst(a, s) => {
                self.open("tmsub");
                self.sp();
                self.tm(a);
                self.sp();
                self.sub(s);
                self.close();
            }
            Tm::Q => self.atom("q"),
            Tm::Lam(a, b) => {
                self.open("lam");
                self.sp();
                self.ty(a);
                self.sp();
                self.tm(b);
                self.close();
            }
            Tm::App(a) => self.unary("app", a),
            Tm::Pair(a, b, u, v) => {
                self.open("pair");
                self.sp();
                self.ty(a);
                self.sp();
                self.ty(b);
                self.sp();
                self.tm(u);
                self.sp();
                self.tm(v);
                self.close();
            }
            Tm::Fst(a) => self.unary("fst", a),
            Tm::Snd(a) => self.unary("snd", a),
            Tm::Tt => self.atom("tt"),
            Tm::Code(a) => {
                self.open("code");
                self.sp();
                self.ty(a);
                self.close();
            }
            Tm::True => self.atom("true"),
            Tm::False => self.atom("false"),
            Tm::If(c, u, v, b) => {
                self.open("if");
                self.sp();
                self.ty(c);
                for x in [u, v, b] {
                    self.sp();
                    self.tm(x);
                }
                self.close();
            }
            Tm::Refl(a) => self.unary("refl", a),
            Tm::J(c, w, e) => {
                self.open("j");
                self.sp();
                self.ty(c);
                self.sp();
                self.tm(w);
                self.sp();
                self.tm(e);
                self.close();
            }
        }
    }

    fn unary(&mut self, k: &str, a: &Rc<Tm>) {
        self.open(k);
        self.sp();
        self.tm(a);
        self.close();
    }
}

pub fn print_ctx(c: &Ctx) -> String {
    let mut p = Printer(String::new());
    p.ctx(c);
    p.0
}

pub fn print_sub(s: &Sub) -> String {
    let mut p = Printer(String::new());
    p.sub(s);
    p.0
}

pub fn print_ty(t: &Ty) -> String {
    let mut p = Printer(String::new());
    p.ty(t);
    p.0
}

pub fn print_tm(t: &Tm) -> String {
    let mut p = Printer(String::new());
    p.tm(t);
    p.0
}

pub fn print_entity(e: &Entity) -> String {
    match e {
        Entity::Ctx(c) => print_ctx(c),
        Entity::Sub(s) => print_sub(s),
        Entity::Ty(t) => print_ty(t),
        Entity::Tm(t) => print_tm(t),
    }
}

fn print_subject(out: &mut String, s: &Subject) {
    let (c, rest) = match s {
        Subject::Ctx(c) => (c, None),
        Subject::Ty(c, t) => (c, Some(print_ty(t))),
        Subject::Sub(c, t) => (c, Some(print_sub(t))),
        Subject::Tm(c, t) => (c, Some(print_tm(t))),
    };
    out.push(' ');
    out.push_str(&print_ctx(c));
    if let Some(r) = rest {
        out.push(' ');
        out.push_str(&r);
    }
}

pub fn print_directive(d: &Directive) -> String {
    let parts: (&str, Vec<String>) = match d {
        Directive::CheckTm(c, t) => ("check-tm", vec![print_ctx(c), print_tm(t)]),
        Directive::CheckTy(c, t) => ("check-ty", vec![print_ctx(c), print_ty(t)]),
        Directive::Nf(c, t) => ("nf", vec![print_ctx(c), print_tm(t)]),
        Directive::ConvTm(c, a, t, u) => (
            "conv-tm",
            vec![print_ctx(c), print_ty(a), print_tm(t), print_tm(u)],
        ),
        Directive::ConvTy(c, a, b) => ("conv-ty", vec![print_ctx(c), print_ty(a), print_ty(b)]),
        Directive::ConvSub(c, d, s, t) => (
            "conv-sub",
            vec![print_ctx(c), print_ctx(d), print_sub(s), print_sub(t)],
        ),
        Directive::Canon(t) => ("canon", vec![print_tm(t)]),
        Directive::Termify(s) | Directive::Param(s) | Directive::Inject(s) => {
            let k = match d {
                Directive::Termify(_) => "termify",
                Directive::Param(_) => "param",
                _ => "inject",
            };
            let mut out = format!("({k}");
            print_subject(&mut out, s);
            out.push(')');
            return out;
        }
    };
    let mut out = format!("({}", parts.0);
    for p in parts.1 {
        out.push(' ');
        out.push_str(&p);
    }
    out.push(')');
    out
}

impl fmt::Display for Ctx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_ctx(self))
    }
}

impl fmt::Display for Sub {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_sub(self))
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_ty(self))
    }
}

impl fmt::Display for Tm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_tm(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_lam() {
        assert_eq!(
            parse_tm("(lam (bool) (q))").unwrap(),
            Tm::lam(Ty::Bool, Tm::Q)
        );
    }

    #[test]
    fn v_sugar() {
        assert_eq!(parse_tm("(v 1)").unwrap(), Tm::Q.sub(Sub::P));
        assert_eq!(parse_tm("(v 0)").unwrap(), Tm::Q);
        assert_eq!(print_tm(&Tm::Q.sub(Sub::comp(Sub::P, Sub::P))), "(v 2)");
    }

    #[test]
    fn idfun_body() {
        let t = parse_tm("(lam (u 0) (lam (el (q)) (q)))").unwrap();
        assert_eq!(t, Tm::lam(Ty::U(Level(0)), Tm::lam(Ty::el(Tm::Q), Tm::Q)));
    }

    #[test]
    fn printing_is_canonical() {
        assert_eq!(print_tm(&Tm::True), "(true)");
        let src = "  (lam  (bool) ; comment\n (tmsub (q) (p)) )";
        assert_eq!(print_tm(&parse_tm(src).unwrap()), "(lam (bool) (v 1))");
        assert_eq!(print_ty(&parse_ty("(arrow (bool) (top))").unwrap()), "(pi (bool) (tysub (top) (p)))");
    }

    #[test]
    fn errors_have_positions() {
        let e = parse_tm("(lam (bool)\n  (frob))").unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
        assert_eq!(e.kind, ParseErrorKind::UnknownKeyword("frob".into()));
        let e = parse_tm("(app (q) (q))").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Arity { expected: 1, found: 2, .. }));
        let e = parse_tm("(bool)").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::WrongSort { .. }));
        assert_eq!(parse_tm("(q").unwrap_err().kind, ParseErrorKind::UnexpectedEof);
        assert_eq!(parse_tm("(q) (q)").unwrap_err().kind, ParseErrorKind::TrailingInput);
    }

    #[test]
    fn directive_round_trip() {
        let src = "(conv-tm (ctx) (pi (bool) (tysub (bool) (p))) (lam (bool) (q)) (lam (bool) (q)))";
        let d = parse_directive(src).unwrap();
        assert_eq!(print_directive(&d), src);
        let src = "(termify (ctx (bool)) (p))";
        assert_eq!(print_directive(&parse_directive(src).unwrap()), src);
    }
}
