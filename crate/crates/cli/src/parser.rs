//! Recursive-descent parser and canonical printer for the expression
//! language.
//!
//! ```text
//! expr    := tensor (('+' | '-') tensor)*
//! tensor  := term ('(x)' term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' INT)?
//! primary := INT | name | name '(' args ')' | '[' expr ',' expr ']' | '(' expr ')'
//! ```
//!
//! All binary operators are left-associative and products need an explicit
//! `*`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::DslError;
use crate::lexer::{tokenize, Pos, Tok};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `I(x)`, the degree-zero generator.
    I,
    /// `J(x)`, the degree-one generator of the free model.
    J,
    /// `G(x) = x u` in the current algebra.
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    Nu,
    Delta,
    Box,
    S,
    Eps,
    T,
}

impl Builtin {
    pub const ALL: [Builtin; 6] = [Builtin::Nu, Builtin::Delta, Builtin::Box, Builtin::S, Builtin::Eps, Builtin::T];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Nu => "nu",
            Builtin::Delta => "Delta",
            Builtin::Box => "box",
            Builtin::S => "S",
            Builtin::Eps => "eps",
            Builtin::T => "T",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Int(BigUint),
    Hbar,
    /// The loop variable `u` of the current algebra.
    U,
    Omega,
    Name(String),
    Gen(Generator, Box<Expr>),
    Call(Builtin, Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Bracket(Box<Expr>, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
}

/// A syntax tree node with the position of its first token. Equality
/// ignores positions.
#[derive(Clone, Debug)]
pub struct Expr {
    pub node: Node,
    pub pos: Pos,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.node == other.node
    }
}

impl Expr {
    pub fn new(node: Node) -> Self {
        Self { node, pos: Pos::default() }
    }

    fn at(node: Node, pos: Pos) -> Self {
        Self { node, pos }
    }
}

pub fn parse(src: &str) -> Result<Expr, DslError> {
    let mut p = Parser { toks: tokenize(src)?, at: 0 };
    let e = p.expr()?;
    match p.peek() {
        Tok::Eof => Ok(e),
        t => Err(DslError::syntax(p.pos(), format!("unexpected {} after expression", t.describe()))),
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if t.0 != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), DslError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(DslError::syntax(self.pos(), format!("expected {}, found {}", want.describe(), self.peek().describe())))
        }
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.tensor()?;
        loop {
            let pos = lhs.pos;
            lhs = match self.peek() {
                Tok::Plus => {
                    self.bump();
                    Expr::at(Node::Add(Box::new(lhs), Box::new(self.tensor()?)), pos)
                }
                Tok::Minus => {
                    self.bump();
                    Expr::at(Node::Sub(Box::new(lhs), Box::new(self.tensor()?)), pos)
                }
                _ => return Ok(lhs),
            };
        }
    }

    fn tensor(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.term()?;
        while *self.peek() == Tok::Tensor {
            self.bump();
            let pos = lhs.pos;
            lhs = Expr::at(Node::Tensor(Box::new(lhs), Box::new(self.term()?)), pos);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, DslError> {
        let mut lhs = self.unary()?;
        loop {
            let pos = lhs.pos;
            lhs = match self.peek() {
                Tok::Star => {
                    self.bump();
                    Expr::at(Node::Mul(Box::new(lhs), Box::new(self.unary()?)), pos)
                }
                Tok::Slash => {
                    self.bump();
                    Expr::at(Node::Div(Box::new(lhs), Box::new(self.unary()?)), pos)
                }
                _ => return Ok(lhs),
            };
        }
    }

    fn unary(&mut self) -> Result<Expr, DslError> {
        if *self.peek() == Tok::Minus {
            let (_, pos) = self.bump();
            return Ok(Expr::at(Node::Neg(Box::new(self.unary()?)), pos));
        }
        let base = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump().0 {
            Tok::Int(n) => {
                let k = n.to_u32().ok_or_else(|| DslError::syntax(pos, "exponent too large"))?;
                let p = base.pos;
                Ok(Expr::at(Node::Pow(Box::new(base), k), p))
            }
            t => Err(DslError::syntax(pos, format!("expected an integer exponent, found {}", t.describe()))),
        }
    }

    fn primary(&mut self) -> Result<Expr, DslError> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Int(n) => Ok(Expr::at(Node::Int(n), pos)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::LBracket => {
                let a = self.expr()?;
                self.expect(Tok::Comma)?;
                let b = self.expr()?;
                self.expect(Tok::RBracket)?;
                Ok(Expr::at(Node::Bracket(Box::new(a), Box::new(b)), pos))
            }
            Tok::Ident(name) => self.named(name, pos),
            t => Err(DslError::syntax(pos, format!("expected an expression, found {}", t.describe()))),
        }
    }

    fn args(&mut self) -> Result<Option<Vec<Expr>>, DslError> {
        if *self.peek() != Tok::LParen {
            return Ok(None);
        }
        self.bump();
        let mut out = Vec::new();
        if *self.peek() != Tok::RParen {
            out.push(self.expr()?);
            while *self.peek() == Tok::Comma {
                self.bump();
                out.push(self.expr()?);
            }
        }
        self.expect(Tok::RParen)?;
        Ok(Some(out))
    }

    fn named(&mut self, name: String, pos: Pos) -> Result<Expr, DslError> {
        let generator = match name.as_str() {
            "I" => Some(Generator::I),
            "J" => Some(Generator::J),
            "G" => Some(Generator::G),
            _ => None,
        };
        let builtin = Builtin::ALL.into_iter().find(|b| b.name() == name);
        let nullary = match name.as_str() {
            "hbar" => Some(Node::Hbar),
            "u" => Some(Node::U),
            "Omega" => Some(Node::Omega),
            _ => None,
        };
        let args = self.args()?;
        let arity = |expected: usize, got: usize| DslError::Arity { pos, name: name.clone(), expected, got };
        if let Some(node) = nullary {
            return match args {
                None => Ok(Expr::at(node, pos)),
                Some(a) => Err(arity(0, a.len())),
            };
        }
        if generator.is_none() && builtin.is_none() {
            return match args {
                None => Ok(Expr::at(Node::Name(name), pos)),
                Some(_) => Err(DslError::syntax(pos, format!("`{name}` is not a function"))),
            };
        }
        let mut args = args.unwrap_or_default();
        if args.len() != 1 {
            return Err(arity(1, args.len()));
        }
        let arg = Box::new(args.pop().expect("one argument"));
        Ok(Expr::at(
            match (generator, builtin) {
                (Some(g), _) => Node::Gen(g, arg),
                (_, Some(b)) => Node::Call(b, arg),
                _ => unreachable!(),
            },
            pos,
        ))
    }
}

// Printing. Each node has a binding level; children whose level is too
// low for their slot are parenthesised.
const SUM: u8 = 0;
const TENSOR: u8 = 1;
const PRODUCT: u8 = 2;
const UNARY: u8 = 3;
const ATOM: u8 = 5;

fn level(n: &Node) -> u8 {
    match n {
        Node::Add(..) | Node::Sub(..) => SUM,
        Node::Tensor(..) => TENSOR,
        Node::Mul(..) | Node::Div(..) => PRODUCT,
        Node::Neg(..) => UNARY,
        Node::Pow(..) => 4,
        _ => ATOM,
    }
}

struct At<'a>(&'a Expr, u8);

impl fmt::Display for At<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if level(&self.0.node) < self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::I => "I",
            Generator::J => "J",
            Generator::G => "G",
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.node {
            Node::Int(n) => write!(f, "{n}"),
            Node::Hbar => f.write_str("hbar"),
            Node::U => f.write_str("u"),
            Node::Omega => f.write_str("Omega"),
            Node::Name(s) => f.write_str(s),
            Node::Gen(g, a) => write!(f, "{g}({a})"),
            Node::Call(b, a) => write!(f, "{}({a})", b.name()),
            Node::Neg(a) => write!(f, "-{}", At(a, UNARY)),
            Node::Add(a, b) => write!(f, "{} + {}", At(a, SUM), At(b, TENSOR)),
            Node::Sub(a, b) => write!(f, "{} - {}", At(a, SUM), At(b, TENSOR)),
            Node::Tensor(a, b) => write!(f, "{} (x) {}", At(a, TENSOR), At(b, PRODUCT)),
            Node::Mul(a, b) => write!(f, "{}*{}", At(a, PRODUCT), At(b, UNARY)),
            Node::Div(a, b) => write!(f, "{}/{}", At(a, PRODUCT), At(b, UNARY)),
            Node::Pow(a, k) => write!(f, "{}^{k}", At(a, ATOM)),
            Node::Bracket(a, b) => write!(f, "[{a}, {b}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn name(s: &str) -> Box<Expr> {
        Box::new(Expr::new(Node::Name(s.into())))
    }

    fn gen(g: Generator, s: &str) -> Box<Expr> {
        Box::new(Expr::new(Node::Gen(g, name(s))))
    }

    #[test]
    fn bracket_of_generators() {
        let e = parse("[J(e), J(f)]").unwrap();
        assert_eq!(e, Expr::new(Node::Bracket(gen(Generator::J, "e"), gen(Generator::J, "f"))));
        assert_eq!(e.to_string(), "[J(e), J(f)]");
    }

    #[test]
    fn precedence_and_associativity() {
        let e = parse("a - b - c*d^2 (x) e").unwrap();
        assert_eq!(e.to_string(), "a - b - c*d^2 (x) e");
        let Node::Sub(lhs, rhs) = &e.node else { panic!("{e:?}") };
        assert!(matches!(lhs.node, Node::Sub(..)));
        assert!(matches!(rhs.node, Node::Tensor(..)));
        assert_eq!(parse("(a + b)*c").unwrap().to_string(), "(a + b)*c");
        assert_eq!(parse("a*(b*c)").unwrap().to_string(), "a*(b*c)");
        assert_eq!(parse("-(1/2)*hbar").unwrap().to_string(), "-(1/2)*hbar");
    }

    #[test]
    fn casimir_and_defect_parse() {
        let omega = parse("(1/2)*h (x) h + e (x) f + f (x) e").unwrap();
        assert!(matches!(omega.node, Node::Add(..)));
        let d = parse("[[J(e),J(f)],J(h)] - hbar^2*(I(f)*J(e)-J(f)*I(e))*I(h)").unwrap();
        assert_eq!(d.to_string(), "[[J(e), J(f)], J(h)] - hbar^2*(I(f)*J(e) - J(f)*I(e))*I(h)");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse("[e,\n f").unwrap_err();
        assert_eq!(err.pos(), Some(Pos { line: 2, col: 3 }));
        assert!(matches!(parse("e f"), Err(DslError::Syntax { pos: Pos { line: 1, col: 3 }, .. })));
        assert!(matches!(parse("e ^ f"), Err(DslError::Syntax { .. })));
    }

    #[test]
    fn builtin_arities() {
        assert!(matches!(parse("Delta(e, f)"), Err(DslError::Arity { expected: 1, got: 2, .. })));
        assert!(matches!(parse("Omega(e)"), Err(DslError::Arity { expected: 0, got: 1, .. })));
        assert!(matches!(parse("nu"), Err(DslError::Arity { expected: 1, got: 0, .. })));
        assert!(matches!(parse("J()"), Err(DslError::Arity { expected: 1, got: 0, .. })));
        assert!(parse("S(J(e)) + eps(e) + box(T(e))").is_ok());
    }
}
