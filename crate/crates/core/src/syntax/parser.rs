use super::formula::{Formula, QuantKind};
use super::sugar::{self, Atom, ExtTerm, Func};
use super::term::{from_binary, Term};
use super::SyntaxError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(String),
    Bin(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Prime,
    Plus,
    Star,
    Caret,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Not,
    And,
    Or,
    Imp,
    Iff,
    Bar,
    Turnstile,
    /// `⊓`: `cand` when infix, `call` when prefix.
    Meet,
    /// `⊔`: `cor` when infix, `cex` when prefix.
    Join,
    Forall,
    Exists,
}

const KEYWORDS: &[&str] = &["all", "ex", "call", "cex", "cand", "cor", "Bit"];

pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s) || Func::from_name(s).is_some()
}

pub fn lex(src: &str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let at = |k: usize| chars.get(k).map(|c| c.1);
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let starts = |s: &str| src[pos..].starts_with(s);
        let (tok, len) = if starts("|o-") {
            (Tok::Turnstile, 3)
        } else if starts("<->") {
            (Tok::Iff, 3)
        } else if starts("->") {
            (Tok::Imp, 2)
        } else if starts("<=") {
            (Tok::Le, 2)
        } else if starts(">=") {
            (Tok::Ge, 2)
        } else if starts("!=") {
            (Tok::Ne, 2)
        } else if c == '#' {
            let mut j = i + 1;
            while matches!(at(j), Some('0') | Some('1')) {
                j += 1;
            }
            let digits: String = chars[i + 1..j].iter().map(|c| c.1).collect();
            out.push((Tok::Bin(digits), pos));
            i = j;
            continue;
        } else if c.is_ascii_digit() {
            let mut j = i;
            while at(j).is_some_and(|d| d.is_ascii_digit()) {
                j += 1;
            }
            let digits: String = chars[i..j].iter().map(|c| c.1).collect();
            out.push((Tok::Num(digits), pos));
            i = j;
            continue;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while at(j).is_some_and(|d| d.is_ascii_alphanumeric() || d == '_') {
                j += 1;
            }
            let word: String = chars[i..j].iter().map(|c| c.1).collect();
            out.push((Tok::Ident(word), pos));
            i = j;
            continue;
        } else {
            let t = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                '.' => Tok::Dot,
                '\'' | '′' => Tok::Prime,
                '+' => Tok::Plus,
                '*' | '×' => Tok::Star,
                '^' => Tok::Caret,
                '=' => Tok::Eq,
                '≠' => Tok::Ne,
                '<' => Tok::Lt,
                '≤' => Tok::Le,
                '>' => Tok::Gt,
                '≥' => Tok::Ge,
                '~' | '¬' => Tok::Not,
                '&' | '∧' => Tok::And,
                '|' => Tok::Bar,
                '∨' => Tok::Or,
                '→' => Tok::Imp,
                '↔' => Tok::Iff,
                '⊢' => Tok::Turnstile,
                '⊓' => Tok::Meet,
                '⊔' => Tok::Join,
                '∀' => Tok::Forall,
                '∃' => Tok::Exists,
                _ => {
                    return Err(SyntaxError::Parse { pos, msg: format!("unexpected character '{c}'") })
                }
            };
            (t, 1)
        };
        out.push((tok, pos));
        i += len;
    }
    Ok(out)
}

pub struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    pub fn new(src: &str) -> Result<Parser, SyntaxError> {
        Ok(Parser { toks: lex(src)?, pos: 0, end: src.len() })
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.0)
    }

    pub fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end)
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn error<T>(&self, msg: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError::Parse { pos: self.offset(), msg: msg.into() })
    }

    pub fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, t: &Tok, what: &str) -> Result<(), SyntaxError> {
        if self.eat(t) {
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == w) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn ident(&mut self) -> Result<String, SyntaxError> {
        match self.peek() {
            Some(Tok::Ident(s)) if !is_keyword(s) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.error("expected variable"),
        }
    }

    pub fn formula(&mut self) -> Result<Formula, SyntaxError> {
        self.imp()
    }

    fn imp(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Imp) {
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        if self.eat(&Tok::Iff) {
            let rhs = self.or()?;
            return Ok(sugar::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.and()?;
        if self.eat(&Tok::Bar) || self.eat(&Tok::Or) {
            let rhs = self.or()?;
            return Ok(Formula::or(lhs, rhs));
        }
        if self.eat_word("cor") || self.eat(&Tok::Join) {
            let rhs = self.or()?;
            return Ok(Formula::cor(lhs, rhs));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, SyntaxError> {
        let lhs = self.unary()?;
        if self.eat(&Tok::And) {
            let rhs = self.and()?;
            return Ok(Formula::and(lhs, rhs));
        }
        if self.eat_word("cand") || self.eat(&Tok::Meet) {
            let rhs = self.and()?;
            return Ok(Formula::cand(lhs, rhs));
        }
        Ok(lhs)
    }

    fn quant_kind(&self) -> Option<QuantKind> {
        match self.peek()? {
            Tok::Ident(s) if s == "all" => Some(QuantKind::Forall),
            Tok::Ident(s) if s == "ex" => Some(QuantKind::Exists),
            Tok::Ident(s) if s == "call" => Some(QuantKind::Call),
            Tok::Ident(s) if s == "cex" => Some(QuantKind::Cex),
            Tok::Forall => Some(QuantKind::Forall),
            Tok::Exists => Some(QuantKind::Exists),
            Tok::Meet => Some(QuantKind::Call),
            Tok::Join => Some(QuantKind::Cex),
            _ => None,
        }
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        if let Some(kind) = self.quant_kind() {
            return self.quantified(kind);
        }
        if self.eat(&Tok::Not) {
            let start = self.offset();
            let inner = self.unary()?;
            if !inner.is_elementary() {
                return Err(SyntaxError::NonElementaryNegation {
                    pos: start,
                    hint: Formula::not(inner).normalize().to_string(),
                });
            }
            return Ok(Formula::not(inner));
        }
        self.atom()
    }

    fn quantified(&mut self, kind: QuantKind) -> Result<Formula, SyntaxError> {
        self.pos += 1;
        let choice = matches!(kind, QuantKind::Call | QuantKind::Cex);
        if choice && self.eat(&Tok::Bar) {
            let z = self.ident()?;
            self.expect(&Tok::Bar, "'|'")?;
            self.expect(&Tok::Le, "'<='")?;
            let bound = self.ext_term()?;
            self.expect(&Tok::Dot, "'.'")?;
            let body = self.formula()?;
            return Ok(if kind == QuantKind::Call {
                sugar::call_bounded(&z, bound, body)
            } else {
                sugar::cex_bounded(&z, bound, body)
            });
        }
        let x = self.ident()?;
        if !choice && self.eat(&Tok::Lt) {
            let bound = self.ext_term()?;
            self.expect(&Tok::Dot, "'.'")?;
            let body = self.formula()?;
            return Ok(if kind == QuantKind::Forall {
                sugar::all_below(&x, bound, body)
            } else {
                sugar::ex_below(&x, bound, body)
            });
        }
        self.eat(&Tok::Dot);
        let body = self.formula()?;
        Ok(Formula::quant(kind, x, body))
    }

    fn atom(&mut self) -> Result<Formula, SyntaxError> {
        if self.eat_word("Bit") {
            self.expect(&Tok::LParen, "'('")?;
            let y = self.ext_term()?;
            self.expect(&Tok::Comma, "','")?;
            let x = self.ext_term()?;
            self.expect(&Tok::RParen, "')'")?;
            return Ok(sugar::elaborate(&Atom::Bit(y, x)));
        }
        let save = self.pos;
        if let Ok(f) = self.relation() {
            return Ok(f);
        }
        self.pos = save;
        if self.eat(&Tok::LParen) {
            let f = self.formula()?;
            self.expect(&Tok::RParen, "')'")?;
            return Ok(f);
        }
        self.relation()
    }

    fn relation(&mut self) -> Result<Formula, SyntaxError> {
        let a = self.ext_term()?;
        let op = match self.peek() {
            Some(t @ (Tok::Eq | Tok::Ne | Tok::Lt | Tok::Le | Tok::Gt | Tok::Ge)) => t.clone(),
            _ => return self.error("expected relation"),
        };
        self.pos += 1;
        let b = self.ext_term()?;
        let atom = match op {
            Tok::Eq => Atom::Eq(a, b),
            Tok::Ne => return Ok(Formula::not(sugar::elaborate(&Atom::Eq(a, b)))),
            Tok::Lt => Atom::Lt(a, b),
            Tok::Le => Atom::Le(a, b),
            Tok::Gt => Atom::Lt(b, a),
            _ => Atom::Le(b, a),
        };
        Ok(sugar::elaborate(&atom))
    }

    /// Parses a term of the core language (notations rejected).
    pub fn term(&mut self) -> Result<Term, SyntaxError> {
        let start = self.offset();
        let t = self.ext_term()?;
        t.to_term()
            .ok_or(SyntaxError::Parse { pos: start, msg: "notation not allowed here".into() })
    }

    pub fn ext_term(&mut self) -> Result<ExtTerm, SyntaxError> {
        let mut lhs = self.mul_term()?;
        while self.eat(&Tok::Plus) {
            let rhs = self.mul_term()?;
            lhs = ExtTerm::Add(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn mul_term(&mut self) -> Result<ExtTerm, SyntaxError> {
        let mut lhs = self.pow_term()?;
        while self.eat(&Tok::Star) {
            let rhs = self.pow_term()?;
            lhs = ExtTerm::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn pow_term(&mut self) -> Result<ExtTerm, SyntaxError> {
        if matches!(self.peek(), Some(Tok::Num(n)) if n == "2") && self.peek_at(1) == Some(&Tok::Caret) {
            self.pos += 2;
            let e = self.postfix_term()?;
            return Ok(ExtTerm::exp2(e));
        }
        self.postfix_term()
    }

    fn postfix_term(&mut self) -> Result<ExtTerm, SyntaxError> {
        let mut t = self.primary_term()?;
        while self.eat(&Tok::Prime) {
            t = ExtTerm::Succ(Box::new(t));
        }
        Ok(t)
    }

    fn primary_term(&mut self) -> Result<ExtTerm, SyntaxError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) if n == "0" => {
                self.pos += 1;
                Ok(ExtTerm::Zero)
            }
            Some(Tok::Bin(digits)) => match from_binary(&digits) {
                Some(c) => {
                    self.pos += 1;
                    Ok(ExtTerm::Const(c))
                }
                None => self.error(format!("malformed binary constant '#{digits}'")),
            },
            Some(Tok::Bar) => {
                self.pos += 1;
                let inner = self.ext_term()?;
                self.expect(&Tok::Bar, "closing '|'")?;
                Ok(ExtTerm::len(inner))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.ext_term()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some(Tok::Ident(w)) => {
                if let Some(f) = Func::from_name(&w) {
                    self.pos += 1;
                    self.expect(&Tok::LParen, "'('")?;
                    let mut args = vec![self.ext_term()?];
                    while self.eat(&Tok::Comma) {
                        args.push(self.ext_term()?);
                    }
                    self.expect(&Tok::RParen, "')'")?;
                    if args.len() != f.arity() {
                        return self.error(format!("{} expects {} arguments", f.name(), f.arity()));
                    }
                    return Ok(ExtTerm::App(f, args));
                }
                Ok(ExtTerm::Var(self.ident()?))
            }
            _ => self.error("expected term"),
        }
    }
}

/// Parses a complete formula.
pub fn parse_formula(src: &str) -> Result<Formula, SyntaxError> {
    let mut p = Parser::new(src)?;
    let f = p.formula()?;
    if !p.at_end() {
        return p.error("unexpected trailing input");
    }
    Ok(f)
}

/// Parses a complete core-language term.
pub fn parse_term(src: &str) -> Result<Term, SyntaxError> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    if !p.at_end() {
        return p.error("unexpected trailing input");
    }
    Ok(t)
}

/// Parses a complete term that may use notations such as `|x|`.
pub fn parse_ext_term(src: &str) -> Result<ExtTerm, SyntaxError> {
    let mut p = Parser::new(src)?;
    let t = p.ext_term()?;
    if !p.at_end() {
        return p.error("unexpected trailing input");
    }
    Ok(t)
}
