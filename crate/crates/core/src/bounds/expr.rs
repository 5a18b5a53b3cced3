//! Bound expressions: monotone by construction, evaluated exactly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::syntax::term::bit_len;
use crate::syntax::{ExtTerm, Func};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundExpr {
    Var(String),
    Zero,
    Succ(Box<BoundExpr>),
    Add(Box<BoundExpr>, Box<BoundExpr>),
    Mul(Box<BoundExpr>, Box<BoundExpr>),
    Len(Box<BoundExpr>),
    Exp2(Box<BoundExpr>),
}

/// Largest exponent `e` for which `2^e` is materialized.
pub const DEFAULT_EXP_GUARD: u64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("2^{exponent} exceeds the exponent guard {guard}")]
pub struct BlowUp {
    pub exponent: String,
    pub guard: u64,
}

impl BoundExpr {
    pub fn var(x: impl Into<String>) -> BoundExpr {
        BoundExpr::Var(x.into())
    }

    pub fn succ(a: BoundExpr) -> BoundExpr {
        BoundExpr::Succ(Box::new(a))
    }

    pub fn add(a: BoundExpr, b: BoundExpr) -> BoundExpr {
        BoundExpr::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: BoundExpr, b: BoundExpr) -> BoundExpr {
        BoundExpr::Mul(Box::new(a), Box::new(b))
    }

    pub fn len(a: BoundExpr) -> BoundExpr {
        BoundExpr::Len(Box::new(a))
    }

    pub fn exp2(a: BoundExpr) -> BoundExpr {
        BoundExpr::Exp2(Box::new(a))
    }

    /// The unary numeral `0'...'`.
    pub fn numeral(n: usize) -> BoundExpr {
        (0..n).fold(BoundExpr::Zero, |acc, _| BoundExpr::succ(acc))
    }

    /// `a * a * ... * a` with `k >= 1` factors, left-nested.
    pub fn power(a: &BoundExpr, k: usize) -> BoundExpr {
        (1..k.max(1)).fold(a.clone(), |acc, _| BoundExpr::mul(acc, a.clone()))
    }

    /// `k*a + k` written with the closure constructors: `a+...+a` then `k` successors.
    pub fn scaled(a: &BoundExpr, k: usize) -> BoundExpr {
        let k = k.max(1);
        let sum = (1..k).fold(a.clone(), |acc, _| BoundExpr::add(acc, a.clone()));
        (0..k).fold(sum, |acc, _| BoundExpr::succ(acc))
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            BoundExpr::Var(x) => {
                out.insert(x.clone());
            }
            BoundExpr::Zero => {}
            BoundExpr::Succ(a) | BoundExpr::Len(a) | BoundExpr::Exp2(a) => a.collect_vars(out),
            BoundExpr::Add(a, b) | BoundExpr::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            BoundExpr::Var(_) | BoundExpr::Zero => 1,
            BoundExpr::Succ(a) | BoundExpr::Len(a) | BoundExpr::Exp2(a) => 1 + a.size(),
            BoundExpr::Add(a, b) | BoundExpr::Mul(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Simultaneous substitution of bound expressions for variables.
    pub fn substitute(&self, map: &BTreeMap<String, BoundExpr>) -> BoundExpr {
        match self {
            BoundExpr::Var(x) => map.get(x).cloned().unwrap_or_else(|| self.clone()),
            BoundExpr::Zero => BoundExpr::Zero,
            BoundExpr::Succ(a) => BoundExpr::succ(a.substitute(map)),
            BoundExpr::Len(a) => BoundExpr::len(a.substitute(map)),
            BoundExpr::Exp2(a) => BoundExpr::exp2(a.substitute(map)),
            BoundExpr::Add(a, b) => BoundExpr::add(a.substitute(map), b.substitute(map)),
            BoundExpr::Mul(a, b) => BoundExpr::mul(a.substitute(map), b.substitute(map)),
        }
    }

    /// Renames every variable to `x`, turning the bound into a unary one.
    pub fn unary(&self, x: &str) -> BoundExpr {
        let map = self.vars().into_iter().map(|v| (v, BoundExpr::var(x))).collect();
        self.substitute(&map)
    }

    /// Exact value; unassigned variables are an error reported as a blow-up-free `None`.
    pub fn eval(&self, env: &BTreeMap<String, BigUint>, guard: u64) -> Result<Option<BigUint>, BlowUp> {
        Ok(Some(match self {
            BoundExpr::Var(x) => match env.get(x) {
                Some(v) => v.clone(),
                None => return Ok(None),
            },
            BoundExpr::Zero => BigUint::zero(),
            BoundExpr::Succ(a) => match a.eval(env, guard)? {
                Some(v) => v + 1u32,
                None => return Ok(None),
            },
            BoundExpr::Len(a) => match a.eval(env, guard)? {
                Some(v) => BigUint::from(bit_len(&v)),
                None => return Ok(None),
            },
            BoundExpr::Exp2(a) => match a.eval(env, guard)? {
                Some(e) => match e.to_u64() {
                    Some(k) if k <= guard => BigUint::one() << k,
                    _ => return Err(BlowUp { exponent: e.to_string(), guard }),
                },
                None => return Ok(None),
            },
            BoundExpr::Add(a, b) | BoundExpr::Mul(a, b) => {
                let (Some(x), Some(y)) = (a.eval(env, guard)?, b.eval(env, guard)?) else {
                    return Ok(None);
                };
                if matches!(self, BoundExpr::Add(..)) {
                    x + y
                } else {
                    x * y
                }
            }
        }))
    }

    /// Value with every variable set to `a`.
    pub fn eval_at(&self, a: &BigUint, guard: u64) -> Result<BigUint, BlowUp> {
        let env = self.vars().into_iter().map(|v| (v, a.clone())).collect();
        Ok(self.eval(&env, guard)?.expect("all variables assigned"))
    }

    /// The notation-level term `self|s|`: each variable `s` becomes `|s|`.
    pub fn applied_to_lengths(&self) -> ExtTerm {
        self.to_ext(true)
    }

    pub fn to_ext(&self, lengths: bool) -> ExtTerm {
        match self {
            BoundExpr::Var(x) if lengths => ExtTerm::len(ExtTerm::Var(x.clone())),
            BoundExpr::Var(x) => ExtTerm::Var(x.clone()),
            BoundExpr::Zero => ExtTerm::Zero,
            BoundExpr::Succ(a) => ExtTerm::Succ(Box::new(a.to_ext(lengths))),
            BoundExpr::Add(a, b) => ExtTerm::Add(Box::new(a.to_ext(lengths)), Box::new(b.to_ext(lengths))),
            BoundExpr::Mul(a, b) => ExtTerm::Mul(Box::new(a.to_ext(lengths)), Box::new(b.to_ext(lengths))),
            BoundExpr::Len(a) => ExtTerm::len(a.to_ext(lengths)),
            BoundExpr::Exp2(a) => ExtTerm::exp2(a.to_ext(lengths)),
        }
    }

    /// Reads a notation term of the form `b|s1|...|sn|`, i.e. one in which
    /// every variable occurs directly under `|.|`. Returns `b(s1,...,sn)`.
    pub fn from_length_form(t: &ExtTerm) -> Option<BoundExpr> {
        Some(match t {
            ExtTerm::App(Func::Len, args) => match args.as_slice() {
                [ExtTerm::Var(s)] => BoundExpr::var(s.clone()),
                [a] => BoundExpr::len(BoundExpr::from_length_form(a)?),
                _ => return None,
            },
            ExtTerm::Var(_) => return None,
            other => BoundExpr::from_ext_with(other, BoundExpr::from_length_form)?,
        })
    }

    /// Reads a notation term as a bound over its own variables.
    pub fn from_ext(t: &ExtTerm) -> Option<BoundExpr> {
        match t {
            ExtTerm::Var(x) => Some(BoundExpr::var(x.clone())),
            ExtTerm::App(Func::Len, args) if args.len() == 1 => Some(BoundExpr::len(BoundExpr::from_ext(&args[0])?)),
            other => BoundExpr::from_ext_with(other, BoundExpr::from_ext),
        }
    }

    fn from_ext_with(t: &ExtTerm, rec: fn(&ExtTerm) -> Option<BoundExpr>) -> Option<BoundExpr> {
        Some(match t {
            ExtTerm::Zero => BoundExpr::Zero,
            ExtTerm::Const(c) => BoundExpr::numeral(c.to_usize().filter(|&n| n <= MAX_NUMERAL)?),
            ExtTerm::Succ(a) => BoundExpr::succ(rec(a)?),
            ExtTerm::Add(a, b) => BoundExpr::add(rec(a)?, rec(b)?),
            ExtTerm::Mul(a, b) => BoundExpr::mul(rec(a)?, rec(b)?),
            ExtTerm::App(Func::Exp2, args) if args.len() == 1 => BoundExpr::exp2(rec(&args[0])?),
            ExtTerm::App(Func::Len, args) if args.len() == 1 => BoundExpr::len(rec(&args[0])?),
            _ => return None,
        })
    }

    pub fn parse(src: &str) -> Result<BoundExpr, String> {
        let mut p = BoundParser { chars: src.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 };
        let b = p.sum()?;
        if p.pos != p.chars.len() {
            return Err(format!("unexpected `{}` in bound `{src}`", p.chars[p.pos]));
        }
        Ok(b)
    }
}

/// Numerals written in bounds are expanded to successor chains up to this size.
pub const MAX_NUMERAL: usize = 256;

struct BoundParser {
    chars: Vec<char>,
    pos: usize,
}

impl BoundParser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<BoundExpr, String> {
        let mut acc = self.product()?;
        while self.eat('+') {
            acc = BoundExpr::add(acc, self.product()?);
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<BoundExpr, String> {
        let mut acc = self.power()?;
        while self.eat('*') || self.eat('×') || self.eat('·') {
            acc = BoundExpr::mul(acc, self.power()?);
        }
        Ok(acc)
    }

    fn number(&mut self) -> Option<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect::<String>().parse().ok())?
    }

    /// `2^e` (right-associative) and `b^k` for a literal exponent `k`.
    fn power(&mut self) -> Result<BoundExpr, String> {
        let save = self.pos;
        if self.number() == Some(2) && self.eat('^') {
            return Ok(BoundExpr::exp2(self.power()?));
        }
        self.pos = save;
        let base = self.postfix()?;
        if self.eat('^') {
            let k = self.number().ok_or("expected a literal exponent after `^`")?;
            if k == 0 {
                return Ok(BoundExpr::succ(BoundExpr::Zero));
            }
            return Ok(BoundExpr::power(&base, k));
        }
        Ok(base)
    }

    fn postfix(&mut self) -> Result<BoundExpr, String> {
        let mut b = self.primary()?;
        while self.eat('\'') || self.eat('′') {
            b = BoundExpr::succ(b);
        }
        Ok(b)
    }

    fn primary(&mut self) -> Result<BoundExpr, String> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let b = self.sum()?;
                if !self.eat(')') {
                    return Err("expected `)`".into());
                }
                Ok(b)
            }
            Some('|') => {
                self.pos += 1;
                let b = self.sum()?;
                if !self.eat('|') {
                    return Err("expected closing `|`".into());
                }
                Ok(BoundExpr::len(b))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number().ok_or("bad numeral")?;
                if n > MAX_NUMERAL {
                    return Err(format!("numeral {n} too large for a bound"));
                }
                Ok(BoundExpr::numeral(n))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                Ok(BoundExpr::Var(self.chars[start..self.pos].iter().collect()))
            }
            Some(c) => Err(format!("unexpected `{c}`")),
            None => Err("unexpected end of bound".into()),
        }
    }
}

const SUM: u8 = 0;
const PROD: u8 = 1;
const POW: u8 = 2;
const POST: u8 = 3;

fn render(b: &BoundExpr) -> (String, u8) {
    let wrap = |s: (String, u8), min: u8| if s.1 < min { format!("({})", s.0) } else { s.0 };
    match b {
        BoundExpr::Var(x) => (x.clone(), POST),
        BoundExpr::Zero => ("0".into(), POST),
        BoundExpr::Succ(a) => (format!("{}'", wrap(render(a), POST)), POST),
        BoundExpr::Len(a) => (format!("|{}|", render(a).0), POST),
        BoundExpr::Exp2(a) => (format!("2^{}", wrap(render(a), POW)), POW),
        BoundExpr::Add(a, c) => (format!("{} + {}", wrap(render(a), SUM), wrap(render(c), PROD)), SUM),
        BoundExpr::Mul(a, c) => (format!("{} * {}", wrap(render(a), PROD), wrap(render(c), POW)), PROD),
    }
}

impl fmt::Display for BoundExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self).0)
    }
}

/// `candidate` is a syntactic variation of `original`: some map from the
/// variables of `original` onto those of `candidate` turns one into the other.
pub fn is_variation(candidate: &BoundExpr, original: &BoundExpr) -> bool {
    let mut map = BTreeMap::new();
    rename_match(original, candidate, &mut map) && map.values().collect::<BTreeSet<_>>().len() == candidate.vars().len()
}

/// Same relation as [`is_variation`], with the variation first.
pub fn syntactic_variation_eq(b1: &BoundExpr, b2: &BoundExpr) -> bool {
    is_variation(b1, b2)
}

/// Structural match of `pattern` against `target` where pattern variables
/// map to target variables consistently (not necessarily injectively).
pub fn rename_match(pattern: &BoundExpr, target: &BoundExpr, map: &mut BTreeMap<String, String>) -> bool {
    match (pattern, target) {
        (BoundExpr::Var(x), BoundExpr::Var(y)) => match map.get(x) {
            Some(z) => z == y,
            None => {
                map.insert(x.clone(), y.clone());
                true
            }
        },
        (BoundExpr::Zero, BoundExpr::Zero) => true,
        (BoundExpr::Succ(a), BoundExpr::Succ(b))
        | (BoundExpr::Len(a), BoundExpr::Len(b))
        | (BoundExpr::Exp2(a), BoundExpr::Exp2(b)) => rename_match(a, b, map),
        (BoundExpr::Add(a, b), BoundExpr::Add(c, d)) | (BoundExpr::Mul(a, b), BoundExpr::Mul(c, d)) => {
            rename_match(a, c, map) && rename_match(b, d, map)
        }
        _ => false,
    }
}
