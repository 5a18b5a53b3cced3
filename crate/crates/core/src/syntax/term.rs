use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

/// A term of the arithmetic language over `0`, successor, `+` and `×`,
/// optionally carrying binary constants (which makes it a paraterm).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Zero,
    Const(BigUint),
    Succ(Box<Term>),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn constant(n: impl Into<BigUint>) -> Term {
        Term::Const(n.into())
    }

    pub fn succ(t: Term) -> Term {
        Term::Succ(Box::new(t))
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    /// The unary numeral `0'...'` with `n` strokes.
    pub fn numeral(n: usize) -> Term {
        let mut t = Term::Zero;
        for _ in 0..n {
            t = Term::succ(t);
        }
        t
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Zero | Term::Const(_) => {}
            Term::Succ(a) => a.collect_vars(out),
            Term::Add(a, b) | Term::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn has_var(&self, x: &str) -> bool {
        match self {
            Term::Var(v) => v == x,
            Term::Zero | Term::Const(_) => false,
            Term::Succ(a) => a.has_var(x),
            Term::Add(a, b) | Term::Mul(a, b) => a.has_var(x) || b.has_var(x),
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Zero | Term::Const(_) => true,
            Term::Succ(a) => a.is_ground(),
            Term::Add(a, b) | Term::Mul(a, b) => a.is_ground() && b.is_ground(),
        }
    }

    /// True when no constant other than `0` occurs.
    pub fn is_pure(&self) -> bool {
        match self {
            Term::Var(_) | Term::Zero => true,
            Term::Const(_) => false,
            Term::Succ(a) => a.is_pure(),
            Term::Add(a, b) | Term::Mul(a, b) => a.is_pure() && b.is_pure(),
        }
    }

    pub fn subst(&self, x: &str, t: &Term) -> Term {
        match self {
            Term::Var(v) if v == x => t.clone(),
            Term::Var(_) | Term::Zero | Term::Const(_) => self.clone(),
            Term::Succ(a) => Term::succ(a.subst(x, t)),
            Term::Add(a, b) => Term::add(a.subst(x, t), b.subst(x, t)),
            Term::Mul(a, b) => Term::mul(a.subst(x, t), b.subst(x, t)),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Zero | Term::Const(_) => 1,
            Term::Succ(a) => 1 + a.size(),
            Term::Add(a, b) | Term::Mul(a, b) => 1 + a.size() + b.size(),
        }
    }
}

/// Renders a natural number as a binary numeral without leading zeros.
pub fn to_binary(n: &BigUint) -> String {
    if n.is_zero() {
        "0".to_string()
    } else {
        n.to_str_radix(2)
    }
}

/// Parses a binary numeral in canonical form (no leading zeros except `0`).
pub fn from_binary(s: &str) -> Option<BigUint> {
    if s.is_empty() || !s.bytes().all(|b| b == b'0' || b == b'1') {
        return None;
    }
    if s.len() > 1 && s.starts_with('0') {
        return None;
    }
    BigUint::parse_bytes(s.as_bytes(), 2)
}

/// Bit length `|n|`, with `|0| = 0`.
pub fn bit_len(n: &BigUint) -> u64 {
    n.bits()
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::printer::render_term(self))
    }
}
