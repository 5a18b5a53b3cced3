//! Three-valued evaluation of elementary formulas in the standard model.

use std::fmt;

use num_bigint::{BigInt, BigUint};

use super::poly::Poly;
use crate::syntax::defs;
use crate::syntax::sugar::{self, ExtTerm};
use crate::syntax::{Formula, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Truth {
    True,
    False,
    /// The blind-quantifier search or the step budget ran out.
    Unknown,
}

impl Truth {
    pub fn from_bool(b: bool) -> Truth {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }

    pub fn not(self) -> Truth {
        match self {
            Truth::True => Truth::False,
            Truth::False => Truth::True,
            Truth::Unknown => Truth::Unknown,
        }
    }

    pub fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::False, _) | (_, Truth::False) => Truth::False,
            (Truth::True, Truth::True) => Truth::True,
            _ => Truth::Unknown,
        }
    }

    pub fn or(self, other: Truth) -> Truth {
        self.not().and(other.not()).not()
    }
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Truth::True => "true",
            Truth::False => "false",
            Truth::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalConfig {
    /// Blind quantifiers are searched over `0..=blind_bound`.
    pub blind_bound: u64,
    /// Total number of evaluation steps before giving up.
    pub step_budget: u64,
    /// Enables the symbolic rules (polynomial identity, sign, successor never 0).
    pub decision_rules: bool,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { blind_bound: 4096, step_budget: 2_000_000, decision_rules: true }
    }
}

impl EvalConfig {
    pub fn with_bound(blind_bound: u64) -> EvalConfig {
        EvalConfig { blind_bound, ..EvalConfig::default() }
    }
}

/// Value of a closed term.
pub fn eval_term(t: &Term) -> Option<BigUint> {
    term_value(t, &[])
}

/// Value of a closed notation-level term.
pub fn eval_ext(t: &ExtTerm) -> Option<BigUint> {
    ext_value(t, &[])
}

/// Binding stack: `None` marks a variable treated symbolically.
type Env = [(String, Option<BigUint>)];

fn lookup<'e>(env: &'e Env, x: &str) -> Option<&'e Option<BigUint>> {
    env.iter().rev().find(|(y, _)| y == x).map(|(_, v)| v)
}

fn term_value(t: &Term, env: &Env) -> Option<BigUint> {
    Some(match t {
        Term::Var(x) => lookup(env, x)?.clone()?,
        Term::Zero => BigUint::default(),
        Term::Const(c) => c.clone(),
        Term::Succ(a) => term_value(a, env)? + 1u32,
        Term::Add(a, b) => term_value(a, env)? + term_value(b, env)?,
        Term::Mul(a, b) => term_value(a, env)? * term_value(b, env)?,
    })
}

fn ext_value(t: &ExtTerm, env: &Env) -> Option<BigUint> {
    Some(match t {
        ExtTerm::Var(x) => lookup(env, x)?.clone()?,
        ExtTerm::Zero => BigUint::default(),
        ExtTerm::Const(c) => c.clone(),
        ExtTerm::Succ(a) => ext_value(a, env)? + 1u32,
        ExtTerm::Add(a, b) => ext_value(a, env)? + ext_value(b, env)?,
        ExtTerm::Mul(a, b) => ext_value(a, env)? * ext_value(b, env)?,
        ExtTerm::App(f, args) => {
            let vals: Option<Vec<BigUint>> = args.iter().map(|a| ext_value(a, env)).collect();
            f.def().compute(&vals?)?
        }
    })
}

fn term_poly(t: &Term, env: &Env) -> Poly {
    match t {
        Term::Var(x) => match lookup(env, x) {
            Some(Some(v)) => Poly::constant(BigInt::from(v.clone())),
            _ => Poly::var(x),
        },
        Term::Zero => Poly::default(),
        Term::Const(c) => Poly::constant(BigInt::from(c.clone())),
        Term::Succ(a) => term_poly(a, env).add(&Poly::constant(BigInt::from(1))),
        Term::Add(a, b) => term_poly(a, env).add(&term_poly(b, env)),
        Term::Mul(a, b) => term_poly(a, env).mul(&term_poly(b, env)),
    }
}

/// Evaluates possibly open formulas. Unbound variables are symbolic: a
/// definite answer holds for every value of them.
pub struct Evaluator {
    cfg: EvalConfig,
    steps: u64,
}

impl Evaluator {
    pub fn new(cfg: EvalConfig) -> Evaluator {
        Evaluator { cfg, steps: 0 }
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn exhausted(&self) -> bool {
        self.steps > self.cfg.step_budget
    }

    pub fn eval(&mut self, f: &Formula, assignment: &[(String, BigUint)]) -> Truth {
        let mut env: Vec<(String, Option<BigUint>)> =
            assignment.iter().map(|(x, v)| (x.clone(), Some(v.clone()))).collect();
        self.go(f, &mut env)
    }

    fn go(&mut self, f: &Formula, env: &mut Vec<(String, Option<BigUint>)>) -> Truth {
        self.steps += 1;
        if self.exhausted() {
            return Truth::Unknown;
        }
        match f {
            Formula::Eq(a, b) => self.atom_eq(a, b, env),
            Formula::Not(a) => self.go(a, env).not(),
            Formula::And(a, b) => {
                let l = self.go(a, env);
                if l == Truth::False {
                    return l;
                }
                l.and(self.go(b, env))
            }
            Formula::Or(a, b) => {
                let l = self.go(a, env);
                if l == Truth::True {
                    return l;
                }
                l.or(self.go(b, env))
            }
            Formula::Imp(a, b) => {
                let l = self.go(a, env);
                if l == Truth::False {
                    return Truth::True;
                }
                l.not().or(self.go(b, env))
            }
            Formula::Forall(x, body) => self.quantifier(f, true, x, body, env),
            Formula::Exists(x, body) => self.quantifier(f, false, x, body, env),
            Formula::Cand(..) | Formula::Cor(..) | Formula::Call(..) | Formula::Cex(..) => Truth::Unknown,
        }
    }

    fn atom_eq(&mut self, a: &Term, b: &Term, env: &Env) -> Truth {
        if let (Some(x), Some(y)) = (term_value(a, env), term_value(b, env)) {
            return Truth::from_bool(x == y);
        }
        if !self.cfg.decision_rules {
            return Truth::Unknown;
        }
        let d = term_poly(a, env).sub(&term_poly(b, env));
        if d.is_zero() {
            Truth::True
        } else if d.always_positive() || d.neg().always_positive() {
            Truth::False
        } else {
            Truth::Unknown
        }
    }

    /// `t1 <= t2` decided exactly or by the sign rules.
    fn atom_le(&mut self, t1: &Term, t2: &Term, env: &Env) -> Option<Truth> {
        if let (Some(x), Some(y)) = (term_value(t1, env), term_value(t2, env)) {
            return Some(Truth::from_bool(x <= y));
        }
        if !self.cfg.decision_rules {
            return None;
        }
        let d = term_poly(t2, env).sub(&term_poly(t1, env));
        if d.always_nonneg() {
            Some(Truth::True)
        } else if d.neg().always_positive() {
            Some(Truth::False)
        } else {
            None
        }
    }

    fn quantifier(
        &mut self,
        f: &Formula,
        is_all: bool,
        x: &str,
        body: &Formula,
        env: &mut Vec<(String, Option<BigUint>)>,
    ) -> Truth {
        if !is_all {
            if let Formula::Eq(Term::Add(t1, w), t2) = body {
                if **w == Term::Var(x.to_string()) && !t1.has_var(x) && !t2.has_var(x) {
                    if let Some(r) = self.atom_le(t1, t2, env) {
                        return r;
                    }
                }
            }
            if let Formula::And(def, rest) = body {
                if let Some(r) = self.definer(x, def, rest, env) {
                    return r;
                }
            }
        }
        if let Some((d, args)) = defs::recognize(f) {
            let vals: Option<Vec<BigUint>> = args.iter().map(|t| term_value(t, env)).collect();
            if let Some(r) = vals.and_then(|v| d.holds(&v)) {
                return Truth::from_bool(r);
            }
        }
        if matches!(body, Formula::Imp(..) | Formula::And(..)) {
            if let Some((_, y, bound, h)) = sugar::as_bounded_blind(f) {
                if let Some(b) = ext_value(&bound, env) {
                    return self.bounded(is_all, y, &b, h, env);
                }
            }
        }
        if !body.has_free(x) {
            return self.go(body, env);
        }
        if let Some(g) = one_point(is_all, x, body) {
            return self.go(&g, env);
        }
        env.push((x.to_string(), None));
        let sym = self.go(body, env);
        env.pop();
        if sym != Truth::Unknown {
            return sym;
        }
        let mut v = BigUint::default();
        let limit = BigUint::from(self.cfg.blind_bound);
        while v <= limit && !self.exhausted() {
            env.push((x.to_string(), Some(v.clone())));
            let r = self.go(body, env);
            env.pop();
            if is_all && r == Truth::False {
                return Truth::False;
            }
            if !is_all && r == Truth::True {
                return Truth::True;
            }
            v += 1u32;
        }
        Truth::Unknown
    }

    fn definer(
        &mut self,
        x: &str,
        def: &Formula,
        rest: &Formula,
        env: &mut Vec<(String, Option<BigUint>)>,
    ) -> Option<Truth> {
        let (d, args) = defs::recognize(def)?;
        if !d.is_functional() || args[0] != Term::Var(x.to_string()) || args[1..].iter().any(|t| t.has_var(x)) {
            return None;
        }
        let inputs: Option<Vec<BigUint>> = args[1..].iter().map(|t| term_value(t, env)).collect();
        let value = d.compute(&inputs?)?;
        env.push((x.to_string(), Some(value)));
        let r = self.go(rest, env);
        env.pop();
        Some(r)
    }

    fn bounded(
        &mut self,
        is_all: bool,
        y: &str,
        bound: &BigUint,
        h: &Formula,
        env: &mut Vec<(String, Option<BigUint>)>,
    ) -> Truth {
        let mut acc = Truth::from_bool(is_all);
        let mut v = BigUint::default();
        while &v < bound {
            if self.exhausted() {
                return Truth::Unknown;
            }
            env.push((y.to_string(), Some(v.clone())));
            let r = self.go(h, env);
            env.pop();
            acc = if is_all { acc.and(r) } else { acc.or(r) };
            if (is_all && acc == Truth::False) || (!is_all && acc == Truth::True) {
                return acc;
            }
            v += 1u32;
        }
        acc
    }
}

/// `ex x (x = t & B)` becomes `B[t/x]`, and `all x (x = t -> B)` likewise.
fn one_point(is_all: bool, x: &str, body: &Formula) -> Option<Formula> {
    let (eq, rest) = match (is_all, body) {
        (true, Formula::Imp(a, b)) => (&**a, Some(&**b)),
        (false, Formula::And(a, b)) => (&**a, Some(&**b)),
        (false, f @ Formula::Eq(..)) => (f, None),
        _ => return None,
    };
    let t = match eq {
        Formula::Eq(Term::Var(v), t) | Formula::Eq(t, Term::Var(v)) if v == x && !t.has_var(x) => t,
        _ => return None,
    };
    match rest {
        None => Some(Formula::truth()),
        Some(b) => b.substitute(x, t).ok(),
    }
}

/// Truth of a closed elementary formula.
pub fn eval_elementary(p: &Formula, cfg: &EvalConfig) -> Truth {
    Evaluator::new(*cfg).eval(p, &[])
}

/// Truth of an elementary formula under an assignment to (some of) its free variables.
pub fn eval_with(p: &Formula, assignment: &[(String, BigUint)], cfg: &EvalConfig) -> Truth {
    Evaluator::new(*cfg).eval(p, assignment)
}
