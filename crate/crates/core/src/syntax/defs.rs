//! Fixed defining formulas for the standard notations `|x|`, `2^x`, `Bit(y,x)`,
//! limited subtraction, halving, bit replacement and `Bitsum`.
//!
//! Every notation is an abbreviation of an honest elementary formula over
//! `0`, `'`, `+`, `*`. Exponentiation is arithmetized with the β-function
//! `β(c,d,i) = c mod (1 + (i+1)·d)`. Bound variables introduced by these
//! expansions are named `_kN`, which the lexer never produces.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::formula::Formula;
use super::term::Term;

/// Exponents above this bound are not materialized.
pub const MAX_EXP_BITS: u64 = 1 << 24;

pub struct Namer {
    next: usize,
}

impl Namer {
    pub fn new() -> Namer {
        Namer { next: 0 }
    }

    pub fn fresh(&mut self) -> String {
        let s = format!("_k{}", self.next);
        self.next += 1;
        s
    }
}

impl Default for Namer {
    fn default() -> Self {
        Namer::new()
    }
}

pub fn is_internal_name(name: &str) -> bool {
    name.starts_with("_k") || name.starts_with('?')
}

fn v(name: &str) -> Term {
    Term::var(name)
}

/// `a ≤ b` as `∃w (a + w = b)`.
pub fn le(n: &mut Namer, a: Term, b: Term) -> Formula {
    let w = n.fresh();
    Formula::exists(w.clone(), Formula::eq(Term::add(a, v(&w)), b))
}

/// `a < b` as `a' ≤ b`.
pub fn lt(n: &mut Namer, a: Term, b: Term) -> Formula {
    le(n, Term::succ(a), b)
}

/// `r = c mod m`.
fn modr(n: &mut Namer, c: Term, m: Term, r: Term) -> Formula {
    let q = n.fresh();
    let div = Formula::exists(
        q.clone(),
        Formula::eq(c, Term::add(Term::mul(v(&q), m.clone()), r.clone())),
    );
    Formula::and(div, lt(n, r, m))
}

/// `r = β(c,d,i)`.
fn beta(n: &mut Namer, c: &str, d: &str, i: Term, r: Term) -> Formula {
    let m = Term::succ(Term::mul(Term::succ(i), v(d)));
    modr(n, v(c), m, r)
}

/// `p = 2^y`.
pub fn pow(n: &mut Namer, p: Term, y: Term) -> Formula {
    let c = n.fresh();
    let d = n.fresh();
    let i = n.fresh();
    let a = n.fresh();
    let b = n.fresh();
    let start = beta(n, &c, &d, Term::Zero, Term::succ(Term::Zero));
    let end = beta(n, &c, &d, y.clone(), p);
    let guard = lt(n, v(&i), y);
    let cur = beta(n, &c, &d, v(&i), v(&a));
    let next = beta(n, &c, &d, Term::succ(v(&i)), v(&b));
    let doubling = Formula::eq(v(&b), Term::add(v(&a), v(&a)));
    let step = Formula::forall(
        i.clone(),
        Formula::imp(
            guard,
            Formula::exists(
                a.clone(),
                Formula::exists(b.clone(), Formula::and(Formula::and(cur, next), doubling)),
            ),
        ),
    );
    Formula::exists(
        c.clone(),
        Formula::exists(d.clone(), Formula::and(Formula::and(start, end), step)),
    )
}

/// `z = |x|`: the least `z` with `x < 2^z`.
pub fn log(n: &mut Namer, z: Term, x: Term) -> Formula {
    let p = n.fresh();
    let z0 = n.fresh();
    let p0 = n.fresh();
    let upper = Formula::and(pow(n, v(&p), z.clone()), lt(n, x.clone(), v(&p)));
    let below = Formula::exists(
        z0.clone(),
        Formula::exists(
            p0.clone(),
            Formula::and(
                Formula::and(
                    Formula::eq(z.clone(), Term::succ(v(&z0))),
                    pow(n, v(&p0), v(&z0)),
                ),
                le(n, v(&p0), x),
            ),
        ),
    );
    let minimal = Formula::or(Formula::eq(z, Term::Zero), below);
    Formula::exists(p.clone(), Formula::and(upper, minimal))
}

/// `Bit(y,x)`, i.e. `(x)_y = 1`.
pub fn bit(n: &mut Namer, y: Term, x: Term) -> Formula {
    let p = n.fresh();
    let q = n.fresh();
    let r = n.fresh();
    let body = Formula::and(
        Formula::and(pow(n, v(&p), y), lt(n, v(&r), v(&p))),
        Formula::eq(
            x,
            Term::add(
                Term::add(Term::mul(v(&q), Term::add(v(&p), v(&p))), v(&p)),
                v(&r),
            ),
        ),
    );
    Formula::exists(p.clone(), Formula::exists(q.clone(), Formula::exists(r.clone(), body)))
}

/// `z = u ⊖ v = max(0, u - v)`.
pub fn monus(n: &mut Namer, z: Term, u: Term, w: Term) -> Formula {
    let low = Formula::and(le(n, u.clone(), w.clone()), Formula::eq(z.clone(), Term::Zero));
    let high = Formula::and(lt(n, w.clone(), u.clone()), Formula::eq(Term::add(w, z), u));
    Formula::or(low, high)
}

/// `z = ⌊u/2⌋`.
pub fn half(_n: &mut Namer, z: Term, u: Term) -> Formula {
    let twice = Term::add(z.clone(), z);
    Formula::or(
        Formula::eq(twice.clone(), u.clone()),
        Formula::eq(Term::succ(twice), u),
    )
}

/// `z = Br_i(x,s)`: `s` with bit `x` replaced by `i`.
pub fn br(n: &mut Namer, i: u8, z: Term, x: Term, s: Term) -> Formula {
    let p = n.fresh();
    let has = bit(n, x.clone(), s.clone());
    let lacks = Formula::not(bit(n, x.clone(), s.clone()));
    let keep = Formula::eq(z.clone(), s.clone());
    let pw = pow(n, v(&p), x);
    let change = if i == 1 {
        Formula::eq(z, Term::add(s, v(&p)))
    } else {
        Formula::eq(Term::add(z, v(&p)), s)
    };
    let changed = Formula::exists(p.clone(), Formula::and(pw, change));
    if i == 1 {
        Formula::or(Formula::and(has, keep), Formula::and(lacks, changed))
    } else {
        Formula::or(Formula::and(lacks, keep), Formula::and(has, changed))
    }
}

/// `z = Bitsum(x,y,u,v) = Σ_{i ≤ min(x,y)} (u)_i · (v)_{y-i}`.
pub fn bitsum(n: &mut Namer, z: Term, x: Term, y: Term, u: Term, w: Term) -> Formula {
    let c = n.fresh();
    let d = n.fresh();
    let m = n.fresh();
    let i = n.fresh();
    let a = n.fresh();
    let b = n.fresh();
    let j = n.fresh();
    let start = beta(n, &c, &d, Term::Zero, Term::Zero);
    let min = Formula::or(
        Formula::and(Formula::eq(v(&m), x.clone()), le(n, x.clone(), y.clone())),
        Formula::and(Formula::eq(v(&m), y.clone()), lt(n, y.clone(), x)),
    );
    let end = beta(n, &c, &d, Term::succ(v(&m)), z);
    let guard = le(n, v(&i), v(&m));
    let cur = beta(n, &c, &d, v(&i), v(&a));
    let next = beta(n, &c, &d, Term::succ(v(&i)), v(&b));
    let mut product = || {
        let ub = bit(n, v(&i), u.clone());
        let vb = bit(n, v(&j), w.clone());
        Formula::and(
            ub,
            Formula::exists(
                j.clone(),
                Formula::and(Formula::eq(Term::add(v(&i), v(&j)), y.clone()), vb),
            ),
        )
    };
    let on = product();
    let off = Formula::not(product());
    let inc = Formula::or(
        Formula::and(on, Formula::eq(v(&b), Term::succ(v(&a)))),
        Formula::and(off, Formula::eq(v(&b), v(&a))),
    );
    let step = Formula::forall(
        i.clone(),
        Formula::imp(
            guard,
            Formula::exists(
                a.clone(),
                Formula::exists(b.clone(), Formula::and(Formula::and(cur, next), inc)),
            ),
        ),
    );
    let inner = Formula::exists(
        m.clone(),
        Formula::and(Formula::and(min, end), step),
    );
    Formula::exists(
        c.clone(),
        Formula::exists(d.clone(), Formula::and(start, inner)),
    )
}

/// A notation with a fixed defining formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Def {
    Pow,
    Log,
    Bit,
    Monus,
    Half,
    Br0,
    Br1,
    Bitsum,
}

pub const ALL_DEFS: [Def; 8] = [
    Def::Pow,
    Def::Log,
    Def::Bit,
    Def::Monus,
    Def::Half,
    Def::Br0,
    Def::Br1,
    Def::Bitsum,
];

impl Def {
    /// Number of arguments of the defining formula. For functional notations
    /// the first argument is the defined value.
    pub fn arity(self) -> usize {
        match self {
            Def::Pow | Def::Log | Def::Bit | Def::Half => 2,
            Def::Monus | Def::Br0 | Def::Br1 => 3,
            Def::Bitsum => 5,
        }
    }

    pub fn is_functional(self) -> bool {
        self != Def::Bit
    }

    pub fn build(self, n: &mut Namer, args: &[Term]) -> Formula {
        let a = |i: usize| args[i].clone();
        match self {
            Def::Pow => pow(n, a(0), a(1)),
            Def::Log => log(n, a(0), a(1)),
            Def::Bit => bit(n, a(0), a(1)),
            Def::Monus => monus(n, a(0), a(1), a(2)),
            Def::Half => half(n, a(0), a(1)),
            Def::Br0 => br(n, 0, a(0), a(1), a(2)),
            Def::Br1 => br(n, 1, a(0), a(1), a(2)),
            Def::Bitsum => bitsum(n, a(0), a(1), a(2), a(3), a(4)),
        }
    }

    fn index(self) -> usize {
        ALL_DEFS.iter().position(|d| *d == self).unwrap_or(0)
    }

    /// The defining formula over placeholder arguments `?0, ?1, ...`.
    pub fn pattern(self) -> &'static Formula {
        static CACHE: [OnceLock<Formula>; 8] = [
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
        ];
        CACHE[self.index()].get_or_init(|| {
            let holes: Vec<Term> = (0..self.arity()).map(|i| Term::var(format!("?{i}"))).collect();
            self.build(&mut Namer::new(), &holes)
        })
    }

    /// Value of a functional notation at its inputs (all but the first argument).
    pub fn compute(self, inputs: &[BigUint]) -> Option<BigUint> {
        match self {
            Def::Pow => {
                let e = inputs[0].to_u64()?;
                if e > MAX_EXP_BITS {
                    return None;
                }
                Some(BigUint::one() << e)
            }
            Def::Log => Some(BigUint::from(inputs[0].bits())),
            Def::Bit => None,
            Def::Monus => Some(if inputs[0] > inputs[1] {
                &inputs[0] - &inputs[1]
            } else {
                BigUint::zero()
            }),
            Def::Half => Some(&inputs[0] >> 1u32),
            Def::Br0 | Def::Br1 => {
                let x = inputs[0].to_u64()?;
                if x > MAX_EXP_BITS {
                    return None;
                }
                let mut s = inputs[1].clone();
                s.set_bit(x, self == Def::Br1);
                Some(s)
            }
            Def::Bitsum => {
                let x = inputs[0].to_u64()?;
                let y = inputs[1].to_u64()?;
                Some(BigUint::from(bitsum_value(x, y, &inputs[2], &inputs[3])))
            }
        }
    }

    /// Truth of the defining formula at the given argument values.
    pub fn holds(self, args: &[BigUint]) -> Option<bool> {
        match self {
            Def::Bit => {
                let y = match args[0].to_u64() {
                    Some(y) => y,
                    None => return Some(false),
                };
                Some(args[1].bit(y))
            }
            Def::Pow => {
                let p = &args[0];
                if p.is_zero() {
                    return Some(false);
                }
                let is_pow = p.count_ones() == 1;
                Some(is_pow && BigUint::from(p.bits() - 1) == args[1])
            }
            _ => Some(self.compute(&args[1..])? == args[0]),
        }
    }
}

/// `Σ_{i=0}^{min(x,y)} (u)_i · (v)_{y-i}`.
pub fn bitsum_value(x: u64, y: u64, u: &BigUint, w: &BigUint) -> u64 {
    if u.bits() == 0 || w.bits() == 0 {
        return 0;
    }
    // Only indices where both bits can be set contribute.
    let m = x.min(y).min(u.bits() - 1);
    let lo = (y + 1).saturating_sub(w.bits());
    let mut total = 0;
    for i in lo..=m {
        if u.bit(i) && w.bit(y - i) {
            total += 1;
        }
    }
    total
}

/// First-order matching of `pat` against `f` up to renaming of bound
/// variables. Pattern variables `?i` bind to terms free in `f`'s context.
pub fn match_pattern(pat: &Formula, f: &Formula, holes: usize) -> Option<Vec<Term>> {
    let mut m = Matcher { binds: vec![None; holes], scope: Vec::new() };
    if m.formula(pat, f) {
        m.binds.into_iter().collect()
    } else {
        None
    }
}

/// Equality up to renaming of bound variables.
pub fn alpha_eq(a: &Formula, b: &Formula) -> bool {
    match_pattern(a, b, 0).is_some()
}

struct Matcher {
    binds: Vec<Option<Term>>,
    scope: Vec<(String, String)>,
}

impl Matcher {
    fn formula(&mut self, p: &Formula, f: &Formula) -> bool {
        use Formula as F;
        match (p, f) {
            (F::Eq(a, b), F::Eq(c, d)) => self.term(a, c) && self.term(b, d),
            (F::Not(a), F::Not(b)) => self.formula(a, b),
            (F::And(a, b), F::And(c, d))
            | (F::Or(a, b), F::Or(c, d))
            | (F::Imp(a, b), F::Imp(c, d))
            | (F::Cand(a, b), F::Cand(c, d))
            | (F::Cor(a, b), F::Cor(c, d)) => self.formula(a, c) && self.formula(b, d),
            (F::Forall(x, a), F::Forall(y, b))
            | (F::Exists(x, a), F::Exists(y, b))
            | (F::Call(x, a), F::Call(y, b))
            | (F::Cex(x, a), F::Cex(y, b)) => {
                self.scope.push((x.clone(), y.clone()));
                let ok = self.formula(a, b);
                self.scope.pop();
                ok
            }
            _ => false,
        }
    }

    fn term(&mut self, p: &Term, f: &Term) -> bool {
        match (p, f) {
            (Term::Var(h), _) if h.starts_with('?') => {
                let idx: usize = match h[1..].parse() {
                    Ok(i) => i,
                    Err(_) => return false,
                };
                if self.scope.iter().any(|(_, fb)| f.has_var(fb)) {
                    return false;
                }
                match &self.binds[idx] {
                    Some(t) => t == f,
                    None => {
                        self.binds[idx] = Some(f.clone());
                        true
                    }
                }
            }
            (Term::Var(a), Term::Var(b)) => {
                let pa = self.scope.iter().rposition(|(x, _)| x == a);
                let pb = self.scope.iter().rposition(|(_, y)| y == b);
                match (pa, pb) {
                    (None, None) => a == b,
                    (Some(i), Some(j)) => i == j,
                    _ => false,
                }
            }
            (Term::Zero, Term::Zero) => true,
            (Term::Const(a), Term::Const(b)) => a == b,
            (Term::Succ(a), Term::Succ(b)) => self.term(a, b),
            (Term::Add(a, b), Term::Add(c, d)) | (Term::Mul(a, b), Term::Mul(c, d)) => {
                self.term(a, c) && self.term(b, d)
            }
            _ => false,
        }
    }
}

/// Recognizes `f` as the defining formula of some notation, returning the arguments.
pub fn recognize(f: &Formula) -> Option<(Def, Vec<Term>)> {
    for d in ALL_DEFS {
        if !quick_shape(d.pattern(), f) {
            continue;
        }
        if let Some(args) = match_pattern(d.pattern(), f, d.arity()) {
            return Some((d, args));
        }
    }
    None
}

/// Cheap structural pre-filter on the top three levels.
fn quick_shape(p: &Formula, f: &Formula) -> bool {
    fn tag(f: &Formula) -> u8 {
        match f {
            Formula::Eq(..) => 0,
            Formula::Not(_) => 1,
            Formula::And(..) => 2,
            Formula::Or(..) => 3,
            Formula::Imp(..) => 4,
            Formula::Forall(..) => 5,
            Formula::Exists(..) => 6,
            Formula::Cand(..) => 7,
            Formula::Cor(..) => 8,
            Formula::Call(..) => 9,
            Formula::Cex(..) => 10,
        }
    }
    fn go(p: &Formula, f: &Formula, depth: u8) -> bool {
        if tag(p) != tag(f) {
            return false;
        }
        if depth == 0 {
            return true;
        }
        match (p, f) {
            (Formula::And(a, b), Formula::And(c, d)) | (Formula::Or(a, b), Formula::Or(c, d)) => {
                go(a, c, depth - 1) && go(b, d, depth - 1)
            }
            (Formula::Exists(_, a), Formula::Exists(_, b)) | (Formula::Forall(_, a), Formula::Forall(_, b)) => {
                go(a, b, depth - 1)
            }
            _ => true,
        }
    }
    go(p, f, 4)
}
