//! Surface notations: `|t|`, `2^t`, named functions, `<=`, `<`, `Bit(y,x)`.
//!
//! Each notation elaborates deterministically into a formula of the core
//! language, and [`fold_atom`] recovers the notation from such a formula only
//! when re-elaboration reproduces it exactly.

use num_bigint::BigUint;

use super::defs::{self, Def, Namer};
use super::formula::Formula;
use super::term::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Len,
    Exp2,
    Monus,
    Half,
    Br0,
    Br1,
    Bitsum,
}

impl Func {
    pub fn def(self) -> Def {
        match self {
            Func::Len => Def::Log,
            Func::Exp2 => Def::Pow,
            Func::Monus => Def::Monus,
            Func::Half => Def::Half,
            Func::Br0 => Def::Br0,
            Func::Br1 => Def::Br1,
            Func::Bitsum => Def::Bitsum,
        }
    }

    pub fn from_def(d: Def) -> Option<Func> {
        Some(match d {
            Def::Log => Func::Len,
            Def::Pow => Func::Exp2,
            Def::Monus => Func::Monus,
            Def::Half => Func::Half,
            Def::Br0 => Func::Br0,
            Def::Br1 => Func::Br1,
            Def::Bitsum => Func::Bitsum,
            Def::Bit => return None,
        })
    }

    pub fn arity(self) -> usize {
        self.def().arity() - 1
    }

    /// Name used in function-call syntax; `Len` and `Exp2` have their own forms.
    pub fn name(self) -> &'static str {
        match self {
            Func::Len => "len",
            Func::Exp2 => "exp2",
            Func::Monus => "monus",
            Func::Half => "half",
            Func::Br0 => "br0",
            Func::Br1 => "br1",
            Func::Bitsum => "bitsum",
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "monus" => Func::Monus,
            "half" => Func::Half,
            "br0" => Func::Br0,
            "br1" => Func::Br1,
            "bitsum" => Func::Bitsum,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtTerm {
    Var(String),
    Zero,
    Const(BigUint),
    Succ(Box<ExtTerm>),
    Add(Box<ExtTerm>, Box<ExtTerm>),
    Mul(Box<ExtTerm>, Box<ExtTerm>),
    App(Func, Vec<ExtTerm>),
}

impl ExtTerm {
    pub fn from_term(t: &Term) -> ExtTerm {
        match t {
            Term::Var(x) => ExtTerm::Var(x.clone()),
            Term::Zero => ExtTerm::Zero,
            Term::Const(c) => ExtTerm::Const(c.clone()),
            Term::Succ(a) => ExtTerm::Succ(Box::new(ExtTerm::from_term(a))),
            Term::Add(a, b) => {
                ExtTerm::Add(Box::new(ExtTerm::from_term(a)), Box::new(ExtTerm::from_term(b)))
            }
            Term::Mul(a, b) => {
                ExtTerm::Mul(Box::new(ExtTerm::from_term(a)), Box::new(ExtTerm::from_term(b)))
            }
        }
    }

    pub fn to_term(&self) -> Option<Term> {
        Some(match self {
            ExtTerm::Var(x) => Term::Var(x.clone()),
            ExtTerm::Zero => Term::Zero,
            ExtTerm::Const(c) => Term::Const(c.clone()),
            ExtTerm::Succ(a) => Term::succ(a.to_term()?),
            ExtTerm::Add(a, b) => Term::add(a.to_term()?, b.to_term()?),
            ExtTerm::Mul(a, b) => Term::mul(a.to_term()?, b.to_term()?),
            ExtTerm::App(..) => return None,
        })
    }

    pub fn len(t: ExtTerm) -> ExtTerm {
        ExtTerm::App(Func::Len, vec![t])
    }

    pub fn exp2(t: ExtTerm) -> ExtTerm {
        ExtTerm::App(Func::Exp2, vec![t])
    }

    pub fn collect_vars(&self, out: &mut std::collections::BTreeSet<String>) {
        match self {
            ExtTerm::Var(x) => {
                out.insert(x.clone());
            }
            ExtTerm::Zero | ExtTerm::Const(_) => {}
            ExtTerm::Succ(a) => a.collect_vars(out),
            ExtTerm::Add(a, b) | ExtTerm::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            ExtTerm::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    fn replace_var(&self, x: &str, by: &ExtTerm) -> ExtTerm {
        match self {
            ExtTerm::Var(y) if y == x => by.clone(),
            ExtTerm::Var(_) | ExtTerm::Zero | ExtTerm::Const(_) => self.clone(),
            ExtTerm::Succ(a) => ExtTerm::Succ(Box::new(a.replace_var(x, by))),
            ExtTerm::Add(a, b) => {
                ExtTerm::Add(Box::new(a.replace_var(x, by)), Box::new(b.replace_var(x, by)))
            }
            ExtTerm::Mul(a, b) => {
                ExtTerm::Mul(Box::new(a.replace_var(x, by)), Box::new(b.replace_var(x, by)))
            }
            ExtTerm::App(f, args) => ExtTerm::App(*f, args.iter().map(|a| a.replace_var(x, by)).collect()),
        }
    }

    /// Takes the leftmost innermost application out, replacing it by `Var(fresh)`.
    fn extract_app(&self, fresh: &str) -> Option<(ExtTerm, Func, Vec<Term>)> {
        match self {
            ExtTerm::Var(_) | ExtTerm::Zero | ExtTerm::Const(_) => None,
            ExtTerm::Succ(a) => {
                let (a2, f, args) = a.extract_app(fresh)?;
                Some((ExtTerm::Succ(Box::new(a2)), f, args))
            }
            ExtTerm::Add(a, b) | ExtTerm::Mul(a, b) => {
                let rebuild = |l: ExtTerm, r: ExtTerm| match self {
                    ExtTerm::Add(..) => ExtTerm::Add(Box::new(l), Box::new(r)),
                    _ => ExtTerm::Mul(Box::new(l), Box::new(r)),
                };
                if let Some((a2, f, args)) = a.extract_app(fresh) {
                    return Some((rebuild(a2, (**b).clone()), f, args));
                }
                let (b2, f, args) = b.extract_app(fresh)?;
                Some((rebuild((**a).clone(), b2), f, args))
            }
            ExtTerm::App(func, args) => {
                for (k, arg) in args.iter().enumerate() {
                    if let Some((a2, f, inner)) = arg.extract_app(fresh) {
                        let mut args2 = args.clone();
                        args2[k] = a2;
                        return Some((ExtTerm::App(*func, args2), f, inner));
                    }
                }
                let core: Option<Vec<Term>> = args.iter().map(|a| a.to_term()).collect();
                Some((ExtTerm::Var(fresh.to_string()), *func, core?))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    Eq(ExtTerm, ExtTerm),
    Le(ExtTerm, ExtTerm),
    Lt(ExtTerm, ExtTerm),
    Bit(ExtTerm, ExtTerm),
}

impl Atom {
    fn args(&self) -> (&ExtTerm, &ExtTerm) {
        match self {
            Atom::Eq(a, b) | Atom::Le(a, b) | Atom::Lt(a, b) | Atom::Bit(a, b) => (a, b),
        }
    }

    fn rebuild(&self, a: ExtTerm, b: ExtTerm) -> Atom {
        match self {
            Atom::Eq(..) => Atom::Eq(a, b),
            Atom::Le(..) => Atom::Le(a, b),
            Atom::Lt(..) => Atom::Lt(a, b),
            Atom::Bit(..) => Atom::Bit(a, b),
        }
    }

    fn replace_var(&self, x: &str, by: &ExtTerm) -> Atom {
        let (a, b) = self.args();
        self.rebuild(a.replace_var(x, by), b.replace_var(x, by))
    }

    pub fn is_core(&self) -> bool {
        matches!(self, Atom::Eq(a, b) if a.to_term().is_some() && b.to_term().is_some())
    }
}

/// Elaborates an atom into the core language.
pub fn elaborate(atom: &Atom) -> Formula {
    elaborate_with(atom, &mut Namer::new())
}

fn elaborate_with(atom: &Atom, n: &mut Namer) -> Formula {
    let (a, b) = atom.args();
    let probe = "\u{0}probe";
    let has_app = a.extract_app(probe).is_some() || b.extract_app(probe).is_some();
    if has_app {
        let v = n.fresh();
        let (rest, func, args) = match a.extract_app(&v) {
            Some((a2, f, args)) => (atom.rebuild(a2, b.clone()), f, args),
            None => {
                let (b2, f, args) = b.extract_app(&v).expect("application present");
                (atom.rebuild(a.clone(), b2), f, args)
            }
        };
        let mut full = vec![Term::var(v.clone())];
        full.extend(args);
        let def = func.def().build(n, &full);
        let inner = elaborate_with(&rest, n);
        return Formula::exists(v, Formula::and(def, inner));
    }
    let ta = a.to_term().expect("core term");
    let tb = b.to_term().expect("core term");
    match atom {
        Atom::Eq(..) => Formula::eq(ta, tb),
        Atom::Le(..) => defs::le(n, ta, tb),
        Atom::Lt(..) => defs::lt(n, ta, tb),
        Atom::Bit(..) => defs::bit(n, ta, tb),
    }
}

/// Recovers the notation-level atom that elaborates exactly to `f`.
pub fn fold_atom(f: &Formula) -> Option<Atom> {
    let atom = fold_raw(f)?;
    if elaborate(&atom) == *f {
        Some(atom)
    } else {
        None
    }
}

fn fold_raw(f: &Formula) -> Option<Atom> {
    match f {
        Formula::Eq(a, b) => Some(Atom::Eq(ExtTerm::from_term(a), ExtTerm::from_term(b))),
        Formula::Exists(w, body) => {
            if let Formula::Eq(Term::Add(t1, wv), t2) = &**body {
                if **wv == Term::Var(w.clone()) && !t1.has_var(w) && !t2.has_var(w) {
                    return Some(match &**t1 {
                        Term::Succ(s) => Atom::Lt(ExtTerm::from_term(s), ExtTerm::from_term(t2)),
                        _ => Atom::Le(ExtTerm::from_term(t1), ExtTerm::from_term(t2)),
                    });
                }
            }
            if let Formula::And(def, rest) = &**body {
                let (d, args) = defs::recognize(def)?;
                let func = Func::from_def(d)?;
                if args[0] != Term::Var(w.clone()) || args[1..].iter().any(|t| t.has_var(w)) {
                    return None;
                }
                let inner = fold_raw(rest)?;
                let app = ExtTerm::App(func, args[1..].iter().map(ExtTerm::from_term).collect());
                return Some(inner.replace_var(w, &app));
            }
            bit_atom(f)
        }
        _ => None,
    }
}

fn bit_atom(f: &Formula) -> Option<Atom> {
    let args = defs::match_pattern(Def::Bit.pattern(), f, 2)?;
    Some(Atom::Bit(ExtTerm::from_term(&args[0]), ExtTerm::from_term(&args[1])))
}

/// Convenience constructors producing elaborated formulas.
pub fn le(a: ExtTerm, b: ExtTerm) -> Formula {
    elaborate(&Atom::Le(a, b))
}

pub fn lt(a: ExtTerm, b: ExtTerm) -> Formula {
    elaborate(&Atom::Lt(a, b))
}

pub fn bit(y: ExtTerm, x: ExtTerm) -> Formula {
    elaborate(&Atom::Bit(y, x))
}

pub fn eq(a: ExtTerm, b: ExtTerm) -> Formula {
    elaborate(&Atom::Eq(a, b))
}

/// `a <-> b` as `(a -> b) & (b -> a)`.
pub fn iff(a: Formula, b: Formula) -> Formula {
    Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
}

/// `call |z| <= bound . body`.
pub fn call_bounded(z: &str, bound: ExtTerm, body: Formula) -> Formula {
    Formula::call(z, Formula::imp(le(ExtTerm::len(ExtTerm::Var(z.into())), bound), body))
}

/// `cex |z| <= bound . body`.
pub fn cex_bounded(z: &str, bound: ExtTerm, body: Formula) -> Formula {
    Formula::cex(z, Formula::and(le(ExtTerm::len(ExtTerm::Var(z.into())), bound), body))
}

/// `all y < bound . body`.
pub fn all_below(y: &str, bound: ExtTerm, body: Formula) -> Formula {
    Formula::forall(y, Formula::imp(lt(ExtTerm::Var(y.into()), bound), body))
}

/// `ex y < bound . body`.
pub fn ex_below(y: &str, bound: ExtTerm, body: Formula) -> Formula {
    Formula::exists(y, Formula::and(lt(ExtTerm::Var(y.into()), bound), body))
}

/// Recognizes `call |z| <= b . H` / `cex |z| <= b . H`, returning `(z, b, H)`.
pub fn as_bounded_choice(f: &Formula) -> Option<(bool, &str, ExtTerm, &Formula)> {
    let (is_call, z, body) = match f {
        Formula::Call(z, body) => (true, z, body),
        Formula::Cex(z, body) => (false, z, body),
        _ => return None,
    };
    let (guard, h) = match (&**body, is_call) {
        (Formula::Imp(g, h), true) => (g, h),
        (Formula::And(g, h), false) => (g, h),
        _ => return None,
    };
    match fold_atom(guard)? {
        Atom::Le(ExtTerm::App(Func::Len, args), b) if args == vec![ExtTerm::Var(z.clone())] => {
            Some((is_call, z.as_str(), b, &**h))
        }
        _ => None,
    }
}

/// Recognizes `all y < b . H` / `ex y < b . H`, returning `(y, b, H)`.
pub fn as_bounded_blind(f: &Formula) -> Option<(bool, &str, ExtTerm, &Formula)> {
    let (is_all, y, body) = match f {
        Formula::Forall(y, body) => (true, y, body),
        Formula::Exists(y, body) => (false, y, body),
        _ => return None,
    };
    let (guard, h) = match (&**body, is_all) {
        (Formula::Imp(g, h), true) => (g, h),
        (Formula::And(g, h), false) => (g, h),
        _ => return None,
    };
    match fold_atom(guard)? {
        Atom::Lt(ExtTerm::Var(v), b) if v == *y => Some((is_all, y.as_str(), b, &**h)),
        _ => None,
    }
}

/// Recognizes `(a -> b) & (b -> a)`.
pub fn as_iff(f: &Formula) -> Option<(&Formula, &Formula)> {
    if let Formula::And(l, r) = f {
        if let (Formula::Imp(a, b), Formula::Imp(c, d)) = (&**l, &**r) {
            if a == d && b == c {
                return Some((a, b));
            }
        }
    }
    None
}
