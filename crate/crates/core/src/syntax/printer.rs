use super::formula::Formula;
use super::sugar::{self, Atom, ExtTerm, Func};
use super::term::{to_binary, Term};

const QUANT: u8 = 0;
const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const NOT: u8 = 4;
const ATOM: u8 = 5;

/// Canonical ASCII rendering; notations are folded back where exact.
pub fn render(f: &Formula) -> String {
    render_prec(f).0
}

pub fn render_term(t: &Term) -> String {
    ext_prec(&ExtTerm::from_term(t)).0
}

pub fn render_ext(t: &ExtTerm) -> String {
    ext_prec(t).0
}

pub fn render_atom(a: &Atom) -> String {
    match a {
        Atom::Eq(x, y) => format!("{} = {}", render_ext(x), render_ext(y)),
        Atom::Le(x, y) => format!("{} <= {}", render_ext(x), render_ext(y)),
        Atom::Lt(x, y) => format!("{} < {}", render_ext(x), render_ext(y)),
        Atom::Bit(x, y) => format!("Bit({}, {})", render_ext(x), render_ext(y)),
    }
}

fn wrap(s: (String, u8), min: u8) -> String {
    if s.1 < min {
        format!("({})", s.0)
    } else {
        s.0
    }
}

fn binary(op: &str, level: u8, a: &Formula, b: &Formula, right_assoc: bool) -> (String, u8) {
    let (lmin, rmin) = if right_assoc { (level + 1, level) } else { (level + 1, level + 1) };
    let l = wrap(render_prec(a), lmin.max(IMP));
    let r = wrap(render_prec(b), rmin.max(IMP));
    (format!("{l} {op} {r}"), level)
}

fn render_prec(f: &Formula) -> (String, u8) {
    if matches!(f, Formula::Eq(..) | Formula::Exists(..)) {
        if let Some(atom) = sugar::fold_atom(f) {
            return (render_atom(&atom), ATOM);
        }
    }
    if let Some((is_call, z, b, h)) = sugar::as_bounded_choice(f) {
        let kw = if is_call { "call" } else { "cex" };
        return (format!("{kw} |{z}| <= {} . {}", render_ext(&b), render(h)), QUANT);
    }
    if let Some((is_all, y, b, h)) = sugar::as_bounded_blind(f) {
        let kw = if is_all { "all" } else { "ex" };
        return (format!("{kw} {y} < {} . {}", render_ext(&b), render(h)), QUANT);
    }
    if let Some((a, b)) = sugar::as_iff(f) {
        return binary("<->", IMP, a, b, false);
    }
    match f {
        Formula::Eq(a, b) => (format!("{} = {}", render_term(a), render_term(b)), ATOM),
        Formula::Not(a) => (format!("~{}", wrap(render_prec(a), NOT)), NOT),
        Formula::And(a, b) => binary("&", AND, a, b, true),
        Formula::Cand(a, b) => binary("cand", AND, a, b, true),
        Formula::Or(a, b) => binary("|", OR, a, b, true),
        Formula::Cor(a, b) => binary("cor", OR, a, b, true),
        Formula::Imp(a, b) => binary("->", IMP, a, b, true),
        Formula::Forall(x, a) => (format!("all {x} . {}", render(a)), QUANT),
        Formula::Exists(x, a) => (format!("ex {x} . {}", render(a)), QUANT),
        Formula::Call(x, a) => (format!("call {x} . {}", render(a)), QUANT),
        Formula::Cex(x, a) => (format!("cex {x} . {}", render(a)), QUANT),
    }
}

const T_ADD: u8 = 1;
const T_MUL: u8 = 2;
const T_POW: u8 = 3;
const T_POST: u8 = 4;
const T_ATOM: u8 = 5;

fn ext_prec(t: &ExtTerm) -> (String, u8) {
    match t {
        ExtTerm::Var(x) => (x.clone(), T_ATOM),
        ExtTerm::Zero => ("0".into(), T_ATOM),
        ExtTerm::Const(c) => (format!("#{}", to_binary(c)), T_ATOM),
        ExtTerm::Succ(a) => (format!("{}'", wrap(ext_prec(a), T_POST)), T_POST),
        ExtTerm::Add(a, b) => (
            format!("{} + {}", wrap(ext_prec(a), T_ADD), wrap(ext_prec(b), T_MUL)),
            T_ADD,
        ),
        ExtTerm::Mul(a, b) => (
            format!("{} * {}", wrap(ext_prec(a), T_MUL), wrap(ext_prec(b), T_POW)),
            T_MUL,
        ),
        ExtTerm::App(Func::Len, args) => (format!("|{}|", render_ext(&args[0])), T_ATOM),
        ExtTerm::App(Func::Exp2, args) => (format!("2^{}", wrap(ext_prec(&args[0]), T_POST)), T_POW),
        ExtTerm::App(f, args) => {
            let inner: Vec<String> = args.iter().map(render_ext).collect();
            (format!("{}({})", f.name(), inner.join(", ")), T_ATOM)
        }
    }
}
