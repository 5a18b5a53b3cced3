use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::Zero;

use super::formula::Formula;
use super::moves::{Action, Labmove, MovePath, Player};
use super::term::Term;
use super::SyntaxError;

/// How a development instantiates a choice quantifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fresh {
    /// The lowest-indexed `y<k>` not occurring in the formula.
    Auto,
    Var(String),
    Const(BigUint),
}

/// The term a constant move denotes; `0` maps to the constant `0` of the core language.
pub fn const_term(c: &BigUint) -> Term {
    if c.is_zero() {
        Term::Zero
    } else {
        Term::Const(c.clone())
    }
}

/// The lowest-indexed variable `y1, y2, ...` outside `avoid`.
pub fn fresh_var(avoid: &BTreeSet<String>) -> String {
    (1..)
        .map(|k| format!("y{k}"))
        .find(|v| !avoid.contains(v))
        .expect("unbounded supply")
}

/// The player who resolves a choice operator in positive position.
fn owner(f: &Formula) -> Option<Player> {
    match f {
        Formula::Cand(..) | Formula::Call(..) => Some(Player::Bottom),
        Formula::Cor(..) | Formula::Cex(..) => Some(Player::Top),
        _ => None,
    }
}

/// A surface occurrence of a choice operator.
#[derive(Clone, Debug)]
pub struct Occurrence<'a> {
    pub components: Vec<u8>,
    pub formula: &'a Formula,
    /// The player entitled to resolve the occurrence.
    pub mover: Player,
}

/// All surface choice occurrences of `f`, with antecedents of `->` flipping ownership.
pub fn occurrences(f: &Formula) -> Vec<Occurrence<'_>> {
    let mut out = Vec::new();
    collect_occ(f, &mut Vec::new(), false, &mut out);
    out
}

fn collect_occ<'a>(f: &'a Formula, path: &mut Vec<u8>, flipped: bool, out: &mut Vec<Occurrence<'a>>) {
    match f {
        Formula::Eq(..) | Formula::Not(_) => {}
        Formula::Forall(_, a) | Formula::Exists(_, a) => collect_occ(a, path, flipped, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            let flip_a = matches!(f, Formula::Imp(..)) != flipped;
            path.push(0);
            collect_occ(a, path, flip_a, out);
            path.pop();
            path.push(1);
            collect_occ(b, path, flipped, out);
            path.pop();
        }
        _ => {
            let mover = owner(f).expect("choice operator");
            out.push(Occurrence {
                components: path.clone(),
                formula: f,
                mover: if flipped { mover.opponent() } else { mover },
            });
        }
    }
}

/// Resolves the occurrence addressed by `path` on behalf of `player`.
/// Variable instances are accepted here; `prefixation` rejects them.
pub fn apply_path(f: &Formula, player: Player, path: &MovePath) -> Result<Formula, String> {
    apply_at(f, &path.components, player, &path.action)
}

fn apply_at(f: &Formula, comps: &[u8], who: Player, action: &Action) -> Result<Formula, String> {
    match f {
        Formula::Forall(x, a) => return Ok(Formula::forall(x.clone(), apply_at(a, comps, who, action)?)),
        Formula::Exists(x, a) => return Ok(Formula::exists(x.clone(), apply_at(a, comps, who, action)?)),
        _ => {}
    }
    if let Some((&c, rest)) = comps.split_first() {
        let (a, b) = match f {
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => (a, b),
            _ => return Err("path leaves the classical structure".into()),
        };
        let sub_who = if c == 0 && matches!(f, Formula::Imp(..)) { who.opponent() } else { who };
        let (na, nb) = if c == 0 {
            (apply_at(a, rest, sub_who, action)?, (**b).clone())
        } else {
            ((**a).clone(), apply_at(b, rest, sub_who, action)?)
        };
        return Ok(match f {
            Formula::And(..) => Formula::and(na, nb),
            Formula::Or(..) => Formula::or(na, nb),
            _ => Formula::imp(na, nb),
        });
    }
    let mover = owner(f).ok_or_else(|| "no choice operator at the addressed position".to_string())?;
    if mover != who {
        return Err("the addressed choice belongs to the other player".into());
    }
    match (f, action) {
        (Formula::Cand(a, b) | Formula::Cor(a, b), Action::Choose(i)) => {
            Ok(if *i == 0 { (**a).clone() } else { (**b).clone() })
        }
        (Formula::Call(x, body) | Formula::Cex(x, body), Action::Const(c)) => {
            body.substitute(x, &const_term(c)).map_err(|e| e.to_string())
        }
        (Formula::Call(x, body) | Formula::Cex(x, body), Action::Var(y)) => {
            body.substitute(x, &Term::var(y.clone())).map_err(|e| e.to_string())
        }
        (Formula::Cand(..) | Formula::Cor(..), _) => Err("binary choice expects 0 or 1".into()),
        _ => Err("choice quantifier expects #constant".into()),
    }
}

/// Every single-move successor of `f` available to `player`.
pub fn developments(f: &Formula, player: Player, fresh: &Fresh) -> Vec<(MovePath, Formula)> {
    let mut out = Vec::new();
    for occ in occurrences(f) {
        if occ.mover != player {
            continue;
        }
        let actions = match occ.formula {
            Formula::Cand(..) | Formula::Cor(..) => vec![Action::Choose(0), Action::Choose(1)],
            _ => vec![match fresh {
                Fresh::Auto => Action::Var(fresh_var(&f.all_vars())),
                Fresh::Var(y) => Action::Var(y.clone()),
                Fresh::Const(c) => Action::Const(c.clone()),
            }],
        };
        for action in actions {
            let path = MovePath::new(occ.components.clone(), action);
            if let Ok(g) = apply_path(f, player, &path) {
                out.push((path, g));
            }
        }
    }
    out
}

/// Applies one labmove; the error carries the reason.
pub fn apply_labmove(f: &Formula, lm: &Labmove) -> Result<Formula, String> {
    let path = MovePath::parse(&lm.mv).map_err(|e| e.to_string())?;
    if let Action::Var(_) = path.action {
        return Err("moves must name binary constants".into());
    }
    apply_path(f, lm.player, &path)
}

/// The parasentence `<pos>!f` that the position brings `f` down to.
pub fn prefixation(pos: &[Labmove], f: &Formula) -> Result<Formula, SyntaxError> {
    let mut cur = f.clone();
    for (index, lm) in pos.iter().enumerate() {
        cur = apply_labmove(&cur, lm).map_err(|reason| SyntaxError::IllegalMove {
            index,
            player: lm.player,
            reason,
        })?;
    }
    Ok(cur)
}

/// Headers of all paralegal moves together with their proper prefixes.
pub fn headers_of(f: &Formula) -> BTreeSet<String> {
    let mut heads = BTreeSet::new();
    collect_headers(f, "", &mut heads);
    let mut out: BTreeSet<String> = BTreeSet::new();
    out.insert(String::new());
    for h in &heads {
        for (k, _) in h.char_indices() {
            out.insert(h[..k].to_string());
        }
        out.insert(h.clone());
    }
    out
}

fn collect_headers(f: &Formula, prefix: &str, out: &mut BTreeSet<String>) {
    match f {
        Formula::Eq(..) | Formula::Not(_) => {}
        Formula::Forall(_, a) | Formula::Exists(_, a) => collect_headers(a, prefix, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            collect_headers(a, &format!("{prefix}0."), out);
            collect_headers(b, &format!("{prefix}1."), out);
        }
        Formula::Cand(a, b) | Formula::Cor(a, b) => {
            out.insert(format!("{prefix}0"));
            out.insert(format!("{prefix}1"));
            collect_headers(a, prefix, out);
            collect_headers(b, prefix, out);
        }
        Formula::Call(_, a) | Formula::Cex(_, a) => {
            out.insert(format!("{prefix}#"));
            collect_headers(a, prefix, out);
        }
    }
}

/// The subformula at `components`, looking through blind quantifiers.
pub fn locate<'a>(f: &'a Formula, components: &[u8]) -> Option<&'a Formula> {
    let mut cur = f;
    let mut rest = components;
    loop {
        match cur {
            Formula::Forall(_, a) | Formula::Exists(_, a) => cur = a,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) if !rest.is_empty() => {
                cur = if rest[0] == 0 { a } else { b };
                rest = &rest[1..];
            }
            _ if rest.is_empty() => return Some(cur),
            _ => return None,
        }
    }
}
