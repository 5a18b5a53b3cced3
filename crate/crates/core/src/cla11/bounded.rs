//! Bounded formulas: every choice quantifier carries a length bound from a boundclass.

use crate::bounds::{closure_contains, BoundExpr, Boundclass};
use crate::syntax::sugar::as_bounded_choice;
use crate::syntax::{Formula, QuantKind};

/// Why `f` is not `class`-bounded, or `None` when it is. Membership of
/// each bound is searched with `budget` closure nodes.
pub fn bounded_violation(f: &Formula, class: &Boundclass, budget: usize) -> Option<String> {
    let blind = f.bound_vars_of(&[QuantKind::Forall, QuantKind::Exists]);
    let mut problem = None;
    f.walk(&mut |g| {
        if problem.is_some() || !matches!(g, Formula::Call(..) | Formula::Cex(..)) {
            return;
        }
        problem = choice_violation(g, class, budget, &blind);
    });
    problem
}

pub fn is_bounded_formula(f: &Formula, class: &Boundclass, budget: usize) -> bool {
    bounded_violation(f, class, budget).is_none()
}

fn choice_violation(
    g: &Formula,
    class: &Boundclass,
    budget: usize,
    blind: &std::collections::BTreeSet<String>,
) -> Option<String> {
    let Some((_, z, bound, _)) = as_bounded_choice(g) else {
        let (q, x) = match g {
            Formula::Call(x, _) => ("call", x),
            Formula::Cex(x, _) => ("cex", x),
            _ => unreachable!("only choice quantifiers are inspected"),
        };
        return Some(format!("`{q} {x}` is not of the form {q} |{x}| <= b|s| . H"));
    };
    let Some(b) = BoundExpr::from_length_form(&bound) else {
        return Some(format!("bound of `{z}` is not a bound applied to lengths |s|"));
    };
    let vars = b.vars();
    if vars.contains(z) {
        return Some(format!("bounded variable {z} occurs in its own bound"));
    }
    if let Some(v) = std::iter::once(z).chain(vars.iter().map(String::as_str)).find(|v| blind.contains(*v)) {
        return Some(format!("variable {v} of the bound on {z} is also bound by all/ex"));
    }
    let m = closure_contains(class, &b, budget);
    if m.is_yes() {
        None
    } else if m.definitely_not() {
        Some(format!("bound {b} of `{z}` is not in {class}"))
    } else {
        Some(format!("membership of {b} in {class} undecided within {budget} closure nodes"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn class(name: &str) -> Boundclass {
        Boundclass::parse(name, 3).unwrap()
    }

    #[test]
    fn bounded_choice_shapes() {
        let f = parse_formula("cex |z| <= |u| + |v| . z = u + v").unwrap();
        assert!(is_bounded_formula(&f, &class("B3"), 500));
        assert!(!is_bounded_formula(&f, &class("B1^1"), 500));
        let unbounded = parse_formula("cex z . z = u").unwrap();
        assert!(!is_bounded_formula(&unbounded, &class("B5"), 500));
        let captured = parse_formula("(call |z| <= |s| . z = z) & all z . z = z").unwrap();
        assert!(!is_bounded_formula(&captured, &class("B5"), 500));
        assert!(is_bounded_formula(&parse_formula("all x . x = x").unwrap(), &class("B1^1"), 500));
    }
}
