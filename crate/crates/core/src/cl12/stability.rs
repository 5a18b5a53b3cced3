//! Classical validity of elementarizations: a ground tableau with
//! congruence closure at the leaves, then ground sampling for refutations.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;

use super::sequent::Sequent;
use crate::arena::{eval_with, EvalConfig, Truth};
use crate::syntax::{Formula, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stability {
    Valid,
    Invalid(String),
    Unknown(String),
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stability::Valid => f.write_str("valid"),
            Stability::Invalid(r) => write!(f, "invalid: {r}"),
            Stability::Unknown(r) => write!(f, "unknown: {r}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StabilityBudget {
    /// Tableau expansion steps.
    pub nodes: u64,
    /// Ground instantiations tried when looking for a counterexample.
    pub samples: usize,
    pub eval: EvalConfig,
}

impl Default for StabilityBudget {
    fn default() -> Self {
        StabilityBudget {
            nodes: 20_000,
            samples: 256,
            eval: EvalConfig { blind_bound: 64, step_budget: 200_000, decision_rules: true },
        }
    }
}

pub fn stability(s: &Sequent, budget: &StabilityBudget) -> Stability {
    formula_stability(&s.elementarization(), budget)
}

/// Validity of an elementary formula, free variables read universally.
pub fn formula_stability(f: &Formula, budget: &StabilityBudget) -> Stability {
    let mut tab = Tableau { budget: budget.nodes, used: 0, fresh: 0, avoid: f.all_vars() };
    match tab.refute(Branch { pending: VecDeque::from([(false, f.clone())]), ..Branch::default() }) {
        Some(true) => return Stability::Valid,
        Some(false) | None => {}
    }
    let exhausted = tab.used > tab.budget;
    if let Some(witness) = counterexample(f, budget) {
        return Stability::Invalid(witness);
    }
    Stability::Unknown(if exhausted {
        "tableau budget exhausted".into()
    } else {
        "no closed tableau and no counterexample found".into()
    })
}

const SAMPLE_VALUES: [u32; 8] = [0, 1, 2, 3, 5, 8, 13, 64];

fn counterexample(f: &Formula, budget: &StabilityBudget) -> Option<String> {
    let vars: Vec<String> = f.free_vars().into_iter().collect();
    let mut idx = vec![0usize; vars.len()];
    for _ in 0..budget.samples.max(1) {
        let assignment: Vec<(String, BigUint)> =
            vars.iter().zip(&idx).map(|(x, &i)| (x.clone(), BigUint::from(SAMPLE_VALUES[i]))).collect();
        if eval_with(f, &assignment, &budget.eval) == Truth::False {
            if assignment.is_empty() {
                return Some("the elementarization is false".into());
            }
            let shown: Vec<String> = assignment.iter().map(|(x, v)| format!("{x}={v}")).collect();
            return Some(format!("the elementarization is false at {}", shown.join(", ")));
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return None;
            }
            idx[k] += 1;
            if idx[k] < SAMPLE_VALUES.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
    None
}

#[derive(Clone, Default)]
struct Branch {
    pending: VecDeque<(bool, Formula)>,
    betas: Vec<(bool, Formula)>,
    lits: Vec<(bool, Term, Term)>,
    gammas: Vec<(bool, String, Formula)>,
    instances: HashSet<Formula>,
    rounds: usize,
}

struct Tableau {
    budget: u64,
    used: u64,
    fresh: usize,
    avoid: BTreeSet<String>,
}

const GAMMA_ROUNDS: usize = 2;
const POOL_LIMIT: usize = 12;

impl Tableau {
    fn skolem(&mut self) -> String {
        loop {
            self.fresh += 1;
            let name = format!("_c{}", self.fresh);
            if !self.avoid.contains(&name) {
                return name;
            }
        }
    }

    /// `Some(true)` when every branch closes, `Some(false)` on a saturated
    /// open branch, `None` when the budget runs out.
    fn refute(&mut self, mut b: Branch) -> Option<bool> {
        loop {
            self.used += 1;
            if self.used > self.budget {
                return None;
            }
            if let Some((sign, f)) = b.pending.pop_front() {
                match (sign, f) {
                    (s, Formula::Eq(l, r)) => b.lits.push((s, l, r)),
                    (s, Formula::Not(a)) => b.pending.push_back((!s, *a)),
                    (true, Formula::And(x, y)) => {
                        b.pending.push_back((true, *x));
                        b.pending.push_back((true, *y));
                    }
                    (false, Formula::Or(x, y)) => {
                        b.pending.push_back((false, *x));
                        b.pending.push_back((false, *y));
                    }
                    (false, Formula::Imp(x, y)) => {
                        b.pending.push_back((true, *x));
                        b.pending.push_back((false, *y));
                    }
                    (s, g @ (Formula::And(..) | Formula::Or(..) | Formula::Imp(..))) => b.betas.push((s, g)),
                    (true, Formula::Exists(x, a)) | (false, Formula::Forall(x, a)) => {
                        let c = self.skolem();
                        if let Ok(inst) = a.substitute(&x, &Term::var(c)) {
                            b.pending.push_back((sign, inst));
                        }
                    }
                    (s, Formula::Forall(x, a)) | (s, Formula::Exists(x, a)) => b.gammas.push((s, x, *a)),
                    // Choice operators never reach an elementarization.
                    (_, _) => {}
                }
                continue;
            }
            if !consistent(&b.lits) {
                return Some(true);
            }
            if let Some((s, g)) = b.betas.pop() {
                let sides: [(bool, Formula); 2] = match (s, g) {
                    (true, Formula::Or(x, y)) => [(true, *x), (true, *y)],
                    (false, Formula::And(x, y)) => [(false, *x), (false, *y)],
                    (_, Formula::Imp(x, y)) => [(false, *x), (true, *y)],
                    _ => unreachable!("only branching formulas are deferred"),
                };
                for side in sides {
                    let mut nb = b.clone();
                    nb.pending.push_back(side);
                    match self.refute(nb)? {
                        true => continue,
                        false => return Some(false),
                    }
                }
                return Some(true);
            }
            if b.gammas.is_empty() || b.rounds >= GAMMA_ROUNDS {
                return Some(false);
            }
            b.rounds += 1;
            let pool = term_pool(&b.lits);
            let mut added = false;
            for (s, x, body) in b.gammas.clone() {
                for t in &pool {
                    if let Ok(inst) = body.substitute(&x, t) {
                        let key = if s { inst.clone() } else { Formula::not(inst.clone()) };
                        if b.instances.insert(key) {
                            b.pending.push_back((s, inst));
                            added = true;
                        }
                    }
                }
            }
            if !added {
                return Some(false);
            }
        }
    }
}

fn term_pool(lits: &[(bool, Term, Term)]) -> Vec<Term> {
    let mut out: Vec<Term> = vec![Term::Zero];
    let mut vars = BTreeSet::new();
    for (_, l, r) in lits {
        l.collect_vars(&mut vars);
        r.collect_vars(&mut vars);
    }
    out.extend(vars.into_iter().map(Term::Var));
    for (_, l, r) in lits {
        for t in [l, r] {
            if !out.contains(t) {
                out.push(t.clone());
            }
        }
    }
    out.truncate(POOL_LIMIT);
    out
}

#[derive(Clone, Debug)]
enum Node {
    Leaf(Term),
    Succ(usize),
    Add(usize, usize),
    Mul(usize, usize),
}

/// Congruence closure over `0, ', +, *` with ground values propagated
/// through equivalence classes; distinct numbers are distinct.
struct Closure {
    nodes: Vec<Node>,
    index: HashMap<Term, usize>,
    parent: Vec<usize>,
}

impl Closure {
    fn new() -> Closure {
        Closure { nodes: Vec::new(), index: HashMap::new(), parent: Vec::new() }
    }

    fn add(&mut self, t: &Term) -> usize {
        if let Some(&i) = self.index.get(t) {
            return i;
        }
        let node = match t {
            Term::Succ(a) => Node::Succ(self.add(a)),
            Term::Add(a, b) => {
                let (x, y) = (self.add(a), self.add(b));
                Node::Add(x, y)
            }
            Term::Mul(a, b) => {
                let (x, y) = (self.add(a), self.add(b));
                Node::Mul(x, y)
            }
            _ => Node::Leaf(t.clone()),
        };
        let i = self.nodes.len();
        self.nodes.push(node);
        self.parent.push(i);
        self.index.insert(t.clone(), i);
        i
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }

    /// Runs to a fixpoint; false on a value clash.
    fn saturate(&mut self) -> bool {
        let mut known = 0;
        loop {
            let mut changed = false;
            let mut sig: HashMap<(u8, usize, usize), usize> = HashMap::new();
            for i in 0..self.nodes.len() {
                let key = match self.nodes[i] {
                    Node::Leaf(_) => continue,
                    Node::Succ(a) => (0, self.find(a), 0),
                    Node::Add(a, b) => (1, self.find(a), self.find(b)),
                    Node::Mul(a, b) => (2, self.find(a), self.find(b)),
                };
                match sig.get(&key) {
                    Some(&j) => changed |= self.union(i, j),
                    None => {
                        sig.insert(key, i);
                    }
                }
            }
            let mut class_val: HashMap<usize, BigUint> = HashMap::new();
            let mut by_val: HashMap<BigUint, usize> = HashMap::new();
            // Values propagate bottom-up; nodes are stored children first.
            for i in 0..self.nodes.len() {
                let v = match self.nodes[i].clone() {
                    Node::Leaf(Term::Zero) => Some(BigUint::default()),
                    Node::Leaf(Term::Const(c)) => Some(c),
                    Node::Leaf(_) => None,
                    Node::Succ(a) => {
                        let ra = self.find(a);
                        class_val.get(&ra).map(|x| x + 1u32)
                    }
                    Node::Add(a, b) | Node::Mul(a, b) => {
                        let is_add = matches!(self.nodes[i], Node::Add(..));
                        let (ra, rb) = (self.find(a), self.find(b));
                        match (class_val.get(&ra), class_val.get(&rb)) {
                            (Some(x), Some(y)) => Some(if is_add { x + y } else { x * y }),
                            _ => None,
                        }
                    }
                };
                let Some(v) = v else { continue };
                let r = self.find(i);
                match class_val.get(&r) {
                    Some(w) if *w != v => return false,
                    Some(_) => {}
                    None => {
                        class_val.insert(r, v.clone());
                    }
                }
                match by_val.get(&v) {
                    Some(&j) => {
                        if self.union(i, j) {
                            changed = true;
                            let root = self.find(i);
                            class_val.insert(root, v.clone());
                        }
                    }
                    None => {
                        by_val.insert(v, i);
                    }
                }
            }
            if !changed && class_val.len() == known {
                return true;
            }
            known = class_val.len();
        }
    }
}

/// Satisfiability of a conjunction of equalities and disequalities.
fn consistent(lits: &[(bool, Term, Term)]) -> bool {
    let mut cc = Closure::new();
    let ids: Vec<(bool, usize, usize)> = lits.iter().map(|(s, l, r)| (*s, cc.add(l), cc.add(r))).collect();
    for &(s, a, b) in &ids {
        if s {
            cc.union(a, b);
        }
    }
    if !cc.saturate() {
        return false;
    }
    ids.iter().all(|&(s, a, b)| s || cc.find(a) != cc.find(b))
}
