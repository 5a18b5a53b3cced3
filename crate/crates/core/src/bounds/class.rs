//! Boundclasses given by generators and a closure mode.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;

use super::expr::{rename_match, BlowUp, BoundExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClosureMode {
    /// Just the syntactic variations of the generators.
    None,
    /// ♥: adds `0`, `b'` and `b+c`.
    Linear,
    /// ♠: the linear closure plus `b*c`.
    Poly,
}

impl ClosureMode {
    pub fn keyword(self) -> &'static str {
        match self {
            ClosureMode::None => "set",
            ClosureMode::Linear => "linear",
            ClosureMode::Poly => "poly",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            ClosureMode::None => "",
            ClosureMode::Linear => "♥",
            ClosureMode::Poly => "♠",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Boundclass {
    pub generators: Vec<BoundExpr>,
    pub mode: ClosureMode,
    pub name: Option<String>,
}

impl Boundclass {
    pub fn new(mode: ClosureMode, generators: Vec<BoundExpr>) -> Boundclass {
        Boundclass { generators, mode, name: None }
    }

    pub fn named(mut self, name: impl Into<String>) -> Boundclass {
        self.name = Some(name.into());
        self
    }

    /// `linear{x}`, `poly{2^|x|, 2^|x|^2}`, `set{x}`, or a standard name such as `B3` or `B1^2`.
    pub fn parse(src: &str, index: usize) -> Result<Boundclass, String> {
        let s = src.trim();
        if let Some(c) = standard_class(s, index) {
            return Ok(c);
        }
        let open = s.find('{').ok_or_else(|| format!("unknown boundclass `{s}`"))?;
        let body = s[open + 1..].strip_suffix('}').ok_or_else(|| format!("missing `}}` in `{s}`"))?;
        let mode = match s[..open].trim() {
            "linear" | "lin" => ClosureMode::Linear,
            "poly" => ClosureMode::Poly,
            "set" | "none" => ClosureMode::None,
            other => return Err(format!("unknown closure mode `{other}`")),
        };
        let generators = split_top_level(body)
            .into_iter()
            .filter(|g| !g.trim().is_empty())
            .map(BoundExpr::parse)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Boundclass::new(mode, generators))
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| self.to_string())
    }

    /// The same class with its generator family truncated at `index`
    /// instead; classes given by literal generators are unchanged.
    pub fn widened(&self, index: usize) -> Boundclass {
        self.name.as_deref().and_then(|n| standard_class(n, index)).unwrap_or_else(|| self.clone())
    }

    /// The generators, each renamed to be unary in `x`.
    pub fn unary_generators(&self) -> Vec<BoundExpr> {
        let mut out: Vec<BoundExpr> = Vec::new();
        for g in &self.generators {
            let u = g.unary("x");
            if !out.contains(&u) {
                out.push(u);
            }
        }
        out
    }

    /// Largest power of a generator sampled or used as a candidate.
    fn max_power(&self, index: usize) -> usize {
        if self.mode == ClosureMode::Poly {
            index.max(1)
        } else {
            1
        }
    }

    /// Representative members: `g^i` for generators `g`, with `i` up to
    /// `index` in polynomial mode. All are unary in `x`.
    pub fn samples(&self, index: usize) -> Vec<BoundExpr> {
        let mut out = Vec::new();
        for i in 1..=self.max_power(index) {
            for g in &self.generators {
                let b = BoundExpr::power(&g.unary("x"), i);
                if !out.contains(&b) {
                    out.push(b);
                }
            }
        }
        out
    }

    /// Members used as dominating witnesses: `k*g^i + k` for the fit
    /// constants `k`, in a fixed order, truncated to `budget` entries.
    pub fn candidates(&self, index: usize, budget: usize) -> Vec<Candidate> {
        let mut out = Vec::new();
        if self.mode == ClosureMode::None {
            out.extend(self.samples(index).into_iter().map(|base| Candidate { base, k: 0 }));
        } else {
            for i in 1..=self.max_power(index) {
                for g in &self.generators {
                    for k in FIT_CONSTANTS {
                        out.push(Candidate { base: BoundExpr::power(&g.unary("x"), i), k });
                    }
                }
            }
        }
        out.truncate(budget);
        out
    }
}

/// A dominating witness `k*base + k`, or `base` itself when `k` is 0.
/// Evaluated arithmetically rather than through the expanded sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub base: BoundExpr,
    pub k: usize,
}

impl Candidate {
    /// The witness written with the closure constructors.
    pub fn expr(&self) -> BoundExpr {
        if self.k == 0 {
            self.base.clone()
        } else {
            BoundExpr::scaled(&self.base, self.k)
        }
    }

    pub fn eval_at(&self, a: &BigUint, guard: u64) -> Result<BigUint, BlowUp> {
        let v = self.base.eval_at(a, guard)?;
        let k = BigUint::from(self.k);
        Ok(if self.k == 0 { v } else { v * &k + k })
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 0 {
            write!(f, "{}", self.base)
        } else {
            write!(f, "{}*({}) + {}", self.k, self.base, self.k)
        }
    }
}

/// Constants `k` of the witnesses `k*b + k`.
pub const FIT_CONSTANTS: [usize; 6] = [1, 2, 4, 16, 64, 256];

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl fmt::Display for Boundclass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "{}{{{}}}", self.mode.keyword(), gens.join(", "))
    }
}

/// How a bound is built in a closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Derivation {
    /// A syntactic variation of generator `index`.
    Generator { index: usize, instance: BoundExpr },
    Zero,
    Succ(Box<Derivation>),
    Add(Box<Derivation>, Box<Derivation>),
    Mul(Box<Derivation>, Box<Derivation>),
}

impl Derivation {
    /// The bound this derivation constructs.
    pub fn replay(&self) -> BoundExpr {
        match self {
            Derivation::Generator { instance, .. } => instance.clone(),
            Derivation::Zero => BoundExpr::Zero,
            Derivation::Succ(a) => BoundExpr::succ(a.replay()),
            Derivation::Add(a, b) => BoundExpr::add(a.replay(), b.replay()),
            Derivation::Mul(a, b) => BoundExpr::mul(a.replay(), b.replay()),
        }
    }

    pub fn steps(&self) -> usize {
        match self {
            Derivation::Generator { .. } | Derivation::Zero => 1,
            Derivation::Succ(a) => 1 + a.steps(),
            Derivation::Add(a, b) | Derivation::Mul(a, b) => 1 + a.steps() + b.steps(),
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Derivation::Generator { index, instance } => write!(f, "gen{index}[{instance}]"),
            Derivation::Zero => f.write_str("zero"),
            Derivation::Succ(a) => write!(f, "succ({a})"),
            Derivation::Add(a, b) => write!(f, "add({a}, {b})"),
            Derivation::Mul(a, b) => write!(f, "mul({a}, {b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Yes(Derivation),
    /// `exhausted` is false when the search was complete, which makes the
    /// answer a definite non-membership.
    NotFound { exhausted: bool },
}

impl Membership {
    pub fn is_yes(&self) -> bool {
        matches!(self, Membership::Yes(_))
    }

    pub fn definitely_not(&self) -> bool {
        matches!(self, Membership::NotFound { exhausted: false })
    }
}

/// Membership of `b` in the closure of `c`, decided by decomposing `b`
/// along the closure constructors. `budget` caps visited nodes.
pub fn closure_contains(c: &Boundclass, b: &BoundExpr, budget: usize) -> Membership {
    let mut left = budget;
    match derive(c, b, &mut left) {
        Ok(Some(d)) => Membership::Yes(d),
        Ok(None) => Membership::NotFound { exhausted: false },
        Err(()) => Membership::NotFound { exhausted: true },
    }
}

fn derive(c: &Boundclass, b: &BoundExpr, left: &mut usize) -> Result<Option<Derivation>, ()> {
    if *left == 0 {
        return Err(());
    }
    *left -= 1;
    for (index, g) in c.generators.iter().enumerate() {
        if rename_match(g, b, &mut BTreeMap::new()) {
            return Ok(Some(Derivation::Generator { index, instance: b.clone() }));
        }
    }
    if c.mode == ClosureMode::None {
        return Ok(None);
    }
    Ok(match b {
        BoundExpr::Zero => Some(Derivation::Zero),
        BoundExpr::Succ(a) => derive(c, a, left)?.map(|d| Derivation::Succ(Box::new(d))),
        BoundExpr::Add(x, y) => match derive(c, x, left)? {
            Some(dx) => derive(c, y, left)?.map(|dy| Derivation::Add(Box::new(dx), Box::new(dy))),
            None => None,
        },
        BoundExpr::Mul(x, y) if c.mode == ClosureMode::Poly => match derive(c, x, left)? {
            Some(dx) => derive(c, y, left)?.map(|dy| Derivation::Mul(Box::new(dx), Box::new(dy))),
            None => None,
        },
        _ => None,
    })
}

/// Default truncation index for the infinite generator families.
pub const DEFAULT_INDEX: usize = 3;

fn p(s: &str) -> BoundExpr {
    BoundExpr::parse(s).expect("well-formed standard generator")
}

/// A standard class by name: `B1^k` (also `B1_k`), `B2` ... `B8`.
pub fn standard_class(name: &str, index: usize) -> Option<Boundclass> {
    let n = name.trim();
    let index = index.max(1);
    if let Some(k) = n.strip_prefix("B1^").or_else(|| n.strip_prefix("B1_")) {
        let k: usize = k.parse().ok().filter(|&k| k >= 1)?;
        let g = BoundExpr::power(&p("|x|"), k);
        return Some(Boundclass::new(ClosureMode::Linear, vec![g]).named(format!("B1^{k}")));
    }
    let family = |f: &dyn Fn(usize) -> BoundExpr| (1..=index).map(f).collect::<Vec<_>>();
    let class = match n {
        "B2" => Boundclass::new(ClosureMode::Poly, vec![p("|x|")]),
        "B3" => Boundclass::new(ClosureMode::Linear, vec![p("x")]),
        "B4" => Boundclass::new(
            ClosureMode::Linear,
            family(&|i| BoundExpr::mul(p("x"), BoundExpr::power(&p("|x|"), i))),
        ),
        "B5" => Boundclass::new(ClosureMode::Poly, vec![p("x")]),
        "B6" => Boundclass::new(ClosureMode::Poly, family(&|i| BoundExpr::exp2(BoundExpr::power(&p("|x|"), i)))),
        "B7" => Boundclass::new(ClosureMode::Poly, vec![p("2^x")]),
        "B8" => Boundclass::new(ClosureMode::Poly, family(&|i| BoundExpr::exp2(BoundExpr::power(&p("x"), i)))),
        _ => return None,
    };
    Some(class.named(n))
}

/// `B1^1 ... B1^index, B2, ..., B8` with families truncated at `index`.
pub fn standard_classes(index: usize) -> Vec<Boundclass> {
    let mut names: Vec<String> = (1..=index.max(1)).map(|k| format!("B1^{k}")).collect();
    names.extend((2..=8).map(|k| format!("B{k}")));
    names.iter().map(|n| standard_class(n, index).expect("standard name")).collect()
}

/// The growth-rate word used in reports.
pub fn describe(name: &str) -> String {
    match name {
        "B1^1" => "logarithmic".into(),
        "B2" => "polylogarithmic".into(),
        "B3" => "linear".into(),
        "B4" => "quasilinear".into(),
        "B5" => "polynomial".into(),
        "B6" => "quasipolynomial".into(),
        "B7" => "exponential-with-linear-exponent".into(),
        "B8" => "exponential-with-polynomial-exponent".into(),
        other => match other.strip_prefix("B1^") {
            Some(k) => format!("log^{k}"),
            None => other.to_string(),
        },
    }
}
