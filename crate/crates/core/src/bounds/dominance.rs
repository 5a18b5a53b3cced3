//! Sampled pointwise comparison of bounds.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use super::expr::{BoundExpr, DEFAULT_EXP_GUARD};

/// The sample grid used when none is given.
pub fn default_grid() -> Vec<BigUint> {
    [0u32, 1, 2, 3, 5, 8, 16, 64].into_iter().map(BigUint::from).collect()
}

/// Cap on the number of grid tuples visited for multi-variable bounds.
pub const MAX_POINTS: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dominance {
    /// `b <= c` at every evaluated point; `skipped` points tripped the exponent guard.
    HoldsOnSamples { points: usize, skipped: usize },
    Falsified { point: Vec<(String, BigUint)>, lhs: BigUint, rhs: BigUint },
}

impl Dominance {
    pub fn holds(&self) -> bool {
        matches!(self, Dominance::HoldsOnSamples { .. })
    }
}

/// Values of `b` and `c` at `point`. When exactly one side is unary and the
/// other is not, the unary side is applied to the maximum of the tuple.
pub fn values_at(b: &BoundExpr, c: &BoundExpr, point: &[(String, BigUint)]) -> Option<(BigUint, BigUint)> {
    let env: BTreeMap<String, BigUint> = point.iter().cloned().collect();
    let max = point.iter().map(|(_, v)| v.clone()).max().unwrap_or_default();
    let side = |e: &BoundExpr| -> Option<BigUint> {
        let vars = e.vars();
        let covered = vars.iter().all(|v| env.contains_key(v));
        if covered {
            e.eval(&env, DEFAULT_EXP_GUARD).ok().flatten()
        } else if vars.len() <= 1 {
            e.eval_at(&max, DEFAULT_EXP_GUARD).ok()
        } else {
            None
        }
    };
    Some((side(b)?, side(c)?))
}

/// The variables a comparison ranges over.
fn point_vars(b: &BoundExpr, c: &BoundExpr) -> Vec<String> {
    let (vb, vc) = (b.vars(), c.vars());
    if vb.len() <= 1 && vc.len() <= 1 {
        return vec![vb.into_iter().chain(vc).next().unwrap_or_else(|| "x".into())];
    }
    if vc.len() == 1 && !vc.is_subset(&vb) {
        return vb.into_iter().collect();
    }
    if vb.len() == 1 && !vb.is_subset(&vc) {
        return vc.into_iter().collect();
    }
    vb.union(&vc).cloned().collect()
}

/// Checks `b ⪯ c` on every tuple drawn from `grid`.
pub fn dominated(b: &BoundExpr, c: &BoundExpr, grid: &[BigUint]) -> Dominance {
    let vars = point_vars(b, c);
    let mut idx = vec![0usize; vars.len()];
    let (mut points, mut skipped) = (0, 0);
    if grid.is_empty() {
        return Dominance::HoldsOnSamples { points, skipped };
    }
    for _ in 0..MAX_POINTS {
        let point: Vec<(String, BigUint)> = vars.iter().zip(&idx).map(|(v, &i)| (v.clone(), grid[i].clone())).collect();
        match values_at(b, c, &point) {
            Some((lhs, rhs)) if lhs > rhs => return Dominance::Falsified { point, lhs, rhs },
            Some(_) => points += 1,
            None => skipped += 1,
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Dominance::HoldsOnSamples { points, skipped };
            }
            idx[k] += 1;
            if idx[k] < grid.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
    Dominance::HoldsOnSamples { points, skipped }
}

/// Values of a unary bound along a grid; `None` where the guard trips.
pub fn profile(b: &BoundExpr, grid: &[BigUint], guard: u64) -> Vec<Option<BigUint>> {
    grid.iter().map(|a| b.eval_at(a, guard).ok()).collect()
}

/// Pointwise `<=` of two profiles. A guarded value on the right counts as
/// larger than anything; one on the left only as at most another guarded value.
pub fn profile_le(a: &[Option<BigUint>], b: &[Option<BigUint>]) -> bool {
    a.iter().zip(b).all(|(x, y)| match (x, y) {
        (Some(x), Some(y)) => x <= y,
        (None, Some(_)) => false,
        _ => true,
    })
}
