//! Bit-serial arithmetic with explicit resource charging.
//!
//! Each routine walks its inputs one bit position at a time, keeping only
//! an index register and a carry-like register live. One time unit is
//! charged per loop iteration; live space is the sum of the register widths.
//! Output bits go to the move being written and cost no space.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::arena::Meter;
use crate::syntax::term::bit_len;

fn width(n: u64) -> u64 {
    64 - n.leading_zeros() as u64
}

fn bit(n: &BigUint, i: u64) -> bool {
    n.bit(i)
}

/// Live cells for an index register holding `y` plus `extra` cells.
fn charge(meter: &mut Meter, y: u64, extra: u64) {
    meter.tick(1);
    meter.set_space(width(y).max(1) + extra);
}

/// `u + v`, carrying right to left.
pub fn add(u: &BigUint, v: &BigUint, meter: &mut Meter) -> BigUint {
    let mut z = BigUint::zero();
    let mut carry = false;
    let n = bit_len(u).max(bit_len(v));
    for y in 0..=n {
        charge(meter, y, 1);
        let (a, b) = (bit(u, y), bit(v, y));
        if a ^ b ^ carry {
            z.set_bit(y, true);
        }
        carry = (a && b) || (carry && (a ^ b));
    }
    meter.set_space(0);
    z
}

/// The carry generated at each position `y < max(|u|,|v|)` when adding.
pub fn carry_trace(u: &BigUint, v: &BigUint) -> Vec<bool> {
    let mut out = Vec::new();
    let mut carry = false;
    for y in 0..bit_len(u).max(bit_len(v)) {
        let (a, b) = (bit(u, y), bit(v, y));
        carry = (a && b) || (carry && (a ^ b));
        out.push(carry);
    }
    out
}

/// Compares from the most significant bit down: lengths first, then the
/// first position where the two differ.
pub fn compare(u: &BigUint, v: &BigUint, meter: &mut Meter) -> Ordering {
    let (lu, lv) = (bit_len(u), bit_len(v));
    meter.tick(1);
    meter.set_space(width(lu).max(width(lv)).max(1));
    if lu != lv {
        meter.set_space(0);
        return lu.cmp(&lv);
    }
    let mut result = Ordering::Equal;
    for y in (0..lu).rev() {
        charge(meter, y, 0);
        match (bit(u, y), bit(v, y)) {
            (true, false) => {
                result = Ordering::Greater;
                break;
            }
            (false, true) => {
                result = Ordering::Less;
                break;
            }
            _ => {}
        }
    }
    meter.set_space(0);
    result
}

/// `u ⊖ v = max(0, u - v)`: a comparison, then borrowing right to left.
pub fn monus(u: &BigUint, v: &BigUint, meter: &mut Meter) -> BigUint {
    if compare(u, v, meter) != Ordering::Greater {
        return BigUint::zero();
    }
    let mut z = BigUint::zero();
    let mut borrow = false;
    for y in 0..bit_len(u) {
        charge(meter, y, 1);
        let (a, b) = (bit(u, y), bit(v, y));
        if a ^ b ^ borrow {
            z.set_bit(y, true);
        }
        borrow = (!a && (b || borrow)) || (a && b && borrow);
    }
    meter.set_space(0);
    z
}

/// Whether position `y < |u|` borrows from the next one when computing `u - v`.
pub fn borrow_trace(u: &BigUint, v: &BigUint) -> Vec<bool> {
    let mut out = Vec::new();
    let mut borrow = false;
    for y in 0..bit_len(u).max(bit_len(v)) {
        let (a, b) = (bit(u, y), bit(v, y));
        borrow = (!a && (b || borrow)) || (a && b && borrow);
        out.push(borrow);
    }
    out
}

/// `u × v` column by column: bit `y` of the product is the parity of the
/// column sum plus the incoming carry, the rest of which moves left.
pub fn mult(u: &BigUint, v: &BigUint, meter: &mut Meter) -> BigUint {
    let mut z = BigUint::zero();
    let (lu, lv) = (bit_len(u), bit_len(v));
    if lu == 0 || lv == 0 {
        meter.tick(1);
        return z;
    }
    let mut carry: u64 = 0;
    for y in 0..lu + lv {
        let column = bitsum_bounded(y, y, u, v, meter, width(carry));
        let total = carry + column;
        charge(meter, y, width(total));
        if total & 1 == 1 {
            z.set_bit(y, true);
        }
        carry = total >> 1;
    }
    meter.set_space(0);
    z
}

/// The carries `Carry(y,u,v)` into each column `y` of the product.
pub fn mult_carries(u: &BigUint, v: &BigUint) -> Vec<u64> {
    let mut out = Vec::new();
    let mut carry = 0;
    for y in 0..bit_len(u) + bit_len(v) {
        out.push(carry);
        carry = (carry + crate::syntax::defs::bitsum_value(y, y, u, v)) >> 1;
    }
    out
}

fn bitsum_bounded(x: u64, y: u64, u: &BigUint, v: &BigUint, meter: &mut Meter, extra: u64) -> u64 {
    let (lu, lv) = (bit_len(u), bit_len(v));
    if lu == 0 || lv == 0 {
        meter.tick(1);
        return 0;
    }
    let hi = x.min(y).min(lu - 1);
    let lo = (y + 1).saturating_sub(lv);
    let mut total = 0;
    let mut i = lo;
    while i <= hi {
        charge(meter, i, width(y) + width(total) + extra);
        if bit(u, i) && bit(v, y - i) {
            total += 1;
        }
        i += 1;
    }
    total
}

/// `Bitsum(x,y,u,v) = Σ_{i ≤ min(x,y)} (u)_i·(v)_{y-i}`; positions where
/// either bit is necessarily 0 are skipped.
pub fn bitsum(x: &BigUint, y: &BigUint, u: &BigUint, v: &BigUint, meter: &mut Meter) -> BigUint {
    let cap = bit_len(u) + bit_len(v) + 1;
    let small = |n: &BigUint| u64::try_from(n).unwrap_or(u64::MAX);
    let (x, y) = (small(x), small(y));
    if y > cap {
        meter.tick(1);
        return BigUint::zero();
    }
    let total = bitsum_bounded(x, y, u, v, meter, 0);
    meter.set_space(0);
    BigUint::from(total)
}

/// `⌊u/2⌋`: bit `y` of the result is bit `y+1` of `u`.
pub fn half(u: &BigUint, meter: &mut Meter) -> BigUint {
    let mut z = BigUint::zero();
    for y in 0..bit_len(u).saturating_sub(1) {
        charge(meter, y, 0);
        if bit(u, y + 1) {
            z.set_bit(y, true);
        }
    }
    meter.tick(1);
    meter.set_space(0);
    z
}

/// `Br_i(x,s)`: `s` with bit `x` set to `i`, copied bit by bit. `None`
/// unless `x < |s|`.
pub fn br(i: u8, x: &BigUint, s: &BigUint, meter: &mut Meter) -> Option<BigUint> {
    let ls = bit_len(s);
    let x = u64::try_from(x).ok().filter(|&x| x < ls)?;
    let mut z = BigUint::zero();
    for y in 0..ls {
        charge(meter, y, width(x));
        let b = if y == x { i == 1 } else { bit(s, y) };
        if b {
            z.set_bit(y, true);
        }
    }
    meter.set_space(0);
    Some(z)
}

/// `|x|` by scanning for the highest set bit.
pub fn length(x: &BigUint, meter: &mut Meter) -> BigUint {
    let mut top = 0;
    for y in 0..bit_len(x) {
        charge(meter, y, width(top));
        if bit(x, y) {
            top = y + 1;
        }
    }
    meter.tick(1);
    meter.set_space(0);
    BigUint::from(top)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BigUint {
        BigUint::parse_bytes(s.as_bytes(), 2).unwrap()
    }

    #[test]
    fn add_matches_worked_sum() {
        let mut m = Meter::default();
        assert_eq!(add(&b("10101"), &b("1101"), &mut m), b("100010"));
        assert!(m.time > 0 && m.space == 0 && m.space_peak > 0);
    }

    #[test]
    fn borrow_trace_of_six_minus_five() {
        assert_eq!(borrow_trace(&b("110"), &b("101")), vec![true, false, false]);
        assert_eq!(monus(&b("110"), &b("101"), &mut Meter::default()), b("1"));
        assert_eq!(monus(&b("101"), &b("110"), &mut Meter::default()), BigUint::zero());
    }

    #[test]
    fn mult_matches_worked_product() {
        assert_eq!(mult(&b("11011"), &b("101"), &mut Meter::default()), b("10000111"));
    }

    #[test]
    fn compare_same_length() {
        assert_eq!(compare(&b("111"), &b("100"), &mut Meter::default()), Ordering::Greater);
        assert_eq!(compare(&b("11"), &b("100"), &mut Meter::default()), Ordering::Less);
        assert_eq!(compare(&b("0"), &b("0"), &mut Meter::default()), Ordering::Equal);
    }

    #[test]
    fn small_helpers() {
        let mut m = Meter::default();
        assert_eq!(half(&b("1011"), &mut m), b("101"));
        assert_eq!(br(0, &BigUint::from(1u32), &b("1011"), &mut m), Some(b("1001")));
        assert_eq!(br(1, &BigUint::from(2u32), &b("1011"), &mut m), Some(b("1111")));
        assert_eq!(br(1, &BigUint::from(4u32), &b("1011"), &mut m), None);
        assert_eq!(length(&b("1111"), &mut m), BigUint::from(4u32));
        assert_eq!(length(&BigUint::zero(), &mut m), BigUint::zero());
    }

    #[test]
    fn carries_stay_below_length() {
        let (u, v) = (b("11111111"), b("1111111"));
        assert!(mult_carries(&u, &v).iter().all(|&c| c <= bit_len(&u)));
    }
}
