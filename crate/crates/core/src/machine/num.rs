//! Cantor pairing over arbitrary-precision naturals.
//!
//! The pairing `⟨a,b⟩ = (a+b)(a+b+1)/2 + b` is the number-theoretic ordered
//! pair used everywhere in the engine: machine outputs, set entries, witness
//! components and condition codes all decompose through it.

use num_bigint::BigUint;

use num_traits::{One, Zero};

/// Arbitrary-precision natural number. Codes get big; never wrap around.
pub type Nat = BigUint;

pub fn nat(n: u64) -> Nat {
    Nat::from(n)
}

/// Cantor pairing `(a+b)(a+b+1)/2 + b`.
pub fn pair(a: &Nat, b: &Nat) -> Nat {
    let s = a + b;
    (&s * (&s + 1u32)) / 2u32 + b
}

pub fn pair64(a: u64, b: u64) -> Nat {
    pair(&nat(a), &nat(b))
}

/// Inverse of [`pair`]: the unique `(a, b)` with `pair(a, b) = n`.
pub fn unpair(n: &Nat) -> (Nat, Nat) {
    // w = floor((sqrt(8n+1) - 1) / 2) is the diagonal index.
    let w = ((n * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let b = n - t;
    let a = &w - &b;
    (a, b)
}

pub fn left(n: &Nat) -> Nat {
    unpair(n).0
}

pub fn right(n: &Nat) -> Nat {
    unpair(n).1
}

/// Projection of a `Nat` to `u64` when it fits; `None` otherwise.
pub fn to_u64(n: &Nat) -> Option<u64> {
    let digits = n.to_u64_digits();
    match digits.len() {
        0 => Some(0),
        1 => Some(digits[0]),
        _ => None,
    }
}

pub fn is_zero(n: &Nat) -> bool {
    n.is_zero()
}

pub fn one() -> Nat {
    Nat::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_base_case() {
        assert_eq!(pair64(0, 0), nat(0));
    }

    #[test]
    fn pairing_closed_form_example() {
        // (1+2)(1+2+1)/2 + 2 = 8
        assert_eq!(pair64(1, 2), nat(8));
        assert_eq!(unpair(&nat(8)), (nat(1), nat(2)));
    }

    #[test]
    fn unpair_base_case() {
        assert_eq!(unpair(&nat(0)), (nat(0), nat(0)));
    }

    #[test]
    fn pairing_bijection_small_grid() {
        for a in 0..64u64 {
            for b in 0..64u64 {
                let n = pair64(a, b);
                assert_eq!(unpair(&n), (nat(a), nat(b)), "roundtrip at ({a},{b})");
            }
        }
        for n in 0..4096u64 {
            let (a, b) = unpair(&nat(n));
            assert_eq!(pair(&a, &b), nat(n), "surjectivity at {n}");
        }
    }

    #[test]
    fn pairing_huge_values() {
        let a = Nat::from(u64::MAX) * Nat::from(u64::MAX);
        let b = Nat::from(3u32);
        let n = pair(&a, &b);
        assert_eq!(unpair(&n), (a, b));
    }
}
