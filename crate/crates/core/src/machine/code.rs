//! Gödel numbering of closed terms.
//!
//! A term serialises to a prefix byte stream (tag byte, then children;
//! naturals in LEB128). The stream, read as a little-endian number with a
//! sentinel high byte, is the code. The scheme is linear in term size, so
//! embedding one code inside another as a literal costs its own length and
//! nothing more. Decoding is total: numbers that do not parse back to a
//! closed term are reported as malformed rather than crashing.

use std::sync::Arc;

use super::num::Nat;
use super::term::Term;
use crate::error::{Error, Result};

const TAG_NAT: u8 = 0;
const TAG_VAR: u8 = 1;
const TAG_LAM: u8 = 2;
const TAG_APP: u8 = 3;
const TAG_PAIR: u8 = 4;
const TAG_LEFT: u8 = 5;
const TAG_RIGHT: u8 = 6;
const TAG_SUCC: u8 = 7;
const TAG_PRED: u8 = 8;
const TAG_DBL: u8 = 9;
const TAG_IFZERO: u8 = 10;
const TAG_NATEQ: u8 = 11;
const TAG_FIX: u8 = 12;
const TAG_ORACLEQ: u8 = 13;
const TAG_RUNB: u8 = 14;

/// Sentinel appended as the most-significant byte so that leading stream
/// zeros survive the number round-trip.
const SENTINEL: u8 = 1;

/// Maximum decoder recursion depth; deeper streams are reported malformed.
const MAX_DEPTH: u32 = 4096;

fn push_nat(out: &mut Vec<u8>, n: &Nat) {
    // Unsigned LEB128 over the base-128 digits.
    let mut digits = n.to_radix_le(128);
    if digits.is_empty() {
        digits.push(0);
    }
    let last = digits.len() - 1;
    for (i, d) in digits.iter().enumerate() {
        out.push(if i < last { d | 0x80 } else { *d });
    }
}

fn serialize(t: &Term, out: &mut Vec<u8>) {
    match t {
        Term::Nat(n) => {
            out.push(TAG_NAT);
            push_nat(out, n);
        }
        Term::Var(i) => {
            out.push(TAG_VAR);
            push_nat(out, &Nat::from(*i));
        }
        Term::Lam(b) => {
            out.push(TAG_LAM);
            serialize(b, out);
        }
        Term::App(a, b) => {
            out.push(TAG_APP);
            serialize(a, out);
            serialize(b, out);
        }
        Term::Pair(a, b) => {
            out.push(TAG_PAIR);
            serialize(a, out);
            serialize(b, out);
        }
        Term::Left(a) => {
            out.push(TAG_LEFT);
            serialize(a, out);
        }
        Term::Right(a) => {
            out.push(TAG_RIGHT);
            serialize(a, out);
        }
        Term::Succ(a) => {
            out.push(TAG_SUCC);
            serialize(a, out);
        }
        Term::Pred(a) => {
            out.push(TAG_PRED);
            serialize(a, out);
        }
        Term::Dbl(a) => {
            out.push(TAG_DBL);
            serialize(a, out);
        }
        Term::IfZero(a, b, c) => {
            out.push(TAG_IFZERO);
            serialize(a, out);
            serialize(b, out);
            serialize(c, out);
        }
        Term::NatEq(a, b) => {
            out.push(TAG_NATEQ);
            serialize(a, out);
            serialize(b, out);
        }
        Term::Fix(a) => {
            out.push(TAG_FIX);
            serialize(a, out);
        }
        Term::OracleQ(a) => {
            out.push(TAG_ORACLEQ);
            serialize(a, out);
        }
        Term::RunBounded(a, b, c) => {
            out.push(TAG_RUNB);
            serialize(a, out);
            serialize(b, out);
            serialize(c, out);
        }
    }
}

/// Gödel number of a closed term.
pub fn encode(t: &Term) -> Result<Nat> {
    let above = t.free_above();
    if above > 0 {
        return Err(Error::OpenTerm(above - 1));
    }
    Ok(encode_unchecked(t))
}

/// Encoding without the closedness check; used on terms produced by the
/// evaluator's readback, which are closed by construction.
pub fn encode_unchecked(t: &Term) -> Nat {
    let mut bytes = Vec::new();
    serialize(t, &mut bytes);
    bytes.push(SENTINEL);
    Nat::from_bytes_le(&bytes)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn next(&mut self) -> Result<u8> {
        let b = *self.bytes.get(self.pos).ok_or(Error::MalformedCode)?;
        self.pos += 1;
        Ok(b)
    }

    fn read_nat(&mut self) -> Result<Nat> {
        let mut digits = Vec::new();
        loop {
            let b = self.next()?;
            digits.push(b & 0x7f);
            if b & 0x80 == 0 {
                break;
            }
            if digits.len() > self.bytes.len() {
                return Err(Error::MalformedCode);
            }
        }
        Ok(Nat::from_radix_le(&digits, 128).unwrap_or_default())
    }

    fn read_var(&mut self) -> Result<u32> {
        let n = self.read_nat()?;
        let digits = n.to_u32_digits();
        match digits.len() {
            0 => Ok(0),
            1 => Ok(digits[0]),
            _ => Err(Error::MalformedCode),
        }
    }

    fn term(&mut self, depth: u32) -> Result<Term> {
        if depth > MAX_DEPTH {
            return Err(Error::MalformedCode);
        }
        let tag = self.next()?;
        let t = match tag {
            TAG_NAT => Term::Nat(self.read_nat()?),
            TAG_VAR => Term::Var(self.read_var()?),
            TAG_LAM => Term::Lam(Arc::new(self.term(depth + 1)?)),
            TAG_APP => Term::App(
                Arc::new(self.term(depth + 1)?),
                Arc::new(self.term(depth + 1)?),
            ),
            TAG_PAIR => Term::Pair(
                Arc::new(self.term(depth + 1)?),
                Arc::new(self.term(depth + 1)?),
            ),
            TAG_LEFT => Term::Left(Arc::new(self.term(depth + 1)?)),
            TAG_RIGHT => Term::Right(Arc::new(self.term(depth + 1)?)),
            TAG_SUCC => Term::Succ(Arc::new(self.term(depth + 1)?)),
            TAG_PRED => Term::Pred(Arc::new(self.term(depth + 1)?)),
            TAG_DBL => Term::Dbl(Arc::new(self.term(depth + 1)?)),
            TAG_IFZERO => Term::IfZero(
                Arc::new(self.term(depth + 1)?),
                Arc::new(self.term(depth + 1)?),
                Arc::new(self.term(depth + 1)?),
            ),
            TAG_NATEQ => Term::NatEq(
                Arc::new(self.term(depth + 1)?),
                Arc::new(self.term(depth + 1)?),
            ),
            TAG_FIX => Term::Fix(Arc::new(self.term(depth + 1)?)),
            TAG_ORACLEQ => Term::OracleQ(Arc::new(self.term(depth + 1)?)),
            TAG_RUNB => Term::RunBounded(
                Arc::new(self.term(depth + 1)?),
                Arc::new(self.term(depth + 1)?),
                Arc::new(self.term(depth + 1)?),
            ),
            _ => return Err(Error::MalformedCode),
        };
        Ok(t)
    }
}

/// Total decoding: the inverse of [`encode`] on well-formed codes, an error on
/// everything else. Open terms count as malformed since only closed terms are
/// executable.
pub fn decode(code: &Nat) -> Result<Term> {
    let bytes = code.to_bytes_le();
    if bytes.len() < 2 || *bytes.last().unwrap() != SENTINEL {
        return Err(Error::MalformedCode);
    }
    let body = &bytes[..bytes.len() - 1];
    let mut p = Parser {
        bytes: body,
        pos: 0,
    };
    let t = p.term(0)?;
    if p.pos != body.len() {
        return Err(Error::MalformedCode);
    }
    if !t.is_closed() {
        return Err(Error::MalformedCode);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::term::*;

    #[test]
    fn roundtrip_identity() {
        let t = lam(var(0));
        let c = encode(&t).unwrap();
        assert_eq!(decode(&c).unwrap(), t);
    }

    #[test]
    fn rejects_open_terms() {
        assert_eq!(encode(&var(0)), Err(Error::OpenTerm(0)));
        assert_eq!(encode(&lam(var(3))), Err(Error::OpenTerm(2)));
    }

    #[test]
    fn small_numbers_are_malformed() {
        // No valid stream is shorter than two bytes.
        for n in 0..=1u64 {
            assert_eq!(decode(&Nat::from(n)), Err(Error::MalformedCode));
        }
        // 255 has a last byte that is not the sentinel.
        assert_eq!(decode(&Nat::from(0xff00u64)), Err(Error::MalformedCode));
    }

    #[test]
    fn embedded_literals_cost_their_own_length() {
        let small = encode(&lam(var(0))).unwrap();
        let big = encode(&lam(tpair(t_natn(small.clone()), t_natn(small.clone())))).unwrap();
        assert!(big.bits() < 4 * small.bits() + 64);
    }
}
