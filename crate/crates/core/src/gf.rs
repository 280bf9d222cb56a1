//! Exact arithmetic in GF(q) for prime powers q <= 2^16.
//!
//! Elements are encoded as integers in `[0, q)`: the element with polynomial
//! representative `c_0 + c_1 x + ... + c_{e-1} x^{e-1}` is stored as
//! `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`. For `e = 1` this is the usual residue.
//!
//! Extension fields carry discrete log / antilog tables so multiplication and
//! division are two lookups; binary fields add with XOR.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime power in [2, 65536]")]
    NotAPrimePower(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{value} is not an element of GF({q})")]
    InvalidElement { value: u64, q: u32 },
    #[error("modulus {modulus:?} does not match the canonical modulus {expected:?} of GF({q})")]
    ModulusMismatch { q: u32, modulus: Vec<u32>, expected: Vec<u32> },
}

/// An element of GF(q) in its integer encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(pub(crate) u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn repr(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug)]
enum Arith {
    /// q = 2: bits, add is xor, mul is and.
    Binary,
    /// q = p prime.
    Prime,
    /// q = p^e with e > 1.
    Extension {
        /// exp[i] = g^i for i in [0, 2(q-1)); doubled so log sums need no reduction.
        exp: Vec<u32>,
        /// log[a] for a != 0; log[0] is unused.
        log: Vec<u32>,
    },
}

#[derive(Debug)]
struct FieldInner {
    q: u32,
    p: u32,
    e: u32,
    modulus: Vec<u32>,
    arith: Arith,
}

/// The finite field GF(q). Cheap to clone; tables are shared.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("q", &self.0.q)
            .field("p", &self.0.p)
            .field("e", &self.0.e)
            .field("modulus", &self.0.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.q == other.0.q && self.0.modulus == other.0.modulus
    }
}

impl Eq for Field {}

/// Serializable description of a field: `{q, p, e, modulus}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub q: u32,
    pub p: u32,
    pub e: u32,
    /// Monic modulus coefficients, low to high. `[0, 1]` (the polynomial x) for prime fields.
    pub modulus: Vec<u32>,
}

/// Returns `(p, e)` with `q = p^e`, or `None` if q is not a prime power >= 2.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        // q itself is prime
        p = q;
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u32, e))
}

fn digits(mut value: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(value % p);
        value /= p;
    }
    out
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `num` modulo the monic polynomial `den` over GF(p). Both low-to-high.
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (i, &c) in den.iter().enumerate() {
                let sub = (lead as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let e = modulus.len() - 1;
    for deg in 1..=e / 2 {
        let count = (p as u64).pow(deg as u32) as u32;
        for low in 0..count {
            let mut divisor = digits(low, p, deg);
            divisor.push(1);
            if poly_rem(modulus, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible polynomial of degree e over GF(p), ordering
/// candidates by the base-p integer formed from their lower coefficients.
fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    let count = p.pow(e);
    (0..count)
        .map(|low| {
            let mut m = digits(low, p, e as usize);
            m.push(1);
            m
        })
        .find(|m| m[0] != 0 && is_irreducible(m, p))
        .expect("irreducible polynomials exist in every degree")
}

fn poly_mulmod(a: u32, b: u32, modulus: &[u32], p: u32) -> u32 {
    let e = modulus.len() - 1;
    let da = digits(a, p, e);
    let db = digits(b, p, e);
    let mut prod = vec![0u32; 2 * e - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    encode(&poly_rem(&prod, modulus, p), p)
}

fn log_tables(q: u32, p: u32, modulus: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let order = (q - 1) as usize;
    for g in 2..q {
        let mut exp = Vec::with_capacity(2 * order);
        let mut log = vec![u32::MAX; q as usize];
        let mut x = 1u32;
        let mut ok = true;
        for i in 0..order {
            if log[x as usize] != u32::MAX {
                ok = false;
                break;
            }
            log[x as usize] = i as u32;
            exp.push(x);
            x = poly_mulmod(x, g, modulus, p);
        }
        if ok && x == 1 {
            exp.extend_from_within(..);
            log[0] = 0;
            return (exp, log);
        }
    }
    unreachable!("multiplicative group of a finite field is cyclic")
}

impl Field {
    /// Builds GF(q). For `q = p^e` with `e > 1` the modulus is the smallest
    /// monic irreducible of degree e (deterministic).
    pub fn new(q: u32) -> Result<Field, FieldError> {
        if q > MAX_ORDER {
            return Err(FieldError::NotAPrimePower(q as u64));
        }
        let (p, e) = prime_power(q as u64).ok_or(FieldError::NotAPrimePower(q as u64))?;
        let (modulus, arith) = if e == 1 {
            (vec![0, 1], if p == 2 { Arith::Binary } else { Arith::Prime })
        } else {
            let modulus = smallest_irreducible(p, e);
            let (exp, log) = log_tables(q, p, &modulus);
            (modulus, Arith::Extension { exp, log })
        };
        Ok(Field(Arc::new(FieldInner { q, p, e, modulus, arith })))
    }

    /// Rebuilds a field from its serialized description, checking the modulus.
    pub fn from_spec(spec: &FieldSpec) -> Result<Field, FieldError> {
        let field = Field::new(spec.q)?;
        if field.0.modulus != spec.modulus {
            return Err(FieldError::ModulusMismatch {
                q: spec.q,
                modulus: spec.modulus.clone(),
                expected: field.0.modulus.clone(),
            });
        }
        Ok(field)
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            q: self.0.q,
            p: self.0.p,
            e: self.0.e,
            modulus: self.0.modulus.clone(),
        }
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.0.q
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.e
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn is_binary(&self) -> bool {
        matches!(self.0.arith, Arith::Binary)
    }

    pub fn element(&self, value: u64) -> Result<FieldElement, FieldError> {
        if value < self.0.q as u64 {
            Ok(FieldElement(value as u32))
        } else {
            Err(FieldError::InvalidElement { value, q: self.0.q })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.0.q).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.0.q).map(FieldElement)
    }

    /// Uniform draw from F_q \ {0}.
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.random_range(1..self.0.q))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.random_range(0..self.0.q))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let inner = &*self.0;
        match inner.arith {
            Arith::Binary => FieldElement(a.0 ^ b.0),
            Arith::Prime => {
                let s = a.0 + b.0;
                FieldElement(if s >= inner.q { s - inner.q } else { s })
            }
            Arith::Extension { .. } if inner.p == 2 => FieldElement(a.0 ^ b.0),
            Arith::Extension { .. } => FieldElement(self.digitwise(a.0, b.0, false)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let inner = &*self.0;
        match inner.arith {
            Arith::Binary => a,
            Arith::Prime => FieldElement(if a.0 == 0 { 0 } else { inner.q - a.0 }),
            Arith::Extension { .. } if inner.p == 2 => a,
            Arith::Extension { .. } => FieldElement(self.digitwise(0, a.0, true)),
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let inner = &*self.0;
        match inner.arith {
            Arith::Binary => FieldElement(a.0 ^ b.0),
            Arith::Prime => FieldElement(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + inner.q - b.0 }),
            Arith::Extension { .. } if inner.p == 2 => FieldElement(a.0 ^ b.0),
            Arith::Extension { .. } => FieldElement(self.digitwise(a.0, b.0, true)),
        }
    }

    fn digitwise(&self, mut a: u32, mut b: u32, subtract: bool) -> u32 {
        let p = self.0.p;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.0.e {
            let (x, y) = (a % p, b % p);
            let digit = if subtract { (x + p - y) % p } else { (x + y) % p };
            out += digit * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let inner = &*self.0;
        match &inner.arith {
            Arith::Binary => FieldElement(a.0 & b.0),
            Arith::Prime => FieldElement((a.0 as u64 * b.0 as u64 % inner.q as u64) as u32),
            Arith::Extension { exp, log } => {
                if a.0 == 0 || b.0 == 0 {
                    FieldElement(0)
                } else {
                    FieldElement(exp[(log[a.0 as usize] + log[b.0 as usize]) as usize])
                }
            }
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let inner = &*self.0;
        Ok(match &inner.arith {
            Arith::Binary => a,
            Arith::Prime => {
                // extended Euclid on (a, p)
                let (mut r0, mut r1) = (inner.q as i64, a.0 as i64);
                let (mut t0, mut t1) = (0i64, 1i64);
                while r1 != 0 {
                    let quot = r0 / r1;
                    (r0, r1) = (r1, r0 - quot * r1);
                    (t0, t1) = (t1, t0 - quot * t1);
                }
                FieldElement(t0.rem_euclid(inner.q as i64) as u32)
            }
            Arith::Extension { exp, log } => {
                let order = inner.q - 1;
                FieldElement(exp[((order - log[a.0 as usize]) % order) as usize])
            }
        })
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        if b.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let inner = &*self.0;
        Ok(match &inner.arith {
            Arith::Extension { exp, log } => {
                if a.0 == 0 {
                    FieldElement(0)
                } else {
                    let order = inner.q - 1;
                    FieldElement(exp[(log[a.0 as usize] + order - log[b.0 as usize]) as usize])
                }
            }
            _ => self.mul(a, self.inv(b)?),
        })
    }

    pub fn pow(&self, a: FieldElement, mut exp: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn op(&self, op: FieldOp, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        match op {
            FieldOp::Add => Ok(self.add(a, b)),
            FieldOp::Sub => Ok(self.sub(a, b)),
            FieldOp::Mul => Ok(self.mul(a, b)),
            FieldOp::Div => self.div(a, b),
        }
    }

    /// `dst[i] -= coef * src[i]` over the whole slice.
    #[inline]
    pub fn sub_scaled_assign(&self, dst: &mut [FieldElement], src: &[FieldElement], coef: FieldElement) {
        debug_assert_eq!(dst.len(), src.len());
        if coef.is_zero() {
            return;
        }
        for (d, &s) in dst.iter_mut().zip(src) {
            if !s.is_zero() {
                *d = self.sub(*d, self.mul(coef, s));
            }
        }
    }
}
