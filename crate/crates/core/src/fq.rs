//! Finite fields F_q with q = p^k, exact arithmetic on machine words.
//!
//! Elements are packed into a single `u64`: coefficient i of the polynomial
//! representative lives in bits [16*i, 16*i+16). This supports p < 2^15 and
//! extension degree k <= 4, which covers every field this crate samples or
//! sweeps over (probing escalates at most to degree 3; characteristic-zero
//! surrogate primes stay well below 2^15).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_DEG: usize = 4;
pub const MAX_PRIME: u64 = 1 << 15;

const LIMB: u64 = 0xffff;

/// A finite field F_{p^deg}, with a fixed irreducible modulus for deg > 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fq {
    p: u64,
    deg: usize,
    /// Packed monic modulus of degree `deg`, used only when deg > 1.
    /// Stored without the leading coefficient: modulus = x^deg + lower.
    modulus: u64,
}

pub type Elt = u64;

#[inline]
fn limb(x: Elt, i: usize) -> u64 {
    (x >> (16 * i)) & LIMB
}

#[inline]
fn set_limb(x: &mut Elt, i: usize, v: u64) {
    *x &= !(LIMB << (16 * i));
    *x |= (v & LIMB) << (16 * i);
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Fq {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::BadField(format!("{p} is not prime")));
        }
        if p >= MAX_PRIME {
            return Err(Error::BadField(format!("prime {p} exceeds cap {MAX_PRIME}")));
        }
        Ok(Fq { p, deg: 1, modulus: 0 })
    }

    /// The extension F_{p^deg}; the modulus is the lexicographically
    /// smallest monic irreducible of the requested degree, so equal inputs
    /// always yield the same field.
    pub fn extension(p: u64, deg: usize) -> Result<Self> {
        let base = Fq::prime(p)?;
        if deg == 0 || deg > MAX_DEG {
            return Err(Error::BadField(format!("extension degree {deg} not in 1..={MAX_DEG}")));
        }
        if deg == 1 {
            return Ok(base);
        }
        for packed in 0..p.pow(deg as u32) {
            let mut m: u64 = 0;
            let mut v = packed;
            for i in 0..deg {
                set_limb(&mut m, i, v % p);
                v /= p;
            }
            if base.poly_irreducible(m, deg) {
                return Ok(Fq { p, deg, modulus: m });
            }
        }
        unreachable!("irreducible polynomials of every degree exist over F_p")
    }

    /// Decides irreducibility of x^deg + (packed lower part) over F_p by
    /// checking for roots (deg <= 3) and quadratic factors (deg == 4).
    fn poly_irreducible(&self, lower: u64, deg: usize) -> bool {
        let eval = |t: u64| -> u64 {
            let mut acc = 1u64; // leading monic term, Horner from the top
            for i in (0..deg).rev() {
                acc = (acc * t + limb(lower, i)) % self.p;
            }
            acc
        };
        if (0..self.p).any(|t| eval(t) == 0) {
            return false;
        }
        if deg < 4 {
            return true;
        }
        // No linear factors; rule out products of two irreducible quadratics.
        let p = self.p;
        let l3 = limb(lower, 3);
        let l2 = limb(lower, 2);
        let l1 = limb(lower, 1);
        let l0 = limb(lower, 0);
        for b in 0..p {
            for c in 0..p {
                // divide x^4 + l3 x^3 + l2 x^2 + l1 x + l0 by x^2 + b x + c
                let q1 = (l3 + p - b) % p;
                let q0 = (l2 + 2 * p * p - c - b * q1) % p;
                let r1 = (l1 + 2 * p * p - b * q0 - c * q1) % p;
                let r0 = (l0 + p * p - c * q0) % p;
                if r1 == 0 && r0 == 0 {
                    return false;
                }
            }
        }
        true
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.deg as u32)
    }

    pub fn zero(&self) -> Elt {
        0
    }

    pub fn one(&self) -> Elt {
        1
    }

    /// Embeds an integer (mod p) into the field.
    pub fn from_i64(&self, v: i64) -> Elt {
        let p = self.p as i64;
        (((v % p) + p) % p) as u64
    }

    /// Element with index `n` in the base-p enumeration; bijective on 0..order.
    pub fn from_index(&self, n: u64) -> Elt {
        let mut x = 0u64;
        let mut v = n % self.order();
        for i in 0..self.deg {
            set_limb(&mut x, i, v % self.p);
            v /= self.p;
        }
        x
    }

    pub fn to_index(&self, x: Elt) -> u64 {
        let mut v = 0u64;
        for i in (0..self.deg).rev() {
            v = v * self.p + limb(x, i);
        }
        v
    }

    /// For prime-field elements, the canonical representative in 0..p.
    pub fn to_u64(&self, x: Elt) -> u64 {
        debug_assert_eq!(self.deg, 1);
        x
    }

    #[inline]
    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        if self.deg == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let mut out = 0u64;
        for i in 0..self.deg {
            let s = limb(a, i) + limb(b, i);
            set_limb(&mut out, i, if s >= self.p { s - self.p } else { s });
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: Elt) -> Elt {
        if self.deg == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        let mut out = 0u64;
        for i in 0..self.deg {
            let v = limb(a, i);
            set_limb(&mut out, i, if v == 0 { 0 } else { self.p - v });
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        if self.deg == 1 {
            return a * b % self.p;
        }
        // schoolbook product, then reduce by the monic modulus
        let mut prod = [0u64; 2 * MAX_DEG - 1];
        for i in 0..self.deg {
            let ai = limb(a, i);
            if ai == 0 {
                continue;
            }
            for j in 0..self.deg {
                prod[i + j] += ai * limb(b, j);
            }
        }
        for v in prod.iter_mut() {
            *v %= self.p;
        }
        for i in (self.deg..2 * self.deg - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..self.deg {
                let m = limb(self.modulus, j);
                if m != 0 {
                    let idx = i - self.deg + j;
                    prod[idx] = (prod[idx] + (self.p - m) * c) % self.p;
                }
            }
        }
        let mut out = 0u64;
        for i in 0..self.deg {
            set_limb(&mut out, i, prod[i]);
        }
        out
    }

    pub fn inv(&self, a: Elt) -> Elt {
        assert!(a != 0, "inverse of zero");
        // q is tiny here; a^(q-2) by square and multiply is plenty
        self.pow(a, self.order() - 2)
    }

    pub fn pow(&self, a: Elt, mut e: u64) -> Elt {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_ops() {
        let f = Fq::prime(7).unwrap();
        assert_eq!(f.add(5, 4), 2);
        assert_eq!(f.mul(5, 4), 6);
        assert_eq!(f.mul(f.inv(3), 3), 1);
        assert_eq!(f.from_i64(-1), 6);
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(Fq::prime(6).is_err());
        assert!(Fq::prime(1).is_err());
        assert!(Fq::extension(5, 9).is_err());
    }

    #[test]
    fn extension_fields_are_fields() {
        for (p, k) in [(2u64, 2usize), (2, 3), (3, 2), (3, 3), (5, 2), (7, 3), (5, 4)] {
            let f = Fq::extension(p, k).unwrap();
            let q = f.order();
            // every nonzero element is invertible and x^(q-1) = 1
            for n in 1..q.min(200) {
                let x = f.from_index(n);
                assert_eq!(f.mul(x, f.inv(x)), f.one());
                assert_eq!(f.pow(x, q - 1), f.one());
            }
            // associativity + distributivity spot checks
            for n in 0..q.min(30) {
                for m in 0..q.min(30) {
                    let (x, y) = (f.from_index(n), f.from_index(m));
                    let z = f.from_index((n * 7 + m + 3) % q);
                    assert_eq!(f.mul(x, f.mul(y, z)), f.mul(f.mul(x, y), z));
                    assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                }
            }
        }
    }

    #[test]
    fn frobenius_fixes_prime_subfield() {
        let f = Fq::extension(3, 3).unwrap();
        for v in 0..3 {
            let x = f.from_i64(v);
            assert_eq!(f.pow(x, 3), x);
        }
    }

    #[test]
    fn index_roundtrip() {
        let f = Fq::extension(5, 2).unwrap();
        for n in 0..f.order() {
            assert_eq!(f.to_index(f.from_index(n)), n);
        }
    }
}
