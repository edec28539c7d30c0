//! Word-size prime-field arithmetic and Chinese remaindering.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A prime below `2^31` with a Barrett constant, so products of two
/// residues fit in a `u64` and reduce without hardware division.
#[derive(Debug, Clone, Copy)]
pub struct Modulus {
    pub p: u64,
    mu: u128,
}

impl Modulus {
    pub fn new(p: u64) -> Self {
        debug_assert!(p > 2 && p < (1 << 31));
        Modulus {
            p,
            mu: (1u128 << 64) / p as u128,
        }
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        let q = ((x as u128 * self.mu) >> 64) as u64;
        let mut r = x - q * self.p;
        if r >= self.p {
            r -= self.p;
        }
        r
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        let r = v.rem_euclid(self.p as i64);
        r as u64
    }

    pub fn from_bigint(&self, v: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        v.mod_floor(&p).to_u64().expect("residue fits")
    }
}

/// Descending primes below `2^31`.
pub fn primes_below_2_31() -> impl Iterator<Item = u64> {
    let mut candidate: u64 = (1 << 31) - 1;
    std::iter::from_fn(move || {
        while candidate > 3 {
            let c = candidate;
            candidate -= 2;
            if is_prime(c) {
                return Some(c);
            }
        }
        None
    })
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Incremental Garner reconstruction of a vector of integers from residues.
#[derive(Debug, Clone)]
pub struct Crt {
    modulus: BigInt,
    values: Vec<BigInt>,
}

impl Crt {
    pub fn new(len: usize) -> Self {
        Crt {
            modulus: BigInt::one(),
            values: vec![BigInt::zero(); len],
        }
    }

    pub fn modulus_bits(&self) -> u64 {
        self.modulus.bits()
    }

    pub fn add_residues(&mut self, m: &Modulus, residues: &[u64]) {
        assert_eq!(residues.len(), self.values.len());
        let big_p = BigInt::from(m.p);
        let inv = m.inv(m.from_bigint(&self.modulus));
        for (value, &r) in self.values.iter_mut().zip(residues) {
            let current = m.from_bigint(value);
            let t = m.mul(m.sub(r, current), inv);
            *value += &self.modulus * BigInt::from(t);
        }
        self.modulus *= big_p;
    }

    /// Values in the symmetric range `(-M/2, M/2]`.
    pub fn symmetric(&self) -> Vec<BigInt> {
        let half = &self.modulus >> 1u32;
        self.values
            .iter()
            .map(|v| if v > &half { v - &self.modulus } else { v.clone() })
            .collect()
    }
}

/// Bits needed so that a modulus above `2 * bound` pins a value of absolute
/// value at most `2^bound_bits`.
pub fn required_bits(bound_bits: f64) -> u64 {
    bound_bits.max(0.0).ceil() as u64 + 2
}

pub fn abs_bits(v: &BigInt) -> u64 {
    v.abs().bits()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn barrett_matches_remainder() {
        let m = Modulus::new(2_147_483_647);
        for &(a, b) in &[(123456789u64, 987654321u64), (2_147_483_646, 2_147_483_646), (0, 5)] {
            assert_eq!(m.mul(a, b), (a * b) % m.p);
        }
        assert_eq!(m.mul(m.inv(12345), 12345), 1);
        assert_eq!(m.from_i64(-1), m.p - 1);
    }

    #[test]
    fn crt_reconstructs_signed_values() {
        let values: Vec<BigInt> = vec![
            BigInt::from(-5),
            BigInt::parse_bytes(b"123456789012345678901234567890", 10).unwrap(),
            -BigInt::parse_bytes(b"98765432109876543210", 10).unwrap(),
        ];
        let mut crt = Crt::new(values.len());
        for p in primes_below_2_31().take(4) {
            let m = Modulus::new(p);
            let res: Vec<u64> = values.iter().map(|v| m.from_bigint(v)).collect();
            crt.add_residues(&m, &res);
        }
        assert_eq!(crt.symmetric(), values);
    }

    #[test]
    fn primes_are_prime() {
        let first: Vec<u64> = primes_below_2_31().take(3).collect();
        assert_eq!(first[0], 2_147_483_647);
        assert!(first.iter().all(|&p| is_prime(p)));
        assert!(first.windows(2).all(|w| w[0] > w[1]));
    }
}
