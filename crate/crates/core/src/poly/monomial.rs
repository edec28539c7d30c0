use std::fmt;

/// A monomial `x_1^a_1 ... x_n^a_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exponents: Vec<u32>,
    total_degree: u32,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        let total_degree = exponents.iter().sum();
        Monomial {
            exponents,
            total_degree,
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn total_degree(&self) -> u32 {
        self.total_degree
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// All monomials of total degree `d` in `n` variables, in graded-lex order
/// (`x1^d` first, `xn^d` last).
pub fn enumerate_monomials(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut current = vec![0u32; n];
    fill(0, d, &mut current, &mut out);
    out
}

fn fill(pos: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(Monomial::new(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill(pos + 1, remaining - e, current, out);
    }
    current[pos] = 0;
}

/// `C(d + n - 1, n - 1)`, the number of degree-`d` monomials in `n` variables.
pub fn monomial_count(n: usize, d: u32) -> u128 {
    if n == 0 {
        return 0;
    }
    binomial_u128(d as u128 + n as u128 - 1, n as u128 - 1)
}

fn binomial_u128(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
