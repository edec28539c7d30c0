use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Univariate polynomial in `L` (lambda) with arbitrary-precision integer
/// coefficients. `coeffs[d]` is the coefficient of `L^d`; trailing zeros are
/// never stored, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

/// Outcome of [`UniPoly::exact_divide`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Division {
    pub quotient: UniPoly,
    pub remainder: UniPoly,
}

impl Division {
    pub fn is_exact(&self) -> bool {
        self.remainder.is_zero()
    }
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * L^d`.
    pub fn monomial(c: BigInt, d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = c;
        Self::new(coeffs)
    }

    /// `L`.
    pub fn lambda() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    /// `L^d - c`, a frequent factor of hypergraph characteristic polynomials.
    pub fn lambda_pow_minus(d: usize, c: i64) -> Self {
        let mut p = Self::monomial(BigInt::one(), d);
        if d == 0 {
            return Self::constant(BigInt::one() - c);
        }
        p.coeffs[0] -= c;
        Self::new(p.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    /// Coefficient of `L^(deg - d)`.
    pub fn codegree_coeff(&self, d: usize) -> BigInt {
        match self.degree() {
            Some(deg) if d <= deg => self.coeffs[deg - d].clone(),
            _ => BigInt::zero(),
        }
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Nonzero terms as `(degree, coefficient)`, highest degree first.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
    }

    /// Largest `r` with `L^r` dividing `self`.
    pub fn lambda_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn shift_down(&self, r: usize) -> Self {
        Self::new(self.coeffs.iter().skip(r).cloned().collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = UniPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(d, c)| c * BigInt::from(d))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let coeffs = self.to_f64_coeffs();
        coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `|p(z)| / sum |c_i| |z|^i`, a scale-free residual.
    pub fn relative_residual(&self, z: Complex64) -> f64 {
        let coeffs = self.to_f64_coeffs();
        let value = coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
        let r = z.norm();
        let scale = coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.abs());
        if scale == 0.0 {
            0.0
        } else {
            value.norm() / scale
        }
    }

    /// Coefficients as `f64`, scaled down by a common power of two when they
    /// would overflow.
    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        let max_bits = self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0);
        let shift = max_bits.saturating_sub(1000);
        self.coeffs
            .iter()
            .map(|c| {
                let c = if shift > 0 { c >> shift } else { c.clone() };
                c.to_f64().unwrap_or(0.0)
            })
            .collect()
    }

    /// Division with remainder over the integers. Fails with
    /// [`Error::DivisionByZero`] for a zero divisor and with
    /// [`Error::NonIntegral`] when a quotient coefficient is not an integer.
    pub fn exact_divide(&self, divisor: &UniPoly) -> Result<Division> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead = divisor.leading().expect("nonzero");
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok(Division {
                quotient: UniPoly::zero(),
                remainder: UniPoly::zero(),
            });
        };
        if nd < dd {
            return Ok(Division {
                quotient: UniPoly::zero(),
                remainder: self.clone(),
            });
        }
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::NonIntegral {
                    degree: i,
                    value: format!("{top}/{lead}"),
                });
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * dc;
            }
            quot[i] = q;
        }
        Ok(Division {
            quotient: UniPoly::new(quot),
            remainder: UniPoly::new(rem),
        })
    }

    /// Quotient of an exact division; a nonzero remainder is an error.
    pub fn exact_quotient(&self, divisor: &UniPoly) -> Result<UniPoly> {
        let d = self.exact_divide(divisor)?;
        if d.is_exact() {
            Ok(d.quotient)
        } else {
            Err(Error::NonzeroRemainder(d.remainder.to_string()))
        }
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Primitive part with a positive leading coefficient.
    pub fn primitive_part(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().expect("nonzero").is_negative() {
            g = -g;
        }
        UniPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    fn pseudo_remainder(&self, b: &UniPoly) -> UniPoly {
        let db = b.degree().expect("nonzero divisor");
        let lb = b.leading().expect("nonzero").clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading().expect("nonzero").clone();
            let shifted = UniPoly::monomial(lr, dr - db);
            r = &r.scale(&lb) - &(&shifted * b);
            r = r.primitive_part();
        }
        r
    }

    /// Greatest common divisor in `Z[L]`, primitive with positive leading
    /// coefficient.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_remainder(&b);
            a = b;
            b = r;
        }
        a.primitive_part()
    }

    /// Yun square-free decomposition: returns `(a_i, i)` with
    /// `self = c * prod a_i^i`, each `a_i` primitive, square-free and of
    /// positive degree.
    pub fn square_free_decomposition(&self) -> Vec<(UniPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let a = self.primitive_part();
        let da = a.derivative();
        let c = a.gcd(&da);
        let mut w = a.exact_quotient(&c).expect("gcd divides").primitive_part();
        // c is primitive, so it divides in Z[L] whenever it divides in Q[L]
        let mut y = da.exact_quotient(&c).expect("gcd divides the derivative");
        let mut i = 1;
        while w.degree().unwrap_or(0) > 0 {
            let z = &y - &w.derivative();
            let g = w.gcd(&z);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), i));
            }
            let next_w = w.exact_quotient(&g).expect("gcd divides");
            y = z.exact_quotient(&g).expect("gcd divides");
            w = next_w;
            i += 1;
        }
        out
    }

    pub fn to_json_pairs(&self) -> Vec<(usize, String)> {
        self.terms().map(|(d, c)| (d, c.to_string())).collect()
    }

    pub fn from_json_pairs(pairs: &[(usize, String)]) -> Result<Self> {
        let max = pairs.iter().map(|(d, _)| *d).max().unwrap_or(0);
        let mut coeffs = vec![BigInt::zero(); max + 1];
        for (d, c) in pairs {
            let value: BigInt = c.parse().map_err(|_| Error::Parse {
                line: 1,
                column: 1,
                message: format!("bad coefficient `{c}`"),
            })?;
            coeffs[*d] += value;
        }
        Ok(Self::new(coeffs))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        UniPoly::new(out)
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        &self + &rhs
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        &self - &rhs
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        &self * &rhs
    }
}

impl fmt::Display for UniPoly {
    /// `L^12 - 3*L^9 + 3*L^6 - L^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match d {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if d == 1 {
                        write!(f, "L")?;
                    } else {
                        write!(f, "L^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for UniPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |column: usize, message: String| Error::Parse {
            line: 1,
            column,
            message,
        };
        let chars: Vec<(usize, char)> = s
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        if chars.is_empty() {
            return Err(err(1, "empty polynomial".into()));
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut pos = 0;
        while pos < chars.len() {
            let column = chars[pos].0 + 1;
            let mut sign = BigInt::one();
            if chars[pos].1 == '+' || chars[pos].1 == '-' {
                if chars[pos].1 == '-' {
                    sign = -sign;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(err(column, "expected `+` or `-`".into()));
            }
            let start = pos;
            while pos < chars.len() && chars[pos].1 != '+' && chars[pos].1 != '-' {
                pos += 1;
            }
            let term: String = chars[start..pos].iter().map(|(_, c)| c).collect();
            if term.is_empty() {
                return Err(err(column, "empty term".into()));
            }
            let (coef, degree) = match term.find('L') {
                None => (term.as_str(), 0usize),
                Some(idx) => {
                    let coef = term[..idx].trim_end_matches('*');
                    let rest = &term[idx + 1..];
                    let degree = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .and_then(|e| e.parse().ok())
                            .ok_or_else(|| err(column, format!("bad exponent in `{term}`")))?
                    };
                    (if coef.is_empty() { "1" } else { coef }, degree)
                }
            };
            let c: BigInt = coef
                .parse()
                .map_err(|_| err(column, format!("bad coefficient in `{term}`")))?;
            if coeffs.len() <= degree {
                coeffs.resize(degree + 1, BigInt::zero());
            }
            coeffs[degree] += sign * c;
        }
        Ok(UniPoly::new(coeffs))
    }
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_pairs().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<(usize, String)>::deserialize(deserializer)?;
        UniPoly::from_json_pairs(&pairs).map_err(serde::de::Error::custom)
    }
}

/// Unique polynomial of degree `< points.len()` through `points`, over the
/// rationals (Newton divided differences).
pub fn interpolate_rational(points: &[(i64, BigRational)]) -> Result<Vec<BigRational>> {
    for (i, (x, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(y, _)| y == x) {
            return Err(Error::DuplicateAbscissa(*x));
        }
    }
    let m = points.len();
    let xs: Vec<BigRational> = points
        .iter()
        .map(|(x, _)| BigRational::from_integer(BigInt::from(*x)))
        .collect();
    let mut table: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..m {
        for i in (level..m).rev() {
            let num = &table[i] - &table[i - 1];
            let den = &xs[i] - &xs[i - level];
            table[i] = num / den;
        }
    }
    // expand the Newton form from the innermost coefficient outwards
    let mut coeffs: Vec<BigRational> = Vec::with_capacity(m);
    for i in (0..m).rev() {
        // coeffs <- coeffs * (x - xs[i]) + table[i]
        let mut next = vec![BigRational::zero(); coeffs.len() + 1];
        for (d, c) in coeffs.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= c * &xs[i];
        }
        next[0] += &table[i];
        coeffs = next;
    }
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// Interpolation asserting integral coefficients.
pub fn interpolate(points: &[(i64, BigRational)]) -> Result<UniPoly> {
    let coeffs = interpolate_rational(points)?;
    let mut out = Vec::with_capacity(coeffs.len());
    for (degree, c) in coeffs.into_iter().enumerate() {
        if !c.is_integer() {
            return Err(Error::NonIntegral {
                degree,
                value: c.to_string(),
            });
        }
        out.push(c.to_integer());
    }
    Ok(UniPoly::new(out))
}

/// Integer-valued interpolation, the form the determinant engine produces.
pub fn interpolate_integers(points: &[(i64, BigInt)]) -> Result<UniPoly> {
    let pts: Vec<(i64, BigRational)> = points
        .iter()
        .map(|(x, y)| (*x, BigRational::from_integer(y.clone())))
        .collect();
    interpolate(&pts)
}
