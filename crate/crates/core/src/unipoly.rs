//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Variable tag carried by a polynomial: `T` (the RUR variable), `x`
/// (cosine coordinates), or `m` (the modulation index).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    T,
    X,
    M,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::T => write!(f, "T"),
            Var::X => write!(f, "x"),
            Var::M => write!(f, "m"),
        }
    }
}

/// Dense univariate polynomial; `coeffs[k]` is the coefficient of `var^k`.
/// The leading coefficient is nonzero unless the polynomial is zero
/// (represented by an empty coefficient vector).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
    var: Var,
}

impl UniPoly {
    pub fn new(var: Var, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs, var }
    }

    /// Convenience constructor from machine-integer coefficients,
    /// `coeffs[k]` multiplying `var^k`.
    pub fn from_ints(var: Var, coeffs: &[i64]) -> Self {
        Self::new(var, coeffs.iter().map(|&c| crate::rational::rat_int(c)).collect())
    }

    pub fn zero(var: Var) -> Self {
        UniPoly { coeffs: Vec::new(), var }
    }

    pub fn constant(var: Var, c: Rational) -> Self {
        Self::new(var, vec![c])
    }

    pub fn one(var: Var) -> Self {
        Self::constant(var, Rational::one())
    }

    /// The monomial `c * var^k`.
    pub fn monomial(var: Var, c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero(var);
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        UniPoly { coeffs, var }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree treating the zero polynomial as 0, for size arithmetic.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `var^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + crate::rational::to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero(self.var);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
            .collect();
        UniPoly::new(self.var, coeffs)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero(self.var);
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            var: self.var,
        }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading_coeff();
        self.scale(&lc.recip())
    }

    /// Euclidean division: returns `(quotient, remainder)` with
    /// `deg r < deg d`. Panics if `d` is zero or the variables differ.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert_eq!(self.var, d.var, "div_rem across different variables");
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        if self.degree().map_or(true, |n| n < dd) {
            return (UniPoly::zero(self.var), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let n = rem.len() - 1;
        let lc = d.leading_coeff();
        let mut quot = vec![Rational::zero(); n - dd + 1];
        for k in (dd..=n).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = &rem[k] / &lc;
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                rem[idx] = &rem[idx] - &(&q * dc);
            }
            quot[k - dd] = q;
        }
        (UniPoly::new(self.var, quot), UniPoly::new(self.var, rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`, `gcd(p, 0) = monic(p)`.
    ///
    /// Uses a primitive pseudo-remainder sequence over the integers to keep
    /// intermediate coefficients small.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        assert_eq!(self.var, other.var, "gcd across different variables");
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let mut a = self.to_primitive_integer();
        let mut b = other.to_primitive_integer();
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = int_pseudo_rem(&a, &b);
            a = b;
            b = int_primitive(r);
        }
        UniPoly::new(
            self.var,
            a.iter().map(|c| Rational::from_integer(c.clone())).collect(),
        )
        .monic()
    }

    /// Square-free part: the monic product of distinct irreducible factors,
    /// `p / gcd(p, p')`. Errors on the zero polynomial.
    pub fn squarefree_part(&self) -> Result<UniPoly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.degree() == Some(0) {
            return Ok(UniPoly::one(self.var));
        }
        let g = self.gcd(&self.derivative());
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero(), "gcd must divide exactly");
        Ok(q.monic())
    }

    /// Square-free decomposition (Yun): returns `(factor, multiplicity)`
    /// pairs with distinct monic square-free factors of degree >= 1.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(UniPoly, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out = Vec::new();
        let p = self.monic();
        if p.degree() == Some(0) {
            return Ok(out);
        }
        let dp = p.derivative();
        let a = p.gcd(&dp);
        let mut b = p.div_rem(&a).0;
        let mut c = dp.div_rem(&a).0;
        let mut i = 1usize;
        while b.degree() != Some(0) {
            let d = &c - &b.derivative();
            let f = b.gcd(&d);
            if f.degree().is_some_and(|d| d > 0) {
                out.push((f.clone(), i));
            }
            b = b.div_rem(&f).0;
            c = d.div_rem(&f).0;
            i += 1;
        }
        Ok(out)
    }

    /// Clears denominators and content: integer coefficients with gcd 1 and
    /// positive leading coefficient. Zero polynomial gives an empty vector.
    pub fn to_primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if !g.is_one() {
            for c in ints.iter_mut() {
                *c = &*c / &g;
            }
        }
        if ints.last().is_some_and(|c| c.is_negative()) {
            for c in ints.iter_mut() {
                *c = -&*c;
            }
        }
        ints
    }

    /// Exact composite `p(q(y))`; the result lives in `q`'s variable.
    pub fn compose(&self, q: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero(q.var);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &UniPoly::constant(q.var, c.clone());
        }
        acc
    }

    /// Relabels the variable without touching coefficients.
    pub fn with_var(&self, var: Var) -> UniPoly {
        UniPoly { coeffs: self.coeffs.clone(), var }
    }
}

fn int_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    // prem(a, b): lc(b)^(deg a - deg b + 1) * a mod b, all integer.
    let db = b.len() - 1;
    let lc = b.last().unwrap().clone();
    let mut r = a.to_vec();
    while r.len() > db {
        let k = r.len() - 1;
        let head = r.last().unwrap().clone();
        if head.is_zero() {
            r.pop();
            continue;
        }
        for c in r.iter_mut() {
            *c = &*c * &lc;
        }
        for j in 0..=db {
            let idx = k - db + j;
            r[idx] = &r[idx] - &(&head * &b[j]);
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

fn int_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    if v.is_empty() {
        return v;
    }
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
    }
    if !g.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
    v
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        assert_eq!(self.var, rhs.var, "adding different variables");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + rhs.coeff(k));
        }
        UniPoly::new(self.var, coeffs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        assert_eq!(self.var, rhs.var, "subtracting different variables");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) - rhs.coeff(k));
        }
        UniPoly::new(self.var, coeffs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            var: self.var,
        }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        assert_eq!(self.var, rhs.var, "multiplying different variables");
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(self.var);
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        UniPoly::new(self.var, coeffs)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "{}", self.var)?;
                    } else {
                        write!(f, "{}^{k}", self.var)?;
                    }
                }
            }
        }
        Ok(())
    }
}
