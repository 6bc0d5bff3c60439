//! Sparse multivariate polynomials over the rationals.
//!
//! Terms live in a `BTreeMap` keyed by the monomial order, so the leading
//! term is always the last entry and iteration order is deterministic.
//! The order is degree-reverse-lexicographic with variable significance
//! given by index position: index 0 is the largest variable.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Exponent vector with fixed arity; index 0 is the most significant variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Box<[u16]>);

impl Monomial {
    pub fn unit(arity: usize) -> Self {
        Monomial(vec![0; arity].into_boxed_slice())
    }

    pub fn variable(arity: usize, idx: usize) -> Self {
        let mut e = vec![0u16; arity];
        e[idx] = 1;
        Monomial(e.into_boxed_slice())
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), other.arity());
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.arity(), other.arity());
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial(
            other
                .0
                .iter()
                .zip(self.0.iter())
                .map(|(b, a)| b - a)
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.arity(), other.arity(), "mixed-arity comparison");
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // degrevlex tie-break: the last nonzero exponent difference decides,
        // smaller-in-the-least-significant-variable wins.
        for i in (0..self.0.len()).rev() {
            let a = self.0[i];
            let b = other.0[i];
            if a != b {
                return if a < b { Ordering::Greater } else { Ordering::Less };
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial; no zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: Arc<[String]>) -> Self {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Arc<[String]>, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(p.arity()), c);
        }
        p
    }

    pub fn variable(vars: Arc<[String]>, idx: usize) -> Self {
        let arity = vars.len();
        assert!(idx < arity);
        let mut p = Self::zero(vars);
        p.terms.insert(Monomial::variable(arity, idx), Rational::one());
        p
    }

    pub fn from_terms<I>(vars: Arc<[String]>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u16>, Rational)>,
    {
        let mut p = Self::zero(vars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), p.arity(), "exponent arity mismatch");
            p.add_term(Monomial(exps.into_boxed_slice()), c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms from the leading monomial downward.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.last_key_value()
    }

    pub fn coeff(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn add_term(&mut self, mono: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// In-place `self -= factor * shift * g`, the inner step of polynomial
    /// reduction; avoids rebuilding term maps.
    pub fn sub_shifted(&mut self, g: &MultiPoly, shift: &Monomial, factor: &Rational) {
        debug_assert_eq!(self.vars, g.vars);
        for (m, c) in &g.terms {
            self.add_term(m.mul(shift), -(c * factor));
        }
    }

    /// Multiply by a single term.
    pub fn mul_term(&self, mono: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mono), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(self.vars.clone(), Rational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Divides every coefficient by the leading coefficient.
    pub fn monic(&self) -> MultiPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => self.scale(&lc.recip()),
        }
    }

    /// Clears denominators and content, making coefficients integral with
    /// gcd 1 and a positive leading coefficient.
    pub fn primitive(&self) -> MultiPoly {
        use num_bigint::BigInt;
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = BigInt::one();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(&(c.numer() * (&lcm / c.denom())));
        }
        let mut factor = Rational::new(lcm, g);
        if self.leading().unwrap().1.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.arity());
        let mut acc = Rational::zero();
        for (mono, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in mono.0.iter().enumerate() {
                for _ in 0..e {
                    term = term * &point[i];
                }
            }
            acc = acc + term;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (mono, c) in &self.terms {
            let mut term = crate::rational::to_f64(c);
            for (i, &e) in mono.0.iter().enumerate() {
                term *= point[i].powi(e as i32);
            }
            acc += term;
        }
        acc
    }

    /// Substitutes an exact value for variable `idx` and removes it from the
    /// variable list.
    pub fn substitute_and_drop(&self, idx: usize, value: &Rational) -> MultiPoly {
        assert!(idx < self.arity());
        let new_vars: Arc<[String]> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != idx)
            .map(|(_, v)| v.clone())
            .collect();
        let mut out = MultiPoly::zero(new_vars);
        for (mono, c) in &self.terms {
            let e = mono.0[idx];
            let mut coeff = c.clone();
            for _ in 0..e {
                coeff = coeff * value;
            }
            let exps: Vec<u16> = mono
                .0
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != idx)
                .map(|(_, &v)| v)
                .collect();
            out.add_term(Monomial(exps.into_boxed_slice()), coeff);
        }
        out
    }

    /// Reinterprets the polynomial with permuted variables: new exponent of
    /// variable `perm[i]` is the old exponent of variable `i`. Names stay.
    pub fn permute_vars(&self, perm: &[usize]) -> MultiPoly {
        assert_eq!(perm.len(), self.arity());
        let mut out = MultiPoly::zero(self.vars.clone());
        for (mono, c) in &self.terms {
            let mut exps = vec![0u16; self.arity()];
            for (i, &e) in mono.0.iter().enumerate() {
                exps[perm[i]] = e;
            }
            out.add_term(Monomial(exps.into_boxed_slice()), c.clone());
        }
        out
    }

    /// Maps this polynomial into a larger/equal ring. `embedding[i]` is the
    /// index of variable `i` in the target ring.
    pub fn embed(&self, target: Arc<[String]>, embedding: &[usize]) -> MultiPoly {
        assert_eq!(embedding.len(), self.arity());
        let arity = target.len();
        let mut out = MultiPoly::zero(target);
        for (mono, c) in &self.terms {
            let mut exps = vec![0u16; arity];
            for (i, &e) in mono.0.iter().enumerate() {
                exps[embedding[i]] += e;
            }
            out.add_term(Monomial(exps.into_boxed_slice()), c.clone());
        }
        out
    }

    /// Substitutes whole polynomials for every variable (exact composition).
    /// `images[i]` replaces variable `i`; all images share one target ring.
    pub fn compose(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.arity());
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .expect("compose needs at least one image");
        let mut acc = MultiPoly::zero(target.clone());
        for (mono, c) in &self.terms {
            let mut term = MultiPoly::constant(target.clone(), c.clone());
            for (i, &e) in mono.0.iter().enumerate() {
                if e > 0 {
                    term = &term * &images[i].pow(e as u32);
                }
            }
            acc = &acc + &term;
        }
        acc
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.vars, rhs.vars, "mixed rings");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.vars, rhs.vars, "mixed rings");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.vars, rhs.vars, "mixed rings");
        let mut out = MultiPoly::zero(self.vars.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, c) in self.terms_desc() {
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
            if mono.is_unit() {
                write!(f, "{a}")?;
                continue;
            }
            let mut wrote_factor = false;
            if !a.is_one() {
                write!(f, "{a}")?;
                wrote_factor = true;
            }
            for (i, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote_factor {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.vars[i])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                wrote_factor = true;
            }
        }
        Ok(())
    }
}
