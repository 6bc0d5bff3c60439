//! Reduced rational functions in the modulation index `m`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::unipoly::{UniPoly, Var};

/// Quotient of two polynomials in `m`, kept in canonical form:
/// `gcd(num, den) = 1` and the denominator monic. Equality is therefore
/// structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: UniPoly,
    den: UniPoly,
}

impl RationalFunction {
    /// Builds and canonicalizes. Panics if `den` is the zero polynomial.
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert_eq!(num.var(), Var::M, "rational functions live in m");
        assert_eq!(den.var(), Var::M, "rational functions live in m");
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RationalFunction { num, den: UniPoly::one(Var::M) };
        }
        let g = num.gcd(&den);
        let (num, r1) = num.div_rem(&g);
        debug_assert!(r1.is_zero());
        let (den, r2) = den.div_rem(&g);
        debug_assert!(r2.is_zero());
        let lc = den.leading_coeff();
        RationalFunction {
            num: num.scale(&lc.recip()),
            den: den.scale(&lc.recip()),
        }
    }

    pub fn from_poly(num: UniPoly) -> Self {
        RationalFunction { num, den: UniPoly::one(Var::M) }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(UniPoly::constant(Var::M, c))
    }

    pub fn zero() -> Self {
        Self::constant(Rational::zero())
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree_or_zero() == 0 && self.den.is_one()
    }

    /// Exact evaluation; a vanishing denominator is reported as a pole,
    /// never silently.
    pub fn eval(&self, m0: &Rational) -> Result<Rational> {
        let d = self.den.eval(m0);
        if d.is_zero() {
            return Err(Error::Pole(m0.clone()));
        }
        Ok(self.num.eval(m0) / d)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn m(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_ints(Var::M, coeffs)
    }

    #[test]
    fn canonical_form() {
        // (2m^2 - 2) / (4m - 4) = (m + 1) / 2
        let r = RationalFunction::new(m(&[-2, 0, 2]), m(&[-4, 4]));
        assert_eq!(r.num(), &m(&[1, 1]).scale(&rat(1, 2)));
        assert!(r.den().is_one());
    }

    #[test]
    fn eq11_t2_coefficient_at_half() {
        // Worked value: specializes to 47/28 at m = 1/2.
        let r = RationalFunction::new(
            m(&[245, 0, -1120, 0, 1456, 0, -576]),
            m(&[140, 0, -560, 0, 448]),
        );
        assert_eq!(r.eval(&rat(1, 2)).unwrap(), rat(47, 28));
    }

    #[test]
    fn pole_detected() {
        let r = RationalFunction::new(m(&[0, 1]), m(&[-1, 1]));
        assert!(matches!(r.eval(&rat_int(1)), Err(Error::Pole(_))));
        assert_eq!(r.eval(&rat_int(2)).unwrap(), rat_int(2));
    }

    #[test]
    fn constant_function() {
        let r = RationalFunction::constant(rat_int(5));
        assert_eq!(r.eval(&rat(7, 3)).unwrap(), rat_int(5));
    }

    #[test]
    fn evaluation_is_homomorphism() {
        let a = RationalFunction::new(m(&[1, 2]), m(&[3, 0, 1]));
        let b = RationalFunction::new(m(&[-1, 1, 1]), m(&[2, 1]));
        let p = rat(1, 3);
        let lhs = (&a * &b).eval(&p).unwrap();
        let rhs = a.eval(&p).unwrap() * b.eval(&p).unwrap();
        assert_eq!(lhs, rhs);
    }
}
