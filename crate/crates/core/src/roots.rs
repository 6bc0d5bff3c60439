//! Certified real-root isolation and refinement for univariate rational
//! polynomials.
//!
//! Isolation runs Descartes' rule of signs with interval bisection on the
//! square-free part, entirely in exact integer arithmetic, so the output
//! intervals are certificates: each contains exactly one distinct real root.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::unipoly::UniPoly;

/// Closed interval with rational endpoints. Degenerate intervals
/// (`lo == hi`) pin an exact rational root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn point(r: Rational) -> Self {
        Interval { lo: r.clone(), hi: r }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

/// Sign of the integer polynomial `p` at the rational point `x`,
/// evaluated homogeneously so no rational reduction happens.
fn sign_at(p: &[BigInt], x: &Rational) -> i8 {
    if p.is_empty() {
        return 0;
    }
    let n = x.numer();
    let d = x.denom();
    // sum_i p[i] n^i d^(deg-i): homogeneous form, pure integer arithmetic.
    let deg = p.len() - 1;
    let mut dpow = vec![BigInt::one(); deg + 1];
    for k in 1..=deg {
        dpow[k] = &dpow[k - 1] * d;
    }
    let mut sum = BigInt::zero();
    let mut npow = BigInt::one();
    for (i, c) in p.iter().enumerate() {
        sum += c * &npow * &dpow[deg - i];
        npow = &npow * n;
    }
    match sum.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

fn sign_variations(p: &[BigInt]) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for c in p {
        if c.is_zero() {
            continue;
        }
        let pos = c.is_positive();
        if let Some(prev) = last {
            if prev != pos {
                count += 1;
            }
        }
        last = Some(pos);
    }
    count
}

/// In-place Taylor shift: p(x) -> p(x + 1).
fn taylor_shift_1(p: &mut [BigInt]) {
    let n = p.len();
    for k in 0..n {
        for j in (k..n.saturating_sub(1)).rev() {
            let add = p[j + 1].clone();
            p[j] += add;
        }
    }
}

/// p(x) -> 2^deg * p(x/2): coefficient i gains a factor 2^(deg - i).
fn scale_half(p: &[BigInt]) -> Vec<BigInt> {
    let deg = p.len() - 1;
    p.iter()
        .enumerate()
        .map(|(i, c)| c << (deg - i))
        .collect()
}

/// Descartes bound on the number of roots of `p` in the open unit interval:
/// sign variations of (x+1)^deg p(1/(x+1)).
fn unit_interval_variations(p: &[BigInt]) -> usize {
    let mut rev: Vec<BigInt> = p.iter().rev().cloned().collect();
    taylor_shift_1(&mut rev);
    sign_variations(&rev)
}

/// Isolates the roots of `p` lying in the open interval (0, 1) under the
/// affine map tracked by `lo`/`width` (the unit box maps to `(lo, lo+width)`).
/// `p` must be square-free. Exact rational roots are emitted as points.
fn isolate_unit(
    p: Vec<BigInt>,
    lo: Rational,
    width: Rational,
    original: &[BigInt],
    out: &mut Vec<Interval>,
) {
    let v = unit_interval_variations(&p);
    if v == 0 {
        return;
    }
    if v == 1 {
        out.push(certified_bracket(original, &lo, &(&lo + &width)));
        return;
    }
    let half = &width / Rational::from_integer(BigInt::from(2));
    let mid = &lo + &half;
    let left = scale_half(&p);
    let mut right = left.clone();
    taylor_shift_1(&mut right);
    // Exact root at the midpoint: left(1) == right(0) == constant term of right.
    if right.first().is_some_and(Zero::is_zero) {
        out.push(Interval::point(mid.clone()));
    }
    isolate_unit(left, lo, half.clone(), original, out);
    isolate_unit(right, mid, half, original, out);
}

/// Shrinks `(lo, hi)` (known to contain exactly one simple root, endpoints
/// possibly touching other roots) to a closed interval whose endpoints give
/// opposite nonzero signs, or to a degenerate point if the root is hit.
///
/// When an endpoint is itself a (different) root, the sign of `p` just
/// inside the interval is read off the derivative; square-freeness makes the
/// derivative nonzero there.
fn certified_bracket(p: &[BigInt], lo: &Rational, hi: &Rational) -> Interval {
    let deriv: Vec<BigInt> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let mut a = lo.clone();
    let mut b = hi.clone();
    let two = Rational::from_integer(BigInt::from(2));
    let mut sa = sign_at(p, &a);
    let mut sb = sign_at(p, &b);
    loop {
        if sa != 0 && sb != 0 && sa != sb {
            return Interval::new(a, b);
        }
        let mid = (&a + &b) / &two;
        let sm = sign_at(p, &mid);
        if sm == 0 {
            return Interval::point(mid);
        }
        // Sign just right of `a`: the actual sign, or the derivative's when
        // `a` sits on a root.
        let ea = if sa != 0 { sa } else { sign_at(&deriv, &a) };
        if ea != sm {
            b = mid;
            sb = sm;
        } else {
            a = mid;
            sa = sm;
        }
    }
}

/// Cauchy root bound rounded up to a power of two.
fn root_bound(p: &[BigInt]) -> Rational {
    let lead = p.last().unwrap().magnitude().clone();
    let max = p
        .iter()
        .map(|c| c.magnitude().clone())
        .max()
        .unwrap_or_default();
    // 1 + max|c_i| / |lead|, then round up to 2^k.
    let bound = Rational::one()
        + Rational::new(BigInt::from_biguint(num_bigint::Sign::Plus, max), BigInt::from_biguint(num_bigint::Sign::Plus, lead));
    let mut b = Rational::one();
    let two = Rational::from_integer(BigInt::from(2));
    while b < bound {
        b = &b * &two;
    }
    b
}

/// Isolating intervals for the distinct real roots of `p`, sorted ascending.
///
/// The square-free part is taken first, so multiplicities collapse; each
/// interval either pins an exact rational root (degenerate) or brackets a
/// sign change of the square-free part.
pub fn isolate_real_roots(p: &UniPoly) -> Result<Vec<Interval>> {
    let sf = p.squarefree_part()?;
    if sf.degree().map_or(true, |d| d == 0) {
        return Ok(Vec::new());
    }
    let ints = sf.to_primitive_integer();
    let mut out = Vec::new();

    // Root at the origin.
    let strip = ints.iter().take_while(|c| c.is_zero()).count();
    let reduced: Vec<BigInt> = ints[strip..].to_vec();
    if strip > 0 {
        out.push(Interval::point(Rational::zero()));
    }
    if reduced.len() > 1 {
        let bound = root_bound(&reduced);
        // Positive roots: map (0,1) onto (0, bound) by q(x) = p(bound*x).
        let pos = compose_scale(&reduced, &bound);
        isolate_unit(pos, Rational::zero(), bound.clone(), &reduced, &mut out);
        // Negative roots: mirror.
        let mirrored = mirror(&reduced);
        let neg = compose_scale(&mirrored, &bound);
        let mut neg_out = Vec::new();
        isolate_unit(neg, Rational::zero(), bound, &mirrored, &mut neg_out);
        for iv in neg_out {
            out.push(Interval::new(-iv.hi, -iv.lo));
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// p(x) -> p(s * x) cleared to integers, for s a positive rational.
fn compose_scale(p: &[BigInt], s: &Rational) -> Vec<BigInt> {
    let deg = p.len() - 1;
    let n = s.numer();
    let d = s.denom();
    // coefficient i -> c_i n^i d^(deg-i)
    let mut npow = BigInt::one();
    let mut out = Vec::with_capacity(p.len());
    for (i, c) in p.iter().enumerate() {
        out.push(c * &npow * d.pow((deg - i) as u32));
        npow = &npow * n;
    }
    out
}

fn mirror(p: &[BigInt]) -> Vec<BigInt> {
    p.iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
        .collect()
}

/// Refines an isolating interval of `p`'s square-free part down to `eps`,
/// returning a rational within `eps` of the true root. Exact rational roots
/// are returned exactly when they are caught by a Newton step or endpoint.
pub fn refine_root(p: &UniPoly, iv: &Interval, eps: &Rational) -> Result<Rational> {
    assert!(eps > &Rational::zero(), "eps must be positive");
    let sf = p.squarefree_part()?;
    let ints = sf.to_primitive_integer();

    if iv.is_point() {
        if sign_at(&ints, &iv.lo) == 0 {
            return Ok(iv.lo.clone());
        }
        return Err(Error::NoSignChange { lo: iv.lo.clone(), hi: iv.hi.clone() });
    }
    let mut a = iv.lo.clone();
    let mut b = iv.hi.clone();
    let mut sa = sign_at(&ints, &a);
    let sb = sign_at(&ints, &b);
    if sa == 0 {
        return Ok(a);
    }
    if sb == 0 {
        return Ok(b);
    }
    if sa == sb {
        return Err(Error::NoSignChange { lo: iv.lo.clone(), hi: iv.hi.clone() });
    }

    // One exact Newton step from the midpoint catches rational roots
    // (always exact for linear factors).
    let two = Rational::from_integer(BigInt::from(2));
    let mid = (&a + &b) / &two;
    let deriv = sf.derivative();
    let dm = deriv.eval(&mid);
    if !dm.is_zero() {
        let candidate = &mid - &(sf.eval(&mid) / dm);
        if candidate >= a && candidate <= b && sign_at(&ints, &candidate) == 0 {
            return Ok(candidate);
        }
    }

    // Try one float Newton jump to a dyadic candidate bracket, then finish
    // with certified bisection.
    if let Some((lo2, hi2)) = float_jump(&sf, &ints, &a, &b, eps) {
        a = lo2;
        b = hi2;
        sa = sign_at(&ints, &a);
        if sa == 0 {
            return Ok(a);
        }
        if sign_at(&ints, &b) == 0 {
            return Ok(b);
        }
    }
    while &(&b - &a) > eps {
        let mid = (&a + &b) / &two;
        let sm = sign_at(&ints, &mid);
        if sm == 0 {
            return Ok(mid);
        }
        if sm == sa {
            a = mid;
            sa = sm;
        } else {
            b = mid;
        }
    }
    Ok((&a + &b) / &two)
}

/// Newton iteration in f64 from the bracket midpoint; on convergence returns
/// a certified (exact sign change) sub-bracket of width <= eps when possible.
fn float_jump(
    sf: &UniPoly,
    ints: &[BigInt],
    a: &Rational,
    b: &Rational,
    eps: &Rational,
) -> Option<(Rational, Rational)> {
    let fa = crate::rational::to_f64(a);
    let fb = crate::rational::to_f64(b);
    if !fa.is_finite() || !fb.is_finite() {
        return None;
    }
    let deriv = sf.derivative();
    let mut x = 0.5 * (fa + fb);
    for _ in 0..64 {
        let fx = sf.eval_f64(x);
        let dx = deriv.eval_f64(x);
        if dx == 0.0 || !fx.is_finite() {
            return None;
        }
        let next = x - fx / dx;
        if !next.is_finite() || next < fa || next > fb {
            return None;
        }
        if (next - x).abs() < 1e-14 * (1.0 + next.abs()) {
            x = next;
            break;
        }
        x = next;
    }
    // Dyadic candidate bracket around the float estimate.
    let half = eps / Rational::from_integer(BigInt::from(4));
    let center = dyadic_from_f64(x, 60)?;
    let mut lo = &center - &half;
    let mut hi = &center + &half;
    if &lo < a {
        lo = a.clone();
    }
    if &hi > b {
        hi = b.clone();
    }
    let sl = sign_at(ints, &lo);
    let sh = sign_at(ints, &hi);
    if sl == 0 || sh == 0 || sl != sh {
        Some((lo, hi))
    } else {
        None
    }
}

fn dyadic_from_f64(x: f64, bits: u32) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let scale = 2f64.powi(bits as i32);
    let scaled = (x * scale).round();
    if !scaled.is_finite() || scaled.abs() >= 9.0e15 {
        return None;
    }
    Some(Rational::new(
        BigInt::from(scaled as i64),
        BigInt::one() << bits,
    ))
}

/// Exact rational roots of `p` lying strictly inside `(lo, hi)`.
///
/// Uses root isolation plus the rational-root bound: any rational root of the
/// primitive integer form has denominator dividing the leading coefficient,
/// so refining an isolating interval below 1/(2 lc^2) leaves room for at most
/// one candidate, recovered as the simplest rational in the interval.
pub fn rational_roots_in(p: &UniPoly, lo: &Rational, hi: &Rational) -> Result<Vec<Rational>> {
    let sf = p.squarefree_part()?;
    let ints = sf.to_primitive_integer();
    if ints.len() <= 1 {
        return Ok(Vec::new());
    }
    let lc = ints.last().unwrap().magnitude().clone();
    let lc_rat = Rational::from_integer(BigInt::from_biguint(num_bigint::Sign::Plus, lc));
    let gap = (Rational::one() / (&lc_rat * &lc_rat)) / Rational::from_integer(BigInt::from(2));
    let mut out = Vec::new();
    for iv in isolate_real_roots(&sf)? {
        if &iv.hi <= lo || &iv.lo >= hi {
            continue;
        }
        if iv.is_point() {
            if &iv.lo > lo && &iv.lo < hi {
                out.push(iv.lo);
            }
            continue;
        }
        // Shrink until at most one denominator-bounded rational can fit.
        let mut a = iv.lo.clone();
        let mut b = iv.hi.clone();
        let mut sa = sign_at(&ints, &a);
        let two = Rational::from_integer(BigInt::from(2));
        let mut exact: Option<Rational> = None;
        while &(&b - &a) >= &gap {
            let mid = (&a + &b) / &two;
            let sm = sign_at(&ints, &mid);
            if sm == 0 {
                exact = Some(mid);
                break;
            }
            if sm == sa {
                a = mid;
                sa = sm;
            } else {
                b = mid;
            }
        }
        let candidate = match exact {
            Some(r) => r,
            None => {
                let r = simplest_in_interval(&a, &b);
                if sign_at(&ints, &r) != 0 {
                    continue;
                }
                r
            }
        };
        if &candidate > lo && &candidate < hi {
            out.push(candidate);
        }
    }
    Ok(out)
}

/// The rational with smallest denominator in the closed interval `[a, b]`,
/// via the continued-fraction walk.
fn simplest_in_interval(a: &Rational, b: &Rational) -> Rational {
    assert!(a <= b);
    if a == b {
        return a.clone();
    }
    if a <= &Rational::zero() && b >= &Rational::zero() {
        return Rational::zero();
    }
    if b < &Rational::zero() {
        return -simplest_in_interval(&-b.clone(), &-a.clone());
    }
    // 0 < a < b: recurse on continued-fraction digits.
    fn rec(a: &Rational, b: &Rational) -> Rational {
        let fa = a.floor();
        if &fa == a {
            return a.clone();
        }
        let next = &fa + Rational::one();
        if &next <= b {
            return next;
        }
        // Same integer part: descend into the fractional parts, flipped.
        let inv_a = (b - &fa).recip();
        let inv_b = (a - &fa).recip();
        &fa + rec(&inv_a, &inv_b).recip()
    }
    rec(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use crate::unipoly::Var;

    fn t(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_ints(Var::T, coeffs)
    }

    #[test]
    fn isolates_sqrt2() {
        let p = t(&[-2, 0, 1]);
        let ivs = isolate_real_roots(&p).unwrap();
        assert_eq!(ivs.len(), 2);
        let sqrt2 = 1.4142135623730951;
        assert!(crate::rational::to_f64(&ivs[0].lo) <= -sqrt2);
        assert!(crate::rational::to_f64(&ivs[0].hi) >= -sqrt2);
        assert!(crate::rational::to_f64(&ivs[1].lo) <= sqrt2);
        assert!(crate::rational::to_f64(&ivs[1].hi) >= sqrt2);
    }

    #[test]
    fn no_real_roots() {
        assert!(isolate_real_roots(&t(&[1, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn collapses_multiplicity() {
        // (T-1)^2 has one distinct root.
        let ivs = isolate_real_roots(&t(&[1, -2, 1])).unwrap();
        assert_eq!(ivs.len(), 1);
        assert!(ivs[0].contains(&rat_int(1)));
    }

    #[test]
    fn exact_rational_roots_become_points() {
        // (2T-1)(T-3) = 2T^2 - 7T + 3, roots 1/2 and 3.
        let p = t(&[3, -7, 2]);
        let ivs = isolate_real_roots(&p).unwrap();
        assert_eq!(ivs.len(), 2);
        for iv in &ivs {
            if iv.is_point() {
                assert!(iv.lo == rat(1, 2) || iv.lo == rat_int(3));
            }
        }
    }

    #[test]
    fn refine_sqrt2() {
        let p = t(&[-2, 0, 1]);
        let iv = Interval::new(rat_int(1), rat_int(2));
        let eps = crate::rational::pow10(-10);
        let r = refine_root(&p, &iv, &eps).unwrap();
        let err = (crate::rational::to_f64(&r) - 1.4142135623730951).abs();
        assert!(err < 1e-10, "error {err}");
    }

    #[test]
    fn refine_rational_root_exactly() {
        // T - 1/3 on [0, 1] -> exactly 1/3.
        let p = UniPoly::new(Var::T, vec![rat(-1, 3), rat_int(1)]);
        let iv = Interval::new(rat_int(0), rat_int(1));
        let r = refine_root(&p, &iv, &crate::rational::pow10(-6)).unwrap();
        assert_eq!(r, rat(1, 3));
    }

    #[test]
    fn refine_rejects_bad_bracket() {
        let p = t(&[-2, 0, 1]);
        let iv = Interval::new(rat_int(3), rat_int(4));
        assert!(refine_root(&p, &iv, &crate::rational::pow10(-6)).is_err());
    }

    #[test]
    fn rational_roots_of_denominator() {
        // (m - 1/2)(m - 1/3)(m^2 + 1), roots 1/2, 1/3 in (0,1).
        let p = &(&UniPoly::new(Var::M, vec![rat(-1, 2), rat_int(1)])
            * &UniPoly::new(Var::M, vec![rat(-1, 3), rat_int(1)]))
            * &UniPoly::from_ints(Var::M, &[1, 0, 1]);
        let roots = rational_roots_in(&p, &rat_int(0), &rat_int(1)).unwrap();
        assert_eq!(roots, vec![rat(1, 3), rat(1, 2)]);
    }

    #[test]
    fn rational_roots_skips_irrational() {
        let p = t(&[-2, 0, 1]);
        let roots = rational_roots_in(&p, &rat_int(-2), &rat_int(2)).unwrap();
        assert!(roots.is_empty());
    }

    #[test]
    fn simplest_rational_search() {
        assert_eq!(
            simplest_in_interval(&rat(5, 16), &rat(6, 16)),
            rat(1, 3)
        );
        assert_eq!(simplest_in_interval(&rat(-1, 3), &rat(1, 7)), rat_int(0));
    }
}
