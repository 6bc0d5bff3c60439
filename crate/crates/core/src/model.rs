//! SHEPWM polynomial system construction.
//!
//! The transcendental harmonic-elimination equations become polynomial
//! systems in two steps: multiple-angle cosines expand to Chebyshev
//! polynomials in the signed cosines `x_i`, and the symmetric power sums
//! then rewrite into elementary symmetric coordinates `s_1..s_n`, after
//! which `s_1` is identified with the modulation index `m`.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::multipoly::MultiPoly;
use crate::rational::{rat_int, Rational};
use crate::unipoly::{UniPoly, Var};

/// Which harmonic orders are eliminated for a given angle count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmonicPlan {
    pub n: usize,
    /// Strictly increasing odd orders, none divisible by 3; length `n - 1`.
    pub orders: Vec<u32>,
}

/// The n equations `g_k` in the signed cosines `x_1..x_n` plus `m`.
#[derive(Debug, Clone)]
pub struct PowerSumSystem {
    pub plan: HarmonicPlan,
    /// `g_1 = sum x_i - m`; `g_k` for k >= 2 sums the Chebyshev expansion of
    /// one eliminated order over all `x_i`. Ring: `x1 > ... > xn > m`.
    pub polys: Vec<MultiPoly>,
}

/// The equations in elementary symmetric coordinates.
#[derive(Debug, Clone)]
pub struct ElementarySystem {
    pub plan: HarmonicPlan,
    /// `f_1 = s_1 - m`, then one `f_k` per eliminated order.
    /// Ring: `s_n > ... > s_1 > m`.
    pub polys: Vec<MultiPoly>,
    /// `f_2..f_n` with `s_1` replaced by `m`. Ring: `s_n > ... > s_2 > m`.
    pub reduced: Vec<MultiPoly>,
}

pub fn x_ring(n: usize) -> Arc<[String]> {
    (1..=n)
        .map(|i| format!("x{i}"))
        .chain(std::iter::once("m".to_string()))
        .collect()
}

pub fn s_full_ring(n: usize) -> Arc<[String]> {
    (1..=n)
        .rev()
        .map(|i| format!("s{i}"))
        .chain(std::iter::once("m".to_string()))
        .collect()
}

pub fn s_reduced_ring(n: usize) -> Arc<[String]> {
    (2..=n)
        .rev()
        .map(|i| format!("s{i}"))
        .chain(std::iter::once("m".to_string()))
        .collect()
}

/// The `n - 1` smallest harmonic orders of the form 6M±1 starting at 5:
/// 5, 7, 11, 13, 17, 19, ...
pub fn harmonic_orders(n: usize) -> Result<HarmonicPlan> {
    if n < 2 {
        return Err(Error::InvalidPlan(format!(
            "need at least 2 switching angles, got {n} (n = 1 is the fundamental-only case)"
        )));
    }
    let mut orders = Vec::with_capacity(n - 1);
    let mut m = 1u32;
    while orders.len() < n - 1 {
        for o in [6 * m - 1, 6 * m + 1] {
            if orders.len() < n - 1 {
                orders.push(o);
            }
        }
        m += 1;
    }
    debug_assert!(orders.windows(2).all(|w| w[0] < w[1]));
    debug_assert!(orders.iter().all(|o| o % 2 == 1 && o % 3 != 0));
    Ok(HarmonicPlan { n, orders })
}

/// Chebyshev expansion `P_k` with `cos(k a) = P_k(cos a)`, via
/// `P_{k+1} = 2x P_k - P_{k-1}`.
pub fn cos_multiple_angle(k: u32) -> UniPoly {
    assert!(k >= 1, "cos_multiple_angle needs k >= 1");
    let x = UniPoly::from_ints(Var::X, &[0, 1]);
    let two_x = UniPoly::from_ints(Var::X, &[0, 2]);
    let mut prev = UniPoly::one(Var::X);
    let mut cur = x;
    for _ in 1..k {
        let next = &(&two_x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Builds `g_1..g_n` of the power-sum system.
pub fn build_power_sum_system(n: usize) -> Result<PowerSumSystem> {
    let plan = harmonic_orders(n)?;
    let ring = x_ring(n);
    let m_idx = n;
    let mut polys = Vec::with_capacity(n);

    // g_1 = sum x_i - m
    let mut g1 = MultiPoly::zero(ring.clone());
    for i in 0..n {
        g1 = &g1 + &MultiPoly::variable(ring.clone(), i);
    }
    g1 = &g1 - &MultiPoly::variable(ring.clone(), m_idx);
    polys.push(g1);

    for &order in &plan.orders {
        let cheb = cos_multiple_angle(order);
        let mut g = MultiPoly::zero(ring.clone());
        for i in 0..n {
            for (j, c) in cheb.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut exps = vec![0u16; n + 1];
                exps[i] = j as u16;
                g.add_term(crate::multipoly::Monomial(exps.into_boxed_slice()), c.clone());
            }
        }
        polys.push(g);
    }
    Ok(PowerSumSystem { plan, polys })
}

/// Newton's recurrence: the power sum `p_r = x_1^r + ... + x_n^r` written in
/// the elementary symmetric polynomials `s_1..s_n` (ring `s1, ..., sn` in
/// natural order; `s_j = 0` for `j > n`).
pub fn power_sum_in_elementary(r: usize, n: usize) -> MultiPoly {
    assert!(r >= 1);
    let ring: Arc<[String]> = (1..=n).map(|i| format!("s{i}")).collect();
    let s = |j: usize| MultiPoly::variable(ring.clone(), j - 1);
    let mut ps: Vec<MultiPoly> = Vec::with_capacity(r);
    for k in 1..=r {
        // p_k = sum_{i=1}^{k-1} (-1)^(i-1) s_i p_{k-i} + (-1)^(k-1) k s_k
        let mut acc = MultiPoly::zero(ring.clone());
        for i in 1..k {
            if i > n {
                break;
            }
            let term = &s(i) * &ps[k - i - 1];
            if i % 2 == 1 {
                acc = &acc + &term;
            } else {
                acc = &acc - &term;
            }
        }
        if k <= n {
            let last = s(k).scale(&rat_int(k as i64));
            if k % 2 == 1 {
                acc = &acc + &last;
            } else {
                acc = &acc - &last;
            }
        }
        ps.push(acc);
    }
    ps.pop().unwrap()
}

/// Builds the elementary-coordinate system `f_1..f_n` plus the reduced list
/// `f_2..f_n` with `s_1` substituted by `m`.
pub fn build_elementary_system(n: usize) -> Result<ElementarySystem> {
    let plan = harmonic_orders(n)?;
    let full = s_full_ring(n);
    // Index of s_j in the full ring is n - j; m sits at index n.
    let s_idx = |j: usize| n - j;
    let m_idx = n;

    let embed_p = |r: usize| -> MultiPoly {
        let p = power_sum_in_elementary(r, n);
        let embedding: Vec<usize> = (1..=n).map(s_idx).collect();
        p.embed(full.clone(), &embedding)
    };

    let mut polys = Vec::with_capacity(n);
    let f1 = &MultiPoly::variable(full.clone(), s_idx(1))
        - &MultiPoly::variable(full.clone(), m_idx);
    polys.push(f1);

    for &order in &plan.orders {
        let cheb = cos_multiple_angle(order);
        let mut f = MultiPoly::zero(full.clone());
        for (j, c) in cheb.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j == 0 {
                f = &f + &MultiPoly::constant(full.clone(), c * rat_int(n as i64));
            } else {
                f = &f + &embed_p(j).scale(c);
            }
        }
        polys.push(f);
    }

    // Reduced system: drop f_1, map s_1 -> m.
    let reduced_ring = s_reduced_ring(n);
    let mut embedding: Vec<usize> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        if i < n - 1 {
            embedding.push(i); // s_n..s_2 keep their positions
        } else {
            embedding.push(n - 1); // s_1 and m both land on m
        }
    }
    let reduced = polys[1..]
        .iter()
        .map(|f| f.embed(reduced_ring.clone(), &embedding))
        .collect();

    Ok(ElementarySystem { plan, polys, reduced })
}

/// Specializes the reduced system at an exact modulation index, dropping the
/// `m` variable; the result lives in `s_n > ... > s_2`.
pub fn specialize_reduced(sys: &ElementarySystem, m0: &Rational) -> Vec<MultiPoly> {
    let m_idx = sys.plan.n - 1;
    sys.reduced
        .iter()
        .map(|f| f.substitute_and_drop(m_idx, m0))
        .collect()
}

/// Theorem 1 sign filter: `s_r` must be strictly nonzero with sign
/// `+, -, -, +` repeating in `r mod 4` (1-based `r`; zero fails).
pub fn sign_pattern_ok(s: &[Rational]) -> bool {
    s.iter().enumerate().all(|(i, v)| {
        let r = i + 1;
        if v.is_zero() {
            return false;
        }
        match r % 4 {
            1 | 0 => v.is_positive(),
            _ => v.is_negative(),
        }
    })
}

/// Elementary symmetric values `e_1..e_n` of an exact point.
pub fn elementary_symmetric_values(x: &[Rational]) -> Vec<Rational> {
    let n = x.len();
    let mut e = vec![Rational::zero(); n + 1];
    e[0] = Rational::one();
    for (i, xi) in x.iter().enumerate() {
        for j in (1..=i + 1).rev() {
            e[j] = &e[j] + &(&e[j - 1] * xi);
        }
    }
    e.remove(0);
    e
}

/// Power-sum values `p_r` of an exact point.
pub fn power_sum_value(x: &[Rational], r: u32) -> Rational {
    x.iter()
        .map(|xi| crate::rational::pow_i(xi, r as i32))
        .fold(Rational::zero(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn orders_match_6m_pm_1() {
        assert_eq!(harmonic_orders(3).unwrap().orders, vec![5, 7]);
        assert_eq!(harmonic_orders(5).unwrap().orders, vec![5, 7, 11, 13]);
        assert_eq!(harmonic_orders(4).unwrap().orders, vec![5, 7, 11]);
        assert_eq!(harmonic_orders(8).unwrap().orders, vec![5, 7, 11, 13, 17, 19, 23]);
        assert!(harmonic_orders(1).is_err());
    }

    #[test]
    fn chebyshev_small_orders() {
        assert_eq!(cos_multiple_angle(1), UniPoly::from_ints(Var::X, &[0, 1]));
        assert_eq!(
            cos_multiple_angle(5),
            UniPoly::from_ints(Var::X, &[0, 5, 0, -20, 0, 16])
        );
        assert_eq!(
            cos_multiple_angle(7),
            UniPoly::from_ints(Var::X, &[0, -7, 0, 56, 0, -112, 0, 64])
        );
    }

    #[test]
    fn chebyshev_recurrence_and_bound() {
        for k in 1..12u32 {
            let pk = cos_multiple_angle(k);
            let pk1 = cos_multiple_angle(k + 1);
            let pk2 = cos_multiple_angle(k + 2);
            let two_x = UniPoly::from_ints(Var::X, &[0, 2]);
            assert_eq!(pk2, &(&two_x * &pk1) - &pk);
            // |P_k(c)| <= 1 on [-1, 1]
            for i in -10..=10 {
                let c = rat(i, 10);
                let v = pk.eval(&c);
                assert!(v.abs() <= rat_int(1), "P_{k} out of range at {c}");
            }
        }
    }

    #[test]
    fn power_sum_conversion_examples() {
        // p_1 = s_1
        let p1 = power_sum_in_elementary(1, 3);
        assert_eq!(p1, MultiPoly::variable(p1.vars().clone(), 0));
        // p_2 = s_1^2 - 2 s_2
        let p2 = power_sum_in_elementary(2, 3);
        let expected = MultiPoly::from_terms(
            p2.vars().clone(),
            vec![
                (vec![2, 0, 0], rat_int(1)),
                (vec![0, 1, 0], rat_int(-2)),
            ],
        );
        assert_eq!(p2, expected);
        // p_5 for n >= 5
        let p5 = power_sum_in_elementary(5, 5);
        let expected = MultiPoly::from_terms(
            p5.vars().clone(),
            vec![
                (vec![5, 0, 0, 0, 0], rat_int(1)),
                (vec![3, 1, 0, 0, 0], rat_int(-5)),
                (vec![2, 0, 1, 0, 0], rat_int(5)),
                (vec![1, 2, 0, 0, 0], rat_int(5)),
                (vec![1, 0, 0, 1, 0], rat_int(-5)),
                (vec![0, 1, 1, 0, 0], rat_int(-5)),
                (vec![0, 0, 0, 0, 1], rat_int(5)),
            ],
        );
        assert_eq!(p5, expected);
    }

    #[test]
    fn power_sum_conversion_matches_expansion() {
        // Compare against brute-force symbolic expansion for r <= 10, n <= 7.
        for n in 1..=7usize {
            let xring: Arc<[String]> = (1..=n).map(|i| format!("x{i}")).collect();
            let xs: Vec<MultiPoly> = (0..n)
                .map(|i| MultiPoly::variable(xring.clone(), i))
                .collect();
            // elementary symmetric polynomials as x-polynomials
            let mut e = vec![MultiPoly::zero(xring.clone()); n + 1];
            e[0] = MultiPoly::constant(xring.clone(), Rational::one());
            for xi in &xs {
                for j in (1..=n).rev() {
                    e[j] = &e[j] + &(&e[j - 1] * xi);
                }
            }
            for r in 1..=10usize {
                let direct: MultiPoly = xs
                    .iter()
                    .map(|x| x.pow(r as u32))
                    .fold(MultiPoly::zero(xring.clone()), |a, b| &a + &b);
                let converted = power_sum_in_elementary(r, n).compose(&e[1..=n].to_vec());
                assert_eq!(direct, converted, "p_{r} mismatch at n={n}");
            }
        }
    }

    #[test]
    fn power_sum_system_n3_is_paper_form() {
        let sys = build_power_sum_system(3).unwrap();
        let ring = sys.polys[0].vars().clone();
        // g_1 = x1 + x2 + x3 - m
        let g1 = MultiPoly::from_terms(
            ring.clone(),
            vec![
                (vec![1, 0, 0, 0], rat_int(1)),
                (vec![0, 1, 0, 0], rat_int(1)),
                (vec![0, 0, 1, 0], rat_int(1)),
                (vec![0, 0, 0, 1], rat_int(-1)),
            ],
        );
        assert_eq!(sys.polys[0], g1);
        // g_2 = sum (5x - 20x^3 + 16x^5)
        let mut g2_terms = Vec::new();
        for i in 0..3 {
            for (e, c) in [(1u16, 5i64), (3, -20), (5, 16)] {
                let mut exps = vec![0u16; 4];
                exps[i] = e;
                g2_terms.push((exps, rat_int(c)));
            }
        }
        assert_eq!(sys.polys[1], MultiPoly::from_terms(ring.clone(), g2_terms));
        // g_3 = sum (-7x + 56x^3 - 112x^5 + 64x^7)
        let mut g3_terms = Vec::new();
        for i in 0..3 {
            for (e, c) in [(1u16, -7i64), (3, 56), (5, -112), (7, 64)] {
                let mut exps = vec![0u16; 4];
                exps[i] = e;
                g3_terms.push((exps, rat_int(c)));
            }
        }
        assert_eq!(sys.polys[2], MultiPoly::from_terms(ring, g3_terms));
    }

    #[test]
    fn power_sum_system_is_symmetric() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(11);
        for n in [2usize, 3, 4, 5] {
            let sys = build_power_sum_system(n).unwrap();
            for _ in 0..50 {
                // random permutation of the x variables, m fixed
                let mut perm: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    let j = rng.random_range(0..=i);
                    perm.swap(i, j);
                }
                perm.push(n); // m stays
                for g in &sys.polys {
                    assert_eq!(g, &g.permute_vars(&perm));
                }
            }
        }
    }

    #[test]
    fn elementary_system_n3_matches_worked_example() {
        let sys = build_elementary_system(3).unwrap();
        // Reduced ring: s3 > s2 > m; exponents (e_s3, e_s2, e_m).
        let ring = sys.reduced[0].vars().clone();
        let f2 = MultiPoly::from_terms(
            ring.clone(),
            vec![
                (vec![0, 0, 5], rat_int(16)),
                (vec![0, 1, 3], rat_int(-80)),
                (vec![0, 0, 3], rat_int(-20)),
                (vec![1, 0, 2], rat_int(80)),
                (vec![0, 2, 1], rat_int(80)),
                (vec![0, 1, 1], rat_int(60)),
                (vec![1, 1, 0], rat_int(-80)),
                (vec![0, 0, 1], rat_int(5)),
                (vec![1, 0, 0], rat_int(-60)),
            ],
        );
        assert_eq!(sys.reduced[0], f2);
        let f3 = MultiPoly::from_terms(
            ring,
            vec![
                (vec![0, 0, 7], rat_int(64)),
                (vec![0, 1, 5], rat_int(-448)),
                (vec![0, 0, 5], rat_int(-112)),
                (vec![1, 0, 4], rat_int(448)),
                (vec![0, 2, 3], rat_int(896)),
                (vec![0, 1, 3], rat_int(560)),
                (vec![1, 1, 2], rat_int(-1344)),
                (vec![0, 3, 1], rat_int(-448)),
                (vec![0, 0, 3], rat_int(56)),
                (vec![1, 0, 2], rat_int(-560)),
                (vec![0, 2, 1], rat_int(-560)),
                (vec![2, 0, 1], rat_int(448)),
                (vec![1, 2, 0], rat_int(448)),
                (vec![0, 1, 1], rat_int(-168)),
                (vec![1, 1, 0], rat_int(560)),
                (vec![0, 0, 1], rat_int(-7)),
                (vec![1, 0, 0], rat_int(168)),
            ],
        );
        assert_eq!(sys.reduced[1], f3);
    }

    #[test]
    fn elementary_matches_power_sum_on_points() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(7);
        for n in 2..=7usize {
            let gsys = build_power_sum_system(n).unwrap();
            let fsys = build_elementary_system(n).unwrap();
            for _ in 0..5 {
                let x: Vec<Rational> = (0..n)
                    .map(|_| rat(rng.random_range(-9..=9), rng.random_range(1..=9)))
                    .collect();
                let m = x.iter().fold(Rational::zero(), |a, b| a + b);
                let e = elementary_symmetric_values(&x);
                // g point: (x_1..x_n, m); f point: (s_n..s_1, m)
                let mut gp = x.clone();
                gp.push(m.clone());
                let mut fp: Vec<Rational> = e.iter().rev().cloned().collect();
                fp.push(m.clone());
                for (g, f) in gsys.polys.iter().zip(fsys.polys.iter()) {
                    assert_eq!(g.eval(&gp), f.eval(&fp), "n={n}");
                }
                // reduced system agrees too (s_1 replaced by m = e_1)
                let mut rp: Vec<Rational> = e[1..].iter().rev().cloned().collect();
                rp.push(m);
                for (g, f) in gsys.polys.iter().skip(1).zip(fsys.reduced.iter()) {
                    assert_eq!(g.eval(&gp), f.eval(&rp), "reduced n={n}");
                }
            }
        }
    }

    #[test]
    fn sign_filter_worked_values() {
        // Accepted triple from the worked example.
        assert!(sign_pattern_ok(&[
            rat(1, 2),
            parse("-0.2416109013"),
            parse("-0.09661712410"),
        ]));
        // The rejected triple: s_3 > 0.
        assert!(!sign_pattern_ok(&[
            rat(1, 2),
            parse("-0.4738830663"),
            parse("0.002366801877"),
        ]));
        assert!(!sign_pattern_ok(&[rat_int(1), rat_int(1), rat_int(1)]));
        // Zero anywhere fails.
        assert!(!sign_pattern_ok(&[rat_int(1), rat_int(0)]));
        // Longer pattern: + - - + + - - +
        assert!(sign_pattern_ok(&[
            rat_int(1),
            rat_int(-1),
            rat_int(-1),
            rat_int(1),
            rat_int(1),
            rat_int(-1),
            rat_int(-1),
            rat_int(1),
        ]));
    }

    #[test]
    fn theorem_1_sign_property() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(42);
        for trial in 0..1000 {
            let n = 2 + (trial % 9); // n in 2..=10
            // strictly decreasing magnitudes, alternating signs
            let mut mags: Vec<Rational> = (0..n)
                .map(|_| rat(rng.random_range(1..=10_000), 10_000))
                .collect();
            mags.sort();
            mags.reverse();
            mags.dedup();
            let x: Vec<Rational> = mags
                .iter()
                .enumerate()
                .map(|(i, v)| if i % 2 == 0 { v.clone() } else { -v.clone() })
                .collect();
            let e = elementary_symmetric_values(&x);
            assert!(sign_pattern_ok(&e), "failed for {x:?}");
        }
    }

    fn parse(s: &str) -> Rational {
        crate::rational::parse_rational(s).unwrap()
    }
}
