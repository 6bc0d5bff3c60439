//! Rational univariate representations of zero-dimensional systems at a
//! fixed modulation index.
//!
//! The chain is classical: a reduced Groebner basis (Buchberger, degrevlex)
//! gives the quotient ring and its monomial staircase basis; multiplication
//! matrices turn ring elements into linear algebra; a separating linear form
//! `t` is certified by comparing the square-free degree of its
//! characteristic polynomial against the rank of the trace quadratic form;
//! and the coordinate polynomials come out of the power-trace formulas, so
//! every zero of the system is `s_i = g(s_i, T0) / g(1, T0)` at a root `T0`
//! of the square-free part of `chi`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::multipoly::{Monomial, MultiPoly};
use crate::rational::{rat_int, Rational};
use crate::unipoly::{UniPoly, Var};

/// A zero-dimensional quotient ring `Q[vars] / I` presented by a reduced
/// Groebner basis and its monomial staircase.
#[derive(Debug, Clone)]
pub struct QuotientRing {
    groebner: Vec<MultiPoly>,
    monomial_basis: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
    vars: Arc<[String]>,
}

impl QuotientRing {
    pub fn groebner_basis(&self) -> &[MultiPoly] {
        &self.groebner
    }

    pub fn monomial_basis(&self) -> &[Monomial] {
        &self.monomial_basis
    }

    pub fn dimension(&self) -> usize {
        self.monomial_basis.len()
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    /// Fully reduced normal form modulo the Groebner basis.
    pub fn normal_form(&self, p: &MultiPoly) -> MultiPoly {
        let mut rest = p.clone();
        let mut out = MultiPoly::zero(self.vars.clone());
        'outer: while let Some((lm, lc)) = rest.leading().map(|(m, c)| (m.clone(), c.clone())) {
            for g in &self.groebner {
                let (glm, glc) = g.leading().expect("basis elements are nonzero");
                if glm.divides(&lm) {
                    let shift = glm.div_into(&lm);
                    let factor = &lc / glc;
                    rest.sub_shifted(g, &shift, &factor);
                    continue 'outer;
                }
            }
            // irreducible leading term: move it to the output
            out.add_term(lm.clone(), lc.clone());
            rest.add_term(lm, -lc);
        }
        out
    }

    /// Coordinates of the normal form of `p` in the monomial basis.
    pub fn coords(&self, p: &MultiPoly) -> Vec<Rational> {
        let nf = self.normal_form(p);
        let mut v = vec![Rational::zero(); self.dimension()];
        for (mono, c) in nf.terms() {
            let idx = *self
                .index
                .get(mono)
                .expect("normal form lies under the staircase");
            v[idx] = c.clone();
        }
        v
    }
}

/// Computes the reduced Groebner basis (degrevlex) and the quotient
/// staircase. Errors if the ideal is trivial (`1` in the ideal, no
/// solutions) or not zero-dimensional.
pub fn groebner(system: &[MultiPoly]) -> Result<QuotientRing> {
    let vars = system
        .first()
        .map(|p| p.vars().clone())
        .expect("empty system");
    assert!(
        system.iter().all(|p| p.vars() == &vars),
        "system polynomials must share one ring"
    );

    let mut basis: Vec<MultiPoly> = system
        .iter()
        .filter(|p| !p.is_zero())
        .map(MultiPoly::primitive)
        .collect();
    if basis.is_empty() {
        return Err(Error::NotZeroDimensional { var: vars.first().cloned().unwrap_or_default() });
    }

    // Pending S-pairs, keyed for the normal selection strategy.
    let mut pending: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pending.push((i, j));
        }
    }

    let lm = |b: &[MultiPoly], i: usize| b[i].leading().unwrap().0.clone();

    while !pending.is_empty() {
        // normal strategy: minimal lcm in the monomial order
        let (pos, _) = pending
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let la = lm(&basis, a.0).lcm(&lm(&basis, a.1));
                let lb = lm(&basis, b.0).lcm(&lm(&basis, b.1));
                la.cmp(&lb).then(a.cmp(b))
            })
            .map(|(p, v)| (p, *v))
            .unwrap();
        let (i, j) = pending.swap_remove(pos);

        let lmi = lm(&basis, i);
        let lmj = lm(&basis, j);
        if lmi.coprime(&lmj) {
            continue; // product criterion
        }
        let l = lmi.lcm(&lmj);
        // chain criterion: some k whose leading monomial divides the lcm and
        // whose pairs with i and j are both already treated
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lm(&basis, k).divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chained {
            continue;
        }

        let spoly = s_polynomial(&basis[i], &basis[j]);
        let reduced = reduce_full(&spoly, &basis);
        if reduced.is_zero() {
            continue;
        }
        let reduced = reduced.primitive();
        if reduced.total_degree() == Some(0) {
            return Err(Error::NoSolutions);
        }
        let new_idx = basis.len();
        basis.push(reduced);
        for k in 0..new_idx {
            pending.push((k, new_idx));
        }
    }

    // Minimal basis: drop elements whose leading monomial is divisible by
    // another's, then tail-reduce and normalize monic.
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i != j && keep[j] && lm(&basis, j).divides(&lm(&basis, i)) {
                // prefer the lower index on equal leading monomials
                if lm(&basis, j) == lm(&basis, i) && j > i {
                    continue;
                }
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<MultiPoly> = basis
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(p, _)| p.clone())
        .collect();
    let mut reduced_basis = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<MultiPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let r = reduce_full(&minimal[i], &others);
        debug_assert!(!r.is_zero());
        reduced_basis.push(r.monic());
    }
    reduced_basis.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));

    if reduced_basis
        .iter()
        .any(|g| g.total_degree() == Some(0))
    {
        return Err(Error::NoSolutions);
    }

    // Zero-dimensionality: every variable needs a pure-power leading monomial.
    let arity = vars.len();
    let mut bounds = vec![None::<u16>; arity];
    for g in &reduced_basis {
        let (m, _) = g.leading().unwrap();
        let nonzero: Vec<usize> = (0..arity).filter(|&k| m.0[k] > 0).collect();
        if nonzero.len() == 1 {
            let k = nonzero[0];
            let e = m.0[k];
            if bounds[k].map_or(true, |b| e < b) {
                bounds[k] = Some(e);
            }
        }
    }
    for (k, b) in bounds.iter().enumerate() {
        if b.is_none() {
            return Err(Error::NotZeroDimensional { var: vars[k].clone() });
        }
    }
    let bounds: Vec<u16> = bounds.into_iter().map(Option::unwrap).collect();

    // Staircase enumeration.
    let lead_monos: Vec<Monomial> = reduced_basis
        .iter()
        .map(|g| g.leading().unwrap().0.clone())
        .collect();
    let mut monomial_basis = Vec::new();
    let mut exps = vec![0u16; arity];
    enumerate_staircase(&mut exps, 0, &bounds, &lead_monos, &mut monomial_basis);
    monomial_basis.sort();
    let index: BTreeMap<Monomial, usize> = monomial_basis
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();

    Ok(QuotientRing {
        groebner: reduced_basis,
        monomial_basis,
        index,
        vars,
    })
}

fn enumerate_staircase(
    exps: &mut Vec<u16>,
    var: usize,
    bounds: &[u16],
    leads: &[Monomial],
    out: &mut Vec<Monomial>,
) {
    if var == bounds.len() {
        let m = Monomial(exps.clone().into_boxed_slice());
        if !leads.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        return;
    }
    for e in 0..bounds[var] {
        exps[var] = e;
        enumerate_staircase(exps, var + 1, bounds, leads, out);
    }
    exps[var] = 0;
}

fn s_polynomial(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let (lma, lca) = a.leading().unwrap();
    let (lmb, lcb) = b.leading().unwrap();
    let l = lma.lcm(lmb);
    let ta = a.mul_term(&lma.div_into(&l), &lca.recip());
    let tb = b.mul_term(&lmb.div_into(&l), &lcb.recip());
    &ta - &tb
}

/// Full multivariate division remainder of `p` by `set`.
fn reduce_full(p: &MultiPoly, set: &[MultiPoly]) -> MultiPoly {
    let mut rest = p.clone();
    let mut out = MultiPoly::zero(p.vars().clone());
    'outer: while let Some((lm, lc)) = rest.leading().map(|(m, c)| (m.clone(), c.clone())) {
        for g in set {
            if g.is_zero() {
                continue;
            }
            let (glm, glc) = g.leading().unwrap();
            if glm.divides(&lm) {
                let shift = glm.div_into(&lm);
                let factor = &lc / glc;
                rest.sub_shifted(g, &shift, &factor);
                continue 'outer;
            }
        }
        out.add_term(lm.clone(), lc.clone());
        rest.add_term(lm, -lc);
    }
    out
}

/// Matrix of multiplication by `f` on the quotient, in the staircase basis.
pub fn mult_matrix(q: &QuotientRing, f: &MultiPoly) -> QMatrix {
    let d = q.dimension();
    let mut m = QMatrix::zeros(d, d);
    for (j, b) in q.monomial_basis().iter().enumerate() {
        let col = q.coords(&f.mul_term(b, &Rational::one()));
        for (i, c) in col.into_iter().enumerate() {
            if !c.is_zero() {
                m[(i, j)] = c;
            }
        }
    }
    m
}

/// Integer linear form `t = sum c_i v_i` over the ring variables, listed in
/// ascending variable-name order (`s_2, s_3, ...` for the SHE rings).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatingElement {
    pub coeffs: Vec<i64>,
}

impl SeparatingElement {
    pub fn unit(len: usize, idx: usize) -> Self {
        let mut coeffs = vec![0; len];
        coeffs[idx] = 1;
        SeparatingElement { coeffs }
    }
}

/// The RUR of a system at one fixed modulation index: zeros of the system
/// are `(g_coord[i](T0) / g_one(T0))_i` over the roots `T0` of `chi_bar`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RurFixed {
    pub t: SeparatingElement,
    /// Characteristic polynomial of multiplication by `t`; monic, degree =
    /// quotient dimension.
    pub chi: UniPoly,
    /// Square-free part of `chi`; its roots enumerate the distinct `t`-values.
    pub chi_bar: UniPoly,
    pub g_one: UniPoly,
    /// One coordinate polynomial per ring variable, ascending name order.
    pub g_coord: Vec<UniPoly>,
    /// Ring variable names matching `g_coord` (and `t.coeffs`).
    pub coord_vars: Vec<String>,
    pub m_value: Rational,
}

impl RurFixed {
    /// Number of distinct zeros of the system (over the complex numbers).
    pub fn distinct_zero_count(&self) -> usize {
        self.chi_bar.degree_or_zero()
    }
}

/// Shared machinery for separating-element search and RUR assembly over one
/// quotient ring.
pub struct RurTools<'a> {
    q: &'a QuotientRing,
    /// Ring variable indices sorted by ascending name.
    name_order: Vec<usize>,
    /// Multiplication matrices of the ring variables, in `name_order`.
    var_mats: Vec<QMatrix>,
    /// Rank of the trace quadratic form = number of distinct zeros.
    pub distinct_zeros: usize,
}

impl<'a> RurTools<'a> {
    pub fn new(q: &'a QuotientRing) -> Self {
        let arity = q.vars().len();
        let mut name_order: Vec<usize> = (0..arity).collect();
        name_order.sort_by(|&a, &b| q.vars()[a].cmp(&q.vars()[b]));
        let var_mats: Vec<QMatrix> = name_order
            .iter()
            .map(|&i| mult_matrix(q, &MultiPoly::variable(q.vars().clone(), i)))
            .collect();

        // Multiplication matrices of every basis monomial, by staircase
        // factorization b = v * b' (the staircase is closed under division).
        let d = q.dimension();
        let mut basis_mats: Vec<QMatrix> = Vec::with_capacity(d);
        for (k, mono) in q.monomial_basis().iter().enumerate() {
            if mono.is_unit() {
                basis_mats.push(QMatrix::identity(d));
                continue;
            }
            let ring_var = (0..arity).find(|&v| mono.0[v] > 0).unwrap();
            let mut smaller = mono.0.to_vec();
            smaller[ring_var] -= 1;
            let smaller = Monomial(smaller.into_boxed_slice());
            let smaller_idx = q
                .monomial_basis()
                .iter()
                .position(|m| *m == smaller)
                .expect("staircase closed under division");
            debug_assert!(smaller_idx < k || q.monomial_basis()[smaller_idx] < *mono);
            let name_pos = name_order.iter().position(|&i| i == ring_var).unwrap();
            basis_mats.push(var_mats[name_pos].mul(&basis_mats[smaller_idx]));
        }

        // Trace form H[i][j] = Tr(M_{b_i b_j}); its rank counts distinct zeros.
        let trace_vec: Vec<Rational> = basis_mats.iter().map(QMatrix::trace).collect();
        let mut h = QMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = Rational::zero();
                for k in 0..d {
                    let e = &basis_mats[i][(k, j)];
                    if !e.is_zero() {
                        acc = acc + &trace_vec[k] * e;
                    }
                }
                h[(i, j)] = acc;
            }
        }
        let distinct_zeros = h.rank();

        RurTools { q, name_order, var_mats, distinct_zeros }
    }

    pub fn coord_var_names(&self) -> Vec<String> {
        self.name_order
            .iter()
            .map(|&i| self.q.vars()[i].clone())
            .collect()
    }

    fn t_matrix(&self, t: &SeparatingElement) -> QMatrix {
        assert_eq!(t.coeffs.len(), self.var_mats.len());
        let d = self.q.dimension();
        let mut m = QMatrix::zeros(d, d);
        for (c, a) in t.coeffs.iter().zip(&self.var_mats) {
            if *c != 0 {
                m = m.scale_add(&rat_int(*c), a);
            }
        }
        m
    }

    /// Characteristic polynomial of `t` together with its square-free part,
    /// or `None` when `t` fails the separation criterion (square-free degree
    /// must equal the number of distinct zeros).
    pub fn try_separating(&self, t: &SeparatingElement) -> Option<(QMatrix, UniPoly, UniPoly)> {
        let mt = self.t_matrix(t);
        let chi = mt.charpoly();
        let chi_bar = chi.squarefree_part().expect("chi is monic, nonzero");
        if chi_bar.degree_or_zero() == self.distinct_zeros {
            Some((mt, chi, chi_bar))
        } else {
            None
        }
    }

    /// Searches `t = s_2` (first variable in name order) first, then integer
    /// combinations with coefficients bounded by a doubling budget.
    pub fn find_separating(&self) -> Result<SeparatingElement> {
        self.find_separating_banned(&[])
    }

    /// Same search, skipping candidates that failed at other specializations.
    pub fn find_separating_banned(&self, banned: &[SeparatingElement]) -> Result<SeparatingElement> {
        let k = self.var_mats.len();
        for idx in 0..k {
            let t = SeparatingElement::unit(k, idx);
            if !banned.contains(&t) && self.try_separating(&t).is_some() {
                return Ok(t);
            }
        }
        let mut bound = 1i64;
        let mut tried = 0usize;
        while bound <= 64 {
            let mut coeffs = vec![-bound; k];
            loop {
                let c = SeparatingElement { coeffs: coeffs.clone() };
                if admissible_combo(&coeffs, bound) && !banned.contains(&c) {
                    tried += 1;
                    if tried > 200_000 {
                        return Err(Error::SeparatingExhausted(format!(
                            "tried {tried} candidates up to coefficient bound {bound}"
                        )));
                    }
                    if self.try_separating(&c).is_some() {
                        return Ok(c);
                    }
                }
                // odometer increment
                let mut pos = k;
                for i in (0..k).rev() {
                    if coeffs[i] < bound {
                        coeffs[i] += 1;
                        for cj in coeffs.iter_mut().skip(i + 1) {
                            *cj = -bound;
                        }
                        pos = i;
                        break;
                    }
                }
                if pos == k {
                    break;
                }
            }
            bound *= 2;
        }
        Err(Error::SeparatingExhausted(format!(
            "no separating integer combination with coefficients up to 64 ({} distinct zeros)",
            self.distinct_zeros
        )))
    }

    /// Assembles the RUR for a verified separating element.
    pub fn build(&self, t: &SeparatingElement, m_value: Rational) -> Result<RurFixed> {
        let Some((mt, chi, chi_bar)) = self.try_separating(t) else {
            return Err(Error::SeparatingExhausted(format!(
                "element {:?} does not separate the zeros",
                t.coeffs
            )));
        };
        let d_bar = chi_bar.degree_or_zero();
        let dim = self.q.dimension();

        // Horner sections of chi_bar: H_0 = 1, H_l = T H_{l-1} + b_{d-l}.
        let mut sections = Vec::with_capacity(d_bar);
        let mut h = UniPoly::one(Var::T);
        sections.push(h.clone());
        let t_mono = UniPoly::from_ints(Var::T, &[0, 1]);
        for l in 1..d_bar {
            h = &(&t_mono * &h) + &UniPoly::constant(Var::T, chi_bar.coeff(d_bar - l));
            sections.push(h.clone());
        }

        // Power traces a_{v,i} = Tr(M_v M_t^i) for i < d_bar.
        let mut powers = Vec::with_capacity(d_bar);
        powers.push(QMatrix::identity(dim));
        for i in 1..d_bar {
            let next = mt.mul(&powers[i - 1]);
            powers.push(next);
        }
        let g_for = |mv: Option<&QMatrix>| -> UniPoly {
            let mut g = UniPoly::zero(Var::T);
            for (i, p) in powers.iter().enumerate() {
                let a = match mv {
                    None => p.trace(),
                    Some(m) => trace_of_product(m, p),
                };
                if !a.is_zero() {
                    g = &g + &sections[d_bar - 1 - i].scale(&a);
                }
            }
            g
        };

        let g_one = g_for(None);
        let g_coord: Vec<UniPoly> = self.var_mats.iter().map(|m| g_for(Some(m))).collect();

        // The coordinate denominator must not vanish at any root of chi_bar.
        if !g_one.gcd(&chi_bar).is_one() {
            return Err(Error::DenominatorVanished);
        }

        Ok(RurFixed {
            t: t.clone(),
            chi,
            chi_bar,
            g_one,
            g_coord,
            coord_vars: self.coord_var_names(),
            m_value,
        })
    }
}

fn admissible_combo(coeffs: &[i64], bound: i64) -> bool {
    // canonical representatives only: max magnitude hits the bound, first
    // nonzero positive, content 1, and not a unit vector (already tried)
    if coeffs.iter().all(|&c| c.abs() < bound) {
        return false;
    }
    let first_nonzero = coeffs.iter().find(|&&c| c != 0);
    match first_nonzero {
        None => return false,
        Some(&c) if c < 0 => return false,
        _ => {}
    }
    if coeffs.iter().filter(|&&c| c != 0).count() == 1
        && coeffs.iter().any(|&c| c == 1)
    {
        return false; // unit vector
    }
    let mut g: i64 = 0;
    for &c in coeffs {
        g = num_integer::gcd(g, c.abs());
    }
    g == 1
}

fn trace_of_product(a: &QMatrix, b: &QMatrix) -> Rational {
    debug_assert_eq!(a.rows(), b.cols());
    debug_assert_eq!(a.cols(), b.rows());
    let mut acc = Rational::zero();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let x = &a[(i, j)];
            if !x.is_zero() {
                let y = &b[(j, i)];
                if !y.is_zero() {
                    acc = acc + x * y;
                }
            }
        }
    }
    acc
}

/// Finds a verified separating element for the quotient.
pub fn find_separating(q: &QuotientRing) -> Result<SeparatingElement> {
    RurTools::new(q).find_separating()
}

/// Full RUR of the reduced elementary system specialized at `m_value`.
///
/// `reduced` is the system over `s_n > ... > s_2 > m`; `m` is substituted
/// first, then the Groebner/RUR chain runs over the `s` variables alone.
pub fn rur_fixed(reduced: &[MultiPoly], m_value: &Rational) -> Result<RurFixed> {
    let m_idx = reduced
        .first()
        .map(|p| p.arity() - 1)
        .expect("empty system");
    let specialized: Vec<MultiPoly> = reduced
        .iter()
        .map(|f| f.substitute_and_drop(m_idx, m_value))
        .collect();
    let q = groebner(&specialized)?;
    let tools = RurTools::new(&q);
    let t = tools.find_separating()?;
    tools.build(&t, m_value.clone())
}

/// RUR at `m_value` using a caller-pinned separating element; errors if the
/// element fails to separate at this specialization.
pub fn rur_fixed_with_t(
    reduced: &[MultiPoly],
    m_value: &Rational,
    t: &SeparatingElement,
) -> Result<RurFixed> {
    let m_idx = reduced.first().map(|p| p.arity() - 1).expect("empty system");
    let specialized: Vec<MultiPoly> = reduced
        .iter()
        .map(|f| f.substitute_and_drop(m_idx, m_value))
        .collect();
    let q = groebner(&specialized)?;
    let tools = RurTools::new(&q);
    tools.build(t, m_value.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_elementary_system, build_power_sum_system};
    use crate::rational::rat;

    fn ring(names: &[&str]) -> Arc<[String]> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn single_linear_equation() {
        let vars = ring(&["x"]);
        let x = MultiPoly::variable(vars.clone(), 0);
        let sys = vec![&x - &MultiPoly::constant(vars.clone(), rat_int(2))];
        let q = groebner(&sys).unwrap();
        assert_eq!(q.dimension(), 1);
        assert!(q.monomial_basis()[0].is_unit());
        let m = mult_matrix(&q, &x);
        assert_eq!(m[(0, 0)], rat_int(2));
    }

    #[test]
    fn worked_example_dimensions() {
        // Reduced elementary system at m = 1/2 has 3 zeros.
        let sys = build_elementary_system(3).unwrap();
        let at_half = crate::model::specialize_reduced(&sys, &rat(1, 2));
        let q = groebner(&at_half).unwrap();
        assert_eq!(q.dimension(), 3);

        // The x-coordinate system at m = 1/2 has 18 zeros.
        let gsys = build_power_sum_system(3).unwrap();
        let m_idx = 3;
        let at_half: Vec<MultiPoly> = gsys
            .polys
            .iter()
            .map(|g| g.substitute_and_drop(m_idx, &rat(1, 2)))
            .collect();
        let q = groebner(&at_half).unwrap();
        assert_eq!(q.dimension(), 18);
    }

    #[test]
    fn detects_positive_dimension_and_inconsistency() {
        let vars = ring(&["x", "y"]);
        let x = MultiPoly::variable(vars.clone(), 0);
        let y = MultiPoly::variable(vars.clone(), 1);
        let err = groebner(&[&x * &y]).unwrap_err();
        assert!(matches!(err, Error::NotZeroDimensional { .. }));

        let one = MultiPoly::constant(vars.clone(), rat_int(1));
        let err = groebner(&[x.clone(), &x - &one]).unwrap_err();
        assert!(matches!(err, Error::NoSolutions));
    }

    #[test]
    fn mult_matrix_is_multiplicative() {
        let sys = build_elementary_system(3).unwrap();
        let at_half = crate::model::specialize_reduced(&sys, &rat(1, 2));
        let q = groebner(&at_half).unwrap();
        let vars = at_half[0].vars().clone();
        let s3 = MultiPoly::variable(vars.clone(), 0);
        let s2 = MultiPoly::variable(vars.clone(), 1);
        let f1 = &s2 + &s3.scale(&rat_int(2));
        let f2 = &(&s2 * &s3) - &MultiPoly::constant(vars.clone(), rat(1, 3));
        let lhs = mult_matrix(&q, &f1).mul(&mult_matrix(&q, &f2));
        let rhs = mult_matrix(&q, &(&f1 * &f2));
        assert_eq!(lhs, rhs);
        // trace of multiplication by 1 = dimension
        let one = MultiPoly::constant(vars, rat_int(1));
        assert_eq!(mult_matrix(&q, &one).trace(), rat_int(3));
    }

    #[test]
    fn separating_search_rejects_collapsing_projection() {
        // zeros (0,1) and (0,2): x collapses them, y separates.
        let vars = ring(&["x", "y"]);
        let x = MultiPoly::variable(vars.clone(), 0);
        let y = MultiPoly::variable(vars.clone(), 1);
        let yy = &(&y * &y) - &y.scale(&rat_int(3));
        let sys = vec![x, &yy + &MultiPoly::constant(vars.clone(), rat_int(2))];
        let q = groebner(&sys).unwrap();
        assert_eq!(q.dimension(), 2);
        let tools = RurTools::new(&q);
        assert_eq!(tools.distinct_zeros, 2);
        // name order is [x, y]; t = x must fail, t = y must pass
        assert!(tools.try_separating(&SeparatingElement::unit(2, 0)).is_none());
        let t = tools.find_separating().unwrap();
        assert_eq!(t, SeparatingElement::unit(2, 1));
    }

    #[test]
    fn separating_trivial_systems() {
        let vars = ring(&["x", "y"]);
        let x = MultiPoly::variable(vars.clone(), 0);
        let y = MultiPoly::variable(vars.clone(), 1);
        let sys = vec![
            &x - &MultiPoly::constant(vars.clone(), rat_int(2)),
            &y - &MultiPoly::constant(vars.clone(), rat_int(3)),
        ];
        let q = groebner(&sys).unwrap();
        let t = find_separating(&q).unwrap();
        assert_eq!(t, SeparatingElement::unit(2, 0));
    }

    #[test]
    fn rur_single_variable() {
        let vars = ring(&["s2"]);
        let s2 = MultiPoly::variable(vars.clone(), 0);
        let sys = vec![&s2 - &MultiPoly::constant(vars.clone(), rat_int(4))];
        let q = groebner(&sys).unwrap();
        let tools = RurTools::new(&q);
        let t = tools.find_separating().unwrap();
        let rur = tools.build(&t, Rational::zero()).unwrap();
        assert_eq!(rur.chi, UniPoly::from_ints(Var::T, &[-4, 1]));
        // recovery: s2 = g_coord(4) / g_one(4) = 4
        let t0 = rat_int(4);
        let s2_val = rur.g_coord[0].eval(&t0) / rur.g_one.eval(&t0);
        assert_eq!(s2_val, rat_int(4));
    }

    #[test]
    fn worked_example_rur_at_half() {
        let sys = build_elementary_system(3).unwrap();
        let rur = rur_fixed(&sys.reduced, &rat(1, 2)).unwrap();
        assert_eq!(rur.t, SeparatingElement::unit(2, 0)); // t = s_2
        assert_eq!(rur.coord_vars, vec!["s2".to_string(), "s3".to_string()]);

        // chi = 247/2240 + (45/56) T + (47/28) T^2 + T^3
        let chi = UniPoly::new(
            Var::T,
            vec![rat(247, 2240), rat(45, 56), rat(47, 28), rat_int(1)],
        );
        assert_eq!(rur.chi, chi);
        assert_eq!(rur.chi_bar, chi); // already square-free
        // g(1, T) = 45/56 + (47/14) T + 3 T^2
        assert_eq!(
            rur.g_one,
            UniPoly::new(Var::T, vec![rat(45, 56), rat(47, 14), rat_int(3)])
        );
        // g(s_2, T) = -741/2240 - (45/28) T - (47/28) T^2
        assert_eq!(
            rur.g_coord[0],
            UniPoly::new(Var::T, vec![rat(-741, 2240), rat(-45, 28), rat(-47, 28)])
        );
        // g(s_3, T) = -449/4480 - (549/1120) T - (33/56) T^2
        assert_eq!(
            rur.g_coord[1],
            UniPoly::new(Var::T, vec![rat(-449, 4480), rat(-549, 1120), rat(-33, 56)])
        );
        // radical case: g(1, T) = chi_bar'
        assert_eq!(rur.g_one, rur.chi_bar.derivative());
    }

    #[test]
    fn rur_zero_fidelity_random_m() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let sys = build_elementary_system(3).unwrap();
        let mut rng = StdRng::seed_from_u64(3);
        let eps = crate::rational::pow10(-10);
        for _ in 0..10 {
            let m0 = rat(rng.random_range(1..=999), 1000);
            let rur = rur_fixed(&sys.reduced, &m0).unwrap();
            let specialized = crate::model::specialize_reduced(&sys, &m0);
            for iv in crate::roots::isolate_real_roots(&rur.chi_bar).unwrap() {
                let t0 = crate::roots::refine_root(&rur.chi_bar, &iv, &eps).unwrap();
                let denom = rur.g_one.eval(&t0);
                assert!(!denom.is_zero());
                let point: Vec<Rational> = rur
                    .g_coord
                    .iter()
                    .map(|g| g.eval(&t0) / denom.clone())
                    .collect();
                // ring order is s3 > s2; coord order is s2, s3
                let ring_point = vec![point[1].clone(), point[0].clone()];
                for f in &specialized {
                    let v = crate::rational::to_f64(&f.eval(&ring_point));
                    assert!(v.abs() < 1e-8, "residual {v} at m={m0}");
                }
            }
        }
    }

    #[test]
    fn count_fidelity_vs_elimination_oracle() {
        // Independent count: f_2 is linear in s_3, substitute into f_3 and
        // count distinct roots of the resulting univariate in s_2.
        let sys = build_elementary_system(3).unwrap();
        for m0 in [rat(1, 2), rat(1, 4), rat(3, 4), rat(7, 10)] {
            let specialized = crate::model::specialize_reduced(&sys, &m0);
            let rur = rur_fixed(&sys.reduced, &m0).unwrap();

            // write f2 = a(s2) + b(s2) * s3 (ring s3 > s2)
            let to_uni = |p: &MultiPoly, s3_pow: u16| -> UniPoly {
                let mut coeffs = vec![Rational::zero(); 8];
                for (mono, c) in p.terms() {
                    if mono.0[0] == s3_pow {
                        coeffs[mono.0[1] as usize] = c.clone();
                    }
                }
                UniPoly::new(Var::X, coeffs)
            };
            let a = to_uni(&specialized[0], 0);
            let b = to_uni(&specialized[0], 1);
            let c0 = to_uni(&specialized[1], 0);
            let c1 = to_uni(&specialized[1], 1);
            let c2 = to_uni(&specialized[1], 2);
            // s3 = -a/b; clear denominators in f3: c2 a^2 - c1 a b + c0 b^2
            let h = &(&(&c2 * &a) * &a) - &(&(&c1 * &a) * &b);
            let h = &h + &(&(&c0 * &b) * &b);
            let h_bar = h.squarefree_part().unwrap();
            // no zeros of b meet the curve for these m (checked by gcd)
            assert!(h_bar.gcd(&b).is_one());
            assert_eq!(h_bar.degree_or_zero(), rur.distinct_zero_count());
        }
    }
}
