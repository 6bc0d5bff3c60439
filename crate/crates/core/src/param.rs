//! The nearly parametric representation: RUR coefficients as exact rational
//! functions of the modulation index.
//!
//! Rather than eliminating over the rational-function field (which blows up
//! in both time and coefficient size), the representation is sampled: the
//! fixed-index RUR runs at many exact rational nodes, and each coefficient
//! slot is recovered by Cauchy rational interpolation with held-out
//! validation. All arithmetic stays over the rationals.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{build_elementary_system, ElementarySystem};
use crate::ratfunc::RationalFunction;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::roots::rational_roots_in;
use crate::rur::{rur_fixed_with_t, RurFixed, RurTools, SeparatingElement};
use crate::unipoly::{UniPoly, Var};

/// A nearly parametric solution: the RUR of the reduced system with every
/// coefficient a reduced rational function of `m`, valid away from `bad_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParametricRur {
    pub n: usize,
    pub t: SeparatingElement,
    /// Coefficient of `T^j` in the monic `chi`, `j = 0 .. d-1`.
    pub chi_coeffs: Vec<RationalFunction>,
    /// Coefficients of `g(1, T)`, degree `d_bar - 1`.
    pub g_one_coeffs: Vec<RationalFunction>,
    /// Per coordinate variable (ascending name order: `s2, s3, ...`).
    pub g_coord_coeffs: Vec<Vec<RationalFunction>>,
    /// Coordinate variable names aligned with `g_coord_coeffs` and `t`.
    pub coord_vars: Vec<String>,
    /// Rational values of `m` in (0,1) where a coefficient denominator
    /// vanishes or where per-sample computation failed.
    pub bad_m: BTreeSet<Rational>,
}

impl ParametricRur {
    /// Degree of `chi` (the generic quotient dimension).
    pub fn degree(&self) -> usize {
        self.chi_coeffs.len()
    }

    /// Evaluates every coefficient at `m0` and assembles the fixed-index RUR.
    /// Fails with a pole error if any denominator vanishes there.
    pub fn assemble(&self, m0: &Rational) -> Result<RurFixed> {
        let eval_poly = |coeffs: &[RationalFunction], monic: bool| -> Result<UniPoly> {
            let mut c: Vec<Rational> = coeffs
                .iter()
                .map(|f| f.eval(m0))
                .collect::<Result<_>>()?;
            if monic {
                c.push(Rational::one());
            }
            Ok(UniPoly::new(Var::T, c))
        };
        let chi = eval_poly(&self.chi_coeffs, true)?;
        let g_one = eval_poly(&self.g_one_coeffs, false)?;
        let g_coord = self
            .g_coord_coeffs
            .iter()
            .map(|c| eval_poly(c, false))
            .collect::<Result<Vec<_>>>()?;
        let chi_bar = chi.squarefree_part()?;
        Ok(RurFixed {
            t: self.t.clone(),
            chi,
            chi_bar,
            g_one,
            g_coord,
            coord_vars: self.coord_vars.clone(),
            m_value: m0.clone(),
        })
    }
}

/// Distinct interpolation nodes in (0,1), small denominators first
/// (1/2, 1/3, 2/3, 1/4, 3/4, 1/5, ...), skipping `exclude`.
pub fn sample_points(count: usize, exclude: &BTreeSet<Rational>) -> Vec<Rational> {
    NodeIter::new(exclude.clone()).take(count).collect()
}

struct NodeIter {
    exclude: BTreeSet<Rational>,
    den: i64,
    num: i64,
}

impl NodeIter {
    fn new(exclude: BTreeSet<Rational>) -> Self {
        NodeIter { exclude, den: 2, num: 0 }
    }
}

impl Iterator for NodeIter {
    type Item = Rational;
    fn next(&mut self) -> Option<Rational> {
        loop {
            self.num += 1;
            if self.num >= self.den {
                self.den += 1;
                self.num = 1;
            }
            if self.num.gcd(&self.den) != 1 {
                continue;
            }
            let r = crate::rational::rat(self.num, self.den);
            if !self.exclude.contains(&r) {
                return Some(r);
            }
        }
    }
}

/// Cauchy rational interpolation: the reduced rational function of numerator
/// and denominator degree at most `max_deg` agreeing with every sample.
///
/// Samples must have distinct nodes. Degrees are found adaptively (cheap
/// constant and polynomial fits first, then the linearized rational system);
/// candidates whose denominator vanishes at a node are rejected. When
/// nothing fits, the caller is told to gather more samples.
pub fn interpolate_coefficient(
    samples: &[(Rational, Rational)],
    max_deg: usize,
) -> Result<RationalFunction> {
    interpolate_slot(samples, max_deg, None)
}

fn interpolate_slot(
    samples: &[(Rational, Rational)],
    max_deg: usize,
    den_hint: Option<&UniPoly>,
) -> Result<RationalFunction> {
    assert!(!samples.is_empty());
    debug_assert!(
        {
            let set: BTreeSet<&Rational> = samples.iter().map(|(m, _)| m).collect();
            set.len() == samples.len()
        },
        "sample nodes must be distinct"
    );
    let s = samples.len();

    // Constant: free.
    if samples.iter().all(|(_, v)| v == &samples[0].1) {
        return Ok(RationalFunction::constant(samples[0].1.clone()));
    }

    // Known-denominator and pure-polynomial fits: one Newton interpolation.
    let mut hints: Vec<UniPoly> = Vec::new();
    if let Some(d) = den_hint {
        if !d.is_one() {
            hints.push(d.clone());
        }
    }
    hints.push(UniPoly::one(Var::M));
    for den in &hints {
        if samples.iter().any(|(m, _)| den.eval(m).is_zero()) {
            continue;
        }
        let scaled: Vec<(Rational, Rational)> = samples
            .iter()
            .map(|(m, v)| (m.clone(), v * &den.eval(m)))
            .collect();
        let num = newton_interpolate(&scaled);
        // Demand one sample of slack so the fit is a real reconstruction,
        // not just the full-degree interpolant through the data.
        if num.degree_or_zero() + 2 <= s && num.degree_or_zero() <= max_deg {
            let cand = RationalFunction::new(num, den.clone());
            if verify_fit(&cand, samples) {
                return Ok(cand);
            }
        }
    }

    // Linearized rational fit on balanced degree bounds, leaving at least
    // one sample out of the linear system as an in-function check against
    // overfitting the nodes.
    if s < 2 {
        return Err(Error::NeedMoreSamples { max_degree: max_deg });
    }
    let total = s - 2;
    let dd = (total / 2).min(max_deg);
    let dn = (total - total / 2).min(max_deg);
    if let Some(cand) = kernel_fit(samples, dn, dd) {
        if verify_fit(&cand, samples)
            && cand.num().degree_or_zero() <= max_deg
            && cand.den().degree_or_zero() <= max_deg
        {
            return Ok(cand);
        }
    }
    Err(Error::NeedMoreSamples { max_degree: max_deg })
}

/// Solves P(m_i) - v_i Q(m_i) = 0 with deg P <= dn, deg Q <= dd over the
/// first dn+dd+1 samples and reduces a kernel vector to a candidate.
fn kernel_fit(samples: &[(Rational, Rational)], dn: usize, dd: usize) -> Option<RationalFunction> {
    let needed = dn + dd + 1;
    if samples.len() < needed {
        return None;
    }
    let rows: Vec<Vec<Rational>> = samples[..needed]
        .iter()
        .map(|(m, v)| {
            let mut row = Vec::with_capacity(dn + dd + 2);
            let mut p = Rational::one();
            for _ in 0..=dn {
                row.push(p.clone());
                p = p * m;
            }
            let mut p = -v.clone();
            for _ in 0..=dd {
                row.push(p.clone());
                p = p * m;
            }
            row
        })
        .collect();
    let kernel = crate::matrix::integer_kernel_vector(&rows)?;
    let num = UniPoly::new(Var::M, kernel[..=dn].to_vec());
    let den = UniPoly::new(Var::M, kernel[dn + 1..].to_vec());
    if den.is_zero() {
        return None;
    }
    Some(RationalFunction::new(num, den))
}

fn verify_fit(cand: &RationalFunction, samples: &[(Rational, Rational)]) -> bool {
    samples.iter().all(|(m, v)| match cand.eval(m) {
        Ok(got) => &got == v,
        Err(_) => false,
    })
}

/// Newton divided-difference interpolation through all samples, expanded to
/// monomial coefficients.
fn newton_interpolate(samples: &[(Rational, Rational)]) -> UniPoly {
    let n = samples.len();
    let mut diffs: Vec<Rational> = samples.iter().map(|(_, v)| v.clone()).collect();
    let xs: Vec<Rational> = samples.iter().map(|(m, _)| m.clone()).collect();
    // diffs[i] becomes the i-th divided difference after the sweep
    for level in 1..n {
        for i in (level..n).rev() {
            let dx = &xs[i] - &xs[i - level];
            diffs[i] = (&diffs[i] - &diffs[i - 1]) / dx;
        }
    }
    // Horner expansion of the Newton form.
    let mut poly = UniPoly::zero(Var::M);
    for i in (0..n).rev() {
        let shift = UniPoly::new(Var::M, vec![-xs[i].clone(), Rational::one()]);
        poly = &(&poly * &shift) + &UniPoly::constant(Var::M, diffs[i].clone());
    }
    poly
}

/// Knobs for [`build_parametric_rur_with`]; the defaults start at 8 nodes
/// and double until the interpolation stabilizes and validates.
#[derive(Debug, Clone)]
pub struct BuildOptions {
    pub initial_nodes: usize,
    pub validation_points: usize,
    pub max_nodes: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { initial_nodes: 8, validation_points: 3, max_nodes: 4096 }
    }
}

/// Builds the nearly parametric solution for `n` switching angles.
pub fn build_parametric_rur(n: usize) -> Result<ParametricRur> {
    build_parametric_rur_with(n, &BuildOptions::default())
}

pub fn build_parametric_rur_with(n: usize, opts: &BuildOptions) -> Result<ParametricRur> {
    let sys = build_elementary_system(n)?;
    let mut banned: Vec<SeparatingElement> = Vec::new();
    'restart: loop {
        let t = pick_separating(&sys, &banned)?;
        log::info!("n={n}: separating element candidate t = {:?}", t.coeffs);
        match sample_and_interpolate(n, &sys, &t, opts) {
            Ok(p) => return Ok(p),
            Err(Error::SeparatingExhausted(reason)) => {
                log::warn!("restarting with a new separating element: {reason}");
                banned.push(t);
                if banned.len() > 8 {
                    return Err(Error::SeparatingExhausted(
                        "more than 8 separating candidates failed across samples".into(),
                    ));
                }
                continue 'restart;
            }
            Err(e) => return Err(e),
        }
    }
}

fn pick_separating(
    sys: &ElementarySystem,
    banned: &[SeparatingElement],
) -> Result<SeparatingElement> {
    // Probe nodes until one yields a quotient ring, then search there.
    let nodes = NodeIter::new(BTreeSet::new());
    for m0 in nodes.take(16) {
        let m_idx = sys.plan.n - 1;
        let specialized: Vec<_> = sys
            .reduced
            .iter()
            .map(|f| f.substitute_and_drop(m_idx, &m0))
            .collect();
        let Ok(q) = crate::rur::groebner(&specialized) else { continue };
        let tools = RurTools::new(&q);
        if let Ok(t) = tools.find_separating_banned(banned) {
            return Ok(t);
        }
    }
    Err(Error::SeparatingExhausted(
        "no probe node produced a separating element".into(),
    ))
}

struct SampleSet {
    samples: BTreeMap<Rational, RurFixed>,
    failed: BTreeSet<Rational>,
    t_failures: usize,
    profile: Option<(usize, usize)>, // (chi degree, chi_bar degree)
}

fn sample_and_interpolate(
    n: usize,
    sys: &ElementarySystem,
    t: &SeparatingElement,
    opts: &BuildOptions,
) -> Result<ParametricRur> {
    let mut set = SampleSet {
        samples: BTreeMap::new(),
        failed: BTreeSet::new(),
        t_failures: 0,
        profile: None,
    };
    let mut budget = opts.initial_nodes.max(2);
    loop {
        if budget > opts.max_nodes {
            return Err(Error::DegreeBudget(budget));
        }
        collect_samples(sys, t, budget, &mut set)?;
        log::info!(
            "n={n}: {} samples collected ({} nodes rejected), interpolating",
            set.samples.len(),
            set.failed.len()
        );
        match try_interpolate(n, t, &set) {
            Ok(candidate) => {
                if validate(sys, t, &candidate, opts, &set)? {
                    let mut result = candidate;
                    collect_bad_m(&mut result, &set);
                    return Ok(result);
                }
                log::info!("n={n}: held-out validation failed at {budget} nodes, doubling");
            }
            Err(Error::NeedMoreSamples { .. }) => {
                log::info!("n={n}: interpolation needs more than {budget} nodes, doubling");
            }
            Err(e) => return Err(e),
        }
        budget *= 2;
    }
}

/// Tops `set` up to `budget` usable samples, recording rejected nodes.
fn collect_samples(
    sys: &ElementarySystem,
    t: &SeparatingElement,
    budget: usize,
    set: &mut SampleSet,
) -> Result<()> {
    let mut exclude: BTreeSet<Rational> = set.samples.keys().cloned().collect();
    exclude.extend(set.failed.iter().cloned());
    let mut nodes = NodeIter::new(exclude);
    while set.samples.len() < budget {
        let missing = budget - set.samples.len();
        let batch: Vec<Rational> = (&mut nodes).take(missing).collect();
        let computed: Vec<(Rational, Result<RurFixed>)> = batch
            .into_par_iter()
            .map(|m0| {
                let r = rur_fixed_with_t(&sys.reduced, &m0, t);
                (m0, r)
            })
            .collect();
        for (m0, r) in computed {
            match r {
                Ok(rur) => {
                    let profile = (rur.chi.degree_or_zero(), rur.chi_bar.degree_or_zero());
                    match set.profile {
                        None => {
                            set.profile = Some(profile);
                            set.samples.insert(m0, rur);
                        }
                        Some(p) if p == profile => {
                            set.samples.insert(m0, rur);
                        }
                        Some(_) => {
                            // degenerate specialization (dimension or
                            // square-freeness dropped): unusable as a node
                            set.failed.insert(m0);
                        }
                    }
                }
                Err(Error::SeparatingExhausted(_)) => {
                    set.t_failures += 1;
                    set.failed.insert(m0.clone());
                    if set.t_failures > 3 && set.t_failures * 4 > set.samples.len() {
                        return Err(Error::SeparatingExhausted(format!(
                            "t failed to separate at {} of {} sampled nodes",
                            set.t_failures,
                            set.t_failures + set.samples.len()
                        )));
                    }
                }
                Err(Error::DenominatorVanished) | Err(Error::NoSolutions) => {
                    set.failed.insert(m0);
                }
                Err(Error::NotZeroDimensional { .. }) => {
                    set.failed.insert(m0);
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(())
}

fn try_interpolate(n: usize, t: &SeparatingElement, set: &SampleSet) -> Result<ParametricRur> {
    let (d, d_bar) = set.profile.expect("profile fixed by first sample");
    let coord_vars: Vec<String> = set
        .samples
        .values()
        .next()
        .expect("nonempty")
        .coord_vars
        .clone();
    let n_coords = coord_vars.len();
    let max_deg = set.samples.len();

    // One slot per polynomial coefficient: chi (d), g_one (d_bar),
    // each coordinate (d_bar).
    #[derive(Clone, Copy)]
    enum Slot {
        Chi(usize),
        GOne(usize),
        GCoord(usize, usize),
    }
    let mut slots = Vec::new();
    for j in 0..d {
        slots.push(Slot::Chi(j));
    }
    for j in 0..d_bar {
        slots.push(Slot::GOne(j));
    }
    for v in 0..n_coords {
        for j in 0..d_bar {
            slots.push(Slot::GCoord(v, j));
        }
    }

    let values = |slot: Slot| -> Vec<(Rational, Rational)> {
        set.samples
            .iter()
            .map(|(m0, rur)| {
                let v = match slot {
                    Slot::Chi(j) => rur.chi.coeff(j),
                    Slot::GOne(j) => rur.g_one.coeff(j),
                    Slot::GCoord(vi, j) => rur.g_coord[vi].coeff(j),
                };
                (m0.clone(), v)
            })
            .collect()
    };

    // The first non-constant slot discovers the common denominator shape;
    // remaining slots try it first and fall back to the full fit. Slots are
    // processed from the lowest-degree coefficients (chi near the leading
    // term) so the discovery fit is the cheapest one.
    let mut order: Vec<usize> = (0..slots.len()).collect();
    order.sort_by_key(|&i| match slots[i] {
        Slot::Chi(j) => (0usize, d - j),
        Slot::GOne(j) => (1, d_bar - j),
        Slot::GCoord(v, j) => (2 + v, d_bar - j),
    });
    let mut den_hint: Option<UniPoly> = None;
    let mut fitted: Vec<Option<RationalFunction>> = vec![None; slots.len()];
    for idx in order {
        let f = interpolate_slot(&values(slots[idx]), max_deg, den_hint.as_ref())?;
        if den_hint.is_none() && !f.den().is_one() {
            den_hint = Some(f.den().clone());
        }
        fitted[idx] = Some(f);
    }
    let mut fitted = fitted.into_iter().map(Option::unwrap);

    let chi_coeffs: Vec<RationalFunction> = (0..d).map(|_| fitted.next().unwrap()).collect();
    let g_one_coeffs: Vec<RationalFunction> =
        (0..d_bar).map(|_| fitted.next().unwrap()).collect();
    let g_coord_coeffs: Vec<Vec<RationalFunction>> = (0..n_coords)
        .map(|_| (0..d_bar).map(|_| fitted.next().unwrap()).collect())
        .collect();

    Ok(ParametricRur {
        n,
        t: t.clone(),
        chi_coeffs,
        g_one_coeffs,
        g_coord_coeffs,
        coord_vars,
        bad_m: BTreeSet::new(),
    })
}

/// Held-out check: at fresh nodes the assembled specialization must equal
/// the directly computed RUR, coefficient for coefficient.
fn validate(
    sys: &ElementarySystem,
    t: &SeparatingElement,
    candidate: &ParametricRur,
    opts: &BuildOptions,
    set: &SampleSet,
) -> Result<bool> {
    let mut exclude: BTreeSet<Rational> = set.samples.keys().cloned().collect();
    exclude.extend(set.failed.iter().cloned());
    let mut checked = 0;
    let nodes = NodeIter::new(exclude);
    for m0 in nodes {
        if checked >= opts.validation_points {
            break;
        }
        let Ok(direct) = rur_fixed_with_t(&sys.reduced, &m0, t) else {
            continue; // degenerate validation node, pick another
        };
        let Ok(assembled) = candidate.assemble(&m0) else {
            return Ok(false);
        };
        if assembled.chi != direct.chi
            || assembled.g_one != direct.g_one
            || assembled.g_coord != direct.g_coord
        {
            return Ok(false);
        }
        checked += 1;
    }
    Ok(checked >= opts.validation_points)
}

fn collect_bad_m(result: &mut ParametricRur, set: &SampleSet) {
    let mut bad = set.failed.clone();
    let zero = Rational::zero();
    let one = Rational::one();
    let mut scan = |f: &RationalFunction| {
        if f.den().degree_or_zero() > 0 {
            if let Ok(roots) = rational_roots_in(f.den(), &zero, &one) {
                bad.extend(roots);
            }
        }
    };
    for f in &result.chi_coeffs {
        scan(f);
    }
    for f in &result.g_one_coeffs {
        scan(f);
    }
    for c in &result.g_coord_coeffs {
        for f in c {
            scan(f);
        }
    }
    result.bad_m = bad;
}

// ---------------------------------------------------------------------------
// Cache persistence
// ---------------------------------------------------------------------------

const CACHE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct RatFuncDto {
    num: Vec<String>,
    den: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct CachePayload {
    version: u32,
    n: usize,
    t: Vec<i64>,
    chi: Vec<RatFuncDto>,
    g_one: Vec<RatFuncDto>,
    g_coord: BTreeMap<String, Vec<RatFuncDto>>,
    bad_m: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    #[serde(flatten)]
    payload: CachePayload,
    checksum: String,
}

fn ratfunc_to_dto(f: &RationalFunction) -> RatFuncDto {
    RatFuncDto {
        num: f.num().coeffs().iter().map(format_rational).collect(),
        den: f.den().coeffs().iter().map(format_rational).collect(),
    }
}

fn dto_to_ratfunc(dto: &RatFuncDto) -> Result<RationalFunction> {
    let parse_vec = |v: &[String]| -> Result<Vec<Rational>> {
        v.iter().map(|s| parse_rational(s)).collect()
    };
    let num = UniPoly::new(Var::M, parse_vec(&dto.num)?);
    let den = UniPoly::new(Var::M, parse_vec(&dto.den)?);
    if den.is_zero() {
        return Err(Error::Cache("zero denominator in cache".into()));
    }
    Ok(RationalFunction::new(num, den))
}

fn payload_checksum(payload: &CachePayload) -> Result<String> {
    use sha2::{Digest, Sha256};
    let bytes = serde_json::to_vec(payload)
        .map_err(|e| Error::Cache(format!("serialization failed: {e}")))?;
    Ok(hex_string(&Sha256::digest(&bytes)))
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Writes the nearly parametric solution as versioned, checksummed JSON with
/// all rationals as exact `numerator/denominator` strings.
pub fn save_cache(p: &ParametricRur, path: impl AsRef<Path>) -> Result<()> {
    let payload = CachePayload {
        version: CACHE_VERSION,
        n: p.n,
        t: p.t.coeffs.clone(),
        chi: p.chi_coeffs.iter().map(ratfunc_to_dto).collect(),
        g_one: p.g_one_coeffs.iter().map(ratfunc_to_dto).collect(),
        g_coord: p
            .coord_vars
            .iter()
            .cloned()
            .zip(p.g_coord_coeffs.iter().map(|c| c.iter().map(ratfunc_to_dto).collect()))
            .collect(),
        bad_m: p.bad_m.iter().map(format_rational).collect(),
    };
    let checksum = payload_checksum(&payload)?;
    let file = CacheFile { payload, checksum };
    let json = serde_json::to_string_pretty(&file)
        .map_err(|e| Error::Cache(format!("serialization failed: {e}")))?;
    std::fs::write(path, json)?;
    Ok(())
}

/// Loads a cache written by [`save_cache`], verifying version, checksum, and
/// (when given) the expected switching-angle count.
pub fn load_cache(path: impl AsRef<Path>, expect_n: Option<usize>) -> Result<ParametricRur> {
    let text = std::fs::read_to_string(&path)?;
    let file: CacheFile = serde_json::from_str(&text)
        .map_err(|e| Error::Cache(format!("malformed cache file: {e}")))?;
    if file.payload.version != CACHE_VERSION {
        return Err(Error::Cache(format!(
            "version mismatch: file has {}, expected {CACHE_VERSION}",
            file.payload.version
        )));
    }
    let expected = payload_checksum(&file.payload)?;
    if expected != file.checksum {
        return Err(Error::Cache("checksum failure".into()));
    }
    if let Some(n) = expect_n {
        if file.payload.n != n {
            return Err(Error::Cache(format!(
                "wrong n: cache holds n={}, requested n={n}",
                file.payload.n
            )));
        }
    }
    let p = &file.payload;
    let coord_vars: Vec<String> = (2..=p.n).map(|i| format!("s{i}")).collect();
    if p.t.len() != coord_vars.len() {
        return Err(Error::Cache("separating element arity mismatch".into()));
    }
    let mut g_coord_coeffs = Vec::with_capacity(coord_vars.len());
    for v in &coord_vars {
        let dtos = p
            .g_coord
            .get(v)
            .ok_or_else(|| Error::Cache(format!("missing coordinate {v}")))?;
        g_coord_coeffs.push(dtos.iter().map(dto_to_ratfunc).collect::<Result<Vec<_>>>()?);
    }
    Ok(ParametricRur {
        n: p.n,
        t: SeparatingElement { coeffs: p.t.clone() },
        chi_coeffs: p.chi.iter().map(dto_to_ratfunc).collect::<Result<_>>()?,
        g_one_coeffs: p.g_one.iter().map(dto_to_ratfunc).collect::<Result<_>>()?,
        g_coord_coeffs,
        coord_vars,
        bad_m: p
            .bad_m
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<_>>()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use crate::rur::rur_fixed;

    #[test]
    fn nodes_are_distinct_small_denominator_rationals() {
        let pts = sample_points(9, &BTreeSet::new());
        assert_eq!(pts.len(), 9);
        let set: BTreeSet<_> = pts.iter().cloned().collect();
        assert_eq!(set.len(), 9);
        for p in &pts {
            assert!(p > &Rational::zero() && p < &Rational::one());
        }
        assert_eq!(pts[0], rat(1, 2));
        assert_eq!(pts[1], rat(1, 3));

        let excl: BTreeSet<_> = [rat(1, 2)].into_iter().collect();
        let pts = sample_points(5, &excl);
        assert!(!pts.contains(&rat(1, 2)));
        assert_eq!(pts.len(), 5);
    }

    #[test]
    fn interpolates_square() {
        let samples: Vec<(Rational, Rational)> = [1, 2, 3, 4]
            .iter()
            .map(|&k| {
                let m = rat(k, 5);
                let v = &m * &m;
                (m, v)
            })
            .collect();
        let f = interpolate_coefficient(&samples, 8).unwrap();
        assert_eq!(f.num(), &UniPoly::from_ints(Var::M, &[0, 0, 1]));
        assert!(f.den().is_one());
    }

    #[test]
    fn interpolates_constant() {
        let samples: Vec<(Rational, Rational)> = [1, 2, 3]
            .iter()
            .map(|&k| (rat(k, 4), rat_int(7)))
            .collect();
        let f = interpolate_coefficient(&samples, 4).unwrap();
        assert_eq!(f, RationalFunction::constant(rat_int(7)));
    }

    #[test]
    fn interpolates_printed_chi_coefficient() {
        // T^2 coefficient of the n=3 chi: (-576 m^6 + ...) / (448 m^4 + ...)
        let truth = RationalFunction::new(
            UniPoly::from_ints(Var::M, &[245, 0, -1120, 0, 1456, 0, -576]),
            UniPoly::from_ints(Var::M, &[140, 0, -560, 0, 448]),
        );
        let nodes = sample_points(14, &BTreeSet::new());
        let samples: Vec<(Rational, Rational)> = nodes
            .into_iter()
            .map(|m| {
                let v = truth.eval(&m).unwrap();
                (m, v)
            })
            .collect();
        let f = interpolate_coefficient(&samples, 16).unwrap();
        assert_eq!(f, truth);
    }

    #[test]
    fn signals_need_more_samples() {
        // Degree-6/4 function from only 6 samples cannot be pinned down.
        let truth = RationalFunction::new(
            UniPoly::from_ints(Var::M, &[245, 0, -1120, 0, 1456, 0, -576]),
            UniPoly::from_ints(Var::M, &[140, 0, -560, 0, 448]),
        );
        let nodes = sample_points(6, &BTreeSet::new());
        let samples: Vec<(Rational, Rational)> = nodes
            .into_iter()
            .map(|m| (m.clone(), truth.eval(&m).unwrap()))
            .collect();
        let r = interpolate_coefficient(&samples, 3);
        assert!(matches!(r, Err(Error::NeedMoreSamples { .. })));
    }

    #[test]
    fn parametric_n2_matches_direct() {
        let p = build_parametric_rur(2).unwrap();
        assert_eq!(p.n, 2);
        let sys = build_elementary_system(2).unwrap();
        for m0 in sample_points(40, &BTreeSet::new()).into_iter().skip(30) {
            let direct = rur_fixed(&sys.reduced, &m0).unwrap();
            let assembled = p.assemble(&m0).unwrap();
            assert_eq!(assembled.chi, direct.chi);
            assert_eq!(assembled.g_one, direct.g_one);
            assert_eq!(assembled.g_coord, direct.g_coord);
        }
    }

    #[test]
    fn cache_round_trip_and_errors() {
        let p = build_parametric_rur(2).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("n2.json");
        save_cache(&p, &path).unwrap();
        let q = load_cache(&path, Some(2)).unwrap();
        assert_eq!(p, q);

        // wrong n
        let err = load_cache(&path, Some(5)).unwrap_err();
        assert!(matches!(err, Error::Cache(ref s) if s.contains("wrong n")));

        // truncated file
        let text = std::fs::read_to_string(&path).unwrap();
        let cut = &text[..text.len() / 2];
        let bad = dir.path().join("trunc.json");
        std::fs::write(&bad, cut).unwrap();
        assert!(matches!(load_cache(&bad, None), Err(Error::Cache(_))));

        // corrupted payload fails the checksum
        let tampered = text.replace("\"n\": 2", "\"n\": 3");
        let bad2 = dir.path().join("tamper.json");
        std::fs::write(&bad2, tampered).unwrap();
        let err = load_cache(&bad2, None).unwrap_err();
        assert!(matches!(err, Error::Cache(ref s) if s.contains("checksum")));

        // version mismatch
        let old = text.replace("\"version\": 1", "\"version\": 99");
        let bad3 = dir.path().join("ver.json");
        std::fs::write(&bad3, old).unwrap();
        let err = load_cache(&bad3, None).unwrap_err();
        assert!(matches!(err, Error::Cache(ref s) if s.contains("version")));
    }
}
