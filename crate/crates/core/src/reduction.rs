//! Unary-form reduction by the conjugates of a Pisot unit, the t_K
//! constants, the exact integer minimum of a trace form, and reducedness
//! checking.
//!
//! The reduction loop scans the conjugate transforms v_j v_j^* in order and
//! restarts from the first whenever one drops the trace below delta times
//! its current value; it stops after a clean pass.  Every accepted step
//! shrinks the trace by a factor below delta < 1, which caps the number of
//! rounds by log(Tr(a)/Tr(a'))/log(1/delta) + 1.
//!
//! Trace comparisons are exact floating comparisons: delta < 1 already
//! provides slack, and a tolerance could re-accept a transform forever.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldData, IntegerElement, KREElement, TotallyPositiveElement, TOL};
use crate::lattice::{min_t_pisot, LogUnitLattice, UnitExponentVector};
use crate::linalg;

/// t_K from a modulus multiset: sqrt(1 + (|u|^2 - 1)/(1 - m^2)) with m the
/// second-largest modulus.  Orders the moduli itself; errors on non-Pisot
/// input, where the denominator would vanish or go negative.
pub fn t_k_from_moduli(moduli: &[f64]) -> Result<f64> {
    let mut m = moduli.to_vec();
    m.sort_by(|a, b| b.total_cmp(a));
    if m.len() < 2 || !(m[0] > 1.0 + TOL) || !(m[1] < 1.0 - TOL) {
        return Err(Error::NotPisot(format!("moduli {m:?}")));
    }
    Ok((1.0 + (m[0] * m[0] - 1.0) / (1.0 - m[1] * m[1])).sqrt())
}

/// t_K(u) of a unit given as a K_R point (any coordinate order).
pub fn t_k_of_unit(u: &KREElement) -> Result<f64> {
    t_k_from_moduli(&u.moduli())
}

/// t_K(u, delta) = sqrt(1 + (|u|^2 - delta)/(delta - m^2)); admissible for
/// m^2 < delta <= 1, and equal to t_K(u) at delta = 1.
pub fn t_k_delta_from_moduli(moduli: &[f64], delta: f64) -> Result<f64> {
    let mut m = moduli.to_vec();
    m.sort_by(|a, b| b.total_cmp(a));
    if m.len() < 2 || !(m[0] > 1.0 + TOL) || !(m[1] < 1.0 - TOL) {
        return Err(Error::NotPisot(format!("moduli {m:?}")));
    }
    let floor = m[1] * m[1];
    if !(delta > floor) || delta > 1.0 {
        return Err(Error::DeltaWindow { delta, lo: floor, hi: 1.0 });
    }
    Ok((1.0 + (m[0] * m[0] - delta) / (delta - floor)).sqrt())
}

pub fn t_k_delta(u: &KREElement, delta: f64) -> Result<f64> {
    t_k_delta_from_moduli(&u.moduli(), delta)
}

/// Output of the reduction loop.  `applied` is the net unit v with
/// a' = a v v^*; torsion never moves a trace, so its index stays 0.
#[derive(Debug, Clone, Serialize)]
pub struct ReductionCertificate {
    #[serde(skip)]
    pub reduced: TotallyPositiveElement,
    pub applied: UnitExponentVector,
    pub rounds: u32,
    pub trace_initial: f64,
    pub trace_final: f64,
    pub t_delta: f64,
}

impl ReductionCertificate {
    /// Upper bound on rounds implied by the per-step contraction.
    pub fn round_bound(&self, delta: f64) -> u32 {
        ((self.trace_initial / self.trace_final).ln() / (1.0 / delta).ln()).ceil() as u32 + 1
    }
}

/// Per-conjugate data, precomputed once per reduction call.
struct Conjugates {
    /// Squared moduli of each conjugate tuple, projected to K_R.
    moduli_sq: Vec<Vec<f64>>,
    /// Exponent image of the input unit under each automorphism.
    exponents: Vec<Vec<i64>>,
}

fn conjugates(
    field: &FieldData,
    lattice: &LogUnitLattice,
    unit: &UnitExponentVector,
) -> Result<Conjugates> {
    let arity = field.arity();
    let full = field.unit_embedding(&unit.exponents)?;
    let mut moduli_sq = Vec::with_capacity(arity);
    let mut exponents = Vec::with_capacity(arity);
    for j in 1..=arity {
        let kre = field.apply_galois(j, &full)?;
        moduli_sq.push(kre.moduli().iter().map(|m| m * m).collect());
        exponents.push(lattice.solve_exponents(&kre.log_embedding()?)?);
    }
    Ok(Conjugates { moduli_sq, exponents })
}

/// Checks the unit is Pisot after max-modulus-first reordering and that
/// delta lies in the open admissible window below 1.
fn check_inputs(field: &FieldData, unit: &UnitExponentVector, delta: f64) -> Result<Vec<f64>> {
    let moduli = field.project(&field.unit_embedding(&unit.exponents)?)?.moduli();
    let mut sorted = moduli.clone();
    sorted.sort_by(|a, b| b.total_cmp(a));
    if !(sorted[0] > 1.0 + TOL) || !(sorted[1] < 1.0 - TOL) {
        return Err(Error::NotPisot(format!("moduli {sorted:?}")));
    }
    let floor = sorted[1] * sorted[1];
    if !(delta > floor) || !(delta < 1.0) {
        return Err(Error::DeltaWindow { delta, lo: floor, hi: 1.0 });
    }
    Ok(moduli)
}

/// Reduces the unary form of `a` with the conjugate transforms of the Pisot
/// unit `unit`, restarting after every accepted step.
pub fn reduce_unary(
    field: &FieldData,
    lattice: &LogUnitLattice,
    a: &TotallyPositiveElement,
    unit: &UnitExponentVector,
    delta: f64,
) -> Result<ReductionCertificate> {
    let moduli = check_inputs(field, unit, delta)?;
    let t_delta = t_k_delta_from_moduli(&moduli, delta)?;
    let conj = conjugates(field, lattice, unit)?;
    let arity = field.arity();
    let sig = field.signature;

    let mut coords = a.coords().to_vec();
    let mut trace: f64 = coords.iter().enumerate().map(|(i, &c)| sig.weight(i) * c).sum();
    let trace_initial = trace;
    let mut net = vec![0i64; unit.exponents.len()];
    let mut rounds: u32 = 0;
    let mut j = 0;
    while j < arity {
        let scaled: Vec<f64> =
            coords.iter().zip(&conj.moduli_sq[j]).map(|(&c, &m)| c * m).collect();
        let scaled_trace: f64 =
            scaled.iter().enumerate().map(|(i, &c)| sig.weight(i) * c).sum();
        if scaled_trace < delta * trace {
            coords = scaled;
            trace = scaled_trace;
            for (n, e) in net.iter_mut().zip(&conj.exponents[j]) {
                *n += e;
            }
            rounds += 1;
            if rounds > 1_000_000 {
                return Err(Error::EnumerationCap(rounds as f64));
            }
            j = 0;
        } else {
            j += 1;
        }
    }

    Ok(ReductionCertificate {
        reduced: TotallyPositiveElement::new(sig, coords)?,
        applied: UnitExponentVector::new(net),
        rounds,
        trace_initial,
        trace_final: trace,
        t_delta,
    })
}

/// Exact minimum of Tr(a x x^*) over nonzero integers, with the witness.
#[derive(Debug, Clone)]
pub struct IntegerMinimumResult {
    pub mu: f64,
    pub argmin: IntegerElement,
    pub trace_xx: f64,
}

/// Gram matrix of the form Tr(a x x^*) over the integral basis.
#[allow(clippy::needless_range_loop)]
pub fn trace_form_gram(field: &FieldData, a: &TotallyPositiveElement) -> Vec<Vec<f64>> {
    let n = field.degree();
    let arity = field.arity();
    let sig = field.signature;
    let mut g = vec![vec![0.0; n]; n];
    for row in 0..arity {
        let w = sig.weight(row) * a.coords()[row];
        for i in 0..n {
            for j in i..n {
                let v = w
                    * (field.basis_embeddings[row][i].conj() * field.basis_embeddings[row][j]).re;
                g[i][j] += v;
            }
        }
    }
    for i in 0..n {
        for j in 0..i {
            g[i][j] = g[j][i];
        }
    }
    g
}

/// All nonzero integer vectors with q(c) <= bound, by sphere enumeration on
/// the LDL^T quadratic completion.
fn enumerate_quadratic(
    gram: &[Vec<f64>],
    bound: f64,
    cap: usize,
) -> Result<Vec<(f64, Vec<i64>)>> {
    let n = gram.len();
    let (u, d) = linalg::ldlt(gram).ok_or(Error::GramNotPositiveDefinite)?;
    // Inflate the region a hair so exact-boundary vectors survive rounding;
    // callers re-filter against their own tie windows.
    let bound = bound * (1.0 + 1e-9) + 1e-12;
    let mut out: Vec<(f64, Vec<i64>)> = Vec::new();
    let mut c = vec![0i64; n];
    // Depth-first over coordinates n-1 .. 0 with per-level interval bounds.
    #[allow(clippy::too_many_arguments)]
    fn descend(
        level: usize,
        acc: f64,
        bound: f64,
        u: &[Vec<f64>],
        d: &[f64],
        c: &mut Vec<i64>,
        out: &mut Vec<(f64, Vec<i64>)>,
        cap: usize,
    ) -> Result<()> {
        let shift: f64 = (level + 1..c.len()).map(|j| u[level][j] * c[j] as f64).sum();
        let room = ((bound - acc) / d[level]).max(0.0).sqrt();
        let lo = (-room - shift).ceil() as i64;
        let hi = (room - shift).floor() as i64;
        for v in lo..=hi {
            c[level] = v;
            let term = v as f64 + shift;
            let here = acc + d[level] * term * term;
            if here > bound * (1.0 + 1e-12) {
                continue;
            }
            if level == 0 {
                if c.iter().any(|&x| x != 0) {
                    out.push((here, c.clone()));
                    if out.len() > cap {
                        return Err(Error::EnumerationTooLarge(out.len() as u128));
                    }
                }
            } else {
                descend(level - 1, here, bound, u, d, c, out, cap)?;
            }
        }
        c[level] = 0;
        Ok(())
    }
    descend(n - 1, 0.0, bound, &u, &d, &mut c, &mut out, cap)?;
    Ok(out)
}

fn pick_minimum(mut hits: Vec<(f64, Vec<i64>)>) -> Option<(f64, Vec<i64>)> {
    let best = hits.iter().map(|(q, _)| *q).fold(f64::INFINITY, f64::min);
    if !best.is_finite() {
        return None;
    }
    let tie = best + 1e-9 * best.max(1.0);
    hits.retain(|(q, _)| *q <= tie);
    hits.sort_by(|a, b| a.1.cmp(&b.1));
    let coeffs = hits[0].1.clone();
    Some((best, coeffs))
}

/// mu(a) = min Tr(a x x^*) over nonzero integers.  The search bound starts
/// at the form value of the first basis element (or the caller's hint) and
/// doubles until the ellipsoid is nonempty, up to a 2^10 * degree cap.
/// Trace ties resolve to the lexicographically smallest coefficient vector.
pub fn integer_minimum(
    field: &FieldData,
    a: &TotallyPositiveElement,
    bound_hint: Option<f64>,
) -> Result<IntegerMinimumResult> {
    let gram = trace_form_gram(field, a);
    let mut bound = bound_hint.unwrap_or(gram[0][0]).max(1e-12);
    let cap = bound * 2.0f64.powi(10) * field.degree() as f64;
    loop {
        let hits = enumerate_quadratic(&gram, bound, 2_000_000)?;
        if let Some((mu, coeffs)) = pick_minimum(hits) {
            let argmin = field.integer_element(coeffs)?;
            let trace_xx = TotallyPositiveElement::ones(field.signature)
                .form_value(&field.project(&argmin.embedding)?)?;
            return Ok(IntegerMinimumResult { mu, argmin, trace_xx });
        }
        bound *= 2.0;
        if bound > cap {
            return Err(Error::EnumerationCap(cap));
        }
    }
}

/// Minimum of Tr(x x^*) over nonzero non-torsion integers; torsion is
/// detected by all embedding moduli sitting at 1.
pub fn min_trace_nontorsion(field: &FieldData, search_bound: f64) -> Result<f64> {
    let ones = TotallyPositiveElement::ones(field.signature);
    let gram = trace_form_gram(field, &ones);
    let mut bound = search_bound.max(field.degree() as f64 + 0.5);
    let cap = bound * 2.0f64.powi(10) * field.degree() as f64;
    loop {
        let hits = enumerate_quadratic(&gram, bound, 2_000_000)?;
        let survivors: Vec<(f64, Vec<i64>)> = hits
            .into_iter()
            .filter(|(_, coeffs)| {
                !field
                    .embed_coeffs(coeffs)
                    .iter()
                    .all(|z| (z.norm() - 1.0).abs() <= TOL)
            })
            .collect();
        if let Some((mu, _)) = pick_minimum(survivors) {
            return Ok(mu);
        }
        bound *= 2.0;
        if bound > cap {
            return Err(Error::EnumerationCap(cap));
        }
    }
}

/// Everything checked by the two output inequalities of the reduction
/// algorithm, with the numbers that went into them.
#[derive(Debug, Clone, Serialize)]
pub struct ReductionBoundsReport {
    pub delta: f64,
    pub rounds: u32,
    pub trace_initial: f64,
    pub trace_reduced: f64,
    pub applied: UnitExponentVector,
    pub mu: f64,
    pub argmin_coeffs: Vec<i64>,
    pub trace_argmin: f64,
    pub min_s: f64,
    pub t_delta_sq: f64,
    /// max(t^2 / min_S, 1).
    pub bound_factor: f64,
    pub trace_bound: f64,
    pub trace_ok: bool,
    pub argmin_trace_ok: bool,
    pub passed: bool,
}

/// Runs the reduction, computes mu(a') exactly, and checks
/// Tr(a') <= max(t^2/min_S, 1) mu(a) and Tr(x x^*) <= t^2 at the argmin.
pub fn verify_reduction_bounds(
    field: &FieldData,
    lattice: &LogUnitLattice,
    a: &TotallyPositiveElement,
    unit: &UnitExponentVector,
    delta: f64,
) -> Result<ReductionBoundsReport> {
    let cert = reduce_unary(field, lattice, a, unit, delta)?;
    let minimum = integer_minimum(field, &cert.reduced, None)?;
    let min_s = min_trace_nontorsion(field, field.degree() as f64 + 0.5)?;
    let t_delta_sq = cert.t_delta * cert.t_delta;
    let bound_factor = (t_delta_sq / min_s).max(1.0);
    let trace_bound = bound_factor * minimum.mu;
    let slack = 1e-9;
    let trace_ok = cert.trace_final <= trace_bound * (1.0 + slack);
    let argmin_trace_ok = minimum.trace_xx <= t_delta_sq * (1.0 + slack);
    Ok(ReductionBoundsReport {
        delta,
        rounds: cert.rounds,
        trace_initial: cert.trace_initial,
        trace_reduced: cert.trace_final,
        applied: cert.applied,
        mu: minimum.mu,
        argmin_coeffs: minimum.argmin.coeffs,
        trace_argmin: minimum.trace_xx,
        min_s,
        t_delta_sq,
        bound_factor,
        trace_bound,
        trace_ok,
        argmin_trace_ok,
        passed: trace_ok && argmin_trace_ok,
    })
}

/// Reducedness check: Tr(a v v^*) >= Tr(a) for every unit v in the cube
/// that can hold a violator.
///
/// A violator satisfies Tr(v v^*) < t_K^2, which pins every positive log
/// coordinate below w_max log t_K and, through the zero coordinate sum,
/// every negative one above -(r+s-1) w_max log t_K; the cube of radius
/// (r+s-1) w_max log t_K is therefore exhaustive.  Both signs of every
/// lattice point are enumerated.
pub fn is_reduced(
    field: &FieldData,
    lattice: &LogUnitLattice,
    a: &TotallyPositiveElement,
) -> Result<bool> {
    let mt = min_t_pisot(field, lattice)?;
    let sig = field.signature;
    let radius = (sig.unit_rank().max(1)) as f64 * sig.max_weight() * mt.log_t;
    let trace = a.trace();
    for p in lattice.enumerate_points(radius)? {
        if p.exponents.iter().all(|&e| e == 0) {
            continue;
        }
        // Coordinates are weighted logs; |v_i|^2 = exp(2 c_i / w_i).
        let scaled: f64 = p
            .coords
            .iter()
            .enumerate()
            .map(|(i, &c)| sig.weight(i) * a.coords()[i] * (2.0 * c / sig.weight(i)).exp())
            .sum();
        if scaled < trace * (1.0 - 2e-9) {
            return Ok(false);
        }
    }
    Ok(true)
}
