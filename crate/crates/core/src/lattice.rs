//! The log-unit lattice inside the trace-zero hyperplane V: regulator and
//! volume, exact l-infinity successive minima and CVP by box enumeration,
//! covering-radius bounds and brute-force estimates, the Pisot-unit search,
//! and the facet-candidate enumeration.
//!
//! Enumeration boxes come from the dual basis: a vector sum e_i b_i with
//! l-infinity norm at most rho has |e_i| <= ||d_i||_1 * rho for the dual
//! rows d_i, so a box with slack is provably complete.  Everything here is
//! exact enumeration at unit rank <= 6; results are deterministic, with
//! ties broken lexicographically on exponent vectors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{is_pisot_moduli, FieldData};
use crate::linalg;

/// Maximum rank for exact enumeration.
pub const MAX_ENUM_RANK: usize = 6;

/// Integer exponents on the unit generators plus a torsion index.  This is
/// the drift-free representation of a unit; embeddings are recomputed from
/// the generators on demand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitExponentVector {
    pub exponents: Vec<i64>,
    pub torsion_index: i64,
}

impl UnitExponentVector {
    pub fn new(exponents: Vec<i64>) -> Self {
        Self { exponents, torsion_index: 0 }
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0) && self.torsion_index == 0
    }
}

/// A lattice vector together with its exponents and l-infinity norm.
#[derive(Debug, Clone)]
pub struct LatticePoint {
    pub exponents: Vec<i64>,
    pub coords: Vec<f64>,
    pub norm_inf: f64,
}

/// Regulator data; the volume conventions are both reported so the caller
/// can pick one deliberately.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RegulatorReport {
    /// Standard regulator: |minor determinant| of the log-embedding matrix.
    pub regulator: f64,
    /// sqrt(det Gram) of the basis.
    pub volume: f64,
    /// volume / sqrt(r+s); equals the standard regulator.
    pub volume_over_sqrt_dim: f64,
    /// volume * sqrt(r+s); the value implied by reading Vol = R/sqrt(r+s).
    pub volume_times_sqrt_dim: f64,
}

fn norm_inf(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, &x| m.max(x.abs()))
}

/// Rank r+s-1 lattice of unit logarithms, full-rank in the trace-zero
/// hyperplane of R^(r+s).
#[derive(Debug, Clone)]
pub struct LogUnitLattice {
    ambient: usize,
    rank: usize,
    basis: Vec<Vec<f64>>,
    gram: Vec<Vec<f64>>,
    volume: f64,
    dual: Vec<Vec<f64>>,
}

impl LogUnitLattice {
    /// Builds the lattice from explicit basis vectors lying in V.
    pub fn from_basis(basis: Vec<Vec<f64>>) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::UnitRankZero);
        }
        let ambient = basis[0].len();
        let rank = basis.len();
        if rank >= ambient {
            return Err(Error::Parameter(format!(
                "lattice rank {rank} must be below the ambient dimension {ambient}"
            )));
        }
        for (i, b) in basis.iter().enumerate() {
            if b.len() != ambient {
                return Err(Error::Parameter("ragged lattice basis".into()));
            }
            let sum: f64 = b.iter().sum();
            if sum.abs() >= 1e-9 * norm_inf(b).max(1.0) {
                return Err(Error::Parameter(format!(
                    "basis vector {} has coordinate sum {sum}, not in the trace-zero hyperplane",
                    i + 1
                )));
            }
        }
        let gram: Vec<Vec<f64>> = basis
            .iter()
            .map(|bi| basis.iter().map(|bj| bi.iter().zip(bj).map(|(x, y)| x * y).sum()).collect())
            .collect();
        let det = linalg::det(&gram);
        let hadamard: f64 = (0..rank).map(|i| gram[i][i]).product();
        if det <= 1e-12 * hadamard.max(1e-300) {
            return Err(Error::DependentGenerators);
        }
        let gram_inv = linalg::invert(&gram).ok_or(Error::DependentGenerators)?;
        // dual[i] = sum_j gram_inv[i][j] basis[j]; satisfies <dual_i, b_j> = delta_ij.
        let dual: Vec<Vec<f64>> = (0..rank)
            .map(|i| {
                (0..ambient)
                    .map(|k| (0..rank).map(|j| gram_inv[i][j] * basis[j][k]).sum())
                    .collect()
            })
            .collect();
        Ok(Self { ambient, rank, basis, gram, volume: det.sqrt(), dual })
    }

    /// Log-unit lattice of a field: one basis vector per unit generator.
    pub fn build(field: &FieldData) -> Result<Self> {
        if field.signature.unit_rank() == 0 {
            return Err(Error::UnitRankZero);
        }
        let mut basis = Vec::with_capacity(field.unit_generators.len());
        for g in &field.unit_generators {
            basis.push(field.project(g)?.log_embedding()?);
        }
        Self::from_basis(basis)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    pub fn gram(&self) -> &[Vec<f64>] {
        &self.gram
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    /// The lattice vector with the given exponents.
    pub fn vector(&self, exponents: &[i64]) -> Vec<f64> {
        let mut v = vec![0.0; self.ambient];
        for (e, b) in exponents.iter().zip(&self.basis) {
            if *e != 0 {
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi += *e as f64 * bi;
                }
            }
        }
        v
    }

    /// Standard regulator (minor determinant) plus both volume conventions.
    pub fn regulator_report(&self) -> RegulatorReport {
        // Drop the last coordinate; for vectors summing to zero every minor
        // has the same absolute value.
        let minor: Vec<Vec<f64>> =
            self.basis.iter().map(|b| b[..self.ambient - 1].to_vec()).collect();
        let regulator = linalg::det(&minor).abs();
        let dim = self.ambient as f64;
        RegulatorReport {
            regulator,
            volume: self.volume,
            volume_over_sqrt_dim: self.volume / dim.sqrt(),
            volume_times_sqrt_dim: self.volume * dim.sqrt(),
        }
    }

    /// Integer exponents of a vector known to lie in the lattice, recovered
    /// through the dual basis and verified.
    pub fn solve_exponents(&self, target: &[f64]) -> Result<Vec<i64>> {
        let exps: Vec<i64> = self
            .dual
            .iter()
            .map(|d| d.iter().zip(target).map(|(a, b)| a * b).sum::<f64>().round() as i64)
            .collect();
        let v = self.vector(&exps);
        let residual = norm_inf(&v.iter().zip(target).map(|(a, b)| a - b).collect::<Vec<_>>());
        if residual > 1e-6 * norm_inf(target).max(1.0) {
            return Err(Error::ExponentRecovery(residual));
        }
        Ok(exps)
    }

    fn check_enum_rank(&self) -> Result<()> {
        if self.rank > MAX_ENUM_RANK {
            return Err(Error::RankTooLarge { rank: self.rank, max: MAX_ENUM_RANK });
        }
        Ok(())
    }

    fn box_limits(&self, reach: f64) -> Result<Vec<i64>> {
        let limits: Vec<i64> = self
            .dual
            .iter()
            .map(|d| {
                let l1: f64 = d.iter().map(|x| x.abs()).sum();
                (l1 * reach + 2.0).floor() as i64
            })
            .collect();
        let count: u128 = limits.iter().map(|&b| (2 * b + 1) as u128).product();
        if count > 50_000_000 {
            return Err(Error::EnumerationTooLarge(count));
        }
        Ok(limits)
    }

    fn for_each_in_box<F: FnMut(&[i64], &[f64])>(&self, limits: &[i64], mut f: F) {
        let rank = self.rank;
        let mut e: Vec<i64> = limits.iter().map(|&b| -b).collect();
        let mut v = self.vector(&e);
        loop {
            f(&e, &v);
            // odometer increment
            let mut k = 0;
            loop {
                if k == rank {
                    return;
                }
                if e[k] < limits[k] {
                    e[k] += 1;
                    break;
                }
                e[k] = -limits[k];
                k += 1;
            }
            v = self.vector(&e);
        }
    }

    /// All lattice vectors with l-infinity norm at most `radius`, including
    /// zero, sorted lexicographically by exponents.
    pub fn enumerate_points(&self, radius: f64) -> Result<Vec<LatticePoint>> {
        self.check_enum_rank()?;
        if !(radius >= 0.0) || !radius.is_finite() {
            return Err(Error::Parameter(format!("enumeration radius {radius} invalid")));
        }
        let limits = self.box_limits(radius)?;
        let mut out = Vec::new();
        self.for_each_in_box(&limits, |e, v| {
            let norm = norm_inf(v);
            if norm <= radius + 1e-9 {
                out.push(LatticePoint { exponents: e.to_vec(), coords: v.to_vec(), norm_inf: norm });
            }
        });
        out.sort_by(|a, b| a.exponents.cmp(&b.exponents));
        Ok(out)
    }

    /// Successive minima in the l-infinity norm, by exhaustive enumeration
    /// in a growing cube.
    pub fn successive_minima_linf(&self) -> Result<Vec<f64>> {
        self.check_enum_rank()?;
        let mut radius = self.volume.powf(1.0 / self.rank as f64).max(1e-6);
        for _ in 0..60 {
            let mut points = self
                .enumerate_points(radius)?
                .into_iter()
                .filter(|p| p.exponents.iter().any(|&e| e != 0))
                .collect::<Vec<_>>();
            points.sort_by(|a, b| {
                a.norm_inf.total_cmp(&b.norm_inf).then_with(|| a.exponents.cmp(&b.exponents))
            });
            let mut tracker = linalg::IndependenceTracker::new(1e-9);
            let mut minima = Vec::with_capacity(self.rank);
            for p in &points {
                if tracker.try_add(&p.coords) {
                    minima.push(p.norm_inf);
                    if minima.len() == self.rank {
                        return Ok(minima);
                    }
                }
            }
            radius *= 2.0;
        }
        Err(Error::Parameter("successive minima enumeration did not close".into()))
    }

    /// All successive minima equal within the relative tolerance.
    pub fn is_well_rounded(&self, tol: f64) -> Result<bool> {
        let minima = self.successive_minima_linf()?;
        Ok(minima[self.rank - 1] / minima[0] <= 1.0 + tol)
    }

    /// Exact l-infinity closest lattice vector; ties resolved toward the
    /// lexicographically smallest exponent vector.
    pub fn closest_vector_linf(&self, target: &[f64]) -> Result<(Vec<f64>, Vec<i64>)> {
        self.check_enum_rank()?;
        if target.len() != self.ambient {
            return Err(Error::Parameter(format!(
                "target has dimension {}, expected {}",
                target.len(),
                self.ambient
            )));
        }
        let sum: f64 = target.iter().sum();
        if sum.abs() > 1e-6 * norm_inf(target).max(1.0) {
            return Err(Error::TargetNotInHyperplane(sum));
        }
        // Babai rounding seeds the search radius.
        let seed: Vec<i64> = self
            .dual
            .iter()
            .map(|d| d.iter().zip(target).map(|(a, b)| a * b).sum::<f64>().round() as i64)
            .collect();
        let seed_vec = self.vector(&seed);
        let seed_dist =
            norm_inf(&seed_vec.iter().zip(target).map(|(a, b)| a - b).collect::<Vec<_>>());
        let limits = self.box_limits(norm_inf(target) + seed_dist)?;

        let mut best = f64::INFINITY;
        self.for_each_in_box(&limits, |_, v| {
            let d = norm_inf(&v.iter().zip(target).map(|(a, b)| a - b).collect::<Vec<_>>());
            if d < best {
                best = d;
            }
        });
        let tie = best + 1e-12 * best.max(1.0);
        let mut best_exps: Option<Vec<i64>> = None;
        self.for_each_in_box(&limits, |e, v| {
            let d = norm_inf(&v.iter().zip(target).map(|(a, b)| a - b).collect::<Vec<_>>());
            if d <= tie {
                match &best_exps {
                    Some(cur) if cur.as_slice() <= e => {}
                    _ => best_exps = Some(e.to_vec()),
                }
            }
        });
        let exps = best_exps.expect("box contains the Babai vector");
        Ok((self.vector(&exps), exps))
    }

    /// Covering-radius bound for well-rounded lattices:
    /// (sqrt(rank)/2) vol^(1/rank) up to rank 10, (rank/2) vol^(1/rank) above.
    ///
    /// The well-roundedness hypothesis is verified when the rank admits exact
    /// enumeration and assumed above that.
    pub fn covering_radius_bound(&self) -> Result<f64> {
        if self.rank <= MAX_ENUM_RANK {
            let minima = self.successive_minima_linf()?;
            let ratio = minima[self.rank - 1] / minima[0];
            if ratio > 1.0 + 1e-6 {
                return Err(Error::NotWellRounded { ratio });
            }
        }
        let rankf = self.rank as f64;
        let scale = self.volume.powf(1.0 / rankf);
        Ok(if self.rank <= 10 { rankf.sqrt() / 2.0 * scale } else { rankf / 2.0 * scale })
    }

    /// Brute-force deep-hole bracket (lower, upper) for the l-infinity
    /// covering radius; upper - lower is at most `resolution`.
    pub fn covering_radius_estimate(&self, resolution: f64) -> Result<(f64, f64)> {
        if self.rank > 3 {
            return Err(Error::RankTooLarge { rank: self.rank, max: 3 });
        }
        if !(resolution > 0.0) || !resolution.is_finite() {
            return Err(Error::Parameter(format!("grid resolution {resolution} invalid")));
        }
        let spread: f64 = self.basis.iter().map(|b| norm_inf(b)).sum();
        let steps = ((spread / (2.0 * resolution)).ceil() as u64).max(1);
        let total = (steps as u128).pow(self.rank as u32);
        if total > 60_000_000 {
            return Err(Error::EnumerationTooLarge(total));
        }
        let cell = spread / (2.0 * steps as f64);
        // Any point of the fundamental parallelepiped is within spread/2 of a
        // lattice point (round the coefficients), so candidates within
        // 1.5 * spread of the origin cover every grid point's nearest vector.
        let mut candidates = self.enumerate_points(1.5 * spread + resolution)?;
        let center: Vec<f64> = (0..self.ambient)
            .map(|k| 0.5 * self.basis.iter().map(|b| b[k]).sum::<f64>())
            .collect();
        candidates.sort_by(|a, b| {
            let da = norm_inf(&a.coords.iter().zip(&center).map(|(x, c)| x - c).collect::<Vec<_>>());
            let db = norm_inf(&b.coords.iter().zip(&center).map(|(x, c)| x - c).collect::<Vec<_>>());
            da.total_cmp(&db)
        });
        let flat: Vec<Vec<f64>> = candidates.into_iter().map(|p| p.coords).collect();

        let mut lower = 0.0f64;
        let mut t = vec![0u64; self.rank];
        let mut x = vec![0.0f64; self.ambient];
        loop {
            for (k, xv) in x.iter_mut().enumerate() {
                *xv = t
                    .iter()
                    .zip(&self.basis)
                    .map(|(&ti, b)| ti as f64 / steps as f64 * b[k])
                    .sum();
            }
            let mut nearest = f64::INFINITY;
            for p in &flat {
                let mut d = 0.0f64;
                for k in 0..self.ambient {
                    d = d.max((x[k] - p[k]).abs());
                    if d >= nearest {
                        break;
                    }
                }
                if d < nearest {
                    nearest = d;
                    if nearest <= lower {
                        break;
                    }
                }
            }
            if nearest > lower {
                lower = nearest;
            }
            let mut k = 0;
            loop {
                if k == self.rank {
                    return Ok((lower, lower + cell));
                }
                if t[k] + 1 < steps {
                    t[k] += 1;
                    break;
                }
                t[k] = 0;
                k += 1;
            }
        }
    }

    /// Best available covering radius: the exact-bracket upper value at rank
    /// <= 3, the well-rounded bound otherwise.  The flag reports which.
    pub fn covering_radius_best(&self, resolution: f64) -> Result<(f64, bool)> {
        if self.rank <= 3 {
            let (_, upper) = self.covering_radius_estimate(resolution)?;
            Ok((upper, true))
        } else {
            Ok((self.covering_radius_bound()?, false))
        }
    }
}

/// Result of the covering-radius-driven Pisot unit search.
#[derive(Debug, Clone, Serialize)]
pub struct PisotSearchResult {
    pub unit: UnitExponentVector,
    pub log_coords: Vec<f64>,
    pub embedding_moduli: Vec<f64>,
    pub rho: f64,
    pub rho_is_exact: bool,
    pub epsilon_used: f64,
    pub retries: u32,
    /// Admissible interval for the leading log coordinate.
    pub window: [f64; 2],
    pub window_satisfied: bool,
}

/// Finds a Pisot unit by rounding the covering-radius target
/// ((r+s-1)(rho+eps), -(rho+eps), ..) to the lattice and verifying the
/// sign pattern; epsilon doubles on failure, up to 8 retries.
pub fn pisot_search(
    field: &FieldData,
    lattice: &LogUnitLattice,
    epsilon: f64,
) -> Result<PisotSearchResult> {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(Error::Parameter(format!("epsilon must be positive, got {epsilon}")));
    }
    let m = lattice.ambient_dim();
    let spread: f64 = lattice.basis().iter().map(|b| norm_inf(b)).sum();
    let (rho, rho_is_exact) = lattice.covering_radius_best(spread / 200.0)?;
    let mut eps_t = epsilon;
    let mut diagnostics = String::new();
    for attempt in 0..=8u32 {
        let mut target = vec![-(rho + eps_t); m];
        target[0] = (m as f64 - 1.0) * (rho + eps_t);
        let (coords, exps) = lattice.closest_vector_linf(&target)?;
        let emb = field.unit_embedding(&exps)?;
        let moduli = field.project(&emb)?.moduli();
        let signs_ok = coords[0] > 0.0 && coords[1..].iter().all(|&c| c < 0.0);
        let pisot_ok = is_pisot_moduli(&moduli);
        let window =
            [(m as f64 - 2.0) * rho + (m as f64 - 1.0) * eps_t, m as f64 * rho + (m as f64 - 1.0) * eps_t];
        let window_satisfied =
            coords[0] >= window[0] - 1e-9 && coords[0] <= window[1] + 1e-9;
        if signs_ok && pisot_ok && (!rho_is_exact || window_satisfied) {
            return Ok(PisotSearchResult {
                unit: UnitExponentVector::new(exps),
                log_coords: coords,
                embedding_moduli: moduli,
                rho,
                rho_is_exact,
                epsilon_used: eps_t,
                retries: attempt,
                window,
                window_satisfied,
            });
        }
        diagnostics = format!(
            "attempt {attempt}: eps {eps_t}, exponents {exps:?}, log coords {coords:?}, \
             signs_ok {signs_ok}, pisot_ok {pisot_ok}, window_ok {window_satisfied}"
        );
        eps_t *= 2.0;
    }
    Err(Error::PisotSearch { retries: 8, diagnostics })
}

/// A Pisot unit minimizing t_K(u), found by exhausting the cube that must
/// contain every Pisot unit at least as good as the search seed.
#[derive(Debug, Clone, Serialize)]
pub struct MinTPisot {
    pub unit: UnitExponentVector,
    pub t_sq: f64,
    pub log_t: f64,
}

pub fn min_t_pisot(field: &FieldData, lattice: &LogUnitLattice) -> Result<MinTPisot> {
    let seed = pisot_search(field, lattice, 0.01)?;
    let t0_sq = crate::reduction::t_k_from_moduli(&seed.embedding_moduli)?.powi(2);
    // Any Pisot unit with t(u) <= t0 satisfies ||Log u||_inf <= w_max log t0.
    let radius = field.signature.max_weight() * 0.5 * t0_sq.ln() + 1e-9;
    let mut best: Option<(f64, Vec<i64>)> = None;
    for p in lattice.enumerate_points(radius)? {
        if p.exponents.iter().all(|&e| e == 0) {
            continue;
        }
        let moduli = field.project(&field.unit_embedding(&p.exponents)?)?.moduli();
        if !is_pisot_moduli(&moduli) {
            continue;
        }
        let t_sq = crate::reduction::t_k_from_moduli(&moduli)?.powi(2);
        let better = match &best {
            None => true,
            Some((bt, be)) => {
                t_sq < bt - 1e-12 * bt.max(1.0)
                    || (t_sq <= bt + 1e-12 * bt.max(1.0) && p.exponents < *be)
            }
        };
        if better {
            best = Some((t_sq, p.exponents.clone()));
        }
    }
    let (t_sq, exps) = best.ok_or_else(|| Error::PisotSearch {
        retries: 0,
        diagnostics: "no Pisot unit inside the minimal-t cube".into(),
    })?;
    Ok(MinTPisot { unit: UnitExponentVector::new(exps), t_sq, log_t: 0.5 * t_sq.ln() })
}

/// Units that can contribute facets: the nonzero lattice points of the cube
/// of radius log t_K, with the Blichfeldt comparison after mapping the
/// slice volume through the lattice covolume.
#[derive(Debug, Clone, Serialize)]
pub struct FacetCandidates {
    pub min_t_unit: UnitExponentVector,
    pub t_sq: f64,
    pub log_t: f64,
    pub exponents: Vec<Vec<i64>>,
    /// Count of nonzero cube points; one unit per point modulo torsion.
    pub half_count: usize,
    /// Doubled for the torsion signs.
    pub signed_count: usize,
    pub count_with_zero: usize,
    pub slice_volume: f64,
    pub blichfeldt: f64,
    pub blichfeldt_ok: bool,
}

pub fn enumerate_facet_candidates(
    field: &FieldData,
    lattice: &LogUnitLattice,
) -> Result<FacetCandidates> {
    let mt = min_t_pisot(field, lattice)?;
    let points = lattice.enumerate_points(mt.log_t)?;
    let exponents: Vec<Vec<i64>> = points
        .iter()
        .filter(|p| p.exponents.iter().any(|&e| e != 0))
        .map(|p| p.exponents.clone())
        .collect();
    let half_count = exponents.len();
    let count_with_zero = half_count + 1;
    let slice_volume =
        crate::bounds::cube_slice_volume(2.0 * mt.log_t, lattice.ambient_dim() as u32)?;
    let rank = lattice.rank() as u32;
    let blichfeldt = crate::bounds::blichfeldt_bound(slice_volume / lattice.volume(), rank)?;
    Ok(FacetCandidates {
        min_t_unit: mt.unit,
        t_sq: mt.t_sq,
        log_t: mt.log_t,
        exponents,
        half_count,
        signed_count: 2 * half_count,
        count_with_zero,
        slice_volume,
        blichfeldt,
        blichfeldt_ok: (count_with_zero as f64) <= blichfeldt + 1e-9,
    })
}

/// Minimal Weil height over Pisot units, with the witness.  Complete: a
/// Pisot unit of height h has ||Log u||_inf = degree * h, so the cube of
/// radius degree * h(seed) contains every candidate at least as good.
pub fn min_height_pisot(
    field: &FieldData,
    lattice: &LogUnitLattice,
) -> Result<(f64, UnitExponentVector)> {
    let seed = pisot_search(field, lattice, 0.01)?;
    let degree = field.degree() as f64;
    let height = |coords: &[f64]| coords.iter().map(|&c| c.max(0.0)).sum::<f64>() / degree;
    let h0 = height(&seed.log_coords);
    let mut best: Option<(f64, Vec<i64>)> = None;
    for p in lattice.enumerate_points(degree * h0 + 1e-9)? {
        if p.exponents.iter().all(|&e| e == 0) {
            continue;
        }
        let moduli = field.project(&field.unit_embedding(&p.exponents)?)?.moduli();
        if !is_pisot_moduli(&moduli) {
            continue;
        }
        let h = height(&p.coords);
        let better = match &best {
            None => true,
            Some((bh, be)) => h < bh - 1e-12 || (h <= bh + 1e-12 && p.exponents < *be),
        };
        if better {
            best = Some((h, p.exponents.clone()));
        }
    }
    let (h, exps) = best.ok_or_else(|| Error::PisotSearch {
        retries: 0,
        diagnostics: "no Pisot unit inside the minimal-height cube".into(),
    })?;
    Ok((h, UnitExponentVector::new(exps)))
}
