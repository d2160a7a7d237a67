//! Rank-2 machinery for totally real cubic fields: greedy l-infinity basis
//! reduction, the short-vector candidate set
//! S = {(0,0), (1,0), (0,1), (1,1), (2,1), (1,2)}, and enumeration-based
//! scans confirming that every other coefficient pair reaches twice the
//! first minimum.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Absolute values of coefficient pairs exempt from the 2-lambda bound.
pub const SHORT_PAIRS: [(i64, i64); 6] = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2)];

/// A reduced rank-2 basis of the trace-zero plane in R^3.
#[derive(Debug, Clone, Serialize)]
pub struct Rank2Basis {
    pub b1: [f64; 3],
    pub b2: [f64; 3],
    /// First l-infinity minimum of the spanned lattice.
    pub lambda_inf: f64,
    /// All six coordinate quantities |alpha|, |beta|, |alpha+beta|, ... are
    /// nonzero; scans require this.
    pub hypothesis_ok: bool,
}

fn norm_inf3(v: &[f64; 3]) -> f64 {
    v[0].abs().max(v[1].abs()).max(v[2].abs())
}

fn combine(x: i64, y: i64, b1: &[f64; 3], b2: &[f64; 3]) -> [f64; 3] {
    [
        x as f64 * b1[0] + y as f64 * b2[0],
        x as f64 * b1[1] + y as f64 * b2[1],
        x as f64 * b1[2] + y as f64 * b2[2],
    ]
}

fn check_in_plane(v: &[f64; 3]) -> Result<()> {
    let sum = v[0] + v[1] + v[2];
    if sum.abs() > 1e-7 * norm_inf3(v).max(1.0) {
        return Err(Error::Parameter(format!("vector {v:?} has coordinate sum {sum}")));
    }
    Ok(())
}

/// Greedy Gauss-style reduction: swap so ||b1|| <= ||b2|| and replace b2 by
/// b2 +- b1 while the norm strictly drops.  The fixpoint satisfies
/// ||b1|| <= ||b2|| <= ||b1 +- b2||.
pub fn reduce_basis_linf_rank2(b1: [f64; 3], b2: [f64; 3]) -> Result<Rank2Basis> {
    check_in_plane(&b1)?;
    check_in_plane(&b2)?;
    let mut u = b1;
    let mut v = b2;
    // Independence: the cross of two plane vectors vanishes iff parallel.
    let cross = [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ];
    if norm_inf3(&cross) <= 1e-12 * (norm_inf3(&u) * norm_inf3(&v)).max(1e-300) {
        return Err(Error::DependentGenerators);
    }
    for _ in 0..10_000 {
        if norm_inf3(&u) > norm_inf3(&v) {
            std::mem::swap(&mut u, &mut v);
        }
        let plus = combine(1, 1, &u, &v);
        let minus = combine(-1, 1, &u, &v);
        let (cand, norm) = if norm_inf3(&plus) <= norm_inf3(&minus) {
            (plus, norm_inf3(&plus))
        } else {
            (minus, norm_inf3(&minus))
        };
        if norm < norm_inf3(&v) * (1.0 - 1e-12) {
            v = cand;
        } else {
            break;
        }
    }
    if norm_inf3(&u) > norm_inf3(&v) {
        std::mem::swap(&mut u, &mut v);
    }
    // lambda_1 is attained among small coefficient pairs once the basis is
    // reduced; a 3-box is already generous.
    let mut lambda = f64::INFINITY;
    for x in -3i64..=3 {
        for y in -3i64..=3 {
            if x == 0 && y == 0 {
                continue;
            }
            lambda = lambda.min(norm_inf3(&combine(x, y, &u, &v)));
        }
    }
    let hypothesis_ok = u.iter().chain(v.iter()).all(|c| c.abs() > 1e-9);
    Ok(Rank2Basis { b1: u, b2: v, lambda_inf: lambda, hypothesis_ok })
}

impl Rank2Basis {
    /// Verifies ||b1|| <= ||b2|| <= ||b1 +- b2|| with a hair of slack.
    pub fn satisfies_order_inequalities(&self) -> bool {
        let n1 = norm_inf3(&self.b1);
        let n2 = norm_inf3(&self.b2);
        let np = norm_inf3(&combine(1, 1, &self.b1, &self.b2));
        let nm = norm_inf3(&combine(-1, 1, &self.b1, &self.b2));
        n1 <= n2 * (1.0 + 1e-12) && n2 <= np * (1.0 + 1e-12) && n2 <= nm * (1.0 + 1e-12)
    }
}

/// Coefficient pairs violating the 2-lambda bound outside the exempt set;
/// expected empty whenever the basis hypothesis holds.
pub fn scan_short_violations(basis: &Rank2Basis, search_bound: i64) -> Vec<(i64, i64)> {
    let mut violations = Vec::new();
    for x in -search_bound..=search_bound {
        for y in -search_bound..=search_bound {
            if SHORT_PAIRS.contains(&(x.abs(), y.abs())) {
                continue;
            }
            let norm = norm_inf3(&combine(x, y, &basis.b1, &basis.b2));
            if norm < 2.0 * basis.lambda_inf * (1.0 - 1e-9) {
                violations.push((x, y));
            }
        }
    }
    violations
}

/// Norm-form relaxation of t_K for totally real cubics with Pisot modulus u:
/// sqrt(1 + (u^2 - 1)^2).
pub fn cubic_t_bound(u_modulus: f64) -> f64 {
    let e = u_modulus * u_modulus - 1.0;
    (1.0 + e * e).sqrt()
}

/// Facet candidates of the cubic cube: integer pairs with
/// ||x b1 + y b2|| <= (1/2) log(1 + (exp(2 lambda) - 1)^2), and whether all
/// of them fall in the exempt set up to signs.
#[derive(Debug, Clone, Serialize)]
pub struct CubicFacetReport {
    pub lambda_inf: f64,
    pub norm_bound: f64,
    pub candidates: Vec<(i64, i64)>,
    pub within_short_pairs: bool,
}

pub fn cubic_facet_candidates(basis: &Rank2Basis) -> CubicFacetReport {
    let lam = basis.lambda_inf;
    let e = (2.0 * lam).exp() - 1.0;
    let norm_bound = 0.5 * (1.0 + e * e).ln();
    let mut candidates = Vec::new();
    let mut within = true;
    for x in -10i64..=10 {
        for y in -10i64..=10 {
            let norm = norm_inf3(&combine(x, y, &basis.b1, &basis.b2));
            if norm <= norm_bound * (1.0 + 1e-12) {
                if !SHORT_PAIRS.contains(&(x.abs(), y.abs())) {
                    within = false;
                }
                candidates.push((x, y));
            }
        }
    }
    CubicFacetReport { lambda_inf: lam, norm_bound, candidates, within_short_pairs: within }
}

/// Seeded random plane vector with entries uniform in [-1, 1].
fn random_plane_vector(rng: &mut ChaCha8Rng) -> [f64; 3] {
    let a: f64 = rng.random_range(-1.0..1.0);
    let b: f64 = rng.random_range(-1.0..1.0);
    [a, b, -a - b]
}

/// Aggregate statistics of a seeded random-basis scan.
#[derive(Debug, Clone, Serialize)]
pub struct RandomBasisScanStats {
    pub samples: usize,
    pub seed: u64,
    pub search_bound: i64,
    pub rejected_degenerate: usize,
    pub total_violations: usize,
    pub lambda_min: f64,
    pub lambda_max: f64,
}

/// Draws `samples` random reduced bases (rejection-sampling degenerate
/// ones) and scans each; deterministic for a fixed seed.
pub fn random_reduced_basis_scan(samples: usize, seed: u64, search_bound: i64) -> RandomBasisScanStats {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = RandomBasisScanStats {
        samples,
        seed,
        search_bound,
        rejected_degenerate: 0,
        total_violations: 0,
        lambda_min: f64::INFINITY,
        lambda_max: 0.0,
    };
    let mut done = 0;
    while done < samples {
        let b1 = random_plane_vector(&mut rng);
        let b2 = random_plane_vector(&mut rng);
        let basis = match reduce_basis_linf_rank2(b1, b2) {
            Ok(b) => b,
            Err(_) => {
                stats.rejected_degenerate += 1;
                continue;
            }
        };
        if !basis.hypothesis_ok {
            stats.rejected_degenerate += 1;
            continue;
        }
        stats.lambda_min = stats.lambda_min.min(basis.lambda_inf);
        stats.lambda_max = stats.lambda_max.max(basis.lambda_inf);
        stats.total_violations += scan_short_violations(&basis, search_bound).len();
        done += 1;
    }
    stats
}
