//! JSON field files and the bundled fields.
//!
//! Numbers are serialized as decimal strings at the field's working
//! precision, so generated files are identical across platforms and
//! round-trip bit-for-bit.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::error::{Error, Result};
use crate::field::{FieldData, Signature};
use crate::pell::pell_fundamental_unit;

/// On-disk schema of a field file.  Every [re, im] pair is a decimal-string
/// pair; `integral_basis` is row-major n*n; permutations are 1-based.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldFile {
    pub name: String,
    pub r: usize,
    pub s: usize,
    pub precision_digits: usize,
    pub integral_basis: Vec<[String; 2]>,
    pub unit_generators: Vec<Vec<[String; 2]>>,
    pub torsion_order: u32,
    pub galois_perms: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regulator_hint: Option<String>,
}

/// Fixed-precision scientific notation; stable across platforms and exact
/// to re-parse at 17 significant digits.
pub fn format_decimal(v: f64, digits: usize) -> String {
    format!("{:.*e}", digits.saturating_sub(1), v)
}

fn parse_decimal(s: &str, what: &str) -> Result<f64> {
    let v: f64 = s
        .parse()
        .map_err(|_| Error::FieldInvariant(format!("{what}: unparsable number {s:?}")))?;
    if !v.is_finite() {
        return Err(Error::FieldInvariant(format!("{what}: non-finite number {s:?}")));
    }
    Ok(v)
}

fn pair(z: Complex64, digits: usize) -> [String; 2] {
    [format_decimal(z.re, digits), format_decimal(z.im, digits)]
}

impl FieldFile {
    pub fn from_field(field: &FieldData) -> Self {
        let digits = field.precision_digits;
        let n = field.degree();
        let mut integral_basis = Vec::with_capacity(n * n);
        for row in &field.basis_embeddings {
            for &z in row {
                integral_basis.push(pair(z, digits));
            }
        }
        FieldFile {
            name: field.name.clone(),
            r: field.signature.r,
            s: field.signature.s,
            precision_digits: digits,
            integral_basis,
            unit_generators: field
                .unit_generators
                .iter()
                .map(|g| g.iter().map(|&z| pair(z, digits)).collect())
                .collect(),
            torsion_order: field.torsion_order,
            galois_perms: field
                .galois_perms
                .iter()
                .map(|p| p.iter().map(|&i| i + 1).collect())
                .collect(),
            regulator_hint: field.regulator_hint.map(|v| format_decimal(v, digits)),
        }
    }

    /// Builds and validates the in-memory field data.
    pub fn into_field(self) -> Result<FieldData> {
        let signature = Signature::new(self.r, self.s)?;
        let n = signature.degree();
        if self.integral_basis.len() != n * n {
            return Err(Error::FieldInvariant(format!(
                "integral_basis has {} entries, expected {}",
                self.integral_basis.len(),
                n * n
            )));
        }
        let mut basis_embeddings = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for (k, p) in self.integral_basis.iter().enumerate() {
            basis_embeddings[k / n][k % n] = Complex64::new(
                parse_decimal(&p[0], "integral_basis")?,
                parse_decimal(&p[1], "integral_basis")?,
            );
        }
        let mut unit_generators = Vec::with_capacity(self.unit_generators.len());
        for g in &self.unit_generators {
            let mut tuple = Vec::with_capacity(g.len());
            for p in g {
                tuple.push(Complex64::new(
                    parse_decimal(&p[0], "unit_generators")?,
                    parse_decimal(&p[1], "unit_generators")?,
                ));
            }
            unit_generators.push(tuple);
        }
        let mut galois_perms = Vec::with_capacity(self.galois_perms.len());
        for (i, p) in self.galois_perms.iter().enumerate() {
            let mut q = Vec::with_capacity(p.len());
            for &v in p {
                if v == 0 || v > n {
                    return Err(Error::FieldInvariant(format!(
                        "galois_perms[{}] holds {v}, outside 1..={n}",
                        i + 1
                    )));
                }
                q.push(v - 1);
            }
            galois_perms.push(q);
        }
        let regulator_hint = match &self.regulator_hint {
            Some(s) => Some(parse_decimal(s, "regulator_hint")?),
            None => None,
        };
        let field = FieldData {
            name: self.name,
            signature,
            basis_embeddings,
            unit_generators,
            torsion_order: self.torsion_order,
            galois_perms,
            precision_digits: self.precision_digits,
            regulator_hint,
        };
        field.validate()?;
        Ok(field)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("field file serialization");
        s.push('\n');
        s
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

pub fn save_field_file(field: &FieldData, path: &Path) -> Result<()> {
    std::fs::write(path, FieldFile::from_field(field).to_json_string())?;
    Ok(())
}

pub fn load_field_file(path: &Path) -> Result<FieldData> {
    let text = std::fs::read_to_string(path)?;
    FieldFile::from_json_str(&text)?.into_field()
}

/// Field data for Q(sqrt(d)), d squarefree, with the exact Pell fundamental
/// unit as generator.
pub fn quadratic_field(d: u64) -> Result<FieldData> {
    use num_traits::ToPrimitive;
    let pell = pell_fundamental_unit(d)?;
    if pell.regulator > 700.0 {
        return Err(Error::Overflow(format!(
            "fundamental unit of Q(sqrt({d})) exceeds f64 range (regulator {})",
            pell.regulator
        )));
    }
    let sqrt_d = (d as f64).sqrt();
    let (omega, omega_conj) = if d % 4 == 1 {
        ((1.0 + sqrt_d) / 2.0, (1.0 - sqrt_d) / 2.0)
    } else {
        (sqrt_d, -sqrt_d)
    };
    let eps = (pell.p.to_f64().unwrap() + pell.q.to_f64().unwrap() * sqrt_d) / pell.denom as f64;
    // The conjugate by the norm equation; subtracting the surd would cancel
    // catastrophically for large units.
    let eps_conj = pell.norm as f64 / eps;
    let re = |v: f64| Complex64::new(v, 0.0);
    let field = FieldData {
        name: format!("Q(sqrt{d})"),
        signature: Signature::new(2, 0)?,
        basis_embeddings: vec![vec![re(1.0), re(omega)], vec![re(1.0), re(omega_conj)]],
        unit_generators: vec![vec![re(eps), re(eps_conj)]],
        torsion_order: 2,
        galois_perms: vec![vec![0, 1], vec![1, 0]],
        precision_digits: 17,
        regulator_hint: Some(pell.regulator),
    };
    field.validate()?;
    Ok(field)
}

/// The totally complex quartic field of fifth roots of unity: r = 0, s = 2,
/// cyclic Galois group of order 4, unit group generated by the golden ratio.
pub fn zeta5_field() -> FieldData {
    use std::f64::consts::PI;
    let zeta = |k: i64| Complex64::from_polar(1.0, 2.0 * PI * (k.rem_euclid(5)) as f64 / 5.0);
    // Embedding i sends zeta to zeta^{e_i}; rows 3, 4 conjugate rows 1, 2.
    let exps: [i64; 4] = [1, 2, 4, 3];
    let basis_embeddings: Vec<Vec<Complex64>> = exps
        .iter()
        .map(|&e| (0..4).map(|j| zeta(e * j as i64)).collect())
        .collect();
    // Golden ratio as -zeta^2 - zeta^3.
    let phi_tuple: Vec<Complex64> = exps
        .iter()
        .map(|&e| -zeta(2 * e) - zeta(3 * e))
        .collect();
    let field = FieldData {
        name: "Q(zeta5)".into(),
        signature: Signature::new(0, 2).unwrap(),
        basis_embeddings,
        unit_generators: vec![phi_tuple],
        torsion_order: 10,
        galois_perms: vec![
            vec![0, 1, 2, 3], // identity
            vec![1, 2, 3, 0], // zeta -> zeta^2
            vec![2, 3, 0, 1], // zeta -> zeta^4 (conjugation)
            vec![3, 0, 1, 2], // zeta -> zeta^3
        ],
        precision_digits: 17,
        regulator_hint: Some(2.0 * ((1.0 + 5.0_f64.sqrt()) / 2.0).ln()),
    };
    field.validate().expect("zeta5 field data");
    field
}

/// The totally real cubic subfield of seventh roots of unity: cyclic Galois
/// group of order 3, units eta = 2 cos(2 pi / 7) and its conjugate.
pub fn zeta7_plus_field() -> FieldData {
    use std::f64::consts::PI;
    let eta: Vec<f64> = (1..=3).map(|k| 2.0 * (2.0 * PI * k as f64 / 7.0).cos()).collect();
    let re = |v: f64| Complex64::new(v, 0.0);
    // Basis 1, eta, eta^2; the automorphism eta -> eta^2 - 2 cycles the
    // embeddings 1 -> 2 -> 3 -> 1.
    let basis_embeddings: Vec<Vec<Complex64>> =
        eta.iter().map(|&e| vec![re(1.0), re(e), re(e * e)]).collect();
    let gen1: Vec<Complex64> = eta.iter().map(|&e| re(e)).collect();
    let gen2: Vec<Complex64> = eta.iter().map(|&e| re(e * e - 2.0)).collect();
    // Regulator of the full unit group: minor determinant of the two log rows.
    let l: Vec<f64> = eta.iter().map(|&e| e.abs().ln()).collect();
    let reg = (l[0] * l[2] - l[1] * l[1]).abs();
    let field = FieldData {
        name: "Q(zeta7)+".into(),
        signature: Signature::new(3, 0).unwrap(),
        basis_embeddings,
        unit_generators: vec![gen1, gen2],
        torsion_order: 2,
        galois_perms: vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
        precision_digits: 17,
        regulator_hint: Some(reg),
    };
    field.validate().expect("zeta7+ field data");
    field
}

/// Names of the fields shipped under `fields/`.
pub const BUNDLED_FIELDS: [&str; 6] =
    ["qsqrt2", "qsqrt3", "qsqrt5", "qsqrt13", "zeta5", "zeta7plus"];

/// Rebuilds a bundled field from first principles (not from disk).
pub fn builtin_field(name: &str) -> Result<FieldData> {
    match name {
        "qsqrt2" => quadratic_field(2),
        "qsqrt3" => quadratic_field(3),
        "qsqrt5" => quadratic_field(5),
        "qsqrt13" => quadratic_field(13),
        "zeta5" => Ok(zeta5_field()),
        "zeta7plus" => Ok(zeta7_plus_field()),
        other => Err(Error::Parameter(format!("unknown bundled field {other:?}"))),
    }
}
