//! Arithmetic in K_R = R^r x C^s: componentwise products, the conjugation
//! involution, traces and trace forms, the weighted logarithmic embedding,
//! Weil heights, and the Galois action on embedding tuples.
//!
//! Embedding tuples list sigma_1..sigma_r (real rows), then one row per
//! complex-conjugate pair, then the s conjugate rows.  K_R values carry the
//! first r+s coordinates only; traces and log embeddings weight the complex
//! block by 2.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

/// Absolute comparison tolerance used for strict modulus tests and
/// invariant checks.
pub const TOL: f64 = 1e-9;

/// Field signature: r real embeddings, s complex-conjugate pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub r: usize,
    pub s: usize,
}

impl Signature {
    pub fn new(r: usize, s: usize) -> Result<Self> {
        if r + 2 * s < 2 {
            return Err(Error::InvalidSignature { r, s });
        }
        Ok(Self { r, s })
    }

    /// Field degree n = r + 2s.
    pub fn degree(&self) -> usize {
        self.r + 2 * self.s
    }

    /// Number of K_R coordinates, r + s.
    pub fn arity(&self) -> usize {
        self.r + self.s
    }

    /// Unit-group rank r + s - 1.
    pub fn unit_rank(&self) -> usize {
        self.r + self.s - 1
    }

    /// Trace weight of coordinate `i` (0-based): 1 on the real block, 2 on
    /// the complex block.
    pub fn weight(&self, i: usize) -> f64 {
        if i < self.r {
            1.0
        } else {
            2.0
        }
    }

    pub fn is_totally_real(&self) -> bool {
        self.s == 0
    }

    pub fn is_totally_complex(&self) -> bool {
        self.r == 0
    }

    /// Largest trace weight over coordinates.
    pub fn max_weight(&self) -> f64 {
        if self.s > 0 {
            2.0
        } else {
            1.0
        }
    }
}

/// A point of K_R = R^r x C^s.
#[derive(Debug, Clone, PartialEq)]
pub struct KREElement {
    sig: Signature,
    real: Vec<f64>,
    complex: Vec<Complex64>,
}

impl KREElement {
    pub fn new(sig: Signature, real: Vec<f64>, complex: Vec<Complex64>) -> Result<Self> {
        if real.len() != sig.r || complex.len() != sig.s {
            return Err(Error::SignatureMismatch(sig.r, sig.s, real.len(), complex.len()));
        }
        if real.iter().any(|x| !x.is_finite())
            || complex.iter().any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite("KREElement coordinates"));
        }
        Ok(Self { sig, real, complex })
    }

    /// The multiplicative identity (1, ..., 1).
    pub fn one(sig: Signature) -> Self {
        Self {
            sig,
            real: vec![1.0; sig.r],
            complex: vec![Complex64::new(1.0, 0.0); sig.s],
        }
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn real_part(&self) -> &[f64] {
        &self.real
    }

    pub fn complex_part(&self) -> &[Complex64] {
        &self.complex
    }

    /// Coordinate `i` (0-based) as a complex number.
    pub fn coord(&self, i: usize) -> Complex64 {
        if i < self.sig.r {
            Complex64::new(self.real[i], 0.0)
        } else {
            self.complex[i - self.sig.r]
        }
    }

    pub fn modulus(&self, i: usize) -> f64 {
        self.coord(i).norm()
    }

    pub fn moduli(&self) -> Vec<f64> {
        (0..self.sig.arity()).map(|i| self.modulus(i)).collect()
    }

    /// Componentwise product; both operands must share a signature.
    pub fn mul(&self, rhs: &KREElement) -> Result<KREElement> {
        if self.sig != rhs.sig {
            return Err(Error::SignatureMismatch(self.sig.r, self.sig.s, rhs.sig.r, rhs.sig.s));
        }
        Ok(KREElement {
            sig: self.sig,
            real: self.real.iter().zip(&rhs.real).map(|(a, b)| a * b).collect(),
            complex: self
                .complex
                .iter()
                .zip(&rhs.complex)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    /// The canonical involution: identity on the real block, conjugation on
    /// the complex block.
    pub fn involution(&self) -> KREElement {
        KREElement {
            sig: self.sig,
            real: self.real.clone(),
            complex: self.complex.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Tr(x) = sum of real coordinates plus twice the real parts of the
    /// complex ones.
    pub fn trace(&self) -> f64 {
        let re: f64 = self.real.iter().sum();
        let cx: f64 = self.complex.iter().map(|z| z.re).sum();
        re + 2.0 * cx
    }

    /// Weighted logarithmic embedding
    /// (log|x_1|, .., log|x_r|, 2 log|x_{r+1}|, .., 2 log|x_{r+s}|).
    pub fn log_embedding(&self) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(self.sig.arity());
        for i in 0..self.sig.arity() {
            let m = self.modulus(i);
            if m <= 0.0 || !m.is_finite() {
                return Err(Error::ZeroCoordinate(i));
            }
            out.push(self.sig.weight(i) * m.ln());
        }
        Ok(out)
    }

    /// Logarithmic Weil height h(x) = (1/degree) * sum of weighted positive
    /// log moduli.
    pub fn weil_height(&self, degree: usize) -> Result<f64> {
        let mut sum = 0.0;
        for i in 0..self.sig.arity() {
            let m = self.modulus(i);
            if m <= 0.0 || !m.is_finite() {
                return Err(Error::ZeroCoordinate(i));
            }
            sum += self.sig.weight(i) * m.ln().max(0.0);
        }
        Ok(sum / degree as f64)
    }

    /// Pisot test on the tuple as ordered: coordinate 1 strictly above
    /// modulus 1, all others strictly below, by margin `TOL`.
    pub fn is_pisot(&self) -> bool {
        let m = self.moduli();
        m[0] > 1.0 + TOL && m[1..].iter().all(|&x| x < 1.0 - TOL)
    }

    pub fn sorted_moduli_desc(&self) -> Vec<f64> {
        let mut m = self.moduli();
        m.sort_by(|a, b| b.total_cmp(a));
        m
    }
}

/// Order-insensitive Pisot test: exactly one modulus strictly above 1 and
/// every other strictly below, by margin `TOL`.
pub fn is_pisot_moduli(moduli: &[f64]) -> bool {
    let above = moduli.iter().filter(|&&m| m > 1.0 + TOL).count();
    let below = moduli.iter().filter(|&&m| m < 1.0 - TOL).count();
    above == 1 && below == moduli.len() - 1
}

/// A totally positive element: r+s strictly positive real coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct TotallyPositiveElement {
    sig: Signature,
    coords: Vec<f64>,
}

impl TotallyPositiveElement {
    pub fn new(sig: Signature, coords: Vec<f64>) -> Result<Self> {
        if coords.len() != sig.arity() {
            return Err(Error::SignatureMismatch(sig.r, sig.s, coords.len(), 0));
        }
        for (i, &c) in coords.iter().enumerate() {
            if !(c > 0.0) || !c.is_finite() {
                return Err(Error::Parameter(format!(
                    "totally positive element needs coordinate {} > 0, got {c}",
                    i + 1
                )));
            }
        }
        Ok(Self { sig, coords })
    }

    pub fn ones(sig: Signature) -> Self {
        Self { sig, coords: vec![1.0; sig.arity()] }
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Tr(a) with complex coordinates weighted by 2.
    pub fn trace(&self) -> f64 {
        self.coords
            .iter()
            .enumerate()
            .map(|(i, &a)| self.sig.weight(i) * a)
            .sum()
    }

    /// The unary form value Tr(a x x^*) = sum_i w_i a_i |x_i|^2.
    pub fn form_value(&self, x: &KREElement) -> Result<f64> {
        if self.sig != x.signature() {
            return Err(Error::SignatureMismatch(
                self.sig.r,
                self.sig.s,
                x.signature().r,
                x.signature().s,
            ));
        }
        Ok(self
            .coords
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let m = x.modulus(i);
                self.sig.weight(i) * a * m * m
            })
            .sum())
    }

    /// a v v^*: componentwise scaling by the squared moduli of `v`.
    pub fn scale_by_unit_square(&self, v: &KREElement) -> Result<TotallyPositiveElement> {
        if self.sig != v.signature() {
            return Err(Error::SignatureMismatch(
                self.sig.r,
                self.sig.s,
                v.signature().r,
                v.signature().s,
            ));
        }
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let m = v.modulus(i);
                a * m * m
            })
            .collect();
        TotallyPositiveElement::new(self.sig, coords)
    }
}

/// Numerical data of a Galois number field: integral-basis embeddings, unit
/// generators, torsion order, and the Galois action on embedding indices.
#[derive(Debug, Clone)]
pub struct FieldData {
    pub name: String,
    pub signature: Signature,
    /// n x n; entry `[i][j]` = sigma_{i+1}(omega_{j+1}).
    pub basis_embeddings: Vec<Vec<Complex64>>,
    /// r+s-1 fundamental units, each a full n-embedding tuple.
    pub unit_generators: Vec<Vec<Complex64>>,
    pub torsion_order: u32,
    /// 0-based; `perms[i][k] = m` means sigma_{k+1}(tau_i(x)) = sigma_{m+1}(x),
    /// where tau_i is the automorphism with sigma_1 . tau_i = sigma_{i+1}.
    pub galois_perms: Vec<Vec<usize>>,
    pub precision_digits: usize,
    pub regulator_hint: Option<f64>,
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(b.norm()).max(1.0)
}

impl FieldData {
    pub fn degree(&self) -> usize {
        self.signature.degree()
    }

    pub fn arity(&self) -> usize {
        self.signature.arity()
    }

    /// Checks every structural invariant; error messages name the violated one.
    pub fn validate(&self) -> Result<()> {
        let n = self.degree();
        let (r, s) = (self.signature.r, self.signature.s);
        if self.basis_embeddings.len() != n
            || self.basis_embeddings.iter().any(|row| row.len() != n)
        {
            return Err(Error::FieldInvariant(format!(
                "integral basis embedding matrix must be {n}x{n}"
            )));
        }
        for row in &self.basis_embeddings {
            for z in row {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::FieldInvariant("non-finite basis embedding".into()));
                }
            }
        }
        // Real rows carry no imaginary part; conjugate rows mirror the
        // complex block.
        for (i, row) in self.basis_embeddings.iter().take(r).enumerate() {
            for z in row {
                if z.im.abs() > 1e-7 * z.norm().max(1.0) {
                    return Err(Error::FieldInvariant(format!(
                        "real embedding row {} has imaginary part",
                        i + 1
                    )));
                }
            }
        }
        for k in 0..s {
            for j in 0..n {
                let a = self.basis_embeddings[r + s + k][j];
                let b = self.basis_embeddings[r + k][j].conj();
                if !close(a, b, 1e-7) {
                    return Err(Error::FieldInvariant(format!(
                        "row {} is not the conjugate of row {}",
                        r + s + k + 1,
                        r + k + 1
                    )));
                }
            }
        }
        // |det|^2 is the absolute discriminant: a positive integer.
        let d = linalg::complex_det(&self.basis_embeddings).norm_sqr();
        if !(d > 0.5) {
            return Err(Error::FieldInvariant(format!(
                "embedding matrix determinant gives |det|^2 = {d}, not a positive discriminant"
            )));
        }
        if (d - d.round()).abs() > 1e-6 * d.max(1.0) {
            return Err(Error::FieldInvariant(format!(
                "|det|^2 = {d} is not consistent with an integral discriminant"
            )));
        }
        // Unit generators: count, shape, conjugate structure, norm 1.
        if self.unit_generators.len() != self.signature.unit_rank() {
            return Err(Error::FieldInvariant(format!(
                "expected {} unit generators, found {}",
                self.signature.unit_rank(),
                self.unit_generators.len()
            )));
        }
        for (gi, g) in self.unit_generators.iter().enumerate() {
            if g.len() != n {
                return Err(Error::FieldInvariant(format!(
                    "unit generator {} must list all {n} embeddings",
                    gi + 1
                )));
            }
            for z in g {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::FieldInvariant("non-finite unit embedding".into()));
                }
            }
            for (i, z) in g.iter().take(r).enumerate() {
                if z.im.abs() > 1e-7 * z.norm().max(1.0) {
                    return Err(Error::FieldInvariant(format!(
                        "unit generator {} row {} has imaginary part",
                        gi + 1,
                        i + 1
                    )));
                }
            }
            for k in 0..s {
                if !close(g[r + s + k], g[r + k].conj(), 1e-7) {
                    return Err(Error::FieldInvariant(format!(
                        "unit generator {} rows {} and {} are not conjugate",
                        gi + 1,
                        r + k + 1,
                        r + s + k + 1
                    )));
                }
            }
            let norm: f64 = g.iter().map(|z| z.norm()).product();
            if (norm - 1.0).abs() > TOL {
                return Err(Error::GeneratorNorm { index: gi + 1, norm });
            }
        }
        // Galois permutations: one per embedding, forming a group, with the
        // indexing convention perms[i][0] == i (and perms[0] the identity).
        if self.galois_perms.len() != n {
            return Err(Error::FieldInvariant(format!(
                "expected {n} Galois permutations, found {}",
                self.galois_perms.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for (i, p) in self.galois_perms.iter().enumerate() {
            if p.len() != n {
                return Err(Error::FieldInvariant(format!(
                    "Galois permutation {} has length {}, expected {n}",
                    i + 1,
                    p.len()
                )));
            }
            let mut hit = vec![false; n];
            for &v in p {
                if v >= n || hit[v] {
                    return Err(Error::FieldInvariant(format!(
                        "Galois permutation {} is not a permutation of 1..={n}",
                        i + 1
                    )));
                }
                hit[v] = true;
            }
            if p[0] != i {
                return Err(Error::FieldInvariant(format!(
                    "Galois permutation {} must send index 1 to {} (embedding indexing)",
                    i + 1,
                    i + 1
                )));
            }
            seen.insert(p.clone());
        }
        if self.galois_perms[0] != (0..n).collect::<Vec<_>>() {
            return Err(Error::FieldInvariant(
                "first Galois permutation must be the identity".into(),
            ));
        }
        for p in &self.galois_perms {
            for q in &self.galois_perms {
                let comp: Vec<usize> = (0..n).map(|k| q[p[k]]).collect();
                if !seen.contains(&comp) {
                    return Err(Error::FieldInvariant(
                        "Galois permutations are not closed under composition".into(),
                    ));
                }
            }
        }
        if self.torsion_order == 0 {
            return Err(Error::FieldInvariant("torsion order must be positive".into()));
        }
        if self.precision_digits == 0 || self.precision_digits > 60 {
            return Err(Error::FieldInvariant(format!(
                "precision_digits {} outside 1..=60",
                self.precision_digits
            )));
        }
        Ok(())
    }

    /// Full n-embedding tuple of the integer with the given integral-basis
    /// coordinates.
    pub fn embed_coeffs(&self, coeffs: &[i64]) -> Vec<Complex64> {
        let n = self.degree();
        (0..n)
            .map(|i| {
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, &c)| self.basis_embeddings[i][j] * c as f64)
                    .sum()
            })
            .collect()
    }

    pub fn integer_element(&self, coeffs: Vec<i64>) -> Result<IntegerElement> {
        if coeffs.len() != self.degree() {
            return Err(Error::Parameter(format!(
                "integer element needs {} coordinates, got {}",
                self.degree(),
                coeffs.len()
            )));
        }
        let embedding = self.embed_coeffs(&coeffs);
        Ok(IntegerElement { coeffs, embedding })
    }

    /// Projects a full n-embedding tuple to its K_R representative.
    pub fn project(&self, full: &[Complex64]) -> Result<KREElement> {
        let (r, s) = (self.signature.r, self.signature.s);
        if full.len() != self.degree() {
            return Err(Error::Parameter(format!(
                "embedding tuple has length {}, expected {}",
                full.len(),
                self.degree()
            )));
        }
        let mut real = Vec::with_capacity(r);
        for (i, z) in full.iter().take(r).enumerate() {
            if z.im.abs() > 1e-6 * z.norm().max(1.0) {
                return Err(Error::FieldInvariant(format!(
                    "embedding {} should be real, got imaginary part {}",
                    i + 1,
                    z.im
                )));
            }
            real.push(z.re);
        }
        let complex = full[r..r + s].to_vec();
        KREElement::new(self.signature, real, complex)
    }

    /// Applies the automorphism `index` (1-based, matching the embedding it
    /// corresponds to) to a full embedding tuple.
    pub fn apply_galois_full(&self, index: usize, full: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.degree();
        if index == 0 || index > n {
            return Err(Error::AutomorphismIndex { index, n });
        }
        if full.len() != n {
            return Err(Error::Parameter(format!(
                "embedding tuple has length {}, expected {n}",
                full.len()
            )));
        }
        let p = &self.galois_perms[index - 1];
        Ok((0..n).map(|k| full[p[k]]).collect())
    }

    /// Galois action followed by projection to K_R.
    pub fn apply_galois(&self, index: usize, full: &[Complex64]) -> Result<KREElement> {
        self.project(&self.apply_galois_full(index, full)?)
    }

    /// Full embedding tuple of the unit with the given generator exponents.
    /// Torsion is not applied; it never changes a modulus.
    pub fn unit_embedding(&self, exponents: &[i64]) -> Result<Vec<Complex64>> {
        if exponents.len() != self.unit_generators.len() {
            return Err(Error::Parameter(format!(
                "exponent vector has length {}, expected {}",
                exponents.len(),
                self.unit_generators.len()
            )));
        }
        let n = self.degree();
        let mut out = vec![Complex64::new(1.0, 0.0); n];
        for (g, &e) in self.unit_generators.iter().zip(exponents) {
            if e == 0 {
                continue;
            }
            for (o, &z) in out.iter_mut().zip(g) {
                *o *= z.powi(e as i32);
            }
        }
        Ok(out)
    }
}

/// An algebraic integer as integral-basis coordinates with its cached
/// embedding tuple.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegerElement {
    pub coeffs: Vec<i64>,
    pub embedding: Vec<Complex64>,
}

impl IntegerElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Torsion detection: every embedding modulus equals 1 within `TOL`.
    pub fn is_torsion(&self) -> bool {
        !self.is_zero() && self.embedding.iter().all(|z| (z.norm() - 1.0).abs() <= TOL)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    fn sig(r: usize, s: usize) -> Signature {
        Signature::new(r, s).unwrap()
    }

    fn kre2(a: f64, b: f64) -> KREElement {
        KREElement::new(sig(2, 0), vec![a, b], vec![]).unwrap()
    }

    #[test]
    fn mul_is_componentwise() {
        let x = kre2(2.0, 3.0);
        let y = kre2(5.0, 7.0);
        let z = x.mul(&y).unwrap();
        assert_eq!(z.real_part(), &[10.0, 21.0]);
        // identity
        let one = KREElement::one(sig(2, 0));
        assert_eq!(one.mul(&x).unwrap(), x);
    }

    #[test]
    fn mul_complex_conjugate_pair() {
        let s01 = sig(0, 1);
        let x = KREElement::new(s01, vec![], vec![Complex64::new(1.0, 1.0)]).unwrap();
        let y = x.involution();
        let z = x.mul(&y).unwrap();
        assert!((z.coord(0) - Complex64::new(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn mul_rejects_signature_mismatch() {
        let x = kre2(1.0, 1.0);
        let y = KREElement::new(sig(0, 1), vec![], vec![Complex64::new(1.0, 0.0)]).unwrap();
        assert!(x.mul(&y).is_err());
    }

    #[test]
    fn involution_fixes_reals_and_is_involutive() {
        let x = kre2(2.0, 3.0);
        assert_eq!(x.involution(), x);
        let y = KREElement::new(sig(0, 1), vec![], vec![Complex64::new(1.0, 1.0)]).unwrap();
        let yc = y.involution();
        assert!((yc.coord(0) - Complex64::new(1.0, -1.0)).norm() < 1e-15);
        assert_eq!(yc.involution(), y);
    }

    #[test]
    fn trace_values() {
        assert_eq!(kre2(1.0, 1.0).trace(), 2.0);
        let one_c = KREElement::one(sig(0, 1));
        assert_eq!(one_c.trace(), 2.0);
        // (1+sqrt2)^2 and (1-sqrt2)^2 trace to 6 exactly.
        let u2 = kre2((1.0 + SQRT2) * (1.0 + SQRT2), (1.0 - SQRT2) * (1.0 - SQRT2));
        assert!((u2.trace() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn trace_form_values() {
        let a = TotallyPositiveElement::ones(sig(2, 0));
        let x = kre2(1.0, 1.0);
        assert_eq!(a.form_value(&x).unwrap(), 2.0);
        let x = kre2(1.0 + SQRT2, 1.0 - SQRT2);
        assert!((a.form_value(&x).unwrap() - 6.0).abs() < 1e-12);
        let a = TotallyPositiveElement::new(sig(2, 0), vec![2.0, 1.0]).unwrap();
        let x = kre2(0.0, 1.0);
        assert_eq!(a.form_value(&x).unwrap(), 1.0);
    }

    #[test]
    fn log_embedding_values() {
        let one = KREElement::one(sig(2, 0));
        assert_eq!(one.log_embedding().unwrap(), vec![0.0, 0.0]);
        let u = kre2(1.0 + SQRT2, 1.0 - SQRT2);
        let le = u.log_embedding().unwrap();
        assert!((le[0] - 0.881_373_587_019_543).abs() < 1e-12);
        assert!((le[0] + le[1]).abs() < 1e-12);
        let zero = kre2(0.0, 1.0);
        assert!(matches!(zero.log_embedding(), Err(Error::ZeroCoordinate(0))));
    }

    #[test]
    fn weil_height_values() {
        let unit_modulus =
            KREElement::new(sig(0, 1), vec![], vec![Complex64::from_polar(1.0, 0.7)]).unwrap();
        assert_eq!(unit_modulus.weil_height(2).unwrap(), 0.0);
        let u = kre2(1.0 + SQRT2, 1.0 - SQRT2);
        assert!((u.weil_height(2).unwrap() - 0.440_686_793_509_772).abs() < 1e-12);
        // Golden-ratio unit of a totally complex quartic field: height (2/4) log(phi).
        let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
        let g = KREElement::new(
            sig(0, 2),
            vec![],
            vec![Complex64::new(phi, 0.0), Complex64::new(-1.0 / phi, 0.0)],
        )
        .unwrap();
        assert!((g.weil_height(4).unwrap() - 0.5 * phi.ln()).abs() < 1e-12);
        assert!((g.weil_height(4).unwrap() - 0.240_605_912_529_802).abs() < 1e-9);
    }

    #[test]
    fn pisot_test_is_order_sensitive() {
        let u = kre2(1.0 + SQRT2, 1.0 - SQRT2);
        assert!(u.is_pisot());
        let inv = kre2(SQRT2 - 1.0, -(1.0 + SQRT2));
        assert!(!inv.is_pisot());
        assert!(is_pisot_moduli(&inv.moduli()));
        // Roots of unity are never Pisot.
        let root = KREElement::new(sig(0, 1), vec![], vec![Complex64::from_polar(1.0, 1.0)]).unwrap();
        assert!(!root.is_pisot());
        assert!(!is_pisot_moduli(&root.moduli()));
    }

    #[test]
    fn totally_positive_rejects_nonpositive() {
        assert!(TotallyPositiveElement::new(sig(2, 0), vec![1.0, 0.0]).is_err());
        assert!(TotallyPositiveElement::new(sig(2, 0), vec![1.0, -2.0]).is_err());
    }

    #[test]
    fn galois_action_on_quadratic() {
        let field = crate::field_file::quadratic_field(2).unwrap();
        let u = field.unit_generators[0].clone();
        let same = field.apply_galois_full(1, &u).unwrap();
        assert_eq!(same, u);
        let swapped = field.apply_galois_full(2, &u).unwrap();
        assert_eq!(swapped, vec![u[1], u[0]]);
        assert!(matches!(
            field.apply_galois_full(3, &u),
            Err(Error::AutomorphismIndex { index: 3, n: 2 })
        ));
    }

    #[test]
    fn galois_three_cycle_has_order_three() {
        let field = crate::field_file::zeta7_plus_field();
        let x = field.embed_coeffs(&[1, 2, -1]);
        let mut y = x.clone();
        for _ in 0..3 {
            y = field.apply_galois_full(2, &y).unwrap();
        }
        for (a, b) in x.iter().zip(&y) {
            assert!((a - b).norm() < 1e-12);
        }
        // orbit values are genuinely permuted in between
        let once = field.apply_galois_full(2, &x).unwrap();
        assert!((once[0] - x[0]).norm() > 1e-6);
    }

    #[test]
    fn galois_action_commutes_with_projection_moduli() {
        let field = crate::field_file::zeta5_field();
        let u = field.unit_embedding(&[1]).unwrap();
        for i in 1..=4 {
            let conj = field.apply_galois(i, &u).unwrap();
            let mut m = conj.moduli();
            m.sort_by(|a, b| a.total_cmp(b));
            let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
            assert!((m[0] - 1.0 / phi).abs() < 1e-12 && (m[1] - phi).abs() < 1e-12);
        }
    }
}
