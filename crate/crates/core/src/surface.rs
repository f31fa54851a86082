//! Level-`N` shadow of a polarized abelian surface.
//!
//! `A[N]` and `Â[N]` are both `(Z/N)^4`. `D_l` is the matrix of `φ_l: A[N] → Â[N]`
//! and `D_m` that of `φ_m: Â[N] → A[N]`. The Weil pairing `A[N] × Â[N] → Z/N`
//! is `⟨x, z⟩ = xᵀ J z` with `J = [[0, I₂], [−I₂, 0]]`, so the commutator form
//! `e(x, y) = ⟨x, φ_l(y)⟩` is alternating.

use crate::check::{Check, Report};
use crate::error::{Error, Result};
use crate::zmodmat::{kernel_mod, ZMatrix};
use serde::{Deserialize, Serialize};

/// The symplectic matrix used for the Weil pairing.
pub fn weil_matrix(modulus: Option<u64>) -> ZMatrix {
    let mut e = vec![0i64; 16];
    for i in 0..2 {
        e[i * 4 + i + 2] = 1;
        e[(i + 2) * 4 + i] = -1;
    }
    ZMatrix::new(4, 4, e, modulus).expect("4x4")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawModel", into = "RawModel")]
pub struct SurfaceTorsionModel {
    level: u64,
    n1: i64,
    n2: i64,
    chi: i64,
    d_l: ZMatrix,
    d_m: ZMatrix,
}

#[derive(Serialize, Deserialize)]
struct RawModel {
    #[serde(rename = "N")]
    level: u64,
    n1: i64,
    n2: i64,
    chi: i64,
    #[serde(rename = "D_l")]
    d_l: Vec<Vec<i64>>,
    #[serde(rename = "D_m")]
    d_m: Vec<Vec<i64>>,
}

impl TryFrom<RawModel> for SurfaceTorsionModel {
    type Error = Error;

    fn try_from(raw: RawModel) -> Result<Self> {
        if raw.level < 2 {
            return Err(Error::Usage(format!("torsion level {} must be at least 2", raw.level)));
        }
        let d_l = ZMatrix::from_rows(&raw.d_l, Some(raw.level))?;
        let d_m = ZMatrix::from_rows(&raw.d_m, Some(raw.level))?;
        SurfaceTorsionModel::new(raw.level, raw.n1, raw.n2, raw.chi, d_l, d_m)
    }
}

impl From<SurfaceTorsionModel> for RawModel {
    fn from(m: SurfaceTorsionModel) -> Self {
        RawModel {
            level: m.level,
            n1: m.n1,
            n2: m.n2,
            chi: m.chi,
            d_l: m.d_l.to_rows(),
            d_m: m.d_m.to_rows(),
        }
    }
}

impl SurfaceTorsionModel {
    /// Assembles a model from explicit matrices. Only shapes and moduli are
    /// checked here; the algebraic invariants are the job of [`validate_model`].
    pub fn new(level: u64, n1: i64, n2: i64, chi: i64, d_l: ZMatrix, d_m: ZMatrix) -> Result<Self> {
        for (name, m) in [("D_l", &d_l), ("D_m", &d_m)] {
            if m.rows() != 4 || m.cols() != 4 {
                return Err(Error::Dimension(format!("{name} must be 4x4")));
            }
            if m.modulus() != Some(level) {
                return Err(Error::Usage(format!("{name} is not reduced mod {level}")));
            }
        }
        Ok(SurfaceTorsionModel { level, n1, n2, chi, d_l, d_m })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn n1(&self) -> i64 {
        self.n1
    }

    pub fn n2(&self) -> i64 {
        self.n2
    }

    pub fn chi(&self) -> i64 {
        self.chi
    }

    pub fn d_l(&self) -> &ZMatrix {
        &self.d_l
    }

    pub fn d_m(&self) -> &ZMatrix {
        &self.d_m
    }

    /// `φ_l(x)` for `x ∈ A[N]`.
    pub fn phi_l(&self, x: &[i64]) -> Vec<i64> {
        self.d_l.mul_vec(x)
    }

    /// `φ_m(y)` for `y ∈ Â[N]`.
    pub fn phi_m(&self, y: &[i64]) -> Vec<i64> {
        self.d_m.mul_vec(y)
    }

    /// Weil pairing `⟨x, z⟩` of `x ∈ A[N]` with `z ∈ Â[N]`.
    pub fn weil_pairing(&self, x: &[i64], z: &[i64]) -> i64 {
        let jz = weil_matrix(Some(self.level)).mul_vec(z);
        let n = self.level as i64;
        x.iter().zip(&jz).map(|(a, b)| a * b).sum::<i64>().rem_euclid(n)
    }

    /// The same model at level `n'`, for `n' | N`.
    pub fn reduce(&self, level: u64) -> Result<Self> {
        if level < 2 || !self.level.is_multiple_of(level) {
            return Err(Error::Usage(format!("{level} does not divide {} or is below 2", self.level)));
        }
        SurfaceTorsionModel::new(
            level,
            self.n1,
            self.n2,
            self.chi,
            self.d_l.reduce(level)?,
            self.d_m.reduce(level)?,
        )
    }

    /// The model of the negated classes `−l`, `−m`, which is the model
    /// attached to the shifted vector `−v`.
    pub fn negated(&self) -> Self {
        SurfaceTorsionModel { d_l: self.d_l.neg(), d_m: self.d_m.neg(), ..self.clone() }
    }

    fn is_degree_zero(&self) -> bool {
        self.n1 == 0 && self.n2 == 0
    }
}

/// The diagonal model of type `(n1, n2)` at level `N`.
///
/// `n1 = n2 = 0` gives the degree-zero model (`l = 0`, `χ = 0`) used for
/// vectors such as `(1, 0, -n)`.
pub fn canonical_model(n1: i64, n2: i64, level: u64) -> Result<SurfaceTorsionModel> {
    if level < 2 {
        return Err(Error::Usage(format!("torsion level {level} must be at least 2")));
    }
    let degree_zero = n1 == 0 && n2 == 0;
    if !degree_zero && (n1 < 1 || n2 < 1 || n2 % n1 != 0) {
        return Err(Error::PolarizationType { n1, n2 });
    }
    let d_l = ZMatrix::diagonal(&[n1, n2, n1, n2], Some(level));
    let d_m = ZMatrix::diagonal(&[-n2, -n1, -n2, -n1], Some(level));
    SurfaceTorsionModel::new(level, n1, n2, n1 * n2, d_l, d_m)
}

fn expected_kernel(m: &SurfaceTorsionModel) -> Vec<u64> {
    let mut f: Vec<u64> = if m.is_degree_zero() {
        vec![m.level; 4]
    } else {
        [m.n2, m.n2, m.n1, m.n1].iter().map(|&d| d as u64).filter(|&d| d > 1).collect()
    };
    f.sort_unstable_by(|a, b| b.cmp(a));
    f
}

/// Checks every model invariant separately.
pub fn validate_model(m: &SurfaceTorsionModel) -> Report {
    let mut report = Report::default();
    let level = Some(m.level);
    let expected_chi = if m.is_degree_zero() { 0 } else { m.n1 * m.n2 };
    report.push(Check::new(
        "chi_matches_type",
        m.chi == expected_chi,
        format!("chi = {}, n1*n2 = {}", m.chi, expected_chi),
    ));
    let type_ok = m.is_degree_zero() || (m.n1 >= 1 && m.n2 % m.n1 == 0);
    report.push(Check::new("type_divisibility", type_ok, format!("n1 = {}, n2 = {}", m.n1, m.n2)));

    let minus_chi = ZMatrix::identity(4, level).scale(-m.chi);
    let ml = m.d_m.mul(&m.d_l).expect("same ring");
    let lm = m.d_l.mul(&m.d_m).expect("same ring");
    report.push(Check::new("chi_identity_ml", ml == minus_chi, format!("D_m*D_l = {:?}", ml.to_rows())));
    report.push(Check::new("chi_identity_lm", lm == minus_chi, format!("D_l*D_m = {:?}", lm.to_rows())));
    report.push(Check::new("d_l_symmetric", m.d_l.is_symmetric(), String::new()));

    let divides = m.is_degree_zero() || (m.n2 > 0 && m.level.is_multiple_of(m.n2 as u64));
    if divides {
        let expected = expected_kernel(m);
        for (name, mat) in [("kernel_l", &m.d_l), ("kernel_m", &m.d_m)] {
            let got = kernel_mod(mat).expect("level at least 2");
            report.push(Check::new(
                name,
                got.invariant_factors() == expected.as_slice(),
                format!("invariant factors {:?}, expected {:?}", got.invariant_factors(), expected),
            ));
        }
    } else {
        for name in ["kernel_l", "kernel_m"] {
            report.push(Check::skipped(name, format!("n2 = {} does not divide N = {}", m.n2, m.level)));
        }
    }
    report
}

/// The model for `Â`: `φ_l' = φ_m` and `φ_m' = φ_l`.
///
/// With this choice `(x, y) ∈ G_A(v)` iff `(−y, x) ∈ G_Â(fm(v))`.
pub fn dual_model(m: &SurfaceTorsionModel) -> SurfaceTorsionModel {
    SurfaceTorsionModel { d_l: m.d_m.clone(), d_m: m.d_l.clone(), ..m.clone() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// `q(x) = Σ_{i≤j} c_ij x_i x_j` on `(Z/2)^4`, upper-triangular coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticFormF2 {
    coefficients: [[u8; 4]; 4],
    parity: Parity,
}

impl QuadraticFormF2 {
    pub fn coefficients(&self) -> &[[u8; 4]; 4] {
        &self.coefficients
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn eval(&self, x: &[i64]) -> u8 {
        let x: Vec<u8> = x.iter().map(|v| v.rem_euclid(2) as u8).collect();
        let mut acc = 0u8;
        for i in 0..4 {
            for j in i..4 {
                acc ^= self.coefficients[i][j] & x[i] & x[j];
            }
        }
        acc
    }

    pub fn polar(&self, x: &[i64], y: &[i64]) -> u8 {
        let s: Vec<i64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.eval(&s) ^ self.eval(x) ^ self.eval(y)
    }

    /// All 16 points of `(Z/2)^4`, in lexicographic order.
    pub fn points() -> Vec<Vec<i64>> {
        (0..16).map(bits_to_vec).collect()
    }

    pub fn zero_set(&self) -> Vec<Vec<i64>> {
        Self::points().into_iter().filter(|x| self.eval(x) == 0).collect()
    }

    /// Arf invariant: the value taken by the majority of points.
    pub fn arf(&self) -> Parity {
        if self.zero_set().len() > 8 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

fn bits_to_vec(bits: u8) -> Vec<i64> {
    (0..4).map(|i| ((bits >> i) & 1) as i64).collect()
}

/// Quadratic refinement of `e(x, y) mod 2` with the requested Arf parity.
pub fn ql_form(m: &SurfaceTorsionModel, parity: Parity) -> Result<QuadraticFormF2> {
    if !m.level.is_multiple_of(2) {
        return Err(Error::DegeneratePolarForm(format!("level {} is odd, A[2] is not visible", m.level)));
    }
    if m.n1 % 2 == 0 || m.n2 % 2 == 0 {
        return Err(Error::DegeneratePolarForm(format!(
            "type ({}, {}) has ker φ_l ∩ A[2] ≠ 0",
            m.n1, m.n2
        )));
    }
    let b2 = weil_matrix(Some(m.level)).mul(&m.d_l)?.reduce(2)?;
    let bilinear = |x: u8, y: u8| -> u8 {
        let (xv, yv) = (bits_to_vec(x), bits_to_vec(y));
        let by = b2.mul_vec(&yv);
        (xv.iter().zip(&by).map(|(a, b)| a * b).sum::<i64>() % 2) as u8
    };
    if (0..4).any(|i| bilinear(1 << i, 1 << i) != 0) || (0..16).any(|x| (0..16).any(|y| bilinear(x, y) != bilinear(y, x))) {
        return Err(Error::DegeneratePolarForm("polar form is not alternating".into()));
    }

    let mut pool: Vec<u8> = vec![1, 2, 4, 8];
    let mut pairs = Vec::new();
    while let Some(e) = pool.first().copied() {
        pool.remove(0);
        let Some(k) = pool.iter().position(|&w| bilinear(e, w) == 1) else {
            return Err(Error::DegeneratePolarForm("polar form is degenerate mod 2".into()));
        };
        let f = pool.remove(k);
        for w in pool.iter_mut() {
            let (bf, be) = (bilinear(*w, f), bilinear(*w, e));
            if bf == 1 {
                *w ^= e;
            }
            if be == 1 {
                *w ^= f;
            }
        }
        pool.retain(|&w| w != 0);
        pairs.push((e, f));
    }
    if pairs.len() != 2 {
        return Err(Error::DegeneratePolarForm("polar form is degenerate mod 2".into()));
    }

    let q = |x: u8| -> u8 {
        let mut acc = 0;
        for (i, &(e, f)) in pairs.iter().enumerate() {
            let a = bilinear(x, f);
            let b = bilinear(e, x);
            acc ^= a & b;
            if i == 0 && parity == Parity::Odd {
                acc ^= a ^ b;
            }
        }
        acc
    };
    let mut coefficients = [[0u8; 4]; 4];
    for i in 0..4 {
        coefficients[i][i] = q(1 << i);
        for j in i + 1..4 {
            coefficients[i][j] = q((1 << i) | (1 << j)) ^ q(1 << i) ^ q(1 << j);
        }
    }
    Ok(QuadraticFormF2 { coefficients, parity })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_points(n: u64) -> impl Iterator<Item = Vec<i64>> {
        let n = n as i64;
        (0..n.pow(4)).map(move |mut idx| {
            (0..4)
                .map(|_| {
                    let d = idx % n;
                    idx /= n;
                    d
                })
                .collect()
        })
    }

    #[test]
    fn principal_model() {
        for level in [2, 3, 5] {
            let m = canonical_model(1, 1, level).unwrap();
            assert_eq!(m.d_l(), &ZMatrix::identity(4, Some(level)));
            assert_eq!(m.d_m(), &ZMatrix::identity(4, Some(level)).neg());
            assert_eq!(m.chi(), 1);
            assert!(validate_model(&m).passed());
        }
    }

    #[test]
    fn type_one_three_mod_three() {
        let m = canonical_model(1, 3, 3).unwrap();
        assert_eq!(m.d_l(), &ZMatrix::diagonal(&[1, 0, 1, 0], Some(3)));
        assert_eq!(m.d_m(), &ZMatrix::diagonal(&[0, -1, 0, -1], Some(3)));
        assert!(m.d_m().mul(m.d_l()).unwrap().is_zero());
    }

    #[test]
    fn kernel_of_type_one_three_mod_six() {
        let m = canonical_model(1, 3, 6).unwrap();
        let k = kernel_mod(m.d_l()).unwrap();
        let brute = all_points(6).filter(|x| m.phi_l(x).iter().all(|&v| v == 0)).count();
        assert_eq!(brute, 9);
        assert_eq!(k.invariant_factors(), &[3, 3]);
    }

    #[test]
    fn validation_reports() {
        assert!(validate_model(&canonical_model(1, 3, 9).unwrap()).passed());
        let r = validate_model(&canonical_model(2, 2, 4).unwrap());
        assert!(r.passed());
        assert!(r.get("kernel_l").unwrap().detail.contains("[2, 2, 2, 2]"));

        let good = canonical_model(1, 3, 9).unwrap();
        let bad = SurfaceTorsionModel::new(9, 1, 3, 3, good.d_l().clone(), good.d_m().neg()).unwrap();
        let r = validate_model(&bad);
        assert!(!r.passed());
        assert!(r.get("chi_identity_ml").unwrap().failed());
        assert!(!r.get("d_l_symmetric").unwrap().failed());
    }

    #[test]
    fn coarse_level_skips_kernel() {
        let r = validate_model(&canonical_model(1, 4, 6).unwrap());
        assert_eq!(r.get("kernel_l").unwrap().status, crate::check::Status::Skipped);
        assert!(r.passed());
    }

    #[test]
    fn rejects_bad_type() {
        assert_eq!(canonical_model(2, 3, 6), Err(Error::PolarizationType { n1: 2, n2: 3 }));
        assert!(canonical_model(1, 1, 1).is_err());
    }

    #[test]
    fn degree_zero_model() {
        let m = canonical_model(0, 0, 3).unwrap();
        assert!(m.d_l().is_zero() && m.d_m().is_zero());
        assert_eq!(m.chi(), 0);
        assert!(validate_model(&m).passed());
    }

    #[test]
    fn models_reduce_to_divisors() {
        for (n1, n2, level) in [(1, 1, 12), (1, 2, 12), (1, 3, 12), (2, 2, 12), (1, 4, 8), (0, 0, 6)] {
            let m = canonical_model(n1, n2, level).unwrap();
            for d in (2..=level).filter(|d| level % d == 0) {
                assert!(validate_model(&m.reduce(d).unwrap()).passed(), "({n1},{n2}) mod {d}");
            }
        }
    }

    #[test]
    fn phi_composition_pointwise() {
        for (n1, n2) in [(1, 1), (1, 2), (1, 3), (2, 2), (1, 5)] {
            for level in 2..=6u64 {
                let m = canonical_model(n1, n2, level).unwrap();
                let chi = m.chi();
                for x in all_points(level) {
                    let expect: Vec<i64> = x.iter().map(|v| (-chi * v).rem_euclid(level as i64)).collect();
                    assert_eq!(m.phi_m(&m.phi_l(&x)), expect);
                    assert_eq!(m.phi_l(&m.phi_m(&x)), expect);
                }
            }
        }
    }

    #[test]
    fn commutator_form_is_alternating() {
        let m = canonical_model(1, 2, 4).unwrap();
        for x in all_points(4).step_by(7) {
            assert_eq!(m.weil_pairing(&x, &m.phi_l(&x)), 0);
            for y in all_points(4).step_by(31) {
                let a = m.weil_pairing(&x, &m.phi_l(&y));
                let b = m.weil_pairing(&y, &m.phi_l(&x));
                assert_eq!((a + b) % 4, 0);
            }
        }
    }

    #[test]
    fn dual_models_validate() {
        let d = dual_model(&canonical_model(1, 1, 4).unwrap());
        assert_eq!(d.d_l(), &ZMatrix::identity(4, Some(4)).neg());
        assert!(validate_model(&d).passed());
        assert!(validate_model(&dual_model(&canonical_model(1, 3, 3).unwrap())).passed());
        let m = canonical_model(1, 2, 6).unwrap();
        assert_eq!(dual_model(&dual_model(&m)), m);
    }

    #[test]
    fn quadratic_refinements() {
        let m = canonical_model(1, 3, 2).unwrap();
        let even = ql_form(&m, Parity::Even).unwrap();
        let odd = ql_form(&m, Parity::Odd).unwrap();
        assert_eq!(even.zero_set().len(), 10);
        assert_eq!(odd.zero_set().len(), 6);
        assert_eq!(even.eval(&[0, 0, 0, 0]), 0);
        assert_eq!(odd.eval(&[0, 0, 0, 0]), 0);
        assert_eq!(even.arf(), Parity::Even);
        assert_eq!(odd.arf(), Parity::Odd);
        for q in [&even, &odd] {
            for x in QuadraticFormF2::points() {
                for y in QuadraticFormF2::points() {
                    let e = m.weil_pairing(&x, &m.phi_l(&y)) % 2;
                    assert_eq!(q.polar(&x, &y) as i64, e);
                }
            }
        }
    }

    #[test]
    fn ql_form_needs_odd_type() {
        let m = canonical_model(2, 2, 4).unwrap();
        assert!(matches!(ql_form(&m, Parity::Even), Err(Error::DegeneratePolarForm(_))));
        let m = canonical_model(1, 1, 3).unwrap();
        assert!(matches!(ql_form(&m, Parity::Even), Err(Error::DegeneratePolarForm(_))));
    }

    #[test]
    fn json_round_trip() {
        let m = canonical_model(1, 3, 6).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.contains("\"N\":6") && s.contains("\"D_l\":[[1,0,0,0]"));
        let back: SurfaceTorsionModel = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }
}
