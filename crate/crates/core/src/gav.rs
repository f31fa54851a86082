//! The group `G_A(v)` of pairs `(x, y) ∈ A[N] × Â[N]` with
//! `φ_l(x) = −r·y` and `φ_m(y) = s·x`.
//!
//! Points of `(Z/N)^8` are written `x` first (coordinates 0..4), then `y`.

use crate::check::{Check, Report};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::mukai::{fm_transform, MukaiVector};
use crate::surface::{dual_model, SurfaceTorsionModel};
use crate::zmodmat::{kernel_mod, subgroup_structure, SubgroupDescription, ZMatrix};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Largest level for which the exhaustive `(Z/N)^8` scan is attempted.
pub const BRUTE_FORCE_MAX_LEVEL: u64 = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GavGroup {
    model: SurfaceTorsionModel,
    v: MukaiVector,
    d: i64,
    n: i64,
    group: SubgroupDescription,
}

impl GavGroup {
    pub fn modulus(&self) -> u64 {
        self.model.level()
    }

    pub fn model(&self) -> &SurfaceTorsionModel {
        &self.model
    }

    pub fn v(&self) -> &MukaiVector {
        &self.v
    }

    /// Imprimitivity multiplier `d`, the content of `v`.
    pub fn d(&self) -> i64 {
        self.d
    }

    /// `n = v0²/2` for the primitive part `v0`.
    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn subgroup(&self) -> &SubgroupDescription {
        &self.group
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        self.group.generators()
    }

    pub fn invariant_factors(&self) -> &[u64] {
        self.group.invariant_factors()
    }

    pub fn order(&self) -> u128 {
        self.group.order()
    }

    pub fn contains(&self, point: &[i64]) -> bool {
        self.group.contains(point)
    }

    pub fn elements(&self) -> Vec<Vec<i64>> {
        self.group.elements()
    }

    pub fn element_set(&self) -> BTreeSet<Vec<i64>> {
        self.elements().into_iter().collect()
    }

    /// The same `(model, v)` data with an explicit generating set.
    pub fn with_generators(&self, generators: &[Vec<i64>]) -> Result<GavGroup> {
        let group = subgroup_structure(generators, 8, self.modulus())?;
        Ok(GavGroup { group, ..self.clone() })
    }
}

/// Checked `(d, n)` for a `(model, v)` pair.
fn parameters(model: &SurfaceTorsionModel, v: &MukaiVector, d: Option<i64>) -> Result<(i64, i64)> {
    let p = v.derived()?;
    if p.d == 0 {
        return Err(Error::Usage("the zero Mukai vector has no G-group".into()));
    }
    if let Some(d) = d {
        if d != p.d {
            return Err(Error::Usage(format!("d = {d} but v = {v} has content {}", p.d)));
        }
    }
    if p.n_primitive < 1 {
        return Err(Error::Usage(format!("v0^2 = {} must be positive", 2 * p.n_primitive)));
    }
    if model.chi() != p.chi {
        return Err(Error::ChiMismatch { chi: model.chi(), expected: p.chi });
    }
    let required = (p.d * p.n_primitive) as u64;
    if !model.level().is_multiple_of(required) {
        return Err(Error::LevelTooCoarse { level: model.level(), required });
    }
    Ok((p.d, p.n_primitive))
}

/// `[[−s·I, D_m], [D_l, r·I]]` over `Z/N`.
pub fn system_matrix(model: &SurfaceTorsionModel, v: &MukaiVector) -> ZMatrix {
    let level = Some(model.level());
    let id = ZMatrix::identity(4, level);
    ZMatrix::block2(&id.scale(-v.s()), model.d_m(), model.d_l(), &id.scale(v.r())).expect("4x4 blocks")
}

/// The kernel of the system matrix, i.e. all solutions at level `N`.
pub fn solve_gav(model: &SurfaceTorsionModel, v: &MukaiVector, d: Option<i64>) -> Result<GavGroup> {
    let (d, n) = parameters(model, v, d)?;
    let group = kernel_mod(&system_matrix(model, v))?;
    Ok(GavGroup { model: model.clone(), v: v.clone(), d, n, group })
}

/// Expected invariant factors: `[n; 4]` for primitive `v`, `[dn; 4] ++ [d; 4]` otherwise.
pub fn expected_invariant_factors(n: i64, d: i64) -> Vec<u64> {
    let mut f = vec![(d * n) as u64; 4];
    if d > 1 {
        f.extend([d as u64; 4]);
    }
    f.retain(|&x| x > 1);
    f
}

pub fn verify_structure(g: &GavGroup, n: i64, d: i64) -> Report {
    let mut report = Report::default();
    let expected = expected_invariant_factors(n, d);
    let found = g.invariant_factors().to_vec();
    let expected_order: u128 = expected.iter().map(|&x| x as u128).product();
    let mut detail = format!("expected {expected:?}, found {found:?}");
    if g.order() < expected_order {
        detail.push_str(&format!("; deficit: order {} of {}", g.order(), expected_order));
    }
    report.push(Check::new("invariant_factors", found == expected, detail));
    let dn = d * n;
    let killed = g.generators().iter().all(|x| x.iter().all(|&c| (c * dn) % g.modulus() as i64 == 0));
    report.push(Check::new("annihilated_by_dn", killed, format!("dn = {dn}")));
    let solves = g.generators().iter().all(|p| satisfies_equations(&g.model, &g.v, p));
    report.push(Check::new("generators_solve_system", solves, String::new()));
    report
}

fn satisfies_equations(model: &SurfaceTorsionModel, v: &MukaiVector, point: &[i64]) -> bool {
    let n = model.level() as i64;
    let (x, y) = point.split_at(4);
    let lx = model.phi_l(x);
    let my = model.phi_m(y);
    (0..4).all(|i| (lx[i] + v.r() * y[i]).rem_euclid(n) == 0 && (my[i] - v.s() * x[i]).rem_euclid(n) == 0)
}

fn decode(mut idx: u64, level: u64) -> Vec<i64> {
    let mut p = vec![0i64; 8];
    for c in p.iter_mut() {
        *c = (idx % level) as i64;
        idx /= level;
    }
    p
}

/// Exhaustive scan of `(Z/N)^8` against the defining equations.
pub fn brute_force_elements(model: &SurfaceTorsionModel, v: &MukaiVector, exec: Exec) -> Result<Vec<Vec<i64>>> {
    let level = model.level();
    if level > BRUTE_FORCE_MAX_LEVEL {
        return Err(Error::TooLarge(format!("(Z/{level})^8 scan; the limit is N <= {BRUTE_FORCE_MAX_LEVEL}")));
    }
    let total = level.pow(8);
    Ok(exec.filter_map(0..total, |idx| {
        let p = decode(idx, level);
        satisfies_equations(model, v, &p).then_some(p)
    }))
}

/// Independent oracle for [`solve_gav`]: scans every point at level `level`,
/// using the model reduced to that level.
pub fn brute_force_gav(
    model: &SurfaceTorsionModel,
    v: &MukaiVector,
    d: Option<i64>,
    level: u64,
    exec: Exec,
) -> Result<GavGroup> {
    let model = if level == model.level() { model.clone() } else { model.reduce(level)? };
    let (d, n) = parameters(&model, v, d)?;
    let elements = brute_force_elements(&model, v, exec)?;
    let group = subgroup_structure(&elements, 8, level)?;
    Ok(GavGroup { model, v: v.clone(), d, n, group })
}

/// `φ(x, y) = (φ_m(y) − s·x, φ_l(x) + r·y)` as an 8x8 matrix: the system matrix itself.
pub fn phi_matrix(model: &SurfaceTorsionModel, v: &MukaiVector) -> ZMatrix {
    system_matrix(model, v)
}

/// `ψ(x, y) = (φ_m(y) − r·x, φ_l(x) + s·y)`.
pub fn psi_matrix(model: &SurfaceTorsionModel, v: &MukaiVector) -> ZMatrix {
    let level = Some(model.level());
    let id = ZMatrix::identity(4, level);
    ZMatrix::block2(&id.scale(-v.r()), model.d_m(), model.d_l(), &id.scale(v.s())).expect("4x4 blocks")
}

/// Checks `φ∘ψ = ψ∘φ = −(v²/2)·id` on `(Z/N)^8`.
///
/// Both maps are linear, so equality of the 8x8 matrices is equality on
/// every point.
pub fn psi_check(model: &SurfaceTorsionModel, v: &MukaiVector) -> Report {
    let mut report = Report::default();
    let k = v.square() / 2;
    let phi = phi_matrix(model, v);
    let psi = psi_matrix(model, v);
    let target = ZMatrix::identity(8, Some(model.level())).scale(-k);
    let a = phi.mul(&psi).expect("same ring");
    let b = psi.mul(&phi).expect("same ring");
    report.push(Check::new("phi_psi", a == target, format!("expected -{k}*id")));
    report.push(Check::new("psi_phi", b == target, format!("expected -{k}*id")));
    report
}

/// Proof-case label at a prime `p | n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseLabel {
    pub p: u64,
    pub case: u8,
    pub q: u32,
    /// `max(v_p(r), v_p(s))`; `None` is ∞ (the coordinate is zero).
    pub j: Option<u32>,
    /// `min(v_p(r), v_p(s))`.
    pub k: Option<u32>,
}

fn valuation(x: i64, p: u64) -> Option<u32> {
    if x == 0 {
        return None;
    }
    let (mut x, p) = (x.unsigned_abs(), p);
    let mut e = 0;
    while x % p == 0 {
        x /= p;
        e += 1;
    }
    Some(e)
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Works on the primitive part of `v`; `χ` is read from the model.
pub fn classify_case(model: &SurfaceTorsionModel, v: &MukaiVector, p: u64) -> Result<CaseLabel> {
    let (_, n) = parameters(model, v, None)?;
    if !is_prime(p) {
        return Err(Error::Usage(format!("{p} is not prime")));
    }
    if n % p as i64 != 0 {
        return Err(Error::IrrelevantPrime { p, n });
    }
    let (_, v0) = v.primitive_part();
    let q = valuation(n, p).expect("n > 0");
    let (jr, ks) = (valuation(v0.r(), p), valuation(v0.s(), p));
    // None sorts below Some, so compare with ∞ as the largest value
    let key = |e: Option<u32>| e.map_or(u64::MAX, u64::from);
    let (j, k) = if key(jr) >= key(ks) { (jr, ks) } else { (ks, jr) };
    let case = if model.chi() == 0 {
        1
    } else if k == Some(0) {
        2
    } else {
        match (j, k) {
            (None, _) => 3,
            (Some(j), Some(k)) if q <= j => {
                debug_assert!(k <= j);
                3
            }
            (Some(j), Some(k)) if q <= j + k => 4,
            (Some(_), Some(_)) => 5,
            (Some(_), None) => unreachable!("k <= j"),
        }
    };
    Ok(CaseLabel { p, case, q, j, k })
}

/// Case labels at every prime dividing `n`.
pub fn case_labels(model: &SurfaceTorsionModel, v: &MukaiVector) -> Result<Vec<CaseLabel>> {
    let (_, n) = parameters(model, v, None)?;
    prime_divisors(n as u64).into_iter().map(|p| classify_case(model, v, p)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouquierOutcome {
    pub ok: bool,
    pub order_a: u128,
    pub order_dual: u128,
    /// A point of `(Z/N)^8` on one side whose partner is missing on the other.
    pub witness: Option<Vec<i64>>,
}

/// `(x, y) ↦ (−y, x)`.
pub fn rouquier_map(point: &[i64], level: u64) -> Vec<i64> {
    let n = level as i64;
    let (x, y) = point.split_at(4);
    y.iter().map(|c| (-c).rem_euclid(n)).chain(x.iter().copied()).collect()
}

fn rouquier_inverse(point: &[i64], level: u64) -> Vec<i64> {
    let n = level as i64;
    let (a, b) = point.split_at(4);
    b.iter().copied().chain(a.iter().map(|c| (-c).rem_euclid(n))).collect()
}

/// Compares `G_A(v)` with `G_Â(fm(v))` on the dual model.
pub fn rouquier_check(model: &SurfaceTorsionModel, v: &MukaiVector) -> Result<RouquierOutcome> {
    rouquier_check_against(model, &dual_model(model), v)
}

/// As [`rouquier_check`] with an explicit model for the dual side.
pub fn rouquier_check_against(
    model: &SurfaceTorsionModel,
    dual: &SurfaceTorsionModel,
    v: &MukaiVector,
) -> Result<RouquierOutcome> {
    let g = solve_gav(model, v, None)?;
    let h = solve_gav(dual, &fm_transform(v), None)?;
    let level = model.level();
    let forward = g.generators().iter().find(|p| !h.contains(&rouquier_map(p, level)));
    let backward = h.generators().iter().find(|p| !g.contains(&rouquier_inverse(p, level)));
    let witness = forward.or(backward).cloned();
    Ok(RouquierOutcome {
        ok: witness.is_none() && g.order() == h.order(),
        order_a: g.order(),
        order_dual: h.order(),
        witness,
    })
}

/// Label of an automorphism `t_x ∘ (twist by L_y) ∘ ι^ε` of the moduli space,
/// where `ι` is the involution induced by `−1`. Composition follows
/// `(ε, x, y)·(ε', x', y') = (ε + ε', x + (−1)^ε x', y + (−1)^ε y')`, the
/// group law of `Z/2 ⋉ G`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AutLabel {
    pub involution: bool,
    pub point: Vec<i64>,
}

impl AutLabel {
    pub fn identity() -> Self {
        AutLabel { involution: false, point: vec![0; 8] }
    }

    pub fn translation(point: &[i64]) -> Self {
        AutLabel { involution: false, point: point.to_vec() }
    }

    /// `ι_(x,y)`.
    pub fn iota(point: &[i64]) -> Self {
        AutLabel { involution: true, point: point.to_vec() }
    }

    pub fn compose(&self, other: &AutLabel, level: u64) -> AutLabel {
        let n = level as i64;
        let sign = if self.involution { -1 } else { 1 };
        AutLabel {
            involution: self.involution ^ other.involution,
            point: self.point.iter().zip(&other.point).map(|(a, b)| (a + sign * b).rem_euclid(n)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        !self.involution && self.point.iter().all(|&c| c == 0)
    }
}

/// `ι_(x,y) ∘ ι_(x,y)` is the identity label.
pub fn involution_label_square(point: &[i64], level: u64) -> bool {
    let i = AutLabel::iota(point);
    i.compose(&i, level).is_identity()
}
