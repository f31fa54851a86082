//! Finite bookkeeping for fixed loci of the involutions `ι_(x,y)`.

use crate::check::{Check, Report};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::surface::{canonical_model, ql_form, Parity};
use crate::zmodmat::ZMatrix;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// A point of `A[2] = (Z/2)^4`.
pub type Point2 = [u8; 4];

fn add2(a: Point2, b: Point2) -> Point2 {
    [a[0] ^ b[0], a[1] ^ b[1], a[2] ^ b[2], a[3] ^ b[3]]
}

fn product(points: &[Point2]) -> Point2 {
    points.iter().fold([0; 4], |acc, &p| add2(acc, p))
}

const UNPRIMED: [&str; 3] = ["A", "B", "C"];
const PRIMED: [&str; 3] = ["A'", "B'", "C'"];

/// Base locus of the elliptic pencil, in the standard labelling.
pub const SIX: [&str; 6] = ["AB'", "AC'", "BC'", "BA'", "CA'", "CB'"];
/// The remaining 2-torsion points.
pub const TEN: [&str; 10] = ["1", "A", "A'", "B", "B'", "C", "C'", "AA'", "BB'", "CC'"];

/// Hudson's labelling of `A[2]` in multiplicative notation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HudsonConfig {
    elements: Vec<(String, Point2)>,
    six: Vec<String>,
    ten: Vec<String>,
}

fn generator(name: &str) -> Point2 {
    match name {
        "A" => [1, 0, 0, 0],
        "B" => [0, 1, 0, 0],
        "C" => [1, 1, 0, 0],
        "A'" => [0, 0, 1, 0],
        "B'" => [0, 0, 0, 1],
        "C'" => [0, 0, 1, 1],
        _ => unreachable!("not a generator: {name}"),
    }
}

impl HudsonConfig {
    /// `A = e1, B = e2, C = A·B, A' = e3, B' = e4, C' = A'·B'`, with the
    /// standard six base points.
    pub fn standard() -> Self {
        Self::with_base_locus(&SIX).expect("standard base locus")
    }

    /// Any six labels as base locus; the complement becomes the ten.
    pub fn with_base_locus(six: &[&str]) -> Result<Self> {
        let mut elements = vec![("1".to_string(), [0; 4])];
        for x in UNPRIMED.iter().chain(&PRIMED) {
            elements.push((x.to_string(), generator(x)));
        }
        for x in UNPRIMED {
            for y in PRIMED {
                elements.push((format!("{x}{}", y), add2(generator(x), generator(y))));
            }
        }
        let names: BTreeSet<&str> = elements.iter().map(|(n, _)| n.as_str()).collect();
        let chosen: BTreeSet<&str> = six.iter().copied().collect();
        if chosen.len() != 6 || !chosen.is_subset(&names) {
            return Err(Error::InvalidAnchor(format!("base locus must be six distinct labels, got {six:?}")));
        }
        let ten = elements.iter().map(|(n, _)| n.clone()).filter(|n| !chosen.contains(n.as_str())).collect();
        Ok(HudsonConfig { elements, six: six.iter().map(|s| s.to_string()).collect(), ten })
    }

    pub fn elements(&self) -> &[(String, Point2)] {
        &self.elements
    }

    pub fn six(&self) -> &[String] {
        &self.six
    }

    pub fn ten(&self) -> &[String] {
        &self.ten
    }

    pub fn point(&self, name: &str) -> Option<Point2> {
        self.elements.iter().find(|(n, _)| n == name).map(|(_, p)| *p)
    }

    pub fn name_of(&self, p: Point2) -> &str {
        &self.elements.iter().find(|(_, q)| *q == p).expect("every point is labelled").0
    }

    fn points(&self, names: &[String]) -> Vec<Point2> {
        names.iter().map(|n| self.point(n).expect("labelled")).collect()
    }
}

/// Verifies both multiplication tables and the two point lists.
pub fn hudson_check(cfg: &HudsonConfig) -> Report {
    let mut report = Report::default();
    for letters in [UNPRIMED, PRIMED] {
        for (i, x) in letters.iter().enumerate() {
            let px = cfg.point(x).expect("generator");
            report.push(Check::new(&format!("{x}*{x}=1"), add2(px, px) == [0; 4], String::new()));
            for (j, y) in letters.iter().enumerate().skip(i + 1) {
                let z = letters[3 - i - j];
                let ok = add2(px, cfg.point(y).expect("generator")) == cfg.point(z).expect("generator");
                report.push(Check::new(&format!("{x}*{y}={z}"), ok, String::new()));
            }
        }
    }
    let distinct: BTreeSet<Point2> = cfg.elements.iter().map(|(_, p)| *p).collect();
    report.push(Check::new("sixteen_distinct_points", distinct.len() == 16, String::new()));
    report.push(Check::new(
        "base_locus",
        cfg.six.iter().map(String::as_str).collect::<Vec<_>>() == SIX,
        format!("{:?}", cfg.six),
    ));
    report.push(Check::new(
        "complement",
        cfg.ten.iter().map(String::as_str).collect::<BTreeSet<_>>() == TEN.into_iter().collect(),
        format!("{:?}", cfg.ten),
    ));
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LemmaPart {
    A,
    B,
    C,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaCount {
    pub count: usize,
    /// Each witness lists its labels in encoding order; witnesses are sorted
    /// by their encodings.
    pub witnesses: Vec<Vec<String>>,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn canonical_witnesses(cfg: &HudsonConfig, sets: Vec<Vec<Point2>>) -> Vec<Vec<String>> {
    let mut sorted: Vec<Vec<Point2>> = sets
        .into_iter()
        .map(|mut s| {
            s.sort();
            s
        })
        .collect();
    sorted.sort();
    sorted.into_iter().map(|s| s.into_iter().map(|p| cfg.name_of(p).to_string()).collect()).collect()
}

/// (a) 4-subsets of the six with product 1; (b) 3-subsets of the six completing
/// `anchor` to product 1; (c) 4-subsets of the ten with product 1.
pub fn lemma_count(cfg: &HudsonConfig, part: LemmaPart, anchor: Option<&str>) -> Result<LemmaCount> {
    let six = cfg.points(&cfg.six);
    let ten = cfg.points(&cfg.ten);
    let sets: Vec<Vec<Point2>> = match (part, anchor) {
        (LemmaPart::A, None) => subsets(6, 4)
            .into_iter()
            .map(|s| s.iter().map(|&i| six[i]).collect::<Vec<_>>())
            .filter(|s| product(s) == [0; 4])
            .collect(),
        (LemmaPart::B, Some(a)) => {
            if !cfg.ten.iter().any(|t| t == a) {
                return Err(Error::InvalidAnchor(format!("{a} is not one of the ten")));
            }
            let pa = cfg.point(a).expect("labelled");
            subsets(6, 3)
                .into_iter()
                .map(|s| s.iter().map(|&i| six[i]).collect::<Vec<_>>())
                .filter(|s| add2(product(s), pa) == [0; 4])
                .map(|mut s| {
                    s.push(pa);
                    s
                })
                .collect()
        }
        (LemmaPart::C, None) => subsets(10, 4)
            .into_iter()
            .map(|s| s.iter().map(|&i| ten[i]).collect::<Vec<_>>())
            .filter(|s| product(s) == [0; 4])
            .collect(),
        (LemmaPart::B, None) => return Err(Error::InvalidAnchor("part b needs an anchor".into())),
        (_, Some(a)) => return Err(Error::InvalidAnchor(format!("anchor {a} given for a part other than b"))),
    };
    Ok(LemmaCount { count: sets.len(), witnesses: canonical_witnesses(cfg, sets) })
}

fn all_points2() -> Vec<Point2> {
    (0u8..16).map(|b| [b & 1, (b >> 1) & 1, (b >> 2) & 1, (b >> 3) & 1]).collect()
}

/// Unordered triples of distinct nonzero points of `A[2]` summing to 0.
pub fn triples_two_torsion() -> usize {
    let nonzero: Vec<Point2> = all_points2().into_iter().skip(1).collect();
    subsets(15, 3)
        .into_iter()
        .filter(|s| product(&[nonzero[s[0]], nonzero[s[1]], nonzero[s[2]]]) == [0; 4])
        .count()
}

/// Ordered triples of pairwise distinct nonzero points summing to 0.
pub fn ordered_triples_two_torsion() -> usize {
    let pts = all_points2();
    let mut n = 0;
    for &a in &pts[1..] {
        for &b in &pts[1..] {
            let c = add2(a, b);
            if a != b && c != [0; 4] && c != a && c != b {
                n += 1;
            }
        }
    }
    n
}

/// A point of `A[N] = (Z/N)^4`.
pub type PointN = [i64; 4];

/// A multiset of three points of `A[N]`, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SupportTriple {
    points: [PointN; 3],
}

impl SupportTriple {
    pub fn new(mut points: [PointN; 3], level: u64) -> Result<Self> {
        let n = level as i64;
        for p in points.iter_mut() {
            for c in p.iter_mut() {
                *c = c.rem_euclid(n);
            }
        }
        if (0..4).any(|i| (points[0][i] + points[1][i] + points[2][i]) % n != 0) {
            return Err(Error::Usage(format!("support {points:?} does not sum to 0 mod {level}")));
        }
        points.sort();
        Ok(SupportTriple { points })
    }

    pub fn points(&self) -> &[PointN; 3] {
        &self.points
    }

    /// Image under `a ↦ tau − a`.
    pub fn reflect(&self, tau: &PointN, level: u64) -> SupportTriple {
        let n = level as i64;
        let mut points = self.points.map(|p| [0, 1, 2, 3].map(|i| (tau[i] - p[i]).rem_euclid(n)));
        points.sort();
        SupportTriple { points }
    }

    pub fn is_fixed_by(&self, tau: &PointN, level: u64) -> bool {
        self.reflect(tau, level) == *self
    }

    pub fn translate(&self, t: &PointN, level: u64) -> SupportTriple {
        let n = level as i64;
        let mut points = self.points.map(|p| [0, 1, 2, 3].map(|i| (p[i] + t[i]).rem_euclid(n)));
        points.sort();
        SupportTriple { points }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub source: String,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedLocusLedger {
    pub surface: String,
    pub surface_count: u64,
    pub isolated: u64,
    pub breakdown: Vec<LedgerEntry>,
}

impl FixedLocusLedger {
    pub fn consistent(&self) -> bool {
        self.isolated == self.breakdown.iter().map(|e| e.count).sum::<u64>()
    }

    pub fn source(&self, name: &str) -> Option<u64> {
        self.breakdown.iter().find(|e| e.source == name).map(|e| e.count)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct K2FixedConfigs {
    pub tau: PointN,
    pub level: u64,
    pub ledger: FixedLocusLedger,
    /// Isolated supports, sorted.
    pub isolated: Vec<SupportTriple>,
}

fn decode4(mut idx: u64, level: u64) -> PointN {
    let mut p = [0i64; 4];
    for c in p.iter_mut() {
        *c = (idx % level) as i64;
        idx /= level;
    }
    p
}

fn encode4(p: &PointN, level: u64) -> u64 {
    p.iter().rev().fold(0, |acc, &c| acc * level + c as u64)
}

/// `−(a + b) mod n` for reduced `a`, `b`, without a division.
fn neg_sum(a: i64, b: i64, n: i64) -> i64 {
    let mut c = 2 * n - a - b;
    if c >= n {
        c -= n;
    }
    if c >= n {
        c -= n;
    }
    c
}

/// Supports `{a1, a2, a3}` with `a1 + a2 + a3 = 0` fixed by `a ↦ tau − a`,
/// found by exhaustive scan of `A[N]`.
///
/// A fixed triple is isolated when all three points satisfy `2a = tau` and
/// they are pairwise distinct, or when all three coincide (the degenerate
/// support `{−tau, −tau, −tau}` standing for the non-reduced point). Every
/// other fixed triple has the shape `{−tau, b, tau − b}` and belongs to the
/// surface component.
pub fn k2_fixed_configs(tau: PointN, level: u64, exec: Exec) -> Result<K2FixedConfigs> {
    if level == 0 || !level.is_multiple_of(6) {
        return Err(Error::Usage(format!("level {level} must be a multiple of 6")));
    }
    let n = level as i64;
    let tau = tau.map(|c| c.rem_euclid(n));
    if tau.iter().any(|&c| (3 * c) % n != 0) {
        return Err(Error::Usage(format!("tau = {tau:?} is not 3-torsion")));
    }
    let total = level.pow(4);
    let coords: Vec<PointN> = (0..total).map(|i| decode4(i, level)).collect();
    let reflected: Vec<u64> =
        coords.iter().map(|p| encode4(&[0, 1, 2, 3].map(|k| (tau[k] - p[k]).rem_euclid(n)), level)).collect();
    let fixed_point = |p: &PointN| (0..4).all(|i| (2 * p[i] - tau[i]).rem_euclid(n) == 0);
    // (is_isolated, triple) for each fixed multiset, keyed by its smallest index
    let found: Vec<Vec<(bool, SupportTriple)>> = exec.filter_map(0..total, |i| {
        let a = coords[i as usize];
        let mut out = Vec::new();
        for j in i..total {
            let b = coords[j as usize];
            let k = encode4(&[0, 1, 2, 3].map(|t| neg_sum(a[t], b[t], n)), level);
            if k < j {
                continue;
            }
            let mut image = [reflected[i as usize], reflected[j as usize], reflected[k as usize]];
            image.sort_unstable();
            if image != [i, j, k] {
                continue;
            }
            let c = coords[k as usize];
            let mut points = [a, b, c];
            points.sort();
            let all_fixed = points.iter().all(fixed_point);
            let distinct = i != j && j != k;
            let equal = i == j && j == k;
            out.push((all_fixed && (distinct || equal), SupportTriple { points }));
        }
        (!out.is_empty()).then_some(out)
    });
    let mut isolated = Vec::new();
    let mut family = 0u64;
    let mut degenerate = 0u64;
    for (iso, t) in found.into_iter().flatten() {
        if iso {
            if t.points[0] == t.points[1] {
                degenerate += 1;
            }
            isolated.push(t);
        } else {
            family += 1;
        }
    }
    isolated.sort();
    let distinct = isolated.len() as u64 - degenerate;
    let ledger = FixedLocusLedger {
        surface: "kummer_support_family".into(),
        surface_count: family,
        isolated: isolated.len() as u64,
        breakdown: vec![
            LedgerEntry { source: "degenerate_support".into(), count: degenerate },
            LedgerEntry { source: "distinct_fixed_points".into(), count: distinct },
        ],
    };
    Ok(K2FixedConfigs { tau, level, ledger, isolated })
}

/// `(σ⁻¹x, σ⁻¹y)`: the label whose fixed locus `σ` carries onto `Fix(ι_(x,y))`.
pub fn galois_label_map(sigma: &ZMatrix, point: &[i64]) -> Result<Vec<i64>> {
    let inv = sigma.inverse_mod()?;
    Ok(apply_both(&inv, point))
}

/// `(σx, σy)`, the action on cycle classes `s_(x,y)`; inverse to [`galois_label_map`].
pub fn cycle_class_map(sigma: &ZMatrix, point: &[i64]) -> Vec<i64> {
    apply_both(sigma, point)
}

fn apply_both(m: &ZMatrix, point: &[i64]) -> Vec<i64> {
    let mut out = m.mul_vec(&point[..4]);
    out.extend(m.mul_vec(&point[4..]));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Hyp,
    El,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityReport {
    pub parity: Parity,
    pub h0_plus: u32,
    pub h0_minus: u32,
    pub pv_hyp_points: usize,
    pub pv_el_base_points: usize,
    pub zero_contains_origin_side: Side,
    /// Zero-set size of the matching refinement of `q_L` on a `(1,3)` model.
    pub ql_zero_set_size: usize,
    pub consistent: bool,
}

/// The eigenspace table for `ι*` on `H⁰(A, L)`, `L` of type `(1,3)`.
///
/// The zero set of `q_L` always contains the origin; it is the set of 10
/// points on the hyperelliptic curve when `q_L` is even and the 6 base points
/// of the elliptic pencil when odd.
pub fn parity_report(parity: Parity) -> ParityReport {
    let (h0_plus, h0_minus) = match parity {
        Parity::Even => (2, 1),
        Parity::Odd => (1, 2),
    };
    let q = ql_form(&canonical_model(1, 3, 2).expect("valid type"), parity).expect("odd type");
    let zeros = q.zero_set().len();
    let origin_is_zero = q.eval(&[0; 4]) == 0;
    let (pv_hyp_points, pv_el_base_points, side) = match parity {
        Parity::Even => (zeros, 16 - zeros, Side::Hyp),
        Parity::Odd => (16 - zeros, zeros, Side::El),
    };
    ParityReport {
        parity,
        h0_plus,
        h0_minus,
        pv_hyp_points,
        pv_el_base_points,
        zero_contains_origin_side: side,
        ql_zero_set_size: zeros,
        consistent: origin_is_zero && pv_hyp_points == 10 && pv_el_base_points == 6,
    }
}

/// Dimension of the fibres of `Fix(ι*)` over a curve `C` in `P V_hyp` or `P V_el`.
///
/// `ι*` acts on `H⁰(A, L)` with eigenvalues `±1` of the multiplicities in
/// [`parity_report`]; `[C]` spans one eigenline of its stratum. The fibre
/// dimension is the number of eigenvalues on `H⁰(A, L)/[C]` equal to the
/// eigenvalue on `[C]`.
pub fn fiber_dims(side: Side, parity: Parity) -> u32 {
    let r = parity_report(parity);
    let mut eigen: Vec<i8> = std::iter::repeat_n(1, r.h0_plus as usize)
        .chain(std::iter::repeat_n(-1, r.h0_minus as usize))
        .collect();
    // V_hyp is the 1-dimensional eigenspace, V_el the 2-dimensional one
    let hyp_sign = if r.h0_plus == 1 { 1 } else { -1 };
    let c = match side {
        Side::Hyp => hyp_sign,
        Side::El => -hyp_sign,
    };
    let pos = eigen.iter().position(|&e| e == c).expect("eigenvalue present");
    eigen.remove(pos);
    eigen.iter().filter(|&&e| e == c).count() as u32
}

/// Genus of a double cover of a genus `g_quotient` curve branched at `branch_points` points.
pub fn rh_double_cover(g_quotient: i64, branch_points: i64) -> Result<i64> {
    if g_quotient < 0 || branch_points < 0 {
        return Err(Error::Genus(format!("negative input ({g_quotient}, {branch_points})")));
    }
    if branch_points % 2 != 0 {
        return Err(Error::OddBranchCount(branch_points));
    }
    Ok(2 * g_quotient - 1 + branch_points / 2)
}

/// Geometric genus of a nodal curve.
pub fn geometric_genus(p_a: i64, nodes: i64) -> Result<i64> {
    if nodes < 0 || nodes > p_a {
        return Err(Error::Genus(format!("{nodes} nodes on a curve of arithmetic genus {p_a}")));
    }
    Ok(p_a - nodes)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberConfig {
    #[serde(rename = "I1", default)]
    pub i1: u64,
    #[serde(rename = "I2", default)]
    pub i2: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerCheck {
    pub total: u64,
    pub pass: bool,
    /// The configuration of four `I₁` and ten `I₂` fibres.
    pub matches_reference: bool,
}

pub fn euler_check(cfg: FiberConfig) -> EulerCheck {
    let total = cfg.i1 + 2 * cfg.i2;
    EulerCheck { total, pass: total == 24, matches_reference: cfg == FiberConfig { i1: 4, i2: 10 } }
}

/// Isolated fixed points on the compactified-Jacobian side, assembled from
/// [`lemma_count`]: 15 + 1 over `P V_hyp`, two on each of the ten `I₂` fibres.
pub fn jacobian_ledger(cfg: &HudsonConfig) -> Result<(FixedLocusLedger, Report)> {
    let mut report = Report::default();
    let a = lemma_count(cfg, LemmaPart::A, None)?;
    let c = lemma_count(cfg, LemmaPart::C, None)?;
    let per_anchor: Vec<usize> =
        cfg.ten().iter().map(|t| lemma_count(cfg, LemmaPart::B, Some(t)).map(|l| l.count)).collect::<Result<_>>()?;
    report.push(Check::new("lemma_a_zero", a.count == 0, format!("{}", a.count)));
    report.push(Check::new("lemma_b_two_each", per_anchor.iter().all(|&k| k == 2), format!("{per_anchor:?}")));
    report.push(Check::new("lemma_c_fifteen", c.count == 15, format!("{}", c.count)));
    let hyp = c.count as u64 + 1;
    let i2: u64 = per_anchor.iter().map(|&k| k as u64).sum();
    let smooth_el = fiber_dims(Side::El, Parity::Even);
    report.push(Check::new("hyp_fibre_zero_dimensional", fiber_dims(Side::Hyp, Parity::Even) == 0, String::new()));
    let ledger = FixedLocusLedger {
        surface: "elliptic_k3".into(),
        surface_count: 1,
        isolated: hyp + i2 + a.count as u64,
        breakdown: vec![
            LedgerEntry { source: "PV_hyp".into(), count: hyp },
            LedgerEntry { source: "I2_fibers".into(), count: i2 },
            LedgerEntry { source: "I1_fibers".into(), count: a.count as u64 },
            LedgerEntry { source: "smooth_el_fibers".into(), count: 0 },
        ],
    };
    report.push(Check::new("smooth_el_fibres_one_dimensional", smooth_el == 1, String::new()));
    report.push(Check::new("total_36", ledger.isolated == 36 && ledger.consistent(), format!("{}", ledger.isolated)));
    Ok((ledger, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hudson_tables() {
        let cfg = HudsonConfig::standard();
        let r = hudson_check(&cfg);
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(add2(cfg.point("A").unwrap(), cfg.point("B").unwrap()), [1, 1, 0, 0]);
        assert_eq!(add2(cfg.point("A'").unwrap(), cfg.point("B'").unwrap()), cfg.point("C'").unwrap());
        assert_eq!(add2(cfg.point("A").unwrap(), cfg.point("A").unwrap()), [0; 4]);
        assert_eq!(cfg.ten().len(), 10);
    }

    #[test]
    fn lemma_parts() {
        let cfg = HudsonConfig::standard();
        assert_eq!(lemma_count(&cfg, LemmaPart::A, None).unwrap().count, 0);
        let b = lemma_count(&cfg, LemmaPart::B, Some("1")).unwrap();
        assert_eq!(b.count, 2);
        let sets: BTreeSet<BTreeSet<String>> =
            b.witnesses.iter().map(|w| w.iter().filter(|n| *n != "1").cloned().collect()).collect();
        let expect: BTreeSet<BTreeSet<String>> = [["AB'", "BC'", "CA'"], ["AC'", "BA'", "CB'"]]
            .iter()
            .map(|w| w.iter().map(|s| s.to_string()).collect())
            .collect();
        assert_eq!(sets, expect);
        for t in TEN {
            assert_eq!(lemma_count(&cfg, LemmaPart::B, Some(t)).unwrap().count, 2, "anchor {t}");
        }
    }

    #[test]
    fn lemma_c_matches_published_table() {
        let cfg = HudsonConfig::standard();
        let c = lemma_count(&cfg, LemmaPart::C, None).unwrap();
        assert_eq!(c.count, 15);
        let left = [
            ["1", "A", "A'", "AA'"],
            ["1", "B", "B'", "BB'"],
            ["1", "C", "C'", "CC'"],
            ["1", "AA'", "BB'", "CC'"],
            ["1", "A", "B", "C"],
            ["1", "A'", "B'", "C'"],
            ["A", "A'", "BB'", "CC'"],
        ];
        let right = [
            ["A", "B", "C'", "CC'"],
            ["A'", "B'", "C", "CC'"],
            ["A", "B'", "C", "BB'"],
            ["A'", "B", "C'", "BB'"],
            ["A'", "B", "C", "AA'"],
            ["A", "B'", "C'", "AA'"],
            ["B", "B'", "AA'", "CC'"],
            ["C", "C'", "AA'", "BB'"],
        ];
        let got: BTreeSet<BTreeSet<&str>> =
            c.witnesses.iter().map(|w| w.iter().map(String::as_str).collect()).collect();
        let table: BTreeSet<BTreeSet<&str>> =
            left.iter().chain(right.iter()).map(|w| w.iter().copied().collect()).collect();
        assert_eq!(table.len(), 15);
        assert_eq!(got, table);
        let mut sorted = c.witnesses.clone();
        sorted.sort_by_key(|w| w.iter().map(|n| cfg.point(n).unwrap()).min());
        assert_eq!(c.witnesses.len(), 15);
    }

    #[test]
    fn lemma_anchor_errors() {
        let cfg = HudsonConfig::standard();
        assert!(matches!(lemma_count(&cfg, LemmaPart::B, Some("AB'")), Err(Error::InvalidAnchor(_))));
        assert!(matches!(lemma_count(&cfg, LemmaPart::B, None), Err(Error::InvalidAnchor(_))));
        assert!(matches!(lemma_count(&cfg, LemmaPart::C, Some("1")), Err(Error::InvalidAnchor(_))));
    }

    #[test]
    fn alternative_base_locus_has_same_counts() {
        // translate of the standard six by A
        let cfg = HudsonConfig::standard();
        let shift = cfg.point("A").unwrap();
        let moved: Vec<String> =
            SIX.iter().map(|n| cfg.name_of(add2(cfg.point(n).unwrap(), shift)).to_string()).collect();
        let names: Vec<&str> = moved.iter().map(String::as_str).collect();
        let alt = HudsonConfig::with_base_locus(&names).unwrap();
        assert!(hudson_check(&alt).get("base_locus").unwrap().failed());
        assert_eq!(lemma_count(&alt, LemmaPart::A, None).unwrap().count, 0);
        assert_eq!(lemma_count(&alt, LemmaPart::C, None).unwrap().count, 15);
        for t in alt.ten() {
            assert_eq!(lemma_count(&alt, LemmaPart::B, Some(t)).unwrap().count, 2);
        }
        assert!(HudsonConfig::with_base_locus(&["1", "A"]).is_err());
    }

    #[test]
    fn two_torsion_triples() {
        assert_eq!(triples_two_torsion(), 35);
        assert_eq!(ordered_triples_two_torsion(), 210);
        assert_eq!(ordered_triples_two_torsion() / 6, triples_two_torsion());
        assert_eq!(15 * 14 / 2 / 3, 35);
    }

    #[test]
    fn k2_at_origin() {
        let k = k2_fixed_configs([0; 4], 6, Exec::Parallel).unwrap();
        assert_eq!(k.ledger.isolated, 36);
        assert_eq!(k.ledger.source("degenerate_support"), Some(1));
        assert_eq!(k.ledger.source("distinct_fixed_points"), Some(35));
        assert!(k.ledger.surface_count > 0);
        assert!(k.ledger.consistent());
        assert!(k.isolated.contains(&SupportTriple::new([[0; 4]; 3], 6).unwrap()));
    }

    #[test]
    fn k2_translation() {
        let base = k2_fixed_configs([0; 4], 6, Exec::Parallel).unwrap();
        let tau = [2, 0, 4, 2];
        let k = k2_fixed_configs(tau, 6, Exec::Parallel).unwrap();
        let minus_tau = tau.map(|c| -c);
        let mut shifted: Vec<SupportTriple> = base.isolated.iter().map(|t| t.translate(&minus_tau, 6)).collect();
        shifted.sort();
        assert_eq!(k.isolated, shifted);
        assert_eq!(k.ledger.surface_count, base.ledger.surface_count);
        let common = SupportTriple::new([[0; 4], tau, minus_tau], 6).unwrap();
        assert!(common.is_fixed_by(&[0; 4], 6) && common.is_fixed_by(&tau, 6));
    }

    #[test]
    fn k2_strategies_agree() {
        let tau = [0, 2, 0, 4];
        let a = k2_fixed_configs(tau, 6, Exec::Sequential).unwrap();
        let b = k2_fixed_configs(tau, 6, Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn k2_preconditions() {
        assert!(k2_fixed_configs([0; 4], 4, Exec::Sequential).is_err());
        assert!(k2_fixed_configs([1, 0, 0, 0], 6, Exec::Sequential).is_err());
        assert!(SupportTriple::new([[1, 0, 0, 0], [0; 4], [0; 4]], 6).is_err());
    }

    #[test]
    fn label_conventions() {
        let id = ZMatrix::identity(4, Some(3));
        let p = vec![1, 2, 0, 1, 2, 2, 1, 0];
        assert_eq!(galois_label_map(&id, &p).unwrap(), p);
        let minus = id.neg();
        let image = galois_label_map(&minus, &p).unwrap();
        assert_eq!(image, p.iter().map(|c| (2 * c) % 3).collect::<Vec<_>>());
        let s = ZMatrix::from_rows(&[vec![0, 2, 0, 0], vec![1, 2, 0, 0], vec![0, 0, 1, 1], vec![0, 0, 0, 1]], Some(3)).unwrap();
        assert_eq!(cycle_class_map(&s, &galois_label_map(&s, &p).unwrap()), p);
        assert_eq!(galois_label_map(&s, &cycle_class_map(&s, &p)).unwrap(), p);
        let sing = ZMatrix::diagonal(&[1, 1, 1, 0], Some(3));
        assert!(galois_label_map(&sing, &p).is_err());
    }

    #[test]
    fn parity_tables() {
        let e = parity_report(Parity::Even);
        assert_eq!((e.h0_plus, e.h0_minus, e.pv_hyp_points, e.pv_el_base_points), (2, 1, 10, 6));
        assert_eq!(e.zero_contains_origin_side, Side::Hyp);
        assert_eq!(e.ql_zero_set_size, 10);
        assert!(e.consistent);
        let o = parity_report(Parity::Odd);
        assert_eq!((o.h0_plus, o.h0_minus, o.pv_hyp_points, o.pv_el_base_points), (1, 2, 10, 6));
        assert_eq!(o.zero_contains_origin_side, Side::El);
        assert_eq!(o.ql_zero_set_size, 6);
        assert!(o.consistent);
    }

    #[test]
    fn fibre_dimensions() {
        for p in [Parity::Even, Parity::Odd] {
            assert_eq!(fiber_dims(Side::Hyp, p), 0);
            assert_eq!(fiber_dims(Side::El, p), 1);
        }
    }

    #[test]
    fn genus_formulas() {
        assert_eq!(rh_double_cover(0, 8).unwrap(), 3);
        assert_eq!(rh_double_cover(0, 6).unwrap(), 2);
        assert_eq!(rh_double_cover(0, 10).unwrap(), 4);
        assert_eq!(rh_double_cover(1, 2).unwrap(), 2);
        assert_eq!(rh_double_cover(0, 7), Err(Error::OddBranchCount(7)));
        assert_eq!(geometric_genus(4, 2).unwrap(), 2);
        assert_eq!(geometric_genus(4, 1).unwrap(), 3);
        assert_eq!(geometric_genus(4, 0).unwrap(), 4);
        assert!(geometric_genus(1, 2).is_err());
        assert_eq!(geometric_genus(4, 2).unwrap(), rh_double_cover(0, 6).unwrap());
    }

    #[test]
    fn euler_numbers() {
        let reference = euler_check(FiberConfig { i1: 4, i2: 10 });
        assert_eq!((reference.total, reference.pass, reference.matches_reference), (24, true, true));
        let alt = euler_check(FiberConfig { i1: 24, i2: 0 });
        assert_eq!((alt.total, alt.pass, alt.matches_reference), (24, true, false));
        let bad = euler_check(FiberConfig { i1: 3, i2: 10 });
        assert_eq!((bad.total, bad.pass), (23, false));
    }

    #[test]
    fn jacobian_side() {
        let (ledger, report) = jacobian_ledger(&HudsonConfig::standard()).unwrap();
        assert!(report.passed());
        assert_eq!(ledger.isolated, 36);
        assert_eq!(ledger.source("PV_hyp"), Some(16));
        assert_eq!(ledger.source("I2_fibers"), Some(20));
        assert_eq!(ledger.source("I2_fibers").unwrap() / 10, 2);
        let k = k2_fixed_configs([0; 4], 6, Exec::Parallel).unwrap();
        assert_eq!(k.ledger.isolated, ledger.isolated);
        assert_eq!(k.ledger.isolated, 1 + triples_two_torsion() as u64);
    }

    #[test]
    fn witness_encoding_order() {
        let cfg = HudsonConfig::standard();
        let c = lemma_count(&cfg, LemmaPart::C, None).unwrap();
        let enc: Vec<Vec<Point2>> =
            c.witnesses.iter().map(|w| w.iter().map(|n| cfg.point(n).unwrap()).collect()).collect();
        assert!(enc.iter().all(|w| w.windows(2).all(|p| p[0] < p[1])));
        assert!(enc.windows(2).all(|p| p[0] < p[1]));
    }
}
