//! Characters of finite-image Galois actions.
//!
//! A [`GaloisAction`] lists generators acting on `A[N]` (and `Â[N]`), a
//! cyclotomic value mod `N`, and an integer matrix standing in for the action
//! on `H¹`. [`GaloisGroup`] closes the generators into a finite group whose
//! elements are named by generator words; every [`ClassFunction`] lives on
//! one materialized group.

use crate::check::{Check, Report};
use crate::error::{Error, Result};
use crate::gav::GavGroup;
use crate::surface::{weil_matrix, SurfaceTorsionModel};
use crate::zmodmat::ZMatrix;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

/// Closure is abandoned past this many elements.
pub const MAX_GROUP_ORDER: usize = 100_000;

/// An `H¹` lift with an entry this large cannot have finite order in practice.
const MAX_LIFT_ENTRY: i64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    #[serde(rename = "M_A")]
    pub m_a: Vec<Vec<i64>>,
    #[serde(rename = "M_Ahat", default, skip_serializing_if = "Option::is_none")]
    pub m_ahat: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyc: Option<i64>,
    /// Integer matrix of the action on `H¹`; defaults to the symmetric lift of `M_A`.
    #[serde(rename = "H1", default, skip_serializing_if = "Option::is_none")]
    pub h1: Option<Vec<Vec<i64>>>,
}

impl GeneratorSpec {
    pub fn new(name: &str, m_a: Vec<Vec<i64>>) -> Self {
        GeneratorSpec { name: name.to_string(), m_a, m_ahat: None, cyc: None, h1: None }
    }

    pub fn with_ahat(mut self, m_ahat: Vec<Vec<i64>>) -> Self {
        self.m_ahat = Some(m_ahat);
        self
    }

    pub fn with_cyc(mut self, cyc: i64) -> Self {
        self.cyc = Some(cyc);
        self
    }

    pub fn with_h1(mut self, h1: Vec<Vec<i64>>) -> Self {
        self.h1 = Some(h1);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisAction {
    #[serde(rename = "N")]
    pub level: u64,
    pub generators: Vec<GeneratorSpec>,
}

/// One group element's data for one action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionImage {
    pub m_a: ZMatrix,
    pub m_ahat: ZMatrix,
    pub cyc: i64,
    pub h1: ZMatrix,
}

impl ActionImage {
    fn identity(level: u64) -> Self {
        ActionImage {
            m_a: ZMatrix::identity(4, Some(level)),
            m_ahat: ZMatrix::identity(4, Some(level)),
            cyc: 1,
            h1: ZMatrix::identity(4, None),
        }
    }

    fn mul(&self, other: &ActionImage) -> ActionImage {
        let level = self.m_a.modulus().expect("reduced");
        ActionImage {
            m_a: self.m_a.mul(&other.m_a).expect("4x4"),
            m_ahat: self.m_ahat.mul(&other.m_ahat).expect("4x4"),
            cyc: (self.cyc * other.cyc).rem_euclid(level as i64),
            h1: self.h1.mul(&other.h1).expect("4x4"),
        }
    }

    fn key(&self, out: &mut Vec<i64>) {
        out.extend_from_slice(self.m_a.entries());
        out.extend_from_slice(self.m_ahat.entries());
        out.push(self.cyc);
        out.extend_from_slice(self.h1.entries());
    }

    /// `σ·(x, y) = (M_A x, M_Ahat y)`.
    pub fn apply(&self, point: &[i64]) -> Vec<i64> {
        let mut out = self.m_a.mul_vec(&point[..4]);
        out.extend(self.m_ahat.mul_vec(&point[4..]));
        out
    }
}

impl GaloisAction {
    pub fn new(level: u64, generators: Vec<GeneratorSpec>) -> Result<Self> {
        let act = GaloisAction { level, generators };
        act.images()?;
        Ok(act)
    }

    /// The action of the trivial group.
    pub fn trivial(level: u64) -> Self {
        GaloisAction { level, generators: Vec::new() }
    }

    /// Whether every generator supplied an explicit cyclotomic value.
    pub fn has_cyclotomic_values(&self) -> bool {
        self.generators.iter().all(|g| g.cyc.is_some())
    }

    fn images(&self) -> Result<Vec<ActionImage>> {
        if self.level < 2 {
            return Err(Error::Usage(format!("level {} must be at least 2", self.level)));
        }
        let level = Some(self.level);
        let mut out = Vec::with_capacity(self.generators.len());
        let mut seen = BTreeSet::new();
        for g in &self.generators {
            if !seen.insert(g.name.as_str()) || g.name.is_empty() || g.name.contains('*') || g.name == "e" {
                return Err(Error::Config(format!("generator name {:?} is empty, reserved or repeated", g.name)));
            }
            let m_a = square4(&g.m_a, level, &g.name)?;
            let m_a_inv = m_a.inverse_mod()?;
            let cyc = g.cyc.unwrap_or(1).rem_euclid(self.level as i64);
            if crate::zmodmat::mod_inverse(cyc, self.level as i64).is_none() {
                return Err(Error::Config(format!("cyc({}) = {cyc} is not a unit mod {}", g.name, self.level)));
            }
            let m_ahat = match &g.m_ahat {
                Some(m) => {
                    let m = square4(m, level, &g.name)?;
                    m.inverse_mod()?;
                    m
                }
                None => contragredient(&m_a_inv, cyc, self.level),
            };
            let h1 = match &g.h1 {
                Some(h) => square4(h, None, &g.name)?,
                None => m_a.symmetric_lift(),
            };
            out.push(ActionImage { m_a, m_ahat, cyc, h1 });
        }
        Ok(out)
    }
}

fn square4(rows: &[Vec<i64>], modulus: Option<u64>, name: &str) -> Result<ZMatrix> {
    let m = ZMatrix::from_rows(rows, modulus)?;
    if m.rows() != 4 || m.cols() != 4 {
        return Err(Error::Dimension(format!("generator {name}: matrices must be 4x4")));
    }
    Ok(m)
}

/// `cyc · J⁻¹ (M⁻¹)ᵀ J`, so that `⟨Mx, M̂z⟩ = cyc·⟨x, z⟩` for the Weil pairing.
fn contragredient(m_inv: &ZMatrix, cyc: i64, level: u64) -> ZMatrix {
    let j = weil_matrix(Some(level));
    let j_inv = j.neg();
    j_inv.mul(&m_inv.transpose()).and_then(|x| x.mul(&j)).expect("4x4").scale(cyc)
}

/// A finite group materialized by closing the generators of one or more
/// actions that share generator names.
#[derive(Debug)]
pub struct GaloisGroup {
    generator_names: Vec<String>,
    levels: Vec<u64>,
    rational_twist: Vec<bool>,
    generator_index: Vec<usize>,
    names: Vec<String>,
    images: Vec<Vec<ActionImage>>,
    index: HashMap<Vec<i64>, usize>,
    squares: Vec<usize>,
}

impl GaloisGroup {
    pub fn materialize(act: &GaloisAction) -> Result<Arc<GaloisGroup>> {
        Self::materialize_joint(std::slice::from_ref(act))
    }

    /// One group for several actions; generator `k` of every action is the
    /// same abstract element.
    pub fn materialize_joint(acts: &[GaloisAction]) -> Result<Arc<GaloisGroup>> {
        Self::materialize_capped(acts, MAX_GROUP_ORDER)
    }

    pub fn materialize_capped(acts: &[GaloisAction], cap: usize) -> Result<Arc<GaloisGroup>> {
        let first = acts.first().ok_or_else(|| Error::Usage("no action given".into()))?;
        let generator_names: Vec<String> = first.generators.iter().map(|g| g.name.clone()).collect();
        for a in acts {
            let names: Vec<&String> = a.generators.iter().map(|g| &g.name).collect();
            if names != generator_names.iter().collect::<Vec<_>>() {
                return Err(Error::GroupMismatch);
            }
        }
        let gens: Vec<Vec<ActionImage>> = acts.iter().map(GaloisAction::images).collect::<Result<_>>()?;
        let levels: Vec<u64> = acts.iter().map(|a| a.level).collect();

        let key_of = |imgs: &[ActionImage]| {
            let mut k = Vec::new();
            for i in imgs {
                i.key(&mut k);
            }
            k
        };
        let identity: Vec<ActionImage> = levels.iter().map(|&l| ActionImage::identity(l)).collect();
        let mut names = vec!["e".to_string()];
        let mut index = HashMap::from([(key_of(&identity), 0)]);
        let mut images = vec![identity];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (g, gname) in generator_names.iter().enumerate() {
                let next: Vec<ActionImage> =
                    images[i].iter().zip(&gens).map(|(a, b)| a.mul(&b[g])).collect();
                let key = key_of(&next);
                if index.contains_key(&key) {
                    continue;
                }
                if images.len() >= cap {
                    return Err(Error::GroupTooLarge(cap));
                }
                if next.iter().any(|img| img.h1.entries().iter().any(|x| x.abs() > MAX_LIFT_ENTRY)) {
                    return Err(Error::Config("H1 lift generates an infinite group".into()));
                }
                let name = if i == 0 { gname.clone() } else { format!("{}*{}", names[i], gname) };
                index.insert(key, images.len());
                names.push(name);
                images.push(next);
                queue.push_back(images.len() - 1);
            }
        }
        let generator_index = (0..generator_names.len())
            .map(|g| {
                let imgs: Vec<ActionImage> = gens.iter().map(|b| b[g].clone()).collect();
                index[&key_of(&imgs)]
            })
            .collect();
        let mut group = GaloisGroup {
            generator_names,
            generator_index,
            levels,
            rational_twist: acts.iter().map(GaloisAction::has_cyclotomic_values).collect(),
            names,
            images,
            index,
            squares: Vec::new(),
        };
        group.squares = (0..group.order()).map(|i| group.mul(i, i)).collect();
        Ok(Arc::new(group))
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    /// Element indices of the generators (a generator may coincide with `e`).
    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_index
    }

    pub fn actions(&self) -> usize {
        self.levels.len()
    }

    pub fn image(&self, element: usize, action: usize) -> &ActionImage {
        &self.images[element][action]
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Index of the product `a·b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let prod: Vec<ActionImage> =
            self.images[a].iter().zip(&self.images[b]).map(|(x, y)| x.mul(y)).collect();
        let mut key = Vec::new();
        for p in &prod {
            p.key(&mut key);
        }
        self.index[&key]
    }

    pub fn square(&self, a: usize) -> usize {
        self.squares[a]
    }

    pub fn inverse(&self, a: usize) -> usize {
        let mut prev = 0;
        let mut cur = a;
        while cur != 0 {
            prev = cur;
            cur = self.mul(cur, a);
        }
        if a == 0 {
            0
        } else {
            prev
        }
    }

    fn check_action(&self, action: usize) -> Result<()> {
        if action >= self.actions() {
            return Err(Error::Usage(format!("action index {action} out of range")));
        }
        Ok(())
    }
}

/// Rational values on the elements of a materialized group, with a formal
/// weight tag.
#[derive(Debug, Clone)]
pub struct ClassFunction {
    group: Arc<GaloisGroup>,
    values: Vec<Rational64>,
    weight: i64,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.values == other.values && self.weight == other.weight
    }
}

impl ClassFunction {
    pub fn constant(group: &Arc<GaloisGroup>, value: i64) -> Self {
        ClassFunction { group: group.clone(), values: vec![Rational64::from(value); group.order()], weight: 0 }
    }

    pub fn group(&self) -> &Arc<GaloisGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Rational64] {
        &self.values
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn at(&self, name: &str) -> Option<Rational64> {
        self.group.position(name).map(|i| self.values[i])
    }

    pub fn at_identity(&self) -> Rational64 {
        self.values[0]
    }

    /// `(element name, value)` in canonical element order.
    pub fn named_values(&self) -> Vec<(String, Rational64)> {
        self.group.names.iter().cloned().zip(self.values.iter().copied()).collect()
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.zip(other, |a, b| a - b)
    }

    pub fn add_constant(&self, c: i64) -> ClassFunction {
        self.map(|v| v + Rational64::from(c))
    }

    pub fn scale(&self, c: i64) -> ClassFunction {
        self.map(|v| v * Rational64::from(c))
    }

    fn map(&self, f: impl Fn(Rational64) -> Rational64) -> ClassFunction {
        ClassFunction { values: self.values.iter().map(|&v| f(v)).collect(), ..self.clone() }
    }

    fn zip(&self, other: &ClassFunction, f: impl Fn(Rational64, Rational64) -> Rational64) -> Result<ClassFunction> {
        if !Arc::ptr_eq(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        if self.weight != other.weight {
            return Err(Error::Usage(format!("adding weights {} and {}", self.weight, other.weight)));
        }
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect();
        Ok(ClassFunction { values, ..self.clone() })
    }

    /// Constant on conjugacy classes. Quadratic in the group order.
    pub fn is_class_function(&self) -> bool {
        let g = &self.group;
        (0..g.order()).all(|h| {
            let hi = g.inverse(h);
            (0..g.order()).all(|x| self.values[g.mul(g.mul(h, x), hi)] == self.values[x])
        })
    }

    /// Average value over the group.
    pub fn mean(&self) -> Rational64 {
        let total: Rational64 = self.values.iter().copied().sum();
        total / Rational64::from(self.group.order() as i64)
    }
}

/// Number of points of `G` fixed by each group element.
pub fn perm_character(group: &Arc<GaloisGroup>, action: usize, g: &GavGroup) -> Result<ClassFunction> {
    group.check_action(action)?;
    check_preserves(group, action, g)?;
    let elements = g.elements();
    let values = (0..group.order())
        .map(|i| {
            let img = group.image(i, action);
            Rational64::from(elements.iter().filter(|p| img.apply(p) == **p).count() as i64)
        })
        .collect();
    Ok(ClassFunction { group: group.clone(), values, weight: 0 })
}

fn check_preserves(group: &Arc<GaloisGroup>, action: usize, g: &GavGroup) -> Result<()> {
    if group.levels[action] != g.modulus() {
        return Err(Error::Usage(format!(
            "action level {} differs from group level {}",
            group.levels[action],
            g.modulus()
        )));
    }
    // generators of the Galois group suffice: it is generated by them
    for (name, &i) in group.generator_names.iter().zip(&group.generator_index) {
        let img = group.image(i, action);
        for p in g.generators() {
            let q = img.apply(p);
            if !g.contains(&q) {
                return Err(Error::NotPreserved {
                    element: name.clone(),
                    point: p.iter().map(|&c| c as u64).collect(),
                });
            }
        }
    }
    Ok(())
}

/// Trace of the `H¹` matrices, weight 1.
pub fn h1_character(group: &Arc<GaloisGroup>, action: usize) -> Result<ClassFunction> {
    group.check_action(action)?;
    let values = (0..group.order())
        .map(|i| {
            let h = &group.image(i, action).h1;
            Rational64::from((0..4).map(|k| h.get(k, k)).sum::<i64>())
        })
        .collect();
    Ok(ClassFunction { group: group.clone(), values, weight: 1 })
}

pub fn sym2(chi: &ClassFunction) -> ClassFunction {
    let g = &chi.group;
    let two = Rational64::from(2);
    let values = (0..g.order()).map(|i| (chi.values[i] * chi.values[i] + chi.values[g.square(i)]) / two).collect();
    ClassFunction { values, weight: 2 * chi.weight, group: g.clone() }
}

pub fn wedge2(chi: &ClassFunction) -> ClassFunction {
    let g = &chi.group;
    let two = Rational64::from(2);
    let values = (0..g.order()).map(|i| (chi.values[i] * chi.values[i] - chi.values[g.square(i)]) / two).collect();
    ClassFunction { values, weight: 2 * chi.weight, group: g.clone() }
}

/// `χ ⊗ Q_ℓ(k)`: lowers the weight by `2k`. With cyclotomic values supplied
/// for the action, values are multiplied by `ε(σ)^k` where `ε` is the `±1`
/// lift of the cyclotomic value; otherwise only the tag changes.
pub fn tate_twist(chi: &ClassFunction, action: usize, k: i64) -> Result<ClassFunction> {
    let g = &chi.group;
    g.check_action(action)?;
    let mut out = chi.clone();
    out.weight -= 2 * k;
    if !g.rational_twist[action] || k % 2 == 0 {
        return Ok(out);
    }
    let level = g.levels[action] as i64;
    for (i, v) in out.values.iter_mut().enumerate() {
        let c = g.image(i, action).cyc;
        let sign = if c == 1 {
            1
        } else if c == level - 1 {
            -1
        } else {
            return Err(Error::IrrationalTwist(c));
        };
        *v *= Rational64::from(sign);
    }
    Ok(out)
}

/// `H²(A)(1) ⊕ Q_ℓ`, weight 0, dimension 7.
pub fn h2k_character(group: &Arc<GaloisGroup>, action: usize) -> Result<ClassFunction> {
    let h2 = tate_twist(&wedge2(&h1_character(group, action)?), action, 1)?;
    Ok(h2.add_constant(1))
}

fn require_fourfold(g: &GavGroup) -> Result<()> {
    if g.order() != 81 {
        return Err(Error::NotFourfold(g.order() as usize));
    }
    Ok(())
}

/// `Sym²(H²(K)) ⊕ V` with `V` the permutation character minus the trivial one.
pub fn h4_character(group: &Arc<GaloisGroup>, action: usize, g: &GavGroup) -> Result<ClassFunction> {
    require_fourfold(g)?;
    let v = perm_character(group, action, g)?.add_constant(-1);
    sym2(&h2k_character(group, action)?).add(&v)
}

/// `Q_ℓ⁴ ⊕ H²(A)(1)² ⊕ Sym²(H²(K)) ⊕ V`, dimension 124.
pub fn mukai_sum_character(group: &Arc<GaloisGroup>, action: usize, g: &GavGroup) -> Result<ClassFunction> {
    let h2 = tate_twist(&wedge2(&h1_character(group, action)?), action, 1)?;
    h4_character(group, action, g)?.add(&h2.scale(2)).map(|c| c.add_constant(4))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Comparison {
    Equal,
    Differs { element: String, left: String, right: String },
}

pub fn compare_characters(a: &ClassFunction, b: &ClassFunction) -> Result<Comparison> {
    if !Arc::ptr_eq(&a.group, &b.group) {
        return Err(Error::GroupMismatch);
    }
    for (i, (x, y)) in a.values.iter().zip(&b.values).enumerate() {
        if x != y {
            return Ok(Comparison::Differs {
                element: a.group.names[i].clone(),
                left: x.to_string(),
                right: y.to_string(),
            });
        }
    }
    Ok(Comparison::Equal)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Obstructed { element: String, value_a: String, value_b: String },
    NoObstruction,
}

/// Compares the permutation representations `Q_ℓ[G_A]` and `Q_ℓ[G_B]`.
pub fn de_obstruction(
    group: &Arc<GaloisGroup>,
    action_a: usize,
    g_a: &GavGroup,
    action_b: usize,
    g_b: &GavGroup,
) -> Result<Verdict> {
    require_fourfold(g_a)?;
    require_fourfold(g_b)?;
    let a = perm_character(group, action_a, g_a)?;
    let b = perm_character(group, action_b, g_b)?;
    Ok(match compare_characters(&a, &b)? {
        Comparison::Equal => Verdict::NoObstruction,
        Comparison::Differs { element, left, right } => Verdict::Obstructed { element, value_a: left, value_b: right },
    })
}

/// Point `σ⁻¹·g`, the label whose fixed locus `σ` carries onto that of `ι_g`.
pub fn pullback_label(group: &GaloisGroup, element: usize, action: usize, point: &[i64]) -> Vec<i64> {
    group.image(group.inverse(element), action).apply(point)
}

/// Orbits of the group on the points of `G`, each sorted, listed by smallest member.
pub fn galois_orbits(group: &Arc<GaloisGroup>, action: usize, g: &GavGroup) -> Result<Vec<Vec<Vec<i64>>>> {
    group.check_action(action)?;
    check_preserves(group, action, g)?;
    let mut remaining: BTreeSet<Vec<i64>> = g.elements().into_iter().collect();
    let gens: Vec<&ActionImage> = group.generator_index.iter().map(|&i| group.image(i, action)).collect();
    let mut orbits = Vec::new();
    while let Some(start) = remaining.pop_first() {
        let mut orbit = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            for img in &gens {
                let q = img.apply(&p);
                if orbit.insert(q.clone()) {
                    remaining.remove(&q);
                    queue.push_back(q);
                }
            }
        }
        orbits.push(orbit.into_iter().collect());
    }
    Ok(orbits)
}

/// `D_l·M_A ≡ M_Ahat·D_l` per generator, i.e. `φ_l` commutes with the action.
pub fn equivariance_check(act: &GaloisAction, model: &SurfaceTorsionModel) -> Result<Report> {
    let mut report = Report::default();
    if act.level != model.level() {
        return Err(Error::Usage("action and model levels differ".into()));
    }
    for (spec, img) in act.generators.iter().zip(act.images()?) {
        let lhs = model.d_l().mul(&img.m_a)?;
        let rhs = img.m_ahat.mul(model.d_l())?;
        report.push(Check::new(&format!("equivariant_{}", spec.name), lhs == rhs, String::new()));
    }
    Ok(report)
}

/// Values as integers when all are integral, for compact reporting.
pub fn integral_values(chi: &ClassFunction) -> Option<Vec<i64>> {
    chi.values.iter().map(|v| v.is_integer().then(|| v.to_integer())).collect()
}
