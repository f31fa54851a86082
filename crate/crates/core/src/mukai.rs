//! Mukai vectors `(r, l, s)` with `l` in Néron–Severi coordinates.

use crate::error::{Error, Result};
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawVector")]
pub struct MukaiVector {
    r: i64,
    l: Vec<i64>,
    s: i64,
    gram: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct RawVector {
    r: i64,
    l: Vec<i64>,
    s: i64,
    gram: Vec<Vec<i64>>,
}

impl TryFrom<RawVector> for MukaiVector {
    type Error = Error;

    fn try_from(raw: RawVector) -> Result<Self> {
        MukaiVector::new(raw.r, raw.l, raw.s, raw.gram)
    }
}

fn check_gram(gram: &[Vec<i64>], len: usize) -> Result<()> {
    if gram.len() != len || gram.iter().any(|row| row.len() != len) {
        return Err(Error::Dimension(format!("gram must be {len}x{len}")));
    }
    for i in 0..len {
        for j in 0..i {
            if gram[i][j] != gram[j][i] {
                return Err(Error::Dimension("gram must be symmetric".into()));
            }
        }
    }
    Ok(())
}

fn quad(gram: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
    let mut acc = 0;
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            acc += ai * gram[i][j] * bj;
        }
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predicates {
    pub positive: bool,
    pub primitive: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    pub moduli_dim: i64,
    pub fiber_dim: i64,
}

/// Quantities attached to a vector `v = d·v0` with `v0` primitive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedParams {
    pub v_squared: i64,
    /// `v²/2`.
    pub n: i64,
    pub d: i64,
    /// `v0²/2`.
    pub n_primitive: i64,
    /// `n + r·s`, which must equal `l²/2`.
    pub chi: i64,
}

impl MukaiVector {
    pub fn new(r: i64, l: Vec<i64>, s: i64, gram: Vec<Vec<i64>>) -> Result<Self> {
        check_gram(&gram, l.len())?;
        Ok(MukaiVector { r, l, s, gram })
    }

    /// Rank-one Néron–Severi group `Z·h` with `h² = h2`.
    pub fn rank_one(r: i64, l: i64, s: i64, h2: i64) -> Self {
        MukaiVector { r, l: vec![l], s, gram: vec![vec![h2]] }
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn l(&self) -> &[i64] {
        &self.l
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// `l·G·l`.
    pub fn l_squared(&self) -> i64 {
        quad(&self.gram, &self.l, &self.l)
    }

    pub fn square(&self) -> i64 {
        self.l_squared() - 2 * self.r * self.s
    }

    pub fn content(&self) -> i64 {
        self.l.iter().fold(self.r.gcd(&self.s), |g, x| g.gcd(x))
    }

    /// `(d, v0)` with `v = d·v0`; the zero vector gives `(0, 0)`.
    pub fn primitive_part(&self) -> (i64, MukaiVector) {
        let d = self.content();
        if d == 0 {
            return (0, self.clone());
        }
        (d, self.map(|x| x / d))
    }

    pub fn is_zero(&self) -> bool {
        self.r == 0 && self.s == 0 && self.l.iter().all(|&x| x == 0)
    }

    fn map(&self, f: impl Fn(i64) -> i64) -> MukaiVector {
        MukaiVector {
            r: f(self.r),
            l: self.l.iter().map(|&x| f(x)).collect(),
            s: f(self.s),
            gram: self.gram.clone(),
        }
    }

    pub fn scaled(&self, k: i64) -> MukaiVector {
        self.map(|x| k * x)
    }

    pub fn add(&self, other: &MukaiVector) -> Result<MukaiVector> {
        same_gram(self, other)?;
        Ok(MukaiVector {
            r: self.r + other.r,
            l: self.l.iter().zip(&other.l).map(|(a, b)| a + b).collect(),
            s: self.s + other.s,
            gram: self.gram.clone(),
        })
    }

    pub fn sub(&self, other: &MukaiVector) -> Result<MukaiVector> {
        self.add(&other.scaled(-1))
    }

    pub fn derived(&self) -> Result<DerivedParams> {
        let v_squared = self.square();
        if v_squared % 2 != 0 {
            return Err(Error::Usage(format!("v² = {v_squared} is odd; the NS lattice must be even")));
        }
        let (d, v0) = self.primitive_part();
        let n = v_squared / 2;
        Ok(DerivedParams { v_squared, n, d, n_primitive: v0.square() / 2, chi: n + self.r * self.s })
    }
}

impl fmt::Display for MukaiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {:?}, {})", self.r, self.l, self.s)
    }
}

fn same_gram(v: &MukaiVector, w: &MukaiVector) -> Result<()> {
    if v.gram != w.gram {
        return Err(Error::GramMismatch);
    }
    Ok(())
}

/// `⟨v, w⟩ = l_v·G·l_w − r_v·s_w − r_w·s_v`.
pub fn mukai_pairing(v: &MukaiVector, w: &MukaiVector) -> Result<i64> {
    same_gram(v, w)?;
    Ok(quad(&v.gram, &v.l, &w.l) - v.r * w.s - w.r * v.s)
}

pub fn predicates(v: &MukaiVector) -> Predicates {
    let l_zero = v.l.iter().all(|&x| x == 0);
    let effective = !l_zero && v.l.iter().all(|&x| x >= 0);
    let positive = v.r > 0 || (v.r == 0 && effective && v.s != 0) || (v.r == 0 && l_zero && v.s < 0);
    Predicates { positive, primitive: v.content() == 1 }
}

/// `(v² + 2, v² − 2)`; the fiber dimension needs `v² ≥ 6`.
pub fn dims(v: &MukaiVector) -> Result<Dims> {
    dims_with_override(v, false)
}

pub fn dims_with_override(v: &MukaiVector, allow_below_threshold: bool) -> Result<Dims> {
    let v2 = v.square();
    if v2 < 6 && !allow_below_threshold {
        return Err(Error::BelowThreshold(v2));
    }
    Ok(Dims { moduli_dim: v2 + 2, fiber_dim: v2 - 2 })
}

/// Numerical Fourier–Mukai transform `(r, l, s) ↦ (s, −l, r)`.
pub fn fm_transform(v: &MukaiVector) -> MukaiVector {
    fm_transform_signed(v, -1)
}

/// `(r, l, s) ↦ (s, sign·l, r)`.
pub fn fm_transform_signed(v: &MukaiVector, sign: i64) -> MukaiVector {
    MukaiVector { r: v.s, l: v.l.iter().map(|x| sign * x).collect(), s: v.r, gram: v.gram.clone() }
}

/// The shift `[1]` acts by `−1`.
pub fn shift(v: &MukaiVector) -> MukaiVector {
    v.scaled(-1)
}

/// Tensoring by a line bundle of class `c`.
pub fn tensor_twist(v: &MukaiVector, c: &[i64]) -> Result<MukaiVector> {
    if c.len() != v.l.len() {
        return Err(Error::Dimension("twist class has the wrong length".into()));
    }
    let c2 = quad(&v.gram, c, c);
    if c2 % 2 != 0 {
        return Err(Error::OddTwist(c2));
    }
    Ok(MukaiVector {
        r: v.r,
        l: v.l.iter().zip(c).map(|(a, b)| a + v.r * b).collect(),
        s: v.s + quad(&v.gram, &v.l, c) + v.r * c2 / 2,
        gram: v.gram.clone(),
    })
}

/// A Mukai vector with rational coordinates, as produced by reflections.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QVector {
    pub r: Rational64,
    pub l: Vec<Rational64>,
    pub s: Rational64,
    pub gram: Vec<Vec<i64>>,
}

impl From<&MukaiVector> for QVector {
    fn from(v: &MukaiVector) -> Self {
        QVector {
            r: v.r.into(),
            l: v.l.iter().map(|&x| x.into()).collect(),
            s: v.s.into(),
            gram: v.gram.clone(),
        }
    }
}

impl QVector {
    pub fn pairing(&self, other: &QVector) -> Result<Rational64> {
        if self.gram != other.gram {
            return Err(Error::GramMismatch);
        }
        let mut acc = Rational64::zero();
        for (i, a) in self.l.iter().enumerate() {
            for (j, b) in other.l.iter().enumerate() {
                acc += a * b * Rational64::from(self.gram[i][j]);
            }
        }
        Ok(acc - self.r * other.s - other.r * self.s)
    }

    fn axpy(&self, k: Rational64, y: &QVector) -> QVector {
        QVector {
            r: self.r + k * y.r,
            l: self.l.iter().zip(&y.l).map(|(a, b)| a + k * b).collect(),
            s: self.s + k * y.s,
            gram: self.gram.clone(),
        }
    }

    /// The integer vector, if every coordinate is integral.
    pub fn to_integral(&self) -> Option<MukaiVector> {
        let int = |q: &Rational64| q.is_integer().then(|| q.to_integer());
        Some(MukaiVector {
            r: int(&self.r)?,
            l: self.l.iter().map(int).collect::<Option<Vec<_>>>()?,
            s: int(&self.s)?,
            gram: self.gram.clone(),
        })
    }

    pub fn neg(&self) -> QVector {
        self.axpy(Rational64::from(-2), self)
    }
}

/// `x ↦ x − (2⟨x, y⟩ / y²)·y`.
pub fn reflect(x: &QVector, y: &QVector) -> Result<QVector> {
    let y2 = y.pairing(y)?;
    if y2.is_zero() {
        return Err(Error::IsotropicMirror);
    }
    let k = -(Rational64::from(2) * x.pairing(y)? / y2);
    Ok(x.axpy(k, y))
}

/// Integer-input convenience wrapper around [`reflect`].
pub fn reflect_vectors(x: &MukaiVector, y: &MukaiVector) -> Result<QVector> {
    reflect(&QVector::from(x), &QVector::from(y))
}

/// `true` if `v` and `w` agree up to an overall sign.
pub fn equal_up_to_sign(v: &MukaiVector, w: &MukaiVector) -> bool {
    v == w || *v == w.scaled(-1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k2() -> MukaiVector {
        MukaiVector::new(1, vec![], -3, vec![]).unwrap()
    }

    #[test]
    fn pairing_examples() {
        let v = k2();
        assert_eq!(mukai_pairing(&v, &v).unwrap(), 6);
        assert_eq!(dims(&v).unwrap(), Dims { moduli_dim: 8, fiber_dim: 4 });
        // NS = Z·l with l² = 6
        let w = MukaiVector::rank_one(0, 1, 5, 6);
        assert_eq!(w.square(), 6);
        assert_eq!(dims(&w).unwrap().fiber_dim, 4);
        let iso = MukaiVector::new(1, vec![], 0, vec![]).unwrap();
        assert_eq!(iso.square(), 0);
    }

    #[test]
    fn gram_mismatch() {
        let a = MukaiVector::rank_one(1, 0, 0, 2);
        let b = MukaiVector::rank_one(1, 0, 0, 4);
        assert_eq!(mukai_pairing(&a, &b), Err(Error::GramMismatch));
        assert!(MukaiVector::new(1, vec![1, 0], 0, vec![vec![2, 1], vec![0, 2]]).is_err());
        assert!(MukaiVector::new(1, vec![1], 0, vec![vec![2, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn predicate_examples() {
        let p = |r, s| predicates(&MukaiVector::new(r, vec![], s, vec![]).unwrap());
        assert_eq!(p(1, -3), Predicates { positive: true, primitive: true });
        assert_eq!(p(0, -1), Predicates { positive: true, primitive: true });
        assert_eq!(p(2, -2), Predicates { positive: true, primitive: false });
        assert!(!p(0, 1).positive);
        assert!(!p(-1, 3).positive);
        assert!(predicates(&MukaiVector::rank_one(0, 1, 2, 6)).positive);
        assert!(!predicates(&MukaiVector::rank_one(0, 1, 0, 6)).positive);
        assert!(!predicates(&MukaiVector::rank_one(0, -1, 2, 6)).positive);
    }

    #[test]
    fn dims_threshold() {
        let v = MukaiVector::new(1, vec![], -2, vec![]).unwrap();
        assert_eq!(dims(&v), Err(Error::BelowThreshold(4)));
        assert_eq!(dims_with_override(&v, true).unwrap(), Dims { moduli_dim: 6, fiber_dim: 2 });
    }

    #[test]
    fn fourier_mukai_examples() {
        let v = k2();
        assert_eq!(fm_transform(&v), MukaiVector::new(-3, vec![], 1, vec![]).unwrap());
        let w = MukaiVector::rank_one(0, 1, -1, 6);
        let fw = fm_transform(&w);
        assert_eq!(fw, MukaiVector::rank_one(-1, -1, 0, 6));
        assert_eq!(shift(&fw), MukaiVector::rank_one(1, 1, 0, 6));
    }

    #[test]
    fn shift_examples() {
        let v = k2();
        assert_eq!(shift(&v), MukaiVector::new(-1, vec![], 3, vec![]).unwrap());
        assert_eq!(shift(&shift(&v)), v);
    }

    #[test]
    fn twist_examples() {
        for n in 1..6 {
            let v = MukaiVector::rank_one(1, 0, -n, 2 * n);
            assert_eq!(tensor_twist(&v, &[1]).unwrap(), MukaiVector::rank_one(1, 1, 0, 2 * n));
        }
        let v = MukaiVector::rank_one(2, 3, -1, 4);
        assert_eq!(tensor_twist(&v, &[0]).unwrap(), v);
        assert_eq!(tensor_twist(&MukaiVector::rank_one(1, 0, 0, 3), &[1]), Err(Error::OddTwist(3)));
    }

    #[test]
    fn reflection_examples() {
        let y = QVector::from(&MukaiVector::rank_one(1, 2, -1, 2));
        assert_eq!(reflect(&y, &y).unwrap(), y.neg());
        let x = QVector::from(&MukaiVector::rank_one(1, 0, 0, 2));
        let iso = QVector::from(&MukaiVector::rank_one(0, 0, 1, 2));
        assert_eq!(reflect(&x, &iso), Err(Error::IsotropicMirror));
        // ⟨(0,0,1), (0,1,0)⟩ = 0 for l² = 6
        let orth = QVector::from(&MukaiVector::rank_one(0, 0, 1, 6));
        let mirror = QVector::from(&MukaiVector::rank_one(0, 1, 0, 6));
        assert_eq!(reflect(&orth, &mirror).unwrap(), orth);
    }

    #[test]
    fn reflection_swaps_equal_squares() {
        // v = (1,0,-3), w = (0,l,0) with l² = 6; both square to 6
        let v = MukaiVector::rank_one(1, 0, -3, 6);
        let w = MukaiVector::rank_one(0, 1, 0, 6);
        let d = v.sub(&w).unwrap();
        assert_eq!(d.square(), 12);
        let image = reflect_vectors(&v, &d).unwrap().to_integral().unwrap();
        assert_eq!(image, w);
        // with l = 0 both v - w and v + w are isotropic for w = (1,0,3)
        let w2 = MukaiVector::rank_one(1, 0, 3, 6);
        assert_eq!(v.sub(&w2).unwrap().square(), 0);
        assert_eq!(v.add(&w2).unwrap().square(), 0);
    }

    #[test]
    fn derived_params() {
        let v = MukaiVector::rank_one(2, 2, -2, 2);
        let p = v.derived().unwrap();
        assert_eq!(p, DerivedParams { v_squared: 16, n: 8, d: 2, n_primitive: 2, chi: 4 });
        let p = k2().derived().unwrap();
        assert_eq!((p.n, p.d, p.chi), (3, 1, 0));
    }

    #[test]
    fn json_shape() {
        let v = MukaiVector::rank_one(1, 2, -3, 6);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"r":1,"l":[2],"s":-3,"gram":[[6]]}"#);
        assert_eq!(serde_json::from_str::<MukaiVector>(&s).unwrap(), v);
        assert!(serde_json::from_str::<MukaiVector>(r#"{"r":1,"l":[2,1],"s":0,"gram":[[6]]}"#).is_err());
    }

    fn rank_two() -> impl Strategy<Value = (i64, i64, i64)> {
        (-3i64..=3, -2i64..=2, 1i64..=4)
    }

    fn vector(gram: Vec<Vec<i64>>) -> impl Strategy<Value = MukaiVector> {
        (-6i64..=6, -6i64..=6, -6i64..=6, -6i64..=6)
            .prop_map(move |(r, a, b, s)| MukaiVector::new(r, vec![a, b], s, gram.clone()).unwrap())
    }

    fn gram_of((a, b, c): (i64, i64, i64)) -> Vec<Vec<i64>> {
        vec![vec![2 * a, b], vec![b, 2 * c]]
    }

    proptest! {
        #[test]
        fn pairing_is_symmetric_bilinear(
            (x, y, z, k) in rank_two().prop_flat_map(|g| {
                let g = gram_of(g);
                (vector(g.clone()), vector(g.clone()), vector(g), -3i64..=3)
            })
        ) {
            prop_assert_eq!(mukai_pairing(&x, &y).unwrap(), mukai_pairing(&y, &x).unwrap());
            let lhs = mukai_pairing(&x.scaled(k).add(&y).unwrap(), &z).unwrap();
            let rhs = k * mukai_pairing(&x, &z).unwrap() + mukai_pairing(&y, &z).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn reflection_is_involutive_isometry(
            (x, y, z) in rank_two().prop_flat_map(|g| {
                let g = gram_of(g);
                (vector(g.clone()), vector(g.clone()), vector(g))
            })
        ) {
            let (qx, qy, qz) = (QVector::from(&x), QVector::from(&y), QVector::from(&z));
            match reflect(&qx, &qy) {
                Err(e) => prop_assert_eq!(e, Error::IsotropicMirror),
                Ok(rx) => {
                    prop_assert_eq!(reflect(&rx, &qy).unwrap(), qx.clone());
                    let rz = reflect(&qz, &qy).unwrap();
                    prop_assert_eq!(rx.pairing(&rz).unwrap(), qx.pairing(&qz).unwrap());
                }
            }
        }

        #[test]
        fn twist_preserves_square(
            (v, c1, c2) in rank_two().prop_flat_map(|g| (vector(gram_of(g)), -3i64..=3, -3i64..=3))
        ) {
            let t = tensor_twist(&v, &[c1, c2]).unwrap();
            prop_assert_eq!(t.square(), v.square());
            prop_assert_eq!(tensor_twist(&t, &[-c1, -c2]).unwrap(), v.clone());
        }

        #[test]
        fn fm_preserves_square_and_squares_to_sign(
            v in rank_two().prop_flat_map(|g| vector(gram_of(g)))
        ) {
            let f = fm_transform(&v);
            prop_assert_eq!(f.square(), v.square());
            prop_assert!(equal_up_to_sign(&fm_transform(&f), &v));
            prop_assert_eq!(shift(&shift(&v)), v);
        }
    }
}
