//! Finite reflection groups on ℝ³: exact matrices, root-system presets and
//! the Pin double cover of the Weyl group.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;

use serde::Serialize;
use thiserror::Error;

use crate::clifford::{CliffordElement, Signature};
use crate::exactfield::{ParamScalar, RadicalComplex, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group closure exceeded the budget of {0} elements")]
    ClosureBudgetExceeded(usize),
    #[error("invalid preset: {0}")]
    InvalidPreset(String),
    #[error("unknown preset {0:?} (expected g2 or a2)")]
    UnknownPreset(String),
}

/// Default bound on the number of elements [`generate_group`] will produce.
pub const DEFAULT_CLOSURE_BUDGET: usize = 10_000;

/// A 3×3 matrix with real radical entries, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrthogonalMatrix {
    rows: [[RadicalComplex; 3]; 3],
}

impl OrthogonalMatrix {
    pub fn identity() -> Self {
        Self::from_fn(|i, j| RadicalComplex::from(if i == j { 1 } else { 0 }))
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> RadicalComplex) -> Self {
        Self {
            rows: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))),
        }
    }

    pub fn from_rationals(rows: [[Rational; 3]; 3]) -> Self {
        Self::from_fn(|i, j| RadicalComplex::from_rational(rows[i][j].clone()))
    }

    pub fn entry(&self, i: usize, j: usize) -> &RadicalComplex {
        &self.rows[i][j]
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_fn(|i, j| {
            let mut acc = RadicalComplex::zero();
            for k in 0..3 {
                acc += &(&self.rows[i][k] * &other.rows[k][j]);
            }
            acc
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.rows[j][i].clone())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn is_orthogonal(&self) -> bool {
        self.rows.iter().flatten().all(RadicalComplex::is_real) && self.transpose().mul(self).is_identity()
    }

    pub fn determinant(&self) -> RadicalComplex {
        let m = &self.rows;
        let minor = |a: usize, b: usize, c: usize, d: usize| &(&m[1][a] * &m[2][b]) - &(&m[1][c] * &m[2][d]);
        let t0 = &m[0][0] * &minor(1, 2, 2, 1);
        let t1 = &m[0][1] * &minor(0, 2, 2, 0);
        let t2 = &m[0][2] * &minor(0, 1, 1, 0);
        &(&t0 - &t1) + &t2
    }

    /// M v for a rational vector (all preset matrices are rational).
    pub fn apply_rational(&self, v: &[Rational; 3]) -> Option<[Rational; 3]> {
        let mut out: [Rational; 3] = Default::default();
        for (o, row) in out.iter_mut().zip(&self.rows) {
            let mut acc = RadicalComplex::zero();
            for (m, x) in row.iter().zip(v) {
                acc += &m.scale(x);
            }
            *o = acc.as_rational()?.clone();
        }
        Some(out)
    }

    /// Entries of the second compound: how M acts on the antisymmetric
    /// index pairs (i<j) ↦ Σ_{k<l} (M_ik M_jl - M_il M_jk) (k,l).
    pub fn compound2(&self, i: usize, j: usize, k: usize, l: usize) -> RadicalComplex {
        let m = &self.rows;
        &(&m[i][k] * &m[j][l]) - &(&m[i][l] * &m[j][k])
    }
}

impl fmt::Display for OrthogonalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl fmt::Debug for OrthogonalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn dot(a: &[Rational; 3], b: &[Rational; 3]) -> Rational {
    (0..3).fold(Rational::zero(), |acc, k| &acc + &(&a[k] * &b[k]))
}

/// σ_α = I - 2ααᵀ/⟨α,α⟩.
pub fn reflection_matrix(alpha: &[Rational; 3]) -> OrthogonalMatrix {
    let n = dot(alpha, alpha);
    assert!(!n.is_zero(), "root must be nonzero");
    let two_over_n = &Rational::from(2) / &n;
    OrthogonalMatrix::from_fn(|i, j| {
        let delta = if i == j { Rational::one() } else { Rational::zero() };
        RadicalComplex::from_rational(&delta - &(&(&alpha[i] * &alpha[j]) * &two_over_n))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RootClass {
    Short,
    Long,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub vector: [Rational; 3],
    pub class: RootClass,
}

impl Root {
    pub fn new(v: [i64; 3], class: RootClass) -> Self {
        Self {
            vector: v.map(Rational::from),
            class,
        }
    }

    pub fn norm_squared(&self) -> Rational {
        dot(&self.vector, &self.vector)
    }

    pub fn negated(&self) -> Self {
        Self {
            vector: self.vector.clone().map(|x| -x),
            class: self.class,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PresetName {
    G2,
    A2,
}

impl PresetName {
    pub fn as_str(self) -> &'static str {
        match self {
            PresetName::G2 => "g2",
            PresetName::A2 => "a2",
        }
    }
}

impl std::str::FromStr for PresetName {
    type Err = GroupError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "g2" => Ok(PresetName::G2),
            "a2" => Ok(PresetName::A2),
            other => Err(GroupError::UnknownPreset(other.to_string())),
        }
    }
}

impl fmt::Display for PresetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A positive system in ℝ³ with its weight classes and simple roots.
///
/// Roots are kept with exactly the normalization they are entered with;
/// the one-index symmetries depend on it through |α|.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSystemPreset {
    pub name: PresetName,
    /// α1, α2, … in catalogue order.
    pub roots: Vec<Root>,
    /// Indices into `roots` of the simple roots, in order.
    pub simple: Vec<usize>,
}

impl RootSystemPreset {
    /// G2 embedded in the plane x1 + x2 + x3 = 0.
    pub fn g2() -> Self {
        use RootClass::*;
        Self {
            name: PresetName::G2,
            roots: vec![
                Root::new([0, 1, -1], Short),
                Root::new([1, -2, 1], Long),
                Root::new([1, -1, 0], Short),
                Root::new([1, 1, -2], Long),
                Root::new([1, 0, -1], Short),
                Root::new([2, -1, -1], Long),
            ],
            simple: vec![0, 1],
        }
    }

    /// A2 (Weyl group S3 permuting coordinates), simple roots (1,-1,0), (0,1,-1).
    pub fn a2() -> Self {
        use RootClass::*;
        Self {
            name: PresetName::A2,
            roots: vec![
                Root::new([1, -1, 0], Short),
                Root::new([0, 1, -1], Short),
                Root::new([1, 0, -1], Short),
            ],
            simple: vec![0, 1],
        }
    }

    pub fn by_name(name: PresetName) -> Self {
        match name {
            PresetName::G2 => Self::g2(),
            PresetName::A2 => Self::a2(),
        }
    }

    /// The weight parameter attached to a class: κ1 for short, κ2 for long.
    pub fn weight(&self, class: RootClass, weights: &Weights) -> ParamScalar {
        match class {
            RootClass::Short => weights.short.clone(),
            RootClass::Long => weights.long.clone(),
        }
    }

    pub fn reflections(&self) -> Vec<OrthogonalMatrix> {
        self.roots.iter().map(|r| reflection_matrix(&r.vector)).collect()
    }

    pub fn simple_reflections(&self) -> Vec<OrthogonalMatrix> {
        self.simple
            .iter()
            .map(|&k| reflection_matrix(&self.roots[k].vector))
            .collect()
    }

    /// Number of distinct weight classes present.
    pub fn class_count(&self) -> usize {
        let mut classes: Vec<RootClass> = self.roots.iter().map(|r| r.class).collect();
        classes.sort_by_key(|c| *c as u8);
        classes.dedup();
        classes.len()
    }
}

/// Values of the weight function on the two classes.
#[derive(Debug, Clone, PartialEq)]
pub struct Weights {
    pub short: ParamScalar,
    pub long: ParamScalar,
}

impl Weights {
    /// κ1 on short roots, κ2 on long roots.
    pub fn symbolic() -> Self {
        Self {
            short: ParamScalar::kappa1(),
            long: ParamScalar::kappa2(),
        }
    }

    pub fn zero() -> Self {
        Self {
            short: ParamScalar::zero(),
            long: ParamScalar::zero(),
        }
    }

    pub fn rational(k1: Rational, k2: Rational) -> Self {
        Self {
            short: ParamScalar::rational(k1),
            long: ParamScalar::rational(k2),
        }
    }

    /// Substitutes concrete values into symbolic weights.
    pub fn instantiate(&self, k1: &Rational, k2: &Rational) -> Self {
        Self {
            short: ParamScalar::constant(self.short.instantiate(k1, k2)),
            long: ParamScalar::constant(self.long.instantiate(k1, k2)),
        }
    }
}

/// Result of closing a generating set under multiplication.
#[derive(Debug, Clone)]
pub struct GroupTable<T> {
    pub elements: Vec<T>,
    /// For each element, a word in the generator indices (left to right).
    pub words: Vec<Vec<usize>>,
}

impl<T> GroupTable<T> {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Breadth-first closure of `generators` under `mul`, starting at `identity`.
pub fn close_under<T: Clone + Eq + Hash>(
    identity: T,
    generators: &[T],
    mul: impl Fn(&T, &T) -> T,
    budget: usize,
) -> Result<GroupTable<T>, GroupError> {
    let mut index: HashMap<T, usize> = HashMap::new();
    let mut elements = vec![identity.clone()];
    let mut words = vec![Vec::new()];
    index.insert(identity, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for (g, gen) in generators.iter().enumerate() {
            let next = mul(&elements[k], gen);
            if index.contains_key(&next) {
                continue;
            }
            if elements.len() >= budget {
                return Err(GroupError::ClosureBudgetExceeded(budget));
            }
            let mut w = words[k].clone();
            w.push(g);
            index.insert(next.clone(), elements.len());
            elements.push(next);
            words.push(w);
            queue.push_back(elements.len() - 1);
        }
    }
    Ok(GroupTable { elements, words })
}

pub fn generate_group(
    generators: &[OrthogonalMatrix],
    budget: usize,
) -> Result<GroupTable<OrthogonalMatrix>, GroupError> {
    close_under(OrthogonalMatrix::identity(), generators, OrthogonalMatrix::mul, budget)
}

/// An element of the Pin double cover: an orthogonal matrix paired with a
/// homogeneous Clifford element projecting onto it.
#[derive(Clone, PartialEq, Debug)]
pub struct PinElement {
    pub matrix: OrthogonalMatrix,
    pub spinor: CliffordElement<RadicalComplex>,
}

impl Eq for PinElement {}

impl Hash for PinElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
        for (b, c) in self.spinor.terms() {
            b.hash(state);
            c.hash(state);
        }
    }
}

impl PinElement {
    pub fn identity() -> Self {
        Self {
            matrix: OrthogonalMatrix::identity(),
            spinor: CliffordElement::one(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            matrix: self.matrix.clone(),
            spinor: self.spinor.neg(),
        }
    }
}

pub fn pin_product(a: &PinElement, b: &PinElement, s: Signature) -> PinElement {
    PinElement {
        matrix: a.matrix.mul(&b.matrix),
        spinor: a.spinor.mul(&b.spinor, s),
    }
}

/// √r inside ℚ(√2, √3) for a positive rational r, when it exists there.
pub fn sqrt_rational(r: &Rational) -> Option<RadicalComplex> {
    if r.is_negative() || r.is_zero() {
        return None;
    }
    use num_traits::ToPrimitive;
    // √(p/q) = √(pq)/q
    let pq = (r.numer() * r.denom()).to_u64()?;
    let q = r.denom().to_i64()?;
    let mut rest = pq;
    let mut square = 1u64;
    let mut f = 2u64;
    while f * f <= rest {
        while rest % (f * f) == 0 {
            rest /= f * f;
            square *= f;
        }
        f += 1;
    }
    let idx = match rest {
        1 => 0,
        2 => 1,
        3 => 2,
        6 => 3,
        _ => return None,
    };
    Some(RadicalComplex::basis(idx, Rational::new(square as i64, q)))
}

/// The unit vector (Σ α_j e_j)/|α| in the Clifford algebra.
pub fn root_spinor(alpha: &[Rational; 3]) -> CliffordElement<RadicalComplex> {
    let norm = sqrt_rational(&dot(alpha, alpha)).expect("root length must lie in Q(sqrt2, sqrt3)");
    let inv = norm.inverse().unwrap();
    CliffordElement::vector(alpha.clone().map(|a| inv.scale(&a)))
}

/// The canonical lift σ̃_α = σ_α (α·e)/|α|.
pub fn tilde_lift(alpha: &[Rational; 3]) -> PinElement {
    PinElement {
        matrix: reflection_matrix(alpha),
        spinor: root_spinor(alpha),
    }
}

/// Double cover generated by ±σ̃ of the simple roots.
pub fn pin_group(preset: &RootSystemPreset, s: Signature) -> Result<GroupTable<PinElement>, GroupError> {
    let mut gens = Vec::new();
    for &k in &preset.simple {
        let lift = tilde_lift(&preset.roots[k].vector);
        gens.push(lift.neg());
        gens.push(lift);
    }
    close_under(
        PinElement::identity(),
        &gens,
        |a, b| pin_product(a, b, s),
        DEFAULT_CLOSURE_BUDGET,
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitReport {
    pub group_order: usize,
    /// Each orbit of R+ ∪ -R+, as root vectors rendered `(a,b,c)`.
    pub orbits: Vec<Vec<String>>,
    pub orbit_classes: Vec<RootClass>,
}

fn render_vec(v: &[Rational; 3]) -> String {
    format!("({},{},{})", v[0], v[1], v[2])
}

/// Checks that the Weyl group permutes R+ ∪ -R+ and preserves classes.
pub fn orbit_check(preset: &RootSystemPreset) -> Result<OrbitReport, GroupError> {
    let group = generate_group(&preset.simple_reflections(), DEFAULT_CLOSURE_BUDGET)?;
    let mut all: Vec<Root> = preset.roots.clone();
    all.extend(preset.roots.iter().map(Root::negated));
    let find = |v: &[Rational; 3]| all.iter().position(|r| &r.vector == v);
    let mut orbit_of: Vec<Option<usize>> = vec![None; all.len()];
    let mut orbits = Vec::new();
    let mut orbit_classes = Vec::new();
    for g in &group.elements {
        for r in &all {
            let image = g
                .apply_rational(&r.vector)
                .ok_or_else(|| GroupError::InvalidPreset("group element is not rational".into()))?;
            let k = find(&image).ok_or_else(|| {
                GroupError::InvalidPreset(format!(
                    "{} maps to {} outside ±R+",
                    render_vec(&r.vector),
                    render_vec(&image)
                ))
            })?;
            if all[k].class != r.class {
                return Err(GroupError::InvalidPreset(format!(
                    "{} and its image {} lie in different weight classes",
                    render_vec(&r.vector),
                    render_vec(&image)
                )));
            }
        }
    }
    for start in 0..all.len() {
        if orbit_of[start].is_some() {
            continue;
        }
        let id = orbits.len();
        let mut members = Vec::new();
        for g in &group.elements {
            let image = g.apply_rational(&all[start].vector).unwrap();
            let k = find(&image).unwrap();
            if orbit_of[k].is_none() {
                orbit_of[k] = Some(id);
                members.push(k);
            }
        }
        members.sort();
        orbits.push(members.iter().map(|&k| render_vec(&all[k].vector)).collect());
        orbit_classes.push(all[start].class);
    }
    Ok(OrbitReport {
        group_order: group.order(),
        orbits,
        orbit_classes,
    })
}
