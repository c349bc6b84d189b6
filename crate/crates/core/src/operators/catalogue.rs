use crate::clifford::{Blade, CliffordElement, Signature};
use crate::exactfield::{ParamScalar, RadicalComplex, Rational};
use crate::group::{reflection_matrix, root_spinor, RootSystemPreset, Weights};

use super::expr::{anticommutator, commutator};
use super::Operator;

/// Deliberate corruptions of the Dunkl operators, used to show that the
/// verification harness detects wrong constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DunklMutation {
    /// D2 with the σ3 term entering with coefficient +1 instead of α3_2 = -1.
    Sigma3SignInD2,
    /// D2 with the σ4 difference divided by x1 + x2 - x3 instead of ⟨α4, x⟩.
    Sigma4DenominatorInD2,
    /// Both of the above.
    PrintedD2,
    /// Negates the term of root `root` (zero-based) in D_{coord+1}.
    FlipTerm { coord: usize, root: usize },
}

/// Coefficient of σ̃_α in the one-index symmetry O_l, beyond κ_α α_l.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OneIndexScaling {
    /// ε/|α|, the normalization under which O_ij commutes with 𝒟.
    RootLength,
    /// 1: the bare coefficients κ_α α_l.
    Unit,
}

/// Every named operator for one preset, signature and weight function.
///
/// All operators are wrapped as `Named` nodes so that evaluators can cache
/// them column by column.
#[derive(Clone)]
pub struct Catalogue {
    pub preset: RootSystemPreset,
    pub signature: Signature,
    pub weights: Weights,
    pub mutation: Option<DunklMutation>,
    pub scaling: OneIndexScaling,
    dunkl: [Operator; 3],
    dirac: Operator,
    dual_x: Operator,
    reflections: Vec<Operator>,
    lifts: Vec<Operator>,
    one_index: [Operator; 3],
    angular: [Operator; 3],
    two_index: [Operator; 3],
    three_index: Operator,
    casimir: Operator,
    o_zero: Operator,
    o_plus: Operator,
    o_minus: Operator,
    k_plus: Operator,
    k_minus: Operator,
}

/// Index of the pair (i, j), i < j, in the order 12, 13, 23.
fn pair_index(i: usize, j: usize) -> usize {
    match (i.min(j), i.max(j)) {
        (1, 2) => 0,
        (1, 3) => 1,
        (2, 3) => 2,
        _ => panic!("invalid index pair ({i}, {j})"),
    }
}

/// -i/√3
pub fn o_zero_coefficient() -> RadicalComplex {
    RadicalComplex::basis(6, Rational::new(-1, 3))
}

/// -i√(2/3)
pub fn o_pm_coefficient() -> RadicalComplex {
    RadicalComplex::basis(7, Rational::new(-1, 3))
}

impl Catalogue {
    pub fn new(preset: &RootSystemPreset, signature: Signature, weights: Weights) -> Self {
        Self::build(preset, signature, weights, None, OneIndexScaling::RootLength)
    }

    pub fn symbolic(preset: &RootSystemPreset, signature: Signature) -> Self {
        Self::new(preset, signature, Weights::symbolic())
    }

    pub fn with_mutation(preset: &RootSystemPreset, signature: Signature, weights: Weights, m: DunklMutation) -> Self {
        Self::build(preset, signature, weights, Some(m), OneIndexScaling::RootLength)
    }

    pub fn with_scaling(
        preset: &RootSystemPreset,
        signature: Signature,
        weights: Weights,
        scaling: OneIndexScaling,
    ) -> Self {
        Self::build(preset, signature, weights, None, scaling)
    }

    fn build(
        preset: &RootSystemPreset,
        s: Signature,
        weights: Weights,
        mutation: Option<DunklMutation>,
        scaling: OneIndexScaling,
    ) -> Self {
        let eps = ParamScalar::from_int(s.epsilon());
        let e = |i: usize| Operator::clifford_left(CliffordElement::blade(Blade::generator(i)), s);
        let blade_op = |idx: &[usize]| Operator::clifford_left(CliffordElement::blade(Blade::from_indices(idx)), s);

        let dunkl: [Operator; 3] = std::array::from_fn(|i| {
            Operator::named(
                &format!("D{}", i + 1),
                dunkl_body(preset, &weights, i, mutation.as_ref()),
            )
        });
        let dirac = Operator::named("D", Operator::sum((0..3).map(|i| &dunkl[i] * &e(i + 1))));
        let dual_x = Operator::named("X", Operator::sum((0..3).map(|i| Operator::mult_x(i) * e(i + 1))));

        let reflections: Vec<Operator> = preset
            .roots
            .iter()
            .enumerate()
            .map(|(k, r)| {
                Operator::named(
                    &format!("sig{}", k + 1),
                    Operator::group_action(reflection_matrix(&r.vector)),
                )
            })
            .collect();
        let lifts: Vec<Operator> = preset
            .roots
            .iter()
            .enumerate()
            .map(|(k, r)| {
                let u = Operator::clifford_left(root_spinor(&r.vector), s);
                Operator::named(&format!("tsig{}", k + 1), &reflections[k] * &u)
            })
            .collect();

        let one_index: [Operator; 3] = std::array::from_fn(|l| {
            let terms = preset.roots.iter().enumerate().filter_map(|(k, r)| {
                if r.vector[l].is_zero() {
                    return None;
                }
                let norm = match scaling {
                    OneIndexScaling::Unit => RadicalComplex::one(),
                    OneIndexScaling::RootLength => {
                        let len = crate::group::sqrt_rational(&r.norm_squared()).unwrap();
                        len.inverse().unwrap().scale(&Rational::from(s.epsilon()))
                    }
                };
                let c = preset.weight(r.class, &weights).scale(&norm.scale(&r.vector[l]));
                Some(lifts[k].scale(c))
            });
            Operator::named(&format!("O{}", l + 1), Operator::sum(terms))
        });

        let angular: [Operator; 3] = std::array::from_fn(|p| {
            let (i, j) = [(1, 2), (1, 3), (2, 3)][p];
            Operator::named(&format!("L{i}{j}"), angular_body(&dunkl, i, j))
        });

        let two_index_body = |i: usize, j: usize| {
            let l = angular_any(&angular, &dunkl, i, j);
            let half_eps_eiej = blade_op(&[i, j]).scale(eps.scale_rational(&Rational::new(1, 2)));
            // blade_op sorts indices; e_j e_i = -e_i e_j
            let half_eps_eiej = if i < j { half_eps_eiej } else { -half_eps_eiej };
            Operator::sum([
                l,
                half_eps_eiej,
                &one_index[i - 1] * &e(j),
                -(&one_index[j - 1] * &e(i)),
            ])
        };
        let two_index: [Operator; 3] = std::array::from_fn(|p| {
            let (i, j) = [(1, 2), (1, 3), (2, 3)][p];
            Operator::named(&format!("O{i}{j}"), two_index_body(i, j))
        });

        let three_index = Operator::named(
            "O123",
            Operator::sum([
                blade_op(&[1, 2, 3]).scale(eps.clone()),
                &one_index[0] * &blade_op(&[2, 3]),
                -(&one_index[1] * &blade_op(&[1, 3])),
                &one_index[2] * &blade_op(&[1, 2]),
                &angular[0] * &e(3),
                -(&angular[1] * &e(2)),
                &angular[2] * &e(1),
            ]),
        );

        let casimir = Operator::named("E", commutator(&one_index[0], &one_index[1]));

        let [o12, o13, o23] = two_index.clone();
        let w = RadicalComplex::omega();
        let w2 = &w * &w;
        let o_zero = Operator::named(
            "O0",
            Operator::sum([o12.clone(), o23.clone(), -o13.clone()]).scale_rc(o_zero_coefficient()),
        );
        let o_pm = |wp: &RadicalComplex, wm: &RadicalComplex| {
            Operator::sum([o12.clone(), o23.scale_rc(wp.clone()), o13.scale_rc(-wm)]).scale_rc(o_pm_coefficient())
        };
        let o_plus = Operator::named("Op", o_pm(&w, &w2));
        let o_minus = Operator::named("Om", o_pm(&w2, &w));
        let half = ParamScalar::rational(Rational::new(1, 2));
        let k_plus = Operator::named("Kp", anticommutator(&o_zero, &o_plus).scale(half.clone()));
        let k_minus = Operator::named("Km", anticommutator(&o_zero, &o_minus).scale(half));

        Self {
            preset: preset.clone(),
            signature: s,
            weights,
            mutation,
            scaling,
            dunkl,
            dirac,
            dual_x,
            reflections,
            lifts,
            one_index,
            angular,
            two_index,
            three_index,
            casimir,
            o_zero,
            o_plus,
            o_minus,
            k_plus,
            k_minus,
        }
    }

    /// D_i, i ∈ {1, 2, 3}.
    pub fn dunkl(&self, i: usize) -> Operator {
        self.dunkl[i - 1].clone()
    }

    /// 𝒟 = Σ D_i e_i.
    pub fn dirac(&self) -> Operator {
        self.dirac.clone()
    }

    /// x = Σ x_i e_i.
    pub fn dual_x(&self) -> Operator {
        self.dual_x.clone()
    }

    /// Multiplication by x_i.
    pub fn x(&self, i: usize) -> Operator {
        Operator::mult_x(i - 1)
    }

    /// Left multiplication by e_i.
    pub fn e(&self, i: usize) -> Operator {
        Operator::clifford_left(CliffordElement::blade(Blade::generator(i)), self.signature)
    }

    pub fn blade(&self, b: Blade) -> Operator {
        Operator::clifford_left(CliffordElement::blade(b), self.signature)
    }

    pub fn root_count(&self) -> usize {
        self.preset.roots.len()
    }

    /// σ_k acting on polynomials only, k one-based.
    pub fn reflection(&self, k: usize) -> Operator {
        self.reflections[k - 1].clone()
    }

    /// σ̃_k = σ_k (α_k·e)/|α_k|, k one-based.
    pub fn lift(&self, k: usize) -> Operator {
        self.lifts[k - 1].clone()
    }

    pub fn lifts(&self) -> &[Operator] {
        &self.lifts
    }

    /// O_l, l ∈ {1, 2, 3}.
    pub fn one_index(&self, l: usize) -> Operator {
        self.one_index[l - 1].clone()
    }

    /// L_ij = x_i D_j - x_j D_i for any i ≠ j; L_ji is built as -L_ij.
    pub fn angular(&self, i: usize, j: usize) -> Operator {
        angular_any(&self.angular, &self.dunkl, i, j)
    }

    /// O_ij for i < j from the catalogue, O_ji = -O_ij otherwise.
    pub fn two_index(&self, i: usize, j: usize) -> Operator {
        let o = self.two_index[pair_index(i, j)].clone();
        if i < j {
            o
        } else {
            -o
        }
    }

    /// O_ij assembled directly from its defining formula for the given
    /// index order, without using antisymmetry.
    pub fn two_index_from_formula(&self, i: usize, j: usize) -> Operator {
        let eps = ParamScalar::from_int(self.signature.epsilon());
        let mut eiej = CliffordElement::blade(Blade::generator(i))
            .mul(&CliffordElement::blade(Blade::generator(j)), self.signature);
        eiej = eiej.scale(&RadicalComplex::from_rational(Rational::new(1, 2)));
        Operator::sum([
            angular_body(&self.dunkl, i, j),
            Operator::clifford_left(eiej, self.signature).scale(eps),
            &self.one_index[i - 1] * &self.e(j),
            -(&self.one_index[j - 1] * &self.e(i)),
        ])
    }

    pub fn three_index(&self) -> Operator {
        self.three_index.clone()
    }

    /// ℰ = [O_1, O_2].
    pub fn casimir_e(&self) -> Operator {
        self.casimir.clone()
    }

    pub fn o_zero(&self) -> Operator {
        self.o_zero.clone()
    }

    pub fn o_plus(&self) -> Operator {
        self.o_plus.clone()
    }

    pub fn o_minus(&self) -> Operator {
        self.o_minus.clone()
    }

    pub fn k_plus(&self) -> Operator {
        self.k_plus.clone()
    }

    pub fn k_minus(&self) -> Operator {
        self.k_minus.clone()
    }

    /// Looks up an identifier of the expression language.
    pub fn lookup(&self, name: &str) -> Option<Operator> {
        let idx = |s: &str| s.parse::<usize>().ok();
        Some(match name {
            "D1" | "D2" | "D3" => self.dunkl(idx(&name[1..])?),
            "D" => self.dirac(),
            "X" => self.dual_x(),
            "L12" | "L13" | "L23" => self.angular[pair_index(idx(&name[1..2])?, idx(&name[2..3])?)].clone(),
            "O12" | "O13" | "O23" => self.two_index[pair_index(idx(&name[1..2])?, idx(&name[2..3])?)].clone(),
            "O1" | "O2" | "O3" => self.one_index(idx(&name[1..])?),
            "O123" => self.three_index(),
            "E" => self.casimir_e(),
            "O0" => self.o_zero(),
            "Op" => self.o_plus(),
            "Om" => self.o_minus(),
            "Kp" => self.k_plus(),
            "Km" => self.k_minus(),
            "x1" | "x2" | "x3" => self.x(idx(&name[1..])?),
            _ => {
                if let Some(k) = name.strip_prefix("tsig").and_then(idx) {
                    return (1..=self.root_count()).contains(&k).then(|| self.lift(k));
                }
                if let Some(k) = name.strip_prefix("sig").and_then(idx) {
                    return (1..=self.root_count()).contains(&k).then(|| self.reflection(k));
                }
                if let Some(b) = Blade::parse(name).filter(|b| *b != Blade::SCALAR) {
                    return Some(self.blade(b));
                }
                return None;
            }
        })
    }
}

/// Names recognised by [`Catalogue::lookup`] (sig/tsig up to six roots).
pub const OPERATOR_NAMES: &[&str] = &[
    "D1", "D2", "D3", "D", "X", "L12", "L13", "L23", "O12", "O13", "O23", "O1", "O2", "O3", "O123", "E", "O0", "Op",
    "Om", "Kp", "Km", "sig1", "sig2", "sig3", "sig4", "sig5", "sig6", "tsig1", "tsig2", "tsig3", "tsig4", "tsig5",
    "tsig6", "x1", "x2", "x3", "e1", "e2", "e3", "e12", "e13", "e23", "e123",
];

/// Names that only exist for G2.
pub const G2_ONLY_NAMES: &[&str] = &["Kp", "Km"];

fn angular_body(dunkl: &[Operator; 3], i: usize, j: usize) -> Operator {
    (Operator::mult_x(i - 1) * dunkl[j - 1].clone()) - (Operator::mult_x(j - 1) * dunkl[i - 1].clone())
}

fn angular_any(angular: &[Operator; 3], dunkl: &[Operator; 3], i: usize, j: usize) -> Operator {
    assert!(i != j, "L_ii is not defined");
    let _ = dunkl;
    let l = angular[pair_index(i, j)].clone();
    if i < j {
        l
    } else {
        -l
    }
}

/// D_i = ∂_i + Σ_{α∈R+} κ_α α_i (1 - σ_α)/⟨α, x⟩, `i` zero-based.
fn dunkl_body(preset: &RootSystemPreset, weights: &Weights, i: usize, mutation: Option<&DunklMutation>) -> Operator {
    let mut terms = vec![Operator::partial(i)];
    for (k, root) in preset.roots.iter().enumerate() {
        let mut coeff = root.vector[i].clone();
        let mut divisor = root.vector.clone();
        let in_d2 = i == 1 && preset.name == crate::group::PresetName::G2;
        match mutation {
            Some(DunklMutation::Sigma3SignInD2 | DunklMutation::PrintedD2) if in_d2 && k == 2 => coeff = -coeff,
            Some(DunklMutation::FlipTerm { coord, root }) if *coord == i && *root == k => coeff = -coeff,
            _ => {}
        }
        match mutation {
            Some(DunklMutation::Sigma4DenominatorInD2 | DunklMutation::PrintedD2) if in_d2 && k == 3 => {
                divisor = [1, 1, -1].map(Rational::from);
            }
            _ => {}
        }
        if coeff.is_zero() {
            continue;
        }
        let c = preset.weight(root.class, weights).scale_rational(&coeff);
        if c.is_zero() {
            continue;
        }
        terms.push(Operator::dunkl_diff_with_divisor(&root.vector, &divisor).scale(c));
    }
    Operator::sum(terms)
}
