//! Registry of the identities of the symmetry algebra and the harness that
//! checks them on graded bases.

use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::clifford::{Blade, Signature};
use crate::exactfield::{ParamScalar, RadicalComplex, Rational};
use crate::group::{PresetName, RootSystemPreset, Weights};
use crate::operators::{
    anticommutator, basis_up_to_degree, commutator, equal_on_basis, o_pm_coefficient, Catalogue, Evaluator, Operator,
    Witness,
};
use crate::poly::Monomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelationError {
    #[error("relation {relation} is not defined for preset {preset}")]
    ScopeMismatch { relation: String, preset: String },
    #[error("unknown relation {0}")]
    UnknownRelation(String),
}

/// Whether a failing check is a failure or just an observation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    Assert,
    /// Reports whether `lhs - rhs` vanishes without asserting it.
    Probe,
}

/// Weight function the relation is stated for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightMode {
    Symbolic,
    /// κ1 = κ2 = 0.
    Zero,
}

type Builder = Arc<dyn Fn(&Catalogue) -> (Operator, Operator) + Send + Sync>;

/// One executable identity `lhs = rhs`.
#[derive(Clone)]
pub struct RelationSpec {
    /// Unique name, e.g. `R8a`.
    pub name: String,
    /// Family, e.g. `R8`.
    pub group: &'static str,
    /// Human-readable statement.
    pub statement: String,
    pub citation: &'static str,
    /// Presets the relation is defined for; empty means all.
    pub presets: Vec<PresetName>,
    pub kind: RelationKind,
    pub weights: WeightMode,
    build: Builder,
}

impl RelationSpec {
    fn new(
        name: impl Into<String>,
        group: &'static str,
        statement: impl Into<String>,
        citation: &'static str,
        build: impl Fn(&Catalogue) -> (Operator, Operator) + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            group,
            statement: statement.into(),
            citation,
            presets: Vec::new(),
            kind: RelationKind::Assert,
            weights: WeightMode::Symbolic,
            build: Arc::new(build),
        }
    }

    fn only(mut self, p: PresetName) -> Self {
        self.presets = vec![p];
        self
    }

    fn probe(mut self) -> Self {
        self.kind = RelationKind::Probe;
        self
    }

    fn at_zero_weights(mut self) -> Self {
        self.weights = WeightMode::Zero;
        self
    }

    pub fn in_scope(&self, preset: PresetName) -> bool {
        self.presets.is_empty() || self.presets.contains(&preset)
    }

    /// Both sides built from `cat`.
    pub fn sides(&self, cat: &Catalogue) -> (Operator, Operator) {
        (self.build)(cat)
    }

    fn weights_for(&self) -> Weights {
        match self.weights {
            WeightMode::Symbolic => Weights::symbolic(),
            WeightMode::Zero => Weights::zero(),
        }
    }
}

impl std::fmt::Debug for RelationSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.name, self.statement)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportVerdict {
    Pass,
    Fail,
    /// Probe whose difference vanishes.
    Vanishes,
    /// Probe whose difference does not vanish.
    Nonzero,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub group: String,
    pub statement: String,
    pub citation: String,
    pub preset: String,
    pub epsilon: i64,
    pub kind: RelationKind,
    pub degree: u32,
    pub basis_size: usize,
    pub verdict: ReportVerdict,
    pub witness: Option<Witness>,
    /// Wall-clock time; left out of serialized reports when `None`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u128>,
}

impl VerificationReport {
    /// False only for failed assertions.
    pub fn is_ok(&self) -> bool {
        self.verdict != ReportVerdict::Fail
    }

    pub fn to_text(&self) -> String {
        let tag = match self.verdict {
            ReportVerdict::Pass => "PASS",
            ReportVerdict::Fail => "FAIL",
            ReportVerdict::Vanishes => "PROBE zero",
            ReportVerdict::Nonzero => "PROBE nonzero",
        };
        let mut s = format!(
            "{tag} {} [{} eps={:+}] {}  (degree {}, {} basis elements",
            self.name, self.preset, self.epsilon, self.statement, self.degree, self.basis_size
        );
        match self.millis {
            Some(ms) => {
                let _ = write!(s, ", {ms} ms)");
            }
            None => s.push(')'),
        }
        if let Some(w) = &self.witness {
            let _ = write!(s, "\n    witness: monomial {}, blade {}", w.monomial, w.blade);
            if let Some(r) = &w.residual {
                let _ = write!(s, "\n    residual: {r}");
            }
            if let Some(e) = &w.error {
                let _ = write!(s, "\n    error: {e}");
            }
        }
        s
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}

const CITE_DUNKL: &str = "Dunkl operators commute; \"are defined similarly\"";
const CITE_OSP: &str = "Dirac operator and its dual \"generates a realisation of\" osp(1|2)";
const CITE_ANTI: &str = "lifted reflections are odd, \"they will in fact anticommute\"";
const CITE_PRES: &str = "double-cover presentation, \"order of this group is 24\"";
const CITE_ACTION: &str = "\"interaction of the two simple reflections\" with the two-index symmetries";
const CITE_SUM: &str = "\"immediate to see that the sum\" of the one-index symmetries vanishes";
const CITE_E: &str = "\"direct but slightly tedious computations\" for the brackets of one-index symmetries";
const CITE_TWO: &str = "commutation relations of \"the two-index symmetries\"";
const CITE_SO3: &str = "at zero weights the relations \"reduce to those of the orthogonal\" Lie algebra";
const CITE_PROP1: &str = "brackets of O0 and O+/O- for any root system, \"grouping the terms appropriately\"";
const CITE_PROP2: &str = "G2 brackets of O0 and O+/O-, \"fulfill the ladder operator relations\"";
const CITE_LADDER: &str = "K+/K- \"fulfill the ladder operator relations\"";
const CITE_ANTI_O0: &str = "all lifted group elements \"anticommute with O_0\"";
const CITE_CENTRAL: &str = "O123 is \"a central element\" (probe of the bracket type)";
const CITE_SYM: &str =
    "two-index operators are symmetries, \"algebra of symmetries (super)commuting\" with the Dirac operator";

/// (simple reflection k, pair (i, j), image coefficients n/d on O12, O13, O23).
type ActionRow = (usize, usize, usize, [(i64, i64); 3]);
/// [O_ab, O_cd] = s O_pq + 2 O123 O_l + εℰ as ((a, b), (c, d), s, (p, q), l).
type BracketRow = ((usize, usize), (usize, usize), i64, (usize, usize), usize);

const PAIRS: [(usize, usize); 3] = [(1, 2), (1, 3), (2, 3)];

fn rc_scalar(c: RadicalComplex) -> ParamScalar {
    ParamScalar::constant(c)
}

fn omega_pow(k: u32) -> RadicalComplex {
    RadicalComplex::omega().pow(k % 3)
}

/// Every identity in the registry, in report order.
pub fn registry() -> Vec<RelationSpec> {
    let mut r = Vec::new();

    for (i, j) in PAIRS {
        r.push(RelationSpec::new(
            format!("R1.{i}{j}"),
            "R1",
            format!("[D{i},D{j}] = 0"),
            CITE_DUNKL,
            move |c| (commutator(&c.dunkl(i), &c.dunkl(j)), Operator::zero()),
        ));
    }
    r.push(RelationSpec::new(
        "R2",
        "R2",
        "D^2 = eps (D1^2 + D2^2 + D3^2)",
        CITE_OSP,
        |c| {
            let lap = Operator::sum((1..=3).map(|i| c.dunkl(i).pow(2)));
            (c.dirac().pow(2), lap.scale_int(c.signature.epsilon()))
        },
    ));
    for j in 1..=3 {
        r.push(RelationSpec::new(
            format!("R2.x{j}"),
            "R2",
            format!("[{{D,X}}, x{j}] = 2 eps x{j}"),
            CITE_OSP,
            move |c| {
                let dx = anticommutator(&c.dirac(), &c.dual_x());
                (commutator(&dx, &c.x(j)), c.x(j).scale_int(2 * c.signature.epsilon()))
            },
        ));
    }
    for k in 1..=6 {
        let d = RelationSpec::new(
            format!("R3.D.{k}"),
            "R3",
            format!("{{D, tsig{k}}} = 0"),
            CITE_ANTI,
            move |c| (anticommutator(&c.dirac(), &c.lift(k)), Operator::zero()),
        );
        let x = RelationSpec::new(
            format!("R3.X.{k}"),
            "R3",
            format!("{{X, tsig{k}}} = 0"),
            CITE_ANTI,
            move |c| (anticommutator(&c.dual_x(), &c.lift(k)), Operator::zero()),
        );
        if k > 3 {
            r.push(d.only(PresetName::G2));
            r.push(x.only(PresetName::G2));
        } else {
            r.push(d);
            r.push(x);
        }
    }
    for a in 1..=2usize {
        r.push(RelationSpec::new(
            format!("R4.sq{a}"),
            "R4",
            format!("tsig{a}^2 = eps"),
            CITE_PRES,
            move |c| {
                let s = simple_lift(c, a - 1);
                (s.pow(2), Operator::identity().scale_int(c.signature.epsilon()))
            },
        ));
    }
    for (name, first, second) in [("R4.12", 0usize, 1usize), ("R4.21", 1, 0)] {
        let label = if first == 0 {
            "(tsig1 tsig2)^m"
        } else {
            "(tsig2 tsig1)^m"
        };
        r.push(RelationSpec::new(
            name,
            "R4",
            format!("{label} = braid_sign(m, eps), m the order of sig1 sig2 (-1 for G2)"),
            CITE_PRES,
            move |c| {
                let m = coxeter_order(&c.preset);
                let prod = simple_lift(c, first) * simple_lift(c, second);
                (prod.pow(m), Operator::identity().scale_int(braid_sign(m, c.signature)))
            },
        ));
    }

    // action of the simple reflections on O12, O13, O23, as printed for G2
    let g2_table: [ActionRow; 6] = [
        (1, 1, 2, [(0, 1), (1, 1), (0, 1)]),
        (1, 1, 3, [(1, 1), (0, 1), (0, 1)]),
        (1, 2, 3, [(0, 1), (0, 1), (-1, 1)]),
        (2, 1, 2, [(-2, 3), (2, 3), (1, 3)]),
        (2, 1, 3, [(2, 3), (1, 3), (2, 3)]),
        (2, 2, 3, [(1, 3), (2, 3), (-2, 3)]),
    ];
    for (k, i, j, coeffs) in g2_table {
        let rhs_text = render_pair_combination(&coeffs.map(|(n, d)| Rational::new(n, d)));
        r.push(RelationSpec::new(
            format!("R5.{k}.{i}{j}"),
            "R5",
            format!("tsig{k} O{i}{j} = ({rhs_text}) tsig{k} for G2; second compound of sig{k} in general"),
            CITE_ACTION,
            move |c| {
                let rhs =
                    if c.preset.name == PresetName::G2 {
                        Operator::sum(PAIRS.iter().zip(coeffs).filter(|(_, (n, _))| *n != 0).map(
                            |(&(a, b), (n, d))| c.two_index(a, b).scale(ParamScalar::rational(Rational::new(n, d))),
                        ))
                    } else {
                        compound_image(c, k - 1, i, j)
                    };
                let s = simple_lift(c, k - 1);
                (s.clone() * c.two_index(i, j), rhs * s)
            },
        ));
    }

    r.push(RelationSpec::new("R6", "R6", "O1 + O2 + O3 = 0", CITE_SUM, |c| {
        (Operator::sum((1..=3).map(|l| c.one_index(l))), Operator::zero())
    }));
    r.push(RelationSpec::new("R7.12", "R7", "[O1,O2] = E", CITE_E, |c| {
        (commutator(&c.one_index(1), &c.one_index(2)), c.casimir_e())
    }));
    r.push(RelationSpec::new("R7.23", "R7", "[O2,O3] = E", CITE_E, |c| {
        (commutator(&c.one_index(2), &c.one_index(3)), c.casimir_e())
    }));
    r.push(RelationSpec::new("R7.13", "R7", "[O1,O3] = -E", CITE_E, |c| {
        (commutator(&c.one_index(1), &c.one_index(3)), -c.casimir_e())
    }));

    // [O_ab, O_cd] = s O_pq + 2 O123 O_l + E
    let two_index_rel: [BracketRow; 3] = [
        ((1, 3), (1, 2), 1, (2, 3), 1),
        ((2, 3), (1, 2), -1, (1, 3), 2),
        ((2, 3), (1, 3), 1, (1, 2), 3),
    ];
    let mut zero_weight = Vec::new();
    for (n, ((a, b), (cc, d), sign, (p, q), l)) in two_index_rel.into_iter().enumerate() {
        let tag = ["a", "b", "c"][n];
        let s = if sign > 0 { "" } else { "-" };
        // the E term carries the signature; for eps = +1 this is the form as printed
        for (suffix, e_sign) in [("", None), (".printed", Some(1i64))] {
            let e_text = if e_sign.is_some() { "E" } else { "eps E" };
            let rel = RelationSpec::new(
                format!("R8{tag}{suffix}"),
                "R8",
                format!("[O{a}{b},O{cc}{d}] = {s}O{p}{q} + 2 O123 O{l} + {e_text}"),
                CITE_TWO,
                move |c| {
                    let lhs = commutator(&c.two_index(a, b), &c.two_index(cc, d));
                    let rhs = Operator::sum([
                        c.two_index(p, q).scale_int(sign),
                        (c.three_index() * c.one_index(l)).scale_int(2),
                        c.casimir_e().scale_int(e_sign.unwrap_or(c.signature.epsilon())),
                    ]);
                    (lhs, rhs)
                },
            );
            r.push(if e_sign.is_some() { rel.probe() } else { rel });
        }
        zero_weight.push(
            RelationSpec::new(
                format!("R9{tag}"),
                "R9",
                format!("[O{a}{b},O{cc}{d}] = {s}O{p}{q} at kappa = 0"),
                CITE_SO3,
                move |c| {
                    (
                        commutator(&c.two_index(a, b), &c.two_index(cc, d)),
                        c.two_index(p, q).scale_int(sign),
                    )
                },
            )
            .at_zero_weights(),
        );
    }
    r.extend(zero_weight);

    for (sign, tag) in [(1i64, "+"), (-1, "-")] {
        let name = if sign > 0 { "p" } else { "m" };
        r.push(RelationSpec::new(
            format!("R10.{name}"),
            "R10",
            format!(
                "[O0,O{tag}] = {tag}O{tag} {} i sqrt(2/3) (2 O123 (O3 + w^{tag} O1 + w^-{tag} O2) + [O1,O2] + w^{tag} [O2,O3] + w^-{tag} [O3,O1])",
                if sign > 0 { "-" } else { "+" }
            ),
            CITE_PROP1,
            move |c| {
                let (wp, wm) = omega_pm(sign);
                let o_pm = if sign > 0 { c.o_plus() } else { c.o_minus() };
                let inner = Operator::sum([
                    (c.three_index()
                        * Operator::sum([c.one_index(3), c.one_index(1).scale_rc(wp.clone()), c.one_index(2).scale_rc(wm.clone())]))
                    .scale_int(2),
                    commutator(&c.one_index(1), &c.one_index(2)),
                    commutator(&c.one_index(2), &c.one_index(3)).scale_rc(wp),
                    commutator(&c.one_index(3), &c.one_index(1)).scale_rc(wm),
                ]);
                // ∓ i√(2/3) = ± o_pm_coefficient
                let rhs = o_pm.scale_int(sign) + inner.scale(rc_scalar(o_pm_coefficient().scale(&Rational::from(sign))));
                (commutator(&c.o_zero(), &o_pm), rhs)
            },
        ));
    }
    for (suffix, e_sign) in [("", None), (".printed", Some(1i64))] {
        let e_text = if e_sign.is_some() { "" } else { "eps " };
        let rel = RelationSpec::new(
            format!("R10.pm{suffix}"),
            "R10",
            format!("[O+,O-] = 2 O0 - 2i/sqrt3 (2 O123 (O1 + O2 + O3) + {e_text}([O1,O2] + [O2,O3] + [O3,O1]))"),
            CITE_PROP1,
            move |c| {
                let brackets = Operator::sum([
                    commutator(&c.one_index(1), &c.one_index(2)),
                    commutator(&c.one_index(2), &c.one_index(3)),
                    commutator(&c.one_index(3), &c.one_index(1)),
                ]);
                let inner = Operator::sum([
                    (c.three_index() * Operator::sum((1..=3).map(|l| c.one_index(l)))).scale_int(2),
                    brackets.scale_int(e_sign.unwrap_or(c.signature.epsilon())),
                ]);
                // -2i/√3
                let coeff = RadicalComplex::basis(6, Rational::new(-2, 3));
                (
                    commutator(&c.o_plus(), &c.o_minus()),
                    c.o_zero().scale_int(2) + inner.scale_rc(coeff),
                )
            },
        );
        r.push(if e_sign.is_some() { rel.probe() } else { rel });
    }

    for (sign, tag) in [(1i64, "+"), (-1, "-")] {
        let name = if sign > 0 { "p" } else { "m" };
        r.push(
            RelationSpec::new(
                format!("R11.{name}"),
                "R11",
                format!(
                    "[O0,O{tag}] = {tag}O{tag} {} 2i sqrt(2/3) O123 (O3 + w^{tag} O1 + w^-{tag} O2)",
                    if sign > 0 { "-" } else { "+" }
                ),
                CITE_PROP2,
                move |c| {
                    let (wp, wm) = omega_pm(sign);
                    let o_pm = if sign > 0 { c.o_plus() } else { c.o_minus() };
                    let tail = c.three_index()
                        * Operator::sum([c.one_index(3), c.one_index(1).scale_rc(wp), c.one_index(2).scale_rc(wm)]);
                    let coeff = o_pm_coefficient().scale(&Rational::from(2 * sign));
                    (
                        commutator(&c.o_zero(), &o_pm),
                        o_pm.scale_int(sign) + tail.scale_rc(coeff),
                    )
                },
            )
            .only(PresetName::G2),
        );
    }
    for (suffix, e_sign) in [("", None), (".printed", Some(1i64))] {
        let e_text = if e_sign.is_some() { "" } else { "eps " };
        let rel = RelationSpec::new(
            format!("R11.pm{suffix}"),
            "R11",
            format!("[O+,O-] = 2 O0 - 2i sqrt3 {e_text}E"),
            CITE_PROP2,
            move |c| {
                // -2i√3
                let coeff = RadicalComplex::basis(6, Rational::from(-2 * e_sign.unwrap_or(c.signature.epsilon())));
                (
                    commutator(&c.o_plus(), &c.o_minus()),
                    c.o_zero().scale_int(2) + c.casimir_e().scale_rc(coeff),
                )
            },
        )
        .only(PresetName::G2);
        r.push(if e_sign.is_some() { rel.probe() } else { rel });
    }
    r.push(
        RelationSpec::new("R12.p", "R12", "[O0,K+] = K+", CITE_LADDER, |c| {
            (commutator(&c.o_zero(), &c.k_plus()), c.k_plus())
        })
        .only(PresetName::G2),
    );
    r.push(
        RelationSpec::new("R12.m", "R12", "[O0,K-] = -K-", CITE_LADDER, |c| {
            (commutator(&c.o_zero(), &c.k_minus()), -c.k_minus())
        })
        .only(PresetName::G2),
    );

    for k in 1..=6 {
        let rel = RelationSpec::new(
            format!("R13.{k}"),
            "R13",
            format!("{{tsig{k}, O0}} = 0"),
            CITE_ANTI_O0,
            move |c| (anticommutator(&c.lift(k), &c.o_zero()), Operator::zero()),
        );
        r.push(if k > 3 { rel.only(PresetName::G2) } else { rel });
    }

    r.push(
        RelationSpec::new("R14.D.comm", "R14", "[O123, D] = 0", CITE_CENTRAL, |c| {
            (commutator(&c.three_index(), &c.dirac()), Operator::zero())
        })
        .probe(),
    );
    r.push(
        RelationSpec::new("R14.D.acomm", "R14", "{O123, D} = 0", CITE_CENTRAL, |c| {
            (anticommutator(&c.three_index(), &c.dirac()), Operator::zero())
        })
        .probe(),
    );
    for (i, j) in PAIRS {
        r.push(
            RelationSpec::new(
                format!("R14.O{i}{j}"),
                "R14",
                format!("[O123, O{i}{j}] = 0"),
                CITE_CENTRAL,
                move |c| (commutator(&c.three_index(), &c.two_index(i, j)), Operator::zero()),
            )
            .probe(),
        );
    }
    for k in 1..=6 {
        for (kind, label) in [(false, "comm"), (true, "acomm")] {
            let stmt = if kind {
                format!("{{O123, tsig{k}}} = 0")
            } else {
                format!("[O123, tsig{k}] = 0")
            };
            let rel = RelationSpec::new(format!("R14.tsig{k}.{label}"), "R14", stmt, CITE_CENTRAL, move |c| {
                let op = if kind {
                    anticommutator(&c.three_index(), &c.lift(k))
                } else {
                    commutator(&c.three_index(), &c.lift(k))
                };
                (op, Operator::zero())
            })
            .probe();
            r.push(if k > 3 { rel.only(PresetName::G2) } else { rel });
        }
    }

    for (i, j) in PAIRS {
        r.push(RelationSpec::new(
            format!("R15.{i}{j}"),
            "R15",
            format!("[D, O{i}{j}] = 0"),
            CITE_SYM,
            move |c| (commutator(&c.dirac(), &c.two_index(i, j)), Operator::zero()),
        ));
    }
    r
}

/// (ω^±, ω^∓)
fn omega_pm(sign: i64) -> (RadicalComplex, RadicalComplex) {
    if sign > 0 {
        (omega_pow(1), omega_pow(2))
    } else {
        (omega_pow(2), omega_pow(1))
    }
}

/// The lift of the `idx`-th simple root (zero-based).
fn simple_lift(c: &Catalogue, idx: usize) -> Operator {
    c.lift(c.preset.simple[idx] + 1)
}

/// Order of the product of the two simple reflections.
pub fn coxeter_order(preset: &RootSystemPreset) -> u32 {
    let ms = preset.simple_reflections();
    let prod = ms[0].mul(&ms[1]);
    let mut acc = prod.clone();
    let mut m = 1;
    while !acc.is_identity() {
        acc = acc.mul(&prod);
        m += 1;
    }
    m
}

/// Sign of (tsig1 tsig2)^m for simple roots at angle π - π/m: the unit
/// vectors multiply to ±exp(θB) with B² = -1, giving -1 for ε = -1 and
/// (-1)^(m-1) for ε = +1.
pub fn braid_sign(m: u32, s: Signature) -> i64 {
    if s.epsilon() < 0 || m.is_multiple_of(2) {
        -1
    } else {
        1
    }
}

/// Σ_{k<l} C_{(ij),(kl)} O_kl, where C is the second compound of the
/// reflection of the `idx`-th simple root.
fn compound_image(c: &Catalogue, idx: usize, i: usize, j: usize) -> Operator {
    let m = crate::group::reflection_matrix(&c.preset.roots[c.preset.simple[idx]].vector);
    Operator::sum(PAIRS.iter().filter_map(|&(k, l)| {
        let coeff = m.compound2(i - 1, j - 1, k - 1, l - 1);
        (!coeff.is_zero()).then(|| c.two_index(k, l).scale_rc(coeff))
    }))
}

fn render_pair_combination(coeffs: &[Rational; 3]) -> String {
    let terms: Vec<(bool, String)> = PAIRS
        .iter()
        .zip(coeffs)
        .filter(|(_, c)| !c.is_zero())
        .map(|(&(i, j), c)| {
            let a = c.abs();
            let text = if a.is_one() {
                format!("O{i}{j}")
            } else {
                format!("{a} O{i}{j}")
            };
            (c.is_negative(), text)
        })
        .collect();
    crate::exactfield::render_signed_sum(&terms)
}

/// Looks up a relation by exact name.
pub fn find(name: &str) -> Result<RelationSpec, RelationError> {
    registry()
        .into_iter()
        .find(|r| r.name == name)
        .ok_or_else(|| RelationError::UnknownRelation(name.to_string()))
}

/// Relations whose name or family matches `selector` (e.g. `R8` or `R8a`).
pub fn select(selector: &str) -> Result<Vec<RelationSpec>, RelationError> {
    let found: Vec<RelationSpec> = registry()
        .into_iter()
        .filter(|r| r.name == selector || r.group == selector)
        .collect();
    if found.is_empty() {
        Err(RelationError::UnknownRelation(selector.to_string()))
    } else {
        Ok(found)
    }
}

/// Checks one relation with the given catalogue, sharing `eval`'s cache.
pub fn verify_with(
    r: &RelationSpec,
    cat: &Catalogue,
    n: u32,
    eval: &Evaluator,
) -> Result<VerificationReport, RelationError> {
    verify_on_basis(r, cat, n, eval, &basis_up_to_degree(n))
}

/// Like [`verify_with`] but only on `basis`, e.g. a random sample of the
/// degree-`n` basis.
pub fn verify_on_basis(
    r: &RelationSpec,
    cat: &Catalogue,
    n: u32,
    eval: &Evaluator,
    basis: &[(Monomial, Blade)],
) -> Result<VerificationReport, RelationError> {
    if !r.in_scope(cat.preset.name) {
        return Err(RelationError::ScopeMismatch {
            relation: r.name.clone(),
            preset: cat.preset.name.to_string(),
        });
    }
    let start = Instant::now();
    let (lhs, rhs) = r.sides(cat);
    let cmp = equal_on_basis(eval, &lhs, &rhs, basis);
    let pass = cmp.verdict.is_pass();
    let verdict = match (r.kind, pass) {
        (RelationKind::Assert, true) => ReportVerdict::Pass,
        (RelationKind::Assert, false) => ReportVerdict::Fail,
        (RelationKind::Probe, true) => ReportVerdict::Vanishes,
        (RelationKind::Probe, false) => ReportVerdict::Nonzero,
    };
    Ok(VerificationReport {
        name: r.name.clone(),
        group: r.group.to_string(),
        statement: r.statement.clone(),
        citation: r.citation.to_string(),
        preset: cat.preset.name.to_string(),
        epsilon: cat.signature.epsilon(),
        kind: r.kind,
        degree: n,
        basis_size: cmp.basis_size,
        verdict,
        witness: cmp.verdict.witness().cloned(),
        millis: Some(start.elapsed().as_millis()),
    })
}

/// Checks one relation for a preset and signature.
pub fn verify(
    r: &RelationSpec,
    n: u32,
    s: Signature,
    preset: &RootSystemPreset,
) -> Result<VerificationReport, RelationError> {
    let cat = Catalogue::new(preset, s, r.weights_for());
    verify_with(r, &cat, n, &Evaluator::new())
}

/// Checks the given relations, skipping out-of-scope ones, in order.
pub fn verify_many(
    relations: &[RelationSpec],
    n: u32,
    s: Signature,
    preset: &RootSystemPreset,
) -> Vec<VerificationReport> {
    verify_many_on(relations, n, s, preset, None, &basis_up_to_degree(n))
}

/// [`verify_many`] with optional concrete weights (replacing the symbolic
/// ones) on a given basis.
pub fn verify_many_on(
    relations: &[RelationSpec],
    n: u32,
    s: Signature,
    preset: &RootSystemPreset,
    kappa: Option<&(Rational, Rational)>,
    basis: &[(Monomial, Blade)],
) -> Vec<VerificationReport> {
    let weights = match kappa {
        Some((k1, k2)) => Weights::rational(k1.clone(), k2.clone()),
        None => Weights::symbolic(),
    };
    let weighted = Catalogue::new(preset, s, weights);
    let zero = Catalogue::new(preset, s, Weights::zero());
    let eval = Evaluator::new();
    relations
        .iter()
        .filter(|r| r.in_scope(preset.name))
        .map(|r| {
            let cat = match r.weights {
                WeightMode::Symbolic => &weighted,
                WeightMode::Zero => &zero,
            };
            verify_on_basis(r, cat, n, &eval, basis).expect("scope already checked")
        })
        .collect()
}

/// Runs every in-scope registry entry.
pub fn verify_all(n: u32, s: Signature, preset: &RootSystemPreset) -> Vec<VerificationReport> {
    verify_many(&registry(), n, s, preset)
}

/// True iff no assertion failed.
pub fn all_ok(reports: &[VerificationReport]) -> bool {
    reports.iter().all(VerificationReport::is_ok)
}
