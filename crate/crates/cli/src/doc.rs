//! JSON documents.
//!
//! Every document is an object with a `"kind"` tag. Rationals are written as
//! strings `"p/q"` (or `"p"`); plain JSON integers are accepted wherever a
//! rational is expected, and floating-point numbers are rejected.

use std::fmt;
use std::path::Path;

use cuntz_core::elliott::{AbelianGroupData, ElliottInvariant, InvariantMorphism};
use cuntz_core::goodearl::{DensityPiece, DiagonalElement, MeasureSpec, PLFn, StepFn};
use cuntz_core::linalg::Matrix;
use cuntz_core::ordmon::{Cone, PoGroup};
use cuntz_core::scalar::Scalar;
use cuntz_core::wmodel::{CuntzClass, K0Model, TraceSimplex, WModel};
use num_rational::BigRational;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CliError, Result};

pub type Q = BigRational;

/// An exact rational in the document format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub Q);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct RatVisitor;

        impl Visitor<'_> for RatVisitor {
            type Value = Rat;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational written as \"p/q\" or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rat, E> {
                Q::parse_rational(v)
                    .map(Rat)
                    .ok_or_else(|| E::custom(format!("\"{v}\" is not a rational of the form p/q")))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rat, E> {
                Ok(Rat(Q::from_int(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rat, E> {
                i64::try_from(v)
                    .map(|v| Rat(Q::from_int(v)))
                    .map_err(|_| E::custom("integer out of range"))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Rat, E> {
                Err(E::custom(format!(
                    "floating-point number {v} rejected; write rationals as \"p/q\" strings"
                )))
            }
        }

        d.deserialize_any(RatVisitor)
    }
}

pub fn rats(v: &[Q]) -> Vec<Rat> {
    v.iter().cloned().map(Rat).collect()
}

fn unrat(v: Vec<Rat>) -> Vec<Q> {
    v.into_iter().map(|r| r.0).collect()
}

fn rat_rows(m: &Matrix<Q>) -> Vec<Vec<Rat>> {
    m.to_rows().iter().map(|r| rats(r)).collect()
}

fn matrix(rows: Vec<Vec<Rat>>) -> Result<Matrix<Q>> {
    Ok(Matrix::from_rows(rows.into_iter().map(unrat).collect())?)
}

/// Parses a comma-separated list of rationals, as given on the command line.
pub fn parse_vector(s: &str) -> Result<Vec<Q>> {
    s.split(',')
        .map(|p| {
            Q::parse_rational(p).ok_or_else(|| {
                CliError::invalid(format!(
                    "\"{}\" is not a rational of the form p/q",
                    p.trim()
                ))
            })
        })
        .collect()
}

pub fn parse_rational(s: &str) -> Result<Q> {
    Q::parse_rational(s)
        .ok_or_else(|| CliError::invalid(format!("\"{s}\" is not a rational of the form p/q")))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Document {
    Wmodel(WModelDoc),
    Invariant(InvariantDoc),
    Morphism(MorphismDoc),
    Class(ClassDoc),
    Target(TargetDoc),
    Measure(MeasureDoc),
    Schedule(ScheduleDoc),
    Group(GroupDoc),
    Element(ElementDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Wmodel(_) => "wmodel",
            Document::Invariant(_) => "invariant",
            Document::Morphism(_) => "morphism",
            Document::Class(_) => "class",
            Document::Target(_) => "target",
            Document::Measure(_) => "measure",
            Document::Schedule(_) => "schedule",
            Document::Group(_) => "group",
            Document::Element(_) => "element",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| CliError::invalid(format!("malformed document: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::invalid(format!("cannot read {}: {e}", path.display())))?;
        Document::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    fn wrong_kind(&self, expected: &str) -> CliError {
        CliError::invalid(format!(
            "expected a {expected} document, found {}",
            self.kind()
        ))
    }

    pub fn into_wmodel(self) -> Result<WModel<Q>> {
        match self {
            Document::Wmodel(d) => d.to_model(),
            other => Err(other.wrong_kind("wmodel")),
        }
    }

    pub fn into_class(self) -> Result<CuntzClass<Q>> {
        match self {
            Document::Class(d) => d.to_class(),
            other => Err(other.wrong_kind("class")),
        }
    }

    pub fn into_invariant(self) -> Result<ElliottInvariant<Q>> {
        match self {
            Document::Invariant(d) => d.to_invariant(),
            other => Err(other.wrong_kind("invariant")),
        }
    }

    pub fn into_morphism(self) -> Result<MorphismData> {
        match self {
            Document::Morphism(d) => d.to_morphism(),
            other => Err(other.wrong_kind("morphism")),
        }
    }

    pub fn into_measure(self) -> Result<MeasureSpec<Q>> {
        match self {
            Document::Measure(d) => d.to_measure(),
            other => Err(other.wrong_kind("measure")),
        }
    }

    pub fn into_element(self) -> Result<DiagonalElement<Q>> {
        match self {
            Document::Element(d) => d.to_element(),
            other => Err(other.wrong_kind("element")),
        }
    }

    pub fn into_schedule(self) -> Result<ScheduleDoc> {
        match self {
            Document::Schedule(d) => Ok(d),
            other => Err(other.wrong_kind("schedule")),
        }
    }

    pub fn into_target(self) -> Result<Target> {
        match self {
            Document::Target(d) => d.to_target(),
            other => Err(other.wrong_kind("target")),
        }
    }
}

/// A finite model (`states`, `unit`, optional trace labels) or the purely
/// infinite one (`"purely_infinite": true`).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WModelDoc {
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub purely_infinite: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub states: Option<Vec<Vec<Rat>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub traces: Option<Vec<String>>,
}

fn trace_simplex(labels: Option<Vec<String>>, n: usize) -> Result<TraceSimplex> {
    let t = match labels {
        Some(l) => TraceSimplex::new(l)?,
        None => TraceSimplex::numbered(n)?,
    };
    if t.len() != n {
        return Err(CliError::invalid(format!(
            "{} trace labels for {n} state rows",
            t.len()
        )));
    }
    Ok(t)
}

impl WModelDoc {
    pub fn from_model(m: &WModel<Q>) -> Self {
        match m {
            WModel::PurelyInfinite => WModelDoc {
                purely_infinite: true,
                ..WModelDoc::default()
            },
            WModel::Finite { k0, traces } => WModelDoc {
                purely_infinite: false,
                states: Some(rat_rows(k0.states())),
                unit: Some(k0.unit().to_vec()),
                traces: Some(traces.labels().to_vec()),
            },
        }
    }

    pub fn to_model(&self) -> Result<WModel<Q>> {
        if self.purely_infinite {
            if self.states.is_some() || self.unit.is_some() || self.traces.is_some() {
                return Err(CliError::invalid(
                    "the purely infinite model takes no states, unit or traces",
                ));
            }
            return Ok(WModel::purely_infinite());
        }
        let (Some(states), Some(unit)) = (self.states.clone(), self.unit.clone()) else {
            return Err(CliError::invalid(
                "a finite model needs \"states\" and \"unit\"",
            ));
        };
        let states = matrix(states)?;
        let traces = trace_simplex(self.traces.clone(), states.nrows())?;
        Ok(WModel::finite(K0Model::new(states, unit)?, traces)?)
    }
}

/// Exactly one of `proj` (a `K₀` vector) or `soft` (trace values).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proj: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub soft: Option<Vec<Rat>>,
}

impl ClassDoc {
    pub fn from_class(x: &CuntzClass<Q>) -> Self {
        match x {
            CuntzClass::Proj(v) => ClassDoc {
                proj: Some(v.clone()),
                soft: None,
            },
            CuntzClass::Soft(f) => ClassDoc {
                proj: None,
                soft: Some(rats(f.values())),
            },
        }
    }

    pub fn to_class(&self) -> Result<CuntzClass<Q>> {
        match (&self.proj, &self.soft) {
            (Some(v), None) => Ok(CuntzClass::Proj(v.clone())),
            (None, Some(f)) => Ok(CuntzClass::soft(unrat(f.clone()))?),
            _ => Err(CliError::invalid(
                "a class needs exactly one of \"proj\" and \"soft\"",
            )),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct K1Doc {
    #[serde(default)]
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantDoc {
    pub states: Vec<Vec<Rat>>,
    pub unit: Vec<i64>,
    #[serde(default)]
    pub k1: K1Doc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub traces: Option<Vec<String>>,
}

impl InvariantDoc {
    pub fn from_invariant(inv: &ElliottInvariant<Q>) -> Self {
        InvariantDoc {
            states: rat_rows(&inv.states),
            unit: inv.unit.clone(),
            k1: K1Doc {
                free_rank: inv.k1.free_rank,
                torsion: inv.k1.torsion.clone(),
            },
            traces: Some(inv.traces.labels().to_vec()),
        }
    }

    /// Builds the invariant without validating it, so that violations can be
    /// reported rather than rejected.
    pub fn to_invariant(&self) -> Result<ElliottInvariant<Q>> {
        let states = matrix(self.states.clone())?;
        let traces = trace_simplex(self.traces.clone(), states.nrows())?;
        Ok(ElliottInvariant {
            states,
            unit: self.unit.clone(),
            k1: AbelianGroupData {
                free_rank: self.k1.free_rank,
                torsion: self.k1.torsion.clone(),
            },
            traces,
        })
    }
}

/// `Θ = (θ₀, θ₁, γ)` together with its source and target invariants.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub source: InvariantDoc,
    pub target: InvariantDoc,
    pub theta0: Vec<Vec<i64>>,
    #[serde(default)]
    pub theta1: Vec<Vec<i64>>,
    pub gamma: Vec<Vec<Rat>>,
}

pub struct MorphismData {
    pub source: ElliottInvariant<Q>,
    pub target: ElliottInvariant<Q>,
    pub theta: InvariantMorphism<Q>,
}

fn int_matrix(rows: Vec<Vec<i64>>, cols_if_empty: usize) -> Result<Matrix<i64>> {
    if rows.is_empty() {
        return Ok(Matrix::from_fn(0, cols_if_empty, |_, _| 0));
    }
    Ok(Matrix::from_rows(rows)?)
}

impl MorphismDoc {
    pub fn from_parts(
        source: &ElliottInvariant<Q>,
        target: &ElliottInvariant<Q>,
        theta: &InvariantMorphism<Q>,
    ) -> Self {
        MorphismDoc {
            source: InvariantDoc::from_invariant(source),
            target: InvariantDoc::from_invariant(target),
            theta0: theta.theta0.to_rows(),
            theta1: theta.theta1.to_rows(),
            gamma: rat_rows(&theta.gamma),
        }
    }

    pub fn to_morphism(&self) -> Result<MorphismData> {
        let source = self.source.to_invariant()?;
        let target = self.target.to_invariant()?;
        let theta = InvariantMorphism {
            theta0: int_matrix(self.theta0.clone(), source.rank())?,
            theta1: int_matrix(self.theta1.clone(), source.k1.generator_count())?,
            gamma: matrix(self.gamma.clone())?,
        };
        Ok(MorphismData {
            source,
            target,
            theta,
        })
    }
}

/// A vector target on a finite trace simplex or a step-function target on
/// `[0, 1]`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector: Option<Vec<Rat>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<StepDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepDoc {
    pub partition: Vec<Rat>,
    pub values: Vec<Rat>,
    pub points: Vec<Rat>,
}

pub enum Target {
    Vector(Vec<Q>),
    Step(StepFn<Q>),
}

impl TargetDoc {
    pub fn to_target(&self) -> Result<Target> {
        match (&self.vector, &self.step) {
            (Some(v), None) => Ok(Target::Vector(unrat(v.clone()))),
            (None, Some(s)) => Ok(Target::Step(StepFn::new(
                unrat(s.partition.clone()),
                unrat(s.values.clone()),
                unrat(s.points.clone()),
            )?)),
            _ => Err(CliError::invalid(
                "a target needs exactly one of \"vector\" and \"step\"",
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceDoc {
    pub lo: Rat,
    pub hi: Rat,
    pub density: Rat,
}

/// Piecewise-constant density plus atoms `[x, weight]`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureDoc {
    #[serde(default)]
    pub pieces: Vec<PieceDoc>,
    #[serde(default)]
    pub atoms: Vec<(Rat, Rat)>,
}

impl MeasureDoc {
    pub fn to_measure(&self) -> Result<MeasureSpec<Q>> {
        let pieces = self
            .pieces
            .iter()
            .map(|p| DensityPiece {
                lo: p.lo.0.clone(),
                hi: p.hi.0.clone(),
                density: p.density.0.clone(),
            })
            .collect();
        let atoms = self
            .atoms
            .iter()
            .map(|(x, w)| (x.0.clone(), w.0.clone()))
            .collect();
        Ok(MeasureSpec::new(pieces, atoms)?)
    }
}

/// Matrix sizes for step targets, or a denominator chain for vector
/// targets realized by projections.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sizes: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub denominators: Option<Vec<i64>>,
}

/// A partially ordered group `Z^k`: cone `"simplicial"`, `"lexicographic"`,
/// `"strict_state"` (with `states`) or `"generated"` (with `generators` and
/// `coefficient_bound`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub cone: String,
    pub unit: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub states: Option<Vec<Vec<Rat>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficient_bound: Option<u32>,
}

impl GroupDoc {
    pub fn to_group(&self) -> Result<PoGroup<Q>> {
        let rank = self.unit.len();
        let cone = match self.cone.as_str() {
            "simplicial" => Cone::Simplicial,
            "lexicographic" => Cone::Lexicographic,
            "strict_state" => {
                Cone::StrictState(matrix(self.states.clone().ok_or_else(|| {
                    CliError::invalid("a strict_state cone needs \"states\"")
                })?)?)
            }
            "generated" => Cone::Generated {
                generators: self
                    .generators
                    .clone()
                    .ok_or_else(|| CliError::invalid("a generated cone needs \"generators\""))?,
                coefficient_bound: self.coefficient_bound.unwrap_or(32),
            },
            other => return Err(CliError::invalid(format!("unknown cone \"{other}\""))),
        };
        Ok(PoGroup::new(rank, cone, self.unit.clone())?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PLDoc {
    pub xs: Vec<Rat>,
    pub ys: Vec<Rat>,
}

/// `diag(g₁, …, g_n)` with piecewise-linear entries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDoc {
    pub entries: Vec<PLDoc>,
}

impl ElementDoc {
    pub fn from_element(a: &DiagonalElement<Q>) -> Self {
        ElementDoc {
            entries: a
                .entries()
                .iter()
                .map(|g| PLDoc {
                    xs: rats(g.breakpoints()),
                    ys: rats(g.values()),
                })
                .collect(),
        }
    }

    pub fn to_element(&self) -> Result<DiagonalElement<Q>> {
        let entries = self
            .entries
            .iter()
            .map(|e| PLFn::new(unrat(e.xs.clone()), unrat(e.ys.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DiagonalElement::new(entries)?)
    }
}
