//! Strong convergence of a sequence of finitely supported matrices indexed by
//! `N x N`, judged on the finitely many stages supplied.
//!
//! A bounded sequence converges strongly to zero exactly when it stays below a
//! uniform bound `C` and every fixed column tends to zero. On finite data the
//! two refutations (a stage above `C`, a column still large in the tail) are
//! exact; passing both is only evidence.
//!
//! Probes: the point masses `delta_j` of the inspected columns, and the slowly
//! decaying vector `f_m = p^{ceil(m/2)}` over every column in use.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{build_finite_group, GroupSpec};
use crate::scalars::{PadicField, PadicScalar, Ring, Valued};

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceStage {
    pub index: usize,
    entries: BTreeMap<(usize, usize), PadicScalar>,
    /// Declared norm bound.
    pub bound: BigRational,
}

impl ConvergenceStage {
    pub fn new(
        index: usize,
        entries: impl IntoIterator<Item = ((usize, usize), PadicScalar)>,
        bound: BigRational,
    ) -> Result<Self> {
        if !bound.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "stage bound must be positive, got {bound}"
            )));
        }
        let mut map: BTreeMap<(usize, usize), PadicScalar> = BTreeMap::new();
        for (pos, v) in entries {
            let slot = map.entry(pos).or_insert_with(|| PadicScalar::zero(v.prime()));
            *slot = slot.try_add(&v)?;
        }
        map.retain(|_, v| !v.is_zero());
        Ok(ConvergenceStage {
            index,
            entries: map,
            bound,
        })
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &PadicScalar)> {
        self.entries.iter()
    }

    pub fn norm(&self) -> BigRational {
        max_norm(self.entries.values())
    }

    pub fn column_sup(&self, j: usize) -> BigRational {
        max_norm(self.entries.iter().filter(|((_, c), _)| *c == j).map(|(_, v)| v))
    }

    pub fn columns(&self) -> BTreeSet<usize> {
        self.entries.keys().map(|&(_, c)| c).collect()
    }

    fn apply_norm(&self, field: &PadicField, f: &BTreeMap<usize, PadicScalar>) -> BigRational {
        let mut out: BTreeMap<usize, PadicScalar> = BTreeMap::new();
        for (&(r, c), v) in &self.entries {
            if let Some(x) = f.get(&c) {
                let slot = out.entry(r).or_insert_with(|| field.zero());
                field.mul_add_assign(slot, v, x);
            }
        }
        max_norm(out.values())
    }
}

fn max_norm<'a>(values: impl Iterator<Item = &'a PadicScalar>) -> BigRational {
    values.map(PadicScalar::norm).max().unwrap_or_else(BigRational::zero)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ConvergenceVerdict {
    ConvergesEvidence,
    FailsBound { stage: usize, norm: String, bound: String },
    FailsColumnDecay { stage: usize, column: usize, norm: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeResult {
    pub probe: String,
    /// Largest `||A f||` over the tail stages, and the stage attaining it.
    pub max_tail_norm: String,
    pub max_stage: Option<usize>,
    pub passes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvergenceReport {
    #[serde(flatten)]
    pub verdict: ConvergenceVerdict,
    pub bound: String,
    pub tail_index: usize,
    pub threshold: String,
    pub stage_norms: Vec<(usize, String)>,
    pub probes: Vec<ProbeResult>,
    /// Whether the probes tell the same story as the verdict.
    pub probes_agree: bool,
}

pub fn strong_convergence_check(
    field: &PadicField,
    stages: &[ConvergenceStage],
    columns: &[usize],
    tail_index: usize,
    threshold: &BigRational,
) -> Result<ConvergenceReport> {
    if stages.is_empty() {
        return Err(Error::EmptyStages);
    }
    if !threshold.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "threshold {threshold} must be positive"
        )));
    }
    for s in stages {
        if let Some(v) = s.entries.values().find(|v| v.prime() != field.prime()) {
            return Err(Error::PrimeMismatch(field.prime(), v.prime()));
        }
    }
    let bound = stages.iter().map(|s| s.bound.clone()).max().expect("nonempty");
    let tail: Vec<&ConvergenceStage> = stages.iter().filter(|s| s.index >= tail_index).collect();

    let verdict = stages
        .iter()
        .find_map(|s| {
            let norm = s.norm();
            (norm > bound).then(|| ConvergenceVerdict::FailsBound {
                stage: s.index,
                norm: norm.to_string(),
                bound: bound.to_string(),
            })
        })
        .or_else(|| {
            tail.iter().find_map(|s| {
                columns.iter().find_map(|&j| {
                    let norm = s.column_sup(j);
                    (norm >= *threshold).then(|| ConvergenceVerdict::FailsColumnDecay {
                        stage: s.index,
                        column: j,
                        norm: norm.to_string(),
                    })
                })
            })
        })
        .unwrap_or(ConvergenceVerdict::ConvergesEvidence);

    let probe_limit = threshold * &bound;
    let run_probe = |name: String, f: BTreeMap<usize, PadicScalar>| {
        let mut best: Option<(usize, BigRational)> = None;
        for s in &tail {
            let n = s.apply_norm(field, &f);
            if best.as_ref().is_none_or(|(_, b)| n > *b) {
                best = Some((s.index, n));
            }
        }
        let (stage, norm) = match best {
            Some((s, n)) => (Some(s), n),
            None => (None, BigRational::zero()),
        };
        ProbeResult {
            probe: name,
            passes: norm < probe_limit,
            max_tail_norm: norm.to_string(),
            max_stage: stage,
        }
    };
    let mut probes: Vec<ProbeResult> = columns
        .iter()
        .map(|&j| run_probe(format!("delta_{j}"), BTreeMap::from([(j, field.one())])))
        .collect();
    let support: BTreeSet<usize> = stages.iter().flat_map(ConvergenceStage::columns).collect();
    let slow = support
        .into_iter()
        .map(|m| (m, field.prime_power(m.div_ceil(2) as i64)))
        .collect();
    probes.push(run_probe("half_valuation".into(), slow));

    let all_pass = probes.iter().all(|p| p.passes);
    Ok(ConvergenceReport {
        probes_agree: all_pass == (verdict == ConvergenceVerdict::ConvergesEvidence),
        verdict,
        bound: bound.to_string(),
        tail_index,
        threshold: threshold.to_string(),
        stage_norms: stages.iter().map(|s| (s.index, s.norm().to_string())).collect(),
        probes,
    })
}

pub const SCENARIOS: [&str; 3] = ["scalar-decay", "column-shift", "unbounded-growth"];

/// A ready-made input for [`strong_convergence_check`].
#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub field: PadicField,
    pub stages: Vec<ConvergenceStage>,
    pub columns: Vec<usize>,
    pub tail_index: usize,
    pub threshold: BigRational,
}

/// Built-in sequences over `Q_5`, stages `0..count`, tail from `count / 2`:
///
/// * `scalar-decay`: `5^l U_g` for a 3-cycle `g` of `S_3`, indexed by the six
///   elements;
/// * `column-shift`: a single `1` at `(0, l)`;
/// * `unbounded-growth`: a single `5^{-l}` at `(0, l)`.
pub fn builtin_scenario(name: &str, count: usize) -> Result<Scenario> {
    if count == 0 {
        return Err(Error::EmptyStages);
    }
    let field = PadicField::with_default_precision(5)?;
    let one = BigRational::from_integer(1.into());
    let tail_index = count / 2;
    let single = |l: usize, v: PadicScalar| ConvergenceStage::new(l, [((0, l), v)], one.clone());
    let (stages, columns) = match name {
        "scalar-decay" => {
            let s3 = build_finite_group(&GroupSpec::Symmetric { n: 3 })?;
            let g = (0..6).find(|&a| s3.element_order(a) == 3).expect("S_3 has 3-cycles");
            let stages = (0..count)
                .map(|l| {
                    let c = field.prime_power(l as i64);
                    ConvergenceStage::new(l, (0..6).map(|a| ((a, s3.op(a, g)), c.clone())), one.clone())
                })
                .collect::<Result<Vec<_>>>()?;
            (stages, (0..6).collect())
        }
        "column-shift" => (
            (0..count).map(|l| single(l, field.one())).collect::<Result<_>>()?,
            (0..tail_index).collect(),
        ),
        "unbounded-growth" => (
            (0..count)
                .map(|l| single(l, field.prime_power(-(l as i64))))
                .collect::<Result<_>>()?,
            (0..tail_index).collect(),
        ),
        _ => return Err(Error::UnknownScenario(name.to_string())),
    };
    // 5^{1 - ceil(T/2)} sits just above the slow probe's tail norm
    let e = 1 - tail_index.div_ceil(2) as i32;
    let threshold = BigRational::from_integer(5.into()).pow(e);
    Ok(Scenario {
        name: name.to_string(),
        field,
        stages,
        columns,
        tail_index,
        threshold,
    })
}

impl Scenario {
    pub fn run(&self) -> Result<ConvergenceReport> {
        strong_convergence_check(
            &self.field,
            &self.stages,
            &self.columns,
            self.tail_index,
            &self.threshold,
        )
    }
}
