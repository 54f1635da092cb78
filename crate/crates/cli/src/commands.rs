use std::collections::BTreeSet;
use std::fs;

use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use uga_core::baer::{
    group_baer_pipeline, is_baer_sampled, kaplansky_type, maschke_predict, nilpotent_ideal_bruteforce,
    wedderburn_components, AlgebraSpec, BaerCheck, StructureAlgebra, WedderburnReport,
};
use uga_core::groups::{
    build_finite_group, conjugacy_classes, group_center, icc_check, FamilySpec, FiniteGroup, Group, GroupSpec,
    IccVerdict, InfiniteGroup,
};
use uga_core::json::{parse_rational, StagesJson};
use uga_core::operators::{builtin_scenario, strong_convergence_check, ConvergenceVerdict, SCENARIOS};
use uga_core::scalars::fq_extend;
use uga_core::Error;

use crate::report::{ErrorKind, Label, Report};

#[derive(Debug)]
pub struct Failure {
    pub kind: ErrorKind,
    pub message: String,
}

impl Failure {
    pub fn invalid(message: impl Into<String>) -> Self {
        Failure {
            kind: ErrorKind::InvalidInput,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::BudgetExceeded { .. } => ErrorKind::BudgetExceeded,
            _ => ErrorKind::InvalidInput,
        };
        Failure {
            kind,
            message: e.to_string(),
        }
    }
}

pub type CmdResult = Result<Report, Failure>;

/// Inline JSON, or `@path` to read it from a file.
pub fn read_json<T: DeserializeOwned>(what: &str, arg: &str) -> Result<T, Failure> {
    let text = match arg.strip_prefix('@') {
        Some(path) => {
            fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{what}: cannot read {path}: {e}")))?
        }
        None => arg.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| Failure::invalid(format!("{what}: {e}")))
}

fn labels(g: &FiniteGroup, ids: &[usize]) -> Vec<String> {
    ids.iter().map(|&i| g.labels()[i].clone()).collect()
}

fn group_summary(g: &FiniteGroup) -> Value {
    let classes: Vec<Vec<String>> = conjugacy_classes(g).iter().map(|c| labels(g, c)).collect();
    json!({
        "name": g.name(),
        "order": g.order(),
        "abelian": g.is_abelian(),
        "exponent": g.exponent(),
        "class_sizes": classes.iter().map(Vec::len).collect::<Vec<_>>(),
        "classes": classes,
        "center": labels(g, &group_center(g)),
    })
}

pub fn analyze(spec: &GroupSpec, p: u64, k: u32, budget: u64) -> CmdResult {
    let group = build_finite_group(spec)?;
    let mut r = Report::new("analyze", json!({"group": spec, "p": p, "k": k}), budget);
    let classes = conjugacy_classes(&group).len();
    r.exact("conjugacy_classes", classes, None);
    r.exact("center_order", group_center(&group).len(), None);

    let report = group_baer_pipeline(spec, p, k, budget)?;
    let b = Some(budget);
    r.exact("maschke_prediction", report.maschke_prediction, None);
    r.exact("semisimple", report.semisimple, b);
    r.exact("maschke_agrees", report.maschke_agrees, b);
    if let Some(w) = &report.wedderburn {
        r.exact("wedderburn_components", &w.components, b);
    }
    if let Some(rad) = &report.radical {
        r.exact("radical_dimension", rad.dimension, b);
        r.exact("nilpotency_index", rad.nilpotency_index, b);
    }
    r.exact("is_baer", report.is_baer, b);
    if let Some(t) = report.kaplansky_type {
        r.exact("kaplansky_type", t, b);
    }
    if let Some(f) = report.dedekind_finite {
        r.exact("dedekind_finite", f, b);
    }
    r.note(report.conclusion.clone());
    r.details = json!({ "group": group_summary(&group), "pipeline": report });
    Ok(r)
}

/// Splits on commas outside parentheses, so `(1,2)` stays one probe.
pub fn split_probes(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur).trim().to_string());
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    out.push(cur.trim().to_string());
    out.retain(|p| !p.is_empty());
    out
}

pub fn factor_check(spec: &FamilySpec, probes: &[String], cap: usize, length_cap: Option<usize>) -> CmdResult {
    let mut group = InfiniteGroup::from_spec(spec)?;
    if let Some(l) = length_cap {
        group = group.with_length_cap(l);
    }
    if probes.is_empty() {
        return Err(Failure::invalid("at least one probe is required"));
    }
    if cap == 0 {
        return Err(Failure::invalid("--cap must be positive"));
    }
    let elems = probes
        .iter()
        .map(|p| group.parse_element(p))
        .collect::<Result<Vec<_>, _>>()?;
    let verdicts = icc_check(&group, &elems, cap)?;

    let mut r = Report::new(
        "factor-check",
        json!({"family": spec, "probes": probes, "cap": cap, "length_cap": group.length_cap()}),
        cap as u64,
    );
    let mut witness = None;
    for (p, v) in elems.iter().zip(&verdicts) {
        let name = format!("class({})", group.label(p));
        match v {
            IccVerdict::FiniteClass { size, class } => {
                r.exact(&name, json!({"finite": size}), Some(cap as u64));
                witness.get_or_insert((group.label(p), class.clone()));
            }
            IccVerdict::CertifiedAtLeast { cap } => {
                r.exact(&name, json!({"at_least": cap}), Some(*cap as u64));
            }
        }
    }
    let (overall, label) = match &witness {
        Some(_) => ("not a factor (exact)", Label::Exact),
        None if group.has_icc_proof() => ("factor (family-certified)", Label::Certified),
        None => ("factor (sampled evidence)", Label::Evidence),
    };
    let budget = (label == Label::Exact).then_some(cap as u64);
    r.push("factor", overall, label, budget);
    match &witness {
        Some((a, class)) => r.note(format!("{a} has a finite conjugacy class of size {}", class.len())),
        None if group.has_icc_proof() => r.note(format!(
            "{} has infinite conjugacy classes for every nontrivial element",
            group.name()
        )),
        None => r.note("every probe reached the cap; other elements were not examined"),
    }
    r.details = json!({
        "family": group.name(),
        "icc_proof": group.has_icc_proof(),
        "probes": probes.iter().zip(&verdicts).map(|(p, v)| json!({"probe": p, "result": v})).collect::<Vec<_>>(),
        "witness_class": witness.map(|(_, c)| c),
    });
    Ok(r)
}

pub struct ConvergenceArgs {
    pub scenario: Option<String>,
    pub file: Option<String>,
    pub stages: usize,
    pub tail: Option<usize>,
    pub threshold: Option<String>,
    pub columns: Option<Vec<usize>>,
}

pub fn convergence(args: &ConvergenceArgs, budget: u64) -> CmdResult {
    let (input, field, stages, mut columns, mut tail, mut threshold) = match (&args.scenario, &args.file) {
        (Some(name), None) => {
            if !SCENARIOS.contains(&name.as_str()) {
                return Err(Failure::invalid(format!(
                    "unknown scenario {name:?}; expected one of {}",
                    SCENARIOS.join(", ")
                )));
            }
            let s = builtin_scenario(name, args.stages)?;
            let input = json!({"scenario": name, "stages": args.stages});
            (input, s.field, s.stages, s.columns, s.tail_index, Some(s.threshold))
        }
        (None, Some(file)) => {
            let j: StagesJson = read_json("stage file", file)?;
            let (field, stages) = j.decode()?;
            let columns = match &j.columns {
                Some(c) => c.clone(),
                None => stages
                    .iter()
                    .flat_map(|s| s.columns())
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect(),
            };
            let last = stages.iter().map(|s| s.index).max().unwrap_or(0);
            let tail = j.tail_index.unwrap_or(last.div_ceil(2));
            let threshold = j.threshold.as_deref().map(parse_rational).transpose()?;
            (json!({"file": file}), field, stages, columns, tail, threshold)
        }
        _ => return Err(Failure::invalid("give exactly one of --scenario or --file")),
    };
    if let Some(c) = &args.columns {
        columns = c.clone();
    }
    if let Some(t) = args.tail {
        tail = t;
    }
    if let Some(t) = &args.threshold {
        threshold = Some(parse_rational(t)?);
    }
    let threshold = threshold.ok_or_else(|| Failure::invalid("a column-decay threshold is required (--eps)"))?;
    let report = strong_convergence_check(&field, &stages, &columns, tail, &threshold)?;

    let mut r = Report::new("convergence", input, budget);
    let (bound_ok, decay_ok) = match &report.verdict {
        ConvergenceVerdict::ConvergesEvidence => (true, true),
        ConvergenceVerdict::FailsBound { .. } => (false, true),
        ConvergenceVerdict::FailsColumnDecay { .. } => (true, false),
    };
    let verdict = serde_json::to_value(&report.verdict).expect("verdict serializes");
    if bound_ok && decay_ok {
        r.evidence("verdict", verdict["verdict"].clone());
    } else {
        r.exact("verdict", verdict["verdict"].clone(), None);
    }
    r.push(
        "uniform_bound",
        bound_ok,
        if bound_ok { Label::Evidence } else { Label::Exact },
        None,
    );
    if bound_ok {
        r.push(
            "column_decay",
            decay_ok,
            if decay_ok { Label::Evidence } else { Label::Exact },
            None,
        );
    } else {
        r.note("column decay not examined after the uniform bound failed");
    }
    r.exact("probes_agree", report.probes_agree, None);
    match &report.verdict {
        ConvergenceVerdict::ConvergesEvidence => r.note(format!(
            "norms stay within {}; listed columns fall below {}",
            report.bound, report.threshold
        )),
        ConvergenceVerdict::FailsBound { stage, norm, bound } => {
            r.note(format!("stage {stage} has norm {norm} above the bound {bound}"))
        }
        ConvergenceVerdict::FailsColumnDecay { stage, column, norm } => r.note(format!(
            "column {column} at tail stage {stage} has norm {norm}, not below {}",
            report.threshold
        )),
    }
    for p in report.probes.iter().filter(|p| !p.passes) {
        if let Some(s) = p.max_stage {
            r.note(format!(
                "probe {} reaches norm {} at stage {s}",
                p.probe, p.max_tail_norm
            ));
        }
    }
    r.details = serde_json::to_value(&report).expect("report serializes");
    Ok(r)
}

pub enum AlgebraSource {
    Group { spec: GroupSpec, p: u64, k: u32 },
    Table(AlgebraSpec),
}

impl AlgebraSource {
    fn input(&self) -> Value {
        match self {
            AlgebraSource::Group { spec, p, k } => json!({"group": spec, "p": p, "k": k}),
            AlgebraSource::Table(a) => json!({"algebra": a}),
        }
    }

    fn build(&self) -> Result<(StructureAlgebra, Option<FiniteGroup>), Failure> {
        match self {
            AlgebraSource::Group { spec, p, k } => {
                let g = build_finite_group(spec)?;
                let f = fq_extend(*p, *k)?;
                Ok((StructureAlgebra::from_group(&g, &f), Some(g)))
            }
            AlgebraSource::Table(a) => Ok((a.build()?, None)),
        }
    }
}

fn wedderburn_details(a: &StructureAlgebra, w: &WedderburnReport) -> Value {
    json!({
        "components": w.components,
        "dimension": w.dimension,
        "semisimplicity": w.semisimplicity,
        "idempotents": w.idempotents.iter().map(|e| a.format_element(e)).collect::<Vec<_>>(),
    })
}

pub fn wedderburn(src: &AlgebraSource, split: bool, budget: u64) -> CmdResult {
    let (a, group) = src.build()?;
    let mut r = Report::new("wedderburn", src.input(), budget);
    let p = a.field().characteristic();
    let maschke = group.as_ref().map(|g| maschke_predict(g, p));
    if let Some(m) = maschke {
        r.exact("maschke_prediction", m, None);
    }
    let result = match maschke {
        Some(true) => {
            let g = group.as_ref().expect("maschke implies a group");
            uga_core::baer::group_wedderburn(g, a.field())
        }
        _ => wedderburn_components(&a, budget),
    };
    let w = match result {
        Ok(w) => w,
        Err(Error::NotSemisimple(why)) => {
            r.exact("semisimple", false, Some(budget));
            if let Some(rad) = nilpotent_ideal_bruteforce(&a, budget)? {
                r.exact("radical_dimension", rad.ideal.dim(), Some(budget));
                r.exact("nilpotency_index", rad.index, Some(budget));
                r.details = json!({
                    "radical": rad.ideal.basis().iter().map(|v| a.format_element(v)).collect::<Vec<_>>(),
                });
            }
            r.note(why);
            return Ok(r);
        }
        Err(e) => return Err(e.into()),
    };
    use uga_core::baer::Semisimplicity::*;
    match w.semisimplicity {
        RadicalScan => r.exact("semisimple", true, Some(budget)),
        Maschke => r.exact("semisimple", true, None),
        CenterOnly => {
            r.evidence("semisimple", true);
            r.note("algebra exceeds the budget; semisimplicity rests on the center only");
        }
    }
    let label = if w.semisimplicity == CenterOnly {
        Label::Evidence
    } else {
        Label::Exact
    };
    let b = (w.semisimplicity == RadicalScan).then_some(budget);
    r.push("wedderburn_components", &w.components, label, b);
    let parts: Vec<String> = w.components.iter().map(|&(n, d)| format!("{}", n * n * d)).collect();
    r.note(format!("{} = {}", parts.join(" + "), w.dimension));
    r.details = wedderburn_details(&a, &w);
    if split {
        w.require_split()?;
        r.exact("split", true, None);
    }
    Ok(r)
}

fn baer_details(a: &StructureAlgebra, b: &BaerCheck) -> Value {
    let fmt = |vs: &[Vec<uga_core::FqElement>]| vs.iter().map(|v| a.format_element(v)).collect::<Vec<_>>();
    json!({
        "mode": b.mode,
        "lattice_size": b.lattice_size,
        "witness": b.witness.as_deref().map(fmt),
        "generators": fmt(&b.generators),
    })
}

pub fn baer(src: &AlgebraSource, sample: Option<(u64, u64)>, budget: u64) -> CmdResult {
    let (a, _) = src.build()?;
    let mut input = src.input();
    if let Some((n, seed)) = sample {
        input["sample"] = json!(n);
        input["seed"] = json!(seed);
    }
    let mut r = Report::new("baer", input, budget);
    if let Some((n, seed)) = sample {
        let b = is_baer_sampled(&a, n, seed)?;
        if b.is_baer {
            r.evidence("is_baer", true);
            r.note(format!("{n} sampled annihilators were all generated by idempotents"));
        } else {
            r.exact("is_baer", false, None);
            r.note("a sampled annihilator is not generated by an idempotent");
        }
        r.details = baer_details(&a, &b);
        return Ok(r);
    }
    match kaplansky_type(&a, budget) {
        Ok(k) => {
            let b = Some(budget);
            r.exact("is_baer", true, b);
            r.exact("kaplansky_type", k.kaplansky_type, b);
            r.exact("dedekind_finite", k.finite, b);
            let mut details = baer_details(&a, &k.baer);
            details["idempotent_count"] = json!(k.idempotent_count);
            details["certificate"] = json!(k.certificate.as_ref().map(|c| a.format_element(c)));
            details["certificate_coordinates"] = json!(k.certificate);
            r.details = details;
        }
        Err(Error::NotBaer) => {
            let b = uga_core::baer::is_baer(&a, budget)?;
            r.exact("is_baer", false, Some(budget));
            r.note("the witness annihilator is not generated by any idempotent");
            r.details = baer_details(&a, &b);
        }
        Err(e) => return Err(e.into()),
    }
    Ok(r)
}
