use serde::Serialize;

use super::annihilator::is_baer;
use super::idempotent::{kaplansky_type_with, KaplanskyType};
use super::structure::{maschke_predict, nilpotent_ideal_bruteforce, wedderburn_unchecked, Semisimplicity};
use super::{StructureAlgebra, WedderburnReport};
use crate::error::Result;
use crate::groups::{build_finite_group, GroupSpec};
use crate::scalars::{fq_extend, FqElement};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadicalSummary {
    pub dimension: usize,
    pub nilpotency_index: usize,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineReport {
    pub group: String,
    pub order: usize,
    pub characteristic: u64,
    pub field_order: u64,
    pub dimension: usize,
    /// `p` prime to `|G|`.
    pub maschke_prediction: bool,
    /// Largest nilpotent ideal from the exhaustive scan.
    pub radical: Option<RadicalSummary>,
    pub semisimple: bool,
    pub maschke_agrees: bool,
    pub wedderburn: Option<WedderburnReport>,
    pub is_baer: bool,
    /// Annihilator not generated by an idempotent.
    pub baer_witness: Option<Vec<String>>,
    pub annihilator_lattice_size: usize,
    pub kaplansky_type: Option<KaplanskyType>,
    pub dedekind_finite: Option<bool>,
    pub certificate: Option<String>,
    pub certificate_coordinates: Option<Vec<FqElement>>,
    pub conclusion: String,
}

/// Builds `F_{p^k}[G]` and runs the semisimplicity, Wedderburn, Baer and
/// Kaplansky analyses on it. All scans are exhaustive, so `q^{|G|}` must fit
/// the budget.
pub fn group_baer_pipeline(spec: &GroupSpec, p: u64, k: u32, budget: u64) -> Result<PipelineReport> {
    let group = build_finite_group(spec)?;
    let field = fq_extend(p, k)?;
    let a = StructureAlgebra::from_group(&group, &field);
    a.check_budget(budget)?;

    let maschke = maschke_predict(&group, p);
    let radical = nilpotent_ideal_bruteforce(&a, budget)?;
    let semisimple = radical.is_none();
    let wedderburn = if semisimple {
        Some(wedderburn_unchecked(&a, Semisimplicity::RadicalScan)?)
    } else {
        None
    };
    let baer = is_baer(&a, budget)?;
    let is_baer = baer.is_baer;
    let baer_witness = baer
        .witness
        .as_ref()
        .map(|w| w.iter().map(|v| a.format_element(v)).collect());
    let lattice_size = baer.lattice_size;
    let kaplansky = if is_baer {
        Some(kaplansky_type_with(&a, baer, budget)?)
    } else {
        None
    };

    let kind = kaplansky.as_ref().and_then(|r| r.kaplansky_type);
    let finite = kaplansky.as_ref().and_then(|r| r.finite);
    let certificate = kaplansky.as_ref().and_then(|r| r.certificate.clone());
    let conclusion = match (kind, finite) {
        (Some(t), Some(f)) => format!(
            "reduction is a Baer algebra of type {t:?}, {}",
            if f { "finite" } else { "infinite" }
        ),
        _ => "reduction is not a Baer algebra".to_string(),
    };
    Ok(PipelineReport {
        group: group.name().to_string(),
        order: group.order(),
        characteristic: p,
        field_order: field.order(),
        dimension: a.dim(),
        maschke_prediction: maschke,
        radical: radical.map(|r| RadicalSummary {
            dimension: r.ideal.dim(),
            nilpotency_index: r.index,
            basis: r.ideal.basis().iter().map(|v| a.format_element(v)).collect(),
        }),
        semisimple,
        maschke_agrees: maschke == semisimple,
        wedderburn,
        is_baer,
        baer_witness,
        annihilator_lattice_size: lattice_size,
        kaplansky_type: kind,
        dedekind_finite: finite,
        certificate: certificate.as_ref().map(|c| a.format_element(c)),
        certificate_coordinates: certificate,
        conclusion,
    })
}
