use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::enumerate::{visit_cycles, CapExceeded, DEFAULT_CYCLE_CAP};
use super::predicted::{compare_with_plan, predicted_spectrum5, predicted_spectrum6};
use super::{block_lengths, Collision, CycleSpectrum, PredictionMismatch, TaggedSpectrum};
use crate::constructions::{audit_plan, Audit, BuildError};
use crate::graph::{
    materialize, try_counts, ConstructionPlan, Counts, Graph, PlanError, PlanSource,
    DEFAULT_VERTEX_CAP,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerifyMode {
    /// Closed-form block spectra; no graph is built.
    Structural,
    /// Materialize and enumerate every simple cycle.
    Exact { vertex_cap: u64, cycle_cap: usize },
}

impl VerifyMode {
    pub fn exact() -> Self {
        VerifyMode::Exact {
            vertex_cap: DEFAULT_VERTEX_CAP,
            cycle_cap: DEFAULT_CYCLE_CAP,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            VerifyMode::Structural => "structural",
            VerifyMode::Exact { .. } => "exact",
        }
    }
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error(transparent)]
    Cap(#[from] CapExceeded),
    #[error(transparent)]
    Build(#[from] BuildError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Divisibility {
    pub m: u64,
    pub all_multiples: bool,
    /// Distinct lengths that are not multiples of `m`.
    pub offending: Vec<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub label: String,
    pub mode: &'static str,
    pub counts: Counts,
    pub spectrum: TaggedSpectrum,
    pub distinct: bool,
    pub collisions: Vec<Collision>,
    pub divisibility: Option<Divisibility>,
    pub audit: Option<Audit>,
    /// Size of the closed-form prediction, for plans built from parameters.
    pub predicted_count: Option<usize>,
    pub prediction_mismatches: Vec<PredictionMismatch>,
    pub warnings: Vec<String>,
}

impl VerificationReport {
    fn assemble(
        label: String,
        mode: &'static str,
        counts: Counts,
        spectrum: TaggedSpectrum,
        m_divisor: Option<u64>,
        warnings: Vec<String>,
    ) -> Self {
        let collisions = spectrum.collisions();
        let divisibility = m_divisor.map(|m| {
            let mut offending: Vec<u64> = spectrum
                .entries()
                .iter()
                .map(|e| e.0)
                .filter(|l| m != 0 && l % m != 0)
                .collect();
            offending.dedup();
            Divisibility {
                m,
                all_multiples: offending.is_empty(),
                offending,
            }
        });
        VerificationReport {
            label,
            mode,
            counts,
            distinct: collisions.is_empty(),
            spectrum,
            collisions,
            divisibility,
            audit: None,
            predicted_count: None,
            prediction_mismatches: Vec::new(),
            warnings,
        }
    }

    pub fn cycle_spectrum(&self) -> CycleSpectrum {
        self.spectrum.spectrum()
    }

    pub fn cycle_count(&self) -> usize {
        self.spectrum.entries().len()
    }

    /// Passed distinctness and, if requested, divisibility.
    pub fn passed(&self) -> bool {
        self.distinct && self.divisibility.as_ref().is_none_or(|d| d.all_multiples)
    }

    /// e.g. `15 cycles, distinct, all ≡ 0 mod 4`.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "{} cycles, {}",
            self.cycle_count(),
            if self.distinct {
                "distinct".to_string()
            } else {
                format!("{} colliding lengths", self.collisions.len())
            }
        );
        if let Some(d) = &self.divisibility {
            if d.all_multiples {
                s.push_str(&format!(", all ≡ 0 mod {}", d.m));
            } else {
                s.push_str(&format!(
                    ", {} lengths not ≡ 0 mod {}",
                    d.offending.len(),
                    d.m
                ));
            }
        }
        s
    }
}

/// Checks that every cycle of the plan has its own length (and, with
/// `m_divisor`, that every length is a multiple of it).
pub fn verify(
    plan: &ConstructionPlan,
    mode: VerifyMode,
    m_divisor: Option<u64>,
) -> Result<VerificationReport, VerifyError> {
    let counts = try_counts(plan)?;
    let spectrum = match mode {
        VerifyMode::Structural => structural_spectrum(plan),
        VerifyMode::Exact {
            vertex_cap,
            cycle_cap,
        } => {
            let m = materialize(plan, vertex_cap)?;
            let mut entries = Vec::new();
            visit_cycles(&m.graph, cycle_cap, |c| {
                entries.push((c.length, m.block_of(c.max_vertex)));
            })?;
            TaggedSpectrum::from_entries(entries)
        }
    };
    let mut report = VerificationReport::assemble(
        plan.label().to_string(),
        mode.name(),
        counts,
        spectrum,
        m_divisor,
        plan.warnings().to_vec(),
    );
    if let Some(audit) = audit_plan(plan) {
        report.audit = Some(audit?);
    }
    let predicted = match plan.source() {
        PlanSource::Custom => None,
        PlanSource::Theorem5(p) => Some(predicted_spectrum5(p)?),
        PlanSource::Theorem6(p) => Some(predicted_spectrum6(p)?),
    };
    if let Some(predicted) = predicted {
        report.predicted_count = Some(predicted.len());
        report.prediction_mismatches = compare_with_plan(plan, &predicted);
        let missing: Vec<String> = predicted
            .unrealizable()
            .iter()
            .map(|e| e.length.to_string())
            .collect();
        if !missing.is_empty() {
            report.warnings.push(format!(
                "predicted lengths without a realizing block: {}",
                missing.join(",")
            ));
        }
    }
    Ok(report)
}

/// Union of the per-block closed forms, merged deterministically.
pub(crate) fn structural_spectrum(plan: &ConstructionPlan) -> TaggedSpectrum {
    let entries: Vec<(u64, Option<usize>)> = plan
        .blocks()
        .par_iter()
        .enumerate()
        .flat_map_iter(|(idx, b)| block_lengths(b).into_iter().map(move |l| (l, Some(idx))))
        .collect();
    TaggedSpectrum::from_entries(entries)
}

/// Exact verification of an explicit graph with no block structure.
pub fn verify_graph(
    graph: &Graph,
    cycle_cap: usize,
    m_divisor: Option<u64>,
) -> Result<VerificationReport, VerifyError> {
    let mut lengths = Vec::new();
    visit_cycles(graph, cycle_cap, |c| lengths.push((c.length, None)))?;
    let counts = Counts {
        vertices: graph.vertex_count() as u64,
        edges: graph.edge_count() as u64,
        cyclomatic: graph.cyclomatic_number() as u64,
    };
    let mut warnings = Vec::new();
    if graph.has_parallel_edges() {
        warnings.push("graph has parallel edges; digons are counted as 2-cycles".into());
    }
    Ok(VerificationReport::assemble(
        "graph".into(),
        "exact",
        counts,
        TaggedSpectrum::from_entries(lengths),
        m_divisor,
        warnings,
    ))
}
