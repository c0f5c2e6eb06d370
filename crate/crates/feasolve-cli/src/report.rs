//! The solve report: one JSON object on standard output. All indices are
//! 1-based and all scalars are canonical text, so rational-mode output is
//! byte-stable across runs.

use feasolve::phase1::Phase1Outcome;
use feasolve::phase2::SimplexStatus;
use feasolve::Scalar;
use serde::Serialize;

use crate::run::{Outcome, Pipeline};

#[derive(Debug, Clone, Serialize)]
pub struct CertificateOut {
    /// 1-based tableau row that exposed infeasibility.
    pub row: usize,
    /// Farkas multipliers against the reduced rows.
    pub y: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub objective: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ray: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phase1_iterations: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phase2_iterations: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inconsistent_row: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dropped_rows: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numerically_suspect: Option<bool>,
}

impl SolveReport {
    /// Script-facing exit code for this status.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            "feasible" | "optimal" => 0,
            "infeasible" | "inconsistent" => 1,
            "unbounded" => 2,
            _ => 4,
        }
    }
}

fn strings<S: Scalar>(values: &[S]) -> Vec<String> {
    values.iter().map(|v| v.to_string()).collect()
}

fn one_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|&i| i + 1).collect()
}

/// Assemble the report for a finished pipeline. `numerically_suspect` is
/// `Some` in float mode only.
pub fn build_report<S: Scalar>(pipe: &Pipeline<S>, suspect: Option<bool>) -> SolveReport {
    let mut report = SolveReport {
        status: "internal-error",
        x: None,
        basis: None,
        objective: None,
        ray: None,
        phase1_iterations: None,
        phase2_iterations: None,
        certificate: None,
        inconsistent_row: None,
        dropped_rows: None,
        numerically_suspect: suspect,
    };

    if let Some((_, rank)) = &pipe.initial {
        if !rank.dropped_rows.is_empty() {
            report.dropped_rows = Some(one_based(&rank.dropped_rows));
        }
    }

    match &pipe.outcome {
        Outcome::Inconsistent { row } => {
            report.status = "inconsistent";
            report.inconsistent_row = Some(row + 1);
        }
        Outcome::Infeasible { phase1 } => {
            report.status = "infeasible";
            report.phase1_iterations = Some(phase1.iterations);
            if let Phase1Outcome::Infeasible(cert) = &phase1.outcome {
                report.certificate =
                    Some(CertificateOut { row: cert.row + 1, y: strings(&cert.y) });
            }
        }
        Outcome::Feasible { phase1 } => {
            report.status = "feasible";
            report.phase1_iterations = Some(phase1.iterations);
            if let Phase1Outcome::Feasible(t) = &phase1.outcome {
                report.x = Some(strings(&t.basic_solution()));
                report.basis = Some(one_based(t.basis().cols()));
            }
        }
        Outcome::Optimal { phase1, simplex } => {
            report.status = "optimal";
            report.phase1_iterations = Some(phase1.iterations);
            report.phase2_iterations = Some(simplex.iterations);
            report.x = Some(strings(&simplex.solution()));
            report.basis = Some(one_based(simplex.tableau.basis().cols()));
            if let SimplexStatus::Optimal { objective } = &simplex.status {
                report.objective = Some(objective.to_string());
            }
        }
        Outcome::Unbounded { phase1, simplex } => {
            report.status = "unbounded";
            report.phase1_iterations = Some(phase1.iterations);
            report.phase2_iterations = Some(simplex.iterations);
            report.x = Some(strings(&simplex.solution()));
            report.basis = Some(one_based(simplex.tableau.basis().cols()));
            if let SimplexStatus::Unbounded { ray } = &simplex.status {
                report.ray = Some(strings(ray));
            }
        }
    }
    report
}

/// Serialize with a trailing newline. Key order is fixed by the struct, so
/// identical reports serialize to identical bytes.
pub fn emit_report(report: &SolveReport) -> String {
    let mut out = serde_json::to_string(report).expect("report serialization cannot fail");
    out.push('\n');
    out
}
