//! JSON report shapes and the degree-parallel homology runner.
//!
//! Field names and nesting are part of the tool's output contract; the
//! schemas under `schemas/` describe them and the test suite validates
//! emitted documents against those schemas. Everything here is deterministic:
//! struct field order fixes JSON key order, and parallel runs merge by
//! degree.

use margolis_core::oracle::{DegreeSummary, GradedOperator, GradedSpace, HomologyReport};
use serde::Serialize;

#[derive(Serialize, Debug, Clone)]
pub struct DegreeJson {
    pub d: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ker: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub im: Option<usize>,
    pub h: usize,
    pub reps: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count_from_basis: Option<usize>,
    #[serde(rename = "match", skip_serializing_if = "Option::is_none")]
    pub matches: Option<bool>,
}

#[derive(Serialize, Debug, Clone)]
pub struct HomologyJson {
    pub space: String,
    pub operator: String,
    pub max_degree: u32,
    pub valid_through: u32,
    pub method: String,
    pub degrees: Vec<DegreeJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all_match: Option<bool>,
}

impl HomologyJson {
    pub fn from_oracle(report: &HomologyReport) -> Self {
        HomologyJson {
            space: report.space.clone(),
            operator: report.operator.label().to_string(),
            max_degree: report.max_degree,
            valid_through: report.valid_through,
            method: "oracle".to_string(),
            degrees: report
                .degrees
                .iter()
                .map(|s| DegreeJson {
                    d: s.d,
                    basis: Some(s.basis),
                    ker: Some(s.ker),
                    im: Some(s.im),
                    h: s.h,
                    reps: s.reps.clone(),
                    count_from_basis: None,
                    matches: None,
                })
                .collect(),
            all_match: None,
        }
    }

    /// Structural counts only; `reps` carry the structural class renderings.
    pub fn from_basis_counts(
        space: String,
        operator: &str,
        max_degree: u32,
        counts: &[usize],
        reps: Vec<Vec<String>>,
    ) -> Self {
        HomologyJson {
            space,
            operator: operator.to_string(),
            max_degree,
            valid_through: max_degree,
            method: "basis".to_string(),
            degrees: counts
                .iter()
                .enumerate()
                .map(|(d, &count)| DegreeJson {
                    d: d as u32,
                    basis: None,
                    ker: None,
                    im: None,
                    h: count,
                    reps: reps.get(d).cloned().unwrap_or_default(),
                    count_from_basis: None,
                    matches: None,
                })
                .collect(),
            all_match: None,
        }
    }

    /// Oracle report with per-degree structural counts and verdicts.
    pub fn comparison(report: &HomologyReport, counts: &[usize]) -> Self {
        let mut out = Self::from_oracle(report);
        out.method = "both".to_string();
        let mut all = true;
        for deg in &mut out.degrees {
            let count = counts.get(deg.d as usize).copied().unwrap_or(0);
            let ok = count == deg.h;
            all &= ok;
            deg.count_from_basis = Some(count);
            deg.matches = Some(ok);
        }
        out.all_match = Some(all);
        out
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct ElementJson {
    pub tx: String,
    pub zeta: String,
    pub degree: u32,
    pub reduced_length: u32,
    #[serde(rename = "J", skip_serializing_if = "Option::is_none")]
    pub home: Option<Vec<u32>>,
    #[serde(rename = "I", skip_serializing_if = "Option::is_none")]
    pub s_indices: Option<Vec<u32>>,
}

#[derive(Serialize, Debug, Clone)]
pub struct BasisJson {
    #[serde(rename = "J", skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub space: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<u32>,
    pub elements: Vec<ElementJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts_per_degree: Option<Vec<usize>>,
}

#[derive(Serialize, Debug, Clone)]
pub struct CheckJson {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Serialize, Debug, Clone)]
pub struct VerifyJson {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CheckJson>,
    pub pass: bool,
}

#[derive(Serialize, Debug, Clone)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

#[derive(Serialize, Debug, Clone)]
pub struct ErrorJson {
    pub error: ErrorBody,
}

impl ErrorJson {
    pub fn new(kind: &str, message: String) -> Self {
        ErrorJson {
            error: ErrorBody {
                kind: kind.to_string(),
                message,
            },
        }
    }
}

/// Compute the full homology report, fanning degrees out over `jobs`
/// threads. Results are merged by degree, so the report is identical to the
/// sequential one.
pub fn run_homology<S>(gop: &GradedOperator<S>, jobs: usize) -> HomologyReport
where
    S: GradedSpace + Sync,
    S::Mono: Send + Sync,
{
    if jobs <= 1 {
        return gop.homology();
    }
    let top = gop.valid_through();
    let mut degrees: Vec<Option<DegreeSummary>> = vec![None; top as usize + 1];
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for worker in 0..jobs {
            handles.push(scope.spawn(move || {
                let mut out = Vec::new();
                let mut d = worker as u32;
                while d <= top {
                    let h = gop
                        .homology_degree(d)
                        .expect("degrees <= valid_through are computable");
                    out.push((d, margolis_core::oracle::summarize(&h)));
                    d += jobs as u32;
                }
                out
            }));
        }
        for handle in handles {
            for (d, s) in handle.join().expect("homology worker panicked") {
                degrees[d as usize] = Some(s);
            }
        }
    });
    HomologyReport {
        space: gop.space().label(),
        operator: gop.operator(),
        max_degree: gop.max_degree(),
        valid_through: top,
        degrees: degrees.into_iter().map(|s| s.expect("all degrees filled")).collect(),
    }
}
