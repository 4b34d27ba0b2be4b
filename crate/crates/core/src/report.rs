//! Serializable views of tables and verdicts. Field order is the JSON key order.

use serde::{Deserialize, Serialize};

use crate::cohomology::{GroupSpec, P1Row};
use crate::samelson::{
    Agreement, MahowaldReport, Normality, NormalityReason, NormalityReport, SamelsonTable,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct P1Report {
    pub group: String,
    pub p: u32,
    pub rows: Vec<P1ReportRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct P1ReportRow {
    pub generator: String,
    pub p1: String,
    /// `"agree"` or `"disagree"` when the oracle was run.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<String>,
}

impl P1Report {
    pub fn new(g: &GroupSpec, rows: &[P1Row]) -> Self {
        P1Report {
            group: g.name(),
            p: g.prime(),
            rows: rows
                .iter()
                .map(|r| P1ReportRow { generator: r.generator.clone(), p1: r.value.render(), oracle: None })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub group: String,
    pub p: u32,
    pub pairs: Vec<PairReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub a: String,
    pub b: String,
    pub p1: String,
    pub closed_form: String,
    pub witnesses: Vec<WitnessReport>,
    /// `null` when only one criterion applies.
    pub agree: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flag: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub k: String,
    pub c: u32,
}

pub const EDGE_FLAG: &str = "edge-case: criteria-disagree";

impl From<&SamelsonTable> for TableReport {
    fn from(t: &SamelsonTable) -> Self {
        TableReport {
            group: t.group.clone(),
            p: t.p,
            pairs: t
                .cells
                .iter()
                .map(|c| PairReport {
                    a: c.a.label(),
                    b: c.b.label(),
                    p1: c.p1.as_str().to_string(),
                    closed_form: c.closed_form.as_str().to_string(),
                    witnesses: c
                        .witnesses
                        .iter()
                        .map(|w| WitnessReport { k: w.generator.clone(), c: w.coefficient.value() })
                        .collect(),
                    agree: match c.agreement {
                        Agreement::Agree => Some(true),
                        Agreement::Disagree | Agreement::EdgeCase => Some(false),
                        Agreement::NotApplicable => None,
                    },
                    flag: (c.agreement == Agreement::EdgeCase).then(|| EDGE_FLAG.to_string()),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalityJson {
    pub group: String,
    pub n: u32,
    pub p: u32,
    pub verdict: String,
    pub reason: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<NormalityWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalityWitness {
    pub a: String,
    pub b: String,
    pub k: String,
    pub c: u32,
    /// Coefficient as a symmetric residue.
    pub c_signed: i64,
}

impl From<&NormalityReport> for NormalityJson {
    fn from(r: &NormalityReport) -> Self {
        let (reason, witness) = match &r.reason {
            NormalityReason::James => ("p = 2: mod 2 cohomology (James)".to_string(), None),
            NormalityReason::ThetaRowTrivial => {
                ("p > 2n-1: every <eps_i, theta> is trivial".to_string(), None)
            }
            NormalityReason::EulerWitness { a, b, coefficient } => (
                format!("<{a}, {b}> detected by the e*p{} term of P^1 e", (r.p - 1) / 2),
                Some(NormalityWitness {
                    a: a.label(),
                    b: b.label(),
                    k: "e".to_string(),
                    c: coefficient.value(),
                    c_signed: coefficient.symmetric(),
                }),
            ),
        };
        NormalityJson {
            group: format!("SO({})", 2 * r.n),
            n: r.n,
            p: r.p,
            verdict: match r.verdict {
                Normality::Normal => "normal",
                Normality::NotNormal => "not_normal",
            }
            .to_string(),
            reason,
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MahowaldJson {
    pub n: u32,
    pub p: u32,
    pub valuation: u64,
    pub theta_theta: String,
    pub consistent: bool,
}

impl From<&MahowaldReport> for MahowaldJson {
    fn from(r: &MahowaldReport) -> Self {
        MahowaldJson {
            n: r.n,
            p: r.p,
            valuation: r.valuation,
            theta_theta: r.theta_theta.as_str().to_string(),
            consistent: r.consistent,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepStats {
    pub tables: usize,
    pub cells: usize,
    pub agree: usize,
    pub disagree: usize,
    pub edge_cases: usize,
    pub unsupported: usize,
    pub mahowald_inconsistent: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellError {
    pub group: String,
    pub p: u32,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub families: Vec<String>,
    pub n_range: [u32; 2],
    pub p_max: u32,
    pub tables: Vec<TableReport>,
    pub normality: Vec<NormalityJson>,
    pub mahowald: Vec<MahowaldJson>,
    pub stats: SweepStats,
    pub errors: Vec<CellError>,
}
