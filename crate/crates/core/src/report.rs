//! Serializable report shapes for the command-line pipeline.
//!
//! Every report embeds the configuration that produced it, so a report
//! file alone is enough to reproduce the run. Number-field elements are
//! rendered in the standard text encoding of their coordinate vectors.

use serde::Serialize;

use crate::curves::{CurveKind, CurveModel, CurvePoint, SolutionVerdict};
use crate::frey::{EliminationReport, EliminationStatus, PairList, PairTrace};
use crate::oracle::{SearchConfig, Solution};
use crate::sieve::{SieveOutcome, SurvivingUnit};

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SurvivorReport {
    pub exponents: Vec<u64>,
    pub representative: String,
    pub witnesses: Vec<(u64, u64)>,
}

impl From<&SurvivingUnit> for SurvivorReport {
    fn from(s: &SurvivingUnit) -> Self {
        SurvivorReport {
            exponents: s.exponents.clone(),
            representative: s.representative.to_string(),
            witnesses: s.witnesses.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SieveReport {
    pub p: u64,
    pub case: String,
    pub candidate_count: usize,
    pub generators: Vec<String>,
    pub survivors: Vec<SurvivorReport>,
    pub elapsed_ms: u128,
}

impl From<&SieveOutcome> for SieveReport {
    fn from(o: &SieveOutcome) -> Self {
        SieveReport {
            p: o.p,
            case: o.case.label().to_string(),
            candidate_count: o.candidate_count,
            generators: o.generators.iter().map(|g| g.to_string()).collect(),
            survivors: o.survivors.iter().map(SurvivorReport::from).collect(),
            elapsed_ms: o.elapsed_ms,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PairTraceReport {
    pub a: u64,
    pub b: u64,
    pub trace: i64,
    pub trace_mod_p: u64,
    pub matches_target: bool,
}

impl From<&PairTrace> for PairTraceReport {
    fn from(t: &PairTrace) -> Self {
        PairTraceReport {
            a: t.a,
            b: t.b,
            trace: t.trace,
            trace_mod_p: t.trace_mod_p,
            matches_target: t.matches_target,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ModularSieveReport {
    pub p: u64,
    pub q: u64,
    pub trivial_sieve: bool,
    pub pairs: Vec<(u64, u64)>,
    pub traces: Vec<PairTraceReport>,
    /// `ELIMINATED`, `SKIPPED_NO_FREY_DATA` or `UNRESOLVED`.
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skip_reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unresolved_pairs: Option<Vec<(u64, u64)>>,
}

impl From<&EliminationReport> for ModularSieveReport {
    fn from(r: &EliminationReport) -> Self {
        let PairList {
            trivial_sieve,
            ref pairs,
            ..
        } = r.pair_list;
        let (status, skip_reason, unresolved_pairs) = match &r.status {
            EliminationStatus::Eliminated => ("ELIMINATED".to_string(), None, None),
            EliminationStatus::Skipped { reason } => (
                "SKIPPED_NO_FREY_DATA".to_string(),
                Some(reason.clone()),
                None,
            ),
            EliminationStatus::Unresolved { pairs } => {
                ("UNRESOLVED".to_string(), None, Some(pairs.clone()))
            }
        };
        ModularSieveReport {
            p: r.p,
            q: r.q,
            trivial_sieve,
            pairs: pairs.clone(),
            traces: r.traces.iter().map(PairTraceReport::from).collect(),
            status,
            skip_reason,
            unresolved_pairs,
        }
    }
}

/// `TRIVIAL_SOLUTION`, `NO_INTEGER_SOLUTION` or `CANDIDATE`, with the
/// recovered integers where applicable.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerdictReport {
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roots: Option<Vec<(String, String)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidate: Option<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_power: Option<String>,
}

impl From<&SolutionVerdict> for VerdictReport {
    fn from(v: &SolutionVerdict) -> Self {
        match v {
            SolutionVerdict::TrivialSolution { roots } => VerdictReport {
                verdict: "TRIVIAL_SOLUTION".into(),
                roots: Some(
                    roots
                        .iter()
                        .map(|(a, b)| (a.to_string(), b.to_string()))
                        .collect(),
                ),
                candidate: None,
                exact_power: None,
            },
            SolutionVerdict::NoIntegerSolution => VerdictReport {
                verdict: "NO_INTEGER_SOLUTION".into(),
                roots: None,
                candidate: None,
                exact_power: None,
            },
            SolutionVerdict::Candidate { a, b, exact_power } => VerdictReport {
                verdict: "CANDIDATE".into(),
                roots: None,
                candidate: Some((a.to_string(), b.to_string())),
                exact_power: exact_power.as_ref().map(|c| c.to_string()),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PointVerdictReport {
    pub point: String,
    pub on_curve: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictReport>,
}

/// One model `lhsFactor * Y^2 = leadCoefficient * X^p + constant`, with the
/// coefficients rendered as element strings.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CurveReport {
    pub p: u64,
    pub kind: String,
    pub genus: u64,
    pub e: String,
    pub lhs_factor: String,
    pub lead_coefficient: String,
    pub constant: String,
    pub points: Vec<PointVerdictReport>,
}

pub fn curve_kind_label(kind: CurveKind) -> &'static str {
    match kind {
        CurveKind::CPrime => "C_PRIME",
        CurveKind::CInt => "C_INT",
        CurveKind::DPrime => "D_PRIME",
    }
}

impl CurveReport {
    pub fn new(model: &CurveModel, points: Vec<PointVerdictReport>) -> Self {
        use crate::curves::{integral_model_constant, pi13, standard_forms};
        use crate::ring::{CubicNum, Rat};
        let forms = standard_forms();
        let (lhs, lead, constant) = match model.kind {
            CurveKind::CPrime => (forms.one_plus_d(), model.e.clone(), forms.d.clone()),
            CurveKind::CInt => (
                CubicNum::one(),
                model.e.clone(),
                integral_model_constant(model.p),
            ),
            CurveKind::DPrime => (
                forms.one_plus_d(),
                &pi13() * &model.e,
                forms.d.scale(&Rat::new(1.into(), 28561.into())),
            ),
        };
        CurveReport {
            p: model.p,
            kind: curve_kind_label(model.kind).to_string(),
            genus: model.genus(),
            e: model.e.to_string(),
            lhs_factor: lhs.to_string(),
            lead_coefficient: lead.to_string(),
            constant: constant.to_string(),
            points,
        }
    }
}

impl PointVerdictReport {
    pub fn new(pt: &CurvePoint, on_curve: bool, verdict: Option<&SolutionVerdict>) -> Self {
        PointVerdictReport {
            point: pt.to_string(),
            on_curve,
            verdict: verdict.map(VerdictReport::from),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PointCheckReport {
    pub p: u64,
    pub kind: String,
    #[serde(flatten)]
    pub point: PointVerdictReport,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SolutionReport {
    pub a: i64,
    pub b: i64,
    pub c: String,
    pub n: u32,
    pub primitive: bool,
}

impl From<&Solution> for SolutionReport {
    fn from(s: &Solution) -> Self {
        SolutionReport {
            a: s.a,
            b: s.b,
            c: s.c.to_string(),
            n: s.n,
            primitive: s.is_primitive(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchReport {
    pub bound: u64,
    pub exponents: Vec<u32>,
    pub solutions: Vec<SolutionReport>,
}

impl SearchReport {
    pub fn new(cfg: &SearchConfig, solutions: &[Solution]) -> Self {
        SearchReport {
            bound: cfg.bound,
            exponents: cfg.exponents.clone(),
            solutions: solutions.iter().map(SolutionReport::from).collect(),
        }
    }

    /// `a,b,c,n,primitive` rows under a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("a,b,c,n,primitive\n");
        for s in &self.solutions {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                s.a, s.b, s.c, s.n, s.primitive
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::{run_sieve, SieveCase};

    #[test]
    fn sieve_report_serializes_with_camel_case_keys() {
        let outcome = run_sieve(5, SieveCase::CaseI).unwrap();
        let report = SieveReport::from(&outcome);
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["p"], 5);
        assert_eq!(json["case"], "I");
        assert_eq!(json["candidateCount"], 62);
        assert_eq!(json["survivors"].as_array().unwrap().len(), 2);
        assert!(json["elapsedMs"].is_number());
        assert_eq!(json["generators"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn search_csv_has_header_and_rows() {
        let cfg = SearchConfig::new(2, vec![3]);
        let sols = crate::oracle::search(&cfg);
        let report = SearchReport::new(&cfg, &sols);
        let csv = report.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("a,b,c,n,primitive"));
        assert!(csv.lines().count() > 1);
        assert!(csv.contains("1,0,1,3,true"));
    }

    #[test]
    fn verdict_reports_carry_their_data() {
        use num_bigint::BigInt;
        let v = SolutionVerdict::TrivialSolution {
            roots: vec![(BigInt::from(-1), BigInt::from(1))],
        };
        let json = serde_json::to_value(VerdictReport::from(&v)).unwrap();
        assert_eq!(json["verdict"], "TRIVIAL_SOLUTION");
        assert_eq!(json["roots"][0][0], "-1");
        let v = SolutionVerdict::NoIntegerSolution;
        let json = serde_json::to_value(VerdictReport::from(&v)).unwrap();
        assert!(json.get("roots").is_none());
    }
}
