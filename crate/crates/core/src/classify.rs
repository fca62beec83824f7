use rayon::prelude::*;
use scroll_polyalg::{Budget, DEFAULT_PRIME};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::scroll::{ScrollError, ScrollSpec};
use crate::sections::{base_locus, embedded_moduli_dim};
use crate::singular::{
    analyze_base_locus, quasismooth_verdict, quotient_singularity_census, CensusEntry, NonIsolatedMarker, OdpCount,
    Quasismooth, SingularityReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RejectReason {
    EmptyAnticanonical,
    FixedDivisor,
    BaseLocusDim3,
    BaseLocusTooLarge,
    NonIsolatedSingularities,
    SingularPointsOnBaseCurve,
    FractionalOdpCount,
    NotWellFormed,
    NotGorenstein,
    QuasismoothFailure,
}

impl RejectReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            RejectReason::EmptyAnticanonical => "empty-anticanonical",
            RejectReason::FixedDivisor => "fixed-divisor",
            RejectReason::BaseLocusDim3 => "base-locus-dim-3",
            RejectReason::BaseLocusTooLarge => "base-locus-too-large",
            RejectReason::NonIsolatedSingularities => "non-isolated-singularities",
            RejectReason::SingularPointsOnBaseCurve => "singular-points-on-base-curve",
            RejectReason::FractionalOdpCount => "fractional-odp-count",
            RejectReason::NotWellFormed => "not-well-formed",
            RejectReason::NotGorenstein => "not-gorenstein",
            RejectReason::QuasismoothFailure => "quasismooth-failure",
        }
    }
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Status {
    Accepted,
    Rejected { reason: RejectReason, detail: String },
    /// Every randomized check ran out of budget.
    Inconclusive { detail: String },
}

impl Status {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Status::Accepted)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumSummary {
    pub locus: String,
    pub dim: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub spec: ScrollSpec,
    pub notation: String,
    pub base_locus: Vec<StratumSummary>,
    pub report: Option<SingularityReport>,
    pub dim_moduli: Option<i64>,
    pub paper_value: Option<i64>,
    #[serde(flatten)]
    pub status: Status,
}

impl FamilyRecord {
    /// Dimension of the base locus, `None` when empty.
    pub fn base_dim(&self) -> Option<i64> {
        self.base_locus.iter().map(|s| s.dim).max()
    }

    pub fn odp(&self) -> Option<i64> {
        self.report.as_ref().and_then(|r| r.odp.finite())
    }

    pub fn moduli_disagrees(&self) -> bool {
        matches!((self.dim_moduli, self.paper_value), (Some(a), Some(b)) if a != b)
    }

    /// Description in the style of the paper's tables.
    pub fn description(&self) -> String {
        let bs = match self.base_dim() {
            None => "Bs|-K| = ∅".to_string(),
            Some(d) => format!("dim Bs|-K| = {d}"),
        };
        let Some(report) = &self.report else {
            return bs;
        };
        let mut parts = Vec::new();
        match report.odp.finite() {
            Some(0) | None => {}
            Some(k) => parts.push(format!("{k} ODP singularities along Bs|-K|")),
        }
        parts.extend(report.census.iter().map(crate::singular::census_phrase));
        if parts.is_empty() {
            format!("{bs}, general X nonsingular")
        } else {
            format!("{bs}, general X has {}", parts.join(" and "))
        }
    }
}

/// Which families get the randomized quasismoothness check on top of the Bertini argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyScope {
    Off,
    /// Accepted families that appear in the paper-style table.
    TableRows,
    All,
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub prime: u32,
    pub seeds: Vec<u64>,
    pub budget: Budget,
    pub verify: VerifyScope,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { prime: DEFAULT_PRIME, seeds: vec![1, 2, 3], budget: Budget::default(), verify: VerifyScope::TableRows }
    }
}

/// Row of the paper-style table: every accepted family for unit weights, otherwise
/// those with ODPs on the base locus.
pub fn is_table_row(rec: &FamilyRecord) -> bool {
    rec.status.is_accepted() && (rec.spec.weights().iter().all(|&b| b == 1) || rec.odp().unwrap_or(0) > 0)
}

fn summarize_base(spec: &ScrollSpec) -> Vec<StratumSummary> {
    base_locus(spec).iter().map(|s| StratumSummary { locus: s.describe(), dim: s.dim_in_f }).collect()
}

/// Runs the full pipeline on one scroll; the spec is normalized first.
pub fn classify_one(spec: &ScrollSpec, opts: &ClassifyOptions) -> FamilyRecord {
    let spec = spec.normalize();
    let mut rec = FamilyRecord {
        notation: spec.paper_notation(),
        base_locus: summarize_base(&spec),
        report: None,
        dim_moduli: embedded_moduli_dim(&spec).ok(),
        paper_value: paper_moduli_value(&spec),
        status: Status::Accepted,
        spec: spec.clone(),
    };
    let analysis = match analyze_base_locus(&spec) {
        Ok(a) => a,
        Err(rej) => {
            let reason = match rej.reason {
                RejectReason::FixedDivisor if rec.base_dim() == Some(3) => RejectReason::BaseLocusDim3,
                r => r,
            };
            if reason == RejectReason::NonIsolatedSingularities {
                rec.report = Some(SingularityReport::new(
                    OdpCount::NonIsolated(NonIsolatedMarker::NonIsolated),
                    quotient_singularity_census(&spec),
                    Quasismooth::Inconclusive,
                ));
            }
            rec.status = Status::Rejected { reason, detail: rej.detail };
            return rec;
        }
    };
    // a toric base locus is a union of strata over all of P^1, never an isolated point
    debug_assert!(rec.base_locus.iter().all(|s| s.dim >= 1));
    let census = quotient_singularity_census(&spec);
    if !census.well_formed {
        rec.status = Status::Rejected {
            reason: RejectReason::NotWellFormed,
            detail: "a singular stratum of codimension 2 lies in X".into(),
        };
        return rec;
    }
    if !census.gorenstein {
        rec.status =
            Status::Rejected { reason: RejectReason::NotGorenstein, detail: "a quotient singularity is not Gorenstein".into() };
        return rec;
    }
    rec.report = Some(SingularityReport::new(OdpCount::Finite(analysis.odp), census.clone(), Quasismooth::ProvedGeneric));
    let verify = match opts.verify {
        VerifyScope::Off => false,
        VerifyScope::TableRows => is_table_row(&rec),
        VerifyScope::All => true,
    };
    let qs = quasismooth_verdict(&spec, opts.prime, &opts.seeds, &opts.budget, verify);
    rec.report = Some(SingularityReport::new(OdpCount::Finite(analysis.odp), census, qs));
    rec.status = match qs {
        Quasismooth::ProvedGeneric | Quasismooth::VerifiedRandom => Status::Accepted,
        Quasismooth::Failed => Status::Rejected {
            reason: RejectReason::QuasismoothFailure,
            detail: format!("singular away from the base locus for seeds {:?}", opts.seeds),
        },
        Quasismooth::Inconclusive => Status::Inconclusive { detail: "Gröbner budget exhausted".into() },
    };
    rec
}

/// Normalized specs with `a_1 = 0`, twists in `[-bound, bound]` and spread at most `bound`.
pub fn enumerate_candidates(weights: &[i64], bound: i64) -> Result<Vec<ScrollSpec>, ScrollError> {
    ScrollSpec::new(vec![0; weights.len()], weights.to_vec())?;
    let n = weights.len();
    let mut out = BTreeSet::new();
    let mut a = vec![0i64; n];
    let mut idx = vec![-bound; n - 1];
    loop {
        a[1..].copy_from_slice(&idx);
        let (lo, hi) = (*a.iter().min().unwrap(), *a.iter().max().unwrap());
        if hi - lo <= bound {
            let s = ScrollSpec::new(a.clone(), weights.to_vec())?.normalize();
            let (lo, hi) = (*s.twists().iter().min().unwrap(), *s.twists().iter().max().unwrap());
            if hi - lo <= bound {
                out.insert(s);
            }
        }
        let mut k = 0;
        loop {
            if k == n - 1 {
                return Ok(out.into_iter().collect());
            }
            idx[k] += 1;
            if idx[k] <= bound {
                break;
            }
            idx[k] = -bound;
            k += 1;
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchResult {
    pub weights: Vec<i64>,
    pub bound: i64,
    pub candidates: usize,
    pub accepted: Vec<FamilyRecord>,
    pub inconclusive: Vec<FamilyRecord>,
    pub rejections: BTreeMap<RejectReason, usize>,
}

impl SearchResult {
    pub fn table_rows(&self) -> Vec<&FamilyRecord> {
        self.accepted.iter().filter(|r| is_table_row(r)).collect()
    }
}

pub fn run_search(weights: &[i64], bound: i64, opts: &ClassifyOptions) -> Result<SearchResult, ScrollError> {
    let candidates = enumerate_candidates(weights, bound)?;
    let records: Vec<FamilyRecord> = candidates.par_iter().map(|s| classify_one(s, opts)).collect();
    let mut res = SearchResult {
        weights: weights.to_vec(),
        bound,
        candidates: candidates.len(),
        accepted: vec![],
        inconclusive: vec![],
        rejections: BTreeMap::new(),
    };
    for r in records {
        match &r.status {
            Status::Accepted => res.accepted.push(r),
            Status::Inconclusive { .. } => res.inconclusive.push(r),
            Status::Rejected { reason, .. } => *res.rejections.entry(*reason).or_default() += 1,
        }
    }
    Ok(res)
}

/// A row of one of the paper's two tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaperRow {
    pub notation: &'static str,
    pub base_dim: Option<i64>,
    pub odp: i64,
    pub moduli: Option<i64>,
    /// Quotient singularities as (kind, count).
    pub census: &'static [(&'static str, i64)],
    pub text: &'static str,
}

const NONSINGULAR: &str = "general X nonsingular";

pub const TABLE1: [PaperRow; 10] = [
    PaperRow { notation: "F(0,0,0,0)", base_dim: None, odp: 0, moduli: Some(86), census: &[], text: NONSINGULAR },
    PaperRow { notation: "F(0,0,0,1)", base_dim: None, odp: 0, moduli: Some(118), census: &[], text: NONSINGULAR },
    PaperRow { notation: "F(0,0,0,2)", base_dim: None, odp: 0, moduli: Some(83), census: &[], text: NONSINGULAR },
    PaperRow { notation: "F(0,0,1,1)", base_dim: None, odp: 0, moduli: Some(86), census: &[], text: NONSINGULAR },
    PaperRow { notation: "F(0,1,1,1)", base_dim: Some(1), odp: 0, moduli: Some(73), census: &[], text: NONSINGULAR },
    PaperRow { notation: "F(0,1,1,2)", base_dim: Some(1), odp: 0, moduli: Some(86), census: &[], text: NONSINGULAR },
    PaperRow { notation: "F(0,1,1,3)", base_dim: Some(1), odp: 0, moduli: Some(89), census: &[], text: NONSINGULAR },
    PaperRow { notation: "F(0,1,1,4)", base_dim: Some(1), odp: 0, moduli: Some(95), census: &[], text: NONSINGULAR },
    PaperRow { notation: "F(0,0,2,2)", base_dim: Some(2), odp: 0, moduli: Some(91), census: &[], text: NONSINGULAR },
    PaperRow {
        notation: "F(0,0,1,2)",
        base_dim: Some(2),
        odp: 3,
        moduli: Some(86),
        census: &[],
        text: "general X has 3 ODP singularities along Bs|-K|",
    },
];

pub const TABLE2: [PaperRow; 7] = [
    PaperRow {
        notation: "F(0,0,1,2|1³,3)",
        base_dim: Some(2),
        odp: 5,
        moduli: None,
        census: &[("1/3(1,1,1)", 3)],
        text: "5 isolated ODP singularities and three 1/3(1,1,1) singularities",
    },
    PaperRow {
        notation: "F(0,0,2,1|1³,3)",
        base_dim: Some(2),
        odp: 3,
        moduli: None,
        census: &[("1/3(1,1,1)", 1)],
        text: "3 isolated ODP singularities and one 1/3(1,1,1) singularity",
    },
    PaperRow {
        notation: "F(0,0,1,2|1²,2²)",
        base_dim: Some(2),
        odp: 4,
        moduli: None,
        census: &[("A1-curve", 1)],
        text: "4 isolated ODP singularities and a smooth curve of A1 singularities",
    },
    PaperRow {
        notation: "F(0,2,0,1|1²,2²)",
        base_dim: Some(2),
        odp: 2,
        moduli: None,
        census: &[("A1-curve", 2)],
        text: "2 isolated ODP singularities and two disjoint smooth curves of A1 singularities",
    },
    PaperRow {
        notation: "F(0,0,1,2|1³,2)",
        base_dim: Some(2),
        odp: 4,
        moduli: None,
        census: &[("A1-curve", 1)],
        text: "4 isolated ODP singularities and one smooth curve of A1 singularities",
    },
    PaperRow {
        notation: "F(0,1,2,0|1³,2)",
        base_dim: Some(2),
        odp: 2,
        moduli: None,
        census: &[("A1-curve", 1)],
        text: "2 isolated ODP singularities and one smooth curve of A1 singularities",
    },
    PaperRow {
        notation: "F(0,0,2,1|1³,2)",
        base_dim: Some(2),
        odp: 3,
        moduli: None,
        census: &[("A1-curve", 1)],
        text: "3 isolated ODP singularities and one smooth curve of A1 singularities",
    },
];

impl PaperRow {
    pub fn spec(&self) -> ScrollSpec {
        ScrollSpec::parse(self.notation).expect("table notation")
    }

    /// Does a computed record reproduce this row?
    pub fn matches(&self, rec: &FamilyRecord) -> bool {
        let census: Vec<(String, i64)> =
            rec.report.iter().flat_map(|r| r.census.iter().map(|e: &CensusEntry| (e.kind.clone(), e.count))).collect();
        let want: Vec<(String, i64)> = self.census.iter().map(|(k, c)| (k.to_string(), *c)).collect();
        rec.spec == self.spec()
            && rec.status.is_accepted()
            && rec.base_dim() == self.base_dim
            && rec.odp() == Some(self.odp)
            && census == want
    }
}

/// The paper's printed moduli dimension, when the family is in Table 1.
pub fn paper_moduli_value(spec: &ScrollSpec) -> Option<i64> {
    TABLE1.iter().find(|r| r.spec() == *spec).and_then(|r| r.moduli)
}

/// Degree of the coefficient `α_q(t1, t2)` in `f`; negative means the monomial is absent.
pub fn coefficient_degree(spec: &ScrollSpec, q: &[u32]) -> i64 {
    spec.anticanonical().l + spec.twists().iter().zip(q).map(|(a, &k)| a * k as i64).sum::<i64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> ScrollSpec {
        ScrollSpec::parse(s).unwrap()
    }

    fn opts() -> ClassifyOptions {
        ClassifyOptions::default()
    }

    #[test]
    fn quartic_verdicts() {
        let r = classify_one(&spec("F(0,0,1,2)"), &opts());
        assert!(r.status.is_accepted());
        assert_eq!(r.odp(), Some(3));
        assert_eq!(r.base_dim(), Some(2));
        let r = classify_one(&spec("F(0,1,1,1)"), &opts());
        assert!(r.status.is_accepted());
        assert_eq!(r.base_dim(), Some(1));
        assert_eq!(r.odp(), Some(0));
        assert_eq!(r.report.unwrap().quasismooth, Quasismooth::VerifiedRandom);
        let quiet = ClassifyOptions { verify: VerifyScope::Off, ..opts() };
        let r = classify_one(&spec("F(0,0,0,0)"), &quiet);
        assert_eq!(r.report.unwrap().quasismooth, Quasismooth::ProvedGeneric);
    }

    #[test]
    fn fixed_divisor_rejection() {
        let r = classify_one(&spec("F(0,0,0,9)"), &opts());
        assert!(matches!(
            r.status,
            Status::Rejected { reason: RejectReason::FixedDivisor | RejectReason::BaseLocusDim3, .. }
        ));
    }

    #[test]
    fn candidates_are_normalized_and_bounded() {
        let c = enumerate_candidates(&[1, 1, 1, 1], 2).unwrap();
        assert!(c.iter().all(|s| s.is_normalized()));
        assert!(c.contains(&spec("F(0,0,1,2)")));
        assert!(!c.contains(&spec("F(0,0,0,3)")));
        // sorted quadruples 0 <= a2 <= a3 <= a4 <= 2
        assert_eq!(c.len(), 10);
        assert!(enumerate_candidates(&[2, 2], 3).is_err());
    }

    #[test]
    fn proof_inequalities_as_coefficient_degrees() {
        let f = spec("F(0,0,1,2)");
        // 2 - a2 + 3a3 - a4 for x3^4
        assert_eq!(coefficient_degree(&f, &[0, 0, 4, 0]), 3);
        // 2 + 3a2 - a3 - a4 < 0 for x2^4
        assert_eq!(coefficient_degree(&f, &[0, 4, 0, 0]), -1);
        // 2 + 2a2 - a4 for x2^3 x3, and 2 - a2 - a3 for x1^3 x4
        assert_eq!(coefficient_degree(&f, &[0, 3, 1, 0]), 0);
        assert_eq!(coefficient_degree(&f, &[3, 0, 0, 1]), 1);
        let g = spec("F(0,0,1,3)");
        assert!(coefficient_degree(&g, &[0, 3, 1, 0]) < 0);
        assert!(!classify_one(&g, &opts()).status.is_accepted());
    }

    #[test]
    fn moduli_values_carry_paper_numbers() {
        let r = classify_one(&spec("F(0,0,0,1)"), &opts());
        assert_eq!(r.dim_moduli, Some(86));
        assert_eq!(r.paper_value, Some(118));
        assert!(r.moduli_disagrees());
        assert!(!classify_one(&spec("F(0,0,0,0)"), &opts()).moduli_disagrees());
    }

    #[test]
    fn table_rows_round_trip() {
        for row in TABLE1.iter().chain(TABLE2.iter()) {
            assert!(row.spec().is_normalized(), "{}", row.notation);
            assert_eq!(row.spec().paper_notation(), row.notation);
        }
    }

    #[test]
    fn status_json_shape() {
        let r = classify_one(&spec("F(0,0,0,9)"), &opts());
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["status"], "rejected");
        let r = classify_one(&spec("F(0,0,1,2)"), &opts());
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["status"], "accepted");
        assert_eq!(v["report"]["odp"], 3);
    }
}
