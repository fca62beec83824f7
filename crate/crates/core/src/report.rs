//! Markdown, JSON and CSV renderings of search results and certificates.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::classify::{FamilyRecord, PaperRow, SearchResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Markdown,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "md" | "markdown" => Ok(Format::Markdown),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format {other:?} (expected markdown, json or csv)")),
        }
    }
}

/// One line of a rendered classification table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub index: usize,
    pub family: String,
    pub base_locus: String,
    pub odp: Option<i64>,
    pub description: String,
    pub dim_moduli: Option<i64>,
    pub printed_moduli: Option<i64>,
    pub moduli_flag: bool,
}

fn base_locus_text(rec: &FamilyRecord) -> String {
    if rec.base_locus.is_empty() {
        "∅".to_string()
    } else {
        rec.base_locus.iter().map(|s| format!("{} (dim {})", s.locus, s.dim)).collect::<Vec<_>>().join("; ")
    }
}

/// Table rows ordered by base-locus dimension, then ODP count.
pub fn table_rows(res: &SearchResult) -> Vec<TableRow> {
    let mut recs = res.table_rows();
    recs.sort_by_key(|r| (r.base_dim().unwrap_or(-1), r.odp().unwrap_or(0)));
    recs.into_iter()
        .enumerate()
        .map(|(i, rec)| TableRow {
            index: i + 1,
            family: rec.notation.clone(),
            base_locus: base_locus_text(rec),
            odp: rec.odp(),
            description: rec.description(),
            dim_moduli: rec.dim_moduli,
            printed_moduli: rec.paper_value,
            moduli_flag: rec.moduli_disagrees(),
        })
        .collect()
}

fn opt(v: Option<i64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn search_markdown(res: &SearchResult) -> String {
    let mut s = String::new();
    let w: Vec<String> = res.weights.iter().map(|b| b.to_string()).collect();
    let _ = writeln!(s, "## Weights ({}), twist bound {}\n", w.join(","), res.bound);
    let _ = writeln!(
        s,
        "{} candidates, {} accepted, {} inconclusive\n",
        res.candidates,
        res.accepted.len(),
        res.inconclusive.len()
    );
    let _ = writeln!(s, "| # | Family | Base locus | Singularities | dim M | printed | flag |");
    let _ = writeln!(s, "|---|---|---|---|---|---|---|");
    for r in table_rows(res) {
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {} | {} | {} |",
            r.index,
            r.family,
            r.base_locus,
            r.description,
            opt(r.dim_moduli),
            opt(r.printed_moduli),
            if r.moduli_flag { "differs" } else { "" }
        );
    }
    if !res.rejections.is_empty() {
        let _ = writeln!(s, "\nRejected:\n");
        for (reason, n) in &res.rejections {
            let _ = writeln!(s, "- {reason}: {n}");
        }
    }
    if !res.inconclusive.is_empty() {
        let _ = writeln!(s, "\nInconclusive:\n");
        for rec in &res.inconclusive {
            let _ = writeln!(s, "- {}", rec.notation);
        }
    }
    s
}

pub fn search_csv(res: &SearchResult) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in table_rows(res) {
        w.serialize(r).expect("csv row");
    }
    String::from_utf8(w.into_inner().expect("csv buffer")).expect("utf-8")
}

/// `{"config": ..., "result": ...}` with a trailing newline.
pub fn with_config<T: Serialize>(config: &serde_json::Value, result: &T) -> String {
    let v = serde_json::json!({ "config": config, "result": result });
    let mut s = serde_json::to_string_pretty(&v).expect("serializable report");
    s.push('\n');
    s
}

pub fn render_search(res: &SearchResult, format: Format, config: &serde_json::Value) -> String {
    match format {
        Format::Markdown => search_markdown(res),
        Format::Json => with_config(config, res),
        Format::Csv => search_csv(res),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TableComparison {
    pub matched: Vec<String>,
    /// Expected rows without a matching computed record.
    pub missing: Vec<String>,
    /// Computed table rows not among the expected ones.
    pub extra: Vec<String>,
}

impl TableComparison {
    pub fn exact(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

/// Compares the table rows of a search against expected rows (restricted to the search's weights).
pub fn compare_table(res: &SearchResult, expected: &[PaperRow]) -> TableComparison {
    let rows = res.table_rows();
    let expected: Vec<&PaperRow> = expected.iter().filter(|r| r.spec().weights() == res.weights.as_slice()).collect();
    let mut out = TableComparison::default();
    for e in &expected {
        if rows.iter().any(|r| e.matches(r)) {
            out.matched.push(e.notation.to_string());
        } else {
            out.missing.push(e.notation.to_string());
        }
    }
    for r in rows {
        if !expected.iter().any(|e| e.matches(r)) {
            out.extra.push(r.notation.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{run_search, ClassifyOptions, VerifyScope, TABLE1};

    fn quartic_search() -> SearchResult {
        let opts = ClassifyOptions { verify: VerifyScope::Off, ..Default::default() };
        run_search(&[1, 1, 1, 1], 4, &opts).unwrap()
    }

    #[test]
    fn format_names() {
        assert_eq!("md".parse::<Format>(), Ok(Format::Markdown));
        assert_eq!("csv".parse::<Format>(), Ok(Format::Csv));
        assert!("xml".parse::<Format>().is_err());
    }

    #[test]
    fn quartic_table_renders() {
        let res = quartic_search();
        let md = search_markdown(&res);
        assert!(md.contains("| 10 | F(0,0,1,2) |"));
        assert!(md.contains("3 ODP singularities along Bs|-K|"));
        let csv = search_csv(&res);
        assert_eq!(csv.lines().count(), 11);
        assert!(csv.starts_with("index,family,base_locus,odp,description,dim_moduli,printed_moduli,moduli_flag"));
        assert!(compare_table(&res, &TABLE1).exact());
    }

    #[test]
    fn json_embeds_config() {
        let res = quartic_search();
        let cfg = serde_json::json!({"command": "classify", "prime": 32003});
        let a = with_config(&cfg, &res);
        let b = with_config(&cfg, &quartic_search());
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["config"]["prime"], 32003);
        assert_eq!(v["result"]["accepted"].as_array().unwrap().len(), 10);
    }
}
