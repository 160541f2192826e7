//! Output rendering shared by the command-line front end: exact or
//! float cells, JSON values, and the per-command row schemas. All
//! rendering is deterministic (no locale, no hash ordering).

use serde_json::{json, Value};

use crate::binhat::BinHatParams;
use crate::hyp::HypReport;
use crate::narayana::NarayanaRow;
use crate::pb::PBReport;
use crate::rat::{decimal_string, to_f64, Rat};
use crate::stein::SqrtBound;

/// How rational quantities are rendered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    /// Fractions in CSV/table cells; decimal string plus numerator and
    /// denominator in JSON.
    Exact,
    /// Nearest-double rendering everywhere.
    Float64,
}

impl Precision {
    pub fn as_str(&self) -> &'static str {
        match self {
            Precision::Exact => "exact",
            Precision::Float64 => "float64",
        }
    }
}

/// Decimal digits carried by the JSON decimal rendering (truncated, not
/// rounded; trailing zeros trimmed when the expansion terminates).
pub const DECIMAL_DIGITS: usize = 24;

/// Shortest round-trip rendering of a float (always carries a decimal
/// point or exponent, so integers remain visibly floating point).
pub fn f64_cell(x: f64) -> String {
    format!("{x:?}")
}

pub fn bool_cell(b: bool) -> String {
    if b { "true" } else { "false" }.to_string()
}

/// CSV/table cell for a rational: reduced fraction in exact mode,
/// nearest double otherwise.
pub fn rat_cell(r: &Rat, precision: Precision) -> String {
    match precision {
        Precision::Exact => r.to_string(),
        Precision::Float64 => f64_cell(to_f64(r)),
    }
}

/// JSON value for a rational: `{"decimal", "num", "den"}` in exact mode,
/// a plain number otherwise.
pub fn rat_json(r: &Rat, precision: Precision) -> Value {
    match precision {
        Precision::Exact => json!({
            "decimal": decimal_string(r, DECIMAL_DIGITS),
            "num": r.numer().to_string(),
            "den": r.denom().to_string(),
        }),
        Precision::Float64 => json!(to_f64(r)),
    }
}

/// CSV/table cell for a square-root-form bound: its float value (the
/// exact components are available in the JSON rendering).
pub fn bound_cell(b: &SqrtBound) -> String {
    f64_cell(b.value())
}

pub fn bound_json(b: &SqrtBound, precision: Precision) -> Value {
    json!({
        "radicand": rat_json(&b.radicand, precision),
        "tail": rat_json(&b.tail, precision),
        "value": b.value(),
    })
}

/// The metadata line embedded at the top of CSV and table output.
pub fn meta_line(command: &str, version: &str, precision: Precision, seed: u64, grid: &str) -> String {
    format!(
        "# steincert v{version} command={command} precision={} seed={seed} grid={grid}",
        precision.as_str()
    )
}

/// The metadata object embedded in JSON output.
pub fn meta_json(command: &str, version: &str, precision: Precision, seed: u64, grid: &str) -> Value {
    json!({
        "tool": "steincert",
        "version": version,
        "command": command,
        "precision": precision.as_str(),
        "seed": seed,
        "grid": grid,
    })
}

pub fn narayana_csv_header() -> Vec<&'static str> {
    vec![
        "n",
        "tv",
        "bound_12_over_n",
        "intermediate_bound",
        "cap_holds",
        "kolmogorov",
        "kolmogorov_bound",
        "local_limit_stat",
        "moments_ok",
        "reversibility_ok",
        "lambda_ok",
        "status",
    ]
}

pub fn narayana_csv_record(row: &NarayanaRow, precision: Precision) -> Vec<String> {
    vec![
        row.n.to_string(),
        rat_cell(&row.tv, precision),
        rat_cell(&row.cap, precision),
        bound_cell(&row.bound),
        bool_cell(row.cap_holds),
        f64_cell(row.kolmogorov),
        f64_cell(row.kolmogorov_cap),
        f64_cell(row.local_limit_stat),
        bool_cell(row.moments_ok),
        bool_cell(row.reversibility_ok),
        bool_cell(row.lambda_ok),
        row.status.as_str().to_string(),
    ]
}

pub fn narayana_json(row: &NarayanaRow, precision: Precision) -> Value {
    json!({
        "n": row.n,
        "tv": rat_json(&row.tv, precision),
        "bound_12_over_n": rat_json(&row.cap, precision),
        "intermediate_bound": bound_json(&row.bound, precision),
        "cap_holds": row.cap_holds,
        "kolmogorov": row.kolmogorov,
        "kolmogorov_bound": row.kolmogorov_cap,
        "local_limit_stat": row.local_limit_stat,
        "moments_ok": row.moments_ok,
        "reversibility_ok": row.reversibility_ok,
        "lambda_ok": row.lambda_ok,
        "status": row.status.as_str(),
    })
}

pub fn pb_csv_header() -> Vec<&'static str> {
    vec![
        "index",
        "trials",
        "mu",
        "sigma2",
        "var_s",
        "tv",
        "bound",
        "bounds_match",
        "status",
    ]
}

pub fn pb_csv_record(index: usize, r: &PBReport, precision: Precision) -> Vec<String> {
    vec![
        index.to_string(),
        r.n.to_string(),
        rat_cell(&r.mu, precision),
        rat_cell(&r.report.sigma2, precision),
        rat_cell(&r.report.var_s, precision),
        r.report
            .tv
            .as_ref()
            .map(|tv| rat_cell(tv, precision))
            .unwrap_or_default(),
        bound_cell(&r.report.bound),
        bool_cell(r.bounds_match),
        r.report.status.as_str().to_string(),
    ]
}

pub fn pb_json(index: usize, r: &PBReport, precision: Precision) -> Value {
    json!({
        "index": index,
        "trials": r.n,
        "mu": rat_json(&r.mu, precision),
        "sigma2": rat_json(&r.report.sigma2, precision),
        "var_s": rat_json(&r.report.var_s, precision),
        "tv": r.report.tv.as_ref().map(|tv| rat_json(tv, precision)),
        "bound": bound_json(&r.report.bound, precision),
        "bounds_match": r.bounds_match,
        "status": r.report.status.as_str(),
    })
}

pub fn hyp_csv_header() -> Vec<&'static str> {
    vec![
        "N",
        "n",
        "m",
        "lambda",
        "sigma2",
        "var_s",
        "tv",
        "pair_bound",
        "display_bound",
        "pair_le_display",
        "status",
        "display_status",
    ]
}

pub fn hyp_csv_record(r: &HypReport, precision: Precision) -> Vec<String> {
    vec![
        r.big_n.to_string(),
        r.n.to_string(),
        r.m.to_string(),
        r.report
            .lambda
            .as_ref()
            .map(|l| rat_cell(l, precision))
            .unwrap_or_default(),
        rat_cell(&r.report.sigma2, precision),
        rat_cell(&r.report.var_s, precision),
        r.report
            .tv
            .as_ref()
            .map(|tv| rat_cell(tv, precision))
            .unwrap_or_default(),
        bound_cell(&r.report.bound),
        bound_cell(&r.bound_display),
        bool_cell(r.pair_le_display),
        r.report.status.as_str().to_string(),
        r.display_status.as_str().to_string(),
    ]
}

pub fn hyp_json(r: &HypReport, precision: Precision) -> Value {
    json!({
        "N": r.big_n,
        "n": r.n,
        "m": r.m,
        "lambda": r.report.lambda.as_ref().map(|l| rat_json(l, precision)),
        "sigma2": rat_json(&r.report.sigma2, precision),
        "var_s": rat_json(&r.report.var_s, precision),
        "tv": r.report.tv.as_ref().map(|tv| rat_json(tv, precision)),
        "pair_bound": bound_json(&r.report.bound, precision),
        "display_bound": bound_json(&r.bound_display, precision),
        "pair_le_display": r.pair_le_display,
        "status": r.report.status.as_str(),
        "display_status": r.display_status.as_str(),
    })
}

/// Result row of the operator-characterization command.
#[derive(Debug, Clone)]
pub struct SteinCheckRow {
    pub params: BinHatParams,
    /// Maximum absolute expectation of the operator over the test family.
    pub residual: Rat,
    /// Number of test functions evaluated.
    pub fn_count: usize,
    /// Whether the law was deliberately perturbed away from the target.
    pub perturbed: bool,
    /// Expected outcome seen: zero residual unperturbed, positive
    /// residual perturbed.
    pub ok: bool,
}

pub fn stein_csv_header() -> Vec<&'static str> {
    vec![
        "mu",
        "sigma2",
        "n",
        "t",
        "shift",
        "residual",
        "fn_count",
        "perturbed",
        "ok",
    ]
}

pub fn stein_csv_record(row: &SteinCheckRow, precision: Precision) -> Vec<String> {
    vec![
        rat_cell(&row.params.mu, precision),
        rat_cell(&row.params.sigma2, precision),
        row.params.n.to_string(),
        rat_cell(&row.params.t, precision),
        row.params.shift.to_string(),
        rat_cell(&row.residual, precision),
        row.fn_count.to_string(),
        bool_cell(row.perturbed),
        bool_cell(row.ok),
    ]
}

pub fn stein_json(row: &SteinCheckRow, precision: Precision) -> Value {
    json!({
        "mu": rat_json(&row.params.mu, precision),
        "sigma2": rat_json(&row.params.sigma2, precision),
        "n": row.params.n,
        "t": rat_json(&row.params.t, precision),
        "shift": row.params.shift,
        "residual": rat_json(&row.residual, precision),
        "fn_count": row.fn_count,
        "perturbed": row.perturbed,
        "ok": row.ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_i};

    #[test]
    fn cells_render_deterministically() {
        assert_eq!(rat_cell(&rat(1, 10), Precision::Exact), "1/10");
        assert_eq!(rat_cell(&rat(1, 10), Precision::Float64), "0.1");
        assert_eq!(rat_cell(&rat_i(4), Precision::Exact), "4");
        assert_eq!(f64_cell(4.0), "4.0");
        assert_eq!(f64_cell(0.056), "0.056");
        assert_eq!(bool_cell(true), "true");
    }

    #[test]
    fn rat_json_modes() {
        let v = rat_json(&rat(1, 10), Precision::Exact);
        assert_eq!(v["decimal"], "0.1");
        assert_eq!(v["num"], "1");
        assert_eq!(v["den"], "10");
        let f = rat_json(&rat(1, 10), Precision::Float64);
        assert_eq!(f, json!(0.1));
    }

    #[test]
    fn bound_json_contains_components() {
        let b = SqrtBound {
            radicand: rat(1, 24),
            tail: rat(7, 2),
        };
        let v = bound_json(&b, Precision::Exact);
        assert_eq!(v["radicand"]["num"], "1");
        assert_eq!(v["tail"]["decimal"], "3.5");
        let val = v["value"].as_f64().unwrap();
        assert!((val - 3.7041241452319316).abs() < 1e-9);
    }

    #[test]
    fn meta_line_format() {
        let line = meta_line("narayana-verify", "0.1.0", Precision::Exact, 7, "2:50");
        assert_eq!(
            line,
            "# steincert v0.1.0 command=narayana-verify precision=exact seed=7 grid=2:50"
        );
    }

    #[test]
    fn row_schemas_are_consistent() {
        let row = crate::narayana::full_row(3).unwrap();
        let rec = narayana_csv_record(&row, Precision::Exact);
        assert_eq!(rec.len(), narayana_csv_header().len());
        assert_eq!(rec[0], "3");
        assert_eq!(rec[1], "1/10");
        assert_eq!(rec[2], "4");
        let j = narayana_json(&row, Precision::Exact);
        assert_eq!(j["tv"]["decimal"], "0.1");
        assert_eq!(j["status"], "holds");

        let pb = crate::pb::certify(&[rat(1, 2), rat(1, 2)]).unwrap();
        let rec = pb_csv_record(0, &pb, Precision::Float64);
        assert_eq!(rec.len(), pb_csv_header().len());
        assert_eq!(rec[5], "0.0"); // tv
        assert_eq!(rec[6], "2.8"); // bound value

        let hy = crate::hyp::certify(4, 2, 2).unwrap();
        let rec = hyp_csv_record(&hy, Precision::Exact);
        assert_eq!(rec.len(), hyp_csv_header().len());
        assert_eq!(rec[3], "2/3");
        assert_eq!(rec[6], "1/6");
        let j = hyp_json(&hy, Precision::Exact);
        assert_eq!(j["pair_le_display"], true);
    }
}
