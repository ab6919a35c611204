//! Rendering: machine outputs stay exact (`num/den` everywhere), human
//! tables add fixed 6-decimal approximations. The CLI is a thin shell over
//! these functions, so library callers can reproduce its output bytes.

use std::fmt::Write as _;

use crate::curve::BetaCurve;
use crate::experiments::{ClaimReport, PrevalenceReport, VerifyDocument};
use crate::graph::{CycleMeasure, TransitionGraph};
use crate::maxmean::MaxMeanResult;
use crate::weight::{approx_decimal, format_rational};
use crate::Rational;

/// Comma-separated breakpoint table of a curve: one record per domain
/// endpoint and breakpoint. Exact rationals only.
pub fn curve_to_csv(curve: &BetaCurve<Rational>) -> String {
    let mut out = String::from("t,value,slope_left,slope_right\n");
    for (t, value, left, right) in curve.table() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            format_rational(&t),
            format_rational(&value),
            format_rational(&left),
            format_rational(&right)
        );
    }
    out
}

/// Renders a cycle as `v0 -> v1 -> ... -> v0`, with vertex labels when the
/// graph came from a symbolic lift.
pub fn render_cycle(
    cycle: &CycleMeasure,
    graph: &TransitionGraph<Rational>,
    labels: Option<&[String]>,
) -> String {
    let name = |v: usize| match labels {
        Some(l) => l[v].clone(),
        None => v.to_string(),
    };
    let mut vertices: Vec<String> = cycle.vertices(graph).into_iter().map(name).collect();
    vertices.push(vertices[0].clone());
    vertices.join(" -> ")
}

/// Human summary of a maximum-mean computation.
pub fn render_max_mean(
    result: &MaxMeanResult<Rational>,
    graph: &TransitionGraph<Rational>,
    labels: Option<&[String]>,
) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "beta = {} ({})",
        format_rational(&result.lambda),
        approx_decimal(&result.lambda)
    );
    let _ = writeln!(
        out,
        "witness cycle: {} (length {})",
        render_cycle(&result.witness_cycle, graph, labels),
        result.witness_cycle.len()
    );
    for (scc, lambda) in &result.per_scc_lambda {
        let _ = writeln!(
            out,
            "  component {}: max mean {} ({})",
            scc,
            format_rational(lambda),
            approx_decimal(lambda)
        );
    }
    out
}

fn render_claim(report: &ClaimReport, out: &mut String) {
    let status = if report.overall_pass { "PASS" } else { "FAIL" };
    let _ = writeln!(
        out,
        "[{status}] claim {} ({}) — system {}, base {}, direction {}",
        report.id, report.name, report.system, report.base, report.direction
    );
    let failures: Vec<_> = report.checks.iter().filter(|c| !c.pass).collect();
    let _ = writeln!(out, "       checks: {} total, {} failed", report.checks.len(), failures.len());
    for check in failures.iter().take(5) {
        let _ = writeln!(out, "       FAILED {}: {}", check.name, check.witness);
    }
    if failures.len() > 5 {
        let _ = writeln!(out, "       ... and {} more failures", failures.len() - 5);
    }
}

/// Human table for a verification run.
pub fn render_verify(doc: &VerifyDocument) -> String {
    let mut out = String::new();
    for report in &doc.reports {
        render_claim(report, &mut out);
    }
    let status = if doc.overall_pass { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "overall: {status}");
    out
}

/// Human table for a line-sampling run.
pub fn render_prevalence(report: &PrevalenceReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "line sampling: system {}, base {}, {} samples on [0,1] grid /{}, seed {}",
        report.system, report.base, report.samples, report.grid_denominator, report.seed
    );
    for line in &report.lines {
        let _ = writeln!(
            out,
            "  direction {}: breakpoints {{{}}}, {} hit(s), differentiable {}, unique {}",
            line.direction,
            line.breakpoints.join(", "),
            line.breakpoint_hits,
            line.differentiable_fraction.as_deref().unwrap_or("-"),
            line.unique_fraction.as_deref().unwrap_or("-"),
        );
    }
    let _ = writeln!(
        out,
        "  intersection over directions: unique fraction {}",
        report.intersection_unique_fraction.as_deref().unwrap_or("-")
    );
    render_claim(&report.consistency, &mut out);
    let status = if report.overall_pass { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "overall: {status}");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::compute_curve;
    use crate::graph::TransitionGraph;
    use crate::maxmean::max_cycle_mean_karp;

    fn qi(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn worked() -> (TransitionGraph<Rational>, TransitionGraph<Rational>) {
        let f = TransitionGraph::new(
            2,
            vec![(0, 0, qi(1)), (0, 1, qi(0)), (1, 0, qi(0)), (1, 1, qi(2))],
        )
        .unwrap();
        let g = TransitionGraph::new(
            2,
            vec![(0, 0, qi(1)), (0, 1, qi(0)), (1, 0, qi(0)), (1, 1, qi(0))],
        )
        .unwrap();
        (f, g)
    }

    #[test]
    fn csv_has_header_and_exact_rows() {
        let (f, g) = worked();
        let curve = compute_curve(&f, &g, &qi(0), &qi(3)).unwrap();
        let csv = curve_to_csv(&curve);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "t,value,slope_left,slope_right");
        assert_eq!(lines[1], "0/1,2/1,0/1,0/1");
        assert_eq!(lines[2], "1/1,2/1,0/1,1/1");
        assert_eq!(lines[3], "3/1,4/1,1/1,1/1");
    }

    #[test]
    fn max_mean_rendering_shows_exact_and_decimal() {
        let (f, _) = worked();
        let result = max_cycle_mean_karp(&f).unwrap();
        let text = render_max_mean(&result, &f, None);
        assert!(text.contains("beta = 2/1 (2.000000)"));
        assert!(text.contains("witness cycle: 1 -> 1"));
        let labeled = render_max_mean(&result, &f, Some(&["a".into(), "b".into()]));
        assert!(labeled.contains("witness cycle: b -> b"));
    }
}
