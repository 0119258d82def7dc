//! CSV and aligned-text rendering. Percentages use 2 decimals, vectors 4.

use std::fmt::Write;

use super::compare::Comparison;
use super::experiment::{format_vector, FixtureOutcome, RpcfReport};

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.2}")).unwrap_or_else(|| "-".to_string())
}

fn space_joined(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.4}")).collect();
    parts.join(" ")
}

/// One row per method × case, followed by one `average` row per method.
pub fn reports_csv(reports: &[RpcfReport]) -> String {
    let mut out = String::from("spec,direction,class,method,case,rpcf,distance,degenerate,result\n");
    for r in reports {
        let class = r.class.map(|c| c.to_string()).unwrap_or_default();
        for row in &r.rows {
            let distance = row.distance.map(|d| format!("{d:.4}")).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{:.2},{},{},{}",
                r.spec,
                r.direction,
                class,
                row.method,
                row.case,
                row.rpcf,
                distance,
                row.degenerate,
                space_joined(&row.result)
            );
        }
        for a in &r.averages {
            let _ = writeln!(
                out,
                "{},{},{},{},average,{:.2},,,",
                r.spec, r.direction, class, a.method, a.average
            );
        }
    }
    out
}

fn pad_table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(i, s)| format!("{s:<w$}", w = widths[i]))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn report_text(report: &RpcfReport) -> String {
    let class = report
        .class
        .map(|c| format!(" {c}"))
        .unwrap_or_default();
    let mut out = format!("== {} ({}{})\n", report.spec, report.direction, class);
    let mut rows = vec![vec![
        "case".to_string(),
        "method".to_string(),
        "rpcf".to_string(),
        "result".to_string(),
    ]];
    for r in &report.rows {
        let mut result = format_vector(&r.result);
        if r.degenerate {
            result.push_str(" (degenerate)");
        }
        rows.push(vec![
            r.case.to_string(),
            r.method.to_string(),
            format!("{:.2}", r.rpcf),
            result,
        ]);
    }
    for a in &report.averages {
        rows.push(vec![
            "average".to_string(),
            a.method.to_string(),
            format!("{:.2}", a.average),
            String::new(),
        ]);
    }
    out.push_str(&pad_table(&rows));
    out
}

pub fn comparison_csv(cmp: &Comparison) -> String {
    let mut out = String::from("class,method,family,fmp,fmt,combined\n");
    for r in &cmp.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.class,
            r.method,
            r.method.family(),
            opt(r.fmp),
            opt(r.fmt),
            opt(r.combined)
        );
    }
    out.push_str("\nfamily,fmp,fmt,average\n");
    for s in &cmp.summary {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            s.family,
            opt(s.fmp),
            opt(s.fmt),
            opt(s.average)
        );
    }
    out
}

pub fn comparison_text(cmp: &Comparison) -> String {
    let mut out = String::new();
    let classes: Vec<_> = {
        let mut c: Vec<_> = cmp.rows.iter().map(|r| r.class).collect();
        c.dedup();
        c
    };
    for class in classes {
        let _ = writeln!(out, "== individual methods, {class}");
        let mut rows = vec![vec![
            "no".to_string(),
            "method".to_string(),
            "fmp".to_string(),
            "fmt".to_string(),
            "combined".to_string(),
        ]];
        for (i, r) in cmp.rows.iter().filter(|r| r.class == class).enumerate() {
            rows.push(vec![
                (i + 1).to_string(),
                r.method.to_string(),
                opt(r.fmp),
                opt(r.fmt),
                opt(r.combined),
            ]);
        }
        out.push_str(&pad_table(&rows));
        out.push('\n');
    }
    out.push_str("== family summary\n");
    let mut rows = vec![vec![
        "family".to_string(),
        "fmp".to_string(),
        "fmt".to_string(),
        "average".to_string(),
    ]];
    for s in &cmp.summary {
        rows.push(vec![s.family.clone(), opt(s.fmp), opt(s.fmt), opt(s.average)]);
    }
    out.push_str(&pad_table(&rows));
    out
}

pub fn outcomes_text(outcomes: &[FixtureOutcome]) -> String {
    let mut rows = vec![vec![
        "status".to_string(),
        "spec".to_string(),
        "check".to_string(),
        "expected".to_string(),
        "actual".to_string(),
        "deviation".to_string(),
        "tolerance".to_string(),
    ]];
    for o in outcomes {
        let status = match (o.within_tolerance(), o.soft) {
            (true, _) => "ok",
            (false, true) => "soft",
            (false, false) => "FAIL",
        };
        rows.push(vec![
            status.to_string(),
            o.spec.clone(),
            o.label.clone(),
            o.expected.clone(),
            o.actual.clone(),
            format!("{:.4}", o.deviation),
            format!("{}", o.tolerance),
        ]);
    }
    pad_table(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rpcf::{compare_methods, fixtures, run_experiment};

    #[test]
    fn csv_is_deterministic_and_shaped() {
        let spec = fixtures::bundled_spec("large-fmp").unwrap();
        let a = reports_csv(&[run_experiment(&spec).unwrap()]);
        let b = reports_csv(&[run_experiment(&spec).unwrap()]);
        assert_eq!(a, b);
        let lines: Vec<&str> = a.lines().collect();
        // header + 4 cases + 1 average
        assert_eq!(lines.len(), 6);
        assert!(lines[2].starts_with("large-fmp,fmp,,lcm:p3,case2,97.28,"));
        assert!(lines[5].contains(",average,93.15,"));
        assert!(lines.iter().skip(1).all(|l| l.split(',').count() == 9));
    }

    #[test]
    fn text_tables_align() {
        let cmp = compare_methods(
            &fixtures::comparison_specs(),
            &crate::InferenceMethod::comparison_set(),
        )
        .unwrap();
        let text = comparison_text(&cmp);
        assert!(text.contains("== individual methods, class1"));
        assert!(text.contains("== family summary"));
        let csv = comparison_csv(&cmp);
        assert_eq!(csv.lines().filter(|l| l.starts_with("class1,")).count(), 16);
        assert_eq!(csv.lines().filter(|l| l.starts_with("class2,")).count(), 16);
    }
}
