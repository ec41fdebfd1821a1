//! Plain-text rendering: right-aligned coefficient tables with partition
//! labels and single classes as signed sum expressions.

use csm_core::cells::basis_labels;
use csm_core::ring::{GradedClass, RingModel};
use num_bigint::BigInt;
use num_traits::Signed;

pub fn partition_label(parts: &[u32]) -> String {
    if parts.is_empty() {
        "()".to_string()
    } else {
        let inner: Vec<String> = parts.iter().map(u32::to_string).collect();
        format!("({})", inner.join(","))
    }
}

pub fn model_labels(model: &RingModel) -> Vec<String> {
    basis_labels(model).iter().map(|p| partition_label(p)).collect()
}

/// A class as a signed sum over basis labels, highest dimension first;
/// signs are always explicit, the zero class prints as `0`.
pub fn class_expression(c: &GradedClass) -> String {
    let labels = model_labels(c.model());
    let mut terms: Vec<(usize, BigInt)> = c.terms().map(|(p, v)| (p, v.clone())).collect();
    if terms.is_empty() {
        return "0".to_string();
    }
    terms.sort_by(|a, b| b.0.cmp(&a.0));
    let parts: Vec<String> = terms
        .iter()
        .map(|(p, v)| {
            let sign = if v.is_negative() { '-' } else { '+' };
            format!("{sign}{} {}", v.abs(), labels[*p])
        })
        .collect();
    parts.join("  ")
}

/// Right-aligned table: one column of row labels under `corner`, then one
/// column per entry of `columns`.
pub fn aligned_table(
    title: &str,
    corner: &str,
    columns: &[String],
    rows: &[(String, Vec<String>)],
) -> String {
    let mut widths: Vec<usize> = Vec::with_capacity(columns.len() + 1);
    widths.push(corner.len().max(rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0)));
    for (j, col) in columns.iter().enumerate() {
        let w = col.len().max(rows.iter().map(|(_, r)| r[j].len()).max().unwrap_or(0));
        widths.push(w);
    }
    let mut out = String::new();
    out.push_str(title);
    out.push('\n');
    let mut line = |cells: Vec<&str>| {
        let formatted: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}", w = *w))
            .collect();
        out.push_str(formatted.join("  ").trim_end());
        out.push('\n');
    };
    let mut header = vec![corner];
    header.extend(columns.iter().map(String::as_str));
    line(header);
    for (label, cells) in rows {
        let mut row = vec![label.as_str()];
        row.extend(cells.iter().map(String::as_str));
        line(row);
    }
    out
}

/// Table of classes: rows labeled by cell, columns by the model basis.
pub fn class_table(title: &str, model: &RingModel, rows: &[GradedClass]) -> String {
    let labels = model_labels(model);
    let body: Vec<(String, Vec<String>)> = rows
        .iter()
        .enumerate()
        .map(|(u, c)| {
            let dense: Vec<String> = c.to_dense().iter().map(BigInt::to_string).collect();
            (labels[u].clone(), dense)
        })
        .collect();
    aligned_table(title, "cell", &labels, &body)
}
