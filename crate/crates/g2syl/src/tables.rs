//! Rendering of class-function tables as Markdown, CSV or JSON.
//!
//! Entries are exact elements of `Q(ζ_p)` written as polynomials in
//! `z = exp(2πi/p)`; a float approximation can be appended.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::chartable::{character_table, check_against_induction, u_classes, CharacterTable, ChartableError, IrrId};
use crate::cyclo::Cyclo;
use crate::matgroup::{G2Syl, GroupError};
use crate::supertheory::{compute_supercharacter_table, superclasses, SupercharacterTable};

#[derive(Debug, thiserror::Error)]
pub enum EmitError {
    #[error(transparent)]
    Chartable(#[from] ChartableError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("computed values disagree with the closed forms: {0}")]
    Mismatch(String),
}

/// The character table of `U`, after checking every closed-form row
/// against the corresponding induced character unless `skip_verify`.
pub fn emit_character_table(
    group: &G2Syl<'_>,
    budget: u64,
    format: Format,
    approx: bool,
    skip_verify: bool,
) -> Result<String, EmitError> {
    let field = group.field();
    let classes = u_classes(group, budget)?;
    let table = character_table(field, &classes, &IrrId::all(field.q()))?;
    if !skip_verify {
        check_against_induction(group, &classes, &table).map_err(EmitError::Mismatch)?;
    }
    Ok(TableDoc::from_character_table(&table).render(format, approx))
}

/// The supercharacter table, computed from the supermodules at every group
/// element; any disagreement with the closed forms aborts.
pub fn emit_supercharacter_table(
    group: &G2Syl<'_>,
    budget: u64,
    format: Format,
    approx: bool,
) -> Result<String, EmitError> {
    let supers = superclasses(group, budget)?;
    let (table, report) = compute_supercharacter_table(group, &supers, budget)?;
    if let Some(c) = report.failures().next() {
        return Err(EmitError::Mismatch(format!("{}: {}", c.name, c.witness.clone().unwrap_or_default())));
    }
    Ok(TableDoc::from_supercharacter_table(&table).render(format, approx))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Md,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "md" | "markdown" => Ok(Format::Md),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format {s:?}; expected md, csv or json")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Md => "md",
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Column {
    pub label: String,
    pub size: u64,
}

/// A table of class functions: one row per character, one column per class.
#[derive(Debug, Clone)]
pub struct TableDoc {
    pub title: String,
    pub q: u32,
    pub columns: Vec<Column>,
    pub rows: Vec<(String, Vec<Cyclo>)>,
}

impl TableDoc {
    pub fn from_character_table(t: &CharacterTable) -> Self {
        TableDoc {
            title: format!("Character table of the Sylow p-subgroup of G2({})", t.q),
            q: t.q,
            columns: columns(&t.layout.labels, &t.layout.sizes),
            rows: t.chars.iter().zip(&t.values).map(|(id, v)| (id.to_string(), v.clone())).collect(),
        }
    }

    pub fn from_supercharacter_table(t: &SupercharacterTable) -> Self {
        TableDoc {
            title: format!("Supercharacter table of the Sylow p-subgroup of G2({})", t.q),
            q: t.q,
            columns: columns(&t.layout.labels, &t.layout.sizes),
            rows: t.supermodules.iter().zip(&t.values).map(|(m, v)| (m.to_string(), v.clone())).collect(),
        }
    }

    pub fn render(&self, format: Format, approx: bool) -> String {
        match format {
            Format::Md => self.markdown(approx),
            Format::Csv => self.csv(approx),
            Format::Json => self.json(),
        }
    }

    fn markdown(&self, approx: bool) -> String {
        let mut s = format!("# {}\n\n", self.title);
        s.push_str("| character |");
        for c in &self.columns {
            s.push_str(&format!(" {} |", c.label));
        }
        s.push_str("\n|---|");
        s.push_str(&"---|".repeat(self.columns.len()));
        s.push_str("\n| class size |");
        for c in &self.columns {
            s.push_str(&format!(" {} |", c.size));
        }
        s.push('\n');
        for (label, values) in &self.rows {
            s.push_str(&format!("| {label} |"));
            for v in values {
                s.push_str(&format!(" {} |", cell(v, approx)));
            }
            s.push('\n');
        }
        s
    }

    fn csv(&self, approx: bool) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let header = std::iter::once("character".to_string()).chain(self.columns.iter().map(|c| c.label.clone()));
        w.write_record(header).expect("in-memory write");
        let sizes = std::iter::once("class size".to_string()).chain(self.columns.iter().map(|c| c.size.to_string()));
        w.write_record(sizes).expect("in-memory write");
        for (label, values) in &self.rows {
            let rec = std::iter::once(label.clone()).chain(values.iter().map(|v| cell(v, approx)));
            w.write_record(rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    fn json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|(label, values)| {
                let mut m = Map::new();
                for (c, v) in self.columns.iter().zip(values) {
                    m.insert(c.label.clone(), serde_json::to_value(v).expect("cyclo serializes"));
                }
                serde_json::json!({ "character": label, "values": Value::Object(m) })
            })
            .collect();
        let doc = serde_json::json!({
            "title": self.title,
            "q": self.q,
            "columns": self.columns,
            "rows": rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("json");
        s.push('\n');
        s
    }
}

fn columns(labels: &[String], sizes: &[u64]) -> Vec<Column> {
    labels.iter().zip(sizes).map(|(l, &s)| Column { label: l.clone(), size: s }).collect()
}

fn cell(v: &Cyclo, approx: bool) -> String {
    if !approx {
        return v.to_string();
    }
    let (re, im) = v.to_complex();
    let (re, im) = (clean(re), clean(im));
    format!("{v} ~ {re:.4}{}{:.4}i", if im < 0.0 { "-" } else { "+" }, im.abs())
}

fn clean(x: f64) -> f64 {
    if x.abs() < 5e-10 {
        0.0
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc() -> TableDoc {
        TableDoc {
            title: "demo".into(),
            q: 5,
            columns: vec![Column { label: "I".into(), size: 1 }, Column { label: "y6(1)".into(), size: 1 }],
            rows: vec![
                ("chi(A=0,B=1)".into(), vec![Cyclo::one(5), Cyclo::zeta_pow(5, 2)]),
                ("psi".into(), vec![Cyclo::from_int(5, 5), Cyclo::zero(5)]),
            ],
        }
    }

    #[test]
    fn formats_parse() {
        assert_eq!("md".parse::<Format>().unwrap(), Format::Md);
        assert_eq!("json".parse::<Format>().unwrap(), Format::Json);
        assert!("xml".parse::<Format>().is_err());
    }

    #[test]
    fn markdown_layout() {
        let s = doc().render(Format::Md, false);
        assert!(s.contains("| character | I | y6(1) |"));
        assert!(s.contains("| class size | 1 | 1 |"));
        assert!(s.contains("| chi(A=0,B=1) | 1 | z^2 |"));
    }

    #[test]
    fn csv_quotes_labels_with_commas() {
        let s = doc().render(Format::Csv, false);
        assert!(s.contains("\"chi(A=0,B=1)\",1,z^2"));
    }

    #[test]
    fn json_rows_keep_column_order() {
        let s = doc().render(Format::Json, false);
        let v: Value = serde_json::from_str(&s).unwrap();
        let vals = v["rows"][0]["values"].as_object().unwrap();
        assert_eq!(vals.keys().cloned().collect::<Vec<_>>(), vec!["I", "y6(1)"]);
        assert_eq!(v["rows"][1]["character"], "psi");
    }

    #[test]
    fn approximations_are_appended() {
        let s = doc().render(Format::Md, true);
        assert!(s.contains("5 ~ 5.0000+0.0000i"));
    }
}
