//! Reading and writing sets and reports.
//!
//! CSV layout: a header `id,<param>,…`, one row per alternative whose cells
//! are `"m,n"` (quoted) or `(m,n)`, and a row labelled `__f__` holding the
//! parameter importances. JSON layout: `universe`, `parameters`
//! (`{name, importance: {m, n}}`) and `cells` (`{alt, param, m, n}`);
//! reports add `config`, `weights`, `measures` and `ranking`.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decision::{DecisionConfig, DecisionReport, RankingLine};
use crate::pfn::{parse_pair, Pfn};
use crate::soft_set::{AlternativeId, CellEntry, PfParameter, PhiSoftSet, SetError, IMPORTANCE_ROW};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("at `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error(transparent)]
    Set(#[from] SetError),
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> IoError {
    IoError::Parse { line, column, message: message.into() }
}

// ---------------------------------------------------------------- CSV

struct Field<'a> {
    text: &'a str,
    column: usize,
    quoted: bool,
}

/// Splits one line on commas outside quotes and parentheses.
fn split_fields(line: &str, lineno: usize) -> Result<Vec<Field<'_>>, IoError> {
    let mut fields = Vec::new();
    let mut start = 0;
    let mut depth = 0usize;
    let mut in_quotes = false;
    let col_of = |byte: usize| line[..byte].chars().count() + 1;

    for (i, c) in line.char_indices() {
        match c {
            '"' => in_quotes = !in_quotes,
            '(' if !in_quotes => depth += 1,
            ')' if !in_quotes => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| parse_err(lineno, col_of(i), "unbalanced `)`"))?;
            }
            ',' if !in_quotes && depth == 0 => {
                fields.push(make_field(line, start, i, col_of(start), lineno)?);
                start = i + 1;
            }
            _ => {}
        }
    }
    if in_quotes {
        return Err(parse_err(lineno, col_of(start), "unterminated quote"));
    }
    if depth > 0 {
        return Err(parse_err(lineno, col_of(start), "unbalanced `(`"));
    }
    fields.push(make_field(line, start, line.len(), col_of(start), lineno)?);
    Ok(fields)
}

fn make_field(line: &str, from: usize, to: usize, column: usize, lineno: usize) -> Result<Field<'_>, IoError> {
    let raw = line[from..to].trim();
    match raw.strip_prefix('"') {
        Some(rest) => {
            let inner = rest
                .strip_suffix('"')
                .ok_or_else(|| parse_err(lineno, column, "text after closing quote"))?;
            Ok(Field { text: inner, column, quoted: true })
        }
        None => Ok(Field { text: raw, column, quoted: false }),
    }
}

/// Parses the CSV table format into a validated set.
pub fn parse_csv(bytes: &[u8]) -> Result<PhiSoftSet, IoError> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let before = &bytes[..e.valid_up_to()];
        let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
        parse_err(line, 1, "input is not valid UTF-8")
    })?;

    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, 1, "empty input"))?;
    let header = split_fields(header, hline)?;
    if header[0].text != "id" {
        return Err(parse_err(hline, header[0].column, "header must start with `id`"));
    }
    let names: Vec<&str> = header[1..].iter().map(|f| f.text).collect();

    let mut universe = Vec::new();
    let mut importances: Option<Vec<(f64, f64)>> = None;
    let mut cells = Vec::new();
    let mut last_line = hline;

    for (lineno, line) in lines {
        last_line = lineno;
        let fields = split_fields(line, lineno)?;
        if fields.len() != header.len() {
            return Err(parse_err(
                lineno,
                1,
                format!("expected {} fields, found {}", header.len(), fields.len()),
            ));
        }
        let id = fields[0].text;
        let values = fields[1..]
            .iter()
            .map(|f| read_cell(f, lineno))
            .collect::<Result<Vec<_>, _>>()?;

        if id == IMPORTANCE_ROW {
            if importances.is_some() {
                return Err(parse_err(lineno, 1, "importance row `__f__` given twice"));
            }
            importances = Some(values);
            continue;
        }
        let alt = AlternativeId::new(id).map_err(|e| parse_err(lineno, fields[0].column, e.to_string()))?;
        for (name, (m, n)) in names.iter().zip(values) {
            cells.push(CellEntry { alt: id.to_string(), param: name.to_string(), m, n });
        }
        universe.push(alt);
    }

    if universe.is_empty() {
        return Err(parse_err(last_line + 1, 1, "no alternatives"));
    }
    let importances =
        importances.ok_or_else(|| parse_err(last_line + 1, 1, "missing importance row `__f__`"))?;

    let parameters = names
        .iter()
        .zip(importances)
        .map(|(name, (m, n))| {
            let importance = Pfn::new(m, n).map_err(|source| SetError::InvalidPfn {
                alt: IMPORTANCE_ROW.to_string(),
                param: name.to_string(),
                source,
            })?;
            PfParameter::new(*name, importance)
        })
        .collect::<Result<Vec<_>, SetError>>()?;

    Ok(PhiSoftSet::build(universe, parameters, cells)?)
}

fn read_cell(f: &Field<'_>, lineno: usize) -> Result<(f64, f64), IoError> {
    let ok_shape = f.quoted || (f.text.starts_with('(') && f.text.ends_with(')'));
    if !ok_shape {
        return Err(parse_err(lineno, f.column, format!("cell `{}` must be `\"m,n\"` or `(m,n)`", f.text)));
    }
    parse_pair(f.text).map_err(|e| parse_err(lineno, f.column, e.to_string()))
}

/// Writes the CSV table format. Numbers use shortest round-trip form.
pub fn emit_csv(set: &PhiSoftSet) -> String {
    let mut out = String::from("id");
    for p in set.parameters() {
        write!(out, ",{}", p.name()).unwrap();
    }
    out.push('\n');
    let mut row = |id: &str, values: &mut dyn Iterator<Item = Pfn>| {
        out.push_str(id);
        for v in values {
            write!(out, ",\"{},{}\"", v.m(), v.n()).unwrap();
        }
        out.push('\n');
    };
    for (i, alt) in set.universe().iter().enumerate() {
        row(alt.as_str(), &mut set.row_at(i).iter().copied());
    }
    row(IMPORTANCE_ROW, &mut set.parameters().iter().map(|p| p.importance()));
    out
}

// ---------------------------------------------------------------- JSON

#[derive(Serialize, Deserialize)]
struct ParameterDoc {
    name: String,
    importance: Pfn,
}

#[derive(Serialize, Deserialize)]
struct SetDoc {
    universe: Vec<AlternativeId>,
    parameters: Vec<ParameterDoc>,
    cells: Vec<CellEntry>,
}

impl SetDoc {
    fn from_set(set: &PhiSoftSet) -> Self {
        SetDoc {
            universe: set.universe().to_vec(),
            parameters: set
                .parameters()
                .iter()
                .map(|p| ParameterDoc { name: p.name().to_string(), importance: p.importance() })
                .collect(),
            cells: set
                .entries()
                .map(|(a, p, v)| CellEntry {
                    alt: a.to_string(),
                    param: p.name().to_string(),
                    m: v.m(),
                    n: v.n(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct MeasuresDoc<'a> {
    alt: &'a str,
    m: f64,
    n: f64,
    es: f64,
    sf: f64,
    af: f64,
    rank: usize,
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    #[serde(flatten)]
    combined: SetDoc,
    config: DecisionConfig,
    weights: &'a [f64],
    measures: Vec<MeasuresDoc<'a>>,
    ranking: Vec<&'a str>,
}

/// Parses a set document. Report documents are accepted too; their
/// combined set is returned.
pub fn parse_json(bytes: &[u8]) -> Result<PhiSoftSet, IoError> {
    let mut de = serde_json::Deserializer::from_slice(bytes);
    let doc: SetDoc = serde_path_to_error::deserialize(&mut de).map_err(|e| IoError::Schema {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })?;
    let parameters = doc
        .parameters
        .into_iter()
        .map(|p| PfParameter::new(p.name, p.importance))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PhiSoftSet::build(doc.universe, parameters, doc.cells)?)
}

fn to_pretty<T: Serialize>(doc: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(doc).expect("documents serialize");
    out.push(b'\n');
    out
}

pub fn emit_json(set: &PhiSoftSet) -> Vec<u8> {
    to_pretty(&SetDoc::from_set(set))
}

pub fn emit_report_json(report: &DecisionReport) -> Vec<u8> {
    let doc = ReportDoc {
        combined: SetDoc::from_set(&report.combined),
        config: report.config,
        weights: report.weights.as_slice(),
        measures: report
            .rows
            .iter()
            .map(|r| MeasuresDoc {
                alt: r.alt.as_str(),
                m: r.apfdv.m(),
                n: r.apfdv.n(),
                es: r.es,
                sf: r.sf,
                af: r.af,
                rank: r.rank,
            })
            .collect(),
        ranking: report.ranking.iter().map(|a| a.as_str()).collect(),
    };
    to_pretty(&doc)
}

// ---------------------------------------------------------------- files

/// JSON when the first non-blank byte is `{`, CSV otherwise.
pub fn parse_auto(bytes: &[u8]) -> Result<PhiSoftSet, IoError> {
    match bytes.iter().find(|b| !b.is_ascii_whitespace()) {
        Some(b'{') => parse_json(bytes),
        _ => parse_csv(bytes),
    }
}

pub fn read_set(path: &Path) -> Result<PhiSoftSet, IoError> {
    let bytes = std::fs::read(path).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })?;
    parse_auto(&bytes)
}

/// JSON for a `.json` extension, CSV otherwise.
pub fn emit_for_path(set: &PhiSoftSet, path: &Path) -> Vec<u8> {
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("json") => emit_json(set),
        _ => emit_csv(set).into_bytes(),
    }
}

// ---------------------------------------------------------------- text

/// Fixed-width measures table followed by the ranking line.
pub fn render_report(report: &DecisionReport) -> String {
    let w = report
        .rows
        .iter()
        .map(|r| r.alt.as_str().chars().count())
        .max()
        .unwrap_or(0)
        .max(2);
    let mut out = String::new();
    writeln!(
        out,
        "{:<w$}  {:>8}  {:>8}  {:>8}  {:>8}  {:>8}  {:>4}",
        "id", "APFDV m", "APFDV n", "ES", "SF", "AF", "rank"
    )
    .unwrap();
    for r in &report.rows {
        writeln!(
            out,
            "{:<w$}  {:>8.4}  {:>8.4}  {:>8.4}  {:>8.4}  {:>8.4}  {:>4}",
            r.alt.as_str(),
            r.apfdv.m(),
            r.apfdv.n(),
            r.es,
            r.sf,
            r.af,
            r.rank
        )
        .unwrap();
    }
    writeln!(out, "{}", RankingLine(&report.ranking)).unwrap();
    out
}

/// One weight per line, 8 decimals.
pub fn render_weights(weights: &[f64]) -> String {
    weights.iter().map(|w| format!("{w:.8}\n")).collect()
}
