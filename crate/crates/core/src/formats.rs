//! Context files: Burmeister `.cxt`, CSV cross tables and JSON.

use std::fmt::Write as _;
use std::path::Path;

use crate::clsn::Classification;
use crate::error::{Error, Result};
use crate::finrel::{FinSet, Relation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Cxt,
    Csv,
    Json,
}

impl Format {
    /// Guesses the format from a file extension.
    pub fn from_path(path: &Path) -> Option<Format> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "cxt" => Some(Format::Cxt),
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Format::Cxt => "cxt",
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "cxt" => Ok(Format::Cxt),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Invalid(format!("unknown context format `{other}`"))),
        }
    }
}

/// A parsed formal context together with its source format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextFile {
    pub format: Format,
    /// The optional `.cxt` name line.
    pub name: Option<String>,
    pub classification: Classification,
}

impl ContextFile {
    pub fn new(format: Format, classification: Classification) -> Self {
        ContextFile {
            format,
            name: None,
            classification,
        }
    }

    pub fn parse(text: &str, format: Format) -> Result<ContextFile> {
        match format {
            Format::Cxt => parse_cxt(text),
            Format::Csv => Ok(ContextFile::new(Format::Csv, parse_csv(text)?)),
            Format::Json => Ok(ContextFile::new(Format::Json, parse_json(text)?)),
        }
    }

    /// Reads a file, taking the format from its extension.
    pub fn read(path: &Path) -> Result<ContextFile> {
        let format = Format::from_path(path)
            .ok_or_else(|| Error::Invalid(format!("cannot tell the format of {}", path.display())))?;
        let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
        ContextFile::parse(&text, format)
    }

    /// The canonical text in this file's format.
    pub fn write(&self) -> String {
        match self.format {
            Format::Cxt => write_cxt(&self.classification, self.name.as_deref()),
            Format::Csv => write_csv(&self.classification),
            Format::Json => write_json(&self.classification),
        }
    }
}

fn labels_at(labels: Vec<String>, first_line: usize) -> Result<FinSet> {
    let mut seen = std::collections::HashSet::new();
    for (i, l) in labels.iter().enumerate() {
        if !seen.insert(l.as_str()) {
            return Err(Error::parse(first_line + i, format!("duplicate name `{l}`")));
        }
    }
    FinSet::new(labels)
}

struct Cursor<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    /// The next line and its 1-based number.
    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let line = self
            .lines
            .get(self.pos)
            .copied()
            .ok_or_else(|| Error::parse(self.pos + 1, format!("unexpected end of file, expected {what}")))?;
        self.pos += 1;
        Ok((self.pos, line))
    }

    fn blank(&mut self, after: &str) -> Result<()> {
        let (n, line) = self.next("blank line")?;
        if !line.is_empty() {
            return Err(Error::parse(n, format!("expected a blank line after {after}")));
        }
        Ok(())
    }

    fn count(&mut self, what: &str) -> Result<usize> {
        let (n, line) = self.next(what)?;
        line.trim()
            .parse()
            .map_err(|_| Error::parse(n, format!("expected {what}, found `{line}`")))
    }

    fn names(&mut self, k: usize, what: &str) -> Result<FinSet> {
        let first = self.pos + 1;
        let names = (0..k)
            .map(|_| self.next(what).map(|(_, l)| l.to_string()))
            .collect::<Result<Vec<_>>>()?;
        labels_at(names, first)
    }
}

/// Parses the Burmeister format.
pub fn parse_cxt(text: &str) -> Result<ContextFile> {
    let mut cur = Cursor {
        lines: text.split('\n').map(|l| l.strip_suffix('\r').unwrap_or(l)).collect(),
        pos: 0,
    };
    let (n, header) = cur.next("header `B`")?;
    if header != "B" {
        return Err(Error::parse(n, format!("expected header `B`, found `{header}`")));
    }
    let (_, line) = cur.next("name or blank line")?;
    let name = if line.is_empty() {
        None
    } else {
        cur.blank("the name")?;
        Some(line.to_string())
    };
    let g = cur.count("the number of objects")?;
    let m = cur.count("the number of attributes")?;
    cur.blank("the sizes")?;
    let objects = cur.names(g, "an object name")?;
    let attributes = cur.names(m, "an attribute name")?;
    let mut pairs = Vec::new();
    for i in 0..g {
        let (n, row) = cur.next("an incidence row")?;
        if row.chars().count() != m {
            return Err(Error::parse(n, format!("row has {} cells, expected {m}", row.chars().count())));
        }
        for (j, c) in row.chars().enumerate() {
            match c {
                'X' => pairs.push((i, j)),
                '.' => {}
                other => return Err(Error::parse(n, format!("unexpected cell `{other}`"))),
            }
        }
    }
    let (lines, pos) = (cur.lines, cur.pos);
    if let Some(extra) = lines[pos..].iter().position(|l| !l.trim().is_empty()) {
        return Err(Error::parse(pos + extra + 1, "unexpected content after the incidence rows"));
    }
    Ok(ContextFile {
        format: Format::Cxt,
        name,
        classification: Classification::from_relation(Relation::new(&objects, &attributes, pairs)?),
    })
}

pub fn write_cxt(a: &Classification, name: Option<&str>) -> String {
    let (g, m) = (a.instances(), a.types());
    let mut out = String::from("B\n");
    if let Some(name) = name {
        out.push_str(name);
        out.push('\n');
    }
    let _ = write!(out, "\n{}\n{}\n\n", g.len(), m.len());
    for l in g.labels().into_iter().chain(m.labels()) {
        out.push_str(&l);
        out.push('\n');
    }
    for i in 0..g.len() {
        out.extend((0..m.len()).map(|j| if a.holds(i, j) { 'X' } else { '.' }));
        out.push('\n');
    }
    out
}

/// Header of attribute names after one corner cell, then one row per object.
pub fn parse_csv(text: &str) -> Result<Classification> {
    let mut reader = csv::ReaderBuilder::new().has_headers(false).from_reader(text.as_bytes());
    let mut records = reader.records();
    let line_of = |e: &csv::Error| e.position().map_or(1, |p| p.line() as usize);
    let header = match records.next() {
        Some(r) => r.map_err(|e| Error::parse(line_of(&e), e.to_string()))?,
        None => return Err(Error::parse(1, "missing header row")),
    };
    let attributes = labels_at(header.iter().skip(1).map(str::to_string).collect(), 1)?;
    let mut objects = Vec::new();
    let mut pairs = Vec::new();
    for record in records {
        let record = record.map_err(|e| Error::parse(line_of(&e), e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let i = objects.len();
        let mut cells = record.iter();
        objects.push(cells.next().unwrap_or_default().to_string());
        for (j, cell) in cells.enumerate() {
            match cell.trim() {
                "1" | "X" => pairs.push((i, j)),
                "0" | "." => {}
                other => return Err(Error::parse(line, format!("unexpected cell `{other}`"))),
            }
        }
    }
    let objects = labels_at(objects, 2)?;
    Ok(Classification::from_relation(Relation::new(&objects, &attributes, pairs)?))
}

pub fn write_csv(a: &Classification) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let header = std::iter::once(String::new()).chain(a.types().labels());
    writer.write_record(header).expect("writing to memory");
    for (i, name) in a.instances().labels().into_iter().enumerate() {
        let cells = (0..a.types().len()).map(|j| if a.holds(i, j) { "1" } else { "0" }.to_string());
        writer
            .write_record(std::iter::once(name).chain(cells))
            .expect("writing to memory");
    }
    String::from_utf8(writer.into_inner().expect("writing to memory")).expect("csv output is utf-8")
}

/// `{"source":[objects],"target":[attributes],"pairs":[[i,j],...]}`.
pub fn parse_json(text: &str) -> Result<Classification> {
    serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))
}

pub fn write_json(a: &Classification) -> String {
    let mut text = serde_json::to_string(a).expect("classifications serialize");
    text.push('\n');
    text
}
