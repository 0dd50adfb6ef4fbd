//! Line-oriented text formats for monoids, extensions, actions, maps and
//! admissible-relation/action pairs.
//!
//! Blank lines and lines starting with `#` are ignored. Parse errors carry
//! the 1-based line and column of the offending token. Files other than
//! monoid files refer to monoid files by path; resolving those paths is left
//! to the caller.
//!
//! ```text
//! monoid C2 2
//! identity 0
//! row 0: 0 1
//! row 1: 1 0
//! labels: 1 g
//! ```

use std::fmt::Write as _;

use itertools::Itertools;
use thiserror::Error;

use crate::monoid::{check_monoid, Elem, FiniteMonoid, MonoidError};
use crate::waction::{ActionTable, Partition, WActPair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    fn error(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.number, column, message: message.into() }
    }

    /// Whitespace-separated tokens with their 1-based columns.
    fn tokens(&self) -> Vec<(usize, &'a str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, c) in self.text.char_indices() {
            match (c.is_whitespace(), start) {
                (true, Some(s)) => {
                    out.push((s, &self.text[s..i]));
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((s, &self.text[s..]));
        }
        out.into_iter().map(|(i, t)| (self.text[..i].chars().count() + 1, t)).collect()
    }

    /// Split `key: rest` and return `(key, column of rest, rest)`.
    fn key_value(&self) -> Option<(&'a str, usize, &'a str)> {
        let colon = self.text.find(':')?;
        let key = self.text[..colon].trim();
        let rest = &self.text[colon + 1..];
        let column = self.text[..colon + 1].chars().count() + 1;
        Some((key, column, rest))
    }

    fn end_column(&self) -> usize {
        self.text.chars().count() + 1
    }
}

fn content_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .map(|(i, l)| Line { number: i + 1, text: l })
        .filter(|l| {
            let t = l.text.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .collect()
}

fn parse_index(line: &Line<'_>, column: usize, token: &str) -> Result<usize, ParseError> {
    token.parse().map_err(|_| line.error(column, format!("expected a non-negative integer, found {token:?}")))
}

/// Integers in `rest`, which starts at `column` of `line`.
fn parse_indices(line: &Line<'_>, column: usize, rest: &str) -> Result<Vec<usize>, ParseError> {
    let sub = Line { number: line.number, text: rest };
    sub.tokens().into_iter().map(|(c, t)| parse_index(line, column + c - 1, t)).collect()
}

fn eof_error(text: &str, message: impl Into<String>) -> ParseError {
    let lines = text.lines().count().max(1);
    let last = text.lines().last().unwrap_or("");
    ParseError { line: lines, column: last.chars().count() + 1, message: message.into() }
}

/// Header line `<kind> <name> [extra...]`.
fn header<'a>(lines: &[Line<'a>], text: &str, kind: &str) -> Result<Vec<(usize, &'a str)>, ParseError> {
    let first = lines.first().ok_or_else(|| eof_error(text, format!("expected `{kind} <name>`")))?;
    let tokens = first.tokens();
    if tokens[0].1 != kind {
        return Err(first.error(tokens[0].0, format!("expected `{kind}`, found {:?}", tokens[0].1)));
    }
    if tokens.len() < 2 {
        return Err(first.error(first.end_column(), "missing name"));
    }
    Ok(tokens)
}

// ---------------------------------------------------------------------------
// Monoids

/// A parsed but not yet law-checked monoid file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidDoc {
    pub name: String,
    pub identity: Elem,
    pub rows: Vec<Vec<Elem>>,
    pub labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidLoadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

pub fn parse_monoid_doc(text: &str) -> Result<MonoidDoc, ParseError> {
    let lines = content_lines(text);
    let head = header(&lines, text, "monoid")?;
    let first = &lines[0];
    let name = head[1].1.to_string();
    let Some(&(size_col, size_tok)) = head.get(2) else {
        return Err(first.error(first.end_column(), "missing size"));
    };
    let size = parse_index(first, size_col, size_tok)?;
    if size == 0 {
        return Err(first.error(size_col, "size must be positive"));
    }
    if let Some(&(c, t)) = head.get(3) {
        return Err(first.error(c, format!("unexpected {t:?}")));
    }

    let second = lines.get(1).ok_or_else(|| eof_error(text, "expected `identity <index>`"))?;
    let tokens = second.tokens();
    if tokens[0].1 != "identity" || tokens.len() != 2 {
        return Err(second.error(tokens[0].0, "expected `identity <index>`"));
    }
    let identity = parse_index(second, tokens[1].0, tokens[1].1)?;

    let mut rows = Vec::with_capacity(size);
    for i in 0..size {
        let line = lines.get(2 + i).ok_or_else(|| eof_error(text, format!("expected `row {i}: ...`")))?;
        let Some((key, column, rest)) = line.key_value() else {
            return Err(line.error(1, format!("expected `row {i}: ...`")));
        };
        let key_tokens: Vec<&str> = key.split_whitespace().collect();
        if key_tokens.len() != 2 || key_tokens[0] != "row" || key_tokens[1] != i.to_string() {
            return Err(line.error(1, format!("expected `row {i}:`, found `{key}:`")));
        }
        let row = parse_indices(line, column, rest)?;
        if row.len() != size {
            return Err(line.error(column, format!("row {i} has {} entries, expected {size}", row.len())));
        }
        rows.push(row);
    }

    let mut labels = None;
    for line in &lines[2 + size..] {
        match line.key_value() {
            Some(("labels", column, rest)) if labels.is_none() => {
                let sub = Line { number: line.number, text: rest };
                let list: Vec<String> = sub.tokens().into_iter().map(|(_, t)| t.to_string()).collect();
                if list.len() != size {
                    return Err(line.error(column, format!("{} labels for {size} elements", list.len())));
                }
                labels = Some(list);
            }
            _ => return Err(line.error(1, "unexpected line after the table")),
        }
    }
    Ok(MonoidDoc { name, identity, rows, labels })
}

impl MonoidDoc {
    pub fn build(&self) -> Result<FiniteMonoid, MonoidError> {
        let m = check_monoid(self.identity, &self.rows)?.with_name(self.name.clone());
        Ok(match &self.labels {
            Some(labels) => m.with_labels(labels.iter().cloned()).map_err(MonoidError::Format)?,
            None => m,
        })
    }
}

pub fn parse_monoid(text: &str) -> Result<FiniteMonoid, MonoidLoadError> {
    Ok(parse_monoid_doc(text)?.build()?)
}

/// Write a monoid file; `name` overrides the monoid's own name.
pub fn write_monoid(m: &FiniteMonoid, name: Option<&str>) -> String {
    let name = name.or(m.name()).unwrap_or("M");
    let mut out = format!("monoid {name} {}\nidentity {}\n", m.size(), m.identity());
    for a in m.elements() {
        let _ = writeln!(out, "row {a}: {}", m.row(a).iter().join(" "));
    }
    if let Some(labels) = m.labels() {
        let _ = writeln!(out, "labels: {}", labels.join(" "));
    }
    out
}

// ---------------------------------------------------------------------------
// Documents with monoid references

/// Reference-carrying key/value body shared by the other formats.
struct Body<'a> {
    entries: Vec<(&'a Line<'a>, &'a str, usize, &'a str)>,
}

impl<'a> Body<'a> {
    fn new(lines: &'a [Line<'a>]) -> Self {
        let entries = lines[1..]
            .iter()
            .map(|l| match l.key_value() {
                Some((k, c, r)) => (l, k, c, r),
                None => (l, "", 1, l.text),
            })
            .collect();
        Body { entries }
    }

    fn take(&self, text: &str, key: &str) -> Result<(&'a Line<'a>, usize, &'a str), ParseError> {
        let mut found = self.entries.iter().filter(|(_, k, _, _)| *k == key);
        let first = found.next().ok_or_else(|| eof_error(text, format!("missing `{key}:` line")))?;
        if let Some((line, ..)) = found.next() {
            return Err(line.error(1, format!("duplicate `{key}:` line")));
        }
        Ok((first.0, first.2, first.3))
    }

    fn path(&self, text: &str, key: &str) -> Result<String, ParseError> {
        let (line, column, rest) = self.take(text, key)?;
        let value = rest.trim();
        if value.is_empty() || value.split_whitespace().count() != 1 {
            return Err(line.error(column, format!("`{key}:` expects one path")));
        }
        Ok(value.to_string())
    }

    fn indices(&self, text: &str, key: &str) -> Result<Vec<usize>, ParseError> {
        let (line, column, rest) = self.take(text, key)?;
        parse_indices(line, column, rest)
    }

    fn reject_unknown(&self, known: &[&str], line_keywords: &[&str]) -> Result<(), ParseError> {
        for (line, key, _, _) in &self.entries {
            let first = line.tokens()[0].1;
            if !known.contains(key) && !line_keywords.contains(&first) {
                return Err(line.error(1, format!("unexpected line {:?}", line.text.trim())));
            }
        }
        Ok(())
    }
}

/// `extension <name>` with `N:`, `G:`, `H:` paths and `k:`, `e:`, `s:` maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionDoc {
    pub name: String,
    pub n: String,
    pub g: String,
    pub h: String,
    pub k: Vec<Elem>,
    pub e: Vec<Elem>,
    pub s: Vec<Elem>,
}

pub fn parse_extension_doc(text: &str) -> Result<ExtensionDoc, ParseError> {
    let lines = content_lines(text);
    let head = header(&lines, text, "extension")?;
    let body = Body::new(&lines);
    body.reject_unknown(&["N", "G", "H", "k", "e", "s"], &[])?;
    Ok(ExtensionDoc {
        name: head[1].1.to_string(),
        n: body.path(text, "N")?,
        g: body.path(text, "G")?,
        h: body.path(text, "H")?,
        k: body.indices(text, "k")?,
        e: body.indices(text, "e")?,
        s: body.indices(text, "s")?,
    })
}

pub fn write_extension_doc(doc: &ExtensionDoc) -> String {
    format!(
        "extension {}\nN: {}\nG: {}\nH: {}\nk: {}\ne: {}\ns: {}\n",
        doc.name,
        doc.n,
        doc.g,
        doc.h,
        doc.k.iter().join(" "),
        doc.e.iter().join(" "),
        doc.s.iter().join(" ")
    )
}

/// `map <name>` with `source:` and `target:` paths and the `f:` values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapDoc {
    pub name: String,
    pub source: String,
    pub target: String,
    pub map: Vec<Elem>,
}

pub fn parse_map_doc(text: &str) -> Result<MapDoc, ParseError> {
    let lines = content_lines(text);
    let head = header(&lines, text, "map")?;
    let body = Body::new(&lines);
    body.reject_unknown(&["source", "target", "f"], &[])?;
    Ok(MapDoc {
        name: head[1].1.to_string(),
        source: body.path(text, "source")?,
        target: body.path(text, "target")?,
        map: body.indices(text, "f")?,
    })
}

pub fn write_map_doc(doc: &MapDoc) -> String {
    format!("map {}\nsource: {}\ntarget: {}\nf: {}\n", doc.name, doc.source, doc.target, doc.map.iter().join(" "))
}

/// Parse `<kw> h n -> m` lines into a complete table.
fn parse_arrow_lines(
    lines: &[Line<'_>],
    text: &str,
    keyword: &str,
    h_size: usize,
    n_size: usize,
) -> Result<ActionTable, ParseError> {
    let mut data = vec![None; h_size * n_size];
    for line in lines.iter().skip(1) {
        let tokens = line.tokens();
        if tokens[0].1 != keyword {
            continue;
        }
        if tokens.len() != 5 || tokens[3].1 != "->" {
            return Err(line.error(tokens[0].0, format!("expected `{keyword} <h> <n> -> <m>`")));
        }
        let h = parse_index(line, tokens[1].0, tokens[1].1)?;
        let n = parse_index(line, tokens[2].0, tokens[2].1)?;
        let m = parse_index(line, tokens[4].0, tokens[4].1)?;
        if h >= h_size {
            return Err(line.error(tokens[1].0, format!("{h} is outside H (size {h_size})")));
        }
        if n >= n_size {
            return Err(line.error(tokens[2].0, format!("{n} is outside N (size {n_size})")));
        }
        if m >= n_size {
            return Err(line.error(tokens[4].0, format!("{m} is outside N (size {n_size})")));
        }
        let slot = &mut data[h * n_size + n];
        if slot.is_some() {
            return Err(line.error(tokens[0].0, format!("duplicate entry for ({h},{n})")));
        }
        *slot = Some(m);
    }
    if let Some(i) = data.iter().position(Option::is_none) {
        return Err(eof_error(text, format!("missing `{keyword} {} {} -> ...`", i / n_size.max(1), i % n_size.max(1))));
    }
    let data = data.into_iter().map(|v| v.expect("all present")).collect();
    Ok(ActionTable::from_data(h_size, n_size, data).expect("entries were range-checked"))
}

/// `action <name>` with `N:` and `H:` paths and one `act h n -> m` line per
/// pair. The table itself needs the monoid sizes, see [`ActionDoc::table`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionDoc {
    pub name: String,
    pub n: String,
    pub h: String,
    text: String,
}

pub fn parse_action_doc(text: &str) -> Result<ActionDoc, ParseError> {
    let lines = content_lines(text);
    let head = header(&lines, text, "action")?;
    let body = Body::new(&lines);
    body.reject_unknown(&["N", "H"], &["act"])?;
    Ok(ActionDoc { name: head[1].1.to_string(), n: body.path(text, "N")?, h: body.path(text, "H")?, text: text.to_string() })
}

impl ActionDoc {
    pub fn table(&self, h_size: usize, n_size: usize) -> Result<ActionTable, ParseError> {
        parse_arrow_lines(&content_lines(&self.text), &self.text, "act", h_size, n_size)
    }
}

pub fn write_action_doc(name: &str, n_path: &str, h_path: &str, act: &ActionTable) -> String {
    let mut out = format!("action {name}\nN: {n_path}\nH: {h_path}\n");
    for h in 0..act.h_size() {
        for n in 0..act.n_size() {
            let _ = writeln!(out, "act {h} {n} -> {}", act.get(h, n));
        }
    }
    out
}

/// `wact <name>` with `N:`/`H:` paths, one `fiber h: {..} {..}` line per
/// element of `H` and one `action h n -> m` line per pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WActDoc {
    pub name: String,
    pub n: String,
    pub h: String,
    text: String,
}

pub fn parse_wact_doc(text: &str) -> Result<WActDoc, ParseError> {
    let lines = content_lines(text);
    let head = header(&lines, text, "wact")?;
    let body = Body::new(&lines);
    body.reject_unknown(&["N", "H"], &["fiber", "action"])?;
    Ok(WActDoc { name: head[1].1.to_string(), n: body.path(text, "N")?, h: body.path(text, "H")?, text: text.to_string() })
}

fn parse_blocks(line: &Line<'_>, column: usize, rest: &str, n_size: usize) -> Result<Partition, ParseError> {
    let mut blocks: Vec<Vec<Elem>> = Vec::new();
    let mut current: Option<Vec<Elem>> = None;
    let mut number = String::new();
    let mut number_col = 0;
    let chars: Vec<char> = rest.chars().collect();
    let flush = |number: &mut String, col: usize, current: &mut Option<Vec<Elem>>| -> Result<(), ParseError> {
        if number.is_empty() {
            return Ok(());
        }
        let v = parse_index(line, col, number)?;
        if v >= n_size {
            return Err(line.error(col, format!("{v} is outside N (size {n_size})")));
        }
        current.as_mut().expect("inside a block").push(v);
        number.clear();
        Ok(())
    };
    for (i, &c) in chars.iter().enumerate() {
        let col = column + i;
        match c {
            '{' if current.is_none() => current = Some(Vec::new()),
            '}' if current.is_some() => {
                flush(&mut number, number_col, &mut current)?;
                blocks.push(current.take().expect("inside a block"));
            }
            c if c.is_ascii_digit() && current.is_some() => {
                if number.is_empty() {
                    number_col = col;
                }
                number.push(c);
            }
            c if c.is_whitespace() => flush(&mut number, number_col, &mut current)?,
            _ => return Err(line.error(col, format!("unexpected {c:?} in partition"))),
        }
    }
    if current.is_some() {
        return Err(line.error(column + chars.len(), "unclosed block"));
    }
    Partition::from_blocks(n_size, &blocks)
        .ok_or_else(|| line.error(column, format!("blocks must cover 0..{n_size} exactly once")))
}

impl WActDoc {
    /// The fiber partitions and the action table.
    pub fn contents(&self, h_size: usize, n_size: usize) -> Result<(Vec<Partition>, ActionTable), ParseError> {
        let lines = content_lines(&self.text);
        let mut fibers: Vec<Option<Partition>> = vec![None; h_size];
        for line in lines.iter().skip(1) {
            let Some((key, column, rest)) = line.key_value() else { continue };
            let key_tokens: Vec<&str> = key.split_whitespace().collect();
            if key_tokens.first() != Some(&"fiber") {
                continue;
            }
            if key_tokens.len() != 2 {
                return Err(line.error(1, "expected `fiber <h>: {..} ...`"));
            }
            let h = parse_index(line, 7, key_tokens[1])?;
            if h >= h_size {
                return Err(line.error(7, format!("{h} is outside H (size {h_size})")));
            }
            if fibers[h].is_some() {
                return Err(line.error(1, format!("duplicate fiber {h}")));
            }
            fibers[h] = Some(parse_blocks(line, column, rest, n_size)?);
        }
        if let Some(h) = fibers.iter().position(Option::is_none) {
            return Err(eof_error(&self.text, format!("missing `fiber {h}:` line")));
        }
        let fibers = fibers.into_iter().map(|f| f.expect("all present")).collect();
        let table = parse_arrow_lines(&lines, &self.text, "action", h_size, n_size)?;
        Ok((fibers, table))
    }
}

pub fn write_wact(name: &str, n_path: &str, h_path: &str, p: &WActPair) -> String {
    let mut out = format!("wact {name}\nN: {n_path}\nH: {h_path}\n");
    out.push_str(&wact_body(p));
    out
}

/// The `fiber` and `action` lines of a pair.
pub fn wact_body(p: &WActPair) -> String {
    let mut out = String::new();
    for (h, fiber) in p.relation().fibers().iter().enumerate() {
        let blocks = fiber.blocks().iter().map(|b| format!("{{{}}}", b.iter().join(" "))).join(" ");
        let _ = writeln!(out, "fiber {h}: {blocks}");
    }
    let act = p.action();
    for h in 0..act.h_size() {
        for n in 0..act.n_size() {
            let _ = writeln!(out, "action {h} {n} -> {}", act.get(h, n));
        }
    }
    out
}
