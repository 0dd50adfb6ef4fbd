use std::path::{Path, PathBuf};

use wschreier::format::{
    parse_action_doc, parse_extension_doc, parse_map_doc, parse_monoid_doc, MonoidDoc, ParseError,
};
use wschreier::{ActionTable, Elem, ExtensionCandidate, FiniteMonoid};

use crate::report::{input, Stop};

pub fn read(path: &Path) -> Result<String, Stop> {
    std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn parse_err(path: &Path, e: ParseError) -> Stop {
    input(format!("{}:{}:{}: {}", path.display(), e.line, e.column, e.message))
}

/// Parse a monoid file without checking the laws.
pub fn monoid_doc(path: &Path) -> Result<MonoidDoc, Stop> {
    parse_monoid_doc(&read(path)?).map_err(|e| parse_err(path, e))
}

/// A monoid referenced by another file; law violations count as bad input.
pub fn monoid(path: &Path) -> Result<FiniteMonoid, Stop> {
    monoid_doc(path)?.build().map_err(|e| input(format!("{}: {e}", path.display())))
}

/// Resolve a path written inside `file` against the directory of `file`.
pub fn resolve(file: &Path, reference: &str) -> PathBuf {
    let r = Path::new(reference);
    if r.is_absolute() {
        r.to_path_buf()
    } else {
        file.parent().unwrap_or(Path::new("")).join(r)
    }
}

pub struct Extension {
    pub name: String,
    pub candidate: ExtensionCandidate,
}

pub fn extension(path: &Path) -> Result<Extension, Stop> {
    let doc = parse_extension_doc(&read(path)?).map_err(|e| parse_err(path, e))?;
    let candidate = ExtensionCandidate {
        n: monoid(&resolve(path, &doc.n))?,
        g: monoid(&resolve(path, &doc.g))?,
        h: monoid(&resolve(path, &doc.h))?,
        k: doc.k,
        e: doc.e,
        s: doc.s,
    };
    Ok(Extension { name: doc.name, candidate })
}

pub struct Action {
    pub name: String,
    pub n: FiniteMonoid,
    pub h: FiniteMonoid,
    pub table: ActionTable,
}

pub fn action(path: &Path) -> Result<Action, Stop> {
    let doc = parse_action_doc(&read(path)?).map_err(|e| parse_err(path, e))?;
    let n = monoid(&resolve(path, &doc.n))?;
    let h = monoid(&resolve(path, &doc.h))?;
    let table = doc.table(h.size(), n.size()).map_err(|e| parse_err(path, e))?;
    Ok(Action { name: doc.name, n, h, table })
}

pub struct Map {
    pub name: String,
    pub source: FiniteMonoid,
    pub target: FiniteMonoid,
    pub values: Vec<Elem>,
}

pub fn map(path: &Path) -> Result<Map, Stop> {
    let doc = parse_map_doc(&read(path)?).map_err(|e| parse_err(path, e))?;
    let source = monoid(&resolve(path, &doc.source))?;
    let target = monoid(&resolve(path, &doc.target))?;
    if doc.map.len() != source.size() {
        return Err(input(format!("{}: f has {} values for a source of size {}", path.display(), doc.map.len(), source.size())));
    }
    if let Some(&v) = doc.map.iter().find(|&&v| v >= target.size()) {
        return Err(input(format!("{}: value {v} is outside the target (size {})", path.display(), target.size())));
    }
    Ok(Map { name: doc.name, source, target, values: doc.map })
}
