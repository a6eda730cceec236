//! The `map v1` format: one `source -> target` line per source vertex.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use curvcalc_core::SimplicialMap;

use crate::document::ComplexDocument;
use crate::error::{CliError, Result};

pub const HEADER: &str = "map v1";

pub fn parse_map(text: &str, source: &ComplexDocument, target: &ComplexDocument) -> Result<SimplicialMap> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, HEADER)) => {}
        Some((n, other)) => return Err(CliError::parse(n, format!("expected header {HEADER:?}, found {other:?}"))),
        None => return Err(CliError::parse(1, "empty map")),
    }
    let mut vm = BTreeMap::new();
    for (n, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [from, "->", to] = fields[..] else {
            return Err(CliError::parse(n, "expected 'source -> target'"));
        };
        let a = source.id(from).map_err(|_| CliError::parse(n, format!("unknown source vertex {from:?}")))?;
        let b = target.id(to).map_err(|_| CliError::parse(n, format!("unknown target vertex {to:?}")))?;
        if vm.insert(a, b).is_some() {
            return Err(CliError::parse(n, format!("vertex {from:?} mapped twice")));
        }
    }
    Ok(SimplicialMap::new(source.complex().clone(), target.complex().clone(), vm)?)
}

pub fn render_map(map: &SimplicialMap, source: &ComplexDocument, target: &ComplexDocument) -> String {
    let mut out = format!("{HEADER}\n");
    for (a, b) in map.vertex_map() {
        writeln!(out, "{} -> {}", source.name(*a), target.name(*b)).expect("write to string");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(text: &str) -> ComplexDocument {
        ComplexDocument::parse(text).unwrap()
    }

    #[test]
    fn round_trip_and_errors() {
        let src = doc("curvcalc-complex v1\nvertices\na\nb\nc\nsimplices\na b c\n");
        let tgt = doc("curvcalc-complex v1\nvertices\nx\ny\nsimplices\nx y\n");
        let text = "map v1\na -> x\nb -> y\nc -> y\n";
        let m = parse_map(text, &src, &tgt).unwrap();
        assert_eq!(render_map(&m, &src, &tgt), text);
        assert!(matches!(parse_map("map v1\na => x\n", &src, &tgt), Err(CliError::Parse { line: 2, .. })));
        assert_eq!(parse_map("map v1\na -> x\nb -> y\n", &src, &tgt).unwrap_err().code(), "E003");
    }
}
