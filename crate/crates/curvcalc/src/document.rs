//! The `curvcalc-complex v1` text format.
//!
//! ```text
//! curvcalc-complex v1
//! # comments run to the end of the line
//! vertices
//! a 0 0 | 1/2
//! b 1 0 | 1
//! c 0 1 | 0
//! simplices
//! a b c
//! ```
//!
//! Each vertex line holds a name, optional coordinates and, after `|`, an
//! optional exact value (`p/q` or a decimal). Each simplex line lists the
//! vertices of one maximal simplex. Vertex ids follow declaration order.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use curvcalc_core::complex::{Simplex, SimplicialComplex, VertexId};
use curvcalc_core::{Embedding, PlFunction, Rational};
use num_traits::{One, Zero};

use crate::error::{CliError, Result};

pub const HEADER: &str = "curvcalc-complex v1";

/// A parsed complex with its vertex names and optional data.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexDocument {
    names: Vec<String>,
    complex: SimplicialComplex,
    coords: Option<BTreeMap<VertexId, Vec<f64>>>,
    alpha: Option<PlFunction>,
}

#[derive(PartialEq)]
enum Section {
    Start,
    Vertices,
    Simplices,
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn check_name(name: &str, line: usize) -> Result<()> {
    if name.contains([',', '|']) {
        return Err(CliError::parse(line, format!("vertex name {name:?} may not contain ',' or '|'")));
    }
    Ok(())
}

/// Parses `p/q`, an integer, or a plain decimal such as `-0.125` exactly.
pub fn parse_rational(s: &str) -> Option<Rational> {
    if let Some((p, q)) = s.split_once('/') {
        let p = p.parse().ok()?;
        let q: num_bigint::BigInt = q.parse().ok()?;
        return (!q.is_zero()).then(|| Rational::new(p, q));
    }
    let (neg, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let numer: num_bigint::BigInt = format!("{whole}{frac}").parse().ok()?;
    let denom = num_bigint::BigInt::from(10u32).pow(frac.len() as u32);
    let r = Rational::new(numer, denom);
    Some(if neg { -r } else { r })
}

impl ComplexDocument {
    pub fn new(
        names: Vec<String>,
        complex: SimplicialComplex,
        coords: Option<BTreeMap<VertexId, Vec<f64>>>,
        alpha: Option<PlFunction>,
    ) -> Result<Self> {
        if names.len() != complex.vertices().len()
            || complex.vertices().iter().enumerate().any(|(i, v)| v.0 as usize != i)
        {
            return Err(CliError::Usage("vertex ids must be dense and named".into()));
        }
        if let Some(a) = &alpha {
            a.check_on(&complex)?;
        }
        Ok(ComplexDocument { names, complex, coords, alpha })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, strip_comment(l))).filter(|(_, l)| !l.is_empty());
        match lines.next() {
            Some((_, HEADER)) => {}
            Some((n, other)) => return Err(CliError::parse(n, format!("expected header {HEADER:?}, found {other:?}"))),
            None => return Err(CliError::parse(1, "empty document")),
        }
        let mut section = Section::Start;
        let mut names: Vec<String> = Vec::new();
        let mut ids: BTreeMap<String, VertexId> = BTreeMap::new();
        let mut coords: Vec<(usize, Vec<f64>)> = Vec::new();
        let mut values: Vec<Option<Rational>> = Vec::new();
        let mut maximal: Vec<Simplex> = Vec::new();
        for (n, line) in lines {
            match line {
                "vertices" if section == Section::Start => {
                    section = Section::Vertices;
                    continue;
                }
                "simplices" if section == Section::Vertices => {
                    section = Section::Simplices;
                    continue;
                }
                _ => {}
            }
            match section {
                Section::Start => return Err(CliError::parse(n, "expected 'vertices'")),
                Section::Vertices => {
                    let (geom, value) = match line.split_once('|') {
                        Some((g, v)) => (g, Some(v.trim())),
                        None => (line, None),
                    };
                    let mut fields = geom.split_whitespace();
                    let name = fields.next().ok_or_else(|| CliError::parse(n, "missing vertex name"))?;
                    check_name(name, n)?;
                    let point = fields
                        .map(|f| f.parse::<f64>().ok().filter(|x| x.is_finite()))
                        .collect::<Option<Vec<f64>>>()
                        .ok_or_else(|| CliError::parse(n, "coordinates must be finite decimals"))?;
                    let value = match value {
                        Some(v) => Some(parse_rational(v).ok_or_else(|| CliError::parse(n, format!("bad value {v:?}")))?),
                        None => None,
                    };
                    let id = VertexId(names.len() as u32);
                    if ids.insert(name.to_string(), id).is_some() {
                        return Err(CliError::parse(n, format!("duplicate vertex {name:?}")));
                    }
                    names.push(name.to_string());
                    coords.push((n, point));
                    values.push(value);
                }
                Section::Simplices => {
                    let verts = line
                        .split_whitespace()
                        .map(|name| ids.get(name).copied().ok_or_else(|| CliError::parse(n, format!("unknown vertex {name:?}"))))
                        .collect::<Result<Vec<_>>>()?;
                    let s = Simplex::new(verts.iter().copied())
                        .map_err(|_| CliError::parse(n, "simplex has repeated vertices"))?;
                    if s.len() != verts.len() {
                        return Err(CliError::parse(n, "simplex has repeated vertices"));
                    }
                    maximal.push(s);
                }
            }
        }
        if section != Section::Simplices {
            return Err(CliError::parse(text.lines().count().max(1), "missing 'simplices' section"));
        }
        maximal.extend((0..names.len() as u32).map(Simplex::vertex));
        let complex = SimplicialComplex::from_maximal(maximal);

        let coords = match coords.iter().find(|(_, p)| !p.is_empty()) {
            None => None,
            Some((_, first)) => {
                let dim = first.len();
                if let Some((line, p)) = coords.iter().find(|(_, p)| p.len() != dim) {
                    return Err(CliError::DimensionMismatch { line: *line, expected: dim, found: p.len() });
                }
                Some(coords.into_iter().enumerate().map(|(i, (_, p))| (VertexId(i as u32), p)).collect())
            }
        };
        let alpha = if values.iter().all(Option::is_none) {
            None
        } else {
            let mut map = BTreeMap::new();
            for (i, v) in values.into_iter().enumerate() {
                let v = v.ok_or(CliError::Core(curvcalc_core::Error::MissingValue(VertexId(i as u32))))?;
                map.insert(VertexId(i as u32), v);
            }
            Some(PlFunction::new(&complex, map)?)
        };
        Ok(ComplexDocument { names, complex, coords, alpha })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.0 as usize]
    }

    pub fn id(&self, name: &str) -> Result<VertexId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| VertexId(i as u32))
            .ok_or_else(|| CliError::Usage(format!("unknown vertex {name:?}")))
    }

    /// Resolves a list of vertex names to a simplex of the complex.
    pub fn simplex<S: AsRef<str>>(&self, names: &[S]) -> Result<Simplex> {
        let ids = names.iter().map(|n| self.id(n.as_ref())).collect::<Result<Vec<_>>>()?;
        let s = Simplex::new(ids).map_err(CliError::Core)?;
        if !self.complex.contains(&s) {
            return Err(CliError::Core(curvcalc_core::Error::UnknownSimplex(s)));
        }
        Ok(s)
    }

    pub fn simplex_names(&self, s: &Simplex) -> Vec<String> {
        s.vertices().iter().map(|v| self.name(*v).to_string()).collect()
    }

    /// Names joined by `+`, used as a label.
    pub fn label(&self, s: &Simplex) -> String {
        self.simplex_names(s).join("+")
    }

    pub fn coordinates(&self) -> Option<&BTreeMap<VertexId, Vec<f64>>> {
        self.coords.as_ref()
    }

    pub fn alpha(&self) -> Option<&PlFunction> {
        self.alpha.as_ref()
    }

    pub fn require_alpha(&self) -> Result<&PlFunction> {
        self.alpha.as_ref().ok_or_else(|| CliError::Usage("the complex file carries no vertex values".into()))
    }

    /// The embedding given by the coordinates, or the equilateral one.
    pub fn embedding(&self, equilateral: bool) -> Result<Embedding> {
        if equilateral {
            return Ok(Embedding::equilateral(&self.complex));
        }
        let coords = self
            .coords
            .clone()
            .ok_or_else(|| CliError::Usage("the complex file carries no coordinates; pass --equilateral".into()))?;
        Ok(Embedding::new(self.complex.clone(), coords)?)
    }
}

impl fmt::Display for ComplexDocument {
    /// Canonical form: declaration-order vertices, then maximal simplices in
    /// the complex's order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{HEADER}")?;
        writeln!(f, "vertices")?;
        for (i, name) in self.names.iter().enumerate() {
            let v = VertexId(i as u32);
            let mut line = name.clone();
            if let Some(c) = &self.coords {
                for x in &c[&v] {
                    write!(line, " {x:?}")?;
                }
            }
            if let Some(a) = &self.alpha {
                let x = a.value(v).expect("value checked");
                write!(line, " | {}", render_rational(x))?;
            }
            writeln!(f, "{line}")?;
        }
        writeln!(f, "simplices")?;
        for s in self.complex.maximal_simplices() {
            writeln!(f, "{}", self.simplex_names(&s).join(" "))?;
        }
        Ok(())
    }
}

/// `p/q` in lowest terms, or `p` for integers.
pub fn render_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
