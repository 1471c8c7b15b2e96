//! Text formats for complexes, polytopes, matrices and face lists.
//!
//! Blank lines and anything after `#` are ignored in every format.

use std::fmt;
use std::path::{Path, PathBuf};

use connsum_core::face::Face;
use connsum_core::matrix::IntegerMatrix;
use connsum_core::polytope::{CutSpec, Inequality, RationalPolytope};
use connsum_core::simplicial::{FaceSubset, SimplicialComplex};

/// A parse diagnostic pointing at a line (1-based; 0 when the whole file is at fault).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub path: Option<PathBuf>,
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        ParseError { path: None, line, message: message.into() }
    }

    fn in_file(mut self, path: &Path) -> Self {
        self.path = Some(path.to_path_buf());
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = &self.path {
            write!(f, "{}:", p.display())?;
        }
        if self.line > 0 {
            write!(f, "{}: ", self.line)?;
        } else if self.path.is_some() {
            f.write_str(" ")?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for ParseError {}

pub type ParseResult<T> = std::result::Result<T, ParseError>;

fn read(path: &Path) -> ParseResult<String> {
    std::fs::read_to_string(path).map_err(|e| ParseError::at(0, format!("cannot read file: {e}")).in_file(path))
}

/// Non-empty lines with comments stripped, paired with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn split_key(line: &str) -> Option<(&str, &str)> {
    let (k, v) = line.split_once(':')?;
    Some((k.trim(), v.trim()))
}

fn parse_int<T: std::str::FromStr>(token: &str, line: usize, what: &str) -> ParseResult<T> {
    token.parse().map_err(|_| ParseError::at(line, format!("expected {what}, found `{token}`")))
}

/// Brace-delimited vertex sets such as `{1,4} {4,3} {}`.
fn parse_face_tokens(text: &str, m: usize, line: usize) -> ParseResult<Vec<Face>> {
    let mut faces = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('{') else {
            let token = rest.split_whitespace().next().unwrap_or(rest);
            return Err(ParseError::at(line, format!("malformed face token `{token}`, expected `{{v1,v2,...}}`")));
        };
        let Some(close) = body.find('}') else {
            return Err(ParseError::at(line, format!("unterminated face `{{{body}`")));
        };
        let inner = &body[..close];
        if inner.contains('{') {
            return Err(ParseError::at(line, format!("malformed face token `{{{inner}`")));
        }
        let mut verts = Vec::new();
        for t in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let v: usize = parse_int(t, line, "a vertex number")?;
            if v == 0 || v > m {
                return Err(ParseError::at(line, format!("vertex {v} outside 1..={m}")));
            }
            verts.push(v);
        }
        faces.push(Face::from_vertices(m, verts).map_err(|e| ParseError::at(line, e.to_string()))?);
        rest = body[close + 1..].trim_start();
    }
    Ok(faces)
}

/// `vertices: m` followed by any number of `facets: {..} {..}` lines.
pub fn parse_complex(text: &str) -> ParseResult<SimplicialComplex> {
    let mut m: Option<usize> = None;
    let mut facets = Vec::new();
    for (line, content) in content_lines(text) {
        match split_key(content) {
            Some(("vertices", v)) => {
                if m.is_some() {
                    return Err(ParseError::at(line, "duplicate `vertices:` line"));
                }
                let count: usize = parse_int(v, line, "a vertex count")?;
                if count == 0 || count > 64 {
                    return Err(ParseError::at(line, format!("vertex count {count} outside 1..=64")));
                }
                m = Some(count);
            }
            Some(("facets", v)) => {
                let Some(count) = m else {
                    return Err(ParseError::at(line, "`facets:` before `vertices:`"));
                };
                facets.extend(parse_face_tokens(v, count, line)?);
            }
            _ => return Err(ParseError::at(line, format!("unrecognised line `{content}`"))),
        }
    }
    let m = m.ok_or_else(|| ParseError::at(0, "missing `vertices:` line"))?;
    SimplicialComplex::from_facets(m, facets).map_err(|e| ParseError::at(0, e.to_string()))
}

pub fn parse_complex_file(path: &Path) -> ParseResult<SimplicialComplex> {
    parse_complex(&read(path)?).map_err(|e| e.in_file(path))
}

/// A face list such as `{5} {2,5}` on `m` vertices.
pub fn parse_face_subset(text: &str, m: usize) -> ParseResult<FaceSubset> {
    let faces = parse_face_tokens(text, m, 0)?;
    FaceSubset::new(m, faces).map_err(|e| ParseError::at(0, e.to_string()))
}

/// A single face such as `{1,2}`.
pub fn parse_face(text: &str, m: usize) -> ParseResult<Face> {
    match parse_face_tokens(text, m, 0)?.as_slice() {
        [f] => Ok(*f),
        other => Err(ParseError::at(0, format!("expected one face, found {}", other.len()))),
    }
}

/// Contents of a polytope file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeFile {
    pub polytope: RationalPolytope,
    /// One label per inequality, when the file labels them.
    pub labels: Option<Vec<u64>>,
    pub cut: Option<CutSpec>,
}

/// `λ1 ... λn | η`
fn parse_affine(text: &str, dim: usize, line: usize) -> ParseResult<(Vec<i64>, i64)> {
    let Some((lhs, rhs)) = text.split_once('|') else {
        return Err(ParseError::at(line, "expected `λ1 ... λn | η`"));
    };
    let normal = lhs.split_whitespace().map(|t| parse_int(t, line, "an integer coefficient")).collect::<ParseResult<Vec<i64>>>()?;
    if normal.len() != dim {
        return Err(ParseError::at(line, format!("expected {dim} coefficients, found {}", normal.len())));
    }
    let offset = match rhs.split_whitespace().collect::<Vec<_>>().as_slice() {
        [t] => parse_int(t, line, "an integer offset")?,
        _ => return Err(ParseError::at(line, "expected a single offset after `|`")),
    };
    Ok((normal, offset))
}

/// `dim: n`, lines `ineq: λ1 ... λn | η [label b]`, optional `cut: γ1 ... γn | ξ`.
pub fn parse_polytope(text: &str) -> ParseResult<PolytopeFile> {
    let mut dim: Option<usize> = None;
    let mut ineqs = Vec::new();
    let mut labels: Vec<Option<u64>> = Vec::new();
    let mut cut = None;
    for (line, content) in content_lines(text) {
        let need_dim = |d: Option<usize>| d.ok_or_else(|| ParseError::at(line, "`dim:` must come first"));
        match split_key(content) {
            Some(("dim", v)) => {
                if dim.is_some() {
                    return Err(ParseError::at(line, "duplicate `dim:` line"));
                }
                let d: usize = parse_int(v, line, "a dimension")?;
                if d == 0 {
                    return Err(ParseError::at(line, "dimension must be positive"));
                }
                dim = Some(d);
            }
            Some(("ineq", v)) => {
                let d = need_dim(dim)?;
                let (body, label) = match v.split_once("label") {
                    Some((b, l)) => {
                        let b_i: u64 = parse_int(l.trim(), line, "a positive label")?;
                        if b_i == 0 {
                            return Err(ParseError::at(line, "labels must be positive"));
                        }
                        (b, Some(b_i))
                    }
                    None => (v, None),
                };
                let (normal, offset) = parse_affine(body, d, line)?;
                if normal.iter().all(|a| *a == 0) {
                    return Err(ParseError::at(line, "zero normal vector"));
                }
                ineqs.push(Inequality::new(normal, offset));
                labels.push(label);
            }
            Some(("cut", v)) => {
                let d = need_dim(dim)?;
                if cut.is_some() {
                    return Err(ParseError::at(line, "duplicate `cut:` line"));
                }
                let (normal, offset) = parse_affine(v, d, line)?;
                cut = Some(CutSpec::new(normal, offset).map_err(|e| ParseError::at(line, e.to_string()))?);
            }
            _ => return Err(ParseError::at(line, format!("unrecognised line `{content}`"))),
        }
    }
    let dim = dim.ok_or_else(|| ParseError::at(0, "missing `dim:` line"))?;
    let labels = if labels.iter().all(Option::is_none) {
        None
    } else if labels.iter().all(Option::is_some) {
        Some(labels.into_iter().flatten().collect())
    } else {
        return Err(ParseError::at(0, "either every `ineq:` line carries a label or none does"));
    };
    let polytope = RationalPolytope::new(dim, ineqs).map_err(|e| ParseError::at(0, e.to_string()))?;
    Ok(PolytopeFile { polytope, labels, cut })
}

pub fn parse_polytope_file(path: &Path) -> ParseResult<PolytopeFile> {
    parse_polytope(&read(path)?).map_err(|e| e.in_file(path))
}

/// One row of whitespace-separated integers per line.
pub fn parse_matrix(text: &str) -> ParseResult<IntegerMatrix> {
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for (line, content) in content_lines(text) {
        let row = content.split_whitespace().map(|t| parse_int(t, line, "an integer entry")).collect::<ParseResult<Vec<i64>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(ParseError::at(line, format!("row has {} entries, expected {}", row.len(), first.len())));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(ParseError::at(0, "empty matrix"));
    }
    IntegerMatrix::from_rows(&rows).map_err(|e| ParseError::at(0, e.to_string()))
}

pub fn parse_matrix_file(path: &Path) -> ParseResult<IntegerMatrix> {
    parse_matrix(&read(path)?).map_err(|e| e.in_file(path))
}
