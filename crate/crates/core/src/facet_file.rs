//! Plain-text facet files.
//!
//! ```text
//! # comment lines start with '#'
//! -2 1 3
//! -2 1 4
//! ```
//!
//! One facet per line, labels ascending, separated by single spaces, LF line
//! endings. Blank lines are ignored on read.

use crate::complex::{Face, PureComplex};
use crate::error::{Error, Result};

pub fn write_facets(delta: &PureComplex, header: &[String]) -> String {
    let mut out = String::new();
    for line in header {
        for part in line.split('\n') {
            out.push_str("# ");
            out.push_str(part);
            out.push('\n');
        }
    }
    for f in delta.facets() {
        let tokens: Vec<String> = f.vertices().iter().map(|v| v.to_string()).collect();
        out.push_str(&tokens.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_facets(text: &str) -> Result<PureComplex> {
    let mut facets = Vec::new();
    let mut width: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            line: i + 1,
            message,
        };
        let labels = line
            .split_whitespace()
            .map(|t| {
                t.parse::<i32>()
                    .map_err(|e| parse_err(format!("{t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        match width {
            None => width = Some(labels.len()),
            Some(w) if w != labels.len() => {
                return Err(parse_err(format!(
                    "expected {w} labels, found {}",
                    labels.len()
                )))
            }
            _ => {}
        }
        let face = Face::from_labels(&labels).map_err(|e| parse_err(e.to_string()))?;
        if face.len() != labels.len() {
            return Err(parse_err("repeated label".into()));
        }
        facets.push(face);
    }
    PureComplex::new(facets)
}
