//! Plain-text polytope format.
//!
//! ```text
//! # comment
//! 1 0 ; 0          facet  <u,(1,0)> >= 0
//! -1 0 ; 1/2       facet  <u,(-1,0)> >= -1/2
//! = 0 1 ; -1       equation
//! v 0 1/2          vertex
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::polytope::{Halfspace, PolytopeError, RationalPolytope};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error("no facets or vertices given")]
    NoData,
}

pub fn write_polytope(p: &RationalPolytope) -> String {
    let mut out = String::new();
    let join = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    for f in p.facets() {
        out.push_str(&format!("{} ; {}\n", join(&f.normal), f.offset));
    }
    for e in p.equations() {
        out.push_str(&format!("= {} ; {}\n", join(&e.normal), e.offset));
    }
    for v in p.vertices() {
        let coords: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("v {}\n", coords.join(" ")));
    }
    out
}

fn parse_rational(tok: &str, line: usize) -> Result<BigRational, ParseError> {
    tok.parse::<BigRational>()
        .map_err(|_| ParseError::Syntax { line, msg: format!("bad rational `{tok}`") })
}

fn parse_halfspace(body: &str, line: usize) -> Result<Halfspace, ParseError> {
    let (lhs, rhs) = body
        .split_once(';')
        .ok_or_else(|| ParseError::Syntax { line, msg: "expected `normal ; offset`".into() })?;
    let normal = lhs
        .split_whitespace()
        .map(|t| t.parse::<BigInt>().map_err(|_| ParseError::Syntax { line, msg: format!("bad integer `{t}`") }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Halfspace::new(normal, parse_rational(rhs.trim(), line)?))
}

/// Parse the text format; facets take precedence over listed vertices.
pub fn parse_polytope(text: &str) -> Result<RationalPolytope, ParseError> {
    let mut facets = Vec::new();
    let mut equations = Vec::new();
    let mut vertices: Vec<Vec<BigRational>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.split('#').next().unwrap().trim();
        if s.is_empty() {
            continue;
        }
        if let Some(rest) = s.strip_prefix('v') {
            let v = rest.split_whitespace().map(|t| parse_rational(t, line)).collect::<Result<Vec<_>, _>>()?;
            vertices.push(v);
        } else if let Some(rest) = s.strip_prefix('=') {
            equations.push(parse_halfspace(rest, line)?);
        } else {
            facets.push(parse_halfspace(s, line)?);
        }
    }
    let dim = facets
        .first()
        .or(equations.first())
        .map(|h: &Halfspace| h.normal.len())
        .or(vertices.first().map(|v| v.len()))
        .ok_or(ParseError::NoData)?;
    if !facets.is_empty() || !equations.is_empty() {
        Ok(RationalPolytope::from_constraints(dim, &facets, &equations)?)
    } else {
        Ok(RationalPolytope::convex_hull(dim, &vertices))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "# half square\n1 0 ; 0\n-1 0 ; 1/2\n0 1 ; 0\n0 -1 ; 1\n";
        let p = parse_polytope(text).unwrap();
        assert_eq!(p.vertices().len(), 4);
        let again = parse_polytope(&write_polytope(&p)).unwrap();
        assert_eq!(again, p);
        let verts_only: String = write_polytope(&p).lines().filter(|l| l.starts_with('v')).map(|l| format!("{l}\n")).collect();
        assert_eq!(parse_polytope(&verts_only).unwrap(), p);
    }

    #[test]
    fn syntax_error_has_line() {
        let err = parse_polytope("1 0 ; 0\n1 x ; 0\n").unwrap_err();
        assert!(err.to_string().starts_with("line 2"));
    }
}
