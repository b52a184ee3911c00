//! Text input and DOT output for Coxeter diagrams.
//!
//! Accepted input forms (labels use the Coxeter convention: label `k` is angle π/k,
//! not the line multiplicity of a drawn diagram):
//!
//! - `[a,b,c]`: linear diagram, angles π/a, π/b, π/c on 01, 12, 23, all else π/2;
//! - `01:3,12:3,23:6`: labels per face pair, omitted pairs are π/2; a value `n/d` is the angle nπ/d;
//! - `1/2,1/2,1/3,1/3,1/3,1/3`: six fractions in pair order 01,02,03,12,13,23.

use thiserror::Error;

use crate::angle::AngleFrac;
use crate::shape::{pair_index, ShapeError, TetShape, PAIRS};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiagramError {
    #[error("cannot parse diagram `{0}`")]
    Syntax(String),
    #[error(transparent)]
    Shape(#[from] ShapeError),
}

fn parse_angle(s: &str) -> Option<AngleFrac> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => AngleFrac::try_new(n.trim().parse().ok()?, d.trim().parse().ok()?),
        None => {
            let k: u32 = s.parse().ok()?;
            (k >= 2).then(|| AngleFrac::pi_over(k))
        }
    }
}

pub fn parse_diagram(input: &str) -> Result<TetShape, DiagramError> {
    let bad = || DiagramError::Syntax(input.to_string());
    let s = input.trim();
    if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let labels: Vec<u32> = inner.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
        if labels.len() != 3 || labels.iter().any(|&k| k < 2) {
            return Err(bad());
        }
        return Ok(TetShape::linear(labels[0], labels[1], labels[2]));
    }
    if s.contains(':') {
        let mut angles = [AngleFrac::pi_over(2); 6];
        for part in s.split(',') {
            let (pair, val) = part.split_once(':').ok_or_else(bad)?;
            let digits: Vec<usize> = pair.trim().chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>().ok_or_else(bad)?;
            if digits.len() != 2 || digits[0] == digits[1] || digits.iter().any(|&d| d > 3) {
                return Err(bad());
            }
            angles[pair_index(digits[0], digits[1])] = parse_angle(val).ok_or_else(bad)?;
        }
        return Ok(TetShape::new(angles)?);
    }
    let parts: Vec<AngleFrac> = s.split(',').map(parse_angle).collect::<Option<_>>().ok_or_else(bad)?;
    let angles: [AngleFrac; 6] = parts.try_into().map_err(|_| bad())?;
    Ok(TetShape::new(angles)?)
}

/// Compact label form, e.g. `01:5,12:3,23:4`; right angles omitted.
pub fn format_labels(t: &TetShape) -> String {
    let parts: Vec<String> = PAIRS
        .iter()
        .zip(t.angles())
        .filter(|(_, a)| **a != AngleFrac::pi_over(2))
        .map(|((i, j), a)| if a.is_coxeter() { format!("{i}{j}:{}", a.den()) } else { format!("{i}{j}:{}/{}", a.num(), a.den()) })
        .collect();
    if parts.is_empty() {
        "empty".into()
    } else {
        parts.join(",")
    }
}

/// Graphviz rendering: one node per face, an edge per non-right angle labelled by `k` or `n/d`.
pub fn to_dot(name: &str, t: &TetShape) -> String {
    let mut out = format!("graph \"{name}\" {{\n");
    for i in 0..4 {
        out.push_str(&format!("  f{i} [label=\"{i}\"];\n"));
    }
    for ((i, j), a) in PAIRS.iter().zip(t.angles()) {
        if *a == AngleFrac::pi_over(2) {
            continue;
        }
        let label = if a.is_coxeter() { a.den().to_string() } else { format!("{}/{}", a.num(), a.den()) };
        out.push_str(&format!("  f{i} -- f{j} [label=\"{label}\"];\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms_agree() {
        let a = parse_diagram("[3,3,6]").unwrap();
        let b = parse_diagram("01:3, 12:3, 23:6").unwrap();
        let c = parse_diagram("1/3,1/2,1/2,1/3,1/2,1/6").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(parse_diagram(&format_labels(&a)).unwrap(), a);
    }

    #[test]
    fn fractional_angles() {
        let t = parse_diagram("03:2/5,12:4").unwrap();
        assert_eq!(t.angle(0, 3), AngleFrac::new(2, 5));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_diagram("[3,3]").is_err());
        assert!(parse_diagram("04:3").is_err());
        assert!(parse_diagram("01:1").is_err());
        assert!(parse_diagram("hello").is_err());
    }

    #[test]
    fn dot_lists_nontrivial_edges() {
        let d = to_dot("H", &TetShape::linear(5, 3, 4));
        assert_eq!(d.matches(" -- ").count(), 3);
        assert!(d.contains("label=\"5\""));
    }
}
