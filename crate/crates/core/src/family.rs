//! Named hypergraph families, e.g. `complete:n=4,k=3` or
//! `cylinder:parts=2,3`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

pub const FAMILY_NAMES: &[&str] = &[
    "single-edge",
    "complete",
    "cylinder",
    "ultracube",
    "tetra-minus-face",
    "empty",
];

fn params(spec: &str, body: &str) -> Result<BTreeMap<String, Vec<usize>>> {
    let mut out: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    let mut current: Option<String> = None;
    for token in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (key, value) = match token.split_once('=') {
            Some((k, v)) => {
                current = Some(k.trim().to_string());
                (k.trim().to_string(), v.trim())
            }
            None => match &current {
                Some(k) => (k.clone(), token),
                None => {
                    return Err(Error::InvalidParameter(format!(
                        "`{spec}`: expected key=value, got `{token}`"
                    )))
                }
            },
        };
        let v: usize = value.parse().map_err(|_| {
            Error::InvalidParameter(format!("`{spec}`: `{value}` is not a nonnegative integer"))
        })?;
        out.entry(key).or_default().push(v);
    }
    Ok(out)
}

fn single(spec: &str, p: &BTreeMap<String, Vec<usize>>, key: &str, fallback: Option<usize>) -> Result<usize> {
    match p.get(key) {
        Some(v) if v.len() == 1 => Ok(v[0]),
        Some(_) => Err(Error::InvalidParameter(format!("`{spec}`: `{key}` takes one value"))),
        None => fallback.ok_or_else(|| Error::InvalidParameter(format!("`{spec}`: missing `{key}`"))),
    }
}

/// A parsed family specification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    SingleEdge { k: usize },
    Complete { n: usize, k: usize },
    Empty { n: usize, k: usize },
    Cylinder { parts: Vec<usize> },
    Ultracube { k: usize, d: usize },
    TetraMinusFace,
}

impl Family {
    /// Parses a family specification. `k` supplies the uniformity when the
    /// specification leaves it out.
    pub fn parse(spec: &str, k: Option<usize>) -> Result<Self> {
        let (name, body) = spec.split_once(':').unwrap_or((spec, ""));
        let p = params(spec, body)?;
        let allowed: &[&str] = match name.trim() {
            "single-edge" => &["k"],
            "complete" | "empty" => &["n", "k"],
            "cylinder" => &["parts"],
            "ultracube" => &["k", "d"],
            "tetra-minus-face" => &[],
            other => return Err(Error::UnknownFamily(other.to_string())),
        };
        if let Some(bad) = p.keys().find(|key| !allowed.contains(&key.as_str())) {
            return Err(Error::InvalidParameter(format!("`{spec}`: unknown parameter `{bad}`")));
        }
        Ok(match name.trim() {
            "single-edge" => Family::SingleEdge {
                k: single(spec, &p, "k", k)?,
            },
            "complete" => Family::Complete {
                n: single(spec, &p, "n", None)?,
                k: single(spec, &p, "k", k)?,
            },
            "empty" => Family::Empty {
                n: single(spec, &p, "n", None)?,
                k: single(spec, &p, "k", k)?,
            },
            "cylinder" => {
                let parts = p
                    .get("parts")
                    .ok_or_else(|| Error::InvalidParameter(format!("`{spec}`: missing `parts`")))?
                    .clone();
                if let Some(k) = k {
                    if k != parts.len() {
                        return Err(Error::UniformityMismatch(parts.len(), k));
                    }
                }
                Family::Cylinder { parts }
            }
            "ultracube" => Family::Ultracube {
                k: single(spec, &p, "k", k)?,
                d: single(spec, &p, "d", None)?,
            },
            _ => {
                if let Some(k) = k {
                    if k != 3 {
                        return Err(Error::UniformityMismatch(3, k));
                    }
                }
                Family::TetraMinusFace
            }
        })
    }

    pub fn build(&self) -> Result<Hypergraph> {
        match self {
            Family::SingleEdge { k } => Hypergraph::single_edge(*k),
            Family::Complete { n, k } => Hypergraph::complete(*n, *k),
            Family::Empty { n, k } => Hypergraph::empty(*n, *k),
            Family::Cylinder { parts } => Hypergraph::complete_cylinder(parts),
            Family::Ultracube { k, d } => Hypergraph::ultracube(*k, *d),
            Family::TetraMinusFace => Ok(Hypergraph::tetra_minus_face()),
        }
    }
}

pub fn parse_family_with_k(spec: &str, k: Option<usize>) -> Result<Hypergraph> {
    Family::parse(spec, k)?.build()
}

pub fn parse_family(spec: &str) -> Result<Hypergraph> {
    parse_family_with_k(spec, None)
}
