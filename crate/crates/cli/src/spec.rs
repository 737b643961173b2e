//! The JSON object definition format.
//!
//! Rationals are strings such as `"3"` or `"-5/9"` so files round-trip
//! exactly.

use std::path::Path;

use num_traits::Zero;
use qlin_core::linalg::{format_scalar, parse_scalar, sign};
use qlin_core::object::{make_classical, make_general, make_normalized, make_sudbery, ObjectKind};
use qlin_core::{GradedSpace, Matrix, Orientation, QuantumObject, Scalar};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpecKind {
    Classical,
    Sudbery,
    Normalized,
    General,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    /// Spanning vectors of each component, in coordinates `A*dim + B`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<Vec<Vec<String>>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectSpecFile {
    pub version: u32,
    pub name: String,
    pub dim: usize,
    /// One bit per basis vector, `1` for odd.
    pub parities: Vec<u8>,
    pub kind: SpecKind,
    #[serde(default)]
    pub params: Params,
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Invalid {
        path: path.into(),
        message: message.into(),
    }
}

fn scalar(path: &str, text: &str) -> Result<Scalar, CliError> {
    parse_scalar(text).ok_or_else(|| {
        invalid(
            path,
            format!("expected a rational \"num/den\", got {text:?}"),
        )
    })
}

fn parameter_matrix(
    space: &GradedSpace,
    rows: Option<&Vec<Vec<String>>>,
    path: &str,
) -> Result<Matrix, CliError> {
    let rows = rows.ok_or_else(|| invalid(path, "missing parameter matrix"))?;
    let n = space.dim();
    if rows.len() != n {
        return Err(invalid(
            path,
            format!("expected {n} rows, got {}", rows.len()),
        ));
    }
    let mut m = Matrix::zeros(n, n);
    for (a, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(invalid(
                format!("{path}[{a}]"),
                format!("expected {n} entries, got {}", row.len()),
            ));
        }
        for (b, text) in row.iter().enumerate() {
            m[(a, b)] = scalar(&format!("{path}[{a}][{b}]"), text)?;
        }
    }
    for a in 0..n {
        let diag = sign(space.parity(a));
        if m[(a, a)] != diag {
            return Err(invalid(
                format!("{path}[{a}][{a}]"),
                format!(
                    "diagonal condition: entry must be (-1)^parity = {}",
                    format_scalar(&diag)
                ),
            ));
        }
        for b in a + 1..n {
            if (&m[(a, b)] * &m[(b, a)]) != Scalar::from_integer(1.into()) {
                return Err(invalid(
                    format!("{path}[{b}][{a}]"),
                    format!(
                        "reciprocity condition: entry must be the inverse of [{a}][{b}] = {}",
                        format_scalar(&m[(a, b)])
                    ),
                ));
            }
        }
    }
    Ok(m)
}

impl ObjectSpecFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            invalid(
                if path == "." {
                    "(root)".to_string()
                } else {
                    path
                },
                e.into_inner().to_string(),
            )
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn space(&self) -> Result<GradedSpace, CliError> {
        if self.version != FORMAT_VERSION {
            return Err(invalid(
                "version",
                format!(
                    "unsupported format version {}, expected {FORMAT_VERSION}",
                    self.version
                ),
            ));
        }
        if self.dim == 0 {
            return Err(invalid("dim", "dimension must be positive"));
        }
        if self.parities.len() != self.dim {
            return Err(invalid(
                "parities",
                format!("expected {} bits, got {}", self.dim, self.parities.len()),
            ));
        }
        let mut bits = Vec::with_capacity(self.dim);
        for (i, &bit) in self.parities.iter().enumerate() {
            match bit {
                0 => bits.push(false),
                1 => bits.push(true),
                _ => {
                    return Err(invalid(
                        format!("parities[{i}]"),
                        format!("parity bit must be 0 or 1, got {bit}"),
                    ))
                }
            }
        }
        Ok(GradedSpace::new(bits))
    }

    /// Validates the file and builds the object it describes.
    pub fn to_object(&self) -> Result<QuantumObject, CliError> {
        let space = self.space()?;
        let n = space.dim();
        let core = |e: qlin_core::Error| invalid("params", e.to_string());
        match self.kind {
            SpecKind::Classical => Ok(make_classical(space)),
            SpecKind::Sudbery => {
                let q = parameter_matrix(&space, self.params.q.as_ref(), "params.q")?;
                let p = parameter_matrix(&space, self.params.p.as_ref(), "params.p")?;
                for a in 0..n {
                    for b in 0..n {
                        if (&q[(a, b)] + &p[(a, b)]).is_zero() {
                            return Err(invalid(
                                format!("params.p[{a}][{b}]"),
                                "complementarity condition: q + p must not vanish",
                            ));
                        }
                    }
                }
                make_sudbery(space, q, p).map_err(core)
            }
            SpecKind::Normalized => {
                let q = parameter_matrix(&space, self.params.q.as_ref(), "params.q")?;
                let eps = self
                    .params
                    .epsilon
                    .ok_or_else(|| invalid("params.epsilon", "missing sign ε"))?;
                let eps = Orientation::from_i64(eps).ok_or_else(|| {
                    invalid("params.epsilon", format!("ε must be 1 or -1, got {eps}"))
                })?;
                let text = self
                    .params
                    .lambda
                    .as_deref()
                    .ok_or_else(|| invalid("params.lambda", "missing λ"))?;
                let lambda = scalar("params.lambda", text)?;
                if lambda.is_zero() {
                    return Err(invalid("params.lambda", "λ must satisfy λ ≠ 0, ±i"));
                }
                make_normalized(space, q, eps, lambda).map_err(core)
            }
            SpecKind::General => {
                let comps = self.params.components.as_ref().ok_or_else(|| {
                    invalid("params.components", "missing component spanning vectors")
                })?;
                let mut parsed = Vec::with_capacity(comps.len());
                for (k, comp) in comps.iter().enumerate() {
                    let mut vectors = Vec::with_capacity(comp.len());
                    for (i, v) in comp.iter().enumerate() {
                        let path = format!("params.components[{k}][{i}]");
                        if v.len() != n * n {
                            return Err(invalid(
                                path,
                                format!("expected {} coordinates, got {}", n * n, v.len()),
                            ));
                        }
                        let coords = v
                            .iter()
                            .enumerate()
                            .map(|(j, t)| scalar(&format!("{path}[{j}]"), t))
                            .collect::<Result<Vec<_>, _>>()?;
                        vectors.push(coords);
                    }
                    parsed.push(vectors);
                }
                make_general(space, parsed).map_err(|e| invalid("params.components", e.to_string()))
            }
        }
    }

    /// The file describing `obj`.
    pub fn from_object(name: &str, obj: &QuantumObject) -> Self {
        let matrix = |m: &Matrix| -> Vec<Vec<String>> {
            (0..m.rows())
                .map(|a| (0..m.cols()).map(|b| format_scalar(&m[(a, b)])).collect())
                .collect()
        };
        let (kind, params) = match obj.kind() {
            ObjectKind::Classical => (SpecKind::Classical, Params::default()),
            ObjectKind::Sudbery { q, p } => (
                SpecKind::Sudbery,
                Params {
                    q: Some(matrix(q)),
                    p: Some(matrix(p)),
                    ..Params::default()
                },
            ),
            ObjectKind::Normalized { q, epsilon, lambda } => (
                SpecKind::Normalized,
                Params {
                    q: Some(matrix(q)),
                    epsilon: Some(epsilon.as_i64()),
                    lambda: Some(format_scalar(lambda)),
                    ..Params::default()
                },
            ),
            ObjectKind::General => (
                SpecKind::General,
                Params {
                    components: Some(
                        obj.components()
                            .iter()
                            .map(|c| {
                                c.iter()
                                    .map(|v| v.iter().map(format_scalar).collect())
                                    .collect()
                            })
                            .collect(),
                    ),
                    ..Params::default()
                },
            ),
        };
        ObjectSpecFile {
            version: FORMAT_VERSION,
            name: name.to_string(),
            dim: obj.dim(),
            parities: obj.space().parities().iter().map(|&p| p as u8).collect(),
            kind,
            params,
        }
    }
}
