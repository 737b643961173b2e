//! Objects of the quantum category: a graded space together with a
//! decomposition of `V′⊗V′` into complementary subspaces.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graded::{koszul_annihilator, GradedSpace};
use crate::linalg::{format_scalar, projectors, same_span, sign, span_dim, Matrix, Scalar, Vector};

/// The sign `ε` selecting the branch of a normalized object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Plus,
    Minus,
}

impl Orientation {
    pub fn as_i64(self) -> i64 {
        match self {
            Orientation::Plus => 1,
            Orientation::Minus => -1,
        }
    }

    pub fn from_i64(value: i64) -> Option<Self> {
        match value {
            1 => Some(Orientation::Plus),
            -1 => Some(Orientation::Minus),
            _ => None,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Orientation::Plus => Orientation::Minus,
            Orientation::Minus => Orientation::Plus,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObjectKind {
    Classical,
    /// Relations `x^A x^B = q^{AB} x^B x^A` and
    /// `ξ^A ξ^B = -(-1)^{Ã+B̃} p^{AB} ξ^B ξ^A`.
    Sudbery {
        q: Matrix,
        p: Matrix,
    },
    /// A Sudbery object with `q̂^{AB} = q^{AB} λ^{ε·sign(A-B)}` and
    /// `p̂^{AB} = q^{AB} λ^{-ε·sign(A-B)}`.
    Normalized {
        q: Matrix,
        epsilon: Orientation,
        lambda: Scalar,
    },
    General,
}

/// A graded space with `s` complementary subspaces of its tensor square,
/// each stored as a list of spanning vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumObject {
    space: GradedSpace,
    components: Vec<Vec<Vector>>,
    kind: ObjectKind,
}

impl QuantumObject {
    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn components(&self) -> &[Vec<Vector>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn component_dims(&self) -> Vec<usize> {
        let n = self.space.square_dim();
        self.components.iter().map(|c| span_dim(c, n)).collect()
    }

    pub fn kind(&self) -> &ObjectKind {
        &self.kind
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            ObjectKind::Classical => "classical",
            ObjectKind::Sudbery { .. } => "sudbery",
            ObjectKind::Normalized { .. } => "normalized",
            ObjectKind::General => "general",
        }
    }

    /// Projectors onto the components, derived from the spanning sets.
    pub fn projectors(&self) -> Result<Vec<Matrix>> {
        projectors(&self.components, self.space.square_dim())
    }

    /// The Sudbery parameter matrices `(Q, P)` when the object has them.
    /// Classical objects report `q^{AB} = p^{AB} = (-1)^{ÃB̃}`.
    pub fn sudbery_parameters(&self) -> Option<(Matrix, Matrix)> {
        match &self.kind {
            ObjectKind::Classical => {
                let q = classical_parameters(&self.space);
                Some((q.clone(), q))
            }
            ObjectKind::Sudbery { q, p } => Some((q.clone(), p.clone())),
            ObjectKind::Normalized { q, epsilon, lambda } => {
                Some(normalized_parameters(q, *epsilon, lambda))
            }
            ObjectKind::General => None,
        }
    }

    /// True when both objects live on the same graded space and have the same
    /// component subspaces, in order.
    pub fn same_decomposition(&self, other: &QuantumObject) -> bool {
        let n = self.space.square_dim();
        self.space == other.space
            && self.components.len() == other.components.len()
            && self
                .components
                .iter()
                .zip(&other.components)
                .all(|(a, b)| same_span(a, b, n))
    }
}

/// `(-1)^{ÃB̃}` parameter matrix of the undeformed space.
pub fn classical_parameters(space: &GradedSpace) -> Matrix {
    let n = space.dim();
    Matrix::from_fn(n, n, |a, b| sign(space.parity(a) && space.parity(b)))
}

fn lambda_power(lambda: &Scalar, exponent: i64) -> Scalar {
    match exponent {
        0 => Scalar::one(),
        e if e > 0 => lambda.clone(),
        _ => lambda.recip(),
    }
}

fn normalized_parameters(q: &Matrix, epsilon: Orientation, lambda: &Scalar) -> (Matrix, Matrix) {
    let n = q.rows();
    let eps = epsilon.as_i64();
    let step = |a: usize, b: usize| (a as i64 - b as i64).signum();
    let q_hat = Matrix::from_fn(n, n, |a, b| {
        &q[(a, b)] * lambda_power(lambda, eps * step(a, b))
    });
    let p_hat = Matrix::from_fn(n, n, |a, b| {
        &q[(a, b)] * lambda_power(lambda, -eps * step(a, b))
    });
    (q_hat, p_hat)
}

fn check_parameter_matrix(space: &GradedSpace, m: &Matrix, name: &str) -> Result<()> {
    let n = space.dim();
    if m.rows() != n || m.cols() != n {
        return Err(Error::BadParameters(format!(
            "{name}: expected a {n}x{n} matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    for a in 0..n {
        let expected = sign(space.parity(a));
        if m[(a, a)] != expected {
            return Err(Error::BadParameters(format!(
                "{name}[{a}][{a}]: diagonal must equal (-1)^parity = {}, got {}",
                format_scalar(&expected),
                format_scalar(&m[(a, a)])
            )));
        }
        for b in a + 1..n {
            if &m[(a, b)] * &m[(b, a)] != Scalar::one() {
                return Err(Error::BadParameters(format!(
                    "{name}[{a}][{b}]: reciprocity {name}^(AB)·{name}^(BA) = 1 violated ({} · {})",
                    format_scalar(&m[(a, b)]),
                    format_scalar(&m[(b, a)])
                )));
            }
        }
    }
    Ok(())
}

/// `e^A⊗e^B + s·e^B⊗e^A` for all `A ≤ B`, dropping zero vectors.
fn pair_span(space: &GradedSpace, coefficient: impl Fn(usize, usize) -> Scalar) -> Vec<Vector> {
    let n = space.dim();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a..n {
            let mut v = vec![Scalar::zero(); space.square_dim()];
            v[space.pair_index(a, b)] += Scalar::one();
            v[space.pair_index(b, a)] += coefficient(a, b);
            if v.iter().any(|x| !x.is_zero()) {
                out.push(v);
            }
        }
    }
    out
}

/// The undeformed space: `I` spanned by the super-antisymmetric tensors,
/// `J` by the super-symmetric ones.
pub fn make_classical(space: GradedSpace) -> QuantumObject {
    let s = |a: usize, b: usize| sign(space.parity(a) && space.parity(b));
    let i = pair_span(&space, |a, b| -s(a, b));
    let j = pair_span(&space, s);
    QuantumObject {
        components: vec![i, j],
        space,
        kind: ObjectKind::Classical,
    }
}

/// Sudbery object: `I = span{e^A e^B - q^{AB} e^B e^A}`,
/// `J = span{e^A e^B + p^{AB} e^B e^A}`.
pub fn make_sudbery(space: GradedSpace, q: Matrix, p: Matrix) -> Result<QuantumObject> {
    check_parameter_matrix(&space, &q, "q")?;
    check_parameter_matrix(&space, &p, "p")?;
    let n = space.dim();
    for a in 0..n {
        for b in 0..n {
            if (&q[(a, b)] + &p[(a, b)]).is_zero() {
                return Err(Error::NotComplementary(format!(
                    "complementarity condition q^(AB) + p^(AB) ≠ 0 fails at [{a}][{b}]: q = {}, p = {}",
                    format_scalar(&q[(a, b)]),
                    format_scalar(&p[(a, b)])
                )));
            }
        }
    }
    let i = pair_span(&space, |a, b| -q[(a, b)].clone());
    let j = pair_span(&space, |a, b| p[(a, b)].clone());
    let obj = QuantumObject {
        components: vec![i, j],
        space,
        kind: ObjectKind::Sudbery { q, p },
    };
    obj.projectors()?;
    Ok(obj)
}

/// Normalized object `(V, Q, ε)` with deformation parameter `λ`.
pub fn make_normalized(
    space: GradedSpace,
    q: Matrix,
    epsilon: Orientation,
    lambda: Scalar,
) -> Result<QuantumObject> {
    if lambda.is_zero() {
        return Err(Error::BadParameters(
            "lambda must satisfy λ ≠ 0, ±i".to_string(),
        ));
    }
    check_parameter_matrix(&space, &q, "q")?;
    let (q_hat, p_hat) = normalized_parameters(&q, epsilon, &lambda);
    let obj = make_sudbery(space, q_hat, p_hat)?;
    Ok(QuantumObject {
        kind: ObjectKind::Normalized { q, epsilon, lambda },
        ..obj
    })
}

/// An object with user-supplied components (any `s ≥ 1`).
pub fn make_general(space: GradedSpace, components: Vec<Vec<Vector>>) -> Result<QuantumObject> {
    let n = space.square_dim();
    for (k, comp) in components.iter().enumerate() {
        if let Some(v) = comp.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "component {k}: vector of length {} in a tensor square of dimension {n}",
                v.len()
            )));
        }
    }
    let obj = QuantumObject {
        space,
        components,
        kind: ObjectKind::General,
    };
    obj.projectors()?;
    Ok(obj)
}

/// The quantum dual space `(V′, Ann J, Ann I)`.
pub fn dual_object(alpha: &QuantumObject) -> Result<QuantumObject> {
    if alpha.component_count() != 2 {
        return Err(Error::WrongShape(format!(
            "dual objects are defined for two components, got {}",
            alpha.component_count()
        )));
    }
    let space = alpha.space.dual();
    let ann_j = koszul_annihilator(&alpha.space, &alpha.components[1]);
    let ann_i = koszul_annihilator(&alpha.space, &alpha.components[0]);
    let kind = match &alpha.kind {
        ObjectKind::Classical => ObjectKind::Classical,
        ObjectKind::Sudbery { q, p } => ObjectKind::Sudbery {
            q: p.transpose(),
            p: q.transpose(),
        },
        ObjectKind::Normalized { q, epsilon, lambda } => ObjectKind::Normalized {
            q: q.transpose(),
            epsilon: *epsilon,
            lambda: lambda.clone(),
        },
        ObjectKind::General => ObjectKind::General,
    };
    Ok(QuantumObject {
        space,
        components: vec![ann_j, ann_i],
        kind,
    })
}
