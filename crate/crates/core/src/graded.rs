//! Z2-graded index bookkeeping.
//!
//! Sign conventions used across the crate:
//!
//! * pairing of degree-2 words: `⟨e_A e_B, e^C e^D⟩ = (-1)^{B̃C̃} δ_A^C δ_B^D`;
//! * product in a tensor product of algebras:
//!   `(x ⊗ y)(u ⊗ v) = (-1)^{ỹũ} (xu ⊗ yv)`;
//! * parity reversion on the tensor square:
//!   `(e^A ⊗ e^B)^Π = (-1)^{Ã} Πe^A ⊗ Πe^B`.
//!
//! Coordinates of an element of `V′⊗V′` are indexed by `A * dim + B`.

use crate::error::{Error, Result};
use crate::linalg::{sign, Scalar, Vector};
use num_traits::Zero;

/// A finite-dimensional Z2-graded vector space, described by the parity of
/// each basis vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedSpace {
    parities: Vec<bool>,
}

impl GradedSpace {
    pub fn new(parities: Vec<bool>) -> Self {
        GradedSpace { parities }
    }

    /// A purely even space of dimension `n`.
    pub fn even(n: usize) -> Self {
        GradedSpace::new(vec![false; n])
    }

    /// The `(even | odd)` space with even basis vectors listed first.
    pub fn with_dims(even: usize, odd: usize) -> Self {
        let mut p = vec![false; even];
        p.extend(std::iter::repeat_n(true, odd));
        GradedSpace::new(p)
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn parity(&self, index: usize) -> bool {
        self.parities[index]
    }

    pub fn parities(&self) -> &[bool] {
        &self.parities
    }

    pub fn is_purely_even(&self) -> bool {
        self.parities.iter().all(|p| !p)
    }

    /// `(number of even, number of odd)` basis vectors.
    pub fn super_dims(&self) -> (usize, usize) {
        let odd = self.parities.iter().filter(|p| **p).count();
        (self.dim() - odd, odd)
    }

    /// The dual space. The dual basis has the same parities.
    pub fn dual(&self) -> GradedSpace {
        self.clone()
    }

    /// Dimension of the tensor square.
    pub fn square_dim(&self) -> usize {
        self.dim() * self.dim()
    }

    /// Coordinate index of `e^A ⊗ e^B`.
    pub fn pair_index(&self, a: usize, b: usize) -> usize {
        a * self.dim() + b
    }

    /// Inverse of [`GradedSpace::pair_index`].
    pub fn pair_of(&self, index: usize) -> (usize, usize) {
        (index / self.dim(), index % self.dim())
    }

    /// The vector `e^A ⊗ e^B` in coordinates.
    pub fn basis_tensor(&self, a: usize, b: usize) -> Vector {
        let mut v = vec![Scalar::zero(); self.square_dim()];
        v[self.pair_index(a, b)] = Scalar::from_integer(1.into());
        v
    }
}

/// An ordered list of basis indices of a graded space.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorWord {
    pub factors: Vec<usize>,
}

impl TensorWord {
    pub fn new(factors: Vec<usize>) -> Self {
        TensorWord { factors }
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    /// Sum of factor parities mod 2.
    pub fn parity(&self, space: &GradedSpace) -> bool {
        self.factors
            .iter()
            .fold(false, |acc, &i| acc ^ space.parity(i))
    }
}

/// All `dim^degree` words in lexicographic order.
pub fn tensor_power_basis(space: &GradedSpace, degree: usize) -> Vec<TensorWord> {
    let n = space.dim();
    let mut words = vec![Vec::new()];
    for _ in 0..degree {
        words = words
            .into_iter()
            .flat_map(|w| {
                (0..n).map(move |i| {
                    let mut w = w.clone();
                    w.push(i);
                    w
                })
            })
            .collect();
    }
    words.into_iter().map(TensorWord::new).collect()
}

/// `⟨e_A e_B, e^C e^D⟩ = (-1)^{B̃C̃} δ_A^C δ_B^D` for degree-2 words.
pub fn koszul_pairing(
    space: &GradedSpace,
    lower: &TensorWord,
    upper: &TensorWord,
) -> Result<Scalar> {
    if lower.degree() != 2 || upper.degree() != 2 {
        return Err(Error::DegreeMismatch(format!(
            "pairing is defined on degree-2 words, got degrees {} and {}",
            lower.degree(),
            upper.degree()
        )));
    }
    let (a, b) = (lower.factors[0], lower.factors[1]);
    let (c, d) = (upper.factors[0], upper.factors[1]);
    if a != c || b != d {
        return Ok(Scalar::zero());
    }
    Ok(sign(space.parity(b) && space.parity(c)))
}

/// Diagonal of the degree-2 Gram matrix: the pairing of `e_A e_B` with
/// `e^A e^B`, indexed by [`GradedSpace::pair_index`].
pub fn pairing_signs(space: &GradedSpace) -> Vec<Scalar> {
    (0..space.square_dim())
        .map(|i| {
            let (a, b) = space.pair_of(i);
            sign(space.parity(a) && space.parity(b))
        })
        .collect()
}

/// Pairs `g ∈ V⊗V` against `f ∈ V′⊗V′` (both in coordinates).
pub fn pair_tensors(space: &GradedSpace, g: &[Scalar], f: &[Scalar]) -> Scalar {
    let signs = pairing_signs(space);
    g.iter()
        .zip(f)
        .zip(&signs)
        .filter(|((x, y), _)| !x.is_zero() && !y.is_zero())
        .map(|((x, y), s)| x * y * s)
        .sum()
}

/// Annihilator of a subspace of `V′⊗V′` inside `V⊗V` under the Koszul
/// pairing.
pub fn koszul_annihilator(space: &GradedSpace, spanning: &[Vector]) -> Vec<Vector> {
    let signs = pairing_signs(space);
    let twisted: Vec<Vector> = spanning
        .iter()
        .map(|f| f.iter().zip(&signs).map(|(x, s)| x * s).collect())
        .collect();
    crate::linalg::annihilator(&twisted, space.square_dim())
}

/// The parity-reversion isomorphism `V′⊗V′ → ΠV′⊗ΠV′` in coordinates.
pub fn pi_isomorphism(space: &GradedSpace, tensor: &[Scalar]) -> Vector {
    tensor
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let (a, _) = space.pair_of(i);
            x * sign(space.parity(a))
        })
        .collect()
}

/// Inverse of [`pi_isomorphism`]. The map is an involution in coordinates.
pub fn pi_inverse(space: &GradedSpace, tensor: &[Scalar]) -> Vector {
    pi_isomorphism(space, tensor)
}
