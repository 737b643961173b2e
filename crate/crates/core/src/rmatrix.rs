//! Operators `B = Σ λ_k P_k` on tensor squares, the braid relation, and the
//! relation span of `B_V (T¹T²) = (T¹T²) B_W`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hom::{derive_relations_general, spans_equal, RelationSet};
use crate::linalg::{sign, span_basis, Matrix, Scalar, Vector};
use crate::object::QuantumObject;
use crate::rewrite::Alphabet;

/// `Σ λ_k P_k` for an object's decomposition.
#[derive(Debug, Clone)]
pub struct BMatrix {
    object: QuantumObject,
    coefficients: Vec<Scalar>,
    matrix: Matrix,
}

impl BMatrix {
    pub fn object(&self) -> &QuantumObject {
        &self.object
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.coefficients
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Projectors recovered from the matrix alone by Lagrange interpolation
    /// over the eigenvalues.
    pub fn eigenprojectors(&self) -> Vec<Matrix> {
        let size = self.matrix.rows();
        let id = Matrix::identity(size);
        self.coefficients
            .iter()
            .enumerate()
            .map(|(k, lk)| {
                let mut p = id.clone();
                for (j, lj) in self.coefficients.iter().enumerate() {
                    if j != k {
                        let factor = &self.matrix - &id.scale(lj);
                        p = &p * &factor.scale(&(lk - lj).recip());
                    }
                }
                p
            })
            .collect()
    }

    /// Eigenspaces as spanning sets, in coefficient order.
    pub fn eigenspaces(&self) -> Vec<Vec<Vector>> {
        let size = self.matrix.rows();
        self.eigenprojectors()
            .iter()
            .map(|p| span_basis(&p.transpose().row_vectors(), size))
            .collect()
    }
}

/// Builds `Σ λ_k P_k` with one pairwise-distinct coefficient per component.
pub fn build_b(alpha: &QuantumObject, coefficients: &[Scalar]) -> Result<BMatrix> {
    if coefficients.len() != alpha.component_count() {
        return Err(Error::WrongShape(format!(
            "{} coefficients for {} components",
            coefficients.len(),
            alpha.component_count()
        )));
    }
    for (i, a) in coefficients.iter().enumerate() {
        if let Some(j) = coefficients[i + 1..].iter().position(|b| b == a) {
            return Err(Error::RepeatedCoefficient(format!(
                "coefficients {i} and {} are both {a}",
                i + 1 + j
            )));
        }
    }
    let size = alpha.space().square_dim();
    let mut matrix = Matrix::zeros(size, size);
    for (p, l) in alpha.projectors()?.iter().zip(coefficients) {
        matrix = &matrix + &p.scale(l);
    }
    Ok(BMatrix {
        object: alpha.clone(),
        coefficients: coefficients.to_vec(),
        matrix,
    })
}

/// `B = P₁ - λ P₂` for a two-component object.
pub fn normalized_b(alpha: &QuantumObject, lambda: &Scalar) -> Result<BMatrix> {
    build_b(alpha, &[Scalar::one(), -lambda.clone()])
}

/// `B¹²B²³B¹² = B²³B¹²B²³` with `B¹² = B ⊗ 1` and `B²³ = 1 ⊗ B` on the
/// cube of the space. `B` is even, so no Koszul signs enter.
pub fn yang_baxter_check(b: &BMatrix) -> bool {
    braid_relation_holds(b.matrix(), b.object().dim())
}

/// Braid relation for an arbitrary operator on the tensor square of an
/// `n`-dimensional space.
pub fn braid_relation_holds(b: &Matrix, n: usize) -> bool {
    let id = Matrix::identity(n);
    let b12 = b.kron(&id);
    let b23 = id.kron(b);
    let left = &(&b12 * &b23) * &b12;
    let right = &(&b23 * &b12) * &b23;
    left == right
}

/// The super-swap `e^A ⊗ e^B ↦ (-1)^{ÃB̃} e^B ⊗ e^A`.
pub fn super_swap(space: &crate::graded::GradedSpace) -> Matrix {
    let n = space.dim();
    let size = n * n;
    let mut m = Matrix::zeros(size, size);
    for a in 0..n {
        for b in 0..n {
            m[(space.pair_index(b, a), space.pair_index(a, b))] =
                sign(space.parity(a) && space.parity(b));
        }
    }
    m
}

/// Relations read off from `B_V D - D B_W = 0`, where `D` is the coaction on
/// tensor squares: `D[(AB),(KL)] = (-1)^{(Ã+K̃)B̃} t_A^K t_B^L`.
pub fn rmatrix_relation_span(b_alpha: &BMatrix, b_beta: &BMatrix) -> RelationSet {
    let v = b_alpha.object().space();
    let w = b_beta.object().space();
    let (n, m) = (v.dim(), w.dim());
    let alphabet = Alphabet::matrix_entries(v.parities(), w.parities());
    let gens = n * m;
    let word = |a: usize, b: usize, k: usize, l: usize| alphabet.pair_index(a * m + k, b * m + l);
    let d_sign = |a: usize, b: usize, k: usize| sign((v.parity(a) ^ w.parity(k)) && v.parity(b));
    let bv = b_alpha.matrix();
    let bw = b_beta.matrix();
    let mut rows = Vec::with_capacity(n * n * m * m);
    for ab in 0..n * n {
        let (a, b) = v.pair_of(ab);
        for kl in 0..m * m {
            let (k, l) = w.pair_of(kl);
            let mut row = vec![Scalar::zero(); gens * gens];
            for cd in 0..n * n {
                let coeff = &bv[(ab, cd)];
                if !coeff.is_zero() {
                    let (c, d) = v.pair_of(cd);
                    row[word(c, d, k, l)] += coeff * d_sign(c, d, k);
                }
            }
            for nm in 0..m * m {
                let coeff = &bw[(nm, kl)];
                if !coeff.is_zero() {
                    let (nn, mm) = w.pair_of(nm);
                    row[word(a, b, nn, mm)] -= coeff * d_sign(a, b, nn);
                }
            }
            rows.push(row);
        }
    }
    RelationSet::from_rows(alphabet, rows)
}

/// True iff the R-matrix form with these operators gives exactly the
/// hom-algebra relations.
pub fn rmatrix_matches_hom(b_alpha: &BMatrix, b_beta: &BMatrix) -> Result<bool> {
    let hom = derive_relations_general(b_alpha.object(), b_beta.object())?;
    spans_equal(&rmatrix_relation_span(b_alpha, b_beta), &hom)
}

/// The probe values `λ` for which `P₁ - λP₂` satisfies the braid relation.
pub fn yang_baxter_solutions(alpha: &QuantumObject, probes: &[Scalar]) -> Result<Vec<Scalar>> {
    let mut out = Vec::new();
    for l in probes {
        if *l == -Scalar::one() {
            continue;
        }
        if yang_baxter_check(&normalized_b(alpha, l)?) {
            out.push(l.clone());
        }
    }
    Ok(out)
}

/// True iff some choice of `B_α ∈ {P₁ - c_α^{±1}P₂}` and
/// `B_β ∈ {P₁ - c_β^{±1}P₂}` presents the hom-algebra relations.
pub fn rmatrix_presentable(
    alpha: &QuantumObject,
    c_alpha: &Scalar,
    beta: &QuantumObject,
    c_beta: &Scalar,
) -> Result<bool> {
    for la in [c_alpha.clone(), c_alpha.recip()] {
        for lb in [c_beta.clone(), c_beta.recip()] {
            let ba = normalized_b(alpha, &la)?;
            let bb = normalized_b(beta, &lb)?;
            if rmatrix_matches_hom(&ba, &bb)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::GradedSpace;
    use crate::linalg::{int, rat, span_dim};
    use crate::object::{make_classical, make_general, make_sudbery};
    use crate::pbw::pbw_extract_constant;
    use crate::sampling::{
        non_transitive_object, object_with_constant, random_constant, random_space,
    };
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn params2(x: &Scalar) -> Matrix {
        Matrix::from_fn(2, 2, |a, b| match (a, b) {
            (1, 0) => x.clone(),
            (0, 1) => x.recip(),
            _ => Scalar::one(),
        })
    }

    #[test]
    fn classical_b_is_negative_super_swap() {
        for space in [
            GradedSpace::even(2),
            GradedSpace::with_dims(1, 1),
            GradedSpace::with_dims(2, 1),
        ] {
            let b = build_b(&make_classical(space.clone()), &[int(1), int(-1)]).unwrap();
            let swap = super_swap(&space);
            assert_eq!(*b.matrix(), -&swap);
            assert_eq!(
                b.matrix() * b.matrix(),
                Matrix::identity(space.square_dim())
            );
            assert!(yang_baxter_check(&b));
            assert!(braid_relation_holds(&swap, space.dim()));
        }
    }

    #[test]
    fn sudbery_eigenvalues_and_reconstruction() {
        let obj = make_sudbery(GradedSpace::even(2), params2(&int(3)), params2(&int(5))).unwrap();
        let c = int(7);
        let b = build_b(&obj, &[int(1), -c.clone()]).unwrap();
        let id = Matrix::identity(4);
        let char_poly = &(b.matrix() - &id) * &(b.matrix() + &id.scale(&c));
        assert!(char_poly.is_zero());
        let rebuilt = make_general(obj.space().clone(), b.eigenspaces()).unwrap();
        assert!(rebuilt.same_decomposition(&obj));
    }

    #[test]
    fn three_component_reconstruction() {
        let space = GradedSpace::even(2);
        let e = |a, b| space.basis_tensor(a, b);
        let sym: Vector = e(0, 1).iter().zip(&e(1, 0)).map(|(x, y)| x + y).collect();
        let comps = vec![vec![e(0, 0), e(1, 1)], vec![sym], vec![e(0, 1)]];
        let obj = make_general(space, comps).unwrap();
        let b = build_b(&obj, &[int(0), int(1), int(2)]).unwrap();
        let mut sum = Matrix::zeros(4, 4);
        for (p, l) in b.eigenprojectors().iter().zip(b.coefficients()) {
            sum = &sum + &p.scale(l);
        }
        assert_eq!(sum, *b.matrix());
        let rebuilt = make_general(obj.space().clone(), b.eigenspaces()).unwrap();
        assert!(rebuilt.same_decomposition(&obj));
        assert_eq!(span_dim(&b.eigenspaces()[0], 4), 2);
    }

    #[test]
    fn repeated_coefficients_rejected() {
        let obj = make_classical(GradedSpace::even(2));
        assert!(matches!(
            build_b(&obj, &[int(2), int(2)]),
            Err(Error::RepeatedCoefficient(_))
        ));
        assert!(matches!(
            normalized_b(&obj, &int(-1)),
            Err(Error::RepeatedCoefficient(_))
        ));
        assert!(matches!(
            build_b(&obj, &[int(1)]),
            Err(Error::WrongShape(_))
        ));
    }

    #[test]
    fn dimension_two_braid_for_both_orientations() {
        let obj =
            make_sudbery(GradedSpace::even(2), params2(&int(3)), params2(&rat(3, 4))).unwrap();
        let c = pbw_extract_constant(&obj).unwrap().constant;
        assert!(yang_baxter_check(&normalized_b(&obj, &c).unwrap()));
        assert!(yang_baxter_check(&normalized_b(&obj, &c.recip()).unwrap()));
        assert!(!yang_baxter_check(
            &normalized_b(&obj, &(&c + int(1))).unwrap()
        ));
    }

    #[test]
    fn non_transitive_braid_fails() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let space = GradedSpace::even(3);
        let obj = non_transitive_object(&mut rng, &space, &int(2));
        let b_plus = normalized_b(&obj, &int(2)).unwrap();
        let b_minus = normalized_b(&obj, &rat(1, 2)).unwrap();
        assert!(!yang_baxter_check(&b_plus) || !yang_baxter_check(&b_minus));
    }

    #[test]
    fn shared_coefficients_give_hom_relations() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..6 {
            let v = random_space(&mut rng, 1, 3);
            let w = random_space(&mut rng, 1, 2);
            let (ca, cb) = (random_constant(&mut rng), random_constant(&mut rng));
            let a = object_with_constant(&mut rng, &v, &ca);
            let b = object_with_constant(&mut rng, &w, &cb);
            let coeffs = [int(3), rat(-1, 2)];
            let ba = build_b(&a, &coeffs).unwrap();
            let bb = build_b(&b, &coeffs).unwrap();
            assert!(rmatrix_matches_hom(&ba, &bb).unwrap());
        }
    }

    #[test]
    fn classical_rmatrix_span_is_supercommutators() {
        let space = GradedSpace::with_dims(1, 1);
        let cl = make_classical(space);
        let b = build_b(&cl, &[int(1), int(-1)]).unwrap();
        assert!(rmatrix_matches_hom(&b, &b).unwrap());
    }

    #[test]
    fn dichotomy_on_two_dimensional_object() {
        let obj =
            make_sudbery(GradedSpace::even(2), params2(&int(2)), params2(&rat(2, 5))).unwrap();
        let c = pbw_extract_constant(&obj).unwrap().constant;
        let probes = [
            c.clone(),
            c.recip(),
            int(2),
            int(3),
            rat(1, 3),
            int(-2),
            int(1),
        ];
        let found = yang_baxter_solutions(&obj, &probes).unwrap();
        let mut expected = vec![c.clone(), c.recip()];
        expected.dedup();
        assert_eq!(found, expected);
    }
}
