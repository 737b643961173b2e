//! Defining relations of the hom-algebras `M_{αβ}`.
//!
//! The general derivation pairs annihilators of the source components with
//! the target components; the closed Sudbery formula is an independent second
//! route used for cross-validation.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graded::koszul_annihilator;
use crate::linalg::{in_span, same_span, sign, span_basis, span_dim, Matrix, Scalar, Vector};
use crate::object::{dual_object, QuantumObject};
use crate::rewrite::{Alphabet, NCPoly};

/// The span of a family of quadratic relations, kept both as polynomials and
/// as a coefficient matrix over the degree-2 word basis.
#[derive(Debug, Clone)]
pub struct RelationSet {
    alphabet: Alphabet,
    polys: Vec<NCPoly>,
    matrix: Matrix,
}

impl RelationSet {
    /// Builds a relation set from coordinate rows. Zero rows are dropped and
    /// every relation is scaled to have leading coefficient 1.
    pub fn from_rows(alphabet: Alphabet, rows: Vec<Vector>) -> Self {
        let polys: Vec<NCPoly> = rows
            .iter()
            .map(|r| NCPoly::from_pair_coordinates(&alphabet, r).monic())
            .filter(|p| !p.is_zero())
            .collect();
        Self::from_polys(alphabet, polys)
    }

    pub fn from_polys(alphabet: Alphabet, polys: Vec<NCPoly>) -> Self {
        let n2 = alphabet.len() * alphabet.len();
        let rows: Vec<Vector> = polys
            .iter()
            .map(|p| p.pair_coordinates(&alphabet))
            .collect();
        let matrix = Matrix::from_rows(&rows, n2);
        RelationSet {
            alphabet,
            polys,
            matrix,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn polys(&self) -> &[NCPoly] {
        &self.polys
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn word_count(&self) -> usize {
        self.alphabet.len() * self.alphabet.len()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// A basis of the relation span in reduced echelon form.
    pub fn basis(&self) -> Vec<Vector> {
        span_basis(&self.matrix.row_vectors(), self.word_count())
    }

    /// Dimension of the degree-2 part of the quotient algebra.
    pub fn quotient_dim(&self) -> usize {
        self.word_count() - self.rank()
    }

    /// True iff the quadratic polynomial lies in the relation span.
    pub fn contains(&self, poly: &NCPoly) -> bool {
        in_span(
            &poly.pair_coordinates(&self.alphabet),
            &self.matrix.row_vectors(),
            self.word_count(),
        )
    }

    /// Functionals on degree-2 words vanishing on every relation. Pairing a
    /// degree-2 element with these gives its coordinates in the quotient.
    pub fn quotient_functionals(&self) -> Vec<Vector> {
        if self.matrix.rows() == 0 {
            return crate::linalg::annihilator(&[], self.word_count());
        }
        self.matrix.kernel_basis()
    }

    /// The same relations with one coefficient perturbed, for negative
    /// controls.
    pub fn corrupted(&self, relation: usize, delta: &Scalar) -> RelationSet {
        let mut polys = self.polys.clone();
        let (word, _) = polys[relation]
            .terms()
            .last()
            .map(|(w, c)| (w.clone(), c.clone()))
            .expect("nonzero relation");
        polys[relation].add_term(word, delta.clone());
        RelationSet::from_polys(self.alphabet.clone(), polys)
    }
}

/// The hom-algebra `M_{αβ}` with generators `t_A^K`.
#[derive(Debug, Clone)]
pub struct HomAlgebra {
    source: QuantumObject,
    target: QuantumObject,
    relations: RelationSet,
}

impl HomAlgebra {
    /// Derives the relations by the general annihilator formula.
    pub fn new(source: &QuantumObject, target: &QuantumObject) -> Result<Self> {
        let relations = derive_relations_general(source, target)?;
        let expected = expected_relation_count(source, target);
        assert_eq!(
            relations.rank(),
            expected,
            "relation span dimension differs from Σ dim Ann I_k^V · dim I_k^W"
        );
        Ok(HomAlgebra {
            source: source.clone(),
            target: target.clone(),
            relations,
        })
    }

    pub fn source(&self) -> &QuantumObject {
        &self.source
    }

    pub fn target(&self) -> &QuantumObject {
        &self.target
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.relations.alphabet()
    }

    pub fn relations(&self) -> &RelationSet {
        &self.relations
    }

    pub fn generator_count(&self) -> usize {
        self.alphabet().len()
    }

    /// Generator index of `t_A^K`.
    pub fn generator(&self, a: usize, k: usize) -> usize {
        a * self.target.dim() + k
    }
}

/// `Σ_k dim(Ann I_k^V) · dim(I_k^W)`.
pub fn expected_relation_count(source: &QuantumObject, target: &QuantumObject) -> usize {
    let n2 = source.space().square_dim();
    source
        .component_dims()
        .iter()
        .zip(target.component_dims())
        .map(|(dv, dw)| (n2 - dv) * dw)
        .sum()
}

fn hom_alphabet(source: &QuantumObject, target: &QuantumObject) -> Alphabet {
    Alphabet::matrix_entries(source.space().parities(), target.space().parities())
}

/// Relations `(-1)^{B̃K̃} g^{AB} f_{KL} t_A^K t_B^L = 0` for `f` in a basis of
/// `I_k^W` and `g` in a basis of `Ann I_k^V`, for every component `k`.
pub fn derive_relations_general(
    alpha: &QuantumObject,
    beta: &QuantumObject,
) -> Result<RelationSet> {
    if alpha.component_count() != beta.component_count() {
        return Err(Error::ComponentCountMismatch {
            source_count: alpha.component_count(),
            target_count: beta.component_count(),
        });
    }
    let v = alpha.space();
    let w = beta.space();
    let (n, m) = (v.dim(), w.dim());
    let alphabet = hom_alphabet(alpha, beta);
    let gens = n * m;
    let mut rows = Vec::new();
    for (comp_v, comp_w) in alpha.components().iter().zip(beta.components()) {
        let ann = koszul_annihilator(v, comp_v);
        let fs = span_basis(comp_w, w.square_dim());
        for g in &ann {
            for f in &fs {
                let mut row = vec![Scalar::zero(); gens * gens];
                for (gi, gv) in g.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    let (a, b) = v.pair_of(gi);
                    for (fi, fv) in f.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                        let (k, l) = w.pair_of(fi);
                        let s = sign(v.parity(b) && w.parity(k));
                        let word = alphabet.pair_index(a * m + k, b * m + l);
                        row[word] += gv * fv * s;
                    }
                }
                rows.push(row);
            }
        }
    }
    Ok(RelationSet::from_rows(alphabet, rows))
}

/// The closed Sudbery form, for every `A, B, K, L`:
///
/// `t_A^K t_B^L - (p_{BA}+q_{BA})/(p^{LK}+q^{LK}) (-1)^{ÃL̃+B̃K̃} t_B^L t_A^K
///   = (p_{BA}p^{LK} - q_{BA}q^{LK})/(p^{LK}+q^{LK}) (-1)^{(Ã+B̃)K̃} t_B^K t_A^L`.
pub fn derive_relations_sudbery(
    alpha: &QuantumObject,
    beta: &QuantumObject,
) -> Result<RelationSet> {
    let (Some((qv, pv)), Some((qw, pw))) = (alpha.sudbery_parameters(), beta.sudbery_parameters())
    else {
        return Err(Error::BadParameters(
            "the closed relation form needs Sudbery parameters on both objects".to_string(),
        ));
    };
    let v = alpha.space();
    let w = beta.space();
    let (n, m) = (v.dim(), w.dim());
    let alphabet = hom_alphabet(alpha, beta);
    let t = |a: usize, k: usize| a * m + k;
    let mut polys = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for k in 0..m {
                for l in 0..m {
                    let denom = &pw[(l, k)] + &qw[(l, k)];
                    let swap = (&pv[(b, a)] + &qv[(b, a)]) / &denom
                        * sign((v.parity(a) && w.parity(l)) ^ (v.parity(b) && w.parity(k)));
                    let cross = (&pv[(b, a)] * &pw[(l, k)] - &qv[(b, a)] * &qw[(l, k)]) / &denom
                        * sign((v.parity(a) ^ v.parity(b)) && w.parity(k));
                    let mut p =
                        NCPoly::monomial(vec![t(a, k), t(b, l)], Scalar::from_integer(1.into()));
                    p.add_term(vec![t(b, l), t(a, k)], -swap);
                    p.add_term(vec![t(b, k), t(a, l)], -cross);
                    if !p.is_zero() {
                        polys.push(p.monic());
                    }
                }
            }
        }
    }
    Ok(RelationSet::from_polys(alphabet, polys))
}

/// True iff the two relation sets have the same span.
pub fn spans_equal(r1: &RelationSet, r2: &RelationSet) -> Result<bool> {
    if r1.alphabet() != r2.alphabet() {
        return Err(Error::AlphabetMismatch(format!(
            "alphabets of size {} and {} differ",
            r1.alphabet().len(),
            r2.alphabet().len()
        )));
    }
    let n2 = r1.word_count();
    Ok(same_span(
        &r1.matrix().row_vectors(),
        &r2.matrix().row_vectors(),
        n2,
    ))
}

/// Relations on the coefficients `t_{AB}` of bilinear forms, read as
/// homomorphisms from `α` to its dual.
pub fn bilinear_form_relations(alpha: &QuantumObject) -> Result<RelationSet> {
    let dual = dual_object(alpha)?;
    derive_relations_general(alpha, &dual)
}

/// Dimension of the relation span, independent of how it was produced.
pub fn relation_span_dim(r: &RelationSet) -> usize {
    span_dim(&r.matrix().row_vectors(), r.word_count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::GradedSpace;
    use crate::linalg::{int, rat};
    use crate::object::{make_classical, make_sudbery};
    use num_traits::One;

    fn params2(x: &Scalar) -> Matrix {
        Matrix::from_fn(2, 2, |a, b| match (a, b) {
            (1, 0) => x.clone(),
            (0, 1) => x.recip(),
            _ => Scalar::one(),
        })
    }

    fn even2(p: i64, q: i64) -> QuantumObject {
        make_sudbery(GradedSpace::even(2), params2(&int(q)), params2(&int(p))).unwrap()
    }

    fn poly(terms: &[(&[usize], Scalar)]) -> NCPoly {
        NCPoly::from_terms(terms.iter().map(|(w, c)| (w.to_vec(), c.clone())))
    }

    /// The six relations of the even 2x2 hom-algebra written out by hand.
    fn even_two_by_two(pa: &Scalar, qa: &Scalar, pb: &Scalar, qb: &Scalar) -> Vec<NCPoly> {
        let (a, b, c, d) = (0, 1, 2, 3);
        let one = Scalar::one();
        let sb = pb + qb;
        let ratio = (pa + qa) / &sb;
        vec![
            poly(&[(&[a, b], one.clone()), (&[b, a], -qb.recip())]),
            poly(&[(&[a, c], one.clone()), (&[c, a], -pa.clone())]),
            poly(&[
                (&[a, d], one.clone()),
                (&[d, a], -ratio.clone()),
                (&[c, b], -(pa * pb - qa * qb) / &sb),
            ]),
            poly(&[
                (&[b, c], one.clone()),
                (&[c, b], -&ratio * pb * qb),
                (&[d, a], -(pa * qb - qa * pb) / &sb),
            ]),
            poly(&[(&[b, d], one.clone()), (&[d, b], -pa.clone())]),
            poly(&[(&[c, d], one), (&[d, c], -qb.recip())]),
        ]
    }

    #[test]
    fn even_two_by_two_instance() {
        let alpha = even2(2, 3);
        let beta = even2(4, 5);
        let general = derive_relations_general(&alpha, &beta).unwrap();
        let closed = derive_relations_sudbery(&alpha, &beta).unwrap();
        let expected = RelationSet::from_polys(
            general.alphabet().clone(),
            even_two_by_two(&int(2), &int(3), &int(4), &int(5)),
        );
        assert_eq!(general.rank(), 6);
        assert!(spans_equal(&general, &expected).unwrap());
        assert!(spans_equal(&closed, &expected).unwrap());
        let ad = poly(&[
            (&[0, 3], int(1)),
            (&[3, 0], rat(-5, 9)),
            (&[2, 1], rat(7, 9)),
        ]);
        assert!(general.contains(&ad));
    }

    #[test]
    fn alternate_bc_relation_follows() {
        let (pa, qa, pb, qb) = (int(2), int(3), int(4), int(5));
        let rels = derive_relations_general(&even2(2, 3), &even2(4, 5)).unwrap();
        let sa = &pa + &qa;
        let alt = poly(&[
            (&[1, 2], int(1)),
            (&[2, 1], -(&pb + &qb) / &sa * &pa * &qa),
            (&[0, 3], -(&pa * &qb - &qa * &pb) / &sa),
        ]);
        assert!(rels.contains(&alt));
    }

    #[test]
    fn classical_relations_are_supercommutators() {
        for (v, w) in [
            (GradedSpace::even(2), GradedSpace::even(2)),
            (GradedSpace::with_dims(1, 1), GradedSpace::with_dims(1, 1)),
            (GradedSpace::with_dims(2, 1), GradedSpace::with_dims(1, 1)),
        ] {
            let alpha = make_classical(v);
            let beta = make_classical(w);
            let rels = derive_relations_general(&alpha, &beta).unwrap();
            let alphabet = rels.alphabet().clone();
            let n = alphabet.len();
            let mut comm = Vec::new();
            for x in 0..n {
                for y in 0..n {
                    let s = sign(alphabet.parity(x) && alphabet.parity(y));
                    let mut p = NCPoly::monomial(vec![x, y], int(1));
                    p.add_term(vec![y, x], -s);
                    comm.push(p);
                }
            }
            let expected = RelationSet::from_polys(alphabet, comm);
            assert!(spans_equal(&rels, &expected).unwrap());
        }
    }

    #[test]
    fn relation_count_matches_formula() {
        let v = GradedSpace::new(vec![false, true, false]);
        let q = Matrix::from_fn(3, 3, |a, b| {
            if a == b {
                sign(v.parity(a))
            } else if a < b {
                int((a + 2 * b) as i64)
            } else {
                int((b + 2 * a) as i64).recip()
            }
        });
        let p = Matrix::from_fn(3, 3, |a, b| {
            if a == b {
                sign(v.parity(a))
            } else if a < b {
                rat(1, (3 + a + b) as i64)
            } else {
                int((3 + a + b) as i64)
            }
        });
        let alpha = make_sudbery(v, q, p).unwrap();
        let beta = make_classical(GradedSpace::with_dims(1, 1));
        let hom = HomAlgebra::new(&alpha, &beta).unwrap();
        assert_eq!(
            hom.relations().rank(),
            expected_relation_count(&alpha, &beta)
        );
        assert_eq!(hom.relations().polys().len(), hom.relations().rank());
        let closed = derive_relations_sudbery(&alpha, &beta).unwrap();
        assert!(spans_equal(hom.relations(), &closed).unwrap());
    }

    #[test]
    fn single_row_and_column_forms() {
        let v = GradedSpace::new(vec![false, true]);
        let w = GradedSpace::new(vec![true, false]);
        let qv = params2(&int(3)).scale(&int(1));
        let mut qv = qv;
        qv[(1, 1)] = int(-1);
        let mut pv = params2(&int(7));
        pv[(1, 1)] = int(-1);
        let mut qw = params2(&rat(2, 5));
        qw[(0, 0)] = int(-1);
        let mut pw = params2(&int(11));
        pw[(0, 0)] = int(-1);
        let alpha = make_sudbery(v.clone(), qv.clone(), pv.clone()).unwrap();
        let beta = make_sudbery(w.clone(), qw.clone(), pw.clone()).unwrap();
        let rels = derive_relations_general(&alpha, &beta).unwrap();
        let t = |a: usize, k: usize| a * 2 + k;
        let two = int(2);
        for k in 0..2 {
            let kk = sign(w.parity(k));
            for a in 0..2 {
                for b in 0..2 {
                    // Same column.
                    let num = &pv[(b, a)] * (int(1) + &kk) + &qv[(b, a)] * (int(1) - &kk);
                    let den = &two * sign((v.parity(a) ^ v.parity(b) ^ true) && w.parity(k));
                    let mut p = NCPoly::monomial(vec![t(a, k), t(b, k)], int(1));
                    p.add_term(vec![t(b, k), t(a, k)], -(num / den));
                    assert!(rels.contains(&p), "column relation {a} {b} {k}");
                }
            }
        }
        for a in 0..2 {
            let aa = sign(v.parity(a));
            for k in 0..2 {
                for l in 0..2 {
                    let num = &two * sign(v.parity(a) && (w.parity(k) ^ w.parity(l) ^ true));
                    let den = &pw[(l, k)] * (int(1) - &aa) + &qw[(l, k)] * (int(1) + &aa);
                    let mut p = NCPoly::monomial(vec![t(a, k), t(a, l)], int(1));
                    p.add_term(vec![t(a, l), t(a, k)], -(num / den));
                    assert!(rels.contains(&p), "row relation {a} {k} {l}");
                }
            }
        }
    }

    #[test]
    fn linear_forms_and_dual_space() {
        let alpha = even2(3, 7);
        let point = make_classical(GradedSpace::even(1));
        let forms = derive_relations_general(&alpha, &point).unwrap();
        let (_, p) = alpha.sudbery_parameters().unwrap();
        let expected: Vec<NCPoly> = (0..2)
            .flat_map(|a| (0..2).map(move |b| (a, b)))
            .map(|(a, b)| {
                let mut poly = NCPoly::monomial(vec![a, b], int(1));
                poly.add_term(vec![b, a], -p[(a, b)].recip());
                poly
            })
            .collect();
        let expected = RelationSet::from_polys(forms.alphabet().clone(), expected);
        assert!(spans_equal(&forms, &expected).unwrap());
    }

    // Odd forms on an even space must anticommute in the classical limit, which
    // fixes the sign in front of the swapped term.
    #[test]
    fn odd_linear_forms() {
        let v = GradedSpace::new(vec![false, true]);
        let mut q = params2(&int(3));
        q[(1, 1)] = int(-1);
        let mut p = params2(&int(5));
        p[(1, 1)] = int(-1);
        let alpha = make_sudbery(v.clone(), q.clone(), p).unwrap();
        let odd_point = make_classical(GradedSpace::new(vec![true]));
        let forms = derive_relations_general(&alpha, &odd_point).unwrap();
        let expected: Vec<NCPoly> = (0..2)
            .flat_map(|a| (0..2).map(move |b| (a, b)))
            .map(|(a, b)| {
                let mut poly = NCPoly::monomial(vec![a, b], int(1));
                poly.add_term(
                    vec![b, a],
                    sign(v.parity(a) ^ v.parity(b)) * q[(a, b)].recip(),
                );
                poly
            })
            .collect();
        let expected = RelationSet::from_polys(forms.alphabet().clone(), expected);
        assert!(spans_equal(&forms, &expected).unwrap());
    }

    #[test]
    fn bilinear_forms_closed_form() {
        let alpha = even2(2, 3);
        let rels = bilinear_form_relations(&alpha).unwrap();
        let (q, p) = alpha.sudbery_parameters().unwrap();
        let t = |a: usize, b: usize| a * 2 + b;
        let mut expected = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        let den = &q[(b, d)] + &p[(b, d)];
                        let mut poly = NCPoly::monomial(vec![t(a, b), t(c, d)], int(1));
                        poly.add_term(vec![t(c, d), t(a, b)], -(&p[(c, a)] + &q[(c, a)]) / &den);
                        poly.add_term(
                            vec![t(c, b), t(a, d)],
                            -(&p[(c, a)] * &q[(b, d)] - &q[(c, a)] * &p[(b, d)]) / &den,
                        );
                        expected.push(poly);
                    }
                }
            }
        }
        let expected = RelationSet::from_polys(rels.alphabet().clone(), expected);
        assert!(spans_equal(&rels, &expected).unwrap());
    }

    #[test]
    fn mismatches_are_rejected() {
        let alpha = even2(2, 3);
        let three = make_classical(GradedSpace::even(3));
        let r1 = derive_relations_general(&alpha, &alpha).unwrap();
        let r2 = derive_relations_general(&alpha, &three).unwrap();
        assert!(matches!(
            spans_equal(&r1, &r2),
            Err(Error::AlphabetMismatch(_))
        ));
        let single =
            crate::object::make_general(GradedSpace::even(1), vec![vec![vec![int(1)]]]).unwrap();
        assert!(matches!(
            derive_relations_general(&single, &alpha),
            Err(Error::ComponentCountMismatch { .. })
        ));
    }

    #[test]
    fn corrupted_relations_change_span() {
        let rels = derive_relations_general(&even2(2, 3), &even2(4, 5)).unwrap();
        let bad = rels.corrupted(0, &int(1));
        assert!(!spans_equal(&rels, &bad).unwrap());
    }
}
