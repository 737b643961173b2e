//! Comultiplication, counit and the 2×2 determinant on the hom-algebras.
//!
//! Checks reduce bidegree-(2,2) elements with the degree-2 quotient
//! functionals of each factor, so they do not depend on PBW.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hom::{HomAlgebra, RelationSet};
use crate::linalg::{sign, Scalar, Vector};
use crate::object::{ObjectKind, QuantumObject};
use crate::rewrite::{NCPoly, Word};

/// An element of `A_1 ⊗ ... ⊗ A_r` of free algebras, with the Koszul rule
/// `(x ⊗ y)(u ⊗ v) = (-1)^{ỹũ} xu ⊗ yv`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    parities: Vec<Vec<bool>>,
    terms: BTreeMap<Vec<Word>, Scalar>,
}

impl TensorElement {
    pub fn zero(parities: Vec<Vec<bool>>) -> Self {
        TensorElement {
            parities,
            terms: BTreeMap::new(),
        }
    }

    /// The unit `1 ⊗ ... ⊗ 1`.
    pub fn one(parities: Vec<Vec<bool>>) -> Self {
        let r = parities.len();
        let mut e = Self::zero(parities);
        e.add_term(vec![Vec::new(); r], Scalar::one());
        e
    }

    pub fn add_term(&mut self, words: Vec<Word>, coeff: Scalar) {
        assert_eq!(words.len(), self.parities.len());
        let entry = self.terms.entry(words).or_insert_with(Scalar::zero);
        *entry += coeff;
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Word>, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn word_parity(&self, factor: usize, word: &[usize]) -> bool {
        word.iter()
            .fold(false, |acc, &g| acc ^ self.parities[factor][g])
    }

    pub fn mul(&self, other: &TensorElement) -> TensorElement {
        assert_eq!(self.parities, other.parities);
        let mut out = TensorElement::zero(self.parities.clone());
        for (xs, cx) in &self.terms {
            for (ys, cy) in &other.terms {
                // y_i moves past x_j for every j > i
                let mut odd = false;
                for (i, y) in ys.iter().enumerate() {
                    if self.word_parity(i, y) {
                        for (j, x) in xs.iter().enumerate().skip(i + 1) {
                            odd ^= self.word_parity(j, x);
                        }
                    }
                }
                let words = xs
                    .iter()
                    .zip(ys)
                    .map(|(x, y)| {
                        let mut w = x.clone();
                        w.extend_from_slice(y);
                        w
                    })
                    .collect();
                out.add_term(words, cx * cy * sign(odd));
            }
        }
        out
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, k: &Scalar) -> TensorElement {
        let mut out = TensorElement::zero(self.parities.clone());
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * k);
        }
        out
    }
}

/// Generator parities `Ã + K̃` of `t_A^K` for a hom between two spaces.
fn hom_parities(source: &QuantumObject, target: &QuantumObject) -> Vec<bool> {
    let mut out = Vec::with_capacity(source.dim() * target.dim());
    for &a in source.space().parities() {
        for &k in target.space().parities() {
            out.push(a ^ k);
        }
    }
    out
}

/// `Δ(t_A^S) = Σ_K t_A^K ⊗ t_K^S` for homs `n → m → k`, extended
/// multiplicatively to words.
#[derive(Debug, Clone)]
pub struct Coproduct {
    dims: [usize; 3],
    parities: Vec<Vec<bool>>,
}

impl Coproduct {
    pub fn new(alpha: &QuantumObject, beta: &QuantumObject, gamma: &QuantumObject) -> Self {
        Coproduct {
            dims: [alpha.dim(), beta.dim(), gamma.dim()],
            parities: vec![hom_parities(alpha, beta), hom_parities(beta, gamma)],
        }
    }

    pub fn of_generator(&self, g: usize) -> TensorElement {
        let [_, m, k] = self.dims;
        let (a, s) = (g / k, g % k);
        let mut out = TensorElement::zero(self.parities.clone());
        for mid in 0..m {
            out.add_term(vec![vec![a * m + mid], vec![mid * k + s]], Scalar::one());
        }
        out
    }

    pub fn of_word(&self, word: &[usize]) -> TensorElement {
        word.iter()
            .fold(TensorElement::one(self.parities.clone()), |acc, &g| {
                acc.mul(&self.of_generator(g))
            })
    }

    pub fn of_poly(&self, p: &NCPoly) -> TensorElement {
        let mut out = TensorElement::zero(self.parities.clone());
        for (w, c) in p.terms() {
            for (ws, d) in self.of_word(w).terms() {
                out.add_term(ws.clone(), c * d);
            }
        }
        out
    }
}

/// Coordinates of a bidegree-(2,2) element in `Q_1 ⊗ Q_2`, where `Q_i` is the
/// degree-2 part of the `i`-th quotient. Zero iff the element lies in
/// `R_1 ⊗ U² + U² ⊗ R_2`.
pub fn reduce_bidegree_two(
    element: &TensorElement,
    first: &RelationSet,
    second: &RelationSet,
) -> Vec<Vec<Scalar>> {
    let f1 = first.quotient_functionals();
    let f2 = second.quotient_functionals();
    let n1 = first.alphabet().len();
    let n2 = second.alphabet().len();
    let mut z = vec![vec![Scalar::zero(); f2.len()]; f1.len()];
    for (words, c) in element.terms() {
        assert!(
            words.len() == 2 && words[0].len() == 2 && words[1].len() == 2,
            "bidegree (2,2) expected"
        );
        let i1 = words[0][0] * n1 + words[0][1];
        let i2 = words[1][0] * n2 + words[1][1];
        for (zi, phi) in z.iter_mut().zip(&f1) {
            if phi[i1].is_zero() {
                continue;
            }
            let left = c * &phi[i1];
            for (zij, psi) in zi.iter_mut().zip(&f2) {
                if !psi[i2].is_zero() {
                    *zij += &left * &psi[i2];
                }
            }
        }
    }
    z
}

fn all_zero(z: &[Vec<Scalar>]) -> bool {
    z.iter().all(|row| row.iter().all(Zero::is_zero))
}

/// Objects `α, β, γ` with the three hom-algebras between them.
#[derive(Debug, Clone)]
pub struct ComposableTriple {
    pub objects: [QuantumObject; 3],
    pub ab: HomAlgebra,
    pub bc: HomAlgebra,
    pub ac: HomAlgebra,
}

impl ComposableTriple {
    pub fn new(alpha: &QuantumObject, beta: &QuantumObject, gamma: &QuantumObject) -> Result<Self> {
        Ok(ComposableTriple {
            objects: [alpha.clone(), beta.clone(), gamma.clone()],
            ab: HomAlgebra::new(alpha, beta)?,
            bc: HomAlgebra::new(beta, gamma)?,
            ac: HomAlgebra::new(alpha, gamma)?,
        })
    }

    pub fn coproduct(&self) -> Coproduct {
        let [a, b, c] = &self.objects;
        Coproduct::new(a, b, c)
    }
}

/// `Δ(r)` vanishes in the degree-2 quotients for every relation `r` of
/// `M_{αγ}`.
pub fn comultiplication_check(t: &ComposableTriple) -> bool {
    comultiplication_check_with(
        &t.coproduct(),
        t.ac.relations(),
        t.ab.relations(),
        t.bc.relations(),
    )
}

/// As [`comultiplication_check`] with explicitly supplied relation sets.
pub fn comultiplication_check_with(
    delta: &Coproduct,
    source: &RelationSet,
    first: &RelationSet,
    second: &RelationSet,
) -> bool {
    source
        .polys()
        .iter()
        .all(|r| all_zero(&reduce_bidegree_two(&delta.of_poly(r), first, second)))
}

/// `(Δ_{αβγ} ⊗ 1)Δ_{αγδ} = (1 ⊗ Δ_{βγδ})Δ_{αβδ}` on every generator and
/// every degree-2 word of `M_{αδ}`.
pub fn coassociativity_check(objects: [&QuantumObject; 4]) -> bool {
    let [a, b, c, d] = objects;
    let agd = Coproduct::new(a, c, d);
    let abg = Coproduct::new(a, b, c);
    let abd = Coproduct::new(a, b, d);
    let bgd = Coproduct::new(b, c, d);
    let triple_parities = vec![hom_parities(a, b), hom_parities(b, c), hom_parities(c, d)];
    let apply = |outer: &TensorElement, inner: &Coproduct, factor: usize| {
        let mut out = TensorElement::zero(triple_parities.clone());
        for (words, coeff) in outer.terms() {
            for (split, c2) in inner.of_word(&words[factor]).terms() {
                let mut ws = words.clone();
                ws.splice(factor..=factor, split.iter().cloned());
                out.add_term(ws, coeff * c2);
            }
        }
        out
    };
    let n = a.dim() * d.dim();
    let mut words: Vec<Word> = (0..n).map(|g| vec![g]).collect();
    for x in 0..n {
        for y in 0..n {
            words.push(vec![x, y]);
        }
    }
    words.iter().all(|w| {
        let left = apply(&agd.of_word(w), &abg, 0);
        let right = apply(&abd.of_word(w), &bgd, 1);
        left == right
    })
}

/// Substituting `t_A^B ↦ values[A][B]` into every relation of `M_{αβ}`.
pub fn substitution_annihilates(h: &HomAlgebra, values: &[Vec<Scalar>]) -> bool {
    let m = h.target().dim();
    let flat: Vec<Scalar> = (0..h.generator_count())
        .map(|g| values[g / m][g % m].clone())
        .collect();
    h.relations()
        .polys()
        .iter()
        .all(|r| r.evaluate(&flat).is_zero())
}

/// Counit axioms on `M_{αα}`: `ε(t_A^B) = δ_A^B` kills every relation, and
/// `(ε ⊗ 1)Δ = 1 = (1 ⊗ ε)Δ` on generators.
pub fn counit_check(alpha: &QuantumObject) -> Result<bool> {
    counit_check_between(alpha, alpha)
}

/// The identity substitution applied to `M_{αβ}`; holds for `α = β`.
pub fn counit_check_between(alpha: &QuantumObject, beta: &QuantumObject) -> Result<bool> {
    if alpha.dim() != beta.dim() {
        return Err(Error::DimensionMismatch(format!(
            "identity substitution needs equal dimensions, got {} and {}",
            alpha.dim(),
            beta.dim()
        )));
    }
    let h = HomAlgebra::new(alpha, beta)?;
    let n = alpha.dim();
    let identity: Vec<Vec<Scalar>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    if a == b {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                })
                .collect()
        })
        .collect();
    if !substitution_annihilates(&h, &identity) {
        return Ok(false);
    }
    let delta = Coproduct::new(alpha, alpha, beta);
    let delta_right = Coproduct::new(alpha, beta, beta);
    let eps = |g: usize| -> Scalar { identity[g / n][g % n].clone() };
    for g in 0..n * n {
        let mut left = BTreeMap::new();
        for (ws, c) in delta.of_generator(g).terms() {
            *left.entry(ws[1][0]).or_insert_with(Scalar::zero) += c * eps(ws[0][0]);
        }
        let mut right = BTreeMap::new();
        for (ws, c) in delta_right.of_generator(g).terms() {
            *right.entry(ws[0][0]).or_insert_with(Scalar::zero) += c * eps(ws[1][0]);
        }
        left.retain(|_, c: &mut Scalar| !c.is_zero());
        right.retain(|_, c: &mut Scalar| !c.is_zero());
        let unit: BTreeMap<usize, Scalar> = [(g, Scalar::one())].into_iter().collect();
        if left != unit || right != unit {
            return Ok(false);
        }
    }
    Ok(true)
}

fn require_even_two(obj: &QuantumObject, role: &str) -> Result<()> {
    if obj.dim() != 2 || !obj.space().is_purely_even() {
        return Err(Error::WrongShape(format!(
            "{role}: determinant needs a purely even space of dimension 2"
        )));
    }
    if matches!(obj.kind(), ObjectKind::General) {
        return Err(Error::WrongShape(format!(
            "{role}: determinant needs a Sudbery-type object"
        )));
    }
    Ok(())
}

/// Functional on `V′⊗V′` vanishing on `J` with value 1 on `e^1 e^2`.
fn area_functional(alpha: &QuantumObject) -> Vector {
    let j = &alpha.components()[1];
    let phi = crate::linalg::annihilator(j, 4);
    assert_eq!(phi.len(), 1, "J has codimension 1 in dimension 2");
    let scale = phi[0][1].recip();
    phi[0].iter().map(|x| x * &scale).collect()
}

/// `det_{αβ}`: the coefficient of `ξ^1 ξ^2` in the coaction of the target's
/// area form, `Σ φ(ξ^a ξ^b) t_a^1 t_b^2`.
pub fn determinant_2x2(alpha: &QuantumObject, beta: &QuantumObject) -> Result<NCPoly> {
    require_even_two(alpha, "source")?;
    require_even_two(beta, "target")?;
    let phi = area_functional(alpha);
    let mut det = NCPoly::zero();
    for a in 0..2 {
        for b in 0..2 {
            let c = &phi[a * 2 + b];
            if !c.is_zero() {
                det.add_term(vec![a * 2, b * 2 + 1], c.clone());
            }
        }
    }
    Ok(det)
}

/// `f_α f_β⁻¹ det_{αβ}`: the determinant for the area forms rescaled by
/// `f_α` and `f_β`.
pub fn determinant_scaled(
    alpha: &QuantumObject,
    beta: &QuantumObject,
    f_alpha: &Scalar,
    f_beta: &Scalar,
) -> Result<NCPoly> {
    Ok(determinant_2x2(alpha, beta)?.scale(&(f_alpha / f_beta)))
}

/// `Δ(det_{αγ}) = det_{αβ} ⊗ det_{βγ}` in the degree-2 quotients.
pub fn determinant_multiplicativity(t: &ComposableTriple) -> Result<bool> {
    let [a, b, c] = &t.objects;
    let ac = determinant_2x2(a, c)?;
    let ab = determinant_2x2(a, b)?;
    let bc = determinant_2x2(b, c)?;
    Ok(multiplicativity_with(t, &ac, &ab, &bc))
}

/// Multiplicativity for explicitly supplied determinant polynomials.
pub fn multiplicativity_with(t: &ComposableTriple, ac: &NCPoly, ab: &NCPoly, bc: &NCPoly) -> bool {
    let delta = t.coproduct();
    let parities = delta.parities.clone();
    let mut product = TensorElement::zero(parities);
    for (w1, c1) in ab.terms() {
        for (w2, c2) in bc.terms() {
            product.add_term(vec![w1.clone(), w2.clone()], c1 * c2);
        }
    }
    let diff = delta.of_poly(ac).sub(&product);
    all_zero(&reduce_bidegree_two(
        &diff,
        t.ab.relations(),
        t.bc.relations(),
    ))
}

/// The equivalent closed forms of `det_{αβ}` for an even 2×2 pair with
/// `p = p^{21}`, `q = q^{21}`:
/// `ad - p_α cb`, `(p_α+q_α)/(p_β+q_β)(da - q_β cb)`,
/// `(1 + p_α q_α⁻¹)/(p_β+q_β)(q_β ad - bc)`, `p_β⁻¹(p_α da - bc)`.
pub fn determinant_closed_forms(
    alpha: &QuantumObject,
    beta: &QuantumObject,
) -> Result<Vec<NCPoly>> {
    require_even_two(alpha, "source")?;
    require_even_two(beta, "target")?;
    let (qa, pa) = alpha.sudbery_parameters().expect("checked kind");
    let (qb, pb) = beta.sudbery_parameters().expect("checked kind");
    let (pa, qa, pb, qb) = (
        pa[(1, 0)].clone(),
        qa[(1, 0)].clone(),
        pb[(1, 0)].clone(),
        qb[(1, 0)].clone(),
    );
    let (a, b, c, d) = (0usize, 1usize, 2usize, 3usize);
    let one = Scalar::one();
    let form = |terms: Vec<([usize; 2], Scalar)>, k: Scalar| {
        NCPoly::from_terms(terms.into_iter().map(|(w, x)| (w.to_vec(), x * &k)))
    };
    let sb = &pb + &qb;
    Ok(vec![
        form(
            vec![([a, d], one.clone()), ([c, b], -pa.clone())],
            one.clone(),
        ),
        form(
            vec![([d, a], one.clone()), ([c, b], -qb.clone())],
            (&pa + &qa) / &sb,
        ),
        form(
            vec![([a, d], qb.clone()), ([b, c], -one.clone())],
            (&one + &pa / &qa) / &sb,
        ),
        form(
            vec![([d, a], pa.clone()), ([b, c], -one.clone())],
            pb.recip(),
        ),
    ])
}

/// Every closed form agrees with [`determinant_2x2`] modulo the relations of
/// `M_{αβ}`.
pub fn determinant_forms_agree(alpha: &QuantumObject, beta: &QuantumObject) -> Result<bool> {
    let h = HomAlgebra::new(alpha, beta)?;
    let det = determinant_2x2(alpha, beta)?;
    Ok(determinant_closed_forms(alpha, beta)?
        .iter()
        .all(|f| h.relations().contains(&f.sub(&det))))
}
