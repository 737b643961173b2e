//! Noncommutative polynomials, the row-major monomial order, rewriting to
//! normal form and the cubic-overlap confluence check.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{format_scalar, Matrix, Scalar};

/// A word in the generators, as generator indices.
pub type Word = Vec<usize>;

/// A graded generator alphabet.
///
/// Generator index order is the monomial order on letters. For the
/// hom-algebra alphabet, index `A * cols + K` names `t_A^K`, which is exactly
/// the order by rows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    parities: Vec<bool>,
    names: Vec<String>,
    /// Multidegree of each generator; relations homogeneous for it can be
    /// split into independent blocks.
    weights: Vec<Vec<u32>>,
}

impl Alphabet {
    /// Alphabet with default names `x0, x1, ...` and trivial weights.
    pub fn new(parities: Vec<bool>) -> Self {
        let names = (0..parities.len()).map(|i| format!("x{i}")).collect();
        let weights = vec![Vec::new(); parities.len()];
        Alphabet {
            parities,
            names,
            weights,
        }
    }

    pub fn with_names(parities: Vec<bool>, names: Vec<String>) -> Self {
        assert_eq!(parities.len(), names.len());
        Alphabet {
            names,
            ..Alphabet::new(parities)
        }
    }

    /// Matrix entries `t_A^K` of a `rows × cols` matrix, ordered by rows.
    /// `t_A^K` has parity `Ã + K̃` and weight `e_A ⊕ e_K`.
    pub fn matrix_entries(row_parities: &[bool], col_parities: &[bool]) -> Self {
        let rows = row_parities.len();
        let cols = col_parities.len();
        let letters = rows == 2 && cols == 2;
        let mut parities = Vec::with_capacity(rows * cols);
        let mut names = Vec::with_capacity(rows * cols);
        let mut weights = Vec::with_capacity(rows * cols);
        for a in 0..rows {
            for k in 0..cols {
                parities.push(row_parities[a] ^ col_parities[k]);
                names.push(if letters {
                    ["a", "b", "c", "d"][a * 2 + k].to_string()
                } else {
                    format!("t{}_{}", a + 1, k + 1)
                });
                let mut w = vec![0u32; rows + cols];
                w[a] = 1;
                w[rows + k] = 1;
                weights.push(w);
            }
        }
        Alphabet {
            parities,
            names,
            weights,
        }
    }

    pub fn len(&self) -> usize {
        self.parities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parities.is_empty()
    }

    pub fn parity(&self, g: usize) -> bool {
        self.parities[g]
    }

    pub fn parities(&self) -> &[bool] {
        &self.parities
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn word_parity(&self, word: &[usize]) -> bool {
        word.iter().fold(false, |acc, &g| acc ^ self.parities[g])
    }

    /// Multidegree of a word; empty when the alphabet carries no weights.
    pub fn word_weight(&self, word: &[usize]) -> Vec<u32> {
        let len = self.weights.first().map_or(0, Vec::len);
        let mut out = vec![0u32; len];
        for &g in word {
            for (o, w) in out.iter_mut().zip(&self.weights[g]) {
                *o += w;
            }
        }
        out
    }

    /// Index of a degree-2 word in the `n²` coordinate basis.
    pub fn pair_index(&self, x: usize, y: usize) -> usize {
        x * self.len() + y
    }

    pub fn pair_of(&self, index: usize) -> (usize, usize) {
        (index / self.len(), index % self.len())
    }

    /// A word is ordered when its letters do not decrease and no odd letter
    /// repeats.
    pub fn is_ordered(&self, word: &[usize]) -> bool {
        word.windows(2)
            .all(|w| w[0] < w[1] || (w[0] == w[1] && !self.parities[w[0]]))
    }
}

/// Degree first, then lexicographic in generator order.
pub fn monomial_compare(w1: &[usize], w2: &[usize]) -> Ordering {
    w1.len().cmp(&w2.len()).then_with(|| w1.cmp(w2))
}

/// A noncommutative polynomial: a finite map from words to nonzero scalars.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(word: Word, coeff: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(word, coeff);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    /// A degree-2 polynomial from coordinates over the `n²` word basis.
    pub fn from_pair_coordinates(alphabet: &Alphabet, coords: &[Scalar]) -> Self {
        Self::from_terms(
            coords
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| {
                    let (x, y) = alphabet.pair_of(i);
                    (vec![x, y], c.clone())
                }),
        )
    }

    pub fn add_term(&mut self, word: Word, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(word);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &[usize]) -> Scalar {
        self.terms.get(word).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest word in the monomial order.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().max_by(|a, b| monomial_compare(a.0, b.0))
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), c * k)))
    }

    pub fn add(&self, other: &NCPoly) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NCPoly) -> Self {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn mul(&self, other: &NCPoly) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1 * c2);
            }
        }
        out
    }

    /// Coordinates over the degree-2 word basis. Panics on other degrees.
    pub fn pair_coordinates(&self, alphabet: &Alphabet) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); alphabet.len() * alphabet.len()];
        for (w, c) in &self.terms {
            assert_eq!(w.len(), 2, "expected a quadratic polynomial");
            v[alphabet.pair_index(w[0], w[1])] += c;
        }
        v
    }

    /// Evaluates with commuting scalar values for the generators.
    pub fn evaluate(&self, values: &[Scalar]) -> Scalar {
        self.terms
            .iter()
            .map(|(w, c)| w.iter().fold(c.clone(), |acc, &g| acc * &values[g]))
            .sum()
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> PolyDisplay<'a> {
        PolyDisplay {
            poly: self,
            alphabet,
        }
    }
}

/// Human-readable form with words in lexicographic order, e.g.
/// `ad + 7/9 cb - 5/9 da`.
pub struct PolyDisplay<'a> {
    poly: &'a NCPoly,
    alphabet: &'a Alphabet,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let terms = self.poly.terms.iter();
        let single = self.alphabet.names.iter().all(|n| n.len() == 1);
        for (i, (w, c)) in terms.into_iter().enumerate() {
            let negative = *c < Scalar::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let word: Vec<&str> = w.iter().map(|&g| self.alphabet.name(g)).collect();
            let word = if single {
                word.concat()
            } else {
                word.join("·")
            };
            if mag.is_one() {
                write!(f, "{word}")?;
            } else if word.is_empty() {
                write!(f, "{}", format_scalar(&mag))?;
            } else {
                write!(f, "{} {word}", format_scalar(&mag))?;
            }
        }
        Ok(())
    }
}

/// Why the leading words of a quadratic relation set do not coincide with the
/// non-ordered degree-2 words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Degree2Defect {
    /// Ordered words that occur as leading words.
    pub ordered_leaders: Vec<(usize, usize)>,
    /// Non-ordered words with no rule.
    pub unreduced: Vec<(usize, usize)>,
}

/// Quadratic rewriting rules `xy → (lower-order remainder)`, one per leading
/// word of the echelonized relation span.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    alphabet: Alphabet,
    rules: BTreeMap<(usize, usize), NCPoly>,
    defect: Option<Degree2Defect>,
}

impl RewriteSystem {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &BTreeMap<(usize, usize), NCPoly> {
        &self.rules
    }

    pub fn rule(&self, x: usize, y: usize) -> Option<&NCPoly> {
        self.rules.get(&(x, y))
    }

    /// `None` when the leading words are exactly the non-ordered words.
    pub fn degree2_defect(&self) -> Option<&Degree2Defect> {
        self.defect.as_ref()
    }

    /// Words of the given degree containing no rule left side.
    pub fn irreducible_words(&self, degree: usize) -> Vec<Word> {
        let n = self.alphabet.len();
        let mut words: Vec<Word> = vec![Vec::new()];
        for _ in 0..degree {
            let mut next = Vec::new();
            for w in &words {
                for g in 0..n {
                    if let Some(&last) = w.last() {
                        if self.rules.contains_key(&(last, g)) {
                            continue;
                        }
                    }
                    let mut w = w.clone();
                    w.push(g);
                    next.push(w);
                }
            }
            words = next;
        }
        words
    }
}

/// Echelonizes a quadratic relation matrix (rows over the `n²` word basis)
/// against the monomial order and solves each row for its leading word.
pub fn build_rewrite_system(alphabet: &Alphabet, relations: &Matrix) -> Result<RewriteSystem> {
    let n = alphabet.len();
    if relations.cols() != n * n {
        return Err(Error::AlphabetMismatch(format!(
            "relation matrix has {} columns, alphabet needs {}",
            relations.cols(),
            n * n
        )));
    }
    // columns reversed so that pivots land on the largest words
    let total = n * n;
    let reversed = Matrix::from_fn(relations.rows(), total, |r, c| {
        relations[(r, total - 1 - c)].clone()
    });
    let (rref, pivots) = reversed.rref();
    let mut rules = BTreeMap::new();
    for (i, &pc) in pivots.iter().enumerate() {
        let lead = alphabet.pair_of(total - 1 - pc);
        let mut rhs = NCPoly::zero();
        for c in pc + 1..total {
            let v = &rref[(i, c)];
            if !v.is_zero() {
                let (x, y) = alphabet.pair_of(total - 1 - c);
                rhs.add_term(vec![x, y], -v.clone());
            }
        }
        rules.insert(lead, rhs);
    }
    let leaders: BTreeSet<(usize, usize)> = rules.keys().copied().collect();
    let ordered_leaders: Vec<_> = leaders
        .iter()
        .copied()
        .filter(|&(x, y)| alphabet.is_ordered(&[x, y]))
        .collect();
    let unreduced: Vec<_> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| !alphabet.is_ordered(&[x, y]) && !leaders.contains(&(x, y)))
        .collect();
    let defect = if ordered_leaders.is_empty() && unreduced.is_empty() {
        None
    } else {
        Some(Degree2Defect {
            ordered_leaders,
            unreduced,
        })
    };
    Ok(RewriteSystem {
        alphabet: alphabet.clone(),
        rules,
        defect,
    })
}

fn leftmost_redex(system: &RewriteSystem, word: &[usize]) -> Option<usize> {
    word.windows(2)
        .position(|w| system.rules.contains_key(&(w[0], w[1])))
}

/// Normal form by repeated replacement of the leftmost reducible pair.
pub fn normal_form(p: &NCPoly, system: &RewriteSystem) -> NCPoly {
    normal_form_traced(p, system).0
}

/// Like [`normal_form`], also returning the words that were rewritten in the
/// order they were processed. Each replaced word is strictly smaller than the
/// previous one in the monomial order.
pub fn normal_form_traced(p: &NCPoly, system: &RewriteSystem) -> (NCPoly, Vec<Word>) {
    // Rewriting `u·xy·v` yields words `u·r·v` with `r < xy`, so processing the
    // largest pending word first visits every word at most once.
    let mut pending: BTreeMap<Word, Scalar> = p.terms.clone();
    let mut result = NCPoly::zero();
    let mut trace = Vec::new();
    while let Some((word, coeff)) = pop_largest(&mut pending) {
        match leftmost_redex(system, &word) {
            None => result.add_term(word, coeff),
            Some(i) => {
                let rhs = &system.rules[&(word[i], word[i + 1])];
                for (r, c) in rhs.terms() {
                    let mut w = word[..i].to_vec();
                    w.extend_from_slice(r);
                    w.extend_from_slice(&word[i + 2..]);
                    let entry = pending.entry(w).or_insert_with(Scalar::zero);
                    *entry += c * &coeff;
                }
                trace.push(word);
            }
        }
    }
    (result, trace)
}

fn pop_largest(pending: &mut BTreeMap<Word, Scalar>) -> Option<(Word, Scalar)> {
    loop {
        let key = pending
            .keys()
            .max_by(|a, b| monomial_compare(a, b))?
            .clone();
        let coeff = pending.remove(&key).expect("key present");
        if !coeff.is_zero() {
            return Some((key, coeff));
        }
    }
}

/// One cubic overlap `xyz` with both `xy` and `yz` reducible.
#[derive(Debug, Clone)]
pub struct Overlap {
    pub word: [usize; 3],
    /// Normal form after rewriting `xy` first.
    pub left: NCPoly,
    /// Normal form after rewriting `yz` first.
    pub right: NCPoly,
}

impl Overlap {
    pub fn resolved(&self) -> bool {
        self.left == self.right
    }
}

#[derive(Debug, Clone)]
pub struct ConfluenceReport {
    pub overlaps: Vec<Overlap>,
}

impl ConfluenceReport {
    pub fn failures(&self) -> Vec<&Overlap> {
        self.overlaps.iter().filter(|o| !o.resolved()).collect()
    }

    pub fn is_confluent(&self) -> bool {
        self.overlaps.iter().all(Overlap::resolved)
    }
}

/// Resolves every cubic overlap both ways and compares normal forms.
pub fn confluence_check(system: &RewriteSystem) -> ConfluenceReport {
    let mut overlaps = Vec::new();
    for (&(x, y), left_rule) in &system.rules {
        for (&(y2, z), right_rule) in system.rules.range((y, 0)..=(y, usize::MAX)) {
            debug_assert_eq!(y, y2);
            let left = left_rule.mul(&NCPoly::monomial(vec![z], Scalar::one()));
            let right = NCPoly::monomial(vec![x], Scalar::one()).mul(right_rule);
            overlaps.push(Overlap {
                word: [x, y, z],
                left: normal_form(&left, system),
                right: normal_form(&right, system),
            });
        }
    }
    ConfluenceReport { overlaps }
}
