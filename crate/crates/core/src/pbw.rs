//! Graded dimensions of hom-algebras and the classical-dimension criterion.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hom::{HomAlgebra, RelationSet};
use crate::linalg::{Scalar, SparseEchelon};
use crate::object::QuantumObject;
use crate::rewrite::Alphabet;

/// Largest number of degree-`d` words the oracle will enumerate.
pub const ORACLE_WORD_LIMIT: u64 = 1_000_000;

/// Default top degree of the oracle run attached to a verdict.
pub const DEFAULT_ORACLE_DEGREE: usize = 3;

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Dimension of the degree-`d` part of the free supercommutative algebra on
/// generators with the given parities.
pub fn classical_dimension(parities: &[bool], degree: usize) -> u64 {
    let odd = parities.iter().filter(|p| **p).count() as u64;
    let even = parities.len() as u64 - odd;
    let d = degree as u64;
    (0..=d.min(odd))
        .map(|j| {
            let rest = d - j;
            let sym = if even == 0 {
                u64::from(rest == 0)
            } else {
                binomial(even + rest - 1, rest)
            };
            binomial(odd, j) * sym
        })
        .sum()
}

/// Block key of a degree-2 relation: its common weight, or `None` when its
/// terms have different weights.
fn relation_weight(alphabet: &Alphabet, row: &[Scalar]) -> Option<Vec<u32>> {
    let mut weight: Option<Vec<u32>> = None;
    for (i, c) in row.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (x, y) = alphabet.pair_of(i);
        let w = alphabet.word_weight(&[x, y]);
        match &weight {
            None => weight = Some(w),
            Some(existing) if *existing == w => {}
            Some(_) => return None,
        }
    }
    weight
}

fn add_weights(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `dim` of the degree-`d` part of the quadratic algebra with the given
/// relations: `n^d - rank Σ_i U^{⊗i} ⊗ R ⊗ U^{⊗(d-2-i)}`.
///
/// The ideal is split into independent blocks by multidegree when every
/// relation is homogeneous.
pub fn quotient_dimension(relations: &RelationSet, degree: usize) -> Result<u64> {
    let alphabet = relations.alphabet();
    let n = alphabet.len();
    let words = (n as u64).checked_pow(degree as u32).unwrap_or(u64::MAX);
    if words > ORACLE_WORD_LIMIT {
        return Err(Error::TooLarge {
            words,
            limit: ORACLE_WORD_LIMIT,
        });
    }
    if degree < 2 {
        return Ok(words);
    }
    let basis = relations.basis();
    let weights: Vec<Option<Vec<u32>>> =
        basis.iter().map(|r| relation_weight(alphabet, r)).collect();
    let homogeneous = weights.iter().all(Option::is_some);
    let sparse: Vec<Vec<(usize, Scalar)>> = basis
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect()
        })
        .collect();

    let mut blocks: HashMap<Vec<u32>, SparseEchelon> = HashMap::new();
    let n_pow = |k: usize| n.pow(k as u32);
    for i in 0..=degree - 2 {
        let suffix_len = degree - 2 - i;
        for u in 0..n_pow(i) {
            let u_word = digits(u, n, i);
            for v in 0..n_pow(suffix_len) {
                let v_word = digits(v, n, suffix_len);
                let context = add_weights(
                    &alphabet.word_weight(&u_word),
                    &alphabet.word_weight(&v_word),
                );
                for (rel, w) in sparse.iter().zip(&weights) {
                    let key = if homogeneous {
                        add_weights(&context, w.as_ref().expect("homogeneous"))
                    } else {
                        Vec::new()
                    };
                    let row = rel.iter().map(|(pair, c)| {
                        let index = (u * n * n + pair) * n_pow(suffix_len) + v;
                        (index, c.clone())
                    });
                    blocks.entry(key).or_default().insert(row);
                }
            }
        }
    }
    let rank: usize = blocks.values().map(SparseEchelon::rank).sum();
    Ok(words - rank as u64)
}

/// Base-`n` digits of `index`, most significant first.
fn digits(mut index: usize, n: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
    out
}

/// Exact graded dimension of the hom-algebra in degree `d`.
pub fn dimension_oracle(h: &HomAlgebra, degree: usize) -> Result<u64> {
    quotient_dimension(h.relations(), degree)
}

/// The constant `c` and a basis ordering with `p^{AB} = q^{AB} c^{sign(B-A)}`,
/// positions taken in the returned ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extraction {
    pub constant: Scalar,
    /// `ordering[i]` is the basis index placed at position `i`.
    pub ordering: Vec<usize>,
}

/// Off-diagonal ratios `c_{AB} = p^{AB}/q^{AB}`.
fn ratio_matrix(alpha: &QuantumObject) -> Option<Vec<Vec<Scalar>>> {
    let (q, p) = alpha.sudbery_parameters()?;
    let n = alpha.dim();
    Some(
        (0..n)
            .map(|a| (0..n).map(|b| &p[(a, b)] / &q[(a, b)]).collect())
            .collect(),
    )
}

/// Finds `c` and an ordering for a Sudbery-type object, or `None` when the
/// ratios take more than one value up to inversion or their pattern is not
/// transitive. Spaces of dimension at most 1 give `c = 1`.
pub fn pbw_extract_constant(alpha: &QuantumObject) -> Option<Extraction> {
    let ratios = ratio_matrix(alpha)?;
    let n = alpha.dim();
    let identity: Vec<usize> = (0..n).collect();
    if n < 2 {
        return Some(Extraction {
            constant: Scalar::one(),
            ordering: identity,
        });
    }
    let c = ratios[0][1].clone();
    let c_inv = c.recip();
    // wins[a][b]: a must precede b
    let mut wins = vec![vec![false; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            let r = &ratios[a][b];
            if *r == c {
                wins[a][b] = true;
            } else if *r == c_inv {
                wins[b][a] = true;
            } else {
                return None;
            }
        }
    }
    if c.is_one() {
        return Some(Extraction {
            constant: c,
            ordering: identity,
        });
    }
    let ordering = tournament_order(&wins)?;
    Some(Extraction {
        constant: c,
        ordering,
    })
}

/// Orders the vertices of a tournament by score and confirms every edge points
/// forward. `None` when the tournament has a cycle.
fn tournament_order(wins: &[Vec<bool>]) -> Option<Vec<usize>> {
    let n = wins.len();
    let mut order: Vec<usize> = (0..n).collect();
    let score = |a: usize| wins[a].iter().filter(|w| **w).count();
    order.sort_by_key(|&a| std::cmp::Reverse(score(a)));
    let forward = order
        .iter()
        .enumerate()
        .all(|(i, &a)| order[i + 1..].iter().all(|&b| wins[a][b]));
    forward.then_some(order)
}

/// True iff `p^{AB} = q^{AB} c^{sign(pos(B)-pos(A))}` for all `A, B`.
pub fn satisfies_constant(alpha: &QuantumObject, constant: &Scalar, ordering: &[usize]) -> bool {
    let Some((q, p)) = alpha.sudbery_parameters() else {
        return false;
    };
    let n = alpha.dim();
    if ordering.len() != n {
        return false;
    }
    let mut pos = vec![0usize; n];
    for (i, &a) in ordering.iter().enumerate() {
        pos[a] = i;
    }
    (0..n).all(|a| {
        (0..n).all(|b| {
            let factor = match pos[b].cmp(&pos[a]) {
                std::cmp::Ordering::Greater => constant.clone(),
                std::cmp::Ordering::Less => constant.recip(),
                std::cmp::Ordering::Equal => Scalar::one(),
            };
            p[(a, b)] == &q[(a, b)] * factor
        })
    })
}

/// Exhaustive search over all orderings and both `c`, `c⁻¹`. Used to
/// cross-check the tournament sort on small spaces.
pub fn extract_constant_brute_force(alpha: &QuantumObject) -> Option<Extraction> {
    let n = alpha.dim();
    if n < 2 {
        return Some(Extraction {
            constant: Scalar::one(),
            ordering: (0..n).collect(),
        });
    }
    let ratios = ratio_matrix(alpha)?;
    let candidates = [ratios[0][1].clone(), ratios[1][0].clone()];
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        for c in &candidates {
            if satisfies_constant(alpha, c, &perm) {
                return Some(Extraction {
                    constant: c.clone(),
                    ordering: perm,
                });
            }
        }
        if !next_permutation(&mut perm) {
            return None;
        }
    }
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let Some(i) = perm.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = perm
        .iter()
        .rposition(|&x| x > perm[i])
        .expect("successor exists");
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

/// Outcome of the classical-dimension criterion with oracle dimensions
/// attached for comparison.
///
/// A space of dimension at most 1 has no ratios. Its hom-algebras with any
/// other object have a single row or column and always hold; its constant is
/// reported as the partner's when the partner has one.
#[derive(Debug, Clone)]
pub struct PBWVerdict {
    pub criterion_holds: bool,
    pub constant_source: Option<Scalar>,
    pub constant_target: Option<Scalar>,
    pub ordering_source: Option<Vec<usize>>,
    pub ordering_target: Option<Vec<usize>>,
    /// `(degree, computed, classical)`.
    pub oracle_dims: Vec<(usize, u64, u64)>,
}

impl PBWVerdict {
    /// True when every oracle dimension equals the classical one.
    pub fn oracle_classical(&self) -> bool {
        self.oracle_dims.iter().all(|(_, got, want)| got == want)
    }
}

/// Evaluates the criterion without running the oracle.
pub fn pbw_criterion_only(alpha: &QuantumObject, beta: &QuantumObject) -> PBWVerdict {
    let ex_a = pbw_extract_constant(alpha);
    let ex_b = pbw_extract_constant(beta);
    let free_a = alpha.dim() < 2;
    let free_b = beta.dim() < 2;
    let mut c_a = ex_a.as_ref().map(|e| e.constant.clone());
    let mut c_b = ex_b.as_ref().map(|e| e.constant.clone());
    if free_a && c_b.is_some() {
        c_a = c_b.clone();
    }
    if free_b && c_a.is_some() {
        c_b = c_a.clone();
    }
    let holds = free_a
        || free_b
        || match (&c_a, &c_b) {
            (Some(a), Some(b)) => a == b || *a == b.recip(),
            _ => false,
        };
    PBWVerdict {
        criterion_holds: holds,
        constant_source: c_a,
        constant_target: c_b,
        ordering_source: ex_a.map(|e| e.ordering),
        ordering_target: ex_b.map(|e| e.ordering),
        oracle_dims: Vec::new(),
    }
}

/// The criterion together with oracle dimensions for degrees `2..=max_degree`.
pub fn pbw_criterion(
    alpha: &QuantumObject,
    beta: &QuantumObject,
    max_degree: usize,
) -> Result<PBWVerdict> {
    let mut verdict = pbw_criterion_only(alpha, beta);
    let h = HomAlgebra::new(alpha, beta)?;
    for d in 2..=max_degree {
        let got = dimension_oracle(&h, d)?;
        let want = classical_dimension(h.alphabet().parities(), d);
        verdict.oracle_dims.push((d, got, want));
    }
    Ok(verdict)
}
