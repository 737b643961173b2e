//! Seeded random Sudbery-type instances for sweeps and property tests.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::graded::GradedSpace;
use crate::linalg::{int, rat, sign, Matrix, Scalar};
use crate::object::{make_sudbery, QuantumObject};

/// A small nonzero rational.
pub fn random_nonzero<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let num = rng.gen_range(-7i64..=7);
        if num != 0 {
            return rat(num, rng.gen_range(1..=4));
        }
    }
}

/// A constant usable as `c`: nonzero, not `±1`.
pub fn random_constant<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let c = random_nonzero(rng);
        if c != int(1) && c != int(-1) {
            return c;
        }
    }
}

/// A graded space of dimension `1..=max_dim` with random parities.
pub fn random_space<R: Rng>(rng: &mut R, min_dim: usize, max_dim: usize) -> GradedSpace {
    let n = rng.gen_range(min_dim..=max_dim);
    GradedSpace::new((0..n).map(|_| rng.gen_bool(0.4)).collect())
}

/// Parameter matrix with the required diagonal and reciprocal off-diagonal
/// entries.
pub fn random_q<R: Rng>(rng: &mut R, space: &GradedSpace) -> Matrix {
    let n = space.dim();
    let mut q = Matrix::zeros(n, n);
    for a in 0..n {
        q[(a, a)] = sign(space.parity(a));
        for b in a + 1..n {
            let x = random_nonzero(rng);
            q[(b, a)] = x.recip();
            q[(a, b)] = x;
        }
    }
    q
}

/// `p^{AB} = q^{AB} c^{eps[A][B]}` with `eps` antisymmetric in `{-1, 0, 1}`.
pub fn object_from_pattern(
    space: &GradedSpace,
    q: &Matrix,
    c: &Scalar,
    eps: &[Vec<i64>],
) -> QuantumObject {
    let n = space.dim();
    let p = Matrix::from_fn(n, n, |a, b| {
        let f = match eps[a][b] {
            1 => c.clone(),
            -1 => c.recip(),
            _ => Scalar::one(),
        };
        &q[(a, b)] * f
    });
    make_sudbery(space.clone(), q.clone(), p).expect("admissible by construction")
}

/// Sign pattern of a total order given as a list of basis indices.
pub fn pattern_from_ordering(ordering: &[usize]) -> Vec<Vec<i64>> {
    let n = ordering.len();
    let mut pos = vec![0usize; n];
    for (i, &a) in ordering.iter().enumerate() {
        pos[a] = i;
    }
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| (pos[b] as i64 - pos[a] as i64).signum())
                .collect()
        })
        .collect()
}

/// An object satisfying `p^{AB} = q^{AB} c^{sign(B-A)}` under a random
/// ordering of its basis.
pub fn object_with_constant<R: Rng>(rng: &mut R, space: &GradedSpace, c: &Scalar) -> QuantumObject {
    let mut ordering: Vec<usize> = (0..space.dim()).collect();
    ordering.shuffle(rng);
    let q = random_q(rng, space);
    object_from_pattern(space, &q, c, &pattern_from_ordering(&ordering))
}

/// A dimension-3 object whose sign pattern is a directed 3-cycle.
pub fn non_transitive_object<R: Rng>(
    rng: &mut R,
    space: &GradedSpace,
    c: &Scalar,
) -> QuantumObject {
    assert_eq!(
        space.dim(),
        3,
        "the cyclic pattern needs three basis vectors"
    );
    let s = if rng.gen_bool(0.5) { 1 } else { -1 };
    let eps = vec![vec![0, s, -s], vec![-s, 0, s], vec![s, -s, 0]];
    let q = random_q(rng, space);
    object_from_pattern(space, &q, c, &eps)
}

/// An object with independent random `Q` and `P`.
pub fn random_admissible<R: Rng>(rng: &mut R, space: &GradedSpace) -> QuantumObject {
    loop {
        let q = random_q(rng, space);
        let p = random_q(rng, space);
        if let Ok(obj) = make_sudbery(space.clone(), q, p) {
            return obj;
        }
    }
}

/// Source and target with `c_α = c_β^{±1}`, both of dimension at least 2.
pub fn pbw_pair<R: Rng>(rng: &mut R, max_dim: usize) -> (QuantumObject, QuantumObject) {
    let c = random_constant(rng);
    let c_beta = if rng.gen_bool(0.5) {
        c.clone()
    } else {
        c.recip()
    };
    let v = random_space(rng, 2, max_dim);
    let w = random_space(rng, 2, max_dim);
    (
        object_with_constant(rng, &v, &c),
        object_with_constant(rng, &w, &c_beta),
    )
}

/// Source and target violating `c_α = c_β^{±1}`: either the constants differ
/// or one side has a cyclic sign pattern.
pub fn non_pbw_pair<R: Rng>(rng: &mut R, max_dim: usize) -> (QuantumObject, QuantumObject) {
    if max_dim >= 3 && rng.gen_bool(0.3) {
        let c = random_constant(rng);
        let cyclic_space = random_space(rng, 3, 3);
        let other = random_space(rng, 2, max_dim);
        let cyclic = non_transitive_object(rng, &cyclic_space, &c);
        let partner = object_with_constant(rng, &other, &c);
        return if rng.gen_bool(0.5) {
            (cyclic, partner)
        } else {
            (partner, cyclic)
        };
    }
    let c_alpha = random_constant(rng);
    let c_beta = loop {
        let c = if rng.gen_bool(0.2) {
            int(1)
        } else {
            random_constant(rng)
        };
        if c != c_alpha && c != c_alpha.recip() {
            break c;
        }
    };
    let v = random_space(rng, 2, max_dim);
    let w = random_space(rng, 2, max_dim);
    (
        object_with_constant(rng, &v, &c_alpha),
        object_with_constant(rng, &w, &c_beta),
    )
}

/// Either kind of pair, or a pair of unrelated random objects.
pub fn random_pair<R: Rng>(rng: &mut R, max_dim: usize) -> (QuantumObject, QuantumObject) {
    match rng.gen_range(0..4) {
        0 => pbw_pair(rng, max_dim),
        1 => non_pbw_pair(rng, max_dim),
        2 => {
            let v = random_space(rng, 1, max_dim);
            let w = random_space(rng, 1, max_dim);
            (random_admissible(rng, &v), random_admissible(rng, &w))
        }
        _ => {
            let c = random_constant(rng);
            let v = random_space(rng, 1, max_dim);
            let w = random_space(rng, 1, max_dim);
            let c_beta = if rng.gen_bool(0.5) {
                c.clone()
            } else {
                random_constant(rng)
            };
            (
                object_with_constant(rng, &v, &c),
                object_with_constant(rng, &w, &c_beta),
            )
        }
    }
}

/// Three objects on spaces of the given dimensions sharing one constant, so
/// every hom-algebra in the chain has classical dimension.
pub fn pbw_chain<R: Rng>(rng: &mut R, dims: [usize; 3]) -> [QuantumObject; 3] {
    let c = random_constant(rng);
    dims.map(|n| {
        let space = GradedSpace::new((0..n).map(|_| rng.gen_bool(0.4)).collect());
        let c_here = if rng.gen_bool(0.5) {
            c.clone()
        } else {
            c.recip()
        };
        object_with_constant(rng, &space, &c_here)
    })
}

/// Three unrelated random objects of the given dimensions.
pub fn random_chain<R: Rng>(rng: &mut R, dims: [usize; 3]) -> [QuantumObject; 3] {
    dims.map(|n| {
        let space = GradedSpace::new((0..n).map(|_| rng.gen_bool(0.4)).collect());
        random_admissible(rng, &space)
    })
}

/// True when no entry of `q + p` vanishes.
pub fn is_complementary(q: &Matrix, p: &Matrix) -> bool {
    (0..q.rows()).all(|a| (0..q.cols()).all(|b| !(&q[(a, b)] + &p[(a, b)]).is_zero()))
}
