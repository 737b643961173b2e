//! Exact rational scalars and dense linear algebra.
//!
//! Everything downstream (relation spans, graded dimensions, projectors,
//! confluence) reduces to rank computations over the rationals, so nothing
//! here ever touches floating point.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An exact rational number. Always stored in lowest terms with a positive
/// denominator.
pub type Scalar = BigRational;

/// A vector of scalars in a space with a fixed basis.
pub type Vector = Vec<Scalar>;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// `(-1)^odd` as a scalar.
pub fn sign(odd: bool) -> Scalar {
    if odd {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_scalar(text: &str) -> Option<Scalar> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Scalar::new(num, den))
}

/// Formats a scalar as `p` or `p/q`.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// A dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors. All rows must have length `cols`.
    pub fn from_rows(rows: &[Vector], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "row length does not match column count");
            data.extend(row.iter().cloned());
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vector], rows: usize) -> Self {
        Matrix::from_rows(columns, rows).transpose()
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix {
            rows,
            cols,
            data: entries.iter().map(|&x| int(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Matrix::zeros(rows, cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = &self[(r1, c1)];
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let b = &other[(r2, c2)];
                        if !b.is_zero() {
                            out[(r1 * other.rows + r2, c1 * other.cols + c2)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(found) = (pivot_row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, found);
            let inv = m[(pivot_row, col)].recip();
            for c in col..m.cols {
                let v = &m[(pivot_row, c)] * &inv;
                m[(pivot_row, c)] = v;
            }
            for r in 0..m.rows {
                if r == pivot_row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    let p = &m[(pivot_row, c)];
                    if !p.is_zero() {
                        let v = &m[(r, c)] - &factor * p;
                        m[(r, c)] = v;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{v : M v = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = zero_vector(self.cols);
            v[free] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[(i, free)].clone();
            }
            basis.push(v);
        }
        debug_assert_eq!(basis.len() + pivots.len(), self.cols);
        basis
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Scalar::one();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Matrix::from_fn(n, n, |r, c| red[(r, n + c)].clone()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_scalar).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &Matrix) -> Vec<Vector> {
    m.kernel_basis()
}

/// Rank by fraction-free (Bareiss) elimination over the integers.
///
/// Rows are first scaled by the lcm of their denominators, which does not
/// change the rank. Used to cross-check [`Matrix::rank`].
pub fn bareiss_rank(m: &Matrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|r| {
            let row = m.row(r);
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();
    let rows = m.rows();
    let cols = m.cols();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(found) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, found);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// A basis (reduced echelon rows) of the span of `vectors` in `k^dim`.
pub fn span_basis(vectors: &[Vector], dim: usize) -> Vec<Vector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = Matrix::from_rows(vectors, dim).rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

pub fn span_dim(vectors: &[Vector], dim: usize) -> usize {
    if vectors.is_empty() {
        0
    } else {
        Matrix::from_rows(vectors, dim).rank()
    }
}

/// True iff the two families span the same subspace of `k^dim`.
pub fn same_span(a: &[Vector], b: &[Vector], dim: usize) -> bool {
    let ra = span_dim(a, dim);
    let rb = span_dim(b, dim);
    if ra != rb {
        return false;
    }
    let stacked: Vec<Vector> = a.iter().chain(b).cloned().collect();
    span_dim(&stacked, dim) == ra
}

/// True iff `v` lies in the span of `vectors`.
pub fn in_span(v: &[Scalar], vectors: &[Vector], dim: usize) -> bool {
    let base = span_dim(vectors, dim);
    let mut stacked = vectors.to_vec();
    stacked.push(v.to_vec());
    span_dim(&stacked, dim) == base
}

/// Annihilator of `span(vectors)` under the standard pairing
/// `⟨g, f⟩ = Σ g_i f_i`: a basis of `{g : ⟨g, f⟩ = 0 for all f}`.
pub fn annihilator(vectors: &[Vector], dim: usize) -> Vec<Vector> {
    if vectors.is_empty() {
        return (0..dim)
            .map(|i| {
                let mut v = zero_vector(dim);
                v[i] = Scalar::one();
                v
            })
            .collect();
    }
    Matrix::from_rows(vectors, dim).kernel_basis()
}

/// Projectors for a direct-sum decomposition `U = ⊕ S_k`.
///
/// `P_k` maps onto `S_k` along the sum of the remaining components. Fails with
/// [`Error::NotComplementary`] if the components do not add up to `U` or
/// intersect nontrivially.
pub fn projectors(decomposition: &[Vec<Vector>], dim: usize) -> Result<Vec<Matrix>> {
    let bases: Vec<Vec<Vector>> = decomposition.iter().map(|s| span_basis(s, dim)).collect();
    let total: usize = bases.iter().map(Vec::len).sum();
    if total != dim {
        return Err(Error::NotComplementary(format!(
            "component dimensions sum to {total}, ambient dimension is {dim}"
        )));
    }
    let columns: Vec<Vector> = bases.iter().flatten().cloned().collect();
    let joint = Matrix::from_columns(&columns, dim);
    let inv = joint.inverse().ok_or_else(|| {
        Error::NotComplementary("the components intersect nontrivially".to_string())
    })?;
    let mut out = Vec::with_capacity(bases.len());
    let mut offset = 0;
    for basis in &bases {
        let mut select = Matrix::zeros(dim, dim);
        for i in offset..offset + basis.len() {
            select[(i, i)] = Scalar::one();
        }
        offset += basis.len();
        out.push(&(&joint * &select) * &inv);
    }
    Ok(out)
}

type SparseRow = Vec<(usize, Scalar)>;

/// Incremental row echelon basis for sparse rows over a large index set.
///
/// Rows are inserted one at a time; [`SparseEchelon::insert`] reports whether
/// the row increased the rank.
#[derive(Debug, Default, Clone)]
pub struct SparseEchelon {
    pivots: HashMap<usize, SparseRow>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Inserts a row given as `(column, value)` pairs; duplicates are summed.
    pub fn insert(&mut self, entries: impl IntoIterator<Item = (usize, Scalar)>) -> bool {
        let mut row: SparseRow = entries.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        row.sort_by_key(|(c, _)| *c);
        row = merge_duplicates(row);
        loop {
            let Some((lead, coeff)) = row.first().cloned() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(pivot) => row = axpy(&row, &coeff, pivot),
                None => {
                    let inv = coeff.recip();
                    let row: SparseRow = row.into_iter().map(|(c, v)| (c, v * &inv)).collect();
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }
}

fn merge_duplicates(row: SparseRow) -> SparseRow {
    let mut out: SparseRow = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// `row - k * pivot`, both sorted by column.
fn axpy(row: &SparseRow, k: &Scalar, pivot: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_pivot = i == row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_pivot {
            out.push((pivot[j].0, -(k * &pivot[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - k * &pivot[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(rows, cols, |_, _| {
            rat(rng.gen_range(-5..=5), rng.gen_range(1..=3))
        })
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::identity(3)), 3);
        assert_eq!(rank(&Matrix::zeros(2, 5)), 0);
        assert_eq!(rank(&Matrix::from_i64(2, 2, &[1, 2, 2, 4])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Matrix::identity(4)).is_empty());
        let k = kernel_basis(&Matrix::from_i64(1, 2, &[1, 1]));
        assert_eq!(k.len(), 1);
        assert!(same_span(&k, &[vec![int(1), int(-1)]], 2));
    }

    #[test]
    fn random_full_rank_kernel_is_annihilated() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut m = random_matrix(&mut rng, 6, 10);
        while m.rank() < 6 {
            m = random_matrix(&mut rng, 6, 10);
        }
        let k = m.kernel_basis();
        assert_eq!(k.len(), 4);
        for v in &k {
            assert!(is_zero_vector(&m.mul_vec(v)));
        }
    }

    #[test]
    fn bareiss_agrees_with_rational_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let rows = rng.gen_range(1..7);
            let cols = rng.gen_range(1..7);
            let mut m = random_matrix(&mut rng, rows, cols);
            // force some dependence
            if rows > 2 {
                for c in 0..cols {
                    let v = &m[(0, c)] * int(2) - &m[(1, c)];
                    m[(2, c)] = v;
                }
            }
            assert_eq!(bareiss_rank(&m), m.rank());
        }
    }

    #[test]
    fn annihilator_edge_cases() {
        let whole: Vec<Vector> = (0..3)
            .map(|i| (0..3).map(|j| int((i == j) as i64)).collect())
            .collect();
        assert!(annihilator(&whole, 3).is_empty());
        assert_eq!(annihilator(&[], 3).len(), 3);
        assert_eq!(annihilator(&[zero_vector(3)], 3).len(), 3);
    }

    #[test]
    fn double_annihilator_recovers_span() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let k = rng.gen_range(1..5);
            let s = random_matrix(&mut rng, k, 5).row_vectors();
            let ann = annihilator(&s, 5);
            assert_eq!(ann.len(), 5 - span_dim(&s, 5));
            assert!(same_span(&annihilator(&ann, 5), &s, 5));
        }
    }

    #[test]
    fn projectors_form_partition_of_unity() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let basis = random_matrix(&mut rng, 5, 5);
        assert_eq!(basis.rank(), 5);
        let rows = basis.row_vectors();
        let parts = vec![rows[..2].to_vec(), rows[2..3].to_vec(), rows[3..].to_vec()];
        let ps = projectors(&parts, 5).unwrap();
        let mut sum = Matrix::zeros(5, 5);
        for (k, p) in ps.iter().enumerate() {
            sum = &sum + p;
            for (l, q) in ps.iter().enumerate() {
                let prod = p * q;
                if k == l {
                    assert_eq!(&prod, p);
                } else {
                    assert!(prod.is_zero());
                }
            }
            for v in &parts[k] {
                assert_eq!(&p.mul_vec(v), v);
            }
        }
        assert_eq!(sum, Matrix::identity(5));
    }

    #[test]
    fn projectors_reject_overlap() {
        let a = vec![vec![int(1), int(0)]];
        let err = projectors(&[a.clone(), a], 2).unwrap_err();
        assert!(matches!(err, Error::NotComplementary(_)));
        let err = projectors(&[vec![vec![int(1), int(0)]]], 2).unwrap_err();
        assert!(matches!(err, Error::NotComplementary(_)));
    }

    #[test]
    fn sparse_echelon_matches_dense_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..30 {
            let m = Matrix::from_fn(8, 6, |_, _| {
                if rng.gen_bool(0.6) {
                    int(0)
                } else {
                    rat(rng.gen_range(-3..=3), rng.gen_range(1..=2))
                }
            });
            let mut e = SparseEchelon::new();
            for r in 0..m.rows() {
                e.insert(m.row(r).iter().cloned().enumerate());
            }
            assert_eq!(e.rank(), m.rank());
        }
    }

    #[test]
    fn scalar_parsing() {
        assert_eq!(parse_scalar("3/6"), Some(rat(1, 2)));
        assert_eq!(parse_scalar(" -7 "), Some(int(-7)));
        assert_eq!(parse_scalar("1/0"), None);
        assert_eq!(parse_scalar("x"), None);
        assert_eq!(format_scalar(&rat(-4, 6)), "-2/3");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn scalar() -> impl Strategy<Value = Scalar> {
            (-50i64..50, 1i64..20).prop_map(|(n, d)| rat(n, d))
        }

        proptest! {
            #[test]
            fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
                prop_assert_eq!(&(&a + &b) * &c, &a * &c + &b * &c);
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                if !b.is_zero() {
                    prop_assert_eq!(&(&a / &b) * &b, a.clone());
                }
                prop_assert!(b.denom().is_positive());
                prop_assert!(b.numer().gcd(b.denom()).is_one());
            }

            #[test]
            fn rank_nullity(entries in proptest::collection::vec(scalar(), 12)) {
                let m = Matrix::from_fn(3, 4, |r, c| entries[r * 4 + c].clone());
                let k = m.kernel_basis();
                prop_assert_eq!(m.rank() + k.len(), 4);
                for v in &k {
                    prop_assert!(is_zero_vector(&m.mul_vec(v)));
                }
                prop_assert_eq!(bareiss_rank(&m), m.rank());
            }
        }
    }
}
