//! Exact linear algebra over the rationals.
//!
//! Matrices are stored sparsely and reduced with fraction-free integer
//! elimination: every row is scaled to a primitive integer vector before
//! elimination, and each elimination step forms an integer combination of two
//! rows followed by removal of the row content. Pivot columns are processed
//! left to right, so the final reduced form is the row-reduced echelon form up
//! to a positive scale per row. Kernel bases read off from it are canonical.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar, always kept in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Dense rational column vector.
pub type QVector = Vec<Rational>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("composite of consecutive differentials is not zero")]
    CompositionNotZero,
    #[error("boundary vector {index} is not in the span of the cycles")]
    NotASubspace { index: usize },
}

/// Sparse rational matrix with fixed dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[QVector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length does not match row count");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Sets an entry; storing zero removes it.
    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    pub fn add_to(&mut self, row: usize, col: usize, value: &Rational) {
        let v = self.get(row, col) + value;
        self.set(row, col, v);
    }

    /// Nonzero entries in (row, col) order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Self {
        Self {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), v)| ((c, r), v.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut by_row: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); other.rows];
        for (&(r, c), v) in &other.entries {
            by_row[r].push((c, v));
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for (&(i, k), a) in &self.entries {
            for &(j, b) in &by_row[k] {
                out.add_to(i, j, &(a * b));
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Rational]) -> QVector {
        assert_eq!(v.len(), self.cols, "vector length does not match column count");
        let mut out = vec![Rational::zero(); self.rows];
        for (&(r, c), a) in &self.entries {
            if !v[c].is_zero() {
                out[r] += a * &v[c];
            }
        }
        out
    }

    pub fn column(&self, col: usize) -> QVector {
        (0..self.rows).map(|r| self.get(r, col)).collect()
    }

    pub fn columns(&self) -> Vec<QVector> {
        let mut out = vec![vec![Rational::zero(); self.rows]; self.cols];
        for (&(r, c), v) in &self.entries {
            out[c][r] = v.clone();
        }
        out
    }

    fn integer_rows(&self) -> Vec<SparseRow> {
        let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            rows[r].push((c, v.clone()));
        }
        rows.into_iter()
            .filter(|r| !r.is_empty())
            .map(|r| SparseRow::from_rational(&r))
            .collect()
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Sparse integer row, sorted by column, no stored zeros.
#[derive(Clone, Debug)]
struct SparseRow(Vec<(usize, BigInt)>);

impl SparseRow {
    fn from_rational(entries: &[(usize, Rational)]) -> Self {
        let lcm = entries
            .iter()
            .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
        let mut row: Vec<(usize, BigInt)> = entries
            .iter()
            .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
            .collect();
        row.sort_by_key(|(c, _)| *c);
        let mut row = SparseRow(row);
        row.make_primitive();
        row
    }

    fn get(&self, col: usize) -> Option<&BigInt> {
        self.0
            .binary_search_by_key(&col, |(c, _)| *c)
            .ok()
            .map(|i| &self.0[i].1)
    }

    fn make_primitive(&mut self) {
        let g = self
            .0
            .iter()
            .fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
        if !g.is_zero() && !g.is_one() {
            for (_, v) in &mut self.0 {
                *v /= &g;
            }
        }
    }

    /// Replaces `self` by `p*self - a*pivot` (with `p`, `a` divided by their
    /// gcd) which clears the entry `a` of `self` against pivot entry `p`.
    fn eliminate(&mut self, a: &BigInt, pivot: &SparseRow, p: &BigInt) {
        let g = a.gcd(p);
        let sa = p / &g;
        let sp = a / &g;
        let mut out = Vec::with_capacity(self.0.len() + pivot.0.len());
        let (mut i, mut j) = (0, 0);
        let (x, y) = (&self.0, &pivot.0);
        while i < x.len() || j < y.len() {
            let take = match (x.get(i), y.get(j)) {
                (Some((cx, _)), Some((cy, _))) => cx.cmp(cy),
                (Some(_), None) => std::cmp::Ordering::Less,
                (None, _) => std::cmp::Ordering::Greater,
            };
            match take {
                std::cmp::Ordering::Less => {
                    out.push((x[i].0, &x[i].1 * &sa));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((y[j].0, -(&y[j].1 * &sp)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let v = &x[i].1 * &sa - &y[j].1 * &sp;
                    if !v.is_zero() {
                        out.push((x[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        self.0 = out;
        self.make_primitive();
    }
}

/// Reduced echelon form: one primitive integer row per pivot, pivot entry
/// positive, every pivot column zero outside its own row.
struct Echelon {
    cols: usize,
    pivots: Vec<(usize, SparseRow)>,
}

impl Echelon {
    fn of(m: &QMatrix) -> Self {
        Self::reduce(m.integer_rows(), m.cols())
    }

    fn reduce(rows: Vec<SparseRow>, cols: usize) -> Self {
        let mut pending = rows;
        let mut done: Vec<(usize, SparseRow)> = Vec::new();
        for col in 0..cols {
            if pending.is_empty() {
                break;
            }
            // pending rows are supported on columns >= col
            let choice = pending
                .iter()
                .enumerate()
                .filter(|(_, r)| r.0.first().map(|(c, _)| *c) == Some(col))
                .min_by_key(|(i, r)| (r.0.len(), *i))
                .map(|(i, _)| i);
            let Some(idx) = choice else { continue };
            let pivot = pending.remove(idx);
            let p = pivot.0[0].1.clone();
            for row in pending.iter_mut() {
                if let Some(a) = row.get(col).cloned() {
                    row.eliminate(&a, &pivot, &p);
                }
            }
            for (_, row) in done.iter_mut() {
                if let Some(a) = row.get(col).cloned() {
                    row.eliminate(&a, &pivot, &p);
                }
            }
            pending.retain(|r| !r.0.is_empty());
            done.push((col, pivot));
        }
        for (col, row) in done.iter_mut() {
            if row.get(*col).is_some_and(|v| v.is_negative()) {
                for (_, v) in &mut row.0 {
                    *v = -&*v;
                }
            }
        }
        Self { cols, pivots: done }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.iter().map(|(c, _)| *c).collect()
    }

    fn kernel(&self) -> Vec<QVector> {
        let pivot_cols: std::collections::BTreeSet<usize> =
            self.pivots.iter().map(|(c, _)| *c).collect();
        (0..self.cols)
            .filter(|c| !pivot_cols.contains(c))
            .map(|free| {
                let mut v = vec![Rational::zero(); self.cols];
                v[free] = Rational::one();
                for (pc, row) in &self.pivots {
                    if let Some(a) = row.get(free) {
                        let p = row.get(*pc).expect("pivot entry present");
                        v[*pc] = -Rational::new(a.clone(), p.clone());
                    }
                }
                v
            })
            .collect()
    }
}

/// Rank over the rationals.
pub fn rank(m: &QMatrix) -> usize {
    Echelon::of(m).rank()
}

/// Canonical kernel basis: one vector per non-pivot column of the reduced
/// echelon form, with a 1 in that column.
pub fn kernel_basis(m: &QMatrix) -> Vec<QVector> {
    Echelon::of(m).kernel()
}

/// Indices of the greedy maximal independent subset of `vectors`, scanning in order.
pub fn independent_subset(vectors: &[QVector]) -> Vec<usize> {
    let Some(len) = vectors.first().map(Vec::len) else {
        return Vec::new();
    };
    Echelon::of(&QMatrix::from_columns(len, vectors)).pivot_columns()
}

/// Dimension of the span of `vectors`.
pub fn span_dim(vectors: &[QVector]) -> usize {
    independent_subset(vectors).len()
}

/// dim(ker d_out / im d_in).
pub fn homology_dim(d_out: &QMatrix, d_in: &QMatrix) -> Result<usize, LinalgError> {
    if d_out.cols() != d_in.rows() {
        return Err(LinalgError::DimensionMismatch(format!(
            "outgoing map has {} columns but incoming map has {} rows",
            d_out.cols(),
            d_in.rows()
        )));
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(LinalgError::CompositionNotZero);
    }
    Ok(d_out.cols() - rank(d_out) - rank(d_in))
}

/// Picks cycles that, together with the boundaries, span the cycle space.
///
/// The representatives are a subset of `cycles`, chosen greedily in input
/// order; their count is dim span(cycles) - dim span(boundaries).
pub fn quotient_representatives(
    cycles: &[QVector],
    boundaries: &[QVector],
) -> Result<Vec<QVector>, LinalgError> {
    let Some(len) = cycles.first().or(boundaries.first()).map(Vec::len) else {
        return Ok(Vec::new());
    };
    if cycles.iter().chain(boundaries).any(|v| v.len() != len) {
        return Err(LinalgError::DimensionMismatch(
            "vectors of different lengths".into(),
        ));
    }
    let cycle_first: Vec<QVector> = cycles.iter().chain(boundaries).cloned().collect();
    if let Some(&bad) = independent_subset(&cycle_first)
        .iter()
        .find(|&&i| i >= cycles.len())
    {
        return Err(LinalgError::NotASubspace {
            index: bad - cycles.len(),
        });
    }
    let boundary_first: Vec<QVector> = boundaries.iter().chain(cycles).cloned().collect();
    Ok(independent_subset(&boundary_first)
        .into_iter()
        .filter(|&i| i >= boundaries.len())
        .map(|i| cycles[i - boundaries.len()].clone())
        .collect())
}

/// Solves `sum x_j columns[j] = target` for linearly independent columns.
/// Returns `None` when `target` is outside their span.
pub fn solve_in_span(columns: &[QVector], target: &[Rational]) -> Option<QVector> {
    let n = target.len();
    let mut all: Vec<QVector> = columns.to_vec();
    all.push(target.to_vec());
    let ech = Echelon::of(&QMatrix::from_columns(n, &all));
    let rhs = columns.len();
    if ech.pivots.iter().any(|(c, _)| *c == rhs) {
        return None;
    }
    let mut x = vec![Rational::zero(); columns.len()];
    for (pc, row) in &ech.pivots {
        if let Some(b) = row.get(rhs) {
            let p = row.get(*pc).expect("pivot entry present");
            x[*pc] = Rational::new(b.clone(), p.clone());
        }
    }
    Some(x)
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// A subquotient `cycles / boundaries` with a fixed basis of representatives,
/// able to express any cycle in that basis.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient: usize,
    representatives: Vec<QVector>,
    boundary_basis: Vec<QVector>,
}

impl Subquotient {
    pub fn new(cycles: &[QVector], boundaries: &[QVector], ambient: usize) -> Result<Self, LinalgError> {
        let representatives = quotient_representatives(cycles, boundaries)?;
        let boundary_basis = independent_subset(boundaries)
            .into_iter()
            .map(|i| boundaries[i].clone())
            .collect();
        Ok(Self {
            ambient,
            representatives,
            boundary_basis,
        })
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn representatives(&self) -> &[QVector] {
        &self.representatives
    }

    /// Coordinates of the class of `v` in the representative basis, or `None`
    /// if `v` is not a cycle of this subquotient.
    pub fn coordinates(&self, v: &[Rational]) -> Option<QVector> {
        assert_eq!(v.len(), self.ambient, "vector length does not match ambient space");
        if self.representatives.is_empty() && self.boundary_basis.is_empty() {
            return is_zero_vector(v).then(Vec::new);
        }
        let columns: Vec<QVector> = self
            .representatives
            .iter()
            .chain(&self.boundary_basis)
            .cloned()
            .collect();
        let mut x = solve_in_span(&columns, v)?;
        x.truncate(self.representatives.len());
        Some(x)
    }

    /// True when `v` represents the zero class.
    pub fn is_boundary(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some_and(|x| is_zero_vector(&x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_i64_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    /// Dense Bareiss elimination, used only as an independent rank oracle.
    fn bareiss_rank(mat: &QMatrix) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..mat.rows())
            .map(|r| {
                let row: Vec<Rational> = (0..mat.cols()).map(|c| mat.get(r, c)).collect();
                let l = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                row.iter().map(|v| v.numer() * (&l / v.denom())).collect()
            })
            .collect();
        let (rows, cols) = (mat.rows(), mat.cols());
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            for i in r + 1..rows {
                for j in c + 1..cols {
                    let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                    a[i][j] = v / &prev;
                }
                a[i][c] = BigInt::zero();
            }
            prev = a[r][c].clone();
            r += 1;
            if r == rows {
                break;
            }
        }
        r
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&QMatrix::zeros(3, 3)), 0);
        assert_eq!(rank(&QMatrix::identity(3)), 3);
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&QMatrix::identity(2)).is_empty());
        let k = kernel_basis(&QMatrix::zeros(2, 3));
        assert_eq!(k.len(), 3);
        assert_eq!(span_dim(&k), 3);
        let k = kernel_basis(&m(&[&[1, 1]]));
        assert_eq!(k, vec![vec![int(-1), int(1)]]);
    }

    #[test]
    fn homology_dim_examples() {
        let z = QMatrix::zeros(2, 2);
        assert_eq!(homology_dim(&z, &z).unwrap(), 2);
        assert_eq!(homology_dim(&QMatrix::identity(2), &z).unwrap(), 0);
        let d_in = m(&[&[1], &[0], &[0]]);
        assert_eq!(homology_dim(&QMatrix::zeros(1, 3), &d_in).unwrap(), 2);
    }

    #[test]
    fn homology_dim_rejects_nonzero_composite() {
        let id = QMatrix::identity(2);
        assert_eq!(homology_dim(&id, &id), Err(LinalgError::CompositionNotZero));
    }

    #[test]
    fn quotient_representative_examples() {
        let e1 = vec![int(1), int(0)];
        let e2 = vec![int(0), int(1)];
        let reps = quotient_representatives(&[e1.clone(), e2.clone()], std::slice::from_ref(&e1)).unwrap();
        assert_eq!(reps, vec![e2.clone()]);
        let reps = quotient_representatives(&[e1.clone(), e2.clone()], &[e1.clone(), e2.clone()]).unwrap();
        assert!(reps.is_empty());
        assert_eq!(quotient_representatives(std::slice::from_ref(&e1), &[]).unwrap(), vec![e1.clone()]);
        assert_eq!(
            quotient_representatives(&[e1], &[e2]),
            Err(LinalgError::NotASubspace { index: 0 })
        );
    }

    #[test]
    fn subquotient_coordinates() {
        let e = |i: usize| -> QVector { (0..3).map(|j| int((i == j) as i64)).collect() };
        let sq = Subquotient::new(&[e(0), e(1)], &[e(0)], 3).unwrap();
        assert_eq!(sq.dim(), 1);
        let v = vec![int(5), int(3), int(0)];
        assert_eq!(sq.coordinates(&v), Some(vec![int(3)]));
        assert_eq!(sq.coordinates(&e(2)), None);
        assert!(sq.is_boundary(&e(0)));
    }

    #[test]
    fn solve_with_fractions() {
        let cols = vec![vec![int(2), int(0)], vec![int(1), int(3)]];
        let x = solve_in_span(&cols, &[int(1), int(1)]).unwrap();
        assert_eq!(x, vec![frac(1, 3), frac(1, 3)]);
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-4i64..=4, 1i64..=3).prop_map(|(n, d)| frac(n, d))
    }

    fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = QMatrix> {
        // bias towards zeros so that rank deficiency actually occurs
        proptest::collection::vec(
            prop_oneof![3 => Just(Rational::zero()), 2 => small_rational()],
            rows * cols,
        )
        .prop_map(move |v| {
            let rows_v: Vec<Vec<Rational>> = v.chunks(cols).map(<[Rational]>::to_vec).collect();
            QMatrix::from_rows(&rows_v)
        })
    }

    proptest! {
        #[test]
        fn rank_matches_bareiss_and_transpose(a in matrix(6, 6)) {
            let r = rank(&a);
            prop_assert_eq!(r, bareiss_rank(&a));
            prop_assert_eq!(r, rank(&a.transpose()));
        }

        #[test]
        fn rank_invariant_under_permutation_and_scaling(
            a in matrix(6, 6),
            perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle(),
            scale in proptest::collection::vec((1i64..=5, 1i64..=5, any::<bool>()), 6),
        ) {
            let mut b = QMatrix::zeros(6, 6);
            for (r, c, v) in a.entries() {
                let (n, d, neg) = scale[r];
                let s = if neg { -frac(n, d) } else { frac(n, d) };
                b.set(perm[r], perm[5 - c], v * s);
            }
            prop_assert_eq!(rank(&a), rank(&b));
        }

        #[test]
        fn kernel_plus_rank_is_cols(a in matrix(4, 7)) {
            let k = kernel_basis(&a);
            prop_assert_eq!(k.len() + rank(&a), a.cols());
            prop_assert_eq!(span_dim(&k), k.len());
            for v in &k {
                prop_assert!(is_zero_vector(&a.apply(v)));
            }
        }
    }
}
