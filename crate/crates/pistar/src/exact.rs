//! Exact rational linear algebra.
//!
//! Scalars are arbitrary-precision rationals ([`Rat`]), always kept in lowest
//! terms with a positive denominator (the representation maintained by
//! `num_rational::BigRational`). Batch rank / reduced row echelon form /
//! kernel computations use fraction-free Bareiss elimination on an integer
//! working copy, with a single normalization pass at the end; streaming
//! insertion of rows uses [`RrefAccum`], whose state is the RREF of all rows
//! inserted so far and therefore does not depend on insertion order.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Arbitrary-precision rational scalar.
pub type Rat = BigRational;

/// Sparse vector: coordinate index to nonzero scalar.
pub type SparseVec = BTreeMap<usize, Rat>;

/// Shorthand for a small rational constant.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for a small integer constant as a rational.
pub fn rat_int(num: i64) -> Rat {
    Rat::from_integer(BigInt::from(num))
}

/// Parse a rational written as `p` or `p/q` with an optional leading sign.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty rational literal".into());
    }
    let (num_s, den_s) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num_s
        .parse()
        .map_err(|_| format!("invalid integer {num_s:?}"))?;
    let den: BigInt = den_s
        .parse()
        .map_err(|_| format!("invalid integer {den_s:?}"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in {t:?}"));
    }
    Ok(Rat::new(num, den))
}

/// Format a rational as `p` or `p/q` (denominator omitted when 1).
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Dense matrix of rationals, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    /// Zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    /// Build from explicit rows; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    /// Row `i` as a slice.
    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Fraction-free Bareiss echelon on an integer copy.
    ///
    /// Returns the echelon matrix (over integers) together with the pivot
    /// column of each nonzero row, in order.
    fn bareiss(&self) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        // Clear denominators row by row; row scaling changes neither rank,
        // row space, nor kernel.
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let lcm = self.row(i).iter().fold(BigInt::one(), |acc, x| {
                    if x.is_zero() {
                        acc
                    } else {
                        let d = x.denom();
                        let g = num_integer_gcd(&acc, d);
                        acc / g * d
                    }
                });
                self.row(i)
                    .iter()
                    .map(|x| x.numer() * (&lcm / x.denom()))
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                    m[i][j] = num / &prev; // exact by the Bareiss identity
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        (m, pivots)
    }

    /// Rank of the matrix.
    pub fn rank(&self) -> usize {
        self.bareiss().1.len()
    }

    /// Reduced row echelon form and the pivot columns.
    ///
    /// The output has the same shape as the input; zero rows sink to the
    /// bottom, pivot entries are 1, and pivot columns are cleared elsewhere.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let (m, pivots) = self.bareiss();
        let mut out: Vec<Vec<Rat>> = m
            .into_iter()
            .map(|row| row.into_iter().map(Rat::from_integer).collect())
            .collect();
        // Normalize pivots to 1 and eliminate above, from the last pivot up.
        for (ri, &c) in pivots.iter().enumerate().rev() {
            let inv = out[ri][c].clone();
            for j in c..self.cols {
                let v = std::mem::replace(&mut out[ri][j], Rat::zero());
                out[ri][j] = v / &inv;
            }
            for i in 0..ri {
                if !out[i][c].is_zero() {
                    let f = out[i][c].clone();
                    for j in c..self.cols {
                        let sub = &f * &out[ri][j];
                        out[i][j] -= sub;
                    }
                }
            }
        }
        let mat = RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: out.into_iter().flatten().collect(),
        };
        (mat, pivots)
    }

    /// Basis of the right kernel `{x : Mx = 0}`, one vector per free column
    /// in increasing column order. The basis has `cols - rank` vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut out = Vec::new();
        for f in 0..self.cols {
            if pivot_set.contains(&f) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[f] = Rat::one();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(ri, f).clone();
            }
            out.push(v);
        }
        out
    }

    /// Whether `v` lies in the row space of the matrix.
    pub fn subspace_contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let (r, pivots) = self.rref();
        let mut w = v.to_vec();
        for (ri, &c) in pivots.iter().enumerate() {
            if !w[c].is_zero() {
                let f = w[c].clone();
                for j in c..self.cols {
                    let sub = &f * r.get(ri, j);
                    w[j] -= sub;
                }
            }
        }
        w.iter().all(Zero::is_zero)
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rat).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

fn num_integer_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// Incremental reduced-row-echelon accumulator over sparse rows.
///
/// After any sequence of [`RrefAccum::insert`] calls the stored rows are the
/// RREF of the span of everything inserted, so the final state is independent
/// of insertion order. Used by the evaluation engines to stream matrix
/// columns without materializing the full matrix.
#[derive(Clone, Default)]
pub struct RrefAccum {
    /// Rows keyed by pivot column; each row is normalized (pivot entry 1)
    /// and fully reduced against every other row.
    rows: BTreeMap<usize, SparseVec>,
}

impl RrefAccum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reduce `v` against the stored rows (without inserting).
    fn reduce(&self, mut v: SparseVec) -> SparseVec {
        // Walk the support in increasing column order; subtract the stored
        // row whenever the column is a pivot. New support introduced by a
        // subtraction is always to the right of the eliminated column.
        let mut col = 0usize;
        while let Some((&c, _)) = v.range(col..).next() {
            if let Some(row) = self.rows.get(&c) {
                let f = v.remove(&c).unwrap();
                for (&j, w) in row.iter().skip(1) {
                    let delta = &f * w;
                    let e = v.entry(j).or_insert_with(Rat::zero);
                    *e -= delta;
                    if e.is_zero() {
                        v.remove(&j);
                    }
                }
            }
            col = c + 1;
        }
        v
    }

    /// Insert a row; returns `true` if it enlarged the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut v = self.reduce(v);
        let Some((&p, _)) = v.iter().next() else {
            return false;
        };
        let inv = v[&p].clone();
        for w in v.values_mut() {
            *w /= &inv;
        }
        // Back-reduce existing rows against the new pivot.
        let keys: Vec<usize> = self.rows.keys().copied().collect();
        for k in keys {
            let f = match self.rows[&k].get(&p) {
                Some(f) if !f.is_zero() => f.clone(),
                _ => continue,
            };
            let row = self.rows.get_mut(&k).unwrap();
            row.remove(&p);
            let updates: Vec<(usize, Rat)> = v
                .iter()
                .filter(|(&j, _)| j != p)
                .map(|(&j, w)| (j, &f * w))
                .collect();
            for (j, delta) in updates {
                let e = row.entry(j).or_insert_with(Rat::zero);
                *e -= delta;
                if e.is_zero() {
                    row.remove(&j);
                }
            }
        }
        self.rows.insert(p, v);
        true
    }

    /// Number of independent rows inserted so far.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Whether `v` lies in the accumulated span.
    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// The stored RREF rows in pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    /// Pivot columns in increasing order.
    pub fn pivot_cols(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    /// Kernel of the accumulated rows viewed as a matrix with `ncols`
    /// columns: one basis vector per non-pivot column, in column order.
    pub fn kernel_basis(&self, ncols: usize) -> Vec<Vec<Rat>> {
        let mut out = Vec::new();
        for f in 0..ncols {
            if self.rows.contains_key(&f) {
                continue;
            }
            let mut v = vec![Rat::zero(); ncols];
            v[f] = Rat::one();
            for (&pc, row) in &self.rows {
                if let Some(w) = row.get(&f) {
                    v[pc] = -w.clone();
                }
            }
            out.push(v);
        }
        out
    }

    /// Materialize the stored rows as a dense matrix with `ncols` columns.
    pub fn to_matrix(&self, ncols: usize) -> RatMatrix {
        let rows: Vec<Vec<Rat>> = self
            .rows
            .values()
            .map(|r| {
                let mut v = vec![Rat::zero(); ncols];
                for (&j, w) in r {
                    v[j] = w.clone();
                }
                v
            })
            .collect();
        if rows.is_empty() {
            RatMatrix::zero(0, ncols)
        } else {
            RatMatrix::from_rows(rows)
        }
    }
}

/// Dense vector to sparse form, dropping zeros.
pub fn to_sparse(v: &[Rat]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Sparse vector to dense form of length `n`.
pub fn to_dense(v: &SparseVec, n: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); n];
    for (&i, x) in v {
        out[i] = x.clone();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn parse_and_format_roundtrip() {
        for s in ["0", "5", "-7", "3/4", "-3/4", "22/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        // Non-canonical inputs normalize.
        assert_eq!(format_rat(&parse_rat("4/8").unwrap()), "1/2");
        assert_eq!(format_rat(&parse_rat("3/-6").unwrap()), "-1/2");
        assert_eq!(format_rat(&parse_rat("-0").unwrap()), "0");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert!(parse_rat("").is_err());
    }

    #[test]
    fn rank_simple() {
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(m(&[&[1, 2], &[3, 4]]).rank(), 2);
        assert_eq!(m(&[&[0, 0], &[0, 0]]).rank(), 0);
        assert_eq!(RatMatrix::zero(0, 5).rank(), 0);
        assert_eq!(RatMatrix::zero(5, 0).rank(), 0);
    }

    #[test]
    fn rank_equals_transpose_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1], &[1, 3, 4]]);
        assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn rref_identity_block() {
        let a = m(&[&[2, 4, 0], &[0, 0, 3], &[2, 4, 3]]);
        let (r, pivots) = a.rref();
        assert_eq!(pivots, vec![0, 2]);
        assert_eq!(r.get(0, 0), &rat_int(1));
        assert_eq!(r.get(0, 1), &rat_int(2));
        assert_eq!(r.get(0, 2), &rat_int(0));
        assert_eq!(r.get(1, 2), &rat_int(1));
        assert!(r.row(2).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn rref_idempotent() {
        let a = m(&[&[1, 2, 3, 1], &[2, 0, 1, 1], &[3, 2, 4, 2]]);
        let (r1, p1) = a.rref();
        let (r2, p2) = r1.rref();
        assert_eq!(r1, r2);
        assert_eq!(p1, p2);
    }

    #[test]
    fn rank_plus_nullity() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[1, 0, 1, 0]]);
        let k = a.kernel_basis();
        assert_eq!(a.rank() + k.len(), a.cols());
        for v in &k {
            for i in 0..a.rows() {
                let dot: Rat = (0..a.cols()).map(|j| a.get(i, j) * &v[j]).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn subspace_contains_works() {
        let a = m(&[&[1, 0, 1], &[0, 1, 1]]);
        assert!(a.subspace_contains(&[rat_int(2), rat_int(3), rat_int(5)]));
        assert!(!a.subspace_contains(&[rat_int(0), rat_int(0), rat_int(1)]));
    }

    #[test]
    fn accum_matches_batch_rref() {
        let rows: Vec<Vec<Rat>> = vec![
            vec![rat_int(0), rat_int(2), rat_int(4)],
            vec![rat_int(1), rat_int(1), rat_int(1)],
            vec![rat_int(1), rat_int(3), rat_int(5)],
        ];
        let mut fwd = RrefAccum::new();
        let mut rev = RrefAccum::new();
        for r in &rows {
            fwd.insert(to_sparse(r));
        }
        for r in rows.iter().rev() {
            rev.insert(to_sparse(r));
        }
        assert_eq!(fwd.rank(), 2);
        assert_eq!(fwd.to_matrix(3), rev.to_matrix(3));
        // Also agrees with the batch RREF (ignoring its zero rows).
        let (batch, pivots) = RatMatrix::from_rows(rows).rref();
        let acc = fwd.to_matrix(3);
        assert_eq!(pivots, fwd.pivot_cols());
        for i in 0..acc.rows() {
            assert_eq!(acc.row(i), batch.row(i));
        }
    }

    #[test]
    fn accum_kernel_matches_matrix_kernel() {
        let rows = vec![
            vec![rat_int(1), rat_int(2), rat_int(0), rat_int(1)],
            vec![rat_int(0), rat_int(0), rat_int(1), rat_int(1)],
        ];
        let mut acc = RrefAccum::new();
        for r in &rows {
            acc.insert(to_sparse(r));
        }
        let k1 = acc.kernel_basis(4);
        let k2 = RatMatrix::from_rows(rows).kernel_basis();
        assert_eq!(k1, k2);
        assert_eq!(k1.len(), 2);
    }

    #[test]
    fn accum_contains() {
        let mut acc = RrefAccum::new();
        acc.insert(to_sparse(&[rat_int(1), rat_int(1), rat_int(0)]));
        acc.insert(to_sparse(&[rat_int(0), rat_int(1), rat_int(1)]));
        assert!(acc.contains(&to_sparse(&[rat_int(1), rat_int(2), rat_int(1)])));
        assert!(!acc.contains(&to_sparse(&[rat_int(1), rat_int(0), rat_int(0)])));
    }

    #[test]
    fn bareiss_stays_exact_with_fractions() {
        let a = RatMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 4), rat(1, 6)],
        ]);
        assert_eq!(a.rank(), 1);
        let b = RatMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 4), rat(1, 5)],
        ]);
        assert_eq!(b.rank(), 2);
    }
}
