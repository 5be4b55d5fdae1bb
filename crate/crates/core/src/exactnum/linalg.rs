use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Sparse matrix over the rationals; explicit zeros are never stored.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::new(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (j, v) in row.iter().enumerate() {
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

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Rational) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        if v.is_zero() {
            return;
        }
        let e = self.entries.entry((i, j)).or_insert_with(Rational::zero);
        *e += v;
        if e.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Rational)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn transpose(&self) -> Self {
        Self {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|((i, j), v)| ((*j, *i), v.clone())).collect(),
        }
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        let mut out = vec![Rational::zero(); self.rows];
        for ((i, j), v) in &self.entries {
            out[*i] += v * &x[*j];
        }
        Ok(out)
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut by_row: BTreeMap<usize, Vec<(usize, &Rational)>> = BTreeMap::new();
        for ((k, j), v) in &other.entries {
            by_row.entry(*k).or_default().push((*j, v));
        }
        let mut out = SparseMatrix::new(self.rows, other.cols);
        for ((i, k), a) in &self.entries {
            if let Some(row) = by_row.get(k) {
                for (j, b) in row {
                    out.add_to(*i, *j, &(a * *b));
                }
            }
        }
        Ok(out)
    }

    fn sparse_rows(&self) -> Vec<Row> {
        let mut rows = vec![Row::new(); self.rows];
        for ((i, j), v) in &self.entries {
            rows[*i].push((*j, v.clone()));
        }
        rows
    }
}

type Row = Vec<(usize, Rational)>;

/// `a - c * b` for sorted sparse rows.
fn axpy(a: &Row, c: &Rational, b: &Row) -> Row {
    let mut out = Row::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -(c * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - c * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row echelon data: pivot column -> (row normalised to leading 1, rhs).
struct Echelon {
    pivots: BTreeMap<usize, (Row, Rational)>,
    inconsistent: bool,
}

/// Processes rows in index order; each reduced row's lowest nonzero column
/// becomes its pivot, so the pivot choice is "lowest row, then lowest column"
/// and repeated runs are identical.
fn echelon(rows: Vec<Row>, rhs: Option<&[Rational]>) -> Echelon {
    let mut pivots: BTreeMap<usize, (Row, Rational)> = BTreeMap::new();
    let mut inconsistent = false;
    for (idx, mut row) in rows.into_iter().enumerate() {
        let mut b = rhs.map_or_else(Rational::zero, |r| r[idx].clone());
        loop {
            let Some((col, lead)) = row.first().cloned() else {
                if !b.is_zero() {
                    inconsistent = true;
                }
                break;
            };
            if let Some((prow, pb)) = pivots.get(&col) {
                row = axpy(&row, &lead, prow);
                b -= &lead * pb;
            } else {
                let inv = lead.recip();
                for e in row.iter_mut() {
                    e.1 *= &inv;
                }
                b *= &inv;
                pivots.insert(col, (row, b));
                break;
            }
        }
    }
    Echelon { pivots, inconsistent }
}

/// Back substitution with all free variables set to zero.
fn back_substitute(ech: &Echelon, cols: usize, free: Option<usize>) -> Vec<Rational> {
    let mut x = vec![Rational::zero(); cols];
    if let Some(f) = free {
        x[f] = Rational::one();
    }
    for (col, (row, b)) in ech.pivots.iter().rev() {
        let mut v = if free.is_some() { Rational::zero() } else { b.clone() };
        for (j, a) in row.iter().skip(1) {
            if !x[*j].is_zero() {
                v -= a * &x[*j];
            }
        }
        x[*col] = v;
    }
    x
}

/// Exact rank over the rationals.
pub fn rank(m: &SparseMatrix) -> usize {
    // eliminate along the shorter side; rank is transpose invariant
    let rows = if m.rows <= m.cols { m.sparse_rows() } else { m.transpose().sparse_rows() };
    echelon(rows, None).pivots.len()
}

/// Modulus for [`rank_mod_p`], the Mersenne prime `2^61 - 1`.
pub const RANK_PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % RANK_PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    acc
}

fn reduce(r: &Rational) -> Option<u64> {
    let p = BigInt::from(RANK_PRIME);
    let num = r.numer().mod_floor(&p).to_u64()?;
    let den = r.denom().mod_floor(&p).to_u64()?;
    (den != 0).then(|| mul_mod(num, pow_mod(den, RANK_PRIME - 2)))
}

/// Rank of the reduction modulo [`RANK_PRIME`], or `None` when a
/// denominator vanishes there. Never exceeds the rank over the rationals.
pub fn rank_mod_p(m: &SparseMatrix) -> Option<usize> {
    let src = if m.rows <= m.cols { m.clone() } else { m.transpose() };
    let mut rows: Vec<Vec<(usize, u64)>> = vec![Vec::new(); src.rows];
    for ((i, j), v) in &src.entries {
        rows[*i].push((*j, reduce(v)?));
    }
    let mut pivots: BTreeMap<usize, Vec<(usize, u64)>> = BTreeMap::new();
    for mut row in rows {
        row.retain(|(_, v)| *v != 0);
        while let Some(&(col, lead)) = row.first() {
            let Some(prow) = pivots.get(&col) else {
                let inv = pow_mod(lead, RANK_PRIME - 2);
                for e in row.iter_mut() {
                    e.1 = mul_mod(e.1, inv);
                }
                pivots.insert(col, row);
                break;
            };
            // row - lead * prow
            let mut out = Vec::with_capacity(row.len() + prow.len());
            let (mut i, mut j) = (0, 0);
            while i < row.len() || j < prow.len() {
                if j >= prow.len() || (i < row.len() && row[i].0 < prow[j].0) {
                    out.push(row[i]);
                    i += 1;
                } else {
                    let sub = mul_mod(lead, prow[j].1);
                    let (c, base) = if i < row.len() && row[i].0 == prow[j].0 {
                        i += 1;
                        (prow[j].0, row[i - 1].1)
                    } else {
                        (prow[j].0, 0)
                    };
                    let v = (base + RANK_PRIME - sub) % RANK_PRIME;
                    if v != 0 {
                        out.push((c, v));
                    }
                    j += 1;
                }
            }
            row = out;
        }
    }
    Some(pivots.len())
}

/// One exact solution of `a x = b`, or `None` when the system is
/// inconsistent. Free variables are zero.
pub fn solve(a: &SparseMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} system with right-hand side of length {}",
            a.rows,
            a.cols,
            b.len()
        )));
    }
    let ech = echelon(a.sparse_rows(), Some(b));
    if ech.inconsistent {
        return Ok(None);
    }
    Ok(Some(back_substitute(&ech, a.cols, None)))
}

/// A basis of the right kernel, one vector per free column.
pub fn kernel_basis(a: &SparseMatrix) -> Vec<Vec<Rational>> {
    let ech = echelon(a.sparse_rows(), None);
    (0..a.cols)
        .filter(|c| !ech.pivots.contains_key(c))
        .map(|f| back_substitute(&ech, a.cols, Some(f)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(
            &rows.iter().map(|r| r.iter().map(|v| int(*v)).collect()).collect::<Vec<_>>(),
        )
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::identity(3)), 3);
        assert_eq!(rank(&SparseMatrix::new(4, 4)), 0);
        let u = [1, -2, 3, 0, 5];
        let v = [2, 1, 0, -1, 4];
        let outer: Vec<Vec<Rational>> =
            u.iter().map(|a| v.iter().map(|b| int(a * b)).collect()).collect();
        assert_eq!(rank(&SparseMatrix::from_dense(&outer)), 1);
    }

    #[test]
    fn solve_examples() {
        let b = vec![int(4), int(-1), int(7)];
        assert_eq!(solve(&SparseMatrix::identity(3), &b).unwrap(), Some(b.clone()));
        assert_eq!(solve(&SparseMatrix::new(3, 3), &b).unwrap(), None);
        let a = dense(&[&[1, 1], &[0, 2]]);
        assert_eq!(solve(&a, &[int(3), int(4)]).unwrap(), Some(vec![int(1), int(2)]));
        assert!(matches!(solve(&a, &[int(1)]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn underdetermined_solution_is_deterministic() {
        let a = dense(&[&[1, 2, 3], &[2, 4, 7]]);
        let b = [int(1), int(3)];
        let x = solve(&a, &b).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), b.to_vec());
        assert_eq!(solve(&a, &b).unwrap().unwrap(), x);
        // free column 1 is set to zero
        assert!(x[1].is_zero());
    }

    #[test]
    fn modular_rank_agrees_on_small_matrices() {
        let a = dense(&[&[1, 2, 3], &[2, 4, 7], &[3, 6, 10]]);
        assert_eq!(rank(&a), 2);
        assert_eq!(rank_mod_p(&a), Some(2));
        let mut b = SparseMatrix::new(2, 2);
        b.set(0, 0, Rational::new(1.into(), 3.into()));
        b.set(1, 1, Rational::new((-5).into(), 7.into()));
        assert_eq!(rank_mod_p(&b), Some(2));
        // p itself reduces to zero
        let mut c = SparseMatrix::new(1, 1);
        c.set(0, 0, Rational::from_integer(RANK_PRIME.into()));
        assert_eq!(rank_mod_p(&c), Some(0));
        assert_eq!(rank(&c), 1);
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = dense(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }
}
