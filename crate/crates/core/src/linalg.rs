//! Exact sparse linear algebra by fraction-free elimination.
//!
//! Rows are kept as primitive integer vectors: every elimination step is an
//! integer combination `a * row - b * pivot_row` followed by division by the
//! content, so no rational arithmetic happens until back substitution.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Rational;

/// Sparse integer row, sorted by column.
type Row = Vec<(usize, BigInt)>;

fn primitive(mut row: Row) -> Row {
    let mut g = BigInt::zero();
    for (_, v) in &row {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if let Some((_, lead)) = row.first() {
        if lead.is_negative() {
            g = -g;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
    row
}

fn integer_row(entries: impl IntoIterator<Item = (usize, Rational)>) -> Row {
    let entries: Vec<(usize, Rational)> = entries.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    let l = entries
        .iter()
        .fold(BigInt::one(), |l, (_, v)| l.lcm(v.denom()));
    let mut row: Row = entries
        .into_iter()
        .map(|(c, v)| (c, (v * Rational::from_integer(l.clone())).to_integer()))
        .collect();
    row.sort_by_key(|(c, _)| *c);
    primitive(row)
}

fn entry(row: &Row, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|i| &row[i].1)
}

/// `a * row - b * pivot`, made primitive.
fn combine(row: &Row, a: &BigInt, pivot: &Row, b: &BigInt) -> Row {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = pivot.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        let (col, v) = if ci < cj {
            i += 1;
            (ci, a * &row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(b * &pivot[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, a * &row[i - 1].1 - b * &pivot[j - 1].1)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    primitive(out)
}

/// A linear system `A v = b` assembled column by column with arbitrary
/// ordered row keys.
#[derive(Clone, Debug)]
pub struct ColumnSystem<K: Ord + Clone> {
    row_index: BTreeMap<K, usize>,
    entries: Vec<Vec<(usize, Rational)>>,
    columns: usize,
}

impl<K: Ord + Clone> Default for ColumnSystem<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone> ColumnSystem<K> {
    pub fn new() -> Self {
        ColumnSystem {
            row_index: BTreeMap::new(),
            entries: Vec::new(),
            columns: 0,
        }
    }

    fn row(&mut self, key: K) -> usize {
        let next = self.row_index.len();
        let idx = *self.row_index.entry(key).or_insert(next);
        if idx == self.entries.len() {
            self.entries.push(Vec::new());
        }
        idx
    }

    /// Appends a column and returns its index.
    pub fn push_column(&mut self, column: impl IntoIterator<Item = (K, Rational)>) -> usize {
        let c = self.columns;
        self.columns += 1;
        for (k, v) in column {
            if !v.is_zero() {
                let r = self.row(k);
                self.entries[r].push((c, v));
            }
        }
        c
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    fn rows_with_rhs(&mut self, rhs: impl IntoIterator<Item = (K, Rational)>) -> Vec<Row> {
        let rhs_col = self.columns;
        let mut extra: Vec<(usize, Rational)> = Vec::new();
        for (k, v) in rhs {
            if !v.is_zero() {
                let r = self.row(k);
                extra.push((r, v));
            }
        }
        let mut rows: Vec<Vec<(usize, Rational)>> = self.entries.clone();
        for (r, v) in extra {
            rows[r].push((rhs_col, v));
        }
        rows.into_iter().map(integer_row).filter(|r| !r.is_empty()).collect()
    }

    /// Solves the system. Pivots are taken in column order and free
    /// variables are set to zero, so the answer is deterministic.
    pub fn solve(&mut self, rhs: impl IntoIterator<Item = (K, Rational)>) -> Option<Vec<Rational>> {
        let n = self.columns;
        let rows = self.rows_with_rhs(rhs);
        let reduced = reduce(rows, n + 1);
        let mut x = vec![Rational::zero(); n];
        for row in &reduced {
            let (pc, pv) = &row[0];
            if *pc == n {
                return None;
            }
            let b = entry(row, n).cloned().unwrap_or_else(BigInt::zero);
            x[*pc] = Rational::new(b, pv.clone());
        }
        Some(x)
    }

    /// Rank of the coefficient matrix.
    pub fn rank(&mut self) -> usize {
        let n = self.columns;
        let rows = self.rows_with_rhs(std::iter::empty());
        reduce(rows, n).len()
    }

    /// Basis of the null space, one vector per free column.
    pub fn kernel(&mut self) -> Vec<Vec<Rational>> {
        let n = self.columns;
        let rows = self.rows_with_rhs(std::iter::empty());
        let reduced = reduce(rows, n);
        let pivots: BTreeMap<usize, &Row> = reduced.iter().map(|r| (r[0].0, r)).collect();
        let mut basis = Vec::new();
        for free in (0..n).filter(|c| !pivots.contains_key(c)) {
            let mut v = vec![Rational::zero(); n];
            v[free] = Rational::one();
            for (&pc, row) in &pivots {
                if let Some(e) = entry(row, free) {
                    v[pc] = -Rational::new(e.clone(), row[0].1.clone());
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Gauss-Jordan elimination restricted to pivot columns `< limit`. Returns
/// the nonzero rows, each starting with its pivot; pivot columns appear in
/// no other row.
fn reduce(mut rows: Vec<Row>, limit: usize) -> Vec<Row> {
    let mut done: Vec<Row> = Vec::new();
    loop {
        rows.retain(|r| !r.is_empty());
        // Next pivot column: the smallest leading column among pending rows.
        let Some(col) = rows.iter().map(|r| r[0].0).min() else {
            break;
        };
        if col >= limit {
            done.append(&mut rows);
            break;
        }
        let pick = rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r[0].0 == col)
            .min_by_key(|(i, r)| (r.len(), *i))
            .map(|(i, _)| i)
            .expect("a row leads with col");
        let pivot = rows.swap_remove(pick);
        let pv = pivot[0].1.clone();
        for r in rows.iter_mut().chain(done.iter_mut()) {
            if let Some(v) = entry(r, col).cloned() {
                let g = pv.gcd(&v);
                *r = combine(r, &(&pv / &g), &pivot, &(&v / &g));
            }
        }
        done.push(pivot);
    }
    done.retain(|r| !r.is_empty());
    done.sort_by_key(|r| r[0].0);
    done
}
