//! Exact integer matrices: row lattices, Smith normal form and cokernels.
//!
//! Generator matrices in this crate are tall, narrow and highly redundant, so
//! rows are first folded one at a time into an echelon basis of the row
//! lattice (extended-gcd row operations). Once the lattice reaches full rank
//! its determinant `D` is known, `D·Zⁿ` lies inside it, and every further entry
//! is reduced modulo `D`. The Smith form is then taken on the small echelon
//! basis.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::abelian::AbelianStructure;
use crate::Int;

/// A dense integer matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Int>,
}

impl IntMatrix {
    /// The `rows × cols` zero matrix.
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![Int::zero(); rows * cols],
        }
    }

    /// The `n × n` identity.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    /// Square diagonal matrix.
    pub fn diagonal(diag: &[Int]) -> Self {
        let mut m = Self::zero(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    /// Builds a matrix from rows of length `cols`. Panics on ragged input.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Int>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            entries.extend(r);
        }
        IntMatrix {
            rows: n,
            cols,
            entries,
        }
    }

    /// Small-integer convenience constructor.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| Int::from(v)).collect())
                .collect(),
        )
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.entries[i * self.cols + j]
    }

    /// Overwrites entry `(i, j)`.
    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.entries[i * self.cols + j] = v;
    }

    /// Row `i` as a slice.
    pub fn row(&self, i: usize) -> &[Int] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Matrix product. Panics on a shape mismatch.
    pub fn multiply(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| self.row(i)))
            .finish()
    }
}

/// Diagonal of the Smith normal form: `d₁ | d₂ | … | d_rank`, all positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SmithForm {
    /// The nonzero diagonal entries.
    pub diagonal: Vec<Int>,
    /// Rank of the matrix.
    pub rank: usize,
}

/// An echelon basis of the lattice spanned by the rows inserted so far.
#[derive(Clone, Debug)]
pub struct RowLattice {
    cols: usize,
    // pivots[j] has its first nonzero entry, positive, in column j.
    pivots: Vec<Option<Vec<Int>>>,
    modulus: Option<Int>,
}

impl RowLattice {
    /// The zero lattice in `Z^cols`.
    pub fn new(cols: usize) -> Self {
        RowLattice {
            cols,
            pivots: vec![None; cols],
            modulus: None,
        }
    }

    /// Ambient dimension.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Current rank.
    pub fn rank(&self) -> usize {
        self.pivots.iter().filter(|p| p.is_some()).count()
    }

    /// `true` once the lattice is all of `Z^cols`.
    pub fn is_full(&self) -> bool {
        self.modulus.as_ref().is_some_and(One::is_one)
    }

    /// Adds a row to the spanning set. Panics on a length mismatch.
    pub fn insert(&mut self, row: &[Int]) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        let mut v = row.to_vec();
        if let Some(d) = &self.modulus {
            for e in v.iter_mut() {
                *e = e.mod_floor(d);
            }
        }
        let mut col = 0;
        while col < self.cols {
            if v[col].is_zero() {
                col += 1;
                continue;
            }
            let Some(p) = self.pivots[col].as_mut() else {
                if v[col].is_negative() {
                    v.iter_mut().for_each(|e| *e = -&*e);
                }
                self.pivots[col] = Some(v);
                self.reduce_tail(col);
                self.refresh_modulus();
                return;
            };
            let a = p[col].clone();
            let b = v[col].clone();
            if (&b % &a).is_zero() {
                let q = &b / &a;
                for j in col..self.cols {
                    v[j] -= &q * &p[j];
                }
            } else {
                let g = a.extended_gcd(&b);
                let (s, t) = (g.x, g.y);
                let (ag, bg) = (&a / &g.gcd, &b / &g.gcd);
                for j in col..self.cols {
                    let pj = p[j].clone();
                    let vj = core::mem::take(&mut v[j]);
                    p[j] = &s * &pj + &t * &vj;
                    v[j] = &bg * &pj - &ag * &vj;
                }
                if p[col].is_negative() {
                    p.iter_mut().for_each(|e| *e = -&*e);
                }
                self.reduce_tail(col);
                self.refresh_modulus();
            }
            if let Some(d) = &self.modulus {
                for e in v[col..].iter_mut() {
                    *e = e.mod_floor(d);
                }
            }
            col += 1;
        }
    }

    fn reduce_tail(&mut self, col: usize) {
        if let (Some(d), Some(p)) = (&self.modulus, self.pivots[col].as_mut()) {
            for e in p[col + 1..].iter_mut() {
                *e = e.mod_floor(d);
            }
        }
    }

    fn refresh_modulus(&mut self) {
        if self.rank() < self.cols {
            return;
        }
        let det = self
            .pivots
            .iter()
            .enumerate()
            .fold(Int::one(), |acc, (j, p)| acc * &p.as_ref().unwrap()[j]);
        let smaller = match &self.modulus {
            Some(d) => det < *d,
            None => true,
        };
        if smaller {
            self.modulus = Some(det);
        }
    }

    /// Echelon basis of the lattice, reduced above the pivots (Hermite form).
    pub fn basis(&self) -> Vec<Vec<Int>> {
        let mut lattice = self.clone();
        if let Some(d) = self.modulus.clone() {
            // Pivot rows alone may span a sublattice once entries were reduced.
            lattice.modulus = None;
            for j in 0..self.cols {
                let mut e = vec![Int::zero(); self.cols];
                e[j] = d.clone();
                lattice.insert(&e);
            }
        }
        let mut rows: Vec<(usize, Vec<Int>)> = lattice
            .pivots
            .into_iter()
            .enumerate()
            .filter_map(|(j, p)| p.map(|p| (j, p)))
            .collect();
        for k in 0..rows.len() {
            let (pc, pivot_row) = (rows[k].0, rows[k].1.clone());
            let pv = &pivot_row[pc];
            for row in rows.iter_mut().take(k) {
                let q = row.1[pc].div_floor(pv);
                if !q.is_zero() {
                    for (a, b) in row.1[pc..].iter_mut().zip(&pivot_row[pc..]) {
                        *a -= &q * b;
                    }
                }
            }
        }
        rows.into_iter().map(|(_, r)| r).collect()
    }

    /// Smith form of the lattice's basis matrix.
    pub fn smith(&self) -> SmithForm {
        let basis = self.basis();
        let m = IntMatrix::from_rows(self.cols, basis);
        diagonalize(m)
    }

    /// `Z^cols` modulo the lattice.
    pub fn cokernel(&self) -> AbelianStructure {
        cokernel_from_smith(&self.smith(), self.cols)
    }
}

/// Rearranges a list of positive integers into a divisibility chain with the
/// same product structure: pairs are replaced by `(gcd, lcm)`.
pub(crate) fn divisibility_chain(values: &mut [Int]) {
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            let g = values[i].gcd(&values[j]);
            if g != values[i] {
                let l = &values[i] / &g * &values[j];
                values[i] = g;
                values[j] = l;
            }
        }
    }
}

/// Unimodular row and column reduction of a dense matrix to diagonal form,
/// followed by the divisibility fix-up.
fn diagonalize(mut m: IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let e = m.get(i, j);
                if !e.is_zero() && best.is_none_or(|(bi, bj)| e.abs() < m.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        swap_rows(&mut m, t, bi);
        swap_cols(&mut m, t, bj);
        loop {
            let pivot = m.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = m.get(i, t) / &pivot;
                if !q.is_zero() {
                    for j in t..cols {
                        let v = m.get(i, j) - &q * m.get(t, j);
                        m.set(i, j, v);
                    }
                }
                clean &= m.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = m.get(t, j) / &pivot;
                if !q.is_zero() {
                    for i in t..rows {
                        let v = m.get(i, j) - &q * m.get(i, t);
                        m.set(i, j, v);
                    }
                }
                clean &= m.get(t, j).is_zero();
            }
            if clean {
                break;
            }
            // Move the smallest remainder in row/column t onto the pivot.
            let mut best = (t, t);
            for i in t + 1..rows {
                let e = m.get(i, t);
                if !e.is_zero() && e.abs() < m.get(best.0, best.1).abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..cols {
                let e = m.get(t, j);
                if !e.is_zero() && e.abs() < m.get(best.0, best.1).abs() {
                    best = (t, j);
                }
            }
            swap_rows(&mut m, t, best.0);
            swap_cols(&mut m, t, best.1);
        }
        diagonal.push(m.get(t, t).abs());
        t += 1;
    }
    divisibility_chain(&mut diagonal);
    SmithForm {
        rank: diagonal.len(),
        diagonal,
    }
}

fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    if a != b {
        for j in 0..m.cols {
            m.entries.swap(a * m.cols + j, b * m.cols + j);
        }
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    if a != b {
        for i in 0..m.rows {
            m.entries.swap(i * m.cols + a, i * m.cols + b);
        }
    }
}

/// Smith normal form diagonal and rank of any integer matrix.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut lattice = RowLattice::new(m.cols);
    for i in 0..m.rows {
        lattice.insert(m.row(i));
    }
    lattice.smith()
}

/// The abelian group `Z^cols / rowspace(m)`.
pub fn cokernel_structure(m: &IntMatrix) -> AbelianStructure {
    cokernel_from_smith(&smith_normal_form(m), m.cols)
}

fn cokernel_from_smith(snf: &SmithForm, cols: usize) -> AbelianStructure {
    AbelianStructure::from_chain(
        snf.diagonal.iter().filter(|d| !d.is_one()).cloned().collect(),
        cols - snf.rank,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn snf_examples() {
        let snf = smith_normal_form(&IntMatrix::from_i64(&[&[2, 0], &[0, 2]]));
        assert_eq!((snf.diagonal, snf.rank), (ints(&[2, 2]), 2));
        let snf = smith_normal_form(&IntMatrix::from_i64(&[&[1, 0], &[0, 6]]));
        assert_eq!((snf.diagonal, snf.rank), (ints(&[1, 6]), 2));
        let snf = smith_normal_form(&IntMatrix::from_i64(&[&[2, 4], &[4, 2]]));
        assert_eq!((snf.diagonal, snf.rank), (ints(&[2, 6]), 2));
        let snf = smith_normal_form(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(snf.diagonal, ints(&[1, 6]));
    }

    #[test]
    fn snf_degenerate_shapes() {
        let snf = smith_normal_form(&IntMatrix::zero(0, 3));
        assert_eq!((snf.diagonal.len(), snf.rank), (0, 0));
        let snf = smith_normal_form(&IntMatrix::zero(4, 0));
        assert_eq!(snf.rank, 0);
        let snf = smith_normal_form(&IntMatrix::from_i64(&[&[0, 0], &[0, 0]]));
        assert_eq!(snf.rank, 0);
        let snf = smith_normal_form(&IntMatrix::from_i64(&[&[3, 6, 9], &[1, 2, 3]]));
        assert_eq!((snf.diagonal, snf.rank), (ints(&[1]), 1));
        let snf = smith_normal_form(&IntMatrix::from_i64(&[&[4], &[6], &[-10]]));
        assert_eq!(snf.diagonal, ints(&[2]));
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel_structure(&IntMatrix::zero(0, 4)).to_string(), "Z^4");
        let two_i = IntMatrix::diagonal(&ints(&[2, 2, 2, 2, 2]));
        assert_eq!(cokernel_structure(&two_i).to_string(), "Z_2^5");
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        assert_eq!(cokernel_structure(&m).to_string(), "Z_6");
        let m = IntMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(cokernel_structure(&m).to_string(), "Z");
    }

    #[test]
    fn modular_phase_keeps_lattice() {
        // Full rank early, then rows that only matter modulo the determinant.
        let mut l = RowLattice::new(3);
        for r in [[4, 0, 0], [0, 4, 0], [0, 0, 4], [2, 2, 2], [0, 2, 6], [1, 5, 9]] {
            l.insert(&ints(&r));
        }
        let expected = diagonalize(IntMatrix::from_i64(&[
            &[4, 0, 0],
            &[0, 4, 0],
            &[0, 0, 4],
            &[2, 2, 2],
            &[0, 2, 6],
            &[1, 5, 9],
        ]));
        assert_eq!(l.smith(), expected);
        assert_eq!(l.cokernel().to_string(), "Z_2 + Z_4");
    }

    #[test]
    fn chain_fixup() {
        let mut v = ints(&[6, 4, 9]);
        divisibility_chain(&mut v);
        assert_eq!(v, ints(&[1, 6, 36]));
    }
}
