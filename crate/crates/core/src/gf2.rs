//! Dense bit-packed linear algebra over GF(2).
//!
//! Everything downstream (graded maps, exactness checks, quotient
//! constructions) reduces to the handful of primitives in this module:
//! reduced row echelon form, rank, kernel and image bases, and linear
//! solves. All routines use the same fixed pivot order (leftmost column
//! first, lowest row first), so every derived basis is deterministic and
//! re-runs produce identical output.

use std::fmt;

const WORD_BITS: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

// ==== Vectors ====

/// A fixed-length vector over GF(2), packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Vec {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vec {
    #[must_use]
    pub fn zeros(len: usize) -> Self {
        Gf2Vec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Builds a vector from 0/1 entries.
    #[must_use]
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Gf2Vec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b % 2 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector of length `len` with ones exactly at `indices`.
    #[must_use]
    pub fn from_indices(len: usize, indices: &[usize]) -> Self {
        let mut v = Gf2Vec::zeros(len);
        for &i in indices {
            v.flip(i);
        }
        v
    }

    /// Standard basis vector e_i.
    #[must_use]
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Gf2Vec::zeros(len);
        v.set(i, true);
        v
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.len
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    #[must_use]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn xor_assign(&mut self, other: &Gf2Vec) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[must_use]
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit, if any.
    #[must_use]
    pub fn lowest_set(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Parity of the overlap with `other`; the GF(2) dot product.
    #[must_use]
    pub fn dot(&self, other: &Gf2Vec) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors with different lengths");
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    /// Positions of all set bits, ascending.
    #[must_use]
    pub fn ones(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(wi * WORD_BITS + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    #[must_use]
    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| u8::from(self.get(i))).collect()
    }
}

impl fmt::Debug for Gf2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

// ==== Matrices ====

/// A dense matrix over GF(2), stored as bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Gf2Vec>,
}

impl Gf2Matrix {
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            rows,
            cols,
            data: vec![Gf2Vec::zeros(cols); rows],
        }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        let mut m = Gf2Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 entries. All rows must have equal length.
    #[must_use]
    pub fn from_bits(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Gf2Matrix {
            rows: rows.len(),
            cols,
            data: rows.iter().map(|r| Gf2Vec::from_bits(r)).collect(),
        }
    }

    #[must_use]
    pub fn from_rows(rows: Vec<Gf2Vec>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "row length mismatch");
        Gf2Matrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    /// Builds a matrix whose j-th column is `cols_vecs[j]`.
    #[must_use]
    pub fn from_cols(cols_vecs: &[Gf2Vec], rows: usize) -> Self {
        assert!(cols_vecs.iter().all(|c| c.len() == rows), "column length mismatch");
        let mut m = Gf2Matrix::zeros(rows, cols_vecs.len());
        for (j, c) in cols_vecs.iter().enumerate() {
            for i in c.ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    #[must_use]
    pub fn nrows(&self) -> usize {
        self.rows
    }

    #[must_use]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    #[must_use]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value);
    }

    #[must_use]
    pub fn row(&self, r: usize) -> &Gf2Vec {
        &self.data[r]
    }

    #[must_use]
    pub fn col(&self, c: usize) -> Gf2Vec {
        let mut v = Gf2Vec::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Gf2Vec::is_zero)
    }

    #[must_use]
    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.data[r].ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix sum (entrywise xor).
    #[must_use]
    pub fn add(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            a.xor_assign(b);
        }
        out
    }

    /// Matrix product self * other.
    #[must_use]
    pub fn mul(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch in mul");
        let mut out = Gf2Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let mut acc = Gf2Vec::zeros(other.cols);
            for k in self.data[r].ones() {
                acc.xor_assign(&other.data[k]);
            }
            out.data[r] = acc;
        }
        out
    }

    /// Applies the matrix to a column vector.
    #[must_use]
    pub fn mul_vec(&self, v: &Gf2Vec) -> Gf2Vec {
        assert_eq!(self.cols, v.len(), "vector length mismatch in mul_vec");
        let mut out = Gf2Vec::zeros(self.rows);
        for r in 0..self.rows {
            if self.data[r].dot(v) {
                out.set(r, true);
            }
        }
        out
    }

    /// Reduced row echelon form. Pivots are chosen leftmost-column first,
    /// lowest-row first, and every pivot column is cleared above and below,
    /// so the result is a canonical representative of the row space.
    #[must_use]
    pub fn rref(&self) -> Gf2Matrix {
        let mut m = self.clone();
        m.rref_in_place();
        m
    }

    fn rref_in_place(&mut self) {
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(src) = (pivot_row..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.data.swap(pivot_row, src);
            let pivot = self.data[pivot_row].clone();
            for r in 0..self.rows {
                if r != pivot_row && self.get(r, col) {
                    self.data[r].xor_assign(&pivot);
                }
            }
            pivot_row += 1;
        }
    }

    /// Pivot columns of the reduced echelon form, ascending.
    #[must_use]
    pub fn pivot_cols(&self) -> Vec<usize> {
        let r = self.rref();
        r.data
            .iter()
            .take_while(|row| !row.is_zero())
            .map(|row| row.lowest_set().expect("nonzero row has a pivot"))
            .collect()
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.rref().data.iter().filter(|r| !r.is_zero()).count()
    }

    /// Basis of the right kernel {x : self * x = 0}, one vector per free
    /// column, ordered by ascending free column index.
    #[must_use]
    pub fn kernel_basis(&self) -> Vec<Gf2Vec> {
        let r = self.rref();
        let pivots = r.pivot_cols();
        let mut pivot_of_col = vec![None; self.cols];
        for (pr, &pc) in pivots.iter().enumerate() {
            pivot_of_col[pc] = Some(pr);
        }
        let mut basis = Vec::new();
        for (free, pivot) in pivot_of_col.iter().enumerate() {
            if pivot.is_some() {
                continue;
            }
            let mut v = Gf2Vec::zeros(self.cols);
            v.set(free, true);
            for (pr, &pc) in pivots.iter().enumerate() {
                if r.get(pr, free) {
                    v.set(pc, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Columns of the original matrix at the pivot positions: an independent
    /// spanning set for the column space.
    #[must_use]
    pub fn image_basis(&self) -> Vec<Gf2Vec> {
        self.pivot_cols().into_iter().map(|c| self.col(c)).collect()
    }

    /// One solution x of self * x = b with all free coordinates zero, or
    /// None when b is outside the column space.
    #[must_use]
    pub fn solve(&self, b: &Gf2Vec) -> Option<Gf2Vec> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch in solve");
        // Row-reduce the matrix augmented with b.
        let mut m = Gf2Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in self.data[r].ones() {
                m.set(r, c, true);
            }
            if b.get(r) {
                m.set(r, self.cols, true);
            }
        }
        m.rref_in_place();
        let mut x = Gf2Vec::zeros(self.cols);
        for row in &m.data {
            match row.lowest_set() {
                Some(p) if p < self.cols => {
                    if row.get(self.cols) {
                        x.set(p, true);
                    }
                }
                Some(_) => return None, // row reads 0 = 1
                None => {}
            }
        }
        Some(x)
    }

    #[must_use]
    pub fn to_bits(&self) -> Vec<Vec<u8>> {
        self.data.iter().map(Gf2Vec::to_bits).collect()
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

// ==== Subspaces and quotients ====

/// A subspace of GF(2)^ambient, stored by its canonical RREF basis.
///
/// Two subspaces are equal as values exactly when they are equal as sets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Gf2Vec>, // nonzero RREF rows, ascending pivots
}

impl Subspace {
    #[must_use]
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    #[must_use]
    pub fn full(ambient: usize) -> Self {
        Subspace::from_spanning(ambient, &(0..ambient).map(|i| Gf2Vec::unit(ambient, i)).collect::<Vec<_>>())
    }

    /// Span of the given vectors.
    #[must_use]
    pub fn from_spanning(ambient: usize, vectors: &[Gf2Vec]) -> Self {
        let m = Gf2Matrix::from_rows(vectors.to_vec(), ambient).rref();
        let basis = m.data.into_iter().filter(|r| !r.is_zero()).collect();
        Subspace { ambient, basis }
    }

    #[must_use]
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Canonical basis vectors (RREF rows).
    #[must_use]
    pub fn basis(&self) -> &[Gf2Vec] {
        &self.basis
    }

    /// Ambient positions of the basis pivots, ascending.
    #[must_use]
    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|r| r.lowest_set().expect("basis rows are nonzero")).collect()
    }

    /// Reduces `v` modulo the subspace: the result has zeros at all pivot
    /// positions and equals v up to an element of the subspace.
    #[must_use]
    pub fn reduce(&self, v: &Gf2Vec) -> Gf2Vec {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut w = v.clone();
        for row in &self.basis {
            let p = row.lowest_set().expect("basis rows are nonzero");
            if w.get(p) {
                w.xor_assign(row);
            }
        }
        w
    }

    #[must_use]
    pub fn contains(&self, v: &Gf2Vec) -> bool {
        self.reduce(v).is_zero()
    }

    #[must_use]
    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Smallest subspace containing both.
    #[must_use]
    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::from_spanning(self.ambient, &all)
    }

    /// Expresses `v` in the canonical basis, or None if v is outside.
    #[must_use]
    pub fn coordinates(&self, v: &Gf2Vec) -> Option<Gf2Vec> {
        // RREF basis: the coefficient of basis row i is just v at its pivot.
        let mut coords = Gf2Vec::zeros(self.dim());
        let mut acc = Gf2Vec::zeros(self.ambient);
        for (i, row) in self.basis.iter().enumerate() {
            let p = row.lowest_set().expect("basis rows are nonzero");
            if v.get(p) {
                coords.set(i, true);
                acc.xor_assign(row);
            }
        }
        if acc == *v {
            Some(coords)
        } else {
            None
        }
    }

    /// Matrix whose columns are the canonical basis vectors; the inclusion
    /// map of the subspace in basis coordinates.
    #[must_use]
    pub fn inclusion_matrix(&self) -> Gf2Matrix {
        Gf2Matrix::from_cols(&self.basis, self.ambient)
    }
}

/// The quotient of GF(2)^ambient by a subspace, with a fixed section.
///
/// Classes are coordinatized by the non-pivot (free) positions of the
/// subspace basis: projection reduces modulo the subspace then reads the
/// free coordinates, and the section re-embeds them with zeros elsewhere.
#[derive(Clone, Debug)]
pub struct Quotient {
    sub: Subspace,
    free: Vec<usize>,
}

impl Quotient {
    #[must_use]
    pub fn by(sub: Subspace) -> Self {
        let pivots = sub.pivots();
        let free = (0..sub.ambient()).filter(|i| !pivots.contains(i)).collect();
        Quotient { sub, free }
    }

    #[must_use]
    pub fn ambient(&self) -> usize {
        self.sub.ambient()
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    #[must_use]
    pub fn subspace(&self) -> &Subspace {
        &self.sub
    }

    /// Class of `v` in free coordinates.
    #[must_use]
    pub fn project(&self, v: &Gf2Vec) -> Gf2Vec {
        let reduced = self.sub.reduce(v);
        let mut out = Gf2Vec::zeros(self.free.len());
        for (j, &pos) in self.free.iter().enumerate() {
            if reduced.get(pos) {
                out.set(j, true);
            }
        }
        out
    }

    /// The canonical representative of a class (section of the projection).
    #[must_use]
    pub fn lift(&self, class: &Gf2Vec) -> Gf2Vec {
        assert_eq!(class.len(), self.free.len(), "class length mismatch");
        let mut out = Gf2Vec::zeros(self.ambient());
        for (j, &pos) in self.free.iter().enumerate() {
            if class.get(j) {
                out.set(pos, true);
            }
        }
        out
    }

    #[must_use]
    pub fn projection_matrix(&self) -> Gf2Matrix {
        let cols: Vec<Gf2Vec> = (0..self.ambient())
            .map(|i| self.project(&Gf2Vec::unit(self.ambient(), i)))
            .collect();
        Gf2Matrix::from_cols(&cols, self.dim())
    }

    #[must_use]
    pub fn section_matrix(&self) -> Gf2Matrix {
        let cols: Vec<Gf2Vec> = (0..self.dim())
            .map(|j| self.lift(&Gf2Vec::unit(self.dim(), j)))
            .collect();
        Gf2Matrix::from_cols(&cols, self.ambient())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_simple_matrices() {
        assert_eq!(Gf2Matrix::identity(3).rank(), 3);
        assert_eq!(Gf2Matrix::zeros(4, 5).rank(), 0);
        assert_eq!(Gf2Matrix::from_bits(&[vec![1, 1], vec![1, 1]]).rank(), 1);
    }

    #[test]
    fn kernel_of_rank_one_square() {
        let m = Gf2Matrix::from_bits(&[vec![1, 1], vec![1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], Gf2Vec::from_bits(&[1, 1]));
        assert!(m.mul_vec(&k[0]).is_zero());
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(Gf2Matrix::identity(4).kernel_basis().is_empty());
    }

    #[test]
    fn image_basis_examples() {
        let id = Gf2Matrix::identity(2);
        assert_eq!(id.image_basis(), vec![Gf2Vec::from_bits(&[1, 0]), Gf2Vec::from_bits(&[0, 1])]);
        let m = Gf2Matrix::from_bits(&[vec![1, 0], vec![1, 0]]);
        assert_eq!(m.image_basis(), vec![Gf2Vec::from_bits(&[1, 1])]);

        // Wide, rank-deficient: first column zero, third = second.
        let wide = Gf2Matrix::from_bits(&[vec![0, 1, 1, 0], vec![0, 0, 0, 1]]);
        assert_eq!(
            wide.image_basis(),
            vec![Gf2Vec::from_bits(&[1, 0]), Gf2Vec::from_bits(&[0, 1])]
        );
        // Tall: more rows than columns must not be misread as indices.
        let tall = Gf2Matrix::from_bits(&[vec![1, 1], vec![1, 1], vec![0, 1]]);
        let basis = tall.image_basis();
        assert_eq!(basis.len(), 2);
        let span = Subspace::from_spanning(3, &basis);
        assert!(span.contains(&Gf2Vec::from_bits(&[1, 1, 0])));
        assert!(span.contains(&Gf2Vec::from_bits(&[1, 1, 1])));
    }

    #[test]
    fn solve_underdetermined_takes_free_coords_zero() {
        let m = Gf2Matrix::from_bits(&[vec![1, 1]]);
        let x = m.solve(&Gf2Vec::from_bits(&[0])).expect("consistent");
        assert!(x.is_zero());
        let y = m.solve(&Gf2Vec::from_bits(&[1])).expect("consistent");
        assert_eq!(y, Gf2Vec::from_bits(&[1, 0]));
    }

    #[test]
    fn solve_detects_inconsistency() {
        let m = Gf2Matrix::from_bits(&[vec![1, 0], vec![1, 0]]);
        assert!(m.solve(&Gf2Vec::from_bits(&[1, 0])).is_none());
        assert!(m.solve(&Gf2Vec::from_bits(&[1, 1])).is_some());
    }

    #[test]
    fn rref_is_idempotent() {
        let m = Gf2Matrix::from_bits(&[vec![0, 1, 1], vec![1, 1, 0], vec![1, 0, 1]]);
        let r = m.rref();
        assert_eq!(r.rref(), r);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn subspace_reduce_and_membership() {
        let s = Subspace::from_spanning(
            3,
            &[Gf2Vec::from_bits(&[1, 1, 0]), Gf2Vec::from_bits(&[0, 1, 1])],
        );
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&Gf2Vec::from_bits(&[1, 0, 1])));
        assert!(!s.contains(&Gf2Vec::from_bits(&[1, 0, 0])));
    }

    #[test]
    fn quotient_projection_section_roundtrip() {
        let s = Subspace::from_spanning(3, &[Gf2Vec::from_bits(&[1, 1, 0])]);
        let q = Quotient::by(s);
        assert_eq!(q.dim(), 2);
        for j in 0..q.dim() {
            let class = Gf2Vec::unit(q.dim(), j);
            assert_eq!(q.project(&q.lift(&class)), class);
        }
        // The projection kills exactly the subspace.
        assert!(q.project(&Gf2Vec::from_bits(&[1, 1, 0])).is_zero());
        assert!(!q.project(&Gf2Vec::from_bits(&[1, 0, 0])).is_zero());
    }

    #[test]
    fn coordinates_in_rref_basis() {
        let s = Subspace::from_spanning(
            3,
            &[Gf2Vec::from_bits(&[1, 0, 1]), Gf2Vec::from_bits(&[0, 1, 1])],
        );
        let v = Gf2Vec::from_bits(&[1, 1, 0]);
        let c = s.coordinates(&v).expect("inside");
        assert_eq!(c, Gf2Vec::from_bits(&[1, 1]));
        assert!(s.coordinates(&Gf2Vec::from_bits(&[0, 0, 1])).is_none());
    }
}
