//! Finite graded GF(2) vector spaces and degree-homogeneous maps.
//!
//! A graded space is a finite list of dimensions indexed by nonnegative
//! degree. A graded map carries a fixed degree shift and one matrix block
//! per degree; multiplication by a polynomial generator has shift 1,
//! restriction and transfer maps have shift 0. Flat (ungraded) matrices
//! are accepted at the boundary and split into blocks, rejecting any entry
//! that connects degrees incompatible with the shift.

use std::collections::BTreeMap;
use std::fmt;

use crate::gf2::{Gf2Matrix, Gf2Vec, Quotient, Subspace};

/// Errors from graded-space plumbing: undefined invariants, shape
/// mismatches, and maps that fail to respect the grading.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GradedError {
    #[error("norm undefined on zero space")]
    NormOfZero,
    #[error("block at degree {degree} is {got_rows}x{got_cols}, expected {want_rows}x{want_cols}")]
    BlockShape {
        degree: usize,
        got_rows: usize,
        got_cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("flat matrix is {got_rows}x{got_cols}, expected {want_rows}x{want_cols}")]
    FlatShape {
        got_rows: usize,
        got_cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("entry ({row},{col}) maps degree {src_degree} into degree {dst_degree}, violating shift {shift}")]
    NotGraded {
        row: usize,
        col: usize,
        src_degree: usize,
        dst_degree: usize,
        shift: usize,
    },
    #[error("image at degree {degree} leaves the designated subspace")]
    EscapesSubspace { degree: usize },
    #[error("map does not descend to the quotient at degree {degree}")]
    NotWellDefined { degree: usize },
    #[error("{0} basis labels supplied for a degree of dimension {1}")]
    BadLabels(usize, usize),
}

// ==== Graded spaces ====

/// A finite graded GF(2) vector space: dimensions per degree, with
/// optional basis labels used in diagnostics.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedSpace {
    dims: BTreeMap<usize, usize>,
    names: BTreeMap<usize, Vec<String>>,
}

impl GradedSpace {
    #[must_use]
    pub fn zero() -> Self {
        GradedSpace {
            dims: BTreeMap::new(),
            names: BTreeMap::new(),
        }
    }

    /// Builds a space from (degree, dimension) pairs; zero dimensions are
    /// dropped so equal spaces compare equal.
    #[must_use]
    pub fn from_dims(pairs: &[(usize, usize)]) -> Self {
        let mut dims = BTreeMap::new();
        for &(degree, dim) in pairs {
            if dim > 0 {
                *dims.entry(degree).or_insert(0) += dim;
            }
        }
        GradedSpace {
            dims,
            names: BTreeMap::new(),
        }
    }

    /// Attaches basis labels at one degree.
    ///
    /// # Errors
    /// Fails when the label count disagrees with the dimension there.
    pub fn set_names(&mut self, degree: usize, labels: Vec<String>) -> Result<(), GradedError> {
        let dim = self.dim(degree);
        if labels.len() != dim {
            return Err(GradedError::BadLabels(labels.len(), dim));
        }
        if dim > 0 {
            self.names.insert(degree, labels);
        }
        Ok(())
    }

    #[must_use]
    pub fn dim(&self, degree: usize) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    /// Degrees with nonzero dimension, ascending.
    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.dims.keys().copied()
    }

    #[must_use]
    pub fn dims(&self) -> &BTreeMap<usize, usize> {
        &self.dims
    }

    /// Sum of all per-degree dimensions.
    #[must_use]
    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Top degree with nonzero dimension.
    ///
    /// # Errors
    /// The zero space has no norm.
    pub fn norm(&self) -> Result<usize, GradedError> {
        self.dims
            .keys()
            .next_back()
            .copied()
            .ok_or(GradedError::NormOfZero)
    }

    /// Connected: one-dimensional in degree 0.
    #[must_use]
    pub fn is_connected(&self) -> bool {
        self.dim(0) == 1
    }

    /// Bi-connected: connected with a one-dimensional top degree.
    #[must_use]
    pub fn is_biconnected(&self) -> bool {
        match self.norm() {
            Ok(top) => self.is_connected() && self.dim(top) == 1,
            Err(_) => false,
        }
    }

    /// Index of the first flat coordinate belonging to `degree`, in the
    /// ordering by ascending degree then basis position.
    #[must_use]
    pub fn flat_offset(&self, degree: usize) -> usize {
        self.dims
            .range(..degree)
            .map(|(_, &dim)| dim)
            .sum()
    }

    /// (degree, position) of a flat coordinate.
    ///
    /// # Panics
    /// Panics when `flat` is out of range.
    #[must_use]
    pub fn degree_of_flat(&self, flat: usize) -> (usize, usize) {
        let mut rest = flat;
        for (&degree, &dim) in &self.dims {
            if rest < dim {
                return (degree, rest);
            }
            rest -= dim;
        }
        panic!("flat index {flat} out of range for total dimension {}", self.total_dim());
    }

    /// Human-readable label for a basis element.
    #[must_use]
    pub fn label(&self, degree: usize, index: usize) -> String {
        match self.names.get(&degree).and_then(|v| v.get(index)) {
            Some(name) => name.clone(),
            None => format!("deg{degree}[{index}]"),
        }
    }

    #[must_use]
    pub fn names_at(&self, degree: usize) -> Option<&[String]> {
        self.names.get(&degree).map(Vec::as_slice)
    }

    /// The same dimensions with all labels dropped.
    #[must_use]
    pub fn unnamed(&self) -> GradedSpace {
        GradedSpace {
            dims: self.dims.clone(),
            names: BTreeMap::new(),
        }
    }
}

impl fmt::Display for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (deg, dim)) in self.dims.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{deg}:{dim}")?;
        }
        write!(f, "}}")
    }
}

// ==== Graded maps ====

/// A degree-homogeneous linear map raising degree by `shift`.
///
/// Blocks are stored for every degree where the source is nonzero; the
/// block at degree k is a matrix from source^k to target^(k+shift).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedMap {
    source: GradedSpace,
    target: GradedSpace,
    shift: usize,
    blocks: BTreeMap<usize, Gf2Matrix>,
}

impl GradedMap {
    /// The zero map.
    #[must_use]
    pub fn zero(source: GradedSpace, target: GradedSpace, shift: usize) -> Self {
        let blocks = source
            .degrees()
            .map(|k| {
                (
                    k,
                    Gf2Matrix::zeros(target.dim(k + shift), source.dim(k)),
                )
            })
            .collect();
        GradedMap {
            source,
            target,
            shift,
            blocks,
        }
    }

    /// The identity on `space`.
    #[must_use]
    pub fn identity(space: &GradedSpace) -> Self {
        let blocks = space
            .degrees()
            .map(|k| (k, Gf2Matrix::identity(space.dim(k))))
            .collect();
        GradedMap {
            source: space.clone(),
            target: space.clone(),
            shift: 0,
            blocks,
        }
    }

    /// Assembles a map from per-degree blocks, validating every shape.
    /// Missing blocks are taken to be zero.
    ///
    /// # Errors
    /// Fails when a block's shape disagrees with the dimensions or when a
    /// block is supplied at a degree with zero source dimension but has
    /// nonzero size.
    pub fn from_blocks(
        source: GradedSpace,
        target: GradedSpace,
        shift: usize,
        given: BTreeMap<usize, Gf2Matrix>,
    ) -> Result<Self, GradedError> {
        let mut map = GradedMap::zero(source, target, shift);
        for (k, block) in given {
            let want_rows = map.target.dim(k + shift);
            let want_cols = map.source.dim(k);
            if block.nrows() != want_rows || block.ncols() != want_cols {
                return Err(GradedError::BlockShape {
                    degree: k,
                    got_rows: block.nrows(),
                    got_cols: block.ncols(),
                    want_rows,
                    want_cols,
                });
            }
            if want_cols > 0 {
                map.blocks.insert(k, block);
            }
        }
        Ok(map)
    }

    /// Splits one flat matrix (rows indexed by the target's flat order,
    /// columns by the source's) into graded blocks.
    ///
    /// # Errors
    /// Fails when the shape is wrong or any entry connects degree k to a
    /// degree other than k + shift.
    pub fn from_flat(
        source: GradedSpace,
        target: GradedSpace,
        shift: usize,
        m: &Gf2Matrix,
    ) -> Result<Self, GradedError> {
        let want_rows = target.total_dim();
        let want_cols = source.total_dim();
        if m.nrows() != want_rows || m.ncols() != want_cols {
            return Err(GradedError::FlatShape {
                got_rows: m.nrows(),
                got_cols: m.ncols(),
                want_rows,
                want_cols,
            });
        }
        for row in 0..m.nrows() {
            for col in m.row(row).ones() {
                let (src_degree, _) = source.degree_of_flat(col);
                let (dst_degree, _) = target.degree_of_flat(row);
                if dst_degree != src_degree + shift {
                    return Err(GradedError::NotGraded {
                        row,
                        col,
                        src_degree,
                        dst_degree,
                        shift,
                    });
                }
            }
        }
        let mut blocks = BTreeMap::new();
        for k in source.degrees().collect::<Vec<_>>() {
            let cols = source.dim(k);
            let rows = target.dim(k + shift);
            let row_off = target.flat_offset(k + shift);
            let col_off = source.flat_offset(k);
            let mut block = Gf2Matrix::zeros(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    if m.get(row_off + r, col_off + c) {
                        block.set(r, c, true);
                    }
                }
            }
            blocks.insert(k, block);
        }
        Ok(GradedMap {
            source,
            target,
            shift,
            blocks,
        })
    }

    /// True when the flat matrix respects the grading and shapes.
    #[must_use]
    pub fn flat_is_graded(
        source: &GradedSpace,
        target: &GradedSpace,
        shift: usize,
        m: &Gf2Matrix,
    ) -> bool {
        GradedMap::from_flat(source.clone(), target.clone(), shift, m).is_ok()
    }

    #[must_use]
    pub fn source(&self) -> &GradedSpace {
        &self.source
    }

    #[must_use]
    pub fn target(&self) -> &GradedSpace {
        &self.target
    }

    #[must_use]
    pub fn shift(&self) -> usize {
        self.shift
    }

    /// The block at degree k (zero matrix when absent).
    #[must_use]
    pub fn block(&self, k: usize) -> Gf2Matrix {
        self.blocks
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Gf2Matrix::zeros(self.target.dim(k + self.shift), self.source.dim(k)))
    }

    /// Overwrites the block at degree k.
    ///
    /// # Panics
    /// Panics when the shape disagrees with the source and target.
    pub fn set_block(&mut self, k: usize, block: Gf2Matrix) {
        assert_eq!(
            (block.nrows(), block.ncols()),
            (self.target.dim(k + self.shift), self.source.dim(k)),
            "block shape mismatch at degree {k}",
        );
        if self.source.dim(k) > 0 {
            self.blocks.insert(k, block);
        }
    }

    /// Applies the degree-k block to a homogeneous vector.
    #[must_use]
    pub fn apply_at(&self, k: usize, v: &Gf2Vec) -> Gf2Vec {
        self.block(k).mul_vec(v)
    }

    /// Applies the whole map to a vector in the source's flat order.
    #[must_use]
    pub fn apply_flat(&self, v: &Gf2Vec) -> Gf2Vec {
        assert_eq!(v.len(), self.source.total_dim(), "flat vector length mismatch");
        let mut out = Gf2Vec::zeros(self.target.total_dim());
        for k in self.source.degrees() {
            let col_off = self.source.flat_offset(k);
            let mut part = Gf2Vec::zeros(self.source.dim(k));
            for i in 0..self.source.dim(k) {
                if v.get(col_off + i) {
                    part.set(i, true);
                }
            }
            let image = self.apply_at(k, &part);
            let row_off = self.target.flat_offset(k + self.shift);
            for i in image.ones() {
                out.flip(row_off + i);
            }
        }
        out
    }

    /// Reassembles the single flat matrix.
    #[must_use]
    pub fn to_flat(&self) -> Gf2Matrix {
        let mut m = Gf2Matrix::zeros(self.target.total_dim(), self.source.total_dim());
        for (&k, block) in &self.blocks {
            let row_off = self.target.flat_offset(k + self.shift);
            let col_off = self.source.flat_offset(k);
            for r in 0..block.nrows() {
                for c in 0..block.ncols() {
                    if block.get(r, c) {
                        m.set(row_off + r, col_off + c, true);
                    }
                }
            }
        }
        m
    }

    /// Composition self after `first`.
    ///
    /// # Panics
    /// Panics when `first`'s target disagrees with self's source.
    #[must_use]
    pub fn compose(&self, first: &GradedMap) -> GradedMap {
        assert_eq!(
            first.target.dims, self.source.dims,
            "composition dimension mismatch"
        );
        let shift = self.shift + first.shift;
        let mut out = GradedMap::zero(first.source.clone(), self.target.clone(), shift);
        for k in first.source.degrees().collect::<Vec<_>>() {
            let block = self.block(k + first.shift).mul(&first.block(k));
            out.set_block(k, block);
        }
        out
    }

    /// Entrywise sum of two maps with identical shapes and shift.
    #[must_use]
    pub fn add(&self, other: &GradedMap) -> GradedMap {
        assert_eq!(self.shift, other.shift, "shift mismatch in add");
        assert_eq!(self.source.dims, other.source.dims, "source mismatch in add");
        assert_eq!(self.target.dims, other.target.dims, "target mismatch in add");
        let mut out = GradedMap::zero(self.source.clone(), self.target.clone(), self.shift);
        for k in self.source.degrees().collect::<Vec<_>>() {
            out.set_block(k, self.block(k).add(&other.block(k)));
        }
        out
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(Gf2Matrix::is_zero)
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.blocks.values().map(Gf2Matrix::rank).sum()
    }

    /// Kernel, degree by degree, as a subspace of the source.
    #[must_use]
    pub fn kernel(&self) -> GradedSubspace {
        let mut parts = BTreeMap::new();
        for k in self.source.degrees() {
            let basis = self.block(k).kernel_basis();
            if !basis.is_empty() {
                parts.insert(k, Subspace::from_spanning(self.source.dim(k), &basis));
            }
        }
        GradedSubspace {
            ambient: self.source.clone(),
            parts,
        }
    }

    /// Image, degree by degree, as a subspace of the target.
    #[must_use]
    pub fn image(&self) -> GradedSubspace {
        let mut parts = BTreeMap::new();
        for k in self.source.degrees() {
            let cols: Vec<Gf2Vec> = (0..self.source.dim(k))
                .map(|j| self.apply_at(k, &Gf2Vec::unit(self.source.dim(k), j)))
                .collect();
            let sub = Subspace::from_spanning(self.target.dim(k + self.shift), &cols);
            if sub.dim() > 0 {
                parts.insert(k + self.shift, sub);
            }
        }
        GradedSubspace {
            ambient: self.target.clone(),
            parts,
        }
    }

    /// The same matrices viewed as a map between subspaces: both source
    /// and target are replaced by designated graded subspaces.
    ///
    /// # Errors
    /// Fails when the image of the source subspace leaves the target one.
    pub fn restrict(
        &self,
        sub_source: &GradedSubspace,
        sub_target: &GradedSubspace,
    ) -> Result<GradedMap, GradedError> {
        assert_eq!(sub_source.ambient.dims, self.source.dims, "source subspace mismatch");
        assert_eq!(sub_target.ambient.dims, self.target.dims, "target subspace mismatch");
        let src_space = sub_source.space();
        let dst_space = sub_target.space();
        let mut out = GradedMap::zero(src_space, dst_space, self.shift);
        for (&k, part) in &sub_source.parts {
            let mut cols = Vec::new();
            for b in part.basis() {
                let w = self.apply_at(k, b);
                let coords = sub_target
                    .coordinates(k + self.shift, &w)
                    .ok_or(GradedError::EscapesSubspace { degree: k })?;
                cols.push(coords);
            }
            let rows = sub_target.part_dim(k + self.shift);
            out.set_block(k, Gf2Matrix::from_cols(&cols, rows));
        }
        Ok(out)
    }

    /// The induced map between quotients, when it exists.
    ///
    /// # Errors
    /// Fails when the source quotient's denominator does not map into the
    /// target quotient's denominator.
    pub fn induce_on_quotients(
        &self,
        src_q: &GradedQuotient,
        dst_q: &GradedQuotient,
    ) -> Result<GradedMap, GradedError> {
        assert_eq!(src_q.ambient.dims, self.source.dims, "source quotient mismatch");
        assert_eq!(dst_q.ambient.dims, self.target.dims, "target quotient mismatch");
        // Well-definedness: denominators must be carried into denominators.
        for (&k, part) in &src_q.denominator.parts {
            for b in part.basis() {
                let w = self.apply_at(k, b);
                if !dst_q.denominator.contains(k + self.shift, &w) {
                    return Err(GradedError::NotWellDefined { degree: k });
                }
            }
        }
        let mut out = GradedMap::zero(src_q.space().clone(), dst_q.space().clone(), self.shift);
        for k in src_q.space().degrees().collect::<Vec<_>>() {
            let n = src_q.space().dim(k);
            let cols: Vec<Gf2Vec> = (0..n)
                .map(|j| {
                    let rep = src_q.lift_at(k, &Gf2Vec::unit(n, j));
                    dst_q.project_at(k + self.shift, &self.apply_at(k, &rep))
                })
                .collect();
            out.set_block(k, Gf2Matrix::from_cols(&cols, dst_q.space().dim(k + self.shift)));
        }
        Ok(out)
    }
}

// ==== Graded subspaces ====

/// A graded subspace: one canonical subspace per degree of an ambient
/// graded space. Degrees without an entry hold the zero subspace.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedSubspace {
    ambient: GradedSpace,
    parts: BTreeMap<usize, Subspace>,
}

impl GradedSubspace {
    #[must_use]
    pub fn zero(ambient: GradedSpace) -> Self {
        GradedSubspace {
            ambient,
            parts: BTreeMap::new(),
        }
    }

    #[must_use]
    pub fn full(ambient: GradedSpace) -> Self {
        let parts = ambient
            .degrees()
            .map(|k| (k, Subspace::full(ambient.dim(k))))
            .collect();
        GradedSubspace { ambient, parts }
    }

    /// Span of homogeneous vectors given as (degree, vector) pairs.
    ///
    /// # Panics
    /// Panics when a vector's length disagrees with the ambient dimension
    /// at its degree.
    #[must_use]
    pub fn from_vectors(ambient: GradedSpace, vectors: &[(usize, Gf2Vec)]) -> Self {
        let mut grouped: BTreeMap<usize, Vec<Gf2Vec>> = BTreeMap::new();
        for (k, v) in vectors {
            assert_eq!(v.len(), ambient.dim(*k), "vector length mismatch at degree {k}");
            grouped.entry(*k).or_default().push(v.clone());
        }
        let mut parts = BTreeMap::new();
        for (k, vecs) in grouped {
            let sub = Subspace::from_spanning(ambient.dim(k), &vecs);
            if sub.dim() > 0 {
                parts.insert(k, sub);
            }
        }
        GradedSubspace { ambient, parts }
    }

    #[must_use]
    pub fn ambient(&self) -> &GradedSpace {
        &self.ambient
    }

    /// The subspace at one degree (zero subspace when absent).
    #[must_use]
    pub fn part(&self, k: usize) -> Subspace {
        self.parts
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.ambient.dim(k)))
    }

    #[must_use]
    pub fn part_dim(&self, k: usize) -> usize {
        self.parts.get(&k).map_or(0, Subspace::dim)
    }

    /// The subspace as an abstract graded space (labels dropped).
    #[must_use]
    pub fn space(&self) -> GradedSpace {
        GradedSpace::from_dims(
            &self
                .parts
                .iter()
                .map(|(&k, s)| (k, s.dim()))
                .collect::<Vec<_>>(),
        )
    }

    #[must_use]
    pub fn total_dim(&self) -> usize {
        self.parts.values().map(Subspace::dim).sum()
    }

    #[must_use]
    pub fn contains(&self, k: usize, v: &Gf2Vec) -> bool {
        match self.parts.get(&k) {
            Some(s) => s.contains(v),
            None => v.is_zero(),
        }
    }

    #[must_use]
    pub fn contains_subspace(&self, other: &GradedSubspace) -> bool {
        other
            .parts
            .iter()
            .all(|(&k, part)| part.basis().iter().all(|v| self.contains(k, v)))
    }

    /// Coordinates of `v` in the canonical basis of the degree-k part.
    #[must_use]
    pub fn coordinates(&self, k: usize, v: &Gf2Vec) -> Option<Gf2Vec> {
        match self.parts.get(&k) {
            Some(s) => s.coordinates(v),
            None => v.is_zero().then(|| Gf2Vec::zeros(0)),
        }
    }

    #[must_use]
    pub fn sum(&self, other: &GradedSubspace) -> GradedSubspace {
        assert_eq!(self.ambient.dims, other.ambient.dims, "ambient mismatch in sum");
        let mut parts = BTreeMap::new();
        let degrees: Vec<usize> = self
            .parts
            .keys()
            .chain(other.parts.keys())
            .copied()
            .collect();
        for k in degrees {
            let s = self.part(k).sum(&other.part(k));
            if s.dim() > 0 {
                parts.insert(k, s);
            }
        }
        GradedSubspace {
            ambient: self.ambient.clone(),
            parts,
        }
    }

    /// Inclusion of the subspace into the ambient space, in the canonical
    /// bases.
    #[must_use]
    pub fn inclusion(&self) -> GradedMap {
        let mut out = GradedMap::zero(self.space(), self.ambient.clone(), 0);
        for (&k, part) in &self.parts {
            out.set_block(k, part.inclusion_matrix());
        }
        out
    }

    /// Canonical homogeneous basis as (degree, vector) pairs, degree
    /// ascending.
    #[must_use]
    pub fn basis_vectors(&self) -> Vec<(usize, Gf2Vec)> {
        let mut out = Vec::new();
        for (&k, part) in &self.parts {
            for b in part.basis() {
                out.push((k, b.clone()));
            }
        }
        out
    }
}

// ==== Graded quotients ====

/// A graded quotient space with a fixed degreewise section.
#[derive(Clone, Debug)]
pub struct GradedQuotient {
    ambient: GradedSpace,
    denominator: GradedSubspace,
    parts: BTreeMap<usize, Quotient>,
    space: GradedSpace,
}

impl GradedQuotient {
    /// The quotient of the subspace's ambient space by the subspace.
    #[must_use]
    pub fn by(denominator: GradedSubspace) -> Self {
        let ambient = denominator.ambient.clone();
        let mut parts = BTreeMap::new();
        let mut dims = Vec::new();
        for k in ambient.degrees() {
            let q = Quotient::by(denominator.part(k));
            dims.push((k, q.dim()));
            parts.insert(k, q);
        }
        GradedQuotient {
            ambient,
            denominator,
            parts,
            space: GradedSpace::from_dims(&dims),
        }
    }

    #[must_use]
    pub fn ambient(&self) -> &GradedSpace {
        &self.ambient
    }

    #[must_use]
    pub fn denominator(&self) -> &GradedSubspace {
        &self.denominator
    }

    /// The quotient as an abstract graded space.
    #[must_use]
    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    /// Class of a homogeneous vector.
    #[must_use]
    pub fn project_at(&self, k: usize, v: &Gf2Vec) -> Gf2Vec {
        match self.parts.get(&k) {
            Some(q) => q.project(v),
            None => {
                assert!(v.is_empty(), "vector at a degree where the ambient space is zero");
                Gf2Vec::zeros(0)
            }
        }
    }

    /// Canonical representative of a class.
    #[must_use]
    pub fn lift_at(&self, k: usize, class: &Gf2Vec) -> Gf2Vec {
        match self.parts.get(&k) {
            Some(q) => q.lift(class),
            None => {
                assert!(class.is_empty(), "class at a degree where the quotient is zero");
                Gf2Vec::zeros(0)
            }
        }
    }

    /// Projection ambient → quotient as a graded map.
    #[must_use]
    pub fn projection(&self) -> GradedMap {
        let mut out = GradedMap::zero(self.ambient.clone(), self.space.clone(), 0);
        for (&k, q) in &self.parts {
            if self.ambient.dim(k) > 0 {
                out.set_block(k, q.projection_matrix());
            }
        }
        out
    }

    /// The fixed section quotient → ambient.
    #[must_use]
    pub fn section(&self) -> GradedMap {
        let mut out = GradedMap::zero(self.space.clone(), self.ambient.clone(), 0);
        for (&k, q) in &self.parts {
            if self.space.dim(k) > 0 {
                out.set_block(k, q.section_matrix());
            }
        }
        out
    }
}
