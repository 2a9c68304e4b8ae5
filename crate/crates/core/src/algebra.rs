//! Finite graded unital GF(2)-algebras given by structure constants,
//! carrying a coefficient action of a subgroup's cohomology through the
//! images of its degree-1 generators.
//!
//! Construction validates only shapes (index bounds, operator counts);
//! every algebraic law (degree-additivity of products, unit laws,
//! associativity, centrality of the generator images) is verified by
//! [`GradedAlgebra::verify`] and reported as findings, so a broken input
//! file produces a diagnosis rather than a crash. Commutativity of the
//! whole algebra is deliberately not required.

use crate::gf2::{Gf2Matrix, Gf2Vec};
use crate::graded::{GradedMap, GradedSpace};
use crate::lattice::Subgroup;
use crate::modules::{HWModule, ModuleError};
use crate::report::{Finding, Report};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("structure constants must form a {want}x{want} table, got {got} rows")]
    MulRows { got: usize, want: usize },
    #[error("structure constant row {row} has {got} entries, expected {want}")]
    MulCols { row: usize, got: usize, want: usize },
    #[error("structure constant ({i},{j}) has length {got}, expected {want}")]
    MulEntryLength { i: usize, j: usize, got: usize, want: usize },
    #[error("unit index {got} out of range for dimension {dim}")]
    UnitIndex { got: usize, dim: usize },
    #[error("{got} generator images supplied for a rank-{want} subgroup")]
    HImageCount { got: usize, want: usize },
    #[error("generator image {index} has length {got}, expected {want}")]
    HImageLength { index: usize, got: usize, want: usize },
    #[error("basis index {got} out of range for dimension {dim}")]
    BasisIndex { got: usize, dim: usize },
}

/// A finite graded unital algebra over GF(2), attached to a subgroup.
///
/// All data is indexed by the flat basis order of the space (ascending
/// degree, then position). `mul[i][j]` is the product of basis elements
/// i and j; `h_images` holds one element per canonical dual-basis form
/// of the subgroup, the image of that degree-1 cohomology generator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedAlgebra {
    subgroup: Subgroup,
    space: GradedSpace,
    unit: usize,
    mul: Vec<Vec<Gf2Vec>>,
    h_images: Vec<Gf2Vec>,
}

impl GradedAlgebra {
    /// # Errors
    /// Rejects shape-level problems only; algebraic laws are checked by
    /// [`GradedAlgebra::verify`].
    pub fn new(
        subgroup: Subgroup,
        space: GradedSpace,
        unit: usize,
        mul: Vec<Vec<Gf2Vec>>,
        h_images: Vec<Gf2Vec>,
    ) -> Result<Self, AlgebraError> {
        let n = space.total_dim();
        if unit >= n {
            return Err(AlgebraError::UnitIndex { got: unit, dim: n });
        }
        if mul.len() != n {
            return Err(AlgebraError::MulRows { got: mul.len(), want: n });
        }
        for (row, r) in mul.iter().enumerate() {
            if r.len() != n {
                return Err(AlgebraError::MulCols { row, got: r.len(), want: n });
            }
            for (j, entry) in r.iter().enumerate() {
                if entry.len() != n {
                    return Err(AlgebraError::MulEntryLength {
                        i: row,
                        j,
                        got: entry.len(),
                        want: n,
                    });
                }
            }
        }
        if h_images.len() != subgroup.rank() {
            return Err(AlgebraError::HImageCount {
                got: h_images.len(),
                want: subgroup.rank(),
            });
        }
        for (index, h) in h_images.iter().enumerate() {
            if h.len() != n {
                return Err(AlgebraError::HImageLength {
                    index,
                    got: h.len(),
                    want: n,
                });
            }
        }
        Ok(GradedAlgebra {
            subgroup,
            space,
            unit,
            mul,
            h_images,
        })
    }

    /// Builds from sparse product triples (i, j, indices of the result);
    /// absent pairs multiply to zero. Generator images are index lists.
    ///
    /// # Errors
    /// Same shape-level validation as [`GradedAlgebra::new`].
    pub fn from_sparse(
        subgroup: Subgroup,
        space: GradedSpace,
        unit: usize,
        triples: &[(usize, usize, Vec<usize>)],
        h_image_indices: &[Vec<usize>],
    ) -> Result<Self, AlgebraError> {
        let n = space.total_dim();
        let mut mul = vec![vec![Gf2Vec::zeros(n); n]; n];
        for (i, j, result) in triples {
            if *i >= n {
                return Err(AlgebraError::BasisIndex { got: *i, dim: n });
            }
            if *j >= n {
                return Err(AlgebraError::BasisIndex { got: *j, dim: n });
            }
            for &k in result {
                if k >= n {
                    return Err(AlgebraError::BasisIndex { got: k, dim: n });
                }
            }
            mul[*i][*j] = Gf2Vec::from_indices(n, result);
        }
        let mut h_images = Vec::with_capacity(h_image_indices.len());
        for hs in h_image_indices {
            for &k in hs {
                if k >= n {
                    return Err(AlgebraError::BasisIndex { got: k, dim: n });
                }
            }
            h_images.push(Gf2Vec::from_indices(n, hs));
        }
        GradedAlgebra::new(subgroup, space, unit, mul, h_images)
    }

    #[must_use]
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    #[must_use]
    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    #[must_use]
    pub fn unit_index(&self) -> usize {
        self.unit
    }

    #[must_use]
    pub fn unit_vector(&self) -> Gf2Vec {
        Gf2Vec::unit(self.space.total_dim(), self.unit)
    }

    #[must_use]
    pub fn h_images(&self) -> &[Gf2Vec] {
        &self.h_images
    }

    #[must_use]
    pub fn structure_constant(&self, i: usize, j: usize) -> &Gf2Vec {
        &self.mul[i][j]
    }

    /// Bilinear product of two flat vectors.
    #[must_use]
    pub fn multiply(&self, x: &Gf2Vec, y: &Gf2Vec) -> Gf2Vec {
        let n = self.space.total_dim();
        let mut acc = Gf2Vec::zeros(n);
        for i in x.ones() {
            for j in y.ones() {
                acc.xor_assign(&self.mul[i][j]);
            }
        }
        acc
    }

    /// The flat matrix of left multiplication by `x`.
    #[must_use]
    pub fn left_mult_matrix(&self, x: &Gf2Vec) -> Gf2Matrix {
        let n = self.space.total_dim();
        let cols: Vec<Gf2Vec> = (0..n)
            .map(|j| self.multiply(x, &Gf2Vec::unit(n, j)))
            .collect();
        Gf2Matrix::from_cols(&cols, n)
    }

    /// Label of a flat basis index for diagnostics.
    #[must_use]
    pub fn label(&self, flat: usize) -> String {
        let (degree, idx) = self.space.degree_of_flat(flat);
        self.space.label(degree, idx)
    }

    fn describe(&self, v: &Gf2Vec) -> String {
        let ones = v.ones();
        if ones.is_empty() {
            "0".to_string()
        } else {
            ones.iter()
                .map(|&i| self.label(i))
                .collect::<Vec<_>>()
                .join(" + ")
        }
    }

    /// Checks every algebraic law, reporting violations as findings.
    /// The location of every finding is the subgroup key.
    #[must_use]
    pub fn verify(&self) -> Report {
        let mut report = Report::new();
        let here = self.subgroup.key();
        let n = self.space.total_dim();

        if n == 0 {
            report.push(Finding::error(
                "nonzero-algebra",
                &here,
                None,
                "the algebra is the zero algebra".into(),
            ));
            return report.sorted();
        }

        // Degree-additivity of structure constants.
        for i in 0..n {
            let (di, _) = self.space.degree_of_flat(i);
            for j in 0..n {
                let (dj, _) = self.space.degree_of_flat(j);
                for k in self.mul[i][j].ones() {
                    let (dk, _) = self.space.degree_of_flat(k);
                    if dk != di + dj {
                        report.push(Finding::error(
                            "mul-degree",
                            &here,
                            Some(di + dj),
                            format!(
                                "product of {} (degree {di}) and {} (degree {dj}) has a component {} in degree {dk}",
                                self.label(i),
                                self.label(j),
                                self.label(k)
                            ),
                        ));
                    }
                }
            }
        }

        // Unit laws.
        for j in 0..n {
            let e_j = Gf2Vec::unit(n, j);
            if self.mul[self.unit][j] != e_j {
                report.push(Finding::error(
                    "unit-law",
                    &here,
                    None,
                    format!(
                        "unit * {} = {}, expected {}",
                        self.label(j),
                        self.describe(&self.mul[self.unit][j]),
                        self.label(j)
                    ),
                ));
            }
            if self.mul[j][self.unit] != e_j {
                report.push(Finding::error(
                    "unit-law",
                    &here,
                    None,
                    format!(
                        "{} * unit = {}, expected {}",
                        self.label(j),
                        self.describe(&self.mul[j][self.unit]),
                        self.label(j)
                    ),
                ));
            }
        }

        // Associativity on basis triples.
        for i in 0..n {
            let e_i = Gf2Vec::unit(n, i);
            for j in 0..n {
                let ij = self.mul[i][j].clone();
                for k in 0..n {
                    let e_k = Gf2Vec::unit(n, k);
                    let left = self.multiply(&ij, &e_k);
                    let right = self.multiply(&e_i, &self.mul[j][k]);
                    if left != right {
                        report.push(Finding::error(
                            "associativity",
                            &here,
                            None,
                            format!(
                                "({a}*{b})*{c} = {l} but {a}*({b}*{c}) = {r}",
                                a = self.label(i),
                                b = self.label(j),
                                c = self.label(k),
                                l = self.describe(&left),
                                r = self.describe(&right)
                            ),
                        ));
                    }
                }
            }
        }

        // Generator images: homogeneous of degree 1, central, commuting.
        for (gi, h) in self.h_images.iter().enumerate() {
            for k in h.ones() {
                let (dk, _) = self.space.degree_of_flat(k);
                if dk != 1 {
                    report.push(Finding::error(
                        "h-image-degree",
                        &here,
                        Some(dk),
                        format!(
                            "generator image {gi} has a component {} outside degree 1",
                            self.label(k)
                        ),
                    ));
                }
            }
            for j in 0..n {
                let e_j = Gf2Vec::unit(n, j);
                let hx = self.multiply(h, &e_j);
                let xh = self.multiply(&e_j, h);
                if hx != xh {
                    report.push(Finding::error(
                        "h-image-central",
                        &here,
                        None,
                        format!(
                            "generator image {gi} fails to commute with {}",
                            self.label(j)
                        ),
                    ));
                }
            }
        }
        for a in 0..self.h_images.len() {
            for b in a + 1..self.h_images.len() {
                let ab = self.multiply(&self.h_images[a], &self.h_images[b]);
                let ba = self.multiply(&self.h_images[b], &self.h_images[a]);
                if ab != ba {
                    report.push(Finding::error(
                        "h-image-commute",
                        &here,
                        None,
                        format!("generator images {a} and {b} fail to commute"),
                    ));
                }
            }
        }

        report.sorted()
    }

    /// The coefficient module: the underlying space with one operator per
    /// generator image, acting by left multiplication.
    ///
    /// # Errors
    /// Fails when a left-multiplication matrix is not homogeneous of
    /// shift 1 or the operators do not commute; [`GradedAlgebra::verify`]
    /// reports the same defects as findings.
    pub fn module_of(&self) -> Result<HWModule, ModuleError> {
        let mut ops = Vec::with_capacity(self.h_images.len());
        for h in &self.h_images {
            let flat = self.left_mult_matrix(h);
            let op = GradedMap::from_flat(self.space.clone(), self.space.clone(), 1, &flat)?;
            ops.push(op);
        }
        HWModule::new(self.subgroup.clone(), self.space.clone(), ops)
    }
}
