//! The on-disk description of a functor instance.
//!
//! A file carries the ambient rank, one algebra per subgroup (basis with
//! names and degrees in ascending degree order, unit index, sparse
//! multiplication triples, generator images as indices into the degree-1
//! part) and one edge per covering pair (dense 0/1 matrices over the two
//! flat bases). Loading validates structure exhaustively: canonical keys,
//! complete lattice, consistent shapes, degree-homogeneous matrices.
//! Semantic axioms are left to the verifier so that a defective instance
//! can be loaded and diagnosed.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraError, GradedAlgebra};
use crate::functor::{FunctorError, GysinEdge, GysinFunctor};
use crate::gf2::Gf2Matrix;
use crate::graded::{GradedError, GradedMap, GradedSpace};
use crate::lattice::{LatticeError, Subgroup};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed file: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Functor(#[from] FunctorError),
    #[error("subgroup {key}: {source}")]
    Algebra {
        key: String,
        #[source]
        source: AlgebraError,
    },
    #[error("subgroup {key}: basis entry {position} breaks ascending degree order")]
    BasisOrder { key: String, position: usize },
    #[error("subgroup {key}: h_images[{form}] index {got} exceeds the degree-1 dimension {dim}")]
    HImageIndex {
        key: String,
        form: usize,
        got: usize,
        dim: usize,
    },
    #[error("edge {pair}: {which} matrix has ragged rows")]
    Ragged { pair: String, which: &'static str },
    #[error("edge {pair}: {which} matrix: {source}")]
    EdgeMatrix {
        pair: String,
        which: &'static str,
        #[source]
        source: GradedError,
    },
    #[error("an h_image of subgroup {key} lies outside degree 1 and cannot be serialized")]
    HImageNotDegreeOne { key: String },
}

/// One basis element: a display name and its degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub name: String,
    pub degree: usize,
}

/// One algebra: canonical key rows, basis in flat order, unit index,
/// sparse product triples and generator images.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupFile {
    pub key: Vec<u64>,
    pub basis: Vec<BasisElement>,
    pub unit: usize,
    pub mul: Vec<(usize, usize, Vec<usize>)>,
    pub h_images: Vec<Vec<usize>>,
}

/// One covering pair: dense 0/1 matrices, rows over the target basis and
/// columns over the source basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeFile {
    pub sub_key: Vec<u64>,
    pub sup_key: Vec<u64>,
    pub rho: Vec<Vec<u8>>,
    pub psi: Vec<Vec<u8>>,
}

/// The whole file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorFile {
    pub rank: usize,
    pub subgroups: Vec<SubgroupFile>,
    pub edges: Vec<EdgeFile>,
}

fn render_key(rows: &[u64]) -> String {
    let inner: Vec<String> = rows.iter().map(u64::to_string).collect();
    format!("[{}]", inner.join(","))
}

/// Serializes a functor into the wire structure.
///
/// # Errors
/// Only generator images outside degree 1 are unserializable.
pub fn to_file(f: &GysinFunctor) -> Result<FunctorFile, FormatError> {
    let mut subgroups = Vec::new();
    for s in f.lattice().subgroups() {
        let a = f.algebra(s);
        let space = a.space();
        let total = space.total_dim();
        let mut basis = Vec::with_capacity(total);
        for flat in 0..total {
            let (degree, index) = space.degree_of_flat(flat);
            basis.push(BasisElement {
                name: space.label(degree, index),
                degree,
            });
        }
        let mut mul = Vec::new();
        for i in 0..total {
            for j in 0..total {
                let result = a.structure_constant(i, j);
                if !result.is_zero() {
                    mul.push((i, j, result.ones()));
                }
            }
        }
        let offset1 = space.flat_offset(1);
        let dim1 = space.dim(1);
        let mut h_images = Vec::new();
        for h in a.h_images() {
            let mut image = Vec::new();
            for flat in h.ones() {
                if flat < offset1 || flat >= offset1 + dim1 {
                    return Err(FormatError::HImageNotDegreeOne { key: s.key() });
                }
                image.push(flat - offset1);
            }
            h_images.push(image);
        }
        subgroups.push(SubgroupFile {
            key: s.rows().to_vec(),
            basis,
            unit: a.unit_index(),
            mul,
            h_images,
        });
    }
    let mut edges = Vec::new();
    for p in f.lattice().pairs() {
        let e = f.edge(p);
        edges.push(EdgeFile {
            sub_key: p.sub.rows().to_vec(),
            sup_key: p.sup.rows().to_vec(),
            rho: e.rho.to_flat().to_bits(),
            psi: e.psi.to_flat().to_bits(),
        });
    }
    Ok(FunctorFile {
        rank: f.rank(),
        subgroups,
        edges,
    })
}

/// Serializes a functor to pretty-printed JSON.
///
/// # Errors
/// Same conditions as [`to_file`].
pub fn to_json(f: &GysinFunctor) -> Result<String, FormatError> {
    let file = to_file(f)?;
    Ok(serde_json::to_string_pretty(&file).expect("wire structs always serialize"))
}

/// Rebuilds the functor from the wire structure, validating keys, basis
/// order, index ranges, matrix shapes and degree homogeneity. The axioms
/// themselves are not checked here.
///
/// # Errors
/// Every structural defect is reported with its location; the first one
/// found aborts the load.
pub fn from_file(file: &FunctorFile) -> Result<GysinFunctor, FormatError> {
    let mut algebras = Vec::new();
    for s in &file.subgroups {
        let subgroup = Subgroup::parse_key(file.rank, &render_key(&s.key))?;
        let key = subgroup.key();
        let mut dims: Vec<(usize, usize)> = Vec::new();
        let mut names: Vec<(usize, Vec<String>)> = Vec::new();
        let mut prev = 0usize;
        for (position, b) in s.basis.iter().enumerate() {
            if b.degree < prev {
                return Err(FormatError::BasisOrder {
                    key,
                    position,
                });
            }
            prev = b.degree;
            if dims.last().map(|&(d, _)| d) == Some(b.degree) {
                dims.last_mut().expect("nonempty").1 += 1;
                names.last_mut().expect("nonempty").1.push(b.name.clone());
            } else {
                dims.push((b.degree, 1));
                names.push((b.degree, vec![b.name.clone()]));
            }
        }
        let mut space = GradedSpace::from_dims(&dims);
        for (degree, labels) in names {
            space
                .set_names(degree, labels)
                .expect("label counts match by construction");
        }
        let offset1 = space.flat_offset(1);
        let dim1 = space.dim(1);
        let mut h_images = Vec::with_capacity(s.h_images.len());
        for (form, image) in s.h_images.iter().enumerate() {
            let mut flat = Vec::with_capacity(image.len());
            for &k in image {
                if k >= dim1 {
                    return Err(FormatError::HImageIndex {
                        key,
                        form,
                        got: k,
                        dim: dim1,
                    });
                }
                flat.push(offset1 + k);
            }
            h_images.push(flat);
        }
        let algebra =
            GradedAlgebra::from_sparse(subgroup, space, s.unit, &s.mul, &h_images)
                .map_err(|source| FormatError::Algebra { key, source })?;
        algebras.push(algebra);
    }

    let space_of = |rows: &[u64]| -> Option<GradedSpace> {
        algebras
            .iter()
            .find(|a| a.subgroup().rows() == rows)
            .map(|a| a.space().clone())
    };
    let mut edges = Vec::new();
    for e in &file.edges {
        let sub_key = Subgroup::parse_key(file.rank, &render_key(&e.sub_key))?.key();
        let sup_key = Subgroup::parse_key(file.rank, &render_key(&e.sup_key))?.key();
        let pair = format!("{sub_key} < {sup_key}");
        let sub_space = space_of(&e.sub_key)
            .ok_or_else(|| FunctorError::UnknownSubgroup(sub_key.clone(), file.rank))?;
        let sup_space = space_of(&e.sup_key)
            .ok_or_else(|| FunctorError::UnknownSubgroup(sup_key.clone(), file.rank))?;
        let mut maps = Vec::new();
        for (which, rows, source, target) in [
            ("rho", &e.rho, &sup_space, &sub_space),
            ("psi", &e.psi, &sub_space, &sup_space),
        ] {
            let width = rows.first().map_or(0, Vec::len);
            if rows.iter().any(|r| r.len() != width) {
                return Err(FormatError::Ragged {
                    pair: pair.clone(),
                    which,
                });
            }
            let m = Gf2Matrix::from_bits(rows);
            let map = GradedMap::from_flat(source.clone(), target.clone(), 0, &m).map_err(
                |source| FormatError::EdgeMatrix {
                    pair: pair.clone(),
                    which,
                    source,
                },
            )?;
            maps.push(map);
        }
        let psi = maps.pop().expect("two maps pushed");
        let rho = maps.pop().expect("two maps pushed");
        edges.push(GysinEdge {
            sub_key,
            sup_key,
            rho,
            psi,
        });
    }
    Ok(GysinFunctor::new(file.rank, algebras, edges)?)
}

/// Parses the JSON form.
///
/// # Errors
/// Malformed JSON and every structural defect of [`from_file`].
pub fn parse_json(text: &str) -> Result<GysinFunctor, FormatError> {
    let file: FunctorFile = serde_json::from_str(text)?;
    from_file(&file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::functor::VerifyOptions;

    fn assert_round_trip(f: &GysinFunctor) {
        let text = to_json(f).expect("serializable");
        let g = parse_json(&text).expect("parses back");
        assert_eq!(f.rank(), g.rank());
        for s in f.lattice().subgroups() {
            let a = f.algebra(s);
            let b = g.algebra(s);
            assert_eq!(a.space().dims(), b.space().dims(), "dims at {}", s.key());
            assert_eq!(a.unit_index(), b.unit_index());
            assert_eq!(a.h_images(), b.h_images());
            let n = a.space().total_dim();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(a.structure_constant(i, j), b.structure_constant(i, j));
                }
            }
        }
        for p in f.lattice().pairs() {
            let e = f.edge(p);
            let d = g.edge(p);
            assert_eq!(e.rho.to_flat().to_bits(), d.rho.to_flat().to_bits());
            assert_eq!(e.psi.to_flat().to_bits(), d.psi.to_flat().to_bits());
        }
    }

    #[test]
    fn builtins_round_trip() {
        assert_round_trip(&builtin::example_2_2_4_1());
        assert_round_trip(&builtin::sphere(3).unwrap());
        assert_round_trip(&builtin::product_spheres(&[1, 2]).unwrap());
    }

    #[test]
    fn parsed_example_still_verifies() {
        let text = to_json(&builtin::example_2_2_4_1()).unwrap();
        let f = parse_json(&text).unwrap();
        assert!(f.verify(&VerifyOptions::default()).passed());
    }

    #[test]
    fn missing_edge_is_incomplete_lattice_data() {
        let mut file = to_file(&builtin::example_2_2_4_1()).unwrap();
        file.edges.clear();
        let err = from_file(&file).unwrap_err();
        assert!(
            err.to_string().starts_with("incomplete lattice data"),
            "got: {err}"
        );
    }

    #[test]
    fn non_canonical_key_is_rejected() {
        let mut file = to_file(&builtin::example_2_2_4_1()).unwrap();
        file.subgroups[1].key = vec![1, 1]; // duplicated row, not reduced
        let err = from_file(&file).unwrap_err();
        assert_eq!(err.to_string(), "non-canonical subgroup key");
    }

    #[test]
    fn degree_violating_entry_is_located() {
        let mut file = to_file(&builtin::example_2_2_4_1()).unwrap();
        // Point a degree-0 source column at a degree-1 target row.
        let edge = &mut file.edges[0];
        edge.rho[1][0] = 1;
        let err = from_file(&file).unwrap_err();
        let text = err.to_string();
        assert!(text.contains("rho"), "got: {text}");
        assert!(text.contains("(1,0)"), "got: {text}");
    }

    #[test]
    fn out_of_range_h_image_is_located() {
        let mut file = to_file(&builtin::example_2_2_4_1()).unwrap();
        file.subgroups[1].h_images[0] = vec![9];
        let err = from_file(&file).unwrap_err();
        assert!(err.to_string().contains("h_images[0]"), "got: {err}");
    }

    #[test]
    fn basis_out_of_degree_order_is_rejected() {
        let mut file = to_file(&builtin::example_2_2_4_1()).unwrap();
        file.subgroups[0].basis.swap(0, 1);
        let err = from_file(&file).unwrap_err();
        assert!(err.to_string().contains("degree order"), "got: {err}");
    }
}
