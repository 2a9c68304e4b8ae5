//! Ready-made functor instances.
//!
//! Three families: the rank-one eight-dimensional instance with a
//! nontrivial transfer pattern, truncated-polynomial sphere models, and
//! products of spheres carrying the coordinatewise antipodal action of
//! (Z/2Z)^d. The first two are written out as explicit tables; the
//! products are computed from an equivariant cellular cochain model, so
//! they exercise every code path with data that was not typed in by hand.

use crate::algebra::GradedAlgebra;
use crate::functor::{GysinEdge, GysinFunctor};
use crate::gf2::Gf2Matrix;
use crate::graded::{GradedMap, GradedSpace};
use crate::lattice::{SubgroupLattice, MAX_RANK};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuiltinError {
    #[error("sphere dimension must be at least 1")]
    FlatSphere,
    #[error("a product model needs between 1 and 6 sphere factors, got {0}")]
    FactorCount(usize),
}

/// The rank-one functor on an eight-dimensional base algebra.
///
/// K at the zero subgroup has basis iota, x1, x2, x1x2, x4, y4, x5, x1x5
/// in degrees 0,1,2,3,4,4,5,6 with x1*x2 = x1x2, x1*x5 = x1x5 and
/// x2*y4 = x1x5 the only products of positive-degree elements. K at the
/// full subgroup is spanned by 17 monomials t^a*mu (a <= 4), t^a*z1,
/// t^a*z2, t^a*z1z2 (a <= 3) with z1, z2 of degree 1 and 2. The
/// restriction kills t and sends z-monomials to the matching x-classes;
/// the transfer hits the top t-power of each monomial family.
#[must_use]
pub fn example_2_2_4_1() -> GysinFunctor {
    let lattice = SubgroupLattice::new(1).expect("rank 1 fits");
    let zero = lattice.zero_subgroup().clone();
    let full = lattice.full_subgroup().clone();

    // Base term.
    let mut k0_space =
        GradedSpace::from_dims(&[(0, 1), (1, 1), (2, 1), (3, 1), (4, 2), (5, 1), (6, 1)]);
    for (deg, names) in [
        (0usize, vec!["iota"]),
        (1, vec!["x1"]),
        (2, vec!["x2"]),
        (3, vec!["x1x2"]),
        (4, vec!["x4", "y4"]),
        (5, vec!["x5"]),
        (6, vec!["x1x5"]),
    ] {
        k0_space
            .set_names(deg, names.into_iter().map(String::from).collect())
            .expect("name count matches");
    }
    let mut k0_triples: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for j in 0..8 {
        k0_triples.push((0, j, vec![j]));
        if j > 0 {
            k0_triples.push((j, 0, vec![j]));
        }
    }
    for (i, j, k) in [(1, 2, 3), (2, 1, 3), (1, 6, 7), (6, 1, 7), (2, 5, 7), (5, 2, 7)] {
        k0_triples.push((i, j, vec![k]));
    }
    let k0 = GradedAlgebra::from_sparse(zero, k0_space.clone(), 0, &k0_triples, &[])
        .expect("static table is well shaped");

    // Upper term: monomials (family, t-exponent). Family s is a bitmask
    // over {z1, z2}; the exponent cap is 4 for the mu family, 3 otherwise.
    let fam_degree = |s: usize| ((s & 1) != 0) as usize + 2 * usize::from((s & 2) != 0);
    let fam_cap = |s: usize| if s == 0 { 4 } else { 3 };
    let fam_label = |s: usize| match s {
        0 => "mu",
        1 => "z1",
        2 => "z2",
        _ => "z1z2",
    };
    let mut monomials: Vec<(usize, usize)> = Vec::new();
    for s in 0..4 {
        for a in 0..=fam_cap(s) {
            monomials.push((s, a));
        }
    }
    monomials.sort_by_key(|&(s, a)| (a + fam_degree(s), s, a));
    let idx = |s: usize, a: usize| {
        monomials
            .iter()
            .position(|&m| m == (s, a))
            .expect("monomial in range")
    };
    let mut kw_dims: Vec<(usize, usize)> = Vec::new();
    let mut kw_names: Vec<(usize, Vec<String>)> = Vec::new();
    for &(s, a) in &monomials {
        let d = a + fam_degree(s);
        if kw_dims.last().map(|&(deg, _)| deg) == Some(d) {
            kw_dims.last_mut().expect("nonempty").1 += 1;
        } else {
            kw_dims.push((d, 1));
            kw_names.push((d, Vec::new()));
        }
        let label = match a {
            0 => fam_label(s).to_string(),
            1 => format!("t.{}", fam_label(s)),
            _ => format!("t{}.{}", a, fam_label(s)),
        };
        kw_names.last_mut().expect("nonempty").1.push(label);
    }
    let mut kw_space = GradedSpace::from_dims(&kw_dims);
    for (deg, names) in kw_names {
        kw_space.set_names(deg, names).expect("name count matches");
    }
    let mut kw_triples: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for (i, &(s1, a1)) in monomials.iter().enumerate() {
        for (j, &(s2, a2)) in monomials.iter().enumerate() {
            if s1 & s2 != 0 {
                continue;
            }
            let (s, a) = (s1 | s2, a1 + a2);
            if a <= fam_cap(s) {
                kw_triples.push((i, j, vec![idx(s, a)]));
            }
        }
    }
    let kw = GradedAlgebra::from_sparse(
        full,
        kw_space.clone(),
        idx(0, 0),
        &kw_triples,
        &[vec![idx(0, 1)]],
    )
    .expect("static table is well shaped");

    // rho kills every t-multiple and matches the four z-monomials to the
    // x-classes of the same degree; psi vanishes below degree 4 and sends
    // the four upper basis classes to the top monomial of each family.
    let mut rho = Gf2Matrix::zeros(8, 17);
    rho.set(0, idx(0, 0), true);
    rho.set(1, idx(1, 0), true);
    rho.set(2, idx(2, 0), true);
    rho.set(3, idx(3, 0), true);
    let mut psi = Gf2Matrix::zeros(17, 8);
    psi.set(idx(0, 4), 4, true);
    psi.set(idx(1, 3), 5, true);
    psi.set(idx(2, 3), 6, true);
    psi.set(idx(3, 3), 7, true);
    let edge = GysinEdge {
        sub_key: lattice.zero_subgroup().key(),
        sup_key: lattice.full_subgroup().key(),
        rho: GradedMap::from_flat(kw_space, k0_space, 0, &rho).expect("rho is degreewise"),
        psi: GradedMap::from_flat(
            k0.space().clone(),
            kw.space().clone(),
            0,
            &psi,
        )
        .expect("psi is degreewise"),
    };
    GysinFunctor::new(1, vec![k0, kw], vec![edge]).expect("complete by construction")
}

/// The rank-one model of a free antipodal action on the n-sphere: the
/// upper term is the truncated polynomial algebra on t of dimension n+1,
/// the base term has one class in degree 0 and one in degree n.
///
/// # Errors
/// n = 0 is rejected: the quotient would not be connected.
pub fn sphere(n: usize) -> Result<GysinFunctor, BuiltinError> {
    if n == 0 {
        return Err(BuiltinError::FlatSphere);
    }
    let lattice = SubgroupLattice::new(1).expect("rank 1 fits");

    let dims: Vec<(usize, usize)> = (0..=n).map(|j| (j, 1)).collect();
    let mut kw_space = GradedSpace::from_dims(&dims);
    for j in 0..=n {
        let name = match j {
            0 => "1".to_string(),
            1 => "t".to_string(),
            _ => format!("t{j}"),
        };
        kw_space.set_names(j, vec![name]).expect("one name per degree");
    }
    let mut kw_triples = Vec::new();
    for a in 0..=n {
        for b in 0..=n {
            if a + b <= n {
                kw_triples.push((a, b, vec![a + b]));
            }
        }
    }
    let kw = GradedAlgebra::from_sparse(
        lattice.full_subgroup().clone(),
        kw_space.clone(),
        0,
        &kw_triples,
        &[vec![1]],
    )
    .expect("static table is well shaped");

    let mut k0_space = GradedSpace::from_dims(&[(0, 1), (n, 1)]);
    k0_space.set_names(0, vec!["1".to_string()]).expect("one name");
    k0_space.set_names(n, vec!["s".to_string()]).expect("one name");
    let k0_triples = vec![(0, 0, vec![0]), (0, 1, vec![1]), (1, 0, vec![1])];
    let k0 = GradedAlgebra::from_sparse(
        lattice.zero_subgroup().clone(),
        k0_space.clone(),
        0,
        &k0_triples,
        &[],
    )
    .expect("static table is well shaped");

    let mut rho = Gf2Matrix::zeros(2, n + 1);
    rho.set(0, 0, true);
    let mut psi = Gf2Matrix::zeros(n + 1, 2);
    psi.set(n, 1, true);
    let edge = GysinEdge {
        sub_key: lattice.zero_subgroup().key(),
        sup_key: lattice.full_subgroup().key(),
        rho: GradedMap::from_flat(kw_space, k0_space.clone(), 0, &rho).expect("degreewise"),
        psi: GradedMap::from_flat(k0_space, kw.space().clone(), 0, &psi).expect("degreewise"),
    };
    Ok(GysinFunctor::new(1, vec![k0, kw], vec![edge]).expect("complete by construction"))
}

/// The rank-d functor of S^{n_1} x ... x S^{n_d} where the i-th generator
/// of (Z/2Z)^d acts antipodally on the i-th factor and trivially on the
/// others. Every term, product table, restriction and transfer is computed
/// from the equivariant cellular cochain complex of the product, so nothing
/// here is hand-tuned.
///
/// # Errors
/// Rejects an empty or oversized factor list and any 0-dimensional factor.
pub fn product_spheres(factors: &[usize]) -> Result<GysinFunctor, BuiltinError> {
    if factors.is_empty() || factors.len() > MAX_RANK {
        return Err(BuiltinError::FactorCount(factors.len()));
    }
    if factors.contains(&0) {
        return Err(BuiltinError::FlatSphere);
    }
    let d = factors.len();
    let lattice = SubgroupLattice::new(d).expect("factor count checked");

    let models: Vec<cells::Model> = lattice
        .subgroups()
        .iter()
        .map(|w| cells::Model::build(w.clone(), factors))
        .collect();
    let model_of = |key: &str| {
        models
            .iter()
            .find(|m| m.subgroup().key() == key)
            .expect("model for every subgroup")
    };

    let algebras: Vec<GradedAlgebra> = models.iter().map(cells::Model::algebra).collect();
    let edges: Vec<GysinEdge> = lattice
        .pairs()
        .iter()
        .map(|p| {
            let sub = model_of(&p.sub.key());
            let sup = model_of(&p.sup.key());
            GysinEdge {
                sub_key: p.sub.key(),
                sup_key: p.sup.key(),
                rho: sup.restriction_to(sub),
                psi: sub.transfer_to(sup),
            }
        })
        .collect();
    Ok(GysinFunctor::new(d, algebras, edges).expect("complete by construction"))
}

/// Equivariant cellular cochains on a product of spheres.
///
/// The i-th sphere S^n carries the standard free cell structure with two
/// cells in each dimension 0..n and boundary de_k = (1+g)e_{k-1}. A cell
/// of the product is a multidegree; a chain basis element is a (cell,
/// group element) pair. Functionals invariant under a subgroup W are
/// spanned by (cell, W-coset) indicators, and their cohomology in each
/// degree is the term of the functor at W. Products come from the
/// diagonal D(e_k) = sum e_a (x) g^a e_{k-a}, which is a strictly
/// coassociative equivariant chain map, so the induced cup product is
/// associative on the nose.
mod cells {
    use std::collections::HashMap;

    use crate::algebra::GradedAlgebra;
    use crate::gf2::{Gf2Matrix, Gf2Vec, Subspace};
    use crate::graded::{GradedMap, GradedSpace};
    use crate::lattice::Subgroup;

    /// Chosen cocycle representatives of one cohomology degree, plus a
    /// solver that rewrites any cocycle as boundary + representatives.
    struct Level {
        reps: Vec<Gf2Vec>,
        solver: Gf2Matrix,
        boundary_dim: usize,
    }

    impl Level {
        fn class_of(&self, cocycle: &Gf2Vec) -> Gf2Vec {
            let sol = self
                .solver
                .solve(cocycle)
                .expect("vector is a cocycle of this degree");
            let mut out = Gf2Vec::zeros(self.reps.len());
            for k in 0..self.reps.len() {
                if sol.get(self.boundary_dim + k) {
                    out.set(k, true);
                }
            }
            out
        }
    }

    pub(super) struct Model {
        w: Subgroup,
        top: usize,
        cosets: Vec<u64>,
        coset_pos: HashMap<u64, usize>,
        /// cells_by_degree[j] lists the multidegrees of total degree j.
        cells_by_degree: Vec<Vec<Vec<usize>>>,
        cell_pos: HashMap<Vec<usize>, usize>,
        levels: Vec<Level>,
        space: GradedSpace,
    }

    impl Model {
        pub(super) fn build(w: Subgroup, factors: &[usize]) -> Model {
            let d = factors.len();
            let top: usize = factors.iter().sum();

            // Canonical coset representatives: vectors with zeros at the
            // pivot coordinates of W, in ascending mask order.
            let cosets: Vec<u64> = (0..(1u64 << d))
                .filter(|&v| w.coset_rep(v) == v)
                .collect();
            let coset_pos: HashMap<u64, usize> =
                cosets.iter().enumerate().map(|(i, &v)| (v, i)).collect();

            let mut cells_by_degree: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top + 1];
            let mut stack = vec![Vec::with_capacity(d)];
            while let Some(cell) = stack.pop() {
                if cell.len() == d {
                    cells_by_degree[cell.iter().sum::<usize>()].push(cell);
                    continue;
                }
                // Descending push so the popped order is lexicographic.
                for k in (0..=factors[cell.len()]).rev() {
                    let mut next = cell.clone();
                    next.push(k);
                    stack.push(next);
                }
            }
            for list in &mut cells_by_degree {
                list.sort();
            }
            let mut cell_pos = HashMap::new();
            for list in &cells_by_degree {
                for (i, cell) in list.iter().enumerate() {
                    cell_pos.insert(cell.clone(), i);
                }
            }

            let mut model = Model {
                w,
                top,
                cosets,
                coset_pos,
                cells_by_degree,
                cell_pos,
                levels: Vec::new(),
                space: GradedSpace::zero(),
            };

            // d_j maps degree-j functionals to degree-(j+1) functionals;
            // row x of the matrix is the boundary of the basis chain x.
            let diffs: Vec<Gf2Matrix> = (0..top)
                .map(|j| {
                    let rows: Vec<Gf2Vec> = (0..model.dim_at(j + 1))
                        .map(|x| model.boundary_row(j + 1, x))
                        .collect();
                    Gf2Matrix::from_rows(rows, model.dim_at(j))
                })
                .collect();

            let mut dims: Vec<(usize, usize)> = Vec::new();
            for j in 0..=top {
                let ambient = model.dim_at(j);
                let cocycles: Vec<Gf2Vec> = if j == top {
                    (0..ambient).map(|i| Gf2Vec::unit(ambient, i)).collect()
                } else {
                    diffs[j].kernel_basis()
                };
                let boundaries: Vec<Gf2Vec> = if j == 0 {
                    Vec::new()
                } else {
                    diffs[j - 1].image_basis()
                };
                let mut span = Subspace::from_spanning(ambient, &boundaries);
                let boundary_basis: Vec<Gf2Vec> = span.basis().to_vec();
                let mut reps = Vec::new();
                for z in cocycles {
                    if !span.contains(&z) {
                        span = span.sum(&Subspace::from_spanning(ambient, std::slice::from_ref(&z)));
                        reps.push(z);
                    }
                }
                let mut columns = boundary_basis;
                let boundary_dim = columns.len();
                columns.extend(reps.iter().cloned());
                let solver = Gf2Matrix::from_cols(&columns, ambient);
                dims.push((j, reps.len()));
                model.levels.push(Level {
                    reps,
                    solver,
                    boundary_dim,
                });
            }
            model.space = GradedSpace::from_dims(&dims);
            debug_assert_eq!(model.space.dim(0), 1, "quotient stays connected");
            model
        }

        pub(super) fn subgroup(&self) -> &Subgroup {
            &self.w
        }

        fn dim_at(&self, j: usize) -> usize {
            self.cells_by_degree[j].len() * self.cosets.len()
        }

        fn index(&self, cell: &[usize], v: u64) -> usize {
            let c = self.coset_pos[&self.w.coset_rep(v)];
            self.cell_pos[cell] * self.cosets.len() + c
        }

        /// The boundary of basis chain x of degree j, written over the
        /// degree-(j-1) basis: sum over factors with a positive entry of
        /// the two facets (cell - e_i, v) and (cell - e_i, v + e_i).
        fn boundary_row(&self, j: usize, x: usize) -> Gf2Vec {
            let n = self.cosets.len();
            let cell = &self.cells_by_degree[j][x / n];
            let v = self.cosets[x % n];
            let mut row = Gf2Vec::zeros(self.dim_at(j - 1));
            for i in 0..cell.len() {
                if cell[i] == 0 {
                    continue;
                }
                let mut facet = cell.clone();
                facet[i] -= 1;
                row.flip(self.index(&facet, v));
                row.flip(self.index(&facet, v ^ (1 << i)));
            }
            row
        }

        /// Cup product of a degree-p and a degree-q functional via the
        /// tensor diagonal: the front face keeps the group coordinate, the
        /// back face is shifted by the parity mask of the front cell.
        fn cup(&self, p: usize, phi: &Gf2Vec, q: usize, psi: &Gf2Vec) -> Gf2Vec {
            let n = self.cosets.len();
            let mut out = Gf2Vec::zeros(self.dim_at(p + q));
            for (pos, cell) in self.cells_by_degree[p + q].iter().enumerate() {
                for front in &self.cells_by_degree[p] {
                    if front.iter().zip(cell).any(|(a, k)| a > k) {
                        continue;
                    }
                    let back: Vec<usize> =
                        cell.iter().zip(front).map(|(k, a)| k - a).collect();
                    let parity = front
                        .iter()
                        .enumerate()
                        .fold(0u64, |m, (i, a)| m | ((*a as u64 & 1) << i));
                    for (ci, &v) in self.cosets.iter().enumerate() {
                        if phi.get(self.index(front, v)) && psi.get(self.index(&back, v ^ parity))
                        {
                            out.flip(pos * n + ci);
                        }
                    }
                }
            }
            out
        }

        /// The degree-1 cocycle counting factor-i edges for each i in the
        /// mask, over every coset.
        fn edge_cocycle(&self, mask: u64) -> Gf2Vec {
            let mut out = Gf2Vec::zeros(self.dim_at(1));
            for (pos, cell) in self.cells_by_degree[1].iter().enumerate() {
                let i = cell.iter().position(|&k| k == 1).expect("degree-1 cell");
                if mask & (1 << i) != 0 {
                    for ci in 0..self.cosets.len() {
                        out.set(pos * self.cosets.len() + ci, true);
                    }
                }
            }
            out
        }

        /// The term of the functor at this subgroup, with its cup table
        /// and the images of the dual-basis generators.
        pub(super) fn algebra(&self) -> GradedAlgebra {
            let total = self.space.total_dim();
            let mut triples: Vec<(usize, usize, Vec<usize>)> = Vec::new();
            for i in 0..total {
                let (p, pi) = self.space.degree_of_flat(i);
                for j in 0..total {
                    let (q, qi) = self.space.degree_of_flat(j);
                    if p + q > self.top {
                        continue;
                    }
                    let prod = self.cup(
                        p,
                        &self.levels[p].reps[pi],
                        q,
                        &self.levels[q].reps[qi],
                    );
                    let class = self.levels[p + q].class_of(&prod);
                    let offset = self.space.flat_offset(p + q);
                    let indices: Vec<usize> =
                        class.ones().into_iter().map(|k| offset + k).collect();
                    if !indices.is_empty() {
                        triples.push((i, j, indices));
                    }
                }
            }

            // For the l-th dual-basis form of W, pick the character of the
            // ambient group restricting to it and take the class of its
            // edge cocycle.
            let m = self.w.rank();
            let rows: Vec<Gf2Vec> = self
                .w
                .rows()
                .iter()
                .map(|&r| {
                    Gf2Vec::from_indices(
                        self.w.ambient_rank(),
                        &(0..self.w.ambient_rank())
                            .filter(|i| r & (1 << i) != 0)
                            .collect::<Vec<_>>(),
                    )
                })
                .collect();
            let row_matrix = Gf2Matrix::from_rows(rows, self.w.ambient_rank());
            let mut h_images = Vec::with_capacity(m);
            for l in 0..m {
                let s = row_matrix
                    .solve(&Gf2Vec::unit(m, l))
                    .expect("basis rows are independent");
                let mask = s.ones().into_iter().fold(0u64, |acc, i| acc | (1 << i));
                let class = self.levels[1].class_of(&self.edge_cocycle(mask));
                let offset = self.space.flat_offset(1);
                h_images.push(
                    class.ones().into_iter().map(|k| offset + k).collect::<Vec<_>>(),
                );
            }

            GradedAlgebra::from_sparse(self.w.clone(), self.space.clone(), 0, &triples, &h_images)
                .expect("cocycle classes fit the computed space")
        }

        /// Restriction to a model of a smaller subgroup: reinterpret each
        /// representative as an invariant functional of the subgroup.
        pub(super) fn restriction_to(&self, sub: &Model) -> GradedMap {
            let mut flat = Gf2Matrix::zeros(sub.space.total_dim(), self.space.total_dim());
            for col in 0..self.space.total_dim() {
                let (j, ji) = self.space.degree_of_flat(col);
                let rep = &self.levels[j].reps[ji];
                let mut vec = Gf2Vec::zeros(sub.dim_at(j));
                for (pos, cell) in sub.cells_by_degree[j].iter().enumerate() {
                    for (ci, &v) in sub.cosets.iter().enumerate() {
                        if rep.get(self.index(cell, v)) {
                            vec.set(pos * sub.cosets.len() + ci, true);
                        }
                    }
                }
                let class = sub.levels[j].class_of(&vec);
                let offset = sub.space.flat_offset(j);
                for k in class.ones() {
                    flat.set(offset + k, col, true);
                }
            }
            GradedMap::from_flat(self.space.clone(), sub.space.clone(), 0, &flat)
                .expect("restriction preserves degree")
        }

        /// Transfer into a model of a covering subgroup: sum a functional
        /// over the two cosets of this subgroup inside the larger one.
        pub(super) fn transfer_to(&self, sup: &Model) -> GradedMap {
            let w0 = sup
                .w
                .elements()
                .into_iter()
                .find(|&v| !self.w.contains_vector(v))
                .expect("index-two inclusion has a nontrivial coset");
            let mut flat = Gf2Matrix::zeros(sup.space.total_dim(), self.space.total_dim());
            for col in 0..self.space.total_dim() {
                let (j, ji) = self.space.degree_of_flat(col);
                let rep = &self.levels[j].reps[ji];
                let mut vec = Gf2Vec::zeros(sup.dim_at(j));
                for (pos, cell) in sup.cells_by_degree[j].iter().enumerate() {
                    for (ci, &v) in sup.cosets.iter().enumerate() {
                        let mut val = rep.get(self.index(cell, v));
                        val ^= rep.get(self.index(cell, v ^ w0));
                        if val {
                            vec.set(pos * sup.cosets.len() + ci, true);
                        }
                    }
                }
                let class = sup.levels[j].class_of(&vec);
                let offset = sup.space.flat_offset(j);
                for k in class.ones() {
                    flat.set(offset + k, col, true);
                }
            }
            GradedMap::from_flat(self.space.clone(), sup.space.clone(), 0, &flat)
                .expect("transfer preserves degree")
        }
    }
}
