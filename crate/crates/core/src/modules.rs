//! Finite graded modules over F2[t] and over exterior coefficient rings
//! with several commuting degree-1 operators.
//!
//! The central objects are [`TModule`] (one nilpotent shift-1 operator;
//! torsion functors `bar` = coker t and `tau` = ker t, and the Jordan
//! block decomposition) and [`HWModule`] (one commuting operator per
//! canonical dual-basis form of a subgroup, supporting generated
//! submodules, quotients, and specialization to a single operator along a
//! linear form). [`tor_les`] assembles the six-term exact sequence
//! 0 → τA → τB → τC → Ā → B̄ → C̄ → 0 attached to a short exact sequence
//! of t-modules and verifies its exactness degree by degree.

use std::fmt;

use crate::gf2::{Gf2Matrix, Gf2Vec};
use crate::graded::{
    GradedError, GradedMap, GradedQuotient, GradedSpace, GradedSubspace,
};
use crate::lattice::{H1Element, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error("operator has shift {0}, expected 1")]
    WrongShift(usize),
    #[error("operator endpoints disagree with the module space")]
    SpaceMismatch,
    #[error("expected {want} operators for a rank-{want} subgroup, got {got}")]
    OpCount { got: usize, want: usize },
    #[error("operators {i} and {j} fail to commute at degree {degree}")]
    OpsDontCommute { i: usize, j: usize, degree: usize },
    #[error("form lives over {got}, module over {want}")]
    FormOverWrongSubgroup { got: String, want: String },
    #[error("subspace is not closed under the operators at degree {degree}")]
    NotClosed { degree: usize },
    #[error("short exact sequence invalid: {0}")]
    Ses(#[from] SesViolation),
    #[error(transparent)]
    Graded(#[from] GradedError),
}

/// A specific way a claimed short exact sequence fails its contract.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SesViolation {
    #[error("{which} map has shift {got}, expected 0")]
    MapShift { which: &'static str, got: usize },
    #[error("{which} map endpoints disagree with the modules")]
    MapEndpoints { which: &'static str },
    #[error("{which} map does not commute with t at degree {degree}")]
    NotEquivariant { which: &'static str, degree: usize },
    #[error("injection has a kernel at degree {degree}")]
    NotInjective { degree: usize },
    #[error("surjection misses part of degree {degree}")]
    NotSurjective { degree: usize },
    #[error("image of the injection differs from the kernel of the surjection at degree {degree}")]
    ImageKernelMismatch { degree: usize },
    #[error("connecting map ill-defined at degree {degree}")]
    DeltaIllDefined { degree: usize },
}

// ==== Modules over F2[t] ====

/// A finite graded F2[t]-module: a graded space with one degree-raising
/// operator. Nilpotency is automatic since degrees are bounded.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TModule {
    space: GradedSpace,
    t: GradedMap,
}

impl TModule {
    /// # Errors
    /// The operator must have shift 1 and both endpoints equal to `space`.
    pub fn new(space: GradedSpace, t: GradedMap) -> Result<Self, ModuleError> {
        if t.shift() != 1 {
            return Err(ModuleError::WrongShift(t.shift()));
        }
        if t.source().dims() != space.dims() || t.target().dims() != space.dims() {
            return Err(ModuleError::SpaceMismatch);
        }
        Ok(TModule { space, t })
    }

    /// The module with the zero action.
    #[must_use]
    pub fn with_zero_action(space: GradedSpace) -> Self {
        let t = GradedMap::zero(space.clone(), space.clone(), 1);
        TModule { space, t }
    }

    /// The truncated polynomial module: one generator in degree `base`,
    /// nonzero up to degree `base + k`, so dimension k+1.
    #[must_use]
    pub fn truncated_polynomial(base: usize, k: usize) -> Self {
        let dims: Vec<(usize, usize)> = (base..=base + k).map(|d| (d, 1)).collect();
        let space = GradedSpace::from_dims(&dims);
        let mut t = GradedMap::zero(space.clone(), space.clone(), 1);
        for d in base..base + k {
            t.set_block(d, Gf2Matrix::identity(1));
        }
        TModule { space, t }
    }

    #[must_use]
    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    #[must_use]
    pub fn t(&self) -> &GradedMap {
        &self.t
    }

    /// The operator iterated j times (shift j).
    #[must_use]
    pub fn t_power(&self, j: usize) -> GradedMap {
        let mut acc = GradedMap::identity(&self.space);
        for _ in 0..j {
            acc = self.t.compose(&acc);
        }
        acc
    }

    /// Cokernel of t: the quotient by the image, with its projection.
    #[must_use]
    pub fn bar(&self) -> GradedQuotient {
        GradedQuotient::by(self.t.image())
    }

    /// Kernel of t, with its inclusion.
    #[must_use]
    pub fn tau(&self) -> GradedSubspace {
        self.t.kernel()
    }

    /// True when coker t and ker t have the same total dimension; both
    /// count the Jordan blocks, so disagreement means corrupted data.
    #[must_use]
    pub fn bar_tau_dims_agree(&self) -> bool {
        self.bar().space().total_dim() == self.tau().total_dim()
    }

    /// Jordan block decomposition of the nilpotent operator, by the rank
    /// inclusion-exclusion count of interval submodules: the number of
    /// blocks spanning degrees a..=b is
    /// r(a,b) - r(a-1,b) - r(a,b+1) + r(a-1,b+1)
    /// where r(a,b) is the rank of t^(b-a) out of degree a.
    #[must_use]
    pub fn jordan_type(&self) -> JordanType {
        let Some(top) = self.space.dims().keys().next_back().copied() else {
            return JordanType { parts: Vec::new() };
        };
        let lo = *self.space.dims().keys().next().expect("nonzero space");
        // r[a][b] with lo <= a <= b <= top: rank of the composite
        // degree-a block chain up to degree b.
        let idx = |a: usize, b: usize| (a - lo, b - lo);
        let n = top - lo + 1;
        let mut r = vec![vec![0usize; n]; n];
        for a in lo..=top {
            let mut chain = Gf2Matrix::identity(self.space.dim(a));
            let (ia, ib) = idx(a, a);
            r[ia][ib] = chain.rank();
            for b in a + 1..=top {
                chain = self.t.block(b - 1).mul(&chain);
                let (ia, ib) = idx(a, b);
                r[ia][ib] = chain.rank();
            }
        }
        let rank_at = |a: isize, b: usize| -> usize {
            if a < lo as isize || b > top || (a as usize) > b {
                0
            } else {
                let (ia, ib) = idx(a as usize, b);
                r[ia][ib]
            }
        };
        let mut parts = Vec::new();
        for a in lo..=top {
            for b in (a..=top).rev() {
                let mult = (rank_at(a as isize, b) + rank_at(a as isize - 1, b + 1))
                    as isize
                    - (rank_at(a as isize - 1, b) + rank_at(a as isize, b + 1)) as isize;
                debug_assert!(mult >= 0, "interval multiplicity must be nonnegative");
                for _ in 0..mult {
                    parts.push(JordanPart {
                        base_degree: a,
                        size: b - a + 1,
                    });
                }
            }
        }
        let jt = JordanType { parts };
        debug_assert_eq!(jt.total(), self.space.total_dim());
        jt
    }

    /// The module structure on an operator-closed subspace.
    ///
    /// # Errors
    /// Fails when the subspace is not closed under t.
    pub fn submodule(&self, sub: &GradedSubspace) -> Result<(TModule, GradedMap), ModuleError> {
        let t = self
            .t
            .restrict(sub, sub)
            .map_err(|e| match e {
                GradedError::EscapesSubspace { degree } => ModuleError::NotClosed { degree },
                other => ModuleError::Graded(other),
            })?;
        let space = sub.space();
        Ok((TModule { space, t }, sub.inclusion()))
    }

    /// The induced module on the quotient by an operator-closed subspace.
    ///
    /// # Errors
    /// Fails when the subspace is not closed under t.
    pub fn quotient(&self, sub: &GradedSubspace) -> Result<(TModule, GradedMap), ModuleError> {
        let q = GradedQuotient::by(sub.clone());
        let t = self
            .t
            .induce_on_quotients(&q, &q)
            .map_err(|e| match e {
                GradedError::NotWellDefined { degree } => ModuleError::NotClosed { degree },
                other => ModuleError::Graded(other),
            })?;
        let space = q.space().clone();
        let projection = q.projection();
        Ok((TModule { space, t }, projection))
    }

    /// Smallest t-closed subspace containing the given homogeneous seeds.
    #[must_use]
    pub fn span_closure(&self, seeds: &[(usize, Gf2Vec)]) -> GradedSubspace {
        closure_under(&self.space, std::slice::from_ref(&self.t), seeds)
    }
}

// ==== Jordan types ====

/// One monogenic block: a generator in `base_degree` surviving `size`
/// degrees (size = k+1 for a generator with t^k x != 0 = t^(k+1) x).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct JordanPart {
    pub base_degree: usize,
    pub size: usize,
}

/// The multiset of Jordan blocks of a nilpotent degree-raising operator,
/// listed by ascending base degree, then descending size.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JordanType {
    parts: Vec<JordanPart>,
}

impl JordanType {
    #[must_use]
    pub fn parts(&self) -> &[JordanPart] {
        &self.parts
    }

    /// Block sizes, largest first.
    #[must_use]
    pub fn sizes_desc(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.parts.iter().map(|p| p.size).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// Base degrees in listed order.
    #[must_use]
    pub fn base_degrees(&self) -> Vec<usize> {
        self.parts.iter().map(|p| p.base_degree).collect()
    }

    #[must_use]
    pub fn block_count(&self) -> usize {
        self.parts.len()
    }

    /// Sum of all block sizes; equals the module's total dimension.
    #[must_use]
    pub fn total(&self) -> usize {
        self.parts.iter().map(|p| p.size).sum()
    }
}

impl fmt::Display for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.sizes_desc().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

// ==== Modules with several commuting operators ====

/// A finite graded module over the cohomology of a subgroup W, presented
/// by one shift-1 operator per canonical dual-basis form of W. The
/// operators must pairwise commute.
#[derive(Clone, Debug)]
pub struct HWModule {
    subgroup: Subgroup,
    space: GradedSpace,
    ops: Vec<GradedMap>,
}

impl HWModule {
    /// # Errors
    /// Requires rank(W) operators, each of shift 1 on `space`, pairwise
    /// commuting (checked as matrix identities per degree).
    pub fn new(
        subgroup: Subgroup,
        space: GradedSpace,
        ops: Vec<GradedMap>,
    ) -> Result<Self, ModuleError> {
        if ops.len() != subgroup.rank() {
            return Err(ModuleError::OpCount {
                got: ops.len(),
                want: subgroup.rank(),
            });
        }
        for op in &ops {
            if op.shift() != 1 {
                return Err(ModuleError::WrongShift(op.shift()));
            }
            if op.source().dims() != space.dims() || op.target().dims() != space.dims() {
                return Err(ModuleError::SpaceMismatch);
            }
        }
        for i in 0..ops.len() {
            for j in i + 1..ops.len() {
                let ij = ops[i].compose(&ops[j]);
                let ji = ops[j].compose(&ops[i]);
                for k in space.degrees() {
                    if ij.block(k) != ji.block(k) {
                        return Err(ModuleError::OpsDontCommute { i, j, degree: k });
                    }
                }
            }
        }
        Ok(HWModule { subgroup, space, ops })
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
    pub fn ops(&self) -> &[GradedMap] {
        &self.ops
    }

    /// Specializes the action along a linear form: the single operator is
    /// the sum of the ops selected by the form's coordinates.
    ///
    /// # Errors
    /// The form must live over this module's subgroup.
    pub fn restrict_to_t(&self, f: &H1Element) -> Result<TModule, ModuleError> {
        if f.subgroup() != &self.subgroup {
            return Err(ModuleError::FormOverWrongSubgroup {
                got: f.subgroup().key(),
                want: self.subgroup.key(),
            });
        }
        let mut t = GradedMap::zero(self.space.clone(), self.space.clone(), 1);
        for (i, op) in self.ops.iter().enumerate() {
            if f.coords().get(i) {
                t = t.add(op);
            }
        }
        Ok(TModule {
            space: self.space.clone(),
            t,
        })
    }

    /// Smallest subspace containing the seeds and closed under every
    /// operator.
    #[must_use]
    pub fn submodule_generated(&self, seeds: &[(usize, Gf2Vec)]) -> GradedSubspace {
        closure_under(&self.space, &self.ops, seeds)
    }

    /// The module structure on an operator-closed subspace.
    ///
    /// # Errors
    /// Fails when the subspace is not closed under some operator.
    pub fn submodule(&self, sub: &GradedSubspace) -> Result<(HWModule, GradedMap), ModuleError> {
        let mut ops = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            ops.push(op.restrict(sub, sub).map_err(|e| match e {
                GradedError::EscapesSubspace { degree } => ModuleError::NotClosed { degree },
                other => ModuleError::Graded(other),
            })?);
        }
        Ok((
            HWModule {
                subgroup: self.subgroup.clone(),
                space: sub.space(),
                ops,
            },
            sub.inclusion(),
        ))
    }

    /// The induced module on the quotient by an operator-closed subspace.
    ///
    /// # Errors
    /// Fails when the subspace is not closed under some operator.
    pub fn quotient(&self, sub: &GradedSubspace) -> Result<(HWModule, GradedMap), ModuleError> {
        let q = GradedQuotient::by(sub.clone());
        let mut ops = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            ops.push(op.induce_on_quotients(&q, &q).map_err(|e| match e {
                GradedError::NotWellDefined { degree } => ModuleError::NotClosed { degree },
                other => ModuleError::Graded(other),
            })?);
        }
        Ok((
            HWModule {
                subgroup: self.subgroup.clone(),
                space: q.space().clone(),
                ops,
            },
            q.projection(),
        ))
    }
}

/// Level-wise closure of a seed set under a family of shift-1 operators.
fn closure_under(
    space: &GradedSpace,
    ops: &[GradedMap],
    seeds: &[(usize, Gf2Vec)],
) -> GradedSubspace {
    let mut sub = GradedSubspace::from_vectors(space.clone(), seeds);
    loop {
        let mut extra: Vec<(usize, Gf2Vec)> = Vec::new();
        for (k, v) in sub.basis_vectors() {
            for op in ops {
                let w = op.apply_at(k, &v);
                if !sub.contains(k + 1, &w) {
                    extra.push((k + 1, w));
                }
            }
        }
        if extra.is_empty() {
            return sub;
        }
        let mut all = sub.basis_vectors();
        all.extend(extra);
        sub = GradedSubspace::from_vectors(space.clone(), &all);
    }
}

// ==== Short exact sequences and the six-term Tor sequence ====

/// A short exact sequence of t-modules 0 → A → B → C → 0: both maps are
/// shift 0, commute with the actions, and splice exactly degree by
/// degree.
#[derive(Clone, Debug)]
pub struct ShortExactSeq {
    pub a: TModule,
    pub b: TModule,
    pub c: TModule,
    pub inj: GradedMap,
    pub surj: GradedMap,
}

impl ShortExactSeq {
    /// A → B → C with B the ambient module, A an action-closed subspace
    /// and C the quotient.
    ///
    /// # Errors
    /// Fails when the subspace is not t-closed.
    pub fn from_submodule(b: &TModule, sub: &GradedSubspace) -> Result<Self, ModuleError> {
        let (a, inj) = b.submodule(sub)?;
        let (c, surj) = b.quotient(sub)?;
        Ok(ShortExactSeq {
            a,
            b: b.clone(),
            c,
            inj,
            surj,
        })
    }

    /// Checks every structural requirement, returning the first violated
    /// one.
    ///
    /// # Errors
    /// Each variant of [`SesViolation`] names the failed condition.
    pub fn validate(&self) -> Result<(), SesViolation> {
        for (which, map, src, dst) in [
            ("injection", &self.inj, &self.a, &self.b),
            ("surjection", &self.surj, &self.b, &self.c),
        ] {
            if map.shift() != 0 {
                return Err(SesViolation::MapShift {
                    which,
                    got: map.shift(),
                });
            }
            if map.source().dims() != src.space.dims() || map.target().dims() != dst.space.dims() {
                return Err(SesViolation::MapEndpoints { which });
            }
            let left = map.compose(&src.t);
            let right = dst.t.compose(map);
            for k in src.space.degrees() {
                if left.block(k) != right.block(k) {
                    return Err(SesViolation::NotEquivariant { which, degree: k });
                }
            }
        }
        for k in self.a.space.degrees() {
            if self.inj.block(k).rank() != self.a.space.dim(k) {
                return Err(SesViolation::NotInjective { degree: k });
            }
        }
        for k in self.c.space.degrees() {
            if self.surj.block(k).rank() != self.c.space.dim(k) {
                return Err(SesViolation::NotSurjective { degree: k });
            }
        }
        let image = self.inj.image();
        let kernel = self.surj.kernel();
        for k in self.b.space.degrees() {
            if image.part(k) != kernel.part(k) {
                return Err(SesViolation::ImageKernelMismatch { degree: k });
            }
        }
        Ok(())
    }
}

/// Where in the six-term sequence an exactness failure sits.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TorSpot {
    TauA,
    TauB,
    TauC,
    BarA,
    BarB,
    BarC,
}

impl fmt::Display for TorSpot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            TorSpot::TauA => "tau(A)",
            TorSpot::TauB => "tau(B)",
            TorSpot::TauC => "tau(C)",
            TorSpot::BarA => "bar(A)",
            TorSpot::BarB => "bar(B)",
            TorSpot::BarC => "bar(C)",
        };
        write!(f, "{name}")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TorFailure {
    pub spot: TorSpot,
    pub degree: usize,
}

/// The six-term sequence 0 → τA → τB → τC → Ā → B̄ → C̄ → 0 induced by a
/// short exact sequence, with all five maps materialized.
#[derive(Clone, Debug)]
pub struct TorSequence {
    pub tau_a: GradedSubspace,
    pub tau_b: GradedSubspace,
    pub tau_c: GradedSubspace,
    pub bar_a: GradedQuotient,
    pub bar_b: GradedQuotient,
    pub bar_c: GradedQuotient,
    /// τA → τB, restriction of the injection.
    pub m1: GradedMap,
    /// τB → τC, restriction of the surjection.
    pub m2: GradedMap,
    /// τC → Ā, the connecting map of shift 1.
    pub delta: GradedMap,
    /// Ā → B̄, induced by the injection.
    pub m3: GradedMap,
    /// B̄ → C̄, induced by the surjection.
    pub m4: GradedMap,
}

impl TorSequence {
    /// Every spot and degree where the sequence fails to be exact. Empty
    /// for every valid input; non-empty output indicates corrupted data
    /// upstream.
    #[must_use]
    pub fn exactness_failures(&self) -> Vec<TorFailure> {
        let mut out = Vec::new();
        // Injectivity at tau(A).
        for k in self.m1.source().degrees() {
            if self.m1.block(k).rank() != self.m1.source().dim(k) {
                out.push(TorFailure {
                    spot: TorSpot::TauA,
                    degree: k,
                });
            }
        }
        for (spot, f, g) in [
            (TorSpot::TauB, &self.m1, &self.m2),
            (TorSpot::TauC, &self.m2, &self.delta),
            (TorSpot::BarA, &self.delta, &self.m3),
            (TorSpot::BarB, &self.m3, &self.m4),
        ] {
            let image = f.image();
            let kernel = g.kernel();
            for k in g.source().degrees() {
                if image.part(k) != kernel.part(k) {
                    out.push(TorFailure { spot, degree: k });
                }
            }
        }
        // Surjectivity at bar(C).
        for k in self.m4.source().degrees() {
            let k_out = k; // shift 0
            let have = self.m4.image().part_dim(k_out);
            if have != self.m4.target().dim(k_out) {
                out.push(TorFailure {
                    spot: TorSpot::BarC,
                    degree: k_out,
                });
            }
        }
        out.sort_by_key(|f| (f.degree, f.spot as usize));
        out
    }
}

/// Builds the six-term sequence for a validated short exact sequence.
///
/// # Errors
/// Rejects inputs violating the [`ShortExactSeq`] contract, naming the
/// violated condition; also rejects data on which the connecting map
/// fails to be well defined.
pub fn tor_les(s: &ShortExactSeq) -> Result<TorSequence, ModuleError> {
    s.validate()?;
    let tau_a = s.a.tau();
    let tau_b = s.b.tau();
    let tau_c = s.c.tau();
    let bar_a = s.a.bar();
    let bar_b = s.b.bar();
    let bar_c = s.c.bar();

    let m1 = s.inj.restrict(&tau_a, &tau_b)?;
    let m2 = s.surj.restrict(&tau_b, &tau_c)?;
    let m3 = s.inj.induce_on_quotients(&bar_a, &bar_b)?;
    let m4 = s.surj.induce_on_quotients(&bar_b, &bar_c)?;

    // Connecting map: delta(c) = class in bar(A) of the unique a with
    // inj(a) = t * b, for any lift b of c along the surjection. The class
    // is independent of the lift exactly when kernel vectors of the
    // surjection land in t*A; checked below rather than assumed.
    for (k, z) in s.surj.kernel().basis_vectors() {
        let tz = s.b.t().apply_at(k, &z);
        let a = s
            .inj
            .block(k + 1)
            .solve(&tz)
            .ok_or(SesViolation::DeltaIllDefined { degree: k })?;
        if !bar_a.project_at(k + 1, &a).is_zero() {
            return Err(SesViolation::DeltaIllDefined { degree: k }.into());
        }
    }
    let mut delta = GradedMap::zero(tau_c.space(), bar_a.space().clone(), 1);
    for (k, dim) in tau_c.space().dims().clone() {
        let part = tau_c.part(k);
        let mut cols = Vec::with_capacity(dim);
        for c in part.basis() {
            let b = s
                .surj
                .block(k)
                .solve(c)
                .ok_or(SesViolation::NotSurjective { degree: k })?;
            let tb = s.b.t().apply_at(k, &b);
            let a = s
                .inj
                .block(k + 1)
                .solve(&tb)
                .ok_or(SesViolation::DeltaIllDefined { degree: k })?;
            cols.push(bar_a.project_at(k + 1, &a));
        }
        delta.set_block(k, Gf2Matrix::from_cols(&cols, bar_a.space().dim(k + 1)));
    }

    Ok(TorSequence {
        tau_a,
        tau_b,
        tau_c,
        bar_a,
        bar_b,
        bar_c,
        m1,
        m2,
        delta,
        m3,
        m4,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_polynomial_invariants() {
        for k in 0..5 {
            let m = TModule::truncated_polynomial(0, k);
            assert_eq!(m.space().total_dim(), k + 1);
            assert_eq!(m.bar().space().dims(), GradedSpace::from_dims(&[(0, 1)]).dims());
            assert_eq!(m.tau().space().dims(), GradedSpace::from_dims(&[(k, 1)]).dims());
            let jt = m.jordan_type();
            assert_eq!(jt.sizes_desc(), vec![k + 1]);
            assert_eq!(jt.base_degrees(), vec![0]);
            assert!(m.bar_tau_dims_agree());
        }
    }

    #[test]
    fn zero_action_gives_singleton_blocks() {
        let space = GradedSpace::from_dims(&[(0, 2), (3, 1)]);
        let m = TModule::with_zero_action(space.clone());
        assert_eq!(m.bar().space().dims(), space.dims());
        assert_eq!(m.tau().space().dims(), space.dims());
        let jt = m.jordan_type();
        assert_eq!(jt.sizes_desc(), vec![1, 1, 1]);
        assert_eq!(jt.base_degrees(), vec![0, 0, 3]);
    }

    #[test]
    fn jordan_type_of_mixed_blocks() {
        // One block of size 3 based in degree 0, one of size 1 in degree 1.
        let space = GradedSpace::from_dims(&[(0, 1), (1, 2), (2, 1)]);
        let mut t = GradedMap::zero(space.clone(), space.clone(), 1);
        t.set_block(0, Gf2Matrix::from_bits(&[vec![1], vec![0]]));
        t.set_block(1, Gf2Matrix::from_bits(&[vec![1, 0]]));
        let m = TModule::new(space, t).unwrap();
        let jt = m.jordan_type();
        assert_eq!(
            jt.parts(),
            &[
                JordanPart { base_degree: 0, size: 3 },
                JordanPart { base_degree: 1, size: 1 }
            ]
        );
        assert_eq!(jt.to_string(), "{3,1}");
        assert_eq!(m.bar().space().total_dim(), m.tau().total_dim());
    }

    #[test]
    fn rank_of_powers_is_monotone_to_zero() {
        let m = TModule::truncated_polynomial(1, 3);
        let ranks: Vec<usize> = (0..6).map(|j| m.t_power(j).rank()).collect();
        assert_eq!(ranks, vec![4, 3, 2, 1, 0, 0]);
    }

    #[test]
    fn restrict_to_t_combines_ops() {
        let w = Subgroup::full(2);
        let space = GradedSpace::from_dims(&[(0, 1), (1, 1)]);
        let mut op1 = GradedMap::zero(space.clone(), space.clone(), 1);
        op1.set_block(0, Gf2Matrix::identity(1));
        let op2 = GradedMap::zero(space.clone(), space.clone(), 1);
        let m = HWModule::new(w.clone(), space, vec![op1.clone(), op2]).unwrap();

        let f = H1Element::new(w.clone(), Gf2Vec::from_bits(&[1, 1])).unwrap();
        let t = m.restrict_to_t(&f).unwrap();
        assert_eq!(t.t().block(0), op1.block(0));

        let zero_form = H1Element::zero(w);
        assert!(m.restrict_to_t(&zero_form).unwrap().t().is_zero());

        let other = H1Element::zero(Subgroup::full(1));
        assert!(matches!(
            m.restrict_to_t(&other),
            Err(ModuleError::FormOverWrongSubgroup { .. })
        ));
    }

    #[test]
    fn noncommuting_ops_are_rejected() {
        let w = Subgroup::full(2);
        let space = GradedSpace::from_dims(&[(0, 2), (1, 2), (2, 2)]);
        let mut op1 = GradedMap::zero(space.clone(), space.clone(), 1);
        op1.set_block(0, Gf2Matrix::from_bits(&[vec![0, 1], vec![0, 0]]));
        op1.set_block(1, Gf2Matrix::from_bits(&[vec![0, 1], vec![0, 0]]));
        let mut op2 = GradedMap::zero(space.clone(), space.clone(), 1);
        op2.set_block(0, Gf2Matrix::from_bits(&[vec![0, 0], vec![1, 0]]));
        op2.set_block(1, Gf2Matrix::from_bits(&[vec![0, 0], vec![1, 0]]));
        let err = HWModule::new(w, space, vec![op1, op2]).unwrap_err();
        assert!(matches!(err, ModuleError::OpsDontCommute { i: 0, j: 1, degree: 0 }));
    }

    #[test]
    fn generated_submodule_walks_up_degrees() {
        let m = TModule::truncated_polynomial(0, 4);
        let seed = vec![(1usize, Gf2Vec::from_bits(&[1]))];
        let sub = m.span_closure(&seed);
        assert_eq!(
            sub.space().dims(),
            GradedSpace::from_dims(&[(1, 1), (2, 1), (3, 1), (4, 1)]).dims()
        );
        // Empty seed set generates nothing.
        assert_eq!(m.span_closure(&[]).total_dim(), 0);
    }

    #[test]
    fn ses_validation_catches_each_violation() {
        let b = TModule::truncated_polynomial(0, 1);
        let sub = b.span_closure(&[(1, Gf2Vec::from_bits(&[1]))]);
        let ses = ShortExactSeq::from_submodule(&b, &sub).unwrap();
        assert!(ses.validate().is_ok());

        // Breaking equivariance of the injection: map the degree-0
        // generator of a zero-action module onto one that t moves.
        let mut bad = ses.clone();
        bad.a = TModule::with_zero_action(GradedSpace::from_dims(&[(0, 1)]));
        bad.inj = {
            let mut m = GradedMap::zero(bad.a.space().clone(), b.space().clone(), 0);
            m.set_block(0, Gf2Matrix::identity(1));
            m
        };
        assert_eq!(
            bad.validate(),
            Err(SesViolation::NotEquivariant {
                which: "injection",
                degree: 0
            })
        );

        // Zero map is not injective.
        let mut bad2 = ses.clone();
        bad2.inj = GradedMap::zero(bad2.a.space().clone(), b.space().clone(), 0);
        assert_eq!(bad2.validate(), Err(SesViolation::NotInjective { degree: 1 }));
    }

    #[test]
    fn tor_les_on_t_times_b() {
        // B = truncated polynomial of dimension 2, A = t*B, C = B/A.
        let b = TModule::truncated_polynomial(0, 1);
        let sub = b.t().image();
        let ses = ShortExactSeq::from_submodule(&b, &sub).unwrap();
        let tor = tor_les(&ses).unwrap();
        assert!(tor.exactness_failures().is_empty());

        for (space, dims) in [
            (tor.tau_a.space(), vec![(1, 1)]),
            (tor.tau_b.space(), vec![(1, 1)]),
            (tor.tau_c.space(), vec![(0, 1)]),
            (tor.bar_a.space().clone(), vec![(1, 1)]),
            (tor.bar_b.space().clone(), vec![(0, 1)]),
            (tor.bar_c.space().clone(), vec![(0, 1)]),
        ] {
            assert_eq!(space.dims(), GradedSpace::from_dims(&dims).dims());
        }
        // delta is the isomorphism from tau(C) in degree 0 to bar(A) in
        // degree 1; the induced map on bars out of A is zero.
        assert_eq!(tor.delta.block(0), Gf2Matrix::identity(1));
        assert!(tor.m3.is_zero());
        assert!(tor.m2.is_zero());
    }

    #[test]
    fn tor_les_on_split_sequence_has_zero_delta() {
        // B = A + C with A spanned by degree 0..1 line, C a singleton in
        // degree 5; the sum is direct and t-closed.
        let space = GradedSpace::from_dims(&[(0, 1), (1, 1), (5, 1)]);
        let mut t = GradedMap::zero(space.clone(), space.clone(), 1);
        t.set_block(0, Gf2Matrix::identity(1));
        let b = TModule::new(space, t).unwrap();
        let sub = b.span_closure(&[(0, Gf2Vec::from_bits(&[1]))]);
        let ses = ShortExactSeq::from_submodule(&b, &sub).unwrap();
        let tor = tor_les(&ses).unwrap();
        assert!(tor.exactness_failures().is_empty());
        assert!(tor.delta.is_zero());
    }

    #[test]
    fn quotient_by_unclosed_subspace_is_rejected() {
        let b = TModule::truncated_polynomial(0, 2);
        let sub = GradedSubspace::from_vectors(
            b.space().clone(),
            &[(0, Gf2Vec::from_bits(&[1]))],
        );
        assert_eq!(
            b.quotient(&sub).unwrap_err(),
            ModuleError::NotClosed { degree: 0 }
        );
        assert_eq!(
            b.submodule(&sub).unwrap_err(),
            ModuleError::NotClosed { degree: 0 }
        );
    }
}
