//! The functor-level verifier: one graded algebra per subgroup of
//! (Z/2Z)^d, restriction and transfer maps on every covering pair, and
//! the full battery of axiom checks.
//!
//! Construction enforces structural completeness (every subgroup and
//! every covering pair present, all shapes consistent) as hard errors.
//! Everything semantic (algebra laws, linearity of the edge maps, the
//! three-step exactness along each pair, path-independence of iterated
//! restrictions) is reported as findings. After all axioms pass, proved
//! consequences are asserted as alarms: a firing alarm means the checker
//! or its input is corrupt, never a legitimate counterexample.

use std::collections::BTreeMap;

use crate::algebra::GradedAlgebra;
use crate::gf2::Gf2Vec;
use crate::graded::{GradedMap, GradedQuotient, GradedSubspace};
use crate::lattice::{CoveringPair, H1Element, LatticeError, Subgroup, SubgroupLattice};
use crate::modules::HWModule;
use crate::report::{
    EdgeInvariants, Finding, InvariantsTable, Report, SubgroupInvariants,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FunctorError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("incomplete lattice data: no algebra for subgroup {0}")]
    MissingAlgebra(String),
    #[error("incomplete lattice data: no edge for covering pair {0}")]
    MissingEdge(String),
    #[error("subgroup {0} does not belong to the rank-{1} lattice")]
    UnknownSubgroup(String, usize),
    #[error("duplicate algebra for subgroup {0}")]
    DuplicateAlgebra(String),
    #[error("edge {0} is not a covering pair of the lattice")]
    UnknownPair(String),
    #[error("duplicate edge for pair {0}")]
    DuplicatePair(String),
    #[error("edge {pair}: {which} map has shift {got}, expected 0")]
    EdgeShift {
        pair: String,
        which: &'static str,
        got: usize,
    },
    #[error("edge {pair}: {which} map endpoints disagree with the algebras")]
    EdgeShape { pair: String, which: &'static str },
}

/// The maps attached to one covering pair: restriction downward and
/// transfer upward, both degree-preserving.
#[derive(Clone, Debug)]
pub struct GysinEdge {
    pub sub_key: String,
    pub sup_key: String,
    /// K at the larger subgroup mapped to K at the smaller one.
    pub rho: GradedMap,
    /// K at the smaller subgroup mapped to K at the larger one.
    pub psi: GradedMap,
}

/// Tuning knobs for [`GysinFunctor::verify`].
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Only require the restriction maps to be module-linear, dropping
    /// the unital-algebra-map requirement.
    pub relax_rho: bool,
    /// Worker threads for per-subgroup and per-edge checks. Output is
    /// identical for any value.
    pub threads: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            relax_rho: false,
            threads: 1,
        }
    }
}

/// Did a theorem-level check trigger, pass, or not apply?
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Trigger {
    Triggered,
    NotTriggered,
    NotApplicable,
}

impl std::fmt::Display for Trigger {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Trigger::Triggered => "triggered",
            Trigger::NotTriggered => "not triggered",
            Trigger::NotApplicable => "not applicable",
        };
        write!(f, "{s}")
    }
}

/// Outcome of one extension-obstruction detector.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
pub struct ObstructionOutcome {
    pub name: String,
    pub trigger: Trigger,
    pub detail: String,
}

/// Outcome of the lower-bound check on the rank-0 term.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
pub struct ConjectureOutcome {
    pub rank: usize,
    pub dim_k0: usize,
    pub bound: usize,
    pub holds: bool,
    /// True when the connectivity hypothesis for the proved low-rank
    /// cases is satisfied (rank 1: always; 2: connected; 3: bi-connected).
    pub hypothesis_met: bool,
    /// Set exactly when a violation contradicts a proved case.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub label: Option<String>,
}

/// The derived three-term sequence of one covering pair:
/// 0 → coker(t on K_W) → K_U → ker(t on K_W) → 0.
#[derive(Clone, Debug)]
pub struct BarSequence {
    /// coker of the t-action on the upper algebra, with projection.
    pub bar: GradedQuotient,
    /// ker of the t-action on the upper algebra, with inclusion.
    pub tau: GradedSubspace,
    /// bar → K_U, induced by the restriction.
    pub inj: GradedMap,
    /// K_U → tau, the corestricted transfer.
    pub surj: GradedMap,
}

/// A complete functor instance: algebras on all subgroups, edges on all
/// covering pairs.
#[derive(Clone, Debug)]
pub struct GysinFunctor {
    rank: usize,
    lattice: SubgroupLattice,
    algebras: BTreeMap<String, GradedAlgebra>,
    edges: BTreeMap<String, GysinEdge>,
}

impl GysinFunctor {
    /// Assembles and structurally validates a functor.
    ///
    /// # Errors
    /// Missing or duplicated subgroups/pairs, unknown keys, and edge maps
    /// of the wrong shape or shift are hard errors; semantic defects are
    /// left to [`GysinFunctor::verify`].
    pub fn new(
        rank: usize,
        algebras: Vec<GradedAlgebra>,
        edges: Vec<GysinEdge>,
    ) -> Result<Self, FunctorError> {
        let lattice = SubgroupLattice::new(rank)?;
        let mut alg_map = BTreeMap::new();
        for a in algebras {
            let key = a.subgroup().key();
            if lattice.get(&key).is_none() {
                return Err(FunctorError::UnknownSubgroup(key, rank));
            }
            if alg_map.insert(key.clone(), a).is_some() {
                return Err(FunctorError::DuplicateAlgebra(key));
            }
        }
        for s in lattice.subgroups() {
            if !alg_map.contains_key(&s.key()) {
                return Err(FunctorError::MissingAlgebra(s.key()));
            }
        }
        let mut edge_map = BTreeMap::new();
        for e in edges {
            let sub = lattice
                .get(&e.sub_key)
                .ok_or_else(|| FunctorError::UnknownSubgroup(e.sub_key.clone(), rank))?;
            let sup = lattice
                .get(&e.sup_key)
                .ok_or_else(|| FunctorError::UnknownSubgroup(e.sup_key.clone(), rank))?;
            let pair = lattice
                .pair(sub, sup)
                .ok_or_else(|| FunctorError::UnknownPair(format!("{} < {}", e.sub_key, e.sup_key)))?;
            let key = pair.key();
            let a_sup = &alg_map[&e.sup_key];
            let a_sub = &alg_map[&e.sub_key];
            for (which, map, src, dst) in [
                ("rho", &e.rho, a_sup.space(), a_sub.space()),
                ("psi", &e.psi, a_sub.space(), a_sup.space()),
            ] {
                if map.shift() != 0 {
                    return Err(FunctorError::EdgeShift {
                        pair: key.clone(),
                        which,
                        got: map.shift(),
                    });
                }
                if map.source().dims() != src.dims() || map.target().dims() != dst.dims() {
                    return Err(FunctorError::EdgeShape {
                        pair: key.clone(),
                        which,
                    });
                }
            }
            if edge_map.insert(key.clone(), e).is_some() {
                return Err(FunctorError::DuplicatePair(key));
            }
        }
        for p in lattice.pairs() {
            if !edge_map.contains_key(&p.key()) {
                return Err(FunctorError::MissingEdge(p.key()));
            }
        }
        Ok(GysinFunctor {
            rank,
            lattice,
            algebras: alg_map,
            edges: edge_map,
        })
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.rank
    }

    #[must_use]
    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    /// # Panics
    /// Panics for keys outside the lattice (construction guarantees every
    /// lattice subgroup is present).
    #[must_use]
    pub fn algebra(&self, subgroup: &Subgroup) -> &GradedAlgebra {
        &self.algebras[&subgroup.key()]
    }

    #[must_use]
    pub fn algebra_at(&self, key: &str) -> Option<&GradedAlgebra> {
        self.algebras.get(key)
    }

    #[must_use]
    pub fn edge(&self, pair: &CoveringPair) -> &GysinEdge {
        &self.edges[&pair.key()]
    }

    /// The algebra at the zero subgroup (the functor's rank-0 term).
    #[must_use]
    pub fn k_zero(&self) -> &GradedAlgebra {
        self.algebra(self.lattice.zero_subgroup())
    }

    /// The algebra at the full subgroup.
    #[must_use]
    pub fn k_top(&self) -> &GradedAlgebra {
        self.algebra(self.lattice.full_subgroup())
    }

    /// Runs every semantic check and aggregates the findings.
    #[must_use]
    pub fn verify(&self, opts: &VerifyOptions) -> Report {
        let mut report = Report::new();
        let subs = self.lattice.subgroups();

        let alg_results: Vec<(Report, Option<HWModule>)> =
            run_tasks(subs.len(), opts.threads, |i| {
                let a = &self.algebras[&subs[i].key()];
                (a.verify(), a.module_of().ok())
            });
        let mut modules: BTreeMap<String, HWModule> = BTreeMap::new();
        for (s, (r, m)) in subs.iter().zip(alg_results) {
            report.extend(r);
            match m {
                Some(m) => {
                    modules.insert(s.key(), m);
                }
                None => report.push(Finding::error(
                    "module-structure",
                    &s.key(),
                    None,
                    "coefficient module could not be built from the generator images".into(),
                )),
            }
        }

        let pairs = self.lattice.pairs();
        let edge_reports: Vec<Report> = run_tasks(pairs.len(), opts.threads, |i| {
            let pair = &pairs[i];
            let edge = &self.edges[&pair.key()];
            match (modules.get(&pair.sup.key()), modules.get(&pair.sub.key())) {
                (Some(wm), Some(um)) => self.verify_edge(pair, edge, wm, um, opts),
                _ => Report::new(),
            }
        });
        for r in edge_reports {
            report.extend(r);
        }

        report.extend(self.path_independence_report());

        if report.passed() {
            report.extend(self.consequence_alarms(&modules));
        }
        report.sorted()
    }

    /// All checks attached to one covering pair.
    fn verify_edge(
        &self,
        pair: &CoveringPair,
        edge: &GysinEdge,
        w_mod: &HWModule,
        u_mod: &HWModule,
        opts: &VerifyOptions,
    ) -> Report {
        let mut report = Report::new();
        let here = pair.key();
        let aw = &self.algebras[&pair.sup.key()];
        let au = &self.algebras[&pair.sub.key()];
        let n_w = aw.space().total_dim();
        let rho_flat = edge.rho.to_flat();

        if !opts.relax_rho {
            let rho_unit = rho_flat.mul_vec(&aw.unit_vector());
            if rho_unit != au.unit_vector() {
                report.push(Finding::error(
                    "rho-unital",
                    &here,
                    Some(0),
                    "restriction does not send the unit to the unit".into(),
                ));
            }
            let rho_cols: Vec<Gf2Vec> = (0..n_w)
                .map(|i| rho_flat.mul_vec(&Gf2Vec::unit(n_w, i)))
                .collect();
            for i in 0..n_w {
                let (di, _) = aw.space().degree_of_flat(i);
                for j in 0..n_w {
                    let (dj, _) = aw.space().degree_of_flat(j);
                    let lhs = rho_flat.mul_vec(aw.structure_constant(i, j));
                    let rhs = au.multiply(&rho_cols[i], &rho_cols[j]);
                    if lhs != rhs {
                        report.push(Finding::error(
                            "rho-multiplicative",
                            &here,
                            Some(di + dj),
                            format!(
                                "rho({a}*{b}) differs from rho({a})*rho({b})",
                                a = aw.label(i),
                                b = aw.label(j)
                            ),
                        ));
                    }
                }
            }
        }

        // Linearity over the coefficient action: for every degree-1
        // generator of the larger subgroup, restriction and transfer must
        // interchange its action with the restricted action below.
        for g in 0..pair.sup.rank() {
            let form = H1Element::new(
                pair.sup.clone(),
                Gf2Vec::unit(pair.sup.rank(), g),
            )
            .expect("dual basis form");
            let restricted = form
                .restrict_to(&pair.sub)
                .expect("sub is inside sup");
            let mut op_u = GradedMap::zero(au.space().clone(), au.space().clone(), 1);
            for idx in restricted.coords().ones() {
                op_u = op_u.add(&u_mod.ops()[idx]);
            }
            let w_op = &w_mod.ops()[g];

            let left = edge.rho.compose(w_op);
            let right = op_u.compose(&edge.rho);
            for k in aw.space().degrees() {
                if left.block(k) != right.block(k) {
                    report.push(Finding::error(
                        "rho-linear",
                        &here,
                        Some(k),
                        format!("restriction is not linear over generator {g} of the larger subgroup"),
                    ));
                }
            }

            let left_p = edge.psi.compose(&op_u);
            let right_p = w_op.compose(&edge.psi);
            for k in au.space().degrees() {
                if left_p.block(k) != right_p.block(k) {
                    report.push(Finding::error(
                        "psi-linear",
                        &here,
                        Some(k),
                        format!("transfer is not linear over generator {g} of the larger subgroup"),
                    ));
                }
            }
        }

        // Three-step exactness: t -> rho -> psi -> t.
        let t_mod = w_mod
            .restrict_to_t(&pair.quotient_functional)
            .expect("functional lives over the pair's larger subgroup");
        let t = t_mod.t();
        let spots: [(&str, GradedSubspace, GradedSubspace, &crate::graded::GradedSpace); 3] = [
            ("exactness-t-rho", t.image(), edge.rho.kernel(), aw.space()),
            ("exactness-rho-psi", edge.rho.image(), edge.psi.kernel(), au.space()),
            ("exactness-psi-t", edge.psi.image(), t.kernel(), aw.space()),
        ];
        for (check, image, kernel, ambient) in spots {
            for k in ambient.degrees() {
                if image.part(k) != kernel.part(k) {
                    report.push(Finding::error(
                        check,
                        &here,
                        Some(k),
                        format!(
                            "image ({}-dim) and kernel ({}-dim) disagree",
                            image.part_dim(k),
                            kernel.part_dim(k)
                        ),
                    ));
                }
            }
        }
        report
    }

    /// The canonical composite restriction K_W → K_U for any inclusion
    /// U ⊆ W, going through the first covering chain in lattice order.
    #[must_use]
    pub fn restriction(&self, u: &Subgroup, w: &Subgroup) -> Option<GradedMap> {
        if !w.contains(u) {
            return None;
        }
        if u == w {
            return Some(GradedMap::identity(self.algebras[&u.key()].space()));
        }
        let step = self
            .lattice
            .covered_by(w)
            .find(|p| p.sub.contains(u))
            .expect("a cover of w containing u exists");
        let first = &self.edges[&step.key()].rho;
        if &step.sub == u {
            return Some(first.clone());
        }
        let rest = self.restriction(u, &step.sub)?;
        Some(rest.compose(first))
    }

    /// Checks that all covering factorizations of every iterated
    /// restriction agree.
    fn path_independence_report(&self) -> Report {
        let mut report = Report::new();
        let subs = self.lattice.subgroups();
        let mut memo: BTreeMap<(String, String), GradedMap> = BTreeMap::new();
        for diff in 1..=self.rank {
            for w in subs {
                for u in subs {
                    if u.rank() + diff != w.rank() || !w.contains(u) {
                        continue;
                    }
                    if diff == 1 {
                        let pair = self.lattice.pair(u, w).expect("covering pair");
                        memo.insert((u.key(), w.key()), self.edges[&pair.key()].rho.clone());
                        continue;
                    }
                    let mut candidates: Vec<(String, GradedMap)> = Vec::new();
                    for step in self.lattice.covered_by(w) {
                        if !step.sub.contains(u) {
                            continue;
                        }
                        let first = &self.edges[&step.key()].rho;
                        let rest = &memo[&(u.key(), step.sub.key())];
                        candidates.push((step.sub.key(), rest.compose(first)));
                    }
                    let (z0, c0) = candidates.first().expect("an intermediate exists").clone();
                    for (zk, ck) in &candidates[1..] {
                        for k in self.algebras[&w.key()].space().degrees() {
                            if c0.block(k) != ck.block(k) {
                                report.push(Finding::error(
                                    "path-independence",
                                    &format!("{} < {}", u.key(), w.key()),
                                    Some(k),
                                    format!(
                                        "restriction through {z0} and through {zk} disagree"
                                    ),
                                ));
                            }
                        }
                    }
                    memo.insert((u.key(), w.key()), c0);
                }
            }
        }
        report
    }

    /// Proved consequences asserted after a clean verification; a firing
    /// alarm indicates a corrupted checker or input, not a counterexample.
    fn consequence_alarms(&self, modules: &BTreeMap<String, HWModule>) -> Report {
        let mut report = Report::new();
        for pair in self.lattice.pairs() {
            let wm = &modules[&pair.sup.key()];
            let t_mod = wm
                .restrict_to_t(&pair.quotient_functional)
                .expect("functional over sup");
            let bar = t_mod.bar();
            let tau = t_mod.tau();
            let u_space = self.algebras[&pair.sub.key()].space();
            let mut degrees: Vec<usize> = u_space.degrees().collect();
            degrees.extend(bar.space().degrees());
            degrees.extend(tau.space().degrees());
            degrees.sort_unstable();
            degrees.dedup();
            for k in degrees {
                let want = bar.space().dim(k) + tau.part_dim(k);
                if u_space.dim(k) != want {
                    report.push(Finding::alarm(
                        "dims-identity",
                        &pair.key(),
                        Some(k),
                        format!(
                            "dim K_U = {} but coker(t) + ker(t) = {} + {}",
                            u_space.dim(k),
                            bar.space().dim(k),
                            tau.part_dim(k)
                        ),
                    ));
                }
            }
        }
        if self.rank >= 1 {
            let d0 = self.k_zero().space().total_dim();
            if !d0.is_multiple_of(2) {
                report.push(Finding::alarm(
                    "even-dimension",
                    &self.lattice.zero_subgroup().key(),
                    None,
                    format!("counterexample to Prop. 2.3.3: d(K_0) = {d0} is odd"),
                ));
            }
        }
        report.extend(self.biconnectivity_alarms());
        report
    }

    /// If the rank-0 term is bi-connected, every term must be, with the
    /// same norm.
    fn biconnectivity_alarms(&self) -> Report {
        let mut report = Report::new();
        let k0 = self.k_zero().space();
        if !k0.is_biconnected() {
            return report;
        }
        let norm0 = k0.norm().expect("bi-connected spaces are nonzero");
        for s in self.lattice.subgroups() {
            let sp = self.algebras[&s.key()].space();
            let ok = sp.is_biconnected() && sp.norm() == Ok(norm0);
            if !ok {
                report.push(Finding::alarm(
                    "biconnected-norms",
                    &s.key(),
                    None,
                    format!(
                        "counterexample to Lemma 2.3.2: expected a bi-connected algebra of norm {norm0}, found dims {}",
                        sp
                    ),
                ));
            }
        }
        report
    }

    /// The induced short sequence 0 → coker t → K_U → ker t → 0 of a
    /// covering pair.
    ///
    /// # Errors
    /// Returns the findings when the restriction fails to kill t times
    /// the upper algebra, the transfer image escapes ker t, or the
    /// resulting sequence is not exact.
    pub fn derive_bar_sequence(&self, pair: &CoveringPair) -> Result<BarSequence, Report> {
        let mut report = Report::new();
        let here = pair.key();
        let aw = &self.algebras[&pair.sup.key()];
        let au = &self.algebras[&pair.sub.key()];
        let edge = &self.edges[&pair.key()];
        let Ok(wm) = aw.module_of() else {
            report.push(Finding::error(
                "module-structure",
                &pair.sup.key(),
                None,
                "coefficient module could not be built from the generator images".into(),
            ));
            return Err(report.sorted());
        };
        let t_mod = wm
            .restrict_to_t(&pair.quotient_functional)
            .expect("functional over sup");
        let t = t_mod.t();
        let bar = t_mod.bar();
        let tau = t_mod.tau();

        let rho_t = edge.rho.compose(t);
        for k in aw.space().degrees() {
            if !rho_t.block(k).is_zero() {
                report.push(Finding::error(
                    "bar-rho-factors",
                    &here,
                    Some(k + 1),
                    "restriction fails to kill t times the upper algebra".into(),
                ));
            }
        }
        let t_psi = t.compose(&edge.psi);
        for k in au.space().degrees() {
            if !t_psi.block(k).is_zero() {
                report.push(Finding::error(
                    "bar-psi-corestricts",
                    &here,
                    Some(k),
                    "transfer image escapes the kernel of t".into(),
                ));
            }
        }
        if !report.passed() {
            return Err(report.sorted());
        }

        let inj = edge.rho.compose(&bar.section());
        let surj = edge
            .psi
            .restrict(&GradedSubspace::full(au.space().clone()), &tau)
            .expect("transfer image inside ker t just checked");

        for k in bar.space().degrees() {
            if inj.block(k).rank() != bar.space().dim(k) {
                report.push(Finding::error(
                    "bar-exactness-inj",
                    &here,
                    Some(k),
                    "induced map from coker t into K_U is not injective".into(),
                ));
            }
        }
        for k in tau.space().degrees() {
            if surj.block(k).rank() != tau.part_dim(k) {
                report.push(Finding::error(
                    "bar-exactness-surj",
                    &here,
                    Some(k),
                    "corestricted transfer onto ker t is not surjective".into(),
                ));
            }
        }
        let image = inj.image();
        let kernel = surj.kernel();
        for k in au.space().degrees() {
            if image.part(k) != kernel.part(k) {
                report.push(Finding::error(
                    "bar-exactness-middle",
                    &here,
                    Some(k),
                    format!(
                        "image of coker t ({}-dim) and kernel of the corestricted transfer ({}-dim) disagree",
                        image.part_dim(k),
                        kernel.part_dim(k)
                    ),
                ));
            }
        }
        if report.passed() {
            Ok(BarSequence {
                bar,
                tau,
                inj,
                surj,
            })
        } else {
            Err(report.sorted())
        }
    }

    /// Elementary invariants of every algebra and every covering pair,
    /// with cross-check alarms.
    #[must_use]
    pub fn invariants(&self) -> InvariantsTable {
        let mut subgroups = Vec::new();
        for s in self.lattice.subgroups() {
            let sp = self.algebras[&s.key()].space();
            subgroups.push(SubgroupInvariants {
                key: s.key(),
                total_dim: sp.total_dim(),
                norm: sp.norm().ok(),
                connected: sp.is_connected(),
                biconnected: sp.is_biconnected(),
                dims: sp.dims().clone(),
            });
        }
        let mut edges = Vec::new();
        for pair in self.lattice.pairs() {
            let aw = &self.algebras[&pair.sup.key()];
            let Ok(wm) = aw.module_of() else { continue };
            let t_mod = wm
                .restrict_to_t(&pair.quotient_functional)
                .expect("functional over sup");
            let jt = t_mod.jordan_type();
            edges.push(EdgeInvariants {
                pair: pair.key(),
                bar_dims: t_mod.bar().space().dims().clone(),
                tau_dims: t_mod.tau().space().dims().clone(),
                jordan_sizes: jt.sizes_desc(),
                jordan_base_degrees: jt.base_degrees(),
            });
        }
        let findings = self.biconnectivity_alarms().sorted().findings;
        InvariantsTable {
            subgroups,
            edges,
            findings,
        }
    }

    /// Parity check on the rank-0 term: even for every verified functor
    /// of rank at least one.
    #[must_use]
    pub fn even_dimension_check(&self) -> (Trigger, Report) {
        let mut report = Report::new();
        let key = self.lattice.zero_subgroup().key();
        if self.rank == 0 {
            report.push(Finding::info(
                "even-dimension",
                &key,
                "not applicable at rank 0".into(),
            ));
            return (Trigger::NotApplicable, report);
        }
        let d0 = self.k_zero().space().total_dim();
        if d0.is_multiple_of(2) {
            report.push(Finding::info(
                "even-dimension",
                &key,
                format!("d(K_0) = {d0} is even"),
            ));
            (Trigger::NotTriggered, report)
        } else {
            report.push(Finding::error(
                "even-dimension",
                &key,
                None,
                format!("counterexample to Prop. 2.3.3: d(K_0) = {d0} is odd"),
            ));
            (Trigger::Triggered, report)
        }
    }

    /// Extension obstruction: the top algebra modulo the images of all
    /// coefficient operators is one-dimensional.
    #[must_use]
    pub fn obstruction_bar_one_dimensional(&self) -> ObstructionOutcome {
        let name = "bar-one-dimensional".to_string();
        let top = self.k_top();
        let Ok(m) = top.module_of() else {
            return ObstructionOutcome {
                name,
                trigger: Trigger::NotApplicable,
                detail: "coefficient module could not be built".into(),
            };
        };
        // Quotient by the sum of all operator images.
        let mut denom = GradedSubspace::zero(top.space().clone());
        for op in m.ops() {
            denom = denom.sum(&op.image());
        }
        let q = GradedQuotient::by(denom);
        let dims = q.space().clone();
        let trigger = if dims.total_dim() == 1 {
            Trigger::Triggered
        } else {
            Trigger::NotTriggered
        };
        ObstructionOutcome {
            name,
            trigger,
            detail: format!(
                "quotient by the full augmentation action has dims {dims}, total {}",
                dims.total_dim()
            ),
        }
    }

    /// Extension obstruction: the submodule generated by the unit of the
    /// top algebra reaches the algebra's norm. Requires a bi-connected
    /// rank-0 term.
    #[must_use]
    pub fn obstruction_unit_norm(&self) -> ObstructionOutcome {
        let name = "unit-norm".to_string();
        if !self.k_zero().space().is_biconnected() {
            return ObstructionOutcome {
                name,
                trigger: Trigger::NotApplicable,
                detail: "the rank-0 term is not bi-connected".into(),
            };
        }
        let top = self.k_top();
        let Ok(m) = top.module_of() else {
            return ObstructionOutcome {
                name,
                trigger: Trigger::NotApplicable,
                detail: "coefficient module could not be built".into(),
            };
        };
        let unit_coords = {
            let n0 = top.space().dim(0);
            let (deg, idx) = top.space().degree_of_flat(top.unit_index());
            debug_assert_eq!(deg, 0);
            Gf2Vec::unit(n0, idx)
        };
        let gen = m.submodule_generated(&[(0, unit_coords)]);
        let gen_norm = gen.space().norm();
        let top_norm = top.space().norm();
        let trigger = match (&gen_norm, &top_norm) {
            (Ok(a), Ok(b)) if a == b => Trigger::Triggered,
            _ => Trigger::NotTriggered,
        };
        ObstructionOutcome {
            name,
            trigger,
            detail: format!(
                "submodule generated by the unit has dims {} (norm {}), algebra norm {}",
                gen.space(),
                gen_norm.map_or_else(|_| "-".into(), |n| n.to_string()),
                top_norm.map_or_else(|_| "-".into(), |n| n.to_string()),
            ),
        }
    }

    /// The lower bound d(K_0) >= 2^rank, with the proved-case label on
    /// violations under the matching connectivity hypothesis.
    #[must_use]
    pub fn conjecture_check(&self) -> ConjectureOutcome {
        let dim_k0 = self.k_zero().space().total_dim();
        let bound = 1usize << self.rank;
        let holds = dim_k0 >= bound;
        let k0 = self.k_zero().space();
        let hypothesis_met = match self.rank {
            0 | 1 => true,
            2 => k0.is_connected(),
            3 => k0.is_biconnected(),
            _ => false,
        };
        let label = if !holds && self.rank <= 3 && hypothesis_met {
            Some("counterexample to Theorem 3.1".to_string())
        } else {
            None
        };
        ConjectureOutcome {
            rank: self.rank,
            dim_k0,
            bound,
            holds,
            hypothesis_met,
            label,
        }
    }
}

/// Runs `f` over 0..n, optionally on several worker threads, returning
/// results in index order regardless of scheduling.
fn run_tasks<T, F>(n: usize, threads: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    if threads <= 1 || n <= 1 {
        return (0..n).map(f).collect();
    }
    let workers = threads.min(n);
    let mut results: Vec<Option<T>> = (0..n).map(|_| None).collect();
    std::thread::scope(|scope| {
        let (tx, rx) = std::sync::mpsc::channel();
        for w in 0..workers {
            let tx = tx.clone();
            let f = &f;
            scope.spawn(move || {
                let mut i = w;
                while i < n {
                    tx.send((i, f(i))).expect("receiver alive");
                    i += workers;
                }
            });
        }
        drop(tx);
        for (i, r) in rx {
            results[i] = Some(r);
        }
    });
    results
        .into_iter()
        .map(|o| o.expect("all tasks completed"))
        .collect()
}
