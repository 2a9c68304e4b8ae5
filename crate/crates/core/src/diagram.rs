//! The 3x3 grid of short exact sequences refining a covering pair whose
//! larger subgroup has rank 2.
//!
//! Write W for the pair's larger subgroup, U for the smaller one, I for
//! the coefficient submodule of K_W generated by the unit and C for the
//! quotient K_W/I. Applying ker/coker of the pair's t-action to
//! 0 -> I -> K_W -> C -> 0 and splicing with the derived sequence
//! 0 -> bar(K_W) -> K_U -> tau(K_W) -> 0 yields the grid
//!
//! ```text
//!   Im(bar j) ---> S -------> tau(I)
//!      |           |            |
//!   bar(K_W) ---> K_U ------> tau(K_W)
//!      |           |            |
//!   bar(C) ----> K_U/S ------> Q
//! ```
//!
//! with j the inclusion of I, S the span of the restricted unit part
//! together with transfer lifts of tau(I), and Q = tau(K_W)/tau(I). Rows
//! and columns are short exact and all four squares commute whenever the
//! functor satisfies its axioms; [`build_diagram_d`] constructs every
//! object and map and checks each of those statements degree by degree,
//! reporting violations with their grid position. The block structures
//! entering the monogenic bookkeeping are returned alongside.

use crate::functor::GysinFunctor;
use crate::gf2::Gf2Vec;
use crate::graded::{GradedMap, GradedQuotient, GradedSpace, GradedSubspace};
use crate::lattice::{CoveringPair, H1Element};
use crate::modules::{tor_les, JordanType, ModuleError, ShortExactSeq, TModule, TorSequence};
use crate::report::{Finding, Report};

#[derive(Debug, thiserror::Error)]
pub enum DiagramError {
    #[error("the pair's larger subgroup has rank {0}, the diagram needs rank 2")]
    SupRank(usize),
    #[error("pair {0} does not belong to the functor's lattice")]
    UnknownPair(String),
    #[error("subgroup {key}: no coefficient module structure: {source}")]
    Module {
        key: String,
        #[source]
        source: ModuleError,
    },
    /// The unit sequence or its six-term sequence could not even be
    /// formed; in particular a lift-dependent connecting map lands here.
    #[error("corrupted input: {0}")]
    Corrupted(#[from] ModuleError),
}

/// Names of the nine grid positions, row-major from the top left.
pub const OBJECT_NAMES: [[&str; 3]; 3] = [
    ["Im(bar j)", "S", "tau(I)"],
    ["bar(K_W)", "K_U", "tau(K_W)"],
    ["bar(C)", "K_U/S", "Q"],
];

/// Jordan block data of the modules the grid is made from. The unit
/// submodule and the cokernel are decomposed along the pair's t-action;
/// the three grid objects are decomposed along the residual action of
/// the complementary degree-1 form, which descends to ker and coker of
/// t. A `None` records that the relevant subspace was not stable under
/// the action, which happens only on corrupted input and is reported.
#[derive(Clone, Debug)]
pub struct MonogenicData {
    /// I, the coefficient submodule of K_W generated by the unit.
    pub unit_submodule: JordanType,
    /// C = K_W / I.
    pub cokernel: JordanType,
    /// Im(bar j), the top left object.
    pub unit_bar_image: Option<JordanType>,
    /// tau(I), the top right object.
    pub tau_unit: Option<JordanType>,
    /// Q, the bottom right object.
    pub q: Option<JordanType>,
}

/// The assembled grid: object dimensions, split data, block bookkeeping
/// and the check verdict.
#[derive(Clone, Debug)]
pub struct DiagramD {
    pub pair: String,
    /// Row-major object spaces, named by [`OBJECT_NAMES`].
    pub objects: [[GradedSpace; 3]; 3],
    /// Total rank of the connecting map tau(C) -> bar(I); zero exactly
    /// when the tau and bar columns of the unit sequence split apart.
    pub delta_rank: usize,
    pub monogenic: MonogenicData,
    pub report: Report,
}

impl DiagramD {
    #[must_use]
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// Builds and checks the grid over one covering pair with a rank-2 top.
///
/// The input is assumed to have passed verification; on corrupted data
/// the checks still run and the report pinpoints every failing row,
/// column or square.
///
/// # Errors
/// Rejects pairs whose larger subgroup is not of rank 2 or which do not
/// belong to the functor, and inputs on which the unit sequence or its
/// six-term sequence cannot be formed at all.
pub fn build_diagram_d(
    f: &GysinFunctor,
    pair: &CoveringPair,
) -> Result<DiagramD, DiagramError> {
    if pair.sup.rank() != 2 {
        return Err(DiagramError::SupRank(pair.sup.rank()));
    }
    let key = pair.key();
    if !f.lattice().pairs().iter().any(|p| p.key() == key) {
        return Err(DiagramError::UnknownPair(key));
    }
    let aw = f.algebra(&pair.sup);
    let au = f.algebra(&pair.sub);
    let edge = f.edge(pair);

    let wm = aw.module_of().map_err(|source| DiagramError::Module {
        key: pair.sup.key(),
        source,
    })?;
    let b_mod = wm.restrict_to_t(&pair.quotient_functional)?;

    let (unit_degree, unit_index) = aw.space().degree_of_flat(aw.unit_index());
    let seed = Gf2Vec::unit(aw.space().dim(unit_degree), unit_index);
    let unit_sub = wm.submodule_generated(&[(unit_degree, seed)]);
    let ses = ShortExactSeq::from_submodule(&b_mod, &unit_sub)?;
    let tor = tor_les(&ses)?;

    let mut report = Report::new();
    for failure in tor.exactness_failures() {
        report.push(Finding::alarm(
            "diagram-assembly",
            "unit sequence",
            Some(failure.degree),
            format!("six-term sequence of the unit submodule is not exact at {}", failure.spot),
        ));
    }

    // Middle row: restriction through coker t, transfer into ker t.
    let t = b_mod.t();
    let rho_t = edge.rho.compose(t);
    for k in aw.space().degrees() {
        if !rho_t.block(k).is_zero() {
            report.push(Finding::error(
                "diagram-assembly",
                "row 2",
                Some(k + 1),
                "restriction does not factor through coker t".into(),
            ));
        }
    }
    let b1 = edge.rho.compose(&tor.bar_b.section());
    let t_psi = t.compose(&edge.psi);
    for k in au.space().degrees() {
        if !t_psi.block(k).is_zero() {
            report.push(Finding::error(
                "diagram-assembly",
                "row 2",
                Some(k),
                "transfer image escapes ker t".into(),
            ));
        }
    }
    let tau_space = tor.tau_b.space();
    let mut b2 = GradedMap::zero(au.space().clone(), tau_space.clone(), 0);
    for k in au.space().degrees().collect::<Vec<_>>() {
        let n = au.space().dim(k);
        let cols: Vec<Gf2Vec> = (0..n)
            .map(|j| {
                let v = edge.psi.apply_at(k, &Gf2Vec::unit(n, j));
                tor.tau_b
                    .coordinates(k, &v)
                    .unwrap_or_else(|| Gf2Vec::zeros(tau_space.dim(k)))
            })
            .collect();
        b2.set_block(k, crate::gf2::Gf2Matrix::from_cols(&cols, tau_space.dim(k)));
    }

    // Outer columns from the six-term sequence.
    let n11 = tor.m3.image();
    let n13 = tor.m1.image();
    let q_quot = GradedQuotient::by(n13.clone());

    // Middle sub-object: restricted unit part plus transfer lifts.
    let mut generators: Vec<(usize, Gf2Vec)> = Vec::new();
    for (k, v) in n11.basis_vectors() {
        generators.push((k, b1.apply_at(k, &v)));
    }
    for (k, w) in n13.basis_vectors() {
        match b2.block(k).solve(&w) {
            Some(x) => generators.push((k, x)),
            None => report.push(Finding::error(
                "diagram-assembly",
                "row 1",
                Some(k),
                "tau class of the unit submodule has no transfer preimage".into(),
            )),
        }
    }
    let s2 = GradedSubspace::from_vectors(au.space().clone(), &generators);
    let d32 = GradedQuotient::by(s2.clone());

    // Top row maps as corestrictions of the middle row.
    let mut a1 = GradedMap::zero(n11.space(), s2.space(), 0);
    for (k, part) in collect_parts(&n11) {
        let cols: Vec<Gf2Vec> = part
            .iter()
            .map(|v| {
                let w = b1.apply_at(k, v);
                s2.coordinates(k, &w)
                    .unwrap_or_else(|| Gf2Vec::zeros(s2.part_dim(k)))
            })
            .collect();
        a1.set_block(k, crate::gf2::Gf2Matrix::from_cols(&cols, s2.part_dim(k)));
    }
    let mut a2 = GradedMap::zero(s2.space(), n13.space(), 0);
    for (k, part) in collect_parts(&s2) {
        let cols: Vec<Gf2Vec> = part
            .iter()
            .map(|v| {
                let w = b2.apply_at(k, v);
                n13.coordinates(k, &w).unwrap_or_else(|| {
                    report.push(Finding::error(
                        "diagram-assembly",
                        "top-right square",
                        Some(k),
                        "transfer carries the middle sub-object outside tau of the unit submodule"
                            .into(),
                    ));
                    Gf2Vec::zeros(n13.part_dim(k))
                })
            })
            .collect();
        a2.set_block(k, crate::gf2::Gf2Matrix::from_cols(&cols, n13.part_dim(k)));
    }

    // Bottom row maps induced on the quotients.
    for (k, v) in tor.m4.kernel().basis_vectors() {
        if !s2.contains(k, &b1.apply_at(k, &v)) {
            report.push(Finding::error(
                "diagram-assembly",
                "bottom-left square",
                Some(k),
                "induced map out of bar(C) is not well defined".into(),
            ));
        }
    }
    let bar_c_space = tor.bar_c.space().clone();
    let mut r3_inj = GradedMap::zero(bar_c_space.clone(), d32.space().clone(), 0);
    for k in bar_c_space.degrees().collect::<Vec<_>>() {
        let n = bar_c_space.dim(k);
        let cols: Vec<Gf2Vec> = (0..n)
            .map(|j| match tor.m4.block(k).solve(&Gf2Vec::unit(n, j)) {
                Some(x) => d32.project_at(k, &b1.apply_at(k, &x)),
                None => {
                    report.push(Finding::error(
                        "diagram-assembly",
                        "column 1",
                        Some(k),
                        "bar(C) class has no preimage in bar(K_W)".into(),
                    ));
                    Gf2Vec::zeros(d32.space().dim(k))
                }
            })
            .collect();
        r3_inj.set_block(k, crate::gf2::Gf2Matrix::from_cols(&cols, d32.space().dim(k)));
    }
    let mut r3_surj = GradedMap::zero(d32.space().clone(), q_quot.space().clone(), 0);
    for k in d32.space().degrees().collect::<Vec<_>>() {
        let n = d32.space().dim(k);
        let cols: Vec<Gf2Vec> = (0..n)
            .map(|j| {
                let x = d32.lift_at(k, &Gf2Vec::unit(n, j));
                q_quot.project_at(k, &b2.apply_at(k, &x))
            })
            .collect();
        r3_surj.set_block(k, crate::gf2::Gf2Matrix::from_cols(&cols, q_quot.space().dim(k)));
    }

    // Vertical maps.
    let v11 = n11.inclusion();
    let v12 = s2.inclusion();
    let v13 = n13.inclusion();
    let v21 = tor.m4.clone();
    let v22 = d32.projection();
    let v23 = q_quot.projection();

    check_square(&mut report, "top-left square", &v12.compose(&a1), &b1.compose(&v11));
    check_square(&mut report, "top-right square", &v13.compose(&a2), &b2.compose(&v12));
    check_square(&mut report, "bottom-left square", &v22.compose(&b1), &r3_inj.compose(&v21));
    check_square(&mut report, "bottom-right square", &v23.compose(&b2), &r3_surj.compose(&v22));

    check_ses(&mut report, "row 1", &a1, &a2);
    check_ses(&mut report, "row 2", &b1, &b2);
    check_ses(&mut report, "row 3", &r3_inj, &r3_surj);
    check_ses(&mut report, "column 1", &v11, &v21);
    check_ses(&mut report, "column 2", &v12, &v22);
    check_ses(&mut report, "column 3", &v13, &v23);

    if tor.delta.is_zero() {
        report.push(Finding::info(
            "diagram-split",
            &key,
            "connecting map is zero; the tau and bar columns of the unit sequence split apart"
                .into(),
        ));
    }

    let monogenic = monogenic_data(&mut report, &wm, pair, &ses, &tor, &n11, &n13)?;

    let objects = [
        [n11.space(), s2.space(), n13.space()],
        [
            tor.bar_b.space().clone(),
            au.space().unnamed(),
            tor.tau_b.space(),
        ],
        [bar_c_space, d32.space().clone(), q_quot.space().clone()],
    ];
    Ok(DiagramD {
        pair: key,
        objects,
        delta_rank: tor.delta.rank(),
        monogenic,
        report: report.sorted(),
    })
}

/// Basis vectors of a graded subspace, grouped per degree.
fn collect_parts(sub: &GradedSubspace) -> Vec<(usize, Vec<Gf2Vec>)> {
    let mut out: Vec<(usize, Vec<Gf2Vec>)> = Vec::new();
    for (k, v) in sub.basis_vectors() {
        match out.last_mut() {
            Some((deg, part)) if *deg == k => part.push(v),
            _ => out.push((k, vec![v])),
        }
    }
    out
}

fn check_square(report: &mut Report, name: &str, via_top: &GradedMap, via_bottom: &GradedMap) {
    debug_assert_eq!(via_top.source().dims(), via_bottom.source().dims());
    for k in via_top.source().degrees() {
        if via_top.block(k) != via_bottom.block(k) {
            report.push(Finding::error(
                "diagram-square-commutes",
                name,
                Some(k),
                "the two composites around the square disagree".into(),
            ));
        }
    }
}

/// Degreewise exactness of 0 -> X -> Y -> Z -> 0 given the two maps.
fn check_ses(report: &mut Report, name: &str, left: &GradedMap, right: &GradedMap) {
    for k in left.source().degrees() {
        if left.block(k).rank() != left.source().dim(k) {
            report.push(Finding::error(
                "diagram-row-column-exact",
                name,
                Some(k),
                "left map fails to be injective".into(),
            ));
        }
    }
    let image = left.image();
    let kernel = right.kernel();
    for k in right.source().degrees() {
        if image.part(k) != kernel.part(k) {
            report.push(Finding::error(
                "diagram-row-column-exact",
                name,
                Some(k),
                format!(
                    "image of the left map ({}-dim) and kernel of the right map ({}-dim) disagree",
                    image.part_dim(k),
                    kernel.part_dim(k)
                ),
            ));
        }
    }
    let onto = right.image();
    for k in right.target().degrees() {
        if onto.part_dim(k) != right.target().dim(k) {
            report.push(Finding::error(
                "diagram-row-column-exact",
                name,
                Some(k),
                "right map fails to be surjective".into(),
            ));
        }
    }
}

fn monogenic_data(
    report: &mut Report,
    wm: &crate::modules::HWModule,
    pair: &CoveringPair,
    ses: &ShortExactSeq,
    tor: &TorSequence,
    n11: &GradedSubspace,
    n13: &GradedSubspace,
) -> Result<MonogenicData, DiagramError> {
    // The residual degree-1 form: any form on W restricting to a nonzero
    // form on U. The two candidates differ by the pair's functional, so
    // their actions agree on ker t and coker t.
    let w = &pair.sup;
    let phi = (1u64..(1 << w.rank()))
        .map(|mask| {
            let mut coords = Gf2Vec::zeros(w.rank());
            for b in 0..w.rank() {
                if mask >> b & 1 == 1 {
                    coords.set(b, true);
                }
            }
            H1Element::new(w.clone(), coords).expect("coords sized to the rank")
        })
        .find(|cand| {
            !cand
                .restrict_to(&pair.sub)
                .expect("covering pair nests")
                .is_zero()
        })
        .expect("a proper subgroup admits a surviving form");
    let residual = wm.restrict_to_t(&phi)?;

    let mut unit_bar_image = None;
    match residual.t().induce_on_quotients(&tor.bar_b, &tor.bar_b) {
        Ok(op) => {
            let module = TModule::new(tor.bar_b.space().clone(), op)
                .expect("induced operator keeps shift and endpoints");
            match module.submodule(n11) {
                Ok((m, _)) => unit_bar_image = Some(m.jordan_type()),
                Err(e) => report.push(Finding::alarm(
                    "diagram-monogenic",
                    OBJECT_NAMES[0][0],
                    None,
                    format!("residual action does not preserve the object: {e}"),
                )),
            }
        }
        Err(e) => report.push(Finding::alarm(
            "diagram-monogenic",
            OBJECT_NAMES[1][0],
            None,
            format!("residual action does not descend to coker t: {e}"),
        )),
    }

    let mut tau_unit = None;
    let mut q = None;
    match residual.t().restrict(&tor.tau_b, &tor.tau_b) {
        Ok(op) => {
            let module = TModule::new(tor.tau_b.space(), op)
                .expect("restricted operator keeps shift and endpoints");
            match module.submodule(n13) {
                Ok((m, _)) => tau_unit = Some(m.jordan_type()),
                Err(e) => report.push(Finding::alarm(
                    "diagram-monogenic",
                    OBJECT_NAMES[0][2],
                    None,
                    format!("residual action does not preserve the object: {e}"),
                )),
            }
            match module.quotient(n13) {
                Ok((m, _)) => q = Some(m.jordan_type()),
                Err(e) => report.push(Finding::alarm(
                    "diagram-monogenic",
                    OBJECT_NAMES[2][2],
                    None,
                    format!("residual action does not descend to the object: {e}"),
                )),
            }
        }
        Err(e) => report.push(Finding::alarm(
            "diagram-monogenic",
            OBJECT_NAMES[1][2],
            None,
            format!("residual action does not preserve ker t: {e}"),
        )),
    }

    Ok(MonogenicData {
        unit_submodule: ses.a.jordan_type(),
        cokernel: ses.c.jordan_type(),
        unit_bar_image,
        tau_unit,
        q,
    })
}
