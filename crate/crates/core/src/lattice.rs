//! The subgroup lattice of V = (Z/2Z)^d.
//!
//! Subgroups are GF(2)-subspaces of the coordinate space, identified by
//! the reduced row echelon basis of their span. Rows are stored as
//! bitmasks with coordinate 0 in the least significant bit; the canonical
//! key of a subgroup is the list of its row masks, e.g. `[1,2]` for the
//! span of e1 and e2 inside (Z/2Z)^3. Covering pairs (corank-1
//! inclusions) carry the unique nonzero linear form cutting out the
//! smaller subgroup; degree-1 cohomology of W is identified with the dual
//! space of W in the basis dual to the canonical rows.

use std::collections::BTreeMap;
use std::fmt;

use crate::gf2::Gf2Vec;

/// Largest ambient rank the lattice enumerator accepts. The subgroup
/// count grows roughly like 2^(d^2/4); 6 keeps every walk affordable.
pub const MAX_RANK: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("ambient rank {0} out of range (0..={MAX_RANK})")]
    RankOutOfRange(usize),
    #[error("generator uses coordinate {coord}, outside ambient rank {ambient}")]
    GeneratorOutOfRange { coord: usize, ambient: usize },
    #[error("non-canonical subgroup key")]
    NonCanonicalKey,
    #[error("{0} is not a subgroup of {1}")]
    NotASubgroup(String, String),
    #[error("linear form has {got} coordinates, subgroup has rank {want}")]
    FormLength { got: usize, want: usize },
}

/// A subgroup of (Z/2Z)^ambient, stored by its canonical RREF row basis.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Subgroup {
    ambient: usize,
    rows: Vec<u64>,
}

/// Reduced row echelon form of a set of bitmask vectors; rows come out
/// sorted by ascending pivot with each pivot cleared from all other rows.
fn rref_masks(gens: &[u64]) -> Vec<u64> {
    let mut rows: Vec<u64> = Vec::new();
    for &g in gens {
        let mut v = g;
        for &r in &rows {
            if v & (1 << r.trailing_zeros()) != 0 {
                v ^= r;
            }
        }
        if v != 0 {
            rows.push(v);
            // Re-clear the new pivot from earlier rows and keep pivot order.
            rows.sort_by_key(|r| r.trailing_zeros());
            let snapshot = rows.clone();
            for (i, ri) in rows.iter_mut().enumerate() {
                for (j, rj) in snapshot.iter().enumerate() {
                    if i != j && *ri & (1 << rj.trailing_zeros()) != 0 {
                        *ri ^= rj;
                    }
                }
            }
        }
    }
    rows.sort_by_key(|r| r.trailing_zeros());
    rows
}

impl Subgroup {
    /// Canonical form of the span of the given generator bitmasks.
    ///
    /// # Errors
    /// Fails when `ambient > MAX_RANK` or a generator uses a coordinate
    /// outside the ambient space. The empty list yields the zero subgroup.
    pub fn canonical_form(ambient: usize, gens: &[u64]) -> Result<Self, LatticeError> {
        if ambient > MAX_RANK {
            return Err(LatticeError::RankOutOfRange(ambient));
        }
        let bound = if ambient == 64 { u64::MAX } else { (1u64 << ambient) - 1 };
        for &g in gens {
            if g & !bound != 0 {
                return Err(LatticeError::GeneratorOutOfRange {
                    coord: 63 - (g & !bound).leading_zeros() as usize,
                    ambient,
                });
            }
        }
        Ok(Subgroup {
            ambient,
            rows: rref_masks(gens),
        })
    }

    #[must_use]
    pub fn zero(ambient: usize) -> Self {
        Subgroup { ambient, rows: Vec::new() }
    }

    /// The full group (Z/2Z)^ambient.
    #[must_use]
    pub fn full(ambient: usize) -> Self {
        Subgroup {
            ambient,
            rows: (0..ambient).map(|i| 1u64 << i).collect(),
        }
    }

    #[must_use]
    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Canonical basis rows as bitmasks, ascending pivot order.
    #[must_use]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Serialized key: the row masks in basis order, e.g. `[1,2]`.
    #[must_use]
    pub fn key(&self) -> String {
        let inner: Vec<String> = self.rows.iter().map(u64::to_string).collect();
        format!("[{}]", inner.join(","))
    }

    /// Parses a key produced by [`Subgroup::key`].
    ///
    /// # Errors
    /// Rejects malformed syntax and keys whose rows are not already the
    /// canonical basis (so every subgroup has exactly one accepted key).
    pub fn parse_key(ambient: usize, key: &str) -> Result<Self, LatticeError> {
        let body = key
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or(LatticeError::NonCanonicalKey)?;
        let rows: Vec<u64> = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(|tok| tok.trim().parse::<u64>().map_err(|_| LatticeError::NonCanonicalKey))
                .collect::<Result<_, _>>()?
        };
        let canonical = Subgroup::canonical_form(ambient, &rows)?;
        if canonical.rows == rows {
            Ok(canonical)
        } else {
            Err(LatticeError::NonCanonicalKey)
        }
    }

    /// Membership test for a coordinate vector given as a bitmask.
    #[must_use]
    pub fn contains_vector(&self, v: u64) -> bool {
        let mut v = v;
        for &r in &self.rows {
            if v & (1 << r.trailing_zeros()) != 0 {
                v ^= r;
            }
        }
        v == 0
    }

    #[must_use]
    pub fn contains(&self, other: &Subgroup) -> bool {
        self.ambient == other.ambient && other.rows.iter().all(|&r| self.contains_vector(r))
    }

    /// Canonical representative of the coset v + W: reduce `v` by the
    /// basis rows, leaving zeros at all pivot coordinates. Two vectors
    /// get the same representative exactly when they differ by an
    /// element of the subgroup.
    #[must_use]
    pub fn coset_rep(&self, v: u64) -> u64 {
        let mut v = v;
        for &r in &self.rows {
            if v & (1 << r.trailing_zeros()) != 0 {
                v ^= r;
            }
        }
        v
    }

    /// Coordinates of `v` in the canonical row basis, or None if outside.
    #[must_use]
    pub fn coords_of(&self, v: u64) -> Option<Gf2Vec> {
        let mut coords = Gf2Vec::zeros(self.rank());
        let mut v = v;
        for (i, &r) in self.rows.iter().enumerate() {
            if v & (1 << r.trailing_zeros()) != 0 {
                coords.set(i, true);
                v ^= r;
            }
        }
        (v == 0).then_some(coords)
    }

    /// All 2^rank elements, as bitmasks, in Gray-free deterministic order
    /// (coefficient vectors counting up in binary).
    #[must_use]
    pub fn elements(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(1 << self.rank());
        for mask in 0u64..(1 << self.rank()) {
            let mut v = 0u64;
            for (i, &r) in self.rows.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    v ^= r;
                }
            }
            out.push(v);
        }
        out
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.key())
    }
}

/// A degree-1 cohomology class of W: a linear form on W written in the
/// basis dual to W's canonical rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct H1Element {
    subgroup: Subgroup,
    coords: Gf2Vec,
}

impl H1Element {
    /// # Errors
    /// The coordinate count must equal the subgroup's rank.
    pub fn new(subgroup: Subgroup, coords: Gf2Vec) -> Result<Self, LatticeError> {
        if coords.len() != subgroup.rank() {
            return Err(LatticeError::FormLength {
                got: coords.len(),
                want: subgroup.rank(),
            });
        }
        Ok(H1Element { subgroup, coords })
    }

    #[must_use]
    pub fn zero(subgroup: Subgroup) -> Self {
        let coords = Gf2Vec::zeros(subgroup.rank());
        H1Element { subgroup, coords }
    }

    #[must_use]
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    #[must_use]
    pub fn coords(&self) -> &Gf2Vec {
        &self.coords
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    /// Evaluates the form on an element of the subgroup.
    ///
    /// # Panics
    /// Panics when `v` is not in the subgroup.
    #[must_use]
    pub fn evaluate(&self, v: u64) -> bool {
        let c = self
            .subgroup
            .coords_of(v)
            .expect("evaluated a form on a vector outside its subgroup");
        self.coords.dot(&c)
    }

    /// Restriction of the form along an inclusion U ⊆ W.
    ///
    /// # Errors
    /// Fails when `u` is not contained in the form's subgroup.
    pub fn restrict_to(&self, u: &Subgroup) -> Result<H1Element, LatticeError> {
        if !self.subgroup.contains(u) {
            return Err(LatticeError::NotASubgroup(u.key(), self.subgroup.key()));
        }
        let mut coords = Gf2Vec::zeros(u.rank());
        for (j, &row) in u.rows().iter().enumerate() {
            if self.evaluate(row) {
                coords.set(j, true);
            }
        }
        Ok(H1Element { subgroup: u.clone(), coords })
    }
}

/// A corank-1 inclusion U ⊂ W with the unique nonzero form on W whose
/// kernel is exactly U.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoveringPair {
    pub sub: Subgroup,
    pub sup: Subgroup,
    pub quotient_functional: H1Element,
}

impl CoveringPair {
    /// Report-addressing key, e.g. `[1] < [1,2]`.
    #[must_use]
    pub fn key(&self) -> String {
        format!("{} < {}", self.sub.key(), self.sup.key())
    }
}

impl fmt::Display for CoveringPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.key())
    }
}

/// The full subgroup lattice of (Z/2Z)^d with its covering pairs.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    rank: usize,
    subgroups: Vec<Subgroup>,
    by_key: BTreeMap<String, usize>,
    pairs: Vec<CoveringPair>,
}

impl SubgroupLattice {
    /// Enumerates every subgroup and covering pair of (Z/2Z)^d.
    ///
    /// # Errors
    /// Fails when `d > MAX_RANK`.
    pub fn new(d: usize) -> Result<Self, LatticeError> {
        if d > MAX_RANK {
            return Err(LatticeError::RankOutOfRange(d));
        }
        // Breadth-first closure: extend each subgroup by each outside
        // vector, canonicalize, deduplicate.
        let mut seen = std::collections::BTreeSet::new();
        let mut queue = vec![Subgroup::zero(d)];
        seen.insert(queue[0].clone());
        while let Some(s) = queue.pop() {
            for v in 1u64..(1u64 << d) {
                if s.contains_vector(v) {
                    continue;
                }
                let mut gens = s.rows.clone();
                gens.push(v);
                let bigger = Subgroup::canonical_form(d, &gens)?;
                if seen.insert(bigger.clone()) {
                    queue.push(bigger);
                }
            }
        }
        let mut subgroups: Vec<Subgroup> = seen.into_iter().collect();
        subgroups.sort_by(|a, b| (a.rank(), &a.rows).cmp(&(b.rank(), &b.rows)));
        let by_key = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.key(), i))
            .collect();

        let mut pairs = Vec::new();
        for sup in &subgroups {
            for sub in &subgroups {
                if sub.rank() + 1 == sup.rank() && sup.contains(sub) {
                    pairs.push(CoveringPair {
                        sub: sub.clone(),
                        sup: sup.clone(),
                        quotient_functional: quotient_functional(sub, sup),
                    });
                }
            }
        }
        Ok(SubgroupLattice {
            rank: d,
            subgroups,
            by_key,
            pairs,
        })
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// All subgroups, sorted by rank then lexicographic row masks.
    #[must_use]
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    /// All covering pairs, sorted by (sup, sub) enumeration order.
    #[must_use]
    pub fn pairs(&self) -> &[CoveringPair] {
        &self.pairs
    }

    #[must_use]
    pub fn get(&self, key: &str) -> Option<&Subgroup> {
        self.by_key.get(key).map(|&i| &self.subgroups[i])
    }

    #[must_use]
    pub fn zero_subgroup(&self) -> &Subgroup {
        &self.subgroups[0]
    }

    #[must_use]
    pub fn full_subgroup(&self) -> &Subgroup {
        self.subgroups.last().expect("lattice is never empty")
    }

    /// Covering pairs whose larger member is `w`.
    pub fn covered_by<'a>(&'a self, w: &'a Subgroup) -> impl Iterator<Item = &'a CoveringPair> {
        self.pairs.iter().filter(move |p| &p.sup == w)
    }

    /// Covering pairs whose smaller member is `u`.
    pub fn covers_of<'a>(&'a self, u: &'a Subgroup) -> impl Iterator<Item = &'a CoveringPair> {
        self.pairs.iter().filter(move |p| &p.sub == u)
    }

    /// The pair for a specific corank-1 inclusion, if it is one.
    #[must_use]
    pub fn pair(&self, sub: &Subgroup, sup: &Subgroup) -> Option<&CoveringPair> {
        self.pairs.iter().find(|p| &p.sub == sub && &p.sup == sup)
    }
}

/// The unique nonzero form on `sup` vanishing exactly on `sub`, for a
/// corank-1 inclusion.
fn quotient_functional(sub: &Subgroup, sup: &Subgroup) -> H1Element {
    debug_assert!(sup.contains(sub) && sub.rank() + 1 == sup.rank());
    let n = sup.rank();
    // Solve f(u) = 0 for every basis row u of sub; the solution space is
    // one-dimensional.
    let constraints: Vec<Gf2Vec> = sub
        .rows()
        .iter()
        .map(|&r| sup.coords_of(r).expect("sub is inside sup"))
        .collect();
    let m = crate::gf2::Gf2Matrix::from_rows(constraints, n);
    let kernel = m.kernel_basis();
    assert_eq!(kernel.len(), 1, "corank-1 inclusion has a unique functional");
    H1Element {
        subgroup: sup.clone(),
        coords: kernel.into_iter().next().expect("one kernel vector"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_collapses_redundancy() {
        let a = Subgroup::canonical_form(2, &[0b11, 0b10]).unwrap();
        assert_eq!(a, Subgroup::full(2));
        let b = Subgroup::canonical_form(3, &[0b011, 0b011]).unwrap();
        assert_eq!(b.rows(), &[0b011]);
        assert_eq!(b.rank(), 1);
        let c = Subgroup::canonical_form(1, &[]).unwrap();
        assert_eq!(c.rank(), 0);
    }

    #[test]
    fn canonical_form_is_generator_order_insensitive() {
        let a = Subgroup::canonical_form(3, &[0b101, 0b110]).unwrap();
        let b = Subgroup::canonical_form(3, &[0b110, 0b011, 0b101]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn keys_roundtrip_and_reject_noncanonical() {
        let s = Subgroup::canonical_form(3, &[0b001, 0b010]).unwrap();
        assert_eq!(s.key(), "[1,2]");
        assert_eq!(Subgroup::parse_key(3, "[1,2]").unwrap(), s);
        // [3,2] spans the same subgroup but is not the canonical basis.
        assert_eq!(
            Subgroup::parse_key(3, "[3,2]").unwrap_err(),
            LatticeError::NonCanonicalKey
        );
        assert_eq!(Subgroup::parse_key(2, "[]").unwrap(), Subgroup::zero(2));
    }

    #[test]
    fn lattice_counts_for_small_ranks() {
        assert_eq!(SubgroupLattice::new(1).unwrap().subgroups().len(), 2);
        assert_eq!(SubgroupLattice::new(2).unwrap().subgroups().len(), 5);
        let l3 = SubgroupLattice::new(3).unwrap();
        assert_eq!(l3.subgroups().len(), 16);
        let by_rank: Vec<usize> = (0..=3)
            .map(|r| l3.subgroups().iter().filter(|s| s.rank() == r).count())
            .collect();
        assert_eq!(by_rank, vec![1, 7, 7, 1]);
        assert!(SubgroupLattice::new(7).is_err());
    }

    #[test]
    fn covering_pair_counts() {
        assert_eq!(SubgroupLattice::new(1).unwrap().pairs().len(), 1);
        assert_eq!(SubgroupLattice::new(2).unwrap().pairs().len(), 6);
        assert_eq!(SubgroupLattice::new(3).unwrap().pairs().len(), 35);
    }

    #[test]
    fn quotient_functional_kills_exactly_sub() {
        let l = SubgroupLattice::new(3).unwrap();
        for p in l.pairs() {
            let f = &p.quotient_functional;
            assert!(!f.is_zero());
            for v in p.sup.elements() {
                assert_eq!(f.evaluate(v), !p.sub.contains_vector(v));
            }
            // Restricting the functional to sub gives zero.
            assert!(f.restrict_to(&p.sub).unwrap().is_zero());
        }
    }

    #[test]
    fn h1_restriction_evaluates_on_basis() {
        let v = Subgroup::full(2);
        let line = Subgroup::canonical_form(2, &[0b01]).unwrap();
        let form = H1Element::new(v, Gf2Vec::from_bits(&[1, 1])).unwrap();
        let restricted = form.restrict_to(&line).unwrap();
        assert_eq!(restricted.coords(), &Gf2Vec::from_bits(&[1]));
        let other = Subgroup::canonical_form(2, &[0b11]).unwrap();
        let r2 = form.restrict_to(&other).unwrap();
        assert!(r2.is_zero());
    }

    #[test]
    fn codimension_one_subgroups_match_nonzero_forms() {
        let l = SubgroupLattice::new(3).unwrap();
        let full = l.full_subgroup();
        let count = l.covered_by(full).count();
        assert_eq!(count, (1 << full.rank()) - 1);
    }
}
