//! Core model: VASS digraphs, ω-extended vectors, paths, runs and zones.
//!
//! A `d`-dimensional VASS is a finite digraph whose edges carry displacement
//! vectors in ℤ^d. A configuration pairs a state with a location; a run steps
//! through transitions adding displacements, and a *walk* is a run whose
//! locations never leave ℕ^d. All arithmetic is arbitrary precision.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::{Signed, Zero};
use thiserror::Error;

/// Exact integer used for all displacements and locations.
pub type Int = BigInt;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Integer vector helpers. Dimensions are checked by the callers.
pub fn vec_add(a: &[Int], b: &[Int]) -> Vec<Int> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Int], b: &[Int]) -> Vec<Int> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(k: &Int, a: &[Int]) -> Vec<Int> {
    a.iter().map(|x| k * x).collect()
}

pub fn vec_zero(d: usize) -> Vec<Int> {
    vec![Int::zero(); d]
}

/// 1-norm of an integer vector.
pub fn vec_norm1(a: &[Int]) -> Int {
    a.iter().map(|x| x.abs()).sum()
}

pub fn vec_from_i64(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

/// A natural number extended with the absorbing element ω.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtNat {
    Fin(Int),
    Omega,
}

impl ExtNat {
    pub fn fin(v: i64) -> Self {
        assert!(v >= 0, "finite extended naturals are nonnegative");
        ExtNat::Fin(Int::from(v))
    }

    pub fn is_omega(&self) -> bool {
        matches!(self, ExtNat::Omega)
    }

    pub fn as_finite(&self) -> Option<&Int> {
        match self {
            ExtNat::Fin(v) => Some(v),
            ExtNat::Omega => None,
        }
    }

    /// ω-absorbing addition: ω ± n = ω. Returns `None` when a finite entry
    /// would become negative.
    pub fn checked_add(&self, delta: &Int) -> Option<ExtNat> {
        match self {
            ExtNat::Omega => Some(ExtNat::Omega),
            ExtNat::Fin(v) => {
                let sum = v + delta;
                if sum.is_negative() {
                    None
                } else {
                    Some(ExtNat::Fin(sum))
                }
            }
        }
    }
}

impl fmt::Debug for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(v) => write!(f, "{v}"),
            ExtNat::Omega => write!(f, "w"),
        }
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Vector over ℕ ∪ {ω}. Used for locations and KLM boundary constraints.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtVector {
    entries: Vec<ExtNat>,
}

impl ExtVector {
    pub fn new(entries: Vec<ExtNat>) -> Self {
        ExtVector { entries }
    }

    /// All-ω vector of dimension `d`.
    pub fn omega(d: usize) -> Self {
        ExtVector { entries: vec![ExtNat::Omega; d] }
    }

    /// Finite vector; panics on negative entries.
    pub fn finite(values: &[i64]) -> Self {
        ExtVector { entries: values.iter().map(|&v| ExtNat::fin(v)).collect() }
    }

    pub fn from_ints(values: Vec<Int>) -> Self {
        assert!(values.iter().all(|v| !v.is_negative()));
        ExtVector { entries: values.into_iter().map(ExtNat::Fin).collect() }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[ExtNat] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &ExtNat {
        &self.entries[i]
    }

    pub fn set_entry(&mut self, i: usize, v: ExtNat) {
        self.entries[i] = v;
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|e| !e.is_omega())
    }

    /// The finite entries as an integer vector, or `None` if any entry is ω.
    pub fn to_finite(&self) -> Option<Vec<Int>> {
        self.entries.iter().map(|e| e.as_finite().cloned()).collect()
    }

    /// 1-norm summing only the finite entries.
    pub fn norm1(&self) -> Int {
        self.entries
            .iter()
            .filter_map(|e| e.as_finite())
            .map(|v| v.abs())
            .sum()
    }

    /// The partial order ⊑: `self ⊑ other` iff entrywise `other ∈ {self, ω}`.
    pub fn below(&self, other: &ExtVector) -> bool {
        self.dim() == other.dim()
            && self.entries.iter().zip(&other.entries).all(|(x, y)| match y {
                ExtNat::Omega => true,
                ExtNat::Fin(_) => x == y,
            })
    }

    pub fn omega_positions(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.is_omega())
            .map(|(i, _)| i)
            .collect()
    }
}

impl fmt::Debug for ExtVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for ExtVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Stable state identifier, assigned in insertion order.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct StateId(pub usize);

/// Stable transition identifier, assigned in insertion order.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TransId(pub usize);

/// A labeled edge. `origin` threads the identity of the ancestral transition
/// through derived graphs (projections, band encodings, decompositions) so
/// that witnesses can be replayed on the graph they were asked about.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Transition {
    pub src: StateId,
    pub dst: StateId,
    pub disp: Vec<Int>,
    pub origin: Option<TransId>,
}

/// A d-dimensional VASS: digraph with ℤ^d displacements and designated
/// input/output states. Multi-edges and self loops are permitted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VassGraph {
    dim: usize,
    state_names: Vec<String>,
    trans_names: Vec<String>,
    transitions: Vec<Transition>,
    q_in: StateId,
    q_out: StateId,
}

impl VassGraph {
    pub fn new(dim: usize) -> Self {
        VassGraph {
            dim,
            state_names: Vec::new(),
            trans_names: Vec::new(),
            transitions: Vec::new(),
            q_in: StateId(0),
            q_out: StateId(0),
        }
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> StateId {
        self.state_names.push(name.into());
        StateId(self.state_names.len() - 1)
    }

    pub fn add_transition_named(
        &mut self,
        name: impl Into<String>,
        src: StateId,
        dst: StateId,
        disp: Vec<Int>,
    ) -> TransId {
        assert_eq!(disp.len(), self.dim, "displacement dimension mismatch");
        assert!(src.0 < self.state_names.len() && dst.0 < self.state_names.len());
        let id = TransId(self.transitions.len());
        self.transitions.push(Transition { src, dst, disp, origin: Some(id) });
        self.trans_names.push(name.into());
        id
    }

    pub fn add_transition(&mut self, src: StateId, dst: StateId, disp: Vec<Int>) -> TransId {
        let name = format!("t{}", self.transitions.len() + 1);
        self.add_transition_named(name, src, dst, disp)
    }

    /// Adds a transition whose provenance points at `origin` in an ancestral
    /// graph instead of at itself.
    pub fn add_derived_transition(
        &mut self,
        name: impl Into<String>,
        src: StateId,
        dst: StateId,
        disp: Vec<Int>,
        origin: Option<TransId>,
    ) -> TransId {
        let id = self.add_transition_named(name, src, dst, disp);
        self.transitions[id.0].origin = origin;
        id
    }

    pub fn set_io(&mut self, q_in: StateId, q_out: StateId) {
        self.q_in = q_in;
        self.q_out = q_out;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn q_in(&self) -> StateId {
        self.q_in
    }

    pub fn q_out(&self) -> StateId {
        self.q_out
    }

    pub fn state_count(&self) -> usize {
        self.state_names.len()
    }

    pub fn state_ids(&self) -> impl Iterator<Item = StateId> {
        (0..self.state_names.len()).map(StateId)
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.state_names[s.0]
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.state_names.iter().position(|n| n == name).map(StateId)
    }

    pub fn trans_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn trans_ids(&self) -> impl Iterator<Item = TransId> {
        (0..self.transitions.len()).map(TransId)
    }

    pub fn transition(&self, t: TransId) -> &Transition {
        &self.transitions[t.0]
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn trans_name(&self, t: TransId) -> &str {
        &self.trans_names[t.0]
    }

    pub fn trans_by_name(&self, name: &str) -> Option<TransId> {
        self.trans_names.iter().position(|n| n == name).map(TransId)
    }

    /// ‖T‖ = Σ_t ‖Δ(t)‖₁.
    pub fn trans_norm(&self) -> Int {
        self.transitions.iter().map(|t| vec_norm1(&t.disp)).sum()
    }

    /// max‖T‖ = max_t ‖Δ(t)‖₁ (zero for an edgeless graph).
    pub fn max_trans_norm(&self) -> Int {
        self.transitions
            .iter()
            .map(|t| vec_norm1(&t.disp))
            .max()
            .unwrap_or_else(Int::zero)
    }

    /// Input size |G| = |Q| + ‖T‖.
    pub fn size(&self) -> Int {
        Int::from(self.state_names.len()) + self.trans_norm()
    }

    /// The reverse graph: every transition flipped and its displacement
    /// negated, with input/output states swapped.
    pub fn reversed(&self) -> VassGraph {
        let mut g = VassGraph::new(self.dim);
        g.state_names = self.state_names.clone();
        for (i, t) in self.transitions.iter().enumerate() {
            g.add_derived_transition(
                self.trans_names[i].clone(),
                t.dst,
                t.src,
                t.disp.iter().map(|v| -v).collect(),
                t.origin,
            );
        }
        g.set_io(self.q_out, self.q_in);
        g
    }

    pub fn outgoing(&self, s: StateId) -> impl Iterator<Item = TransId> + '_ {
        self.transitions
            .iter()
            .enumerate()
            .filter(move |(_, t)| t.src == s)
            .map(|(i, _)| TransId(i))
    }
}

/// Evaluation domain for runs.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Domain {
    /// ℕ^d: every location stays nonnegative (walks).
    Nat,
    /// ℤ^d: unconstrained.
    Integer,
    /// ℕ_ω^d: ω entries absorb, finite entries stay nonnegative.
    NatOmega,
}

/// A state paired with a location.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Configuration {
    pub state: StateId,
    pub location: ExtVector,
}

impl Configuration {
    pub fn new(state: StateId, location: ExtVector) -> Self {
        Configuration { state, location }
    }

    pub fn finite(state: StateId, values: &[i64]) -> Self {
        Configuration { state, location: ExtVector::finite(values) }
    }
}

/// A chained sequence of transition ids.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Path {
    pub steps: Vec<TransId>,
}

impl Path {
    pub fn empty() -> Self {
        Path { steps: Vec::new() }
    }

    /// Builds a path, checking that consecutive transitions are chained.
    pub fn new(graph: &VassGraph, steps: Vec<TransId>) -> Result<Self, ModelError> {
        for w in steps.windows(2) {
            if graph.transition(w[0]).dst != graph.transition(w[1]).src {
                return Err(ModelError::ChainBroken);
            }
        }
        Ok(Path { steps })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn start_state(&self, graph: &VassGraph) -> Option<StateId> {
        self.steps.first().map(|&t| graph.transition(t).src)
    }

    pub fn end_state(&self, graph: &VassGraph) -> Option<StateId> {
        self.steps.last().map(|&t| graph.transition(t).dst)
    }

    pub fn concat(mut self, other: &Path) -> Path {
        self.steps.extend_from_slice(&other.steps);
        self
    }

    pub fn repeat(&self, times: usize) -> Path {
        let mut steps = Vec::with_capacity(self.steps.len() * times);
        for _ in 0..times {
            steps.extend_from_slice(&self.steps);
        }
        Path { steps }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("transition {transition:?} does not start at state {state:?}")]
    SourceMismatch { transition: TransId, state: StateId },

    #[error("step {step} leaves the domain in dimension {dim}")]
    DomainViolation { step: usize, dim: usize },

    #[error("consecutive transitions are not chained")]
    ChainBroken,

    #[error("dimension mismatch")]
    DimensionMismatch,
}

/// One move: fires transition `t` from configuration `c` in the given domain.
pub fn step(
    graph: &VassGraph,
    c: &Configuration,
    t: TransId,
    domain: Domain,
) -> Result<Configuration, ModelError> {
    let tr = graph.transition(t);
    if tr.src != c.state {
        return Err(ModelError::SourceMismatch { transition: t, state: c.state });
    }
    if c.location.dim() != graph.dim() {
        return Err(ModelError::DimensionMismatch);
    }
    let mut entries = Vec::with_capacity(graph.dim());
    for (i, (e, delta)) in c.location.entries().iter().zip(&tr.disp).enumerate() {
        let next = match (e, domain) {
            (ExtNat::Omega, Domain::NatOmega) => ExtNat::Omega,
            (ExtNat::Omega, _) => return Err(ModelError::DomainViolation { step: 0, dim: i }),
            (ExtNat::Fin(v), Domain::Integer) => ExtNat::Fin(v + delta),
            (ExtNat::Fin(v), _) => {
                let sum = v + delta;
                if sum.is_negative() {
                    return Err(ModelError::DomainViolation { step: 0, dim: i });
                }
                ExtNat::Fin(sum)
            }
        };
        entries.push(next);
    }
    Ok(Configuration::new(tr.dst, ExtVector::new(entries)))
}

/// Folds `step` over a path. On failure reports the index of the first
/// offending step. A successful run in `Domain::Nat` is a walk.
pub fn run_path(
    graph: &VassGraph,
    c: &Configuration,
    path: &Path,
    domain: Domain,
) -> Result<Configuration, ModelError> {
    let mut current = c.clone();
    for (idx, &t) in path.steps.iter().enumerate() {
        current = step(graph, &current, t, domain).map_err(|e| match e {
            ModelError::DomainViolation { dim, .. } => {
                ModelError::DomainViolation { step: idx, dim }
            }
            other => other,
        })?;
    }
    Ok(current)
}

/// Δ(π): the sum of displacements along the path.
pub fn displacement(graph: &VassGraph, path: &Path) -> Vec<Int> {
    let mut acc = vec_zero(graph.dim());
    for &t in &path.steps {
        acc = vec_add(&acc, &graph.transition(t).disp);
    }
    acc
}

/// ℘(π): per-transition occurrence counts.
pub fn parikh(graph: &VassGraph, path: &Path) -> BTreeMap<TransId, Int> {
    let mut image = BTreeMap::new();
    for &t in &path.steps {
        *image.entry(t).or_insert_with(Int::zero) += 1;
    }
    let _ = graph;
    image
}

/// Δ(℘): displacement of a Parikh image.
pub fn parikh_displacement(graph: &VassGraph, image: &BTreeMap<TransId, Int>) -> Vec<Int> {
    let mut acc = vec_zero(graph.dim());
    for (&t, count) in image {
        acc = vec_add(&acc, &vec_scale(count, &graph.transition(t).disp));
    }
    acc
}

/// Per-coordinate sign constraint of a zone.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Sign {
    Ge,
    Le,
}

/// An orthant signature (one sign constraint per coordinate).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZoneSig(pub Vec<Sign>);

impl ZoneSig {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Every signature of dimension `d`, in lexicographic order (Ge < Le).
    pub fn all(d: usize) -> Vec<ZoneSig> {
        let mut out = vec![ZoneSig(Vec::new())];
        for _ in 0..d {
            out = out
                .into_iter()
                .flat_map(|z| {
                    [Sign::Ge, Sign::Le].into_iter().map(move |s| {
                        let mut v = z.0.clone();
                        v.push(s);
                        ZoneSig(v)
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Debug for ZoneSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", if *s == Sign::Ge { ">=" } else { "<=" })?;
        }
        write!(f, ")")
    }
}

/// Does `v` satisfy the signature? Zero entries satisfy both signs.
pub fn in_zone(v: &[Int], z: &ZoneSig) -> bool {
    v.len() == z.dim()
        && v.iter().zip(&z.0).all(|(x, s)| match s {
            Sign::Ge => !x.is_negative(),
            Sign::Le => !x.is_positive(),
        })
}

/// All signatures `v` satisfies. A vector with no zero entries satisfies
/// exactly one.
pub fn zone_of(v: &[Int]) -> Vec<ZoneSig> {
    ZoneSig::all(v.len()).into_iter().filter(|z| in_zone(v, z)).collect()
}

/// The canonical signature: prefers ≥ on zero entries.
pub fn canonical_zone(v: &[Int]) -> ZoneSig {
    ZoneSig(
        v.iter()
            .map(|x| if x.is_negative() { Sign::Le } else { Sign::Ge })
            .collect(),
    )
}

/// Rank vector (r_d, r_{d−1}, …, r_0): counts of transitions by the dimension
/// of the cycle space they touch. Compared lexicographically from r_d down.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct RankVector(pub Vec<usize>);

impl RankVector {
    pub fn zero(d: usize) -> Self {
        RankVector(vec![0; d + 1])
    }

    /// Entry r_k, where k is a cycle-space dimension.
    pub fn count_for_dim(&self, k: usize) -> usize {
        let d = self.0.len() - 1;
        self.0[d - k]
    }

    pub fn add(&self, other: &RankVector) -> RankVector {
        assert_eq!(self.0.len(), other.0.len());
        RankVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for RankVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two states p ⇄ q with a self loop on q; the running example used
    /// throughout the test suite.
    pub fn two_state_example() -> VassGraph {
        let mut g = VassGraph::new(3);
        let p = g.add_state("p");
        let q = g.add_state("q");
        g.add_transition_named("t1", p, q, vec_from_i64(&[0, -1, -2]));
        g.add_transition_named("t2", q, p, vec_from_i64(&[1, 1, 0]));
        g.add_transition_named("t3", q, q, vec_from_i64(&[0, 1, 2]));
        g.set_io(p, p);
        g
    }

    #[test]
    fn step_examples() {
        let g = two_state_example();
        let p = g.state_by_name("p").unwrap();
        let c = Configuration::finite(p, &[22, 22, 22]);
        let next = step(&g, &c, TransId(0), Domain::Nat).unwrap();
        assert_eq!(next.state, g.state_by_name("q").unwrap());
        assert_eq!(next.location, ExtVector::finite(&[22, 21, 20]));

        // Identity displacement leaves the location unchanged.
        let mut g2 = VassGraph::new(3);
        let s = g2.add_state("s");
        g2.add_transition(s, s, vec_zero(3));
        g2.set_io(s, s);
        let c0 = Configuration::finite(s, &[0, 0, 0]);
        let same = step(&g2, &c0, TransId(0), Domain::Nat).unwrap();
        assert_eq!(same.location, c0.location);

        // Immediate negativity in ℕ³.
        let zero = Configuration::finite(p, &[0, 0, 0]);
        let err = step(&g, &zero, TransId(0), Domain::Nat).unwrap_err();
        assert!(matches!(err, ModelError::DomainViolation { .. }));

        // The same move is fine over ℤ³.
        assert!(step(&g, &zero, TransId(0), Domain::Integer).is_ok());

        // ω absorbs.
        let mut loc = ExtVector::finite(&[0, 5, 5]);
        loc.set_entry(0, ExtNat::Omega);
        let cw = Configuration::new(p, loc);
        let next = step(&g, &cw, TransId(0), Domain::NatOmega).unwrap();
        assert!(next.location.entry(0).is_omega());
        assert_eq!(next.location.entry(1), &ExtNat::fin(4));
    }

    /// The walk t1 t3^20 t2 (t1 t2)^19 from p(22,22,22).
    pub fn worked_walk(g: &VassGraph) -> Path {
        let t1 = TransId(0);
        let t2 = TransId(1);
        let t3 = TransId(2);
        let mut steps = vec![t1];
        steps.extend(std::iter::repeat(t3).take(20));
        steps.push(t2);
        for _ in 0..19 {
            steps.push(t1);
            steps.push(t2);
        }
        Path::new(g, steps).unwrap()
    }

    #[test]
    fn run_path_examples() {
        let g = two_state_example();
        let p = g.state_by_name("p").unwrap();
        let walk = worked_walk(&g);
        let end = run_path(&g, &Configuration::finite(p, &[22, 22, 22]), &walk, Domain::Nat)
            .unwrap();
        assert_eq!(end.state, p);
        assert_eq!(end.location, ExtVector::finite(&[42, 42, 22]));

        // Empty path.
        let c = Configuration::finite(p, &[5, 0, 3]);
        let same = run_path(&g, &c, &Path::empty(), Domain::Nat).unwrap();
        assert_eq!(same, c);

        // Single-state loop graph from the flat-walk example:
        // (t1 t2)^100 t2^50 from (50,50,50) ends at (150,200,100).
        let mut g2 = VassGraph::new(3);
        let s = g2.add_state("p");
        let t1 = g2.add_transition_named("t1", s, s, vec_from_i64(&[1, 0, -1]));
        let t2 = g2.add_transition_named("t2", s, s, vec_from_i64(&[0, 1, 1]));
        g2.set_io(s, s);
        let mut steps = Vec::new();
        for _ in 0..100 {
            steps.push(t1);
            steps.push(t2);
        }
        steps.extend(std::iter::repeat(t2).take(50));
        let walk = Path::new(&g2, steps).unwrap();
        let end = run_path(&g2, &Configuration::finite(s, &[50, 50, 50]), &walk, Domain::Nat)
            .unwrap();
        assert_eq!(end.location, ExtVector::finite(&[150, 200, 100]));
    }

    #[test]
    fn displacement_and_parikh() {
        let g = two_state_example();
        let walk = worked_walk(&g);
        assert_eq!(displacement(&g, &walk), vec_from_i64(&[20, 20, 0]));
        assert_eq!(displacement(&g, &Path::empty()), vec_zero(3));

        let image = parikh(&g, &walk);
        assert_eq!(image[&TransId(0)], int(20));
        assert_eq!(image[&TransId(1)], int(20));
        assert_eq!(image[&TransId(2)], int(20));
        assert_eq!(parikh_displacement(&g, &image), displacement(&g, &walk));

        // Endpoint difference agrees with the summed displacement.
        let p = g.state_by_name("p").unwrap();
        let start = ExtVector::finite(&[22, 22, 22]);
        let end = run_path(&g, &Configuration::new(p, start.clone()), &walk, Domain::Nat)
            .unwrap();
        let diff = vec_sub(&end.location.to_finite().unwrap(), &start.to_finite().unwrap());
        assert_eq!(diff, displacement(&g, &walk));
    }

    #[test]
    fn walk_monotonicity() {
        // If a walk succeeds from m it succeeds from m + δ for δ ≥ 0.
        let g = two_state_example();
        let p = g.state_by_name("p").unwrap();
        let walk = worked_walk(&g);
        for delta in [[1i64, 0, 0], [0, 3, 0], [2, 2, 7]] {
            let m = [22 + delta[0], 22 + delta[1], 22 + delta[2]];
            assert!(run_path(&g, &Configuration::finite(p, &m), &walk, Domain::Nat).is_ok());
        }
    }

    #[test]
    fn ext_vector_order() {
        let u = ExtVector::finite(&[1, 2, 3]);
        let mut w = ExtVector::finite(&[1, 0, 3]);
        w.set_entry(1, ExtNat::Omega);
        assert!(u.below(&w));
        assert!(!w.below(&u));
        assert!(u.below(&u));
        // Below a finite vector means equality.
        let v = ExtVector::finite(&[1, 2, 3]);
        assert!(u.below(&v) && v.below(&u));
        assert_eq!(u.norm1(), int(6));
        assert_eq!(w.norm1(), int(4));
    }

    #[test]
    fn zones() {
        let v = vec_from_i64(&[20, 20, 0]);
        let zs = zone_of(&v);
        assert_eq!(zs.len(), 2);
        assert!(zs.contains(&ZoneSig(vec![Sign::Ge, Sign::Ge, Sign::Ge])));
        assert!(zs.contains(&ZoneSig(vec![Sign::Ge, Sign::Ge, Sign::Le])));
        assert_eq!(canonical_zone(&v), ZoneSig(vec![Sign::Ge, Sign::Ge, Sign::Ge]));

        assert_eq!(zone_of(&vec_zero(3)).len(), 8);

        let w = vec_from_i64(&[-1, 2, -3]);
        let zs = zone_of(&w);
        assert_eq!(zs, vec![ZoneSig(vec![Sign::Le, Sign::Ge, Sign::Le])]);
    }

    #[test]
    fn rank_vector_order() {
        // Lexicographic from r_d down.
        let a = RankVector(vec![0, 3, 0, 0]);
        let b = RankVector(vec![0, 2, 9, 9]);
        assert!(b < a);
        assert_eq!(a.count_for_dim(2), 3);
        assert_eq!(a.total(), 3);
    }
}
