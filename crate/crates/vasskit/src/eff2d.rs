//! Machinery for effectively 2-dimensional 3-VASS: plane/zone analysis,
//! projection to 2-VASS with exact lifting, band encodings near axis planes,
//! region planning, and a scheme-based reachability search.
//!
//! When the cycle space V_G is a plane, reachable locations stay on a coset
//! of that plane, so the sign of one coordinate is determined by the other
//! two for displacements in V_G. That makes a two-axis projection lossless
//! for zone reasoning: schemes found in the projected 2-VASS lift back and
//! are re-validated by the full 3-dimensional scheme system, so the
//! projection only ever *proposes* candidates and soundness never depends on
//! it.

use num::{One, Signed, Zero};
use thiserror::Error;

use crate::cycles::{cycle_space, CycleSpace};
use crate::diophantine::Limits;
use crate::linalg::{rat_of, Rat};
use crate::lps::{
    extract_walk, lps_system, LinearPathScheme, LpsError, LpsSolution, PumpConstants,
};
use crate::vass::{
    in_zone, run_path, vec_sub, Configuration, Domain, Int, Path, Sign, StateId, TransId,
    VassGraph, ZoneSig,
};

#[derive(Debug, Error)]
pub enum Eff2dError {
    #[error("graph is effectively 3-dimensional")]
    NotEff2D,

    #[error("the dropped coordinate is not a function of the kept ones on the cycle space")]
    LiftUndefined,

    #[error("locations must be finite")]
    NotFinite,

    #[error(transparent)]
    Lps(#[from] LpsError),
}

/// A 2-dimensional subspace of ℚ³ given by an integer normal (gcd 1) and two
/// integer spanning vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plane2D {
    pub normal: [Int; 3],
    pub basis: [Vec<Int>; 2],
}

fn cross(a: &[Int], b: &[Int]) -> [Int; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

impl Plane2D {
    /// The plane of a 2-dimensional cycle space.
    pub fn from_space(space: &CycleSpace) -> Option<Plane2D> {
        if space.dim() != 2 {
            return None;
        }
        let b0 = space.basis()[0].clone();
        let b1 = space.basis()[1].clone();
        let raw = cross(&b0, &b1);
        let mut g = Int::zero();
        for v in &raw {
            g = num::integer::gcd(g.clone(), v.abs());
        }
        let mut normal = raw.map(|v| if g.is_one() { v } else { v / &g });
        if normal.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative()) {
            for v in normal.iter_mut() {
                *v = -v.clone();
            }
        }
        Some(Plane2D { normal, basis: [b0, b1] })
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        let dot: Int = self.normal.iter().zip(v).map(|(a, b)| a * b).sum();
        dot.is_zero()
    }
}

/// Outcome of the zone-axes analysis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxesOutcome {
    /// Sign constraints on these two axes imply the full zone constraint for
    /// plane members.
    Axes(usize, usize),
    /// The plane's intersection with the zone does not span the plane (or no
    /// axis pair works); the caller handles the low-dimensional case itself.
    Degenerate,
}

fn sign_unit(s: Sign) -> i8 {
    match s {
        Sign::Ge => 1,
        Sign::Le => -1,
    }
}

/// Finds axes (i, j) such that m(i)#ᵢ0 and m(j)#ⱼ0 imply m ∈ Z for every m
/// in the plane. Exact: the dropped coordinate is an explicit rational
/// combination of the kept ones, so the implication reduces to two sign
/// conditions on the combination's coefficients.
pub fn subspace_zone_axes(plane: &Plane2D, zone: &ZoneSig) -> AxesOutcome {
    assert_eq!(zone.dim(), 3);
    // Does V ∩ Z span V? The extreme rays of the intersection lie on the
    // coordinate planes, so it suffices to test the six edge directions
    // (plane ∩ {x_l = 0} up to sign).
    let mut span = crate::linalg::RowSpace::new();
    for l in 0..3 {
        let mut unit = [Int::zero(), Int::zero(), Int::zero()];
        unit[l] = Int::one();
        let dir = cross(&plane.normal, &unit);
        for candidate in [dir.clone(), dir.map(|v| -v)] {
            if candidate.iter().all(|v| v.is_zero()) {
                continue;
            }
            if in_zone(&candidate, zone) {
                span.insert(&crate::linalg::rats_of(&candidate));
            }
        }
    }
    if span.dim() < 2 {
        return AxesOutcome::Degenerate;
    }

    // Candidate pairs, preferring small lift denominators |a_k|.
    let mut qualifying: Vec<(Int, usize, usize)> = Vec::new();
    for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        let a = &plane.normal;
        if a[k].is_zero() {
            continue;
        }
        let s = |d: usize| Int::from(sign_unit(zone.0[d]));
        // For m ∈ V with m(i), m(j) on their sides: m(k)·s_k ≥ 0 iff both
        // −a_i·s_i·s_k/a_k and −a_j·s_j·s_k/a_k are ≥ 0.
        let cond_i: Int = &a[i] * s(i) * s(k) * &a[k];
        let cond_j: Int = &a[j] * s(j) * s(k) * &a[k];
        if !cond_i.is_positive() && !cond_j.is_positive() {
            qualifying.push((a[k].abs(), i, j));
        }
    }
    qualifying.sort();
    match qualifying.first() {
        Some(&(_, i, j)) => AxesOutcome::Axes(i, j),
        None => AxesOutcome::Degenerate,
    }
}

/// Exact rational lift from kept axes back to three dimensions, valid for
/// vectors in the plane.
#[derive(Clone, Debug)]
pub struct Projection {
    pub kept: (usize, usize),
    pub dropped: usize,
    lift: (Rat, Rat),
}

impl Projection {
    pub fn project_vec(&self, v: &[Int]) -> Vec<Int> {
        vec![v[self.kept.0].clone(), v[self.kept.1].clone()]
    }

    /// Lifts a projected displacement; `None` when the dropped coordinate
    /// comes out fractional (the vector was not a plane member).
    pub fn lift_vec(&self, v2: &[Int]) -> Option<Vec<Int>> {
        let dropped = &self.lift.0 * rat_of(&v2[0]) + &self.lift.1 * rat_of(&v2[1]);
        if !dropped.is_integer() {
            return None;
        }
        let mut out = vec![Int::zero(); 3];
        out[self.kept.0] = v2[0].clone();
        out[self.kept.1] = v2[1].clone();
        out[self.dropped] = dropped.to_integer();
        Some(out)
    }
}

/// Projects an effectively 2-dimensional 3-VASS onto the kept axes: states
/// are preserved and every displacement keeps its two coordinates. The
/// transition ids (and origins) are in 1-1 correspondence with the original.
pub fn project(
    graph: &VassGraph,
    plane: &Plane2D,
    axes: (usize, usize),
) -> Result<(VassGraph, Projection), Eff2dError> {
    let (i, j) = axes;
    let k = 3 - i - j;
    if plane.normal[k].is_zero() {
        return Err(Eff2dError::LiftUndefined);
    }
    let lift = (
        -rat_of(&plane.normal[i]) / rat_of(&plane.normal[k]),
        -rat_of(&plane.normal[j]) / rat_of(&plane.normal[k]),
    );
    let projection = Projection { kept: (i, j), dropped: k, lift };

    let mut g2 = VassGraph::new(2);
    for s in graph.state_ids() {
        g2.add_state(graph.state_name(s));
    }
    for t in graph.trans_ids() {
        let tr = graph.transition(t);
        g2.add_derived_transition(
            graph.trans_name(t),
            tr.src,
            tr.dst,
            projection.project_vec(&tr.disp),
            tr.origin,
        );
    }
    g2.set_io(graph.q_in(), graph.q_out());
    Ok((g2, projection))
}

/// Structural preimage of a projected scheme: transition ids are shared, so
/// the scheme carries over verbatim; the three-dimensional scheme system
/// re-validates everything at solve time.
pub fn lift_scheme(
    original: &VassGraph,
    scheme: &LinearPathScheme,
) -> Result<LinearPathScheme, LpsError> {
    LinearPathScheme::new(
        original,
        scheme.start_state(),
        scheme.head().clone(),
        scheme.segments().to_vec(),
    )
}

/// A 2-VASS simulating walks of `graph` that keep one axis within a band:
/// the bounded coordinate moves into the state.
#[derive(Clone, Debug)]
pub struct BandEncoding {
    pub graph: VassGraph,
    pub axis: usize,
    pub bound: usize,
}

impl BandEncoding {
    pub fn state_of(&self, q: StateId, level: usize) -> StateId {
        StateId(q.0 * (self.bound + 1) + level)
    }

    pub fn decode_state(&self, s: StateId) -> (StateId, usize) {
        (StateId(s.0 / (self.bound + 1)), s.0 % (self.bound + 1))
    }
}

/// Builds the band encoding for `axis` with levels 0..=bound. Transitions
/// whose level leaves the band are discarded.
pub fn band_encode(graph: &VassGraph, axis: usize, bound: usize) -> BandEncoding {
    assert_eq!(graph.dim(), 3);
    let mut g2 = VassGraph::new(2);
    for q in graph.state_ids() {
        for level in 0..=bound {
            g2.add_state(format!("{}@{}", graph.state_name(q), level));
        }
    }
    let enc = BandEncoding { graph: g2, axis, bound };
    let mut g2 = enc.graph;
    for t in graph.trans_ids() {
        let tr = graph.transition(t);
        let delta = &tr.disp[axis];
        let rest: Vec<Int> = (0..3)
            .filter(|&d| d != axis)
            .map(|d| tr.disp[d].clone())
            .collect();
        for level in 0..=bound {
            let next = Int::from(level) + delta;
            if next.is_negative() || next > Int::from(bound) {
                continue;
            }
            let next = usize::try_from(&next).expect("level fits");
            g2.add_derived_transition(
                format!("{}@{}", graph.trans_name(t), level),
                StateId(tr.src.0 * (bound + 1) + level),
                StateId(tr.dst.0 * (bound + 1) + next),
                rest.clone(),
                tr.origin,
            );
        }
    }
    BandEncoding { graph: g2, axis, bound }
}

/// Region kinds used by the search planner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegionSpec {
    /// All coordinates at least twice the displacement margin.
    HighOctant,
    /// One axis confined to a band.
    Band(usize),
    /// Union of the three bands.
    BandUnion,
    /// Anchor points shared by the high octant and the band union.
    Overlap,
}

/// Numeric parameters of the region split.
#[derive(Clone, Debug)]
pub struct RegionConstants {
    pub margin: Int,
    pub crossing_width: Int,
    pub turn_budget: Int,
    pub band_bound: Int,
    pub max_segments: Int,
}

impl RegionConstants {
    pub fn new(graph: &VassGraph, exponent: u32) -> Self {
        let constants = PumpConstants::new(graph, exponent);
        let margin = constants.high_threshold() / 2;
        let q = Int::from(graph.state_count());
        let turn_budget = graph.max_trans_norm() * &q;
        // 𝒟′ = |Q|·(2𝒟+1)·‖T‖ bounds how far a crossing-free stretch drifts;
        // the crossing count itself is |Q|·(2𝒟+1)².
        let crossing_width = &q * (&margin * 2 + 1) * graph.trans_norm();
        let band_bound = &margin * 2 + &turn_budget * 2;
        let width: Int = &margin * 2 + 1;
        let max_segments = Int::from(2) * &q * width.pow(2) + 1;
        RegionConstants { margin, crossing_width, turn_budget, band_bound, max_segments }
    }

    pub fn in_high_octant(&self, v: &[Int]) -> bool {
        let threshold: Int = &self.margin * 2;
        v.iter().all(|x| x >= &threshold)
    }

    pub fn in_band(&self, v: &[Int], axis: usize) -> bool {
        v[axis] <= self.band_bound
    }

    pub fn in_band_union(&self, v: &[Int]) -> bool {
        (0..v.len()).any(|axis| self.in_band(v, axis))
    }
}

/// A segmentation plan for one reachability query.
#[derive(Clone, Debug)]
pub struct RegionPlan {
    pub segments: Vec<RegionSpec>,
    pub max_segments: Int,
}

/// Plans which regions a witness walk may traverse, from the endpoint
/// memberships. The plan drives strategy order in `eff2d_reach`; it never
/// affects soundness.
pub fn region_decompose(
    graph: &VassGraph,
    from: &Configuration,
    to: &Configuration,
    exponent: u32,
) -> Result<RegionPlan, Eff2dError> {
    let constants = RegionConstants::new(graph, exponent);
    let m = from.location.to_finite().ok_or(Eff2dError::NotFinite)?;
    let n = to.location.to_finite().ok_or(Eff2dError::NotFinite)?;
    let max_segments = constants.max_segments.clone();
    if from.state == to.state && m == n {
        return Ok(RegionPlan { segments: Vec::new(), max_segments });
    }
    let mut segments = Vec::new();
    let m_high = constants.in_high_octant(&m);
    let n_high = constants.in_high_octant(&n);
    if m_high && n_high {
        segments.push(RegionSpec::HighOctant);
    } else {
        if !m_high {
            match (0..3).find(|&axis| constants.in_band(&m, axis)) {
                Some(axis) => segments.push(RegionSpec::Band(axis)),
                None => segments.push(RegionSpec::BandUnion),
            }
            segments.push(RegionSpec::Overlap);
        }
        segments.push(RegionSpec::HighOctant);
        if !n_high {
            segments.push(RegionSpec::Overlap);
            match (0..3).find(|&axis| constants.in_band(&n, axis)) {
                Some(axis) => segments.push(RegionSpec::Band(axis)),
                None => segments.push(RegionSpec::BandUnion),
            }
        }
    }
    Ok(RegionPlan { segments, max_segments })
}

/// Search budget for `eff2d_reach`.
#[derive(Clone, Debug)]
pub struct Eff2dBudget {
    /// Max scheme length searched.
    pub scheme_len: usize,
    /// Max cycles per scheme.
    pub max_cycles: usize,
    /// Exponent for the region constants.
    pub region_exponent: u32,
    /// Cap on band-encoding levels.
    pub band_cap: usize,
}

impl Default for Eff2dBudget {
    fn default() -> Self {
        Eff2dBudget { scheme_len: 6, max_cycles: 3, region_exponent: 0, band_cap: 64 }
    }
}

/// How a walk was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchStrategy {
    Empty,
    Projected { axes: (usize, usize) },
    Banded { axis: usize },
    Direct,
}

#[derive(Clone, Debug)]
pub struct Eff2dOutcome {
    pub walk: Option<(Path, SearchStrategy)>,
    pub schemes_tried: usize,
    /// A negative answer is only relative to the searched bounds.
    pub bound_relative: bool,
}

/// Scheme-based reachability for effectively ≤2-dimensional 3-VASS: proposes
/// schemes via projection and band encodings guided by the region plan, falls
/// back to direct enumeration, and validates every returned walk by replay.
pub fn eff2d_reach(
    graph: &VassGraph,
    from: &Configuration,
    to: &Configuration,
    budget: &Eff2dBudget,
    limits: &Limits,
) -> Result<Eff2dOutcome, Eff2dError> {
    assert_eq!(graph.dim(), 3);
    let space = cycle_space(graph);
    if space.dim() == 3 {
        return Err(Eff2dError::NotEff2D);
    }
    let m = from.location.to_finite().ok_or(Eff2dError::NotFinite)?;
    let n = to.location.to_finite().ok_or(Eff2dError::NotFinite)?;

    let mut tried = 0usize;

    if from.state == to.state && m == n {
        return Ok(Eff2dOutcome {
            walk: Some((Path::empty(), SearchStrategy::Empty)),
            schemes_tried: tried,
            bound_relative: false,
        });
    }

    let plan = region_decompose(graph, from, to, budget.region_exponent)?;

    // Candidate generator 1: project onto zone axes, enumerate 2-dimensional
    // schemes, lift and solve the full 3-dimensional system.
    if space.dim() == 2 {
        if let Some(plane) = Plane2D::from_space(&space) {
            let delta = vec_sub(&n, &m);
            for zone in crate::vass::zone_of(&delta) {
                let AxesOutcome::Axes(i, j) = subspace_zone_axes(&plane, &zone) else {
                    continue;
                };
                let Ok((projected, _)) = project(graph, &plane, (i, j)) else {
                    continue;
                };
                if let Some(walk) = search_projected(
                    graph,
                    &projected,
                    from,
                    to,
                    budget,
                    limits,
                    &mut tried,
                )? {
                    return Ok(Eff2dOutcome {
                        walk: Some((walk, SearchStrategy::Projected { axes: (i, j) })),
                        schemes_tried: tried,
                        bound_relative: false,
                    });
                }
            }
        }
    }

    // Candidate generator 2: walks hugging an axis plane, found inside a band
    // encoding (preferred when the plan involves bands).
    let banded_first = plan
        .segments
        .iter()
        .any(|s| matches!(s, RegionSpec::Band(_) | RegionSpec::BandUnion));
    if banded_first {
        for axis in 0..3 {
            let Ok(lo) = usize::try_from(&m[axis]) else { continue };
            let Ok(hi) = usize::try_from(&n[axis]) else { continue };
            if lo > budget.band_cap || hi > budget.band_cap {
                continue;
            }
            if let Some(walk) =
                search_banded(graph, from, to, axis, budget, limits, &mut tried)?
            {
                return Ok(Eff2dOutcome {
                    walk: Some((walk, SearchStrategy::Banded { axis })),
                    schemes_tried: tried,
                    bound_relative: false,
                });
            }
        }
    }

    // Fallback: direct scheme enumeration on the full graph.
    let direct = crate::lps::lps_reach(
        graph,
        from,
        to,
        budget.scheme_len,
        budget.max_cycles,
        limits,
    )?;
    tried += direct.schemes_tried;
    if let Some((_, _, path)) = direct.walk {
        return Ok(Eff2dOutcome {
            walk: Some((path, SearchStrategy::Direct)),
            schemes_tried: tried,
            bound_relative: false,
        });
    }
    Ok(Eff2dOutcome { walk: None, schemes_tried: tried, bound_relative: true })
}

fn search_projected(
    graph: &VassGraph,
    projected: &VassGraph,
    from: &Configuration,
    to: &Configuration,
    budget: &Eff2dBudget,
    limits: &Limits,
    tried: &mut usize,
) -> Result<Option<Path>, Eff2dError> {
    let mut found: Option<Path> = None;
    let mut error: Option<Eff2dError> = None;
    crate::lps::for_each_scheme(
        projected,
        from.state,
        to.state,
        budget.scheme_len,
        budget.max_cycles,
        |scheme2| {
            let lifted = match lift_scheme(graph, scheme2) {
                Ok(s) => s,
                Err(e) => {
                    error = Some(e.into());
                    return std::ops::ControlFlow::Break(());
                }
            };
            *tried += 1;
            match try_scheme(graph, &lifted, from, to, limits) {
                Err(e) => {
                    error = Some(e);
                    std::ops::ControlFlow::Break(())
                }
                Ok(Some(path)) => {
                    found = Some(path);
                    std::ops::ControlFlow::Break(())
                }
                Ok(None) => std::ops::ControlFlow::Continue(()),
            }
        },
    );
    match error {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

fn search_banded(
    graph: &VassGraph,
    from: &Configuration,
    to: &Configuration,
    axis: usize,
    budget: &Eff2dBudget,
    limits: &Limits,
    tried: &mut usize,
) -> Result<Option<Path>, Eff2dError> {
    let m = from.location.to_finite().expect("checked finite");
    let n = to.location.to_finite().expect("checked finite");
    let enc = band_encode(graph, axis, budget.band_cap);
    let from_level = usize::try_from(&m[axis]).expect("within cap");
    let to_level = usize::try_from(&n[axis]).expect("within cap");
    let rest = |v: &[Int]| -> Vec<i64> {
        (0..3)
            .filter(|&d| d != axis)
            .map(|d| i64::try_from(&v[d]).expect("desk scale"))
            .collect()
    };
    let from2 = Configuration::finite(enc.state_of(from.state, from_level), &rest(&m));
    let to2 = Configuration::finite(enc.state_of(to.state, to_level), &rest(&n));
    let out = crate::lps::lps_reach(
        &enc.graph,
        &from2,
        &to2,
        budget.scheme_len,
        budget.max_cycles,
        limits,
    )?;
    *tried += out.schemes_tried;
    let Some((_, _, path2)) = out.walk else {
        return Ok(None);
    };
    // Map back through origins and replay on the original graph.
    let steps: Vec<TransId> = path2
        .steps
        .iter()
        .map(|&t| enc.graph.transition(t).origin.expect("band transitions carry origins"))
        .collect();
    let path = Path { steps };
    let end = run_path(graph, from, &path, Domain::Nat).map_err(|e| {
        LpsError::InternalInconsistency(format!("band walk does not replay: {e}"))
    })?;
    if end.location.to_finite().as_deref() != Some(&n[..]) || end.state != to.state {
        return Err(Eff2dError::Lps(LpsError::InternalInconsistency(
            "band walk endpoint mismatch".into(),
        )));
    }
    Ok(Some(path))
}

fn try_scheme(
    graph: &VassGraph,
    scheme: &LinearPathScheme,
    from: &Configuration,
    to: &Configuration,
    limits: &Limits,
) -> Result<Option<Path>, Eff2dError> {
    let sys = lps_system(graph, scheme, &from.location, &to.location);
    match sys.solve(limits) {
        Err(e) => Err(e.into()),
        Ok(None) => Ok(None),
        Ok(Some(solution)) => {
            let path = extract_walk(graph, scheme, &solution)?;
            Ok(Some(path))
        }
    }
}

/// Solves one lifted scheme against explicit endpoints; exposed for the
/// decision procedure in the solver module.
pub fn solve_scheme_between(
    graph: &VassGraph,
    scheme: &LinearPathScheme,
    from: &Configuration,
    to: &Configuration,
    limits: &Limits,
) -> Result<Option<(LpsSolution, Path)>, Eff2dError> {
    let sys = lps_system(graph, scheme, &from.location, &to.location);
    match sys.solve(limits)? {
        None => Ok(None),
        Some(solution) => {
            let path = extract_walk(graph, scheme, &solution)?;
            Ok(Some((solution, path)))
        }
    }
}
