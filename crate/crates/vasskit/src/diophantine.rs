//! Exact solving of linear Diophantine systems over ℕ.
//!
//! Three services back the rest of the crate:
//!
//! * Hilbert bases of homogeneous systems `Ax = 0`, computed by a
//!   Pottier-style completion: start from unit vectors, extend a candidate by
//!   a unit step only when the step moves its image toward zero, prune
//!   candidates dominated by an already-found solution. Breadth-first order
//!   makes every emitted vector ≤-minimal.
//! * Minimal solution sets of affine systems `Ax = r`, derived from the
//!   Hilbert basis of `Ax − x′r = 0` (the x′ = 1 slice generates, the
//!   x′ = 0 slice shifts).
//! * One ≤-minimal solution of an affine system plus per-variable
//!   boundedness flags, via branch-and-bound integer programming with a
//!   total-norm objective and the Hilbert basis of the homogenized system.
//!
//! Resource caps fail loudly; a truncated answer is never returned as exact.

use std::collections::{BTreeMap, HashSet, VecDeque};

use num::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{rank_int, rat_of, Rat};
use crate::simplex::{solve_ilp, IlpOutcome, Program, Sense};
use crate::vass::Int;

/// An integer equation system `A x = r` over nonnegative unknowns, with an
/// optional partial assignment pinning some variables to constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiophantineSystem {
    cols: usize,
    a: Vec<Vec<Int>>,
    rhs: Vec<Int>,
    fixed: BTreeMap<usize, Int>,
    var_names: Vec<String>,
}

impl DiophantineSystem {
    pub fn new(cols: usize) -> Self {
        DiophantineSystem {
            cols,
            a: Vec::new(),
            rhs: Vec::new(),
            fixed: BTreeMap::new(),
            var_names: (0..cols).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn from_matrix(a: Vec<Vec<Int>>, rhs: Vec<Int>) -> Self {
        let cols = a.first().map_or(0, |r| r.len());
        assert!(a.iter().all(|r| r.len() == cols));
        assert_eq!(a.len(), rhs.len());
        let mut sys = DiophantineSystem::new(cols);
        sys.a = a;
        sys.rhs = rhs;
        sys
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.a.len()
    }

    pub fn matrix(&self) -> &[Vec<Int>] {
        &self.a
    }

    pub fn rhs(&self) -> &[Int] {
        &self.rhs
    }

    pub fn push_row(&mut self, coeffs: Vec<Int>, rhs: Int) {
        assert_eq!(coeffs.len(), self.cols);
        self.a.push(coeffs);
        self.rhs.push(rhs);
    }

    /// Pins variable `var` to a nonnegative constant.
    pub fn fix_var(&mut self, var: usize, value: Int) {
        assert!(!value.is_negative());
        self.fixed.insert(var, value);
    }

    pub fn fixed(&self) -> &BTreeMap<usize, Int> {
        &self.fixed
    }

    pub fn set_var_name(&mut self, var: usize, name: impl Into<String>) {
        self.var_names[var] = name.into();
    }

    pub fn var_name(&self, var: usize) -> &str {
        &self.var_names[var]
    }

    pub fn is_homogeneous(&self) -> bool {
        self.rhs.iter().all(|v| v.is_zero()) && self.fixed.values().all(|v| v.is_zero())
    }

    /// ‖A‖₁ over the effective matrix (fixed-variable rows included).
    pub fn matrix_norm(&self) -> Int {
        let mut norm: Int = self
            .a
            .iter()
            .flat_map(|row| row.iter())
            .map(|v| v.abs())
            .sum();
        norm += Int::from(self.fixed.len());
        norm
    }

    /// The effective equality matrix: `A` extended with one unit row per
    /// fixed variable.
    fn effective(&self) -> (Vec<Vec<Int>>, Vec<Int>) {
        let mut a = self.a.clone();
        let mut rhs = self.rhs.clone();
        for (&var, value) in &self.fixed {
            let mut row = vec![Int::zero(); self.cols];
            row[var] = Int::one();
            a.push(row);
            rhs.push(value.clone());
        }
        (a, rhs)
    }

    /// Exact check that `x` solves the system.
    pub fn check(&self, x: &[Int]) -> bool {
        if x.len() != self.cols || x.iter().any(|v| v.is_negative()) {
            return false;
        }
        for (row, b) in self.a.iter().zip(&self.rhs) {
            let lhs: Int = row.iter().zip(x).map(|(c, v)| c * v).sum();
            if lhs != *b {
                return false;
            }
        }
        self.fixed.iter().all(|(&var, value)| &x[var] == value)
    }

    /// The homogenized companion: same matrix, zero right-hand side, fixed
    /// variables pinned to zero.
    pub fn homogenized(&self) -> DiophantineSystem {
        let mut sys = self.clone();
        sys.rhs = vec![Int::zero(); sys.a.len()];
        for value in sys.fixed.values_mut() {
            *value = Int::zero();
        }
        sys
    }
}

/// The set of ≤-minimal nontrivial solutions of a homogeneous system, sorted
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertBasis {
    pub vectors: Vec<Vec<Int>>,
}

impl HilbertBasis {
    /// Componentwise sum of the basis; its support marks the unbounded
    /// variables of any satisfiable system sharing this homogeneous part.
    pub fn support_sum(&self, cols: usize) -> Vec<Int> {
        let mut sum = vec![Int::zero(); cols];
        for v in &self.vectors {
            for (s, x) in sum.iter_mut().zip(v) {
                *s += x;
            }
        }
        sum
    }
}

/// Minimal particular solutions and minimal homogeneous shifts of `Ax = r`.
/// Every solution is one element of `particular` plus an ℕ-combination of
/// `homogeneous`; empty `particular` means the system is unsatisfiable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalSolutions {
    pub particular: Vec<Vec<Int>>,
    pub homogeneous: Vec<Vec<Int>>,
}

/// Outcome of `solve_affine`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineOutcome {
    /// A ≤-minimal solution, or `None` when unsatisfiable.
    pub solution: Option<Vec<Int>>,
    /// Per-variable unboundedness over the solution set (all false when
    /// unsatisfiable).
    pub unbounded: Vec<bool>,
}

/// Explicit resource caps. Blowing a cap is an error, not a truncation.
#[derive(Clone, Debug)]
pub struct Limits {
    /// Max completion states (frontier + visited) per Hilbert computation.
    pub hilbert_cap: usize,
    /// Max branch-and-bound nodes per integer program.
    pub ilp_node_cap: usize,
    /// Max results for bounded-assignment enumeration.
    pub enumeration_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { hilbert_cap: 200_000, ilp_node_cap: 4_000, enumeration_cap: 4_096 }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiophantineError {
    #[error("system is not homogeneous")]
    NotHomogeneous,

    #[error("resource limit hit in {what} after {explored} states")]
    ResourceLimit { what: &'static str, explored: usize },

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

/// Hilbert basis of a homogeneous system by completion.
pub fn hilbert_basis(
    sys: &DiophantineSystem,
    limits: &Limits,
) -> Result<HilbertBasis, DiophantineError> {
    if !sys.is_homogeneous() {
        return Err(DiophantineError::NotHomogeneous);
    }
    let (a, _) = sys.effective();
    let banned: Vec<bool> = (0..sys.cols).map(|j| sys.fixed.contains_key(&j)).collect();
    let vectors = completion(&a, sys.cols, &banned, limits)?;

    // Minimal-solution norm bound: ‖m‖₁ ≤ (1 + k·‖A‖₁)^rank(A). Asserted on
    // every element, never assumed.
    let k = Int::from(sys.cols);
    let bound = (Int::one() + k * sys.matrix_norm()).pow(rank_int(&a) as u32);
    for v in &vectors {
        let norm: Int = v.iter().sum();
        assert!(
            norm <= bound,
            "hilbert basis element exceeds the minimal-solution bound"
        );
    }
    Ok(HilbertBasis { vectors })
}

/// The completion loop shared by `hilbert_basis` and `minimal_solutions`.
fn completion(
    a: &[Vec<Int>],
    cols: usize,
    banned: &[bool],
    limits: &Limits,
) -> Result<Vec<Vec<Int>>, DiophantineError> {
    let m = a.len();
    // Column images A·e_j.
    let col_image: Vec<Vec<Int>> = (0..cols)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect();

    let mut basis: Vec<Vec<Int>> = Vec::new();
    let mut frontier: VecDeque<(Vec<Int>, Vec<Int>)> = VecDeque::new();
    let mut visited: HashSet<Vec<Int>> = HashSet::new();
    for j in 0..cols {
        if banned[j] {
            continue;
        }
        let mut t = vec![Int::zero(); cols];
        t[j] = Int::one();
        visited.insert(t.clone());
        frontier.push_back((t, col_image[j].clone()));
    }

    let dominated = |basis: &[Vec<Int>], t: &[Int]| {
        basis.iter().any(|b| b.iter().zip(t).all(|(bi, ti)| bi <= ti))
    };

    while let Some((t, image)) = frontier.pop_front() {
        if dominated(&basis, &t) {
            continue;
        }
        if image.iter().all(|v| v.is_zero()) {
            basis.push(t);
            continue;
        }
        for j in 0..cols {
            if banned[j] {
                continue;
            }
            // Move only toward zero: ⟨A·t, A·e_j⟩ < 0.
            let dot: Int = (0..m).map(|i| &image[i] * &col_image[j][i]).sum();
            if !dot.is_negative() {
                continue;
            }
            let mut next = t.clone();
            next[j] += 1;
            if visited.contains(&next) || dominated(&basis, &next) {
                continue;
            }
            if visited.len() >= limits.hilbert_cap {
                return Err(DiophantineError::ResourceLimit {
                    what: "hilbert completion",
                    explored: visited.len(),
                });
            }
            visited.insert(next.clone());
            let next_image: Vec<Int> =
                image.iter().zip(&col_image[j]).map(|(x, y)| x + y).collect();
            frontier.push_back((next, next_image));
        }
    }

    basis.sort();
    Ok(basis)
}

/// Minimal solutions of `A x = r` via the homogenized system with the extra
/// scaling column.
pub fn minimal_solutions(
    a: &[Vec<Int>],
    rhs: &[Int],
    limits: &Limits,
) -> Result<MinimalSolutions, DiophantineError> {
    assert_eq!(a.len(), rhs.len());
    let cols = a.first().map_or(0, |r| r.len());
    let extended: Vec<Vec<Int>> = a
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(-b.clone());
            r
        })
        .collect();
    let banned = vec![false; cols + 1];
    let vectors = completion(&extended, cols + 1, &banned, limits)?;
    let mut particular = Vec::new();
    let mut homogeneous = Vec::new();
    for mut v in vectors {
        let scale = v.pop().expect("extended column present");
        if scale.is_zero() {
            homogeneous.push(v);
        } else if scale.is_one() {
            particular.push(v);
        }
        // Elements with larger scale decompose across slices; irrelevant here.
    }
    Ok(MinimalSolutions { particular, homogeneous })
}

/// Presolve: substitute fixed variables and eliminate slack-like columns
/// (a column whose single nonzero coefficient is ±1) into inequalities.
struct Presolved {
    program: Program,
    /// Columns of the reduced program, as original variable indices.
    kept: Vec<usize>,
    /// Reverse-order substitutions: (var, coeffs over original vars, constant,
    /// sign) with x_var = sign · (Σ coeffs·x − constant).
    eliminated: Vec<(usize, Vec<(usize, Int)>, Int)>,
}

/// `None` when a row is unsatisfiable over the integers outright.
fn presolve(sys: &DiophantineSystem, objective_all_ones: bool) -> Option<Presolved> {
    // Substitute fixed variables into the right-hand side, normalize each
    // equality row by its gcd and reject rows whose gcd does not divide the
    // right-hand side (no integer solution regardless of signs).
    let mut rows: Vec<(Vec<Int>, Int, bool)> = Vec::new(); // (coeffs, rhs, is_eq)
    for (row, b) in sys.a.iter().zip(&sys.rhs) {
        let mut coeffs = row.clone();
        let mut rhs = b.clone();
        for (&var, value) in &sys.fixed {
            rhs -= &coeffs[var] * value;
            coeffs[var] = Int::zero();
        }
        let mut g = Int::zero();
        for c in &coeffs {
            g = num::integer::gcd(g, c.abs());
        }
        if g.is_zero() {
            if !rhs.is_zero() {
                return None;
            }
            continue;
        }
        if !(&rhs % &g).is_zero() {
            return None;
        }
        if !g.is_one() {
            for c in coeffs.iter_mut() {
                *c /= &g;
            }
            rhs /= &g;
        }
        rows.push((coeffs, rhs, true));
    }
    // Combined lattice solvability (catches congruences no single row shows;
    // without it branch-and-bound can chase an infeasible ray forever).
    {
        let a: Vec<Vec<Int>> = rows.iter().map(|(c, _, _)| c.clone()).collect();
        let b: Vec<Int> = rows.iter().map(|(_, r, _)| r.clone()).collect();
        if !crate::linalg::lattice_feasible(&a, &b) {
            return None;
        }
    }
    let mut alive: Vec<bool> = (0..sys.cols).map(|j| !sys.fixed.contains_key(&j)).collect();
    let mut eliminated: Vec<(usize, Vec<(usize, Int)>, Int)> = Vec::new();

    // Repeatedly eliminate single-occurrence ±1 columns from equality rows.
    loop {
        let mut candidate: Option<(usize, usize)> = None; // (col, row)
        'cols: for j in 0..sys.cols {
            if !alive[j] {
                continue;
            }
            let mut seen: Option<usize> = None;
            for (i, (coeffs, _, is_eq)) in rows.iter().enumerate() {
                if !coeffs[j].is_zero() {
                    if !*is_eq || seen.is_some() || coeffs[j].abs() != Int::one() {
                        continue 'cols;
                    }
                    seen = Some(i);
                }
            }
            if let Some(i) = seen {
                candidate = Some((j, i));
                break;
            }
        }
        let Some((j, i)) = candidate else { break };
        let (coeffs, rhs, is_eq) = &mut rows[i];
        *is_eq = false;
        let sign_pos = coeffs[j].is_positive();
        // c_j x_j + Σ rest = b. For c_j = −1: x_j = Σ rest − b ≥ 0, the row
        // becomes Σ rest ≥ b. For c_j = +1: x_j = b − Σ rest ≥ 0, the row
        // becomes Σ rest ≤ b.
        coeffs[j] = Int::zero();
        let expr: Vec<(usize, Int)> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(l, c)| (l, if sign_pos { -c.clone() } else { c.clone() }))
            .collect();
        let constant = if sign_pos { -rhs.clone() } else { rhs.clone() };
        // x_j = Σ expr − constant.
        eliminated.push((j, expr, constant));
        // Rewrite the row's sense: stored implicitly via is_eq=false plus
        // orientation; normalize to Σ rest ≥ b by negating the ≤ case.
        if sign_pos {
            for c in coeffs.iter_mut() {
                *c = -c.clone();
            }
            *rhs = -rhs.clone();
        }
        alive[j] = false;
    }

    let kept: Vec<usize> = (0..sys.cols).filter(|&j| alive[j]).collect();
    let col_of: BTreeMap<usize, usize> =
        kept.iter().enumerate().map(|(c, &j)| (j, c)).collect();

    let mut program = Program::new(kept.len());
    for (coeffs, rhs, is_eq) in &rows {
        let mut prow = vec![Rat::zero(); kept.len()];
        for (j, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                prow[col_of[&j]] = rat_of(c);
            }
        }
        let sense = if *is_eq { Sense::Eq } else { Sense::Ge };
        program.push_row(prow, sense, rat_of(rhs));
    }

    // Total-norm objective over *original* variables: kept ones count
    // directly, eliminated ones through their defining expressions. The
    // minimum of the total norm is a ≤-minimal solution.
    // Every expression references only kept columns: once a column shows up
    // in an inequality row it is barred from elimination.
    if objective_all_ones {
        let mut obj = vec![Rat::zero(); kept.len()];
        for &j in &kept {
            obj[col_of[&j]] += Rat::one();
        }
        for (_, expr, _) in &eliminated {
            for (l, c) in expr {
                obj[col_of[l]] += rat_of(c);
            }
        }
        program.objective = obj;
    }

    Some(Presolved { program, kept, eliminated })
}

/// Rebuilds a full solution vector from a reduced one.
fn reconstruct(sys: &DiophantineSystem, pre: &Presolved, reduced: &[Int]) -> Vec<Int> {
    let mut x = vec![Int::zero(); sys.cols];
    for (&var, value) in &sys.fixed {
        x[var] = value.clone();
    }
    for (c, &j) in pre.kept.iter().enumerate() {
        x[j] = reduced[c].clone();
    }
    // Later eliminations reference only columns still alive at their time, so
    // evaluating in reverse order sees every referenced value filled in.
    for (var, expr, constant) in pre.eliminated.iter().rev() {
        let mut v = -constant.clone();
        for (l, c) in expr {
            v += c * &x[*l];
        }
        x[*var] = v;
    }
    x
}

/// One exact solution of the system, minimizing the given objective over the
/// original variables (`None` objective = total norm, giving a ≤-minimal
/// solution). `None` result = unsatisfiable.
pub fn solve_with_objective(
    sys: &DiophantineSystem,
    objective: Option<&[Int]>,
    limits: &Limits,
) -> Result<Option<Vec<Int>>, DiophantineError> {
    let Some(mut pre) = presolve(sys, objective.is_none()) else {
        return Ok(None);
    };
    if let Some(obj) = objective {
        assert_eq!(obj.len(), sys.cols);
        let mut reduced = vec![Rat::zero(); pre.kept.len()];
        for (c, &j) in pre.kept.iter().enumerate() {
            reduced[c] = rat_of(&obj[j]);
        }
        // Objective contributions of eliminated columns.
        for (var, expr, _) in &pre.eliminated {
            if obj[*var].is_zero() {
                continue;
            }
            for (l, c) in expr {
                if let Some(c_idx) = pre.kept.iter().position(|k| k == l) {
                    reduced[c_idx] += rat_of(&obj[*var]) * rat_of(c);
                }
            }
        }
        pre.program.objective = reduced;
    }
    match solve_ilp(&pre.program, limits.ilp_node_cap) {
        IlpOutcome::Infeasible => Ok(None),
        IlpOutcome::NodeLimit => Err(DiophantineError::ResourceLimit {
            what: "integer programming",
            explored: limits.ilp_node_cap,
        }),
        IlpOutcome::Optimal { x, .. } => {
            let full = reconstruct(sys, &pre, &x);
            if !sys.check(&full) {
                return Err(DiophantineError::Inconsistency(
                    "reconstructed solution fails the system".into(),
                ));
            }
            Ok(Some(full))
        }
    }
}

/// Satisfiability plus one ≤-minimal solution.
pub fn solve(
    sys: &DiophantineSystem,
    limits: &Limits,
) -> Result<Option<Vec<Int>>, DiophantineError> {
    solve_with_objective(sys, None, limits)
}

/// Satisfiability check.
pub fn feasible(sys: &DiophantineSystem, limits: &Limits) -> Result<bool, DiophantineError> {
    let Some(pre) = presolve(sys, true) else {
        return Ok(false);
    };
    match solve_ilp(&pre.program, limits.ilp_node_cap) {
        IlpOutcome::Infeasible => Ok(false),
        IlpOutcome::Optimal { .. } => Ok(true),
        IlpOutcome::NodeLimit => Err(DiophantineError::ResourceLimit {
            what: "integer programming",
            explored: limits.ilp_node_cap,
        }),
    }
}

/// An integer solution of the homogenized system whose support equals the
/// union of the supports of *all* homogeneous solutions — the same support
/// as the summed Hilbert basis, since every solution decomposes into minimal
/// ones. Computed by exact rational LP over the solution cone intersected
/// with the unit box (completion would enumerate the full basis, which blows
/// up on systems with many slack columns), then scaled to integers.
pub fn max_support_homogeneous(sys: &DiophantineSystem) -> Result<Vec<Int>, DiophantineError> {
    use crate::simplex::{solve_lp, LpOutcome, Program, Sense};
    use num::Integer;

    let hom = sys.homogenized();
    let cols = hom.cols;
    let mut base = Program::new(cols);
    let (a, rhs) = hom.effective();
    for (row, b) in a.iter().zip(&rhs) {
        base.push_row(row.iter().map(rat_of).collect(), Sense::Eq, rat_of(b));
    }
    for j in 0..cols {
        let mut row = vec![Rat::zero(); cols];
        row[j] = Rat::one();
        base.push_row(row, Sense::Le, Rat::one());
    }

    let mut h = vec![Int::zero(); cols];
    let mut undecided: Vec<usize> = (0..cols).collect();
    while !undecided.is_empty() {
        let mut prog = base.clone();
        prog.objective = vec![Rat::zero(); cols];
        for &j in &undecided {
            prog.objective[j] = -Rat::one();
        }
        let x = match solve_lp(&prog) {
            LpOutcome::Optimal { x, objective } if objective.is_negative() => x,
            LpOutcome::Optimal { .. } => break, // remaining coordinates are forced zero
            other => {
                return Err(DiophantineError::Inconsistency(format!(
                    "homogeneous support LP returned {other:?}"
                )))
            }
        };
        // Scale the rational point to an integer homogeneous solution.
        let mut scale = Int::one();
        for v in &x {
            scale = scale.lcm(v.denom());
        }
        for (hj, v) in h.iter_mut().zip(&x) {
            *hj += v.numer() * (&scale / v.denom());
        }
        let before = undecided.len();
        undecided.retain(|&j| h[j].is_zero());
        debug_assert!(undecided.len() < before);
    }
    if !hom.check(&h) {
        return Err(DiophantineError::Inconsistency(format!(
            "support accumulation is not a homogeneous solution: {h:?}"
        )));
    }
    Ok(h)
}

/// Per-variable unboundedness over the solution set of a satisfiable system:
/// a variable is unbounded exactly when some homogeneous solution is positive
/// there, i.e. when the max-support homogeneous solution is.
pub fn unbounded_support(sys: &DiophantineSystem) -> Result<Vec<bool>, DiophantineError> {
    let h = max_support_homogeneous(sys)?;
    Ok(h.iter().map(|v| v.is_positive()).collect())
}

/// One ≤-minimal solution or Unsat, plus boundedness flags.
pub fn solve_affine(
    sys: &DiophantineSystem,
    limits: &Limits,
) -> Result<AffineOutcome, DiophantineError> {
    let solution = solve(sys, limits)?;
    let unbounded = if solution.is_some() {
        unbounded_support(sys)?
    } else {
        vec![false; sys.cols]
    };
    Ok(AffineOutcome { solution, unbounded })
}

/// The exact attainable range of variable `var` over the solution set:
/// minimum and maximum (`None` max when unbounded, per `unbounded` flag the
/// caller got from `unbounded_support`). Errors on unsatisfiable systems.
pub fn attainable_range(
    sys: &DiophantineSystem,
    var: usize,
    limits: &Limits,
) -> Result<(Int, Int), DiophantineError> {
    let mut obj = vec![Int::zero(); sys.cols];
    obj[var] = Int::one();
    let min_sol = solve_with_objective(sys, Some(&obj), limits)?
        .ok_or_else(|| DiophantineError::Inconsistency("range of unsat system".into()))?;
    obj[var] = -Int::one();
    let max_sol = solve_with_objective(sys, Some(&obj), limits)?
        .ok_or_else(|| DiophantineError::Inconsistency("range of unsat system".into()))?;
    Ok((min_sol[var].clone(), max_sol[var].clone()))
}

/// Enumerates all attainable joint assignments of the given (bounded)
/// variables, by depth-first range splitting with exact feasibility checks.
pub fn enumerate_bounded_assignments(
    sys: &DiophantineSystem,
    vars: &[usize],
    limits: &Limits,
) -> Result<Vec<Vec<Int>>, DiophantineError> {
    fn go(
        sys: &DiophantineSystem,
        vars: &[usize],
        prefix: &mut Vec<Int>,
        out: &mut Vec<Vec<Int>>,
        limits: &Limits,
    ) -> Result<(), DiophantineError> {
        if prefix.len() == vars.len() {
            out.push(prefix.clone());
            return Ok(());
        }
        if out.len() >= limits.enumeration_cap {
            return Err(DiophantineError::ResourceLimit {
                what: "bounded assignment enumeration",
                explored: out.len(),
            });
        }
        let var = vars[prefix.len()];
        let mut narrowed = sys.clone();
        for (v, value) in vars.iter().zip(prefix.iter()) {
            narrowed.fix_var(*v, value.clone());
        }
        let (lo, hi) = attainable_range(&narrowed, var, limits)?;
        let mut v = lo;
        while v <= hi {
            let mut with = narrowed.clone();
            with.fix_var(var, v.clone());
            if feasible(&with, limits)? {
                prefix.push(v.clone());
                go(sys, vars, prefix, out, limits)?;
                prefix.pop();
            }
            v += 1;
        }
        Ok(())
    }

    let mut out = Vec::new();
    if feasible(sys, limits)? {
        go(sys, vars, &mut Vec::new(), &mut out, limits)?;
    }
    Ok(out)
}
