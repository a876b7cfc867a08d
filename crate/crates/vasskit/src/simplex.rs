//! Exact integer linear programming over big rationals.
//!
//! A textbook two-phase primal simplex with Bland's rule, wrapped in
//! branch-and-bound for integer solutions. Everything is exact: the solver
//! decides feasibility, so a floating-point relaxation would be unsound.
//! Node limits are reported, never silently truncated.

use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::linalg::Rat;
use crate::vass::Int;

/// Row comparison sense.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Sense {
    Eq,
    Ge,
    Le,
}

/// min c·x subject to the rows, x ≥ 0 componentwise.
#[derive(Clone, Debug, Default)]
pub struct Program {
    pub cols: usize,
    pub rows: Vec<(Vec<Rat>, Sense, Rat)>,
    pub objective: Vec<Rat>,
}

impl Program {
    pub fn new(cols: usize) -> Self {
        Program { cols, rows: Vec::new(), objective: vec![Rat::zero(); cols] }
    }

    pub fn push_row(&mut self, coeffs: Vec<Rat>, sense: Sense, rhs: Rat) {
        debug_assert_eq!(coeffs.len(), self.cols);
        self.rows.push((coeffs, sense, rhs));
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { x: Vec<Rat>, objective: Rat },
}

/// Exact LP solve. The returned point is a vertex of the feasible region.
pub fn solve_lp(p: &Program) -> LpOutcome {
    let n = p.cols;
    let m = p.rows.len();
    // Columns: structural 0..n, then one slack per inequality row, then one
    // artificial per row; the rhs is kept separately.
    let slack_count = p.rows.iter().filter(|(_, s, _)| *s != Sense::Eq).count();
    let total = n + slack_count + m;
    let mut tableau: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut rhs: Vec<Rat> = Vec::with_capacity(m);

    let mut slack_at = n;
    for (coeffs, sense, b) in &p.rows {
        let mut row = vec![Rat::zero(); total];
        let mut b = b.clone();
        let mut flip = false;
        if b.is_negative() {
            flip = true;
            b = -b;
        }
        for (j, c) in coeffs.iter().enumerate() {
            row[j] = if flip { -c.clone() } else { c.clone() };
        }
        match sense {
            Sense::Eq => {}
            Sense::Ge => {
                // a·x ≥ b ⇒ a·x − s = b (sign flips with the row).
                row[slack_at] = if flip { Rat::one() } else { -Rat::one() };
                slack_at += 1;
            }
            Sense::Le => {
                row[slack_at] = if flip { -Rat::one() } else { Rat::one() };
                slack_at += 1;
            }
        }
        tableau.push(row);
        rhs.push(b);
    }
    // Artificials form the initial basis.
    for (i, row) in tableau.iter_mut().enumerate() {
        row[n + slack_count + i] = Rat::one();
        basis.push(n + slack_count + i);
    }

    // Phase 1: minimize the sum of artificials.
    let mut cost = vec![Rat::zero(); total];
    for j in n + slack_count..total {
        cost[j] = Rat::one();
    }
    let mut obj = Rat::zero();
    reduce_cost(&mut cost, &mut obj, &tableau, &rhs, &basis);
    if pivot_until_optimal(&mut tableau, &mut rhs, &mut basis, &mut cost, &mut obj, total)
        .is_none()
    {
        // Phase 1 objective is bounded below by zero.
        unreachable!("phase 1 cannot be unbounded");
    }
    if !obj.is_zero() {
        return LpOutcome::Infeasible;
    }
    // Drive remaining artificials out of the basis; rows that admit no pivot
    // are redundant and must be dropped (keeping them would let directions
    // move a zero-valued artificial and fake unboundedness).
    let art_start = n + slack_count;
    let mut drop_rows = Vec::new();
    for i in 0..m {
        if basis[i] >= art_start {
            if let Some(j) = (0..art_start).find(|&j| !tableau[i][j].is_zero()) {
                pivot(&mut tableau, &mut rhs, &mut basis, i, j, &mut cost, &mut obj);
            } else {
                drop_rows.push(i);
            }
        }
    }
    let mut tableau: Vec<Vec<Rat>> = tableau
        .into_iter()
        .enumerate()
        .filter(|(i, _)| !drop_rows.contains(i))
        .map(|(_, r)| r)
        .collect();
    let mut rhs: Vec<Rat> = rhs
        .into_iter()
        .enumerate()
        .filter(|(i, _)| !drop_rows.contains(i))
        .map(|(_, r)| r)
        .collect();
    let mut basis: Vec<usize> = basis
        .into_iter()
        .enumerate()
        .filter(|(i, _)| !drop_rows.contains(i))
        .map(|(_, b)| b)
        .collect();

    // Phase 2: minimize the real objective. Artificial columns are excluded
    // from entering outright (cost-row tricks are unsound: pivots could turn
    // a fake cost negative and let an artificial re-enter).
    let mut cost = vec![Rat::zero(); total];
    cost[..n].clone_from_slice(&p.objective);
    let mut obj = Rat::zero();
    reduce_cost(&mut cost, &mut obj, &tableau, &rhs, &basis);
    match pivot_until_optimal(&mut tableau, &mut rhs, &mut basis, &mut cost, &mut obj, art_start)
    {
        None => LpOutcome::Unbounded,
        Some(()) => {
            let mut x = vec![Rat::zero(); n];
            for (i, &b) in basis.iter().enumerate() {
                if b < n {
                    x[b] = rhs[i].clone();
                }
            }
            LpOutcome::Optimal { x, objective: -obj }
        }
    }
}

/// Rewrites the cost row so basic columns have zero reduced cost; `obj`
/// accumulates the negated objective value.
fn reduce_cost(
    cost: &mut [Rat],
    obj: &mut Rat,
    tableau: &[Vec<Rat>],
    rhs: &[Rat],
    basis: &[usize],
) {
    for (i, &b) in basis.iter().enumerate() {
        if !cost[b].is_zero() {
            let factor = cost[b].clone();
            for (c, t) in cost.iter_mut().zip(&tableau[i]) {
                *c -= &factor * t;
            }
            *obj -= &factor * &rhs[i];
        }
    }
}

/// Bland's rule; returns `None` on unboundedness. Only columns below
/// `enter_limit` may enter the basis.
fn pivot_until_optimal(
    tableau: &mut [Vec<Rat>],
    rhs: &mut [Rat],
    basis: &mut [usize],
    cost: &mut [Rat],
    obj: &mut Rat,
    enter_limit: usize,
) -> Option<()> {
    loop {
        let Some(enter) = (0..enter_limit).find(|&j| cost[j].is_negative()) else {
            return Some(());
        };
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..tableau.len() {
            if tableau[i][enter].is_positive() {
                let ratio = &rhs[i] / &tableau[i][enter];
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let leave = leave?;
        pivot(tableau, rhs, basis, leave, enter, cost, obj);
    }
}

fn pivot(
    tableau: &mut [Vec<Rat>],
    rhs: &mut [Rat],
    basis: &mut [usize],
    row: usize,
    col: usize,
    cost: &mut [Rat],
    obj: &mut Rat,
) {
    let lead = tableau[row][col].clone();
    for x in tableau[row].iter_mut() {
        *x /= &lead;
    }
    rhs[row] /= &lead;
    let pivot_row = tableau[row].clone();
    let pivot_rhs = rhs[row].clone();
    for i in 0..tableau.len() {
        if i != row && !tableau[i][col].is_zero() {
            let factor = tableau[i][col].clone();
            for (x, pv) in tableau[i].iter_mut().zip(&pivot_row) {
                *x -= &factor * pv;
            }
            rhs[i] -= &factor * &pivot_rhs;
        }
    }
    if !cost[col].is_zero() {
        let factor = cost[col].clone();
        for (c, pv) in cost.iter_mut().zip(&pivot_row) {
            *c -= &factor * pv;
        }
        *obj -= &factor * &pivot_rhs;
    }
    basis[row] = col;
}

#[derive(Clone, Debug, PartialEq)]
pub enum IlpOutcome {
    Infeasible,
    /// Optimal integer point for the objective.
    Optimal { x: Vec<Int>, objective: Rat },
    /// The node budget ran out before the search closed.
    NodeLimit,
}

/// Branch-and-bound integer minimization over a `Program` whose variables are
/// all integer.
///
/// Nodes carry per-variable bound intervals (so node size stays flat however
/// deep the tree goes) and are explored best-first by relaxation objective:
/// child objectives never decrease, so the first node that pops with an
/// integral vertex is a global optimum.
pub fn solve_ilp(p: &Program, node_cap: usize) -> IlpOutcome {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;

    type Bounds = std::collections::BTreeMap<usize, (Int, Option<Int>)>;

    fn relax(p: &Program, bounds: &Bounds) -> LpOutcome {
        let mut prog = p.clone();
        for (&var, (lo, hi)) in bounds {
            if lo.is_positive() {
                let mut row = vec![Rat::zero(); p.cols];
                row[var] = Rat::one();
                prog.push_row(row, Sense::Ge, BigRational::from_integer(lo.clone()));
            }
            if let Some(hi) = hi {
                let mut row = vec![Rat::zero(); p.cols];
                row[var] = Rat::one();
                prog.push_row(row, Sense::Le, BigRational::from_integer(hi.clone()));
            }
        }
        solve_lp(&prog)
    }

    let mut heap: BinaryHeap<Reverse<(Rat, usize)>> = BinaryHeap::new();
    let mut store: Vec<(Bounds, Vec<Rat>)> = Vec::new();
    match relax(p, &Bounds::new()) {
        LpOutcome::Infeasible => return IlpOutcome::Infeasible,
        // Callers' objectives are bounded below on their feasible regions;
        // anything else is a construction bug.
        LpOutcome::Unbounded => panic!("integer program with unbounded relaxation"),
        LpOutcome::Optimal { x, objective } => {
            store.push((Bounds::new(), x));
            heap.push(Reverse((objective, 0)));
        }
    }

    let mut nodes = 0usize;
    while let Some(Reverse((objective, idx))) = heap.pop() {
        nodes += 1;
        if nodes > node_cap {
            return IlpOutcome::NodeLimit;
        }
        let (bounds, x) = store[idx].clone();
        let Some(j) = x.iter().position(|v| !v.is_integer()) else {
            let ints: Vec<Int> = x.iter().map(|v| v.to_integer()).collect();
            return IlpOutcome::Optimal { x: ints, objective };
        };
        let floor = x[j].floor().to_integer();
        let (lo, hi) = bounds.get(&j).cloned().unwrap_or((Int::zero(), None));
        let children = [
            (lo.clone(), Some(hi.as_ref().map_or(floor.clone(), |h| h.clone().min(floor.clone())))),
            (Int::max(&floor + 1, lo), hi),
        ];
        for (clo, chi) in children {
            if let Some(h) = &chi {
                if &clo > h {
                    continue;
                }
            }
            let mut cb = bounds.clone();
            cb.insert(j, (clo, chi));
            match relax(p, &cb) {
                LpOutcome::Infeasible => {}
                LpOutcome::Unbounded => panic!("integer program with unbounded relaxation"),
                LpOutcome::Optimal { x, objective } => {
                    store.push((cb, x));
                    heap.push(Reverse((objective, store.len() - 1)));
                }
            }
        }
    }
    IlpOutcome::Infeasible
}
