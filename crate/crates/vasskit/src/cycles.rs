//! Strongly connected components, cycle spaces and ranks.
//!
//! The cycle space of a VASS is the ℚ-span of the displacements of all its
//! cycles; its dimension is the graph's *effective dimension*. Cycles live
//! inside strongly connected components, and within one component the span
//! equals the displacement image of the circulation space (the kernel of the
//! incidence matrix): any integer circulation becomes a nonnegative one after
//! adding enough copies of a circulation that covers every edge, and
//! nonnegative circulations decompose into cycles.

use num::Zero;

use crate::linalg::{kernel_basis, primitive_int_vector, rats_of, Rat, RowSpace};
use crate::vass::{Int, RankVector, StateId, TransId, VassGraph};

/// Strongly connected components with their condensation order.
#[derive(Clone, Debug)]
pub struct SccDecomposition {
    /// Component index per state.
    pub component_of: Vec<usize>,
    /// States of each component.
    pub components: Vec<Vec<StateId>>,
    /// Component indices in a topological order of the condensation.
    pub topo_order: Vec<usize>,
}

impl SccDecomposition {
    pub fn count(&self) -> usize {
        self.components.len()
    }

    pub fn same_component(&self, a: StateId, b: StateId) -> bool {
        self.component_of[a.0] == self.component_of[b.0]
    }

    /// Transitions with both endpoints inside component `c`.
    pub fn internal_transitions(&self, graph: &VassGraph, c: usize) -> Vec<TransId> {
        graph
            .trans_ids()
            .filter(|&t| {
                let tr = graph.transition(t);
                self.component_of[tr.src.0] == c && self.component_of[tr.dst.0] == c
            })
            .collect()
    }
}

/// Tarjan's algorithm, iterative to keep recursion depth independent of the
/// input. Components come out in reverse topological order and are re-indexed
/// so that `topo_order` is forward.
pub fn scc_condense(graph: &VassGraph) -> SccDecomposition {
    let n = graph.state_count();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut components: Vec<Vec<StateId>> = Vec::new();
    let mut component_of = vec![usize::MAX; n];

    // Adjacency once, in transition order for determinism.
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for t in graph.transitions() {
        succ[t.src.0].push(t.dst.0);
    }

    enum Frame {
        Enter(usize),
        Resume(usize, usize),
    }

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut work = vec![Frame::Enter(root)];
        while let Some(frame) = work.pop() {
            match frame {
                Frame::Enter(v) => {
                    index[v] = next_index;
                    low[v] = next_index;
                    next_index += 1;
                    stack.push(v);
                    on_stack[v] = true;
                    work.push(Frame::Resume(v, 0));
                }
                Frame::Resume(v, mut i) => {
                    let mut descended = false;
                    while i < succ[v].len() {
                        let w = succ[v][i];
                        i += 1;
                        if index[w] == usize::MAX {
                            work.push(Frame::Resume(v, i));
                            work.push(Frame::Enter(w));
                            descended = true;
                            break;
                        } else if on_stack[w] {
                            low[v] = low[v].min(index[w]);
                        }
                    }
                    if descended {
                        continue;
                    }
                    if low[v] == index[v] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().unwrap();
                            on_stack[w] = false;
                            component_of[w] = components.len();
                            comp.push(StateId(w));
                            if w == v {
                                break;
                            }
                        }
                        comp.sort();
                        components.push(comp);
                    } else if let Some(Frame::Resume(parent, _)) = work.last() {
                        low[*parent] = low[*parent].min(low[v]);
                    }
                }
            }
        }
    }

    // Tarjan emits components in reverse topological order.
    let count = components.len();
    let topo_order: Vec<usize> = (0..count).rev().collect();
    SccDecomposition { component_of, components, topo_order }
}

/// The cycle space V_G with a fixed integer basis and per-component data.
#[derive(Clone, Debug)]
pub struct CycleSpace {
    dim_total: usize,
    space: RowSpace,
    basis: Vec<Vec<Int>>,
    scc: SccDecomposition,
    scc_dims: Vec<usize>,
}

impl CycleSpace {
    /// The effective dimension n_G.
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// An integer basis of V_G (primitive vectors, deterministic order).
    pub fn basis(&self) -> &[Vec<Int>] {
        &self.basis
    }

    pub fn scc(&self) -> &SccDecomposition {
        &self.scc
    }

    /// Exact rational membership test.
    pub fn contains(&self, v: &[Int]) -> bool {
        v.len() == self.dim_total && self.space.contains(&rats_of(v))
    }

    /// dim V_G(t): the span of cycles through `t`. A transition whose
    /// endpoints lie in one strongly connected component sits on a cycle, and
    /// then the span of the cycles through it is the whole component's space;
    /// a transition crossing components sits on no cycle at all.
    pub fn edge_cycle_dim(&self, graph: &VassGraph, t: TransId) -> usize {
        let tr = graph.transition(t);
        if self.scc.same_component(tr.src, tr.dst) {
            self.scc_dims[self.scc.component_of[tr.src.0]]
        } else {
            0
        }
    }
}

/// Computes V_G from the circulation kernels of the strongly connected
/// components.
pub fn cycle_space(graph: &VassGraph) -> CycleSpace {
    let scc = scc_condense(graph);
    let mut space = RowSpace::new();
    let mut scc_dims = vec![0usize; scc.count()];
    for c in 0..scc.count() {
        let trans = scc.internal_transitions(graph, c);
        if trans.is_empty() {
            continue;
        }
        // Incidence matrix of the component: one row per state, one column
        // per internal transition. Self loops contribute a zero column and
        // are legitimate cycles.
        let states = &scc.components[c];
        let row_of: std::collections::HashMap<usize, usize> =
            states.iter().enumerate().map(|(i, s)| (s.0, i)).collect();
        let mut incidence = vec![vec![Rat::zero(); trans.len()]; states.len()];
        for (j, &t) in trans.iter().enumerate() {
            let tr = graph.transition(t);
            incidence[row_of[&tr.dst.0]][j] += Rat::from_integer(Int::from(1));
            incidence[row_of[&tr.src.0]][j] -= Rat::from_integer(Int::from(1));
        }
        let mut comp_space = RowSpace::new();
        for circulation in kernel_basis(&incidence, trans.len()) {
            let mut disp = vec![Rat::zero(); graph.dim()];
            for (j, &t) in trans.iter().enumerate() {
                if circulation[j].is_zero() {
                    continue;
                }
                for (d, x) in graph.transition(t).disp.iter().enumerate() {
                    disp[d] += &circulation[j] * Rat::from_integer(x.clone());
                }
            }
            comp_space.insert(&disp);
            space.insert(&disp);
        }
        scc_dims[c] = comp_space.dim();
    }
    let basis = space.rows().iter().map(|r| primitive_int_vector(r)).collect();
    CycleSpace { dim_total: graph.dim(), space, basis, scc, scc_dims }
}

/// The rank vector (r_d, …, r_0) counting transitions by dim V_G(t).
pub fn rank(graph: &VassGraph) -> RankVector {
    rank_with(graph, &cycle_space(graph))
}

pub fn rank_with(graph: &VassGraph, space: &CycleSpace) -> RankVector {
    let d = graph.dim();
    let mut counts = vec![0usize; d + 1];
    for t in graph.trans_ids() {
        let k = space.edge_cycle_dim(graph, t);
        counts[d - k] += 1;
    }
    RankVector(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vass::{vec_from_i64, vec_zero};

    fn two_state_example() -> VassGraph {
        let mut g = VassGraph::new(3);
        let p = g.add_state("p");
        let q = g.add_state("q");
        g.add_transition_named("t1", p, q, vec_from_i64(&[0, -1, -2]));
        g.add_transition_named("t2", q, p, vec_from_i64(&[1, 1, 0]));
        g.add_transition_named("t3", q, q, vec_from_i64(&[0, 1, 2]));
        g.set_io(p, p);
        g
    }

    /// Brute-force span of closed paths through a transition, up to a length
    /// bound. Independent of the kernel-based computation.
    fn closed_path_span_dim(g: &VassGraph, through: TransId, max_len: usize) -> usize {
        let mut space = RowSpace::new();
        let start = g.transition(through).dst;
        let target = g.transition(through).src;
        // DFS over all paths start → target of length < max_len.
        let mut stack = vec![(start, vec_zero(g.dim()), 0usize)];
        while let Some((s, disp, len)) = stack.pop() {
            if s == target {
                let total = crate::vass::vec_add(&disp, &g.transition(through).disp);
                space.insert(&rats_of(&total));
            }
            if len + 1 >= max_len {
                continue;
            }
            for t in g.trans_ids() {
                let tr = g.transition(t);
                if tr.src == s {
                    stack.push((tr.dst, crate::vass::vec_add(&disp, &tr.disp), len + 1));
                }
            }
        }
        space.dim()
    }

    #[test]
    fn scc_of_example_is_single() {
        let g = two_state_example();
        let scc = scc_condense(&g);
        assert_eq!(scc.count(), 1);
        assert_eq!(scc.components[0].len(), 2);
    }

    #[test]
    fn scc_edgeless_and_chain() {
        let mut g = VassGraph::new(3);
        g.add_state("a");
        g.add_state("b");
        g.set_io(StateId(0), StateId(1));
        let scc = scc_condense(&g);
        assert_eq!(scc.count(), 2);

        let mut g = VassGraph::new(3);
        let p = g.add_state("p");
        let q = g.add_state("q");
        let r = g.add_state("r");
        g.add_transition(p, q, vec_zero(3));
        g.add_transition(q, r, vec_zero(3));
        g.set_io(p, r);
        let scc = scc_condense(&g);
        assert_eq!(scc.count(), 3);
        // Topological order must put p's component before q's before r's.
        let order: Vec<usize> = scc.topo_order.clone();
        let pos =
            |s: StateId| order.iter().position(|&c| c == scc.component_of[s.0]).unwrap();
        assert!(pos(p) < pos(q) && pos(q) < pos(r));
    }

    #[test]
    fn cycle_space_of_example() {
        let g = two_state_example();
        let cs = cycle_space(&g);
        assert_eq!(cs.dim(), 2);
        // Span is the hyperplane 2x − 2y + z = 0, generated by the two cycle
        // displacements.
        assert!(cs.contains(&vec_from_i64(&[1, 0, -2])));
        assert!(cs.contains(&vec_from_i64(&[0, 1, 2])));
        assert!(!cs.contains(&vec_from_i64(&[0, 0, 1])));
        for b in cs.basis() {
            let val: Int = 2 * &b[0] - 2 * &b[1] + &b[2];
            assert!(val.is_zero());
        }
    }

    #[test]
    fn cycle_space_degenerate_cases() {
        // Acyclic graph: dimension 0.
        let mut g = VassGraph::new(3);
        let p = g.add_state("p");
        let q = g.add_state("q");
        g.add_transition(p, q, vec_from_i64(&[5, -7, 1]));
        g.set_io(p, q);
        assert_eq!(cycle_space(&g).dim(), 0);
        assert_eq!(rank(&g), RankVector(vec![0, 0, 0, 1]));

        // One state with three independent loops: dimension 3.
        let mut g = VassGraph::new(3);
        let s = g.add_state("s");
        g.add_transition(s, s, vec_from_i64(&[1, 0, 0]));
        g.add_transition(s, s, vec_from_i64(&[0, 1, 0]));
        g.add_transition(s, s, vec_from_i64(&[0, 0, 1]));
        g.set_io(s, s);
        assert_eq!(cycle_space(&g).dim(), 3);
        assert_eq!(rank(&g), RankVector(vec![3, 0, 0, 0]));

        // Single loop spans dimension 1.
        let mut g = VassGraph::new(3);
        let s = g.add_state("s");
        g.add_transition(s, s, vec_from_i64(&[1, 1, 1]));
        g.set_io(s, s);
        assert_eq!(cycle_space(&g).dim(), 1);
        assert_eq!(rank(&g), RankVector(vec![0, 0, 1, 0]));
    }

    #[test]
    fn rank_of_example() {
        let g = two_state_example();
        assert_eq!(rank(&g), RankVector(vec![0, 3, 0, 0]));
    }

    #[test]
    fn edge_dims_agree_with_path_enumeration() {
        let g = two_state_example();
        let cs = cycle_space(&g);
        for t in g.trans_ids() {
            assert_eq!(cs.edge_cycle_dim(&g, t), closed_path_span_dim(&g, t, 6));
        }

        // Mixed graph: a 2-state component plus a pendant edge.
        let mut g = VassGraph::new(3);
        let a = g.add_state("a");
        let b = g.add_state("b");
        let c = g.add_state("c");
        g.add_transition(a, b, vec_from_i64(&[1, 0, 0]));
        g.add_transition(b, a, vec_from_i64(&[0, 1, 0]));
        g.add_transition(a, a, vec_from_i64(&[-2, 3, 0]));
        g.add_transition(b, c, vec_from_i64(&[0, 0, 4]));
        g.set_io(a, c);
        let cs = cycle_space(&g);
        for t in g.trans_ids() {
            assert_eq!(cs.edge_cycle_dim(&g, t), closed_path_span_dim(&g, t, 8));
        }
        // The component's space is span{(1,1,0), (−2,3,0)}: dimension 2.
        assert_eq!(rank(&g), RankVector(vec![0, 3, 0, 1]));
    }

    #[test]
    fn rank_invariant_under_relabeling() {
        let g = two_state_example();
        // Same graph built with states and transitions in a different order.
        let mut h = VassGraph::new(3);
        let q = h.add_state("q");
        let p = h.add_state("p");
        h.add_transition_named("t3", q, q, vec_from_i64(&[0, 1, 2]));
        h.add_transition_named("t2", q, p, vec_from_i64(&[1, 1, 0]));
        h.add_transition_named("t1", p, q, vec_from_i64(&[0, -1, -2]));
        h.set_io(p, p);
        assert_eq!(rank(&g), rank(&h));
    }

    #[test]
    fn sampled_cycles_lie_in_span() {
        use crate::vass::{displacement, Path};
        let g = two_state_example();
        let cs = cycle_space(&g);
        // All closed paths of length ≤ 2|Q| + 2 from each state.
        for s in g.state_ids() {
            let mut stack = vec![(s, Vec::new())];
            while let Some((at, steps)) = stack.pop() {
                if !steps.is_empty() && at == s {
                    let path = Path::new(&g, steps.clone()).unwrap();
                    assert!(cs.contains(&displacement(&g, &path)));
                }
                if steps.len() >= 6 {
                    continue;
                }
                for t in g.trans_ids() {
                    if g.transition(t).src == at {
                        let mut next = steps.clone();
                        next.push(t);
                        stack.push((g.transition(t).dst, next));
                    }
                }
            }
        }
    }
}
