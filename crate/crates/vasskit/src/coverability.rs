//! Coverability via Karp–Miller acceleration, over the finite coordinates of
//! an ω-extended start (ω coordinates absorb arithmetic and are not
//! tracked).
//!
//! Two exact facts are extracted from the tree: whether a target vector is
//! coverable, and per-dimension boundedness. The finite entries of a node
//! label are genuinely attainable (for every bound N some run realizes the
//! finite entries exactly and pushes the ω entries above N), so when no label
//! carries ω in a dimension the maximum label value there is the exact
//! supremum over all runs.

use std::collections::VecDeque;

use num::Signed;
use thiserror::Error;

use crate::vass::{ExtNat, ExtVector, Int, Path, StateId, TransId, VassGraph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoverError {
    #[error("resource limit hit in {what} after {explored} nodes")]
    ResourceLimit { what: &'static str, explored: usize },
}

struct Node {
    state: StateId,
    label: Vec<ExtNat>,
    parent: Option<usize>,
}

/// The finished tree, with the original indices of the tracked dimensions.
pub struct KarpMiller {
    tracked: Vec<usize>,
    nodes: Vec<Node>,
}

fn label_le(a: &[ExtNat], b: &[ExtNat]) -> bool {
    a.iter().zip(b).all(|(x, y)| match (x, y) {
        (_, ExtNat::Omega) => true,
        (ExtNat::Omega, ExtNat::Fin(_)) => false,
        (ExtNat::Fin(u), ExtNat::Fin(v)) => u <= v,
    })
}

/// Builds the tree from `state(start)`, tracking only the finite coordinates
/// of `start`.
pub fn karp_miller(
    graph: &VassGraph,
    state: StateId,
    start: &ExtVector,
    node_cap: usize,
) -> Result<KarpMiller, CoverError> {
    let tracked: Vec<usize> = (0..graph.dim())
        .filter(|&d| !start.entry(d).is_omega())
        .collect();
    let root_label: Vec<ExtNat> =
        tracked.iter().map(|&d| start.entry(d).clone()).collect();
    let mut nodes = vec![Node { state, label: root_label, parent: None }];
    let mut queue: VecDeque<usize> = VecDeque::from([0]);

    while let Some(idx) = queue.pop_front() {
        for t in graph.trans_ids() {
            let tr = graph.transition(t);
            if tr.src != nodes[idx].state {
                continue;
            }
            // Step the tracked coordinates; ω absorbs, finite must stay ≥ 0.
            let mut label = Vec::with_capacity(tracked.len());
            let mut ok = true;
            for (pos, &d) in tracked.iter().enumerate() {
                match nodes[idx].label[pos].checked_add(&tr.disp[d]) {
                    Some(v) => label.push(v),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            let next_state = tr.dst;
            // Accelerate against strictly dominated ancestors.
            let mut cursor = Some(idx);
            while let Some(a) = cursor {
                let anc = &nodes[a];
                if anc.state == next_state && label_le(&anc.label, &label) && anc.label != label
                {
                    for (pos, v) in label.iter_mut().enumerate() {
                        if anc.label[pos] != *v {
                            *v = ExtNat::Omega;
                        }
                    }
                }
                cursor = anc.parent;
            }
            // Prune nodes dominated by anything already present (sound for
            // coverability; no node removal, so no reactivation subtleties).
            if nodes
                .iter()
                .any(|n| n.state == next_state && label_le(&label, &n.label))
            {
                continue;
            }
            if nodes.len() >= node_cap {
                return Err(CoverError::ResourceLimit {
                    what: "karp-miller tree",
                    explored: nodes.len(),
                });
            }
            nodes.push(Node { state: next_state, label, parent: Some(idx) });
            queue.push_back(nodes.len() - 1);
        }
    }
    Ok(KarpMiller { tracked, nodes })
}

impl KarpMiller {
    pub fn tracked_dims(&self) -> &[usize] {
        &self.tracked
    }

    /// Is some configuration `state(v)` with `v ≥ target` (on the tracked
    /// dimensions) coverable?
    pub fn covers(&self, state: StateId, target: &[ExtNat]) -> bool {
        assert_eq!(target.len(), self.tracked.len());
        self.nodes
            .iter()
            .any(|n| n.state == state && label_le(target, &n.label))
    }

    /// Exact supremum of a tracked dimension over all runs, or `None` when
    /// unbounded.
    pub fn tracked_max(&self, pos: usize) -> Option<Int> {
        let mut max = Int::from(0);
        for n in &self.nodes {
            match &n.label[pos] {
                ExtNat::Omega => return None,
                ExtNat::Fin(v) => {
                    if *v > max {
                        max = v.clone();
                    }
                }
            }
        }
        Some(max)
    }
}

/// Breadth-first search for a concrete run (in ω-absorbing semantics)
/// reaching `state` with all tracked coordinates ≥ `target`. Dominated
/// configurations are pruned. Fails loudly when the caps are hit.
pub fn concrete_cover_path(
    graph: &VassGraph,
    state: StateId,
    start: &ExtVector,
    target_state: StateId,
    target: &[ExtNat],
    node_cap: usize,
) -> Result<Option<Path>, CoverError> {
    let tracked: Vec<usize> = (0..graph.dim())
        .filter(|&d| !start.entry(d).is_omega())
        .collect();
    assert_eq!(target.len(), tracked.len());
    let root: Vec<Int> = tracked
        .iter()
        .map(|&d| start.entry(d).as_finite().expect("tracked is finite").clone())
        .collect();

    let reached = |label: &[Int]| -> bool {
        label.iter().zip(target).all(|(v, t)| match t {
            ExtNat::Omega => false, // an ω target is unreachable by finites
            ExtNat::Fin(t) => v >= t,
        })
    };

    struct Entry {
        state: StateId,
        label: Vec<Int>,
        parent: Option<(usize, TransId)>,
    }
    let mut entries = vec![Entry { state, label: root.clone(), parent: None }];
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    if state == target_state && reached(&root) {
        return Ok(Some(Path::empty()));
    }
    while let Some(idx) = queue.pop_front() {
        for t in graph.trans_ids() {
            let tr = graph.transition(t);
            if tr.src != entries[idx].state {
                continue;
            }
            let mut label = Vec::with_capacity(tracked.len());
            let mut ok = true;
            for (pos, &d) in tracked.iter().enumerate() {
                let v = &entries[idx].label[pos] + &tr.disp[d];
                if v.is_negative() {
                    ok = false;
                    break;
                }
                label.push(v);
            }
            if !ok {
                continue;
            }
            // Dominated configurations cannot help covering.
            if entries
                .iter()
                .any(|e| e.state == tr.dst && label.iter().zip(&e.label).all(|(a, b)| a <= b))
            {
                continue;
            }
            if entries.len() >= node_cap {
                return Err(CoverError::ResourceLimit {
                    what: "cover path search",
                    explored: entries.len(),
                });
            }
            entries.push(Entry { state: tr.dst, label: label.clone(), parent: Some((idx, t)) });
            if tr.dst == target_state && reached(&label) {
                // Reconstruct.
                let mut steps = Vec::new();
                let mut cursor = Some(entries.len() - 1);
                while let Some(i) = cursor {
                    match entries[i].parent {
                        Some((p, t)) => {
                            steps.push(t);
                            cursor = Some(p);
                        }
                        None => cursor = None,
                    }
                }
                steps.reverse();
                return Ok(Some(Path { steps }));
            }
            queue.push_back(entries.len() - 1);
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vass::{vec_from_i64, Configuration, Domain};

    #[test]
    fn single_loop_covers_everything_above() {
        let mut g = VassGraph::new(3);
        let p = g.add_state("p");
        g.add_transition(p, p, vec_from_i64(&[1, 1, 1]));
        g.set_io(p, p);
        let km = karp_miller(&g, p, &ExtVector::finite(&[0, 0, 0]), 1000).unwrap();
        assert!(km.covers(p, &[ExtNat::fin(1), ExtNat::fin(1), ExtNat::fin(1)]));
        assert!(km.covers(p, &[ExtNat::fin(50), ExtNat::fin(50), ExtNat::fin(50)]));
        for pos in 0..3 {
            assert_eq!(km.tracked_max(pos), None);
        }
    }

    #[test]
    fn untouched_dimensions_stay_bounded() {
        let mut g = VassGraph::new(3);
        let p = g.add_state("p");
        g.add_transition(p, p, vec_from_i64(&[1, 0, 0]));
        g.set_io(p, p);
        let km = karp_miller(&g, p, &ExtVector::finite(&[0, 0, 0]), 1000).unwrap();
        assert!(km.covers(p, &[ExtNat::fin(9), ExtNat::fin(0), ExtNat::fin(0)]));
        assert!(!km.covers(p, &[ExtNat::fin(0), ExtNat::fin(1), ExtNat::fin(0)]));
        assert_eq!(km.tracked_max(0), None);
        assert_eq!(km.tracked_max(1), Some(Int::from(0)));
        assert_eq!(km.tracked_max(2), Some(Int::from(0)));
    }

    #[test]
    fn omega_start_dims_are_not_tracked() {
        let mut g = VassGraph::new(3);
        let p = g.add_state("p");
        // Needs dim 1 to pay for dim 2.
        g.add_transition(p, p, vec_from_i64(&[-1, 2, 0]));
        g.set_io(p, p);
        let mut start = ExtVector::finite(&[0, 0, 0]);
        start.set_entry(0, ExtNat::Omega);
        let km = karp_miller(&g, p, &start, 1000).unwrap();
        assert_eq!(km.tracked_dims(), &[1, 2]);
        assert!(km.covers(p, &[ExtNat::fin(10), ExtNat::fin(0)]));
        assert_eq!(km.tracked_max(0), None);
    }

    #[test]
    fn bounded_maxima_are_exact() {
        // p →(0,3,0) q with a loop at q that trades dim 2 for dim 3 twice.
        let mut g = VassGraph::new(3);
        let p = g.add_state("p");
        let q = g.add_state("q");
        g.add_transition(p, q, vec_from_i64(&[0, 3, 0]));
        g.add_transition(q, q, vec_from_i64(&[0, -1, 2]));
        g.set_io(p, q);
        let km = karp_miller(&g, p, &ExtVector::finite(&[0, 0, 0]), 1000).unwrap();
        assert_eq!(km.tracked_max(0), Some(Int::from(0)));
        assert_eq!(km.tracked_max(1), Some(Int::from(3)));
        assert_eq!(km.tracked_max(2), Some(Int::from(6)));
    }

    #[test]
    fn concrete_paths_replay() {
        let mut g = VassGraph::new(3);
        let p = g.add_state("p");
        let q = g.add_state("q");
        g.add_transition(p, q, vec_from_i64(&[-1, 0, 0]));
        g.add_transition(q, p, vec_from_i64(&[0, 1, 0]));
        g.add_transition(q, q, vec_from_i64(&[2, 0, -1]));
        g.set_io(p, p);
        let start = ExtVector::finite(&[1, 0, 3]);
        let target = [ExtNat::fin(2), ExtNat::fin(2), ExtNat::fin(0)];
        let path = concrete_cover_path(&g, p, &start, p, &target, 10_000)
            .unwrap()
            .expect("coverable");
        let end = crate::vass::run_path(
            &g,
            &Configuration::new(p, start.clone()),
            &path,
            Domain::NatOmega,
        )
        .unwrap();
        assert_eq!(end.state, p);
        let loc = end.location.to_finite().unwrap();
        assert!(loc[0] >= Int::from(2) && loc[1] >= Int::from(2));

        // Unreachable target comes back as None, not an error.
        let target = [ExtNat::fin(0), ExtNat::fin(0), ExtNat::fin(4)];
        assert_eq!(concrete_cover_path(&g, p, &start, p, &target, 10_000).unwrap(), None);
    }
}
