use std::cmp::Ordering;
use std::fmt;

use crate::game::{ParityGame, Player, VertexIndex};
use crate::measure::{Measure, MeasureDomain, MeasureMap};
use crate::solvers::{LiftPolicy, Lifter};

pub type NodeId = usize;

/// A vertex together with one of the values it held during lifting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LhNode {
    pub vertex: VertexIndex,
    pub value: Measure,
    /// 0 for the initial zero values, otherwise the position of the lift.
    pub lift_index: u64,
    /// For each successor of `vertex`, in game order, the node holding its
    /// value at the moment of the lift. Empty for initial nodes.
    pub snapshot: Vec<NodeId>,
    /// The node this one replaced.
    pub previous: Option<NodeId>,
}

/// Every effective lift of one run, with successor snapshots.
#[derive(Clone, Debug)]
pub struct LiftHistory {
    nodes: Vec<LhNode>,
    latest: Vec<NodeId>,
    measure: MeasureMap,
    domain: MeasureDomain,
}

/// Runs plain lifting over `game` and records the history, optionally
/// stopping right after the first lift to top.
pub fn record_lhg(game: &ParityGame, policy: LiftPolicy, stop_at_first_top: bool) -> LiftHistory {
    let domain = MeasureDomain::for_game(game);
    let mut measure = MeasureMap::for_domain(game, &domain);
    let mut nodes: Vec<LhNode> = game
        .vertices()
        .map(|v| LhNode {
            vertex: v,
            value: domain.zero(),
            lift_index: 0,
            snapshot: Vec::new(),
            previous: None,
        })
        .collect();
    let mut latest: Vec<NodeId> = game.vertices().collect();

    let mut lifter = Lifter::new(game, &domain, None, policy);
    while let Some(v) = lifter.next(&mut measure) {
        let snapshot = game.successors(v).iter().map(|&w| latest[w]).collect();
        let id = nodes.len();
        nodes.push(LhNode {
            vertex: v,
            value: measure.get(v),
            lift_index: measure.total_lifts(),
            snapshot,
            previous: Some(latest[v]),
        });
        latest[v] = id;
        if stop_at_first_top && measure.is_top(v) {
            break;
        }
    }
    LiftHistory {
        nodes,
        latest,
        measure,
        domain,
    }
}

impl LiftHistory {
    pub fn nodes(&self) -> &[LhNode] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &LhNode {
        &self.nodes[id]
    }

    /// Number of effective lifts recorded.
    pub fn num_lifts(&self) -> usize {
        self.nodes.len() - self.latest.len()
    }

    /// The node carrying the current value of `v`.
    pub fn latest(&self, v: VertexIndex) -> Option<NodeId> {
        self.latest.get(v).copied()
    }

    /// The measure when recording stopped.
    pub fn measure(&self) -> &MeasureMap {
        &self.measure
    }

    pub fn domain(&self) -> &MeasureDomain {
        &self.domain
    }

    /// Snapshot successor of largest value, lowest vertex index on ties.
    pub fn max_successor(&self, id: NodeId) -> Option<NodeId> {
        self.extreme_successor(id, Ordering::Greater)
    }

    /// Snapshot successor of least value, lowest vertex index on ties.
    pub fn min_successor(&self, id: NodeId) -> Option<NodeId> {
        self.extreme_successor(id, Ordering::Less)
    }

    fn extreme_successor(&self, id: NodeId, wanted: Ordering) -> Option<NodeId> {
        let mut best: Option<NodeId> = None;
        for &s in &self.nodes[id].snapshot {
            best = Some(match best {
                None => s,
                Some(b) => {
                    let ord = self.nodes[s].value.cmp(&self.nodes[b].value);
                    if ord == wanted || (ord.is_eq() && self.nodes[s].vertex < self.nodes[b].vertex) {
                        s
                    } else {
                        b
                    }
                }
            });
        }
        best
    }

    /// One record per effective lift, in order.
    pub fn trace(&self) -> impl Iterator<Item = TraceRecord> + '_ {
        self.nodes[self.latest.len()..].iter().map(|node| TraceRecord {
            lift_index: node.lift_index,
            vertex: node.vertex,
            old: self.nodes[node.previous.expect("lifted nodes replace an older one")].value.clone(),
            new: node.value.clone(),
            snapshot: node
                .snapshot
                .iter()
                .map(|&s| (self.nodes[s].vertex, self.nodes[s].value.clone()))
                .collect(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    pub lift_index: u64,
    pub vertex: VertexIndex,
    pub old: Measure,
    pub new: Measure,
    pub snapshot: Vec<(VertexIndex, Measure)>,
}

/// A snapshot law that fails at a recorded node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawViolation {
    pub node: NodeId,
    pub law: &'static str,
}

impl fmt::Display for LawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at node {}", self.law, self.node)
    }
}

/// Checks how every lifted node's value relates to the least (even owner)
/// or greatest (odd owner) value in its snapshot.
pub fn check_snapshot_laws(game: &ParityGame, history: &LiftHistory) -> Vec<LawViolation> {
    let domain = history.domain();
    let mut violations = Vec::new();
    for (id, node) in history.nodes.iter().enumerate() {
        if node.lift_index == 0 {
            continue;
        }
        let p = game.priority(node.vertex) as usize;
        let odd_priority = p % 2 == 1;
        let (extreme, base) = match game.owner(node.vertex) {
            Player::Even => (history.min_successor(id), 11),
            Player::Odd => (history.max_successor(id), 13),
        };
        let Some(extreme) = extreme else {
            violations.push(LawViolation { node: id, law: "snapshot" });
            continue;
        };
        let s = &history.nodes[extreme].value;
        let mut fail = |law: &'static str| violations.push(LawViolation { node: id, law });

        match &node.value {
            Measure::Finite(m) => {
                if m.iter().skip(p + 1).any(|&x| x != 0) {
                    fail("PLH.0");
                }
                let ok = match s {
                    Measure::Top => false,
                    Measure::Finite(s) if !odd_priority => s[..=p] == m[..=p],
                    Measure::Finite(s) => match m.iter().rposition(|&x| x > 0) {
                        None => false,
                        Some(i) => {
                            s[..i] == m[..i]
                                && s[i] + 1 == m[i]
                                && (i + 1..=p).all(|j| s[j] == domain.cap(j))
                        }
                    },
                };
                if !ok {
                    fail(law_name(base + odd_priority as u32));
                }
            }
            Measure::Top => {
                let ok = match s {
                    Measure::Top => true,
                    Measure::Finite(s) => odd_priority && (0..=p).all(|j| s[j] == domain.cap(j)),
                };
                if !ok {
                    fail(law_name(base + 10 + odd_priority as u32));
                }
            }
        }
    }
    violations
}

fn law_name(code: u32) -> &'static str {
    match code {
        11 => "PLH.11",
        12 => "PLH.12",
        13 => "PLH.13",
        14 => "PLH.14",
        21 => "PLH.21",
        22 => "PLH.22",
        23 => "PLH.23",
        _ => "PLH.24",
    }
}

/// Checks that whenever a node `(w, m)` reaches another node `(w, m')`
/// through at least one snapshot edge, `m > m'`. Returns the first
/// offending pair.
pub fn check_cycle_decrease(history: &LiftHistory) -> Result<(), (NodeId, NodeId)> {
    let n = history.latest.len();
    let nodes = &history.nodes;
    // For each node and vertex, the reachable node of that vertex with the
    // largest value. Snapshots only point to earlier nodes.
    let mut best: Vec<Vec<Option<NodeId>>> = Vec::with_capacity(nodes.len());
    for (id, node) in nodes.iter().enumerate() {
        let mut row: Vec<Option<NodeId>> = vec![None; n];
        let offer = |row: &mut Vec<Option<NodeId>>, cand: NodeId| {
            let w = nodes[cand].vertex;
            if row[w].is_none_or(|b| nodes[cand].value > nodes[b].value) {
                row[w] = Some(cand);
            }
        };
        for &s in &node.snapshot {
            assert!(s < id, "snapshot refers to a later node");
            offer(&mut row, s);
            for cand in best[s].iter().flatten() {
                offer(&mut row, *cand);
            }
        }
        if let Some(other) = row[node.vertex] {
            if nodes[other].value >= node.value {
                return Err((id, other));
            }
        }
        best.push(row);
    }
    Ok(())
}
