//! Min-cost flow by successive shortest augmenting paths.
//!
//! Initial node potentials come from Bellman–Ford so arcs may carry negative
//! cost (the network must be free of negative cycles); later rounds run
//! Dijkstra on reduced costs.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::model::FORBIDDEN_ARC_COST;

/// Residual capacities at or below this are treated as saturated.
const EPS: f64 = 1e-10;

#[derive(Debug, Clone)]
struct Edge {
    to: usize,
    cap: f64,
    cost: f64,
}

/// Directed network with real capacities and costs.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
    original_cap: Vec<f64>,
}

#[derive(Clone, Copy, PartialEq)]
struct HeapKey(f64);

impl Eq for HeapKey {}

impl PartialOrd for HeapKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        Self {
            edges: Vec::new(),
            adj: vec![Vec::new(); nodes],
            original_cap: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn add_node(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Adds an arc and returns its id. `cap` may be `f64::INFINITY`.
    pub fn add_edge(&mut self, from: usize, to: usize, cap: f64, cost: f64) -> usize {
        let id = self.edges.len();
        self.edges.push(Edge { to, cap, cost });
        self.edges.push(Edge { to: from, cap: 0.0, cost: -cost });
        self.adj[from].push(id);
        self.adj[to].push(id + 1);
        self.original_cap.push(cap);
        self.original_cap.push(0.0);
        id
    }

    /// Flow currently on arc `id`.
    pub fn flow(&self, id: usize) -> f64 {
        self.edges[id ^ 1].cap
    }

    /// Routes `balance[v]` units out of every node with positive balance into
    /// the nodes with negative balance at minimum total cost. Returns the cost.
    pub fn solve(&mut self, balance: &[f64]) -> Result<f64> {
        assert_eq!(balance.len(), self.node_count(), "one balance entry per node");
        let supply: f64 = balance.iter().filter(|b| **b > 0.0).sum();
        let demand: f64 = -balance.iter().filter(|b| **b < 0.0).sum::<f64>();
        let scale = 1.0 + supply.max(demand);
        if (supply - demand).abs() > 1e-9 * scale {
            return Err(Error::FlowInfeasible(format!(
                "unbalanced: supply {supply} vs demand {demand}"
            )));
        }
        let source = self.add_node();
        let sink = self.add_node();
        for (v, &b) in balance.iter().enumerate() {
            if b > 0.0 {
                self.add_edge(source, v, b, 0.0);
            } else if b < 0.0 {
                self.add_edge(v, sink, -b, 0.0);
            }
        }

        let n = self.node_count();
        let mut potential = self.bellman_ford(source);
        let mut shipped = 0.0;
        let mut cost = 0.0;
        let mut dist = vec![f64::INFINITY; n];
        let mut parent: Vec<Option<usize>> = vec![None; n];
        while supply - shipped > EPS * scale {
            dist.fill(f64::INFINITY);
            parent.fill(None);
            dist[source] = 0.0;
            let mut heap = BinaryHeap::new();
            heap.push(Reverse((HeapKey(0.0), source)));
            while let Some(Reverse((HeapKey(d), u))) = heap.pop() {
                if d > dist[u] {
                    continue;
                }
                for &e in &self.adj[u] {
                    let edge = &self.edges[e];
                    if edge.cap <= EPS {
                        continue;
                    }
                    let reduced = (edge.cost + potential[u] - potential[edge.to]).max(0.0);
                    let nd = d + reduced;
                    if nd < dist[edge.to] {
                        dist[edge.to] = nd;
                        parent[edge.to] = Some(e);
                        heap.push(Reverse((HeapKey(nd), edge.to)));
                    }
                }
            }
            if !dist[sink].is_finite() {
                break;
            }
            let horizon = dist[sink];
            for v in 0..n {
                potential[v] += dist[v].min(horizon);
            }

            let mut push = supply - shipped;
            let mut v = sink;
            while let Some(e) = parent[v] {
                push = push.min(self.edges[e].cap);
                v = self.edges[e ^ 1].to;
            }
            let mut v = sink;
            while let Some(e) = parent[v] {
                self.edges[e].cap -= push;
                self.edges[e ^ 1].cap += push;
                cost += push * self.edges[e].cost;
                v = self.edges[e ^ 1].to;
            }
            shipped += push;
        }
        if supply - shipped > 1e-9 * scale {
            return Err(Error::FlowInfeasible(format!(
                "only {shipped} of {supply} units can be routed"
            )));
        }
        Ok(cost)
    }

    fn bellman_ford(&self, source: usize) -> Vec<f64> {
        let n = self.node_count();
        let mut dist = vec![f64::INFINITY; n];
        dist[source] = 0.0;
        for _ in 0..n {
            let mut changed = false;
            for u in 0..n {
                if !dist[u].is_finite() {
                    continue;
                }
                for &e in &self.adj[u] {
                    let edge = &self.edges[e];
                    if edge.cap > EPS && dist[u] + edge.cost < dist[edge.to] {
                        dist[edge.to] = dist[u] + edge.cost;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        dist.into_iter().map(|d| if d.is_finite() { d } else { 0.0 }).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransportPlan {
    /// `flow[i][j]` units from source `i` to sink `j`.
    pub flow: Vec<Vec<f64>>,
    pub cost: f64,
}

/// Minimum-cost transportation plan. Arcs whose cost is at least
/// [`FORBIDDEN_ARC_COST`] are unusable; capacities may be infinite.
pub fn min_cost_flow(
    supplies: &[f64],
    demands: &[f64],
    capacities: &[Vec<f64>],
    costs: &[Vec<f64>],
) -> Result<TransportPlan> {
    let (ns, nd) = (supplies.len(), demands.len());
    if costs.len() != ns || costs.iter().any(|r| r.len() != nd) {
        return Err(Error::FlowInfeasible("cost matrix shape mismatch".into()));
    }
    if capacities.len() != ns || capacities.iter().any(|r| r.len() != nd) {
        return Err(Error::FlowInfeasible("capacity matrix shape mismatch".into()));
    }
    let mut net = FlowNetwork::new(ns + nd);
    let mut ids = vec![vec![None; nd]; ns];
    for i in 0..ns {
        for j in 0..nd {
            if costs[i][j] < FORBIDDEN_ARC_COST && capacities[i][j] > 0.0 {
                ids[i][j] = Some(net.add_edge(i, ns + j, capacities[i][j], costs[i][j]));
            }
        }
    }
    let balance: Vec<f64> = supplies
        .iter()
        .copied()
        .chain(demands.iter().map(|d| -d))
        .collect();
    let cost = net.solve(&balance)?;
    let flow = ids
        .iter()
        .map(|row| row.iter().map(|id| id.map_or(0.0, |e| net.flow(e))).collect())
        .collect();
    Ok(TransportPlan { flow, cost })
}
