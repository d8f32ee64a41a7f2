//! Weighted-sum scalarization with an exact solver.
//!
//! For a weight vector the solver enumerates facility configurations and, per
//! configuration and scenario, routes all flows with one min-cost flow whose
//! arc costs are the normalized, weighted per-unit contributions to the three
//! objectives. Sweeping a simplex lattice of weights yields supported Pareto
//! points.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::model::{self, NetworkInstance, ObjectiveVector, ScenarioFlows, Solution};
use crate::moga;
use crate::pareto::{self, FrontPoint, ParetoFront, Point, Provenance};

pub use crate::flow::{min_cost_flow, TransportPlan};

/// Largest number of facility configurations the exact solver will enumerate.
pub const CONFIGURATION_LIMIT: u128 = 1 << 20;

/// Tolerance on the weight sum.
pub const WEIGHT_TOLERANCE: f64 = 1e-9;

/// Added to every weight inside the solver so that ties between solutions
/// equal on the weighted objectives are broken toward Pareto-optimal ones.
const TIE_BREAK: f64 = 1e-9;

pub const DEFAULT_GRID: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightVector {
    pub cost: f64,
    pub co2: f64,
    pub dispatch: f64,
}

impl WeightVector {
    pub fn new(cost: f64, co2: f64, dispatch: f64) -> Result<Self> {
        let w = Self { cost, co2, dispatch };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        let a = self.as_array();
        if a.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::InvalidWeights(format!("{a:?} has a negative or non-finite entry")));
        }
        let sum: f64 = a.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_TOLERANCE {
            return Err(Error::InvalidWeights(format!("{a:?} sums to {sum}")));
        }
        Ok(())
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.cost, self.co2, self.dispatch]
    }

    /// Lattice `{(i, j, k) / g : i + j + k = g}` ordered by `i`, then `j`.
    pub fn simplex_lattice(g: usize) -> Vec<WeightVector> {
        let gf = g as f64;
        let mut out = Vec::new();
        for i in 0..=g {
            for j in 0..=g - i {
                let k = g - i - j;
                out.push(WeightVector {
                    cost: i as f64 / gf,
                    co2: j as f64 / gf,
                    dispatch: k as f64 / gf,
                });
            }
        }
        out
    }
}

const OBJECTIVE_NAMES: [&str; 3] = ["total_cost", "total_co2", "expected_dispatch"];

/// Utopia and nadir values of the canonical (all-minimized) objectives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormalizationBounds {
    pub utopia: Point,
    pub nadir: Point,
}

impl NormalizationBounds {
    pub fn ranges(&self) -> [f64; 3] {
        [0, 1, 2].map(|o| self.nadir[o] - self.utopia[o])
    }

    /// Replaces every non-positive range by 1 so the bounds can normalize
    /// objectives that do not vary across the single-objective optima.
    pub fn regularized(&self) -> Self {
        let mut nadir = self.nadir;
        for o in 0..3 {
            if !(nadir[o] > self.utopia[o]) {
                nadir[o] = self.utopia[o] + 1.0;
            }
        }
        Self { utopia: self.utopia, nadir }
    }

    /// Utopia point in native orientation.
    pub fn utopia_objectives(&self) -> ObjectiveVector {
        ObjectiveVector::from_canonical(self.utopia)
    }

    fn check(&self, w: &WeightVector) -> Result<[f64; 3]> {
        let ranges = self.ranges();
        for o in 0..3 {
            if w.as_array()[o] > 0.0 && !(ranges[o] > 0.0) {
                return Err(Error::DegenerateBounds(OBJECTIVE_NAMES[o]));
            }
        }
        Ok(ranges)
    }
}

pub fn canonicalize(v: &ObjectiveVector) -> Point {
    v.canonical()
}

/// `Σ_o w_o · (canonical_o(v) − utopia_o) / (nadir_o − utopia_o)`.
pub fn scalarize(w: &WeightVector, v: &ObjectiveVector, b: &NormalizationBounds) -> Result<f64> {
    let ranges = b.check(w)?;
    let c = v.canonical();
    let w = w.as_array();
    Ok((0..3)
        .filter(|&o| w[o] > 0.0)
        .map(|o| w[o] * (c[o] - b.utopia[o]) / ranges[o])
        .sum())
}

/// Linear per-unit pricing `kc·cost + ke·emission`, dispatch credited at `kd`.
#[derive(Debug, Clone, Copy)]
struct Pricing {
    k: [f64; 3],
}

impl Pricing {
    fn new(weights: [f64; 3], scales: [f64; 3]) -> Self {
        Self { k: [0, 1, 2].map(|o| (weights[o] + TIE_BREAK) / scales[o]) }
    }

    fn unit(&self, cost: f64, emission: f64) -> f64 {
        self.k[0] * cost + self.k[1] * emission
    }

    fn value(&self, v: &ObjectiveVector) -> f64 {
        let c = v.canonical();
        self.k[0] * c[0] + self.k[1] * c[1] + self.k[2] * c[2]
    }
}

/// One facility configuration: open flags per layer.
#[derive(Debug, Clone)]
struct Configuration {
    plants: Vec<bool>,
    warehouses: Vec<bool>,
    collection: Vec<bool>,
}

fn bits(mask: u64, n: usize) -> Vec<bool> {
    (0..n).map(|b| mask >> b & 1 == 1).collect()
}

fn layer_masks(capacities: &[f64], required: f64) -> Vec<u64> {
    let n = capacities.len();
    if n == 0 {
        return vec![0];
    }
    (1u64..1 << n)
        .filter(|&m| {
            let cap: f64 = (0..n).filter(|&b| m >> b & 1 == 1).map(|b| capacities[b]).sum();
            cap + 1e-9 >= required
        })
        .collect()
}

fn configurations(inst: &NetworkInstance) -> Result<Vec<Configuration>> {
    let facilities = inst.n_plants() + inst.n_warehouses() + inst.n_collection();
    let total: u128 = 1u128 << facilities.min(127);
    if total > CONFIGURATION_LIMIT {
        return Err(Error::Intractable { configurations: total, limit: CONFIGURATION_LIMIT });
    }
    let peak = inst.max_total_demand();
    let pm = layer_masks(&inst.plants.iter().map(|p| p.capacity).collect::<Vec<_>>(), peak);
    let wm = layer_masks(&inst.warehouses.iter().map(|w| w.capacity).collect::<Vec<_>>(), peak);
    let cm = layer_masks(
        &inst.collection_centers.iter().map(|c| c.capacity).collect::<Vec<_>>(),
        inst.alpha * peak,
    );
    let mut out = Vec::with_capacity(pm.len() * wm.len() * cm.len());
    for &p in &pm {
        for &w in &wm {
            for &c in &cm {
                out.push(Configuration {
                    plants: bits(p, inst.n_plants()),
                    warehouses: bits(w, inst.n_warehouses()),
                    collection: bits(c, inst.n_collection()),
                });
            }
        }
    }
    Ok(out)
}

/// Cheapest priced disposal route from collection center `l`, if any.
fn disposal_unit(inst: &NetworkInstance, pricing: &Pricing, l: usize) -> Option<f64> {
    inst.disposal_sites
        .iter()
        .zip(&inst.arcs.collection_disposal[l])
        .filter(|(_, a)| !a.is_forbidden())
        .map(|(d, a)| pricing.unit(a.cost + d.disposal_cost, a.emission + d.disposal_emission))
        .min_by(f64::total_cmp)
}

/// Routes one scenario for a fixed configuration.
///
/// Forward and reverse flows share one network because remanufactured units
/// offset new production at the receiving plant. Returns enter at the
/// customers pre-scaled by `q = 1 − β`, so one unit of network flow through
/// a collection center is one remanufactured unit; arc costs carry the
/// matching `1/q` factor and the disposal share's cheapest route.
fn route_scenario(
    inst: &NetworkInstance,
    cfg: &Configuration,
    pricing: &Pricing,
    demand: &[f64],
) -> Result<ScenarioFlows> {
    let (np, nw, nk, nl) = (
        inst.n_plants(),
        inst.n_warehouses(),
        inst.n_customers(),
        inst.n_collection(),
    );
    let q = 1.0 - inst.beta;
    let mut net = FlowNetwork::new(0);
    let source = net.add_node();
    let dump = net.add_node();
    let p_in: Vec<usize> = (0..np).map(|_| net.add_node()).collect();
    let p_out: Vec<usize> = (0..np).map(|_| net.add_node()).collect();
    let w_in: Vec<usize> = (0..nw).map(|_| net.add_node()).collect();
    let w_out: Vec<usize> = (0..nw).map(|_| net.add_node()).collect();
    let cust: Vec<usize> = (0..nk).map(|_| net.add_node()).collect();
    let ret: Vec<usize> = (0..nk).map(|_| net.add_node()).collect();
    let l_in: Vec<usize> = (0..nl).map(|_| net.add_node()).collect();
    let l_out: Vec<usize> = (0..nl).map(|_| net.add_node()).collect();

    let total_demand: f64 = demand.iter().sum();
    let returns: Vec<f64> = demand
        .iter()
        .map(|d| if q > 0.0 { q * inst.alpha * d } else { inst.alpha * d })
        .collect();
    let total_returns: f64 = returns.iter().sum();

    // Supply not needed as new production bypasses the plants.
    net.add_edge(source, dump, f64::INFINITY, 0.0);
    for i in (0..np).filter(|&i| cfg.plants[i]) {
        let p = &inst.plants[i];
        net.add_edge(source, p_in[i], f64::INFINITY, pricing.unit(p.production_cost, p.production_emission));
        net.add_edge(p_in[i], p_out[i], p.capacity, 0.0);
        // Remanufactured units beyond the plant's outbound volume.
        net.add_edge(p_in[i], dump, f64::INFINITY, 0.0);
    }
    let mut ya_ids = vec![vec![None; nw]; np];
    for i in (0..np).filter(|&i| cfg.plants[i]) {
        for j in (0..nw).filter(|&j| cfg.warehouses[j]) {
            let a = inst.arcs.plant_warehouse[i][j];
            if !a.is_forbidden() {
                ya_ids[i][j] = Some(net.add_edge(p_out[i], w_in[j], f64::INFINITY, pricing.unit(a.cost, a.emission)));
            }
        }
    }
    let mut yb_ids = vec![vec![None; nk]; nw];
    for j in (0..nw).filter(|&j| cfg.warehouses[j]) {
        let w = &inst.warehouses[j];
        net.add_edge(w_in[j], w_out[j], w.capacity, pricing.unit(w.handling_cost, w.handling_emission));
        for k in 0..nk {
            let a = inst.arcs.warehouse_customer[j][k];
            if !a.is_forbidden() {
                let unit = pricing.unit(a.cost, a.emission) - pricing.k[2] * w.reliability;
                yb_ids[j][k] = Some(net.add_edge(w_out[j], cust[k], f64::INFINITY, unit));
            }
        }
    }

    let mut yc_ids = vec![vec![None; nl]; nk];
    let mut ye_ids = vec![vec![None; np]; nl];
    let scale = if q > 0.0 { q } else { 1.0 };
    for l in (0..nl).filter(|&l| cfg.collection[l]) {
        let c = &inst.collection_centers[l];
        let disposal = if inst.beta > 0.0 {
            match disposal_unit(inst, pricing, l) {
                Some(u) => inst.beta * u,
                None => continue,
            }
        } else {
            0.0
        };
        for k in 0..nk {
            let a = inst.arcs.customer_collection[k][l];
            if !a.is_forbidden() {
                let unit = pricing.unit(a.cost + c.disassembly_cost, a.emission + c.disassembly_emission) + disposal;
                yc_ids[k][l] = Some(net.add_edge(ret[k], l_in[l], f64::INFINITY, unit / scale));
            }
        }
        net.add_edge(l_in[l], l_out[l], scale * c.capacity, 0.0);
        if q > 0.0 {
            for i in (0..np).filter(|&i| cfg.plants[i]) {
                let a = inst.arcs.collection_plant[l][i];
                if !a.is_forbidden() {
                    let p = &inst.plants[i];
                    let unit = pricing.unit(
                        a.cost + p.remanufacturing_cost,
                        a.emission + p.remanufacturing_emission,
                    );
                    ye_ids[l][i] = Some(net.add_edge(l_out[l], p_in[i], f64::INFINITY, unit));
                }
            }
        } else {
            net.add_edge(l_out[l], dump, f64::INFINITY, 0.0);
        }
    }

    let mut balance = vec![0.0; net.node_count()];
    balance[source] = total_demand;
    balance[dump] = -total_returns;
    for k in 0..nk {
        balance[cust[k]] = -demand[k];
        balance[ret[k]] = returns[k];
    }
    net.solve(&balance)?;

    let read = |ids: &[Vec<Option<usize>>], factor: f64| -> Vec<Vec<f64>> {
        ids.iter()
            .map(|row| row.iter().map(|id| id.map_or(0.0, |e| net.flow(e) * factor)).collect())
            .collect()
    };
    let mut f = ScenarioFlows::zeros(inst);
    f.ya = read(&ya_ids, 1.0);
    f.yb = read(&yb_ids, 1.0);
    f.yc = read(&yc_ids, 1.0 / scale);
    f.ye = read(&ye_ids, 1.0);

    if inst.beta > 0.0 && nl > 0 {
        let inflow: Vec<f64> = (0..nl).map(|l| f.yc.iter().map(|row| row[l]).sum()).collect();
        f.yd = route_disposal(inst, pricing, &inflow)?;
        if q > 0.0 {
            // Keep collection balance exact: remanufactured = inflow − disposed.
            for l in 0..nl {
                let disposed: f64 = f.yd[l].iter().sum();
                let reman: f64 = f.ye[l].iter().sum();
                let target = inflow[l] - disposed;
                if reman > 0.0 {
                    let ratio = target / reman;
                    f.ye[l].iter_mut().for_each(|x| *x *= ratio);
                }
            }
        }
    }
    Ok(f)
}

/// Sends `β · inflow_l` from every collection center to the disposal sites
/// at minimum priced cost under disposal capacities.
fn route_disposal(inst: &NetworkInstance, pricing: &Pricing, inflow: &[f64]) -> Result<Vec<Vec<f64>>> {
    let (nl, nm) = (inst.n_collection(), inst.n_disposal());
    let mut net = FlowNetwork::new(nl + nm + 1);
    let sink = nl + nm;
    let mut ids = vec![vec![None; nm]; nl];
    for l in 0..nl {
        for m in 0..nm {
            let a = inst.arcs.collection_disposal[l][m];
            if !a.is_forbidden() {
                let d = &inst.disposal_sites[m];
                let unit = pricing.unit(a.cost + d.disposal_cost, a.emission + d.disposal_emission);
                ids[l][m] = Some(net.add_edge(l, nl + m, f64::INFINITY, unit));
            }
        }
    }
    for m in 0..nm {
        net.add_edge(nl + m, sink, inst.disposal_sites[m].capacity, 0.0);
    }
    let mut balance = vec![0.0; nl + nm + 1];
    let shares: Vec<f64> = inflow.iter().map(|x| inst.beta * x).collect();
    balance[..nl].copy_from_slice(&shares);
    balance[sink] = -shares.iter().sum::<f64>();
    net.solve(&balance)?;
    let mut yd: Vec<Vec<f64>> = ids
        .iter()
        .map(|row| row.iter().map(|id| id.map_or(0.0, |e| net.flow(e))).collect())
        .collect();
    // Rescale rows so each matches its share exactly.
    for l in 0..nl {
        let s: f64 = yd[l].iter().sum();
        if s > 0.0 {
            let ratio = shares[l] / s;
            yd[l].iter_mut().for_each(|x| *x *= ratio);
        }
    }
    Ok(yd)
}

fn solve_configuration(inst: &NetworkInstance, cfg: &Configuration, pricing: &Pricing) -> Option<(Solution, ObjectiveVector)> {
    let mut flows = Vec::with_capacity(inst.n_scenarios());
    for demand in inst.demand_matrix() {
        flows.push(route_scenario(inst, cfg, pricing, &demand).ok()?);
    }
    let sol = Solution {
        open_plants: cfg.plants.clone(),
        open_warehouses: cfg.warehouses.clone(),
        open_collection: cfg.collection.clone(),
        flows,
    };
    let v = model::evaluate(inst, &sol).ok()?;
    Some((sol, v))
}

fn solve_priced(inst: &NetworkInstance, pricing: &Pricing) -> Result<(Solution, ObjectiveVector)> {
    let configs = configurations(inst)?;
    let best = configs
        .par_iter()
        .enumerate()
        .filter_map(|(idx, cfg)| solve_configuration(inst, cfg, pricing).map(|(s, v)| (idx, pricing.value(&v), s, v)))
        .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    best.map(|(_, _, s, v)| (s, v)).ok_or(Error::NoFeasibleConfiguration)
}

/// Exact minimizer of the weighted, normalized objective sum.
///
/// Every facility configuration with at least one open facility per layer
/// and enough capacity for the largest scenario is solved by min-cost flow;
/// the configuration with the lowest scalarized value wins.
pub fn solve_weighted_exact(
    inst: &NetworkInstance,
    w: &WeightVector,
    b: &NormalizationBounds,
) -> Result<(Solution, ObjectiveVector)> {
    w.validate()?;
    let ranges = b.check(w)?;
    // Unweighted objectives only receive the tie-break weight; any positive
    // scale works for them.
    let scales = [0, 1, 2].map(|o| if ranges[o] > 0.0 { ranges[o] } else { 1.0 });
    solve_priced(inst, &Pricing::new(w.as_array(), scales))
}

/// Magnitude of each objective for an arbitrary decoded solution, at least 1.
fn objective_scales(inst: &NetworkInstance) -> Result<[f64; 3]> {
    let layout = moga::GenotypeLayout::of(inst);
    let sol = moga::decode(&moga::Genotype(vec![1.0; layout.len()]), inst)?;
    let c = model::evaluate(inst, &sol)?.canonical();
    Ok(c.map(|x| x.abs().max(1.0)))
}

/// Utopia from the three single-objective optima; nadir as the worst value
/// of each objective across those three solutions.
pub fn compute_bounds(inst: &NetworkInstance) -> Result<NormalizationBounds> {
    let scales = objective_scales(inst)?;
    let mut optima = Vec::with_capacity(3);
    for o in 0..3 {
        let mut weights = [0.0; 3];
        weights[o] = 1.0;
        optima.push(solve_priced(inst, &Pricing::new(weights, scales))?.1.canonical());
    }
    let utopia = [0, 1, 2].map(|o| optima[o][o]);
    let nadir = [0, 1, 2].map(|o| optima.iter().map(|p| p[o]).fold(f64::NEG_INFINITY, f64::max));
    Ok(NormalizationBounds { utopia, nadir })
}

/// One exact solve of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepEntry {
    pub weights: WeightVector,
    pub solution: Solution,
    pub objectives: ObjectiveVector,
}

#[derive(Debug, Clone)]
pub struct Sweep {
    pub bounds: NormalizationBounds,
    pub entries: Vec<SweepEntry>,
    pub front: ParetoFront,
}

/// Solves every weight vector of the simplex lattice with resolution `g`.
/// Degenerate bound ranges are regularized to 1.
pub fn sweep(inst: &NetworkInstance, g: usize) -> Result<Sweep> {
    if g == 0 {
        return Err(Error::InvalidWeights("grid resolution must be at least 1".into()));
    }
    let bounds = compute_bounds(inst)?;
    let usable = bounds.regularized();
    let entries = WeightVector::simplex_lattice(g)
        .into_par_iter()
        .map(|w| {
            solve_weighted_exact(inst, &w, &usable).map(|(solution, objectives)| SweepEntry {
                weights: w,
                solution,
                objectives,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let front = pareto::nondominated_filter(
        entries
            .iter()
            .map(|e| {
                FrontPoint::new(e.objectives, e.solution.clone(), Provenance::WeightedSum { weights: e.weights.as_array() })
            })
            .collect(),
    );
    Ok(Sweep { bounds, entries, front })
}

/// Non-dominated weighted-sum optima over the simplex lattice of resolution `g`.
pub fn sweep_weights(inst: &NetworkInstance, g: usize) -> Result<ParetoFront> {
    Ok(sweep(inst, g)?.front)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;
    use crate::model::tests::one_one_one;
    use proptest::prelude::*;

    fn unit_bounds() -> NormalizationBounds {
        NormalizationBounds { utopia: [0.0, 0.0, -10.0], nadir: [100.0, 10.0, 0.0] }
    }

    #[test]
    fn canonical_sign_flip() {
        assert_eq!(canonicalize(&ObjectiveVector::new(260.0, 28.0, 10.0)), [260.0, 28.0, -10.0]);
    }

    #[test]
    fn utopia_scalarizes_to_zero() {
        let b = unit_bounds();
        let w = WeightVector::new(0.2, 0.3, 0.5).unwrap();
        assert_eq!(scalarize(&w, &b.utopia_objectives(), &b).unwrap(), 0.0);
    }

    #[test]
    fn cost_halfway_is_one_half() {
        let b = unit_bounds();
        let w = WeightVector::new(1.0, 0.0, 0.0).unwrap();
        let v = ObjectiveVector::new(50.0, 7.0, 3.0);
        assert_eq!(scalarize(&w, &v, &b).unwrap(), 0.5);
    }

    #[test]
    fn degenerate_bounds_are_rejected_only_when_weighted() {
        let b = NormalizationBounds { utopia: [0.0, 5.0, -1.0], nadir: [1.0, 5.0, 0.0] };
        let v = ObjectiveVector::new(0.5, 5.0, 0.5);
        assert!(matches!(
            scalarize(&WeightVector::new(0.5, 0.5, 0.0).unwrap(), &v, &b),
            Err(Error::DegenerateBounds("total_co2"))
        ));
        assert!(scalarize(&WeightVector::new(0.5, 0.0, 0.5).unwrap(), &v, &b).is_ok());
        assert_eq!(b.regularized().nadir[1], 6.0);
    }

    #[test]
    fn weights_must_be_a_distribution() {
        assert!(WeightVector::new(0.5, 0.5, 0.1).is_err());
        assert!(WeightVector::new(-0.1, 0.6, 0.5).is_err());
        assert!(WeightVector::new(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0).is_ok());
    }

    #[test]
    fn lattice_sizes() {
        assert_eq!(WeightVector::simplex_lattice(1).len(), 3);
        assert_eq!(WeightVector::simplex_lattice(10).len(), 66);
        for w in WeightVector::simplex_lattice(7) {
            w.validate().unwrap();
        }
    }

    #[test]
    fn zero_demand_opens_the_cheapest_minimum() {
        let mut inst = instances::oracle_tiny();
        for d in inst.scenarios.0[0].demand.values_mut() {
            *d = 0.0;
        }
        let w = WeightVector::new(1.0, 0.0, 0.0).unwrap();
        let (sol, v) = solve_weighted_exact(&inst, &w, &unit_bounds()).unwrap();
        let cheapest = |costs: Vec<f64>| costs.into_iter().fold(f64::INFINITY, f64::min);
        let expected = cheapest(inst.plants.iter().map(|p| p.fixed_cost).collect())
            + cheapest(inst.warehouses.iter().map(|w| w.fixed_cost).collect())
            + cheapest(inst.collection_centers.iter().map(|c| c.fixed_cost).collect());
        assert_eq!(v.total_cost, expected);
        assert_eq!(sol.open_plants.iter().filter(|&&o| o).count(), 1);
    }

    #[test]
    fn single_route_instance_is_forced() {
        let inst = one_one_one(10.0);
        let w = WeightVector::new(0.4, 0.3, 0.3).unwrap();
        let (_, v) = solve_weighted_exact(&inst, &w, &unit_bounds()).unwrap();
        assert!((v.total_cost - 260.0).abs() < 1e-9);
        assert!((v.total_co2 - 28.0).abs() < 1e-9);
        assert!((v.expected_dispatch - 10.0).abs() < 1e-9);
    }

    #[test]
    fn tractability_guard() {
        let mut inst = instances::oracle_tiny();
        let p = inst.plants[0].clone();
        for _ in 0..20 {
            inst.plants.push(p.clone());
        }
        assert!(matches!(configurations(&inst), Err(Error::Intractable { .. })));
    }

    #[test]
    fn bounds_are_ordered_and_deterministic() {
        let inst = instances::oracle_tiny();
        let a = compute_bounds(&inst).unwrap();
        let b = compute_bounds(&inst).unwrap();
        assert_eq!(a, b);
        for o in 0..3 {
            assert!(a.utopia[o] <= a.nadir[o]);
        }
    }

    #[test]
    fn corner_sweep_has_at_most_three_points() {
        let inst = instances::oracle_tiny();
        let s = sweep(&inst, 1).unwrap();
        assert_eq!(s.entries.len(), 3);
        assert!(s.front.len() <= 3 && !s.front.is_empty());
    }

    proptest! {
        #[test]
        fn scalarize_is_monotone(
            c in 0.0f64..100.0, e in 0.0f64..10.0, d in 0.0f64..10.0,
            bump in 1e-3f64..5.0, o in 0usize..3,
            wc in 0.01f64..1.0, we in 0.01f64..1.0, wd in 0.01f64..1.0,
        ) {
            let s = wc + we + wd;
            let w = WeightVector::new(wc / s, we / s, 1.0 - wc / s - we / s).unwrap();
            let b = unit_bounds();
            let v = ObjectiveVector::new(c, e, d);
            let mut worse = v.canonical();
            worse[o] += bump;
            let base = scalarize(&w, &v, &b).unwrap();
            let bumped = scalarize(&w, &ObjectiveVector::from_canonical(worse), &b).unwrap();
            prop_assert!(bumped > base);
        }
    }
}
