//! Real-coded multi-objective genetic algorithm (NSGA-II survival).
//!
//! A [`Genotype`] holds one key in `[0, 1]` per facility and per routing arc.
//! [`decode`] turns any genotype into a feasible [`Solution`]: facility keys
//! decide which facilities open, arc keys give greedy routing priorities.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{self, NetworkInstance, ObjectiveVector, Solution};
use crate::pareto::{self, FrontPoint, ParetoFront, Point, Provenance};

pub type GaRng = ChaCha8Rng;

/// Threshold at or above which a facility key opens the facility.
pub const OPEN_THRESHOLD: f64 = 0.5;

/// Offsets of each gene block inside a genotype.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenotypeLayout {
    pub plants: usize,
    pub warehouses: usize,
    pub collection: usize,
    pub customers: usize,
}

impl GenotypeLayout {
    pub fn of(inst: &NetworkInstance) -> Self {
        Self {
            plants: inst.n_plants(),
            warehouses: inst.n_warehouses(),
            collection: inst.n_collection(),
            customers: inst.n_customers(),
        }
    }

    pub fn len(&self) -> usize {
        self.arc_offset()
            + self.plants * self.warehouses
            + self.warehouses * self.customers
            + self.customers * self.collection
            + self.collection * self.plants
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn plant_key(&self, i: usize) -> usize {
        i
    }

    pub fn warehouse_key(&self, j: usize) -> usize {
        self.plants + j
    }

    pub fn collection_key(&self, l: usize) -> usize {
        self.plants + self.warehouses + l
    }

    fn arc_offset(&self) -> usize {
        self.plants + self.warehouses + self.collection
    }

    pub fn plant_warehouse_key(&self, i: usize, j: usize) -> usize {
        self.arc_offset() + i * self.warehouses + j
    }

    pub fn warehouse_customer_key(&self, j: usize, k: usize) -> usize {
        self.arc_offset() + self.plants * self.warehouses + j * self.customers + k
    }

    pub fn customer_collection_key(&self, k: usize, l: usize) -> usize {
        self.arc_offset()
            + self.plants * self.warehouses
            + self.warehouses * self.customers
            + k * self.collection
            + l
    }

    pub fn collection_plant_key(&self, l: usize, i: usize) -> usize {
        self.arc_offset()
            + self.plants * self.warehouses
            + self.warehouses * self.customers
            + self.customers * self.collection
            + l * self.plants
            + i
    }

    /// Index ranges of the facility-key blocks (plants, warehouses, collection).
    pub fn facility_blocks(&self) -> [std::ops::Range<usize>; 3] {
        let w = self.plants;
        let c = w + self.warehouses;
        [0..w, w..c, c..c + self.collection]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Genotype(pub Vec<f64>);

impl Genotype {
    pub fn genes(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn bits(&self) -> Vec<u64> {
        self.0.iter().map(|g| g.to_bits()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaConfig {
    pub population_size: usize,
    pub max_generations: usize,
    pub crossover_rate: f64,
    /// Per-gene mutation probability; `None` means `1 / genotype length`.
    pub mutation_rate: Option<f64>,
    pub sbx_eta: f64,
    pub mutation_eta: f64,
    pub tournament_size: usize,
    /// Stop when archive hypervolume improves by at most `stall_tolerance`
    /// (relative) over this many generations. Zero disables the test.
    pub stall_generations: usize,
    pub stall_tolerance: f64,
    pub seed: u64,
    /// Archive size bound, enforced by crowding-distance truncation.
    pub archive_capacity: usize,
    /// Evaluate individuals on the rayon pool. Results do not depend on it.
    pub parallel: bool,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population_size: 100,
            max_generations: 200,
            crossover_rate: 0.9,
            mutation_rate: None,
            sbx_eta: 15.0,
            mutation_eta: 20.0,
            tournament_size: 2,
            stall_generations: 25,
            stall_tolerance: 1e-4,
            seed: 42,
            archive_capacity: 1000,
            parallel: true,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.population_size < 4 || !self.population_size.is_multiple_of(2) {
            return bad(format!("population_size {} must be even and >= 4", self.population_size));
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return bad(format!("crossover_rate {} outside [0, 1]", self.crossover_rate));
        }
        if let Some(pm) = self.mutation_rate {
            if !(0.0..=1.0).contains(&pm) {
                return bad(format!("mutation_rate {pm} outside [0, 1]"));
            }
        }
        if !(self.sbx_eta > 0.0) || !(self.mutation_eta > 0.0) {
            return bad("distribution indices must be positive".into());
        }
        if self.tournament_size < 2 {
            return bad(format!("tournament_size {} must be >= 2", self.tournament_size));
        }
        if !(self.stall_tolerance >= 0.0) {
            return bad(format!("stall_tolerance {} must be >= 0", self.stall_tolerance));
        }
        if self.archive_capacity == 0 {
            return bad("archive_capacity must be positive".into());
        }
        Ok(())
    }

    fn mutation_rate_for(&self, genes: usize) -> f64 {
        self.mutation_rate.unwrap_or(1.0 / genes.max(1) as f64)
    }
}

/// Draws `population_size` uniform genotypes. In each genotype the largest
/// facility key of any layer with no key at or above 0.5 is lifted into
/// `[0.5, 0.75)`, so no layer starts fully closed.
pub fn init_population(inst: &NetworkInstance, cfg: &GaConfig, rng: &mut GaRng) -> Vec<Genotype> {
    let layout = GenotypeLayout::of(inst);
    (0..cfg.population_size)
        .map(|_| {
            let mut genes: Vec<f64> = (0..layout.len()).map(|_| rng.random::<f64>()).collect();
            for block in layout.facility_blocks() {
                if block.is_empty() || genes[block.clone()].iter().any(|&g| g >= OPEN_THRESHOLD) {
                    continue;
                }
                let best = argmax(&genes[block.clone()]) + block.start;
                genes[best] = OPEN_THRESHOLD + 0.5 * genes[best];
            }
            Genotype(genes)
        })
        .collect()
}

fn argmax(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, &x) in v.iter().enumerate() {
        if x > v[best] {
            best = i;
        }
    }
    best
}

/// Indices sorted by descending key, ties by ascending index.
fn by_descending_key(indices: impl Iterator<Item = usize>, key: impl Fn(usize) -> f64) -> Vec<usize> {
    let mut v: Vec<usize> = indices.collect();
    v.sort_by(|&a, &b| key(b).total_cmp(&key(a)).then(a.cmp(&b)));
    v
}

fn open_layer(
    layer: &'static str,
    keys: &[f64],
    capacities: &[f64],
    required: f64,
) -> Result<Vec<bool>> {
    let total: f64 = capacities.iter().sum();
    if total + 1e-9 < required {
        return Err(Error::StructurallyInfeasible { layer, capacity: total, required });
    }
    let mut open: Vec<bool> = keys.iter().map(|&k| k >= OPEN_THRESHOLD).collect();
    if !keys.is_empty() && !open.iter().any(|&o| o) {
        open[argmax(keys)] = true;
    }
    let mut have: f64 = capacities.iter().zip(&open).filter(|(_, &o)| o).map(|(c, _)| c).sum();
    if have + 1e-9 < required {
        for f in by_descending_key(0..keys.len(), |f| keys[f]) {
            if have + 1e-9 >= required {
                break;
            }
            if !open[f] {
                open[f] = true;
                have += capacities[f];
            }
        }
    }
    Ok(open)
}

/// Splits `amount` over `order`, filling each entry up to its residual.
/// Rounding leftovers land on the first entry.
fn greedy_fill(amount: f64, order: &[usize], residual: &mut [f64], out: &mut dyn FnMut(usize, f64)) {
    let mut left = amount;
    for &f in order {
        if left <= 0.0 {
            break;
        }
        let take = left.min(residual[f]);
        if take > 0.0 {
            residual[f] -= take;
            left -= take;
            out(f, take);
        }
    }
    if left > 0.0 {
        if let Some(&f) = order.first() {
            residual[f] -= left;
            out(f, left);
        }
    }
}

/// Decodes a genotype into a feasible solution.
///
/// Facilities open when their key is at least 0.5; a layer with nothing open
/// opens its largest key, and layers short of the largest scenario
/// requirement open more facilities in descending key order. Per scenario,
/// customers (in index order) are served by open warehouses in descending
/// arc-key order under residual capacity; returns go to collection centers
/// by arc key, the disposal share goes to the cheapest disposal site with
/// room and the rest is remanufactured at the plant with the highest arc
/// key. Warehouse inflow is then drawn from open plants in arc-key order,
/// first from each plant's remanufactured units and then from new
/// production under residual capacity.
pub fn decode(g: &Genotype, inst: &NetworkInstance) -> Result<Solution> {
    let layout = GenotypeLayout::of(inst);
    if g.len() != layout.len() {
        return Err(Error::GenotypeLength { expected: layout.len(), got: g.len() });
    }
    let genes = g.genes();
    let demands = inst.demand_matrix();
    let peak = demands.iter().map(|d| d.iter().sum::<f64>()).fold(0.0, f64::max);

    let plant_caps: Vec<f64> = inst.plants.iter().map(|p| p.capacity).collect();
    let wh_caps: Vec<f64> = inst.warehouses.iter().map(|w| w.capacity).collect();
    let coll_caps: Vec<f64> = inst.collection_centers.iter().map(|c| c.capacity).collect();
    let disp_caps: Vec<f64> = inst.disposal_sites.iter().map(|d| d.capacity).collect();

    let [pb, wb, cb] = layout.facility_blocks();
    let open_plants = open_layer("plants", &genes[pb], &plant_caps, peak)?;
    let open_warehouses = open_layer("warehouses", &genes[wb], &wh_caps, peak)?;
    let open_collection = open_layer("collection_centers", &genes[cb], &coll_caps, inst.alpha * peak)?;
    let disposal_total: f64 = disp_caps.iter().sum();
    let disposal_required = inst.beta * inst.alpha * peak;
    if disposal_total + 1e-9 < disposal_required {
        return Err(Error::StructurallyInfeasible {
            layer: "disposal_sites",
            capacity: disposal_total,
            required: disposal_required,
        });
    }

    let open_idx = |open: &[bool]| -> Vec<usize> { (0..open.len()).filter(|&f| open[f]).collect() };
    let plants = open_idx(&open_plants);
    let warehouses = open_idx(&open_warehouses);
    let collections = open_idx(&open_collection);

    // Routing orders do not depend on the scenario.
    let wh_order: Vec<Vec<usize>> = (0..inst.n_customers())
        .map(|k| by_descending_key(warehouses.iter().copied(), |j| genes[layout.warehouse_customer_key(j, k)]))
        .collect();
    let plant_order: Vec<Vec<usize>> = (0..inst.n_warehouses())
        .map(|j| by_descending_key(plants.iter().copied(), |i| genes[layout.plant_warehouse_key(i, j)]))
        .collect();
    let coll_order: Vec<Vec<usize>> = (0..inst.n_customers())
        .map(|k| by_descending_key(collections.iter().copied(), |l| genes[layout.customer_collection_key(k, l)]))
        .collect();
    let reman_order: Vec<Vec<usize>> = (0..inst.n_collection())
        .map(|l| by_descending_key(plants.iter().copied(), |i| genes[layout.collection_plant_key(l, i)]))
        .collect();
    let disposal_order: Vec<Vec<usize>> = (0..inst.n_collection())
        .map(|l| {
            let unit = |m: usize| inst.disposal_sites[m].disposal_cost + inst.arcs.collection_disposal[l][m].cost;
            let mut v: Vec<usize> = (0..inst.n_disposal()).collect();
            v.sort_by(|&a, &b| unit(a).total_cmp(&unit(b)).then(a.cmp(&b)));
            v
        })
        .collect();

    let mut sol = Solution {
        open_plants,
        open_warehouses,
        open_collection,
        flows: Vec::with_capacity(inst.n_scenarios()),
    };
    for demand in &demands {
        let mut f = model::ScenarioFlows::zeros(inst);

        let mut wh_res: Vec<f64> = wh_caps.clone();
        for (k, &d) in demand.iter().enumerate() {
            greedy_fill(d, &wh_order[k], &mut wh_res, &mut |j, x| f.yb[j][k] += x);
        }
        let mut coll_res = coll_caps.clone();
        for k in 0..inst.n_customers() {
            let delivered: f64 = (0..inst.n_warehouses()).map(|j| f.yb[j][k]).sum();
            let returned = inst.alpha * delivered;
            if returned > 0.0 {
                greedy_fill(returned, &coll_order[k], &mut coll_res, &mut |l, x| f.yc[k][l] += x);
            }
        }
        let mut disp_res = disp_caps.clone();
        for l in 0..inst.n_collection() {
            let inflow: f64 = f.yc.iter().map(|row| row[l]).sum();
            if inflow <= 0.0 {
                continue;
            }
            let disposed = inst.beta * inflow;
            if disposed > 0.0 {
                let single = disposal_order[l].iter().copied().find(|&m| disp_res[m] >= disposed);
                match single {
                    Some(m) => {
                        disp_res[m] -= disposed;
                        f.yd[l][m] += disposed;
                    }
                    None => greedy_fill(disposed, &disposal_order[l], &mut disp_res, &mut |m, x| f.yd[l][m] += x),
                }
            }
            let remanufactured = inflow - disposed;
            if remanufactured > 0.0 {
                if let Some(&i) = reman_order[l].first() {
                    f.ye[l][i] += remanufactured;
                }
            }
        }

        // Warehouses draw first on remanufactured stock, then on new production.
        let mut stock: Vec<f64> = (0..inst.n_plants()).map(|i| f.ye.iter().map(|row| row[i]).sum()).collect();
        let mut plant_res = plant_caps.clone();
        for j in 0..inst.n_warehouses() {
            let mut left: f64 = f.yb[j].iter().sum();
            for &i in &plant_order[j] {
                let take = left.min(stock[i]).min(plant_res[i]);
                if take > 0.0 {
                    stock[i] -= take;
                    plant_res[i] -= take;
                    left -= take;
                    f.ya[i][j] += take;
                }
            }
            if left > 0.0 {
                greedy_fill(left, &plant_order[j], &mut plant_res, &mut |i, x| f.ya[i][j] += x);
            }
        }
        sol.flows.push(f);
    }
    Ok(sol)
}

/// SBX spread factor for a uniform draw `u`.
pub fn sbx_spread_factor(u: f64, eta_c: f64) -> f64 {
    let e = 1.0 / (eta_c + 1.0);
    if u <= 0.5 {
        (2.0 * u).powf(e)
    } else {
        (1.0 / (2.0 * (1.0 - u))).powf(e)
    }
}

/// Children of one gene pair before clamping; their sum equals the parents'.
pub fn sbx_children(p1: f64, p2: f64, spread: f64) -> (f64, f64) {
    (
        0.5 * ((1.0 + spread) * p1 + (1.0 - spread) * p2),
        0.5 * ((1.0 - spread) * p1 + (1.0 + spread) * p2),
    )
}

/// Simulated binary crossover: each gene pair is recombined with probability
/// `p_c`, children are clamped to `[0, 1]`.
pub fn sbx_crossover(
    p1: &Genotype,
    p2: &Genotype,
    eta_c: f64,
    p_c: f64,
    rng: &mut GaRng,
) -> (Genotype, Genotype) {
    assert_eq!(p1.len(), p2.len(), "parents must have equal length");
    let mut c1 = Vec::with_capacity(p1.len());
    let mut c2 = Vec::with_capacity(p1.len());
    for (&a, &b) in p1.0.iter().zip(&p2.0) {
        if rng.random::<f64>() < p_c {
            let u: f64 = rng.random();
            let (x, y) = sbx_children(a, b, sbx_spread_factor(u, eta_c));
            c1.push(x.clamp(0.0, 1.0));
            c2.push(y.clamp(0.0, 1.0));
        } else {
            c1.push(a);
            c2.push(b);
        }
    }
    (Genotype(c1), Genotype(c2))
}

/// Bounded polynomial mutation on `[0, 1]` with distribution index `eta_m`.
pub fn polynomial_mutation(g: &Genotype, eta_m: f64, p_m: f64, rng: &mut GaRng) -> Genotype {
    let power = 1.0 / (eta_m + 1.0);
    let genes = g
        .0
        .iter()
        .map(|&y| {
            if rng.random::<f64>() >= p_m {
                return y;
            }
            let r: f64 = rng.random();
            let delta = if r < 0.5 {
                let xy = 1.0 - y;
                let val = 2.0 * r + (1.0 - 2.0 * r) * xy.powf(eta_m + 1.0);
                val.powf(power) - 1.0
            } else {
                let xy = y;
                let val = 2.0 * (1.0 - r) + 2.0 * (r - 0.5) * xy.powf(eta_m + 1.0);
                1.0 - val.powf(power)
            };
            (y + delta).clamp(0.0, 1.0)
        })
        .collect();
    Genotype(genes)
}

fn crowded_better(ranks: &[usize], crowding: &[f64], a: usize, b: usize) -> std::cmp::Ordering {
    use std::cmp::Ordering::*;
    match ranks[a].cmp(&ranks[b]) {
        Less => Greater,
        Greater => Less,
        Equal => crowding[a].total_cmp(&crowding[b]),
    }
}

/// Tournament under the crowded-comparison order: lower rank wins, then
/// larger crowding distance, then a uniform draw among the tied.
pub fn select_parent(ranks: &[usize], crowding: &[f64], tournament_size: usize, rng: &mut GaRng) -> usize {
    let n = ranks.len();
    let mut ties = vec![rng.random_range(0..n)];
    for _ in 1..tournament_size {
        let c = rng.random_range(0..n);
        match crowded_better(ranks, crowding, c, ties[0]) {
            std::cmp::Ordering::Greater => {
                ties.clear();
                ties.push(c);
            }
            std::cmp::Ordering::Equal => ties.push(c),
            std::cmp::Ordering::Less => {}
        }
    }
    if ties.len() == 1 {
        ties[0]
    } else {
        ties[rng.random_range(0..ties.len())]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub genotype: Genotype,
    pub solution: Solution,
    pub objectives: ObjectiveVector,
}

fn evaluate_genotype(inst: &NetworkInstance, genotype: Genotype) -> Result<Individual> {
    let solution = decode(&genotype, inst)?;
    let objectives = model::evaluate(inst, &solution)?;
    Ok(Individual { genotype, solution, objectives })
}

fn evaluate_all(inst: &NetworkInstance, genotypes: Vec<Genotype>, parallel: bool) -> Result<Vec<Individual>> {
    if parallel {
        genotypes.into_par_iter().map(|g| evaluate_genotype(inst, g)).collect()
    } else {
        genotypes.into_iter().map(|g| evaluate_genotype(inst, g)).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArchiveRecord {
    pub genotype: Genotype,
    pub solution: Solution,
    pub objectives: ObjectiveVector,
    pub generation: usize,
}

/// Elitist archive of mutually non-dominated individuals.
#[derive(Debug, Clone)]
pub struct Archive {
    capacity: usize,
    records: Vec<ArchiveRecord>,
}

impl Archive {
    pub fn new(capacity: usize) -> Self {
        Self { capacity, records: Vec::new() }
    }

    pub fn records(&self) -> &[ArchiveRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn canonical_points(&self) -> Vec<Point> {
        self.records.iter().map(|r| r.objectives.canonical()).collect()
    }

    /// Inserts `ind` unless an archived point weakly dominates it; evicts
    /// archived points it dominates. Returns whether it was inserted.
    pub fn offer(&mut self, ind: &Individual, generation: usize) -> bool {
        let p = ind.objectives.canonical();
        if self.records.iter().any(|r| pareto::weakly_dominates_canonical(&r.objectives.canonical(), &p)) {
            return false;
        }
        self.records.retain(|r| !pareto::dominates_canonical(&p, &r.objectives.canonical()));
        self.records.push(ArchiveRecord {
            genotype: ind.genotype.clone(),
            solution: ind.solution.clone(),
            objectives: ind.objectives,
            generation,
        });
        while self.records.len() > self.capacity {
            let crowd = pareto::crowding_distance(&self.canonical_points());
            let mut worst = 0;
            for i in 1..crowd.len() {
                if crowd[i] < crowd[worst] {
                    worst = i;
                }
            }
            self.records.remove(worst);
        }
        true
    }

    pub fn to_front(&self) -> ParetoFront {
        pareto::nondominated_filter(
            self.records
                .iter()
                .map(|r| FrontPoint::new(r.objectives, r.solution.clone(), Provenance::Ga { generation: r.generation }))
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationStats {
    pub generation: usize,
    pub archive_size: usize,
    /// Archive hypervolume against the reference frozen at generation 0.
    pub hypervolume: f64,
    /// Best value per objective in the population (max for dispatch).
    pub best: ObjectiveVector,
    pub mean: ObjectiveVector,
}

impl GenerationStats {
    pub const CSV_HEADER: &'static str = "generation,archive_size,hypervolume,best_cost,best_co2,best_dispatch";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{:.6},{:.6},{:.6},{:.6}",
            self.generation,
            self.archive_size,
            self.hypervolume,
            self.best.total_cost,
            self.best.total_co2,
            self.best.expected_dispatch
        )
    }
}

/// What an observer sees after each generation.
pub struct GenerationView<'a> {
    pub generation: usize,
    pub population: &'a [Individual],
    pub archive: &'a Archive,
    pub reference: Point,
    pub stats: &'a GenerationStats,
}

#[derive(Debug, Clone)]
pub struct GaRun {
    pub front: ParetoFront,
    pub stats: Vec<GenerationStats>,
    pub reference: Point,
}

fn population_stats(generation: usize, pop: &[Individual], archive: &Archive, reference: &Point) -> GenerationStats {
    let n = pop.len() as f64;
    let mut best = ObjectiveVector::new(f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    let mut sum = [0.0; 3];
    for ind in pop {
        let o = ind.objectives;
        best.total_cost = best.total_cost.min(o.total_cost);
        best.total_co2 = best.total_co2.min(o.total_co2);
        best.expected_dispatch = best.expected_dispatch.max(o.expected_dispatch);
        sum[0] += o.total_cost;
        sum[1] += o.total_co2;
        sum[2] += o.expected_dispatch;
    }
    GenerationStats {
        generation,
        archive_size: archive.len(),
        hypervolume: pareto::hypervolume_clipped(&archive.canonical_points(), reference),
        best,
        mean: ObjectiveVector::new(sum[0] / n, sum[1] / n, sum[2] / n),
    }
}

/// Rank and per-front crowding distance of every individual.
fn rank_and_crowd(points: &[Point]) -> (Vec<usize>, Vec<f64>, Vec<Vec<usize>>) {
    let fronts = pareto::fast_nondominated_sort(points);
    let mut ranks = vec![0; points.len()];
    let mut crowd = vec![0.0; points.len()];
    for (r, front) in fronts.iter().enumerate() {
        let pts: Vec<Point> = front.iter().map(|&i| points[i]).collect();
        for (&i, d) in front.iter().zip(pareto::crowding_distance(&pts)) {
            ranks[i] = r;
            crowd[i] = d;
        }
    }
    (ranks, crowd, fronts)
}

/// Picks `n` survivors: whole fronts in rank order, the last one cut by
/// descending crowding distance.
fn survive(points: &[Point], n: usize) -> Vec<usize> {
    let (_, crowd, fronts) = rank_and_crowd(points);
    let mut chosen = Vec::with_capacity(n);
    for front in fronts {
        if chosen.len() + front.len() <= n {
            chosen.extend(front);
        } else {
            let mut rest = front;
            rest.sort_by(|&a, &b| crowd[b].total_cmp(&crowd[a]).then(a.cmp(&b)));
            chosen.extend(rest.into_iter().take(n - chosen.len()));
        }
        if chosen.len() == n {
            break;
        }
    }
    chosen.sort_unstable();
    chosen
}

/// Runs NSGA-II and returns the archive as a front with per-generation stats.
pub fn run_nsga2(inst: &NetworkInstance, cfg: &GaConfig) -> Result<GaRun> {
    run_nsga2_observed(inst, cfg, |_| {})
}

/// [`run_nsga2`] with a callback invoked after generation 0 and every later generation.
pub fn run_nsga2_observed(
    inst: &NetworkInstance,
    cfg: &GaConfig,
    mut observe: impl FnMut(&GenerationView<'_>),
) -> Result<GaRun> {
    cfg.validate()?;
    let layout = GenotypeLayout::of(inst);
    let p_m = cfg.mutation_rate_for(layout.len());
    let mut rng = GaRng::seed_from_u64(cfg.seed);

    let mut population = evaluate_all(inst, init_population(inst, cfg, &mut rng), cfg.parallel)?;
    let initial: Vec<Point> = population.iter().map(|i| i.objectives.canonical()).collect();
    let reference = pareto::reference_point(&initial);

    let mut archive = Archive::new(cfg.archive_capacity);
    for ind in &population {
        archive.offer(ind, 0);
    }
    let mut stats = vec![population_stats(0, &population, &archive, &reference)];
    observe(&GenerationView {
        generation: 0,
        population: &population,
        archive: &archive,
        reference,
        stats: &stats[0],
    });

    for generation in 1..=cfg.max_generations {
        let points: Vec<Point> = population.iter().map(|i| i.objectives.canonical()).collect();
        let (ranks, crowd, _) = rank_and_crowd(&points);

        // All random draws of the generation happen here, before evaluation.
        let mut seen: HashSet<Vec<u64>> = population.iter().map(|i| i.genotype.bits()).collect();
        let mut offspring = Vec::with_capacity(cfg.population_size);
        let mut produced = 0;
        while produced < cfg.population_size {
            let a = select_parent(&ranks, &crowd, cfg.tournament_size, &mut rng);
            let b = select_parent(&ranks, &crowd, cfg.tournament_size, &mut rng);
            let (c1, c2) = sbx_crossover(&population[a].genotype, &population[b].genotype, cfg.sbx_eta, cfg.crossover_rate, &mut rng);
            for child in [c1, c2] {
                let child = polynomial_mutation(&child, cfg.mutation_eta, p_m, &mut rng);
                produced += 1;
                // Clones of existing genotypes are discarded.
                if seen.insert(child.bits()) {
                    offspring.push(child);
                }
            }
        }
        let children = evaluate_all(inst, offspring, cfg.parallel)?;
        for child in &children {
            archive.offer(child, generation);
        }

        let mut pool = population;
        pool.extend(children);
        let pool_points: Vec<Point> = pool.iter().map(|i| i.objectives.canonical()).collect();
        let keep = survive(&pool_points, cfg.population_size);
        let mut keep_iter = keep.into_iter().peekable();
        population = pool
            .into_iter()
            .enumerate()
            .filter_map(|(i, ind)| {
                if keep_iter.peek() == Some(&i) {
                    keep_iter.next();
                    Some(ind)
                } else {
                    None
                }
            })
            .collect();

        let s = population_stats(generation, &population, &archive, &reference);
        stats.push(s);
        observe(&GenerationView {
            generation,
            population: &population,
            archive: &archive,
            reference,
            stats: stats.last().expect("just pushed"),
        });

        if cfg.stall_generations > 0 && generation >= cfg.stall_generations {
            let old = stats[generation - cfg.stall_generations].hypervolume;
            let now = stats[generation].hypervolume;
            if now - old <= cfg.stall_tolerance * old.abs() {
                break;
            }
        }
    }

    Ok(GaRun {
        front: archive.to_front(),
        stats,
        reference,
    })
}
