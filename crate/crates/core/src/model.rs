//! Network instance, solution data model, objective evaluation and feasibility.
//!
//! The network has five echelons: plants, warehouses, customers, collection
//! centers and disposal sites. New product moves plant → warehouse →
//! customer; a fraction `alpha` of every delivery is returned to collection
//! centers, a fraction `beta` of collected units is disposed of and the rest
//! is remanufactured at a plant, where it offsets new production one-for-one.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::uncertainty::ScenarioSet;

/// Unit cost used to mark an arc as unusable while keeping matrices dense.
pub const FORBIDDEN_ARC_COST: f64 = 1e12;

/// Absolute tolerance on equality and capacity constraints.
pub const FEASIBILITY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Plant {
    pub id: String,
    pub fixed_cost: f64,
    /// Maximum outbound units per scenario.
    pub capacity: f64,
    /// Production (including assembly) cost per new unit.
    pub production_cost: f64,
    pub production_emission: f64,
    pub remanufacturing_cost: f64,
    pub remanufacturing_emission: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Warehouse {
    pub id: String,
    pub fixed_cost: f64,
    pub capacity: f64,
    pub handling_cost: f64,
    pub handling_emission: f64,
    /// Fraction of dispatched units that reach the customer, in (0, 1].
    pub reliability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CollectionCenter {
    pub id: String,
    pub fixed_cost: f64,
    pub capacity: f64,
    pub disassembly_cost: f64,
    pub disassembly_emission: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DisposalSite {
    pub id: String,
    pub disposal_cost: f64,
    pub disposal_emission: f64,
    pub capacity: f64,
}

/// Per-unit transport cost and emission on one arc, serialized as `[cost, emission]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct ArcCoef {
    pub cost: f64,
    pub emission: f64,
}

impl ArcCoef {
    pub const fn new(cost: f64, emission: f64) -> Self {
        Self { cost, emission }
    }

    pub fn is_forbidden(&self) -> bool {
        self.cost >= FORBIDDEN_ARC_COST
    }
}

impl From<[f64; 2]> for ArcCoef {
    fn from([cost, emission]: [f64; 2]) -> Self {
        Self { cost, emission }
    }
}

impl From<ArcCoef> for [f64; 2] {
    fn from(a: ArcCoef) -> Self {
        [a.cost, a.emission]
    }
}

/// Dense row-major matrix indexed `[from][to]`.
pub type ArcMatrix = Vec<Vec<ArcCoef>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Arcs {
    pub plant_warehouse: ArcMatrix,
    pub warehouse_customer: ArcMatrix,
    pub customer_collection: ArcMatrix,
    pub collection_plant: ArcMatrix,
    pub collection_disposal: ArcMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkInstance {
    pub plants: Vec<Plant>,
    pub warehouses: Vec<Warehouse>,
    pub collection_centers: Vec<CollectionCenter>,
    pub disposal_sites: Vec<DisposalSite>,
    pub customers: Vec<String>,
    pub arcs: Arcs,
    pub scenarios: ScenarioSet,
    /// Fraction of delivered units returned by customers.
    pub alpha: f64,
    /// Fraction of collected units sent to disposal.
    pub beta: f64,
}

impl NetworkInstance {
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    pub fn n_plants(&self) -> usize {
        self.plants.len()
    }

    pub fn n_warehouses(&self) -> usize {
        self.warehouses.len()
    }

    pub fn n_customers(&self) -> usize {
        self.customers.len()
    }

    pub fn n_collection(&self) -> usize {
        self.collection_centers.len()
    }

    pub fn n_disposal(&self) -> usize {
        self.disposal_sites.len()
    }

    pub fn n_scenarios(&self) -> usize {
        self.scenarios.len()
    }

    /// Demand per scenario, indexed `[scenario][customer index]`. Customers
    /// absent from a scenario's demand map have zero demand.
    pub fn demand_matrix(&self) -> Vec<Vec<f64>> {
        self.scenarios
            .iter()
            .map(|sc| {
                self.customers
                    .iter()
                    .map(|k| sc.demand.get(k).copied().unwrap_or(0.0))
                    .collect()
            })
            .collect()
    }

    /// Largest total demand over all scenarios.
    pub fn max_total_demand(&self) -> f64 {
        self.demand_matrix()
            .iter()
            .map(|d| d.iter().sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Probability-weighted total demand.
    pub fn expected_total_demand(&self) -> f64 {
        self.scenarios
            .iter()
            .zip(self.demand_matrix())
            .map(|(sc, d)| sc.probability * d.iter().sum::<f64>())
            .sum()
    }
}

/// One violated instance invariant.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceIssue {
    pub location: String,
    pub message: String,
}

impl fmt::Display for InstanceIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

/// Checks every instance invariant and returns all violations.
pub fn validate_instance(inst: &NetworkInstance) -> std::result::Result<(), Vec<InstanceIssue>> {
    let mut issues = Vec::new();
    let mut push = |location: String, message: String| issues.push(InstanceIssue { location, message });

    let non_negative = |push: &mut dyn FnMut(String, String), location: String, name: &str, v: f64| {
        if !v.is_finite() || v < 0.0 {
            push(format!("{location}.{name}"), format!("{name} {v} is negative or not finite"));
        }
    };
    for (i, p) in inst.plants.iter().enumerate() {
        let loc = format!("plants[{i}]");
        non_negative(&mut push, loc.clone(), "fixed_cost", p.fixed_cost);
        non_negative(&mut push, loc.clone(), "capacity", p.capacity);
        non_negative(&mut push, loc.clone(), "production_cost", p.production_cost);
        non_negative(&mut push, loc.clone(), "production_emission", p.production_emission);
        non_negative(&mut push, loc.clone(), "remanufacturing_cost", p.remanufacturing_cost);
        non_negative(&mut push, loc, "remanufacturing_emission", p.remanufacturing_emission);
    }
    for (j, w) in inst.warehouses.iter().enumerate() {
        let loc = format!("warehouses[{j}]");
        non_negative(&mut push, loc.clone(), "fixed_cost", w.fixed_cost);
        non_negative(&mut push, loc.clone(), "capacity", w.capacity);
        non_negative(&mut push, loc.clone(), "handling_cost", w.handling_cost);
        non_negative(&mut push, loc, "handling_emission", w.handling_emission);
    }
    for (l, c) in inst.collection_centers.iter().enumerate() {
        let loc = format!("collection_centers[{l}]");
        non_negative(&mut push, loc.clone(), "fixed_cost", c.fixed_cost);
        non_negative(&mut push, loc.clone(), "capacity", c.capacity);
        non_negative(&mut push, loc.clone(), "disassembly_cost", c.disassembly_cost);
        non_negative(&mut push, loc, "disassembly_emission", c.disassembly_emission);
    }
    for (m, d) in inst.disposal_sites.iter().enumerate() {
        let loc = format!("disposal_sites[{m}]");
        non_negative(&mut push, loc.clone(), "disposal_cost", d.disposal_cost);
        non_negative(&mut push, loc.clone(), "disposal_emission", d.disposal_emission);
        non_negative(&mut push, loc, "capacity", d.capacity);
    }
    let arc_families: [(&str, &ArcMatrix, usize, usize); 5] = [
        ("plant_warehouse", &inst.arcs.plant_warehouse, inst.n_plants(), inst.n_warehouses()),
        ("warehouse_customer", &inst.arcs.warehouse_customer, inst.n_warehouses(), inst.n_customers()),
        ("customer_collection", &inst.arcs.customer_collection, inst.n_customers(), inst.n_collection()),
        ("collection_plant", &inst.arcs.collection_plant, inst.n_collection(), inst.n_plants()),
        ("collection_disposal", &inst.arcs.collection_disposal, inst.n_collection(), inst.n_disposal()),
    ];
    for (name, matrix, rows, cols) in arc_families {
        if matrix.len() != rows {
            push(
                format!("arcs.{name}"),
                format!("missing arc entries: {} rows, expected {rows}", matrix.len()),
            );
        }
        for (r, row) in matrix.iter().enumerate() {
            if row.len() != cols {
                push(
                    format!("arcs.{name}[{r}]"),
                    format!("missing arc entries: {} columns, expected {cols}", row.len()),
                );
            }
            for (c, a) in row.iter().enumerate() {
                non_negative(&mut push, format!("arcs.{name}[{r}][{c}]"), "cost", a.cost);
                non_negative(&mut push, format!("arcs.{name}[{r}][{c}]"), "emission", a.emission);
            }
        }
    }

    for (j, w) in inst.warehouses.iter().enumerate() {
        if !(w.reliability > 0.0 && w.reliability <= 1.0) {
            push(
                format!("warehouses[{j}].reliability"),
                format!("reliability out of range: {} not in (0, 1]", w.reliability),
            );
        }
    }
    for (name, v) in [("alpha", inst.alpha), ("beta", inst.beta)] {
        if !(0.0..=1.0).contains(&v) {
            push(name.to_string(), format!("{name} {v} outside [0, 1]"));
        }
    }
    if inst.plants.is_empty() {
        push("plants".into(), "at least one plant is required".into());
    }
    if inst.warehouses.is_empty() {
        push("warehouses".into(), "at least one warehouse is required".into());
    }
    if inst.customers.is_empty() {
        push("customers".into(), "at least one customer is required".into());
    }
    if inst.alpha > 0.0 && inst.collection_centers.is_empty() {
        push(
            "collection_centers".into(),
            "returns are positive but no collection center exists".into(),
        );
    }
    if inst.alpha > 0.0 && inst.beta > 0.0 && inst.disposal_sites.is_empty() {
        push(
            "disposal_sites".into(),
            "disposal share is positive but no disposal site exists".into(),
        );
    }
    let mut seen = std::collections::BTreeSet::new();
    for k in &inst.customers {
        if !seen.insert(k) {
            push("customers".into(), format!("duplicate customer id `{k}`"));
        }
    }
    for (location, message) in inst.scenarios.issues() {
        push(location, message);
    }
    for (s, sc) in inst.scenarios.iter().enumerate() {
        for k in &inst.customers {
            if !sc.demand.contains_key(k) {
                push(format!("scenarios[{s}].demand"), format!("no demand entry for customer `{k}`"));
            }
        }
        for k in sc.demand.keys() {
            if !inst.customers.contains(k) {
                push(format!("scenarios[{s}].demand"), format!("unknown customer `{k}`"));
            }
        }
    }

    if issues.is_empty() {
        Ok(())
    } else {
        Err(issues)
    }
}

/// Flows of one scenario. Matrices are indexed `[from][to]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioFlows {
    /// plant → warehouse
    #[serde(rename = "Ya")]
    pub ya: Vec<Vec<f64>>,
    /// warehouse → customer
    #[serde(rename = "Yb")]
    pub yb: Vec<Vec<f64>>,
    /// customer → collection center
    #[serde(rename = "Yc")]
    pub yc: Vec<Vec<f64>>,
    /// collection center → disposal site
    #[serde(rename = "Yd")]
    pub yd: Vec<Vec<f64>>,
    /// collection center → plant (remanufacturing)
    #[serde(rename = "Ye")]
    pub ye: Vec<Vec<f64>>,
}

impl ScenarioFlows {
    pub fn zeros(inst: &NetworkInstance) -> Self {
        let z = |r: usize, c: usize| vec![vec![0.0; c]; r];
        Self {
            ya: z(inst.n_plants(), inst.n_warehouses()),
            yb: z(inst.n_warehouses(), inst.n_customers()),
            yc: z(inst.n_customers(), inst.n_collection()),
            yd: z(inst.n_collection(), inst.n_disposal()),
            ye: z(inst.n_collection(), inst.n_plants()),
        }
    }

    fn scale(&mut self, lambda: f64) {
        for m in [&mut self.ya, &mut self.yb, &mut self.yc, &mut self.yd, &mut self.ye] {
            m.iter_mut().flatten().for_each(|x| *x *= lambda);
        }
    }
}

fn row_sums(m: &[Vec<f64>]) -> Vec<f64> {
    m.iter().map(|r| r.iter().sum()).collect()
}

fn col_sums(m: &[Vec<f64>], cols: usize) -> Vec<f64> {
    let mut out = vec![0.0; cols];
    for row in m {
        for (c, v) in row.iter().enumerate() {
            out[c] += v;
        }
    }
    out
}

fn total(m: &[Vec<f64>]) -> f64 {
    m.iter().flatten().sum()
}

/// First-stage facility plan plus per-scenario recourse flows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub open_plants: Vec<bool>,
    pub open_warehouses: Vec<bool>,
    pub open_collection: Vec<bool>,
    /// One entry per scenario, in instance order.
    pub flows: Vec<ScenarioFlows>,
}

impl Solution {
    /// All facilities closed, all flows zero.
    pub fn empty(inst: &NetworkInstance) -> Self {
        Self {
            open_plants: vec![false; inst.n_plants()],
            open_warehouses: vec![false; inst.n_warehouses()],
            open_collection: vec![false; inst.n_collection()],
            flows: (0..inst.n_scenarios()).map(|_| ScenarioFlows::zeros(inst)).collect(),
        }
    }

    /// Multiplies every flow by `lambda`.
    pub fn scale_flows(&mut self, lambda: f64) {
        self.flows.iter_mut().for_each(|f| f.scale(lambda));
    }

    pub fn total_delivered(&self, scenario: usize) -> f64 {
        total(&self.flows[scenario].yb)
    }

    pub fn total_collected(&self, scenario: usize) -> f64 {
        total(&self.flows[scenario].yc)
    }

    pub fn total_disposed(&self, scenario: usize) -> f64 {
        total(&self.flows[scenario].yd)
    }

    pub fn total_remanufactured(&self, scenario: usize) -> f64 {
        total(&self.flows[scenario].ye)
    }
}

/// Objective values in native orientation: cost and CO₂ are minimized,
/// expected reliable dispatch is maximized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveVector {
    pub total_cost: f64,
    pub total_co2: f64,
    pub expected_dispatch: f64,
}

impl ObjectiveVector {
    pub const fn new(total_cost: f64, total_co2: f64, expected_dispatch: f64) -> Self {
        Self {
            total_cost,
            total_co2,
            expected_dispatch,
        }
    }

    /// All-minimization form `(cost, co2, -dispatch)`.
    pub fn canonical(&self) -> [f64; 3] {
        [self.total_cost, self.total_co2, -self.expected_dispatch]
    }

    pub fn from_canonical(c: [f64; 3]) -> Self {
        Self::new(c[0], c[1], -c[2])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationKind {
    Demand,
    Conservation,
    Capacity,
    ClosedFacility,
    ReturnRatio,
    DisposalRatio,
    Negativity,
    /// Flow matrices or facility vectors whose dimensions do not match the instance.
    Shape,
}

impl ViolationKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Demand => "demand",
            Self::Conservation => "conservation",
            Self::Capacity => "capacity",
            Self::ClosedFacility => "closed-facility",
            Self::ReturnRatio => "return-ratio",
            Self::DisposalRatio => "disposal-ratio",
            Self::Negativity => "negativity",
            Self::Shape => "shape",
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub location: String,
    pub magnitude: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {} (magnitude {})", self.kind, self.location, self.magnitude)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct FeasibilityReport {
    pub violations: Vec<Violation>,
}

impl FeasibilityReport {
    pub fn feasible(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

fn shape_ok(m: &[Vec<f64>], rows: usize, cols: usize) -> bool {
    m.len() == rows && m.iter().all(|r| r.len() == cols)
}

/// Reports every violated solution constraint.
pub fn check_feasibility(inst: &NetworkInstance, sol: &Solution) -> FeasibilityReport {
    let tol = FEASIBILITY_TOLERANCE;
    let mut v = Vec::new();
    let mut push = |kind, location: String, magnitude: f64| v.push(Violation { kind, location, magnitude });

    let (np, nw, nk, nl, nm) = (
        inst.n_plants(),
        inst.n_warehouses(),
        inst.n_customers(),
        inst.n_collection(),
        inst.n_disposal(),
    );
    let mut shape = true;
    for (name, len, expected) in [
        ("open_plants", sol.open_plants.len(), np),
        ("open_warehouses", sol.open_warehouses.len(), nw),
        ("open_collection", sol.open_collection.len(), nl),
        ("flows", sol.flows.len(), inst.n_scenarios()),
    ] {
        if len != expected {
            push(ViolationKind::Shape, name.to_string(), (len as f64 - expected as f64).abs());
            shape = false;
        }
    }
    for (s, f) in sol.flows.iter().enumerate() {
        for (name, m, r, c) in [
            ("Ya", &f.ya, np, nw),
            ("Yb", &f.yb, nw, nk),
            ("Yc", &f.yc, nk, nl),
            ("Yd", &f.yd, nl, nm),
            ("Ye", &f.ye, nl, np),
        ] {
            if !shape_ok(m, r, c) {
                push(ViolationKind::Shape, format!("scenario {s} {name}"), 1.0);
                shape = false;
            }
        }
    }
    if !shape {
        return FeasibilityReport { violations: v };
    }

    let demands = inst.demand_matrix();
    for (s, f) in sol.flows.iter().enumerate() {
        for (name, m) in [("Ya", &f.ya), ("Yb", &f.yb), ("Yc", &f.yc), ("Yd", &f.yd), ("Ye", &f.ye)] {
            for (r, row) in m.iter().enumerate() {
                for (c, &x) in row.iter().enumerate() {
                    if x < -tol || !x.is_finite() {
                        push(ViolationKind::Negativity, format!("scenario {s} {name}[{r}][{c}]"), x.abs());
                    }
                }
            }
        }

        // Flows touching closed facilities.
        let closed = |m: &[Vec<f64>], name: &str, row_open: &dyn Fn(usize) -> bool, col_open: &dyn Fn(usize) -> bool, out: &mut Vec<(String, f64)>| {
            for (r, row) in m.iter().enumerate() {
                for (c, &x) in row.iter().enumerate() {
                    if x > tol && !(row_open(r) && col_open(c)) {
                        out.push((format!("scenario {s} {name}[{r}][{c}]"), x));
                    }
                }
            }
        };
        let always = |_: usize| true;
        let plant = |i: usize| sol.open_plants[i];
        let wh = |j: usize| sol.open_warehouses[j];
        let coll = |l: usize| sol.open_collection[l];
        let mut closed_hits = Vec::new();
        closed(&f.ya, "Ya", &plant, &wh, &mut closed_hits);
        closed(&f.yb, "Yb", &wh, &always, &mut closed_hits);
        closed(&f.yc, "Yc", &always, &coll, &mut closed_hits);
        closed(&f.yd, "Yd", &coll, &always, &mut closed_hits);
        closed(&f.ye, "Ye", &coll, &plant, &mut closed_hits);
        for (loc, x) in closed_hits {
            push(ViolationKind::ClosedFacility, loc, x);
        }

        let delivered = col_sums(&f.yb, nk);
        for (k, (&got, &want)) in delivered.iter().zip(&demands[s]).enumerate() {
            if (got - want).abs() > tol {
                push(ViolationKind::Demand, format!("scenario {s} customer {}", inst.customers[k]), (got - want).abs());
            }
        }

        let wh_in = col_sums(&f.ya, nw);
        let wh_out = row_sums(&f.yb);
        for j in 0..nw {
            let gap = (wh_in[j] - wh_out[j]).abs();
            if gap > tol {
                push(ViolationKind::Conservation, format!("scenario {s} warehouse {}", inst.warehouses[j].id), gap);
            }
            if wh_in[j] > inst.warehouses[j].capacity + tol {
                push(
                    ViolationKind::Capacity,
                    format!("scenario {s} warehouse {}", inst.warehouses[j].id),
                    wh_in[j] - inst.warehouses[j].capacity,
                );
            }
        }

        let returned = row_sums(&f.yc);
        for k in 0..nk {
            let gap = (returned[k] - inst.alpha * delivered[k]).abs();
            if gap > tol {
                push(ViolationKind::ReturnRatio, format!("scenario {s} customer {}", inst.customers[k]), gap);
            }
        }

        let coll_in = col_sums(&f.yc, nl);
        let disposed = row_sums(&f.yd);
        let reman = row_sums(&f.ye);
        for l in 0..nl {
            let id = &inst.collection_centers[l].id;
            let gap = (coll_in[l] - disposed[l] - reman[l]).abs();
            if gap > tol {
                push(ViolationKind::Conservation, format!("scenario {s} collection {id}"), gap);
            }
            let gap = (disposed[l] - inst.beta * coll_in[l]).abs();
            if gap > tol {
                push(ViolationKind::DisposalRatio, format!("scenario {s} collection {id}"), gap);
            }
            if coll_in[l] > inst.collection_centers[l].capacity + tol {
                push(
                    ViolationKind::Capacity,
                    format!("scenario {s} collection {id}"),
                    coll_in[l] - inst.collection_centers[l].capacity,
                );
            }
        }

        let plant_out = row_sums(&f.ya);
        for i in 0..np {
            if plant_out[i] > inst.plants[i].capacity + tol {
                push(
                    ViolationKind::Capacity,
                    format!("scenario {s} plant {}", inst.plants[i].id),
                    plant_out[i] - inst.plants[i].capacity,
                );
            }
        }
        let disposal_in = col_sums(&f.yd, nm);
        for m in 0..nm {
            if disposal_in[m] > inst.disposal_sites[m].capacity + tol {
                push(
                    ViolationKind::Capacity,
                    format!("scenario {s} disposal {}", inst.disposal_sites[m].id),
                    disposal_in[m] - inst.disposal_sites[m].capacity,
                );
            }
        }
    }
    FeasibilityReport { violations: v }
}

#[derive(Clone, Copy)]
enum Measure {
    Cost,
    Emission,
}

fn pick(measure: Measure, cost: f64, emission: f64) -> f64 {
    match measure {
        Measure::Cost => cost,
        Measure::Emission => emission,
    }
}

fn arc_total(measure: Measure, arcs: &ArcMatrix, flow: &[Vec<f64>]) -> f64 {
    arcs.iter()
        .zip(flow)
        .flat_map(|(ar, fr)| ar.iter().zip(fr))
        .map(|(a, x)| pick(measure, a.cost, a.emission) * x)
        .sum()
}

/// Expected activity plus transport total for one measure, excluding fixed costs.
fn variable_total(inst: &NetworkInstance, sol: &Solution, measure: Measure) -> f64 {
    let (nw, np, nm) = (inst.n_warehouses(), inst.n_plants(), inst.n_disposal());
    let mut expected = 0.0;
    for (sc, f) in inst.scenarios.iter().zip(&sol.flows) {
        let plant_out = row_sums(&f.ya);
        let reman_in = col_sums(&f.ye, np);
        let wh_in = col_sums(&f.ya, nw);
        let coll_in = col_sums(&f.yc, inst.n_collection());
        let disposal_in = col_sums(&f.yd, nm);

        let mut z = 0.0;
        for (i, p) in inst.plants.iter().enumerate() {
            let new_units = (plant_out[i] - reman_in[i]).max(0.0);
            z += pick(measure, p.production_cost, p.production_emission) * new_units;
            z += pick(measure, p.remanufacturing_cost, p.remanufacturing_emission) * reman_in[i];
        }
        for (j, w) in inst.warehouses.iter().enumerate() {
            z += pick(measure, w.handling_cost, w.handling_emission) * wh_in[j];
        }
        for (l, c) in inst.collection_centers.iter().enumerate() {
            z += pick(measure, c.disassembly_cost, c.disassembly_emission) * coll_in[l];
        }
        for (m, d) in inst.disposal_sites.iter().enumerate() {
            z += pick(measure, d.disposal_cost, d.disposal_emission) * disposal_in[m];
        }
        z += arc_total(measure, &inst.arcs.plant_warehouse, &f.ya);
        z += arc_total(measure, &inst.arcs.warehouse_customer, &f.yb);
        z += arc_total(measure, &inst.arcs.customer_collection, &f.yc);
        z += arc_total(measure, &inst.arcs.collection_disposal, &f.yd);
        z += arc_total(measure, &inst.arcs.collection_plant, &f.ye);
        expected += sc.probability * z;
    }
    expected
}

/// Sum of fixed opening costs of the open facilities.
pub fn fixed_cost(inst: &NetworkInstance, sol: &Solution) -> f64 {
    let plants: f64 = inst.plants.iter().zip(&sol.open_plants).filter(|(_, &o)| o).map(|(p, _)| p.fixed_cost).sum();
    let whs: f64 = inst.warehouses.iter().zip(&sol.open_warehouses).filter(|(_, &o)| o).map(|(w, _)| w.fixed_cost).sum();
    let colls: f64 = inst
        .collection_centers
        .iter()
        .zip(&sol.open_collection)
        .filter(|(_, &o)| o)
        .map(|(c, _)| c.fixed_cost)
        .sum();
    plants + whs + colls
}

fn ensure_feasible(inst: &NetworkInstance, sol: &Solution) -> Result<()> {
    let report = check_feasibility(inst, sol);
    if report.feasible() {
        Ok(())
    } else {
        Err(Error::Infeasible(report))
    }
}

fn cost_unchecked(inst: &NetworkInstance, sol: &Solution) -> f64 {
    fixed_cost(inst, sol) + variable_total(inst, sol, Measure::Cost)
}

fn emissions_unchecked(inst: &NetworkInstance, sol: &Solution) -> f64 {
    variable_total(inst, sol, Measure::Emission)
}

fn reliability_unchecked(inst: &NetworkInstance, sol: &Solution) -> f64 {
    inst.scenarios
        .iter()
        .zip(&sol.flows)
        .map(|(sc, f)| {
            let dispatched: f64 = inst
                .warehouses
                .iter()
                .zip(&f.yb)
                .map(|(w, row)| w.reliability * row.iter().sum::<f64>())
                .sum();
            sc.probability * dispatched
        })
        .sum()
}

/// Total expected cost: fixed opening costs plus expected variable and transport cost.
pub fn eval_cost(inst: &NetworkInstance, sol: &Solution) -> Result<f64> {
    ensure_feasible(inst, sol)?;
    Ok(cost_unchecked(inst, sol))
}

/// Total expected CO₂ emission. There is no emission attached to opening a facility.
pub fn eval_emissions(inst: &NetworkInstance, sol: &Solution) -> Result<f64> {
    ensure_feasible(inst, sol)?;
    Ok(emissions_unchecked(inst, sol))
}

/// Expected units successfully dispatched from warehouses to customers.
pub fn eval_reliability(inst: &NetworkInstance, sol: &Solution) -> Result<f64> {
    ensure_feasible(inst, sol)?;
    Ok(reliability_unchecked(inst, sol))
}

pub fn evaluate(inst: &NetworkInstance, sol: &Solution) -> Result<ObjectiveVector> {
    ensure_feasible(inst, sol)?;
    Ok(evaluate_unchecked(inst, sol))
}

/// Objective evaluation without the feasibility audit. For callers that
/// construct solutions feasible by construction.
pub fn evaluate_unchecked(inst: &NetworkInstance, sol: &Solution) -> ObjectiveVector {
    ObjectiveVector::new(
        cost_unchecked(inst, sol),
        emissions_unchecked(inst, sol),
        reliability_unchecked(inst, sol),
    )
}
