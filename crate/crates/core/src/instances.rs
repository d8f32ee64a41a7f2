//! Bundled instance templates.
//!
//! `tabletop` has two plants, warehouses, customers and collection centers,
//! one disposal site and three demand scenarios, with coefficients drawn from
//! the seed. `oracle-tiny` is a fixed integer instance small enough for
//! exhaustive enumeration of integer flows.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{ArcCoef, Arcs, CollectionCenter, DisposalSite, NetworkInstance, Plant, Warehouse};
use crate::uncertainty::{generate_scenarios, DemandScenario, ScenarioSet};

pub const TEMPLATES: [&str; 2] = ["tabletop", "oracle-tiny"];

pub const TABLETOP_ALPHA: f64 = 0.2;
pub const TABLETOP_BETA: f64 = 0.1;
pub const TABLETOP_SPREAD: f64 = 0.2;
pub const TABLETOP_BASE_DEMAND: [f64; 2] = [1630.0, 950.0];

/// Builds the named template; `None` for an unknown name.
pub fn from_template(name: &str, seed: u64) -> Option<NetworkInstance> {
    match name {
        "tabletop" => Some(tabletop(seed)),
        "oracle-tiny" => Some(oracle_tiny()),
        _ => None,
    }
}

fn ids(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Seeded desk-scale instance.
///
/// Coefficient ranges (uniform): plant fixed cost 40000–80000, production
/// cost 20–40 and emission 5–15, remanufacturing cost 5–15 and emission 1–5;
/// warehouse fixed cost 20000–50000, handling cost 2–6 and emission 0.5–2,
/// reliability 0.80–0.99; collection fixed cost 10000–30000, disassembly cost
/// 2–6 and emission 0.5–2; disposal cost 5–15 and emission 2–8; transport
/// cost 1–10 and emission 0.2–2 per unit on every arc. Plant and warehouse
/// capacities are 1.0–1.5 times the largest scenario's total demand,
/// collection capacities the same multiple of its returns, and disposal
/// capacity twice its disposal volume.
pub fn tabletop(seed: u64) -> NetworkInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let customers = ids("k", 2);
    let base: BTreeMap<String, f64> = customers.iter().cloned().zip(TABLETOP_BASE_DEMAND).collect();
    let scenarios = generate_scenarios(&base, TABLETOP_SPREAD, 3, seed).expect("valid spread and count");
    let peak = scenarios.iter().map(|s| s.total_demand()).fold(0.0, f64::max);
    let (alpha, beta) = (TABLETOP_ALPHA, TABLETOP_BETA);

    let mut u = |lo: f64, hi: f64| rng.random_range(lo..hi);
    let plants = ids("p", 2)
        .into_iter()
        .map(|id| Plant {
            id,
            fixed_cost: u(40_000.0, 80_000.0),
            capacity: u(1.0, 1.5) * peak,
            production_cost: u(20.0, 40.0),
            production_emission: u(5.0, 15.0),
            remanufacturing_cost: u(5.0, 15.0),
            remanufacturing_emission: u(1.0, 5.0),
        })
        .collect();
    let warehouses = ids("w", 2)
        .into_iter()
        .map(|id| Warehouse {
            id,
            fixed_cost: u(20_000.0, 50_000.0),
            capacity: u(1.0, 1.5) * peak,
            handling_cost: u(2.0, 6.0),
            handling_emission: u(0.5, 2.0),
            reliability: u(0.80, 0.99),
        })
        .collect();
    let collection_centers = ids("c", 2)
        .into_iter()
        .map(|id| CollectionCenter {
            id,
            fixed_cost: u(10_000.0, 30_000.0),
            capacity: u(1.0, 1.5) * alpha * peak,
            disassembly_cost: u(2.0, 6.0),
            disassembly_emission: u(0.5, 2.0),
        })
        .collect();
    let disposal_sites = ids("d", 1)
        .into_iter()
        .map(|id| DisposalSite {
            id,
            disposal_cost: u(5.0, 15.0),
            disposal_emission: u(2.0, 8.0),
            capacity: 2.0 * beta * alpha * peak,
        })
        .collect();
    let mut matrix = |rows: usize, cols: usize| -> Vec<Vec<ArcCoef>> {
        (0..rows)
            .map(|_| (0..cols).map(|_| ArcCoef::new(u(1.0, 10.0), u(0.2, 2.0))).collect())
            .collect()
    };
    let arcs = Arcs {
        plant_warehouse: matrix(2, 2),
        warehouse_customer: matrix(2, 2),
        customer_collection: matrix(2, 2),
        collection_plant: matrix(2, 2),
        collection_disposal: matrix(2, 1),
    };
    NetworkInstance {
        plants,
        warehouses,
        collection_centers,
        disposal_sites,
        customers,
        arcs,
        scenarios,
        alpha,
        beta,
    }
}

/// Fixed instance with integer data and total demand 4.
///
/// Within any configuration one route dominates every other (plant 2 and
/// warehouse 2 are better per unit), so each Pareto-optimal solution sends
/// every flow along a single route. The four front points are the
/// combinations of one plant with one warehouse.
pub fn oracle_tiny() -> NetworkInstance {
    let arc = ArcCoef::new(1.0, 1.0);
    let full = |r: usize, c: usize| vec![vec![arc; c]; r];
    NetworkInstance {
        plants: vec![
            Plant {
                id: "p1".into(),
                fixed_cost: 10.0,
                capacity: 6.0,
                production_cost: 3.0,
                production_emission: 2.0,
                remanufacturing_cost: 1.0,
                remanufacturing_emission: 1.0,
            },
            Plant {
                id: "p2".into(),
                fixed_cost: 16.0,
                capacity: 6.0,
                production_cost: 2.0,
                production_emission: 1.0,
                remanufacturing_cost: 1.0,
                remanufacturing_emission: 1.0,
            },
        ],
        warehouses: vec![
            Warehouse {
                id: "w1".into(),
                fixed_cost: 5.0,
                capacity: 6.0,
                handling_cost: 1.0,
                handling_emission: 1.0,
                reliability: 0.5,
            },
            Warehouse {
                id: "w2".into(),
                fixed_cost: 9.0,
                capacity: 6.0,
                handling_cost: 1.0,
                handling_emission: 0.0,
                reliability: 1.0,
            },
        ],
        collection_centers: vec![CollectionCenter {
            id: "c1".into(),
            fixed_cost: 2.0,
            capacity: 6.0,
            disassembly_cost: 1.0,
            disassembly_emission: 1.0,
        }],
        disposal_sites: vec![DisposalSite {
            id: "d1".into(),
            disposal_cost: 1.0,
            disposal_emission: 1.0,
            capacity: 6.0,
        }],
        customers: ids("k", 2),
        arcs: Arcs {
            plant_warehouse: full(2, 2),
            warehouse_customer: full(2, 2),
            customer_collection: full(2, 1),
            collection_plant: full(1, 2),
            collection_disposal: full(1, 1),
        },
        scenarios: ScenarioSet(vec![DemandScenario {
            probability: 1.0,
            demand: BTreeMap::from([("k1".to_string(), 2.0), ("k2".to_string(), 2.0)]),
        }]),
        alpha: 0.5,
        beta: 0.5,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_instance;

    #[test]
    fn templates_validate() {
        for seed in [0, 1, 42, 7777] {
            validate_instance(&tabletop(seed)).unwrap();
        }
        validate_instance(&oracle_tiny()).unwrap();
    }

    #[test]
    fn tabletop_is_seeded() {
        assert_eq!(tabletop(5), tabletop(5));
        assert_ne!(tabletop(5), tabletop(6));
        assert_eq!(oracle_tiny(), from_template("oracle-tiny", 99).unwrap());
        assert!(from_template("nope", 0).is_none());
    }

    #[test]
    fn tabletop_shape() {
        let inst = tabletop(1);
        assert_eq!(
            (inst.n_plants(), inst.n_warehouses(), inst.n_customers(), inst.n_collection(), inst.n_disposal(), inst.n_scenarios()),
            (2, 2, 2, 2, 1, 3)
        );
        assert_eq!((inst.alpha, inst.beta), (0.2, 0.1));
        assert!(inst.plants.iter().all(|p| p.capacity >= inst.max_total_demand()));
    }
}
