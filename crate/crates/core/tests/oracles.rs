mod common;

use clsc::instances;
use clsc::model::{ArcCoef, NetworkInstance};
use clsc::pareto;
use clsc::scalarize::{self, min_cost_flow, NormalizationBounds, WeightVector};
use proptest::prelude::*;

#[test]
fn compositions_count() {
    // stars and bars: C(n + k - 1, k - 1)
    assert_eq!(common::compositions(4, 2).len(), 5);
    assert_eq!(common::compositions(3, 3).len(), 10);
    assert_eq!(common::compositions(0, 2), vec![vec![0, 0]]);
}

#[test]
fn grid_oracle_matches_hand_boxes() {
    assert_eq!(common::grid_hypervolume(&[[1, 1, 1]], [2, 2, 2]), 1.0);
    assert_eq!(common::grid_hypervolume(&[[1, 2, 2], [2, 1, 2]], [3, 3, 3]), 3.0);
}

#[test]
fn oracle_tiny_front_is_the_four_single_route_designs() {
    let inst = instances::oracle_tiny();
    let all = common::enumerate(&inst);
    let front = common::pareto_scan(&all.iter().map(|(_, v)| v.canonical()).collect::<Vec<_>>());
    assert_eq!(
        front,
        vec![[46.0, 26.0, -2.0], [49.0, 23.0, -2.0], [50.0, 22.0, -4.0], [53.0, 19.0, -4.0]]
    );
    for p in &front {
        let (sol, _) = all.iter().find(|(_, v)| v.canonical() == *p).unwrap();
        assert_eq!(sol.open_plants.iter().filter(|&&o| o).count(), 1);
        assert_eq!(sol.open_warehouses.iter().filter(|&&o| o).count(), 1);
    }
}

#[test]
fn bounds_match_enumerated_minima() {
    let inst = instances::oracle_tiny();
    let all = common::enumerate(&inst);
    let b = scalarize::compute_bounds(&inst).unwrap();
    for o in 0..3 {
        let min = all.iter().map(|(_, v)| v.canonical()[o]).fold(f64::INFINITY, f64::min);
        assert!((b.utopia[o] - min).abs() <= 1e-6, "objective {o}: {} vs {min}", b.utopia[o]);
    }
}

#[test]
fn positive_weight_optima_are_not_dominated() {
    let inst = instances::oracle_tiny();
    let all = common::enumerate(&inst);
    let b = scalarize::compute_bounds(&inst).unwrap();
    for w in WeightVector::simplex_lattice(6).into_iter().filter(|w| w.as_array().iter().all(|&x| x > 0.0)) {
        let (_, v) = scalarize::solve_weighted_exact(&inst, &w, &b).unwrap();
        assert!(all.iter().all(|(_, e)| !pareto::dominates(e, &v)), "{w:?}");
    }
}

#[test]
fn corner_sweep_is_the_single_objective_optima() {
    let inst = instances::oracle_tiny();
    let s = scalarize::sweep(&inst, 1).unwrap();
    let b = s.bounds;
    for e in &s.entries {
        let o = e.weights.as_array().iter().position(|&x| x == 1.0).unwrap();
        assert_eq!(e.objectives.canonical()[o], b.utopia[o]);
    }
}

#[test]
fn sweep_is_order_insensitive() {
    let inst = instances::oracle_tiny();
    let s = scalarize::sweep(&inst, 4).unwrap();
    let mut points: Vec<_> = s.front.iter().cloned().collect();
    points.reverse();
    assert_eq!(pareto::nondominated_filter(points).canonical_points(), s.front.canonical_points());
}

/// Small integer instance with two collection centers and uneven coefficients.
fn random_instance(seed: u64) -> NetworkInstance {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut inst = instances::oracle_tiny();
    let mut c = inst.collection_centers[0].clone();
    c.id = "c2".into();
    inst.collection_centers.push(c);
    for row in &mut inst.arcs.customer_collection {
        row.push(row[0]);
    }
    inst.arcs.collection_plant.push(inst.arcs.collection_plant[0].clone());
    inst.arcs.collection_disposal.push(inst.arcs.collection_disposal[0].clone());
    let mut small = |lo: u32, hi: u32| rng.random_range(lo..=hi) as f64;
    for p in &mut inst.plants {
        p.fixed_cost = small(5, 20);
        p.capacity = small(3, 6);
        p.production_cost = small(1, 5);
        p.production_emission = small(0, 4);
        p.remanufacturing_cost = small(0, 3);
        p.remanufacturing_emission = small(0, 3);
    }
    for w in &mut inst.warehouses {
        w.fixed_cost = small(2, 12);
        w.capacity = small(3, 6);
        w.handling_cost = small(0, 3);
        w.handling_emission = small(0, 3);
        w.reliability = small(5, 10) / 10.0;
    }
    for c in &mut inst.collection_centers {
        c.fixed_cost = small(0, 6);
        c.capacity = small(1, 4);
        c.disassembly_cost = small(0, 3);
        c.disassembly_emission = small(0, 3);
    }
    let mut arcs = [
        &mut inst.arcs.plant_warehouse,
        &mut inst.arcs.warehouse_customer,
        &mut inst.arcs.customer_collection,
        &mut inst.arcs.collection_plant,
        &mut inst.arcs.collection_disposal,
    ];
    for m in arcs.iter_mut() {
        for a in m.iter_mut().flatten() {
            *a = ArcCoef::new(small(0, 6), small(0, 4));
        }
    }
    inst
}

#[test]
fn exact_solver_beats_integer_enumeration_on_random_instances() {
    let weights = WeightVector::simplex_lattice(3);
    let mut checked = 0;
    for seed in 0..12 {
        let inst = random_instance(seed);
        let all = common::enumerate(&inst);
        if all.is_empty() {
            continue;
        }
        checked += 1;
        let b = NormalizationBounds { utopia: [0.0, 0.0, -10.0], nadir: [100.0, 50.0, 0.0] };
        for w in &weights {
            let (_, v) = scalarize::solve_weighted_exact(&inst, w, &b).unwrap();
            let value = scalarize::scalarize(w, &v, &b).unwrap();
            let best = all
                .iter()
                .map(|(_, e)| scalarize::scalarize(w, e, &b).unwrap())
                .fold(f64::INFINITY, f64::min);
            assert!(value <= best + 1e-6 * best.abs().max(1.0), "seed {seed} {w:?}: {value} > {best}");
        }
    }
    assert!(checked >= 6, "only {checked} random instances were feasible");
}

/// Cheapest integer transport plan for a 2×2 instance by full enumeration.
fn brute_transport(s: [u32; 2], d: [u32; 2], cost: [[f64; 2]; 2]) -> Option<f64> {
    let mut best: Option<f64> = None;
    for x00 in 0..=s[0].min(d[0]) {
        let x01 = s[0] - x00;
        if x01 > d[1] {
            continue;
        }
        let x10 = d[0] - x00;
        let x11 = d[1] - x01;
        if x10 + x11 != s[1] {
            continue;
        }
        let c = cost[0][0] * x00 as f64 + cost[0][1] * x01 as f64 + cost[1][0] * x10 as f64 + cost[1][1] * x11 as f64;
        best = Some(best.map_or(c, |b: f64| b.min(c)));
    }
    best
}

proptest! {
    #[test]
    fn transport_matches_grid_enumeration(
        s0 in 0u32..=6, s1 in 0u32..=6, split in 0u32..=12,
        c in prop::array::uniform4(-5i32..10),
    ) {
        let total = s0 + s1;
        let d0 = split.min(total);
        let d1 = total - d0;
        let cost = [[c[0] as f64, c[1] as f64], [c[2] as f64, c[3] as f64]];
        let caps = vec![vec![f64::INFINITY; 2]; 2];
        let plan = min_cost_flow(
            &[s0 as f64, s1 as f64],
            &[d0 as f64, d1 as f64],
            &caps,
            &cost.iter().map(|r| r.to_vec()).collect::<Vec<_>>(),
        ).unwrap();
        let oracle = brute_transport([s0, s1], [d0, d1], cost).unwrap();
        prop_assert!((plan.cost - oracle).abs() <= 1e-9 * oracle.abs().max(1.0), "{} vs {}", plan.cost, oracle);
    }

    #[test]
    fn hypervolume_matches_grid(pts in prop::collection::vec(prop::array::uniform3(0i64..5), 1..=4)) {
        let f: Vec<[f64; 3]> = pts.iter().map(|p| p.map(|x| x as f64)).collect();
        let hv = pareto::hypervolume(&f, &[5.0; 3]).unwrap();
        prop_assert_eq!(hv, common::grid_hypervolume(&pts, [5; 3]));
    }

    #[test]
    fn filter_and_sort_match_oracles(pts in prop::collection::vec(prop::array::uniform3(0i32..8), 1..60)) {
        let f: Vec<[f64; 3]> = pts.iter().map(|p| p.map(|x| x as f64)).collect();
        let mut kept: Vec<[f64; 3]> = pareto::nondominated_indices(&f).into_iter().map(|i| f[i]).collect();
        kept.sort_by(|a, b| a.partial_cmp(b).unwrap());
        kept.dedup();
        prop_assert_eq!(kept, common::pareto_scan(&f));
        prop_assert_eq!(pareto::ranks(&f), common::peel_ranks(&f));
    }
}
