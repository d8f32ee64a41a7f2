//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use clsc::model::{self, NetworkInstance, ObjectiveVector, ScenarioFlows, Solution};
use clsc::pareto::Point;

/// Every way to split `total` integer units into `parts` ordered parts.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Splits of `amount` over `targets`: every integer composition when the
/// amount is integral, otherwise all of it on one target.
fn splits(amount: f64, targets: &[usize], width: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    if amount == 0.0 {
        return vec![vec![0.0; width]];
    }
    if targets.is_empty() {
        return out;
    }
    if amount.fract() == 0.0 && amount <= 64.0 {
        for c in compositions(amount as u32, targets.len()) {
            let mut row = vec![0.0; width];
            for (t, x) in targets.iter().zip(c) {
                row[*t] = x as f64;
            }
            out.push(row);
        }
    } else {
        for &t in targets {
            let mut row = vec![0.0; width];
            row[t] = amount;
            out.push(row);
        }
    }
    out
}

/// Cartesian product of per-item choices.
fn product<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut acc: Vec<Vec<T>> = vec![vec![]];
    for c in choices {
        let mut next = Vec::with_capacity(acc.len() * c.len());
        for prefix in &acc {
            for x in c {
                let mut v = prefix.clone();
                v.push(x.clone());
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}

fn masks(n: usize) -> Vec<Vec<bool>> {
    if n == 0 {
        return vec![vec![]];
    }
    (1u32..1 << n).map(|m| (0..n).map(|b| m >> b & 1 == 1).collect()).collect()
}

fn open(v: &[bool]) -> Vec<usize> {
    (0..v.len()).filter(|&i| v[i]).collect()
}

fn transpose_rows(rows: &[Vec<f64>], cols: usize) -> Vec<Vec<f64>> {
    (0..cols).map(|c| rows.iter().map(|r| r[c]).collect()).collect()
}

/// All feasible solutions of a single-scenario instance with integer flows
/// wherever the forced volumes are integral, with their objective vectors.
pub fn enumerate(inst: &NetworkInstance) -> Vec<(Solution, ObjectiveVector)> {
    assert_eq!(inst.n_scenarios(), 1, "enumeration covers single-scenario instances");
    let demand = &inst.demand_matrix()[0];
    let (np, nw, nk, nl, nm) = (
        inst.n_plants(),
        inst.n_warehouses(),
        inst.n_customers(),
        inst.n_collection(),
        inst.n_disposal(),
    );
    let mut out = Vec::new();
    for op in masks(np) {
        for ow in masks(nw) {
            for oc in masks(nl) {
                let (ps, ws, cs) = (open(&op), open(&ow), open(&oc));
                let all_m: Vec<usize> = (0..nm).collect();
                // yb columns per customer
                let yb_choices: Vec<Vec<Vec<f64>>> = (0..nk).map(|k| splits(demand[k], &ws, nw)).collect();
                for yb_cols in product(&yb_choices) {
                    let yb = transpose_rows(&yb_cols, nw);
                    let inflow: Vec<f64> = yb.iter().map(|r| r.iter().sum()).collect();
                    let ya_choices: Vec<Vec<Vec<f64>>> = (0..nw).map(|j| splits(inflow[j], &ps, np)).collect();
                    let yc_choices: Vec<Vec<Vec<f64>>> = (0..nk)
                        .map(|k| splits(inst.alpha * yb_cols[k].iter().sum::<f64>(), &cs, nl))
                        .collect();
                    for ya_cols in product(&ya_choices) {
                        let ya = transpose_rows(&ya_cols, np);
                        for yc in product(&yc_choices) {
                            let coll_in: Vec<f64> = (0..nl).map(|l| yc.iter().map(|r| r[l]).sum()).collect();
                            let yd_choices: Vec<Vec<Vec<f64>>> =
                                (0..nl).map(|l| splits(inst.beta * coll_in[l], &all_m, nm)).collect();
                            for yd in product(&yd_choices) {
                                let ye_choices: Vec<Vec<Vec<f64>>> = (0..nl)
                                    .map(|l| splits(coll_in[l] - yd[l].iter().sum::<f64>(), &ps, np))
                                    .collect();
                                for ye in product(&ye_choices) {
                                    let sol = Solution {
                                        open_plants: op.clone(),
                                        open_warehouses: ow.clone(),
                                        open_collection: oc.clone(),
                                        flows: vec![ScenarioFlows {
                                            ya: ya.clone(),
                                            yb: yb.clone(),
                                            yc: yc.clone(),
                                            yd: yd.clone(),
                                            ye,
                                        }],
                                    };
                                    if let Ok(v) = model::evaluate(inst, &sol) {
                                        out.push((sol, v));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Pairwise-scan non-dominated subset, duplicates removed, sorted.
pub fn pareto_scan(points: &[Point]) -> Vec<Point> {
    let dominates = |a: &Point, b: &Point| (0..3).all(|o| a[o] <= b[o]) && (0..3).any(|o| a[o] < b[o]);
    let mut out: Vec<Point> = points
        .iter()
        .filter(|p| !points.iter().any(|q| dominates(q, p)))
        .copied()
        .collect();
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out.dedup();
    out
}

/// Ranks by repeatedly removing the non-dominated layer.
pub fn peel_ranks(points: &[Point]) -> Vec<usize> {
    let dominates = |a: &Point, b: &Point| (0..3).all(|o| a[o] <= b[o]) && (0..3).any(|o| a[o] < b[o]);
    let mut rank = vec![usize::MAX; points.len()];
    let mut r = 0;
    while rank.contains(&usize::MAX) {
        let remaining: Vec<usize> = (0..points.len()).filter(|&i| rank[i] == usize::MAX).collect();
        let layer: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&i| !remaining.iter().any(|&j| dominates(&points[j], &points[i])))
            .collect();
        for i in layer {
            rank[i] = r;
        }
        r += 1;
    }
    rank
}

/// Hypervolume of integer points against an integer reference by counting
/// dominated unit cells.
pub fn grid_hypervolume(points: &[[i64; 3]], reference: [i64; 3]) -> f64 {
    let lo = [0, 1, 2].map(|o| points.iter().map(|p| p[o]).min().unwrap_or(reference[o]));
    let mut count = 0u64;
    for x in lo[0]..reference[0] {
        for y in lo[1]..reference[1] {
            for z in lo[2]..reference[2] {
                if points.iter().any(|p| p[0] <= x && p[1] <= y && p[2] <= z) {
                    count += 1;
                }
            }
        }
    }
    count as f64
}
