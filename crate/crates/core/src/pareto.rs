//! Dominance algebra and front-quality indicators.
//!
//! Everything here works on canonical (all-minimization) 3-vectors, see
//! [`ObjectiveVector::canonical`]. Comparisons are exact; no epsilon is applied.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::model::{ObjectiveVector, Solution};

pub type Point = [f64; 3];

/// `a` dominates `b` under the (min, min, max) orientation.
pub fn dominates(a: &ObjectiveVector, b: &ObjectiveVector) -> bool {
    dominates_canonical(&a.canonical(), &b.canonical())
}

pub fn dominates_canonical(a: &Point, b: &Point) -> bool {
    let mut strictly = false;
    for o in 0..3 {
        if a[o] > b[o] {
            return false;
        }
        if a[o] < b[o] {
            strictly = true;
        }
    }
    strictly
}

pub fn weakly_dominates_canonical(a: &Point, b: &Point) -> bool {
    (0..3).all(|o| a[o] <= b[o])
}

fn lex_cmp(a: &Point, b: &Point) -> Ordering {
    a[0].total_cmp(&b[0])
        .then(a[1].total_cmp(&b[1]))
        .then(a[2].total_cmp(&b[2]))
}

/// Indices of the points not dominated by any other point, in input order.
pub fn nondominated_indices(points: &[Point]) -> Vec<usize> {
    (0..points.len())
        .filter(|&i| !points.iter().any(|q| dominates_canonical(q, &points[i])))
        .collect()
}

/// Non-dominated sorting. `fronts[r]` holds the indices of rank `r`, each in
/// ascending index order.
pub fn fast_nondominated_sort(points: &[Point]) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut dominated_by_me: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut domination_count = vec![0usize; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if dominates_canonical(&points[i], &points[j]) {
                dominated_by_me[i].push(j);
                domination_count[j] += 1;
            } else if dominates_canonical(&points[j], &points[i]) {
                dominated_by_me[j].push(i);
                domination_count[i] += 1;
            }
        }
    }
    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| domination_count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominated_by_me[i] {
                domination_count[j] -= 1;
                if domination_count[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
    }
    fronts
}

/// Rank of every point (0 = non-dominated).
pub fn ranks(points: &[Point]) -> Vec<usize> {
    let mut out = vec![0; points.len()];
    for (r, front) in fast_nondominated_sort(points).iter().enumerate() {
        for &i in front {
            out[i] = r;
        }
    }
    out
}

/// Crowding distance of each point within one front. Gaps are normalized by
/// the objective's range in the front; boundary points get `+inf`.
pub fn crowding_distance(points: &[Point]) -> Vec<f64> {
    let n = points.len();
    let mut dist = vec![0.0; n];
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    let mut order: Vec<usize> = (0..n).collect();
    for o in 0..3 {
        order.sort_by(|&a, &b| points[a][o].total_cmp(&points[b][o]).then(a.cmp(&b)));
        let lo = points[order[0]][o];
        let hi = points[order[n - 1]][o];
        dist[order[0]] = f64::INFINITY;
        dist[order[n - 1]] = f64::INFINITY;
        let range = hi - lo;
        if range <= 0.0 {
            continue;
        }
        for w in 1..n - 1 {
            let i = order[w];
            if dist[i].is_finite() {
                dist[i] += (points[order[w + 1]][o] - points[order[w - 1]][o]) / range;
            }
        }
    }
    dist
}

/// Reference point strictly worse than every given point: the coordinate-wise
/// worst value pushed out by 10% of its magnitude (by 1 when it is zero).
pub fn reference_point(points: &[Point]) -> Point {
    let mut worst = [f64::NEG_INFINITY; 3];
    for p in points {
        for o in 0..3 {
            worst[o] = worst[o].max(p[o]);
        }
    }
    worst.map(|w| if w == 0.0 { 1.0 } else { w + 0.1 * w.abs() })
}

/// Area dominated in 2-D by `pts` up to `(rx, ry)`; every point must be inside.
fn area_2d(pts: &mut [[f64; 2]], rx: f64, ry: f64) -> f64 {
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut area = 0.0;
    let mut ceiling = ry;
    for p in pts.iter() {
        if p[1] < ceiling {
            area += (rx - p[0]) * (ceiling - p[1]);
            ceiling = p[1];
        }
    }
    area
}

/// Exact dominated hypervolume by sweeping the third objective.
///
/// Every point must strictly dominate `reference` in all three coordinates.
pub fn hypervolume(points: &[Point], reference: &Point) -> Result<f64> {
    if let Some(index) = points.iter().position(|p| (0..3).any(|o| !(p[o] < reference[o]))) {
        return Err(Error::PointOutsideReference { index });
    }
    Ok(sweep_volume(points, reference))
}

/// Hypervolume counting only the points that strictly dominate `reference`.
pub fn hypervolume_clipped(points: &[Point], reference: &Point) -> f64 {
    let inside: Vec<Point> = points
        .iter()
        .copied()
        .filter(|p| (0..3).all(|o| p[o] < reference[o]))
        .collect();
    sweep_volume(&inside, reference)
}

fn sweep_volume(points: &[Point], reference: &Point) -> f64 {
    let mut sorted: Vec<Point> = points.to_vec();
    sorted.sort_by(|a, b| a[2].total_cmp(&b[2]));
    let mut volume = 0.0;
    let mut slab: Vec<[f64; 2]> = Vec::with_capacity(sorted.len());
    for (i, p) in sorted.iter().enumerate() {
        slab.push([p[0], p[1]]);
        let z_next = sorted.get(i + 1).map_or(reference[2], |q| q[2]);
        let depth = z_next - p[2];
        if depth > 0.0 {
            volume += area_2d(&mut slab, reference[0], reference[1]) * depth;
        }
    }
    volume
}

/// Fraction of `b` weakly dominated by at least one point of `a`.
pub fn coverage(a: &[Point], b: &[Point]) -> Result<f64> {
    coverage_within(a, b, 0.0)
}

/// Coverage where `a` may exceed a covered point of `b` by `rel_tol · |b_o|`
/// in each objective.
pub fn coverage_within(a: &[Point], b: &[Point], rel_tol: f64) -> Result<f64> {
    if b.is_empty() {
        return Err(Error::EmptyFront);
    }
    let covered = b
        .iter()
        .filter(|q| a.iter().any(|p| (0..3).all(|o| p[o] <= q[o] + rel_tol * q[o].abs())))
        .count();
    Ok(covered as f64 / b.len() as f64)
}

/// Where a front point came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Provenance {
    /// Found by the genetic algorithm in the given generation.
    Ga { generation: usize },
    /// Optimum of the weighted sum with the given `(cost, co2, dispatch)` weights.
    WeightedSum { weights: [f64; 3] },
}

impl Provenance {
    pub fn method(&self) -> &'static str {
        match self {
            Self::Ga { .. } => "nsga2",
            Self::WeightedSum { .. } => "wsum",
        }
    }

    fn cmp_key(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Self::Ga { generation: a }, Self::Ga { generation: b }) => a.cmp(b),
            (Self::Ga { .. }, Self::WeightedSum { .. }) => Ordering::Less,
            (Self::WeightedSum { .. }, Self::Ga { .. }) => Ordering::Greater,
            (Self::WeightedSum { weights: a }, Self::WeightedSum { weights: b }) => {
                lex_cmp(a, b)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrontPoint {
    pub objectives: ObjectiveVector,
    pub solution: Solution,
    /// Sorted, without duplicates.
    pub provenance: Vec<Provenance>,
}

impl FrontPoint {
    pub fn new(objectives: ObjectiveVector, solution: Solution, provenance: Provenance) -> Self {
        Self {
            objectives,
            solution,
            provenance: vec![provenance],
        }
    }

    pub fn canonical(&self) -> Point {
        self.objectives.canonical()
    }
}

/// Mutually non-dominated points without duplicate objective vectors, sorted
/// lexicographically by canonical objectives.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ParetoFront {
    points: Vec<FrontPoint>,
}

impl ParetoFront {
    pub fn points(&self) -> &[FrontPoint] {
        &self.points
    }

    pub fn into_points(self) -> Vec<FrontPoint> {
        self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn canonical_points(&self) -> Vec<Point> {
        self.points.iter().map(FrontPoint::canonical).collect()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, FrontPoint> {
        self.points.iter()
    }
}

/// Keeps exactly the candidates not dominated by any other candidate.
/// Identical objective vectors are collapsed into one point whose provenance
/// is the union of theirs; the solution kept is the one with the smallest
/// provenance.
pub fn nondominated_filter(candidates: Vec<FrontPoint>) -> ParetoFront {
    let mut candidates = candidates;
    for c in &mut candidates {
        c.provenance.sort_by(Provenance::cmp_key);
        c.provenance.dedup();
    }
    candidates.sort_by(|a, b| {
        lex_cmp(&a.canonical(), &b.canonical()).then_with(|| {
            let pa = a.provenance.first();
            let pb = b.provenance.first();
            match (pa, pb) {
                (Some(x), Some(y)) => x.cmp_key(y),
                _ => pa.is_some().cmp(&pb.is_some()),
            }
        })
    });
    let mut merged: Vec<FrontPoint> = Vec::with_capacity(candidates.len());
    for c in candidates {
        match merged.last_mut() {
            Some(last) if last.canonical() == c.canonical() => {
                last.provenance.extend(c.provenance);
                last.provenance.sort_by(Provenance::cmp_key);
                last.provenance.dedup();
            }
            _ => merged.push(c),
        }
    }
    let pts: Vec<Point> = merged.iter().map(FrontPoint::canonical).collect();
    let keep = nondominated_indices(&pts);
    let mut keep_iter = keep.into_iter().peekable();
    let points = merged
        .into_iter()
        .enumerate()
        .filter_map(|(i, p)| {
            if keep_iter.peek() == Some(&i) {
                keep_iter.next();
                Some(p)
            } else {
                None
            }
        })
        .collect();
    ParetoFront { points }
}
