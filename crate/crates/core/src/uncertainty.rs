//! Discrete demand scenarios.
//!
//! Facility decisions are taken before demand is known; flows are chosen per
//! scenario. A [`ScenarioSet`] is a finite probability distribution over
//! customer demand maps.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on the probability mass of a scenario set.
pub const PROBABILITY_TOLERANCE: f64 = 1e-9;

/// Probabilities of the low/base/high scenarios produced by [`generate_scenarios`].
pub const THREE_POINT_PROBABILITIES: [f64; 3] = [0.25, 0.5, 0.25];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DemandScenario {
    pub probability: f64,
    /// Units demanded per customer id.
    pub demand: BTreeMap<String, f64>,
}

impl DemandScenario {
    pub fn total_demand(&self) -> f64 {
        self.demand.values().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ScenarioSet(pub Vec<DemandScenario>);

impl ScenarioSet {
    pub fn new(scenarios: Vec<DemandScenario>) -> Self {
        Self(scenarios)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, DemandScenario> {
        self.0.iter()
    }

    pub fn total_probability(&self) -> f64 {
        self.0.iter().map(|s| s.probability).sum()
    }

    /// Returns one message per violated invariant (empty when valid).
    pub fn issues(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        if self.0.is_empty() {
            out.push(("scenarios".to_string(), "scenario set is empty".to_string()));
            return out;
        }
        for (s, sc) in self.0.iter().enumerate() {
            if !(0.0..=1.0).contains(&sc.probability) {
                out.push((
                    format!("scenarios[{s}].probability"),
                    format!("probability {} outside [0, 1]", sc.probability),
                ));
            }
            for (k, d) in &sc.demand {
                if !d.is_finite() || *d < 0.0 {
                    out.push((
                        format!("scenarios[{s}].demand[{k}]"),
                        format!("demand {d} is negative or not finite"),
                    ));
                }
            }
        }
        let total = self.total_probability();
        if (total - 1.0).abs() > PROBABILITY_TOLERANCE {
            out.push((
                "scenarios".to_string(),
                format!("probabilities sum to {total} (expected 1)"),
            ));
        }
        out
    }
}

/// Builds a one- or three-point scenario set around `base_demand`.
///
/// `count = 1` yields the base demand with probability one; `count = 3`
/// yields `(1 - spread)`, `1` and `(1 + spread)` multiples of the base with
/// probabilities `(0.25, 0.5, 0.25)`. The seed is accepted for sampling modes
/// that may be added later and does not influence the result.
pub fn generate_scenarios(
    base_demand: &BTreeMap<String, f64>,
    spread: f64,
    count: usize,
    _seed: u64,
) -> Result<ScenarioSet> {
    if !(0.0..1.0).contains(&spread) {
        return Err(Error::InvalidSpread(spread));
    }
    let scale = |factor: f64| -> BTreeMap<String, f64> {
        base_demand
            .iter()
            .map(|(k, d)| (k.clone(), d * factor))
            .collect()
    };
    match count {
        1 => Ok(ScenarioSet(vec![DemandScenario {
            probability: 1.0,
            demand: base_demand.clone(),
        }])),
        3 => {
            let factors = [1.0 - spread, 1.0, 1.0 + spread];
            Ok(ScenarioSet(
                factors
                    .iter()
                    .zip(THREE_POINT_PROBABILITIES)
                    .map(|(&f, p)| DemandScenario {
                        probability: p,
                        demand: scale(f),
                    })
                    .collect(),
            ))
        }
        n => Err(Error::InvalidScenarioCount(n)),
    }
}

/// Probability-weighted demand per customer.
pub fn expected_demand(scenarios: &ScenarioSet) -> BTreeMap<String, f64> {
    let mut out: BTreeMap<String, f64> = BTreeMap::new();
    for sc in scenarios.iter() {
        for (k, d) in &sc.demand {
            *out.entry(k.clone()).or_insert(0.0) += sc.probability * d;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn base(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn three_point_lattice() {
        let set = generate_scenarios(&base(&[("c1", 100.0)]), 0.2, 3, 0).unwrap();
        let demands: Vec<f64> = set.iter().map(|s| s.demand["c1"]).collect();
        let probs: Vec<f64> = set.iter().map(|s| s.probability).collect();
        assert_eq!(demands, vec![80.0, 100.0, 120.0]);
        assert_eq!(probs, vec![0.25, 0.5, 0.25]);
        assert!(set.issues().is_empty());
    }

    #[test]
    fn single_scenario_is_base() {
        for spread in [0.0, 0.3, 0.9] {
            let set = generate_scenarios(&base(&[("c1", 100.0)]), spread, 1, 7).unwrap();
            assert_eq!(set.len(), 1);
            assert_eq!(set.0[0].probability, 1.0);
            assert_eq!(set.0[0].demand["c1"], 100.0);
        }
    }

    #[test]
    fn three_point_expectation_is_base() {
        let b = base(&[("c1", 100.0), ("c2", 37.5)]);
        let set = generate_scenarios(&b, 0.35, 3, 0).unwrap();
        let e = expected_demand(&set);
        for (k, v) in &b {
            assert!((e[k] - v).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_spread_and_count() {
        let b = base(&[("c1", 1.0)]);
        assert!(matches!(generate_scenarios(&b, 1.0, 3, 0), Err(Error::InvalidSpread(_))));
        assert!(matches!(generate_scenarios(&b, -0.1, 3, 0), Err(Error::InvalidSpread(_))));
        assert!(matches!(generate_scenarios(&b, 0.1, 2, 0), Err(Error::InvalidScenarioCount(2))));
    }

    #[test]
    fn expected_demand_of_two_scenarios() {
        let set = ScenarioSet(vec![
            DemandScenario { probability: 0.5, demand: base(&[("c1", 10.0)]) },
            DemandScenario { probability: 0.5, demand: base(&[("c1", 30.0)]) },
        ]);
        assert_eq!(expected_demand(&set)["c1"], 20.0);
    }

    #[test]
    fn probabilities_must_sum_to_one() {
        let set = ScenarioSet(vec![
            DemandScenario { probability: 0.5, demand: base(&[("c1", 10.0)]) },
            DemandScenario { probability: 0.4, demand: base(&[("c1", 30.0)]) },
        ]);
        let issues = set.issues();
        assert_eq!(issues.len(), 1);
        assert!(issues[0].1.contains("probabilities sum to 0.9"), "{issues:?}");
    }

    proptest! {
        #[test]
        fn generated_sets_are_valid(d in 0.0f64..1e6, spread in 0.0f64..0.999, three in any::<bool>()) {
            let count = if three { 3 } else { 1 };
            let set = generate_scenarios(&base(&[("a", d), ("b", d / 3.0)]), spread, count, 1).unwrap();
            prop_assert!(set.issues().is_empty());
        }

        #[test]
        fn expectation_is_order_invariant(ds in prop::collection::vec(0.0f64..1000.0, 1..6)) {
            let n = ds.len() as f64;
            let scenarios: Vec<DemandScenario> = ds
                .iter()
                .map(|&d| DemandScenario { probability: 1.0 / n, demand: base(&[("c", d)]) })
                .collect();
            let forward = expected_demand(&ScenarioSet(scenarios.clone()));
            let mut rev = scenarios;
            rev.reverse();
            let backward = expected_demand(&ScenarioSet(rev));
            prop_assert!((forward["c"] - backward["c"]).abs() <= 1e-9 * (1.0 + forward["c"].abs()));
        }

        #[test]
        fn expectation_is_linear(ds in prop::collection::vec(0.0f64..1000.0, 1..6), lambda in 0.0f64..50.0) {
            let n = ds.len() as f64;
            let mk = |scale: f64| ScenarioSet(ds
                .iter()
                .map(|&d| DemandScenario { probability: 1.0 / n, demand: base(&[("c", d * scale)]) })
                .collect());
            let e1 = expected_demand(&mk(1.0))["c"];
            let el = expected_demand(&mk(lambda))["c"];
            prop_assert!((el - lambda * e1).abs() <= 1e-9 * (1.0 + el.abs()));
        }
    }
}
