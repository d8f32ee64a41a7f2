"""Smoke test for the clsc_py extension module.

Build and install the module first:

    pip install maturin
    maturin develop -m crates/py/Cargo.toml

then run `python python/smoke_test.py`.
"""

import json
import math

import clsc_py


def main():
    tiny = clsc_py.Instance.oracle_tiny()
    assert tiny.validate() == [], tiny.validate()
    print(tiny)

    again = clsc_py.Instance.from_json(tiny.to_json())
    assert again.to_json() == tiny.to_json()

    broken = json.loads(tiny.to_json())
    broken["warehouses"][0]["capacity"] = -1.0
    issues = clsc_py.Instance.from_json(json.dumps(broken)).validate()
    assert any("warehouses[0]" in loc for loc, _ in issues), issues

    sol = tiny.decode([1.0] * tiny.genotype_length())
    cost, co2, dispatch = tiny.evaluate(sol)
    assert cost > 0 and co2 > 0 and 0 < dispatch <= 4.0

    true_front = [
        [46.0, 26.0, -2.0],
        [49.0, 23.0, -2.0],
        [50.0, 22.0, -4.0],
        [53.0, 19.0, -4.0],
    ]
    ws = clsc_py.sweep_weights(tiny, grid=10)
    # weighted sums only reach supported points, so [49, 23, -2] is missed
    assert sorted(ws.canonical()) == [p for p in true_front if p[0] != 49.0], ws.canonical()
    print("weighted-sum front:", ws.objectives())

    ga, hv = clsc_py.run_nsga2(tiny, population=40, generations=60, seed=7, stall=0)
    assert len(hv) == 61 and all(b >= a for a, b in zip(hv, hv[1:]))
    assert sorted(ga.canonical()) == true_front, ga.canonical()
    records = json.loads(ga.solutions_json())
    assert len(records) == len(ga) and records[0]["method"] == "nsga2"

    ref = [60.0, 30.0, 0.0]
    assert math.isclose(ga.hypervolume(ref), clsc_py.hypervolume(ga.canonical(), ref))
    assert clsc_py.dominates([1.0, 1.0, 1.0], [1.0, 2.0, 1.0])
    assert clsc_py.nondominated_indices([[1, 2, 3], [2, 3, 4], [0, 5, 5]]) == [0, 2]

    table = clsc_py.Instance.tabletop(42)
    front, _ = clsc_py.run_nsga2(table, population=40, generations=30, seed=1)
    print("tabletop front size:", len(front), "hypervolume:", front.hypervolume())
    print("smoke test passed")


if __name__ == "__main__":
    main()
