"""Example 3: Exclusivity graphs, inequalities and measurement protocols.

Demonstrates:
- exclusivity_graph() and a DIMACS export with its vertex map
- An extended logical Bell inequality with integer coefficients
- Enumerating measurement protocols and the hyperedge check
"""

import json
import os
import sys
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from ctxkit import (
    bell_scenario,
    enumerate_protocols,
    exclusivity_graph,
    logical_bell_inequality,
    verify_theorem4,
)
from ctxkit.formats import vertex_map, write_dimacs
from ctxkit.protocols import protocol_outcomes
from ctxkit.stabilizer.catalog import pr_box


def main():
    s = bell_scenario()
    xg = exclusivity_graph(s)
    print(f"=== Exclusivity graph: {xg.n} vertices, {len(xg.edges)} edges ===")
    print(write_dimacs(xg.graph, "Bell scenario").splitlines()[1])
    print(json.dumps(vertex_map(xg)["1"]))

    print("\n=== Weighted inequality on the PR box support ===")
    model = pr_box()
    selected = [model.possible_events(i) for i in range(s.context_count)]
    ineq = logical_bell_inequality(s, selected, [2, 1, 1, 1])
    print(f"classical bound {ineq.classical_bound}, ceiling {ineq.ceiling}, "
          f"PR box scores {ineq.value(model)}")

    print("\n=== Protocols ===")
    protocols = enumerate_protocols(s)
    print(f"{len(protocols)} protocols; the first one's outcomes:")
    for path, event in protocol_outcomes(protocols[0], s):
        steps = " -> ".join(f"{m}={a}" for m, a in path)
        print(f"  {steps:20s} {s.describe(event)}")

    check = verify_theorem4(s)
    print(f"hyperedge check: {'ok' if check.ok else check.mismatch}, "
          f"{check.hyperedge_count} hyperedges")


if __name__ == '__main__':
    main()
