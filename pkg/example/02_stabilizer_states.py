"""Example 2: Stabilizer scenarios with exact Born-rule models.

Demonstrates:
- stabilizer_scenario() sizes for qubits and a qutrit
- Every two-qubit state being strongly contextual
- The Mermin-square check behind it
"""

import os
import sys
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from ctxkit import ClassifyOptions, Limits, classify
from ctxkit.stabilizer import (
    maximally_mixed,
    mermin_square_check,
    product_stabilizer_state,
    quantum_empirical_model,
    stabilizer_scenario,
)


def show_scenario(n: int, d: int):
    ss = stabilizer_scenario(n, d)
    s = ss.scenario
    print(f"n={n} d={d}: {len(s.measurements)} measurements, "
          f"{s.context_count} contexts, {len(ss.quantum_events())} quantum events")


def main():
    print("=== Scenarios ===")
    for n, d in [(1, 2), (1, 3), (2, 2)]:
        show_scenario(n, d)

    print("\n=== Two qubits ===")
    options = ClassifyOptions(limits=Limits.from_env())
    for label, state in [("|00>", product_stabilizer_state(2, 2)),
                         ("maximally mixed", maximally_mixed(2, 2))]:
        report = classify(quantum_empirical_model(state, 2, 2), options)
        print(f"{label}: {report.support_size} possible events, "
              f"alpha {report.independence_number} < {report.context_count} contexts, "
              f"strongly contextual: {report.strongly_contextual}")

    print("\n=== Single qutrit ===")
    report = classify(quantum_empirical_model(maximally_mixed(1, 3), 1, 3), options)
    print(f"noncontextual: {report.noncontextual}")

    print("\n=== Mermin square ===")
    proof = mermin_square_check(2)
    for row in proof.table:
        print("  " + "  ".join(row))
    print(f"row signs {proof.row_signs}, column signs {proof.column_signs}")
    print(f"{proof.candidates_checked} sign valuations checked, none consistent: "
          f"{proof.valuation is None}")


if __name__ == '__main__':
    main()
