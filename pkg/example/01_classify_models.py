"""Example 1: Placing the Bell-scenario models in the hierarchy.

Demonstrates:
- classify() on the Bell table, the Hardy model and the PR box
- Reading the certificates behind each verdict
- Scoring the CHSH weights with evaluate_csw()
"""

import os
import sys
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from ctxkit import classify, evaluate_csw
from ctxkit.stabilizer.catalog import bell_table, chsh_weights, hardy, pr_box


def level(report) -> str:
    if report.strongly_contextual:
        return "strongly contextual"
    if report.logically_contextual:
        return "logically contextual"
    if report.noncontextual:
        return "noncontextual"
    return "contextual"


def main():
    for name, model in [("Bell table", bell_table()), ("Hardy", hardy()), ("PR box", pr_box())]:
        s = model.scenario
        report = classify(model)
        print(f"=== {name} ===")
        print(f"  level:                 {level(report)}")
        print(f"  possible events:       {report.support_size}")
        print(f"  independence number:   {report.independence_number} "
              f"(contexts: {report.context_count})")
        print(f"  noncontextual fraction: {report.noncontextual_fraction}")

        w = report.witnesses
        if w.logical_event is not None:
            # no global assignment makes this event true
            print(f"  logical witness:       {s.describe(w.logical_event)} "
                  f"(independence degree {w.logical_degree})")
        if report.inequality is not None:
            ineq = report.inequality
            print(f"  contradictory inequality: bound {ineq.classical_bound}, "
                  f"model scores {ineq.value(model)}")

        csw = evaluate_csw(model, chsh_weights())
        print(f"  CHSH sum:              {csw.value} vs classical {csw.classical_bound}"
              f"{'  (violated)' if csw.violated else ''}")
        print()


if __name__ == '__main__':
    main()
