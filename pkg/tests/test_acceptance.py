"""Acceptance criteria, one test each.

Every test prints a ``PASS``/``FAIL`` line; the lines are also collected and
repeated in the pytest terminal summary.  Run directly with
``python3 tests/test_acceptance.py`` for the lines alone.
"""

import json
import sys
import time

import pytest

from ptolemy import verify

# (criterion, suite, keyword arguments, runtime budget in seconds or None)
CRITERIA = [
    (1, verify.presentations, {}, 1.0),
    (2, verify.gv_pairing, {}, 1.0),
    (3, verify.cocycle_identity, {"cases": 1000, "seed": 0}, 30.0),
    (4, verify.lift_calibration, {}, 1.0),
    (5, verify.realization, {"bound": 60}, 30.0),
    (6, verify.alpha_class_tuple, {}, None),
    (7, verify.milnor_wood_linearity, {"cases": 20, "seed": 0}, 10.0),
    (8, verify.ptolemy_action, {"cases": 100, "seed": 0}, 10.0),
    (9, verify.cluster_compat, {"cases": 100, "seed": 0}, 10.0),
    (10, verify.qdilog_identities, {}, 60.0),
    (11, verify.winding, {"cases": 500, "seed": 0}, 20.0),
]

LINES = []


def _evaluate(cid, suite, kwargs, budget):
    t0 = time.perf_counter()
    res = suite(**kwargs)
    secs = time.perf_counter() - t0
    in_time = budget is None or secs < budget
    ok = res["passed"] and in_time
    budget_txt = "" if budget is None else f" (budget {budget:g}s)"
    line = f"{'PASS' if ok else 'FAIL'} criterion {cid:2d}: {res['name']} [{secs:.2f}s{budget_txt}]"
    if not ok:
        d = res["detail"]
        detail = json.dumps({k: v for k, v in d.items() if k in ("summary", "perturbed")} if "summary" in d
                            else d, default=str)
        line += "\n      detail: " + (detail if len(detail) < 600 else detail[:600] + "...")
        if not in_time:
            line += "\n      over the runtime budget"
    return ok, line


@pytest.mark.parametrize("cid,suite,kwargs,budget", CRITERIA, ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_acceptance(cid, suite, kwargs, budget):
    ok, line = _evaluate(cid, suite, kwargs, budget)
    LINES.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    results = [_evaluate(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
