"""Acceptance suites, one function per criterion.

Each suite returns ``{"id", "name", "passed", "detail"}``; ``run_all`` runs
them in order.
"""

from __future__ import annotations

import cmath
import math
import random
import time

import numpy as np

from . import braids, cluster, farey, qdilog
from .cocycles import EULER, GV, builtin_cycle, coboundary_defect, pair
from .extensions import (
    ClassVector,
    ExtensionParams,
    class_of,
    milnor_wood,
    realize_presentation,
)
from .plmaps import canonical_lift, line_translation_part
from .sampling import edge_neighborhood, random_artin, random_label, random_params, random_word
from .words import ALPHA, BETA, GENERATORS, Word, check_presentations


def _result(cid, name, passed, **detail):
    return {"id": cid, "name": name, "passed": bool(passed), "detail": detail}


def presentations(**_):
    report = check_presentations()
    return _result(1, "relations of T hold exactly", all(report.values()), relations=report)


def gv_pairing(**_):
    mu, delta = builtin_cycle("mu"), builtin_cycle("delta")
    gv_mu, e_mu, gv_delta = pair(GV, mu), pair(EULER, mu), pair(GV, delta)
    return _result(2, "Godbillon-Vey pairing on mu and delta",
                   gv_mu == 2 and e_mu == 0 and gv_delta == 0,
                   gv_mu=str(gv_mu), euler_mu=str(e_mu), gv_delta=str(gv_delta),
                   expected={"gv_mu": "2", "euler_mu": "0", "gv_delta": "0"})


def cocycle_identity(seed=0, cases=1000, **_):
    rng = random.Random(seed)
    bad = {"euler": 0, "gv": 0}
    for _ in range(cases):
        g, h, k = (random_word(rng, 10) for _ in range(3))
        if coboundary_defect(EULER, g, h, k) != 0:
            bad["euler"] += 1
        if coboundary_defect(GV, g, h, k) != 0:
            bad["gv"] += 1
    return _result(3, "cocycle identity on random triples", not any(bad.values()),
                   cases=cases, failures=bad)


def lift_calibration(**_):
    a, b = canonical_lift(GENERATORS[ALPHA]), canonical_lift(GENERATORS[BETA])
    got = (line_translation_part(b.compose(a).power(5)),
           line_translation_part(a.power(4)),
           line_translation_part(b.power(3)))
    cls = class_of(ExtensionParams(3, 1, 1, 0))
    return _result(4, "lifts to the line give (3,1,1)",
                   got == (3, 1, 1) and cls == ClassVector(1, 0),
                   translations=list(got), class_311=[cls.chi_coef, cls.alpha_coef])


REALIZE_CASES = ((1, 0, 0, 0), (3, 1, 1, 0), (0, 0, 0, 1), (30, 16, 3, 1), (2, 1, 0, 0))


def realization(bound=60, **_):
    rows, summary, ok = {}, {}, True
    for t in REALIZE_CASES:
        res = realize_presentation(ExtensionParams(*t), bound)
        good = res.ok and res.exponents[3] == t[3] and res.exponents[4] == 0
        ok &= good
        rows[" ".join(map(str, t))] = res.to_json()
        e = res.exponents or res.base_exponents
        summary[" ".join(map(str, t))] = f"{res.status}, E4={e[3]}, E5={e[4]}"
    perturbed = {}
    for t in ((1, 0, 0, 0), (3, 1, 1, 0)):
        c = class_of(ExtensionParams(*t))
        for d in (1, -1):
            res = realize_presentation(ExtensionParams(*t), bound, ClassVector(c.chi_coef + d, c.alpha_coef))
            perturbed[f"{' '.join(map(str, t))} chi{d:+d}"] = res.status
            ok &= res.status == "failed"
    return _result(5, "realization of the extensions", ok, summary=summary, perturbed=perturbed,
                   cases=rows)


def alpha_class_tuple(**_):
    c = class_of(ExtensionParams(30, 16, 3, 1))
    return _result(6, "class of (30,16,3,1) is alpha", c == ClassVector(0, 1),
                   chi=c.chi_coef, alpha=c.alpha_coef)


MW_WORDS = (("a^2", 2), ("b", 3), ("a", 4), ("b a", 5))


def milnor_wood_linearity(seed=0, cases=20, **_):
    rng = random.Random(seed)
    tuples = [random_params(rng) for _ in range(cases)]
    basis = [ExtensionParams(1, 0, 0), ExtensionParams(0, 1, 0), ExtensionParams(0, 0, 1)]
    failures = []
    residues = {}
    for text, k in MW_WORDS:
        y = Word.parse(text)
        unit = [milnor_wood(y, k, b) for b in basis]
        residues[text] = unit
        for prm in tuples:
            vals = {milnor_wood(y, k, prm, off) for off in (0, 1, -2, 3)}
            if len(vals) != 1:
                failures.append(f"{text} {prm.as_tuple()}: offset dependent {sorted(vals)}")
                continue
            lin = (prm.n * unit[0] + prm.p * unit[1] + prm.q * unit[2]) % k
            if vals.pop() != lin:
                failures.append(f"{text} {prm.as_tuple()}: not linear")
    return _result(7, "Milnor-Wood residues are offset independent and linear", not failures,
                   unit_residues=residues, failures=failures)


def ptolemy_action(seed=0, cases=100, **_):
    rng = random.Random(seed)
    words = farey.relator_words()
    tess = [farey.BASE] + [farey.random_tessellation(rng, rng.randint(0, 15)) for _ in range(cases)]
    bad = []
    for i, t in enumerate(tess):
        t.check()
        for name, w in words.items():
            if farey.act_word(w, t) != t:
                bad.append(f"{name} on #{i}")
        e = farey.q_tau(t, random_label(rng))
        if e != t.doe_edge:
            t1, rec = farey.flip(t, e)
            if farey.flip(t1, rec.added)[0] != t:
                bad.append(f"flip involution on #{i}")
        u = t
        for _ in range(4):
            u, _ = farey.flip(u, u.doe_edge)
        if u != t:
            bad.append(f"doe order on #{i}")
    return _result(8, "Ptolemy action of the relators and flips", not bad,
                   tessellations=len(tess), failures=bad[:20])


def cluster_compat(seed=0, cases=100, **_):
    rng = random.Random(seed)
    mut_bad, nat_worst = 0, 0.0
    for _ in range(cases):
        t = farey.random_tessellation(rng, rng.randint(0, 15))
        e = farey.q_tau(t, random_label(rng))
        sup = edge_neighborhood(t, e, 2)
        s = cluster.epsilon_of(t, sup)
        m = cluster.mutate(s, e)
        t2, rec = farey.flip(t, e)
        if m.eps != cluster.epsilon_of(t2, m.support).eps:
            mut_bad += 1
        a = {f: rng.uniform(-3, 3) for f in sup}
        lhs = cluster.p_map(cluster.lambda_flip(a, s, e), m)
        rhs = cluster.shear_flip(cluster.p_map(a, s), s, e)
        inner = {rec.added if f == e else f for f in edge_neighborhood(t, e, 1)}
        nat_worst = max(nat_worst, max(abs(lhs[f] - rhs[f]) for f in inner))
    pent = max(cluster.pentagon_check({0: rng.uniform(-4, 4), 1: rng.uniform(-4, 4)},
                                      rng.choice((1, -1)))["deviation"] for _ in range(cases))
    transport = 0.0
    for _ in range(cases):
        pts = tuple(sorted(rng.uniform(-10, 10) for _ in range(5)))
        poly = cluster.Polygon(pts, frozenset({farey.Edge(0, 2), farey.Edge(0, 3)}))
        for _ in range(5):
            e = rng.choice(sorted(poly.diagonals))
            x2 = cluster.shear_flip(poly.shears(), poly.seed(), e)
            poly, _ = poly.flip(e)
            y = poly.shears()
            transport = max(transport, max(abs(x2[k] - y[k]) for k in y))
    ok = mut_bad == 0 and nat_worst < 1e-9 and pent < 1e-12 and transport < 1e-9
    return _result(9, "seed mutation and coordinate flips", ok, mutation_failures=mut_bad,
                   p_naturality=nat_worst, pentagon=pent, cross_ratio_transport=transport)


GRID_H = (0.2, 1 / math.pi, 0.7, 2.0)


def _grid():
    return [complex(x, y) for x in np.linspace(-2, 2, 5) for y in np.linspace(-0.5, 0.5, 5)]


def qdilog_identities(**_):
    dev = dict.fromkeys(("phi_odd", "phi_conj", "phi_duality", "Phi_inversion",
                         "Phi_duality", "dlog"), 0.0)
    for h in GRID_H:
        for z in _grid():
            p, m = qdilog.phi_h(z, h).value, qdilog.phi_h(-z, h).value
            dev["phi_odd"] = max(dev["phi_odd"], abs(p - m - z))
            dev["phi_conj"] = max(dev["phi_conj"],
                                  abs(p.conjugate() - qdilog.phi_h(z.conjugate(), h).value))
            dev["phi_duality"] = max(dev["phi_duality"],
                                     abs(p / h - qdilog.phi_h(z / h, 1 / h).value))
            P, Pm = qdilog.Phi_h(z, h).value, qdilog.Phi_h(-z, h).value
            inv = cmath.exp(z * z / (4j * math.pi * h)) * cmath.exp(-1j * math.pi / 12 * (h + 1 / h))
            dev["Phi_inversion"] = max(dev["Phi_inversion"], abs(P * Pm - inv))
            dev["Phi_duality"] = max(dev["Phi_duality"], abs(P - qdilog.Phi_h(z / h, 1 / h).value))
        for z in (0.5, -1.0 + 0.3j, 1.5):
            dev["dlog"] = max(dev["dlog"], qdilog.dlog_consistency(z, h, 1e-4)["deviation"])
    limits = {"phi_odd": 1e-6, "phi_conj": 1e-8, "phi_duality": 1e-6, "Phi_inversion": 1e-5,
              "Phi_duality": 1e-5, "dlog": 1e-5}
    classical = abs(qdilog.phi_h(0, 1e-3).value - math.log(2))
    ok = all(dev[k] < limits[k] for k in dev) and classical < 1e-2
    return _result(10, "quantum dilogarithm identities", ok, deviations=dev, limits=limits,
                   classical_limit=classical)


def winding(seed=0, cases=500, **_):
    rng = random.Random(seed)
    worst, mismatch = 0.0, 0
    for _ in range(cases):
        w, n = random_artin(rng)
        b = braids.from_artin(w, n)
        nu = braids.total_winding(b)
        a = braids.abelianize(b)
        worst = max(worst, abs(nu / math.pi - a))
        mismatch += a != braids.exponent_sum(w)
    return _result(11, "winding numbers abelianize braids", worst < 1e-6 and mismatch == 0,
                   cases=cases, integrality=worst, exponent_sum_mismatches=mismatch)


SUITES = (presentations, gv_pairing, cocycle_identity, lift_calibration, realization,
          alpha_class_tuple, milnor_wood_linearity, ptolemy_action, cluster_compat,
          qdilog_identities, winding)


def run_all(seed: int = 0, cases: int = None) -> list:
    out = []
    for suite in SUITES:
        kw = {"seed": seed}
        if cases is not None:
            kw["cases"] = cases
        t0 = time.perf_counter()
        r = suite(**kw)
        r["seconds"] = round(time.perf_counter() - t0, 3)
        out.append(r)
    return out
