import random
import re
from collections import defaultdict
from math import gcd

import pytest

from quotsing import catalog
from quotsing.exactnum import zeta
from quotsing.matgroup import close
from quotsing.structure import eigenvalue_multiplicities

ACCEPTANCE_TITLES = {
    1: "Sym^4 row on the 2.A6 fixture",
    2: "Sym^4 of 2.A6 has no invariants",
    3: "orders of H, Htilde, N, HM and its index-5 subgroup",
    4: "splitting types of subgroups 13-21 on W",
    5: "Htilde invariant dimensions (characters and Molien)",
    6: "Heisenberg quintics and HM semi-invariant degrees",
    7: "classifier golden set",
    8: "Heisenberg dimensions divisible by 5",
    9: "Brieskorn-Pham tuples",
    10: "Thomas and Nagura prime bounds",
    11: "character, Molien and Reynolds oracles agree",
    12: "verdicts invariant under scalar twists",
}

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")


def scalar_order(g) -> int:
    return int(g.scalar_mask.sum())


def twist(g, k: int, j: int = 1):
    """Closure of the generators of g multiplied by zeta_k^j."""
    z = zeta(k, j)
    return close([s.scale(z) for s in g.generators])


def reflection_prone_orders(g) -> set[int]:
    """Orders r of eigenvalues that some non-scalar element has with multiplicity n-1.

    zeta * x is a reflection exactly when x has the eigenvalue zeta^-1 with
    multiplicity n-1, so twisting by a k-th root of unity cannot create
    reflections unless k is a multiple of one of these orders.
    """
    n = g.dim
    out = set()
    for c in g.classes:
        x = c.representative
        if g.scalar_mask[x]:
            continue
        for j, mult in eigenvalue_multiplicities(g, x).items():
            if mult >= n - 1:
                out.add(c.order // gcd(c.order, j))
    return out


def twist_candidates(g, seed: int, max_order: int = 12):
    """(k, j) pairs: nontrivial reflection-safe scalar twists, cheapest first.

    Groups above 5000 elements get one twist, smaller groups two.
    """
    rng = random.Random(seed)
    s = scalar_order(g)
    prone = reflection_prone_orders(g)
    orders = [k for k in range(2, max_order + 1) if s % k and not any(k % r == 0 for r in prone)]
    orders.sort(key=lambda k: (k // gcd(k, s), k))
    out = []
    for k in orders[: 1 if g.order > 5000 else 2]:
        out.append((k, rng.choice([j for j in range(1, k) if gcd(j, k) == 1])))
    return out


@pytest.fixture(scope="session")
def matrix_names():
    return [n for n in catalog.matrix_names() if not catalog.entry(n).same_as]


def pytest_terminal_summary(terminalreporter):
    outcome = defaultdict(list)
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            m = _CRITERION.search(getattr(rep, "nodeid", ""))
            if m and rep.when == "call" or (m and key == "error"):
                outcome[int(m.group(1))].append(key == "passed")
    if not outcome:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(outcome):
        status = "PASS" if all(outcome[k]) else "FAIL"
        terminalreporter.write_line(f"criterion {k:>2}: {status}  {ACCEPTANCE_TITLES.get(k, '')}")
