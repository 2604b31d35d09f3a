import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from decomp.ingest import (
    PosetSpec,
    boolean_poset,
    chain_poset,
    divisor_poset,
    nerve_monoid,
    nerve_poset,
    truncated_addition,
)
from decomp.presheaf import FinSSet, point_sset


def filter_nerve(X: FinSSet, keep) -> FinSSet:
    """Sub-simplicial set of a poset nerve given a predicate on vertex
    tuples; the kept ids must be closed under faces and degeneracies."""
    sep = "≤"

    def ok(name):
        return keep(tuple(name.split(sep)))

    levels = {k: [x for x in X.levels[k] if ok(x)] for k in range(X.cap + 1)}
    members = {k: set(levels[k]) for k in levels}
    faces = {}
    degens = {}
    for (k, i), t in X.faces.items():
        faces[(k, i)] = {x: t[x] for x in levels[k]}
        assert all(v in members[k - 1] for v in faces[(k, i)].values())
    for (k, j), t in X.degens.items():
        degens[(k, j)] = {x: t[x] for x in levels[k]}
        assert all(v in members[k + 1] for v in degens[(k, j)].values())
    return FinSSet(X.cap, levels, faces, degens, stable_from=None)


def spine_object(cap: int = 4) -> FinSSet:
    """Two composable nondegenerate edges with no filler triangle."""
    big = nerve_poset(chain_poset(2), cap)
    X = filter_nerve(big, lambda vs: int(max(vs)) - int(min(vs)) <= 1)
    X.stable_from = 1
    return X


def chipped_object(cap: int = 5) -> FinSSet:
    """Nerve of the 3-chain with the top triangle (and everything over it)
    removed; comultiplication fails coassociativity."""
    big = nerve_poset(chain_poset(3), cap)
    return filter_nerve(big, lambda vs: not {"1", "2", "3"} <= set(vs))


def invalid_object() -> FinSSet:
    """A planted violation: one degree-2 face retargeted."""
    X = nerve_poset(chain_poset(1), 3)
    sep = "≤"
    bad = dict(X.faces[(2, 0)])
    bad[sep.join(["0", "0", "1"])] = sep.join(["0", "0"])
    X.faces[(2, 0)] = bad
    return X


@pytest.fixture(scope="session")
def posets() -> dict[str, PosetSpec]:
    return {
        "chain1": chain_poset(1),
        "chain2": chain_poset(2),
        "d6": divisor_poset(6),
        "d12": divisor_poset(12),
        "d30": divisor_poset(30),
        "d60": divisor_poset(60),
        "b2": boolean_poset(2),
        "b3": boolean_poset(3),
    }


@pytest.fixture(scope="session")
def poset_nerves(posets) -> dict[str, FinSSet]:
    caps = {"chain1": 4, "chain2": 5, "d6": 5, "d12": 6, "d30": 6,
            "d60": 7, "b2": 5, "b3": 6}
    return {name: nerve_poset(posets[name], caps[name]) for name in caps}


@pytest.fixture(scope="session")
def trunc_add() -> FinSSet:
    # one spare level beyond bound+2 keeps decalage intervals certified
    return nerve_monoid(truncated_addition(6), 9)


@pytest.fixture(scope="session")
def corpus(poset_nerves, trunc_add) -> dict[str, FinSSet]:
    """Valid objects plus the planted counterexamples."""
    out = dict(poset_nerves)
    out["point"] = point_sset(4)
    out["trunc_add"] = trunc_add
    out["spine"] = spine_object()
    out["chipped"] = chipped_object()
    out["invalid"] = invalid_object()
    return out


@pytest.fixture(scope="session")
def mobius_corpus(poset_nerves, trunc_add) -> dict[str, FinSSet]:
    out = dict(poset_nerves)
    out["point"] = point_sset(4)
    out["trunc_add"] = trunc_add
    return out
